//! Exact factorization: over Q (Zassenhaus), over rational function fields
//! (evaluation plus adic lifting), and over towers (norm reduction).

pub mod fp;
pub mod rational;
pub mod funcfield;
pub mod tower;

use crate::unipoly::{CoeffField, UniPoly};

/// A complete factorization: `unit * prod factors[i].0 ^ factors[i].1`,
/// factors monic irreducible, sorted by degree then coefficient order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<C: CoeffField> {
    pub unit: C,
    pub factors: Vec<(UniPoly<C>, u32)>,
}

impl<C: CoeffField> Factorization<C> {
    pub fn unit_only(unit: C) -> Self {
        Factorization {
            unit,
            factors: Vec::new(),
        }
    }

    pub fn sort(&mut self) {
        self.factors.sort_by(|a, b| a.0.cmp_order(&b.0));
    }

    pub fn product(&self) -> UniPoly<C> {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    /// Exact reconstruction check plus shape invariants (monic factors,
    /// positive multiplicities).
    pub fn verify(&self, original: &UniPoly<C>) -> bool {
        self.factors.iter().all(|(f, m)| f.is_monic() && *m > 0)
            && self.product() == *original
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Sum of degree * multiplicity.
    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| f.degree() * (*m as usize))
            .sum()
    }

    /// Distinct monic linear factors' roots: for X - r, the root r.
    pub fn linear_roots(&self) -> Vec<C> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == 1)
            .map(|(f, _)| f.coeff(0).neg())
            .collect()
    }
}
