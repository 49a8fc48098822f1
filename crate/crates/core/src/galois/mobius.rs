//! Fractional-linear self-maps of the rational function field: one
//! invertible 2x2 matrix per variable, acting by v -> (a v + b)/(c v + d).
//! These are the automorphisms of K(Delta) fixing the other variables,
//! used for fixed-element tests on the transcendental layer and for
//! assembling mixed automorphisms with an algebraic-layer embedding.

use crate::error::QueryError;
use crate::galois::embedding::Embedding;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::tower::{FieldTower, TowerElement};

/// One fractional-linear map per variable. The identity matrix leaves a
/// variable fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMap {
    /// Row-major [a, b, c, d] per variable: v -> (a v + b)/(c v + d).
    mats: Vec<[Rational; 4]>,
}

impl MobiusMap {
    pub fn identity(nvars: usize) -> Self {
        MobiusMap {
            mats: (0..nvars)
                .map(|_| {
                    [
                        Rational::one(),
                        Rational::zero(),
                        Rational::zero(),
                        Rational::one(),
                    ]
                })
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.mats.len()
    }

    /// Sets the action on one variable; the determinant must not vanish.
    pub fn with_map(
        mut self,
        var: usize,
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    ) -> Result<Self, QueryError> {
        if var >= self.mats.len() {
            return Err(QueryError::Unsupported {
                reason: format!("no variable with index {}", var),
            });
        }
        let det = a.mul(&d).sub(&b.mul(&c));
        if det.is_zero() {
            return Err(QueryError::SingularMap);
        }
        self.mats[var] = [a, b, c, d];
        Ok(self)
    }

    /// Composition self after other, given by per-variable matrix
    /// products.
    pub fn compose(&self, other: &MobiusMap) -> Result<MobiusMap, QueryError> {
        if self.mats.len() != other.mats.len() {
            return Err(QueryError::Unsupported {
                reason: "variable counts differ".to_string(),
            });
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(m, n)| {
                [
                    m[0].mul(&n[0]).add(&m[1].mul(&n[2])),
                    m[0].mul(&n[1]).add(&m[1].mul(&n[3])),
                    m[2].mul(&n[0]).add(&m[3].mul(&n[2])),
                    m[2].mul(&n[1]).add(&m[3].mul(&n[3])),
                ]
            })
            .collect();
        Ok(MobiusMap { mats })
    }

    /// The image of each variable as a rational function.
    pub fn images(&self, rf_proto: &RatFunc) -> Result<Vec<RatFunc>, QueryError> {
        let table = rf_proto.vars();
        if table.len() != self.mats.len() {
            return Err(QueryError::Unsupported {
                reason: "variable counts differ".to_string(),
            });
        }
        let mut out = Vec::with_capacity(self.mats.len());
        for (i, m) in self.mats.iter().enumerate() {
            let v = RatFunc::var(table, i);
            let num = v
                .mul_rational(&m[0])
                .add(&RatFunc::from_rational(table, m[1].clone()));
            let den = v
                .mul_rational(&m[2])
                .add(&RatFunc::from_rational(table, m[3].clone()));
            out.push(num.div(&den)?);
        }
        Ok(out)
    }

    /// Applies the map to a rational function by substituting every
    /// variable's image at once.
    pub fn apply(&self, rf: &RatFunc) -> Result<RatFunc, QueryError> {
        let images = self.images(rf)?;
        Ok(rf.substitute_all(&images)?)
    }
}

/// Whether the element is fixed (exact equality of reduced forms) by
/// every map in the list.
pub fn mobius_fixed_test(elem: &RatFunc, gens: &[MobiusMap]) -> Result<bool, QueryError> {
    for g in gens {
        if g.apply(elem)? != *elem {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Combines a fractional-linear map on the transcendental layer with an
/// embedding fixing that layer into one verified automorphism of the
/// tower: variables move by `tau1`, generators by `tau2`. Every
/// generator's minimal polynomial is checked under the combined map;
/// failure means `tau1` does not extend alongside `tau2`.
pub fn compose_mixed_automorphism(
    tower: &FieldTower,
    tau1: &MobiusMap,
    tau2: &Embedding,
) -> Result<Embedding, QueryError> {
    if tau2.tower() != tower {
        return Err(QueryError::Unsupported {
            reason: "embedding belongs to a different tower".to_string(),
        });
    }
    if tau1.num_vars() != tower.delta().len() {
        return Err(QueryError::Unsupported {
            reason: "map and tower variable counts differ".to_string(),
        });
    }
    for (i, v) in tau2.var_images().iter().enumerate() {
        if *v != tower.var(i) {
            return Err(QueryError::Unsupported {
                reason: "the algebraic-layer embedding must fix every variable".to_string(),
            });
        }
    }
    let proto = RatFunc::zero(tower.delta());
    let rf_images = tau1.images(&proto)?;
    let var_images: Vec<TowerElement> = rf_images
        .iter()
        .map(|rf| tower.from_base(rf.clone()))
        .collect::<Result<_, _>>()?;
    let gen_images = tau2.gen_images().to_vec();
    for i in 0..tower.num_gens() {
        let m = tower.minpoly_lifted(i);
        let mapped =
            m.try_map_coeffs(|c| tower.map_element(c, &var_images, &gen_images))?;
        if !mapped.eval(&gen_images[i]).is_zero() {
            return Err(QueryError::DoesNotExtend {
                detail: format!("{} becomes {}", m.render("X"), mapped.render("X")),
            });
        }
    }
    Embedding::from_images(tower, var_images, gen_images)
}
