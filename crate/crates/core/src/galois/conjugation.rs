//! Conjugate copies of a tower over a chosen transcendence part. A
//! splitting tower large enough to contain every conjugate is built by
//! repeated extension; each conjugate is then tested for containment in
//! the original tower. A tower is quasi-galois over the chosen part
//! precisely when it is its own unique conjugate.

use crate::error::QueryError;
use crate::factor::rational::INTERNAL_DEGREE_CAP;
use crate::factor::tower::{factor_over_tower, minpoly_over_base, roots_in_tower};
use crate::galois::embedding::{
    enumerate_maps, is_identity_transcendental_subfield, Embedding,
};
use crate::tower::basis::NiceBasis;
use crate::tower::subfield::{minpoly_over_subfield, SubfieldSpec};
use crate::tower::{FieldTower, TowerElement};
use crate::unipoly::UniPoly;

/// Hard bound on the algebraic degree of the splitting tower over the
/// rational function field.
const SPLITTING_DEGREE_CAP: usize = 1024;

/// Where a conjugate copy of the tower sits relative to the tower itself.
pub enum Containment {
    /// The conjugate equals the tower; the induced automorphism realizes
    /// it.
    ContainedInL(Embedding),
    /// Some generating element is carried outside the tower; the witness
    /// names it.
    NotContained { witness: String },
    /// Containment could not be decided within bounds.
    Unknown,
}

impl Containment {
    pub fn is_contained(&self) -> bool {
        matches!(self, Containment::ContainedInL(_))
    }
}

/// One conjugate copy of the tower inside the splitting tower.
pub struct Conjugation {
    /// Abstract presentation of the conjugate field as an extension of
    /// the chosen subfield (shared by all conjugates).
    pub target: FieldTower,
    /// Images in the splitting tower of the tower's variables and then
    /// generators, in declaration order.
    pub images: Vec<TowerElement>,
    pub containment: Containment,
}

/// The full conjugate census of a tower over the transcendence part of a
/// basis.
pub struct ConjugationReport {
    pub basis_label: String,
    /// [L : K(Delta')].
    pub degree: usize,
    pub conjugations: Vec<Conjugation>,
    /// The common splitting tower containing every conjugate.
    pub splitting: FieldTower,
    /// Whether the tower is its own unique conjugate (every conjugate
    /// contained).
    pub unique: bool,
}

fn fresh_symbol(tower: &FieldTower, prefix: &str, counter: &mut usize) -> String {
    loop {
        let sym = format!("{}{}", prefix, *counter);
        *counter += 1;
        let clash = tower.delta().index_of(&sym).is_some()
            || tower.gen_symbols().iter().any(|s| *s == sym);
        if !clash {
            return sym;
        }
    }
}

/// Extends the tower until every one of the given polynomials (with
/// coefficients in the tower) splits into linear factors.
pub(crate) fn splitting_tower(
    tower: &FieldTower,
    polys: &[UniPoly<TowerElement>],
) -> Result<FieldTower, QueryError> {
    let mut cur = tower.clone();
    let mut counter = 0usize;
    loop {
        let mut extended = false;
        for p in polys {
            if p.is_zero() || p.degree() <= 1 {
                continue;
            }
            let lifted = p.try_map_coeffs(|c| cur.lift_from_prefix(c))?;
            let fact = factor_over_tower(&lifted, &cur, INTERNAL_DEGREE_CAP)
                .map_err(QueryError::Factor)?;
            if let Some(f) = fact
                .factors
                .iter()
                .map(|(f, _)| f)
                .find(|f| f.degree() > 1)
            {
                if cur.degree() * f.degree() > SPLITTING_DEGREE_CAP {
                    return Err(QueryError::Unsupported {
                        reason: format!(
                            "splitting tower degree would exceed the bound {}",
                            SPLITTING_DEGREE_CAP
                        ),
                    });
                }
                let sym = fresh_symbol(&cur, "r", &mut counter);
                cur = cur.extend_shape_checked(&sym, f)?;
                extended = true;
                break;
            }
        }
        if !extended {
            return Ok(cur);
        }
    }
}

/// Minimal polynomials over the subfield of every tower variable and
/// generator, embedded in the tower. Splitting all of these guarantees the
/// splitting tower receives the full count of conjugates: any partial
/// embedding fixes the subfield, so it fixes these polynomials, and each
/// chain-step minimal polynomial divides the one of its element taken over
/// the subfield alone.
pub(crate) fn defining_minpolys(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<Vec<UniPoly<TowerElement>>, QueryError> {
    let mut polys = Vec::new();
    if is_identity_transcendental_subfield(tower, sub) {
        for i in 0..tower.num_gens() {
            let m = minpoly_over_base(tower, &tower.gen(i));
            polys.push(m.try_map_coeffs(|rf| tower.from_base(rf.clone()))?);
        }
    } else {
        for v in 0..tower.delta().len() {
            polys.push(minpoly_over_subfield(&tower.var(v), sub)?.embedded);
        }
        for i in 0..tower.num_gens() {
            polys.push(minpoly_over_subfield(&tower.gen(i), sub)?.embedded);
        }
    }
    Ok(polys)
}

/// Enumerates every conjugate of the tower over the transcendence part of
/// the basis and decides containment for each. The conjugate count always
/// equals the extension degree; a mismatch is reported as an engine
/// defect. The tower is quasi-galois over the chosen part exactly when
/// `unique` holds.
pub fn unique_conjugation_check(
    tower: &FieldTower,
    basis: &NiceBasis,
) -> Result<ConjugationReport, QueryError> {
    let sub = SubfieldSpec::from_transcendentals(tower, &basis.delta_prime)?;
    let polys = defining_minpolys(tower, &sub)?;
    let splitting = splitting_tower(tower, &polys)?;
    let (maps, steps, abstract_tower) = enumerate_maps(tower, &sub, &splitting)?;
    let degree: usize = steps.iter().map(|s| s.embedded.degree()).product();
    if maps.len() != degree {
        return Err(QueryError::RelationCheckFailed {
            detail: format!(
                "conjugate count {} does not match extension degree {}",
                maps.len(),
                degree
            ),
        });
    }
    let nvars = tower.delta().len();
    let mut conjugations = Vec::new();
    for (var_imgs, gen_imgs) in maps {
        let all: Vec<TowerElement> = var_imgs
            .iter()
            .chain(gen_imgs.iter())
            .cloned()
            .collect();
        let mut restricted: Vec<TowerElement> = Vec::new();
        let mut outside: Option<(String, TowerElement)> = None;
        for (k, img) in all.iter().enumerate() {
            match splitting.restrict_to_prefix(img, tower)? {
                Some(r) => restricted.push(r),
                None => {
                    let name = if k < nvars {
                        tower.delta().name(k).to_string()
                    } else {
                        tower.gen_info(k - nvars).symbol().to_string()
                    };
                    outside = Some((name, img.clone()));
                    break;
                }
            }
        }
        let containment = match outside {
            Some((name, img)) => Containment::NotContained {
                witness: format!("sigma({}) = {} lies outside L", name, img),
            },
            None => {
                let vars_l = restricted[..nvars].to_vec();
                let gens_l = restricted[nvars..].to_vec();
                Containment::ContainedInL(Embedding::from_images(
                    tower, vars_l, gens_l,
                )?)
            }
        };
        conjugations.push(Conjugation {
            target: abstract_tower.clone(),
            images: all,
            containment,
        });
    }
    let unique = conjugations
        .iter()
        .all(|c| c.containment.is_contained());
    Ok(ConjugationReport {
        basis_label: basis.label.clone(),
        degree,
        conjugations,
        splitting,
        unique,
    })
}

/// Where a single conjugate of an element sits relative to the tower.
pub enum ElementContainment {
    /// The conjugate root is realized inside the tower.
    InL(TowerElement),
    /// The chosen conjugate does not exist inside the tower.
    Absent { witness: String },
}

/// A conjugation of a single element over the transcendence part of a
/// basis: the abstract field generated by one root of its minimal
/// polynomial, together with where the chosen root lives.
pub struct ElementConjugation {
    /// Abstract presentation of the conjugate field: the subfield extended
    /// by one root of the minimal polynomial.
    pub target: FieldTower,
    /// The minimal polynomial of the element over the subfield, embedded
    /// in the tower.
    pub minpoly: UniPoly<TowerElement>,
    /// Which conjugate root was selected.
    pub index: usize,
    pub containment: ElementContainment,
}

/// Builds the conjugation of `x` over K(Delta') selecting the root with
/// the given index. Roots realized inside the tower come first (in
/// canonical element order), abstract roots after them.
pub fn build_conjugation(
    tower: &FieldTower,
    x: &TowerElement,
    z_index: usize,
    basis: &NiceBasis,
) -> Result<ElementConjugation, QueryError> {
    let sub = SubfieldSpec::from_transcendentals(tower, &basis.delta_prime)?;
    let m = minpoly_over_subfield(x, &sub)?;
    let d = m.embedded.degree();
    if z_index >= d {
        return Err(QueryError::Unsupported {
            reason: format!(
                "conjugate index {} out of range: the minimal polynomial has degree {}",
                z_index, d
            ),
        });
    }
    let roots = roots_in_tower(&m.embedded, tower).map_err(QueryError::Factor)?;
    let k = roots.len();
    let containment = if z_index < k {
        let root = roots[z_index].clone();
        if !m.embedded.eval(&root).is_zero() {
            return Err(QueryError::RelationCheckFailed {
                detail: format!(
                    "selected conjugate of {} does not satisfy its minimal polynomial",
                    x
                ),
            });
        }
        ElementContainment::InL(root)
    } else {
        ElementContainment::Absent {
            witness: format!(
                "only {} of {} roots of {} lie in L",
                k,
                d,
                m.embedded.render("X")
            ),
        }
    };
    let mut counter = 0usize;
    let ftower = sub.ftower();
    let sym = if ftower.delta().index_of("z").is_none()
        && !ftower.gen_symbols().iter().any(|s| *s == "z")
    {
        "z".to_string()
    } else {
        fresh_symbol(ftower, "z", &mut counter)
    };
    let target = ftower.extend_shape_checked(&sym, &m.abstract_poly)?;
    Ok(ElementConjugation {
        target,
        minpoly: m.embedded,
        index: z_index,
        containment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use crate::tower::basis::default_nice_basis;

    fn qp(tower: &FieldTower, cs: &[i64]) -> UniPoly<TowerElement> {
        UniPoly::from_coeffs(
            cs.iter()
                .map(|&c| tower.from_rational(Rational::from_int(c)))
                .collect(),
        )
    }

    fn q_t() -> FieldTower {
        FieldTower::rational(vec!["t".to_string()]).unwrap()
    }

    #[test]
    fn quadratic_tower_is_its_own_unique_conjugate() {
        let base = q_t();
        let tw = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let rep = unique_conjugation_check(&tw, &default_nice_basis(&tw)).unwrap();
        assert_eq!(rep.degree, 2);
        assert_eq!(rep.conjugations.len(), 2);
        assert!(rep.unique);
        // The splitting tower did not need to grow.
        assert_eq!(rep.splitting.degree(), 2);
    }

    #[test]
    fn cube_root_tower_has_conjugates_outside() {
        let base = q_t();
        let tw = base.extend("c", &qp(&base, &[-2, 0, 0, 1])).unwrap();
        let rep = unique_conjugation_check(&tw, &default_nice_basis(&tw)).unwrap();
        assert_eq!(rep.degree, 3);
        assert_eq!(rep.conjugations.len(), 3);
        assert!(!rep.unique);
        let contained = rep
            .conjugations
            .iter()
            .filter(|c| c.containment.is_contained())
            .count();
        assert_eq!(contained, 1);
        // Degree of the splitting tower is 6 = 3!.
        assert_eq!(rep.splitting.degree(), 6);
        let w = rep
            .conjugations
            .iter()
            .find_map(|c| match &c.containment {
                Containment::NotContained { witness } => Some(witness.clone()),
                _ => None,
            })
            .unwrap();
        assert!(w.contains("lies outside L"), "witness was: {}", w);
    }

    #[test]
    fn element_conjugation_realized_and_absent() {
        let base = q_t();
        let tw = base.extend("c", &qp(&base, &[-2, 0, 0, 1])).unwrap();
        let basis = default_nice_basis(&tw);
        // Index 0: the cube root itself.
        let c0 = build_conjugation(&tw, &tw.gen(0), 0, &basis).unwrap();
        assert!(matches!(c0.containment, ElementContainment::InL(ref r) if *r == tw.gen(0)));
        assert_eq!(c0.minpoly.degree(), 3);
        assert_eq!(c0.target.degree(), 3);
        // Index 1: an absent conjugate.
        let c1 = build_conjugation(&tw, &tw.gen(0), 1, &basis).unwrap();
        match c1.containment {
            ElementContainment::Absent { ref witness } => {
                assert!(witness.contains("only 1 of 3 roots"), "witness: {}", witness);
            }
            _ => panic!("expected absent conjugate"),
        }
        // Out of range.
        assert!(build_conjugation(&tw, &tw.gen(0), 3, &basis).is_err());
    }

    #[test]
    fn unique_check_matches_quadratic_pair_tower() {
        let base = q_t();
        let t1 = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let m = UniPoly::from_coeffs(vec![t1.var(0).neg(), t1.zero(), t1.one()]);
        let tw = t1.extend("b", &m).unwrap();
        let rep = unique_conjugation_check(&tw, &default_nice_basis(&tw)).unwrap();
        assert_eq!(rep.degree, 4);
        assert!(rep.unique);
        // All four conjugations carry realizing automorphisms.
        for c in &rep.conjugations {
            match &c.containment {
                Containment::ContainedInL(e) => assert!(e.verify().is_ok()),
                _ => panic!("expected containment"),
            }
        }
    }
}
