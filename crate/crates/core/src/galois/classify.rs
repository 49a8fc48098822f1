//! Three-valued classifiers for the property hierarchy: quasi-galois with
//! respect to a basis, Galois over the ground field, tame (Galois over the
//! transcendental part of some basis), strong (Galois over the
//! transcendental part of every linearly disjoint basis), and absolute
//! (Galois over every intermediate field). Certified verdicts carry the
//! rule that proves them, Refuted verdicts a concrete witness; everything
//! else is an honest Unknown within the configured search bounds.

use std::fmt;

use crate::error::QueryError;
use crate::factor::tower::{minpoly_over_base, roots_in_tower, splits_in_tower, SplitOutcome};
use crate::galois::conjugation::defining_minpolys;
use crate::galois::embedding::analyze_over;
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::tower::basis::{candidate_bases, default_nice_basis, NiceBasis};
use crate::tower::subfield::{linear_disjointness, LinearDisjointness, SubfieldSpec};
use crate::tower::{FieldTower, TowerElement};
use crate::unipoly::UniPoly;

/// Outcome of a property query: a proof naming its rule, a concrete
/// counterexample, or an honest inability within bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified(String),
    Refuted(String),
    Unknown,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    /// Lowercase status keyword for machine output.
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Certified(_) => "certified",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown => "unknown",
        }
    }

    /// The certificate or witness text, when the verdict is definite.
    pub fn payload(&self) -> Option<&str> {
        match self {
            Verdict::Certified(s) | Verdict::Refuted(s) => Some(s),
            Verdict::Unknown => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified(c) => write!(f, "Certified({})", c),
            Verdict::Refuted(w) => write!(f, "Refuted({})", w),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Explicit limits for every search-based classifier, so Unknown versus
/// Refuted outcomes are reproducible.
#[derive(Debug, Clone)]
pub struct SearchBounds {
    /// Maximum number of candidate bases tried by the tame and strong
    /// searches.
    pub basis_bound: usize,
    /// Maximum degree of the subfield-generating polynomials scanned by
    /// the absolute refutation.
    pub subfield_degree_bound: usize,
    /// Coefficients of scanned polynomials range over 0, ±1, .., ±this.
    pub coeff_bound: i64,
    /// Total-degree bound for the monomial independence test inside
    /// linear disjointness.
    pub ld_degree_bound: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            basis_bound: 25,
            subfield_degree_bound: 3,
            coeff_bound: 2,
            ld_degree_bound: 4,
        }
    }
}

/// Per-property verdicts for one tower, with the basis the quasi-galois
/// verdict refers to.
#[derive(Debug, Clone)]
pub struct Classification {
    pub quasi_galois: Verdict,
    pub quasi_basis_label: String,
    pub galois: Verdict,
    pub tame: Verdict,
    pub strong: Verdict,
    pub absolute: Verdict,
    pub separably_generated: Verdict,
}

impl Classification {
    /// Property names and verdicts in fixed report order.
    pub fn entries(&self) -> Vec<(&'static str, &Verdict)> {
        vec![
            ("quasi_galois", &self.quasi_galois),
            ("galois", &self.galois),
            ("tame", &self.tame),
            ("strong", &self.strong),
            ("absolute", &self.absolute),
            ("separably_generated", &self.separably_generated),
        ]
    }
}

/// True for errors that disqualify one search candidate without
/// invalidating the whole query.
fn candidate_skippable(e: &QueryError) -> bool {
    matches!(
        e,
        QueryError::UnrepresentableSubfield { .. }
            | QueryError::NotAlgebraicOverBase { .. }
            | QueryError::Unsupported { .. }
    )
}

/// Scans the generating elements' minimal polynomials over the subfield
/// and returns the first one that fails to split into linear factors in
/// the tower, or None when all split (normality; in characteristic 0 this
/// is the Galois condition).
fn normal_split_scan(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<Option<UniPoly<TowerElement>>, QueryError> {
    for m in defining_minpolys(tower, sub)? {
        if m.is_zero() || m.degree() <= 1 {
            continue;
        }
        match splits_in_tower(&m, tower).map_err(QueryError::Factor)? {
            SplitOutcome::Splits => {}
            _ => return Ok(Some(m)),
        }
    }
    Ok(None)
}

/// Whether every irreducible polynomial over K(Delta') with a root in the
/// tower splits there, tested on the generating elements' minimal
/// polynomials over the transcendence part of the given basis.
pub fn is_quasi_galois_wrt(
    tower: &FieldTower,
    basis: &NiceBasis,
) -> Result<Verdict, QueryError> {
    let sub = SubfieldSpec::from_transcendentals(tower, &basis.delta_prime)?;
    match normal_split_scan(tower, &sub)? {
        None => Ok(Verdict::Certified(
            "all generating minimal polynomials split".to_string(),
        )),
        Some(m) => Ok(Verdict::Refuted(format!(
            "{} splits only partially",
            m.render("X")
        ))),
    }
}

/// Whether the tower is Galois over the described subfield (finite
/// characteristic-0 test: normality of the generating minimal
/// polynomials).
pub fn galois_over_subfield(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<Verdict, QueryError> {
    if !sub.is_complete() {
        return Err(QueryError::NotAlgebraicOverBase {
            detail: format!(
                "subfield {} does not carry the full transcendence degree",
                sub.render()
            ),
        });
    }
    match normal_split_scan(tower, sub)? {
        None => Ok(Verdict::Certified(
            "char-0 normal<=>galois: all generating minimal polynomials split".to_string(),
        )),
        Some(m) => Ok(Verdict::Refuted(format!(
            "{} splits only partially",
            m.render("X")
        ))),
    }
}

/// Searches candidate bases for one over whose transcendence part the
/// tower is Galois. Certified with the witness basis; never Refuted (the
/// property quantifies existentially over all bases); Unknown when the
/// bounded candidate list is exhausted.
pub fn tame_galois_search(
    tower: &FieldTower,
    bounds: &SearchBounds,
) -> Result<Verdict, QueryError> {
    for cand in candidate_bases(tower, bounds.basis_bound) {
        let sub = match SubfieldSpec::from_transcendentals(tower, &cand.delta_prime) {
            Ok(s) => s,
            Err(e) if candidate_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        let analysis = match analyze_over(tower, &sub) {
            Ok(a) => a,
            Err(e) if candidate_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        if analysis.is_galois() {
            return Ok(Verdict::Certified(format!("basis {}", cand.label)));
        }
    }
    Ok(Verdict::Unknown)
}

/// An element of the tower that every automorphism over Q must fix, yet
/// which lies outside Q: its minimal polynomial over K(Delta) has rational
/// coefficients and degree at least 2, but only one root in the tower.
/// Such an element refutes the Galois property (the fixed field exceeds
/// Q). Searched among generators, pairwise combinations with small
/// coefficients, and pairwise products.
fn rigid_element(tower: &FieldTower) -> Result<Option<TowerElement>, QueryError> {
    let ngens = tower.num_gens();
    let mut candidates: Vec<TowerElement> = (0..ngens).map(|i| tower.gen(i)).collect();
    for i in 0..ngens {
        for j in (i + 1)..ngens {
            for c in [1i64, 2, -1, -2] {
                let scaled = tower
                    .gen(j)
                    .mul(&tower.from_rational(Rational::from_int(c)))?;
                candidates.push(tower.gen(i).add(&scaled)?);
            }
            candidates.push(tower.gen(i).mul(&tower.gen(j))?);
        }
    }
    for x in candidates {
        let m = minpoly_over_base(tower, &x);
        if m.degree() < 2 {
            continue;
        }
        if !m.coeffs().iter().all(|rf| rf.as_rational().is_some()) {
            continue;
        }
        let mt = m.try_map_coeffs(|rf| tower.from_base(rf.clone()))?;
        let roots = roots_in_tower(&mt, tower).map_err(QueryError::Factor)?;
        if roots.len() == 1 {
            debug_assert_eq!(roots[0], x);
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Whether an element lies in K(Delta) (all higher power-basis
/// coordinates vanish).
fn is_base_element(tower: &FieldTower, x: &TowerElement) -> bool {
    let coords = tower.coords(x);
    coords[1..].iter().all(|rf| rf.is_zero())
}

/// The structural rule for the strong property: every generator's minimal
/// polynomial has constant (rational) coefficients, the algebraic part
/// they generate over Q is Galois, and the default basis is linearly
/// disjoint. The tower is then a purely transcendental extension of an
/// algebraic Galois extension.
fn structural_strong(
    tower: &FieldTower,
    bounds: &SearchBounds,
) -> Result<Option<Verdict>, QueryError> {
    for i in 0..tower.num_gens() {
        for c in tower.minpoly_lifted(i).coeffs() {
            if tower.coords(c).iter().any(|rf| rf.as_rational().is_none()) {
                return Ok(None);
            }
        }
    }
    // Rebuild the algebraic part over Q with the same generators.
    let mut alg = FieldTower::rational(Vec::new())?;
    for i in 0..tower.num_gens() {
        let size_i = alg.basis_size();
        let m = tower.minpoly_lifted(i);
        let transported = m.try_map_coeffs(|c| -> Result<TowerElement, QueryError> {
            let coords = tower.coords(c);
            if coords[size_i..].iter().any(|rf| !rf.is_zero()) {
                return Err(QueryError::Unsupported {
                    reason: "generator minimal polynomial reaches later layers".to_string(),
                });
            }
            let flat: Vec<RatFunc> = coords[..size_i]
                .iter()
                .map(|rf| {
                    RatFunc::from_rational(
                        alg.delta(),
                        rf.as_rational().expect("checked constant"),
                    )
                })
                .collect();
            Ok(alg.from_coords(&flat))
        })?;
        alg = alg.extend_shape_checked(tower.gen_info(i).symbol(), &transported)?;
    }
    let alg_sub = SubfieldSpec::from_transcendentals(&alg, &[])?;
    let analysis = analyze_over(&alg, &alg_sub)?;
    if !analysis.is_galois() {
        return Ok(None);
    }
    let ld = linear_disjointness(tower, &default_nice_basis(tower), bounds.ld_degree_bound)?;
    if matches!(ld, LinearDisjointness::True { .. }) {
        Ok(Some(Verdict::Certified("structural(Remark 3.5)".to_string())))
    } else {
        Ok(None)
    }
}

/// Searches for a linearly disjoint candidate basis over whose
/// transcendence part the tower fails to be Galois. Only candidates whose
/// linear part is provably a basis are admitted: the linear part must be
/// the power basis, the transcendence part must lie in K(Delta), and the
/// degree over the candidate subfield must match the power-basis size
/// (these force K(Delta') = K(Delta), over which the power basis is a
/// basis by construction).
fn strong_refutation_search(
    tower: &FieldTower,
    bounds: &SearchBounds,
) -> Result<Option<String>, QueryError> {
    let power = tower.power_basis();
    for cand in candidate_bases(tower, bounds.basis_bound) {
        if cand.a_list != power {
            continue;
        }
        if !cand.delta_prime.iter().all(|e| is_base_element(tower, e)) {
            continue;
        }
        let ld = match linear_disjointness(tower, &cand, bounds.ld_degree_bound) {
            Ok(v) => v,
            Err(e) if candidate_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        if !matches!(ld, LinearDisjointness::True { .. }) {
            continue;
        }
        let sub = match SubfieldSpec::from_transcendentals(tower, &cand.delta_prime) {
            Ok(s) => s,
            Err(e) if candidate_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        let analysis = match analyze_over(tower, &sub) {
            Ok(a) => a,
            Err(e) if candidate_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        if analysis.degree != cand.a_list.len() {
            continue;
        }
        if !analysis.is_galois() {
            return Ok(Some(format!(
                "basis {} is linearly disjoint but not Galois over K(Delta')",
                cand.label
            )));
        }
    }
    Ok(None)
}

/// Standalone strong-property classifier: purely transcendental towers
/// are certified directly; towers of constant-coefficient generators over
/// a disjoint transcendental layer are certified structurally; a linearly
/// disjoint basis failing the Galois test refutes; otherwise Unknown.
pub fn strong_galois_classify(
    tower: &FieldTower,
    bounds: &SearchBounds,
) -> Result<Verdict, QueryError> {
    if tower.num_gens() == 0 {
        return Ok(Verdict::Certified("Prop 3.9".to_string()));
    }
    if let Some(v) = structural_strong(tower, bounds)? {
        return Ok(v);
    }
    if let Some(w) = strong_refutation_search(tower, bounds)? {
        return Ok(Verdict::Refuted(w));
    }
    Ok(Verdict::Unknown)
}

/// The coefficient list scanned by the absolute refutation, zero first so
/// pure monomials come before dense polynomials of the same degree.
fn scan_coefficients(bound: i64) -> Vec<i64> {
    let mut out = vec![0i64];
    for c in 1..=bound.max(0) {
        out.push(c);
        out.push(-c);
    }
    out
}

/// Scans presented subfields F = K(g(v), other variables) for monic
/// constant-free polynomials g of degree 2 up to the bound, plus any
/// caller-supplied subfields, looking for one over which the tower fails
/// to be Galois. Refuted with the witness subfield; never Certified (the
/// property quantifies over all intermediate fields); Unknown when the
/// scan is exhausted.
pub fn absolute_galois_refute(
    tower: &FieldTower,
    bounds: &SearchBounds,
    extra_subfields: &[SubfieldSpec],
) -> Result<Verdict, QueryError> {
    let nvars = tower.delta().len();
    let coeffs = scan_coefficients(bounds.coeff_bound);
    for v in 0..nvars {
        for d in 2..=bounds.subfield_degree_bound.max(1) {
            // Odometer over the d-1 coefficients of v^1 .. v^(d-1);
            // leading coefficient fixed to 1, constant term to 0 (both
            // normalize away without changing the subfield).
            let slots = d - 1;
            let total = coeffs.len().pow(slots as u32);
            for idx in 0..total {
                let mut g = tower.var(v).pow(d as u32);
                let mut rest = idx;
                for k in 1..d {
                    let c = coeffs[rest % coeffs.len()];
                    rest /= coeffs.len();
                    if c != 0 {
                        let term = tower
                            .var(v)
                            .pow(k as u32)
                            .mul(&tower.from_rational(Rational::from_int(c)))?;
                        g = g.add(&term)?;
                    }
                }
                let images: Vec<TowerElement> = (0..nvars)
                    .map(|i| if i == v { g.clone() } else { tower.var(i) })
                    .collect();
                let desc = images
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let sub = match SubfieldSpec::from_transcendentals(tower, &images) {
                    Ok(s) => s,
                    Err(e) if candidate_skippable(&e) => continue,
                    Err(e) => return Err(e),
                };
                match normal_split_scan(tower, &sub) {
                    Ok(None) => continue,
                    Ok(Some(m)) => {
                        return Ok(Verdict::Refuted(format!(
                            "F = Q({}): {} does not split",
                            desc,
                            m.render("X")
                        )));
                    }
                    Err(e) if candidate_skippable(&e) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    for sub in extra_subfields {
        if !sub.is_complete() {
            continue;
        }
        match normal_split_scan(tower, sub) {
            Ok(None) => continue,
            Ok(Some(m)) => {
                return Ok(Verdict::Refuted(format!(
                    "F = {}: {} does not split",
                    sub.render(),
                    m.render("X")
                )));
            }
            Err(e) if candidate_skippable(&e) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict::Unknown)
}

/// Standalone Galois-over-Q classifier; `bounds` limits the tame search
/// its positive rule may fall back to.
pub fn plain_galois_classify(
    tower: &FieldTower,
    bounds: &SearchBounds,
) -> Result<Verdict, QueryError> {
    Ok(classify(tower, bounds)?.galois)
}

/// Runs every classifier on the tower, sharing work and propagating
/// verdicts along the implication chain absolute => strong => tame =>
/// Galois: a refuted weaker property refutes every stronger one, and the
/// certified tame verdict upgrades the Galois verdict.
pub fn classify(tower: &FieldTower, bounds: &SearchBounds) -> Result<Classification, QueryError> {
    let default_basis = default_nice_basis(tower);
    let quasi_galois = is_quasi_galois_wrt(tower, &default_basis)?;
    let nvars = tower.delta().len();
    let ngens = tower.num_gens();

    // Galois over Q: decision rules that need no basis search.
    let mut galois: Option<Verdict> = None;
    if nvars == 0 && ngens == 0 {
        galois = Some(Verdict::Certified("trivial".to_string()));
    } else if ngens == 0 {
        galois = Some(Verdict::Certified("Prop 3.9(i)".to_string()));
    } else if nvars == 0 {
        let sub = SubfieldSpec::from_transcendentals(tower, &[])?;
        let analysis = analyze_over(tower, &sub)?;
        galois = Some(if analysis.is_galois() {
            Verdict::Certified(format!(
                "char-0 normal<=>galois: #Aut = [L:Q] = {}",
                analysis.degree
            ))
        } else {
            Verdict::Refuted(format!(
                "#Aut = {} < [L:Q] = {}",
                analysis.embeddings.len(),
                analysis.degree
            ))
        });
    } else if let Some(x) = rigid_element(tower)? {
        galois = Some(Verdict::Refuted(format!("rigid element {}", x)));
    }

    // Tame: refuted Galois propagates (Remark 1.2); algebraic towers
    // reduce to the Galois verdict (the transcendence part is empty);
    // otherwise search.
    let tame: Verdict = match &galois {
        Some(Verdict::Refuted(_)) => {
            Verdict::Refuted("implication (Remark 1.2): not Galois".to_string())
        }
        _ if nvars == 0 => match galois.as_ref().expect("algebraic towers are decided") {
            Verdict::Certified(_) => Verdict::Certified("basis {}".to_string()),
            Verdict::Refuted(_) => unreachable!("refuted handled above"),
            Verdict::Unknown => Verdict::Unknown,
        },
        _ => tame_galois_search(tower, bounds)?,
    };

    let galois: Verdict = match galois {
        Some(v) => v,
        None => match &tame {
            Verdict::Certified(_) => {
                Verdict::Certified("tame + Prop 3.10 bullet 1".to_string())
            }
            _ => Verdict::Unknown,
        },
    };

    let strong: Verdict = if tame.is_refuted() {
        Verdict::Refuted("implication (Remark 1.2): not tame Galois".to_string())
    } else {
        strong_galois_classify(tower, bounds)?
    };

    let absolute: Verdict = if strong.is_refuted() {
        Verdict::Refuted("implication (Remark 1.2): not strong Galois".to_string())
    } else {
        absolute_galois_refute(tower, bounds, &[])?
    };

    let classification = Classification {
        quasi_galois,
        quasi_basis_label: default_basis.label,
        galois,
        tame,
        strong,
        absolute,
        separably_generated: Verdict::Certified("characteristic 0".to_string()),
    };

    // Implication-chain consistency: a certified stronger property
    // together with a refuted weaker one is an engine defect.
    let chain = [
        ("absolute", &classification.absolute),
        ("strong", &classification.strong),
        ("tame", &classification.tame),
        ("galois", &classification.galois),
    ];
    for i in 0..chain.len() {
        for j in (i + 1)..chain.len() {
            if chain[i].1.is_certified() && chain[j].1.is_refuted() {
                return Err(QueryError::RelationCheckFailed {
                    detail: format!(
                        "implication chain violated: {} certified but {} refuted",
                        chain[i].0, chain[j].0
                    ),
                });
            }
        }
    }
    Ok(classification)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn q_st() -> FieldTower {
        FieldTower::rational(vec!["s".to_string(), "t".to_string()]).unwrap()
    }

    #[test]
    fn purely_transcendental_single_variable() {
        let tw = q_t();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(c.galois, Verdict::Certified("Prop 3.9(i)".to_string()));
        assert_eq!(c.strong, Verdict::Certified("Prop 3.9".to_string()));
        assert_eq!(c.tame, Verdict::Certified("basis {t}".to_string()));
        match &c.absolute {
            Verdict::Refuted(w) => {
                assert!(w.contains("Q(t^3)"), "witness was: {}", w);
                assert!(w.contains("does not split"), "witness was: {}", w);
            }
            other => panic!("expected refuted absolute, got {}", other),
        }
        assert!(c.quasi_galois.is_certified());
        assert_eq!(
            c.separably_generated,
            Verdict::Certified("characteristic 0".to_string())
        );
    }

    #[test]
    fn purely_transcendental_two_variables() {
        let tw = q_st();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(c.galois, Verdict::Certified("Prop 3.9(i)".to_string()));
        assert_eq!(c.strong, Verdict::Certified("Prop 3.9".to_string()));
        assert_eq!(c.tame, Verdict::Certified("basis {s, t}".to_string()));
    }

    #[test]
    fn trivial_tower() {
        let tw = FieldTower::rational(Vec::new()).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(c.galois, Verdict::Certified("trivial".to_string()));
        assert_eq!(c.absolute, Verdict::Unknown);
        assert!(c.strong.is_certified());
    }

    #[test]
    fn rigid_cube_root_refutes_galois() {
        let base = q_t();
        let tw = base.extend("c", &qp(&base, &[-2, 0, 0, 1])).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(
            c.quasi_galois,
            Verdict::Refuted("X^3 - 2 splits only partially".to_string())
        );
        assert_eq!(c.galois, Verdict::Refuted("rigid element c".to_string()));
        assert!(c.tame.is_refuted());
        assert!(c.strong.is_refuted());
        assert!(c.absolute.is_refuted());
    }

    #[test]
    fn structural_strong_certificate() {
        let base = q_st();
        let tw = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(
            c.strong,
            Verdict::Certified("structural(Remark 3.5)".to_string())
        );
        assert_eq!(c.tame, Verdict::Certified("basis {s, t}".to_string()));
        assert_eq!(
            c.galois,
            Verdict::Certified("tame + Prop 3.10 bullet 1".to_string())
        );
        assert!(c.quasi_galois.is_certified());
    }

    #[test]
    fn klein_tower_tame_certified() {
        let base = q_t();
        let t1 = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let m = UniPoly::from_coeffs(vec![t1.var(0).neg(), t1.zero(), t1.one()]);
        let tw = t1.extend("b", &m).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(c.tame, Verdict::Certified("basis {t}".to_string()));
        assert_eq!(
            c.galois,
            Verdict::Certified("tame + Prop 3.10 bullet 1".to_string())
        );
        // Structural rule does not apply (X^2 - t is not constant) and the
        // bounded refutation search finds nothing.
        assert!(!c.strong.is_certified());
        assert!(c.quasi_galois.is_certified());
    }

    #[test]
    fn galois_number_field_direct_test() {
        let q = FieldTower::rational(Vec::new()).unwrap();
        let tw = q.extend("a", &qp(&q, &[-2, 0, 1])).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(
            c.galois,
            Verdict::Certified("char-0 normal<=>galois: #Aut = [L:Q] = 2".to_string())
        );
        assert_eq!(c.tame, Verdict::Certified("basis {}".to_string()));
        assert!(c.strong.is_certified());
    }

    #[test]
    fn non_galois_number_field_direct_test() {
        let q = FieldTower::rational(Vec::new()).unwrap();
        let tw = q.extend("c", &qp(&q, &[-2, 0, 0, 1])).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        assert_eq!(
            c.galois,
            Verdict::Refuted("#Aut = 1 < [L:Q] = 3".to_string())
        );
        assert!(c.tame.is_refuted());
        assert!(c.absolute.is_refuted());
    }

    #[test]
    fn subfield_galois_test_on_shifted_cubic() {
        // Q(t) over Q(t^3 + t): X^3 + X - (t^3 + t) has exactly one root.
        let tw = q_t();
        let img = tw.var(0).pow(3).add(&tw.var(0)).unwrap();
        let sub = SubfieldSpec::from_transcendentals(&tw, &[img]).unwrap();
        let v = galois_over_subfield(&tw, &sub).unwrap();
        match v {
            Verdict::Refuted(w) => {
                assert!(w.contains("splits only partially"), "witness: {}", w)
            }
            other => panic!("expected refuted, got {}", other),
        }
        // Over Q(t^2) the tower is Galois.
        let img2 = tw.var(0).pow(2);
        let sub2 = SubfieldSpec::from_transcendentals(&tw, &[img2]).unwrap();
        assert!(galois_over_subfield(&tw, &sub2).unwrap().is_certified());
    }

    #[test]
    fn square_root_of_variable_tower() {
        let base = q_t();
        let m = UniPoly::from_coeffs(vec![base.var(0).neg(), base.zero(), base.one()]);
        let tw = base.extend("b", &m).unwrap();
        let c = classify(&tw, &SearchBounds::default()).unwrap();
        // X^2 - t splits (both roots present), so quasi-galois holds and
        // the default basis certifies tame.
        assert!(c.quasi_galois.is_certified());
        assert_eq!(c.tame, Verdict::Certified("basis {t}".to_string()));
        assert_eq!(
            c.galois,
            Verdict::Certified("tame + Prop 3.10 bullet 1".to_string())
        );
        // The scan refutes absolute over Q(t^2).
        match &c.absolute {
            Verdict::Refuted(w) => assert!(w.contains("Q(t^2)"), "witness: {}", w),
            other => panic!("expected refuted absolute, got {}", other),
        }
    }

    #[test]
    fn verdict_rendering() {
        assert_eq!(
            Verdict::Certified("Prop 3.9".to_string()).to_string(),
            "Certified(Prop 3.9)"
        );
        assert_eq!(
            Verdict::Refuted("rigid element c".to_string()).to_string(),
            "Refuted(rigid element c)"
        );
        assert_eq!(Verdict::Unknown.to_string(), "Unknown");
        assert_eq!(Verdict::Unknown.status(), "unknown");
        assert_eq!(
            Verdict::Certified(String::new()).status(),
            "certified"
        );
    }
}
