//! Subfields of a tower, presented as an abstract tower plus embedding
//! images of its generators. Membership, minimal polynomials, relative
//! degrees and linear disjointness all reduce to bounded Q-linear relation
//! searches over power-basis coordinates, with factorization used to trim
//! any found relation down to the exact minimal polynomial.

use std::collections::BTreeSet;

use crate::error::QueryError;
use crate::factor::rational::INTERNAL_DEGREE_CAP;
use crate::factor::funcfield::factor_funcfield;
use crate::factor::tower::factor_over_tower;
use crate::linalg::kernel_basis;
use crate::multipoly::{gcd_multipoly, Monomial, MultiPoly, VarTable};
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::tower::basis::NiceBasis;
use crate::tower::{FieldTower, TowerElement};
use crate::unipoly::UniPoly;

/// Escalation schedule for minimal-polynomial relation searches: each step
/// bounds both the polynomial degree and the total degree in the subfield
/// generators.
const RELATION_SCHEDULE: &[usize] = &[1, 2, 3, 4, 6, 8, 12, 16, 24];

/// Smaller schedule for pure membership searches, which are semi-decisions.
const MEMBER_SCHEDULE: &[usize] = &[1, 2, 3, 4, 6, 8];

/// A subfield F of an ambient tower L: an abstract tower presenting F, plus
/// the images in L of its transcendental variables and algebraic
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldSpec {
    ftower: FieldTower,
    delta_images: Vec<TowerElement>,
    gen_images: Vec<TowerElement>,
    ambient: FieldTower,
    /// True when the transcendental images were verified to carry the full
    /// transcendence degree, so L is algebraic over F.
    complete: bool,
}

/// A minimal polynomial over a subfield, in both presentations.
#[derive(Debug, Clone)]
pub struct SubMinPoly {
    /// Coefficients are elements of the abstract subfield tower.
    pub abstract_poly: UniPoly<TowerElement>,
    /// Coefficients embedded into the ambient tower.
    pub embedded: UniPoly<TowerElement>,
}

/// Outcome of the linear-disjointness test between K(delta') and K(A).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearDisjointness {
    True { rule: String },
    False { witness: String },
    Unknown,
}

impl SubfieldSpec {
    /// Validates and builds a subfield presentation: generator images must
    /// satisfy their minimal polynomials, and when the transcendental
    /// images cover the full transcendence degree, every ambient variable
    /// must be verifiably algebraic over F.
    pub fn new(
        ftower: FieldTower,
        delta_images: Vec<TowerElement>,
        gen_images: Vec<TowerElement>,
        ambient: FieldTower,
    ) -> Result<Self, QueryError> {
        if delta_images.len() != ftower.delta().len() || gen_images.len() != ftower.num_gens() {
            return Err(QueryError::Unsupported {
                reason: "image count does not match the subfield presentation".to_string(),
            });
        }
        for img in delta_images.iter().chain(&gen_images) {
            if img.tower() != &ambient {
                return Err(QueryError::Arith(crate::error::ArithError::TowerMismatch));
            }
        }
        for img in &delta_images {
            if img.as_rational().is_some() {
                return Err(QueryError::UnrepresentableSubfield {
                    reason: format!("transcendental image `{img}` is a constant"),
                });
            }
        }
        for i in 0..ftower.num_gens() {
            let mp = ftower.minpoly_lifted(i);
            let mapped = mp.try_map_coeffs(|c| {
                ambient.map_element(c, &delta_images, &gen_images)
            })?;
            let value = mapped.eval(&gen_images[i]);
            if !value.is_zero() {
                return Err(QueryError::RelationCheckFailed {
                    detail: format!(
                        "image of `{}` does not satisfy its minimal polynomial",
                        ftower.gen_info(i).symbol()
                    ),
                });
            }
        }
        let complete = if delta_images.len() == ambient.delta().len() {
            let all_images: Vec<TowerElement> = delta_images
                .iter()
                .chain(&gen_images)
                .cloned()
                .collect();
            for v in 0..ambient.delta().len() {
                let var = ambient.var(v);
                if find_relation(&ambient, &var, &all_images, RELATION_SCHEDULE)?.is_none() {
                    return Err(QueryError::UnrepresentableSubfield {
                        reason: format!(
                            "could not verify `{}` algebraic over the subfield within bounds",
                            ambient.delta().name(v)
                        ),
                    });
                }
            }
            true
        } else {
            false
        };
        Ok(SubfieldSpec {
            ftower,
            delta_images,
            gen_images,
            ambient,
            complete,
        })
    }

    /// A purely transcendental subfield K(images). Abstract names follow
    /// the ambient variables when the images are exactly those variables.
    pub fn from_transcendentals(
        ambient: &FieldTower,
        images: &[TowerElement],
    ) -> Result<Self, QueryError> {
        let is_identity = images.len() == ambient.delta().len()
            && images
                .iter()
                .enumerate()
                .all(|(i, img)| *img == ambient.var(i));
        let names: Vec<String> = if is_identity {
            ambient.delta().names().to_vec()
        } else {
            (0..images.len()).map(|i| format!("u{i}")).collect()
        };
        let ftower = FieldTower::rational(names).map_err(QueryError::Build)?;
        SubfieldSpec::new(ftower, images.to_vec(), Vec::new(), ambient.clone())
    }

    pub fn ambient(&self) -> &FieldTower {
        &self.ambient
    }

    pub fn ftower(&self) -> &FieldTower {
        &self.ftower
    }

    pub fn delta_images(&self) -> &[TowerElement] {
        &self.delta_images
    }

    pub fn gen_images(&self) -> &[TowerElement] {
        &self.gen_images
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Embeds an abstract subfield element into the ambient tower.
    pub fn embed(&self, x: &TowerElement) -> Result<TowerElement, QueryError> {
        Ok(self
            .ambient
            .map_element(x, &self.delta_images, &self.gen_images)?)
    }

    /// Renders the presentation with its images, e.g.
    /// `Q(u0) with u0 -> t^3 + t`.
    pub fn render(&self) -> String {
        let mut out = self.ftower.render();
        let mut maps: Vec<String> = Vec::new();
        for (i, img) in self.delta_images.iter().enumerate() {
            let name = self.ftower.delta().name(i);
            let img_s = img.to_string();
            if name != img_s {
                maps.push(format!("{name} -> {img_s}"));
            }
        }
        for (i, img) in self.gen_images.iter().enumerate() {
            let name = self.ftower.gen_info(i).symbol();
            let img_s = img.to_string();
            if name != img_s {
                maps.push(format!("{name} -> {img_s}"));
            }
        }
        if !maps.is_empty() {
            out.push_str(" with ");
            out.push_str(&maps.join(", "));
        }
        out
    }

    /// Adjoins an ambient element as a new abstract generator, reusing its
    /// minimal polynomial over the current subfield. Returns the extended
    /// spec and the minimal polynomial (whose degree is the relative
    /// degree). Degree-one elements leave the spec unchanged.
    pub fn adjoin(&self, x: &TowerElement) -> Result<(SubfieldSpec, SubMinPoly), QueryError> {
        let m = minpoly_over_subfield(x, self)?;
        if m.embedded.degree() == 1 {
            return Ok((self.clone(), m));
        }
        let mut k = self.ftower.num_gens();
        let symbol = loop {
            let s = format!("w{k}");
            if self.ftower.delta().index_of(&s).is_none()
                && self.ftower.gen_symbols().iter().all(|g| *g != s)
            {
                break s;
            }
            k += 1;
        };
        let ftower = self
            .ftower
            .extend_shape_checked(&symbol, &m.abstract_poly)
            .map_err(QueryError::Build)?;
        let mut gen_images = self.gen_images.clone();
        gen_images.push(x.clone());
        Ok((
            SubfieldSpec {
                ftower,
                delta_images: self.delta_images.clone(),
                gen_images,
                ambient: self.ambient.clone(),
                complete: self.complete,
            },
            m,
        ))
    }
}

/// Exponent tuples over `n` slots with total degree at most `total`, in a
/// fixed graded order.
fn exponent_tuples(n: usize, total: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for deg in 1..=total as u32 {
        let mut stack = vec![(Vec::<u32>::new(), deg)];
        while let Some((prefix, rest)) = stack.pop() {
            if prefix.len() == n {
                if rest == 0 {
                    out.push(prefix);
                }
                continue;
            }
            let slots_left = n - prefix.len();
            for e in (0..=rest).rev() {
                if slots_left == 1 && e != rest {
                    continue;
                }
                let mut p = prefix.clone();
                p.push(e);
                stack.push((p, rest - e));
            }
        }
    }
    out
}

/// Kernel of the Q-linear map sending multipliers to the combination of the
/// given elements: each vector lists rationals c with sum c_i elems_i = 0.
fn q_kernel(ambient: &FieldTower, elems: &[TowerElement]) -> Vec<Vec<Rational>> {
    if elems.is_empty() {
        return Vec::new();
    }
    let coords: Vec<Vec<RatFunc>> = elems.iter().map(|e| ambient.coords(e)).collect();
    let size = ambient.basis_size();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for r in 0..size {
        let mut den = MultiPoly::one(ambient.delta());
        for c in &coords {
            let g = gcd_multipoly(&den, c[r].den());
            den = den.exact_div(&g).expect("gcd divides").mul(c[r].den());
        }
        let nums: Vec<MultiPoly> = coords
            .iter()
            .map(|c| {
                let scale = den.exact_div(c[r].den()).expect("lcm of denominators");
                c[r].num().mul(&scale)
            })
            .collect();
        let mut monos: BTreeSet<Monomial> = BTreeSet::new();
        for nmp in &nums {
            for (m, _) in nmp.terms() {
                monos.insert(m.clone());
            }
        }
        for m in monos {
            rows.push(
                nums.iter()
                    .map(|nmp| {
                        nmp.terms()
                            .find(|(mm, _)| **mm == m)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect(),
            );
        }
    }
    kernel_basis(rows, elems.len(), &Rational::zero())
}

/// One relation system: monomials x^i * prod f_j^{e_j} with their values
/// and the kernel of their Q-span.
struct RelationSystem {
    /// (exponent of x, exponents of the f's), per column.
    monomials: Vec<(usize, Vec<u32>)>,
    /// Value of the f-part alone, per column.
    fpart_values: Vec<TowerElement>,
    kernel: Vec<Vec<Rational>>,
}

fn relation_system(
    ambient: &FieldTower,
    x: &TowerElement,
    x_deg: usize,
    f_elems: &[TowerElement],
    total_deg: usize,
) -> RelationSystem {
    let mut x_pows = Vec::with_capacity(x_deg + 1);
    x_pows.push(ambient.one());
    for i in 1..=x_deg {
        x_pows.push(x_pows[i - 1].mul(x).expect("same tower"));
    }
    let mut f_pows: Vec<Vec<TowerElement>> = Vec::with_capacity(f_elems.len());
    for f in f_elems {
        let mut pows = Vec::with_capacity(total_deg + 1);
        pows.push(ambient.one());
        for e in 1..=total_deg {
            pows.push(pows[e - 1].mul(f).expect("same tower"));
        }
        f_pows.push(pows);
    }
    let tuples = exponent_tuples(f_elems.len(), total_deg);
    let mut monomials = Vec::new();
    let mut fpart_values = Vec::new();
    let mut values = Vec::new();
    for i in 0..=x_deg {
        for e in &tuples {
            let mut fv = ambient.one();
            for (j, &ej) in e.iter().enumerate() {
                if ej > 0 {
                    fv = fv.mul(&f_pows[j][ej as usize]).expect("same tower");
                }
            }
            values.push(x_pows[i].mul(&fv).expect("same tower"));
            fpart_values.push(fv);
            monomials.push((i, e.clone()));
        }
    }
    let kernel = q_kernel(ambient, &values);
    RelationSystem {
        monomials,
        fpart_values,
        kernel,
    }
}

/// Finds some polynomial relation P(x, f) = 0 with positive degree in x,
/// escalating degree bounds through the schedule. Returns the relation over
/// the table [#X, f-names...] or None when the schedule is exhausted. A
/// relation among the f's alone signals dependent images and errors.
fn find_relation(
    ambient: &FieldTower,
    x: &TowerElement,
    f_elems: &[TowerElement],
    schedule: &[usize],
) -> Result<Option<(MultiPoly, VarTable)>, QueryError> {
    let mut names = vec!["#X".to_string()];
    for j in 0..f_elems.len() {
        names.push(format!("#f{j}"));
    }
    let table = VarTable::new(names);
    for &bound in schedule {
        let sys = relation_system(ambient, x, bound, f_elems, bound);
        // A kernel vector without x at all is a relation among the f's
        // alone: the images are dependent and no relation found here can be
        // trusted, so scan for that before picking one.
        for vec in &sys.kernel {
            let has_x = sys
                .monomials
                .iter()
                .zip(vec)
                .any(|((i, _), c)| *i > 0 && !c.is_zero());
            if !has_x {
                return Err(QueryError::UnrepresentableSubfield {
                    reason: "subfield generator images are algebraically dependent".to_string(),
                });
            }
        }
        if let Some(vec) = sys.kernel.first() {
            let mut terms = Vec::new();
            for ((i, e), c) in sys.monomials.iter().zip(vec) {
                if c.is_zero() {
                    continue;
                }
                let mut exps = vec![0u32; f_elems.len() + 1];
                exps[0] = *i as u32;
                exps[1..].copy_from_slice(e);
                terms.push((Monomial(exps), c.clone()));
            }
            return Ok(Some((MultiPoly::from_terms(&table, terms), table)));
        }
    }
    Ok(None)
}

/// Minimal polynomial of x over the subfield. Two steps: a relation search
/// over the transcendental images gives some vanishing polynomial, whose
/// irreducible factor through x is the minimal polynomial over the purely
/// transcendental part; factoring that over the full subfield tower and
/// selecting the vanishing factor finishes the job.
pub fn minpoly_over_subfield(
    x: &TowerElement,
    sub: &SubfieldSpec,
) -> Result<SubMinPoly, QueryError> {
    if !sub.complete {
        return Err(QueryError::NotAlgebraicOverBase {
            detail: format!(
                "subfield {} does not carry the full transcendence degree",
                sub.render()
            ),
        });
    }
    let ambient = &sub.ambient;
    let ydelta = sub.ftower.delta().clone();

    // Step 1: minimal polynomial over the transcendental part K(f).
    let m0 = if ydelta.is_empty() {
        // Over Q: direct linear algebra on powers of x.
        minpoly_over_rationals(ambient, x)?
    } else {
        let Some((relation, table)) =
            find_relation(ambient, x, &sub.delta_images, RELATION_SCHEDULE)?
        else {
            return Err(QueryError::UnrepresentableSubfield {
                reason: format!("no algebraic relation for `{x}` found within degree bounds"),
            });
        };
        // Repackage the relation as a polynomial in #X over Q(f).
        let rp = relation.as_ringpoly(0);
        let mut back = vec![0usize; table.len()];
        for (i, entry) in back.iter_mut().enumerate().skip(1) {
            *entry = i - 1;
        }
        let coeffs: Vec<RatFunc> = rp
            .coeffs
            .iter()
            .map(|mp| RatFunc::from_poly(mp.map_vars(&ydelta, &back)))
            .collect();
        let p = UniPoly::from_coeffs(coeffs);
        let fac = factor_funcfield(&p, INTERNAL_DEGREE_CAP).map_err(QueryError::Factor)?;
        let proto = ambient.zero();
        let mut chosen: Option<UniPoly<RatFunc>> = None;
        for (cand, _) in &fac.factors {
            let embedded = cand.try_map_coeffs(|c| c.eval_in(&sub.delta_images, &proto))?;
            if embedded.eval(x).is_zero() {
                chosen = Some(cand.clone());
                break;
            }
        }
        chosen.expect("some irreducible factor of a vanishing relation vanishes")
    };

    // Step 2: factor over the full subfield tower when it has algebraic
    // generators; the factor vanishing at x is the minimal polynomial.
    if sub.ftower.num_gens() == 0 {
        let abstract_poly =
            m0.map_coeffs(|c| sub.ftower.from_base(c.clone()).expect("subfield base table"));
        let proto = ambient.zero();
        let embedded = m0.try_map_coeffs(|c| c.eval_in(&sub.delta_images, &proto))?;
        return Ok(SubMinPoly {
            abstract_poly,
            embedded,
        });
    }
    let lifted =
        m0.map_coeffs(|c| sub.ftower.from_base(c.clone()).expect("subfield base table"));
    let fac =
        factor_over_tower(&lifted, &sub.ftower, INTERNAL_DEGREE_CAP).map_err(QueryError::Factor)?;
    for (cand, _) in &fac.factors {
        let embedded = cand.try_map_coeffs(|c| {
            ambient.map_element(c, &sub.delta_images, &sub.gen_images)
        })?;
        if embedded.eval(x).is_zero() {
            return Ok(SubMinPoly {
                abstract_poly: cand.clone(),
                embedded,
            });
        }
    }
    unreachable!("minimal polynomial over the transcendental part has a vanishing factor")
}

/// Minimal polynomial over Q when the subfield has no transcendentals.
fn minpoly_over_rationals(
    ambient: &FieldTower,
    x: &TowerElement,
) -> Result<UniPoly<RatFunc>, QueryError> {
    // Powers of x, searched for a Q-linear dependence of least length.
    let empty = VarTable::new(Vec::new());
    let mut pows = vec![ambient.one()];
    for d in 1..=(ambient.basis_size() * 2).max(2) {
        let next = pows.last().unwrap().mul(x).expect("same tower");
        pows.push(next);
        let kernel = q_kernel(ambient, &pows);
        if let Some(vec) = kernel.first() {
            // Highest-power coefficient is nonzero by minimality of d.
            let lead = vec[d].clone();
            let inv = lead.inv().map_err(QueryError::Arith)?;
            let coeffs: Vec<RatFunc> = vec
                .iter()
                .map(|c| RatFunc::from_rational(&empty, c.mul(&inv)))
                .collect();
            return Ok(UniPoly::from_coeffs(coeffs));
        }
    }
    Err(QueryError::NotAlgebraicOverBase {
        detail: format!("`{x}` is not algebraic over Q"),
    })
}

/// Membership test. Complete subfields get a definite answer through the
/// minimal polynomial; otherwise a bounded search that is sound for `true`
/// and means "not found within bounds" for `false`.
pub fn member_of_subfield(x: &TowerElement, sub: &SubfieldSpec) -> Result<bool, QueryError> {
    if sub.complete {
        return Ok(minpoly_over_subfield(x, sub)?.embedded.degree() == 1);
    }
    let ambient = &sub.ambient;
    let all_images: Vec<TowerElement> = sub
        .delta_images
        .iter()
        .chain(&sub.gen_images)
        .cloned()
        .collect();
    for &bound in MEMBER_SCHEDULE {
        let sys = relation_system(ambient, x, 1, &all_images, bound);
        for vec in &sys.kernel {
            // Q(f) = coefficient of x in the relation; nonzero means
            // x = -P(f)/Q(f) lies in the subfield.
            let mut q = ambient.zero();
            for (k, (i, _)) in sys.monomials.iter().enumerate() {
                if *i == 1 && !vec[k].is_zero() {
                    let term = sys.fpart_values[k].mul_rational(&vec[k]);
                    q = q.add(&term).expect("same tower");
                }
            }
            if !q.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// [L : F] via a chain: adjoin every ambient variable and generator to F,
/// multiplying the relative minimal-polynomial degrees.
pub fn degree_over_subfield(sub: &SubfieldSpec) -> Result<usize, QueryError> {
    if !sub.complete {
        return Err(QueryError::NotAlgebraicOverBase {
            detail: format!(
                "subfield {} does not carry the full transcendence degree",
                sub.render()
            ),
        });
    }
    let ambient = sub.ambient.clone();
    let mut cur = sub.clone();
    let mut degree = 1usize;
    let mut elems: Vec<TowerElement> = (0..ambient.delta().len()).map(|v| ambient.var(v)).collect();
    elems.extend((0..ambient.num_gens()).map(|i| ambient.gen(i)));
    for e in elems {
        let (next, m) = cur.adjoin(&e)?;
        degree *= m.embedded.degree();
        cur = next;
    }
    Ok(degree)
}

/// Whether K(delta') and K(A) are linearly disjoint over Q, by three
/// bounded rules. `True` and `False` are sound; `Unknown` means the bounded
/// searches were inconclusive. The caller supplies a genuine basis: the
/// transcendence part must really be algebraically independent.
pub fn linear_disjointness(
    tower: &FieldTower,
    basis: &NiceBasis,
    degree_bound: usize,
) -> Result<LinearDisjointness, QueryError> {
    // Rule 1: every linear-basis element algebraic over Q makes K(A)
    // algebraic over Q, and algebraic extensions are linearly disjoint from
    // purely transcendental ones.
    let all_algebraic = basis.a_list.iter().all(|a| {
        crate::factor::tower::minpoly_over_base(tower, a)
            .coeffs()
            .iter()
            .all(|c| c.as_rational().is_some())
    });
    if all_algebraic {
        return Ok(LinearDisjointness::True {
            rule: "R1: every linear basis element is algebraic over Q".to_string(),
        });
    }

    // Rule 2: a transcendence element lying inside K(A) breaks
    // disjointness outright.
    for v in &basis.delta_prime {
        if v.as_rational().is_some() {
            continue;
        }
        for &bound in MEMBER_SCHEDULE.iter().take_while(|&&b| b <= degree_bound) {
            let sys = relation_system(tower, v, 1, &basis.a_list, bound);
            let mut found = false;
            for vec in &sys.kernel {
                let mut q = tower.zero();
                for (k, (i, _)) in sys.monomials.iter().enumerate() {
                    if *i == 1 && !vec[k].is_zero() {
                        let term = sys.fpart_values[k].mul_rational(&vec[k]);
                        q = q.add(&term).expect("same tower");
                    }
                }
                if !q.is_zero() {
                    found = true;
                    break;
                }
            }
            if found {
                return Ok(LinearDisjointness::False {
                    witness: format!("R2: {v} lies in K(A)"),
                });
            }
        }
    }

    // Rule 3: monomials in the transcendence part, independent over Q,
    // tested for dependence with K(A) coefficients.
    let m_tuples = exponent_tuples(basis.delta_prime.len(), degree_bound);
    let mut m_values = Vec::with_capacity(m_tuples.len());
    for e in &m_tuples {
        let mut m = tower.one();
        for (j, &ej) in e.iter().enumerate() {
            if ej > 0 {
                m = m.mul(&basis.delta_prime[j].pow(ej)).expect("same tower");
            }
        }
        m_values.push(m);
    }
    let a_tuples = exponent_tuples(basis.a_list.len(), degree_bound);
    let mut a_values = Vec::with_capacity(a_tuples.len());
    for e in &a_tuples {
        let mut m = tower.one();
        for (j, &ej) in e.iter().enumerate() {
            if ej > 0 {
                m = m.mul(&basis.a_list[j].pow(ej)).expect("same tower");
            }
        }
        a_values.push(m);
    }
    let v_basis = q_independent_subset(tower, &a_values);
    let mut columns = Vec::with_capacity(m_values.len() * v_basis.len());
    for mv in &m_values {
        for &vi in &v_basis {
            columns.push(mv.mul(&a_values[vi]).expect("same tower"));
        }
    }
    if !q_kernel(tower, &columns).is_empty() {
        return Ok(LinearDisjointness::False {
            witness: format!(
                "R3: monomials of {} degree <= {} become dependent over K(A)",
                basis.label, degree_bound
            ),
        });
    }

    Ok(LinearDisjointness::Unknown)
}

/// Indices of a maximal Q-linearly independent subset, greedily in input
/// order.
fn q_independent_subset(ambient: &FieldTower, elems: &[TowerElement]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut kept: Vec<TowerElement> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        kept.push(e.clone());
        if q_kernel(ambient, &kept).is_empty() {
            chosen.push(i);
        } else {
            kept.pop();
        }
    }
    chosen
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

    fn tower_sqrt2_sqrtt() -> FieldTower {
        let base = q_t();
        let t1 = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let m = UniPoly::from_coeffs(vec![t1.var(0).neg(), t1.zero(), t1.one()]);
        t1.extend("b", &m).unwrap()
    }

    #[test]
    fn minpoly_of_t_over_q_of_t_cubed_plus_t() {
        // F = Q(t^3 + t) inside Q(t): t has degree 3, minpoly X^3 + X - u.
        let tw = q_t();
        let img = tw
            .var(0)
            .pow(3)
            .add(&tw.var(0))
            .unwrap();
        let sub = SubfieldSpec::from_transcendentals(&tw, &[img]).unwrap();
        assert!(sub.is_complete());
        let m = minpoly_over_subfield(&tw.var(0), &sub).unwrap();
        assert_eq!(m.embedded.degree(), 3);
        assert!(m.embedded.eval(&tw.var(0)).is_zero());
        assert_eq!(degree_over_subfield(&sub).unwrap(), 3);
    }

    #[test]
    fn minpoly_of_t_over_q_t_squared() {
        let tw = q_t();
        let img = tw.var(0).pow(2);
        let sub = SubfieldSpec::from_transcendentals(&tw, &[img]).unwrap();
        let m = minpoly_over_subfield(&tw.var(0), &sub).unwrap();
        // X^2 - t^2.
        assert_eq!(m.embedded.degree(), 2);
        assert_eq!(degree_over_subfield(&sub).unwrap(), 2);
    }

    #[test]
    fn identity_subfield_has_degree_equal_tower_degree() {
        let tw = tower_sqrt2_sqrtt();
        let sub = SubfieldSpec::from_transcendentals(&tw, &[tw.var(0)]).unwrap();
        assert_eq!(degree_over_subfield(&sub).unwrap(), 4);
        // Minpoly of sqrt(t) over Q(t) is X^2 - t.
        let m = minpoly_over_subfield(&tw.gen(1), &sub).unwrap();
        assert_eq!(m.embedded.degree(), 2);
    }

    #[test]
    fn subfield_generated_by_sqrt_t_sees_t_inside() {
        // F = Q(sqrt t) inside Q(t)[sqrt2, sqrt t]: complete, and
        // [L : F] = 2.
        let tw = tower_sqrt2_sqrtt();
        let sub = SubfieldSpec::from_transcendentals(&tw, &[tw.gen(1)]).unwrap();
        assert!(sub.is_complete());
        assert_eq!(degree_over_subfield(&sub).unwrap(), 2);
        assert!(member_of_subfield(&tw.var(0), &sub).unwrap());
        assert!(!member_of_subfield(&tw.gen(0), &sub).unwrap());
    }

    #[test]
    fn incomplete_subfield_membership_is_bounded() {
        // F = Q(sqrt 2) inside Q(t)[sqrt2]: not transcendence-complete.
        let base = q_t();
        let tw = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let ftower = FieldTower::rational(Vec::new()).unwrap();
        let ftower = ftower
            .extend("c", &qp(&ftower, &[-2, 0, 1]))
            .unwrap();
        let sub = SubfieldSpec::new(ftower, vec![], vec![tw.gen(0)], tw.clone()).unwrap();
        assert!(!sub.is_complete());
        assert!(member_of_subfield(&tw.gen(0), &sub).unwrap());
        let three = tw.from_rational(Rational::from_int(3));
        assert!(member_of_subfield(&three, &sub).unwrap());
        assert!(!member_of_subfield(&tw.var(0), &sub).unwrap());
        assert!(matches!(
            minpoly_over_subfield(&tw.var(0), &sub),
            Err(QueryError::NotAlgebraicOverBase { .. })
        ));
    }

    #[test]
    fn bad_gen_image_rejected() {
        let tw = tower_sqrt2_sqrtt();
        let ftower = FieldTower::rational(Vec::new()).unwrap();
        let ftower = ftower.extend("c", &qp(&ftower, &[-2, 0, 1])).unwrap();
        // b^2 = t, not 2, so b is not a valid image of c.
        let r = SubfieldSpec::new(ftower, vec![], vec![tw.gen(1)], tw.clone());
        assert!(matches!(r, Err(QueryError::RelationCheckFailed { .. })));
    }

    #[test]
    fn dependent_transcendental_images_rejected() {
        let tw = FieldTower::rational(vec!["s".to_string(), "t".to_string()]).unwrap();
        // s and s^2 are dependent; the completeness check cannot verify t
        // algebraic and the dependence surfaces as an error.
        let r = SubfieldSpec::from_transcendentals(&tw, &[tw.var(0), tw.var(0).pow(2)]);
        assert!(r.is_err());
    }

    #[test]
    fn linear_disjointness_rules() {
        use crate::tower::basis::{basis_label, default_nice_basis};
        let tw = tower_sqrt2_sqrtt();
        // Default basis ({t}, power basis incl. sqrt t): t = (sqrt t)^2
        // lies in K(A), rule 2.
        let b = default_nice_basis(&tw);
        match linear_disjointness(&tw, &b, 4).unwrap() {
            LinearDisjointness::False { witness } => assert!(witness.contains("t")),
            other => panic!("expected False, got {other:?}"),
        }
        // Basis ({b}, {1, a}): all of A algebraic over Q, rule 1.
        let delta_prime = vec![tw.gen(1)];
        let b2 = NiceBasis {
            label: basis_label(&delta_prime),
            delta_prime,
            a_list: vec![tw.one(), tw.gen(0)],
        };
        assert!(matches!(
            linear_disjointness(&tw, &b2, 4).unwrap(),
            LinearDisjointness::True { .. }
        ));
    }

    #[test]
    fn adjoin_builds_chain() {
        let tw = tower_sqrt2_sqrtt();
        let sub = SubfieldSpec::from_transcendentals(&tw, &[tw.var(0)]).unwrap();
        let (sub2, m2) = sub.adjoin(&tw.gen(0)).unwrap();
        assert_eq!(m2.embedded.degree(), 2);
        assert_eq!(sub2.ftower().num_gens(), 1);
        // After adjoining sqrt 2, it is a member.
        assert!(member_of_subfield(&tw.gen(0), &sub2).unwrap());
        let (sub3, m3) = sub2.adjoin(&tw.gen(0)).unwrap();
        assert_eq!(m3.embedded.degree(), 1);
        assert_eq!(sub3.ftower().num_gens(), 1);
    }
}
