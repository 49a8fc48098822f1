//! Factorization over tower fields. A primitive element reduces the tower
//! to a single generator; resultant norms push each squarefree part down to
//! the transcendental base field, where the function-field routine factors
//! it; gcds lift the result back up.

use std::cmp::Ordering;
use std::fmt;
use std::rc::Rc;

use crate::error::{ArithError, FactorError};
use crate::factor::funcfield::factor_funcfield;
use crate::factor::rational::INTERNAL_DEGREE_CAP;
use crate::factor::Factorization;
use crate::linalg::solve;
use crate::multipoly::{resultant_ring, gcd_multipoly, Monomial, MultiPoly, VarTable};
use crate::rational::Rational;
use crate::ratfunc::{poly_to_cleared_multipoly, RatFunc};
use crate::tower::{FieldTower, TowerElement};
use crate::unipoly::{CoeffField, UniPoly};

/// How far the norm-squarefree shift scan goes before giving up.
const SHIFT_BOUND: i64 = 120;

/// Largest coefficient tried in primitive element combinations.
const PRIMITIVE_COEFF_BOUND: i64 = 20;

/// A primitive element for L over K(delta), with conversion data for
/// rewriting arbitrary elements as polynomials in it.
pub struct PrimitiveElement {
    pub gamma: TowerElement,
    /// Monic minimal polynomial of gamma over K(delta); its degree equals
    /// [L : K(delta)].
    pub minpoly: UniPoly<RatFunc>,
    /// The generator combination: gamma = sum of coeffs[i] * gen_i.
    pub coeffs: Vec<i64>,
    /// Coordinates of gamma^k for k below the tower degree.
    pow_coords: Vec<Vec<RatFunc>>,
}

impl PrimitiveElement {
    /// Rewrites x as a polynomial in gamma over K(delta).
    pub fn express(&self, x: &TowerElement) -> UniPoly<RatFunc> {
        let tower = x.tower();
        let target = tower.coords(x);
        let d = self.pow_coords.len();
        let rows: Vec<Vec<RatFunc>> = (0..target.len())
            .map(|r| (0..d).map(|k| self.pow_coords[k][r].clone()).collect())
            .collect();
        let proto = RatFunc::zero(tower.delta());
        let lambda = solve(&rows, &target, &proto).expect("gamma powers span the tower");
        UniPoly::from_coeffs(lambda)
    }

    /// Evaluates a polynomial in gamma back to a tower element.
    pub fn unexpress(&self, p: &UniPoly<RatFunc>, tower: &FieldTower) -> TowerElement {
        let mut acc = tower.zero();
        for c in p.coeffs().iter().rev() {
            let base = tower.from_base(c.clone()).expect("same table");
            acc = acc.mul(&self.gamma).expect("same tower").add(&base).expect("same tower");
        }
        acc
    }
}

/// Minimal polynomial of x over K(delta), by linear dependence of its
/// powers in power-basis coordinates. Always monic and irreducible.
pub fn minpoly_over_base(tower: &FieldTower, x: &TowerElement) -> UniPoly<RatFunc> {
    let size = tower.basis_size();
    let proto = RatFunc::zero(tower.delta());
    let mut pow_coords: Vec<Vec<RatFunc>> = vec![tower.coords(&tower.one())];
    let mut xpow = tower.one();
    for d in 1..=size {
        xpow = xpow.mul(x).expect("same tower");
        let target = tower.coords(&xpow);
        let rows: Vec<Vec<RatFunc>> = (0..size)
            .map(|r| (0..d).map(|k| pow_coords[k][r].clone()).collect())
            .collect();
        if let Some(lambda) = solve(&rows, &target, &proto) {
            let mut coeffs: Vec<RatFunc> = lambda.iter().map(|l| l.neg()).collect();
            coeffs.push(RatFunc::one(tower.delta()));
            return UniPoly::from_coeffs(coeffs);
        }
        pow_coords.push(target);
    }
    unreachable!("powers of a tower element are dependent by the tower degree")
}

/// Shared context for arithmetic in K(delta)[Y]/(mu): the modulus and a
/// base-field prototype for building constants.
struct ModCtx {
    modulus: UniPoly<RatFunc>,
    proto: RatFunc,
}

/// Element of K(delta)[Y]/(mu), the single-generator model of the tower.
/// Field operations here reduce to univariate arithmetic over the base,
/// which stays far cheaper than tower-coordinate arithmetic (whose
/// inversions each solve a linear system over the base).
#[derive(Clone)]
struct ModElem {
    rep: UniPoly<RatFunc>,
    ctx: Rc<ModCtx>,
}

impl ModElem {
    fn new(rep: UniPoly<RatFunc>, ctx: &Rc<ModCtx>) -> Self {
        ModElem {
            rep,
            ctx: ctx.clone(),
        }
    }
}

impl PartialEq for ModElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl fmt::Debug for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModElem({})", self.rep.render("Y"))
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.render("Y"))
    }
}

impl CoeffField for ModElem {
    fn zero_like(&self) -> Self {
        ModElem::new(UniPoly::zero(), &self.ctx)
    }

    fn one_like(&self) -> Self {
        ModElem::new(UniPoly::constant(self.ctx.proto.one_like()), &self.ctx)
    }

    fn from_rational(&self, r: &Rational) -> Self {
        ModElem::new(
            UniPoly::constant(self.ctx.proto.from_rational(r)),
            &self.ctx,
        )
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        ModElem::new(self.rep.add(&other.rep), &self.ctx)
    }

    fn sub(&self, other: &Self) -> Self {
        ModElem::new(self.rep.sub(&other.rep), &self.ctx)
    }

    fn mul(&self, other: &Self) -> Self {
        let prod = self.rep.mul(&other.rep);
        let red = prod.rem(&self.ctx.modulus).expect("nonzero modulus");
        ModElem::new(red, &self.ctx)
    }

    fn neg(&self) -> Self {
        ModElem::new(self.rep.neg(), &self.ctx)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.rep.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // The modulus is irreducible, so any nonzero representative is
        // coprime to it: s*rep + t*mu = 1 gives the inverse directly.
        let (g, s, _) = self.rep.extended_gcd(&self.ctx.modulus);
        if !g.is_one() {
            return Err(ArithError::DivisionByZero);
        }
        let red = s.rem(&self.ctx.modulus).expect("nonzero modulus");
        Ok(ModElem::new(red, &self.ctx))
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        let a = self.rep.coeffs();
        let b = other.rep.coeffs();
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b.iter()).rev() {
                let o = x.cmp_key(y);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

/// Finds gamma = sum c_i gen_i whose minimal polynomial has full tower
/// degree. Deterministic search over small integer combinations.
pub fn primitive_element(tower: &FieldTower) -> Result<PrimitiveElement, FactorError> {
    let m = tower.num_gens();
    let size = tower.basis_size();
    let try_candidate = |cs: &[i64]| -> Option<PrimitiveElement> {
        let mut gamma = tower.zero();
        for (i, &c) in cs.iter().enumerate() {
            let term = tower.gen(i).mul_rational(&Rational::from_int(c));
            gamma = gamma.add(&term).expect("same tower");
        }
        let minpoly = minpoly_over_base(tower, &gamma);
        if minpoly.degree() != size {
            return None;
        }
        let mut pow_coords = Vec::with_capacity(size);
        let mut p = tower.one();
        pow_coords.push(tower.coords(&p));
        for _ in 1..size {
            p = p.mul(&gamma).expect("same tower");
            pow_coords.push(tower.coords(&p));
        }
        Some(PrimitiveElement {
            gamma,
            minpoly,
            coeffs: cs.to_vec(),
            pow_coords,
        })
    };
    if m == 0 {
        return Ok(try_candidate(&[]).expect("trivial tower"));
    }
    if let Some(p) = try_candidate(&vec![1; m]) {
        return Ok(p);
    }
    // Candidate digits in deterministic order of growing size.
    let digits: Vec<i64> = (1..=PRIMITIVE_COEFF_BOUND)
        .flat_map(|v| [v, -v])
        .collect();
    // Shells by the largest digit index used, so small coefficients come
    // first and the order is stable.
    for shell in 1..digits.len() {
        let mut idx = vec![0usize; m];
        loop {
            if idx.iter().any(|&i| i == shell) && idx.iter().all(|&i| i <= shell) {
                let cs: Vec<i64> = idx.iter().map(|&i| digits[i]).collect();
                if let Some(p) = try_candidate(&cs) {
                    return Ok(p);
                }
            }
            // Odometer over base shell+1.
            let mut pos = 0;
            loop {
                if pos == m {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] <= shell {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
    }
    Err(FactorError::SearchExhausted {
        what: format!(
            "primitive element with coefficients bounded by {PRIMITIVE_COEFF_BOUND}"
        ),
    })
}

fn lcm_mp(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let g = gcd_multipoly(a, b);
    let q = a.exact_div(&g).expect("gcd divides");
    q.mul(b)
}

/// Norm of a monic polynomial over the tower: the resultant in gamma of the
/// primitive minimal polynomial and the polynomial rewritten in gamma.
/// Returned up to a base-field unit.
fn norm_poly(
    g: &UniPoly<TowerElement>,
    prim: &PrimitiveElement,
    tower: &FieldTower,
) -> Result<UniPoly<RatFunc>, FactorError> {
    let delta = tower.delta();
    let n = delta.len();
    let mut names: Vec<String> = delta.names().to_vec();
    names.push("#Y".to_string());
    names.push("#X".to_string());
    let ext = VarTable::new(names);
    let iy = n;
    let ix = n + 1;
    let dmap: Vec<usize> = (0..n).collect();

    let mu_mp = poly_to_cleared_multipoly(&prim.minpoly, &ext, &dmap, iy);

    // ghat(X, Y): coefficients of g rewritten as polynomials in gamma, with
    // one global denominator cleared.
    let pjs: Vec<UniPoly<RatFunc>> = g.coeffs().iter().map(|c| prim.express(c)).collect();
    let mut den = MultiPoly::one(delta);
    for pj in &pjs {
        for c in pj.coeffs() {
            den = lcm_mp(&den, c.den());
        }
    }
    let mut ghat = MultiPoly::zero(&ext);
    for (j, pj) in pjs.iter().enumerate() {
        for (k, c) in pj.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scale = den.exact_div(c.den()).expect("lcm of denominators");
            let cleared = c.num().mul(&scale).map_vars(&ext, &dmap);
            let mut exps = vec![0u32; ext.len()];
            exps[iy] = k as u32;
            exps[ix] = j as u32;
            ghat = ghat.add(&cleared.mul_monomial(&Monomial(exps), &Rational::one()));
        }
    }

    let res = resultant_ring(&mu_mp.as_ringpoly(iy), &ghat.as_ringpoly(iy))?;
    debug_assert_eq!(res.degree_in(iy), 0);

    // Back to a univariate polynomial in X over K(delta). The #Y and #X
    // slots carry exponent zero in every coefficient, so the reverse map
    // never reads their entries.
    let mut back_map = vec![0usize; n + 2];
    for (i, entry) in back_map.iter_mut().enumerate().take(n) {
        *entry = i;
    }
    let rp = res.as_ringpoly(ix);
    let coeffs: Vec<RatFunc> = rp
        .coeffs
        .iter()
        .map(|mp| RatFunc::from_poly(mp.map_vars(delta, &back_map)))
        .collect();
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Splits one squarefree monic polynomial into monic irreducible factors
/// over the tower.
fn trager_squarefree(
    g: &UniPoly<TowerElement>,
    tower: &FieldTower,
    prim: &PrimitiveElement,
) -> Result<Vec<UniPoly<TowerElement>>, FactorError> {
    if g.degree() == 1 {
        return Ok(vec![g.clone()]);
    }
    let mut shift: Option<(i64, UniPoly<TowerElement>, UniPoly<RatFunc>)> = None;
    for s in shift_candidates() {
        let offset = prim.gamma.mul_rational(&Rational::from_int(-s));
        let gs = g.shift_arg(&offset);
        let norm = norm_poly(&gs, prim, tower)?;
        let (_, monic_norm) = norm.monic().expect("norm of monic polynomial is nonzero");
        if monic_norm.is_squarefree() {
            shift = Some((s, gs, monic_norm));
            break;
        }
    }
    let Some((s, gs, norm)) = shift else {
        return Err(FactorError::SearchExhausted {
            what: format!("squarefree norm shift within |s| <= {SHIFT_BOUND}"),
        });
    };
    let norm_fac = factor_funcfield(&norm, INTERNAL_DEGREE_CAP)?;
    if norm_fac.is_irreducible() {
        return Ok(vec![g.clone()]);
    }
    let back = prim.gamma.mul_rational(&Rational::from_int(s));
    // The gcds that cut each tower factor out of gs run in the
    // single-generator model K(delta)[Y]/(mu), where inversion is a
    // univariate extended gcd instead of a tower-coordinate linear solve.
    let ctx = Rc::new(ModCtx {
        modulus: prim.minpoly.clone(),
        proto: RatFunc::zero(tower.delta()),
    });
    let gs_mod: UniPoly<ModElem> = UniPoly::from_coeffs(
        gs.coeffs()
            .iter()
            .map(|c| ModElem::new(prim.express(c), &ctx))
            .collect(),
    );
    let mut out = Vec::with_capacity(norm_fac.factors.len());
    for (ni, _) in &norm_fac.factors {
        let ni_mod = ni.map_coeffs(|c| ModElem::new(UniPoly::constant(c.clone()), &ctx));
        let h_mod = gs_mod.gcd(&ni_mod);
        // With a squarefree norm every norm factor meets exactly one tower
        // factor.
        assert!(!h_mod.is_constant(), "squarefree norm factor with trivial gcd");
        let h = h_mod.map_coeffs(|c| prim.unexpress(&c.rep, tower));
        out.push(h.shift_arg(&back));
    }
    debug_assert_eq!(out.iter().map(|f| f.degree()).sum::<usize>(), g.degree());
    Ok(out)
}

fn shift_candidates() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=SHIFT_BOUND).flat_map(|s| [s, -s]))
}

/// Factors a polynomial with tower-element coefficients into monic
/// irreducibles times a unit. Towers without algebraic generators reduce to
/// the base function field.
pub fn factor_over_tower(
    f: &UniPoly<TowerElement>,
    tower: &FieldTower,
    cap: usize,
) -> Result<Factorization<TowerElement>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Factorization::unit_only(
            f.constant_term().expect("constant polynomial").clone(),
        ));
    }
    if f.degree() > cap {
        return Err(FactorError::DegreeCapExceeded {
            degree: f.degree(),
            cap,
        });
    }
    // Tower degree 1 means every element already lies in the base field.
    if tower.degree() == 1 {
        let base_poly = f.map_coeffs(|c| {
            c.as_base().expect("degree-1 tower elements are base elements")
        });
        let fac = factor_funcfield(&base_poly, cap)?;
        let lift =
            |p: &UniPoly<RatFunc>| p.map_coeffs(|c| tower.from_base(c.clone()).expect("same table"));
        let mut result = Factorization {
            unit: tower.from_base(fac.unit.clone()).expect("same table"),
            factors: fac.factors.iter().map(|(p, m)| (lift(p), *m)).collect(),
        };
        result.sort();
        return Ok(result);
    }

    let (lc, monic) = f.monic().expect("nonzero");

    // Squarefree monic nonlinear pieces still needing the norm machinery.
    let mut pending: Vec<(UniPoly<TowerElement>, u32)> = Vec::new();
    let mut factors: Vec<(UniPoly<TowerElement>, u32)> = Vec::new();

    // When every coefficient already lies in the base function field,
    // factor there first: the pieces have much smaller norms than the
    // whole, and base-irreducible pieces stay squarefree over the tower
    // (characteristic zero), so they skip the squarefree decomposition.
    let base_image: Option<Vec<RatFunc>> =
        monic.coeffs().iter().map(|c| c.as_base()).collect();
    if let Some(cs) = base_image {
        let fac = factor_funcfield(&UniPoly::from_coeffs(cs), INTERNAL_DEGREE_CAP)?;
        for (p, m) in &fac.factors {
            let lifted = p.map_coeffs(|c| {
                tower.from_base(c.clone()).expect("same variable table")
            });
            if p.degree() == 1 {
                factors.push((lifted, *m));
            } else {
                pending.push((lifted, *m));
            }
        }
    } else {
        for (part, mult) in monic.squarefree_decompose()? {
            if !part.is_constant() {
                pending.push((part, mult));
            }
        }
    }

    let mut prim: Option<PrimitiveElement> = None;
    for (part, mult) in &pending {
        if prim.is_none() {
            prim = Some(primitive_element(tower)?);
        }
        let prim = prim.as_ref().expect("just computed");
        for h in trager_squarefree(part, tower, prim)? {
            factors.push((h, *mult));
        }
    }
    let mut result = Factorization { unit: lc, factors };
    result.sort();
    debug_assert!(result.verify(f));
    Ok(result)
}

/// Distinct roots of f inside the tower, deterministically ordered.
pub fn roots_in_tower(
    f: &UniPoly<TowerElement>,
    tower: &FieldTower,
) -> Result<Vec<TowerElement>, FactorError> {
    use crate::unipoly::CoeffField;
    let fac = factor_over_tower(f, tower, INTERNAL_DEGREE_CAP)?;
    let mut roots = fac.linear_roots();
    roots.sort_by(|a, b| a.cmp_key(b));
    Ok(roots)
}

/// Splitting behaviour of f over the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    /// f is a product of linear factors.
    Splits,
    /// f has the given number of distinct roots but nonlinear factors too.
    Partial(usize),
    /// f has no root in the tower.
    NoRoot,
}

pub fn splits_in_tower(
    f: &UniPoly<TowerElement>,
    tower: &FieldTower,
) -> Result<SplitOutcome, FactorError> {
    let fac = factor_over_tower(f, tower, INTERNAL_DEGREE_CAP)?;
    let mut linear_mult = 0usize;
    let mut linear_count = 0usize;
    for (p, m) in &fac.factors {
        if p.degree() == 1 {
            linear_mult += *m as usize;
            linear_count += 1;
        }
    }
    if f.is_constant() || linear_mult == f.degree() {
        Ok(SplitOutcome::Splits)
    } else if linear_count == 0 {
        Ok(SplitOutcome::NoRoot)
    } else {
        Ok(SplitOutcome::Partial(linear_count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::CoeffField;

    fn q_t() -> FieldTower {
        FieldTower::rational(vec!["t".to_string()]).unwrap()
    }

    fn qp(tower: &FieldTower, cs: &[i64]) -> UniPoly<TowerElement> {
        UniPoly::from_coeffs(
            cs.iter()
                .map(|&c| tower.from_rational(Rational::from_int(c)))
                .collect(),
        )
    }

    /// Q(t)[a : a^2 - 2]
    fn tower_sqrt2() -> FieldTower {
        let base = q_t();
        base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap()
    }

    /// Q(t)[a : a^2 - 2][b : b^2 - t]
    fn tower_sqrt2_sqrtt() -> FieldTower {
        let t1 = tower_sqrt2();
        let m = UniPoly::from_coeffs(vec![t1.var(0).neg(), t1.zero(), t1.one()]);
        t1.extend("b", &m).unwrap()
    }

    #[test]
    fn minpoly_of_generators() {
        let tw = tower_sqrt2_sqrtt();
        let a = tw.gen(0);
        let mp = minpoly_over_base(&tw, &a);
        assert_eq!(mp.render("X"), "X^2 - 2");
        // a*b has minpoly X^4 - ... over Q(t): (ab)^2 = 2t, so X^2 - 2t.
        let ab = a.mul(&tw.gen(1)).unwrap();
        let mp2 = minpoly_over_base(&tw, &ab);
        assert_eq!(mp2.degree(), 2);
        assert!(mp2.coeff(1).is_zero());
        // Constant elements have linear minpolys.
        let c = tw.from_rational(Rational::from_int(5));
        assert_eq!(minpoly_over_base(&tw, &c).degree(), 1);
    }

    #[test]
    fn primitive_element_spans() {
        let tw = tower_sqrt2_sqrtt();
        let p = primitive_element(&tw).unwrap();
        assert_eq!(p.minpoly.degree(), 4);
        // a + b is primitive here, found on the first candidate.
        assert_eq!(p.coeffs, vec![1, 1]);
        // express/unexpress round trip on a generator.
        let expr = p.express(&tw.gen(0));
        assert_eq!(p.unexpress(&expr, &tw), tw.gen(0));
    }

    #[test]
    fn factor_splits_x2_minus_2_over_sqrt2() {
        let tw = tower_sqrt2();
        let f = qp(&tw, &[-2, 0, 1]);
        let fac = factor_over_tower(&f, &tw, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(p, m)| p.degree() == 1 && *m == 1));
        let roots = roots_in_tower(&f, &tw).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&tw.gen(0)));
        assert!(roots.contains(&tw.gen(0).neg()));
    }

    #[test]
    fn factor_keeps_x2_minus_3_irreducible_over_sqrt2() {
        let tw = tower_sqrt2();
        let f = qp(&tw, &[-3, 0, 1]);
        let fac = factor_over_tower(&f, &tw, 24).unwrap();
        assert!(fac.is_irreducible());
        assert_eq!(splits_in_tower(&f, &tw).unwrap(), SplitOutcome::NoRoot);
    }

    #[test]
    fn x2_minus_t_splits_at_top_of_tower() {
        let tw = tower_sqrt2_sqrtt();
        let t_el = tw.var(0);
        let f = UniPoly::from_coeffs(vec![t_el.neg(), tw.zero(), tw.one()]);
        assert_eq!(splits_in_tower(&f, &tw).unwrap(), SplitOutcome::Splits);
        let roots = roots_in_tower(&f, &tw).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&tw.gen(1)));
    }

    #[test]
    fn partial_split_with_function_coefficients() {
        // X^3 + X - (t^3 + t) over Q(t)[a : a^2 - 2]: the linear factor
        // X - t splits off, the quadratic stays irreducible.
        let tw = tower_sqrt2();
        let t3t = tw
            .var(0)
            .pow(3)
            .add(&tw.var(0))
            .unwrap();
        let f = UniPoly::from_coeffs(vec![t3t.neg(), tw.one(), tw.zero(), tw.one()]);
        let fac = factor_over_tower(&f, &tw, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(splits_in_tower(&f, &tw).unwrap(), SplitOutcome::Partial(1));
        let roots = roots_in_tower(&f, &tw).unwrap();
        assert_eq!(roots, vec![tw.var(0)]);
    }

    #[test]
    fn gens_absent_delegates_to_base() {
        let tw = q_t();
        let t_el = tw.var(0);
        // (X - t)(X + t)
        let f = UniPoly::from_coeffs(vec![
            t_el.mul(&t_el).unwrap().neg(),
            tw.zero(),
            tw.one(),
        ]);
        let fac = factor_over_tower(&f, &tw, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let roots = roots_in_tower(&f, &tw).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn multiplicities_preserved() {
        let tw = tower_sqrt2();
        let a = tw.gen(0);
        // (X - a)^2 (X + a)
        let xa = UniPoly::from_coeffs(vec![a.neg(), tw.one()]);
        let xpa = UniPoly::from_coeffs(vec![a.clone(), tw.one()]);
        let f = xa.mul(&xa).mul(&xpa);
        let fac = factor_over_tower(&f, &tw, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let mult_of_xa = fac
            .factors
            .iter()
            .find(|(p, _)| *p == xa)
            .map(|(_, m)| *m)
            .unwrap();
        assert_eq!(mult_of_xa, 2);
    }

    #[test]
    fn cube_root_tower_keeps_cubic_partial() {
        // Q(t)[c : c^3 - 2]: X^3 - 2 gains exactly one root.
        let base = q_t();
        let tw = base.extend("c", &qp(&base, &[-2, 0, 0, 1])).unwrap();
        let f = qp(&tw, &[-2, 0, 0, 1]);
        let fac = factor_over_tower(&f, &tw, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(splits_in_tower(&f, &tw).unwrap(), SplitOutcome::Partial(1));
        let roots = roots_in_tower(&f, &tw).unwrap();
        assert_eq!(roots, vec![tw.gen(0)]);
    }

    #[test]
    fn algebraic_number_field_without_delta() {
        // Q[a : a^2 - 2], empty transcendental layer.
        let base = FieldTower::rational(vec![]).unwrap();
        let tw = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let f = qp(&tw, &[-2, 0, 1]);
        assert_eq!(splits_in_tower(&f, &tw).unwrap(), SplitOutcome::Splits);
        // X^4 - 2 = (X^2 - a)(X^2 + a) over Q(sqrt 2).
        let g = qp(&tw, &[-2, 0, 0, 0, 1]);
        let fac = factor_over_tower(&g, &tw, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(p, _)| p.degree() == 2));
        assert_eq!(splits_in_tower(&g, &tw).unwrap(), SplitOutcome::NoRoot);
    }

    #[test]
    fn roots_sorted_deterministically() {
        let tw = tower_sqrt2();
        let f = qp(&tw, &[-2, 0, 1]);
        let r1 = roots_in_tower(&f, &tw).unwrap();
        let r2 = roots_in_tower(&f, &tw).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1[0].cmp_key(&r1[1]), std::cmp::Ordering::Less);
    }
}
