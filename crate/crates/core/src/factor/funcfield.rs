//! Factorization over rational function fields Q(W). One variable is
//! evaluated at a rational point where the image stays squarefree, the image
//! is factored recursively (bottoming out over Q), and the factors are
//! lifted back order by order in the adic expansion around the point, then
//! recombined. Factor coefficients of a monic polynomial with polynomial
//! coefficients are themselves polynomial with degree bounded by the input's
//! degree in the lifted variable, which makes one truncation exact.

use crate::error::FactorError;
use crate::factor::rational::{factor_rationals, INTERNAL_DEGREE_CAP};
use crate::factor::Factorization;
use crate::multipoly::{gcd_multipoly, Monomial, MultiPoly};
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::unipoly::{lift_poly, UniPoly};

/// Factors over Q(W); the coefficient field is read off the input, so this
/// also covers plain Q when no variable occurs.
pub fn factor_funcfield(
    f: &UniPoly<RatFunc>,
    cap: usize,
) -> Result<Factorization<RatFunc>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Factorization::unit_only(f.coeff(0)));
    }
    if f.degree() > cap {
        return Err(FactorError::DegreeCapExceeded {
            degree: f.degree(),
            cap,
        });
    }
    let unit = f.lc().clone();
    let mut factors: Vec<(UniPoly<RatFunc>, u32)> = Vec::new();
    for (part, mult) in f.squarefree_decompose()? {
        for irr in factor_squarefree(&part)? {
            factors.push((irr, mult));
        }
    }
    let mut out = Factorization { unit, factors };
    out.sort();
    debug_assert!(out.verify(f), "factorization failed reconstruction");
    Ok(out)
}

fn to_rational_poly(f: &UniPoly<RatFunc>) -> Option<UniPoly<Rational>> {
    f.try_map_coeffs(|c| c.as_rational().ok_or(())).ok()
}

/// Smallest variable index occurring in any coefficient.
fn main_var(f: &UniPoly<RatFunc>) -> Option<usize> {
    let nvars = f.lc().vars().len();
    (0..nvars).find(|&v| f.coeffs().iter().any(|c| c.involves(v)))
}

fn factor_squarefree(part: &UniPoly<RatFunc>) -> Result<Vec<UniPoly<RatFunc>>, FactorError> {
    debug_assert!(part.is_monic() && part.is_squarefree());
    if part.degree() == 1 {
        return Ok(vec![part.clone()]);
    }
    let proto = part.lc().clone();
    if let Some(q) = to_rational_poly(part) {
        let fac = factor_rationals(&q, INTERNAL_DEGREE_CAP)?;
        return Ok(fac
            .factors
            .into_iter()
            .map(|(g, _)| lift_poly(&g, &proto))
            .collect());
    }
    let t = main_var(part).expect("non-rational coefficients involve a variable");

    // Clear denominators: with l = lcm of coefficient denominators, the
    // substitution g_hat(X) = l^n g(X/l) is monic with polynomial
    // coefficients g_i * l^(n-i).
    let n = part.degree();
    let mut l = MultiPoly::one(proto.vars());
    for c in part.coeffs() {
        let g = gcd_multipoly(&l, c.den());
        l = l.mul(c.den()).exact_div(&g).expect("gcd divides");
    }
    let l_rf = RatFunc::from_poly(l);
    let mut hat_coeffs = Vec::with_capacity(n + 1);
    for (i, c) in part.coeffs().iter().enumerate() {
        let scaled = c.mul(&l_rf.powi((n - i) as i64).expect("nonzero lcm"));
        debug_assert!(scaled.is_polynomial());
        hat_coeffs.push(scaled);
    }
    let g_hat = UniPoly::from_coeffs(hat_coeffs);

    // Tight degree bound in t for any monic factor's coefficients.
    let bound = g_hat
        .coeffs()
        .iter()
        .map(|c| c.degree_in(t))
        .max()
        .unwrap_or(0) as usize;
    let precision = bound + 1;

    // Scan evaluation points in a fixed order; among the first few with a
    // squarefree image, lift at the one whose image has the fewest
    // irreducible factors — the recombination search is exponential in
    // that count, so a good point is worth a handful of base
    // factorizations.
    const POINT_CANDIDATES: usize = 4;
    let mut best: Option<(Rational, Vec<UniPoly<RatFunc>>)> = None;
    let mut tau_int: i64 = 0;
    let mut seen = 0usize;
    for _ in 0..500 {
        let tau = Rational::from_int(tau_int);
        tau_int = if tau_int > 0 { -tau_int } else { -tau_int + 1 };

        let tau_rf = RatFunc::from_rational(proto.vars(), tau.clone());
        let evaluated = g_hat.map_coeffs(|c| {
            c.substitute_var(t, &tau_rf)
                .expect("polynomial coefficients evaluate everywhere")
        });
        if !evaluated.is_squarefree() {
            continue;
        }
        let base_factors = factor_squarefree(&evaluated)?;
        if base_factors.len() == 1 {
            return Ok(vec![part.clone()]);
        }
        seen += 1;
        if best
            .as_ref()
            .map_or(true, |(_, bf)| base_factors.len() < bf.len())
        {
            best = Some((tau, base_factors));
        }
        let fewest_possible = best.as_ref().map_or(usize::MAX, |(_, bf)| bf.len()) == 2;
        if seen >= POINT_CANDIDATES || fewest_possible {
            break;
        }
    }
    let Some((tau, base_factors)) = best else {
        return Err(FactorError::SearchExhausted {
            what: format!(
                "no squarefree evaluation point for {} below 500 candidates",
                proto.vars().name(t)
            ),
        });
    };
    let lifted = hensel_lift_adic(&g_hat, &base_factors, t, &tau, precision)?;
    let hat_factors = recombine(&g_hat, lifted, t, &tau, precision);
    Ok(hat_factors
        .iter()
        .map(|h| unmonicize(h, &l_rf))
        .collect())
}

/// Maps a monic factor h of g_hat back to a monic factor of the original:
/// h(lX) monicized.
fn unmonicize(h: &UniPoly<RatFunc>, l: &RatFunc) -> UniPoly<RatFunc> {
    if l.is_one() {
        return h.clone();
    }
    h.scale_arg(l).monic().expect("nonzero factor").1
}

/// Extracts a polynomial coefficient as a dense polynomial in variable t
/// with coefficients free of t.
fn tpoly_of(c: &RatFunc, t: usize) -> UniPoly<RatFunc> {
    debug_assert!(c.is_polynomial());
    let vars = c.vars();
    let deg = c.degree_in(t) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, coef) in c.num().terms() {
        let e = m.0[t] as usize;
        let mut stripped = m.clone();
        stripped.0[t] = 0;
        buckets[e].push((stripped, coef.clone()));
    }
    UniPoly::from_coeffs(
        buckets
            .into_iter()
            .map(|terms| RatFunc::from_poly(MultiPoly::from_terms(vars, terms)))
            .collect(),
    )
}

/// Series in eps = t - tau, truncated below `precision`.
type Series = UniPoly<RatFunc>;

/// Coefficient access that tolerates the zero polynomial.
fn series_coeff(s: &Series, k: usize, proto: &RatFunc) -> RatFunc {
    s.coeffs().get(k).cloned().unwrap_or_else(|| {
        RatFunc::zero(proto.vars())
    })
}

fn series_truncate(s: &Series, precision: usize) -> Series {
    if s.is_zero() || s.degree() < precision {
        return s.clone();
    }
    UniPoly::from_coeffs(s.coeffs()[..precision].to_vec())
}

fn sp_mul(a: &[Series], b: &[Series], precision: usize) -> Vec<Series> {
    let mut out = vec![Series::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&series_truncate(&x.mul(y), precision));
        }
    }
    out
}

/// Lifts the pairwise-coprime factorization of g_hat(tau) to series factors
/// mod eps^precision with g_hat = prod(lifted) at that precision.
fn hensel_lift_adic(
    g_hat: &UniPoly<RatFunc>,
    base_factors: &[UniPoly<RatFunc>],
    t: usize,
    tau: &Rational,
    precision: usize,
) -> Result<Vec<Vec<Series>>, FactorError> {
    use crate::unipoly::CoeffField;
    let proto = g_hat.lc().clone();
    let tau_c = proto.from_rational(tau);

    // g_hat's X-coefficients as eps-series: expand each around tau.
    let target: Vec<Series> = g_hat
        .coeffs()
        .iter()
        .map(|c| tpoly_of(c, t).shift_arg(&tau_c))
        .collect();

    // Partial-fraction Bezout: ell_i * prod_{j != i} base_j = 1 mod base_i.
    let mut bezout = Vec::with_capacity(base_factors.len());
    for (i, gi) in base_factors.iter().enumerate() {
        let mut u = UniPoly::constant(proto.one_like());
        for (j, gj) in base_factors.iter().enumerate() {
            if i != j {
                u = u.mul(gj);
            }
        }
        let (d, s, _) = u.extended_gcd(gi);
        debug_assert!(d.is_one(), "modular factors must be pairwise coprime");
        bezout.push(s.rem(gi)?);
    }

    // Factors as X-coefficient lists of eps-series, seeded at order 0.
    let mut lifted: Vec<Vec<Series>> = base_factors
        .iter()
        .map(|g| g.coeffs().iter().map(|c| Series::constant(c.clone())).collect())
        .collect();

    for order in 1..precision {
        let mut prod = lifted[0].clone();
        for g in &lifted[1..] {
            prod = sp_mul(&prod, g, precision);
        }
        // Defect at this order, as an X-polynomial over the base field.
        let mut defect_coeffs = Vec::with_capacity(target.len());
        for (j, tc) in target.iter().enumerate() {
            let have = prod.get(j).cloned().unwrap_or_else(Series::zero);
            defect_coeffs.push(
                series_coeff(tc, order, &proto).sub(&series_coeff(&have, order, &proto)),
            );
        }
        let defect = UniPoly::from_coeffs(defect_coeffs);
        if defect.is_zero() {
            continue;
        }
        for (i, gi) in base_factors.iter().enumerate() {
            let delta = bezout[i].mul(&defect).rem(gi)?;
            for (j, dc) in delta.coeffs().iter().enumerate() {
                if !dc.is_zero() {
                    lifted[i][j] = lifted[i][j].add(&Series::monomial(dc.clone(), order));
                }
            }
        }
    }
    Ok(lifted)
}

/// Converts a series X-polynomial back to a polynomial in t and X.
fn series_to_tpoly(coeffs: &[Series], t: usize, tau: &Rational, proto: &RatFunc) -> UniPoly<RatFunc> {
    let eps = RatFunc::var(proto.vars(), t).sub(&RatFunc::from_rational(proto.vars(), tau.clone()));
    UniPoly::from_coeffs(coeffs.iter().map(|s| s.eval(&eps)).collect())
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Specializes a lifted series factor at eps = eps0, i.e. at t = tau + eps0.
/// The result has no t in its coefficients, so trial divisions against it
/// run one variable lower than the originals.
fn shadow_of(factor: &[Series], eps0: &RatFunc) -> UniPoly<RatFunc> {
    UniPoly::from_coeffs(factor.iter().map(|s| s.eval(eps0)).collect())
}

/// True factors of g_hat are subset products of the series factors, read off
/// exactly at the working precision. Each subset is screened by trial
/// division at a second rational point before the exact division over the
/// function field, which prunes almost all wrong subsets cheaply.
fn recombine(
    g_hat: &UniPoly<RatFunc>,
    lifted: Vec<Vec<Series>>,
    t: usize,
    tau: &Rational,
    precision: usize,
) -> Vec<UniPoly<RatFunc>> {
    let proto = g_hat.lc().clone();

    // Shadow of the problem at t = tau + 1: divisibility over the function
    // field implies divisibility of the shadows, so a failed shadow division
    // rules a subset out without touching t at all.
    let eps0 = RatFunc::from_rational(proto.vars(), Rational::from_int(1));
    let theta = RatFunc::from_rational(proto.vars(), tau.add(&Rational::from_int(1)));
    let mut current_shadow = g_hat.map_coeffs(|c| {
        c.substitute_var(t, &theta)
            .expect("polynomial coefficients evaluate everywhere")
    });
    let mut shadows: Vec<UniPoly<RatFunc>> =
        lifted.iter().map(|f| shadow_of(f, &eps0)).collect();

    let mut remaining = lifted;
    let mut current = g_hat.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        let mut found = false;
        loop {
            let mut cand_shadow = shadows[idx[0]].clone();
            for &i in &idx[1..] {
                cand_shadow = cand_shadow.mul(&shadows[i]);
            }
            let Some(q_shadow) = current_shadow.exact_div(&cand_shadow) else {
                if next_combination(&mut idx, n) {
                    continue;
                }
                break;
            };
            let mut prod = remaining[idx[0]].clone();
            for &i in &idx[1..] {
                prod = sp_mul(&prod, &remaining[i], precision);
            }
            let cand = series_to_tpoly(&prod, t, tau, &proto);
            if let Some(q) = current.exact_div(&cand) {
                out.push(cand);
                current = q;
                current_shadow = q_shadow;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                    shadows.remove(i);
                }
                found = true;
                break;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if !current.is_constant() {
        out.push(current);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::VarTable;

    fn table(names: &[&str]) -> VarTable {
        VarTable::new(names.iter().map(|s| s.to_string()).collect())
    }

    /// Builds a polynomial in X from string-free test data: each coefficient
    /// is a polynomial in the table's variables given as (coeff, exponents).
    fn rf(vars: &VarTable, terms: &[(i64, &[u32])]) -> RatFunc {
        let poly = MultiPoly::from_terms(
            vars,
            terms
                .iter()
                .map(|(c, exps)| (Monomial(exps.to_vec()), Rational::from_int(*c))),
        );
        RatFunc::from_poly(poly)
    }

    fn xpoly(coeffs: Vec<RatFunc>) -> UniPoly<RatFunc> {
        UniPoly::from_coeffs(coeffs)
    }

    #[test]
    fn cubic_with_function_root_splits_off_linear() {
        // X^3 + X - (t^3 + t) = (X - t)(X^2 + tX + t^2 + 1) over Q(t).
        let v = table(&["t"]);
        let f = xpoly(vec![
            rf(&v, &[(-1, &[3]), (-1, &[1])]),
            rf(&v, &[(1, &[0])]),
            rf(&v, &[]),
            rf(&v, &[(1, &[0])]),
        ]);
        let fac = factor_funcfield(&f, 24).unwrap();
        assert!(fac.verify(&f));
        let linear = xpoly(vec![rf(&v, &[(-1, &[1])]), rf(&v, &[(1, &[0])])]);
        let quadratic = xpoly(vec![
            rf(&v, &[(1, &[2]), (1, &[0])]),
            rf(&v, &[(1, &[1])]),
            rf(&v, &[(1, &[0])]),
        ]);
        assert_eq!(fac.factors, vec![(linear, 1), (quadratic, 1)]);
    }

    #[test]
    fn difference_of_squares_in_t() {
        // X^2 - t^2 = (X - t)(X + t)
        let v = table(&["t"]);
        let f = xpoly(vec![rf(&v, &[(-1, &[2])]), rf(&v, &[]), rf(&v, &[(1, &[0])])]);
        let fac = factor_funcfield(&f, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, _)| g.degree() == 1));
        assert!(fac.verify(&f));
    }

    #[test]
    fn non_square_stays_irreducible() {
        // X^2 - t has no root in Q(t).
        let v = table(&["t"]);
        let f = xpoly(vec![rf(&v, &[(-1, &[1])]), rf(&v, &[]), rf(&v, &[(1, &[0])])]);
        assert!(factor_funcfield(&f, 24).unwrap().is_irreducible());
    }

    #[test]
    fn constant_coefficients_use_rational_path() {
        let v = table(&["t"]);
        // X^2 - 2 irreducible; X^2 - 1/4 splits.
        let f = xpoly(vec![rf(&v, &[(-2, &[0])]), rf(&v, &[]), rf(&v, &[(1, &[0])])]);
        assert!(factor_funcfield(&f, 24).unwrap().is_irreducible());
        let quarter = RatFunc::from_rational(&v, Rational::from_ratio(-1, 4).unwrap());
        let g = xpoly(vec![quarter, RatFunc::zero(&v), RatFunc::one(&v)]);
        let fac = factor_funcfield(&g, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn bivariate_split() {
        // X^2 - s^2 t^2 = (X - st)(X + st) over Q(s,t).
        let v = table(&["s", "t"]);
        let f = xpoly(vec![
            rf(&v, &[(-1, &[2, 2])]),
            rf(&v, &[]),
            rf(&v, &[(1, &[0, 0])]),
        ]);
        let fac = factor_funcfield(&f, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.verify(&f));
        // X^2 - s*t stays irreducible.
        let g = xpoly(vec![
            rf(&v, &[(-1, &[1, 1])]),
            rf(&v, &[]),
            rf(&v, &[(1, &[0, 0])]),
        ]);
        assert!(factor_funcfield(&g, 24).unwrap().is_irreducible());
    }

    #[test]
    fn four_linear_factors_with_bad_origin() {
        // (X^2 - t)(X^2 - t - 1): at t = 0 the image X^2(X^2-1) is not
        // squarefree, so the evaluation scan must move past the origin.
        let v = table(&["t"]);
        let a = xpoly(vec![rf(&v, &[(-1, &[1])]), rf(&v, &[]), rf(&v, &[(1, &[0])])]);
        let b = xpoly(vec![
            rf(&v, &[(-1, &[1]), (-1, &[0])]),
            rf(&v, &[]),
            rf(&v, &[(1, &[0])]),
        ]);
        let f = a.mul(&b);
        let fac = factor_funcfield(&f, 24).unwrap();
        assert_eq!(fac.factors, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn denominators_in_coefficients() {
        // (X - t/(t+1))(X - 1/t): monicization clears and restores.
        let v = table(&["t"]);
        let t = RatFunc::var(&v, 0);
        let one = RatFunc::one(&v);
        let r1 = t.div(&t.add(&one)).unwrap();
        let r2 = t.inv().unwrap();
        let f = xpoly(vec![r1.neg(), one.clone()]).mul(&xpoly(vec![r2.neg(), one]));
        let fac = factor_funcfield(&f, 24).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.verify(&f));
        let roots: Vec<RatFunc> = fac.linear_roots();
        assert!(roots.contains(&r1) && roots.contains(&r2));
    }

    #[test]
    fn multiplicity_through_yun() {
        // (X - t)^2 (X + t)
        let v = table(&["t"]);
        let lin_m = xpoly(vec![rf(&v, &[(-1, &[1])]), rf(&v, &[(1, &[0])])]);
        let lin_p = xpoly(vec![rf(&v, &[(1, &[1])]), rf(&v, &[(1, &[0])])]);
        let f = lin_m.pow(2).mul(&lin_p);
        let fac = factor_funcfield(&f, 24).unwrap();
        assert_eq!(fac.factors, vec![(lin_m, 2), (lin_p, 1)]);
    }

    #[test]
    fn idempotent_on_produced_irreducible() {
        let v = table(&["t"]);
        // X^2 + tX + t^2 + 1 from the cubic example.
        let q = xpoly(vec![
            rf(&v, &[(1, &[2]), (1, &[0])]),
            rf(&v, &[(1, &[1])]),
            rf(&v, &[(1, &[0])]),
        ]);
        let fac = factor_funcfield(&q, 24).unwrap();
        assert!(fac.is_irreducible());
        assert_eq!(fac.factors[0].0, q);
    }

    #[test]
    fn unit_preserved() {
        // 3X^2 - 3t^2
        let v = table(&["t"]);
        let f = xpoly(vec![rf(&v, &[(-3, &[2])]), rf(&v, &[]), rf(&v, &[(3, &[0])])]);
        let fac = factor_funcfield(&f, 24).unwrap();
        assert_eq!(fac.unit, rf(&v, &[(3, &[0])]));
        assert!(fac.verify(&f));
    }
}
