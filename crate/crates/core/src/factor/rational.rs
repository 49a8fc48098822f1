//! Factorization over Q: squarefree split, factorization mod a good small
//! prime, Hensel lifting to a Landau-Mignotte height, then bounded subset
//! recombination. A Kronecker interpolation fallback covers the (in practice
//! unreachable) case where no good prime exists below the list bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::FactorError;
use crate::factor::fp::{berlekamp, FpPoly};
use crate::factor::Factorization;
use crate::rational::{sqrt_ceil, Rational};
use crate::unipoly::UniPoly;

/// Default degree cap for user-facing factorization requests.
pub const DEFAULT_DEGREE_CAP: usize = 24;

/// Cap for engine-internal calls (norms, splitting towers) that legitimately
/// blow past user-input degrees.
pub const INTERNAL_DEGREE_CAP: usize = 4096;

/// Factors a rational-coefficient polynomial into monic irreducibles times a
/// unit. Deterministic: factors sorted by degree, then coefficient order.
pub fn factor_rationals(
    f: &UniPoly<Rational>,
    cap: usize,
) -> Result<Factorization<Rational>, FactorError> {
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
    let mut factors: Vec<(UniPoly<Rational>, u32)> = Vec::new();
    for (part, mult) in f.squarefree_decompose()? {
        for irr in factor_squarefree_monic(&part)? {
            factors.push((irr, mult));
        }
    }
    let mut out = Factorization { unit, factors };
    out.sort();
    debug_assert!(out.verify(f), "factorization failed reconstruction");
    Ok(out)
}

/// First 167 odd primes boundary: all odd primes below 1000.
fn small_primes() -> Vec<u64> {
    let mut sieve = vec![true; 1000];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..1000usize {
        if sieve[i] {
            let mut j = i * i;
            while j < 1000 {
                sieve[j] = false;
                j += i;
            }
        }
    }
    (3..1000).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Monic squarefree path; returns monic irreducible rational factors.
fn factor_squarefree_monic(
    part: &UniPoly<Rational>,
) -> Result<Vec<UniPoly<Rational>>, FactorError> {
    debug_assert!(part.is_monic() && part.is_squarefree());
    if part.degree() == 1 {
        return Ok(vec![part.clone()]);
    }
    // Integer primitive form (lc positive since part is monic).
    let g_int = to_int_primitive(part);
    // Monic integer form via X -> X/l.
    let (g_hat, l) = monicize(&g_int);
    let n = g_hat.len() - 1;

    // A prime where g_hat stays squarefree.
    let mut chosen: Option<(u64, Vec<FpPoly>)> = None;
    for p in small_primes() {
        let fp = int_poly_mod_p(&g_hat, p);
        if fp.coeffs.len() != g_hat.len() {
            continue; // degree dropped (cannot happen for monic, belt and braces)
        }
        if !fp.is_squarefree() {
            continue;
        }
        let mods = berlekamp(&fp.monic());
        chosen = Some((p, mods));
        break;
    }
    let Some((p, modular)) = chosen else {
        // No good prime below the bound; interpolation fallback for small
        // degrees, otherwise give up explicitly.
        if part.degree() < 8 {
            return kronecker_squarefree(part);
        }
        return Err(FactorError::SearchExhausted {
            what: format!(
                "no squarefree reduction prime below 1000 for degree {}",
                part.degree()
            ),
        });
    };
    if modular.len() == 1 {
        return Ok(vec![part.clone()]);
    }

    // Landau-Mignotte: any monic integer factor of g_hat has coefficients
    // bounded by 2^n * l2norm(g_hat).
    let norm_sq: BigInt = g_hat.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * sqrt_ceil(&norm_sq) + 1;
    let target: BigInt = &bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    while modulus < target {
        modulus *= p;
    }

    let lifted = hensel_lift(&g_hat, &modular, p, &modulus);
    let hat_factors = recombine(&g_hat, lifted, &modulus);

    // Map factors of g_hat back through X -> l*X.
    let out: Vec<UniPoly<Rational>> = hat_factors
        .iter()
        .map(|h| unmonicize_factor(h, &l))
        .collect();
    debug_assert_eq!(
        out.iter().map(|h| h.degree()).sum::<usize>(),
        part.degree()
    );
    Ok(out)
}

/// Scales a monic rational polynomial to a primitive integer coefficient
/// vector (low to high, lc positive).
fn to_int_primitive(p: &UniPoly<Rational>) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let scaled: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &scaled {
        content = content.gcd(c);
    }
    scaled.iter().map(|c| c / &content).collect()
}

/// g -> (l^(n-1) g(X/l), l): a monic integer polynomial plus the scale.
fn monicize(g: &[BigInt]) -> (Vec<BigInt>, BigInt) {
    let n = g.len() - 1;
    let l = g[n].clone();
    if l.is_one() {
        return (g.to_vec(), l);
    }
    let mut out = Vec::with_capacity(g.len());
    for (i, c) in g.iter().enumerate() {
        // coefficient of X^i in l^(n-1) g(X/l) is g_i * l^(n-1-i)
        if i == n {
            out.push(BigInt::one());
        } else {
            out.push(c * l.pow((n - 1 - i) as u32));
        }
    }
    (out, l)
}

/// Maps a monic factor h of g_hat back to a monic factor of g: h(lX)/l^deg.
fn unmonicize_factor(h: &UniPoly<Rational>, l: &BigInt) -> UniPoly<Rational> {
    if l.is_one() {
        return h.clone();
    }
    let lr = Rational::from_bigint(l.clone());
    let scaled = h.scale_arg(&lr);
    let (_, monic) = scaled.monic().expect("nonzero factor");
    monic
}

fn int_poly_mod_p(g: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(
        p,
        g.iter()
            .map(|c| {
                let m = c.mod_floor(&pb);
                m.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect(),
    )
}

// ---- arithmetic on integer polynomial vectors mod m ----

fn zp_trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn zp_reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    zp_trim(&mut out);
    out
}

fn zp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero);
        out.push(x.mod_floor(m));
    }
    zp_trim(&mut out);
    out
}

fn zp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero);
        out.push(x.mod_floor(m));
    }
    zp_trim(&mut out);
    out
}

fn zp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in &mut out {
        *c = c.mod_floor(m);
    }
    zp_trim(&mut out);
    out
}

/// Division by a monic polynomial, coefficients mod m.
fn zp_divrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(d.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    if a.len() < d.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let nq = r.len() - dd;
    let mut q = vec![BigInt::zero(); nq];
    for i in (0..nq).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        q[i] = c.clone();
        for (j, dc) in d.iter().enumerate() {
            let t = (&r[i + j] - &c * dc).mod_floor(m);
            r[i + j] = t;
        }
    }
    let mut q = q;
    for c in &mut q {
        *c = c.mod_floor(m);
    }
    zp_trim(&mut q);
    r.truncate(dd);
    zp_trim(&mut r);
    (q, r)
}

// ---- Hensel lifting over a factor tree ----

enum FactorTree {
    Leaf(Vec<BigInt>),
    Node {
        g: Vec<BigInt>,
        h: Vec<BigInt>,
        s: Vec<BigInt>,
        t: Vec<BigInt>,
        left: Box<FactorTree>,
        right: Box<FactorTree>,
    },
}

fn fp_to_vec(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

fn build_tree(factors: &[FpPoly]) -> FactorTree {
    if factors.len() == 1 {
        return FactorTree::Leaf(fp_to_vec(&factors[0]));
    }
    let mid = factors.len() / 2;
    let (lo, hi) = factors.split_at(mid);
    let p = factors[0].p;
    let g = lo.iter().fold(FpPoly::one(p), |acc, f| acc.mul(f));
    let h = hi.iter().fold(FpPoly::one(p), |acc, f| acc.mul(f));
    let (d, s, t) = g.extended_gcd(&h);
    assert!(
        !d.is_zero() && d.degree() == 0,
        "tree halves must be coprime mod p"
    );
    FactorTree::Node {
        g: fp_to_vec(&g),
        h: fp_to_vec(&h),
        s: fp_to_vec(&s),
        t: fp_to_vec(&t),
        left: Box::new(build_tree(lo)),
        right: Box::new(build_tree(hi)),
    }
}

/// One quadratic lifting step at a node: from f = g*h and s*g + t*h = 1
/// valid mod m to the same congruences mod m2 (m | m2 | m^2).
fn hensel_node_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = zp_sub(f, &zp_mul(g, h, m2), m2);
    let (q, r) = zp_divrem_monic(&zp_mul(s, &e, m2), h, m2);
    let g1 = zp_add(&zp_add(g, &zp_mul(t, &e, m2), m2), &zp_mul(&q, g, m2), m2);
    let h1 = zp_add(h, &r, m2);
    let one = vec![BigInt::one()];
    let b = zp_sub(
        &zp_add(&zp_mul(s, &g1, m2), &zp_mul(t, &h1, m2), m2),
        &one,
        m2,
    );
    let (c, d) = zp_divrem_monic(&zp_mul(s, &b, m2), &h1, m2);
    let s1 = zp_sub(s, &d, m2);
    let t1 = zp_sub(&zp_sub(t, &zp_mul(t, &b, m2), m2), &zp_mul(&c, &g1, m2), m2);
    (g1, h1, s1, t1)
}

fn lift_pass(tree: &mut FactorTree, f: &[BigInt], m2: &BigInt) {
    match tree {
        FactorTree::Leaf(v) => {
            *v = zp_reduce(f, m2);
        }
        FactorTree::Node {
            g,
            h,
            s,
            t,
            left,
            right,
        } => {
            let (g1, h1, s1, t1) = hensel_node_step(f, g, h, s, t, m2);
            *g = g1;
            *h = h1;
            *s = s1;
            *t = t1;
            lift_pass(left, g, m2);
            lift_pass(right, h, m2);
        }
    }
}

fn collect_leaves(tree: &FactorTree, out: &mut Vec<Vec<BigInt>>) {
    match tree {
        FactorTree::Leaf(v) => out.push(v.clone()),
        FactorTree::Node { left, right, .. } => {
            collect_leaves(left, out);
            collect_leaves(right, out);
        }
    }
}

/// Lifts the mod-p factorization of monic `f` to mod `modulus` (a power of p).
fn hensel_lift(
    f: &[BigInt],
    modular: &[FpPoly],
    p: u64,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    let mut tree = build_tree(modular);
    let mut m = BigInt::from(p);
    while m < *modulus {
        let m2 = (&m * &m).min(modulus.clone());
        lift_pass(&mut tree, &zp_reduce(f, &m2), &m2);
        m = m2;
    }
    let mut leaves = Vec::new();
    collect_leaves(&tree, &mut leaves);
    leaves
}

// ---- recombination ----

fn symmetric_lift(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

/// Exact division of integer polynomials by a monic divisor; None when the
/// remainder is nonzero.
fn int_divrem_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(d.last().map_or(false, |c| c.is_one()));
    if a.len() < d.len() {
        return None;
    }
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let nq = r.len() - dd;
    let mut q = vec![BigInt::zero(); nq];
    for i in (0..nq).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        q[i] = c.clone();
        for (j, dc) in d.iter().enumerate() {
            r[i + j] -= &c * dc;
        }
    }
    if r.iter().take(dd).all(|c| c.is_zero()) && r.iter().skip(dd).all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn int_to_monic_rational(v: &[BigInt]) -> UniPoly<Rational> {
    let p = UniPoly::from_coeffs(
        v.iter()
            .map(|c| Rational::from_bigint(c.clone()))
            .collect(),
    );
    p.monic().expect("nonzero").1
}

/// Advances `idx` to the next lexicographic combination below `n`; false
/// when exhausted.
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

/// Finds the true monic integer factors of `g_hat` among subset products of
/// the lifted modular factors.
fn recombine(
    g_hat: &[BigInt],
    lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
) -> Vec<UniPoly<Rational>> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = g_hat.to_vec();
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        let mut found = false;
        loop {
            // Candidate = product of chosen lifted factors, symmetric coefficients.
            let mut prod = vec![BigInt::one()];
            for &i in &idx {
                prod = zp_mul(&prod, &remaining[i], modulus);
            }
            let cand = symmetric_lift(&prod, modulus);
            if let Some(qt) = int_divrem_exact(&current, &cand) {
                out.push(int_to_monic_rational(&cand));
                current = qt;
                // Remove chosen indices (descending to keep positions valid).
                for &i in idx.iter().rev() {
                    remaining.remove(i);
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
    if current.len() > 1 {
        out.push(int_to_monic_rational(&current));
    }
    out
}

// ---- Kronecker interpolation fallback ----

/// All divisors of |n| with both signs, ascending by absolute value.
fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            divs.push(d.clone());
            let other = &n / &d;
            if other != d {
                divs.push(other);
            }
        }
        d += 1;
    }
    divs.sort();
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in g.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Interpolation-based factor search for small degrees; used only when no
/// good reduction prime exists below the list bound.
fn kronecker_squarefree(
    part: &UniPoly<Rational>,
) -> Result<Vec<UniPoly<Rational>>, FactorError> {
    const MAX_TUPLES: usize = 500_000;
    let g = to_int_primitive(part);
    let n = g.len() - 1;
    // Rational roots first: candidates r/s with r | g(0), s | lc.
    // Subsumed by the degree-1 case of the main search below, since linear
    // factors of the monic part correspond to rational roots.
    for d in 1..=n / 2 {
        // Evaluation points 0, 1, -1, 2, -2, ...
        let mut points = Vec::with_capacity(d + 1);
        let mut k = 0i64;
        while points.len() < d + 1 {
            let x = BigInt::from(k);
            let v = eval_int(&g, &x);
            if v.is_zero() {
                // x is a rational root: split off (X - x) directly.
                let lin = UniPoly::from_coeffs(vec![
                    Rational::from_int(-k),
                    Rational::one(),
                ]);
                let rest = part.exact_div(&lin).expect("root divides");
                let mut out = vec![lin];
                out.extend(kronecker_squarefree(&rest)?);
                out.sort_by(|a, b| a.cmp_order(b));
                return Ok(out);
            }
            points.push((x, v));
            k = if k > 0 { -k } else { -k + 1 };
        }
        let divisor_sets: Vec<Vec<BigInt>> =
            points.iter().map(|(_, v)| signed_divisors(v)).collect();
        let mut tuple_count: usize = 1;
        for s in &divisor_sets {
            tuple_count = tuple_count.saturating_mul(s.len());
        }
        if tuple_count > MAX_TUPLES {
            return Err(FactorError::SearchExhausted {
                what: format!("interpolation fallback tuple space {tuple_count} too large"),
            });
        }
        let mut choice = vec![0usize; d + 1];
        loop {
            // Lagrange interpolation through (x_i, e_i).
            let xs: Vec<Rational> = points
                .iter()
                .map(|(x, _)| Rational::from_bigint(x.clone()))
                .collect();
            let es: Vec<Rational> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| Rational::from_bigint(divisor_sets[i][c].clone()))
                .collect();
            if let Some(h) = lagrange_interpolate(&xs, &es) {
                if !h.is_zero() && !h.is_constant() && h.degree() == d {
                    let (_, hm) = h.monic().expect("nonzero");
                    if let Some(qt) = part.exact_div(&hm) {
                        let mut out = vec![hm];
                        out.extend(kronecker_squarefree(&qt)?);
                        out.sort_by(|a, b| a.cmp_order(b));
                        return Ok(out);
                    }
                }
            }
            // Next tuple.
            let mut pos = 0;
            loop {
                if pos > d {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < divisor_sets[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos > d {
                break;
            }
        }
    }
    Ok(vec![part.clone()])
}

fn lagrange_interpolate(xs: &[Rational], ys: &[Rational]) -> Option<UniPoly<Rational>> {
    let n = xs.len();
    let mut acc = UniPoly::zero();
    for i in 0..n {
        let mut basis = UniPoly::constant(Rational::one());
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_coeffs(vec![
                xs[j].neg(),
                Rational::one(),
            ]));
            denom = denom.mul(&xs[i].sub(&xs[j]));
        }
        let scale = ys[i].div(&denom).ok()?;
        acc = acc.add(&basis.mul_scalar(&scale));
    }
    Some(acc)
}
