//! Sparse multivariate polynomials over Q with a graded lexicographic term
//! order, plus the subresultant machinery (GCD, resultant) used everywhere a
//! coefficient ring rather than a coefficient field is in play.
//!
//! Invariants: no zero coefficients are stored; every exponent vector has the
//! full table length; two polynomials interoperate only over equal tables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::ArithError;
use crate::rational::Rational;
use crate::unipoly::CoeffField;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Ordered set of transcendental variable names. Cheap to clone.
#[derive(Clone, Debug)]
pub struct VarTable(Arc<Vec<String>>);

impl VarTable {
    pub fn new(names: Vec<String>) -> Self {
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name `{n}` in table"
            );
        }
        VarTable(Arc::new(names))
    }

    pub fn empty() -> Self {
        VarTable(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarTable {}

/// Exponent vector; length always equals the owning table's length.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise division; `None` when not divisible.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lexicographic with the
    /// earliest variable strongest.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: VarTable,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarTable) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &VarTable, i: usize) -> Self {
        assert!(i < vars.len());
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Rational::one());
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(vars: &VarTable, it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().total_degree() == 0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// True if `var` occurs with positive exponent.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Leading (monomial, coefficient) under graded lex. None for zero.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn assert_same_table(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable tables"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_table(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_table(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_table(other);
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[var] = e - 1;
                out.add_term(Monomial(exps), c.mul(&Rational::from_int(e as i64)));
            }
        }
        out
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute_var(&self, var: usize, val: &Self) -> Self {
        self.assert_same_table(val);
        // Horner by descending exponent of `var`.
        let max_e = self.degree_in(var);
        // Bucket terms by exponent of var, with var stripped.
        let mut buckets: Vec<MultiPoly> = vec![Self::zero(&self.vars); max_e as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut exps = m.0.clone();
            exps[var] = 0;
            buckets[e as usize].add_term(Monomial(exps), c.clone());
        }
        let mut acc = Self::zero(&self.vars);
        for bucket in buckets.into_iter().rev() {
            acc = acc.mul(val).add(&bucket);
        }
        acc
    }

    pub fn substitute_var_rational(&self, var: usize, val: &Rational) -> Self {
        self.substitute_var(var, &Self::constant(&self.vars, val.clone()))
    }

    /// Reindexes into another table; `var_map[i]` is the new index of old
    /// variable `i`.
    pub fn map_vars(&self, new_table: &VarTable, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.vars.len());
        let mut out = Self::zero(new_table);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_table.len()];
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    exps[var_map[i]] += e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Evaluates in any coefficient field; `proto` supplies the context.
    pub fn eval<C: CoeffField>(&self, vals: &[C], proto: &C) -> C {
        assert_eq!(vals.len(), self.vars.len());
        let mut acc = proto.zero_like();
        for (m, c) in &self.terms {
            let mut term = proto.from_rational(c);
            for (i, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    term = term.mul(&vals[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval_rational(&self, vals: &[Rational]) -> Rational {
        // Rational implements CoeffField; context-free.
        self.eval(vals, &Rational::zero())
    }

    /// Splits `self = unit * primitive` where `primitive` has coprime integer
    /// coefficients and positive leading coefficient. Zero yields (1, 0).
    pub fn primitive_normalize(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut unit = Rational::new(num_gcd, den_lcm).expect("den_lcm nonzero");
        if self.leading().unwrap().1.is_negative() {
            unit = unit.neg();
        }
        let inv = unit.inv().expect("unit nonzero");
        (unit, self.mul_scalar(&inv))
    }

    /// Exact division; `None` when `d` does not divide `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.assert_same_table(d);
        assert!(!d.is_zero(), "exact division by zero polynomial");
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !r.is_zero() {
            let (rm, rc) = {
                let (m, c) = r.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = rc.div(&dc).expect("leading coeff nonzero");
            q.add_term(qm.clone(), qc.clone());
            r = r.sub(&d.mul_monomial(&qm, &qc));
        }
        Some(q)
    }

    /// Deterministic total order extending equality; used for sorting output.
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
            }
        }
    }

    /// Collects coefficients of powers of `var`: index i holds the
    /// coefficient of var^i, a polynomial with `var` eliminated.
    pub fn as_ringpoly(&self, var: usize) -> RingPoly {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Self::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            coeffs[e].add_term(Monomial(exps), c.clone());
        }
        let mut rp = RingPoly { coeffs };
        rp.trim();
        rp
    }

    pub fn from_ringpoly(rp: &RingPoly, vars: &VarTable, var: usize) -> Self {
        let x = Self::var(vars, var);
        let mut acc = Self::zero(vars);
        for c in rp.coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_mono = m.total_degree() == 0;
            if is_const_mono {
                write!(f, "{mag}")?;
            } else {
                let mut wrote = false;
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                    wrote = true;
                }
                for (i, e) in m.0.iter().enumerate() {
                    if *e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    write!(f, "{}", self.vars.name(i))?;
                    if *e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Univariate polynomial whose coefficients are multivariate polynomials in
/// the remaining variables; the vehicle for pseudo-division and the
/// subresultant PRS. Coefficients share one table; index = power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPoly {
    pub coeffs: Vec<MultiPoly>,
}

impl RingPoly {
    pub fn zero() -> Self {
        RingPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        let mut rp = RingPoly { coeffs };
        rp.trim();
        rp
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &MultiPoly {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn mul_coeff(&self, c: &MultiPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let table = self.coeffs[0].vars().clone();
        let mut coeffs = vec![MultiPoly::zero(&table); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RingPoly { coeffs }
    }

    /// Divides every coefficient exactly; panics if any division fails,
    /// which would indicate a broken PRS invariant.
    fn exact_div_coeffs(&self, d: &MultiPoly) -> Self {
        RingPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.exact_div(d).expect("PRS exact division failed"))
                .collect(),
        }
    }

    /// Content: GCD of all coefficients (primitive, positive leading).
    pub fn content(&self) -> MultiPoly {
        assert!(!self.is_zero());
        let mut g = MultiPoly::zero(self.coeffs[0].vars());
        for c in &self.coeffs {
            g = gcd_multipoly(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }
}

/// Pseudo-division: returns (q, r, scale) with `scale * f = q * g + r`,
/// `deg r < deg g`, where `scale = lc(g)^(deg f - deg g + 1)`.
pub fn pseudo_divrem(f: &RingPoly, g: &RingPoly) -> (RingPoly, RingPoly, MultiPoly) {
    assert!(!g.is_zero(), "pseudo-division by zero");
    let table = g.lc().vars().clone();
    if f.is_zero() || f.degree() < g.degree() {
        return (RingPoly::zero(), f.clone(), MultiPoly::one(&table));
    }
    let l = g.lc().clone();
    let mut e = (f.degree() - g.degree() + 1) as u32;
    let mut r = f.clone();
    let mut q = RingPoly::zero();
    while !r.is_zero() && r.degree() >= g.degree() {
        let d = r.degree() - g.degree();
        let c = r.lc().clone();
        // q := l*q + c*X^d ; r := l*r - c*X^d * g
        let mut t_coeffs = vec![MultiPoly::zero(&table); d + 1];
        t_coeffs[d] = c.clone();
        let t = RingPoly::from_coeffs(t_coeffs);
        q = q.mul_coeff(&l).add(&t);
        r = r.mul_coeff(&l).sub(&g.shifted(d).mul_coeff(&c));
        e -= 1;
    }
    let scale_adjust = l.pow(e);
    q = q.mul_coeff(&scale_adjust);
    r = r.mul_coeff(&scale_adjust);
    (q, r, l.pow((f.degree() - g.degree() + 1) as u32))
}

/// Multivariate GCD; result is primitive with positive leading coefficient.
/// gcd(0, 0) = 0; gcd(f, 0) is the normalized primitive part of f.
pub fn gcd_multipoly(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_normalize().1;
    }
    if b.is_zero() {
        return a.primitive_normalize().1;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    // Main variable: smallest index occurring in either operand.
    let nv = a.vars().len();
    let var = (0..nv)
        .find(|&v| a.involves(v) || b.involves(v))
        .expect("nonconstant polynomial involves some variable");
    let fa = a.as_ringpoly(var);
    let fb = b.as_ringpoly(var);
    let ca = fa.content();
    let cb = fb.content();
    let pa = fa.exact_div_coeffs(&ca);
    let pb = fb.exact_div_coeffs(&cb);
    let cg = gcd_multipoly(&ca, &cb);
    let pg = subresultant_gcd(&pa, &pb);
    let combined = MultiPoly::from_ringpoly(&pg, a.vars(), var).mul(&cg);
    combined.primitive_normalize().1
}

/// Subresultant PRS GCD of primitive ring polynomials; result primitive.
fn subresultant_gcd(pa: &RingPoly, pb: &RingPoly) -> RingPoly {
    let table = pa.lc().vars().clone();
    let one = MultiPoly::one(&table);
    let (mut a, mut b) = if pa.degree() >= pb.degree() {
        (pa.clone(), pb.clone())
    } else {
        (pb.clone(), pa.clone())
    };
    if a.degree() == 0 || b.degree() == 0 {
        return RingPoly::from_coeffs(vec![one]);
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.degree() - b.degree();
        let (_, r, _) = pseudo_divrem(&a, &b);
        if r.is_zero() {
            let content = b.content();
            let prim = b.exact_div_coeffs(&content);
            return normalize_ringpoly_sign(prim);
        }
        if r.degree() == 0 {
            return RingPoly::from_coeffs(vec![one]);
        }
        a = b;
        let divisor = g.mul(&h.pow(delta as u32));
        b = r.exact_div_coeffs(&divisor);
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant h update exact")
        };
    }
}

/// Makes the leading coefficient's leading rational positive.
fn normalize_ringpoly_sign(rp: RingPoly) -> RingPoly {
    if rp.is_zero() {
        return rp;
    }
    let negative = rp
        .lc()
        .leading()
        .map_or(false, |(_, c)| c.is_negative());
    if negative {
        RingPoly {
            coeffs: rp.coeffs.iter().map(|c| c.neg()).collect(),
        }
    } else {
        rp
    }
}

/// Resultant of `f` and `g` as univariate polynomials (RingPoly layout) with
/// multivariate coefficients, via the subresultant PRS. Matches the Sylvester
/// determinant. Exactly one zero argument yields zero; two zero arguments are
/// an error.
pub fn resultant_ring(f: &RingPoly, g: &RingPoly) -> Result<MultiPoly, ArithError> {
    if f.is_zero() && g.is_zero() {
        return Err(ArithError::BothZero);
    }
    let table = if f.is_zero() {
        g.lc().vars().clone()
    } else {
        f.lc().vars().clone()
    };
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero(&table));
    }
    // Constant cases straight from the determinant definition.
    if f.degree() == 0 && g.degree() == 0 {
        return Ok(MultiPoly::one(&table));
    }
    if f.degree() == 0 {
        return Ok(f.coeffs[0].pow(g.degree() as u32));
    }
    if g.degree() == 0 {
        return Ok(g.coeffs[0].pow(f.degree() as u32));
    }
    let mut sign_negative = false;
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.clone(), g.clone())
    } else {
        if f.degree() % 2 == 1 && g.degree() % 2 == 1 {
            sign_negative = !sign_negative;
        }
        (g.clone(), f.clone())
    };
    // Extract contents: res(c*A, B) = c^deg(B) * res(A, B).
    let ca = a.content();
    let cb = b.content();
    a = a.exact_div_coeffs(&ca);
    b = b.exact_div_coeffs(&cb);
    let t = ca.pow(b.degree() as u32).mul(&cb.pow(a.degree() as u32));
    let one = MultiPoly::one(&table);
    let mut gcoef = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let (_, r, scale) = pseudo_divrem(&a, &b);
        // prem uses lc(b)^(delta+1); the classical recurrence expects exactly
        // that scale, which pseudo_divrem provides.
        let _ = scale;
        a = b;
        if r.is_zero() {
            return Ok(MultiPoly::zero(&table));
        }
        let divisor = gcoef.mul(&h.pow(delta as u32));
        b = r.exact_div_coeffs(&divisor);
        gcoef = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            gcoef
                .pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant h update exact")
        };
        if b.degree() == 0 {
            // Final correction: h <- lc(b)^deg(a) / h^(deg(a) - 1).
            let da = a.degree() as u32;
            let res = b.coeffs[0]
                .pow(da)
                .exact_div(&h.pow(da.saturating_sub(1)))
                .expect("final subresultant division exact");
            let mut out = res.mul(&t);
            if sign_negative {
                out = out.neg();
            }
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> VarTable {
        VarTable::new(names.iter().map(|s| s.to_string()).collect())
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    // Parses nothing; builds s^a t^b terms directly for test brevity.
    fn st_poly(vars: &VarTable, terms: &[(i64, u32, u32)]) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            terms
                .iter()
                .map(|(c, a, b)| (Monomial(vec![*a, *b]), q(*c))),
        )
    }

    #[test]
    fn graded_lex_order() {
        // t^2 > s*t? grlex: same degree 2, lex on (s,t): (1,1) > (0,2).
        let st = Monomial(vec![1, 1]);
        let t2 = Monomial(vec![0, 2]);
        let s3 = Monomial(vec![3, 0]);
        assert!(st > t2);
        assert!(s3 > st); // degree 3 beats degree 2
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
    }

    #[test]
    fn arithmetic_and_normal_form() {
        let v = table(&["s", "t"]);
        let s = MultiPoly::var(&v, 0);
        let t = MultiPoly::var(&v, 1);
        let p = s.add(&t).mul(&s.sub(&t)); // s^2 - t^2
        assert_eq!(p, st_poly(&v, &[(1, 2, 0), (-1, 0, 2)]));
        // Cancellation drops terms entirely.
        let zero = p.sub(&p);
        assert!(zero.is_zero());
        assert_eq!(zero.num_terms(), 0);
    }

    #[test]
    fn exact_division() {
        let v = table(&["s", "t"]);
        let s = MultiPoly::var(&v, 0);
        let t = MultiPoly::var(&v, 1);
        let a = s.add(&t);
        let b = s.sub(&t);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        // Not exactly divisible.
        let c = s.mul(&s).add(&MultiPoly::one(&v));
        assert!(c.exact_div(&a).is_none());
    }

    #[test]
    fn primitive_normalization_sign_and_content() {
        let v = table(&["s", "t"]);
        // -2/3 s^2 + 4/3 t  -> unit -2/3, primitive s^2 - 2t
        let p = st_poly(&v, &[(0, 0, 0)])
            .add(&MultiPoly::from_terms(
                &v,
                vec![
                    (Monomial(vec![2, 0]), Rational::from_ratio(-2, 3).unwrap()),
                    (Monomial(vec![0, 1]), Rational::from_ratio(4, 3).unwrap()),
                ],
            ));
        let (unit, prim) = p.primitive_normalize();
        assert_eq!(unit, Rational::from_ratio(-2, 3).unwrap());
        assert_eq!(prim, st_poly(&v, &[(1, 2, 0), (-2, 0, 1)]));
        assert_eq!(prim.mul_scalar(&unit), p);
    }

    #[test]
    fn substitution() {
        let v = table(&["s", "t"]);
        let s = MultiPoly::var(&v, 0);
        let t = MultiPoly::var(&v, 1);
        // (s + t)^2 with s -> t yields 4t^2.
        let p = s.add(&t).pow(2);
        let q2 = p.substitute_var(0, &t);
        assert_eq!(q2, st_poly(&v, &[(4, 0, 2)]));
        // Rational substitution.
        let r = p.substitute_var_rational(1, &q(1));
        assert_eq!(r, st_poly(&v, &[(1, 2, 0), (2, 1, 0), (1, 0, 0)]));
    }

    #[test]
    fn gcd_of_products() {
        let v = table(&["s", "t"]);
        let s = MultiPoly::var(&v, 0);
        let t = MultiPoly::var(&v, 1);
        let a = s.add(&t); // s + t
        let b = s.sub(&t); // s - t
        let f = a.mul(&a).mul(&b); // (s+t)^2 (s-t)
        let g = a.mul(&b).mul(&b); // (s+t)(s-t)^2
        let d = gcd_multipoly(&f, &g);
        assert_eq!(d, a.mul(&b)); // s^2 - t^2, already primitive positive
    }

    #[test]
    fn gcd_with_content() {
        let v = table(&["s", "t"]);
        let s = MultiPoly::var(&v, 0);
        let t = MultiPoly::var(&v, 1);
        // f = 2t(s+t), g = 4t^2(s-t). Integer content is a unit over Q, so
        // the primitive-normalized gcd is t.
        let f = t.mul(&s.add(&t)).mul_scalar(&q(2));
        let g = t.mul(&t).mul(&s.sub(&t)).mul_scalar(&q(4));
        let d = gcd_multipoly(&f, &g);
        assert_eq!(d, t.clone());
    }

    #[test]
    fn gcd_coprime() {
        let v = table(&["s", "t"]);
        let s = MultiPoly::var(&v, 0);
        let t = MultiPoly::var(&v, 1);
        let d = gcd_multipoly(&s.add(&t), &s.mul(&t).add(&MultiPoly::one(&v)));
        assert!(d.is_one());
    }

    #[test]
    fn pseudo_division_identity() {
        let v = table(&["t"]);
        let t = MultiPoly::var(&v, 0);
        // f = t X^3 + X + 1, g = (t+1) X^2 + 1 over Q[t][X].
        let f = RingPoly::from_coeffs(vec![
            MultiPoly::one(&v),
            MultiPoly::one(&v),
            MultiPoly::zero(&v),
            t.clone(),
        ]);
        let g = RingPoly::from_coeffs(vec![
            MultiPoly::one(&v),
            MultiPoly::zero(&v),
            t.add(&MultiPoly::one(&v)),
        ]);
        let (q_, r, scale) = pseudo_divrem(&f, &g);
        // scale * f == q*g + r, deg r < deg g.
        let lhs = f.mul_coeff(&scale);
        let rhs = {
            // q*g + r via schoolbook on RingPoly.
            let mut acc = r.clone();
            for (i, qc) in q_.coeffs.iter().enumerate() {
                acc = acc.add(&g.shifted(i).mul_coeff(qc));
            }
            acc
        };
        assert_eq!(lhs, rhs);
        assert!(r.is_zero() || r.degree() < g.degree());
        assert_eq!(scale, g.lc().pow(2)); // deg f - deg g + 1 = 2
    }

    #[test]
    fn resultant_linear_pair() {
        // res(X - 2, X - 5) = 2 - 5 = -3 with roots convention res = g(root_f).
        let v = table(&[]);
        let f = RingPoly::from_coeffs(vec![
            MultiPoly::constant(&v, q(-2)),
            MultiPoly::one(&v),
        ]);
        let g = RingPoly::from_coeffs(vec![
            MultiPoly::constant(&v, q(-5)),
            MultiPoly::one(&v),
        ]);
        let r = resultant_ring(&f, &g).unwrap();
        assert_eq!(r.as_constant().unwrap(), q(-3));
    }

    #[test]
    fn resultant_sqrt2_sqrt3_tower_oracle() {
        // res_X(X^2 - 2, (Y - X)^2 - 3) enumerates Y = ±√2 ± √3:
        // product of (Y - (±√2±√3)) = (Y^2 - 5)^2 - 24 = Y^4 - 10Y^2 + 1.
        let v = table(&["Y"]);
        let y = MultiPoly::var(&v, 0);
        let f = RingPoly::from_coeffs(vec![
            MultiPoly::constant(&v, q(-2)),
            MultiPoly::zero(&v),
            MultiPoly::one(&v),
        ]);
        // (Y - X)^2 - 3 = X^2 - 2Y X + (Y^2 - 3) as a poly in X.
        let g = RingPoly::from_coeffs(vec![
            y.mul(&y).sub(&MultiPoly::constant(&v, q(3))),
            y.mul_scalar(&q(-2)),
            MultiPoly::one(&v),
        ]);
        let r = resultant_ring(&f, &g).unwrap();
        let expected = {
            let y2 = y.mul(&y);
            y2.mul(&y2)
                .sub(&y2.mul_scalar(&q(10)))
                .add(&MultiPoly::one(&v))
        };
        assert_eq!(r, expected);
    }

    #[test]
    fn resultant_zero_and_error_cases() {
        let v = table(&["t"]);
        let t = MultiPoly::var(&v, 0);
        let f = RingPoly::from_coeffs(vec![t.clone(), MultiPoly::one(&v)]);
        let zero = RingPoly::zero();
        assert_eq!(
            resultant_ring(&f, &zero).unwrap(),
            MultiPoly::zero(&v)
        );
        assert_eq!(
            resultant_ring(&zero, &zero),
            Err(ArithError::BothZero)
        );
        // Common factor forces zero: res((X+t)^2, (X+t)(X+1)).
        let a = {
            // (X+t)^2 = X^2 + 2tX + t^2
            RingPoly::from_coeffs(vec![
                t.mul(&t),
                t.mul_scalar(&q(2)),
                MultiPoly::one(&v),
            ])
        };
        let b = {
            // (X+t)(X+1) = X^2 + (t+1)X + t
            RingPoly::from_coeffs(vec![
                t.clone(),
                t.add(&MultiPoly::one(&v)),
                MultiPoly::one(&v),
            ])
        };
        assert!(resultant_ring(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn resultant_detects_shared_root_vs_not() {
        // res_X(X^2 - t, X^2 - t) = 0; res_X(X^2 - t, X^2 - t - 1) nonzero.
        let v = table(&["t"]);
        let t = MultiPoly::var(&v, 0);
        let f = RingPoly::from_coeffs(vec![t.neg(), MultiPoly::zero(&v), MultiPoly::one(&v)]);
        let g = RingPoly::from_coeffs(vec![
            t.neg().sub(&MultiPoly::one(&v)),
            MultiPoly::zero(&v),
            MultiPoly::one(&v),
        ]);
        assert!(resultant_ring(&f, &f).unwrap().is_zero());
        let r = resultant_ring(&f, &g).unwrap();
        assert_eq!(r.as_constant().unwrap(), q(1)); // ((t+1) - t)^2 = 1
    }

    #[test]
    fn eval_rational_matches_substitution() {
        let v = table(&["s", "t"]);
        let p = st_poly(&v, &[(3, 2, 1), (-1, 0, 1), (5, 0, 0)]);
        let val = p.eval_rational(&[q(2), q(-1)]);
        // 3*4*(-1) - (-1) + 5 = -12 + 1 + 5 = -6
        assert_eq!(val, q(-6));
    }

    #[test]
    fn display_is_readable() {
        let v = table(&["s", "t"]);
        let p = st_poly(&v, &[(1, 2, 0), (-2, 1, 1), (1, 0, 0)]);
        assert_eq!(p.to_string(), "s^2 - 2*s*t + 1");
    }
}
