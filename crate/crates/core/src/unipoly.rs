//! Dense univariate polynomials generic over an exact coefficient field.
//!
//! The same code path serves Q, rational function fields, and tower
//! elements; the `CoeffField` trait is the only thing a coefficient type has
//! to provide. Coefficients are stored low to high with no trailing zeros,
//! so the empty vector is the zero polynomial.

use std::cmp::Ordering;
use std::fmt;

use crate::error::ArithError;
use crate::rational::Rational;

/// An exact field usable as polynomial coefficients. `*_like` methods take
/// a prototype so context-carrying types (rational functions over a table,
/// tower elements) can manufacture constants.
pub trait CoeffField: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;
    /// Deterministic total order for canonical sorting; not a field order.
    fn cmp_key(&self, other: &Self) -> Ordering;

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Optional fast path for polynomial gcd over this field. Plain
    /// Euclidean remainder sequences suffer severe coefficient growth over
    /// rational function fields, so such fields override this. Must return
    /// the monic gcd when it engages.
    fn poly_gcd_hook(_a: &UniPoly<Self>, _b: &UniPoly<Self>) -> Option<UniPoly<Self>>
    where
        Self: Sized,
    {
        None
    }
}

impl CoeffField for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn from_rational(&self, r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        Rational::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Rational::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational::mul(self, other)
    }

    fn neg(&self) -> Self {
        Rational::neg(self)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        Rational::inv(self)
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Univariate polynomial over `C`, dense, low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<C: CoeffField> {
    coeffs: Vec<C>,
}

impl<C: CoeffField> UniPoly<C> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c * X^k
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// X as a polynomial; `proto` supplies the coefficient context.
    pub fn x(proto: &C) -> Self {
        Self::monomial(proto.one_like(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.proto().zero_like())
    }

    /// Some coefficient to use as context; zero polynomial has none, so
    /// callers needing context on possibly-zero polynomials pass their own.
    fn proto(&self) -> &C {
        self.coeffs.first().expect("zero polynomial has no context")
    }

    pub fn lc(&self) -> &C {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.coeffs.first()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && !self.coeffs[0].is_zero() && {
            let one = self.coeffs[0].one_like();
            self.coeffs[0] == one
        }
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && *self.lc() == self.lc().one_like()
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
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let proto = self.proto();
        let mut out = vec![proto.zero_like(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplication by X^k.
    pub fn shifted_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![self.proto().zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let one = self
                .coeffs
                .first()
                .map(|c| c.one_like())
                .expect("pow(0) of zero polynomial needs context");
            return Self::constant(one);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division with remainder over the coefficient field.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.is_zero() || self.degree() < d.degree() {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let nq = r.len() - dd;
        let mut q = vec![self.proto().zero_like(); nq];
        for i in (0..nq).rev() {
            let top = r[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&lc_inv);
            q[i] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(dc));
            }
        }
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, ArithError> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; None when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Returns (leading coefficient, monic polynomial).
    pub fn monic(&self) -> Result<(C, Self), ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lc = self.lc().clone();
        let inv = lc.inv()?;
        Ok((lc, self.mul_scalar(&inv)))
    }

    /// Monic GCD. gcd(f, 0) is monic(f); gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        if !self.is_zero() && !other.is_zero() && self.degree() >= 1 && other.degree() >= 1 {
            if let Some(g) = C::poly_gcd_hook(self, other) {
                return g;
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero").1
        }
    }

    /// Extended GCD: returns (g, s, t) with s*self + t*other = g, g monic
    /// (or zero when both inputs are zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        // Track context through possibly-zero intermediate values.
        let proto = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .cloned();
        let proto = match proto {
            Some(p) => p,
            None => return (Self::zero(), Self::zero(), Self::zero()),
        };
        let one = Self::constant(proto.one_like());
        let zero = Self::zero();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero.clone(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let (lc, g) = r0.monic().expect("nonzero");
        let inv = lc.inv().expect("lc nonzero");
        (g, s0.mul_scalar(&inv), t0.mul_scalar(&inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let proto = self.proto();
        let out: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&proto.from_rational(&Rational::from_int(i as i64))))
            .collect();
        Self::from_coeffs(out)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// f(g(X)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// f(X + c).
    pub fn shift_arg(&self, c: &C) -> Self {
        let x_plus_c = Self::from_coeffs(vec![c.clone(), c.one_like()]);
        self.compose(&x_plus_c)
    }

    /// f(c * X).
    pub fn scale_arg(&self, c: &C) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = c.one_like();
        for a in &self.coeffs {
            out.push(a.mul(&p));
            p = p.mul(c);
        }
        Self::from_coeffs(out)
    }

    pub fn map_coeffs<D: CoeffField>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map_coeffs<D: CoeffField, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<UniPoly<D>, E> {
        let coeffs: Result<Vec<D>, E> = self.coeffs.iter().map(f).collect();
        Ok(UniPoly::from_coeffs(coeffs?))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() || self.is_constant() {
            return !self.is_zero();
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun squarefree decomposition of a nonzero polynomial: returns pairs
    /// (part, multiplicity) with parts monic, squarefree, pairwise coprime
    /// and f = lc * prod part_i^{m_i}. Characteristic zero only.
    pub fn squarefree_decompose(&self) -> Result<Vec<(Self, u32)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (_, f) = self.monic()?;
        if f.is_constant() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while !b.is_constant() {
            let part = b.gcd(&d);
            if !part.is_constant() {
                out.push((part.clone(), i));
            }
            b = b.exact_div(&part).expect("part divides b");
            c = d.exact_div(&part).expect("part divides d");
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Resultant over the coefficient field, consistent with the Sylvester
    /// determinant. One zero argument yields zero; both zero is an error.
    pub fn resultant(&self, other: &Self) -> Result<C, ArithError> {
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::BothZero);
        }
        let proto = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .expect("some nonzero operand");
        if self.is_zero() || other.is_zero() {
            return Ok(proto.zero_like());
        }
        let mut acc = proto.one_like();
        let mut f = self.clone();
        let mut g = other.clone();
        loop {
            if g.is_constant() {
                let mut c = proto.one_like();
                for _ in 0..(if f.is_constant() { 0 } else { f.degree() }) {
                    c = c.mul(&g.coeffs[0]);
                }
                return Ok(acc.mul(&c));
            }
            if f.degree() < g.degree() {
                // res(f, g) = (-1)^(deg f * deg g) res(g, f)
                if f.degree() % 2 == 1 && g.degree() % 2 == 1 {
                    acc = acc.neg();
                }
                std::mem::swap(&mut f, &mut g);
                continue;
            }
            let r = f.rem(&g).expect("nonconstant divisor");
            if r.is_zero() {
                return Ok(proto.zero_like());
            }
            // res(f, g) = (-1)^(deg f * deg g) * lc(g)^(deg f - deg r) * res(g, r)
            if f.degree() % 2 == 1 && g.degree() % 2 == 1 {
                acc = acc.neg();
            }
            let e = f.degree() - r.degree();
            let lg = g.lc().clone();
            for _ in 0..e {
                acc = acc.mul(&lg);
            }
            f = g;
            g = r;
        }
    }

    /// Renders with the given variable name.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let body = if i == 0 {
                cs
            } else {
                let xs = if i == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{i}")
                };
                if *c == c.one_like() {
                    xs
                } else if cs.contains('+') || (cs.contains('-') && !cs.starts_with('-')) || cs.contains(' ') {
                    format!("({cs})*{xs}")
                } else {
                    format!("{cs}*{xs}")
                }
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }

    /// Deterministic order: by degree, then coefficients from the top.
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        let da = self.coeffs.len();
        let db = other.coeffs.len();
        da.cmp(&db).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.cmp_key(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

/// Lifts a rational-coefficient polynomial into another coefficient field.
pub fn lift_poly<C: CoeffField>(p: &UniPoly<Rational>, proto: &C) -> UniPoly<C> {
    p.map_coeffs(|c| proto.from_rational(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = qp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(qp(&[0, 0]).is_zero());
    }

    #[test]
    fn divrem_identity() {
        // X^3 + 2X + 1 = (X^2 - X + 3)(X + 1) - 2... check via reconstruction.
        let f = qp(&[1, 2, 0, 1]);
        let d = qp(&[1, 1]);
        let (q, r) = f.divrem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.is_zero() || r.degree() < d.degree());
        assert_eq!(f.divrem(&UniPoly::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn gcd_conventions() {
        let f = qp(&[-1, 0, 1]); // X^2 - 1
        let g = qp(&[1, 1]); // X + 1
        assert_eq!(f.gcd(&g), g);
        // gcd(f, 0) = monic(f)
        assert_eq!(qp(&[-2, 0, 2]).gcd(&UniPoly::zero()), f);
        // gcd(0, 0) = 0
        assert!(UniPoly::<Rational>::zero()
            .gcd(&UniPoly::zero())
            .is_zero());
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = qp(&[-1, 0, 1]); // (X-1)(X+1)
        let g = qp(&[-2, 1]); // X - 2
        let (d, s, t) = f.extended_gcd(&g);
        assert!(d.is_one());
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
    }

    #[test]
    fn squarefree_decomposition_yun() {
        // f = (X+1)^2 (X-3)^3: parts [(X+1, 2), (X-3, 3)].
        let f = qp(&[1, 1]).pow(2).mul(&qp(&[-3, 1]).pow(3));
        let parts = f.squarefree_decompose().unwrap();
        assert_eq!(parts, vec![(qp(&[1, 1]), 2), (qp(&[-3, 1]), 3)]);
        // Reconstruction.
        let mut prod: UniPoly<Rational> = UniPoly::constant(Rational::one());
        for (p, m) in &parts {
            prod = prod.mul(&p.pow(*m));
        }
        assert_eq!(prod, f);
        // Squarefree input comes back whole.
        let g = qp(&[-2, 0, 1]);
        assert_eq!(g.squarefree_decompose().unwrap(), vec![(g.clone(), 1)]);
        assert!(g.is_squarefree());
        assert!(!f.is_squarefree());
    }

    #[test]
    fn resultant_matches_sylvester_convention() {
        // res(X-2, X-5) = 2 - 5? Sylvester [[1,-2],[1,-5]] det = -5+2 = -3.
        assert_eq!(
            qp(&[-2, 1]).resultant(&qp(&[-5, 1])).unwrap(),
            Rational::from_int(-3)
        );
        // res(X^2-2, X^2-3) = (2-3)^2 = 1.
        assert_eq!(
            qp(&[-2, 0, 1]).resultant(&qp(&[-3, 0, 1])).unwrap(),
            Rational::from_int(1)
        );
        // Common root: res((X-1)(X+2), X-1) = 0.
        let f = qp(&[-1, 1]).mul(&qp(&[2, 1]));
        assert!(f.resultant(&qp(&[-1, 1])).unwrap().is_zero());
        // Degree asymmetry: res(X^2-2, X-1) = f(1)?? convention res(f,g) with
        // g linear root 1: lc(g)^deg f * f(...)... check numeric: det of
        // Sylvester [[1,0,-2],[1,-1,0],[0,1,-1]] = -1. f(1) = -1. Matches
        // res(f, X-a) = f(a) * lc... here (-1)^(2*1) res(g,f) symmetry.
        assert_eq!(
            qp(&[-2, 0, 1]).resultant(&qp(&[-1, 1])).unwrap(),
            Rational::from_int(-1)
        );
        // Errors and zero conventions.
        assert_eq!(
            UniPoly::<Rational>::zero().resultant(&UniPoly::zero()),
            Err(ArithError::BothZero)
        );
        assert!(qp(&[1, 1]).resultant(&UniPoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn compose_shift_scale() {
        let f = qp(&[0, 0, 1]); // X^2
        let shifted = f.shift_arg(&Rational::from_int(1)); // (X+1)^2
        assert_eq!(shifted, qp(&[1, 2, 1]));
        let scaled = f.scale_arg(&Rational::from_int(3)); // 9X^2
        assert_eq!(scaled, qp(&[0, 0, 9]));
        let comp = f.compose(&qp(&[1, 1, 1])); // (X^2+X+1)^2
        assert_eq!(comp, qp(&[1, 2, 3, 2, 1]));
    }

    #[test]
    fn eval_and_derivative() {
        let f = qp(&[1, -3, 0, 2]); // 2X^3 - 3X + 1
        assert_eq!(f.eval(&Rational::from_int(2)), Rational::from_int(11));
        assert_eq!(f.derivative(), qp(&[-3, 0, 6]));
    }

    #[test]
    fn render_readable() {
        let f = qp(&[1, -3, 0, 2]);
        assert_eq!(f.render("X"), "2*X^3 - 3*X + 1");
        assert_eq!(qp(&[0, 1]).render("t"), "t");
        assert_eq!(UniPoly::<Rational>::zero().render("X"), "0");
    }
}
