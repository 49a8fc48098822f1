//! Rational functions over Q in the transcendental variables, kept in a
//! canonical form so structural equality is field equality.
//!
//! Canonical form: numerator and denominator coprime, denominator has
//! coprime integer coefficients with positive leading coefficient (graded
//! lex). Rational multiples of numerator and denominator therefore collapse
//! to one representative; zero is 0/1.

use std::cmp::Ordering;
use std::fmt;

use crate::error::ArithError;
use crate::multipoly::{gcd_multipoly, MultiPoly, VarTable};
use crate::rational::Rational;
use crate::unipoly::{CoeffField, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form; `den` must be nonzero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        assert!(num.vars() == den.vars(), "mismatched variable tables");
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: MultiPoly::one(den.vars()),
            });
        }
        let g = gcd_multipoly(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let (unit, den_prim) = den.primitive_normalize();
        let unit_inv = unit.inv().expect("unit of nonzero polynomial");
        Ok(RatFunc {
            num: num.mul_scalar(&unit_inv),
            den: den_prim,
        })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.vars());
        RatFunc { num: p, den: one }
    }

    pub fn from_rational(vars: &VarTable, r: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, r))
    }

    pub fn zero(vars: &VarTable) -> Self {
        Self::from_rational(vars, Rational::zero())
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::from_rational(vars, Rational::one())
    }

    pub fn var(vars: &VarTable, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, i))
    }

    pub fn vars(&self) -> &VarTable {
        self.num.vars()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n.div(&d).expect("denominator nonzero"))
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self::new(self.num.mul_scalar(r), self.den.clone()).expect("denominator unchanged")
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn powi(&self, e: i64) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.vars());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitutes a rational function for every variable at once.
    /// Errors when a denominator vanishes under the substitution.
    pub fn substitute_all(&self, vals: &[RatFunc]) -> Result<Self, ArithError> {
        assert_eq!(vals.len(), self.vars().len());
        let proto = if vals.is_empty() {
            // No variables: the value is already a constant.
            return Ok(self.clone());
        } else {
            vals[0].clone()
        };
        let n = self.num.eval(vals, &proto);
        let d = self.den.eval(vals, &proto);
        if d.is_zero() {
            return Err(ArithError::EvalDenominatorZero);
        }
        n.div(&d)
    }

    /// Substitutes one variable, keeping the others fixed.
    pub fn substitute_var(&self, var: usize, val: &RatFunc) -> Result<Self, ArithError> {
        let vals: Vec<RatFunc> = (0..self.vars().len())
            .map(|i| {
                if i == var {
                    val.clone()
                } else {
                    RatFunc::var(self.vars(), i)
                }
            })
            .collect();
        self.substitute_all(&vals)
    }

    /// Evaluates into any coefficient field; errors when the denominator
    /// evaluates to zero.
    pub fn eval_in<C: CoeffField>(&self, vals: &[C], proto: &C) -> Result<C, ArithError> {
        let n = self.num.eval(vals, proto);
        let d = self.den.eval(vals, proto);
        if d.is_zero() {
            return Err(ArithError::EvalDenominatorZero);
        }
        Ok(n.mul(&d.inv()?))
    }

    /// Largest total degree appearing in numerator or denominator.
    pub fn complexity(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.num.degree_in(var).max(self.den.degree_in(var))
    }

    pub fn involves(&self, var: usize) -> bool {
        self.num.involves(var) || self.den.involves(var)
    }

    /// Reindexes variables into another table.
    pub fn map_vars(&self, new_table: &VarTable, var_map: &[usize]) -> Self {
        RatFunc {
            num: self.num.map_vars(new_table, var_map),
            den: self.den.map_vars(new_table, var_map),
        }
    }
}

impl CoeffField for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero(self.vars())
    }

    fn one_like(&self) -> Self {
        Self::one(self.vars())
    }

    fn from_rational(&self, r: &Rational) -> Self {
        Self::from_rational(self.vars(), r.clone())
    }

    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }

    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        RatFunc::inv(self)
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.num
            .cmp_order(&other.num)
            .then_with(|| self.den.cmp_order(&other.den))
    }

    /// Euclidean remainder sequences over rational function fields blow up;
    /// route polynomial gcds through the multivariate subresultant gcd on
    /// denominator-cleared forms instead.
    fn poly_gcd_hook(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Option<UniPoly<Self>> {
        let vars = a.coeffs()[0].vars().clone();
        if vars.is_empty() {
            // Constant coefficients: plain Euclid is exact rational
            // arithmetic already.
            return None;
        }
        let n = vars.len();
        let mut main_name = "#g".to_string();
        while vars.index_of(&main_name).is_some() {
            main_name.push('#');
        }
        let mut names: Vec<String> = vars.names().to_vec();
        names.push(main_name);
        let ext = VarTable::new(names);
        let dmap: Vec<usize> = (0..n).collect();
        let pa = poly_to_cleared_multipoly(a, &ext, &dmap, n);
        let pb = poly_to_cleared_multipoly(b, &ext, &dmap, n);
        let g = gcd_multipoly(&pa, &pb);
        let rp = g.as_ringpoly(n);
        let mut back = vec![0usize; n + 1];
        for (i, entry) in back.iter_mut().enumerate().take(n) {
            *entry = i;
        }
        let coeffs: Vec<RatFunc> = rp
            .coeffs
            .iter()
            .map(|mp| RatFunc::from_poly(mp.map_vars(&vars, &back)))
            .collect();
        let poly = UniPoly::from_coeffs(coeffs);
        Some(poly.monic().expect("gcd of nonzero polynomials").1)
    }
}

/// Clears denominators of a polynomial over K(vars) into a single
/// multivariate polynomial on an extended table, with `main` as the
/// polynomial variable. The result differs from the input by a base-field
/// unit.
pub(crate) fn poly_to_cleared_multipoly(
    p: &UniPoly<RatFunc>,
    ext: &VarTable,
    dmap: &[usize],
    main: usize,
) -> MultiPoly {
    use crate::multipoly::Monomial;
    let mut den: Option<MultiPoly> = None;
    for c in p.coeffs() {
        den = Some(match den {
            None => c.den().clone(),
            Some(d) => {
                let g = gcd_multipoly(&d, c.den());
                d.exact_div(&g).expect("gcd divides").mul(c.den())
            }
        });
    }
    let den = den.expect("nonzero polynomial");
    let mut acc = MultiPoly::zero(ext);
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let scale = den.exact_div(c.den()).expect("lcm of denominators");
        let cleared = c.num().mul(&scale).map_vars(ext, dmap);
        let mut exps = vec![0u32; ext.len()];
        exps[main] = k as u32;
        acc = acc.add(&cleared.mul_monomial(&Monomial(exps), &Rational::one()));
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let ns = self.num.to_string();
        let ds = self.den.to_string();
        if self.num.num_terms() > 1 {
            write!(f, "({ns})")?;
        } else {
            write!(f, "{ns}")?;
        }
        write!(f, "/")?;
        if self.den.num_terms() > 1 || ds.contains('*') || ds.contains('^') {
            write!(f, "({ds})")
        } else {
            write!(f, "{ds}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab() -> VarTable {
        VarTable::new(vec!["s".into(), "t".into()])
    }

    fn s(v: &VarTable) -> RatFunc {
        RatFunc::var(v, 0)
    }

    fn t(v: &VarTable) -> RatFunc {
        RatFunc::var(v, 1)
    }

    #[test]
    fn canonical_form_collapses_scalar_multiples() {
        let v = tab();
        // (2s)/(4t) == s/(2t)
        let a = RatFunc::new(
            MultiPoly::var(&v, 0).mul_scalar(&Rational::from_int(2)),
            MultiPoly::var(&v, 1).mul_scalar(&Rational::from_int(4)),
        )
        .unwrap();
        let b = RatFunc::new(
            MultiPoly::var(&v, 0),
            MultiPoly::var(&v, 1).mul_scalar(&Rational::from_int(2)),
        )
        .unwrap();
        assert_eq!(a, b);
        // Denominator sign normalizes: s/(-t) == (-s)/t.
        let c = RatFunc::new(MultiPoly::var(&v, 0), MultiPoly::var(&v, 1).neg()).unwrap();
        let d = RatFunc::new(MultiPoly::var(&v, 0).neg(), MultiPoly::var(&v, 1)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn common_factors_cancel() {
        let v = tab();
        // (s^2 - t^2)/(s - t) = s + t.
        let sp = MultiPoly::var(&v, 0);
        let tp = MultiPoly::var(&v, 1);
        let num = sp.mul(&sp).sub(&tp.mul(&tp));
        let den = sp.sub(&tp);
        let r = RatFunc::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, s(&v).add(&t(&v)));
    }

    #[test]
    fn field_axioms_spot_checks() {
        let v = tab();
        let a = s(&v).add(&t(&v).inv().unwrap()); // s + 1/t
        let b = t(&v).sub(&s(&v)); // t - s
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert!(a.sub(&a).is_zero());
        assert!(a.div(&a).unwrap().is_one());
        assert_eq!(
            RatFunc::zero(&v).inv(),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn substitution_mobius() {
        let v = tab();
        // f = t^2 under t -> 1/t gives 1/t^2.
        let f = t(&v).mul(&t(&v));
        let g = f.substitute_var(1, &t(&v).inv().unwrap()).unwrap();
        assert_eq!(g, t(&v).mul(&t(&v)).inv().unwrap());
        // t -> t + 1 on t + 1/t.
        let h = t(&v).add(&t(&v).inv().unwrap());
        let tp1 = t(&v).add(&RatFunc::one(&v));
        let hh = h.substitute_var(1, &tp1).unwrap();
        assert_eq!(hh, tp1.add(&tp1.inv().unwrap()));
        // Denominator collapse is detected: 1/t under t -> 0.
        let bad = t(&v)
            .inv()
            .unwrap()
            .substitute_var(1, &RatFunc::zero(&v));
        assert_eq!(bad, Err(ArithError::EvalDenominatorZero));
    }

    #[test]
    fn display_forms() {
        let v = tab();
        assert_eq!(s(&v).to_string(), "s");
        assert_eq!(t(&v).inv().unwrap().to_string(), "1/t");
        let r = s(&v).add(&t(&v)).div(&t(&v)).unwrap();
        assert_eq!(r.to_string(), "(s + t)/t");
    }
}
