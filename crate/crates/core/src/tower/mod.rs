//! Tower presentations of finitely generated extensions of Q: a purely
//! transcendental layer Q(delta) plus an ordered list of algebraic
//! generators, each given by a monic minimal polynomial over the tower below
//! it. Elements are nested dense polynomials, reduced at every layer, padded
//! to fixed length, so structural equality is field equality.

pub mod basis;
pub mod subfield;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{ArithError, BuildError};
use crate::multipoly::VarTable;
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::unipoly::{CoeffField, UniPoly};

/// Element data at some layer: a rational function at the bottom, or a
/// coefficient vector over the layer below, always exactly minpoly-degree
/// long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nested {
    Base(RatFunc),
    Ext(Vec<Nested>),
}

/// One algebraic generator: its symbol and minimal polynomial, stored as
/// plain coefficient data over the prefix tower (index = power, includes the
/// leading 1).
#[derive(Debug, PartialEq, Eq)]
pub struct GenInfo {
    symbol: String,
    minpoly: Vec<Nested>,
}

impl GenInfo {
    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct TowerInner {
    delta: VarTable,
    gens: Vec<GenInfo>,
}

/// A validated tower field; cheap to clone, immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldTower(Arc<TowerInner>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FieldTower {}

/// An element of a tower field. Public elements always live at full depth;
/// intermediate depths appear internally as coefficients of layer
/// polynomials.
#[derive(Debug, Clone)]
pub struct TowerElement {
    tower: FieldTower,
    depth: usize,
    nested: Nested,
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth && self.nested == other.nested && self.tower == other.tower
    }
}

impl Eq for TowerElement {}

impl FieldTower {
    /// A purely transcendental field Q(delta).
    pub fn rational(delta: Vec<String>) -> Result<Self, BuildError> {
        for (i, a) in delta.iter().enumerate() {
            if delta[..i].contains(a) {
                return Err(BuildError::DuplicateSymbol { symbol: a.clone() });
            }
        }
        Ok(FieldTower(Arc::new(TowerInner {
            delta: VarTable::new(delta),
            gens: Vec::new(),
        })))
    }

    /// Adjoins a generator with full validation: the minimal polynomial must
    /// be monic of degree >= 1 over this tower and irreducible.
    pub fn extend(&self, symbol: &str, minpoly: &UniPoly<TowerElement>) -> Result<Self, BuildError> {
        let unchecked = self.extend_shape_checked(symbol, minpoly)?;
        if minpoly.degree() > 1 {
            let fac = crate::factor::tower::factor_over_tower(
                minpoly,
                self,
                crate::factor::rational::INTERNAL_DEGREE_CAP,
            )?;
            if !fac.is_irreducible() {
                return Err(BuildError::ReducibleMinPoly {
                    symbol: symbol.to_string(),
                    factor: fac.factors[0].0.render("X"),
                });
            }
        }
        Ok(unchecked)
    }

    /// Adjoins a generator whose minimal polynomial is already known
    /// irreducible (e.g. it came out of a factorization).
    pub(crate) fn extend_shape_checked(
        &self,
        symbol: &str,
        minpoly: &UniPoly<TowerElement>,
    ) -> Result<Self, BuildError> {
        if self.0.delta.index_of(symbol).is_some()
            || self.0.gens.iter().any(|g| g.symbol == symbol)
        {
            return Err(BuildError::DuplicateSymbol {
                symbol: symbol.to_string(),
            });
        }
        if minpoly.is_zero() || minpoly.is_constant() {
            return Err(BuildError::MalformedPolynomial {
                symbol: symbol.to_string(),
                reason: "minimal polynomial must have degree at least 1".to_string(),
            });
        }
        if !minpoly.is_monic() {
            return Err(BuildError::NonMonicMinPoly {
                symbol: symbol.to_string(),
            });
        }
        for c in minpoly.coeffs() {
            if c.tower != *self || c.depth != self.depth() {
                return Err(BuildError::MalformedPolynomial {
                    symbol: symbol.to_string(),
                    reason: "coefficients must be elements of the tower below the generator"
                        .to_string(),
                });
            }
        }
        let mut gens: Vec<GenInfo> = self
            .0
            .gens
            .iter()
            .map(|g| GenInfo {
                symbol: g.symbol.clone(),
                minpoly: g.minpoly.clone(),
            })
            .collect();
        gens.push(GenInfo {
            symbol: symbol.to_string(),
            minpoly: minpoly.coeffs().iter().map(|c| c.nested.clone()).collect(),
        });
        Ok(FieldTower(Arc::new(TowerInner {
            delta: self.0.delta.clone(),
            gens,
        })))
    }

    pub fn delta(&self) -> &VarTable {
        &self.0.delta
    }

    pub fn num_gens(&self) -> usize {
        self.0.gens.len()
    }

    pub fn depth(&self) -> usize {
        self.0.gens.len()
    }

    pub fn gen_info(&self, i: usize) -> &GenInfo {
        &self.0.gens[i]
    }

    pub fn gen_symbols(&self) -> Vec<&str> {
        self.0.gens.iter().map(|g| g.symbol.as_str()).collect()
    }

    /// [L : K(delta)] = product of generator degrees.
    pub fn degree(&self) -> usize {
        self.0.gens.iter().map(|g| g.degree()).product()
    }

    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.0.delta == other.0.delta
            && self.0.gens.len() <= other.0.gens.len()
            && self
                .0
                .gens
                .iter()
                .zip(other.0.gens.iter())
                .all(|(a, b)| a == b)
    }

    /// The tower truncated to its first `depth` generators.
    pub fn prefix(&self, depth: usize) -> FieldTower {
        assert!(depth <= self.depth());
        if depth == self.depth() {
            return self.clone();
        }
        FieldTower(Arc::new(TowerInner {
            delta: self.0.delta.clone(),
            gens: self.0.gens[..depth]
                .iter()
                .map(|g| GenInfo {
                    symbol: g.symbol.clone(),
                    minpoly: g.minpoly.clone(),
                })
                .collect(),
        }))
    }

    // ---- element constructors ----

    fn nzero(&self, depth: usize) -> Nested {
        if depth == 0 {
            Nested::Base(RatFunc::zero(&self.0.delta))
        } else {
            let d = self.0.gens[depth - 1].degree();
            Nested::Ext(vec![self.nzero(depth - 1); d])
        }
    }

    fn lift_nested(&self, x: Nested, from_depth: usize, to_depth: usize) -> Nested {
        let mut cur = x;
        for depth in from_depth..to_depth {
            let d = self.0.gens[depth].degree();
            let mut v = vec![self.nzero(depth); d];
            v[0] = cur;
            cur = Nested::Ext(v);
        }
        cur
    }

    fn elem(&self, depth: usize, nested: Nested) -> TowerElement {
        TowerElement {
            tower: self.clone(),
            depth,
            nested,
        }
    }

    pub fn zero(&self) -> TowerElement {
        self.elem(self.depth(), self.nzero(self.depth()))
    }

    pub fn one(&self) -> TowerElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> TowerElement {
        self.from_base(RatFunc::from_rational(&self.0.delta, r))
            .expect("table matches")
    }

    /// Embeds an element of K(delta).
    pub fn from_base(&self, rf: RatFunc) -> Result<TowerElement, ArithError> {
        if *rf.vars() != self.0.delta {
            return Err(ArithError::TowerMismatch);
        }
        Ok(self.elem(
            self.depth(),
            self.lift_nested(Nested::Base(rf), 0, self.depth()),
        ))
    }

    /// The i-th transcendental variable as an element.
    pub fn var(&self, i: usize) -> TowerElement {
        self.from_base(RatFunc::var(&self.0.delta, i)).expect("own table")
    }

    /// The i-th algebraic generator as an element.
    pub fn gen(&self, i: usize) -> TowerElement {
        let d = self.0.gens[i].degree();
        let nested = if d == 1 {
            // Degree-1 generator reduces to -constant term.
            let c = self.0.gens[i].minpoly[0].clone();
            self.nneg(i, &c)
        } else {
            let mut v = vec![self.nzero(i); d];
            v[1] = self.none_at(i);
            Nested::Ext(v)
        };
        let lifted = self.lift_nested(nested, i + 1, self.depth());
        self.elem(self.depth(), lifted)
    }

    fn none_at(&self, depth: usize) -> Nested {
        self.lift_nested(Nested::Base(RatFunc::one(&self.0.delta)), 0, depth)
    }

    // ---- nested arithmetic ----

    fn n_is_zero(n: &Nested) -> bool {
        match n {
            Nested::Base(rf) => rf.is_zero(),
            Nested::Ext(v) => v.iter().all(Self::n_is_zero),
        }
    }

    fn nadd(&self, depth: usize, a: &Nested, b: &Nested) -> Nested {
        match (a, b) {
            (Nested::Base(x), Nested::Base(y)) => Nested::Base(x.add(y)),
            (Nested::Ext(x), Nested::Ext(y)) => {
                debug_assert_eq!(x.len(), y.len());
                Nested::Ext(
                    x.iter()
                        .zip(y.iter())
                        .map(|(p, q)| self.nadd(depth - 1, p, q))
                        .collect(),
                )
            }
            _ => panic!("depth mismatch in tower arithmetic"),
        }
    }

    fn nneg(&self, depth: usize, a: &Nested) -> Nested {
        match a {
            Nested::Base(x) => Nested::Base(x.neg()),
            Nested::Ext(v) => Nested::Ext(v.iter().map(|p| self.nneg(depth - 1, p)).collect()),
        }
    }

    /// Layer polynomial view: entries of an Ext as coefficients at depth-1.
    fn to_layer_poly(&self, depth: usize, n: &Nested) -> UniPoly<TowerElement> {
        let Nested::Ext(v) = n else {
            panic!("to_layer_poly at base depth")
        };
        UniPoly::from_coeffs(v.iter().map(|e| self.elem(depth - 1, e.clone())).collect())
    }

    fn from_layer_poly(&self, depth: usize, p: &UniPoly<TowerElement>) -> Nested {
        let d = self.0.gens[depth - 1].degree();
        debug_assert!(p.is_zero() || p.degree() < d);
        let mut v = Vec::with_capacity(d);
        for i in 0..d {
            v.push(
                p.coeffs()
                    .get(i)
                    .map(|c| {
                        debug_assert_eq!(c.depth, depth - 1);
                        c.nested.clone()
                    })
                    .unwrap_or_else(|| self.nzero(depth - 1)),
            );
        }
        Nested::Ext(v)
    }

    /// The minimal polynomial of generator `i` with coefficients at depth i.
    pub(crate) fn minpoly_layer_poly(&self, i: usize) -> UniPoly<TowerElement> {
        UniPoly::from_coeffs(
            self.0.gens[i]
                .minpoly
                .iter()
                .map(|c| self.elem(i, c.clone()))
                .collect(),
        )
    }

    /// The minimal polynomial of generator `i` with coefficients lifted to
    /// full depth.
    pub fn minpoly_lifted(&self, i: usize) -> UniPoly<TowerElement> {
        UniPoly::from_coeffs(
            self.0.gens[i]
                .minpoly
                .iter()
                .map(|c| self.elem(self.depth(), self.lift_nested(c.clone(), i, self.depth())))
                .collect(),
        )
    }

    fn nmul(&self, depth: usize, a: &Nested, b: &Nested) -> Nested {
        match (a, b) {
            (Nested::Base(x), Nested::Base(y)) => Nested::Base(x.mul(y)),
            (Nested::Ext(_), Nested::Ext(_)) => {
                let pa = self.to_layer_poly(depth, a);
                let pb = self.to_layer_poly(depth, b);
                let prod = pa.mul(&pb);
                let m = self.minpoly_layer_poly(depth - 1);
                let r = prod.rem(&m).expect("monic modulus");
                self.from_layer_poly(depth, &r)
            }
            _ => panic!("depth mismatch in tower arithmetic"),
        }
    }

    fn ninv(&self, depth: usize, a: &Nested) -> Result<Nested, ArithError> {
        if Self::n_is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        match a {
            Nested::Base(x) => Ok(Nested::Base(x.inv()?)),
            Nested::Ext(_) => {
                let pa = self.to_layer_poly(depth, a);
                let m = self.minpoly_layer_poly(depth - 1);
                let (g, s, _) = pa.extended_gcd(&m);
                // Minimal polynomials are irreducible, so the gcd with any
                // nonzero residue is 1.
                assert!(g.is_one(), "non-invertible residue against an irreducible modulus");
                let inv = s.rem(&m).expect("monic modulus");
                Ok(self.from_layer_poly(depth, &inv))
            }
        }
    }

    // ---- coordinates ----

    /// Power-basis size: product of generator degrees.
    pub fn basis_size(&self) -> usize {
        self.degree()
    }

    fn ncoords(&self, depth: usize, n: &Nested, out: &mut Vec<RatFunc>) {
        match n {
            Nested::Base(rf) => out.push(rf.clone()),
            Nested::Ext(v) => {
                for e in v {
                    self.ncoords(depth - 1, e, out);
                }
            }
        }
    }

    /// Flattens to coordinates over the power basis; index stride: first
    /// generator fastest.
    pub fn coords(&self, x: &TowerElement) -> Vec<RatFunc> {
        assert!(x.tower == *self && x.depth == self.depth());
        let mut out = Vec::with_capacity(self.basis_size());
        self.ncoords(self.depth(), &x.nested, &mut out);
        out
    }

    fn nfrom_coords(&self, depth: usize, flat: &[RatFunc]) -> Nested {
        if depth == 0 {
            debug_assert_eq!(flat.len(), 1);
            return Nested::Base(flat[0].clone());
        }
        let d = self.0.gens[depth - 1].degree();
        let stride = flat.len() / d;
        Nested::Ext(
            (0..d)
                .map(|i| self.nfrom_coords(depth - 1, &flat[i * stride..(i + 1) * stride]))
                .collect(),
        )
    }

    pub fn from_coords(&self, flat: &[RatFunc]) -> TowerElement {
        assert_eq!(flat.len(), self.basis_size());
        self.elem(self.depth(), self.nfrom_coords(self.depth(), flat))
    }

    /// The power-basis monomials, in coordinate order.
    pub fn power_basis(&self) -> Vec<TowerElement> {
        let size = self.basis_size();
        let zero = RatFunc::zero(&self.0.delta);
        let one = RatFunc::one(&self.0.delta);
        (0..size)
            .map(|k| {
                let mut flat = vec![zero.clone(); size];
                flat[k] = one.clone();
                self.from_coords(&flat)
            })
            .collect()
    }

    /// Exponent tuple of power-basis index k, one entry per generator.
    pub fn basis_exponents(&self, k: usize) -> Vec<usize> {
        let mut rest = k;
        let mut out = Vec::with_capacity(self.num_gens());
        for g in &self.0.gens {
            out.push(rest % g.degree());
            rest /= g.degree();
        }
        debug_assert_eq!(rest, 0);
        out
    }

    /// Renders the power-basis monomial at index k (empty product = "1").
    pub fn basis_monomial_name(&self, k: usize) -> String {
        let exps = self.basis_exponents(k);
        let mut parts = Vec::new();
        for (g, e) in self.0.gens.iter().zip(exps) {
            match e {
                0 => {}
                1 => parts.push(g.symbol.clone()),
                _ => parts.push(format!("{}^{}", g.symbol, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    // ---- morphisms ----

    /// Evaluates an element of a shape-compatible source tower under a map
    /// sending source variables and generators to the given images in this
    /// tower. Images must satisfy the source relations for the result to be
    /// a field map; callers verify that separately.
    pub fn map_element(
        &self,
        x: &TowerElement,
        var_images: &[TowerElement],
        gen_images: &[TowerElement],
    ) -> Result<TowerElement, ArithError> {
        if var_images.len() != x.tower.delta().len() || gen_images.len() != x.tower.num_gens() {
            return Err(ArithError::TowerMismatch);
        }
        for im in var_images.iter().chain(gen_images) {
            if im.tower != *self || im.depth != self.depth() {
                return Err(ArithError::TowerMismatch);
            }
        }
        self.map_nested(&x.nested, x.depth, var_images, gen_images)
    }

    fn map_nested(
        &self,
        n: &Nested,
        depth: usize,
        var_images: &[TowerElement],
        gen_images: &[TowerElement],
    ) -> Result<TowerElement, ArithError> {
        match n {
            Nested::Base(rf) => {
                let proto = self.zero();
                rf.eval_in(var_images, &proto)
            }
            Nested::Ext(v) => {
                let g = &gen_images[depth - 1];
                let mut acc = self.zero();
                for e in v.iter().rev() {
                    let mapped = self.map_nested(e, depth - 1, var_images, gen_images)?;
                    acc = acc.mul(g)?.add(&mapped)?;
                }
                Ok(acc)
            }
        }
    }

    /// Reinterprets an element of a prefix tower in this tower.
    pub fn lift_from_prefix(&self, x: &TowerElement) -> Result<TowerElement, ArithError> {
        if !x.tower.is_prefix_of(self) || x.depth != x.tower.depth() {
            return Err(ArithError::TowerMismatch);
        }
        Ok(self.elem(
            self.depth(),
            self.lift_nested(x.nested.clone(), x.depth, self.depth()),
        ))
    }

    /// Projects an element of this tower down to a prefix tower, when it
    /// lies in the prefix field; None when any upper-generator coordinate
    /// is nonzero.
    pub fn restrict_to_prefix(
        &self,
        x: &TowerElement,
        prefix: &FieldTower,
    ) -> Result<Option<TowerElement>, ArithError> {
        if x.tower != *self || x.depth != self.depth() || !prefix.is_prefix_of(self) {
            return Err(ArithError::TowerMismatch);
        }
        let mut cur = &x.nested;
        for _ in prefix.depth()..self.depth() {
            match cur {
                Nested::Ext(v) => {
                    if v[1..].iter().any(|e| !Self::n_is_zero(e)) {
                        return Ok(None);
                    }
                    cur = &v[0];
                }
                Nested::Base(_) => unreachable!("depth accounting"),
            }
        }
        Ok(Some(prefix.elem(prefix.depth(), cur.clone())))
    }

    /// Renders the tower shape, e.g. `Q(s,t)[a : a^2 - 2]`.
    pub fn render(&self) -> String {
        let mut out = String::from("Q");
        if !self.0.delta.is_empty() {
            out.push('(');
            out.push_str(&self.0.delta.names().join(","));
            out.push(')');
        }
        for (i, g) in self.0.gens.iter().enumerate() {
            out.push_str(&format!(
                "[{} : {}]",
                g.symbol,
                self.minpoly_lifted(i).render(&g.symbol)
            ));
        }
        out
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn ncmp(a: &Nested, b: &Nested) -> Ordering {
    match (a, b) {
        (Nested::Base(x), Nested::Base(y)) => x.cmp_key(y),
        (Nested::Ext(x), Nested::Ext(y)) => {
            for (p, q) in x.iter().zip(y.iter()) {
                match ncmp(p, q) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            x.len().cmp(&y.len())
        }
        (Nested::Base(_), Nested::Ext(_)) => Ordering::Less,
        (Nested::Ext(_), Nested::Base(_)) => Ordering::Greater,
    }
}

impl TowerElement {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        FieldTower::n_is_zero(&self.nested)
    }

    pub fn is_one(&self) -> bool {
        *self == self.tower.one()
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.depth != other.depth || self.tower != other.tower {
            return Err(ArithError::TowerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self
            .tower
            .elem(self.depth, self.tower.nadd(self.depth, &self.nested, &other.nested)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.tower
            .elem(self.depth, self.tower.nneg(self.depth, &self.nested))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self
            .tower
            .elem(self.depth, self.tower.nmul(self.depth, &self.nested, &other.nested)))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        Ok(self
            .tower
            .elem(self.depth, self.tower.ninv(self.depth, &self.nested)?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match &self.nested {
            _ if e == 0 => return self.one_like_elem(),
            _ => self.clone(),
        };
        for _ in 1..e {
            acc = acc.mul(self).expect("same tower");
        }
        acc
    }

    fn one_like_elem(&self) -> Self {
        let one = Nested::Base(RatFunc::one(self.tower.delta()));
        self.tower
            .elem(self.depth, self.tower.lift_nested(one, 0, self.depth))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        let c = self.tower.elem(
            self.depth,
            self.tower.lift_nested(
                Nested::Base(RatFunc::from_rational(self.tower.delta(), r.clone())),
                0,
                self.depth,
            ),
        );
        self.mul(&c).expect("same tower")
    }

    /// Base-field content: Some(rf) when the element lies in K(delta).
    pub fn as_base(&self) -> Option<RatFunc> {
        fn walk(n: &Nested) -> Option<RatFunc> {
            match n {
                Nested::Base(rf) => Some(rf.clone()),
                Nested::Ext(v) => {
                    for e in &v[1..] {
                        if !FieldTower::n_is_zero(e) {
                            return None;
                        }
                    }
                    walk(&v[0])
                }
            }
        }
        walk(&self.nested)
    }

    /// Rational content: Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_base().and_then(|rf| rf.as_rational())
    }
}

impl fmt::Display for TowerElement {
    /// Coordinates over the power basis, highest index first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depth != self.tower.depth() {
            // Internal-depth elements only show up in debug contexts.
            return write!(f, "<layer {} element>", self.depth);
        }
        let coords = self.tower.coords(self);
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = self.tower.basis_monomial_name(k);
            let cs = c.to_string();
            let body = if mono == "1" {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if cs.contains('+')
                || (cs.contains('-') && !cs.starts_with('-'))
                || cs.contains(' ')
                || cs.contains('/')
            {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(body);
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        f.write_str(&out)
    }
}

impl CoeffField for TowerElement {
    fn zero_like(&self) -> Self {
        self.tower
            .elem(self.depth, self.tower.nzero(self.depth))
    }

    fn one_like(&self) -> Self {
        self.one_like_elem()
    }

    fn from_rational(&self, r: &Rational) -> Self {
        self.tower.elem(
            self.depth,
            self.tower.lift_nested(
                Nested::Base(RatFunc::from_rational(self.tower.delta(), r.clone())),
                0,
                self.depth,
            ),
        )
    }

    fn is_zero(&self) -> bool {
        TowerElement::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        TowerElement::add(self, other).expect("tower mismatch in coefficient arithmetic")
    }

    fn sub(&self, other: &Self) -> Self {
        TowerElement::sub(self, other).expect("tower mismatch in coefficient arithmetic")
    }

    fn mul(&self, other: &Self) -> Self {
        TowerElement::mul(self, other).expect("tower mismatch in coefficient arithmetic")
    }

    fn neg(&self) -> Self {
        TowerElement::neg(self)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        TowerElement::inv(self)
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        ncmp(&self.nested, &other.nested)
    }
}
