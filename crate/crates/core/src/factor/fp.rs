//! Polynomials over small prime fields and deterministic Berlekamp
//! factorization. Primes stay small (a fixed list below 1000), so u64
//! arithmetic with u128 intermediates is plenty.

/// Dense polynomial over F_p, low-to-high, coefficients in [0, p),
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid; a nonzero mod p, p prime.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let tmp_r = old_r - q * r;
        old_r = r;
        r = tmp_r;
        let tmp_s = old_s - q * s;
        old_s = s;
        s = tmp_s;
    }
    assert_eq!(old_r, 1, "inverse of non-unit mod p");
    old_s.rem_euclid(p as i128) as u64
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().expect("lc of zero")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.coeff(i) + other.coeff(i)) % p;
        }
        FpPoly::new(p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.coeff(i) + p - other.coeff(i)) % p;
        }
        FpPoly::new(p, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn mul_scalar(&self, c: u64) -> Self {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % p as u128) as u64)
                .collect(),
        )
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.is_zero() || self.degree() < d.degree() {
            return (Self::zero(p), self.clone());
        }
        let dd = d.degree();
        let lc_inv = inv_mod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let nq = r.len() - dd;
        let mut q = vec![0u64; nq];
        for i in (0..nq).rev() {
            let top = r[i + dd];
            if top == 0 {
                continue;
            }
            let c = ((top as u128 * lc_inv as u128) % p as u128) as u64;
            q[i] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let sub = (c as u128 * dc as u128) % p as u128;
                r[i + j] = ((r[i + j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        assert!(!self.is_zero());
        self.mul_scalar(inv_mod(self.lc(), self.p))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended GCD: (g, s, t) with s*self + t*other = g, g monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
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
        let inv = inv_mod(r0.lc(), p);
        (r0.mul_scalar(inv), s0.mul_scalar(inv), t0.mul_scalar(inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let p = self.p;
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((c as u128 * (i as u128 % p as u128)) % p as u128) as u64)
            .collect();
        FpPoly::new(p, out)
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == 0
    }

    /// self^e mod m, by square and multiply.
    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

/// Nullspace basis of an n x n matrix over F_p. Deterministic elimination;
/// basis vectors have leading free coordinate 1, ordered by free column.
fn nullspace_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = inv_mod(m[rank][col], p);
        for c in 0..n {
            m[rank][c] = ((m[rank][c] as u128 * inv as u128) % p as u128) as u64;
        }
        for i in 0..n {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for c in 0..n {
                    let sub = (f as u128 * m[rank][c] as u128) % p as u128;
                    m[i][c] = ((m[i][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[ri][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Deterministic Berlekamp factorization of a monic squarefree polynomial
/// over F_p. Returns monic irreducible factors sorted by degree then
/// coefficients.
pub fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    assert!(!f.is_zero() && f.lc() == 1, "berlekamp needs monic input");
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows of the Frobenius matrix: x^(p*i) mod f.
    let xp = FpPoly::x(p).pow_mod(p, f);
    let mut rows: Vec<FpPoly> = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        rows.push(cur.clone());
        cur = cur.mul(&xp).rem(f);
    }
    // Kernel of (R^T - I): v with sum_i v_i * rows[i] = v.
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            mat[j][i] = row.coeff(j);
        }
    }
    for (j, row) in mat.iter_mut().enumerate() {
        row[j] = (row[j] + p - 1) % p;
    }
    let basis = nullspace_mod_p(mat, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    'outer: for v in &basis {
        let vp = FpPoly::new(p, v.clone());
        if vp.is_zero() || vp.degree() == 0 {
            continue; // constant kernel vector cannot split anything
        }
        let mut next: Vec<FpPoly> = Vec::new();
        for u in &factors {
            if u.degree() == 1 {
                next.push(u.clone());
                continue;
            }
            // u = prod over c of gcd(u, v - c); extract pieces in c order.
            let mut rem_u = u.clone();
            for c in 0..p {
                if rem_u.degree() == 0 {
                    break;
                }
                let shifted = vp.sub(&FpPoly::new(p, vec![c]));
                let g = rem_u.gcd(&shifted);
                if !g.is_zero() && g.degree() > 0 && g.degree() < rem_u.degree() {
                    next.push(g.clone());
                    rem_u = rem_u.divrem(&g).0.monic();
                } else if !g.is_zero() && g.degree() == rem_u.degree() {
                    // v is constant on all of u; nothing splits off here.
                    break;
                }
            }
            if rem_u.degree() > 0 {
                next.push(rem_u);
            }
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    assert_eq!(
        factors.len(),
        r,
        "berlekamp splitting incomplete: kernel dimension not reached"
    );
    factors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
    });
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn arithmetic_mod_5() {
        let a = fp(5, &[3, 4]); // 4x + 3
        let b = fp(5, &[2, 1]); // x + 2
        // (4+1)x + (3+2) = 5x + 5 = 0 mod 5.
        assert!(a.add(&b).is_zero());
        let prod = a.mul(&b); // 4x^2 + 11x + 6 = 4x^2 + x + 1 mod 5
        assert_eq!(prod, fp(5, &[1, 1, 4]));
        let (q, r) = prod.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), prod);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x+1)^2 (x+2) mod 7
        let f = fp(7, &[1, 1]).mul(&fp(7, &[1, 1])).mul(&fp(7, &[2, 1]));
        assert!(!f.is_squarefree());
        let g = f.gcd(&f.derivative());
        assert_eq!(g, fp(7, &[1, 1]));
        assert!(fp(7, &[3, 0, 1]).is_squarefree()); // x^2 + 3 mod 7
    }

    #[test]
    fn berlekamp_splits_into_linears() {
        // x^2 - 1 = (x-1)(x+1) mod 7
        let f = fp(7, &[6, 0, 1]);
        let fs = berlekamp(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].mul(&fs[1]), f);
        for g in &fs {
            assert_eq!(g.degree(), 1);
        }
    }

    #[test]
    fn berlekamp_keeps_irreducible_whole() {
        // x^2 + 1 is irreducible mod 7 (-1 is not a QR mod 7).
        let f = fp(7, &[1, 0, 1]);
        let fs = berlekamp(&f);
        assert_eq!(fs, vec![f]);
    }

    #[test]
    fn berlekamp_mixed_degrees() {
        // (x^2 + 1)(x + 3)(x + 5) mod 7: one quadratic, two linears.
        let f = fp(7, &[1, 0, 1]).mul(&fp(7, &[3, 1])).mul(&fp(7, &[5, 1]));
        let fs = berlekamp(&f);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(FpPoly::one(7), |acc, g| acc.mul(g));
        assert_eq!(prod, f);
        let degs: Vec<usize> = fs.iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn berlekamp_x_cubed_minus_two_mod_good_primes() {
        // x^3 - 2 mod 5: 2 has cube root 3 (27=2 mod 5): (x-3)(x^2+3x+9...).
        let f = fp(5, &[3, 0, 0, 1]);
        let fs = berlekamp(&f);
        let prod = fs.iter().fold(FpPoly::one(5), |acc, g| acc.mul(g));
        assert_eq!(prod, f);
        assert_eq!(fs.iter().map(|g| g.degree()).sum::<usize>(), 3);
        // mod 7: 2 is not a cube (cubes mod 7: 0,1,6), and x^3-2 has no root;
        // 3 | 7-1 so the factor pattern is either linear*quadratic or
        // irreducible; no roots means irreducible.
        let f7 = fp(7, &[5, 0, 0, 1]);
        let fs7 = berlekamp(&f7);
        assert_eq!(fs7.len(), 1);
    }
}
