//! Construct-then-factor round trips. Every input is a product of monic
//! factors that are irreducible for reasons independent of the factorizer
//! (linear; negative discriminant; Eisenstein at 2; norm argument), so the
//! expected output is known exactly before the engine runs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tgx_core::factor::rational::factor_rationals;
use tgx_core::factor::tower::factor_over_tower;
use tgx_core::factor::Factorization;
use tgx_core::tower::{FieldTower, TowerElement};
use tgx_core::unipoly::{CoeffField, UniPoly};
use tgx_core::Rational;

fn qpoly(cs: &[i64]) -> UniPoly<Rational> {
    UniPoly::from_coeffs(cs.iter().map(|&c| Rational::from_int(c)).collect())
}

/// Merges equal factors into multiplicities and applies the canonical sort,
/// producing the exact expected factorization of the product.
fn expected_factorization<C: CoeffField>(unit: C, factors: Vec<UniPoly<C>>) -> Factorization<C> {
    let mut merged: Vec<(UniPoly<C>, u32)> = Vec::new();
    for f in factors {
        match merged.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => merged.push((f, 1)),
        }
    }
    let mut fac = Factorization {
        unit,
        factors: merged,
    };
    fac.sort();
    fac
}

/// A monic factor over Q that is irreducible by construction:
/// 0: X - r (linear),
/// 1: (X - a)^2 + p with p > 0 (no real root),
/// 2: X^3 + 2aX^2 + 2bX + 2c with c odd (Eisenstein at 2).
fn random_irreducible_q(rng: &mut ChaCha8Rng) -> UniPoly<Rational> {
    match rng.gen_range(0..3u8) {
        0 => {
            let r = rng.gen_range(-9..=9i64);
            qpoly(&[-r, 1])
        }
        1 => {
            let a = rng.gen_range(-6..=6i64);
            let p = rng.gen_range(1..=9i64);
            // (X - a)^2 + p = X^2 - 2aX + a^2 + p
            qpoly(&[a * a + p, -2 * a, 1])
        }
        _ => {
            let a = rng.gen_range(-4..=4i64);
            let b = rng.gen_range(-4..=4i64);
            let c = 2 * rng.gen_range(-3..=2i64) + 1;
            qpoly(&[2 * c, 2 * b, 2 * a, 1])
        }
    }
}

#[test]
fn rational_products_recover_their_constructed_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for trial in 0..100 {
        let nfac = rng.gen_range(1..=3usize);
        let parts: Vec<UniPoly<Rational>> =
            (0..nfac).map(|_| random_irreducible_q(&mut rng)).collect();
        let mut product = UniPoly::constant(Rational::one());
        for p in &parts {
            product = product.mul(p);
        }
        // A nontrivial unit exercises the non-monic path.
        let unit = Rational::from_ratio(rng.gen_range(1..=5i64), rng.gen_range(1..=3i64)).unwrap();
        product = product.mul_scalar(&unit);

        let expected = expected_factorization(unit, parts);
        let got = factor_rationals(&product, 64).unwrap_or_else(|e| {
            panic!("trial {trial}: factorization failed: {e}");
        });
        assert_eq!(got.unit, expected.unit, "trial {trial}: unit mismatch");
        assert_eq!(
            got.factors, expected.factors,
            "trial {trial}: factor multiset mismatch for {}",
            product.render("X")
        );
    }
}

/// Q(sqrt 2) as a tower with no transcendentals and one generator.
fn tower_sqrt2() -> FieldTower {
    let base = FieldTower::rational(Vec::new()).unwrap();
    let minpoly = UniPoly::from_coeffs(vec![
        base.from_rational(Rational::from_int(-2)),
        base.zero(),
        base.one(),
    ]);
    base.extend("a", &minpoly).unwrap()
}

fn random_element_sqrt2(rng: &mut ChaCha8Rng, tower: &FieldTower) -> TowerElement {
    let u = rng.gen_range(-5..=5i64);
    let v = rng.gen_range(-5..=5i64);
    tower
        .from_rational(Rational::from_int(u))
        .add(&tower.gen(0).mul_rational(&Rational::from_int(v)))
        .unwrap()
}

#[test]
fn sqrt2_products_recover_their_constructed_factors() {
    let tower = tower_sqrt2();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0019);
    // X^2 - 3 is irreducible over Q(sqrt 2): (u + v sqrt 2)^2 = 3 forces
    // 2uv = 0, and neither u^2 = 3 nor 2v^2 = 3 has a rational solution.
    let x2m3 = UniPoly::from_coeffs(vec![
        tower.from_rational(Rational::from_int(-3)),
        tower.zero(),
        tower.one(),
    ]);
    for trial in 0..25 {
        let nlin = rng.gen_range(1..=3usize);
        let mut parts: Vec<UniPoly<TowerElement>> = (0..nlin)
            .map(|_| {
                let e = random_element_sqrt2(&mut rng, &tower);
                UniPoly::from_coeffs(vec![e.neg(), tower.one()])
            })
            .collect();
        if trial % 5 == 0 {
            parts.push(x2m3.clone());
        }
        let mut product = UniPoly::constant(tower.one());
        for p in &parts {
            product = product.mul(p);
        }

        let expected = expected_factorization(tower.one(), parts);
        let got = factor_over_tower(&product, &tower, 64).unwrap_or_else(|e| {
            panic!("trial {trial}: factorization failed: {e}");
        });
        assert_eq!(got.unit, expected.unit, "trial {trial}: unit mismatch");
        assert_eq!(
            got.factors, expected.factors,
            "trial {trial}: factor multiset mismatch for {}",
            product.render("X")
        );
    }
}
