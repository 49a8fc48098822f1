//! The splitting test and the conjugate-census test must agree on every
//! tower/basis pair: a tower is quasi-galois with respect to a basis
//! exactly when it is its own unique conjugate over that basis. Any
//! disagreement is an engine defect, so the corpus mixes both outcomes.

use tgx_core::galois::conjugation::unique_conjugation_check;
use tgx_core::galois::is_quasi_galois_wrt;
use tgx_core::tower::basis::{basis_label, default_nice_basis, NiceBasis};
use tgx_core::tower::{FieldTower, TowerElement};
use tgx_core::unipoly::UniPoly;
use tgx_core::Rational;

fn q_tower(vars: &[&str]) -> FieldTower {
    FieldTower::rational(vars.iter().map(|v| v.to_string()).collect()).unwrap()
}

/// Monic polynomial from tower-element coefficients, low degree first.
fn poly(tower: &FieldTower, cs: Vec<TowerElement>) -> UniPoly<TowerElement> {
    let mut coeffs = cs;
    coeffs.push(tower.one());
    UniPoly::from_coeffs(coeffs)
}

fn c(tower: &FieldTower, n: i64) -> TowerElement {
    tower.from_rational(Rational::from_int(n))
}

/// X^d - e as a minimal polynomial candidate.
fn radical(tower: &FieldTower, d: usize, e: TowerElement) -> UniPoly<TowerElement> {
    let mut cs = vec![e.neg()];
    for _ in 1..d {
        cs.push(tower.zero());
    }
    poly(tower, cs)
}

fn basis_of(tower: &FieldTower, delta_prime: Vec<TowerElement>) -> NiceBasis {
    NiceBasis {
        label: basis_label(&delta_prime),
        a_list: tower.power_basis(),
        delta_prime,
    }
}

#[test]
fn splitting_and_conjugate_census_agree_on_corpus() {
    // (name, tower, basis, expected quasi-galois)
    let mut cases: Vec<(String, FieldTower, NiceBasis, bool)> = Vec::new();
    let mut add = |name: &str, tw: FieldTower, basis: NiceBasis, expect: bool| {
        cases.push((name.to_string(), tw, basis, expect));
    };

    // Purely transcendental.
    let qt = q_tower(&["t"]);
    add("Q(t) default", qt.clone(), default_nice_basis(&qt), true);

    // Q(t) over Q(t^2): X^2 - t^2 splits as (X-t)(X+t).
    let t = qt.var(0);
    let t2 = t.mul(&t).unwrap();
    add("Q(t) wrt {t^2}", qt.clone(), basis_of(&qt, vec![t2]), true);

    // Q(t) over Q(t^3): X^3 - t^3 has only the root t in Q(t).
    let t3 = t.mul(&t).unwrap().mul(&t).unwrap();
    add("Q(t) wrt {t^3}", qt.clone(), basis_of(&qt, vec![t3]), false);

    // Constant-coefficient quadratic generator: splits by the sign flip.
    let qt_sqrt2 = qt.extend("a", &radical(&qt, 2, c(&qt, 2))).unwrap();
    add(
        "Q(t)[sqrt2] default",
        qt_sqrt2.clone(),
        default_nice_basis(&qt_sqrt2),
        true,
    );

    // Klein tower: both quadratics split.
    let klein = qt_sqrt2
        .extend("b", &radical(&qt_sqrt2, 2, qt_sqrt2.var(0)))
        .unwrap();
    add("Q(t)[sqrt2,sqrtt] default", klein.clone(), default_nice_basis(&klein), true);

    // sqrt(t) alone: X^2 - t splits as (X-b)(X+b).
    let qt_sqrtt = qt.extend("b", &radical(&qt, 2, qt.var(0))).unwrap();
    add(
        "Q(t)[sqrtt] default",
        qt_sqrtt.clone(),
        default_nice_basis(&qt_sqrtt),
        true,
    );
    // Same field presented over the transcendence basis {sqrt t}: degree 1.
    let b = qt_sqrtt.gen(0);
    add(
        "Q(t)[sqrtt] wrt {sqrt t}",
        qt_sqrtt.clone(),
        basis_of(&qt_sqrtt, vec![b]),
        true,
    );

    // Two variables, constant-coefficient generator.
    let qst = q_tower(&["s", "t"]);
    let qst_sqrt2 = qst.extend("a", &radical(&qst, 2, c(&qst, 2))).unwrap();
    add(
        "Q(s,t)[sqrt2] default",
        qst_sqrt2.clone(),
        default_nice_basis(&qst_sqrt2),
        true,
    );

    // sqrt(s t): the two roots differ by sign, both inside.
    let st = qst.var(0).mul(&qst.var(1)).unwrap();
    let qst_sqrtst = qst.extend("a", &radical(&qst, 2, st)).unwrap();
    add(
        "Q(s,t)[sqrt(st)] default",
        qst_sqrtst.clone(),
        default_nice_basis(&qst_sqrtst),
        true,
    );

    // Algebraic number fields (no transcendentals).
    let q0 = q_tower(&[]);
    let q_sqrt2 = q0.extend("a", &radical(&q0, 2, c(&q0, 2))).unwrap();
    add("Q[sqrt2]", q_sqrt2.clone(), default_nice_basis(&q_sqrt2), true);
    let q_sqrt2_sqrt3 = q_sqrt2
        .extend("b", &radical(&q_sqrt2, 2, c(&q_sqrt2, 3)))
        .unwrap();
    add(
        "Q[sqrt2,sqrt3]",
        q_sqrt2_sqrt3.clone(),
        default_nice_basis(&q_sqrt2_sqrt3),
        true,
    );

    // Non-quasi-galois: cube roots miss their complex conjugate partners.
    let qt_cbrt2 = qt.extend("c", &radical(&qt, 3, c(&qt, 2))).unwrap();
    add(
        "Q(t)[cbrt2] default",
        qt_cbrt2.clone(),
        default_nice_basis(&qt_cbrt2),
        false,
    );
    let qt_cbrtt = qt.extend("c", &radical(&qt, 3, qt.var(0))).unwrap();
    add(
        "Q(t)[cbrtt] default",
        qt_cbrtt.clone(),
        default_nice_basis(&qt_cbrtt),
        false,
    );
    let q_cbrt2 = q0.extend("c", &radical(&q0, 3, c(&q0, 2))).unwrap();
    add("Q[cbrt2]", q_cbrt2.clone(), default_nice_basis(&q_cbrt2), false);

    // Fourth root of t: only the two real-signed roots are inside.
    let qt_qrt = qt.extend("d", &radical(&qt, 4, qt.var(0))).unwrap();
    add(
        "Q(t)[t^(1/4)] default",
        qt_qrt.clone(),
        default_nice_basis(&qt_qrt),
        false,
    );

    assert!(cases.len() >= 12, "corpus must stay at least 10 pairs");
    let non_quasi = cases.iter().filter(|(_, _, _, e)| !e).count();
    assert!(non_quasi >= 4, "corpus must keep at least 4 negative pairs");

    for (name, tower, basis, expect) in &cases {
        eprintln!("case: {name}");
        let t0 = std::time::Instant::now();
        let split_verdict = is_quasi_galois_wrt(tower, basis)
            .unwrap_or_else(|e| panic!("{name}: splitting test failed: {e}"));
        let census = unique_conjugation_check(tower, basis)
            .unwrap_or_else(|e| panic!("{name}: conjugate census failed: {e}"));
        assert_eq!(
            split_verdict.is_certified(),
            census.unique,
            "{name}: splitting test and conjugate census disagree"
        );
        assert_eq!(
            split_verdict.is_certified(),
            *expect,
            "{name}: unexpected verdict"
        );
        eprintln!("  done in {:?}", t0.elapsed());
        // The census must always produce exactly [L : K(delta')] conjugates.
        assert_eq!(census.conjugations.len(), census.degree, "{name}: census size");
    }
}
