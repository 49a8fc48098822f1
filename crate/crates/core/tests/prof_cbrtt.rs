use tgx_core::galois::conjugation::unique_conjugation_check;
use tgx_core::tower::basis::default_nice_basis;
use tgx_core::tower::FieldTower;
use tgx_core::unipoly::UniPoly;
use tgx_core::Rational;

#[test]
fn profile_cbrtt() {
    let qt = FieldTower::rational(vec!["t".to_string()]).unwrap();
    let m = UniPoly::from_coeffs(vec![qt.var(0).neg(), qt.zero(), qt.zero(), qt.one()]);
    let tw = qt.extend("c", &m).unwrap();
    let t0 = std::time::Instant::now();
    let rep = unique_conjugation_check(&tw, &default_nice_basis(&tw)).unwrap();
    eprintln!("cbrtt total: {:?} unique={}", t0.elapsed(), rep.unique);
}
