//! Bases for a tower over its ground field: a transcendence part plus a
//! linear part, together with the deterministic candidate enumeration used
//! by the search-based classifiers.

use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::tower::{FieldTower, TowerElement};

/// A choice of transcendence elements and linear-basis elements for the
/// tower over Q. The default basis uses the declared variables and the
/// power-basis monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceBasis {
    pub delta_prime: Vec<TowerElement>,
    pub a_list: Vec<TowerElement>,
    /// Canonical rendering of the transcendence part, e.g. `{t}`; used for
    /// witnesses, cache keys and deduplication.
    pub label: String,
}

pub fn basis_label(delta_prime: &[TowerElement]) -> String {
    let mut parts: Vec<String> = delta_prime.iter().map(|e| e.to_string()).collect();
    parts.sort();
    format!("{{{}}}", parts.join(", "))
}

pub fn default_nice_basis(tower: &FieldTower) -> NiceBasis {
    let delta_prime: Vec<TowerElement> = (0..tower.delta().len()).map(|i| tower.var(i)).collect();
    NiceBasis {
        label: basis_label(&delta_prime),
        a_list: tower.power_basis(),
        delta_prime,
    }
}

/// Variables a generator's minimal polynomial actually involves.
fn minpoly_vars(tower: &FieldTower, gen_index: usize) -> Vec<usize> {
    let m = tower.minpoly_lifted(gen_index);
    let mut out = Vec::new();
    for v in 0..tower.delta().len() {
        let involves = m.coeffs().iter().any(|c| {
            tower
                .coords(c)
                .iter()
                .any(|rf| rf.involves(v))
        });
        if involves {
            out.push(v);
        }
    }
    out
}

/// Deterministic candidate bases for the search-based classifiers: the
/// default basis, generator-for-variable replacements, Mobius images of
/// single variables, and variable-plus-generator sums. Deduplicated by
/// label and truncated to `bound`.
pub fn candidate_bases(tower: &FieldTower, bound: usize) -> Vec<NiceBasis> {
    let mut out: Vec<NiceBasis> = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    let push = |b: NiceBasis, out: &mut Vec<NiceBasis>, seen: &mut Vec<String>| {
        if out.len() < bound && !seen.contains(&b.label) {
            seen.push(b.label.clone());
            out.push(b);
        }
    };
    push(default_nice_basis(tower), &mut out, &mut seen);

    let nvars = tower.delta().len();
    let ngens = tower.num_gens();

    // A generator whose minimal polynomial involves exactly one variable
    // can stand in for that variable; the linear part shrinks to the power
    // monomials of the remaining generators.
    for j in 0..ngens {
        let vars = minpoly_vars(tower, j);
        if vars.len() != 1 {
            continue;
        }
        let v = vars[0];
        let delta_prime: Vec<TowerElement> = (0..nvars)
            .map(|i| if i == v { tower.gen(j) } else { tower.var(i) })
            .collect();
        let others: Vec<usize> = (0..ngens).filter(|&k| k != j).collect();
        let mut a_list = Vec::new();
        let total: usize = others.iter().map(|&k| tower.gen_info(k).degree()).product();
        for idx in 0..total {
            let mut rest = idx;
            let mut m = tower.one();
            for &k in &others {
                let d = tower.gen_info(k).degree();
                let e = rest % d;
                rest /= d;
                m = m.mul(&tower.gen(k).pow(e as u32)).expect("same tower");
            }
            a_list.push(m);
        }
        push(
            NiceBasis {
                label: basis_label(&delta_prime),
                a_list,
                delta_prime,
            },
            &mut out,
            &mut seen,
        );
    }

    // Mobius images of a single variable keep the same intermediate field
    // but present it differently.
    for v in 0..nvars {
        let var_rf = RatFunc::var(tower.delta(), v);
        let images = [
            var_rf.inv().expect("variable is nonzero"),
            var_rf.add(&RatFunc::from_rational(
                tower.delta(),
                Rational::one(),
            )),
            var_rf.mul_rational(&Rational::from_int(2)),
        ];
        for img in images {
            let delta_prime: Vec<TowerElement> = (0..nvars)
                .map(|i| {
                    if i == v {
                        tower.from_base(img.clone()).expect("own table")
                    } else {
                        tower.var(i)
                    }
                })
                .collect();
            push(
                NiceBasis {
                    label: basis_label(&delta_prime),
                    a_list: tower.power_basis(),
                    delta_prime,
                },
                &mut out,
                &mut seen,
            );
        }
    }

    // Variable plus generator sums.
    for v in 0..nvars {
        for j in 0..ngens {
            let delta_prime: Vec<TowerElement> = (0..nvars)
                .map(|i| {
                    if i == v {
                        tower.var(v).add(&tower.gen(j)).expect("same tower")
                    } else {
                        tower.var(i)
                    }
                })
                .collect();
            push(
                NiceBasis {
                    label: basis_label(&delta_prime),
                    a_list: tower.power_basis(),
                    delta_prime,
                },
                &mut out,
                &mut seen,
            );
        }
    }

    out
}
