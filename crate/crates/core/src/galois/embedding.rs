//! Enumeration of field embeddings of a tower into itself (or into an
//! extension of itself) fixing a described subfield pointwise. An embedding
//! is pinned down by where it sends the transcendental variables and the
//! algebraic generators; candidates are enumerated along an adjunction
//! chain, choosing for each chain element a root of its twisted minimal
//! polynomial, so every enumerated map is a genuine field homomorphism and
//! every homomorphism appears exactly once.

use std::cmp::Ordering;

use crate::error::{ArithError, QueryError};
use crate::factor::tower::roots_in_tower;
use crate::tower::subfield::{SubfieldSpec, SubMinPoly};
use crate::tower::{FieldTower, TowerElement};
use crate::unipoly::{CoeffField, UniPoly};

/// A self-map of a tower field, recorded by the images of every
/// transcendental variable and every algebraic generator. Self-maps fixing
/// a subfield over which the tower is algebraic are automatically
/// automorphisms (injective and dimension-preserving).
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    tower: FieldTower,
    var_images: Vec<TowerElement>,
    gen_images: Vec<TowerElement>,
}

impl Embedding {
    pub fn identity(tower: &FieldTower) -> Self {
        Embedding {
            tower: tower.clone(),
            var_images: (0..tower.delta().len()).map(|i| tower.var(i)).collect(),
            gen_images: (0..tower.num_gens()).map(|i| tower.gen(i)).collect(),
        }
    }

    pub fn from_images(
        tower: &FieldTower,
        var_images: Vec<TowerElement>,
        gen_images: Vec<TowerElement>,
    ) -> Result<Self, QueryError> {
        if var_images.len() != tower.delta().len() || gen_images.len() != tower.num_gens() {
            return Err(QueryError::Arith(ArithError::TowerMismatch));
        }
        let e = Embedding {
            tower: tower.clone(),
            var_images,
            gen_images,
        };
        e.verify()?;
        Ok(e)
    }

    /// Checks every tower relation under the map.
    pub fn verify(&self) -> Result<(), QueryError> {
        for i in 0..self.tower.num_gens() {
            let mapped = self
                .tower
                .minpoly_lifted(i)
                .try_map_coeffs(|c| self.apply(c))?;
            if !mapped.eval(&self.gen_images[i]).is_zero() {
                return Err(QueryError::RelationCheckFailed {
                    detail: format!(
                        "image of `{}` does not satisfy its mapped minimal polynomial",
                        self.tower.gen_info(i).symbol()
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn var_images(&self) -> &[TowerElement] {
        &self.var_images
    }

    pub fn gen_images(&self) -> &[TowerElement] {
        &self.gen_images
    }

    pub fn apply(&self, x: &TowerElement) -> Result<TowerElement, ArithError> {
        self.tower
            .map_element(x, &self.var_images, &self.gen_images)
    }

    pub fn is_identity(&self) -> bool {
        self.var_images
            .iter()
            .enumerate()
            .all(|(i, v)| *v == self.tower.var(i))
            && self
                .gen_images
                .iter()
                .enumerate()
                .all(|(i, g)| *g == self.tower.gen(i))
    }

    /// Composition self after other: x -> self(other(x)).
    pub fn compose(&self, other: &Embedding) -> Result<Embedding, ArithError> {
        let var_images = other
            .var_images
            .iter()
            .map(|v| self.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        let gen_images = other
            .gen_images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Embedding {
            tower: self.tower.clone(),
            var_images,
            gen_images,
        })
    }

    /// Deterministic total order on embeddings of one tower, by image
    /// lists.
    pub fn cmp_canonical(&self, other: &Embedding) -> Ordering {
        let a = self.var_images.iter().chain(&self.gen_images);
        let b = other.var_images.iter().chain(&other.gen_images);
        for (x, y) in a.zip(b) {
            let c = x.cmp_key(y);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }

    /// Renders the action, listing moved variables and all generators,
    /// e.g. `a -> -a, b -> b`; the identity with nothing to list renders
    /// as `id`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, v) in self.var_images.iter().enumerate() {
            if *v != self.tower.var(i) {
                parts.push(format!("{} -> {}", self.tower.delta().name(i), v));
            }
        }
        for (i, g) in self.gen_images.iter().enumerate() {
            parts.push(format!("{} -> {}", self.tower.gen_info(i).symbol(), g));
        }
        if parts.is_empty() {
            "id".to_string()
        } else {
            parts.join(", ")
        }
    }
}

/// One step of the adjunction chain from a subfield up to the full tower.
pub(crate) struct ChainStep {
    /// Minimal polynomial of the step element over the chain subfield so
    /// far, with coefficients in that subfield's abstract tower.
    pub abstract_poly: UniPoly<TowerElement>,
    /// The same polynomial with coefficients embedded in the ambient tower.
    pub embedded: UniPoly<TowerElement>,
    /// Whether the step added an abstract generator (degree >= 2).
    pub added: bool,
}

/// The full degree/embedding analysis of tower over a described subfield.
pub struct ExtensionAnalysis {
    /// [L : F], the product of the chain step degrees.
    pub degree: usize,
    /// All self-embeddings of the tower fixing the subfield, canonically
    /// ordered with the identity first.
    pub embeddings: Vec<Embedding>,
    /// Minimal polynomials along the adjunction chain (variables first,
    /// then generators), embedded in the tower.
    pub chain_minpolys: Vec<UniPoly<TowerElement>>,
}

impl ExtensionAnalysis {
    /// Finite characteristic-0 Galois criterion: normal, hence Galois, iff
    /// the automorphism count reaches the degree.
    pub fn is_galois(&self) -> bool {
        self.embeddings.len() == self.degree
    }
}

/// Whether the subfield is the identity presentation of K(Delta) (all
/// variables, identity images, no algebraic generators).
pub(crate) fn is_identity_transcendental_subfield(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> bool {
    sub.gen_images().is_empty()
        && sub.delta_images().len() == tower.delta().len()
        && sub
            .delta_images()
            .iter()
            .enumerate()
            .all(|(i, img)| *img == tower.var(i))
}

/// Builds the adjunction chain for the tower over the subfield: every
/// ambient variable, then every ambient generator, each with its minimal
/// polynomial over the chain so far. Also returns the abstract chain
/// tower, an abstract presentation of the tower as an extension of the
/// subfield.
pub(crate) fn adjunction_chain(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<(Vec<ChainStep>, FieldTower), QueryError> {
    if sub.ambient() != tower {
        return Err(QueryError::Arith(ArithError::TowerMismatch));
    }
    if is_identity_transcendental_subfield(tower, sub) {
        // The stored minimal polynomials are exactly the chain over
        // K(Delta); variables contribute forced degree-1 steps. The tower
        // is its own abstract presentation over K(Delta).
        let mut steps = Vec::new();
        for i in 0..tower.delta().len() {
            let poly =
                UniPoly::from_coeffs(vec![tower.var(i).neg(), tower.one()]);
            steps.push(ChainStep {
                abstract_poly: poly.clone(),
                embedded: poly,
                added: false,
            });
        }
        for i in 0..tower.num_gens() {
            let m = tower.minpoly_lifted(i);
            steps.push(ChainStep {
                abstract_poly: m.clone(),
                embedded: m,
                added: true,
            });
        }
        return Ok((steps, tower.clone()));
    }
    let mut cur = sub.clone();
    let mut steps = Vec::new();
    let mut elems: Vec<TowerElement> =
        (0..tower.delta().len()).map(|v| tower.var(v)).collect();
    elems.extend((0..tower.num_gens()).map(|i| tower.gen(i)));
    for e in elems {
        let (next, m) = cur.adjoin(&e)?;
        let SubMinPoly {
            abstract_poly,
            embedded,
        } = m;
        steps.push(ChainStep {
            added: embedded.degree() > 1,
            abstract_poly,
            embedded,
        });
        cur = next;
    }
    Ok((steps, cur.ftower().clone()))
}

/// Enumerates all field embeddings of `tower` into `target` (an extension
/// tower of it) that fix the subfield pointwise. Returned maps are listed
/// as (variable images, generator images) in the target, in a
/// deterministic order. Also returns the extension degree and the chain
/// minimal polynomials.
pub(crate) fn enumerate_maps(
    tower: &FieldTower,
    sub: &SubfieldSpec,
    target: &FieldTower,
) -> Result<
    (
        Vec<(Vec<TowerElement>, Vec<TowerElement>)>,
        Vec<ChainStep>,
        FieldTower,
    ),
    QueryError,
> {
    if !sub.is_complete() {
        return Err(QueryError::NotAlgebraicOverBase {
            detail: format!(
                "subfield {} does not carry the full transcendence degree",
                sub.render()
            ),
        });
    }
    if !tower.is_prefix_of(target) {
        return Err(QueryError::Arith(ArithError::TowerMismatch));
    }
    let (steps, abstract_tower) = adjunction_chain(tower, sub)?;
    // Images of the subfield's own data inside the target, fixed by every
    // enumerated map.
    let fixed_delta: Vec<TowerElement> = sub
        .delta_images()
        .iter()
        .map(|x| target.lift_from_prefix(x))
        .collect::<Result<_, _>>()?;
    let fixed_gens: Vec<TowerElement> = sub
        .gen_images()
        .iter()
        .map(|x| target.lift_from_prefix(x))
        .collect::<Result<_, _>>()?;
    let identity_fast = is_identity_transcendental_subfield(tower, sub);

    let nvars = tower.delta().len();
    let ngens = tower.num_gens();
    let mut results: Vec<(Vec<TowerElement>, Vec<TowerElement>)> = Vec::new();
    // Depth-first search over root choices; `assigned` holds images of the
    // chain elements (vars then gens), `chosen` only those of added
    // abstract generators.
    let mut assigned: Vec<TowerElement> = Vec::new();
    let mut chosen: Vec<TowerElement> = Vec::new();
    dfs(
        tower,
        target,
        &steps,
        identity_fast,
        &fixed_delta,
        &fixed_gens,
        nvars,
        ngens,
        &mut assigned,
        &mut chosen,
        &mut results,
    )?;
    Ok((results, steps, abstract_tower))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    tower: &FieldTower,
    target: &FieldTower,
    steps: &[ChainStep],
    identity_fast: bool,
    fixed_delta: &[TowerElement],
    fixed_gens: &[TowerElement],
    nvars: usize,
    ngens: usize,
    assigned: &mut Vec<TowerElement>,
    chosen: &mut Vec<TowerElement>,
    results: &mut Vec<(Vec<TowerElement>, Vec<TowerElement>)>,
) -> Result<(), QueryError> {
    let i = assigned.len();
    if i == steps.len() {
        let vars = assigned[..nvars].to_vec();
        let gens = assigned[nvars..].to_vec();
        results.push((vars, gens));
        return Ok(());
    }
    let step = &steps[i];
    let mapped: UniPoly<TowerElement> = if identity_fast {
        // Chain polynomials live in the ambient tower; the map is
        // identity on variables, already-chosen images on generators, and
        // zero padding beyond (coefficients never reach those layers).
        let mut gen_imgs: Vec<TowerElement> =
            assigned.iter().skip(nvars).cloned().collect();
        gen_imgs.resize(ngens, target.zero());
        let var_imgs: Vec<TowerElement> =
            (0..nvars).map(|v| target.var(v)).collect();
        step.abstract_poly
            .try_map_coeffs(|c| target.map_element(c, &var_imgs, &gen_imgs))?
    } else {
        // Chain polynomials live in the abstract chain tower: subfield
        // generators map to their fixed images, added generators to the
        // chosen images.
        let mut gen_imgs: Vec<TowerElement> = fixed_gens.to_vec();
        gen_imgs.extend(chosen.iter().cloned());
        step.abstract_poly
            .try_map_coeffs(|c| target.map_element(c, fixed_delta, &gen_imgs))?
    };
    let roots = roots_in_tower(&mapped, target).map_err(QueryError::Factor)?;
    for r in roots {
        assigned.push(r.clone());
        if step.added && !identity_fast {
            chosen.push(r);
        }
        dfs(
            tower,
            target,
            steps,
            identity_fast,
            fixed_delta,
            fixed_gens,
            nvars,
            ngens,
            assigned,
            chosen,
            results,
        )?;
        assigned.pop();
        if step.added && !identity_fast {
            chosen.pop();
        }
    }
    Ok(())
}

/// Degree, self-embedding list, and chain minimal polynomials of the tower
/// over a described subfield. Every self-map fixing the subfield is an
/// automorphism, so `embeddings` is the automorphism list.
pub fn analyze_over(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<ExtensionAnalysis, QueryError> {
    let (maps, steps, _) = enumerate_maps(tower, sub, tower)?;
    let degree = steps
        .iter()
        .map(|s| s.embedded.degree())
        .product::<usize>();
    let mut embeddings: Vec<Embedding> = maps
        .into_iter()
        .map(|(var_images, gen_images)| Embedding {
            tower: tower.clone(),
            var_images,
            gen_images,
        })
        .collect();
    embeddings.sort_by(|a, b| {
        match (a.is_identity(), b.is_identity()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => a.cmp_canonical(b),
        }
    });
    debug_assert!(embeddings.iter().all(|e| e.verify().is_ok()));
    debug_assert!(embeddings.len() <= degree);
    Ok(ExtensionAnalysis {
        degree,
        embeddings,
        chain_minpolys: steps.into_iter().map(|s| s.embedded).collect(),
    })
}

/// All self-embeddings of the tower fixing the subfield.
pub fn embeddings_over(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<Vec<Embedding>, QueryError> {
    Ok(analyze_over(tower, sub)?.embeddings)
}

/// An automorphism group presented as an element list (identity first)
/// with its composition table.
pub struct AutGroup {
    pub elements: Vec<Embedding>,
    /// table[i][j] = index of elements[i] composed after elements[j].
    pub table: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Every row and column of the composition table is a permutation.
    pub fn is_latin_square(&self) -> bool {
        let n = self.elements.len();
        let full: Vec<bool> = vec![true; n];
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[self.table[i][j]] = true;
                col[self.table[j][i]] = true;
            }
            if row != full || col != full {
                return false;
            }
        }
        true
    }

    /// Index of the identity element (always 0 by construction).
    pub fn identity_index(&self) -> usize {
        0
    }

    /// Checks closure (already implied by table construction), identity
    /// row/column behavior, and the existence of an inverse for every
    /// element.
    pub fn verify_group_axioms(&self) -> bool {
        let n = self.elements.len();
        if n == 0 || !self.elements[0].is_identity() {
            return false;
        }
        for i in 0..n {
            if self.table[0][i] != i || self.table[i][0] != i {
                return false;
            }
            if !(0..n).any(|j| self.table[i][j] == 0 && self.table[j][i] == 0) {
                return false;
            }
        }
        true
    }
}

/// The automorphism group of the tower over a described subfield, with a
/// fully verified composition table.
pub fn automorphism_group(
    tower: &FieldTower,
    sub: &SubfieldSpec,
) -> Result<AutGroup, QueryError> {
    let elements = embeddings_over(tower, sub)?;
    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let composed = elements[i].compose(&elements[j])?;
            let k = elements
                .iter()
                .position(|e| *e == composed)
                .ok_or_else(|| QueryError::RelationCheckFailed {
                    detail: "automorphism set is not closed under composition".to_string(),
                })?;
            table[i][j] = k;
        }
    }
    let group = AutGroup { elements, table };
    if !group.is_latin_square() || !group.verify_group_axioms() {
        return Err(QueryError::RelationCheckFailed {
            detail: "automorphism composition table is not a group table".to_string(),
        });
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn qp(tower: &FieldTower, cs: &[i64]) -> UniPoly<TowerElement> {
        UniPoly::from_coeffs(
            cs.iter()
                .map(|&c| tower.from_rational(Rational::from_int(c)))
                .collect(),
        )
    }

    fn q_t() -> FieldTower {
        FieldTower::rational(vec!["t".to_string()]).unwrap()
    }

    fn tower_sqrt2_sqrtt() -> FieldTower {
        let base = q_t();
        let t1 = base.extend("a", &qp(&base, &[-2, 0, 1])).unwrap();
        let m = UniPoly::from_coeffs(vec![t1.var(0).neg(), t1.zero(), t1.one()]);
        t1.extend("b", &m).unwrap()
    }

    fn default_sub(tower: &FieldTower) -> SubfieldSpec {
        let vars: Vec<TowerElement> =
            (0..tower.delta().len()).map(|i| tower.var(i)).collect();
        SubfieldSpec::from_transcendentals(tower, &vars).unwrap()
    }

    #[test]
    fn klein_four_group_over_function_field() {
        let tw = tower_sqrt2_sqrtt();
        let g = automorphism_group(&tw, &default_sub(&tw)).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_latin_square());
        assert!(g.elements[0].is_identity());
        // Klein four: every element is its own inverse.
        for i in 0..4 {
            assert_eq!(g.table[i][i], 0);
        }
    }

    #[test]
    fn cube_root_tower_has_single_embedding() {
        let base = q_t();
        let tw = base.extend("c", &qp(&base, &[-2, 0, 0, 1])).unwrap();
        let a = analyze_over(&tw, &default_sub(&tw)).unwrap();
        assert_eq!(a.degree, 3);
        assert_eq!(a.embeddings.len(), 1);
        assert!(!a.is_galois());
    }

    #[test]
    fn two_embeddings_over_t_squared() {
        // Q(t) over Q(t^2): t -> t and t -> -t.
        let tw = q_t();
        let img = tw.var(0).pow(2);
        let sub = SubfieldSpec::from_transcendentals(&tw, &[img]).unwrap();
        let a = analyze_over(&tw, &sub).unwrap();
        assert_eq!(a.degree, 2);
        assert_eq!(a.embeddings.len(), 2);
        assert!(a.is_galois());
        assert!(a.embeddings[0].is_identity());
        assert_eq!(a.embeddings[1].var_images()[0], tw.var(0).neg());
        // The non-identity map squares to the identity.
        let sq = a.embeddings[1].compose(&a.embeddings[1]).unwrap();
        assert!(sq.is_identity());
    }

    #[test]
    fn non_normal_cubic_base_change() {
        // Q(t) over Q(t^3 + t): only the identity survives.
        let tw = q_t();
        let img = tw.var(0).pow(3).add(&tw.var(0)).unwrap();
        let sub = SubfieldSpec::from_transcendentals(&tw, &[img]).unwrap();
        let a = analyze_over(&tw, &sub).unwrap();
        assert_eq!(a.degree, 3);
        assert_eq!(a.embeddings.len(), 1);
        assert!(!a.is_galois());
        // The chain records the non-splitting cubic.
        assert!(a.chain_minpolys.iter().any(|m| m.degree() == 3));
    }

    #[test]
    fn number_field_tower_automorphisms() {
        // Q[sqrt2, sqrt3]: Klein four over Q.
        let q = FieldTower::rational(Vec::new()).unwrap();
        let t1 = q.extend("a", &qp(&q, &[-2, 0, 1])).unwrap();
        let t2 = t1.extend("b", &qp(&t1, &[-3, 0, 1])).unwrap();
        let sub = SubfieldSpec::from_transcendentals(&t2, &[]).unwrap();
        let g = automorphism_group(&t2, &sub).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_latin_square());
    }

    #[test]
    fn embedding_render_and_apply() {
        let tw = tower_sqrt2_sqrtt();
        let g = automorphism_group(&tw, &default_sub(&tw)).unwrap();
        let renders: Vec<String> = g.elements.iter().map(|e| e.render()).collect();
        assert_eq!(renders[0], "a -> a, b -> b");
        assert!(renders.contains(&"a -> -a, b -> b".to_string()));
        // Applying the a -> -a, b -> b map to a*b gives -a*b.
        let sigma = g
            .elements
            .iter()
            .find(|e| e.render() == "a -> -a, b -> b")
            .unwrap();
        let ab = tw.gen(0).mul(&tw.gen(1)).unwrap();
        assert_eq!(sigma.apply(&ab).unwrap(), ab.neg());
    }

    #[test]
    fn rejects_invalid_images() {
        let tw = tower_sqrt2_sqrtt();
        // a -> b does not satisfy X^2 - 2.
        let r = Embedding::from_images(
            &tw,
            vec![tw.var(0)],
            vec![tw.gen(1), tw.gen(1)],
        );
        assert!(matches!(r, Err(QueryError::RelationCheckFailed { .. })));
    }
}
