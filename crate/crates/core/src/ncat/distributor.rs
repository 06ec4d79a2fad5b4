use std::collections::HashMap;

use super::NormedCategory;
use crate::budget::{functions, Budget, Meter};
use crate::error::{Error, Result, Violation};
use crate::normed_set::{map_norm, NormedSet};
use crate::quantale::Quantale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `E ⇸ A`: `Φ(h): Φ(a) -> Φ(b)` for `h: a -> b`.
    Covariant,
    /// `A ⇸ E`: `Ψ(h): Ψ(b) -> Ψ(a)` for `h: a -> b`.
    Contravariant,
}

/// A normed-set valued functor on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormedDistributor<E> {
    pub variance: Variance,
    pub sets: Vec<NormedSet<E>>,
    pub action: Vec<Vec<usize>>,
}

impl<E: Clone> NormedDistributor<E> {
    /// Object whose set the action of `h` reads from.
    pub fn source_of<F>(&self, a: &NormedCategory<F>, h: usize) -> usize {
        match self.variance {
            Variance::Covariant => a.category.dom(h),
            Variance::Contravariant => a.category.cod(h),
        }
    }

    pub fn target_of<F>(&self, a: &NormedCategory<F>, h: usize) -> usize {
        match self.variance {
            Variance::Covariant => a.category.cod(h),
            Variance::Contravariant => a.category.dom(h),
        }
    }

    pub fn apply(&self, h: usize, x: usize) -> usize {
        self.action[h][x]
    }

    pub fn with_norms(&self, norms: &[Vec<E>]) -> Self {
        NormedDistributor {
            variance: self.variance,
            sets: self.sets.iter().zip(norms).map(|(s, n)| s.with_norms(n.clone())).collect(),
            action: self.action.clone(),
        }
    }
}

/// Shapes, functoriality of the action and `|h| <= |Φ(h)|`.
pub fn validate_ndist<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
) -> std::result::Result<(), Violation> {
    let c = &a.category;
    if phi.sets.len() != c.object_count() || phi.action.len() != c.morphism_count() {
        return Err(Violation::new("distributor shape", vec![]));
    }
    for h in 0..c.morphism_count() {
        let (s, t) = (phi.source_of(a, h), phi.target_of(a, h));
        let f = &phi.action[h];
        if f.len() != phi.sets[s].len() || f.iter().any(|&y| y >= phi.sets[t].len()) {
            return Err(Violation::new("action shape", vec![c.name(h).into()]));
        }
    }
    for (x, &i) in c.identities.iter().enumerate() {
        if phi.action[i].iter().enumerate().any(|(j, &y)| j != y) {
            return Err(Violation::new("action identity", vec![c.objects[x].clone()]));
        }
    }
    for f in 0..c.morphism_count() {
        for g in c.homs_from(c.cod(f)) {
            let gf = &phi.action[c.comp(g, f)];
            let ok = match phi.variance {
                Variance::Covariant => gf.iter().enumerate().all(|(x, &y)| phi.action[g][phi.action[f][x]] == y),
                Variance::Contravariant => {
                    gf.iter().enumerate().all(|(x, &y)| phi.action[f][phi.action[g][x]] == y)
                }
            };
            if !ok {
                return Err(Violation::new("action composition", vec![c.name(g).into(), c.name(f).into()]));
            }
        }
    }
    for h in 0..c.morphism_count() {
        let (s, t) = (phi.source_of(a, h), phi.target_of(a, h));
        let n = map_norm(q, &phi.sets[s], &phi.sets[t], &phi.action[h]);
        if !q.leq(a.norm(h), &n) {
            return Err(Violation::new("action norm", vec![c.name(h).into()]));
        }
    }
    Ok(())
}

/// `A(a, -)`, acting by postcomposition. Elements of `A(a, b)` are listed in
/// the order of `hom(a, b)`.
pub fn representable_covariant<E: Clone>(a: &NormedCategory<E>, x: usize) -> NormedDistributor<E> {
    let c = &a.category;
    let sets = (0..c.object_count())
        .map(|b| {
            let hs = c.hom(x, b);
            NormedSet::new(hs.iter().map(|&f| c.name(f).to_string()).collect(), hs.iter().map(|&f| a.norm(f).clone()).collect())
        })
        .collect();
    let action = (0..c.morphism_count())
        .map(|h| c.hom(x, c.dom(h)).iter().map(|&f| c.position(c.comp(h, f))).collect())
        .collect();
    NormedDistributor { variance: Variance::Covariant, sets, action }
}

/// `A(-, a)`, acting by precomposition.
pub fn representable_contravariant<E: Clone>(a: &NormedCategory<E>, x: usize) -> NormedDistributor<E> {
    let c = &a.category;
    let sets = (0..c.object_count())
        .map(|b| {
            let hs = c.hom(b, x);
            NormedSet::new(hs.iter().map(|&f| c.name(f).to_string()).collect(), hs.iter().map(|&f| a.norm(f).clone()).collect())
        })
        .collect();
    let action = (0..c.morphism_count())
        .map(|h| c.hom(c.cod(h), x).iter().map(|&g| c.position(c.comp(g, h))).collect())
        .collect();
    NormedDistributor { variance: Variance::Contravariant, sets, action }
}

fn singletons<E: Clone, F>(a: &NormedCategory<F>, values: &[E], variance: Variance) -> NormedDistributor<E> {
    NormedDistributor {
        variance,
        sets: values.iter().map(|v| NormedSet::new(vec!["*".into()], vec![v.clone()])).collect(),
        action: vec![vec![0]; a.category.morphism_count()],
    }
}

/// A weight of a V-category as a distributor on its one-arrow embedding.
pub fn i_embed_weight<E: Clone>(a: &NormedCategory<E>, phi: &[E]) -> NormedDistributor<E> {
    singletons(a, phi, Variance::Covariant)
}

/// A coweight of a V-category as a distributor on its one-arrow embedding.
pub fn i_embed_coweight<E: Clone>(a: &NormedCategory<E>, psi: &[E]) -> NormedDistributor<E> {
    singletons(a, psi, Variance::Contravariant)
}

/// Natural transformations with their norms `⋀_b |α_b|`; `components[t][b]`
/// is the map `Φ(b) -> Φ'(b)` of transformation `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatSet<E> {
    pub set: NormedSet<E>,
    pub components: Vec<Vec<Vec<usize>>>,
}

impl<E> NatSet<E> {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// All natural transformations `Φ -> Φ'`, by backtracking over objects in
/// declaration order; naturality squares are checked as soon as both ends
/// are assigned. Each candidate component counts against the budget.
pub fn nat_transformations<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    psi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
) -> Result<NatSet<Q::Elem>> {
    if phi.variance != psi.variance {
        return Err(Error::Shape("natural transformations between distributors of different variance".into()));
    }
    let c = &a.category;
    let n = c.object_count();
    // squares[b]: morphisms whose later endpoint is b
    let mut squares = vec![Vec::new(); n];
    for h in 0..c.morphism_count() {
        squares[c.dom(h).max(c.cod(h))].push(h);
    }
    let natural = |assigned: &[Vec<usize>], h: usize| {
        let (s, t) = (phi.source_of(a, h), phi.target_of(a, h));
        (0..phi.sets[s].len()).all(|x| assigned[t][phi.action[h][x]] == psi.action[h][assigned[s][x]])
    };
    let mut meter = Meter::new("natural transformations", budget);
    let mut out = Vec::new();
    let mut assigned: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn go<F: Fn(&[Vec<usize>], usize) -> bool, E: Clone>(
        b: usize,
        n: usize,
        phi: &NormedDistributor<E>,
        psi: &NormedDistributor<E>,
        squares: &[Vec<usize>],
        natural: &F,
        assigned: &mut Vec<Vec<usize>>,
        meter: &mut Meter,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) -> Result<()> {
        if b == n {
            out.push(assigned.clone());
            return Ok(());
        }
        for f in functions(phi.sets[b].len(), psi.sets[b].len()) {
            meter.tick()?;
            assigned.push(f);
            if squares[b].iter().all(|&h| natural(assigned, h)) {
                go(b + 1, n, phi, psi, squares, natural, assigned, meter, out)?;
            }
            assigned.pop();
        }
        Ok(())
    }
    go(0, n, phi, psi, &squares, &natural, &mut assigned, &mut meter, &mut out)?;
    let norms = out
        .iter()
        .map(|alpha| q.meet((0..n).map(|b| map_norm(q, &phi.sets[b], &psi.sets[b], &alpha[b]))))
        .collect();
    let ids = (0..out.len()).map(|i| format!("nat{}", i)).collect();
    Ok(NatSet { set: NormedSet::new(ids, norms), components: out })
}

/// `Φ∨` with the transformations that make up each `Φ∨(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsbellConjugate<E> {
    pub dist: NormedDistributor<E>,
    /// `transformations[a][β][b]` is the component `β_b`, valued in
    /// positions of the representable at `a`.
    pub transformations: Vec<Vec<Vec<Vec<usize>>>>,
}

/// `Φ∨(a) = Nat(Φ, A(a, -))` for covariant `Φ`, acting by precomposition;
/// dually `Ψ∨(a) = Nat(Ψ, A(-, a))` for contravariant `Ψ`, acting by
/// postcomposition.
pub fn isbell_conjugate_ndist<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
) -> Result<IsbellConjugate<Q::Elem>> {
    let c = &a.category;
    let n = c.object_count();
    let mut sets = Vec::with_capacity(n);
    let mut transformations = Vec::with_capacity(n);
    let mut lookup: Vec<HashMap<Vec<Vec<usize>>, usize>> = Vec::with_capacity(n);
    for x in 0..n {
        let rep = match phi.variance {
            Variance::Covariant => representable_covariant(a, x),
            Variance::Contravariant => representable_contravariant(a, x),
        };
        let nat = nat_transformations(q, a, phi, &rep, budget)?;
        lookup.push(nat.components.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect());
        sets.push(nat.set);
        transformations.push(nat.components);
    }
    let mut action = Vec::with_capacity(c.morphism_count());
    for h in 0..c.morphism_count() {
        // β at the source object of the conjugate's action, β' at the target.
        let (from, to) = match phi.variance {
            Variance::Covariant => (c.cod(h), c.dom(h)),
            Variance::Contravariant => (c.dom(h), c.cod(h)),
        };
        let mut row = Vec::with_capacity(transformations[from].len());
        for beta in &transformations[from] {
            let moved: Vec<Vec<usize>> = (0..n)
                .map(|b| {
                    beta[b]
                        .iter()
                        .map(|&p| match phi.variance {
                            Variance::Covariant => {
                                let f = c.hom(from, b)[p];
                                c.position(c.comp(f, h))
                            }
                            Variance::Contravariant => {
                                let f = c.hom(b, from)[p];
                                c.position(c.comp(h, f))
                            }
                        })
                        .collect()
                })
                .collect();
            let idx = *lookup[to]
                .get(&moved)
                .ok_or_else(|| Error::Invalid("conjugate action left the natural transformations".into()))?;
            row.push(idx);
        }
        action.push(row);
    }
    let variance = match phi.variance {
        Variance::Covariant => Variance::Contravariant,
        Variance::Contravariant => Variance::Covariant,
    };
    Ok(IsbellConjugate { dist: NormedDistributor { variance, sets, action }, transformations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncat::fixtures::*;
    use crate::ncat::i_embed_cat;
    use crate::quantale::FiniteQuantale;
    use crate::vcat::{isbell_conjugate_weight, VCategory};

    fn fq(name: &str) -> FiniteQuantale {
        FiniteQuantale::builtin(name).unwrap()
    }

    #[test]
    fn representables_are_distributors() {
        let q = fq("bool2");
        for a in [monoid(1, 1), monoid(1, 0)] {
            for x in 0..a.category.object_count() {
                assert!(validate_ndist(&q, &a, &representable_covariant(&a, x)).is_ok());
                assert!(validate_ndist(&q, &a, &representable_contravariant(&a, x)).is_ok());
            }
        }
        let s = split([1, 1, 1, 0, 1]);
        for x in 0..2 {
            assert!(validate_ndist(&q, &s, &representable_covariant(&s, x)).is_ok());
            assert!(validate_ndist(&q, &s, &representable_contravariant(&s, x)).is_ok());
        }
    }

    #[test]
    fn broken_action_is_reported() {
        let q = fq("bool2");
        let a = monoid(1, 1);
        let mut d = representable_covariant(&a, 0);
        d.action[1] = vec![0, 1];
        assert!(validate_ndist(&q, &a, &d).is_ok());
        d.action[0] = vec![1, 0];
        assert_eq!(validate_ndist(&q, &a, &d).unwrap_err().law, "action identity");
        let mut d = representable_covariant(&a, 0);
        d.sets[0].norms = vec![1, 0];
        assert_eq!(validate_ndist(&q, &a, &d).unwrap_err().law, "action norm");
    }

    #[test]
    fn identity_transformation_is_normed() {
        let q = fq("bool2");
        let a = monoid(1, 1);
        let phi = representable_covariant(&a, 0);
        let nat = nat_transformations(&q, &a, &phi, &phi, &Budget::default()).unwrap();
        let id = nat.components.iter().position(|t| t[0] == vec![0, 1]).unwrap();
        assert!(q.above_unit(&nat.set.norms[id]));
    }

    #[test]
    fn yoneda_matches_morphisms() {
        // Nat(A(a, -), A(a', -)) ≅ A(a', a) with |α| = |u|.
        let q = fq("bool2");
        let a = split([1, 0, 1, 1, 0]);
        let c = &a.category;
        for x in 0..2 {
            for y in 0..2 {
                let nat = nat_transformations(
                    &q,
                    &a,
                    &representable_covariant(&a, x),
                    &representable_covariant(&a, y),
                    &Budget::default(),
                )
                .unwrap();
                assert_eq!(nat.len(), c.hom(y, x).len());
                for (t, comps) in nat.components.iter().enumerate() {
                    let u = c.hom(y, x)[comps[x][c.position(c.identities[x])]];
                    assert_eq!(nat.set.norms[t], *a.norm(u));
                }
            }
        }
    }

    #[test]
    fn empty_sets_give_one_transformation() {
        let q = fq("chain3");
        let a = monoid(2, 2);
        let empty = NormedDistributor {
            variance: Variance::Covariant,
            sets: vec![NormedSet::empty()],
            action: vec![vec![], vec![]],
        };
        let nat = nat_transformations(&q, &a, &empty, &representable_covariant(&a, 0), &Budget::default()).unwrap();
        assert_eq!(nat.len(), 1);
        assert_eq!(nat.set.norms, vec![q.top()]);
    }

    #[test]
    fn isbell_of_representable_is_representable() {
        let q = fq("bool2");
        let a = split([1, 0, 1, 1, 0]);
        for x in 0..2 {
            let conj = isbell_conjugate_ndist(&q, &a, &representable_covariant(&a, x), &Budget::default()).unwrap();
            let rep = representable_contravariant(&a, x);
            assert!(validate_ndist(&q, &a, &conj.dist).is_ok());
            for b in 0..2 {
                let mut got = conj.dist.sets[b].norms.clone();
                let mut want = rep.sets[b].norms.clone();
                got.sort();
                want.sort();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn isbell_matches_v_level_on_embeddings() {
        let q = fq("chain3");
        let x = VCategory::from_matrix(vec![vec![2, 1], vec![0, 2]]);
        let a = i_embed_cat(&x);
        for phi in [vec![2, 2], vec![1, 2], vec![0, 1], vec![0, 0]] {
            let d = i_embed_weight(&a, &phi);
            let conj = isbell_conjugate_ndist(&q, &a, &d, &Budget::default()).unwrap();
            let v = isbell_conjugate_weight(&q, &x, &phi);
            for b in 0..2 {
                assert_eq!(conj.dist.sets[b].norms, vec![v[b]]);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let q = fq("bool2");
        let a = split([1, 1, 1, 1, 1]);
        let phi = representable_covariant(&a, 0);
        let tiny = Budget::default().with_enumeration(2);
        assert!(nat_transformations(&q, &a, &phi, &phi, &tiny).unwrap_err().is_budget());
    }
}
