//! Finite V-normed categories.
//!
//! A normed category is a finite category with a norm on every morphism,
//! `k <= |1_a|` and `|g| ⊗ |f| <= |g∘f|`. Distributors `E ⇸ A` are normed
//! set valued functors on `A`; the decision of Lawvere completeness reduces
//! to idempotent splitting in the strict part plus a presentable-unit check
//! on every normed left adjoint.

mod adjunction;
mod coend;
mod distributor;
mod lawvere;

pub use adjunction::{
    canonical_certificate, check_adjunction_cert, check_normed_retract, find_representation,
    has_presentable_unit, AdjunctionCertificate, PresentableUnit, Retract,
};
pub use coend::{coend_unit, Coend};
pub use distributor::{
    i_embed_coweight, i_embed_weight, isbell_conjugate_ndist, nat_transformations,
    representable_contravariant, representable_covariant, validate_ndist, IsbellConjugate,
    NatSet, NormedDistributor, Variance,
};
pub use lawvere::{
    enumerate_normed_left_adjoints, idempotent_distributor, is_lawvere_complete_ncat,
    NcatCertificate, NcatLawvereVerdict,
};

use crate::category::{FiniteCategory, Morphism};
use crate::error::{Result, Violation};
use crate::quantale::Quantale;
use crate::vcat::VCategory;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormedCategory<E> {
    pub category: FiniteCategory,
    pub norms: Vec<E>,
}

impl<E: Clone> NormedCategory<E> {
    pub fn new(category: FiniteCategory, norms: Vec<E>) -> Result<Self> {
        if norms.len() != category.morphism_count() {
            return Err(crate::Error::Shape("one norm per morphism".into()));
        }
        Ok(NormedCategory { category, norms })
    }

    pub fn norm(&self, f: usize) -> &E {
        &self.norms[f]
    }
}

/// Category laws, `k <= |1_a|` and `|g| ⊗ |f| <= |g∘f|`.
pub fn validate_ncat<Q: Quantale>(q: &Q, a: &NormedCategory<Q::Elem>) -> std::result::Result<(), Violation> {
    let c = &a.category;
    c.validate()?;
    for &i in &c.identities {
        if !q.above_unit(a.norm(i)) {
            return Err(Violation::new("identity norm", vec![c.name(i).into()]));
        }
    }
    for f in 0..c.morphism_count() {
        for g in c.homs_from(c.cod(f)) {
            let gf = c.comp(g, f);
            if !q.leq(&q.tensor(a.norm(g), a.norm(f)), a.norm(gf)) {
                return Err(Violation::new("submultiplicativity", vec![c.name(g).into(), c.name(f).into()]));
            }
        }
    }
    Ok(())
}

/// Object and morphism maps of a functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormedFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// Functoriality and `|f| <= |Ff|`.
pub fn validate_nfunctor<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    b: &NormedCategory<Q::Elem>,
    f: &NormedFunctor,
) -> std::result::Result<(), Violation> {
    let (ca, cb) = (&a.category, &b.category);
    if f.objects.len() != ca.object_count()
        || f.morphisms.len() != ca.morphism_count()
        || f.objects.iter().any(|&x| x >= cb.object_count())
        || f.morphisms.iter().any(|&x| x >= cb.morphism_count())
    {
        return Err(Violation::new("functor shape", vec![]));
    }
    for h in 0..ca.morphism_count() {
        let fh = f.morphisms[h];
        if cb.dom(fh) != f.objects[ca.dom(h)] || cb.cod(fh) != f.objects[ca.cod(h)] {
            return Err(Violation::new("functor typing", vec![ca.name(h).into()]));
        }
    }
    for (x, &i) in ca.identities.iter().enumerate() {
        if f.morphisms[i] != cb.identities[f.objects[x]] {
            return Err(Violation::new("functor identity", vec![ca.objects[x].clone()]));
        }
    }
    for h in 0..ca.morphism_count() {
        for g in ca.homs_from(ca.cod(h)) {
            if f.morphisms[ca.comp(g, h)] != cb.comp(f.morphisms[g], f.morphisms[h]) {
                return Err(Violation::new("functor composition", vec![ca.name(g).into(), ca.name(h).into()]));
            }
        }
        if !q.leq(a.norm(h), b.norm(f.morphisms[h])) {
            return Err(Violation::new("functor norm", vec![ca.name(h).into()]));
        }
    }
    Ok(())
}

/// The wide subcategory `A_∘` of morphisms with `k <= |f|`, with its
/// embedding. Closure is verified.
pub fn strict_subcategory<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
) -> std::result::Result<(FiniteCategory, Vec<usize>), Violation> {
    let keep: Vec<bool> = a.norms.iter().map(|n| q.above_unit(n)).collect();
    a.category.subcategory(&keep)
}

/// `(s̄A)(a, b) = ⋁_{f: a -> b} |f|`.
pub fn sup_change_of_base<Q: Quantale>(q: &Q, a: &NormedCategory<Q::Elem>) -> VCategory<Q::Elem> {
    let c = &a.category;
    let n = c.object_count();
    let dist = (0..n)
        .map(|x| (0..n).map(|y| q.join(c.hom(x, y).iter().map(|&f| a.norm(f).clone()))).collect())
        .collect();
    VCategory::new(c.objects.clone(), dist).expect("square")
}

/// One arrow `(x, y)` for every pair, normed by `X(x, y)`; the arrow
/// `(x, y)` has index `x * n + y`.
pub fn i_embed_cat<E: Clone>(x: &VCategory<E>) -> NormedCategory<E> {
    let n = x.len();
    let mut morphisms = Vec::with_capacity(n * n);
    let mut norms = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            morphisms.push(Morphism { name: format!("({},{})", x.objects[a], x.objects[b]), dom: a, cod: b });
            norms.push(x.d(a, b).clone());
        }
    }
    let m = n * n;
    let mut compose = vec![vec![None; m]; m];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                compose[b * n + c][a * n + b] = Some(a * n + c);
            }
        }
    }
    let identities = (0..n).map(|a| a * n + a).collect();
    let category = FiniteCategory::new(x.objects.clone(), morphisms, identities, compose).expect("codiscrete");
    NormedCategory { category, norms }
}
