use super::{
    coend_unit, isbell_conjugate_ndist, nat_transformations, representable_covariant, NormedCategory,
    NormedDistributor, Variance,
};
use crate::budget::Budget;
use crate::error::{Error, Result, Violation};
use crate::quantale::Quantale;

/// Counit `ε_{a,b}: Φ(b) × Ψ(a) -> A(a, b)` and a unit representative
/// `(v, u)` at `object`, with `u ∈ Φ(object)` and `v ∈ Ψ(object)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionCertificate<E> {
    pub phi: NormedDistributor<E>,
    pub psi: NormedDistributor<E>,
    /// `counit[a][b][y * |Ψ(a)| + x]` is a morphism id of `A(a, b)`.
    pub counit: Vec<Vec<Vec<usize>>>,
    pub object: usize,
    pub u: usize,
    pub v: usize,
}

impl<E: Clone> AdjunctionCertificate<E> {
    pub fn eps(&self, a: usize, b: usize, y: usize, x: usize) -> usize {
        self.counit[a][b][y * self.psi.sets[a].len() + x]
    }
}

fn check_shapes<E: Clone>(a: &NormedCategory<E>, cert: &AdjunctionCertificate<E>) -> Result<()> {
    let c = &a.category;
    let n = c.object_count();
    if cert.phi.variance != Variance::Covariant || cert.psi.variance != Variance::Contravariant {
        return Err(Error::Shape("certificate needs Φ covariant and Ψ contravariant".into()));
    }
    if cert.phi.sets.len() != n || cert.psi.sets.len() != n || cert.counit.len() != n {
        return Err(Error::Shape("certificate does not match the category".into()));
    }
    for x in 0..n {
        if cert.counit[x].len() != n {
            return Err(Error::Shape("counit family is not square".into()));
        }
        for y in 0..n {
            let want = cert.phi.sets[y].len() * cert.psi.sets[x].len();
            let row = &cert.counit[x][y];
            if row.len() != want || row.iter().any(|&f| f >= c.morphism_count() || c.dom(f) != x || c.cod(f) != y) {
                return Err(Error::Shape(format!("counit at ({}, {}) is not into the hom-set", c.objects[x], c.objects[y])));
            }
        }
    }
    if cert.object >= n || cert.u >= cert.phi.sets[cert.object].len() || cert.v >= cert.psi.sets[cert.object].len() {
        return Err(Error::Shape("unit representative out of range".into()));
    }
    Ok(())
}

/// Naturality of the counit, both splitting equations, and with `normed`
/// also `|y| ⊗ |x| <= |ε(y, x)|` and `k <= |[(v, u)]|`. Returns every failed
/// clause with its first witness.
pub fn check_adjunction_cert<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    cert: &AdjunctionCertificate<Q::Elem>,
    normed: bool,
) -> Result<Vec<Violation>> {
    check_shapes(a, cert)?;
    let c = &a.category;
    let n = c.object_count();
    let (phi, psi) = (&cert.phi, &cert.psi);
    let mut out = Vec::new();
    let mut fail = |law: &str, w: Vec<String>| {
        if !out.iter().any(|v: &Violation| v.law == law) {
            out.push(Violation::new(law, w));
        }
    };
    let name = |f: usize| c.name(f).to_string();
    let obj = |x: usize| c.objects[x].clone();

    for x in 0..n {
        for b in 0..n {
            for y in 0..phi.sets[b].len() {
                for xe in 0..psi.sets[x].len() {
                    let e = cert.eps(x, b, y, xe);
                    for h in c.homs_from(b) {
                        if cert.eps(x, c.cod(h), phi.apply(h, y), xe) != c.comp(h, e) {
                            fail("counit naturality in b", vec![obj(x), obj(b), name(h), y.to_string(), xe.to_string()]);
                        }
                    }
                    for g in (0..c.morphism_count()).filter(|&g| c.cod(g) == x) {
                        if cert.eps(c.dom(g), b, y, psi.apply(g, xe)) != c.comp(e, g) {
                            fail("counit naturality in a", vec![obj(x), obj(b), name(g), y.to_string(), xe.to_string()]);
                        }
                    }
                    if normed {
                        let lhs = q.tensor(phi.sets[b].norm(y), psi.sets[x].norm(xe));
                        if !q.leq(&lhs, a.norm(e)) {
                            fail("counit norm", vec![obj(x), obj(b), y.to_string(), xe.to_string()]);
                        }
                    }
                }
            }
        }
    }
    let (cc, u, v) = (cert.object, cert.u, cert.v);
    for x in 0..n {
        for xe in 0..psi.sets[x].len() {
            if psi.apply(cert.eps(x, cc, u, xe), v) != xe {
                fail("left splitting", vec![obj(x), xe.to_string()]);
            }
        }
    }
    for b in 0..n {
        for y in 0..phi.sets[b].len() {
            if phi.apply(cert.eps(cc, b, y, v), u) != y {
                fail("right splitting", vec![obj(b), y.to_string()]);
            }
        }
    }
    if normed {
        let co = coend_unit(q, a, psi, phi)?;
        let norm = &co.norms[co.class(cc, v, u)];
        if !q.above_unit(norm) {
            fail("unit norm", vec![q.format(norm)]);
        }
    }
    Ok(out)
}

/// The certificate for `Φ ⊣ Φ∨` with the evaluation counit
/// `ε_{a,b}(y, β) = β_b(y)` and the first unit representative in
/// declaration order satisfying both splitting equations. `None` when `Φ` is
/// not a left adjoint at the level of sets.
pub fn canonical_certificate<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
) -> Result<Option<AdjunctionCertificate<Q::Elem>>> {
    if phi.variance != Variance::Covariant {
        return Err(Error::Shape("left adjoints E ⇸ A are covariant".into()));
    }
    let c = &a.category;
    let n = c.object_count();
    let conj = isbell_conjugate_ndist(q, a, phi, budget)?;
    let counit: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|b| {
                    let mut row = Vec::with_capacity(phi.sets[b].len() * conj.transformations[x].len());
                    for y in 0..phi.sets[b].len() {
                        for beta in &conj.transformations[x] {
                            row.push(c.hom(x, b)[beta[b][y]]);
                        }
                    }
                    row
                })
                .collect()
        })
        .collect();
    let mut cert = AdjunctionCertificate { phi: phi.clone(), psi: conj.dist, counit, object: 0, u: 0, v: 0 };
    for cc in 0..n {
        for u in 0..cert.phi.sets[cc].len() {
            for v in 0..cert.psi.sets[cc].len() {
                cert.object = cc;
                cert.u = u;
                cert.v = v;
                let left = (0..n).all(|x| {
                    (0..cert.psi.sets[x].len()).all(|xe| cert.psi.apply(cert.eps(x, cc, u, xe), v) == xe)
                });
                let right = left
                    && (0..n).all(|b| {
                        (0..cert.phi.sets[b].len()).all(|y| cert.phi.apply(cert.eps(cc, b, y, v), u) == y)
                    });
                if right {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentableUnit<E> {
    pub presentable: bool,
    /// `(object, u, v)` with `k <= |u|` and `k <= |v|`.
    pub witness: Option<(usize, usize, usize)>,
    pub unit_norm: E,
    pub certificate: AdjunctionCertificate<E>,
}

/// Scans the unit class of the canonical adjunction `Φ ⊣ Φ∨` for a
/// representative with both components above `k`. Fails unless `Φ` is a
/// normed left adjoint.
pub fn has_presentable_unit<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
) -> Result<PresentableUnit<Q::Elem>> {
    let cert = canonical_certificate(q, a, phi, budget)?
        .ok_or_else(|| Error::Precondition("the distributor is not a left adjoint".into()))?;
    let co = coend_unit(q, a, &cert.psi, &cert.phi)?;
    let class = co.class(cert.object, cert.v, cert.u);
    let unit_norm = co.norms[class].clone();
    if !q.above_unit(&unit_norm) {
        return Err(Error::Precondition(format!(
            "the unit class has norm {}, not above the unit",
            q.format(&unit_norm)
        )));
    }
    let witness = co
        .representatives(class)
        .into_iter()
        .find(|&(b, v, u)| q.above_unit(cert.phi.sets[b].norm(u)) && q.above_unit(cert.psi.sets[b].norm(v)))
        .map(|(b, v, u)| (b, u, v));
    Ok(PresentableUnit { presentable: witness.is_some(), witness, unit_norm, certificate: cert })
}

/// `α: A(a, -) -> Φ` and `β: Φ -> A(a, -)` with `|α|, |β| >= k` and
/// `αβ = 1_Φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retract {
    pub object: usize,
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
}

fn search_retract<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
    iso: bool,
) -> Result<Option<Retract>> {
    if phi.variance != Variance::Covariant {
        return Err(Error::Shape("retracts of representables A(a, -) are covariant".into()));
    }
    let n = a.category.object_count();
    for x in 0..n {
        let rep = representable_covariant(a, x);
        let alphas = nat_transformations(q, a, &rep, phi, budget)?;
        let betas = nat_transformations(q, a, phi, &rep, budget)?;
        let normed = |s: &super::NatSet<Q::Elem>| -> Vec<usize> {
            (0..s.len()).filter(|&i| q.above_unit(&s.set.norms[i])).collect()
        };
        let (ai, bi) = (normed(&alphas), normed(&betas));
        for &i in &ai {
            let alpha = &alphas.components[i];
            for &j in &bi {
                let beta = &betas.components[j];
                let retract = (0..n).all(|b| (0..phi.sets[b].len()).all(|w| alpha[b][beta[b][w]] == w));
                let section = !iso || (0..n).all(|b| (0..rep.sets[b].len()).all(|f| beta[b][alpha[b][f]] == f));
                if retract && section {
                    return Ok(Some(Retract { object: x, alpha: alpha.clone(), beta: beta.clone() }));
                }
            }
        }
    }
    Ok(None)
}

/// A normed retract of a representable, searched over all objects and all
/// normed transformations.
pub fn check_normed_retract<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
) -> Result<Option<Retract>> {
    search_retract(q, a, phi, budget, false)
}

/// A normed isomorphism `Φ ≅ A(a, -)`.
pub fn find_representation<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
    budget: &Budget,
) -> Result<Option<Retract>> {
    search_retract(q, a, phi, budget, true)
}
