//! Lawvere completeness of a finite normed category: the strict part is
//! idempotent complete, and every normed left adjoint `E ⇸ A` has a
//! presentable unit.
//!
//! Left adjoints are enumerated up to isomorphism as `Φ_e(b) = {f | f∘e = f}`
//! for the idempotents `e` of the underlying category, with every norm
//! assignment on the elements. The underlying distributor of a left adjoint
//! is a retract of a representable, hence isomorphic to some `Φ_e`, and the
//! presentable-unit property transports along isomorphisms.

use rayon::prelude::*;

use super::{
    canonical_certificate, coend_unit, isbell_conjugate_ndist, strict_subcategory, validate_ncat,
    IsbellConjugate, NormedCategory, NormedDistributor, Variance,
};
use crate::budget::{decode, Budget};
use crate::error::{Error, Result};
use crate::normed_set::{map_norm, NormedSet};
use crate::quantale::Quantale;

/// `Φ_e` for an idempotent `e: a -> a`, with norms from `norm(b, i)` for
/// the `i`-th element of `Φ_e(b)`.
pub fn idempotent_distributor<E: Clone, F>(
    a: &NormedCategory<F>,
    e: usize,
    norm: &dyn Fn(usize, usize) -> E,
) -> NormedDistributor<E> {
    let c = &a.category;
    let x = c.dom(e);
    let members: Vec<Vec<usize>> = (0..c.object_count())
        .map(|b| c.hom(x, b).iter().copied().filter(|&f| c.comp(f, e) == f).collect())
        .collect();
    let sets = members
        .iter()
        .enumerate()
        .map(|(b, fs)| {
            NormedSet::new(
                fs.iter().map(|&f| c.name(f).to_string()).collect(),
                (0..fs.len()).map(|i| norm(b, i)).collect(),
            )
        })
        .collect();
    let action = (0..c.morphism_count())
        .map(|h| {
            let to = &members[c.cod(h)];
            members[c.dom(h)]
                .iter()
                .map(|&f| to.iter().position(|&g| g == c.comp(h, f)).expect("closed under postcomposition"))
                .collect()
        })
        .collect();
    NormedDistributor { variance: Variance::Covariant, sets, action }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NcatCertificate<E> {
    Complete {
        idempotents: usize,
        assignments: u64,
        left_adjoints: u64,
    },
    /// An idempotent of the strict part without a splitting; a morphism id
    /// of the whole category.
    NonSplit { idempotent: usize },
    /// A normed left adjoint whose unit is not presentable.
    NoPresentableUnit {
        idempotent: usize,
        distributor: NormedDistributor<E>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcatLawvereVerdict<E> {
    pub complete: bool,
    pub certificate: NcatCertificate<E>,
}

/// Everything about `Φ_e` that does not depend on the norms.
struct Skeleton<E> {
    idempotent: usize,
    plain: NormedDistributor<E>,
    conj: IsbellConjugate<E>,
    /// `(b, v, u)` members of the unit class.
    unit_class: Vec<(usize, usize, usize)>,
    sizes: Vec<usize>,
}

enum Outcome {
    NotLeftAdjoint,
    Presentable,
    NotPresentable,
}

impl<E: Clone + Send + Sync> Skeleton<E> {
    fn new<Q: Quantale<Elem = E>>(q: &Q, a: &NormedCategory<E>, e: usize, budget: &Budget) -> Result<Self> {
        let top = q.top();
        let plain = idempotent_distributor(a, e, &|_, _| top.clone());
        let cert = canonical_certificate(q, a, &plain, budget)?
            .ok_or_else(|| Error::Invalid("a retract of a representable must be a left adjoint".into()))?;
        let conj = isbell_conjugate_ndist(q, a, &plain, budget)?;
        let coend = coend_unit(q, a, &conj.dist, &plain)?;
        let unit_class = coend.representatives(coend.class(cert.object, cert.v, cert.u));
        let sizes = plain.sets.iter().map(|s| s.len()).collect();
        Ok(Skeleton { idempotent: e, plain, conj, unit_class, sizes })
    }

    fn elements(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn norms_for(&self, carrier: &[E], index: u64) -> Vec<Vec<E>> {
        let mut digits = Vec::new();
        decode(index, carrier.len(), self.elements(), &mut digits);
        let mut it = digits.into_iter();
        self.sizes
            .iter()
            .map(|&s| (0..s).map(|_| carrier[it.next().expect("one digit per element")].clone()).collect())
            .collect()
    }

    fn classify<Q: Quantale<Elem = E>>(&self, q: &Q, a: &NormedCategory<E>, norms: &[Vec<E>]) -> Outcome {
        let c = &a.category;
        let phi = self.plain.with_norms(norms);
        for h in 0..c.morphism_count() {
            let (s, t) = (c.dom(h), c.cod(h));
            if !q.leq(a.norm(h), &map_norm(q, &phi.sets[s], &phi.sets[t], &phi.action[h])) {
                return Outcome::NotLeftAdjoint;
            }
        }
        // |β| = ⋀_b ⋀_w [|w|, |β_b(w)|]
        let beta_norm = |x: usize, beta: usize| {
            let comps = &self.conj.transformations[x][beta];
            q.meet((0..c.object_count()).flat_map(|b| {
                let phi = &phi;
                (0..phi.sets[b].len()).map(move |w| {
                    let f = c.hom(x, b)[comps[b][w]];
                    q.hom(phi.sets[b].norm(w), a.norm(f))
                })
            }))
        };
        let mut unit = q.bottom();
        let mut presentable = false;
        for &(b, v, u) in &self.unit_class {
            let nv = beta_norm(b, v);
            let nu = phi.sets[b].norm(u);
            unit = q.join2(&unit, &q.tensor(&nv, nu));
            presentable |= q.above_unit(&nv) && q.above_unit(nu);
        }
        if !q.above_unit(&unit) {
            Outcome::NotLeftAdjoint
        } else if presentable {
            Outcome::Presentable
        } else {
            Outcome::NotPresentable
        }
    }
}

fn skeletons<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    budget: &Budget,
) -> Result<(Vec<Q::Elem>, Vec<Skeleton<Q::Elem>>)> {
    let carrier = q.carrier().ok_or(Error::InfiniteCarrier)?;
    let idem = a.category.idempotents();
    let mut out = Vec::with_capacity(idem.len());
    for (i, &e) in idem.iter().enumerate() {
        let s = Skeleton::new(q, a, e, budget)?;
        budget.power("norm assignments", carrier.len(), s.elements()).map_err(|_| {
            Error::budget(
                format!("norm assignments for idempotent {} ({} of {} idempotents)", a.category.name(e), i + 1, idem.len()),
                format!("{}^{}", carrier.len(), s.elements()),
                budget.enumeration,
            )
        })?;
        out.push(s);
    }
    Ok((carrier, out))
}

/// Decides Lawvere completeness; the certificate names the first violation
/// in declaration order.
pub fn is_lawvere_complete_ncat<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    budget: &Budget,
) -> Result<NcatLawvereVerdict<Q::Elem>> {
    validate_ncat(q, a).map_err(|v| Error::Precondition(format!("not a normed category: {}", v)))?;
    let (strict, embedding) =
        strict_subcategory(q, a).map_err(|v| Error::Precondition(format!("strict part is not a category: {}", v)))?;
    let split = strict.split_idempotents_check();
    if let Some(e) = split.unsplit {
        return Ok(NcatLawvereVerdict {
            complete: false,
            certificate: NcatCertificate::NonSplit { idempotent: embedding[e] },
        });
    }
    let (carrier, skels) = skeletons(q, a, budget)?;
    let mut assignments = 0;
    let mut left_adjoints = 0;
    for s in &skels {
        let total = (carrier.len() as u64).pow(s.elements() as u32);
        assignments += total;
        let bad = (0..total).into_par_iter().find_map_first(|i| {
            let norms = s.norms_for(&carrier, i);
            matches!(s.classify(q, a, &norms), Outcome::NotPresentable).then_some(norms)
        });
        if let Some(norms) = bad {
            return Ok(NcatLawvereVerdict {
                complete: false,
                certificate: NcatCertificate::NoPresentableUnit {
                    idempotent: s.idempotent,
                    distributor: s.plain.with_norms(&norms),
                },
            });
        }
        left_adjoints += (0..total)
            .into_par_iter()
            .filter(|&i| !matches!(s.classify(q, a, &s.norms_for(&carrier, i)), Outcome::NotLeftAdjoint))
            .count() as u64;
    }
    Ok(NcatLawvereVerdict {
        complete: true,
        certificate: NcatCertificate::Complete { idempotents: skels.len(), assignments, left_adjoints },
    })
}

/// Every `(e, Φ_e with norms)` that is a normed left adjoint, in search order.
pub fn enumerate_normed_left_adjoints<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    budget: &Budget,
) -> Result<Vec<(usize, NormedDistributor<Q::Elem>)>> {
    let (carrier, skels) = skeletons(q, a, budget)?;
    let mut out = Vec::new();
    for s in &skels {
        let total = (carrier.len() as u64).pow(s.elements() as u32);
        let found: Vec<_> = (0..total)
            .into_par_iter()
            .filter_map(|i| {
                let norms = s.norms_for(&carrier, i);
                (!matches!(s.classify(q, a, &norms), Outcome::NotLeftAdjoint))
                    .then(|| (s.idempotent, s.plain.with_norms(&norms)))
            })
            .collect();
        out.extend(found);
    }
    Ok(out)
}
