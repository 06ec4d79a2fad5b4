use super::{NormedCategory, NormedDistributor, Variance};
use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::unionfind::DisjointSets;

/// Quotient of `Σ_b Ψ(b) × Φ(b)` by `(v, Φ(h)u) ~ (Ψ(h)v, u)`, with class
/// norms `⋁ |v| ⊗ |u|` over representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coend<E> {
    offsets: Vec<usize>,
    widths: Vec<usize>,
    /// Class of every flat pair.
    pub class_of: Vec<usize>,
    pub norms: Vec<E>,
}

impl<E: Clone> Coend<E> {
    pub fn classes(&self) -> usize {
        self.norms.len()
    }

    /// Flat index of `(v, u)` at object `b`.
    pub fn index(&self, b: usize, v: usize, u: usize) -> usize {
        self.offsets[b] + v * self.widths[b] + u
    }

    pub fn class(&self, b: usize, v: usize, u: usize) -> usize {
        self.class_of[self.index(b, v, u)]
    }

    /// Members `(b, v, u)` of a class in flat order.
    pub fn representatives(&self, class: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.offsets.len() {
            let w = self.widths[b];
            let size = if b + 1 < self.offsets.len() { self.offsets[b + 1] } else { self.class_of.len() } - self.offsets[b];
            for i in 0..size {
                if self.class_of[self.offsets[b] + i] == class {
                    out.push((b, i / w, i % w));
                }
            }
        }
        out
    }
}

/// `∫^b Ψ(b) ⊗ Φ(b)` for contravariant `Ψ` and covariant `Φ`.
pub fn coend_unit<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    psi: &NormedDistributor<Q::Elem>,
    phi: &NormedDistributor<Q::Elem>,
) -> Result<Coend<Q::Elem>> {
    if psi.variance != Variance::Contravariant || phi.variance != Variance::Covariant {
        return Err(Error::Shape("coend needs a contravariant and a covariant distributor".into()));
    }
    let c = &a.category;
    let n = c.object_count();
    let mut offsets = Vec::with_capacity(n);
    let widths: Vec<usize> = (0..n).map(|b| phi.sets[b].len()).collect();
    let mut payload = Vec::new();
    for b in 0..n {
        offsets.push(payload.len());
        for v in 0..psi.sets[b].len() {
            for u in 0..widths[b] {
                payload.push(q.tensor(psi.sets[b].norm(v), phi.sets[b].norm(u)));
            }
        }
    }
    let mut sets = DisjointSets::new(payload);
    let at = |b: usize, v: usize, u: usize| offsets[b] + v * widths[b] + u;
    for h in 0..c.morphism_count() {
        let (b, b2) = (c.dom(h), c.cod(h));
        for v in 0..psi.sets[b2].len() {
            for u in 0..widths[b] {
                let left = at(b2, v, phi.action[h][u]);
                let right = at(b, psi.action[h][v], u);
                sets.union_with(left, right, |x, y| q.join2(x, y));
            }
        }
    }
    let (class_of, norms) = sets.classes();
    Ok(Coend { offsets, widths, class_of, norms })
}
