//! V-categories, V-functors and V-distributors as matrices.
//!
//! A distributor `φ: X ⇸ Y` is a matrix `φ[x][y]`, contravariant in `x` and
//! covariant in `y`. Weights `E ⇸ X` and coweights `X ⇸ E` are vectors.

use rayon::prelude::*;

use crate::budget::{decode, Budget};
use crate::error::{Error, Result, Violation};
use crate::quantale::{FiniteQuantale, Quantale};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VCategory<E> {
    pub objects: Vec<String>,
    pub dist: Vec<Vec<E>>,
}

impl<E: Clone> VCategory<E> {
    pub fn new(objects: Vec<String>, dist: Vec<Vec<E>>) -> Result<Self> {
        let n = objects.len();
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("distance matrix must be {}x{}", n, n)));
        }
        Ok(VCategory { objects, dist })
    }

    /// Objects named `x0, x1, ...`.
    pub fn from_matrix(dist: Vec<Vec<E>>) -> Self {
        let objects = (0..dist.len()).map(|i| format!("x{}", i)).collect();
        VCategory::new(objects, dist).expect("square matrix")
    }
}

impl<E> VCategory<E> {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn d(&self, x: usize, y: usize) -> &E {
        &self.dist[x][y]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }
}

impl<E: Clone + PartialEq> VCategory<E> {
    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.dist[x][y] == self.dist[y][x]))
    }
}

/// `k <= X(x, x)` and `X(y, z) ⊗ X(x, y) <= X(x, z)`.
pub fn validate_vcat<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>) -> std::result::Result<(), Violation> {
    let n = x.len();
    let name = |i: usize| x.objects[i].clone();
    for a in 0..n {
        if !q.above_unit(x.d(a, a)) {
            return Err(Violation::new("reflexivity", vec![name(a)]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !q.leq(&q.tensor(x.d(b, c), x.d(a, b)), x.d(a, c)) {
                    return Err(Violation::new("transitivity", vec![name(a), name(b), name(c)]));
                }
            }
        }
    }
    Ok(())
}

/// `X(x, x') <= Y(fx, fx')`.
pub fn validate_vfunctor<Q: Quantale>(
    q: &Q,
    x: &VCategory<Q::Elem>,
    y: &VCategory<Q::Elem>,
    f: &[usize],
) -> std::result::Result<(), Violation> {
    if f.len() != x.len() || f.iter().any(|&b| b >= y.len()) {
        return Err(Violation::new("object map shape", vec![]));
    }
    for a in 0..x.len() {
        for b in 0..x.len() {
            if !q.leq(x.d(a, b), y.d(f[a], f[b])) {
                return Err(Violation::new("monotonicity", vec![x.objects[a].clone(), x.objects[b].clone()]));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VDistributor<E> {
    pub values: Vec<Vec<E>>,
}

impl<E: Clone> VDistributor<E> {
    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn at(&self, x: usize, y: usize) -> &E {
        &self.values[x][y]
    }

    fn shape(&self, rows: usize, cols: usize) -> bool {
        self.values.len() == rows && self.values.iter().all(|r| r.len() == cols)
    }
}

/// `Y(y, y') ⊗ φ(x, y) ⊗ X(x', x) <= φ(x', y')`.
pub fn validate_vdist<Q: Quantale>(
    q: &Q,
    x: &VCategory<Q::Elem>,
    y: &VCategory<Q::Elem>,
    phi: &VDistributor<Q::Elem>,
) -> std::result::Result<(), Violation> {
    if !phi.shape(x.len(), y.len()) {
        return Err(Violation::new("distributor shape", vec![]));
    }
    for a in 0..x.len() {
        for a2 in 0..x.len() {
            for b in 0..y.len() {
                for b2 in 0..y.len() {
                    let lhs = q.tensor(&q.tensor(y.d(b, b2), phi.at(a, b)), x.d(a2, a));
                    if !q.leq(&lhs, phi.at(a2, b2)) {
                        return Err(Violation::new(
                            "bimodule",
                            vec![x.objects[a].clone(), x.objects[a2].clone(), y.objects[b].clone(), y.objects[b2].clone()],
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The identity distributor `X(-, -)`.
pub fn identity_dist<E: Clone>(x: &VCategory<E>) -> VDistributor<E> {
    VDistributor { values: x.dist.clone() }
}

/// `(ψ·φ)(x, z) = ⋁_y ψ(y, z) ⊗ φ(x, y)`.
pub fn compose_vdist<Q: Quantale>(
    q: &Q,
    psi: &VDistributor<Q::Elem>,
    phi: &VDistributor<Q::Elem>,
) -> Result<VDistributor<Q::Elem>> {
    let mid = psi.rows();
    if phi.values.iter().any(|r| r.len() != mid) {
        return Err(Error::Shape(format!(
            "left factor has {} rows, right factor has columns of another length",
            mid
        )));
    }
    let cols = psi.values.first().map_or(0, |r| r.len());
    if psi.values.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape("ragged distributor".into()));
    }
    let values = phi
        .values
        .iter()
        .map(|row| {
            (0..cols)
                .map(|z| q.join((0..mid).map(|y| q.tensor(psi.at(y, z), &row[y]))))
                .collect()
        })
        .collect();
    Ok(VDistributor { values })
}

/// `f_*(x, y) = Y(fx, y)`.
pub fn f_lower<E: Clone>(y: &VCategory<E>, f: &[usize]) -> VDistributor<E> {
    VDistributor {
        values: f.iter().map(|&fx| (0..y.len()).map(|b| y.d(fx, b).clone()).collect()).collect(),
    }
}

/// `f^*(y, x) = Y(y, fx)`.
pub fn f_upper<E: Clone>(y: &VCategory<E>, f: &[usize]) -> VDistributor<E> {
    VDistributor {
        values: (0..y.len()).map(|b| f.iter().map(|&fx| y.d(b, fx).clone()).collect()).collect(),
    }
}

/// `φ ⊣ ψ` for `φ: X ⇸ Y`, `ψ: Y ⇸ X`: `X <= ψ·φ` and `φ·ψ <= Y`.
pub fn is_adjoint_dist<Q: Quantale>(
    q: &Q,
    x: &VCategory<Q::Elem>,
    y: &VCategory<Q::Elem>,
    phi: &VDistributor<Q::Elem>,
    psi: &VDistributor<Q::Elem>,
) -> Result<bool> {
    let unit = compose_vdist(q, psi, phi)?;
    let counit = compose_vdist(q, phi, psi)?;
    if !unit.shape(x.len(), x.len()) || !counit.shape(y.len(), y.len()) {
        return Err(Error::Shape("adjoint pair between other categories".into()));
    }
    let below = |a: &VDistributor<Q::Elem>, b: &Vec<Vec<Q::Elem>>| {
        a.values.iter().zip(b).all(|(r, s)| r.iter().zip(s).all(|(u, v)| q.leq(u, v)))
    };
    Ok(below(&identity_dist(x), &unit.values) && below(&counit, &y.dist))
}

/// A weight `φ: E ⇸ X` and a coweight `ψ: X ⇸ E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VWeightPair<E> {
    pub phi: Vec<E>,
    pub psi: Vec<E>,
}

/// `X(x, x') ⊗ φ(x) <= φ(x')`.
pub fn validate_weight<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, phi: &[Q::Elem]) -> std::result::Result<(), Violation> {
    if phi.len() != x.len() {
        return Err(Violation::new("weight shape", vec![]));
    }
    for a in 0..x.len() {
        for b in 0..x.len() {
            if !q.leq(&q.tensor(x.d(a, b), &phi[a]), &phi[b]) {
                return Err(Violation::new("weight", vec![x.objects[a].clone(), x.objects[b].clone()]));
            }
        }
    }
    Ok(())
}

/// `ψ(x) ⊗ X(x', x) <= ψ(x')`.
pub fn validate_coweight<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, psi: &[Q::Elem]) -> std::result::Result<(), Violation> {
    if psi.len() != x.len() {
        return Err(Violation::new("coweight shape", vec![]));
    }
    for a in 0..x.len() {
        for b in 0..x.len() {
            if !q.leq(&q.tensor(&psi[a], x.d(b, a)), &psi[b]) {
                return Err(Violation::new("coweight", vec![x.objects[a].clone(), x.objects[b].clone()]));
            }
        }
    }
    Ok(())
}

/// `k <= ⋁_c ψ(c) ⊗ φ(c)` and `φ(b) ⊗ ψ(a) <= X(a, b)`.
pub fn check_adjoint<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, pair: &VWeightPair<Q::Elem>) -> bool {
    let n = x.len();
    if pair.phi.len() != n || pair.psi.len() != n {
        return false;
    }
    let unit = q.join((0..n).map(|c| q.tensor(&pair.psi[c], &pair.phi[c])));
    q.above_unit(&unit)
        && (0..n).all(|a| (0..n).all(|b| q.leq(&q.tensor(&pair.phi[b], &pair.psi[a]), x.d(a, b))))
}

/// `φ∨(a) = ⋀_b [φ(b), X(a, b)]`.
pub fn isbell_conjugate_weight<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, phi: &[Q::Elem]) -> Vec<Q::Elem> {
    (0..x.len())
        .map(|a| q.meet((0..x.len()).map(|b| q.hom(&phi[b], x.d(a, b)))))
        .collect()
}

/// `ψ∨(b) = ⋀_a [ψ(a), X(a, b)]`.
pub fn isbell_conjugate_coweight<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, psi: &[Q::Elem]) -> Vec<Q::Elem> {
    (0..x.len())
        .map(|b| q.meet((0..x.len()).map(|a| q.hom(&psi[a], x.d(a, b)))))
        .collect()
}

/// `X(a, -)`.
pub fn representable_weight<E: Clone>(x: &VCategory<E>, a: usize) -> Vec<E> {
    x.dist[a].clone()
}

/// `X(-, a)`.
pub fn representable_coweight<E: Clone>(x: &VCategory<E>, a: usize) -> Vec<E> {
    (0..x.len()).map(|b| x.d(b, a).clone()).collect()
}

/// An object `a` with `k <= φ(a)` and `k <= ψ(a)`; for an adjoint pair this
/// exists iff the pair is representable.
pub fn is_representable<Q: Quantale>(
    q: &Q,
    x: &VCategory<Q::Elem>,
    pair: &VWeightPair<Q::Elem>,
) -> Result<Option<usize>> {
    if !check_adjoint(q, x, pair) {
        return Err(Error::Precondition("the weight pair is not adjoint".into()));
    }
    Ok((0..x.len()).find(|&a| q.above_unit(&pair.phi[a]) && q.above_unit(&pair.psi[a])))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VLawvereVerdict<E> {
    pub complete: bool,
    pub candidates: u64,
    /// Adjoint pairs found, each with a witness; counted only when complete.
    pub adjoint_pairs: u64,
    pub counterexample: Option<VWeightPair<E>>,
}

fn candidate<E: Clone>(carrier: &[E], n: usize, index: u64) -> VWeightPair<E> {
    let mut digits = Vec::with_capacity(2 * n);
    decode(index, carrier.len(), 2 * n, &mut digits);
    VWeightPair {
        phi: digits[..n].iter().map(|&i| carrier[i].clone()).collect(),
        psi: digits[n..].iter().map(|&i| carrier[i].clone()).collect(),
    }
}

fn is_adjoint_pair<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, p: &VWeightPair<Q::Elem>) -> bool {
    validate_weight(q, x, &p.phi).is_ok()
        && validate_coweight(q, x, &p.psi).is_ok()
        && check_adjoint(q, x, p)
}

/// Every adjoint weight pair over `X` is representable. Candidates are
/// scanned in index order; the first non-representable adjoint pair is the
/// certificate.
pub fn lawvere_complete_vcat<Q: Quantale>(
    q: &Q,
    x: &VCategory<Q::Elem>,
    budget: &Budget,
) -> Result<VLawvereVerdict<Q::Elem>> {
    let carrier = q.carrier().ok_or(Error::InfiniteCarrier)?;
    let n = x.len();
    let total = budget.power("adjoint pair candidates", carrier.len(), 2 * n)?;
    let bad = (0..total).into_par_iter().find_map_first(|i| {
        let p = candidate(&carrier, n, i);
        let witnessed = (0..n).any(|a| q.above_unit(&p.phi[a]) && q.above_unit(&p.psi[a]));
        (!witnessed && is_adjoint_pair(q, x, &p)).then_some(p)
    });
    let adjoint_pairs = if bad.is_none() {
        (0..total)
            .into_par_iter()
            .filter(|&i| is_adjoint_pair(q, x, &candidate(&carrier, n, i)))
            .count() as u64
    } else {
        0
    };
    Ok(VLawvereVerdict {
        complete: bad.is_none(),
        candidates: total,
        adjoint_pairs,
        counterexample: bad,
    })
}

/// All adjoint weight pairs over `X`, in candidate order.
pub fn adjoint_pairs<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, budget: &Budget) -> Result<Vec<VWeightPair<Q::Elem>>> {
    let carrier = q.carrier().ok_or(Error::InfiniteCarrier)?;
    let n = x.len();
    let total = budget.power("adjoint pair candidates", carrier.len(), 2 * n)?;
    Ok((0..total)
        .into_par_iter()
        .map(|i| candidate(&carrier, n, i))
        .filter(|p| is_adjoint_pair(q, x, p))
        .collect())
}

/// Every V-category on `n` objects over a finite quantale, in index order.
pub fn enumerate_vcategories<Q: Quantale>(q: &Q, n: usize, budget: &Budget) -> Result<Vec<VCategory<Q::Elem>>> {
    let carrier = q.carrier().ok_or(Error::InfiniteCarrier)?;
    let total = budget.power("distance matrices", carrier.len(), n * n)?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|i| {
            let mut digits = Vec::with_capacity(n * n);
            decode(i, carrier.len(), n * n, &mut digits);
            let dist = (0..n)
                .map(|a| (0..n).map(|b| carrier[digits[a * n + b]].clone()).collect())
                .collect();
            let x = VCategory::from_matrix(dist);
            validate_vcat(q, &x).is_ok().then_some(x)
        })
        .collect())
}

/// `k ⋘ k` in a finite quantale.
pub fn totally_compact_unit(q: &FiniteQuantale, budget: &Budget) -> Result<bool> {
    q.totally_compact_unit(budget)
}
