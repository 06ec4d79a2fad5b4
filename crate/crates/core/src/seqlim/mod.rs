//! Sequences with a constant tail and their normed colimits.
//!
//! A presentation lists `A_0 -> ... -> A_{N0-1} -> T` explicitly and then
//! repeats a tail endomorphism `t: T -> T`. Powers of `t` on a finite object
//! are eventually periodic (transient `μ`, period `p`), so every infinite
//! meet or join over the sequence reduces to a window of length
//! `N0 + μ + p`.

mod colimit;
mod metric;
mod verify;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

pub use colimit::{
    colimit_dset, colimit_ncat, colimit_nset, colimit_vlip, pair_map, pair_sequence, pair_set, set_colimit,
    DsetColimit, NsetColimit, SetColimit,
};
pub use metric::{
    dset_norm, forward_cauchy_metric, forward_limit_metric, lipschitz_multiplicative, log_lipschitz, LogNorm,
    MetricSequence,
};
pub use verify::{verify_dset_colimit, verify_ncat_colimit, verify_nset_colimit, Clause, ColimitReport};

use crate::error::{Error, Result};
use crate::ncat::NormedCategory;
use crate::normed_set::{check_map, map_norm, NormedSet};
use crate::quantale::Quantale;
use crate::vcat::VCategory;

/// A category in which sequences live, with the norm of its morphisms.
pub trait Ambient<Q: Quantale> {
    type Object: Clone + Debug;
    type Map: Clone + Eq + Hash + Debug;

    fn identity(&self, x: &Self::Object) -> Self::Map;
    /// `g∘f`.
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Self::Map;
    fn norm(&self, q: &Q, f: &Self::Map, src: &Self::Object, tgt: &Self::Object) -> Q::Elem;
    fn check_map(&self, f: &Self::Map, src: &Self::Object, tgt: &Self::Object) -> Result<()>;
}

fn compose_fn(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// Normed sets with all maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct NSet;

impl<Q: Quantale> Ambient<Q> for NSet {
    type Object = NormedSet<Q::Elem>;
    type Map = Vec<usize>;

    fn identity(&self, x: &Self::Object) -> Vec<usize> {
        (0..x.len()).collect()
    }

    fn compose(&self, g: &Vec<usize>, f: &Vec<usize>) -> Vec<usize> {
        compose_fn(g, f)
    }

    fn norm(&self, q: &Q, f: &Vec<usize>, src: &Self::Object, tgt: &Self::Object) -> Q::Elem {
        map_norm(q, src, tgt, f)
    }

    fn check_map(&self, f: &Vec<usize>, src: &Self::Object, tgt: &Self::Object) -> Result<()> {
        check_map(src, tgt, f)
    }
}

/// Distance sets with all maps, normed by `⋀ [X(x, x'), Y(fx, fx')]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DSet;

impl<Q: Quantale> Ambient<Q> for DSet {
    type Object = VCategory<Q::Elem>;
    type Map = Vec<usize>;

    fn identity(&self, x: &Self::Object) -> Vec<usize> {
        (0..x.len()).collect()
    }

    fn compose(&self, g: &Vec<usize>, f: &Vec<usize>) -> Vec<usize> {
        compose_fn(g, f)
    }

    fn norm(&self, q: &Q, f: &Vec<usize>, src: &Self::Object, tgt: &Self::Object) -> Q::Elem {
        dset_norm(q, src, tgt, f)
    }

    fn check_map(&self, f: &Vec<usize>, src: &Self::Object, tgt: &Self::Object) -> Result<()> {
        if f.len() != src.len() || f.iter().any(|&y| y >= tgt.len()) {
            return Err(Error::Shape(format!("map of {} points into {} points is ill-typed", src.len(), tgt.len())));
        }
        Ok(())
    }
}

/// A finite normed category; objects and maps are indices.
#[derive(Debug, Clone, Copy)]
pub struct NCat<'a, E>(pub &'a NormedCategory<E>);

impl<'a, Q: Quantale> Ambient<Q> for NCat<'a, Q::Elem> {
    type Object = usize;
    type Map = usize;

    fn identity(&self, x: &usize) -> usize {
        self.0.category.identities[*x]
    }

    fn compose(&self, g: &usize, f: &usize) -> usize {
        self.0.category.comp(*g, *f)
    }

    fn norm(&self, _: &Q, f: &usize, _: &usize, _: &usize) -> Q::Elem {
        self.0.norm(*f).clone()
    }

    fn check_map(&self, f: &usize, src: &usize, tgt: &usize) -> Result<()> {
        let c = &self.0.category;
        if *f >= c.morphism_count() || c.dom(*f) != *src || c.cod(*f) != *tgt {
            return Err(Error::Shape(format!("morphism {} does not go from object {} to object {}", f, src, tgt)));
        }
        Ok(())
    }
}

/// `A_n` and `s_{n,n+1}` for `n < N0`, then `T` with `t` forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence<O, M> {
    pub prefix: Vec<(O, M)>,
    pub tail: O,
    pub endo: M,
}

impl<O, M> Sequence<O, M> {
    /// `N0`.
    pub fn start(&self) -> usize {
        self.prefix.len()
    }

    pub fn object(&self, n: usize) -> &O {
        self.prefix.get(n).map_or(&self.tail, |p| &p.0)
    }

    pub fn step(&self, n: usize) -> &M {
        self.prefix.get(n).map_or(&self.endo, |p| &p.1)
    }
}

pub fn validate_sequence<Q: Quantale, A: Ambient<Q>>(amb: &A, seq: &Sequence<A::Object, A::Map>) -> Result<()> {
    for n in 0..=seq.start() {
        amb.check_map(seq.step(n), seq.object(n), seq.object(n + 1))?;
    }
    Ok(())
}

/// `t^d` for `d < μ + p`, with `t^{μ+p} = t^μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailPowers<M> {
    pub powers: Vec<M>,
    pub transient: usize,
    pub period: usize,
}

impl<M> TailPowers<M> {
    /// Exponent with the same power as `d`.
    pub fn reduce(&self, d: usize) -> usize {
        if d < self.transient + self.period {
            d
        } else {
            self.transient + (d - self.transient) % self.period
        }
    }
}

pub fn tail_powers<Q: Quantale, A: Ambient<Q>>(amb: &A, seq: &Sequence<A::Object, A::Map>) -> TailPowers<A::Map> {
    let mut seen: HashMap<A::Map, usize> = HashMap::new();
    let mut powers = Vec::new();
    let mut cur = amb.identity(&seq.tail);
    loop {
        if let Some(&mu) = seen.get(&cur) {
            let period = powers.len() - mu;
            return TailPowers { powers, transient: mu, period };
        }
        seen.insert(cur.clone(), powers.len());
        powers.push(cur.clone());
        cur = amb.compose(&seq.endo, &cur);
    }
}

/// `|s_{m,n}|` on the window that determines it everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormProfile<E> {
    pub start: usize,
    pub transient: usize,
    pub period: usize,
    /// `prefix[m][j] = |s_{m,m+j}|` for `m < N0`, `m + j < N0 + μ + p`.
    pub prefix: Vec<Vec<E>>,
    /// `tail[d] = |t^d|` for `d < μ + p`.
    pub tail: Vec<E>,
}

impl<E: Clone> NormProfile<E> {
    fn window_end(&self) -> usize {
        self.start + self.transient + self.period
    }

    /// `|s_{m,n}|` for any `m <= n`.
    pub fn norm(&self, m: usize, n: usize) -> E {
        assert!(m <= n);
        let reduce = |d: usize| {
            if d < self.transient + self.period {
                d
            } else {
                self.transient + (d - self.transient) % self.period
            }
        };
        if m >= self.start {
            self.tail[reduce(n - m)].clone()
        } else if n < self.window_end() {
            self.prefix[m][n - m].clone()
        } else {
            let n = self.start + reduce(n - self.start);
            self.prefix[m][n - m].clone()
        }
    }
}

pub fn norm_profile<Q: Quantale, A: Ambient<Q>>(
    q: &Q,
    amb: &A,
    seq: &Sequence<A::Object, A::Map>,
) -> NormProfile<Q::Elem> {
    let tp = tail_powers(amb, seq);
    let tail = tp.powers.iter().map(|t| amb.norm(q, t, &seq.tail, &seq.tail)).collect();
    let end = seq.start() + tp.transient + tp.period;
    let prefix = (0..seq.start())
        .map(|m| {
            let src = seq.object(m);
            let mut cur = amb.identity(src);
            let mut row = Vec::with_capacity(end - m);
            for n in m..end {
                row.push(amb.norm(q, &cur, src, seq.object(n)));
                cur = amb.compose(seq.step(n), &cur);
            }
            row
        })
        .collect();
    NormProfile { start: seq.start(), transient: tp.transient, period: tp.period, prefix, tail }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyVerdict<E> {
    pub cauchy: bool,
    /// `⋁_N ⋀_{N <= m <= n} |s_{m,n}|`.
    pub value: E,
}

/// Evaluates `⋁_N ⋀_{N <= m <= n} |s_{m,n}|` exactly and compares with `k`.
pub fn is_cauchy<Q: Quantale>(q: &Q, profile: &NormProfile<Q::Elem>) -> CauchyVerdict<Q::Elem> {
    let tail = q.meet(profile.tail.iter().cloned());
    let end = profile.window_end();
    let row_meet: Vec<Q::Elem> = (0..profile.start)
        .map(|m| q.meet((m..end).map(|n| profile.prefix[m][n - m].clone())))
        .collect();
    let mut suffix = tail;
    let mut value = suffix.clone();
    for m in (0..profile.start).rev() {
        suffix = q.meet2(&suffix, &row_meet[m]);
        value = q.join2(&value, &suffix);
    }
    CauchyVerdict { cauchy: q.above_unit(&value), value }
}

/// Components `γ_n`: explicit below `start`, then periodic with period
/// `periodic.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone<M> {
    pub start: usize,
    pub prefix: Vec<M>,
    pub periodic: Vec<M>,
}

impl<M> Cocone<M> {
    pub fn period(&self) -> usize {
        self.periodic.len()
    }

    pub fn component(&self, n: usize) -> &M {
        if n < self.start {
            &self.prefix[n]
        } else {
            &self.periodic[(n - self.start) % self.periodic.len()]
        }
    }
}

/// `⋁_N ⋀_{n >= N} v(n)` for `v` periodic with period `p` from `s` on.
pub(crate) fn liminf<Q: Quantale>(q: &Q, s: usize, p: usize, v: impl Fn(usize) -> Q::Elem) -> Q::Elem {
    let vals: Vec<Q::Elem> = (0..s + p).map(v).collect();
    let mut suffix = q.meet(vals[s..].iter().cloned());
    let mut out = suffix.clone();
    for n in (0..s).rev() {
        suffix = q.meet2(&suffix, &vals[n]);
        out = q.join2(&out, &suffix);
    }
    out
}
