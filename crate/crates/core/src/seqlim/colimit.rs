//! Colimits of eventually constant sequences in nSet, DSet and V-Lip, and
//! the search for normed colimits in a finite normed category.
//!
//! The point set is the quotient of `Σ_{n <= L} A_n`, `L = N0 + μ + p`, by
//! `a ~ s_n(a)` and the closing identification `x@L ~ x@(N0 + μ)`; the
//! closing identification is sound because `t^{μ+p} = t^μ`.

use std::collections::{HashMap, HashSet};

use super::{
    is_cauchy, norm_profile, validate_sequence, verify_ncat_colimit, Cocone, DSet, NCat, NSet,
    Sequence,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ncat::NormedCategory;
use crate::normed_set::{check_set, NormedSet};
use crate::quantale::Quantale;
use crate::unionfind::DisjointSets;
use crate::vcat::{validate_vcat, VCategory};

/// `(μ, p)` of the powers of an endofunction.
fn function_period(endo: &[usize]) -> (usize, usize) {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut cur: Vec<usize> = (0..endo.len()).collect();
    let mut d = 0;
    loop {
        if let Some(&mu) = seen.get(&cur) {
            return (mu, d - mu);
        }
        seen.insert(cur.clone(), d);
        cur = cur.iter().map(|&x| endo[x]).collect();
        d += 1;
    }
}

/// The colimit of a sequence of finite sets with its colimit cocone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetColimit {
    pub size: usize,
    pub cocone: Cocone<Vec<usize>>,
    /// First `(level, element)` of each class.
    pub representatives: Vec<(usize, usize)>,
}

/// Objects are set sizes.
pub fn set_colimit(seq: &Sequence<usize, Vec<usize>>) -> Result<SetColimit> {
    for n in 0..=seq.start() {
        let (src, tgt, f) = (*seq.object(n), *seq.object(n + 1), seq.step(n));
        if f.len() != src || f.iter().any(|&y| y >= tgt) {
            return Err(Error::Shape(format!("step {} is not a map from {} to {} elements", n, src, tgt)));
        }
    }
    let (mu, p) = function_period(&seq.endo);
    let top = seq.start() + mu + p;
    let mut offsets = Vec::with_capacity(top + 2);
    let mut total = 0;
    for n in 0..=top {
        offsets.push(total);
        total += *seq.object(n);
    }
    let mut uf = DisjointSets::plain(total);
    for n in 0..top {
        for (a, &b) in seq.step(n).iter().enumerate() {
            uf.union(offsets[n] + a, offsets[n + 1] + b);
        }
    }
    let back = seq.start() + mu;
    for x in 0..seq.tail {
        uf.union(offsets[top] + x, offsets[back] + x);
    }
    let (labels, _) = uf.classes();
    let size = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut representatives = vec![(usize::MAX, 0); size];
    for n in 0..=top {
        for a in 0..*seq.object(n) {
            let c = labels[offsets[n] + a];
            if representatives[c].0 == usize::MAX {
                representatives[c] = (n, a);
            }
        }
    }
    let level = |n: usize| labels[offsets[n]..offsets[n] + *seq.object(n)].to_vec();
    let cocone = Cocone {
        start: back,
        prefix: (0..back).map(level).collect(),
        periodic: (back..top).map(level).collect(),
    };
    Ok(SetColimit { size, cocone, representatives })
}

fn sizes<O, M: Clone>(seq: &Sequence<O, M>, len: impl Fn(&O) -> usize) -> Sequence<usize, M> {
    Sequence {
        prefix: seq.prefix.iter().map(|(o, m)| (len(o), m.clone())).collect(),
        tail: len(&seq.tail),
        endo: seq.endo.clone(),
    }
}

/// `⋀_{N <= s} ⋁_{n ∈ [N, s + p)} vals[n][i]` for each `i`.
fn limit_values<Q: Quantale>(q: &Q, s: usize, p: usize, vals: &[Vec<Q::Elem>], width: usize) -> Vec<Q::Elem> {
    (0..width)
        .map(|i| {
            let mut acc = q.bottom();
            let mut out = q.top();
            for n in (0..s + p).rev() {
                acc = q.join2(&acc, &vals[n][i]);
                if n <= s {
                    out = q.meet2(&out, &acc);
                }
            }
            out
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsetColimit<E> {
    pub set: NormedSet<E>,
    pub cocone: Cocone<Vec<usize>>,
    pub cauchy_value: E,
}

fn cauchy_or_reject<Q: Quantale, A: super::Ambient<Q>>(
    q: &Q,
    amb: &A,
    seq: &Sequence<A::Object, A::Map>,
) -> Result<Q::Elem> {
    let v = is_cauchy(q, &norm_profile(q, amb, seq));
    if v.cauchy {
        Ok(v.value)
    } else {
        Err(Error::NotCauchy { value: q.format(&v.value) })
    }
}

/// The normed colimit in nSet: the set colimit with
/// `|c| = ⋀_N ⋁_{n >= N} ⋁_{γ_n a = c} |a|`.
pub fn colimit_nset<Q: Quantale>(
    q: &Q,
    seq: &Sequence<NormedSet<Q::Elem>, Vec<usize>>,
) -> Result<NsetColimit<Q::Elem>> {
    validate_sequence::<Q, _>(&NSet, seq)?;
    for n in 0..=seq.start() {
        check_set(q, seq.object(n))?;
    }
    let cauchy_value = cauchy_or_reject(q, &NSet, seq)?;
    let sc = set_colimit(&sizes(seq, NormedSet::len))?;
    let (s, p) = (sc.cocone.start, sc.cocone.period());
    let vals: Vec<Vec<Q::Elem>> = (0..s + p)
        .map(|n| {
            let mut row = vec![q.bottom(); sc.size];
            for (a, &c) in sc.cocone.component(n).iter().enumerate() {
                row[c] = q.join2(&row[c], seq.object(n).norm(a));
            }
            row
        })
        .collect();
    let norms = limit_values(q, s, p, &vals, sc.size);
    let ids = sc.representatives.iter().map(|&(n, a)| format!("{}@{}", seq.object(n).ids[a], n)).collect();
    Ok(NsetColimit { set: NormedSet::new(ids, norms), cocone: sc.cocone, cauchy_value })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsetColimit<E> {
    pub space: VCategory<E>,
    pub cocone: Cocone<Vec<usize>>,
    pub cauchy_value: E,
}

fn dset_limit<Q: Quantale>(q: &Q, seq: &Sequence<VCategory<Q::Elem>, Vec<usize>>) -> Result<(VCategory<Q::Elem>, Cocone<Vec<usize>>)> {
    let sc = set_colimit(&sizes(seq, VCategory::len))?;
    let (s, p, w) = (sc.cocone.start, sc.cocone.period(), sc.size);
    let vals: Vec<Vec<Q::Elem>> = (0..s + p)
        .map(|n| {
            let g = sc.cocone.component(n);
            let x = seq.object(n);
            let mut row = vec![q.bottom(); w * w];
            for a in 0..x.len() {
                for b in 0..x.len() {
                    let i = g[a] * w + g[b];
                    row[i] = q.join2(&row[i], x.d(a, b));
                }
            }
            row
        })
        .collect();
    let flat = limit_values(q, s, p, &vals, w * w);
    let dist = flat.chunks(w.max(1)).take(w).map(|r| r.to_vec()).collect();
    let objects = sc.representatives.iter().map(|&(n, a)| format!("{}@{}", seq.object(n).objects[a], n)).collect();
    Ok((VCategory::new(objects, dist)?, sc.cocone))
}

/// The normed colimit in DSet, Cauchy in the DSet norm of `q`.
pub fn colimit_dset<Q: Quantale>(
    q: &Q,
    seq: &Sequence<VCategory<Q::Elem>, Vec<usize>>,
) -> Result<DsetColimit<Q::Elem>> {
    validate_sequence::<Q, _>(&DSet, seq)?;
    for n in 0..=seq.start() {
        seq.object(n).dist.iter().flatten().try_for_each(|v| q.check(v))?;
    }
    let cauchy_value = cauchy_or_reject(q, &DSet, seq)?;
    let (space, cocone) = dset_limit(q, seq)?;
    Ok(DsetColimit { space, cocone, cauchy_value })
}

/// The colimit of `V_⊗`-categories along maps Cauchy in the `⊙`-norm.
/// Refuses unless `⊙` shares the lattice of `⊗` and its unit is the join of
/// the elements totally below it; the result is re-validated as a
/// `V_⊗`-category.
pub fn colimit_vlip<Q: Quantale>(
    q_tensor: &Q,
    q_odot: &Q,
    seq: &Sequence<VCategory<Q::Elem>, Vec<usize>>,
    budget: &Budget,
) -> Result<DsetColimit<Q::Elem>> {
    if !q_tensor.same_lattice(q_odot) {
        return Err(Error::Precondition(format!(
            "{} and {} do not share a lattice",
            q_tensor.name(),
            q_odot.name()
        )));
    }
    if !q_odot.unit_approximated(budget)? {
        return Err(Error::Precondition(format!(
            "unit of {} is not the join of the elements totally below it (unit_approximated = false)",
            q_odot.name()
        )));
    }
    validate_sequence::<Q, _>(&DSet, seq)?;
    for n in 0..=seq.start() {
        let x = seq.object(n);
        x.dist.iter().flatten().try_for_each(|v| q_tensor.check(v))?;
        validate_vcat(q_tensor, x)
            .map_err(|v| Error::Precondition(format!("object {} of the sequence is not a V-category: {}", n, v)))?;
    }
    let cauchy_value = cauchy_or_reject(q_odot, &DSet, seq)?;
    let (space, cocone) = dset_limit(q_tensor, seq)?;
    if let Err(v) = validate_vcat(q_tensor, &space) {
        return Err(Error::Invalid(format!("colimit violates the V-category axioms: {}", v)));
    }
    Ok(DsetColimit { space, cocone, cauchy_value })
}

/// The normed set of ordered pairs `(x, y)` normed by `X(x, y)`; `(x, y)`
/// sits at `x * |X| + y`.
pub fn pair_set<E: Clone>(x: &VCategory<E>) -> NormedSet<E> {
    let n = x.len();
    let mut ids = Vec::with_capacity(n * n);
    let mut norms = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            ids.push(format!("({},{})", x.objects[a], x.objects[b]));
            norms.push(x.d(a, b).clone());
        }
    }
    NormedSet::new(ids, norms)
}

/// `f × f` on pair indices.
pub fn pair_map(f: &[usize], tgt_len: usize) -> Vec<usize> {
    let n = f.len();
    (0..n * n).map(|i| f[i / n] * tgt_len + f[i % n]).collect()
}

pub fn pair_sequence<E: Clone>(seq: &Sequence<VCategory<E>, Vec<usize>>) -> Sequence<NormedSet<E>, Vec<usize>> {
    Sequence {
        prefix: (0..seq.start())
            .map(|n| (pair_set(seq.object(n)), pair_map(seq.step(n), seq.object(n + 1).len())))
            .collect(),
        tail: pair_set(&seq.tail),
        endo: pair_map(&seq.endo, seq.tail.len()),
    }
}

/// Searches the objects of a finite normed category for a normed colimit.
/// A tail cocone into `x` is fixed by `γ_{N0}`, an element of the eventual
/// image of `g ↦ g∘t` on `hom(T, x)`; that map permutes the eventual image,
/// and `γ_{N0+j}` is the `j`-th preimage.
pub fn colimit_ncat<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    seq: &Sequence<usize, usize>,
) -> Result<Option<(usize, Cocone<usize>)>> {
    let amb = NCat(a);
    validate_sequence::<Q, _>(&amb, seq)?;
    let c = &a.category;
    let n0 = seq.start();
    for x in 0..c.object_count() {
        for g in eventual_image(a, seq.tail, seq.endo, x) {
            let mut orbit = vec![g];
            loop {
                let next = c.comp(*orbit.last().unwrap(), seq.endo);
                if next == g {
                    break;
                }
                orbit.push(next);
            }
            let r = orbit.len();
            let periodic = (0..r).map(|j| orbit[(r - j) % r]).collect();
            let mut prefix = vec![g; n0];
            for n in (0..n0).rev() {
                let next = if n + 1 == n0 { g } else { prefix[n + 1] };
                prefix[n] = c.comp(next, *seq.step(n));
            }
            let cocone = Cocone { start: n0, prefix, periodic };
            if verify_ncat_colimit(q, a, seq, x, &cocone)?.holds() {
                return Ok(Some((x, cocone)));
            }
        }
    }
    Ok(None)
}

/// Elements of `hom(T, y)` in the image of every power of `g ↦ g∘t`, in
/// hom order.
pub(crate) fn eventual_image<E>(a: &NormedCategory<E>, tail: usize, t: usize, y: usize) -> Vec<usize> {
    let c = &a.category;
    let hom = c.hom(tail, y);
    let mut image: HashSet<usize> = hom.iter().copied().collect();
    for _ in 0..hom.len() {
        image = image.iter().map(|&g| c.comp(g, t)).collect();
    }
    hom.iter().copied().filter(|g| image.contains(g)).collect()
}
