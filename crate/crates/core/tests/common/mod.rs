//! Test-side oracles and generators. Everything here recomputes from the
//! raw tables and never calls the library's decision procedures.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use quantcat::category::FiniteCategory;
use quantcat::ncat::{NormedCategory, NormedDistributor};
use quantcat::normed_set::NormedSet;
use quantcat::quantale::{Extended, FiniteQuantale, QuantaleTable};
use quantcat::seqlim::Sequence;
use quantcat::vcat::VCategory;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fq(name: &str) -> FiniteQuantale {
    FiniteQuantale::builtin(name).unwrap()
}

/// `{0, m, 1}` with `m ⊗ m = 0`; same lattice as `chain3`.
pub fn lukasiewicz3() -> FiniteQuantale {
    let t = QuantaleTable::from_fn("luk3", &["0", "m", "1"], |a, b| a <= b, |a, b| (a + b).saturating_sub(2), 2);
    FiniteQuantale::new(t).unwrap()
}

/// `0 < k < top` with unit `k` and `top ⊗ top = top`.
pub fn pointed3() -> FiniteQuantale {
    let t = QuantaleTable::from_fn(
        "pointed3",
        &["0", "k", "top"],
        |a, b| a <= b,
        |a, b| if a == 0 || b == 0 { 0 } else { a.max(b) },
        1,
    );
    FiniteQuantale::new(t).unwrap()
}

/// Every quantale with at most three elements used by the suites.
pub fn small_quantales() -> Vec<FiniteQuantale> {
    vec![fq("one"), fq("bool2"), fq("chain3"), lukasiewicz3(), pointed3()]
}

pub fn carrier(q: &FiniteQuantale) -> Vec<usize> {
    (0..q.len()).collect()
}

/// Least upper bound found by scanning the order table.
pub fn oracle_join(q: &FiniteQuantale, items: &[usize]) -> usize {
    let t = q.table();
    let n = q.len();
    let uppers: Vec<usize> = (0..n).filter(|&u| items.iter().all(|&i| t.leq[i][u])).collect();
    *uppers
        .iter()
        .find(|&&u| uppers.iter().all(|&w| t.leq[u][w]))
        .expect("complete lattice")
}

pub fn leq(q: &FiniteQuantale, a: usize, b: usize) -> bool {
    q.table().leq[a][b]
}

pub fn tensor(q: &FiniteQuantale, a: usize, b: usize) -> usize {
    q.table().tensor[a][b]
}

pub fn unit(q: &FiniteQuantale) -> usize {
    q.table().unit
}

/// Reflexivity and tensor-transitivity straight from the tables.
pub fn oracle_is_vcat(q: &FiniteQuantale, d: &[Vec<usize>]) -> bool {
    let n = d.len();
    let k = unit(q);
    (0..n).all(|x| leq(q, k, d[x][x]))
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| leq(q, tensor(q, d[y][z], d[x][y]), d[x][z]))))
}

/// All V-categories on `n` objects, by an odometer over the matrices.
pub fn oracle_vcats(q: &FiniteQuantale, n: usize) -> Vec<Vec<Vec<usize>>> {
    let v = q.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * n];
    loop {
        let d: Vec<Vec<usize>> = digits.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
        if oracle_is_vcat(q, &d) {
            out.push(d);
        }
        let mut i = 0;
        while i < digits.len() && digits[i] + 1 == v {
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            return out;
        }
        digits[i] += 1;
    }
}

pub fn vcat(d: Vec<Vec<usize>>) -> VCategory<usize> {
    VCategory::from_matrix(d)
}

/// Every vector in `carrier^len`.
pub fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `φ` covariant, `ψ` contravariant, `k <= ⋁ ψ ⊗ φ`, `φ(b) ⊗ ψ(a) <= X(a, b)`.
pub fn oracle_adjoint(q: &FiniteQuantale, d: &[Vec<usize>], phi: &[usize], psi: &[usize]) -> bool {
    let n = d.len();
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    pairs().all(|(a, b)| leq(q, tensor(q, d[a][b], phi[a]), phi[b]))
        && pairs().all(|(a, b)| leq(q, tensor(q, psi[a], d[b][a]), psi[b]))
        && leq(q, unit(q), oracle_join(q, &(0..n).map(|c| tensor(q, psi[c], phi[c])).collect::<Vec<_>>()))
        && pairs().all(|(a, b)| leq(q, tensor(q, phi[b], psi[a]), d[a][b]))
}

/// Morphisms of the strict part and a direct search for splittings there.
pub fn oracle_strict_split(q: &FiniteQuantale, a: &NormedCategory<usize>) -> bool {
    let c = &a.category;
    let strict = |f: usize| leq(q, unit(q), a.norms[f]);
    let ms: Vec<usize> = (0..c.morphism_count()).filter(|&f| strict(f)).collect();
    ms.iter().all(|&e| {
        let idem = c.dom(e) == c.cod(e) && c.comp(e, e) == e;
        !idem
            || ms.iter().any(|&r| {
                c.dom(r) == c.dom(e)
                    && ms.iter().any(|&s| {
                        c.dom(s) == c.cod(r)
                            && c.cod(s) == c.dom(e)
                            && c.comp(s, r) == e
                            && c.comp(r, s) == c.identities[c.cod(r)]
                    })
            })
    })
}

/// Yoneda: `Φ ≅ A(x, -)` normed iff some `u ∈ Φ(x)` makes `f ↦ Φ(f)(u)`
/// a bijection `A(x, b) -> Φ(b)` with `|Φ(f)(u)| = |f|` for every `b`.
pub fn oracle_representable<E: PartialEq>(a: &NormedCategory<E>, phi: &NormedDistributor<E>) -> bool {
    let c = &a.category;
    let n = c.object_count();
    (0..n).any(|x| {
        (0..phi.sets[x].len()).any(|u| {
            (0..n).all(|b| {
                let hom = c.hom(x, b);
                let img: Vec<usize> = hom.iter().map(|&f| phi.action[f][u]).collect();
                let mut seen = img.clone();
                seen.sort_unstable();
                seen.dedup();
                seen.len() == hom.len()
                    && seen.len() == phi.sets[b].len()
                    && hom.iter().zip(&img).all(|(&f, &w)| a.norms[f] == phi.sets[b].norms[w])
            })
        })
    })
}

/// Small categories for the idempotent-splitting comparisons.
pub fn category_fixtures() -> Vec<(&'static str, FiniteCategory)> {
    let monoid = |names: &[&str], t: &[Vec<usize>]| FiniteCategory::monoid(names, t, 0).unwrap();
    vec![
        ("terminal", monoid(&["1"], &[vec![0]])),
        ("idempotent monoid", monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]])),
        ("two-element group", monoid(&["1", "g"], &[vec![0, 1], vec![1, 0]])),
        (
            "left-zero monoid",
            monoid(&["1", "e", "f"], &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]),
        ),
        ("two-chain", FiniteCategory::preorder(&[vec![true, true], vec![false, true]])),
        (
            "split extension",
            FiniteCategory::from_triples(
                &["a", "b"],
                &[("1a", "a", "a"), ("e", "a", "a"), ("1b", "b", "b"), ("r", "a", "b"), ("s", "b", "a")],
                &["1a", "1b"],
                &[("e", "e", "e"), ("r", "e", "r"), ("e", "s", "s"), ("s", "r", "e"), ("r", "s", "1b")],
            )
            .unwrap(),
        ),
    ]
}

pub fn split_extension() -> FiniteCategory {
    category_fixtures().pop().unwrap().1
}

pub fn idempotent_monoid() -> FiniteCategory {
    category_fixtures().swap_remove(1).1
}

/// Every norm assignment that makes `c` a normed category, checked from
/// the tables.
pub fn normings(q: &FiniteQuantale, c: &FiniteCategory) -> Vec<NormedCategory<usize>> {
    let m = c.morphism_count();
    tuples(q.len(), m)
        .into_iter()
        .filter(|norms| {
            c.identities.iter().all(|&i| leq(q, unit(q), norms[i]))
                && (0..m).all(|g| {
                    (0..m).all(|f| match c.try_compose(g, f) {
                        Some(h) => leq(q, tensor(q, norms[g], norms[f]), norms[h]),
                        None => true,
                    })
                })
        })
        .map(|norms| NormedCategory::new(c.clone(), norms).unwrap())
        .collect()
}

// ---- sequences of normed sets -------------------------------------------

pub fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// `⋀_a [|a|, |f a|]` from the tables.
pub fn oracle_map_norm(q: &FiniteQuantale, a: &[usize], b: &[usize], f: &[usize]) -> usize {
    let n = q.len();
    let homs: Vec<usize> = (0..a.len()).map(|i| oracle_hom(q, a[i], b[f[i]])).collect();
    let lowers: Vec<usize> = (0..n).filter(|&l| homs.iter().all(|&h| leq(q, l, h))).collect();
    *lowers.iter().find(|&&l| lowers.iter().all(|&w| leq(q, w, l))).unwrap()
}

/// Largest `w` with `w ⊗ u <= v`, by scanning.
pub fn oracle_hom(q: &FiniteQuantale, u: usize, v: usize) -> usize {
    let ws: Vec<usize> = (0..q.len()).filter(|&w| leq(q, tensor(q, w, u), v)).collect();
    oracle_join(q, &ws)
}

pub fn oracle_meet(q: &FiniteQuantale, items: &[usize]) -> usize {
    let lowers: Vec<usize> = (0..q.len()).filter(|&l| items.iter().all(|&i| leq(q, l, i))).collect();
    oracle_join(q, &lowers)
}

/// `⋁_N ⋀_{N <= m <= n <= H} |s_{m,n}|` with a horizon far past every
/// transient and period of sequences with at most three-element tails.
pub fn oracle_cauchy_value(q: &FiniteQuantale, seq: &Sequence<NormedSet<usize>, Vec<usize>>) -> usize {
    const HORIZON: usize = 30;
    let norms = |n: usize| seq.object(n).norms.clone();
    let mut best = Vec::new();
    for big_n in 0..=seq.start() {
        let mut vals = Vec::new();
        for m in big_n..=HORIZON {
            let mut f: Vec<usize> = (0..seq.object(m).len()).collect();
            for n in m..=HORIZON {
                vals.push(oracle_map_norm(q, &norms(m), &norms(n), &f));
                f = compose(seq.step(n), &f);
            }
        }
        best.push(oracle_meet(q, &vals));
    }
    oracle_join(q, &best)
}

pub fn random_map(rng: &mut ChaCha8Rng, src: usize, tgt: usize) -> Vec<usize> {
    (0..src).map(|_| rng.gen_range(0..tgt)).collect()
}

/// A random nSet sequence: up to three prefix stages, sets of one to three
/// elements, and a tail whose norms are sometimes pinned to the top.
pub fn random_nset_sequence(q: &FiniteQuantale, rng: &mut ChaCha8Rng) -> Sequence<NormedSet<usize>, Vec<usize>> {
    let v = q.len();
    let sizes: Vec<usize> = (0..rng.gen_range(0..=3) + 1).map(|_| rng.gen_range(1..=3)).collect();
    let start = sizes.len() - 1;
    let set = |rng: &mut ChaCha8Rng, n: usize, top: bool| {
        NormedSet::from_norms((0..n).map(|_| if top { v - 1 } else { rng.gen_range(0..v) }).collect())
    };
    let pin_tail = rng.gen_bool(0.5);
    let mut prefix = Vec::new();
    for i in 0..start {
        let s = set(rng, sizes[i], false);
        prefix.push((s, random_map(rng, sizes[i], sizes[i + 1])));
    }
    let t = sizes[start];
    let tail = set(rng, t, pin_tail);
    let endo = random_map(rng, t, t);
    Sequence { prefix, tail, endo }
}

// ---- extended reals --------------------------------------------------------

/// `None` is infinity.
pub type Real = Option<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_extended(r: &Real) -> Extended {
    match r {
        None => Extended::Infinity,
        Some(r) => Extended::Finite(r.clone()),
    }
}

pub fn real_le(a: &Real, b: &Real) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a <= b,
    }
}

pub fn real_add(a: &Real, b: &Real) -> Real {
    Some(a.as_ref()? + b.as_ref()?)
}

/// Shortest-path closure of a random weighted digraph: a finite
/// generalized metric space with rational or infinite distances.
pub fn random_metric(rng: &mut ChaCha8Rng, n: usize, symmetric: bool) -> Vec<Vec<Real>> {
    let mut d: Vec<Vec<Real>> = vec![vec![None; n]; n];
    for x in 0..n {
        d[x][x] = Some(BigRational::zero());
        for y in 0..n {
            if x != y && (!symmetric || x < y) {
                let w = match rng.gen_range(0..8) {
                    0 => None,
                    1 => Some(BigRational::zero()),
                    _ => Some(rat(rng.gen_range(1..=12), rng.gen_range(1..=4))),
                };
                d[x][y] = w.clone();
                if symmetric {
                    d[y][x] = w;
                }
            }
        }
    }
    for m in 0..n {
        for x in 0..n {
            for y in 0..n {
                let via = real_add(&d[x][m], &d[m][y]);
                if !real_le(&d[x][y], &via) {
                    d[x][y] = via;
                }
            }
        }
    }
    d
}

pub fn extended_space(d: &[Vec<Real>]) -> VCategory<Extended> {
    VCategory::from_matrix(d.iter().map(|r| r.iter().map(to_extended).collect()).collect())
}
