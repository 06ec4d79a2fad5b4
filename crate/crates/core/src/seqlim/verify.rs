//! Checks that a cocone is a normed colimit.
//!
//! (C1) the cocone is a colimit of the underlying sequence; (C2a)
//! `k <= ⋁_N ⋀_{n >= N} |γ_n|`; (C2b) `⋁_N ⋀_{n >= N} |f∘γ_n| <= |f|` for
//! every `f` out of the apex. Components are periodic from
//! `max(cocone.start, N0)`, so both tails are evaluated on one window.

use std::collections::HashSet;

use serde::Serialize;

use super::colimit::{eventual_image, set_colimit};
use super::{dset_norm, liminf, validate_sequence, Ambient, Cocone, DSet, NCat, NSet, Sequence};
use crate::budget::{functions, Budget, Meter};
use crate::error::{Error, Result};
use crate::ncat::NormedCategory;
use crate::normed_set::{map_norm, NormedSet};
use crate::quantale::Quantale;
use crate::vcat::VCategory;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub passed: bool,
    /// The evaluated lower limit, when the clause has one.
    pub value: Option<String>,
    pub witness: Option<String>,
}

impl Clause {
    fn pass(value: Option<String>) -> Self {
        Clause { passed: true, value, witness: None }
    }

    fn fail(value: Option<String>, witness: String) -> Self {
        Clause { passed: false, value, witness: Some(witness) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitReport {
    pub c1: Clause,
    pub c2a: Clause,
    pub c2b: Clause,
    /// Largest probe object used for (C2b).
    pub probe_bound: usize,
    pub probes: u64,
    /// (C2b) covered every value of the carrier, not a finite palette.
    pub exhaustive: bool,
}

impl ColimitReport {
    pub fn holds(&self) -> bool {
        self.c1.passed && self.c2a.passed && self.c2b.passed
    }
}

/// Types the components and returns the first `n` where
/// `γ_n != γ_{n+1}∘s_n`.
fn check_cocone<Q: Quantale, A: Ambient<Q>>(
    amb: &A,
    seq: &Sequence<A::Object, A::Map>,
    apex: &A::Object,
    cocone: &Cocone<A::Map>,
) -> Result<Option<usize>> {
    if cocone.prefix.len() != cocone.start || cocone.periodic.is_empty() {
        return Err(Error::Shape(format!(
            "cocone needs {} prefix components and at least one periodic component",
            cocone.start
        )));
    }
    let end = cocone.start.max(seq.start()) + cocone.period();
    for n in 0..=end {
        amb.check_map(cocone.component(n), seq.object(n), apex)?;
    }
    Ok((0..end).find(|&n| *cocone.component(n) != amb.compose(cocone.component(n + 1), seq.step(n))))
}

fn window<M>(seq_start: usize, cocone: &Cocone<M>) -> (usize, usize) {
    (cocone.start.max(seq_start), cocone.period())
}

/// Carrier, or bottom, top, unit and `extra` when the carrier is infinite.
fn palette<Q: Quantale>(q: &Q, extra: impl Iterator<Item = Q::Elem>) -> (Vec<Q::Elem>, bool) {
    if let Some(all) = q.carrier() {
        return (all, true);
    }
    let mut seen = HashSet::new();
    let out = [q.bottom(), q.top(), q.unit()]
        .into_iter()
        .chain(extra)
        .filter(|v| seen.insert(v.clone()))
        .collect();
    (out, false)
}

/// Non-decreasing index vectors of length `len` over `0..base`.
fn multisets(base: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(base: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..base {
            cur.push(i);
            go(base, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(base, len, 0, &mut Vec::new(), &mut out);
    out
}

fn c2a<Q: Quantale>(q: &Q, s: usize, p: usize, norm: impl Fn(usize) -> Q::Elem) -> Clause {
    let v = liminf(q, s, p, norm);
    let shown = Some(q.format(&v));
    if q.above_unit(&v) {
        Clause::pass(shown)
    } else {
        Clause::fail(shown, format!("lower limit of component norms is {}, not above the unit", q.format(&v)))
    }
}

/// Verifies a cocone over a sequence of normed sets. (C2b) probes every
/// normed set of size at most `budget.probe` with norms from the carrier.
pub fn verify_nset_colimit<Q: Quantale>(
    q: &Q,
    seq: &Sequence<NormedSet<Q::Elem>, Vec<usize>>,
    apex: &NormedSet<Q::Elem>,
    cocone: &Cocone<Vec<usize>>,
    budget: &Budget,
) -> Result<ColimitReport> {
    validate_sequence::<Q, _>(&NSet, seq)?;
    let broken = check_cocone::<Q, _>(&NSet, seq, apex, cocone)?;
    let (s, p) = window(seq.start(), cocone);

    let c1 = match broken {
        Some(n) => Clause::fail(None, format!("not a cocone: component {} differs from component {} after the step", n, n + 1)),
        None => set_bijection(seq, apex.len(), cocone, |o: &NormedSet<Q::Elem>| o.len())?,
    };
    let c2a = c2a(q, s, p, |n| map_norm(q, seq.object(n), apex, cocone.component(n)));

    let extra = (0..=seq.start())
        .flat_map(|n| seq.object(n).norms.iter().cloned())
        .chain(apex.norms.iter().cloned())
        .collect::<Vec<_>>();
    let (pal, exhaustive) = palette(q, extra.into_iter());
    let mut meter = Meter::new("colimit probes", budget);
    let mut c2b = Clause::pass(None);
    'outer: for size in 0..=budget.probe {
        for pick in multisets(pal.len(), size) {
            let y = NormedSet::from_norms(pick.iter().map(|&i| pal[i].clone()).collect());
            for f in functions(apex.len(), size) {
                meter.tick()?;
                let lower = liminf(q, s, p, |n| {
                    let g: Vec<usize> = cocone.component(n).iter().map(|&c| f[c]).collect();
                    map_norm(q, seq.object(n), &y, &g)
                });
                let norm = map_norm(q, apex, &y, &f);
                if !q.leq(&lower, &norm) {
                    c2b = Clause::fail(
                        Some(q.format(&lower)),
                        format!(
                            "map {:?} into normed set {:?} has norm {} below the lower limit {}",
                            f,
                            q.format_all(&y.norms),
                            q.format(&norm),
                            q.format(&lower)
                        ),
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(ColimitReport { c1, c2a, c2b, probe_bound: budget.probe, probes: meter.used(), exhaustive })
}

/// (C1) for set-based ambients: the induced map from the set colimit to
/// the apex is a bijection.
fn set_bijection<O>(
    seq: &Sequence<O, Vec<usize>>,
    apex_len: usize,
    cocone: &Cocone<Vec<usize>>,
    len: impl Fn(&O) -> usize,
) -> Result<Clause> {
    let shape = Sequence {
        prefix: seq.prefix.iter().map(|(o, m)| (len(o), m.clone())).collect(),
        tail: len(&seq.tail),
        endo: seq.endo.clone(),
    };
    let sc = set_colimit(&shape)?;
    let mut induced = vec![usize::MAX; sc.size];
    for n in 0..sc.cocone.start + sc.cocone.period() {
        for (a, &c) in sc.cocone.component(n).iter().enumerate() {
            let v = cocone.component(n)[a];
            if induced[c] == usize::MAX {
                induced[c] = v;
            } else if induced[c] != v {
                return Ok(Clause::fail(None, format!("element {} at stage {} lands apart from its class", a, n)));
            }
        }
    }
    let mut hit = vec![false; apex_len];
    for (c, &v) in induced.iter().enumerate() {
        if hit[v] {
            return Ok(Clause::fail(None, format!("two classes of the set colimit meet at apex element {} (class {})", v, c)));
        }
        hit[v] = true;
    }
    if let Some(v) = hit.iter().position(|h| !h) {
        return Ok(Clause::fail(None, format!("apex element {} is not reached by any component", v)));
    }
    Ok(Clause::pass(None))
}

/// Verifies a cocone over a sequence of distance sets. Probes are capped
/// at two points since there are `|V|^{s²}` distance sets of size `s`.
pub fn verify_dset_colimit<Q: Quantale>(
    q: &Q,
    seq: &Sequence<VCategory<Q::Elem>, Vec<usize>>,
    apex: &VCategory<Q::Elem>,
    cocone: &Cocone<Vec<usize>>,
    budget: &Budget,
) -> Result<ColimitReport> {
    validate_sequence::<Q, _>(&DSet, seq)?;
    let broken = check_cocone::<Q, _>(&DSet, seq, apex, cocone)?;
    let (s, p) = window(seq.start(), cocone);
    let c1 = match broken {
        Some(n) => Clause::fail(None, format!("not a cocone: component {} differs from component {} after the step", n, n + 1)),
        None => set_bijection(seq, apex.len(), cocone, |o: &VCategory<Q::Elem>| o.len())?,
    };
    let c2a = c2a(q, s, p, |n| dset_norm(q, seq.object(n), apex, cocone.component(n)));

    let bound = budget.probe.min(2);
    let extra = (0..=seq.start())
        .flat_map(|n| seq.object(n).dist.iter().flatten().cloned().collect::<Vec<_>>())
        .chain(apex.dist.iter().flatten().cloned())
        .collect::<Vec<_>>();
    let (pal, exhaustive) = palette(q, extra.into_iter());
    let mut meter = Meter::new("colimit probes", budget);
    let mut c2b = Clause::pass(None);
    'outer: for size in 0..=bound {
        for entries in functions(size * size, pal.len()) {
            let dist = (0..size).map(|i| (0..size).map(|j| pal[entries[i * size + j]].clone()).collect()).collect();
            let y = VCategory::from_matrix(dist);
            for f in functions(apex.len(), size) {
                meter.tick()?;
                let lower = liminf(q, s, p, |n| {
                    let g: Vec<usize> = cocone.component(n).iter().map(|&c| f[c]).collect();
                    dset_norm(q, seq.object(n), &y, &g)
                });
                let norm = dset_norm(q, apex, &y, &f);
                if !q.leq(&lower, &norm) {
                    c2b = Clause::fail(
                        Some(q.format(&lower)),
                        format!("map {:?} into a {}-point distance set has norm {} below the lower limit {}", f, size, q.format(&norm), q.format(&lower)),
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(ColimitReport { c1, c2a, c2b, probe_bound: bound, probes: meter.used(), exhaustive })
}

/// Verifies a cocone in a finite normed category. (C1) compares, for every
/// object `y`, precomposition with `γ_{N0}` against the eventual image of
/// `g ↦ g∘t` on `hom(T, y)`; (C2b) is exhaustive.
pub fn verify_ncat_colimit<Q: Quantale>(
    q: &Q,
    a: &NormedCategory<Q::Elem>,
    seq: &Sequence<usize, usize>,
    apex: usize,
    cocone: &Cocone<usize>,
) -> Result<ColimitReport> {
    let amb = NCat(a);
    let c = &a.category;
    validate_sequence::<Q, _>(&amb, seq)?;
    if apex >= c.object_count() {
        return Err(Error::Shape(format!("apex {} is not an object", apex)));
    }
    let broken = check_cocone::<Q, _>(&amb, seq, &apex, cocone)?;
    let (s, p) = window(seq.start(), cocone);
    let n0 = seq.start();

    let c1 = match broken {
        Some(n) => Clause::fail(None, format!("not a cocone: component {} differs from component {} after the step", n, n + 1)),
        None => {
            let g = *cocone.component(n0);
            let mut clause = Clause::pass(None);
            for y in 0..c.object_count() {
                let ei: HashSet<usize> = eventual_image(a, seq.tail, seq.endo, y).into_iter().collect();
                let hits: Vec<usize> = c.hom(apex, y).iter().map(|&f| c.comp(f, g)).collect();
                let distinct: HashSet<usize> = hits.iter().copied().collect();
                if distinct.len() != hits.len() || distinct != ei {
                    clause = Clause::fail(
                        None,
                        format!(
                            "object {}: {} morphisms out of the apex against {} cocones",
                            c.objects[y],
                            hits.len(),
                            ei.len()
                        ),
                    );
                    break;
                }
            }
            clause
        }
    };
    let c2a = c2a(q, s, p, |n| a.norm(*cocone.component(n)).clone());
    let mut c2b = Clause::pass(None);
    let mut probes = 0;
    for f in c.homs_from(apex) {
        probes += 1;
        let lower = liminf(q, s, p, |n| a.norm(c.comp(f, *cocone.component(n))).clone());
        if !q.leq(&lower, a.norm(f)) {
            c2b = Clause::fail(
                Some(q.format(&lower)),
                format!("morphism {} has norm {} below the lower limit {}", c.name(f), q.format(a.norm(f)), q.format(&lower)),
            );
            break;
        }
    }
    Ok(ColimitReport { c1, c2a, c2b, probe_bound: c.object_count(), probes, exhaustive: true })
}
