//! Normed sets: finite sets with a norm `|-|: A -> V`.
//!
//! A map `f: A -> B` carries the norm `⋀_a [|a|, |f a|]`; it is a morphism
//! of the strict category exactly when that norm is above `k`.

use crate::budget::{functions, Budget};
use crate::error::{Error, Result};
use crate::quantale::Quantale;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormedSet<E> {
    pub ids: Vec<String>,
    pub norms: Vec<E>,
}

impl<E: Clone> NormedSet<E> {
    pub fn new(ids: Vec<String>, norms: Vec<E>) -> Self {
        assert_eq!(ids.len(), norms.len(), "one norm per element");
        NormedSet { ids, norms }
    }

    /// Elements named by position.
    pub fn from_norms(norms: Vec<E>) -> Self {
        let ids = (0..norms.len()).map(|i| i.to_string()).collect();
        NormedSet { ids, norms }
    }

    pub fn with_norms(&self, norms: Vec<E>) -> Self {
        NormedSet::new(self.ids.clone(), norms)
    }
}

impl<E> NormedSet<E> {
    pub fn empty() -> Self {
        NormedSet { ids: vec![], norms: vec![] }
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn norm(&self, i: usize) -> &E {
        &self.norms[i]
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }
}

pub fn check_set<Q: Quantale>(q: &Q, a: &NormedSet<Q::Elem>) -> Result<()> {
    a.norms.iter().try_for_each(|x| q.check(x))
}

pub fn check_map<E>(a: &NormedSet<E>, b: &NormedSet<E>, f: &[usize]) -> Result<()> {
    if f.len() != a.len() {
        return Err(Error::Shape(format!("map has {} entries, source has {}", f.len(), a.len())));
    }
    if let Some(&y) = f.iter().find(|&&y| y >= b.len()) {
        return Err(Error::Shape(format!("map sends an element to {}, target has {}", y, b.len())));
    }
    Ok(())
}

/// The unit object `E = {⋆}` with `|⋆| = k`.
pub fn unit_set<Q: Quantale>(q: &Q) -> NormedSet<Q::Elem> {
    NormedSet::new(vec!["*".into()], vec![q.unit()])
}

/// Cartesian product normed by `|(a, b)| = |a| ⊗ |b|`; `(i, j)` sits at
/// index `i * |B| + j`.
pub fn tensor<Q: Quantale>(
    q: &Q,
    a: &NormedSet<Q::Elem>,
    b: &NormedSet<Q::Elem>,
) -> Result<NormedSet<Q::Elem>> {
    check_set(q, a)?;
    check_set(q, b)?;
    let mut ids = Vec::with_capacity(a.len() * b.len());
    let mut norms = Vec::with_capacity(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            ids.push(format!("({},{})", a.ids[i], b.ids[j]));
            norms.push(q.tensor(&a.norms[i], &b.norms[j]));
        }
    }
    Ok(NormedSet { ids, norms })
}

/// `⋀_a [|a|, |f a|]`.
pub fn map_norm<Q: Quantale>(
    q: &Q,
    a: &NormedSet<Q::Elem>,
    b: &NormedSet<Q::Elem>,
    f: &[usize],
) -> Q::Elem {
    q.meet((0..a.len()).map(|i| q.hom(&a.norms[i], &b.norms[f[i]])))
}

/// `|a| <= |f a|` for every `a`.
pub fn is_morphism<Q: Quantale>(
    q: &Q,
    a: &NormedSet<Q::Elem>,
    b: &NormedSet<Q::Elem>,
    f: &[usize],
) -> bool {
    (0..a.len()).all(|i| q.leq(&a.norms[i], &b.norms[f[i]]))
}

/// A map together with its cached norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormedMap<E> {
    pub source: NormedSet<E>,
    pub target: NormedSet<E>,
    pub mapping: Vec<usize>,
    pub norm: E,
}

impl<E: Clone> NormedMap<E> {
    pub fn new<Q: Quantale<Elem = E>>(
        q: &Q,
        source: NormedSet<E>,
        target: NormedSet<E>,
        mapping: Vec<usize>,
    ) -> Result<Self> {
        check_map(&source, &target, &mapping)?;
        let norm = map_norm(q, &source, &target, &mapping);
        Ok(NormedMap { source, target, mapping, norm })
    }
}

/// `[A, B]`: all functions, normed by [`map_norm`], in the order of
/// [`functions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalHom<E> {
    pub set: NormedSet<E>,
    pub maps: Vec<Vec<usize>>,
}

pub fn internal_hom<Q: Quantale>(
    q: &Q,
    a: &NormedSet<Q::Elem>,
    b: &NormedSet<Q::Elem>,
    budget: &Budget,
) -> Result<InternalHom<Q::Elem>> {
    budget.power("internal hom", b.len(), a.len())?;
    let maps: Vec<Vec<usize>> = functions(a.len(), b.len()).collect();
    let norms = maps.iter().map(|f| map_norm(q, a, b, f)).collect();
    let ids = maps
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f.iter().map(|&y| b.ids[y].as_str()).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    Ok(InternalHom { set: NormedSet { ids, norms }, maps })
}

/// Position of `f` in the enumeration of functions into a set of size `tgt`.
pub fn function_index(f: &[usize], tgt: usize) -> usize {
    f.iter().fold(0, |acc, &y| acc * tgt + y)
}

/// `curry(f)(a) = (b ↦ f(a, b))` for `f: A ⊗ B -> C`, as indices into
/// `[B, C]`.
pub fn curry(f: &[usize], a_len: usize, b_len: usize, c_len: usize) -> Vec<usize> {
    (0..a_len)
        .map(|i| function_index(&f[i * b_len..(i + 1) * b_len], c_len))
        .collect()
}

/// Initial structure on a carrier of size `n` for maps `f_i` into normed
/// sets: `|a| = ⋀_i |f_i(a)|`.
pub fn initial_structure<Q: Quantale>(
    q: &Q,
    n: usize,
    family: &[(&NormedSet<Q::Elem>, &[usize])],
) -> Vec<Q::Elem> {
    (0..n)
        .map(|a| q.meet(family.iter().map(|(t, f)| t.norms[f[a]].clone())))
        .collect()
}

/// Final structure on a carrier of size `n` for maps `g_i` out of normed
/// sets: `|b| = ⋁{|a| | g_i(a) = b}`.
pub fn final_structure<Q: Quantale>(
    q: &Q,
    n: usize,
    family: &[(&NormedSet<Q::Elem>, &[usize])],
) -> Vec<Q::Elem> {
    let mut out = vec![q.bottom(); n];
    for (s, g) in family {
        for (a, &b) in g.iter().enumerate() {
            out[b] = q.join2(&out[b], &s.norms[a]);
        }
    }
    out
}

/// Elements with `k <= |a|`.
pub fn strict_part<Q: Quantale>(q: &Q, a: &NormedSet<Q::Elem>) -> Vec<usize> {
    (0..a.len()).filter(|&i| q.above_unit(&a.norms[i])).collect()
}

/// `⋁_a |a|`.
pub fn s_value<Q: Quantale>(q: &Q, a: &NormedSet<Q::Elem>) -> Q::Elem {
    q.join(a.norms.iter().cloned())
}

/// `({⋆}, |⋆| = v)`.
pub fn i_embed<E: Clone>(v: E) -> NormedSet<E> {
    NormedSet::new(vec!["*".into()], vec![v])
}
