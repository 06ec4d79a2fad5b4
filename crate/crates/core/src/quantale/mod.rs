//! Commutative unital quantales.
//!
//! Two realizations: [`FiniteQuantale`] (named elements, order and tensor
//! tables) and [`LawvereQuantale`] (`[0, ∞]` ordered by `>=`, with `+` or
//! `·` as tensor). Every law is stated in the quantale order, so for the
//! Lawvere carriers "bigger" means numerically smaller.

mod extended;
mod finite;
mod lawvere;

use std::fmt::Debug;
use std::hash::Hash;

pub use extended::Extended;
pub use finite::{Axiom, AxiomCheck, FiniteQuantale, QuantaleReport, QuantaleTable};
pub use lawvere::{LawvereMode, LawvereQuantale};

use crate::budget::Budget;
use crate::error::{Error, Result};

pub trait Quantale: Sync + Send {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn tensor(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Residuation: the largest `w` with `w ⊗ u <= v`.
    fn hom(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn join2(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet2(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    /// All elements, when the carrier is finite.
    fn carrier(&self) -> Option<Vec<Self::Elem>>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;
    /// Same carrier and same order, tensors may differ.
    fn same_lattice(&self, other: &Self) -> bool;
    /// `u ⋘ v`: every join above `v` has a member above `u`.
    fn totally_below(&self, u: &Self::Elem, v: &Self::Elem, budget: &Budget) -> Result<bool>;
    /// `k = ⋁{u | u ⋘ k}`.
    fn unit_approximated(&self, budget: &Budget) -> Result<bool>;

    fn join<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join2(&acc, &x))
    }

    fn meet<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.top(), |acc, x| self.meet2(&acc, &x))
    }

    /// `k <= a`.
    fn above_unit(&self, a: &Self::Elem) -> bool {
        self.leq(&self.unit(), a)
    }

    fn leq_strict(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }

    fn format_all(&self, items: &[Self::Elem]) -> Vec<String> {
        items.iter().map(|x| self.format(x)).collect()
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInCarrier(format!("{:?}", a)))
        }
    }
}

/// Least upper bound of `items`, rejecting foreign elements.
pub fn join<Q: Quantale>(q: &Q, items: &[Q::Elem]) -> Result<Q::Elem> {
    for x in items {
        q.check(x)?;
    }
    Ok(q.join(items.iter().cloned()))
}

/// Greatest lower bound of `items`, rejecting foreign elements.
pub fn meet<Q: Quantale>(q: &Q, items: &[Q::Elem]) -> Result<Q::Elem> {
    for x in items {
        q.check(x)?;
    }
    Ok(q.meet(items.iter().cloned()))
}

/// Residuation `[u, v]`, rejecting foreign elements.
pub fn hom<Q: Quantale>(q: &Q, u: &Q::Elem, v: &Q::Elem) -> Result<Q::Elem> {
    q.check(u)?;
    q.check(v)?;
    Ok(q.hom(u, v))
}

/// A quantale resolved from a name or a table.
#[derive(Debug, Clone)]
pub enum AnyQuantale {
    Finite(FiniteQuantale),
    Lawvere(LawvereQuantale),
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "one",
    "bool2",
    "chain3",
    "chain4",
    "bool4",
    "diamond",
    "lawvere-plus",
    "lawvere-times",
];

pub fn builtin(name: &str) -> Option<AnyQuantale> {
    match name {
        "lawvere-plus" => Some(AnyQuantale::Lawvere(LawvereQuantale::additive())),
        "lawvere-times" => Some(AnyQuantale::Lawvere(LawvereQuantale::multiplicative())),
        _ => FiniteQuantale::builtin(name).map(AnyQuantale::Finite),
    }
}
