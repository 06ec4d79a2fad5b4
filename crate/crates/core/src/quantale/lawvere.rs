use super::{Extended, Quantale};
use crate::budget::Budget;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawvereMode {
    /// Tensor `+`, unit `0`.
    Additive,
    /// Tensor `·`, unit `1`, `α · ∞ = ∞`.
    Multiplicative,
}

/// `[0, ∞]` ordered by `>=`: join is numeric `min`, meet is numeric `max`,
/// bottom is `∞` and top is `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LawvereQuantale {
    pub mode: LawvereMode,
}

impl LawvereQuantale {
    pub fn additive() -> Self {
        LawvereQuantale { mode: LawvereMode::Additive }
    }

    pub fn multiplicative() -> Self {
        LawvereQuantale { mode: LawvereMode::Multiplicative }
    }
}

impl Quantale for LawvereQuantale {
    type Elem = Extended;

    fn name(&self) -> String {
        match self.mode {
            LawvereMode::Additive => "lawvere-plus".into(),
            LawvereMode::Multiplicative => "lawvere-times".into(),
        }
    }

    fn leq(&self, a: &Extended, b: &Extended) -> bool {
        a >= b
    }

    fn tensor(&self, a: &Extended, b: &Extended) -> Extended {
        match self.mode {
            LawvereMode::Additive => a.add(b),
            LawvereMode::Multiplicative => a.mul(b),
        }
    }

    fn hom(&self, u: &Extended, v: &Extended) -> Extended {
        match self.mode {
            LawvereMode::Additive => Extended::monus(v, u),
            LawvereMode::Multiplicative => Extended::quotient(v, u),
        }
    }

    fn unit(&self) -> Extended {
        match self.mode {
            LawvereMode::Additive => Extended::zero(),
            LawvereMode::Multiplicative => Extended::one(),
        }
    }

    fn bottom(&self) -> Extended {
        Extended::Infinity
    }

    fn top(&self) -> Extended {
        Extended::zero()
    }

    fn join2(&self, a: &Extended, b: &Extended) -> Extended {
        a.min(b).clone()
    }

    fn meet2(&self, a: &Extended, b: &Extended) -> Extended {
        a.max(b).clone()
    }

    fn contains(&self, _: &Extended) -> bool {
        true
    }

    fn carrier(&self) -> Option<Vec<Extended>> {
        None
    }

    fn format(&self, a: &Extended) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Option<Extended> {
        s.parse().ok()
    }

    fn same_lattice(&self, _: &Self) -> bool {
        true
    }

    fn totally_below(&self, _: &Extended, _: &Extended, _: &Budget) -> Result<bool> {
        Err(Error::InfiniteCarrier)
    }

    /// Closed form: in `[0, ∞]` with `>=`, `u ⋘ k` holds exactly for `u`
    /// numerically above `k`, and the infimum of those is `k`.
    fn unit_approximated(&self, _: &Budget) -> Result<bool> {
        Ok(true)
    }
}
