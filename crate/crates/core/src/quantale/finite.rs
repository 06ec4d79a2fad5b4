use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Quantale;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Raw tables of a finite quantale; elements are indices into `elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleTable {
    pub name: String,
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
}

impl QuantaleTable {
    pub fn from_fn(
        name: &str,
        elements: &[&str],
        leq: impl Fn(usize, usize) -> bool,
        tensor: impl Fn(usize, usize) -> usize,
        unit: usize,
    ) -> Self {
        let n = elements.len();
        QuantaleTable {
            name: name.to_string(),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            leq: (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect(),
            tensor: (0..n).map(|i| (0..n).map(|j| tensor(i, j)).collect()).collect(),
            unit,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::Shape("a quantale needs at least one element".into()));
        }
        let mut seen = HashSet::new();
        for e in &self.elements {
            if !seen.insert(e) {
                return Err(Error::Shape(format!("duplicate element name {:?}", e)));
            }
        }
        if self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("order table must be {}x{}", n, n)));
        }
        if self.tensor.len() != n || self.tensor.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("tensor table must be {}x{}", n, n)));
        }
        if self.tensor.iter().flatten().any(|&x| x >= n) || self.unit >= n {
            return Err(Error::Shape("tensor table or unit refers to an unknown element".into()));
        }
        Ok(())
    }

    fn order_violation(&self) -> Option<String> {
        let n = self.elements.len();
        let name = |i: usize| &self.elements[i];
        for a in 0..n {
            if !self.leq[a][a] {
                return Some(format!("reflexivity fails at {}", name(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && self.leq[b][a] {
                    return Some(format!("antisymmetry fails at ({}, {})", name(a), name(b)));
                }
                for c in 0..n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        return Some(format!(
                            "transitivity fails at ({}, {}, {})",
                            name(a),
                            name(b),
                            name(c)
                        ));
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Order,
    Commutativity,
    Associativity,
    Unit,
    Distributivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// False when distributivity was checked on pairs only.
    pub exhaustive: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantaleReport {
    pub checks: Vec<AxiomCheck>,
}

impl QuantaleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is reported")
    }
}

impl fmt::Display for QuantaleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:?}: {}", c.axiom, if c.passed { "pass" } else { "FAIL" })?;
            if !c.exhaustive {
                write!(f, " (pairs only)")?;
            }
            if let Some(w) = &c.witness {
                write!(f, " [{}]", w)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A finite complete lattice with a tensor table. Construction checks the
/// lattice; the tensor laws are checked by [`FiniteQuantale::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuantale {
    table: QuantaleTable,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    hom: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

fn least(leq: &[Vec<bool>], cands: &[usize]) -> Option<usize> {
    cands.iter().copied().find(|&c| cands.iter().all(|&d| leq[c][d]))
}

impl FiniteQuantale {
    pub fn new(table: QuantaleTable) -> Result<Self> {
        table.check_shape()?;
        if let Some(v) = table.order_violation() {
            return Err(Error::NotALattice(v));
        }
        let n = table.elements.len();
        let leq = &table.leq;
        let flip: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq[j][i]).collect()).collect();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ups: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
                let downs: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                join[a][b] = least(leq, &ups).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "no join of {} and {}",
                        table.elements[a], table.elements[b]
                    ))
                })?;
                meet[a][b] = least(&flip, &downs).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "no meet of {} and {}",
                        table.elements[a], table.elements[b]
                    ))
                })?;
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let bottom = least(leq, &all)
            .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
        let top = least(&flip, &all)
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;
        let mut q = FiniteQuantale {
            table,
            join,
            meet,
            hom: vec![],
            bottom,
            top,
        };
        q.hom = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        let ws = (0..n).filter(|&w| q.table.leq[q.table.tensor[w][u]][v]);
                        ws.fold(q.bottom, |acc, w| q.join[acc][w])
                    })
                    .collect()
            })
            .collect();
        Ok(q)
    }

    /// Constructs and rejects tables failing any axiom.
    pub fn validated(table: QuantaleTable, budget: &Budget) -> Result<Self> {
        let q = FiniteQuantale::new(table)?;
        let report = q.validate(budget);
        if !report.passed() {
            let bad = report.checks.iter().find(|c| !c.passed).expect("a failing axiom");
            return Err(Error::Invalid(format!(
                "{} fails {:?}: {}",
                q.table.name,
                bad.axiom,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(q)
    }

    pub fn table(&self) -> &QuantaleTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.table.elements.iter().position(|e| e == name)
    }

    /// `e` for a name known to exist. Panics otherwise.
    pub fn el(&self, name: &str) -> usize {
        self.element(name)
            .unwrap_or_else(|| panic!("{} has no element {:?}", self.table.name, name))
    }

    /// Joins of all subsets, indexed by bitmask.
    fn subset_joins(&self) -> Vec<usize> {
        let n = self.len();
        let mut out = vec![self.bottom; 1 << n];
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            out[mask] = self.join[out[mask & (mask - 1)]][low];
        }
        out
    }

    /// Checks every axiom; distributivity over all subsets when the carrier
    /// fits the subset budget, over pairs and the empty join otherwise.
    pub fn validate(&self, budget: &Budget) -> QuantaleReport {
        let n = self.len();
        let t = &self.table.tensor;
        let name = |i: usize| self.table.elements[i].as_str();
        let mut checks = vec![AxiomCheck {
            axiom: Axiom::Order,
            passed: true,
            exhaustive: true,
            witness: None,
        }];

        let mut comm = None;
        'c: for a in 0..n {
            for b in 0..n {
                if t[a][b] != t[b][a] {
                    comm = Some(format!("{}⊗{} != {}⊗{}", name(a), name(b), name(b), name(a)));
                    break 'c;
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::Commutativity,
            passed: comm.is_none(),
            exhaustive: true,
            witness: comm,
        });

        let mut assoc = None;
        'a: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        assoc = Some(format!("({}, {}, {})", name(a), name(b), name(c)));
                        break 'a;
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::Associativity,
            passed: assoc.is_none(),
            exhaustive: true,
            witness: assoc,
        });

        let k = self.table.unit;
        let unit = (0..n)
            .find(|&a| t[k][a] != a || t[a][k] != a)
            .map(|a| format!("{}⊗{} = {}", name(k), name(a), name(t[k][a])));
        checks.push(AxiomCheck {
            axiom: Axiom::Unit,
            passed: unit.is_none(),
            exhaustive: true,
            witness: unit,
        });

        let exhaustive = budget.check_subsets("distributivity", n).is_ok();
        let mut dist = None;
        if exhaustive {
            let joins = self.subset_joins();
            'd: for u in 0..n {
                for (mask, &j) in joins.iter().enumerate() {
                    let rhs = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(self.bottom, |acc, s| self.join[acc][t[u][s]]);
                    if t[u][j] != rhs {
                        let members: Vec<&str> =
                            (0..n).filter(|i| mask >> i & 1 == 1).map(name).collect();
                        dist = Some(format!("{} ⊗ ⋁{{{}}}", name(u), members.join(", ")));
                        break 'd;
                    }
                }
            }
        } else {
            'p: for u in 0..n {
                if t[u][self.bottom] != self.bottom {
                    dist = Some(format!("{} ⊗ ⋁{{}}", name(u)));
                    break;
                }
                for a in 0..n {
                    for b in 0..n {
                        if t[u][self.join[a][b]] != self.join[t[u][a]][t[u][b]] {
                            dist = Some(format!("{} ⊗ ⋁{{{}, {}}}", name(u), name(a), name(b)));
                            break 'p;
                        }
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::Distributivity,
            passed: dist.is_none(),
            exhaustive,
            witness: dist,
        });
        QuantaleReport { checks }
    }

    /// `k ⋘ k`: every join above the unit has a member above the unit.
    pub fn totally_compact_unit(&self, budget: &Budget) -> Result<bool> {
        let k = self.table.unit;
        self.totally_below(&k, &k, budget)
    }

    /// `k <= u ⊗ v` only if `k <= u` and `k <= v`.
    pub fn tensor_condition(&self) -> bool {
        let n = self.len();
        let k = self.table.unit;
        let leq = &self.table.leq;
        (0..n).all(|u| {
            (0..n).all(|v| !leq[k][self.table.tensor[u][v]] || (leq[k][u] && leq[k][v]))
        })
    }

    /// Built-in tables: `one`, `bool2`, `chain3` (tensor = meet), `chain4`
    /// (Łukasiewicz on four levels), `bool4` (tensor = meet, unit top) and
    /// `diamond` (the five-element M3 lattice whose unit is an atom).
    pub fn builtin(name: &str) -> Option<Self> {
        let table = match name {
            "one" => QuantaleTable::from_fn("one", &["*"], |_, _| true, |_, _| 0, 0),
            "bool2" => {
                QuantaleTable::from_fn("bool2", &["0", "1"], |a, b| a <= b, |a, b| a.min(b), 1)
            }
            "chain3" => QuantaleTable::from_fn(
                "chain3",
                &["0", "m", "1"],
                |a, b| a <= b,
                |a, b| a.min(b),
                2,
            ),
            "chain4" => QuantaleTable::from_fn(
                "chain4",
                &["0", "1/3", "2/3", "1"],
                |a, b| a <= b,
                |a, b| (a + b).saturating_sub(3),
                3,
            ),
            "bool4" => QuantaleTable::from_fn(
                "bool4",
                &["bot", "a", "b", "top"],
                |a, b| a & b == a,
                |a, b| a & b,
                3,
            ),
            "diamond" => QuantaleTable::from_fn(
                "diamond",
                &["bot", "a", "b", "c", "top"],
                |x, y| x == y || x == 0 || y == 4,
                |x, y| match (x, y) {
                    (0, _) | (_, 0) => 0,
                    (1, z) | (z, 1) => z,
                    _ => 4,
                },
                1,
            ),
            _ => return None,
        };
        Some(FiniteQuantale::new(table).expect("built-in tables are lattices"))
    }
}

impl Quantale for FiniteQuantale {
    type Elem = usize;

    fn name(&self) -> String {
        self.table.name.clone()
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.table.leq[*a][*b]
    }

    fn tensor(&self, a: &usize, b: &usize) -> usize {
        self.table.tensor[*a][*b]
    }

    fn hom(&self, u: &usize, v: &usize) -> usize {
        self.hom[*u][*v]
    }

    fn unit(&self) -> usize {
        self.table.unit
    }

    fn bottom(&self) -> usize {
        self.bottom
    }

    fn top(&self) -> usize {
        self.top
    }

    fn join2(&self, a: &usize, b: &usize) -> usize {
        self.join[*a][*b]
    }

    fn meet2(&self, a: &usize, b: &usize) -> usize {
        self.meet[*a][*b]
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.len()
    }

    fn carrier(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }

    fn format(&self, a: &usize) -> String {
        self.table
            .elements
            .get(*a)
            .cloned()
            .unwrap_or_else(|| format!("#{}", a))
    }

    fn parse(&self, s: &str) -> Option<usize> {
        self.element(s)
    }

    fn same_lattice(&self, other: &Self) -> bool {
        self.table.elements == other.table.elements && self.table.leq == other.table.leq
    }

    /// Exhausts every subset `S` with `v <= ⋁S`, the empty one included.
    fn totally_below(&self, u: &usize, v: &usize, budget: &Budget) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        let n = self.len();
        budget.check_subsets("totally-below", n)?;
        let leq = &self.table.leq;
        let joins = self.subset_joins();
        Ok(joins.iter().enumerate().all(|(mask, &j)| {
            !leq[*v][j] || (0..n).any(|s| mask >> s & 1 == 1 && leq[*u][s])
        }))
    }

    fn unit_approximated(&self, budget: &Budget) -> Result<bool> {
        let k = self.table.unit;
        let mut below = Vec::new();
        for u in 0..self.len() {
            if self.totally_below(&u, &k, budget)? {
                below.push(u);
            }
        }
        Ok(self.join(below) == k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(name: &str) -> FiniteQuantale {
        FiniteQuantale::builtin(name).unwrap()
    }

    #[test]
    fn builtins_are_quantales() {
        for name in ["one", "bool2", "chain3", "chain4", "bool4", "diamond"] {
            let r = q(name).validate(&Budget::default());
            assert!(r.passed(), "{}:\n{}", name, r);
        }
    }

    #[test]
    fn bool2_hom_is_implication() {
        let b = q("bool2");
        assert_eq!(b.hom(&1, &0), 0);
        assert_eq!(b.hom(&0, &1), 1);
        assert_eq!(b.hom(&0, &0), 1);
        assert_eq!(b.join([0, 1]), 1);
        assert_eq!(b.join(Vec::<usize>::new()), 0);
    }

    #[test]
    fn wrong_unit_fails_unit_law() {
        let mut t = q("chain3").table().clone();
        t.unit = 1;
        let r = FiniteQuantale::new(t).unwrap().validate(&Budget::default());
        assert!(!r.check(Axiom::Unit).passed);
        assert!(r.check(Axiom::Associativity).passed);
    }

    #[test]
    fn non_distributive_tensor_is_caught() {
        // bool4 with tensor = join is not join-preserving on the empty join.
        let t = QuantaleTable::from_fn("bad", &["bot", "a", "b", "top"], |a, b| a & b == a, |a, b| a | b, 0);
        let r = FiniteQuantale::new(t).unwrap().validate(&Budget::default());
        assert!(!r.check(Axiom::Distributivity).passed);
    }

    #[test]
    fn pairwise_fallback_when_over_budget() {
        let b = Budget { subset_carrier: 2, ..Budget::default() };
        let r = q("chain3").validate(&b);
        assert!(r.passed());
        assert!(!r.check(Axiom::Distributivity).exhaustive);
        assert!(q("chain3").totally_below(&2, &2, &b).unwrap_err().is_budget());
    }

    #[test]
    fn non_lattices_are_rejected() {
        let antichain = QuantaleTable::from_fn("ac", &["x", "y"], |a, b| a == b, |a, _| a, 0);
        assert!(matches!(FiniteQuantale::new(antichain), Err(Error::NotALattice(_))));
        let cyclic = QuantaleTable::from_fn("cy", &["x", "y"], |_, _| true, |a, _| a, 0);
        assert!(matches!(FiniteQuantale::new(cyclic), Err(Error::NotALattice(_))));
    }

    #[test]
    fn totally_below_examples() {
        let b = Budget::default();
        let two = q("bool2");
        assert!(two.totally_below(&0, &1, &b).unwrap());
        assert!(!two.totally_below(&0, &0, &b).unwrap());
        assert!(two.totally_below(&1, &1, &b).unwrap());
        assert!(q("chain3").totally_below(&2, &2, &b).unwrap());
        let four = q("bool4");
        assert!(!four.totally_below(&3, &3, &b).unwrap());
        assert!(four.totally_below(&1, &3, &b).unwrap());
        assert!(four.totally_below(&2, &3, &b).unwrap());
    }

    #[test]
    fn unit_approximation() {
        let b = Budget::default();
        assert!(q("bool2").unit_approximated(&b).unwrap());
        assert!(q("one").unit_approximated(&b).unwrap());
        assert!(q("bool4").unit_approximated(&b).unwrap());
        assert!(!q("diamond").unit_approximated(&b).unwrap());
    }

    #[test]
    fn compact_unit() {
        let b = Budget::default();
        assert!(q("bool2").totally_compact_unit(&b).unwrap());
        assert!(q("chain3").totally_compact_unit(&b).unwrap());
        assert!(!q("bool4").totally_compact_unit(&b).unwrap());
        assert!(!q("one").totally_compact_unit(&b).unwrap());
        assert!(q("chain4").tensor_condition());
        assert!(q("bool4").tensor_condition());
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let two = q("bool2");
        assert!(matches!(super::super::join(&two, &[0, 5]), Err(Error::NotInCarrier(_))));
        assert!(super::super::hom(&two, &9, &0).is_err());
    }
}
