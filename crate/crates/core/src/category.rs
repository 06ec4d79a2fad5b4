//! Finite categories given by explicit composition tables.

use crate::error::{Error, Result, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Composition `compose[g][f] = g∘f` is defined exactly on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
    homs: Vec<Vec<Vec<usize>>>,
    positions: Vec<usize>,
}

/// `s∘r = e` and `r∘s = 1_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Splitting {
    pub idempotent: usize,
    pub object: usize,
    pub r: usize,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitVerdict {
    pub complete: bool,
    pub splittings: Vec<Splitting>,
    /// First idempotent without a splitting.
    pub unsplit: Option<usize>,
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let (n, m) = (objects.len(), morphisms.len());
        if identities.len() != n {
            return Err(Error::Shape("one identity per object".into()));
        }
        for f in &morphisms {
            if f.dom >= n || f.cod >= n {
                return Err(Error::Shape(format!("morphism {} has an unknown endpoint", f.name)));
            }
        }
        for (a, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].dom != a || morphisms[i].cod != a {
                return Err(Error::Shape(format!("identity of {} is not an endomorphism of it", objects[a])));
            }
        }
        if compose.len() != m || compose.iter().any(|r| r.len() != m) {
            return Err(Error::Shape(format!("composition table must be {}x{}", m, m)));
        }
        for g in 0..m {
            for f in 0..m {
                let (mf, mg) = (&morphisms[f], &morphisms[g]);
                match compose[g][f] {
                    Some(h) if mf.cod == mg.dom => {
                        if h >= m || morphisms[h].dom != mf.dom || morphisms[h].cod != mg.cod {
                            return Err(Error::Shape(format!("{}∘{} has the wrong type", mg.name, mf.name)));
                        }
                    }
                    None if mf.cod == mg.dom => {
                        return Err(Error::Shape(format!("{}∘{} is missing", mg.name, mf.name)));
                    }
                    Some(_) => {
                        return Err(Error::Shape(format!("{}∘{} is not composable", mg.name, mf.name)));
                    }
                    None => {}
                }
            }
        }
        let mut homs = vec![vec![Vec::new(); n]; n];
        let mut positions = Vec::with_capacity(m);
        for (i, f) in morphisms.iter().enumerate() {
            positions.push(homs[f.dom][f.cod].len());
            homs[f.dom][f.cod].push(i);
        }
        Ok(FiniteCategory { objects, morphisms, identities, compose, homs, positions })
    }

    /// Builds the table from `(g, f, g∘f)` triples by name; composites with
    /// an identity are filled in.
    pub fn from_triples(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[&str],
        triples: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let obj = |s: &str| {
            objects
                .iter()
                .position(|o| *o == s)
                .ok_or_else(|| Error::Invalid(format!("unknown object {}", s)))
        };
        let mut ms = Vec::new();
        for (name, d, c) in morphisms {
            ms.push(Morphism { name: name.to_string(), dom: obj(d)?, cod: obj(c)? });
        }
        let mor = |s: &str| {
            morphisms
                .iter()
                .position(|m| m.0 == s)
                .ok_or_else(|| Error::Invalid(format!("unknown morphism {}", s)))
        };
        let ids = identities.iter().map(|s| mor(s)).collect::<Result<Vec<_>>>()?;
        let ts = triples
            .iter()
            .map(|(g, f, h)| Ok((mor(g)?, mor(f)?, mor(h)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_index_triples(objects.iter().map(|s| s.to_string()).collect(), ms, ids, &ts)
    }

    pub fn from_index_triples(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        triples: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for (f, mf) in morphisms.iter().enumerate() {
            if let Some(&i) = identities.get(mf.cod) {
                compose[i][f] = Some(f);
            }
            if let Some(&i) = identities.get(mf.dom) {
                compose[f][i] = Some(f);
            }
        }
        for &(g, f, h) in triples {
            if g >= m || f >= m {
                return Err(Error::Shape("composition triple names an unknown morphism".into()));
            }
            if let Some(prev) = compose[g][f] {
                if prev != h {
                    return Err(Error::Invalid(format!(
                        "{}∘{} given twice with different values",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
            compose[g][f] = Some(h);
        }
        FiniteCategory::new(objects, morphisms, identities, compose)
    }

    /// A one-object category from a monoid multiplication table
    /// `table[g][f] = g∘f`.
    pub fn monoid(names: &[&str], table: &[Vec<usize>], identity: usize) -> Result<Self> {
        let morphisms = names
            .iter()
            .map(|s| Morphism { name: s.to_string(), dom: 0, cod: 0 })
            .collect();
        let compose = table.iter().map(|r| r.iter().map(|&h| Some(h)).collect()).collect();
        FiniteCategory::new(vec!["*".into()], morphisms, vec![identity], compose)
    }

    /// The thin category of a preorder `leq`.
    pub fn preorder(leq: &[Vec<bool>]) -> Self {
        let n = leq.len();
        let mut morphisms = Vec::new();
        let mut index = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                if leq[a][b] {
                    index[a][b] = Some(morphisms.len());
                    morphisms.push(Morphism { name: format!("x{}<=x{}", a, b), dom: a, cod: b });
                }
            }
        }
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for (g, mg) in morphisms.iter().enumerate() {
            for (f, mf) in morphisms.iter().enumerate() {
                if mf.cod == mg.dom {
                    compose[g][f] = index[mf.dom][mg.cod];
                }
            }
        }
        let identities = (0..n).map(|a| index[a][a].expect("reflexive")).collect();
        let objects = (0..n).map(|a| format!("x{}", a)).collect();
        FiniteCategory::new(objects, morphisms, identities, compose).expect("a transitive relation")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a][b]
    }

    /// Index of `f` within `hom(dom f, cod f)`.
    pub fn position(&self, f: usize) -> usize {
        self.positions[f]
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// `g∘f`; panics on a non-composable pair.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].unwrap_or_else(|| panic!("{}∘{} is not composable", self.name(g), self.name(f)))
    }

    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.compose
    }

    /// Identity and associativity laws.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let m = self.morphism_count();
        for f in 0..m {
            let (d, c) = (self.dom(f), self.cod(f));
            if self.comp(self.identities[c], f) != f || self.comp(f, self.identities[d]) != f {
                return Err(Violation::new("identity", vec![self.name(f).into()]));
            }
        }
        for f in 0..m {
            for g in self.homs_from(self.cod(f)) {
                for h in self.homs_from(self.cod(g)) {
                    if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f) {
                        return Err(Violation::new(
                            "associativity",
                            vec![self.name(h).into(), self.name(g).into(), self.name(f).into()],
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphisms with domain `a`, in declaration order.
    pub fn homs_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphism_count()).filter(move |&f| self.dom(f) == a)
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.dom(e) == self.cod(e) && self.comp(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.morphism_count()).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// A splitting of `e` through some object, first in declaration order.
    pub fn find_splitting(&self, e: usize) -> Option<Splitting> {
        let a = self.dom(e);
        (0..self.object_count()).find_map(|b| {
            self.hom(a, b).iter().find_map(|&r| {
                self.hom(b, a)
                    .iter()
                    .find(|&&s| self.comp(s, r) == e && self.comp(r, s) == self.identities[b])
                    .map(|&s| Splitting { idempotent: e, object: b, r, s })
            })
        })
    }

    /// Every idempotent splits.
    pub fn split_idempotents_check(&self) -> SplitVerdict {
        let mut splittings = Vec::new();
        for e in self.idempotents() {
            match self.find_splitting(e) {
                Some(s) => splittings.push(s),
                None => return SplitVerdict { complete: false, splittings, unsplit: Some(e) },
            }
        }
        SplitVerdict { complete: true, splittings, unsplit: None }
    }

    /// The subcategory on the morphisms marked `keep`, with its embedding.
    /// Fails when an identity is dropped or a composite escapes.
    pub fn subcategory(&self, keep: &[bool]) -> std::result::Result<(FiniteCategory, Vec<usize>), Violation> {
        for &i in &self.identities {
            if !keep[i] {
                return Err(Violation::new("identity kept", vec![self.name(i).into()]));
            }
        }
        let embedding: Vec<usize> = (0..self.morphism_count()).filter(|&f| keep[f]).collect();
        let mut back = vec![usize::MAX; self.morphism_count()];
        for (i, &f) in embedding.iter().enumerate() {
            back[f] = i;
        }
        let k = embedding.len();
        let mut compose = vec![vec![None; k]; k];
        for (gi, &g) in embedding.iter().enumerate() {
            for (fi, &f) in embedding.iter().enumerate() {
                if let Some(h) = self.try_compose(g, f) {
                    if !keep[h] {
                        return Err(Violation::new("closure", vec![self.name(g).into(), self.name(f).into()]));
                    }
                    compose[gi][fi] = Some(back[h]);
                }
            }
        }
        let morphisms = embedding.iter().map(|&f| self.morphisms[f].clone()).collect();
        let identities = self.identities.iter().map(|&i| back[i]).collect();
        let sub = FiniteCategory::new(self.objects.clone(), morphisms, identities, compose)
            .expect("restriction of a well-formed table");
        Ok((sub, embedding))
    }
}
