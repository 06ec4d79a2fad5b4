//! Resolves an [`Instance`] against a concrete quantale: element names
//! become carrier values and object references become indices.

use std::collections::BTreeMap;

use super::instance::*;
use crate::budget::Budget;
use crate::category::{FiniteCategory, Morphism};
use crate::error::{Error, Result};
use crate::ncat::{AdjunctionCertificate, NormedCategory, NormedDistributor, Variance};
use crate::normed_set::NormedSet;
use crate::quantale::{builtin, AnyQuantale, Extended, FiniteQuantale, LawvereQuantale, Quantale, QuantaleTable};
use crate::seqlim::{MetricSequence, Sequence};
use crate::vcat::{VCategory, VDistributor, VWeightPair};

/// A quantale the front end can read values for.
pub trait CliQuantale: Quantale + Clone {
    fn value(&self, v: &Value) -> Result<Self::Elem>;
    /// The value as a number in `[0, ∞]`, on Lawvere carriers.
    fn extended(e: &Self::Elem) -> Option<Extended>;
    /// Axiom checks for the quantale itself.
    fn self_check(&self, budget: &Budget) -> (bool, serde_json::Value);
}

impl CliQuantale for FiniteQuantale {
    fn value(&self, v: &Value) -> Result<usize> {
        match v {
            Value::Name(s) => self
                .element(s)
                .ok_or_else(|| Error::NotInCarrier(format!("{} (quantale {})", s, self.name()))),
            Value::Number(n) => Err(Error::Invalid(format!(
                "numeral {} used in the finite quantale {}; write an element name",
                n,
                self.name()
            ))),
        }
    }

    fn extended(_: &usize) -> Option<Extended> {
        None
    }

    fn self_check(&self, budget: &Budget) -> (bool, serde_json::Value) {
        let r = self.validate(budget);
        (r.passed(), serde_json::json!({ "quantale": self.name(), "checks": r.checks }))
    }
}

impl CliQuantale for LawvereQuantale {
    fn value(&self, v: &Value) -> Result<Extended> {
        v.to_string().parse()
    }

    fn extended(e: &Extended) -> Option<Extended> {
        Some(e.clone())
    }

    /// The laws hold in closed form on `[0, ∞]`.
    fn self_check(&self, _: &Budget) -> (bool, serde_json::Value) {
        (true, serde_json::json!({ "quantale": self.name(), "checks": "closed form" }))
    }
}

pub fn resolve_quantale(spec: &QuantaleSpec) -> Result<AnyQuantale> {
    match spec {
        QuantaleSpec::Builtin(name) => builtin(name).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown quantale {:?}; built-in names are {}",
                name,
                crate::quantale::BUILTIN_NAMES.join(", ")
            ))
        }),
        QuantaleSpec::Table(t) => {
            let n = t.elements.len();
            let idx = |s: &str| {
                t.elements
                    .iter()
                    .position(|e| e == s)
                    .ok_or_else(|| Error::NotInCarrier(format!("{} (quantale {})", s, t.name)))
            };
            let mut leq = vec![vec![false; n]; n];
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
            }
            for (a, b) in &t.order {
                leq[idx(a)?][idx(b)?] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if leq[i][k] && leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
            if t.tensor.len() != n || t.tensor.iter().any(|r| r.len() != n) {
                return Err(Error::Shape(format!("tensor table of {} must be {}x{}", t.name, n, n)));
            }
            let tensor = t
                .tensor
                .iter()
                .map(|r| r.iter().map(|s| idx(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let table = QuantaleTable { name: t.name.clone(), elements: t.elements.clone(), leq, tensor, unit: idx(&t.unit)? };
            Ok(AnyQuantale::Finite(FiniteQuantale::new(table)?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqObj<E> {
    Nset(Sequence<NormedSet<E>, Vec<usize>>),
    Dset(Sequence<VCategory<E>, Vec<usize>>),
    Ncat { category: String, seq: Sequence<usize, usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obj<E> {
    Vcat(VCategory<E>),
    Vfunctor { source: String, target: String, map: Vec<usize> },
    Vdist { source: String, target: String, dist: VDistributor<E> },
    Weights { category: String, pair: VWeightPair<E> },
    Ncat(NormedCategory<E>),
    Ndist { category: String, dist: NormedDistributor<E> },
    Certificate { category: String, cert: AdjunctionCertificate<E> },
    Nset(NormedSet<E>),
    Sequence(SeqObj<E>),
    MetricSequence { space: String, seq: MetricSequence<E> },
    Map { source: String, target: String, map: Vec<usize> },
}

pub struct Model<Q: Quantale> {
    pub q: Q,
    pub odot: Option<Q>,
    pub objects: BTreeMap<String, Obj<Q::Elem>>,
}

fn position(names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Invalid(format!("unknown {} {:?}", what, name)))
}

fn positions(names: &[String], items: &[String], what: &str) -> Result<Vec<usize>> {
    items.iter().map(|s| position(names, s, what)).collect()
}

fn context(name: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Invalid(m) => Error::Invalid(format!("object {}: {}", name, m)),
        Error::Shape(m) => Error::Shape(format!("object {}: {}", name, m)),
        Error::NotInCarrier(m) => Error::NotInCarrier(format!("{} in object {}", m, name)),
        other => other,
    }
}

impl<Q: CliQuantale> Model<Q> {
    pub fn build(q: Q, odot: Option<Q>, inst: &Instance) -> Result<Self> {
        let mut m = Model { q, odot, objects: BTreeMap::new() };
        // objects referenced by others go first
        for pass in 0..3 {
            for (name, spec) in &inst.objects {
                let stage = match spec {
                    ObjectSpec::Vcat(_) | ObjectSpec::Ncat { .. } | ObjectSpec::Nset(_) => 0,
                    ObjectSpec::Certificate { .. } => 2,
                    _ => 1,
                };
                if stage == pass {
                    let obj = m.resolve(spec).map_err(context(name))?;
                    m.objects.insert(name.clone(), obj);
                }
            }
        }
        Ok(m)
    }

    fn values(&self, vs: &[Value]) -> Result<Vec<Q::Elem>> {
        vs.iter().map(|v| self.q.value(v)).collect()
    }

    fn matrix(&self, rows: &[Vec<Value>]) -> Result<Vec<Vec<Q::Elem>>> {
        rows.iter().map(|r| self.values(r)).collect()
    }

    pub fn vcat(&self, name: &str) -> Result<&VCategory<Q::Elem>> {
        match self.objects.get(name) {
            Some(Obj::Vcat(x)) => Ok(x),
            Some(_) => Err(Error::Invalid(format!("{} is not a vcat", name))),
            None => Err(Error::Invalid(format!("unknown object {:?}", name))),
        }
    }

    pub fn ncat(&self, name: &str) -> Result<&NormedCategory<Q::Elem>> {
        match self.objects.get(name) {
            Some(Obj::Ncat(a)) => Ok(a),
            Some(_) => Err(Error::Invalid(format!("{} is not an ncat", name))),
            None => Err(Error::Invalid(format!("unknown object {:?}", name))),
        }
    }

    pub fn ndist(&self, name: &str) -> Result<(&str, &NormedDistributor<Q::Elem>)> {
        match self.objects.get(name) {
            Some(Obj::Ndist { category, dist }) => Ok((category, dist)),
            Some(_) => Err(Error::Invalid(format!("{} is not an ndist", name))),
            None => Err(Error::Invalid(format!("unknown object {:?}", name))),
        }
    }

    fn vcat_spec(&self, spec: &VcatSpec) -> Result<VCategory<Q::Elem>> {
        VCategory::new(spec.objects.clone(), self.matrix(&spec.dist)?)
    }

    fn vcat_ref(&self, r: &Ref<VcatSpec>) -> Result<VCategory<Q::Elem>> {
        match r {
            Ref::Name(n) => self.vcat(n).cloned(),
            Ref::Inline(spec) => self.vcat_spec(spec),
        }
    }

    fn nset_spec(&self, spec: &NsetSpec) -> Result<NormedSet<Q::Elem>> {
        let ids = spec.elements.iter().map(|(i, _)| i.clone()).collect();
        let norms = spec.elements.iter().map(|(_, v)| self.q.value(v)).collect::<Result<_>>()?;
        Ok(NormedSet::new(ids, norms))
    }

    fn nset_ref(&self, r: &Ref<NsetSpec>) -> Result<NormedSet<Q::Elem>> {
        match r {
            Ref::Name(n) => match self.objects.get(n) {
                Some(Obj::Nset(s)) => Ok(s.clone()),
                _ => Err(Error::Invalid(format!("{:?} is not an nset", n))),
            },
            Ref::Inline(spec) => self.nset_spec(spec),
        }
    }

    fn resolve(&self, spec: &ObjectSpec) -> Result<Obj<Q::Elem>> {
        Ok(match spec {
            ObjectSpec::Vcat(v) => Obj::Vcat(self.vcat_spec(v)?),
            ObjectSpec::Nset(s) => Obj::Nset(self.nset_spec(s)?),
            ObjectSpec::Vfunctor { source, target, map } | ObjectSpec::Map { source, target, map } => {
                let (x, y) = (self.vcat(source)?, self.vcat(target)?);
                if map.len() != x.len() {
                    return Err(Error::Shape(format!("map lists {} images for {} objects", map.len(), x.len())));
                }
                let map = positions(&y.objects, map, "object")?;
                let (source, target) = (source.clone(), target.clone());
                if matches!(spec, ObjectSpec::Map { .. }) {
                    Obj::Map { source, target, map }
                } else {
                    Obj::Vfunctor { source, target, map }
                }
            }
            ObjectSpec::Vdist { source, target, values } => {
                self.vcat(source)?;
                self.vcat(target)?;
                Obj::Vdist {
                    source: source.clone(),
                    target: target.clone(),
                    dist: VDistributor { values: self.matrix(values)? },
                }
            }
            ObjectSpec::Weights { category, phi, psi } => {
                let x = self.vcat(category)?;
                let pair = VWeightPair { phi: self.values(phi)?, psi: self.values(psi)? };
                if pair.phi.len() != x.len() || pair.psi.len() != x.len() {
                    return Err(Error::Shape(format!("weights need {} entries", x.len())));
                }
                Obj::Weights { category: category.clone(), pair }
            }
            ObjectSpec::Ncat { objects, morphisms, identities, compose } => {
                Obj::Ncat(self.ncat_spec(objects, morphisms, identities.as_deref(), compose)?)
            }
            ObjectSpec::Ndist { category, variance, sets, action } => {
                let a = self.ncat(category)?;
                Obj::Ndist { category: category.clone(), dist: self.ndist_spec(a, variance, sets, action)? }
            }
            ObjectSpec::Certificate { category, phi, psi, counit, unit } => {
                let a = self.ncat(category)?;
                let (pc, phi) = self.ndist(phi)?;
                let (sc, psi) = self.ndist(psi)?;
                if pc != category || sc != category {
                    return Err(Error::Invalid(format!("distributors must live on {}", category)));
                }
                Obj::Certificate { category: category.clone(), cert: self.certificate(a, phi, psi, counit, unit)? }
            }
            ObjectSpec::Sequence(s) => Obj::Sequence(self.sequence(s)?),
            ObjectSpec::MetricSequence { space, prefix_points, tail } => {
                let x = self.vcat(space)?;
                if let Some(p) = tail.period {
                    if p != tail.points.len() {
                        return Err(Error::Shape(format!(
                            "period {} disagrees with {} tail points",
                            p,
                            tail.points.len()
                        )));
                    }
                }
                let seq = MetricSequence {
                    space: x.clone(),
                    prefix: positions(&x.objects, prefix_points, "point")?,
                    tail: positions(&x.objects, &tail.points, "point")?,
                };
                seq.check()?;
                Obj::MetricSequence { space: space.clone(), seq }
            }
        })
    }

    fn ncat_spec(
        &self,
        objects: &[String],
        morphisms: &[MorphismSpec],
        identities: Option<&[String]>,
        compose: &[(String, String, String)],
    ) -> Result<NormedCategory<Q::Elem>> {
        let mut ms = Vec::new();
        let mut norms = Vec::new();
        for m in morphisms {
            ms.push(Morphism {
                name: m.name.clone(),
                dom: position(objects, &m.dom, "object")?,
                cod: position(objects, &m.cod, "object")?,
            });
            norms.push(self.q.value(&m.norm)?);
        }
        let ids = match identities {
            Some(list) => {
                if list.len() != objects.len() {
                    return Err(Error::Shape(format!("{} identities for {} objects", list.len(), objects.len())));
                }
                let names: Vec<String> = ms.iter().map(|m| m.name.clone()).collect();
                positions(&names, list, "morphism")?
            }
            None => {
                let mut ids = Vec::new();
                for (x, o) in objects.iter().enumerate() {
                    ids.push(ms.len());
                    ms.push(Morphism { name: format!("id_{}", o), dom: x, cod: x });
                    norms.push(self.q.unit());
                }
                ids
            }
        };
        let names: Vec<String> = ms.iter().map(|m| m.name.clone()).collect();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(*n)) {
            return Err(Error::Invalid(format!("morphism {} declared twice", dup)));
        }
        let triples = compose
            .iter()
            .map(|(g, f, h)| {
                Ok((position(&names, g, "morphism")?, position(&names, f, "morphism")?, position(&names, h, "morphism")?))
            })
            .collect::<Result<Vec<_>>>()?;
        let category = FiniteCategory::from_index_triples(objects.to_vec(), ms, ids, &triples)?;
        NormedCategory::new(category, norms)
    }

    fn ndist_spec(
        &self,
        a: &NormedCategory<Q::Elem>,
        variance: &str,
        sets: &BTreeMap<String, Vec<(String, Value)>>,
        action: &BTreeMap<String, Vec<String>>,
    ) -> Result<NormedDistributor<Q::Elem>> {
        let c = &a.category;
        let variance = match variance {
            "covariant" => Variance::Covariant,
            "contravariant" => Variance::Contravariant,
            other => return Err(Error::Invalid(format!("variance {:?} is neither covariant nor contravariant", other))),
        };
        for o in sets.keys() {
            position(&c.objects, o, "object")?;
        }
        for h in action.keys() {
            c.morphism_index(h).ok_or_else(|| Error::Invalid(format!("unknown morphism {:?}", h)))?;
        }
        let mut out_sets = Vec::new();
        for o in &c.objects {
            let elems = sets.get(o).map(Vec::as_slice).unwrap_or(&[]);
            let ids = elems.iter().map(|(i, _)| i.clone()).collect();
            let norms = elems.iter().map(|(_, v)| self.q.value(v)).collect::<Result<_>>()?;
            out_sets.push(NormedSet::new(ids, norms));
        }
        let mut dist = NormedDistributor { variance, sets: out_sets, action: Vec::new() };
        for h in 0..c.morphism_count() {
            let (s, t) = (dist.source_of(a, h), dist.target_of(a, h));
            let row = match action.get(c.name(h)) {
                Some(images) => {
                    if images.len() != dist.sets[s].len() {
                        return Err(Error::Shape(format!(
                            "action of {} lists {} images for {} elements",
                            c.name(h),
                            images.len(),
                            dist.sets[s].len()
                        )));
                    }
                    positions(&dist.sets[t].ids, images, "element")?
                }
                None if c.identities.contains(&h) => (0..dist.sets[s].len()).collect(),
                None => return Err(Error::Invalid(format!("missing action of {}", c.name(h)))),
            };
            dist.action.push(row);
        }
        Ok(dist)
    }

    fn certificate(
        &self,
        a: &NormedCategory<Q::Elem>,
        phi: &NormedDistributor<Q::Elem>,
        psi: &NormedDistributor<Q::Elem>,
        counit: &[CounitEntry],
        unit: &UnitSpec,
    ) -> Result<AdjunctionCertificate<Q::Elem>> {
        let c = &a.category;
        let n = c.object_count();
        let mut table: Vec<Vec<Vec<Option<usize>>>> = (0..n)
            .map(|x| (0..n).map(|b| vec![None; phi.sets[b].len() * psi.sets[x].len()]).collect())
            .collect();
        for e in counit {
            let x = position(&c.objects, &e.a, "object")?;
            let b = position(&c.objects, &e.b, "object")?;
            let y = position(&phi.sets[b].ids, &e.y, "element")?;
            let xe = position(&psi.sets[x].ids, &e.x, "element")?;
            let m = c.morphism_index(&e.morphism).ok_or_else(|| Error::Invalid(format!("unknown morphism {:?}", e.morphism)))?;
            table[x][b][y * psi.sets[x].len() + xe] = Some(m);
        }
        let counit = table
            .into_iter()
            .enumerate()
            .map(|(x, rows)| {
                rows.into_iter()
                    .enumerate()
                    .map(|(b, row)| {
                        row.into_iter()
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| Error::Shape(format!("counit incomplete at ({}, {})", c.objects[x], c.objects[b])))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let object = position(&c.objects, &unit.object, "object")?;
        Ok(AdjunctionCertificate {
            phi: phi.clone(),
            psi: psi.clone(),
            counit,
            object,
            u: position(&phi.sets[object].ids, &unit.u, "element")?,
            v: position(&psi.sets[object].ids, &unit.v, "element")?,
        })
    }

    fn sequence(&self, spec: &SequenceSpec) -> Result<SeqObj<Q::Elem>> {
        Ok(match spec {
            SequenceSpec::Nset { prefix, tail } => {
                let objs: Vec<NormedSet<Q::Elem>> = prefix
                    .iter()
                    .map(|s| self.nset_ref(&s.object))
                    .chain(std::iter::once(self.nset_ref(&tail.object)))
                    .collect::<Result<_>>()?;
                let steps = prefix.iter().map(|s| &s.step).chain(std::iter::once(&tail.endo));
                let maps = steps
                    .enumerate()
                    .map(|(n, m)| positions(&objs[(n + 1).min(objs.len() - 1)].ids, m, "element"))
                    .collect::<Result<Vec<_>>>()?;
                SeqObj::Nset(build_seq(objs, maps))
            }
            SequenceSpec::Dset { prefix, tail } => {
                let objs: Vec<VCategory<Q::Elem>> = prefix
                    .iter()
                    .map(|s| self.vcat_ref(&s.object))
                    .chain(std::iter::once(self.vcat_ref(&tail.object)))
                    .collect::<Result<_>>()?;
                let steps = prefix.iter().map(|s| &s.step).chain(std::iter::once(&tail.endo));
                let maps = steps
                    .enumerate()
                    .map(|(n, m)| positions(&objs[(n + 1).min(objs.len() - 1)].objects, m, "point"))
                    .collect::<Result<Vec<_>>>()?;
                SeqObj::Dset(build_seq(objs, maps))
            }
            SequenceSpec::Ncat { category, prefix, tail } => {
                let c = &self.ncat(category)?.category;
                let obj = |s: &str| position(&c.objects, s, "object");
                let mor = |s: &str| c.morphism_index(s).ok_or_else(|| Error::Invalid(format!("unknown morphism {:?}", s)));
                let seq = Sequence {
                    prefix: prefix.iter().map(|s| Ok((obj(&s.object)?, mor(&s.step)?))).collect::<Result<_>>()?,
                    tail: obj(&tail.object)?,
                    endo: mor(&tail.endo)?,
                };
                SeqObj::Ncat { category: category.clone(), seq }
            }
        })
    }
}

/// Objects `A_0..A_{N0-1}, T` and maps `s_0..s_{N0-1}, t`.
fn build_seq<O>(mut objs: Vec<O>, mut maps: Vec<Vec<usize>>) -> Sequence<O, Vec<usize>> {
    let tail = objs.pop().expect("tail object");
    let endo = maps.pop().expect("tail endomorphism");
    Sequence { prefix: objs.into_iter().zip(maps).collect(), tail, endo }
}
