//! Executes one task against a resolved model.

use serde::Serialize;
use serde_json::{json, Value as Json};

use super::instance::{Command, Task};
use super::resolve::{CliQuantale, Model, Obj, SeqObj};
use crate::budget::Budget;
use crate::error::{Error, Result, Violation};
use crate::ncat::{
    canonical_certificate, check_adjunction_cert, find_representation, is_lawvere_complete_ncat,
    isbell_conjugate_ndist, strict_subcategory, validate_ncat, validate_ndist, NcatCertificate, NormedCategory,
    NormedDistributor,
};
use crate::normed_set::{check_set, NormedSet};
use crate::quantale::{Extended, Quantale};
use crate::seqlim::{
    colimit_dset, colimit_ncat, colimit_nset, colimit_vlip, dset_norm, forward_cauchy_metric, forward_limit_metric,
    is_cauchy, lipschitz_multiplicative, log_lipschitz, norm_profile, validate_sequence, verify_dset_colimit,
    verify_nset_colimit, Cocone, ColimitReport, DSet, NCat, NSet,
};
use crate::vcat::{
    check_adjoint, compose_vdist, is_adjoint_dist, is_representable, isbell_conjugate_coweight,
    isbell_conjugate_weight, lawvere_complete_vcat, validate_coweight, validate_vcat, validate_vdist,
    validate_vfunctor, validate_weight, VCategory,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A construction without a verdict.
    Done,
    InputError,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub command: String,
    pub target: Option<String>,
    pub status: Status,
    pub summary: String,
    pub details: Json,
}

struct Outcome {
    verdict: Option<bool>,
    summary: String,
    details: Json,
}

fn verdict(ok: bool, summary: impl Into<String>, details: Json) -> Result<Outcome> {
    Ok(Outcome { verdict: Some(ok), summary: summary.into(), details })
}

fn done(summary: impl Into<String>, details: Json) -> Result<Outcome> {
    Ok(Outcome { verdict: None, summary: summary.into(), details })
}

fn law(r: std::result::Result<(), Violation>, what: &str) -> Result<Outcome> {
    match r {
        Ok(()) => verdict(true, format!("{} satisfies its laws", what), json!({})),
        Err(v) => verdict(false, format!("{}: {}", what, v), json!({ "violation": v })),
    }
}

pub fn run_task<Q: CliQuantale>(m: &Model<Q>, index: usize, task: &Task, budget: &Budget) -> TaskReport {
    let (status, summary, details) = match execute(m, task, budget) {
        Ok(o) => {
            let status = match o.verdict {
                Some(true) => Status::Pass,
                Some(false) => Status::Fail,
                None => Status::Done,
            };
            (status, o.summary, o.details)
        }
        Err(e @ Error::BudgetExceeded { .. }) => (Status::BudgetExceeded, e.to_string(), json!({})),
        Err(e @ (Error::NotCauchy { .. } | Error::Precondition(_))) => (Status::Fail, e.to_string(), json!({})),
        Err(e) => (Status::InputError, e.to_string(), json!({})),
    };
    TaskReport { index, command: task.command.name().into(), target: task.target.clone(), status, summary, details }
}

fn target<'a, Q: CliQuantale>(m: &'a Model<Q>, task: &Task) -> Result<(&'a str, &'a Obj<Q::Elem>)> {
    let name = task
        .target
        .as_deref()
        .ok_or_else(|| Error::Invalid(format!("{} needs a target", task.command.name())))?;
    m.objects
        .get_key_value(name)
        .map(|(k, v)| (k.as_str(), v))
        .ok_or_else(|| Error::Invalid(format!("unknown object {:?}", name)))
}

fn unsupported<Q: Quantale>(task: &Task, obj: &Obj<Q::Elem>) -> Error {
    Error::Invalid(format!("{} does not apply to a {}", task.command.name(), kind(obj)))
}

fn kind<E>(obj: &Obj<E>) -> &'static str {
    match obj {
        Obj::Vcat(_) => "vcat",
        Obj::Vfunctor { .. } => "vfunctor",
        Obj::Vdist { .. } => "vdist",
        Obj::Weights { .. } => "weights",
        Obj::Ncat(_) => "ncat",
        Obj::Ndist { .. } => "ndist",
        Obj::Certificate { .. } => "certificate",
        Obj::Nset(_) => "nset",
        Obj::Sequence(_) => "sequence",
        Obj::MetricSequence { .. } => "metric-sequence",
        Obj::Map { .. } => "map",
    }
}

fn fmt_vec<Q: Quantale>(q: &Q, v: &[Q::Elem]) -> Vec<String> {
    q.format_all(v)
}

fn fmt_matrix<Q: Quantale>(q: &Q, v: &[Vec<Q::Elem>]) -> Vec<Vec<String>> {
    v.iter().map(|r| q.format_all(r)).collect()
}

fn nset_json<Q: Quantale>(q: &Q, s: &NormedSet<Q::Elem>) -> Json {
    Json::Array(s.ids.iter().zip(&s.norms).map(|(i, n)| json!([i, q.format(n)])).collect())
}

fn ndist_json<Q: Quantale>(q: &Q, a: &NormedCategory<Q::Elem>, d: &NormedDistributor<Q::Elem>) -> Json {
    let sets: serde_json::Map<String, Json> =
        a.category.objects.iter().zip(&d.sets).map(|(o, s)| (o.clone(), nset_json(q, s))).collect();
    Json::Object(sets)
}

fn cocone_json<M: Serialize>(c: &Cocone<M>) -> Json {
    json!({ "start": c.start, "prefix": c.prefix, "periodic": c.periodic })
}

fn execute<Q: CliQuantale>(m: &Model<Q>, task: &Task, budget: &Budget) -> Result<Outcome> {
    let q = &m.q;
    if task.command == Command::Validate && task.target.is_none() {
        let (ok, details) = q.self_check(budget);
        let mut details = details;
        if let Some(o) = &m.odot {
            let same = q.same_lattice(o);
            details["odot_same_lattice"] = json!(same);
            let (ok2, d2) = o.self_check(budget);
            details["odot"] = d2;
            return verdict(ok && ok2 && same, format!("quantales {} and {}", q.name(), o.name()), details);
        }
        return verdict(ok, format!("quantale {}", q.name()), details);
    }
    let (name, obj) = target(m, task)?;
    match task.command {
        Command::Validate => validate(m, name, obj),
        Command::Compose => {
            let with = task.with.as_deref().ok_or_else(|| Error::Invalid("compose needs `with`".into()))?;
            match (obj, m.objects.get(with)) {
                (
                    Obj::Vdist { source, target: mid, dist: phi },
                    Some(Obj::Vdist { source: mid2, target: out, dist: psi }),
                ) => {
                    if mid != mid2 {
                        return Err(Error::Shape(format!("{} ends at {} but {} starts at {}", name, mid, with, mid2)));
                    }
                    let c = compose_vdist(q, psi, phi)?;
                    done(
                        format!("{}·{}: {} ⇸ {}", with, name, source, out),
                        json!({ "source": source, "target": out, "values": fmt_matrix(q, &c.values) }),
                    )
                }
                _ => Err(Error::Invalid("compose takes two vdists".into())),
            }
        }
        Command::Adjoint => match obj {
            Obj::Vdist { source, target: tgt, dist: phi } => {
                let with = task.with.as_deref().ok_or_else(|| Error::Invalid("adjoint on a vdist needs `with`".into()))?;
                let psi = match m.objects.get(with) {
                    Some(Obj::Vdist { source: s2, target: t2, dist }) if s2 == tgt && t2 == source => dist,
                    _ => return Err(Error::Invalid(format!("{} must be a vdist {} ⇸ {}", with, tgt, source))),
                };
                let ok = is_adjoint_dist(q, m.vcat(source)?, m.vcat(tgt)?, phi, psi)?;
                verdict(ok, format!("{} ⊣ {}: {}", name, with, ok), json!({}))
            }
            Obj::Weights { category, pair } => {
                let ok = check_adjoint(q, m.vcat(category)?, pair);
                verdict(ok, format!("φ ⊣ ψ: {}", ok), json!({}))
            }
            Obj::Ndist { category, dist } => {
                let a = m.ncat(category)?;
                match canonical_certificate(q, a, dist, budget)? {
                    None => verdict(false, "not a left adjoint: no unit representative splits the counit", json!({})),
                    Some(cert) => {
                        let v = check_adjunction_cert(q, a, &cert, true)?;
                        let c = &a.category;
                        let details = json!({
                            "right_adjoint": ndist_json(q, a, &cert.psi),
                            "unit": { "object": c.objects[cert.object], "u": cert.phi.sets[cert.object].ids[cert.u],
                                      "v": cert.psi.sets[cert.object].ids[cert.v] },
                            "violations": v,
                        });
                        let summary = if v.is_empty() {
                            "normed left adjoint".to_string()
                        } else {
                            format!("left adjoint of sets, but {}", v[0])
                        };
                        verdict(v.is_empty(), summary, details)
                    }
                }
            }
            Obj::Certificate { category, cert } => {
                let v = check_adjunction_cert(q, m.ncat(category)?, cert, true)?;
                let summary = v.first().map_or("certificate checks".to_string(), |x| x.to_string());
                verdict(v.is_empty(), summary, json!({ "violations": v }))
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Isbell => match obj {
            Obj::Weights { category, pair } => {
                let x = m.vcat(category)?;
                done(
                    "Isbell conjugates",
                    json!({
                        "phi_conjugate": fmt_vec(q, &isbell_conjugate_weight(q, x, &pair.phi)),
                        "psi_conjugate": fmt_vec(q, &isbell_conjugate_coweight(q, x, &pair.psi)),
                    }),
                )
            }
            Obj::Ndist { category, dist } => {
                let a = m.ncat(category)?;
                let conj = isbell_conjugate_ndist(q, a, dist, budget)?;
                done("Isbell conjugate", json!({ "sets": ndist_json(q, a, &conj.dist) }))
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Representable => match obj {
            Obj::Weights { category, pair } => {
                let x = m.vcat(category)?;
                match is_representable(q, x, pair)? {
                    Some(a) => verdict(true, format!("represented by {}", x.objects[a]), json!({ "object": x.objects[a] })),
                    None => verdict(false, "adjoint but not representable", json!({ "object": null })),
                }
            }
            Obj::Ndist { category, dist } => {
                let a = m.ncat(category)?;
                match find_representation(q, a, dist, budget)? {
                    Some(r) => {
                        let o = &a.category.objects[r.object];
                        verdict(true, format!("normed isomorphic to the representable at {}", o), json!({ "object": o }))
                    }
                    None => verdict(false, "no normed isomorphism with a representable", json!({ "object": null })),
                }
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Lawvere => match obj {
            Obj::Vcat(x) => {
                validate_vcat(q, x).map_err(|v| Error::Precondition(format!("not a V-category: {}", v)))?;
                let v = lawvere_complete_vcat(q, x, budget)?;
                let ce = v.counterexample.as_ref().map(|p| json!({ "phi": fmt_vec(q, &p.phi), "psi": fmt_vec(q, &p.psi) }));
                let summary = if v.complete {
                    format!("Lawvere complete ({} adjoint pairs, all representable)", v.adjoint_pairs)
                } else {
                    "not Lawvere complete: an adjoint weight pair is not representable".to_string()
                };
                verdict(v.complete, summary, json!({ "candidates": v.candidates, "adjoint_pairs": v.adjoint_pairs, "counterexample": ce }))
            }
            Obj::Ncat(a) => {
                let v = is_lawvere_complete_ncat(q, a, budget)?;
                let c = &a.category;
                let (summary, details) = match &v.certificate {
                    NcatCertificate::Complete { idempotents, assignments, left_adjoints } => (
                        format!("Lawvere complete ({} idempotents, {} normed left adjoints)", idempotents, left_adjoints),
                        json!({ "idempotents": idempotents, "assignments": assignments, "left_adjoints": left_adjoints }),
                    ),
                    NcatCertificate::NonSplit { idempotent } => (
                        format!("idempotent {} does not split", c.name(*idempotent)),
                        json!({ "non_split_idempotent": c.name(*idempotent) }),
                    ),
                    NcatCertificate::NoPresentableUnit { idempotent, distributor } => (
                        format!("the left adjoint built from {} has no presentable unit", c.name(*idempotent)),
                        json!({ "idempotent": c.name(*idempotent), "distributor": ndist_json(q, a, distributor) }),
                    ),
                };
                verdict(v.complete, summary, details)
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Split => match obj {
            Obj::Ncat(a) => {
                let (strict, emb) = strict_subcategory(q, a)
                    .map_err(|v| Error::Precondition(format!("strict part is not a category: {}", v)))?;
                let s = strict.split_idempotents_check();
                let c = &a.category;
                let splittings: Vec<Json> = s
                    .splittings
                    .iter()
                    .map(|sp| {
                        json!({ "idempotent": c.name(emb[sp.idempotent]), "object": strict.objects[sp.object],
                                "r": c.name(emb[sp.r]), "s": c.name(emb[sp.s]) })
                    })
                    .collect();
                let unsplit = s.unsplit.map(|e| c.name(emb[e]).to_string());
                let summary = match &unsplit {
                    None => "every idempotent of the strict part splits".to_string(),
                    Some(e) => format!("idempotent {} does not split", e),
                };
                verdict(s.complete, summary, json!({ "splittings": splittings, "unsplit": unsplit }))
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Cauchy => match obj {
            Obj::Sequence(s) => {
                let (v, profile) = match s {
                    SeqObj::Nset(seq) => {
                        validate_sequence::<Q, _>(&NSet, seq)?;
                        let p = norm_profile(q, &NSet, seq);
                        (is_cauchy(q, &p), (p.transient, p.period))
                    }
                    SeqObj::Dset(seq) => {
                        let qn = m.odot.as_ref().unwrap_or(q);
                        validate_sequence::<Q, _>(&DSet, seq)?;
                        let p = norm_profile(qn, &DSet, seq);
                        (is_cauchy(qn, &p), (p.transient, p.period))
                    }
                    SeqObj::Ncat { category, seq } => {
                        let amb = NCat(m.ncat(category)?);
                        validate_sequence::<Q, _>(&amb, seq)?;
                        let p = norm_profile(q, &amb, seq);
                        (is_cauchy(q, &p), (p.transient, p.period))
                    }
                };
                let value = q.format(&v.value);
                verdict(
                    v.cauchy,
                    format!("Cauchy expression evaluates to {}", value),
                    json!({ "value": value, "transient": profile.0, "period": profile.1 }),
                )
            }
            Obj::MetricSequence { seq, .. } => {
                let v = forward_cauchy_metric(q, seq)?;
                let value = q.format(&v.value);
                verdict(v.cauchy, format!("forward Cauchy expression evaluates to {}", value), json!({ "value": value }))
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Colimit => match obj {
            Obj::Sequence(SeqObj::Nset(seq)) => {
                let c = colimit_nset(q, seq)?;
                let r = verify_nset_colimit(q, seq, &c.set, &c.cocone, budget)?;
                colimit_outcome(&r, json!({ "apex": nset_json(q, &c.set), "cocone": cocone_json(&c.cocone),
                                            "cauchy_value": q.format(&c.cauchy_value), "verification": r }))
            }
            Obj::Sequence(SeqObj::Dset(seq)) => {
                let (c, qn) = match &m.odot {
                    Some(o) => (colimit_vlip(q, o, seq, budget)?, o),
                    None => (colimit_dset(q, seq)?, q),
                };
                let r = verify_dset_colimit(qn, seq, &c.space, &c.cocone, budget)?;
                colimit_outcome(&r, json!({ "apex": vcat_json(q, &c.space), "cocone": cocone_json(&c.cocone),
                                            "symmetric": c.space.is_symmetric(),
                                            "cauchy_value": qn.format(&c.cauchy_value), "verification": r }))
            }
            Obj::Sequence(SeqObj::Ncat { category, seq }) => {
                let a = m.ncat(category)?;
                match colimit_ncat(q, a, seq)? {
                    Some((x, cocone)) => {
                        let c = &a.category;
                        let names = |v: &[usize]| v.iter().map(|&f| c.name(f).to_string()).collect::<Vec<_>>();
                        verdict(
                            true,
                            format!("normed colimit at {}", c.objects[x]),
                            json!({ "apex": c.objects[x], "cocone": { "start": cocone.start,
                                    "prefix": names(&cocone.prefix), "periodic": names(&cocone.periodic) } }),
                        )
                    }
                    None => verdict(false, "no object carries a normed colimit", json!({ "apex": null })),
                }
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::ForwardLimit => match obj {
            Obj::MetricSequence { seq, .. } => {
                let x = &seq.space;
                let cauchy = forward_cauchy_metric(q, seq)?;
                match &task.candidate {
                    Some(c) => {
                        let i = x.index(c).ok_or_else(|| Error::Invalid(format!("unknown point {:?}", c)))?;
                        let ok = forward_limit_metric(q, seq, i)?;
                        verdict(ok, format!("{} is {}a forward limit", c, if ok { "" } else { "not " }),
                                json!({ "cauchy": cauchy.cauchy, "candidate": c }))
                    }
                    None => {
                        let mut limits = Vec::new();
                        for i in 0..x.len() {
                            if forward_limit_metric(q, seq, i)? {
                                limits.push(x.objects[i].clone());
                            }
                        }
                        verdict(!limits.is_empty(), format!("forward limits: [{}]", limits.join(", ")),
                                json!({ "cauchy": cauchy.cauchy, "limits": limits }))
                    }
                }
            }
            other => Err(unsupported::<Q>(task, other)),
        },
        Command::Lipnorm => match obj {
            Obj::Map { source, target: tgt, map } | Obj::Vfunctor { source, target: tgt, map } => {
                let (x, y) = (m.vcat(source)?, m.vcat(tgt)?);
                match task.mode.as_deref().unwrap_or("odot") {
                    "odot" => {
                        let qn = m.odot.as_ref().unwrap_or(q);
                        let v = qn.format(&dset_norm(qn, x, y, map));
                        done(format!("norm in {}: {}", qn.name(), v), json!({ "mode": "odot", "value": v }))
                    }
                    mode @ ("multiplicative" | "log") => {
                        let (xe, ye) = (extended_space::<Q>(x)?, extended_space::<Q>(y)?);
                        if mode == "multiplicative" {
                            let v = lipschitz_multiplicative(&xe, &ye, map).to_string();
                            done(format!("Lipschitz constant {}", v), json!({ "mode": mode, "value": v }))
                        } else {
                            let base = task.base.unwrap_or(2);
                            let v = log_lipschitz(&xe, &ye, map, base)?.to_string();
                            done(format!("log Lipschitz norm {}", v), json!({ "mode": mode, "base": base, "value": v }))
                        }
                    }
                    other => Err(Error::Invalid(format!("unknown lipnorm mode {:?}", other))),
                }
            }
            other => Err(unsupported::<Q>(task, other)),
        },
    }
}

fn extended_space<Q: CliQuantale>(x: &VCategory<Q::Elem>) -> Result<VCategory<Extended>> {
    let dist = x
        .dist
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| Q::extended(v).ok_or_else(|| Error::Invalid("Lipschitz ratios need a Lawvere carrier".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    VCategory::new(x.objects.clone(), dist)
}

fn vcat_json<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>) -> Json {
    json!({ "objects": x.objects, "dist": fmt_matrix(q, &x.dist) })
}

fn colimit_outcome(r: &ColimitReport, details: Json) -> Result<Outcome> {
    let failed: Vec<&str> = [("C1", &r.c1), ("C2a", &r.c2a), ("C2b", &r.c2b)]
        .iter()
        .filter(|(_, c)| !c.passed)
        .map(|(n, _)| *n)
        .collect();
    let summary = if failed.is_empty() {
        format!("normed colimit verified ({} probes, probe size <= {})", r.probes, r.probe_bound)
    } else {
        format!("constructed cocone fails {}", failed.join(", "))
    };
    verdict(failed.is_empty(), summary, details)
}

fn validate<Q: CliQuantale>(m: &Model<Q>, name: &str, obj: &Obj<Q::Elem>) -> Result<Outcome> {
    let q = &m.q;
    match obj {
        Obj::Vcat(x) => law(validate_vcat(q, x), name),
        Obj::Vfunctor { source, target, map } => law(validate_vfunctor(q, m.vcat(source)?, m.vcat(target)?, map), name),
        Obj::Vdist { source, target, dist } => {
            law(validate_vdist(q, m.vcat(source)?, m.vcat(target)?, dist), name)
        }
        Obj::Weights { category, pair } => {
            let x = m.vcat(category)?;
            law(validate_weight(q, x, &pair.phi).and_then(|_| validate_coweight(q, x, &pair.psi)), name)
        }
        Obj::Ncat(a) => law(validate_ncat(q, a), name),
        Obj::Ndist { category, dist } => law(validate_ndist(q, m.ncat(category)?, dist), name),
        Obj::Certificate { category, cert } => {
            let v = check_adjunction_cert(q, m.ncat(category)?, cert, true)?;
            let summary = v.first().map_or(format!("{} checks", name), |x| x.to_string());
            verdict(v.is_empty(), summary, json!({ "violations": v }))
        }
        Obj::Nset(s) => {
            check_set(q, s)?;
            verdict(true, format!("{} is a normed set", name), json!({}))
        }
        Obj::Sequence(s) => {
            match s {
                SeqObj::Nset(seq) => {
                    validate_sequence::<Q, _>(&NSet, seq)?;
                    for n in 0..=seq.start() {
                        check_set(q, seq.object(n))?;
                    }
                }
                SeqObj::Dset(seq) => {
                    validate_sequence::<Q, _>(&DSet, seq)?;
                    if m.odot.is_some() {
                        for n in 0..=seq.start() {
                            if let Err(v) = validate_vcat(q, seq.object(n)) {
                                return verdict(false, format!("stage {} is not a V-category: {}", n, v), json!({}));
                            }
                        }
                    }
                }
                SeqObj::Ncat { category, seq } => validate_sequence::<Q, _>(&NCat(m.ncat(category)?), seq)?,
            }
            verdict(true, format!("{} is a well-typed sequence", name), json!({}))
        }
        Obj::MetricSequence { .. } | Obj::Map { .. } => {
            verdict(true, format!("{} is well-typed", name), json!({}))
        }
    }
}
