//! Model-structure predicates: the Set-enriched classes (equivalences,
//! iso-lifting fibrations, object-injective cofibrations), their
//! simplicial W1/W2-F1/F2 analogues, lifting machinery, and the explicit
//! factorization and pushout constructions.

pub mod catalog;
pub mod factor;
pub mod lift;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::collection::{Collection, Signature};
use crate::enrich::{
    is_weak_equivalence, kan_fibration_check, Backend, Elem, EnrichMap, EnrichValue,
};
use crate::error::{Error, Result};
use crate::multicat::adjoint::underlying_cat;
use crate::multicat::{Multicategory, Multifunctor};
use crate::verdict::Verdict;

/// One row of a classification: which condition was checked where, and how
/// it came out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub condition: String,
    pub signature: String,
    pub result: Verdict,
    pub detail: String,
}

impl Evidence {
    fn row(condition: &str, signature: String, result: Verdict, detail: String) -> Evidence {
        Evidence { condition: condition.to_string(), signature, result, detail }
    }
}

/// The classification of one multifunctor against the three distinguished
/// classes, with the trivial-fibration flag kept consistent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelVerdict {
    pub weq: Verdict,
    pub fib: Verdict,
    pub cofib: Verdict,
    pub trivfib: Verdict,
    pub evidence: Vec<Evidence>,
}

impl ModelVerdict {
    /// trivfib must agree with weq ∧ fib whenever all three are decided.
    pub fn consistent(&self) -> bool {
        if self.weq == Verdict::Inconclusive
            || self.fib == Verdict::Inconclusive
            || self.trivfib == Verdict::Inconclusive
        {
            return true;
        }
        self.trivfib == self.weq.and(self.fib)
    }
}

fn is_surjective(m: &EnrichMap) -> Result<bool> {
    let mut image = BTreeSet::new();
    for e in m.source().basis() {
        image.insert(m.apply(&e)?);
    }
    Ok(m.target().basis().into_iter().all(|e| image.contains(&e)))
}

/// All signatures over the given colors up to the arity bound.
fn all_signatures(colors: &[String], arity_bound: usize) -> Vec<Signature> {
    let mut sigs = Vec::new();
    let mut stack: Vec<Vec<String>> = vec![Vec::new()];
    while let Some(inputs) = stack.pop() {
        for out in colors {
            sigs.push(Signature::new(inputs.clone(), out.clone()));
        }
        if inputs.len() < arity_bound {
            for c in colors {
                let mut next = inputs.clone();
                next.push(c.clone());
                stack.push(next);
            }
        }
    }
    sigs.sort();
    sigs
}

/// The component of a multifunctor at one source signature, including the
/// unique map out of an unstored (initial) entry.
pub fn component_at(f: &Multifunctor, sig: &Signature) -> Result<EnrichMap> {
    if let Some(m) = f.map.on_entries.get(sig) {
        return Ok(m.clone());
    }
    let dsig = f.map.map_signature(sig)?;
    let target = f.target.entry(&dsig);
    let src = EnrichValue::initial(f.source.backend());
    src.map_from_fn(&target, |_| Err(Error::Invalid("initial object has no elements".into())))
}

/// Unary isomorphisms x -> y in a FinSet multicategory, found by two-sided
/// inverse search.
pub fn unary_isos(q: &Multicategory, x: &str, y: &str) -> Result<Vec<(Elem, Elem)>> {
    let fwd = Signature::unary(x, y);
    let bwd = Signature::unary(y, x);
    let unit_x = q.unit_elem(x)?;
    let unit_y = q.unit_elem(y)?;
    let mut out = Vec::new();
    for phi in q.entry(&fwd).basis() {
        for psi in q.entry(&bwd).basis() {
            let (_, back) = q.compose_at(&bwd, &psi, 1, &fwd, &phi)?;
            let (_, forth) = q.compose_at(&fwd, &phi, 1, &bwd, &psi)?;
            if back == unit_x && forth == unit_y {
                out.push((phi.clone(), psi));
                break;
            }
        }
    }
    Ok(out)
}

pub fn objects_isomorphic(q: &Multicategory, x: &str, y: &str) -> Result<bool> {
    Ok(!unary_isos(q, x, y)?.is_empty())
}

fn require_set(f: &Multifunctor, what: &str) -> Result<()> {
    if f.source.backend() != Backend::Set {
        return Err(Error::NotApplicable(format!("{} expects the FinSet backend", what)));
    }
    Ok(())
}

/// Full faithfulness: every component (over all signatures, stored or not)
/// is a bijection.
pub fn is_fully_faithful(f: &Multifunctor) -> Result<(bool, Vec<Evidence>)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for sig in all_signatures(f.source.objects(), f.source.arity_bound()) {
        let m = component_at(f, &sig)?;
        let full = is_surjective(&m)?;
        let faithful = m.is_injective();
        if !(full && faithful) {
            ok = false;
            rows.push(Evidence::row(
                "fully-faithful",
                sig.key(),
                Verdict::No,
                format!("full: {}, faithful: {}", full, faithful),
            ));
        }
    }
    if ok {
        rows.push(Evidence::row("fully-faithful", "*".into(), Verdict::Yes, String::new()));
    }
    Ok((ok, rows))
}

/// Essential surjectivity of [F]₁: every target object is isomorphic to
/// something in the image.
pub fn is_essentially_surjective(f: &Multifunctor) -> Result<(bool, Vec<Evidence>)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for y in f.target.objects() {
        let mut hit = false;
        for x in f.source.objects() {
            if objects_isomorphic(&f.target, f.apply_color(x)?, y)? {
                hit = true;
                break;
            }
        }
        if !hit {
            ok = false;
            rows.push(Evidence::row(
                "essentially-surjective",
                y.clone(),
                Verdict::No,
                "no object maps into this isomorphism class".into(),
            ));
        }
    }
    if ok {
        rows.push(Evidence::row("essentially-surjective", "*".into(), Verdict::Yes, String::new()));
    }
    Ok((ok, rows))
}

/// Iso-lifting: every isomorphism out of an image object lifts to an
/// isomorphism out of the preimage.
pub fn is_fibration_set(f: &Multifunctor) -> Result<bool> {
    require_set(f, "is_fibration_set")?;
    for x in f.source.objects() {
        let fx = f.apply_color(x)?.clone();
        for q in f.target.objects() {
            for (phi, _) in unary_isos(&f.target, &fx, q)? {
                let mut lifted = false;
                'search: for x2 in f.source.objects() {
                    if f.apply_color(x2)? != q {
                        continue;
                    }
                    for (psi, _) in unary_isos(&f.source, x, x2)? {
                        if f.apply(&Signature::unary(x, x2), &psi)? == phi {
                            lifted = true;
                            break 'search;
                        }
                    }
                }
                if !lifted {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Object-map injectivity (either backend).
pub fn is_cofibration_set(f: &Multifunctor) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for x in f.source.objects() {
        if !seen.insert(f.apply_color(x)?.clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Object-surjectivity plus full faithfulness.
pub fn is_trivial_fibration_set(f: &Multifunctor) -> Result<bool> {
    require_set(f, "is_trivial_fibration_set")?;
    let targets: BTreeSet<&String> = f.target.objects().iter().collect();
    let mut image = BTreeSet::new();
    for x in f.source.objects() {
        image.insert(f.apply_color(x)?);
    }
    if image != targets {
        return Ok(false);
    }
    Ok(is_fully_faithful(f)?.0)
}

/// Full classification against the Set-enriched structure.
pub fn is_equivalence_set(f: &Multifunctor) -> Result<ModelVerdict> {
    require_set(f, "is_equivalence_set")?;
    let mut evidence = Vec::new();
    let (ff, rows) = is_fully_faithful(f)?;
    evidence.extend(rows);
    let (es, rows) = is_essentially_surjective(f)?;
    evidence.extend(rows);
    let fib = is_fibration_set(f)?;
    evidence.push(Evidence::row(
        "iso-lifting",
        "*".into(),
        Verdict::from_bool(fib),
        String::new(),
    ));
    let cofib = is_cofibration_set(f)?;
    evidence.push(Evidence::row(
        "object-injective",
        "*".into(),
        Verdict::from_bool(cofib),
        String::new(),
    ));
    let weq = Verdict::from_bool(ff && es);
    let fib = Verdict::from_bool(fib);
    Ok(ModelVerdict {
        weq,
        fib,
        cofib: Verdict::from_bool(cofib),
        trivfib: weq.and(fib),
        evidence,
    })
}

/// π₀ of a multicategory: same objects, unary homs replaced by their sets
/// of connected components, composition induced on representatives (and
/// checked to be independent of them). The FinSet case is just the
/// underlying category.
pub fn pi0_category(p: &Multicategory) -> Result<Multicategory> {
    if p.backend() == Backend::Set {
        return underlying_cat(p);
    }
    let mut entries: BTreeMap<Signature, EnrichValue> = BTreeMap::new();
    let mut class_of: BTreeMap<(Signature, String), String> = BTreeMap::new();
    for x in p.objects() {
        for y in p.objects() {
            let sig = Signature::unary(x, y);
            let v = p.entry(&sig);
            let xs = match &v {
                EnrichValue::SSet(xs) => xs,
                _ => return Err(Error::Invalid("simplicial entries expected".into())),
            };
            if xs.is_empty() {
                continue;
            }
            let mut labels = Vec::new();
            for comp in xs.pi0() {
                let rep = comp.iter().min().cloned().expect("components are nonempty");
                for vtx in comp {
                    class_of.insert((sig.clone(), vtx), rep.clone());
                }
                labels.push(rep);
            }
            entries.insert(
                sig.clone(),
                EnrichValue::Set(crate::enrich::finset::FinSetObj::new(labels.into_iter())?),
            );
        }
    }
    let mut points = BTreeMap::new();
    for x in p.objects() {
        let sig = Signature::unary(x, x);
        let u = match p.unit_elem(x)? {
            Elem::SSet(r) => r.id,
            _ => unreachable!("simplicial backend"),
        };
        let rep = class_of
            .get(&(sig.clone(), u))
            .ok_or_else(|| Error::Invalid("unit vertex missing from its hom".into()))?;
        let target = entries.get(&sig).expect("unit class exists").clone();
        points.insert(
            x.clone(),
            EnrichValue::unit(Backend::Set).map_from_fn(&target, |_| Ok(Elem::Set(rep.clone())))?,
        );
    }
    let ops = Collection::new(
        Backend::Set,
        p.objects().to_vec(),
        1,
        entries,
        Some(BTreeMap::new()),
        Some(points),
    )?;
    let class_of = &class_of;
    Multicategory::from_comp_fn(ops, p.dim_bound(), move |col, pair, key, composed| {
        let target = col.entry_or_initial(composed).into_owned();
        pair.value.map_from_fn(&target, |e| {
            let (u, v) = pair.decode(e)?;
            // compose every pair of representative vertices and demand one class
            let us = vertices_in_class(p, &key.0, &elem_label(&u))?;
            let vs = vertices_in_class(p, &key.2, &elem_label(&v))?;
            let mut answer: Option<String> = None;
            for uu in &us {
                for vv in &vs {
                    let (_, w) = p.compose_at(
                        &key.0,
                        &Elem::SSet(crate::enrich::sset::SimplexRef::nondeg(uu)),
                        1,
                        &key.2,
                        &Elem::SSet(crate::enrich::sset::SimplexRef::nondeg(vv)),
                    )?;
                    let wid = match w {
                        Elem::SSet(r) => r.id,
                        _ => unreachable!("simplicial backend"),
                    };
                    let cls = class_of
                        .get(&(composed.clone(), wid))
                        .ok_or_else(|| Error::Invalid("composite vertex missing".into()))?;
                    match &answer {
                        None => answer = Some(cls.clone()),
                        Some(a) if a != cls => {
                            return Err(Error::Invalid(format!(
                                "π₀ composition not well defined at {}",
                                composed
                            )))
                        }
                        _ => {}
                    }
                }
            }
            Ok(Elem::Set(answer.expect("classes are nonempty")))
        })
    })
}

fn elem_label(e: &Elem) -> String {
    match e {
        Elem::Set(l) => l.clone(),
        Elem::SSet(r) => r.id.clone(),
    }
}

fn vertices_in_class(p: &Multicategory, sig: &Signature, rep: &str) -> Result<Vec<String>> {
    match p.entry(sig) {
        EnrichValue::SSet(xs) => Ok(xs.pi0_class_of(rep)),
        _ => Err(Error::Invalid("simplicial entries expected".into())),
    }
}

/// The induced functor on π₀ categories.
pub fn pi0_functor(f: &Multifunctor) -> Result<Multifunctor> {
    if f.source.backend() == Backend::Set {
        return crate::multicat::adjoint::functor_underlying(f);
    }
    let ps = pi0_category(&f.source)?;
    let qs = pi0_category(&f.target)?;
    let mut on_entries = BTreeMap::new();
    for (sig, v) in ps.ops().entries() {
        let dsig = f.map.map_signature(sig)?;
        let target = qs.entry(&dsig);
        let m = v.map_from_fn(&target, |e| {
            let rep = elem_label(e);
            let img = f.apply(sig, &Elem::SSet(crate::enrich::sset::SimplexRef::nondeg(&rep)))?;
            let img_id = elem_label(&img);
            let cls = match f.target.entry(&dsig) {
                EnrichValue::SSet(xs) => {
                    xs.pi0_class_of(&img_id).into_iter().min().ok_or_else(|| {
                        Error::Invalid("image vertex missing from target hom".into())
                    })?
                }
                _ => return Err(Error::Invalid("simplicial entries expected".into())),
            };
            Ok(Elem::Set(cls))
        })?;
        on_entries.insert(sig.clone(), m);
    }
    Multifunctor::new(ps, qs, f.map.on_colors.clone(), on_entries)
}

fn fixes_objects(f: &Multifunctor) -> bool {
    f.source.objects() == f.target.objects()
        && f.source.objects().iter().all(|x| f.apply_color(x).map(|y| y == x).unwrap_or(false))
}

/// W1/W2-F1/F2 classification for the simplicial backend, with the
/// object-fixing acyclic-fibration shortcut.
pub fn classify_simplicial(f: &Multifunctor, budget: usize) -> Result<ModelVerdict> {
    if f.source.backend() != Backend::SSet {
        return Err(Error::NotApplicable("classify_simplicial expects the FinSSet backend".into()));
    }
    let dim = f.source.dim_bound();
    let mut evidence = Vec::new();
    let mut w1 = Verdict::Yes;
    let mut f1 = Verdict::Yes;
    for sig in all_signatures(f.source.objects(), f.source.arity_bound()) {
        let m = component_at(f, &sig)?;
        if m.source().is_initial() && m.target().is_initial() {
            continue;
        }
        let answer = is_weak_equivalence(&m, budget);
        if answer.verdict != Verdict::Yes {
            evidence.push(Evidence::row("W1", sig.key(), answer.verdict, answer.reason));
        }
        w1 = w1.and(answer.verdict);
        let kan = kan_fibration_check(&m, dim)?;
        if !kan {
            evidence.push(Evidence::row("F1", sig.key(), Verdict::No, "horn with no filler".into()));
        }
        f1 = f1.and(Verdict::from_bool(kan));
    }
    evidence.push(Evidence::row("W1", "*".into(), w1, String::new()));
    evidence.push(Evidence::row("F1", "*".into(), f1, String::new()));
    let cofib = if is_cofibration_set(f)? {
        Verdict::Inconclusive
    } else {
        Verdict::No
    };
    // object-fixing shortcut: F1 ∧ W1 already force an acyclic fibration
    if fixes_objects(f) && w1 == Verdict::Yes && f1 == Verdict::Yes {
        evidence.push(Evidence::row(
            "acyclic-fibration-shortcut",
            "*".into(),
            Verdict::Yes,
            "object-fixing with W1 and F1".into(),
        ));
        return Ok(ModelVerdict {
            weq: Verdict::Yes,
            fib: Verdict::Yes,
            cofib,
            trivfib: Verdict::Yes,
            evidence,
        });
    }
    let pf = pi0_functor(f)?;
    let w2 = {
        let v = is_equivalence_set(&pf)?;
        evidence.push(Evidence::row("W2", "*".into(), v.weq, String::new()));
        v.weq
    };
    let f2 = Verdict::from_bool(is_fibration_set(&pf)?);
    evidence.push(Evidence::row("F2", "*".into(), f2, String::new()));
    let weq = w1.and(w2);
    let fib = f1.and(f2);
    Ok(ModelVerdict { weq, fib, cofib, trivfib: weq.and(fib), evidence })
}
