//! Commuting squares, the exhaustive lift solver, and the generating
//! families whose right lifting properties carve out the fibrations and
//! trivial fibrations.

use std::collections::BTreeMap;

use crate::collection::{make_generating, Signature};
use crate::enrich::sset::{FinSSetObj, SimplexRef};
use crate::enrich::{
    coproduct_elem, enumerate_hom, generating_acyclic_cofibrations, generating_cofibrations,
    split_coproduct_elem, Backend, Elem, EnrichMap, EnrichValue,
};
use crate::error::{Error, Result};
use crate::multicat::adjoint::CategoryBuilder;
use crate::multicat::free::materialize_rigid;
use crate::multicat::{
    discrete_functor, enumerate_multifunctors, to_discrete, Multicategory, Multifunctor,
};

use super::component_at;

/// A commuting square
///
/// ```text
///   A --f--> P
///   |i       |p
///   B --g--> Q
/// ```
///
/// a lift is a diagonal h: B -> P with h∘i = f and p∘h = g.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: Multifunctor,
    pub f: Multifunctor,
    pub p: Multifunctor,
    pub g: Multifunctor,
}

impl LiftingProblem {
    pub fn new(
        i: Multifunctor,
        f: Multifunctor,
        p: Multifunctor,
        g: Multifunctor,
    ) -> Result<LiftingProblem> {
        if i.source != f.source || i.target != g.source || f.target != p.source || g.target != p.target
        {
            return Err(Error::Invalid("lifting square corners do not align".into()));
        }
        if p.compose(&f)?.map != g.compose(&i)?.map {
            return Err(Error::Invalid("lifting square does not commute".into()));
        }
        Ok(LiftingProblem { i, f, p, g })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Lift(Box<Multifunctor>),
    NoLift,
    Exhausted,
}

/// Exhaustive diagonal search: object assignments first (forced through the
/// left leg where possible, otherwise fibered over g), then per-signature
/// entry maps filtered by both commutation constraints, then full functor
/// validation. Deterministic order, so counterexamples are reproducible.
pub fn solve_lift(l: &LiftingProblem, budget: usize) -> Result<LiftOutcome> {
    let b = &l.i.target;
    let p = &l.p.source;

    // object images forced by h∘i = f
    let mut forced: BTreeMap<String, String> = BTreeMap::new();
    for a in l.i.source.objects() {
        let bo = l.i.apply_color(a)?.clone();
        let x = l.f.apply_color(a)?.clone();
        if let Some(prev) = forced.insert(bo, x.clone()) {
            if prev != x {
                return Ok(LiftOutcome::NoLift);
            }
        }
    }
    let mut obj_lists: Vec<(String, Vec<String>)> = Vec::new();
    for bo in b.objects() {
        let gb = l.g.apply_color(bo)?;
        let cands: Vec<String> = match forced.get(bo) {
            Some(x) => {
                if l.p.apply_color(x)? == gb {
                    vec![x.clone()]
                } else {
                    return Ok(LiftOutcome::NoLift);
                }
            }
            None => p
                .objects()
                .iter()
                .filter(|x| l.p.apply_color(x).map(|y| y == gb).unwrap_or(false))
                .cloned()
                .collect(),
        };
        if cands.is_empty() {
            return Ok(LiftOutcome::NoLift);
        }
        obj_lists.push((bo.clone(), cands));
    }

    let sigs: Vec<Signature> = b.ops().entries().keys().cloned().collect();
    let mut truncated = false;
    let mut spent: usize = 0;
    // per (signature, image signature) candidate maps, shared across
    // object assignments
    let mut cand_cache: BTreeMap<(Signature, Signature), Vec<EnrichMap>> = BTreeMap::new();

    let mut obj_idx = vec![0usize; obj_lists.len()];
    'objects: loop {
        spent += 1;
        if spent > budget {
            return Ok(LiftOutcome::Exhausted);
        }
        let on_colors: BTreeMap<String, String> = obj_lists
            .iter()
            .zip(&obj_idx)
            .map(|((bo, cands), &k)| (bo.clone(), cands[k].clone()))
            .collect();

        let mut entry_lists: Vec<(Signature, Vec<EnrichMap>)> = Vec::new();
        let mut feasible = true;
        for sig in &sigs {
            let tsig = Signature::new(
                sig.inputs.iter().map(|c| on_colors[c].clone()).collect(),
                on_colors[&sig.output].clone(),
            );
            let key = (sig.clone(), tsig.clone());
            if !cand_cache.contains_key(&key) {
                let (all, complete) = enumerate_hom(
                    &b.entry(sig),
                    &p.entry(&tsig),
                    budget.saturating_sub(spent).max(1),
                )?;
                if !complete {
                    truncated = true;
                }
                let p_comp = component_at(&l.p, &tsig)?;
                let g_comp = component_at(&l.g, sig)?;
                let mut kept = Vec::new();
                'cands: for m in all {
                    if p_comp.compose(&m)? != g_comp {
                        continue;
                    }
                    for (asig, i_comp) in &l.i.map.on_entries {
                        if l.i.map.map_signature(asig)? != *sig {
                            continue;
                        }
                        let f_comp = component_at(&l.f, asig)?;
                        if m.compose(i_comp)? != f_comp {
                            continue 'cands;
                        }
                    }
                    kept.push(m);
                }
                cand_cache.insert(key.clone(), kept);
            }
            let kept = &cand_cache[&key];
            if kept.is_empty() {
                feasible = false;
                break;
            }
            entry_lists.push((sig.clone(), kept.clone()));
        }

        if feasible {
            let mut ent_idx = vec![0usize; entry_lists.len()];
            loop {
                spent += 1;
                if spent > budget {
                    return Ok(LiftOutcome::Exhausted);
                }
                let on_entries: BTreeMap<Signature, EnrichMap> = entry_lists
                    .iter()
                    .zip(&ent_idx)
                    .map(|((s, ms), &k)| (s.clone(), ms[k].clone()))
                    .collect();
                if let Ok(h) =
                    Multifunctor::new(b.clone(), p.clone(), on_colors.clone(), on_entries)
                {
                    if l.p.compose(&h)?.map == l.g.map && h.compose(&l.i)?.map == l.f.map {
                        return Ok(LiftOutcome::Lift(Box::new(h)));
                    }
                }
                let mut k = 0;
                loop {
                    if k == entry_lists.len() {
                        break;
                    }
                    ent_idx[k] += 1;
                    if ent_idx[k] < entry_lists[k].1.len() {
                        break;
                    }
                    ent_idx[k] = 0;
                    k += 1;
                }
                if k == entry_lists.len() {
                    break;
                }
            }
        }

        let mut k = 0;
        loop {
            if k == obj_lists.len() {
                break 'objects;
            }
            obj_idx[k] += 1;
            if obj_idx[k] < obj_lists[k].1.len() {
                break;
            }
            obj_idx[k] = 0;
            k += 1;
        }
        if k == obj_lists.len() {
            break;
        }
    }

    if truncated {
        Ok(LiftOutcome::Exhausted)
    } else {
        Ok(LiftOutcome::NoLift)
    }
}

/// The tagged generating maps: cofibrations (C1 corolla probes over the
/// backend generating cofibrations, plus C2) and acyclic cofibrations (A1
/// corolla probes over the backend generating acyclic cofibrations, plus
/// the interval inclusion A2).
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub cofibrations: Vec<(String, Multifunctor)>,
    pub acyclic: Vec<(String, Multifunctor)>,
}

/// The functor of corollas over a map of values: identity on colors,
/// tag-preserving on the symmetrized entries.
pub fn corolla_map(n: usize, km: &EnrichMap, dim_bound: usize) -> Result<Multifunctor> {
    let src = materialize_rigid(&make_generating(n, &km.source())?, dim_bound)?;
    let tgt = materialize_rigid(&make_generating(n, &km.target())?, dim_bound)?;
    let on_colors: BTreeMap<String, String> =
        src.objects().iter().map(|c| (c.clone(), c.clone())).collect();
    let mut on_entries = BTreeMap::new();
    for (sig, v) in src.ops().entries() {
        let m = if sig.arity() == 1 && sig.inputs[0] == sig.output {
            EnrichMap::identity(v)
        } else {
            v.map_from_fn(&tgt.entry(sig), |e| {
                let (tag, inner) = split_coproduct_elem(e)?;
                Ok(coproduct_elem(&tag, &km.apply(&inner)?))
            })?
        };
        on_entries.insert(sig.clone(), m);
    }
    Multifunctor::new(src, tgt, on_colors, on_entries)
}

fn empty_to_point(backend: Backend, dim_bound: usize) -> Result<Multifunctor> {
    let empty_ops = crate::collection::Collection::new(
        Backend::Set,
        Vec::new(),
        1,
        BTreeMap::new(),
        Some(BTreeMap::new()),
        Some(BTreeMap::new()),
    )?;
    let empty = Multicategory::new(empty_ops, BTreeMap::new(), dim_bound)?;
    let point = CategoryBuilder::new(&["0"]).build(1, dim_bound)?;
    let f = Multifunctor::new(empty, point, BTreeMap::new(), BTreeMap::new())?;
    match backend {
        Backend::Set => Ok(f),
        Backend::SSet => discrete_functor(&f),
    }
}

/// The contractible-pair target of A2. For FinSet this is Ξ(H); for
/// FinSSet every hom is the truncated nerve of the contractible pair and
/// composition is the coordinatewise group law of its word model.
pub fn interval(backend: Backend, dim_bound: usize) -> Result<Multicategory> {
    match backend {
        Backend::Set => CategoryBuilder::new(&["0", "1"])
            .arrow("up", "0", "1")
            .arrow("down", "1", "0")
            .rule("down", "up", "1_0")
            .rule("up", "down", "1_1")
            .build(1, dim_bound),
        Backend::SSet => {
            let value = EnrichValue::SSet(FinSSetObj::nerve_contractible_pair(dim_bound));
            let colors = vec!["0".to_string(), "1".to_string()];
            let mut entries = BTreeMap::new();
            for x in &colors {
                for y in &colors {
                    entries.insert(Signature::unary(x, y), value.clone());
                }
            }
            let mut points = BTreeMap::new();
            for x in &colors {
                points.insert(
                    x.clone(),
                    EnrichValue::unit(Backend::SSet)
                        .map_from_fn(&value, |_| Ok(Elem::SSet(SimplexRef::nondeg("0"))))?,
                );
            }
            let ops = crate::collection::Collection::new(
                Backend::SSet,
                colors,
                1,
                entries,
                Some(BTreeMap::new()),
                Some(points),
            )?;
            Multicategory::from_comp_fn(ops, dim_bound, |col, pair, _key, composed| {
                let target = col.entry_or_initial(composed).into_owned();
                pair.value.map_from_fn(&target, |e| {
                    let (u, w) = pair.decode(e)?;
                    let a = nerve_word(&u)?;
                    let c = nerve_word(&w)?;
                    if a.len() != c.len() {
                        return Err(Error::Invalid("tensor coordinates of unequal dimension".into()));
                    }
                    let xor: Vec<u8> = a.iter().zip(&c).map(|(x, y)| x ^ y).collect();
                    Ok(Elem::SSet(nerve_ref(&xor)))
                })
            })
        }
    }
}

/// A2: the point inclusion into the interval at object 0.
pub fn point_into_interval(backend: Backend, dim_bound: usize) -> Result<Multifunctor> {
    let tgt = interval(backend, dim_bound)?;
    let src = match backend {
        Backend::Set => CategoryBuilder::new(&["0"]).build(1, dim_bound)?,
        Backend::SSet => to_discrete(&CategoryBuilder::new(&["0"]).build(1, dim_bound)?)?,
    };
    let sig = Signature::unary("0", "0");
    let unit = tgt.unit_elem("0")?;
    let m = src.entry(&sig).map_from_fn(&tgt.entry(&sig), |_| Ok(unit.clone()))?;
    Multifunctor::new(src, tgt, [("0".to_string(), "0".to_string())].into(), [(sig, m)].into())
}

/// Alternating-word model of the nerve: expand a simplex reference to its
/// full vertex word.
fn nerve_word(e: &Elem) -> Result<Vec<u8>> {
    let r = match e {
        Elem::SSet(r) => r,
        Elem::Set(_) => return Err(Error::Invalid("nerve elements are simplices".into())),
    };
    let mut w = Vec::with_capacity(r.id.len() + r.degens.len());
    for c in r.id.chars() {
        match c {
            '0' => w.push(0u8),
            '1' => w.push(1u8),
            _ => return Err(Error::Invalid(format!("not a nerve word: {:?}", r.id))),
        }
    }
    for &j in r.degens.iter().rev() {
        if j >= w.len() {
            return Err(Error::Invalid("degeneracy out of range".into()));
        }
        w.insert(j + 1, w[j]);
    }
    Ok(w)
}

/// Collapse a full word back to (nondegenerate id, degeneracy word).
fn nerve_ref(word: &[u8]) -> SimplexRef {
    let mut w = word.to_vec();
    let mut degens = Vec::new();
    loop {
        match (0..w.len().saturating_sub(1)).rev().find(|&q| w[q] == w[q + 1]) {
            Some(q) => {
                w.remove(q + 1);
                degens.push(q);
            }
            None => break,
        }
    }
    let id: String = w.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
    SimplexRef { id, degens }
}

/// The instantiated generating family, corolla probes up to the given
/// arity. The FinSSet acyclic side uses the single interval representative,
/// so its RLP is a sound but possibly incomplete fibration test there.
pub fn generating_family(
    backend: Backend,
    max_arity: usize,
    dim_bound: usize,
) -> Result<GeneratingSet> {
    let mut cofibrations = vec![("xi-empty-to-point".to_string(), empty_to_point(backend, dim_bound)?)];
    for (name, km) in generating_cofibrations(backend, dim_bound) {
        for n in 0..=max_arity {
            cofibrations.push((format!("corolla-{}-{}", n, name), corolla_map(n, &km, dim_bound)?));
        }
    }
    let mut acyclic = Vec::new();
    for (name, km) in generating_acyclic_cofibrations(backend, dim_bound) {
        for n in 0..=max_arity {
            acyclic.push((format!("corolla-{}-{}", n, name), corolla_map(n, &km, dim_bound)?));
        }
    }
    acyclic.push(("point-into-interval".to_string(), point_into_interval(backend, dim_bound)?));
    Ok(GeneratingSet { cofibrations, acyclic })
}

/// Does `f` lift on the right of every commuting square against the family?
/// Squares are enumerated exhaustively; a missing lift answers no, and any
/// truncation surfaces as a budget error rather than a verdict.
pub fn rlp_against(
    f: &Multifunctor,
    family: &[(String, Multifunctor)],
    budget: usize,
) -> Result<bool> {
    for (name, j) in family {
        let (tops, complete) = enumerate_multifunctors(&j.source, &f.source, budget)?;
        if !complete {
            return Err(Error::BudgetExhausted(format!("top legs against {}", name)));
        }
        let (bottoms, complete) = enumerate_multifunctors(&j.target, &f.target, budget)?;
        if !complete {
            return Err(Error::BudgetExhausted(format!("bottom legs against {}", name)));
        }
        type SquareKey = (BTreeMap<String, String>, BTreeMap<Signature, EnrichMap>);
        let mut by_restriction: BTreeMap<SquareKey, Vec<&Multifunctor>> = BTreeMap::new();
        for gb in &bottoms {
            let c = gb.compose(j)?;
            by_restriction.entry((c.map.on_colors, c.map.on_entries)).or_default().push(gb);
        }
        for fa in &tops {
            let c = f.compose(fa)?;
            let key = (c.map.on_colors, c.map.on_entries);
            for gb in by_restriction.get(&key).into_iter().flatten() {
                let square =
                    LiftingProblem::new(j.clone(), fa.clone(), f.clone(), (*gb).clone())?;
                match solve_lift(&square, budget)? {
                    LiftOutcome::Lift(_) => {}
                    LiftOutcome::NoLift => return Ok(false),
                    LiftOutcome::Exhausted => {
                        return Err(Error::BudgetExhausted(format!("lift search against {}", name)))
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog::{parallel_pair, xi_h_fold, xi_one_into_h, DIM};
    use crate::model::{is_fully_faithful, is_trivial_fibration_set};
    use crate::verdict::Verdict;

    const BUDGET: usize = 200_000;

    fn fold_probe(n: usize) -> Multifunctor {
        let km = generating_cofibrations(Backend::Set, DIM).remove(1).1;
        corolla_map(n, &km, DIM).unwrap()
    }

    fn surjectivity_probe(n: usize) -> Multifunctor {
        let km = generating_cofibrations(Backend::Set, DIM).remove(0).1;
        corolla_map(n, &km, DIM).unwrap()
    }

    /// parallel pair -> free arrow, both generators to the arrow
    fn collapse() -> Multifunctor {
        let src = parallel_pair().unwrap();
        let tgt = crate::model::catalog::free_arrow().unwrap();
        let on_colors: BTreeMap<String, String> =
            src.objects().iter().map(|c| (c.clone(), c.clone())).collect();
        let mut on_entries = BTreeMap::new();
        for (sig, v) in src.ops().entries() {
            let m = if sig.inputs[0] == sig.output {
                EnrichMap::identity(v)
            } else {
                v.map_from_fn(&tgt.entry(sig), |_| Ok(Elem::Set("f".into()))).unwrap()
            };
            on_entries.insert(sig.clone(), m);
        }
        Multifunctor::new(src, tgt, on_colors, on_entries).unwrap()
    }

    #[test]
    fn an_identity_left_leg_lifts_immediately() {
        let p = xi_one_into_h().unwrap();
        let id = Multifunctor::identity(&p.source);
        let square = LiftingProblem::new(id.clone(), id.clone(), p.clone(), p).unwrap();
        match solve_lift(&square, BUDGET).unwrap() {
            LiftOutcome::Lift(h) => assert_eq!(h.map, id.map),
            other => panic!("expected a lift, got {:?}", other),
        }
    }

    #[test]
    fn a_non_faithful_map_fails_the_fold_probe() {
        let f = collapse();
        assert!(!is_trivial_fibration_set(&f).unwrap());
        assert!(!rlp_against(&f, &[("fold-1".into(), fold_probe(1))], BUDGET).unwrap());
    }

    #[test]
    fn the_trivial_fibration_lifts_against_every_cofibration_probe() {
        let f = xi_h_fold().unwrap();
        assert!(is_trivial_fibration_set(&f).unwrap());
        let family = generating_family(Backend::Set, 2, DIM).unwrap();
        assert!(rlp_against(&f, &family.cofibrations, BUDGET).unwrap());
    }

    #[test]
    fn a_non_surjective_inclusion_fails_the_point_probe() {
        let f = xi_one_into_h().unwrap();
        let family = generating_family(Backend::Set, 1, DIM).unwrap();
        assert!(!rlp_against(&f, &family.cofibrations, BUDGET).unwrap());
        // not a fibration either: the iso 0 -> 1 downstairs has no lift,
        // and the A2 square finds exactly that
        assert!(!rlp_against(&f, &family.acyclic, BUDGET).unwrap());
        assert!(!crate::model::is_fibration_set(&f).unwrap());
    }

    #[test]
    fn the_probes_are_cofibrations_and_a2_is_fully_faithful() {
        for backend in [Backend::Set, Backend::SSet] {
            let fam = generating_family(backend, 2, 2).unwrap();
            for (name, j) in fam.cofibrations.iter().chain(&fam.acyclic) {
                assert!(
                    crate::model::is_cofibration_set(j).unwrap(),
                    "{} is not object-injective",
                    name
                );
            }
        }
        let a2 = point_into_interval(Backend::Set, DIM).unwrap();
        assert!(is_fully_faithful(&a2).unwrap().0);
    }

    #[test]
    fn the_simplicial_interval_composes_by_the_word_group_law() {
        let e = interval(Backend::SSet, 2).unwrap();
        assert!(e.validate().ok(), "{:?}", e.validate().failures());
        assert_eq!(e.entry(&Signature::unary("0", "1")).basis().len(), 6);
        let s01 = Signature::unary("0", "1");
        let s11 = Signature::unary("1", "1");
        let up = Elem::SSet(SimplexRef::nondeg("01"));
        // every hom is the same nerve, so "01" also lives in Q(1;1) and can
        // postcompose itself
        let (_, sq) = e.compose_at(&s11, &up, 1, &s01, &up).unwrap();
        // 01 xor 01 = 00, the degenerate identity edge
        assert_eq!(sq, Elem::SSet(SimplexRef { id: "0".into(), degens: vec![0] }));
        let down_up = Elem::SSet(SimplexRef::nondeg("10"));
        let (_, tri) = e.compose_at(&s11, &down_up, 1, &s01, &up).unwrap();
        // 10 xor 01 = 11, the degenerate edge at the vertex 1
        assert_eq!(tri, Elem::SSet(SimplexRef { id: "1".into(), degens: vec![0] }));
    }

    #[test]
    fn the_interval_inclusion_is_a_pi0_equivalence_but_the_truncation_shows() {
        let a2 = point_into_interval(Backend::SSet, 2).unwrap();
        let v = crate::model::classify_simplicial(&a2, BUDGET).unwrap();
        // W2 holds: on components this is the contractible-pair inclusion.
        // W1 refutes at the top dimension, where cutting the nerve off
        // leaves a visible cycle, so the truncated map classifies as no.
        assert_eq!(v.weq, Verdict::No);
        assert_ne!(v.cofib, Verdict::No);
        assert_eq!(v.fib, Verdict::No);
        let w2 = v.evidence.iter().find(|e| e.condition == "W2").unwrap();
        assert_eq!(w2.result, Verdict::Yes);
        let pf = crate::model::pi0_functor(&a2).unwrap();
        assert_eq!(crate::model::is_equivalence_set(&pf).unwrap().weq, Verdict::Yes);
    }

    #[test]
    fn surjectivity_probe_detects_missing_operations() {
        // fold of H is surjective everywhere: lifts exist
        let f = xi_h_fold().unwrap();
        assert!(rlp_against(&f, &[("probe-1".into(), surjectivity_probe(1))], BUDGET).unwrap());
        // the unit inclusion misses the nullary operation downstairs
        let g = crate::model::catalog::unit_into_truncation().unwrap();
        assert!(!rlp_against(&g, &[("probe-0".into(), surjectivity_probe(0))], BUDGET).unwrap());
    }
}
