//! Free and presented multicategories: bounded term enumeration, ground
//! relation saturation, materialization, and the free-forget
//! correspondence. The vertex bound is part of every answer; composites
//! that would need more vertices raise `BoundExceeded`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::collection::{make_generating, symmetrize, Collection, CollectionMap, Signature};
use crate::enrich::finset::FinSetObj;
use crate::enrich::{enumerate_hom, Backend, Elem, EnrichMap, EnrichValue};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::tree::{enumerate_terms, graft, TreeTerm};
use super::{enumerate_multifunctors, Multicategory};

/// A multicategory presented by FinSet generators, ground tree relations,
/// and a vertex bound.
#[derive(Clone, Debug)]
pub struct PresentedMulticategory {
    gens: Collection,
    relations: Vec<(TreeTerm, TreeTerm)>,
    bound: usize,
    dim_bound: usize,
    universe: BTreeMap<Signature, Vec<TreeTerm>>,
    rep: BTreeMap<TreeTerm, TreeTerm>,
}

impl PresentedMulticategory {
    pub fn new(
        gens: Collection,
        relations: Vec<(TreeTerm, TreeTerm)>,
        bound: usize,
        dim_bound: usize,
    ) -> Result<PresentedMulticategory> {
        if gens.backend() != Backend::Set {
            return Err(Error::NotImplemented(
                "presentations are only enumerated over FinSet generators".into(),
            ));
        }
        if gens.has_sigma() {
            return Err(Error::NotImplemented(
                "generators with their own action are not supported".into(),
            ));
        }
        let grouped = enumerate_terms(&gens, bound)?;
        let mut terms: Vec<TreeTerm> = Vec::new();
        let mut universe = BTreeMap::new();
        for (sig, set) in grouped {
            let list: Vec<TreeTerm> = set.into_iter().collect();
            terms.extend(list.iter().cloned());
            universe.insert(sig, list);
        }
        let index: BTreeMap<TreeTerm, usize> =
            terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut reduced_relations = Vec::new();
        let mut seeds = Vec::new();
        for (l, r) in &relations {
            l.validate(&gens)?;
            r.validate(&gens)?;
            let l = l.reduce(&gens)?;
            let r = r.reduce(&gens)?;
            if l.signature()? != r.signature()? {
                return Err(Error::Invalid("relation sides have different signatures".into()));
            }
            for t in [&l, &r] {
                if !index.contains_key(t) {
                    return Err(Error::BoundExceeded(format!(
                        "relation side {} needs more than {} vertices",
                        t.label(),
                        bound
                    )));
                }
            }
            seeds.push((index[&l], index[&r]));
            reduced_relations.push((l, r));
        }
        let rep = saturate(&gens, &terms, &index, seeds, bound)?;
        Ok(PresentedMulticategory {
            gens,
            relations: reduced_relations,
            bound,
            dim_bound,
            universe,
            rep,
        })
    }

    pub fn gens(&self) -> &Collection {
        &self.gens
    }

    pub fn relations(&self) -> &[(TreeTerm, TreeTerm)] {
        &self.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.universe.keys()
    }

    /// Every enumerated term of this signature, within the vertex bound.
    pub fn terms_at(&self, sig: &Signature) -> &[TreeTerm] {
        self.universe.get(sig).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Canonical representatives of the congruence classes.
    pub fn classes_at(&self, sig: &Signature) -> Vec<TreeTerm> {
        let set: BTreeSet<TreeTerm> =
            self.terms_at(sig).iter().map(|t| self.rep[t].clone()).collect();
        set.into_iter().collect()
    }

    /// The class representative of an arbitrary term.
    pub fn rep_of(&self, term: &TreeTerm) -> Result<TreeTerm> {
        term.validate(&self.gens)?;
        let term = term.reduce(&self.gens)?;
        if let Some(r) = self.rep.get(&term) {
            return Ok(r.clone());
        }
        Err(Error::BoundExceeded(format!(
            "term {} is outside the vertex bound {} (or the arity bound {})",
            term.label(),
            self.bound,
            self.gens.arity_bound()
        )))
    }

    /// Grafts and normalizes; the bound is surfaced when the composite
    /// leaves the enumerated universe.
    pub fn compose(&self, s: &TreeTerm, i: usize, t: &TreeTerm) -> Result<TreeTerm> {
        self.rep_of(&graft(&self.rep_of(s)?, i, &self.rep_of(t)?)?)
    }

    /// Builds the quotient as a plain multicategory. Fails with
    /// `BoundExceeded` when the classes are not composition-closed within
    /// the vertex bound.
    pub fn materialize(&self) -> Result<Multicategory> {
        let mut entries = BTreeMap::new();
        let mut term_of: BTreeMap<(Signature, String), TreeTerm> = BTreeMap::new();
        for sig in self.universe.keys() {
            let classes = self.classes_at(sig);
            let labels: Vec<String> = classes.iter().map(|t| t.label()).collect();
            for t in &classes {
                term_of.insert((sig.clone(), t.label()), t.clone());
            }
            entries.insert(sig.clone(), EnrichValue::Set(FinSetObj::new(labels.into_iter())?));
        }
        let mut sigma = BTreeMap::new();
        for (sig, v) in &entries {
            for p in Perm::all(sig.arity()) {
                if p.is_identity() {
                    continue;
                }
                let target = entries
                    .get(&sig.act(&p))
                    .ok_or_else(|| Error::Invalid("translate of a stored class is missing".into()))?;
                let map = v.map_from_fn(target, |e| {
                    let label = match e {
                        Elem::Set(l) => l.clone(),
                        _ => return Err(Error::Invalid("class labels are set elements".into())),
                    };
                    let term = &term_of[&(sig.clone(), label)];
                    Ok(Elem::Set(self.rep_of(&term.act(&p))?.label()))
                })?;
                sigma.insert((sig.clone(), p), map);
            }
        }
        let mut points = BTreeMap::new();
        for c in self.gens.colors() {
            let leaf = self.rep_of(&TreeTerm::leaf(c))?;
            let target = entries
                .get(&Signature::unary(c, c))
                .ok_or_else(|| Error::Invalid("missing unit class".into()))?;
            points.insert(
                c.clone(),
                EnrichValue::unit(Backend::Set)
                    .map_from_fn(target, |_| Ok(Elem::Set(leaf.label())))?,
            );
        }
        let ops = Collection::new(
            Backend::Set,
            self.gens.colors().to_vec(),
            self.gens.arity_bound(),
            entries,
            Some(sigma),
            Some(points),
        )?;
        let term_of = &term_of;
        Multicategory::from_comp_fn(ops, self.dim_bound, move |col, pair, key, composed| {
            let target = col.entry_or_initial(composed).into_owned();
            pair.value.map_from_fn(&target, |e| {
                let (x, y) = pair.decode(e)?;
                let (x, y) = match (x, y) {
                    (Elem::Set(x), Elem::Set(y)) => (x, y),
                    _ => return Err(Error::Invalid("class labels are set elements".into())),
                };
                let s = &term_of[&(key.0.clone(), x)];
                let t = &term_of[&(key.2.clone(), y)];
                Ok(Elem::Set(self.compose(s, key.1, t)?.label()))
            })
        })
    }
}

fn saturate(
    gens: &Collection,
    terms: &[TreeTerm],
    index: &BTreeMap<TreeTerm, usize>,
    seeds: Vec<(usize, usize)>,
    bound: usize,
) -> Result<BTreeMap<TreeTerm, TreeTerm>> {
    let mut parent: Vec<usize> = (0..terms.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue: VecDeque<(usize, usize)> = seeds.into();
    while let Some((x, y)) = queue.pop_front() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        let a = &terms[x];
        let b = &terms[y];
        let n = a.arity();
        // translates stay identified
        for rho in Perm::all(n) {
            if rho.is_identity() {
                continue;
            }
            if let (Some(&i), Some(&j)) = (index.get(&a.act(&rho)), index.get(&b.act(&rho))) {
                queue.push_back((i, j));
            }
        }
        // contexts: graft the pair into every term, and every term into it
        for u in terms {
            for slot in 1..=u.arity() {
                if u.vertex_count() + a.vertex_count().max(b.vertex_count()) > bound {
                    continue;
                }
                let ga = graft_in_universe(gens, index, u, slot, a)?;
                let gb = graft_in_universe(gens, index, u, slot, b)?;
                if let (Some(i), Some(j)) = (ga, gb) {
                    queue.push_back((i, j));
                }
            }
            for slot in 1..=n {
                if u.vertex_count() + a.vertex_count().max(b.vertex_count()) > bound {
                    continue;
                }
                let ga = graft_in_universe(gens, index, a, slot, u)?;
                let gb = graft_in_universe(gens, index, b, slot, u)?;
                if let (Some(i), Some(j)) = (ga, gb) {
                    queue.push_back((i, j));
                }
            }
        }
    }
    // pick the smallest member of each class
    let mut best: BTreeMap<usize, TreeTerm> = BTreeMap::new();
    for (i, t) in terms.iter().enumerate() {
        let root = find(&mut parent, i);
        let better = match best.get(&root) {
            None => true,
            Some(cur) => (t.vertex_count(), t) < (cur.vertex_count(), cur),
        };
        if better {
            best.insert(root, t.clone());
        }
    }
    let mut rep = BTreeMap::new();
    for (i, t) in terms.iter().enumerate() {
        let root = find(&mut parent, i);
        rep.insert(t.clone(), best[&root].clone());
    }
    Ok(rep)
}

fn graft_in_universe(
    gens: &Collection,
    index: &BTreeMap<TreeTerm, usize>,
    s: &TreeTerm,
    i: usize,
    t: &TreeTerm,
) -> Result<Option<usize>> {
    let s_sig = s.signature()?;
    let t_sig = t.signature()?;
    if s_sig.inputs[i - 1] != t_sig.output {
        return Ok(None);
    }
    if s_sig.arity() + t_sig.arity() > gens.arity_bound() + 1 {
        return Ok(None);
    }
    let g = graft(s, i, t)?;
    Ok(index.get(&g).copied())
}

/// The free multicategory on a collection without action, as a
/// presentation with no relations.
pub fn free_multicat(
    gens: &Collection,
    bound: usize,
    dim_bound: usize,
) -> Result<PresentedMulticategory> {
    PresentedMulticategory::new(gens.clone(), Vec::new(), bound, dim_bound)
}

/// Materializes the free multicategory on generators that admit no
/// composable pair, over either backend: entries are permutation-tagged
/// copies of the generating entries plus units, and all composition is
/// unit reduction.
pub fn materialize_rigid(gens: &Collection, dim_bound: usize) -> Result<Multicategory> {
    if gens.has_sigma() || gens.is_pointed() {
        return Err(Error::NotApplicable("rigid generators must be a bare collection".into()));
    }
    for s in gens.signatures() {
        for t in gens.signatures() {
            if s.inputs.contains(&t.output) {
                return Err(Error::NotApplicable(format!(
                    "generators compose at {} into {}",
                    t, s
                )));
            }
        }
    }
    let (sym, _) = symmetrize(gens)?;
    let mut entries: BTreeMap<Signature, EnrichValue> =
        sym.entries().iter().map(|(s, v)| (s.clone(), v.clone())).collect();
    let mut points = BTreeMap::new();
    for c in gens.colors() {
        let unit = EnrichValue::unit(gens.backend());
        entries.insert(Signature::unary(c, c), unit.clone());
        points.insert(c.clone(), EnrichMap::identity(&unit));
    }
    let sigma = sym.sigma_table().cloned().unwrap_or_default();
    let ops = Collection::new(
        gens.backend(),
        gens.colors().to_vec(),
        gens.arity_bound(),
        entries,
        Some(sigma),
        Some(points),
    )?;
    Multicategory::from_comp_fn(ops, dim_bound, |col, pair, key, composed| {
        let target = col.entry_or_initial(composed).into_owned();
        let inner_is_unit = key.2.arity() == 1 && key.2.inputs[0] == key.2.output;
        pair.value.map_from_fn(&target, |e| {
            let (x, y) = pair.decode(e)?;
            Ok(if inner_is_unit { x } else { y })
        })
    })
}

/// The n-corolla on a value: the free multicategory on one generating
/// entry with distinct colors.
pub fn corolla(n: usize, value: &EnrichValue, dim_bound: usize) -> Result<Multicategory> {
    materialize_rigid(&make_generating(n, value)?, dim_bound)
}

/// All collection maps into a target, by exhausting color assignments and
/// entry maps within the budget.
pub fn enumerate_collection_maps(
    k: &Collection,
    target: &Collection,
    budget: usize,
) -> Result<(Vec<CollectionMap>, bool)> {
    let mut complete = true;
    let kobj = k.colors().to_vec();
    let tobj = target.colors().to_vec();
    if kobj.is_empty() {
        let only = CollectionMap::new(k.clone(), target.clone(), BTreeMap::new(), BTreeMap::new())?;
        return Ok((vec![only], true));
    }
    if tobj.is_empty() {
        return Ok((Vec::new(), true));
    }
    let total = tobj.len().checked_pow(kobj.len() as u32).unwrap_or(usize::MAX);
    if total > budget {
        return Ok((Vec::new(), false));
    }
    let mut found = Vec::new();
    let mut coloring = vec![0usize; kobj.len()];
    loop {
        let on_colors: BTreeMap<String, String> = kobj
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), tobj[coloring[i]].clone()))
            .collect();
        let mut per_sig: Vec<(Signature, Vec<EnrichMap>)> = Vec::new();
        let mut feasible = true;
        let mut product: usize = 1;
        for (sig, v) in k.entries() {
            let dsig = Signature::new(
                sig.inputs.iter().map(|x| on_colors[x].clone()).collect(),
                on_colors[&sig.output].clone(),
            );
            let tv = target.entry_or_initial(&dsig).into_owned();
            let (cands, complete_here) = enumerate_hom(v, &tv, budget)?;
            if !complete_here {
                complete = false;
            }
            product = product.saturating_mul(cands.len().max(1));
            if product > budget {
                complete = false;
                feasible = false;
                break;
            }
            if cands.is_empty() {
                feasible = false;
                break;
            }
            per_sig.push((sig.clone(), cands));
        }
        if feasible {
            let mut pick = vec![0usize; per_sig.len()];
            loop {
                let on_entries: BTreeMap<Signature, EnrichMap> = per_sig
                    .iter()
                    .enumerate()
                    .map(|(i, (sig, cands))| (sig.clone(), cands[pick[i]].clone()))
                    .collect();
                if let Ok(m) =
                    CollectionMap::new(k.clone(), target.clone(), on_colors.clone(), on_entries)
                {
                    found.push(m);
                }
                let mut j = 0;
                loop {
                    if j == pick.len() {
                        break;
                    }
                    pick[j] += 1;
                    if pick[j] < per_sig[j].1.len() {
                        break;
                    }
                    pick[j] = 0;
                    j += 1;
                }
                if j == pick.len() {
                    break;
                }
            }
        }
        let mut j = 0;
        loop {
            if j == coloring.len() {
                break;
            }
            coloring[j] += 1;
            if coloring[j] < tobj.len() {
                break;
            }
            coloring[j] = 0;
            j += 1;
        }
        if j == coloring.len() {
            break;
        }
    }
    Ok((found, complete))
}

/// Evaluates a term in a FinSet multicategory under images of colors and
/// generators.
pub fn eval_term(
    m: &Multicategory,
    on_colors: &BTreeMap<String, String>,
    on_entries: &BTreeMap<Signature, EnrichMap>,
    term: &TreeTerm,
) -> Result<(Signature, Elem)> {
    if m.backend() != Backend::Set {
        return Err(Error::NotImplemented("evaluation targets FinSet multicategories".into()));
    }
    fn go(
        m: &Multicategory,
        on_colors: &BTreeMap<String, String>,
        on_entries: &BTreeMap<Signature, EnrichMap>,
        tree: &super::tree::Tree,
    ) -> Result<(Signature, Elem)> {
        match tree {
            super::tree::Tree::Leaf(c) => {
                let d = on_colors
                    .get(c)
                    .ok_or_else(|| Error::Invalid(format!("no image for color {:?}", c)))?;
                Ok((Signature::unary(d, d), m.unit_elem(d)?))
            }
            super::tree::Tree::Node { key, label, children } => {
                let sig = Signature::parse_key(key)?;
                let dsig = Signature::new(
                    sig.inputs.iter().map(|x| on_colors[x].clone()).collect(),
                    on_colors[&sig.output].clone(),
                );
                let img = on_entries
                    .get(&sig)
                    .ok_or_else(|| Error::Invalid(format!("no entry map at {}", sig)))?
                    .apply(&Elem::Set(label.clone()))?;
                let mut args = Vec::new();
                for child in children {
                    args.push(go(m, on_colors, on_entries, child)?);
                }
                m.full_composition(&dsig, &img, &args)
            }
        }
    }
    let (psig, pe) = go(m, on_colors, on_entries, &term.tree)?;
    let e = m.ops().sigma_apply(&psig, &term.sigma, &pe)?;
    Ok((psig.act(&term.sigma), e))
}

#[derive(Clone, Debug)]
pub struct FreeForgetReport {
    pub functors: usize,
    pub maps: usize,
    pub bijection: bool,
    pub complete: bool,
}

impl FreeForgetReport {
    pub fn ok(&self) -> bool {
        self.bijection && self.complete
    }
}

/// Checks Hom(F(K), M) ≅ Hom(K, U(M)) by restricting functors to the
/// generating corollas.
pub fn check_free_adjunction(
    presented: &PresentedMulticategory,
    m: &Multicategory,
    budget: usize,
) -> Result<FreeForgetReport> {
    let free = presented.materialize()?;
    let (functors, c1) = enumerate_multifunctors(&free, m, budget)?;
    let stripped = m.ops().clone().strip_action();
    let (maps, c2) = enumerate_collection_maps(presented.gens(), &stripped, budget)?;
    let mut restricted = BTreeSet::new();
    for f in &functors {
        let mut on_entries = BTreeMap::new();
        for (sig, v) in presented.gens().entries() {
            let dsig = f.map.map_signature(sig)?;
            let target = stripped.entry_or_initial(&dsig).into_owned();
            let me = v.map_from_fn(&target, |e| {
                let label = match e {
                    Elem::Set(l) => l.clone(),
                    _ => return Err(Error::Invalid("generators are set elements".into())),
                };
                let rep = presented.rep_of(&TreeTerm::corolla(sig, &label))?;
                f.apply(sig, &Elem::Set(rep.label()))
            })?;
            on_entries.insert(sig.clone(), me);
        }
        restricted.insert((f.map.on_colors.clone(), on_entries));
    }
    let map_keys: BTreeSet<_> =
        maps.iter().map(|m| (m.on_colors.clone(), m.on_entries.clone())).collect();
    let bijection = restricted.len() == functors.len() && restricted == map_keys;
    Ok(FreeForgetReport {
        functors: functors.len(),
        maps: maps.len(),
        bijection,
        complete: c1 && c2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::adjoint::underlying_cat;
    use crate::multicat::examples::{associative_truncation, symmetrize_multicat};

    fn one_unary_generator() -> Collection {
        let entries: BTreeMap<Signature, EnrichValue> =
            [(Signature::parse_key("a;a").unwrap(), EnrichValue::Set(FinSetObj::from_labels(&["f"])))]
                .into();
        Collection::new(Backend::Set, vec!["a".into()], 4, entries, None, None).unwrap()
    }

    #[test]
    fn free_monoid_enumerates_but_does_not_materialize() {
        let p = free_multicat(&one_unary_generator(), 3, 3).unwrap();
        let sig = Signature::parse_key("a;a").unwrap();
        assert_eq!(p.classes_at(&sig).len(), 4);
        match p.materialize() {
            Err(Error::BoundExceeded(_)) => {}
            other => panic!("expected the bound to surface, got {:?}", other.map(|_| ())),
        }
        // the composite that overflows also surfaces the bound
        let f3 = p.classes_at(&sig).last().unwrap().clone();
        let f1 = p.classes_at(&sig)[1].clone();
        assert!(matches!(p.compose(&f3, 1, &f1), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn idempotent_relation_collapses_the_powers() {
        let gens = one_unary_generator();
        let sig = Signature::parse_key("a;a").unwrap();
        let f = TreeTerm::corolla(&sig, "f");
        let ff = graft(&f, 1, &f).unwrap();
        let p = PresentedMulticategory::new(gens, vec![(ff, f.clone())], 3, 3).unwrap();
        let classes = p.classes_at(&sig);
        assert_eq!(classes.len(), 2);
        assert_eq!(p.compose(&f, 1, &f).unwrap(), f);
        let m = p.materialize().unwrap();
        assert!(m.validate().ok());
        assert_eq!(m.entry(&sig).basis().len(), 2);
        let e = Elem::Set(f.label());
        let (_, out) = m.compose_at(&sig, &e, 1, &sig, &e).unwrap();
        assert_eq!(out, e);
    }

    #[test]
    fn corolla_is_discrete_below_the_generators() {
        let y = EnrichValue::Set(FinSetObj::from_labels(&["p", "q"]));
        let g2 = corolla(2, &y, 3).unwrap();
        assert!(g2.validate().ok());
        let up = underlying_cat(&g2).unwrap();
        assert_eq!(up.objects().len(), 3);
        for (sig, v) in up.ops().entries() {
            assert_eq!(sig.inputs[0], sig.output);
            assert_eq!(v.basis().len(), 1);
        }
        // entries: one per permuted signature, each a tagged copy of y
        let gen_sig = Signature::parse_key("1,2;0").unwrap();
        assert_eq!(g2.entry(&gen_sig).basis().len(), 2);
        assert_eq!(g2.entry(&Signature::parse_key("2,1;0").unwrap()).basis().len(), 2);
    }

    #[test]
    fn presented_free_agrees_with_the_rigid_corolla() {
        let y = EnrichValue::Set(FinSetObj::from_labels(&["p", "q"]));
        let gens = make_generating(2, &y).unwrap();
        let via_terms = free_multicat(&gens, 6, 3).unwrap().materialize().unwrap();
        let rigid = corolla(2, &y, 3).unwrap();
        assert_eq!(via_terms.objects(), rigid.objects());
        for (sig, v) in rigid.ops().entries() {
            assert_eq!(via_terms.entry(sig).basis().len(), v.basis().len());
        }
    }

    #[test]
    fn free_forget_restriction_is_a_bijection() {
        let y = EnrichValue::Set(FinSetObj::from_labels(&["p", "q"]));
        let gens = make_generating(2, &y).unwrap();
        let presented = free_multicat(&gens, 6, 3).unwrap();
        let (target, _) = symmetrize_multicat(&associative_truncation(2, 3).unwrap()).unwrap();
        let report = check_free_adjunction(&presented, &target, 1_000_000).unwrap();
        assert!(report.ok(), "{:?}", report);
        assert_eq!(report.functors, 4);
        assert_eq!(report.maps, 4);
    }

    #[test]
    fn evaluation_respects_grafting() {
        let gens = one_unary_generator();
        let sig = Signature::parse_key("a;a").unwrap();
        let f = TreeTerm::corolla(&sig, "f");
        let ff = graft(&f, 1, &f).unwrap();
        let p = PresentedMulticategory::new(gens.clone(), vec![(ff.clone(), f.clone())], 3, 3).unwrap();
        let m = p.materialize().unwrap();
        let on_colors: BTreeMap<String, String> = [("a".to_string(), "a".to_string())].into();
        let img = gens
            .entry_or_initial(&sig)
            .into_owned()
            .map_from_fn(&m.entry(&sig), |_| Ok(Elem::Set(f.label())))
            .unwrap();
        let on_entries: BTreeMap<Signature, EnrichMap> = [(sig.clone(), img)].into();
        let f3 = graft(&graft(&f, 1, &f).unwrap(), 1, &f).unwrap();
        let (esig, out) = eval_term(&m, &on_colors, &on_entries, &f3).unwrap();
        assert_eq!(esig, sig);
        // f is idempotent in m, so any power evaluates to f
        assert_eq!(out, Elem::Set(f.label()));
    }
}
