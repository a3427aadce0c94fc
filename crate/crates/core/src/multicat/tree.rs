//! Rooted trees over a generating collection: the syntax of free
//! multicategories. A term is a planar tree with generator-labeled
//! vertices plus a permutation placing the abstract inputs on the leaves.

use std::collections::{BTreeMap, BTreeSet};

use crate::collection::{Collection, Signature};
use crate::enrich::{Elem, EnrichValue};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// A planar rooted tree. Leaves carry their edge color; vertices carry the
/// full signature key of their generator plus the element label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Tree {
    Leaf(String),
    Node { key: String, label: String, children: Vec<Tree> },
}

impl Tree {
    pub fn output_color(&self) -> Result<String> {
        match self {
            Tree::Leaf(c) => Ok(c.clone()),
            Tree::Node { key, .. } => Ok(Signature::parse_key(key)?.output),
        }
    }

    pub fn leaf_colors(&self) -> Vec<String> {
        match self {
            Tree::Leaf(c) => vec![c.clone()],
            Tree::Node { children, .. } => children.iter().flat_map(|c| c.leaf_colors()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node { children, .. } => 1 + children.iter().map(|c| c.vertex_count()).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    pub fn encode(&self) -> String {
        match self {
            Tree::Leaf(c) => format!("_{}", c),
            Tree::Node { label, children, .. } => {
                let inner: Vec<String> = children.iter().map(|c| c.encode()).collect();
                format!("{}({})", label, inner.join(","))
            }
        }
    }
}

/// A tree term: abstract input v (0-based) sits at planar leaf sigma(v).
/// The term denotes the planar evaluation acted on by sigma.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TreeTerm {
    pub tree: Tree,
    pub sigma: Perm,
}

impl TreeTerm {
    pub fn leaf(color: &str) -> TreeTerm {
        TreeTerm { tree: Tree::Leaf(color.to_string()), sigma: Perm::identity(1) }
    }

    pub fn corolla(sig: &Signature, label: &str) -> TreeTerm {
        TreeTerm {
            tree: Tree::Node {
                key: sig.key(),
                label: label.to_string(),
                children: sig.inputs.iter().map(|c| Tree::Leaf(c.clone())).collect(),
            },
            sigma: Perm::identity(sig.arity()),
        }
    }

    pub fn arity(&self) -> usize {
        self.tree.leaf_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    /// The signature: planar leaf colors rearranged by sigma, with the
    /// root output.
    pub fn signature(&self) -> Result<Signature> {
        let planar = Signature::new(self.tree.leaf_colors(), self.tree.output_color()?);
        if self.sigma.degree() != planar.arity() {
            return Err(Error::Invalid(format!(
                "permutation degree {} for {} leaves",
                self.sigma.degree(),
                planar.arity()
            )));
        }
        Ok(planar.act(&self.sigma))
    }

    /// The right translation by rho.
    pub fn act(&self, rho: &Perm) -> TreeTerm {
        TreeTerm { tree: self.tree.clone(), sigma: self.sigma.compose(rho) }
    }

    pub fn label(&self) -> String {
        let word: Vec<String> = self.sigma.one_line().iter().map(|v| v.to_string()).collect();
        format!("{}@{}", self.tree.encode(), word.join("-"))
    }

    /// Checks every vertex against the generating collection.
    pub fn validate(&self, gens: &Collection) -> Result<()> {
        self.signature()?;
        validate_tree(&self.tree, gens)
    }

    /// Deletes vertices labeled by unit points of the generators.
    pub fn reduce(&self, gens: &Collection) -> Result<TreeTerm> {
        let units = point_labels(gens)?;
        Ok(TreeTerm { tree: reduce_tree(&self.tree, &units), sigma: self.sigma.clone() })
    }
}

fn validate_tree(tree: &Tree, gens: &Collection) -> Result<()> {
    match tree {
        Tree::Leaf(c) => {
            if !gens.colors().contains(c) {
                return Err(Error::Invalid(format!("unknown color {:?}", c)));
            }
            Ok(())
        }
        Tree::Node { key, label, children } => {
            let sig = Signature::parse_key(key)?;
            let entry = gens.entry_or_initial(&sig).into_owned();
            let present = match &entry {
                EnrichValue::Set(s) => s.contains(label),
                EnrichValue::SSet(x) => x.dim_of(label).is_some(),
            };
            if !present {
                return Err(Error::Invalid(format!("no generator {:?} at {}", label, sig)));
            }
            if children.len() != sig.arity() {
                return Err(Error::Invalid(format!("arity mismatch at {:?}", label)));
            }
            for (child, color) in children.iter().zip(&sig.inputs) {
                if &child.output_color()? != color {
                    return Err(Error::Invalid(format!("edge color mismatch below {:?}", label)));
                }
                validate_tree(child, gens)?;
            }
            Ok(())
        }
    }
}

fn point_labels(gens: &Collection) -> Result<BTreeSet<(String, String)>> {
    let mut out = BTreeSet::new();
    if gens.is_pointed() {
        let star = EnrichValue::unit(gens.backend()).basis().remove(0);
        for c in gens.colors() {
            match gens.point(c)?.apply(&star)? {
                Elem::Set(l) => out.insert((Signature::unary(c, c).key(), l)),
                Elem::SSet(r) => out.insert((Signature::unary(c, c).key(), r.id)),
            };
        }
    }
    Ok(out)
}

fn reduce_tree(tree: &Tree, units: &BTreeSet<(String, String)>) -> Tree {
    match tree {
        Tree::Leaf(c) => Tree::Leaf(c.clone()),
        Tree::Node { key, label, children } => {
            let children: Vec<Tree> = children.iter().map(|c| reduce_tree(c, units)).collect();
            if children.len() == 1 && units.contains(&(key.clone(), label.clone())) {
                return children.into_iter().next().unwrap();
            }
            Tree::Node { key: key.clone(), label: label.clone(), children }
        }
    }
}

fn graft_planar(tree: &Tree, leaf_index: usize, sub: &Tree) -> Tree {
    fn go(tree: &Tree, counter: &mut usize, leaf_index: usize, sub: &Tree) -> Tree {
        match tree {
            Tree::Leaf(c) => {
                let here = *counter;
                *counter += 1;
                if here == leaf_index {
                    sub.clone()
                } else {
                    Tree::Leaf(c.clone())
                }
            }
            Tree::Node { key, label, children } => Tree::Node {
                key: key.clone(),
                label: label.clone(),
                children: children.iter().map(|c| go(c, counter, leaf_index, sub)).collect(),
            },
        }
    }
    let mut counter = 0;
    go(tree, &mut counter, leaf_index, sub)
}

/// s ∘_i t on terms (1-based abstract slot of s).
pub fn graft(s: &TreeTerm, i: usize, t: &TreeTerm) -> Result<TreeTerm> {
    let n = s.arity();
    let k = t.arity();
    if i == 0 || i > n {
        return Err(Error::SignatureError(format!("slot {} out of range", i)));
    }
    let s_sig = s.signature()?;
    let t_sig = t.signature()?;
    if s_sig.inputs[i - 1] != t_sig.output {
        return Err(Error::SignatureError(format!(
            "cannot graft {} into slot {} of {}",
            t_sig, i, s_sig
        )));
    }
    let slot = s.sigma.apply(i - 1);
    let tree = graft_planar(&s.tree, slot, &t.tree);
    let sigma = Perm::expand_at(&s.sigma, i - 1, k).compose(&Perm::block_at(&t.sigma, i - 1, n));
    Ok(TreeTerm { tree, sigma })
}

/// All reduced terms over the generators with at most `bound` vertices and
/// arity within the collection's bound, grouped by signature.
pub fn enumerate_terms(
    gens: &Collection,
    bound: usize,
) -> Result<BTreeMap<Signature, BTreeSet<TreeTerm>>> {
    let mut seen: BTreeSet<TreeTerm> = BTreeSet::new();
    let mut work: Vec<TreeTerm> = Vec::new();
    let units = point_labels(gens)?;
    let push = |term: TreeTerm, seen: &mut BTreeSet<TreeTerm>, work: &mut Vec<TreeTerm>| {
        if !seen.contains(&term) {
            seen.insert(term.clone());
            work.push(term);
        }
    };
    for c in gens.colors() {
        push(TreeTerm::leaf(c), &mut seen, &mut work);
    }
    // a bare corolla already spends one vertex
    if bound >= 1 {
        for (sig, v) in gens.entries() {
            for e in v.basis() {
                let label = match e {
                    Elem::Set(l) => l,
                    Elem::SSet(r) => r.id,
                };
                if units.contains(&(sig.key(), label.clone())) {
                    continue;
                }
                push(TreeTerm::corolla(sig, &label), &mut seen, &mut work);
            }
        }
    }
    while let Some(term) = work.pop() {
        let n = term.arity();
        for rho in Perm::all(n) {
            push(term.act(&rho), &mut seen, &mut work);
        }
        let snapshot: Vec<TreeTerm> = seen.iter().cloned().collect();
        for other in &snapshot {
            // graft other into term
            for i in 1..=n {
                if term.vertex_count() + other.vertex_count() <= bound
                    && n + other.arity() <= gens.arity_bound() + 1
                    && graftable(&term, i, other)
                {
                    push(graft(&term, i, other)?, &mut seen, &mut work);
                }
            }
            // graft term into other
            for i in 1..=other.arity() {
                if term.vertex_count() + other.vertex_count() <= bound
                    && other.arity() + n <= gens.arity_bound() + 1
                    && graftable(other, i, &term)
                {
                    push(graft(other, i, &term)?, &mut seen, &mut work);
                }
            }
        }
    }
    let mut grouped: BTreeMap<Signature, BTreeSet<TreeTerm>> = BTreeMap::new();
    for term in seen {
        grouped.entry(term.signature()?).or_default().insert(term);
    }
    Ok(grouped)
}

fn graftable(s: &TreeTerm, i: usize, t: &TreeTerm) -> bool {
    match (s.signature(), t.signature()) {
        (Ok(ss), Ok(ts)) => ss.inputs[i - 1] == ts.output,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::make_generating;
    use crate::enrich::finset::FinSetObj;
    use crate::enrich::Backend;
    use std::collections::BTreeMap as Map;

    fn two_color_gens() -> Collection {
        // g: (a,b) -> a and h: (a,a) -> b and u: () -> b
        let entries: Map<Signature, EnrichValue> = [
            (Signature::parse_key("a,b;a").unwrap(), EnrichValue::Set(FinSetObj::from_labels(&["g"]))),
            (Signature::parse_key("a,a;b").unwrap(), EnrichValue::Set(FinSetObj::from_labels(&["h"]))),
            (Signature::parse_key(";b").unwrap(), EnrichValue::Set(FinSetObj::from_labels(&["u"]))),
        ]
        .into();
        Collection::new(
            Backend::Set,
            vec!["a".into(), "b".into()],
            4,
            entries,
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn signatures_follow_the_permutation() {
        let sig = Signature::parse_key("a,b;a").unwrap();
        let g = TreeTerm::corolla(&sig, "g");
        assert_eq!(g.signature().unwrap(), sig);
        let swap = Perm::from_one_line(&[2, 1]).unwrap();
        assert_eq!(g.act(&swap).signature().unwrap().key(), "b,a;a");
        assert_eq!(g.act(&swap).act(&swap), g);
    }

    #[test]
    fn grafting_units_is_the_identity_syntactically() {
        let gens = two_color_gens();
        let sig = Signature::parse_key("a,b;a").unwrap();
        let g = TreeTerm::corolla(&sig, "g");
        let leaf_a = TreeTerm::leaf("a");
        assert_eq!(graft(&g, 1, &leaf_a).unwrap(), g);
        assert_eq!(graft(&leaf_a, 1, &g).unwrap(), g);
        let swap = Perm::from_one_line(&[2, 1]).unwrap();
        let gs = g.act(&swap);
        assert_eq!(graft(&gs, 2, &leaf_a).unwrap(), gs);
        let _ = gens;
    }

    #[test]
    fn grafting_satisfies_the_composition_axioms() {
        let gens = two_color_gens();
        let g = TreeTerm::corolla(&Signature::parse_key("a,b;a").unwrap(), "g");
        let h = TreeTerm::corolla(&Signature::parse_key("a,a;b").unwrap(), "h");
        let u = TreeTerm::corolla(&Signature::parse_key(";b").unwrap(), "u");
        for term in [&g, &h, &u] {
            term.validate(&gens).unwrap();
        }
        // nested: (g ∘_2 h) ∘_{2+j-1} x = g ∘_2 (h ∘_j x)
        let gh = graft(&g, 2, &h).unwrap();
        assert_eq!(gh.signature().unwrap().key(), "a,a,a;a");
        for j in 1..=2 {
            let left = graft(&gh, 1 + j, &g).unwrap();
            let right = graft(&g, 2, &graft(&h, j, &g).unwrap()).unwrap();
            assert_eq!(left, right);
        }
        // parallel: (g ∘_1 g) ∘_{2+k-1} h with k = arity of the slot-1 graft
        let gg = graft(&g, 1, &g).unwrap();
        let left = graft(&gg, 3, &h).unwrap();
        let right = graft(&graft(&g, 2, &h).unwrap(), 1, &g).unwrap();
        assert_eq!(left, right);
        // outer equivariance: (g·σ) ∘_v t = (g ∘_{σ(v)} t)·expand
        let swap = Perm::from_one_line(&[2, 1]).unwrap();
        let gs = g.act(&swap);
        for v in 1..=2 {
            let t = if v == 1 { &h } else { &g };
            let lhs = graft(&gs, v, t).unwrap();
            let rho = Perm::expand_at(&swap, v - 1, t.arity());
            let rhs = graft(&g, swap.apply(v - 1) + 1, t).unwrap().act(&rho);
            assert_eq!(lhs, rhs);
        }
        // inner equivariance: g ∘_2 (h·τ) = (g ∘_2 h)·block
        let hs = h.act(&swap);
        let lhs = graft(&g, 2, &hs).unwrap();
        let rhs = graft(&g, 2, &h).unwrap().act(&Perm::block_at(&swap, 1, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_monoid_on_one_unary_generator_has_powers() {
        let entries: Map<Signature, EnrichValue> =
            [(Signature::parse_key("a;a").unwrap(), EnrichValue::Set(FinSetObj::from_labels(&["f"])))]
                .into();
        let gens =
            Collection::new(Backend::Set, vec!["a".into()], 4, entries, None, None).unwrap();
        let terms = enumerate_terms(&gens, 3).unwrap();
        let at = terms.get(&Signature::parse_key("a;a").unwrap()).unwrap();
        let labels: Vec<String> = at.iter().map(|t| t.label()).collect();
        assert_eq!(labels, vec!["_a@1", "f(_a)@1", "f(f(_a))@1", "f(f(f(_a)))@1"]);
    }

    #[test]
    fn corolla_terms_are_the_translates_plus_units() {
        let y = EnrichValue::Set(FinSetObj::from_labels(&["p", "q"]));
        let gens = make_generating(2, &y).unwrap();
        let terms = enumerate_terms(&gens, 6).unwrap();
        // units: one per color; generator signatures: 2 translates x 2 labels
        let mut n_ary = 0;
        let mut units = 0;
        for (sig, set) in &terms {
            match sig.arity() {
                1 => units += set.len(),
                2 => n_ary += set.len(),
                _ => panic!("unexpected arity"),
            }
        }
        assert_eq!(units, 3);
        assert_eq!(n_ary, 4);
        // no composable non-unit pairs: every 2-ary term has one vertex
        for (sig, set) in &terms {
            if sig.arity() == 2 {
                for t in set {
                    assert_eq!(t.vertex_count(), 1);
                }
            }
        }
    }

    #[test]
    fn reduction_deletes_point_vertices() {
        let entries: Map<Signature, EnrichValue> = [
            (Signature::parse_key("x;x").unwrap(), EnrichValue::Set(FinSetObj::from_labels(&["e", "f"]))),
        ]
        .into();
        let point = EnrichValue::unit(Backend::Set)
            .map_from_fn(&entries[&Signature::parse_key("x;x").unwrap()], |_| Ok(Elem::Set("e".into())))
            .unwrap();
        let gens = Collection::new(
            Backend::Set,
            vec!["x".into()],
            4,
            entries,
            None,
            Some([("x".to_string(), point)].into()),
        )
        .unwrap();
        let sig = Signature::parse_key("x;x").unwrap();
        let e = TreeTerm::corolla(&sig, "e");
        let f = TreeTerm::corolla(&sig, "f");
        let stack = graft(&e, 1, &graft(&f, 1, &e).unwrap()).unwrap();
        let reduced = stack.reduce(&gens).unwrap();
        assert_eq!(reduced, f);
        // enumeration never emits a unit-labeled vertex
        let terms = enumerate_terms(&gens, 3).unwrap();
        for set in terms.values() {
            for t in set {
                assert!(!t.label().contains('e'));
            }
        }
    }
}
