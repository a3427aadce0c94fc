//! Hom sets of symmetric sequences: arity-indexed families of equivariant
//! maps. Enumeration is FinSet-only; entries are searched orbitwise.

use std::collections::BTreeMap;

use crate::enrich::{Backend, Elem, EnrichMap, EnrichValue};
use crate::enrich::finset::FinSetObj;
use crate::error::{Error, Result};

use super::{equivariant_maps_at, parse_perm_tag, SymmetricSequence};

/// The hom set of two symmetric sequences, with the realized families.
/// Labels f0, f1, .. follow the canonical order of the assignments.
#[derive(Clone, Debug)]
pub struct HomSeq {
    pub value: EnrichValue,
    pub families: BTreeMap<String, BTreeMap<usize, EnrichMap>>,
}

impl HomSeq {
    /// The label of a family equal to the given one, if present.
    pub fn find(&self, family: &BTreeMap<usize, EnrichMap>) -> Option<&str> {
        self.families
            .iter()
            .find(|(_, f)| *f == family)
            .map(|(label, _)| label.as_str())
    }
}

pub fn hom_seq(k: &SymmetricSequence, l: &SymmetricSequence, budget: usize) -> Result<HomSeq> {
    if k.backend() != Backend::Set || l.backend() != Backend::Set {
        return Err(Error::NotImplemented("hom of simplicial sequences".into()));
    }
    let mut per_arity: Vec<(usize, Vec<BTreeMap<Elem, Elem>>)> = Vec::new();
    let mut total: usize = 1;
    for n in k.arities() {
        let maps = equivariant_maps_at(k, l, n)?;
        total = total.saturating_mul(maps.len());
        if total > budget {
            return Err(Error::BoundExceeded(format!("hom enumeration exceeds budget {}", budget)));
        }
        per_arity.push((n, maps));
    }
    let mut raw: Vec<BTreeMap<usize, BTreeMap<Elem, Elem>>> = vec![BTreeMap::new()];
    for (n, maps) in &per_arity {
        let mut next = Vec::with_capacity(raw.len() * maps.len());
        for f in &raw {
            for m in maps {
                let mut g = f.clone();
                g.insert(*n, m.clone());
                next.push(g);
            }
        }
        raw = next;
    }
    raw.sort();
    let mut families = BTreeMap::new();
    let mut labels = Vec::with_capacity(raw.len());
    for (i, assignment) in raw.iter().enumerate() {
        let label = format!("f{}", i);
        let mut realized = BTreeMap::new();
        for (n, on) in assignment {
            let source = k.entry_or_initial(*n);
            let target = l.entry_or_initial(*n);
            let m = source.map_from_fn(&target, |e| {
                on.get(e).cloned().ok_or_else(|| Error::Invalid("family misses a basis element".into()))
            })?;
            realized.insert(*n, m);
        }
        families.insert(label.clone(), realized);
        labels.push(label);
    }
    Ok(HomSeq { value: EnrichValue::Set(FinSetObj::new(labels)?), families })
}

/// Representability of evaluation at arity n: hom(G_n, L) is in bijection
/// with L(n) via y -> (tag sigma -> sigma* y).
pub fn corolla_representability(l: &SymmetricSequence, n: usize, budget: usize) -> Result<bool> {
    let g = SymmetricSequence::generating(l.backend(), l.arity_bound(), n)?;
    let h = hom_seq(&g, l, budget)?;
    let ln = l.entry_or_initial(n);
    let basis = ln.basis();
    if h.families.len() != basis.len() {
        return Ok(false);
    }
    let mut hit = std::collections::BTreeSet::new();
    for y in &basis {
        let source = g.entry_or_initial(n);
        let m = source.map_from_fn(&ln, |e| {
            let (tag, _) = crate::enrich::split_coproduct_elem(e)?;
            let sigma = parse_perm_tag(&tag)?;
            l.sigma_apply(n, &sigma, y)
        })?;
        let mut family = BTreeMap::new();
        family.insert(n, m);
        match h.find(&family) {
            None => return Ok(false),
            Some(label) => {
                if !hit.insert(label.to_string()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> EnrichValue {
        EnrichValue::Set(FinSetObj::from_labels(labels))
    }

    #[test]
    fn hom_counts_by_orbit_analysis() {
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        let t = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["x", "y"])).unwrap();
        // free source: image of the identity tag is arbitrary
        assert_eq!(hom_seq(&g2, &g2, 1000).unwrap().families.len(), 2);
        assert_eq!(hom_seq(&g2, &t, 1000).unwrap().families.len(), 2);
        // trivial source needs fixed-point images: the free target has none
        assert_eq!(hom_seq(&t, &g2, 1000).unwrap().families.len(), 0);
        // empty source: exactly the empty family
        let e = SymmetricSequence::empty(Backend::Set, 4);
        assert_eq!(hom_seq(&e, &g2, 1000).unwrap().families.len(), 1);
    }

    #[test]
    fn hom_is_a_product_over_arities() {
        let mut entries = BTreeMap::new();
        entries.insert(0, set(&["c"]));
        entries.insert(1, set(&["u"]));
        let k = SymmetricSequence::new(Backend::Set, 4, entries, BTreeMap::new()).unwrap();
        let mut entries = BTreeMap::new();
        entries.insert(0, set(&["c1", "c2"]));
        entries.insert(1, set(&["u1", "u2", "u3"]));
        let l = SymmetricSequence::new(Backend::Set, 4, entries, BTreeMap::new()).unwrap();
        let h = hom_seq(&k, &l, 1000).unwrap();
        assert_eq!(h.families.len(), 6);
        assert_eq!(h.value.basis().len(), 6);
        // labels are canonical: f0..f5
        assert_eq!(h.value.basis()[0].label(), "f0");
    }

    #[test]
    fn hom_budget_is_enforced() {
        let mut entries = BTreeMap::new();
        entries.insert(1, set(&["a", "b", "c"]));
        let k = SymmetricSequence::new(Backend::Set, 4, entries.clone(), BTreeMap::new()).unwrap();
        let l = k.clone();
        // 27 candidate maps at arity 1
        assert!(matches!(hom_seq(&k, &l, 10), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn hom_rejects_simplicial_sequences() {
        let e = SymmetricSequence::empty(Backend::SSet, 4);
        assert!(matches!(hom_seq(&e, &e, 10), Err(Error::NotImplemented(_))));
    }

    #[test]
    fn evaluation_is_representable() {
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        assert!(corolla_representability(&g2, 2, 100_000).unwrap());
        let t = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["x", "y"])).unwrap();
        assert!(corolla_representability(&t, 2, 100_000).unwrap());
        assert!(corolla_representability(&t, 0, 100_000).unwrap());
        let g3 = SymmetricSequence::generating(Backend::Set, 4, 3).unwrap();
        assert!(corolla_representability(&g3, 3, 100_000).unwrap());
    }
}
