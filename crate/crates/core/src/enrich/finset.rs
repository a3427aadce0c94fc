//! Finite sets with labeled elements, the discrete enrichment backend.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of distinct string labels, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FinSetObj {
    elements: Vec<String>,
}

impl FinSetObj {
    pub fn new<I: IntoIterator<Item = String>>(elements: I) -> Result<FinSetObj> {
        let mut sorted: Vec<String> = elements.into_iter().collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Invalid(format!("duplicate element {:?}", w[0])));
            }
        }
        Ok(FinSetObj { elements: sorted })
    }

    pub fn from_labels(labels: &[&str]) -> FinSetObj {
        FinSetObj::new(labels.iter().map(|s| s.to_string())).expect("distinct labels")
    }

    pub fn empty() -> FinSetObj {
        FinSetObj { elements: Vec::new() }
    }

    pub fn singleton(label: &str) -> FinSetObj {
        FinSetObj { elements: vec![label.to_string()] }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.elements.binary_search_by(|e| e.as_str().cmp(label)).is_ok()
    }

    pub fn pair_label(a: &str, b: &str) -> String {
        format!("({},{})", a, b)
    }

    /// Cartesian product with `(a,b)` labels.
    pub fn product(&self, other: &FinSetObj) -> FinSetObj {
        let mut elements = Vec::new();
        for a in &self.elements {
            for b in &other.elements {
                elements.push(FinSetObj::pair_label(a, b));
            }
        }
        FinSetObj::new(elements).expect("product labels distinct")
    }

    /// Tagged disjoint union with deterministic label order.
    pub fn coproduct(parts: &[(String, &FinSetObj)]) -> FinSetObj {
        let mut elements = Vec::new();
        for (tag, obj) in parts {
            for e in obj.elements() {
                elements.push(format!("{}:{}", tag, e));
            }
        }
        FinSetObj::new(elements).expect("tagged labels distinct")
    }
}

/// A function between finite sets, stored with its endpoints.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FinSetMap {
    pub source: FinSetObj,
    pub target: FinSetObj,
    pub on: BTreeMap<String, String>,
}

impl FinSetMap {
    pub fn new(source: FinSetObj, target: FinSetObj, on: BTreeMap<String, String>) -> Result<FinSetMap> {
        for e in source.elements() {
            match on.get(e) {
                None => return Err(Error::Invalid(format!("map misses element {:?}", e))),
                Some(v) if !target.contains(v) => {
                    return Err(Error::Invalid(format!("image {:?} not in target", v)))
                }
                _ => {}
            }
        }
        if on.len() != source.len() {
            return Err(Error::Invalid("map defined on non-elements".into()));
        }
        Ok(FinSetMap { source, target, on })
    }

    pub fn identity(obj: &FinSetObj) -> FinSetMap {
        let on = obj.elements().iter().map(|e| (e.clone(), e.clone())).collect();
        FinSetMap { source: obj.clone(), target: obj.clone(), on }
    }

    pub fn apply(&self, e: &str) -> &str {
        &self.on[e]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &FinSetMap) -> Result<FinSetMap> {
        if other.target != self.source {
            return Err(Error::Invalid("composition endpoint mismatch".into()));
        }
        let on = other
            .on
            .iter()
            .map(|(k, v)| (k.clone(), self.on[v].clone()))
            .collect();
        Ok(FinSetMap { source: other.source.clone(), target: self.target.clone(), on })
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&String> = self.on.values().collect();
        images.len() == self.source.len()
    }

    pub fn is_surjective(&self) -> bool {
        let images: BTreeSet<&String> = self.on.values().collect();
        images.len() == self.target.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<FinSetMap> {
        if !self.is_bijective() {
            return None;
        }
        let on = self.on.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        Some(FinSetMap { source: self.target.clone(), target: self.source.clone(), on })
    }

    /// All functions from `source` to `target`, in lexicographic order.
    pub fn enumerate(source: &FinSetObj, target: &FinSetObj) -> Vec<FinSetMap> {
        let n = source.len();
        if target.is_empty() && n > 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let on: BTreeMap<String, String> = source
                .elements()
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), target.elements()[idx[i]].clone()))
                .collect();
            out.push(FinSetMap { source: source.clone(), target: target.clone(), on });
            // odometer
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < target.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_expected_labels() {
        let a = FinSetObj::from_labels(&["x", "y"]);
        let b = FinSetObj::from_labels(&["*"]);
        let p = a.product(&b);
        assert_eq!(p.elements(), &["(x,*)".to_string(), "(y,*)".to_string()]);
    }

    #[test]
    fn enumerate_counts_functions() {
        let a = FinSetObj::from_labels(&["1", "2"]);
        let b = FinSetObj::from_labels(&["a", "b", "c"]);
        assert_eq!(FinSetMap::enumerate(&a, &b).len(), 9);
        assert_eq!(FinSetMap::enumerate(&b, &a).len(), 8);
        assert_eq!(FinSetMap::enumerate(&FinSetObj::empty(), &a).len(), 1);
        assert_eq!(FinSetMap::enumerate(&a, &FinSetObj::empty()).len(), 0);
    }

    #[test]
    fn inverse_only_for_bijections() {
        let a = FinSetObj::from_labels(&["1", "2"]);
        let id = FinSetMap::identity(&a);
        assert!(id.inverse().is_some());
        let b = FinSetObj::from_labels(&["z"]);
        let collapse = FinSetMap::enumerate(&a, &b).pop().unwrap();
        assert!(collapse.inverse().is_none());
    }
}
