//! Binary products of finite simplicial sets.
//!
//! Nondegenerate m-simplices of `X x Y` are the pairs of m-simplices whose
//! degeneracy words are disjoint (Eilenberg-Zilber). The product is truncated
//! at a dimension bound; it is exact whenever the bound is at least
//! `dim X + dim Y`.

use std::collections::BTreeMap;

use crate::enrich::sset::{compose_words, FinSSetObj, SSetMap, SimplexRef};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SSetProduct {
    pub left: FinSSetObj,
    pub right: FinSSetObj,
    pub value: FinSSetObj,
    pairs: BTreeMap<String, (SimplexRef, SimplexRef)>,
    index: BTreeMap<(String, String), String>,
}

fn pair_id(a: &SimplexRef, b: &SimplexRef) -> String {
    format!("({},{})", a.label(), b.label())
}

/// Strips the common degeneracies of a coordinate pair, largest index first.
/// Returns the jointly nondegenerate core and the outer word.
fn ez_reduce(x: &FinSSetObj, y: &FinSSetObj, a: &SimplexRef, b: &SimplexRef) -> (SimplexRef, SimplexRef, Vec<usize>) {
    let mut a = a.clone();
    let mut b = b.clone();
    let mut word = Vec::new();
    loop {
        let j = a.degens.iter().filter(|j| b.degens.contains(j)).max().copied();
        match j {
            None => return (a, b, word),
            Some(j) => {
                // s_j in both words, so d_j strips it coordinatewise
                a = x.face_of_ref(&a, j).expect("face");
                b = y.face_of_ref(&b, j).expect("face");
                word.push(j);
            }
        }
    }
}

impl SSetProduct {
    pub fn build(x: &FinSSetObj, y: &FinSSetObj, dim_bound: usize) -> SSetProduct {
        let mut levels: Vec<Vec<(SimplexRef, SimplexRef)>> = Vec::new();
        for m in 0..=dim_bound {
            let xs = x.simplices_of_dim(m);
            let ys = y.simplices_of_dim(m);
            let mut level = Vec::new();
            for a in &xs {
                for b in &ys {
                    if a.degens.iter().all(|j| !b.degens.contains(j)) {
                        level.push((a.clone(), b.clone()));
                    }
                }
            }
            levels.push(level);
        }
        while levels.last().map_or(false, |v| v.is_empty()) {
            levels.pop();
        }
        let mut simplices: Vec<Vec<String>> = vec![Vec::new(); levels.len()];
        let mut pairs = BTreeMap::new();
        let mut index = BTreeMap::new();
        for (m, level) in levels.iter().enumerate() {
            for (a, b) in level {
                let id = pair_id(a, b);
                simplices[m].push(id.clone());
                index.insert((a.label(), b.label()), id.clone());
                pairs.insert(id, (a.clone(), b.clone()));
            }
        }
        let mut faces = BTreeMap::new();
        for level in levels.iter().skip(1) {
            for (a, b) in level {
                let m = x.dim_of_ref(a);
                let mut fs = Vec::new();
                for i in 0..=m {
                    let fa = x.face_of_ref(a, i).expect("face");
                    let fb = y.face_of_ref(b, i).expect("face");
                    let (ca, cb, word) = ez_reduce(x, y, &fa, &fb);
                    fs.push(SimplexRef { id: pair_id(&ca, &cb), degens: word });
                }
                faces.insert(pair_id(a, b), fs);
            }
        }
        let value = FinSSetObj::new(simplices, faces).expect("product is valid");
        SSetProduct { left: x.clone(), right: y.clone(), value, pairs, index }
    }

    /// The coordinates of a nondegenerate product simplex.
    pub fn coords(&self, id: &str) -> Result<(SimplexRef, SimplexRef)> {
        self.pairs
            .get(id)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("not a product simplex: {:?}", id)))
    }

    /// The product simplex with the given coordinates (any refs of equal
    /// dimension), as a ref into the product.
    pub fn encode(&self, a: &SimplexRef, b: &SimplexRef) -> Result<SimplexRef> {
        let (ca, cb, word) = ez_reduce(&self.left, &self.right, a, b);
        let id = self
            .index
            .get(&(ca.label(), cb.label()))
            .ok_or_else(|| Error::BoundExceeded(format!("product simplex ({},{}) above dimension bound", a.label(), b.label())))?;
        Ok(SimplexRef { id: id.clone(), degens: word })
    }

    /// Coordinates of an arbitrary ref into the product.
    pub fn decode(&self, r: &SimplexRef) -> Result<(SimplexRef, SimplexRef)> {
        let (a, b) = self.coords(&r.id)?;
        Ok((
            SimplexRef { id: a.id.clone(), degens: compose_words(&r.degens, &a.degens) },
            SimplexRef { id: b.id.clone(), degens: compose_words(&r.degens, &b.degens) },
        ))
    }

    pub fn proj_left(&self) -> SSetMap {
        let on = self.pairs.iter().map(|(id, (a, _))| (id.clone(), a.clone())).collect();
        SSetMap { source: self.value.clone(), target: self.left.clone(), on }
    }

    pub fn proj_right(&self) -> SSetMap {
        let on = self.pairs.iter().map(|(id, (_, b))| (id.clone(), b.clone())).collect();
        SSetMap { source: self.value.clone(), target: self.right.clone(), on }
    }

    /// The symmetry `X x Y -> Y x X` into the given target product.
    pub fn swap_into(&self, target: &SSetProduct) -> Result<SSetMap> {
        let mut on = BTreeMap::new();
        for (id, (a, b)) in &self.pairs {
            on.insert(id.clone(), target.encode(b, a)?);
        }
        SSetMap::new(self.value.clone(), target.value.clone(), on)
    }

    /// The product `f x g` of two maps, into the given target product.
    pub fn map_into(&self, target: &SSetProduct, f: &SSetMap, g: &SSetMap) -> Result<SSetMap> {
        if f.source != self.left || g.source != self.right {
            return Err(Error::Invalid("product map sources do not match".into()));
        }
        if f.target != target.left || g.target != target.right {
            return Err(Error::Invalid("product map targets do not match".into()));
        }
        let mut on = BTreeMap::new();
        for (id, (a, b)) in &self.pairs {
            on.insert(id.clone(), target.encode(&f.apply_ref(a)?, &g.apply_ref(b)?)?);
        }
        SSetMap::new(self.value.clone(), target.value.clone(), on)
    }
}

/// Cylinder object `X x Delta^1`, exact (bound = dim X + 1), with the two end
/// inclusions.
pub struct Cylinder {
    pub product: SSetProduct,
    pub end0: SSetMap,
    pub end1: SSetMap,
}

pub fn cylinder(x: &FinSSetObj) -> Cylinder {
    let d1 = FinSSetObj::delta(1);
    let bound = x.max_dim().map_or(1, |d| d + 1);
    let product = SSetProduct::build(x, &d1, bound);
    let end = |v: &str| -> SSetMap {
        let mut on = BTreeMap::new();
        for (d, id) in x.all_nondeg() {
            let a = SimplexRef::nondeg(id);
            let b = d1.degenerate_vertex(v, d);
            on.insert(id.clone(), product.encode(&a, &b).expect("cylinder end"));
        }
        SSetMap { source: x.clone(), target: product.value.clone(), on }
    };
    let end0 = end("0");
    let end1 = end("1");
    Cylinder { product, end0, end1 }
}
