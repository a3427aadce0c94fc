//! Finite simplicial sets presented by nondegenerate simplices.
//!
//! A simplex is addressed as `s_{j_1} ... s_{j_k} x` with `x` nondegenerate
//! and `j_1 > ... > j_k` (the unique normal form). Faces of nondegenerate
//! simplices are stored; everything else is derived by pushing operators
//! through degeneracy words with the simplicial identities.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A possibly degenerate simplex: a nondegenerate id plus a normalized
/// degeneracy word (strictly decreasing indices, outermost first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SimplexRef {
    #[serde(rename = "target")]
    pub id: String,
    #[serde(rename = "degen", default)]
    pub degens: Vec<usize>,
}

impl SimplexRef {
    pub fn nondeg(id: &str) -> SimplexRef {
        SimplexRef { id: id.to_string(), degens: Vec::new() }
    }

    pub fn is_nondeg(&self) -> bool {
        self.degens.is_empty()
    }

    /// Compact label, e.g. `e^s1s0` for `s_1 s_0 e`.
    pub fn label(&self) -> String {
        if self.degens.is_empty() {
            self.id.clone()
        } else {
            let mut s = self.id.clone();
            s.push('^');
            for j in &self.degens {
                s.push('s');
                s.push_str(&j.to_string());
            }
            s
        }
    }
}

/// Inserts `s_j` on the outside of a normalized word, renormalizing.
/// Uses `s_j s_e = s_{e+1} s_j` for `j <= e`.
pub fn insert_degeneracy(word: &[usize], j: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut pending = Some(j);
    for &e in word {
        match pending {
            Some(p) if p > e => {
                out.push(p);
                out.push(e);
                pending = None;
            }
            Some(_) => out.push(e + 1),
            None => out.push(e),
        }
    }
    if let Some(p) = pending {
        out.push(p);
    }
    out
}

/// Composes normalized words: the result is `s_outer . s_inner` normalized.
pub fn compose_words(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    let mut acc = inner.to_vec();
    for &j in outer.iter().rev() {
        acc = insert_degeneracy(&acc, j);
    }
    acc
}

/// Pushes `d_i` through a word. Returns the rewritten word plus the residual
/// face index, or `None` if the face cancelled against a degeneracy.
fn push_face_through(word: &[usize], i: usize) -> (Vec<usize>, Option<usize>) {
    let mut out = Vec::with_capacity(word.len());
    let mut cur = Some(i);
    for &e in word {
        match cur {
            None => out.push(e),
            Some(i) if i < e => {
                out.push(e - 1);
                cur = Some(i);
            }
            Some(i) if i == e || i == e + 1 => {
                cur = None; // d_i s_e = id
            }
            Some(i) => {
                out.push(e);
                cur = Some(i - 1);
            }
        }
    }
    (out, cur)
}

/// All normalized degeneracy words of the given length landing on a
/// nondegenerate simplex of dimension `base_dim`.
pub fn decreasing_words(len: usize, base_dim: usize) -> Vec<Vec<usize>> {
    // built right to left: the t-th entry from the right applies to dimension
    // base_dim + t, so it is at most base_dim + t
    let mut out = Vec::new();
    fn rec(len: usize, base_dim: usize, t: usize, min_next: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t == len {
            let mut w = acc.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for j in min_next..=base_dim + t {
            acc.push(j);
            rec(len, base_dim, t + 1, j + 1, acc, out);
            acc.pop();
        }
    }
    rec(len, base_dim, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// A finite simplicial set: nondegenerate simplices per dimension plus the
/// stored faces of each nondegenerate simplex of positive dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FinSSetObj {
    simplices: Vec<Vec<String>>,
    faces: BTreeMap<String, Vec<SimplexRef>>,
    dim_of: BTreeMap<String, usize>,
}

impl FinSSetObj {
    pub fn new(simplices: Vec<Vec<String>>, faces: BTreeMap<String, Vec<SimplexRef>>) -> Result<FinSSetObj> {
        let mut simplices = simplices;
        while simplices.last().map_or(false, |v| v.is_empty()) {
            simplices.pop();
        }
        for level in &mut simplices {
            level.sort();
        }
        let mut dim_of = BTreeMap::new();
        for (d, level) in simplices.iter().enumerate() {
            for id in level {
                if dim_of.insert(id.clone(), d).is_some() {
                    return Err(Error::Invalid(format!("duplicate simplex id {:?}", id)));
                }
            }
        }
        let obj = FinSSetObj { simplices, faces, dim_of };
        obj.validate()?;
        Ok(obj)
    }

    pub fn empty() -> FinSSetObj {
        FinSSetObj { simplices: Vec::new(), faces: BTreeMap::new(), dim_of: BTreeMap::new() }
    }

    pub fn discrete(labels: &[String]) -> FinSSetObj {
        let mut labels: Vec<String> = labels.to_vec();
        labels.sort();
        labels.dedup();
        FinSSetObj::new(vec![labels], BTreeMap::new()).expect("discrete complex is valid")
    }

    pub fn point() -> FinSSetObj {
        FinSSetObj::discrete(&["*".to_string()])
    }

    fn validate(&self) -> Result<()> {
        for (id, d) in &self.dim_of {
            if *d == 0 {
                if self.faces.contains_key(id) {
                    return Err(Error::Invalid(format!("vertex {:?} has stored faces", id)));
                }
                continue;
            }
            let fs = self
                .faces
                .get(id)
                .ok_or_else(|| Error::Invalid(format!("missing faces for {:?}", id)))?;
            if fs.len() != d + 1 {
                return Err(Error::Invalid(format!("simplex {:?} needs {} faces", id, d + 1)));
            }
            for r in fs {
                let base = *self
                    .dim_of
                    .get(&r.id)
                    .ok_or_else(|| Error::Invalid(format!("face of {:?} references unknown id {:?}", id, r.id)))?;
                if !r.degens.windows(2).all(|w| w[0] > w[1]) {
                    return Err(Error::Invalid(format!("degeneracy word of a face of {:?} not normalized", id)));
                }
                if base + r.degens.len() != d - 1 {
                    return Err(Error::Invalid(format!("face of {:?} has wrong dimension", id)));
                }
                for (t, &j) in r.degens.iter().rev().enumerate() {
                    if j > base + t {
                        return Err(Error::Invalid(format!("degeneracy word of a face of {:?} out of range", id)));
                    }
                }
            }
        }
        // simplicial identities d_i d_j = d_{j-1} d_i for i < j
        for (id, d) in &self.dim_of {
            if *d < 2 {
                continue;
            }
            let x = SimplexRef::nondeg(id);
            for j in 1..=*d {
                for i in 0..j {
                    let a = self.face_of_ref(&self.face_of_ref(&x, j)?, i)?;
                    let b = self.face_of_ref(&self.face_of_ref(&x, i)?, j - 1)?;
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "simplicial identity fails on {:?}: d_{} d_{} != d_{} d_{}",
                            id, i, j, j - 1, i
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn max_dim(&self) -> Option<usize> {
        if self.simplices.is_empty() {
            None
        } else {
            Some(self.simplices.len() - 1)
        }
    }

    pub fn nondeg(&self, d: usize) -> &[String] {
        self.simplices.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn nondeg_count(&self) -> usize {
        self.simplices.iter().map(|v| v.len()).sum()
    }

    pub fn all_nondeg(&self) -> impl Iterator<Item = (usize, &String)> {
        self.simplices.iter().enumerate().flat_map(|(d, v)| v.iter().map(move |id| (d, id)))
    }

    pub fn dim_of(&self, id: &str) -> Option<usize> {
        self.dim_of.get(id).copied()
    }

    pub fn dim_of_ref(&self, r: &SimplexRef) -> usize {
        self.dim_of[&r.id] + r.degens.len()
    }

    pub fn stored_faces(&self, id: &str) -> &[SimplexRef] {
        self.faces.get(id).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `d_i` of an arbitrary simplex.
    pub fn face_of_ref(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        let dim = self.dim_of_ref(r);
        if dim == 0 || i > dim {
            return Err(Error::Invalid(format!("face d_{} undefined on {:?}", i, r)));
        }
        let (word, residual) = push_face_through(&r.degens, i);
        match residual {
            None => Ok(SimplexRef { id: r.id.clone(), degens: word }),
            Some(i2) => {
                let stored = &self.faces[&r.id][i2];
                Ok(SimplexRef { id: stored.id.clone(), degens: compose_words(&word, &stored.degens) })
            }
        }
    }

    /// `s_j` of an arbitrary simplex.
    pub fn degeneracy_of_ref(&self, r: &SimplexRef, j: usize) -> SimplexRef {
        SimplexRef { id: r.id.clone(), degens: insert_degeneracy(&r.degens, j) }
    }

    /// Every simplex of dimension `m`, degenerate ones included.
    pub fn simplices_of_dim(&self, m: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for d in 0..=m.min(self.max_dim().map_or(0, |x| x)) {
            for id in self.nondeg(d) {
                for w in decreasing_words(m - d, d) {
                    out.push(SimplexRef { id: id.clone(), degens: w });
                }
            }
        }
        out.sort();
        out
    }

    pub fn vertices(&self) -> &[String] {
        self.nondeg(0)
    }

    /// Fully degenerate lift of a vertex to dimension `m`.
    pub fn degenerate_vertex(&self, vertex: &str, m: usize) -> SimplexRef {
        SimplexRef { id: vertex.to_string(), degens: (0..m).rev().collect() }
    }

    /// Connected components: sorted vertex classes, each sorted.
    pub fn pi0(&self) -> Vec<Vec<String>> {
        let verts: Vec<String> = self.vertices().to_vec();
        let idx: BTreeMap<&String, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for e in self.nondeg(1) {
            let r = SimplexRef::nondeg(e);
            let a = self.face_of_ref(&r, 0).expect("edge face");
            let b = self.face_of_ref(&r, 1).expect("edge face");
            let (ia, ib) = (idx[&a.id], idx[&b.id]);
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for i in 0..verts.len() {
            let r = find(&mut parent, i);
            classes.entry(r).or_default().push(verts[i].clone());
        }
        let mut out: Vec<Vec<String>> = classes.into_values().collect();
        for c in &mut out {
            c.sort();
        }
        out.sort();
        out
    }

    pub fn pi0_class_of(&self, vertex: &str) -> Vec<String> {
        self.pi0()
            .into_iter()
            .find(|c| c.iter().any(|v| v == vertex))
            .expect("vertex in some component")
    }

    // ---- standard complexes ----

    fn subset_id(vs: &[usize]) -> String {
        let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        parts.join("-")
    }

    fn simplex_family(n: usize, keep: impl Fn(&[usize]) -> bool) -> FinSSetObj {
        let mut simplices: Vec<Vec<String>> = vec![Vec::new(); n + 1];
        let mut faces = BTreeMap::new();
        let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
        for v in 0..=n {
            let mut next = Vec::new();
            for s in &subsets {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
            subsets.extend(next);
        }
        subsets.retain(|s| !s.is_empty() && keep(s));
        for s in &subsets {
            let d = s.len() - 1;
            simplices[d].push(FinSSetObj::subset_id(s));
            if d > 0 {
                let mut fs = Vec::new();
                for i in 0..=d {
                    let mut t = s.clone();
                    t.remove(i);
                    fs.push(SimplexRef::nondeg(&FinSSetObj::subset_id(&t)));
                }
                faces.insert(FinSSetObj::subset_id(s), fs);
            }
        }
        FinSSetObj::new(simplices, faces).expect("standard complex is valid")
    }

    /// The standard simplex.
    pub fn delta(n: usize) -> FinSSetObj {
        FinSSetObj::simplex_family(n, |_| true)
    }

    /// Its boundary.
    pub fn boundary(n: usize) -> FinSSetObj {
        FinSSetObj::simplex_family(n, |s| s.len() != n + 1)
    }

    /// The horn missing the k-th face.
    pub fn horn(n: usize, k: usize) -> FinSSetObj {
        assert!(k <= n && n >= 1);
        FinSSetObj::simplex_family(n, |s| {
            s.len() != n + 1 && !(s.len() == n && !s.contains(&k))
        })
    }

    /// Nerve of the contractible groupoid on two objects, truncated at
    /// `dim_bound`. Nondegenerate simplices are the alternating 0/1 words.
    pub fn nerve_contractible_pair(dim_bound: usize) -> FinSSetObj {
        fn word_id(w: &[u8]) -> String {
            w.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
        }
        // collapse adjacent repeats, largest position first
        fn ez(w: &[u8]) -> SimplexRef {
            let mut w = w.to_vec();
            let mut word = Vec::new();
            loop {
                let mut p = None;
                for q in (0..w.len().saturating_sub(1)).rev() {
                    if w[q] == w[q + 1] {
                        p = Some(q);
                        break;
                    }
                }
                match p {
                    Some(q) => {
                        w.remove(q + 1);
                        word.push(q);
                    }
                    None => break,
                }
            }
            SimplexRef { id: word_id(&w), degens: word }
        }
        let mut simplices: Vec<Vec<String>> = vec![Vec::new(); dim_bound + 1];
        let mut faces = BTreeMap::new();
        for d in 0..=dim_bound {
            for first in [0u8, 1u8] {
                let w: Vec<u8> = (0..=d).map(|i| (first + i as u8) % 2).collect();
                let id = word_id(&w);
                simplices[d].push(id.clone());
                if d > 0 {
                    let mut fs = Vec::new();
                    for i in 0..=d {
                        let mut t = w.clone();
                        t.remove(i);
                        fs.push(ez(&t));
                    }
                    faces.insert(id, fs);
                }
            }
        }
        FinSSetObj::new(simplices, faces).expect("nerve is valid")
    }

    /// Tagged disjoint union.
    pub fn coproduct(parts: &[(String, &FinSSetObj)]) -> FinSSetObj {
        let max = parts.iter().filter_map(|(_, x)| x.max_dim()).max();
        let mut simplices: Vec<Vec<String>> = match max {
            None => Vec::new(),
            Some(m) => vec![Vec::new(); m + 1],
        };
        let mut faces = BTreeMap::new();
        for (tag, x) in parts {
            for (d, id) in x.all_nondeg() {
                let new_id = format!("{}:{}", tag, id);
                simplices[d].push(new_id.clone());
                if d > 0 {
                    let fs = x
                        .stored_faces(id)
                        .iter()
                        .map(|r| SimplexRef { id: format!("{}:{}", tag, r.id), degens: r.degens.clone() })
                        .collect();
                    faces.insert(new_id, fs);
                }
            }
        }
        FinSSetObj::new(simplices, faces).expect("coproduct is valid")
    }
}

/// A simplicial map, stored by images of nondegenerate simplices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SSetMap {
    pub source: FinSSetObj,
    pub target: FinSSetObj,
    pub on: BTreeMap<String, SimplexRef>,
}

impl SSetMap {
    pub fn new(source: FinSSetObj, target: FinSSetObj, on: BTreeMap<String, SimplexRef>) -> Result<SSetMap> {
        let m = SSetMap { source, target, on };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for (d, id) in self.source.all_nondeg() {
            let img = self
                .on
                .get(id)
                .ok_or_else(|| Error::Invalid(format!("map misses simplex {:?}", id)))?;
            if self.target.dim_of(&img.id).is_none() {
                return Err(Error::Invalid(format!("image of {:?} references unknown id", id)));
            }
            if self.target.dim_of_ref(img) != d {
                return Err(Error::Invalid(format!("image of {:?} has wrong dimension", id)));
            }
        }
        if self.on.len() != self.source.nondeg_count() {
            return Err(Error::Invalid("map defined on non-simplices".into()));
        }
        for (d, id) in self.source.all_nondeg() {
            if d == 0 {
                continue;
            }
            let x = SimplexRef::nondeg(id);
            for i in 0..=d {
                let lhs = self.apply_ref(&self.source.face_of_ref(&x, i)?)?;
                let rhs = self.target.face_of_ref(&self.apply_ref(&x)?, i)?;
                if lhs != rhs {
                    return Err(Error::Invalid(format!("map does not commute with d_{} on {:?}", i, id)));
                }
            }
        }
        Ok(())
    }

    pub fn apply_ref(&self, r: &SimplexRef) -> Result<SimplexRef> {
        let img = self
            .on
            .get(&r.id)
            .ok_or_else(|| Error::Invalid(format!("no image for {:?}", r.id)))?;
        Ok(SimplexRef { id: img.id.clone(), degens: compose_words(&r.degens, &img.degens) })
    }

    pub fn identity(obj: &FinSSetObj) -> SSetMap {
        let on = obj.all_nondeg().map(|(_, id)| (id.clone(), SimplexRef::nondeg(id))).collect();
        SSetMap { source: obj.clone(), target: obj.clone(), on }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SSetMap) -> Result<SSetMap> {
        if other.target != self.source {
            return Err(Error::Invalid("composition endpoint mismatch".into()));
        }
        let mut on = BTreeMap::new();
        for (id, img) in &other.on {
            on.insert(id.clone(), self.apply_ref(img)?);
        }
        Ok(SSetMap { source: other.source.clone(), target: self.target.clone(), on })
    }

    /// Levelwise injective, i.e. nondegenerate simplices map injectively to
    /// nondegenerate simplices.
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        for img in self.on.values() {
            if !img.is_nondeg() || !seen.insert(img.clone()) {
                return false;
            }
        }
        true
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.on.len() == self.target.nondeg_count()
    }

    pub fn is_surjective_on_nondeg(&self) -> bool {
        let images: BTreeSet<&String> = self.on.values().map(|r| &r.id).collect();
        self.target.all_nondeg().all(|(_, id)| images.contains(id))
    }

    pub fn inverse(&self) -> Option<SSetMap> {
        if !self.is_iso() {
            return None;
        }
        let on = self
            .on
            .iter()
            .map(|(k, v)| (v.id.clone(), SimplexRef::nondeg(k)))
            .collect();
        Some(SSetMap { source: self.target.clone(), target: self.source.clone(), on })
    }
}

/// Enumerates simplicial maps by backtracking over nondegenerate simplices in
/// dimension order. Stops early if more than `budget` candidate images are
/// inspected; the flag reports whether the enumeration was exhaustive.
pub fn enumerate_maps(source: &FinSSetObj, target: &FinSSetObj, budget: usize) -> (Vec<SSetMap>, bool) {
    let ids: Vec<(usize, String)> = source.all_nondeg().map(|(d, id)| (d, id.clone())).collect();
    let mut out = Vec::new();
    let mut on: BTreeMap<String, SimplexRef> = BTreeMap::new();
    let mut spent = 0usize;
    let mut complete = true;
    fn rec(
        source: &FinSSetObj,
        target: &FinSSetObj,
        ids: &[(usize, String)],
        pos: usize,
        on: &mut BTreeMap<String, SimplexRef>,
        out: &mut Vec<SSetMap>,
        spent: &mut usize,
        budget: usize,
        complete: &mut bool,
    ) {
        if !*complete {
            return;
        }
        if pos == ids.len() {
            out.push(SSetMap { source: source.clone(), target: target.clone(), on: on.clone() });
            return;
        }
        let (d, id) = &ids[pos];
        let x = SimplexRef::nondeg(id);
        'cand: for cand in target.simplices_of_dim(*d) {
            *spent += 1;
            if *spent > budget {
                *complete = false;
                return;
            }
            if *d > 0 {
                for i in 0..=*d {
                    let fx = source.face_of_ref(&x, i).expect("face");
                    // image of fx under the partial map: all its nondeg parts are assigned
                    let fimg = {
                        let img = &on[&fx.id];
                        SimplexRef { id: img.id.clone(), degens: compose_words(&fx.degens, &img.degens) }
                    };
                    let cf = target.face_of_ref(&cand, i).expect("face");
                    if fimg != cf {
                        continue 'cand;
                    }
                }
            }
            on.insert(id.clone(), cand.clone());
            rec(source, target, ids, pos + 1, on, out, spent, budget, complete);
            on.remove(id);
        }
    }
    rec(source, target, &ids, 0, &mut on, &mut out, &mut spent, budget, &mut complete);
    (out, complete)
}

/// A failed horn lifting problem, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornFailure {
    pub n: usize,
    pub k: usize,
    pub horn_faces: Vec<String>,
    pub base: String,
}

/// Exhaustive horn-filler check for `f` up to dimension `dim_bound`.
pub fn kan_fibration_failure(f: &SSetMap, dim_bound: usize) -> Option<HornFailure> {
    fn check_family(
        f: &SSetMap,
        n: usize,
        k: usize,
        slots: &[usize],
        family: &[SimplexRef],
        sigmas: &[SimplexRef],
        fillers: &[SimplexRef],
    ) -> Option<HornFailure> {
        'sigma: for sigma in sigmas {
            for (t, &i) in slots.iter().enumerate() {
                let fx = f.apply_ref(&family[t]).expect("image");
                if f.target.face_of_ref(sigma, i).expect("face") != fx {
                    continue 'sigma;
                }
            }
            let mut filled = false;
            'tau: for tau in fillers {
                if f.apply_ref(tau).expect("image") != *sigma {
                    continue;
                }
                for (t, &i) in slots.iter().enumerate() {
                    if f.source.face_of_ref(tau, i).expect("face") != family[t] {
                        continue 'tau;
                    }
                }
                filled = true;
                break;
            }
            if !filled {
                return Some(HornFailure {
                    n,
                    k,
                    horn_faces: family.iter().map(|r| r.label()).collect(),
                    base: sigma.label(),
                });
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_family(
        f: &SSetMap,
        n: usize,
        k: usize,
        slots: &[usize],
        xs: &[SimplexRef],
        family: &mut Vec<SimplexRef>,
        sigmas: &[SimplexRef],
        fillers: &[SimplexRef],
    ) -> Option<HornFailure> {
        let depth = family.len();
        if depth == slots.len() {
            return check_family(f, n, k, slots, family, sigmas, fillers);
        }
        let j = slots[depth];
        'cand: for cand in xs {
            // horn compatibility d_i x_j = d_{j-1} x_i against assigned slots
            if n >= 2 {
                for (t, &i) in slots.iter().enumerate().take(depth) {
                    let a = f.source.face_of_ref(cand, i).expect("face");
                    let b = f.source.face_of_ref(&family[t], j - 1).expect("face");
                    if a != b {
                        continue 'cand;
                    }
                }
            }
            family.push(cand.clone());
            let hit = extend_family(f, n, k, slots, xs, family, sigmas, fillers);
            family.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    for n in 1..=dim_bound {
        let xs = f.source.simplices_of_dim(n - 1);
        let fillers = f.source.simplices_of_dim(n);
        let sigmas = f.target.simplices_of_dim(n);
        for k in 0..=n {
            let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
            let mut family = Vec::new();
            if let Some(hit) = extend_family(f, n, k, &slots, &xs, &mut family, &sigmas, &fillers) {
                return Some(hit);
            }
        }
    }
    None
}

pub fn is_kan_fibration(f: &SSetMap, dim_bound: usize) -> bool {
    kan_fibration_failure(f, dim_bound).is_none()
}
