//! Enrichment backends: finite sets and finite simplicial sets behind one
//! interface. Values are immutable after validation; maps are stored by
//! their action on canonical bases (labels, nondegenerate simplices).

pub mod finset;
pub mod homotopy;
pub mod product;
pub mod sset;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::verdict::Verdict;
use finset::{FinSetMap, FinSetObj};
use homotopy::OracleAnswer;
use product::SSetProduct;
use sset::{FinSSetObj, SSetMap, SimplexRef};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Set,
    SSet,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Set => f.write_str("set"),
            Backend::SSet => f.write_str("sset"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EnrichValue {
    Set(FinSetObj),
    SSet(FinSSetObj),
}

/// An element of a backend object: a label, or a (possibly degenerate)
/// simplex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Elem {
    Set(String),
    SSet(SimplexRef),
}

impl Elem {
    pub fn label(&self) -> String {
        match self {
            Elem::Set(s) => s.clone(),
            Elem::SSet(r) => r.label(),
        }
    }
}

impl EnrichValue {
    pub fn backend(&self) -> Backend {
        match self {
            EnrichValue::Set(_) => Backend::Set,
            EnrichValue::SSet(_) => Backend::SSet,
        }
    }

    pub fn initial(backend: Backend) -> EnrichValue {
        match backend {
            Backend::Set => EnrichValue::Set(FinSetObj::empty()),
            Backend::SSet => EnrichValue::SSet(FinSSetObj::empty()),
        }
    }

    pub fn unit(backend: Backend) -> EnrichValue {
        match backend {
            Backend::Set => EnrichValue::Set(FinSetObj::singleton("*")),
            Backend::SSet => EnrichValue::SSet(FinSSetObj::point()),
        }
    }

    pub fn is_initial(&self) -> bool {
        match self {
            EnrichValue::Set(s) => s.is_empty(),
            EnrichValue::SSet(x) => x.is_empty(),
        }
    }

    pub fn as_set(&self) -> Result<&FinSetObj> {
        match self {
            EnrichValue::Set(s) => Ok(s),
            EnrichValue::SSet(_) => Err(Error::BackendMismatch { expected: Backend::Set, found: Backend::SSet }),
        }
    }

    pub fn as_sset(&self) -> Result<&FinSSetObj> {
        match self {
            EnrichValue::SSet(x) => Ok(x),
            EnrichValue::Set(_) => Err(Error::BackendMismatch { expected: Backend::SSet, found: Backend::Set }),
        }
    }

    /// Canonical basis: labels, or nondegenerate simplices.
    pub fn basis(&self) -> Vec<Elem> {
        match self {
            EnrichValue::Set(s) => s.elements().iter().map(|l| Elem::Set(l.clone())).collect(),
            EnrichValue::SSet(x) => x.all_nondeg().map(|(_, id)| Elem::SSet(SimplexRef::nondeg(id))).collect(),
        }
    }

    /// Dimension-zero part: labels, or vertices.
    pub fn points(&self) -> Vec<Elem> {
        match self {
            EnrichValue::Set(s) => s.elements().iter().map(|l| Elem::Set(l.clone())).collect(),
            EnrichValue::SSet(x) => x.vertices().iter().map(|id| Elem::SSet(SimplexRef::nondeg(id))).collect(),
        }
    }

    pub fn size_desc(&self) -> String {
        match self {
            EnrichValue::Set(s) => format!("{} elements", s.len()),
            EnrichValue::SSet(x) => {
                let counts: Vec<String> = match x.max_dim() {
                    None => vec!["empty".into()],
                    Some(top) => (0..=top).map(|d| x.nondeg(d).len().to_string()).collect(),
                };
                format!("nondegenerate simplices per dim [{}]", counts.join(","))
            }
        }
    }

    /// Reads a Set value as a discrete simplicial value.
    pub fn to_discrete_sset(&self) -> EnrichValue {
        match self {
            EnrichValue::Set(s) => EnrichValue::SSet(FinSSetObj::discrete(s.elements())),
            EnrichValue::SSet(_) => self.clone(),
        }
    }

    pub fn coproduct(parts: &[(String, &EnrichValue)]) -> Result<EnrichValue> {
        let backend = parts.first().map(|(_, v)| v.backend());
        match backend {
            None => Err(Error::Invalid("empty coproduct needs a backend; use initial".into())),
            Some(Backend::Set) => {
                let mut inner = Vec::new();
                for (tag, v) in parts {
                    inner.push((tag.clone(), v.as_set()?.clone()));
                }
                let refs: Vec<(String, &FinSetObj)> = inner.iter().map(|(t, v)| (t.clone(), v)).collect();
                Ok(EnrichValue::Set(FinSetObj::coproduct(&refs)))
            }
            Some(Backend::SSet) => {
                let mut inner = Vec::new();
                for (tag, v) in parts {
                    inner.push((tag.clone(), v.as_sset()?.clone()));
                }
                let refs: Vec<(String, &FinSSetObj)> = inner.iter().map(|(t, v)| (t.clone(), v)).collect();
                Ok(EnrichValue::SSet(FinSSetObj::coproduct(&refs)))
            }
        }
    }

    /// Builds a map from a function on the basis. Simplicial maps are
    /// validated, so an inconsistent function is rejected.
    pub fn map_from_fn(
        &self,
        target: &EnrichValue,
        mut f: impl FnMut(&Elem) -> Result<Elem>,
    ) -> Result<EnrichMap> {
        match (self, target) {
            (EnrichValue::Set(a), EnrichValue::Set(b)) => {
                let mut on = BTreeMap::new();
                for l in a.elements() {
                    match f(&Elem::Set(l.clone()))? {
                        Elem::Set(img) => on.insert(l.clone(), img),
                        Elem::SSet(_) => return Err(Error::Invalid("set map image must be a label".into())),
                    };
                }
                Ok(EnrichMap::Set(FinSetMap::new(a.clone(), b.clone(), on)?))
            }
            (EnrichValue::SSet(a), EnrichValue::SSet(b)) => {
                let mut on = BTreeMap::new();
                for (_, id) in a.all_nondeg() {
                    match f(&Elem::SSet(SimplexRef::nondeg(id)))? {
                        Elem::SSet(img) => on.insert(id.clone(), img),
                        Elem::Set(_) => return Err(Error::Invalid("simplicial map image must be a simplex".into())),
                    };
                }
                Ok(EnrichMap::SSet(SSetMap::new(a.clone(), b.clone(), on)?))
            }
            _ => Err(Error::BackendMismatch { expected: self.backend(), found: target.backend() }),
        }
    }
}

pub fn coproduct_elem(tag: &str, e: &Elem) -> Elem {
    match e {
        Elem::Set(l) => Elem::Set(format!("{}:{}", tag, l)),
        Elem::SSet(r) => Elem::SSet(SimplexRef { id: format!("{}:{}", tag, r.id), degens: r.degens.clone() }),
    }
}

pub fn split_coproduct_elem(e: &Elem) -> Result<(String, Elem)> {
    let split = |s: &str| -> Result<(String, String)> {
        let i = s.find(':').ok_or_else(|| Error::Invalid(format!("not a coproduct element: {:?}", s)))?;
        Ok((s[..i].to_string(), s[i + 1..].to_string()))
    };
    match e {
        Elem::Set(l) => {
            let (tag, rest) = split(l)?;
            Ok((tag, Elem::Set(rest)))
        }
        Elem::SSet(r) => {
            let (tag, rest) = split(&r.id)?;
            Ok((tag, Elem::SSet(SimplexRef { id: rest, degens: r.degens.clone() })))
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EnrichMap {
    Set(FinSetMap),
    SSet(SSetMap),
}

impl EnrichMap {
    pub fn backend(&self) -> Backend {
        match self {
            EnrichMap::Set(_) => Backend::Set,
            EnrichMap::SSet(_) => Backend::SSet,
        }
    }

    pub fn source(&self) -> EnrichValue {
        match self {
            EnrichMap::Set(f) => EnrichValue::Set(f.source.clone()),
            EnrichMap::SSet(f) => EnrichValue::SSet(f.source.clone()),
        }
    }

    pub fn target(&self) -> EnrichValue {
        match self {
            EnrichMap::Set(f) => EnrichValue::Set(f.target.clone()),
            EnrichMap::SSet(f) => EnrichValue::SSet(f.target.clone()),
        }
    }

    pub fn identity(v: &EnrichValue) -> EnrichMap {
        match v {
            EnrichValue::Set(s) => EnrichMap::Set(FinSetMap::identity(s)),
            EnrichValue::SSet(x) => EnrichMap::SSet(SSetMap::identity(x)),
        }
    }

    pub fn apply(&self, e: &Elem) -> Result<Elem> {
        match (self, e) {
            (EnrichMap::Set(f), Elem::Set(l)) => f
                .on
                .get(l)
                .map(|v| Elem::Set(v.clone()))
                .ok_or_else(|| Error::Invalid(format!("no image for {:?}", l))),
            (EnrichMap::SSet(f), Elem::SSet(r)) => Ok(Elem::SSet(f.apply_ref(r)?)),
            _ => Err(Error::Invalid("map applied to an element of the wrong backend".into())),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &EnrichMap) -> Result<EnrichMap> {
        match (self, other) {
            (EnrichMap::Set(f), EnrichMap::Set(g)) => Ok(EnrichMap::Set(f.compose(g)?)),
            (EnrichMap::SSet(f), EnrichMap::SSet(g)) => Ok(EnrichMap::SSet(f.compose(g)?)),
            _ => Err(Error::BackendMismatch { expected: self.backend(), found: other.backend() }),
        }
    }

    pub fn is_injective(&self) -> bool {
        match self {
            EnrichMap::Set(f) => f.is_injective(),
            EnrichMap::SSet(f) => f.is_injective(),
        }
    }

    pub fn is_iso(&self) -> bool {
        match self {
            EnrichMap::Set(f) => f.is_bijective(),
            EnrichMap::SSet(f) => f.is_iso(),
        }
    }

    pub fn inverse(&self) -> Option<EnrichMap> {
        match self {
            EnrichMap::Set(f) => f.inverse().map(EnrichMap::Set),
            EnrichMap::SSet(f) => f.inverse().map(EnrichMap::SSet),
        }
    }
}

/// All maps between two objects of the same backend, with a completeness
/// flag. The budget bounds the number of search steps.
pub fn enumerate_hom(a: &EnrichValue, b: &EnrichValue, budget: usize) -> Result<(Vec<EnrichMap>, bool)> {
    match (a, b) {
        (EnrichValue::Set(a), EnrichValue::Set(b)) => {
            let cost = (b.len().max(1) as u128).checked_pow(a.len() as u32);
            if cost.map_or(true, |c| c > budget as u128) {
                return Ok((Vec::new(), false));
            }
            Ok((FinSetMap::enumerate(a, b).into_iter().map(EnrichMap::Set).collect(), true))
        }
        (EnrichValue::SSet(a), EnrichValue::SSet(b)) => {
            let (maps, complete) = sset::enumerate_maps(a, b, budget);
            Ok((maps.into_iter().map(EnrichMap::SSet).collect(), complete))
        }
        _ => Err(Error::BackendMismatch { expected: a.backend(), found: b.backend() }),
    }
}

// ---- tensor ----

#[derive(Clone, Debug)]
enum PairDetail {
    Set {
        index: BTreeMap<(String, String), String>,
        pairs: BTreeMap<String, (String, String)>,
    },
    SSet(Box<SSetProduct>),
}

/// A binary tensor with its pair bookkeeping, so elements can be encoded and
/// decoded coordinatewise.
#[derive(Clone, Debug)]
pub struct TensorPair {
    pub left: EnrichValue,
    pub right: EnrichValue,
    pub value: EnrichValue,
    detail: PairDetail,
}

impl TensorPair {
    pub fn build(a: &EnrichValue, b: &EnrichValue, dim_bound: usize) -> Result<TensorPair> {
        match (a, b) {
            (EnrichValue::Set(x), EnrichValue::Set(y)) => {
                let mut index = BTreeMap::new();
                let mut pairs = BTreeMap::new();
                for l in x.elements() {
                    for r in y.elements() {
                        let id = FinSetObj::pair_label(l, r);
                        index.insert((l.clone(), r.clone()), id.clone());
                        pairs.insert(id, (l.clone(), r.clone()));
                    }
                }
                Ok(TensorPair {
                    left: a.clone(),
                    right: b.clone(),
                    value: EnrichValue::Set(x.product(y)),
                    detail: PairDetail::Set { index, pairs },
                })
            }
            (EnrichValue::SSet(x), EnrichValue::SSet(y)) => {
                let p = SSetProduct::build(x, y, dim_bound);
                Ok(TensorPair {
                    left: a.clone(),
                    right: b.clone(),
                    value: EnrichValue::SSet(p.value.clone()),
                    detail: PairDetail::SSet(Box::new(p)),
                })
            }
            _ => Err(Error::BackendMismatch { expected: a.backend(), found: b.backend() }),
        }
    }

    pub fn encode(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        match (&self.detail, x, y) {
            (PairDetail::Set { index, .. }, Elem::Set(a), Elem::Set(b)) => index
                .get(&(a.clone(), b.clone()))
                .map(|id| Elem::Set(id.clone()))
                .ok_or_else(|| Error::Invalid(format!("({:?},{:?}) not in tensor", a, b))),
            (PairDetail::SSet(p), Elem::SSet(a), Elem::SSet(b)) => Ok(Elem::SSet(p.encode(a, b)?)),
            _ => Err(Error::Invalid("tensor encode: wrong element kind".into())),
        }
    }

    pub fn decode(&self, e: &Elem) -> Result<(Elem, Elem)> {
        match (&self.detail, e) {
            (PairDetail::Set { pairs, .. }, Elem::Set(id)) => pairs
                .get(id)
                .map(|(a, b)| (Elem::Set(a.clone()), Elem::Set(b.clone())))
                .ok_or_else(|| Error::Invalid(format!("{:?} not a tensor element", id))),
            (PairDetail::SSet(p), Elem::SSet(r)) => {
                let (a, b) = p.decode(r)?;
                Ok((Elem::SSet(a), Elem::SSet(b)))
            }
            _ => Err(Error::Invalid("tensor decode: wrong element kind".into())),
        }
    }

    /// The symmetry into the transposed tensor.
    pub fn swap_into(&self, target: &TensorPair) -> Result<EnrichMap> {
        self.value.map_from_fn(&target.value, |e| {
            let (a, b) = self.decode(e)?;
            target.encode(&b, &a)
        })
    }

    /// `f tensor g` into a target tensor.
    pub fn map_into(&self, target: &TensorPair, f: &EnrichMap, g: &EnrichMap) -> Result<EnrichMap> {
        if f.source() != self.left || g.source() != self.right {
            return Err(Error::Invalid("tensor map: sources do not match".into()));
        }
        if f.target() != target.left || g.target() != target.right {
            return Err(Error::Invalid("tensor map: targets do not match".into()));
        }
        self.value.map_from_fn(&target.value, |e| {
            let (a, b) = self.decode(e)?;
            target.encode(&f.apply(&a)?, &g.apply(&b)?)
        })
    }
}

/// Plain tensor of values (the spec-level operation).
pub fn tensor(a: &EnrichValue, b: &EnrichValue, dim_bound: usize) -> Result<EnrichValue> {
    Ok(TensorPair::build(a, b, dim_bound)?.value)
}

/// A left-nested n-fold tensor with coordinatewise encode/decode.
#[derive(Clone, Debug)]
pub struct MultiTensor {
    pub factors: Vec<EnrichValue>,
    pub value: EnrichValue,
    steps: Vec<TensorPair>,
    backend: Backend,
}

impl MultiTensor {
    pub fn build(factors: &[EnrichValue], backend: Backend, dim_bound: usize) -> Result<MultiTensor> {
        for f in factors {
            if f.backend() != backend {
                return Err(Error::BackendMismatch { expected: backend, found: f.backend() });
            }
        }
        if factors.is_empty() {
            return Ok(MultiTensor {
                factors: Vec::new(),
                value: EnrichValue::unit(backend),
                steps: Vec::new(),
                backend,
            });
        }
        let mut steps = Vec::new();
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            let step = TensorPair::build(&acc, f, dim_bound)?;
            acc = step.value.clone();
            steps.push(step);
        }
        Ok(MultiTensor { factors: factors.to_vec(), value: acc, steps, backend })
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn encode(&self, xs: &[Elem]) -> Result<Elem> {
        if xs.len() != self.factors.len() {
            return Err(Error::Invalid("tensor encode: wrong coordinate count".into()));
        }
        match self.factors.len() {
            0 => Ok(match self.backend {
                Backend::Set => Elem::Set("*".to_string()),
                Backend::SSet => Elem::SSet(SimplexRef::nondeg("*")),
            }),
            _ => {
                let mut acc = xs[0].clone();
                for (i, step) in self.steps.iter().enumerate() {
                    acc = step.encode(&acc, &xs[i + 1])?;
                }
                Ok(acc)
            }
        }
    }

    pub fn decode(&self, e: &Elem) -> Result<Vec<Elem>> {
        match self.factors.len() {
            0 => Ok(Vec::new()),
            1 => Ok(vec![e.clone()]),
            _ => {
                let mut out = Vec::new();
                let mut acc = e.clone();
                for step in self.steps.iter().rev() {
                    let (a, b) = step.decode(&acc)?;
                    out.push(b);
                    acc = a;
                }
                out.push(acc);
                out.reverse();
                Ok(out)
            }
        }
    }

    /// The canonical isomorphism permuting tensor factors: sends a tuple
    /// `(x_0, ..., x_{n-1})` to `(x_{sigma(0)}, ..., x_{sigma(n-1)})`.
    /// `target.factors[i]` must equal `self.factors[sigma(i)]`.
    pub fn permute_into(&self, target: &MultiTensor, sigma: &Perm) -> Result<EnrichMap> {
        if sigma.degree() != self.factors.len() || target.factors.len() != self.factors.len() {
            return Err(Error::Invalid("tensor permute: arity mismatch".into()));
        }
        for i in 0..self.factors.len() {
            if target.factors[i] != self.factors[sigma.apply(i)] {
                return Err(Error::Invalid("tensor permute: factors do not match".into()));
            }
        }
        self.value.map_from_fn(&target.value, |e| {
            let xs = self.decode(e)?;
            let ys: Vec<Elem> = (0..xs.len()).map(|i| xs[sigma.apply(i)].clone()).collect();
            target.encode(&ys)
        })
    }

    /// Tensor of maps, coordinatewise.
    pub fn map_into(&self, target: &MultiTensor, fs: &[EnrichMap]) -> Result<EnrichMap> {
        if fs.len() != self.factors.len() || target.factors.len() != fs.len() {
            return Err(Error::Invalid("tensor map: arity mismatch".into()));
        }
        self.value.map_from_fn(&target.value, |e| {
            let xs = self.decode(e)?;
            let ys: Result<Vec<Elem>> = xs.iter().zip(fs).map(|(x, f)| f.apply(x)).collect();
            target.encode(&ys?)
        })
    }
}

// ---- coinvariants ----

fn close_under_composition(value: &EnrichValue, autos: &[EnrichMap]) -> Result<Vec<EnrichMap>> {
    for a in autos {
        if a.source() != *value || a.target() != *value {
            return Err(Error::InvalidAction("action map is not an endomap of the value".into()));
        }
        if !a.is_iso() {
            return Err(Error::InvalidAction("action map is not an automorphism".into()));
        }
    }
    let id = EnrichMap::identity(value);
    let mut group = vec![id];
    loop {
        let mut added = false;
        let snapshot = group.clone();
        for g in &snapshot {
            for a in autos {
                let h = a.compose(g)?;
                if !group.contains(&h) {
                    group.push(h);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    group.sort();
    Ok(group)
}

/// Coinvariants of a finite group action given by automorphisms: the orbit
/// object and the canonical projection. The listed maps are closed under
/// composition internally.
pub fn quotient_by_action(value: &EnrichValue, autos: &[EnrichMap]) -> Result<(EnrichValue, EnrichMap)> {
    let group = close_under_composition(value, autos)?;
    // orbit representative = least basis element in the orbit
    let mut rep: BTreeMap<Elem, Elem> = BTreeMap::new();
    for e in value.basis() {
        let mut orbit: Vec<Elem> = group.iter().map(|g| g.apply(&e)).collect::<Result<_>>()?;
        orbit.sort();
        rep.insert(e, orbit.remove(0));
    }
    match value {
        EnrichValue::Set(_) => {
            let mut labels: Vec<String> = rep
                .values()
                .map(|e| match e {
                    Elem::Set(l) => l.clone(),
                    Elem::SSet(_) => unreachable!(),
                })
                .collect();
            labels.sort();
            labels.dedup();
            let q = EnrichValue::Set(FinSetObj::new(labels)?);
            let proj = value.map_from_fn(&q, |e| Ok(rep[e].clone()))?;
            Ok((q, proj))
        }
        EnrichValue::SSet(x) => {
            // orbits of nondegenerate simplices; any automorphism maps them
            // bijectively, so representatives inherit dimensions and faces
            let rep_id = |id: &str| -> String {
                match &rep[&Elem::SSet(SimplexRef::nondeg(id))] {
                    Elem::SSet(r) => {
                        debug_assert!(r.is_nondeg());
                        r.id.clone()
                    }
                    Elem::Set(_) => unreachable!(),
                }
            };
            let top = x.max_dim();
            let mut simplices: Vec<Vec<String>> = match top {
                None => Vec::new(),
                Some(t) => vec![Vec::new(); t + 1],
            };
            let mut faces = BTreeMap::new();
            for (d, id) in x.all_nondeg() {
                let r = rep_id(id);
                if r == *id {
                    simplices[d].push(r.clone());
                    if d > 0 {
                        let fs = x
                            .stored_faces(id)
                            .iter()
                            .map(|f| SimplexRef { id: rep_id(&f.id), degens: f.degens.clone() })
                            .collect();
                        faces.insert(r, fs);
                    }
                }
            }
            let q = EnrichValue::SSet(FinSSetObj::new(simplices, faces)?);
            let proj = value.map_from_fn(&q, |e| Ok(rep[e].clone()))?;
            Ok((q, proj))
        }
    }
}

/// Factors an action-invariant map through the quotient projection; errors if
/// the map is not constant on orbits. The factorization is unique because the
/// projection is surjective on bases.
pub fn factor_through_quotient(proj: &EnrichMap, h: &EnrichMap) -> Result<EnrichMap> {
    if proj.source() != h.source() {
        return Err(Error::Invalid("factorization: sources differ".into()));
    }
    let q = proj.target();
    let mut assign: BTreeMap<Elem, Elem> = BTreeMap::new();
    for e in proj.source().basis() {
        let k = proj.apply(&e)?;
        let v = h.apply(&e)?;
        if let Some(prev) = assign.get(&k) {
            if *prev != v {
                return Err(Error::Invalid("map is not invariant under the action".into()));
            }
        }
        assign.insert(k, v);
    }
    q.map_from_fn(&h.target(), |e| {
        assign
            .get(e)
            .cloned()
            .ok_or_else(|| Error::Invalid("projection misses a basis element".into()))
    })
}

// ---- homotopical predicates ----

/// Weak-equivalence oracle. FinSet carries the discrete structure
/// (bijections), so the answer there is always decided.
pub fn is_weak_equivalence(f: &EnrichMap, budget: usize) -> OracleAnswer {
    match f {
        EnrichMap::Set(f) => {
            if f.is_bijective() {
                OracleAnswer { verdict: Verdict::Yes, reason: "bijection".into() }
            } else {
                OracleAnswer { verdict: Verdict::No, reason: "not a bijection".into() }
            }
        }
        EnrichMap::SSet(f) => homotopy::weq_oracle_sset(f, budget),
    }
}

/// Horn-filling check; FinSet maps are not in its domain.
pub fn kan_fibration_check(f: &EnrichMap, dim_bound: usize) -> Result<bool> {
    match f {
        EnrichMap::Set(_) => Err(Error::NotApplicable(
            "kan_fibration_check: FinSet maps are always fibrations in the discrete structure".into(),
        )),
        EnrichMap::SSet(f) => Ok(sset::is_kan_fibration(f, dim_bound)),
    }
}

/// Fibration predicate of the backend structure: everything for FinSet,
/// horn-filling for FinSSet.
pub fn is_fibration(f: &EnrichMap, dim_bound: usize) -> bool {
    match f {
        EnrichMap::Set(_) => true,
        EnrichMap::SSet(f) => sset::is_kan_fibration(f, dim_bound),
    }
}

/// Cofibration predicate: injectivity (levelwise monomorphism for FinSSet).
pub fn is_cofibration(f: &EnrichMap) -> bool {
    f.is_injective()
}

/// Generating cofibrations: for FinSet the two maps detecting bijectivity by
/// right lifting (the empty inclusion and the two-point fold); for FinSSet
/// the boundary inclusions up to the dimension bound.
pub fn generating_cofibrations(backend: Backend, dim_bound: usize) -> Vec<(String, EnrichMap)> {
    match backend {
        Backend::Set => {
            let empty = FinSetObj::empty();
            let pt = FinSetObj::singleton("*");
            let two = FinSetObj::from_labels(&["a", "b"]);
            let incl = FinSetMap::new(empty, pt.clone(), BTreeMap::new()).expect("empty map");
            let fold_on: BTreeMap<String, String> =
                [("a".to_string(), "*".to_string()), ("b".to_string(), "*".to_string())].into();
            let fold = FinSetMap::new(two, pt, fold_on).expect("fold map");
            vec![
                ("empty-to-point".to_string(), EnrichMap::Set(incl)),
                ("two-point-fold".to_string(), EnrichMap::Set(fold)),
            ]
        }
        Backend::SSet => {
            let mut out = Vec::new();
            for n in 0..=dim_bound {
                let b = FinSSetObj::boundary(n);
                let d = FinSSetObj::delta(n);
                let on = b.all_nondeg().map(|(_, id)| (id.clone(), SimplexRef::nondeg(id))).collect();
                let incl = SSetMap::new(b, d, on).expect("boundary inclusion");
                out.push((format!("boundary-{}", n), EnrichMap::SSet(incl)));
            }
            out
        }
    }
}

/// Generating acyclic cofibrations: none for FinSet (acyclic cofibrations
/// are isomorphisms there); horn inclusions for FinSSet.
pub fn generating_acyclic_cofibrations(backend: Backend, dim_bound: usize) -> Vec<(String, EnrichMap)> {
    match backend {
        Backend::Set => Vec::new(),
        Backend::SSet => {
            let mut out = Vec::new();
            for n in 1..=dim_bound {
                for k in 0..=n {
                    let h = FinSSetObj::horn(n, k);
                    let d = FinSSetObj::delta(n);
                    let on = h.all_nondeg().map(|(_, id)| (id.clone(), SimplexRef::nondeg(id))).collect();
                    let incl = SSetMap::new(h, d, on).expect("horn inclusion");
                    out.push((format!("horn-{}-{}", n, k), EnrichMap::SSet(incl)));
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> EnrichValue {
        EnrichValue::Set(FinSetObj::from_labels(labels))
    }

    #[test]
    fn set_tensor_has_pair_labels() {
        let a = set(&["x", "y"]);
        let b = set(&["*"]);
        let t = tensor(&a, &b, 3).unwrap();
        assert_eq!(t.as_set().unwrap().elements(), &["(x,*)".to_string(), "(y,*)".to_string()]);
        let empty = tensor(&EnrichValue::initial(Backend::Set), &set(&["a", "b"]), 3).unwrap();
        assert!(empty.is_initial());
    }

    #[test]
    fn mixed_backends_are_rejected() {
        let a = set(&["x"]);
        let b = EnrichValue::unit(Backend::SSet);
        assert!(matches!(tensor(&a, &b, 3), Err(Error::BackendMismatch { .. })));
    }

    #[test]
    fn multi_tensor_roundtrips_coordinates() {
        let a = set(&["x", "y"]);
        let b = set(&["u"]);
        let c = set(&["p", "q"]);
        let t = MultiTensor::build(&[a, b, c], Backend::Set, 3).unwrap();
        let e = t
            .encode(&[Elem::Set("y".into()), Elem::Set("u".into()), Elem::Set("p".into())])
            .unwrap();
        assert_eq!(e.label(), "((y,u),p)");
        let back = t.decode(&e).unwrap();
        assert_eq!(back[0].label(), "y");
        assert_eq!(back[2].label(), "p");
    }

    #[test]
    fn permuting_factors_is_an_isomorphism_and_composes_contravariantly() {
        let a = set(&["x", "y"]);
        let b = set(&["u", "v"]);
        let c = set(&["m"]);
        let factors = [a, b, c];
        let t = MultiTensor::build(&factors, Backend::Set, 3).unwrap();
        for sigma in Perm::all(3) {
            let sel: Vec<EnrichValue> = (0..3).map(|i| factors[sigma.apply(i)].clone()).collect();
            let u = MultiTensor::build(&sel, Backend::Set, 3).unwrap();
            let iso = t.permute_into(&u, &sigma).unwrap();
            assert!(iso.is_iso());
        }
    }

    #[test]
    fn swap_squares_to_identity() {
        let a = set(&["x", "y"]);
        let b = set(&["u", "v", "w"]);
        let t = TensorPair::build(&a, &b, 3).unwrap();
        let u = TensorPair::build(&b, &a, 3).unwrap();
        let s = t.swap_into(&u).unwrap();
        let s2 = u.swap_into(&t).unwrap();
        assert_eq!(s2.compose(&s).unwrap(), EnrichMap::identity(&t.value));
    }

    #[test]
    fn sigma_two_quotient_of_two_points_is_a_point() {
        let v = set(&["a", "b"]);
        let swap = v
            .map_from_fn(&v, |e| {
                Ok(Elem::Set(if e.label() == "a" { "b".into() } else { "a".into() }))
            })
            .unwrap();
        let (q, proj) = quotient_by_action(&v, &[swap]).unwrap();
        assert_eq!(q.as_set().unwrap().len(), 1);
        assert_eq!(proj.apply(&Elem::Set("b".into())).unwrap().label(), "a");
        // trivial action: identity quotient
        let (q2, _) = quotient_by_action(&v, &[]).unwrap();
        assert_eq!(q2, v);
    }

    #[test]
    fn right_translation_quotient_counts_orbits() {
        // Sigma_2 x K for |K| = 3, acting on itself on the left factor:
        // orbit count is |K|
        let s2 = set(&["e", "t"]);
        let k = set(&["1", "2", "3"]);
        let t = TensorPair::build(&s2, &k, 3).unwrap();
        let act = t
            .value
            .map_from_fn(&t.value, |e| {
                let (a, b) = t.decode(e)?;
                let a2 = Elem::Set(if a.label() == "e" { "t".into() } else { "e".into() });
                t.encode(&a2, &b)
            })
            .unwrap();
        let (q, proj) = quotient_by_action(&t.value, &[act.clone()]).unwrap();
        assert_eq!(q.as_set().unwrap().len(), 3);
        // universal property: any invariant map factors uniquely
        let h = t
            .value
            .map_from_fn(&k, |e| {
                let (_, b) = t.decode(e)?;
                Ok(b)
            })
            .unwrap();
        let med = factor_through_quotient(&proj, &h).unwrap();
        assert_eq!(med.compose(&proj).unwrap(), h);
        // non-invariant map does not factor
        let bad = EnrichMap::identity(&t.value);
        assert!(factor_through_quotient(&proj, &bad).is_err());
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let v = set(&["a", "b"]);
        let collapse = v.map_from_fn(&v, |_| Ok(Elem::Set("a".into()))).unwrap();
        assert!(matches!(
            quotient_by_action(&v, &[collapse]),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn kan_check_rejects_finset() {
        let v = set(&["a"]);
        let id = EnrichMap::identity(&v);
        assert!(matches!(kan_fibration_check(&id, 2), Err(Error::NotApplicable(_))));
        assert!(is_fibration(&id, 2));
    }

    #[test]
    fn simplicial_quotient_of_swapped_copies() {
        // two tagged copies of Delta^1 with the swap automorphism: the
        // quotient is one copy
        let d1 = FinSSetObj::delta(1);
        let two = EnrichValue::coproduct(&[
            ("a".to_string(), &EnrichValue::SSet(d1.clone())),
            ("b".to_string(), &EnrichValue::SSet(d1)),
        ])
        .unwrap();
        let swap = two
            .map_from_fn(&two, |e| {
                let (tag, inner) = split_coproduct_elem(e)?;
                let other = if tag == "a" { "b" } else { "a" };
                Ok(coproduct_elem(other, &inner))
            })
            .unwrap();
        let (q, proj) = quotient_by_action(&two, &[swap]).unwrap();
        let qx = q.as_sset().unwrap();
        assert_eq!(qx.nondeg(0).len(), 2);
        assert_eq!(qx.nondeg(1).len(), 1);
        assert!(!proj.is_iso());
        assert_eq!(
            proj.apply(&Elem::SSet(SimplexRef::nondeg("b:0-1"))).unwrap().label(),
            "a:0-1"
        );
    }

    #[test]
    fn generating_families_have_expected_shapes() {
        let set_cofibs = generating_cofibrations(Backend::Set, 3);
        assert_eq!(set_cofibs.len(), 2);
        assert!(generating_acyclic_cofibrations(Backend::Set, 3).is_empty());
        let sset_cofibs = generating_cofibrations(Backend::SSet, 3);
        assert_eq!(sset_cofibs.len(), 4);
        let horns = generating_acyclic_cofibrations(Backend::SSet, 3);
        assert_eq!(horns.len(), 2 + 3 + 4);
    }
}
