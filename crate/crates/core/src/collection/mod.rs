//! Colored collections and symmetric sequences: entries indexed by
//! signatures, right Σ-actions, symmetrization, generating objects, and the
//! two monoidal products.

pub mod circle;
pub mod hom;
pub mod tensor;

use std::collections::{BTreeMap, BTreeSet};

use crate::enrich::{Backend, Elem, EnrichMap, EnrichValue};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Input colors and output color of an operation slot. Encoded as
/// `"x1,x2;x"` in keys and reports.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Signature {
    pub inputs: Vec<String>,
    pub output: String,
}

/// Color names appear inside structured keys, so a few separators are
/// reserved.
pub fn validate_color(c: &str) -> Result<()> {
    if c.is_empty() || c.contains([',', ';', '|', ':']) {
        return Err(Error::SignatureError(format!("bad color name {:?}", c)));
    }
    Ok(())
}

impl Signature {
    pub fn new(inputs: Vec<String>, output: String) -> Signature {
        Signature { inputs, output }
    }

    pub fn unary(x: &str, y: &str) -> Signature {
        Signature::new(vec![x.to_string()], y.to_string())
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn key(&self) -> String {
        format!("{};{}", self.inputs.join(","), self.output)
    }

    pub fn parse_key(s: &str) -> Result<Signature> {
        let (ins, out) = s
            .rsplit_once(';')
            .ok_or_else(|| Error::SignatureError(format!("missing ';' in signature {:?}", s)))?;
        let inputs: Vec<String> = if ins.is_empty() {
            Vec::new()
        } else {
            ins.split(',').map(|x| x.to_string()).collect()
        };
        if out.is_empty() || inputs.iter().any(|x| x.is_empty()) {
            return Err(Error::SignatureError(format!("empty color in signature {:?}", s)));
        }
        Ok(Signature::new(inputs, out.to_string()))
    }

    /// The signature of `sigma* phi` for `phi` at this signature.
    pub fn act(&self, sigma: &Perm) -> Signature {
        Signature::new(sigma.select(&self.inputs), self.output.clone())
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.key())
    }
}

/// A collection: entries over signatures, stored sparsely (a missing
/// signature is the initial object). `sigma` is the optional right Σ-action
/// table; `points` the optional units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Collection {
    backend: Backend,
    colors: Vec<String>,
    arity_bound: usize,
    entries: BTreeMap<Signature, EnrichValue>,
    sigma: Option<BTreeMap<(Signature, Perm), EnrichMap>>,
    points: Option<BTreeMap<String, EnrichMap>>,
}

impl Collection {
    pub fn new(
        backend: Backend,
        colors: Vec<String>,
        arity_bound: usize,
        entries: BTreeMap<Signature, EnrichValue>,
        sigma: Option<BTreeMap<(Signature, Perm), EnrichMap>>,
        points: Option<BTreeMap<String, EnrichMap>>,
    ) -> Result<Collection> {
        let col = Collection::from_parts_unchecked(backend, colors, arity_bound, entries, sigma, points);
        col.validate()?;
        Ok(col)
    }

    /// Builds without validating; pair with `validate` when reading
    /// untrusted input.
    pub fn from_parts_unchecked(
        backend: Backend,
        colors: Vec<String>,
        arity_bound: usize,
        entries: BTreeMap<Signature, EnrichValue>,
        sigma: Option<BTreeMap<(Signature, Perm), EnrichMap>>,
        points: Option<BTreeMap<String, EnrichMap>>,
    ) -> Collection {
        let entries = entries.into_iter().filter(|(_, v)| !v.is_initial()).collect();
        Collection { backend, colors, arity_bound, entries, sigma, points }
    }

    pub fn validate(&self) -> Result<()> {
        let color_set: BTreeSet<&String> = self.colors.iter().collect();
        if color_set.len() != self.colors.len() {
            return Err(Error::Invalid("duplicate colors".into()));
        }
        for c in &self.colors {
            validate_color(c)?;
        }
        for (sig, v) in &self.entries {
            if sig.arity() > self.arity_bound {
                return Err(Error::BoundExceeded(format!(
                    "signature {} exceeds arity bound {}",
                    sig, self.arity_bound
                )));
            }
            for c in sig.inputs.iter().chain([&sig.output]) {
                if !color_set.contains(c) {
                    return Err(Error::SignatureError(format!("unknown color {:?} in {}", c, sig)));
                }
            }
            if v.backend() != self.backend {
                return Err(Error::BackendMismatch { expected: self.backend, found: v.backend() });
            }
        }
        if let Some(sigma) = &self.sigma {
            // exactly the non-identity permutations of stored signatures
            let mut expected: BTreeSet<(Signature, Perm)> = BTreeSet::new();
            for sig in self.entries.keys() {
                for p in Perm::all(sig.arity()) {
                    if !p.is_identity() {
                        expected.insert((sig.clone(), p));
                    }
                }
            }
            let got: BTreeSet<(Signature, Perm)> = sigma.keys().cloned().collect();
            if got != expected {
                return Err(Error::InvalidAction("sigma table keys do not match stored entries".into()));
            }
            for ((sig, p), m) in sigma {
                if m.source() != *self.entry_or_initial(sig) {
                    return Err(Error::InvalidAction(format!("sigma source mismatch at {} / {:?}", sig, p)));
                }
                if m.target() != *self.entry_or_initial(&sig.act(p)) {
                    return Err(Error::InvalidAction(format!("sigma target mismatch at {} / {:?}", sig, p)));
                }
            }
            // (st)* = t* s* on every stored signature
            for sig in self.entries.keys() {
                let n = sig.arity();
                for s in Perm::all(n) {
                    for t in Perm::all(n) {
                        let st = s.compose(&t); // t first
                        let lhs = self.sigma_map(sig, &st)?;
                        let rhs = self.sigma_map(&sig.act(&s), &t)?.compose(&self.sigma_map(sig, &s)?)?;
                        if lhs != rhs {
                            return Err(Error::InvalidAction(format!(
                                "action law fails at {}: ({:?}{:?})* != {:?}*{:?}*",
                                sig, s, t, t, s
                            )));
                        }
                    }
                }
            }
        }
        if let Some(points) = &self.points {
            for x in &self.colors {
                let m = points
                    .get(x)
                    .ok_or_else(|| Error::Invalid(format!("missing unit point for color {:?}", x)))?;
                if m.source() != EnrichValue::unit(self.backend) {
                    return Err(Error::Invalid(format!("unit point at {:?} must start at the unit", x)));
                }
                let sig = Signature::unary(x, x);
                if m.target() != *self.entry_or_initial(&sig) {
                    return Err(Error::Invalid(format!("unit point at {:?} must land in entry ({})", x, sig)));
                }
            }
            if points.len() != self.colors.len() {
                return Err(Error::Invalid("unit points listed for unknown colors".into()));
            }
        }
        Ok(())
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.entries.keys()
    }

    pub fn entries(&self) -> &BTreeMap<Signature, EnrichValue> {
        &self.entries
    }

    pub fn entry(&self, sig: &Signature) -> Option<&EnrichValue> {
        self.entries.get(sig)
    }

    fn initial_cache(&self) -> EnrichValue {
        EnrichValue::initial(self.backend)
    }

    pub fn entry_or_initial(&self, sig: &Signature) -> std::borrow::Cow<'_, EnrichValue> {
        match self.entries.get(sig) {
            Some(v) => std::borrow::Cow::Borrowed(v),
            None => std::borrow::Cow::Owned(self.initial_cache()),
        }
    }

    pub fn has_sigma(&self) -> bool {
        self.sigma.is_some()
    }

    pub fn is_pointed(&self) -> bool {
        self.points.is_some()
    }

    pub fn point(&self, color: &str) -> Result<&EnrichMap> {
        self.points
            .as_ref()
            .and_then(|p| p.get(color))
            .ok_or_else(|| Error::Invalid(format!("no unit point for color {:?}", color)))
    }

    pub fn sigma_table(&self) -> Option<&BTreeMap<(Signature, Perm), EnrichMap>> {
        self.sigma.as_ref()
    }

    /// The action map `sigma*: entry(sig) -> entry(sig.act(sigma))`.
    pub fn sigma_map(&self, sig: &Signature, p: &Perm) -> Result<EnrichMap> {
        if p.degree() != sig.arity() {
            return Err(Error::InvalidAction(format!("degree {} at arity-{} signature", p.degree(), sig.arity())));
        }
        if p.is_identity() {
            return Ok(EnrichMap::identity(&self.entry_or_initial(sig)));
        }
        match &self.sigma {
            None => Err(Error::InvalidAction("collection carries no sigma action".into())),
            Some(table) => table
                .get(&(sig.clone(), p.clone()))
                .cloned()
                .ok_or_else(|| Error::InvalidAction(format!("no sigma entry at {} / {:?}", sig, p))),
        }
    }

    pub fn sigma_apply(&self, sig: &Signature, p: &Perm, e: &Elem) -> Result<Elem> {
        self.sigma_map(sig, p)?.apply(e)
    }

    /// Builds the action table from a function on (signature, permutation).
    pub fn install_action(
        mut self,
        f: impl Fn(&Collection, &Signature, &Perm) -> Result<EnrichMap>,
    ) -> Result<Collection> {
        let mut table = BTreeMap::new();
        let sigs: Vec<Signature> = self.entries.keys().cloned().collect();
        for sig in &sigs {
            for p in Perm::all(sig.arity()) {
                if !p.is_identity() {
                    table.insert((sig.clone(), p.clone()), f(&self, sig, &p)?);
                }
            }
        }
        self.sigma = Some(table);
        self.validate()?;
        Ok(self)
    }

    pub fn strip_action(mut self) -> Collection {
        self.sigma = None;
        self
    }

    pub fn with_points(mut self, points: BTreeMap<String, EnrichMap>) -> Result<Collection> {
        self.points = Some(points);
        self.validate()?;
        Ok(self)
    }
}

/// A morphism of collections: a color map plus per-signature maps of
/// entries. When both sides carry actions or points, compatibility is part
/// of validity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollectionMap {
    pub source: Collection,
    pub target: Collection,
    pub on_colors: BTreeMap<String, String>,
    pub on_entries: BTreeMap<Signature, EnrichMap>,
}

impl CollectionMap {
    pub fn new(
        source: Collection,
        target: Collection,
        on_colors: BTreeMap<String, String>,
        on_entries: BTreeMap<Signature, EnrichMap>,
    ) -> Result<CollectionMap> {
        let m = CollectionMap { source, target, on_colors, on_entries };
        m.validate()?;
        Ok(m)
    }

    pub fn map_signature(&self, sig: &Signature) -> Result<Signature> {
        let mut inputs = Vec::with_capacity(sig.arity());
        for x in &sig.inputs {
            inputs.push(
                self.on_colors
                    .get(x)
                    .cloned()
                    .ok_or_else(|| Error::SignatureError(format!("color {:?} has no image", x)))?,
            );
        }
        let output = self
            .on_colors
            .get(&sig.output)
            .cloned()
            .ok_or_else(|| Error::SignatureError(format!("color {:?} has no image", sig.output)))?;
        Ok(Signature::new(inputs, output))
    }

    pub fn validate(&self) -> Result<()> {
        for c in self.source.colors() {
            let img = self
                .on_colors
                .get(c)
                .ok_or_else(|| Error::Invalid(format!("color {:?} has no image", c)))?;
            if !self.target.colors().contains(img) {
                return Err(Error::Invalid(format!("color image {:?} not in target", img)));
            }
        }
        for (sig, v) in self.source.entries() {
            let m = self
                .on_entries
                .get(sig)
                .ok_or_else(|| Error::Invalid(format!("no entry map at {}", sig)))?;
            if m.source() != *v {
                return Err(Error::Invalid(format!("entry map source mismatch at {}", sig)));
            }
            let dsig = self.map_signature(sig)?;
            if m.target() != *self.target.entry_or_initial(&dsig) {
                return Err(Error::Invalid(format!("entry map target mismatch at {} -> {}", sig, dsig)));
            }
        }
        if self.source.has_sigma() && self.target.has_sigma() {
            for sig in self.source.signatures() {
                for p in Perm::all(sig.arity()) {
                    let lhs = self
                        .on_entries
                        .get(&sig.act(&p))
                        .ok_or_else(|| Error::Invalid(format!("no entry map at {}", sig.act(&p))))?
                        .compose(&self.source.sigma_map(sig, &p)?)?;
                    let dsig = self.map_signature(sig)?;
                    let rhs = self
                        .target
                        .sigma_map(&dsig, &p)?
                        .compose(self.on_entries.get(sig).expect("checked above"))?;
                    if lhs != rhs {
                        return Err(Error::Invalid(format!("map is not equivariant at {} / {:?}", sig, p)));
                    }
                }
            }
        }
        if self.source.is_pointed() && self.target.is_pointed() {
            for x in self.source.colors() {
                let sig = Signature::unary(x, x);
                let lhs = match self.on_entries.get(&sig) {
                    Some(m) => m.compose(self.source.point(x)?)?,
                    None => return Err(Error::Invalid(format!("pointed entry ({}) missing", sig))),
                };
                let dx = &self.on_colors[x];
                if lhs != *self.target.point(dx)? {
                    return Err(Error::Invalid(format!("unit point at {:?} not preserved", x)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(col: &Collection) -> CollectionMap {
        let on_colors = col.colors().iter().map(|c| (c.clone(), c.clone())).collect();
        let on_entries = col
            .entries()
            .iter()
            .map(|(sig, v)| (sig.clone(), EnrichMap::identity(v)))
            .collect();
        CollectionMap { source: col.clone(), target: col.clone(), on_colors, on_entries }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &CollectionMap) -> Result<CollectionMap> {
        if other.target != self.source {
            return Err(Error::Invalid("collection map composition mismatch".into()));
        }
        let on_colors = other
            .on_colors
            .iter()
            .map(|(c, v)| (c.clone(), self.on_colors[v].clone()))
            .collect();
        let mut on_entries = BTreeMap::new();
        for (sig, m) in &other.on_entries {
            let mid = other.map_signature(sig)?;
            let outer = match self.on_entries.get(&mid) {
                Some(o) => o.clone(),
                // the middle entry may be initial; then so is the source
                None => EnrichMap::identity(&self.target.entry_or_initial(&self.map_signature(&mid)?)),
            };
            on_entries.insert(sig.clone(), outer.compose(m)?);
        }
        Ok(CollectionMap { source: other.source.clone(), target: self.target.clone(), on_colors, on_entries })
    }

    pub fn is_iso(&self) -> bool {
        let images: BTreeSet<&String> = self.on_colors.values().collect();
        images.len() == self.source.colors().len()
            && images.len() == self.target.colors().len()
            && self.on_entries.values().all(|m| m.is_iso())
            && self.source.entries().len() == self.target.entries().len()
    }
}

/// A symmetric sequence: a one-colored collection with action, entries
/// indexed by arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricSequence {
    pub col: Collection,
}

pub const STAR: &str = "*";

fn star_sig(n: usize) -> Signature {
    Signature::new(vec![STAR.to_string(); n], STAR.to_string())
}

impl SymmetricSequence {
    pub fn new(
        backend: Backend,
        arity_bound: usize,
        entries: BTreeMap<usize, EnrichValue>,
        sigma: BTreeMap<(usize, Perm), EnrichMap>,
    ) -> Result<SymmetricSequence> {
        let entries: BTreeMap<Signature, EnrichValue> =
            entries.into_iter().map(|(n, v)| (star_sig(n), v)).collect();
        let sigma = sigma
            .into_iter()
            .map(|((n, p), m)| ((star_sig(n), p), m))
            .collect();
        let col = Collection::new(backend, vec![STAR.to_string()], arity_bound, entries, Some(sigma), None)?;
        Ok(SymmetricSequence { col })
    }

    pub fn from_collection(col: Collection) -> Result<SymmetricSequence> {
        if col.colors() != [STAR.to_string()] {
            return Err(Error::Invalid("symmetric sequence must have the single color *".into()));
        }
        if !col.has_sigma() {
            return Err(Error::InvalidAction("symmetric sequence needs an action".into()));
        }
        Ok(SymmetricSequence { col })
    }

    pub fn backend(&self) -> Backend {
        self.col.backend()
    }

    pub fn arity_bound(&self) -> usize {
        self.col.arity_bound()
    }

    pub fn entry(&self, n: usize) -> Option<&EnrichValue> {
        self.col.entry(&star_sig(n))
    }

    pub fn entry_or_initial(&self, n: usize) -> EnrichValue {
        self.col.entry_or_initial(&star_sig(n)).into_owned()
    }

    pub fn arities(&self) -> Vec<usize> {
        self.col.signatures().map(|s| s.arity()).collect()
    }

    pub fn sigma_map(&self, n: usize, p: &Perm) -> Result<EnrichMap> {
        self.col.sigma_map(&star_sig(n), p)
    }

    pub fn sigma_apply(&self, n: usize, p: &Perm, e: &Elem) -> Result<Elem> {
        self.col.sigma_apply(&star_sig(n), p, e)
    }

    pub fn empty(backend: Backend, arity_bound: usize) -> SymmetricSequence {
        let col = Collection::from_parts_unchecked(
            backend,
            vec![STAR.to_string()],
            arity_bound,
            BTreeMap::new(),
            Some(BTreeMap::new()),
            None,
        );
        SymmetricSequence { col }
    }

    /// The tensor unit: the unit object concentrated in arity 0.
    pub fn unit_tensor(backend: Backend, arity_bound: usize) -> SymmetricSequence {
        SymmetricSequence::concentrated_trivial(backend, arity_bound, 0, EnrichValue::unit(backend))
            .expect("unit sequence is valid")
    }

    /// The circle unit J: the unit object concentrated in arity 1.
    pub fn circle_unit(backend: Backend, arity_bound: usize) -> SymmetricSequence {
        SymmetricSequence::concentrated_trivial(backend, arity_bound, 1, EnrichValue::unit(backend))
            .expect("circle unit is valid")
    }

    /// One entry at the given arity, all permutations acting trivially.
    pub fn concentrated_trivial(
        backend: Backend,
        arity_bound: usize,
        n: usize,
        value: EnrichValue,
    ) -> Result<SymmetricSequence> {
        let mut entries = BTreeMap::new();
        let mut sigma = BTreeMap::new();
        if !value.is_initial() {
            for p in Perm::all(n) {
                if !p.is_identity() {
                    sigma.insert((n, p), EnrichMap::identity(&value));
                }
            }
            entries.insert(n, value);
        }
        SymmetricSequence::new(backend, arity_bound, entries, sigma)
    }

    /// The generating sequence G_n: Σ_n-many copies of the unit at arity n,
    /// permuted by right translation.
    pub fn generating(backend: Backend, arity_bound: usize, n: usize) -> Result<SymmetricSequence> {
        if n > arity_bound {
            return Err(Error::BoundExceeded(format!("arity {} above bound {}", n, arity_bound)));
        }
        let unit = EnrichValue::unit(backend);
        let parts: Vec<(String, &EnrichValue)> =
            Perm::all(n).iter().map(|p| (perm_tag(p), &unit)).collect::<Vec<_>>();
        let value = EnrichValue::coproduct(&parts)?;
        let mut entries = BTreeMap::new();
        entries.insert(n, value.clone());
        let mut sigma = BTreeMap::new();
        for p in Perm::all(n) {
            if p.is_identity() {
                continue;
            }
            let m = value.map_from_fn(&value, |e| {
                let (tag, inner) = crate::enrich::split_coproduct_elem(e)?;
                let tau = parse_perm_tag(&tag)?;
                Ok(crate::enrich::coproduct_elem(&perm_tag(&tau.compose(&p)), &inner))
            })?;
            sigma.insert((n, p), m);
        }
        SymmetricSequence::new(backend, arity_bound, entries, sigma)
    }
}

/// Deterministic tag for a permutation, usable inside coproduct tags.
pub fn perm_tag(p: &Perm) -> String {
    let digits: Vec<String> = p.one_line().iter().map(|i| i.to_string()).collect();
    format!("p{}", digits.join("-"))
}

pub fn parse_perm_tag(tag: &str) -> Result<Perm> {
    let body = tag
        .strip_prefix('p')
        .ok_or_else(|| Error::Parse(format!("bad permutation tag {:?}", tag)))?;
    if body.is_empty() {
        return Ok(Perm::identity(0));
    }
    let mut xs = Vec::new();
    for part in body.split('-') {
        xs.push(
            part.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad permutation tag {:?}", tag)))?,
        );
    }
    Perm::from_one_line(&xs).ok_or_else(|| Error::Parse(format!("tag {:?} is not a permutation", tag)))
}

/// Symmetrization: the free Σ-collection on a plain collection, with the
/// adjunction unit K -> U(S̄K). Entry at (y_1..y_n; y) is the tagged sum over
/// sigma of K at (y_{sigma^{-1}(1)}..y_{sigma^{-1}(n)}; y); the action right-
/// translates the tag.
pub fn symmetrize(k: &Collection) -> Result<(Collection, CollectionMap)> {
    let mut entries: BTreeMap<Signature, EnrichValue> = BTreeMap::new();
    let mut parts_of: BTreeMap<Signature, Vec<(Perm, Signature)>> = BTreeMap::new();
    // collect the component list of every symmetrized signature
    for sig in k.signatures() {
        let n = sig.arity();
        for p in Perm::all(n) {
            // component p of signature sig.act(p) is K(sig)
            let target = sig.act(&p);
            parts_of.entry(target).or_default().push((p.clone(), sig.clone()));
        }
    }
    for (sig, comps) in &mut parts_of {
        comps.sort();
        let parts: Vec<(String, &EnrichValue)> = comps
            .iter()
            .map(|(p, src)| (perm_tag(p), k.entry(src).expect("component entry exists")))
            .collect();
        entries.insert(sig.clone(), EnrichValue::coproduct(&parts)?);
    }
    let base = Collection::from_parts_unchecked(
        k.backend(),
        k.colors().to_vec(),
        k.arity_bound(),
        entries,
        None,
        None,
    );
    let symmetrized = base.install_action(|col, sig, rho| {
        let source = col.entry_or_initial(sig).into_owned();
        let target = col.entry_or_initial(&sig.act(rho)).into_owned();
        source.map_from_fn(&target, |e| {
            let (tag, inner) = crate::enrich::split_coproduct_elem(e)?;
            let p = parse_perm_tag(&tag)?;
            Ok(crate::enrich::coproduct_elem(&perm_tag(&p.compose(rho)), &inner))
        })
    })?;
    // adjunction unit: include K(sig) as the identity-tagged component
    let on_colors = k.colors().iter().map(|c| (c.clone(), c.clone())).collect();
    let mut on_entries = BTreeMap::new();
    for (sig, v) in k.entries() {
        let target = symmetrized.entry_or_initial(sig).into_owned();
        let id_tag = perm_tag(&Perm::identity(sig.arity()));
        let m = v.map_from_fn(&target, |e| Ok(crate::enrich::coproduct_elem(&id_tag, e)))?;
        on_entries.insert(sig.clone(), m);
    }
    let unit = CollectionMap {
        source: k.clone().strip_action(),
        target: symmetrized.clone().strip_action(),
        on_colors,
        on_entries,
    };
    unit.validate()?;
    Ok((symmetrized, unit))
}

/// The generating collection G_n[Y]: colors 0..n, the single entry Y at
/// signature (1,..,n;0). Unsymmetrized; apply `symmetrize` on demand.
pub fn make_generating(n: usize, y: &EnrichValue) -> Result<Collection> {
    let colors: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let sig = Signature::new((1..=n).map(|i| i.to_string()).collect(), "0".to_string());
    let mut entries = BTreeMap::new();
    entries.insert(sig, y.clone());
    Collection::new(y.backend(), colors, n.max(1), entries, None, None)
}

/// Stabilizer presentation of the groupoid of weakly increasing signatures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignatureGroupoid {
    pub colors: Vec<String>,
    pub arity_bound: usize,
    pub stabilizers: BTreeMap<Signature, Vec<Perm>>,
}

pub fn signature_groupoid(colors: &[String], arity_bound: usize) -> Result<SignatureGroupoid> {
    if colors.is_empty() {
        return Err(Error::Invalid("signature groupoid needs a color".into()));
    }
    for c in colors {
        validate_color(c)?;
    }
    // weakly increasing tuples in the given color order
    let index_of: BTreeMap<&String, usize> = colors.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut stabilizers = BTreeMap::new();
    let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
    for n in 0..=arity_bound {
        for t in &tuples {
            for out in colors {
                let sig = Signature::new(t.clone(), out.clone());
                let stab: Vec<Perm> = Perm::all(n)
                    .into_iter()
                    .filter(|p| p.select(&sig.inputs) == sig.inputs)
                    .collect();
                stabilizers.insert(sig, stab);
            }
        }
        // extend tuples by one weakly larger color
        let mut next = Vec::new();
        for t in &tuples {
            let min = t.last().map_or(0, |c| index_of[c]);
            for c in &colors[min..] {
                let mut u = t.clone();
                u.push(c.clone());
                next.push(u);
            }
        }
        tuples = next;
    }
    Ok(SignatureGroupoid { colors: colors.to_vec(), arity_bound, stabilizers })
}

/// Orbit count of the basis under the listed automorphisms, by union-find
/// over generator moves. Independent of the quotient construction.
pub fn orbit_count_oracle(value: &EnrichValue, autos: &[EnrichMap]) -> Result<usize> {
    let basis = value.basis();
    let idx: BTreeMap<&Elem, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..basis.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for g in autos {
        for (i, e) in basis.iter().enumerate() {
            let img = g.apply(e)?;
            let j = *idx
                .get(&img)
                .ok_or_else(|| Error::InvalidAction("generator leaves the basis".into()))?;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..basis.len() {
        let r = find(&mut parent, i);
        roots.insert(r);
    }
    Ok(roots.len())
}

// ---- equivariant map search (FinSet) ----

fn require_set(seq: &SymmetricSequence) -> Result<()> {
    if seq.backend() != Backend::Set {
        return Err(Error::NotImplemented(
            "equivariant map enumeration is FinSet-only".into(),
        ));
    }
    Ok(())
}

fn orbits_at(seq: &SymmetricSequence, n: usize) -> Result<Vec<Vec<Elem>>> {
    let value = seq.entry_or_initial(n);
    let basis = value.basis();
    let mut seen: BTreeSet<Elem> = BTreeSet::new();
    let mut out = Vec::new();
    for e in &basis {
        if seen.contains(e) {
            continue;
        }
        let mut orbit: BTreeSet<Elem> = BTreeSet::new();
        for p in Perm::all(n) {
            orbit.insert(seq.sigma_apply(n, &p, e)?);
        }
        for o in &orbit {
            seen.insert(o.clone());
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

/// All Σ_n-equivariant maps `a(n) -> b(n)`, as assignments on basis elements.
/// Enumerates images of orbit representatives and propagates.
pub fn equivariant_maps_at(
    a: &SymmetricSequence,
    b: &SymmetricSequence,
    n: usize,
) -> Result<Vec<BTreeMap<Elem, Elem>>> {
    require_set(a)?;
    require_set(b)?;
    let perms = Perm::all(n);
    let target = b.entry_or_initial(n);
    let tbasis = target.basis();
    let orbits = orbits_at(a, n)?;
    let mut assignments: Vec<BTreeMap<Elem, Elem>> = vec![BTreeMap::new()];
    for orbit in &orbits {
        let rep = &orbit[0];
        let mut extended = Vec::new();
        'cand: for y in &tbasis {
            // propagate f(p* rep) = p* y and check consistency
            let mut add: BTreeMap<Elem, Elem> = BTreeMap::new();
            for p in &perms {
                let from = a.sigma_apply(n, p, rep)?;
                let to = b.sigma_apply(n, p, y)?;
                if let Some(prev) = add.get(&from) {
                    if *prev != to {
                        continue 'cand;
                    }
                }
                add.insert(from, to);
            }
            for base in &assignments {
                let mut next = base.clone();
                next.extend(add.clone());
                extended.push(next);
            }
        }
        assignments = extended;
    }
    Ok(assignments)
}

/// Checks that a family of per-arity maps a(n) -> b(n) intertwines the two
/// actions. Works over both backends.
pub fn is_equivariant_family(
    a: &SymmetricSequence,
    b: &SymmetricSequence,
    maps: &BTreeMap<usize, EnrichMap>,
) -> Result<bool> {
    for (&n, m) in maps {
        if m.source() != a.entry_or_initial(n) || m.target() != b.entry_or_initial(n) {
            return Ok(false);
        }
        for p in Perm::all(n) {
            let lhs = m.compose(&a.sigma_map(n, &p)?)?;
            let rhs = b.sigma_map(n, &p)?.compose(m)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for arity-wise Σ-equivariant bijections between two sequences;
/// returns per-arity assignments, or None when some arity admits none.
pub fn equivariant_iso_search(
    a: &SymmetricSequence,
    b: &SymmetricSequence,
) -> Result<Option<BTreeMap<usize, BTreeMap<Elem, Elem>>>> {
    require_set(a)?;
    require_set(b)?;
    let mut arities: BTreeSet<usize> = a.arities().into_iter().collect();
    arities.extend(b.arities());
    let mut out = BTreeMap::new();
    for n in arities {
        let asize = a.entry_or_initial(n).basis().len();
        let bsize = b.entry_or_initial(n).basis().len();
        if asize != bsize {
            return Ok(None);
        }
        let found = equivariant_maps_at(a, b, n)?
            .into_iter()
            .find(|f| {
                let images: BTreeSet<&Elem> = f.values().collect();
                images.len() == bsize
            });
        match found {
            None => return Ok(None),
            Some(f) => {
                out.insert(n, f);
            }
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::finset::FinSetObj;

    fn set(labels: &[&str]) -> EnrichValue {
        EnrichValue::Set(FinSetObj::from_labels(labels))
    }

    #[test]
    fn signature_keys_roundtrip() {
        let sig = Signature::new(vec!["a".into(), "b".into()], "c".into());
        assert_eq!(sig.key(), "a,b;c");
        assert_eq!(Signature::parse_key("a,b;c").unwrap(), sig);
        let nullary = Signature::new(vec![], "c".into());
        assert_eq!(nullary.key(), ";c");
        assert_eq!(Signature::parse_key(";c").unwrap(), nullary);
        assert!(Signature::parse_key("a,b").is_err());
    }

    #[test]
    fn signature_act_uses_the_select_rule() {
        let sig = Signature::new(vec!["a".into(), "b".into(), "c".into()], "z".into());
        let p = Perm::new(vec![2, 0, 1]).unwrap();
        assert_eq!(sig.act(&p).inputs, vec!["c".to_string(), "a".into(), "b".into()]);
    }

    #[test]
    fn symmetrize_one_binary_generator_gives_free_action() {
        // one color, single binary generator: arity-2 entry of size 2 with
        // free action
        let mut entries = BTreeMap::new();
        entries.insert(star_sig(2), set(&["m"]));
        let k = Collection::new(Backend::Set, vec![STAR.into()], 4, entries, None, None).unwrap();
        let (sk, unit) = symmetrize(&k).unwrap();
        let e = sk.entry(&star_sig(2)).unwrap();
        assert_eq!(e.basis().len(), 2);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let m = sk.sigma_map(&star_sig(2), &swap).unwrap();
        for x in e.basis() {
            assert_ne!(m.apply(&x).unwrap(), x, "action must be free");
        }
        // unit embeds at the identity tag
        let img = unit.on_entries[&star_sig(2)].apply(&Elem::Set("m".into())).unwrap();
        assert_eq!(img.label(), "p1-2:m");
    }

    #[test]
    fn symmetrize_unary_only_is_isomorphic_to_input() {
        let mut entries = BTreeMap::new();
        entries.insert(star_sig(1), set(&["f", "g"]));
        let k = Collection::new(Backend::Set, vec![STAR.into()], 4, entries, None, None).unwrap();
        let (sk, unit) = symmetrize(&k).unwrap();
        assert_eq!(sk.entry(&star_sig(1)).unwrap().basis().len(), 2);
        assert!(unit.on_entries[&star_sig(1)].is_iso());
    }

    #[test]
    fn symmetrize_colored_generator_spreads_signatures() {
        // binary generator at (a,b;c): symmetrization also populates (b,a;c)
        let sig = Signature::new(vec!["a".into(), "b".into()], "c".into());
        let mut entries = BTreeMap::new();
        entries.insert(sig.clone(), set(&["m"]));
        let k = Collection::new(
            Backend::Set,
            vec!["a".into(), "b".into(), "c".into()],
            4,
            entries,
            None,
            None,
        )
        .unwrap();
        let (sk, _) = symmetrize(&k).unwrap();
        let swapped = Signature::new(vec!["b".into(), "a".into()], "c".into());
        assert_eq!(sk.entry(&sig).unwrap().basis().len(), 1);
        assert_eq!(sk.entry(&swapped).unwrap().basis().len(), 1);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let m = sk.sigma_map(&sig, &swap).unwrap();
        assert_eq!(m.target(), *sk.entry(&swapped).unwrap());
    }

    #[test]
    fn generating_sequence_is_the_translation_representation() {
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        let e = g2.entry(2).unwrap();
        assert_eq!(e.basis().len(), 2);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let m = g2.sigma_map(2, &swap).unwrap();
        let x = Elem::Set("p1-2:*".into());
        assert_eq!(m.apply(&x).unwrap().label(), "p2-1:*");
    }

    #[test]
    fn make_generating_places_one_entry() {
        let g = make_generating(2, &set(&["a"])).unwrap();
        assert_eq!(g.colors(), &["0", "1", "2"]);
        let sig = Signature::new(vec!["1".into(), "2".into()], "0".into());
        assert_eq!(g.entry(&sig).unwrap().basis().len(), 1);
        assert_eq!(g.entries().len(), 1);
        let g0 = make_generating(0, &set(&["a", "b"])).unwrap();
        assert_eq!(g0.entry(&Signature::new(vec![], "0".into())).unwrap().basis().len(), 2);
    }

    #[test]
    fn stabilizers_of_weakly_increasing_tuples() {
        let gpd = signature_groupoid(&["a".to_string(), "b".to_string()], 3).unwrap();
        let t = |ins: &[&str]| Signature::new(ins.iter().map(|s| s.to_string()).collect(), "a".into());
        assert_eq!(gpd.stabilizers[&t(&["a", "b"])].len(), 1);
        assert_eq!(gpd.stabilizers[&t(&["a", "a", "b"])].len(), 2);
        assert_eq!(gpd.stabilizers[&t(&["a", "a", "a"])].len(), 6);
        // closure under composition and inverse
        for (sig, stab) in &gpd.stabilizers {
            for p in stab {
                assert!(stab.contains(&p.inverse()), "inverse closure at {}", sig);
                for q in stab {
                    assert!(stab.contains(&p.compose(q)), "composition closure at {}", sig);
                }
            }
        }
        // no decreasing tuples are listed
        assert!(!gpd.stabilizers.contains_key(&t(&["b", "a"])));
    }

    #[test]
    fn orbit_oracle_matches_quotient() {
        let v = set(&["a", "b", "c", "d"]);
        let rot = v
            .map_from_fn(&v, |e| {
                let next = match e.label().as_str() {
                    "a" => "b",
                    "b" => "a",
                    "c" => "d",
                    _ => "c",
                };
                Ok(Elem::Set(next.into()))
            })
            .unwrap();
        assert_eq!(orbit_count_oracle(&v, &[rot.clone()]).unwrap(), 2);
        let (q, _) = crate::enrich::quotient_by_action(&v, &[rot]).unwrap();
        assert_eq!(q.basis().len(), 2);
    }

    #[test]
    fn equivariant_map_enumeration_respects_stabilizers() {
        // G_2 -> G_2: equivariant maps are right translations, so exactly 2
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        let maps = equivariant_maps_at(&g2, &g2, 2).unwrap();
        assert_eq!(maps.len(), 2);
        // trivial 2-element action target: both constants, 2 maps
        let t = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["x", "y"])).unwrap();
        let maps = equivariant_maps_at(&g2, &t, 2).unwrap();
        assert_eq!(maps.len(), 2);
        // and back: from trivial to free, images must be fixed points: none
        let maps = equivariant_maps_at(&t, &g2, 2).unwrap();
        assert_eq!(maps.len(), 0);
        let iso = equivariant_iso_search(&g2, &g2).unwrap();
        assert!(iso.is_some());
        let no_iso = equivariant_iso_search(&g2, &t).unwrap();
        assert!(no_iso.is_none());
    }
}
