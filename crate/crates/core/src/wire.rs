//! JSON interchange for every domain type. Signatures travel as `"x1,x2;x"`
//! keys, composition keys as `"sig|i|sig"`, permutations as 1-based one-line
//! arrays, trees as nested `[label, [children...], perm]` arrays. Encoding
//! then decoding returns an equal value; decoding validates eagerly, so a
//! malformed file never produces a live structure.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::collection::{Collection, CollectionMap, Signature, SymmetricSequence};
use crate::enrich::finset::{FinSetMap, FinSetObj};
use crate::enrich::sset::{FinSSetObj, SSetMap, SimplexRef};
use crate::enrich::{Backend, Elem, EnrichMap, EnrichValue, TensorPair};
use crate::error::{Error, Result};
use crate::multicat::free::PresentedMulticategory;
use crate::multicat::tree::{Tree, TreeTerm};
use crate::multicat::{comp_key_string, parse_comp_key, splice_signature, Multicategory, Multifunctor};
use crate::perm::Perm;

fn parse_err(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {}", what, detail))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(what, "expected a JSON object"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, "expected a JSON array"))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(what, "expected a string"))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(what, "expected a nonnegative integer"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| parse_err(what, format!("missing field {:?}", key)))
}

pub fn backend_from_json(v: &Value) -> Result<Backend> {
    match as_str(v, "backend")? {
        "set" => Ok(Backend::Set),
        "sset" => Ok(Backend::SSet),
        other => Err(parse_err("backend", format!("unknown backend {:?}", other))),
    }
}

/// The declared backend of a value/collection/multicategory JSON object,
/// falling back to the given default when the field is absent.
fn backend_or(m: &Map<String, Value>, fallback: Backend) -> Result<Backend> {
    match m.get("backend") {
        Some(v) => backend_from_json(v),
        None => Ok(fallback),
    }
}

// ---- permutations ----

pub fn perm_to_json(p: &Perm) -> Value {
    Value::Array(p.one_line().iter().map(|&i| Value::from(i as u64)).collect())
}

pub fn perm_from_json(v: &Value) -> Result<Perm> {
    let xs = as_array(v, "permutation")?
        .iter()
        .map(|x| as_usize(x, "permutation entry"))
        .collect::<Result<Vec<usize>>>()?;
    Perm::from_one_line(&xs)
        .ok_or_else(|| parse_err("permutation", format!("{:?} is not one-line form", xs)))
}

/// Key form used in sigma tables: the 1-based one-line word joined by
/// commas, e.g. `"2,1"`.
fn perm_key(p: &Perm) -> String {
    p.one_line().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_perm_key(s: &str) -> Result<Perm> {
    if s.is_empty() {
        return Perm::from_one_line(&[]).ok_or_else(|| parse_err("permutation", "empty"));
    }
    let xs = s
        .split(',')
        .map(|t| t.parse::<usize>().map_err(|_| parse_err("permutation key", s)))
        .collect::<Result<Vec<usize>>>()?;
    Perm::from_one_line(&xs).ok_or_else(|| parse_err("permutation key", s))
}

// ---- backend values and elements ----

pub fn value_to_json(v: &EnrichValue) -> Value {
    match v {
        EnrichValue::Set(s) => {
            let mut m = Map::new();
            m.insert("set".into(), Value::Array(s.elements().iter().map(|e| Value::from(e.as_str())).collect()));
            Value::Object(m)
        }
        EnrichValue::SSet(x) => {
            let mut simplices = Map::new();
            if let Some(top) = x.max_dim() {
                for d in 0..=top {
                    simplices.insert(
                        d.to_string(),
                        Value::Array(x.nondeg(d).iter().map(|id| Value::from(id.as_str())).collect()),
                    );
                }
            }
            let mut faces = Map::new();
            if let Some(top) = x.max_dim() {
                for d in 1..=top {
                    for id in x.nondeg(d) {
                        let refs: Vec<Value> = x
                            .stored_faces(id)
                            .iter()
                            .map(|r| serde_json::to_value(r).expect("simplex ref serializes"))
                            .collect();
                        faces.insert(id.clone(), Value::Array(refs));
                    }
                }
            }
            let mut m = Map::new();
            m.insert("simplices".into(), Value::Object(simplices));
            m.insert("faces".into(), Value::Object(faces));
            Value::Object(m)
        }
    }
}

pub fn value_from_json(v: &Value) -> Result<EnrichValue> {
    let m = as_object(v, "value")?;
    if let Some(set) = m.get("set") {
        let elements = as_array(set, "set")?
            .iter()
            .map(|e| as_str(e, "set element").map(str::to_string))
            .collect::<Result<Vec<String>>>()?;
        return Ok(EnrichValue::Set(FinSetObj::new(elements)?));
    }
    if let Some(simp) = m.get("simplices") {
        let by_dim = as_object(simp, "simplices")?;
        let mut levels: Vec<Vec<String>> = Vec::new();
        for (dk, ids) in by_dim {
            let d: usize = dk.parse().map_err(|_| parse_err("simplices", format!("bad dimension key {:?}", dk)))?;
            if levels.len() <= d {
                levels.resize(d + 1, Vec::new());
            }
            levels[d] = as_array(ids, "simplex list")?
                .iter()
                .map(|e| as_str(e, "simplex id").map(str::to_string))
                .collect::<Result<Vec<String>>>()?;
        }
        let mut faces = BTreeMap::new();
        if let Some(fv) = m.get("faces") {
            for (id, refs) in as_object(fv, "faces")? {
                let parsed = as_array(refs, "face list")?
                    .iter()
                    .map(simplex_ref_from_json)
                    .collect::<Result<Vec<SimplexRef>>>()?;
                faces.insert(id.clone(), parsed);
            }
        }
        return Ok(EnrichValue::SSet(FinSSetObj::new(levels, faces)?));
    }
    Err(parse_err("value", "expected a \"set\" or \"simplices\" field"))
}

fn simplex_ref_from_json(v: &Value) -> Result<SimplexRef> {
    serde_json::from_value(v.clone()).map_err(|e| parse_err("simplex reference", e))
}

pub fn elem_to_json(e: &Elem) -> Value {
    match e {
        Elem::Set(l) => Value::from(l.as_str()),
        Elem::SSet(r) => serde_json::to_value(r).expect("simplex ref serializes"),
    }
}

pub fn elem_from_json(v: &Value) -> Result<Elem> {
    match v {
        Value::String(l) => Ok(Elem::Set(l.clone())),
        Value::Object(_) => Ok(Elem::SSet(simplex_ref_from_json(v)?)),
        _ => Err(parse_err("element", "expected a label or a simplex reference")),
    }
}

// ---- maps ----

/// Only the graph is written; endpoints are reconstructed from context.
pub fn map_to_json(m: &EnrichMap) -> Value {
    let mut on = Map::new();
    match m {
        EnrichMap::Set(f) => {
            for (k, v) in &f.on {
                on.insert(k.clone(), Value::from(v.as_str()));
            }
        }
        EnrichMap::SSet(f) => {
            for (k, v) in &f.on {
                on.insert(k.clone(), serde_json::to_value(v).expect("simplex ref serializes"));
            }
        }
    }
    let mut outer = Map::new();
    outer.insert("on".into(), Value::Object(on));
    Value::Object(outer)
}

pub fn map_from_json(source: &EnrichValue, target: &EnrichValue, v: &Value) -> Result<EnrichMap> {
    let m = as_object(v, "map")?;
    let on = as_object(field(m, "on", "map")?, "map graph")?;
    match (source, target) {
        (EnrichValue::Set(a), EnrichValue::Set(b)) => {
            let mut graph = BTreeMap::new();
            for (k, img) in on {
                graph.insert(k.clone(), as_str(img, "map image")?.to_string());
            }
            Ok(EnrichMap::Set(FinSetMap::new(a.clone(), b.clone(), graph)?))
        }
        (EnrichValue::SSet(a), EnrichValue::SSet(b)) => {
            let mut graph = BTreeMap::new();
            for (k, img) in on {
                graph.insert(k.clone(), simplex_ref_from_json(img)?);
            }
            Ok(EnrichMap::SSet(SSetMap::new(a.clone(), b.clone(), graph)?))
        }
        _ => Err(Error::BackendMismatch { expected: source.backend(), found: target.backend() }),
    }
}

// ---- collections ----

pub fn collection_to_json(c: &Collection) -> Value {
    let mut m = Map::new();
    m.insert("backend".into(), Value::from(c.backend().to_string()));
    m.insert("colors".into(), Value::Array(c.colors().iter().map(|x| Value::from(x.as_str())).collect()));
    m.insert("arity_bound".into(), Value::from(c.arity_bound() as u64));
    let mut entries = Map::new();
    for (sig, v) in c.entries() {
        entries.insert(sig.key(), value_to_json(v));
    }
    m.insert("entries".into(), Value::Object(entries));
    if let Some(table) = c.sigma_table() {
        let mut sigma = Map::new();
        for ((sig, p), act) in table {
            sigma.insert(format!("{}|{}", sig.key(), perm_key(p)), map_to_json(act));
        }
        m.insert("sigma".into(), Value::Object(sigma));
    }
    if c.is_pointed() {
        let star = EnrichValue::unit(c.backend()).basis().remove(0);
        let mut points = Map::new();
        for x in c.colors() {
            let e = c.point(x).and_then(|p| p.apply(&star)).expect("pointed collection has units");
            points.insert(x.clone(), elem_to_json(&e));
        }
        m.insert("points".into(), Value::Object(points));
    }
    Value::Object(m)
}

pub fn collection_from_json(v: &Value, fallback: Backend) -> Result<Collection> {
    let m = as_object(v, "collection")?;
    let backend = backend_or(m, fallback)?;
    let colors = as_array(field(m, "colors", "collection")?, "colors")?
        .iter()
        .map(|x| as_str(x, "color").map(str::to_string))
        .collect::<Result<Vec<String>>>()?;
    let arity_bound = as_usize(field(m, "arity_bound", "collection")?, "arity_bound")?;
    let mut entries: BTreeMap<Signature, EnrichValue> = BTreeMap::new();
    if let Some(ev) = m.get("entries") {
        for (key, vj) in as_object(ev, "entries")? {
            let sig = Signature::parse_key(key)?;
            let value = value_from_json(vj)?;
            if value.backend() != backend {
                return Err(Error::BackendMismatch { expected: backend, found: value.backend() });
            }
            entries.insert(sig, value);
        }
    }
    let at = |sig: &Signature| -> EnrichValue {
        entries.get(sig).cloned().unwrap_or_else(|| EnrichValue::initial(backend))
    };
    let sigma = match m.get("sigma") {
        None => None,
        Some(sv) => {
            let mut table = BTreeMap::new();
            for (key, mj) in as_object(sv, "sigma")? {
                let (sig_part, perm_part) = key
                    .rsplit_once('|')
                    .ok_or_else(|| parse_err("sigma key", key))?;
                let sig = Signature::parse_key(sig_part)?;
                let p = parse_perm_key(perm_part)?;
                let act = map_from_json(&at(&sig), &at(&sig.act(&p)), mj)?;
                table.insert((sig, p), act);
            }
            Some(table)
        }
    };
    let points = match m.get("points") {
        None => None,
        Some(pv) => {
            let unit = EnrichValue::unit(backend);
            let mut table = BTreeMap::new();
            for (color, ej) in as_object(pv, "points")? {
                let e = elem_from_json(ej)?;
                let target = at(&Signature::unary(color, color));
                table.insert(color.clone(), unit.map_from_fn(&target, |_| Ok(e.clone()))?);
            }
            Some(table)
        }
    };
    Collection::new(backend, colors, arity_bound, entries, sigma, points)
}

pub fn sequence_to_json(k: &SymmetricSequence) -> Value {
    collection_to_json(&k.col)
}

pub fn sequence_from_json(v: &Value, fallback: Backend) -> Result<SymmetricSequence> {
    SymmetricSequence::from_collection(collection_from_json(v, fallback)?)
}

// ---- multicategories ----

pub fn multicat_to_json(p: &Multicategory) -> Value {
    let mut m = Map::new();
    m.insert("backend".into(), Value::from(p.backend().to_string()));
    m.insert("dim_bound".into(), Value::from(p.dim_bound() as u64));
    m.insert("objects".into(), Value::Array(p.objects().iter().map(|x| Value::from(x.as_str())).collect()));
    m.insert("ops".into(), collection_to_json(p.ops()));
    let mut comp = Map::new();
    for (key, cm) in p.comp() {
        comp.insert(comp_key_string(key), map_to_json(cm));
    }
    m.insert("comp".into(), Value::Object(comp));
    let mut units = Map::new();
    for x in p.objects() {
        let e = p.unit_elem(x).expect("multicategory has units");
        units.insert(x.clone(), elem_to_json(&e));
    }
    m.insert("units".into(), Value::Object(units));
    Value::Object(m)
}

pub fn multicat_from_json(v: &Value, fallback: Backend, dim_fallback: usize) -> Result<Multicategory> {
    let m = as_object(v, "multicategory")?;
    let backend = backend_or(m, fallback)?;
    let dim_bound = match m.get("dim_bound") {
        Some(d) => as_usize(d, "dim_bound")?,
        None => dim_fallback,
    };
    let mut ops = collection_from_json(field(m, "ops", "multicategory")?, backend)?;
    if let Some(objs) = m.get("objects") {
        let listed = as_array(objs, "objects")?
            .iter()
            .map(|x| as_str(x, "object").map(str::to_string))
            .collect::<Result<Vec<String>>>()?;
        if listed != ops.colors() {
            return Err(parse_err("multicategory", "object list does not match ops colors"));
        }
    }
    // units may live in the ops points or in the separate field
    if !ops.is_pointed() {
        let uv = field(m, "units", "multicategory")?;
        let unit = EnrichValue::unit(backend);
        let mut points = BTreeMap::new();
        for (color, ej) in as_object(uv, "units")? {
            let e = elem_from_json(ej)?;
            let target = ops.entry_or_initial(&Signature::unary(color, color)).into_owned();
            points.insert(color.clone(), unit.map_from_fn(&target, |_| Ok(e.clone()))?);
        }
        ops = ops.with_points(points)?;
    }
    let mut comp = BTreeMap::new();
    if let Some(cv) = m.get("comp") {
        for (key, mj) in as_object(cv, "comp")? {
            let ck = parse_comp_key(key)?;
            let pair = TensorPair::build(
                &ops.entry_or_initial(&ck.0),
                &ops.entry_or_initial(&ck.2),
                dim_bound,
            )?;
            let composed = splice_signature(&ck.0, ck.1, &ck.2)?;
            let target = ops.entry_or_initial(&composed).into_owned();
            comp.insert(ck, map_from_json(&pair.value, &target, mj)?);
        }
    }
    Multicategory::new(ops, comp, dim_bound)
}

// ---- multifunctors ----

pub fn multifunctor_to_json(f: &Multifunctor) -> Value {
    let mut m = Map::new();
    m.insert("source".into(), multicat_to_json(&f.source));
    m.insert("target".into(), multicat_to_json(&f.target));
    let mut on_colors = Map::new();
    for (x, y) in &f.map.on_colors {
        on_colors.insert(x.clone(), Value::from(y.as_str()));
    }
    m.insert("on_colors".into(), Value::Object(on_colors));
    let mut on_entries = Map::new();
    for (sig, em) in &f.map.on_entries {
        on_entries.insert(sig.key(), map_to_json(em));
    }
    m.insert("on_entries".into(), Value::Object(on_entries));
    Value::Object(m)
}

/// `resolve` turns a name into a previously loaded multicategory, so that
/// functor files may reference their endpoints by name instead of inlining
/// them.
pub fn multifunctor_from_json(
    v: &Value,
    resolve: &dyn Fn(&str) -> Option<Multicategory>,
    fallback: Backend,
    dim_fallback: usize,
) -> Result<Multifunctor> {
    let m = as_object(v, "multifunctor")?;
    let endpoint = |key: &str| -> Result<Multicategory> {
        let ev = field(m, key, "multifunctor")?;
        match ev {
            Value::String(name) => {
                resolve(name).ok_or_else(|| parse_err("multifunctor", format!("unknown input {:?}", name)))
            }
            _ => multicat_from_json(ev, fallback, dim_fallback),
        }
    };
    let source = endpoint("source")?;
    let target = endpoint("target")?;
    let mut on_colors = BTreeMap::new();
    for (x, y) in as_object(field(m, "on_colors", "multifunctor")?, "on_colors")? {
        on_colors.insert(x.clone(), as_str(y, "object image")?.to_string());
    }
    let mut on_entries = BTreeMap::new();
    if let Some(ev) = m.get("on_entries") {
        for (key, mj) in as_object(ev, "on_entries")? {
            let sig = Signature::parse_key(key)?;
            let src = source.entry(&sig);
            let mapped = Signature::new(
                sig.inputs
                    .iter()
                    .map(|x| {
                        on_colors
                            .get(x)
                            .cloned()
                            .ok_or_else(|| parse_err("multifunctor", format!("no image for color {:?}", x)))
                    })
                    .collect::<Result<Vec<String>>>()?,
                on_colors
                    .get(&sig.output)
                    .cloned()
                    .ok_or_else(|| parse_err("multifunctor", format!("no image for color {:?}", sig.output)))?,
            );
            let dst = target.entry(&mapped);
            on_entries.insert(sig, map_from_json(&src, &dst, mj)?);
        }
    }
    Multifunctor::new(source, target, on_colors, on_entries)
}

pub fn collection_map_to_json(f: &CollectionMap) -> Value {
    let mut m = Map::new();
    m.insert("source".into(), collection_to_json(&f.source));
    m.insert("target".into(), collection_to_json(&f.target));
    let mut on_colors = Map::new();
    for (x, y) in &f.on_colors {
        on_colors.insert(x.clone(), Value::from(y.as_str()));
    }
    m.insert("on_colors".into(), Value::Object(on_colors));
    let mut on_entries = Map::new();
    for (sig, em) in &f.on_entries {
        on_entries.insert(sig.key(), map_to_json(em));
    }
    m.insert("on_entries".into(), Value::Object(on_entries));
    Value::Object(m)
}

// ---- trees and presentations ----

/// A leaf is its color string; an inner vertex is `[label, [children...]]`;
/// the root additionally carries the term's permutation.
pub fn term_to_json(t: &TreeTerm) -> Value {
    match &t.tree {
        Tree::Leaf(c) => Value::from(c.as_str()),
        Tree::Node { label, children, .. } => Value::Array(vec![
            Value::from(label.as_str()),
            Value::Array(children.iter().map(tree_node_to_json).collect()),
            perm_to_json(&t.sigma),
        ]),
    }
}

fn tree_node_to_json(t: &Tree) -> Value {
    match t {
        Tree::Leaf(c) => Value::from(c.as_str()),
        Tree::Node { label, children, .. } => Value::Array(vec![
            Value::from(label.as_str()),
            Value::Array(children.iter().map(tree_node_to_json).collect()),
        ]),
    }
}

pub fn term_from_json(gens: &Collection, v: &Value) -> Result<TreeTerm> {
    let term = match v {
        Value::String(color) => TreeTerm::leaf(color),
        Value::Array(parts) => {
            if parts.len() != 3 {
                return Err(parse_err("tree", "root must be [label, [children...], perm]"));
            }
            let label = as_str(&parts[0], "tree label")?;
            let children = as_array(&parts[1], "tree children")?
                .iter()
                .map(|c| tree_node_from_json(gens, c))
                .collect::<Result<Vec<Tree>>>()?;
            let sigma = perm_from_json(&parts[2])?;
            TreeTerm { tree: make_node(gens, label, children)?, sigma }
        }
        _ => return Err(parse_err("tree", "expected a color string or a root array")),
    };
    term.validate(gens)?;
    Ok(term)
}

fn tree_node_from_json(gens: &Collection, v: &Value) -> Result<Tree> {
    match v {
        Value::String(color) => Ok(Tree::Leaf(color.clone())),
        Value::Array(parts) => {
            if parts.len() != 2 {
                return Err(parse_err("tree", "inner vertex must be [label, [children...]]"));
            }
            let label = as_str(&parts[0], "tree label")?;
            let children = as_array(&parts[1], "tree children")?
                .iter()
                .map(|c| tree_node_from_json(gens, c))
                .collect::<Result<Vec<Tree>>>()?;
            make_node(gens, label, children)
        }
        _ => Err(parse_err("tree", "expected a color string or a vertex array")),
    }
}

/// The vertex signature is not written; it is recovered from the children's
/// output colors plus the generator label, and must be unambiguous.
fn make_node(gens: &Collection, label: &str, children: Vec<Tree>) -> Result<Tree> {
    let inputs = children
        .iter()
        .map(|c| c.output_color())
        .collect::<Result<Vec<String>>>()?;
    let mut matches = Vec::new();
    for sig in gens.signatures() {
        if sig.inputs != inputs {
            continue;
        }
        let carries = gens
            .entry(sig)
            .map(|v| v.basis().iter().any(|e| e.label() == label))
            .unwrap_or(false);
        if carries {
            matches.push(sig.clone());
        }
    }
    match matches.len() {
        1 => Ok(Tree::Node { key: matches.remove(0).key(), label: label.to_string(), children }),
        0 => Err(parse_err("tree", format!("no generator {:?} with inputs {:?}", label, inputs))),
        _ => Err(parse_err(
            "tree",
            format!("generator label {:?} with inputs {:?} is ambiguous", label, inputs),
        )),
    }
}

pub fn presented_to_json(p: &PresentedMulticategory) -> Value {
    let mut m = Map::new();
    m.insert("generators".into(), collection_to_json(p.gens()));
    let relations: Vec<Value> = p
        .relations()
        .iter()
        .map(|(l, r)| Value::Array(vec![term_to_json(l), term_to_json(r)]))
        .collect();
    m.insert("relations".into(), Value::Array(relations));
    m.insert("bound".into(), Value::from(p.bound() as u64));
    m.insert("dim_bound".into(), Value::from(p.dim_bound() as u64));
    Value::Object(m)
}

pub fn presented_from_json(v: &Value, dim_fallback: usize) -> Result<PresentedMulticategory> {
    let m = as_object(v, "presentation")?;
    let gens = collection_from_json(field(m, "generators", "presentation")?, Backend::Set)?;
    let bound = as_usize(field(m, "bound", "presentation")?, "bound")?;
    let dim_bound = match m.get("dim_bound") {
        Some(d) => as_usize(d, "dim_bound")?,
        None => dim_fallback,
    };
    let mut relations = Vec::new();
    if let Some(rv) = m.get("relations") {
        for pair in as_array(rv, "relations")? {
            let sides = as_array(pair, "relation")?;
            if sides.len() != 2 {
                return Err(parse_err("relation", "expected [tree, tree]"));
            }
            relations.push((term_from_json(&gens, &sides[0])?, term_from_json(&gens, &sides[1])?));
        }
    }
    PresentedMulticategory::new(gens, relations, bound, dim_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::symmetrize;
    use crate::model::catalog::{catalog_functors, catalog_multicats, xi_one_into_h, z2_group};
    use crate::model::lift::interval;
    use crate::multicat::free::pushforward_corolla;

    fn roundtrip_value(v: &EnrichValue) {
        let j = value_to_json(v);
        let back = value_from_json(&j).expect("value parses");
        assert_eq!(&back, v);
    }

    #[test]
    fn values_survive_the_round_trip() {
        roundtrip_value(&EnrichValue::Set(FinSetObj::from_labels(&["a", "b", "c"])));
        roundtrip_value(&EnrichValue::Set(FinSetObj::empty()));
        roundtrip_value(&EnrichValue::SSet(FinSSetObj::empty()));
        roundtrip_value(&EnrichValue::SSet(FinSSetObj::delta(2)));
        roundtrip_value(&EnrichValue::SSet(FinSSetObj::nerve_contractible_pair(2)));
        roundtrip_value(&EnrichValue::SSet(FinSSetObj::horn(2, 1)));
    }

    #[test]
    fn maps_survive_the_round_trip() {
        let a = EnrichValue::Set(FinSetObj::from_labels(&["x", "y"]));
        let b = EnrichValue::Set(FinSetObj::from_labels(&["u"]));
        let m = a.map_from_fn(&b, |_| Ok(Elem::Set("u".into()))).unwrap();
        let back = map_from_json(&a, &b, &map_to_json(&m)).unwrap();
        assert_eq!(back, m);

        let d1 = EnrichValue::SSet(FinSSetObj::delta(1));
        let pt = EnrichValue::SSet(FinSSetObj::point());
        let star = pt.basis().remove(0);
        let collapse = d1.map_from_fn(&pt, |_| Ok(star.clone())).unwrap();
        let back = map_from_json(&d1, &pt, &map_to_json(&collapse)).unwrap();
        assert_eq!(back, collapse);
    }

    #[test]
    fn a_symmetrized_collection_keeps_its_action_table() {
        let y = EnrichValue::Set(FinSetObj::from_labels(&["f", "g"]));
        let gens = crate::collection::make_generating(2, &y).unwrap();
        let (sym, _) = symmetrize(&gens).unwrap();
        let back = collection_from_json(&collection_to_json(&sym), Backend::Set).unwrap();
        assert_eq!(back, sym);
    }

    #[test]
    fn every_catalog_multicategory_survives_the_round_trip() {
        for (name, p) in catalog_multicats().unwrap() {
            let j = multicat_to_json(&p);
            let back = multicat_from_json(&j, Backend::Set, p.dim_bound())
                .unwrap_or_else(|e| panic!("{} does not parse back: {}", name, e));
            assert_eq!(back, p, "{} changed in transit", name);
        }
    }

    #[test]
    fn the_simplicial_interval_survives_the_round_trip() {
        let e = interval(Backend::SSet, 2).unwrap();
        let back = multicat_from_json(&multicat_to_json(&e), Backend::SSet, 2).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn catalog_functors_survive_the_round_trip() {
        let no_names = |_: &str| None;
        // the named fixtures plus a slice of the enumerated sweep
        let mut fs = vec![("xi_one_into_h".to_string(), xi_one_into_h().unwrap())];
        fs.extend(catalog_functors(2_000).unwrap().into_iter().take(8));
        for (name, f) in fs {
            let j = multifunctor_to_json(&f);
            let back = multifunctor_from_json(&j, &no_names, Backend::Set, f.source.dim_bound())
                .unwrap_or_else(|e| panic!("{} does not parse back: {}", name, e));
            assert_eq!(back.map, f.map, "{} changed in transit", name);
        }
    }

    #[test]
    fn functor_endpoints_may_be_named_references() {
        let f = xi_one_into_h().unwrap();
        let mut j = multifunctor_to_json(&f);
        let obj = j.as_object_mut().unwrap();
        obj.insert("source".into(), Value::from("src"));
        obj.insert("target".into(), Value::from("dst"));
        let src = f.source.clone();
        let dst = f.target.clone();
        let resolve = move |name: &str| match name {
            "src" => Some(src.clone()),
            "dst" => Some(dst.clone()),
            _ => None,
        };
        let back = multifunctor_from_json(&j, &resolve, Backend::Set, 3).unwrap();
        assert_eq!(back.map, f.map);
        let missing = multifunctor_from_json(&j, &|_| None, Backend::Set, 3);
        assert!(matches!(missing, Err(Error::Parse(_))));
    }

    #[test]
    fn presentations_and_their_trees_survive_the_round_trip() {
        let x = EnrichValue::Set(FinSetObj::from_labels(&["f", "g"]));
        let s: Vec<String> = ["m", "m", "m"].iter().map(|t| t.to_string()).collect();
        let p = pushforward_corolla(&s, &x, 3, 3).unwrap();
        let back = presented_from_json(&presented_to_json(&p), 3).unwrap();
        assert_eq!(back.gens(), p.gens());
        assert_eq!(back.relations(), p.relations());
        assert_eq!(back.bound(), p.bound());
        // the quotient itself agrees, not just the input data
        let sig = Signature::new(vec!["m".into(), "m".into()], "m".into());
        assert_eq!(back.classes_at(&sig).len(), p.classes_at(&sig).len());
    }

    #[test]
    fn a_grafted_tree_with_a_twist_round_trips() {
        let x = EnrichValue::Set(FinSetObj::from_labels(&["f"]));
        let s: Vec<String> = ["m", "m", "m"].iter().map(|t| t.to_string()).collect();
        let p = pushforward_corolla(&s, &x, 3, 3).unwrap();
        let sig = Signature::new(vec!["m".into(), "m".into()], "m".into());
        let twisted: Vec<TreeTerm> = p
            .classes_at(&Signature::new(vec!["m".into(); 3], "m".into()))
            .into_iter()
            .filter(|t| t.vertex_count() == 2)
            .collect();
        assert!(!twisted.is_empty());
        for t in twisted {
            let back = term_from_json(p.gens(), &term_to_json(&t)).unwrap();
            assert_eq!(back, t);
        }
        let flat = p.classes_at(&sig);
        for t in flat {
            let back = term_from_json(p.gens(), &term_to_json(&t)).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn ambiguous_or_unknown_tree_labels_are_rejected() {
        // one label at two signatures with the same inputs, different outputs
        let f = EnrichValue::Set(FinSetObj::from_labels(&["f"]));
        let mut entries = BTreeMap::new();
        entries.insert(Signature::new(vec!["a".into()], "b".into()), f.clone());
        entries.insert(Signature::new(vec!["a".into()], "c".into()), f.clone());
        let gens = Collection::new(
            Backend::Set,
            vec!["a".into(), "b".into(), "c".into()],
            2,
            entries,
            None,
            None,
        )
        .unwrap();
        let j: Value = serde_json::json!(["f", ["a"], [1]]);
        assert!(matches!(term_from_json(&gens, &j), Err(Error::Parse(_))));
        let j: Value = serde_json::json!(["nosuch", ["a"], [1]]);
        assert!(matches!(term_from_json(&gens, &j), Err(Error::Parse(_))));
    }

    #[test]
    fn malformed_input_is_a_parse_error_not_a_panic() {
        assert!(value_from_json(&serde_json::json!({"nope": 1})).is_err());
        assert!(perm_from_json(&serde_json::json!([1, 1])).is_err());
        assert!(perm_from_json(&serde_json::json!([0, 1])).is_err());
        assert!(backend_from_json(&serde_json::json!("simplicial")).is_err());
        assert!(collection_from_json(&serde_json::json!({"colors": ["a"]}), Backend::Set).is_err());
    }

    #[test]
    fn a_corrupted_composition_table_is_caught_by_validation() {
        let p = z2_group().unwrap();
        let mut j = multicat_to_json(&p);
        let comp = j.get_mut("comp").and_then(|c| c.as_object_mut()).unwrap();
        let (_, first) = comp.iter_mut().next().unwrap();
        let on = first.get_mut("on").unwrap().as_object_mut().unwrap();
        let keys: Vec<String> = on.keys().cloned().collect();
        assert!(keys.len() >= 2, "z2 composition has several entries");
        let v0 = on.get(&keys[0]).unwrap().clone();
        let v1 = on.get(&keys[1]).unwrap().clone();
        assert_ne!(v0, v1, "swapping must change the table");
        on.insert(keys[0].clone(), v1);
        on.insert(keys[1].clone(), v0);
        assert!(multicat_from_json(&j, Backend::Set, p.dim_bound()).is_err());
    }
}
