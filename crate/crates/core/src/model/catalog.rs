//! Desk-scale FinSet fixtures and the sweep catalog. Everything here stays
//! within three objects, entries of at most two elements, and arity two,
//! so exhaustive functor enumeration and lifting searches are cheap.

use std::collections::BTreeMap;

use crate::collection::Collection;
use crate::enrich::finset::FinSetObj;
use crate::enrich::{Backend, EnrichValue};
use crate::error::Result;
use crate::multicat::adjoint::CategoryBuilder;
use crate::multicat::examples::{commutative_truncation, symmetrize_multicat};
use crate::multicat::free::corolla;
use crate::multicat::{enumerate_multifunctors, Multicategory, Multifunctor};

/// Shared bounds for every fixture, so functors compose without friction.
pub const ARITY: usize = 2;
pub const DIM: usize = 3;

pub fn empty_multicat() -> Result<Multicategory> {
    let ops = Collection::new(
        Backend::Set,
        Vec::new(),
        ARITY,
        BTreeMap::new(),
        Some(BTreeMap::new()),
        Some(BTreeMap::new()),
    )?;
    Multicategory::new(ops, BTreeMap::new(), DIM)
}

/// One object, one identity.
pub fn xi_one() -> Result<Multicategory> {
    CategoryBuilder::new(&["0"]).build(ARITY, DIM)
}

pub fn discrete_two() -> Result<Multicategory> {
    CategoryBuilder::new(&["0", "1"]).build(ARITY, DIM)
}

pub fn free_arrow() -> Result<Multicategory> {
    CategoryBuilder::new(&["0", "1"]).arrow("f", "0", "1").build(ARITY, DIM)
}

pub fn parallel_pair() -> Result<Multicategory> {
    CategoryBuilder::new(&["0", "1"])
        .arrow("f", "0", "1")
        .arrow("g", "0", "1")
        .build(ARITY, DIM)
}

/// The contractible groupoid on two objects.
pub fn xi_h() -> Result<Multicategory> {
    CategoryBuilder::new(&["0", "1"])
        .arrow("up", "0", "1")
        .arrow("down", "1", "0")
        .rule("down", "up", "1_0")
        .rule("up", "down", "1_1")
        .build(ARITY, DIM)
}

/// The two-element group on one object.
pub fn z2_group() -> Result<Multicategory> {
    CategoryBuilder::new(&["0"]).arrow("g", "0", "0").rule("g", "g", "1_0").build(ARITY, DIM)
}

pub fn idempotent_monoid() -> Result<Multicategory> {
    CategoryBuilder::new(&["0"]).arrow("e", "0", "0").rule("e", "e", "e").build(ARITY, DIM)
}

pub(crate) fn labels(value: &[&str]) -> EnrichValue {
    EnrichValue::Set(FinSetObj::from_labels(value))
}

/// The catalog the model-structure sweeps quantify over.
pub fn catalog_multicats() -> Result<Vec<(String, Multicategory)>> {
    let (sym_ass, _) = symmetrize_multicat(&crate::multicat::examples::associative_truncation(
        ARITY, DIM,
    )?)?;
    Ok(vec![
        ("empty".into(), empty_multicat()?),
        ("point".into(), xi_one()?),
        ("discrete2".into(), discrete_two()?),
        ("arrow".into(), free_arrow()?),
        ("parallel".into(), parallel_pair()?),
        ("iso-pair".into(), xi_h()?),
        ("z2".into(), z2_group()?),
        ("idempotent".into(), idempotent_monoid()?),
        ("com2".into(), commutative_truncation(ARITY, DIM)?),
        ("sym-ass2".into(), sym_ass),
        ("g1-two".into(), corolla(1, &labels(&["a", "b"]), DIM)?),
        ("g2-one".into(), corolla(2, &labels(&["a"]), DIM)?),
    ])
}

/// Every multifunctor between every ordered pair of catalog entries.
pub fn catalog_functors(budget: usize) -> Result<Vec<(String, Multifunctor)>> {
    let cats = catalog_multicats()?;
    let mut out = Vec::new();
    for (sn, src) in &cats {
        for (tn, tgt) in &cats {
            let (fs, complete) = enumerate_multifunctors(src, tgt, budget)?;
            if !complete {
                return Err(crate::error::Error::BudgetExhausted(format!(
                    "functor enumeration {} -> {}",
                    sn, tn
                )));
            }
            for (k, f) in fs.into_iter().enumerate() {
                out.push((format!("{}->{}#{}", sn, tn, k), f));
            }
        }
    }
    Ok(out)
}

fn single_object_functor(src: Multicategory, tgt: Multicategory, obj: &str) -> Result<Multifunctor> {
    let source_obj = src.objects()[0].clone();
    let on_colors: BTreeMap<String, String> = [(source_obj.clone(), obj.to_string())].into();
    let sig = crate::collection::Signature::unary(&source_obj, &source_obj);
    let dsig = crate::collection::Signature::unary(obj, obj);
    let unit = tgt.unit_elem(obj)?;
    let m = src.entry(&sig).map_from_fn(&tgt.entry(&dsig), |_| Ok(unit.clone()))?;
    Multifunctor::new(src, tgt, on_colors, [(sig, m)].into())
}

/// Ξ({0}) into the contractible pair at object 0.
pub fn xi_one_into_h() -> Result<Multifunctor> {
    single_object_functor(xi_one()?, xi_h()?, "0")
}

/// Ξ({0}) into the two-object discrete multicategory.
pub fn xi_one_into_discrete_two() -> Result<Multifunctor> {
    single_object_functor(xi_one()?, discrete_two()?, "0")
}

/// The fold of the contractible pair onto the point.
pub fn xi_h_fold() -> Result<Multifunctor> {
    let src = xi_h()?;
    let tgt = xi_one()?;
    let on_colors: BTreeMap<String, String> =
        [("0".to_string(), "0".to_string()), ("1".to_string(), "0".to_string())].into();
    let unit = tgt.unit_elem("0")?;
    let mut on_entries = BTreeMap::new();
    for (sig, v) in src.ops().entries() {
        let dsig = crate::collection::Signature::unary("0", "0");
        on_entries.insert(sig.clone(), v.map_from_fn(&tgt.entry(&dsig), |_| Ok(unit.clone()))?);
    }
    Multifunctor::new(src, tgt, on_colors, on_entries)
}

pub fn xi_empty_into_one() -> Result<Multifunctor> {
    Multifunctor::new(empty_multicat()?, xi_one()?, BTreeMap::new(), BTreeMap::new())
}

/// The unit inclusion into the one-object commutative truncation: an
/// equivalence of underlying categories that is not full at arity two.
pub fn unit_into_truncation() -> Result<Multifunctor> {
    let src = xi_one()?;
    let tgt = commutative_truncation(ARITY, DIM)?;
    let obj = tgt.objects()[0].clone();
    single_object_functor(src, tgt, &obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_equivalence_set, is_fibration_set};
    use crate::verdict::Verdict;

    #[test]
    fn every_fixture_validates() {
        for (name, p) in catalog_multicats().unwrap() {
            let report = p.validate();
            assert!(report.ok(), "{} fails: {:?}", name, report.failures());
        }
    }

    #[test]
    fn functor_counts_on_a_few_known_pairs() {
        let (fs, c) = enumerate_multifunctors(&z2_group().unwrap(), &z2_group().unwrap(), 100_000)
            .unwrap();
        assert!(c);
        assert_eq!(fs.len(), 2);
        let (fs, _) =
            enumerate_multifunctors(&parallel_pair().unwrap(), &parallel_pair().unwrap(), 100_000)
                .unwrap();
        assert_eq!(fs.len(), 6);
        let (fs, _) = enumerate_multifunctors(&xi_h().unwrap(), &xi_h().unwrap(), 100_000).unwrap();
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn the_unary_counterexample_separates_the_levels() {
        let f = unit_into_truncation().unwrap();
        let v = is_equivalence_set(&f).unwrap();
        // equivalence of underlying categories, but misses arity 2
        assert_eq!(v.weq, Verdict::No);
        assert!(is_fibration_set(&f).unwrap());
        let uf = crate::multicat::adjoint::functor_underlying(&f).unwrap();
        assert_eq!(is_equivalence_set(&uf).unwrap().weq, Verdict::Yes);
    }
}
