//! Explicit factorizations and pushouts: every multifunctor splits as an
//! object-injective functor followed by a fully faithful object-surjective
//! one, the interval glues a fresh object isomorphic to a chosen anchor,
//! and corolla maps push forward along colour identifications.

use std::collections::{BTreeMap, BTreeSet};

use crate::collection::{Collection, Signature};
use crate::enrich::{coproduct_elem, split_coproduct_elem, Backend, EnrichMap, EnrichValue};
use crate::error::{Error, Result};
use crate::multicat::adjoint::pullback;
use crate::multicat::free::{free_multicat, materialize_rigid, PresentedMulticategory};
use crate::multicat::{enumerate_multifunctors, to_discrete, Multicategory, Multifunctor};

use super::lift::{corolla_map, interval};
use super::{is_cofibration_set, is_fully_faithful};

/// F = Pfib ∘ I through a middle stage whose objects are the disjoint
/// union of both sides and whose operations are pulled back from the
/// target.
#[derive(Clone, Debug)]
pub struct Mc5Factorization {
    pub q_prime: Multicategory,
    pub i: Multifunctor,
    pub pfib: Multifunctor,
}

/// Factors F: P -> Q. The middle stage tags objects "p-x" and "q-y"; δ
/// sends the P-part through F and the Q-part to itself, and the operations
/// at any tuple are Q's operations at its δ-image. I is then F on
/// operations over x ↦ p-x, and Pfib is δ with identity operation maps:
/// object-injective and fully faithful + object-surjective respectively,
/// both rechecked before returning.
pub fn factorize_mc5(f: &Multifunctor) -> Result<Mc5Factorization> {
    let p = &f.source;
    let q = &f.target;
    let mut objects = Vec::new();
    let mut delta = BTreeMap::new();
    for x in p.objects() {
        let tagged = format!("p-{}", x);
        delta.insert(tagged.clone(), f.apply_color(x)?.clone());
        objects.push(tagged);
    }
    for y in q.objects() {
        let tagged = format!("q-{}", y);
        delta.insert(tagged.clone(), y.clone());
        objects.push(tagged);
    }
    let (q_prime, pfib) = pullback(&objects, &delta, q)?;
    let on_colors: BTreeMap<String, String> =
        p.objects().iter().map(|x| (x.clone(), format!("p-{}", x))).collect();
    let i = Multifunctor::new(p.clone(), q_prime.clone(), on_colors, f.map.on_entries.clone())?;
    if pfib.compose(&i)?.map != f.map {
        return Err(Error::Invalid("factorization legs do not compose to F".into()));
    }
    if !is_cofibration_set(&i)? {
        return Err(Error::Invalid("first factorization leg is not object-injective".into()));
    }
    let image: BTreeSet<&String> = pfib.map.on_colors.values().collect();
    if !q.objects().iter().all(|y| image.contains(y)) {
        return Err(Error::Invalid("second factorization leg misses an object".into()));
    }
    if !is_fully_faithful(&pfib)?.0 {
        return Err(Error::Invalid("second factorization leg is not fully faithful".into()));
    }
    Ok(Mc5Factorization { q_prime, i, pfib })
}

/// The pushout of F: Ξ(1) -> P along the inclusion Ξ(1) -> Ξ(H): P with a
/// fresh object glued on, isomorphic to the anchor F(*).
#[derive(Clone, Debug)]
pub struct XiHPushout {
    pub q: Multicategory,
    /// Ξ(1) -> Ξ(H), the object 0.
    pub j: Multifunctor,
    /// P -> Q, fully faithful.
    pub g: Multifunctor,
    /// Ξ(H) -> Q; every arrow of H lands on the unit at the anchor.
    pub k: Multifunctor,
}

/// Builds Q with objects obj(P) ⊔ {*} and Q(w⃗; w) = P(δw⃗; δw), where δ
/// collapses * onto the anchor x_* = F(*). G is the evident inclusion and
/// K sends both objects of H onto {x_*, *} and all four arrows to the unit
/// at x_*. The square K∘J = G∘F commutes and G is fully faithful by
/// construction; both are rechecked.
pub fn pushout_xi_h(p: &Multicategory, f: &Multifunctor) -> Result<XiHPushout> {
    if f.target != *p {
        return Err(Error::Invalid("the attaching leg does not land in P".into()));
    }
    if f.source.objects().len() != 1 {
        return Err(Error::NotApplicable("the attaching leg must start from a free point".into()));
    }
    let pt = f.source.objects()[0].clone();
    for (sig, v) in f.source.ops().entries() {
        if !(sig.arity() == 1 && sig.inputs[0] == sig.output && v.basis().len() == 1) {
            return Err(Error::NotApplicable(
                "the attaching leg must start from a free point".into(),
            ));
        }
    }
    let x_star = f.apply_color(&pt)?.clone();
    let mut star = "*".to_string();
    while p.objects().contains(&star) {
        star.push('*');
    }

    let mut objects = p.objects().to_vec();
    objects.push(star.clone());
    let mut delta: BTreeMap<String, String> =
        p.objects().iter().map(|x| (x.clone(), x.clone())).collect();
    delta.insert(star.clone(), x_star.clone());
    let (q, _) = pullback(&objects, &delta, p)?;

    let g = Multifunctor::new(
        p.clone(),
        q.clone(),
        p.objects().iter().map(|x| (x.clone(), x.clone())).collect(),
        p.ops().entries().iter().map(|(sig, v)| (sig.clone(), EnrichMap::identity(v))).collect(),
    )?;

    let h_cat = match p.backend() {
        Backend::Set => interval(Backend::Set, p.dim_bound())?,
        Backend::SSet => to_discrete(&interval(Backend::Set, p.dim_bound())?)?,
    };
    let mut j_entries = BTreeMap::new();
    for (sig, v) in f.source.ops().entries() {
        let m = v.map_from_fn(&h_cat.entry(&Signature::unary("0", "0")), |_| h_cat.unit_elem("0"))?;
        j_entries.insert(sig.clone(), m);
    }
    let j = Multifunctor::new(
        f.source.clone(),
        h_cat.clone(),
        std::iter::once((pt, "0".to_string())).collect(),
        j_entries,
    )?;

    let u = q.unit_elem(&star)?;
    let k_colors: BTreeMap<String, String> =
        [("0".to_string(), x_star), ("1".to_string(), star)].into();
    let mut k_entries = BTreeMap::new();
    for (sig, v) in h_cat.ops().entries() {
        let mapped = Signature::new(
            sig.inputs.iter().map(|c| k_colors[c].clone()).collect(),
            k_colors[&sig.output].clone(),
        );
        k_entries.insert(sig.clone(), v.map_from_fn(&q.entry(&mapped), |_| Ok(u.clone()))?);
    }
    let k = Multifunctor::new(h_cat, q.clone(), k_colors, k_entries)?;

    if k.compose(&j)?.map != g.compose(f)?.map {
        return Err(Error::Invalid("interval pushout square does not commute".into()));
    }
    if !is_fully_faithful(&g)?.0 {
        return Err(Error::Invalid("interval pushout inclusion is not fully faithful".into()));
    }
    Ok(XiHPushout { q, j, g, k })
}

/// Tests the universal property of a commuting square
///
/// ```text
///   A --top--> B
///   |left      |right
///   C -bottom> D
/// ```
///
/// against one receiver R: every cocone (B -> R, C -> R) agreeing on A
/// must factor through D exactly once. All three hom-sets are enumerated
/// exhaustively, so a truncated enumeration surfaces as BudgetExhausted
/// rather than a silent pass.
pub fn check_pushout_against(
    top: &Multifunctor,
    left: &Multifunctor,
    right: &Multifunctor,
    bottom: &Multifunctor,
    r: &Multicategory,
    budget: usize,
) -> Result<bool> {
    if right.compose(top)?.map != bottom.compose(left)?.map {
        return Err(Error::Invalid("the square does not commute".into()));
    }
    let (bs, b_ok) = enumerate_multifunctors(&top.target, r, budget)?;
    let (cs, c_ok) = enumerate_multifunctors(&left.target, r, budget)?;
    let (ds, d_ok) = enumerate_multifunctors(&right.target, r, budget)?;
    if !(b_ok && c_ok && d_ok) {
        return Err(Error::BudgetExhausted("cocone enumeration truncated".into()));
    }
    for fb in &bs {
        let fb_top = fb.compose(top)?;
        for fc in &cs {
            if fc.compose(left)?.map != fb_top.map {
                continue;
            }
            let mut mediators = 0usize;
            for m in &ds {
                if m.compose(right)?.map == fb.map && m.compose(bottom)?.map == fc.map {
                    mediators += 1;
                }
            }
            if mediators != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// s_*(G_n[X]): the free multicategory on the corolla generator whose legs
/// are relabelled by s. The slice lists the images (s(0) the output, then
/// s(1), …, s(n)), so repeats encode colour identifications; identifying
/// an input with the output makes the result genuinely infinite, which is
/// why this returns the presented form under a tree bound.
pub fn pushforward_corolla(
    s: &[String],
    x: &EnrichValue,
    tree_bound: usize,
    dim_bound: usize,
) -> Result<PresentedMulticategory> {
    let gens = relabelled_generators(s, x)?;
    free_multicat(&gens, tree_bound, dim_bound)
}

fn relabelled_generators(s: &[String], x: &EnrichValue) -> Result<Collection> {
    if s.is_empty() {
        return Err(Error::Invalid("the relabelling needs an output slot".into()));
    }
    let colors: Vec<String> = s.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let sig = Signature::new(s[1..].to_vec(), s[0].clone());
    let n = sig.arity();
    let mut entries = BTreeMap::new();
    entries.insert(sig, x.clone());
    Collection::new(x.backend(), colors, n.max(1), entries, None, None)
}

/// The relabelling square of a corolla map along s:
///
/// ```text
///   G_n[X] -----> G_n[Y]
///     |              |
///   s_*G_n[X] --> s_*G_n[Y]
/// ```
///
/// with vertical legs the relabelling functors and horizontal legs induced
/// by X -> Y.
#[derive(Clone, Debug)]
pub struct RelabelSquare {
    pub top: Multifunctor,
    pub left: Multifunctor,
    pub right: Multifunctor,
    pub bottom: Multifunctor,
}

/// Materializes the relabelling square rigidly, which requires that s
/// never identifies an input with the output; that identifying case only
/// exists as a presented multicategory, via `pushforward_corolla`.
pub fn relabel_square(s: &[String], km: &EnrichMap, dim_bound: usize) -> Result<RelabelSquare> {
    if s.is_empty() {
        return Err(Error::Invalid("the relabelling needs an output slot".into()));
    }
    if s[1..].contains(&s[0]) {
        return Err(Error::NotApplicable(
            "identifying an input with the output makes the pushforward non-rigid".into(),
        ));
    }
    let n = s.len() - 1;
    let top = corolla_map(n, km, dim_bound)?;
    let c = materialize_rigid(&relabelled_generators(s, &km.source())?, dim_bound)?;
    let d = materialize_rigid(&relabelled_generators(s, &km.target())?, dim_bound)?;
    let left = relabel_functor(&top.source, &c, s)?;
    let right = relabel_functor(&top.target, &d, s)?;
    let bottom = tagged_functor(&c, &d, km)?;
    if right.compose(&top)?.map != bottom.compose(&left)?.map {
        return Err(Error::Invalid("relabelling square does not commute".into()));
    }
    Ok(RelabelSquare { top, left, right, bottom })
}

/// Corolla colours are the slot indices, so the relabelling is s itself on
/// objects. A permutation translate of the generator sits at the
/// relabelled translate under the same tag, which makes every non-unit
/// entry map the identity on labels.
fn relabel_functor(a: &Multicategory, c: &Multicategory, s: &[String]) -> Result<Multifunctor> {
    let mut on_colors = BTreeMap::new();
    for obj in a.objects() {
        let image = obj
            .parse::<usize>()
            .ok()
            .and_then(|idx| s.get(idx))
            .ok_or_else(|| Error::Invalid(format!("corolla colour {:?} has no slot in s", obj)))?;
        on_colors.insert(obj.clone(), image.clone());
    }
    let mut on_entries = BTreeMap::new();
    for (sig, v) in a.ops().entries() {
        let m = if sig.arity() == 1 && sig.inputs[0] == sig.output {
            EnrichMap::identity(v)
        } else {
            let mapped = Signature::new(
                sig.inputs.iter().map(|i| on_colors[i].clone()).collect(),
                on_colors[&sig.output].clone(),
            );
            v.map_from_fn(&c.entry(&mapped), |e| Ok(e.clone()))?
        };
        on_entries.insert(sig.clone(), m);
    }
    Multifunctor::new(a.clone(), c.clone(), on_colors, on_entries)
}

/// Identity on objects, X -> Y inside every tagged component.
fn tagged_functor(c: &Multicategory, d: &Multicategory, km: &EnrichMap) -> Result<Multifunctor> {
    let on_colors: BTreeMap<String, String> =
        c.objects().iter().map(|x| (x.clone(), x.clone())).collect();
    let mut on_entries = BTreeMap::new();
    for (sig, v) in c.ops().entries() {
        let m = if sig.arity() == 1 && sig.inputs[0] == sig.output {
            EnrichMap::identity(v)
        } else {
            v.map_from_fn(&d.entry(sig), |e| {
                let (tag, inner) = split_coproduct_elem(e)?;
                Ok(coproduct_elem(&tag, &km.apply(&inner)?))
            })?
        };
        on_entries.insert(sig.clone(), m);
    }
    Multifunctor::new(c.clone(), d.clone(), on_colors, on_entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::Elem;
    use crate::model::catalog::{
        catalog_multicats, labels, unit_into_truncation, xi_empty_into_one, xi_h, xi_h_fold,
        xi_one, xi_one_into_h, z2_group,
    };
    use crate::model::is_trivial_fibration_set;
    use crate::multicat::examples::commutative_truncation;
    use crate::multicat::free::corolla;
    use crate::verdict::Verdict;

    const BUDGET: usize = 200_000;

    #[test]
    fn the_factorization_recovers_the_map_and_splits_it() {
        let f = xi_h_fold().unwrap();
        let mc5 = factorize_mc5(&f).unwrap();
        assert_eq!(mc5.pfib.compose(&mc5.i).unwrap().map, f.map);
        assert_eq!(mc5.q_prime.objects(), &["p-0", "p-1", "q-0"]);
        assert!(is_cofibration_set(&mc5.i).unwrap());
        assert!(is_trivial_fibration_set(&mc5.pfib).unwrap());
        // operations at a tuple are the target's at the δ-image: the fold
        // sends everything onto the single object of Ξ(1)
        let cross = mc5.q_prime.entry(&Signature::unary("p-0", "q-0"));
        assert_eq!(cross.basis().len(), 1);
    }

    #[test]
    fn factoring_the_empty_inclusion_gives_the_identity_cover() {
        let f = xi_empty_into_one().unwrap();
        let mc5 = factorize_mc5(&f).unwrap();
        assert!(mc5.i.source.objects().is_empty());
        assert_eq!(mc5.q_prime.objects(), &["q-0"]);
        assert!(mc5.pfib.is_iso());
    }

    #[test]
    fn both_legs_verify_on_some_awkward_catalog_maps() {
        for f in [unit_into_truncation().unwrap(), xi_one_into_h().unwrap()] {
            let mc5 = factorize_mc5(&f).unwrap();
            assert!(is_cofibration_set(&mc5.i).unwrap());
            assert!(is_trivial_fibration_set(&mc5.pfib).unwrap());
        }
    }

    #[test]
    fn attaching_the_interval_to_the_point_reproduces_the_interval() {
        let p = xi_one().unwrap();
        let f = Multifunctor::identity(&p);
        let po = pushout_xi_h(&p, &f).unwrap();
        assert_eq!(po.q.objects(), &["0", "*"]);
        // one arrow in each direction: Q is Ξ(H) up to the object names
        let on_colors: BTreeMap<String, String> =
            [("0".to_string(), "0".to_string()), ("*".to_string(), "1".to_string())].into();
        let h = interval(Backend::Set, p.dim_bound()).unwrap();
        let mut on_entries = BTreeMap::new();
        for (sig, v) in po.q.ops().entries() {
            let mapped = Signature::new(
                sig.inputs.iter().map(|c| on_colors[c].clone()).collect(),
                on_colors[&sig.output].clone(),
            );
            let target = h.entry(&mapped);
            let image = target.basis().remove(0);
            on_entries.insert(sig.clone(), v.map_from_fn(&target, |_| Ok(image.clone())).unwrap());
        }
        let iso = Multifunctor::new(po.q.clone(), h, on_colors, on_entries).unwrap();
        assert!(iso.is_iso());
    }

    #[test]
    fn the_attached_object_is_isomorphic_to_its_anchor() {
        let p = z2_group().unwrap();
        let (fs, complete) = enumerate_multifunctors(&xi_one().unwrap(), &p, BUDGET).unwrap();
        assert!(complete);
        assert_eq!(fs.len(), 1, "the unit is forced, so only the anchor varies");
        let po = pushout_xi_h(&p, &fs[0]).unwrap();
        assert!(crate::model::objects_isomorphic(&po.q, "0", "*").unwrap());
        // the new hom-sets all copy the anchor's
        assert_eq!(po.q.entry(&Signature::unary("*", "*")).basis().len(), 2);
    }

    #[test]
    fn the_interval_pushout_is_couniversal_for_small_receivers() {
        let p = xi_h().unwrap();
        let f = xi_one_into_h().unwrap();
        let po = pushout_xi_h(&p, &f).unwrap();
        for r in [xi_one().unwrap(), xi_h().unwrap(), z2_group().unwrap()] {
            assert!(check_pushout_against(&po.j, &f, &po.k, &po.g, &r, BUDGET).unwrap());
        }
    }

    #[test]
    fn the_pushout_of_every_catalog_anchor_has_a_unique_mediator() {
        // small receivers keep the three hom-set enumerations tractable
        let receivers = [xi_one().unwrap(), z2_group().unwrap()];
        let point = xi_one().unwrap();
        for (name, p) in catalog_multicats().unwrap() {
            if p.objects().len() > 3 {
                continue;
            }
            let (anchors, complete) = enumerate_multifunctors(&point, &p, BUDGET).unwrap();
            assert!(complete, "{}", name);
            for f in &anchors {
                let po = pushout_xi_h(&p, f).unwrap();
                for r in &receivers {
                    assert!(
                        check_pushout_against(&po.j, f, &po.k, &po.g, r, BUDGET).unwrap(),
                        "{} fails couniversality",
                        name
                    );
                }
            }
        }
    }

    #[test]
    fn the_monoid_remark_counts_trees() {
        for k in 1usize..=3 {
            let names: Vec<String> = (0..k).map(|i| format!("x{}", i)).collect();
            let x = labels(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
            let s = vec!["0".to_string(), "0".to_string()];
            for (bound, expected) in [(0, 1), (1, 1 + k), (2, 1 + k + k * k)] {
                let p = pushforward_corolla(&s, &x, bound, 3).unwrap();
                let classes = p.classes_at(&Signature::unary("0", "0"));
                assert_eq!(classes.len(), expected, "k={} bound={}", k, bound);
            }
        }
    }

    #[test]
    fn identifying_two_inputs_doubles_the_tagged_entry() {
        let s: Vec<String> = ["out", "in", "in"].iter().map(|s| s.to_string()).collect();
        let x = labels(&["a", "b"]);
        let c = materialize_rigid(&relabelled_generators(&s, &x).unwrap(), 3).unwrap();
        // stabilizer of (in,in;out) is all of Σ₂, so both tags survive
        let sig = Signature::new(vec!["in".into(), "in".into()], "out".into());
        assert_eq!(c.entry(&sig).basis().len(), 4);
        let presented = pushforward_corolla(&s, &x, 1, 3).unwrap();
        assert_eq!(presented.classes_at(&sig).len(), 4);
    }

    #[test]
    fn the_relabelling_square_is_a_pushout_for_small_receivers() {
        let s: Vec<String> = ["out", "in", "in"].iter().map(|s| s.to_string()).collect();
        let x = labels(&["x"]);
        let y = labels(&["y"]);
        let km = x.map_from_fn(&y, |_| Ok(Elem::Set("y".into()))).unwrap();
        let sq = relabel_square(&s, &km, 3).unwrap();
        let receivers = [
            commutative_truncation(2, 3).unwrap(),
            corolla(2, &y, 3).unwrap(),
            xi_one().unwrap(),
        ];
        for r in &receivers {
            assert!(check_pushout_against(&sq.top, &sq.left, &sq.right, &sq.bottom, r, BUDGET)
                .unwrap());
        }
    }

    #[test]
    fn a_bijective_relabelling_is_an_equivalence_on_the_left_leg() {
        let s: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let x = labels(&["x", "y"]);
        let sq = relabel_square(&s, &EnrichMap::identity(&x), 3).unwrap();
        assert!(sq.left.is_iso());
        let verdict = crate::model::is_equivalence_set(&sq.left).unwrap();
        assert_eq!(verdict.weq, Verdict::Yes);
    }

    #[test]
    fn identifying_an_input_with_the_output_is_refused_rigidly() {
        let s: Vec<String> = ["0", "1", "0"].iter().map(|s| s.to_string()).collect();
        let x = labels(&["x"]);
        let err = relabel_square(&s, &EnrichMap::identity(&x), 3).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
        // but the presented pushforward handles it
        assert!(pushforward_corolla(&s, &x, 2, 3).is_ok());
    }
}
