//! Stock multicategories: one-object truncations, the category
//! multicategory of a fixed object set, the two-level morphism
//! multicategory, and symmetrization of a planar multicategory.

use std::collections::BTreeMap;

use crate::collection::{parse_perm_tag, perm_tag, symmetrize, Collection, Signature};
use crate::enrich::finset::FinSetObj;
use crate::enrich::{coproduct_elem, split_coproduct_elem, Backend, Elem, EnrichMap, EnrichValue};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::{Multicategory, Multifunctor};

fn one_object_truncation(
    arity_bound: usize,
    dim_bound: usize,
    symmetric: bool,
) -> Result<Multicategory> {
    let color = "a".to_string();
    let mut entries = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    for n in 0..=arity_bound {
        let sig = Signature::new(vec![color.clone(); n], color.clone());
        let v = EnrichValue::Set(FinSetObj::from_labels(&[&format!("m{}", n)]));
        for p in Perm::all(n) {
            if !p.is_identity() {
                sigma.insert((sig.clone(), p), EnrichMap::identity(&v));
            }
        }
        entries.insert(sig, v);
    }
    let unit_sig = Signature::unary(&color, &color);
    let point = EnrichValue::unit(Backend::Set)
        .map_from_fn(&entries[&unit_sig], |_| Ok(Elem::Set("m1".into())))?;
    let ops = Collection::new(
        Backend::Set,
        vec![color.clone()],
        arity_bound,
        entries,
        if symmetric { Some(sigma) } else { None },
        Some([(color, point)].into()),
    )?;
    Multicategory::from_comp_fn(ops, dim_bound, |col, pair, _, composed| {
        let target = col.entry_or_initial(composed).into_owned();
        pair.value.map_from_fn(&target, |_| Ok(Elem::Set(format!("m{}", composed.arity()))))
    })
}

/// One object, one operation in every arity, trivial action.
pub fn commutative_truncation(arity_bound: usize, dim_bound: usize) -> Result<Multicategory> {
    one_object_truncation(arity_bound, dim_bound, true)
}

/// The planar version: no action at all.
pub fn associative_truncation(arity_bound: usize, dim_bound: usize) -> Result<Multicategory> {
    one_object_truncation(arity_bound, dim_bound, false)
}

pub fn pair_color(x: &str, y: &str) -> String {
    format!("{}-{}", x, y)
}

/// The planar multicategory whose algebras are categories with the given
/// object set: objects are ordered pairs, and an operation exists exactly
/// when the inputs chain from the source to the target of the output pair.
pub fn build_cat_s(s: &[&str], arity_bound: usize, dim_bound: usize) -> Result<Multicategory> {
    if s.is_empty() {
        return Err(Error::Invalid("the object set must be nonempty".into()));
    }
    let mut colors = Vec::new();
    for x in s {
        for y in s {
            colors.push(pair_color(x, y));
        }
    }
    let mut entries = BTreeMap::new();
    // a chain of length n is a choice of n+1 objects
    let mut word = vec![0usize; 1];
    loop {
        let n = word.len() - 1;
        let inputs: Vec<String> =
            (0..n).map(|i| pair_color(s[word[i]], s[word[i + 1]])).collect();
        let output = pair_color(s[word[0]], s[word[n]]);
        entries.insert(
            Signature::new(inputs, output),
            EnrichValue::Set(FinSetObj::from_labels(&["ch"])),
        );
        // next word, growing through the lengths
        let mut j = 0;
        loop {
            if j == word.len() {
                word = vec![0; word.len() + 1];
                break;
            }
            word[j] += 1;
            if word[j] < s.len() {
                break;
            }
            word[j] = 0;
            j += 1;
        }
        if word.len() > arity_bound + 1 {
            break;
        }
    }
    let mut points = BTreeMap::new();
    for c in &colors {
        let sig = Signature::unary(c, c);
        points.insert(
            c.clone(),
            EnrichValue::unit(Backend::Set).map_from_fn(&entries[&sig], |_| Ok(Elem::Set("ch".into())))?,
        );
    }
    let ops = Collection::new(Backend::Set, colors, arity_bound, entries, None, Some(points))?;
    Multicategory::from_comp_fn(ops, dim_bound, |col, pair, _, composed| {
        let target = col.entry_or_initial(composed).into_owned();
        pair.value.map_from_fn(&target, |_| Ok(Elem::Set("ch".into())))
    })
}

/// The two-level morphism multicategory of a one-object multicategory:
/// an operation exists over levels i⃗ → i exactly when every input level
/// is at most the output level, and is the corresponding operation of P.
pub fn build_p_one(p: &Multicategory) -> Result<Multicategory> {
    if p.objects().len() != 1 {
        return Err(Error::NotApplicable("the base must have one object".into()));
    }
    let a = p.objects()[0].clone();
    let base_sig = |n: usize| Signature::new(vec![a.clone(); n], a.clone());
    let levels = ["0".to_string(), "1".to_string()];
    let keep = |sig: &Signature| sig.inputs.iter().all(|x| x <= &sig.output);
    let mut sigs = Vec::new();
    let mut stack: Vec<Vec<String>> = vec![Vec::new()];
    while let Some(inputs) = stack.pop() {
        if inputs.len() < p.arity_bound() {
            for l in &levels {
                let mut next = inputs.clone();
                next.push(l.clone());
                stack.push(next);
            }
        }
        for out in &levels {
            let sig = Signature::new(inputs.clone(), out.clone());
            if keep(&sig) {
                sigs.push(sig);
            }
        }
    }
    let mut entries = BTreeMap::new();
    for sig in &sigs {
        let v = p.entry(&base_sig(sig.arity()));
        if !v.is_initial() {
            entries.insert(sig.clone(), v);
        }
    }
    let sigma = if p.ops().has_sigma() {
        let mut table = BTreeMap::new();
        for sig in entries.keys() {
            for perm in Perm::all(sig.arity()) {
                if perm.is_identity() {
                    continue;
                }
                table.insert(
                    (sig.clone(), perm.clone()),
                    p.ops().sigma_map(&base_sig(sig.arity()), &perm)?,
                );
            }
        }
        Some(table)
    } else {
        None
    };
    let mut points = BTreeMap::new();
    for l in &levels {
        points.insert(l.clone(), p.ops().point(&a)?.clone());
    }
    let ops = Collection::new(
        p.backend(),
        levels.to_vec(),
        p.arity_bound(),
        entries,
        sigma,
        Some(points),
    )?;
    let mut comp = BTreeMap::new();
    for key in Multicategory::required_comp_keys(&ops) {
        let pkey = (base_sig(key.0.arity()), key.1, base_sig(key.2.arity()));
        comp.insert(key, p.comp_map(&pkey)?.clone());
    }
    Multicategory::new(ops, comp, p.dim_bound())
}

/// Symmetrizes a planar multicategory. Entries become coproducts over all
/// permutations; composition composes the underlying planar operations and
/// grafts the permutation tags. Returns the inclusion at identity tags.
pub fn symmetrize_multicat(p: &Multicategory) -> Result<(Multicategory, Multifunctor)> {
    if p.ops().has_sigma() {
        return Err(Error::NotApplicable("already symmetric".into()));
    }
    let (sops, unit) = symmetrize(p.ops())?;
    let mut points = BTreeMap::new();
    for c in p.objects() {
        let sig = Signature::unary(c, c);
        let target = sops.entry_or_initial(&sig).into_owned();
        let id_tag = perm_tag(&Perm::identity(1));
        let base = p.ops().point(c)?.clone();
        points.insert(
            c.clone(),
            EnrichValue::unit(p.backend()).map_from_fn(&target, |e| {
                Ok(coproduct_elem(&id_tag, &base.apply(e)?))
            })?,
        );
    }
    let sops = sops.with_points(points)?;
    let symmetrized = Multicategory::from_comp_fn(sops, p.dim_bound(), |col, pair, key, composed| {
        let (sig_s, i, sig_t) = key;
        let n = sig_s.arity();
        let k = sig_t.arity();
        let target = col.entry_or_initial(composed).into_owned();
        pair.value.map_from_fn(&target, |e| {
            let (phi, psi) = pair.decode(e)?;
            let (ptag, phi_in) = split_coproduct_elem(&phi)?;
            let (qtag, psi_in) = split_coproduct_elem(&psi)?;
            let pp = parse_perm_tag(&ptag)?;
            let qq = parse_perm_tag(&qtag)?;
            let s_planar = sig_s.act(&pp.inverse());
            let t_planar = sig_t.act(&qq.inverse());
            let slot = pp.apply(i - 1) + 1;
            let (_, inner) = p.compose_at(&s_planar, &phi_in, slot, &t_planar, &psi_in)?;
            let rho = Perm::expand_at(&pp, i - 1, k).compose(&Perm::block_at(&qq, i - 1, n));
            Ok(coproduct_elem(&perm_tag(&rho), &inner))
        })
    })?;
    let include = Multifunctor::new(
        p.clone(),
        symmetrized.clone(),
        unit.on_colors.clone(),
        unit.on_entries.clone(),
    )?;
    Ok((symmetrized, include))
}
