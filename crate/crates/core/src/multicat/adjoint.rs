//! Categories as unary multicategories: the embedding, the underlying
//! category, the adjunction between them, and pullback along an object map.

use std::collections::{BTreeMap, BTreeSet};

use crate::collection::{Collection, Signature};
use crate::enrich::finset::FinSetObj;
use crate::enrich::{Backend, Elem, EnrichMap, EnrichValue};
use crate::error::{Error, Result};

use super::{enumerate_multifunctors, Multicategory, Multifunctor};

/// Assembles a finite category as a unary multicategory over FinSet.
/// Identities are implicit (labeled `1_x`); only composites of two
/// non-identity arrows need rules.
pub struct CategoryBuilder {
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    rules: BTreeMap<(String, String), String>,
}

impl CategoryBuilder {
    pub fn new(objects: &[&str]) -> CategoryBuilder {
        CategoryBuilder {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
            rules: BTreeMap::new(),
        }
    }

    pub fn arrow(&mut self, label: &str, src: &str, tgt: &str) -> &mut CategoryBuilder {
        self.arrows.push((label.to_string(), src.to_string(), tgt.to_string()));
        self
    }

    /// Declares g ∘ f = gf for non-identity arrows.
    pub fn rule(&mut self, g: &str, f: &str, gf: &str) -> &mut CategoryBuilder {
        self.rules.insert((g.to_string(), f.to_string()), gf.to_string());
        self
    }

    pub fn unit_label(object: &str) -> String {
        format!("1_{}", object)
    }

    pub fn build(&self, arity_bound: usize, dim_bound: usize) -> Result<Multicategory> {
        let mut all = self.arrows.clone();
        let mut unit_labels = BTreeSet::new();
        for o in &self.objects {
            let u = CategoryBuilder::unit_label(o);
            unit_labels.insert(u.clone());
            all.push((u, o.clone(), o.clone()));
        }
        let mut by_sig: BTreeMap<Signature, Vec<String>> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (label, src, tgt) in &all {
            if !seen.insert(label.clone()) {
                return Err(Error::Invalid(format!("duplicate arrow label {:?}", label)));
            }
            by_sig.entry(Signature::unary(src, tgt)).or_default().push(label.clone());
        }
        let entries: BTreeMap<Signature, EnrichValue> = by_sig
            .iter()
            .map(|(sig, labels)| {
                Ok((sig.clone(), EnrichValue::Set(FinSetObj::new(labels.iter().cloned())?)))
            })
            .collect::<Result<_>>()?;
        let mut points = BTreeMap::new();
        for o in &self.objects {
            let unit = EnrichValue::unit(Backend::Set);
            let target = entries[&Signature::unary(o, o)].clone();
            let label = CategoryBuilder::unit_label(o);
            points.insert(o.clone(), unit.map_from_fn(&target, |_| Ok(Elem::Set(label.clone())))?);
        }
        let ops = Collection::new(
            Backend::Set,
            self.objects.clone(),
            arity_bound,
            entries,
            Some(BTreeMap::new()),
            Some(points),
        )?;
        let rules = self.rules.clone();
        Multicategory::from_comp_fn(ops, dim_bound, move |col, pair, key, composed| {
            let target = col.entry_or_initial(composed).into_owned();
            pair.value.map_from_fn(&target, |e| {
                let (g, f) = pair.decode(e)?;
                let (g, f) = match (g, f) {
                    (Elem::Set(g), Elem::Set(f)) => (g, f),
                    _ => return Err(Error::Invalid("category entries must be sets".into())),
                };
                let gf = if unit_labels.contains(&f) {
                    g
                } else if unit_labels.contains(&g) {
                    f
                } else {
                    rules
                        .get(&(g.clone(), f.clone()))
                        .cloned()
                        .ok_or_else(|| Error::Invalid(format!("no rule for {} after {}", g, f)))?
                };
                let _ = key;
                Ok(Elem::Set(gf))
            })
        })
    }
}

fn rebuild_ops(
    template: &Collection,
    keep: impl Fn(&Signature) -> bool,
    arity_bound: usize,
) -> Result<Collection> {
    let entries: BTreeMap<Signature, EnrichValue> = template
        .entries()
        .iter()
        .filter(|(sig, _)| keep(sig))
        .map(|(sig, v)| (sig.clone(), v.clone()))
        .collect();
    let sigma = template.sigma_table().map(|table| {
        table
            .iter()
            .filter(|((sig, _), _)| keep(sig))
            .map(|(k, m)| (k.clone(), m.clone()))
            .collect()
    });
    let points = if template.is_pointed() {
        let mut out = BTreeMap::new();
        for c in template.colors() {
            out.insert(c.clone(), template.point(c)?.clone());
        }
        Some(out)
    } else {
        None
    };
    Collection::new(
        template.backend(),
        template.colors().to_vec(),
        arity_bound,
        entries,
        sigma,
        points,
    )
}

/// Ξ: reads a category (a multicategory concentrated in arity one) as a
/// multicategory with the given arity bound.
pub fn xi(c: &Multicategory, arity_bound: usize) -> Result<Multicategory> {
    if !c.is_category() {
        return Err(Error::NotApplicable("not concentrated in arity one".into()));
    }
    if arity_bound == 0 {
        return Err(Error::Invalid("arity bound must admit unary operations".into()));
    }
    let ops = rebuild_ops(c.ops(), |_| true, arity_bound)?;
    Multicategory::new(ops, c.comp().clone(), c.dim_bound())
}

/// [−]₁: the underlying category, keeping only unary operations.
pub fn underlying_cat(p: &Multicategory) -> Result<Multicategory> {
    let ops = rebuild_ops(p.ops(), |sig| sig.arity() == 1, 1)?;
    let comp = p
        .comp()
        .iter()
        .filter(|((s, _, t), _)| s.arity() == 1 && t.arity() == 1)
        .map(|(k, m)| (k.clone(), m.clone()))
        .collect();
    Multicategory::new(ops, comp, p.dim_bound())
}

fn identity_on_entries(p: &Multicategory) -> BTreeMap<Signature, EnrichMap> {
    p.ops()
        .entries()
        .iter()
        .map(|(sig, v)| (sig.clone(), EnrichMap::identity(v)))
        .collect()
}

fn identity_on_colors(p: &Multicategory) -> BTreeMap<String, String> {
    p.objects().iter().map(|c| (c.clone(), c.clone())).collect()
}

/// The counit Ξ[P]₁ → P of the adjunction.
pub fn counit_xi(p: &Multicategory) -> Result<Multifunctor> {
    let c = underlying_cat(p)?;
    let xc = xi(&c, p.arity_bound())?;
    let on_entries = identity_on_entries(&xc);
    Multifunctor::new(xc.clone(), p.clone(), identity_on_colors(&xc), on_entries)
}

/// The unit C → [ΞC]₁ of the adjunction.
pub fn unit_xi(c: &Multicategory, arity_bound: usize) -> Result<Multifunctor> {
    let back = underlying_cat(&xi(c, arity_bound)?)?;
    let on_entries = identity_on_entries(c);
    Multifunctor::new(c.clone(), back, identity_on_colors(c), on_entries)
}

/// Applies Ξ to a functor between categories.
pub fn functor_xi(f: &Multifunctor, arity_bound: usize) -> Result<Multifunctor> {
    Multifunctor::new(
        xi(&f.source, arity_bound)?,
        xi(&f.target, arity_bound)?,
        f.map.on_colors.clone(),
        f.map.on_entries.clone(),
    )
}

/// Applies [−]₁ to a multifunctor.
pub fn functor_underlying(f: &Multifunctor) -> Result<Multifunctor> {
    let on_entries = f
        .map
        .on_entries
        .iter()
        .filter(|(sig, _)| sig.arity() == 1)
        .map(|(sig, m)| (sig.clone(), m.clone()))
        .collect();
    Multifunctor::new(
        underlying_cat(&f.source)?,
        underlying_cat(&f.target)?,
        f.map.on_colors.clone(),
        on_entries,
    )
}

#[derive(Clone, Debug)]
pub struct XiAdjunctionReport {
    pub left_count: usize,
    pub right_count: usize,
    pub bijection: bool,
    pub complete: bool,
    pub triangle_xi: bool,
    pub triangle_underlying: bool,
}

impl XiAdjunctionReport {
    pub fn ok(&self) -> bool {
        self.bijection && self.complete && self.triangle_xi && self.triangle_underlying
    }
}

/// Checks Hom(ΞC, P) ≅ Hom(C, [P]₁) by restriction, plus both triangle
/// identities, with everything enumerated within the budget.
pub fn check_xi_adjunction(
    c: &Multicategory,
    p: &Multicategory,
    budget: usize,
) -> Result<XiAdjunctionReport> {
    let xc = xi(c, p.arity_bound())?;
    let up = underlying_cat(p)?;
    let (left, complete_l) = enumerate_multifunctors(&xc, p, budget)?;
    let (right, complete_r) = enumerate_multifunctors(c, &up, budget)?;
    let mut restricted = Vec::new();
    for f in &left {
        let on_entries = f
            .map
            .on_entries
            .iter()
            .filter(|(sig, _)| c.ops().entries().contains_key(sig))
            .map(|(sig, m)| (sig.clone(), m.clone()))
            .collect();
        restricted.push(Multifunctor::new(
            c.clone(),
            up.clone(),
            f.map.on_colors.clone(),
            on_entries,
        )?);
    }
    let keys = |f: &Multifunctor| (f.map.on_colors.clone(), f.map.on_entries.clone());
    let restricted_keys: BTreeSet<_> = restricted.iter().map(&keys).collect();
    let right_keys: BTreeSet<_> = right.iter().map(&keys).collect();
    let bijection = restricted_keys.len() == left.len() && restricted_keys == right_keys;

    // Ξη ; counit = id on ΞC
    let eta = unit_xi(c, p.arity_bound())?;
    let xeta = functor_xi(&eta, p.arity_bound())?;
    let counit_xc = counit_xi(&xc)?;
    let triangle_xi = counit_xc.compose(&xeta)? == Multifunctor::identity(&xc);

    // η on [P]₁ ; [counit] = id on [P]₁
    let eta_up = unit_xi(&up, p.arity_bound())?;
    let under_counit = functor_underlying(&counit_xi(p)?)?;
    let triangle_underlying = under_counit.compose(&eta_up)? == Multifunctor::identity(&up);

    Ok(XiAdjunctionReport {
        left_count: left.len(),
        right_count: right.len(),
        bijection,
        complete: complete_l && complete_r,
        triangle_xi,
        triangle_underlying,
    })
}

/// f*P: the pullback of a multicategory along a map of object sets, with
/// the projection multifunctor.
pub fn pullback(
    objects: &[String],
    f: &BTreeMap<String, String>,
    p: &Multicategory,
) -> Result<(Multicategory, Multifunctor)> {
    for o in objects {
        let img = f.get(o).ok_or_else(|| Error::Invalid(format!("no image for object {:?}", o)))?;
        if !p.objects().contains(img) {
            return Err(Error::Invalid(format!("image {:?} is not an object", img)));
        }
    }
    let push = |sig: &Signature| -> Result<Signature> {
        let mut inputs = Vec::with_capacity(sig.arity());
        for x in &sig.inputs {
            inputs.push(f[x].clone());
        }
        Ok(Signature::new(inputs, f[&sig.output].clone()))
    };
    // enumerate signatures over the new objects with nonempty image entries
    let mut sigs = vec![];
    let mut stack: Vec<Vec<String>> = vec![Vec::new()];
    while let Some(inputs) = stack.pop() {
        if inputs.len() < p.arity_bound() {
            for o in objects {
                let mut next = inputs.clone();
                next.push(o.clone());
                stack.push(next);
            }
        }
        for out in objects {
            sigs.push(Signature::new(inputs.clone(), out.clone()));
        }
    }
    let mut entries = BTreeMap::new();
    for sig in &sigs {
        let v = p.entry(&push(sig)?);
        if !v.is_initial() {
            entries.insert(sig.clone(), v);
        }
    }
    let sigma = if p.ops().has_sigma() {
        let mut table = BTreeMap::new();
        for sig in entries.keys() {
            for perm in crate::perm::Perm::all(sig.arity()) {
                if perm.is_identity() {
                    continue;
                }
                table.insert((sig.clone(), perm.clone()), p.ops().sigma_map(&push(sig)?, &perm)?);
            }
        }
        Some(table)
    } else {
        None
    };
    let points = {
        let mut out = BTreeMap::new();
        for o in objects {
            out.insert(o.clone(), p.ops().point(&f[o])?.clone());
        }
        Some(out)
    };
    let ops = Collection::new(
        p.backend(),
        objects.to_vec(),
        p.arity_bound(),
        entries,
        sigma,
        points,
    )?;
    let mut comp = BTreeMap::new();
    for key in Multicategory::required_comp_keys(&ops) {
        let pkey = (push(&key.0)?, key.1, push(&key.2)?);
        comp.insert(key, p.comp_map(&pkey)?.clone());
    }
    let pulled = Multicategory::new(ops, comp, p.dim_bound())?;
    let on_colors: BTreeMap<String, String> =
        objects.iter().map(|o| (o.clone(), f[o].clone())).collect();
    let on_entries = pulled
        .ops()
        .entries()
        .iter()
        .map(|(sig, v)| (sig.clone(), EnrichMap::identity(v)))
        .collect();
    let proj = Multifunctor::new(pulled.clone(), p.clone(), on_colors, on_entries)?;
    Ok((pulled, proj))
}
