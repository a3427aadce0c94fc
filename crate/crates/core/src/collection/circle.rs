//! Circle product of symmetric sequences. The arity-n entry sums, over r,
//! the coinvariants of K(r) (x) L^{(x)r}(n) under the diagonal Σ_r action;
//! the residual Σ_n action descends from the tensor powers.

use std::collections::BTreeMap;

use crate::enrich::{
    coproduct_elem, factor_through_quotient, quotient_by_action, split_coproduct_elem, Elem,
    EnrichMap, EnrichValue, TensorPair,
};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::tensor::SeqTensor;
use super::SymmetricSequence;

/// One summand of a circle entry: the undivided pair tensor, the projection
/// onto coinvariants, and the coinvariants themselves.
#[derive(Clone, Debug)]
pub struct CircleBlock {
    pub r: usize,
    pub pair: TensorPair,
    pub proj: EnrichMap,
    pub value: EnrichValue,
}

/// The circle product with its coordinate data.
#[derive(Clone, Debug)]
pub struct SeqCircle {
    pub k: SymmetricSequence,
    pub l: SymmetricSequence,
    pub seq: SymmetricSequence,
    pub powers: BTreeMap<usize, SeqTensor>,
    blocks: BTreeMap<usize, BTreeMap<usize, CircleBlock>>,
}

pub fn r_tag(r: usize) -> String {
    format!("r{}", r)
}

fn parse_r_tag(tag: &str) -> Result<usize> {
    tag.strip_prefix('r')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad circle tag {:?}", tag)))
}

pub fn circle(k: &SymmetricSequence, l: &SymmetricSequence, dim_bound: usize) -> Result<SeqCircle> {
    if k.backend() != l.backend() {
        return Err(Error::BackendMismatch { expected: k.backend(), found: l.backend() });
    }
    let backend = k.backend();
    let arity_bound = k.arity_bound().min(l.arity_bound());

    let mut powers = BTreeMap::new();
    let mut k_moves: BTreeMap<usize, BTreeMap<Perm, EnrichMap>> = BTreeMap::new();
    let mut phi_invs: BTreeMap<usize, BTreeMap<Perm, BTreeMap<usize, EnrichMap>>> = BTreeMap::new();
    for r in k.arities() {
        let power = SeqTensor::build(&vec![l.clone(); r], backend, arity_bound, dim_bound)?;
        let mut moves = BTreeMap::new();
        let mut phis = BTreeMap::new();
        for rho in Perm::all(r) {
            if rho.is_identity() {
                continue;
            }
            moves.insert(rho.clone(), k.sigma_map(r, &rho)?);
            phis.insert(rho.clone(), power.factor_permute_into(&power, &rho.inverse())?);
        }
        powers.insert(r, power);
        k_moves.insert(r, moves);
        phi_invs.insert(r, phis);
    }

    let mut blocks: BTreeMap<usize, BTreeMap<usize, CircleBlock>> = BTreeMap::new();
    for n in 0..=arity_bound {
        let mut at_n = BTreeMap::new();
        for r in k.arities() {
            let tv = powers[&r].seq.entry_or_initial(n);
            if tv.is_initial() {
                continue;
            }
            let pair = TensorPair::build(&k.entry_or_initial(r), &tv, dim_bound)?;
            // relation generators: (rho* k) (x) Phi(rho^-1) x ~ k (x) x
            let mut autos = Vec::new();
            for rho in Perm::all(r) {
                if rho.is_identity() {
                    continue;
                }
                let g = pair.map_into(&pair, &k_moves[&r][&rho], &phi_invs[&r][&rho][&n])?;
                autos.push(g);
            }
            let (value, proj) = quotient_by_action(&pair.value, &autos)?;
            at_n.insert(r, CircleBlock { r, pair, proj, value });
        }
        if !at_n.is_empty() {
            blocks.insert(n, at_n);
        }
    }

    let mut entries = BTreeMap::new();
    for (n, at_n) in &blocks {
        let parts: Vec<(String, &EnrichValue)> =
            at_n.iter().map(|(r, b)| (r_tag(*r), &b.value)).collect();
        entries.insert(*n, EnrichValue::coproduct(&parts)?);
    }
    let mut sigma = BTreeMap::new();
    for (&n, value) in &entries {
        for tau in Perm::all(n) {
            if tau.is_identity() {
                continue;
            }
            // the residual action commutes with the relation generators, so
            // it factors through each projection
            let mut descended: BTreeMap<usize, EnrichMap> = BTreeMap::new();
            for (&r, b) in &blocks[&n] {
                let t_act = powers[&r].seq.sigma_map(n, &tau)?;
                let id_k = EnrichMap::identity(&k.entry_or_initial(r));
                let pair_act = b.pair.map_into(&b.pair, &id_k, &t_act)?;
                let h = b.proj.compose(&pair_act)?;
                descended.insert(r, factor_through_quotient(&b.proj, &h)?);
            }
            let m = value.map_from_fn(value, |e| {
                let (tag, inner) = split_coproduct_elem(e)?;
                let r = parse_r_tag(&tag)?;
                Ok(coproduct_elem(&tag, &descended[&r].apply(&inner)?))
            })?;
            sigma.insert((n, tau), m);
        }
    }
    let seq = SymmetricSequence::new(backend, arity_bound, entries, sigma)?;
    Ok(SeqCircle { k: k.clone(), l: l.clone(), seq, powers, blocks })
}

impl SeqCircle {
    pub fn block(&self, n: usize, r: usize) -> Result<&CircleBlock> {
        self.blocks
            .get(&n)
            .and_then(|m| m.get(&r))
            .ok_or_else(|| Error::Invalid(format!("no circle block r={} at arity {}", r, n)))
    }

    /// The class of k (x) x with x in the r-th tensor power of L at arity n.
    pub fn encode(&self, n: usize, r: usize, kk: &Elem, x: &Elem) -> Result<Elem> {
        let b = self.block(n, r)?;
        let q = b.proj.apply(&b.pair.encode(kk, x)?)?;
        Ok(coproduct_elem(&r_tag(r), &q))
    }

    /// The stored orbit representative of a class: (r, k part, tensor part).
    pub fn decode_rep(&self, n: usize, e: &Elem) -> Result<(usize, Elem, Elem)> {
        let (tag, inner) = split_coproduct_elem(e)?;
        let r = parse_r_tag(&tag)?;
        let b = self.block(n, r)?;
        let (kk, x) = b.pair.decode(&inner)?;
        Ok((r, kk, x))
    }
}

fn is_circle_unit(s: &SymmetricSequence) -> bool {
    s.arities() == vec![1] && s.entry(1) == Some(&EnrichValue::unit(s.backend()))
}

/// The unit law K ∘ J ≅ K: the class of k (x) (sigma; *..*) maps to
/// sigma* k. Well defined because the relation shifts sigma and k together.
pub fn circle_unit_right_iso(c: &SeqCircle) -> Result<BTreeMap<usize, EnrichMap>> {
    if !is_circle_unit(&c.l) {
        return Err(Error::Invalid("right factor is not the circle unit".into()));
    }
    if c.seq.arities() != c.k.arities() {
        return Err(Error::Invalid("unit law arities do not match".into()));
    }
    let mut out = BTreeMap::new();
    for n in c.seq.arities() {
        let source = c.seq.entry_or_initial(n);
        let target = c.k.entry_or_initial(n);
        let m = source.map_from_fn(&target, |e| {
            let (r, kk, x) = c.decode_rep(n, e)?;
            if r != n {
                return Err(Error::Invalid("unit power at the wrong arity".into()));
            }
            let (_, rep, _) = c.powers[&r].decode(n, &x)?;
            c.k.sigma_apply(n, &rep, &kk)
        })?;
        if !m.is_iso() {
            return Err(Error::Invalid(format!("unit law fails at arity {}", n)));
        }
        out.insert(n, m);
    }
    Ok(out)
}

/// The unit law J ∘ K ≅ K: only r = 1 contributes, and the single tensor
/// factor is the value.
pub fn circle_unit_left_iso(c: &SeqCircle) -> Result<BTreeMap<usize, EnrichMap>> {
    if !is_circle_unit(&c.k) {
        return Err(Error::Invalid("left factor is not the circle unit".into()));
    }
    if c.seq.arities() != c.l.arities() {
        return Err(Error::Invalid("unit law arities do not match".into()));
    }
    let mut out = BTreeMap::new();
    for n in c.seq.arities() {
        let source = c.seq.entry_or_initial(n);
        let target = c.l.entry_or_initial(n);
        let m = source.map_from_fn(&target, |e| {
            let (r, _, x) = c.decode_rep(n, e)?;
            if r != 1 {
                return Err(Error::Invalid("unit circle block with r != 1".into()));
            }
            let (_, _, coords) = c.powers[&1].decode(n, &x)?;
            Ok(coords[0].clone())
        })?;
        if !m.is_iso() {
            return Err(Error::Invalid(format!("unit law fails at arity {}", n)));
        }
        out.insert(n, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::{equivariant_iso_search, is_equivariant_family};
    use crate::enrich::finset::FinSetObj;
    use crate::enrich::Backend;

    fn set(labels: &[&str]) -> EnrichValue {
        EnrichValue::Set(FinSetObj::from_labels(labels))
    }

    fn conc(n: usize, labels: &[&str]) -> SymmetricSequence {
        SymmetricSequence::concentrated_trivial(Backend::Set, 4, n, set(labels)).unwrap()
    }

    /// A sequence with a constant, a unary, and a binary entry.
    fn mixed() -> SymmetricSequence {
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        let swap = Perm::new(vec![1, 0]).unwrap();
        let mut entries = BTreeMap::new();
        entries.insert(0, set(&["z"]));
        entries.insert(2, g2.entry(2).unwrap().clone());
        let mut sigma = BTreeMap::new();
        sigma.insert((2, swap.clone()), g2.sigma_map(2, &swap).unwrap());
        SymmetricSequence::new(Backend::Set, 4, entries, sigma).unwrap()
    }

    #[test]
    fn circle_unit_laws() {
        let j = SymmetricSequence::circle_unit(Backend::Set, 4);
        let k = mixed();
        let kj = circle(&k, &j, 3).unwrap();
        let iso = circle_unit_right_iso(&kj).unwrap();
        assert!(is_equivariant_family(&kj.seq, &k, &iso).unwrap());
        let jk = circle(&j, &k, 3).unwrap();
        let iso = circle_unit_left_iso(&jk).unwrap();
        assert!(is_equivariant_family(&jk.seq, &k, &iso).unwrap());
    }

    #[test]
    fn circle_entry_sizes() {
        // K has a unary and a binary operation, M a constant and a unary one:
        // sizes of (K ∘ M)(n) for n = 0,1,2 are 2,2,1
        let mut k_entries = BTreeMap::new();
        k_entries.insert(1, set(&["a"]));
        k_entries.insert(2, set(&["m"]));
        let mut sigma = BTreeMap::new();
        let swap = Perm::new(vec![1, 0]).unwrap();
        sigma.insert((2, swap), EnrichMap::identity(&set(&["m"])));
        let k = SymmetricSequence::new(Backend::Set, 4, k_entries, sigma).unwrap();
        let mut m_entries = BTreeMap::new();
        m_entries.insert(0, set(&["c"]));
        m_entries.insert(1, set(&["x"]));
        let m = SymmetricSequence::new(Backend::Set, 4, m_entries, BTreeMap::new()).unwrap();
        let km = circle(&k, &m, 3).unwrap();
        assert_eq!(km.seq.arities(), vec![0, 1, 2]);
        assert_eq!(km.seq.entry(0).unwrap().basis().len(), 2);
        assert_eq!(km.seq.entry(1).unwrap().basis().len(), 2);
        assert_eq!(km.seq.entry(2).unwrap().basis().len(), 1);
    }

    #[test]
    fn constants_compose_through_r_zero() {
        let k = mixed();
        let l = conc(1, &["x"]);
        let kl = circle(&k, &l, 3).unwrap();
        // the constant of K survives as the r = 0 block
        assert_eq!(kl.seq.entry(0).unwrap().basis().len(), 1);
        let e = &kl.seq.entry(0).unwrap().basis()[0];
        let (r, kk, _) = kl.decode_rep(0, e).unwrap();
        assert_eq!(r, 0);
        assert_eq!(kk.label(), "z");
    }

    #[test]
    fn circle_is_associative_up_to_equivariant_iso() {
        let mut k_entries = BTreeMap::new();
        k_entries.insert(1, set(&["a"]));
        k_entries.insert(2, set(&["m"]));
        let mut sigma = BTreeMap::new();
        let swap = Perm::new(vec![1, 0]).unwrap();
        sigma.insert((2, swap), EnrichMap::identity(&set(&["m"])));
        let k = SymmetricSequence::new(Backend::Set, 4, k_entries, sigma).unwrap();
        let l = k.clone();
        let mut m_entries = BTreeMap::new();
        m_entries.insert(0, set(&["c"]));
        m_entries.insert(1, set(&["x"]));
        let m = SymmetricSequence::new(Backend::Set, 4, m_entries, BTreeMap::new()).unwrap();

        let kl_m = circle(&circle(&k, &l, 3).unwrap().seq, &m, 3).unwrap();
        let k_lm = circle(&k, &circle(&l, &m, 3).unwrap().seq, 3).unwrap();
        let sizes = |s: &SymmetricSequence| -> Vec<(usize, usize)> {
            s.arities().into_iter().map(|n| (n, s.entry_or_initial(n).basis().len())).collect()
        };
        assert_eq!(sizes(&kl_m.seq), sizes(&k_lm.seq));
        let iso = equivariant_iso_search(&kl_m.seq, &k_lm.seq).unwrap();
        assert!(iso.is_some(), "no equivariant isomorphism between the two bracketings");
    }

    #[test]
    fn residual_action_descends() {
        // the swap action on (K ∘ M)(2) from circle_entry_sizes is trivial
        // on the single class
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        let l = conc(1, &["x", "y"]);
        let c = circle(&g2, &l, 3).unwrap();
        // (G2 ∘ L)(2) = [2 (x) 2x2x2... ] quotient: |G2(2)|*|L(1)|^2*2/2 = 8
        assert_eq!(c.seq.entry(2).unwrap().basis().len(), 8);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let m = c.seq.sigma_map(2, &swap).unwrap();
        assert!(m.is_iso());
        let double = m.compose(&m).unwrap();
        assert_eq!(double, EnrichMap::identity(c.seq.entry(2).unwrap()));
    }
}
