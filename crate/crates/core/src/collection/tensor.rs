//! Tensor of symmetric sequences. The arity-n entry of a tensor of r
//! sequences is the induced module along Σ_{n_1} x .. x Σ_{n_r} <= Σ_n,
//! summed over compositions; elements are stored in canonical form
//! (coset representative; local coordinates).

use std::collections::BTreeMap;

use crate::enrich::{coproduct_elem, split_coproduct_elem, Backend, Elem, EnrichMap, EnrichValue, MultiTensor};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::SymmetricSequence;

/// Ordered compositions of `n` into `r` nonnegative parts.
pub fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for rest in compositions(n - first, r - 1) {
            let mut c = Vec::with_capacity(r);
            c.push(first);
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

fn offsets(comp: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(comp.len());
    let mut acc = 0;
    for &c in comp {
        off.push(acc);
        acc += c;
    }
    off
}

fn k_subsets(xs: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if xs.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for rest in k_subsets(&xs[i + 1..], k - 1) {
            let mut s = Vec::with_capacity(k);
            s.push(x);
            s.extend(rest);
            out.push(s);
        }
    }
    out
}

/// Canonical representatives of the cosets Σ_n / (Σ_{n_1} x .. x Σ_{n_r}):
/// the permutations sending each block's preimage to its span in increasing
/// order. There are n!/(n_1!..n_r!) of them.
pub fn coset_reps(comp: &[usize]) -> Vec<Perm> {
    let n: usize = comp.iter().sum();
    fn rec(comp: &[usize], block: usize, off: usize, avail: &[usize], imgs: &mut [usize], out: &mut Vec<Perm>) {
        if block == comp.len() {
            out.push(Perm::new(imgs.to_vec()).expect("constructed a permutation"));
            return;
        }
        let k = comp[block];
        for subset in k_subsets(avail, k) {
            for (t, &v) in subset.iter().enumerate() {
                imgs[v] = off + t;
            }
            let rest: Vec<usize> = avail.iter().copied().filter(|v| !subset.contains(v)).collect();
            rec(comp, block + 1, off + k, &rest, imgs, out);
        }
    }
    let avail: Vec<usize> = (0..n).collect();
    let mut imgs = vec![0usize; n];
    let mut out = Vec::new();
    rec(comp, 0, 0, &avail, &mut imgs, &mut out);
    out
}

/// Rewrites (sigma; a) into canonical form: returns the coset representative
/// and the block permutations to push into the coordinates. sigma factors as
/// h . rep with h block diagonal, and (h.rep; a) ~ (rep; h*a).
pub fn canonicalize(comp: &[usize], sigma: &Perm) -> Result<(Perm, Vec<Perm>)> {
    let n = sigma.degree();
    if comp.iter().sum::<usize>() != n {
        return Err(Error::Invalid("composition does not sum to the degree".into()));
    }
    let off = offsets(comp);
    let mut imgs = vec![0usize; n];
    for (i, &ni) in comp.iter().enumerate() {
        let span = off[i]..off[i] + ni;
        let pre: Vec<usize> = (0..n).filter(|&v| span.contains(&sigma.apply(v))).collect();
        for (t, &v) in pre.iter().enumerate() {
            imgs[v] = off[i] + t;
        }
    }
    let rep = Perm::new(imgs).ok_or_else(|| Error::Invalid("canonicalization failed".into()))?;
    let h = sigma.compose(&rep.inverse());
    let mut alphas = Vec::with_capacity(comp.len());
    for (i, &ni) in comp.iter().enumerate() {
        let a: Vec<usize> = (0..ni).map(|t| h.apply(off[i] + t) - off[i]).collect();
        alphas.push(
            Perm::new(a).ok_or_else(|| Error::Invalid("transport is not block diagonal".into()))?,
        );
    }
    Ok((rep, alphas))
}

/// Coproduct tag of the block at a composition and coset representative.
pub fn block_tag(comp: &[usize], rep: &Perm) -> String {
    let c: Vec<String> = comp.iter().map(|x| x.to_string()).collect();
    let s: Vec<String> = rep.one_line().iter().map(|x| x.to_string()).collect();
    format!("c{}s{}", c.join("-"), s.join("-"))
}

pub fn parse_block_tag(tag: &str) -> Result<(Vec<usize>, Perm)> {
    let bad = || Error::Parse(format!("bad tensor block tag {:?}", tag));
    let body = tag.strip_prefix('c').ok_or_else(bad)?;
    let (comp_part, rep_part) = body.split_once('s').ok_or_else(bad)?;
    let mut comp = Vec::new();
    if !comp_part.is_empty() {
        for p in comp_part.split('-') {
            comp.push(p.parse::<usize>().map_err(|_| bad())?);
        }
    }
    let mut one_line = Vec::new();
    if !rep_part.is_empty() {
        for p in rep_part.split('-') {
            one_line.push(p.parse::<usize>().map_err(|_| bad())?);
        }
    }
    let rep = Perm::from_one_line(&one_line).ok_or_else(bad)?;
    if comp.iter().sum::<usize>() != rep.degree() {
        return Err(bad());
    }
    Ok((comp, rep))
}

/// One direct summand of a tensor entry: the factor entries at a fixed
/// composition, tensored, indexed by a coset representative.
#[derive(Clone, Debug)]
pub struct TensorBlock {
    pub comp: Vec<usize>,
    pub rep: Perm,
    pub tag: String,
    pub inner: MultiTensor,
}

/// A tensor of symmetric sequences with its coordinate data.
#[derive(Clone, Debug)]
pub struct SeqTensor {
    pub factors: Vec<SymmetricSequence>,
    pub seq: SymmetricSequence,
    pub dim_bound: usize,
    blocks: BTreeMap<usize, BTreeMap<String, TensorBlock>>,
}

impl SeqTensor {
    pub fn build(
        factors: &[SymmetricSequence],
        backend: Backend,
        arity_bound: usize,
        dim_bound: usize,
    ) -> Result<SeqTensor> {
        for f in factors {
            if f.backend() != backend {
                return Err(Error::BackendMismatch { expected: backend, found: f.backend() });
            }
        }
        let r = factors.len();
        let mut blocks: BTreeMap<usize, BTreeMap<String, TensorBlock>> = BTreeMap::new();
        for n in 0..=arity_bound {
            let mut at_n: BTreeMap<String, TensorBlock> = BTreeMap::new();
            for comp in compositions(n, r) {
                let mut inner_values = Vec::with_capacity(r);
                let mut skip = false;
                for (i, &ni) in comp.iter().enumerate() {
                    let v = factors[i].entry_or_initial(ni);
                    if v.is_initial() {
                        skip = true;
                        break;
                    }
                    inner_values.push(v);
                }
                if skip {
                    continue;
                }
                let inner = MultiTensor::build(&inner_values, backend, dim_bound)?;
                if inner.value.is_initial() {
                    continue;
                }
                for rep in coset_reps(&comp) {
                    let tag = block_tag(&comp, &rep);
                    at_n.insert(tag.clone(), TensorBlock { comp: comp.clone(), rep, tag, inner: inner.clone() });
                }
            }
            if !at_n.is_empty() {
                blocks.insert(n, at_n);
            }
        }
        let mut entries = BTreeMap::new();
        for (n, at_n) in &blocks {
            let parts: Vec<(String, &EnrichValue)> =
                at_n.iter().map(|(tag, b)| (tag.clone(), &b.inner.value)).collect();
            entries.insert(*n, EnrichValue::coproduct(&parts)?);
        }
        // the entry values, needed to define the action maps below
        let values: BTreeMap<usize, EnrichValue> = entries.clone();
        let mut sigma = BTreeMap::new();
        for (&n, value) in &values {
            for rho in Perm::all(n) {
                if rho.is_identity() {
                    continue;
                }
                let m = value.map_from_fn(value, |e| {
                    act_on_element(factors, &blocks[&n], e, &rho)
                })?;
                sigma.insert((n, rho), m);
            }
        }
        let seq = SymmetricSequence::new(backend, arity_bound, entries, sigma)?;
        Ok(SeqTensor { factors: factors.to_vec(), seq, dim_bound, blocks })
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn block(&self, n: usize, tag: &str) -> Result<&TensorBlock> {
        self.blocks
            .get(&n)
            .and_then(|m| m.get(tag))
            .ok_or_else(|| Error::Invalid(format!("no tensor block {:?} at arity {}", tag, n)))
    }

    pub fn blocks_at(&self, n: usize) -> impl Iterator<Item = &TensorBlock> {
        self.blocks.get(&n).into_iter().flat_map(|m| m.values())
    }

    /// Encodes the class of (sigma; coords) with coords[i] in
    /// factors[i](comp[i]).
    pub fn encode(&self, comp: &[usize], sigma: &Perm, coords: &[Elem]) -> Result<Elem> {
        if comp.len() != self.r() || coords.len() != self.r() {
            return Err(Error::Invalid("tensor encode: wrong coordinate count".into()));
        }
        let n = sigma.degree();
        let (rep, alphas) = canonicalize(comp, sigma)?;
        let mut moved = Vec::with_capacity(self.r());
        for i in 0..self.r() {
            moved.push(self.factors[i].sigma_apply(comp[i], &alphas[i], &coords[i])?);
        }
        let block = self.block(n, &block_tag(comp, &rep))?;
        Ok(coproduct_elem(&block.tag, &block.inner.encode(&moved)?))
    }

    /// Decodes an element into its canonical (composition, representative,
    /// coordinates).
    pub fn decode(&self, n: usize, e: &Elem) -> Result<(Vec<usize>, Perm, Vec<Elem>)> {
        let (tag, inner) = split_coproduct_elem(e)?;
        let block = self.block(n, &tag)?;
        let coords = block.inner.decode(&inner)?;
        Ok((block.comp.clone(), block.rep.clone(), coords))
    }

    /// The factor-shuffling isomorphism into a tensor whose i-th source
    /// factor sits at slot rho(i): the class of (sigma; a) maps to
    /// (B . sigma; a shuffled), B the block permutation of rho.
    pub fn factor_permute_into(&self, target: &SeqTensor, rho: &Perm) -> Result<BTreeMap<usize, EnrichMap>> {
        let r = self.r();
        if rho.degree() != r || target.r() != r {
            return Err(Error::Invalid("factor permute: arity mismatch".into()));
        }
        for i in 0..r {
            if target.factors[rho.apply(i)] != self.factors[i] {
                return Err(Error::Invalid("factor permute: factors do not match".into()));
            }
        }
        let inv = rho.inverse();
        let mut out = BTreeMap::new();
        for n in self.seq.arities() {
            let source = self.seq.entry_or_initial(n);
            let tgt_value = target.seq.entry_or_initial(n);
            let m = source.map_from_fn(&tgt_value, |e| {
                let (comp, rep, coords) = self.decode(n, e)?;
                let b = Perm::block_perm(rho, &comp);
                let new_sigma = b.compose(&rep);
                let new_comp: Vec<usize> = (0..r).map(|j| comp[inv.apply(j)]).collect();
                let new_coords: Vec<Elem> = (0..r).map(|j| coords[inv.apply(j)].clone()).collect();
                target.encode(&new_comp, &new_sigma, &new_coords)
            })?;
            out.insert(n, m);
        }
        Ok(out)
    }

    /// Tensor of sequence maps, coordinatewise on canonical forms. `fs[i]`
    /// gives, per arity, a map factors[i](m) -> target.factors[i](m).
    pub fn map_into(
        &self,
        target: &SeqTensor,
        fs: &[BTreeMap<usize, EnrichMap>],
    ) -> Result<BTreeMap<usize, EnrichMap>> {
        let r = self.r();
        if fs.len() != r || target.r() != r {
            return Err(Error::Invalid("tensor map: arity mismatch".into()));
        }
        let mut out = BTreeMap::new();
        for n in self.seq.arities() {
            let source = self.seq.entry_or_initial(n);
            let tgt_value = target.seq.entry_or_initial(n);
            let m = source.map_from_fn(&tgt_value, |e| {
                let (comp, rep, coords) = self.decode(n, e)?;
                let mut moved = Vec::with_capacity(r);
                for i in 0..r {
                    let f = fs[i]
                        .get(&comp[i])
                        .ok_or_else(|| Error::Invalid(format!("no component map at arity {}", comp[i])))?;
                    moved.push(f.apply(&coords[i])?);
                }
                target.encode(&comp, &rep, &moved)
            })?;
            out.insert(n, m);
        }
        Ok(out)
    }
}

fn act_on_element(
    factors: &[SymmetricSequence],
    blocks_at_n: &BTreeMap<String, TensorBlock>,
    e: &Elem,
    rho: &Perm,
) -> Result<Elem> {
    let (tag, inner) = split_coproduct_elem(e)?;
    let block = blocks_at_n
        .get(&tag)
        .ok_or_else(|| Error::Invalid(format!("unknown tensor block {:?}", tag)))?;
    let coords = block.inner.decode(&inner)?;
    // residual action: precompose the representative, then renormalize
    let sigma = block.rep.compose(rho);
    let (rep, alphas) = canonicalize(&block.comp, &sigma)?;
    let mut moved = Vec::with_capacity(coords.len());
    for i in 0..coords.len() {
        moved.push(factors[i].sigma_apply(block.comp[i], &alphas[i], &coords[i])?);
    }
    let target = blocks_at_n
        .get(&block_tag(&block.comp, &rep))
        .ok_or_else(|| Error::Invalid("action left the block list".into()))?;
    Ok(coproduct_elem(&target.tag, &target.inner.encode(&moved)?))
}

/// The binary tensor of symmetric sequences.
pub fn tensor_seq(k: &SymmetricSequence, l: &SymmetricSequence, dim_bound: usize) -> Result<SeqTensor> {
    if k.backend() != l.backend() {
        return Err(Error::BackendMismatch { expected: k.backend(), found: l.backend() });
    }
    let arity_bound = k.arity_bound().min(l.arity_bound());
    SeqTensor::build(&[k.clone(), l.clone()], k.backend(), arity_bound, dim_bound)
}

/// Strips the unit factor of a binary tensor with the tensor unit at
/// `unit_pos`, giving the per-arity unit-law isomorphism onto the other
/// factor.
pub fn unit_law_iso(t: &SeqTensor, unit_pos: usize) -> Result<BTreeMap<usize, EnrichMap>> {
    if t.r() != 2 || unit_pos > 1 {
        return Err(Error::Invalid("unit law applies to binary tensors".into()));
    }
    let other = 1 - unit_pos;
    let mut out = BTreeMap::new();
    for n in t.seq.arities() {
        let source = t.seq.entry_or_initial(n);
        let target = t.factors[other].entry_or_initial(n);
        let m = source.map_from_fn(&target, |e| {
            let (comp, _, coords) = t.decode(n, e)?;
            if comp[unit_pos] != 0 {
                return Err(Error::Invalid("unit factor has positive arity".into()));
            }
            Ok(coords[other].clone())
        })?;
        if !m.is_iso() {
            return Err(Error::Invalid("unit law map is not an isomorphism".into()));
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
    use crate::enrich::quotient_by_action;

    fn set(labels: &[&str]) -> EnrichValue {
        EnrichValue::Set(FinSetObj::from_labels(labels))
    }

    fn seq1(labels: &[&str]) -> SymmetricSequence {
        SymmetricSequence::concentrated_trivial(Backend::Set, 4, 1, set(labels)).unwrap()
    }

    #[test]
    fn composition_and_coset_counts() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 0).len(), 1);
        assert_eq!(compositions(2, 0).len(), 0);
        assert_eq!(coset_reps(&[1, 1]).len(), 2);
        assert_eq!(coset_reps(&[2, 1]).len(), 3);
        assert_eq!(coset_reps(&[1, 1, 1]).len(), 6);
        assert_eq!(coset_reps(&[2, 2]).len(), 6);
        assert_eq!(coset_reps(&[0, 3]).len(), 1);
        // each representative is order preserving on block preimages
        for rep in coset_reps(&[2, 2]) {
            let (r2, alphas) = canonicalize(&[2, 2], &rep).unwrap();
            assert_eq!(r2, rep);
            assert!(alphas.iter().all(|a| a.is_identity()));
        }
    }

    #[test]
    fn canonicalize_factors_the_permutation() {
        let comp = [2, 1];
        for sigma in Perm::all(3) {
            let (rep, alphas) = canonicalize(&comp, &sigma).unwrap();
            // sigma = h . rep with h the block sum of the alphas
            let h = Perm::block_sum(&alphas);
            assert_eq!(h.compose(&rep), sigma);
        }
    }

    #[test]
    fn two_unary_singletons_give_the_regular_representation() {
        let k = seq1(&["k"]);
        let l = seq1(&["l"]);
        let t = tensor_seq(&k, &l, 3).unwrap();
        assert_eq!(t.seq.arities(), vec![2]);
        let e = t.seq.entry(2).unwrap();
        assert_eq!(e.basis().len(), 2);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let m = t.seq.sigma_map(2, &swap).unwrap();
        for x in e.basis() {
            assert_ne!(m.apply(&x).unwrap(), x, "residual action is free");
        }
    }

    #[test]
    fn tensor_encode_decode_respects_the_relation() {
        let k = seq1(&["k"]);
        let l = seq1(&["l"]);
        let t = tensor_seq(&k, &l, 3).unwrap();
        let swap = Perm::new(vec![1, 0]).unwrap();
        let e_id = t.encode(&[1, 1], &Perm::identity(2), &[Elem::Set("k".into()), Elem::Set("l".into())]).unwrap();
        let e_sw = t.encode(&[1, 1], &swap, &[Elem::Set("k".into()), Elem::Set("l".into())]).unwrap();
        assert_ne!(e_id, e_sw);
        assert_eq!(t.seq.sigma_apply(2, &swap, &e_id).unwrap(), e_sw);
        let (comp, rep, coords) = t.decode(2, &e_id).unwrap();
        assert_eq!(comp, vec![1, 1]);
        assert!(rep.is_identity());
        assert_eq!(coords[0].label(), "k");
    }

    #[test]
    fn entry_sizes_match_the_induced_module_count() {
        // K with |K(1)|=2, L with |L(2)|=1 and free action target sizes:
        // (K(x)L)(n) = sum over comps of multinomial * |K(n1)| * |L(n2)|
        let k = seq1(&["a", "b"]);
        let l = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["m"])).unwrap();
        let t = tensor_seq(&k, &l, 3).unwrap();
        // only composition (1,2): 3 cosets * 2 * 1
        assert_eq!(t.seq.entry(3).unwrap().basis().len(), 6);
        assert_eq!(t.seq.arities(), vec![3]);
    }

    #[test]
    fn zero_arity_factors_allow_r_above_n() {
        // L has a constant: L(0) nonempty; K binary. (K(x)K)(0) nonempty
        let k = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 0, set(&["c"])).unwrap();
        let t = tensor_seq(&k, &k, 3).unwrap();
        assert_eq!(t.seq.arities(), vec![0]);
        assert_eq!(t.seq.entry(0).unwrap().basis().len(), 1);
    }

    #[test]
    fn unit_law_strips_the_unit() {
        let g2 = SymmetricSequence::generating(Backend::Set, 4, 2).unwrap();
        let u = SymmetricSequence::unit_tensor(Backend::Set, 4);
        let right = tensor_seq(&g2, &u, 3).unwrap();
        let iso = unit_law_iso(&right, 1).unwrap();
        assert!(is_equivariant_family(&right.seq, &g2, &iso).unwrap());
        let left = tensor_seq(&u, &g2, 3).unwrap();
        let iso = unit_law_iso(&left, 0).unwrap();
        assert!(is_equivariant_family(&left.seq, &g2, &iso).unwrap());
    }

    #[test]
    fn factor_permutation_is_an_equivariant_iso() {
        let k = seq1(&["a", "b"]);
        let l = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["m"])).unwrap();
        let t_kl = tensor_seq(&k, &l, 3).unwrap();
        let t_lk = tensor_seq(&l, &k, 3).unwrap();
        let swap = Perm::new(vec![1, 0]).unwrap();
        let maps = t_kl.factor_permute_into(&t_lk, &swap).unwrap();
        for (n, m) in &maps {
            assert!(m.is_iso(), "swap not iso at arity {}", n);
        }
        assert!(is_equivariant_family(&t_kl.seq, &t_lk.seq, &maps).unwrap());
        // swapping twice is the identity
        let back = t_lk.factor_permute_into(&t_kl, &swap).unwrap();
        for n in t_kl.seq.arities() {
            let round = back[&n].compose(&maps[&n]).unwrap();
            assert_eq!(round, EnrichMap::identity(&t_kl.seq.entry_or_initial(n)));
        }
    }

    #[test]
    fn associativity_via_nesting() {
        let a = seq1(&["a"]);
        let b = seq1(&["b", "b2"]);
        let c = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["c"])).unwrap();
        let abc = SeqTensor::build(&[a.clone(), b.clone(), c.clone()], Backend::Set, 4, 3).unwrap();
        let ab = tensor_seq(&a, &b, 3).unwrap();
        let ab_c = tensor_seq(&ab.seq, &c, 3).unwrap();
        let iso = equivariant_iso_search(&abc.seq, &ab_c.seq).unwrap();
        assert!(iso.is_some(), "triple tensor matches nested tensor");
        let a_bc = tensor_seq(&a, &tensor_seq(&b, &c, 3).unwrap().seq, 3).unwrap();
        let iso = equivariant_iso_search(&ab_c.seq, &a_bc.seq).unwrap();
        assert!(iso.is_some(), "tensor is associative");
    }

    #[test]
    fn coinvariants_oracle_agrees() {
        // independent construction of (K(x)L)(n): big sum over all sigma in
        // Σ_n of K(p)(x)L(q), quotiented by the block subgroup relation
        let k = seq1(&["a", "b"]);
        let l = SymmetricSequence::concentrated_trivial(Backend::Set, 4, 2, set(&["m"])).unwrap();
        let n = 3;
        let (p, q) = (1, 2);
        let inner = MultiTensor::build(
            &[k.entry_or_initial(p), l.entry_or_initial(q)],
            Backend::Set,
            3,
        )
        .unwrap();
        let parts: Vec<(String, &EnrichValue)> = Perm::all(n)
            .iter()
            .map(|s| (super::super::perm_tag(s), &inner.value))
            .collect::<Vec<_>>();
        let big = EnrichValue::coproduct(&parts).unwrap();
        // generators: for h in Σ_p x Σ_q, (sigma; a) ~ (h.sigma; (h^-1)*a)
        let mut autos = Vec::new();
        for ap in Perm::all(p) {
            for aq in Perm::all(q) {
                let h = Perm::block_sum(&[ap.clone(), aq.clone()]);
                if h.is_identity() {
                    continue;
                }
                let (hp, hq) = (ap.inverse(), aq.inverse());
                let g = big
                    .map_from_fn(&big, |e| {
                        let (tag, x) = split_coproduct_elem(e)?;
                        let sigma = super::super::parse_perm_tag(&tag)?;
                        let coords = inner.decode(&x)?;
                        let moved = vec![
                            k.sigma_apply(p, &hp, &coords[0])?,
                            l.sigma_apply(q, &hq, &coords[1])?,
                        ];
                        Ok(coproduct_elem(
                            &super::super::perm_tag(&h.compose(&sigma)),
                            &inner.encode(&moved)?,
                        ))
                    })
                    .unwrap();
                autos.push(g);
            }
        }
        let (quot, _) = quotient_by_action(&big, &autos).unwrap();
        let t = tensor_seq(&k, &l, 3).unwrap();
        assert_eq!(t.seq.entry(n).unwrap().basis().len(), quot.basis().len());
    }
}
