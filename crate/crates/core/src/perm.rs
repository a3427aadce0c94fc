//! Finite permutations and the block combinatorics used by symmetric actions.
//!
//! Conventions, fixed once and used everywhere:
//! * a permutation stores 0-based images, `apply(i) = imgs[i]`;
//! * `compose(a, b)` is "b first, then a";
//! * the right action on operations is `sigma*: P(c_1..c_n; c) ->
//!   P(c_{sigma(1)}..c_{sigma(n)}; c)` and satisfies `(st)* = t* s*`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(imgs: Vec<usize>) -> Option<Perm> {
        let n = imgs.len();
        let mut seen = vec![false; n];
        for &i in &imgs {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(imgs))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` after `other`: `(self.compose(other)).apply(i) = self.apply(other.apply(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Reorders a slice: the result holds `xs[self^{-1}(i)]` at position `i`,
    /// i.e. the entry at position `j` moves to position `self(j)`.
    pub fn permute<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(self.degree(), xs.len());
        let inv = self.inverse();
        (0..xs.len()).map(|i| xs[inv.apply(i)].clone()).collect()
    }

    /// Input-color bookkeeping for the right action: the signature
    /// `(c_1..c_n)` is sent to `(c_{sigma(1)}..c_{sigma(n)})`.
    pub fn select<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(self.degree(), xs.len());
        self.0.iter().map(|&i| xs[i].clone()).collect()
    }

    /// All permutations of degree `n` in lexicographic order on images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Direct sum along consecutive blocks.
    pub fn block_sum(parts: &[Perm]) -> Perm {
        let mut imgs = Vec::new();
        let mut offset = 0;
        for p in parts {
            imgs.extend(p.0.iter().map(|&i| i + offset));
            offset += p.degree();
        }
        Perm(imgs)
    }

    /// The permutation of `sizes.iter().sum()` letters that moves whole
    /// blocks: source block `i` lands, order preserved, where `rho` sends it.
    pub fn block_perm(rho: &Perm, sizes: &[usize]) -> Perm {
        assert_eq!(rho.degree(), sizes.len());
        let rho_inv = rho.inverse();
        let total: usize = sizes.iter().sum();
        // target offset of target slot k is the total size of earlier target slots
        let mut target_offset = vec![0; sizes.len()];
        let mut acc = 0;
        for k in 0..sizes.len() {
            target_offset[k] = acc;
            acc += sizes[rho_inv.apply(k)];
        }
        let mut imgs = Vec::with_capacity(total);
        let mut src = 0;
        for (i, &sz) in sizes.iter().enumerate() {
            for j in 0..sz {
                imgs.push(target_offset[rho.apply(i)] + j);
            }
            src += sz;
        }
        debug_assert_eq!(src, total);
        Perm(imgs)
    }

    /// Embeds `tau` (degree m) at slot `i` of an arity-`n` operation:
    /// `id_{i} + tau + id_{n-1-i}` of degree `n + m - 1`.
    pub fn block_at(tau: &Perm, i: usize, n: usize) -> Perm {
        assert!(i < n);
        Perm::block_sum(&[Perm::identity(i), tau.clone(), Perm::identity(n - 1 - i)])
    }

    /// The permutation `rho` of `n + m - 1` letters with
    /// `(sigma* phi) o_i psi = rho* (phi o_{sigma(i)} psi)` for `phi` of
    /// arity `n`, `psi` of arity `m` and 0-based slot `i`.
    pub fn expand_at(sigma: &Perm, i: usize, m: usize) -> Perm {
        let n = sigma.degree();
        assert!(i < n);
        let si = sigma.apply(i);
        let shift = |v: usize| if v < si { v } else { v + m - 1 };
        let mut imgs = Vec::with_capacity(n + m - 1);
        for j in 0..i {
            imgs.push(shift(sigma.apply(j)));
        }
        for t in 0..m {
            imgs.push(si + t);
        }
        for j in i + 1..n {
            imgs.push(shift(sigma.apply(j)));
        }
        Perm(imgs)
    }

    /// One-line notation, 1-based, as used in the JSON encodings.
    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn from_one_line(xs: &[usize]) -> Option<Perm> {
        if xs.iter().any(|&x| x == 0) {
            return None;
        }
        Perm::new(xs.iter().map(|&x| x - 1).collect())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.one_line())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::new(vec![1, 0, 2]).unwrap();
        let b = Perm::new(vec![2, 1, 0]).unwrap();
        let ab = a.compose(&b);
        for i in 0..3 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for p in Perm::all(4) {
            assert!(p.compose(&p.inverse()).is_identity());
            assert!(p.inverse().compose(&p).is_identity());
        }
    }

    #[test]
    fn select_matches_right_action_signature_rule() {
        let sigma = Perm::new(vec![2, 0, 1]).unwrap();
        let cs = vec!["a", "b", "c"];
        assert_eq!(sigma.select(&cs), vec!["c", "a", "b"]);
    }

    #[test]
    fn permute_moves_position_j_to_sigma_j() {
        let sigma = Perm::new(vec![2, 0, 1]).unwrap();
        let xs = vec!["x", "y", "z"];
        let moved = sigma.permute(&xs);
        for j in 0..3 {
            assert_eq!(moved[sigma.apply(j)], xs[j]);
        }
    }

    #[test]
    fn block_perm_on_singleton_blocks_is_the_same_permutation() {
        for rho in Perm::all(3) {
            assert_eq!(Perm::block_perm(&rho, &[1, 1, 1]), rho);
        }
    }

    #[test]
    fn block_perm_moves_blocks_intact() {
        // rho = (0 1) swapping a block of 2 with a block of 1
        let rho = Perm::new(vec![1, 0]).unwrap();
        let bp = Perm::block_perm(&rho, &[2, 1]);
        let xs = vec!["a1", "a2", "b"];
        assert_eq!(bp.permute(&xs), vec!["b", "a1", "a2"]);
    }

    #[test]
    fn expand_at_identity_is_identity() {
        let id = Perm::identity(3);
        assert!(Perm::expand_at(&id, 1, 4).is_identity());
    }

    #[test]
    fn expand_at_unary_slot_recovers_sigma() {
        for sigma in Perm::all(3) {
            for i in 0..3 {
                assert_eq!(Perm::expand_at(&sigma, i, 1), sigma);
            }
        }
    }

    /// Checks `(sigma* phi) o_i psi = rho* (phi o_{sigma(i)} psi)` against the
    /// functional model: operations act on argument tuples, `sigma* phi`
    /// consumes `(a_1..a_n)` as `phi(a_{sigma^{-1}(1)}..a_{sigma^{-1}(n)})`.
    #[test]
    fn expand_at_matches_functional_model() {
        // model an operation by the list of source positions it reads, in order
        fn act(sigma: &Perm, reads: &[usize]) -> Vec<usize> {
            let inv = sigma.inverse();
            // (sigma* phi)(a_1..a_n) = phi(a_{inv(1)}..), so phi's j-th read
            // becomes position inv(reads[j]) of the new argument list; but as
            // a list of positions consumed in phi's internal order we record
            // where each internal slot now points.
            reads.iter().map(|&r| inv.apply(r)).collect()
        }
        // phi of arity n reads its inputs in internal order 0..n
        let n = 3;
        let m = 2;
        for sigma in Perm::all(n) {
            for i in 0..n {
                // lhs: sigma* phi, then graft psi (reading m fresh slots) at slot i
                let outer: Vec<usize> = act(&sigma, &(0..n).collect::<Vec<_>>());
                // build the read order of (sigma* phi) o_i psi over n+m-1 slots:
                // slot j<i stays j, slots i..i+m-1 are psi's, slots >i shift.
                let reloc = |v: usize| {
                    if v < i {
                        v
                    } else if v == i {
                        usize::MAX // expanded below
                    } else {
                        v + m - 1
                    }
                };
                let mut lhs = Vec::new();
                for &r in &outer {
                    let v = reloc(r);
                    if v == usize::MAX {
                        lhs.extend(i..i + m);
                    } else {
                        lhs.push(v);
                    }
                }
                // rhs: phi o_{sigma(i)} psi read order, then act by expand_at
                let si = sigma.apply(i);
                let mut inner = Vec::new();
                for j in 0..n {
                    if j == si {
                        inner.extend(si..si + m);
                    } else if j < si {
                        inner.push(j);
                    } else {
                        inner.push(j + m - 1);
                    }
                }
                let rho = Perm::expand_at(&sigma, i, m);
                let rhs = act(&rho, &inner);
                assert_eq!(lhs, rhs, "sigma={:?} i={}", sigma, i);
            }
        }
    }

    #[test]
    fn one_line_roundtrip() {
        for p in Perm::all(4) {
            assert_eq!(Perm::from_one_line(&p.one_line()).unwrap(), p);
        }
    }
}
