//! Weyl-group computations: reflections, reduced words, the longest
//! element, the duality involution `i ↦ i*`, and locally reduced sequences.
//!
//! Elements are represented faithfully by their action on the simple roots.
//! Words are sequences of 0-based node indices (the CLI layer converts to
//! 1-based text).

use crate::cartan::{CartanDatum, Root};
use crate::error::{QbError, QbResult};

/// A Weyl-group element, stored as the images of the simple roots.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    /// `images[j] = w(α_j)` in simple-root coordinates.
    images: Vec<Root>,
}

impl WeylElement {
    pub fn identity(cd: &CartanDatum) -> Self {
        Self {
            images: (0..cd.rank()).map(|i| cd.simple_root(i)).collect(),
        }
    }

    pub fn simple(cd: &CartanDatum, i: usize) -> Self {
        let mut w = Self::identity(cd);
        for j in 0..cd.rank() {
            w.images[j] = simple_reflection(cd, i, &w.images[j]);
        }
        w
    }

    pub fn from_word(cd: &CartanDatum, word: &[usize]) -> Self {
        // w = s_{i_1} ⋯ s_{i_n}: fold right-to-left so each α_j flows
        // through the product in the written order.
        let mut w = Self::identity(cd);
        for &i in word.iter().rev() {
            w = Self::simple(cd, i).mul(cd, &w);
        }
        w
    }

    pub fn is_identity(&self, cd: &CartanDatum) -> bool {
        (0..cd.rank()).all(|j| self.images[j] == cd.simple_root(j))
    }

    /// `w(β)` for an arbitrary lattice vector.
    pub fn apply(&self, cd: &CartanDatum, beta: &[i64]) -> Root {
        let mut out = cd.zero_root();
        for (j, b) in beta.iter().enumerate() {
            if *b != 0 {
                for (k, x) in self.images[j].iter().enumerate() {
                    out[k] += b * x;
                }
            }
        }
        out
    }

    /// Product `self · other` (apply `other` first).
    pub fn mul(&self, cd: &CartanDatum, other: &Self) -> Self {
        Self {
            images: (0..cd.rank())
                .map(|j| self.apply(cd, &other.images[j]))
                .collect(),
        }
    }

    /// `ℓ(w)`: the number of positive roots sent to negative roots.
    pub fn length(&self, cd: &CartanDatum) -> usize {
        cd.positive_roots()
            .iter()
            .filter(|r| is_negative(&self.apply(cd, r)))
            .count()
    }

    /// `i` is a right descent iff `w(α_i) < 0` iff `ℓ(w s_i) < ℓ(w)`.
    pub fn is_right_descent(&self, _cd: &CartanDatum, i: usize) -> bool {
        is_negative(&self.images[i])
    }

    /// Left descents of `w` are the right descents of `w^{-1}`; test via
    /// `ℓ(s_i w) < ℓ(w)` without forming the inverse.
    pub fn is_left_descent(&self, cd: &CartanDatum, i: usize) -> bool {
        WeylElement::simple(cd, i).mul(cd, self).length(cd) < self.length(cd)
    }

    pub fn inverse(&self, cd: &CartanDatum) -> Self {
        let mut word = self.reduced_word(cd);
        word.reverse();
        Self::from_word(cd, &word)
    }

    /// The lexicographically smallest reduced word, computed by greedy
    /// left-descent peeling (at each step take the smallest `i` with
    /// `ℓ(s_i w) < ℓ(w)`).
    pub fn reduced_word(&self, cd: &CartanDatum) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        let mut len = w.length(cd);
        while len > 0 {
            let mut found = false;
            for i in 0..cd.rank() {
                let candidate = WeylElement::simple(cd, i).mul(cd, &w);
                let clen = candidate.length(cd);
                if clen < len {
                    word.push(i);
                    w = candidate;
                    len = clen;
                    found = true;
                    break;
                }
            }
            assert!(found, "every non-identity element has a descent");
        }
        word
    }
}

fn is_negative(beta: &[i64]) -> bool {
    beta.iter().all(|a| *a <= 0) && beta.iter().any(|a| *a < 0)
}

/// `s_i(β) = β - ⟨h_i, β⟩ α_i`.
pub fn simple_reflection(cd: &CartanDatum, i: usize, beta: &[i64]) -> Root {
    let h = cd.coroot_pairing(i, beta);
    let mut out = beta.to_vec();
    out[i] -= h;
    out
}

/// `s_{i_1} ⋯ s_{i_n}(β)`.
pub fn apply_word(cd: &CartanDatum, word: &[usize], beta: &[i64]) -> Root {
    let mut out = beta.to_vec();
    for &i in word.iter().rev() {
        out = simple_reflection(cd, i, &out);
    }
    out
}

/// `ℓ(w_word)` via the inversion count.
pub fn weyl_length(cd: &CartanDatum, word: &[usize]) -> usize {
    WeylElement::from_word(cd, word).length(cd)
}

pub fn is_reduced(cd: &CartanDatum, word: &[usize]) -> bool {
    weyl_length(cd, word) == word.len()
}

/// The deterministic (lexicographically smallest) reduced word of the
/// longest element `w∘`.
pub fn longest_word(cd: &CartanDatum) -> Vec<usize> {
    longest_element(cd).reduced_word(cd)
}

pub fn longest_element(cd: &CartanDatum) -> WeylElement {
    // Greedy ascent: multiply by any simple reflection that increases
    // length until no positive root stays positive.
    let mut w = WeylElement::identity(cd);
    loop {
        let mut extended = false;
        for i in 0..cd.rank() {
            if !w.is_right_descent(cd, i) {
                w = w.mul(cd, &WeylElement::simple(cd, i));
                extended = true;
                break;
            }
        }
        if !extended {
            return w;
        }
    }
}

/// The involution `i*` with `α_{i*} = -w∘(α_i)`.
pub fn dual_index(cd: &CartanDatum, i: usize) -> usize {
    let w0 = longest_element(cd);
    let image = w0.apply(cd, &cd.simple_root(i));
    let neg: Root = image.iter().map(|a| -a).collect();
    for j in 0..cd.rank() {
        if neg == cd.simple_root(j) {
            return j;
        }
    }
    unreachable!("-w∘ permutes the simple roots");
}

/// Extend `prefix` to a locally reduced sequence of length `n`: every
/// window of length `ℓ(w∘)` is reduced, equivalently the sequence repeats a
/// reduced word of `w∘` with the twist `i_{k+ℓ} = i_k*`.
pub fn locally_reduced_sequence(
    cd: &CartanDatum,
    prefix: &[usize],
    n: usize,
) -> QbResult<Vec<usize>> {
    let ell = cd.positive_roots().len();
    let head = &prefix[..prefix.len().min(ell)];
    if !is_reduced(cd, head) {
        return Err(QbError::Usage(format!(
            "prefix {:?} is not reduced, so no locally reduced extension exists",
            one_based(prefix)
        )));
    }
    // Complete the head to a reduced word of w∘ (always possible: for any
    // reduced u, ℓ(u^{-1} w∘) = ℓ(w∘) - ℓ(u)), lexicographically smallest.
    let mut seq: Vec<usize> = head.to_vec();
    let u = WeylElement::from_word(cd, head);
    let rest = u.inverse(cd).mul(cd, &longest_element(cd));
    seq.extend(rest.reduced_word(cd));
    debug_assert!(is_reduced(cd, &seq) && seq.len() == ell);
    // Unroll by the *-twist for as long as needed.
    let total = n.max(prefix.len());
    while seq.len() < total {
        let next = dual_index(cd, seq[seq.len() - ell]);
        seq.push(next);
    }
    // The caller's prefix must agree with the constructed sequence beyond
    // the first window too, otherwise it was not locally reduced.
    if seq[..prefix.len()] != *prefix {
        return Err(QbError::Usage(format!(
            "prefix {:?} violates the i_(k+l) = i_k* constraint of locally reduced sequences",
            one_based(prefix)
        )));
    }
    seq.truncate(total.max(n));
    // Defensive check of the defining window property.
    for start in 0..seq.len().saturating_sub(ell) {
        debug_assert!(is_reduced(cd, &seq[start..start + ell]));
    }
    Ok(seq)
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}
