//! Canonical normal form: level-sorting (in `mod.rs`) plus rewriting of
//! every constant-level block over a pivot-word basis of its weight space.
//!
//! The pivot basis of a weight β is chosen canonically: among all words of
//! content β (ordered lexicographically), the greedily-first maximal
//! subset whose Kashiwara-form Gram rows are linearly independent. The
//! Kashiwara form is nondegenerate with radical exactly the defining ideal
//! of the slice, so coordinates over the pivot words, solved through the
//! Gram system, are a sound equality oracle.

use super::{Algebra, Elem, Letter, Word};
use crate::cartan::Root;
use crate::coeffs::{Frac, LaurentScalar};
use crate::error::{QbError, QbResult};

/// Precomputed data for one slice weight space.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub content: Root,
    /// All words of this content (node indices), lexicographically sorted.
    pub words: Vec<Vec<u8>>,
    /// Kashiwara-form Gram matrix on `words` (always Laurent).
    pub gram: Vec<Vec<LaurentScalar>>,
    /// Indices into `words` of the pivot basis.
    pub pivots: Vec<usize>,
    /// For every word, its coordinates over the pivot words.
    pub coords: Vec<Vec<Frac>>,
}

impl SliceBasis {
    pub fn word_index(&self, w: &[u8]) -> Option<usize> {
        self.words.binary_search_by(|c| c.as_slice().cmp(w)).ok()
    }

    pub fn is_pivot(&self, idx: usize) -> bool {
        self.pivots.contains(&idx)
    }
}

/// All words with `content[i]` copies of letter `i`, lex ascending.
fn enumerate_words(content: &[i64]) -> Vec<Vec<u8>> {
    let total: i64 = content.iter().sum();
    let mut out = Vec::new();
    let mut counts: Vec<i64> = content.to_vec();
    let mut current: Vec<u8> = Vec::with_capacity(total as usize);
    fn rec(counts: &mut [i64], current: &mut Vec<u8>, remaining: i64, out: &mut Vec<Vec<u8>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                current.push(i as u8);
                rec(counts, current, remaining - 1, out);
                current.pop();
                counts[i] += 1;
            }
        }
    }
    rec(&mut counts, &mut current, total, &mut out);
    out
}

/// Build the slice basis for one content vector. The Gram matrix is built
/// by the defining recursion `(f_i x', y)_K = (x', e'_i(y))_K` from the
/// already-cached bases of smaller contents.
pub(crate) fn build_slice_basis(alg: &Algebra, content: &Root) -> QbResult<SliceBasis> {
    assert!(content.iter().all(|n| *n >= 0));
    let words = enumerate_words(content);
    let n = words.len();
    let ht: i64 = content.iter().sum();
    let mut gram = vec![vec![LaurentScalar::zero(); n]; n];
    if ht == 0 {
        gram[0][0] = LaurentScalar::one();
    } else {
        // Group rows by first letter so each sub-content basis is fetched once.
        let mut sub_cache: Vec<Option<std::sync::Arc<SliceBasis>>> =
            vec![None; alg.cd.rank()];
        for (xi, x) in words.iter().enumerate() {
            let i = x[0] as usize;
            if sub_cache[i].is_none() {
                let mut sub_content = content.clone();
                sub_content[i] -= 1;
                sub_cache[i] = Some(alg.slice_basis(&sub_content)?);
            }
            let sub = sub_cache[i].as_ref().unwrap();
            let x_tail = sub
                .word_index(&x[1..])
                .expect("tail word lies in the sub-content enumeration");
            for (yi, y) in words.iter().enumerate() {
                // e'_i(y) = Σ_t [y_t = i] q_i^{-Σ_{s<t} c_{i,y_s}} · (y minus t).
                let mut val = LaurentScalar::zero();
                let mut exp = 0i64;
                for (t, &letter) in y.iter().enumerate() {
                    if letter as usize == i {
                        let mut shorter = y.clone();
                        shorter.remove(t);
                        let sub_y = sub
                            .word_index(&shorter)
                            .expect("stripped word lies in the sub-content enumeration");
                        val += &(&alg.cd.qi_pow(i, exp) * &sub.gram[x_tail][sub_y]);
                    }
                    exp -= alg.cd.c(i, letter as usize);
                }
                gram[xi][yi] = val;
            }
        }
    }
    debug_assert!(
        (0..n).all(|a| (a..n).all(|b| gram[a][b] == gram[b][a])),
        "Kashiwara Gram matrix must be symmetric"
    );
    let (pivots, coords) = pivots_and_coords(&gram)?;
    let expected = alg.cd.kostant_partitions(content);
    if pivots.len() as u64 != expected {
        return Err(QbError::Internal(format!(
            "pivot count {} disagrees with the weight-space dimension {} at content {:?}",
            pivots.len(),
            expected,
            content
        )));
    }
    Ok(SliceBasis { content: content.clone(), words, gram, pivots, coords })
}

/// Greedy pivot selection on Gram rows plus coordinates of every word over
/// the pivot words, all in exact fraction arithmetic.
fn pivots_and_coords(gram: &[Vec<LaurentScalar>]) -> QbResult<(Vec<usize>, Vec<Vec<Frac>>)> {
    let n = gram.len();
    // Row echelon with recorded pivot columns, greedily over rows.
    let mut echelon: Vec<(usize, Vec<Frac>)> = Vec::new(); // (lead col, row)
    let mut pivots = Vec::new();
    for r in 0..n {
        let mut row: Vec<Frac> = gram[r].iter().cloned().map(Frac::from_laurent).collect();
        for (lead, base) in &echelon {
            if !row[*lead].is_zero() {
                let factor = &row[*lead] * &base[*lead].inv();
                for c in 0..n {
                    row[c] = &row[c] - &(&factor * &base[c]);
                }
            }
        }
        if let Some(lead) = row.iter().position(|c| !c.is_zero()) {
            echelon.push((lead, row));
            pivots.push(r);
        }
    }
    // Invert the pivot Gram submatrix once (Gauss-Jordan).
    let m = pivots.len();
    let minv = {
        let mut a: Vec<Vec<Frac>> = (0..m)
            .map(|s| {
                let mut row: Vec<Frac> = pivots
                    .iter()
                    .map(|&t| Frac::from_laurent(gram[pivots[s]][t].clone()))
                    .collect();
                let mut id = vec![Frac::zero(); m];
                id[s] = Frac::one();
                row.extend(id);
                row
            })
            .collect();
        for col in 0..m {
            let pivot_row = (col..m)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| QbError::Internal("pivot Gram submatrix is singular".into()))?;
            a.swap(col, pivot_row);
            let inv = a[col][col].inv();
            for c in 0..2 * m {
                a[col][c] = &a[col][c] * &inv;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..2 * m {
                        a[r][c] = &a[r][c] - &(&factor * &a[col][c]);
                    }
                }
            }
        }
        a.into_iter()
            .map(|row| row[m..].to_vec())
            .collect::<Vec<Vec<Frac>>>()
    };
    // coords[w] solves G_{SS} c = (gram[w][pivot_s])_s; exact because the
    // form is nondegenerate on the span and every row lies in the pivot
    // rowspan.
    let mut coords = Vec::with_capacity(n);
    for w in 0..n {
        let b: Vec<Frac> = pivots
            .iter()
            .map(|&t| Frac::from_laurent(gram[w][t].clone()))
            .collect();
        let mut c = vec![Frac::zero(); m];
        for (s, c_s) in c.iter_mut().enumerate() {
            for t in 0..m {
                *c_s = &*c_s + &(&minv[s][t] * &b[t]);
            }
        }
        coords.push(c);
    }
    Ok((pivots, coords))
}

impl Algebra {
    /// Canonical normal form: level-sort, then rewrite every constant-level
    /// block over the pivot basis of its weight space. Two elements are
    /// equal in the algebra iff their normal forms coincide.
    pub fn normal_form(&self, x: &Elem) -> QbResult<Elem> {
        let sorted = self.p_sort(x);
        let mut out = Elem::zero();
        for (w, c) in sorted.terms() {
            let mut expansion: Vec<(Word, Frac)> = vec![(Vec::new(), c.clone())];
            for (level, block) in blocks_of(w) {
                let content = self.block_content(&block);
                let basis = self.slice_basis(&content)?;
                let idx = basis
                    .word_index(&block)
                    .expect("block word lies in its content enumeration");
                if basis.is_pivot(idx) {
                    for (prefix, _) in expansion.iter_mut() {
                        prefix.extend(block.iter().map(|&i| Letter { i, p: level }));
                    }
                } else {
                    let mut next = Vec::new();
                    for (t, coeff) in basis.coords[idx].iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let pivot_word = &basis.words[basis.pivots[t]];
                        for (prefix, pc) in &expansion {
                            let mut w2 = prefix.clone();
                            w2.extend(pivot_word.iter().map(|&i| Letter { i, p: level }));
                            next.push((w2, pc * coeff));
                        }
                    }
                    expansion = next;
                }
            }
            for (word, coeff) in expansion {
                out.add_term(word, &coeff);
            }
        }
        Ok(out)
    }

    pub(crate) fn block_content(&self, block: &[u8]) -> Root {
        let mut content = self.cd.zero_root();
        for &i in block {
            content[i as usize] += 1;
        }
        content
    }
}

/// Split a level-sorted word into its maximal constant-level blocks,
/// highest level first.
pub(crate) fn blocks_of(w: &Word) -> Vec<(i32, Vec<u8>)> {
    let mut out: Vec<(i32, Vec<u8>)> = Vec::new();
    for l in w {
        match out.last_mut() {
            Some((p, block)) if *p == l.p => block.push(l.i),
            _ => out.push((l.p, vec![l.i])),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn alg(t: &str) -> Algebra {
        Algebra::new(CartanDatum::new(t.parse().unwrap()).unwrap())
    }

    fn f(i: usize, p: i32) -> Elem {
        Elem::generator(i - 1, p)
    }

    #[test]
    fn word_enumeration_is_lex_sorted() {
        let words = enumerate_words(&[2, 1]);
        assert_eq!(
            words,
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        let words = enumerate_words(&[0, 0]);
        assert_eq!(words, vec![Vec::<u8>::new()]);
    }

    #[test]
    fn slice_basis_dimensions() {
        let a = alg("A2");
        // Weight α₁+α₂ has dimension 2 = number of words: both are pivots.
        let b = a.slice_basis(&vec![1, 1]).unwrap();
        assert_eq!(b.pivots, vec![0, 1]);
        // Weight 2α₁+α₂ has 3 words but dimension 2 (one Serre relation).
        let b = a.slice_basis(&vec![2, 1]).unwrap();
        assert_eq!(b.words.len(), 3);
        assert_eq!(b.pivots.len(), 2);
    }

    #[test]
    fn gram_entries_match_known_values() {
        let a = alg("A2");
        let b = a.slice_basis(&vec![1, 1]).unwrap();
        // (f₁f₂, f₂f₁)_K = q (strip f₁, e'₁(f₂f₁) = q₁^{-c₁₂} f₂ = q f₂).
        let idx_12 = b.word_index(&[0, 1]).unwrap();
        let idx_21 = b.word_index(&[1, 0]).unwrap();
        assert_eq!(b.gram[idx_12][idx_21], LaurentScalar::q_pow(1));
        assert_eq!(b.gram[idx_12][idx_12], LaurentScalar::one());
    }

    #[test]
    fn serre_relation_normalizes_to_zero() {
        // f₁²f₂ - (q+q^{-1}) f₁f₂f₁ + f₂f₁² = 0 in A₂ (inside one level).
        for level in [0, 1, -2] {
            let a = alg("A2");
            let f1 = f(1, level);
            let f2 = f(2, level);
            let w112 = a.mul(&a.mul(&f1, &f1), &f2);
            let w121 = a.mul(&a.mul(&f1, &f2), &f1);
            let w211 = a.mul(&a.mul(&f2, &f1), &f1);
            let two = Frac::from_laurent(crate::coeffs::qint(2, 1));
            let serre = w112.sub(&w121.scale(&two)).add(&w211);
            assert!(a.normal_form(&serre).unwrap().is_zero());
        }
    }

    #[test]
    fn serre_relation_b2_and_g2() {
        // Σ_k (-1)^k [1-c choose k] f_i^{1-c-k} f_j f_i^k = 0.
        for (t, i, j) in [("B2", 0usize, 1usize), ("B2", 1, 0), ("G2", 0, 1), ("G2", 1, 0)] {
            let a = alg(t);
            let n = (1 - a.cd.c(i, j)) as u32;
            let fi = Elem::generator(i, 0);
            let fj = Elem::generator(j, 0);
            let mut serre = Elem::zero();
            for k in 0..=n {
                let coeff = Frac::from_laurent(a.cd.qbinom(n, k, i));
                let term = a.mul(&a.mul(&a.pow(&fi, n - k), &fj), &a.pow(&fi, k));
                let signed = if k % 2 == 0 { coeff } else { -&coeff };
                serre = serre.add(&term.scale(&signed));
            }
            assert!(a.normal_form(&serre).unwrap().is_zero(), "type {t} ({i},{j})");
        }
    }

    #[test]
    fn normal_form_idempotent_and_cross_level() {
        let a = alg("A2");
        let x = a.mul(&f(1, 0), &f(1, 1));
        let nf = a.normal_form(&x).unwrap();
        assert_eq!(a.normal_form(&nf).unwrap(), nf);
        // Already-normal single letters are fixed.
        assert_eq!(a.normal_form(&f(1, 0)).unwrap(), f(1, 0));
    }

    #[test]
    fn equality_oracle() {
        let a = alg("A2");
        // q f₁f₂f₁ vs its Serre rearrangement are equal only as stated.
        let f1 = f(1, 0);
        let f2 = f(2, 0);
        let x = a.mul(&a.mul(&f1, &f2), &f1);
        assert!(a.equal(&x, &x).unwrap());
        assert!(!a.equal(&x, &a.mul(&a.mul(&f2, &f1), &f1)).unwrap());
    }
}
