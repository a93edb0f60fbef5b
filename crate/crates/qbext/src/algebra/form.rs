//! Bilinear forms.
//!
//! Each constant-level slice is a copy of the negative half of the quantum
//! group, carrying the Kashiwara form `(·,·)_K` (the twisted derivations
//! `e'_i` are adjoint to left multiplication) and its global rescaling,
//! the Lusztig form `(·,·)_L = (·,·)_K / ∏(1-q_i²)^{ν_i}`. The form on the
//! whole algebra pairs level-sorted words blockwise: distinct level
//! multisets are orthogonal, and matching blocks contribute
//! `∏ κ_i^{2ν_i} · (·,·)_L`, which is division-free since
//! `κ_i² / (1-q_i²) = q_i^{-1} - q_i`.

use super::{Algebra, Elem, Word};
use crate::cartan::Root;
use crate::coeffs::{Frac, LaurentScalar};
use crate::error::{QbError, QbResult};
use std::collections::BTreeMap;

impl Algebra {
    fn check_slice(&self, x: &Elem, op: &str) -> QbResult<()> {
        if x.levels().len() > 1 {
            return Err(QbError::Usage(format!(
                "{op} expects a single-slice element; levels {:?} occur",
                x.levels()
            )));
        }
        Ok(())
    }

    /// The twisted derivation `e'_i` on a slice element:
    /// `e'_i(f_{w_1} ⋯ f_{w_n}) = Σ_{w_t = i} q_i^{-Σ_{s<t} c_{i,w_s}} ·
    /// (word minus position t)`.
    pub fn eprime_slice(&self, i: usize, x: &Elem) -> QbResult<Elem> {
        self.check_slice(x, "eprime_slice")?;
        Ok(self.eprime_raw(i, x))
    }

    /// The right-handed twin `e*_i`, stripping letters with the twist
    /// accumulated over the suffix instead of the prefix.
    pub fn estar_slice(&self, i: usize, x: &Elem) -> QbResult<Elem> {
        self.check_slice(x, "estar_slice")?;
        let mut out = Elem::zero();
        for (w, c) in x.terms() {
            let mut exp = 0i64;
            for t in (0..w.len()).rev() {
                if w[t].i as usize == i {
                    let mut shorter = w.clone();
                    shorter.remove(t);
                    out.add_term(shorter, &(c * &self.qi(i, exp)));
                }
                exp -= self.cd.c(i, w[t].i as usize);
            }
        }
        Ok(out)
    }

    fn eprime_raw(&self, i: usize, x: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (w, c) in x.terms() {
            let mut exp = 0i64;
            for t in 0..w.len() {
                if w[t].i as usize == i {
                    let mut shorter = w.clone();
                    shorter.remove(t);
                    out.add_term(shorter, &(c * &self.qi(i, exp)));
                }
                exp -= self.cd.c(i, w[t].i as usize);
            }
        }
        out
    }

    /// Kashiwara form on slice elements, by the defining recursion
    /// `(f_i x', y)_K = (x', e'_i(y))_K`, `(1,1)_K = 1`. Words are grouped
    /// by leading letter so the branching stays at most the rank.
    fn kpair(&self, x: &Elem, y: &Elem) -> Frac {
        if x.is_zero() || y.is_zero() {
            return Frac::zero();
        }
        let mut result = &x.coeff(&Vec::new()) * &y.coeff(&Vec::new());
        let mut groups: BTreeMap<u8, Elem> = BTreeMap::new();
        for (w, c) in x.terms() {
            if let Some((head, tail)) = w.split_first() {
                groups
                    .entry(head.i)
                    .or_insert_with(Elem::zero)
                    .add_term(tail.to_vec(), c);
            }
        }
        for (i, tails) in groups {
            let ey = self.eprime_raw(i as usize, y);
            if !ey.is_zero() {
                result = &result + &self.kpair(&tails, &ey);
            }
        }
        result
    }

    /// `E_a(y) = Σ_u a_u · e'_{u_n}∘…∘e'_{u_1}(y)`: the adjoint of left
    /// multiplication by `a` under the Kashiwara form, so
    /// `(a·b, y)_K = (b, E_a(y))_K`.
    pub(crate) fn eprime_chain(&self, a: &Elem, y: &Elem) -> Elem {
        if y.is_zero() {
            return Elem::zero();
        }
        let mut out = y.scale(&a.coeff(&Vec::new()));
        let mut tails_by_head: BTreeMap<u8, Elem> = BTreeMap::new();
        for (w, c) in a.terms() {
            if let Some((head, tail)) = w.split_first() {
                tails_by_head
                    .entry(head.i)
                    .or_insert_with(Elem::zero)
                    .add_term(tail.to_vec(), c);
            }
        }
        for (i, tails) in tails_by_head {
            let ey = self.eprime_raw(i as usize, y);
            if !ey.is_zero() {
                out = out.add(&self.eprime_chain(&tails, &ey));
            }
        }
        out
    }

    /// Kashiwara pairing `(x_1 ⋯ x_m, y)_K` evaluated factor by factor:
    /// folding `E` over the factors keeps the branching at the size of one
    /// factor's prefix tree instead of the whole product's.
    pub(crate) fn kpair_factors(&self, factors: &[Elem], y: &Elem) -> Frac {
        let mut acc = y.clone();
        for f in factors {
            if acc.is_zero() {
                return Frac::zero();
            }
            acc = self.eprime_chain(f, &acc);
        }
        acc.coeff(&Vec::new())
    }

    /// `∏_i κ_i^{2ν_i} / (1-q_i²)^{ν_i}`, exposed for callers that batch
    /// content-pure slice pairings themselves.
    pub(crate) fn slice_factor_of_content(&self, content: &Root) -> LaurentScalar {
        self.slice_pair_factor(content)
    }

    /// Kashiwara form on (single-slice) elements.
    pub fn kashiwara_form_slice(&self, x: &Elem, y: &Elem) -> QbResult<Frac> {
        self.check_slice(x, "kashiwara_form_slice")?;
        self.check_slice(y, "kashiwara_form_slice")?;
        Ok(self.kpair(x, y))
    }

    /// Lusztig form on (single-slice) elements:
    /// `(x,y)_L = Σ_ν (x_ν, y_ν)_K / ∏_i (1-q_i²)^{ν_i}` over content ν.
    pub fn lusztig_form_slice(&self, x: &Elem, y: &Elem) -> QbResult<Frac> {
        self.check_slice(x, "lusztig_form_slice")?;
        self.check_slice(y, "lusztig_form_slice")?;
        let mut result = Frac::zero();
        for (content, (xc, yc)) in self.content_pairs(x, y) {
            let mut den = LaurentScalar::one();
            for (i, &n) in content.iter().enumerate() {
                den = &den * &self.one_minus_qi2(i).pow(n as u32);
            }
            result = &result + &(&self.kpair(&xc, &yc) * &Frac::new(LaurentScalar::one(), den));
        }
        Ok(result)
    }

    /// `⟨⟨·,·⟩⟩` restricted to two single-slice elements:
    /// `Σ_ν ∏_i κ_i^{2ν_i}/(1-q_i²)^{ν_i} · (x_ν, y_ν)_K`. The κ-power is
    /// checked to clear the denominators exactly.
    pub(crate) fn slice_pair(&self, x: &Elem, y: &Elem) -> Frac {
        let mut result = Frac::zero();
        for (content, (xc, yc)) in self.content_pairs(x, y) {
            let factor = self.slice_pair_factor(&content);
            result = &result + &(&self.kpair(&xc, &yc) * &Frac::from_laurent(factor));
        }
        result
    }

    /// `∏_i κ_i^{2ν_i} / (1-q_i²)^{ν_i}`, asserted to be a Laurent
    /// polynomial (it equals `∏_i (q_i^{-1}-q_i)^{ν_i}`).
    fn slice_pair_factor(&self, content: &Root) -> LaurentScalar {
        let double: Root = content.iter().map(|n| 2 * n).collect();
        let num = self.cd.kappa_power(&double);
        let mut den = LaurentScalar::one();
        for (i, &n) in content.iter().enumerate() {
            den = &den * &self.one_minus_qi2(i).pow(n as u32);
        }
        Frac::new(num, den).expect_laurent("κ-power must clear the slice-form denominators")
    }

    /// Split matching-content components of two elements (levels ignored;
    /// callers guarantee single-slice inputs).
    fn content_pairs(&self, x: &Elem, y: &Elem) -> Vec<(Root, (Elem, Elem))> {
        let mut map: BTreeMap<Root, (Elem, Elem)> = BTreeMap::new();
        for (w, c) in x.terms() {
            let content = self.word_content(w);
            map.entry(content)
                .or_insert_with(|| (Elem::zero(), Elem::zero()))
                .0
                .add_term(w.clone(), c);
        }
        for (w, c) in y.terms() {
            let content = self.word_content(w);
            if let Some(entry) = map.get_mut(&content) {
                entry.1.add_term(w.clone(), c);
            }
        }
        map.into_iter()
            .filter(|(_, (xc, yc))| !xc.is_zero() && !yc.is_zero())
            .collect()
    }

    pub(crate) fn word_content(&self, w: &Word) -> Root {
        let mut content = self.cd.zero_root();
        for l in w {
            content[l.i as usize] += 1;
        }
        content
    }

    /// The symmetric bilinear form `⟨⟨·,·⟩⟩` on arbitrary elements:
    /// level-sort, then pair the top constant-level blocks with the slice
    /// form and recurse on the remainders. Distinct level multisets are
    /// orthogonal.
    pub fn form(&self, x: &Elem, y: &Elem) -> QbResult<Frac> {
        Ok(self.form_sorted(&self.p_sort(x), &self.p_sort(y)))
    }

    fn form_sorted(&self, x: &Elem, y: &Elem) -> Frac {
        if x.is_zero() || y.is_zero() {
            return Frac::zero();
        }
        let gx = top_groups(x);
        let gy = top_groups(y);
        let mut result = Frac::zero();
        for (kx, rx) in &gx {
            for (ky, ry) in &gy {
                match (kx, ky) {
                    (None, None) => {
                        result = &result + &(&rx.coeff(&Vec::new()) * &ry.coeff(&Vec::new()));
                    }
                    (Some((px, bx)), Some((py, by))) if px == py => {
                        let cx = self.word_content(bx);
                        if cx != self.word_content(by) {
                            continue;
                        }
                        let pair = &self.kpair(&Elem::word(bx.clone()), &Elem::word(by.clone()))
                            * &Frac::from_laurent(self.slice_pair_factor(&cx));
                        if !pair.is_zero() {
                            result = &result + &(&pair * &self.form_sorted(rx, ry));
                        }
                    }
                    _ => {}
                }
            }
        }
        result
    }

    /// The form on products of single-slice factors at pairwise distinct
    /// levels, computed factorwise (used for PBW Gram matrices, where the
    /// full expansion of the product would be wasteful). Factors are given
    /// highest level first; a level present on only one side pairs its
    /// factor against 1.
    pub fn form_factored(&self, xf: &[(i32, Elem)], yf: &[(i32, Elem)]) -> QbResult<Frac> {
        for (_, e) in xf.iter().chain(yf) {
            self.check_slice(e, "form_factored")?;
        }
        let mut levels: Vec<i32> = xf.iter().chain(yf).map(|(p, _)| *p).collect();
        levels.sort_unstable();
        levels.dedup();
        let collect = |fs: &[(i32, Elem)], p: i32| -> Elem {
            let mut acc = Elem::one();
            for (q, e) in fs {
                if *q == p {
                    acc = self.mul(&acc, e);
                }
            }
            acc
        };
        let mut result = Frac::one();
        for p in levels {
            let xp = collect(xf, p);
            let yp = collect(yf, p);
            result = &result * &self.slice_pair(&xp, &yp);
            if result.is_zero() {
                break;
            }
        }
        Ok(result)
    }
}

/// Group the terms of a level-sorted element by their leading
/// constant-level block. `None` keys the scalar terms; for `Some((p, b))`
/// the element collects the remainders past the block `b` at level `p`.
fn top_groups(x: &Elem) -> Vec<(Option<(i32, Word)>, Elem)> {
    let mut map: BTreeMap<Option<(i32, Word)>, Elem> = BTreeMap::new();
    for (w, c) in x.terms() {
        match w.first() {
            None => {
                map.entry(None).or_insert_with(Elem::zero).add_term(Vec::new(), c);
            }
            Some(head) => {
                let p = head.p;
                let cut = w.iter().position(|l| l.p != p).unwrap_or(w.len());
                let block: Word = w[..cut].to_vec();
                let rest: Word = w[cut..].to_vec();
                map.entry(Some((p, block)))
                    .or_insert_with(Elem::zero)
                    .add_term(rest, c);
            }
        }
    }
    map.into_iter().collect()
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

    fn qiq(k: i64) -> Frac {
        Frac::from_laurent(LaurentScalar::q_pow(k))
    }

    #[test]
    fn eprime_and_estar_basics() {
        let a = alg("A2");
        // e'₁(f₁) = 1, e'₁(f₂) = 0.
        assert_eq!(a.eprime_slice(0, &f(1, 0)).unwrap(), Elem::one());
        assert!(a.eprime_slice(0, &f(2, 0)).unwrap().is_zero());
        // e'₁(f₂f₁) = q₁^{-c₁₂} f₂ = q f₂.
        let x = a.mul(&f(2, 0), &f(1, 0));
        assert_eq!(a.eprime_slice(0, &x).unwrap(), f(2, 0).scale(&qiq(1)));
        // e*₁(f₁f₂) = q f₂ by the mirror twist.
        let x = a.mul(&f(1, 0), &f(2, 0));
        assert_eq!(a.estar_slice(0, &x).unwrap(), f(2, 0).scale(&qiq(1)));
        // e'₁(f₁f₁) = (1 + q₁^{-2}) f₁ (stripping position 1 crosses the
        // first letter, twisting by q₁^{-c₁₁} = q^{-2}).
        let x = a.mul(&f(1, 0), &f(1, 0));
        let expected = f(1, 0).scale(&(&Frac::one() + &qiq(-2)));
        assert_eq!(a.eprime_slice(0, &x).unwrap(), expected);
        // Mixed levels are rejected.
        let bad = a.mul(&f(1, 0), &f(1, 1));
        assert!(a.eprime_slice(0, &bad).is_err());
    }

    #[test]
    fn kashiwara_form_values() {
        let a = alg("A2");
        assert_eq!(a.kashiwara_form_slice(&Elem::one(), &Elem::one()).unwrap(), Frac::one());
        assert_eq!(a.kashiwara_form_slice(&f(1, 0), &f(1, 0)).unwrap(), Frac::one());
        assert!(a.kashiwara_form_slice(&f(1, 0), &f(2, 0)).unwrap().is_zero());
        // (f₁f₂, f₂f₁)_K = q.
        let x = a.mul(&f(1, 0), &f(2, 0));
        let y = a.mul(&f(2, 0), &f(1, 0));
        assert_eq!(a.kashiwara_form_slice(&x, &y).unwrap(), qiq(1));
        // (f₁², f₁²)_K = 1 + q^{-2}.
        let x = a.mul(&f(1, 0), &f(1, 0));
        assert_eq!(
            a.kashiwara_form_slice(&x, &x).unwrap(),
            &Frac::one() + &qiq(-2)
        );
    }

    #[test]
    fn kashiwara_form_is_symmetric() {
        for t in ["A2", "B2", "G2"] {
            let a = alg(t);
            let x = a.mul(&a.mul(&f(1, 0), &f(2, 0)), &f(1, 0));
            let y = a.mul(&a.mul(&f(1, 0), &f(1, 0)), &f(2, 0));
            assert_eq!(
                a.kashiwara_form_slice(&x, &y).unwrap(),
                a.kashiwara_form_slice(&y, &x).unwrap(),
                "type {t}"
            );
        }
    }

    #[test]
    fn serre_relation_is_in_the_radical() {
        let a = alg("A2");
        let f1 = f(1, 0);
        let f2 = f(2, 0);
        let serre = a
            .mul(&a.mul(&f1, &f1), &f2)
            .sub(&a.mul(&a.mul(&f1, &f2), &f1).scale(&Frac::from_laurent(crate::coeffs::qint(2, 1))))
            .add(&a.mul(&a.mul(&f2, &f1), &f1));
        for probe in [
            a.mul(&a.mul(&f1, &f1), &f2),
            a.mul(&a.mul(&f1, &f2), &f1),
            a.mul(&a.mul(&f2, &f1), &f1),
        ] {
            assert!(a.kashiwara_form_slice(&serre, &probe).unwrap().is_zero());
        }
    }

    #[test]
    fn lusztig_form_values() {
        let a = alg("A2");
        // (f₁, f₁)_L = 1/(1-q²).
        let one_minus_q2 = a.one_minus_qi2(0);
        assert_eq!(
            a.lusztig_form_slice(&f(1, 0), &f(1, 0)).unwrap(),
            Frac::new(LaurentScalar::one(), one_minus_q2)
        );
    }

    #[test]
    fn global_form_basics() {
        let a = alg("A2");
        assert_eq!(a.form(&Elem::one(), &Elem::one()).unwrap(), Frac::one());
        // ⟨⟨f_{1,0}, f_{1,0}⟩⟩ = q^{-1} - q.
        let expected = &qiq(-1) - &qiq(1);
        assert_eq!(a.form(&f(1, 0), &f(1, 0)).unwrap(), expected);
        // Distinct levels are orthogonal.
        assert!(a.form(&f(1, 0), &f(1, 1)).unwrap().is_zero());
        // Blockwise product across levels.
        let x = a.mul(&f(1, 1), &f(1, 0));
        assert_eq!(a.form(&x, &x).unwrap(), &expected * &expected);
        // Symmetry on a mixed element.
        let y = a.mul(&f(1, 1), &f(2, 0));
        let z = a.mul(&f(1, 1), &f(2, 0)).add(&x.scale(&qiq(3)));
        assert_eq!(a.form(&y, &z).unwrap(), a.form(&z, &y).unwrap());
    }

    #[test]
    fn form_is_invariant_under_sorting_representatives() {
        // The form must not depend on which level-sorted representative is
        // used, so pairing an unsorted product against anything agrees with
        // pairing its normal form.
        let a = alg("B2");
        let x = a.mul(&a.mul(&f(1, 0), &f(2, 1)), &f(1, 1));
        let nx = a.normal_form(&x).unwrap();
        let probe = a.mul(&a.mul(&f(2, 1), &f(1, 1)), &f(1, 0));
        assert_eq!(a.form(&x, &probe).unwrap(), a.form(&nx, &probe).unwrap());
    }

    #[test]
    fn adjointness_of_eprime_operators() {
        // ⟨⟨E′_{i,k}(x), y⟩⟩ = ⟨⟨x, f_{i,k}·y⟩⟩ and
        // ⟨⟨E*_{i,k}(x), y⟩⟩ = ⟨⟨x, y·f_{i,k}⟩⟩.
        let a = alg("A2");
        let samples = [
            Elem::one(),
            f(1, 0),
            a.mul(&f(1, 1), &f(2, 0)),
            a.mul(&f(1, 0), &f(1, 1)),
        ];
        for (i, k) in [(0usize, 0i32), (0, 1), (1, 0), (0, -1)] {
            for x in &samples {
                for y in &samples {
                    let lhs = a.form(&a.adjoint_eprime(i, k, x), y).unwrap();
                    let rhs = a.form(x, &a.mul(&Elem::generator(i, k), y)).unwrap();
                    assert_eq!(lhs, rhs, "E' adjointness at i={i}, k={k}");
                    let lhs = a.form(&a.adjoint_estar(i, k, x), y).unwrap();
                    let rhs = a.form(x, &a.mul(y, &Elem::generator(i, k))).unwrap();
                    assert_eq!(lhs, rhs, "E* adjointness at i={i}, k={k}");
                }
            }
        }
    }

    #[test]
    fn factored_form_agrees_with_expanded_form() {
        let a = alg("B2");
        let xf = [(1, a.mul(&f(1, 1), &f(2, 1))), (0, f(1, 0))];
        let yf = [(1, a.mul(&f(2, 1), &f(1, 1))), (0, f(1, 0))];
        let x = a.mul(&xf[0].1, &xf[1].1);
        let y = a.mul(&yf[0].1, &yf[1].1);
        assert_eq!(
            a.form_factored(&xf, &yf).unwrap(),
            a.form(&x, &y).unwrap()
        );
    }
}
