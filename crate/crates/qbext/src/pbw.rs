//! PBW data: root vectors obtained by braid chains, PBW monomials, Gram
//! matrices with the orthogonality certificate, projection-based
//! straightening, span membership, and well-definedness of the subalgebra
//! attached to a positive braid word.

use crate::algebra::{Algebra, Elem};
use crate::cartan::Root;
use crate::coeffs::{Frac, LaurentScalar};
use crate::error::{QbError, QbResult};
use std::collections::{BTreeMap, HashMap};

/// A PBW datum: a sequence of node indices (0-based) and a base level ξ.
/// Positions are indexed `0..seq.len()` throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwDatum {
    pub seq: Vec<usize>,
    pub xi: i32,
}

impl PbwDatum {
    pub fn new(seq: Vec<usize>, xi: i32) -> QbResult<Self> {
        if seq.is_empty() {
            return Err(QbError::Usage("PBW datum needs a nonempty sequence".into()));
        }
        Ok(Self { seq, xi })
    }

    fn validate(&self, a: &Algebra) -> QbResult<()> {
        for &i in &self.seq {
            if i >= a.cd.rank() {
                return Err(QbError::Usage(format!(
                    "node index {} exceeds the rank {}",
                    i + 1,
                    a.cd.rank()
                )));
            }
        }
        Ok(())
    }
}

/// The PBW root vectors `F_k = T_{i_1} ⋯ T_{i_{k-1}}(f_{i_k, ξ})`, one per
/// position. Each vector is asserted bar-invariant.
pub fn pbw_root_vectors(a: &Algebra, pd: &PbwDatum) -> QbResult<Vec<Elem>> {
    root_vectors_signed(a, pd, false)
}

/// The ∗-twisted family `∗F_k = T_{i_1}^{-1} ⋯ T_{i_{k-1}}^{-1}(f_{i_k, ξ})`.
pub fn pbw_root_vectors_starred(a: &Algebra, pd: &PbwDatum) -> QbResult<Vec<Elem>> {
    root_vectors_signed(a, pd, true)
}

fn root_vectors_signed(a: &Algebra, pd: &PbwDatum, inverse: bool) -> QbResult<Vec<Elem>> {
    pd.validate(a)?;
    let mut out = Vec::with_capacity(pd.seq.len());
    for k in 0..pd.seq.len() {
        let f = Elem::generator(pd.seq[k], pd.xi);
        let v = a.t_word(&pd.seq[..k], &f, inverse)?;
        debug_assert!(
            a.equal(&a.bar_elem(&v), &v).unwrap_or(true),
            "PBW root vector at position {k} is not bar-invariant"
        );
        out.push(v);
    }
    Ok(out)
}

/// The PBW monomial `F(d) = F_v^{d_v} ⋯ F_u^{d_u}` (decreasing position,
/// plain powers), in canonical normal form.
pub fn pbw_monomial(a: &Algebra, pd: &PbwDatum, d: &[u32]) -> QbResult<Elem> {
    let vectors = pbw_root_vectors(a, pd)?;
    a.normal_form(&monomial_product(a, &vectors, d)?)
}

/// The decreasing-position product, level-sorted but not block-normalized
/// (sufficient for pairing, and avoids the slice-height guardrail).
fn monomial_product(a: &Algebra, vectors: &[Elem], d: &[u32]) -> QbResult<Elem> {
    if d.len() != vectors.len() {
        return Err(QbError::Usage(format!(
            "exponent vector length {} does not match the datum length {}",
            d.len(),
            vectors.len()
        )));
    }
    let mut acc = Elem::one();
    for k in (0..d.len()).rev() {
        for _ in 0..d[k] {
            acc = a.mul(&acc, &vectors[k]);
        }
    }
    Ok(acc)
}

/// ⟨⟨F(d), F(d′)⟩⟩ for all pairs of the given exponent vectors. The result
/// must be diagonal with entries
/// `∏_k q_{i_k}^{-d_k(d_k-1)/2}(q_{i_k}^{-1}-q_{i_k})^{d_k}[d_k]_{i_k}!`;
/// both facts are checked and violations reported as errors naming the
/// offending pair.
pub fn gram_matrix(
    a: &Algebra,
    pd: &PbwDatum,
    indices: &[Vec<u32>],
) -> QbResult<Vec<Vec<LaurentScalar>>> {
    let vectors = pbw_root_vectors(a, pd)?;
    let weights: Vec<Root> = vectors
        .iter()
        .map(|v| a.weight(v))
        .collect::<QbResult<_>>()?;
    // Factored pairing applies when every root vector lives in a single
    // slice and the levels are monotone along the datum, so the
    // decreasing-position product splits into per-level factors.
    let levels: Option<Vec<i32>> = vectors
        .iter()
        .map(|v| match v.levels().as_slice() {
            [p] => Some(*p),
            _ => None,
        })
        .collect();
    let factorable = levels
        .as_ref()
        .map(|ls| ls.windows(2).all(|w| w[0] <= w[1]))
        .unwrap_or(false);
    let n = indices.len();
    for d in indices {
        if d.len() != vectors.len() {
            return Err(QbError::Usage(
                "exponent vector length does not match the datum length".into(),
            ));
        }
    }
    // Distinct total weights pair to zero outright, so only compare within
    // weight groups.
    let mut weight_groups: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
    for (r, d) in indices.iter().enumerate() {
        weight_groups.entry(combined_weight(&weights, d)).or_default().push(r);
    }

    // Per-level factor machinery for the factorable case. Consecutive
    // equal-level positions form a block; each monomial restricts to an
    // exponent key per block, and the pairing is the product of per-block
    // slice pairings. For each block, the Gram table over the distinct
    // restricted keys is built once: within each content group the
    // pairings against a fixed right argument share one derivative chain.
    let factorable_tables = if factorable {
        let ls = levels.as_ref().unwrap();
        let mut blocks: Vec<(i32, Vec<usize>)> = Vec::new();
        for (k, &p) in ls.iter().enumerate() {
            match blocks.last_mut() {
                Some((q, ks)) if *q == p => ks.push(k),
                _ => blocks.push((p, vec![k])),
            }
        }
        // Clear the root-vector denominators once: pairing the scaled
        // vectors keeps every coefficient in the derivative chains a plain
        // Laurent polynomial (no rational-function gcds), and the scale is
        // divided back out of each entry.
        let mut scaled = Vec::with_capacity(vectors.len());
        let mut dens = Vec::with_capacity(vectors.len());
        for v in &vectors {
            let mut den = LaurentScalar::one();
            for (_, c) in v.terms() {
                den = LaurentScalar::lcm(&den, c.denom());
            }
            scaled.push(v.scale(&Frac::from_laurent(den.clone())));
            dens.push(den);
        }
        let mut tables = Vec::with_capacity(blocks.len());
        for (_, positions) in &blocks {
            let mut key_ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            let mut key_of_index = Vec::with_capacity(n);
            for d in indices {
                let key: Vec<u32> = positions.iter().map(|&k| d[k]).collect();
                let next = key_ids.len();
                key_of_index.push(*key_ids.entry(key).or_insert(next));
            }
            // For each distinct key: the monomial as an element, its
            // factor list (for the factor-by-factor pairing), and its
            // content.
            let vec_contents: Vec<Root> = vectors
                .iter()
                .map(|v| a.word_content(v.terms().next().expect("root vector is nonzero").0))
                .collect();
            let mut elems = vec![Elem::one(); key_ids.len()];
            let mut factor_lists: Vec<Vec<Elem>> = vec![Vec::new(); key_ids.len()];
            let mut contents = vec![a.cd.zero_root(); key_ids.len()];
            let mut scale_dens = vec![LaurentScalar::one(); key_ids.len()];
            for (key, &id) in &key_ids {
                let mut acc = Elem::one();
                let mut content = a.cd.zero_root();
                for (&k, &dk) in positions.iter().zip(key).rev() {
                    for _ in 0..dk {
                        acc = a.mul(&acc, &scaled[k]);
                        factor_lists[id].push(scaled[k].clone());
                        scale_dens[id] = &scale_dens[id] * &dens[k];
                        for (c, w) in content.iter_mut().zip(&vec_contents[k]) {
                            *c += w;
                        }
                    }
                }
                elems[id] = acc;
                contents[id] = content;
            }
            // Block monomials are content-pure, so the table is block
            // diagonal over contents; cross-content entries stay absent
            // (zero).
            let mut content_groups: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
            for (id, content) in contents.iter().enumerate() {
                content_groups.entry(content.clone()).or_default().push(id);
            }
            let mut gram: HashMap<(usize, usize), Frac> = HashMap::new();
            for (content, ids) in &content_groups {
                let factor = Frac::from_laurent(a.slice_factor_of_content(content));
                for (pos, &sid) in ids.iter().enumerate() {
                    for &rid in &ids[..=pos] {
                        let value = a.kpair_factors(&factor_lists[rid], &elems[sid]);
                        let unscale = Frac::new(
                            LaurentScalar::one(),
                            &scale_dens[rid] * &scale_dens[sid],
                        );
                        gram.insert(
                            (rid.min(sid), rid.max(sid)),
                            &(&value * &factor) * &unscale,
                        );
                    }
                }
            }
            tables.push((key_of_index, gram));
        }
        Some(tables)
    } else {
        None
    };

    let entry_of = |r: usize, s: usize| -> QbResult<Frac> {
        if let Some(tables) = &factorable_tables {
            let mut result = Frac::one();
            for (key_of_index, gram) in tables {
                let (ir, is) = (key_of_index[r], key_of_index[s]);
                match gram.get(&(ir.min(is), ir.max(is))) {
                    Some(v) if !v.is_zero() => result = &result * v,
                    _ => return Ok(Frac::zero()),
                }
            }
            Ok(result)
        } else {
            a.form(
                &monomial_product(a, &vectors, &indices[r])?,
                &monomial_product(a, &vectors, &indices[s])?,
            )
        }
    };

    let mut out = vec![vec![LaurentScalar::zero(); n]; n];
    for group in weight_groups.values() {
        for (gr, &r) in group.iter().enumerate() {
            for &s in &group[gr..] {
                let entry = entry_of(r, s)?;
                let (dr, ds) = (&indices[r], &indices[s]);
                if r != s && !entry.is_zero() {
                    return Err(QbError::Internal(format!(
                        "PBW monomials {dr:?} and {ds:?} are not orthogonal: ⟨⟨·,·⟩⟩ = {entry}"
                    )));
                }
                if r == s {
                    let expected = diagonal_gram_entry(a, &pd.seq, dr);
                    if entry.as_laurent() != Some(&expected) {
                        return Err(QbError::Internal(format!(
                            "diagonal Gram entry for {dr:?} is {entry}, expected {expected}"
                        )));
                    }
                    out[r][r] = expected;
                }
            }
        }
    }
    Ok(out)
}

/// The closed-form diagonal entry
/// `∏_k q_{i_k}^{-d_k(d_k-1)/2}(q_{i_k}^{-1}-q_{i_k})^{d_k}[d_k]_{i_k}!`.
pub fn diagonal_gram_entry(a: &Algebra, seq: &[usize], d: &[u32]) -> LaurentScalar {
    let mut entry = LaurentScalar::one();
    for (k, &dk) in d.iter().enumerate() {
        if dk == 0 {
            continue;
        }
        let i = seq[k];
        let t = dk as i64;
        let bracket = &a.cd.qi_pow(i, -1) - &a.cd.qi_pow(i, 1);
        entry = &entry * &a.cd.qi_pow(i, -t * (t - 1) / 2);
        entry = &entry * &bracket.pow(dk);
        entry = &entry * &a.cd.qfact(dk, i);
    }
    entry
}

fn combined_weight(weights: &[Root], d: &[u32]) -> Root {
    let mut wt = vec![0i64; weights.first().map_or(0, |w| w.len())];
    for (k, &dk) in d.iter().enumerate() {
        for (c, w) in wt.iter_mut().zip(&weights[k]) {
            *c += i64::from(dk) * w;
        }
    }
    wt
}

/// All exponent vectors of the given length with total ≤ `max_total`, in
/// lexicographic order.
pub fn exponent_vectors(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(pos + 1, remaining - e, current, out);
        }
        current[pos] = 0;
    }
    rec(0, max_total, &mut current, &mut out);
    out.sort();
    out
}

/// Exponent vectors supported on `support` with matching combined weight
/// and total exponent ≤ `max_total`.
fn matched_exponents(
    weights: &[Root],
    support: &[usize],
    target: &Root,
    max_total: u32,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; weights.len()];
    fn rec(
        weights: &[Root],
        support: &[usize],
        pos: usize,
        remaining: u32,
        current: &mut Vec<u32>,
        target: &Root,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == support.len() {
            let wt = combined_weight(weights, current);
            if &wt == target {
                out.push(current.clone());
            }
            return;
        }
        for e in 0..=remaining {
            current[support[pos]] = e;
            rec(weights, support, pos + 1, remaining - e, current, target, out);
        }
        current[support[pos]] = 0;
    }
    rec(weights, support, 0, max_total, &mut current, target, &mut out);
    out
}

/// Straighten `F_k F_t − q^{−(wt F_k, wt F_t)} F_t F_k` (positions `k < t`,
/// 0-based) over PBW monomials supported strictly between `k` and `t`, by
/// orthogonal projection. A nonzero residual after projection is a hard
/// error: it would signal a normal-form or pairing bug.
pub fn straighten(
    a: &Algebra,
    pd: &PbwDatum,
    k: usize,
    t: usize,
) -> QbResult<BTreeMap<Vec<u32>, Frac>> {
    if k >= t || t >= pd.seq.len() {
        return Err(QbError::Usage(format!(
            "straighten needs positions k < t inside the datum, got k={k}, t={t}, len={}",
            pd.seq.len()
        )));
    }
    let vectors = pbw_root_vectors(a, pd)?;
    let weights: Vec<Root> = vectors
        .iter()
        .map(|v| a.weight(v))
        .collect::<QbResult<_>>()?;
    let q_power = LaurentScalar::v_pow(-2 * a.cd.pairing(&weights[k], &weights[t]));
    let lhs = a
        .mul(&vectors[k], &vectors[t])
        .sub(&a.mul(&vectors[t], &vectors[k]).scale(&Frac::from_laurent(q_power)));
    let target: Root = weights[k]
        .iter()
        .zip(&weights[t])
        .map(|(x, y)| x + y)
        .collect();
    let support: Vec<usize> = (k + 1..t).collect();
    let mut bound = (lhs.max_word_len() as u32).max(1);
    for attempt in 0..2 {
        let mut result: BTreeMap<Vec<u32>, Frac> = BTreeMap::new();
        let mut residual = lhs.clone();
        for c in matched_exponents(&weights, &support, &target, bound) {
            let fc = monomial_product(a, &vectors, &c)?;
            let denom = a.form(&fc, &fc)?;
            if denom.is_zero() {
                return Err(QbError::Internal(format!(
                    "PBW monomial {c:?} pairs to zero with itself"
                )));
            }
            let coeff = &a.form(&lhs, &fc)? * &denom.inv();
            if !coeff.is_zero() {
                residual = residual.sub(&fc.scale(&coeff));
                result.insert(c, coeff);
            }
        }
        if a.is_zero_elem(&residual)? {
            return Ok(result);
        }
        if attempt == 0 {
            bound *= 2;
        }
    }
    Err(QbError::Internal(format!(
        "straightening residual is nonzero for positions ({k},{t}) with bound {bound}"
    )))
}

/// Coordinates of `x` over the PBW monomials of the datum, or `None` when
/// `x` is not in their span. The candidate degree bound defaults to the
/// longest word of `x` plus a small slack.
pub fn membership(
    a: &Algebra,
    pd: &PbwDatum,
    x: &Elem,
    max_deg: Option<u32>,
) -> QbResult<Option<BTreeMap<Vec<u32>, Frac>>> {
    if x.is_zero() {
        return Ok(Some(BTreeMap::new()));
    }
    let vectors = pbw_root_vectors(a, pd)?;
    let weights: Vec<Root> = vectors
        .iter()
        .map(|v| a.weight(v))
        .collect::<QbResult<_>>()?;
    let target = a.weight(x)?;
    let support: Vec<usize> = (0..pd.seq.len()).collect();
    let bound = max_deg.unwrap_or_else(|| x.max_word_len() as u32 + 2);
    let mut result: BTreeMap<Vec<u32>, Frac> = BTreeMap::new();
    let mut residual = x.clone();
    for d in matched_exponents(&weights, &support, &target, bound) {
        let fd = monomial_product(a, &vectors, &d)?;
        let denom = a.form(&fd, &fd)?;
        if denom.is_zero() {
            return Err(QbError::Internal(format!(
                "PBW monomial {d:?} pairs to zero with itself"
            )));
        }
        let coeff = &a.form(x, &fd)? * &denom.inv();
        if !coeff.is_zero() {
            residual = residual.sub(&fd.scale(&coeff));
            result.insert(d, coeff);
        }
    }
    if a.is_zero_elem(&residual)? {
        Ok(Some(result))
    } else {
        Ok(None)
    }
}

/// Well-definedness of the subalgebra attached to a positive braid word:
/// every single braid-move neighbor of `seq` must span the same space,
/// checked by mutual membership of the two families of root vectors.
pub fn seq_of(a: &Algebra, seq: &[usize], xi: i32) -> QbResult<bool> {
    let pd = PbwDatum::new(seq.to_vec(), xi)?;
    let vectors = pbw_root_vectors(a, &pd)?;
    for neighbor in crate::braid::braid_move_neighbors(&a.cd, seq) {
        let pd2 = PbwDatum::new(neighbor, xi)?;
        let vectors2 = pbw_root_vectors(a, &pd2)?;
        for v in &vectors {
            if membership(a, &pd2, v, None)?.is_none() {
                return Ok(false);
            }
        }
        for v in &vectors2 {
            if membership(a, &pd, v, None)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
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

    fn q_commutator(a: &Algebra, x: &Elem, y: &Elem) -> Elem {
        // [x, y]_q = xy − q^{-(wt x, wt y)} yx.
        let power = LaurentScalar::v_pow(
            -2 * a.cd.pairing(&a.weight(x).unwrap(), &a.weight(y).unwrap()),
        );
        a.mul(x, y).sub(&a.mul(y, x).scale(&Frac::from_laurent(power)))
    }

    #[test]
    fn a2_locally_reduced_root_vectors() {
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 0, 1, 0, 1], 0).unwrap();
        let vs = pbw_root_vectors(&a, &pd).unwrap();
        let kappa_inv = Frac::new(LaurentScalar::one(), a.cd.kappa(0));
        let bracket01 = q_commutator(&a, &f(1, 0), &f(2, 0)).scale(&kappa_inv);
        let bracket01_up = q_commutator(&a, &f(1, 1), &f(2, 1)).scale(&kappa_inv);
        let expected = [
            f(1, 0),
            a.normal_form(&bracket01).unwrap(),
            f(2, 0),
            f(1, 1),
            a.normal_form(&bracket01_up).unwrap(),
            f(2, 1),
        ];
        assert_eq!(vs.len(), 6);
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(&vs[k], e, "root vector at position {k}");
        }
    }

    #[test]
    fn a2_arbitrary_sequence_root_vectors() {
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 1, 0], 0).unwrap();
        let vs = pbw_root_vectors(&a, &pd).unwrap();
        let kappa_inv = Frac::new(LaurentScalar::one(), a.cd.kappa(0));
        let f3 = a
            .normal_form(&q_commutator(&a, &f(1, 1), &f(2, 1)).scale(&kappa_inv))
            .unwrap();
        assert_eq!(vs[2], f3);
        let inner = q_commutator(&a, &f(1, 1), &f(2, 1));
        let f4 = a
            .normal_form(
                &q_commutator(&a, &inner, &f(2, 0)).scale(&kappa_inv.pow(2)),
            )
            .unwrap();
        assert_eq!(vs[3], f4);
    }

    #[test]
    fn single_letter_datum() {
        let a = alg("G2");
        let pd = PbwDatum::new(vec![1], -3).unwrap();
        assert_eq!(pbw_root_vectors(&a, &pd).unwrap(), vec![f(2, -3)]);
        assert_eq!(pbw_root_vectors_starred(&a, &pd).unwrap(), vec![f(2, -3)]);
    }

    #[test]
    fn starred_duality_lemma() {
        // For a locally reduced bi-infinite window with the ∗-twist
        // convention, F_k of (𝒊, a) equals ∗F_{N−k} of (𝒊⁻, b) where
        // 𝒊 = (i_1, …), 𝒊⁻ = (i_0, i_{-1}, …), N = ℓ(w∘)·(b−a+1).
        let a = alg("A2");
        let cd = &a.cd;
        let fwd = crate::weyl::locally_reduced_sequence(cd, &[0], 6).unwrap();
        // Backwards indices: i_{-k} = (i_{3-k})^*.
        let dual = |i: usize| crate::weyl::dual_index(cd, i);
        let back: Vec<usize> = (0..3).map(|m| dual(fwd[2 - m])).collect();
        for (aa, bb) in [(0i32, 0i32), (0, 1)] {
            let n = 3 * (bb - aa + 1) as usize;
            let pd_fwd = PbwDatum::new(fwd[..n].to_vec(), aa).unwrap();
            let mut back_seq = back.clone();
            while back_seq.len() < n {
                let m = back_seq.len();
                back_seq.push(dual(back_seq[m - 3]));
            }
            let pd_back = PbwDatum::new(back_seq, bb).unwrap();
            let forward = pbw_root_vectors(&a, &pd_fwd).unwrap();
            let starred = pbw_root_vectors_starred(&a, &pd_back).unwrap();
            for k in 1..=n {
                assert_eq!(
                    forward[k - 1],
                    starred[n - k],
                    "duality fails at k={k}, window [{aa},{bb}]"
                );
            }
        }
    }

    #[test]
    fn monomials() {
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 0, 1, 0, 1], 0).unwrap();
        assert_eq!(pbw_monomial(&a, &pd, &[0; 6]).unwrap(), Elem::one());
        let vs = pbw_root_vectors(&a, &pd).unwrap();
        for k in 0..6 {
            let mut d = vec![0u32; 6];
            d[k] = 1;
            assert_eq!(pbw_monomial(&a, &pd, &d).unwrap(), vs[k]);
        }
        // d = (1,0,1,0,0,0) → normal_form(f_{2,0} f_{1,0}).
        let d = [1, 0, 1, 0, 0, 0];
        let expected = a.normal_form(&a.mul(&f(2, 0), &f(1, 0))).unwrap();
        assert_eq!(pbw_monomial(&a, &pd, &d).unwrap(), expected);
    }

    #[test]
    fn gram_small() {
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 0, 1, 0, 1], 0).unwrap();
        let mut indices = vec![vec![0u32; 6]];
        for k in 0..6 {
            let mut d = vec![0u32; 6];
            d[k] = 1;
            indices.push(d.clone());
            d[k] = 2;
            indices.push(d);
        }
        let g = gram_matrix(&a, &pd, &indices).unwrap();
        // d = e_k diagonal entries are q^{-1} − q.
        let bracket = &LaurentScalar::q_pow(-1) - &LaurentScalar::q_pow(1);
        assert_eq!(g[1][1], bracket);
        // d = 2e_k entries are q^{-1}(q^{-1}−q)²[2]!.
        let expected = &(&LaurentScalar::q_pow(-1) * &bracket.pow(2)) * &crate::coeffs::qint(2, 1);
        assert_eq!(g[2][2], expected);
        assert_eq!(g[0][0], LaurentScalar::one());
    }

    #[test]
    fn straighten_a2_examples() {
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 1, 0], 0).unwrap();
        // [F₂, F₃]_q = 1 − q² (positions 1 and 2, 0-based).
        let result = straighten(&a, &pd, 1, 2).unwrap();
        let one_minus_q2 = Frac::from_laurent(&LaurentScalar::one() - &LaurentScalar::q_pow(1).pow(2));
        assert_eq!(
            result,
            BTreeMap::from([(vec![0u32, 0, 0, 0], one_minus_q2)])
        );
        // [F₁, F₄]_q = q²(q^{-1}−q)F₃F₂ − q²(q^{-1}−q).
        let result = straighten(&a, &pd, 0, 3).unwrap();
        let coeff = Frac::from_laurent(
            &LaurentScalar::q_pow(2) * &(&LaurentScalar::q_pow(-1) - &LaurentScalar::q_pow(1)),
        );
        assert_eq!(
            result,
            BTreeMap::from([
                (vec![0u32, 1, 1, 0], coeff.clone()),
                (vec![0u32, 0, 0, 0], -&coeff),
            ])
        );
    }

    #[test]
    fn straighten_locally_reduced_is_q_commutation_beyond_window() {
        // For a locally reduced datum over levels [0,2] in A₂ (ℓ = 3),
        // positions with t > k + ℓ q-commute: the straightening map is empty.
        let a = alg("A2");
        let seq = crate::weyl::locally_reduced_sequence(&a.cd, &[0], 9).unwrap();
        let pd = PbwDatum::new(seq, 0).unwrap();
        for (k, t) in [(0usize, 4usize), (0, 7), (1, 5), (2, 8), (0, 8)] {
            assert!(t > k + 3);
            let result = straighten(&a, &pd, k, t).unwrap();
            assert!(
                result.is_empty(),
                "positions ({k},{t}) should q-commute, got {result:?}"
            );
        }
    }

    #[test]
    fn membership_basics() {
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 0], 0).unwrap();
        let vs = pbw_root_vectors(&a, &pd).unwrap();
        for (k, v) in vs.iter().enumerate() {
            let coords = membership(&a, &pd, v, None).unwrap().expect("member");
            let mut d = vec![0u32; 3];
            d[k] = 1;
            assert_eq!(coords, BTreeMap::from([(d, Frac::one())]));
        }
        // f_{1,1} lives in the level-1 slice, disjoint from this span.
        assert!(membership(&a, &pd, &f(1, 1), None).unwrap().is_none());
        // A product of two root vectors has the straightening coordinates.
        let pd4 = PbwDatum::new(vec![0, 1, 1, 0], 0).unwrap();
        let vs4 = pbw_root_vectors(&a, &pd4).unwrap();
        let x = a.mul(&vs4[1], &vs4[2]);
        let coords = membership(&a, &pd4, &x, None).unwrap().expect("member");
        let st = straighten(&a, &pd4, 1, 2).unwrap();
        // x = q^{-(wt₂,wt₃)} F₃F₂ + straightening terms.
        let qpow = Frac::from_laurent(LaurentScalar::v_pow(
            -2 * a.cd.pairing(
                &a.weight(&vs4[1]).unwrap(),
                &a.weight(&vs4[2]).unwrap(),
            ),
        ));
        let mut expected = st;
        expected.insert(vec![0, 1, 1, 0], qpow);
        assert_eq!(coords, expected);
    }

    #[test]
    fn seq_well_definedness() {
        let a = alg("A2");
        assert!(seq_of(&a, &[0, 1, 0], 0).unwrap());
        assert!(seq_of(&a, &[0], 0).unwrap());
    }

    #[test]
    fn shift_covariance_and_suffix_reduction() {
        let a = alg("A2");
        let seq = vec![0usize, 1, 1, 0];
        let v0 = pbw_root_vectors(&a, &PbwDatum::new(seq.clone(), 0).unwrap()).unwrap();
        let v1 = pbw_root_vectors(&a, &PbwDatum::new(seq.clone(), 1).unwrap()).unwrap();
        for (x, y) in v0.iter().zip(&v1) {
            assert_eq!(&a.shift_d(x, 1), y);
        }
        // Root vectors at positions ≥ r equal the length-(r-1) chain applied
        // to the truncated datum's vectors.
        let r = 2;
        let tail = pbw_root_vectors(&a, &PbwDatum::new(seq[r..].to_vec(), 0).unwrap()).unwrap();
        for (m, t) in tail.iter().enumerate() {
            let lifted = a.t_word(&seq[..r], t, false).unwrap();
            assert_eq!(lifted, v0[r + m]);
        }
    }

    #[test]
    fn factored_pairing_of_root_vector_products() {
        // ⟨⟨xy, x'y'⟩⟩ = ⟨⟨x,x'⟩⟩⟨⟨y,y'⟩⟩ for x, x' products of later root
        // vectors and y, y' of earlier ones.
        let a = alg("A2");
        let pd = PbwDatum::new(vec![0, 1, 0, 1, 0, 1], 0).unwrap();
        let vs = pbw_root_vectors(&a, &pd).unwrap();
        let y = a.mul(&vs[1], &vs[0]);
        let y2 = a.mul(&vs[2], &vs[0]);
        let x = a.mul(&vs[5], &vs[3]);
        let x2 = a.mul(&vs[5], &vs[3]);
        let lhs = a.form(&a.mul(&x, &y), &a.mul(&x2, &y2)).unwrap();
        let rhs = &a.form(&x, &x2).unwrap() * &a.form(&y, &y2).unwrap();
        assert_eq!(lhs, rhs);
    }
}
