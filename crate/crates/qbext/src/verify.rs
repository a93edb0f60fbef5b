//! Self-verification suites, shared between the CLI `verify` command and
//! the acceptance-test target. Every check is exact; failures carry the
//! mismatching values.

use crate::algebra::{Algebra, Elem, Letter, Word};
use crate::braid::{braid_move_neighbors, garside_normal_form, gcd, left_divides};
use crate::cartan::CartanDatum;
use crate::coeffs::{Frac, LaurentScalar};
use crate::error::{QbError, QbResult};
use rand::rngs::StdRng;
use rand::Rng;

/// One verification check: a name, a verdict, and an optional diff.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, detail: None }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, detail: Some(detail.into()) }
    }

    fn of(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        if passed {
            Self::pass(name)
        } else {
            Self::fail(name, detail)
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Braid relations of the `T_i`: for every node pair the alternating
/// compositions of length `m(i,j)` agree on every generator `f_{j,p}`,
/// `p ∈ [-1, 2]`.
pub fn braid_relations(a: &Algebra) -> QbResult<Vec<Check>> {
    let rank = a.cd.rank();
    let mut checks = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            let m = a.cd.m(i, j);
            let left: Vec<usize> = (0..m).map(|s| if s % 2 == 0 { i } else { j }).collect();
            let right: Vec<usize> = (0..m).map(|s| if s % 2 == 0 { j } else { i }).collect();
            let mut bad = Vec::new();
            for k in 0..rank {
                for p in -1..=2 {
                    let x = Elem::generator(k, p);
                    let lhs = a.t_word(&left, &x, false)?;
                    let rhs = a.t_word(&right, &x, false)?;
                    if lhs != rhs {
                        bad.push(format!("f[{},{}]: {} ≠ {}", k + 1, p, lhs, rhs));
                    }
                }
            }
            checks.push(Check::of(
                format!("{} braid relation T_{}/T_{} (m = {m})", a.cd.ctype, i + 1, j + 1),
                bad.is_empty(),
                bad.join("; "),
            ));
        }
    }
    Ok(checks)
}

/// The A₂ worked examples: the six root vectors of the locally reduced
/// datum ((1,2,1,2,1,2), 0) and the two straightening identities of the
/// arbitrary-sequence datum ((1,2,2,1), 0).
pub fn example_a2() -> QbResult<Vec<Check>> {
    let a = Algebra::new(CartanDatum::new("A2".parse().unwrap())?);
    let mut checks = Vec::new();
    let f = |i: usize, p: i32| Elem::generator(i - 1, p);
    let kappa_inv = Frac::new(LaurentScalar::one(), a.cd.kappa(0));
    let q = LaurentScalar::q_pow(1);
    let bracket = |x: &Elem, y: &Elem| -> QbResult<Elem> {
        // [x, y]_q = xy − q^{-(wt x, wt y)} yx.
        let power = LaurentScalar::v_pow(-2 * a.cd.pairing(&a.weight(x)?, &a.weight(y)?));
        Ok(a.mul(x, y).sub(&a.mul(y, x).scale(&Frac::from_laurent(power))))
    };

    let pd = crate::pbw::PbwDatum::new(vec![0, 1, 0, 1, 0, 1], 0)?;
    let vs = crate::pbw::pbw_root_vectors(&a, &pd)?;
    let expected = [
        f(1, 0),
        a.normal_form(&bracket(&f(1, 0), &f(2, 0))?.scale(&kappa_inv))?,
        f(2, 0),
        f(1, 1),
        a.normal_form(&bracket(&f(1, 1), &f(2, 1))?.scale(&kappa_inv))?,
        f(2, 1),
    ];
    for (k, e) in expected.iter().enumerate() {
        checks.push(Check::of(
            format!("A2 locally reduced root vector F{}", k + 1),
            &vs[k] == e,
            format!("got {}, expected {}", vs[k], e),
        ));
    }

    let pd = crate::pbw::PbwDatum::new(vec![0, 1, 1, 0], 0)?;
    let st = crate::pbw::straighten(&a, &pd, 1, 2)?;
    let one_minus_q2 = Frac::from_laurent(&LaurentScalar::one() - &q.pow(2));
    let expected23 = std::collections::BTreeMap::from([(vec![0u32, 0, 0, 0], one_minus_q2)]);
    checks.push(Check::of(
        "A2 straightening [F2, F3]_q = 1 - q^2",
        st == expected23,
        format!("got {st:?}"),
    ));
    let st = crate::pbw::straighten(&a, &pd, 0, 3)?;
    let coeff = Frac::from_laurent(&q.pow(2) * &(&LaurentScalar::q_pow(-1) - &q));
    let expected14 = std::collections::BTreeMap::from([
        (vec![0u32, 1, 1, 0], coeff.clone()),
        (vec![0u32, 0, 0, 0], -&coeff),
    ]);
    checks.push(Check::of(
        "A2 straightening [F1, F4]_q = q^2(q^-1 - q) F3 F2 - q^2(q^-1 - q)",
        st == expected14,
        format!("got {st:?}"),
    ));
    Ok(checks)
}

/// Garside machinery, brute force: the normal form is constant on
/// braid-move equivalence classes of positive words up to `max_len` and
/// separates distinct classes; the gcd satisfies its universal property
/// against exhaustive divisor enumeration on short words.
pub fn garside(cd: &CartanDatum, max_len: usize) -> Vec<Check> {
    let rank = cd.rank();
    let mut checks = Vec::new();
    for len in 1..=max_len {
        let words = all_words(rank, len);
        // Braid-move closure classes by BFS.
        let mut class: std::collections::HashMap<Vec<usize>, usize> =
            std::collections::HashMap::new();
        let mut next_id = 0usize;
        for w in &words {
            if class.contains_key(w) {
                continue;
            }
            let id = next_id;
            next_id += 1;
            let mut queue = vec![w.clone()];
            class.insert(w.clone(), id);
            while let Some(u) = queue.pop() {
                for v in braid_move_neighbors(cd, &u) {
                    if !class.contains_key(&v) {
                        class.insert(v.clone(), id);
                        queue.push(v);
                    }
                }
            }
        }
        // Normal-form keys must be in bijection with classes.
        let mut class_key: std::collections::HashMap<usize, (usize, Vec<Vec<usize>>)> =
            std::collections::HashMap::new();
        let mut key_class: std::collections::HashMap<(usize, Vec<Vec<usize>>), usize> =
            std::collections::HashMap::new();
        let mut bad = Vec::new();
        for w in &words {
            let nf = garside_normal_form(cd, w);
            let key = (nf.delta_power, nf.factor_words(cd));
            let id = class[w];
            match class_key.get(&id) {
                None => {
                    class_key.insert(id, key.clone());
                    if let Some(other) = key_class.insert(key, id) {
                        if other != id {
                            bad.push(format!("{w:?} collides across classes {other} and {id}"));
                        }
                    }
                }
                Some(k) if *k != key => {
                    bad.push(format!("{w:?} differs from its class representative"));
                }
                _ => {}
            }
        }
        checks.push(Check::of(
            format!("{} Garside NF classifies length-{len} words ({} classes)", cd.ctype, next_id),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    // gcd universal property on words of length ≤ 3.
    let mut shorts: Vec<Vec<usize>> = Vec::new();
    for len in 1..=3usize.min(max_len) {
        shorts.extend(all_words(rank, len));
    }
    let mut bad = Vec::new();
    for x in &shorts {
        for y in &shorts {
            let g = gcd(cd, x, y);
            if !left_divides(cd, &g, x) || !left_divides(cd, &g, y) {
                bad.push(format!("gcd({x:?},{y:?}) = {g:?} is not a common divisor"));
                continue;
            }
            for z in &shorts {
                if left_divides(cd, z, x) && left_divides(cd, z, y) && !left_divides(cd, z, &g) {
                    bad.push(format!("{z:?} divides {x:?} and {y:?} but not gcd = {g:?}"));
                }
            }
        }
    }
    checks.push(Check::of(
        format!("{} gcd universal property on words of length ≤ 3", cd.ctype),
        bad.is_empty(),
        bad.into_iter().take(3).collect::<Vec<_>>().join("; "),
    ));
    checks
}

fn all_words(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..rank).map(move |i| {
                    let mut w2 = w.clone();
                    w2.push(i);
                    w2
                })
            })
            .collect();
    }
    out
}

/// A random element for property testing: up to `terms` words of length up
/// to `max_len`, letters drawn from the given level window, with small
/// integer-times-`v`-power coefficients.
pub fn random_element(
    a: &Algebra,
    rng: &mut StdRng,
    terms: usize,
    max_len: usize,
    levels: std::ops::RangeInclusive<i32>,
) -> Elem {
    let mut out = Elem::zero();
    let n_terms = rng.gen_range(1..=terms);
    for _ in 0..n_terms {
        let len = rng.gen_range(0..=max_len);
        let word: Word = (0..len)
            .map(|_| Letter::new(rng.gen_range(0..a.cd.rank()), rng.gen_range(levels.clone())))
            .collect();
        let coeff = LaurentScalar::monomial(
            rng.gen_range(-4..=4),
            num_rational::BigRational::from_integer(rng.gen_range(-3..=3i64).into()),
        );
        out.add_term(word, &Frac::from_laurent(coeff));
    }
    out
}

/// Run a named suite. `garside` takes the brute-force length cap.
pub fn run_suite(name: &str, cd: &CartanDatum, max_len: usize) -> QbResult<Vec<Check>> {
    match name {
        "braid-relations" => braid_relations(&Algebra::new(cd.clone())),
        "example-a2" => example_a2(),
        "garside" => Ok(garside(cd, max_len)),
        other => Err(QbError::Usage(format!(
            "unknown verification suite `{other}`; available: braid-relations, example-a2, garside"
        ))),
    }
}
