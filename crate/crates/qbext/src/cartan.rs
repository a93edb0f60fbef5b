//! Finite-type Cartan data: Cartan matrices, symmetrizers, the simple-root
//! pairing, positive root systems, and the braid-relation exponents m(i, j).
//!
//! Node numbering follows Bourbaki. Symmetrizers are normalized so that
//! `min d_i = 1`. Roots are stored as integer coordinate vectors over the
//! simple roots.

use crate::coeffs::{self, LaurentScalar};
use crate::error::QbError;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A root-lattice element in simple-root coordinates.
pub type Root = Vec<i64>;

/// `ht(β) = Σ |a_i|`.
pub fn height(beta: &[i64]) -> i64 {
    beta.iter().map(|a| a.abs()).sum()
}

/// `|β| = Σ |a_i| α_i`.
pub fn abs_root(beta: &[i64]) -> Root {
    beta.iter().map(|a| a.abs()).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = QbError;

    fn from_str(s: &str) -> Result<Self, QbError> {
        let s = s.trim();
        let bad = || QbError::Usage(format!("invalid Cartan type '{s}'"));
        if s.len() < 2 {
            return Err(bad());
        }
        let (letter, digits) = s.split_at(1);
        let n: usize = digits.parse().map_err(|_| bad())?;
        let t = match letter {
            "A" | "a" => CartanType::A(n),
            "B" | "b" => CartanType::B(n),
            "C" | "c" => CartanType::C(n),
            "D" | "d" => CartanType::D(n),
            "E" | "e" => CartanType::E(n),
            "F" | "f" if n == 4 => CartanType::F4,
            "G" | "g" if n == 2 => CartanType::G2,
            _ => return Err(bad()),
        };
        CartanDatum::validate(t)?;
        Ok(t)
    }
}

/// A fully populated finite-type Cartan datum.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub ctype: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<Root>,
}

impl CartanDatum {
    fn validate(t: CartanType) -> Result<(), QbError> {
        let ok = match t {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(QbError::Usage(format!("invalid finite type {t}")))
        }
    }

    pub fn new(t: CartanType) -> Result<Self, QbError> {
        Self::validate(t)?;
        let n = t.rank();
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        // Edges as (i, j, c_ij, c_ji) on 0-based nodes.
        let edge = |c: &mut Vec<Vec<i64>>, i: usize, j: usize, cij: i64, cji: i64| {
            c[i][j] = cij;
            c[j][i] = cji;
        };
        let d: Vec<i64> = match t {
            CartanType::A(_) => {
                for i in 0..n - 1 {
                    edge(&mut c, i, i + 1, -1, -1);
                }
                vec![1; n]
            }
            CartanType::B(_) => {
                // Nodes 1..n-1 long (d = 2), node n short (d = 1).
                for i in 0..n - 2 {
                    edge(&mut c, i, i + 1, -1, -1);
                }
                edge(&mut c, n - 2, n - 1, -1, -2);
                let mut d = vec![2; n];
                d[n - 1] = 1;
                d
            }
            CartanType::C(_) => {
                // Nodes 1..n-1 short (d = 1), node n long (d = 2).
                for i in 0..n - 2 {
                    edge(&mut c, i, i + 1, -1, -1);
                }
                edge(&mut c, n - 2, n - 1, -2, -1);
                let mut d = vec![1; n];
                d[n - 1] = 2;
                d
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    edge(&mut c, i, i + 1, -1, -1);
                }
                edge(&mut c, n - 3, n - 1, -1, -1);
                vec![1; n]
            }
            CartanType::E(_) => {
                // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4.
                edge(&mut c, 0, 2, -1, -1);
                edge(&mut c, 1, 3, -1, -1);
                for i in 2..n - 1 {
                    edge(&mut c, i, i + 1, -1, -1);
                }
                vec![1; n]
            }
            CartanType::F4 => {
                // Nodes 1, 2 long; nodes 3, 4 short.
                edge(&mut c, 0, 1, -1, -1);
                edge(&mut c, 1, 2, -1, -2);
                edge(&mut c, 2, 3, -1, -1);
                vec![2, 2, 1, 1]
            }
            CartanType::G2 => {
                // Node 1 short (d = 1), node 2 long (d = 3).
                edge(&mut c, 0, 1, -3, -1);
                vec![1, 3]
            }
        };
        let positive_roots = generate_positive_roots(&c, n);
        let datum = Self { ctype: t, rank: n, cartan: c, d, positive_roots };
        datum.check_invariants();
        Ok(datum)
    }

    fn check_invariants(&self) {
        let n = self.rank;
        assert_eq!(self.d.iter().min(), Some(&1), "symmetrizer not normalized");
        for i in 0..n {
            assert_eq!(self.cartan[i][i], 2);
            for j in 0..n {
                if i != j {
                    assert!(self.cartan[i][j] <= 0);
                }
                assert_eq!(
                    self.d[i] * self.cartan[i][j],
                    self.d[j] * self.cartan[j][i],
                    "symmetrizability failure"
                );
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix entry `c_{i,j}` (0-based nodes).
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Symmetrizer `d_i`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn ds(&self) -> &[i64] {
        &self.d
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    pub fn zero_root(&self) -> Root {
        vec![0; self.rank]
    }

    /// Bilinear extension of `(α_i, α_j) = d_i c_{i,j}`.
    pub fn pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += beta[i] * gamma[j] * self.d[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// `⟨h_i, β⟩ = 2(α_i, β)/(α_i, α_i) = Σ_j c_{i,j} β_j`; always an integer.
    pub fn coroot_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        let twice = 2 * self.pairing(&self.simple_root(i), beta);
        let norm = 2 * self.d[i];
        debug_assert_eq!(twice % norm, 0, "coroot pairing must be integral");
        twice / norm
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn is_positive_root(&self, beta: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == beta)
    }

    /// β ∈ Φ = Φ₊ ∪ −Φ₊.
    pub fn is_root(&self, beta: &[i64]) -> bool {
        let neg: Root = beta.iter().map(|a| -a).collect();
        self.is_positive_root(beta) || self.is_positive_root(&neg)
    }

    /// Braid-relation exponent `m(i,j)`: `c_{i,j} c_{j,i} + 2` when the
    /// product is at most 2, and 6 when the product is 3.
    pub fn m(&self, i: usize, j: usize) -> usize {
        let p = self.cartan[i][j] * self.cartan[j][i];
        match p {
            0 | 1 | 2 => (p + 2) as usize,
            3 => 6,
            _ => unreachable!("finite type has c_ij c_ji <= 3"),
        }
    }

    /// Largest `p ≥ 0` reachable along the unbroken root string:
    /// `β - α, β - 2α, ...` stay in Φ up to `β - pα`.
    pub fn root_string_p(&self, beta: &[i64], alpha: &[i64]) -> Result<i64, QbError> {
        if !self.is_root(beta) || !self.is_root(alpha) {
            return Err(QbError::Usage("root_string_p requires roots".into()));
        }
        let mut p = 0i64;
        loop {
            let probe: Root = beta
                .iter()
                .zip(alpha)
                .map(|(b, a)| b - (p + 1) * a)
                .collect();
            if self.is_root(&probe) {
                p += 1;
            } else {
                return Ok(p);
            }
        }
    }

    /// Number of ways to write β as a multiset of positive roots
    /// (the dimension of the weight space `U_q^-(𝔤)_{-β}`).
    pub fn kostant_partitions(&self, beta: &[i64]) -> u64 {
        fn rec(cd: &CartanDatum, beta: &Root, min_idx: usize) -> u64 {
            if beta.iter().all(|a| *a == 0) {
                return 1;
            }
            let mut total = 0;
            for (k, alpha) in cd.positive_roots.iter().enumerate().skip(min_idx) {
                let rest: Root = beta.iter().zip(alpha).map(|(b, a)| b - a).collect();
                if rest.iter().all(|a| *a >= 0) {
                    total += rec(cd, &rest, k);
                }
            }
            total
        }
        assert!(beta.iter().all(|a| *a >= 0));
        rec(self, &beta.to_vec(), 0)
    }

    // Quantum combinatorics bound to node data.

    /// `q_i^k`.
    pub fn qi_pow(&self, i: usize, k: i64) -> LaurentScalar {
        coeffs::qi_pow(self.d[i], k)
    }

    /// `[n]_{q_i}`.
    pub fn qint(&self, n: u32, i: usize) -> LaurentScalar {
        coeffs::qint(n, self.d[i])
    }

    /// `[n]_{q_i}!`.
    pub fn qfact(&self, n: u32, i: usize) -> LaurentScalar {
        coeffs::qfact(n, self.d[i])
    }

    /// `[n choose m]_{q_i}`.
    pub fn qbinom(&self, n: u32, m: u32, i: usize) -> LaurentScalar {
        coeffs::qbinom(n, m, self.d[i])
    }

    /// `κ_i`.
    pub fn kappa(&self, i: usize) -> LaurentScalar {
        coeffs::kappa(self.d[i])
    }

    /// `κ^β` for β with nonnegative coordinates.
    pub fn kappa_power(&self, beta: &[i64]) -> LaurentScalar {
        coeffs::kappa_power(beta, &self.d)
    }
}

/// Closure of the simple roots under the simple reflections, restricted to
/// positive coordinates. For finite type this is exactly Φ₊.
fn generate_positive_roots(cartan: &[Vec<i64>], n: usize) -> Vec<Root> {
    let mut all: BTreeSet<Root> = BTreeSet::new();
    let mut frontier: Vec<Root> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    for r in &frontier {
        all.insert(r.clone());
    }
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            // s_i(β) = β - ⟨h_i, β⟩ α_i with ⟨h_i, β⟩ = Σ_j c_{i,j} β_j.
            let h: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut image = beta.clone();
            image[i] -= h;
            if image.iter().all(|a| *a >= 0) && all.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    let mut roots: Vec<Root> = all.into_iter().collect();
    roots.sort_by_key(|r| (height(r), r.clone()));
    roots
}
