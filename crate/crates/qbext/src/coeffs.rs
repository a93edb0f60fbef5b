//! Exact arithmetic over the coefficient field ℚ(q^{1/2}).
//!
//! The workhorse type is [`LaurentScalar`], a Laurent polynomial in the
//! half-power variable `v = q^{1/2}` with arbitrary-precision rational
//! coefficients (`q^n` is stored as `v^{2n}`). Working over `v` keeps every
//! exponent an integer: the symmetrized powers `q_i = q^{d_i}` and the
//! constants `κ_i = q_i^{1/2}(q_i^{-1} - q_i)` only ever need integer powers
//! of `v`.
//!
//! General elements of ℚ(v) appear as exact reduced fractions of Laurent
//! polynomials ([`Frac`]); they arise inside linear solves and as
//! coefficients of braid-twisted algebra elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An exact Laurent polynomial in `v = q^{1/2}`.
///
/// Invariant: no stored coefficient is zero; the zero scalar has an empty
/// term map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Self::monomial(k, BigRational::one())
    }

    /// `q^n = v^{2n}`.
    pub fn q_pow(n: i64) -> Self {
        Self::v_pow(2 * n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exp: i64, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// The bar involution `v ↦ v^{-1}`: negates every exponent.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division: returns `Some(self / d)` when `d` divides `self` in
    /// the Laurent ring, `None` otherwise.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let a0 = self.min_exp().unwrap();
        let b0 = d.min_exp().unwrap();
        let a = self.dense(a0);
        let b = d.dense(b0);
        let (q, r) = poly_divrem(&a, &b)?;
        if !r.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(&q, a0 - b0))
    }

    /// Dense coefficient vector starting at exponent `base`.
    fn dense(&self, base: i64) -> Vec<BigRational> {
        let hi = self.max_exp().unwrap();
        let mut out = vec![BigRational::zero(); (hi - base + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - base) as usize] = c.clone();
        }
        out
    }

    fn from_dense(coeffs: &[BigRational], base: i64) -> Self {
        let mut s = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            s.add_term(base + k as i64, c);
        }
        s
    }

    /// Monic gcd in ℚ[v] of the polynomial parts (lowest exponent
    /// normalized to 0, leading coefficient 1). `gcd(0, b)` is the
    /// normalization of `b`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let norm = |s: &Self| -> Vec<BigRational> {
            if s.is_zero() {
                vec![]
            } else {
                s.dense(s.min_exp().unwrap())
            }
        };
        let mut x = norm(a);
        let mut y = norm(b);
        while !y.is_empty() {
            let (_, r) = poly_divrem(&x, &y).expect("nonzero divisor");
            x = y;
            y = trim(r);
        }
        if x.is_empty() {
            return Self::zero();
        }
        let lead = x.last().unwrap().clone();
        let monic: Vec<BigRational> = x.iter().map(|c| c / &lead).collect();
        Self::from_dense(&monic, 0)
    }

    /// Monic lcm in ℚ[v] (same normalization as [`LaurentScalar::gcd`]).
    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(a, b);
        let quotient = a.div_exact(&g).expect("gcd divides");
        Self::gcd(&(&quotient * b), &(&quotient * b))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Division with remainder for dense polynomials over ℚ (index = degree).
/// Returns `None` only when the divisor is zero.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> Option<(Vec<BigRational>, Vec<BigRational>)> {
    let b = trim(b.to_vec());
    if b.is_empty() {
        return None;
    }
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if r.len() <= db {
        return Some((vec![], r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let da = r.len() - 1;
        let c = r.last().unwrap() / &lead;
        q[da - db] = c.clone();
        for k in 0..=db {
            let t = &b[k] * &c;
            r[da - db + k] -= t;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    Some((q, r))
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &(-c.clone()));
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An exact element of ℚ(v) as a reduced fraction of Laurent polynomials.
///
/// Canonical shape: the denominator is a monic polynomial in `v` with
/// nonzero constant term (all `v`-shifts and the leading coefficient are
/// folded into the numerator), and gcd(num, den) = 1. Equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl Frac {
    pub fn zero() -> Self {
        Self { num: LaurentScalar::zero(), den: LaurentScalar::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentScalar::one(), den: LaurentScalar::one() }
    }

    pub fn from_laurent(num: LaurentScalar) -> Self {
        Self { num, den: LaurentScalar::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentScalar::from_int(n))
    }

    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = Self { num, den };
        f.reduce();
        f
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentScalar::one();
            return;
        }
        if !self.den.is_one() {
            let g = LaurentScalar::gcd(&self.num, &self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
            // Canonicalize: denominator monic with constant term at v^0.
            let shift = self.den.min_exp().unwrap();
            let lead = self.den.coeff(self.den.max_exp().unwrap());
            self.den = self
                .den
                .shift(-shift)
                .scale(&(BigRational::one() / &lead));
            self.num = self
                .num
                .shift(-shift)
                .scale(&(BigRational::one() / &lead));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numer(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denom(&self) -> &LaurentScalar {
        &self.den
    }

    /// `Some(laurent)` when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentScalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Like [`Frac::as_laurent`], but also succeeds when the denominator
    /// happens to divide the numerator exactly (which reduction already
    /// rules out, so this is simply a checked unwrap with a clear message).
    pub fn expect_laurent(&self, what: &str) -> LaurentScalar {
        self.as_laurent()
            .unwrap_or_else(|| panic!("{what}: expected Laurent polynomial, got ({})/({})", self.num, self.den))
            .clone()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl From<LaurentScalar> for Frac {
    fn from(s: LaurentScalar) -> Self {
        Self::from_laurent(s)
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        Frac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self + &-rhs
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        if self.is_zero() || rhs.is_zero() {
            return Frac::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Frac::from_laurent(&self.num * &rhs.num);
        }
        Frac::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Quantum combinatorics. All functions take the symmetrizer d_i of the node,
// so that q_i = q^{d_i} = v^{2 d_i}.
// ---------------------------------------------------------------------------

/// `q_i^k` as a Laurent scalar.
pub fn qi_pow(d: i64, k: i64) -> LaurentScalar {
    LaurentScalar::v_pow(2 * d * k)
}

/// The balanced quantum integer `[n]_{q_i} = (q_i^n - q_i^{-n})/(q_i - q_i^{-1})`.
pub fn qint(n: u32, d: i64) -> LaurentScalar {
    let mut s = LaurentScalar::zero();
    for t in 0..n {
        s += &qi_pow(d, n as i64 - 1 - 2 * t as i64);
    }
    s
}

/// `[n]_{q_i}!`.
pub fn qfact(n: u32, d: i64) -> LaurentScalar {
    let mut s = LaurentScalar::one();
    for k in 1..=n {
        s = &s * &qint(k, d);
    }
    s
}

/// The quantum binomial `[n choose m]_{q_i}`; requires `m ≤ n`.
pub fn qbinom(n: u32, m: u32, d: i64) -> LaurentScalar {
    assert!(m <= n, "qbinom requires m <= n, got m={m}, n={n}");
    let num = qfact(n, d);
    let den = &qfact(m, d) * &qfact(n - m, d);
    num.div_exact(&den).expect("quantum binomial is a Laurent polynomial")
}

/// `κ_i = q_i^{1/2}(q_i^{-1} - q_i) = v^{-d} - v^{3d}`.
pub fn kappa(d: i64) -> LaurentScalar {
    &LaurentScalar::v_pow(-d) - &LaurentScalar::v_pow(3 * d)
}

/// `κ^β = ∏_i κ_i^{n_i}` for `β = Σ n_i α_i` with all `n_i ≥ 0`.
pub fn kappa_power(beta: &[i64], ds: &[i64]) -> LaurentScalar {
    assert_eq!(beta.len(), ds.len());
    let mut s = LaurentScalar::one();
    for (n, d) in beta.iter().zip(ds) {
        assert!(*n >= 0, "kappa_power needs nonnegative coordinates, got {n}");
        s = &s * &kappa(*d).pow(*n as u32);
    }
    s
}

// ---------------------------------------------------------------------------
// Text round-trip for scalars.
// ---------------------------------------------------------------------------

/// Parse the scalar grammar: terms joined by `+`/`-`, each term an optional
/// rational coefficient, optional `*`, and an optional power of `v` or `q`
/// (`q^n` means `v^{2n}`; exponents may be negative, optionally wrapped in
/// `{}` or `()`).
pub fn parse_laurent(input: &str) -> Result<LaurentScalar, String> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty scalar".into());
    }
    let mut out = LaurentScalar::zero();
    let mut pos = 0usize;
    let mut sign = 1i64;
    if s[pos] == '+' || s[pos] == '-' {
        if s[pos] == '-' {
            sign = -1;
        }
        pos += 1;
    }
    loop {
        let (term, next) = parse_term(&s, pos)?;
        out += &term.scale(&BigRational::from_integer(BigInt::from(sign)));
        pos = next;
        if pos >= s.len() {
            break;
        }
        match s[pos] {
            '+' => sign = 1,
            '-' => sign = -1,
            c => return Err(format!("unexpected character '{c}' at offset {pos}")),
        }
        pos += 1;
    }
    Ok(out)
}

fn parse_term(s: &[char], mut pos: usize) -> Result<(LaurentScalar, usize), String> {
    let mut coeff = BigRational::one();
    let mut saw_number = false;
    if pos < s.len() && s[pos].is_ascii_digit() {
        let (n, next) = parse_bigint(s, pos)?;
        pos = next;
        let mut c = BigRational::from_integer(n);
        if pos < s.len() && s[pos] == '/' && pos + 1 < s.len() && s[pos + 1].is_ascii_digit() {
            let (d, next) = parse_bigint(s, pos + 1)?;
            if d.is_zero() {
                return Err("zero denominator in coefficient".into());
            }
            c /= BigRational::from_integer(d);
            pos = next;
        }
        coeff = c;
        saw_number = true;
    }
    if pos < s.len() && s[pos] == '*' {
        pos += 1;
    }
    if pos < s.len() && (s[pos] == 'v' || s[pos] == 'q') {
        let var = s[pos];
        pos += 1;
        let mut exp: i64 = 1;
        if pos < s.len() && s[pos] == '^' {
            pos += 1;
            let close = match s.get(pos) {
                Some('{') => Some('}'),
                Some('(') => Some(')'),
                _ => None,
            };
            if close.is_some() {
                pos += 1;
            }
            let mut esign = 1i64;
            if pos < s.len() && (s[pos] == '-' || s[pos] == '+') {
                if s[pos] == '-' {
                    esign = -1;
                }
                pos += 1;
            }
            let (e, next) = parse_bigint(s, pos)?;
            pos = next;
            exp = esign
                * i64::try_from(e).map_err(|_| "exponent out of range".to_string())?;
            if let Some(c) = close {
                if s.get(pos) != Some(&c) {
                    return Err(format!("expected '{c}' at offset {pos}"));
                }
                pos += 1;
            }
        }
        let vexp = if var == 'q' { 2 * exp } else { exp };
        Ok((LaurentScalar::monomial(vexp, coeff), pos))
    } else if saw_number {
        Ok((LaurentScalar::monomial(0, coeff), pos))
    } else {
        Err(format!("expected term at offset {pos}"))
    }
}

fn parse_bigint(s: &[char], mut pos: usize) -> Result<(BigInt, usize), String> {
    let start = pos;
    while pos < s.len() && s[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return Err(format!("expected digits at offset {pos}"));
    }
    let text: String = s[start..pos].iter().collect();
    text.parse::<BigInt>()
        .map(|n| (n, pos))
        .map_err(|e| e.to_string())
}

/// Parse a fraction of scalars: either a plain Laurent expression or the
/// form `(num)/(den)`.
pub fn parse_frac(input: &str) -> Result<Frac, String> {
    let t = input.trim();
    if let Some(rest) = t.strip_prefix('(') {
        // Try "(num)/(den)"; fall back to plain parsing on mismatch.
        if let Some(mid) = find_matching(rest) {
            let num = &rest[..mid];
            let tail = rest[mid + 1..].trim_start();
            if let Some(dpart) = tail.strip_prefix('/') {
                let dpart = dpart.trim_start();
                if let Some(drest) = dpart.strip_prefix('(') {
                    if let Some(dend) = find_matching(drest) {
                        if drest[dend + 1..].trim().is_empty() {
                            let n = parse_laurent(num)?;
                            let d = parse_laurent(&drest[..dend])?;
                            if d.is_zero() {
                                return Err("zero denominator".into());
                            }
                            return Ok(Frac::new(n, d));
                        }
                    }
                }
            }
        }
    }
    parse_laurent(t).map(Frac::from_laurent)
}

/// Offset of the `)` matching an implicit `(` already consumed.
fn find_matching(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}
