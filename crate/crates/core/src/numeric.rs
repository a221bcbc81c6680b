//! Arithmetic backends.
//!
//! Every geometric routine in the crate is generic over [`Scalar`]. Two
//! backends exist: exact rationals ([`Rational`]) and `f64`. Coordinates,
//! field values and parameters are scalars; lengths, areas and perimeters
//! are [`Measure`]s, because Euclidean lengths of rational segments and
//! graph areas `∫ √(1+|∇u|²)` leave the rationals.
//!
//! In rational mode a measure is a [`RootSum`]: a finite sum `Σ qᵢ·√nᵢ`
//! with rational `qᵢ` and distinct squarefree integers `nᵢ`. Square roots of
//! distinct squarefree integers are linearly independent over ℚ, so two root
//! sums denote the same real number iff they are structurally equal.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Absolute tolerance for point coincidence in double mode.
pub const POINT_EPS: f64 = 1e-12;
/// Relative tolerance for measures in double mode.
pub const MEASURE_REL_TOL: f64 = 1e-9;

/// Global arithmetic switch carried by scenes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Rational,
    Double,
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arithmetic::Rational => f.write_str("rational"),
            Arithmetic::Double => f.write_str("double"),
        }
    }
}

/// An ordered field usable for coordinates and field values.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Measure: Measure<Self>;
    const MODE: Arithmetic;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn ratio(numer: i64, denom: i64) -> Self;
    /// Nearest representable value (exact binary expansion for rationals).
    fn from_f64(x: f64) -> Self;
    /// Parses `"3"`, `"-1/2"`, `"0.25"` or `"1e-3"`.
    fn parse_text(text: &str) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// `√self` as a measure. `self` must be non-negative.
    fn sqrt_measure(&self) -> Self::Measure;
    /// `√self` when it is representable in this backend.
    fn exact_sqrt(&self) -> Option<Self>;
    /// Comparison that treats values within [`POINT_EPS`] as equal in double
    /// mode; exact in rational mode.
    fn cmp_tol(&self, other: &Self) -> Ordering;

    fn is_zero_tol(&self) -> bool {
        self.cmp_tol(&Self::zero()) == Ordering::Equal
    }

    fn is_positive_tol(&self) -> bool {
        self.cmp_tol(&Self::zero()) == Ordering::Greater
    }

    fn is_negative_tol(&self) -> bool {
        self.cmp_tol(&Self::zero()) == Ordering::Less
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }
}

/// Non-negative quantities: lengths, areas, perimeters.
pub trait Measure<S>:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_scalar(s: S) -> Self;
    fn scale(&self, s: &S) -> Self;
    fn to_f64(&self) -> f64;
    /// True when the value is zero exactly (structurally in rational mode).
    fn is_exact_zero(&self) -> bool;
}

/// Sum of a sequence of measures.
pub fn sum_measures<S: Scalar, I: IntoIterator<Item = S::Measure>>(items: I) -> S::Measure {
    items
        .into_iter()
        .fold(<S::Measure as Measure<S>>::zero(), |acc, m| acc + m)
}

/// Two measures agree: exactly, or within `rel` relative tolerance.
pub fn measures_agree<S: Scalar>(a: &S::Measure, b: &S::Measure, rel: f64) -> bool {
    if a == b || (a.clone() - b.clone()).is_exact_zero() {
        return true;
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0)
}

/// `a ≤ b + rel·max(1,|a|,|b|)`.
pub fn measure_le<S: Scalar>(a: &S::Measure, b: &S::Measure, rel: f64) -> bool {
    if measures_agree::<S>(a, b, 0.0) {
        return true;
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    x <= y + rel * x.abs().max(y.abs()).max(1.0)
}

pub fn min_s<S: Scalar>(a: &S, b: &S) -> S {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max_s<S: Scalar>(a: &S, b: &S) -> S {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Sorts and removes duplicates up to [`Scalar::cmp_tol`].
pub fn sort_dedup<S: Scalar>(values: &mut Vec<S>) {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    values.dedup_by(|a, b| a.cmp_tol(b) == Ordering::Equal);
}

/// Formats an `f64` with 12 significant digits, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-6..15).contains(&mag) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - mag).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

// ---------------------------------------------------------------------------
// f64 backend

impl Measure<f64> for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_scalar(s: f64) -> Self {
        s
    }
    fn scale(&self, s: &f64) -> Self {
        self * s
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for f64 {
    type Measure = f64;
    const MODE: Arithmetic = Arithmetic::Double;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn parse_text(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            Some((n, d)) => {
                let n: f64 = n.trim().parse().ok()?;
                let d: f64 = d.trim().parse().ok()?;
                (d != 0.0).then(|| n / d)
            }
            None => text.parse().ok().filter(|x: &f64| x.is_finite()),
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt_measure(&self) -> f64 {
        self.max(0.0).sqrt()
    }
    fn exact_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn cmp_tol(&self, other: &Self) -> Ordering {
        if (self - other).abs() <= POINT_EPS {
            Ordering::Equal
        } else if self < other {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

// ---------------------------------------------------------------------------
// Rational backend

impl Scalar for Rational {
    type Measure = RootSum;
    const MODE: Arithmetic = Arithmetic::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(Zero::zero)
    }
    fn parse_text(text: &str) -> Option<Self> {
        parse_rational(text)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn sqrt_measure(&self) -> RootSum {
        RootSum::sqrt_of(self)
    }
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().to_biguint()?;
        let d = self.denom().to_biguint()?;
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == n && &rd * &rd == d)
            .then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
    }
    fn cmp_tol(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale huge numerators/denominators down before dividing.
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Parses an exact rational from a fraction, integer or decimal literal.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut q = BigRational::from_integer(numer);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -q } else { q })
}

/// Exact linear combination of square roots of squarefree integers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootSum {
    terms: BTreeMap<BigUint, Rational>,
}

impl RootSum {
    pub fn rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        RootSum { terms }
    }

    /// `√q` in canonical form.
    pub fn sqrt_of(q: &Rational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return RootSum::default();
        }
        let n = q.numer().to_biguint().expect("non-negative");
        let d = q.denom().to_biguint().expect("positive");
        let (sn, rn) = square_split(&n);
        let (sd, rd) = square_split(&d);
        // √(n/d) = sn·√rn / (sd·√rd) = sn/(sd·rd) · √(rn·rd)
        let coeff = BigRational::new(
            BigInt::from_biguint(Sign::Plus, sn),
            BigInt::from_biguint(Sign::Plus, sd * &rd),
        );
        let mut terms = BTreeMap::new();
        terms.insert(rn * rd, coeff);
        RootSum { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Zero::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    fn combine(mut self, other: &RootSum, sign: bool) -> Self {
        for (rad, c) in &other.terms {
            let entry = self.terms.entry(rad.clone()).or_insert_with(Zero::zero);
            if sign {
                *entry += c;
            } else {
                *entry -= c;
            }
            if entry.is_zero() {
                self.terms.remove(rad);
            }
        }
        self
    }
}

impl Add for RootSum {
    type Output = RootSum;
    fn add(self, rhs: RootSum) -> RootSum {
        self.combine(&rhs, true)
    }
}

impl Sub for RootSum {
    type Output = RootSum;
    fn sub(self, rhs: RootSum) -> RootSum {
        self.combine(&rhs, false)
    }
}

impl Neg for RootSum {
    type Output = RootSum;
    fn neg(mut self) -> RootSum {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Measure<Rational> for RootSum {
    fn zero() -> Self {
        RootSum::default()
    }
    fn from_scalar(s: Rational) -> Self {
        RootSum::rational(s)
    }
    fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return RootSum::default();
        }
        RootSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * s)).collect(),
        }
    }
    fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| rational_to_f64(c) * r.to_f64().unwrap_or(f64::INFINITY).sqrt())
            .sum()
    }
    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (rad, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if rad.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({rad})")?;
            } else {
                write!(f, "{mag}*sqrt({rad})")?;
            }
        }
        Ok(())
    }
}

const TRIAL_LIMIT: u64 = 2_000_000;

thread_local! {
    static SPLIT_CACHE: RefCell<HashMap<BigUint, (BigUint, BigUint)>> = RefCell::new(HashMap::new());
}

/// Writes `n = s²·r` with `r` squarefree.
///
/// Trial division runs up to the cube root of the unfactored cofactor, after
/// which the cofactor is 1, a prime, a product of two primes or a prime
/// square, all of which the final perfect-square test separates. The trial
/// bound is capped at [`TRIAL_LIMIT`]; beyond it the split is still a valid
/// factorization but `r` may carry a square factor.
pub fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(hit) = SPLIT_CACHE.with(|c| c.borrow().get(n).cloned()) {
        return hit;
    }
    let result = match n.to_u128() {
        Some(small) => {
            let (s, r) = square_split_u128(small);
            (BigUint::from(s), BigUint::from(r))
        }
        None => square_split_big(n),
    };
    SPLIT_CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        if cache.len() > 100_000 {
            cache.clear();
        }
        cache.insert(n.clone(), result.clone());
    });
    result
}

fn square_split_u128(mut n: u128) -> (u128, u128) {
    if n == 0 {
        return (0, 1);
    }
    let (mut s, mut r) = (1u128, 1u128);
    let mut d: u128 = 2;
    while d <= TRIAL_LIMIT as u128 && d * d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            s *= d.pow(e / 2);
            if e % 2 == 1 {
                r *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let q = n.sqrt();
    if q * q == n {
        s *= q;
    } else {
        r *= n;
    }
    (s, r)
}

fn square_split_big(n: &BigUint) -> (BigUint, BigUint) {
    let mut n = n.clone();
    let (mut s, mut r) = (BigUint::one(), BigUint::one());
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        if &db * &db * &db > n {
            break;
        }
        if (&n % &db).is_zero() {
            let mut e = 0u32;
            while (&n % &db).is_zero() {
                n /= &db;
                e += 1;
            }
            s *= db.pow(e / 2);
            if e % 2 == 1 {
                r *= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let q = n.sqrt();
    if &q * &q == n {
        s *= q;
    } else {
        r *= n;
    }
    (s, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2"), Some(q(1, 2)));
        assert_eq!(parse_rational("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_rational("3e-2"), Some(q(3, 100)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(f64::parse_text("3/4"), Some(0.75));
    }

    #[test]
    fn square_split_is_canonical() {
        let (s, r) = square_split(&BigUint::from(72u32));
        assert_eq!((s, r), (BigUint::from(6u32), BigUint::from(2u32)));
        let (s, r) = square_split(&BigUint::from(1_000_003u64 * 1_000_003u64 * 5));
        assert_eq!((s, r), (BigUint::from(1_000_003u64), BigUint::from(5u32)));
    }

    #[test]
    fn root_sums_cancel_exactly() {
        // √8 - 2√2 = 0 and √(1/2) = √2/2
        let a = RootSum::sqrt_of(&q(8, 1));
        let b = RootSum::sqrt_of(&q(2, 1)).scale(&q(2, 1));
        assert!((a - b).is_exact_zero());
        let c = RootSum::sqrt_of(&q(1, 2));
        assert_eq!(c, RootSum::sqrt_of(&q(2, 1)).scale(&q(1, 2)));
        assert_eq!(RootSum::sqrt_of(&q(9, 4)).as_rational(), Some(q(3, 2)));
    }

    #[test]
    fn root_sum_display() {
        let m = RootSum::rational(q(3, 2)) + RootSum::sqrt_of(&q(5, 1)).scale(&q(-2, 1));
        assert_eq!(m.to_string(), "3/2 - 2*sqrt(5)");
        assert!((m.to_f64() - (1.5 - 2.0 * 5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(4.0), "4");
        assert_eq!(fmt_sig(0.1 + 0.2), "0.3");
        assert_eq!(fmt_sig(2f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_sig(-1234.5), "-1234.5");
    }

    #[test]
    fn tolerant_comparison_in_double_mode() {
        assert_eq!(1.0f64.cmp_tol(&(1.0 + 1e-13)), Ordering::Equal);
        assert_eq!(1.0f64.cmp_tol(&(1.0 + 1e-9)), Ordering::Less);
        assert_eq!(q(1, 3).cmp_tol(&q(1, 3)), Ordering::Equal);
    }
}
