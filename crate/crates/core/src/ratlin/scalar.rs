use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Element type of the linear-algebra kernel.
///
/// Any commutative ring with exact division of multiples works: the
/// fraction-free elimination routines only ever divide a value by a known
/// factor of it. That covers `BigInt`, `BigRational`, `Ratio<i64>`, and (with
/// rounding) the primitive floats.
pub trait Scalar: Clone + Debug + PartialEq + num_traits::Num + Signed {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + num_traits::Num + Signed {}

/// Exact rational number: `numerator / denominator`, always reduced, with a
/// positive denominator.
pub type Rat = BigRational;

/// Integer with arbitrary precision.
pub type Int = BigInt;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `m / 2^k`.
pub fn dyadic(m: BigInt, k: u32) -> Rat {
    Rat::new(m, BigInt::one() << k)
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Parses `"p/q"` or `"p"`. The result is reduced.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Canonical `"p/q"` text, with `/q` omitted when `q = 1`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with `digits` places after the point, rounded half
/// away from zero. Lossy by construction.
pub fn format_decimal(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rat::from_integer(scale);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let rounded = if scaled.is_negative() {
        -(-scaled + half).floor().to_integer()
    } else {
        (scaled + half).floor().to_integer()
    };
    let neg = rounded.is_negative();
    let mut s = rounded.abs().to_string();
    if digits > 0 {
        let width = digits as usize + 1;
        if s.len() < width {
            s = format!("{}{}", "0".repeat(width - s.len()), s);
        }
        s.insert(s.len() - digits as usize, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

pub fn sign_of<T: Signed>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact square root of a non-negative rational, if it has one.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}
