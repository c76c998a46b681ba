use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{format_rat, rational_sqrt, sign_of, Rat};
use super::LinAlgError;

/// The real number `a + b·√r` with rational `a`, `b` and `r ≥ 0`.
///
/// Canonical form: if `√r` is rational it is folded into `a`, and `b = 0`
/// iff `r = 0`. Arithmetic between two surds requires a shared radicand
/// (a rational surd is compatible with any radicand).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rat,
    b: Rat,
    r: Rat,
}

impl Surd {
    pub fn new(a: Rat, b: Rat, r: Rat) -> Result<Self, LinAlgError> {
        if r.is_negative() {
            return Err(LinAlgError::NegativeRadicand(format_rat(&r)));
        }
        if b.is_zero() || r.is_zero() {
            return Ok(Self::rational(a));
        }
        if let Some(s) = rational_sqrt(&r) {
            return Ok(Self::rational(a + b * s));
        }
        Ok(Surd { a, b, r })
    }

    pub fn rational(a: Rat) -> Self {
        Surd {
            a,
            b: Rat::zero(),
            r: Rat::zero(),
        }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> &Rat {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    fn common_radicand(&self, other: &Self) -> Result<Rat, LinAlgError> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.r.clone()),
            (_, true) => Ok(self.r.clone()),
            _ if self.r == other.r => Ok(self.r.clone()),
            _ => Err(LinAlgError::RadicandMismatch),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinAlgError> {
        let r = self.common_radicand(other)?;
        Surd::new(&self.a + &other.a, &self.b + &other.b, r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        let r = self.common_radicand(other)?;
        Surd::new(&self.a - &other.a, &self.b - &other.b, r)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        let r = self.common_radicand(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &r;
        let b = &self.a * &other.b + &self.b * &other.a;
        Surd::new(a, b, r)
    }

    pub fn add_rational(&self, q: &Rat) -> Self {
        Surd {
            a: &self.a + q,
            ..self.clone()
        }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::rational(Rat::zero());
        }
        Surd {
            a: &self.a * q,
            b: &self.b * q,
            r: self.r.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Sign of the value, decided with rational comparisons only.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2r = &self.b * &self.b * &self.r;
        match a2.cmp(&b2r) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Dyadic rational `m / 2^bits` within `2^-bits` of the value. Rational
    /// surds are returned exactly.
    pub fn to_dyadic(&self, bits: u32) -> Rat {
        if self.is_rational() {
            return self.a.clone();
        }
        // Two extra bits absorb the two independent floor errors.
        let q = bits + 2;
        let scale = BigInt::one() << q;
        let a_part = (&self.a * Rat::from_integer(scale.clone())).floor().to_integer();
        let t = &self.b * &self.b * &self.r * Rat::from_integer(&scale * &scale);
        let root = t.floor().to_integer().sqrt();
        let m = if self.b.is_negative() {
            a_part - root
        } else {
            a_part + root
        };
        Rat::new(m, scale)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", format_rat(&self.a))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                format_rat(&self.a),
                format_rat(&self.b),
                format_rat(&self.r)
            )
        }
    }
}

/// Sign of `a + b·√r` in `{-1, 0, 1}`.
pub fn surd_sign(s: &Surd) -> i8 {
    s.sign()
}
