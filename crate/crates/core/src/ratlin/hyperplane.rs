use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{integer_rows, Matrix, Vector};
use super::scalar::{lcm_denominators, Rat};
use super::LinAlgError;

/// Affine functional `x ↦ c·x + c0` on `R^d`, with `c ≠ 0`.
///
/// Coefficients are kept as coprime integers. Constructors return the
/// canonical representative (first nonzero entry of `c` positive); the only
/// way to get the opposite orientation is [`Hyperplane::negated`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    c0: BigInt,
    c: Vec<BigInt>,
}

impl Hyperplane {
    /// Normalizes arbitrary rational coefficients.
    pub fn from_coefficients(c0: &Rat, c: &[Rat]) -> Result<Self, LinAlgError> {
        if c.iter().all(Zero::is_zero) {
            return Err(LinAlgError::ZeroNormal);
        }
        let l = lcm_denominators(c.iter().chain(std::iter::once(c0)));
        let scale = Rat::from_integer(l);
        let ints: Vec<BigInt> = c.iter().map(|v| (v * &scale).to_integer()).collect();
        Ok(Self::canonical((c0 * &scale).to_integer(), ints))
    }

    fn canonical(c0: BigInt, mut c: Vec<BigInt>) -> Self {
        let g = c.iter().fold(c0.abs(), |acc, v| acc.gcd(v));
        let flip = c.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative);
        let mut c0 = c0 / &g;
        for v in &mut c {
            *v = &*v / &g;
        }
        if flip {
            c0 = -c0;
            c.iter_mut().for_each(|v| *v = -&*v);
        }
        Hyperplane { c0, c }
    }

    /// Builds from stored integer coefficients, keeping their orientation but
    /// enforcing content 1.
    pub fn from_integers(c0: BigInt, c: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if c.iter().all(Zero::is_zero) {
            return Err(LinAlgError::ZeroNormal);
        }
        let oriented_like = c.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative);
        let h = Self::canonical(c0, c);
        Ok(if oriented_like { h.negated() } else { h })
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn constant(&self) -> &BigInt {
        &self.c0
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_canonical(&self) -> bool {
        self.c
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(Signed::is_positive)
    }

    pub fn negated(&self) -> Self {
        Hyperplane {
            c0: -&self.c0,
            c: self.c.iter().map(|v| -v).collect(),
        }
    }

    pub fn eval(&self, p: &Vector<Rat>) -> Result<Rat, LinAlgError> {
        if p.len() != self.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        let mut acc = Rat::from_integer(self.c0.clone());
        for (ci, pi) in self.c.iter().zip(p.iter()) {
            if !ci.is_zero() {
                acc += pi * Rat::from_integer(ci.clone());
            }
        }
        Ok(acc)
    }

    /// Evaluation on an integer point (no gcd work).
    pub fn eval_int(&self, p: &[BigInt]) -> BigInt {
        assert_eq!(p.len(), self.dim(), "point dimension mismatch");
        self.c
            .iter()
            .zip(p)
            .fold(self.c0.clone(), |acc, (ci, pi)| acc + ci * pi)
    }

    /// The unique hyperplane through `d` points of `R^d`.
    pub fn through(points: &[Vector<Rat>]) -> Result<Self, LinAlgError> {
        let d = points.len();
        if d < 2 {
            return Err(LinAlgError::TooFewPoints(d));
        }
        let mut rows = Vec::with_capacity(d);
        for p in points {
            if p.len() != d {
                return Err(LinAlgError::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
            let mut row = p.as_slice().to_vec();
            row.push(Rat::one());
            rows.push(row);
        }
        let (m, _) = integer_rows(&Matrix::from_rows(rows)?);
        Self::through_integer_system(&m)
    }

    /// Kernel of a `d × (d+1)` integer system with rows `(p_i, 1)` (possibly
    /// row-scaled), read back as `(c, c0)`.
    pub(crate) fn through_integer_system(m: &Matrix<BigInt>) -> Result<Self, LinAlgError> {
        let k = m.kernel_vector().ok_or(LinAlgError::AffinelyDependent)?;
        let mut c = k.into_inner();
        let c0 = c.pop().unwrap_or_else(BigInt::zero);
        if c.iter().all(Zero::is_zero) {
            return Err(LinAlgError::AffinelyDependent);
        }
        Ok(Self::canonical(c0, c))
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let sign = if ci.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = ci.abs();
            let coef = if mag.is_one() { String::new() } else { mag.to_string() };
            if first {
                write!(f, "{sign}{coef}x{}", i + 1)?;
            } else {
                write!(f, " {sign} {coef}x{}", i + 1)?;
            }
            first = false;
        }
        if !self.c0.is_zero() {
            let sign = if self.c0.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", self.c0.abs())?;
        }
        write!(f, " = 0")
    }
}

pub fn hyperplane_through(points: &[Vector<Rat>]) -> Result<Hyperplane, LinAlgError> {
    Hyperplane::through(points)
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{int, rat};
    use super::*;

    fn pt(v: &[i64]) -> Vector<Rat> {
        Vector::new(v.iter().map(|&x| int(x)).collect())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn through_examples() {
        let h = hyperplane_through(&[pt(&[0, 0]), pt(&[1, 1])]).unwrap();
        assert_eq!(h.normal(), ints(&[1, -1]).as_slice());
        assert_eq!(h.constant(), &BigInt::zero());

        let h = hyperplane_through(&[pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert_eq!(h.normal(), ints(&[1, 1, 1]).as_slice());
        assert_eq!(h.constant(), &BigInt::from(-1));
        assert_eq!(h.to_string(), "x1 + x2 + x3 - 1 = 0");

        assert!(matches!(
            hyperplane_through(&[pt(&[0, 0]), pt(&[0, 0])]),
            Err(LinAlgError::AffinelyDependent)
        ));
    }

    #[test]
    fn through_rational_points() {
        let pts = vec![
            Vector::new(vec![rat(1, 2), int(0)]),
            Vector::new(vec![int(0), rat(1, 3)]),
        ];
        let h = hyperplane_through(&pts).unwrap();
        // 2x + 3y - 1 = 0
        assert_eq!(h.normal(), ints(&[2, 3]).as_slice());
        assert_eq!(h.constant(), &BigInt::from(-1));
        for p in &pts {
            assert!(h.eval(p).unwrap().is_zero());
        }
    }

    #[test]
    fn normalization_and_orientation() {
        let h = Hyperplane::from_coefficients(&rat(-3, 2), &[int(0), rat(-3, 4), rat(9, 4)]).unwrap();
        assert_eq!(h.normal(), ints(&[0, 1, -3]).as_slice());
        assert_eq!(h.constant(), &BigInt::from(2));
        assert!(h.is_canonical());
        let n = h.negated();
        assert!(!n.is_canonical());
        assert_eq!(Hyperplane::from_integers(BigInt::from(-4), ints(&[0, -2, 6])).unwrap(), n);
        assert!(Hyperplane::from_coefficients(&int(1), &[int(0), int(0)]).is_err());
    }

    #[test]
    fn vertical_line_through_origin() {
        let h = hyperplane_through(&[pt(&[0, 0]), pt(&[0, 5])]).unwrap();
        assert_eq!(h.normal(), ints(&[1, 0]).as_slice());
        assert!(h.constant().is_zero());
    }
}
