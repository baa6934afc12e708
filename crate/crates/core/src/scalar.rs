//! Exact ground-ring arithmetic: rationals Q and Gaussian rationals Q(i).
//!
//! A [`Scalar`] is a pair of arbitrary-precision reduced fractions (real and imaginary
//! part) together with a [`Ring`] flag. Scalars from different rings never mix: the
//! checked operations return a ring-mismatch error, and the operator impls panic, which
//! marks a programming error (inside one algebra the ring is fixed at construction).
//!
//! The textual form is canonical and bit-exact under round-trips: `p`, `p/q`, and for a
//! nonzero imaginary part `(re+im*i)` / `(re-im*i)` with `i` standing for an imaginary
//! part of magnitude one, e.g. `5/6`, `-3`, `(0+i)`, `(1/2-3*i)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground ring of an algebra: the rationals or the Gaussian rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// The field Q.
    #[serde(rename = "Q")]
    Rational,
    /// The field Q(i).
    #[serde(rename = "Qi")]
    GaussianRational,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "Q"),
            Ring::GaussianRational => write!(f, "Q(i)"),
        }
    }
}

/// An exact element of Q or Q(i): two reduced fractions plus the ring flag.
///
/// Invariants: both fractions are gcd-reduced with positive denominator (maintained by
/// `BigRational`), and a `Ring::Rational` scalar has zero imaginary part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    ring: Ring,
    re: BigRational,
    im: BigRational,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    /// The additive identity of the given ring.
    pub fn zero(ring: Ring) -> Self {
        Scalar { ring, re: BigRational::zero(), im: BigRational::zero() }
    }

    /// The multiplicative identity of the given ring.
    pub fn one(ring: Ring) -> Self {
        Scalar { ring, re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit of Q(i).
    pub fn i() -> Self {
        Scalar { ring: Ring::GaussianRational, re: BigRational::zero(), im: BigRational::one() }
    }

    /// An integer in the given ring.
    pub fn from_integer(n: i64, ring: Ring) -> Self {
        Scalar { ring, re: big(n), im: BigRational::zero() }
    }

    /// The fraction `num/den` in the given ring. Errors on a zero denominator.
    pub fn from_rational(num: i64, den: i64, ring: Ring) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { ring, re: BigRational::new(BigInt::from(num), BigInt::from(den)), im: BigRational::zero() })
    }

    /// A real scalar from a ready-made reduced fraction.
    pub fn from_big_rational(re: BigRational, ring: Ring) -> Self {
        Scalar { ring, re, im: BigRational::zero() }
    }

    /// The Gaussian rational `re + im*i` (always in Q(i)).
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar { ring: Ring::GaussianRational, re, im }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes (always true over Q).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    /// Checked addition; errors when the ring flags differ.
    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(Scalar { ring: self.ring, re: &self.re + &other.re, im: &self.im + &other.im })
    }

    /// Checked subtraction; errors when the ring flags differ.
    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(Scalar { ring: self.ring, re: &self.re - &other.re, im: &self.im - &other.im })
    }

    /// Checked multiplication; errors when the ring flags differ.
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        Ok(Scalar { ring: self.ring, re, im })
    }

    /// Additive inverse.
    pub fn neg(&self) -> Scalar {
        Scalar { ring: self.ring, re: -&self.re, im: -&self.im }
    }

    /// Complex conjugate (the identity over Q).
    pub fn conj(&self) -> Scalar {
        Scalar { ring: self.ring, re: self.re.clone(), im: -&self.im }
    }

    /// Multiplicative inverse `(a+bi)^{-1} = (a-bi)/(a^2+b^2)`; errors on zero.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar { ring: self.ring, re: &self.re / &norm, im: -&self.im / &norm })
    }

    /// Parses the canonical textual form into the requested ring.
    ///
    /// Accepts exactly what [`fmt::Display`] emits: `p`, `p/q`, `(re+im*i)`,
    /// `(re-im*i)` with `i` for a unit imaginary part. A nonzero imaginary part in a
    /// `Ring::Rational` target is an error.
    pub fn parse(text: &str, ring: Ring) -> Result<Scalar> {
        let s = text.trim();
        let fail = |col: usize, message: &str| Error::Parse {
            line: 1,
            col,
            message: message.to_string(),
        };
        let parse_rat = |part: &str, col: usize| -> Result<BigRational> {
            let (num_s, den_s) = match part.split_once('/') {
                Some((n, d)) => (n, d),
                None => (part, "1"),
            };
            let num: BigInt = num_s
                .parse()
                .map_err(|_| fail(col, &format!("expected an integer, found `{num_s}`")))?;
            let den: BigInt = den_s
                .parse()
                .map_err(|_| fail(col, &format!("expected an integer, found `{den_s}`")))?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        };
        if let Some(inner) = s.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| fail(s.len(), "unclosed `(` in scalar"))?;
            // Split at the sign separating real and imaginary parts (skip a leading sign).
            let bytes = inner.as_bytes();
            let mut split = None;
            for (idx, b) in bytes.iter().enumerate().skip(1) {
                if *b == b'+' || *b == b'-' {
                    split = Some(idx);
                    break;
                }
            }
            let split = split.ok_or_else(|| fail(1, "expected `(re+im*i)` or `(re-im*i)`"))?;
            let re = parse_rat(&inner[..split], 2)?;
            let negative = bytes[split] == b'-';
            let im_part = &inner[split + 1..];
            let im_mag = if im_part == "i" {
                BigRational::one()
            } else {
                let mag = im_part
                    .strip_suffix("*i")
                    .ok_or_else(|| fail(split + 2, "imaginary part must end in `i`"))?;
                parse_rat(mag, split + 2)?
            };
            if im_mag.is_zero() {
                return Err(fail(split + 2, "canonical form forbids a zero imaginary part in parentheses"));
            }
            let im = if negative { -im_mag } else { im_mag };
            if ring == Ring::Rational {
                return Err(Error::NeedsComplexRing { context: "a scalar with nonzero imaginary part".into() });
            }
            Ok(Scalar::gaussian(re, im))
        } else {
            let re = parse_rat(s, 1)?;
            Ok(Scalar { ring, re, im: BigRational::zero() })
        }
    }
}

/// Renders a reduced fraction as `p` or `p/q`.
pub(crate) fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_string(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        let mag = self.im.abs();
        if mag.is_one() {
            write!(f, "({}{}i)", rational_string(&self.re), sign)
        } else {
            write!(f, "({}{}{}*i)", rational_string(&self.re), sign, rational_string(&mag))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar ring mismatch (programmer error)")
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(n, d, Ring::Rational).unwrap()
    }

    fn gi(a: (i64, i64), b: (i64, i64)) -> Scalar {
        Scalar::gaussian(
            BigRational::new(BigInt::from(a.0), BigInt::from(a.1)),
            BigRational::new(BigInt::from(b.0), BigInt::from(b.1)),
        )
    }

    fn random_scalar(rng: &mut StdRng, ring: Ring) -> Scalar {
        let part = |rng: &mut StdRng| {
            let n = rng.random_range(-20i64..=20);
            let d = rng.random_range(1i64..=9);
            BigRational::new(BigInt::from(n), BigInt::from(d))
        };
        match ring {
            Ring::Rational => Scalar::from_big_rational(part(rng), ring),
            Ring::GaussianRational => Scalar::gaussian(part(rng), part(rng)),
        }
    }

    #[test]
    fn half_plus_third_is_five_sixths() {
        assert_eq!(q(1, 2).add(&q(1, 3)).unwrap(), q(5, 6));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i();
        assert_eq!(i.mul(&i).unwrap(), Scalar::from_integer(-1, Ring::GaussianRational));
    }

    #[test]
    fn one_plus_i_times_one_minus_i_is_two() {
        let a = gi((1, 1), (1, 1));
        let b = gi((1, 1), (-1, 1));
        assert_eq!(a.mul(&b).unwrap(), Scalar::from_integer(2, Ring::GaussianRational));
    }

    #[test]
    fn mixed_ring_operations_error() {
        let a = q(1, 2);
        let b = Scalar::i();
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(b.sub(&a), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn conjugation_is_an_involution_and_multiplicative() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let a = random_scalar(&mut rng, Ring::GaussianRational);
            let b = random_scalar(&mut rng, Ring::GaussianRational);
            assert_eq!(a.conj().conj(), a);
            assert_eq!(a.mul(&b).unwrap().conj(), a.conj().mul(&b.conj()).unwrap());
            assert_eq!(a.add(&b).unwrap().conj(), a.conj().add(&b.conj()).unwrap());
        }
    }

    #[test]
    fn field_axioms_hold_on_random_samples() {
        let mut rng = StdRng::seed_from_u64(7);
        for ring in [Ring::Rational, Ring::GaussianRational] {
            for _ in 0..200 {
                let a = random_scalar(&mut rng, ring);
                let b = random_scalar(&mut rng, ring);
                let c = random_scalar(&mut rng, ring);
                // Commutativity and associativity.
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                // Distributivity.
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                // Identities and inverses.
                assert_eq!(&a + &Scalar::zero(ring), a);
                assert_eq!(&a * &Scalar::one(ring), a);
                assert_eq!(&a - &a, Scalar::zero(ring));
                if !a.is_zero() {
                    assert_eq!(&a * &a.inverse().unwrap(), Scalar::one(ring));
                }
            }
        }
    }

    #[test]
    fn inverse_of_zero_errors() {
        assert_eq!(Scalar::zero(Ring::Rational).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_strings_round_trip_bit_exactly() {
        let cases = [
            ("5/6", Ring::Rational),
            ("-3/2", Ring::Rational),
            ("2", Ring::Rational),
            ("0", Ring::GaussianRational),
            ("(0+i)", Ring::GaussianRational),
            ("(0-i)", Ring::GaussianRational),
            ("(1/2-3*i)", Ring::GaussianRational),
            ("(-1+2/3*i)", Ring::GaussianRational),
        ];
        for (text, ring) in cases {
            let parsed = Scalar::parse(text, ring).unwrap();
            assert_eq!(parsed.to_string(), text, "print(parse({text}))");
            assert_eq!(Scalar::parse(&parsed.to_string(), ring).unwrap(), parsed);
        }
        // And print -> parse on random values.
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..200 {
            let a = random_scalar(&mut rng, Ring::GaussianRational);
            assert_eq!(Scalar::parse(&a.to_string(), Ring::GaussianRational).unwrap(), a);
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert_eq!(Scalar::parse("1/0", Ring::Rational), Err(Error::DivisionByZero));
        assert!(matches!(Scalar::parse("abc", Ring::Rational), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("(1+", Ring::GaussianRational), Err(Error::Parse { .. })));
        assert!(matches!(
            Scalar::parse("(0+i)", Ring::Rational),
            Err(Error::NeedsComplexRing { .. })
        ));
    }

    #[test]
    fn rational_ring_scalars_stay_real() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_scalar(&mut rng, Ring::Rational);
            let b = random_scalar(&mut rng, Ring::Rational);
            assert!(a.mul(&b).unwrap().is_real());
            assert!(a.add(&b).unwrap().is_real());
        }
    }
}
