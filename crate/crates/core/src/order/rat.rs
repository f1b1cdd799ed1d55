use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExtPos, OrderError};

/// An exact rational, always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rat(BigRational);

/// Ways a `num/den` literal can fail to denote a canonical rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("malformed rational literal `{0}`")]
    Syntax(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("negative denominator in `{0}`")]
    NegativeDenominator(String),
    #[error("`{0}` is not in lowest terms")]
    NotReduced(String),
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn integer(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, reducing as needed. Panics on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(num.into(), den.into()))
    }

    /// Accepts only the canonical representation: `den > 0` and `gcd(|num|, den) = 1`.
    pub fn from_canonical_parts(num: BigInt, den: BigInt) -> Result<Self, RatError> {
        let text = format!("{num}/{den}");
        if den.is_zero() {
            return Err(RatError::ZeroDenominator(text));
        }
        if den.is_negative() {
            return Err(RatError::NegativeDenominator(text));
        }
        if !num.gcd(&den).is_one() {
            return Err(RatError::NotReduced(text));
        }
        Ok(Rat(BigRational::new_raw(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    pub fn ceil(&self) -> Rat {
        Rat(self.0.ceil())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// `(a + c) / (b + d)` for `a/b` and `c/d`.
    pub fn mediant(&self, other: &Rat) -> Rat {
        Rat::new(self.numer() + other.numer(), self.denom() + other.denom())
    }

    pub fn neg(&self) -> Rat {
        Rat(-self.0.clone())
    }

    pub fn add(&self, other: &Rat) -> Rat {
        Rat(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        Rat(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        Rat(&self.0 * &other.0)
    }

    /// Panics when `other` is zero.
    pub fn div(&self, other: &Rat) -> Rat {
        Rat(&self.0 / &other.0)
    }

    pub fn has_even_denominator(&self) -> bool {
        self.denom().is_even()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rat {
    type Err = RatError;

    /// Parses the strict `num/den` form used by sample files.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s.split_once('/').ok_or_else(|| RatError::Syntax(s.to_string()))?;
        let valid = |t: &str, signed: bool| {
            let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(n, true) || !valid(d, true) {
            return Err(RatError::Syntax(s.to_string()));
        }
        let num: BigInt = n.parse().map_err(|_| RatError::Syntax(s.to_string()))?;
        let den: BigInt = d.parse().map_err(|_| RatError::Syntax(s.to_string()))?;
        Rat::from_canonical_parts(num, den)
    }
}

/// Rational part of a position seen as a lower bound; `None` means unbounded below.
fn lower_rat(lo: Option<&ExtPos>) -> Result<Option<Rat>, OrderError> {
    match lo {
        None | Some(ExtPos::NegInf) => Ok(None),
        Some(ExtPos::PosInf) => Err(OrderError::EmptyInterval),
        Some(ExtPos::Finite(q)) | Some(ExtPos::Pair(q, _)) => Ok(Some(q.clone())),
    }
}

fn upper_rat(hi: Option<&ExtPos>) -> Result<Option<Rat>, OrderError> {
    match hi {
        None | Some(ExtPos::PosInf) => Ok(None),
        Some(ExtPos::NegInf) => Err(OrderError::EmptyInterval),
        Some(ExtPos::Finite(q)) | Some(ExtPos::Pair(q, _)) => Ok(Some(q.clone())),
    }
}

/// Canonical rational strictly inside the open interval between two optional bounds.
///
/// Both bounds finite: the mediant. One side open: step to the next integer
/// away from the finite bound. Both open: `0/1`. Pair positions contribute
/// their rational part, so two positions in the same pair leave no room.
pub fn mediant_between(lo: Option<&ExtPos>, hi: Option<&ExtPos>) -> Result<Rat, OrderError> {
    let l = lower_rat(lo)?;
    let h = upper_rat(hi)?;
    rat_between(l.as_ref(), h.as_ref())
}

/// Same as [`mediant_between`] on plain rational bounds.
pub fn rat_between(lo: Option<&Rat>, hi: Option<&Rat>) -> Result<Rat, OrderError> {
    match (lo, hi) {
        (None, None) => Ok(Rat::zero()),
        (Some(l), None) => Ok(l.floor().add(&Rat::integer(1))),
        (None, Some(h)) => Ok(h.ceil().sub(&Rat::integer(1))),
        (Some(l), Some(h)) => {
            if l >= h {
                Err(OrderError::EmptyInterval)
            } else {
                Ok(l.mediant(h))
            }
        }
    }
}

/// A rational strictly inside `(lo, hi)` whose reduced denominator is even
/// (`even = true`) or odd. Both classes are dense, so this always succeeds on a
/// nonempty interval.
pub fn rat_between_with_parity(lo: Option<&Rat>, hi: Option<&Rat>, even: bool) -> Result<Rat, OrderError> {
    // Shrink to a bounded interval first.
    let (l, h) = match (lo, hi) {
        (Some(l), Some(h)) => {
            if l >= h {
                return Err(OrderError::EmptyInterval);
            }
            (l.clone(), h.clone())
        }
        (Some(l), None) => (l.clone(), l.floor().add(&Rat::integer(2))),
        (None, Some(h)) => (h.ceil().sub(&Rat::integer(2)), h.clone()),
        (None, None) => (Rat::integer(-1), Rat::integer(1)),
    };
    let mut den = BigInt::from(if even { 2 } else { 1 });
    loop {
        // smallest n with n/den > l
        let scaled = Rat(l.0.clone() * BigRational::from_integer(den.clone()));
        let mut n = scaled.floor().numer().clone() + BigInt::one();
        if even && n.is_even() {
            n += BigInt::one();
        }
        let cand = Rat::new(n, den.clone());
        if cand < h && cand > l && cand.has_even_denominator() == even {
            return Ok(cand);
        }
        den = if even { den * 2 } else { den * 3 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(n: i64, d: i64) -> ExtPos {
        ExtPos::Finite(Rat::new(n, d))
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(mediant_between(None, None).unwrap(), Rat::zero());
        let m = mediant_between(Some(&fin(0, 1)), Some(&fin(1, 1))).unwrap();
        assert_eq!(m, Rat::new(1, 2));
        assert_eq!(mediant_between(Some(&fin(1, 1)), None).unwrap(), Rat::integer(2));
        assert_eq!(mediant_between(None, Some(&fin(-1, 2))).unwrap(), Rat::integer(-1));
    }

    #[test]
    fn empty_intervals_rejected() {
        assert_eq!(mediant_between(Some(&fin(1, 1)), Some(&fin(1, 1))), Err(OrderError::EmptyInterval));
        assert_eq!(mediant_between(Some(&fin(2, 1)), Some(&fin(1, 1))), Err(OrderError::EmptyInterval));
        assert_eq!(mediant_between(Some(&ExtPos::PosInf), None), Err(OrderError::EmptyInterval));
    }

    #[test]
    fn canonical_parsing() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!("-3/4".parse::<Rat>().unwrap(), Rat::new(-3, 4));
        assert!(matches!("2/4".parse::<Rat>(), Err(RatError::NotReduced(_))));
        assert!(matches!("1/0".parse::<Rat>(), Err(RatError::ZeroDenominator(_))));
        assert!(matches!("1/-2".parse::<Rat>(), Err(RatError::NegativeDenominator(_))));
        assert!(matches!("1".parse::<Rat>(), Err(RatError::Syntax(_))));
        assert!(matches!("+1/2".parse::<Rat>(), Err(RatError::Syntax(_))));
        assert_eq!(Rat::new(-6, 4).to_string(), "-3/2");
    }

    #[test]
    fn parity_picks() {
        let r = rat_between_with_parity(Some(&Rat::zero()), Some(&Rat::integer(1)), true).unwrap();
        assert!(r.has_even_denominator() && r > Rat::zero() && r < Rat::integer(1));
        let r = rat_between_with_parity(Some(&Rat::new(1, 3)), Some(&Rat::new(1, 2)), false).unwrap();
        assert!(!r.has_even_denominator() && r > Rat::new(1, 3) && r < Rat::new(1, 2));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rat::new(n, d))
    }

    proptest! {
        #[test]
        fn mediant_strictly_inside(a in small_rat(), b in small_rat()) {
            prop_assume!(a != b);
            let (l, h) = if a < b { (a, b) } else { (b, a) };
            let m = rat_between(Some(&l), Some(&h)).unwrap();
            prop_assert!(l < m && m < h);
            let up = rat_between(Some(&l), None).unwrap();
            prop_assert!(up > l);
            let down = rat_between(None, Some(&h)).unwrap();
            prop_assert!(down < h);
        }

        #[test]
        fn parity_strictly_inside(a in small_rat(), b in small_rat(), even in any::<bool>()) {
            prop_assume!(a != b);
            let (l, h) = if a < b { (a, b) } else { (b, a) };
            let m = rat_between_with_parity(Some(&l), Some(&h), even).unwrap();
            prop_assert!(l < m && m < h);
            prop_assert_eq!(m.has_even_denominator(), even);
        }
    }
}
