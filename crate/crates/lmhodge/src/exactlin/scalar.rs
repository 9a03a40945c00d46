//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Commutative ring with the operations the matrix code needs.
pub trait Ring:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
}

/// Exact field with an involutive conjugation (trivial over ℚ).
pub trait Field: Ring + for<'a> Div<&'a Self, Output = Self> + Div<Output = Self> {
    fn inv(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Real and imaginary parts (the imaginary part is zero over ℚ).
    fn parts(&self) -> (Rational, Rational);
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        let d = d.into();
        assert!(!Zero::is_zero(&d), "zero denominator");
        Rational(BigRational::new(n.into(), d))
    }
    pub fn int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }
    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::int(1);
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parse the canonical `"p/q"` form: q > 0 and gcd(p, q) = 1.
impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| format!("rational {s:?} is not of the form \"p/q\""))?;
        let p: BigInt = p.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if !q.is_positive() {
            return Err(format!("denominator of {s:?} must be positive"));
        }
        if !p.gcd(&q).is_one() {
            return Err(format!("rational {s:?} is not reduced"));
        }
        Ok(Rational(BigRational::new_raw(p, q)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { self.$m(&o) }
        }
    )*};
}

impl Add<&Rational> for Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        Rational(self.0 + &o.0)
    }
}
impl Sub<&Rational> for Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        Rational(self.0 - &o.0)
    }
}
impl Mul<&Rational> for Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        Rational(self.0 * &o.0)
    }
}
impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, o: &Rational) -> Rational {
        assert!(!Zero::is_zero(&o.0), "division by zero");
        Rational(self.0 / &o.0)
    }
}
forward_ops!(Rational, Add add, Sub sub, Mul mul, Div div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0)
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "inverse of zero");
        Rational(self.0.recip())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn parts(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

/// a + b·i with a, b ∈ ℚ.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }
    pub fn real(re: Rational) -> Self {
        GaussRational { re, im: Rational::zero() }
    }
    pub fn i() -> Self {
        GaussRational { re: Rational::zero(), im: Rational::one() }
    }
    pub fn ints(re: i64, im: i64) -> Self {
        GaussRational { re: Rational::int(re), im: Rational::int(im) }
    }
    pub fn is_real(&self) -> bool {
        Ring::is_zero(&self.im)
    }
    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussRational::ints(1, 0),
            1 => GaussRational::ints(0, 1),
            2 => GaussRational::ints(-1, 0),
            _ => GaussRational::ints(0, -1),
        }
    }
    pub fn norm(&self) -> Rational {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{:?}", self.re)
        } else {
            write!(f, "({:?}{}{:?}i)", self.re, if self.im.is_negative() { "" } else { "+" }, self.im)
        }
    }
}

impl Add<&GaussRational> for GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: self.re + &o.re, im: self.im + &o.im }
    }
}
impl Sub<&GaussRational> for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: self.re - &o.re, im: self.im - &o.im }
    }
}
impl Mul<&GaussRational> for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        if o.is_real() {
            return GaussRational { re: self.re * &o.re, im: self.im * &o.re };
        }
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re * &o.im + self.im * &o.re;
        GaussRational { re, im }
    }
}
impl Div<&GaussRational> for GaussRational {
    type Output = GaussRational;
    fn div(self, o: &GaussRational) -> GaussRational {
        self * &o.inv()
    }
}
forward_ops!(GaussRational, Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Ring for GaussRational {
    fn zero() -> Self {
        GaussRational::default_zero()
    }
    fn one() -> Self {
        GaussRational::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.re) && Ring::is_zero(&self.im)
    }
}

impl GaussRational {
    fn default_zero() -> Self {
        GaussRational { re: Rational::zero(), im: Rational::zero() }
    }
}

impl Field for GaussRational {
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!Ring::is_zero(&n), "inverse of zero");
        GaussRational { re: self.re.clone() / &n, im: -(self.im.clone() / &n) }
    }
    fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        GaussRational::real(q.clone())
    }
    fn parts(&self) -> (Rational, Rational) {
        (self.re.clone(), self.im.clone())
    }
}

impl From<Rational> for GaussRational {
    fn from(q: Rational) -> Self {
        GaussRational::real(q)
    }
}

/// Least common multiple of the denominators of a list of rationals.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(<BigInt as One>::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let d = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|q| (q.0.clone() * BigRational::from_integer(d.clone())).to_integer()).collect();
    let g = ints.iter().fold(<BigInt as Zero>::zero(), |acc, x| acc.gcd(x));
    if Zero::is_zero(&g) {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_is_strict() {
        assert!("3".parse::<Rational>().is_err());
        assert!("2/4".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert_eq!("-1/2".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert_eq!(Rational::int(3).to_string(), "3/1");
    }

    #[test]
    fn gauss_inverse() {
        let z = GaussRational::ints(3, -4);
        assert_eq!(z.clone() * &z.inv(), GaussRational::one());
        assert_eq!(z.conj().conj(), z);
        assert_eq!(GaussRational::i_pow(-1), GaussRational::ints(0, -1));
    }
}

/// Serialize integers as decimal strings, matching the "p/q" style of
/// rationals without the denominator.
pub mod int_str {
    use num_bigint::BigInt;
    use serde::ser::{SerializeSeq, Serializer};

    pub fn one<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
    pub fn many<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}
