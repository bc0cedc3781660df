//! Exact scalar fields: prime fields `F_p` (const-generic modulus) and the
//! rationals.

use core::cmp::Ordering;
use core::fmt;
use core::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring + Eq + Hash + Send + Sync {
    /// 0 for the rationals, `p` for `F_p`.
    const CHARACTERISTIC: u64;

    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Short symbol used in reports (`Q`, `F3`, ...).
    fn symbol() -> alloc::string::String;
}

/// Primality by trial division; moduli here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_P`. `P` must be prime; this is checked by
/// [`Fp::new`] and by the ring-dispatch layer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(n: i64) -> Self {
        debug_assert!(is_prime(P as u64));
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn value(&self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Ring for Fp<P> {
    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn one() -> Self {
        Fp(1 % P)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        let s = self.0 as u64 + other.0 as u64;
        Fp((s % P as u64) as u32)
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        let s = self.0 as u64 + P as u64 - other.0 as u64;
        Fp((s % P as u64) as u32)
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    #[inline]
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P - self.0)
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
}

impl<const P: u32> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P as u64;

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(P - 2))
    }

    fn symbol() -> alloc::string::String {
        alloc::format!("F{}", P)
    }
}

/// Exact rational number. Values whose reduced numerator and denominator fit
/// in `i64` are kept inline; anything larger spills to big integers.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(alloc::boxed::Box<(BigInt, BigInt)>),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(alloc::boxed::Box::new((BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = if Zero::is_zero(&g) {
            (<BigInt as Zero>::zero(), <BigInt as One>::one())
        } else {
            (num / &g, den / &g)
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(alloc::boxed::Box::new((n, d))),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        self.to_big()
    }

    /// The integer value, if this rational is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => One::is_one(&b.1),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.0.is_negative() {
                    -1
                } else if Zero::is_zero(&b.0) {
                    0
                } else {
                    1
                }
            }
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        // Canonical forms are unique, and a value is Small whenever it fits.
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.0.hash(state);
                b.1.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        (a * d).cmp(&(c * b))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{}", n),
            Rational::Small(n, d) => write!(f, "{}/{}", n, d),
            Rational::Big(b) if One::is_one(&b.1) => write!(f, "{}", b.0),
            Rational::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }
    fn add(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if b == d {
                return Self::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(z)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(s) = x.checked_add(y) {
                    return Self::from_i128(s, z);
                }
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::from_big(a * &d + c * &b, b * d)
    }
    fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(m)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Self::from_i128(n, m);
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::from_big(a * c, b * d)
    }
    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => {
                let (a, b) = self.to_big();
                Self::from_big(-a, b)
            }
        }
    }
    fn from_i64(n: i64) -> Self {
        Rational::Small(n, 1)
    }
}

impl Field for Rational {
    const CHARACTERISTIC: u64 = 0;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.1.clone(), b.0.clone()),
        })
    }

    fn symbol() -> alloc::string::String {
        alloc::string::String::from("Q")
    }
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
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}
