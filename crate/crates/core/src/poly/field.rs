use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Field elements. Over GF(p) they are kept as integers in `0..p`, so structural
/// equality is field equality in both cases.
pub type Coeff = BigRational;

/// Coefficient field: the rationals (characteristic 0) or a prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    characteristic: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    pub fn prime(p: u64) -> Result<Self, PolyError> {
        if !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        // Elements are multiplied as u64 in the fast paths.
        if p >= 1 << 31 {
            return Err(PolyError::PrimeTooLarge(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    /// 0 for the rationals, otherwise p.
    pub fn new(characteristic: u64) -> Result<Self, PolyError> {
        if characteristic == 0 {
            Ok(Self::RATIONALS)
        } else {
            Self::prime(characteristic)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_prime_field(&self) -> bool {
        self.characteristic != 0
    }

    fn reduce_int(&self, v: &BigInt) -> BigInt {
        v.mod_floor(&BigInt::from(self.characteristic))
    }

    /// Maps an arbitrary rational into the field. Fails over GF(p) when the
    /// denominator is divisible by p.
    pub fn element(&self, r: &BigRational) -> Result<Coeff, PolyError> {
        if self.characteristic == 0 {
            return Ok(r.clone());
        }
        let p = self.characteristic;
        let den = self.reduce_int(r.denom()).to_u64().unwrap_or(0);
        if den == 0 {
            return Err(PolyError::DenominatorNotInvertible {
                value: r.to_string(),
                p,
            });
        }
        let num = self.reduce_int(r.numer()).to_u64().unwrap_or(0);
        let value = num * pow_mod(den, p - 2, p) % p;
        Ok(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.element(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers always map into a field")
    }

    pub fn from_u64(&self, v: u64) -> Coeff {
        self.element(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers always map into a field")
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let s = a + b;
        self.wrap(s)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let s = a - b;
        self.wrap(s)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let s = a * b;
        self.wrap(s)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.wrap(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff, PolyError> {
        if a.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.characteristic == 0 {
            Ok(a.recip())
        } else {
            let p = self.characteristic;
            Ok(self.from_u64(pow_mod(self.to_u64(a), p - 2, p)))
        }
    }

    pub fn pow(&self, a: &Coeff, exp: u32) -> Coeff {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    // Sums and products of canonical residues are integers, so only the
    // numerator needs reducing.
    fn wrap(&self, v: BigRational) -> Coeff {
        if self.characteristic == 0 {
            v
        } else {
            debug_assert!(v.is_integer());
            BigRational::from_integer(self.reduce_int(v.numer()))
        }
    }

    /// The residue of a GF(p) element. Panics over the rationals.
    pub fn to_u64(&self, a: &Coeff) -> u64 {
        assert!(self.is_prime_field(), "to_u64 needs a prime field");
        a.numer().to_u64().expect("canonical residue fits in u64")
    }

    /// Decimal string, `a/b` for non-integral rationals.
    pub fn format(&self, a: &Coeff) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    pub fn parse(&self, s: &str) -> Result<Coeff, PolyError> {
        let bad = || PolyError::Parse(format!("bad coefficient `{s}`"));
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.trim().parse().map_err(|_| bad())?),
        };
        self.element(&value)
    }

    /// Elements of GF(p) in increasing residue order.
    pub fn elements(&self) -> Result<Vec<Coeff>, PolyError> {
        if !self.is_prime_field() {
            return Err(PolyError::InfiniteField);
        }
        Ok((0..self.characteristic).map(|v| self.from_u64(v)).collect())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

fn multiplicative_order(x: u64, p: u64) -> u64 {
    let mut acc = x % p;
    let mut order = 1;
    while acc != 1 {
        acc = acc * x % p;
        order += 1;
    }
    order
}

/// The smallest residue of multiplicative order exactly `k` in GF(p).
pub fn root_of_unity(p: u64, k: u64) -> Result<u64, PolyError> {
    if !is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    if k == 0 || !(p - 1).is_multiple_of(k) {
        return Err(PolyError::NoRootOfUnity { p, k });
    }
    (1..p)
        .find(|&x| multiplicative_order(x, p) == k)
        .ok_or(PolyError::NoRootOfUnity { p, k })
}

/// All k-th roots of unity in GF(p) as `1, w, w^2, ..., w^(k-1)`.
pub fn roots_of_unity(p: u64, k: u64) -> Result<Vec<u64>, PolyError> {
    let w = root_of_unity(p, k)?;
    Ok((0..k).map(|e| pow_mod(w, e, p)).collect())
}
