//! Exact field arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every coefficient in the toolkit is a [`Scalar`]: either a rational number
//! in canonical reduced form (backed by [`num_rational::BigRational`]) or an
//! element of a prime field `F_p` with `p < 2^63`. Values are immutable and
//! cheap to clone relative to the polynomial arithmetic built on top of them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The coefficient field of a computation: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// Arbitrary-precision rationals.
    Q,
    /// Integers modulo the given prime.
    Fp(u64),
}

impl Field {
    /// Builds a prime field, verifying primality of the modulus.
    pub fn fp(p: u64) -> Result<Field, ScalarError> {
        if is_prime_u64(p) {
            Ok(Field::Fp(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// Field characteristic: 0 for Q, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// Errors from scalar construction and checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed-field operands: {0} vs {1}")]
    MixedField(Field, Field),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("invalid scalar literal {literal:?}: {reason}")]
    BadLiteral { literal: String, reason: String },
}

/// An exact field element.
///
/// Rationals are always in canonical reduced form (positive denominator,
/// coprime numerator/denominator, zero as 0/1), so structural equality is
/// value equality. Prime-field elements carry their modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { residue: 0, modulus: p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { residue: 1 % p, modulus: p },
        }
    }

    pub fn from_integer(n: &BigInt, field: Field) -> Scalar {
        match field {
            Field::Q => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Fp(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Fp { residue: r.to_u64().expect("residue fits u64"), modulus: p }
            }
        }
    }

    pub fn from_i64(n: i64, field: Field) -> Scalar {
        Scalar::from_integer(&BigInt::from(n), field)
    }

    /// Exact rational from a numerator/denominator pair (Q only helper).
    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { modulus, .. } => Field::Fp(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { residue, modulus } => *residue == 1 % *modulus,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (fa, fb) = (self.field(), other.field());
        if fa == fb {
            Ok(())
        } else {
            Err(ScalarError::MixedField(fa, fb))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { residue: a, modulus: p }, Scalar::Fp { residue: b, .. }) => {
                Scalar::Fp { residue: addmod(*a, *b, *p), modulus: *p }
            }
            _ => unreachable!("same_field checked"),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { residue: a, modulus: p }, Scalar::Fp { residue: b, .. }) => {
                Scalar::Fp { residue: mulmod(*a, *b, *p), modulus: *p }
            }
            _ => unreachable!("same_field checked"),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { residue, modulus } => Scalar::Fp {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { residue, modulus } => Scalar::Fp {
                residue: powmod(*residue, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.field());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses "n" or "a/b" in the given field; negatives allowed.
    pub fn parse(s: &str, field: Field) -> Result<Scalar, ScalarError> {
        let bad = |reason: &str| ScalarError::BadLiteral {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (num_str, den_str) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num: BigInt = num_str.parse().map_err(|_| bad("invalid integer"))?;
        let num = Scalar::from_integer(&num, field);
        match den_str {
            None => Ok(num),
            Some(d) => {
                let den: BigInt = d.parse().map_err(|_| bad("invalid denominator"))?;
                if den.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                num.checked_div(&Scalar::from_integer(&den, field))
            }
        }
    }

    /// The value as a reduced fraction (numerator, denominator). For F_p the
    /// denominator is 1.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Q(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Fp { residue, .. } => (BigInt::from(*residue), BigInt::one()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { residue, .. } => write!(f, "{residue}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from the same field")
            }
        }
    };
}
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Greatest common divisor of two integers; gcd(0,0) = 0, always nonnegative.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12-base set is exact below 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Clears denominators and divides by integer content, scaling rational
/// coefficients by the positive factor lcm(denominators)/gcd(numerators).
/// Signs are preserved. Used by the Groebner engine to keep coefficient
/// growth in check without changing generated ideals. Identity on F_p.
pub fn content_normalize(coeffs: &[Scalar]) -> Vec<Scalar> {
    if coeffs.is_empty() || coeffs[0].field() != Field::Q {
        return coeffs.to_vec();
    }
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for c in coeffs {
        let (n, d) = c.to_fraction();
        den_lcm = den_lcm.lcm(&d);
        num_gcd = num_gcd.gcd(&n);
    }
    if num_gcd.is_zero() {
        return coeffs.to_vec();
    }
    let scale = Scalar::Q(BigRational::new(den_lcm, num_gcd));
    coeffs.iter().map(|c| c * &scale).collect()
}
