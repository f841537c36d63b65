//! Exact scalar types.
//!
//! `Cx` is a Gaussian rational (complex number with `BigRational` parts) and
//! is the workhorse scalar for every algebraic identity in the crate. `Gi`
//! is a Gaussian integer over `i64`, used on hot enumeration paths where all
//! inputs are integral. `Fp2` is the quadratic extension of a Mersenne prime
//! field (`p = 3 mod 4`, so `x^2 = -1` is irreducible) used for large exact
//! rank computations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ring operations shared by all exact scalars (and jets).
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiply by `i^k`.
    fn mul_i_pow(&self, k: u8) -> Self;
    fn from_int(n: i64) -> Self;
}

/// Scalars with exact division, required by Gaussian elimination.
pub trait FieldScalar: Scalar {
    fn inv(&self) -> Self;
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// A Gaussian rational `re + im*i` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq)]
pub struct Cx {
    pub re: BigRational,
    pub im: BigRational,
}

impl Cx {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cx { re, im }
    }

    pub fn int(n: i64) -> Self {
        Cx::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Cx::new(BigRational::zero(), BigRational::one())
    }

    /// `n/d` as a real rational.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Cx::new(
            BigRational::new(BigInt::from(n), BigInt::from(d)),
            BigRational::zero(),
        )
    }

    /// `(nr + ni*i)/d`.
    pub fn ratio_c(nr: i64, ni: i64, d: i64) -> Self {
        assert!(d != 0);
        Cx::new(
            BigRational::new(BigInt::from(nr), BigInt::from(d)),
            BigRational::new(BigInt::from(ni), BigInt::from(d)),
        )
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Approximate `f64` pair, for reporting only.
    pub fn to_f64(&self) -> (f64, f64) {
        fn r2f(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // good enough for diagnostics; exact paths never round-trip
            let nf = alloc::format!("{}", n).parse::<f64>().unwrap_or(f64::NAN);
            let df = alloc::format!("{}", d).parse::<f64>().unwrap_or(f64::NAN);
            nf / df
        }
        (r2f(&self.re), r2f(&self.im))
    }
}

impl Scalar for Cx {
    fn zero() -> Self {
        Cx::int(0)
    }
    fn one() -> Self {
        Cx::int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Cx::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Cx::new(-self.re.clone(), -self.im.clone())
    }
    fn mul_i_pow(&self, k: u8) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Cx::new(-self.im.clone(), self.re.clone()),
            2 => Scalar::neg(self),
            _ => Cx::new(self.im.clone(), -self.re.clone()),
        }
    }
    fn from_int(n: i64) -> Self {
        Cx::int(n)
    }
}

impl FieldScalar for Cx {
    fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero");
        Cx::new(&self.re / &n, -(&self.im / &n))
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Scalar::add(&self, &o)
    }
}
impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        Scalar::sub(&self, &o)
    }
}
impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Scalar::mul(&self, &o)
    }
}
impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Scalar::neg(&self)
    }
}

// ---------------------------------------------------------------------------
// Gaussian integers
// ---------------------------------------------------------------------------

/// Gaussian integer over `i64` with overflow checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gi {
    pub re: i64,
    pub im: i64,
}

impl Gi {
    pub fn new(re: i64, im: i64) -> Self {
        Gi { re, im }
    }
}

#[inline]
fn ck(v: Option<i64>) -> i64 {
    v.expect("Gaussian integer overflow")
}

impl Scalar for Gi {
    fn zero() -> Self {
        Gi::new(0, 0)
    }
    fn one() -> Self {
        Gi::new(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    fn add(&self, o: &Self) -> Self {
        Gi::new(ck(self.re.checked_add(o.re)), ck(self.im.checked_add(o.im)))
    }
    fn sub(&self, o: &Self) -> Self {
        Gi::new(ck(self.re.checked_sub(o.re)), ck(self.im.checked_sub(o.im)))
    }
    fn mul(&self, o: &Self) -> Self {
        let rr = ck(self.re.checked_mul(o.re));
        let ii = ck(self.im.checked_mul(o.im));
        let ri = ck(self.re.checked_mul(o.im));
        let ir = ck(self.im.checked_mul(o.re));
        Gi::new(ck(rr.checked_sub(ii)), ck(ri.checked_add(ir)))
    }
    fn neg(&self) -> Self {
        Gi::new(-self.re, -self.im)
    }
    fn mul_i_pow(&self, k: u8) -> Self {
        match k % 4 {
            0 => *self,
            1 => Gi::new(-self.im, self.re),
            2 => Gi::new(-self.re, -self.im),
            _ => Gi::new(self.im, -self.re),
        }
    }
    fn from_int(n: i64) -> Self {
        Gi::new(n, 0)
    }
}

// ---------------------------------------------------------------------------
// Quadratic extension of a Mersenne prime field
// ---------------------------------------------------------------------------

/// Element `a + b*x` of `F_{p^2} = F_p[x]/(x^2+1)`, `p = 2^61 - 1`.
///
/// `p = 3 mod 4`, so `x^2+1` is irreducible and this is a field. Used for
/// rank computations over Gaussian integers that would blow up rationally.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

pub const FP2_P: u64 = (1u64 << 61) - 1;

#[inline]
fn fp_add(x: u64, y: u64) -> u64 {
    let s = x + y;
    if s >= FP2_P {
        s - FP2_P
    } else {
        s
    }
}

#[inline]
fn fp_sub(x: u64, y: u64) -> u64 {
    if x >= y {
        x - y
    } else {
        x + FP2_P - y
    }
}

#[inline]
fn fp_mul(x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % FP2_P as u128) as u64
}

fn fp_pow(mut x: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(acc, x);
        }
        x = fp_mul(x, x);
        e >>= 1;
    }
    acc
}

impl Fp2 {
    pub fn from_i64(re: i64, im: i64) -> Self {
        let m = |v: i64| -> u64 {
            let r = v.rem_euclid(FP2_P as i64);
            r as u64
        };
        Fp2 { a: m(re), b: m(im) }
    }

    /// Reduce a Gaussian rational; panics if a denominator is divisible by p
    /// (cannot happen for the power-of-two denominators we feed it).
    pub fn from_cx(c: &Cx) -> Self {
        fn red(r: &BigRational) -> u64 {
            let p = BigInt::from(FP2_P);
            let n = r.numer().clone() % &p;
            let d = r.denom().clone() % &p;
            let n = ((n + &p) % &p).try_into().unwrap_or(0u64);
            let d: u64 = ((d + &p) % &p).try_into().unwrap_or(0u64);
            assert!(d != 0, "denominator divisible by field characteristic");
            fp_mul(n, fp_pow(d, FP2_P - 2))
        }
        Fp2 {
            a: red(&c.re),
            b: red(&c.im),
        }
    }
}

impl Scalar for Fp2 {
    fn zero() -> Self {
        Fp2 { a: 0, b: 0 }
    }
    fn one() -> Self {
        Fp2 { a: 1, b: 0 }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp2 {
            a: fp_add(self.a, o.a),
            b: fp_add(self.b, o.b),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp2 {
            a: fp_sub(self.a, o.a),
            b: fp_sub(self.b, o.b),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp2 {
            a: fp_sub(fp_mul(self.a, o.a), fp_mul(self.b, o.b)),
            b: fp_add(fp_mul(self.a, o.b), fp_mul(self.b, o.a)),
        }
    }
    fn neg(&self) -> Self {
        Fp2 {
            a: if self.a == 0 { 0 } else { FP2_P - self.a },
            b: if self.b == 0 { 0 } else { FP2_P - self.b },
        }
    }
    fn mul_i_pow(&self, k: u8) -> Self {
        match k % 4 {
            0 => *self,
            1 => Fp2 {
                a: if self.b == 0 { 0 } else { FP2_P - self.b },
                b: self.a,
            },
            2 => Scalar::neg(self),
            _ => Fp2 {
                a: self.b,
                b: if self.a == 0 { 0 } else { FP2_P - self.a },
            },
        }
    }
    fn from_int(n: i64) -> Self {
        Fp2::from_i64(n, 0)
    }
}

impl FieldScalar for Fp2 {
    fn inv(&self) -> Self {
        // (a+bx)^-1 = (a-bx)/(a^2+b^2)
        let n = fp_add(fp_mul(self.a, self.a), fp_mul(self.b, self.b));
        assert!(n != 0, "division by zero in Fp2");
        let ni = fp_pow(n, FP2_P - 2);
        Fp2 {
            a: fp_mul(self.a, ni),
            b: fp_mul(fp_sub(0, self.b), ni),
        }
    }
}

/// Render a list of scalars compactly, for witnesses in reports.
pub fn witness_string(cs: &[Cx]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (k, c) in cs.iter().enumerate() {
        if k > 0 {
            let _ = write!(s, ", ");
        }
        let _ = write!(s, "{}", c);
    }
    s
}

/// Deterministic small-integer sampler for generic-witness constructions.
pub fn small_ints(rng: &mut impl rand::Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}
