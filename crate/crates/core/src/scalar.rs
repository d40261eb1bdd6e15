//! Exact arithmetic in `Z[zeta_N, 1/2]` for `N` a power of two.
//!
//! An element is stored as `sum_j nums[j] * zeta^j / 2^den_exp` for `j < N/2`,
//! using `zeta^(N/2) = -1`. The shared denominator is kept minimal, so two
//! elements are equal exactly when their fields are equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Default cyclotomic modulus.
pub const DEFAULT_MODULUS: u32 = 16;

/// Environment variable that overrides [`DEFAULT_MODULUS`].
pub const MODULUS_ENV: &str = "TYBRAID_MODULUS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("modulus {0} must be a power of two and at least 2")]
    InvalidModulus(u32),
    #[error("expected {expected} coefficients for modulus {modulus}, got {got}")]
    CoefficientCount {
        modulus: u32,
        expected: usize,
        got: usize,
    },
    #[error("{0} is not a root of unity times a power of sqrt(2)")]
    NotUnitTimesSqrt2Power(String),
    #[error("square root of {0} is not a cyclotomic 2-power element")]
    NoCyclotomicRoot(String),
    #[error("{what} needs modulus at least {needed}")]
    ModulusTooSmall { what: &'static str, needed: u32 },
    #[error("{0} is not invertible as a unit")]
    NotAUnit(String),
}

/// Reads the modulus from `TYBRAID_MODULUS`, falling back to the default.
pub fn modulus_from_env() -> Result<u32, ScalarError> {
    match std::env::var(MODULUS_ENV) {
        Ok(s) => {
            let n: u32 = s
                .trim()
                .parse()
                .map_err(|_| ScalarError::InvalidModulus(0))?;
            check_modulus(n)?;
            Ok(n)
        }
        Err(_) => Ok(DEFAULT_MODULUS),
    }
}

pub fn check_modulus(n: u32) -> Result<(), ScalarError> {
    if n >= 2 && n.is_power_of_two() && n <= 1 << 12 {
        Ok(())
    } else {
        Err(ScalarError::InvalidModulus(n))
    }
}

/// A reduced dyadic rational `num / 2^den_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    pub num: i64,
    pub den_exp: u32,
}

impl Dyadic {
    pub fn new(num: i64, den_exp: u32) -> Self {
        let mut d = Dyadic { num, den_exp };
        if d.num == 0 {
            d.den_exp = 0;
        }
        while d.den_exp > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.den_exp -= 1;
        }
        d
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    modulus: u32,
    den_exp: u32,
    nums: Vec<i64>,
}

fn shl_checked(x: i64, s: u32) -> i64 {
    if x == 0 {
        return 0;
    }
    let r = x.checked_mul(
        1i64.checked_shl(s)
            .filter(|v| *v > 0)
            .expect("coefficient overflow"),
    );
    r.expect("coefficient overflow")
}

impl CycScalar {
    fn raw(modulus: u32, den_exp: u32, nums: Vec<i64>) -> Self {
        let mut s = CycScalar {
            modulus,
            den_exp,
            nums,
        };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        if self.nums.iter().all(|&c| c == 0) {
            self.den_exp = 0;
            return;
        }
        while self.den_exp > 0 && self.nums.iter().all(|&c| c % 2 == 0) {
            for c in &mut self.nums {
                *c /= 2;
            }
            self.den_exp -= 1;
        }
    }

    pub fn zero(modulus: u32) -> Self {
        debug_assert!(check_modulus(modulus).is_ok());
        CycScalar {
            modulus,
            den_exp: 0,
            nums: vec![0; (modulus / 2) as usize],
        }
    }

    pub fn from_int(modulus: u32, k: i64) -> Self {
        let mut s = Self::zero(modulus);
        s.nums[0] = k;
        s
    }

    pub fn one(modulus: u32) -> Self {
        Self::from_int(modulus, 1)
    }

    /// `zeta_N^j`, with `j` taken mod `N`.
    pub fn root_of_unity(modulus: u32, j: i64) -> Self {
        let n = modulus as i64;
        let j = j.rem_euclid(n);
        let half = n / 2;
        let mut s = Self::zero(modulus);
        if j < half {
            s.nums[j as usize] = 1;
        } else {
            s.nums[(j - half) as usize] = -1;
        }
        s
    }

    /// `i = zeta_N^(N/4)`; needs `N >= 4`.
    pub fn i(modulus: u32) -> Result<Self, ScalarError> {
        if modulus < 4 {
            return Err(ScalarError::ModulusTooSmall {
                what: "i",
                needed: 4,
            });
        }
        Ok(Self::root_of_unity(modulus, (modulus / 4) as i64))
    }

    /// `sqrt(2) = zeta_8 + zeta_8^7`; needs `N >= 8`.
    pub fn sqrt2(modulus: u32) -> Result<Self, ScalarError> {
        if modulus < 8 {
            return Err(ScalarError::ModulusTooSmall {
                what: "sqrt(2)",
                needed: 8,
            });
        }
        let e = (modulus / 8) as i64;
        Ok(Self::root_of_unity(modulus, e) + Self::root_of_unity(modulus, 7 * e))
    }

    /// `sqrt(2)^k` for any integer `k`.
    pub fn sqrt2_pow(modulus: u32, k: i64) -> Result<Self, ScalarError> {
        let half = k.div_euclid(2);
        let base = Self::one(modulus).mul_pow2(half);
        if k.rem_euclid(2) == 1 {
            Ok(base * Self::sqrt2(modulus)?)
        } else {
            Ok(base)
        }
    }

    /// Multiplies by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if e >= 0 {
            let nums = self
                .nums
                .iter()
                .map(|&c| shl_checked(c, e as u32))
                .collect();
            Self::raw(self.modulus, self.den_exp, nums)
        } else {
            Self::raw(self.modulus, self.den_exp + (-e) as u32, self.nums.clone())
        }
    }

    pub fn from_dyadics(modulus: u32, coeffs: &[Dyadic]) -> Result<Self, ScalarError> {
        check_modulus(modulus)?;
        let expected = (modulus / 2) as usize;
        if coeffs.len() != expected {
            return Err(ScalarError::CoefficientCount {
                modulus,
                expected,
                got: coeffs.len(),
            });
        }
        let den = coeffs.iter().map(|d| d.den_exp).max().unwrap_or(0);
        let nums = coeffs
            .iter()
            .map(|d| shl_checked(d.num, den - d.den_exp))
            .collect();
        Ok(Self::raw(modulus, den, nums))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Coefficient of `zeta^j` for `j < N/2`, fully reduced.
    pub fn coeff(&self, j: usize) -> Dyadic {
        Dyadic::new(self.nums[j], self.den_exp)
    }

    pub fn coeffs(&self) -> Vec<Dyadic> {
        (0..self.nums.len()).map(|j| self.coeff(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.den_exp == 0 && self.nums[0] == 1 && self.nums[1..].iter().all(|&c| c == 0)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.modulus != other.modulus {
            return Err(ScalarError::ModulusMismatch(self.modulus, other.modulus));
        }
        let den = self.den_exp.max(other.den_exp);
        let (sa, sb) = (den - self.den_exp, den - other.den_exp);
        let nums = self
            .nums
            .iter()
            .zip(&other.nums)
            .map(|(&a, &b)| {
                shl_checked(a, sa)
                    .checked_add(shl_checked(b, sb))
                    .expect("coefficient overflow")
            })
            .collect();
        Ok(Self::raw(self.modulus, den, nums))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.modulus != other.modulus {
            return Err(ScalarError::ModulusMismatch(self.modulus, other.modulus));
        }
        let half = self.nums.len();
        let mut nums = vec![0i64; half];
        for (i, &a) in self.nums.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.nums.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let p = a.checked_mul(b).expect("coefficient overflow");
                let k = i + j;
                if k < half {
                    nums[k] = nums[k].checked_add(p).expect("coefficient overflow");
                } else {
                    nums[k - half] = nums[k - half].checked_sub(p).expect("coefficient overflow");
                }
            }
        }
        Ok(Self::raw(self.modulus, self.den_exp + other.den_exp, nums))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.modulus);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `zeta -> zeta^-1`.
    pub fn conjugate(&self) -> Self {
        let half = self.nums.len();
        let mut nums = vec![0i64; half];
        nums[0] = self.nums[0];
        for j in 1..half {
            // zeta^-j = -zeta^(N/2 - j)
            nums[half - j] = -self.nums[j];
        }
        Self::raw(self.modulus, self.den_exp, nums)
    }

    /// Conjugates when `flag` is set.
    pub fn conj_if(&self, flag: bool) -> Self {
        if flag {
            self.conjugate()
        } else {
            self.clone()
        }
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Returns `j` when the element is exactly `zeta^j`.
    pub fn unit_exponent(&self) -> Option<u32> {
        if self.den_exp != 0 {
            return None;
        }
        let mut found = None;
        for (j, &c) in self.nums.iter().enumerate() {
            match c {
                0 => {}
                1 | -1 if found.is_none() => {
                    let e = if c == 1 { j } else { j + self.nums.len() };
                    found = Some(e as u32);
                }
                _ => return None,
            }
        }
        found
    }

    /// Inverse of a root of unity.
    pub fn unit_inverse(&self) -> Result<Self, ScalarError> {
        let e = self
            .unit_exponent()
            .ok_or_else(|| ScalarError::NotAUnit(self.to_string()))?;
        Ok(Self::root_of_unity(self.modulus, -(e as i64)))
    }

    /// Multiplies by `zeta^j`.
    pub fn rotate(&self, j: i64) -> Self {
        let n = self.modulus as i64;
        let half = (n / 2) as usize;
        let j = j.rem_euclid(n) as usize;
        let mut nums = vec![0i64; half];
        for (i, &c) in self.nums.iter().enumerate() {
            let k = i + j;
            let (idx, neg) = match k / half {
                0 => (k, false),
                1 => (k - half, true),
                2 => (k - 2 * half, false),
                _ => (k - 3 * half, true),
            };
            nums[idx] = if neg { -c } else { c };
        }
        Self::raw(self.modulus, self.den_exp, nums)
    }

    /// Positive power of `sqrt(2)` as an exponent, when the element is one.
    fn positive_sqrt2_power(&self) -> Option<i64> {
        let pow2 = |c: i64| -> Option<i64> {
            if c > 0 && (c as u64).is_power_of_two() {
                Some(c.trailing_zeros() as i64)
            } else {
                None
            }
        };
        let nonzero: Vec<usize> = (0..self.nums.len())
            .filter(|&j| self.nums[j] != 0)
            .collect();
        let d = self.den_exp as i64;
        if nonzero == [0] {
            return pow2(self.nums[0]).map(|t| 2 * (t - d));
        }
        if self.modulus >= 8 {
            let e = (self.modulus / 8) as usize;
            if nonzero == [e, 3 * e] && self.nums[3 * e] == -self.nums[e] {
                return pow2(self.nums[e]).map(|t| 2 * (t - d) + 1);
            }
        }
        None
    }

    /// Writes the element as `zeta^j * sqrt(2)^k`, when possible.
    pub fn as_unit_times_sqrt2_power(&self) -> Option<(u32, i64)> {
        if self.is_zero() {
            return None;
        }
        for j in 0..self.modulus {
            let y = self.rotate(-(j as i64));
            if let Some(k) = y.positive_sqrt2_power() {
                return Some((j, k));
            }
        }
        None
    }

    /// The two square roots, principal first, or empty when they need modulus `2N`.
    pub fn sqrt_candidates(&self) -> Result<Vec<CycScalar>, ScalarError> {
        let (j, k) = self
            .as_unit_times_sqrt2_power()
            .ok_or_else(|| ScalarError::NotUnitTimesSqrt2Power(self.to_string()))?;
        if k.rem_euclid(2) == 1 {
            return Err(ScalarError::NoCyclotomicRoot(self.to_string()));
        }
        if j % 2 == 1 {
            return Ok(Vec::new());
        }
        let half_k = k / 2;
        if half_k.rem_euclid(2) == 1 && self.modulus < 8 {
            return Ok(Vec::new());
        }
        let r = Self::sqrt2_pow(self.modulus, half_k)?.rotate((j / 2) as i64);
        let neg = -&r;
        Ok(vec![r, neg])
    }

    /// Sign of a nonzero real element of the form `+-sqrt(2)^k`.
    pub fn real_sign(&self) -> Option<i8> {
        let (j, _) = self.as_unit_times_sqrt2_power()?;
        if j == 0 {
            Some(1)
        } else if j == self.modulus / 2 {
            Some(-1)
        } else {
            None
        }
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.den_exp > 0 {
            write!(f, "(")?;
        }
        for (j, &c) in self.nums.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let term = match (j, mag) {
                (0, m) => m.to_string(),
                (_, 1) => format!("z{}^{}", self.modulus, j),
                (_, m) => format!("{}*z{}^{}", m, self.modulus, j),
            };
            if first {
                write!(f, "{sign}{term}")?;
            } else {
                write!(f, " {sign} {term}")?;
            }
            first = false;
        }
        if self.den_exp > 0 {
            write!(f, ")/{}", 1u64 << self.den_exp.min(63))?;
        }
        Ok(())
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(rhs).expect("modulus mismatch")
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.try_mul(rhs).expect("modulus mismatch")
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl Mul<&CycScalar> for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        &self * rhs
    }
}

impl Mul<CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        self * &rhs
    }
}

impl Add<&CycScalar> for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        &self + rhs
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            modulus: self.modulus,
            den_exp: self.den_exp,
            nums: self.nums.iter().map(|&c| -c).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl std::iter::Sum for CycScalar {
    fn sum<I: Iterator<Item = CycScalar>>(mut iter: I) -> CycScalar {
        let first = iter.next().expect("sum of empty iterator has no modulus");
        iter.fold(first, |acc, x| &acc + &x)
    }
}
