//! Quadratic forms with prescribed coboundary, Gauss sums, counts and orbits.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::f2::{for_each_aut, Automorphism, Bicharacter, Element, F2Error, GradedGroup};
use crate::scalar::CycScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("expected {expected} basis values, got {got}")]
    BasisLength { expected: usize, got: usize },
    #[error("basis value {value} at e{index} does not square to chi(e,e)")]
    BadSquare { index: usize, value: u32 },
    #[error("basis value at e{0} is not real")]
    NotReal(usize),
    #[error("Gauss sum {0} is not a nonzero real")]
    NoSign(String),
    #[error("automorphism does not preserve the bicharacter")]
    NotIsometry,
    #[error("modulus {0} too small for complex forms")]
    ModulusTooSmall(u32),
    #[error(transparent)]
    F2(#[from] F2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

/// `sigma(a) = zeta_N^exps[a]`, one entry per element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    exps: Vec<u32>,
    modulus: u32,
    chi: BicharRef,
}

/// Ordering wrapper so forms sort by value table only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BicharRef(Bicharacter);

impl PartialOrd for BicharRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BicharRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.matrix().rows.cmp(&other.0.matrix().rows)
    }
}

/// Exponent of `chi(a,b)` in `mu_N`.
#[inline]
pub fn chi_exp(chi: &Bicharacter, a: Element, b: Element, modulus: u32) -> u32 {
    if chi.pair(a, b) {
        modulus / 2
    } else {
        0
    }
}

impl QForm {
    /// The unique admissible form with the given values on the standard basis.
    pub fn extend_from_basis(
        chi: &Bicharacter,
        basis_values: &[u32],
        field: Field,
        modulus: u32,
    ) -> Result<QForm, FormError> {
        let d = chi.dim();
        if basis_values.len() != d {
            return Err(FormError::BasisLength {
                expected: d,
                got: basis_values.len(),
            });
        }
        for (i, &v) in basis_values.iter().enumerate() {
            let e = 1u32 << i;
            if (2 * v) % modulus != chi_exp(chi, e, e, modulus) {
                return Err(FormError::BadSquare { index: i, value: v });
            }
            if field == Field::Real && v % (modulus / 2) != 0 {
                return Err(FormError::NotReal(i));
            }
        }
        let mut exps = vec![0u32; 1 << d];
        for a in 1..(1u32 << d) {
            let i = a.trailing_zeros() as usize;
            let e = 1u32 << i;
            let rest = a ^ e;
            exps[a as usize] =
                (basis_values[i] % modulus + exps[rest as usize] + chi_exp(chi, e, rest, modulus))
                    % modulus;
        }
        Ok(QForm {
            exps,
            modulus,
            chi: BicharRef(chi.clone()),
        })
    }

    /// Builds a form from a full value table, checking the coboundary law.
    pub fn from_table(chi: &Bicharacter, exps: Vec<u32>, modulus: u32) -> Result<QForm, FormError> {
        if exps.len() != chi.order() {
            return Err(FormError::BasisLength {
                expected: chi.order(),
                got: exps.len(),
            });
        }
        let basis: Vec<u32> = (0..chi.dim()).map(|i| exps[1 << i]).collect();
        let q = QForm::extend_from_basis(chi, &basis, Field::Complex, modulus)?;
        if q.exps != exps {
            return Err(FormError::NotIsometry);
        }
        Ok(q)
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.chi.0
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, a: Element) -> u32 {
        self.exps[a as usize]
    }

    pub fn value(&self, a: Element) -> CycScalar {
        CycScalar::root_of_unity(self.modulus, self.exps[a as usize] as i64)
    }

    pub fn basis_values(&self) -> Vec<u32> {
        (0..self.chi().dim()).map(|i| self.exps[1 << i]).collect()
    }

    pub fn is_real(&self) -> bool {
        self.exps.iter().all(|&e| e % (self.modulus / 2) == 0)
    }

    /// Exact `sum_a sigma(a)`.
    pub fn gauss_sum(&self) -> CycScalar {
        self.gauss_sum_over(
            (0..self.exps.len() as u32)
                .collect::<Vec<_>>()
                .iter()
                .copied(),
        )
    }

    /// Sum of the form over a subset of elements.
    pub fn gauss_sum_over(&self, elements: impl Iterator<Item = Element>) -> CycScalar {
        let mut hist = vec![0i64; self.modulus as usize];
        for a in elements {
            hist[self.exps[a as usize] as usize] += 1;
        }
        let mut acc = CycScalar::zero(self.modulus);
        for (j, &c) in hist.iter().enumerate() {
            if c != 0 {
                acc = acc
                    + CycScalar::root_of_unity(self.modulus, j as i64)
                        * CycScalar::from_int(self.modulus, c);
            }
        }
        acc
    }

    pub fn sign(&self) -> Result<i8, FormError> {
        sign_of(&self.gauss_sum())
    }

    /// `(f.sigma)(a) = sigma(f^-1(a))`.
    pub fn act(&self, f: &Automorphism) -> Result<QForm, FormError> {
        if f.dim() != self.chi().dim() || !f.preserves(self.chi()) || !f.is_invertible() {
            return Err(FormError::NotIsometry);
        }
        let inv = f.inverse()?;
        Ok(self.pullback(&inv))
    }

    /// `sigma ∘ f`, for `f` already known to preserve chi.
    pub fn pullback(&self, f: &Automorphism) -> QForm {
        let exps = (0..self.exps.len() as u32)
            .map(|a| self.exps[f.apply(a) as usize])
            .collect();
        QForm {
            exps,
            modulus: self.modulus,
            chi: self.chi.clone(),
        }
    }

    /// Orthogonal direct sum; the second factor occupies the high bits.
    pub fn direct_sum(&self, other: &QForm) -> QForm {
        let d = self.chi().dim();
        let chi = self.chi().direct_sum(other.chi());
        let mut exps = vec![0u32; chi.order()];
        for b in 0..other.exps.len() {
            for a in 0..self.exps.len() {
                exps[a | (b << d)] = (self.exps[a] + other.exps[b]) % self.modulus;
            }
        }
        QForm {
            exps,
            modulus: self.modulus,
            chi: BicharRef(chi),
        }
    }
}

/// Sign of a nonzero real scalar of the form `+-sqrt(2)^k`.
pub fn sign_of(x: &CycScalar) -> Result<i8, FormError> {
    x.real_sign()
        .ok_or_else(|| FormError::NoSign(x.to_string()))
}

/// All admissible forms, ordered by value table.
pub fn enumerate_qforms(
    chi: &Bicharacter,
    field: Field,
    modulus: u32,
) -> Result<Vec<QForm>, FormError> {
    let d = chi.dim();
    let half = modulus / 2;
    let mut choices: Vec<[u32; 2]> = Vec::with_capacity(d);
    for i in 0..d {
        let e = 1u32 << i;
        if chi.pair(e, e) {
            if field == Field::Real {
                return Ok(Vec::new());
            }
            if modulus < 4 {
                return Err(FormError::ModulusTooSmall(modulus));
            }
            choices.push([modulus / 4, 3 * modulus / 4]);
        } else {
            choices.push([0, half]);
        }
    }
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0..(1u32 << d) {
        let vals: Vec<u32> = (0..d)
            .map(|i| choices[i][(mask >> i & 1) as usize])
            .collect();
        out.push(QForm::extend_from_basis(chi, &vals, field, modulus)?);
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Indices into the input form list, ascending.
    pub members: Vec<usize>,
    pub stabilizer_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub aut_order: u64,
    pub orbits: Vec<Orbit>,
}

/// Partitions forms into automorphism orbits with exact stabilizer orders.
///
/// The orbit of `sigma` is `{sigma ∘ f}` over the whole group, which avoids
/// inverting each automorphism.
pub fn orbits_and_stabilizers(
    chi: &Bicharacter,
    forms: &[QForm],
    graded: Option<&GradedGroup>,
) -> Result<OrbitReport, FormError> {
    let d = chi.dim();
    let m = forms.first().map_or(1, |q| q.modulus) as u128;
    let pack = |vals: &mut dyn Iterator<Item = u32>| vals.fold(0u128, |acc, e| acc * m + e as u128);
    let mut index: Vec<(u128, usize)> = forms
        .iter()
        .enumerate()
        .map(|(i, q)| (pack(&mut (0..d).map(|k| q.exp(1 << k))), i))
        .collect();
    index.sort_unstable();
    let mut assigned = vec![false; forms.len()];
    let mut orbits = Vec::new();
    let mut aut_order = 0u64;
    for start in 0..forms.len() {
        if assigned[start] {
            continue;
        }
        let q = &forms[start];
        let own = pack(&mut (0..d).map(|k| q.exp(1 << k)));
        let mut members = vec![start];
        assigned[start] = true;
        let mut stab = 0u64;
        let mut total = 0u64;
        let mut missing = false;
        for_each_aut(chi, graded, |f| {
            total += 1;
            let mut key = 0u128;
            for &x in &f.images {
                key = key * m + q.exp(x) as u128;
            }
            if key == own {
                stab += 1;
            }
            match index.binary_search_by_key(&key, |e| e.0) {
                Ok(p) => {
                    let j = index[p].1;
                    if !assigned[j] {
                        assigned[j] = true;
                        members.push(j);
                    }
                }
                Err(_) => missing = true,
            }
            ControlFlow::Continue(())
        })?;
        if missing {
            return Err(FormError::NotIsometry);
        }
        aut_order = total;
        members.sort_unstable();
        debug_assert_eq!(members.len() as u64 * stab, total);
        orbits.push(Orbit {
            members,
            stabilizer_order: stab,
        });
    }
    if forms.is_empty() {
        aut_order = crate::f2::count_aut(chi, graded)?;
    }
    Ok(OrbitReport { aut_order, orbits })
}

/// `|QF_+^n| = 2^(n-1)(2^n + 1)`, with the value 1 at `n = 0`.
pub fn qf_plus_count(n: u32) -> u128 {
    if n == 0 {
        return 1;
    }
    (1u128 << (n - 1)) * ((1u128 << n) + 1)
}

/// `|QF_-^n| = 2^(n-1)(2^n - 1)`, with the value 0 at `n = 0`.
pub fn qf_minus_count(n: u32) -> u128 {
    if n == 0 {
        return 0;
    }
    (1u128 << (n - 1)) * ((1u128 << n) - 1)
}

/// Stabilizer order of a form of the given sign on `K4^n`.
///
/// `|H_+^n| = 2^(n^2-n+1)(2^n-1) prod_{i<n}(4^i-1)` and the same with
/// `2^n+1` for the minus sign. At `n = 0` the group is trivial.
pub fn stabilizer_formula(n: u32, sign: i8) -> u128 {
    if n == 0 {
        return 1;
    }
    let mut r: u128 = 1 << (n * n - n + 1);
    r *= if sign > 0 {
        (1u128 << n) - 1
    } else {
        (1u128 << n) + 1
    };
    for i in 1..n {
        r *= (1u128 << (2 * i)) - 1;
    }
    r
}
