//! Elementary abelian 2-groups as bit-vectors, symmetric F2 bicharacters,
//! Wall normalization and isometry enumeration.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::scalar::CycScalar;

/// Group elements are packed bit-vectors; bit `i` is coordinate `i`.
pub type Element = u32;

pub const MAX_DIM: usize = 16;
/// Largest dimension accepted by the automorphism search.
pub const AUT_MAX_DIM: usize = 8;
/// Largest automorphism group materialized by [`enumerate_aut`].
pub const AUT_MAX_ELEMENTS: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("dimension {0} exceeds the limit {1}")]
    Capacity(usize, usize),
    #[error("automorphism group has more than {0} elements")]
    TooManyAutomorphisms(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("bicharacter is degenerate")]
    Degenerate,
    #[error("restriction to the even part is degenerate")]
    DegenerateEvenPart,
    #[error("grading is trivial")]
    TrivialGrading,
    #[error("row {0} has the wrong length or a non-binary character")]
    BadRow(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("map does not preserve the bicharacter")]
    NotIsometry,
}

#[inline]
pub fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

pub fn bits_to_string(x: Element, dim: usize) -> String {
    (0..dim)
        .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn string_to_bits(s: &str) -> Option<Element> {
    let mut x = 0;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' if i < 32 => x |= 1 << i,
            _ => return None,
        }
    }
    Some(x)
}

/// Square matrix over F2; row `i` is a bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    pub dim: usize,
    pub rows: Vec<u32>,
}

impl F2Matrix {
    pub fn identity(dim: usize) -> Self {
        F2Matrix {
            dim,
            rows: (0..dim).map(|i| 1 << i).collect(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// `M x` for a column vector `x`.
    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            if parity(r & x) {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![0u32; self.dim];
        for i in 0..self.dim {
            for (j, row) in rows.iter_mut().enumerate() {
                if self.entry(i, j) {
                    *row |= 1 << i;
                }
            }
        }
        F2Matrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // (AB) row i = sum over j in row_i(A) of row_j(B)
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0;
                for j in 0..self.dim {
                    if r >> j & 1 == 1 {
                        acc ^= other.rows[j];
                    }
                }
                acc
            })
            .collect();
        F2Matrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    pub fn inverse(&self) -> Result<Self, F2Error> {
        let n = self.dim;
        let mut a = self.rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r] >> col & 1 == 1)
                .ok_or(F2Error::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(F2Matrix { dim: n, rows: inv })
    }

    /// `P M P^T`.
    pub fn congruence(&self, m: &F2Matrix) -> F2Matrix {
        self.mul(m).mul(&self.transpose())
    }
}

pub fn rank_of(vectors: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        if let Some(r) = reduce(&basis, v) {
            basis.push(r);
        }
    }
    basis.len()
}

/// Reduces `v` against an echelon list; returns the nonzero remainder.
fn reduce(basis: &[u32], mut v: u32) -> Option<u32> {
    for &b in basis {
        let top = 31 - b.leading_zeros();
        if v >> top & 1 == 1 {
            v ^= b;
        }
    }
    if v == 0 {
        None
    } else {
        Some(v)
    }
}

/// Keeps an echelon basis sorted by decreasing leading bit.
fn insert_echelon(basis: &mut Vec<u32>, v: u32) {
    let top = 31 - v.leading_zeros();
    for b in basis.iter_mut() {
        if *b >> top & 1 == 1 {
            *b ^= v;
        }
    }
    let pos = basis
        .iter()
        .position(|&b| b.leading_zeros() > v.leading_zeros())
        .unwrap_or(basis.len());
    basis.insert(pos, v);
}

/// Symmetric bilinear form over F2; `chi(a,b) = (-1)^(a^T M b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    matrix: F2Matrix,
}

impl Bicharacter {
    pub fn new(matrix: F2Matrix) -> Result<Self, F2Error> {
        if matrix.dim > MAX_DIM {
            return Err(F2Error::Capacity(matrix.dim, MAX_DIM));
        }
        if matrix.rows.len() != matrix.dim || matrix.rows.iter().any(|&r| r >> matrix.dim != 0) {
            return Err(F2Error::BadRow(0));
        }
        if matrix.transpose() != matrix {
            return Err(F2Error::NotSymmetric);
        }
        Ok(Bicharacter { matrix })
    }

    pub fn from_rows(dim: usize, rows: Vec<u32>) -> Result<Self, F2Error> {
        Self::new(F2Matrix { dim, rows })
    }

    pub fn from_gram_rows(dim: usize, rows: &[String]) -> Result<Self, F2Error> {
        if rows.len() != dim {
            return Err(F2Error::DimensionMismatch(rows.len(), dim));
        }
        let mut out = Vec::with_capacity(dim);
        for (i, r) in rows.iter().enumerate() {
            if r.chars().count() != dim {
                return Err(F2Error::BadRow(i));
            }
            out.push(string_to_bits(r).ok_or(F2Error::BadRow(i))?);
        }
        Self::from_rows(dim, out)
    }

    pub fn gram_rows(&self) -> Vec<String> {
        self.matrix
            .rows
            .iter()
            .map(|&r| bits_to_string(r, self.dim()))
            .collect()
    }

    pub fn trivial() -> Self {
        Bicharacter {
            matrix: F2Matrix::identity(0),
        }
    }

    /// `h^n` on `K4^n`, basis `a1, b1, a2, b2, ...`.
    pub fn standard_hyperbolic(n: usize) -> Self {
        let rows = (0..2 * n).map(|i| 1u32 << (i ^ 1)).collect();
        Bicharacter {
            matrix: F2Matrix { dim: 2 * n, rows },
        }
    }

    /// `l^k`: the identity Gram matrix of size `k`.
    pub fn ell(k: usize) -> Self {
        Bicharacter {
            matrix: F2Matrix::identity(k),
        }
    }

    /// Zero pairing on `dim` generators.
    pub fn zero(dim: usize) -> Self {
        Bicharacter {
            matrix: F2Matrix {
                dim,
                rows: vec![0; dim],
            },
        }
    }

    /// `h^h ⊕ l^l`.
    pub fn normal_form(h_blocks: usize, l_blocks: usize) -> Self {
        Self::standard_hyperbolic(h_blocks).direct_sum(&Self::ell(l_blocks))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let d = self.dim();
        let mut rows = self.matrix.rows.clone();
        rows.extend(other.matrix.rows.iter().map(|&r| r << d));
        Bicharacter {
            matrix: F2Matrix {
                dim: d + other.dim(),
                rows,
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn order(&self) -> usize {
        1 << self.dim()
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.matrix
    }

    /// `M b` as a bitmask.
    #[inline]
    pub fn image(&self, b: Element) -> u32 {
        let mut acc = 0;
        let mut x = b;
        while x != 0 {
            let j = x.trailing_zeros() as usize;
            acc ^= self.matrix.rows[j];
            x &= x - 1;
        }
        acc
    }

    /// `true` when `chi(a,b) = -1`.
    #[inline]
    pub fn pair(&self, a: Element, b: Element) -> bool {
        parity(a & self.image(b))
    }

    pub fn value(&self, a: Element, b: Element) -> i8 {
        if self.pair(a, b) {
            -1
        } else {
            1
        }
    }

    pub fn scalar(&self, a: Element, b: Element, modulus: u32) -> CycScalar {
        CycScalar::from_int(modulus, self.value(a, b) as i64)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.dim()).all(|i| !self.matrix.entry(i, i))
    }

    /// Gram matrix on the given vectors.
    pub fn restrict(&self, basis: &[Element]) -> Bicharacter {
        let k = basis.len();
        let rows = (0..k)
            .map(|i| {
                let mut r = 0;
                for j in 0..k {
                    if self.pair(basis[i], basis[j]) {
                        r |= 1 << j;
                    }
                }
                r
            })
            .collect();
        Bicharacter {
            matrix: F2Matrix { dim: k, rows },
        }
    }

    /// Unique `c` with `chi(c,u) = chi(u,u)` for all `u`; needs nondegeneracy.
    pub fn characteristic_vector(&self) -> Result<Element, F2Error> {
        let diag: u32 = (0..self.dim())
            .filter(|&i| self.matrix.entry(i, i))
            .map(|i| 1 << i)
            .sum();
        let inv = self.matrix.inverse().map_err(|_| F2Error::Degenerate)?;
        Ok(inv.apply(diag))
    }

    /// Radical `{x : chi(x, -) = 1}`.
    pub fn radical(&self) -> Vec<Element> {
        (0..self.order() as u32)
            .filter(|&x| self.image(x) == 0)
            .collect()
    }

    /// Orthogonal complement of the span of `vs`.
    pub fn orthogonal(&self, vs: &[Element]) -> Vec<Element> {
        (0..self.order() as u32)
            .filter(|&x| vs.iter().all(|&v| !self.pair(x, v)))
            .collect()
    }
}

/// Result of Wall normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallForm {
    /// Rows are the new basis vectors in old coordinates.
    pub basis_change: F2Matrix,
    pub h_blocks: usize,
    pub l_blocks: usize,
}

/// Finds `P` with `P M P^T = h^k ⊕ l^j`, `j ∈ {0,1,2}`.
///
/// Non-alternating forms are split along the characteristic vector `c`:
/// odd dimension gives `<c> ⊥ c^perp`, even dimension gives
/// `<u, u+c> ⊥ <c,u>^perp` for any `u` with `chi(u,u) = -1`.
pub fn wall_normalize(chi: &Bicharacter) -> Result<WallForm, F2Error> {
    if !chi.is_nondegenerate() {
        return Err(F2Error::Degenerate);
    }
    let dim = chi.dim();
    let mut ell: Vec<u32> = Vec::new();
    let mut rest: Vec<u32> = (0..dim).map(|i| 1 << i).collect();
    if !chi.is_alternating() {
        let c = chi.characteristic_vector()?;
        if chi.pair(c, c) {
            ell.push(c);
            rest = project_out(chi, &rest, &[c]);
        } else {
            let u = (0..dim)
                .map(|i| 1u32 << i)
                .find(|&e| chi.pair(e, e))
                .expect("odd vector");
            ell.push(u);
            ell.push(u ^ c);
            rest = project_out(chi, &rest, &[u, u ^ c]);
        }
    }
    let mut hyper: Vec<u32> = Vec::new();
    let mut pool: Vec<u32> = rest.into_iter().filter(|&v| v != 0).collect();
    while let Some(&x) = pool.first() {
        let y = *pool
            .iter()
            .find(|&&y| chi.pair(x, y))
            .ok_or(F2Error::Degenerate)?;
        hyper.push(x);
        hyper.push(y);
        pool = pool
            .iter()
            .map(|&v| {
                let mut v = v;
                // v - chi(v,y) x - chi(v,x) y
                let (vy, vx) = (chi.pair(v, y), chi.pair(v, x));
                if vy {
                    v ^= x;
                }
                if vx {
                    v ^= y;
                }
                v
            })
            .filter(|&v| v != 0)
            .collect();
        let mut basis = Vec::new();
        pool.retain(|&v| match reduce(&basis, v) {
            Some(r) => {
                insert_echelon(&mut basis, r);
                true
            }
            None => false,
        });
    }
    let h_blocks = hyper.len() / 2;
    let l_blocks = ell.len();
    let mut rows = hyper;
    rows.extend(ell);
    let p = F2Matrix { dim, rows };
    debug_assert_eq!(
        p.congruence(chi.matrix()),
        Bicharacter::normal_form(h_blocks, l_blocks).matrix
    );
    Ok(WallForm {
        basis_change: p,
        h_blocks,
        l_blocks,
    })
}

/// Projects vectors onto the orthogonal complement of a nondegenerate span.
fn project_out(chi: &Bicharacter, vs: &[u32], span: &[u32]) -> Vec<u32> {
    let sub = chi.restrict(span);
    let inv = sub.matrix.inverse().expect("nondegenerate span");
    let mut out = Vec::new();
    let mut basis = Vec::new();
    for &v in vs {
        let pairings: u32 = span
            .iter()
            .enumerate()
            .filter(|(_, &s)| chi.pair(v, s))
            .map(|(i, _)| 1 << i)
            .sum();
        let coeffs = inv.apply(pairings);
        let mut p = v;
        for (i, &s) in span.iter().enumerate() {
            if coeffs >> i & 1 == 1 {
                p ^= s;
            }
        }
        if let Some(r) = reduce(&basis, p) {
            insert_echelon(&mut basis, r);
            out.push(p);
        }
    }
    out
}

/// Grading `|x| = parity(x & grading)` and distinguished odd element `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    pub dim: usize,
    pub grading: u32,
    pub w: Option<Element>,
}

impl GradedGroup {
    pub fn ungraded(dim: usize) -> Self {
        GradedGroup {
            dim,
            grading: 0,
            w: None,
        }
    }

    pub fn order(&self) -> usize {
        1 << self.dim
    }

    #[inline]
    pub fn degree(&self, x: Element) -> bool {
        parity(x & self.grading)
    }

    pub fn is_graded(&self) -> bool {
        self.grading != 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..(1u32 << self.dim)
    }

    pub fn even_elements(&self) -> Vec<Element> {
        self.elements().filter(|&x| !self.degree(x)).collect()
    }

    pub fn odd_elements(&self) -> Vec<Element> {
        self.elements().filter(|&x| self.degree(x)).collect()
    }

    /// A basis of the even part.
    pub fn even_basis(&self) -> Vec<Element> {
        let mut basis = Vec::new();
        let mut echelon = Vec::new();
        for x in self.even_elements() {
            if let Some(r) = reduce(&echelon, x) {
                insert_echelon(&mut echelon, r);
                basis.push(x);
            }
        }
        basis
    }
}

/// The unique odd element orthogonal to the even part.
pub fn canonical_w(graded: &GradedGroup, chi: &Bicharacter) -> Result<Element, F2Error> {
    if !graded.is_graded() {
        return Err(F2Error::TrivialGrading);
    }
    let even = graded.even_basis();
    if !chi.restrict(&even).is_nondegenerate() {
        return Err(F2Error::DegenerateEvenPart);
    }
    let found: Vec<Element> = graded
        .odd_elements()
        .into_iter()
        .filter(|&x| even.iter().all(|&a| !chi.pair(x, a)))
        .collect();
    match found.as_slice() {
        [w] => Ok(*w),
        _ => Err(F2Error::DegenerateEvenPart),
    }
}

/// Automorphism given by the images of the standard basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub images: Vec<Element>,
}

impl Automorphism {
    pub fn identity(dim: usize) -> Self {
        Automorphism {
            images: (0..dim).map(|i| 1 << i).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        let mut acc = 0;
        let mut y = x;
        while y != 0 {
            acc ^= self.images[y.trailing_zeros() as usize];
            y &= y - 1;
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Automorphism {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self, F2Error> {
        // images are columns of the matrix
        let m = F2Matrix {
            dim: self.dim(),
            rows: self.images.clone(),
        }
        .transpose();
        let inv = m.inverse()?.transpose();
        Ok(Automorphism { images: inv.rows })
    }

    pub fn preserves(&self, chi: &Bicharacter) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (i..d).all(|j| chi.pair(self.images[i], self.images[j]) == chi.pair(1 << i, 1 << j))
        })
    }

    pub fn is_invertible(&self) -> bool {
        rank_of(&self.images) == self.dim()
    }
}

/// Visits every automorphism of `(A, chi)`, preserving the grading when given.
///
/// Images of basis vectors are chosen one at a time, constrained by their
/// pairings with the images already chosen and by linear independence.
pub fn for_each_aut<F>(
    chi: &Bicharacter,
    graded: Option<&GradedGroup>,
    mut visit: F,
) -> Result<(), F2Error>
where
    F: FnMut(&Automorphism) -> ControlFlow<()>,
{
    let dim = chi.dim();
    if dim > AUT_MAX_DIM {
        return Err(F2Error::Capacity(dim, AUT_MAX_DIM));
    }
    let grading = graded.map(|g| g.grading).unwrap_or(0);
    let rows: Vec<u32> = (0..1u32 << dim).map(|v| chi.image(v)).collect();
    let candidates = (0..dim)
        .map(|level| {
            let e = 1u32 << level;
            (1..1u32 << dim)
                .filter(|&v| {
                    parity(v & grading) == parity(e & grading) && chi.pair(v, v) == chi.pair(e, e)
                })
                .collect()
        })
        .collect();
    let mut s = AutSearch {
        dim,
        rows,
        candidates,
        f: Automorphism {
            images: vec![0; dim],
        },
        spans: vec![[0u64; 4]; dim + 1],
    };
    s.spans[0][0] = 1;
    let _ = s.run(chi, 0, &mut visit);
    Ok(())
}

/// Depth-first state; `spans[k]` is the span of the first `k` images as a
/// 256-bit membership set.
struct AutSearch {
    dim: usize,
    rows: Vec<u32>,
    candidates: Vec<Vec<u32>>,
    f: Automorphism,
    spans: Vec<[u64; 4]>,
}

impl AutSearch {
    fn run<F>(&mut self, chi: &Bicharacter, level: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Automorphism) -> ControlFlow<()>,
    {
        if level == self.dim {
            return visit(&self.f);
        }
        let target = chi.image(1 << level) & ((1u32 << level) - 1);
        for k in 0..self.candidates[level].len() {
            let v = self.candidates[level][k];
            let row = self.rows[v as usize];
            if (0..level).any(|j| parity(row & self.f.images[j]) != (target >> j & 1 == 1)) {
                continue;
            }
            let span = self.spans[level];
            if span[(v >> 6) as usize] >> (v & 63) & 1 == 1 {
                continue;
            }
            let mut next = span;
            for (w, word) in span.iter().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let x = (w as u32) << 6 | bits.trailing_zeros();
                    let y = x ^ v;
                    next[(y >> 6) as usize] |= 1 << (y & 63);
                    bits &= bits - 1;
                }
            }
            self.spans[level + 1] = next;
            self.f.images[level] = v;
            self.run(chi, level + 1, visit)?;
        }
        ControlFlow::Continue(())
    }
}

pub fn count_aut(chi: &Bicharacter, graded: Option<&GradedGroup>) -> Result<u64, F2Error> {
    let mut n = 0u64;
    for_each_aut(chi, graded, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

pub fn enumerate_aut(
    chi: &Bicharacter,
    graded: Option<&GradedGroup>,
) -> Result<Vec<Automorphism>, F2Error> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_aut(chi, graded, |f| {
        if out.len() >= AUT_MAX_ELEMENTS {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(F2Error::TooManyAutomorphisms(AUT_MAX_ELEMENTS));
    }
    Ok(out)
}

/// `|Aut(K4^n, h^n)| = 2^(n^2) prod_{i=1}^n (4^i - 1)`.
pub fn aut_order_formula(n: u32) -> u128 {
    let mut r: u128 = 1 << (n * n);
    for i in 1..=n {
        r *= (1u128 << (2 * i)) - 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_values() {
        let h = Bicharacter::standard_hyperbolic(1);
        assert_eq!(h.value(1, 2), -1);
        assert_eq!(h.value(2, 1), -1);
        assert_eq!(h.value(1, 1), 1);
        assert_eq!(h.value(2, 2), 1);
        assert_eq!(Bicharacter::standard_hyperbolic(0).dim(), 0);
        assert_eq!(h.gram_rows(), vec!["01".to_string(), "10".to_string()]);
        let h2 = Bicharacter::standard_hyperbolic(2);
        assert_eq!(h2.matrix().rows, vec![0b0010, 0b0001, 0b1000, 0b0100]);
    }

    #[test]
    fn wall_examples() {
        let w = wall_normalize(&Bicharacter::standard_hyperbolic(1)).unwrap();
        assert_eq!((w.h_blocks, w.l_blocks), (1, 0));
        let w = wall_normalize(&Bicharacter::ell(2)).unwrap();
        assert_eq!((w.h_blocks, w.l_blocks), (0, 2));
        let w = wall_normalize(&Bicharacter::ell(3)).unwrap();
        assert_eq!((w.h_blocks, w.l_blocks), (1, 1));
        assert!(wall_normalize(&Bicharacter::zero(2)).is_err());
    }

    #[test]
    fn aut_orders() {
        assert_eq!(
            count_aut(&Bicharacter::standard_hyperbolic(1), None).unwrap(),
            6
        );
        assert_eq!(
            count_aut(&Bicharacter::standard_hyperbolic(2), None).unwrap(),
            720
        );
        assert_eq!(count_aut(&Bicharacter::trivial(), None).unwrap(), 1);
        assert_eq!(aut_order_formula(3), 1_451_520);
        assert!(matches!(
            count_aut(&Bicharacter::standard_hyperbolic(5), None),
            Err(F2Error::Capacity(10, 8))
        ));
    }

    #[test]
    fn canonical_w_examples() {
        // A0 = <a,b> with h, raw w0 = bit 2 pairing like b with A0.
        let mut rows = vec![0b010, 0b001, 0];
        // chi(w0, a) = chi(b, a) = -1
        rows[2] |= 0b001;
        rows[0] |= 0b100;
        let chi = Bicharacter::from_rows(3, rows).unwrap();
        let g = GradedGroup {
            dim: 3,
            grading: 0b100,
            w: None,
        };
        assert_eq!(canonical_w(&g, &chi).unwrap(), 0b110);
        let chi = Bicharacter::standard_hyperbolic(1).direct_sum(&Bicharacter::zero(1));
        assert_eq!(canonical_w(&g, &chi).unwrap(), 0b100);
        let g1 = GradedGroup {
            dim: 1,
            grading: 1,
            w: None,
        };
        assert_eq!(canonical_w(&g1, &Bicharacter::zero(1)).unwrap(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Automorphism {
            images: vec![0b11, 0b01],
        };
        let g = f.inverse().unwrap();
        assert_eq!(f.compose(&g), Automorphism::identity(2));
    }
}
