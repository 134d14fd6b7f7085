//! Linear subspaces of ℚⁿ in canonical reduced row-echelon form.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref};
use crate::scalar::{format_combination, Scalar, Vector};

/// A subspace of ℚⁿ stored as its reduced row-echelon basis.
///
/// The representation is canonical: two subspaces are equal as sets exactly
/// when their `basis` fields are identical, so `Eq` and `Hash` are set
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::canonicalize((0..n).map(|i| crate::scalar::unit_vector(n, i)).collect(), n)
    }

    /// Canonical span of `vectors`. Panics if a vector has the wrong length;
    /// use [`Subspace::try_canonicalize`] on untrusted input.
    pub fn canonicalize(vectors: Vec<Vector>, n: usize) -> Self {
        Self::try_canonicalize(vectors, n).expect("vector length matches ambient dimension")
    }

    pub fn try_canonicalize(vectors: Vec<Vector>, n: usize) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Malformed(format!(
                "vector of length {} in ambient dimension {n}",
                v.len()
            )));
        }
        let (basis, pivots) = rref(vectors, n);
        Ok(Subspace { ambient_dim: n, basis, pivots })
    }

    pub fn span_of(vectors: &[Vector], n: usize) -> Self {
        Self::canonicalize(vectors.to_vec(), n)
    }

    /// Wraps a matrix already known to be in reduced row-echelon form with
    /// unit pivots. The enumeration code produces these directly.
    pub(crate) fn from_rref_unchecked(basis: Vec<Vector>, pivots: Vec<usize>, n: usize) -> Self {
        debug_assert_eq!(rref(basis.clone(), n).0, basis);
        Subspace { ambient_dim: n, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other_dim: usize) -> Result<()> {
        if self.ambient_dim != other_dim {
            return Err(Error::Malformed(format!(
                "ambient dimension mismatch: {} vs {other_dim}",
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// `v` minus its component along the pivot directions. Zero exactly when
    /// `v` lies in the subspace; linear in `v`.
    pub fn residual(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -v[p].clone();
                crate::scalar::axpy(&mut r, &c, row);
            }
        }
        r
    }

    /// Coordinates of `v` in the canonical basis, assuming `v` is in the
    /// subspace. These are just the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Vector {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check_ambient(v.len())?;
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &[Scalar]) -> bool {
        self.residual(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() <= other.dim()
            && self.basis.iter().all(|b| other.contains_unchecked(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Ok(Subspace::canonicalize(all, self.ambient_dim))
    }

    /// Exact intersection: combinations of `self`'s basis whose residual
    /// modulo `other` vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim)?;
        let n = self.ambient_dim;
        let residuals: Vec<Vector> = self.basis.iter().map(|b| other.residual(b)).collect();
        // Rows indexed by ambient coordinate, columns by basis vector of self.
        let system: Vec<Vector> = (0..n)
            .map(|c| residuals.iter().map(|r| r[c].clone()).collect())
            .collect();
        let kernel = nullspace(system, self.dim());
        Ok(Subspace::canonicalize(kernel.iter().map(|c| self.combine(c)).collect(), n))
    }

    /// `Σ cᵢ bᵢ` over the canonical basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut v = crate::scalar::zero_vector(self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            crate::scalar::axpy(&mut v, c, b);
        }
        v
    }

    /// The subspace of linear functionals vanishing on `self`, under the
    /// standard pairing.
    pub fn annihilator(&self) -> Subspace {
        Subspace::canonicalize(nullspace(self.basis.clone(), self.ambient_dim), self.ambient_dim)
    }

    /// Renders as `span(e1, e2 - e3)` or `0`.
    pub fn display<'a>(&'a self, labels: &'a [String]) -> SubspaceDisplay<'a> {
        SubspaceDisplay { sub: self, labels }
    }
}

pub struct SubspaceDisplay<'a> {
    sub: &'a Subspace,
    labels: &'a [String],
}

impl fmt::Display for SubspaceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sub.is_zero() {
            return f.write_str("0");
        }
        f.write_str("span(")?;
        for (i, row) in self.sub.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_combination(row, self.labels))?;
        }
        f.write_str(")")
    }
}
