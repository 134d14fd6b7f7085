//! Finite-dimensional Lie algebras given by structure constants, the
//! bracket, and the linear solves built directly on it.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::scalar::{axpy, is_zero_vector, unit_vector, zero_vector, Scalar, Vector};
use crate::subspace::Subspace;

/// A Lie algebra over ℚ with basis `e₁..eₙ`.
///
/// Only brackets `[eᵢ, eⱼ]` with `i < j` are stored; antisymmetry is
/// structural and absent entries are zero. The Jacobi identity is not
/// enforced on construction; see [`validate_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vector>,
}

impl LieAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vector)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= dim {
                return Err(Error::Malformed(format!(
                    "bracket index ({i}, {j}) must satisfy i < j < {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::Malformed(format!(
                    "bracket ({i}, {j}) has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if table.contains_key(&(i, j)) {
                return Err(Error::Malformed(format!("bracket ({i}, {j}) given twice")));
            }
            if !is_zero_vector(&v) {
                table.insert((i, j), v);
            }
        }
        Ok(LieAlgebra { name: name.into(), labels, brackets: table })
    }

    /// Convenience constructor from sparse integer data:
    /// `(i, j, [(k, c), ...])` meaning `[eᵢ, eⱼ] = Σ c eₖ`.
    pub fn from_sparse(
        name: &str,
        labels: &[&str],
        table: &[(usize, usize, &[(usize, i64)])],
    ) -> Result<Self> {
        let dim = labels.len();
        let brackets = table.iter().map(|&(i, j, terms)| {
            let mut v = zero_vector(dim);
            for &(k, c) in terms {
                v[k] += crate::scalar::int(c);
            }
            ((i, j), v)
        });
        Self::new(name, labels.iter().map(|s| s.to_string()).collect(), brackets.collect::<Vec<_>>())
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            name: format!("abelian({n})"),
            labels: crate::scalar::default_labels(n),
            brackets: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero structure constants, keyed by `(i, j)` with `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.brackets
    }

    /// `[eᵢ, eⱼ]` for any `i, j`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => zero_vector(self.dim()),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| zero_vector(self.dim())),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| zero_vector(self.dim())),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::Malformed(format!(
                "bracket arguments of length {} and {} in an algebra of dimension {}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (&(i, j), c) in &self.brackets {
            if (x[i].is_zero() && x[j].is_zero()) || (y[i].is_zero() && y[j].is_zero()) {
                continue;
            }
            let coeff = &x[i] * &y[j] - &x[j] * &y[i];
            axpy(&mut out, &coeff, c);
        }
        out
    }

    /// Matrix of `ad(x)` acting on coordinate columns: `ad(x)[k][l]` is the
    /// `eₖ` coefficient of `[x, eₗ]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Vec<Vector> {
        let n = self.dim();
        let mut m = vec![zero_vector(n); n];
        for l in 0..n {
            let col = self.bracket_unchecked(x, &self.basis_vector(l));
            for (k, c) in col.into_iter().enumerate() {
                m[k][l] = c;
            }
        }
        m
    }

    /// Canonical span of `[a, b]` over basis vectors of `a_sub` and `b_sub`.
    pub fn bracket_span(&self, a_sub: &Subspace, b_sub: &Subspace) -> Result<Subspace> {
        self.check_sub(a_sub)?;
        self.check_sub(b_sub)?;
        Ok(self.bracket_span_unchecked(a_sub, b_sub))
    }

    pub(crate) fn bracket_span_unchecked(&self, a_sub: &Subspace, b_sub: &Subspace) -> Subspace {
        let mut gens = Vec::with_capacity(a_sub.dim() * b_sub.dim());
        for a in a_sub.basis() {
            for b in b_sub.basis() {
                let c = self.bracket_unchecked(a, b);
                if !is_zero_vector(&c) {
                    gens.push(c);
                }
            }
        }
        Subspace::canonicalize(gens, self.dim())
    }

    /// `{x ∈ v : [x, w] ⊆ u}`, by solving the linear system
    /// `residual_u([x, wⱼ]) = 0` for each basis vector `wⱼ` of `w`.
    pub fn transporter(&self, v: &Subspace, w: &Subspace, u: &Subspace) -> Result<Subspace> {
        self.check_sub(v)?;
        self.check_sub(w)?;
        self.check_sub(u)?;
        Ok(self.transporter_unchecked(v, w, u))
    }

    pub(crate) fn transporter_unchecked(&self, v: &Subspace, w: &Subspace, u: &Subspace) -> Subspace {
        let n = self.dim();
        if v.is_zero() || w.is_zero() || u.is_full() {
            return v.clone();
        }
        // Columns: one per basis vector of v. Rows: ambient coordinates of the
        // residual, for every basis vector of w.
        let columns: Vec<Vec<Vector>> = v
            .basis()
            .iter()
            .map(|vi| w.basis().iter().map(|wj| u.residual(&self.bracket_unchecked(vi, wj))).collect())
            .collect();
        let mut system = Vec::new();
        for j in 0..w.dim() {
            for c in 0..n {
                if u.pivots().binary_search(&c).is_ok() {
                    continue;
                }
                let row: Vector = columns.iter().map(|col| col[j][c].clone()).collect();
                if !row.iter().all(Zero::is_zero) {
                    system.push(row);
                }
            }
        }
        let kernel = nullspace(system, v.dim());
        Subspace::canonicalize(kernel.iter().map(|c| v.combine(c)).collect(), n)
    }

    /// `{x ∈ 𝔤 : [x, h] ⊆ h}`.
    pub fn normalizer(&self, h: &Subspace) -> Result<Subspace> {
        self.transporter(&self.whole(), h, h)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        s.ambient_dim() == self.dim()
            && (0..b.len()).all(|i| (i + 1..b.len()).all(|j| s.contains_unchecked(&self.bracket_unchecked(&b[i], &b[j]))))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim()
            && (0..self.dim()).all(|i| s.basis().iter().all(|v| s.contains_unchecked(&self.bracket_unchecked(&self.basis_vector(i), v))))
    }

    /// The subalgebra `s` as an algebra in its own right, using the canonical
    /// basis of `s`.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        self.check_sub(s)?;
        if !self.is_subalgebra(s) {
            return Err(Error::InvalidPair("subspace is not closed under the bracket".into()));
        }
        let labels = s
            .basis()
            .iter()
            .map(|b| crate::scalar::format_combination(b, &self.labels))
            .collect();
        let mut table = Vec::new();
        for i in 0..s.dim() {
            for j in i + 1..s.dim() {
                let c = self.bracket_unchecked(&s.basis()[i], &s.basis()[j]);
                table.push(((i, j), s.coordinates(&c)));
            }
        }
        LieAlgebra::new(format!("sub({})", self.name), labels, table)
    }

    pub(crate) fn check_sub(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::Malformed(format!(
                "subspace of ambient dimension {} in an algebra of dimension {}",
                s.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// One basis triple `(i, j, k)` for which the Jacobi sum is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub sum: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<JacobiViolation>,
}

/// Checks the Jacobi identity on every basis triple `i < j < k`.
pub fn validate_algebra(alg: &LieAlgebra) -> ValidationReport {
    let n = alg.dim();
    let mut violations = Vec::new();
    let e = |i| alg.basis_vector(i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t1 = alg.bracket_unchecked(&e(i), &alg.basis_bracket(j, k));
                let t2 = alg.bracket_unchecked(&e(j), &alg.basis_bracket(k, i));
                let t3 = alg.bracket_unchecked(&e(k), &alg.basis_bracket(i, j));
                let sum: Vector = t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect();
                if !is_zero_vector(&sum) {
                    violations.push(JacobiViolation { triple: (i, j, k), sum });
                }
            }
        }
    }
    ValidationReport { ok: violations.is_empty(), violations }
}

/// An infinitesimal Klein geometry: an algebra with a stabilizer subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinPair {
    algebra: LieAlgebra,
    stabilizer: Subspace,
}

impl KleinPair {
    pub fn new(algebra: LieAlgebra, stabilizer: Subspace) -> Result<Self> {
        algebra.check_sub(&stabilizer)?;
        if !algebra.is_subalgebra(&stabilizer) {
            return Err(Error::InvalidPair(format!(
                "stabilizer {} is not closed under the bracket",
                stabilizer.display(algebra.labels())
            )));
        }
        Ok(KleinPair { algebra, stabilizer })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn stabilizer(&self) -> &Subspace {
        &self.stabilizer
    }
}
