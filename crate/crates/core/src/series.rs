//! Lower central and derived series, the Killing form, and the structural
//! classification built from them.

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::linalg::inertia;
use crate::scalar::{zero_vector, Vector};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// A descending series stored up to its first repeated term.
///
/// `terms[k]` is the k-th term and the last entry equals every later term,
/// so `length()` is the first `k` with `term(k) == term(k + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
}

impl SeriesChain {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terminal(&self) -> &Subspace {
        self.terms.last().expect("series has a first term")
    }

    pub fn term(&self, k: usize) -> &Subspace {
        self.terms.get(k).unwrap_or_else(|| self.terminal())
    }

    /// Terminates at zero: nilpotent for the lower central series, solvable
    /// for the derived series.
    pub fn reaches_zero(&self) -> bool {
        self.terminal().is_zero()
    }
}

fn iterate(start: Subspace, mut step: impl FnMut(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut terms = vec![start];
    loop {
        let next = step(terms.last().unwrap());
        if &next == terms.last().unwrap() {
            return terms;
        }
        terms.push(next);
    }
}

/// Lower central series of the subalgebra `s`: `C₀ = s`, `Cₖ₊₁ = [Cₖ, s]`.
pub fn lower_central_series_of(alg: &LieAlgebra, s: &Subspace) -> SeriesChain {
    let terms = iterate(s.clone(), |c| alg.bracket_span_unchecked(c, s));
    SeriesChain { kind: SeriesKind::LowerCentral, terms }
}

/// Derived series of the subalgebra `s`: `D₀ = s`, `Dₖ₊₁ = [Dₖ, Dₖ]`.
pub fn derived_series_of(alg: &LieAlgebra, s: &Subspace) -> SeriesChain {
    let terms = iterate(s.clone(), |d| alg.bracket_span_unchecked(d, d));
    SeriesChain { kind: SeriesKind::Derived, terms }
}

pub fn lower_central_series(alg: &LieAlgebra) -> SeriesChain {
    lower_central_series_of(alg, &alg.whole())
}

pub fn derived_series(alg: &LieAlgebra) -> SeriesChain {
    derived_series_of(alg, &alg.whole())
}

/// `K(eᵢ, eⱼ) = trace(ad eᵢ ∘ ad eⱼ)`.
pub fn killing_form(alg: &LieAlgebra) -> Vec<Vector> {
    let n = alg.dim();
    let ads: Vec<Vec<Vector>> = (0..n).map(|i| alg.ad_matrix(&alg.basis_vector(i))).collect();
    let mut k = vec![zero_vector(n); n];
    for i in 0..n {
        for j in i..n {
            let mut t = crate::scalar::int(0);
            for a in 0..n {
                for b in 0..n {
                    t += &ads[i][a][b] * &ads[j][b][a];
                }
            }
            k[j][i] = t.clone();
            k[i][j] = t;
        }
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_perfect: bool,
    /// Stabilization length of the lower central series; for nilpotent
    /// algebras this is the nilpotency step.
    pub nil_length: usize,
    /// Derived length; `None` unless solvable.
    pub sol_length: Option<usize>,
    pub killing_rank: usize,
    pub killing_signature: Signature,
}

impl Classification {
    pub fn is_semisimple(&self) -> bool {
        self.killing_signature.zero == 0
    }

    /// Negative definite Killing form on a nonzero algebra.
    pub fn is_compact_type(&self) -> bool {
        self.killing_signature.negative > 0
            && self.killing_signature.positive == 0
            && self.killing_signature.zero == 0
    }
}

pub fn classify(alg: &LieAlgebra) -> Classification {
    let lcs = lower_central_series(alg);
    let der = derived_series(alg);
    let (positive, negative, zero) = inertia(&killing_form(alg));
    Classification {
        is_nilpotent: lcs.reaches_zero(),
        is_solvable: der.reaches_zero(),
        is_perfect: lcs.length() == 0,
        nil_length: lcs.length(),
        sol_length: der.reaches_zero().then(|| der.length()),
        killing_rank: positive + negative,
        killing_signature: Signature { positive, negative, zero },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn h3() -> LieAlgebra {
        LieAlgebra::from_sparse("h3", &["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])]).unwrap()
    }

    fn l4() -> LieAlgebra {
        LieAlgebra::from_sparse("L4", &["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])])
            .unwrap()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_sparse(
            "sl2",
            &["X", "H", "Y"],
            &[(0, 1, &[(0, -2)]), (0, 2, &[(1, 1)]), (1, 2, &[(2, -2)])],
        )
        .unwrap()
    }

    fn aff1() -> LieAlgebra {
        LieAlgebra::from_sparse("aff1", &["e1", "e2"], &[(0, 1, &[(1, 1)])]).unwrap()
    }

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::canonicalize(idx.iter().map(|&i| crate::scalar::unit_vector(n, i)).collect(), n)
    }

    #[test]
    fn lower_central_examples() {
        let h = lower_central_series(&h3());
        assert_eq!(h.terms, vec![span(3, &[0, 1, 2]), span(3, &[2]), Subspace::zero(3)]);
        assert_eq!(h.length(), 2);

        let l = lower_central_series(&l4());
        assert_eq!(l.terms, vec![span(4, &[0, 1, 2, 3]), span(4, &[2, 3]), span(4, &[3]), Subspace::zero(4)]);
        assert_eq!(l.length(), 3);

        let s = lower_central_series(&sl2());
        assert_eq!(s.length(), 0);
        assert!(s.term(1).is_full());
    }

    #[test]
    fn derived_examples() {
        let h = derived_series(&h3());
        assert_eq!(h.terms, vec![span(3, &[0, 1, 2]), span(3, &[2]), Subspace::zero(3)]);
        let a = derived_series(&aff1());
        assert_eq!(a.terms, vec![span(2, &[0, 1]), span(2, &[1]), Subspace::zero(2)]);
        assert_eq!(lower_central_series(&aff1()).terminal(), &span(2, &[1]));
        let ab = derived_series(&LieAlgebra::abelian(2));
        assert_eq!(ab.length(), 1);
    }

    #[test]
    fn killing_examples() {
        let k = killing_form(&sl2());
        let expected: Vec<Vector> = [[0, 0, 4], [0, 8, 0], [4, 0, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(k, expected);
        assert!(killing_form(&h3()).iter().flatten().all(num_traits::Zero::is_zero));
        assert!(killing_form(&LieAlgebra::abelian(3)).iter().flatten().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn classify_examples() {
        let h = classify(&h3());
        assert!(h.is_nilpotent && h.is_solvable && !h.is_perfect);
        assert_eq!((h.nil_length, h.sol_length, h.killing_rank), (2, Some(2), 0));

        let s = classify(&sl2());
        assert!(!s.is_nilpotent && !s.is_solvable && s.is_perfect);
        assert_eq!(s.killing_rank, 3);
        assert_eq!(s.sol_length, None);
        assert!(s.is_semisimple() && !s.is_compact_type());

        let z = classify(&LieAlgebra::abelian(0));
        assert!(z.is_nilpotent);
        assert_eq!(z.nil_length, 0);
    }

    #[test]
    fn so3_is_compact_type() {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
        let so3 = LieAlgebra::from_sparse(
            "so3",
            &["e1", "e2", "e3"],
            &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])],
        )
        .unwrap();
        let c = classify(&so3);
        assert!(c.is_compact_type());
        assert_eq!(c.killing_signature.negative, 3);
    }
}
