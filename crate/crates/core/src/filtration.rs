//! The Weisfeiler filtration of a pair, its effectivity radical, and the
//! order.

use crate::algebra::KleinPair;
use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// A descending chain `F₋₁ ⊇ F₀ ⊇ F₁ ⊇ …` stored up to its first repeat.
///
/// `terms[k]` is `Fₖ` for `k ≥ 0`; every index past the end equals the
/// last stored term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ambient: Subspace,
    terms: Vec<Subspace>,
}

impl Filtration {
    pub(crate) fn from_terms(ambient: Subspace, terms: Vec<Subspace>) -> Self {
        assert!(!terms.is_empty());
        Filtration { ambient, terms }
    }

    /// `F₋₁`, the whole algebra.
    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    /// First `k` with `Fₖ = Fₖ₊₁`.
    pub fn stabilization_index(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terminal(&self) -> &Subspace {
        self.terms.last().unwrap()
    }

    pub fn term(&self, k: usize) -> &Subspace {
        self.terms.get(k).unwrap_or_else(|| self.terminal())
    }

    /// `Fₖ` for `k ≥ -1`.
    pub fn level(&self, k: isize) -> &Subspace {
        match k {
            -1 => &self.ambient,
            k if k >= 0 => self.term(k as usize),
            _ => panic!("filtration level {k} below -1"),
        }
    }

    /// Smallest `r` with `Fᵣ = 0`, if the chain reaches zero.
    pub fn zero_index(&self) -> Option<usize> {
        self.terminal().is_zero().then(|| self.stabilization_index())
    }
}

/// `F₀ = 𝔤₀`, `Fₖ₊₁ = {x ∈ Fₖ : [x, 𝔤] ⊆ Fₖ}`, iterated until stable.
pub fn weisfeiler_filtration(pair: &KleinPair) -> Filtration {
    let alg = pair.algebra();
    let whole = alg.whole();
    let mut terms = vec![pair.stabilizer().clone()];
    loop {
        let current = terms.last().unwrap();
        let next = alg.transporter_unchecked(current, &whole, current);
        if &next == current {
            break;
        }
        terms.push(next);
    }
    Filtration::from_terms(whole, terms)
}

/// Largest ideal of 𝔤 contained in the stabilizer.
///
/// Computed on the dual side: the annihilator of the stabilizer is closed
/// up under `f ↦ f ∘ ad(eᵢ)` and the result is the annihilator of that
/// invariant subspace of functionals. This shares no code path with
/// [`weisfeiler_filtration`].
pub fn effectivity_radical(pair: &KleinPair) -> Subspace {
    let alg = pair.algebra();
    let n = alg.dim();
    let ads: Vec<_> = (0..n).map(|i| alg.ad_matrix(&alg.basis_vector(i))).collect();
    let mut functionals = pair.stabilizer().annihilator();
    loop {
        let mut gens = functionals.basis().to_vec();
        for f in functionals.basis() {
            for ad in &ads {
                // (f ∘ ad)_l = Σ_k f_k ad[k][l]
                let g = (0..n)
                    .map(|l| (0..n).map(|k| &f[k] * &ad[k][l]).sum())
                    .collect();
                gens.push(g);
            }
        }
        let next = Subspace::canonicalize(gens, n);
        if next == functionals {
            break;
        }
        functionals = next;
    }
    functionals.annihilator()
}

pub fn is_effective(pair: &KleinPair) -> bool {
    effectivity_radical(pair).is_zero()
}

/// Smallest `r` with `Fᵣ = 0`. Fails with the radical for non-effective pairs.
pub fn order(pair: &KleinPair) -> Result<usize> {
    let radical = effectivity_radical(pair);
    if !radical.is_zero() {
        return Err(Error::NotEffective { radical });
    }
    let filtration = weisfeiler_filtration(pair);
    Ok(filtration.zero_index().expect("effective pairs filter down to zero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra;
    use crate::scalar::unit_vector;

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::canonicalize(idx.iter().map(|&i| unit_vector(n, i)).collect(), n)
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::from_sparse("h3", &["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])]).unwrap()
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

    #[test]
    fn sl2_borel_filtration() {
        let pair = KleinPair::new(sl2(), span(3, &[1, 2])).unwrap();
        let f = weisfeiler_filtration(&pair);
        assert_eq!(f.terms(), &[span(3, &[1, 2]), span(3, &[2]), Subspace::zero(3)]);
        assert!(f.level(-1).is_full());
        assert_eq!(f.stabilization_index(), 2);
        assert_eq!(order(&pair).unwrap(), 2);
        assert!(effectivity_radical(&pair).is_zero());
    }

    #[test]
    fn center_stabilizer_is_not_effective() {
        let pair = KleinPair::new(h3(), span(3, &[2])).unwrap();
        let f = weisfeiler_filtration(&pair);
        assert_eq!(f.terminal(), &span(3, &[2]));
        assert_eq!(f.stabilization_index(), 0);
        assert_eq!(effectivity_radical(&pair), span(3, &[2]));
        match order(&pair) {
            Err(Error::NotEffective { radical }) => assert_eq!(radical, span(3, &[2])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_stabilizer_has_order_zero() {
        let pair = KleinPair::new(sl2(), Subspace::zero(3)).unwrap();
        let f = weisfeiler_filtration(&pair);
        assert_eq!(f.terms(), &[Subspace::zero(3)]);
        assert_eq!(order(&pair).unwrap(), 0);
    }

    #[test]
    fn order_one_examples() {
        let h = KleinPair::new(h3(), span(3, &[0])).unwrap();
        assert!(effectivity_radical(&h).is_zero());
        assert_eq!(order(&h).unwrap(), 1);
        let a = KleinPair::new(aff1(), span(2, &[0])).unwrap();
        assert_eq!(order(&a).unwrap(), 1);
    }

    #[test]
    fn whole_algebra_stabilizer() {
        let pair = KleinPair::new(h3(), span(3, &[0, 1, 2])).unwrap();
        assert!(effectivity_radical(&pair).is_full());
        assert!(weisfeiler_filtration(&pair).terminal().is_full());
    }
}
