//! Normalizer towers in nilpotent algebras, the non-normal chain
//! `𝔨 ⊊ 𝔥 ⊊ 𝔤` they produce, and the derived-length lower bound on the
//! order of `(𝔤, 𝔨)`.

use crate::algebra::{KleinPair, LieAlgebra};
use crate::error::{Error, Result};
use crate::filtration::{effectivity_radical, weisfeiler_filtration};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::{add_vectors, format_combination, is_zero_vector, Vector};
use crate::series::{derived_series_of, lower_central_series};
use crate::subspace::Subspace;

/// `N₀ = (a)`, `Nₖ₊₁ = N(Nₖ)`, ending at 𝔤, together with
/// `𝔨 = N_{k-2}` and `𝔥 = N_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerTower {
    pub seed: Vector,
    pub terms: Vec<Subspace>,
    pub k_sub: Subspace,
    pub h_sub: Subspace,
}

fn require_nilpotent(alg: &LieAlgebra) -> Result<()> {
    if lower_central_series(alg).reaches_zero() {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!("{} is not nilpotent", alg.name())))
    }
}

pub fn normalizer_tower(alg: &LieAlgebra, a: &[crate::scalar::Scalar]) -> Result<NormalizerTower> {
    if a.len() != alg.dim() {
        return Err(Error::Malformed(format!("seed of length {} in dimension {}", a.len(), alg.dim())));
    }
    require_nilpotent(alg)?;
    let line = Subspace::span_of(&[a.to_vec()], alg.dim());
    let seed_label = format_combination(a, alg.labels());
    if is_zero_vector(a) {
        return Err(Error::BadSeed("seed is zero".into()));
    }
    if alg.is_ideal(&line) {
        return Err(Error::BadSeed(format!("span({seed_label}) is an ideal")));
    }
    let mut terms = vec![line];
    while !terms.last().unwrap().is_full() {
        let current = terms.last().unwrap();
        let next = alg.transporter_unchecked(&alg.whole(), current, current);
        if &next == current {
            return Err(Error::NotApplicable(format!(
                "normalizer tower from {seed_label} stalls at {}",
                current.display(alg.labels())
            )));
        }
        terms.push(next);
    }
    let k = terms.len() - 1;
    let tower = NormalizerTower {
        seed: a.to_vec(),
        k_sub: terms[k - 2].clone(),
        h_sub: terms[k - 1].clone(),
        terms,
    };
    if let Some(failed) = check_chain(alg, &tower.k_sub, &tower.h_sub).records.iter().find(|r| r.status == Status::Fail) {
        return Err(Error::NotApplicable(format!("{} failed for seed {seed_label}", failed.check)));
    }
    Ok(tower)
}

/// Candidate seeds in scan order: basis vectors, then `eᵢ + eⱼ` for `i < j`.
fn seeds(alg: &LieAlgebra) -> impl Iterator<Item = Vector> + '_ {
    let n = alg.dim();
    let singles = (0..n).map(move |i| alg.basis_vector(i));
    let pairs = (0..n).flat_map(move |i| {
        (i + 1..n).map(move |j| add_vectors(&alg.basis_vector(i), &alg.basis_vector(j)))
    });
    singles.chain(pairs)
}

/// The first seed whose line is not an ideal, and its tower.
pub fn lemma8_pair(alg: &LieAlgebra) -> Result<NormalizerTower> {
    if alg.dim() < 2 || alg.brackets().is_empty() {
        return Err(Error::NotApplicable(format!("{} is abelian or has dimension < 2", alg.name())));
    }
    require_nilpotent(alg)?;
    let seed = seeds(alg)
        .find(|s| !alg.is_ideal(&Subspace::span_of(&[s.clone()], alg.dim())))
        .ok_or_else(|| Error::NotApplicable("every scanned line is an ideal".into()))?;
    normalizer_tower(alg, &seed)
}

/// The first scanned tower whose `𝔨` gives an effective pair `(𝔤, 𝔨)`.
pub fn effective_tower(alg: &LieAlgebra) -> Result<NormalizerTower> {
    lemma8_pair(alg)?;
    seeds(alg)
        .filter_map(|s| normalizer_tower(alg, &s).ok())
        .find(|t| effectivity_radical(&KleinPair::new(alg.clone(), t.k_sub.clone()).expect("normalizer terms are subalgebras")).is_zero())
        .ok_or_else(|| Error::NotApplicable(format!("no scanned tower of {} gives an effective pair", alg.name())))
}

/// The three normality conditions on `𝔨 ⊊ 𝔥 ⊊ 𝔤`, each by a transporter
/// solve and by a direct bracket-span inclusion.
pub fn check_chain(alg: &LieAlgebra, k: &Subspace, h: &Subspace) -> Report {
    let labels = alg.labels();
    let whole = alg.whole();
    let inputs = format!("k = {}, h = {}", k.display(labels), h.display(labels));
    let normal_in = |inner: &Subspace, outer: &Subspace| {
        let by_transporter = &alg.transporter_unchecked(outer, inner, inner) == outer;
        let by_span = alg.bracket_span_unchecked(outer, inner).is_subspace_of(inner);
        (by_transporter, by_span)
    };
    let mut report = Report::new();
    let proper = k.is_subspace_of(h) && k.dim() < h.dim() && h.dim() < alg.dim();
    report.push(CheckRecord::new(
        "proper-chain",
        inputs.clone(),
        format!("dims {} < {} < {}", k.dim(), h.dim(), alg.dim()),
        "k ⊊ h ⊊ g",
        Status::from_bool(proper),
    ));
    let (kt, ks) = normal_in(k, h);
    report.push(CheckRecord::new(
        "k-normal-in-h",
        inputs.clone(),
        format!("transporter {kt}, bracket span {ks}"),
        "true, true",
        Status::from_bool(kt && ks),
    ));
    let (ht, hs) = normal_in(h, &whole);
    report.push(CheckRecord::new(
        "h-normal-in-g",
        inputs.clone(),
        format!("transporter {ht}, bracket span {hs}"),
        "true, true",
        Status::from_bool(ht && hs),
    ));
    let (gt, gs) = normal_in(k, &whole);
    report.push(CheckRecord::new(
        "k-not-normal-in-g",
        inputs,
        format!("transporter {gt}, bracket span {gs}"),
        "false, false",
        Status::from_bool(!gt && !gs),
    ));
    report
}

/// Strictness of the tower plus [`check_chain`] on its output.
pub fn check_tower(alg: &LieAlgebra, tower: &NormalizerTower) -> Report {
    let labels = alg.labels();
    let strict = tower
        .terms
        .windows(2)
        .all(|w| w[0].is_subspace_of(&w[1]) && w[0].dim() < w[1].dim());
    let ends = tower.terms.last().is_some_and(Subspace::is_full) && tower.terms.len() >= 3;
    let mut report = Report::new();
    report.push(CheckRecord::new(
        "tower-strict",
        format!("{}; seed {}", alg.name(), format_combination(&tower.seed, labels)),
        tower.terms.iter().map(|t| t.display(labels).to_string()).collect::<Vec<_>>().join(" ⊊ "),
        "strictly increasing to g with k >= 2",
        Status::from_bool(strict && ends),
    ));
    report.extend(check_chain(alg, &tower.k_sub, &tower.h_sub));
    report
}

/// For nilpotent 𝔤 and a chain `𝔨 ⊊ 𝔥 ⊊ 𝔤` as produced by
/// [`lemma8_pair`] with `(𝔤, 𝔨)` effective: `𝔨⁽ⁱ⁾ ⊆ 𝔨ᵢ` at every index and
/// `order(𝔤, 𝔨) ≥ s(𝔨)`.
pub fn check_derived_lower_bound(alg: &LieAlgebra, k: &Subspace, h: &Subspace) -> Result<Report> {
    alg.check_sub(k)?;
    alg.check_sub(h)?;
    require_nilpotent(alg)?;
    let chain = check_chain(alg, k, h);
    if let Some(failed) = chain.records.iter().find(|r| r.status == Status::Fail) {
        return Err(Error::NotApplicable(format!("hypothesis {} does not hold", failed.check)));
    }
    let pair = KleinPair::new(alg.clone(), k.clone())?;
    let radical = effectivity_radical(&pair);
    if !radical.is_zero() {
        return Err(Error::NotEffective { radical });
    }
    let labels = alg.labels();
    let f = weisfeiler_filtration(&pair);
    let order = f.zero_index().expect("effective");
    let derived = derived_series_of(alg, k);
    let sol_length = derived.length();
    let inputs = format!("{}; k = {}", alg.name(), k.display(labels));
    let mut report = chain;
    for i in 0..=sol_length.max(order) {
        let d = derived.term(i);
        let fi = f.term(i);
        report.push(CheckRecord::new(
            "derived-inside-filtration",
            format!("{inputs}; i={i}"),
            format!("k^({i}) = {}", d.display(labels)),
            format!("inside k_{i} = {}", fi.display(labels)),
            Status::from_bool(d.is_subspace_of(fi)),
        ));
    }
    report.push(CheckRecord::new(
        "order-bounds-derived-length",
        inputs,
        format!("order {order}, derived length {sol_length}"),
        format!("order >= {sol_length}"),
        Status::from_bool(order >= sol_length),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::unit_vector;

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::canonicalize(idx.iter().map(|&i| unit_vector(n, i)).collect(), n)
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::from_sparse("h3", &["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])]).unwrap()
    }

    fn l4() -> LieAlgebra {
        LieAlgebra::from_sparse("L4", &["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])])
            .unwrap()
    }

    #[test]
    fn l4_tower_from_e2() {
        let t = normalizer_tower(&l4(), &unit_vector(4, 1)).unwrap();
        assert_eq!(t.terms, vec![span(4, &[1]), span(4, &[1, 2, 3]), span(4, &[0, 1, 2, 3])]);
        assert_eq!((t.k_sub.clone(), t.h_sub.clone()), (span(4, &[1]), span(4, &[1, 2, 3])));
        assert!(!check_tower(&l4(), &t).has_failures());
    }

    #[test]
    fn h3_tower_from_e1() {
        let t = normalizer_tower(&h3(), &unit_vector(3, 0)).unwrap();
        assert_eq!(t.terms, vec![span(3, &[0]), span(3, &[0, 2]), span(3, &[0, 1, 2])]);
    }

    #[test]
    fn center_seed_is_rejected() {
        assert!(matches!(normalizer_tower(&h3(), &unit_vector(3, 2)), Err(Error::BadSeed(_))));
    }

    #[test]
    fn first_tower_on_l4_uses_e1() {
        let t = lemma8_pair(&l4()).unwrap();
        assert_eq!(t.seed, unit_vector(4, 0));
        assert_eq!(t.terms[1], span(4, &[0, 3]));
        assert_eq!(t.k_sub, span(4, &[0, 3]));
        assert_eq!(t.h_sub, span(4, &[0, 2, 3]));
    }

    #[test]
    fn tower_pair_rejects_abelian() {
        assert!(matches!(lemma8_pair(&LieAlgebra::abelian(3)), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn derived_bound_on_h3() {
        let t = lemma8_pair(&h3()).unwrap();
        let rep = check_derived_lower_bound(&h3(), &t.k_sub, &t.h_sub).unwrap();
        assert!(!rep.has_failures(), "{}", rep.to_text());
        assert_eq!(rep.find("order-bounds-derived-length").unwrap().computed, "order 1, derived length 1");
    }

    #[test]
    fn derived_bound_rejects_normal_k() {
        // span(e3) is normal in h3, violating the hypotheses.
        let err = check_derived_lower_bound(&h3(), &span(3, &[2]), &span(3, &[0, 2])).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn derived_bound_on_first_l4_tower_is_not_effective() {
        let t = lemma8_pair(&l4()).unwrap();
        let err = check_derived_lower_bound(&l4(), &t.k_sub, &t.h_sub).unwrap_err();
        match err {
            Error::NotEffective { radical } => assert_eq!(radical, span(4, &[3])),
            other => panic!("{other:?}"),
        }
    }
}
