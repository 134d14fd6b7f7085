use std::collections::BTreeMap;

use crate::algebra::{KleinPair, LieAlgebra};
use crate::error::{Error, Result};
use crate::filtration::{effectivity_radical, weisfeiler_filtration};
use crate::jets::field::{jet_of, vf_bracket, PolyVectorField};
use crate::jets::polynomial::Exponents;
use crate::linalg::{nullspace, rank, solve};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::{Scalar, Vector};
use crate::subspace::Subspace;

/// Finitely many polynomial vector fields spanning a Lie algebra of fields,
/// observed at a base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionFamily {
    num_vars: usize,
    generators: Vec<PolyVectorField>,
    base_point: Vector,
}

impl ActionFamily {
    /// Checks shapes only; independence and closure are checked by the
    /// operations that need them.
    pub fn new(num_vars: usize, generators: Vec<PolyVectorField>, base_point: Vector) -> Result<Self> {
        if base_point.len() != num_vars {
            return Err(Error::Malformed(format!(
                "base point has {} coordinates, expected {num_vars}",
                base_point.len()
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::Malformed(format!(
                "generator on a space of dimension {}, expected {num_vars}",
                g.num_vars()
            )));
        }
        Ok(ActionFamily { num_vars, generators, base_point })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[PolyVectorField] {
        &self.generators
    }

    pub fn base_point(&self) -> &Vector {
        &self.base_point
    }

    pub fn with_base_point(&self, base_point: Vector) -> Result<Self> {
        Self::new(self.num_vars, self.generators.clone(), base_point)
    }

    pub fn labels(&self) -> Vec<String> {
        crate::scalar::default_labels(self.generators.len())
            .into_iter()
            .map(|s| s.replacen('e', "v", 1))
            .collect()
    }

    /// Generators as coefficient columns over the monomials they use.
    fn coefficient_matrix(&self) -> (Vec<(usize, Exponents)>, Vec<Vector>) {
        let mut keys: Vec<(usize, Exponents)> = self
            .generators
            .iter()
            .flat_map(|g| {
                g.components()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, p)| p.terms().keys().map(move |e| (i, e.clone())))
            })
            .collect();
        keys.sort();
        keys.dedup();
        let rows = keys
            .iter()
            .map(|(i, e)| self.generators.iter().map(|g| g.components()[*i].coefficient(e)).collect())
            .collect();
        (keys, rows)
    }

    pub fn is_independent(&self) -> bool {
        let (_, rows) = self.coefficient_matrix();
        rank(rows, self.generators.len()) == self.generators.len()
    }

    /// Coordinates of `field` in the generator basis, if it lies in the span.
    pub fn expand(&self, field: &PolyVectorField) -> Option<Vector> {
        let (keys, rows) = self.coefficient_matrix();
        let outside = field.components().iter().enumerate().any(|(i, p)| {
            p.terms().keys().any(|e| keys.binary_search(&(i, e.clone())).is_err())
        });
        if outside {
            return None;
        }
        let rhs: Vec<Scalar> = keys.iter().map(|(i, e)| field.components()[*i].coefficient(e)).collect();
        solve(&rows, self.generators.len(), &rhs)
    }

    /// Expansion of every bracket `[vᵢ, vⱼ]`, `i < j`, or the first pair
    /// whose bracket leaves the span.
    pub fn bracket_table(&self) -> Result<BTreeMap<(usize, usize), Vector>> {
        let m = self.generators.len();
        let mut table = BTreeMap::new();
        for i in 0..m {
            for j in i + 1..m {
                let b = vf_bracket(&self.generators[i], &self.generators[j])?;
                let coords = self.expand(&b).ok_or(Error::NotClosed { i, j })?;
                table.insert((i, j), coords);
            }
        }
        Ok(table)
    }

    /// Values of the generators at the base point span the tangent space.
    pub fn is_transitive(&self) -> bool {
        let values: Vec<Vector> = self.generators.iter().map(|g| g.eval(&self.base_point)).collect();
        rank(values, self.num_vars) == self.num_vars
    }
}

pub fn check_transitivity(fam: &ActionFamily) -> bool {
    fam.is_transitive()
}

/// The abstract algebra of the family, with basis `v₁..vₘ` the generators.
/// Returns the algebra and the bracket expansion table it was built from.
pub fn structure_constants_from_fields(
    fam: &ActionFamily,
) -> Result<(LieAlgebra, BTreeMap<(usize, usize), Vector>)> {
    if !fam.is_independent() {
        return Err(Error::Malformed("generators are linearly dependent".into()));
    }
    let table = fam.bracket_table()?;
    let alg = LieAlgebra::new("fields", fam.labels(), table.clone())?;
    Ok((alg, table))
}

/// Kernels of the k-jet maps at the base point, `k = 0, 1, …`, as subspaces
/// of the coefficient space ℚᵐ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetFiltration {
    /// `terms[k]` is the subspace of combinations whose k-jet vanishes.
    pub terms: Vec<Subspace>,
    /// Smallest `r` with a zero kernel, if reached by `k_max`.
    pub r: Option<usize>,
    pub k_max: usize,
}

impl JetFiltration {
    /// Kernel at order `k`; zero past `r`.
    pub fn term(&self, k: usize) -> Option<Subspace> {
        match self.terms.get(k) {
            Some(t) => Some(t.clone()),
            None if self.r.is_some() => Some(Subspace::zero(self.terms[0].ambient_dim())),
            None => None,
        }
    }
}

pub fn default_k_max(fam: &ActionFamily) -> usize {
    2 * fam.generators().len()
}

pub fn jet_filtration(fam: &ActionFamily, k_max: usize) -> Result<JetFiltration> {
    fam.bracket_table()?;
    let m = fam.generators().len();
    let mut terms = Vec::new();
    let mut r = None;
    for k in 0..=k_max {
        let jets = fam
            .generators()
            .iter()
            .map(|g| jet_of(g, fam.base_point(), k as u32).map(|j| j.coefficients))
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<Vector> = (0..jets.first().map_or(0, Vec::len))
            .map(|c| jets.iter().map(|j| j[c].clone()).collect())
            .collect();
        let kernel = Subspace::canonicalize(nullspace(rows, m), m);
        let done = kernel.is_zero();
        terms.push(kernel);
        if done {
            r = Some(k);
            break;
        }
    }
    Ok(JetFiltration { terms, r, k_max })
}

/// The abstract pair of a transitive family: its algebra with the stabilizer
/// `{σ : σ(a) = 0}`.
pub fn abstract_pair(fam: &ActionFamily) -> Result<KleinPair> {
    let (alg, _) = structure_constants_from_fields(fam)?;
    let stabilizer = jet_filtration(fam, 0)?.terms.swap_remove(0);
    KleinPair::new(alg, stabilizer)
}

/// Index-by-index comparison of the jet kernels with the Weisfeiler
/// filtration of the abstract pair.
pub fn check_jet_agreement(fam: &ActionFamily, k_max: usize) -> Result<Report> {
    let (alg, _) = structure_constants_from_fields(fam)?;
    if !fam.is_transitive() {
        return Err(Error::NotApplicable("family is not transitive at the base point".into()));
    }
    let jets = jet_filtration(fam, k_max)?;
    let pair = KleinPair::new(alg, jets.terms[0].clone())?;
    let labels = pair.algebra().labels().to_vec();
    let weis = weisfeiler_filtration(&pair);
    let point = fam.base_point().iter().map(crate::scalar::format_scalar).collect::<Vec<_>>().join(", ");
    let inputs = format!("base point ({point})");
    let mut report = Report::new();

    let radical = effectivity_radical(&pair);
    report.push(CheckRecord::new(
        "abstract-pair-effective",
        inputs.clone(),
        format!("radical {}", radical.display(&labels)),
        "0",
        Status::from_bool(radical.is_zero()),
    ));

    let last = match jets.r {
        Some(r) => r.max(weis.stabilization_index()),
        None => k_max,
    };
    for k in 0..=last {
        let w = weis.term(k);
        let status;
        let computed = match jets.term(k) {
            Some(j) => {
                status = Status::from_bool(&j == w);
                format!("jet kernel {}", j.display(&labels))
            }
            None => {
                status = Status::Fail;
                "jet kernel not computed".to_string()
            }
        };
        report.push(CheckRecord::new(
            "jet-equals-weisfeiler",
            format!("{inputs}; k={k}"),
            computed,
            format!("F{k} = {}", w.display(&labels)),
            status,
        ));
    }
    let (computed, status) = match jets.r {
        Some(r) => (format!("r = {r}"), Status::from_bool(Some(r) == weis.zero_index())),
        None => (format!("not stabilized by k_max = {k_max}"), Status::Fail),
    };
    report.push(CheckRecord::new(
        "jet-order",
        inputs,
        computed,
        match weis.zero_index() {
            Some(r) => format!("order {r}"),
            None => "order undefined".to_string(),
        },
        status,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::polynomial::Polynomial;
    use crate::scalar::{int, unit_vector};

    fn xk(k: u32) -> PolyVectorField {
        PolyVectorField::along(Polynomial::monomial(1, int(1), vec![k]), 0)
    }

    fn sl2_line(a: i64) -> ActionFamily {
        ActionFamily::new(1, vec![xk(0), xk(1), xk(2)], vec![int(a)]).unwrap()
    }

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::canonicalize(idx.iter().map(|&i| unit_vector(n, i)).collect(), n)
    }

    #[test]
    fn sl2_line_structure_constants() {
        let (alg, _) = structure_constants_from_fields(&sl2_line(0)).unwrap();
        assert_eq!(alg.basis_bracket(0, 1), unit_vector(3, 0));
        assert_eq!(alg.basis_bracket(0, 2), vec![int(0), int(2), int(0)]);
        assert_eq!(alg.basis_bracket(1, 2), unit_vector(3, 2));
        assert!(crate::algebra::validate_algebra(&alg).ok);
    }

    #[test]
    fn sl2_line_jets_at_zero() {
        let j = jet_filtration(&sl2_line(0), 6).unwrap();
        assert_eq!(j.terms, vec![span(3, &[1, 2]), span(3, &[2]), Subspace::zero(3)]);
        assert_eq!(j.r, Some(2));
    }

    #[test]
    fn sl2_line_jets_at_one() {
        let j = jet_filtration(&sl2_line(1), 6).unwrap();
        let quad = Subspace::span_of(&[vec![int(1), int(-2), int(1)]], 3);
        assert_eq!(j.terms[1], quad);
        assert_eq!(j.r, Some(2));
    }

    #[test]
    fn not_closed_family() {
        let fam = ActionFamily::new(1, vec![xk(0), xk(3)], vec![int(0)]).unwrap();
        assert!(matches!(jet_filtration(&fam, 4), Err(Error::NotClosed { i: 0, j: 1 })));
    }

    #[test]
    fn not_stabilized_is_reported() {
        let fam = ActionFamily::new(1, vec![xk(0), xk(1), xk(2)], vec![int(0)]).unwrap();
        let j = jet_filtration(&fam, 1).unwrap();
        assert_eq!(j.r, None);
        assert_eq!(j.term(5), None);
    }

    #[test]
    fn transitivity() {
        assert!(check_transitivity(&sl2_line(0)));
        let fam = ActionFamily::new(1, vec![xk(1)], vec![int(0)]).unwrap();
        assert!(!check_transitivity(&fam));
    }

    #[test]
    fn agreement_on_sl2_line() {
        let rep = check_jet_agreement(&sl2_line(0), 6).unwrap();
        assert!(!rep.has_failures(), "{}", rep.to_text());
    }
}
