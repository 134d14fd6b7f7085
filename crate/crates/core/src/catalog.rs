//! Built-in algebras, pairs and vector-field actions.

use crate::algebra::{KleinPair, LieAlgebra};
use crate::error::{Error, Result};
use crate::jets::{ActionFamily, Polynomial, PolyVectorField};
use crate::scalar::{int, unit_vector, zero_vector, Vector};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Algebra(LieAlgebra),
    Pair(KleinPair),
    Action(ActionFamily),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub key: String,
    pub params: Vec<i64>,
    pub payload: Payload,
    pub provenance: String,
    /// Documented effectiveness, for pairs.
    pub effective: Option<bool>,
    /// Documented transitivity at the base point, for actions.
    pub transitive: Option<bool>,
}

impl CatalogEntry {
    pub fn algebra(&self) -> &LieAlgebra {
        match &self.payload {
            Payload::Algebra(a) => a,
            Payload::Pair(p) => p.algebra(),
            Payload::Action(_) => panic!("{} is an action family", self.key),
        }
    }
}

/// One catalog key with its parameter ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogInfo {
    pub key: &'static str,
    pub params: &'static str,
    pub description: &'static str,
    /// Parameter lists that exercise the whole documented range.
    pub samples: Vec<Vec<i64>>,
}

fn range(lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (lo..=hi).map(|n| vec![n]).collect()
}

pub fn catalog_list() -> Vec<CatalogInfo> {
    let info = |key, params, description, samples| CatalogInfo { key, params, description, samples };
    vec![
        info("heisenberg", "dim in {3,5,7}", "Heisenberg algebra [x_i, y_i] = z", vec![vec![3], vec![5], vec![7]]),
        info("filiform", "n in 3..8", "filiform L_n: [e1, e_i] = e_(i+1) for 2 <= i <= n-1", range(3, 8)),
        info("sl2", "", "sl(2) with basis X, H, Y", vec![vec![]]),
        info("aff1", "", "affine algebra of the line: [e1, e2] = e2", vec![vec![]]),
        info("sa2", "", "sl(2) ⋉ Q^2 with the standard representation", vec![vec![]]),
        info("strictly_upper", "n in 2..5", "strictly upper triangular n x n matrices", range(2, 5)),
        info("abelian", "n in 0..8", "abelian algebra of dimension n", range(0, 8)),
        info("gl", "n in 1..3", "all n x n matrices", range(1, 3)),
        info("so3", "", "so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2", vec![vec![]]),
        info("sl2_borel", "", "pair (sl2, span(H, Y)); effective, order 2", vec![vec![]]),
        info("h3_e1", "", "pair (h3, span(e1)); effective, order 1", vec![vec![]]),
        info("h3_center", "", "pair (h3, span(e3)); not effective", vec![vec![]]),
        info("aff1_e1", "", "pair (aff1, span(e1)); effective, order 1", vec![vec![]]),
        info("sa2_sl2", "", "pair (sa2, sl2); effective, order 1", vec![vec![]]),
        info(
            "filiform_pairs",
            "n in 3..8, s in 1..n",
            "pair (L_n, span(e_s)); effective unless s = n",
            (3..=8).flat_map(|n| (1..=n).map(move |s| vec![n, s])).collect(),
        ),
        info("sl2_line", "a (base point, default 0)", "{d/dx, x d/dx, x^2 d/dx} on the line", vec![vec![], vec![0], vec![1], vec![-2]]),
        info("affine_line", "a (base point, default 0)", "{d/dx, x d/dx} on the line", vec![vec![], vec![0], vec![3]]),
        info("translations", "n in 1..4", "{d/dx1, ..., d/dxn} at the origin", range(1, 4)),
    ]
}

fn keys_hint() -> String {
    catalog_list().iter().map(|i| i.key).collect::<Vec<_>>().join(", ")
}

fn param(params: &[i64], idx: usize, key: &str, lo: i64, hi: i64) -> Result<i64> {
    let p = *params
        .get(idx)
        .ok_or_else(|| Error::Catalog(format!("{key} needs parameter {} (range {lo}..{hi})", idx + 1)))?;
    if p < lo || p > hi {
        return Err(Error::Catalog(format!("{key}: parameter {p} outside {lo}..{hi}")));
    }
    Ok(p)
}

fn no_params(key: &str, params: &[i64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::Catalog(format!("{key} takes no parameters")))
    }
}

fn labels(names: impl IntoIterator<Item = String>) -> Vec<String> {
    names.into_iter().collect()
}

pub fn heisenberg(dim: usize) -> Result<LieAlgebra> {
    if dim % 2 == 0 || !(3..=7).contains(&dim) {
        return Err(Error::Catalog(format!("heisenberg dimension {dim} not in {{3,5,7}}")));
    }
    let m = (dim - 1) / 2;
    let names = if m == 1 {
        labels(["e1", "e2", "e3"].map(String::from))
    } else {
        labels(
            (1..=m)
                .map(|i| format!("x{i}"))
                .chain((1..=m).map(|i| format!("y{i}")))
                .chain(std::iter::once("z".to_string())),
        )
    };
    let brackets = (0..m).map(|i| ((i, m + i), unit_vector(dim, dim - 1))).collect::<Vec<_>>();
    LieAlgebra::new(format!("heisenberg({dim})"), names, brackets)
}

pub fn filiform(n: usize) -> Result<LieAlgebra> {
    if !(3..=8).contains(&n) {
        return Err(Error::Catalog(format!("filiform dimension {n} not in 3..8")));
    }
    let brackets = (1..n - 1).map(|i| ((0, i), unit_vector(n, i + 1))).collect::<Vec<_>>();
    LieAlgebra::new(format!("filiform({n})"), crate::scalar::default_labels(n), brackets)
}

pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_sparse(
        "sl2",
        &["X", "H", "Y"],
        &[(0, 1, &[(0, -2)]), (0, 2, &[(1, 1)]), (1, 2, &[(2, -2)])],
    )
    .expect("static table")
}

pub fn aff1() -> LieAlgebra {
    LieAlgebra::from_sparse("aff1", &["e1", "e2"], &[(0, 1, &[(1, 1)])]).expect("static table")
}

/// `sl₂ ⋉ ℚ²` with `X p₂ = p₁`, `H pᵢ = ±pᵢ`, `Y p₁ = p₂`.
pub fn sa2() -> LieAlgebra {
    LieAlgebra::from_sparse(
        "sa2",
        &["X", "H", "Y", "p1", "p2"],
        &[
            (0, 1, &[(0, -2)]),
            (0, 2, &[(1, 1)]),
            (1, 2, &[(2, -2)]),
            (0, 4, &[(3, 1)]),
            (1, 3, &[(3, 1)]),
            (1, 4, &[(4, -1)]),
            (2, 3, &[(4, 1)]),
        ],
    )
    .expect("static table")
}

pub fn so3() -> LieAlgebra {
    LieAlgebra::from_sparse(
        "so3",
        &["e1", "e2", "e3"],
        &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])],
    )
    .expect("static table")
}

/// Matrix units `E_ab` for `(a, b)` accepted by `keep`, bracket
/// `[E_ab, E_cd] = δ_bc E_ad − δ_da E_cb`.
fn matrix_algebra(name: String, n: usize, keep: impl Fn(usize, usize) -> bool) -> Result<LieAlgebra> {
    let units: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| keep(a, b)).collect();
    let dim = units.len();
    let index = |u: (usize, usize)| units.iter().position(|&v| v == u);
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let ((a, b), (c, d)) = (units[i], units[j]);
            let mut v: Vector = zero_vector(dim);
            if b == c {
                v[index((a, d)).expect("closed under products")] += int(1);
            }
            if d == a {
                v[index((c, b)).expect("closed under products")] -= int(1);
            }
            brackets.push(((i, j), v));
        }
    }
    let names = units.iter().map(|&(a, b)| format!("E{}{}", a + 1, b + 1)).collect();
    LieAlgebra::new(name, names, brackets)
}

pub fn strictly_upper(n: usize) -> Result<LieAlgebra> {
    if !(2..=5).contains(&n) {
        return Err(Error::Catalog(format!("strictly_upper size {n} not in 2..5")));
    }
    matrix_algebra(format!("strictly_upper({n})"), n, |a, b| a < b)
}

pub fn gl(n: usize) -> Result<LieAlgebra> {
    if !(1..=3).contains(&n) {
        return Err(Error::Catalog(format!("gl size {n} not in 1..3")));
    }
    matrix_algebra(format!("gl({n})"), n, |_, _| true)
}

fn coord_span(n: usize, idx: &[usize]) -> Subspace {
    Subspace::canonicalize(idx.iter().map(|&i| unit_vector(n, i)).collect(), n)
}

fn monomial_field(k: u32) -> PolyVectorField {
    PolyVectorField::along(Polynomial::monomial(1, int(1), vec![k]), 0)
}

pub fn sl2_line(a: i64) -> ActionFamily {
    ActionFamily::new(1, (0..3).map(monomial_field).collect(), vec![int(a)]).expect("static family")
}

pub fn affine_line(a: i64) -> ActionFamily {
    ActionFamily::new(1, (0..2).map(monomial_field).collect(), vec![int(a)]).expect("static family")
}

pub fn translations(n: usize) -> ActionFamily {
    ActionFamily::new(n, (0..n).map(|i| PolyVectorField::coordinate(n, i)).collect(), zero_vector(n))
        .expect("static family")
}

pub fn catalog_get(key: &str, params: &[i64]) -> Result<CatalogEntry> {
    let entry = |payload, provenance: &str, effective, transitive| CatalogEntry {
        key: key.to_string(),
        params: params.to_vec(),
        payload,
        provenance: provenance.to_string(),
        effective,
        transitive,
    };
    let alg = |a: LieAlgebra, provenance: &str| entry(Payload::Algebra(a), provenance, None, None);
    let pair = |a: LieAlgebra, s: Subspace, provenance: &str, effective: bool| -> Result<CatalogEntry> {
        Ok(entry(Payload::Pair(KleinPair::new(a, s)?), provenance, Some(effective), None))
    };
    let action = |f: ActionFamily, provenance: &str| entry(Payload::Action(f), provenance, None, Some(true));
    let base_point = |params: &[i64]| -> Result<i64> {
        match params {
            [] => Ok(0),
            [a] => Ok(*a),
            _ => Err(Error::Catalog(format!("{key} takes at most one parameter"))),
        }
    };
    Ok(match key {
        "heisenberg" => alg(heisenberg(param(params, 0, key, 3, 7)? as usize)?, "Heisenberg algebra, 2-step nilpotent"),
        "filiform" => alg(filiform(param(params, 0, key, 3, 8)? as usize)?, "filiform, nil-length n-1"),
        "sl2" => {
            no_params(key, params)?;
            alg(sl2(), "simple; Killing form has rank 3")
        }
        "aff1" => {
            no_params(key, params)?;
            alg(aff1(), "solvable, not nilpotent")
        }
        "sa2" => {
            no_params(key, params)?;
            alg(sa2(), "special affine algebra of the plane")
        }
        "so3" => {
            no_params(key, params)?;
            alg(so3(), "compact simple; Killing form negative definite")
        }
        "strictly_upper" => alg(strictly_upper(param(params, 0, key, 2, 5)? as usize)?, "nilpotent matrix algebra"),
        "abelian" => alg(LieAlgebra::abelian(param(params, 0, key, 0, 8)? as usize), "abelian"),
        "gl" => alg(gl(param(params, 0, key, 1, 3)? as usize)?, "reductive matrix algebra"),
        "sl2_borel" => {
            no_params(key, params)?;
            pair(sl2(), coord_span(3, &[1, 2]), "projective line; effective, order 2", true)?
        }
        "h3_e1" => {
            no_params(key, params)?;
            pair(heisenberg(3)?, coord_span(3, &[0]), "effective, order 1", true)?
        }
        "h3_center" => {
            no_params(key, params)?;
            pair(heisenberg(3)?, coord_span(3, &[2]), "stabilizer is the center; not effective", false)?
        }
        "aff1_e1" => {
            no_params(key, params)?;
            pair(aff1(), coord_span(2, &[0]), "affine line; effective, order 1", true)?
        }
        "sa2_sl2" => {
            no_params(key, params)?;
            pair(sa2(), coord_span(5, &[0, 1, 2]), "affine plane; effective, order 1", true)?
        }
        "filiform_pairs" => {
            let n = param(params, 0, key, 3, 8)? as usize;
            let s = param(params, 1, key, 1, n as i64)? as usize;
            if params.len() > 2 {
                return Err(Error::Catalog(format!("{key} takes two parameters")));
            }
            let effective = s != n;
            let note = if effective { "effective" } else { "stabilizer is the center; not effective" };
            pair(filiform(n)?, coord_span(n, &[s - 1]), note, effective)?
        }
        "sl2_line" => action(sl2_line(base_point(params)?), "projective action on the line; transitive"),
        "affine_line" => action(affine_line(base_point(params)?), "affine action on the line; transitive"),
        "translations" => {
            let n = param(params, 0, key, 1, 4)? as usize;
            action(translations(n), "simply transitive")
        }
        _ => return Err(Error::Catalog(format!("unknown key {key:?}; available: {}", keys_hint()))),
    })
}
