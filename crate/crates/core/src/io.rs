//! JSON file formats for algebras, pairs and vector-field actions.
//!
//! Rationals are written as strings, `"n"` or `"p/q"`. Unknown fields are
//! rejected. Emitted subspaces are always in canonical form.

use serde::{Deserialize, Serialize};

use crate::algebra::{KleinPair, LieAlgebra};
use crate::error::{Error, Result};
use crate::jets::{ActionFamily, PolyVectorField, Polynomial};
use crate::scalar::{format_scalar, parse_scalar, Vector};
use crate::subspace::Subspace;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    v: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    name: String,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketEntry>,
    stabilizer: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermEntry {
    coef: String,
    exps: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    vars: usize,
    point: Vec<String>,
    fields: Vec<Vec<Vec<TermEntry>>>,
}

fn parse_vector(v: &[String], dim: usize, what: &str) -> Result<Vector> {
    if v.len() != dim {
        return Err(Error::Malformed(format!("{what} has {} entries, expected {dim}", v.len())));
    }
    v.iter().map(|s| parse_scalar(s)).collect()
}

fn format_vector(v: &[crate::scalar::Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn build_algebra(name: String, dim: usize, basis: Vec<String>, brackets: Vec<BracketEntry>) -> Result<LieAlgebra> {
    if basis.len() != dim {
        return Err(Error::Malformed(format!("basis has {} labels, dim is {dim}", basis.len())));
    }
    let table = brackets
        .into_iter()
        .map(|b| Ok(((b.i, b.j), parse_vector(&b.v, dim, &format!("bracket ({}, {})", b.i, b.j))?)))
        .collect::<Result<Vec<_>>>()?;
    LieAlgebra::new(name, basis, table)
}

fn bracket_entries(alg: &LieAlgebra) -> Vec<BracketEntry> {
    alg.brackets()
        .iter()
        .map(|(&(i, j), v)| BracketEntry { i, j, v: format_vector(v) })
        .collect()
}

pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    let f: AlgebraFile = serde_json::from_str(text)?;
    build_algebra(f.name, f.dim, f.basis, f.brackets)
}

pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    let f = AlgebraFile {
        name: alg.name().to_string(),
        dim: alg.dim(),
        basis: alg.labels().to_vec(),
        brackets: bracket_entries(alg),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("serializes");
    s.push('\n');
    s
}

pub fn pair_from_json(text: &str) -> Result<KleinPair> {
    let f: PairFile = serde_json::from_str(text)?;
    let alg = build_algebra(f.name, f.dim, f.basis, f.brackets)?;
    let rows = f
        .stabilizer
        .iter()
        .map(|r| parse_vector(r, alg.dim(), "stabilizer row"))
        .collect::<Result<Vec<_>>>()?;
    let stab = Subspace::try_canonicalize(rows, alg.dim())?;
    KleinPair::new(alg, stab)
}

pub fn pair_to_json(pair: &KleinPair) -> String {
    let alg = pair.algebra();
    let f = PairFile {
        name: alg.name().to_string(),
        dim: alg.dim(),
        basis: alg.labels().to_vec(),
        brackets: bracket_entries(alg),
        stabilizer: pair.stabilizer().basis().iter().map(|r| format_vector(r)).collect(),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("serializes");
    s.push('\n');
    s
}

pub fn action_from_json(text: &str) -> Result<ActionFamily> {
    let f: ActionFile = serde_json::from_str(text)?;
    let n = f.vars;
    let point = parse_vector(&f.point, n, "point")?;
    let generators = f
        .fields
        .into_iter()
        .enumerate()
        .map(|(g, comps)| {
            if comps.len() != n {
                return Err(Error::Malformed(format!("field {} has {} components, expected {n}", g + 1, comps.len())));
            }
            let polys = comps
                .into_iter()
                .map(|terms| {
                    let mut p = Polynomial::zero(n);
                    for t in terms {
                        if t.exps.len() != n {
                            return Err(Error::Malformed(format!(
                                "exponent vector of length {}, expected {n}",
                                t.exps.len()
                            )));
                        }
                        p.add_term(t.exps, parse_scalar(&t.coef)?);
                    }
                    Ok(p)
                })
                .collect::<Result<Vec<_>>>()?;
            PolyVectorField::new(polys)
        })
        .collect::<Result<Vec<_>>>()?;
    ActionFamily::new(n, generators, point)
}

pub fn action_to_json(fam: &ActionFamily) -> String {
    let f = ActionFile {
        vars: fam.num_vars(),
        point: format_vector(fam.base_point()),
        fields: fam
            .generators()
            .iter()
            .map(|g| {
                g.components()
                    .iter()
                    .map(|p| {
                        p.terms()
                            .iter()
                            .map(|(e, c)| TermEntry { coef: format_scalar(c), exps: e.clone() })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("serializes");
    s.push('\n');
    s
}

/// Any of the three file kinds, told apart by their top-level keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(LieAlgebra),
    Pair(KleinPair),
    Action(ActionFamily),
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("top-level JSON value must be an object".into()))?;
    if obj.contains_key("fields") {
        action_from_json(text).map(Document::Action)
    } else if obj.contains_key("stabilizer") {
        pair_from_json(text).map(Document::Pair)
    } else {
        algebra_from_json(text).map(Document::Algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn algebra_round_trip() {
        for alg in [catalog::sl2(), catalog::sa2(), catalog::filiform(5).unwrap(), LieAlgebra::abelian(0)] {
            assert_eq!(algebra_from_json(&algebra_to_json(&alg)).unwrap(), alg);
        }
    }

    #[test]
    fn pair_round_trip_is_canonical() {
        let text = r#"{"name":"sl2","dim":3,"basis":["X","H","Y"],
            "brackets":[{"i":0,"j":1,"v":["-2","0","0"]},{"i":0,"j":2,"v":["0","1","0"]},{"i":1,"j":2,"v":["0","0","-2"]}],
            "stabilizer":[["0","2","2"],["0","0","1/3"]]}"#;
        let pair = pair_from_json(text).unwrap();
        let out = pair_to_json(&pair);
        assert!(out.contains("\"stabilizer\""));
        let again = pair_from_json(&out).unwrap();
        assert_eq!(again, pair);
        assert_eq!(pair.stabilizer().basis()[0], vec![crate::scalar::int(0), crate::scalar::int(1), crate::scalar::int(0)]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"name":"a","dim":1,"basis":["e1"],"brackets":[],"extra":1}"#;
        assert!(algebra_from_json(text).is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(algebra_from_json(r#"{"name":"a","dim":2,"basis":["e1"],"brackets":[]}"#).is_err());
        assert!(algebra_from_json(r#"{"name":"a","dim":2,"basis":["a","b"],"brackets":[{"i":0,"j":1,"v":["1"]}]}"#).is_err());
        assert!(algebra_from_json(r#"{"name":"a","dim":2,"basis":["a","b"],"brackets":[{"i":0,"j":1,"v":["x","0"]}]}"#).is_err());
        assert!(algebra_from_json(r#"{"name":"a","dim":2,"basis":["a","b"],"brackets":[{"i":0,"j":1,"v":[1,0]}]}"#).is_err());
    }

    #[test]
    fn action_round_trip() {
        for fam in [catalog::sl2_line(1), catalog::translations(2)] {
            assert_eq!(action_from_json(&action_to_json(&fam)).unwrap(), fam);
        }
    }

    #[test]
    fn document_dispatch() {
        assert!(matches!(parse_document(&algebra_to_json(&catalog::sl2())).unwrap(), Document::Algebra(_)));
        assert!(matches!(parse_document(&action_to_json(&catalog::sl2_line(0))).unwrap(), Document::Action(_)));
        assert!(parse_document("[1]").is_err());
    }
}
