use std::fmt;

use crate::error::{Error, Result};
use crate::jets::polynomial::{multi_indices, var_name, Polynomial};
use crate::scalar::{Scalar, Vector};

/// `Σᵢ Xⁱ(x) ∂ᵢ` on ℚⁿ with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(p) = components.iter().find(|p| p.num_vars() != n) {
            return Err(Error::Malformed(format!(
                "component in {} variables for a field on a space of dimension {n}",
                p.num_vars()
            )));
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField { components: vec![Polynomial::zero(n); n] }
    }

    /// The constant field `∂ᵢ`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.components[i] = Polynomial::constant(n, Scalar::from_integer(1.into()));
        f
    }

    /// `p ∂ᵢ`.
    pub fn along(p: Polynomial, i: usize) -> Self {
        let mut f = Self::zero(p.num_vars());
        f.components[i] = p;
        f
    }

    pub fn num_vars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyVectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PolyVectorField { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// Value at a point.
    pub fn eval(&self, point: &[Scalar]) -> Vector {
        self.components.iter().map(|p| p.eval(point)).collect()
    }
}

/// `[X, Y]ⁱ = Σⱼ (Xʲ ∂ⱼYⁱ − Yʲ ∂ⱼXⁱ)`.
pub fn vf_bracket(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField> {
    let n = x.num_vars();
    if y.num_vars() != n {
        return Err(Error::Malformed(format!(
            "bracket of fields on spaces of dimension {n} and {}",
            y.num_vars()
        )));
    }
    let components = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(n), |acc, j| {
                let a = x.components[j].mul(&y.components[i].derivative(j));
                let b = y.components[j].mul(&x.components[i].derivative(j));
                acc.add(&a).sub(&b)
            })
        })
        .collect();
    Ok(PolyVectorField { components })
}

/// Taylor data `∂^α Xⁱ(a) / α!` for `|α| ≤ order`, grouped by component
/// and ordered within a component as in [`multi_indices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub base_point: Vector,
    pub order: u32,
    pub coefficients: Vector,
}

impl Jet {
    pub fn is_zero(&self) -> bool {
        crate::scalar::is_zero_vector(&self.coefficients)
    }
}

pub fn jet_of(field: &PolyVectorField, a: &[Scalar], order: u32) -> Result<Jet> {
    let n = field.num_vars();
    if a.len() != n {
        return Err(Error::Malformed(format!("base point has {} coordinates, expected {n}", a.len())));
    }
    let indices = multi_indices(n, order);
    let mut coefficients = Vec::with_capacity(n * indices.len());
    for p in &field.components {
        let shifted = p.shifted(a);
        coefficients.extend(indices.iter().map(|alpha| shifted.coefficient(alpha)));
    }
    Ok(Jet { base_point: a.to_vec(), order, coefficients })
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_vars();
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| {
                let d = if n == 1 { "d/dx".to_string() } else { format!("d/d{}", var_name(n, i)) };
                format!("({p}) {d}")
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn xk(k: u32) -> PolyVectorField {
        PolyVectorField::along(Polynomial::monomial(1, int(1), vec![k]), 0)
    }

    #[test]
    fn line_brackets() {
        assert_eq!(vf_bracket(&xk(1), &xk(0)).unwrap(), xk(0).scale(&int(-1)));
        assert_eq!(vf_bracket(&xk(2), &xk(1)).unwrap(), xk(2).scale(&int(-1)));
        assert!(vf_bracket(&xk(2), &xk(2)).unwrap().is_zero());
        assert!(vf_bracket(&xk(1), &PolyVectorField::coordinate(2, 0)).is_err());
    }

    #[test]
    fn jets_of_x_squared() {
        let f = xk(2);
        assert!(jet_of(&f, &[int(0)], 1).unwrap().is_zero());
        let j2 = jet_of(&f, &[int(0)], 2).unwrap();
        assert_eq!(j2.coefficients, vec![int(0), int(0), int(1)]);
        let j1 = jet_of(&f, &[int(1)], 1).unwrap();
        assert_eq!(j1.coefficients, vec![int(1), int(2)]);
        assert!(jet_of(&f, &[int(0), int(1)], 1).is_err());
    }

    #[test]
    fn jet_coefficient_count() {
        let f = PolyVectorField::coordinate(3, 1);
        for k in 0..4u32 {
            let j = jet_of(&f, &[int(1), int(2), int(3)], k).unwrap();
            let binom = (1..=3).fold(1usize, |acc, i| acc * (k as usize + i) / i);
            assert_eq!(j.coefficients.len(), 3 * binom);
        }
    }

    #[test]
    fn display() {
        assert_eq!(xk(2).to_string(), "(x^2) d/dx");
        assert_eq!(PolyVectorField::coordinate(2, 1).to_string(), "(1) d/dx2");
    }
}
