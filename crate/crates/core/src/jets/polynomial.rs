use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{format_scalar, Scalar};

/// Exponent multi-index, one entry per variable.
pub type Exponents = Vec<u32>;

/// Multivariate polynomial over ℚ. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        Self::monomial(num_vars, c, vec![0; num_vars])
    }

    pub fn monomial(num_vars: usize, c: Scalar, exps: Exponents) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut p = Self::zero(num_vars);
        p.add_term(exps, c);
        p
    }

    /// The coordinate function `xᵢ`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(num_vars, Scalar::one(), e)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// `∂p/∂xᵢ`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Scalar::from_integer(BigInt::from(e[i])));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    /// `q(y) = p(y + a)`. The coefficient of `y^α` in `q` is the Taylor
    /// coefficient `∂^α p(a) / α!`.
    pub fn shifted(&self, a: &[Scalar]) -> Polynomial {
        let n = self.num_vars;
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            // Π (yᵢ + aᵢ)^{eᵢ}
            let mut prod = Self::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut factor = Self::zero(n);
                for j in 0..=k {
                    let binom = binomial(k, j);
                    let coeff = Scalar::from_integer(binom) * num_traits::pow(a[i].clone(), (k - j) as usize);
                    let mut ex = vec![0; n];
                    ex[i] = j;
                    factor.add_term(ex, coeff);
                }
                prod = prod.mul(&factor);
            }
            out = out.add(&prod);
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// All multi-indices in `n` variables of total degree at most `k`, ordered
/// by degree and then lexicographically descending.
pub fn multi_indices(n: usize, k: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..=k {
        let mut of_degree = Vec::new();
        compositions(n, d, &mut Vec::with_capacity(n), &mut of_degree);
        out.extend(of_degree);
    }
    out
}

fn compositions(n: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponents>) {
    if prefix.len() + 1 == n {
        prefix.push(remaining);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for first in (0..=remaining).rev() {
        prefix.push(first);
        compositions(n, remaining - first, prefix, out);
        prefix.pop();
    }
}

pub(crate) fn var_name(num_vars: usize, i: usize) -> String {
    if num_vars == 1 {
        "x".to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let v = var_name(self.num_vars, i);
                    if k == 1 {
                        v
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            match (mag.is_one(), vars.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&vars.join("*"))?,
                (false, true) => f.write_str(&format_scalar(&mag))?,
                (false, false) => write!(f, "{}*{}", format_scalar(&mag), vars.join("*"))?,
            }
        }
        Ok(())
    }
}
