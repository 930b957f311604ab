//! Probability vectors and Shannon functionals. All logarithms are base 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Tolerance on the total mass of a distribution.
pub const SUM_TOL: f64 = 1e-9;

/// `x log2(1/x)` with `0 log 0 = 0`.
#[inline]
pub fn plogp_neg(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// A probability vector over `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    /// Validates without renormalizing.
    pub fn new(p: Vec<f64>) -> Result<Distribution> {
        if p.is_empty() {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        if let Some((i, x)) = p.iter().enumerate().find(|(_, x)| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidDistribution(format!("entry {i} is {x}")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!("entries sum to {total}")));
        }
        Ok(Distribution(p))
    }

    /// Scales nonnegative weights to total mass 1.
    pub fn normalized(w: Vec<f64>) -> Result<Distribution> {
        if let Some((i, x)) = w.iter().enumerate().find(|(_, x)| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidDistribution(format!("entry {i} is {x}")));
        }
        let total: f64 = w.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Distribution::new(w.into_iter().map(|x| x / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Distribution> {
        if n == 0 {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        Ok(Distribution(vec![1.0 / n as f64; n]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// `P(D)`.
    pub fn mass(&self, d: VertexSet) -> f64 {
        d.mass(&self.0)
    }

    /// Vertices with positive probability.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &x)| x > 0.0).map(|(i, _)| i)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: self.len(),
            });
        }
        Ok(())
    }

    /// Product distribution `p ⊗ q` on row-major pairs.
    pub fn product(&self, q: &Distribution) -> Distribution {
        Distribution(
            self.0
                .iter()
                .flat_map(|&a| q.0.iter().map(move |&b| a * b))
                .collect(),
        )
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        Distribution::new(v).map_err(serde::de::Error::custom)
    }
}

pub fn entropy(p: &Distribution) -> f64 {
    p.0.iter().map(|&x| plogp_neg(x)).sum()
}

/// `h(x) = -x log x - (1-x) log(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("binary entropy argument {x} outside [0,1]")));
    }
    Ok(plogp_neg(x) + plogp_neg(1.0 - x))
}

/// `D(p||q)` in bits; `+inf` when `p` is not absolutely continuous w.r.t. `q`.
pub fn kl_divergence(p: &Distribution, q: &Distribution) -> Result<f64> {
    p.check_len(q.len())?;
    let mut total = 0.0;
    for (&a, &b) in p.0.iter().zip(&q.0) {
        if a > 0.0 {
            if b <= 0.0 {
                return Ok(f64::INFINITY);
            }
            total += a * (a / b).log2();
        }
    }
    Ok(total.max(0.0))
}

/// A joint distribution `q(x, y)` stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    q: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, q: Vec<f64>) -> Result<JointDistribution> {
        if rows == 0 || cols == 0 || q.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: q.len(),
            });
        }
        if let Some(x) = q.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidDistribution(format!("joint entry {x}")));
        }
        let total: f64 = q.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!("joint entries sum to {total}")));
        }
        Ok(JointDistribution { rows, cols, q })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<JointDistribution> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDistribution("ragged joint matrix".into()));
        }
        JointDistribution::new(rows.len(), cols, rows.concat())
    }

    /// `p ⊗ q`.
    pub fn product(p: &Distribution, q: &Distribution) -> JointDistribution {
        JointDistribution {
            rows: p.len(),
            cols: q.len(),
            q: p.product(q).into_vec(),
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.q[x * self.cols + y]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.rows).map(|x| (0..self.cols).map(|y| self.get(x, y)).sum()).collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.cols).map(|y| (0..self.rows).map(|x| self.get(x, y)).sum()).collect()
    }

    pub fn transpose(&self) -> JointDistribution {
        let q = (0..self.cols)
            .flat_map(|y| (0..self.rows).map(move |x| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .collect();
        JointDistribution {
            rows: self.cols,
            cols: self.rows,
            q,
        }
    }
}

/// `H(X, Y)`.
pub fn joint_entropy(j: &JointDistribution) -> f64 {
    j.q.iter().map(|&x| plogp_neg(x)).sum()
}

/// `H(Y | X)` with `X` the row symbol.
pub fn conditional_entropy(j: &JointDistribution) -> f64 {
    let px = j.marginal_x();
    let mut total = 0.0;
    for (x, &m) in px.iter().enumerate() {
        if m > 0.0 {
            for y in 0..j.cols {
                let q = j.get(x, y);
                if q > 0.0 {
                    total -= q * (q / m).log2();
                }
            }
        }
    }
    total.max(0.0)
}

/// `I(X; Y) = D(q || q_X q_Y)`.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    let px = j.marginal_x();
    let py = j.marginal_y();
    let mut total = 0.0;
    for x in 0..j.rows {
        for y in 0..j.cols {
            let q = j.get(x, y);
            if q > 0.0 {
                total += q * (q / (px[x] * py[y])).log2();
            }
        }
    }
    total.max(0.0)
}
