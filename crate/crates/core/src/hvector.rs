//! h-vectors of simple polytopes.
//!
//! The h-vector is read off the degree-n polynomial
//! `(t-1)^n + sum_i f_i (t-1)^{n-1-i}` built from the dual f-vector;
//! its coefficient of `t^{n-i}` is `h_i`. For 3-polytopes the expansion
//! collapses to the closed form `(1, F-3, 3-2F+E, V-E+F-1)`, and both
//! routes are computed and compared.

use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// Integer polynomial of degree `n` stored as `h_0..h_n`, where `h_i`
/// is the coefficient of `t^{n-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    degree: usize,
    coeffs: Vec<i64>,
}

impl HPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients `h_0..h_n`.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| acc * t + c)
    }

    pub fn h_vector(&self) -> HVector {
        HVector(self.coeffs.clone())
    }
}

/// `(h_0, h_1, ..., h_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn h(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// Expand `(t-1)^n + sum_{i=0}^{n-1} f_i (t-1)^{n-1-i}` exactly.
///
/// `dual_f[i]` is the number of codimension-(i+1) faces of the polytope
/// (equivalently the i-simplices of the dual boundary complex). Works
/// for any `n >= 1`, not just the dimensions the rest of the crate can
/// represent.
pub fn h_polynomial(dual_f: &[i64], n: usize) -> Result<HPolynomial> {
    if n == 0 {
        return Err(Error::Domain("polynomial degree must be at least 1".into()));
    }
    if dual_f.len() != n {
        return Err(Error::Domain(format!(
            "expected {n} dual face counts, got {}",
            dual_f.len()
        )));
    }
    if dual_f.iter().any(|&f| f < 0) {
        return Err(Error::Domain("face counts must be nonnegative".into()));
    }
    // accumulate by ascending power of t, in i128 to keep the binomials exact
    let mut acc = vec![0i128; n + 1];
    add_power_of_t_minus_one(&mut acc, n, 1);
    for (i, &f) in dual_f.iter().enumerate() {
        add_power_of_t_minus_one(&mut acc, n - 1 - i, f as i128);
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        // h_i is the coefficient of t^{n-i}
        let c = acc[n - i];
        coeffs.push(i64::try_from(c).map_err(|_| Error::Overflow("h-polynomial"))?);
    }
    Ok(HPolynomial { degree: n, coeffs })
}

/// acc[j] += scale * [coefficient of t^j in (t-1)^m]
fn add_power_of_t_minus_one(acc: &mut [i128], m: usize, scale: i128) {
    let mut binom = 1i128; // C(m, 0)
    for j in 0..=m {
        // coefficient of t^{m-j} is C(m, j) * (-1)^j
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc[m - j] += scale * sign * binom;
        binom = binom * (m as i128 - j as i128) / (j as i128 + 1);
    }
}

/// h-vector of a validated simple polytope, by polynomial expansion.
/// For 3-polytopes the result is cross-checked against the closed form
/// `(1, F-3, 3-2F+E, V-E+F-1)`.
pub fn h_vector(p: &Polytope) -> Result<HVector> {
    let dual: Vec<i64> = p.dual_f_vector()?.iter().map(|&x| x as i64).collect();
    let hp = h_polynomial(&dual, p.dim())?;
    let hv = hp.h_vector();
    if p.dim() == 3 {
        let (v, e, f) = (
            p.vertex_count() as i64,
            p.edge_count() as i64,
            p.facet_count() as i64,
        );
        let closed = [1, f - 3, 3 - 2 * f + e, v - e + f - 1];
        assert_eq!(
            hv.as_slice(),
            closed,
            "polynomial expansion disagrees with the 3-polytope closed form"
        );
    }
    Ok(hv)
}

/// `h_1 = V/2 - 1` for a simple 3-polytope, from the vertex count alone.
pub fn h1_from_vertex_count(v: usize) -> Result<i64> {
    if v % 2 != 0 {
        return Err(Error::OddVertexCount(v));
    }
    Ok(v as i64 / 2 - 1)
}

/// `h_1` of a validated simple 3-polytope via `V/2 - 1`, cross-checked
/// against the polynomial route.
pub fn h1_closed_form(p: &Polytope) -> Result<i64> {
    if p.dim() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            actual: p.dim(),
        });
    }
    p.require_valid()?;
    let h1 = h1_from_vertex_count(p.vertex_count())?;
    assert_eq!(h1, h_vector(p)?.h(1), "V/2 - 1 disagrees with the h-vector");
    Ok(h1)
}
