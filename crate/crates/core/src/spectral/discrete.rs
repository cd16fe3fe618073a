//! Finite-difference spectrum of `D² + βD` on `[0, S]` with Dirichlet ends.

use serde::Serialize;

use crate::error::{RellichError, Result};

const QL_MAX_ITER: usize = 60;

#[derive(Debug, Clone, Serialize)]
pub struct DiscreteSpectrum {
    pub beta: f64,
    pub length: f64,
    pub interior_points: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Largest gap between the QL eigenvalues and the Toeplitz closed form.
    pub closed_form_error: f64,
    /// Largest distance from an eigenvalue to the region `Q(β)`.
    pub max_distance_to_region: f64,
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL.
///
/// `off[i]` couples rows `i` and `i + 1`, so `off.len() + 1 == diag.len()`.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(RellichError::InvalidParameter(
            "off-diagonal must have one entry fewer than the diagonal".into(),
        ));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(RellichError::UnsupportedRegime(
                    "tridiagonal QL iteration did not converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Distance from a real number to `Q(β)`; every real point of `Q(β)` is `≤ 0`.
fn real_distance_to_region(lambda: f64) -> f64 {
    lambda.max(0.0)
}

/// Second-order central differences for `u″ + βu′` on `interior_points` nodes.
pub fn discretized_halfline_spectrum(
    beta: f64,
    length: f64,
    interior_points: usize,
) -> Result<DiscreteSpectrum> {
    if !(length > 0.0) || interior_points < 2 {
        return Err(RellichError::InvalidParameter(
            "need a positive length and at least two interior points".into(),
        ));
    }
    let h = length / (interior_points as f64 + 1.0);
    let sub = 1.0 / (h * h) - beta / (2.0 * h);
    let sup = 1.0 / (h * h) + beta / (2.0 * h);
    if sub * sup <= 0.0 {
        return Err(RellichError::UnsupportedRegime(format!(
            "grid too coarse for beta = {beta}: the scheme is not symmetrizable"
        )));
    }
    let diag_value = -2.0 / (h * h);
    let coupling = (sub * sup).sqrt();
    let diag = vec![diag_value; interior_points];
    let off = vec![coupling; interior_points - 1];
    let eigenvalues = symmetric_tridiagonal_eigenvalues(&diag, &off)?;

    let m = interior_points as f64 + 1.0;
    let mut closed: Vec<f64> = (1..=interior_points)
        .map(|j| diag_value + 2.0 * coupling * (std::f64::consts::PI * j as f64 / m).cos())
        .collect();
    closed.sort_by(|a, b| a.total_cmp(b));
    let closed_form_error = eigenvalues
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let max_distance_to_region = eigenvalues
        .iter()
        .map(|&l| real_distance_to_region(l))
        .fold(0.0, f64::max);

    Ok(DiscreteSpectrum {
        beta,
        length,
        interior_points,
        eigenvalues,
        closed_form_error,
        max_distance_to_region,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrix_against_known_eigenvalues() {
        // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 - √2, 2, 2 + √2.
        let ev = symmetric_tridiagonal_eigenvalues(&[2.0, 2.0, 2.0], &[1.0, 1.0]).unwrap();
        let s = 2f64.sqrt();
        for (a, b) in ev.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn trace_and_frobenius_are_preserved() {
        let diag: Vec<f64> = (0..40).map(|i| (i as f64 * 0.37).sin() * 3.0).collect();
        let off: Vec<f64> = (0..39).map(|i| 1.0 + (i as f64 * 0.11).cos()).collect();
        let ev = symmetric_tridiagonal_eigenvalues(&diag, &off).unwrap();
        let tr: f64 = diag.iter().sum();
        let fro: f64 = diag.iter().map(|x| x * x).sum::<f64>()
            + 2.0 * off.iter().map(|x| x * x).sum::<f64>();
        assert!((ev.iter().sum::<f64>() - tr).abs() < 1e-10);
        assert!((ev.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-9);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(symmetric_tridiagonal_eigenvalues(&[1.0, 2.0], &[]).is_err());
    }

    #[test]
    fn coarse_grid_with_large_drift_is_refused() {
        assert!(matches!(
            discretized_halfline_spectrum(100.0, 200.0, 10),
            Err(RellichError::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn moderate_grid_stays_in_region() {
        for beta in [-1.0, 0.0, 1.0] {
            let s = discretized_halfline_spectrum(beta, 50.0, 500).unwrap();
            assert!(s.closed_form_error < 1e-10 * s.eigenvalues[0].abs());
            assert!(s.max_distance_to_region <= 1e-2);
            let top = *s.eigenvalues.last().unwrap();
            assert!(top < -beta * beta / 4.0 + 1e-9);
        }
    }
}
