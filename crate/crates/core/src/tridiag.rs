//! Real symmetric tridiagonal eigensolvers.
//!
//! [`eigh`] is the implicit-shift QL iteration with eigenvector accumulation;
//! [`lowest_eigenvalue`] is Sturm-sequence bisection and shares no code with it.

use crate::{Error, Result};

/// Sweep budget per eigenvalue.
pub const MAX_SWEEPS: usize = 50;

/// Full eigensystem of the tridiagonal matrix with main diagonal `diag` and
/// sub/super-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
///
/// Returns eigenvalues in ascending order and a row-major `dim x dim` matrix
/// whose column `i` is the unit eigenvector for eigenvalue `i`.
pub fn eigh(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let dim = diag.len();
    if dim == 0 || offdiag.len() + 1 != dim {
        return Err(Error::DimensionMismatch { expected: dim.saturating_sub(1), actual: offdiag.len() });
    }

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; dim * dim];
    for i in 0..dim {
        z[i * dim + i] = 1.0;
    }

    for l in 0..dim {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < dim {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence { index: l, iterations: MAX_SWEEPS });
            }

            // Wilkinson-style shift from the leading 2x2 block.
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
                for row in z.chunks_exact_mut(dim) {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..dim {
            vectors[row * dim + dst] = z[row * dim + src];
        }
    }
    Ok((values, vectors))
}

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], offdiag: &[f64], x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { offdiag[i - 1] };
        q = a - x - coupling * coupling / q;
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the whole spectrum.
pub fn gershgorin_bounds(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &a) in diag.iter().enumerate() {
        let left = if i == 0 { 0.0 } else { offdiag[i - 1].abs() };
        let right = offdiag.get(i).map_or(0.0, |x| x.abs());
        lo = lo.min(a - left - right);
        hi = hi.max(a + left + right);
    }
    (lo, hi)
}

/// Smallest eigenvalue by bisection on the Sturm count.
pub fn lowest_eigenvalue(diag: &[f64], offdiag: &[f64]) -> f64 {
    let (mut lo, mut hi) = gershgorin_bounds(diag, offdiag);
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
            break;
        }
        if sturm_count(diag, offdiag, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_swap() {
        let (w, v) = eigh(&[0.0, 0.0], &[1.0]).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        // ground state antisymmetric
        assert!((v[0] * v[2] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn one_by_one() {
        let (w, v) = eigh(&[3.5], &[]).unwrap();
        assert_eq!(w, vec![3.5]);
        assert_eq!(v, vec![1.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(eigh(&[1.0, 2.0], &[]).is_err());
        assert!(eigh(&[], &[]).is_err());
    }

    #[test]
    fn reconstructs_random_matrix() {
        let dim = 40;
        let diag: Vec<f64> = (0..dim).map(|i| ((i * 37 % 11) as f64) - 5.0).collect();
        let off: Vec<f64> = (0..dim - 1).map(|i| 1.0 + ((i * 13 % 7) as f64) * 0.3).collect();
        let (w, v) = eigh(&diag, &off).unwrap();
        let norm = w.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for r in 0..dim {
            for c in 0..dim {
                let rec: f64 = (0..dim).map(|i| v[r * dim + i] * w[i] * v[c * dim + i]).sum();
                let want = if r == c {
                    diag[r]
                } else if r + 1 == c {
                    off[r]
                } else if c + 1 == r {
                    off[c]
                } else {
                    0.0
                };
                assert!((rec - want).abs() < 1e-12 * norm, "({r},{c}) {rec} vs {want}");
                let dot: f64 = (0..dim).map(|i| v[i * dim + r] * v[i * dim + c]).sum();
                let id = if r == c { 1.0 } else { 0.0 };
                assert!((dot - id).abs() < 1e-12);
            }
        }
        assert!((lowest_eigenvalue(&diag, &off) - w[0]).abs() < 1e-12 * norm);
        for (i, &x) in w.iter().enumerate() {
            assert_eq!(sturm_count(&diag, &off, x - 1e-9), i);
        }
    }
}
