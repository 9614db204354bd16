//! Minimal deterministic Nelder-Mead simplex minimizer for smooth
//! low-dimensional objectives.

/// Standard coefficients: reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2.
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub max_iters: usize,
    /// Stop once the value spread across the simplex drops below this.
    pub f_tol: f64,
    /// Initial simplex edge length along each coordinate.
    pub step: f64,
}

impl NelderMead {
    pub fn new(max_iters: usize, f_tol: f64, step: f64) -> Self {
        Self {
            max_iters,
            f_tol,
            step,
        }
    }

    /// Minimize `f` from `x0`; returns the best value and point seen.
    pub fn minimize(&self, f: impl Fn(&[f64]) -> f64, x0: &[f64]) -> (f64, Vec<f64>) {
        let n = x0.len();
        assert!(n >= 1, "need at least one coordinate");

        let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
        simplex.push((f(x0), x0.to_vec()));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.step;
            simplex.push((f(&x), x));
        }

        for _ in 0..self.max_iters {
            simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
            let spread = simplex[n].0 - simplex[0].0;
            if spread <= self.f_tol {
                break;
            }

            // centroid of all but the worst vertex
            let mut centroid = vec![0.0; n];
            for (_, x) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }

            let worst = simplex[n].clone();
            let lerp = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&worst.1)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let reflected = lerp(1.0);
            let f_reflected = f(&reflected);
            if f_reflected < simplex[0].0 {
                let expanded = lerp(2.0);
                let f_expanded = f(&expanded);
                simplex[n] = if f_expanded < f_reflected {
                    (f_expanded, expanded)
                } else {
                    (f_reflected, reflected)
                };
                continue;
            }
            if f_reflected < simplex[n - 1].0 {
                simplex[n] = (f_reflected, reflected);
                continue;
            }

            let contracted = if f_reflected < worst.0 {
                lerp(0.5)
            } else {
                lerp(-0.5)
            };
            let f_contracted = f(&contracted);
            if f_contracted < worst.0.min(f_reflected) {
                simplex[n] = (f_contracted, contracted);
                continue;
            }

            // shrink toward the best vertex
            let best = simplex[0].1.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = best
                    .iter()
                    .zip(&vertex.1)
                    .map(|(b, v)| b + 0.5 * (v - b))
                    .collect();
                *vertex = (f(&x), x);
            }
        }

        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        simplex.swap_remove(0)
    }
}
