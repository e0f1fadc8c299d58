/// Euclidean projection of `y` onto `{x >= 0, Σ x = 1}` (sort-and-threshold).
pub fn project_to_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let t = (cumsum - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Uniform point on the probability simplex (normalized exponentials).
pub(crate) fn random_simplex_point<R: rand::Rng>(rng: &mut R, t: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..t).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= s);
    x
}

/// Solves the dense square system `a x = b`, `a` given row-major.
pub(crate) fn solve_dense(n: usize, a: Vec<f64>, b: Vec<f64>) -> Option<Vec<f64>> {
    let m = nalgebra::DMatrix::from_row_slice(n, n, &a);
    let rhs = nalgebra::DVector::from_vec(b);
    let x = m.lu().solve(&rhs)?;
    x.iter().all(|v| v.is_finite()).then(|| x.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_points_and_examples() {
        assert_eq!(project_to_simplex(&[0.2, 0.8]), vec![0.2, 0.8]);
        assert_eq!(project_to_simplex(&[1.0, 1.0]), vec![0.5, 0.5]);
        assert_eq!(project_to_simplex(&[3.0, 0.0, -1.0]), vec![1.0, 0.0, 0.0]);
    }

    proptest! {
        #[test]
        fn projection_is_feasible_and_optimal(y in prop::collection::vec(-3.0f64..3.0, 1..8)) {
            let x = project_to_simplex(&y);
            let s: f64 = x.iter().sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
            prop_assert!(x.iter().all(|&v| v >= 0.0));
            // Optimality: <y - x, z - x> <= 0 for every vertex z of the simplex.
            for k in 0..y.len() {
                let mut inner = 0.0;
                for i in 0..y.len() {
                    let z = if i == k { 1.0 } else { 0.0 };
                    inner += (y[i] - x[i]) * (z - x[i]);
                }
                prop_assert!(inner <= 1e-12);
            }
        }
    }
}
