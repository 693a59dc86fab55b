use num_traits::Float;

/// Least-squares slope of `ln y` against `ln x`. Needs two distinct `x` and
/// positive coordinates.
pub fn loglog_slope<F: Float>(points: &[(F, F)]) -> Option<F> {
    let logs: Vec<(F, F)> = points
        .iter()
        .filter(|(x, y)| *x > F::zero() && *y > F::zero())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    least_squares_slope(&logs)
}

pub fn least_squares_slope<F: Float>(points: &[(F, F)]) -> Option<F> {
    let n = F::from(points.len())?;
    if points.len() < 2 {
        return None;
    }
    let (sx, sy) = points
        .iter()
        .fold((F::zero(), F::zero()), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points
        .iter()
        .fold((F::zero(), F::zero()), |(num, den), &(x, y)| {
            (num + (x - mx) * (y - my), den + (x - mx) * (x - mx))
        });
    (den > F::zero()).then(|| num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_laws() {
        let sq: Vec<(f64, f64)> = (1..10).map(|t| (t as f64, (t * t) as f64)).collect();
        assert!((loglog_slope(&sq).unwrap() - 2.0).abs() < 1e-12);
        let lin: Vec<(f32, f32)> = (1..10).map(|t| (t as f32, 3.0 * t as f32)).collect();
        assert!((loglog_slope(&lin).unwrap() - 1.0).abs() < 1e-5);
        assert!(loglog_slope::<f64>(&[(2.0, 3.0)]).is_none());
        assert!(least_squares_slope::<f64>(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }
}
