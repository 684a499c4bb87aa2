//! Least-squares fits of `log charge` against `log n`.

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub ell: f64,
}

/// Fits `ln y = intercept + slope ln n` to `(n, y)` points. Needs at least
/// two distinct `n` and positive `y`.
pub fn fit_loglog(points: &[(usize, f64)], ell: f64) -> Option<FitResult> {
    if points.len() < 2 || points.iter().any(|&(n, y)| n == 0 || !(y > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Some(FitResult {
        slope,
        intercept,
        r_squared,
        n_min: points.iter().map(|p| p.0).min().unwrap_or(0),
        n_max: points.iter().map(|p| p.0).max().unwrap_or(0),
        ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(usize, f64)> = [64usize, 128, 256, 512]
            .iter()
            .map(|&n| (n, 3.0 * (n as f64).powf(1.25)))
            .collect();
        let f = fit_loglog(&pts, 2.0).unwrap();
        assert!((f.slope - 1.25).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert_eq!((f.n_min, f.n_max), (64, 512));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_loglog(&[(64, 1.0)], 1.0).is_none());
        assert!(fit_loglog(&[(64, 1.0), (64, 2.0)], 1.0).is_none());
        assert!(fit_loglog(&[(64, 1.0), (128, 0.0)], 1.0).is_none());
    }
}
