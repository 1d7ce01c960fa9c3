//! Polynomial extrapolation of sampled vector quantities to parameter zero.

/// Offsets from the degenerate end used when the caller gives no schedule.
pub const DEFAULT_OFFSETS: [f64; 4] = [1e-3, 1e-4, 1e-5, 1e-6];

/// Neville's scheme at `h = 0`. Entry `k` of the result is the value at zero
/// of the interpolating polynomial through samples `0..=k`.
pub fn neville_iterates(h: &[f64], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    assert_eq!(h.len(), y.len(), "one sample per offset");
    let n = h.len();
    let mut out = Vec::with_capacity(n);
    // row[i] holds P_{i..k} for the current k
    let mut row: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        row.push(y[k].clone());
        for i in (0..k).rev() {
            let (hi, hk) = (h[i], h[k]);
            let next: Vec<f64> = row[i]
                .iter()
                .zip(&row[i + 1])
                .map(|(lo, hi_val)| (hi * hi_val - hk * lo) / (hi - hk))
                .collect();
            row[i] = next;
        }
        out.push(row[0].clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        let h = [0.5, 0.25, 0.125, 0.0625];
        let f = |x: f64| 3.0 - 2.0 * x + 5.0 * x * x - x * x * x;
        let y: Vec<Vec<f64>> = h.iter().map(|&x| vec![f(x), 2.0 * f(x)]).collect();
        let it = neville_iterates(&h, &y);
        assert_eq!(it.len(), 4);
        assert!((it[3][0] - 3.0).abs() < 1e-12);
        assert!((it[3][1] - 6.0).abs() < 1e-12);
        assert_eq!(it[0], y[0]);
    }

    #[test]
    fn converges_on_smooth_functions() {
        let h = DEFAULT_OFFSETS;
        let y: Vec<Vec<f64>> = h.iter().map(|&x| vec![x.sin() / x]).collect();
        let it = neville_iterates(&h, &y);
        let errs: Vec<f64> = it.iter().map(|v| (v[0] - 1.0).abs()).collect();
        assert!(errs[3] < 1e-14);
        assert!(errs[1] < errs[0]);
    }
}
