//! Closed-form constants for K_{2,t}-minor-free graphs.
//!
//! Most of these are astronomically large (`t^(2k t^k)` overflows an `f64`
//! already at t = 3, k = 4), so they are carried as base-10 logarithms.

/// Edge ceiling for a K_{2,t}-minor-free graph: `2|E| ≤ (t+1)(|V|-1)`.
pub fn within_sparsity_bound(vertices: usize, edges: usize, t: usize) -> bool {
    vertices == 0 || 2 * edges <= (t + 1) * (vertices - 1)
}

/// `(t+1)^(2h) (h+1)!`, the growth factor of Q-path closures of length `h`.
/// `None` when it does not fit in a `u128`.
pub fn q_path_growth(h: usize, t: usize) -> Option<u128> {
    let base = (t as u128 + 1).checked_pow(2 * h as u32)?;
    (1..=h as u128 + 1).try_fold(base, |acc, i| acc.checked_mul(i))
}

pub fn log10_q_path_growth(h: usize, t: usize) -> f64 {
    2.0 * h as f64 * ((t + 1) as f64).log10() + log10_factorial(h + 1)
}

/// log10 of `k^2 t^(2k t^k)`, the ceiling on edges between two Voronoi cells
/// of radius `k`.
pub fn log10_intercell_edges(k: usize, t: usize) -> f64 {
    let exponent = 2.0 * k as f64 * (t as f64).powi(k as i32);
    2.0 * (k as f64).log10() + exponent * (t as f64).log10()
}

/// log10 of the per-cell selection factor: `k` nested Q-path closures of
/// length `3k`, i.e. `((t+1)^(6k) (3k+1)!)^k`.
pub fn log10_cell_selection(k: usize, t: usize) -> f64 {
    k as f64 * log10_q_path_growth(3 * k, t)
}

/// log10 of the approximation ceiling `δ(t, k) = β k^2 t^(2k t^k) (t+1)`.
pub fn log10_domset_ratio(k: usize, t: usize) -> f64 {
    log10_cell_selection(k, t) + log10_intercell_edges(k, t) + ((t + 1) as f64).log10()
}

/// log10 of the border-vertex ceiling `k^2 t^(2k t^k) (t+1) |M|`.
pub fn log10_border_bound(k: usize, t: usize, optimum: usize) -> f64 {
    log10_intercell_edges(k, t) + ((t + 1) as f64).log10() + (optimum as f64).log10()
}

/// log10 of `α / (2 δ k^2 t^(2k t^k))`, the boundary fraction that makes the
/// clustered pipeline a `(1 + α)`-approximation.
pub fn log10_pipeline_epsilon(alpha: f64, k: usize, t: usize) -> f64 {
    alpha.log10() - 2f64.log10() - log10_domset_ratio(k, t) - log10_intercell_edges(k, t)
}

/// Whether a non-negative `value` is at most `10^log10_bound`.
pub fn fits_under(value: f64, log10_bound: f64) -> bool {
    value <= 0.0 || value.log10() <= log10_bound + 1e-9
}

fn log10_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).log10()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparsity_examples() {
        // a tree meets the t = 2 ceiling with room to spare; K_4 has 6 > 4.5 edges
        assert!(within_sparsity_bound(10, 9, 2));
        assert!(!within_sparsity_bound(4, 6, 2));
        assert!(within_sparsity_bound(4, 6, 3));
        assert!(within_sparsity_bound(0, 0, 2));
    }

    #[test]
    fn growth_factor() {
        assert_eq!(q_path_growth(0, 3), Some(1));
        assert_eq!(q_path_growth(1, 3), Some(16 * 2));
        assert_eq!(q_path_growth(2, 2), Some(81 * 6));
        assert_eq!(q_path_growth(200, 3), None);
        let exact = q_path_growth(6, 3).unwrap() as f64;
        assert!((exact.log10() - log10_q_path_growth(6, 3)).abs() < 1e-9);
    }

    #[test]
    fn ratio_ceiling_for_small_parameters() {
        // k = 1, t = 2: alpha_{3,2} = 3^6 * 4! = 17496; k^2 t^(2 t) = 16; (t+1) = 3
        let expected = (17496.0f64 * 16.0 * 3.0).log10();
        assert!((log10_domset_ratio(1, 2) - expected).abs() < 1e-9);
        assert!(log10_domset_ratio(4, 3).is_finite());
        assert!(log10_pipeline_epsilon(0.5, 2, 3) < -50.0);
    }

    #[test]
    fn fits_under_handles_zero_and_equality() {
        assert!(fits_under(0.0, -3.0));
        assert!(fits_under(100.0, 2.0));
        assert!(!fits_under(101.0, 2.0));
    }
}
