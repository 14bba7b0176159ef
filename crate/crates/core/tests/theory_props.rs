mod common;

use pa_gamma::specfun::hurwitz_zeta;
use pa_gamma::theory::{expected_degree, gamma_curve, implicit_residual, solve_gamma};
use pa_gamma::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_matches_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let gamma = rng.random_range(2.2..3.0);
        let m = rng.random_range(1..=50u64);
        let closed = implicit_residual(gamma, m).unwrap();
        let direct = common::brute_residual_with(gamma, m, 1_000_000);
        assert!(
            (closed - direct).abs() <= 1e-8,
            "gamma={gamma} m={m}: {closed} vs {direct}"
        );
    }
}

#[test]
fn m1_root_doubles_zeta() {
    let g = solve_gamma(1).unwrap().gamma;
    let lhs = hurwitz_zeta(g - 1.0, 1).unwrap();
    let rhs = 2.0 * hurwitz_zeta(g, 1).unwrap();
    assert!((lhs - rhs).abs() <= 1e-10, "{lhs} vs {rhs}");
}

#[test]
fn solver_matches_brute_force_for_small_m() {
    for m in [1u64, 10] {
        let want = common::brute_gamma(m, 1e-10);
        let got = solve_gamma(m).unwrap().gamma;
        assert!((got - want).abs() <= 1e-8, "m={m}: {got} vs {want}");
    }
}

#[test]
fn root_identity_up_to_100() {
    let ms: Vec<u64> = (1..=100).collect();
    for sol in gamma_curve(&ms, Execution::Parallel).unwrap() {
        let mean = expected_degree(sol.gamma, sol.m).unwrap();
        assert!((mean - 2.0 * sol.m as f64).abs() <= 1e-9, "m={}: mean {mean}", sol.m);
    }
}

#[test]
fn bounded_and_increasing_up_to_ten_thousand() {
    let ms: Vec<u64> = (1..=10_000).collect();
    let curve = gamma_curve(&ms, Execution::Parallel).unwrap();
    for sol in &curve {
        assert!(sol.gamma > 2.0 && sol.gamma < 3.0, "m={} gamma={}", sol.m, sol.gamma);
        assert!(sol.bracket.1 - sol.bracket.0 <= 1e-12);
        assert!(sol.residual.abs() <= 1e-10);
    }
    for w in curve.windows(2) {
        assert!(3.0 - w[1].gamma < 3.0 - w[0].gamma, "not increasing at m={}", w[1].m);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let ms: Vec<u64> = (1..=50).collect();
    assert_eq!(
        gamma_curve(&ms, Execution::Sequential).unwrap(),
        gamma_curve(&ms, Execution::Parallel).unwrap()
    );
}
