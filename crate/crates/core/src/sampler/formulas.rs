//! Closed-form predictions for the sampler and the colour-count calculators.

use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::graph::analyze;
use crate::graph::Graph;
use crate::rational::big_binomial;
use crate::sampler::{SamplerConfig, SamplerError};

// ==========================================================================
// Membership probability
// ==========================================================================

/// Exact membership probability of `v` in the sampled set, valid for every
/// graph: with activation `a` and `d = deg(v)`,
/// `P[v in I] = a * sum_j C(d,j) a^j (1-a)^(d-j) / (j+1)`.
///
/// Membership of `v` depends only on its own activation, the activations of
/// its neighbours, and the relative priority of `v` among the activated
/// closed neighbourhood, so the formula needs no regularity assumption.
pub fn membership_probability_exact(
    g: &Graph,
    v: u32,
    cfg: &SamplerConfig,
) -> Result<f64, SamplerError> {
    let a = cfg.activation_probability(g)?;
    Ok(membership_from_activation(g.degree(v), a))
}

/// The binomial sum above, evaluated stably by term recurrence (binomial
/// coefficients never materialize, so large degrees stay finite).
fn membership_from_activation(degree: usize, a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    if a == 1.0 {
        // Only the all-activated term survives.
        return 1.0 / (degree as f64 + 1.0);
    }
    let mut term = (1.0 - a).powi(degree as i32); // j = 0
    let mut sum = 0.0;
    for j in 0..=degree {
        sum += term / (j as f64 + 1.0);
        // C(d,j+1) a^(j+1) (1-a)^(d-j-1) from the j-th term.
        term *= (degree - j) as f64 / (j as f64 + 1.0) * a / (1.0 - a);
    }
    a * sum
}

/// Same quantity in exact arithmetic, for equality against enumeration.
pub fn membership_probability_rational(degree: usize, activation: &BigRational) -> BigRational {
    let one = BigRational::one();
    let complement = &one - activation;
    let mut sum = BigRational::zero();
    for j in 0..=degree {
        let weight = big_binomial(degree as u64, j as u64)
            * activation.pow(j as i32)
            * complement.pow((degree - j) as i32);
        sum += weight / BigRational::from_integer((j as i64 + 1).into());
    }
    activation * sum
}

/// Membership probability in a `delta`-regular graph: the binomial sum
/// telescopes to `(1 - (1 - gamma/delta)^(delta+1)) / (delta + 1)`.
pub fn membership_probability_closed_form(delta: usize, gamma: f64) -> Result<f64, SamplerError> {
    if delta == 0 {
        return Err(SamplerError::Domain(
            "closed-form membership needs delta >= 1".into(),
        ));
    }
    let a = gamma / delta as f64;
    if !(0.0..=1.0).contains(&a) {
        return Err(SamplerError::Activation {
            gamma,
            delta_eff: delta,
            p: a,
        });
    }
    Ok((1.0 - (1.0 - a).powi(delta as i32 + 1)) / (delta as f64 + 1.0))
}

/// Two-sided estimate bracketing the regular-graph membership probability:
/// `[(1 - e^-gamma)/delta - 2/delta^2, (1 - e^-gamma)/delta]`.
pub fn membership_bracket(delta: usize, gamma: f64) -> (f64, f64) {
    let d = delta as f64;
    let hi = (1.0 - (-gamma).exp()) / d;
    (hi - 2.0 / (d * d), hi)
}

// ==========================================================================
// Neighbourhood pair prediction
// ==========================================================================

/// Predicted expected number of sampled pairs in `N(root)`:
/// `sigma_r * mean over independent pairs of 1 / (2 - ell_uv)`,
/// with `ell_uv = codeg(u,v) / D` and `sigma_r` the local sparsity, both
/// taken at the effective degree of `cfg`.
pub fn expected_pairs_formula(
    g: &Graph,
    root: u32,
    cfg: &SamplerConfig,
) -> Result<f64, SamplerError> {
    cfg.activation_probability(g)?; // validate gamma against the same delta
    let delta_eff = cfg.effective_delta(g);
    if delta_eff < 2 {
        return Ok(0.0);
    }
    let report = analyze::independent_pairs_and_triples(g, root);
    if report.independent_pairs.is_empty() {
        return Ok(0.0);
    }
    let d = delta_eff as f64;
    let mean: f64 = report
        .independent_pairs
        .iter()
        .map(|pair| {
            let ell = pair.common as f64 / d;
            1.0 / (2.0 - ell)
        })
        .sum::<f64>()
        / report.independent_pairs.len() as f64;
    let edges = analyze::neighbourhood_edge_count(g, root) as f64;
    let sigma_r = 1.0 - edges / (d * (d - 1.0) / 2.0);
    Ok(sigma_r * mean)
}

// ==========================================================================
// Epsilon functions
// ==========================================================================

/// Colour savings rate from sparsity: `(3 sigma - sigma^(3/2)) / 6`.
pub fn epsilon_col(sigma: f64) -> Result<f64, SamplerError> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(SamplerError::Domain(format!(
            "sparsity {sigma} outside [0, 1]"
        )));
    }
    Ok((3.0 * sigma - sigma * sigma.sqrt()) / 6.0)
}

/// Codegree variant: `max(s/(1+2s) - (2s)^(3/2), epsilon_col(s))`.
pub fn epsilon_vu(sigma_hat: f64) -> Result<f64, SamplerError> {
    if !(0.0..=1.0).contains(&sigma_hat) {
        return Err(SamplerError::Domain(format!(
            "codegree sparsity {sigma_hat} outside [0, 1]"
        )));
    }
    let two_s = 2.0 * sigma_hat;
    let first = sigma_hat / (1.0 + two_s) - two_s * two_s.sqrt();
    Ok(first.max(epsilon_col(sigma_hat)?))
}

/// The point where the two branches of `epsilon_vu` cross: below it the
/// codegree branch wins, above it the plain sparsity branch takes over.
pub fn vu_crossover() -> f64 {
    let branch_gap = |s: f64| {
        let two_s = 2.0 * s;
        s / (1.0 + two_s) - two_s * two_s.sqrt() - (3.0 * s - s * s.sqrt()) / 6.0
    };
    let (mut lo, mut hi) = (1e-3, 0.2);
    debug_assert!(branch_gap(lo) > 0.0 && branch_gap(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if branch_gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Expected retention rate of one round: `1 - (1 - e^-gamma) / gamma`,
/// extended continuously by `mu(0) = 0`.
pub fn mu(gamma: f64) -> f64 {
    assert!(gamma >= 0.0, "mu needs gamma >= 0, got {gamma}");
    if gamma == 0.0 {
        0.0
    } else {
        1.0 - (1.0 - (-gamma).exp()) / gamma
    }
}

// ==========================================================================
// Colour-count calculator
// ==========================================================================

/// Which guarantee to evaluate.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// `(1 - epsilon_col(sigma) + iota) * delta` colours.
    Sparse { delta: usize, sigma: f64, iota: f64 },
    /// `(1 - epsilon_vu(sigma_hat) + iota) * delta` colours.
    Vu {
        delta: usize,
        sigma_hat: f64,
        iota: f64,
    },
    /// `1.772 * delta^2` strong edge colours.
    Strong { delta: usize },
    /// `ceil(0.881 (delta + 1) + 0.119 omega)` colours.
    Reed { delta: usize, omega: usize },
}

/// An evaluated guarantee: the raw real value and its integer ceiling.
#[derive(Debug, Clone, Serialize)]
pub struct ColourBound {
    pub kind: BoundKind,
    pub value: f64,
    pub colours: u64,
}

pub fn bound_calculator(kind: BoundKind) -> Result<ColourBound, SamplerError> {
    let value = match &kind {
        BoundKind::Sparse { delta, sigma, iota } => {
            check_iota(*iota)?;
            (1.0 - epsilon_col(*sigma)? + iota) * *delta as f64
        }
        BoundKind::Vu {
            delta,
            sigma_hat,
            iota,
        } => {
            check_iota(*iota)?;
            (1.0 - epsilon_vu(*sigma_hat)? + iota) * *delta as f64
        }
        BoundKind::Strong { delta } => 1.772 * (*delta as f64) * (*delta as f64),
        BoundKind::Reed { delta, omega } => {
            if *omega == 0 {
                return Err(SamplerError::Domain("clique number must be >= 1".into()));
            }
            0.881 * (*delta as f64 + 1.0) + 0.119 * *omega as f64
        }
    };
    Ok(ColourBound {
        kind,
        value,
        colours: value.ceil() as u64,
    })
}

fn check_iota(iota: f64) -> Result<(), SamplerError> {
    if iota < 0.0 {
        return Err(SamplerError::Domain(format!(
            "slack iota must be nonnegative, got {iota}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;
    use crate::rational::{big_binomial, rat64_to_big};
    use num::rational::Ratio;
    use num::ToPrimitive;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    // ---- membership ----

    #[test]
    fn triangle_membership_is_seven_twentyfourths() {
        let g = construct::complete(3).unwrap();
        let cfg = SamplerConfig::new(1.0, 0);
        let p = membership_probability_exact(&g, 0, &cfg).unwrap();
        approx(p, 7.0 / 24.0, 1e-15);

        let a = rat64_to_big(&Ratio::new(1, 2));
        let exact = membership_probability_rational(2, &a);
        assert_eq!(exact, rat64_to_big(&Ratio::new(7, 24)));
    }

    #[test]
    fn k4_membership_matches_closed_form_exactly() {
        let g = construct::complete(4).unwrap();
        let cfg = SamplerConfig::new(1.5, 0);
        let p = membership_probability_exact(&g, 2, &cfg).unwrap();
        // Dyadic activation, so both routes are exact in binary floats.
        assert_eq!(p, 0.234375);
        assert_eq!(membership_probability_closed_form(3, 1.5).unwrap(), 0.234375);
    }

    #[test]
    fn sum_and_closed_form_agree_on_regular_degrees() {
        for &(delta, gamma) in &[(2usize, 1.0), (5, 2.5), (20, 2.0), (100, 10.0), (7, 7.0)] {
            let a = gamma / delta as f64;
            let sum = membership_from_activation(delta, a);
            let closed = membership_probability_closed_form(delta, gamma).unwrap();
            approx(sum, closed, 1e-14);
        }
    }

    #[test]
    fn irregular_graphs_use_their_own_degree() {
        // Star with 4 leaves, gamma = 2 against delta = 4: activation 1/2.
        let g = construct::star(4).unwrap();
        let cfg = SamplerConfig::new(2.0, 0);
        let centre = membership_probability_exact(&g, 0, &cfg).unwrap();
        let leaf = membership_probability_exact(&g, 1, &cfg).unwrap();
        approx(centre, (1.0 - 0.5f64.powi(5)) / 5.0, 1e-15);
        assert_eq!(leaf, 0.375);
    }

    #[test]
    fn rational_sum_matches_float_on_small_cases() {
        for degree in 0..6usize {
            for &(num, den) in &[(1i64, 4i64), (1, 2), (3, 4), (1, 1)] {
                let a = rat64_to_big(&Ratio::new(num, den));
                let exact = membership_probability_rational(degree, &a);
                let float = membership_from_activation(degree, num as f64 / den as f64);
                approx(exact.to_f64().unwrap(), float, 1e-12);
            }
        }
    }

    #[test]
    fn bracket_contains_the_closed_form() {
        for &(delta, gamma) in &[(3usize, 1.5), (20, 2.0), (60, 5.0), (500, 10.0)] {
            let p = membership_probability_closed_form(delta, gamma).unwrap();
            let (lo, hi) = membership_bracket(delta, gamma);
            assert!(lo <= p && p <= hi, "delta {delta} gamma {gamma}: {lo} {p} {hi}");
        }
    }

    #[test]
    fn binomial_helper_matches_multiplicative_definition() {
        assert_eq!(big_binomial(5, 2), rat64_to_big(&Ratio::from_integer(10)));
    }

    // ---- pair prediction ----

    #[test]
    fn petersen_pair_prediction_is_three_fifths() {
        let g = construct::petersen();
        let cfg = SamplerConfig::new(2.0, 0);
        let predicted = expected_pairs_formula(&g, 0, &cfg).unwrap();
        approx(predicted, 0.6, 1e-12);
    }

    #[test]
    fn clique_neighbourhoods_predict_no_pairs() {
        let g = construct::complete(5).unwrap();
        let cfg = SamplerConfig::new(1.0, 0);
        assert_eq!(expected_pairs_formula(&g, 0, &cfg).unwrap(), 0.0);
    }

    // ---- epsilon functions ----

    #[test]
    fn epsilon_col_endpoints_and_monotonicity() {
        assert_eq!(epsilon_col(0.0).unwrap(), 0.0);
        assert_eq!(epsilon_col(1.0).unwrap(), 1.0 / 3.0);
        let mut prev = -1.0;
        for i in 0..=100 {
            let value = epsilon_col(i as f64 / 100.0).unwrap();
            assert!(value > prev);
            prev = value;
        }
        assert!(epsilon_col(1.1).is_err());
        assert!(epsilon_col(-0.1).is_err());
    }

    #[test]
    fn epsilon_vu_picks_the_better_branch() {
        // Small codegree sparsity: the codegree branch dominates.
        let small = epsilon_vu(0.01).unwrap();
        assert!(small > epsilon_col(0.01).unwrap());
        approx(small, 0.01 / 1.02 - 0.02f64 * 0.02f64.sqrt(), 1e-15);
        // Large: falls back to the plain sparsity branch.
        assert_eq!(epsilon_vu(0.5).unwrap(), epsilon_col(0.5).unwrap());
    }

    #[test]
    fn crossover_sits_between_the_branches() {
        let s = vu_crossover();
        assert!(s > 0.028 && s < 0.029, "crossover {s}");
        assert!(epsilon_vu(s - 1e-3).unwrap() > epsilon_col(s - 1e-3).unwrap());
        assert_eq!(
            epsilon_vu(s + 1e-3).unwrap(),
            epsilon_col(s + 1e-3).unwrap()
        );
    }

    #[test]
    fn mu_matches_hand_values() {
        approx(mu(1.0), (-1.0f64).exp(), 1e-15);
        approx(mu(2.0), 1.0 - (1.0 - (-2.0f64).exp()) / 2.0, 1e-15);
        assert_eq!(mu(0.0), 0.0);
        assert!(mu(20.0) > 0.95);
    }

    // ---- bounds ----

    #[test]
    fn reed_bound_example() {
        let b = bound_calculator(BoundKind::Reed {
            delta: 100,
            omega: 50,
        })
        .unwrap();
        assert_eq!(b.colours, 95);
    }

    #[test]
    fn strong_bound_scales_quadratically() {
        let b = bound_calculator(BoundKind::Strong { delta: 10 }).unwrap();
        approx(b.value, 177.2, 1e-9);
        assert_eq!(b.colours, 178);
    }

    #[test]
    fn sparse_bound_uses_epsilon_col() {
        let b = bound_calculator(BoundKind::Sparse {
            delta: 100,
            sigma: 1.0,
            iota: 0.05,
        })
        .unwrap();
        approx(b.value, (1.0 - 1.0 / 3.0 + 0.05) * 100.0, 1e-9);
        assert_eq!(b.colours, 72);
    }

    #[test]
    fn vu_bound_uses_epsilon_vu() {
        let b = bound_calculator(BoundKind::Vu {
            delta: 50,
            sigma_hat: 0.01,
            iota: 0.0,
        })
        .unwrap();
        let expected = (1.0 - epsilon_vu(0.01).unwrap()) * 50.0;
        approx(b.value, expected, 1e-12);
    }

    #[test]
    fn bound_domains_are_enforced() {
        assert!(bound_calculator(BoundKind::Sparse {
            delta: 10,
            sigma: 2.0,
            iota: 0.0,
        })
        .is_err());
        assert!(bound_calculator(BoundKind::Reed { delta: 10, omega: 0 }).is_err());
        assert!(bound_calculator(BoundKind::Sparse {
            delta: 10,
            sigma: 0.5,
            iota: -0.2,
        })
        .is_err());
    }
}
