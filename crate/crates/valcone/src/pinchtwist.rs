//! Two degenerating families with the same boundary length function.
//!
//! Both families are two-generator subgroups of SL(2, ℝ).  The pinch
//! family shrinks the translation length of the generator a like 1/k
//! while the crossing generator b grows like eᵏ; the twist family keeps
//! a fixed and composes b with an increasingly large diagonal factor.
//! Rescaled by λ_k = ln(2 + Σ tr(γγᵗ)), the per-word length vectors of
//! the two families converge to the same projective limit even though
//! the families are very different, and the difference is recovered by a
//! finer observable: tr(ρ_k(a)) − 2 decays like k⁻² along the pinch but
//! stays constant along the twist.  The natural scale μ_k is read off
//! the trace sum itself, as e^(λ_k/2) ≈ eᵏ for the pinch and
//! λ_k/(2π) ≈ k for the twist.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

type M2 = [[f64; 2]; 2];

fn mul(a: M2, b: M2) -> M2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn inv(a: M2) -> M2 {
    // Determinant one throughout.
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

fn frob(a: M2) -> f64 {
    a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1]
}

fn trace(a: M2) -> f64 {
    a[0][0] + a[1][1]
}

/// ln of the top eigenvalue magnitude of a determinant-one matrix; zero
/// on the elliptic and parabolic locus.
fn ln_top(a: M2) -> f64 {
    let half = trace(a).abs() / 2.0;
    if half <= 1.0 {
        0.0
    } else {
        (half + (half * half - 1.0).sqrt()).ln()
    }
}

/// One family member: scales and rescaled length data at parameter k.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySample {
    /// The family parameter.
    pub k: f64,
    /// λ = ln(2 + Σ_{γ ∈ {a,b,a⁻¹,b⁻¹}} tr(γγᵗ)), the rescaling divisor.
    pub lambda: f64,
    /// The adapted scale read off the trace sum.
    pub scale: f64,
    /// tr(ρ_k(a)) − 2, the separating observable.
    pub trace_gap: f64,
    /// Word → (ln λ₊, −ln λ₊)/λ, the rescaled length pair.
    pub rescaled: BTreeMap<String, [f64; 2]>,
    /// All rescaled pairs concatenated in word order and ℓ¹-normalized.
    pub direction: Vec<f64>,
}

/// The demonstration output: both families side by side.
#[derive(Debug, Clone, Serialize)]
pub struct PinchTwistReport {
    /// Words measured, in display form.
    pub words: Vec<String>,
    /// Pinch family samples in increasing k.
    pub pinch: Vec<FamilySample>,
    /// Twist family samples in increasing k.
    pub twist: Vec<FamilySample>,
    /// Sup-distance between the two final direction vectors.
    pub direction_gap: f64,
    /// Log-log slope of tr(ρ_k(a)) − 2 against k for the pinch family.
    pub pinch_trace_slope: f64,
    /// Same slope for the twist family.
    pub twist_trace_slope: f64,
    /// ln(scale)/k at the last pinch sample; 1 means scale ≈ eᵏ.
    pub pinch_scale_ratio: f64,
    /// scale/k at the last twist sample; 1 means scale ≈ k.
    pub twist_scale_ratio: f64,
}

const KS: [f64; 4] = [5.0, 10.0, 15.0, 20.0];

/// The measured words: a, b, ab, ab⁻¹, bb.
fn word_list(a: M2, b: M2) -> Vec<(String, M2)> {
    vec![
        ("a".to_owned(), a),
        ("b".to_owned(), b),
        ("a b".to_owned(), mul(a, b)),
        ("a b^-1".to_owned(), mul(a, inv(b))),
        ("b b".to_owned(), mul(b, b)),
    ]
}

fn sample(a: M2, b: M2, k: f64, scale_of_lambda: impl Fn(f64) -> f64) -> FamilySample {
    let lambda = (2.0 + frob(a) + frob(b) + frob(inv(a)) + frob(inv(b))).ln();
    let words = word_list(a, b);
    let mut rescaled = BTreeMap::new();
    let mut flat = Vec::with_capacity(2 * words.len());
    for (name, m) in &words {
        let x = ln_top(*m) / lambda;
        rescaled.insert(name.clone(), [x, -x]);
        flat.push(x);
        flat.push(-x);
    }
    let total: f64 = flat.iter().map(|x| x.abs()).sum();
    let direction = flat.iter().map(|x| x / total).collect();
    FamilySample {
        k,
        lambda,
        scale: scale_of_lambda(lambda),
        trace_gap: trace(a) - 2.0,
        rescaled,
        direction,
    }
}

fn pinch_generators(k: f64) -> (M2, M2) {
    let e = (0.5 / k).exp();
    let a = [[e, 0.0], [0.0, 1.0 / e]];
    let b = [[k.cosh(), k.sinh()], [k.sinh(), k.cosh()]];
    (a, b)
}

fn twist_generators(k: f64) -> (M2, M2) {
    let e = 0.5f64.exp();
    let a = [[e, 0.0], [0.0, 1.0 / e]];
    let b0 = [[1.0f64.cosh(), 1.0f64.sinh()], [1.0f64.sinh(), 1.0f64.cosh()]];
    let t = (PI * k).exp();
    let b = mul([[t, 0.0], [0.0, 1.0 / t]], b0);
    (a, b)
}

/// Least squares slope of ln y against ln x.
fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Builds both families, their common projective limit data, and the
/// observables separating them.
pub fn pinch_twist_demo() -> PinchTwistReport {
    let words = word_list(pinch_generators(1.0).0, pinch_generators(1.0).1)
        .into_iter()
        .map(|(name, _)| name)
        .collect::<Vec<_>>();
    let pinch: Vec<FamilySample> = KS
        .iter()
        .map(|&k| {
            let (a, b) = pinch_generators(k);
            sample(a, b, k, |lambda| (lambda / 2.0).exp())
        })
        .collect();
    let twist: Vec<FamilySample> = KS
        .iter()
        .map(|&k| {
            let (a, b) = twist_generators(k);
            sample(a, b, k, |lambda| lambda / (2.0 * PI))
        })
        .collect();

    let last_p = pinch.last().expect("nonempty samples");
    let last_t = twist.last().expect("nonempty samples");
    let direction_gap = last_p
        .direction
        .iter()
        .zip(&last_t.direction)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0_f64, f64::max);

    let gaps = |fam: &[FamilySample]| -> Vec<f64> { fam.iter().map(|s| s.trace_gap).collect() };
    let ks: Vec<f64> = KS.to_vec();
    PinchTwistReport {
        words,
        direction_gap,
        pinch_trace_slope: loglog_slope(&ks, &gaps(&pinch)),
        twist_trace_slope: loglog_slope(&ks, &gaps(&twist)),
        pinch_scale_ratio: last_p.scale.ln() / last_p.k,
        twist_scale_ratio: last_t.scale / last_t.k,
        pinch,
        twist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_share_a_projective_limit() {
        let report = pinch_twist_demo();
        assert!(
            report.direction_gap <= 0.05,
            "directions differ by {}",
            report.direction_gap
        );
        // The agreement is in fact much tighter than the headline bound.
        assert!(report.direction_gap <= 0.005);
    }

    #[test]
    fn trace_growth_orders_separate_the_families() {
        let report = pinch_twist_demo();
        assert!(
            (report.pinch_trace_slope + 2.0).abs() < 0.05,
            "pinch slope {}",
            report.pinch_trace_slope
        );
        assert!(
            report.twist_trace_slope.abs() < 0.01,
            "twist slope {}",
            report.twist_trace_slope
        );
    }

    #[test]
    fn adapted_scales_follow_the_trace_sums() {
        // Both ratios approach 1 with O(1/k) corrections; at k = 20 the
        // constant offsets (ln 2)/2 resp. ln(2 cosh 2)/(2π) leave ≈ 1.7%.
        let report = pinch_twist_demo();
        assert!((report.pinch_scale_ratio - 1.0).abs() < 0.05);
        assert!((report.twist_scale_ratio - 1.0).abs() < 0.05);
    }

    #[test]
    fn directions_are_l1_normalized_and_lambdas_increase() {
        let report = pinch_twist_demo();
        for fam in [&report.pinch, &report.twist] {
            for s in fam.iter() {
                let total: f64 = s.direction.iter().map(|x| x.abs()).sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
            assert!(fam.windows(2).all(|w| w[0].lambda < w[1].lambda));
        }
    }

    #[test]
    fn pinch_lengths_match_the_hyperbolic_picture() {
        // At the last sample the b-like words carry rescaled length 1/2
        // and bb carries 1, up to O(1/k) corrections.
        let report = pinch_twist_demo();
        let last = report.pinch.last().unwrap();
        assert!(last.rescaled["a"][0] < 0.01);
        assert!((last.rescaled["b"][0] - 0.5).abs() < 0.02);
        assert!((last.rescaled["b b"][0] - 1.0).abs() < 0.02);
    }
}
