//! End-to-end checks of the toolkit, one numbered criterion per test.
//!
//! Each test prints a single `ACCEPTANCE <n> <name>: PASS` or `... FAIL`
//! line so the whole gate can be read off a test run at a glance.  All
//! tolerances are pinned here, next to the assertions that use them.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use valcone_core::char_variety::{
    closed_point_witness, minimality_residual, minimize_real, trace_inequality_ratio, CharVarError,
};
use valcone_core::cross_ratio::{chi_k_log, period, sym_log_cr, Flag};
use valcone_core::degeneration::length_function;
use valcone_core::matrix_algebra::{Budget, GroupWord, Matrix, Representation};
use valcone_core::puiseux_field::{
    log_big, parse_textual, rat, rat_int, FieldElem, Rat, Valuation,
};
use valcone_core::sampling::{
    generator_name, random_field_elem, random_minimal_sl2_rep, random_nonzero_field_elem,
    random_rat, random_sl2_field, rng,
};
use valcone_core::valued_spectra::{
    distance, jordan_vector, translation_length, NormValue, WeylNorm, WeylVector,
};

use valcone::cone::cone_consistency;
use valcone::pinchtwist::pinch_twist_demo;

/// Writes the verdict line straight to the process stdout so it shows up
/// even under the default harness capture.
fn report(number: usize, name: &str, verdict: &str) {
    use std::io::Write;
    let line = format!("ACCEPTANCE {number} {name}: {verdict}\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn criterion(number: usize, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => report(number, name, "PASS"),
        Err(cause) => {
            report(number, name, "FAIL");
            resume_unwind(cause);
        }
    }
}

fn budget() -> Budget {
    Budget::unlimited()
}

fn power(g: &Matrix<FieldElem>, k: u32) -> Matrix<FieldElem> {
    let mut out = Matrix::identity(g.rows());
    for _ in 0..k {
        out = out.mul(g, &budget()).unwrap();
    }
    out
}

#[test]
fn acceptance_01_field_and_order_axioms() {
    criterion(1, "field and order axioms", || {
        let start = Instant::now();
        let mut r = rng(101);
        for _ in 0..500 {
            let a = random_field_elem(&mut r, 3);
            let b = random_field_elem(&mut r, 3);
            let c = random_field_elem(&mut r, 3);

            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &FieldElem::from_int(0), a);
            assert_eq!(&a * &FieldElem::from_int(1), a);
            assert!((&a - &a).is_zero());
            if !a.is_zero() {
                let inv = a.inverse().unwrap();
                assert!((&a * &inv).is_one());
            }

            // Total order: trichotomy against the sign of the difference,
            // translation invariance, and closure of positives.
            let diff = &a - &b;
            assert_eq!(a.cmp(&b), diff.sign().cmp(&0));
            assert_eq!((&a + &c).cmp(&(&b + &c)), a.cmp(&b));
            if a.sign() > 0 && b.sign() > 0 {
                assert!((&a + &b).sign() > 0);
                assert!((&a * &b).sign() > 0);
            }
        }
        assert!(start.elapsed().as_secs_f64() < 10.0, "axiom sweep too slow");
    });
}

#[test]
fn acceptance_02_valuation_laws_and_logarithm() {
    criterion(2, "valuation laws and logarithm", || {
        let mut r = rng(202);
        for _ in 0..500 {
            let a = random_field_elem(&mut r, 3);
            let b = random_field_elem(&mut r, 3);
            assert_eq!((&a * &b).val(), a.val().add(&b.val()));
            let sum_val = (&a + &b).val();
            let min = a.val().min(b.val());
            assert!(sum_val >= min);
            if a.val() != b.val() {
                assert_eq!(sum_val, min);
            }
        }

        let tol = rat(1, 64);
        let base = FieldElem::t();
        let mut done = 0usize;
        while done < 200 {
            let a = random_nonzero_field_elem(&mut r, 3).abs();
            let v = match a.val() {
                Valuation::Finite(v) => v,
                Valuation::Infinite => continue,
            };
            let (lo, hi) = log_big(&a, &base, &tol).unwrap();
            assert!(&hi - &lo <= tol, "bracket wider than 1/64");
            assert!(lo <= -v.clone() && -v <= hi, "bracket misses -val");
            done += 1;
        }
    });
}

#[test]
fn acceptance_03_jordan_matches_the_quadratic_oracle() {
    criterion(3, "jordan matches the quadratic oracle", || {
        let mut r = rng(303);
        for _ in 0..200 {
            let g = random_sl2_field(&mut r, 4);
            // For g in SL(2) the eigenvalue valuations come straight from
            // the trace: the Newton polygon of X^2 - tr(g) X + 1 has slopes
            // (val tr, -val tr) when val tr < 0 and (0, 0) otherwise.
            let e = match g.trace().unwrap().val() {
                Valuation::Finite(v) if v < Rat::zero() => -v,
                _ => Rat::zero(),
            };
            let expected = WeylVector::new(vec![e.clone(), -e]).unwrap();
            assert_eq!(jordan_vector(&g, &budget()).unwrap(), expected);
        }
    });
}

#[test]
fn acceptance_04_translation_length_laws() {
    criterion(4, "translation length laws", || {
        let mut r = rng(404);
        let norms = [WeylNorm::Euclidean, WeylNorm::L1];

        for _ in 0..100 {
            let g = random_sl2_field(&mut r, 3);
            let h = random_sl2_field(&mut r, 3);
            let conj = h
                .mul(&g, &budget())
                .unwrap()
                .mul(&h.inverse_unimodular(&budget()).unwrap(), &budget())
                .unwrap();
            assert_eq!(
                jordan_vector(&g, &budget()).unwrap(),
                jordan_vector(&conj, &budget()).unwrap()
            );
            for norm in &norms {
                assert_eq!(
                    translation_length(&g, norm, &budget()).unwrap(),
                    translation_length(&conj, norm, &budget()).unwrap()
                );
            }
        }

        for _ in 0..100 {
            let g = random_sl2_field(&mut r, 3);
            let base = jordan_vector(&g, &budget()).unwrap();
            for k in 2u32..=5 {
                assert_eq!(
                    jordan_vector(&power(&g, k), &budget()).unwrap(),
                    base.scale(&rat_int(i64::from(k)))
                );
            }
        }

        for _ in 0..100 {
            let h = random_sl2_field(&mut r, 3);
            let x = random_field_elem(&mut r, 2);
            let one = FieldElem::from_int(1);
            let zero = FieldElem::from_int(0);
            let uni = Matrix::from_rows(vec![vec![one.clone(), x], vec![zero, one]]).unwrap();
            let conj = h
                .mul(&uni, &budget())
                .unwrap()
                .mul(&h.inverse_unimodular(&budget()).unwrap(), &budget())
                .unwrap();
            for norm in &norms {
                assert!(translation_length(&conj, norm, &budget()).unwrap().is_zero());
            }
        }

        for _ in 0..100 {
            let g = random_sl2_field(&mut r, 3);
            let ginv = g.inverse_unimodular(&budget()).unwrap();
            for norm in &norms {
                assert_eq!(
                    translation_length(&g, norm, &budget()).unwrap(),
                    translation_length(&ginv, norm, &budget()).unwrap()
                );
            }
        }
    });
}

#[test]
fn acceptance_05_distance_symmetry_and_triangle() {
    criterion(5, "distance symmetry and triangle", || {
        const MARGIN: f64 = 1e-9;
        let mut r = rng(505);
        for _ in 0..200 {
            let g = random_sl2_field(&mut r, 3);
            let h = random_sl2_field(&mut r, 3);
            let k = random_sl2_field(&mut r, 3);
            for norm in [WeylNorm::Euclidean, WeylNorm::Sup] {
                let gh = distance(&g, &h, &norm, &budget()).unwrap();
                let hg = distance(&h, &g, &norm, &budget()).unwrap();
                assert_eq!(gh, hg);
                let gg = distance(&g, &g, &norm, &budget()).unwrap();
                assert!(gg.is_zero());

                let hk = distance(&h, &k, &norm, &budget()).unwrap();
                let gk = distance(&g, &k, &norm, &budget()).unwrap();
                match (&gh, &hk, &gk) {
                    (
                        NormValue::Rational(a),
                        NormValue::Rational(b),
                        NormValue::Rational(c),
                    ) => assert!(c <= &(a + b)),
                    _ => assert!(
                        gk.to_f64() <= gh.to_f64() + hk.to_f64() + MARGIN,
                        "triangle inequality violated beyond the margin"
                    ),
                }
            }
        }
    });
}

#[test]
fn acceptance_06_minimal_vector_flow() {
    criterion(6, "minimal vector flow", || {
        let mut r = rng(606);

        // Diagonal tuples sit on the minimal locus exactly.
        for _ in 0..20 {
            let mut gens = BTreeMap::new();
            for i in 0..2usize {
                let lambda: f64 = r.gen_range(1.2..2.5);
                let m =
                    Matrix::from_rows(vec![vec![lambda, 0.0], vec![0.0, 1.0 / lambda]]).unwrap();
                gens.insert(generator_name(i), m);
            }
            let rep = Representation::new(2, gens, true).unwrap();
            assert_eq!(minimality_residual(&rep).max_abs, 0.0);
        }

        // Conjugated diagonal tuples flow back to residual <= 1e-8 while
        // preserving traces.
        for _ in 0..50 {
            let theta: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let s: f64 = r.gen_range(-1.2..1.2);
            let shear = Matrix::from_rows(vec![vec![1.0, s], vec![0.0, 1.0]]).unwrap();
            let rot = Matrix::from_rows(vec![
                vec![theta.cos(), -theta.sin()],
                vec![theta.sin(), theta.cos()],
            ])
            .unwrap();
            let conj = rot.mul(&shear, &budget()).unwrap();
            let conj_inv = Matrix::from_rows(vec![vec![1.0, -s], vec![0.0, 1.0]])
                .unwrap()
                .mul(
                    &Matrix::from_rows(vec![
                        vec![theta.cos(), theta.sin()],
                        vec![-theta.sin(), theta.cos()],
                    ])
                    .unwrap(),
                    &budget(),
                )
                .unwrap();

            let mut gens = BTreeMap::new();
            let mut traces = Vec::new();
            for i in 0..2usize {
                let lambda: f64 = r.gen_range(1.2..2.5);
                let diag =
                    Matrix::from_rows(vec![vec![lambda, 0.0], vec![0.0, 1.0 / lambda]]).unwrap();
                let m = conj
                    .mul(&diag, &budget())
                    .unwrap()
                    .mul(&conj_inv, &budget())
                    .unwrap();
                traces.push(m.trace().unwrap());
                gens.insert(generator_name(i), m);
            }
            let rep = Representation::new(2, gens, true).unwrap();
            let outcome = minimize_real(&rep, 0.1, 1e-8, 10_000).unwrap();
            assert!(outcome.converged);
            assert!(outcome.report.max_abs <= 1e-8);
            for (i, name) in outcome.rep.names().enumerate() {
                let trace = outcome.rep.generator(name).unwrap().trace().unwrap();
                let drift = (trace - traces[i]).abs();
                assert!(drift <= 1e-6, "trace drift {drift} on {name}");
            }
        }

        // A unipotent never reaches the tolerance, but its squared tuple
        // norm flows down to the infimum 2.
        let uni = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let mut gens = BTreeMap::new();
        gens.insert("a".to_string(), uni);
        let rep = Representation::new(2, gens, true).unwrap();
        match minimize_real(&rep, 0.1, 1e-12, 10_000) {
            Err(CharVarError::NoConvergence(outcome)) => {
                assert!((outcome.norm_sq - 2.0).abs() <= 1e-3);
            }
            other => panic!("unipotent flow should not converge, got {other:?}"),
        }
    });
}

#[test]
fn acceptance_07_trace_ratio_stability() {
    criterion(7, "trace ratio stability", || {
        let start = Instant::now();
        let mut maxima = Vec::new();
        for seed in [11u64, 12u64] {
            let mut r = rng(seed);
            let mut max_ratio = 0.0f64;
            for _ in 0..100 {
                let rep = random_minimal_sl2_rep(&mut r, 2);
                let ratio = trace_inequality_ratio(&rep).unwrap();
                let value = ratio.to_f64().unwrap();
                assert!(value.is_finite() && value >= 0.0);
                max_ratio = max_ratio.max(value);
            }
            maxima.push(max_ratio);
        }
        let quotient = maxima[0] / maxima[1];
        assert!(
            (0.5..=2.0).contains(&quotient),
            "seed-to-seed maxima differ by more than a factor of 2: {maxima:?}"
        );
        assert!(start.elapsed().as_secs_f64() < 60.0, "ratio sweep too slow");
    });
}

#[test]
fn acceptance_08_closed_point_witness_agreement() {
    criterion(8, "closed point witness agreement", || {
        let mut r = rng(808);
        // Exactly normal generators keep the tuple on the minimal locus:
        // constant diagonals and rational rotations for the bounded half,
        // diagonal monomials for the unbounded half.
        let rotation = |p: i64, q: i64, d: i64| {
            let c = FieldElem::from_rat(rat(p, d));
            let s = FieldElem::from_rat(rat(q, d));
            Matrix::from_rows(vec![vec![c.clone(), -&s], vec![s, c]]).unwrap()
        };
        let rotations = [rotation(3, 4, 5), rotation(5, 12, 13), rotation(8, 15, 17)];

        for case in 0..50usize {
            let unbounded = case >= 25;
            let mut gens = BTreeMap::new();
            for i in 0..2usize {
                let m = if unbounded && i == 0 {
                    let k: i64 = *[-2, -1, 1, 2].get(r.gen_range(0..4)).unwrap();
                    let coeff: i64 = r.gen_range(1..=4);
                    let entry = FieldElem::monomial(rat_int(coeff), rat(k, 2));
                    Matrix::from_rows(vec![
                        vec![entry.clone(), FieldElem::from_int(0)],
                        vec![FieldElem::from_int(0), entry.inverse().unwrap()],
                    ])
                    .unwrap()
                } else if r.gen_bool(0.5) {
                    let q = random_rat(&mut r).abs();
                    let entry = FieldElem::from_rat(q);
                    Matrix::from_rows(vec![
                        vec![entry.clone(), FieldElem::from_int(0)],
                        vec![FieldElem::from_int(0), entry.inverse().unwrap()],
                    ])
                    .unwrap()
                } else {
                    rotations[r.gen_range(0..rotations.len())].clone()
                };
                gens.insert(generator_name(i), m);
            }
            let rep = Representation::new(2, gens, true).unwrap();

            let direct = rep
                .words_up_to(3)
                .iter()
                .filter(|w| !w.is_empty())
                .any(|w| {
                    let g = rep.eval_word(w, &budget()).unwrap();
                    !jordan_vector(&g, &budget()).unwrap().is_zero()
                });
            assert_eq!(direct, unbounded, "crafted case {case} mislabelled");

            let witness = closed_point_witness(&rep, &budget()).unwrap();
            assert_eq!(witness, unbounded, "witness disagrees in case {case}");
        }
    });
}

#[test]
fn acceptance_09_cone_deviation_schedule() {
    criterion(9, "cone deviation schedule", || {
        let a = Matrix::from_rows(vec![
            vec![parse_textual("t + 1").unwrap(), FieldElem::from_int(1)],
            vec![FieldElem::t(), FieldElem::from_int(1)],
        ])
        .unwrap();
        let mut gens = BTreeMap::new();
        gens.insert("a".to_string(), a);
        let rep = Representation::new(2, gens, false).unwrap();
        let words = vec![GroupWord::parse("a").unwrap()];

        let trace =
            cone_consistency(&rep, &words, &[1e2, 1e4, 1e6], &Budget::unlimited()).unwrap();
        let bounds = [0.2, 0.1, 0.05];
        assert_eq!(trace.samples.len(), bounds.len());
        for (sample, bound) in trace.samples.iter().zip(bounds) {
            let dev = sample.deviation["a"];
            assert!(
                dev <= bound,
                "deviation {dev} exceeds {bound} at s = {}",
                sample.s
            );
        }
        let extrapolated = trace.extrapolation["a"].deviation;
        assert!(
            extrapolated <= 0.01,
            "extrapolated deviation {extrapolated} exceeds 0.01"
        );
    });
}

#[test]
fn acceptance_10_pinch_twist_separation() {
    criterion(10, "pinch twist separation", || {
        let report = pinch_twist_demo();
        assert!(
            report.direction_gap <= 0.05,
            "projectivized limits differ by {}",
            report.direction_gap
        );
        assert!(
            report.pinch_trace_slope <= -1.0,
            "pinch traces do not decay: slope {}",
            report.pinch_trace_slope
        );
        assert!(
            report.twist_trace_slope.abs() <= 0.1,
            "twist traces are not flat: slope {}",
            report.twist_trace_slope
        );
    });
}

#[test]
fn acceptance_11_cross_ratio_invariances_and_periods() {
    criterion(11, "cross ratio invariances and periods", || {
        let mut r = rng(1111);
        let one = FieldElem::from_int(1);
        let line = |c: &FieldElem| Flag::line(vec![one.clone(), c.clone()]).unwrap();

        for _ in 0..100 {
            // Five pairwise distinct parameters give five transverse lines
            // (1, c_i) in the plane.
            let mut params: Vec<FieldElem> = Vec::new();
            while params.len() < 5 {
                let c = random_field_elem(&mut r, 2);
                if params.iter().all(|p| p != &c) {
                    params.push(c);
                }
            }
            let flags: Vec<Flag> = params.iter().map(&line).collect();
            let s = |i: usize, j: usize, k: usize, l: usize| {
                sym_log_cr(&flags[i], &flags[j], &flags[k], &flags[l], false, &budget())
                    .unwrap()
            };
            let base = s(0, 1, 3, 4);

            // Lift independence: rescaling the spanning vectors changes
            // nothing.
            let scaled: Vec<Flag> = params
                .iter()
                .map(|c| {
                    let u = random_nonzero_field_elem(&mut r, 2);
                    Flag::line(vec![u.clone(), &u * c]).unwrap()
                })
                .collect();
            assert_eq!(
                sym_log_cr(&scaled[0], &scaled[1], &scaled[3], &scaled[4], false, &budget())
                    .unwrap(),
                base
            );

            // Invariance under the group action.
            let g = random_sl2_field(&mut r, 3);
            let moved: Vec<Flag> =
                flags.iter().map(|f| f.apply(&g, &budget()).unwrap()).collect();
            assert_eq!(
                sym_log_cr(&moved[0], &moved[1], &moved[3], &moved[4], false, &budget())
                    .unwrap(),
                base
            );

            // Additive cocycle over the middle slot.
            assert_eq!(base, s(0, 1, 2, 4) + s(0, 2, 3, 4));
        }

        // Periods against the length pairing, rank one and rank three.
        let g2 = Matrix::from_rows(vec![
            vec![FieldElem::t(), FieldElem::from_int(0)],
            vec![FieldElem::from_int(0), FieldElem::t().inverse().unwrap()],
        ])
        .unwrap();
        let mut gens = BTreeMap::new();
        gens.insert("a".to_string(), g2.clone());
        let rep2 = Representation::new(2, gens, false).unwrap();
        let attracting = Flag::line(vec![FieldElem::from_int(1), FieldElem::from_int(0)]).unwrap();
        let repelling = Flag::line(vec![FieldElem::from_int(0), FieldElem::from_int(1)]).unwrap();
        let x = Flag::line(vec![FieldElem::from_int(1), FieldElem::from_int(1)]).unwrap();
        let gamma = GroupWord::parse("a").unwrap();
        let p2 = period(&rep2, &gamma, &attracting, &repelling, &x, &budget()).unwrap();
        assert_eq!(p2, rat_int(2));
        assert_eq!(p2, chi_k_log(&g2, 1, &budget()).unwrap());

        let e = |k: i64| FieldElem::monomial(rat_int(1), rat_int(k));
        let zero = || FieldElem::from_int(0);
        let g4 = Matrix::from_rows(vec![
            vec![e(2), zero(), zero(), zero()],
            vec![zero(), e(1), zero(), zero()],
            vec![zero(), zero(), e(-1), zero()],
            vec![zero(), zero(), zero(), e(-2)],
        ])
        .unwrap();
        let span = |rows: [[i64; 2]; 4]| {
            let m = Matrix::from_rows(
                rows.iter()
                    .map(|row| row.iter().map(|&v| FieldElem::from_int(v)).collect())
                    .collect(),
            )
            .unwrap();
            Flag::new(m.clone(), m).unwrap()
        };
        let mut gens = BTreeMap::new();
        gens.insert("a".to_string(), g4.clone());
        let rep4 = Representation::new(4, gens, false).unwrap();
        let att4 = span([[1, 0], [0, 1], [0, 0], [0, 0]]);
        let rep4_flag = span([[0, 0], [0, 0], [1, 0], [0, 1]]);
        let x4 = span([[1, 2], [3, 4], [5, 6], [7, 1]]);
        let p4 = period(&rep4, &gamma, &att4, &rep4_flag, &x4, &budget()).unwrap();
        assert_eq!(p4, rat_int(6));
        assert_eq!(p4, chi_k_log(&g4, 2, &budget()).unwrap());
    });
}

#[test]
fn acceptance_12_value_group_lattice() {
    criterion(12, "value group lattice", || {
        let diag = |num: Rat| {
            let entry = FieldElem::monomial(rat_int(1), num);
            Matrix::from_rows(vec![
                vec![entry.clone(), FieldElem::from_int(0)],
                vec![FieldElem::from_int(0), entry.inverse().unwrap()],
            ])
            .unwrap()
        };
        let mut gens = BTreeMap::new();
        gens.insert("a".to_string(), diag(rat(1, 2)));
        gens.insert("b".to_string(), diag(rat(1, 3)));
        let rep = Representation::new(2, gens, false).unwrap();
        let words = rep.words_up_to(3);
        let norms = [WeylNorm::Sup, WeylNorm::L1];

        let lengths = length_function(&rep, &words, &norms, &budget()).unwrap();
        let d = lengths.value_denominator();
        assert_eq!(d, BigInt::from(6));
        let d_rat = Rat::from_integer(d.clone());
        for word in &lengths.words {
            for coord in lengths.get(word).unwrap().coords() {
                assert!(
                    (coord * &d_rat).is_integer(),
                    "coordinate {coord} escapes the 1/{d} lattice"
                );
            }
        }

        let again = length_function(&rep, &words, &norms, &budget()).unwrap();
        assert_eq!(again.value_denominator(), d);
    });
}

#[test]
fn acceptance_13_cli_artifact_determinism() {
    criterion(13, "cli artifact determinism", || {
        use std::process::Command;

        let base = std::env::temp_dir().join(format!("valcone-acceptance-{}", std::process::id()));
        let fixtures = base.join("fixtures");
        std::fs::create_dir_all(&fixtures).unwrap();
        let diag = fixtures.join("diag.json");
        std::fs::write(
            &diag,
            r#"{"n":2,"field":"puiseux","symmetric":true,"generators":{"a":[["t","0"],["0","t^(-1)"]],"b":[["1","1"],["0","1"]]}}"#,
        )
        .unwrap();
        let cone = fixtures.join("cone.json");
        std::fs::write(
            &cone,
            r#"{"n":2,"field":"puiseux","generators":{"a":[["t + 1","1"],["t","1"]]}}"#,
        )
        .unwrap();
        let real = fixtures.join("real.json");
        std::fs::write(
            &real,
            r#"{"n":2,"field":"real","symmetric":true,"generators":{"a":[[2.0,-1.5],[0.0,0.5]]}}"#,
        )
        .unwrap();

        let diag_s = diag.to_str().unwrap().to_string();
        let cone_s = cone.to_str().unwrap().to_string();
        let real_s = real.to_str().unwrap().to_string();
        let jobs: Vec<(&str, Vec<String>)> = vec![
            (
                "length",
                vec![
                    "length".into(),
                    "--rep".into(),
                    diag_s.clone(),
                    "--words".into(),
                    "a,b,a b".into(),
                    "--norm".into(),
                    "euclid".into(),
                    "--norm".into(),
                    "sup,l1".into(),
                ],
            ),
            (
                "theta",
                vec![
                    "theta".into(),
                    "--rep".into(),
                    diag_s.clone(),
                    "--words".into(),
                    "a,a b".into(),
                ],
            ),
            (
                "degenerate",
                vec![
                    "degenerate".into(),
                    "--rep".into(),
                    cone_s.clone(),
                    "--words".into(),
                    "a".into(),
                    "--specialize".into(),
                    "1e2,1e4,1e6".into(),
                ],
            ),
            ("tracecoords", vec!["tracecoords".into(), "--rep".into(), diag_s.clone()]),
            ("minvec", vec!["minvec".into(), "--rep".into(), real_s.clone()]),
            (
                "crossratio",
                vec![
                    "crossratio".into(),
                    "--rep".into(),
                    diag_s.clone(),
                    "--gamma".into(),
                    "a".into(),
                ],
            ),
            ("demo-pinch-twist", vec!["demo-pinch-twist".into()]),
        ];

        for (name, args) in &jobs {
            let mut outputs = Vec::new();
            for (run, threads) in [("one", "1"), ("two", "4")] {
                let out_dir = base.join(name).join(run);
                std::fs::create_dir_all(&out_dir).unwrap();
                let mut cmd = Command::new(env!("CARGO_BIN_EXE_valcone"));
                cmd.args(args)
                    .arg("--out")
                    .arg(&out_dir)
                    .env("VALCONE_THREADS", threads);
                let output = cmd.output().unwrap();
                assert!(
                    output.status.success(),
                    "{name} run {run} failed: {}",
                    String::from_utf8_lossy(&output.stderr)
                );

                let mut files = BTreeMap::new();
                for entry in std::fs::read_dir(&out_dir).unwrap() {
                    let entry = entry.unwrap();
                    files.insert(
                        entry.file_name().to_string_lossy().into_owned(),
                        std::fs::read(entry.path()).unwrap(),
                    );
                }
                assert!(files.len() >= 2, "{name} run {run} produced too few artifacts");
                outputs.push(files);
            }
            let names_one: Vec<&String> = outputs[0].keys().collect();
            let names_two: Vec<&String> = outputs[1].keys().collect();
            assert_eq!(names_one, names_two, "{name} artifact sets differ");
            for (file, bytes) in &outputs[0] {
                assert_eq!(
                    bytes, &outputs[1][file],
                    "{name}/{file} differs between runs"
                );
            }
        }

        std::fs::remove_dir_all(&base).ok();
    });
}
