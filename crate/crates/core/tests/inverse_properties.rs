use pa1d::forward::{boundary_traces, DalembertSolution};
use pa1d::grid::unit_interval_points;
use pa1d::harness::reference_coefficients;
use pa1d::inverse::identities::{degenerate_coefficient, series_coefficient, unpadded_basis};
use pa1d::inverse::{
    assemble_extended_trace, denominator, reconstruct, recover_coefficients, ExtensionSign,
};
use pa1d::metrics::relative_l2;
use pa1d::observation::BoundaryTrace;
use pa1d::profile::{sample_extended, Profile};
use pa1d::quadrature::simpson;
use pa1d::spectral::{CoefficientVector, PaddingConfig};

fn cfg(t: u32) -> PaddingConfig {
    PaddingConfig::new(t).unwrap()
}

fn trace(p: &Profile, t: u32, n: u32) -> BoundaryTrace {
    let c = cfg(t);
    boundary_traces(&DalembertSolution::new(p, &c), n, t + 1, &c).unwrap()
}

fn unpadded_coefficients(p: &Profile, n: usize) -> CoefficientVector {
    let f = sample_extended(p.pressure(), 1.0, 4096).unwrap();
    unpadded_basis().analyze(&f, n).unwrap()
}

#[test]
fn recovered_coefficients_match_direct_analysis() {
    let c = cfg(2);
    let p = Profile::smooth();
    let ext = assemble_extended_trace(&trace(&p, 2, 100), &c).unwrap();
    let modes = recover_coefficients(&ext, 50, &c).unwrap();
    let reference = reference_coefficients(&p, &c, 50).unwrap();
    for &(k, v) in modes.entries() {
        let d = (v - reference.get(k).unwrap()).abs();
        assert!(d <= 1e-6, "k={k}: {d}");
    }
}

#[test]
fn degenerate_index_identity() {
    let c = cfg(2);
    let p = Profile::smooth();
    let padded = reference_coefficients(&p, &c, 9).unwrap();
    let unpadded = unpadded_coefficients(&p, 3);
    for n0 in 1..=3 {
        let expect = degenerate_coefficient(&unpadded, n0, &c).unwrap();
        let sign = if n0 % 2 == 0 { 1.0 } else { -1.0 };
        assert!((expect - sign * unpadded.get(n0).unwrap() / 3.0).abs() < 1e-15);
        assert!(
            (padded.get(3 * n0).unwrap() - expect).abs() <= 1e-8,
            "n0={n0}"
        );
    }
}

#[test]
fn proof_series_reproduces_quadrature_coefficients() {
    let p = Profile::smooth();
    let unpadded = unpadded_coefficients(&p, 200);
    for t in [1, 2, 3] {
        let c = cfg(t);
        let padded = reference_coefficients(&p, &c, 8).unwrap();
        for k in [1, 5, 7] {
            if k % (t as usize + 1) == 0 {
                continue;
            }
            let s = series_coefficient(&unpadded, k, &c).unwrap();
            let q = padded.get(k).unwrap();
            assert!((s - q).abs() <= 1e-5, "T={t} k={k}: {s} vs {q}");
            // the same series with prefactor 2/pi is short by 2(T + 1)
            let literal = s / (2.0 * c.radius());
            assert!((q / literal - 2.0 * c.radius()).abs() < 1e-6);
        }
    }
}

#[test]
fn extended_trace_residual_decreases_with_modes() {
    let c = cfg(2);
    let b = c.basis();
    let ext = assemble_extended_trace(&trace(&Profile::smooth(), 2, 100), &c).unwrap();
    let times = ext.samples().points();
    let mut last = f64::INFINITY;
    for k_max in [10, 20, 40, 80] {
        let modes = recover_coefficients(&ext, k_max, &c).unwrap();
        let sq: Vec<f64> = times
            .iter()
            .zip(ext.values())
            .map(|(&t, &f)| {
                let series: f64 = modes
                    .entries()
                    .iter()
                    .map(|&(k, a)| a * denominator(k, &c) * (b.frequency(k) * t).cos())
                    .sum();
                (f - series).powi(2)
            })
            .collect();
        let norm = simpson(&sq, ext.step()).unwrap().sqrt();
        assert!(norm < last, "K={k_max}: {norm} >= {last}");
        last = norm;
    }
}

#[test]
fn reconstruction_is_linear_in_the_data() {
    let c = cfg(2);
    let pts = unit_interval_points(101);
    let tr = trace(&Profile::smooth(), 2, 100);
    let base = reconstruct(&tr, 40, &c, &pts).unwrap();
    for alpha in [2.0, -0.5, 8.0] {
        let scaled = reconstruct(&tr.scaled(alpha), 40, &c, &pts).unwrap();
        for (a, b) in scaled.estimate.iter().zip(&base.estimate) {
            assert_eq!(*a, alpha * b);
        }
    }
    let scaled = reconstruct(&tr.scaled(3.7), 40, &c, &pts).unwrap();
    for (a, b) in scaled.estimate.iter().zip(&base.estimate) {
        assert!((a - 3.7 * b).abs() <= 1e-14);
    }
}

#[test]
fn spectral_error_equals_best_projection_error() {
    // the noiseless reconstruction is as good as the exact truncated
    // expansion of the zero-extended profile, to quadrature accuracy
    let c = cfg(2);
    let p = Profile::smooth();
    let pts = unit_interval_points(401);
    let truth: Vec<f64> = pts.iter().map(|&x| p.initial_pressure(x)).collect();
    let reference = reference_coefficients(&p, &c, 50).unwrap();
    let projection = c.basis().synthesize_many(&reference, &pts).unwrap();
    let best = relative_l2(&projection, &truth, 0.005).unwrap();
    let rec = reconstruct(&trace(&p, 2, 100), 50, &c, &pts).unwrap();
    let got = relative_l2(&rec.estimate, &truth, 0.005).unwrap();
    assert!(
        (got - best).abs() <= 1e-4,
        "spectral {got}, projection {best}"
    );
}

#[test]
fn plus_sign_assembly_breaks_the_round_trip() {
    let c = cfg(2);
    let p = Profile::smooth();
    let pts = unit_interval_points(401);
    let truth: Vec<f64> = pts.iter().map(|&x| p.initial_pressure(x)).collect();
    let tr = trace(&p, 2, 100);
    let plus =
        pa1d::inverse::reconstruct_with_sign(&tr, 50, &c, &pts, ExtensionSign::Plus).unwrap();
    assert!(relative_l2(&plus.estimate, &truth, 0.005).unwrap() >= 0.1);
}

#[test]
fn odd_padding_recovers_without_factor() {
    let p = Profile::smooth();
    let pts = unit_interval_points(401);
    let truth: Vec<f64> = pts.iter().map(|&x| p.initial_pressure(x)).collect();
    for t in [1, 3, 5] {
        let rec = reconstruct(&trace(&p, t, 100), 100, &cfg(t), &pts).unwrap();
        assert_eq!(rec.factor, 1.0);
        let e = relative_l2(&rec.estimate, &truth, 0.005).unwrap();
        assert!(e < 1e-2, "T={t}: {e}");
    }
}
