use pa1d::grid::GridFunction;
use pa1d::profile::{sample_extended, Profile};
use pa1d::quadrature::simpson;
use pa1d::spectral::{CoefficientVector, PaddingConfig, SineBasis};
use proptest::prelude::*;

fn cfg(t: u32) -> PaddingConfig {
    PaddingConfig::new(t).unwrap()
}

#[test]
fn orthogonality_of_first_thirty_modes() {
    let b = cfg(2).basis();
    let r = b.radius();
    let n = (2.0 * r * 64.0) as usize + 1;
    let h = 2.0 * r / (n - 1) as f64;
    let x: Vec<f64> = (0..n).map(|i| -r + i as f64 * h).collect();
    for j in 1..=30 {
        for k in j..=30 {
            let prod: Vec<f64> = x
                .iter()
                .map(|&x| b.eval(j, x).unwrap() * b.eval(k, x).unwrap())
                .collect();
            let ip = simpson(&prod, h).unwrap();
            let expect = if j == k { r } else { 0.0 };
            assert!((ip - expect).abs() <= 1e-9, "({j},{k}): {ip}");
        }
    }
}

#[test]
fn eigenfunctions_satisfy_the_ode_to_second_order() {
    let b = cfg(2).basis();
    for k in [1, 5, 12] {
        let lambda = b.eigenvalue(k).unwrap();
        let residual = |h: f64| {
            let mut worst = 0.0_f64;
            let mut x = -2.9;
            while x < 2.9 {
                let f = |x: f64| b.eval(k, x).unwrap();
                let second = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                worst = worst.max((-second - lambda * f(x)).abs());
                x += 0.037;
            }
            worst
        };
        let ratio = residual(0.02) / residual(0.01);
        assert!((3.8..4.2).contains(&ratio), "k={k} ratio {ratio}");
    }
}

#[test]
fn smooth_bump_synthesis_within_1e4() {
    let c = cfg(2);
    let b = c.basis();
    let f = sample_extended(Profile::smooth().pressure(), 3.0, 1024).unwrap();
    let coeffs = b.analyze(&f, 400).unwrap();
    let pts = f.points();
    let mut worst = 0.0_f64;
    for (i, &x) in pts.iter().enumerate().step_by(7) {
        worst = worst.max((b.synthesize(&coeffs, x).unwrap() - f.values()[i]).abs());
    }
    assert!(worst <= 1e-4, "max error {worst}");
}

#[test]
fn degenerate_padded_coefficient_matches_unpadded() {
    // c_3 of the zero-extension (T = 2) equals -a_1 / 3, a_1 from the T = 0 basis
    let shape = Profile::smooth();
    let padded = cfg(2).basis();
    let unit = SineBasis::new(1.0).unwrap();
    let ext = sample_extended(shape.pressure(), 3.0, 2048).unwrap();
    let local = sample_extended(shape.pressure(), 1.0, 2048).unwrap();
    let c = padded.analyze(&ext, 9).unwrap();
    let a = unit.analyze(&local, 3).unwrap();
    assert!((c.get(3).unwrap() + a.get(1).unwrap() / 3.0).abs() <= 1e-8);
}

fn band_limited(coeffs: &[f64], basis: &SineBasis, n: usize) -> GridFunction {
    let r = basis.radius();
    GridFunction::sample(-r, r, n, |x| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * basis.eval(i + 1, x).unwrap())
            .sum()
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn analysis_then_synthesis_reproduces_band_limited_functions(
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..=30),
        t in 1u32..4,
    ) {
        let b = cfg(t).basis();
        let n = (2.0 * b.radius() * 64.0) as usize + 1;
        let f = band_limited(&coeffs, &b, n);
        let c = b.analyze(&f, coeffs.len()).unwrap();
        for (i, x) in f.points().into_iter().enumerate() {
            prop_assert!((b.synthesize(&c, x).unwrap() - f.values()[i]).abs() <= 1e-8);
        }
    }

    #[test]
    fn parseval_identity(coeffs in prop::collection::vec(-1.0f64..1.0, 1..=30)) {
        let b = cfg(2).basis();
        let f = band_limited(&coeffs, &b, 6 * 64 + 1);
        let sq: Vec<f64> = f.values().iter().map(|v| v * v).collect();
        let energy = simpson(&sq, f.step()).unwrap();
        let c: CoefficientVector = b.analyze(&f, coeffs.len()).unwrap();
        let series = b.radius() * c.iter().map(|(_, v)| v * v).sum::<f64>();
        prop_assume!(energy > 1e-6);
        prop_assert!(((energy - series) / energy).abs() <= 1e-6);
    }
}
