//! Quadrature rules: adaptive Gauss–Kronrod (7/15) and composite
//! Gauss–Legendre on uniform panels.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the summed
/// estimate drops below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    const MAX_INTERVALS: usize = 20_000;
    let (v, e) = kronrod15(&mut f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if pieces.len() >= MAX_INTERVALS || !total.is_finite() {
            return Err(Error::QuadratureFailure { a, b, error: err });
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, pv, pe) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod15(&mut f, lo, mid);
        let (v2, e2) = kronrod15(&mut f, mid, hi);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
        if (hi - lo).abs() < 1e-13 * (b - a).abs() {
            return Err(Error::QuadratureFailure { a, b, error: err });
        }
    }
    // re-sum to shed the drift of the running updates
    Ok(pieces.iter().map(|p| p.2).sum())
}

/// Eight-point Gauss–Legendre nodes and weights on `[-1, 1]`.
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Nodes and weights of the composite 8-point Gauss–Legendre rule with
/// `panels` equal panels on `[a, b]`.
pub fn gauss_legendre_composite(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * 8);
    for p in 0..panels {
        let center = a + (p as f64 + 0.5) * width;
        let half = 0.5 * width;
        for k in 0..4 {
            out.push((center - half * GL8_X[k], half * GL8_W[k]));
            out.push((center + half * GL8_X[k], half * GL8_W[k]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate_adaptive(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, 1e-14, 1e-14).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_integrand() {
        let v = integrate_adaptive(|x| (40.0 * x).cos(), 0.0, 3.0, 1e-13, 1e-13).unwrap();
        assert!((v - (120.0f64).sin() / 40.0).abs() < 1e-12);
    }

    #[test]
    fn peaked_integrand() {
        // ∫ 1/(1+x²) over [-100, 100]
        let v = integrate_adaptive(|x| 1.0 / (1.0 + x * x), -100.0, 100.0, 1e-13, 1e-13).unwrap();
        assert!((v - 2.0 * 100f64.atan()).abs() < 1e-11);
    }

    #[test]
    fn composite_gauss_legendre_weights_sum_to_length() {
        let rule = gauss_legendre_composite(0.0, 2.5, 7);
        let s: f64 = rule.iter().map(|r| r.1).sum();
        assert!((s - 2.5).abs() < 1e-14);
        let v: f64 = rule.iter().map(|(x, w)| w * (3.0 * x).sin()).sum();
        assert!((v - (1.0 - (7.5f64).cos()) / 3.0).abs() < 1e-12);
    }
}
