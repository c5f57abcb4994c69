//! Fixed-order Gauss–Legendre panels.

const GL4: [(f64, f64); 4] = [
    (-0.861_136_311_594_052_6, 0.347_854_845_137_453_8),
    (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.861_136_311_594_052_6, 0.347_854_845_137_453_8),
];

const GL8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (-0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

#[inline]
fn panel(rule: &[(f64, f64)], f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    half * rule
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
}

/// Four-point rule on a single interval.
#[inline]
pub(crate) fn gl4(mut f: impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
    panel(&GL4, &mut f, a, b)
}

/// Eight-point rule on `panels` equal sub-intervals of `[a, b]`.
pub(crate) fn gl8(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == panels { b } else { lo + h };
            panel(&GL8, &mut f, lo, hi)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_and_trig() {
        let poly = gl4(|x| x.powi(7) - 3.0 * x.powi(2) + 1.0, -1.0, 2.0);
        let want = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0) + 3.0;
        assert!((poly - want).abs() < 1e-12);
        let s = gl8(f64::sin, 0.0, std::f64::consts::PI, 4);
        assert!((s - 2.0).abs() < 1e-14);
    }
}
