use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::multiplier::seq::{MultiplierSeq, SmoothSymbol};
use crate::numeric::{golden_max, integrate_adaptive, pairwise_sum};

/// Default number of dyadic levels inspected.
pub const DEFAULT_MAX_LEVEL: u32 = 40;
/// Levels beyond this are never summed term by term.
pub const DISCRETE_LEVEL_CAP: u32 = 24;

const SATURATION_TOL: f64 = 1e-10;

/// How the variations were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariationRoute {
    /// Integrals of `|m'|` over `[2^{j-1}, 2^j]` and its mirror image.
    Smooth,
    /// Sums of `|m_{k+1} - m_k|` over the same dyadic ranges of integers.
    Discrete,
}

/// Variation of the multiplier on dyadic level `j` on each side of the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelVariation {
    pub level: u32,
    pub positive: f64,
    pub negative: f64,
}

impl LevelVariation {
    pub fn max(&self) -> f64 {
        self.positive.max(self.negative)
    }
}

/// The Marcinkiewicz constant `K = max(sup |m|, sup_j variation_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarcinkiewiczReport {
    pub sup_bound: f64,
    pub dyadic_variation: f64,
    pub k: f64,
    pub levels: Vec<LevelVariation>,
    /// True when the last inspected level did not raise the running maximum.
    pub saturated: bool,
    pub route: VariationRoute,
}

impl MarcinkiewiczReport {
    fn assemble(sup_bound: f64, levels: Vec<LevelVariation>, route: VariationRoute) -> Self {
        let mut running = 0.0f64;
        let mut saturated = true;
        for lv in &levels {
            saturated = lv.max() <= running + SATURATION_TOL;
            running = running.max(lv.max());
        }
        MarcinkiewiczReport {
            sup_bound,
            dyadic_variation: running,
            k: sup_bound.max(running),
            levels,
            saturated,
            route,
        }
    }
}

/// `K` of a multiplier, from its smooth symbol when one is attached and from
/// the sequence otherwise.
pub fn marcinkiewicz_constant(m: &MultiplierSeq, max_level: u32) -> Result<MarcinkiewiczReport> {
    match m.symbol() {
        Some(_) => marcinkiewicz_smooth(m, max_level),
        None => marcinkiewicz_discrete(m, max_level),
    }
}

/// Sequence route: `sum_{k=2^{j-1}}^{2^j - 1} |m_{k+1} - m_k|` and the mirrored
/// sum over `-2^j..=-2^{j-1}`. Levels are capped at [`DISCRETE_LEVEL_CAP`], and
/// the scan stops after two consecutive levels on which the sequence vanishes
/// identically, which ends finite-support sequences quickly.
pub fn marcinkiewicz_discrete(m: &MultiplierSeq, max_level: u32) -> Result<MarcinkiewiczReport> {
    check_level(max_level)?;
    let top = max_level.min(DISCRETE_LEVEL_CAP);
    let mut sup = m.eval(0).norm().max(m.eval(1).norm()).max(m.eval(-1).norm());
    let mut levels = Vec::with_capacity(top as usize);
    let mut quiet_levels = 0;
    for j in 1..=top {
        let lo = 1i64 << (j - 1);
        let hi = 1i64 << j;
        let mut pos = Vec::with_capacity((hi - lo) as usize);
        let mut neg = Vec::with_capacity((hi - lo + 1) as usize);
        let mut prev = m.eval(lo);
        let mut level_sup = prev.norm();
        for k in lo..hi {
            let next = m.eval(k + 1);
            pos.push((next - prev).norm());
            level_sup = level_sup.max(next.norm());
            prev = next;
        }
        let mut prev = m.eval(-hi);
        level_sup = level_sup.max(prev.norm());
        for k in -hi..=-lo {
            let next = m.eval(k + 1);
            neg.push((next - prev).norm());
            level_sup = level_sup.max(next.norm());
            prev = next;
        }
        sup = sup.max(level_sup);
        let lv = LevelVariation {
            level: j,
            positive: pairwise_sum(&pos),
            negative: pairwise_sum(&neg),
        };
        levels.push(lv);
        if level_sup == 0.0 && lv.max() == 0.0 {
            quiet_levels += 1;
            if quiet_levels >= 2 {
                break;
            }
        } else {
            quiet_levels = 0;
        }
    }
    Ok(MarcinkiewiczReport::assemble(sup, levels, VariationRoute::Discrete))
}

/// Smooth route: adaptive Gauss-Kronrod integrals of `|m'|` per level, and
/// `sup_{xi in R} |m(xi)|` by sampling each dyadic interval and refining the
/// best sample with golden-section search.
pub fn marcinkiewicz_smooth(m: &MultiplierSeq, max_level: u32) -> Result<MarcinkiewiczReport> {
    check_level(max_level)?;
    let symbol = m.symbol().ok_or_else(|| {
        LabError::InvalidParameter(format!("multiplier '{}' has no smooth symbol", m.description()))
    })?;
    let dm = |xi: f64| symbol.derivative(xi).norm();
    let mut sup = interval_sup(symbol, -1.0, 1.0);
    let mut levels = Vec::with_capacity(max_level as usize);
    for j in 1..=max_level {
        let lo = 2f64.powi(j as i32 - 1);
        let hi = 2.0 * lo;
        let pos = integrate_adaptive(dm, lo, hi, 1e-15, 1e-12, 2000).value;
        let neg = integrate_adaptive(dm, -hi, -lo, 1e-15, 1e-12, 2000).value;
        sup = sup
            .max(interval_sup(symbol, lo, hi))
            .max(interval_sup(symbol, -hi, -lo));
        levels.push(LevelVariation {
            level: j,
            positive: pos,
            negative: neg,
        });
    }
    Ok(MarcinkiewiczReport::assemble(sup, levels, VariationRoute::Smooth))
}

fn interval_sup(symbol: &SmoothSymbol, a: f64, b: f64) -> f64 {
    const SAMPLES: usize = 64;
    let h = (b - a) / SAMPLES as f64;
    let (mut best_x, mut best) = (a, symbol.value(a).norm());
    for i in 1..=SAMPLES {
        let x = a + i as f64 * h;
        let v = symbol.value(x).norm();
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let lo = (best_x - h).max(a);
    let hi = (best_x + h).min(b);
    let (_, refined) = golden_max(|x| symbol.value(x).norm(), lo, hi, 80);
    best.max(refined)
}

fn check_level(max_level: u32) -> Result<()> {
    if max_level == 0 {
        return Err(LabError::InvalidParameter("max dyadic level must be at least 1".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn gaussian(f: f64, r: f64) -> MultiplierSeq {
        MultiplierSeq::smooth(
            "gaussian",
            move |x| Complex64::new((-0.5 * f * (x - r).powi(2)).exp(), 0.0),
            move |x| Complex64::new(-f * (x - r) * (-0.5 * f * (x - r).powi(2)).exp(), 0.0),
        )
    }

    #[test]
    fn constant_has_no_variation() {
        let m = MultiplierSeq::constant(Complex64::new(0.0, -3.0));
        for report in [
            marcinkiewicz_smooth(&m, 10).unwrap(),
            marcinkiewicz_discrete(&m, 10).unwrap(),
        ] {
            assert!((report.k - 3.0).abs() < 1e-15);
            assert_eq!(report.dyadic_variation, 0.0);
            assert!(report.saturated);
        }
    }

    #[test]
    fn smooth_and_discrete_routes_agree_on_monotone_levels() {
        // Centred Gaussians are monotone on every dyadic level, so the sums of
        // differences telescope to the same totals as the integrals of |m'|.
        let m = gaussian(0.05, 0.0);
        let s = marcinkiewicz_smooth(&m, 12).unwrap();
        let d = marcinkiewicz_discrete(&m, 12).unwrap();
        for (a, b) in s.levels.iter().zip(&d.levels) {
            assert!((a.positive - b.positive).abs() < 1e-10, "{a:?} {b:?}");
            assert!((a.negative - a.positive).abs() < 1e-10);
            // The negative integer sum runs one step past -2^{j-1}.
            let lo = 1i64 << (a.level - 1);
            let telescoped = (m.eval(1 - lo) - m.eval(-2 * lo)).norm();
            assert!((b.negative - telescoped).abs() < 1e-12);
        }
        assert!((s.sup_bound - d.sup_bound).abs() < 1e-12);
    }

    #[test]
    fn indicator_of_half_line_has_unit_constant() {
        let m = MultiplierSeq::indicator("[0, inf)", |n| n >= 0);
        let r = marcinkiewicz_discrete(&m, 8).unwrap();
        assert_eq!(r.k, 1.0);
        assert_eq!(r.levels.len(), 8);
    }

    #[test]
    fn finite_support_stops_early() {
        let m = MultiplierSeq::indicator("{-3..3}", |n| n.abs() <= 3);
        let r = marcinkiewicz_discrete(&m, 40).unwrap();
        assert!(r.levels.len() < 8);
        assert_eq!(r.k, 1.0);
    }

    #[test]
    fn growing_variation_is_not_saturated() {
        let m = MultiplierSeq::from_fn("alternating", |n| {
            Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        });
        let r = marcinkiewicz_discrete(&m, 6).unwrap();
        assert!(!r.saturated);
        // The negative range -64..=-32 has 33 differences of size 2.
        assert_eq!(r.dyadic_variation, 66.0);
    }

    #[test]
    fn rejects_level_zero() {
        assert!(marcinkiewicz_constant(&MultiplierSeq::constant(Complex64::new(1.0, 0.0)), 0).is_err());
    }
}
