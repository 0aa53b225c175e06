use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{LabError, Result};

/// Gauss-Hermite rule for the weight `e^{-x^2}` on the real line. Weights are
/// kept as logarithms so that rules with thousands of nodes stay finite.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteRule {
    pub nodes: Vec<f64>,
    pub log_weights: Vec<f64>,
}

impl HermiteRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Largest rule handed out; the engine never doubles past this.
pub const MAX_HERMITE_NODES: usize = 4096;

/// Cached `n`-point rule.
pub fn hermite_rule(n: usize) -> Result<Arc<HermiteRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HermiteRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&n) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_rule(n)?);
    cache
        .lock()
        .expect("rule cache poisoned")
        .insert(n, rule.clone());
    Ok(rule)
}

fn build_rule(n: usize) -> Result<HermiteRule> {
    if n == 0 || n > MAX_HERMITE_NODES {
        return Err(LabError::InvalidParameter(format!(
            "Gauss-Hermite node count must lie in 1..={MAX_HERMITE_NODES}, got {n}"
        )));
    }
    // Jacobi matrix of the Hermite recurrence: zero diagonal, off-diagonal sqrt(k/2).
    let mut diag = vec![0.0; n];
    let mut off: Vec<f64> = (0..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    off.rotate_left(1);
    off[n - 1] = 0.0;
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(f64::total_cmp);

    let mut nodes = Vec::with_capacity(n);
    let mut log_weights = Vec::with_capacity(n);
    for &x0 in &diag {
        let mut x = x0;
        for _ in 0..3 {
            let h = HermiteFunctions::eval(n, x);
            if h.prev == 0.0 {
                break;
            }
            let step = h.last / ((2.0 * n as f64).sqrt() * h.prev);
            x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let h = HermiteFunctions::eval(n, x);
        nodes.push(x);
        log_weights.push(-h.log_sum_sq);
    }
    // Symmetrise: the exact rule is symmetric and this removes rounding drift.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -x;
        nodes[j] = x;
        let lw = 0.5 * (log_weights[i] + log_weights[j]);
        log_weights[i] = lw;
        log_weights[j] = lw;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(HermiteRule { nodes, log_weights })
}

/// Orthonormal Hermite polynomials `p_0..p_n` at one point, carried with a
/// running logarithmic scale so large arguments do not overflow.
struct HermiteFunctions {
    /// `p_n(x)` and `p_{n-1}(x)` divided by a common positive scale.
    last: f64,
    prev: f64,
    /// `ln sum_{k<n} p_k(x)^2`.
    log_sum_sq: f64,
}

impl HermiteFunctions {
    fn eval(n: usize, x: f64) -> Self {
        const BIG: f64 = 1e100;
        let mut log_scale = -0.25 * PI.ln();
        let mut prev = 0.0;
        let mut cur = 1.0;
        let mut sum_sq = 0.0;
        for k in 0..n {
            sum_sq += cur * cur;
            let next = x * (2.0 / (k as f64 + 1.0)).sqrt() * cur
                - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
            prev = cur;
            cur = next;
            if cur.abs() > BIG {
                prev /= BIG;
                cur /= BIG;
                sum_sq /= BIG * BIG;
                log_scale += BIG.ln();
            }
        }
        HermiteFunctions {
            last: cur,
            prev,
            log_sum_sq: sum_sq.ln() + 2.0 * log_scale,
        }
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL method.
/// On return `diag` holds the eigenvalues (unsorted); `off[i]` couples rows
/// `i` and `i + 1` and is destroyed.
fn tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(LabError::NonConvergence(
                    "tridiagonal eigenvalue iteration".into(),
                ));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
