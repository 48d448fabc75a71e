//! The maps g(x) = x² + x³ and h(x) = x³ + x⁴ relating connective constants
//! across a Fisher transformation, and the fixed-point iteration of g⁻¹.

use serde::Serialize;

use super::real::Real;
use crate::error::{Error, Result};

pub fn g_eval(x: &Real) -> Real {
    let x2 = x * x;
    &x2 + &(&x2 * x)
}

pub fn h_eval(x: &Real) -> Real {
    let x3 = x.powi(3);
    &x3 + &(&x3 * x)
}

fn g_prime(x: &Real) -> Real {
    &(x * &x.int(2)) + &(&(x * x) * &x.int(3))
}

fn h_prime(x: &Real) -> Real {
    let x2 = x * x;
    &(&x2 * &x.int(3)) + &(&(&x2 * x) * &x.int(4))
}

/// φ⁻¹ = (√5 − 1)/2 at the precision of `like`.
pub fn phi_inv(like: &Real) -> Real {
    (like.int(5).sqrt() - like.int(1)) / like.int(2)
}

/// Root in [0, 1] of `f(x) = y` for increasing `f` with `f(0) = 0`:
/// bisection to a few digits, then Newton to full working precision.
fn invert_increasing(y: &Real, f: fn(&Real) -> Real, df: fn(&Real) -> Real) -> Real {
    if y.is_zero() {
        return y.int(0);
    }
    let mut lo = y.int(0);
    let mut hi = y.int(1);
    let half = y.lift(0.5);
    for _ in 0..40 {
        let mid = &(&lo + &hi) * &half;
        if f(&mid) < *y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = &(&lo + &hi) * &half;
    let eps = y.lift(10f64.powi(-(y.digits() as i32)));
    for _ in 0..100 {
        let d = df(&x);
        if d.is_zero() {
            break;
        }
        let step = (f(&x) - y) / d;
        x = &x - &step;
        if step.abs() <= eps {
            break;
        }
    }
    x
}

/// The unique x in [0, 1] with x² + x³ = y.
pub fn g_inverse(y: &Real) -> Result<Real> {
    if y.is_negative() || *y > y.int(2) {
        return Err(Error::OutOfDomain {
            value: y.to_sci(12),
            domain: "[0, 2]",
        });
    }
    Ok(invert_increasing(y, g_eval, g_prime))
}

/// μ̃ = 1/x with x the positive root of x³ + x⁴ = μ⁻².
pub fn solve_mu_tilde(mu: &Real) -> Result<Real> {
    if *mu <= mu.int(1) || *mu > mu.int(2) {
        return Err(Error::OutOfDomain {
            value: mu.to_sci(12),
            domain: "(1, 2]",
        });
    }
    let target = (mu * mu).recip();
    Ok(invert_increasing(&target, h_eval, h_prime).recip())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
    /// The sign of the error changed or an error failed to shrink.
    NonMonotone,
}

/// Iterates μ_{k+1}⁻¹ = g⁻¹(μ_k⁻¹) and their distance to φ⁻¹.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointTrace {
    pub start: Real,
    pub iterates: Vec<Real>,
    /// Signed: iterate − φ⁻¹.
    pub errors: Vec<Real>,
    /// |errors[k+1]| / |errors[k]|, absent once an error is exactly zero.
    pub ratios: Vec<f64>,
    pub direction: Direction,
    pub converged: bool,
    pub tolerance: f64,
    pub asymptotic_ratio: Option<f64>,
}

impl FixedPointTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,iterate,error,ratio\n");
        for (k, x) in self.iterates.iter().enumerate() {
            let ratio = match k.checked_sub(1).and_then(|i| self.ratios.get(i)) {
                Some(r) => format!("{r:.15}"),
                None => String::new(),
            };
            out.push_str(&format!(
                "{k},{},{},{ratio}\n",
                x.to_decimal(50),
                self.errors[k].to_sci(6)
            ));
        }
        out
    }

    pub fn final_error(&self) -> f64 {
        self.errors.last().map_or(f64::NAN, |e| e.abs().to_f64())
    }
}

/// Runs the iteration from `mu0_inv` until |error| < `tol` or `k_max` steps.
pub fn iterate_mu(mu0_inv: &Real, k_max: usize, tol: f64) -> Result<FixedPointTrace> {
    if *mu0_inv < mu0_inv.lift(0.5) || *mu0_inv > mu0_inv.int(1) {
        return Err(Error::OutOfDomain {
            value: mu0_inv.to_sci(12),
            domain: "[1/2, 1]",
        });
    }
    let fixed = phi_inv(mu0_inv);
    let tol_r = mu0_inv.lift(tol);
    let mut iterates = vec![mu0_inv.clone()];
    let mut errors = vec![mu0_inv - &fixed];
    while errors.last().unwrap().abs() >= tol_r && iterates.len() <= k_max {
        let next = g_inverse(iterates.last().unwrap())?;
        errors.push(&next - &fixed);
        iterates.push(next);
    }
    let ratios: Vec<f64> = errors
        .windows(2)
        .take_while(|w| !w[0].is_zero())
        .map(|w| (w[1].abs() / w[0].abs()).to_f64())
        .collect();
    let direction = classify(&iterates, &errors);
    let converged = errors.last().unwrap().abs() < tol_r;
    Ok(FixedPointTrace {
        start: mu0_inv.clone(),
        asymptotic_ratio: ratios.last().copied(),
        iterates,
        errors,
        ratios,
        direction,
        converged,
        tolerance: tol,
    })
}

fn classify(iterates: &[Real], errors: &[Real]) -> Direction {
    if iterates.len() < 2 || errors[0].is_zero() {
        return Direction::Constant;
    }
    let below = errors[0].is_negative();
    let same_side = errors.iter().all(|e| e.is_zero() || e.is_negative() == below);
    let shrinking = errors.windows(2).all(|w| w[1].abs() < w[0].abs());
    if !same_side || !shrinking {
        return Direction::NonMonotone;
    }
    if below {
        Direction::Increasing
    } else {
        Direction::Decreasing
    }
}
