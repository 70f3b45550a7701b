//! Simultaneous root approximation by the Aberth-Ehrlich iteration.
//!
//! The hardware-precision pass seeds the certification machinery; when close
//! roots defeat `f64`, the same iteration runs over rounded dyadic complex
//! arithmetic at a requested precision. Nothing here is certified on its own.

use crate::dyadic::Dyadic;
use crate::interval::DyComplex;
use crate::poly::{bigint_to_f64, IntPolynomial};
use num_complex::Complex64;

/// Initial guesses on a circle slightly larger than the root bound
/// `1 + H/|a_d|`, with an irrational-ish phase so no guess starts on an axis.
fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let h = coeffs.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    let lead = coeffs[d].abs();
    let r0 = 1.0 + h / lead;
    (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.397;
            Complex64::from_polar(r0 * 0.75, theta)
        })
        .collect()
}

fn eval_c64(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Hardware-precision Aberth-Ehrlich. Returns `None` when the iteration
/// produces non-finite values or fails to settle.
pub fn aberth_f64(p: &IntPolynomial, max_iter: u32) -> Option<Vec<Complex64>> {
    let d = p.degree().ok()?;
    if d == 0 {
        return Some(vec![]);
    }
    let coeffs: Vec<f64> = p.coeffs().iter().map(bigint_to_f64).collect();
    aberth_f64_raw(&coeffs, max_iter)
}

/// Aberth-Ehrlich directly on `f64` coefficients (ascending, nonzero lead).
pub(crate) fn aberth_f64_raw(coeffs: &[f64], max_iter: u32) -> Option<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Some(vec![]);
    }
    if coeffs.iter().any(|c| !c.is_finite()) || coeffs[d] == 0.0 {
        return None;
    }
    let deriv: Vec<f64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    let mut zs = initial_guesses(coeffs);
    let scale = zs[0].norm().max(1.0);
    for _ in 0..max_iter {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let z = zs[i];
            let pv = eval_c64(coeffs, z);
            let dv = eval_c64(&deriv, z);
            if !pv.is_finite() || !dv.is_finite() {
                return None;
            }
            let w = if dv == Complex64::new(0.0, 0.0) {
                // nudge off a stationary point
                Complex64::new(1e-12 * scale, 1e-12 * scale)
            } else {
                pv / dv
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    let diff = z - zj;
                    if diff == Complex64::new(0.0, 0.0) {
                        return None;
                    }
                    s += diff.inv();
                }
            }
            let den = Complex64::new(1.0, 0.0) - w * s;
            let dz = if den == Complex64::new(0.0, 0.0) { w } else { w / den };
            if !dz.is_finite() {
                return None;
            }
            zs[i] = z - dz;
            max_step = max_step.max(dz.norm());
        }
        if max_step < 1e-14 * scale.max(1.0) {
            return Some(zs);
        }
    }
    Some(zs)
}

fn eval_dyadic_complex(coeffs: &[Dyadic], z: &DyComplex, prec: u64) -> DyComplex {
    let mut acc = DyComplex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&DyComplex::real(c.clone())).round(prec);
    }
    acc
}

/// Aberth-Ehrlich over dyadic complex arithmetic rounded to `prec` bits.
/// Used when hardware precision cannot separate close roots.
pub fn aberth_dyadic(
    p: &IntPolynomial,
    seeds: &[DyComplex],
    prec: u64,
    max_iter: u32,
) -> Vec<DyComplex> {
    let d = p.degree().expect("nonzero polynomial");
    debug_assert_eq!(seeds.len(), d);
    let coeffs: Vec<Dyadic> = p.coeffs().iter().map(|c| Dyadic::from_bigint(c.clone())).collect();
    let dcoeffs: Vec<Dyadic> =
        p.derivative().coeffs().iter().map(|c| Dyadic::from_bigint(c.clone())).collect();
    let mut zs: Vec<DyComplex> = seeds.iter().map(|z| z.round(prec)).collect();
    // collapsed seeds (hardware Aberth landing several approximations on one
    // root) would never separate: nudge duplicates apart deterministically
    for i in 0..d {
        let near_dup = (0..i).any(|j| {
            let gap = zs[i].sub(&zs[j]).modulus_sq();
            let scale = zs[i].modulus_sq().max(Dyadic::one());
            gap <= scale.shl(-(prec as i64) / 2)
        });
        if near_dup {
            let scale = zs[i].modulus_sq().max(Dyadic::one()).sqrt(32, crate::dyadic::Round::Up);
            let off = scale.shl(-(prec as i64) / 4).mul(&Dyadic::from_int(i as i64 + 1));
            zs[i] = DyComplex::new(zs[i].re.add(&off), zs[i].im.add(&off)).round(prec);
        }
    }
    let step_floor = Dyadic::from_parts(num_bigint::BigInt::from(1), -(prec as i64) + 4);
    for _ in 0..max_iter {
        let mut max_step = Dyadic::zero();
        let mut scale = Dyadic::one();
        for i in 0..d {
            let z = zs[i].clone();
            let pv = eval_dyadic_complex(&coeffs, &z, prec);
            let dv = eval_dyadic_complex(&dcoeffs, &z, prec);
            if dv.modulus_sq().is_zero() {
                continue;
            }
            let w = pv.div_approx(&dv, prec);
            let mut s = DyComplex::zero();
            let one = DyComplex::real(Dyadic::one());
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    let diff = z.sub(zj);
                    if diff.modulus_sq().is_zero() {
                        continue;
                    }
                    s = s.add(&one.div_approx(&diff, prec)).round(prec);
                }
            }
            let den = one.sub(&w.mul(&s).round(prec));
            let dz = if den.modulus_sq().is_zero() { w } else { w.div_approx(&den, prec) };
            zs[i] = z.sub(&dz).round(prec);
            let step = dz.modulus_sq();
            if step > max_step {
                max_step = step;
            }
            let zmag = zs[i].modulus_sq();
            if zmag > scale {
                scale = zmag;
            }
        }
        if max_step <= scale.mul(&step_floor.square()) {
            break;
        }
    }
    zs
}
