use alloc::vec::Vec;

use super::{BinaryOp, Expr, UnaryOp};
use crate::Interval;

/// Sample count used to bracket zeros of non-affine arguments.
const ZERO_SCAN: usize = 4096;

/// Points strictly inside `iv` where `e` or its first derivative may be
/// discontinuous, sorted and deduplicated.
///
/// Sources: piecewise guard ends, zeros of the argument of `abs` and
/// `sgn`, zeros of denominators, and zeros of the argument of `sqrt`,
/// `ln` and of fractional powers. Zeros of affine arguments are exact;
/// others are bracketed on a dense scan and refined by bisection.
pub fn breakpoints(e: &Expr, iv: &Interval) -> Vec<f64> {
    let mut out = Vec::new();
    collect(e, iv.a(), iv.b(), &mut out);
    out.retain(|t| iv.contains_interior(*t));
    out.sort_by(f64::total_cmp);
    out.dedup_by(|p, q| (*p - *q).abs() <= 1e-13 * q.abs().max(1.0));
    out
}

fn collect(e: &Expr, lo: f64, hi: f64, out: &mut Vec<f64>) {
    match e {
        Expr::Const(_) | Expr::Var => {}
        Expr::Unary(op, u) => {
            collect(u, lo, hi, out);
            match op {
                UnaryOp::Abs | UnaryOp::Sgn | UnaryOp::Sqrt | UnaryOp::Ln => {
                    zeros(u, lo, hi, out)
                }
                _ => {}
            }
        }
        Expr::Binary(op, l, r) => {
            collect(l, lo, hi, out);
            collect(r, lo, hi, out);
            if *op == BinaryOp::Div {
                zeros(r, lo, hi, out);
            }
        }
        Expr::Pow(u, p) => {
            collect(u, lo, hi, out);
            let smooth = libm::trunc(*p) == *p && *p >= 0.0;
            if !smooth {
                zeros(u, lo, hi, out);
            }
        }
        Expr::Piecewise(pw) => {
            for piece in pw.pieces() {
                let (ga, gb) = (piece.guard.a(), piece.guard.b());
                out.push(ga);
                out.push(gb);
                let (wa, wb) = (ga.max(lo), gb.min(hi));
                if wa < wb {
                    collect(&piece.body, wa, wb, out);
                }
            }
        }
    }
}

fn zeros(u: &Expr, lo: f64, hi: f64, out: &mut Vec<f64>) {
    if u.is_constant() {
        return;
    }
    if let Some((m, c)) = u.as_affine() {
        if m != 0.0 {
            out.push(-c / m);
        }
        return;
    }
    let step = (hi - lo) / ZERO_SCAN as f64;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=ZERO_SCAN {
        let t = if i == ZERO_SCAN { hi } else { lo + step * i as f64 };
        let Ok(v) = u.eval(t) else {
            prev = None;
            continue;
        };
        if v == 0.0 {
            out.push(t);
        } else if let Some((tp, vp)) = prev {
            if vp != 0.0 && (vp < 0.0) != (v < 0.0) {
                out.push(bisect(u, tp, t, vp));
            }
        }
        prev = Some((t, v));
    }
}

fn bisect(u: &Expr, mut lo: f64, mut hi: f64, vlo: f64) -> f64 {
    let neg_lo = vlo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match u.eval(mid) {
            Ok(v) if v == 0.0 => return mid,
            Ok(v) if (v < 0.0) == neg_lo => lo = mid,
            Ok(_) => hi = mid,
            Err(_) => break,
        }
    }
    0.5 * (lo + hi)
}
