use core::fmt;

use super::{BinaryOp, Expr, UnaryOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffError {
    /// `sgn` has no classical derivative at its jump and is not modeled
    /// with distributions.
    SignNode,
}

impl fmt::Display for DiffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffError::SignNode => f.write_str(
                "sgn is not differentiable; write step functions with piecewise{...}",
            ),
        }
    }
}

impl core::error::Error for DiffError {}

/// Symbolic derivative with respect to `x`.
///
/// `abs(u)` becomes `sgn(u) * u'`, so the kink of `abs` shows up as a
/// jump of the derivative and is picked up by
/// [`breakpoints`](super::breakpoints). A piecewise node differentiates
/// branch by branch.
pub fn differentiate(e: &Expr) -> Result<Expr, DiffError> {
    d(e, Mode::Strict)
}

/// Derivative valid between breakpoints: `sgn(u)` is locally constant
/// there, so it differentiates to zero.
pub(crate) fn derivative_ae(e: &Expr) -> Expr {
    match d(e, Mode::AlmostEverywhere) {
        Ok(v) => v,
        Err(_) => unreachable!("almost-everywhere derivative is total"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Strict,
    AlmostEverywhere,
}

fn d(e: &Expr, mode: Mode) -> Result<Expr, DiffError> {
    Ok(match e {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Unary(op, u) => {
            let du = d(u, mode)?;
            let u = (**u).clone();
            match op {
                UnaryOp::Neg => -du,
                UnaryOp::Abs => u.sgn() * du,
                UnaryOp::Exp => u.exp() * du,
                UnaryOp::Ln => du / u,
                UnaryOp::Sin => u.cos() * du,
                UnaryOp::Cos => -(u.sin() * du),
                UnaryOp::Sqrt => du / (Expr::Const(2.0) * u.sqrt()),
                UnaryOp::Sgn => match mode {
                    Mode::Strict => return Err(DiffError::SignNode),
                    Mode::AlmostEverywhere => Expr::Const(0.0),
                },
            }
        }
        Expr::Binary(op, l, r) => {
            let dl = d(l, mode)?;
            let dr = d(r, mode)?;
            let (l, r) = ((**l).clone(), (**r).clone());
            match op {
                BinaryOp::Add => dl + dr,
                BinaryOp::Sub => dl - dr,
                BinaryOp::Mul => dl * r + l * dr,
                BinaryOp::Div => match r.as_const() {
                    Some(c) => dl / Expr::Const(c),
                    None => (dl * r.clone() - l * dr) / r.powf(2.0),
                },
            }
        }
        Expr::Pow(u, p) => {
            let du = d(u, mode)?;
            Expr::Const(*p) * (**u).clone().powf(*p - 1.0) * du
        }
        Expr::Piecewise(pw) => Expr::Piecewise(pw.map_bodies(|body| d(body, mode))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn central(e: &Expr, t: f64) -> f64 {
        let h = 1e-5;
        (e.eval(t + h).unwrap() - e.eval(t - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn power_rule() {
        let de = differentiate(&parse("x^2/6").unwrap()).unwrap();
        for t in [0.0, 0.25, 1.0, 3.0] {
            assert!((de.eval(t).unwrap() - t / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_derivative_is_one() {
        assert_eq!(differentiate(&Expr::Var).unwrap(), Expr::Const(1.0));
    }

    #[test]
    fn two_thirds_x_against_finite_differences() {
        let g = parse("x^2/3").unwrap();
        let dg = differentiate(&g).unwrap();
        assert_eq!(dg.eval(0.0).unwrap().abs(), 0.0);
        assert!((dg.eval(1.0).unwrap().abs() - 2.0 / 3.0).abs() < 1e-15);
        for i in 0..10 {
            let t = 0.05 + 0.1 * i as f64;
            assert!((dg.eval(t).unwrap() - central(&g, t)).abs() < 1e-8);
        }
    }

    #[test]
    fn abs_derivative_is_signed() {
        let de = differentiate(&parse("abs(x-0.3)").unwrap()).unwrap();
        assert_eq!(de.eval(0.1).unwrap(), -1.0);
        assert_eq!(de.eval(0.9).unwrap(), 1.0);
    }

    #[test]
    fn sgn_is_refused_unless_almost_everywhere() {
        let e = parse("sgn(x-0.5)*x").unwrap();
        assert_eq!(differentiate(&e), Err(DiffError::SignNode));
        let de = derivative_ae(&e);
        assert_eq!(de.eval(0.2).unwrap(), -1.0);
        assert_eq!(de.eval(0.8).unwrap(), 1.0);
    }

    #[test]
    fn piecewise_differentiates_per_branch() {
        let e = parse("piecewise{[0,0.5]: x^2; [0.5,1]: 1 - x}").unwrap();
        let de = differentiate(&e).unwrap();
        assert!((de.eval(0.25).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(de.eval(0.75).unwrap(), -1.0);
    }

    #[test]
    fn chain_rule_mixture() {
        let e = parse("exp(sin(x))*ln(x+2) - sqrt(x+1)/cos(x)").unwrap();
        let de = differentiate(&e).unwrap();
        for t in [0.1, 0.4, 0.9] {
            let fd = central(&e, t);
            assert!((de.eval(t).unwrap() - fd).abs() < 1e-8 * fd.abs().max(1.0));
        }
    }
}
