//! One-variable real expressions.
//!
//! An [`Expr`] is an immutable tree over the variable `x`: constants,
//! the usual arithmetic, a handful of elementary functions, powers with a
//! constant exponent, and piecewise definitions over disjoint closed
//! guards. Trees are built by [`parse`] or with the operator overloads
//! and smart constructors below, which fold constants as they go.

mod breakpoints;
mod diff;
mod parse;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;
use core::ops;

use crate::Interval;

pub use breakpoints::breakpoints;
pub use diff::{differentiate, DiffError};
pub use parse::{parse, ParseError, ParseErrorKind};

pub(crate) use diff::derivative_ae;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Abs,
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
    Sgn,
}

impl UnaryOp {
    pub(crate) fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Abs => "abs",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Sgn => "sgn",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "abs" => UnaryOp::Abs,
            "exp" => UnaryOp::Exp,
            "ln" => UnaryOp::Ln,
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "sqrt" => UnaryOp::Sqrt,
            "sgn" => UnaryOp::Sgn,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One branch of a piecewise definition.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub guard: Interval,
    pub body: Expr,
}

/// Pieces sorted by guard, pairwise disjoint except for shared endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Piecewise {
    pieces: Vec<Piece>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PiecewiseError {
    Empty,
    /// Two guards share more than an endpoint.
    Overlap { first: Interval, second: Interval },
}

impl fmt::Display for PiecewiseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiecewiseError::Empty => f.write_str("piecewise definition has no pieces"),
            PiecewiseError::Overlap { first, second } => {
                write!(f, "piecewise guards {first} and {second} overlap")
            }
        }
    }
}

impl core::error::Error for PiecewiseError {}

impl Piecewise {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self, PiecewiseError> {
        if pieces.is_empty() {
            return Err(PiecewiseError::Empty);
        }
        pieces.sort_by(|p, q| p.guard.a().total_cmp(&q.guard.a()));
        for w in pieces.windows(2) {
            if w[1].guard.a() < w[0].guard.b() {
                return Err(PiecewiseError::Overlap {
                    first: w[0].guard,
                    second: w[1].guard,
                });
            }
        }
        Ok(Piecewise { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Smallest interval containing every guard.
    pub fn span(&self) -> Interval {
        let lo = self.pieces[0].guard.a();
        let hi = self.pieces[self.pieces.len() - 1].guard.b();
        Interval::new(lo, hi).expect("guards are non-empty")
    }

    /// First piece whose guard contains `t`; at a shared endpoint this is
    /// the left piece.
    fn select(&self, t: f64) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.guard.contains(t))
    }

    fn map_bodies<E>(&self, mut f: impl FnMut(&Expr) -> Result<Expr, E>) -> Result<Self, E> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    guard: p.guard,
                    body: f(&p.body)?,
                })
            })
            .collect::<Result<Vec<_>, E>>()?;
        Ok(Piecewise { pieces })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    /// Power with a constant exponent.
    Pow(Box<Expr>, f64),
    Piecewise(Piecewise),
}

/// Evaluation failures. Every variant carries the abscissa.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EvalError {
    LogNonPositive { at: f64 },
    SqrtNegative { at: f64 },
    DivisionByZero { at: f64 },
    /// Negative base under a non-integer exponent, or `0^p` with `p < 0`.
    PowDomain { at: f64 },
    /// `t` lies outside every guard of a piecewise node.
    OutsidePieces { at: f64 },
    NonFinite { at: f64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::LogNonPositive { at } => write!(f, "ln of a non-positive value at x = {at}"),
            EvalError::SqrtNegative { at } => write!(f, "sqrt of a negative value at x = {at}"),
            EvalError::DivisionByZero { at } => write!(f, "division by zero at x = {at}"),
            EvalError::PowDomain { at } => write!(f, "power outside its domain at x = {at}"),
            EvalError::OutsidePieces { at } => {
                write!(f, "x = {at} is not covered by any piecewise guard")
            }
            EvalError::NonFinite { at } => write!(f, "non-finite value at x = {at}"),
        }
    }
}

impl core::error::Error for EvalError {}

impl Expr {
    pub const fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub const fn var() -> Expr {
        Expr::Var
    }

    pub fn unary(op: UnaryOp, u: Expr) -> Expr {
        if let Expr::Const(c) = u {
            if let Ok(v) = apply_unary(op, c, 0.0) {
                return Expr::Const(v);
            }
        }
        match (op, u) {
            (UnaryOp::Neg, Expr::Unary(UnaryOp::Neg, inner)) => *inner,
            (op, u) => Expr::Unary(op, Box::new(u)),
        }
    }

    pub fn binary(op: BinaryOp, l: Expr, r: Expr) -> Expr {
        use BinaryOp::*;
        match (op, &l, &r) {
            (_, Expr::Const(x), Expr::Const(y)) => {
                if let Ok(v) = apply_binary(op, *x, *y, 0.0) {
                    return Expr::Const(v);
                }
            }
            (Add, Expr::Const(z), _) if *z == 0.0 => return r,
            (Add | Sub, _, Expr::Const(z)) if *z == 0.0 => return l,
            (Sub, Expr::Const(z), _) if *z == 0.0 => return Expr::unary(UnaryOp::Neg, r),
            (Mul, Expr::Const(z), _) | (Mul, _, Expr::Const(z)) if *z == 0.0 => {
                return Expr::Const(0.0)
            }
            (Mul, Expr::Const(one), _) if *one == 1.0 => return r,
            (Mul | Div, _, Expr::Const(one)) if *one == 1.0 => return l,
            (Div, Expr::Const(z), _) if *z == 0.0 => return Expr::Const(0.0),
            _ => {}
        }
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn pow(base: Expr, exponent: f64) -> Expr {
        if exponent == 0.0 {
            return Expr::Const(1.0);
        }
        if exponent == 1.0 {
            return base;
        }
        if let Expr::Const(c) = base {
            if let Ok(v) = apply_pow(c, exponent, 0.0) {
                return Expr::Const(v);
            }
        }
        Expr::Pow(Box::new(base), exponent)
    }

    pub fn piecewise(pieces: Vec<Piece>) -> Result<Expr, PiecewiseError> {
        Piecewise::new(pieces).map(Expr::Piecewise)
    }

    pub fn abs(self) -> Expr {
        Expr::unary(UnaryOp::Abs, self)
    }

    pub fn exp(self) -> Expr {
        Expr::unary(UnaryOp::Exp, self)
    }

    pub fn ln(self) -> Expr {
        Expr::unary(UnaryOp::Ln, self)
    }

    pub fn sin(self) -> Expr {
        Expr::unary(UnaryOp::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::unary(UnaryOp::Cos, self)
    }

    pub fn sqrt(self) -> Expr {
        Expr::unary(UnaryOp::Sqrt, self)
    }

    pub fn sgn(self) -> Expr {
        Expr::unary(UnaryOp::Sgn, self)
    }

    pub fn powf(self, exponent: f64) -> Expr {
        Expr::pow(self, exponent)
    }

    /// `Some(c)` when the tree is a literal constant.
    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// True when `x` does not occur anywhere in the tree.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Unary(_, u) | Expr::Pow(u, _) => u.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
            // A piecewise node has a bounded domain, so it is never a
            // constant function of x on all of R.
            Expr::Piecewise(_) => false,
        }
    }

    /// Evaluates the tree at `t`.
    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Unary(op, u) => apply_unary(*op, u.eval(t)?, t)?,
            Expr::Binary(op, l, r) => apply_binary(*op, l.eval(t)?, r.eval(t)?, t)?,
            Expr::Pow(u, p) => apply_pow(u.eval(t)?, *p, t)?,
            Expr::Piecewise(pw) => match pw.select(t) {
                Some(piece) => piece.body.eval(t)?,
                None => return Err(EvalError::OutsidePieces { at: t }),
            },
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { at: t })
        }
    }

    /// Coefficients `(m, c)` when the tree is provably the affine map `m x + c`.
    pub(crate) fn as_affine(&self) -> Option<(f64, f64)> {
        match self {
            Expr::Const(c) => Some((0.0, *c)),
            Expr::Var => Some((1.0, 0.0)),
            Expr::Unary(UnaryOp::Neg, u) => u.as_affine().map(|(m, c)| (-m, -c)),
            Expr::Binary(op, l, r) => {
                let (lm, lc) = l.as_affine()?;
                let (rm, rc) = r.as_affine()?;
                match op {
                    BinaryOp::Add => Some((lm + rm, lc + rc)),
                    BinaryOp::Sub => Some((lm - rm, lc - rc)),
                    BinaryOp::Mul if lm == 0.0 => Some((lc * rm, lc * rc)),
                    BinaryOp::Mul if rm == 0.0 => Some((rc * lm, rc * lc)),
                    BinaryOp::Div if rm == 0.0 && rc != 0.0 => Some((lm / rc, lc / rc)),
                    _ => None,
                }
            }
            Expr::Pow(u, p) if *p == 1.0 => u.as_affine(),
            _ => None,
        }
    }
}

fn apply_unary(op: UnaryOp, v: f64, at: f64) -> Result<f64, EvalError> {
    Ok(match op {
        UnaryOp::Neg => -v,
        UnaryOp::Abs => v.abs(),
        UnaryOp::Exp => libm::exp(v),
        UnaryOp::Ln => {
            if v <= 0.0 {
                return Err(EvalError::LogNonPositive { at });
            }
            libm::log(v)
        }
        UnaryOp::Sin => libm::sin(v),
        UnaryOp::Cos => libm::cos(v),
        UnaryOp::Sqrt => {
            if v < 0.0 {
                return Err(EvalError::SqrtNegative { at });
            }
            libm::sqrt(v)
        }
        UnaryOp::Sgn => {
            if v > 0.0 {
                1.0
            } else if v < 0.0 {
                -1.0
            } else {
                0.0
            }
        }
    })
}

fn apply_binary(op: BinaryOp, l: f64, r: f64, at: f64) -> Result<f64, EvalError> {
    Ok(match op {
        BinaryOp::Add => l + r,
        BinaryOp::Sub => l - r,
        BinaryOp::Mul => l * r,
        BinaryOp::Div => {
            if r == 0.0 {
                return Err(EvalError::DivisionByZero { at });
            }
            l / r
        }
    })
}

fn apply_pow(base: f64, p: f64, at: f64) -> Result<f64, EvalError> {
    let integral = libm::trunc(p) == p;
    if base < 0.0 && !integral {
        return Err(EvalError::PowDomain { at });
    }
    if base == 0.0 && p < 0.0 {
        return Err(EvalError::PowDomain { at });
    }
    if integral && p.abs() <= 64.0 {
        // Repeated squaring keeps small integer powers exact.
        let mut n = p.abs() as u32;
        let mut acc = 1.0;
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc *= sq;
            }
            sq *= sq;
            n >>= 1;
        }
        return Ok(if p < 0.0 { 1.0 / acc } else { acc });
    }
    Ok(libm::pow(base, p))
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Add, self, rhs)
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Sub, self, rhs)
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Mul, self, rhs)
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Div, self, rhs)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::unary(UnaryOp::Neg, self)
    }
}

impl From<f64> for Expr {
    fn from(c: f64) -> Expr {
        Expr::Const(c)
    }
}

// Printing. The output is accepted by `parse` and evaluates identically.

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Const(c) if *c < 0.0 || c.is_sign_negative() => PREC_NEG,
            Expr::Const(_) | Expr::Var | Expr::Piecewise(_) => PREC_ATOM,
            Expr::Unary(UnaryOp::Neg, _) => PREC_NEG,
            Expr::Unary(..) => PREC_ATOM,
            Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => PREC_ADD,
            Expr::Binary(..) => PREC_MUL,
            Expr::Pow(..) => PREC_POW,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Const(c) => write!(f, "{c:?}")?,
            Expr::Var => f.write_str("x")?,
            Expr::Unary(UnaryOp::Neg, u) => {
                f.write_str("-")?;
                u.fmt_prec(f, PREC_NEG)?;
            }
            Expr::Unary(op, u) => {
                write!(f, "{}(", op.name())?;
                u.fmt_prec(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Binary(op, l, r) => {
                let (sym, prec) = match op {
                    BinaryOp::Add => (" + ", PREC_ADD),
                    BinaryOp::Sub => (" - ", PREC_ADD),
                    BinaryOp::Mul => ("*", PREC_MUL),
                    BinaryOp::Div => ("/", PREC_MUL),
                };
                l.fmt_prec(f, prec)?;
                f.write_str(sym)?;
                // Right operand of - and / binds tighter to keep left associativity.
                let rmin = match op {
                    BinaryOp::Sub | BinaryOp::Div => prec + 1,
                    _ => prec,
                };
                r.fmt_prec(f, rmin)?;
            }
            Expr::Pow(u, p) => {
                u.fmt_prec(f, PREC_ATOM)?;
                if *p < 0.0 {
                    write!(f, "^({p:?})")?;
                } else {
                    write!(f, "^{p:?}")?;
                }
            }
            Expr::Piecewise(pw) => {
                f.write_str("piecewise{")?;
                for (i, piece) in pw.pieces.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "[{:?}, {:?}]: ", piece.guard.a(), piece.guard.b())?;
                    piece.body.fmt_prec(f, 0)?;
                }
                f.write_str("}")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
