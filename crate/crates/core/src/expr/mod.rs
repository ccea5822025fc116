//! Integrand expressions: parsing, printing, scalar evaluation and order-4
//! derivative jets.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)?        exponent := '-'? power, constant only
//! primary := number | 'x' | 'pi' | 'e' | func '(' sum ')' | 'hyp' '(' sum ',' sum ')' | '(' sum ')'
//! func    := exp | log | ln | sqrt | abs | sin | cos
//! ```

mod jet;
mod parser;

use std::fmt;
use std::ops;

pub use jet::{Jet4, ORDER};
pub use parser::parse;

use crate::error::{DomainError, Error, Result};
use jet::{Series, DIV_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Abs,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

/// A univariate real expression in the variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Const(f64),
    Var,
    Neg(Box<Expression>),
    Call(Func, Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    /// Power with a constant real exponent.
    Pow(Box<Expression>, f64),
    /// `hyp(u, eps) = sqrt(u^2 + eps^2)`, a smooth stand-in for `abs(u)`.
    Hyp(Box<Expression>, Box<Expression>),
}

impl std::str::FromStr for Expression {
    type Err = crate::error::ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse(s)
    }
}

impl Expression {
    pub fn var() -> Self {
        Expression::Var
    }

    pub fn constant(c: f64) -> Self {
        Expression::Const(c)
    }

    pub fn call(self, f: Func) -> Self {
        Expression::Call(f, Box::new(self))
    }

    pub fn powf(self, p: f64) -> Self {
        Expression::Pow(Box::new(self), p)
    }

    pub fn hyp(u: Expression, eps: Expression) -> Self {
        Expression::Hyp(Box::new(u), Box::new(eps))
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expression::Const(_) => false,
            Expression::Var => true,
            Expression::Neg(u) | Expression::Call(_, u) | Expression::Pow(u, _) => u.contains_var(),
            Expression::Add(l, r)
            | Expression::Sub(l, r)
            | Expression::Mul(l, r)
            | Expression::Div(l, r)
            | Expression::Hyp(l, r) => l.contains_var() || r.contains_var(),
        }
    }

    /// Scalar value at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = self.eval_raw(x).map_err(Error::domain(x))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain { x, source: DomainError::NonFinite })
        }
    }

    fn eval_raw(&self, x: f64) -> std::result::Result<f64, DomainError> {
        Ok(match self {
            Expression::Const(c) => *c,
            Expression::Var => x,
            Expression::Neg(u) => -u.eval_raw(x)?,
            Expression::Call(f, u) => {
                let u = u.eval_raw(x)?;
                match f {
                    Func::Exp => u.exp(),
                    Func::Log if u <= 0.0 => return Err(DomainError::LogNonPositive(u)),
                    Func::Log => u.ln(),
                    Func::Sqrt if u < 0.0 => return Err(DomainError::SqrtNegative(u)),
                    Func::Sqrt => u.sqrt(),
                    Func::Abs => u.abs(),
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                }
            }
            Expression::Add(l, r) => l.eval_raw(x)? + r.eval_raw(x)?,
            Expression::Sub(l, r) => l.eval_raw(x)? - r.eval_raw(x)?,
            Expression::Mul(l, r) => l.eval_raw(x)? * r.eval_raw(x)?,
            Expression::Div(l, r) => {
                let d = r.eval_raw(x)?;
                if d.abs() <= DIV_EPS {
                    return Err(DomainError::DivisionByZero);
                }
                l.eval_raw(x)? / d
            }
            Expression::Pow(u, p) => {
                let b = u.eval_raw(x)?;
                let integral = *p == p.trunc();
                if b < 0.0 && !integral {
                    return Err(DomainError::NegativeBase { base: b, exponent: *p });
                }
                if b.abs() <= DIV_EPS && *p < 0.0 {
                    return Err(DomainError::DivisionByZero);
                }
                if integral && p.abs() <= i32::MAX as f64 {
                    b.powi(*p as i32)
                } else {
                    b.powf(*p)
                }
            }
            Expression::Hyp(u, e) => u.eval_raw(x)?.hypot(e.eval_raw(x)?),
        })
    }

    /// Value and first four derivatives at `x`; any domain violation along
    /// the way is reported as an error.
    ///
    /// Derivatives that genuinely diverge at `x` (order three and up of
    /// `x^2.5` at 0, say) come back as signed infinities; callers that need a
    /// particular order finite must check it.
    pub fn jet(&self, x: f64) -> Result<Jet4> {
        let s = self.series(x).map_err(Error::domain(x))?;
        let jet = s.into_jet(x);
        if jet.coeffs[0].is_finite() && !jet.coeffs.iter().any(|c| c.is_nan()) {
            Ok(jet)
        } else {
            Err(Error::Domain { x, source: DomainError::NonFinite })
        }
    }

    /// Like [`Expression::jet`] but without the domain guard: violations
    /// surface as IEEE non-finite coefficients instead of errors.
    pub fn jet_unchecked(&self, x: f64) -> Jet4 {
        self.series(x)
            .map(|s| s.into_jet(x))
            .unwrap_or(Jet4 { point: x, coeffs: [f64::NAN; ORDER] })
    }

    fn series(&self, x: f64) -> std::result::Result<Series, DomainError> {
        Ok(match self {
            Expression::Const(c) => Series::constant(*c),
            Expression::Var => Series::variable(x),
            Expression::Neg(u) => -u.series(x)?,
            Expression::Call(f, u) => {
                let u = u.series(x)?;
                match f {
                    Func::Exp => u.exp(),
                    Func::Log => u.ln()?,
                    Func::Sqrt => u.sqrt()?,
                    Func::Abs => u.abs()?,
                    Func::Sin => u.sin_cos().0,
                    Func::Cos => u.sin_cos().1,
                }
            }
            Expression::Add(l, r) => l.series(x)? + r.series(x)?,
            Expression::Sub(l, r) => l.series(x)? - r.series(x)?,
            Expression::Mul(l, r) => l.series(x)? * r.series(x)?,
            Expression::Div(l, r) => (l.series(x)? / r.series(x)?)?,
            Expression::Pow(u, p) => u.series(x)?.powf(*p)?,
            Expression::Hyp(u, e) => {
                let (u, e) = (u.series(x)?, e.series(x)?);
                (u * u + e * e).sqrt()?
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) | Expression::Div(..) => 2,
            Expression::Neg(_) => 3,
            Expression::Pow(..) => 4,
            Expression::Const(c) if *c < 0.0 || c.is_sign_negative() => 3,
            _ => 5,
        }
    }
}

fn fmt_child(f: &mut fmt::Formatter<'_>, e: &Expression, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn fmt_number(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    if c.is_sign_negative() {
        write!(f, "-{}", -c)
    } else {
        write!(f, "{c}")
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Const(c) => fmt_number(f, *c),
            Expression::Var => f.write_str("x"),
            Expression::Neg(u) => {
                f.write_str("-")?;
                fmt_child(f, u, 3)
            }
            Expression::Call(func, u) => write!(f, "{}({u})", func.name()),
            Expression::Add(l, r) | Expression::Sub(l, r) => {
                fmt_child(f, l, 1)?;
                f.write_str(if matches!(self, Expression::Add(..)) { " + " } else { " - " })?;
                fmt_child(f, r, 2)
            }
            Expression::Mul(l, r) | Expression::Div(l, r) => {
                fmt_child(f, l, 2)?;
                f.write_str(if matches!(self, Expression::Mul(..)) { "*" } else { "/" })?;
                fmt_child(f, r, 3)
            }
            Expression::Pow(u, p) => {
                fmt_child(f, u, 5)?;
                f.write_str("^")?;
                if p.is_sign_negative() {
                    f.write_str("(")?;
                    fmt_number(f, *p)?;
                    f.write_str(")")
                } else {
                    fmt_number(f, *p)
                }
            }
            Expression::Hyp(u, e) => write!(f, "hyp({u}, {e})"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for Expression {
            type Output = Expression;
            fn $method(self, rhs: Expression) -> Expression {
                Expression::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn derivs(src: &str, x: f64) -> [f64; 5] {
        parse(src).unwrap().jet(x).unwrap().derivatives()
    }

    #[test]
    fn square_at_three() {
        assert_eq!(derivs("x^2", 3.0), [9.0, 6.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn exp_at_zero() {
        assert_eq!(derivs("exp(x)", 0.0), [1.0; 5]);
    }

    #[test]
    fn reciprocal_at_two() {
        let got = derivs("1/x", 2.0);
        let want = [0.5, -0.25, 0.25, -0.375, 0.75];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15, "{got:?}");
        }
    }

    #[test]
    fn reciprocal_matches_central_differences() {
        // Central differences with h = 1e-4, independent of the jet path.
        let f = |t: f64| 1.0 / t;
        let (x, h) = (2.0, 1e-4);
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        let j = derivs("1/x", x);
        assert!((j[1] - d1).abs() < 1e-7);
        assert!((j[2] - d2).abs() < 1e-5);
    }

    #[test]
    fn hyp_is_smooth_abs() {
        let j = derivs("hyp(x - 0.5, 0.01)", 0.5);
        assert!((j[0] - 0.01).abs() < 1e-17);
        assert!(j[1].abs() < 1e-15);
        assert!((j[2] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn abs_away_from_zero() {
        assert_eq!(derivs("abs(x)", -2.0)[..2], [2.0, -1.0]);
        assert!(parse("abs(x)").unwrap().jet(0.0).is_err());
        assert_eq!(parse("abs(x)").unwrap().eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_guard() {
        let e = parse("log(x)").unwrap();
        assert!(matches!(
            e.jet(-1.0),
            Err(Error::Domain { source: DomainError::LogNonPositive(_), .. })
        ));
        assert!(e.jet_unchecked(-1.0).coeffs[0].is_nan());
        assert!(parse("1/x").unwrap().eval(0.0).is_err());
        assert!(parse("sqrt(x)").unwrap().eval(-1.0).is_err());
        assert!(parse("x^0.5").unwrap().eval(-1.0).is_err());
        assert_eq!(parse("x^3").unwrap().eval(-2.0).unwrap(), -8.0);
        assert_eq!(parse("x^3.5").unwrap().eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn printing() {
        assert_eq!(parse("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse("(-x)^2").unwrap().to_string(), "(-x)^2");
        assert_eq!(parse("x - (x - 1)").unwrap().to_string(), "x - (x - 1)");
        assert_eq!(parse("x/(2*x)").unwrap().to_string(), "x/(2*x)");
        assert_eq!(parse("x^-1").unwrap().to_string(), "x^(-1)");
        assert_eq!(parse("4*x^3.5/35 - x^4/12").unwrap().to_string(), "4*x^3.5/35 - x^4/12");
    }
}
