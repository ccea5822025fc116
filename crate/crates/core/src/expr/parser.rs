use super::{Expression, Func};
use crate::error::ParseError;

/// Parse an infix expression in the variable `x`.
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { offset, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.src.get(self.pos) {
                Some(b) => format!("`{}`", *b as char),
                None => "end of input".to_string(),
            };
            Err(self.syntax(self.pos, format!("expected `{}`, found {found}", c as char)))
        }
    }

    fn sum(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(b'+') {
                lhs = lhs + self.product()?;
            } else if self.eat(b'-') {
                lhs = lhs - self.product()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = lhs * self.unary()?;
            } else if self.eat(b'/') {
                lhs = lhs / self.unary()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let exponent = if self.eat(b'-') { -self.power()? } else { self.power()? };
        if exponent.contains_var() {
            return Err(ParseError::NonConstantExponent { offset: start });
        }
        let p = exponent
            .eval(0.0)
            .map_err(|_| self.syntax(start, "exponent does not evaluate to a finite constant"))?;
        Ok(base.powf(p))
    }

    fn primary(&mut self) -> Result<Expression, ParseError> {
        let start = match self.peek() {
            None => return Err(self.syntax(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return match name {
                "x" => Ok(Expression::Var),
                "pi" => Ok(Expression::Const(std::f64::consts::PI)),
                "e" => Ok(Expression::Const(std::f64::consts::E)),
                "hyp" => {
                    self.expect(b'(')?;
                    let u = self.sum()?;
                    self.expect(b',')?;
                    let eps = self.sum()?;
                    self.expect(b')')?;
                    Ok(Expression::hyp(u, eps))
                }
                _ => match Func::from_name(name) {
                    Some(f) => {
                        self.expect(b'(')?;
                        let arg = self.sum()?;
                        self.expect(b')')?;
                        Ok(arg.call(f))
                    }
                    None => Err(ParseError::UnknownIdentifier { offset: start, name: name.to_string() }),
                },
            };
        }
        Err(self.syntax(start, format!("unexpected `{}`", c as char)))
    }

    fn number(&mut self) -> Result<Expression, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                digits(self);
            } else {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>()
            .map(Expression::Const)
            .map_err(|_| self.syntax(start, format!("malformed number `{text}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_function() {
        assert_eq!(parse("exp(x)").unwrap(), Expression::Var.call(Func::Exp));
    }

    #[test]
    fn witness_polynomial() {
        let g = parse("4*x^3.5/35 - x^4/12").unwrap();
        let want = Expression::Const(4.0) * Expression::Var.powf(3.5) / Expression::Const(35.0)
            - Expression::Var.powf(4.0) / Expression::Const(12.0);
        assert_eq!(g, want);
    }

    #[test]
    fn double_caret_offset() {
        match parse("x^^2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        // power binds tighter than unary minus
        assert_eq!(parse("-x^2").unwrap(), -(Expression::Var.powf(2.0)));
        assert_eq!(parse("2^3^2").unwrap(), Expression::Const(2.0).powf(9.0));
        assert_eq!(
            parse("1 - x * 2").unwrap(),
            Expression::Const(1.0) - Expression::Var * Expression::Const(2.0)
        );
        assert_eq!(parse("x^(1/4)").unwrap(), Expression::Var.powf(0.25));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("  "), Err(ParseError::Empty));
        assert!(matches!(parse("foo(x)"), Err(ParseError::UnknownIdentifier { offset: 0, .. })));
        assert!(matches!(parse("x + y"), Err(ParseError::UnknownIdentifier { offset: 4, .. })));
        assert!(matches!(parse("2^x"), Err(ParseError::NonConstantExponent { offset: 2 })));
        assert!(matches!(parse("exp(x"), Err(ParseError::Syntax { offset: 5, .. })));
        assert!(matches!(parse("x 2"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("hyp(x)"), Err(ParseError::Syntax { offset: 5, .. })));
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(parse("1e-3").unwrap(), Expression::Const(1e-3));
        assert_eq!(parse("2.5E2").unwrap(), Expression::Const(250.0));
    }
}
