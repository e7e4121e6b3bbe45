use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::{RatFn, RatFnError, VarRegistry};

const MAX_DEGREE: u32 = u16::MAX as u32;

/// Parses an expression in the ratfunc grammar into canonical form.
///
/// ```text
/// expr   := term (('+'|'-') term)*
/// term   := factor (('*'|'/') factor)*
/// factor := base ('^' uint)?
/// base   := int | var | '(' expr ')' | '-' base
/// var    := 'x' uint | 't'
/// ```
pub fn parse_ratfn(text: &str, reg: &VarRegistry) -> Result<RatFn, RatFnError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        reg,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    reg: &'a VarRegistry,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> RatFnError {
        RatFnError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<RatFn, RatFnError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn, RatFnError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn, RatFnError> {
        let b = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| RatFnError::ExponentTooLarge)?;
            let deg = b.num_int().total_degree().max(b.den_int().total_degree());
            if e > MAX_DEGREE || deg.saturating_mul(e) > MAX_DEGREE {
                self.pos = start;
                return Err(RatFnError::ExponentTooLarge);
            }
            return Ok(b.pow(e));
        }
        Ok(b)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<RatFn, RatFnError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.base()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFn::from_poly(super::IntPoly::constant(n)))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let d = self.digits();
                if d.is_empty() {
                    self.pos = start;
                    return Err(self.err("expected variable index after `x`"));
                }
                self.lookup(&alloc::format!("x{}", d))
            }
            Some(b't') => {
                self.pos += 1;
                self.lookup("t")
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn lookup(&self, name: &str) -> Result<RatFn, RatFnError> {
        match self.reg.index_of(name) {
            Some(i) => Ok(RatFn::var(i)),
            None => Err(RatFnError::UnknownVariable(name.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> VarRegistry {
        VarRegistry::from_names(["x1", "x2", "t"]).unwrap()
    }

    #[test]
    fn reduces_on_parse() {
        let r = reg();
        let f = parse_ratfn("(x1^2 - 1)/(x1 - 1)", &r).unwrap();
        assert_eq!(f, parse_ratfn("x1 + 1", &r).unwrap());
        assert_eq!(parse_ratfn("0", &r).unwrap(), RatFn::zero());
    }

    #[test]
    fn unary_minus_binds_to_base() {
        let r = reg();
        let f = parse_ratfn("-x1^2", &r).unwrap();
        assert_eq!(f, parse_ratfn("x1*x1", &r).unwrap());
    }

    #[test]
    fn errors() {
        let r = reg();
        assert!(matches!(
            parse_ratfn("x1 + ", &r),
            Err(RatFnError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_ratfn("x9", &r),
            Err(RatFnError::UnknownVariable(_))
        ));
        assert_eq!(
            parse_ratfn("1/(x1 - x1)", &r),
            Err(RatFnError::DivisionByZero)
        );
        assert!(matches!(
            parse_ratfn("x1 x2", &r),
            Err(RatFnError::Syntax { pos: 3, .. })
        ));
    }

    #[test]
    fn print_round_trip() {
        let r = reg();
        for s in [
            "-x1^2*x2 + 3/7*t - 1",
            "(x1 - 2)/(3*x2^2 + x1)",
            "-x1*x2",
            "-5/3",
            "(2*x1)/(4*x2 - 6)",
        ] {
            let f = parse_ratfn(s, &r).unwrap();
            let printed = f.display(&r);
            assert_eq!(parse_ratfn(&printed, &r).unwrap(), f, "{s} -> {printed}");
        }
    }
}
