//! Recursive-descent parser for field elements.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | power)*     juxtaposition multiplies
//! unary := '-' unary | power
//! power := atom ('^' '-'? digits)?
//! atom  := digits | ident | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub(crate) trait ExprField {
    type Elem: Clone;
    fn int(&self, n: &BigInt) -> Self::Elem;
    fn symbol(&self, name: &str) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn pow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem>;
}

struct Parser<'a, F: ExprField> {
    src: &'a [u8],
    pos: usize,
    field: &'a F,
}

pub(crate) fn parse<F: ExprField>(field: &F, src: &str) -> Result<F::Elem> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        field,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected {:?}", p.src[p.pos] as char),
        ));
    }
    Ok(v)
}

impl<'a, F: ExprField> Parser<'a, F> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<F::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let r = self.term()?;
                acc = self.field.add(&acc, &r);
            } else if self.eat(b'-') {
                let r = self.term()?;
                acc = self.field.sub(&acc, &r);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<F::Elem> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'*') {
                let r = self.unary()?;
                acc = self.field.mul(&acc, &r);
            } else if self.eat(b'/') {
                let r = self.unary()?;
                acc = self
                    .field
                    .div(&acc, &r)
                    .ok_or_else(|| Error::parse(at, "division by zero"))?;
            } else if matches!(self.peek(), Some(c) if c == b'(' || c.is_ascii_alphabetic()) {
                let r = self.power()?;
                acc = self.field.mul(&acc, &r);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<F::Elem> {
        if self.eat(b'-') {
            let v = self.unary()?;
            return Ok(self.field.neg(&v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<F::Elem> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(Error::parse(start, "expected integer exponent"));
        }
        let e: i64 = digits
            .parse()
            .map_err(|_| Error::parse(start, "exponent out of range"))?;
        let e = if neg { -e } else { e };
        self.field
            .pow(&base, e)
            .ok_or_else(|| Error::parse(start, "negative power of zero"))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<F::Elem> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(Error::parse(start, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("ascii digits");
                Ok(self.field.int(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.field
                    .symbol(name)
                    .ok_or_else(|| Error::parse(start, format!("unknown symbol {name:?}")))
            }
            Some(c) => Err(Error::parse(start, format!("unexpected {:?}", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    struct Q;

    impl ExprField for Q {
        type Elem = Rational;
        fn int(&self, n: &BigInt) -> Rational {
            Rational::from_int(n.clone())
        }
        fn symbol(&self, _: &str) -> Option<Rational> {
            None
        }
        fn add(&self, a: &Rational, b: &Rational) -> Rational {
            a + b
        }
        fn sub(&self, a: &Rational, b: &Rational) -> Rational {
            a - b
        }
        fn mul(&self, a: &Rational, b: &Rational) -> Rational {
            a * b
        }
        fn neg(&self, a: &Rational) -> Rational {
            -a
        }
        fn div(&self, a: &Rational, b: &Rational) -> Option<Rational> {
            (!b.is_zero()).then(|| a / b)
        }
        fn pow(&self, a: &Rational, e: i64) -> Option<Rational> {
            (e >= 0 || !a.is_zero()).then(|| a.pow(e))
        }
    }

    fn eval(s: &str) -> Result<String> {
        parse(&Q, s).map(|r| r.to_string())
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(eval("1 + 2*3").unwrap(), "7");
        assert_eq!(eval("-2^2").unwrap(), "-4");
        assert_eq!(eval("(1-3)/4").unwrap(), "-1/2");
        assert_eq!(eval("2^-3").unwrap(), "1/8");
        assert_eq!(eval("3(1+1)").unwrap(), "6");
        assert_eq!(eval("-7/3").unwrap(), "-7/3");
        assert_eq!(eval("1--1").unwrap(), "2");
    }

    #[test]
    fn error_positions() {
        assert_eq!(eval("1 + x"), Err(Error::parse(4, "unknown symbol \"x\"")));
        assert!(matches!(eval("(1+2"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(eval("1/0"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(eval("2^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(eval(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(eval("1 2"), Err(Error::Parse { pos: 2, .. })));
    }
}
