//! Tiny arithmetic expression evaluator for config values such as
//! `"sqrt(13)-3"` or `"pi/2"`.
//!
//! Grammar: `+ - * / ^`, parentheses, decimal literals, the constants `pi`
//! and `e`, and the functions `sqrt`, `sin`, `cos`, `exp`, `ln`.

use std::iter::Peekable;
use std::str::Chars;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot evaluate `{input}`: {reason}")]
pub struct ExprError {
    pub input: String,
    pub reason: String,
}

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: char) -> Result<(), String> {
        match self.peek() {
            Some(c) if c == want => {
                self.chars.next();
                Ok(())
            }
            Some(c) => Err(format!("expected `{want}`, found `{c}`")),
            None => Err(format!("expected `{want}`, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<f64, String> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.chars.next();
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64, String> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.chars.next();
            let rhs = self.unary()?;
            acc = if op == '*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<f64, String> {
        match self.peek() {
            Some('-') => {
                self.chars.next();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.chars.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<f64, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.chars.next();
            let exp = self.unary()?;
            return Ok(base.powf(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<f64, String> {
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                match name.as_str() {
                    "pi" => Ok(std::f64::consts::PI),
                    "e" => Ok(std::f64::consts::E),
                    "sqrt" | "sin" | "cos" | "exp" | "ln" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        Ok(match name.as_str() {
                            "sqrt" => arg.sqrt(),
                            "sin" => arg.sin(),
                            "cos" => arg.cos(),
                            "exp" => arg.exp(),
                            _ => arg.ln(),
                        })
                    }
                    other => Err(format!("unknown name `{other}`")),
                }
            }
            Some(c) => Err(format!("unexpected `{c}`")),
            None => Err("unexpected end of input".into()),
        }
    }

    fn number(&mut self) -> Result<f64, String> {
        let mut text = String::new();
        while let Some(&c) = self.chars.peek() {
            let exponent_sign = (c == '-' || c == '+') && text.ends_with(['e', 'E']);
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exponent_sign {
                text.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        text.parse::<f64>().map_err(|_| format!("bad number `{text}`"))
    }
}

/// Evaluates `input` to a finite real number.
pub fn evaluate(input: &str) -> Result<f64, ExprError> {
    let fail = |reason: String| ExprError {
        input: input.to_string(),
        reason,
    };
    let mut p = Parser {
        chars: input.chars().peekable(),
    };
    let value = p.expr().map_err(fail)?;
    if let Some(c) = p.peek() {
        return Err(fail(format!("trailing `{c}`")));
    }
    if !value.is_finite() {
        return Err(fail("result is not finite".into()));
    }
    Ok(value)
}
