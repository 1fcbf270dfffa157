//! Text form of algebra elements.
//!
//! Grammar (implicit multiplication by juxtaposition):
//!
//! ```text
//! expr  := [+|-] term (( + | - ) term)*
//! term  := power (( * | / | <juxtaposition> ) power)*
//! power := atom [ ^ [-] int ]
//! atom  := int | s | <basis name> | euler | ( expr )
//! ```

use num_bigint::BigInt;

use crate::laurent::{format_s_power, FieldElement, GaussianRational, Rational};

use super::{AlgebraElement, AlgebraError, FrobeniusAlgebra};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(alg: &FrobeniusAlgebra, text: &str) -> Result<Vec<Token>, AlgebraError> {
    let mut names: Vec<&str> = alg.basis().iter().map(|b| b.name.as_str()).collect();
    names.extend(["s", "euler"]);
    const SUP: &str = "⁰¹²³⁴⁵⁶⁷⁸⁹";
    let mut normalized = String::with_capacity(text.len());
    let mut in_sup = false;
    for c in text.chars() {
        let sup_digit = SUP.chars().position(|d| d == c);
        let is_sup = sup_digit.is_some() || c == '⁻';
        if is_sup && !in_sup {
            normalized.push('^');
        }
        in_sup = is_sup;
        normalized.push(match (c, sup_digit) {
            (_, Some(d)) => char::from_digit(d as u32, 10).unwrap(),
            ('⁻', _) | ('−', _) => '-',
            ('∗', _) | ('·', _) => '*',
            (c, _) => c,
        });
    }
    let text = normalized;
    let mut tokens = Vec::new();
    let mut rest = text.as_str();
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if let Some(name) = names
            .iter()
            .filter(|n| rest.starts_with(**n))
            .max_by_key(|n| n.len())
        {
            tokens.push(Token::Name(name.to_string()));
            rest = &rest[name.len()..];
            continue;
        }
        if c.is_ascii_digit() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(rest.len());
            tokens.push(Token::Int(rest[..end].parse().unwrap()));
            rest = &rest[end..];
            continue;
        }
        if "+-*/^()".contains(c) {
            tokens.push(Token::Op(c));
            rest = &rest[1..];
            continue;
        }
        return Err(AlgebraError::Parse(format!("unexpected input at `{rest}`")));
    }
    Ok(tokens)
}

struct Parser<'a> {
    alg: &'a FrobeniusAlgebra,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<AlgebraElement, AlgebraError> {
        let negate = if self.eat_op('-') {
            true
        } else {
            self.eat_op('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Int(_)) | Some(Token::Name(_)) | Some(Token::Op('('))
        )
    }

    fn term(&mut self) -> Result<AlgebraElement, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            if self.eat_op('*') || self.starts_atom() {
                let rhs = self.power()?;
                acc = self.alg.quantum_mul(&acc, &rhs)?;
            } else if self.eat_op('/') {
                let rhs = self.power()?;
                let inv = self.alg.invert_element(&rhs)?;
                acc = self.alg.quantum_mul(&acc, &inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<AlgebraElement, AlgebraError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let paren = self.eat_op('(');
        let negative = self.eat_op('-');
        let Some(Token::Int(k)) = self.peek().cloned() else {
            return Err(self.err("expected exponent"));
        };
        self.pos += 1;
        if paren && !self.eat_op(')') {
            return Err(self.err("expected `)`"));
        }
        let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
        let raised = self.alg.power(&base, k)?;
        if negative {
            self.alg.invert_element(&raised)
        } else {
            Ok(raised)
        }
    }

    fn atom(&mut self) -> Result<AlgebraElement, AlgebraError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(self
                    .alg
                    .scalar(FieldElement::constant(GaussianRational::from_rational(
                        Rational::from_integer(n),
                    ))))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                if let Some(i) = self.alg.index_of(&name) {
                    Ok(self.alg.basis_element(i))
                } else if name == "s" {
                    Ok(self.alg.scalar(FieldElement::s_pow(1)))
                } else {
                    self.alg.euler_class()
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, class or `(`")),
        }
    }
}

pub(super) fn parse_element(
    alg: &FrobeniusAlgebra,
    text: &str,
) -> Result<AlgebraElement, AlgebraError> {
    let tokens = tokenize(alg, text)?;
    if tokens.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    let mut parser = Parser {
        alg,
        tokens,
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}

pub(super) fn format_element(alg: &FrobeniusAlgebra, a: &AlgebraElement) -> String {
    // (exponent, basis index, coefficient), plus coordinates that are not
    // Laurent polynomials.
    let mut terms: Vec<(i64, usize, GaussianRational)> = Vec::new();
    let mut rational_parts: Vec<String> = Vec::new();
    for (i, c) in a.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match c.laurent_terms() {
            Some(ts) => terms.extend(ts.into_iter().map(|(e, coef)| (e, i, coef))),
            None => {
                let class = &alg.basis()[i].name;
                if i == alg.unit_index() {
                    rational_parts.push(format!("{c}"));
                } else {
                    rational_parts.push(format!("{c} {class}"));
                }
            }
        }
    }
    if terms.is_empty() && rational_parts.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut out = String::new();
    for (idx, (e, i, c)) in terms.iter().enumerate() {
        let (neg, mag) = if c.is_negative_real() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " − " } else { " + " });
        }
        let mut rest: Vec<String> = Vec::new();
        if *i != alg.unit_index() {
            rest.push(alg.basis()[*i].name.clone());
        }
        let pow = format_s_power(*e);
        if !pow.is_empty() {
            rest.push(pow);
        }
        let rest = rest.join(" ");
        if rest.is_empty() && mag.is_one() {
            out.push_str(&alg.basis()[*i].name);
        } else if rest.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&rest);
        } else {
            let coef = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let sep = if coef.contains('/') || coef.contains('i') {
                " "
            } else {
                ""
            };
            out.push_str(&format!("{coef}{sep}{rest}"));
        }
    }
    for part in rational_parts {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&part);
    }
    out
}
