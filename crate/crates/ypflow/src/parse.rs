//! Parser for human-written polynomial expressions like
//! `x^4-8x^3-18x^2+56x` or `x^6-0.3726x^4+0.0574x^3`.
//!
//! Grammar: a sum of signed terms, each `[coefficient][variable[^exponent]]`
//! with implicit multiplication allowed and whitespace ignored. Any single
//! letter may serve as the variable, but only one letter per expression.
//! There are no parentheses; callers wanting raw numbers should pass a
//! coefficient list instead.

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Token {
    Number { value: f64, pos: usize },
    Variable { letter: char, pos: usize },
    Caret { pos: usize },
    Plus { pos: usize },
    Minus { pos: usize },
    Times { pos: usize },
}

/// A lexed expression: the source text plus its token stream.
#[derive(Debug, Clone)]
pub struct PolyExpr {
    pub source: String,
    pub tokens: Vec<Token>,
}

impl PolyExpr {
    pub fn lex(source: &str) -> Result<PolyExpr> {
        let mut tokens = Vec::new();
        let bytes: Vec<char> = source.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                ' ' | '\t' => i += 1,
                '+' => {
                    tokens.push(Token::Plus { pos: i });
                    i += 1;
                }
                '-' | '\u{2212}' => {
                    tokens.push(Token::Minus { pos: i });
                    i += 1;
                }
                '*' => {
                    tokens.push(Token::Times { pos: i });
                    i += 1;
                }
                '^' => {
                    tokens.push(Token::Caret { pos: i });
                    i += 1;
                }
                '(' | ')' => return Err(Error::Syntax {
                    position: i,
                    message:
                        "parentheses are not supported; pass a coefficient list (--coeffs) instead"
                            .into(),
                }),
                '0'..='9' | '.' => {
                    let start = i;
                    let mut seen_dot = false;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_digit() || (bytes[i] == '.' && !seen_dot))
                    {
                        if bytes[i] == '.' {
                            seen_dot = true;
                        }
                        i += 1;
                    }
                    let text: String = bytes[start..i].iter().collect();
                    let value: f64 = text.parse().map_err(|_| Error::Syntax {
                        position: start,
                        message: format!("invalid numeric literal '{text}'"),
                    })?;
                    tokens.push(Token::Number { value, pos: start });
                }
                c if c.is_ascii_alphabetic() => {
                    tokens.push(Token::Variable { letter: c, pos: i });
                    i += 1;
                }
                other => {
                    return Err(Error::Syntax {
                        position: i,
                        message: format!("unexpected character '{other}'"),
                    })
                }
            }
        }
        Ok(PolyExpr {
            source: source.to_string(),
            tokens,
        })
    }
}

/// Parses an expression into a coefficient vector. Terms with the same
/// power are summed; literals convert with the usual exact decimal-to-binary
/// reading of `str::parse::<f64>`.
pub fn parse(expr: &str) -> Result<Polynomial> {
    let lexed = PolyExpr::lex(expr)?;
    let toks = &lexed.tokens;
    let mut variable: Option<char> = None;
    let mut coeffs: Vec<f64> = Vec::new();
    let mut i = 0;

    let end_pos = expr.len();
    if toks.is_empty() {
        return Err(Error::Syntax {
            position: 0,
            message: "empty expression".into(),
        });
    }

    let mut add_term = |power: usize, value: f64| {
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0.0);
        }
        coeffs[power] += value;
    };

    loop {
        // sign prefix
        let mut sign = 1.0;
        loop {
            match toks.get(i) {
                Some(Token::Plus { .. }) => i += 1,
                Some(Token::Minus { .. }) => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        // term: number, variable, or number [*] variable, with optional ^exp
        let mut coef = sign;
        let mut has_number = false;
        if let Some(Token::Number { value, .. }) = toks.get(i) {
            coef *= value;
            has_number = true;
            i += 1;
            if let Some(Token::Times { .. }) = toks.get(i) {
                i += 1;
                if !matches!(toks.get(i), Some(Token::Variable { .. })) {
                    let pos = token_pos(toks.get(i)).unwrap_or(end_pos);
                    return Err(Error::Syntax {
                        position: pos,
                        message: "expected a variable after '*'".into(),
                    });
                }
            }
        }
        let mut power = 0usize;
        if let Some(Token::Variable { letter, pos }) = toks.get(i).copied() {
            match variable {
                None => variable = Some(letter),
                Some(v) if v != letter => {
                    return Err(Error::MultipleVariables {
                        first: v,
                        second: letter,
                    })
                }
                _ => {}
            }
            let _ = pos;
            i += 1;
            power = 1;
            if let Some(Token::Caret { pos }) = toks.get(i).copied() {
                i += 1;
                match toks.get(i).copied() {
                    Some(Token::Number { value, pos: npos }) => {
                        if value.fract() != 0.0 || !(0.0..=512.0).contains(&value) {
                            return Err(Error::Syntax {
                                position: npos,
                                message: format!(
                                    "exponent must be a small nonnegative integer, got '{value}'"
                                ),
                            });
                        }
                        power = value as usize;
                        i += 1;
                    }
                    other => {
                        let p = token_pos(other.as_ref()).unwrap_or(pos + 1);
                        return Err(Error::Syntax {
                            position: p,
                            message: "exponent must be a nonnegative integer".into(),
                        });
                    }
                }
            }
        } else if !has_number {
            let pos = token_pos(toks.get(i)).unwrap_or(end_pos);
            return Err(Error::Syntax {
                position: pos,
                message: "expected a term (number or variable)".into(),
            });
        }
        add_term(power, coef);

        match toks.get(i) {
            None => break,
            Some(Token::Plus { .. }) | Some(Token::Minus { .. }) => continue,
            other => {
                let pos = token_pos(other).unwrap_or(end_pos);
                return Err(Error::Syntax {
                    position: pos,
                    message: "expected '+' or '-' between terms".into(),
                });
            }
        }
    }

    Ok(Polynomial::new(coeffs))
}

fn token_pos(t: Option<&Token>) -> Option<usize> {
    t.map(|t| match *t {
        Token::Number { pos, .. }
        | Token::Variable { pos, .. }
        | Token::Caret { pos }
        | Token::Plus { pos }
        | Token::Minus { pos }
        | Token::Times { pos } => pos,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_example() {
        let p = parse("x^4-8x^3-18x^2+56x").unwrap();
        assert_eq!(p.coeffs(), &[0.0, 56.0, -18.0, -8.0, 1.0]);
    }

    #[test]
    fn sextic_example() {
        let p = parse("x^6-0.3726x^4+0.0574x^3+0.0306x^2-0.0084x").unwrap();
        assert_eq!(
            p.coeffs(),
            &[0.0, -0.0084, 0.0306, 0.0574, -0.3726, 0.0, 1.0]
        );
    }

    #[test]
    fn constant() {
        assert_eq!(parse("3").unwrap().coeffs(), &[3.0]);
    }

    #[test]
    fn repeated_powers_sum() {
        let p = parse("x + x - 2x^2 + x^2").unwrap();
        assert_eq!(p.coeffs(), &[0.0, 2.0, -1.0]);
    }

    #[test]
    fn explicit_star_and_spaces() {
        let p = parse("2 * x^3 - 0.5x + 1").unwrap();
        assert_eq!(p.coeffs(), &[1.0, -0.5, 0.0, 2.0]);
    }

    #[test]
    fn multiple_variables_rejected() {
        assert!(matches!(
            parse("x+y"),
            Err(Error::MultipleVariables {
                first: 'x',
                second: 'y'
            })
        ));
    }

    #[test]
    fn negative_exponent_rejected() {
        assert!(matches!(parse("x^-1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn parentheses_rejected_with_hint() {
        match parse("(x+1)^2") {
            Err(Error::Syntax { position, message }) => {
                assert_eq!(position, 0);
                assert!(message.contains("--coeffs"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn display_round_trip() {
        let p = Polynomial::from_descending(&[1.0, -8.0, -18.0, 56.0, 0.0]);
        assert_eq!(parse(&p.to_string()).unwrap(), p);
        let q = Polynomial::from_descending(&[1.0, 0.0, -0.3726, 0.0574, 0.0306, -0.0084, 0.0]);
        assert_eq!(parse(&q.to_string()).unwrap(), q);
    }
}
