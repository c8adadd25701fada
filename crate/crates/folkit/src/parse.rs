//! S-expression concrete syntax for formulas.
//!
//! Grammar (whitespace separates tokens, `;` comments to end of line):
//!
//! ```text
//! formula  := (RELNAME var*)
//!           | (= var var)
//!           | (not formula)
//!           | (and formula*) | (or formula*)
//!           | (-> formula formula) | (<-> formula formula)
//!           | (exists binders formula) | (forall binders formula)
//! binders  := (var SORT) | ((var SORT) (var SORT) ...)
//! ```
//!
//! Parsing checks sorts against a [`Signature`]; free variables must be
//! declared up front with their sorts.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::{Formula, Signature, SortError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Sort(#[from] SortError),
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug)]
enum Token {
    Open(Pos),
    Close(Pos),
    Symbol(Pos, String),
}

impl Token {
    fn pos(&self) -> Pos {
        match self {
            Token::Open(p) | Token::Close(p) => *p,
            Token::Symbol(p, _) => *p,
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' => {
                chars.next();
                col += 1;
                tokens.push(Token::Open(pos));
            }
            ')' => {
                chars.next();
                col += 1;
                tokens.push(Token::Close(pos));
            }
            _ => {
                let mut sym = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    sym.push(c);
                    chars.next();
                    col += 1;
                }
                tokens.push(Token::Symbol(pos, sym));
            }
        }
    }
    Ok(tokens)
}

/// An s-expression with source positions, the intermediate parse form.
#[derive(Debug)]
enum SExp {
    Sym(Pos, String),
    List(Pos, Vec<SExp>),
}

impl SExp {
    fn pos(&self) -> Pos {
        match self {
            SExp::Sym(p, _) | SExp::List(p, _) => *p,
        }
    }
}

fn read_sexp(tokens: &[Token], at: usize) -> Result<(SExp, usize), ParseError> {
    match tokens.get(at) {
        None => Err(syntax(
            tokens.last().map(Token::pos).unwrap_or(Pos { line: 1, col: 1 }),
            "unexpected end of input",
        )),
        Some(Token::Symbol(p, s)) => Ok((SExp::Sym(*p, s.clone()), at + 1)),
        Some(Token::Close(p)) => Err(syntax(*p, "unexpected `)`")),
        Some(Token::Open(p)) => {
            let mut items = Vec::new();
            let mut i = at + 1;
            loop {
                match tokens.get(i) {
                    None => return Err(syntax(*p, "unclosed `(`")),
                    Some(Token::Close(_)) => return Ok((SExp::List(*p, items), i + 1)),
                    _ => {
                        let (item, next) = read_sexp(tokens, i)?;
                        items.push(item);
                        i = next;
                    }
                }
            }
        }
    }
}

fn expect_symbol(e: &SExp, what: &str) -> Result<String, ParseError> {
    match e {
        SExp::Sym(_, s) => Ok(s.clone()),
        SExp::List(p, _) => Err(syntax(*p, format!("expected {what}, found a list"))),
    }
}

fn lower_binders(e: &SExp) -> Result<Vec<Var>, ParseError> {
    let one = |items: &[SExp], pos: Pos| -> Result<Var, ParseError> {
        if items.len() != 2 {
            return Err(syntax(pos, "binder must be (variable Sort)"));
        }
        Ok(Var::new(
            expect_symbol(&items[0], "a variable name")?,
            expect_symbol(&items[1], "a sort name")?,
        ))
    };
    match e {
        SExp::Sym(p, _) => Err(syntax(*p, "expected a binder list")),
        SExp::List(p, items) => match items.first() {
            None => Err(syntax(*p, "empty binder list")),
            Some(SExp::Sym(..)) => Ok(vec![one(items, *p)?]),
            Some(SExp::List(..)) => items
                .iter()
                .map(|b| match b {
                    SExp::List(bp, bs) => one(bs, *bp),
                    SExp::Sym(bp, _) => Err(syntax(*bp, "binder must be (variable Sort)")),
                })
                .collect(),
        },
    }
}

fn lower(e: &SExp) -> Result<Formula, ParseError> {
    let items = match e {
        SExp::Sym(p, _) => {
            return Err(syntax(*p, "a formula must be a parenthesised list"));
        }
        SExp::List(p, items) => {
            if items.is_empty() {
                return Err(syntax(*p, "empty formula"));
            }
            items
        }
    };
    let head = expect_symbol(&items[0], "an operator or relation name")?;
    let args = &items[1..];
    let arity = |n: usize| -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(
                e.pos(),
                format!("`{head}` takes {n} arguments, got {}", args.len()),
            ))
        }
    };
    match head.as_str() {
        "=" => {
            arity(2)?;
            Ok(Formula::Eq(
                expect_symbol(&args[0], "a variable")?,
                expect_symbol(&args[1], "a variable")?,
            ))
        }
        "not" => {
            arity(1)?;
            Ok(Formula::not(lower(&args[0])?))
        }
        "and" => Ok(Formula::And(args.iter().map(lower).collect::<Result<_, _>>()?)),
        "or" => Ok(Formula::Or(args.iter().map(lower).collect::<Result<_, _>>()?)),
        "->" => {
            arity(2)?;
            Ok(Formula::implies(lower(&args[0])?, lower(&args[1])?))
        }
        "<->" => {
            arity(2)?;
            Ok(Formula::iff(lower(&args[0])?, lower(&args[1])?))
        }
        "exists" | "forall" => {
            arity(2)?;
            let binders = lower_binders(&args[0])?;
            let body = lower(&args[1])?;
            Ok(if head == "exists" {
                Formula::exists(binders, body)
            } else {
                Formula::forall(binders, body)
            })
        }
        _ => Ok(Formula::Rel(
            head,
            args.iter()
                .map(|a| expect_symbol(a, "a variable"))
                .collect::<Result<_, _>>()?,
        )),
    }
}

/// Parse `text` into a well-sorted formula over `sig`.  `free` declares the
/// sorts of the formula's free variables.
pub fn parse(sig: &Signature, free: &[(&str, &str)], text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(Pos { line: 1, col: 1 }, "empty input"));
    }
    let (sexp, next) = read_sexp(&tokens, 0)?;
    if let Some(extra) = tokens.get(next) {
        return Err(syntax(extra.pos(), "trailing input after the formula"));
    }
    let formula = lower(&sexp)?;
    let decls: BTreeMap<String, String> = free
        .iter()
        .map(|(n, s)| (n.to_string(), s.to_string()))
        .collect();
    sig.validate(&formula, &decls)?;
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signal_sig() -> Signature {
        Signature::new(
            &["Par", "Sig"],
            &[("T", &["Par", "Sig"]), ("R", &["Par", "Sig"])],
        )
        .unwrap()
    }

    #[test]
    fn parses_a_guarded_universal() {
        let sig = signal_sig();
        let f = parse(&sig, &[("s", "Sig")], "(forall (a Par) (-> (T a s) (R a s)))").unwrap();
        assert_eq!(f.to_string(), "(forall (a Par) (-> (T a s) (R a s)))");
        assert_eq!(f.quantifier_depth(), 1);
    }

    #[test]
    fn parses_reflexive_equality() {
        let sig = Signature::new(&["Points"], &[]).unwrap();
        let f = parse(&sig, &[], "(exists (x Points) (= x x))").unwrap();
        assert_eq!(
            f,
            Formula::exists(vec![Var::new("x", "Points")], Formula::eq("x", "x"))
        );
    }

    #[test]
    fn swapped_arguments_are_a_sort_error() {
        let sig = signal_sig();
        let err = parse(&sig, &[("s", "Sig"), ("a", "Par")], "(T s a)").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Sort(SortError::ArgumentSort { position: 1, .. })
        ));
    }

    #[test]
    fn binder_blocks_and_comments() {
        let sig = Signature::new(&["Points"], &[("Col", &["Points", "Points", "Points"])]).unwrap();
        let text = "
            ; three mutually distinct points
            (exists ((p Points) (q Points) (r Points))
              (and (not (= p q)) (not (= q r)) (not (= p r))))";
        let f = parse(&sig, &[], text).unwrap();
        match &f {
            Formula::Exists(binders, _) => assert_eq!(binders.len(), 3),
            other => panic!("unexpected shape: {other}"),
        }
    }

    #[test]
    fn display_parse_round_trip() {
        let sig = signal_sig();
        let text = "(forall (a Par) (or (not (T a s)) (and (R a s) (<-> (T a s) (R a s)))))";
        let f = parse(&sig, &[("s", "Sig")], text).unwrap();
        assert_eq!(parse(&sig, &[("s", "Sig")], &f.to_string()).unwrap(), f);
        assert_eq!(parse(&sig, &[("s", "Sig")], &f.pretty()).unwrap(), f);
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let sig = signal_sig();
        match parse(&sig, &[], "(forall (a Par)\n  (T a s)").unwrap_err() {
            ParseError::Syntax { line, col, msg } => {
                assert_eq!((line, col), (1, 1));
                assert!(msg.contains("unclosed"));
            }
            other => panic!("unexpected error: {other}"),
        }
        match parse(&sig, &[], "(T a s) stray").unwrap_err() {
            ParseError::Syntax { line, col, msg } => {
                assert_eq!((line, col), (1, 9));
                assert!(msg.contains("trailing"));
            }
            other => panic!("unexpected error: {other}"),
        }
        // An unknown free variable surfaces as a sort problem, not a crash.
        assert!(matches!(
            parse(&sig, &[], "(T a s)").unwrap_err(),
            ParseError::Sort(SortError::UnknownVariable(_))
        ));
    }
}
