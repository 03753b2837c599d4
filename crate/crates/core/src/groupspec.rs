//! Textual group expressions such as `D8xC2^2` or `Dih(C3)`.
//!
//! ```text
//! expr    := factor ('x' factor)*          left-associative direct product
//! factor  := atom | '(' expr ')'
//! atom    := 'C' n | 'C2^' k | 'EA' k | 'D' 2n | 'Q8' | 'Dih(' expr ')'
//!          | 'table:' path                 path ends at whitespace, '(' or ')'
//! ```
//!
//! Whitespace between tokens is ignored; keywords are case sensitive.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::constructors::{self, ConstructionError};
use crate::group::{Group, GroupError};

/// Upper bound on the order of an evaluated expression.
pub const MAX_EVAL_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    ElementaryAbelian(u32),
    Quaternion8,
    GeneralizedDihedral(Box<GroupSpec>),
    TableFile(String),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("semantic error at position {position}: {message}")]
    Semantic { position: usize, message: String },
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid table in {path}: {source}")]
    Table {
        path: String,
        #[source]
        source: GroupError,
    },
}

impl From<ConstructionError> for EvalError {
    fn from(e: ConstructionError) -> Self {
        EvalError::Semantic(e.to_string())
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let spec = parser.expr()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.syntax(format!("unexpected {:?}", parser.rest_preview())));
    }
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn rest_preview(&self) -> String {
        self.rest().chars().take(8).collect()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected {token:?}")))
        }
    }

    fn number(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.syntax("expected a number"));
        }
        self.pos += digits;
        let value = self.text[start..self.pos].parse().map_err(|_| ParseError::Semantic {
            position: start,
            message: "number too large".into(),
        })?;
        Ok((value, start))
    }

    fn expr(&mut self) -> Result<GroupSpec, ParseError> {
        let mut left = self.factor()?;
        while self.eat("x") {
            let right = self.factor()?;
            left = GroupSpec::DirectProduct(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<GroupSpec, ParseError> {
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<GroupSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("table:") {
            self.skip_ws();
            let len = self
                .rest()
                .find(|ch: char| ch.is_whitespace() || ch == '(' || ch == ')')
                .unwrap_or(self.rest().len());
            if len == 0 {
                return Err(self.syntax("expected a path after 'table:'"));
            }
            let path = self.rest()[..len].to_string();
            self.pos += len;
            return Ok(GroupSpec::TableFile(path));
        }
        if self.eat("Dih") {
            self.expect("(")?;
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(GroupSpec::GeneralizedDihedral(Box::new(inner)));
        }
        if self.eat("EA") {
            let (k, at) = self.number()?;
            return Ok(GroupSpec::ElementaryAbelian(rank(k, at)?));
        }
        if self.eat("Q8") {
            return Ok(GroupSpec::Quaternion8);
        }
        if self.eat("C") {
            let (n, at) = self.number()?;
            if self.eat("^") {
                if n != 2 {
                    return Err(ParseError::Syntax {
                        position: at,
                        message: "only C2 takes an exponent".into(),
                    });
                }
                let (k, at) = self.number()?;
                return Ok(GroupSpec::ElementaryAbelian(rank(k, at)?));
            }
            if n == 0 {
                return Err(ParseError::Semantic {
                    position: at,
                    message: "cyclic order must be positive".into(),
                });
            }
            return Ok(GroupSpec::Cyclic(n));
        }
        if self.eat("D") {
            let (n, at) = self.number()?;
            if n < 2 || n % 2 != 0 {
                return Err(ParseError::Semantic {
                    position: at,
                    message: format!("dihedral order must be even and at least 2, got {n}"),
                });
            }
            return Ok(GroupSpec::Dihedral(n));
        }
        self.pos = start;
        Err(self.syntax(format!("expected a group, found {:?}", self.rest_preview())))
    }
}

fn rank(k: usize, at: usize) -> Result<u32, ParseError> {
    u32::try_from(k).ok().filter(|&k| k <= 10).ok_or(ParseError::Semantic {
        position: at,
        message: format!("elementary abelian rank {k} exceeds 10"),
    })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::ElementaryAbelian(k) => write!(f, "EA{k}"),
            GroupSpec::Quaternion8 => f.write_str("Q8"),
            GroupSpec::GeneralizedDihedral(inner) => write!(f, "Dih({inner})"),
            GroupSpec::TableFile(path) => write!(f, "table:{path}"),
            GroupSpec::DirectProduct(left, right) => {
                // A table path would swallow the operator, so it gets parentheses.
                match **left {
                    GroupSpec::TableFile(_) => write!(f, "({left})")?,
                    _ => write!(f, "{left}")?,
                }
                f.write_str("x")?;
                match **right {
                    GroupSpec::DirectProduct(..) | GroupSpec::TableFile(_) => write!(f, "({right})"),
                    _ => write!(f, "{right}"),
                }
            }
        }
    }
}

impl GroupSpec {
    /// Order of the described group, when it does not depend on a file.
    pub fn static_order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) => Some(*n),
            GroupSpec::ElementaryAbelian(k) => 1usize.checked_shl(*k),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::GeneralizedDihedral(inner) => inner.static_order()?.checked_mul(2),
            GroupSpec::TableFile(_) => None,
            GroupSpec::DirectProduct(l, r) => l.static_order()?.checked_mul(r.static_order()?),
        }
    }

    /// Builds the group. Relative table paths resolve against `base_dir`.
    pub fn evaluate(&self, base_dir: &Path) -> Result<Group, EvalError> {
        let group = match self {
            GroupSpec::Cyclic(n) => {
                check_order(*n)?;
                constructors::cyclic(*n)?
            }
            GroupSpec::Dihedral(n) => {
                check_order(*n)?;
                constructors::dihedral(*n)?
            }
            GroupSpec::ElementaryAbelian(k) => {
                check_order(1usize << k)?;
                constructors::elementary_abelian(*k)?
            }
            GroupSpec::Quaternion8 => constructors::quaternion8(),
            GroupSpec::GeneralizedDihedral(inner) => {
                let base = inner.evaluate(base_dir)?;
                check_order(base.order() * 2)?;
                if !base.is_abelian() {
                    return Err(EvalError::Semantic(format!("Dih({inner}) needs an abelian base")));
                }
                constructors::generalized_dihedral(&base)?
            }
            GroupSpec::TableFile(path) => {
                let full = base_dir.join(path);
                let text = std::fs::read_to_string(&full).map_err(|source| EvalError::Io {
                    path: path.clone(),
                    source,
                })?;
                let group = Group::parse_text(&text).map_err(|source| EvalError::Table {
                    path: path.clone(),
                    source,
                })?;
                check_order(group.order())?;
                group
            }
            GroupSpec::DirectProduct(left, right) => {
                let l = left.evaluate(base_dir)?;
                let r = right.evaluate(base_dir)?;
                check_order(l.order() * r.order())?;
                constructors::direct_product(&l, &r)?
            }
        };
        Ok(group.with_name(self.to_string()))
    }
}

fn check_order(order: usize) -> Result<(), EvalError> {
    if order > MAX_EVAL_ORDER {
        return Err(EvalError::Semantic(format!(
            "group order {order} exceeds the limit of {MAX_EVAL_ORDER}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutions::{stats, Rational};
    use crate::structure::is_isomorphic;
    use proptest::prelude::*;

    fn eval(text: &str) -> Group {
        parse_spec(text).unwrap().evaluate(Path::new(".")).unwrap()
    }

    #[test]
    fn product_is_left_associative() {
        let spec = parse_spec("D8xC2^2").unwrap();
        assert_eq!(
            spec,
            GroupSpec::DirectProduct(Box::new(GroupSpec::Dihedral(8)), Box::new(GroupSpec::ElementaryAbelian(2)))
        );
        let g = spec.evaluate(Path::new(".")).unwrap();
        assert_eq!(g.order(), 32);
        assert_eq!(stats(&g).alpha, Rational::new(3, 4));

        let chain = parse_spec("C2 x C3 x C5").unwrap();
        match chain {
            GroupSpec::DirectProduct(left, right) => {
                assert_eq!(*right, GroupSpec::Cyclic(5));
                assert!(matches!(*left, GroupSpec::DirectProduct(..)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn atoms() {
        assert_eq!(eval("C1").order(), 1);
        assert_eq!(parse_spec("EA5").unwrap(), parse_spec("C2^5").unwrap());
        assert_eq!(parse_spec(" Q8 ").unwrap(), GroupSpec::Quaternion8);
        assert!(is_isomorphic(&eval("Dih(C3)"), &eval("D6")).is_some());
        assert_eq!(parse_spec("Dih( C4 x C2 )").unwrap().static_order(), Some(16));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_spec("D7"), Err(ParseError::Semantic { position: 1, .. })));
        assert!(matches!(parse_spec("C0"), Err(ParseError::Semantic { .. })));
        assert!(matches!(parse_spec("c4"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse_spec("C4x"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_spec("C3^2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_spec("Dih(C4"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_spec("C4 C2"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_spec(""), Err(ParseError::Syntax { .. })));
        let dih = parse_spec("Dih(D8)").unwrap();
        assert!(matches!(dih.evaluate(Path::new(".")), Err(EvalError::Semantic(_))));
        let big = parse_spec("C64xC64").unwrap();
        assert!(matches!(big.evaluate(Path::new(".")), Err(EvalError::Semantic(_))));
        let missing = parse_spec("table:/nonexistent/x.tbl").unwrap();
        assert!(matches!(missing.evaluate(Path::new(".")), Err(EvalError::Io { .. })));
    }

    #[test]
    fn table_atoms() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("c3.tbl"), constructors::cyclic(3).unwrap().to_text()).unwrap();
        let spec = parse_spec("table:c3.tbl x C2").unwrap();
        assert_eq!(spec.to_string(), "(table:c3.tbl)xC2");
        assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        let g = spec.evaluate(dir.path()).unwrap();
        assert_eq!(g.order(), 6);
        std::fs::write(dir.path().join("bad.tbl"), "2\n1 0\n0 1\n").unwrap();
        assert!(matches!(
            parse_spec("table:bad.tbl").unwrap().evaluate(dir.path()),
            Err(EvalError::Table { .. })
        ));
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let leaf = prop_oneof![
            (1usize..40).prop_map(GroupSpec::Cyclic),
            (1usize..20).prop_map(|n| GroupSpec::Dihedral(2 * n)),
            (0u32..6).prop_map(GroupSpec::ElementaryAbelian),
            Just(GroupSpec::Quaternion8),
            "[a-z][a-z0-9_./x-]{0,12}".prop_map(GroupSpec::TableFile),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|s| GroupSpec::GeneralizedDihedral(Box::new(s))),
                (inner.clone(), inner).prop_map(|(l, r)| GroupSpec::DirectProduct(Box::new(l), Box::new(r))),
            ]
        })
    }

    proptest! {
        #[test]
        fn serialization_round_trips(spec in arb_spec()) {
            let text = spec.to_string();
            let reparsed = parse_spec(&text).unwrap();
            prop_assert_eq!(&reparsed, &spec);
            prop_assert_eq!(parse_spec(&reparsed.to_string()).unwrap(), reparsed);
        }
    }
}
