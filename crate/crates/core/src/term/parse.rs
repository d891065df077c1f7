use super::{DefinitionTable, Name, Term};
use crate::error::{Error, Result};

/// Parse a term using only the built-in prelude for constants.
///
/// Lowercase identifiers that are neither bound nor defined are free
/// variables; an unknown capitalised identifier is an error.
pub fn parse(src: &str) -> Result<Term> {
    parse_with(src, DefinitionTable::prelude())
}

/// Parse a term, expanding constants from `defs`.
pub fn parse_with(src: &str, defs: &DefinitionTable) -> Result<Term> {
    let mut p = Parser { src, pos: 0, scope: Vec::new(), defs };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected input after term"));
    }
    Ok(t)
}

pub(super) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

pub(super) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    scope: Vec<Name>,
    defs: &'a DefinitionTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn at_lambda(&self) -> bool {
        matches!(self.peek(), Some('\\') | Some('λ'))
    }

    fn ident(&mut self) -> Option<(usize, &str)> {
        let start = self.pos;
        if !self.peek().is_some_and(is_ident_start) {
            return None;
        }
        while self.peek().is_some_and(is_ident_char) {
            self.bump();
        }
        Some((start, &self.src[start..self.pos]))
    }

    fn term(&mut self) -> Result<Term> {
        if self.at_lambda() {
            return self.lambda();
        }
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.at_lambda() {
                // a trailing λ extends as far right as possible
                let arg = self.lambda()?;
                return Ok(Term::app(acc, arg));
            }
            match self.peek() {
                Some('(') => {}
                Some(c) if is_ident_start(c) => {}
                _ => return Ok(acc),
            }
            let a = self.atom()?;
            acc = Term::app(acc, a);
        }
    }

    fn lambda(&mut self) -> Result<Term> {
        self.bump();
        let mut names = Vec::new();
        loop {
            self.skip_ws();
            match self.ident() {
                Some((_, n)) => names.push(Name::from(n)),
                None => break,
            }
        }
        if names.is_empty() {
            return Err(self.error("expected a binder name after λ"));
        }
        if self.peek() != Some('.') {
            return Err(self.error("expected `.` after binders"));
        }
        self.bump();
        self.skip_ws();
        let depth = self.scope.len();
        self.scope.extend(names.iter().cloned());
        let body = self.term();
        self.scope.truncate(depth);
        Ok(Term::wrap_lams(&names, body?))
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                self.skip_ws();
                let t = self.term()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(t)
            }
            Some(c) if is_ident_start(c) => {
                let (start, name) = self.ident().expect("identifier start was checked");
                let name = name.to_string();
                self.variable(start, name)
            }
            Some(_) => Err(self.error("expected a variable, λ or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&self, start: usize, name: String) -> Result<Term> {
        if let Some(i) = self.scope.iter().rev().position(|n| **n == *name) {
            return Ok(Term::bound(i as u32));
        }
        if let Some(t) = self.defs.get(&name) {
            return Ok(t.clone());
        }
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Err(Error::UnknownConstant { name, offset: start });
        }
        Ok(Term::free(&name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_combinators() {
        let k = parse("\\x y.x").unwrap();
        assert_eq!(k.to_string(), "\\x y.x");
        assert_eq!(parse("λx.λy.x").unwrap(), k);
        assert_eq!(parse("(\\x.x) y").unwrap().to_string(), "(\\x.x) y");
    }

    #[test]
    fn reports_offsets() {
        let e = parse("(\\x.x").unwrap_err();
        assert_eq!(e, Error::Parse { offset: 5, message: "expected `)`".into() });
        let e = parse("x Foo").unwrap_err();
        assert_eq!(e, Error::UnknownConstant { name: "Foo".into(), offset: 2 });
        assert!(matches!(parse("\\.x"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse("x )"), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn constants_expand_and_binders_shadow() {
        assert_eq!(parse("I").unwrap(), parse("\\x.x").unwrap());
        assert_eq!(parse("\\I.I").unwrap(), parse("\\x.x").unwrap());
        assert_eq!(parse("K I").unwrap(), parse("(\\x y.x) (\\z.z)").unwrap());
    }

    #[test]
    fn trailing_lambda_argument() {
        assert_eq!(parse("f \\x.x y").unwrap(), parse("f (\\x.x y)").unwrap());
    }
}
