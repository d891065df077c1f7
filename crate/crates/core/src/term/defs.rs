use std::collections::HashMap;
use std::sync::OnceLock;

use super::parse::{is_ident_char, is_ident_start};
use super::{parse_with, Name, Term};
use crate::error::{Error, Result};

const PRELUDE: &str = include_str!("prelude.lam");

/// Named closed terms, kept in definition order.
///
/// Definition files hold `name = term;` entries and `#` comments. A body
/// may only mention names defined before it.
#[derive(Clone, Debug, Default)]
pub struct DefinitionTable {
    order: Vec<(Name, Term)>,
    index: HashMap<Name, usize>,
}

impl DefinitionTable {
    pub fn new() -> DefinitionTable {
        DefinitionTable::default()
    }

    /// The built-in constants: `I K S B A delta eta omega Omega theta SS'`,
    /// `Y0`..`Y6`, `U0`..`U6` and `E1`..`E3`.
    pub fn prelude() -> &'static DefinitionTable {
        static PRELUDE_TABLE: OnceLock<DefinitionTable> = OnceLock::new();
        PRELUDE_TABLE.get_or_init(|| {
            let mut t = DefinitionTable::new();
            t.load(PRELUDE).expect("built-in prelude is well formed");
            t
        })
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.index.get(name).map(|&i| &self.order[i].1)
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.order.iter().map(|(n, _)| n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.order.iter().map(|(n, t)| (n, t))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Add or replace a definition. The term must be closed.
    pub fn insert(&mut self, name: &str, term: Term) -> Result<()> {
        if !term.is_closed() {
            let free: Vec<String> = term.free_vars().iter().map(|n| n.to_string()).collect();
            return Err(Error::Definition {
                name: name.to_string(),
                line: 0,
                message: format!("body is not closed (free: {})", free.join(", ")),
            });
        }
        let name = Name::from(name);
        match self.index.get(&name) {
            Some(&i) => self.order[i].1 = term,
            None => {
                self.index.insert(name.clone(), self.order.len());
                self.order.push((name, term));
            }
        }
        Ok(())
    }

    /// Parse a definition file on top of the current table.
    pub fn load(&mut self, text: &str) -> Result<()> {
        let stripped: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let mut line = 1;
        for chunk in stripped.split(';') {
            let start_line = line + chunk.chars().take_while(|c| c.is_whitespace()).filter(|&c| c == '\n').count();
            line += chunk.matches('\n').count();
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let fail = |name: &str, message: String| Error::Definition {
                name: name.to_string(),
                line: start_line,
                message,
            };
            let Some((lhs, rhs)) = chunk.split_once('=') else {
                return Err(fail(chunk, "expected `name = term`".into()));
            };
            let name = lhs.trim();
            let valid = name.starts_with(is_ident_start) && name.chars().all(is_ident_char);
            if !valid {
                return Err(fail(name, "invalid name".into()));
            }
            let term = match parse_with(rhs, self) {
                Ok(t) => t,
                Err(Error::UnknownConstant { name: c, .. }) if c == name => {
                    return Err(fail(name, "definition refers to itself".into()));
                }
                Err(Error::UnknownConstant { name: c, .. }) => {
                    return Err(fail(name, format!("`{c}` is not defined before this point")));
                }
                Err(e) => return Err(fail(name, e.to_string())),
            };
            self.insert(name, term).map_err(|e| match e {
                Error::Definition { message, .. } => fail(name, message),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Parse a whole definition file into a table that also contains the prelude.
    pub fn from_file_text(text: &str) -> Result<DefinitionTable> {
        let mut t = DefinitionTable::prelude().clone();
        t.load(text)?;
        Ok(t)
    }
}
