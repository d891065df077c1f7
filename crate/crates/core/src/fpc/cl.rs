use std::fmt;
use std::str::FromStr;

use super::constant;
use crate::compare::{joinable, JoinLimits};
use crate::error::Error;
use crate::reduction::normalize;
use crate::term::Term;

/// A term of combinatory logic over `K` and `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CLTerm {
    K,
    S,
    Apply(Box<CLTerm>, Box<CLTerm>),
}

impl CLTerm {
    pub fn apply(f: CLTerm, a: CLTerm) -> CLTerm {
        CLTerm::Apply(Box::new(f), Box::new(a))
    }

    /// The λ-term with `K = λxy.x` and `S = λxyz.xz(yz)`.
    pub fn to_lambda(&self) -> Term {
        match self {
            CLTerm::K => constant("K"),
            CLTerm::S => constant("S"),
            CLTerm::Apply(f, a) => Term::app(f.to_lambda(), a.to_lambda()),
        }
    }
}

impl fmt::Display for CLTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CLTerm::K => f.write_str("K"),
            CLTerm::S => f.write_str("S"),
            CLTerm::Apply(g, a) => match **a {
                CLTerm::Apply(..) => write!(f, "{g} ({a})"),
                _ => write!(f, "{g} {a}"),
            },
        }
    }
}

impl FromStr for CLTerm {
    type Err = Error;

    /// Application by juxtaposition, associating to the left.
    fn from_str(s: &str) -> Result<CLTerm, Error> {
        fn seq(s: &[u8], i: &mut usize) -> Result<CLTerm, Error> {
            let mut acc: Option<CLTerm> = None;
            while *i < s.len() {
                let atom = match s[*i] {
                    b' ' | b'\t' => {
                        *i += 1;
                        continue;
                    }
                    b')' => break,
                    b'K' => {
                        *i += 1;
                        CLTerm::K
                    }
                    b'S' => {
                        *i += 1;
                        CLTerm::S
                    }
                    b'(' => {
                        *i += 1;
                        let inner = seq(s, i)?;
                        if s.get(*i) != Some(&b')') {
                            return Err(Error::Parse { offset: *i, message: "expected `)`".into() });
                        }
                        *i += 1;
                        inner
                    }
                    c => {
                        return Err(Error::Parse { offset: *i, message: format!("unexpected `{}`", c as char) });
                    }
                };
                acc = Some(match acc {
                    None => atom,
                    Some(f) => CLTerm::apply(f, atom),
                });
            }
            acc.ok_or_else(|| Error::Parse { offset: *i, message: "expected K, S or `(`".into() })
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let t = seq(bytes, &mut i)?;
        if i != bytes.len() {
            return Err(Error::Parse { offset: i, message: "unbalanced `)`".into() });
        }
        Ok(t)
    }
}

/// `⌜K⌝ = λz.zKKI`, `⌜S⌝ = λz.zKSI`, `⌜MN⌝ = λz.z(KI)⌜M⌝⌜N⌝`.
pub fn encode_cl(m: &CLTerm) -> Term {
    let pair = |args: [Term; 3]| Term::lam("z", Term::apps(Term::bound(0), args));
    match m {
        CLTerm::K => pair([constant("K"), constant("K"), constant("I")]),
        CLTerm::S => pair([constant("K"), constant("S"), constant("I")]),
        CLTerm::Apply(f, a) => pair([Term::app(constant("K"), constant("I")), encode_cl(f), encode_cl(a)]),
    }
}

/// `e ⌜m⌝ =β m`, checked by normalising both sides, or by a bounded
/// search for a common reduct when one of them has no normal form in reach.
pub fn evaluator_check(e: &Term, m: &CLTerm, fuel: usize) -> bool {
    let lhs = Term::app(e.clone(), encode_cl(m));
    let rhs = m.to_lambda();
    let (a, b) = (normalize(&lhs, fuel), normalize(&rhs, fuel));
    match (a.normal_form(), b.normal_form()) {
        (Some(x), Some(y)) => x == y,
        (Some(_), None) | (None, Some(_)) => false,
        (None, None) => {
            let limits = JoinLimits { max_terms: fuel, ..JoinLimits::default() };
            joinable(&a.term, &b.term, &limits).is_some()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn cl(s: &str) -> CLTerm {
        s.parse().unwrap()
    }

    #[test]
    fn encodings() {
        assert_eq!(encode_cl(&CLTerm::K), parse("\\z.z K K I").unwrap());
        assert_eq!(encode_cl(&CLTerm::S), parse("\\z.z K S I").unwrap());
        let ks = cl("K S");
        assert_eq!(
            encode_cl(&ks),
            parse("\\z.z (K I) (\\z.z K K I) (\\z.z K S I)").unwrap()
        );
        assert_eq!(cl("S (K K) S").to_string(), "S (K K) S");
        assert!("S (K".parse::<CLTerm>().is_err());
    }

    #[test]
    fn enumerators_evaluate() {
        for e in ["E1", "E2", "E3"] {
            let e = parse(e).unwrap();
            for m in ["K", "S", "K S", "S K K", "S (K K) (S K)"] {
                assert!(evaluator_check(&e, &cl(m), 10_000), "{m}");
            }
        }
        assert!(!evaluator_check(&parse("I").unwrap(), &CLTerm::K, 1000));
    }
}
