//! Parsing of homogeneous forms such as `x0*x1*x3 + x2^3` or `3/2x0^2x1 - x1^3`
//! into exact-coefficient term maps, plus the JSON term-list alternative.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::lattice::Monomial;
use crate::rational::Rational;
use crate::stability::{StabilityError, SupportPair};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable {name:?} at position {position}")]
    UnknownVariable { position: usize, name: String },
    #[error("form is not homogeneous: degrees {first} and {second} both occur")]
    NonHomogeneous { first: u32, second: u32 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("number of variables must be positive (n = {0})")]
    InvalidDimension(i64),
    #[error("invalid JSON form: {0}")]
    Json(String),
}

/// A non-zero homogeneous polynomial in `x0..xn` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    coordinates: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogeneousForm {
    /// Drops zero coefficients and checks homogeneity.
    pub fn from_terms(
        coordinates: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
        expected_degree: Option<u32>,
    ) -> Result<Self, ParseError> {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            let entry = map.entry(m).or_insert_with(Rational::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees = map.keys().map(Monomial::degree);
        let degree = degrees.next().ok_or(ParseError::ZeroPolynomial)?;
        if let Some(other) = degrees.find(|&e| e != degree) {
            return Err(ParseError::NonHomogeneous {
                first: degree,
                second: other,
            });
        }
        if let Some(expected) = expected_degree {
            if expected != degree {
                return Err(ParseError::DegreeMismatch {
                    expected,
                    found: degree,
                });
            }
        }
        Ok(HomogeneousForm {
            degree,
            coordinates,
            terms: map,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coordinates(&self) -> usize {
        self.coordinates
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    pub fn to_json(&self) -> JsonForm {
        JsonForm {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| JsonTerm {
                    coeff: c.clone(),
                    exps: m.exponents().to_vec(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for HomogeneousForm {
    /// Canonical monomial order, `c*monomial` with unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = m.degree() == 0;
            if magnitude != Rational::one() || constant {
                write!(f, "{magnitude}")?;
                if !constant {
                    f.write_str("*")?;
                }
            }
            if !constant {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

pub fn support_of(form: &HomogeneousForm) -> Vec<Monomial> {
    form.terms.keys().cloned().collect()
}

/// Supports of `(F, H)` as a pair, with `F` and `H` given as forms.
pub fn support_pair(
    surface: &HomogeneousForm,
    divisor: &HomogeneousForm,
) -> Result<SupportPair, StabilityError> {
    SupportPair::new(support_of(surface), support_of(divisor))
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Character offset of the next token, or the input length at the end.
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.text.chars().count())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some(s)
    }
}

/// Parses `text` as a form in `x0..xn`, optionally requiring a degree.
pub fn parse_form(
    text: &str,
    n: i64,
    expected_degree: Option<u32>,
) -> Result<HomogeneousForm, ParseError> {
    if n < 1 {
        return Err(ParseError::InvalidDimension(n));
    }
    let coords = n as usize + 1;
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut sign = match cur.peek() {
        Some('-') => {
            cur.bump();
            -Rational::one()
        }
        Some('+') => {
            cur.bump();
            Rational::one()
        }
        _ => Rational::one(),
    };
    loop {
        let (m, c) = parse_term(&mut cur, coords)?;
        terms.push((m, &sign * &c));
        match cur.bump() {
            None => break,
            Some('+') => sign = Rational::one(),
            Some('-') => sign = -Rational::one(),
            Some(other) => {
                cur.pos -= 1;
                return Err(cur.error(format!("unexpected character {other:?}")));
            }
        }
    }
    HomogeneousForm::from_terms(coords, terms, expected_degree)
}

fn parse_term(cur: &mut Cursor<'_>, coords: usize) -> Result<(Monomial, Rational), ParseError> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; coords];
    let mut factors = 0;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = cur.digits().unwrap().parse().expect("digits");
                let mut value = Rational::integer(num);
                if cur.peek() == Some('/') {
                    cur.bump();
                    let at = cur.offset();
                    let den: BigInt = cur
                        .digits()
                        .ok_or_else(|| cur.error("expected denominator"))?
                        .parse()
                        .expect("digits");
                    value = Rational::new(value.numer().clone(), den).map_err(|_| {
                        ParseError::Syntax {
                            position: at,
                            message: "zero denominator".into(),
                        }
                    })?;
                }
                coeff = coeff * value;
            }
            Some(c) if c.is_alphabetic() => {
                let at = cur.offset();
                let mut name = String::new();
                while let Some(c) = cur.peek().filter(|c| c.is_alphanumeric() && !is_caret(*c)) {
                    // a digit run ends the name; a following letter starts the next factor
                    if c.is_alphabetic() && name.chars().any(|x| x.is_ascii_digit()) {
                        break;
                    }
                    name.push(c);
                    cur.pos += 1;
                }
                let index = name
                    .strip_prefix('x')
                    .filter(|rest| {
                        !rest.is_empty()
                            && rest.chars().all(|c| c.is_ascii_digit())
                            && (rest.len() == 1 || !rest.starts_with('0'))
                    })
                    .and_then(|rest| rest.parse::<usize>().ok())
                    .filter(|&i| i < coords)
                    .ok_or(ParseError::UnknownVariable {
                        position: at,
                        name: name.clone(),
                    })?;
                let mut power = 1u32;
                if cur.peek() == Some('^') {
                    cur.bump();
                    power = cur
                        .digits()
                        .and_then(|d| d.parse::<u32>().ok())
                        .filter(|&p| p > 0)
                        .ok_or_else(|| cur.error("expected a positive integer exponent"))?;
                }
                exps[index] += power;
            }
            _ => {
                return Err(cur.error(if factors == 0 {
                    "expected a coefficient or variable"
                } else {
                    "expected a factor after '*'"
                }));
            }
        }
        factors += 1;
        match cur.peek() {
            Some('*') => {
                cur.bump();
            }
            Some(c) if c.is_ascii_digit() || c.is_alphabetic() => {}
            _ => break,
        }
    }
    Ok((Monomial::new(exps), coeff))
}

fn is_caret(c: char) -> bool {
    c == '^'
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: Rational,
    pub exps: Vec<u32>,
}

/// `{"terms": [{"coeff": "p/q", "exps": [..]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonForm {
    pub terms: Vec<JsonTerm>,
}

pub fn parse_form_json(
    text: &str,
    n: i64,
    expected_degree: Option<u32>,
) -> Result<HomogeneousForm, ParseError> {
    if n < 1 {
        return Err(ParseError::InvalidDimension(n));
    }
    let coords = n as usize + 1;
    let doc: JsonForm = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        if t.exps.len() != coords {
            return Err(ParseError::Json(format!(
                "exponent vector {:?} has {} entries, expected {coords}",
                t.exps,
                t.exps.len()
            )));
        }
        terms.push((Monomial::new(t.exps), t.coeff));
    }
    HomogeneousForm::from_terms(coords, terms, expected_degree)
}

/// Text or JSON, chosen by a leading `{`.
pub fn parse_form_any(
    text: &str,
    n: i64,
    expected_degree: Option<u32>,
) -> Result<HomogeneousForm, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_form_json(text, n, expected_degree)
    } else {
        parse_form(text, n, expected_degree)
    }
}
