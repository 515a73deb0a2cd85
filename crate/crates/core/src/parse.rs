//! Text literals: elements `-12`, `(3; {1,4,7})`; vectors `[a, b]`; ideals
//! `<g1, g2>` and `Split(d, full)` / `Split(d, [{1}, {2,3}])`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ideal::{F2Part, FinIdeal, StructuredIdeal};
use crate::ring::{Element, F2Seq, Ring, Vector};

/// `column` counts characters from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: &'a Ring) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ring,
        }
    }

    fn error_at<T>(&self, pos: usize, message: impl fmt::Display) -> Result<T, ParseError> {
        Err(ParseError {
            column: pos + 1,
            message: message.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.error_at(self.pos, format!("expected '{c}', found '{d}'")),
            None => self.error_at(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let n = word.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(word.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error_at(self.pos, format!("unexpected '{c}' after the literal")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return match self.chars.get(start) {
                Some(c) => self.error_at(start, format!("expected an integer, found '{c}'")),
                None => self.error_at(start, "expected an integer, found end of input"),
            };
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("validated digits"))
    }

    fn index(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.integer()?;
        u64::try_from(&v)
            .or_else(|_| self.error_at(start, format!("index {v} is not a natural number")))
    }

    fn support(&mut self) -> Result<F2Seq, ParseError> {
        self.expect('{')?;
        let mut seq = F2Seq::new();
        if self.eat('}') {
            return Ok(seq);
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            let i = self.index()?;
            if seq.contains(i) {
                return self.error_at(at, format!("duplicate index {i}"));
            }
            seq.toggle(i);
            if self.eat('}') {
                return Ok(seq);
            }
            self.expect(',')?;
        }
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        match (self.ring, self.peek()) {
            (Ring::IdealizationZF2, Some('(')) => {
                self.pos += 1;
                let a = self.integer()?;
                self.expect(';')?;
                let b = self.support()?;
                self.expect(')')?;
                Ok(Element::Pair(a, b))
            }
            _ => {
                let v = self.integer()?;
                Ok(self.ring.from_int(v))
            }
        }
    }

    fn list<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn vector(&mut self) -> Result<Vector, ParseError> {
        self.expect('[')?;
        self.list(']', Self::element)
    }

    fn ideal(&mut self) -> Result<StructuredIdeal, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.keyword("Split") {
            if !self.ring.is_idealization() {
                return self.error_at(start, "Split descriptors only exist over the idealization");
            }
            self.expect('(')?;
            let z = self.integer()?;
            self.expect(',')?;
            let part = if self.keyword("full") {
                F2Part::Full
            } else {
                self.expect('[')?;
                F2Part::SpanOf(self.list(']', Self::support)?)
            };
            self.expect(')')?;
            return StructuredIdeal::split(self.ring, z, part).or_else(|e| self.error_at(start, e));
        }
        self.expect('<')?;
        let gens = self.list('>', Self::element)?;
        Ok(FinIdeal::new(self.ring, gens)
            .expect("parsed elements belong to the ring")
            .into())
    }
}

fn whole<'r, T>(
    text: &str,
    ring: &'r Ring,
    f: impl FnOnce(&mut Parser<'r>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(text, ring);
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_element(text: &str, ring: &Ring) -> Result<Element, ParseError> {
    whole(text, ring, Parser::element)
}

pub fn parse_vector(text: &str, ring: &Ring) -> Result<Vector, ParseError> {
    whole(text, ring, Parser::vector)
}

pub fn parse_ideal(text: &str, ring: &Ring) -> Result<StructuredIdeal, ParseError> {
    whole(text, ring, Parser::ideal)
}

pub fn parse_ring(text: &str) -> Result<Ring, ParseError> {
    text.parse().map_err(|e| ParseError {
        column: 1,
        message: format!("{e}"),
    })
}
