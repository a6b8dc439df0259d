//! Ring file reader.
//!
//! ```text
//! # comment
//! p = 32003
//! vars = x1,x2,x3,x4
//! [ideal]
//! x1^2 - x3^2
//! x1*x2
//! ```

use std::collections::HashMap;

use super::field::{PrimeField, DEFAULT_PRIME};
use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::RingSpec;
use crate::error::{Error, Result};

/// Parses a ring file. `p_override` replaces the prime given in the file.
pub fn parse_ring(text: &str, p_override: Option<u64>) -> Result<RingSpec> {
    let mut p: Option<(u64, usize)> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut in_ideal = false;
    let mut poly_lines: Vec<(usize, usize, &str)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col0 = content.len() - content.trim_start().len() + 1;
        if trimmed.starts_with('[') {
            if trimmed.replace(' ', "") == "[ideal]" {
                if in_ideal {
                    return Err(Error::parse(line_no, col0, "duplicate [ideal] section"));
                }
                in_ideal = true;
                continue;
            }
            return Err(Error::parse(line_no, col0, format!("unknown section {trimmed}")));
        }
        if in_ideal {
            poly_lines.push((line_no, col0, content.trim_start()));
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return Err(Error::parse(line_no, col0, "expected `key = value`"));
        };
        let key = trimmed[..eq].trim();
        let value = trimmed[eq + 1..].trim();
        let vcol = col0 + eq + 1 + (trimmed[eq + 1..].len() - trimmed[eq + 1..].trim_start().len());
        match key {
            "p" => {
                if p.is_some() {
                    return Err(Error::parse(line_no, col0, "prime given twice"));
                }
                let v: u64 = value
                    .parse()
                    .map_err(|_| Error::parse(line_no, vcol, format!("invalid prime `{value}`")))?;
                p = Some((v, vcol));
                // validate now so the error carries a location
                if p_override.is_none() {
                    PrimeField::new(v).map_err(|e| Error::parse(line_no, vcol, e.to_string()))?;
                }
            }
            "vars" => {
                if vars.is_some() {
                    return Err(Error::parse(line_no, col0, "variables given twice"));
                }
                let mut names = Vec::new();
                for name in value.split(',') {
                    let name = name.trim();
                    if !is_identifier(name) {
                        return Err(Error::parse(line_no, vcol, format!("invalid variable name `{name}`")));
                    }
                    if names.iter().any(|n: &String| n == name) {
                        return Err(Error::parse(line_no, vcol, format!("variable `{name}` repeated")));
                    }
                    names.push(name.to_string());
                }
                vars = Some(names);
            }
            _ => {
                return Err(Error::parse(line_no, col0, format!("unknown key `{key}`")));
            }
        }
    }

    let prime = p_override.or(p.map(|x| x.0)).unwrap_or(DEFAULT_PRIME as u64);
    let field = PrimeField::new(prime)?;
    let vars = vars.ok_or_else(|| Error::parse(1, 1, "missing `vars = ...` line"))?;
    if !in_ideal {
        return Err(Error::parse(text.lines().count().max(1), 1, "missing [ideal] section"));
    }
    let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    let mut gens = Vec::new();
    for (line_no, col0, src) in poly_lines {
        let f = PolyParser::new(src, line_no, col0, field, &index).parse()?;
        if !f.is_zero() {
            match f.homogeneous_degree() {
                None => return Err(Error::parse(line_no, col0, "generator is not homogeneous")),
                Some(d) if d < 2 => {
                    return Err(Error::parse(
                        line_no,
                        col0,
                        format!("generator has degree {d}; degree at least 2 is required"),
                    ))
                }
                _ => {}
            }
        }
        gens.push(f);
    }
    RingSpec::new(field, vars, gens)
}

/// Parses one polynomial over the given variables.
pub fn parse_poly(src: &str, vars: &[String], field: PrimeField) -> Result<Poly> {
    let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    PolyParser::new(src, 1, 1, field, &index).parse()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
    field: PrimeField,
    index: &'a HashMap<&'a str, usize>,
}

impl<'a> PolyParser<'a> {
    fn new(
        src: &'a str,
        line: usize,
        col0: usize,
        field: PrimeField,
        index: &'a HashMap<&'a str, usize>,
    ) -> Self {
        PolyParser { src: src.as_bytes(), pos: 0, line, col0, field, index }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col0 + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<i128> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i128>().map_err(|_| {
            self.pos = start;
            self.err(format!("integer `{s}` out of range"))
        })
    }

    fn parse(mut self) -> Result<Poly> {
        let n = self.index.len();
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return Err(self.err(format!("expected `+` or `-`, found `{}`", c as char))),
            };
            first = false;
            let (m, c) = self.term(n)?;
            terms.push((m, self.field.from_i128(c * sign)));
        }
        Ok(Poly::from_terms(self.field, n, terms))
    }

    fn term(&mut self, n: usize) -> Result<(Monomial, i128)> {
        let mut exps = vec![0u16; n];
        let mut coeff: i128 = 1;
        let p = self.field.p() as i128;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = self.number()?;
                    coeff = (coeff * (v % p)) % p;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let Some(&v) = self.index.get(name) else {
                        self.pos = start;
                        return Err(self.err(format!("unknown variable `{name}`")));
                    };
                    let mut e: i128 = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        match self.peek() {
                            Some(c) if c.is_ascii_digit() => e = self.number()?,
                            _ => return Err(self.err("expected exponent after `^`")),
                        }
                    }
                    let total = exps[v] as i128 + e;
                    if total > u16::MAX as i128 {
                        return Err(self.err("exponent too large"));
                    }
                    exps[v] = total as u16;
                }
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
                None => return Err(self.err("expected a term")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok((Monomial::new(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RESIDUAL: &str =
        "# three quadrics\np = 32003\nvars = x1,x2,x3,x4\n[ideal]\nx1^2 - x3^2\nx1*x2\nx3*x4 # last\n";

    #[test]
    fn parses_a_ring_file() {
        let r = parse_ring(RESIDUAL, None).unwrap();
        assert_eq!(r.nvars(), 4);
        assert_eq!(r.g(), 3);
        assert_eq!(r.p(), 32003);
        assert_eq!(r.gens()[0].display(r.vars()).to_string(), "x1^2 - x3^2");
    }

    #[test]
    fn text_form_round_trips() {
        let r = parse_ring(RESIDUAL, None).unwrap();
        assert_eq!(parse_ring(&r.to_text(), None).unwrap(), r);
    }

    #[test]
    fn prime_override_and_reduction() {
        let r = parse_ring("p = 7\nvars = x,y\n[ideal]\n8*x^2 - 3*2*y^2\n", Some(5)).unwrap();
        assert_eq!(r.p(), 5);
        assert_eq!(r.gens()[0].display(r.vars()).to_string(), "-2*x^2 - y^2");
    }

    #[test]
    fn empty_ideal_is_allowed() {
        let r = parse_ring("vars = x,y\n[ideal]\n", None).unwrap();
        assert_eq!(r.g(), 0);
        assert_eq!(r.p(), 32003);
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_ring("vars = x,y\n[ideal]\nx^2 + z*y\n", None).unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, col: 7, msg: "unknown variable `z`".into() });
        assert!(matches!(
            parse_ring("vars = x,y\n[ideal]\nx^2 + y\n", None),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_ring("p = 10\nvars = x\n[ideal]\n", None),
            Err(Error::Parse { line: 1, col: 5, .. })
        ));
        assert!(parse_ring("vars = x\n[ideal]\nx^2 x\n", None).is_err());
        assert!(parse_ring("vars = x\n", None).is_err());
    }
}
