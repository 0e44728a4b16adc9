//! Poincaré polynomials in t, q and their canonical text form: terms
//! ordered by t-exponent then q-exponent, coefficients above 1 prefixed,
//! exponent 1 bare, negative exponents as `t^-2`.

use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoincarePolynomial {
    /// (t-exponent, q-exponent) -> coefficient > 0
    pub coeffs: BTreeMap<(i32, i32), u32>,
}

impl PoincarePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), 1);
        PoincarePolynomial { coeffs }
    }

    pub fn term(i: i32, j: i32, c: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if c > 0 {
            coeffs.insert((i, j), c);
        }
        PoincarePolynomial { coeffs }
    }

    pub fn from_ranks(ranks: &BTreeMap<(i32, i32), u32>) -> Self {
        PoincarePolynomial {
            coeffs: ranks.iter().filter(|(_, &r)| r > 0).map(|(&k, &r)| (k, r)).collect(),
        }
    }

    pub fn add_term(&mut self, i: i32, j: i32, c: u32) {
        if c == 0 {
            return;
        }
        *self.coeffs.entry((i, j)).or_insert(0) += c;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.coeffs {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PoincarePolynomial::zero();
        for (&(a, b), &c1) in &self.coeffs {
            for (&(x, y), &c2) in &other.coeffs {
                out.add_term(a + x, b + y, c1 * c2);
            }
        }
        out
    }

    /// Evaluate at t = q = 1.
    pub fn total(&self) -> u64 {
        self.coeffs.values().map(|&c| c as u64).sum()
    }

    /// (t, q) -> (1/t, 1/q).
    pub fn mirrored(&self) -> Self {
        PoincarePolynomial {
            coeffs: self.coeffs.iter().map(|(&(i, j), &c)| ((-i, -j), c)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{text}'")));
            }
            let mut rest = term;
            let mut coeff = 1u32;
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            if !digits.is_empty() {
                coeff = digits.parse().map_err(|_| Error::Parse(format!("bad coefficient in '{term}'")))?;
                rest = &rest[digits.len()..];
            }
            let mut i = 0i32;
            let mut j = 0i32;
            for (var, exp) in [('t', &mut i), ('q', &mut j)] {
                if let Some(r) = rest.strip_prefix(var) {
                    rest = r;
                    if let Some(r) = rest.strip_prefix('^') {
                        let sign = 1 - 2 * r.starts_with('-') as i32;
                        let r2 = r.strip_prefix('-').unwrap_or(r);
                        let ds: String = r2.chars().take_while(|c| c.is_ascii_digit()).collect();
                        if ds.is_empty() {
                            return Err(Error::Parse(format!("bad exponent in '{term}'")));
                        }
                        *exp = sign * ds.parse::<i32>().map_err(|_| Error::Parse("exponent".into()))?;
                        rest = &r2[ds.len()..];
                    } else {
                        *exp = 1;
                    }
                }
            }
            if !rest.is_empty() {
                return Err(Error::Parse(format!("trailing '{rest}' in term '{term}'")));
            }
            out.add_term(i, j, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in &self.coeffs {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let has_var = i != 0 || j != 0;
            if c != 1 || !has_var {
                write!(f, "{c}")?;
            }
            for (var, e) in [('t', i), ('q', j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    _ => write!(f, "{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let mut p = PoincarePolynomial::zero();
        p.add_term(0, 5, 1);
        p.add_term(3, 11, 1);
        p.add_term(5, 15, 1);
        assert_eq!(p.to_string(), "q^5+t^3q^11+t^5q^15");
        let q = PoincarePolynomial::parse("q^5+t^3q^11+t^5q^15").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn negative_and_coefficients() {
        let p = PoincarePolynomial::parse("t^-4q^-7+2t^-1q^-1+q^-1+tq^3").unwrap();
        assert_eq!(p.to_string(), "t^-4q^-7+2t^-1q^-1+q^-1+tq^3");
        assert_eq!(p.total(), 5);
        let m = p.mirrored();
        assert_eq!(m.to_string(), "t^-1q^-3+q+2tq+t^4q^7");
    }

    #[test]
    fn constants() {
        assert_eq!(PoincarePolynomial::zero().to_string(), "0");
        let p = PoincarePolynomial::parse("3+t^2q^2").unwrap();
        assert_eq!(p.to_string(), "3+t^2q^2");
        assert_eq!(PoincarePolynomial::parse("0").unwrap(), PoincarePolynomial::zero());
    }

    #[test]
    fn roundtrip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut p = PoincarePolynomial::zero();
            for _ in 0..rng.gen_range(0..8) {
                p.add_term(rng.gen_range(-9..9), rng.gen_range(-20..20), rng.gen_range(1..4));
            }
            let q = PoincarePolynomial::parse(&p.to_string()).unwrap();
            assert_eq!(p, q);
        }
    }
}
