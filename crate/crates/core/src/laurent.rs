//! Exact arithmetic for bivariate Laurent polynomials in `a`, `q` and their
//! quotients.
//!
//! Link polynomial values do not live in the Laurent ring itself: the value of
//! a closed loop is `(a - a^-1)/(q - q^-1)`, so the working domain is the
//! fraction field. [`RationalFunction`] keeps an exact numerator/denominator
//! pair with lazy reduction; equality is decided by cross-multiplication and
//! never depends on the reduction state.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::Error;

/// A sparse Laurent polynomial in two variables `a` and `q` with
/// arbitrary-precision integer coefficients.
///
/// Terms are keyed by the exponent pair `(e_a, e_q)`; zero coefficients are
/// never stored, so the representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariateLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BivariateLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// The monomial `c * a^ea * q^eq`.
    pub fn monomial(c: impl Into<BigInt>, ea: i64, eq: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ea, eq), c);
        }
        Self { terms }
    }

    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (C, i64, i64)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (c, ea, eq) in iter {
            out.add_term(&c.into(), ea, eq);
        }
        out
    }

    /// `q - q^-1`, the loop-smoothing coefficient that shows up everywhere.
    pub fn z_poly() -> Self {
        Self::from_terms([(1, 0, 1), (-1, 0, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Iterate terms in the canonical (lexicographic on `(e_a, e_q)`) order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, c: &BigInt, ea: i64, eq: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((ea, eq)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(ea, eq));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(ea, eq), c) in &other.terms {
            out.add_term(c, ea, eq);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ea1, eq1), c1) in &self.terms {
            for (&(ea2, eq2), c2) in &other.terms {
                out.add_term(&(c1 * c2), ea1 + ea2, eq1 + eq2);
            }
        }
        out
    }

    /// Multiply by the monomial `a^ea * q^eq`.
    pub fn mul_monomial(&self, ea: i64, eq: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(xa, xq), c)| ((xa + ea, xq + eq), c.clone()))
                .collect(),
        }
    }

    /// Substitute `a -> q^n`, leaving a univariate Laurent polynomial in `q`.
    pub fn substitute_a(&self, n: i64) -> Self {
        let mut out = Self::zero();
        for (&(ea, eq), c) in &self.terms {
            out.add_term(c, 0, eq + n * ea);
        }
        out
    }

    /// The involution `(a, q) -> (a^-1, q^-1)`: flip every exponent sign.
    pub fn invert_variables(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(ea, eq), c)| ((-ea, -eq), c.clone()))
                .collect(),
        }
    }

    /// Substitute `a^2 -> a^2 q` (so `a^e -> a^e q^{e/2}`).
    ///
    /// Defined only when every `a`-exponent is even, which holds for values of
    /// the unoriented polynomial; returns `None` otherwise.
    pub fn substitute_a2_to_a2q(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (&(ea, eq), c) in &self.terms {
            if ea % 2 != 0 {
                return None;
            }
            out.add_term(c, ea, eq + ea / 2);
        }
        Some(out)
    }

    /// Smallest exponent pair, for monomial-content extraction.
    fn min_exponents(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(ma, mq), &(ea, eq)| (ma.min(ea), mq.min(eq))))
    }

    /// Exact division: returns `self / other` when the remainder is zero.
    ///
    /// Division runs over the polynomial ring after clearing monomial content,
    /// eliminating the leading term (in lex order) at each step.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, sq) = self.min_exponents().unwrap();
        let (oa, oq) = other.min_exponents().unwrap();
        let mut rem = self.mul_monomial(-sa, -sq);
        let den = other.mul_monomial(-oa, -oq);
        let (&den_lead_key, den_lead) = den.terms.iter().next_back().unwrap();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let (&rem_lead_key, rem_lead) = rem.terms.iter().next_back().unwrap();
            let (c, r) = num_integer::div_rem(rem_lead.clone(), den_lead.clone());
            if !r.is_zero() {
                return None;
            }
            let ea = rem_lead_key.0 - den_lead_key.0;
            let eq = rem_lead_key.1 - den_lead_key.1;
            // An exact quotient has nonnegative exponents once both operands
            // are normalized to minimum exponent zero.
            if ea < 0 || eq < 0 {
                return None;
            }
            let t = Self::monomial(c, ea, eq);
            rem = rem.sub(&t.mul(&den));
            quot = quot.add(&t);
        }
        Some(quot.mul_monomial(sa - oa, sq - oq))
    }

    /// Gcd of all coefficients together with the common monomial, i.e. the
    /// content `g * a^ea * q^eq` of the polynomial.
    fn content(&self) -> Option<(BigInt, i64, i64)> {
        let (ea, eq) = self.min_exponents()?;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, c.clone());
        }
        Some((g, ea, eq))
    }

    fn leading_is_negative(&self) -> bool {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
    }
}

impl fmt::Display for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(ea, eq), c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (ea == 0 && eq == 0) {
                factors.push(mag.to_string());
            }
            if ea != 0 {
                factors.push(if ea == 1 { "a".into() } else { format!("a^{ea}") });
            }
            if eq != 0 {
                factors.push(if eq == 1 { "q".into() } else { format!("q^{eq}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// An exact quotient of two [`BivariateLaurent`] polynomials.
///
/// The denominator is always nonzero. Reduction (common content, repeated
/// exact division by `q - q^-1`, full collapse when the denominator divides
/// the numerator) is applied on construction; it keeps printed output small
/// but is never needed for correctness since [`RationalFunction::equals`]
/// cross-multiplies.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: BivariateLaurent,
    den: BivariateLaurent,
}

impl RationalFunction {
    pub fn new(num: BivariateLaurent, den: BivariateLaurent) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = Self { num, den };
        rf.reduce();
        rf
    }

    pub fn from_laurent(p: BivariateLaurent) -> Self {
        Self {
            num: p,
            den: BivariateLaurent::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(BivariateLaurent::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(BivariateLaurent::one())
    }

    pub fn monomial(c: impl Into<BigInt>, ea: i64, eq: i64) -> Self {
        Self::from_laurent(BivariateLaurent::monomial(c, ea, eq))
    }

    /// `(a - a^-1) / (q - q^-1)`, the oriented loop value.
    pub fn loop_value_oriented() -> Self {
        Self::new(
            BivariateLaurent::from_terms([(1, 1, 0), (-1, -1, 0)]),
            BivariateLaurent::z_poly(),
        )
    }

    /// `(a^2 q^-1 - a^-2 q) / (q - q^-1) + 1`, the unoriented loop value.
    pub fn loop_value_unoriented() -> Self {
        Self::new(
            BivariateLaurent::from_terms([(1, 2, -1), (-1, -2, 1)]),
            BivariateLaurent::z_poly(),
        )
        .add(&Self::one())
    }

    /// `q - q^-1` as a rational function.
    pub fn z() -> Self {
        Self::from_laurent(BivariateLaurent::z_poly())
    }

    pub fn numerator(&self) -> &BivariateLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &BivariateLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_monomial(&self, c: impl Into<BigInt>, ea: i64, eq: i64) -> Self {
        Self::new(
            self.num.mul(&BivariateLaurent::monomial(c, ea, eq)),
            self.den.clone(),
        )
    }

    /// Integer power of a rational function; negative powers invert.
    pub fn pow(&self, k: i64) -> Self {
        let (mut num, mut den) = if k >= 0 {
            (self.num.clone(), self.den.clone())
        } else {
            assert!(!self.num.is_zero(), "inverting zero");
            (self.den.clone(), self.num.clone())
        };
        let k = k.unsigned_abs();
        let mut out_num = BivariateLaurent::one();
        let mut out_den = BivariateLaurent::one();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out_num = out_num.mul(&num);
                out_den = out_den.mul(&den);
            }
            num = num.mul(&num.clone());
            den = den.mul(&den.clone());
            e >>= 1;
        }
        Self::new(out_num, out_den)
    }

    /// Substitute `a -> q^n` in both numerator and denominator.
    pub fn substitute_a(&self, n: i64) -> Self {
        let den = self.den.substitute_a(n);
        assert!(
            !den.is_zero(),
            "denominator vanished under a -> q^{n}; reduce first"
        );
        Self::new(self.num.substitute_a(n), den)
    }

    /// The involution `(a, q) -> (a^-1, q^-1)` applied to the value.
    pub fn invert_variables(&self) -> Self {
        Self::new(self.num.invert_variables(), self.den.invert_variables())
    }

    /// Substitute `a^2 -> a^2 q`; `None` when an odd `a`-exponent survives
    /// reduction.
    pub fn substitute_a2_to_a2q(&self) -> Option<Self> {
        Some(Self::new(
            self.num.substitute_a2_to_a2q()?,
            self.den.substitute_a2_to_a2q()?,
        ))
    }

    /// Exact equality via cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BivariateLaurent::one();
            return;
        }
        // Common integer-and-monomial content.
        let (gn, na, nq) = self.num.content().unwrap();
        let (gd, da, dq) = self.den.content().unwrap();
        let g = num_integer::gcd(gn, gd);
        let scale = BivariateLaurent::monomial(g, na.min(da), nq.min(dq));
        if !scale.is_one() {
            self.num = self.num.div_exact(&scale).unwrap();
            self.den = self.den.div_exact(&scale).unwrap();
        }
        // Full collapse when the denominator divides the numerator.
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = BivariateLaurent::one();
            return;
        }
        // Cancel shared factors of z = q - q^-1.
        let z = BivariateLaurent::z_poly();
        while let (Some(n), Some(d)) = (self.num.div_exact(&z), self.den.div_exact(&z)) {
            self.num = n;
            self.den = d;
        }
        if self.den.leading_is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Parse the signed monomial-list text format, e.g. `a^2*q^-1 - a^-2*q`.
pub fn parse_laurent(text: &str) -> Result<BivariateLaurent, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if text == "0" {
        return Ok(BivariateLaurent::zero());
    }
    let mut out = BivariateLaurent::zero();
    // Split into signed monomials, respecting exponent signs after '^'.
    let mut monomials: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '+' | '-' if prev != Some('^') && prev != Some('*') && prev.is_some() => {
                if !current.trim().is_empty() {
                    monomials.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            }
            '-' if prev.is_none() => negative = true,
            c if c.is_whitespace() => {}
            c => {
                current.push(c);
                prev = Some(c);
                continue;
            }
        }
        prev = Some(ch);
    }
    if !current.trim().is_empty() {
        monomials.push((negative, current));
    }
    for (neg, mono) in monomials {
        let mut coeff = BigInt::one();
        let mut ea = 0i64;
        let mut eq = 0i64;
        for factor in mono.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in '{mono}'")));
            }
            if let Some(rest) = factor.strip_prefix('a') {
                ea += parse_exponent(rest, factor)?;
            } else if let Some(rest) = factor.strip_prefix('q') {
                eq += parse_exponent(rest, factor)?;
            } else {
                let c: BigInt = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{factor}'")))?;
                coeff *= c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out = out.add(&BivariateLaurent::monomial(coeff, ea, eq));
    }
    Ok(out)
}

fn parse_exponent(rest: &str, whole: &str) -> Result<i64, Error> {
    if rest.is_empty() {
        return Ok(1);
    }
    let Some(exp) = rest.strip_prefix('^') else {
        return Err(Error::Parse(format!("bad variable factor '{whole}'")));
    };
    exp.parse()
        .map_err(|_| Error::Parse(format!("bad exponent in '{whole}'")))
}

/// Parse rational-function text: either `p` or `(p) / (p)`.
pub fn parse_rational(text: &str) -> Result<RationalFunction, Error> {
    let text = text.trim();
    if let Some((num, den)) = split_quotient(text) {
        Ok(RationalFunction::new(
            parse_laurent(num)?,
            parse_laurent(den)?,
        ))
    } else {
        Ok(RationalFunction::from_laurent(parse_laurent(text)?))
    }
}

fn split_quotient(text: &str) -> Option<(&str, &str)> {
    let text = text.trim();
    if !text.starts_with('(') {
        return None;
    }
    let mut depth = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let rest = text[i + 1..].trim_start();
                    let rest = rest.strip_prefix('/')?;
                    let rest = rest.trim();
                    let den = rest.strip_prefix('(')?.strip_suffix(')')?;
                    return Some((&text[1..i], den));
                }
            }
            _ => {}
        }
    }
    None
}

/// JSON form: `{"numerator": [[c, e_a, e_q], ...], "denominator": [...]}` with
/// coefficients as JSON integers when they fit and decimal strings otherwise.
pub fn rational_to_json(rf: &RationalFunction) -> serde_json::Value {
    serde_json::json!({
        "numerator": laurent_to_json(rf.numerator()),
        "denominator": laurent_to_json(rf.denominator()),
    })
}

fn laurent_to_json(p: &BivariateLaurent) -> serde_json::Value {
    let triples: Vec<serde_json::Value> = p
        .terms()
        .map(|(&(ea, eq), c)| {
            let coeff = match i64::try_from(c.clone()) {
                Ok(v) => serde_json::json!(v),
                Err(_) => serde_json::json!(c.to_string()),
            };
            serde_json::json!([coeff, ea, eq])
        })
        .collect();
    serde_json::Value::Array(triples)
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<RationalFunction, Error> {
    let num = laurent_from_json(v.get("numerator").ok_or_else(|| {
        Error::Parse("missing 'numerator'".into())
    })?)?;
    let den = match v.get("denominator") {
        Some(d) => laurent_from_json(d)?,
        None => BivariateLaurent::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(RationalFunction::new(num, den))
}

fn laurent_from_json(v: &serde_json::Value) -> Result<BivariateLaurent, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected array of [c, e_a, e_q]".into()))?;
    let mut out = BivariateLaurent::zero();
    for t in arr {
        let t = t
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| Error::Parse("expected [c, e_a, e_q] triple".into()))?;
        let c: BigInt = match &t[0] {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?,
            serde_json::Value::String(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{s}'")))?,
            other => return Err(Error::Parse(format!("bad coefficient {other}"))),
        };
        let ea = t[1]
            .as_i64()
            .ok_or_else(|| Error::Parse("bad e_a".into()))?;
        let eq = t[2]
            .as_i64()
            .ok_or_else(|| Error::Parse("bad e_q".into()))?;
        out = out.add(&BivariateLaurent::monomial(c, ea, eq));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(text: &str) -> RationalFunction {
        parse_rational(text).unwrap()
    }

    #[test]
    fn additive_identity_and_inverse() {
        let x = RationalFunction::loop_value_oriented();
        assert!(RationalFunction::zero().add(&x).equals(&x));
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn common_denominator_sum() {
        let lhs = RationalFunction::loop_value_oriented().add(&RationalFunction::one());
        let rhs = RationalFunction::new(
            parse_laurent("a - a^-1 + q - q^-1").unwrap(),
            BivariateLaurent::z_poly(),
        );
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn difference_of_squares() {
        let p = rf("q - q^-1").mul(&rf("q + q^-1"));
        assert!(p.equals(&rf("q^2 - q^-2")));
        assert!(RationalFunction::one().mul(&p).equals(&p));
    }

    #[test]
    fn loop_value_times_z_reduces() {
        let p = RationalFunction::loop_value_oriented().mul(&RationalFunction::z());
        assert!(p.equals(&rf("a - a^-1")));
        assert_eq!(p.to_string(), "-a^-1 + a");
    }

    #[test]
    fn substitution_examples() {
        assert!(rf("a - a^-1").substitute_a(2).equals(&rf("q^2 - q^-2")));
        let delta = RationalFunction::loop_value_oriented();
        assert!(delta.substitute_a(2).equals(&rf("q + q^-1")));
        assert!(delta.substitute_a(1).equals(&RationalFunction::one()));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let lhs = RationalFunction::loop_value_oriented();
        let rhs = RationalFunction::new(
            parse_laurent("a - a^-1").unwrap().mul(&parse_laurent("q + q^-1").unwrap()),
            parse_laurent("q^2 - q^-2").unwrap(),
        );
        assert!(lhs.equals(&rhs));
        assert!(!rf("q").equals(&rf("q^-1")));
    }

    #[test]
    fn text_roundtrip_canonical() {
        let p = parse_laurent("a^2*q^-1 - a^-2*q").unwrap();
        assert_eq!(parse_laurent(&p.to_string()).unwrap(), p);
        let v = RationalFunction::loop_value_unoriented();
        assert!(parse_rational(&v.to_string()).unwrap().equals(&v));
    }

    #[test]
    fn json_roundtrip() {
        let v = RationalFunction::loop_value_unoriented();
        let j = rational_to_json(&v);
        assert!(rational_from_json(&j).unwrap().equals(&v));
    }

    #[test]
    fn unoriented_loop_value_display() {
        // (a^2 q^-1 - a^-2 q + q - q^-1) / (q - q^-1)
        let v = RationalFunction::loop_value_unoriented();
        assert!(!v.denominator().is_one());
        assert!(v
            .mul(&RationalFunction::z())
            .equals(&rf("a^2*q^-1 - a^-2*q + q - q^-1")));
    }

    #[test]
    fn involution_is_involutive() {
        let v = RationalFunction::loop_value_unoriented();
        assert!(v.invert_variables().invert_variables().equals(&v));
    }

    #[test]
    fn a2_substitution() {
        let p = rf("a^2*q^-1 - a^-2*q");
        let s = p.substitute_a2_to_a2q().unwrap();
        assert!(s.equals(&rf("a^2 - a^-2")));
        assert!(rf("a").substitute_a2_to_a2q().is_none());
    }
}
