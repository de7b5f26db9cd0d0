//! Finitely generated abelian groups as ordered products of cyclic factors,
//! each carrying the sign by which its generator acts on the orientation
//! module.
//!
//! Textual form: factors separated by `x`, each one of `Z`, `Z^r`, `Z_q`,
//! optionally suffixed with `~` for a generator acting by `-1`. The trivial
//! group is written `1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed group spec token `{0}`")]
    Syntax(String),
    #[error("sign action `~` is impossible on a cyclic factor of odd order ({0})")]
    InvalidSign(String),
    #[error("invalid order or exponent in `{0}`")]
    InvalidOrder(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Infinite,
    Finite(u64),
}

/// Value of the orientation character on a factor's generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_twisted(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFactor {
    order: Order,
    sign: Sign,
}

impl CyclicFactor {
    pub fn infinite(sign: Sign) -> Self {
        CyclicFactor {
            order: Order::Infinite,
            sign,
        }
    }

    /// A cyclic factor of order `q`; fails for `q < 2` or a sign action on
    /// odd `q`.
    pub fn finite(q: u64, sign: Sign) -> Result<Self, GroupError> {
        if q < 2 {
            return Err(GroupError::InvalidOrder(format!("Z_{q}")));
        }
        if sign.is_twisted() && q % 2 == 1 {
            return Err(GroupError::InvalidSign(format!("Z_{q}~")));
        }
        Ok(CyclicFactor {
            order: Order::Finite(q),
            sign,
        })
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_infinite(&self) -> bool {
        self.order == Order::Infinite
    }

    /// `q` for a finite factor, `None` for `Z`.
    pub fn modulus(&self) -> Option<u64> {
        match self.order {
            Order::Infinite => None,
            Order::Finite(q) => Some(q),
        }
    }
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            Order::Infinite => write!(f, "Z")?,
            Order::Finite(q) => write!(f, "Z_{q}")?,
        }
        if self.sign.is_twisted() {
            write!(f, "~")?;
        }
        Ok(())
    }
}

/// Ordered list of cyclic factors. Factor order is significant: it fixes the
/// slot layout of every monomial over the group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    factors: Vec<CyclicFactor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<CyclicFactor>) -> Self {
        GroupSpec { factors }
    }

    pub fn trivial() -> Self {
        GroupSpec::default()
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when some generator acts by `-1`.
    pub fn is_twisted(&self) -> bool {
        self.factors.iter().any(|f| f.sign.is_twisted())
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| !f.is_infinite())
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_infinite()).count()
    }

    /// Group order, `None` if infinite (or if it does not fit in `u64`).
    pub fn cardinality(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, f| match f.order {
            Order::Infinite => None,
            Order::Finite(q) => acc.checked_mul(q),
        })
    }

    /// Concatenation `self x other`.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GroupSpec { factors }
    }

    /// Splits the factor list at `at` into a prefix and a suffix.
    pub fn split_at(&self, at: usize) -> (GroupSpec, GroupSpec) {
        let (l, r) = self.factors.split_at(at);
        (GroupSpec::new(l.to_vec()), GroupSpec::new(r.to_vec()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        // Runs of equal infinite factors collapse to `Z^r`.
        let mut i = 0;
        while i < self.factors.len() {
            if i > 0 {
                write!(f, " x ")?;
            }
            let factor = self.factors[i];
            let run = self.factors[i..].iter().take_while(|g| **g == factor).count();
            if factor.is_infinite() && run > 1 {
                write!(f, "Z^{run}{}", if factor.sign.is_twisted() { "~" } else { "" })?;
                i += run;
            } else {
                write!(f, "{factor}")?;
                i += 1;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "1" {
        return Ok(GroupSpec::trivial());
    }
    if compact.is_empty() {
        return Err(GroupError::Syntax(text.to_string()));
    }
    let mut factors = Vec::new();
    for token in compact.split('x') {
        parse_factor(token, &mut factors)?;
    }
    Ok(GroupSpec { factors })
}

pub fn format_group_spec(g: &GroupSpec) -> String {
    g.to_string()
}

fn parse_factor(token: &str, out: &mut Vec<CyclicFactor>) -> Result<(), GroupError> {
    let syntax = || GroupError::Syntax(token.to_string());
    let (body, sign) = match token.strip_suffix('~') {
        Some(body) => (body, Sign::Minus),
        None => (token, Sign::Plus),
    };
    let rest = body.strip_prefix('Z').ok_or_else(syntax)?;
    if rest.is_empty() {
        out.push(CyclicFactor::infinite(sign));
        return Ok(());
    }
    if let Some(exp) = rest.strip_prefix('^') {
        let r = parse_number(exp).ok_or_else(syntax)?;
        if r < 1 {
            return Err(GroupError::InvalidOrder(token.to_string()));
        }
        let r = usize::try_from(r).map_err(|_| GroupError::InvalidOrder(token.to_string()))?;
        out.extend(std::iter::repeat(CyclicFactor::infinite(sign)).take(r));
        return Ok(());
    }
    if let Some(q) = rest.strip_prefix('_') {
        let q = parse_number(q).ok_or_else(syntax)?;
        out.push(CyclicFactor::finite(q, sign).map_err(|e| match e {
            GroupError::InvalidOrder(_) => GroupError::InvalidOrder(token.to_string()),
            GroupError::InvalidSign(_) => GroupError::InvalidSign(token.to_string()),
            other => other,
        })?);
        return Ok(());
    }
    Err(syntax())
}

fn parse_number(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
