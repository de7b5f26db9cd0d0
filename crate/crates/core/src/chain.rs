//! The tensor chain complex `C(G) = C(G_1) (x) ... (x) C(G_l)` built from the
//! small resolutions of the cyclic factors, with twisted coefficients.
//!
//! Each factor contributes a complex with one generator `[i]` per degree:
//!
//! | factor        | boundary                              |
//! |---------------|---------------------------------------|
//! | `Z`           | `d[1] = 0`                            |
//! | `Z~`          | `d[1] = 2[0]`                         |
//! | `Z_q`         | `d[2k] = q[2k-1]`, `d[2k-1] = 0`      |
//! | `Z_q~` (q even) | `d[2k-1] = 2[2k-2]`, `d[2k] = 0`    |
//!
//! and the tensor differential carries the sign `(-1)^(i_1 + ... + i_{k-1})`
//! on slot `k`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{CyclicFactor, GroupSpec, Order};
use crate::matrix::IntMatrix;

/// Basis element `[i_1 i_2 ... i_l]`, one resolution degree per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(degrees: Vec<u32>) -> Self {
        Monomial(degrees)
    }

    pub fn unit(slots: usize) -> Self {
        Monomial(vec![0; slots])
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&d| d as usize).sum()
    }

    /// True when the monomial has one slot per factor and `Z` slots are 0 or 1.
    pub fn is_valid_for(&self, g: &GroupSpec) -> bool {
        self.0.len() == g.len()
            && self
                .0
                .iter()
                .zip(g.factors())
                .all(|(&d, f)| !f.is_infinite() || d <= 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// Homogeneous integer combination of monomials over a fixed group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    group: GroupSpec,
    degree: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Chain {
    pub fn zero(group: &GroupSpec, degree: usize) -> Self {
        Chain {
            group: group.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(group: &GroupSpec, m: Monomial, coeff: impl Into<BigInt>) -> Result<Self> {
        let degree = m.degree();
        Chain::from_terms(group, degree, [(m, coeff.into())])
    }

    /// Builds a chain, validating every monomial and merging repeated terms.
    pub fn from_terms(
        group: &GroupSpec,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut c = Chain::zero(group, degree);
        for (m, v) in terms {
            if !m.is_valid_for(group) {
                return Err(Error::InvalidMonomial {
                    monomial: m.to_string(),
                    group: group.to_string(),
                });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: m.degree(),
                });
            }
            c.add_term(m, &v);
        }
        Ok(c)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(v.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Chain) -> Result<Chain> {
        self.checked_add(&other.scaled(&-BigInt::one()))
    }

    pub fn scaled(&self, k: &BigInt) -> Chain {
        if k.is_zero() {
            return Chain::zero(&self.group, self.degree);
        }
        Chain {
            group: self.group.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * k)).collect(),
        }
    }

    pub(crate) fn to_sparse(&self, index: &HashMap<Monomial, usize>) -> Vec<(usize, BigInt)> {
        self.terms
            .iter()
            .map(|(m, v)| (index[m], v.clone()))
            .collect()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, v)) in self.terms.iter().enumerate() {
            let abs = v.abs();
            match (k == 0, v.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `n`, in lexicographic order.
pub fn basis(g: &GroupSpec, n: usize) -> Vec<Monomial> {
    let factors = g.factors();
    let mut out = Vec::new();
    let mut current = vec![0u32; factors.len()];
    // Largest degree reachable by slots k.. (None = unbounded).
    let mut tail_cap: Vec<Option<usize>> = vec![Some(0); factors.len() + 1];
    for k in (0..factors.len()).rev() {
        tail_cap[k] = match (factors[k].is_infinite(), tail_cap[k + 1]) {
            (true, Some(c)) => Some(c + 1),
            _ => None,
        };
    }
    fill_basis(factors, &tail_cap, 0, n, &mut current, &mut out);
    out
}

fn fill_basis(
    factors: &[CyclicFactor],
    tail_cap: &[Option<usize>],
    slot: usize,
    remaining: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if slot == factors.len() {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    if tail_cap[slot].is_some_and(|c| c < remaining) {
        return;
    }
    let top = if factors[slot].is_infinite() {
        remaining.min(1)
    } else {
        remaining
    };
    for d in 0..=top {
        current[slot] = d as u32;
        fill_basis(factors, tail_cap, slot + 1, remaining - d, current, out);
    }
    current[slot] = 0;
}

/// Boundary of a single slot: target degree and coefficient.
pub(crate) fn slot_boundary(f: &CyclicFactor, i: u32) -> Option<(u32, i64)> {
    let twisted = f.sign().is_twisted();
    match f.order() {
        Order::Infinite => (twisted && i == 1).then_some((0, 2)),
        Order::Finite(q) => {
            if twisted {
                (i % 2 == 1).then(|| (i - 1, 2))
            } else {
                (i >= 2 && i % 2 == 0).then(|| (i - 1, i64::try_from(q).expect("order fits i64")))
            }
        }
    }
}

/// Boundary of a monomial as (monomial, coefficient) pairs.
pub(crate) fn monomial_boundary(g: &GroupSpec, m: &Monomial) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::new();
    let mut prefix = 0u32;
    for (k, f) in g.factors().iter().enumerate() {
        let i = m.0[k];
        if let Some((target, coeff)) = slot_boundary(f, i) {
            let mut t = m.0.clone();
            t[k] = target;
            let sign = if prefix % 2 == 0 { coeff } else { -coeff };
            out.push((Monomial(t), BigInt::from(sign)));
        }
        prefix += i;
    }
    out
}

pub fn boundary(c: &Chain) -> Chain {
    if c.degree == 0 {
        return Chain::zero(&c.group, 0);
    }
    let mut out = Chain::zero(&c.group, c.degree - 1);
    for (m, v) in &c.terms {
        for (t, w) in monomial_boundary(&c.group, m) {
            out.add_term(t, &(v * w));
        }
    }
    out
}

/// Matrix of the differential `C_n -> C_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub source_degree: usize,
    pub source_basis: Vec<Monomial>,
    pub target_basis: Vec<Monomial>,
    /// Column `j` is the boundary of `source_basis[j]`.
    pub entries: IntMatrix,
}

pub fn differential_matrix(g: &GroupSpec, n: usize) -> DifferentialMatrix {
    let source_basis = basis(g, n);
    let target_basis = if n == 0 { Vec::new() } else { basis(g, n - 1) };
    let index = basis_index(&target_basis);
    let mut entries = IntMatrix::zeros(target_basis.len(), source_basis.len());
    if n > 0 {
        for (j, m) in source_basis.iter().enumerate() {
            for (t, v) in monomial_boundary(g, m) {
                entries[(index[&t], j)] += v;
            }
        }
    }
    DifferentialMatrix {
        source_degree: n,
        source_basis,
        target_basis,
        entries,
    }
}

pub(crate) fn basis_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// Parses a chain literal such as `2*[1 1 1 3] - [0 0 0 6]` of degree `n`.
///
/// Brackets hold one integer per factor, separated by spaces or commas. For
/// groups with more than one factor a bracket of bare digits is read one
/// digit per slot, so `[1113]` is `[1 1 1 3]`. `0` is the zero chain.
pub fn parse_chain(g: &GroupSpec, n: usize, text: &str) -> Result<Chain> {
    let syntax = |msg: &str| Error::ChainSyntax(format!("{msg} in `{text}`"));
    let s = text.trim();
    if s == "0" {
        return Ok(Chain::zero(g, n));
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut terms = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            if terms.is_empty() {
                return Err(syntax("empty literal"));
            }
            break;
        }
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !terms.is_empty() {
            return Err(syntax("expected `+` or `-` between terms"));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff = BigInt::one();
        if pos > start {
            coeff = s[start..pos].parse().map_err(|_| syntax("bad coefficient"))?;
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'*' {
                return Err(syntax("expected `*` after coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(syntax("expected `[`"));
        }
        let close = s[pos..]
            .find(']')
            .map(|k| pos + k)
            .ok_or_else(|| syntax("unclosed `[`"))?;
        let inner = &s[pos + 1..close];
        pos = close + 1;
        let monomial = parse_bracket(g, inner).ok_or_else(|| syntax("bad monomial"))?;
        if negative {
            coeff = -coeff;
        }
        terms.push((monomial, coeff));
    }
    Chain::from_terms(g, n, terms)
}

fn parse_bracket(g: &GroupSpec, inner: &str) -> Option<Monomial> {
    let tokens: Vec<&str> = inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    let degrees: Vec<u32> = if tokens.len() == 1 && g.len() > 1 && tokens[0].len() == g.len() {
        tokens[0]
            .chars()
            .map(|c| c.to_digit(10))
            .collect::<Option<Vec<u32>>>()?
    } else {
        tokens
            .iter()
            .map(|t| {
                if t.bytes().all(|b| b.is_ascii_digit()) {
                    t.parse().ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<u32>>>()?
    };
    (degrees.len() == g.len()).then_some(Monomial(degrees))
}
