//! Pontryagin product and the inversion chain map on `C(G)`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};

use crate::chain::{Chain, Monomial};
use crate::error::{Error, Result};
use crate::group::{CyclicFactor, GroupSpec, Order};

/// Product of one slot: target degree and coefficient, or `None` for zero.
fn slot_product(f: &CyclicFactor, s: u32, t: u32) -> Option<(u32, BigInt)> {
    if f.is_infinite() {
        return (s + t <= 1).then(|| (s + t, BigInt::one()));
    }
    if s % 2 == 1 && t % 2 == 1 {
        return None;
    }
    let (a, b) = (BigInt::from(s / 2), BigInt::from(t / 2));
    Some((s + t, binomial(&a + &b, b)))
}

/// `s ^ t` on basis monomials. The sign is the left fold of the two-factor
/// rule `(a (x) b)(a' (x) b') = (-1)^(|a'||b|) aa' (x) bb'`, which comes out
/// as `(-1)^(sum over i < j of t_i s_j)`.
pub(crate) fn monomial_wedge(g: &GroupSpec, s: &Monomial, t: &Monomial) -> Option<(Monomial, BigInt)> {
    let (sd, td) = (s.degrees(), t.degrees());
    let mut out = Vec::with_capacity(sd.len());
    let mut coeff = BigInt::one();
    for (k, f) in g.factors().iter().enumerate() {
        let (d, c) = slot_product(f, sd[k], td[k])?;
        out.push(d);
        if !c.is_one() {
            coeff *= c;
        }
    }
    // Parity of sum_{i<j} t_i s_j, accumulated as (t_1 + ... + t_{j-1}) * s_j.
    let mut t_prefix = 0u32;
    let mut parity = 0u32;
    for (k, &sj) in sd.iter().enumerate() {
        parity ^= (t_prefix & 1) & (sj & 1);
        t_prefix += td[k];
    }
    if parity == 1 {
        coeff = -coeff;
    }
    Some((Monomial::new(out), coeff))
}

pub fn wedge(a: &Chain, b: &Chain) -> Result<Chain> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch(a.group().to_string(), b.group().to_string()));
    }
    let g = a.group();
    let mut out = Chain::zero(g, a.degree() + b.degree());
    for (s, x) in a.terms() {
        for (t, y) in b.terms() {
            if let Some((m, c)) = monomial_wedge(g, s, t) {
                out.add_term(m, &(c * x * y));
            }
        }
    }
    Ok(out)
}

/// Multiplier of the inversion map on one slot.
fn slot_inversion(f: &CyclicFactor, i: u32) -> BigInt {
    if f.sign().is_twisted() {
        return BigInt::one();
    }
    match f.order() {
        Order::Infinite => {
            if i == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        }
        Order::Finite(q) => {
            let k = i.div_ceil(2);
            Pow::pow(BigInt::from(q - 1), k)
        }
    }
}

pub(crate) fn monomial_inversion(g: &GroupSpec, m: &Monomial) -> BigInt {
    g.factors()
        .iter()
        .zip(m.degrees())
        .map(|(f, &i)| slot_inversion(f, i))
        .product()
}

pub fn inversion_chain(c: &Chain) -> Chain {
    let g = c.group();
    let mut out = Chain::zero(g, c.degree());
    for (m, v) in c.terms() {
        let k = monomial_inversion(g, m);
        if !k.is_zero() {
            out.add_term(m.clone(), &(k * v));
        }
    }
    out
}
