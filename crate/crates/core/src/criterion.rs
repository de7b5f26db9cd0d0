//! The class `chi(c) = c ^ j(c)` in `H_2n`, the decision whether it vanishes
//! on all of `H_n`, and the syntactic list of group/degree conditions known
//! to force vanishing.
//!
//! Since `(c, d) -> c ^ j(d)` is bilinear, `chi` is a quadratic form. With
//! `B_ij = [z_i ^ j(z_j)]` for generator cycles `z_i`, it vanishes on every
//! class iff `B_ii = 0` for all `i` and `B_ij + B_ji = 0` for all `i < j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::{inversion_chain, wedge};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::homology::{homology, ClassOrder, HomologyClass, HomologyPresentation};

/// Which hypothesis of the vanishing theorem a group satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Twisted,
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::Twisted => "nonorientable/twisted",
            CaseLabel::A => "2a",
            CaseLabel::B => "2b",
            CaseLabel::C => "2c",
            CaseLabel::D => "2d",
            CaseLabel::E => "2e",
        };
        write!(f, "{s}")
    }
}

/// A class of `H_n` whose `chi` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub class: HomologyClass,
    pub representative: Chain,
    pub chi: HomologyClass,
    pub chi_order: ClassOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictKind {
    Vanishes,
    NonzeroWitness(Box<Witness>),
    TheoremCovered(CaseLabel),
    NotCovered,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Vanishes => write!(f, "vanishes"),
            VerdictKind::NonzeroWitness(w) => write!(f, "nonzero witness (order {})", w.chi_order),
            VerdictKind::TheoremCovered(l) => write!(f, "covered ({l})"),
            VerdictKind::NotCovered => write!(f, "not covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub interpretation: String,
}

/// Presentations of `H_n` and `H_2n` for repeated `chi` evaluations.
#[derive(Debug, Clone)]
pub struct ChiContext {
    source: HomologyPresentation,
    target: HomologyPresentation,
}

impl ChiContext {
    pub fn new(g: &GroupSpec, n: usize) -> Self {
        ChiContext {
            source: homology(g, n),
            target: homology(g, 2 * n),
        }
    }

    pub fn source(&self) -> &HomologyPresentation {
        &self.source
    }

    pub fn target(&self) -> &HomologyPresentation {
        &self.target
    }

    pub fn j_star(&self, c: &HomologyClass) -> HomologyClass {
        j_star(&self.source, c)
    }

    /// `[z ^ j(z)]` for a cycle `z` of degree `n`.
    pub fn chi_of_cycle(&self, z: &Chain) -> Result<HomologyClass> {
        // Validates group, degree and the cycle condition.
        self.source.reduce_cycle(z)?;
        Ok(self.pairing(z, &inversion_chain(z)))
    }

    pub fn chi_square(&self, c: &HomologyClass) -> HomologyClass {
        let z = self.source.representative(c);
        self.pairing(&z, &inversion_chain(&z))
    }

    /// `[a ^ b]` for cycles `a` of degree `n` and `b` of degree `n`.
    fn pairing(&self, a: &Chain, b: &Chain) -> HomologyClass {
        let p = wedge(a, b).expect("same group");
        self.target.reduce_unchecked(&p)
    }

    /// Matrix `B_ij = [z_i ^ j(z_j)]` over the generators of `H_n`.
    pub fn bilinear_matrix(&self) -> Vec<Vec<HomologyClass>> {
        let gens = self.source.generators();
        let inv: Vec<Chain> = gens.iter().map(inversion_chain).collect();
        gens.iter()
            .map(|zi| inv.iter().map(|jz| self.pairing(zi, jz)).collect())
            .collect()
    }

    /// First generator `e_i`, or else pair `e_i + e_j`, with nonzero `chi`.
    pub fn find_witness(&self) -> Option<Witness> {
        if self.target.summands() == 0 {
            return None;
        }
        let gens = self.source.generators();
        let inv: Vec<Chain> = gens.iter().map(inversion_chain).collect();
        for i in 0..gens.len() {
            let square = wedge(&gens[i], &inv[i]).expect("same group");
            if !self.target.is_boundary_unchecked(&square) {
                let chi = self.target.reduce_unchecked(&square);
                return Some(self.witness(self.source.generator_class(i), chi));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let cross = wedge(&gens[i], &inv[j])
                    .and_then(|a| a.checked_add(&wedge(&gens[j], &inv[i])?))
                    .expect("same group and degree");
                if !self.target.is_boundary_unchecked(&cross) {
                    let chi = self.target.reduce_unchecked(&cross);
                    let class = self.source.generator_class(i).add(&self.source.generator_class(j));
                    return Some(self.witness(class, chi));
                }
            }
        }
        None
    }

    fn witness(&self, class: HomologyClass, chi: HomologyClass) -> Witness {
        let representative = self.source.representative(&class);
        let chi_order = chi.order();
        Witness {
            class,
            representative,
            chi,
            chi_order,
        }
    }
}

/// Class of `j` applied to a representative of `c`.
pub fn j_star(h: &HomologyPresentation, c: &HomologyClass) -> HomologyClass {
    let z = h.representative(c);
    h.reduce_unchecked(&inversion_chain(&z))
}

/// `chi(c) = c ^ j(c)` in `H_2n`, for `c` in the presentation `homology(g, n)`.
pub fn chi_square(g: &GroupSpec, n: usize, c: &HomologyClass) -> HomologyClass {
    ChiContext::new(g, n).chi_square(c)
}

/// Whether `chi` vanishes on all of `H_n(g)`, with a witness when it does not.
pub fn vanishes_for_all(g: &GroupSpec, n: usize) -> (bool, Option<Witness>) {
    let witness = ChiContext::new(g, n).find_witness();
    (witness.is_none(), witness)
}

/// Verdict of the full decision procedure.
pub fn decide(g: &GroupSpec, n: usize) -> Verdict {
    let kind = match vanishes_for_all(g, n).1 {
        None => VerdictKind::Vanishes,
        Some(w) => VerdictKind::NonzeroWitness(Box::new(w)),
    };
    let interpretation = interpretation_text(&kind, n);
    Verdict {
        kind,
        interpretation,
    }
}

/// `Some((p, a))` when `q = p^a` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut a = 0;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p, a))
}

fn same_prime(orders: &[u64]) -> bool {
    let primes: Option<Vec<u64>> = orders.iter().map(|&q| prime_power(q).map(|(p, _)| p)).collect();
    primes.is_some_and(|ps| ps.windows(2).all(|w| w[0] == w[1]))
}

/// Syntactic match of `(g, n)` against the hypotheses of the vanishing
/// theorem. Factor order is irrelevant.
pub fn theorem_cover(g: &GroupSpec, n: usize) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let kind = match cover_label(g, n) {
        Some(label) => VerdictKind::TheoremCovered(label),
        None => VerdictKind::NotCovered,
    };
    let interpretation = interpretation_text(&kind, n);
    Ok(Verdict {
        kind,
        interpretation,
    })
}

fn cover_label(g: &GroupSpec, n: usize) -> Option<CaseLabel> {
    if g.is_twisted() {
        return Some(CaseLabel::Twisted);
    }
    let r = g.free_rank();
    let finite: Vec<u64> = g.factors().iter().filter_map(|f| f.modulus()).collect();
    let odd = n % 2 == 1;
    if finite.is_empty() && (odd || 2 * n > r) {
        return Some(CaseLabel::A);
    }
    if finite.len() == 1 && same_prime(&finite) && ((odd && n > r) || (!odd && n >= r)) {
        return Some(CaseLabel::B);
    }
    if finite.len() == 2 && same_prime(&finite) && r <= 1 {
        return Some(CaseLabel::C);
    }
    if finite.len() == 3 && same_prime(&finite) && r == 0 {
        return Some(CaseLabel::D);
    }
    if !finite.is_empty() && finite.iter().all(|&q| q == 2) && (odd || 2 * n > r) {
        return Some(CaseLabel::E);
    }
    None
}

/// Topological reading of a verdict for closed `n`-manifolds.
pub fn interpret(v: &Verdict, n: usize) -> Result<String> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    Ok(interpretation_text(&v.kind, n))
}

fn witness_text(n: usize) -> String {
    let top = 2 * n;
    format!(
        "any closed orientable {n}-manifold M with abelian pi_1(M) = G whose fundamental class \
         maps to the witness has TC(M) = {top} = cat(C_Delta(M))"
    )
}

fn interpretation_text(kind: &VerdictKind, n: usize) -> String {
    let top = 2 * n;
    match kind {
        VerdictKind::Vanishes | VerdictKind::TheoremCovered(_) => format!(
            "for every closed {n}-manifold M with abelian pi_1(M) = G and this orientation character: \
             TC(M) < {top} and cat(C_Delta(M)) < {top}"
        ),
        VerdictKind::NonzeroWitness(_) => witness_text(n),
        VerdictKind::NotCovered => {
            "criterion inconclusive at theorem level; run vanishes_for_all".to_string()
        }
    }
}

/// Topological reading of a single value of `chi` for manifolds whose
/// fundamental class maps to the class it was computed from.
pub fn class_interpretation(chi: &HomologyClass, n: usize) -> String {
    let top = 2 * n;
    if chi.is_zero() {
        format!(
            "any closed {n}-manifold M with abelian pi_1(M) = G whose fundamental class maps to this \
             class has TC(M) < {top} and cat(C_Delta(M)) < {top}"
        )
    } else {
        witness_text(n)
    }
}

/// `[z ^ z]` is divisible by 2 in `H_2n`: returns some `e` with `2e = [z ^ z]`.
pub fn half_of_square(ctx: &ChiContext, z: &Chain) -> Option<HomologyClass> {
    let sq = ctx.target.reduce_unchecked(&wedge(z, z).ok()?);
    halve(&sq)
}

/// Some `e` with `2e = c`, if one exists.
pub fn halve(c: &HomologyClass) -> Option<HomologyClass> {
    let two = BigInt::from(2);
    let mut free = Vec::new();
    for x in c.free() {
        if !x.is_even() {
            return None;
        }
        free.push(x / &two);
    }
    let mut torsion = Vec::new();
    for (x, d) in c.torsion().iter().zip(c.divisors()) {
        // Solve 2y = x mod d.
        if d.is_odd() {
            let inv2 = (d + 1u32) / &two;
            torsion.push((x * inv2).mod_floor(d));
        } else if x.is_even() {
            torsion.push(x / &two);
        } else {
            return None;
        }
    }
    Some(HomologyClass::new(free, torsion, c.divisors().into()))
}
