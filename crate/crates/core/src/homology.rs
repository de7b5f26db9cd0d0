//! `H_n(G; Z~)` in invariant-factor form, with reduction of cycles to
//! coordinates.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::AbelianGroup;
use crate::chain::{basis, basis_index, boundary, monomial_boundary, Chain, Monomial};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::segment::{Segment, SegmentHomology};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassOrder {
    Finite(BigInt),
    Infinite,
}

impl ClassOrder {
    pub fn is_trivial(&self) -> bool {
        matches!(self, ClassOrder::Finite(o) if o.is_one())
    }
}

impl fmt::Display for ClassOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassOrder::Finite(o) => write!(f, "{o}"),
            ClassOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Coordinates of a homology class: free part, then torsion part reduced
/// into `[0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
    divisors: Arc<[BigInt]>,
}

impl HomologyClass {
    pub(crate) fn new(free: Vec<BigInt>, torsion: Vec<BigInt>, divisors: Arc<[BigInt]>) -> Self {
        assert_eq!(torsion.len(), divisors.len());
        let torsion = torsion
            .into_iter()
            .zip(divisors.iter())
            .map(|(x, d)| if x.is_zero() { x } else { x.mod_floor(d) })
            .collect();
        HomologyClass {
            free,
            torsion,
            divisors,
        }
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn order(&self) -> ClassOrder {
        class_order(self)
    }

    /// Sum of two classes of the same presentation.
    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        assert_eq!(self.divisors, other.divisors, "classes from different presentations");
        assert_eq!(self.free.len(), other.free.len(), "classes from different presentations");
        HomologyClass::new(
            self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            self.torsion.iter().zip(&other.torsion).map(|(a, b)| a + b).collect(),
            self.divisors.clone(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> HomologyClass {
        HomologyClass::new(
            self.free.iter().map(|a| a * k).collect(),
            self.torsion.iter().map(|a| a * k).collect(),
            self.divisors.clone(),
        )
    }

    pub fn neg(&self) -> HomologyClass {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for HomologyClass {
    /// Coordinate vector, free coordinates first: `(1, 0; 2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match (self.free.is_empty(), self.torsion.is_empty()) {
            (true, true) => write!(f, "()"),
            (false, true) => write!(f, "({})", join(&self.free)),
            (true, false) => write!(f, "({})", join(&self.torsion)),
            (false, false) => write!(f, "({}; {})", join(&self.free), join(&self.torsion)),
        }
    }
}

/// `H_n(G; Z~) = Z^r + Z_{d_1} + ... + Z_{d_t}` together with the data needed
/// to reduce degree-`n` cycles to coordinates.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    group: GroupSpec,
    degree: usize,
    index: HashMap<Monomial, usize>,
    inner: SegmentHomology,
    divisors: Arc<[BigInt]>,
    generators: Vec<Chain>,
}

impl HomologyPresentation {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn free_rank(&self) -> usize {
        self.inner.free_rank()
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// One cycle per cyclic summand: free summands first, then torsion
    /// summands in divisor order.
    pub fn generators(&self) -> &[Chain] {
        &self.generators
    }

    pub fn abelian_group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(
            std::iter::repeat_n(BigInt::zero(), self.free_rank()).chain(self.divisors.iter().cloned()),
        )
    }

    /// Number of cyclic summands.
    pub fn summands(&self) -> usize {
        self.generators.len()
    }

    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass::new(
            vec![BigInt::zero(); self.free_rank()],
            vec![BigInt::zero(); self.divisors.len()],
            self.divisors.clone(),
        )
    }

    /// Class with coordinate 1 on summand `i` and 0 elsewhere.
    pub fn generator_class(&self, i: usize) -> HomologyClass {
        let mut coords = vec![BigInt::zero(); self.summands()];
        coords[i] = BigInt::one();
        self.class_from_coordinates(&coords)
    }

    /// Class from a flat coordinate vector (free coordinates first).
    pub fn class_from_coordinates(&self, coords: &[BigInt]) -> HomologyClass {
        assert_eq!(coords.len(), self.summands(), "coordinate vector length");
        let r = self.free_rank();
        HomologyClass::new(coords[..r].to_vec(), coords[r..].to_vec(), self.divisors.clone())
    }

    /// A cycle representing `c`.
    pub fn representative(&self, c: &HomologyClass) -> Chain {
        let mut out = Chain::zero(&self.group, self.degree);
        for (x, g) in c.free.iter().chain(&c.torsion).zip(&self.generators) {
            if !x.is_zero() {
                out = out.checked_add(&g.scaled(x)).expect("same group and degree");
            }
        }
        out
    }

    pub fn reduce_cycle(&self, c: &Chain) -> Result<HomologyClass> {
        if c.group() != &self.group {
            return Err(Error::GroupMismatch(c.group().to_string(), self.group.to_string()));
        }
        if c.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: c.degree(),
            });
        }
        if !boundary(c).is_zero() {
            return Err(Error::NotACycle);
        }
        Ok(self.reduce_unchecked(c))
    }

    /// Coordinates of a chain already known to be a cycle.
    pub(crate) fn reduce_unchecked(&self, c: &Chain) -> HomologyClass {
        let (free, torsion) = self.inner.coordinates(&c.to_sparse(&self.index));
        HomologyClass::new(free, torsion, self.divisors.clone())
    }

    /// Whether a cycle is null-homologous.
    pub(crate) fn is_boundary_unchecked(&self, c: &Chain) -> bool {
        c.is_zero() || self.inner.is_boundary(&c.to_sparse(&self.index))
    }

    pub fn enumerate_classes(&self) -> Result<ClassIter<'_>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(ClassIter {
            presentation: self,
            next: Some(vec![BigInt::zero(); self.divisors.len()]),
        })
    }
}

impl fmt::Display for HomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.abelian_group())
    }
}

/// Every class of a finite presentation exactly once, in lexicographic
/// order of torsion coordinates.
pub struct ClassIter<'a> {
    presentation: &'a HomologyPresentation,
    next: Option<Vec<BigInt>>,
}

impl Iterator for ClassIter<'_> {
    type Item = HomologyClass;

    fn next(&mut self) -> Option<HomologyClass> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let divisors = &self.presentation.divisors;
        let mut k = succ.len();
        let mut carried = true;
        while carried && k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] == divisors[k] {
                succ[k] = BigInt::zero();
            } else {
                carried = false;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(HomologyClass::new(Vec::new(), current, divisors.clone()))
    }
}

pub fn homology(g: &GroupSpec, n: usize) -> HomologyPresentation {
    let lower = if n == 0 { Vec::new() } else { basis(g, n - 1) };
    let cells = basis(g, n);
    let upper = basis(g, n + 1);
    let lower_index = basis_index(&lower);
    let index = basis_index(&cells);
    let sparse = |m: &Monomial, idx: &HashMap<Monomial, usize>| -> Vec<(usize, BigInt)> {
        monomial_boundary(g, m)
            .into_iter()
            .map(|(t, v)| (idx[&t], v))
            .collect()
    };
    let segment = Segment {
        lower: lower.len(),
        cells: cells.len(),
        boundary: if n == 0 {
            vec![Vec::new(); cells.len()]
        } else {
            cells.iter().map(|m| sparse(m, &lower_index)).collect()
        },
        upper: upper.iter().map(|m| sparse(m, &index)).collect(),
    };
    let inner = SegmentHomology::compute(segment);
    let divisors: Arc<[BigInt]> = inner.divisors().into();
    let generators = inner
        .generators()
        .iter()
        .map(|v| {
            Chain::from_terms(g, n, v.iter().map(|(i, c)| (cells[*i].clone(), c.clone())))
                .expect("basis monomials are valid")
        })
        .collect();
    HomologyPresentation {
        group: g.clone(),
        degree: n,
        index,
        inner,
        divisors,
        generators,
    }
}

pub fn reduce_cycle(h: &HomologyPresentation, c: &Chain) -> Result<HomologyClass> {
    h.reduce_cycle(c)
}

pub fn class_order(c: &HomologyClass) -> ClassOrder {
    if c.free.iter().any(|x| !x.is_zero()) {
        return ClassOrder::Infinite;
    }
    let mut order = BigInt::one();
    for (x, d) in c.torsion.iter().zip(c.divisors.iter()) {
        let o = d / x.gcd(d);
        order = order.lcm(&o);
    }
    ClassOrder::Finite(order)
}

pub fn enumerate_classes(h: &HomologyPresentation) -> Result<ClassIter<'_>> {
    h.enumerate_classes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::parse_chain;
    use crate::group::parse_group_spec;

    fn g(s: &str) -> GroupSpec {
        parse_group_spec(s).unwrap()
    }

    fn shows(spec: &str, n: usize) -> String {
        homology(&g(spec), n).to_string()
    }

    #[test]
    fn atomic_closed_forms() {
        for k in 1..5 {
            assert_eq!(shows("Z_3", 2 * k - 1), "Z_3");
            assert_eq!(shows("Z_3", 2 * k), "0");
            assert_eq!(shows("Z_4~", 2 * k), "Z_2");
            assert_eq!(shows("Z_4~", 2 * k - 1), "0");
        }
        assert_eq!(shows("Z_3", 0), "Z");
        assert_eq!(shows("Z~", 0), "Z_2");
        assert_eq!(shows("Z~", 1), "0");
        assert_eq!(shows("Z", 1), "Z");
        assert_eq!(shows("1", 0), "Z");
        assert_eq!(shows("1", 1), "0");
        assert_eq!(shows("Z_2~", 0), "Z_2");
    }

    #[test]
    fn product_groups() {
        assert_eq!(shows("Z_2 x Z_2", 2), "Z_2");
        assert_eq!(shows("Z x Z", 1), "Z^2");
        assert_eq!(shows("Z^3 x Z_3", 6), "Z_3^4");
    }

    #[test]
    fn torsion_reduction_of_stated_value() {
        let grp = g("Z^3 x Z_3");
        let h = homology(&grp, 6);
        let base = h.reduce_cycle(&parse_chain(&grp, 6, "[1113]").unwrap()).unwrap();
        assert_eq!(base.order(), ClassOrder::Finite(BigInt::from(3)));
        let five = h.reduce_cycle(&parse_chain(&grp, 6, "5*[1113]").unwrap()).unwrap();
        assert_eq!(five, base.scale(&BigInt::from(2)));
    }

    #[test]
    fn single_torsion_generator() {
        let grp = g("Z_3");
        let h = homology(&grp, 3);
        let c = h.reduce_cycle(&parse_chain(&grp, 3, "[3]").unwrap()).unwrap();
        assert_eq!(c.order(), ClassOrder::Finite(BigInt::from(3)));
    }

    #[test]
    fn boundaries_vanish() {
        let grp = g("Z x Z_2 x Z_4");
        let h = homology(&grp, 4);
        let d = parse_chain(&grp, 5, "[1 2 2] + 3*[0 1 4] - [1 3 1] + [0 2 3]").unwrap();
        assert!(h.reduce_cycle(&boundary(&d)).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_cycles() {
        let grp = g("Z_3");
        let h = homology(&grp, 2);
        let c = parse_chain(&grp, 2, "[2]").unwrap();
        assert_eq!(h.reduce_cycle(&c), Err(Error::NotACycle));
    }

    #[test]
    fn generators_reduce_to_unit_vectors() {
        for spec in ["Z^2 x Z_3 x Z_3", "Z x Z_2 x Z_4", "Z_2~ x Z_4 x Z"] {
            let grp = g(spec);
            for n in 0..6 {
                let h = homology(&grp, n);
                for (i, gen) in h.generators().iter().enumerate() {
                    assert!(boundary(gen).is_zero());
                    assert_eq!(h.reduce_cycle(gen).unwrap(), h.generator_class(i), "{spec} {n} {i}");
                }
            }
        }
    }

    #[test]
    fn class_orders() {
        let h = homology(&g("Z x Z_3"), 1);
        assert_eq!(h.to_string(), "Z + Z_3");
        assert_eq!(h.zero_class().order(), ClassOrder::Finite(BigInt::one()));
        assert_eq!(h.generator_class(0).order(), ClassOrder::Infinite);
        assert_eq!(h.generator_class(1).order(), ClassOrder::Finite(BigInt::from(3)));
    }

    #[test]
    fn enumeration() {
        let h = homology(&g("Z_3 x Z_3"), 1);
        assert_eq!(h.enumerate_classes().unwrap().count(), 9);
        let h = homology(&GroupSpec::trivial(), 0);
        assert!(matches!(h.enumerate_classes(), Err(Error::InfiniteGroup)));
        let h = homology(&GroupSpec::trivial(), 3);
        let all: Vec<_> = h.enumerate_classes().unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_zero());
        let h = homology(&g("Z x Z_2"), 1);
        assert!(matches!(h.enumerate_classes(), Err(Error::InfiniteGroup)));
    }
}
