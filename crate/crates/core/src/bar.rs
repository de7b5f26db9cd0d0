//! Independent recomputation of twisted homology, the Pontryagin product and
//! the inversion map from the normalized bar construction of a finite group.
//!
//! A bar cell `[g_1 | ... | g_k]` has nonidentity entries. The differential
//! tensored with the sign module is
//!
//! `d[g_1|...|g_k] = w(g_1)[g_2|...|g_k] + sum_i (-1)^i [...|g_i g_{i+1}|...] + (-1)^k [g_1|...|g_{k-1}]`,
//!
//! the product is the signed shuffle, and the inversion replaces every entry
//! by its inverse. When the bar complex of the whole group is too large, the
//! oracle falls back to the tensor product of the bar complexes of the cyclic
//! factors, which is chain equivalent (Eilenberg-Zilber) and much smaller.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::AbelianGroup;
use crate::criterion::ChiContext;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::homology::{homology, ClassOrder, HomologyClass};
use crate::segment::{Segment, SegmentHomology};

pub const DEFAULT_CAP: usize = 20_000;

/// One cyclic factor or a product of several, with elements numbered in
/// mixed radix (index 0 is the identity).
#[derive(Debug, Clone)]
struct Block {
    orders: Vec<u64>,
    twisted: Vec<bool>,
    digits: Vec<Vec<u64>>,
}

impl Block {
    fn new(orders: Vec<u64>, twisted: Vec<bool>) -> Self {
        let size: u64 = orders.iter().product();
        let digits = (0..size)
            .map(|mut x| {
                orders
                    .iter()
                    .map(|&q| {
                        let d = x % q;
                        x /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        Block {
            orders,
            twisted,
            digits,
        }
    }

    fn size(&self) -> usize {
        self.digits.len()
    }

    fn encode(&self, e: &[u64]) -> u32 {
        let mut idx = 0u64;
        for (d, q) in e.iter().zip(&self.orders).rev() {
            idx = idx * q + d % q;
        }
        idx as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (&self.digits[a as usize], &self.digits[b as usize]);
        let mut idx = 0u64;
        for k in (0..self.orders.len()).rev() {
            idx = idx * self.orders[k] + (x[k] + y[k]) % self.orders[k];
        }
        idx as u32
    }

    fn inv(&self, a: u32) -> u32 {
        let x = &self.digits[a as usize];
        let mut idx = 0u64;
        for k in (0..self.orders.len()).rev() {
            let q = self.orders[k];
            idx = idx * q + (q - x[k]) % q;
        }
        idx as u32
    }

    fn omega(&self, a: u32) -> i64 {
        let x = &self.digits[a as usize];
        let odd = x
            .iter()
            .zip(&self.twisted)
            .filter(|(d, t)| **t && *d % 2 == 1)
            .count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn boundary(&self, t: &[u32]) -> Vec<(Vec<u32>, i64)> {
        let k = t.len();
        if k == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(k + 1);
        out.push((t[1..].to_vec(), self.omega(t[0])));
        for i in 1..k {
            let prod = self.mul(t[i - 1], t[i]);
            if prod != 0 {
                let mut face = Vec::with_capacity(k - 1);
                face.extend_from_slice(&t[..i - 1]);
                face.push(prod);
                face.extend_from_slice(&t[i + 1..]);
                out.push((face, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        out.push((t[..k - 1].to_vec(), if k % 2 == 0 { 1 } else { -1 }));
        out
    }
}

/// All interleavings of `s` and `t` with the sign of the shuffle permutation.
fn shuffles(s: &[u32], t: &[u32]) -> Vec<(Vec<u32>, i64)> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(s.len() + t.len());
    shuffle_rec(s, t, 0, &mut buf, &mut out);
    out
}

fn shuffle_rec(s: &[u32], t: &[u32], inversions: usize, buf: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, i64)>) {
    if s.is_empty() && t.is_empty() {
        out.push((buf.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        return;
    }
    if let Some((&x, rest)) = s.split_first() {
        buf.push(x);
        shuffle_rec(rest, t, inversions, buf, out);
        buf.pop();
    }
    if let Some((&y, rest)) = t.split_first() {
        // `y` jumps over every remaining entry of `s`.
        buf.push(y);
        shuffle_rec(s, rest, inversions + s.len(), buf, out);
        buf.pop();
    }
}

/// Which chain complex the oracle uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BarModel {
    /// Bar construction of the whole group.
    Whole,
    /// Tensor product of the bar constructions of the cyclic factors.
    Factorwise,
}

impl fmt::Display for BarModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarModel::Whole => write!(f, "bar(G)"),
            BarModel::Factorwise => write!(f, "bar(G_1) x ... x bar(G_l)"),
        }
    }
}

/// A cell: one bar tuple per block.
type Cell = Vec<Vec<u32>>;
type SparseChain = HashMap<Cell, BigInt>;

#[derive(Debug, Clone)]
struct BarComplex {
    blocks: Vec<Block>,
}

impl BarComplex {
    fn new(g: &GroupSpec, model: BarModel) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let orders: Vec<u64> = g.factors().iter().map(|f| f.modulus().expect("finite")).collect();
        let twisted: Vec<bool> = g.factors().iter().map(|f| f.sign().is_twisted()).collect();
        let blocks = match model {
            BarModel::Whole => vec![Block::new(orders, twisted)],
            BarModel::Factorwise => orders
                .into_iter()
                .zip(twisted)
                .map(|(q, t)| Block::new(vec![q], vec![t]))
                .collect(),
        };
        Ok(BarComplex { blocks })
    }

    /// Number of cells in degree `k`, without enumerating them.
    fn count(&self, k: usize) -> u128 {
        // counts[d] = number of cells of degree d over the blocks seen so far
        let mut counts = vec![0u128; k + 1];
        counts[0] = 1;
        for b in &self.blocks {
            let base = (b.size() - 1) as u128;
            let mut next = vec![0u128; k + 1];
            for (d, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut pow = 1u128;
                for e in 0..=k - d {
                    next[d + e] = next[d + e].saturating_add(c.saturating_mul(pow));
                    pow = pow.saturating_mul(base);
                    if pow == 0 {
                        break;
                    }
                }
            }
            counts = next;
        }
        counts[k]
    }

    fn cells(&self, k: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        let mut current: Cell = Vec::with_capacity(self.blocks.len());
        self.fill(0, k, &mut current, &mut out);
        out
    }

    fn fill(&self, block: usize, remaining: usize, current: &mut Cell, out: &mut Vec<Cell>) {
        if block == self.blocks.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let size = self.blocks[block].size() as u32;
        for d in 0..=remaining {
            if size == 1 && d > 0 {
                break;
            }
            let mut tuple = vec![1u32; d];
            loop {
                current.push(tuple.clone());
                self.fill(block + 1, remaining - d, current, out);
                current.pop();
                // next tuple over 1..size, last entry fastest
                let mut i = d;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < size {
                        break;
                    }
                    tuple[i] = 1;
                    if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if d == 0 || i == usize::MAX {
                    break;
                }
            }
        }
    }

    fn boundary(&self, cell: &Cell) -> Vec<(Cell, i64)> {
        let mut out = Vec::new();
        let mut prefix = 0usize;
        for (b, t) in cell.iter().enumerate() {
            for (face, c) in self.blocks[b].boundary(t) {
                let mut next = cell.clone();
                next[b] = face;
                out.push((next, if prefix % 2 == 0 { c } else { -c }));
            }
            prefix += t.len();
        }
        out
    }

    /// Product of two cells: blockwise shuffles with the Koszul sign
    /// `(-1)^(sum over i < j of |t_i| |s_j|)`.
    fn product(&self, s: &Cell, t: &Cell) -> Vec<(Cell, i64)> {
        let mut parity = 0usize;
        let mut t_prefix = 0usize;
        for (si, ti) in s.iter().zip(t) {
            parity += t_prefix * si.len();
            t_prefix += ti.len();
        }
        let sign = if parity % 2 == 0 { 1 } else { -1 };
        let mut acc: Vec<(Cell, i64)> = vec![(Vec::with_capacity(s.len()), sign)];
        for (si, ti) in s.iter().zip(t) {
            let sh = shuffles(si, ti);
            let mut next = Vec::with_capacity(acc.len() * sh.len());
            for (prefix, c) in &acc {
                for (tuple, d) in &sh {
                    let mut cell = prefix.clone();
                    cell.push(tuple.clone());
                    next.push((cell, c * d));
                }
            }
            acc = next;
        }
        acc
    }

    fn inversion(&self, cell: &Cell) -> Cell {
        cell.iter()
            .zip(&self.blocks)
            .map(|(t, b)| t.iter().map(|&x| b.inv(x)).collect())
            .collect()
    }

    fn presentation(&self, n: usize) -> BarPresentation {
        let lower = if n == 0 { Vec::new() } else { self.cells(n - 1) };
        let cells = self.cells(n);
        let upper = self.cells(n + 1);
        let index_of = |v: &[Cell]| -> HashMap<Cell, usize> {
            v.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()
        };
        let lower_index = index_of(&lower);
        let index = index_of(&cells);
        let sparse = |c: &Cell, idx: &HashMap<Cell, usize>| -> Vec<(usize, BigInt)> {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (face, v) in self.boundary(c) {
                *acc.entry(idx[&face]).or_default() += v;
            }
            acc.into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(i, v)| (i, BigInt::from(v)))
                .collect()
        };
        let segment = Segment {
            lower: lower.len(),
            cells: cells.len(),
            boundary: cells.iter().map(|c| sparse(c, &lower_index)).collect(),
            upper: upper.iter().map(|c| sparse(c, &index)).collect(),
        };
        let inner = SegmentHomology::compute(segment);
        let divisors: Arc<[BigInt]> = inner.divisors().into();
        BarPresentation {
            cells,
            index,
            inner,
            divisors,
        }
    }
}

struct BarPresentation {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    inner: SegmentHomology,
    divisors: Arc<[BigInt]>,
}

impl BarPresentation {
    fn group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(
            std::iter::repeat_n(BigInt::zero(), self.inner.free_rank()).chain(self.divisors.iter().cloned()),
        )
    }

    fn generator_chains(&self) -> Vec<SparseChain> {
        self.inner
            .generators()
            .iter()
            .map(|g| g.iter().map(|(i, v)| (self.cells[*i].clone(), v.clone())).collect())
            .collect()
    }

    fn reduce(&self, c: &SparseChain) -> HomologyClass {
        let sparse: Vec<(usize, BigInt)> = c
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(cell, v)| (self.index[cell], v.clone()))
            .collect();
        let (free, torsion) = self.inner.coordinates(&sparse);
        HomologyClass::new(free, torsion, self.divisors.clone())
    }
}

/// The model used for computations up to degree `top` under `cap` cells per
/// degree: the whole bar construction when it fits, else the factorwise one.
pub fn select_model(g: &GroupSpec, top: usize, cap: usize) -> Result<BarModel> {
    let mut smallest = u128::MAX;
    for model in [BarModel::Whole, BarModel::Factorwise] {
        let cells = BarComplex::new(g, model)?.count(top);
        if cells <= cap as u128 {
            return Ok(model);
        }
        smallest = smallest.min(cells);
    }
    Err(Error::CapExceeded {
        degree: top,
        cells: smallest,
        cap,
    })
}

/// `H_n(G; Z~)` from the bar construction.
pub fn bar_homology(g: &GroupSpec, n: usize, cap: usize) -> Result<AbelianGroup> {
    let model = select_model(g, n + 1, cap)?;
    Ok(BarComplex::new(g, model)?.presentation(n).group())
}

/// Where a profile is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileSource {
    Bar,
    Small,
}

/// Multiset of `(order of c, order of c ^ j(c))` over all classes `c` of `H_n`.
pub type Profile = BTreeMap<(ClassOrder, ClassOrder), usize>;

pub fn chi_profile(source: ProfileSource, g: &GroupSpec, n: usize, cap: usize) -> Result<Profile> {
    let (source_divisors, matrix) = match source {
        ProfileSource::Small => {
            let ctx = ChiContext::new(g, n);
            if !ctx.source().is_finite() {
                return Err(Error::InfiniteGroup);
            }
            (ctx.source().divisors().to_vec(), ctx.bilinear_matrix())
        }
        ProfileSource::Bar => {
            let model = select_model(g, 2 * n + 1, cap)?;
            let complex = BarComplex::new(g, model)?;
            let hn = complex.presentation(n);
            if hn.inner.free_rank() != 0 {
                return Err(Error::InfiniteGroup);
            }
            let h2n = complex.presentation(2 * n);
            let gens = hn.generator_chains();
            let inv: Vec<SparseChain> = gens
                .iter()
                .map(|z| z.iter().map(|(c, v)| (complex.inversion(c), v.clone())).collect())
                .collect();
            let matrix = gens
                .iter()
                .map(|zi| {
                    inv.iter()
                        .map(|jz| {
                            let mut prod: SparseChain = HashMap::new();
                            for (s, x) in zi {
                                for (t, y) in jz {
                                    for (cell, c) in complex.product(s, t) {
                                        *prod.entry(cell).or_default() += x * y * c;
                                    }
                                }
                            }
                            h2n.reduce(&prod)
                        })
                        .collect()
                })
                .collect();
            (hn.divisors.to_vec(), matrix)
        }
    };
    Ok(profile_from_pairing(&source_divisors, &matrix))
}

/// Evaluates the quadratic form `x -> sum_ij x_i x_j B_ij` on every class.
fn profile_from_pairing(divisors: &[BigInt], b: &[Vec<HomologyClass>]) -> Profile {
    let m = divisors.len();
    let arc: Arc<[BigInt]> = divisors.into();
    let mut profile = Profile::new();
    let zero_target = b.first().map(|row| row[0].scale(&BigInt::zero()));
    let mut x = vec![BigInt::zero(); m];
    loop {
        let class = HomologyClass::new(Vec::new(), x.clone(), arc.clone());
        let chi_order = match &zero_target {
            None => ClassOrder::Finite(1.into()),
            Some(zero) => {
                let mut acc = zero.clone();
                for i in 0..m {
                    if x[i].is_zero() {
                        continue;
                    }
                    acc = acc.add(&b[i][i].scale(&(&x[i] * &x[i])));
                    for j in i + 1..m {
                        if x[j].is_zero() {
                            continue;
                        }
                        let cross = b[i][j].add(&b[j][i]);
                        acc = acc.add(&cross.scale(&(&x[i] * &x[j])));
                    }
                }
                acc.order()
            }
        };
        *profile.entry((class.order(), chi_order)).or_default() += 1;
        // odometer
        let mut k = m;
        loop {
            if k == 0 {
                return profile;
            }
            k -= 1;
            x[k] += 1;
            if x[k] == divisors[k] {
                x[k] = BigInt::zero();
            } else {
                break;
            }
        }
    }
}

/// Tuple of group elements, each an exponent vector over the factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarElement(pub Vec<Vec<u64>>);

impl BarElement {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|e| e.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .map(|s| format!("({s})"))
            .collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

/// Integer combination of bar cells of one degree over a finite group.
/// Tuples containing the identity are zero in the normalized complex and
/// are dropped on insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarChain {
    group: GroupSpec,
    degree: usize,
    terms: BTreeMap<BarElement, BigInt>,
}

impl BarChain {
    pub fn new(
        group: &GroupSpec,
        degree: usize,
        terms: impl IntoIterator<Item = (BarElement, BigInt)>,
    ) -> Result<Self> {
        let block = whole_block(group)?;
        let mut c = BarChain {
            group: group.clone(),
            degree,
            terms: BTreeMap::new(),
        };
        for (e, v) in terms {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: e.degree(),
                });
            }
            let idx: Vec<u32> = e.0.iter().map(|x| block.encode(x)).collect();
            c.add(&block, &idx, &v);
        }
        Ok(c)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<BarElement, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, block: &Block, tuple: &[u32], v: &BigInt) {
        if v.is_zero() || tuple.contains(&0) {
            return;
        }
        let key = BarElement(tuple.iter().map(|&x| block.digits[x as usize].clone()).collect());
        let e = self.terms.entry(key.clone()).or_default();
        *e += v;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn indexed(&self, block: &Block) -> Vec<(Vec<u32>, BigInt)> {
        self.terms
            .iter()
            .map(|(e, v)| (e.0.iter().map(|x| block.encode(x)).collect(), v.clone()))
            .collect()
    }
}

fn whole_block(g: &GroupSpec) -> Result<Block> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    Ok(Block::new(
        g.factors().iter().map(|f| f.modulus().expect("finite")).collect(),
        g.factors().iter().map(|f| f.sign().is_twisted()).collect(),
    ))
}

pub fn bar_boundary(c: &BarChain) -> Result<BarChain> {
    let block = whole_block(&c.group)?;
    let mut out = BarChain::new(&c.group, c.degree.saturating_sub(1), [])?;
    for (t, v) in c.indexed(&block) {
        for (face, k) in block.boundary(&t) {
            out.add(&block, &face, &(&v * k));
        }
    }
    Ok(out)
}

pub fn shuffle_product(a: &BarChain, b: &BarChain) -> Result<BarChain> {
    if a.group != b.group {
        return Err(Error::GroupMismatch(a.group.to_string(), b.group.to_string()));
    }
    let block = whole_block(&a.group)?;
    let mut out = BarChain::new(&a.group, a.degree + b.degree, [])?;
    for (s, x) in a.indexed(&block) {
        for (t, y) in b.indexed(&block) {
            for (tuple, k) in shuffles(&s, &t) {
                out.add(&block, &tuple, &(&x * &y * k));
            }
        }
    }
    Ok(out)
}

pub fn bar_inversion(c: &BarChain) -> Result<BarChain> {
    let block = whole_block(&c.group)?;
    let mut out = BarChain::new(&c.group, c.degree, [])?;
    for (t, v) in c.indexed(&block) {
        let inv: Vec<u32> = t.iter().map(|&x| block.inv(x)).collect();
        out.add(&block, &inv, &v);
    }
    Ok(out)
}

/// Profiles from both sources; equal when the oracle agrees.
pub fn compare_profiles(g: &GroupSpec, n: usize, cap: usize) -> Result<(Profile, Profile)> {
    Ok((
        chi_profile(ProfileSource::Bar, g, n, cap)?,
        chi_profile(ProfileSource::Small, g, n, cap)?,
    ))
}

/// Three isomorphism types of `H_n`: bar construction, small resolution and
/// the Künneth prediction.
pub fn three_way(g: &GroupSpec, n: usize, cap: usize) -> Result<[AbelianGroup; 3]> {
    let bar = bar_homology(g, n, cap)?;
    let small = homology(g, n).abelian_group();
    let (left, right) = g.split_at(g.len().min(1));
    let predicted = crate::kunneth::kunneth_predict(&left, &right, n);
    Ok([bar, small, predicted])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn g(s: &str) -> GroupSpec {
        parse_group_spec(s).unwrap()
    }

    fn el(xs: &[&[u64]]) -> BarElement {
        BarElement(xs.iter().map(|x| x.to_vec()).collect())
    }

    fn one() -> BigInt {
        BigInt::from(1)
    }

    #[test]
    fn z2_boundary_in_normalized_complex() {
        // [v|v] -> w(v)[v] - [v^2] + [v]; the middle face is the identity.
        let grp = g("Z_2");
        let c = BarChain::new(&grp, 2, [(el(&[&[1], &[1]]), one())]).unwrap();
        let d = bar_boundary(&c).unwrap();
        assert_eq!(d, BarChain::new(&grp, 1, [(el(&[&[1]]), BigInt::from(2))]).unwrap());
        let grp = g("Z_2~");
        let c = BarChain::new(&grp, 2, [(el(&[&[1], &[1]]), one())]).unwrap();
        assert!(bar_boundary(&c).unwrap().is_zero());
    }

    #[test]
    fn identity_entries_vanish() {
        let grp = g("Z_3");
        let c = BarChain::new(&grp, 2, [(el(&[&[0], &[1]]), one())]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn inversion_of_generator() {
        let grp = g("Z_3");
        let c = BarChain::new(&grp, 1, [(el(&[&[1]]), one())]).unwrap();
        let j = bar_inversion(&c).unwrap();
        assert_eq!(j, BarChain::new(&grp, 1, [(el(&[&[2]]), one())]).unwrap());
    }

    #[test]
    fn shuffle_of_two_cells() {
        let grp = g("Z_3 x Z_3");
        let a = BarChain::new(&grp, 1, [(el(&[&[1, 0]]), one())]).unwrap();
        let b = BarChain::new(&grp, 1, [(el(&[&[0, 1]]), one())]).unwrap();
        let p = shuffle_product(&a, &b).unwrap();
        let expected = BarChain::new(
            &grp,
            2,
            [
                (el(&[&[1, 0], &[0, 1]]), one()),
                (el(&[&[0, 1], &[1, 0]]), -one()),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
        let unit = BarChain::new(&grp, 0, [(BarElement(vec![]), one())]).unwrap();
        assert_eq!(shuffle_product(&unit, &a).unwrap(), a);
    }

    #[test]
    fn homology_small_cases() {
        assert_eq!(bar_homology(&g("Z_3"), 3, DEFAULT_CAP).unwrap().to_string(), "Z_3");
        assert_eq!(bar_homology(&g("Z_2~"), 0, DEFAULT_CAP).unwrap().to_string(), "Z_2");
        assert_eq!(bar_homology(&g("Z_2 x Z_2"), 0, DEFAULT_CAP).unwrap().to_string(), "Z");
        assert_eq!(bar_homology(&g("Z_2 x Z_2"), 2, DEFAULT_CAP).unwrap().to_string(), "Z_2");
        assert_eq!(bar_homology(&g("Z"), 1, DEFAULT_CAP), Err(Error::InfiniteGroup));
    }

    #[test]
    fn models_agree() {
        let grp = g("Z_2 x Z_4~");
        for n in 0..4 {
            let whole = BarComplex::new(&grp, BarModel::Whole).unwrap().presentation(n).group();
            let fw = BarComplex::new(&grp, BarModel::Factorwise).unwrap().presentation(n).group();
            assert_eq!(whole, fw, "degree {n}");
        }
    }

    #[test]
    fn cell_counts() {
        let c = BarComplex::new(&g("Z_3 x Z_3"), BarModel::Factorwise).unwrap();
        assert_eq!(c.count(9), 10 * 512);
        assert_eq!(c.cells(3).len() as u128, c.count(3));
        let c = BarComplex::new(&g("Z_4"), BarModel::Whole).unwrap();
        assert_eq!(c.count(9), 19683);
        assert_eq!(c.cells(4).len(), 81);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            bar_homology(&g("Z_5 x Z_5"), 12, 1000),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(select_model(&g("Z_3 x Z_3"), 9, DEFAULT_CAP).unwrap(), BarModel::Factorwise);
        assert_eq!(select_model(&g("Z_4"), 9, DEFAULT_CAP).unwrap(), BarModel::Whole);
    }

    #[test]
    fn profile_of_z3_degree_three() {
        let grp = g("Z_3");
        let expected: Profile = [
            ((ClassOrder::Finite(1.into()), ClassOrder::Finite(1.into())), 1),
            ((ClassOrder::Finite(3.into()), ClassOrder::Finite(1.into())), 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(chi_profile(ProfileSource::Small, &grp, 3, DEFAULT_CAP).unwrap(), expected);
        assert_eq!(chi_profile(ProfileSource::Bar, &grp, 3, DEFAULT_CAP).unwrap(), expected);
        let trivial = chi_profile(ProfileSource::Small, &GroupSpec::trivial(), 2, DEFAULT_CAP).unwrap();
        assert_eq!(trivial.values().sum::<usize>(), 1);
    }
}
