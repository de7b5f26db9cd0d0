//! Homology of a three-term segment `C_{n+1} -> C_n -> C_{n-1}` of a based
//! chain complex of free abelian groups.
//!
//! The computation first cancels pairs of cells joined by a unit coefficient
//! (a chain homotopy equivalence, recorded so cycles can be projected and
//! generators lifted back), then splits what is left into connected
//! components and runs a dense Smith normal form on each. Component results
//! are merged into invariant-factor form `Z^r + Z_{d_1} + ... + Z_{d_t}` with
//! `d_i | d_{i+1}`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::snf::Smith;

pub(crate) type SparseVec = Vec<(usize, BigInt)>;

/// Boundary data of the segment, cells identified by index within a degree.
pub(crate) struct Segment {
    pub lower: usize,
    pub cells: usize,
    /// Boundary of each degree-`n` cell, over degree-`n-1` cells.
    pub boundary: Vec<SparseVec>,
    /// Boundary of each degree-`n+1` cell, over degree-`n` cells.
    pub upper: Vec<SparseVec>,
}

/// `x -= (x_b / unit) * column`, for a cancelled pair whose degree-`n` cell is `b`.
#[derive(Debug, Clone)]
struct Cancel {
    b: usize,
    unit: BigInt,
    column: SparseVec,
}

/// Lifting step for a degree-`n` cell `a` cancelled against a lower cell:
/// `y -= (sum_c y_c * mu_c) * a`.
#[derive(Debug, Clone)]
struct Lift {
    a: usize,
    mu: SparseVec,
}

#[derive(Debug, Clone)]
struct Block {
    cells: Vec<usize>,
    /// Rows map a local cycle vector to the block's raw homology coordinates.
    coords: IntMatrix,
}

/// 2x2 unimodular change merging `Z_a + Z_b` into `Z_gcd + Z_lcm`.
#[derive(Debug, Clone)]
struct MergeOp {
    i: usize,
    j: usize,
    s: BigInt,
    t: BigInt,
    a_g: BigInt,
    b_g: BigInt,
}

#[derive(Debug, Clone, Copy)]
enum Role {
    Free(usize),
    Torsion(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct SegmentHomology {
    cells: usize,
    cancels: Vec<Cancel>,
    /// Position in `cancels` of the op pivoting on a given cell.
    cancel_at: HashMap<usize, usize>,
    block_of: Vec<Option<(usize, usize)>>,
    blocks: Vec<Block>,
    block_offset: Vec<usize>,
    free_raw: Vec<usize>,
    /// Free or torsion position of each raw summand.
    raw_role: Vec<Role>,
    merge_ops: Vec<MergeOp>,
    /// Positions in `merge_ops` of the ops touching each torsion summand.
    merge_at: Vec<Vec<usize>>,
    torsion_orders: Vec<BigInt>,
    torsion_start: usize,
    divisors: Vec<BigInt>,
    generators: Vec<SparseVec>,
}

impl SegmentHomology {
    pub fn compute(seg: Segment) -> SegmentHomology {
        let cells = seg.cells;
        let mut red = Reduction::new(seg);
        red.run();
        let Reduction {
            down,
            up,
            cancels,
            lifts,
            lower_alive,
            ..
        } = red;

        // Connected components over surviving cells. Node ids: lower cells,
        // then degree-n cells, then upper cells.
        let lower_n = lower_alive.len();
        let up_n = up.len();
        let mut uf = UnionFind::new(lower_n + cells + up_n);
        for (c, col) in down.iter().enumerate() {
            if let Some(col) = col {
                for &r in col.keys() {
                    uf.union(lower_n + c, r);
                }
            }
        }
        for (e, col) in up.iter().enumerate() {
            if let Some(col) = col {
                for &c in col.keys() {
                    uf.union(lower_n + cells + e, lower_n + c);
                }
            }
        }
        let mut comp_index: HashMap<usize, usize> = HashMap::new();
        let mut comp_cells: Vec<Vec<usize>> = Vec::new();
        for (c, col) in down.iter().enumerate() {
            if col.is_none() {
                continue;
            }
            let root = uf.find(lower_n + c);
            let k = *comp_index.entry(root).or_insert_with(|| {
                comp_cells.push(Vec::new());
                comp_cells.len() - 1
            });
            comp_cells[k].push(c);
        }
        let mut comp_lower: Vec<Vec<usize>> = vec![Vec::new(); comp_cells.len()];
        for r in 0..lower_n {
            if lower_alive[r] {
                if let Some(&k) = comp_index.get(&uf.find(r)) {
                    comp_lower[k].push(r);
                }
            }
        }
        let mut comp_upper: Vec<Vec<usize>> = vec![Vec::new(); comp_cells.len()];
        for (e, col) in up.iter().enumerate() {
            if col.as_ref().is_some_and(|c| !c.is_empty()) {
                if let Some(&k) = comp_index.get(&uf.find(lower_n + cells + e)) {
                    comp_upper[k].push(e);
                }
            }
        }

        let mut block_of = vec![None; cells];
        let mut blocks = Vec::new();
        let mut block_offset = Vec::new();
        let mut raw_orders: Vec<BigInt> = Vec::new();
        let mut raw_gens: Vec<SparseVec> = Vec::new();
        for k in 0..comp_cells.len() {
            let local_cells = &comp_cells[k];
            let local_of: HashMap<usize, usize> = local_cells
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, i))
                .collect();
            let lower_of: HashMap<usize, usize> = comp_lower[k]
                .iter()
                .enumerate()
                .map(|(i, &r)| (r, i))
                .collect();
            let mut a = IntMatrix::zeros(comp_lower[k].len(), local_cells.len());
            for (j, &c) in local_cells.iter().enumerate() {
                for (r, v) in down[c].as_ref().expect("alive") {
                    a[(lower_of[r], j)] = v.clone();
                }
            }
            let mut b = IntMatrix::zeros(local_cells.len(), comp_upper[k].len());
            for (j, &e) in comp_upper[k].iter().enumerate() {
                for (c, v) in up[e].as_ref().expect("alive") {
                    b[(local_of[c], j)] = v.clone();
                }
            }
            let (coords, gens, orders) = block_homology(&a, &b);
            block_offset.push(raw_orders.len());
            for (i, &c) in local_cells.iter().enumerate() {
                block_of[c] = Some((blocks.len(), i));
            }
            for (g, o) in gens.into_iter().zip(orders) {
                let lifted: SparseVec = g
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (local_cells[i], v))
                    .collect();
                raw_gens.push(lifted);
                raw_orders.push(o);
            }
            blocks.push(Block {
                cells: local_cells.clone(),
                coords,
            });
        }

        // Merge raw cyclic summands into invariant-factor form.
        let free_raw: Vec<usize> = (0..raw_orders.len())
            .filter(|&i| raw_orders[i].is_zero())
            .collect();
        let torsion_raw: Vec<usize> = (0..raw_orders.len())
            .filter(|&i| !raw_orders[i].is_zero())
            .collect();
        let mut orders: Vec<BigInt> = torsion_raw.iter().map(|&i| raw_orders[i].clone()).collect();
        let mut tors_gens: Vec<SparseVec> = torsion_raw.iter().map(|&i| raw_gens[i].clone()).collect();
        let mut merge_ops = Vec::new();
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                if orders[j].is_multiple_of(&orders[i]) {
                    continue;
                }
                let a = orders[i].clone();
                let b = orders[j].clone();
                let ext = a.extended_gcd(&b);
                let g = ext.gcd;
                let op = MergeOp {
                    i,
                    j,
                    s: ext.x,
                    t: ext.y,
                    a_g: &a / &g,
                    b_g: &b / &g,
                };
                let gi = combine(&tors_gens[i], &op.a_g, &tors_gens[j], &op.b_g);
                let gj = combine(&tors_gens[i], &(-&op.t), &tors_gens[j], &op.s);
                tors_gens[i] = gi;
                tors_gens[j] = gj;
                orders[j] = &a / &g * &b;
                orders[i] = g;
                merge_ops.push(op);
            }
        }
        let torsion_start = orders.iter().take_while(|o| o.is_one()).count();
        let divisors = orders[torsion_start..].to_vec();

        let mut generators: Vec<SparseVec> = free_raw.iter().map(|&i| raw_gens[i].clone()).collect();
        generators.extend(tors_gens.into_iter().skip(torsion_start));
        let generators = generators
            .into_iter()
            .map(|g| lift(&lifts, g))
            .collect();

        let mut raw_role = vec![Role::Free(0); raw_orders.len()];
        for (k, &i) in free_raw.iter().enumerate() {
            raw_role[i] = Role::Free(k);
        }
        for (k, &i) in torsion_raw.iter().enumerate() {
            raw_role[i] = Role::Torsion(k);
        }
        let mut merge_at = vec![Vec::new(); orders.len()];
        for (k, op) in merge_ops.iter().enumerate() {
            merge_at[op.i].push(k);
            merge_at[op.j].push(k);
        }
        let cancel_at = cancels.iter().enumerate().map(|(k, op)| (op.b, k)).collect();
        SegmentHomology {
            cells,
            cancels,
            cancel_at,
            block_of,
            blocks,
            block_offset,
            free_raw,
            raw_role,
            merge_ops,
            merge_at,
            torsion_orders: orders,
            torsion_start,
            divisors,
            generators,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_raw.len()
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Representative cycles: free generators first, then torsion generators
    /// in divisor order.
    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    /// Coordinates `(free, torsion)` of the class of cycle `x`. Torsion
    /// coordinates are reduced into `[0, d_i)`. `x` must be a cycle.
    pub fn coordinates(&self, x: &SparseVec) -> (Vec<BigInt>, Vec<BigInt>) {
        let (f, t) = self.sparse_coordinates(x);
        let mut free = vec![BigInt::zero(); self.free_raw.len()];
        let mut torsion = vec![BigInt::zero(); self.divisors.len()];
        for (k, v) in f {
            free[k] = v;
        }
        for (k, v) in t {
            torsion[k] = v;
        }
        (free, torsion)
    }

    /// Whether cycle `x` is a boundary.
    pub fn is_boundary(&self, x: &SparseVec) -> bool {
        let (f, t) = self.sparse_coordinates(x);
        f.is_empty() && t.is_empty()
    }

    /// Nonzero entries of [`Self::coordinates`]. Work is proportional to
    /// the cells and summands actually touched.
    pub fn sparse_coordinates(&self, x: &SparseVec) -> (Vec<(usize, BigInt)>, Vec<(usize, BigInt)>) {
        let mut v: HashMap<usize, BigInt> = HashMap::with_capacity(x.len());
        for (i, c) in x {
            assert!(*i < self.cells, "cell index out of range");
            if !c.is_zero() {
                *v.entry(*i).or_default() += c;
            }
        }
        // Same result as running every cancellation in order, visiting only
        // the ones whose pivot is touched.
        let mut pending: BinaryHeap<Reverse<usize>> =
            v.keys().filter_map(|c| self.cancel_at.get(c)).map(|&k| Reverse(k)).collect();
        let mut last = None;
        while let Some(Reverse(k)) = pending.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let op = &self.cancels[k];
            let Some(xb) = v.get(&op.b).cloned() else {
                continue;
            };
            if xb.is_zero() {
                continue;
            }
            let f = &xb / &op.unit;
            for (c, w) in &op.column {
                let e = v.entry(*c).or_default();
                *e -= &f * w;
                if let Some(&later) = self.cancel_at.get(c) {
                    if later > k {
                        pending.push(Reverse(later));
                    }
                }
            }
        }

        let mut per_block: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
        for (c, val) in v {
            if val.is_zero() {
                continue;
            }
            if let Some((blk, local)) = self.block_of[c] {
                let vec = per_block
                    .entry(blk)
                    .or_insert_with(|| vec![BigInt::zero(); self.blocks[blk].cells.len()]);
                vec[local] += val;
            }
        }
        let mut free = Vec::new();
        let mut tors: HashMap<usize, BigInt> = HashMap::new();
        for (blk, local) in per_block {
            let y = self.blocks[blk].coords.apply(&local);
            for (k, val) in y.into_iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                match self.raw_role[self.block_offset[blk] + k] {
                    Role::Free(i) => free.push((i, val)),
                    Role::Torsion(i) => {
                        tors.insert(i, val);
                    }
                }
            }
        }
        free.sort_unstable_by_key(|(i, _)| *i);

        let mut pending: BinaryHeap<Reverse<usize>> = tors
            .keys()
            .flat_map(|i| self.merge_at[*i].iter().map(|&k| Reverse(k)))
            .collect();
        let mut last = None;
        while let Some(Reverse(k)) = pending.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let op = &self.merge_ops[k];
            let zero = BigInt::zero();
            let xi = tors.get(&op.i).unwrap_or(&zero);
            let xj = tors.get(&op.j).unwrap_or(&zero);
            if xi.is_zero() && xj.is_zero() {
                continue;
            }
            let yi = &op.s * xi + &op.t * xj;
            let yj = &op.a_g * xj - &op.b_g * xi;
            tors.insert(op.i, yi);
            tors.insert(op.j, yj);
            for idx in [op.i, op.j] {
                pending.extend(self.merge_at[idx].iter().filter(|&&m| m > k).map(|&m| Reverse(m)));
            }
        }
        let mut torsion: Vec<(usize, BigInt)> = tors
            .into_iter()
            .filter(|(i, _)| *i >= self.torsion_start)
            .map(|(i, x)| (i - self.torsion_start, x.mod_floor(&self.torsion_orders[i])))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        torsion.sort_unstable_by_key(|(i, _)| *i);
        (free, torsion)
    }
}

fn combine(x: &SparseVec, a: &BigInt, y: &SparseVec, b: &BigInt) -> SparseVec {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (i, v) in x {
        *acc.entry(*i).or_default() += a * v;
    }
    for (i, v) in y {
        *acc.entry(*i).or_default() += b * v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn lift(lifts: &[Lift], g: SparseVec) -> SparseVec {
    if lifts.is_empty() {
        return g;
    }
    let mut y: HashMap<usize, BigInt> = g.into_iter().collect();
    for op in lifts.iter().rev() {
        let mut kappa = BigInt::zero();
        for (c, mu) in &op.mu {
            if let Some(yc) = y.get(c) {
                kappa += yc * mu;
            }
        }
        if !kappa.is_zero() {
            *y.entry(op.a).or_default() -= kappa;
        }
    }
    let mut out: SparseVec = y.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Homology of one component. Returns the coordinate map (rows = kept
/// summands), generator vectors over local cells, and summand orders
/// (0 = free).
fn block_homology(a: &IntMatrix, b: &IntMatrix) -> (IntMatrix, Vec<Vec<BigInt>>, Vec<BigInt>) {
    let cells = a.cols();
    let sa = Smith::compute(a, false, true);
    let v = sa.right.expect("tracked");
    let v_inv = sa.right_inv.expect("tracked");
    let rho = sa.rank;
    let k = cells - rho;
    // Kernel basis: columns rho.. of V; kernel coordinates: rows rho.. of V^-1.
    let mut proj = IntMatrix::zeros(k, cells);
    for i in 0..k {
        for j in 0..cells {
            proj[(i, j)] = v_inv[(rho + i, j)].clone();
        }
    }
    let rel = &proj * b;
    let sb = Smith::compute(&rel, true, false);
    let u = sb.left.expect("tracked");
    let u_inv = sb.left_inv.expect("tracked");
    let coord_full = &u * &proj;

    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for i in 0..k {
        let order = if i < sb.rank {
            sb.diagonal[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if !order.is_one() {
            kept.push(i);
            orders.push(order);
        }
    }
    let mut coords = IntMatrix::zeros(kept.len(), cells);
    let mut gens = Vec::with_capacity(kept.len());
    for (r, &i) in kept.iter().enumerate() {
        for j in 0..cells {
            coords[(r, j)] = coord_full[(i, j)].clone();
        }
        // generator = K * (column i of U^-1)
        let mut g = vec![BigInt::zero(); cells];
        for m in 0..k {
            let w = &u_inv[(m, i)];
            if w.is_zero() {
                continue;
            }
            for (j, gj) in g.iter_mut().enumerate() {
                let kv = &v[(j, rho + m)];
                if !kv.is_zero() {
                    *gj += w * kv;
                }
            }
        }
        gens.push(g);
    }
    (coords, gens, orders)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // smaller root wins so component ids follow cell order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Unit-pivot cancellation of cell pairs.
struct Reduction {
    down: Vec<Option<BTreeMap<usize, BigInt>>>,
    down_rows: Vec<BTreeSet<usize>>,
    lower_alive: Vec<bool>,
    up: Vec<Option<BTreeMap<usize, BigInt>>>,
    up_rows: Vec<BTreeSet<usize>>,
    cancels: Vec<Cancel>,
    lifts: Vec<Lift>,
}

impl Reduction {
    fn new(seg: Segment) -> Self {
        let mut down_rows = vec![BTreeSet::new(); seg.lower];
        let down: Vec<Option<BTreeMap<usize, BigInt>>> = seg
            .boundary
            .into_iter()
            .enumerate()
            .map(|(c, col)| {
                let m: BTreeMap<usize, BigInt> = col.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                for &r in m.keys() {
                    down_rows[r].insert(c);
                }
                Some(m)
            })
            .collect();
        assert_eq!(down.len(), seg.cells);
        let mut up_rows = vec![BTreeSet::new(); seg.cells];
        let up = seg
            .upper
            .into_iter()
            .enumerate()
            .map(|(e, col)| {
                let m: BTreeMap<usize, BigInt> = col.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                for &c in m.keys() {
                    up_rows[c].insert(e);
                }
                Some(m)
            })
            .collect();
        Reduction {
            down,
            down_rows,
            lower_alive: vec![true; seg.lower],
            up,
            up_rows,
            cancels: Vec::new(),
            lifts: Vec::new(),
        }
    }

    fn run(&mut self) {
        // Shortest columns first keeps fill-in low. Lower cancellations go
        // first: they shrink the kernel computation.
        let mut pending: BinaryHeap<Reverse<(usize, usize)>> = self
            .down
            .iter()
            .enumerate()
            .filter_map(|(c, col)| col.as_ref().map(|col| Reverse((col.len(), c))))
            .collect();
        while let Some(Reverse((len, c))) = pending.pop() {
            let Some(col) = self.down[c].as_ref() else {
                continue;
            };
            if col.len() != len {
                continue;
            }
            let pivot = col
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(r, _)| (self.down_rows[**r].len(), **r))
                .map(|(r, v)| (*r, v.clone()));
            if let Some((b, unit)) = pivot {
                for t in self.cancel_lower(c, b, unit) {
                    if let Some(col) = self.down[t].as_ref() {
                        pending.push(Reverse((col.len(), t)));
                    }
                }
            }
        }
        let mut pending: BinaryHeap<Reverse<(usize, usize)>> = self
            .up
            .iter()
            .enumerate()
            .filter_map(|(e, col)| col.as_ref().map(|col| Reverse((col.len(), e))))
            .collect();
        while let Some(Reverse((len, e))) = pending.pop() {
            let Some(col) = self.up[e].as_ref() else {
                continue;
            };
            if col.len() != len {
                continue;
            }
            let pivot = col
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(c, _)| (self.up_rows[**c].len(), **c))
                .map(|(c, v)| (*c, v.clone()));
            if let Some((b, unit)) = pivot {
                for t in self.cancel_upper(e, b, unit) {
                    if let Some(col) = self.up[t].as_ref() {
                        pending.push(Reverse((col.len(), t)));
                    }
                }
            }
        }
    }

    /// Cancels degree-`n` cell `a` against lower cell `b`.
    fn cancel_lower(&mut self, a: usize, b: usize, unit: BigInt) -> Vec<usize> {
        let col_a = self.down[a].take().expect("alive");
        for r in col_a.keys() {
            self.down_rows[*r].remove(&a);
        }
        let others: Vec<usize> = self.down_rows[b].iter().copied().collect();
        let mut mu = Vec::with_capacity(others.len());
        for &c in &others {
            let col = self.down[c].as_mut().expect("alive");
            let f = &col[&b] / &unit;
            for (r, v) in &col_a {
                let e = col.entry(*r).or_default();
                *e -= &f * v;
                if e.is_zero() {
                    col.remove(r);
                    self.down_rows[*r].remove(&c);
                } else {
                    self.down_rows[*r].insert(c);
                }
            }
            mu.push((c, f));
        }
        debug_assert!(self.down_rows[b].is_empty());
        self.lower_alive[b] = false;
        let ups: Vec<usize> = std::mem::take(&mut self.up_rows[a]).into_iter().collect();
        for e in ups {
            if let Some(col) = self.up[e].as_mut() {
                col.remove(&a);
            }
        }
        self.lifts.push(Lift { a, mu });
        others
    }

    /// Cancels upper cell `a` against degree-`n` cell `b`.
    fn cancel_upper(&mut self, a: usize, b: usize, unit: BigInt) -> Vec<usize> {
        let col_a = self.up[a].take().expect("alive");
        for c in col_a.keys() {
            self.up_rows[*c].remove(&a);
        }
        let others: Vec<usize> = self.up_rows[b].iter().copied().collect();
        for &e in &others {
            let col = self.up[e].as_mut().expect("alive");
            let f = &col[&b] / &unit;
            for (c, v) in &col_a {
                let x = col.entry(*c).or_default();
                *x -= &f * v;
                if x.is_zero() {
                    col.remove(c);
                    self.up_rows[*c].remove(&e);
                } else {
                    self.up_rows[*c].insert(e);
                }
            }
        }
        debug_assert!(self.up_rows[b].is_empty());
        if let Some(col_b) = self.down[b].take() {
            for r in col_b.keys() {
                self.down_rows[*r].remove(&b);
            }
        }
        self.cancels.push(Cancel {
            b,
            unit,
            column: col_a.into_iter().collect(),
        });
        others
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn single_cell_cycle_with_torsion() {
        // Z[4] --3--> Z[3] --0--> Z[2]: H_3 = Z_3.
        let seg = Segment {
            lower: 1,
            cells: 1,
            boundary: vec![vec![]],
            upper: vec![vec![(0, bi(3))]],
        };
        let h = SegmentHomology::compute(seg);
        assert_eq!(h.free_rank(), 0);
        assert_eq!(h.divisors(), &[bi(3)]);
        assert_eq!(h.coordinates(&vec![(0, bi(5))]).1, vec![bi(2)]);
    }

    #[test]
    fn coprime_summands_merge() {
        // Two disconnected cells with torsion 2 and 3 give Z_6.
        let seg = Segment {
            lower: 0,
            cells: 2,
            boundary: vec![vec![], vec![]],
            upper: vec![vec![(0, bi(2))], vec![(1, bi(3))]],
        };
        let h = SegmentHomology::compute(seg);
        assert_eq!(h.divisors(), &[bi(6)]);
        let g = &h.generators()[0];
        assert_eq!(h.coordinates(g).1, vec![bi(1)]);
        assert_eq!(h.coordinates(&vec![(0, bi(1))]).1[0].clone() * 3 % 6, bi(3));
    }

    #[test]
    fn unit_cancellation_preserves_homology() {
        // Cells x, y in degree n with dx = 0, dy = 0; upper cells e1 = x + y,
        // e2 = 2y. Then H_n = Z^2 / <(1,1),(0,2)> = Z_2.
        let seg = Segment {
            lower: 0,
            cells: 2,
            boundary: vec![vec![], vec![]],
            upper: vec![vec![(0, bi(1)), (1, bi(1))], vec![(1, bi(2))]],
        };
        let h = SegmentHomology::compute(seg);
        assert_eq!(h.free_rank(), 0);
        assert_eq!(h.divisors(), &[bi(2)]);
        assert_eq!(h.coordinates(&vec![(0, bi(1))]).1, vec![bi(1)]);
        assert_eq!(h.coordinates(&vec![(1, bi(1))]).1, vec![bi(1)]);
        assert_eq!(h.coordinates(&vec![(0, bi(1)), (1, bi(1))]).1, vec![bi(0)]);
    }

    #[test]
    fn lower_cancellation_lifts_generators() {
        // Lower cell r; degree-n cells a, c with da = r, dc = r. Kernel is
        // spanned by c - a, which must come back as an honest cycle.
        let seg = Segment {
            lower: 1,
            cells: 2,
            boundary: vec![vec![(0, bi(1))], vec![(0, bi(1))]],
            upper: vec![],
        };
        let h = SegmentHomology::compute(seg);
        assert_eq!(h.free_rank(), 1);
        let g = &h.generators()[0];
        let boundary: BigInt = g.iter().map(|(_, v)| v.clone()).sum();
        assert!(boundary.is_zero());
        assert_eq!(h.coordinates(g).0[0].abs(), bi(1));
    }
}
