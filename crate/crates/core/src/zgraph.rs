//! The Zolotarev graph `Z(n, L)`: the functional graph `a -> n a mod L` on
//! `Z/LZ`, for arbitrary positive `n` and `L`.
//!
//! Every node has outdegree 1, so each connected component contains exactly
//! one cycle; nodes split into leaves (indegree 0), roots (on a cycle) and
//! branches (neither). The cycle census `b_j` (number of cycles of length
//! `j`) is computable three independent ways: by direct traversal, by the
//! Moebius formula `b_j = (1/j) sum_{d|j} mu(j/d) gcd(n^d - 1, L)`, and -
//! for coprime `n`, `L` - by counting residues with a prescribed
//! multiplicative order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{
    divisors, gcd, gcd_pow_minus_one_table, mobius, mod_inverse, mult_order, simplified_level,
    SimplifiedLevel,
};

/// Classification of a node of `Z(n, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeClass {
    Leaf,
    Root,
    Branch,
}

/// A fully analyzed Zolotarev graph.
#[derive(Debug, Clone)]
pub struct ZolotarevGraph {
    n: u64,
    level: u64,
    simplified: SimplifiedLevel,
    succ: Vec<usize>,
    preds: Vec<Vec<u32>>,
    indegree: Vec<u32>,
    class: Vec<NodeClass>,
    on_cycle: Vec<bool>,
    /// Cycles sorted by minimum residue; each starts at its minimum and
    /// follows the successor map.
    cycles: Vec<Vec<u64>>,
    /// Component id per node; component `i` is the one containing cycle `i`.
    component: Vec<usize>,
    /// Distance from each node to the first root on its forward path.
    height: Vec<u32>,
    /// That first root (the root whose tree the node belongs to).
    tree_root: Vec<usize>,
}

/// Construct `Z(n, L)` directly from the map `a -> n a mod L`.
pub fn build(n: u64, level: u64) -> ZolotarevGraph {
    assert!(level >= 1, "build: L must be positive");
    assert!(n >= 1, "build: n must be positive");
    let reduced = n % level;
    let succ: Vec<usize> = (0..level)
        .map(|a| ((reduced as u128 * a as u128) % level as u128) as usize)
        .collect();
    from_succ(n, level, succ)
}

/// Construct `Z(n, L)` by the three-step lift: run the quotient recursion
/// down to `L_n`, build the base permutation graph, then repeatedly scale
/// the nodes by `gcd(n, x_j)` and attach leaves through the predecessor
/// congruence. Produces a successor map node-for-node identical to
/// [`build`].
pub fn build_algorithm_z(n: u64, level: u64) -> ZolotarevGraph {
    assert!(level >= 1 && n >= 1);
    // Step 1: the quotient sequence L = x_0, x_1, ..., x_h = L_n.
    let mut seq = vec![level];
    loop {
        let x = *seq.last().expect("nonempty");
        let g = gcd(x, n);
        if g == 1 {
            break;
        }
        seq.push(x / g);
    }
    // Step 2: the base permutation Z(n, L_n).
    let base = *seq.last().expect("nonempty");
    let mut succ: Vec<usize> = (0..base)
        .map(|a| ((n % base) as u128 * a as u128 % base as u128) as usize)
        .collect();
    // Step 3: lift one quotient level at a time.
    for idx in (0..seq.len() - 1).rev() {
        let big = seq[idx];
        let small = seq[idx + 1];
        let g = gcd(n, big);
        debug_assert_eq!(big / g, small);
        let mut next = vec![usize::MAX; big as usize];
        // Non-leaf nodes are the old nodes scaled by g.
        for (w, &sw) in succ.iter().enumerate() {
            next[(g as usize) * w] = (g as usize) * sw;
        }
        // Each non-leaf k has g predecessors, all congruent mod big/g; the
        // ones that are not multiples of g are the new leaves.
        let inv = mod_inverse((n / g) % small, small).expect("n/g is a unit mod big/g");
        for kq in 0..small {
            let c0 = (inv as u128 * kq as u128 % small as u128) as u64;
            for t in 0..g {
                let pred = (c0 + t * small) as usize;
                if pred as u64 % g != 0 {
                    next[pred] = (g * kq) as usize;
                } else {
                    debug_assert_eq!(next[pred], (g * kq) as usize);
                }
            }
        }
        debug_assert!(next.iter().all(|&t| t != usize::MAX));
        succ = next;
    }
    from_succ(n, level, succ)
}

fn from_succ(n: u64, level: u64, succ: Vec<usize>) -> ZolotarevGraph {
    let l = level as usize;
    let mut indegree = vec![0u32; l];
    for &t in &succ {
        indegree[t] += 1;
    }
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); l];
    for (v, &t) in succ.iter().enumerate() {
        preds[t].push(v as u32);
    }

    // Cycle detection by path coloring: 0 unvisited, 1 on the current path,
    // 2 finished.
    let mut color = vec![0u8; l];
    let mut on_cycle = vec![false; l];
    let mut cycles: Vec<Vec<u64>> = Vec::new();
    for start in 0..l {
        if color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        while color[v] == 0 {
            color[v] = 1;
            path.push(v);
            v = succ[v];
        }
        if color[v] == 1 {
            let pos = path.iter().position(|&x| x == v).expect("on current path");
            let mut cyc: Vec<u64> = path[pos..].iter().map(|&x| x as u64).collect();
            for &x in &path[pos..] {
                on_cycle[x] = true;
            }
            let min_pos = cyc
                .iter()
                .enumerate()
                .min_by_key(|&(_, &x)| x)
                .expect("nonempty cycle")
                .0;
            cyc.rotate_left(min_pos);
            cycles.push(cyc);
        }
        for &x in &path {
            color[x] = 2;
        }
    }
    cycles.sort_by_key(|c| c[0]);

    // Component, height, and owning root, resolved by forward walks.
    let mut component = vec![usize::MAX; l];
    let mut height = vec![0u32; l];
    let mut tree_root = vec![usize::MAX; l];
    for (ci, cyc) in cycles.iter().enumerate() {
        for &x in cyc {
            component[x as usize] = ci;
            tree_root[x as usize] = x as usize;
        }
    }
    let mut stack = Vec::new();
    for v in 0..l {
        if component[v] != usize::MAX {
            continue;
        }
        stack.clear();
        let mut u = v;
        while component[u] == usize::MAX {
            stack.push(u);
            u = succ[u];
        }
        let comp = component[u];
        while let Some(w) = stack.pop() {
            component[w] = comp;
            height[w] = height[succ[w]] + 1;
            tree_root[w] = if on_cycle[succ[w]] {
                succ[w]
            } else {
                tree_root[succ[w]]
            };
        }
    }

    let class: Vec<NodeClass> = (0..l)
        .map(|v| {
            if on_cycle[v] {
                NodeClass::Root
            } else if indegree[v] == 0 {
                NodeClass::Leaf
            } else {
                NodeClass::Branch
            }
        })
        .collect();

    let g = gcd(n, level);
    debug_assert!(indegree
        .iter()
        .all(|&d| d == 0 || d as u64 == g), "non-leaf indegree must equal gcd(n, L)");

    ZolotarevGraph {
        n,
        level,
        simplified: simplified_level(level, n),
        succ,
        preds,
        indegree,
        class,
        on_cycle,
        cycles,
        component,
        height,
        tree_root,
    }
}

/// Arithmetic node classification from the structure theorem: leaf iff
/// `gcd(n, L)` does not divide `m`; root iff `L / L_n` divides `m`; branch
/// otherwise. Agrees with the graph-derived classes for every `n`, `L`.
pub fn classify_arith(n: u64, level: u64, m: u64) -> NodeClass {
    assert!(level >= 1 && n >= 1);
    let m = m % level;
    let g = gcd(n, level);
    let ln = simplified_level(level, n).value;
    let ratio = level / ln;
    if g > 1 && m % g != 0 {
        NodeClass::Leaf
    } else if m % ratio == 0 {
        NodeClass::Root
    } else {
        NodeClass::Branch
    }
}

impl ZolotarevGraph {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// The simplified level `L_n` with its recursion depth.
    pub fn simplified(&self) -> SimplifiedLevel {
        self.simplified
    }

    pub fn succ(&self) -> &[usize] {
        &self.succ
    }

    pub fn successor(&self, m: u64) -> u64 {
        self.succ[(m % self.level) as usize] as u64
    }

    pub fn indegree(&self, m: u64) -> u32 {
        self.indegree[(m % self.level) as usize]
    }

    pub fn predecessors(&self, m: u64) -> &[u32] {
        &self.preds[(m % self.level) as usize]
    }

    pub fn node_class(&self, m: u64) -> NodeClass {
        self.class[(m % self.level) as usize]
    }

    pub fn is_root(&self, m: u64) -> bool {
        self.on_cycle[(m % self.level) as usize]
    }

    /// Cycles sorted by their minimum residue.
    pub fn cycles(&self) -> &[Vec<u64>] {
        &self.cycles
    }

    pub fn component_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn component_of(&self, m: u64) -> usize {
        self.component[(m % self.level) as usize]
    }

    /// All roots, ascending.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.level).filter(|&m| self.is_root(m)).collect()
    }

    /// All leaves, ascending.
    pub fn leaves(&self) -> Vec<u64> {
        (0..self.level)
            .filter(|&m| self.class[m as usize] == NodeClass::Leaf)
            .collect()
    }

    /// Graph-derived tallies, cross-checked against the closed forms
    /// `roots = L_n`, `leaves = L (g-1)/g`, `branches = L/g - L_n`.
    pub fn counts(&self) -> (u64, u64, u64) {
        let mut tally = [0u64; 3];
        for c in &self.class {
            match c {
                NodeClass::Root => tally[0] += 1,
                NodeClass::Leaf => tally[1] += 1,
                NodeClass::Branch => tally[2] += 1,
            }
        }
        let g = gcd(self.n, self.level);
        let ln = self.simplified.value;
        let expected = (ln, self.level / g * (g - 1), self.level / g - ln);
        assert_eq!(
            (tally[0], tally[1], tally[2]),
            expected,
            "count formulas disagree with the graph"
        );
        expected
    }

    /// Smallest `k >= 0` with `n^k a = b mod L`, or None when `b` is not on
    /// the forward path of `a`.
    pub fn distance(&self, a: u64, b: u64) -> Option<u64> {
        let b = (b % self.level) as usize;
        let mut cur = (a % self.level) as usize;
        for k in 0..self.level {
            if cur == b {
                return Some(k);
            }
            cur = self.succ[cur];
        }
        None
    }

    /// Height of a node: its distance to the nearest root (0 for roots).
    pub fn height(&self, m: u64) -> u64 {
        self.height[(m % self.level) as usize] as u64
    }

    /// Height of the graph, which always equals the height of node 1.
    pub fn graph_height(&self) -> u64 {
        self.height(1)
    }

    /// The root whose tree contains `m` (the first root on the forward
    /// path; `m` itself when `m` is a root).
    pub fn owning_root(&self, m: u64) -> u64 {
        self.tree_root[(m % self.level) as usize] as u64
    }

    /// Per-node summary.
    pub fn node_report(&self, m: u64) -> NodeReport {
        let m = m % self.level;
        NodeReport {
            node: m,
            class: self.node_class(m),
            height: self.height(m),
            tree_root: self.owning_root(m),
            cycle_length: self.cycles[self.component_of(m)].len() as u64,
        }
    }

    /// The tree above root `r`: every node whose path to `r` contains no
    /// other root, including `r`. Ascending order.
    pub fn tree_of(&self, r: u64) -> Result<Vec<u64>> {
        let r = r % self.level;
        if !self.is_root(r) {
            return Err(Error::NotARoot { node: r });
        }
        Ok((0..self.level)
            .filter(|&m| self.tree_root[m as usize] as u64 == r)
            .collect())
    }

    /// Children of a tree node: predecessors that are not roots.
    fn tree_children(&self, x: usize) -> Vec<usize> {
        self.preds[x]
            .iter()
            .map(|&p| p as usize)
            .filter(|&p| !self.on_cycle[p])
            .collect()
    }

    /// Canonical encoding of the rooted tree above `x` (children sorted by
    /// their own encodings).
    fn tree_encoding(&self, x: usize) -> String {
        let mut child_codes: Vec<String> = self
            .tree_children(x)
            .into_iter()
            .map(|c| self.tree_encoding(c))
            .collect();
        child_codes.sort();
        let mut out = String::with_capacity(2 + child_codes.iter().map(String::len).sum::<usize>());
        out.push('(');
        for c in child_codes {
            out.push_str(&c);
        }
        out.push(')');
        out
    }

    /// Decide whether the trees above two roots are isomorphic (they always
    /// are) and produce an adjacency-preserving bijection as a certificate.
    pub fn trees_isomorphic(&self, r1: u64, r2: u64) -> Result<TreeIsomorphism> {
        let r1 = (r1 % self.level) as usize;
        let r2 = (r2 % self.level) as usize;
        for r in [r1, r2] {
            if !self.on_cycle[r] {
                return Err(Error::NotARoot { node: r as u64 });
            }
        }
        if self.tree_encoding(r1) != self.tree_encoding(r2) {
            return Ok(TreeIsomorphism {
                isomorphic: false,
                witness: Vec::new(),
            });
        }
        let mut witness = Vec::new();
        self.pair_trees(r1, r2, &mut witness);
        // Certificate check: the bijection preserves adjacency.
        let map: BTreeMap<u64, u64> = witness.iter().copied().collect();
        for &(a, b) in &witness {
            if a as usize != r1 {
                debug_assert_eq!(map[&(self.succ[a as usize] as u64)], self.succ[b as usize] as u64);
            }
        }
        Ok(TreeIsomorphism {
            isomorphic: true,
            witness,
        })
    }

    fn pair_trees(&self, x: usize, y: usize, out: &mut Vec<(u64, u64)>) {
        out.push((x as u64, y as u64));
        let sort_key = |c: &usize| (self.tree_encoding(*c), *c);
        let mut cx = self.tree_children(x);
        let mut cy = self.tree_children(y);
        cx.sort_by_key(sort_key);
        cy.sort_by_key(sort_key);
        debug_assert_eq!(cx.len(), cy.len());
        for (a, b) in cx.into_iter().zip(cy) {
            self.pair_trees(a, b, out);
        }
    }

    /// Check that every component with a cycle of length `j` has exactly
    /// `j * L / L_n` nodes.
    pub fn component_size_check(&self) -> bool {
        let mut sizes = vec![0u64; self.cycles.len()];
        for v in 0..self.level as usize {
            sizes[self.component[v]] += 1;
        }
        let ratio = self.level / self.simplified.value;
        sizes
            .iter()
            .zip(&self.cycles)
            .all(|(&size, cyc)| size == cyc.len() as u64 * ratio)
    }

    /// Canonical form of the whole graph: per component, the cycle length
    /// and the lexicographically minimal rotation of the tree encodings
    /// read around the cycle; components sorted.
    pub fn canonical_form(&self) -> Vec<(u64, Vec<String>)> {
        let mut comps: Vec<(u64, Vec<String>)> = self
            .cycles
            .iter()
            .map(|cyc| {
                let encs: Vec<String> = cyc
                    .iter()
                    .map(|&r| self.tree_encoding(r as usize))
                    .collect();
                let j = encs.len();
                let best = (0..j)
                    .map(|s| {
                        let mut rot = encs.clone();
                        rot.rotate_left(s);
                        rot
                    })
                    .min()
                    .expect("nonempty cycle");
                (j as u64, best)
            })
            .collect();
        comps.sort();
        comps
    }

    /// Deterministic DOT rendering: nodes ascending, labeled by residue,
    /// one style per class.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"Z({},{})\" {{\n", self.n, self.level));
        out.push_str("  rankdir=LR;\n");
        for m in 0..self.level {
            let attrs = match self.node_class(m) {
                NodeClass::Root => "shape=doublecircle",
                NodeClass::Branch => "shape=box",
                NodeClass::Leaf => "shape=circle, style=dashed",
            };
            out.push_str(&format!("  {m} [{attrs}];\n"));
        }
        for m in 0..self.level as usize {
            out.push_str(&format!("  {} -> {};\n", m, self.succ[m]));
        }
        out.push_str("}\n");
        out
    }

    /// Machine-readable summary with stable field ordering.
    pub fn report(&self) -> GraphReport {
        let (roots, leaves, branches) = self.counts();
        let census = census_bruteforce(self);
        let ratio = self.level / self.simplified.value;
        GraphReport {
            n: self.n,
            level: self.level,
            simplified_level: self.simplified.value,
            counts: CountsReport {
                roots,
                leaves,
                branches,
            },
            census: census.to_pairs(),
            height: self.graph_height(),
            components: self
                .cycles
                .iter()
                .map(|cyc| ComponentReport {
                    cycle_min: cyc[0],
                    cycle_length: cyc.len() as u64,
                    size: cyc.len() as u64 * ratio,
                })
                .collect(),
        }
    }
}

/// Witness for a rooted-tree isomorphism.
#[derive(Debug, Clone)]
pub struct TreeIsomorphism {
    pub isomorphic: bool,
    /// Node pairs (tree of the first root, tree of the second).
    pub witness: Vec<(u64, u64)>,
}

/// Per-node summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    pub node: u64,
    pub class: NodeClass,
    pub height: u64,
    pub tree_root: u64,
    pub cycle_length: u64,
}

/// The cycle census of a graph: `entries[j] = b_j`, kept only where
/// positive.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleCensus {
    entries: BTreeMap<u64, u64>,
}

impl CycleCensus {
    pub fn from_entries(entries: BTreeMap<u64, u64>) -> Self {
        debug_assert!(entries.values().all(|&b| b > 0));
        CycleCensus { entries }
    }

    /// `b_j`, zero when absent.
    pub fn get(&self, j: u64) -> u64 {
        self.entries.get(&j).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    /// Largest cycle length present.
    pub fn max_length(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Total number of cycles (connected components).
    pub fn cycle_count(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Total number of nodes on cycles: `sum j * b_j` (the root count).
    pub fn root_count(&self) -> u64 {
        self.entries.iter().map(|(j, b)| j * b).sum()
    }

    pub fn to_pairs(&self) -> Vec<CensusEntry> {
        self.entries
            .iter()
            .map(|(&length, &count)| CensusEntry { length, count })
            .collect()
    }
}

/// Census by direct traversal of the graph's cycles (the oracle route).
pub fn census_bruteforce(graph: &ZolotarevGraph) -> CycleCensus {
    let mut entries = BTreeMap::new();
    for cyc in graph.cycles() {
        *entries.entry(cyc.len() as u64).or_insert(0) += 1;
    }
    CycleCensus::from_entries(entries)
}

/// Census by the Moebius formula `b_j = (1/j) sum_{d|j} mu(j/d)
/// gcd(n^d - 1, L)`, valid without any coprimality assumption. A negative
/// or non-integral intermediate is an internal violation and never happens.
pub fn census_formula(n: u64, level: u64) -> Result<CycleCensus> {
    assert!(level >= 1 && n >= 1);
    let table = gcd_pow_minus_one_table(n, level, level as usize);
    let mut entries = BTreeMap::new();
    for j in 1..=level {
        let mut sum: i128 = 0;
        for d in divisors(j) {
            sum += mobius(j / d) as i128 * table[d as usize] as i128;
        }
        if sum < 0 || sum % j as i128 != 0 {
            return Err(Error::InternalFormulaViolation(format!(
                "b_{j} for Z({n},{level}): sum {sum} is not a nonnegative multiple of {j}"
            )));
        }
        let b = (sum / j as i128) as u64;
        if b > 0 {
            entries.insert(j, b);
        }
    }
    Ok(CycleCensus::from_entries(entries))
}

/// Census by multiplicative orders: `b_j = (1/j) |{1 <= m <= L : j =
/// ord_{L/(L,m)}(n)}|`. Requires gcd(n, L) = 1.
pub fn census_order(n: u64, level: u64) -> Result<CycleCensus> {
    assert!(level >= 1 && n >= 1);
    if gcd(n, level) != 1 {
        return Err(Error::CoprimalityRequired { n, level });
    }
    let mut order_of_divisor: BTreeMap<u64, u64> = BTreeMap::new();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for m in 1..=level {
        let d = level / gcd(level, m);
        let ord = *order_of_divisor
            .entry(d)
            .or_insert_with(|| mult_order(n, d).expect("n is a unit mod every divisor"));
        *counts.entry(ord).or_insert(0) += 1;
    }
    let mut entries = BTreeMap::new();
    for (j, c) in counts {
        debug_assert_eq!(c % j, 0, "order class size must be a multiple of j");
        entries.insert(j, c / j);
    }
    Ok(CycleCensus::from_entries(entries))
}

/// Verify that `x -> x / v` is an adjacency-preserving bijection from the
/// multiples-of-`v` subgraph of `Z(n, L)` onto `Z(n, L/v)`.
pub fn subgraph_iso_check(n: u64, level: u64, v: u64) -> bool {
    assert!(v >= 1 && level % v == 0, "v must divide L");
    let big = build(n, level);
    let small = build(n, level / v);
    (0..level / v).all(|t| {
        let image = big.successor(v * t);
        image % v == 0 && small.successor(t) == image / v
    })
}

/// Whole-graph isomorphism via canonical forms (cycle structure plus tree
/// encodings up to rotation).
pub fn graphs_isomorphic(a: &ZolotarevGraph, b: &ZolotarevGraph) -> bool {
    a.level == b.level && a.canonical_form() == b.canonical_form()
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub n: u64,
    #[serde(rename = "L")]
    pub level: u64,
    #[serde(rename = "L_n")]
    pub simplified_level: u64,
    pub counts: CountsReport,
    pub census: Vec<CensusEntry>,
    pub height: u64,
    pub components: Vec<ComponentReport>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountsReport {
    pub roots: u64,
    pub leaves: u64,
    pub branches: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub length: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComponentReport {
    pub cycle_min: u64,
    pub cycle_length: u64,
    pub size: u64,
}
