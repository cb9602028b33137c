//! Seeds, mutation, permutation action and exchange-graph enumeration for
//! skew-symmetrizable seeds of small rank.
//!
//! A [`Seed`] pairs an [`ExchangeMatrix`] with a cluster of Laurent
//! polynomials expressed in the initial variables. Mutation in direction
//! `k` replaces entry `k` by `(prod_j x_j^[b_jk]+ + prod_j x_j^[-b_jk]+) / x_k`,
//! with the division exact by the Laurent phenomenon, and rewrites the
//! matrix by the standard rule `b'_ij = b_ij + (b_ik|b_kj| + |b_ik|b_kj)/2`
//! off the mutated row and column.
//!
//! Unlabeled seeds are identified through [`Seed::canonical_key`], which
//! minimizes the seed serialization over all simultaneous permutations of
//! cluster entries and matrix indices; this is what deduplicates nodes
//! during [`ExchangeGraph::enumerate`].

use itertools::Itertools;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::io;

use crate::laurent::{LaurentError, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClusterError {
    NotSquare { rows: usize, len: usize },
    NonzeroDiagonal { index: usize },
    NotSkewSymmetrizable,
    RankMismatch { expected: usize, actual: usize },
    DirectionOutOfRange { direction: usize, rank: usize },
    NotABijection,
    /// A cluster entry has a numerator coefficient that is not strictly
    /// positive; legal seeds never do.
    NonPositiveEntry { entry: usize },
    NodeLimitExceeded { limit: usize },
    SeedFile { line: usize, message: String },
    Laurent(LaurentError),
}

impl fmt::Display for ClusterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterError::NotSquare { rows, len } => {
                write!(f, "matrix is not square: {rows} rows, {len} entries")
            }
            ClusterError::NonzeroDiagonal { index } => {
                write!(f, "nonzero diagonal entry at index {index}")
            }
            ClusterError::NotSkewSymmetrizable => write!(f, "matrix is not skew-symmetrizable"),
            ClusterError::RankMismatch { expected, actual } => {
                write!(f, "rank mismatch: expected {expected}, got {actual}")
            }
            ClusterError::DirectionOutOfRange { direction, rank } => {
                write!(f, "mutation direction {direction} out of range for rank {rank}")
            }
            ClusterError::NotABijection => write!(f, "permutation images are not a bijection"),
            ClusterError::NonPositiveEntry { entry } => {
                write!(f, "cluster entry {entry} has a non-positive numerator coefficient")
            }
            ClusterError::NodeLimitExceeded { limit } => {
                write!(f, "exchange graph exceeds the node limit {limit}")
            }
            ClusterError::SeedFile { line, message } => {
                write!(f, "seed file line {line}: {message}")
            }
            ClusterError::Laurent(e) => write!(f, "laurent arithmetic: {e}"),
        }
    }
}

impl std::error::Error for ClusterError {}

impl From<LaurentError> for ClusterError {
    fn from(e: LaurentError) -> Self {
        ClusterError::Laurent(e)
    }
}

/// Skew-symmetrizable integer exchange matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    /// Validates squareness, zero diagonal and skew-symmetrizability.
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self, ClusterError> {
        if entries.len() != n * n {
            return Err(ClusterError::NotSquare {
                rows: n,
                len: entries.len(),
            });
        }
        let m = ExchangeMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != 0 {
                return Err(ClusterError::NonzeroDiagonal { index: i });
            }
        }
        if m.symmetrizer().is_none() {
            return Err(ClusterError::NotSkewSymmetrizable);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, ClusterError> {
        let n = rows.len();
        let entries: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::new(n, entries)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// A positive integer diagonal `D` with `D*B` skew-symmetric, or `None`
    /// when no such diagonal exists. Ratios are propagated over the
    /// adjacency graph and checked for consistency on every pair.
    pub fn symmetrizer(&self) -> Option<Vec<i64>> {
        let n = self.n;
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(BigRational::one());
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].clone().expect("assigned");
                for j in 0..n {
                    let bij = self.get(i, j);
                    let bji = self.get(j, i);
                    if (bij == 0) != (bji == 0) {
                        return None;
                    }
                    if bij == 0 {
                        continue;
                    }
                    if bij.signum() == bji.signum() {
                        return None;
                    }
                    // d_i b_ij = -d_j b_ji
                    let dj = &di * BigRational::new(BigInt::from(bij), BigInt::from(-bji));
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            queue.push_back(j);
                        }
                        Some(existing) => {
                            if *existing != dj {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        // scale to positive integers
        let lcm = d
            .iter()
            .map(|v| v.as_ref().expect("assigned").denom().clone())
            .fold(BigInt::one(), |acc, den| num::integer::lcm(acc, den));
        let scaled: Vec<BigInt> = d
            .iter()
            .map(|v| (v.as_ref().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = scaled
            .iter()
            .fold(BigInt::zero(), |acc, v| num::integer::gcd(acc, v.clone()));
        scaled
            .iter()
            .map(|v| (v / &gcd).try_into().ok())
            .collect::<Option<Vec<i64>>>()
            .filter(|d| d.iter().all(|&x| x > 0))
    }

    /// Matrix mutation in direction `k` (0-based): negate row and column
    /// `k`, add `(b_ik|b_kj| + |b_ik|b_kj)/2` elsewhere.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, ClusterError> {
        let n = self.n;
        if k >= n {
            return Err(ClusterError::DirectionOutOfRange { direction: k, rank: n });
        }
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let b = self.get(i, j);
                entries[i * n + j] = if i == k || j == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    // the correction term is always even
                    b + (bik * bkj.abs() + bik.abs() * bkj) / 2
                };
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    pub fn negate(&self) -> ExchangeMatrix {
        ExchangeMatrix {
            n: self.n,
            entries: self.entries.iter().map(|b| -b).collect(),
        }
    }

    fn permuted(&self, inverse: &[usize]) -> ExchangeMatrix {
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(inverse[i], inverse[j]);
            }
        }
        ExchangeMatrix { n, entries }
    }
}

/// Bijection on `{0, .., n-1}`; `images[i]` is `sigma(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, ClusterError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(ClusterError::NotABijection);
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// Composition `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Permutation matrix `P` with `p_ij = 1` iff `sigma(i) = j`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.degree();
        let mut m = vec![vec![0i64; n]; n];
        for (i, &img) in self.images.iter().enumerate() {
            m[i][img] = 1;
        }
        m
    }
}

/// Canonical identifier of an unlabeled seed: the minimum over all
/// simultaneous permutations of the serialized (cluster, matrix) pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeedKey(String);

impl SeedKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// An exchange matrix with a cluster of Laurent polynomials in the initial
/// variables. Immutable; mutation returns a fresh seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPolynomial>,
}

impl Seed {
    /// The initial seed `((x1, .., xn), B)`.
    pub fn initial(matrix: ExchangeMatrix) -> Seed {
        let n = matrix.rank();
        let cluster = (0..n).map(|i| LaurentPolynomial::variable(n, i)).collect();
        Seed { matrix, cluster }
    }

    /// Validates rank agreement and strict positivity of every entry's
    /// numerator coefficients.
    pub fn new(matrix: ExchangeMatrix, cluster: Vec<LaurentPolynomial>) -> Result<Seed, ClusterError> {
        let n = matrix.rank();
        if cluster.len() != n {
            return Err(ClusterError::RankMismatch {
                expected: n,
                actual: cluster.len(),
            });
        }
        for (idx, entry) in cluster.iter().enumerate() {
            if entry.rank() != n {
                return Err(ClusterError::RankMismatch {
                    expected: n,
                    actual: entry.rank(),
                });
            }
            let nf = entry
                .normalize()
                .map_err(|_| ClusterError::NonPositiveEntry { entry: idx })?;
            if nf.numerator.terms().any(|(_, c)| !c.is_positive()) {
                return Err(ClusterError::NonPositiveEntry { entry: idx });
            }
        }
        Ok(Seed { matrix, cluster })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPolynomial] {
        &self.cluster
    }

    /// Seed mutation in direction `k` (0-based): exchanges entry `k` for
    /// `(prod_j x_j^[b_jk]+ + prod_j x_j^[-b_jk]+) / x_k` over the current
    /// cluster entries and mutates the matrix.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let n = self.rank();
        if k >= n {
            return Err(ClusterError::DirectionOutOfRange { direction: k, rank: n });
        }
        let mut plus = LaurentPolynomial::one(n);
        let mut minus = LaurentPolynomial::one(n);
        for j in 0..n {
            let b = self.matrix.get(j, k);
            if b > 0 {
                plus = plus.mul(&self.cluster[j].pow(b as u32))?;
            } else if b < 0 {
                minus = minus.mul(&self.cluster[j].pow((-b) as u32))?;
            }
        }
        let binomial = plus.add(&minus)?;
        let exchanged = binomial.exact_div(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = exchanged;
        Seed::new(self.matrix.mutate(k)?, cluster)
    }

    /// Applies a mutation word left to right.
    pub fn mutate_word(&self, word: &[usize]) -> Result<Seed, ClusterError> {
        let mut seed = self.clone();
        for &k in word {
            seed = seed.mutate(k)?;
        }
        Ok(seed)
    }

    /// Relabeling action: `x'_i = x_{sigma^-1(i)}`,
    /// `b'_ij = b_{sigma^-1(i) sigma^-1(j)}`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Seed, ClusterError> {
        let n = self.rank();
        if sigma.degree() != n {
            return Err(ClusterError::RankMismatch {
                expected: n,
                actual: sigma.degree(),
            });
        }
        let inv = sigma.inverse();
        let cluster: Vec<LaurentPolynomial> =
            (0..n).map(|i| self.cluster[inv.apply(i)].clone()).collect();
        let matrix = self.matrix.permuted(&inv.images);
        Ok(Seed { matrix, cluster })
    }

    /// Same cluster, negated exchange matrix.
    pub fn negate_matrix(&self) -> Seed {
        Seed {
            matrix: self.matrix.negate(),
            cluster: self.cluster.clone(),
        }
    }

    /// Canonical key of the unlabeled seed: two seeds get equal keys iff
    /// one is a permutation image of the other. Minimizes the serialized
    /// (cluster, matrix) pair over all `n!` permutations; fine for the
    /// desk-scale ranks this crate targets.
    pub fn canonical_key(&self) -> SeedKey {
        let n = self.rank();
        let entry_strings: Vec<String> =
            self.cluster.iter().map(|p| p.to_string()).collect();
        let mut best: Option<String> = None;
        for perm in (0..n).permutations(n) {
            let mut s = String::new();
            for &i in &perm {
                s.push_str(&entry_strings[i]);
                s.push(';');
            }
            s.push('|');
            for &i in &perm {
                for &j in &perm {
                    s.push_str(&self.matrix.get(i, j).to_string());
                    s.push(',');
                }
            }
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        }
        SeedKey(best.expect("rank is positive"))
    }

    /// The cluster monomial `prod_i cluster[i]^(exponents[i])`.
    pub fn cluster_monomial(&self, exponents: &[u32]) -> Result<LaurentPolynomial, ClusterError> {
        if exponents.len() != self.rank() {
            return Err(ClusterError::RankMismatch {
                expected: self.rank(),
                actual: exponents.len(),
            });
        }
        let mut out = LaurentPolynomial::one(self.rank());
        for (entry, &e) in self.cluster.iter().zip(exponents) {
            if e > 0 {
                out = out.mul(&entry.pow(e))?;
            }
        }
        Ok(out)
    }

    /// `(entry, entry, ...)` with table-style fractions.
    pub fn cluster_string(&self) -> String {
        let entries: Vec<String> = self.cluster.iter().map(|p| p.fraction_string()).collect();
        format!("({})", entries.join(", "))
    }
}

/// Undirected edge of the exchange graph; `direction` is the mutation
/// index (0-based) applied at `from` when the edge was discovered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub direction: usize,
}

/// Exchange graph: unlabeled seeds as nodes, single mutations as edges.
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    nodes: Vec<Seed>,
    edges: Vec<GraphEdge>,
}

impl ExchangeGraph {
    /// Breadth-first closure of the initial seed under all mutation
    /// directions, deduplicating nodes by canonical unlabeled-seed key.
    /// Stops with an error as soon as the node count would exceed
    /// `node_limit`.
    pub fn enumerate(initial: &Seed, node_limit: usize) -> Result<ExchangeGraph, ClusterError> {
        let n = initial.rank();
        let mut nodes = vec![initial.clone()];
        let mut keys: BTreeMap<SeedKey, usize> = BTreeMap::new();
        keys.insert(initial.canonical_key(), 0);
        let mut edges: Vec<GraphEdge> = Vec::new();
        let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for k in 0..n {
                let neighbor = nodes[u].mutate(k)?;
                let key = neighbor.canonical_key();
                let v = match keys.get(&key) {
                    Some(&v) => v,
                    None => {
                        if nodes.len() >= node_limit {
                            return Err(ClusterError::NodeLimitExceeded { limit: node_limit });
                        }
                        let v = nodes.len();
                        nodes.push(neighbor);
                        keys.insert(key, v);
                        queue.push_back(v);
                        v
                    }
                };
                let pair = (u.min(v), u.max(v));
                if seen_pairs.insert(pair) {
                    edges.push(GraphEdge {
                        from: u,
                        to: v,
                        direction: k,
                    });
                }
            }
        }
        Ok(ExchangeGraph { nodes, edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Seed] {
        &self.nodes
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Distinct neighbor count per node.
    pub fn neighbor_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            counts[e.from] += 1;
            if e.to != e.from {
                counts[e.to] += 1;
            }
        }
        counts
    }

    /// Union of all cluster entries over all nodes, deduplicated by
    /// canonical equality.
    pub fn cluster_variables(&self) -> BTreeSet<LaurentPolynomial> {
        self.nodes
            .iter()
            .flat_map(|s| s.cluster().iter().cloned())
            .collect()
    }

    /// DOT export: nodes labeled by canonical cluster strings, edges
    /// labeled by 1-based mutation direction. Output is byte-stable for a
    /// fixed initial seed.
    pub fn write_dot(&self, w: &mut impl io::Write) -> io::Result<()> {
        writeln!(w, "graph exchange {{")?;
        writeln!(w, "  node [shape=box];")?;
        for (i, seed) in self.nodes.iter().enumerate() {
            writeln!(w, "  n{} [label=\"{}\"];", i, seed.cluster_string())?;
        }
        for e in &self.edges {
            writeln!(
                w,
                "  n{} -- n{} [label=\"{}\"];",
                e.from,
                e.to,
                e.direction + 1
            )?;
        }
        writeln!(w, "}}")
    }
}

/// A parsed seed file: the seed plus optional display names for variables.
#[derive(Debug, Clone)]
pub struct SeedFile {
    pub seed: Seed,
    pub names: Option<Vec<String>>,
}

/// Parses the structured seed file format:
///
/// ```text
/// # comment
/// rank 3
/// matrix
/// 0 1 0
/// -1 0 -1
/// 0 1 0
/// vars a b c        # optional
/// ```
pub fn parse_seed_file(text: &str) -> Result<SeedFile, ClusterError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: &str| ClusterError::SeedFile {
        line,
        message: message.to_string(),
    };

    let (line, head) = lines.next().ok_or_else(|| err(0, "empty seed file"))?;
    let rank: usize = head
        .strip_prefix("rank")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| err(line, "expected `rank N` with N >= 1"))?;

    let (line, kw) = lines.next().ok_or_else(|| err(line, "expected `matrix`"))?;
    if kw != "matrix" {
        return Err(err(line, "expected `matrix`"));
    }

    let mut rows = Vec::with_capacity(rank);
    let mut last_line = line;
    for _ in 0..rank {
        let (line, row) = lines
            .next()
            .ok_or_else(|| err(last_line, "missing matrix row"))?;
        last_line = line;
        let entries: Result<Vec<i64>, _> = row.split_whitespace().map(str::parse).collect();
        let entries = entries.map_err(|_| err(line, "matrix row has a non-integer entry"))?;
        if entries.len() != rank {
            return Err(err(line, "matrix row length does not match the rank"));
        }
        rows.push(entries);
    }
    let matrix = ExchangeMatrix::from_rows(&rows)?;

    let mut names = None;
    if let Some((line, rest)) = lines.next() {
        let Some(vars) = rest.strip_prefix("vars") else {
            return Err(err(line, "unexpected content after matrix rows"));
        };
        let list: Vec<String> = vars.split_whitespace().map(str::to_string).collect();
        if list.len() != rank {
            return Err(err(line, "vars line length does not match the rank"));
        }
        names = Some(list);
        if let Some((line, _)) = lines.next() {
            return Err(err(line, "unexpected content after vars line"));
        }
    }

    Ok(SeedFile {
        seed: Seed::initial(matrix),
        names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_laurent;
    use proptest::prelude::*;

    fn lp(rank: usize, s: &str) -> LaurentPolynomial {
        parse_laurent(s, rank).unwrap()
    }

    fn inward() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]).unwrap()
    }

    fn cyclic() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap()
    }

    #[test]
    fn matrix_mutation_inward_direction_two() {
        let m = inward().mutate(1).unwrap();
        assert_eq!(m.entries(), &[0, -1, 0, 1, 0, 1, 0, -1, 0]);
    }

    #[test]
    fn matrix_mutation_cyclic_direction_one() {
        let m = cyclic().mutate(0).unwrap();
        assert_eq!(m.entries(), &[0, -1, 1, 1, 0, 0, -1, 0, 0]);
    }

    #[test]
    fn matrix_mutation_out_of_range() {
        assert_eq!(
            inward().mutate(3).unwrap_err(),
            ClusterError::DirectionOutOfRange { direction: 3, rank: 3 }
        );
    }

    #[test]
    fn matrix_construction_rejects_bad_input() {
        assert!(matches!(
            ExchangeMatrix::new(2, vec![0, 1, 1]),
            Err(ClusterError::NotSquare { .. })
        ));
        assert!(matches!(
            ExchangeMatrix::from_rows(&[vec![1, 0], vec![0, 0]]),
            Err(ClusterError::NonzeroDiagonal { index: 0 })
        ));
        assert!(matches!(
            ExchangeMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            Err(ClusterError::NotSkewSymmetrizable)
        ));
        assert!(matches!(
            ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]),
            Ok(_)
        ));
    }

    #[test]
    fn symmetrizer_of_b2_type_matrix() {
        let m = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]).unwrap();
        assert_eq!(m.symmetrizer(), Some(vec![2, 1]));
        assert_eq!(inward().symmetrizer(), Some(vec![1, 1, 1]));
    }

    #[test]
    fn seed_mutation_inward_direction_two() {
        let seed = Seed::initial(inward()).mutate(1).unwrap();
        assert_eq!(
            seed.cluster(),
            &[
                lp(3, "x1"),
                lp(3, "(x1*x3 + 1)/x2"),
                lp(3, "x3"),
            ]
        );
    }

    #[test]
    fn seed_mutation_cyclic_direction_one() {
        let seed = Seed::initial(cyclic()).mutate(0).unwrap();
        assert_eq!(
            seed.cluster(),
            &[lp(3, "(x2 + x3)/x1"), lp(3, "x2"), lp(3, "x3")]
        );
    }

    #[test]
    fn mutation_is_involutive() {
        let seed = Seed::initial(inward());
        for k in 0..3 {
            let back = seed.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(back, seed);
        }
        let deep = seed.mutate_word(&[0, 1, 2, 1]).unwrap();
        for k in 0..3 {
            assert_eq!(deep.mutate(k).unwrap().mutate(k).unwrap(), deep);
        }
    }

    #[test]
    fn permutation_identity_and_inverse() {
        let seed = Seed::initial(cyclic()).mutate(0).unwrap();
        let id = Permutation::identity(3);
        assert_eq!(seed.permute(&id).unwrap(), seed);
        let sigma = Permutation::new(vec![1, 2, 0]).unwrap();
        let back = seed
            .permute(&sigma)
            .unwrap()
            .permute(&sigma.inverse())
            .unwrap();
        assert_eq!(back, seed);
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert_eq!(
            Permutation::new(vec![0, 0, 2]).unwrap_err(),
            ClusterError::NotABijection
        );
    }

    #[test]
    fn canonical_key_identifies_permuted_seeds() {
        let seed = Seed::initial(inward()).mutate_word(&[1, 0]).unwrap();
        for images in (0..3).permutations(3) {
            let sigma = Permutation::new(images).unwrap();
            assert_eq!(seed.permute(&sigma).unwrap().canonical_key(), seed.canonical_key());
        }
    }

    #[test]
    fn canonical_keys_distinguish_nodes() {
        let graph = ExchangeGraph::enumerate(&Seed::initial(inward()), 100).unwrap();
        let keys: BTreeSet<SeedKey> =
            graph.nodes().iter().map(|s| s.canonical_key()).collect();
        assert_eq!(keys.len(), graph.node_count());
    }

    #[test]
    fn enumerate_a3_cases() {
        for matrix in [
            inward(),
            ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap(),
            cyclic(),
        ] {
            let graph = ExchangeGraph::enumerate(&Seed::initial(matrix), 100).unwrap();
            assert_eq!(graph.node_count(), 14);
            assert_eq!(graph.edges().len(), 21);
            assert!(graph.neighbor_counts().iter().all(|&c| c == 3));
            assert_eq!(graph.cluster_variables().len(), 9);
        }
    }

    #[test]
    fn enumerate_rank_one() {
        let matrix = ExchangeMatrix::from_rows(&[vec![0]]).unwrap();
        let graph = ExchangeGraph::enumerate(&Seed::initial(matrix), 10).unwrap();
        assert_eq!(graph.node_count(), 2);
        assert_eq!(graph.edges().len(), 1);
        let vars = graph.cluster_variables();
        assert_eq!(vars.len(), 2);
        assert!(vars.contains(&lp(1, "x1")));
        assert!(vars.contains(&lp(1, "2/x1")));
    }

    #[test]
    fn enumerate_respects_node_limit() {
        let err = ExchangeGraph::enumerate(&Seed::initial(inward()), 5).unwrap_err();
        assert_eq!(err, ClusterError::NodeLimitExceeded { limit: 5 });
    }

    #[test]
    fn cyclic_case_has_shared_numerator_variables() {
        let graph = ExchangeGraph::enumerate(&Seed::initial(cyclic()), 100).unwrap();
        let vars = graph.cluster_variables();
        for s in [
            "(x1+x2+x3)/(x1*x2)",
            "(x1+x2+x3)/(x1*x3)",
            "(x1+x2+x3)/(x2*x3)",
        ] {
            assert!(vars.contains(&lp(3, s)), "missing {s}");
        }
    }

    #[test]
    fn cluster_monomial_examples() {
        let seed = Seed::initial(inward());
        assert_eq!(
            seed.cluster_monomial(&[2, 1, 0]).unwrap(),
            lp(3, "x1^2*x2")
        );
        assert_eq!(
            seed.cluster_monomial(&[0, 0, 0]).unwrap(),
            LaurentPolynomial::one(3)
        );
        assert!(seed.cluster_monomial(&[1, 1]).is_err());
    }

    #[test]
    fn negate_matrix_round_trip() {
        let seed = Seed::initial(cyclic());
        assert_eq!(seed.negate_matrix().negate_matrix(), seed);
    }

    #[test]
    fn sign_symmetry_along_words() {
        let seed = Seed::initial(cyclic());
        let negated = seed.negate_matrix();
        for word in [vec![0], vec![1, 2], vec![0, 1, 2, 0]] {
            let a = seed.mutate_word(&word).unwrap();
            let b = negated.mutate_word(&word).unwrap();
            assert_eq!(a.cluster(), b.cluster());
            assert_eq!(a.matrix().negate(), *b.matrix());
        }
    }

    #[test]
    fn seed_construction_rejects_negative_numerators() {
        let err = Seed::new(inward(), vec![lp(3, "x1 - 1"), lp(3, "x2"), lp(3, "x3")]);
        assert_eq!(err.unwrap_err(), ClusterError::NonPositiveEntry { entry: 0 });
    }

    #[test]
    fn parse_seed_file_round_trip() {
        let text = "# inward orientation\nrank 3\nmatrix\n0 1 0\n-1 0 -1\n0 1 0\n";
        let file = parse_seed_file(text).unwrap();
        assert_eq!(file.seed, Seed::initial(inward()));
        assert!(file.names.is_none());

        let text = "rank 2\nmatrix\n0 1\n-1 0\nvars a b\n";
        let file = parse_seed_file(text).unwrap();
        assert_eq!(file.names, Some(vec!["a".to_string(), "b".to_string()]));
    }

    #[test]
    fn parse_seed_file_errors() {
        assert!(matches!(
            parse_seed_file(""),
            Err(ClusterError::SeedFile { .. })
        ));
        assert!(matches!(
            parse_seed_file("rank 2\nmatrix\n0 1\n-1 0 3\n"),
            Err(ClusterError::SeedFile { line: 4, .. })
        ));
        assert!(matches!(
            parse_seed_file("rank 2\nmatrix\n0 1\n1 0\n"),
            Err(ClusterError::NotSkewSymmetrizable)
        ));
    }

    #[test]
    fn dot_export_is_byte_stable() {
        let graph = ExchangeGraph::enumerate(&Seed::initial(inward()), 100).unwrap();
        let mut first = Vec::new();
        graph.write_dot(&mut first).unwrap();
        let graph2 = ExchangeGraph::enumerate(&Seed::initial(inward()), 100).unwrap();
        let mut second = Vec::new();
        graph2.write_dot(&mut second).unwrap();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text.contains("n0 [label=\"(x1, x2, x3)\"];"));
    }

    fn arb_matrix() -> impl Strategy<Value = ExchangeMatrix> {
        // skew-symmetric matrices plus a fixed symmetrizable non-symmetric one
        prop_oneof![
            9 => (2usize..=3).prop_flat_map(|n| {
                proptest::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |upper| {
                    let mut entries = vec![0i64; n * n];
                    let mut it = upper.into_iter();
                    for i in 0..n {
                        for j in (i + 1)..n {
                            let v = it.next().unwrap();
                            entries[i * n + j] = v;
                            entries[j * n + i] = -v;
                        }
                    }
                    ExchangeMatrix::new(n, entries).unwrap()
                })
            }),
            1 => Just(ExchangeMatrix::from_rows(&[vec![0, 1], vec![-3, 0]]).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn mutation_involution_on_matrices(m in arb_matrix(), k_raw in 0usize..3) {
            let k = k_raw % m.rank();
            prop_assert_eq!(m.mutate(k).unwrap().mutate(k).unwrap(), m);
        }

        #[test]
        fn mutation_preserves_symmetrizer(m in arb_matrix(), k_raw in 0usize..3) {
            let k = k_raw % m.rank();
            let d = m.symmetrizer().unwrap();
            prop_assert_eq!(m.mutate(k).unwrap().symmetrizer().unwrap(), d);
        }

        #[test]
        fn permuted_matrix_is_conjugation(
            (m, seed_word) in arb_matrix().prop_flat_map(|m| {
                let n = m.rank();
                (Just(m), proptest::collection::vec(0..n, 0..=2))
            }),
            perm_seed in proptest::num::u64::ANY,
        ) {
            let seed = Seed::initial(m).mutate_word(&seed_word).unwrap();
            let n = seed.rank();
            let mut images: Vec<usize> = (0..n).collect();
            let mut state = perm_seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                images.swap(i, (state >> 33) as usize % (i + 1));
            }
            let sigma = Permutation::new(images).unwrap();
            let permuted = seed.permute(&sigma).unwrap();
            // sigma(B) = P^T B P
            let p = sigma.matrix();
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0i64;
                    for a in 0..n {
                        for b in 0..n {
                            acc += p[a][i] * seed.matrix().get(a, b) * p[b][j];
                        }
                    }
                    prop_assert_eq!(permuted.matrix().get(i, j), acc);
                }
            }
            // mu_sigma(k)(sigma(seed)) = sigma(mu_k(seed))
            for k in 0..n {
                let lhs = permuted.mutate(sigma.apply(k)).unwrap();
                let rhs = seed.mutate(k).unwrap().permute(&sigma).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn permutation_action_composes(
            m in arb_matrix(),
            s1 in proptest::num::u64::ANY,
            s2 in proptest::num::u64::ANY,
        ) {
            let seed = Seed::initial(m);
            let n = seed.rank();
            let make = |mut state: u64| {
                let mut images: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    images.swap(i, (state >> 33) as usize % (i + 1));
                }
                Permutation::new(images).unwrap()
            };
            let (sigma1, sigma2) = (make(s1), make(s2));
            let lhs = seed.permute(&sigma1).unwrap().permute(&sigma2).unwrap();
            let rhs = seed.permute(&sigma2.compose(&sigma1)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

}
