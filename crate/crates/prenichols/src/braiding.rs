//! Braiding matrices of diagonal type, the induced bilinear form, Dynkin
//! diagrams, generalized Cartan matrices and the diagram obstruction
//! predicates.
//!
//! Every matrix entry is a root of unity `zeta_N^{e_ij}` for a common
//! conductor `N`, so the bilinear form `q(a, b) = prod q_jk^{a_j b_k}` is
//! computed on integer exponents and only converted to a field element on
//! demand.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::scalar::{Cyclotomic, RootOfUnity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidingError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("no n <= {cap} satisfies the Cartan condition for ({i},{j})")]
    NoFiniteEntry { i: usize, j: usize, cap: u64 },
    #[error("zero degree where a nonzero degree is required")]
    ZeroDegree,
    #[error("invalid braiding data: {0}")]
    Invalid(String),
}

/// An element of `N_0^theta`, written in the basis of simple degrees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(rank: usize) -> Self {
        MultiDegree(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        MultiDegree(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference when `other <= self`.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let mut v = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            v.push(a - b);
        }
        Some(MultiDegree(v))
    }

    /// The componentwise partial order `beta <= gamma`.
    pub fn leq(&self, other: &MultiDegree) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// All degrees `<= self` componentwise, in a deterministic order.
    pub fn sub_degrees(&self) -> Vec<MultiDegree> {
        let mut out = vec![MultiDegree::zero(self.rank())];
        for (i, &cap) in self.0.iter().enumerate() {
            let mut next = Vec::new();
            for d in &out {
                for v in 0..=cap {
                    let mut w = d.clone();
                    w.0[i] = v;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// A braiding matrix of diagonal type with root-of-unity entries
/// `q_ij = zeta_N^{e_ij}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidingMatrix {
    conductor: u64,
    rank: usize,
    /// exponents reduced mod N
    exp: Vec<Vec<u64>>,
}

/// Diagram obstruction to a finite root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// A connected pair with a vertex labelled 1.
    OneLabeledEdge { vertices: (usize, usize) },
    /// A chordless cycle of length > 3.
    LongCycle { vertices: Vec<usize> },
    /// A connected rank-3 subdiagram violating the product/label conditions.
    Rank3Triangle { vertices: (usize, usize, usize) },
}

impl Obstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::OneLabeledEdge { .. } => "one-labeled-edge",
            Obstruction::LongCycle { .. } => "long-cycle",
            Obstruction::Rank3Triangle { .. } => "rank3-triangle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DynkinDiagram {
    pub rank: usize,
    pub vertex_labels: Vec<RootOfUnity>,
    /// edges `{i, j}` with `i < j` and label `q_ij q_ji != 1`
    pub edges: Vec<(usize, usize, RootOfUnity)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub matrix: Vec<Vec<i64>>,
    pub cartan_vertices: BTreeSet<usize>,
}

impl BraidingMatrix {
    pub fn new(conductor: u64, exp: Vec<Vec<i64>>) -> Result<Self, BraidingError> {
        let rank = exp.len();
        if rank == 0 {
            return Err(BraidingError::Invalid("empty matrix".into()));
        }
        let mut rows = Vec::with_capacity(rank);
        for row in &exp {
            if row.len() != rank {
                return Err(BraidingError::Invalid("non-square exponent matrix".into()));
            }
            rows.push(
                row.iter()
                    .map(|&e| e.rem_euclid(conductor as i64) as u64)
                    .collect(),
            );
        }
        Ok(BraidingMatrix {
            conductor,
            rank,
            exp: rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn entry(&self, i: usize, j: usize) -> RootOfUnity {
        RootOfUnity::new(self.conductor, self.exp[i][j] as i64)
    }

    pub fn entry_cyc(&self, i: usize, j: usize) -> Cyclotomic {
        self.entry(i, j).to_cyclotomic()
    }

    /// `true` when some diagonal entry equals 1; such vertices are outside
    /// the catalog scope but arise from adjoined degrees.
    pub fn has_one_on_diagonal(&self) -> bool {
        (0..self.rank).any(|i| self.entry(i, i).is_one())
    }

    fn check_rank(&self, d: &MultiDegree) -> Result<(), BraidingError> {
        if d.rank() != self.rank {
            Err(BraidingError::RankMismatch {
                expected: self.rank,
                got: d.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Exponent of `q(a, b)` for integer vectors, allowing negative entries.
    fn bilinear_exp_signed(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.conductor as i128;
        let mut acc: i128 = 0;
        for j in 0..self.rank {
            if a[j] == 0 {
                continue;
            }
            for k in 0..self.rank {
                if b[k] == 0 {
                    continue;
                }
                acc += (self.exp[j][k] as i128) * (a[j] as i128) * (b[k] as i128);
                acc = acc.rem_euclid(n);
            }
        }
        acc as i64
    }

    pub(crate) fn bilinear_signed(&self, a: &[i64], b: &[i64]) -> RootOfUnity {
        RootOfUnity::new(self.conductor, self.bilinear_exp_signed(a, b))
    }

    /// The Z-bilinear form `q(alpha, beta) = prod q_jk^{a_j b_k}`.
    pub fn bilinear(&self, a: &MultiDegree, b: &MultiDegree) -> Result<RootOfUnity, BraidingError> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        let av: Vec<i64> = a.0.iter().map(|&x| x as i64).collect();
        let bv: Vec<i64> = b.0.iter().map(|&x| x as i64).collect();
        Ok(self.bilinear_signed(&av, &bv))
    }

    pub fn bilinear_cyc(&self, a: &MultiDegree, b: &MultiDegree) -> Result<Cyclotomic, BraidingError> {
        Ok(self.bilinear(a, b)?.to_cyclotomic())
    }

    /// `q_beta = q(beta, beta)`.
    pub fn q_self(&self, b: &MultiDegree) -> Result<RootOfUnity, BraidingError> {
        self.bilinear(b, b)
    }

    /// Symmetrization `q~(alpha, beta) = q(alpha, beta) q(beta, alpha)`.
    pub fn sym(&self, a: &MultiDegree, b: &MultiDegree) -> Result<RootOfUnity, BraidingError> {
        Ok(self.bilinear(a, b)?.mul(&self.bilinear(b, a)?))
    }

    pub fn sym_entry(&self, i: usize, j: usize) -> RootOfUnity {
        RootOfUnity::new(
            self.conductor,
            (self.exp[i][j] + self.exp[j][i]) as i64,
        )
    }

    /// Generalized Cartan entry: `-min { n >= 0 : (n+1)_{q_ii} (1 - q_ii^n q~_ij) = 0 }`,
    /// searched up to `cap`.
    pub fn cartan_entry(&self, i: usize, j: usize, cap: u64) -> Result<i64, BraidingError> {
        assert!(i != j, "cartan_entry requires i != j");
        let n_cond = self.conductor;
        let a = self.exp[i][i]; // q_ii = zeta^a
        let b = self.exp[i][j] + self.exp[j][i]; // q~_ij = zeta^b
        let qii_is_one = a % n_cond == 0;
        for n in 0..=cap {
            // (n+1)_{q_ii} = 0  iff  q_ii != 1 and q_ii^{n+1} = 1
            let qnum_zero = !qii_is_one && ((n + 1) as u128 * a as u128) % n_cond as u128 == 0;
            // 1 - q_ii^n q~_ij = 0  iff  n*a + b = 0 mod N
            let factor_zero = ((n as u128 * a as u128) + b as u128) % n_cond as u128 == 0;
            if qnum_zero || factor_zero {
                return Ok(-(n as i64));
            }
        }
        Err(BraidingError::NoFiniteEntry { i, j, cap })
    }

    /// Full generalized Cartan matrix plus the set of Cartan vertices
    /// (those `i` with `q_ii^{c_ij} = q~_ij` for all `j != i`).
    pub fn cartan_data(&self, cap: u64) -> Result<CartanData, BraidingError> {
        let mut matrix = vec![vec![0i64; self.rank]; self.rank];
        for i in 0..self.rank {
            matrix[i][i] = 2;
            for j in 0..self.rank {
                if i != j {
                    matrix[i][j] = self.cartan_entry(i, j, cap)?;
                }
            }
        }
        let mut cartan_vertices = BTreeSet::new();
        for i in 0..self.rank {
            let qii = self.entry(i, i);
            let all = (0..self.rank).filter(|&j| j != i).all(|j| {
                qii.pow(matrix[i][j]) == self.sym_entry(i, j)
            });
            if all {
                cartan_vertices.insert(i);
            }
        }
        Ok(CartanData {
            matrix,
            cartan_vertices,
        })
    }

    /// Extend by one vertex whose row/column is determined by the bilinear
    /// form at the degree `beta`.
    pub fn adjoin_primitive(&self, beta: &MultiDegree) -> Result<BraidingMatrix, BraidingError> {
        self.check_rank(beta)?;
        if beta.is_zero() {
            return Err(BraidingError::ZeroDegree);
        }
        let r = self.rank;
        let mut exp = vec![vec![0i64; r + 1]; r + 1];
        for i in 0..r {
            for j in 0..r {
                exp[i][j] = self.exp[i][j] as i64;
            }
        }
        for i in 0..r {
            let alpha = MultiDegree::simple(r, i);
            let qib = self.bilinear(&alpha, beta)?;
            let qbi = self.bilinear(beta, &alpha)?;
            exp[i][r] = root_exponent_at(&qib, self.conductor);
            exp[r][i] = root_exponent_at(&qbi, self.conductor);
        }
        let qbb = self.q_self(beta)?;
        exp[r][r] = root_exponent_at(&qbb, self.conductor);
        BraidingMatrix::new(self.conductor, exp)
    }

    /// Restriction to a vertex subset, preserving order of `vertices`.
    pub fn restrict(&self, vertices: &[usize]) -> BraidingMatrix {
        let exp = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.exp[i][j] as i64).collect())
            .collect();
        BraidingMatrix::new(self.conductor, exp).expect("restriction is well formed")
    }

    pub fn dynkin_diagram(&self) -> DynkinDiagram {
        let vertex_labels = (0..self.rank).map(|i| self.entry(i, i)).collect();
        let mut edges = Vec::new();
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                let label = self.sym_entry(i, j);
                if !label.is_one() {
                    edges.push((i, j, label));
                }
            }
        }
        DynkinDiagram {
            rank: self.rank,
            vertex_labels,
            edges,
        }
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.rank]; self.rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i != j && !self.sym_entry(i, j).is_one() {
                    adj[i][j] = true;
                }
            }
        }
        adj
    }

    /// Connected component of `v` in the Dynkin diagram, sorted.
    pub fn component_of(&self, v: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.rank];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for w in 0..self.rank {
                if adj[u][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.rank).filter(|&i| seen[i]).collect()
    }

    /// Report every firing diagram obstruction. An empty result is not a
    /// finiteness certificate; it only means these predicates do not fire.
    pub fn obstruction_scan(&self) -> Vec<Obstruction> {
        let mut out = Vec::new();
        let adj = self.adjacency();
        // (a) connected pair with a vertex label 1
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                if adj[i][j] && (self.entry(i, i).is_one() || self.entry(j, j).is_one()) {
                    out.push(Obstruction::OneLabeledEdge { vertices: (i, j) });
                }
            }
        }
        // (b) cycles of length > 3
        if let Some(cycle) = self.find_long_cycle(&adj) {
            out.push(Obstruction::LongCycle { vertices: cycle });
        }
        // (c) triangle subdiagrams violating the rank-3 label conditions:
        // a finite rank-3 system with all three edges present must satisfy
        // q~_12 q~_13 q~_23 = 1 and carry a vertex labelled -1
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                for k in (j + 1)..self.rank {
                    if !(adj[i][j] && adj[i][k] && adj[j][k]) {
                        continue;
                    }
                    let product = self
                        .sym_entry(i, j)
                        .mul(&self.sym_entry(i, k))
                        .mul(&self.sym_entry(j, k));
                    let some_label_minus_one = [i, j, k].iter().any(|&v| {
                        let q = self.entry(v, v);
                        q.order() == 2
                    });
                    if !product.is_one() || !some_label_minus_one {
                        out.push(Obstruction::Rank3Triangle { vertices: (i, j, k) });
                    }
                }
            }
        }
        out
    }

    /// Find the vertex set of one cycle of length >= 4 (as a subgraph, chords
    /// allowed: the finiteness lemma excludes such cycles even through
    /// triangulated ones). A graph contains a cycle of length >= 4 exactly
    /// when some induced subgraph on >= 4 vertices is 2-connected, so for the
    /// small ranks in scope we enumerate vertex subsets, smallest first.
    fn find_long_cycle(&self, adj: &[Vec<bool>]) -> Option<Vec<usize>> {
        let n = adj.len();
        if n < 4 {
            return None;
        }
        let connected = |verts: &[usize], skip: Option<usize>| -> bool {
            let nodes: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&v| Some(v) != skip)
                .collect();
            if nodes.is_empty() {
                return true;
            }
            let mut seen = vec![nodes[0]];
            let mut frontier = vec![nodes[0]];
            while let Some(u) = frontier.pop() {
                for &w in &nodes {
                    if w != u && adj[u][w] && !seen.contains(&w) {
                        seen.push(w);
                        frontier.push(w);
                    }
                }
            }
            seen.len() == nodes.len()
        };
        let mut subsets: Vec<Vec<usize>> = (0u32..(1 << n))
            .filter(|m| (m.count_ones() as usize) >= 4)
            .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by_key(|s: &Vec<usize>| s.len());
        for verts in subsets {
            let two_connected = connected(&verts, None)
                && verts.iter().all(|&v| connected(&verts, Some(v)));
            if two_connected {
                return Some(verts);
            }
        }
        None
    }
}

impl fmt::Debug for BraidingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BraidingMatrix(conductor={}, rank={})", self.conductor, self.rank)?;
        for i in 0..self.rank {
            write!(f, "  [")?;
            for j in 0..self.rank {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Express a root of unity as an exponent at the given conductor; panics if
/// the order does not divide the conductor (cannot happen for values of the
/// bilinear form of a conductor-N matrix).
fn root_exponent_at(r: &RootOfUnity, conductor: u64) -> i64 {
    assert!(
        conductor % r.order() == 0,
        "order {} does not divide conductor {}",
        r.order(),
        conductor
    );
    (r.exponent() * (conductor / r.order())) as i64
}

/// Braiding-matrix file format: `conductor`, `rank`, and the matrix of
/// exponents `e_ij` with `q_ij = zeta_N^{e_ij}`, reduced mod N on load.
#[derive(Deserialize)]
struct BraidingFile {
    conductor: u64,
    rank: usize,
    q: Vec<Vec<i64>>,
}

pub fn parse_braiding_file(text: &str) -> Result<BraidingMatrix, BraidingError> {
    let file: BraidingFile =
        toml::from_str(text).map_err(|e| BraidingError::Invalid(e.to_string()))?;
    if file.q.len() != file.rank {
        return Err(BraidingError::Invalid(format!(
            "rank field is {} but q has {} rows",
            file.rank,
            file.q.len()
        )));
    }
    BraidingMatrix::new(file.conductor, file.q)
}
