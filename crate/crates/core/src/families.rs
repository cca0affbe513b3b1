//! Named graphs and designs: the Shrikhande and lattice graphs, the Fano plane
//! and the affine-geometry graphs built from it, block-design incidence graphs,
//! strongly regular spectra, cones over design graphs, and a keyed catalog.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::detect_srg;
use crate::graph::{Graph, GraphError};
use crate::spectra::{is_perfect_square, ExactEigenvalue, ExactSpectrum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a balanced design: {0}")]
    InvalidDesign(String),
    #[error("infeasible strongly regular parameters {0}")]
    Infeasible(String),
    #[error("base graph is not srg{expected}; found {found}")]
    SrgMismatch { expected: String, found: String },
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
}

/// The Cayley graph on `ℤ₄ × ℤ₄` with connection set `±(1,0), ±(0,1), ±(1,1)`;
/// vertex `(a, b)` is `4a + b`.
pub fn shrikhande() -> Graph {
    let diffs = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    Graph::from_fn(16, |u, v| {
        let d = ((4 + v / 4 - u / 4) % 4, (4 + v % 4 - u % 4) % 4);
        diffs.contains(&d)
    })
    .expect("fixed order")
    .with_label("shrikhande")
}

/// `L₂(4) = L(K_{4,4})`, the 4×4 rook's graph.
pub fn lattice_l2_4() -> Graph {
    Graph::complete_bipartite(4, 4)
        .and_then(|g| g.line_graph())
        .expect("K44 has edges")
        .with_label("lattice_l2_4")
}

pub fn petersen() -> Graph {
    Graph::complete(5)
        .and_then(|g| g.line_graph())
        .expect("K5 has edges")
        .complement()
        .with_label("petersen")
}

/// A balanced incomplete block design on points `0..points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bibd {
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
    /// Blocks through each point.
    pub r: usize,
    /// Points per block.
    pub k: usize,
    /// Blocks through each pair of points.
    pub alpha: usize,
    pub symmetric: bool,
}

impl Bibd {
    pub fn new(points: usize, mut blocks: Vec<Vec<usize>>) -> Result<Bibd, FamilyError> {
        if points < 2 || blocks.is_empty() {
            return Err(FamilyError::InvalidDesign("need at least two points and one block".into()));
        }
        for b in blocks.iter_mut() {
            b.sort_unstable();
            b.dedup();
            if b.iter().any(|&p| p >= points) {
                return Err(FamilyError::InvalidDesign(format!("block {b:?} has a point out of range")));
            }
        }
        let k = blocks[0].len();
        if blocks.iter().any(|b| b.len() != k) {
            return Err(FamilyError::InvalidDesign("blocks have different sizes".into()));
        }
        let mut through = vec![0usize; points];
        let mut pairs = vec![0usize; points * points];
        for b in &blocks {
            for (i, &p) in b.iter().enumerate() {
                through[p] += 1;
                for &q in &b[i + 1..] {
                    pairs[p * points + q] += 1;
                }
            }
        }
        let r = through[0];
        if through.iter().any(|&x| x != r) {
            return Err(FamilyError::InvalidDesign("replication number is not constant".into()));
        }
        let alpha = pairs[1];
        for p in 0..points {
            for q in (p + 1)..points {
                if pairs[p * points + q] != alpha {
                    return Err(FamilyError::InvalidDesign(format!("pair ({p},{q}) is not covered {alpha} times")));
                }
            }
        }
        let symmetric = blocks.len() == points;
        Ok(Bibd { points, blocks, r, k, alpha, symmetric })
    }

    /// Point-by-block 0/1 incidence matrix, row-major.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.blocks.len()]; self.points];
        for (j, b) in self.blocks.iter().enumerate() {
            for &p in b {
                m[p][j] = 1;
            }
        }
        m
    }
}

const FANO_INCIDENCE: [[u8; 7]; 7] = [
    [1, 0, 0, 0, 1, 0, 1],
    [1, 1, 0, 0, 0, 1, 0],
    [0, 1, 1, 0, 0, 0, 1],
    [1, 0, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 1, 0, 0],
    [0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 1, 0, 1, 1],
];

/// The (7,3,1) design; rows of the incidence matrix are points, columns blocks.
pub fn fano_plane() -> Bibd {
    let blocks = (0..7)
        .map(|j| (0..7).filter(|&i| FANO_INCIDENCE[i][j] == 1).collect())
        .collect();
    Bibd::new(7, blocks).expect("the Fano plane is a design")
}

/// Bipartite point–block graph: points first, then blocks.
pub fn incidence_graph(design: &Bibd) -> Graph {
    let v = design.points;
    let mut edges = Vec::new();
    for (j, b) in design.blocks.iter().enumerate() {
        edges.extend(b.iter().map(|&p| (p, v + j)));
    }
    Graph::from_edges(v + design.blocks.len(), &edges).expect("design points are in range")
}

/// The 22-vertex multiplicative graph on the points and planes of `AG(3,2)`,
/// assembled from the Fano incidence matrix `X` and `Y = J − X`.
///
/// Vertices `0..8` are points, `8..15` the `X`-planes and `15..22` the
/// `Y`-planes. Point 0 meets every `X`-plane; point `1+i` meets `X`-plane `j`
/// when `X[i][j] = 1` and `Y`-plane `j` otherwise. Two planes are adjacent
/// unless they carry the same index `j`.
pub fn ag32_graph() -> Graph {
    Graph::from_fn(22, |u, v| {
        // u < v
        match (u, v) {
            (0, 8..=14) => true,
            (0, _) => false,
            (1..=7, 8..=14) => FANO_INCIDENCE[u - 1][v - 8] == 1,
            (1..=7, 15..=21) => FANO_INCIDENCE[u - 1][v - 15] == 0,
            (8..=21, 8..=21) => (u - 8) % 7 != (v - 8) % 7,
            _ => false,
        }
    })
    .expect("fixed order")
    .with_label("ag32")
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Points of `(ℤ_q)³` and all affine planes `{x : a·x = b}`; a point meets the
/// planes through it and two planes are adjacent when they are not parallel.
/// Points come first (`x₀q² + x₁q + x₂`), then planes grouped by normal.
pub fn ag3q_family(q: u64) -> Result<Graph, FamilyError> {
    if !is_prime(q) {
        return Err(FamilyError::NotPrime(q));
    }
    let q = q as usize;
    let points: Vec<[usize; 3]> = (0..q * q * q).map(|p| [p / (q * q), p / q % q, p % q]).collect();
    let normals: Vec<[usize; 3]> = points
        .iter()
        .copied()
        .filter(|a| a.iter().find(|&&c| c != 0) == Some(&1))
        .collect();
    let n_points = points.len();
    let order = n_points + normals.len() * q;
    if order > crate::graph::MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(order).into());
    }
    let dot = |a: &[usize; 3], x: &[usize; 3]| (a[0] * x[0] + a[1] * x[1] + a[2] * x[2]) % q;
    let g = Graph::from_fn(order, |u, v| {
        if v < n_points {
            return false;
        }
        let (na, b) = ((v - n_points) / q, (v - n_points) % q);
        if u < n_points {
            dot(&normals[na], &points[u]) == b
        } else {
            (u - n_points) / q != na
        }
    })?;
    Ok(g.with_label(format!("ag3q({q})")))
}

/// Parameters of a strongly regular graph `srg(n, r, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: usize,
    pub r: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl SrgParams {
    pub fn new(n: usize, r: usize, alpha: usize, beta: usize) -> Result<SrgParams, FamilyError> {
        let p = SrgParams { n, r, alpha, beta };
        let (ni, ri, ai, bi) = (n as i64, r as i64, alpha as i64, beta as i64);
        if !(r < n && alpha <= r && beta <= r) || ri * (ri - ai - 1) != (ni - ri - 1) * bi {
            return Err(FamilyError::Infeasible(p.to_string()));
        }
        Ok(p)
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.r, self.alpha, self.beta)
    }
}

/// Spectrum implied by strongly regular parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrgSpectrum {
    Integral(ExactSpectrum),
    /// Conference-type parameters: eigenvalues `(α − β ± √Δ)/2`, each of
    /// multiplicity `(n − 1)/2`.
    Irrational { discriminant: u64, multiplicity: usize },
}

pub fn srg_spectrum(p: SrgParams) -> Result<SrgSpectrum, FamilyError> {
    let infeasible = || FamilyError::Infeasible(p.to_string());
    let (n, r, a, b) = (p.n as i64, p.r as i64, p.alpha as i64, p.beta as i64);
    let disc = (a - b) * (a - b) + 4 * (r - b);
    if disc <= 0 {
        return Err(infeasible());
    }
    let skew = 2 * r + (n - 1) * (a - b);
    match is_perfect_square(disc as u64) {
        Some(s) => {
            let s = s as i64;
            let (l2, l3) = ((a - b + s) / 2, (a - b - s) / 2);
            if skew % s != 0 || (n - 1 - skew / s) % 2 != 0 {
                return Err(infeasible());
            }
            let m2 = (n - 1 - skew / s) / 2;
            let m3 = (n - 1 + skew / s) / 2;
            if m2 < 0 || m3 < 0 {
                return Err(infeasible());
            }
            let s = ExactSpectrum::integral(&[(r, 1), (l2, m2 as usize), (l3, m3 as usize)]).map_err(|_| infeasible())?;
            Ok(SrgSpectrum::Integral(s))
        }
        None if skew == 0 && (n - 1) % 2 == 0 => {
            Ok(SrgSpectrum::Irrational { discriminant: disc as u64, multiplicity: ((n - 1) / 2) as usize })
        }
        None => Err(infeasible()),
    }
}

/// `cone(base)` after checking that `base` is `srg(α³+2α², α²+α, α, α)`.
pub fn cone_family(base: &Graph, alpha: usize) -> Result<Graph, FamilyError> {
    let a = alpha;
    let expected = SrgParams { n: a * a * a + 2 * a * a, r: a * a + a, alpha: a, beta: a };
    match detect_srg(base) {
        Some(p) if p == expected => Ok(base.cone()?),
        found => Err(FamilyError::SrgMismatch {
            expected: expected.to_string(),
            found: found.map_or_else(|| "no srg".to_string(), |p| p.to_string()),
        }),
    }
}

/// The spectrum that a cone over `srg(α³+2α², α²+α, α, α)` must have.
pub fn cone_family_spectrum(alpha: usize) -> ExactSpectrum {
    let a = alpha as i64;
    ExactSpectrum::integral(&[
        (a * a + 2 * a, 1),
        (a, ((a * a * a + 2 * a * a - a - 2) / 2) as usize),
        (-a, ((a * a * a + 2 * a * a + a + 2) / 2) as usize),
    ])
    .expect("traceless by construction")
}

const BCS9_EDGES: [(usize, usize); 24] = [
    (0, 1), (0, 2), (0, 6), (0, 7), (1, 7), (1, 8), (1, 11), (2, 3), (2, 6), (2, 9), (3, 5), (3, 6),
    (3, 11), (4, 5), (4, 9), (4, 10), (4, 11), (5, 7), (5, 11), (6, 10), (7, 8), (8, 9), (8, 10), (9, 10),
];

/// The 4-regular graph on 12 vertices cospectral with, but not isomorphic to,
/// `L(Q₃)`. Fixed adjacency table from an external catalog.
pub fn bcs9() -> Graph {
    Graph::from_edges(12, &BCS9_EDGES).expect("fixed table").with_label("BCS9")
}

/// `H(3,3) = K₃ □ K₃ □ K₃`.
pub fn hamming_3_3() -> Graph {
    let k3 = Graph::complete(3).expect("fixed order");
    k3.cartesian_product(&k3)
        .and_then(|g| g.cartesian_product(&k3))
        .expect("fixed order")
        .with_label("H(3,3)")
}

/// A named graph with its recipe and, when known, its expected spectrum.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub recipe: &'static str,
    pub graph: Graph,
    pub expected: ExactSpectrum,
}

struct EntryDef {
    key: &'static str,
    recipe: &'static str,
    spectrum: &'static [(i64, usize)],
}

const ENTRY_DEFS: &[EntryDef] = &[
    EntryDef { key: "shrikhande", recipe: "catalog:shrikhande", spectrum: &[(6, 1), (2, 6), (-2, 9)] },
    EntryDef { key: "l2_4", recipe: "line(kpq(4,4))", spectrum: &[(6, 1), (2, 6), (-2, 9)] },
    EntryDef { key: "cone_shrikhande", recipe: "cone(catalog:shrikhande)", spectrum: &[(8, 1), (2, 6), (-2, 10)] },
    EntryDef { key: "cone_l2_4", recipe: "cone(line(kpq(4,4)))", spectrum: &[(8, 1), (2, 6), (-2, 10)] },
    EntryDef { key: "ag32", recipe: "ag3q(2)", spectrum: &[(14, 1), (2, 7), (-2, 14)] },
    EntryDef { key: "ag33", recipe: "ag3q(3)", spectrum: &[(39, 1), (3, 26), (-3, 39)] },
    EntryDef { key: "petersen", recipe: "complement(line(complete(5)))", spectrum: &[(3, 1), (1, 5), (-2, 4)] },
    EntryDef { key: "Q3", recipe: "kminus(4)", spectrum: &[(3, 1), (1, 3), (-1, 3), (-3, 1)] },
    EntryDef { key: "CP3", recipe: "multipartite(2,2,2)", spectrum: &[(4, 1), (0, 3), (-2, 2)] },
    EntryDef { key: "LK6", recipe: "line(complete(6))", spectrum: &[(8, 1), (2, 5), (-2, 9)] },
    EntryDef { key: "table2/LQ3", recipe: "line(kminus(4))", spectrum: &[(4, 1), (2, 3), (0, 3), (-2, 5)] },
    EntryDef { key: "table2/BCS9", recipe: "catalog:table2/BCS9", spectrum: &[(4, 1), (2, 3), (0, 3), (-2, 5)] },
    EntryDef { key: "table2/LCP3", recipe: "line(multipartite(2,2,2))", spectrum: &[(6, 1), (2, 3), (0, 2), (-2, 6)] },
    EntryDef {
        key: "table2/K33xK3c",
        recipe: "complement(cartesian(kpq(3,3),complete(3)))",
        spectrum: &[(12, 1), (3, 2), (0, 9), (-3, 6)],
    },
    EntryDef { key: "table2/LQ3xJ2", recipe: "tensorJ(line(kminus(4)),2)", spectrum: &[(8, 1), (4, 3), (0, 15), (-4, 5)] },
    EntryDef { key: "table2/BCS9xJ2", recipe: "tensorJ(catalog:table2/BCS9,2)", spectrum: &[(8, 1), (4, 3), (0, 15), (-4, 5)] },
    EntryDef {
        key: "table2/LCP3xJ2",
        recipe: "tensorJ(line(multipartite(2,2,2)),2)",
        spectrum: &[(12, 1), (4, 3), (0, 14), (-4, 6)],
    },
    EntryDef {
        key: "table2/H33",
        recipe: "cartesian(cartesian(complete(3),complete(3)),complete(3))",
        spectrum: &[(6, 1), (3, 6), (0, 12), (-3, 8)],
    },
    EntryDef {
        key: "table2/H33d3c",
        recipe: "complement(distance(cartesian(cartesian(complete(3),complete(3)),complete(3)),3))",
        spectrum: &[(18, 1), (3, 6), (0, 8), (-3, 12)],
    },
    EntryDef {
        key: "table2/H33d2",
        recipe: "distance(cartesian(cartesian(complete(3),complete(3)),complete(3)),2)",
        spectrum: &[(12, 1), (3, 8), (0, 6), (-3, 12)],
    },
    EntryDef { key: "table2/LK6xJ2", recipe: "tensorJ(line(complete(6)),2)", spectrum: &[(16, 1), (4, 5), (0, 15), (-4, 9)] },
];

/// Keys accepted by [`catalog_graph`], in catalog order.
pub fn catalog_keys() -> Vec<&'static str> {
    let mut keys: Vec<&'static str> = ENTRY_DEFS.iter().map(|s| s.key).collect();
    keys.push("heawood");
    keys
}

fn build(key: &str) -> Option<Graph> {
    let line = |g: Graph| g.line_graph().expect("nonempty");
    let g = match key {
        "shrikhande" => shrikhande(),
        "l2_4" => lattice_l2_4(),
        "cone_shrikhande" => shrikhande().cone().ok()?,
        "cone_l2_4" => lattice_l2_4().cone().ok()?,
        "ag32" => ag32_graph(),
        "ag33" => ag3q_family(3).ok()?,
        "petersen" => petersen(),
        "heawood" => incidence_graph(&fano_plane()),
        "Q3" => Graph::k_minus(4).ok()?,
        "CP3" => Graph::complete_multipartite(&[2, 2, 2]).ok()?,
        "LK6" => line(Graph::complete(6).ok()?),
        "table2/LQ3" => line(Graph::k_minus(4).ok()?),
        "table2/BCS9" => bcs9(),
        "table2/LCP3" => line(Graph::complete_multipartite(&[2, 2, 2]).ok()?),
        "table2/K33xK3c" => Graph::complete_bipartite(3, 3).ok()?.cartesian_product(&Graph::complete(3).ok()?).ok()?.complement(),
        "table2/LQ3xJ2" => line(Graph::k_minus(4).ok()?).tensor_j(2).ok()?,
        "table2/BCS9xJ2" => bcs9().tensor_j(2).ok()?,
        "table2/LCP3xJ2" => line(Graph::complete_multipartite(&[2, 2, 2]).ok()?).tensor_j(2).ok()?,
        "table2/H33" => hamming_3_3(),
        "table2/H33d3c" => hamming_3_3().distance_graph(3).ok()?.complement(),
        "table2/H33d2" => hamming_3_3().distance_graph(2).ok()?,
        "table2/LK6xJ2" => line(Graph::complete(6).ok()?).tensor_j(2).ok()?,
        _ => return None,
    };
    Some(g.with_label(key))
}

/// The catalog graph stored under `key`.
pub fn catalog_graph(key: &str) -> Result<Graph, FamilyError> {
    build(key).ok_or_else(|| FamilyError::UnknownKey(key.to_string()))
}

fn heawood_entry() -> CatalogEntry {
    let s2 = ExactEigenvalue::surd(1, 2);
    CatalogEntry {
        key: "heawood",
        recipe: "catalog:heawood",
        graph: incidence_graph(&fano_plane()).with_label("heawood"),
        expected: ExactSpectrum::new([
            (ExactEigenvalue::Integer(3), 1),
            (s2, 6),
            (s2.neg(), 6),
            (ExactEigenvalue::Integer(-3), 1),
        ])
        .expect("traceless"),
    }
}

/// Every catalog entry with its expected spectrum.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = ENTRY_DEFS
        .iter()
        .map(|s| CatalogEntry {
            key: s.key,
            recipe: s.recipe,
            graph: build(s.key).expect("every catalog key builds"),
            expected: ExactSpectrum::integral(s.spectrum).expect("catalog spectra are traceless"),
        })
        .collect();
    out.push(heawood_entry());
    out
}

/// The constructible rows of the table of regular graphs with four distinct
/// eigenvalues, each with its printed spectrum.
pub fn table2_catalog() -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.key.starts_with("table2/")).collect()
}
