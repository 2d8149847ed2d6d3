//! Moment graphs: vertices with a partial order, edges labelled by lines in
//! `t*`, the Schubert-variety builder, subgraph selection, and JSON/DOT I/O.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::WeylGroup;
use crate::exactalg::{Echelon, LinearForm, Rational, SparseVec};
use crate::{Error, Result};

/// An edge `lower < upper` with a primitive integer direction vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub lower: usize,
    pub upper: usize,
    pub direction: Vec<i64>,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.lower {
            self.upper
        } else {
            self.lower
        }
    }

    pub fn alpha(&self) -> LinearForm {
        LinearForm::from_integers(&self.direction)
    }
}

/// Scales a nonzero rational vector to integers with gcd 1 and a positive
/// first nonzero entry.
pub fn normalize_direction(v: &[Rational]) -> Result<Vec<i64>> {
    let den = v.iter().fold(BigInt::from(1), |acc, r| acc.lcm(&r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::Validation("edge direction is the zero vector".into()));
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() { -1 } else { 1 };
    ints.iter()
        .map(|x| (x / &g * BigInt::from(sign)).to_i64())
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::Validation("edge direction entries too large".into()))
}

fn normalize_int_direction(v: &[i64]) -> Result<Vec<i64>> {
    normalize_direction(&v.iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>())
}

/// Which construction produced a graph; decides default degree bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphOrigin {
    /// Schubert variety `X_w` in `G/P_J`.
    Schubert { group: String, parabolic: Vec<usize>, top: String },
    Loaded,
}

#[derive(Clone, Debug)]
pub struct MomentGraph {
    dim_t: usize,
    labels: Vec<String>,
    ranks: Vec<Option<u32>>,
    edges: Vec<Edge>,
    below: Vec<FixedBitSet>,
    up_edges: Vec<Vec<usize>>,
    down_edges: Vec<Vec<usize>>,
    label_index: HashMap<String, usize>,
    origin: GraphOrigin,
}

/// Vertex and edge subsets of a graph, both sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgraphSelector {
    /// Full subgraph on `{y : y > x}`.
    Above(usize),
    /// `Above(x)` together with the up-edges at `x`.
    AbovePunctured(usize),
    UpEdges(usize),
    DownEdges(usize),
    /// `x` and every edge adjacent to it (the smallest open set containing `x`).
    Star(usize),
    /// The planar piece through `x` for the plane spanned by two vectors.
    Planar(usize, [Vec<Rational>; 2]),
    /// Full subgraph on `{z : x <= z <= y}`.
    Interval(usize, usize),
    Whole,
}

/// A two-dimensional subspace together with the part of the graph it cuts
/// out above a vertex.
#[derive(Clone, Debug)]
pub struct PlanarPiece {
    /// Reduced echelon basis of the plane.
    pub plane: [Vec<Rational>; 2],
    /// Vertices of the connected component through `x` using edges in the plane.
    pub component: Vec<usize>,
    /// The component above `x`, plus the up-edges at `x` lying in the plane.
    pub punctured: Subgraph,
    /// Up-edges at `x` in the plane.
    pub up_edges: Vec<usize>,
}

/// Span of a set of directions, as an echelon basis over `Q`.
pub fn span(dim: usize, dirs: &[&[i64]]) -> Echelon {
    Echelon::from_vectors(
        dim,
        dirs.iter().map(|d| SparseVec::from_pairs(d.iter().enumerate().map(|(i, &x)| (i, Rational::from_integer(x))))),
    )
}

fn int_vec(d: &[i64]) -> SparseVec {
    SparseVec::from_pairs(d.iter().enumerate().map(|(i, &x)| (i, Rational::from_integer(x))))
}

impl MomentGraph {
    /// Validates and assembles a graph. `covers` are pairs `(lower, upper)`
    /// generating the order; edges are `(lower, upper, direction)`.
    pub fn new(
        dim_t: usize,
        labels: Vec<String>,
        ranks: Vec<Option<u32>>,
        covers: &[(usize, usize)],
        edges: Vec<(usize, usize, Vec<Rational>)>,
        origin: GraphOrigin,
    ) -> Result<Self> {
        let nv = labels.len();
        if dim_t == 0 {
            return Err(Error::Validation("dim_t must be positive".into()));
        }
        if ranks.len() != nv {
            return Err(Error::Validation("rank list length mismatch".into()));
        }
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex id {l:?}")));
            }
        }
        // Transitive closure in topological order; leftover vertices mean a cycle.
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &(a, b) in covers {
            if a >= nv || b >= nv {
                return Err(Error::Validation("cover refers to unknown vertex".into()));
            }
            if a == b {
                return Err(Error::Validation(format!("cover {:?} < {:?} is reflexive", labels[a], labels[b])));
            }
            preds[b].push(a);
            succs[a].push(b);
        }
        let mut indeg: Vec<usize> = preds.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut below: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(nv); nv];
        let mut done = 0;
        while let Some(v) = queue.pop_front() {
            done += 1;
            let mut set = FixedBitSet::with_capacity(nv);
            set.insert(v);
            for &p in &preds[v] {
                set.union_with(&below[p]);
            }
            below[v] = set;
            for &s in &succs[v] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    queue.push_back(s);
                }
            }
        }
        if done != nv {
            return Err(Error::Validation("order relation has a cycle".into()));
        }

        let mut seen_pairs = HashSet::new();
        let mut edge_list = Vec::with_capacity(edges.len());
        for (a, b, dir) in edges {
            if a >= nv || b >= nv {
                return Err(Error::Validation("edge refers to unknown vertex".into()));
            }
            let name = format!("{}--{}", labels[a], labels[b]);
            if dir.len() != dim_t {
                return Err(Error::Validation(format!("edge {name}: direction has {} entries, expected {dim_t}", dir.len())));
            }
            if a == b || !below[b].contains(a) {
                return Err(Error::Validation(format!(
                    "edge {name}: endpoints are not strictly comparable with lower < upper"
                )));
            }
            if !seen_pairs.insert((a, b)) {
                return Err(Error::Validation(format!("edge {name} appears twice")));
            }
            let direction =
                normalize_direction(&dir).map_err(|e| Error::Validation(format!("edge {name}: {e}")))?;
            edge_list.push(Edge { lower: a, upper: b, direction });
        }
        edge_list.sort_by_key(|e| (e.lower, e.upper));

        let mut up_edges: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut down_edges: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (i, e) in edge_list.iter().enumerate() {
            up_edges[e.lower].push(i);
            down_edges[e.upper].push(i);
        }
        // Fixed component order for M(U_x): (upper vertex, direction).
        for ue in up_edges.iter_mut() {
            ue.sort_by(|&a, &b| (edge_list[a].upper, &edge_list[a].direction).cmp(&(edge_list[b].upper, &edge_list[b].direction)));
        }
        Ok(MomentGraph { dim_t, labels, ranks, edges: edge_list, below, up_edges, down_edges, label_index, origin })
    }

    pub fn dim_t(&self) -> usize {
        self.dim_t
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.label_index.get(label).copied().ok_or_else(|| Error::Validation(format!("unknown vertex {label:?}")))
    }

    pub fn rank(&self, v: usize) -> Option<u32> {
        self.ranks[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn origin(&self) -> &GraphOrigin {
        &self.origin
    }

    pub fn is_schubert(&self) -> bool {
        matches!(self.origin, GraphOrigin::Schubert { .. })
    }

    /// `x <= y` in the vertex order.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `U_x`, in the fixed component order.
    pub fn up_edges(&self, x: usize) -> &[usize] {
        &self.up_edges[x]
    }

    /// `D_x`.
    pub fn down_edges(&self, x: usize) -> &[usize] {
        &self.down_edges[x]
    }

    pub fn incident_edges(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.up_edges[x].iter().chain(&self.down_edges[x]).copied().collect();
        v.sort_unstable();
        v
    }

    pub fn maximal_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| (0..self.num_vertices()).all(|u| u == v || !self.leq(v, u)))
            .collect()
    }

    /// The unique maximal vertex, required by the canonical-sheaf construction.
    pub fn unique_maximal(&self) -> Result<usize> {
        match self.maximal_vertices().as_slice() {
            [v] => Ok(*v),
            vs => Err(Error::Validation(format!(
                "canonical sheaf needs a unique maximal vertex, found {}: {:?}",
                vs.len(),
                vs.iter().map(|&v| self.label(v)).collect::<Vec<_>>()
            ))),
        }
    }

    /// Vertices sorted so that every vertex precedes everything above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.num_vertices()).collect();
        v.sort_by_key(|&x| (self.below[x].count_ones(..), x));
        v
    }

    /// Length of the longest chain ending at each vertex.
    pub fn poset_ranks(&self) -> Vec<u32> {
        let mut r = vec![0u32; self.num_vertices()];
        for v in self.linear_extension() {
            for u in self.below[v].ones() {
                if u != v {
                    r[v] = r[v].max(r[u] + 1);
                }
            }
        }
        r
    }

    /// Covering pairs `(lower, upper)` of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        for b in 0..n {
            for a in self.below[b].ones() {
                if a == b {
                    continue;
                }
                let between = self.below[b].ones().any(|c| c != a && c != b && self.leq(a, c));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::Validation(format!("unknown vertex index {x}")))
        }
    }

    fn full_subgraph(&self, vertices: Vec<usize>) -> Subgraph {
        let set: HashSet<usize> = vertices.iter().copied().collect();
        let edges = (0..self.num_edges())
            .filter(|&e| set.contains(&self.edges[e].lower) && set.contains(&self.edges[e].upper))
            .collect();
        Subgraph { vertices, edges }
    }

    pub fn select(&self, sel: &SubgraphSelector) -> Result<Subgraph> {
        match sel {
            SubgraphSelector::Whole => {
                Ok(Subgraph { vertices: (0..self.num_vertices()).collect(), edges: (0..self.num_edges()).collect() })
            }
            SubgraphSelector::Above(x) => {
                self.check_vertex(*x)?;
                Ok(self.full_subgraph((0..self.num_vertices()).filter(|&y| self.lt(*x, y)).collect()))
            }
            SubgraphSelector::AbovePunctured(x) => {
                let mut g = self.select(&SubgraphSelector::Above(*x))?;
                g.edges.extend_from_slice(&self.up_edges[*x]);
                g.edges.sort_unstable();
                Ok(g)
            }
            SubgraphSelector::UpEdges(x) => {
                self.check_vertex(*x)?;
                let mut edges = self.up_edges[*x].clone();
                edges.sort_unstable();
                Ok(Subgraph { vertices: Vec::new(), edges })
            }
            SubgraphSelector::DownEdges(x) => {
                self.check_vertex(*x)?;
                Ok(Subgraph { vertices: Vec::new(), edges: self.down_edges[*x].clone() })
            }
            SubgraphSelector::Star(x) => {
                self.check_vertex(*x)?;
                Ok(Subgraph { vertices: vec![*x], edges: self.incident_edges(*x) })
            }
            SubgraphSelector::Interval(x, y) => {
                self.check_vertex(*x)?;
                self.check_vertex(*y)?;
                Ok(self.full_subgraph(self.below[*y].ones().filter(|&z| self.leq(*x, z)).collect()))
            }
            SubgraphSelector::Planar(x, h) => {
                self.check_vertex(*x)?;
                let plane = Echelon::from_vectors(self.dim_t, h.iter().map(|v| SparseVec::from_dense(v)));
                if plane.rank() != 2 {
                    return Err(Error::Validation("plane must be spanned by two independent vectors".into()));
                }
                Ok(self.planar_piece(*x, &plane).punctured)
            }
        }
    }

    /// Builds the piece of the graph cut out by the plane `plane` at `x`:
    /// the connected component through `x` of the edges with directions in
    /// the plane (over the whole graph), restricted to `Γ̃_{>x}`.
    fn planar_piece(&self, x: usize, plane: &Echelon) -> PlanarPiece {
        let in_plane: Vec<bool> = self.edges.iter().map(|e| plane.contains(&int_vec(&e.direction))).collect();
        let mut comp = vec![false; self.num_vertices()];
        comp[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for e in self.incident_edges(v) {
                if in_plane[e] {
                    let u = self.edges[e].other(v);
                    if !comp[u] {
                        comp[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        let component: Vec<usize> = (0..self.num_vertices()).filter(|&v| comp[v]).collect();
        let above: Vec<usize> = component.iter().copied().filter(|&y| self.lt(x, y)).collect();
        let up_edges: Vec<usize> = self.up_edges[x].iter().copied().filter(|&e| in_plane[e]).collect();
        let mut edges: Vec<usize> = (0..self.num_edges())
            .filter(|&e| in_plane[e] && self.lt(x, self.edges[e].lower) && comp[self.edges[e].lower])
            .collect();
        edges.extend_from_slice(&up_edges);
        edges.sort_unstable();
        let basis = plane.basis();
        let plane = [basis[0].to_dense(self.dim_t), basis[1].to_dense(self.dim_t)];
        PlanarPiece { plane, component, punctured: Subgraph { vertices: above, edges }, up_edges }
    }

    /// Planes `H` containing at least one up-edge direction at `x`, with
    /// their pieces. Candidate planes are spans of pairs of edge
    /// directions occurring in `Γ_{>=x}`.
    pub fn planar_family(&self, x: usize) -> Vec<PlanarPiece> {
        let mut dirs: Vec<&[i64]> = Vec::new();
        for e in &self.edges {
            if self.leq(x, e.lower) && !dirs.contains(&e.direction.as_slice()) {
                dirs.push(&e.direction);
            }
        }
        let mut planes: BTreeMap<Vec<SparseVec>, Echelon> = BTreeMap::new();
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                let p = span(self.dim_t, &[dirs[i], dirs[j]]);
                if p.rank() == 2 {
                    planes.entry(p.basis()).or_insert(p);
                }
            }
        }
        planes
            .values()
            .map(|p| self.planar_piece(x, p))
            .filter(|piece| !piece.up_edges.is_empty())
            .collect()
    }

    /// True iff every three distinct up-edges at `x` have directions
    /// spanning a three-dimensional space.
    pub fn finite_two_orbit_test(&self, x: usize) -> bool {
        let u = &self.up_edges[x];
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                for k in j + 1..u.len() {
                    let s = span(
                        self.dim_t,
                        &[&self.edges[u[i]].direction, &self.edges[u[j]].direction, &self.edges[u[k]].direction],
                    );
                    if s.rank() != 3 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Induced full subgraph on the vertices `{z : z <= y}`.
    pub fn lower_interval(&self, y: usize) -> Result<MomentGraph> {
        let keep: Vec<usize> = self.below[y].ones().collect();
        self.induced(&keep)
    }

    /// Induced full subgraph on `keep` with the restricted order.
    pub fn induced(&self, keep: &[usize]) -> Result<MomentGraph> {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let ranks = keep.iter().map(|&v| self.ranks[v]).collect();
        let mut covers = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.lt(a, b) {
                    covers.push((i, j));
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos.contains_key(&e.lower) && pos.contains_key(&e.upper))
            .map(|e| (pos[&e.lower], pos[&e.upper], e.direction.iter().map(|&x| Rational::from_integer(x)).collect()))
            .collect();
        let origin = match &self.origin {
            GraphOrigin::Schubert { group, parabolic, .. } => GraphOrigin::Schubert {
                group: group.clone(),
                parabolic: parabolic.clone(),
                top: keep.iter().max_by_key(|&&v| self.below[v].count_ones(..)).map(|&v| self.labels[v].clone()).unwrap_or_default(),
            },
            GraphOrigin::Loaded => GraphOrigin::Loaded,
        };
        MomentGraph::new(self.dim_t, labels, ranks, &covers, edges, origin)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            dim_t: self.dim_t,
            vertices: (0..self.num_vertices())
                .map(|v| VertexDoc { id: self.labels[v].clone(), rank: self.ranks[v] })
                .collect(),
            order: OrderDoc {
                covers: self.covers().into_iter().map(|(a, b)| [self.labels[a].clone(), self.labels[b].clone()]).collect(),
            },
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    lower: self.labels[e.lower].clone(),
                    upper: self.labels[e.upper].clone(),
                    direction: e.direction.iter().map(|&x| Rational::from_integer(x).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let labels: Vec<String> = doc.vertices.iter().map(|v| v.id.clone()).collect();
        let ranks = doc.vertices.iter().map(|v| v.rank).collect();
        let idx: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |s: &str| idx.get(s).copied().ok_or_else(|| Error::Validation(format!("unknown vertex id {s:?}")));
        let covers = doc
            .order
            .covers
            .iter()
            .map(|[a, b]| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                let dir = e
                    .direction
                    .iter()
                    .map(|s| s.parse::<Rational>().map_err(|err| Error::Validation(format!("edge {}--{}: {err}", e.lower, e.upper))))
                    .collect::<Result<Vec<_>>>()?;
                Ok((look(&e.lower)?, look(&e.upper)?, dir))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = MomentGraph::new(doc.dim_t, labels, ranks, &covers, edges, GraphOrigin::Loaded)?;
        let maxima = g.maximal_vertices();
        if maxima.len() != 1 {
            log::warn!("graph has {} maximal vertices; the canonical sheaf needs exactly one", maxima.len());
        }
        Ok(g)
    }

    /// Loads a graph from its JSON document.
    pub fn load_json(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("graph document does not match the schema: {e}")))?;
        Self::from_document(&doc)
    }

    pub fn save_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph documents serialize")
    }

    /// Graphviz rendering, vertices ranked by poset rank, edges labelled by direction.
    pub fn to_dot(&self) -> String {
        let ranks: Vec<u32> = match self.ranks.iter().copied().collect::<Option<Vec<u32>>>() {
            Some(r) => r,
            None => self.poset_ranks(),
        };
        let mut by_rank: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 0..self.num_vertices() {
            by_rank.entry(ranks[v]).or_default().push(v);
        }
        let mut s = String::from("graph moment_graph {\n  rankdir=BT;\n");
        for (r, vs) in &by_rank {
            let names: Vec<String> = vs.iter().map(|&v| format!("\"{}\"", self.labels[v])).collect();
            writeln!(s, "  {{ rank=same; {}; }} // rank {r}", names.join("; ")).unwrap();
        }
        for e in &self.edges {
            let dir: Vec<String> = e.direction.iter().map(|x| x.to_string()).collect();
            writeln!(s, "  \"{}\" -- \"{}\" [label=\"({})\"];", self.labels[e.lower], self.labels[e.upper], dir.join(","))
                .unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// JSON exchange format of a moment graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub dim_t: usize,
    pub vertices: Vec<VertexDoc>,
    pub order: OrderDoc,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderDoc {
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub lower: String,
    pub upper: String,
    pub direction: Vec<String>,
}

/// Moment graph of the Schubert variety `X_w` in `G/P_J`.
///
/// `w` must be the minimal representative of its coset `w W_J`. Vertices are
/// the minimal representatives `y <= w`; `y` and `z` are joined when
/// `z W_J = t y W_J` for a reflection `t`, with direction `y(v) - z(v)` where
/// `v` is the sum of the fundamental weights outside `J`.
pub fn schubert_moment_graph(w: &WeylGroup, top: usize, parabolic: &[usize]) -> Result<MomentGraph> {
    if let Some(&s) = parabolic.iter().find(|&&s| s >= w.rank()) {
        return Err(Error::Validation(format!("parabolic index {} out of range", s + 1)));
    }
    if !w.is_minimal_in_coset(top, parabolic) {
        return Err(Error::Validation(format!(
            "{} is not the minimal representative of its coset for the parabolic subgroup",
            w.label(top)
        )));
    }
    let n = w.rank();
    let weights = &w.cartan().fundamental_weights;
    let mut v: Vec<Rational> = vec![Rational::ZERO; n];
    for i in (0..n).filter(|i| !parabolic.contains(i)) {
        for k in 0..n {
            v[k] += &weights[i][k];
        }
    }
    // Scale to an integer vector; only the line through y(v) - z(v) matters.
    let vi = normalize_direction(&v).unwrap_or_else(|_| vec![0; n]);

    let vertices: Vec<usize> =
        w.bruhat_interval_below(top).into_iter().filter(|&y| w.is_minimal_in_coset(y, parabolic)).collect();
    let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for &y in &vertices {
        for r in w.reflections() {
            let z = w.minimal_rep(w.multiply(r.element, y), parabolic);
            if z == y || !pos.contains_key(&z) {
                continue;
            }
            let (a, b) = if w.length(y) < w.length(z) { (y, z) } else { (z, y) };
            if !seen.insert((a, b)) {
                continue;
            }
            let diff: Vec<i64> = w.act(y, &vi).iter().zip(w.act(z, &vi)).map(|(p, q)| p - q).collect();
            let dir = normalize_int_direction(&diff)?;
            edges.push((pos[&a], pos[&b], dir.iter().map(|&x| Rational::from_integer(x)).collect()));
        }
    }
    let mut covers = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate() {
            if w.length(b) == w.length(a) + 1 && w.bruhat_leq(a, b) {
                covers.push((i, j));
            }
        }
    }
    let labels = vertices.iter().map(|&y| w.label(y)).collect();
    let ranks = vertices.iter().map(|&y| Some(w.length(y) as u32)).collect();
    let origin = GraphOrigin::Schubert {
        group: w.cartan().name(),
        parabolic: parabolic.to_vec(),
        top: w.label(top),
    };
    MomentGraph::new(n, labels, ranks, &covers, edges, origin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanDatum;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::build(CartanDatum::parse(name).unwrap()).unwrap()
    }

    fn flag_graph(name: &str) -> (WeylGroup, MomentGraph) {
        let w = group(name);
        let g = schubert_moment_graph(&w, w.longest(), &[]).unwrap();
        (w, g)
    }

    #[test]
    fn p1_graph() {
        let (_, g) = flag_graph("A1");
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.edge(0).direction, vec![1]);
    }

    #[test]
    fn sl3_flag_graph() {
        let (_, g) = flag_graph("A2");
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 9);
        let e = g.vertex("e").unwrap();
        assert_eq!(g.up_edges(e).len(), 3);
        assert_eq!(g.up_edges(g.vertex("12").unwrap()).len(), 1);
        assert_eq!(g.up_edges(g.vertex("1").unwrap()).len(), 2);
        assert_eq!(g.unique_maximal().unwrap(), g.vertex("121").unwrap());
        // Directions are the positive roots.
        let mut dirs: Vec<Vec<i64>> = g.edges().iter().map(|e| e.direction.clone()).collect();
        dirs.sort();
        dirs.dedup();
        assert_eq!(dirs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn a3_edge_count_matches_brute_force() {
        let (w, g) = flag_graph("A3");
        let mut pairs = HashSet::new();
        for y in 0..w.len() {
            for r in w.reflections() {
                let z = w.multiply(r.element, y);
                pairs.insert((y.min(z), y.max(z)));
            }
        }
        assert_eq!(pairs.len(), 72);
        assert_eq!(g.num_edges(), 72);
    }

    #[test]
    fn down_degree_is_length() {
        for name in ["A2", "B2", "A3", "G2"] {
            let (w, g) = flag_graph(name);
            for v in 0..g.num_vertices() {
                assert_eq!(g.down_edges(v).len() as u32, g.rank(v).unwrap(), "{name}");
                let y = w.parse_word(g.label(v)).unwrap();
                assert_eq!(w.length(y) as u32, g.rank(v).unwrap());
            }
        }
    }

    #[test]
    fn parabolic_graph_requires_minimal_rep() {
        let w = group("A2");
        let s = w.parse_word("1").unwrap();
        assert!(matches!(schubert_moment_graph(&w, s, &[0]), Err(Error::Validation(_))));
        let g = schubert_moment_graph(&w, w.parse_word("12").unwrap(), &[0]).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn direction_normalization() {
        let r = |n, d| Rational::new(n, d);
        assert_eq!(normalize_direction(&[r(-2, 3), r(4, 3)]).unwrap(), vec![1, -2]);
        assert_eq!(normalize_direction(&[r(0, 1), r(-5, 1)]).unwrap(), vec![0, 1]);
        assert!(normalize_direction(&[r(0, 1), r(0, 1)]).is_err());
        let once = normalize_direction(&[r(6, 1), r(-9, 1)]).unwrap();
        let twice = normalize_int_direction(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn selections() {
        let (_, g) = flag_graph("A2");
        let whole = g.select(&SubgraphSelector::Whole).unwrap();
        assert_eq!((whole.vertices.len(), whole.edges.len()), (6, 9));
        let st = g.vertex("12").unwrap();
        let up = g.select(&SubgraphSelector::UpEdges(st)).unwrap();
        assert_eq!(up.edges.len(), 1);
        assert_eq!(g.edge(up.edges[0]).upper, g.vertex("121").unwrap());
        let s = g.vertex("1").unwrap();
        assert_eq!(g.select(&SubgraphSelector::UpEdges(s)).unwrap().edges.len(), 2);
        for x in 0..6 {
            let above = g.select(&SubgraphSelector::Above(x)).unwrap();
            let expected: Vec<usize> = (0..6).filter(|&y| g.lt(x, y)).collect();
            assert_eq!(above.vertices, expected);
            let punct = g.select(&SubgraphSelector::AbovePunctured(x)).unwrap();
            assert_eq!(punct.vertices, above.vertices);
            assert_eq!(punct.edges.len(), above.edges.len() + g.up_edges(x).len());
            assert!(!punct.vertices.contains(&x));
        }
        assert!(g.select(&SubgraphSelector::Above(17)).is_err());
    }

    #[test]
    fn planar_families() {
        let (_, g) = flag_graph("A1");
        assert!(g.planar_family(0).is_empty());

        let (_, g) = flag_graph("A2");
        let fam = g.planar_family(g.vertex("e").unwrap());
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].component.len(), 6);
        assert_eq!(fam[0].punctured.vertices.len(), 5);
        assert_eq!(fam[0].punctured.edges.len(), 9);

        // Brute force over the 15 pairs of positive roots of A3.
        let (w, g) = flag_graph("A3");
        let roots = w.positive_roots();
        let mut planes = HashSet::new();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                planes.insert(span(3, &[&roots[i], &roots[j]]).basis());
            }
        }
        assert_eq!(planes.len(), 7);
        let fam = g.planar_family(g.vertex("e").unwrap());
        assert_eq!(fam.len(), 7);
        for piece in &fam {
            // Reflection subgroup of a rank-2 subsystem: A2 (6) or A1xA1 (4).
            assert!(matches!(piece.component.len(), 4 | 6), "{}", piece.component.len());
        }
    }

    #[test]
    fn two_orbit_criterion() {
        let (_, g) = flag_graph("A2");
        assert!(!g.finite_two_orbit_test(g.vertex("e").unwrap()));
        assert!(g.finite_two_orbit_test(g.vertex("1").unwrap()));
        let w = group("A3");
        let j = [0, 1];
        let top = *w.minimal_coset_reps(&j).iter().max_by_key(|&&r| w.length(r)).unwrap();
        let g = schubert_moment_graph(&w, top, &j).unwrap();
        assert_eq!(g.num_vertices(), 4);
        for x in 0..g.num_vertices() {
            assert!(g.finite_two_orbit_test(x));
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let (_, g) = flag_graph("A2");
        let text = g.save_json();
        let back = MomentGraph::load_json(&text).unwrap();
        assert_eq!(back.save_json(), text);
        assert_eq!(back.edges(), g.edges());

        let p1 = r#"{"dim_t":1,"vertices":[{"id":"a"},{"id":"b"}],"order":{"covers":[["a","b"]]},
                    "edges":[{"lower":"a","upper":"b","direction":["2/3"]}]}"#;
        let g1 = MomentGraph::load_json(p1).unwrap();
        assert_eq!(g1.num_vertices(), 2);
        assert_eq!(g1.edge(0).direction, vec![1]);

        let bad = r#"{"dim_t":1,"vertices":[{"id":"a"},{"id":"b"},{"id":"c"}],"order":{"covers":[["a","b"],["a","c"]]},
                     "edges":[{"lower":"b","upper":"c","direction":["1"]}]}"#;
        match MomentGraph::load_json(bad) {
            Err(Error::Validation(msg)) => assert!(msg.contains("b--c"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
        let zero = p1.replace("2/3", "0");
        assert!(MomentGraph::load_json(&zero).is_err());
        let cyclic = r#"{"dim_t":1,"vertices":[{"id":"a"},{"id":"b"}],"order":{"covers":[["a","b"],["b","a"]]},"edges":[]}"#;
        assert!(MomentGraph::load_json(cyclic).is_err());
        let extra = p1.replace("\"dim_t\":1", "\"dim_t\":1,\"bogus\":3");
        assert!(MomentGraph::load_json(&extra).is_err());
    }

    #[test]
    fn two_maxima_rejected_for_construction() {
        let doc = r#"{"dim_t":1,"vertices":[{"id":"a"},{"id":"b"},{"id":"c"}],"order":{"covers":[["a","b"],["a","c"]]},
                     "edges":[{"lower":"a","upper":"b","direction":["1"]}]}"#;
        let g = MomentGraph::load_json(doc).unwrap();
        assert_eq!(g.maximal_vertices().len(), 2);
        assert!(g.unique_maximal().is_err());
    }

    #[test]
    fn dot_output() {
        let (_, g) = flag_graph("A2");
        let dot = g.to_dot();
        assert!(dot.contains("\"e\" -- \"1\" [label=\"(1,0)\"]"));
        assert!(dot.contains("{ rank=same; \"12\"; \"21\"; } // rank 2"));
    }
}
