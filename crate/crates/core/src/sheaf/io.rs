use std::fmt::Write as _;

use serde::Serialize;

use crate::exactalg::{Rational, SparseVec};
use crate::Result;

use super::{block_layout, stalk_poincare, GammaSheaf};

#[derive(Serialize)]
struct VertexDump {
    id: String,
    generator_degrees: Vec<usize>,
}

#[derive(Serialize)]
struct EdgeDump {
    lower: String,
    upper: String,
    alpha: Vec<String>,
    generator_degrees: Vec<usize>,
}

#[derive(Serialize)]
struct RhoDump {
    vertex: String,
    edge: [String; 2],
    /// Row `i`, column `j`: component `i` of the image of source generator `j`.
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct SheafDump {
    dim_t: usize,
    vertices: Vec<VertexDump>,
    edges: Vec<EdgeDump>,
    rho: Vec<RhoDump>,
}

fn rho_entries(sheaf: &GammaSheaf, x: usize, e: usize) -> Vec<Vec<String>> {
    let ring = sheaf.edge_ring(e);
    let tgt = sheaf.edge_generators(e);
    let src = sheaf.vertex_generators(x);
    let images = &sheaf.rho(x, e).images;
    tgt.iter()
        .enumerate()
        .map(|(i, &di)| {
            src.iter()
                .enumerate()
                .map(|(j, &dj)| {
                    if di > dj {
                        return "0".to_string();
                    }
                    let (offs, _) = block_layout(ring.nvars(), tgt, dj);
                    let c: SparseVec = images[j].slice(offs[i].unwrap(), ring.dim(dj - di));
                    ring.format(dj - di, &c)
                })
                .collect()
        })
        .collect()
}

/// JSON dump: generator degrees per vertex and edge, edge directions, and
/// every restriction map as a matrix of polynomials in the edge ring's
/// variables.
pub fn sheaf_json(sheaf: &GammaSheaf) -> Result<String> {
    let g = sheaf.graph();
    let vertices = (0..g.num_vertices())
        .map(|x| VertexDump { id: g.label(x).to_string(), generator_degrees: sheaf.vertex_generators(x).to_vec() })
        .collect();
    let mut edges = Vec::new();
    let mut rho = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let names = [g.label(edge.lower).to_string(), g.label(edge.upper).to_string()];
        edges.push(EdgeDump {
            lower: names[0].clone(),
            upper: names[1].clone(),
            alpha: edge.direction.iter().map(|&c| Rational::from_integer(c).to_string()).collect(),
            generator_degrees: sheaf.edge_generators(e).to_vec(),
        });
        for x in [edge.lower, edge.upper] {
            rho.push(RhoDump { vertex: g.label(x).to_string(), edge: names.clone(), matrix: rho_entries(sheaf, x, e) });
        }
    }
    let dump = SheafDump { dim_t: g.dim_t(), vertices, edges, rho };
    Ok(serde_json::to_string_pretty(&dump)?)
}

/// CSV of stalk Poincaré polynomials: `x,y,poly` with `y` the top vertex.
pub fn poincare_csv(sheaf: &GammaSheaf) -> Result<String> {
    let g = sheaf.graph();
    let top = g.unique_maximal()?;
    let mut s = String::from("x,y,poly\n");
    for x in 0..g.num_vertices() {
        writeln!(s, "{},{},{}", g.label(x), g.label(top), stalk_poincare(sheaf, x)).unwrap();
    }
    Ok(s)
}
