//! DIMACS .clq clique files: `c` comments, one `p edge <n> <m>` line, edge
//! lines `e <u> <v>` with 1-based endpoints.

use crate::clique::{Graph, GraphError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DimacsError {
    #[error("missing `p edge <n> <m>` line")]
    MissingProblemLine,
    #[error("line {0}: malformed `{1}`")]
    Malformed(usize, String),
    #[error("line {0}: vertex {1} out of range 1..={2}")]
    VertexOutOfRange(usize, u32, usize),
    #[error("line {0}: self-loop on vertex {1}")]
    SelfLoop(usize, u32),
}

#[derive(Debug)]
pub struct DimacsParse {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_dimacs_clique(text: &str) -> Result<DimacsParse, DimacsError> {
    let mut size: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let no = no + 1;
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                let malformed = || DimacsError::Malformed(no, line.to_string());
                let _format = fields.next().ok_or_else(malformed)?;
                let n = fields.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                let m = fields.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                size = Some((n, m));
            }
            Some("e") => {
                let (n, _) = size.ok_or(DimacsError::MissingProblemLine)?;
                let malformed = || DimacsError::Malformed(no, line.to_string());
                let u: u32 = fields.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                let v: u32 = fields.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                for w in [u, v] {
                    if w == 0 || w as usize > n {
                        return Err(DimacsError::VertexOutOfRange(no, w, n));
                    }
                }
                if u == v {
                    return Err(DimacsError::SelfLoop(no, u));
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(DimacsError::Malformed(no, line.to_string())),
        }
    }
    let (n, declared_m) = size.ok_or(DimacsError::MissingProblemLine)?;
    let graph = match Graph::from_edges(n, &edges) {
        Ok(g) => g,
        Err(GraphError::SelfLoop(_)) | Err(GraphError::VertexOutOfRange(..)) => {
            unreachable!("endpoints validated per line")
        }
    };
    let distinct = graph.edges().len();
    let mut warnings = Vec::new();
    if distinct != declared_m {
        warnings.push(format!(
            "declared {declared_m} edges but found {distinct} distinct"
        ));
    }
    Ok(DimacsParse { graph, warnings })
}

pub fn serialise_dimacs(graph: &Graph) -> String {
    let edges = graph.edges();
    let mut out = format!("p edge {} {}\n", graph.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
