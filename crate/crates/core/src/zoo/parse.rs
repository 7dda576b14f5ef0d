//! Plain-text instance files.
//!
//! One declaration per file; blank lines and `#` comments are ignored.
//!
//! ```text
//! uniform <n> <r>
//!
//! partition
//! part <capacity> <id> <id> ...      # ids must partition 0..n
//!
//! graph <vertices>                   # graphic matroid
//! cograph <vertices>                 # cographic matroid of the same graph
//! <edge-name> <u> <v>                # one line per edge, ids in file order
//!
//! matrix <R>x<C> [gf2]
//! <C rational literals: p/q, integers or decimals>   # R rows
//!
//! dsum
//! <path>                             # one included file per line, relative
//!                                    # to the including file
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::{
    CographicMatroid, Field, GraphicMatroid, LinearMatroid, Multigraph, PartitionMatroid,
    UniformMatroid,
};
use crate::error::{Error, Result};
use crate::matroid::{DirectSum, SharedMatroid};
use crate::rational::parse_rational;

const MAX_INCLUDE_DEPTH: usize = 16;

/// A parsed instance, keeping the structure some algorithms need (graphs, matrices).
#[derive(Debug, Clone)]
pub enum Instance {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Graphic(GraphicMatroid),
    Cographic(CographicMatroid),
    Linear(LinearMatroid),
    DirectSum(Vec<Instance>),
}

impl Instance {
    pub fn oracle(&self) -> SharedMatroid {
        match self {
            Instance::Uniform(m) => Arc::new(*m),
            Instance::Partition(m) => Arc::new(m.clone()),
            Instance::Graphic(m) => Arc::new(m.clone()),
            Instance::Cographic(m) => Arc::new(m.clone()),
            Instance::Linear(m) => Arc::new(m.clone()),
            Instance::DirectSum(parts) => {
                Arc::new(DirectSum::new(parts.iter().map(Instance::oracle).collect()))
            }
        }
    }

    /// The underlying graph of a graphic or cographic instance.
    pub fn graph(&self) -> Option<&Multigraph> {
        match self {
            Instance::Graphic(m) => Some(m.graph()),
            Instance::Cographic(m) => Some(m.graph()),
            _ => None,
        }
    }

    pub fn matrix(&self) -> Option<&LinearMatroid> {
        match self {
            Instance::Linear(m) => Some(m),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Uniform(_) => "uniform",
            Instance::Partition(_) => "partition",
            Instance::Graphic(_) => "graph",
            Instance::Cographic(_) => "cograph",
            Instance::Linear(_) => "matrix",
            Instance::DirectSum(_) => "dsum",
        }
    }
}

pub fn parse_instance_file(path: &Path) -> Result<Instance> {
    parse_file_at_depth(path, 0)
}

/// Parses a matroid file into an oracle.
pub fn parse_matroid(path: &Path) -> Result<SharedMatroid> {
    parse_instance_file(path).map(|i| i.oracle())
}

/// Parses file contents; `dsum` paths resolve against `base_dir` (or the
/// working directory when `None`).
pub fn parse_instance(text: &str, base_dir: Option<&Path>) -> Result<Instance> {
    parse_at_depth(text, base_dir, 0)
}

fn parse_file_at_depth(path: &Path, depth: usize) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_at_depth(&text, path.parent(), depth)
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| err(line, format!("expected {what}, found {token:?}")))
}

fn parse_at_depth(text: &str, base_dir: Option<&Path>, depth: usize) -> Result<Instance> {
    if depth > MAX_INCLUDE_DEPTH {
        return Err(err(0, "dsum includes nested too deeply"));
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| err(0, "empty matroid file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let body: Vec<(usize, &str)> = lines.collect();
    let no_body = |kind: &str| -> Result<()> {
        match body.first() {
            Some(&(line, _)) => Err(err(line, format!("unexpected line after `{kind}` declaration"))),
            None => Ok(()),
        }
    };
    match tokens.as_slice() {
        ["uniform", n, r] => {
            no_body("uniform")?;
            let n = parse_usize(n, header_line, "element count")?;
            let r = parse_usize(r, header_line, "rank")?;
            UniformMatroid::new(n, r)
                .map(Instance::Uniform)
                .map_err(|e| err(header_line, e.to_string()))
        }
        ["partition"] => {
            let mut parts = Vec::new();
            for &(line, l) in &body {
                let t: Vec<&str> = l.split_whitespace().collect();
                match t.as_slice() {
                    ["part", cap, ids @ ..] => {
                        let cap = parse_usize(cap, line, "capacity")?;
                        let ids = ids
                            .iter()
                            .map(|id| parse_usize(id, line, "element id"))
                            .collect::<Result<Vec<_>>>()?;
                        if cap > ids.len() {
                            return Err(err(
                                line,
                                format!("capacity {cap} exceeds part size {}", ids.len()),
                            ));
                        }
                        parts.push((ids, cap));
                    }
                    _ => return Err(err(line, format!("expected `part <cap> <ids...>`, found {l:?}"))),
                }
            }
            PartitionMatroid::new(parts)
                .map(Instance::Partition)
                .map_err(|e| err(header_line, e.to_string()))
        }
        [kind @ ("graph" | "cograph"), vertices] => {
            let vertices = parse_usize(vertices, header_line, "vertex count")?;
            let mut edges = Vec::new();
            let mut names = Vec::new();
            for &(line, l) in &body {
                let t: Vec<&str> = l.split_whitespace().collect();
                let [name, u, v] = t.as_slice() else {
                    return Err(err(line, format!("expected `<name> <u> <v>`, found {l:?}")));
                };
                let u = parse_usize(u, line, "vertex")?;
                let v = parse_usize(v, line, "vertex")?;
                if u >= vertices || v >= vertices {
                    return Err(err(line, format!("vertex out of range 0..{vertices}")));
                }
                if names.iter().any(|n: &String| n == name) {
                    return Err(err(line, format!("duplicate edge name {name:?}")));
                }
                edges.push((u, v));
                names.push(name.to_string());
            }
            let g = Multigraph::new(vertices, edges, names)?;
            Ok(if *kind == "graph" {
                Instance::Graphic(GraphicMatroid::new(g))
            } else {
                Instance::Cographic(CographicMatroid::new(g))
            })
        }
        ["matrix", dims, rest @ ..] => {
            let field = match rest {
                [] => Field::Rational,
                ["gf2"] => Field::Gf2,
                _ => return Err(err(header_line, "expected `matrix RxC [gf2]`")),
            };
            let (r, c) = dims
                .split_once('x')
                .ok_or_else(|| err(header_line, format!("expected RxC dimensions, found {dims:?}")))?;
            let rows = parse_usize(r, header_line, "row count")?;
            let cols = parse_usize(c, header_line, "column count")?;
            if body.len() != rows {
                return Err(err(header_line, format!("declared {rows} rows, found {}", body.len())));
            }
            let mut entries = Vec::with_capacity(rows * cols);
            for &(line, l) in &body {
                let row: Vec<&str> = l.split_whitespace().collect();
                if row.len() != cols {
                    return Err(err(line, format!("expected {cols} entries, found {}", row.len())));
                }
                for token in row {
                    entries.push(parse_rational(token).map_err(|e| err(line, e.to_string()))?);
                }
            }
            LinearMatroid::new(rows, cols, entries, field)
                .map(Instance::Linear)
                .map_err(|e| err(header_line, e.to_string()))
        }
        ["dsum"] => {
            let mut parts = Vec::new();
            for &(line, l) in &body {
                let path: PathBuf = match base_dir {
                    Some(dir) => dir.join(l),
                    None => PathBuf::from(l),
                };
                let part = parse_file_at_depth(&path, depth + 1).map_err(|e| match e {
                    Error::Io { path, message } => err(line, format!("cannot read {path}: {message}")),
                    other => other,
                })?;
                parts.push(part);
            }
            Ok(Instance::DirectSum(parts))
        }
        _ => Err(err(header_line, format!("unknown directive {header:?}"))),
    }
}
