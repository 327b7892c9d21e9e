use std::io::Read;

use latgap::fibration::{build_fibration, make_pka, make_qab, FiberSpec};
use latgap::graphs::edge_polytope;
use latgap::{Arith, Graph, LatticePolytope};
use serde::{Deserialize, Serialize};

use crate::fail::{CliError, CliResult};

pub const MAX_DEPTH: usize = 8;

/// A polytope description, tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Pka { k: u64, a: i64 },
    Qab { a: i64, b: i64 },
    EdgePolytope { graph: Graph },
    Product { factors: Vec<InstanceSpec> },
    Dilate { inner: Box<InstanceSpec>, s: u64 },
    Fibration { base: Box<InstanceSpec>, heights: Vec<[i64; 2]> },
    Explicit { vertices: Vec<Vec<i64>> },
}

impl InstanceSpec {
    /// Parses a JSON document, a path to one, or `-` for standard input.
    pub fn load(arg: &str) -> CliResult<Self> {
        let text = if arg == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            s
        } else if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
        };
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| CliError::Input(format!("instance: {e}")))?;
        if spec.depth() > MAX_DEPTH {
            return Err(CliError::Input(format!("instance nesting deeper than {MAX_DEPTH}")));
        }
        Ok(spec)
    }

    pub fn depth(&self) -> usize {
        match self {
            Self::Product { factors } => 1 + factors.iter().map(Self::depth).max().unwrap_or(0),
            Self::Dilate { inner, .. } => 1 + inner.depth(),
            Self::Fibration { base, .. } => 1 + base.depth(),
            _ => 1,
        }
    }

    pub fn build(&self, arith: Arith) -> CliResult<LatticePolytope> {
        Ok(match self {
            Self::Pka { k, a } => make_pka(*k, *a)?,
            Self::Qab { a, b } => make_qab(*a, *b)?,
            Self::EdgePolytope { graph } => edge_polytope(graph)?,
            Self::Product { factors } => {
                let (first, rest) =
                    factors.split_first().ok_or_else(|| CliError::Input("product without factors".into()))?;
                let mut p = first.build(arith)?;
                for f in rest {
                    p = p.product(&f.build(arith)?)?;
                }
                p
            }
            Self::Dilate { inner, s } => inner.build(arith)?.dilate(*s)?,
            Self::Fibration { base, heights } => build_fibration(&FiberSpec {
                base: base.build(arith)?,
                heights: heights.iter().map(|&[lo, hi]| (lo, hi)).collect(),
            })?,
            Self::Explicit { vertices } => {
                let n = vertices.first().map(Vec::len).ok_or_else(|| CliError::Input("no vertices".into()))?;
                LatticePolytope::new_with(n, vertices.clone(), arith)?
            }
        })
    }

    /// The two factors of a binary product.
    pub fn binary_factors(&self) -> Option<(&InstanceSpec, &InstanceSpec)> {
        match self {
            Self::Product { factors } if factors.len() == 2 => Some((&factors[0], &factors[1])),
            _ => None,
        }
    }
}
