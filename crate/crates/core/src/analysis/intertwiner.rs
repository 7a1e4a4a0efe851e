use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{ModuleRealization, SPANNING_GENERATORS};
use crate::scalar::Scalar;

/// A module map `M → N` on the interior window, one matrix per weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerMap {
    pub per_weight: BTreeMap<i64, Matrix>,
    pub invertible: bool,
}

impl IntertwinerMap {
    pub fn total_rank(&self) -> usize {
        self.per_weight.values().map(Matrix::rank).sum()
    }

    pub fn to_json(&self) -> Value {
        let per_weight: serde_json::Map<String, Value> = self
            .per_weight
            .iter()
            .map(|(k, t)| {
                (
                    k.to_string(),
                    json!({
                        "rows": t.rows(),
                        "cols": t.cols(),
                        "entries": t.entries().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    }),
                )
            })
            .collect();
        json!({"perWeight": per_weight, "invertible": self.invertible})
    }
}

/// Offsets of the unknown blocks `T_k` (row-major, `dim N_k × dim M_k`) in the
/// flattened unknown vector.
struct Layout {
    offsets: BTreeMap<i64, usize>,
    total: usize,
}

impl Layout {
    fn new(m: &ModuleRealization, n: &ModuleRealization) -> Self {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for k in m.window().interior() {
            offsets.insert(k, total);
            total += n.dim(k) * m.dim(k);
        }
        Layout { offsets, total }
    }

    fn var(&self, m: &ModuleRealization, k: i64, r: usize, c: usize) -> usize {
        self.offsets[&k] + r * m.dim(k) + c
    }

    fn assemble(&self, m: &ModuleRealization, n: &ModuleRealization, x: &[Scalar]) -> BTreeMap<i64, Matrix> {
        self.offsets
            .iter()
            .map(|(&k, &off)| {
                let (rows, cols) = (n.dim(k), m.dim(k));
                let data: Vec<Vec<Scalar>> =
                    (0..rows).map(|r| x[off + r * cols..off + (r + 1) * cols].to_vec()).collect();
                (k, Matrix::from_rows_with_width(data, cols))
            })
            .collect()
    }
}

/// Solves `T_{k+i} L_i^M = L_i^N T_k` for `i ∈ {±1, ±2}` over the interior
/// window and returns a solution of maximal total rank, scaled so that its
/// first nonzero entry is 1. `None` if only the zero map exists.
pub fn find_intertwiner(m: &ModuleRealization, n: &ModuleRealization) -> Result<Option<IntertwinerMap>> {
    if m.window() != n.window() {
        return Err(Error::Incompatible("intertwiner needs both modules on the same window".into()));
    }
    let layout = Layout::new(m, n);
    let w = m.window();
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for k in w.interior() {
        for i in SPANNING_GENERATORS.into_iter().filter(|&i| i != 0) {
            let t = k + i;
            if !w.in_interior(t) {
                continue;
            }
            let (Some(am), Some(an)) = (m.action(i, k), n.action(i, k)) else {
                continue;
            };
            // entry (r, c) of T_t·A^M − A^N·T_k, with T_t: M_t → N_t and T_k: M_k → N_k
            for r in 0..n.dim(t) {
                for c in 0..m.dim(k) {
                    let mut row = vec![Scalar::zero(); layout.total];
                    for s in 0..m.dim(t) {
                        let coeff = am.get(s, c);
                        if !coeff.is_zero() {
                            let v = layout.var(m, t, r, s);
                            row[v] = &row[v] + coeff;
                        }
                    }
                    for s in 0..n.dim(k) {
                        let coeff = an.get(r, s);
                        if !coeff.is_zero() {
                            let v = layout.var(m, k, s, c);
                            row[v] = &row[v] - coeff;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        equations.push(row);
                    }
                }
            }
        }
    }
    let solutions = if equations.is_empty() {
        (0..layout.total)
            .map(|v| {
                let mut e = vec![Scalar::zero(); layout.total];
                e[v] = Scalar::one();
                e
            })
            .collect()
    } else {
        Matrix::from_rows_with_width(equations, layout.total).kernel()
    };
    if solutions.is_empty() {
        return Ok(None);
    }

    let full_rank: usize = w.interior().map(|k| m.dim(k).min(n.dim(k))).sum();
    let mut best: Option<(usize, BTreeMap<i64, Matrix>)> = None;
    // combinations along the moment curve Σ t^j x_j reach the generic rank
    for t in 1..=(solutions.len() as i64 + 1) {
        let mut x = vec![Scalar::zero(); layout.total];
        let mut power = Scalar::one();
        for sol in &solutions {
            for (xi, si) in x.iter_mut().zip(sol) {
                *xi = &*xi + &(&power * si);
            }
            power = &power * &Scalar::from_int(t);
        }
        let blocks = layout.assemble(m, n, &x);
        let rank: usize = blocks.values().map(Matrix::rank).sum();
        if best.as_ref().is_none_or(|(r, _)| rank > *r) {
            best = Some((rank, blocks));
        }
        if rank == full_rank {
            break;
        }
    }
    let (_, mut blocks) = best.expect("at least one candidate");
    let pivot = blocks
        .values()
        .flat_map(|b| b.entries().iter())
        .find(|x| !x.is_zero())
        .cloned()
        .expect("a nonzero kernel vector gives a nonzero map");
    let inv = pivot.inv()?;
    for b in blocks.values_mut() {
        *b = b.scale(&inv);
    }
    let invertible = blocks.values().all(|b| b.rows() == b.cols() && b.is_invertible());
    Ok(Some(IntertwinerMap { per_weight: blocks, invertible }))
}
