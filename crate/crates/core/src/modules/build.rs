//! Constructors: the intermediate series `A_{a,b}`, `A(a)`, `B(a)` and
//! Verma / anti-Verma modules.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ModuleRealization, WeightWindow, DEFAULT_GEN_BOUND};
use crate::algebra::{Generator, NormalOrderer, PbwMonomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntermediateKind {
    /// `L_i x_k = (a + k + b·i) x_{i+k}`.
    Aab { a: Scalar, b: Scalar },
    /// `L_i x_k = (i + k) x_{i+k}` for `k ≠ 0`, `L_i x_0 = i(i + a) x_i`.
    Aa { a: Scalar },
    /// `L_i x_k = k x_{i+k}` for `k ≠ −i`, `L_i x_{−i} = −i(i + a) x_0`.
    Ba { a: Scalar },
}

impl IntermediateKind {
    /// Coefficient of `x_{i+k}` in `L_i x_k`; `k` is the basis index (not the weight index).
    pub fn coefficient(&self, i: i64, k: i64) -> Scalar {
        let (si, sk) = (Scalar::from_int(i), Scalar::from_int(k));
        match self {
            IntermediateKind::Aab { a, b } => &(a + &sk) + &(b * &si),
            IntermediateKind::Aa { a } => {
                if k != 0 {
                    Scalar::from_int(i + k)
                } else {
                    &si * &(&si + a)
                }
            }
            IntermediateKind::Ba { a } => {
                if k != -i {
                    sk
                } else {
                    -(&si * &(&si + a))
                }
            }
        }
    }

    fn name(&self) -> String {
        match self {
            IntermediateKind::Aab { a, b } => format!("A(a={a},b={b})"),
            IntermediateKind::Aa { a } => format!("A(a={a}) exceptional"),
            IntermediateKind::Ba { a } => format!("B(a={a})"),
        }
    }
}

/// One-dimensional weight spaces on the whole extended window, central charge 0.
///
/// For `A_{a,b}` the window offset must equal `a` reduced mod ℤ; the basis
/// vector `x_k` then sits at weight index `k + ⌊a⌋`. `A(a)` and `B(a)` live on
/// integer weights, so their window offset must be 0.
pub fn build_intermediate(kind: &IntermediateKind, window: &WeightWindow) -> Result<ModuleRealization> {
    let shift = match kind {
        IntermediateKind::Aab { a, .. } => {
            let (n, frac) = a.split_lattice();
            if frac != window.offset {
                return Err(Error::OffsetMismatch { offset: window.offset.to_string(), kind: kind.name() });
            }
            n
        }
        IntermediateKind::Aa { .. } | IntermediateKind::Ba { .. } => {
            if !window.offset.is_zero() {
                return Err(Error::OffsetMismatch { offset: window.offset.to_string(), kind: kind.name() });
            }
            0
        }
    };

    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut actions = BTreeMap::new();
    for k in window.extended() {
        dims.insert(k, 1);
        labels.insert(k, vec![format!("x{}", k - shift)]);
        for i in -window.gen_bound..=window.gen_bound {
            if window.in_extended(k + i) {
                let c = kind.coefficient(i, k - shift);
                actions.insert((i, k), Matrix::from_rows(vec![vec![c]]));
            }
        }
    }
    ModuleRealization::from_parts(window.clone(), dims, actions, Scalar::zero(), Some(labels), BTreeSet::new())
}

/// All partitions of `n` (parts non-increasing), in lexicographically decreasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VermaSign {
    /// `M(λ)`: generated by `v` with `L_i v = 0` for `i > 0`.
    Highest,
    /// `M*(λ)`: generated by `v` with `L_i v = 0` for `i < 0`.
    Lowest,
}

/// Level-graded data of the highest-weight Verma module `M(λ)` with `C = h`.
struct VermaLevels {
    lambda: Scalar,
    h: Scalar,
    bases: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    engine: NormalOrderer,
}

impl VermaLevels {
    fn new(lambda: Scalar, h: Scalar, depth: u32) -> Self {
        let bases: Vec<Vec<Vec<u32>>> = (0..=depth).map(partitions).collect();
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(n, p)| (p.clone(), n)).collect())
            .collect();
        VermaLevels { lambda, h, bases, index, engine: NormalOrderer::new() }
    }

    fn dim(&self, level: i64) -> usize {
        if level < 0 {
            0
        } else {
            self.bases[level as usize].len()
        }
    }

    /// Matrix of `L_i` from level `level` to level `level − i`; both levels ≤ depth.
    fn matrix(&mut self, i: i64, level: i64) -> Matrix {
        let target = level - i;
        let mut m = Matrix::zeros(self.dim(target), self.dim(level));
        if level < 0 || target < 0 {
            return m;
        }
        for (col, part) in self.bases[level as usize].clone().iter().enumerate() {
            let product = self
                .engine
                .left_mul_generator(Generator::L(i), &PbwMonomial::lowering(part))
                .expect("no term limit");
            for (mono, c) in product.terms() {
                // positive letters kill v; L0 and C act by scalars
                if !mono.pos_part.is_empty() {
                    continue;
                }
                let coeff = c * &(&self.lambda.pow(mono.l0_power) * &self.h.pow(mono.central_power));
                let row = self.index[target as usize][&mono.neg_part];
                let updated = m.get(row, col) + &coeff;
                m.set(row, col, updated);
            }
        }
        m
    }
}

fn monomial_label(parts: &[u32], sign: VermaSign) -> String {
    let mut s = String::new();
    for p in parts {
        let idx = match sign {
            VermaSign::Highest => -(*p as i64),
            VermaSign::Lowest => *p as i64,
        };
        s.push_str(&format!("L{idx} "));
    }
    s.push('v');
    s
}

/// Verma module `M(λ)` (or anti-Verma `M*(λ)`) with central charge `h`,
/// realized through level `depth`.
///
/// The level-`n` basis is `L_{−p₁}⋯L_{−p_r} v` for the partitions
/// `p₁ ≥ ⋯ ≥ p_r` of `n`, in lexicographically decreasing order; actions are
/// obtained by normal ordering `L_i · L_{−p₁}⋯L_{−p_r}` and evaluating on `v`.
/// The anti-Verma module is the twist of `M(−λ)` at `C = −h` by the
/// automorphism `L_i ↦ −L_{−i}`, with basis `L_{p₁}⋯L_{p_r} v`.
///
/// Without a window, the interior is exactly levels `0..=depth`, with a
/// margin wide enough for every stored generator to act on `v`.
/// Levels beyond `depth` that fall inside a given window are incomplete.
pub fn build_verma(
    lambda: &Scalar,
    h: &Scalar,
    depth: u32,
    sign: VermaSign,
    window: Option<&WeightWindow>,
) -> Result<ModuleRealization> {
    if depth == 0 {
        return Err(Error::InvalidArgument("Verma depth must be at least 1".into()));
    }
    let (top, offset) = lambda.split_lattice();
    let window = match window {
        Some(w) => {
            if w.offset != offset {
                return Err(Error::OffsetMismatch {
                    offset: w.offset.to_string(),
                    kind: format!("Verma module of weight {lambda}"),
                });
            }
            w.clone()
        }
        None => {
            let d = depth as i64;
            match sign {
                VermaSign::Highest => WeightWindow::new(offset, top - d, top, DEFAULT_GEN_BOUND)?,
                VermaSign::Lowest => WeightWindow::new(offset, top, top + d, DEFAULT_GEN_BOUND)?,
            }
        }
    };
    let level_of = |k: i64| match sign {
        VermaSign::Highest => top - k,
        VermaSign::Lowest => k - top,
    };
    let mut levels = match sign {
        VermaSign::Highest => VermaLevels::new(lambda.clone(), h.clone(), depth),
        VermaSign::Lowest => VermaLevels::new(-lambda, -h, depth),
    };

    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut incomplete = BTreeSet::new();
    for k in window.extended() {
        let level = level_of(k);
        if level > depth as i64 {
            incomplete.insert(k);
            labels.insert(k, Vec::new());
            continue;
        }
        dims.insert(k, levels.dim(level));
        let names = if level < 0 {
            Vec::new()
        } else {
            levels.bases[level as usize].iter().map(|p| monomial_label(p, sign)).collect()
        };
        labels.insert(k, names);
    }

    let mut actions = BTreeMap::new();
    for k in window.extended() {
        for i in -window.gen_bound..=window.gen_bound {
            if !window.in_extended(k + i) || incomplete.contains(&k) || incomplete.contains(&(k + i)) {
                continue;
            }
            let m = match sign {
                VermaSign::Highest => levels.matrix(i, level_of(k)),
                VermaSign::Lowest => {
                    let level = level_of(k);
                    let raw = levels.matrix(-i, level);
                    twist_signs(&raw, &levels, level, level + i)
                }
            };
            actions.insert((i, k), m);
        }
    }
    ModuleRealization::from_parts(window, dims, actions, h.clone(), Some(labels), incomplete)
}

/// `−A` conjugated by `diag((−1)^{#parts})`, taking the Verma basis to the
/// anti-Verma basis `L_{p₁}⋯L_{p_r} v = (−1)^r (twisted L_{−p₁}⋯L_{−p_r} v)`.
fn twist_signs(raw: &Matrix, levels: &VermaLevels, source: i64, target: i64) -> Matrix {
    let parts = |level: i64, idx: usize| levels.bases[level as usize][idx].len();
    let mut out = Matrix::zeros(raw.rows(), raw.cols());
    for r in 0..raw.rows() {
        for c in 0..raw.cols() {
            let x = raw.get(r, c);
            if x.is_zero() {
                continue;
            }
            let odd = (parts(target, r) + parts(source, c)) % 2 == 1;
            out.set(r, c, if odd { x.clone() } else { -x });
        }
    }
    out
}
