//! Window-truncated weight modules.
//!
//! A module `V = ⊕_k V_{a+k}` is realized on a finite range of weight
//! indices: the interior window `[k_min, k_max]` where all claims are made,
//! plus a margin on both sides that absorbs generator applications near the
//! edge. Each weight space carries a basis, and each generator `L_i` with
//! `|i| ≤ gen_bound` has an exact matrix `V_{a+k} → V_{a+k+i}`.
//!
//! Truncation is explicit. A weight index is *incomplete* when its stored
//! basis is known to miss vectors of the genuine module (a Verma module
//! beyond its depth, a submodule whose closure was cut off by the window).
//! An action matrix is stored only when both ends are realized and
//! complete; anything else is reported as truncated, never silently zero.

mod build;
mod json;
mod ops;
mod spec;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Matrix, Span};
use crate::scalar::Scalar;

pub use build::{build_intermediate, build_verma, partitions, IntermediateKind, VermaSign};
pub use json::{realization_from_json, realization_to_json};
pub use ops::{dimensions, direct_sum, dual, quotient, restrict, submodule_generated};
pub use spec::{build_from_spec, ModuleSpec};

pub const DEFAULT_MARGIN: i64 = 5;
/// Largest `|i|` for which action matrices are stored by default.
pub const DEFAULT_GEN_BOUND: i64 = 6;
/// Generators used when closing a subspace under the action.
pub const SPANNING_GENERATORS: [i64; 5] = [-2, -1, 0, 1, 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightWindow {
    /// The `a` of `V = Σ_k V_{a+k}`, normalized to `0 ≤ Re(a) < 1`.
    pub offset: Scalar,
    pub k_min: i64,
    pub k_max: i64,
    pub margin: i64,
    /// Largest `|i|` for which realizations on this window store `L_i`.
    pub gen_bound: i64,
}

impl WeightWindow {
    pub fn new(offset: Scalar, k_min: i64, k_max: i64, margin: i64) -> Result<Self> {
        if k_min > k_max {
            return Err(Error::InvalidWindow(format!("k_min {k_min} exceeds k_max {k_max}")));
        }
        if margin < 0 {
            return Err(Error::InvalidWindow(format!("negative margin {margin}")));
        }
        let (n, _) = offset.split_lattice();
        if n != 0 {
            return Err(Error::InvalidWindow(format!("offset {offset} must satisfy 0 <= Re(offset) < 1")));
        }
        Ok(WeightWindow { offset, k_min, k_max, margin, gen_bound: DEFAULT_GEN_BOUND })
    }

    pub fn with_gen_bound(mut self, gen_bound: i64) -> Result<Self> {
        if gen_bound < 2 {
            return Err(Error::InvalidWindow(format!("generator bound {gen_bound} is below 2")));
        }
        self.gen_bound = gen_bound;
        Ok(self)
    }

    /// Integer weights, `offset = 0`.
    pub fn integral(k_min: i64, k_max: i64, margin: i64) -> Result<Self> {
        Self::new(Scalar::zero(), k_min, k_max, margin)
    }

    pub fn with_offset(&self, offset: Scalar) -> Result<Self> {
        Self::new(offset, self.k_min, self.k_max, self.margin)?.with_gen_bound(self.gen_bound)
    }

    pub fn interior(&self) -> RangeInclusive<i64> {
        self.k_min..=self.k_max
    }

    pub fn extended(&self) -> RangeInclusive<i64> {
        (self.k_min - self.margin)..=(self.k_max + self.margin)
    }

    pub fn in_interior(&self, k: i64) -> bool {
        self.interior().contains(&k)
    }

    pub fn in_extended(&self, k: i64) -> bool {
        self.extended().contains(&k)
    }

    /// The weight `offset + k`.
    pub fn weight(&self, k: i64) -> Scalar {
        &self.offset + &Scalar::from_int(k)
    }
}

/// A weight vector: weight index plus coordinates in that weight space's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorInModule {
    pub k: i64,
    pub coords: Vec<Scalar>,
}

impl VectorInModule {
    pub fn new(k: i64, coords: Vec<Scalar>) -> Self {
        VectorInModule { k, coords }
    }

    /// The `index`-th basis vector of a weight space of dimension `dim`.
    pub fn basis(k: i64, dim: usize, index: usize) -> Self {
        let mut coords = vec![Scalar::zero(); dim];
        coords[index] = Scalar::one();
        VectorInModule { k, coords }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }
}

/// Per-weight subspaces, each given by a matrix whose columns form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    pub spaces: BTreeMap<i64, Matrix>,
    /// Some generator application left the realized window while computing the family.
    pub truncated: bool,
}

impl SubspaceFamily {
    pub fn zero() -> Self {
        SubspaceFamily { spaces: BTreeMap::new(), truncated: false }
    }

    pub fn dim_at(&self, k: i64) -> usize {
        self.spaces.get(&k).map_or(0, Matrix::cols)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.spaces.iter().map(|(k, m)| (*k, m.cols())).collect()
    }

    pub fn basis_at(&self, k: i64) -> Vec<Vec<Scalar>> {
        self.spaces.get(&k).map(Matrix::columns).unwrap_or_default()
    }

    /// The subspace at `k` as a [`Span`] in an ambient space of dimension `ambient`.
    pub fn span_at(&self, k: i64, ambient: usize) -> Span {
        let mut span = Span::new(ambient);
        for col in self.basis_at(k) {
            span.insert(&col);
        }
        span
    }

    pub fn contains(&self, v: &VectorInModule) -> bool {
        v.is_zero() || self.span_at(v.k, v.coords.len()).contains(&v.coords)
    }
}

/// A weight module realized on a finite window with exact action matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRealization {
    window: WeightWindow,
    dims: BTreeMap<i64, usize>,
    actions: BTreeMap<(i64, i64), Matrix>,
    central: Scalar,
    labels: Option<BTreeMap<i64, Vec<String>>>,
    incomplete: BTreeSet<i64>,
    truncation_flags: BTreeSet<i64>,
}

impl ModuleRealization {
    /// Assembles a realization, checking every stored matrix against `dims`.
    ///
    /// `dims` may omit weights (they default to 0); entries outside the
    /// extended window are rejected. Actions touching an incomplete weight
    /// or leaving the window are dropped.
    pub fn from_parts(
        window: WeightWindow,
        dims: BTreeMap<i64, usize>,
        actions: BTreeMap<(i64, i64), Matrix>,
        central: Scalar,
        labels: Option<BTreeMap<i64, Vec<String>>>,
        incomplete: BTreeSet<i64>,
    ) -> Result<Self> {
        let gen_bound = window.gen_bound;
        if gen_bound < 2 {
            return Err(Error::InvalidArgument(format!("generator bound {gen_bound} is below 2")));
        }
        let mut full_dims = BTreeMap::new();
        for k in window.extended() {
            full_dims.insert(k, dims.get(&k).copied().unwrap_or(0));
        }
        if let Some(k) = dims.keys().find(|k| !window.in_extended(**k)) {
            return Err(Error::InvalidWindow(format!("dimension given at weight index {k} outside the window")));
        }
        let incomplete: BTreeSet<i64> = incomplete.into_iter().filter(|k| window.in_extended(*k)).collect();
        let mut kept = BTreeMap::new();
        for ((i, k), m) in actions {
            if i.abs() > gen_bound || !window.in_extended(k) || !window.in_extended(k + i) {
                continue;
            }
            if incomplete.contains(&k) || incomplete.contains(&(k + i)) {
                continue;
            }
            let expected = (full_dims[&(k + i)], full_dims[&k]);
            if m.shape() != expected {
                return Err(Error::InvalidArgument(format!(
                    "action of L{i} at weight index {k} has shape {:?}, expected {:?}",
                    m.shape(),
                    expected
                )));
            }
            kept.insert((i, k), m);
        }
        if let Some(labels) = &labels {
            for (k, names) in labels {
                if full_dims.get(k).copied().unwrap_or(0) != names.len() {
                    return Err(Error::InvalidArgument(format!("label count mismatch at weight index {k}")));
                }
            }
        }
        let mut realization = ModuleRealization {
            window,
            dims: full_dims,
            actions: kept,
            central,
            labels,
            incomplete,
            truncation_flags: BTreeSet::new(),
        };
        realization.truncation_flags = realization.compute_truncation_flags();
        Ok(realization)
    }

    fn compute_truncation_flags(&self) -> BTreeSet<i64> {
        self.window
            .extended()
            .filter(|&k| {
                self.incomplete.contains(&k)
                    || (-self.window.gen_bound..=self.window.gen_bound).any(|i| !self.actions.contains_key(&(i, k)))
            })
            .collect()
    }

    pub fn window(&self) -> &WeightWindow {
        &self.window
    }

    pub fn gen_bound(&self) -> i64 {
        self.window.gen_bound
    }

    pub fn central_scalar(&self) -> &Scalar {
        &self.central
    }

    /// Dimension at weight index `k` (0 outside the extended window).
    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    /// Dimensions over the whole extended window.
    pub fn extended_dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// The stored matrix of `L_i` on the weight space at `k`, if realized.
    pub fn action(&self, i: i64, k: i64) -> Option<&Matrix> {
        self.actions.get(&(i, k))
    }

    pub fn actions(&self) -> &BTreeMap<(i64, i64), Matrix> {
        &self.actions
    }

    pub fn labels(&self) -> Option<&BTreeMap<i64, Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn incomplete(&self) -> &BTreeSet<i64> {
        &self.incomplete
    }

    pub fn is_complete(&self, k: i64) -> bool {
        self.window.in_extended(k) && !self.incomplete.contains(&k)
    }

    /// Weight indices where some stored generator's action is cut off by the window.
    pub fn truncation_flags(&self) -> &BTreeSet<i64> {
        &self.truncation_flags
    }

    pub fn check_vector(&self, v: &VectorInModule) -> Result<()> {
        let dim = self.dim(v.k);
        if !self.window.in_extended(v.k) || v.coords.len() != dim {
            return Err(Error::BadVector { k: v.k, len: v.coords.len(), dim });
        }
        Ok(())
    }

    /// `L_i · v`.
    pub fn act(&self, i: i64, v: &VectorInModule) -> Result<VectorInModule> {
        self.check_vector(v)?;
        if i.abs() > self.gen_bound() {
            return Err(Error::GeneratorOutOfRange { i, bound: self.gen_bound() });
        }
        let m = self.action(i, v.k).ok_or(Error::Truncated { i, k: v.k })?;
        Ok(VectorInModule::new(v.k + i, m.mul_vec(&v.coords)))
    }

    /// Applies `L_{i₁} L_{i₂} ⋯ L_{iₙ}` (rightmost first).
    pub fn act_word(&self, word: &[i64], v: &VectorInModule) -> Result<VectorInModule> {
        let mut out = v.clone();
        for &i in word.iter().rev() {
            out = self.act(i, &out)?;
        }
        Ok(out)
    }

    pub fn basis_vector(&self, k: i64, index: usize) -> VectorInModule {
        VectorInModule::basis(k, self.dim(k), index)
    }

    pub fn zero_vector(&self, k: i64) -> VectorInModule {
        VectorInModule::new(k, vec![Scalar::zero(); self.dim(k)])
    }

    /// A copy with one action matrix replaced; shapes are re-checked.
    pub fn with_action(&self, i: i64, k: i64, m: Matrix) -> Result<Self> {
        let mut actions = self.actions.clone();
        actions.insert((i, k), m);
        ModuleRealization::from_parts(
            self.window.clone(),
            self.dims.clone(),
            actions,
            self.central.clone(),
            self.labels.clone(),
            self.incomplete.clone(),
        )
    }
}
