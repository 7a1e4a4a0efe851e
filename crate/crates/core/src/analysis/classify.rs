use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::vector_to_json;
use crate::error::{Error, Result};
use crate::modules::{
    build_intermediate, build_verma, direct_sum, restrict, submodule_generated, IntermediateKind, ModuleRealization,
    SubspaceFamily, VectorInModule, VermaSign, WeightWindow,
};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    UniformlyBounded { bound: usize },
    CategoryO { top: i64 },
    CategoryOMinus { bottom: i64 },
    ContainsTrivialFactor { witness: VectorInModule },
    Undetermined,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::UniformlyBounded { .. } => "UniformlyBounded",
            Verdict::CategoryO { .. } => "CategoryO",
            Verdict::CategoryOMinus { .. } => "CategoryOMinus",
            Verdict::ContainsTrivialFactor { .. } => "ContainsTrivialFactor",
            Verdict::Undetermined => "Undetermined",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::UniformlyBounded { bound } => json!({"kind": self.name(), "N": bound}),
            Verdict::CategoryO { top } => json!({"kind": self.name(), "top": top}),
            Verdict::CategoryOMinus { bottom } => json!({"kind": self.name(), "bottom": bottom}),
            Verdict::ContainsTrivialFactor { witness } => {
                json!({"kind": self.name(), "witness": vector_to_json(witness)})
            }
            Verdict::Undetermined => json!({"kind": self.name()}),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::UniformlyBounded { bound } => write!(f, "UniformlyBounded (N = {bound})"),
            Verdict::CategoryO { top } => write!(f, "CategoryO (top weight index {top})"),
            Verdict::CategoryOMinus { bottom } => write!(f, "CategoryOMinus (bottom weight index {bottom})"),
            Verdict::ContainsTrivialFactor { witness } => {
                write!(f, "ContainsTrivialFactor (witness at weight index {})", witness.k)
            }
            Verdict::Undetermined => write!(f, "Undetermined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// Interior dimensions.
    pub dim_profile: BTreeMap<i64, usize>,
    pub witnesses: Vec<VectorInModule>,
    /// Always true: the verdict only describes the realized window.
    pub window_limited: bool,
    /// Weaker verdicts that also fit the profile, such as `CategoryO` when a
    /// trivial factor takes precedence.
    pub also_consistent_with: Vec<Verdict>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> Value {
        let profile: serde_json::Map<String, Value> =
            self.dim_profile.iter().map(|(k, d)| (k.to_string(), json!(d))).collect();
        json!({
            "verdict": self.verdict.to_json(),
            "dimProfile": profile,
            "witnesses": self.witnesses.iter().map(vector_to_json).collect::<Vec<_>>(),
            "windowLimited": self.window_limited,
            "alsoConsistentWith": self.also_consistent_with.iter().map(Verdict::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Whether `v` spans a trivial subquotient: `L_{±1} v` and `L_{±2} v` generate
/// a submodule that misses `v`.
fn trivial_witness(m: &ModuleRealization, v: &VectorInModule) -> Result<bool> {
    let mut images = Vec::new();
    for i in [-2, -1, 1, 2] {
        match m.act(i, v) {
            Ok(w) => images.push(w),
            Err(Error::Truncated { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(!submodule_generated(m, &images)?.contains(v))
}

/// Searches the weight space with index 0 for a vector `v` that is not in the
/// submodule generated by `L_{±1} v, L_{±2} v`. Such a `v` spans a trivial
/// composition factor.
///
/// Basis vectors are tried first; failing that, a vector outside the
/// submodule generated by all of `L_{±1} V_0, L_{±2} V_0` is returned if one
/// exists.
pub fn detect_trivial_factor(m: &ModuleRealization) -> Result<Option<VectorInModule>> {
    if !m.window().offset.is_zero() || !m.window().in_interior(0) || m.dim(0) == 0 {
        return Ok(None);
    }
    let d = m.dim(0);
    for j in 0..d {
        let v = m.basis_vector(0, j);
        if trivial_witness(m, &v)? {
            return Ok(Some(v));
        }
    }
    let mut images = Vec::new();
    for j in 0..d {
        let v = m.basis_vector(0, j);
        for i in [-2, -1, 1, 2] {
            match m.act(i, &v) {
                Ok(w) => images.push(w),
                Err(Error::Truncated { .. }) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
    }
    let family = submodule_generated(m, &images)?;
    let span = family.span_at(0, d);
    let pivots = span.pivots();
    Ok((0..d).find(|j| !pivots.contains(j)).map(|j| m.basis_vector(0, j)))
}

/// `4 ×` the largest interior dimension (at least 1).
pub fn default_bound_threshold(m: &ModuleRealization) -> usize {
    4 * m.window().interior().map(|k| m.dim(k)).max().unwrap_or(0).max(1)
}

/// Category O / O⁻ shape of the window. A weight counts as occupied if its
/// space is nonzero or not fully realized.
fn order_shape(m: &ModuleRealization) -> Vec<Verdict> {
    let w = m.window();
    let occupied = |k: i64| m.dim(k) > 0 || !m.is_complete(k);
    let Some(top) = w.interior().filter(|&k| occupied(k)).max() else {
        return Vec::new();
    };
    let bottom = w.interior().filter(|&k| occupied(k)).min().expect("nonempty");
    let ext = w.extended();
    let vanishes = |range: std::ops::RangeInclusive<i64>| !range.is_empty() && range.into_iter().all(|k| !occupied(k));
    let above = vanishes((top + 1)..=*ext.end());
    let below = vanishes(*ext.start()..=(bottom - 1));
    let mut out = Vec::new();
    if above && !below {
        out.push(Verdict::CategoryO { top });
    }
    if below && !above {
        out.push(Verdict::CategoryOMinus { bottom });
    }
    out
}

fn bounded_shape(m: &ModuleRealization, threshold: usize) -> Option<Verdict> {
    let w = m.window();
    if !w.interior().all(|k| m.dim(k) > 0 && m.is_complete(k)) {
        return None;
    }
    let bound = w.interior().map(|k| m.dim(k)).max().unwrap_or(0);
    (bound <= threshold).then_some(Verdict::UniformlyBounded { bound })
}

/// Assigns one of the four shapes, with a trivial factor taking precedence
/// over Category O / O⁻, which take precedence over uniform boundedness.
/// Weights are ordered as integers along the lattice.
pub fn classify(m: &ModuleRealization, bound_threshold: usize) -> Result<ClassificationReport> {
    if bound_threshold == 0 {
        return Err(Error::InvalidArgument("bound threshold must be positive".into()));
    }
    let dim_profile = m.window().interior().map(|k| (k, m.dim(k))).collect();
    let mut candidates = Vec::new();
    let mut witnesses = Vec::new();
    if let Some(v) = detect_trivial_factor(m)? {
        witnesses.push(v.clone());
        candidates.push(Verdict::ContainsTrivialFactor { witness: v });
    }
    let order = order_shape(m);
    if order.is_empty() {
        candidates.extend(bounded_shape(m, bound_threshold));
    }
    candidates.extend(order);
    let mut iter = candidates.into_iter();
    let verdict = iter.next().unwrap_or(Verdict::Undetermined);
    Ok(ClassificationReport {
        verdict,
        dim_profile,
        witnesses,
        window_limited: true,
        also_consistent_with: iter.collect(),
    })
}

/// The submodule `V ⊂ M(0) ⊕ M*(0) ⊕ A(a)` generated by `v₀ = v′₀ + v″₀ + x₀`.
#[derive(Clone, Debug)]
pub struct PaperExample {
    pub ambient: ModuleRealization,
    pub family: SubspaceFamily,
    pub module: ModuleRealization,
    /// `v₀` in the basis of `module`.
    pub v0: VectorInModule,
}

/// Builds `M(0)`, `M*(0)` (both with `C = 0`) and `A(a)` on `window`, their
/// direct sum, and the submodule generated by the sum of the three weight-0
/// generators.
pub fn build_paper_example(a: &Scalar, window: &WeightWindow, depth: u32) -> Result<PaperExample> {
    if !window.offset.is_zero() {
        return Err(Error::InvalidArgument("the example lives on integer weights; window offset must be 0".into()));
    }
    if !window.in_interior(0) {
        return Err(Error::InvalidArgument("the window must contain weight index 0".into()));
    }
    let zero = Scalar::zero();
    let verma = build_verma(&zero, &zero, depth, VermaSign::Highest, Some(window))?;
    let anti = build_verma(&zero, &zero, depth, VermaSign::Lowest, Some(window))?;
    let series = build_intermediate(&IntermediateKind::Aa { a: a.clone() }, window)?;
    let ambient = direct_sum(&[&verma, &anti, &series])?;
    let seed = VectorInModule::new(0, vec![Scalar::one(); ambient.dim(0)]);
    let family = submodule_generated(&ambient, std::slice::from_ref(&seed))?;
    let module = restrict(&ambient, &family)?;
    let basis = family.spaces.get(&0).expect("the seed is in the family");
    let coords = basis.solve(&seed.coords).expect("the seed is in the family");
    Ok(PaperExample { ambient, family, module, v0: VectorInModule::new(0, coords) })
}
