use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{ModuleRealization, SubspaceFamily, VectorInModule, SPANNING_GENERATORS};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span};
use crate::scalar::Scalar;

/// Dimensions on the interior window.
pub fn dimensions(m: &ModuleRealization) -> BTreeMap<i64, usize> {
    m.window().interior().map(|k| (k, m.dim(k))).collect()
}

/// Block-diagonal direct sum. All parts must share the window and central charge.
pub fn direct_sum(parts: &[&ModuleRealization]) -> Result<ModuleRealization> {
    let first = parts.first().ok_or_else(|| Error::Incompatible("empty direct sum".into()))?;
    for p in &parts[1..] {
        if p.window() != first.window() {
            return Err(Error::Incompatible(format!(
                "windows differ: {:?} vs {:?}",
                first.window(),
                p.window()
            )));
        }
        if p.central_scalar() != first.central_scalar() {
            return Err(Error::Incompatible(format!(
                "central charges differ: {} vs {}",
                first.central_scalar(),
                p.central_scalar()
            )));
        }
    }
    let window = first.window().clone();
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut incomplete = BTreeSet::new();
    for k in window.extended() {
        dims.insert(k, parts.iter().map(|p| p.dim(k)).sum());
        let mut names = Vec::new();
        for (n, p) in parts.iter().enumerate() {
            match p.labels() {
                Some(l) if l.get(&k).is_some_and(|v| v.len() == p.dim(k)) => {
                    names.extend(l[&k].iter().map(|s| format!("p{n}:{s}")));
                }
                _ => names.extend((0..p.dim(k)).map(|j| format!("p{n}[{j}]"))),
            }
        }
        labels.insert(k, names);
        if parts.iter().any(|p| !p.is_complete(k)) {
            incomplete.insert(k);
        }
    }
    let mut actions = BTreeMap::new();
    for &(i, k) in first.actions().keys() {
        let blocks: Option<Vec<&Matrix>> = parts.iter().map(|p| p.action(i, k)).collect();
        if let Some(blocks) = blocks {
            actions.insert((i, k), Matrix::block_diag(&blocks));
        }
    }
    ModuleRealization::from_parts(window, dims, actions, first.central_scalar().clone(), Some(labels), incomplete)
}

/// The contragredient module: `L_i` at `k` is the transpose of `L_{−i}` at `k + i`.
///
/// Weight spaces are paired with themselves, so weights and the central
/// charge are unchanged; the dual basis of each weight space is used.
pub fn dual(m: &ModuleRealization) -> ModuleRealization {
    let mut actions = BTreeMap::new();
    for (&(i, k), a) in m.actions() {
        // a: V_k → V_{k+i}, so its transpose is L_{−i} on the dual at k + i
        actions.insert((-i, k + i), a.transpose());
    }
    let labels = m.labels().map(|l| {
        l.iter()
            .map(|(k, names)| (*k, names.iter().map(|s| dual_label(s)).collect()))
            .collect()
    });
    ModuleRealization::from_parts(
        m.window().clone(),
        m.extended_dims().clone(),
        actions,
        m.central_scalar().clone(),
        labels,
        m.incomplete().clone(),
    )
    .expect("transposed data keeps consistent shapes")
}

fn dual_label(name: &str) -> String {
    match name.strip_prefix('(').and_then(|s| s.strip_suffix(")*")) {
        Some(inner) => inner.to_string(),
        None => format!("({name})*"),
    }
}

/// The smallest family containing `seeds` and closed under `L_{±2}, L_{±1}, L_0`
/// inside the realized window.
pub fn submodule_generated(m: &ModuleRealization, seeds: &[VectorInModule]) -> Result<SubspaceFamily> {
    let mut spans: BTreeMap<i64, Span> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for seed in seeds {
        m.check_vector(seed)?;
        let span = spans.entry(seed.k).or_insert_with(|| Span::new(m.dim(seed.k)));
        if span.insert(&seed.coords) {
            queue.push_back(seed.clone());
        }
    }
    let mut truncated = false;
    while let Some(v) = queue.pop_front() {
        for i in SPANNING_GENERATORS {
            let Some(a) = m.action(i, v.k) else {
                truncated = true;
                continue;
            };
            let w = a.mul_vec(&v.coords);
            let target = v.k + i;
            let span = spans.entry(target).or_insert_with(|| Span::new(m.dim(target)));
            if span.insert(&w) {
                queue.push_back(VectorInModule::new(target, w));
            }
        }
    }
    let spaces = spans
        .into_iter()
        .filter(|(_, s)| s.dim() > 0)
        .map(|(k, s)| (k, Matrix::from_columns(&s.echelon_basis(), s.ambient_dim())))
        .collect();
    Ok(SubspaceFamily { spaces, truncated })
}

/// Margin weights where a truncated family may still be missing vectors
/// (a family that already fills its weight space cannot grow).
fn unsettled_margin(m: &ModuleRealization, family: &SubspaceFamily) -> BTreeSet<i64> {
    m.window()
        .extended()
        .filter(|&k| !m.window().in_interior(k) && family.dim_at(k) < m.dim(k))
        .collect()
}

/// Whether a failure of invariance under `L_i` from `k` is a hard error
/// (spanning generator, inside the interior) or only marks `k + i` as incomplete.
fn invariance_failure(m: &ModuleRealization, i: i64, k: i64) -> Result<()> {
    let w = m.window();
    if SPANNING_GENERATORS.contains(&i) && w.in_interior(k) && w.in_interior(k + i) {
        return Err(Error::NotInvariant { i, k });
    }
    Ok(())
}

/// The sub-realization on `family`, with the induced action in the family's bases.
pub fn restrict(m: &ModuleRealization, family: &SubspaceFamily) -> Result<ModuleRealization> {
    let window = m.window().clone();
    let mut incomplete: BTreeSet<i64> = m.incomplete().clone();
    if family.truncated {
        incomplete.extend(unsettled_margin(m, family));
    }
    let dims: BTreeMap<i64, usize> = window.extended().map(|k| (k, family.dim_at(k))).collect();
    let basis = |k: i64| family.spaces.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(m.dim(k), 0));
    let mut actions = BTreeMap::new();
    for (&(i, k), a) in m.actions() {
        let source = basis(k);
        let target = basis(k + i);
        let mut cols = Vec::with_capacity(source.cols());
        let mut invariant = true;
        for col in source.columns() {
            let image = a.mul_vec(&col);
            match target.solve(&image) {
                Some(x) => cols.push(x),
                None => {
                    invariant = false;
                    break;
                }
            }
        }
        if invariant {
            actions.insert((i, k), Matrix::from_columns(&cols, target.cols()));
        } else {
            invariance_failure(m, i, k)?;
            incomplete.insert(k + i);
        }
    }
    ModuleRealization::from_parts(window, dims, actions, m.central_scalar().clone(), None, incomplete)
}

/// `M / S` with per-weight quotient bases given by the standard basis vectors
/// off the pivot positions of `S`.
pub fn quotient(m: &ModuleRealization, family: &SubspaceFamily) -> Result<ModuleRealization> {
    let window = m.window().clone();
    let spans: BTreeMap<i64, Span> = window.extended().map(|k| (k, family.span_at(k, m.dim(k)))).collect();
    let mut incomplete: BTreeSet<i64> = m.incomplete().clone();
    if family.truncated {
        incomplete.extend(unsettled_margin(m, family));
    }
    let dims: BTreeMap<i64, usize> = spans.iter().map(|(k, s)| (*k, s.ambient_dim() - s.dim())).collect();

    let mut labels = BTreeMap::new();
    for (k, span) in &spans {
        let pivots = span.pivots();
        let kept: Vec<usize> = (0..span.ambient_dim()).filter(|j| !pivots.contains(j)).collect();
        let names = match m.labels().and_then(|l| l.get(k)) {
            Some(names) if names.len() == span.ambient_dim() => {
                kept.iter().map(|&j| format!("[{}]", names[j])).collect()
            }
            _ => kept.iter().map(|j| format!("[e{j}]")).collect(),
        };
        labels.insert(*k, names);
    }

    let mut actions = BTreeMap::new();
    for (&(i, k), a) in m.actions() {
        let (src, dst) = (&spans[&k], &spans[&(k + i)]);
        let invariant = src.echelon_basis().iter().all(|b| dst.contains(&a.mul_vec(b)));
        if !invariant {
            invariance_failure(m, i, k)?;
            incomplete.insert(k + i);
            continue;
        }
        let src_pivots = src.pivots();
        let mut cols = Vec::new();
        for j in (0..src.ambient_dim()).filter(|j| !src_pivots.contains(j)) {
            let mut e = vec![Scalar::zero(); src.ambient_dim()];
            e[j] = Scalar::one();
            cols.push(dst.quotient_coords(&a.mul_vec(&e)));
        }
        actions.insert((i, k), Matrix::from_columns(&cols, dims[&(k + i)]));
    }
    ModuleRealization::from_parts(window, dims, actions, m.central_scalar().clone(), Some(labels), incomplete)
}
