use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{submodule_generated, ModuleRealization, VectorInModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimitivityVerdict {
    pub strongly_primitive: bool,
    pub primitive: bool,
    pub strongly_anti_primitive: bool,
    pub anti_primitive: bool,
    /// Some action needed for the answer was not realized on the window.
    pub window_limited: bool,
}

impl PrimitivityVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "stronglyPrimitive": self.strongly_primitive,
            "primitive": self.primitive,
            "stronglyAntiPrimitive": self.strongly_anti_primitive,
            "antiPrimitive": self.anti_primitive,
            "windowLimited": self.window_limited,
        })
    }
}

/// `(strongly, plain, window_limited)` for the generators `sign·1`, `sign·2`.
fn one_side(m: &ModuleRealization, v: &VectorInModule, sign: i64) -> Result<(bool, bool, bool)> {
    let mut limited = false;
    let mut images = Vec::new();
    for i in [sign, 2 * sign] {
        match m.act(i, v) {
            Ok(w) => images.push(w),
            Err(Error::Truncated { .. }) => limited = true,
            Err(e) => return Err(e),
        }
    }
    let strongly = !limited && images.iter().all(VectorInModule::is_zero);
    let family = submodule_generated(m, &images)?;
    limited |= family.truncated;
    let primitive = !family.contains(v);
    Ok((strongly, primitive, limited))
}

/// Primitive and strongly primitive tests for a nonzero weight vector.
///
/// `Vir_±` is generated by `L_{±1}` and `L_{±2}`, so `v` is strongly primitive
/// iff `L_1 v = L_2 v = 0`, and primitive iff `v` lies outside the submodule
/// generated by `L_1 v` and `L_2 v`.
pub fn primitivity(m: &ModuleRealization, v: &VectorInModule) -> Result<PrimitivityVerdict> {
    m.check_vector(v)?;
    if v.is_zero() {
        return Err(Error::InvalidArgument("primitivity needs a nonzero vector".into()));
    }
    let (strongly_primitive, primitive, up_limited) = one_side(m, v, 1)?;
    let (strongly_anti_primitive, anti_primitive, down_limited) = one_side(m, v, -1)?;
    Ok(PrimitivityVerdict {
        strongly_primitive,
        primitive,
        strongly_anti_primitive,
        anti_primitive,
        window_limited: up_limited || down_limited,
    })
}

fn require_interior(m: &ModuleRealization, k: i64) -> Result<()> {
    if !m.window().in_interior(k) {
        return Err(Error::InvalidArgument(format!("weight index {k} is outside the interior window")));
    }
    Ok(())
}

fn stacked(m: &ModuleRealization, gens: [i64; 2], k: i64) -> Result<Matrix> {
    let mut out: Option<Matrix> = None;
    for i in gens {
        if i.abs() > m.gen_bound() {
            return Err(Error::GeneratorOutOfRange { i, bound: m.gen_bound() });
        }
        let a = m.action(i, k).ok_or(Error::Truncated { i, k })?;
        out = Some(match out {
            None => a.clone(),
            Some(top) => top.vstack(a),
        });
    }
    Ok(out.expect("two generators"))
}

/// Basis (as columns) of the strongly primitive vectors `ker L_1 ∩ ker L_2` at `k`.
pub fn strongly_primitive_space(m: &ModuleRealization, k: i64) -> Result<Matrix> {
    require_interior(m, k)?;
    let a = stacked(m, [1, 2], k)?;
    Ok(Matrix::from_columns(&a.kernel(), m.dim(k)))
}

/// Whether `L_k ⊕ L_{k+1}` is injective on the weight space `λ − k`, where
/// `λ` has weight index `lambda_index`.
pub fn injectivity_diagnostic(m: &ModuleRealization, lambda_index: i64, k: i64) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    let source = lambda_index - k;
    let w = m.window();
    if !(w.in_extended(source) && w.in_extended(lambda_index + 1)) {
        return Err(Error::InvalidArgument(format!(
            "weights {source}..{} are not all in the window",
            lambda_index + 1
        )));
    }
    let a = stacked(m, [k, k + 1], source)?;
    Ok(a.rank() == m.dim(source))
}

/// Simplicity on the window for multiplicity-free realizations: every basis
/// vector must generate every interior weight space.
pub fn is_simple_window(m: &ModuleRealization) -> Result<bool> {
    let interior: Vec<i64> = m.window().interior().collect();
    if let Some(k) = interior.iter().find(|&&k| m.dim(k) > 1) {
        return Err(Error::InvalidArgument(format!(
            "simplicity test needs weight spaces of dimension at most 1, found {} at {k}",
            m.dim(*k)
        )));
    }
    for &k in &interior {
        if m.dim(k) == 0 {
            continue;
        }
        let family = submodule_generated(m, &[m.basis_vector(k, 0)])?;
        if interior.iter().any(|&q| family.dim_at(q) < m.dim(q)) {
            return Ok(false);
        }
    }
    Ok(interior.iter().any(|&k| m.dim(k) > 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_intermediate, build_verma, IntermediateKind, VermaSign, WeightWindow};
    use crate::linalg::is_zero_vec;
    use crate::scalar::Scalar;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn annihilated_by(m: &ModuleRealization, v: &VectorInModule, gens: &[i64]) -> Result<bool> {
        for &i in gens {
            if !is_zero_vec(&m.act(i, v)?.coords) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    #[test]
    fn verma_generator_and_first_descendant() {
        let m = build_verma(&s("0"), &s("0"), 6, VermaSign::Highest, None).unwrap();
        let v = m.basis_vector(0, 0);
        let p = primitivity(&m, &v).unwrap();
        assert!(p.strongly_primitive && p.primitive);
        let l1v = m.act(-1, &v).unwrap();
        let p = primitivity(&m, &l1v).unwrap();
        assert!(p.strongly_primitive && p.primitive);
        assert!(!p.strongly_anti_primitive);

        let m1 = build_verma(&s("1"), &s("0"), 6, VermaSign::Highest, None).unwrap();
        let l1v = m1.act(-1, &m1.basis_vector(1, 0)).unwrap();
        assert!(!primitivity(&m1, &l1v).unwrap().strongly_primitive);
    }

    #[test]
    fn strongly_primitive_spaces() {
        let m = build_verma(&s("0"), &s("0"), 6, VermaSign::Highest, None).unwrap();
        let sp = strongly_primitive_space(&m, -1).unwrap();
        assert_eq!(sp.cols(), 1);
        for col in sp.columns() {
            assert!(annihilated_by(&m, &VectorInModule::new(-1, col), &[1, 2]).unwrap());
        }
        let w = WeightWindow::new(s("1/2"), -5, 5, 2).unwrap();
        let a = build_intermediate(&IntermediateKind::Aab { a: s("1/2"), b: s("0") }, &w).unwrap();
        for k in -5..=5 {
            assert_eq!(strongly_primitive_space(&a, k).unwrap().cols(), 0);
        }
        let w = WeightWindow::integral(-5, 5, 2).unwrap();
        let t = build_intermediate(&IntermediateKind::Aab { a: s("0"), b: s("0") }, &w).unwrap();
        assert_eq!(strongly_primitive_space(&t, 0).unwrap().cols(), 1);
        assert!(strongly_primitive_space(&t, 9).is_err());
    }

    #[test]
    fn injectivity() {
        let w = WeightWindow::new(s("1/2"), -5, 5, 3).unwrap();
        let a = build_intermediate(&IntermediateKind::Aab { a: s("1/2"), b: s("0") }, &w).unwrap();
        assert!(injectivity_diagnostic(&a, 2, 1).unwrap());
        assert!(injectivity_diagnostic(&a, 0, 3).unwrap());
        let m = build_verma(&s("0"), &s("0"), 6, VermaSign::Highest, None).unwrap();
        // L_{-1} v sits at weight index -1 and is killed by L_1 and L_2
        assert!(!injectivity_diagnostic(&m, 0, 1).unwrap());
    }

    #[test]
    fn simplicity_of_small_cases() {
        let w = WeightWindow::integral(-6, 6, 3).unwrap();
        let simple = |a: &str, b: &str| {
            let w = w.with_offset(s(a).split_lattice().1).unwrap();
            is_simple_window(&build_intermediate(&IntermediateKind::Aab { a: s(a), b: s(b) }, &w).unwrap()).unwrap()
        };
        assert!(simple("1/2", "0"));
        assert!(!simple("0", "0"));
        assert!(!simple("0", "1"));
        assert!(simple("0", "2"));
        let m = build_verma(&s("0"), &s("0"), 4, VermaSign::Highest, None).unwrap();
        assert!(is_simple_window(&m).is_err());
    }
}
