use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::ModuleRealization;
use crate::scalar::Scalar;

/// A failure of `[L_i, L_j] = (j − i) L_{i+j} + δ_{i,−j} (i³ − i)/12 · h` on the
/// weight space with index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    /// Left side minus right side.
    pub defect: Matrix,
}

impl AxiomViolation {
    /// The `(generator, source weight index)` pairs whose matrices enter this identity.
    pub fn neighborhood(&self) -> [(i64, i64); 5] {
        let (i, j, k) = (self.i, self.j, self.k);
        [(j, k), (i, k + j), (i, k), (j, k + i), (i + j, k)]
    }

    pub fn touches(&self, generator: i64, k: i64) -> bool {
        self.neighborhood().contains(&(generator, k))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "defect": self.defect.entries().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub gen_range: i64,
    /// Identities verified.
    pub checked: usize,
    /// Identities skipped because an action matrix was not realized.
    pub skipped: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genRange": self.gen_range,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations.iter().map(AxiomViolation::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Checks the bracket relation for all `i < j` with `|i|, |j| ≤ gen_range` at
/// every interior weight where the five matrices involved are realized.
pub fn check_axioms(m: &ModuleRealization, gen_range: i64) -> Result<AxiomReport> {
    check_filtered(m, gen_range, |_| true)
}

/// Like [`check_axioms`], restricted to the identities whose matrices include
/// `L_generator` on the weight space with index `k`.
pub fn check_axioms_near(m: &ModuleRealization, gen_range: i64, generator: i64, k: i64) -> Result<AxiomReport> {
    check_filtered(m, gen_range, |n| n.contains(&(generator, k)))
}

fn check_filtered(
    m: &ModuleRealization,
    gen_range: i64,
    keep: impl Fn(&[(i64, i64); 5]) -> bool,
) -> Result<AxiomReport> {
    if gen_range < 2 {
        return Err(Error::InvalidArgument(format!("genRange must be at least 2, got {gen_range}")));
    }
    if 2 * gen_range > m.gen_bound() {
        return Err(Error::InvalidArgument(format!(
            "genRange {gen_range} needs generators up to {}, but the realization stores |i| <= {}",
            2 * gen_range,
            m.gen_bound()
        )));
    }
    let h = m.central_scalar();
    let mut report = AxiomReport { gen_range, checked: 0, skipped: 0, violations: Vec::new() };
    for k in m.window().interior() {
        for i in -gen_range..=gen_range {
            for j in (i + 1)..=gen_range {
                if !keep(&[(j, k), (i, k + j), (i, k), (j, k + i), (i + j, k)]) {
                    continue;
                }
                let (Some(lj), Some(li_after), Some(li), Some(lj_after), Some(lij)) = (
                    m.action(j, k),
                    m.action(i, k + j),
                    m.action(i, k),
                    m.action(j, k + i),
                    m.action(i + j, k),
                ) else {
                    report.skipped += 1;
                    continue;
                };
                report.checked += 1;
                let lhs = li_after.mul(lj).sub(&lj_after.mul(li));
                let mut rhs = lij.scale(&Scalar::from_int(j - i));
                if i == -j {
                    let c = &Scalar::ratio(i * i * i - i, 12) * h;
                    rhs = rhs.add(&Matrix::scalar(m.dim(k), &c));
                }
                let defect = lhs.sub(&rhs);
                if !defect.is_zero() {
                    report.violations.push(AxiomViolation { i, j, k, defect });
                }
            }
        }
    }
    Ok(report)
}
