use std::collections::BTreeMap;

use virasoro::modules::{
    build_intermediate, build_verma, dimensions, direct_sum, dual, partitions, quotient, restrict, submodule_generated,
    IntermediateKind, VectorInModule, VermaSign, WeightWindow,
};
use virasoro::{Error, Scalar};

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

fn aab(a: &str, b: &str, window: &WeightWindow) -> virasoro::modules::ModuleRealization {
    build_intermediate(&IntermediateKind::Aab { a: s(a), b: s(b) }, window).unwrap()
}

#[test]
fn trivial_vector_spans_itself_in_a00() {
    let w = WeightWindow::integral(-10, 10, 5).unwrap();
    let m = aab("0", "0", &w);
    let fam = submodule_generated(&m, &[m.basis_vector(0, 0)]).unwrap();
    assert_eq!(fam.dims(), BTreeMap::from([(0, 1)]));
    assert!(!fam.truncated);
}

#[test]
fn nonzero_vector_generates_all_of_a00() {
    // L_i x_k = k x_{i+k}: from x_1 every x_k is reached with a nonzero coefficient
    let w = WeightWindow::integral(-6, 6, 3).unwrap();
    let m = aab("0", "0", &w);
    let fam = submodule_generated(&m, &[m.basis_vector(1, 0)]).unwrap();
    for k in w.extended() {
        assert_eq!(fam.dim_at(k), 1, "weight {k}");
    }
    assert!(fam.truncated);
}

#[test]
fn a01_has_the_trivial_module_as_quotient() {
    // L_i x_k = (k + i) x_{k+i} never produces x_0
    let w = WeightWindow::integral(-6, 6, 3).unwrap();
    let m = aab("0", "1", &w);
    let fam = submodule_generated(&m, &[m.basis_vector(1, 0)]).unwrap();
    assert_eq!(fam.dim_at(0), 0);
    let q = quotient(&m, &fam).unwrap();
    let dims = dimensions(&q);
    for (k, d) in dims {
        assert_eq!(d, usize::from(k == 0), "weight {k}");
    }
    let sub = restrict(&m, &fam).unwrap();
    assert_eq!(sub.dim(0), 0);
    assert_eq!(sub.dim(2), 1);
    // x_2 -> 3 x_3 under L_1, in the family basis
    let x2 = sub.basis_vector(2, 0);
    let image = sub.act(1, &x2).unwrap();
    let back = fam.basis_at(3)[0][0].clone();
    let x2_scale = fam.basis_at(2)[0][0].clone();
    assert_eq!(&image.coords[0] * &back, &s("3") * &x2_scale);
}

fn partition_count(n: i64) -> usize {
    if n < 0 {
        0
    } else {
        partitions(n as u32).len()
    }
}

#[test]
fn verma_is_cyclic_on_its_generator() {
    let m = build_verma(&s("1/2"), &s("1/3"), 6, VermaSign::Highest, None).unwrap();
    let fam = submodule_generated(&m, &[m.basis_vector(0, 0)]).unwrap();
    for k in m.window().interior() {
        assert_eq!(fam.dim_at(k), m.dim(k));
    }
}

#[test]
fn verma_quotient_by_first_descendant() {
    let m = build_verma(&s("0"), &s("0"), 8, VermaSign::Highest, None).unwrap();
    let v = m.basis_vector(0, 0);
    let l1v = m.act(-1, &v).unwrap();
    let fam = submodule_generated(&m, std::slice::from_ref(&l1v)).unwrap();
    let q = quotient(&m, &fam).unwrap();
    // the submodule is U(n-) L-1 v, which has dimension p(n-1) at level n
    for n in 0..=8i64 {
        assert_eq!(q.dim(-n), partition_count(n) - partition_count(n - 1), "level {n}");
    }
    let l2v = m.act(-2, &v).unwrap();
    let fam = submodule_generated(&m, &[l1v, l2v]).unwrap();
    let q = quotient(&m, &fam).unwrap();
    for n in 0..=8i64 {
        assert_eq!(q.dim(-n), usize::from(n == 0), "level {n}");
    }
}

#[test]
fn quotient_rejects_non_submodules() {
    let w = WeightWindow::integral(-4, 4, 2).unwrap();
    let m = aab("0", "0", &w);
    // {x_1} alone is not invariant: L_1 x_1 = x_2
    let mut fam = submodule_generated(&m, &[m.basis_vector(0, 0)]).unwrap();
    fam.spaces.insert(1, virasoro::Matrix::from_columns(&[vec![s("1")]], 1));
    assert!(matches!(quotient(&m, &fam), Err(Error::NotInvariant { .. })));
    assert!(matches!(restrict(&m, &fam), Err(Error::NotInvariant { .. })));
}

#[test]
fn dual_is_an_involution() {
    let w = WeightWindow::new(s("1/3"), -3, 3, 2).unwrap();
    let m = aab("1/3", "2", &w);
    let dd = dual(&dual(&m));
    assert_eq!(dd.actions(), m.actions());
    assert_eq!(dd.extended_dims(), m.extended_dims());
    let v = build_verma(&s("1"), &s("1/2"), 4, VermaSign::Highest, None).unwrap();
    let dv = dual(&v);
    assert_eq!(dual(&dv).actions(), v.actions());
    // L_i on the dual at k is the transpose of L_{-i} at k + i
    assert_eq!(dv.action(1, -2).unwrap(), &v.action(-1, -1).unwrap().transpose());
    assert_eq!(dimensions(&dv), dimensions(&v));
}

#[test]
fn direct_sum_adds_dimensions() {
    let m = build_verma(&s("0"), &s("0"), 5, VermaSign::Highest, None).unwrap();
    let w = m.window().clone();
    let a = build_intermediate(&IntermediateKind::Aa { a: s("1/2") }, &w).unwrap();
    let b = build_verma(&s("0"), &s("0"), 5, VermaSign::Highest, Some(&w)).unwrap();
    let sum = direct_sum(&[&m, &a, &b]).unwrap();
    for k in w.interior() {
        assert_eq!(sum.dim(k), 2 * m.dim(k) + 1);
    }
    let x = sum.basis_vector(0, sum.dim(0) - 2);
    assert_eq!(sum.labels().unwrap()[&0][sum.dim(0) - 2], "p1:x0");
    // L_1 x_0 = 1 (1 + 1/2) x_1 in A(1/2)
    let image = sum.act(1, &x).unwrap();
    let mut expected = vec![Scalar::zero(); sum.dim(1)];
    expected[m.dim(1)] = s("3/2");
    assert_eq!(image.coords, expected);

    let other = WeightWindow::integral(-3, 3, 1).unwrap();
    let c = build_intermediate(&IntermediateKind::Aa { a: s("1/2") }, &other).unwrap();
    assert!(matches!(direct_sum(&[&m, &c]), Err(Error::Incompatible(_))));
    let d = build_verma(&s("0"), &s("1"), 5, VermaSign::Highest, None).unwrap();
    assert!(matches!(direct_sum(&[&m, &d]), Err(Error::Incompatible(_))));
}

#[test]
fn vectors_are_checked_against_the_module() {
    let m = build_verma(&s("0"), &s("0"), 3, VermaSign::Highest, None).unwrap();
    let bad = VectorInModule::new(-2, vec![s("1")]);
    assert!(matches!(m.act(1, &bad), Err(Error::BadVector { .. })));
    assert!(matches!(m.act(9, &m.basis_vector(0, 0)), Err(Error::GeneratorOutOfRange { .. })));
    assert!(matches!(m.act(-1, &m.basis_vector(-3, 0)), Err(Error::Truncated { .. })));
}
