//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use virasoro::algebra::{bracket, bracket_basis, Generator, LieElement, NormalOrderer, PbwMonomial, UeaElement};
use virasoro::analysis::{check_axioms, check_axioms_near, find_intertwiner, is_simple_window, strongly_primitive_space};
use virasoro::modules::{
    build_intermediate, build_verma, dual, partitions, restrict, submodule_generated, IntermediateKind,
    ModuleRealization, VectorInModule, VermaSign, WeightWindow,
};
use virasoro::{Matrix, Scalar};

const GEN_RANGE: i64 = 3;

type Outcome = Result<String, String>;

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid_a() -> [&'static str; 4] {
    ["0", "1/2", "1/3", "1/2i"]
}

fn grid_b() -> [&'static str; 4] {
    ["-1", "0", "1", "2"]
}

fn window_for(offset: &Scalar) -> WeightWindow {
    WeightWindow::new(offset.clone(), -10, 10, 5).unwrap()
}

fn aab(a: &str, b: &str) -> ModuleRealization {
    let a = s(a);
    let w = window_for(&a.split_lattice().1);
    build_intermediate(&IntermediateKind::Aab { a, b: s(b) }, &w).unwrap()
}

/// Every realization named in the module-axioms criterion.
fn criterion3_realizations() -> Vec<(String, ModuleRealization)> {
    let mut out = Vec::new();
    for a in grid_a() {
        for b in grid_b() {
            out.push((format!("A({a},{b})"), aab(a, b)));
        }
    }
    let w = window_for(&Scalar::zero());
    out.push(("A(3)".into(), build_intermediate(&IntermediateKind::Aa { a: s("3") }, &w).unwrap()));
    out.push(("B(1)".into(), build_intermediate(&IntermediateKind::Ba { a: s("1") }, &w).unwrap()));
    let zero = Scalar::zero();
    out.push(("M(0)".into(), build_verma(&zero, &zero, 8, VermaSign::Highest, Some(&w)).unwrap()));
    out.push(("M(1)".into(), build_verma(&s("1"), &zero, 8, VermaSign::Highest, Some(&w)).unwrap()));
    out.push(("M*(0)".into(), build_verma(&zero, &zero, 8, VermaSign::Lowest, Some(&w)).unwrap()));
    for a in grid_a() {
        for b in grid_b() {
            out.push((format!("dual A({a},{b})"), dual(&aab(a, b))));
        }
    }
    out
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut basis: Vec<Generator> = (-6..=6).map(Generator::L).collect();
    basis.push(Generator::Central);
    let lift = |g: Generator| LieElement::basis(g);
    let mut triples = 0;
    for &x in &basis {
        for &y in &basis {
            let xy = bracket_basis(x, y);
            ensure(xy.add(&bracket_basis(y, x)).is_zero(), || format!("[{x},{y}] is not antisymmetric"))?;
            for &z in &basis {
                let jacobi = bracket(&lift(x), &bracket(&lift(y), &lift(z)))
                    .add(&bracket(&lift(y), &bracket(&lift(z), &lift(x))))
                    .add(&bracket(&lift(z), &bracket(&lift(x), &lift(y))));
                ensure(jacobi.is_zero(), || format!("Jacobi fails on ({x}, {y}, {z})"))?;
                triples += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{triples} triples, {elapsed:?}"))
}

/// `u` evaluated on the highest-weight vector of `M(λ)` with `C = h`, as
/// coordinates at `level`.
fn evaluate_on_v(u: &UeaElement, lambda: &Scalar, h: &Scalar, level: u32) -> Vec<Scalar> {
    let basis = partitions(level);
    let mut out = vec![Scalar::zero(); basis.len()];
    for (mono, c) in u.terms() {
        if !mono.pos_part.is_empty() {
            continue;
        }
        let idx = basis.iter().position(|p| p == &mono.neg_part).expect("homogeneous element");
        let value = &(c * &lambda.pow(mono.l0_power)) * &h.pow(mono.central_power);
        out[idx] = &out[idx] + &value;
    }
    out
}

fn criterion2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut engine = NormalOrderer::new();
    let zero = Scalar::zero();
    let m = build_verma(&zero, &zero, 8, VermaSign::Highest, None).unwrap();
    let (mut splits, mut actions) = (0, 0);
    for _ in 0..500 {
        let len = rng.gen_range(1..=4);
        let word: Vec<Generator> = (0..len)
            .map(|_| {
                let i = rng.gen_range(-3..=4);
                if i == 4 {
                    Generator::Central
                } else {
                    Generator::L(i)
                }
            })
            .collect();
        let whole = engine.word(&word).map_err(|e| e.to_string())?;
        for cut in 1..word.len() {
            let left = engine.word(&word[..cut]).map_err(|e| e.to_string())?;
            let right = engine.word(&word[cut..]).map_err(|e| e.to_string())?;
            let product = engine.product(&left, &right).map_err(|e| e.to_string())?;
            ensure(product == whole, || format!("association differs for {word:?} at {cut}"))?;
            splits += 1;
        }
        // factor-by-factor action on L_{-p} v versus the normal form of w·L_{-p}
        let indices: Vec<i64> = word
            .iter()
            .filter_map(|g| match g {
                Generator::L(i) => Some(*i),
                Generator::Central => None,
            })
            .collect();
        let degree: i64 = indices.iter().sum();
        for level in 0..=8u32 {
            for (idx, part) in partitions(level).iter().enumerate() {
                if idx > 2 {
                    break;
                }
                let mut lvl = level as i64;
                let mut inside = true;
                for i in indices.iter().rev() {
                    lvl -= i;
                    inside &= lvl <= 8 && lvl >= -6;
                }
                if !inside || lvl < 0 {
                    continue;
                }
                let u = m.basis_vector(-(level as i64), idx);
                let mut direct = m.act_word(&indices, &u).map_err(|e| e.to_string())?;
                if indices.len() < word.len() {
                    // each C acts by h = 0
                    direct.coords.iter_mut().for_each(|c| *c = Scalar::zero());
                }
                let seed = UeaElement::monomial(PbwMonomial::lowering(part));
                let normal = engine.word_times(&word, &seed).map_err(|e| e.to_string())?;
                let via_normal = evaluate_on_v(&normal, &zero, &zero, (level as i64 - degree) as u32);
                ensure(direct.coords == via_normal, || format!("action mismatch for {word:?} on level {level} #{idx}"))?;
                actions += 1;
            }
        }
    }
    ensure(actions > 1000, || format!("only {actions} action comparisons"))?;
    Ok(format!("{splits} association splits, {actions} Verma action comparisons"))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let all = criterion3_realizations();
    let mut checked = 0;
    for (name, m) in &all {
        let r = check_axioms(m, GEN_RANGE).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.is_ok(), || format!("{name}: {} violations", r.violations.len()))?;
        ensure(r.checked > 0, || format!("{name}: nothing checked"))?;
        checked += r.checked;
    }
    Ok(format!("{} realizations, {checked} identities, {:?}", all.len(), start.elapsed()))
}

fn criterion4() -> Outcome {
    let mut cases = 0;
    for a in grid_a() {
        for b in grid_b() {
            let expected = !s(a).is_integer() || (b != "0" && b != "1");
            let got = is_simple_window(&aab(a, b)).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("A({a},{b}): simple = {got}, expected {expected}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} grid points agree"))
}

fn criterion5() -> Outcome {
    let half = s("1/2");
    let t = find_intertwiner(&aab("1/2", "1"), &aab("1/2", "0"))
        .map_err(|e| e.to_string())?
        .ok_or("no map A(1/2,1) -> A(1/2,0)")?;
    ensure(t.invertible, || "map is not invertible".into())?;
    // (a + k + i) t_{k+i} = (a + k) t_k with t_{-10} = 1
    let a_plus = |k: i64| &half + &Scalar::from_int(k);
    for k in -10..=10 {
        let expected = &a_plus(-10) * &a_plus(k).inv().unwrap();
        let got = t.per_weight[&k].get(0, 0);
        ensure(got == &expected, || format!("t_{k} = {got}, recurrence gives {expected}"))?;
    }
    let other = find_intertwiner(&aab("0", "1"), &aab("0", "0")).map_err(|e| e.to_string())?;
    ensure(other.as_ref().is_none_or(|t| !t.invertible), || "A(0,1) -> A(0,0) is invertible".into())?;
    Ok("A(1/2,1) ~ A(1/2,0) with t_k ∝ 1/(1/2+k); A(0,1) -> A(0,0) not invertible".into())
}

fn partition_count(n: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

fn criterion6() -> Outcome {
    let expected: Vec<usize> = (0..=8).map(partition_count).collect();
    ensure(expected == vec![1, 1, 2, 3, 5, 7, 11, 15, 22], || format!("oracle gave {expected:?}"))?;
    for lambda in ["0", "1", "-3/2+1i"] {
        let m = build_verma(&s(lambda), &s("1/3"), 8, VermaSign::Highest, None).unwrap();
        let top = s(lambda).split_lattice().0;
        let dims: Vec<usize> = (0..=8).map(|n| m.dim(top - n)).collect();
        ensure(dims == expected, || format!("M({lambda}) dims {dims:?}"))?;
    }
    let zero = Scalar::zero();
    let m0 = build_verma(&zero, &zero, 8, VermaSign::Highest, None).unwrap();
    let sp = strongly_primitive_space(&m0, -1).map_err(|e| e.to_string())?;
    let l1v = m0.act(-1, &m0.basis_vector(0, 0)).unwrap();
    ensure(sp.cols() == 1, || format!("M(0) level 1: dimension {}", sp.cols()))?;
    let together = Matrix::from_columns(&[sp.column(0), l1v.coords.clone()], 1);
    ensure(together.rank() == 1, || "M(0) level 1 is not span{L-1 v}".into())?;
    let m1 = build_verma(&s("1"), &zero, 8, VermaSign::Highest, None).unwrap();
    let sp1 = strongly_primitive_space(&m1, 0).map_err(|e| e.to_string())?;
    ensure(sp1.cols() == 0, || format!("M(1) level 1: dimension {}", sp1.cols()))?;
    Ok("dims 1 1 2 3 5 7 11 15 22; singular space of M(0) at level 1 = span{L-1 v}; M(1) level 1 = 0".into())
}

fn vanishes_below_top(m: &ModuleRealization) -> Result<usize, String> {
    let w = m.window().clone();
    let mut count = 0;
    for k in w.k_min..w.k_max {
        let sp = strongly_primitive_space(m, k).map_err(|e| format!("k = {k}: {e}"))?;
        ensure(sp.cols() == 0, || format!("strongly primitive vectors at weight index {k}"))?;
        count += 1;
    }
    Ok(count)
}

fn criterion7() -> Outcome {
    let mut all = criterion3_realizations();
    let w = window_for(&Scalar::zero());
    let zero = Scalar::zero();
    all.push(("dual M(0)".into(), dual(&build_verma(&zero, &zero, 8, VermaSign::Highest, Some(&w)).unwrap())));
    for (name, m) in &all {
        let dd = dual(&dual(m));
        ensure(&dd == m, || format!("{name}: double dual differs"))?;
        let r = check_axioms(&dual(m), GEN_RANGE).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.is_ok(), || format!("dual of {name}: {} violations", r.violations.len()))?;
    }
    let mut weights = 0;
    for a in ["1/2", "1/3", "1/2i"] {
        for b in grid_b() {
            weights += vanishes_below_top(&dual(&aab(a, b))).map_err(|e| format!("dual A({a},{b}): {e}"))?;
        }
    }
    let a01 = aab("0", "1");
    let family = submodule_generated(&a01, &[VectorInModule::basis(1, 1, 0)]).map_err(|e| e.to_string())?;
    let sub = restrict(&a01, &family).map_err(|e| e.to_string())?;
    weights += vanishes_below_top(&dual(&sub)).map_err(|e| format!("dual of <x1> in A(0,1): {e}"))?;
    Ok(format!("{} double duals equal, duals satisfy the axioms, {weights} weights without singular vectors", all.len()))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let out = virasoro_cli::run([
        "virasoro", "paper-example", "--a", "1/2", "--window", "-6..6", "--depth", "6", "--format", "json",
    ]);
    ensure(out.status == 0, || format!("exit status {}: {}", out.status, out.stderr))?;
    let bundle: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let verdict = &bundle["classification"]["verdict"];
    ensure(verdict["kind"] == "ContainsTrivialFactor", || format!("verdict {verdict}"))?;
    ensure(verdict["witness"]["k"] == 0, || format!("witness {}", verdict["witness"]))?;
    let p = &bundle["primitivity"];
    let flags = (&p["primitive"], &p["antiPrimitive"], &p["stronglyPrimitive"], &p["stronglyAntiPrimitive"]);
    ensure(flags == (&Value::Bool(true), &Value::Bool(true), &Value::Bool(false), &Value::Bool(false)), || {
        format!("primitivity {p}")
    })?;
    let dims = bundle["dims"].as_object().ok_or("no dims")?;
    let listed: Vec<String> = dims.iter().map(|(k, d)| format!("{k}:{d}")).collect();
    ensure(dims.values().all(|d| d.as_u64().is_some()), || "non-finite dims".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("dims {} in {elapsed:?}", listed.join(" ")))
}

fn criterion9() -> Outcome {
    let start = Instant::now();
    let mut corrupted = 0;
    for (name, m) in criterion3_realizations() {
        let w = m.window().clone();
        let targets: Vec<((i64, i64), Matrix)> = m
            .actions()
            .iter()
            .filter(|((i, k), _)| i.abs() <= GEN_RANGE && w.in_interior(*k) && w.in_interior(k + i))
            .map(|(key, a)| (*key, a.clone()))
            .collect();
        let mut full_checked = false;
        for ((i, k), a) in targets {
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    let mut bad = a.clone();
                    bad.set(r, c, a.get(r, c) + &Scalar::one());
                    let faulty = m.with_action(i, k, bad).map_err(|e| e.to_string())?;
                    let report = check_axioms_near(&faulty, GEN_RANGE, i, k).map_err(|e| e.to_string())?;
                    ensure(report.violations.iter().any(|v| v.touches(i, k)), || {
                        format!("{name}: corrupting L{i} at {k} entry ({r},{c}) went unnoticed")
                    })?;
                    if !full_checked {
                        // the untouched identities stay clean, so the full report agrees
                        let full = check_axioms(&faulty, GEN_RANGE).map_err(|e| e.to_string())?;
                        ensure(full.violations == report.violations, || {
                            format!("{name}: full and local checks disagree for L{i} at {k}")
                        })?;
                        full_checked = true;
                    }
                    corrupted += 1;
                }
            }
        }
    }
    Ok(format!("{corrupted} single-entry corruptions all detected, {:?}", start.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Lie algebra correctness", criterion1),
        ("PBW engine", criterion2),
        ("module axioms", criterion3),
        ("simplicity criterion", criterion4),
        ("isomorphism A(a,1) ~ A(a,0)", criterion5),
        ("Verma structure", criterion6),
        ("dual construction", criterion7),
        ("worked example", criterion8),
        ("fault detection", criterion9),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", n + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
