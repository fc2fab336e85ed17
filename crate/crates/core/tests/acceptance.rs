//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtop_core::invariants::{bound_chain_report, Engine, JpResult};
use qtop_core::mcgrep::{lens_word, run_relation_suite, MCGWord, RepMatrix, Representation};
use qtop_core::recoupling::{run_orthogonality_suite, run_pentagon_suite, Theory};
use qtop_core::surgery::{homology_data, invariant_ip, invariant_value, linking_matrix, PlumbingTree};
use qtop_core::tqftspace::{enumerate_even_colorings, verlinde_dim};
use qtop_core::{CycNum, LaurentCyc, Phased, PrimeContext, Valuation};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine(p: u32) -> Engine {
    Engine::new(p).expect("valid prime")
}

fn jp_exact(r: &JpResult) -> Result<u64, String> {
    r.exact().ok_or_else(|| format!("not exact: {r}"))
}

fn heegaard_jp(e: &Engine, w: &MCGWord, g: u32) -> Result<u64, String> {
    jp_exact(&e.jp_heegaard(w, g).map_err(|x| x.to_string())?)
}

fn lens_jp(e: &Engine, n: i64, q: i64) -> Result<u64, String> {
    heegaard_jp(e, &lens_word(n, q).map_err(|x| x.to_string())?, 1)
}

fn c1_connected_sums() -> Outcome {
    let mut seen = Vec::new();
    for (p, ks, per) in [(5, 1..=3u32, 1u64), (7, 1..=2, 2)] {
        let e = engine(p);
        for k in ks {
            let j = heegaard_jp(&e, &MCGWord::empty(), k)?;
            ensure(j == per * k as u64, || format!("p={p} k={k}: jp = {j}"))?;
            seen.push(format!("p{p}k{k}={j}"));
        }
    }
    Ok(seen.join(" "))
}

fn c2_lens_spaces() -> Outcome {
    let (e5, e7) = (engine(5), engine(7));
    let cases = [(&e5, 5, 1, 1), (&e5, 10, 3, 1), (&e7, 7, 1, 2), (&e5, 7, 1, 0), (&e7, 5, 2, 0)];
    let mut seen = Vec::new();
    for (e, n, q, want) in cases {
        let j = lens_jp(e, n, q)?;
        ensure(j == want, || format!("L({n},{q}) at p={}: {j} != {want}", e.ctx().p()))?;
        seen.push(format!("j{}(L({n},{q}))={j}", e.ctx().p()));
    }
    Ok(seen.join(" "))
}

fn c3_poincare() -> Outcome {
    let e8 = PlumbingTree::e8();
    let data = homology_data(&linking_matrix(&e8), 5);
    ensure(data.signature == -8, || format!("signature {}", data.signature))?;
    ensure(data.det == 1.into(), || format!("det {}", data.det))?;
    for p in [5, 7] {
        let e = engine(p);
        let i = invariant_ip(e.theory(), &e8).map_err(|x| x.to_string())?;
        ensure(i.valuation == Valuation::Finite(0), || format!("p={p}: v = {}", i.valuation))?;
        let j = jp_exact(&e.jp_bounds_surgery(&e8, 0).map_err(|x| x.to_string())?)?;
        ensure(j == 0, || format!("p={p}: jp = {j}"))?;
    }
    Ok("sigma=-8 det=1 v5=v7=0".into())
}

fn c4_nil_manifold() -> Outcome {
    let w: MCGWord = "a1".parse().unwrap();
    let mut seen = Vec::new();
    for (p, want, sum_s1s2) in [(5, 1, 2), (7, 2, 4)] {
        let e = engine(p);
        let mt = e.mapping_torus_valuation(&w, 1).map_err(|x| x.to_string())?;
        ensure(mt.homology.free_rank == 2, || format!("b1 = {}", mt.homology.free_rank))?;
        let j = jp_exact(&mt.jp)?;
        ensure(j == want, || format!("p={p}: jp = {j}, interval {}", mt.jp))?;
        let other = heegaard_jp(&e, &MCGWord::empty(), 2)?;
        ensure(other == sum_s1s2 && other != j, || format!("p={p}: #2 S1xS2 gave {other}"))?;
        seen.push(format!("j{p}={j} vs {other}"));
    }
    Ok(format!("b1=2 {}", seen.join(" ")))
}

fn c5_three_torus() -> Outcome {
    let mut seen = Vec::new();
    for p in [5, 7] {
        let e = engine(p);
        let d = e.ctx().d() as u64;
        let mt = e.mapping_torus_valuation(&MCGWord::empty(), 1).map_err(|x| x.to_string())?;
        ensure(mt.trace == LaurentCyc::from(CycNum::from_int(p, d)), || format!("trace {}", mt.trace))?;
        ensure(mt.valuation == Valuation::Finite(d as i64 - 1), || format!("v = {}", mt.valuation))?;
        ensure(mt.homology.free_rank == 3, || "b1 != 3".into())?;
        let j = jp_exact(&mt.jp)?;
        let sum = heegaard_jp(&e, &MCGWord::empty(), 3)?;
        ensure(j == d - 1 && sum == 3 * (d - 1), || format!("p={p}: {j} vs {sum}"))?;
        seen.push(format!("p{p}: tr={d} j={j} vs {sum}"));
    }
    Ok(seen.join(" "))
}

fn c6_normalization() -> Outcome {
    for p in [5, 7] {
        let e = engine(p);
        let ctx = *e.ctx();
        let one = Phased::new(0, LaurentCyc::one(p));
        let mut values = vec![invariant_ip(e.theory(), &PlumbingTree::empty()).map_err(|x| x.to_string())?.value];
        for f in [1, -1] {
            values.push(invariant_ip(e.theory(), &PlumbingTree::chain(&[f])).map_err(|x| x.to_string())?.value);
        }
        values.push(e.heegaard_invariant(&lens_word(1, 1).unwrap(), 1).map_err(|x| x.to_string())?);
        for v in &values {
            ensure(v.eq_up_to_phase(&one, &ctx), || format!("p={p}: {v}"))?;
            ensure(v.h_valuation() == Ok(Valuation::Finite(0)), || format!("p={p}: valuation of {v}"))?;
        }
    }
    Ok("empty, +1, -1, L(1,1) all equal 1 up to phase".into())
}

fn c7_recoupling_suites() -> Outcome {
    let mut seen = Vec::new();
    for p in [5, 7] {
        let t = Theory::new(p).unwrap();
        let pent = run_pentagon_suite(&t);
        let orth = run_orthogonality_suite(&t);
        ensure(pent.passed() && orth.passed(), || format!("p={p}: {pent:?} {orth:?}"))?;
        seen.push(format!("p{p}: pentagon {} orthogonality {}", pent.instances, orth.instances));
    }
    Ok(seen.join("; "))
}

fn c8_representation_suites() -> Outcome {
    let mut total = 0;
    for (p, g) in [(5, 1), (5, 2), (7, 1), (7, 2)] {
        let rep = Representation::new(Arc::new(Theory::new(p).unwrap()), g);
        let (report, failed) = run_relation_suite(&rep).map_err(|x| x.to_string())?;
        ensure(report.passed(), || format!("p={p} g={g}: {failed:?}"))?;
        total += report.instances;
        if g == 1 {
            let ctx = *rep.theory().ctx();
            let s = rep.rho_word(&"a1 b1 a1".parse().unwrap()).map_err(|x| x.to_string())?;
            let t = rep.rho_word(&"a1".parse().unwrap()).map_err(|x| x.to_string())?;
            let st = s.checked_mul(&t).unwrap();
            let st3 = st.checked_mul(&st).unwrap().checked_mul(&st).unwrap();
            let s2 = s.checked_mul(&s).unwrap();
            ensure(st3.eq_up_to_phase(&s2, &ctx), || format!("p={p}: (ST)^3 != S^2"))?;
            ensure(s2.eq_up_to_phase(&RepMatrix::identity(p, rep.dim()), &ctx), || "S^2 != 1".into())?;
        }
    }
    Ok(format!("{total} pair relations, (ST)^3 = S^2"))
}

fn random_tree(rng: &mut ChaCha8Rng) -> PlumbingTree {
    // at most 5 here, so the blown-up tree has at most 6 vertices
    let n = rng.gen_range(1..=5);
    let vertices = (1..=n).map(|k| (k as i64, rng.gen_range(-3..=3))).collect();
    let edges = (2..=n).map(|k| (rng.gen_range(1..k) as i64, k as i64)).collect();
    PlumbingTree::new(vertices, edges, Vec::new()).expect("random tree")
}

fn c9_kirby_moves() -> Outcome {
    let th = Theory::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..50 {
        let t = random_tree(&mut rng);
        let base = invariant_value(&th, &t).map_err(|x| x.to_string())?;
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let stab = t.disjoint_union(&PlumbingTree::chain(&[eps]));
        ensure(invariant_value(&th, &stab).map_err(|x| x.to_string())? == base, || {
            format!("tree {k} ({t}): stabilization changed the invariant")
        })?;
        // blow up a leaf on a random vertex, then blow it down again
        let (u, fu) = t.vertices()[rng.gen_range(0..t.len())];
        let leaf = t.len() as i64 + 1;
        let mut vs = t.vertices().to_vec();
        vs.push((leaf, eps));
        let mut es = t.edges().to_vec();
        es.push((u, leaf));
        let up = PlumbingTree::new(vs, es, Vec::new()).unwrap();
        let down = up.blow_down_leaf(leaf).ok_or("blow-down refused")?;
        ensure(down.vertices().iter().any(|&(v, f)| v == u && f == fu - eps), || "framing".into())?;
        let a = invariant_value(&th, &up).map_err(|x| x.to_string())?;
        let b = invariant_value(&th, &down).map_err(|x| x.to_string())?;
        ensure(a == b, || format!("tree {k} ({up}): blow-down changed the invariant"))?;
    }
    Ok("50 trees, stabilization and leaf blow-down exact".into())
}

fn c10_structure() -> Outcome {
    let mut checked = 0;
    let mut nondivisible = Vec::new();
    for p in [5, 7] {
        let e = engine(p);
        let mut results: Vec<(JpResult, u64)> = Vec::new();
        for k in 1..=(if p == 5 { 3 } else { 2 }) {
            results.push((e.jp_heegaard(&MCGWord::empty(), k).unwrap(), k as u64));
        }
        for (n, q) in [(5, 1), (10, 3), (7, 1), (5, 2), (1, 1)] {
            results.push((e.jp_heegaard(&lens_word(n, q).unwrap(), 1).unwrap(), 1));
        }
        results.push((e.mapping_torus_valuation(&MCGWord::empty(), 1).unwrap().jp, 3));
        results.push((e.mapping_torus_valuation(&"a1".parse().unwrap(), 1).unwrap().jp, 3));
        results.push((e.jp_bounds_surgery(&PlumbingTree::e8(), 0).unwrap(), 8));
        for (r, genus) in &results {
            let report = bound_chain_report(r, p, None, Some(*genus)).map_err(|x| x.to_string())?;
            ensure(report.holds(), || format!("p={p}: {r}: {:?}", report.violations))?;
            if report.divisible == Some(false) {
                nondivisible.push(format!("p{p}:{r}"));
            }
            checked += 1;
        }
    }
    let e = engine(5);
    let pairs = [((5, 1), (7, 1)), ((5, 1), (5, 2)), ((10, 3), (3, 1)), ((7, 2), (4, 1)), ((5, 1), (1, 1))];
    for ((n1, q1), (n2, q2)) in pairs {
        let parts = [(lens_word(n1, q1).unwrap(), 1), (lens_word(n2, q2).unwrap(), 1)];
        let c = e.connected_sum_jp(&parts).map_err(|x| x.to_string())?;
        ensure(c.holds, || format!("L({n1},{q1}) # L({n2},{q2}): {:?} vs {}", c.parts, c.sum))?;
    }
    let flag = if nondivisible.is_empty() {
        "all divisible by d-1".to_string()
    } else {
        format!("not divisible: {}", nondivisible.join(", "))
    };
    Ok(format!("{checked} genus bounds, 5 additive pairs, {flag}"))
}

fn c11_dimensions() -> Outcome {
    for p in [5, 7, 11] {
        let t = Theory::new(p).unwrap();
        for g in 1..=3 {
            let v = verlinde_dim(&t, g);
            let c = enumerate_even_colorings(&t, g).len() as u64;
            ensure(v == c, || format!("p={p} g={g}: {v} vs {c}"))?;
        }
        let d = t.ctx().d() as u64;
        ensure(verlinde_dim(&t, 1) == d, || format!("p={p}: dim V(T^2) != d"))?;
    }
    Ok("g<=3, p in {5,7,11}".into())
}

fn c12_ring_kernel() -> Outcome {
    for p in [5u32, 7, 11] {
        let v = CycNum::from_int(p, p).h_valuation().map_err(|x| x.to_string())?;
        ensure(v == Valuation::Finite(p as i64 - 1), || format!("v({p}) = {v}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..1000 {
        let p = [5u32, 7, 11, 13][rng.gen_range(0..4)];
        let ctx = PrimeContext::new(p).unwrap();
        let draw = |rng: &mut ChaCha8Rng| {
            let x = CycNum::from_coeffs(p, (1..p).map(|_| rng.gen_range(-5i64..=5)).collect());
            let x = &x * &ctx.h().pow(rng.gen_range(0..3));
            &x * &ctx.kappa_pow(rng.gen_range(0..60))
        };
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        let (vx, vy) = (x.h_valuation().unwrap(), y.h_valuation().unwrap());
        let vxy = (&x * &y).h_valuation().unwrap();
        ensure(vxy == vx + vy, || format!("sample {k}: {vxy} != {vx} + {vy}"))?;
    }
    Ok("v(p) = p-1; 1000 products additive".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("connected sums of S1xS2", c1_connected_sums),
        ("lens spaces", c2_lens_spaces),
        ("Poincare sphere via E8", c3_poincare),
        ("Sigma(2,3,6) sandwich", c4_nil_manifold),
        ("three-torus as mapping torus", c5_three_torus),
        ("normalization of S3", c6_normalization),
        ("recoupling identities", c7_recoupling_suites),
        ("mapping class group relations", c8_representation_suites),
        ("Kirby moves on random trees", c9_kirby_moves),
        ("genus bound, divisibility, additivity", c10_structure),
        ("Verlinde dimensions", c11_dimensions),
        ("ring kernel valuations", c12_ring_kernel),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", k + 1);
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
