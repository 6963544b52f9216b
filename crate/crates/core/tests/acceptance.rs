//! One line per acceptance criterion. Exits nonzero if any line fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{orbcheck, scratch, schlafli, shape_oracle};
use orbcheck::enumerator::{
    classify_tetrahedral, enumerate_areflection_models, enumerate_shapes, exclude_quadrilateral_type, FamilyName,
    Verdict,
};
use orbcheck::geomvol::{lobachevsky, volume, CoxeterTetrahedron};
use orbcheck::homology::{cokernel, h1, relation_matrix_oriented, smith_normal_form, IntegerMatrix};
use orbcheck::orb2d::TwoOrbifold;
use orbcheck::siggraph::{canonical_code, dump, from_tetra, CanonicalCode, CellRef, LabeledGraph, TetraPattern};

const FAST: Duration = Duration::from_secs(1);
const MODELS_LIMIT: Duration = Duration::from_secs(30);
const LOBACHEVSKY_TOL: f64 = 1e-10;
const SCHLAFLI_TOL: f64 = 1e-7;
const DEGREE_TOL: f64 = 1e-4;
const FIGURE_EIGHT_VOLUME: f64 = 2.029_883_212_8;
const SNF_CASES: u32 = 1000;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

fn sphere(o: [u32; 3]) -> TwoOrbifold {
    TwoOrbifold::sphere(&o).unwrap()
}

fn excluded(v: Verdict) -> bool {
    v.name().starts_with("Excluded")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn sorted(mut l: [u32; 3]) -> [u32; 3] {
    l.sort();
    l
}

fn criterion_1() -> Outcome {
    let (cands, dt) = timed(|| classify_tetrahedral(&sphere([2, 3, 6]), 12).unwrap());
    let interior = |c: &orbcheck::enumerator::Candidate| sorted(c.pattern.unwrap().interior_labels());
    let survivors: Vec<[u32; 3]> = cands.iter().filter(|c| !excluded(c.verdict)).map(interior).collect();
    let h1_out: Vec<[u32; 3]> = cands
        .iter()
        .filter(|c| c.verdict == Verdict::ExcludedH1)
        .filter(|c| c.invariants.h1.torsion == [2, 2] && c.invariants.h1.free_rank == 0)
        .map(interior)
        .collect();
    check(
        survivors == [[2, 2, 3], [2, 2, 5]] && h1_out == [[2, 2, 2], [2, 2, 4]] && cands.len() == 4 && dt < FAST,
        format!("survivors {survivors:?}, H1 = Z/2+Z/2 for {h1_out:?}, {dt:?}"),
    )
}

fn criterion_2() -> Outcome {
    let (cands, dt) = timed(|| classify_tetrahedral(&sphere([2, 4, 4]), 12).unwrap());
    let free: Vec<_> = cands.iter().filter(|c| c.invariants.symmetry_count == 0).collect();
    let ok = free.len() == 1
        && free[0].verdict == Verdict::WhiteheadClassNoKnot
        && sorted(free[0].pattern.unwrap().interior_labels()) == [2, 2, 3]
        && dt < FAST;
    let shown: Vec<String> = free.iter().map(|c| format!("{} {}", c.pattern.unwrap(), c.verdict)).collect();
    check(ok, format!("symmetry-free survivors {shown:?}, {dt:?}"))
}

fn criterion_3() -> Outcome {
    let (cands, dt) = timed(|| classify_tetrahedral(&sphere([3, 3, 3]), 12).unwrap());
    let target = sphere([2, 3, 6]);
    let bad: Vec<String> = cands
        .iter()
        .filter(|c| {
            let twos = c.pattern.unwrap().interior_labels().iter().filter(|&&l| l == 2).count();
            twos < 2 || c.quotient.as_ref().is_none_or(|q| q.cusp != target)
        })
        .map(|c| c.pattern.unwrap().to_string())
        .collect();
    check(
        !cands.is_empty() && bad.is_empty() && dt < FAST,
        format!("{} survivors, failing {bad:?}, {dt:?}", cands.len()),
    )
}

fn codes(gs: &[LabeledGraph]) -> Vec<CanonicalCode> {
    let mut c: Vec<CanonicalCode> = gs.iter().map(canonical_code).collect();
    c.sort();
    c
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (boundary, oracle_inner) in [(3, 5), (4, 4)] {
        let at8 = enumerate_shapes(boundary, 8).unwrap();
        let at12 = enumerate_shapes(boundary, 12).unwrap();
        let oracle = shape_oracle::shapes(boundary, oracle_inner);
        let small = enumerate_shapes(boundary, oracle_inner).unwrap();
        let this = at8.len() == 1 && codes(&at8) == codes(&at12) && codes(&small) == codes(&oracle) && codes(&at8) == codes(&oracle);
        ok &= this;
        notes.push(format!(
            "boundary {boundary}: {} at 8, {} at 12, oracle {} within {oracle_inner}",
            at8.len(),
            at12.len(),
            oracle.len()
        ));
    }
    let tetra = from_tetra(&TetraPattern::new([2, 3, 6], [2, 2, 2]).unwrap());
    let shape = enumerate_shapes(3, 8).unwrap();
    let same = shape.len() == 1 && shape[0].edge_count() == tetra.edge_count() && shape[0].vertex_count() == tetra.vertex_count();
    ok &= same;
    notes.push(format!("tetrahedral graph {same}"));
    check(ok, notes.join("; "))
}

fn criterion_5() -> Outcome {
    let c = exclude_quadrilateral_type();
    let g = &c.pattern;
    let Some(last) = c.steps.last() else {
        return Err("empty certificate".into());
    };
    let edges: Vec<usize> = last
        .witness
        .iter()
        .filter_map(|w| match w {
            CellRef::Edge(id) => g.edge_index(*id),
            _ => None,
        })
        .collect();
    let disjoint = edges.len() == 2 && {
        let [a, b] = [g.edges()[edges[0]].ends, g.edges()[edges[1]].ends];
        a.iter().all(|v| !b.contains(v))
    };
    let twos = edges.iter().all(|&e| g.label(e) == 2);
    check(
        c.verify() && c.cusp == TwoOrbifold::sphere(&[2, 2, 2, 2]).unwrap() && disjoint && twos,
        format!("cusp {}, witness edges {edges:?}, disjoint {disjoint}, labeled 2 {twos}", c.cusp),
    )
}

fn criterion_6() -> Outcome {
    let (fams, dt) = timed(|| enumerate_areflection_models(12, 8).unwrap());
    let find = |n: FamilyName| fams.iter().find(|f| f.name == n);
    let names: Vec<&str> = fams.iter().map(|f| f.name.as_str()).collect();
    let y333 = find(FamilyName::Y333).is_some_and(|f| f.admissible_n == [2, 3, 4, 5]);
    let y244 = find(FamilyName::Y244)
        .is_some_and(|f| f.admissible_n == (2..=12).collect::<Vec<_>>() && f.unbounded_above);
    let xo = find(FamilyName::XO).is_some_and(|f| f.cusps == [sphere([3, 3, 3])]);
    let tetra = find(FamilyName::Tetrahedral).is_some();
    check(
        fams.len() == 4 && y333 && y244 && xo && tetra && dt < MODELS_LIMIT,
        format!("families {names:?}, Y333 {y333}, Y244 {y244}, XO {xo}, tetrahedral {tetra}, {dt:?}"),
    )
}

fn det_is_unit(m: &IntegerMatrix) -> bool {
    m.determinant().abs().is_one()
}

fn smith_ok(a: &IntegerMatrix) -> bool {
    let (s, u, v) = smith_normal_form(a);
    if u.mul(a).mul(&v) != s || !det_is_unit(&u) || !det_is_unit(&v) {
        return false;
    }
    let k = s.rows().min(s.cols());
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s.get(i, j).is_zero() {
                return false;
            }
        }
    }
    (0..k).all(|i| !s.get(i, i).is_negative())
        && (1..k).all(|i| {
            let (p, q): (&BigInt, &BigInt) = (s.get(i - 1, i - 1), s.get(i, i));
            if p.is_zero() {
                q.is_zero()
            } else {
                q.is_multiple_of(p)
            }
        })
}

fn criterion_7() -> Outcome {
    let strategy = (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |x| {
            IntegerMatrix::from_rows(&x.chunks(c).map(|row| row.to_vec()).collect::<Vec<_>>())
        })
    });
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7u8; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let mut failures = 0;
    for _ in 0..SNF_CASES {
        let m = strategy.new_tree(&mut runner).unwrap().current();
        if !smith_ok(&m) {
            failures += 1;
        }
    }
    let mut graphs = 0;
    let mut flip_failures = 0;
    for c in [[2, 3, 6], [2, 4, 4], [3, 3, 3]] {
        for cand in classify_tetrahedral(&sphere(c), 12).unwrap() {
            let g = &cand.graph;
            let base = h1(g);
            graphs += 1;
            for mask in 0u32..64 {
                let flip: Vec<bool> = (0..6).map(|i| mask >> i & 1 == 1).collect();
                if cokernel(&relation_matrix_oriented(g, &flip)) != base {
                    flip_failures += 1;
                }
            }
        }
    }
    check(
        failures == 0 && flip_failures == 0 && graphs > 0,
        format!("{SNF_CASES} matrices, {failures} SNF failures; {graphs} tetra graphs x 64 flips, {flip_failures} changed H1"),
    )
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=1000 {
        let t = -3.0 + 6.0 * i as f64 / 1000.0;
        let l = lobachevsky;
        worst = worst
            .max((l(-t) + l(t)).abs())
            .max((l(t + PI) - l(t)).abs())
            .max((l(2.0 * t) - 2.0 * (l(t) + l(t + PI / 2.0))).abs());
    }
    let p = TetraPattern::new([2, 3, 6], [2, 2, 3]).unwrap();
    let t = CoxeterTetrahedron::from_pattern(&p);
    let v = volume(&t).unwrap();
    let oracle = schlafli::volume(t.labels(), 64).unwrap();
    let ratio = FIGURE_EIGHT_VOLUME / (2.0 * v);
    let degree = ratio.round();
    check(
        worst < LOBACHEVSKY_TOL && (v - oracle).abs() < SCHLAFLI_TOL && (ratio - degree).abs() < DEGREE_TOL,
        format!(
            "identity error {worst:.1e}; volume {v:.12} vs {oracle:.12}; ratio {ratio:.8}, degree {degree}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let graph_file = scratch("acceptance.graph");
    std::fs::write(&graph_file, dump(&from_tetra(&TetraPattern::new([2, 3, 6], [2, 2, 3]).unwrap()))).unwrap();
    let file = graph_file.to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["turnovers"],
        vec!["classify", "--cusp", "2,3,6", "--bound", "12"],
        vec!["classify", "--cusp", "2,4,4", "--bound", "12"],
        vec!["classify", "--cusp", "3,3,3", "--bound", "12"],
        vec!["h1", "--cusp", "2,3,6", "--interior", "2,2,2"],
        vec!["shapes", "--boundary", "3", "--max-interior", "8"],
        vec!["shapes", "--boundary", "4", "--max-interior", "8"],
        vec!["models", "--n-max", "12"],
        vec!["volume", "--cusp", "2,3,6", "--interior", "2,2,3"],
        vec!["quad-exclusion"],
        vec!["decide", "--facts", "ap_knot,covers_reflection_orbifold"],
        vec!["graph", "dump", &file],
        vec!["graph", "load", &file],
    ];
    let mut differing = Vec::new();
    let mut runs = 0;
    for cmd in &commands {
        for format in ["text", "json"] {
            let mut args = vec!["--format", format];
            args.extend(cmd.iter().copied());
            let outs: Vec<_> = [Some(1), Some(1), Some(8), Some(8)]
                .into_iter()
                .map(|t| orbcheck(&args, t))
                .collect();
            runs += outs.len();
            let ok = outs.iter().all(|o| o.status.success() && o.stdout == outs[0].stdout && !o.stdout.is_empty());
            if !ok {
                differing.push(format!("{format} {}", cmd.join(" ")));
            }
        }
    }
    std::fs::remove_file(&graph_file).ok();
    check(differing.is_empty(), format!("{runs} runs over {} commands, differing {differing:?}", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cusp (2,3,6) classification", criterion_1),
        ("cusp (2,4,4) branch", criterion_2),
        ("cusp (3,3,3) branch", criterion_3),
        ("small shapes against brute force", criterion_4),
        ("quadrilateral exclusion witness", criterion_5),
        ("model families", criterion_6),
        ("homology engine", criterion_7),
        ("volume engine", criterion_8),
        ("determinism across thread counts", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("criterion {}: PASS {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {d}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
