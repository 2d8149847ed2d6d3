//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every comparison is exact. Expected values come from the Hecke-algebra
//! oracle, from closed-form dimension counts, or from the published SL3 values.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use momentsheaf::coxeter::{CartanDatum, WeylGroup};
use momentsheaf::hecke::{KlTable, QPoly};
use momentsheaf::moment_graph::{schubert_moment_graph, MomentGraph};
use momentsheaf::sheaf::{
    boundary_image, canonical_sheaf, drop_generator, global_hilbert, monotonicity_check, polygon_image, stalk_poincare,
    structure_sheaf, verify_pure, GammaSheaf, ImageAlgorithm, KLPolynomial, SheafOptions,
};

/// Wall-clock limits, generous for unoptimised test builds.
const SMOKE_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);

/// Fixed non-maximal words per group; the longest element is always added.
const SUITE: [(&str, [&str; 5]); 4] = [
    ("A2", ["e", "1", "2", "12", "21"]),
    ("B2", ["1", "12", "21", "121", "212"]),
    ("G2", ["121", "1212", "2121", "12121", "21212"]),
    ("A3", ["2132", "12321", "1232", "2321", "13"]),
];

/// Grassmannian-type parabolics of A3, 0-based.
const PARABOLICS: [[usize; 2]; 3] = [[0, 1], [1, 2], [0, 2]];

struct Case {
    group: WeylGroup,
    top: usize,
    graph: MomentGraph,
    sheaf: GammaSheaf,
}

fn group(name: &str) -> WeylGroup {
    WeylGroup::build(CartanDatum::parse(name).expect("known type")).expect("group within cap")
}

fn build(g: &MomentGraph) -> GammaSheaf {
    canonical_sheaf(g, &SheafOptions { check_extra_degree: true, ..Default::default() }).expect("construction")
}

fn case(name: &str, word: &str) -> Case {
    let group = group(name);
    let top = group.parse_word(word).expect("reduced word");
    let graph = schubert_moment_graph(&group, top, &[]).expect("graph");
    let sheaf = build(&graph);
    Case { group, top, graph, sheaf }
}

fn suite() -> Vec<Case> {
    SUITE
        .iter()
        .flat_map(|(name, words)| std::iter::once("longest").chain(words.iter().copied()).map(move |w| case(name, w)))
        .collect()
}

fn as_qpoly(p: &KLPolynomial) -> QPoly {
    p.coefficients().iter().map(|&c| c as i64).collect()
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

type Verdict = Result<String, String>;

fn check(ok: bool, pass: String, fail: String) -> Verdict {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn sl3_smoke() -> Verdict {
    let start = Instant::now();
    let c = case("A2", "longest");
    let ones = (0..c.graph.num_vertices()).all(|x| stalk_poincare(&c.sheaf, x) == KLPolynomial::one());
    let s = c.graph.vertex("1").map_err(|e| e.to_string())?;
    let dims: Vec<usize> = (0..5).map(|d| boundary_image(&c.sheaf, s, d, ImageAlgorithm::Sections).rank()).collect();
    // A / (product of two independent linear forms) in two variables.
    let expected: Vec<usize> = (0..5usize).map(|d| (d + 1) - d.saturating_sub(1)).collect();
    let elapsed = start.elapsed();
    check(
        ones && dims == expected && elapsed < SMOKE_LIMIT,
        format!("six stalks equal 1; boundary dims at s {dims:?}; {elapsed:.2?}"),
        format!("stalks all 1: {ones}; boundary dims {dims:?} vs {expected:?}; {elapsed:.2?}"),
    )
}

fn pappus() -> Verdict {
    let start = Instant::now();
    let c = case("A2", "longest");
    let x = c.graph.vertex("e").map_err(|e| e.to_string())?;
    let polygon = polygon_image(&c.sheaf, x, 1).rank();
    let sections = boundary_image(&c.sheaf, x, 1, ImageAlgorithm::Sections).rank();
    let elapsed = start.elapsed();
    check(
        polygon == 3 && sections == 2 && elapsed < SMOKE_LIMIT,
        format!("degree 1 at the identity: polygon {polygon}, sections {sections}; {elapsed:.2?}"),
        format!("polygon {polygon} (want 3), sections {sections} (want 2); {elapsed:.2?}"),
    )
}

fn oracle_equivalence(cases: &[Case], elapsed: Duration) -> Verdict {
    let (mut total, mut bad) = (0, Vec::new());
    for c in cases {
        let mut table = KlTable::new(&c.group);
        for x in 0..c.graph.num_vertices() {
            let y = c.group.parse_word(c.graph.label(x)).expect("label is a word");
            let expected = table.kl_polynomial(y, c.top).expect("y <= w");
            total += 1;
            if as_qpoly(&stalk_poincare(&c.sheaf, x)) != expected {
                bad.push(format!("{} {}:{}", c.group.cartan().name(), c.graph.label(x), c.group.label(c.top)));
            }
        }
    }
    check(
        bad.is_empty() && elapsed < SWEEP_LIMIT,
        format!("{total}/{total} stalks over {} graphs match the oracle; construction {elapsed:.2?}", cases.len()),
        format!("mismatches {bad:?}; construction {elapsed:.2?}"),
    )
}

fn parabolic() -> Verdict {
    let a3 = group("A3");
    let mut table = KlTable::new(&a3);
    let mut notes = Vec::new();
    let mut ok = true;
    for j in PARABOLICS {
        let top = a3.minimal_rep(a3.longest(), &j);
        let g = schubert_moment_graph(&a3, top, &j).map_err(|e| e.to_string())?;
        let s = build(&g);
        for x in 0..g.num_vertices() {
            let y = a3.parse_word(g.label(x)).expect("label is a word");
            let expected = table.parabolic_kl(&j, y, top).map_err(|e| e.to_string())?;
            if as_qpoly(&stalk_poincare(&s, x)) != expected {
                ok = false;
                notes.push(format!("J={j:?} KL mismatch at {}", g.label(x)));
            }
            if !g.finite_two_orbit_test(x) {
                ok = false;
                notes.push(format!("J={j:?} two-orbit test false at {}", g.label(x)));
            }
            for d in 0..=s.degree_bound(x) + 1 {
                let a = boundary_image(&s, x, d, ImageAlgorithm::Sections);
                if polygon_image(&s, x, d).basis() != a.basis() {
                    ok = false;
                    notes.push(format!("J={j:?} polygon differs at {} degree {d}", g.label(x)));
                }
            }
        }
    }
    check(ok, "three Grassmannian graphs: KL, two-orbit test and polygon image all agree".into(), notes.join("; "))
}

fn planar(cases: &[Case]) -> Verdict {
    let (mut total, mut bad) = (0, Vec::new());
    for c in cases {
        for x in 0..c.graph.num_vertices() {
            for d in 0..=c.sheaf.degree_bound(x) + 1 {
                total += 1;
                let a = boundary_image(&c.sheaf, x, d, ImageAlgorithm::Sections);
                let b = boundary_image(&c.sheaf, x, d, ImageAlgorithm::Planar);
                if a.basis() != b.basis() {
                    bad.push(format!("{} {} d={d}", c.group.label(c.top), c.graph.label(x)));
                }
            }
        }
    }
    check(bad.is_empty(), format!("{total}/{total} images agree"), format!("differences {bad:?}"))
}

fn purity(cases: &[Case]) -> Verdict {
    let impure: Vec<String> =
        cases.iter().filter(|c| !verify_pure(&c.sheaf).is_pure()).map(|c| c.group.label(c.top)).collect();
    // Drop the degree-1 generator of the singular stalk at the identity.
    let c = case("A3", "2132");
    let e = c.graph.vertex("e").map_err(|e| e.to_string())?;
    let i = c.sheaf.vertex_generators(e).iter().position(|&d| d == 1).ok_or("no degree-1 generator")?;
    let broken = drop_generator(&c.sheaf, e, i).map_err(|e| e.to_string())?;
    let report = verify_pure(&broken);
    let caught = report.first().map(|v| v.axiom) == Some(3);
    check(
        impure.is_empty() && caught,
        format!("{} sheaves pure; mutation caught by axiom (3)", cases.len()),
        format!("impure {impure:?}; mutation verdict {:?}", report.first().map(|v| v.to_string())),
    )
}

fn monotonicity(cases: &[Case]) -> Verdict {
    let (mut triples, mut pairs, mut bad) = (0usize, 0usize, Vec::new());
    for c in cases.iter().filter(|c| c.group.cartan().name() == "A3") {
        let g = &c.graph;
        for z in 0..g.num_vertices() {
            let zw = c.group.parse_word(g.label(z)).expect("label is a word");
            let sub = schubert_moment_graph(&c.group, zw, &[]).expect("graph");
            let s = build(&sub);
            for x in 0..sub.num_vertices() {
                for y in 0..sub.num_vertices() {
                    if sub.leq(x, y) {
                        triples += 1;
                        if !stalk_poincare(&s, x).dominates(&stalk_poincare(&s, y)) {
                            bad.push(format!("P[{},{}] < P[{},{}]", sub.label(x), g.label(z), sub.label(y), g.label(z)));
                        }
                    }
                }
            }
        }
        for x in 0..g.num_vertices() {
            for y in 0..g.num_vertices() {
                if g.leq(x, y) {
                    pairs += 1;
                    let onto = monotonicity_check(&c.sheaf, x, y).map_err(|e| e.to_string())?;
                    if !onto.iter().all(|&b| b) {
                        bad.push(format!("m[{},{}] not onto", g.label(y), g.label(x)));
                    }
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{triples} triples dominate; {pairs} transport maps surjective"),
        format!("{bad:?}"),
    )
}

fn global_sections(cases: &[Case]) -> Verdict {
    let mut bad = Vec::new();
    for c in cases {
        let mut table = KlTable::new(&c.group);
        let top_len = c.group.length(c.top);
        let mut expected = vec![0i64; top_len + 2];
        for y in c.group.bruhat_interval_below(c.top) {
            for (i, &a) in table.kl_polynomial(y, c.top).expect("y <= w").iter().enumerate() {
                expected[c.group.length(y) + i] += a;
            }
        }
        let ours = global_hilbert(&c.sheaf, top_len + 1).map_err(|e| e.to_string())?;
        let ours: Vec<i64> = ours.into_iter().map(|d| d as i64).collect();
        if trim(ours.clone()) != trim(expected.clone()) {
            bad.push(format!("{}: {ours:?} vs {expected:?}", c.group.label(c.top)));
        }
    }
    check(bad.is_empty(), format!("{} Hilbert series match", cases.len()), bad.join("; "))
}

fn structure(cases: &[Case]) -> Verdict {
    let mut bad = Vec::new();
    let mut count = 0;
    for c in cases.iter().filter(|c| c.top == c.group.longest()) {
        count += 1;
        let n = c.group.length(c.top) + 1;
        let ours = global_hilbert(&structure_sheaf(&c.graph), n).map_err(|e| e.to_string())?;
        let by_length: Vec<usize> = (0..=n).map(|d| (0..c.group.len()).filter(|&w| c.group.length(w) == d).count()).collect();
        if ours != by_length {
            bad.push(format!("{}: {ours:?} vs {by_length:?}", c.group.cartan().name()));
        }
    }
    check(bad.is_empty(), format!("{count} full flag graphs match length counts"), bad.join("; "))
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("verify{run}.txt"));
        let status = Command::new(env!("CARGO_BIN_EXE_momentsheaf"))
            .args(["verify", "--type", "A3", "--word", "longest", "--threads", "4", "--out"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("run {run} exited with {:?}", status.status.code()));
        }
        outputs.push((std::fs::read(&path).map_err(|e| e.to_string())?, status.stdout));
    }
    check(
        outputs[0] == outputs[1],
        format!("two runs byte-identical ({} bytes)", outputs[0].0.len()),
        "runs differ".into(),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cases = suite();
    let construction = start.elapsed();
    let results: Vec<(&str, Verdict)> = vec![
        ("SL3 smoke test", sl3_smoke()),
        ("Pappus regression", pappus()),
        ("oracle equivalence", oracle_equivalence(&cases, construction)),
        ("parabolic check", parabolic()),
        ("planar equivalence", planar(&cases)),
        ("purity suite", purity(&cases)),
        ("monotonicity", monotonicity(&cases)),
        ("global sections", global_sections(&cases)),
        ("structure sheaf", structure(&cases)),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, verdict)) in results.iter().enumerate() {
        match verdict {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
