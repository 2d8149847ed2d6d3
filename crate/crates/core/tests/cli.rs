use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momentsheaf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Bruhat order on permutations by the tableau criterion.
fn tableau_leq(x: &[usize], y: &[usize]) -> bool {
    let n = x.len();
    (0..n).all(|i| (0..n).all(|k| x[..=i].iter().filter(|&&v| v >= k).count() <= y[..=i].iter().filter(|&&v| v >= k).count()))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn kl_table_for_sl3_is_all_ones() {
    let o = run(&["kl", "--type", "A2", "--word", "longest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(text.lines().next(), Some("x,y,poly"));
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with(",1")), "{text}");
}

#[test]
fn verify_counts_every_comparable_pair() {
    let perms = permutations(4);
    let pairs = perms.iter().flat_map(|x| perms.iter().map(move |y| (x, y))).filter(|(x, y)| tableau_leq(x, y)).count();
    let o = run(&["verify", "--type", "A3", "--word", "longest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains(&format!("{pairs}/{pairs} KL values match")), "{text}");
    assert!(text.ends_with("verify: PASS\n"));
}

#[test]
fn verify_parabolic() {
    let o = run(&["verify", "--type", "A3", "--parabolic", "1,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn loaded_graph_needs_degree_bound() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let o = run(&["graph", "--type", "A2", "--out", path.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 6);
    assert!(json["edges"][0]["direction"][0].as_str().unwrap().contains('/'));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));

    let o = run(&["kl", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-degree"));
    let o = run(&["kl", "--graph", path.to_str().unwrap(), "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn polygon_needs_acknowledgment() {
    let o = run(&["kl", "--type", "A2", "--algorithm", "polygon"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["kl", "--type", "B2", "--algorithm", "polygon", "--accept-approximation"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validation_and_cap_exit_codes() {
    assert_eq!(run(&["kl", "--type", "A2", "--word", "11"]).status.code(), Some(2));
    assert_eq!(run(&["kl", "--type", "A3", "--parabolic", "4"]).status.code(), Some(2));
    assert_eq!(run(&["kl", "--type", "D"]).status.code(), Some(2));
    assert_eq!(run(&["kl", "--type", "A2", "--word", "21", "--parabolic", "1"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_momentsheaf"))
        .args(["graph", "--type", "A3"])
        .env("MOMENTSHEAF_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn family_and_rank_flags() {
    let o = run(&["graph", "--type", "D", "--rank", "4", "--word", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["dim_t"], 4);
    assert_eq!(json["vertices"].as_array().unwrap().len(), 2);
}

#[test]
fn hilbert_table() {
    let o = run(&["hilbert", "--type", "A2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "d,intersection,ordinary");
    // Smooth: both equal the number of elements of each length.
    assert_eq!(&rows[1..5], &["0,1,1", "1,2,2", "2,2,2", "3,1,1"]);
}

#[test]
fn threads_do_not_change_artifacts() {
    let a = run(&["sheaf", "--type", "A3", "--word", "2132"]);
    let b = run(&["sheaf", "--type", "A3", "--word", "2132", "--threads", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
