use std::collections::BTreeSet;

use trifourier::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["trifourier"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Splits a table line into members. Commas separate members only at bracket
/// depth zero.
fn members(line: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in line.chars() {
        match ch {
            '<' => depth += 1,
            '>' => depth -= 1,
            ',' if depth == 0 => {
                out.insert(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.insert(cur);
    out
}

fn fiber_sets(text: &str) -> BTreeSet<BTreeSet<String>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(members).collect()
}

fn golden(dim: usize) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/family_d{dim}.txt", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn tables_match_as_fiber_sets() {
    for dim in [2, 4, 6] {
        let (code, out, _) = run(&["family", "--dim", &dim.to_string()]);
        assert_eq!(code, 0);
        let expected = golden(dim);
        assert_eq!(out.lines().count(), expected.lines().count(), "D={dim}");
        assert_eq!(fiber_sets(&out), fiber_sets(&expected), "D={dim}");
    }
}

#[test]
fn d2_lines_are_byte_exact() {
    let (_, out, _) = run(&["family", "--dim", "2"]);
    assert_eq!(out, "∅,<3>\n<1>\n<2>\n");
}

#[test]
fn member_strings_are_byte_exact() {
    // Every member string of the printed tables occurs verbatim.
    for dim in [4, 6] {
        let (_, out, _) = run(&["family", "--dim", &dim.to_string()]);
        let ours: BTreeSet<String> = out.lines().flat_map(members).collect();
        let theirs: BTreeSet<String> = golden(dim).lines().flat_map(members).collect();
        assert_eq!(ours, theirs);
    }
}

/// `true` when `run` lists an odd circular run of `[1, n]` from its start.
fn is_odd_run(run: &[usize], n: usize) -> bool {
    run.len() % 2 == 1
        && run.len() < n
        && run.iter().all(|&v| (1..=n).contains(&v))
        && run.windows(2).all(|w| w[1] == w[0] % n + 1)
}

#[test]
fn compact_grammar_d8() {
    let (code, out, _) = run(&["family", "--dim", "8"]);
    assert_eq!(code, 0);
    let mut total = 0;
    for line in out.lines() {
        for m in members(line) {
            total += 1;
            if m == "∅" {
                continue;
            }
            let inner = m.strip_prefix('<').and_then(|s| s.strip_suffix('>')).unwrap();
            let runs: Vec<Vec<usize>> = inner
                .split(',')
                .map(|g| g.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
                .collect();
            assert!(runs.iter().all(|r| is_odd_run(r, 9)), "{m}");
            assert!(runs.windows(2).all(|w| (w[0].len(), &w[0]) <= (w[1].len(), &w[1])), "{m}");
        }
    }
    assert_eq!(total, 256);
}

#[test]
fn family_json_uses_integer_arrays() {
    let (code, out, _) = run(&["family", "--dim", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 4);
    let members = v["members"].as_array().unwrap();
    assert_eq!(members.len(), 16);
    let lists: BTreeSet<Vec<Vec<u64>>> = members
        .iter()
        .map(|m| serde_json::from_value(m["intervals"].clone()).unwrap())
        .collect();
    assert!(lists.contains(&vec![vec![1], vec![5, 1, 2]]));
    assert_eq!(v["fibers"].as_array().unwrap().len(), 10);
}

#[test]
fn output_is_deterministic() {
    for args in [&["family", "--dim", "6"][..], &["matrix", "--dim", "4", "--format", "csv"][..]] {
        assert_eq!(run(args).1, run(args).1);
    }
}
