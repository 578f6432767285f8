use std::path::PathBuf;

use proptest::prelude::*;
use raag_cli::{parse_graph_file, parse_word, render_graph, render_word, run, Outcome};
use raag_core::graph::{Graph, Vertex};
use raag_core::word::{Letter, Word};
use tempfile::TempDir;

const P4: &str = "# the path a-b-c-d\nvertices: a b c d\nedge a b\nedge b c\nedge c d\n";
const C5: &str = "vertices: 1 2 3 4 5\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 5 1\n";
const C4: &str = "vertices: 1 2 3 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 1\n";
const K3: &str = "vertices: x y z\nedge x y\nedge y z\nedge x z\n";
const SPLIT: &str = "vertices: x y\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: TempDir::new().unwrap(),
        };
        for (name, text) in [
            ("p4.graph", P4),
            ("c5.graph", C5),
            ("c4.graph", C4),
            ("k3.graph", K3),
            ("split.graph", SPLIT),
        ] {
            f.write(name, text);
        }
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn run(&self, args: &[&str]) -> Outcome {
        let mut argv = vec!["raag".to_string()];
        for a in args {
            argv.push(match a.strip_prefix('@') {
                Some(name) => self.path(name),
                None => a.to_string(),
            });
        }
        run(argv)
    }
}

#[test]
fn classify_examples() {
    let f = Fixture::new();
    let out = f.run(&["classify", "@p4.graph"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout.lines().next(),
        Some("NON_PATH_CONNECTED B={b} C={c}")
    );
    assert_eq!(
        f.run(&["classify", "@c4.graph"]).stdout,
        "PATH_CONNECTED_JOIN\n"
    );
    assert_eq!(f.run(&["classify", "@k3.graph"]).stdout, "SPHERE(2)\n");
    assert_eq!(
        f.run(&["classify", "@split.graph"]).stdout,
        "DISCONNECTED_BOUNDARY\n"
    );
    assert_eq!(f.run(&["classify", "@c5.graph"]).stdout, "UNKNOWN\n");
}

#[test]
fn certify_and_check() {
    let f = Fixture::new();
    let out = f.run(&["certify", "@c5.graph"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "NONE\n"));
    let out = f.run(&["certify", "@p4.graph", "--variant", "weak"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("B: b\nC: c\nvariant: weak\n"));
    f.write("good.cert", &out.stdout);
    assert_eq!(
        f.run(&["check-cert", "@p4.graph", "@good.cert"]).stdout,
        "PASS\n"
    );
    f.write(
        "bad.cert",
        "a: a\nb: b\nc: c\nd: d\nB: d\nC: c\nvariant: strict\n",
    );
    let out = f.run(&["check-cert", "@p4.graph", "@bad.cert"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("FAIL: "));
    assert!(out.stdout.contains("d-in-B"));
}

#[test]
fn word_commands() {
    let f = Fixture::new();
    let out = f.run(&["equal", "@p4.graph", "c d", "--", "d c"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "EQUAL\n"));
    let out = f.run(&["equal", "@p4.graph", "a", "b", "--", "b", "a"]);
    assert_eq!(out.code, 0);
    let out = f.run(&["equal", "@p4.graph", "a c", "--", "c a"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "NOT_EQUAL\n"));
    let out = f.run(&["normalize", "@p4.graph", "d c^-1 b c c^-1 b^-1"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "geodesic: d c^-1\ncanonical: c^-1 d\nlength: 2\n"
    );
    let out = f.run(&["normalize", "@p4.graph", "a a^-1"]);
    assert!(out.stdout.starts_with("geodesic: *\n"));
}

#[test]
fn diamond_command() {
    let f = Fixture::new();
    let out = f.run(&["diamond", "@p4.graph", "a", "--", "b", "--", "b", "--", "a"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("tau1: a\n"));
    assert!(out.stdout.contains("delta1: b\n"));
    assert!(out.stdout.contains("gamma1: *\n"));
    let out = f.run(&["diamond", "@p4.graph", "a", "--", "b", "--", "a"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["diamond", "@p4.graph", "a", "--", "c", "--", "c", "--", "a"]);
    assert_eq!(out.code, 2);
}

#[test]
fn ball_and_dot() {
    let f = Fixture::new();
    let dot = f.path("ball.dot");
    let out = f.run(&["ball", "@p4.graph", "2", "--dot", &dot]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("sphere sizes: 1 8 "));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(
        text.starts_with("graph cayley_ball {") && text.contains(" -- "),
        "{text}"
    );
    let out = f.run(&["ball", "@p4.graph", "6", "--max-elements", "100"]);
    assert_eq!(out.code, 3);
}

#[test]
fn ray_commands() {
    let f = Fixture::new();
    let out = f.run(&["verify-lines", "@p4.graph", "--nmax", "8"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("HOLDS\n"));
    assert_eq!(out.stdout.lines().count(), 10);
    let out = f.run(&["verify-lines", "@p4.graph", "--nmax", "40"]);
    assert_eq!(out.code, 3);
    assert_eq!(f.run(&["verify-lines", "@c5.graph"]).code, 1);

    let out = f.run(&["verify-close", "@p4.graph", "--i", "1", "--gamma", "c c"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("PASSED"));
    let out = f.run(&[
        "verify-close",
        "@p4.graph",
        "--i",
        "3",
        "--gamma",
        "c",
        "--enumerate-bound",
        "8",
    ]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("INCONCLUSIVE"));
    let out = f.run(&["verify-close", "@p4.graph", "--i", "0", "--gamma", "a"]);
    assert_eq!(out.code, 2);
    let out = f.run(&[
        "verify-close",
        "@p4.graph",
        "--i",
        "0",
        "--gamma",
        "b",
        "--mirror",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let f = Fixture::new();
    f.write("broken.graph", "vertices: a b\nedge a q\n");
    let out = f.run(&["classify", "@broken.graph"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"));
    assert_eq!(f.run(&["classify", "@missing.graph"]).code, 2);
    assert_eq!(f.run(&["frobnicate"]).code, 2);
    assert_eq!(f.run(&["normalize", "@p4.graph", "x"]).code, 2);
    assert_eq!(f.run(&["normalize", "@p4.graph", "a^2"]).code, 2);
    assert_eq!(f.run(&["equal", "@p4.graph", "a"]).code, 2);
    assert_eq!(
        f.run(&["certify", "@p4.graph", "--variant", "loose"]).code,
        2
    );
    assert_eq!(f.run(&["--help"]).code, 0);
}

#[test]
fn json_reports_are_deterministic() {
    let f = Fixture::new();
    let cases: [&[&str]; 6] = [
        &["--json", "classify", "@p4.graph"],
        &["certify", "@p4.graph", "--json"],
        &["--json", "normalize", "@p4.graph", "c b c^-1"],
        &["--json", "equal", "@p4.graph", "c d", "--", "d c"],
        &["--json", "ball", "@c4.graph", "3"],
        &["--json", "verify-lines", "@p4.graph", "--nmax", "4"],
    ];
    for args in cases {
        let first = f.run(args);
        let second = f.run(args);
        assert_eq!(first, second);
        let value: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
        assert!(value["command"].is_string(), "{}", first.stdout);
    }
    let out = f.run(&["--json", "classify", "@p4.graph"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["classification"], "NON_PATH_CONNECTED");
    assert_eq!(v["B"], "{b}");
    let out = f.run(&["--json", "verify-lines", "@p4.graph", "--nmax", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"][0]["lengths"].as_array().unwrap().len(), 4);
    let out = f.run(&["--json", "classify", "@missing.graph"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["exit_code"], 2);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=8, any::<u64>()).prop_map(|(n, mask)| {
        let pairs = n * (n - 1) / 2;
        Graph::from_edge_mask(n, mask & ((1u64 << pairs) - 1))
    })
}

proptest! {
    #[test]
    fn graph_files_round_trip(g in arb_graph()) {
        let back = parse_graph_file(&render_graph(&g)).unwrap();
        prop_assert_eq!(back.names(), g.names());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn words_round_trip(g in arb_graph(), raw in prop::collection::vec((0usize..8, any::<bool>()), 0..12)) {
        let n = g.vertex_count();
        let w: Word = raw
            .into_iter()
            .map(|(i, pos)| {
                let v = Vertex::from_index(i % n);
                if pos { Letter::pos(v) } else { Letter::neg(v) }
            })
            .collect();
        prop_assert_eq!(parse_word(&g, &render_word(&g, &w)).unwrap(), w);
    }
}

fn keys(out: &Outcome) -> Vec<String> {
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    v.as_object().unwrap().keys().cloned().collect()
}

/// Key sets as documented in docs/json-reports.md.
#[test]
fn json_keys_match_the_documented_schema() {
    let f = Fixture::new();
    f.write("p4.cert", "a: a\nb: b\nc: c\nd: d\nB: b\nC: c\nvariant: strict\n");
    let cases: [(&[&str], &[&str]); 9] = [
        (
            &["classify", "@p4.graph"],
            &["B", "C", "certificate", "classification", "command", "path", "sphere_dimension"],
        ),
        (&["certify", "@p4.graph"], &["certificate", "command", "found", "variant"]),
        (&["check-cert", "@p4.graph", "@p4.cert"], &["command", "failures", "passed"]),
        (
            &["normalize", "@p4.graph", "a"],
            &["canonical", "command", "deletions", "geodesic", "input", "length"],
        ),
        (&["equal", "@p4.graph", "a", "--", "a"], &["command", "equal", "w1", "w2"]),
        (
            &["diamond", "@p4.graph", "a", "--", "*", "--", "a", "--", "*"],
            &["command", "delta1", "delta2", "gamma1", "gamma2", "tau1", "tau2", "violations"],
        ),
        (
            &["ball", "@p4.graph", "1"],
            &["command", "dot", "elements", "radius", "sphere_sizes"],
        ),
        (
            &["verify-lines", "@p4.graph", "--nmax", "1"],
            &["all_hold", "certificate", "command", "n_max", "rows"],
        ),
        (
            &["verify-close", "@p4.graph", "--i", "0", "--gamma", "c"],
            &[
                "bound", "command", "geodesic", "geodesics", "i", "length", "mirrored", "path",
                "result", "target", "witness",
            ],
        ),
    ];
    for (args, want) in cases {
        let mut argv = vec!["--json"];
        argv.extend_from_slice(args);
        let out = f.run(&argv);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_eq!(keys(&out), want.to_vec(), "{args:?}");
    }
    let out = f.run(&["--json", "classify", "@nope.graph"]);
    assert_eq!(keys(&out), ["error", "exit_code"]);
}
