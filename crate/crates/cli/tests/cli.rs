use std::process::Command;

use ansatz::guess::Conjecture;
use ansatz::seq::TermVector;
use ansatz_cli::model::ModelJson;
use num_bigint::BigInt;
use num_rational::BigRational;
use ansatz_cli::{run_args, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

const TWO_POW_PLUS_ONE: &str = "2,3,5,9,17,33,65,129,257,513,1025";
const SOMOS: &str = "1,1,2,6,30,240,3120,65520,2227680,122522400";

fn run(args: &[&str]) -> ansatz_cli::Outcome {
    run_args(std::iter::once("ansatz").chain(args.iter().copied()))
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

/// Direct evaluation of `a(n) = 2^n + 1`.
fn two_pow_plus_one(count: u32) -> Vec<String> {
    (0..count).map(|n| (2u64.pow(n) + 1).to_string()).collect()
}

#[test]
fn guess_prints_recurrence() {
    let out = run(&["guess", "--terms", TWO_POW_PLUS_ONE]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(first_line(&out.stdout), "C-finite, order 2: a(n) = 3a(n-1) - 2a(n-2)");
    assert!(out.stdout.contains("conjectured"));
}

#[test]
fn gf_prints_rational_function() {
    let out = run(&["gf", "--ansatz", "cfinite", "--terms", TWO_POW_PLUS_ONE]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(first_line(&out.stdout), "-(3x-2)/(2x^2-3x+1)");
}

#[test]
fn prove_reports_bound_and_exit_codes() {
    let out = run(&["prove", "F(2n) = 2*F(n)*F(n+1) - F(n)^2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(first_line(&out.stdout), "Proven (bound 10, checked n=0..10)");
    assert_eq!(out.stdout.lines().count(), 12);

    let out = run(&["prove", "F(2n) = 2*F(n)*F(n+1)"]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(first_line(&out.stdout).starts_with("Counterexample at n="));

    let out = run(&["prove", "G(n+1) = 2*G(n)", "--define", "G=rec:1,-2;init:3", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(v["verdict"], "Proven");
    assert_eq!(v["bound"], 2);

    assert_eq!(run(&["prove", "F(n) = Q(n)"]).code, EXIT_USAGE);
    assert_eq!(run(&["prove", "F(n) = (F(n)"]).code, EXIT_USAGE);
}

#[test]
fn guess_json_round_trips_to_same_terms() {
    for terms in [TWO_POW_PLUS_ONE, SOMOS, "0,-1,0,3,8,15,24,35,48", "1,1,2,6,24,120,720,5040,40320,362880,3628800,39916800"] {
        let out = run(&["guess", "--terms", terms, "--json"]);
        assert_eq!(out.code, EXIT_OK, "{terms}: {}", out.stderr);
        let line = out.stdout.trim();
        let model = ModelJson::parse(line).unwrap();
        assert_eq!(model.to_line(), line);
        let given: Vec<&str> = terms.split(',').collect();
        assert_eq!(model.verified_terms, Some(given.len()));
        // The emitted model regenerates the input prefix.
        let eval = run(&["eval", "--model", line, "--count", &given.len().to_string()]);
        assert_eq!(eval.code, EXIT_OK);
        assert_eq!(eval.stdout.trim(), terms);
    }
}

#[test]
fn guess_failures_and_usage_errors() {
    let out = run(&["guess", "--terms", "1,5,2,7,1,8,2,8,1,8,2,8,4,5,9,0,4"]);
    assert_eq!(out.code, EXIT_FAILURE);
    let out = run(&["guess", "--terms", "1,5,2,7,1,8,2,8,1,8,2,8,4,5,9,0,4", "--json"]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(out.stdout.contains("\"no_fit\""));
    assert_eq!(run(&["guess", "--terms", "1,2,3"]).code, EXIT_USAGE);
    assert_eq!(run(&["guess"]).code, EXIT_USAGE);
    assert_eq!(run(&["guess", "--terms", "1,x"]).code, EXIT_USAGE);
    assert_eq!(run(&["guess", "--terms", "1,2", "--ansatz", "bogus"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn bfile_input_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let body: String = two_pow_plus_one(11)
        .iter()
        .enumerate()
        .map(|(n, v)| format!("{n} {v}\n"))
        .collect();
    std::fs::write(&good, format!("# 2^n + 1\n{body}")).unwrap();
    let out = run(&["guess", "--bfile", good.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(first_line(&out.stdout), "C-finite, order 2: a(n) = 3a(n-1) - 2a(n-2)");

    let gap = dir.path().join("gap.txt");
    std::fs::write(&gap, "0 1\n2 5\n").unwrap();
    let out = run(&["guess", "--bfile", gap.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n1 one\n").unwrap();
    assert_eq!(run(&["guess", "--bfile", bad.to_str().unwrap()]).code, EXIT_USAGE);
    assert_eq!(run(&["guess", "--bfile", "/nonexistent/b.txt"]).code, EXIT_USAGE);
    assert_eq!(
        run(&["guess", "--bfile", good.to_str().unwrap(), "--terms", "1,2"]).code,
        EXIT_USAGE
    );
}

#[test]
fn eval_outputs() {
    let out = run(&["eval", "--special", "bell", "--count", "7"]);
    assert_eq!(out.stdout.trim(), "1,1,2,5,15,52,203");
    let out = run(&["eval", "--special", "somos", "--count", "10"]);
    assert_eq!(out.stdout.trim(), SOMOS);
    let out = run(&["eval", "--special", "tangent", "--count", "6"]);
    assert_eq!(out.stdout.trim(), "0,1,0,1/3,0,2/15");
    let out = run(&["eval", "--model", "rec:1,-1;init:7;start:2", "--count", "2", "--bfile"]);
    assert_eq!(out.stdout, "2 7\n3 7\n");
    let out = run(&["eval", "--expr", "G(n) + F(n)", "--define", "G=rec:1,-2;init:1", "--count", "5"]);
    assert_eq!(out.stdout.trim(), "1,3,5,10,19");
    assert_eq!(run(&["eval", "--count", "3"]).code, EXIT_USAGE);
    assert_eq!(run(&["eval", "--special", "bell", "--model", "rec:1;init:"]).code, EXIT_USAGE);
}

#[test]
fn closure_commands() {
    let out = run(&["closure", "section", "--a", "rec:1,-1,-1;init:0,1", "--m", "2", "--r", "0"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(first_line(&out.stdout), "C-finite, order 2: a(n) = 3a(n-1) - a(n-2)");

    let out = run(&["closure", "psum", "--a", "rec:1,-1,-1;init:0,1", "--json"]);
    let m = ModelJson::parse(out.stdout.trim()).unwrap().to_conjecture().unwrap();
    let sums: Vec<String> = m.terms(8).unwrap().terms.iter().map(ToString::to_string).collect();
    assert_eq!(sums, ["0", "1", "2", "4", "7", "12", "20", "33"]);

    // Mixed classes promote the C-finite operand.
    let somos = run(&["guess", "--terms", SOMOS, "--json"]).stdout;
    let out = run(&["closure", "add", "--a", somos.trim(), "--b", "rec:1,-2;init:1", "--json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let m = ModelJson::parse(out.stdout.trim()).unwrap();
    assert_eq!(m.class, "X-recursive");
    let Conjecture::XRecursive(x) = m.to_conjecture().unwrap() else {
        panic!("expected an X-recursive model");
    };
    // Oracle: a(n) = F(n+1)a(n-1) plus 2^n, by direct big-integer evaluation.
    let (mut a, mut f0, mut f1) = (BigInt::from(1), BigInt::from(1), BigInt::from(1));
    let mut oracle = Vec::new();
    for n in 0..30u32 {
        if n > 0 {
            a *= &f1;
            (f0, f1) = (f1.clone(), f0 + &f1);
        }
        oracle.push(BigRational::from_integer(&a + BigInt::from(2).pow(n)));
    }
    assert!(x.annihilates(&TermVector::from_zero(oracle)));

    let out = run(&["closure", "cauchy", "--a", "rec:1,-1;init:1", "--b", "rec:1,-1;init:1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(first_line(&out.stdout).starts_with("holonomic"));

    assert_eq!(run(&["closure", "add", "--a", "rec:1,-1;init:1"]).code, EXIT_USAGE);
    assert_eq!(run(&["closure", "section", "--a", "rec:1,-1;init:1", "--m", "2", "--r", "2"]).code, EXIT_USAGE);
    assert_eq!(run(&["closure", "cauchy", "--a", somos.trim(), "--b", "rec:1,-1;init:1"]).code, EXIT_USAGE);
}

#[test]
fn gf_of_other_classes() {
    let out = run(&["gf", "--terms", "1,1,2,6,24,120,720,5040,40320,362880,3628800,39916800"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(first_line(&out.stdout), "(x-1)*f + x^2*f' = -1");

    let out = run(&["gf", "--ansatz", "polynomial", "--terms", "0,-1,0,3,8,15,24,35,48"]);
    assert_eq!(out.code, EXIT_OK);
    let line = first_line(&out.stdout);
    assert!(line.contains("(x-1)^3") || line.contains("x^3"), "{line}");

    let somos = run(&["guess", "--terms", SOMOS, "--json"]).stdout;
    let out = run(&["gf", "--model", somos.trim(), "--order", "25"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("Q[t]/(t^2-t-1)"));
    assert!(out.stdout.contains("verified to order 25"));
}

#[test]
fn zdtest_and_diag() {
    let out = run(&["zdtest", "--seq", "rec:1,0,-1;init:0,-2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("ZeroDivisor"));
    let out = run(&["zdtest", "--seq", "rec:1,-2;init:1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(v["tag"], "Unit");
    let out = run(&["zdtest", "--expr", "F(n)*F(n+1) - F(n+1)*F(n)"]);
    assert!(out.stdout.starts_with("EventuallyZero"), "{}", out.stdout);
    assert_eq!(run(&["zdtest"]).code, EXIT_USAGE);

    let out = run(&["diag", "--k", "2", "--m", "2", "--n", "10,11,12"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "N=10: 20 equations, 20 variables, not overdetermined");
    assert_eq!(lines[2], "N=12: 26 equations, 24 variables, overdetermined");
}

#[test]
fn binary_uses_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ansatz");
    let ok = Command::new(bin).args(["guess", "--terms", TWO_POW_PLUS_ONE]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("C-finite, order 2"));
    let fail = Command::new(bin).args(["prove", "F(2n) = 2*F(n)*F(n+1)"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAILURE));
    let usage = Command::new(bin).args(["guess", "--terms", "a,b"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(!usage.stderr.is_empty());
}
