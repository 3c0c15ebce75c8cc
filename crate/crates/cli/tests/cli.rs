use std::path::PathBuf;
use std::process::Command as Process;

use dsp_cli::report::{BigNumber, Report};
use dsp_cli::{run, Command, ExitStatus, OutputFormat, RunConfig};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.grp"))
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dsp-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn report(config: &RunConfig) -> Report {
    run(config).report.expect("report")
}

#[test]
fn explore_trefoil() {
    let r = report(&RunConfig::new(Command::Explore, corpus("trefoil")));
    let outcome = r.outcome.unwrap();
    assert_eq!(outcome.kind, "PositiveBetti");
    assert_eq!(outcome.level, 0);
    assert_eq!(outcome.verdict.as_deref(), Some("virtual-betti-witness"));
    assert_eq!(r.steps.len(), 1);
    assert_eq!(r.steps[0].betti, 1);
    assert_eq!(r.steps[0].index_in_root, BigNumber::Small(1));
}

#[test]
fn abelianize_free_group() {
    let r = report(&RunConfig::new(Command::Abelianize, corpus("free2")));
    let a = r.abelianization.unwrap();
    assert_eq!(a.betti, 2);
    assert!(a.torsion.is_empty());
}

#[test]
fn audit_of_binary_icosahedral_trivial_subgroup() {
    let config = RunConfig {
        max_index: 1,
        ..RunConfig::new(Command::GaloisAudit, corpus("binary-icosahedral"))
    };
    let result = run(&config);
    assert_eq!(result.status, ExitStatus::Success);
    let r = result.report.unwrap();
    let regular = r.verdicts.iter().find(|v| v.source == "regular").unwrap();
    assert_eq!(regular.verdict, "lemma-window");
    assert_eq!(regular.deck_order, BigNumber::Small(120));
    assert!(regular.deck_perfect);
    assert_eq!(regular.cover_betti, 0);
    // the whole group as its own trivial cover
    assert_eq!(r.verdicts[0].subgroup_index, 1);
    assert_eq!(r.verdicts[0].verdict, "lemma-window");
}

#[test]
fn steps_are_replayable() {
    let r = report(&RunConfig::new(Command::Explore, corpus("q8")));
    assert_eq!(r.steps.len(), 3);
    let last = &r.steps[1];
    let path = scratch_file("q8-level1.grp", &last.presentation);
    let replay = report(&RunConfig::new(Command::Explore, &path));
    assert_eq!(replay.steps[0].betti, last.betti);
    assert_eq!(replay.steps[0].torsion, last.torsion);
    assert_eq!(replay.outcome.unwrap().level, 1);
}

#[test]
fn json_round_trip() {
    for name in ["q8", "trefoil", "s3", "binary-icosahedral"] {
        for command in [
            Command::Explore,
            Command::Abelianize,
            Command::LowIndex,
            Command::GaloisAudit,
        ] {
            let config = RunConfig {
                max_index: 4,
                ..RunConfig::new(command, corpus(name))
            };
            let r = report(&config);
            let json = r.to_json();
            assert_eq!(
                Report::from_json(&json).unwrap(),
                r,
                "{name} {}",
                command.as_str()
            );
        }
    }
}

#[test]
fn large_integers_serialize_as_strings() {
    let n: num_bigint::BigInt = "123456789012345678901234567890".parse().unwrap();
    assert_eq!(
        serde_json::to_string(&BigNumber::from(&n)).unwrap(),
        "\"123456789012345678901234567890\""
    );
    assert_eq!(
        serde_json::to_string(&BigNumber::from(7usize)).unwrap(),
        "7"
    );
}

#[test]
fn parse_errors_carry_line_numbers() {
    let path = scratch_file("bad.grp", "# header\ngens: a b\nrel: a^2 c\n");
    let result = run(&RunConfig::new(Command::Explore, &path));
    assert_eq!(result.status, ExitStatus::InputError);
    assert!(result.report.is_none());
    assert!(result.messages[0].contains(":3:"), "{:?}", result.messages);
    assert!(result.messages[0].contains("unknown generator"));
}

#[test]
fn missing_file_is_an_input_error() {
    let result = run(&RunConfig::new(Command::Abelianize, "/nonexistent/x.grp"));
    assert_eq!(result.status, ExitStatus::InputError);
}

#[test]
fn empty_relators_warn() {
    let path = scratch_file("warn.grp", "gens: a\nrel: a a^-1\nrel: a^3\n");
    let result = run(&RunConfig::new(Command::Abelianize, &path));
    assert_eq!(result.status, ExitStatus::Success);
    assert!(result
        .messages
        .iter()
        .any(|m| m.contains(":2:") && m.contains("warning")));
}

#[test]
fn budget_exhaustion_keeps_partial_report() {
    let config = RunConfig {
        max_depth: 1,
        ..RunConfig::new(Command::Explore, corpus("q8"))
    };
    let result = run(&config);
    assert_eq!(result.status, ExitStatus::BudgetExhausted);
    let r = result.report.unwrap();
    assert_eq!(r.steps.len(), 2);
    let o = r.outcome.unwrap();
    assert_eq!(
        (o.kind.as_str(), o.level, o.resource.as_deref()),
        ("BudgetExhausted", 1, Some("max_depth"))
    );

    let config = RunConfig {
        node_budget: 10,
        ..RunConfig::new(Command::LowIndex, corpus("free2"))
    };
    let result = run(&config);
    assert_eq!(result.status, ExitStatus::BudgetExhausted);
    assert_eq!(
        result.report.unwrap().outcome.unwrap().resource.as_deref(),
        Some("node_budget")
    );

    let config = RunConfig {
        audit_budget: 3,
        ..RunConfig::new(Command::GaloisAudit, corpus("free2"))
    };
    let result = run(&config);
    assert_eq!(result.status, ExitStatus::BudgetExhausted);
    assert_eq!(result.report.unwrap().verdicts.len(), 3);
}

#[test]
fn low_index_lists_classes_in_index_order() {
    let r = report(&RunConfig::new(Command::LowIndex, corpus("s3")));
    let summary: Vec<_> = r
        .subgroups
        .iter()
        .map(|s| (s.index, s.normal, s.conjugates))
        .collect();
    assert_eq!(
        summary,
        vec![(1, true, 1), (2, true, 1), (3, false, 3), (6, true, 1)]
    );
    for s in &r.subgroups {
        for perm in &s.generator_images {
            let mut sorted = perm.clone();
            sorted.sort();
            assert_eq!(sorted, (0..s.index).collect::<Vec<_>>());
        }
    }
}

#[test]
fn audit_output_is_sorted_by_index() {
    let r = report(&RunConfig::new(Command::GaloisAudit, corpus("trefoil")));
    let indices: Vec<_> = r.verdicts.iter().map(|v| v.subgroup_index).collect();
    let mut sorted = indices.clone();
    sorted.sort();
    assert_eq!(indices, sorted);
    assert!(r.verdicts.iter().all(|v| v.source == "low-index"));
}

#[test]
fn text_output_is_aligned() {
    let result = run(&RunConfig::new(Command::Explore, corpus("q8")));
    let text = result.render(OutputFormat::Text).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.iter().position(|l| l.starts_with("level")).unwrap();
    let col = lines[header].find("torsion").unwrap();
    assert!(lines[header + 1][col..].starts_with("Z/2+Z/2"));
    assert!(lines[header + 2][col..].starts_with("Z/2"));
    assert!(text.contains("outcome  Stabilized at level 2: stabilized"));
}

fn dsp(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_dsp"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn binary_exit_codes() {
    let trefoil = corpus("trefoil");
    let out = dsp(&["explore", trefoil.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.command, "explore");

    let q8 = corpus("q8");
    let out = dsp(&["explore", q8.to_str().unwrap(), "--max-depth", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stdout.is_empty());

    let bad = scratch_file("bad-bin.grp", "gens: a\nrel: a^x\n");
    let out = dsp(&["abelianize", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));

    let out = dsp(&["abelianize", q8.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("torsion  Z/2+Z/2"));

    let out = dsp(&["explore", q8.to_str().unwrap(), "--max-depth", "0"]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "zero limits are rejected by the argument parser"
    );
}

#[test]
fn binary_output_is_deterministic() {
    let p = corpus("binary-icosahedral");
    let a = dsp(&["galois-audit", p.to_str().unwrap(), "--max-index", "6"]);
    let b = dsp(&["galois-audit", p.to_str().unwrap(), "--max-index", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
