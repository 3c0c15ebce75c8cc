//! Library side of the `dsp` command: configuration, dispatch and reports.

pub mod report;
pub mod text;

use std::path::PathBuf;

use clap::ValueEnum;
use dsp_core::{
    abelian_invariants, classify_outcome, conjugacy_class_size, corollary_check, enumerate_cosets,
    explore_derived_series, galois_closure, is_normal, is_perfect_finite, low_index_search,
    parse_presentation_with_budget, rewrite_subgroup_presentation, schreier_transversal,
    simplify_presentation, CosetTable, DerivedStep, GaloisError, GaloisOptions, Limits,
    LowIndexError, LowIndexOptions, Outcome, ParseError, Presentation, RewriteError,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use report::{
    BigNumber, InvariantsReport, LimitsReport, OutcomeReport, Report, StepReport, SubgroupReport,
    VerdictReport, SCHEMA_VERSION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Walk the derived series.
    Explore,
    /// Abelian invariants of the input group.
    Abelianize,
    /// Conjugacy classes of subgroups of small index.
    LowIndex,
    /// Galois closures of small-index subgroups checked against the order-120 bound.
    GaloisAudit,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Explore => "explore",
            Command::Abelianize => "abelianize",
            Command::LowIndex => "low-index",
            Command::GaloisAudit => "galois-audit",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub max_depth: usize,
    pub max_cosets: usize,
    pub max_index: usize,
    pub letter_budget: usize,
    pub torsion_cap: usize,
    pub node_budget: usize,
    /// Largest number of covers built by `galois-audit`.
    pub audit_budget: usize,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input_path: input_path.into(),
            max_depth: 8,
            max_cosets: 100_000,
            max_index: 6,
            letter_budget: 10_000_000,
            torsion_cap: 10_000,
            node_budget: 1_000_000,
            audit_budget: 10_000,
            output_format: OutputFormat::Json,
        }
    }

    fn limits(&self) -> Limits {
        Limits {
            max_depth: self.max_depth,
            max_cosets: self.max_cosets,
            letter_budget: self.letter_budget,
            torsion_cap: self.torsion_cap,
            ..Limits::default()
        }
    }

    fn limits_report(&self) -> LimitsReport {
        LimitsReport {
            max_depth: self.max_depth,
            max_cosets: self.max_cosets,
            max_index: self.max_index,
            letter_budget: self.letter_budget,
            torsion_cap: self.torsion_cap,
            node_budget: self.node_budget,
            audit_budget: self.audit_budget,
        }
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{}: {source}", source.line().map_or("-".to_string(), |l| l.to_string()))]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InputError = 1,
    BudgetExhausted = 2,
}

#[derive(Debug)]
pub struct RunResult {
    pub status: ExitStatus,
    pub report: Option<Report>,
    /// Diagnostics for standard error.
    pub messages: Vec<String>,
}

impl RunResult {
    pub fn render(&self, format: OutputFormat) -> Option<String> {
        self.report.as_ref().map(|r| match format {
            OutputFormat::Json => r.to_json(),
            OutputFormat::Text => text::render(r),
        })
    }
}

pub fn load(config: &RunConfig) -> Result<(Presentation, Vec<String>), InputError> {
    let path = config.input_path.display().to_string();
    let text = std::fs::read_to_string(&config.input_path).map_err(|source| InputError::Io {
        path: path.clone(),
        source,
    })?;
    let parsed = parse_presentation_with_budget(&text, config.letter_budget).map_err(|source| {
        InputError::Parse {
            path: path.clone(),
            source,
        }
    })?;
    let warnings = parsed
        .empty_relator_lines
        .iter()
        .map(|l| format!("{path}:{l}: warning: relator reduces to the identity"))
        .collect();
    Ok((parsed.presentation, warnings))
}

pub fn run(config: &RunConfig) -> RunResult {
    let (p, mut messages) = match load(config) {
        Ok(v) => v,
        Err(e) => {
            return RunResult {
                status: ExitStatus::InputError,
                report: None,
                messages: vec![e.to_string()],
            }
        }
    };
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: config.command.as_str().to_string(),
        input: config.input_path.display().to_string(),
        limits: config.limits_report(),
        steps: Vec::new(),
        outcome: None,
        abelianization: None,
        subgroups: Vec::new(),
        verdicts: Vec::new(),
    };
    let status = match config.command {
        Command::Explore => explore(&p, config, &mut report),
        Command::Abelianize => abelianize(&p, &mut report),
        Command::LowIndex => low_index(&p, config, &mut report),
        Command::GaloisAudit => galois_audit(&p, config, &mut report),
    };
    if let Some(OutcomeReport {
        kind,
        resource: Some(res),
        ..
    }) = &report.outcome
    {
        messages.push(format!("{}: {kind}: {res} reached", report.input));
    }
    RunResult {
        status,
        report: Some(report),
        messages,
    }
}

fn budget_outcome(level: usize, resource: &str) -> OutcomeReport {
    OutcomeReport {
        kind: "BudgetExhausted".to_string(),
        level,
        resource: Some(resource.to_string()),
        verdict: None,
    }
}

fn explore(p: &Presentation, config: &RunConfig, report: &mut Report) -> ExitStatus {
    let r = explore_derived_series(p, &config.limits());
    report.steps = r.steps.iter().map(StepReport::from).collect();
    let resource = match r.outcome {
        Outcome::BudgetExhausted { resource, .. } => Some(resource.as_str().to_string()),
        _ => None,
    };
    report.outcome = Some(OutcomeReport {
        kind: r.outcome.kind().to_string(),
        level: r.outcome.level(),
        resource,
        verdict: Some(classify_outcome(&r).as_str().to_string()),
    });
    match r.outcome {
        Outcome::BudgetExhausted { .. } => ExitStatus::BudgetExhausted,
        _ => ExitStatus::Success,
    }
}

fn abelianize(p: &Presentation, report: &mut Report) -> ExitStatus {
    let inv = abelian_invariants(p);
    report.steps = vec![StepReport::from(&DerivedStep {
        level: 0,
        presentation: p.clone(),
        invariants: inv.clone(),
        index_in_root: BigInt::from(1),
    })];
    report.abelianization = Some(InvariantsReport::from(&inv));
    ExitStatus::Success
}

/// Class representatives of index at most `max_index`, in index order then discovery order.
fn search(p: &Presentation, config: &RunConfig) -> (Vec<CosetTable>, bool) {
    let options = LowIndexOptions {
        node_budget: config.node_budget,
        ..LowIndexOptions::new(config.max_index)
    };
    let (mut tables, complete) = match low_index_search(p, &options) {
        Ok(t) => (t, true),
        Err(LowIndexError::BudgetExhausted { found, .. }) => (found, false),
    };
    tables.sort_by_key(CosetTable::index);
    (tables, complete)
}

fn subgroup_report(
    p: &Presentation,
    t: &CosetTable,
    config: &RunConfig,
) -> Result<SubgroupReport, RewriteError> {
    let data = schreier_transversal(t);
    let q = rewrite_subgroup_presentation(p, t, config.letter_budget)?;
    let inv = abelian_invariants(
        &simplify_presentation(&q, config.limits().simplify_budget).presentation,
    );
    Ok(SubgroupReport {
        index: t.index(),
        normal: is_normal(t, &data.subgroup_generators(t)),
        conjugates: conjugacy_class_size(t),
        betti: inv.betti,
        torsion: inv.torsion.iter().map(BigNumber::from).collect(),
        generator_images: (1..=t.generator_count())
            .map(|g| (0..t.index()).map(|c| t.image(c, g as i32)).collect())
            .collect(),
    })
}

fn low_index(p: &Presentation, config: &RunConfig, report: &mut Report) -> ExitStatus {
    let (tables, complete) = search(p, config);
    let results: Vec<_> = tables
        .par_iter()
        .map(|t| subgroup_report(p, t, config))
        .collect();
    let mut exhausted = !complete;
    for r in results {
        match r {
            Ok(s) => report.subgroups.push(s),
            Err(RewriteError::LetterBudgetExceeded { .. }) => {
                report.outcome = Some(budget_outcome(0, "letter_budget"));
                exhausted = true;
            }
        }
    }
    if !complete {
        report.outcome = Some(budget_outcome(0, "node_budget"));
    }
    if exhausted {
        ExitStatus::BudgetExhausted
    } else {
        ExitStatus::Success
    }
}

fn audit_one(
    p: &Presentation,
    t: &CosetTable,
    source: &str,
    options: &GaloisOptions,
) -> Result<VerdictReport, GaloisError> {
    let d = galois_closure(p, t, options)?;
    let verdict = corollary_check(&d)?;
    Ok(VerdictReport {
        source: source.to_string(),
        subgroup_index: d.subgroup_index,
        deck_order: BigNumber::from(&d.deck.order),
        deck_perfect: is_perfect_finite(&d.deck, options.explicit_cap)?,
        cover_generators: d.cover_presentation.generator_count(),
        cover_relators: d.cover_presentation.relators().len(),
        cover_betti: d.cover_invariants.betti,
        cover_torsion: d
            .cover_invariants
            .torsion
            .iter()
            .map(BigNumber::from)
            .collect(),
        verdict: verdict.as_str().to_string(),
    })
}

fn galois_audit(p: &Presentation, config: &RunConfig, report: &mut Report) -> ExitStatus {
    let (mut tables, complete) = search(p, config);
    let truncated = tables.len() > config.audit_budget;
    tables.truncate(config.audit_budget);
    let mut jobs: Vec<(CosetTable, &str)> = tables.into_iter().map(|t| (t, "low-index")).collect();
    // The trivial subgroup joins the audit whenever the group is visibly finite.
    if let Ok(regular) = enumerate_cosets(p, &[], config.max_cosets) {
        if !jobs.iter().any(|(t, _)| *t == regular) {
            jobs.push((regular, "regular"));
        }
    }
    let options = GaloisOptions {
        explicit_cap: config.max_cosets,
        letter_budget: config.letter_budget,
        ..GaloisOptions::default()
    };
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(t, source)| audit_one(p, t, source, &options))
        .collect();
    let mut status = ExitStatus::Success;
    for r in results {
        match r {
            Ok(v) => report.verdicts.push(v),
            Err(e) => {
                let resource = match e {
                    GaloisError::Finite(_) => "max_cosets",
                    GaloisError::Rewrite(_) => "letter_budget",
                };
                report.outcome = Some(budget_outcome(0, resource));
                status = ExitStatus::BudgetExhausted;
            }
        }
    }
    if truncated {
        report.outcome = Some(budget_outcome(0, "audit_budget"));
        status = ExitStatus::BudgetExhausted;
    }
    if !complete {
        report.outcome = Some(budget_outcome(0, "node_budget"));
        status = ExitStatus::BudgetExhausted;
    }
    status
}
