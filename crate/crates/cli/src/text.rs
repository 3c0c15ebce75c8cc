//! Aligned plain-text rendering of reports.

use std::fmt::Write;

use crate::report::{BigNumber, Report};

fn torsion(t: &[BigNumber]) -> String {
    if t.is_empty() {
        "-".to_string()
    } else {
        t.iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec())).unwrap();
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
    }
}

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "command  {}", r.command).unwrap();
    writeln!(out, "input    {}", r.input).unwrap();
    if let Some(a) = &r.abelianization {
        writeln!(out, "betti    {}", a.betti).unwrap();
        writeln!(out, "torsion  {}", torsion(&a.torsion)).unwrap();
    }
    if !r.steps.is_empty() && r.abelianization.is_none() {
        out.push('\n');
        let rows: Vec<Vec<String>> = r
            .steps
            .iter()
            .map(|s| {
                vec![
                    s.level.to_string(),
                    s.generators.to_string(),
                    s.relators.to_string(),
                    s.betti.to_string(),
                    torsion(&s.torsion),
                    s.index_in_root.to_string(),
                ]
            })
            .collect();
        table(
            &mut out,
            &["level", "gens", "rels", "betti", "torsion", "index"],
            &rows,
        );
    }
    if !r.subgroups.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = r
            .subgroups
            .iter()
            .map(|s| {
                vec![
                    s.index.to_string(),
                    if s.normal { "yes" } else { "no" }.to_string(),
                    s.conjugates.to_string(),
                    s.betti.to_string(),
                    torsion(&s.torsion),
                ]
            })
            .collect();
        table(
            &mut out,
            &["index", "normal", "conjugates", "betti", "torsion"],
            &rows,
        );
    }
    if !r.verdicts.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = r
            .verdicts
            .iter()
            .map(|v| {
                vec![
                    v.source.clone(),
                    v.subgroup_index.to_string(),
                    v.deck_order.to_string(),
                    if v.deck_perfect { "yes" } else { "no" }.to_string(),
                    v.cover_betti.to_string(),
                    torsion(&v.cover_torsion),
                    v.verdict.clone(),
                ]
            })
            .collect();
        table(
            &mut out,
            &[
                "source", "index", "deck", "perfect", "betti", "torsion", "verdict",
            ],
            &rows,
        );
    }
    if let Some(o) = &r.outcome {
        out.push('\n');
        write!(out, "outcome  {} at level {}", o.kind, o.level).unwrap();
        if let Some(res) = &o.resource {
            write!(out, " ({res})").unwrap();
        }
        if let Some(v) = &o.verdict {
            write!(out, ": {v}").unwrap();
        }
        out.push('\n');
    }
    out
}
