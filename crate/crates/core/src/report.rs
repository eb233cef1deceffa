//! End-to-end analysis and its Markdown / JSON rendering.
//!
//! Both renderings are produced from the same [`AnalysisReport`] value.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::measurement::{summarize, Basis, ComplementarySummary, ErrorTableSet, TablesFile};
use crate::noise::{
    average_fidelity_from_process, process_fidelity_bounds, process_fidelity_estimate, statistical_chi, worst_case_chi,
    DiagonalChi, DiagonalChiFile, FidelityBounds,
};
use crate::pauli::StabilizerTarget;
use crate::target::{evaluate_with_models, preset_targets, Contribution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModelSelection {
    WorstCase,
    Statistical,
    #[default]
    Both,
}

impl ModelSelection {
    fn worst(self) -> bool {
        matches!(self, Self::WorstCase | Self::Both)
    }

    fn statistical(self) -> bool {
        matches!(self, Self::Statistical | Self::Both)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Round the summary to 3 decimals before any model is built.
    pub rounded_summaries: bool,
    pub models: ModelSelection,
    /// Extra targets on top of the presets (which are added only for N = 2).
    pub custom_targets: Vec<StabilizerTarget>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub input: String,
    pub tool_version: String,
    pub flags: Vec<String>,
}

impl Provenance {
    pub fn new(input: impl Into<String>, flags: Vec<String>) -> Self {
        Self { input: input.into(), tool_version: env!("CARGO_PKG_VERSION").to_string(), flags }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetRow {
    pub name: String,
    pub stabilizers: Vec<String>,
    pub worst_case: f64,
    pub statistical: f64,
    pub spread: f64,
    pub contributions: Vec<Contribution<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub provenance: Provenance,
    pub tables: TablesFile,
    pub summary: ComplementarySummary<f64>,
    pub bounds: FidelityBounds<f64>,
    pub process_fidelity_estimate: f64,
    /// Average fidelity implied by the estimated process fidelity.
    pub average_fidelity: f64,
    /// Average fidelity implied by the process-fidelity lower bound.
    pub average_fidelity_lower: f64,
    pub models: Vec<DiagonalChiFile>,
    pub targets: Vec<TargetRow>,
    pub diagnostics: Vec<String>,
}

/// Runs summary, bounds, both noise models and every target.
pub fn analyze(
    tables: &ErrorTableSet<f64>,
    options: &AnalysisOptions,
    provenance: Provenance,
) -> Result<AnalysisReport> {
    let mut summary = summarize(tables);
    if options.rounded_summaries {
        summary = summary.rounded(3);
    }
    let d = summary.dim();
    let bounds = process_fidelity_bounds(&summary);
    let worst = worst_case_chi(&summary)?;
    let statistical = statistical_chi(&summary);
    let estimate = process_fidelity_estimate(&summary);

    let mut targets = if summary.n_qubits == 2 { preset_targets() } else { Vec::new() };
    targets.extend(options.custom_targets.iter().cloned());
    let target_rows = evaluate_with_models(&worst, &statistical, &targets)?
        .into_iter()
        .map(|r| TargetRow {
            name: r.target.name.clone(),
            stabilizers: r.target.paulis().iter().map(|p| p.to_string()).collect(),
            worst_case: r.worst_case_value,
            statistical: r.statistical_value,
            spread: r.spread(),
            contributions: r.contributions,
        })
        .collect();

    // a vacuous lower bound already failed in worst_case_chi above
    let mut diagnostics: Vec<String> = Vec::new();
    let mut models = Vec::new();
    let mut keep = |chi: &DiagonalChi<f64>, on: bool| {
        for m in &chi.diagnostics {
            let suffix = format!(": {m}");
            match diagnostics.iter().position(|d| d.ends_with(&suffix)) {
                // shared by both models: drop the model prefix
                Some(i) => diagnostics[i] = m.clone(),
                None if diagnostics.contains(m) => {}
                None => diagnostics.push(format!("{}: {m}", chi.model)),
            }
        }
        if on {
            models.push(chi.to_file());
        }
    };
    keep(&worst, options.models.worst());
    keep(&statistical, options.models.statistical());

    Ok(AnalysisReport {
        provenance,
        tables: tables.to_file(),
        bounds,
        process_fidelity_estimate: estimate,
        average_fidelity: average_fidelity_from_process(estimate, d),
        average_fidelity_lower: average_fidelity_from_process(bounds.lower, d),
        summary,
        models,
        targets: target_rows,
        diagnostics,
    })
}

/// `"0.720 ≤ F_qp ≤ 0.853"`.
pub fn bounds_line(b: &FidelityBounds<f64>) -> String {
    format!("{:.3} ≤ F_qp ≤ {:.3}", b.lower, b.upper)
}

fn header(out: &mut String, first: &str, cols: impl Iterator<Item = String>, extra: &[&str]) {
    let cols: Vec<String> = cols.chain(extra.iter().map(|s| s.to_string())).collect();
    let _ = writeln!(out, "| {first} | {} |", cols.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(cols.len() + 1));
}

fn row(out: &mut String, label: &str, cells: impl Iterator<Item = String>) {
    let cells: Vec<String> = cells.collect();
    let _ = writeln!(out, "| {label} | {} |", cells.join(" | "));
}

fn render_error_table(out: &mut String, basis: Basis, table: &[Vec<f64>], means: &[f64], n: usize) {
    let (p, var) = match basis {
        Basis::Z => ("p(f_z|Z_n)", "f_z"),
        Basis::X => ("p(f_x|X_k)", "f_x"),
    };
    header(out, p, (0..table.len()).map(|f| format!("{var}={f}")), &[]);
    for (i, r) in table.iter().enumerate() {
        row(out, &basis.row_label(i, n), r.iter().map(|v| format!("{v:.3}")));
    }
    let name = basis.name();
    row(
        out,
        "averages",
        means.iter().enumerate().map(|(f, v)| {
            if f == 0 {
                format!("F_{name}={v:.3}")
            } else {
                format!("η_{name}({f})={v:.3}")
            }
        }),
    );
}

fn render_chi(out: &mut String, chi: &DiagonalChiFile) {
    let d = chi.values.len();
    header(out, "χ(f_z,f_x)", (0..d).map(|f| format!("f_x={f}")), &["Sum"]);
    for (z, r) in chi.values.iter().enumerate() {
        let sum: f64 = r.iter().sum();
        row(out, &format!("f_z={z}"), r.iter().map(|v| format!("{v:.4}")).chain([format!("{sum:.3}")]));
    }
    let cols = (0..d).map(|x| chi.values.iter().map(|r| r[x]).sum::<f64>());
    let total: f64 = chi.values.iter().flatten().sum();
    row(out, "Sum", cols.map(|v| format!("{v:.3}")).chain([format!("{total:.3}")]));
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Markdown tables laid out with rows `f_z` and columns `f_x`, followed by
    /// the full-precision JSON block.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let n = self.summary.n_qubits;
        let _ = writeln!(out, "# Complementary-operation analysis\n");
        let _ = writeln!(out, "- input: `{}`", self.provenance.input);
        let _ = writeln!(out, "- compfid {}", self.provenance.tool_version);
        if !self.provenance.flags.is_empty() {
            let _ = writeln!(out, "- flags: `{}`", self.provenance.flags.join(" "));
        }
        if let Some(meta) = &self.tables.metadata {
            let _ = writeln!(out, "- metadata: {meta}");
        }

        let _ = writeln!(out, "\n## Error tables\n");
        render_error_table(&mut out, Basis::Z, &self.tables.z_table, &self.summary.p_z, n);
        out.push('\n');
        render_error_table(&mut out, Basis::X, &self.tables.x_table, &self.summary.p_x, n);

        let _ = writeln!(out, "\n## Process fidelity\n");
        let b = &self.bounds;
        let _ = writeln!(
            out,
            "- bounds: {}{}",
            bounds_line(b),
            if b.vacuous_lower { " (lower bound vacuous)" } else { "" }
        );
        let _ = writeln!(out, "- estimate (uncorrelated errors): F_qp ≈ {:.3}", self.process_fidelity_estimate);
        let _ = writeln!(
            out,
            "- average fidelity: F_av ≈ {:.3} (at least {:.3})",
            self.average_fidelity, self.average_fidelity_lower
        );

        for chi in &self.models {
            let title = match chi.model.as_str() {
                "worst_case" => "Worst-case model",
                "statistical" => "Statistical model",
                "clamped-statistical" => "Statistical model (clamped)",
                _ => "Model",
            };
            let _ = writeln!(out, "\n## {title}\n");
            render_chi(&mut out, chi);
        }

        if !self.targets.is_empty() {
            let _ = writeln!(out, "\n## Target fidelities\n");
            let _ = writeln!(out, "| target | stabilizers | worst case (≥) | statistical (≈) | spread |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for t in &self.targets {
                let _ = writeln!(
                    out,
                    "| {} | {} | {:.3} | {:.3} | {:.3} |",
                    t.name,
                    t.stabilizers.join(" "),
                    t.worst_case,
                    t.statistical,
                    t.spread
                );
            }
        }

        if !self.diagnostics.is_empty() {
            let _ = writeln!(out, "\n## Diagnostics\n");
            for m in &self.diagnostics {
                let _ = writeln!(out, "- {m}");
            }
        }

        let _ = writeln!(out, "\n## Data\n\n```json\n{}\n```", self.to_json());
        out
    }
}
