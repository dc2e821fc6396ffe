//! Command-line front end. `run` is pure (text in, text out) so tests can drive it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::blocks::PairData;
use crate::cluster::{cluster_tilted_from_data, comparison_report, ext2_bimodule, relation_extension_of};
use crate::error::{Error, Result};
use crate::homological::{global_dimension, DEFAULT_RESOLUTION_CAP};
use crate::knit::is_dynkin;
use crate::quiver::QuiverPresentation;
use crate::structure::{extract_relations, StructureAlgebra};
use crate::tau_tilting::{
    enumerate_pairs, global_dimension_of, is_support_tau_tilting_pair, pair_data, silted_algebra,
    SupportTauTiltingPair,
};
use crate::workspace::{parse_workspace, Workspace};

#[derive(Parser, Debug)]
#[command(name = "silted", version, about = "Silted and cluster-tilted algebras from support tau-tilting pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the randomized isomorphism probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on resolution lengths (global dimension is reported as `>N` beyond it).
    #[arg(long, global = true, default_value_t = DEFAULT_RESOLUTION_CAP)]
    pub bound: usize,
    /// Print only the key=value trailer.
    #[arg(long, global = true)]
    pub trailer_only: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify that the [pair] section is a support tau-tilting pair.
    CheckPair { file: PathBuf },
    /// Quiver with relations of End(T + P[1]).
    Silted { file: PathBuf },
    /// Quiver with relations of the cluster-tilted algebra of the pair.
    ClusterTilted { file: PathBuf },
    /// Relation extension of the workspace algebra (global dimension at most two).
    RelationExtension { file: PathBuf },
    /// Quiver with relations of the workspace algebra itself.
    Present { file: PathBuf },
    /// All support tau-tilting pairs of a hereditary Dynkin algebra.
    Enumerate { file: PathBuf },
    /// Compare Ext1(T, t^-1 T) with Ext2(DB, B) for the pair, when Hom(P, t^-1 T) = 0.
    Compare { file: PathBuf },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    prose: String,
    trailer: Vec<(&'static str, String)>,
    verdict: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            prose: String::new(),
            trailer: Vec::new(),
            verdict: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.prose.push_str(s.as_ref());
        self.prose.push('\n');
    }

    fn key(&mut self, k: &'static str, v: impl ToString) {
        self.trailer.push((k, v.to_string()));
    }

    fn presentation(&mut self, title: &str, pres: &QuiverPresentation) {
        self.line(title);
        for l in pres.to_string().lines() {
            self.line(format!("  {l}"));
        }
        self.key("vertices", pres.vertex_count());
        self.key("arrows", pres.quiver().arrows().len());
        self.key("relations", pres.relations().len());
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let file = match &cli.command {
        Command::CheckPair { file }
        | Command::Silted { file }
        | Command::ClusterTilted { file }
        | Command::RelationExtension { file }
        | Command::Present { file }
        | Command::Enumerate { file }
        | Command::Compare { file } => file.clone(),
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    run_on_text(&cli, &text)
}

/// Runs an already-parsed command against workspace text.
pub fn run_on_text(cli: &Cli, text: &str) -> Outcome {
    let ws = match parse_workspace(text) {
        Ok(ws) => ws,
        Err(e) => return input_error(e.to_string()),
    };
    match execute(cli, &ws) {
        Ok(report) => {
            let mut out = String::new();
            if !cli.trailer_only {
                out.push_str(&report.prose);
                out.push_str("--\n");
            }
            for (k, v) in &report.trailer {
                let _ = writeln!(out, "{k}={v}");
            }
            Outcome {
                code: if report.verdict { 0 } else { 1 },
                stdout: out,
                stderr: String::new(),
            }
        }
        Err(e) => input_error(e.to_string()),
    }
}

fn input_error(msg: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn require_pair(ws: &Workspace) -> Result<&SupportTauTiltingPair> {
    ws.pair
        .as_ref()
        .ok_or_else(|| Error::UnverifiedPair("the workspace has no [pair] section".into()))
}

fn execute(cli: &Cli, ws: &Workspace) -> Result<Report> {
    let mut r = Report::new();
    let (seed, bound) = (cli.seed, cli.bound);
    match &cli.command {
        Command::Present { .. } => {
            let alg = &ws.algebra;
            r.presentation("algebra:", alg.presentation());
            r.key("dim", alg.dim());
            r.key("gldim", global_dimension(alg, bound));
        }
        Command::CheckPair { .. } => {
            let pair = require_pair(ws)?;
            check_pair(&mut r, pair, seed)?;
        }
        Command::Silted { .. } => {
            let pair = require_pair(ws)?;
            r.line(format!("pair: {}", pair.describe()));
            let s = silted_algebra(pair, seed)?;
            emit_algebra(&mut r, "silted algebra End(T + P[1]):", &s, bound)?;
        }
        Command::ClusterTilted { .. } => {
            let pair = require_pair(ws)?;
            r.line(format!("pair: {}", pair.describe()));
            let data: PairData = pair_data(pair, seed, true)?;
            let a = cluster_tilted_from_data(&data)?;
            r.line(format!("dim Ext1(T, t^-1 T) = {}", data.dim_e()));
            r.line(format!("dim Hom(P, t^-1 T) = {}", data.dim_n()));
            r.line(format!("dim Ext1(T, P) = {}", data.dim_m()));
            emit_algebra(&mut r, "cluster-tilted algebra:", &a, bound)?;
            r.key("dimE", data.dim_e());
            r.key("dimN", data.dim_n());
        }
        Command::RelationExtension { .. } => {
            let alg = &ws.algebra;
            r.presentation("input algebra B:", alg.presentation());
            r.trailer.clear();
            let a = relation_extension_of(alg)?;
            let e = ext2_bimodule(alg);
            r.line(format!("dim Ext2(DB, B) = {}", e.dim()));
            emit_algebra(&mut r, "relation extension B x Ext2(DB, B):", &a, bound)?;
            r.key("dimE", e.dim());
        }
        Command::Enumerate { .. } => {
            let alg = &ws.algebra;
            if !alg.presentation().relations().is_empty() || !is_dynkin(alg.quiver()) {
                return Err(Error::NotDynkin("enumeration needs a Dynkin quiver without relations".into()));
            }
            let pairs = enumerate_pairs(alg)?;
            for p in &pairs {
                r.line(p.describe());
            }
            r.key("pairs", pairs.len());
        }
        Command::Compare { .. } => {
            let pair = require_pair(ws)?;
            r.line(format!("pair: {}", pair.describe()));
            let c = comparison_report(pair, seed, true)?;
            r.line(format!("dim Hom(P, t^-1 T) = {}", c.dim_n));
            r.line(format!("dim Ext1(T, t^-1 T) = {}", c.dim_e));
            let verdict = if !c.applicable {
                r.line("not applicable: Hom(P, t^-1 T) is nonzero");
                "n/a".to_string()
            } else {
                let ext2 = c.dim_ext2.unwrap_or(0);
                r.line(format!("dim Ext2(DB, B) = {ext2}"));
                let sig = pair.summands.is_empty() || c.signatures_equal();
                r.line(format!(
                    "fingerprints of the two algebras {}",
                    if sig { "agree" } else { "differ" }
                ));
                let ok = c.dims_equal() && sig;
                if !ok {
                    r.verdict = false;
                    r.line(format!("witness: {} vs {}", c.dim_e, ext2));
                }
                ok.to_string()
            };
            r.key("dimN", c.dim_n);
            r.key("dimE", c.dim_e);
            r.key("verdict", verdict);
        }
    }
    Ok(r)
}

fn emit_algebra(r: &mut Report, title: &str, a: &StructureAlgebra, bound: usize) -> Result<()> {
    let pres = extract_relations(a)?;
    r.presentation(title, &pres);
    r.key("dim", a.dim());
    r.key("gldim", global_dimension_of(a, bound)?);
    Ok(())
}

fn check_pair(r: &mut Report, pair: &SupportTauTiltingPair, seed: u64) -> Result<()> {
    r.presentation("algebra:", pair.algebra.presentation());
    r.trailer.clear();
    r.line(format!("pair: {}", pair.describe()));
    r.line("convention: P is tested through Hom(P, T) = 0, i.e. T vanishes at the vertices of P");
    let v = match is_support_tau_tilting_pair(pair, seed) {
        Ok(v) => v,
        Err(Error::NotIndecomposable(name)) => {
            r.line(format!("witness: summand {name} is decomposable"));
            r.verdict = false;
            r.key("verdict", false);
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let (_, names) = pair.distinct_summands(seed)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.line(format!("tau-rigid: {}", yes(v.tau_rigid.rigid)));
    if let Some((i, j, f)) = &v.tau_rigid.witness {
        r.line(format!(
            "witness: nonzero map {} -> tau {} with component ranks {:?}",
            names[*i],
            names[*j],
            f.components().iter().map(|m| m.rank()).collect::<Vec<_>>()
        ));
    }
    r.line(format!("Hom(P, T) = 0: {}", yes(v.hom_p_t_zero)));
    if !v.hom_p_t_zero {
        let q = pair.algebra.quiver();
        for (m, n) in pair.summands.iter().zip(&pair.names) {
            for &x in &pair.support_excluded {
                if m.dims()[x] != 0 {
                    r.line(format!("witness: {n} is nonzero at vertex {}", q.vertices()[x]));
                }
            }
        }
    }
    r.line(format!(
        "|T| + |P| = {} + {} against {} vertices: {}",
        v.distinct_summands,
        v.excluded,
        v.vertices,
        yes(v.count_ok())
    ));
    r.line(format!("tau-tilting over A/AeA: {}", yes(v.quotient_tau_tilting)));
    r.verdict = v.holds();
    r.key("verdict", v.holds());
    Ok(())
}
