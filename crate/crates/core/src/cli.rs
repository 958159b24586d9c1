//! The `qinvar` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 no model or failed verification,
//! 3 I/O error, 4 document schema violation, 5 selftest breach.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::document::{ModelDocument, DEFAULT_TRANSITION_TOLERANCE};
use crate::invariants::{
    classify, halfangle_form, invariant_cos, normalized_form, probs_to_angles, r_interval,
    real_model_distances, ModelTag, ProbTriple, DEFAULT_EPS_K,
};
use crate::model::{real_embedding, synthesize, verify_transitions, Observable, LABELS};
use crate::output::{human as h, sci, to_json};
use crate::sampling::DEFAULT_SEED;
use crate::selftest::{self, DEFAULT_COUNT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_MODEL: i32 = 2;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SCHEMA: i32 = 4;
pub const EXIT_BREACH: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "qinvar",
    version,
    about = "Quantum-model existence, synthesis and uncertainty checks for three two-valued observables"
)]
pub struct Cli {
    /// Half-width of the band |K| ≤ eps_k classified as a real model.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS_K)]
    pub eps_k: f64,
    /// Seed for every randomized battery.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Print only the machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute K and the equivalent existence criteria for (p, q, r).
    Classify {
        #[arg(allow_negative_numbers = true)]
        p: f64,
        #[arg(allow_negative_numbers = true)]
        q: f64,
        #[arg(allow_negative_numbers = true)]
        r: f64,
    },
    /// Build a spin model for (p, q, r) and write it as a model document.
    Synthesize {
        #[arg(allow_negative_numbers = true)]
        p: f64,
        #[arg(allow_negative_numbers = true)]
        q: f64,
        #[arg(allow_negative_numbers = true)]
        r: f64,
        /// Observable values a1,a2,b1,b2,c1,c2 (default 1,-1 for each).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a model document.
    Verify {
        path: PathBuf,
        /// Tolerance for every check (default: the document's transition tolerance).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Tabulate K and the class over the interior grid {i/(n+1)}³.
    Sweep {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Run every identity battery and report the worst residuals.
    Selftest {
        /// Samples per battery.
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

/// One cell of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub class: ModelTag,
    pub normalized_form: f64,
}

pub const SWEEP_HEADER: &str = "p,q,r,K,class,normalized_form";

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            sci(self.p),
            sci(self.q),
            sci(self.r),
            sci(self.k),
            self.class,
            sci(self.normalized_form)
        )
    }
}

/// Rows of the `n³` interior grid, `p` outermost and `r` innermost, all ascending.
pub fn sweep_rows(n: usize, eps_k: f64) -> Vec<SweepRow> {
    let grid: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
    let row = |p: f64, q: f64, r: f64| {
        let t = ProbTriple::new(p, q, r).expect("grid points are interior");
        let class = classify(&t, eps_k);
        SweepRow {
            p,
            q,
            r,
            k: class.k,
            class: class.tag,
            normalized_form: normalized_form(&t),
        }
    };
    let workers = std::thread::available_parallelism()
        .map_or(1, |w| w.get())
        .min(n);
    let chunk = n.div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .map(|ps| {
                let grid = &grid;
                s.spawn(move || {
                    let mut rows = Vec::with_capacity(ps.len() * grid.len() * grid.len());
                    for &p in ps {
                        for &q in grid {
                            for &r in grid {
                                rows.push(row(p, q, r));
                            }
                        }
                    }
                    rows
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::with_capacity(rows.len() * 128);
    s.push_str(SWEEP_HEADER);
    s.push('\n');
    for row in rows {
        s.push_str(&row.csv_line());
        s.push('\n');
    }
    s
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    if !(cli.eps_k.is_finite() && cli.eps_k >= 0.0) {
        let _ = writeln!(
            err,
            "error: --eps-k must be finite and nonnegative, got {}",
            cli.eps_k
        );
        return EXIT_USAGE;
    }
    let mut ctx = Ctx {
        json: cli.json,
        eps_k: cli.eps_k,
        seed: cli.seed,
        out,
        err,
    };
    let result = match cli.command {
        Command::Classify { p, q, r } => ctx.classify(p, q, r),
        Command::Synthesize {
            p,
            q,
            r,
            values,
            output,
        } => ctx.synthesize(p, q, r, values, output.as_deref()),
        Command::Verify { path, tol } => ctx.verify(&path, tol),
        Command::Sweep { n, output, format } => ctx.sweep(n, output.as_deref(), format),
        Command::Selftest { count } => ctx.selftest(count),
    };
    // a failed write to standard output is an I/O error like any other
    result.unwrap_or(EXIT_IO)
}

struct Ctx<'a> {
    json: bool,
    eps_k: f64,
    seed: u64,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    p: f64,
    q: f64,
    r: f64,
    eps_k: f64,
    #[serde(rename = "K")]
    k: f64,
    invariant_cos: f64,
    normalized_form: f64,
    halfangle_form: f64,
    r_interval: [f64; 2],
    r_in_interval: bool,
    class: ModelTag,
    has_model: bool,
    /// `|√r − (√pq + √((1−p)(1−q)))|` and `|√r − |√pq − √((1−p)(1−q))||`.
    real_model_distances: [f64; 2],
}

#[derive(Serialize)]
struct SynthesizeSummary<'a> {
    command: &'static str,
    output: &'a str,
    class: ModelTag,
    #[serde(rename = "K")]
    k: f64,
    real_embedding: bool,
    max_transition_deviation: f64,
    transition_tolerance: f64,
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    command: &'static str,
    n: usize,
    rows: usize,
    output: &'a str,
    no_quantum_model: usize,
    real_quantum: usize,
    strictly_complex_quantum: usize,
}

impl Ctx<'_> {
    fn usage(&mut self, msg: impl std::fmt::Display) -> io::Result<i32> {
        writeln!(self.err, "error: {msg}")?;
        Ok(EXIT_USAGE)
    }

    fn triple(&mut self, p: f64, q: f64, r: f64) -> io::Result<Result<ProbTriple, i32>> {
        match ProbTriple::new(p, q, r) {
            Ok(t) => Ok(Ok(t)),
            Err(e) => self.usage(e).map(Err),
        }
    }

    fn classify(&mut self, p: f64, q: f64, r: f64) -> io::Result<i32> {
        let t = match self.triple(p, q, r)? {
            Ok(t) => t,
            Err(code) => return Ok(code),
        };
        let class = classify(&t, self.eps_k);
        let angles = probs_to_angles(&t);
        let (lo, hi) = r_interval(p, q).expect("validated probabilities");
        let (plus, minus) = real_model_distances(&t);
        let rep = ClassifyReport {
            command: "classify",
            p,
            q,
            r,
            eps_k: self.eps_k,
            k: class.k,
            invariant_cos: invariant_cos(&angles),
            normalized_form: normalized_form(&t),
            halfangle_form: halfangle_form(&angles),
            r_interval: [lo, hi],
            r_in_interval: (lo..=hi).contains(&r),
            class: class.tag,
            has_model: class.tag.has_model(),
            real_model_distances: [plus, minus],
        };
        if !self.json {
            let o = &mut self.out;
            writeln!(o, "p = {p}, q = {q}, r = {r}")?;
            writeln!(o, "K = 4pqr - (p+q+r-1)^2      {}", h(rep.k))?;
            writeln!(o, "cosine form (= 4K)          {}", h(rep.invariant_cos))?;
            writeln!(o, "normalized form             {}", h(rep.normalized_form))?;
            writeln!(o, "half-angle form             {}", h(rep.halfangle_form))?;
            writeln!(o, "admissible r interval       [{}, {}]", h(lo), h(hi))?;
            writeln!(
                o,
                "distance to real solutions  {} (sum branch), {} (difference branch)",
                h(plus),
                h(minus)
            )?;
            writeln!(o, "class                       {}", rep.class)?;
            writeln!(o)?;
        }
        self.out.write_all(to_json(&rep).as_bytes())?;
        Ok(if rep.has_model {
            EXIT_OK
        } else {
            EXIT_NO_MODEL
        })
    }

    fn synthesize(
        &mut self,
        p: f64,
        q: f64,
        r: f64,
        values: Option<Vec<f64>>,
        output: Option<&Path>,
    ) -> io::Result<i32> {
        let t = match self.triple(p, q, r)? {
            Ok(t) => t,
            Err(code) => return Ok(code),
        };
        let values = values.unwrap_or_else(|| vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        if values.len() != 6 {
            return self.usage(format!(
                "--values takes six numbers a1,a2,b1,b2,c1,c2, got {}",
                values.len()
            ));
        }
        let mut observables = Vec::with_capacity(3);
        for (i, label) in LABELS.iter().enumerate() {
            match Observable::new(*label, values[2 * i], values[2 * i + 1]) {
                Ok(o) => observables.push(o),
                Err(e) => return self.usage(e),
            }
        }
        let observables: [Observable; 3] = observables.try_into().expect("three labels");

        let class = classify(&t, self.eps_k);
        let model = match synthesize(&t, &observables, self.eps_k) {
            Ok(m) => m,
            Err(e) => {
                writeln!(self.err, "no quantum model: {e} (K = {})", class.k)?;
                return Ok(EXIT_NO_MODEL);
            }
        };
        let (model, embedded) = match class.tag {
            ModelTag::RealQuantum => match real_embedding(&model, self.eps_k) {
                Ok(real) if verify_transitions(&real, &t, DEFAULT_TRANSITION_TOLERANCE).passed => {
                    (real, true)
                }
                _ => (model, false),
            },
            _ => (model, false),
        };
        let deviation = verify_transitions(&model, &t, DEFAULT_TRANSITION_TOLERANCE).max_deviation;
        // inside the ε_K band no exact model may exist; record what was reached
        let tolerance = if deviation <= DEFAULT_TRANSITION_TOLERANCE {
            DEFAULT_TRANSITION_TOLERANCE
        } else {
            10f64.powi(deviation.log10().ceil() as i32)
        };
        let doc = ModelDocument::new(&t, &model, embedded, self.eps_k, tolerance);
        let text = doc.to_json();
        let Some(path) = output else {
            self.out.write_all(text.as_bytes())?;
            return Ok(EXIT_OK);
        };
        if let Err(e) = fs::write(path, &text) {
            writeln!(self.err, "error: cannot write {}: {e}", path.display())?;
            return Ok(EXIT_IO);
        }
        let shown = path.display().to_string();
        let summary = SynthesizeSummary {
            command: "synthesize",
            output: &shown,
            class: class.tag,
            k: class.k,
            real_embedding: embedded,
            max_transition_deviation: deviation,
            transition_tolerance: tolerance,
        };
        if !self.json {
            writeln!(self.out, "wrote {shown}")?;
            writeln!(
                self.out,
                "class {} (K = {}), real embedding: {embedded}",
                class.tag,
                h(class.k)
            )?;
            writeln!(
                self.out,
                "largest transition deviation {} (tolerance {})",
                h(deviation),
                h(tolerance)
            )?;
            writeln!(self.out)?;
        }
        self.out.write_all(to_json(&summary).as_bytes())?;
        Ok(EXIT_OK)
    }

    fn verify(&mut self, path: &Path, tol: Option<f64>) -> io::Result<i32> {
        if let Some(t) = tol {
            if !(t.is_finite() && t >= 0.0) {
                return self.usage(format!("--tol must be finite and nonnegative, got {t}"));
            }
        }
        let text = match fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                writeln!(self.err, "error: cannot read {}: {e}", path.display())?;
                return Ok(EXIT_IO);
            }
        };
        let loaded = match ModelDocument::from_json(&text).and_then(|d| d.load()) {
            Ok(l) => l,
            Err(e) => {
                writeln!(self.err, "error: {}: {e}", path.display())?;
                return Ok(EXIT_SCHEMA);
            }
        };
        let rep = loaded.verify(tol);
        if !self.json {
            let o = &mut self.out;
            let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
            writeln!(
                o,
                "model {} at tolerance {}",
                path.display(),
                h(rep.tolerance)
            )?;
            writeln!(
                o,
                "unit norms          {:<4} deviation {}",
                mark(rep.norm_deviation <= rep.tolerance),
                h(rep.norm_deviation)
            )?;
            writeln!(
                o,
                "model invariants    {:<4} worst residual {}",
                mark(rep.invariants.passes(rep.tolerance)),
                h(rep.invariants.worst())
            )?;
            writeln!(
                o,
                "transitions         {:<4} deviation {}",
                mark(rep.transitions.passed),
                h(rep.transitions.max_deviation)
            )?;
            writeln!(
                o,
                "correlation bound   {:<4} min slack {}, 4K residual {}",
                mark(rep.correlation.passes()),
                h(rep.correlation.min_slack),
                h(rep.correlation.max_form_residual)
            )?;
            match &rep.commutator_evidence {
                Ok(e) => writeln!(
                    o,
                    "commutator evidence {:<4} {}",
                    mark(rep.evidence_consistent),
                    e.evidence
                )?,
                Err(e) => writeln!(o, "commutator evidence FAIL {e}")?,
            }
            writeln!(
                o,
                "stored class        {:<4} {}",
                mark(rep.class_consistent),
                loaded.class
            )?;
            writeln!(o, "{}", if rep.passed { "PASS" } else { "FAIL" })?;
            writeln!(o)?;
        }
        self.out.write_all(to_json(&rep).as_bytes())?;
        Ok(if rep.passed { EXIT_OK } else { EXIT_FAILED })
    }

    fn sweep(&mut self, n: usize, output: Option<&Path>, format: SweepFormat) -> io::Result<i32> {
        if n < 2 {
            return self.usage(format!("sweep needs a grid resolution n >= 2, got {n}"));
        }
        let rows = sweep_rows(n, self.eps_k);
        let text = match format {
            SweepFormat::Csv => sweep_csv(&rows),
            SweepFormat::Json => to_json(&rows),
        };
        let Some(path) = output else {
            self.out.write_all(text.as_bytes())?;
            return Ok(EXIT_OK);
        };
        if let Err(e) = fs::write(path, &text) {
            writeln!(self.err, "error: cannot write {}: {e}", path.display())?;
            return Ok(EXIT_IO);
        }
        let count = |tag| rows.iter().filter(|r| r.class == tag).count();
        let shown = path.display().to_string();
        let summary = SweepSummary {
            command: "sweep",
            n,
            rows: rows.len(),
            output: &shown,
            no_quantum_model: count(ModelTag::NoQuantumModel),
            real_quantum: count(ModelTag::RealQuantum),
            strictly_complex_quantum: count(ModelTag::StrictlyComplexQuantum),
        };
        if !self.json {
            writeln!(self.out, "wrote {} rows to {shown}", rows.len())?;
            writeln!(
                self.out,
                "NoQuantumModel {}, RealQuantum {}, StrictlyComplexQuantum {}",
                summary.no_quantum_model, summary.real_quantum, summary.strictly_complex_quantum
            )?;
            writeln!(self.out)?;
        }
        self.out.write_all(to_json(&summary).as_bytes())?;
        Ok(EXIT_OK)
    }

    fn selftest(&mut self, count: usize) -> io::Result<i32> {
        if count == 0 {
            return self.usage("--count must be at least 1");
        }
        let summary = selftest::run(self.seed, count);
        if !self.json {
            writeln!(
                self.out,
                "selftest seed {} count {}",
                summary.seed, summary.count
            )?;
            for b in &summary.batteries {
                writeln!(
                    self.out,
                    "{:<4} {:<36} worst {:<24} tol {:e} ({} samples)",
                    if b.passed { "ok" } else { "FAIL" },
                    b.name,
                    format!("{:e}", b.worst_residual),
                    b.tolerance,
                    b.samples
                )?;
            }
            writeln!(
                self.out,
                "{}",
                if summary.passed {
                    "all identities hold"
                } else {
                    "identity breach"
                }
            )?;
            writeln!(self.out)?;
        }
        self.out.write_all(to_json(&summary).as_bytes())?;
        Ok(if summary.passed { EXIT_OK } else { EXIT_BREACH })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qinvar").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_exit_codes() {
        let (code, out, _) = call(&["classify", "0.5", "0.5", "0.5", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["K"], 0.25);
        assert_eq!(v["class"], "StrictlyComplexQuantum");
        assert_eq!(call(&["classify", "0.9", "0.9", "0.1"]).0, 2);
        let (code, _, err) = call(&["classify", "1.0", "0.5", "0.5"]);
        assert_eq!(code, 1);
        assert!(err.contains("open interval"), "{err}");
        assert_eq!(call(&["classify", "0.5", "0.5"]).0, 1);
        assert_eq!(call(&["classify", "x", "0.5", "0.5"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(
            call(&["--eps-k", "-1", "classify", "0.5", "0.5", "0.5"]).0,
            1
        );
    }

    #[test]
    fn sweep_grid_order() {
        let rows = sweep_rows(3, DEFAULT_EPS_K);
        assert_eq!(rows.len(), 27);
        assert_eq!((rows[0].p, rows[0].q, rows[0].r), (0.25, 0.25, 0.25));
        assert_eq!((rows[1].p, rows[1].q, rows[1].r), (0.25, 0.25, 0.5));
        assert_eq!((rows[3].p, rows[3].q, rows[3].r), (0.25, 0.5, 0.25));
        assert_eq!(rows[13].k, 0.25);
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with("p,q,r,K,class,normalized_form\n"));
        assert_eq!(csv.lines().count(), 28);
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
        assert_eq!(call(&["sweep", "1"]).0, 1);
    }

    #[test]
    fn synthesize_values_flag() {
        let (code, out, _) = call(&[
            "synthesize",
            "0.5",
            "0.5",
            "0.5",
            "--values",
            "1,-1,1,-1,1,-1",
        ]);
        assert_eq!(code, 0);
        let doc = ModelDocument::from_json(&out).unwrap();
        assert_eq!(
            doc.bloch_vectors,
            [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
        );
        assert_eq!(
            call(&["synthesize", "0.5", "0.5", "0.5", "--values", "1,-1"]).0,
            1
        );
        assert_eq!(
            call(&[
                "synthesize",
                "0.5",
                "0.5",
                "0.5",
                "--values",
                "1,1,1,-1,1,-1"
            ])
            .0,
            1
        );
        assert_eq!(call(&["synthesize", "0.9", "0.9", "0.1"]).0, 2);
        let (code, out, _) = call(&[
            "synthesize",
            "0.5",
            "0.5",
            "0.5",
            "--values",
            "-2,3,0,1,5,-5",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            ModelDocument::from_json(&out).unwrap().values[0],
            [-2.0, 3.0]
        );
    }
}
