use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ringlab::corpus::{all_checks, any_fail, builtin_corpus, parse_corpus_text, verify_corpus, write_csv, write_json, CheckResult};
use ringlab::dsl::{parse_and_eval, parse_element_literal};
use ringlab::polarity::{classify_ring, element_certificates, weakly_jqp_element};
use ringlab::report::PROPERTY_ORDER;
use ringlab::structure::{self, SetKind};
use ringlab::theorems::{m2_quadratic_classify, m2_trace_det_obstruction, m2_unit_criterion, six_in_j_gate, t2_fast_classify, FastPathVerdict};
use ringlab::{Caps, FiniteRing, RingError};

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Exact polarity classification for small finite rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of text or CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum ring order to construct and classify.
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<u64>,
    /// Write the report to this path instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Suppress the summary line on standard error.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a ring expression against the full property set.
    Analyze {
        /// Ring expression, e.g. "Z6", "M(2,Z3)", "modJ(T(2,Z4))", "Z2 x Z3".
        expr: String,
        /// Comma-separated subset of property names to report.
        #[arg(long, value_name = "LIST")]
        properties: Option<String>,
        /// Include failure witnesses in text output.
        #[arg(long)]
        witnesses: bool,
    },
    /// Report certificates and memberships for one element.
    Element {
        /// Ring expression.
        expr: String,
        /// Element literal: integer, "(a,b)" tuple, or "[[a,b],[c,d]]" matrix.
        literal: String,
        /// Also run the applicable closed-form criteria and report agreement.
        #[arg(long)]
        fast_path: bool,
    },
    /// Run the verification suite over a corpus of ring expressions.
    Corpus {
        /// Corpus file: one ring expression per line, "#" comments allowed.
        #[arg(conflicts_with = "builtin")]
        file: Option<PathBuf>,
        /// Use the built-in verification corpus.
        #[arg(long)]
        builtin: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn exit_code(e: &RingError) -> i32 {
    match e {
        RingError::Parse { .. } | RingError::InvalidParameter(_) => 2,
        RingError::CapExceeded { .. } | RingError::CapExceededAt { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> i32 {
    let caps = cli.max_order.map(Caps::with_max_order).unwrap_or_default();
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let code = match &cli.cmd {
        Cmd::Analyze { expr, properties, witnesses } => {
            cmd_analyze(&cli, &caps, &mut sink, expr, properties.as_deref(), *witnesses)
        }
        Cmd::Element { expr, literal, fast_path } => {
            cmd_element(&cli, &caps, &mut sink, expr, literal, *fast_path)
        }
        Cmd::Corpus { file, builtin } => {
            cmd_corpus(&cli, &caps, &mut sink, file.as_deref(), *builtin)
        }
    };
    if let Err(e) = sink.flush() {
        eprintln!("error: {e}");
        return 1;
    }
    code
}

fn cmd_analyze(
    cli: &Cli,
    caps: &Caps,
    sink: &mut dyn Write,
    expr: &str,
    properties: Option<&str>,
    witnesses: bool,
) -> i32 {
    let ring = match parse_and_eval(expr, caps) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let mut report = match classify_ring(&ring, caps) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if let Some(list) = properties {
        let wanted: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        for name in &wanted {
            if !PROPERTY_ORDER.contains(name) {
                eprintln!("error: unknown property {name:?}");
                return 2;
            }
        }
        report.properties.retain(|p| wanted.contains(&p.name.as_str()));
    }
    let res = if cli.json {
        serde_json::to_string_pretty(&report)
            .map_err(|e| io::Error::other(e.to_string()))
            .and_then(|s| writeln!(sink, "{s}"))
    } else {
        let gate = six_in_j_gate(&ring);
        write!(sink, "{}", report.render_text(witnesses)).and_then(|()| match gate {
            Ok(g) => writeln!(sink, "gate six_in_j: {g}"),
            Err(e) => writeln!(sink, "gate six_in_j: error: {e}"),
        })
    };
    if let Err(e) = res {
        eprintln!("error: {e}");
        return 1;
    }
    0
}

#[derive(Serialize)]
struct Memberships {
    units: bool,
    radical: bool,
    j_sharp: bool,
    idempotents: bool,
    center: bool,
    qnil: bool,
}

#[derive(Serialize)]
struct CertLine {
    class: String,
    present: bool,
    idempotent: Option<String>,
    sign: Option<String>,
    witness: Option<String>,
    both_signs: Option<bool>,
    count: Option<u64>,
}

#[derive(Serialize)]
struct FastPathLine {
    criterion: String,
    applicable: bool,
    verdict: Option<bool>,
    case: String,
    agrees: Option<bool>,
}

#[derive(Serialize)]
struct ElementReport {
    ring: String,
    order: u64,
    element: String,
    index: u64,
    memberships: Memberships,
    comm_size: u64,
    comm2_size: u64,
    certificates: Vec<CertLine>,
    fast_path: Option<Vec<FastPathLine>>,
    elapsed_ms: u64,
}

fn fast_path_line(criterion: &str, v: &FastPathVerdict, brute: bool) -> FastPathLine {
    let agrees = match (v.applicable, v.verdict) {
        (true, Some(claim)) => {
            // The obstruction only ever claims "no"; any other criterion
            // claims the full verdict.
            if criterion == "m2_trace_det_obstruction" {
                Some(!brute || claim)
            } else {
                Some(claim == brute)
            }
        }
        _ => None,
    };
    FastPathLine {
        criterion: criterion.to_string(),
        applicable: v.applicable,
        verdict: v.verdict,
        case: v.case.to_string(),
        agrees,
    }
}

fn fast_paths(ring: &FiniteRing, idx: u64) -> Result<Vec<FastPathLine>, RingError> {
    let brute = weakly_jqp_element(ring, idx)?.is_some();
    let mut lines = Vec::new();
    if ring.triangular_parts().map_or(false, |(n, _)| n == 2) {
        let v = t2_fast_classify(ring, idx)?;
        lines.push(fast_path_line("t2_fast_classify", &v, brute));
    }
    if ring.matrix_parts().map_or(false, |(n, _)| n == 2) {
        let v = m2_unit_criterion(ring, idx)?;
        lines.push(fast_path_line("m2_unit_criterion", &v, brute));
        let v = m2_quadratic_classify(ring, idx)?;
        lines.push(fast_path_line("m2_quadratic_classify", &v, brute));
        let v = m2_trace_det_obstruction(ring, idx)?;
        lines.push(fast_path_line("m2_trace_det_obstruction", &v, brute));
    }
    Ok(lines)
}

fn cmd_element(
    cli: &Cli,
    caps: &Caps,
    sink: &mut dyn Write,
    expr: &str,
    literal: &str,
    fast_path: bool,
) -> i32 {
    let t0 = Instant::now();
    let report = (|| -> Result<ElementReport, RingError> {
        let ring = parse_and_eval(expr, caps)?;
        let lit = parse_element_literal(literal)?;
        let idx = ring.encode_literal(&lit)?;
        let memberships = Memberships {
            units: structure::set_contains(&ring, SetKind::Units, idx)?,
            radical: structure::set_contains(&ring, SetKind::Radical, idx)?,
            j_sharp: structure::set_contains(&ring, SetKind::JSharp, idx)?,
            idempotents: structure::set_contains(&ring, SetKind::Idempotents, idx)?,
            center: structure::set_contains(&ring, SetKind::Center, idx)?,
            qnil: structure::set_contains(&ring, SetKind::Qnil, idx)?,
        };
        let comm = structure::commutant(&ring, idx);
        let comm2 = structure::double_commutant(&ring, idx);
        let certificates = element_certificates(&ring, idx)?
            .into_iter()
            .map(|(class, cert)| CertLine {
                class: class.name().to_string(),
                present: cert.is_some(),
                idempotent: cert.map(|c| ring.render_element(c.idempotent)),
                sign: cert.and_then(|c| c.sign).map(|s| s.label().to_string()),
                witness: cert.map(|c| ring.render_element(c.witness)),
                both_signs: cert.map(|c| c.both_signs),
                count: cert.and_then(|c| c.count),
            })
            .collect();
        let fast = if fast_path { Some(fast_paths(&ring, idx)?) } else { None };
        Ok(ElementReport {
            ring: ring.descriptor(),
            order: ring.order(),
            element: ring.render_element(idx),
            index: idx,
            memberships,
            comm_size: comm.len() as u64,
            comm2_size: comm2.len() as u64,
            certificates,
            fast_path: fast,
            elapsed_ms: t0.elapsed().as_millis() as u64,
        })
    })();
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let res = if cli.json {
        serde_json::to_string_pretty(&report)
            .map_err(|e| io::Error::other(e.to_string()))
            .and_then(|s| writeln!(sink, "{s}"))
    } else {
        render_element_text(sink, &report)
    };
    if let Err(e) = res {
        eprintln!("error: {e}");
        return 1;
    }
    0
}

fn render_element_text(sink: &mut dyn Write, rep: &ElementReport) -> io::Result<()> {
    writeln!(sink, "ring: {} (order {})", rep.ring, rep.order)?;
    writeln!(sink, "element: {} (index {})", rep.element, rep.index)?;
    let m = &rep.memberships;
    writeln!(
        sink,
        "memberships: units={} radical={} j_sharp={} idempotents={} center={} qnil={}",
        m.units, m.radical, m.j_sharp, m.idempotents, m.center, m.qnil
    )?;
    writeln!(sink, "comm: {} elements, comm2: {} elements", rep.comm_size, rep.comm2_size)?;
    for c in &rep.certificates {
        if !c.present {
            writeln!(sink, "{}: no", c.class)?;
            continue;
        }
        let mut line = format!("{}: yes", c.class);
        if let Some(p) = &c.idempotent {
            line.push_str(&format!("  p={p}"));
        }
        if let Some(s) = &c.sign {
            line.push_str(&format!("  sign={s}"));
        }
        if let Some(w) = &c.witness {
            line.push_str(&format!("  witness={w}"));
        }
        if let Some(b) = c.both_signs {
            line.push_str(&format!("  both_signs={b}"));
        }
        if let Some(n) = c.count {
            line.push_str(&format!("  count={n}"));
        }
        writeln!(sink, "{line}")?;
    }
    if let Some(fast) = &rep.fast_path {
        if fast.is_empty() {
            writeln!(sink, "fast path: none applicable to this ring shape")?;
        }
        for f in fast {
            let verdict = match f.verdict {
                Some(v) => v.to_string(),
                None => "-".to_string(),
            };
            let agrees = match f.agrees {
                Some(a) => a.to_string(),
                None => "-".to_string(),
            };
            writeln!(
                sink,
                "fast path {}: applicable={} verdict={} case={} agrees={}",
                f.criterion, f.applicable, verdict, f.case, agrees
            )?;
        }
    }
    Ok(())
}

fn cmd_corpus(
    cli: &Cli,
    caps: &Caps,
    sink: &mut dyn Write,
    file: Option<&std::path::Path>,
    builtin: bool,
) -> i32 {
    let exprs = if builtin {
        builtin_corpus()
    } else {
        let Some(path) = file else {
            eprintln!("error: provide a corpus file or --builtin");
            return 2;
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 2;
            }
        };
        match parse_corpus_text(&text) {
            Ok(exprs) => exprs,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        }
    };
    let rows = match verify_corpus(&exprs, &all_checks(), caps) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let res = if cli.json { write_json(&rows, &mut *sink) } else { write_csv(&rows, &mut *sink) };
    if let Err(e) = res {
        eprintln!("error: {e}");
        return 1;
    }
    if !cli.quiet {
        let pass = rows.iter().filter(|r| r.result == CheckResult::Pass).count();
        let fail = rows.iter().filter(|r| r.result == CheckResult::Fail).count();
        let skip = rows.iter().filter(|r| r.result == CheckResult::Skipped).count();
        eprintln!(
            "{} rings, {} rows: {pass} pass, {fail} fail, {skip} skipped",
            exprs.len(),
            rows.len()
        );
    }
    if any_fail(&rows) {
        1
    } else {
        0
    }
}
