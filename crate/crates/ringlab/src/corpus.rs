//! Batch verification: runs a named check suite over a list of ring
//! expressions and emits one row per (ring, check) pair.
//!
//! Rows are sorted by (ring, check) so reruns are byte-identical apart from
//! the elapsed_ms column. A check either PASSes, FAILs with a witness, or is
//! SKIPPED when the ring is out of scope for it (too large, or the check
//! does not apply to the ring's shape).

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dsl::{eval_ring_expr, parse_ring_expr, render, RingExpr};
use crate::error::{Result, RingError};
use crate::exec;
use crate::polarity::{
    self, jqp_element, quasipolar_element, spectral_count, strongly_clean_element,
    strongly_j_clean_element, uniquely_clean_count, validate_certificate, weakly_jqp_element,
    PolarityCertificate, Sign,
};
use crate::report::{PropertyReport, IMPLICATIONS};
use crate::ring::{make_corner, make_quotient, Caps, FiniteRing};
use crate::structure;
use crate::theorems::{
    m2_diagonal_classify, m2_idempotent_forms, m2_quadratic_classify, m2_trace_det_obstruction,
    m2_unit_criterion, six_in_j_gate, t2_fast_classify, t2_idempotent_forms, Mat2,
};

const SAMPLE_SEED: u64 = 0x52494e47_4c414203;

/// Element sweeps cost at least order² ring operations; above this they are
/// skipped rather than letting one ring dominate a whole corpus run.
pub const ELEMENT_SWEEP_CAP: u64 = 8_192;

/// Sample size for per-element checks on rings too large to sweep.
pub const FAST_PATH_SAMPLES: usize = 200;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckResult {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CheckResult::Pass => "PASS",
            CheckResult::Fail => "FAIL",
            CheckResult::Skipped => "SKIPPED",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub ring: String,
    pub order: u64,
    pub check: String,
    pub result: CheckResult,
    pub witness: String,
    pub elapsed_ms: u64,
}

pub fn any_fail(rows: &[CheckRow]) -> bool {
    rows.iter().any(|r| r.result == CheckResult::Fail)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scale {
    /// Runs on any constructible ring; internally samples when large.
    Light,
    /// Full element sweep; skipped above ELEMENT_SWEEP_CAP.
    Element,
    /// Needs the classification report; skipped above the classify cap.
    Classify,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum KindFilter {
    All,
    Matrix2,
    Triangular2,
    TwoByTwo,
}

struct CheckDef {
    name: &'static str,
    scale: Scale,
    kind: KindFilter,
}

static CHECKS: &[CheckDef] = &[
    CheckDef { name: "axioms", scale: Scale::Light, kind: KindFilter::All },
    CheckDef { name: "comm2-membership", scale: Scale::Light, kind: KindFilter::All },
    CheckDef { name: "six-in-j-gate", scale: Scale::Light, kind: KindFilter::All },
    CheckDef { name: "idempotent-forms", scale: Scale::Light, kind: KindFilter::TwoByTwo },
    CheckDef { name: "t2-fastpath", scale: Scale::Light, kind: KindFilter::Triangular2 },
    CheckDef { name: "m2-fastpath", scale: Scale::Light, kind: KindFilter::Matrix2 },
    CheckDef { name: "obstruction-consistency", scale: Scale::Light, kind: KindFilter::Matrix2 },
    CheckDef { name: "matrix-j-sharp-gap", scale: Scale::Element, kind: KindFilter::Matrix2 },
    CheckDef { name: "radical-quasiregular", scale: Scale::Element, kind: KindFilter::All },
    CheckDef { name: "structural-inclusions", scale: Scale::Element, kind: KindFilter::All },
    CheckDef { name: "spectral-uniqueness", scale: Scale::Element, kind: KindFilter::All },
    CheckDef { name: "element-hierarchy", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "negation-closure", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "unit-spectral-idempotent", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "annihilator-inclusion", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "implication-lattice", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "weakly-feckly-reduced", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "weakly-j-sharp", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "weakly-directly-finite", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "weakly-rj-periodic", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "weakly-quotient", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "weakly-six-in-j", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "two-in-j-iff-jqp", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "abelian-iff-uniquely-clean", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "abelian-jqp-iff-uniquely-clean", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "local-iff-trivial-idempotents", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "corner-closure", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "shift-by-five", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "boolean-certificates", scale: Scale::Classify, kind: KindFilter::All },
    CheckDef { name: "t2-corner", scale: Scale::Classify, kind: KindFilter::Triangular2 },
];

pub fn all_checks() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// The verification corpus: Z2..Z30, four small products, triangular and
/// full 2x2 matrix rings over Z2/Z3/Z4, the radical quotient of each of
/// those, and two larger matrix shapes over Z9 exercised by sampling.
pub fn builtin_corpus() -> Vec<RingExpr> {
    let mut names: Vec<String> = Vec::new();
    let mut base: Vec<String> = (2..=30).map(|n| format!("Z{n}")).collect();
    base.extend(
        ["Z2 x Z2", "Z2 x Z3", "Z2 x Z4", "Z3 x Z3"].into_iter().map(str::to_string),
    );
    base.extend(
        ["T(2,Z2)", "T(2,Z3)", "T(2,Z4)", "M(2,Z2)", "M(2,Z3)", "M(2,Z4)"]
            .into_iter()
            .map(str::to_string),
    );
    names.extend(base.iter().cloned());
    names.extend(base.iter().map(|s| format!("modJ({s})")));
    names.push("T(2,Z9)".to_string());
    names.push("M(2,Z9)".to_string());
    names
        .iter()
        .map(|s| parse_ring_expr(s).expect("builtin corpus entry parses"))
        .collect()
}

/// One ring expression per line; blank lines and `#` comments are ignored.
pub fn parse_corpus_text(text: &str) -> Result<Vec<RingExpr>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let expr = parse_ring_expr(line).map_err(|e| {
            RingError::InvalidParameter(format!("line {}: {line:?}: {e}", i + 1))
        })?;
        out.push(expr);
    }
    Ok(out)
}

struct Ctx<'a> {
    ring: &'a FiniteRing,
    caps: &'a Caps,
    report: Option<&'a PropertyReport>,
}

pub fn verify_corpus(exprs: &[RingExpr], checks: &[&str], caps: &Caps) -> Result<Vec<CheckRow>> {
    let defs = resolve_checks(checks)?;

    struct Built {
        name: String,
        ring: Option<FiniteRing>,
        row: Option<CheckRow>,
    }
    let built: Vec<Built> = exprs
        .iter()
        .map(|e| {
            let name = render(e);
            let t0 = Instant::now();
            match eval_ring_expr(e, caps) {
                Ok(ring) => Built { name, ring: Some(ring), row: None },
                Err(err) => {
                    let (result, order) = match &err {
                        RingError::CapExceeded { required, .. }
                        | RingError::CapExceededAt { required, .. } => {
                            (CheckResult::Skipped, *required)
                        }
                        _ => (CheckResult::Fail, 0),
                    };
                    let row = CheckRow {
                        ring: name.clone(),
                        order,
                        check: "construction".to_string(),
                        result,
                        witness: err.to_string(),
                        elapsed_ms: t0.elapsed().as_millis() as u64,
                    };
                    Built { name, ring: None, row: Some(row) }
                }
            }
        })
        .collect();

    // Classification is the expensive shared input; compute it once per ring.
    let reports: Vec<Option<std::result::Result<PropertyReport, String>>> =
        exec::map_range(built.len() as u64, |i| {
            let ring = built[i as usize].ring.as_ref()?;
            if ring.order() > caps.classify {
                return None;
            }
            Some(polarity::classify_ring(ring, caps).map_err(|e| e.to_string()))
        });

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, b) in built.iter().enumerate() {
        let Some(ring) = b.ring.as_ref() else { continue };
        for (ci, def) in defs.iter().enumerate() {
            if kind_matches(def.kind, ring) {
                pairs.push((i, ci));
            }
        }
    }

    let mut rows: Vec<CheckRow> = built.iter().filter_map(|b| b.row.clone()).collect();
    rows.extend(exec::map_range(pairs.len() as u64, |k| {
        let (i, ci) = pairs[k as usize];
        let b = &built[i];
        let def = defs[ci];
        let ring = b.ring.as_ref().unwrap();
        let t0 = Instant::now();
        let ctx = Ctx {
            ring,
            caps,
            report: match &reports[i] {
                Some(Ok(rep)) => Some(rep),
                _ => None,
            },
        };
        let (result, witness) = run_check(def, &ctx, reports[i].as_ref());
        CheckRow {
            ring: b.name.clone(),
            order: ring.order(),
            check: def.name.to_string(),
            result,
            witness,
            elapsed_ms: t0.elapsed().as_millis() as u64,
        }
    }));
    rows.sort_by(|a, b| (a.ring.as_str(), a.check.as_str()).cmp(&(b.ring.as_str(), b.check.as_str())));
    Ok(rows)
}

fn resolve_checks(names: &[&str]) -> Result<Vec<&'static CheckDef>> {
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        match CHECKS.iter().find(|c| c.name == *name) {
            Some(def) => out.push(def),
            None => {
                return Err(RingError::InvalidParameter(format!("unknown check {name:?}")));
            }
        }
    }
    Ok(out)
}

fn kind_matches(filter: KindFilter, r: &FiniteRing) -> bool {
    let m2 = r.matrix_parts().map_or(false, |(n, _)| n == 2);
    let t2 = r.triangular_parts().map_or(false, |(n, _)| n == 2);
    match filter {
        KindFilter::All => true,
        KindFilter::Matrix2 => m2,
        KindFilter::Triangular2 => t2,
        KindFilter::TwoByTwo => m2 || t2,
    }
}

fn run_check(
    def: &CheckDef,
    ctx: &Ctx<'_>,
    report: Option<&std::result::Result<PropertyReport, String>>,
) -> (CheckResult, String) {
    match def.scale {
        Scale::Element if ctx.ring.order() > ELEMENT_SWEEP_CAP => {
            return (
                CheckResult::Skipped,
                format!("order {} exceeds element sweep cap {}", ctx.ring.order(), ELEMENT_SWEEP_CAP),
            );
        }
        Scale::Classify => match report {
            None => {
                return (
                    CheckResult::Skipped,
                    format!(
                        "order {} exceeds classification cap {}",
                        ctx.ring.order(),
                        ctx.caps.classify
                    ),
                );
            }
            Some(Err(e)) => return (CheckResult::Fail, format!("classification failed: {e}")),
            Some(Ok(_)) => {}
        },
        _ => {}
    }
    match dispatch(def.name, ctx) {
        Ok(outcome) => outcome,
        Err(RingError::NotApplicable(msg)) => (CheckResult::Skipped, format!("not applicable: {msg}")),
        Err(e) => (CheckResult::Fail, format!("error: {e}")),
    }
}

type Outcome = (CheckResult, String);

fn pass(witness: impl Into<String>) -> Result<Outcome> {
    Ok((CheckResult::Pass, witness.into()))
}

fn fail(witness: impl Into<String>) -> Result<Outcome> {
    Ok((CheckResult::Fail, witness.into()))
}

fn vacuous(reason: &str) -> Result<Outcome> {
    Ok((CheckResult::Pass, format!("vacuous: {reason}")))
}

fn dispatch(name: &str, ctx: &Ctx<'_>) -> Result<Outcome> {
    match name {
        "axioms" => check_axioms(ctx),
        "comm2-membership" => check_comm2_membership(ctx),
        "six-in-j-gate" => check_six_gate(ctx),
        "idempotent-forms" => check_idempotent_forms(ctx),
        "t2-fastpath" => check_t2_fastpath(ctx),
        "m2-fastpath" => check_m2_fastpath(ctx),
        "obstruction-consistency" => check_obstruction_consistency(ctx),
        "matrix-j-sharp-gap" => check_matrix_j_sharp_gap(ctx),
        "radical-quasiregular" => check_radical_quasiregular(ctx),
        "structural-inclusions" => check_structural_inclusions(ctx),
        "spectral-uniqueness" => check_spectral_uniqueness(ctx),
        "element-hierarchy" => check_element_hierarchy(ctx),
        "negation-closure" => check_negation_closure(ctx),
        "unit-spectral-idempotent" => check_unit_spectral(ctx),
        "annihilator-inclusion" => check_annihilator_inclusion(ctx),
        "implication-lattice" => check_implication_lattice(ctx),
        "weakly-feckly-reduced" => check_weakly_entails(ctx, "feckly_reduced"),
        "weakly-j-sharp" => check_weakly_entails(ctx, "j_equals_j_sharp"),
        "weakly-directly-finite" => check_weakly_entails(ctx, "directly_finite"),
        "weakly-rj-periodic" => check_weakly_rj_periodic(ctx),
        "weakly-quotient" => check_weakly_quotient(ctx),
        "weakly-six-in-j" => check_weakly_six(ctx),
        "two-in-j-iff-jqp" => check_two_iff_jqp(ctx),
        "abelian-iff-uniquely-clean" => check_abelian_iff_uc(ctx),
        "abelian-jqp-iff-uniquely-clean" => check_abelian_jqp_iff_uc(ctx),
        "local-iff-trivial-idempotents" => check_local_iff_trivial(ctx),
        "corner-closure" => check_corner_closure(ctx),
        "shift-by-five" => check_shift_by_five(ctx),
        "boolean-certificates" => check_boolean_certificates(ctx),
        "t2-corner" => check_t2_corner(ctx),
        _ => Err(RingError::Internal(format!("unregistered check {name}"))),
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Deterministic ascending sample of `want` distinct indices below `n`.
pub fn sample_indices(n: u64, want: usize, salt: u64) -> Vec<u64> {
    if n as usize <= want {
        return (0..n).collect();
    }
    let seed = SAMPLE_SEED ^ salt ^ n.wrapping_mul(0x9e3779b97f4a7c15);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = BTreeSet::new();
    while picked.len() < want {
        picked.insert(rng.next_u64() % n);
    }
    picked.into_iter().collect()
}

/// Sweep sample: everything when the ring fits the classify cap, otherwise a
/// fixed-seed sample with a handful of structurally special elements pinned.
fn sweep_sample(ctx: &Ctx<'_>, check: &str) -> (Vec<u64>, bool) {
    let n = ctx.ring.order();
    if n <= ctx.caps.classify {
        return ((0..n).collect(), false);
    }
    let mut picked: BTreeSet<u64> =
        sample_indices(n, FAST_PATH_SAMPLES, fnv(check)).into_iter().collect();
    picked.insert(ctx.ring.zero_idx());
    picked.insert(ctx.ring.one_idx());
    picked.insert(ctx.ring.scalar(-1));
    (picked.into_iter().collect(), true)
}

fn check_axioms(ctx: &Ctx<'_>) -> Result<Outcome> {
    match ctx.ring.verify_axioms() {
        Ok(()) => pass("ring laws hold"),
        Err(RingError::AxiomViolation { law, witness }) => fail(format!("{law}: {witness}")),
        Err(e) => Err(e),
    }
}

fn check_comm2_membership(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let samples = sample_indices(r.order(), 64, fnv("comm2-membership"));
    let idem = structure::idempotents(r);
    let center = structure::center(r);
    for &a in &samples {
        let comm = structure::commutant(r, a);
        if comm.binary_search(&a).is_err() {
            return fail(format!("{} does not commute with itself", r.render_element(a)));
        }
        if !structure::in_double_commutant(r, &comm, a) {
            return fail(format!("{} is outside its own double commutant", r.render_element(a)));
        }
        for &p in idem {
            if structure::in_double_commutant(r, &comm, p) && comm.binary_search(&p).is_err() {
                return fail(format!(
                    "idempotent {} in comm2({}) but not in comm",
                    r.render_element(p),
                    r.render_element(a)
                ));
            }
        }
        for &z in center.iter().take(8) {
            if !structure::in_double_commutant(r, &comm, z) {
                return fail(format!(
                    "central {} missing from comm2({})",
                    r.render_element(z),
                    r.render_element(a)
                ));
            }
        }
    }
    pass(format!("{} elements sampled", samples.len()))
}

fn check_six_gate(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let gate = six_in_j_gate(r)?;
    let direct = structure::in_radical(r, r.scalar(6))?;
    if gate != direct {
        return fail(format!("gate says {gate}, radical membership says {direct}"));
    }
    pass(format!("6*1 in J: {gate}"))
}

fn check_idempotent_forms(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let forms = if r.matrix_parts().is_some() {
        m2_idempotent_forms(r)?
    } else {
        t2_idempotent_forms(r)?
    };
    let brute = structure::idempotents(r);
    if forms.as_slice() != brute {
        let in_forms: BTreeSet<u64> = forms.iter().copied().collect();
        let diff = brute
            .iter()
            .find(|e| !in_forms.contains(e))
            .or_else(|| forms.iter().find(|e| brute.binary_search(e).is_err()));
        return fail(format!(
            "form enumeration disagrees with brute force near {}",
            diff.map_or("?".to_string(), |&e| r.render_element(e))
        ));
    }
    pass(format!("{} idempotents match", forms.len()))
}

fn check_t2_fastpath(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let (samples, sampled) = sweep_sample(ctx, "t2-fastpath");
    for &a in &samples {
        let fast = t2_fast_classify(r, a)?;
        let brute = weakly_jqp_element(r, a)?;
        if fast.verdict != Some(brute.is_some()) {
            return fail(format!(
                "{}: fast path {:?} (case {}), brute force {}",
                r.render_element(a),
                fast.verdict,
                fast.case,
                brute.is_some()
            ));
        }
        if fast.verdict == Some(true) && fast.certificate.is_none() {
            return fail(format!("{}: positive verdict without certificate", r.render_element(a)));
        }
    }
    let tag = if sampled { " (sampled)" } else { "" };
    pass(format!("{} elements agree{tag}", samples.len()))
}

fn check_m2_fastpath(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let (_, base) = r.matrix_parts().expect("matrix ring");
    let base = base.clone();
    let (samples, sampled) = sweep_sample(ctx, "m2-fastpath");
    for &a in &samples {
        let brute = weakly_jqp_element(r, a)?.is_some();
        if structure::is_unit(r, a) {
            let v = m2_unit_criterion(r, a)?;
            if v.verdict != Some(brute) {
                return fail(format!(
                    "unit criterion on {}: {:?} vs brute {brute}",
                    r.render_element(a),
                    v.verdict
                ));
            }
        }
        let q = m2_quadratic_classify(r, a)?;
        if q.applicable && q.verdict != Some(brute) {
            return fail(format!(
                "quadratic criterion on {}: {:?} (case {}) vs brute {brute}",
                r.render_element(a),
                q.verdict,
                q.case
            ));
        }
        let o = m2_trace_det_obstruction(r, a)?;
        if o.applicable && o.verdict == Some(false) && brute {
            return fail(format!(
                "obstruction rejected {} but brute force certifies it",
                r.render_element(a)
            ));
        }
    }
    // Diagonal criterion: every (j, u) pair from the base when small.
    let rad: Vec<u64> = structure::jacobson_radical(&base)?.to_vec();
    let units: Vec<u64> = structure::units(&base).to_vec();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for &j in &rad {
        for &u in &units {
            pairs.push((j, u));
        }
    }
    if pairs.len() > 64 {
        let keep = sample_indices(pairs.len() as u64, 64, fnv("m2-diagonal"));
        pairs = keep.into_iter().map(|i| pairs[i as usize]).collect();
    }
    for &(j, u) in &pairs {
        let v = m2_diagonal_classify(r, j, u)?;
        let idx = Mat2::diag(&base, j, u)?.to_m2_index(r)?;
        let brute = weakly_jqp_element(r, idx)?.is_some();
        if v.verdict != Some(brute) {
            return fail(format!(
                "diagonal criterion on {}: {:?} (case {}) vs brute {brute}",
                r.render_element(idx),
                v.verdict,
                v.case
            ));
        }
    }
    let tag = if sampled { " (sampled)" } else { "" };
    pass(format!("{} elements and {} diagonal pairs agree{tag}", samples.len(), pairs.len()))
}

fn check_obstruction_consistency(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let (samples, sampled) = sweep_sample(ctx, "obstruction-consistency");
    let mut blocked = 0u64;
    for &a in &samples {
        let o = m2_trace_det_obstruction(r, a)?;
        if !(o.applicable && o.verdict == Some(false)) {
            continue;
        }
        blocked += 1;
        let q = m2_quadratic_classify(r, a)?;
        if q.applicable && q.verdict != Some(false) {
            return fail(format!(
                "{}: obstruction rejects but quadratic criterion says {:?}",
                r.render_element(a),
                q.verdict
            ));
        }
    }
    let tag = if sampled { " (sampled)" } else { "" };
    pass(format!("{blocked} obstructed elements consistent{tag}"))
}

fn check_matrix_j_sharp_gap(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let (_, base) = r.matrix_parts().expect("matrix ring");
    if base.order() == 1 {
        return vacuous("trivial base ring");
    }
    let base = base.clone();
    let e21 = Mat2::new(&base, [base.zero_idx(), base.zero_idx(), base.one_idx(), base.zero_idx()])?
        .to_m2_index(r)?;
    if !structure::in_j_sharp(r, e21)? {
        return fail(format!("{} should be nilpotent into J", r.render_element(e21)));
    }
    if structure::in_radical(r, e21)? {
        return fail(format!("{} unexpectedly lies in J", r.render_element(e21)));
    }
    let mut witness = format!("{} lies in J# but not J", r.render_element(e21));
    if let Some(rep) = ctx.report {
        if rep.verdict("weakly_j_quasipolar") {
            return fail(format!(
                "J != J# yet ring classified weakly_j_quasipolar (witness {})",
                r.render_element(e21)
            ));
        }
        witness.push_str("; ring is not weakly_j_quasipolar");
    }
    pass(witness)
}

fn check_radical_quasiregular(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let n = r.order();
    structure::jacobson_radical(r)?;
    let one = r.one_idx();
    let ok: Vec<bool> = exec::map_range(n, |x| {
        let in_j = structure::in_radical(r, x).unwrap_or(false);
        let quasi = (0..n).all(|t| structure::is_unit(r, r.sub_idx(one, r.mul_idx(t, x))));
        in_j == quasi
    });
    if let Some(x) = ok.iter().position(|&b| !b) {
        return fail(format!(
            "{}: radical membership disagrees with quasi-regularity",
            r.render_element(x as u64)
        ));
    }
    pass(format!("{n} elements agree with quasi-regularity"))
}

fn check_structural_inclusions(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let rad = structure::jacobson_radical(r)?.to_vec();
    let sharp = structure::j_sharp(r)?.to_vec();
    for &x in &rad {
        if !structure::in_j_sharp(r, x)? {
            return fail(format!("{} in J but not in J#", r.render_element(x)));
        }
    }
    for &x in &sharp {
        if !structure::in_qnil(r, x) {
            return fail(format!("{} in J# but not quasinilpotent", r.render_element(x)));
        }
    }
    for &u in structure::units(r) {
        if structure::in_radical(r, u)? {
            return fail(format!("unit {} inside J", r.render_element(u)));
        }
    }
    for &e in structure::idempotents(r) {
        if e != r.zero_idx() && structure::in_radical(r, e)? {
            return fail(format!("nonzero idempotent {} inside J", r.render_element(e)));
        }
    }
    let center = structure::center(r);
    let zset: BTreeSet<u64> = center.iter().copied().collect();
    if !zset.contains(&r.zero_idx()) || !zset.contains(&r.one_idx()) {
        return fail("center is missing 0 or 1".to_string());
    }
    let zs: Vec<u64> = if center.len() <= 24 {
        center.to_vec()
    } else {
        sample_indices(center.len() as u64, 24, fnv("center-closure"))
            .into_iter()
            .map(|i| center[i as usize])
            .collect()
    };
    for &z in &zs {
        for &w in &zs {
            if !zset.contains(&r.add_idx(z, w)) || !zset.contains(&r.mul_idx(z, w)) {
                return fail(format!(
                    "center not closed at {} and {}",
                    r.render_element(z),
                    r.render_element(w)
                ));
            }
        }
    }
    pass(format!(
        "J({}) within J#({}) within qnil; units, idempotents, center consistent",
        rad.len(),
        sharp.len()
    ))
}

fn check_spectral_uniqueness(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let n = r.order();
    structure::jacobson_radical(r)?;
    let counts: Vec<std::result::Result<u64, String>> =
        exec::map_range(n, |a| spectral_count(r, a).map_err(|e| e.to_string()));
    let weak = weak_certs(r)?;
    let mut present = 0u64;
    for (a, c) in counts.iter().enumerate() {
        let c = match c {
            Err(e) => return fail(format!("error at {}: {e}", r.render_element(a as u64))),
            Ok(c) => *c,
        };
        if c > 1 {
            return fail(format!(
                "{} has {c} spectral idempotents",
                r.render_element(a as u64)
            ));
        }
        let has_cert = weak[a].is_some();
        if (c == 1) != has_cert {
            return fail(format!(
                "{}: spectral count {c} but certificate present: {has_cert}",
                r.render_element(a as u64)
            ));
        }
        present += c;
    }
    pass(format!(
        "{n} elements, at most one spectral idempotent each, {present} certified"
    ))
}

fn weak_certs(r: &FiniteRing) -> Result<Vec<Option<PolarityCertificate>>> {
    structure::jacobson_radical(r)?;
    structure::idempotents(r);
    let out: Vec<std::result::Result<Option<PolarityCertificate>, String>> =
        exec::map_range(r.order(), |a| weakly_jqp_element(r, a).map_err(|e| e.to_string()));
    out.into_iter()
        .collect::<std::result::Result<Vec<_>, String>>()
        .map_err(RingError::Internal)
}

fn check_element_hierarchy(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let n = r.order();
    let weak = weak_certs(r)?;
    for a in 0..n {
        let w = &weak[a as usize];
        let j = jqp_element(r, a)?;
        let q = quasipolar_element(r, a);
        if j.is_some() && w.is_none() {
            return fail(format!("{} is J-quasipolar but not weakly", r.render_element(a)));
        }
        if w.is_some() && q.is_none() {
            return fail(format!("{} is weakly J-quasipolar but not quasipolar", r.render_element(a)));
        }
        if let Some(c) = w {
            validate_certificate(r, c)?;
            let plus_feasible = c.sign == Some(Sign::Plus) || c.both_signs;
            if plus_feasible && j.is_none() {
                return fail(format!(
                    "{} has a plus-sign weak certificate but no J-quasipolar one",
                    r.render_element(a)
                ));
            }
        }
        let c = polarity::clean_element(r, a);
        let sc = strongly_clean_element(r, a);
        let sjc = strongly_j_clean_element(r, a)?;
        if sjc.is_some() && sc.is_none() {
            return fail(format!("{} strongly J-clean but not strongly clean", r.render_element(a)));
        }
        if sc.is_some() && c.is_none() {
            return fail(format!("{} strongly clean but not clean", r.render_element(a)));
        }
        let (uc_n, _) = uniquely_clean_count(r, a);
        if uc_n >= 1 && c.is_none() {
            return fail(format!("{} has clean decompositions but clean_element missed them", r.render_element(a)));
        }
    }
    pass(format!("{n} elements respect the class hierarchy"))
}

fn check_negation_closure(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let weak = weak_certs(r)?;
    for a in 0..r.order() {
        let wa = &weak[a as usize];
        let wn = &weak[r.neg_idx(a) as usize];
        if wa.is_some() != wn.is_some() {
            return fail(format!(
                "{} and its negation disagree on weak certification",
                r.render_element(a)
            ));
        }
        if let (Some(ca), Some(cn)) = (wa, wn) {
            if ca.idempotent != cn.idempotent {
                return fail(format!(
                    "{}: negation changed the spectral idempotent",
                    r.render_element(a)
                ));
            }
        }
    }
    pass(format!("{} elements closed under negation", r.order()))
}

fn check_unit_spectral(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    structure::jacobson_radical(r)?;
    let mut certified = 0u64;
    for &u in structure::units(r) {
        if let Some(c) = weakly_jqp_element(r, u)? {
            certified += 1;
            if c.idempotent != r.one_idx() {
                return fail(format!(
                    "unit {} certified with idempotent {}",
                    r.render_element(u),
                    r.render_element(c.idempotent)
                ));
            }
        }
    }
    pass(format!("{certified} certified units all use the identity idempotent"))
}

fn check_annihilator_inclusion(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let n = r.order();
    let weak = weak_certs(r)?;
    for a in 0..n {
        let Some(c) = &weak[a as usize] else { continue };
        let p = c.idempotent;
        let z = r.zero_idx();
        for t in 0..n {
            if r.mul_idx(t, a) == z && r.mul_idx(t, p) != z {
                return fail(format!(
                    "{} kills {} on the left but not its idempotent {}",
                    r.render_element(t),
                    r.render_element(a),
                    r.render_element(p)
                ));
            }
            if r.mul_idx(a, t) == z && r.mul_idx(p, t) != z {
                return fail(format!(
                    "{} kills {} on the right but not its idempotent {}",
                    r.render_element(t),
                    r.render_element(a),
                    r.render_element(p)
                ));
            }
        }
    }
    pass("annihilators of certified elements transfer to their idempotents".to_string())
}

fn check_implication_lattice(ctx: &Ctx<'_>) -> Result<Outcome> {
    let rep = ctx.report.expect("classify-scale check");
    let violations = rep.implication_violations();
    if !violations.is_empty() {
        return fail(violations.join("; "));
    }
    pass(format!("{} property implications hold", IMPLICATIONS.len()))
}

fn ring_weakly(ctx: &Ctx<'_>) -> bool {
    ctx.report.expect("classify-scale check").verdict("weakly_j_quasipolar")
}

fn check_weakly_entails(ctx: &Ctx<'_>, property: &str) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let rep = ctx.report.unwrap();
    if rep.verdict(property) {
        pass(format!("weakly_j_quasipolar and {property}"))
    } else {
        let w = rep.entry(property).and_then(|e| e.witness.clone()).unwrap_or_default();
        fail(format!("{property} fails at {w}"))
    }
}

fn check_weakly_rj_periodic(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let rep = ctx.report.unwrap();
    let c = rep.verdict("rj_commutative");
    let p = rep.verdict("rj_cubed_identity");
    if c && p {
        pass("R/J is commutative and satisfies x^3 = x")
    } else {
        fail(format!("rj_commutative: {c}, rj_cubed_identity: {p}"))
    }
}

fn check_weakly_quotient(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let r = ctx.ring;
    let rad = structure::jacobson_radical(r)?.to_vec();
    let q = make_quotient(r, &rad, true)?;
    let weak = weak_certs(&q)?;
    if let Some(a) = weak.iter().position(|c| c.is_none()) {
        return fail(format!(
            "R/J element {} has no weak certificate",
            q.render_element(a as u64)
        ));
    }
    pass(format!("radical quotient of order {} is weakly_j_quasipolar", q.order()))
}

fn check_weakly_six(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    if six_in_j_gate(ctx.ring)? {
        pass("6*1 lies in J")
    } else {
        fail("ring is weakly_j_quasipolar but 6*1 is outside J".to_string())
    }
}

fn check_two_iff_jqp(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let r = ctx.ring;
    let two = structure::in_radical(r, r.scalar(2))?;
    let jqp = ctx.report.unwrap().verdict("j_quasipolar");
    if two == jqp {
        pass(format!("2*1 in J: {two}, j_quasipolar: {jqp}"))
    } else {
        fail(format!("2*1 in J: {two}, j_quasipolar: {jqp}"))
    }
}

fn check_abelian_iff_uc(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let rep = ctx.report.unwrap();
    let ab = rep.verdict("abelian");
    let uc = rep.verdict("uniquely_clean");
    if ab == uc {
        pass(format!("abelian: {ab}, uniquely_clean: {uc}"))
    } else {
        fail(format!("abelian: {ab}, uniquely_clean: {uc}"))
    }
}

fn check_abelian_jqp_iff_uc(ctx: &Ctx<'_>) -> Result<Outcome> {
    let rep = ctx.report.expect("classify-scale check");
    let lhs = rep.verdict("abelian") && rep.verdict("j_quasipolar");
    let uc = rep.verdict("uniquely_clean");
    if lhs == uc {
        pass(format!("abelian and j_quasipolar: {lhs}, uniquely_clean: {uc}"))
    } else {
        fail(format!("abelian and j_quasipolar: {lhs}, uniquely_clean: {uc}"))
    }
}

fn check_local_iff_trivial(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let rep = ctx.report.unwrap();
    let local = rep.verdict("local");
    let idem = structure::idempotents(ctx.ring).len();
    let trivial = idem <= 2;
    if local == trivial {
        pass(format!("local: {local}, idempotent count: {idem}"))
    } else {
        fail(format!("local: {local}, idempotent count: {idem}"))
    }
}

fn check_corner_closure(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let r = ctx.ring;
    let idem = structure::idempotents(r).to_vec();
    for &f in &idem {
        let corner = make_corner(r, f)?;
        let weak = weak_certs(&corner)?;
        if let Some(a) = weak.iter().position(|c| c.is_none()) {
            return fail(format!(
                "corner at {} fails at {}",
                r.render_element(f),
                corner.render_element(a as u64)
            ));
        }
    }
    pass(format!("{} corners are weakly_j_quasipolar", idem.len()))
}

fn check_shift_by_five(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ring_weakly(ctx) {
        return vacuous("ring is not weakly_j_quasipolar");
    }
    let r = ctx.ring;
    if !six_in_j_gate(r)? {
        return fail("6*1 outside J on a weakly_j_quasipolar ring".to_string());
    }
    let five = r.scalar(5);
    let weak = weak_certs(r)?;
    for a in 0..r.order() {
        if weak[a as usize].is_none() {
            continue;
        }
        let up = weak[r.add_idx(a, five) as usize].is_some();
        let down = weak[r.sub_idx(a, five) as usize].is_some();
        if !up && !down {
            return fail(format!(
                "neither {} + 5 nor {} - 5 is certified",
                r.render_element(a),
                r.render_element(a)
            ));
        }
    }
    pass(format!("a + 5 or a - 5 certified for all {} elements", r.order()))
}

fn check_boolean_certificates(ctx: &Ctx<'_>) -> Result<Outcome> {
    let rep = ctx.report.expect("classify-scale check");
    if !rep.verdict("boolean") {
        return vacuous("ring is not boolean");
    }
    let r = ctx.ring;
    let weak = weak_certs(r)?;
    for a in 0..r.order() {
        let Some(c) = &weak[a as usize] else {
            return fail(format!("{} has no weak certificate", r.render_element(a)));
        };
        if c.idempotent != a {
            return fail(format!(
                "{}: certificate idempotent is {}, expected the element itself",
                r.render_element(a),
                r.render_element(c.idempotent)
            ));
        }
        if !structure::in_radical(r, r.sub_idx(a, c.idempotent))? {
            return fail(format!("{}: a - p is outside J", r.render_element(a)));
        }
        if !(c.both_signs || c.sign == Some(Sign::Minus)) {
            return fail(format!("{}: minus decomposition not recorded", r.render_element(a)));
        }
    }
    pass(format!("all {} elements certified with p = a", r.order()))
}

fn check_t2_corner(ctx: &Ctx<'_>) -> Result<Outcome> {
    let r = ctx.ring;
    let (_, base) = r.triangular_parts().expect("triangular ring");
    let base = base.clone();
    let t2w = ring_weakly(ctx);
    let base_weak = weak_certs(&base)?;
    let bw = base_weak.iter().all(|c| c.is_some());
    if t2w && !bw {
        let a = base_weak.iter().position(|c| c.is_none()).unwrap();
        return fail(format!(
            "T2 is weakly_j_quasipolar but base element {} is not certified",
            base.render_element(a as u64)
        ));
    }
    pass(format!("T2 weakly_j_quasipolar: {t2w}, base weakly_j_quasipolar: {bw}"))
}

pub fn write_csv<W: Write>(rows: &[CheckRow], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for row in rows {
        wtr.serialize(row).map_err(|e| RingError::Internal(format!("csv: {e}")))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[CheckRow], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)
        .map_err(|e| RingError::Internal(format!("json: {e}")))?;
    writeln!(w)?;
    Ok(())
}
