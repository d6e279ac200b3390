use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use gralift::io::{parse_rank_code, write_ideal, write_subspace_code, IdealHeader};
use gralift::lifting::LiftReport;
use gralift::rank_code::{rank_distribution, verify_delta_equals_omega, DeltaOmegaReport, RankCodeReport};
use gralift::ring::IdempotentCensus;
use gralift::subspace::gaussian_coefficient;
use gralift::verify::{run_verification, VerifyConfig};
use gralift::weights::{
    rank_weight_full_ring_average, rank_weight_minimal_ideal_average, Rational, WeightsReport,
};
use gralift::{
    gl_order, lift_code, Error, GlOrderQuery, Matrix, MatrixRing, RankMetricCode, Side, WeightFunction,
};
use serde::Serialize;

use crate::table::Table;
use crate::{Cli, Command, Format, BUDGET_ENV, DEFAULT_BUDGET, EXIT_BUDGET, EXIT_INPUT, EXIT_VIOLATION};

pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::TheoremViolation(_) => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        };
        Failure {
            message: e.to_string(),
            status,
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        status: EXIT_INPUT,
    }
}

type CmdResult = Result<Output, Failure>;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn budget() -> Result<u128, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| input_error(format!("{BUDGET_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// The ring M2(Fp), refused when its p^4 elements exceed the budget.
fn ring_within_budget(p: u64) -> Result<MatrixRing, Failure> {
    let ring = MatrixRing::over_prime(p)?;
    let budget = budget()?;
    if ring.order() as u128 > budget {
        return Err(Failure {
            message: format!(
                "enumeration budget exceeded: M2(F{p}) has {} elements but {BUDGET_ENV} allows {budget}",
                ring.order()
            ),
            status: EXIT_BUDGET,
        });
    }
    Ok(ring)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn run(cli: &Cli) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Idempotents { p } => idempotents(*p, fmt),
        Command::Ideal {
            p,
            side,
            entries,
            output,
        } => ideal(*p, *side, entries, output.as_deref(), fmt),
        Command::RankcodeInfo { file } => rankcode_info(file, fmt),
        Command::Lift { file, output } => lift(file, output.as_deref(), fmt),
        Command::Verify { p, seed, inject_fault } => {
            let cfg = VerifyConfig {
                seed: *seed,
                fault: *inject_fault,
                ..VerifyConfig::new(*p)
            };
            verify(cfg, fmt)
        }
        Command::Distribution { q } => distribution(*q, fmt),
        Command::Gaussian { n, k, q } => gaussian(*n, *k, *q, fmt),
        Command::GlOrder { q, n } => gl(*q, *n, fmt),
        Command::WeightsReport { p, side } => weights_report(*p, *side, fmt),
    }
}

#[derive(Serialize)]
struct IdealSummary {
    id: usize,
    side: Side,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
}

#[derive(Serialize)]
struct IdempotentRow {
    idempotent: Matrix,
    canonical: bool,
    left_ideal: usize,
    right_ideal: usize,
}

#[derive(Serialize)]
struct IdempotentsReport {
    census: IdempotentCensus,
    idempotents: Vec<IdempotentRow>,
    left_ideals: Vec<IdealSummary>,
    right_ideals: Vec<IdealSummary>,
}

fn idempotents(p: u64, fmt: Format) -> CmdResult {
    let ring = ring_within_budget(p)?;
    let census = ring.idempotent_census()?;
    let canonical = ring.canonical_idempotents();
    let mut groups: BTreeMap<Side, Vec<IdealSummary>> = BTreeMap::new();
    let mut rows = Vec::new();
    for a in ring.nontrivial_idempotents() {
        let mut ids = [0; 2];
        for (slot, side) in Side::BOTH.into_iter().enumerate() {
            let ideal = ring.principal_ideal(&a, side)?;
            let list = groups.entry(side).or_default();
            ids[slot] = match list.iter().position(|g| g.elements == ideal.elements) {
                Some(i) => {
                    list[i].generators.push(a.clone());
                    i
                }
                None => {
                    list.push(IdealSummary {
                        id: list.len(),
                        side,
                        generators: vec![a.clone()],
                        elements: ideal.elements,
                    });
                    list.len() - 1
                }
            };
        }
        rows.push(IdempotentRow {
            canonical: canonical.contains(&a),
            idempotent: a,
            left_ideal: ids[0],
            right_ideal: ids[1],
        });
    }
    let report = IdempotentsReport {
        census,
        idempotents: rows,
        left_ideals: groups.remove(&Side::Left).unwrap_or_default(),
        right_ideals: groups.remove(&Side::Right).unwrap_or_default(),
    };
    if fmt == Format::Json {
        return Ok(Output::ok(json(&report)));
    }
    let c = &report.census;
    let mut out = format!(
        "M2(F{p}): {} nontrivial idempotents ({} in the closed-form list, all present: {})\n\
         distinct left ideals: {}, distinct right ideals: {}\n\n",
        c.raw_count, c.canonical_count, c.canonical_present, c.distinct_left_ideals, c.distinct_right_ideals
    );
    let mut t = Table::new(["idempotent", "closed form", "left ideal", "right ideal"]);
    for r in &report.idempotents {
        t.row([
            r.idempotent.to_string(),
            if r.canonical { "yes" } else { "" }.to_string(),
            format!("L{}", r.left_ideal),
            format!("R{}", r.right_ideal),
        ]);
    }
    out.push_str(&t.render());
    for (tag, list) in [("L", &report.left_ideals), ("R", &report.right_ideals)] {
        out.push('\n');
        let mut t = Table::new(["ideal", "size", "elements"]);
        for g in list {
            let elems: Vec<String> = g.elements.iter().map(Matrix::to_string).collect();
            t.row([format!("{tag}{}", g.id), g.elements.len().to_string(), elems.join(" ")]);
        }
        out.push_str(&t.render());
    }
    Ok(Output::ok(out))
}

#[derive(Serialize)]
struct IdealReport {
    generator: Matrix,
    side: Side,
    code: RankCodeReport,
    elements: Vec<Matrix>,
    output: Option<String>,
}

fn ideal(p: u64, side: Side, entries: &[i64], output: Option<&Path>, fmt: Format) -> CmdResult {
    let ring = ring_within_budget(p)?;
    let generator = Matrix::from_ints(2, 2, ring.field(), entries)?;
    let ideal = ring.principal_ideal(&generator, side)?;
    let file = write_ideal(&ideal);
    let code = RankMetricCode::from_matrices(ideal.elements.clone())?;
    if let Some(path) = output {
        write(path, &file)?;
    }
    let report = IdealReport {
        generator,
        side,
        code: code.report(),
        elements: ideal.elements,
        output: output.map(|p| p.display().to_string()),
    };
    match (fmt, output) {
        (Format::Json, _) => Ok(Output::ok(json(&report))),
        (Format::Table, None) => Ok(Output::ok(file)),
        (Format::Table, Some(path)) => Ok(Output::ok(format!(
            "wrote {} elements of the {} ideal of {} to {}\n",
            report.elements.len(),
            side,
            report.generator,
            path.display()
        ))),
    }
}

#[derive(Serialize)]
struct RankCodeInfo {
    ideal: Option<IdealHeaderReport>,
    code: RankCodeReport,
    delta_equals_omega: Option<DeltaOmegaReport>,
}

#[derive(Serialize)]
struct IdealHeaderReport {
    side: Side,
    generator: Vec<u32>,
}

impl From<IdealHeader> for IdealHeaderReport {
    fn from(h: IdealHeader) -> Self {
        Self {
            side: h.side,
            generator: h.generator,
        }
    }
}

fn rankcode_info(path: &Path, fmt: Format) -> CmdResult {
    let parsed = parse_rank_code(&read(path)?)?;
    let check = verify_delta_equals_omega(&parsed.code);
    let status = match &check {
        Some(c) if !c.equal => EXIT_VIOLATION,
        _ => 0,
    };
    let info = RankCodeInfo {
        ideal: parsed.ideal.map(Into::into),
        code: parsed.code.report(),
        delta_equals_omega: check,
    };
    if fmt == Format::Json {
        return Ok(Output { text: json(&info), status });
    }
    let r = &info.code;
    let mut t = Table::new(Vec::<String>::new());
    if let Some(h) = &info.ideal {
        let g: Vec<String> = h.generator.iter().map(u32::to_string).collect();
        t.row(["ideal".to_string(), format!("{} ideal of ({})", h.side, g.join(","))]);
    }
    t.row(["shape".to_string(), format!("{}x{} over F{}", r.k, r.l, r.p)]);
    t.row(["size".to_string(), r.size.to_string()]);
    t.row(["linear".to_string(), r.linear.to_string()]);
    t.row(["rho".to_string(), opt(r.rho)]);
    t.row(["delta".to_string(), opt(r.delta)]);
    t.row(["omega".to_string(), opt(r.omega)]);
    if let Some([a, b]) = &r.witnesses.delta_pair {
        t.row(["delta witness".to_string(), format!("{a} {b}")]);
    }
    if let Some(w) = &r.witnesses.omega_element {
        t.row(["omega witness".to_string(), w.to_string()]);
    }
    let verdict = match &info.delta_equals_omega {
        Some(c) if c.equal => "OK".to_string(),
        Some(_) => "VIOLATED".to_string(),
        None => "not applicable".to_string(),
    };
    t.row(["delta = omega".to_string(), verdict]);
    Ok(Output {
        text: t.render(),
        status,
    })
}

#[derive(Serialize)]
struct LiftOutput {
    #[serde(flatten)]
    report: LiftReport,
    distance_histogram: BTreeMap<usize, usize>,
    output: Option<String>,
}

fn lift(path: &Path, output: Option<&Path>, fmt: Format) -> CmdResult {
    let parsed = parse_rank_code(&read(path)?)?;
    let lifted = lift_code(&parsed.code)?;
    let file = write_subspace_code(&lifted.codewords);
    if let Some(out) = output {
        write(out, &file)?;
    }
    let result = LiftOutput {
        report: lifted.report(),
        distance_histogram: lifted.codewords.distance_histogram()?,
        output: output.map(|p| p.display().to_string()),
    };
    if fmt == Format::Json {
        return Ok(Output::ok(json(&result)));
    }
    let r = &result.report;
    let mut t = Table::new(Vec::<String>::new());
    t.row([
        "source".to_string(),
        format!("{}x{}, rho = {}, delta = {}", r.source.k, r.source.l, opt(r.source.rho), opt(r.source.delta)),
    ]);
    t.row(["lifted".to_string(), r.lifted.to_string()]);
    t.row(["predicted".to_string(), opt(r.claimed)]);
    let verdict = match r.theorem_ok {
        Some(true) => "OK",
        Some(false) => "VIOLATED",
        None => "no prediction (non-linear source)",
    };
    t.row(["parameters".to_string(), verdict.to_string()]);
    let mut out = t.render();
    out.push('\n');
    let mut h = Table::new(["distance", "pairs"]);
    for (d, n) in &result.distance_histogram {
        h.row([d, n]);
    }
    out.push_str(&h.render());
    match output {
        Some(p) => out.push_str(&format!("\nwrote {}\n", p.display())),
        None => {
            out.push('\n');
            out.push_str(&file);
        }
    }
    Ok(Output::ok(out))
}

fn verify(cfg: VerifyConfig, fmt: Format) -> CmdResult {
    ring_within_budget(cfg.p)?;
    let report = run_verification(&cfg)?;
    let status = if report.all_passed() { 0 } else { EXIT_VIOLATION };
    if fmt == Format::Json {
        return Ok(Output {
            text: json(&report),
            status,
        });
    }
    let mut t = Table::new(["result", "check", "detail"]);
    for c in &report.checks {
        t.row([if c.passed { "PASS" } else { "FAIL" }, c.name.as_str(), c.detail.as_str()]);
    }
    let mut out = format!("verifying M2(F{}) with seed {}\n", report.p, report.seed);
    if let Some(f) = &report.fault {
        out.push_str(&format!("injected fault: {f}\n"));
    }
    out.push('\n');
    out.push_str(&t.render());
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    out.push_str(&if failed == 0 {
        format!("\nall {} checks passed\n", report.checks.len())
    } else {
        format!("\n{failed} of {} checks FAILED\n", report.checks.len())
    });
    Ok(Output { text: out, status })
}

fn distribution(q: u64, fmt: Format) -> CmdResult {
    let d = rank_distribution(GlOrderQuery::new(q, 2)?)?;
    if fmt == Format::Json {
        return Ok(Output::ok(json(&d)));
    }
    let mut t = Table::new(["A0", "A1", "A2"]);
    t.row(d.counts());
    Ok(Output::ok(t.render()))
}

#[derive(Serialize)]
struct GaussianReport {
    n: u32,
    k: u32,
    q: u64,
    value: u128,
}

fn gaussian(n: u32, k: u32, q: u64, fmt: Format) -> CmdResult {
    let value = gaussian_coefficient(n, k, q)?;
    if fmt == Format::Json {
        return Ok(Output::ok(json(&GaussianReport { n, k, q, value })));
    }
    Ok(Output::ok(format!("{value}\n")))
}

#[derive(Serialize)]
struct GlReport {
    n: u32,
    q: u64,
    order: u128,
}

fn gl(q: u64, n: u32, fmt: Format) -> CmdResult {
    let order = gl_order(GlOrderQuery::new(q, n)?)?;
    if fmt == Format::Json {
        return Ok(Output::ok(json(&GlReport { n, q, order })));
    }
    Ok(Output::ok(format!("{order}\n")))
}

#[derive(Serialize)]
struct RationalReport {
    num: i64,
    den: i64,
}

impl From<Rational> for RationalReport {
    fn from(r: Rational) -> Self {
        Self {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Serialize)]
struct WeightsOutput {
    p: u64,
    gamma_full_ring: RationalReport,
    gamma_minimal_ideal: RationalReport,
    reports: Vec<WeightsReport<Matrix>>,
}

fn weights_report(p: u64, side: Option<Side>, fmt: Format) -> CmdResult {
    let ring = ring_within_budget(p)?;
    let w = WeightFunction::rank_weight(ring)?;
    let sides: Vec<Side> = side.map_or_else(|| Side::BOTH.to_vec(), |s| vec![s]);
    let out = WeightsOutput {
        p,
        gamma_full_ring: rank_weight_full_ring_average(p).into(),
        gamma_minimal_ideal: rank_weight_minimal_ideal_average(p).into(),
        reports: sides.iter().map(|&s| w.report(s)).collect(),
    };
    if fmt == Format::Json {
        return Ok(Output::ok(json(&out)));
    }
    let mut text = format!(
        "rank weight on M2(F{p})\naverage over the whole ring: {}\naverage over a minimal ideal: {}\n",
        rank_weight_full_ring_average(p),
        rank_weight_minimal_ideal_average(p)
    );
    for r in &out.reports {
        text.push_str(&format!(
            "\n{} cyclic submodules: E = {}, H = {}, homogeneous = {}\n",
            r.side, r.e, r.h, r.homogeneous
        ));
        // group generators by average value
        let mut by_gamma: BTreeMap<Rational, (usize, &Matrix)> = BTreeMap::new();
        for g in &r.gamma_values {
            by_gamma
                .entry(Rational::new(g.gamma_num, g.gamma_den))
                .or_insert((0, &g.generator))
                .0 += 1;
        }
        let mut t = Table::new(["gamma", "generators", "example"]);
        for (gamma, (count, example)) in &by_gamma {
            t.row([gamma.to_string(), count.to_string(), example.to_string()]);
        }
        text.push_str(&t.render());
        if let Some([a, b]) = &r.witnesses.egalitarian {
            text.push_str(&format!("E witnesses: {a} and {b}\n"));
        }
        if let Some([a, b]) = &r.witnesses.homogeneity {
            text.push_str(&format!("H witnesses: {a} and {b}\n"));
        }
    }
    Ok(Output::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> CmdResult {
        let cli = Cli::try_parse_from(std::iter::once("gralift").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn ideal_file_round_trips() {
        let out = run_args(&["ideal", "3", "left", "0", "2", "0", "1"]).unwrap();
        let ring = MatrixRing::over_prime(3).unwrap();
        let g = Matrix::from_ints(2, 2, ring.field(), &[0, 2, 0, 1]).unwrap();
        let expected = RankMetricCode::from_matrices(ring.principal_ideal(&g, Side::Left).unwrap().elements).unwrap();
        assert_eq!(parse_rank_code(&out.text).unwrap().code, expected);
    }

    #[test]
    fn small_commands() {
        assert_eq!(run_args(&["gaussian", "4", "2", "2"]).unwrap().text, "35\n");
        assert_eq!(run_args(&["gl-order", "3"]).unwrap().text, "48\n");
        assert!(run_args(&["distribution", "3"]).unwrap().text.ends_with("1   32  48\n"));
    }

    #[test]
    fn errors_map_to_statuses() {
        assert_eq!(run_args(&["gaussian", "4", "2", "6"]).err().unwrap().status, EXIT_INPUT);
        assert_eq!(run_args(&["idempotents", "11"]).err().unwrap().status, EXIT_BUDGET);
    }
}
