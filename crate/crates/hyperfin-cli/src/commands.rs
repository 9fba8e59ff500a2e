//! One function per subcommand. Artifact output (graph text, cover lines)
//! goes to stdout or `--out` untouched so it can be piped back in;
//! diagnostics and statistics go to the JSON report.

use std::collections::BTreeMap;

use serde::Serialize;

use hyperfin::coloring::{
    ascending_order, color_power_graph, find_separation_violation, PowerGraphSpec,
};
use hyperfin::ellentuck::{
    fusion_limit, fusion_pipeline, kn_bookkeeping, verify_pipeline, InvolutionFamily,
    PipelineOutcome, PipelineRun, INVFAM_FORMAT,
};
use hyperfin::generate::random_graph_sequence;
use hyperfin::graph::{GraphSequence, VertexId, GRAPHSEQ_FORMAT};
use hyperfin::hierarchy::{
    build_hierarchy, component_diameters, find_unique_cover_point_violation, verify_capture,
    CaptureReport, Hierarchy, StageCert,
};
use hyperfin::reduction::{label_sequences, verify_reduction, ReductionError};
use hyperfin::schedule::{
    build_covers_full_cycle, build_covers_sweep, coverage, CoverProvenance, CoverSequence,
    FullCycleParams, GrowthFunction, RegionSweepPlan, COVERS_FORMAT,
};

use crate::args::{
    BuildArgs, ColorArgs, CoversArgs, EllentuckArgs, GenArgs, Globals, HierarchyArgs, ReduceArgs,
    VerifyArgs,
};
use crate::error::CliError;
use crate::inputs::{
    default_start_offset, parse_growth, parse_order, parse_regions, read_file, write_file,
    GROWTH_FORMAT, ORDER_FORMAT, REGIONS_FORMAT,
};
use crate::report::{write_csv, write_report, CsvRow, Report, REPORT_FORMAT};

type Formats = BTreeMap<&'static str, &'static str>;

/// `prefix` followed by one space-separated id per element.
fn id_line(prefix: &str, ids: &[usize]) -> String {
    let mut line = String::from(prefix);
    for v in ids {
        line.push(' ');
        line.push_str(&v.to_string());
    }
    line
}

fn forbid_csv(globals: &Globals, subcommand: &str) -> Result<(), CliError> {
    if globals.csv.is_some() {
        return Err(CliError::invariant(format!(
            "cli: --csv is only produced by `hierarchy` and `verify`, not `{subcommand}`"
        )));
    }
    Ok(())
}

fn emit_report<C: Serialize, R: Serialize>(
    globals: &Globals,
    subcommand: &'static str,
    formats: Formats,
    config: C,
    result: R,
) -> Result<(), CliError> {
    if let Some(path) = &globals.report {
        write_report(
            path,
            &Report {
                report_format: REPORT_FORMAT,
                subcommand,
                formats,
                config,
                result,
            },
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// gen

#[derive(Serialize)]
struct GenConfig<'a> {
    vertices: usize,
    degree_bound: usize,
    stages: usize,
    edges: usize,
    seed: u64,
    out: Option<&'a str>,
    report: Option<&'a str>,
}

#[derive(Serialize)]
struct GenResult {
    edge_count: usize,
    max_birth: Option<usize>,
    valid: bool,
}

pub fn gen(args: &GenArgs, globals: &Globals) -> Result<(), CliError> {
    forbid_csv(globals, "gen")?;
    let degree_bound = args.degree_bound as usize;
    let stages = args.stages as usize;
    let edges = args.edges.unwrap_or(args.vertices * degree_bound / 4);
    let g = random_graph_sequence(globals.seed, args.vertices, degree_bound, stages, edges)?;
    let text = g.to_text();
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    emit_report(
        globals,
        "gen",
        Formats::from([("graphseq", GRAPHSEQ_FORMAT)]),
        GenConfig {
            vertices: args.vertices,
            degree_bound,
            stages,
            edges,
            seed: globals.seed,
            out: args.out.as_deref(),
            report: globals.report.as_deref(),
        },
        GenResult {
            edge_count: g.edge_count(),
            max_birth: g.max_birth(),
            valid: g.validate().is_valid(),
        },
    )
}

// ---------------------------------------------------------------------------
// color

#[derive(Serialize)]
struct ColorConfig<'a> {
    graph: &'a str,
    stage: usize,
    radius: usize,
    order: Option<&'a str>,
    seed: u64,
    report: Option<&'a str>,
}

#[derive(Serialize)]
struct ColorResult {
    num_colors: usize,
    classes: Vec<Vec<VertexId>>,
}

pub fn color(args: &ColorArgs, globals: &Globals) -> Result<(), CliError> {
    forbid_csv(globals, "color")?;
    let graph_text = read_file(&args.graph)?;
    let order_text = args.order.as_deref().map(read_file).transpose()?;
    let g = GraphSequence::parse_str(&graph_text)?;
    let order = match &order_text {
        Some(text) => parse_order(text).map_err(|e| CliError::input(format!("order: {e}")))?,
        None => ascending_order(g.universe_size()),
    };
    let stage = args.stage.unwrap_or_else(|| g.horizon());
    let spec = PowerGraphSpec {
        stage,
        radius: args.radius,
    };
    let coloring = color_power_graph(&g, spec, &order)?;
    let classes = coloring.classes();
    println!("colors {}", coloring.num_colors());
    for (i, class) in classes.iter().enumerate() {
        println!("{}", id_line(&format!("class {i}:"), class));
    }
    let mut formats = Formats::from([("graphseq", GRAPHSEQ_FORMAT)]);
    if order_text.is_some() {
        formats.insert("order", ORDER_FORMAT);
    }
    emit_report(
        globals,
        "color",
        formats,
        ColorConfig {
            graph: &args.graph,
            stage,
            radius: args.radius,
            order: args.order.as_deref(),
            seed: globals.seed,
            report: globals.report.as_deref(),
        },
        ColorResult {
            num_colors: coloring.num_colors(),
            classes,
        },
    )
}

// ---------------------------------------------------------------------------
// covers

#[derive(Serialize)]
struct CoversConfig<'a> {
    graph: &'a str,
    mode: &'static str,
    sweeps: Option<usize>,
    start_offset: Option<usize>,
    regions: Option<&'a str>,
    stages: Option<usize>,
    growth: Option<&'a str>,
    f0: Option<usize>,
    m: usize,
    seed: u64,
    out: Option<&'a str>,
    report: Option<&'a str>,
}

#[derive(Serialize)]
struct CoversResult<'a> {
    num_covers: usize,
    counts: &'a [usize],
    min_count: Option<usize>,
    limsup: Vec<VertexId>,
    provenance: &'a [CoverProvenance],
}

pub fn covers(args: &CoversArgs, globals: &Globals) -> Result<(), CliError> {
    forbid_csv(globals, "covers")?;
    let graph_text = read_file(&args.graph)?;
    let growth_text = args.growth.growth.as_deref().map(read_file).transpose()?;
    let regions_text = args.regions.as_deref().map(read_file).transpose()?;

    let g = GraphSequence::parse_str(&graph_text)?;
    let f = match &growth_text {
        Some(text) => {
            let f = parse_growth(text).map_err(|e| CliError::input(format!("growth: {e}")))?;
            f.validate()?;
            f
        }
        None => GrowthFunction::canonical(g.horizon(), args.growth.f0),
    };

    let (covers, mode, resolved_offset, resolved_stages);
    match (args.sweeps, &regions_text) {
        (Some(sweeps), None) => {
            let start_offset = args.start_offset.unwrap_or_else(|| default_start_offset(&g));
            covers = build_covers_full_cycle(
                &g,
                &f,
                FullCycleParams {
                    sweeps,
                    start_offset,
                },
            )?;
            mode = "full_cycle";
            resolved_offset = Some(start_offset);
            resolved_stages = None;
        }
        (None, Some(text)) => {
            let regions =
                parse_regions(text).map_err(|e| CliError::input(format!("regions: {e}")))?;
            let plan = RegionSweepPlan::cyclic(regions);
            let stages = args.stages.unwrap_or(g.horizon() + 1);
            covers = build_covers_sweep(&g, &f, &plan, stages)?;
            mode = "region_sweep";
            resolved_offset = None;
            resolved_stages = Some(stages);
        }
        _ => unreachable!("clap enforces exactly one of --sweeps/--regions"),
    }

    let text = covers.to_text();
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }

    let cov = coverage(&covers);
    let mut formats = Formats::from([("graphseq", GRAPHSEQ_FORMAT), ("covers", COVERS_FORMAT)]);
    if growth_text.is_some() {
        formats.insert("growth", GROWTH_FORMAT);
    }
    if regions_text.is_some() {
        formats.insert("regions", REGIONS_FORMAT);
    }
    emit_report(
        globals,
        "covers",
        formats,
        CoversConfig {
            graph: &args.graph,
            mode,
            sweeps: args.sweeps,
            start_offset: resolved_offset,
            regions: args.regions.as_deref(),
            stages: resolved_stages,
            growth: args.growth.growth.as_deref(),
            f0: growth_text.is_none().then_some(args.growth.f0),
            m: args.m,
            seed: globals.seed,
            out: args.out.as_deref(),
            report: globals.report.as_deref(),
        },
        CoversResult {
            num_covers: cov.num_covers,
            counts: &cov.counts,
            min_count: cov.min_count(),
            limsup: cov.limsup_set(args.m),
            provenance: covers.provenance(),
        },
    )
}

// ---------------------------------------------------------------------------
// hierarchy / reduce / verify share one loading path

#[derive(Serialize)]
struct BuildConfig<'a> {
    graph: &'a str,
    covers: Option<&'a str>,
    sweeps: Option<usize>,
    start_offset: Option<usize>,
    growth: Option<&'a str>,
    f0: Option<usize>,
    m: usize,
    seed: u64,
    report: Option<&'a str>,
    csv: Option<&'a str>,
}

struct Built<'a> {
    g: GraphSequence,
    f: GrowthFunction,
    covers: CoverSequence,
    h: Hierarchy,
    formats: Formats,
    config: BuildConfig<'a>,
}

/// Reads every referenced file, parses all inputs, then builds the checked
/// hierarchy. Nothing is computed before all inputs have parsed.
fn load_and_build<'a>(build: &'a BuildArgs, globals: &'a Globals) -> Result<Built<'a>, CliError> {
    let graph_text = read_file(&build.graph)?;
    let growth_text = build.growth.growth.as_deref().map(read_file).transpose()?;
    let covers_text = build.covers.as_deref().map(read_file).transpose()?;

    let g = GraphSequence::parse_str(&graph_text)?;
    let f = match &growth_text {
        Some(text) => {
            let f = parse_growth(text).map_err(|e| CliError::input(format!("growth: {e}")))?;
            f.validate()?;
            f
        }
        None => GrowthFunction::canonical(g.horizon(), build.growth.f0),
    };
    let (covers, resolved_offset) = match (&covers_text, build.sweeps) {
        (Some(text), None) => (CoverSequence::parse_str(text, g.universe_size())?, None),
        (None, Some(sweeps)) => {
            let start_offset = build
                .start_offset
                .unwrap_or_else(|| default_start_offset(&g));
            let covers = build_covers_full_cycle(
                &g,
                &f,
                FullCycleParams {
                    sweeps,
                    start_offset,
                },
            )?;
            (covers, Some(start_offset))
        }
        _ => unreachable!("clap enforces exactly one of --covers/--sweeps"),
    };
    let h = build_hierarchy(&g, &f, &covers, build.m)?;

    let mut formats = Formats::from([("graphseq", GRAPHSEQ_FORMAT)]);
    if covers_text.is_some() {
        formats.insert("covers", COVERS_FORMAT);
    }
    if growth_text.is_some() {
        formats.insert("growth", GROWTH_FORMAT);
    }
    let config = BuildConfig {
        graph: &build.graph,
        covers: build.covers.as_deref(),
        sweeps: build.sweeps,
        start_offset: resolved_offset,
        growth: build.growth.growth.as_deref(),
        f0: growth_text.is_none().then_some(build.growth.f0),
        m: build.m,
        seed: globals.seed,
        report: globals.report.as_deref(),
        csv: globals.csv.as_deref(),
    };
    Ok(Built {
        g,
        f,
        covers,
        h,
        formats,
        config,
    })
}

/// Per-stage CSV rows. Captured counts are cumulative over witness stages;
/// uncaptured counts base-set edges born by the stage but not yet witnessed.
fn csv_rows(h: &Hierarchy, capture: &CaptureReport) -> Vec<CsvRow> {
    let stages = h.stage_certs().len();
    let mut captured_at = vec![0usize; stages];
    let mut born_at = vec![0usize; stages];
    for e in &capture.edges {
        if let Some(w) = e.witness {
            captured_at[w] += 1;
        }
        if e.birth < stages {
            born_at[e.birth] += 1;
        }
    }
    let mut rows = Vec::with_capacity(stages);
    let mut captured = 0usize;
    let mut born = 0usize;
    for cert in h.stage_certs() {
        captured += captured_at[cert.stage];
        born += born_at[cert.stage];
        rows.push(CsvRow {
            stage: cert.stage,
            f: cert.f_value,
            components: cert.components,
            max_diameter: cert.diameter_upper,
            captured,
            uncaptured: born - captured,
        });
    }
    rows
}

#[derive(Serialize)]
struct CaptureSummary {
    total_base_edges: usize,
    captured: usize,
    horizon_uncaptured: usize,
    connectivity_consistent: bool,
}

impl CaptureSummary {
    fn new(capture: &CaptureReport) -> Self {
        CaptureSummary {
            total_base_edges: capture.edges.len(),
            captured: capture.captured,
            horizon_uncaptured: capture.horizon_uncaptured,
            connectivity_consistent: capture.connectivity_consistent,
        }
    }
}

#[derive(Serialize)]
struct HierarchyResult<'a> {
    universe_size: usize,
    base_size: usize,
    base_set: &'a [VertexId],
    threshold_m: usize,
    last_stage: usize,
    stages: &'a [StageCert],
    capture: CaptureSummary,
    unique_cover_point: bool,
}

pub fn hierarchy(args: &HierarchyArgs, globals: &Globals) -> Result<(), CliError> {
    let built = load_and_build(&args.build, globals)?;
    let h = &built.h;
    let capture = verify_capture(&built.g, h);
    let unique = find_unique_cover_point_violation(h, &built.covers).is_none();

    println!(
        "universe {} vertices, base {} vertices, m = {}, stages 0..={}",
        h.universe_size(),
        h.base_set().len(),
        h.threshold_m(),
        h.last_stage()
    );
    for cert in h.stage_certs() {
        let exact = match cert.max_diameter {
            Some(d) => format!(" exact={d}"),
            None => String::new(),
        };
        println!(
            "stage {}: f={} components={} max_component={} new_edges={} diameter<={}{} claim={}",
            cert.stage,
            cert.f_value,
            cert.components,
            cert.max_component_size,
            cert.new_edges,
            cert.diameter_upper,
            exact,
            if cert.claim_ok { "ok" } else { "VIOLATED" }
        );
    }
    println!(
        "capture: {}/{} base edges captured, {} beyond horizon, connectivity {}",
        capture.captured,
        capture.edges.len(),
        capture.horizon_uncaptured,
        if capture.connectivity_consistent {
            "consistent"
        } else {
            "INCONSISTENT"
        }
    );
    println!(
        "unique cover point: {}",
        if unique { "ok" } else { "VIOLATED" }
    );

    if let Some(path) = &globals.csv {
        write_csv(path, &csv_rows(h, &capture))?;
    }
    emit_report(
        globals,
        "hierarchy",
        built.formats.clone(),
        &built.config,
        HierarchyResult {
            universe_size: h.universe_size(),
            base_size: h.base_set().len(),
            base_set: h.base_set(),
            threshold_m: h.threshold_m(),
            last_stage: h.last_stage(),
            stages: h.stage_certs(),
            capture: CaptureSummary::new(&capture),
            unique_cover_point: unique,
        },
    )?;

    if let Some(cert) = h.stage_certs().iter().find(|c| !c.claim_ok) {
        return Err(CliError::invariant(format!(
            "hierarchy: stage {} has diameter bound {} above f = {}",
            cert.stage, cert.diameter_upper, cert.f_value
        )));
    }
    if !capture.connectivity_consistent {
        return Err(CliError::invariant(
            "hierarchy: captured edges connect differently from the final stage",
        ));
    }
    if !unique {
        return Err(CliError::invariant(
            "hierarchy: some cover holds two points of one component",
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// reduce

#[derive(Serialize)]
struct CodeEntry {
    vertex: VertexId,
    bits: String,
}

#[derive(Serialize)]
struct ReduceResult {
    base_size: usize,
    stages: usize,
    block_width: usize,
    codes: Vec<CodeEntry>,
}

pub fn reduce(args: &ReduceArgs, globals: &Globals) -> Result<(), CliError> {
    forbid_csv(globals, "reduce")?;
    let built = load_and_build(&args.build, globals)?;
    let code = label_sequences(&built.h);
    let mut codes = Vec::with_capacity(code.vertices().len());
    for &v in code.vertices() {
        let bits = code.encode(v).expect("every base vertex has labels");
        println!(
            "code {v}:{}{}",
            if bits.is_empty() { "" } else { " " },
            bits
        );
        codes.push(CodeEntry { vertex: v, bits });
    }
    emit_report(
        globals,
        "reduce",
        built.formats.clone(),
        &built.config,
        ReduceResult {
            base_size: code.vertices().len(),
            stages: code.stages(),
            block_width: code.block_width(),
            codes,
        },
    )
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize, PartialEq, Eq, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum CheckStatus {
    Ok,
    Fail,
    Skipped,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: CheckStatus,
    details: String,
}

impl Check {
    fn of(name: &'static str, ok: bool, details: String) -> Self {
        Check {
            name,
            status: if ok { CheckStatus::Ok } else { CheckStatus::Fail },
            details,
        }
    }
}

#[derive(Serialize)]
struct VerifyResult {
    checks: Vec<Check>,
    verdict: &'static str,
}

pub fn verify(args: &VerifyArgs, globals: &Globals) -> Result<(), CliError> {
    let built = load_and_build(&args.build, globals)?;
    let (g, f, covers, h) = (&built.g, &built.f, &built.covers, &built.h);
    let mut checks: Vec<Check> = Vec::new();

    let validation = g.validate();
    checks.push(Check::of(
        "graph_valid",
        validation.is_valid(),
        if validation.is_valid() {
            format!(
                "{} vertices, {} edges, degree bound {}",
                g.universe_size(),
                g.edge_count(),
                g.degree_bound()
            )
        } else {
            format!("{} structural violations", validation.violations.len())
        },
    ));

    // Re-measure every stage from scratch and compare with the certificates.
    let mut claims_detail = format!(
        "{} stages re-measured, every diameter within f",
        h.stage_certs().len()
    );
    let mut claims_ok = true;
    for cert in h.stage_certs() {
        let comps = component_diameters(h, cert.stage);
        let measured_max = comps.iter().map(|c| c.diameter).max().unwrap_or(0);
        let measured_largest = comps.iter().map(|c| c.size).max().unwrap_or(0);
        if comps.len() != cert.components
            || measured_largest != cert.max_component_size
            || measured_max > cert.diameter_upper
            || cert.max_diameter.is_some_and(|d| d != measured_max)
        {
            claims_ok = false;
            claims_detail = format!("stage {}: certificate disagrees with re-measurement", cert.stage);
            break;
        }
        if measured_max > cert.f_value || !cert.claim_ok {
            claims_ok = false;
            claims_detail = format!(
                "stage {}: measured diameter {} exceeds f = {}",
                cert.stage, measured_max, cert.f_value
            );
            break;
        }
    }
    checks.push(Check::of("stage_claims", claims_ok, claims_detail));

    let mut sep_ok = true;
    let mut sep_detail = format!("{} covers separated at their stages", covers.len());
    for n in 0..covers.len() {
        let k = f
            .get(n)
            .ok_or_else(|| CliError::invariant("schedule: growth shorter than the covers"))?;
        if let Some((u, v)) = find_separation_violation(g, n, k, covers.cover(n))? {
            sep_ok = false;
            sep_detail = format!("stage {n}: cover points {u} and {v} within distance {k}");
            break;
        }
    }
    checks.push(Check::of("separation", sep_ok, sep_detail));

    let capture = verify_capture(g, h);
    let capture_ok = capture.connectivity_consistent
        && (!args.require_capture || capture.horizon_uncaptured == 0);
    checks.push(Check::of(
        "capture",
        capture_ok,
        format!(
            "{}/{} base edges captured, {} beyond horizon, connectivity {}",
            capture.captured,
            capture.edges.len(),
            capture.horizon_uncaptured,
            if capture.connectivity_consistent {
                "consistent"
            } else {
                "inconsistent"
            }
        ),
    ));

    let unique_violation = find_unique_cover_point_violation(h, covers);
    checks.push(Check::of(
        "unique_cover_point",
        unique_violation.is_none(),
        match &unique_violation {
            None => "every cover meets each component at most once".to_string(),
            Some(v) => format!(
                "stage {}: cover points {} and {} share a component",
                v.stage, v.first, v.second
            ),
        },
    ));

    match verify_reduction(g, h) {
        Ok(r) => checks.push(Check::of(
            "reduction",
            r.consistent,
            match r.first_disagreement {
                None => format!(
                    "{} pairs checked, {} related, all three routes agree",
                    r.pairs, r.related_pairs
                ),
                Some((u, v)) => format!("routes disagree on pair ({u}, {v})"),
            },
        )),
        Err(ReductionError::VerificationTooLarge { vertices, limit }) => checks.push(Check {
            name: "reduction",
            status: CheckStatus::Skipped,
            details: format!("base set {vertices} exceeds the pairwise limit {limit}"),
        }),
        Err(e) => return Err(e.into()),
    }

    for c in &checks {
        let tag = match c.status {
            CheckStatus::Ok => "ok",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        println!("{tag} {}: {}", c.name, c.details);
    }
    let failed = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .count();
    let verdict = if failed == 0 { "ok" } else { "FAIL" };
    println!("verdict: {verdict}");

    if let Some(path) = &globals.csv {
        write_csv(path, &csv_rows(h, &capture))?;
    }
    emit_report(
        globals,
        "verify",
        built.formats.clone(),
        &built.config,
        VerifyResult { checks, verdict },
    )?;

    if failed > 0 {
        return Err(CliError::invariant(format!(
            "verify: {failed} check(s) failed"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// ellentuck

#[derive(Serialize)]
struct EllentuckConfig<'a> {
    family: &'a str,
    target: usize,
    ground: usize,
    depth: usize,
    involutions: usize,
    seed: u64,
    report: Option<&'a str>,
}

#[derive(Serialize)]
struct EllentuckResult<'a> {
    run: &'a PipelineRun,
    verified: bool,
    limit: Option<Vec<usize>>,
    frozen_counts: &'a [usize],
}

pub fn ellentuck(args: &EllentuckArgs, globals: &Globals) -> Result<(), CliError> {
    forbid_csv(globals, "ellentuck")?;
    let fam = InvolutionFamily::parse_str(&read_file(&args.family)?)?;
    let run = fusion_pipeline(&fam, args.target)?;

    for state in &run.trace {
        println!(
            "{}",
            id_line(
                &format!(
                    "stage {}: reservoir {} elements, frozen",
                    state.stage,
                    state.reservoir.len()
                ),
                &state.frozen
            )
        );
    }
    match &run.outcome {
        PipelineOutcome::Found { final_set } => println!("{}", id_line("FOUND:", final_set)),
        PipelineOutcome::NotFound { stage } => println!("NOT-FOUND at stage {stage}"),
    }

    let verified = verify_pipeline(&fam, &run);
    println!("verified: {verified}");
    let limit = match &run.outcome {
        PipelineOutcome::Found { .. } => Some(fusion_limit(&run.trace)?),
        PipelineOutcome::NotFound { .. } => None,
    };
    let bookkeeping = kn_bookkeeping(&run.trace);

    emit_report(
        globals,
        "ellentuck",
        Formats::from([("invfam", INVFAM_FORMAT)]),
        EllentuckConfig {
            family: &args.family,
            target: args.target,
            ground: fam.ground_size(),
            depth: fam.depth(),
            involutions: fam.len(),
            seed: globals.seed,
            report: globals.report.as_deref(),
        },
        EllentuckResult {
            run: &run,
            verified,
            limit,
            frozen_counts: &bookkeeping.counts,
        },
    )?;

    if !verified {
        return Err(CliError::invariant(
            "ellentuck: pipeline trace failed re-verification",
        ));
    }
    Ok(())
}
