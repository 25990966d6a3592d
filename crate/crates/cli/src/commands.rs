use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use parterre::census::{enumerate_diagrams, run_census, CensusOptions, CensusReport, CensusRow};
use parterre::curves::{curve_stats, enumerate_closed_curves, enumerate_long_curves};
use parterre::gauss::enumerate_words;
use parterre::invariants::{double_cover_homology, identify, Invariants};
use parterre::templates::{apply_filters, raw_templates, Filter, Verdict};
use parterre::{DtCode, KnotTable, PlanarDiagramCode};

use crate::output::{emit, Format, Rows};
use crate::{
    BuildTableArgs, CensusArgs, Cli, Command, CurvesArgs, EnumerateArgs, GaussArgs, IdentifyArgs, ReportArgs,
    TemplatesArgs,
};

pub const EXIT_UNIDENTIFIED: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Gauss(a) => gauss(a, cli.format, &mut out),
        Command::Curves(a) => curves(a, if a.json { Format::Json } else { cli.format }, &mut out),
        Command::Templates(a) => templates(a, cli.format, &mut out),
        Command::Enumerate(a) => enumerate(a, cli, &mut out),
        Command::Identify(a) => identify_cmd(a, cli.format, &mut out),
        Command::Census(a) => census(a, cli, &mut out),
        Command::Report(a) => report(a, cli, &mut out),
        Command::BuildTable(a) => build_table(a),
    }
}

fn load_table(path: Option<&Path>) -> Result<KnotTable> {
    match path {
        Some(p) => {
            let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            Ok(KnotTable::read_csv(f)?)
        }
        None => Ok(KnotTable::bundled()),
    }
}

#[derive(Serialize)]
struct WordRow {
    word: String,
    parity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dt: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simplified: Option<String>,
    open_realizable: bool,
    closed_realizable: bool,
}

fn gauss(a: &GaussArgs, format: Format, out: &mut impl Write) -> Result<ExitCode> {
    let mut rows = Rows::default();
    for w in enumerate_words(a.n) {
        let closed = w.closed_realizable();
        if a.closed_realizable && !closed {
            continue;
        }
        rows.push(&WordRow {
            word: w.to_string(),
            parity: w.parity_check(),
            star: a.stars.then(|| w.star_class().to_string()),
            dt: a.dt.then(|| w.to_dt().map(|d| d.to_string()).unwrap_or_default()),
            simplified: a.simplified.then(|| w.simplified_notation().to_string()),
            open_realizable: w.open_realizable(),
            closed_realizable: closed,
        })?;
    }
    emit(out, &[rows], format)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct StatsRow {
    dt: String,
    m1: usize,
    m2: usize,
    m3: usize,
}

fn stats_rows(n: usize) -> Result<Rows> {
    let stats = curve_stats(n);
    let mut rows = Rows::titled(&format!("long curves per DT code, n={n}"));
    for s in &stats {
        rows.push(&StatsRow { dt: s.dt.to_string(), m1: s.m1, m2: s.m2, m3: s.m3 })?;
    }
    rows.push(&StatsRow {
        dt: "sum".into(),
        m1: stats.iter().map(|s| s.m1).sum(),
        m2: stats.iter().map(|s| s.m2).sum(),
        m3: stats.iter().map(|s| s.m3).sum(),
    })?;
    Ok(rows)
}

fn curves(a: &CurvesArgs, format: Format, out: &mut impl Write) -> Result<ExitCode> {
    let rows = if a.stats {
        stats_rows(a.n)?
    } else if a.closed {
        #[derive(Serialize)]
        struct ClosedRow {
            code: String,
            outer_dart: usize,
        }
        let census = enumerate_closed_curves(a.n, a.oriented_circle, a.oriented_plane);
        let mut rows = Rows::titled(&format!("{} closed curve classes, n={}", census.count, a.n));
        for (code, dart) in &census.representatives {
            rows.push(&ClosedRow { code: code.to_string(), outer_dart: *dart })?;
        }
        rows
    } else {
        #[derive(Serialize)]
        struct CurveRow {
            code: String,
            dt: String,
            arcs: String,
            interior_curl: bool,
        }
        let mut rows = Rows::default();
        for c in enumerate_long_curves(a.n) {
            rows.push(&CurveRow {
                code: c.code().to_string(),
                dt: c.dt().to_string(),
                arcs: c.classify_arcs().to_string(),
                interior_curl: c.has_interior_curl(),
            })?;
        }
        rows
    };
    emit(out, &[rows], format)?;
    Ok(ExitCode::SUCCESS)
}

fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::Kept => "kept".into(),
        Verdict::Removed(f) => format!("{f:?}"),
    }
}

fn templates(a: &TemplatesArgs, format: Format, out: &mut impl Write) -> Result<ExitCode> {
    let raw = raw_templates(a.n);
    let (report, valid) = apply_filters(&raw);
    let listed = if a.raw { &raw } else { &valid };
    let mut tables = Vec::new();
    if a.report {
        #[derive(Serialize)]
        struct VerdictRow<'a> {
            template: &'a str,
            verdict: String,
        }
        #[derive(Serialize)]
        struct CountRow {
            stage: &'static str,
            count: usize,
        }
        let mut rows = Rows::titled("verdicts");
        for (key, v) in &report.entries {
            rows.push(&VerdictRow { template: key, verdict: verdict(v) })?;
        }
        tables.push(rows);
        let mut counts = Rows::titled("counts");
        counts.push(&CountRow { stage: "raw", count: raw.len() })?;
        for (stage, f) in [("F1", Filter::F1), ("F2", Filter::F2), ("F4", Filter::F4), ("F3", Filter::F3)] {
            counts.push(&CountRow { stage, count: report.removed_by(f) })?;
        }
        counts.push(&CountRow { stage: "valid", count: report.kept() })?;
        tables.push(counts);
    } else {
        #[derive(Serialize)]
        struct TemplateRow {
            template: String,
            x_markers: usize,
            y_markers: usize,
        }
        let mut rows = Rows::default();
        for t in listed {
            rows.push(&TemplateRow {
                template: t.to_string(),
                x_markers: t.count_axis(parterre::Axis::X),
                y_markers: t.count_axis(parterre::Axis::Y),
            })?;
        }
        tables.push(rows);
    }
    if let Some(path) = &a.emit {
        let w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        serde_json::to_writer_pretty(w, listed)?;
    }
    emit(out, &tables, format)?;
    Ok(ExitCode::SUCCESS)
}

fn census_options(max_crossings: usize, ns: &[usize], override_guard: bool, cli: &Cli) -> CensusOptions {
    CensusOptions { max_crossings, ns: ns.to_vec(), override_guard, cache_dir: cli.cache_dir.clone() }
}

fn enumerate(a: &EnumerateArgs, cli: &Cli, out: &mut impl Write) -> Result<ExitCode> {
    let start = Instant::now();
    let (stages, diagrams) = enumerate_diagrams(&census_options(a.max_crossings, &a.n, a.override_guard, cli))?;
    if let Some(path) = &a.emit_pd {
        let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        for d in &diagrams {
            let p = d.provenance();
            writeln!(w, "{}\t{} [{}] {}", d.pd, p.template, p.variation, p.twists)?;
        }
        w.flush()?;
    }
    #[derive(Serialize)]
    struct Meta<'a> {
        max_crossings: usize,
        diagrams: usize,
        elapsed_ms: u128,
        stages: &'a [parterre::census::StageCounts],
    }
    let meta = Meta { max_crossings: a.max_crossings, diagrams: diagrams.len(), elapsed_ms: start.elapsed().as_millis(), stages: &stages };
    if cli.format == Format::Json {
        serde_json::to_writer(&mut *out, &meta)?;
        writeln!(out)?;
    } else {
        let mut rows = Rows::titled(&format!("{} diagrams in {} ms", meta.diagrams, meta.elapsed_ms));
        for s in &stages {
            rows.push(s)?;
        }
        emit(out, &[rows], cli.format)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct IdentifyRow {
    input: String,
    crossings: usize,
    jones: String,
    alexander: String,
    determinant: u64,
    homology: String,
    result: String,
}

fn identify_cmd(a: &IdentifyArgs, format: Format, out: &mut impl Write) -> Result<ExitCode> {
    let table = load_table(a.table.as_deref())?;
    let mut inputs: Vec<(String, PlanarDiagramCode)> = Vec::new();
    if let Some(dt) = &a.dt {
        let code = DtCode::parse(&dt.replace(',', " "))?;
        inputs.push((dt.clone(), PlanarDiagramCode::from_dt(&code)?));
    }
    if let Some(path) = &a.pd {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        for line in BufReader::new(f).lines() {
            let line = line?;
            let text = line.split_whitespace().next().unwrap_or("");
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            inputs.push((text.to_string(), text.parse()?));
        }
    }
    let mut rows = Rows::default();
    let mut unidentified = false;
    for (input, pd) in inputs {
        let inv = Invariants::of(&pd)?;
        let id = identify(&inv, &table);
        unidentified |= id.is_unidentified();
        let homology = double_cover_homology(&pd)?;
        rows.push(&IdentifyRow {
            input,
            crossings: pd.len(),
            jones: inv.jones.to_string(),
            alexander: inv.alexander.to_string(),
            determinant: inv.determinant,
            homology: homology.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("+"),
            result: id.to_string(),
        })?;
    }
    emit(out, &[rows], format)?;
    Ok(if unidentified { ExitCode::from(EXIT_UNIDENTIFIED) } else { ExitCode::SUCCESS })
}

#[derive(Serialize)]
struct KnotRow<'a> {
    c_ds: usize,
    name: &'a str,
    diagrams: usize,
    determinant: u64,
    template: &'a str,
    variation: &'a str,
    twists: &'a str,
    witness: String,
}

fn knot_rows(title: &str, rows: &[CensusRow]) -> Result<Rows> {
    let mut t = Rows::titled(title);
    for r in rows {
        t.push(&KnotRow {
            c_ds: r.c_ds,
            name: &r.name,
            diagrams: r.diagrams,
            determinant: r.invariants.determinant,
            template: &r.provenance.template,
            variation: &r.provenance.variation,
            twists: &r.provenance.twists,
            witness: r.witness.to_string(),
        })?;
    }
    Ok(t)
}

fn stage_rows(report: &CensusReport) -> Result<Rows> {
    let mut t = Rows::titled(&format!("stages (budget {})", report.max_crossings));
    for s in &report.stages {
        t.push(s)?;
    }
    Ok(t)
}

fn census(a: &CensusArgs, cli: &Cli, out: &mut impl Write) -> Result<ExitCode> {
    let table = load_table(a.table.as_deref())?;
    let report = run_census(&census_options(a.max_crossings, &a.n, a.override_guard, cli), &table)?;
    if cli.format == Format::Json {
        serde_json::to_writer(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        let mut summary = Rows::titled("summary");
        #[derive(Serialize)]
        struct Summary {
            diagrams: usize,
            primes: usize,
            composites: usize,
            trivial: usize,
            unidentified_classes: usize,
        }
        summary.push(&Summary {
            diagrams: report.diagram_count(),
            primes: report.primes.len(),
            composites: report.composites.len(),
            trivial: report.trivial,
            unidentified_classes: report.unidentified.len(),
        })?;
        let tables = [
            summary,
            stage_rows(&report)?,
            knot_rows("prime knots", &report.primes)?,
            knot_rows("composite knots", &report.composites)?,
            knot_rows("unidentified", &report.unidentified)?,
        ];
        emit(out, &tables, cli.format)?;
    }
    if !report.unidentified.is_empty() && !a.permissive {
        eprintln!("{} unidentified invariant classes:", report.unidentified.len());
        for r in &report.unidentified {
            eprintln!("{}", serde_json::to_string(r)?);
        }
        return Ok(ExitCode::from(EXIT_UNIDENTIFIED));
    }
    Ok(ExitCode::SUCCESS)
}

fn report(a: &ReportArgs, cli: &Cli, out: &mut impl Write) -> Result<ExitCode> {
    let table = load_table(a.table.as_deref())?;
    let census = run_census(&census_options(a.max_crossings, &[], false, cli), &table)?;
    #[derive(Serialize)]
    struct TemplateRow {
        n: usize,
        template: String,
    }
    let mut nine = Rows::titled("valid templates, n <= 3");
    for n in 0..=3 {
        for t in apply_filters(&raw_templates(n)).1 {
            nine.push(&TemplateRow { n, template: t.to_string() })?;
        }
    }
    #[derive(Serialize)]
    struct ListRow {
        c_ds: usize,
        count: usize,
        knots: String,
        unidentified_classes: usize,
    }
    let mut lists = Rows::titled("prime knots by c_ds");
    let mut sizes: Vec<usize> = census.primes.iter().chain(&census.unidentified).map(|r| r.c_ds).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for c in sizes {
        let names: Vec<&str> = census.primes_at(c).iter().map(|r| r.name.as_str()).collect();
        lists.push(&ListRow {
            c_ds: c,
            count: names.len(),
            knots: names.join(" "),
            unidentified_classes: census.unidentified.iter().filter(|r| r.c_ds == c).count(),
        })?;
    }
    let tables = [stats_rows(a.stats_n)?, nine, stage_rows(&census)?, lists];
    emit(out, &tables, cli.format)?;
    Ok(ExitCode::SUCCESS)
}

fn build_table(a: &BuildTableArgs) -> Result<ExitCode> {
    let src = File::open(&a.source).with_context(|| format!("opening {}", a.source.display()))?;
    let table = KnotTable::from_source(src)?;
    let w = BufWriter::new(File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?);
    table.write_csv(w)?;
    eprintln!("{} records written to {}", table.records.len(), a.out.display());
    Ok(ExitCode::SUCCESS)
}
