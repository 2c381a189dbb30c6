//! Command-line front end: table validation, kernel evaluation, tame
//! tables, vertex enumeration, bound search, transfer exponents, perm-basis
//! solves, segment extraction, asymptotic floors, and the batch `report`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use artin_floor::bound_search::{
    search_bound, AuxMethod, BoundReport, ExponentMode, SearchOptions,
};
use artin_floor::char_table::{parse_gct, CharacterTable, GaloisTypeQuery};
use artin_floor::display::{floor2, frac, frac_and_float, round2};
use artin_floor::kernel;
use artin_floor::polytope::{enumerate_vertices, DEFAULT_VERTEX_CAP};
use artin_floor::tame::{exponent_bracket, tame_table};
use artin_floor::transfer::{
    extract_segment, parse_decimal_rat, parse_gfl, solve_in_perm_basis, Segment,
};

/// Exit status groups: usage errors exit 2 via clap, validation failures
/// (malformed or inconsistent GCT/GFL content) exit 1, and data errors
/// (missing files, unknown labels, inconsistent conductor data) exit 2.
enum CliError {
    Validation(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Data(m) => m,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rounding {
    /// Round to nearest (the reference presentation).
    Nearest,
    /// Round down, so printed bounds never exceed the true ones.
    Floor,
}

#[derive(Parser)]
#[command(
    name = "artin-floor",
    about = "Conditional lower bounds and initial segments for root conductors of Artin L-functions",
    version
)]
struct Cli {
    /// Output format for tabular commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Two-decimal presentation of bound cells.
    #[arg(long, global = true, value_enum, default_value_t = Rounding::Nearest)]
    rounding: Rounding,
    #[command(subcommand)]
    cmd: Cmd,
}

impl Rounding {
    fn fmt2(self, v: f64) -> String {
        match self {
            Rounding::Nearest => round2(v),
            Rounding::Floor => floor2(v),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a GCT file and verify all table invariants.
    Validate { gct: PathBuf },
    /// Evaluate the explicit-formula bound M(n, r, u).
    Kernel(KernelArgs),
    /// Emit the tame conductor-exponent table.
    Tame { gct: PathBuf },
    /// Enumerate the vertices of the polytope of normalized nonnegative
    /// characters.
    Vertices {
        gct: PathBuf,
        /// Cap on subset solves.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: u64,
        /// Print each vertex (coordinates and class values).
        #[arg(long)]
        list: bool,
    },
    /// Search auxiliary characters for the best conductor bound.
    Bound(BoundArgs),
    /// Transfer exponent (walp/alp and the applied beta) for a character.
    Beta {
        gct: PathBuf,
        #[arg(long = "char")]
        char_label: String,
    },
    /// Express a character over permutation characters.
    Solve {
        gct: PathBuf,
        #[arg(long = "char")]
        char_label: String,
        /// Comma-separated permutation-character labels; `1` is the unital
        /// character.
        #[arg(long, value_delimiter = ',')]
        basis: Vec<String>,
    },
    /// Extract the certified initial segment from a Galois field list.
    Transfer(TransferArgs),
    /// Asymptotic floor constants.
    Floor {
        #[arg(long)]
        eps: f64,
        /// Place complex conjugation at the identity.
        #[arg(long)]
        totally_real: bool,
    },
    /// One row per faithful rational irreducible character: interval,
    /// bound, exponent, cutoff, and (with a field list) the segment.
    Report(ReportArgs),
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long)]
    n: f64,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    u: f64,
    #[arg(long, default_value_t = kernel::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct BoundArgs {
    gct: PathBuf,
    #[arg(long = "char")]
    char_label: String,
    /// Fix the conjugation class (element order <= 2).
    #[arg(long = "conj")]
    conj_label: Option<String>,
    /// Method tags to include, e.g. `l,s,q,g,p,v`.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<char>>,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: u64,
    #[arg(long, default_value_t = kernel::DEFAULT_TOL)]
    tol: f64,
    /// Print every evaluated candidate.
    #[arg(long)]
    audit: bool,
}

#[derive(Args)]
struct TransferArgs {
    gct: PathBuf,
    gfl: PathBuf,
    #[arg(long = "char")]
    char_label: String,
    /// Completeness bound B of the field list (Galois root discriminant).
    #[arg(long)]
    bound: String,
}

#[derive(Args)]
struct ReportArgs {
    gct: PathBuf,
    gfl: Option<PathBuf>,
    /// Completeness bound B of the field list.
    #[arg(long)]
    bound: String,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: u64,
    #[arg(long, default_value_t = kernel::DEFAULT_TOL)]
    tol: f64,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

/// ARTIN_FLOOR_THREADS caps worker parallelism.
fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("ARTIN_FLOOR_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn load_table(path: &PathBuf) -> CliResult<CharacterTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    parse_gct(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn data_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

/// Emit rows either tab-separated or width-aligned.
fn emit(format: Format, rows: &[Vec<String>]) {
    match format {
        Format::Tsv => {
            for row in rows {
                println!("{}", row.join("\t"));
            }
        }
        Format::Table => {
            let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
            let mut widths = vec![0usize; cols];
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            for row in rows {
                let line: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(i, cell)| format!("{:<width$}", cell, width = widths[i]))
                    .collect();
                println!("{}", line.join("  ").trim_end());
            }
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.cmd {
        Cmd::Validate { gct } => {
            let t = load_table(gct)?;
            println!(
                "ok: {} (order {}, {} classes, {} characters, {} permutation characters, tame-wild {}, complete {})",
                t.group_name,
                t.group_order,
                t.class_count(),
                t.chars.len(),
                t.perm_chars.len(),
                if t.tame_wild { "yes" } else { "no" },
                if t.complete { "yes" } else { "no" },
            );
            Ok(())
        }
        Cmd::Kernel(a) => {
            let m = kernel::big_m(a.n, a.r, a.u, a.tol).map_err(data_err)?;
            let k = kernel::kernels(m.argmax_z, a.tol).map_err(data_err)?;
            println!("M({}, {}, {}) = {:.6}", a.n, a.r, a.u, m.value);
            println!("argmax z = {:.6}", m.argmax_z);
            println!("N = {:.9}  R = {:.9}  P = {:.9}", k.n, k.r, k.p);
            if m.scan_capped {
                println!("warning: scan hit the z cap while still improving");
            }
            Ok(())
        }
        Cmd::Tame { gct } => {
            let t = load_table(gct)?;
            let reg = t.regular_character();
            let mut rows = Vec::new();
            let mut header = vec!["char".to_string()];
            header.extend(t.classes.iter().map(|c| c.label.clone()));
            header.push("walp".into());
            header.push("alp".into());
            rows.push(header);
            for (label, trs) in tame_table(&t) {
                let mut row = vec![label.clone()];
                row.extend(trs.iter().map(|r| frac(&r.c_tame)));
                let chi = t.char_row(&label).map_err(data_err)?.class_function();
                let faithful = t.is_faithful(&chi).map_err(data_err)?;
                match exponent_bracket(&t, &chi, &reg) {
                    Ok(b) if faithful => {
                        row.push(frac(&b.walp));
                        row.push(frac(&b.alp));
                    }
                    _ => {
                        row.push(String::new());
                        row.push(String::new());
                    }
                }
                rows.push(row);
            }
            let mut reg_row = vec![format!("phi{}", t.group_order)];
            for idx in 0..t.class_count() {
                reg_row.push(frac(&artin_floor::tame::c_tame(&t, &reg, idx)));
            }
            rows.push(reg_row);
            emit(cli.format, &rows);
            Ok(())
        }
        Cmd::Vertices { gct, cap, list } => {
            let t = load_table(gct)?;
            let vs = enumerate_vertices(&t, *cap).map_err(data_err)?;
            println!("{} vertices", vs.len());
            if *list {
                let mut rows = Vec::new();
                for (i, v) in vs.iter().enumerate() {
                    let x: Vec<String> = v.x.iter().map(frac).collect();
                    let y: Vec<String> = v.y.iter().map(frac).collect();
                    rows.push(vec![
                        format!("vertex#{i}"),
                        format!("x = ({})", x.join(", ")),
                        format!("y = ({})", y.join(", ")),
                    ]);
                }
                emit(cli.format, &rows);
            }
            Ok(())
        }
        Cmd::Bound(a) => run_bound(cli.format, cli.rounding, a),
        Cmd::Beta { gct, char_label } => {
            let t = load_table(gct)?;
            let te = artin_floor::transfer::transfer_exponent(&t, char_label).map_err(data_err)?;
            println!("walp = {}", frac_and_float(&te.walp));
            println!("alp  = {}", frac_and_float(&te.alp));
            let mode = match te.mode {
                ExponentMode::AlphaHat => "walp (tame-wild not known)",
                ExponentMode::AlphaTw => "alp (tame-wild)",
            };
            println!("beta = {} using {}", frac_and_float(&te.beta), mode);
            Ok(())
        }
        Cmd::Solve {
            gct,
            char_label,
            basis,
        } => {
            let t = load_table(gct)?;
            let sol = solve_in_perm_basis(&t, char_label, basis).map_err(data_err)?;
            let terms: Vec<String> = sol
                .coefficients
                .iter()
                .map(|(l, k)| format!("{} * {}", frac(k), l))
                .collect();
            println!("chi_{} = {}", char_label, terms.join(" + "));
            if !sol.scale.to_string().eq("1") {
                println!("denominator scale = {}", sol.scale);
            }
            Ok(())
        }
        Cmd::Transfer(a) => run_transfer(cli.format, cli.rounding, a),
        Cmd::Floor { eps, totally_real } => {
            if !(0.0..=1.0).contains(eps) {
                return Err(CliError::Data(format!("eps must be in [0, 1], got {eps}")));
            }
            println!("omega = {:.4}", kernel::omega());
            println!("theta = {:.4}", kernel::theta());
            println!(
                "floor(eps = {eps}) = {:.4}",
                kernel::asymptotic_floor(*eps, *totally_real)
            );
            println!(
                "signature floor(eps = {eps}) = {:.4}",
                kernel::signature_floor(*eps)
            );
            Ok(())
        }
        Cmd::Report(a) => run_report(cli.format, cli.rounding, a),
    }
}

fn run_bound(format: Format, rounding: Rounding, a: &BoundArgs) -> CliResult<()> {
    let t = load_table(&a.gct)?;
    let query = GaloisTypeQuery {
        char_label: a.char_label.clone(),
        conj_label: a.conj_label.clone(),
    };
    t.resolve_query(&query).map_err(data_err)?;
    let methods = match &a.methods {
        None => None,
        Some(tags) => {
            let mut ms = Vec::new();
            for &tag in tags {
                ms.push(
                    AuxMethod::from_tag(tag)
                        .ok_or_else(|| CliError::Data(format!("unknown method tag {tag}")))?,
                );
            }
            Some(ms)
        }
    };
    let opts = SearchOptions {
        vertex_cap: Some(a.cap),
        tol: Some(a.tol),
        methods,
        ..SearchOptions::default()
    };
    let report = search_bound(&t, &a.char_label, &opts).map_err(data_err)?;
    print_bound(format, rounding, &report, a.conj_label.as_deref(), a.audit);
    Ok(())
}

fn print_bound(
    format: Format,
    rounding: Rounding,
    r: &BoundReport,
    conj: Option<&str>,
    audit: bool,
) {
    match conj {
        Some(label) => {
            let cb = r
                .per_conjugation
                .iter()
                .find(|cb| cb.conj_label == label)
                .expect("conjugation class resolved earlier");
            println!(
                "d({}, c = {}, chi_{}) = {}_{}",
                r.group_name,
                label,
                r.char_label,
                rounding.fmt2(cb.value),
                cb.method.tag()
            );
        }
        None => {
            println!(
                "d({}, chi_{}) = {}_{}",
                r.group_name,
                r.char_label,
                rounding.fmt2(r.value),
                r.tag()
            );
            println!(
                "winner: {} via {:?} ({}), exponent {} ({:?}), min over c at {}",
                rounding.fmt2(r.value),
                r.method,
                r.source,
                frac(&r.exponent_used),
                r.exponent_mode,
                r.min_conj_label
            );
            for cb in &r.per_conjugation {
                println!(
                    "  c = {}: max = {} via {}:{}",
                    cb.conj_label,
                    rounding.fmt2(cb.value),
                    cb.method.tag(),
                    cb.source
                );
            }
        }
    }
    if r.vertices_skipped {
        println!("note: vertex candidates skipped (cap exceeded)");
    }
    if audit {
        let mut rows = vec![vec![
            "method".to_string(),
            "source".to_string(),
            "conj".to_string(),
            "value".to_string(),
            "exponent".to_string(),
            "note".to_string(),
        ]];
        for row in &r.all_evaluated {
            rows.push(vec![
                row.method.tag().to_string(),
                row.source.clone(),
                row.conj_label.clone(),
                row.value.map(round2).unwrap_or_default(),
                row.exponent.as_ref().map(frac).unwrap_or_default(),
                row.note.clone().unwrap_or_default(),
            ]);
        }
        emit(format, &rows);
    }
}

fn parse_bound_arg(text: &str) -> CliResult<BigRational> {
    parse_decimal_rat(text)
        .filter(|b| b.to_f64().is_some_and(|v| v > 0.0))
        .ok_or_else(|| CliError::Data(format!("bound must be a positive decimal, got {text}")))
}

fn run_transfer(format: Format, rounding: Rounding, a: &TransferArgs) -> CliResult<()> {
    let t = load_table(&a.gct)?;
    let gfl_text = std::fs::read_to_string(&a.gfl)
        .map_err(|e| CliError::Data(format!("{}: {e}", a.gfl.display())))?;
    let gfl = parse_gfl(&gfl_text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", a.gfl.display())))?;
    let bound = parse_bound_arg(&a.bound)?;
    let basis = with_unital(&gfl.uses);
    let sol = solve_in_perm_basis(&t, &a.char_label, &basis).map_err(data_err)?;
    let seg = extract_segment(&t, &sol, &gfl.fields, &bound).map_err(data_err)?;
    print_segment(format, rounding, &seg, true);
    Ok(())
}

/// Prepend the unital character so bases taken from GFL column lists can
/// absorb constant terms (it contributes conductor 1).
fn with_unital(uses: &[String]) -> Vec<String> {
    let mut basis = Vec::with_capacity(uses.len() + 1);
    if !uses.iter().any(|l| l == "1") {
        basis.push("1".to_string());
    }
    basis.extend(uses.iter().cloned());
    basis
}

fn print_segment(format: Format, rounding: Rounding, seg: &Segment, list_entries: bool) {
    println!(
        "beta = {} ({:?}), cutoff B^beta = {}",
        frac(&seg.beta),
        seg.mode,
        rounding.fmt2(seg.cutoff)
    );
    match (&seg.delta1, &seg.uncertified_min) {
        (Some(d), _) => println!(
            "delta_1 = {} (conductor {}, field #{})",
            rounding.fmt2(d.root_conductor),
            d.conductor,
            d.rank
        ),
        (None, Some(u)) => println!(
            "smallest known root conductor = {} (conductor {}, field #{}), not certified",
            rounding.fmt2(u.root_conductor),
            u.conductor,
            u.rank
        ),
        (None, None) => println!("no entries computed"),
    }
    println!(
        "segment size = {}, certified = {}",
        seg.entries.len(),
        if seg.certified { "yes" } else { "no" }
    );
    for (rank, why) in &seg.skipped {
        println!("skipped field #{rank}: {why}");
    }
    if list_entries && !seg.entries.is_empty() {
        let mut rows = vec![vec![
            "pos".to_string(),
            "field".to_string(),
            "root_conductor".to_string(),
            "conductor".to_string(),
        ]];
        for (i, e) in seg.entries.iter().enumerate() {
            rows.push(vec![
                (i + 1).to_string(),
                format!("#{}", e.rank),
                rounding.fmt2(e.root_conductor),
                e.conductor.to_string(),
            ]);
        }
        emit(format, &rows);
    }
}

fn run_report(format: Format, rounding: Rounding, a: &ReportArgs) -> CliResult<()> {
    let t = load_table(&a.gct)?;
    let bound = parse_bound_arg(&a.bound)?;
    let gfl = match &a.gfl {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            Some(
                parse_gfl(&text)
                    .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?,
            )
        }
    };
    let opts = SearchOptions {
        vertex_cap: Some(a.cap),
        tol: Some(a.tol),
        ..SearchOptions::default()
    };

    let mut rows = vec![vec![
        "char".to_string(),
        "interval".to_string(),
        "d".to_string(),
        "beta".to_string(),
        "B^beta".to_string(),
        "delta1".to_string(),
        "count".to_string(),
    ]];
    for row in t.faithful_chars() {
        let label = row.label.clone();
        let chi = row.class_function();
        let ex = t.value_extremes(&chi).map_err(data_err)?;
        let interval = format!("[-{}, {}]", frac(&ex.check), frac(&ex.hat));
        let report = search_bound(&t, &label, &opts).map_err(data_err)?;
        let d_cell = format!("{}_{}", rounding.fmt2(report.value), report.tag());
        let te = artin_floor::transfer::transfer_exponent(&t, &label).map_err(data_err)?;
        let beta_cell = format!("{:.2}{}", te.beta.to_f64().unwrap(), beta_marker(&te));
        let cutoff = bound.to_f64().unwrap().powf(te.beta.to_f64().unwrap());
        let (delta1_cell, count_cell) = match &gfl {
            None => ("-".to_string(), "-".to_string()),
            Some(g) => {
                let basis = with_unital(&g.uses);
                let sol = solve_in_perm_basis(&t, &label, &basis).map_err(data_err)?;
                let seg = extract_segment(&t, &sol, &g.fields, &bound).map_err(data_err)?;
                let delta1 = match (&seg.delta1, &seg.uncertified_min) {
                    (Some(d), _) => rounding.fmt2(d.root_conductor),
                    // Known value without a completeness certificate.
                    (None, Some(u)) => format!("~{}", rounding.fmt2(u.root_conductor)),
                    (None, None) => "-".to_string(),
                };
                (delta1, seg.entries.len().to_string())
            }
        };
        rows.push(vec![
            label,
            interval,
            d_cell,
            beta_cell,
            rounding.fmt2(cutoff),
            delta1_cell,
            count_cell,
        ]);
    }
    emit(format, &rows);
    Ok(())
}

fn beta_marker(te: &artin_floor::transfer::TransferExponent) -> &'static str {
    if te.equal {
        ""
    } else if te.mode == ExponentMode::AlphaTw {
        "*"
    } else {
        "!"
    }
}
