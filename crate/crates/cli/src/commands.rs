use std::fs;
use std::io::Write;
use std::path::Path;

use dcf_core::diff::{prolongation_ideal, DiffPolynomial};
use dcf_core::enumerate::{EnumerationBounds, Event, PairEnumerator};
use dcf_core::generic::formula::QFFormula;
use dcf_core::generic::{read_stacked, stabilize, DeltaGenericType};
use dcf_core::ideal::Ideal;
use dcf_core::io::parse::{parse_diff_poly, parse_formula};
use dcf_core::io::print::{formula_to_string, poly_to_string};
use dcf_core::io::{parse_system, IdealFile, PairManifest};
use dcf_core::oracle::{series_oracle, SeriesVerdict};
use dcf_core::pair::{check_good_pair, CheckOptions, GoodPair};
use dcf_core::poly::MonomialOrder;
use dcf_core::Error;

use crate::report::{Failure, Report};
use crate::{Cli, Command};

type Result<T> = std::result::Result<T, Failure>;

pub fn run(cli: &Cli) -> Result<Report> {
    let opts = CheckOptions { permissive: cli.permissive, seed: cli.seed };
    match &cli.command {
        Command::CheckPair { manifest } => check_pair(manifest, &opts),
        Command::Prolong { file } => prolong(file, cli.seed),
        Command::Member { manifest, f } => member(manifest, f, &opts),
        Command::Decide { manifest, phi } => decide(manifest, phi, &opts),
        Command::Stabilize { system } => stabilize_cmd(system, &opts),
        Command::Enumerate { n, r_max, max_degree, max_height, count, emit_dir, resume } => {
            let bounds = EnumerationBounds { n: *n, r_max: *r_max, deg_max: *max_degree, height_max: *max_height, count: *count };
            enumerate(bounds, emit_dir.as_deref(), *resume, cli.seed)
        }
        Command::SeriesCheck { manifest, f, order } => series_check(manifest, f, *order, &opts),
        Command::Gb { file, order } => gb(file, order, cli.seed),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { line, column, message } => {
            Failure::Usage(format!("{}:{}:{}: {}", path.display(), line, column, message))
        }
        other => Failure::Core(other),
    }
}

fn in_flag(flag: &str, e: Error) -> Failure {
    match e {
        Error::Parse { column, message, .. } => Failure::Usage(format!("{} column {}: {}", flag, column, message)),
        other => Failure::Core(other),
    }
}

struct Loaded {
    manifest: PairManifest,
    pair: GoodPair,
}

impl Loaded {
    /// Variables of the type: `n / blocks` when the pair is stacked.
    fn type_n(&self) -> (u32, u32) {
        let b = self.manifest.blocks.unwrap_or(1).max(1);
        if self.manifest.n % b == 0 {
            (self.manifest.n / b, b - 1)
        } else {
            (self.manifest.n, 0)
        }
    }

    fn query(&self, text: &str, flag: &str) -> Result<DiffPolynomial> {
        let (n, r) = self.type_n();
        let f = parse_diff_poly(text, self.manifest.field, n).map_err(|e| in_flag(flag, e))?;
        Ok(if r == 0 { f } else { read_stacked(n, r, f.body()) })
    }
}

fn load(path: &Path, opts: &CheckOptions) -> Result<Loaded> {
    let manifest = PairManifest::parse(&read(path)?).map_err(|e| in_file(path, e))?;
    let (v, w) = manifest.presentations().map_err(|e| in_file(path, e))?;
    let pair = check_good_pair(v, w, opts)?.with_point(manifest.point.clone());
    for w in &pair.warnings {
        log::warn!("{}", w);
    }
    Ok(Loaded { manifest, pair })
}

fn basis_lines(r: &mut Report, ideal: &Ideal) -> Result<()> {
    for p in ideal.reduced_basis()?.polys() {
        r.line(poly_to_string(p));
    }
    Ok(())
}

fn check_pair(path: &Path, opts: &CheckOptions) -> Result<Report> {
    let manifest = PairManifest::parse(&read(path)?).map_err(|e| in_file(path, e))?;
    let (v, w) = manifest.presentations().map_err(|e| in_file(path, e))?;
    let mut r = Report::new("check-pair", opts.seed);
    r.field("manifest", path.display());
    match check_good_pair(v, w, opts) {
        Ok(pair) => {
            let c = &pair.certificate;
            r.field("verdict", "accepted").field("m", c.m);
            let basis: Vec<String> = c.basis_indices.iter().map(|i| format!("u{}", i)).collect();
            r.field("fibre_basis", if basis.is_empty() { "-".into() } else { basis.join(" ") });
            for w in &pair.warnings {
                r.field("warning", w);
            }
            for form in &c.fiber_forms {
                r.line(poly_to_string(&form.relation(&c.basis_indices)));
            }
        }
        Err(e) if e.is_negative_answer() => {
            r.field("verdict", "rejected");
            if let Some(c) = e.condition() {
                r.field("condition", c.label());
            }
            r.field("reason", &e).negative();
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn prolong(path: &Path, seed: u64) -> Result<Report> {
    let text = read(path)?;
    let ideal = if text.lines().any(|l| l.trim() == "[V]") {
        let m = PairManifest::parse(&text).map_err(|e| in_file(path, e))?;
        m.presentations().map_err(|e| in_file(path, e))?.0.ideal
    } else {
        IdealFile::parse(&text).map_err(|e| in_file(path, e))?.ideal().map_err(|e| in_file(path, e))?
    };
    let p = prolongation_ideal(&ideal)?;
    let mut r = Report::new("prolong", seed);
    r.field("input", path.display()).field("ground_field", ideal.field().name());
    basis_lines(&mut r, &p)?;
    Ok(r)
}

fn member(path: &Path, f: &str, opts: &CheckOptions) -> Result<Report> {
    let l = load(path, opts)?;
    let q = l.query(f, "--f")?;
    let verdict = DeltaGenericType::new(l.pair.clone())?.member(&q)?;
    let mut r = Report::new("member", opts.seed);
    r.field("manifest", path.display()).field("f", poly_to_string(q.body())).line(verdict.name());
    if verdict == dcf_core::generic::Verdict::Nonzero {
        r.negative();
    }
    Ok(r)
}

fn decide(path: &Path, phi: &str, opts: &CheckOptions) -> Result<Report> {
    let l = load(path, opts)?;
    let (n, rr) = l.type_n();
    let formula = parse_formula(phi, l.manifest.field, n).map_err(|e| in_flag("--phi", e))?;
    let formula: QFFormula =
        if rr == 0 { formula } else { formula.map_atoms(&|a| read_stacked(n, rr, a.body())) };
    let holds = DeltaGenericType::new(l.pair.clone())?.decide(&formula)?;
    let mut r = Report::new("decide", opts.seed);
    r.field("manifest", path.display()).field("phi", formula_to_string(&formula));
    r.line(if holds { "true" } else { "false" });
    if !holds {
        r.negative();
    }
    Ok(r)
}

fn stabilize_cmd(path: &Path, opts: &CheckOptions) -> Result<Report> {
    let system = parse_system(&read(path)?).map_err(|e| in_file(path, e))?;
    let (trace, pair) = stabilize(&system, opts)?;
    let mut m = PairManifest::from_pair(&pair);
    m.blocks = Some(trace.r + 1);
    m.meta.push(("source".into(), path.display().to_string()));
    let mut r = Report::new("stabilize", opts.seed);
    let d: Vec<String> = trace.d.iter().map(|d| d.to_string()).collect();
    r.field("system", path.display()).field("d", d.join(" ")).field("r", trace.r).field("m", pair.certificate.m);
    r.line(m.to_text().trim_end());
    Ok(r)
}

fn enumerate(bounds: EnumerationBounds, dir: Option<&Path>, resume: bool, seed: u64) -> Result<Report> {
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    let ledger_path = dir.map(|d| d.join("ledger.tsv"));
    let mut e = match (&ledger_path, resume) {
        (Some(p), true) => {
            let prior = if p.exists() { read(p)? } else { String::new() };
            PairEnumerator::resume(bounds, &prior)?
        }
        _ => PairEnumerator::new(bounds)?,
    };
    let mut ledger = match (dir, &ledger_path) {
        (Some(d), Some(p)) => {
            fs::create_dir_all(d).map_err(io)?;
            let mut o = fs::OpenOptions::new();
            o.create(true);
            if resume {
                o.append(true);
            } else {
                o.write(true).truncate(true);
            }
            Some(o.open(p).map_err(io)?)
        }
        _ => None,
    };
    let mut r = Report::new("enumerate", seed);
    r.field("n", bounds.n)
        .field("r_max", bounds.r_max)
        .field("max_degree", bounds.deg_max)
        .field("max_height", bounds.height_max)
        .field("count", bounds.count)
        .field("families", "affine|hypersurface base, graph|bundle total space");
    let start = e.emitted();
    while let Some(ev) = e.next_event()? {
        let line = ev.ledger_line();
        if let (Event::Emit(em), Some(d)) = (&ev, dir) {
            let file = d.join(format!("pair_{:06}.pair", em.index.ordinal));
            fs::write(file, em.manifest().to_text()).map_err(io)?;
        }
        if let Some(f) = ledger.as_mut() {
            writeln!(f, "{}", line).map_err(io)?;
        }
        r.line(line);
    }
    r.field("emitted", e.emitted() - start);
    Ok(r)
}

fn series_check(path: &Path, f: &str, order: u32, opts: &CheckOptions) -> Result<Report> {
    let l = load(path, opts)?;
    let q = l.query(f, "--f")?;
    let verdict = series_oracle(&l.pair, &q, order, opts.seed)?;
    let mut r = Report::new("series-check", opts.seed);
    r.field("manifest", path.display()).field("f", poly_to_string(q.body())).field("order", order);
    match verdict {
        SeriesVerdict::ConfirmZero(n) => {
            r.line(format!("zero to order {}", n));
        }
        SeriesVerdict::RefuteZero { order, value } => {
            r.line(format!("nonzero at order {}: {}", order, value)).negative();
        }
    }
    Ok(r)
}

fn parse_order(s: &str) -> Result<MonomialOrder> {
    match s {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => s
            .strip_prefix("block:")
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Block)
            .ok_or_else(|| Failure::Usage(format!("unknown order '{}': use grevlex, lex or block:K", s))),
    }
}

fn gb(path: &Path, order: &str, seed: u64) -> Result<Report> {
    let order = parse_order(order)?;
    let ideal = IdealFile::parse(&read(path)?).and_then(|f| f.ideal()).map_err(|e| in_file(path, e))?;
    let report = ideal.groebner(order)?;
    let vars: Vec<String> = ideal.ambient().iter().map(|v| v.to_string()).collect();
    let mut r = Report::new("gb", seed);
    r.field("input", path.display())
        .field("order", format!("{:?}", order).to_lowercase())
        .field("variables", vars.join(" > "))
        .field("pairs", report.pair_count)
        .field("reductions", report.reduction_count);
    for p in &report.basis {
        r.line(poly_to_string(p));
    }
    Ok(r)
}
