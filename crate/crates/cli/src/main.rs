use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use arcs_core::code::canonical_key;
use arcs_core::{
    audit_inequalities, enumerate_codes, find_fish, joint_realization, make_disc_model, search,
    thm1_construction, thm2_construction, ArcCode, Claim, DiscModel, EndpointFilter, Error, FamilyFile, RealizedFamily,
    Report, Variant,
};

mod render;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "arcs", version, about = "Arc families on punctured spheres")]
struct Cli {
    /// Seed recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the two explicit constructions.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        thm: u8,
        /// Interior punctures (theorem 1).
        #[arg(long)]
        m: Option<usize>,
        /// Polygon sides (theorem 2).
        #[arg(long)]
        n: Option<usize>,
        /// Save the construction as a family file.
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
    /// Maximum family by clique search over an enumerated universe.
    Search {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Word-length bound; defaults to m.
        #[arg(long = "L", alias = "l")]
        length: Option<usize>,
        /// Time budget in seconds for the clique search.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
    /// List the arc classes with bounded word length.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long = "L", alias = "l")]
        length: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
    /// Fish statements on a family of puncture-to-boundary arcs.
    FishAudit { family: PathBuf },
    /// Fill in puncture v and report what happens to the family.
    RemovePuncture {
        family: PathBuf,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
    /// Draw a family as SVG.
    Render {
        family: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Shade the heads and tails of minimal fish.
        #[arg(long)]
        fish: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Thm1,
    Thm2,
    All1,
    PPrime,
    Pp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FilterArg {
    All,
    PunctureToBoundary,
    BoundaryToFirst,
    BoundaryToBoundary,
}

impl From<FilterArg> for EndpointFilter {
    fn from(f: FilterArg) -> EndpointFilter {
        match f {
            FilterArg::All => EndpointFilter::All,
            FilterArg::PunctureToBoundary => EndpointFilter::PunctureToBoundary,
            FilterArg::BoundaryToFirst => EndpointFilter::BoundaryToFirst,
            FilterArg::BoundaryToBoundary => EndpointFilter::BoundaryToBoundary,
        }
    }
}

/// `--k` picks between the variants sharing a name: `pp` with one crossing
/// is the boundary-to-first-puncture count, `thm2` with one is `all1`.
fn resolve_variant(v: VariantArg, k: Option<usize>) -> anyhow::Result<Variant> {
    let base = match v {
        VariantArg::Thm1 => Variant::Thm1,
        VariantArg::Thm2 => Variant::Thm2,
        VariantArg::All1 => Variant::All1,
        VariantArg::PPrime => Variant::PPrime,
        VariantArg::Pp => Variant::Pp,
    };
    let out = match (base, k) {
        (b, None) => b,
        (b, Some(k)) if b.k() == k => b,
        (Variant::Pp, Some(1)) => Variant::PPrime,
        (Variant::Thm2, Some(1)) => Variant::All1,
        (Variant::All1, Some(2)) => Variant::Thm2,
        (b, Some(k)) => bail!("variant {b:?} has no k = {k} form"),
    };
    Ok(out)
}

/// Outcome of a command: the report plus the exit status it implies.
struct Outcome {
    report: Report,
    code: u8,
}

impl Outcome {
    fn from_claims(report: Report) -> Outcome {
        let code = if report.passed { 0 } else { 1 };
        Outcome { report, code }
    }
}

fn histogram(counts: &[Vec<usize>]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for i in 0..counts.len() {
        for j in i + 1..counts.len() {
            *h.entry(counts[i][j]).or_insert(0) += 1;
        }
    }
    h
}

fn distinct_classes(model: &DiscModel, codes: &[ArcCode]) -> Option<(usize, usize)> {
    let mut seen = BTreeMap::new();
    for (i, c) in codes.iter().enumerate() {
        if let Some(j) = seen.insert(canonical_key(model, c), i) {
            return Some((j, i));
        }
    }
    None
}

fn write_family(path: &Path, m: usize, arcs: Vec<ArcCode>) -> anyhow::Result<()> {
    std::fs::write(path, FamilyFile::new(m, arcs).to_json()).with_context(|| format!("writing {}", path.display()))
}

fn read_family(path: &Path) -> anyhow::Result<(DiscModel, Vec<ArcCode>)> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let f = FamilyFile::from_json(&s)?;
    let model = make_disc_model(f.m)?;
    let codes = f.codes(&model)?;
    Ok((model, codes))
}

fn realize(model: &DiscModel, codes: &[ArcCode]) -> anyhow::Result<RealizedFamily> {
    let fam = joint_realization(codes, model)?;
    if !fam.certificate {
        return Err(Error::NotCertified.into());
    }
    Ok(fam)
}

fn verify(seed: u64, thm: u8, m: Option<usize>, n: Option<usize>, out: Option<&Path>) -> anyhow::Result<Outcome> {
    match thm {
        1 => {
            let m = m.context("--thm 1 needs --m")?;
            let model = make_disc_model(m)?;
            let codes = thm1_construction(&model);
            let mut r = Report::new("verify", VERSION, seed, json!({ "thm": 1, "m": m }));
            let fam = realize(&model, &codes)?;
            let want = m * (m - 1);
            let max = fam.pairwise_counts.iter().flatten().copied().max().unwrap_or(0);
            r.claim(Claim::new("size", codes.len() == want, format!("{} arcs, m(m-1) = {want}", codes.len())));
            r.claim(Claim::new("pairwise-at-most-1", max <= 1, format!("largest pairwise count {max}")));
            let dup = distinct_classes(&model, &codes);
            r.claim(Claim::new("distinct", dup.is_none(), dup.map_or("no homotopic pair".into(), |(i, j)| format!("arcs {i} and {j} homotopic"))));
            r.claim(Claim::new("certificate", fam.certificate, "joint minimal position"));
            r.body = json!({
                "arcs": codes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "histogram": histogram(&fam.pairwise_counts),
            });
            if let Some(p) = out {
                write_family(p, m, codes)?;
            }
            Ok(Outcome::from_claims(r))
        }
        _ => {
            let n = n.context("--thm 2 needs --n")?;
            let fam = thm2_construction(n)?;
            let mut r = Report::new("verify", VERSION, seed, json!({ "thm": 2, "n": n }));
            let want = n + n * (n - 3) + n * (n - 2) * (n - 2);
            let x = n - 2;
            r.claim(Claim::new(
                "size",
                fam.arcs.len() == want && want == x * (x + 1) * (x + 2),
                format!(
                    "{} edges + {} diagonals + {} crossing arcs = {}, formula {want}",
                    fam.edges(),
                    fam.diagonals(),
                    fam.crossing_arcs(),
                    fam.arcs.len()
                ),
            ));
            r.claim(Claim::new("pairwise-at-most-2", fam.max_count() <= 2, format!("largest pairwise count {}", fam.max_count())));
            r.claim(Claim::new("distinct", fam.distinct, "codes name distinct classes"));
            let bad: Vec<(usize, usize)> = (0..fam.arcs.len())
                .flat_map(|i| (i + 1..fam.arcs.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| !fam.minimal[i][j])
                .collect();
            r.claim(Claim::new("minimal", bad.is_empty(), format!("pairs off minimal position: {bad:?}")));
            r.body = json!({
                "arcs": fam.codes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "histogram": histogram(&fam.counts),
            });
            if let Some(p) = out {
                write_family(p, n - 1, fam.codes.clone())?;
            }
            Ok(Outcome::from_claims(r))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    seed: u64,
    v: VariantArg,
    m: usize,
    k: Option<usize>,
    length: Option<usize>,
    budget: Option<f64>,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let variant = resolve_variant(v, k)?;
    if m < 2 {
        bail!("--m must be at least 2");
    }
    let length = length.unwrap_or(variant.default_length(m));
    let budget = match budget {
        Some(b) if !(b.is_finite() && b > 0.0) => bail!("--budget must be a positive number of seconds"),
        b => b.map(Duration::from_secs_f64),
    };
    let res = search(m, variant, length, budget)?;
    let mut r = Report::new(
        "search",
        VERSION,
        seed,
        json!({ "variant": variant, "m": m, "k": variant.k(), "L": length, "budget": budget.map(|b| b.as_secs_f64()) }),
    );
    r.claim(Claim::new("exhausted", res.exhausted, format!("universe of {} classes", res.universe)));
    r.claim(Claim::new("size", res.size == res.expected, format!("found {}, formula {}", res.size, res.expected)));
    r.body = serde_json::to_value(&res)?;
    if let Some(p) = out {
        write_family(p, m, res.clique.clone())?;
    }
    let code = if !res.exhausted {
        2
    } else if r.passed {
        0
    } else {
        1
    };
    Ok(Outcome { report: r, code })
}

fn cmd_enumerate(seed: u64, m: usize, length: usize, filter: FilterArg, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let model = make_disc_model(m)?;
    let codes = enumerate_codes(&model, filter.into(), length);
    let mut r = Report::new("enumerate", VERSION, seed, json!({ "m": m, "L": length, "filter": format!("{filter:?}") }));
    r.body = json!({
        "count": codes.len(),
        "arcs": codes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if let Some(p) = out {
        write_family(p, m, codes)?;
    }
    Ok(Outcome::from_claims(r))
}

fn hypothesis_violation(mut r: Report, why: String) -> Outcome {
    r.claim(Claim::new("hypotheses", false, why));
    Outcome { report: r, code: 3 }
}

fn fish_audit(seed: u64, path: &Path) -> anyhow::Result<Outcome> {
    let (model, codes) = read_family(path)?;
    let r = Report::new("fish-audit", VERSION, seed, json!({ "family": path.display().to_string(), "m": model.m }));
    if let Some((i, j)) = distinct_classes(&model, &codes) {
        return Ok(hypothesis_violation(r, format!("arcs {i} and {j} are homotopic")));
    }
    if let Some(i) = codes.iter().position(|c| c.start.is_boundary() == c.end.is_boundary()) {
        return Ok(hypothesis_violation(r, format!("arc {i} ({}) does not join a puncture to the boundary", codes[i])));
    }
    let fam = realize(&model, &codes)?;
    let mut r = r;
    match audit_inequalities(&fam) {
        Ok(rep) => {
            r.claim(Claim::new("hypotheses", true, format!("{} arcs, pairwise at most one crossing", codes.len())));
            for v in &rep.verdicts {
                r.claim(Claim::new(v.statement.clone(), v.passed, format!("{} checked, witnesses {:?}", v.checked, v.witnesses)));
            }
            r.body = serde_json::to_value(&rep)?;
            Ok(Outcome::from_claims(r))
        }
        Err(Error::Hypothesis(why)) => Ok(hypothesis_violation(r, why)),
        Err(e) => Err(e.into()),
    }
}

fn cmd_remove(seed: u64, path: &Path, v: usize, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let (model, codes) = read_family(path)?;
    let fam = realize(&model, &codes)?;
    let rem = arcs_core::position::remove_puncture_mapped(&fam, v)?;
    let mut r = Report::new(
        "remove-puncture",
        VERSION,
        seed,
        json!({ "family": path.display().to_string(), "m": model.m, "v": v }),
    );
    let mut worse = Vec::new();
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            if let (Some(a), Some(b)) = (rem.map[i], rem.map[j]) {
                if a != b && rem.family.pairwise_counts[a][b] > fam.pairwise_counts[i][j] {
                    worse.push((i, j));
                }
            }
        }
    }
    r.claim(Claim::new("no-new-crossings", worse.is_empty(), format!("pairs with more crossings after removal: {worse:?}")));
    r.body = json!({
        "map": rem.map,
        "arcs": rem.family.arcs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if let Some(p) = out {
        write_family(p, model.m - 1, rem.family.arcs.clone())?;
    }
    Ok(Outcome::from_claims(r))
}

fn cmd_render(seed: u64, path: &Path, out: &Path, fish: bool) -> anyhow::Result<Outcome> {
    let (model, codes) = read_family(path)?;
    let fam = realize(&model, &codes)?;
    let shaded = if fish { find_fish(&fam)?.into_iter().filter(|f| f.minimal).collect() } else { Vec::new() };
    let svg = render::svg(&fam, &shaded)?;
    std::fs::write(out, &svg).with_context(|| format!("writing {}", out.display()))?;
    let mut r = Report::new(
        "render",
        VERSION,
        seed,
        json!({ "family": path.display().to_string(), "out": out.display().to_string(), "fish": fish }),
    );
    r.body = json!({ "arcs": codes.len(), "shaded_fish": shaded.len(), "bytes": svg.len() });
    Ok(Outcome::from_claims(r))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let seed = cli.seed;
    match cli.cmd {
        Cmd::Verify { thm, m, n, family_out } => verify(seed, thm, m, n, family_out.as_deref()),
        Cmd::Search { variant, m, k, length, budget, family_out } => {
            cmd_search(seed, variant, m, k, length, budget, family_out.as_deref())
        }
        Cmd::Enumerate { m, length, filter, family_out } => cmd_enumerate(seed, m, length, filter, family_out.as_deref()),
        Cmd::FishAudit { family } => fish_audit(seed, &family),
        Cmd::RemovePuncture { family, v, family_out } => cmd_remove(seed, &family, v, family_out.as_deref()),
        Cmd::Render { family, out, fish } => cmd_render(seed, &family, &out, fish),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let report_path = cli.report.clone();
    match run(cli) {
        Ok(o) => {
            let text = o.report.to_json();
            match report_path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, &text) {
                        eprintln!("error: writing {}: {e}", p.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Hypothesis(_)) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
