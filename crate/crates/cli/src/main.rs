//! `nilgroup`: analyze group files, extract nilpotent subgroups, run the
//! subgroup census, emit witness groups and check certificates.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use nilgroup::format::{certificate_from_json, certificate_to_value, element_to_json, GroupFile, Header};
use nilgroup::group::{center, min_generator_count, FiniteGroup};
use nilgroup::jordan::{
    characteristic_abelian_with, dn_extract, groupmain_extract_with, subgroup_census_with, verify_certificate, Mode,
};
use nilgroup::nilpotent::{
    is_nilpotent_of_class_at_most, lower_central_series, sylow_product_check, upper_central_series, TupleMethod,
};
use nilgroup::witness::{generators, FamilySpec};
use nilgroup::Error;

#[derive(Parser)]
#[command(name = "nilgroup", version, about = "Exact finite group analysis and nilpotent subgroup extraction")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest group order enumerated.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_order: usize,
    /// Seed for sampled commutator checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Dn,
    Jor,
    Groupmain,
    GroupmainNogen,
}

#[derive(Subcommand)]
enum Command {
    /// Order, center, central series, class, Sylow verdict and rank.
    Analyze { file: String },
    /// Extract a nilpotent subgroup and print its certificate.
    Extract {
        file: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Class bound `c`; required except for `jor`.
        #[arg(long)]
        class_bound: Option<usize>,
    },
    /// List the subgroups of a given index by both methods.
    Census {
        file: String,
        #[arg(long)]
        index: usize,
    },
    /// Print the group file of a standard family.
    Witness {
        /// heisenberg, cyclic, elementary-abelian, dihedral, quaternion or
        /// semilinear-example; omit when passing --spec.
        family: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        /// Catalog name for semilinear-example.
        #[arg(long)]
        name: Option<String>,
        /// A family given as JSON, e.g. a direct product.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Re-check a certificate against a group file.
    Verify { certificate: String, file: String },
}

enum Failure {
    Error(Error),
    Io(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::InvalidParameter(_)
        | Error::IncompatibleGenerators(_)
        | Error::DivisionByZero
        | Error::Singular
        | Error::ElementNotInGroup => 2,
        Error::CapExceeded { .. } | Error::CensusCapExceeded(_) => 3,
        Error::Internal(_) => 1,
        _ => 4,
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn load(path: &str, max_order: usize) -> Result<(GroupFile, FiniteGroup), Failure> {
    let file = GroupFile::parse(&read(path)?)?;
    let g = file.group(max_order)?;
    Ok((file, g))
}

fn elements(h: &Header, xs: &[nilgroup::group::GroupElement]) -> Result<Vec<Value>, Failure> {
    Ok(xs.iter().map(|x| element_to_json(h, x)).collect::<Result<_, _>>()?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SubgroupSummary {
    order: usize,
    generators: Vec<Value>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SylowEntry {
    prime: u64,
    order: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SylowSummary {
    subgroups: Vec<SylowEntry>,
    pairwise_commute: bool,
    product_is_bijective: bool,
    is_direct_product: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TupleSummary {
    n: usize,
    method: &'static str,
    samples: Option<usize>,
    tuples_vanish: bool,
    agrees: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeReport {
    order: usize,
    abelian: bool,
    center: SubgroupSummary,
    lower_central_series: Vec<usize>,
    upper_central_series: Vec<usize>,
    class: Option<usize>,
    series_agree: bool,
    tuple_check: Option<TupleSummary>,
    sylow: SylowSummary,
    min_generator_count: usize,
}

fn analyze(cli: &Cli, path: &str) -> Result<Value, Failure> {
    let (file, g) = load(path, cli.max_order)?;
    let z = center(&g);
    let lower = lower_central_series(&g);
    let upper = upper_central_series(&g);
    let tuple_check = lower.class.map(|c| {
        let check = is_nilpotent_of_class_at_most(&g, c, cli.seed);
        let (method, samples) = match check.method {
            TupleMethod::Exhaustive => ("exhaustive", None),
            TupleMethod::Sampled { samples, .. } => ("sampled", Some(samples)),
        };
        TupleSummary {
            n: c,
            method,
            samples,
            tuples_vanish: check.tuples_vanish,
            agrees: check.agrees(),
        }
    });
    let sylow = sylow_product_check(&g);
    let report = AnalyzeReport {
        order: g.order(),
        abelian: g.is_abelian(),
        center: SubgroupSummary {
            order: z.order(),
            generators: elements(&file.header, z.generators())?,
        },
        lower_central_series: lower.orders(),
        upper_central_series: upper.orders(),
        class: lower.class,
        series_agree: lower.class == upper.class,
        tuple_check,
        sylow: SylowSummary {
            subgroups: sylow
                .subgroups
                .iter()
                .map(|(p, s)| SylowEntry {
                    prime: *p,
                    order: s.order(),
                })
                .collect(),
            pairwise_commute: sylow.pairwise_commute,
            product_is_bijective: sylow.product_is_bijective,
            is_direct_product: sylow.is_direct_product,
        },
        min_generator_count: min_generator_count(&g)?,
    };
    Ok(serde_json::to_value(report).expect("serializable"))
}

fn extract(cli: &Cli, path: &str, mode: ModeArg, c: Option<usize>) -> Result<Value, Failure> {
    let (file, g) = load(path, cli.max_order)?;
    let limits = file.caps.limits();
    let need_c = || c.ok_or_else(|| Error::InvalidParameter("--class-bound is required for this mode".into()));
    let cert = match mode {
        ModeArg::Jor => characteristic_abelian_with(&g, &limits)?,
        ModeArg::Dn => dn_extract(&g, g.generators(), need_c()?)?,
        ModeArg::Groupmain => groupmain_extract_with(&g, need_c()?, Mode::Groupmain, &limits)?,
        ModeArg::GroupmainNogen => groupmain_extract_with(&g, need_c()?, Mode::GroupmainNogen, &limits)?,
    };
    Ok(certificate_to_value(&cert, &file.header)?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CensusReport {
    index: usize,
    count: usize,
    generator_count: usize,
    bound: u64,
    homomorphisms: u64,
    transitive: u64,
    methods_agree: bool,
    subgroups: Vec<SubgroupSummary>,
}

fn census(cli: &Cli, path: &str, j: usize) -> Result<Value, Failure> {
    let (file, g) = load(path, cli.max_order)?;
    let r = subgroup_census_with(&g, j, &file.caps.limits())?;
    let subgroups = r
        .subgroups
        .iter()
        .map(|s| {
            Ok(SubgroupSummary {
                order: s.order(),
                generators: elements(&file.header, s.generators())?,
            })
        })
        .collect::<Result<_, Failure>>()?;
    let report = CensusReport {
        index: j,
        count: r.count(),
        generator_count: r.generator_count,
        bound: r.bound,
        homomorphisms: r.homomorphisms,
        transitive: r.transitive,
        methods_agree: r.methods_agree,
        subgroups,
    };
    Ok(serde_json::to_value(report).expect("serializable"))
}

fn family_spec(
    family: Option<&str>,
    p: Option<u64>,
    n: Option<usize>,
    name: Option<&str>,
    spec: Option<&str>,
) -> Result<FamilySpec, Error> {
    if let Some(s) = spec {
        return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
    }
    let missing = |flag: &str| Error::InvalidParameter(format!("{flag} is required for this family"));
    let family = family.ok_or_else(|| Error::InvalidParameter("give a family or --spec".into()))?;
    Ok(match family.replace('_', "-").as_str() {
        "heisenberg" => FamilySpec::Heisenberg { p: p.ok_or_else(|| missing("--p"))? },
        "cyclic" => FamilySpec::Cyclic { n: n.ok_or_else(|| missing("--n"))? },
        "elementary-abelian" => FamilySpec::ElementaryAbelian {
            p: p.ok_or_else(|| missing("--p"))?,
            n: n.ok_or_else(|| missing("--n"))?,
        },
        "dihedral" => FamilySpec::Dihedral { n: n.ok_or_else(|| missing("--n"))? },
        "quaternion" => FamilySpec::Quaternion { n: n.ok_or_else(|| missing("--n"))? },
        "semilinear-example" => FamilySpec::SemilinearExample {
            name: name.ok_or_else(|| missing("--name"))?.to_string(),
        },
        other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
    })
}

fn witness(spec: FamilySpec) -> Result<String, Failure> {
    let file = GroupFile::from_generators(generators(&spec)?)?;
    Ok(file.to_json()?)
}

fn verify(cli: &Cli, cert_path: &str, path: &str) -> Result<Value, Failure> {
    let (file, g) = load(path, cli.max_order)?;
    let cert = certificate_from_json(&read(cert_path)?, &file.header)?;
    let v = verify_certificate(&cert, &g);
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|(name, ok)| serde_json::json!({"name": name, "passed": ok}))
        .collect();
    let report = serde_json::json!({
        "valid": v.passed(),
        "failedCheck": v.failure(),
        "checks": checks,
    });
    if v.passed() {
        Ok(report)
    } else {
        Err(Failure::Verification(report))
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for i in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render_text(i, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => {
            let mut out = String::new();
            render_text(v, 0, &mut out);
            print!("{out}");
        }
    }
}

fn run(cli: &Cli) -> Result<Option<Value>, Failure> {
    match &cli.command {
        Command::Analyze { file } => analyze(cli, file).map(Some),
        Command::Extract { file, mode, class_bound } => extract(cli, file, *mode, *class_bound).map(Some),
        Command::Census { file, index } => census(cli, file, *index).map(Some),
        Command::Witness {
            family,
            p,
            n,
            name,
            spec,
        } => {
            let spec = family_spec(family.as_deref(), *p, *n, name.as_deref(), spec.as_deref())?;
            // group files are always JSON
            print!("{}", witness(spec)?);
            Ok(None)
        }
        Command::Verify { certificate, file } => verify(cli, certificate, file).map(Some),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(v)) => {
            emit(cli.format, &v);
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Verification(v)) => {
            emit(cli.format, &v);
            ExitCode::from(5)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
