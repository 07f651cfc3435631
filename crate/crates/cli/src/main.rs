//! `qgroupoid`: command-line access to the library.
//!
//! Exit status 0 means success, 1 a mathematical failure (violated axiom,
//! non-vacant input, inexact sequence) and 2 a malformed input or usage.

use clap::{Parser, Subcommand, ValueEnum};
use qgroupoid::cocycle::{CocyclePair, CocycleSpace, DEFAULT_BUDGET};
use qgroupoid::cohomology::{aut_and_opext, groupoid_cohomology, kac_report, Coefficients, Normalization};
use qgroupoid::double::{vacancy_report, DoubleGroupoid, VacancyVerdict};
use qgroupoid::error::Error;
use qgroupoid::field::{Field, FieldSpec, FieldVisitor};
use qgroupoid::format::{emit, parse, CocycleTables, Document};
use qgroupoid::groupoid::Groupoid;
use qgroupoid::matched_pair::MatchedPair;
use qgroupoid::wha::{simple_algebra, unit_object_simple, QuantumGroupoid};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qgroupoid", version, about = "Finite double groupoids and their quantum groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Worker threads for the exhaustive checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Checks the axioms of any document.
    Validate {
        path: PathBuf,
        /// Double groupoid a cocycle pair lives on.
        #[arg(long)]
        double: Option<PathBuf>,
        /// Twist modulus a field specification must support.
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// Decides vacancy in all four corner formulations.
    Vacant { path: PathBuf },
    /// Matched pair to double groupoid and back.
    Convert {
        path: PathBuf,
        #[arg(long, value_enum)]
        to: Option<Kind>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Weak Hopf algebra on the boxes.
    Wha {
        #[command(subcommand)]
        action: WhaAction,
    },
    /// Normalized cocycle pairs with values in Z/m.
    Cocycles {
        #[command(subcommand)]
        action: CocycleAction,
    },
    /// Groupoid cohomology; double groupoids use their diagonal groupoid.
    Cohomology {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Coefficients F_p.
        #[arg(long, conflicts_with = "m")]
        p: Option<u64>,
        /// Coefficients Z/m; integers when neither is given.
        #[arg(long)]
        m: Option<u64>,
    },
    /// The nine-term exact sequence over F_p.
    Kac {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        strict_normalization: bool,
    },
    /// Matrix blocks of the algebra and the coalgebra.
    Blocks { path: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    DoubleGroupoid,
    MatchedPair,
}

#[derive(clap::Args, Clone)]
struct FieldArgs {
    /// Field characteristic; 0 (default) is Q.
    #[arg(long, default_value_t = 0)]
    p: u64,
    /// Root of unity used to read Z/m-valued cocycles.
    #[arg(long)]
    zeta: Option<u64>,
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WhaAction {
    /// Prints the structure constants.
    Build {
        path: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Checks every weak Hopf algebra axiom on every basis tuple.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand)]
enum CocycleAction {
    Enumerate {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Counts pairs up to gauge equivalence.
    Classes {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        strict_normalization: bool,
    },
}

/// A finished command: a verdict, a human report and a machine report.
struct Outcome {
    ok: bool,
    text: String,
    machine: Value,
}

type Res<T> = std::result::Result<T, Failure>;

/// Errors that end a command, with their exit status.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Format { kind, .. } => (2, kind.code().to_string()),
            Error::Structure(_) => (2, "structure".into()),
            Error::EmptyBase => (2, "empty_base".into()),
            Error::FieldSpec(_) => (2, "field_spec".into()),
            Error::Budget(_) => (2, "budget".into()),
            Error::Truncation(_) => (2, "truncation".into()),
            Error::Unsupported(_) => (2, "unsupported".into()),
            Error::BasisMismatch(_) => (2, "basis_mismatch".into()),
            Error::NotVacant { .. } => (1, "not_vacant".into()),
            Error::NotExact { .. } => (1, "not_exact".into()),
            Error::NotAGroup { .. } => (1, "not_a_group".into()),
            Error::NotSubgroupoid(_) => (1, "not_subgroupoid".into()),
            Error::DiagonalNotEquivalence(_) => (1, "diagonal_not_equivalence".into()),
            Error::Unembeddable(_) => (1, "unembeddable".into()),
            Error::InvalidGauge(_) => (1, "invalid_gauge".into()),
            Error::Invalid(_) => (1, "invalid".into()),
            Error::Internal(_) => (1, "internal".into()),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        kind: "usage".into(),
        message: message.into(),
    }
}

/// Accepts `name` for `name.json`.
fn resolve(path: &Path) -> PathBuf {
    if !path.exists() && path.extension().is_none() {
        let with = path.with_extension("json");
        if with.exists() {
            return with;
        }
    }
    path.to_path_buf()
}

fn load(path: &Path) -> Res<Document> {
    let path = resolve(path);
    let text = std::fs::read_to_string(&path).map_err(|e| Failure {
        code: 2,
        kind: "io".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(parse(&text)?)
}

/// A double groupoid, reading matched pairs through their vacant double.
fn load_double(path: &Path) -> Res<DoubleGroupoid> {
    match load(path)? {
        Document::DoubleGroupoid(t) => Ok(t),
        Document::MatchedPair(mp) => Ok(mp.to_vacant_double()?),
        d => Err(usage(format!("expected a double groupoid or matched pair, found {}", d.kind()))),
    }
}

fn load_cocycle(path: &Path, t: &DoubleGroupoid) -> Res<CocyclePair> {
    match load(path)? {
        Document::CocyclePair(c) => Ok(c.resolve(t)?),
        d => Err(usage(format!("expected a cocycle pair, found {}", d.kind()))),
    }
}

fn report_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn validate(path: &Path, double: Option<&Path>, m: u64) -> Res<Outcome> {
    let doc = load(path)?;
    let (ok, text, machine) = match &doc {
        Document::Groupoid(g) => {
            let r = g.validate();
            (r.is_ok(), format!("groupoid: {} objects, {} arrows\n{r}", g.n_objects(), g.n_arrows()), report_value(&r))
        }
        Document::DoubleGroupoid(t) => {
            let r = t.validate();
            let text = format!("double groupoid: {} points, {} boxes\n{r}", t.n_points(), t.n_boxes());
            (r.is_ok(), text, report_value(&r))
        }
        Document::MatchedPair(mp) => {
            let r = mp.validate();
            (r.is_ok(), format!("matched pair over {} points\n{r}", mp.n_points()), report_value(&r))
        }
        Document::CocyclePair(c) => {
            let Some(dp) = double else {
                return Err(usage("validating a cocycle pair needs --double"));
            };
            let t = load_double(dp)?;
            let cp = c.resolve(&t)?;
            let r = CocycleSpace::new(&t)?.validate(&cp)?;
            (r.is_ok(), format!("cocycle pair mod {}\n{r}", cp.modulus), report_value(&r))
        }
        Document::FieldSpec(fs) => {
            fs.zeta_for(m)?;
            (true, format!("{} supports twists mod {m}", fs.describe()), json!({ "modulus": m }))
        }
    };
    Ok(Outcome {
        ok,
        text,
        machine: json!({ "document": doc.kind(), "report": machine }),
    })
}

fn verdict_text(v: &VacancyVerdict) -> String {
    match v {
        VacancyVerdict::Vacant => "vacant".into(),
        VacancyVerdict::NonVacant {
            horizontal,
            vertical,
            fillers,
        } => format!("edges ({horizontal}, {vertical}) have {} fillers {fillers:?}", fillers.len()),
    }
}

fn vacant(path: &Path) -> Res<Outcome> {
    let t = load_double(path)?;
    let v = t.validate();
    if !v.is_ok() {
        return Err(Error::Invalid(format!("not a double groupoid: {v}")).into());
    }
    let r = vacancy_report(&t);
    let mut text = String::new();
    for (name, v) in [
        ("top-right", &r.top_right),
        ("bottom-left", &r.bottom_left),
        ("top-left", &r.top_left),
        ("bottom-right", &r.bottom_right),
    ] {
        writeln!(text, "{name:<13} {}", verdict_text(v)).unwrap();
    }
    let ok = r.top_right.is_vacant() && r.consistent();
    text.push_str(if ok { "vacant" } else { "not vacant" });
    Ok(Outcome {
        ok,
        text,
        machine: json!({ "vacant": r.top_right.is_vacant(), "consistent": r.consistent(), "corners": report_value(&r) }),
    })
}

fn convert(path: &Path, to: Option<Kind>, output: Option<&Path>) -> Res<Outcome> {
    let out = match (load(path)?, to) {
        (Document::MatchedPair(mp), None | Some(Kind::DoubleGroupoid)) => Document::DoubleGroupoid(mp.to_vacant_double()?),
        (Document::DoubleGroupoid(t), None | Some(Kind::MatchedPair)) => {
            Document::MatchedPair(MatchedPair::from_vacant_double(&t)?)
        }
        (d @ Document::MatchedPair(_), Some(Kind::MatchedPair)) | (d @ Document::DoubleGroupoid(_), Some(Kind::DoubleGroupoid)) => d,
        (d, _) => return Err(usage(format!("cannot convert a {}", d.kind()))),
    };
    let text = emit(&out);
    if let Some(o) = output {
        std::fs::write(o, &text).map_err(|e| Failure {
            code: 2,
            kind: "io".into(),
            message: format!("{}: {e}", o.display()),
        })?;
    }
    Ok(Outcome {
        ok: true,
        text: if output.is_some() { format!("wrote {}", out.kind()) } else { text.trim_end().to_string() },
        machine: json!({ "kind": out.kind() }),
    })
}

struct WhaJob<'a> {
    t: &'a DoubleGroupoid,
    cp: Option<&'a CocyclePair>,
    verify: bool,
    label: String,
}

impl FieldVisitor for WhaJob<'_> {
    type Output = Res<Outcome>;

    fn visit<F: Field + 'static>(self, field: F, zeta: F::Elem) -> Res<Outcome> {
        let w = match self.cp {
            Some(cp) => QuantumGroupoid::build_twisted(self.t, cp, field.clone(), &zeta)?,
            None => QuantumGroupoid::build(self.t, field.clone())?,
        };
        let r = |x: &F::Elem| field.render(x);
        let mut text = String::new();
        writeln!(text, "field: {}", self.label).unwrap();
        writeln!(text, "dimension: {}", w.dim()).unwrap();
        writeln!(text, "twisted: {}", w.is_twisted()).unwrap();
        if self.verify {
            let rep = w.verify_axioms();
            let involutory = w.check_involutory();
            let hopf = w.is_hopf()?;
            writeln!(text, "{rep}").unwrap();
            writeln!(text, "involutory: {involutory}").unwrap();
            write!(text, "hopf: {hopf}").unwrap();
            return Ok(Outcome {
                ok: rep.is_ok() && involutory,
                text,
                machine: json!({
                    "dimension": w.dim(),
                    "twisted": w.is_twisted(),
                    "axioms": report_value(&rep),
                    "involutory": involutory,
                    "hopf": hopf,
                }),
            });
        }
        let n = w.dim();
        let mut products = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some((c, s)) = w.product_entry(a, b) {
                    products.push(json!([a, b, c, r(s)]));
                }
            }
        }
        let coproducts: Vec<Value> = (0..n)
            .flat_map(|a| w.coproduct_entry(a).iter().map(move |(b, c, s)| (a, *b, *c, s.clone())))
            .map(|(a, b, c, s)| json!([a, b, c, r(&s)]))
            .collect();
        let antipode: Vec<Value> = (0..n)
            .map(|a| {
                let (b, s) = w.antipode_entry(a);
                json!([a, b, r(s)])
            })
            .collect();
        let counit: Vec<usize> = (0..n).filter(|&a| w.counit_entry(a)).collect();
        let unit: Vec<usize> = w.unit().terms().keys().copied().collect();
        let defect = w.delta_one_defect();
        let hopf = w.is_hopf()?;
        writeln!(text, "unit: sum of boxes {unit:?}").unwrap();
        writeln!(text, "counit: 1 on boxes {counit:?}").unwrap();
        writeln!(text, "nonzero products: {}", products.len()).unwrap();
        writeln!(text, "coproduct terms: {}", coproducts.len()).unwrap();
        for (a, v) in antipode.iter().enumerate() {
            writeln!(text, "S({a}) = {} * box {}", v[2].as_str().unwrap(), v[1]).unwrap();
        }
        writeln!(text, "hopf: {hopf}").unwrap();
        if !hopf {
            let shown: Vec<String> = defect
                .terms()
                .iter()
                .take(8)
                .map(|((a, b), c)| format!("{}*({a}⊗{b})", r(c)))
                .collect();
            writeln!(text, "Δ(1) - 1⊗1 = {} ...", shown.join(" + ")).unwrap();
        }
        write!(text, "involutory: {}", w.check_involutory()).unwrap();
        Ok(Outcome {
            ok: true,
            text,
            machine: json!({
                "dimension": n,
                "twisted": w.is_twisted(),
                "product": products,
                "coproduct": coproducts,
                "counit": counit,
                "antipode": antipode,
                "unit": unit,
                "hopf": hopf,
                "involutory": w.check_involutory(),
            }),
        })
    }
}

fn wha(path: &Path, args: &FieldArgs, verify: bool) -> Res<Outcome> {
    let t = load_double(path)?;
    let cp = args.cocycle.as_deref().map(|c| load_cocycle(c, &t)).transpose()?;
    let m = cp.as_ref().map_or(1, |c| c.modulus);
    let fs = FieldSpec {
        characteristic: args.p,
        zeta: args.zeta,
    };
    let job = WhaJob {
        t: &t,
        cp: cp.as_ref(),
        verify,
        label: fs.describe(),
    };
    fs.visit(m, job)?
}

fn cocycles_enumerate(path: &Path, m: u64, budget: u64) -> Res<Outcome> {
    let t = load_double(path)?;
    let space = CocycleSpace::new(&t)?;
    let pairs = space.enumerate_propagating(m, budget)?;
    let mut text = format!("{} normalized cocycle pairs mod {m}\n", pairs.len());
    let mut docs = Vec::new();
    for (i, cp) in pairs.iter().enumerate() {
        let tables = CocycleTables::from_pair(&t, cp)?;
        let nz = |rows: &[(usize, usize, u64)]| rows.iter().filter(|r| r.2 != 0).count();
        writeln!(text, "#{i}: sigma nonzero on {} pairs, tau on {}", nz(&tables.sigma), nz(&tables.tau)).unwrap();
        docs.push(serde_json::from_str::<Value>(&emit(&Document::CocyclePair(tables))).expect("emitted JSON"));
    }
    Ok(Outcome {
        ok: true,
        text: text.trim_end().to_string(),
        machine: json!({ "modulus": m, "count": pairs.len(), "pairs": docs }),
    })
}

fn cocycles_classes(path: &Path, m: u64, budget: u64, norm: Normalization) -> Res<Outcome> {
    let t = load_double(path)?;
    let space = CocycleSpace::new(&t)?;
    let pairs = space.enumerate_propagating(m, budget)?;
    let orbits = space.gauge_orbits(&pairs)?;
    let (aut, opext) = aut_and_opext(&t, m, norm)?;
    let agree = opext.order_u64() == Some(orbits.len() as u64);
    let text = format!(
        "{} pairs, {} gauge classes mod {m}\nH^1(Tot A, Z/{m}) = {opext} (order {})\nH^0(Tot A, Z/{m}) = {aut}\n{}",
        pairs.len(),
        orbits.len(),
        opext.order().map_or("infinite".into(), |o| o.to_string()),
        if agree { "class count matches the extension group" } else { "class count DIFFERS from the extension group" }
    );
    Ok(Outcome {
        ok: agree,
        text,
        machine: json!({
            "modulus": m,
            "pairs": pairs.len(),
            "classes": orbits,
            "class_count": orbits.len(),
            "extension_group": report_value(&opext),
            "automorphism_group": report_value(&aut),
            "agree": agree,
        }),
    })
}

fn cohomology(path: &Path, degree: usize, p: Option<u64>, m: Option<u64>) -> Res<Outcome> {
    let (g, what): (Groupoid, &str) = match load(path)? {
        Document::Groupoid(g) => (g, "groupoid"),
        Document::MatchedPair(mp) => (mp.diagonal_groupoid()?.groupoid, "diagonal groupoid"),
        Document::DoubleGroupoid(t) => (MatchedPair::from_vacant_double(&t)?.diagonal_groupoid()?.groupoid, "diagonal groupoid"),
        d => return Err(usage(format!("no cohomology for a {}", d.kind()))),
    };
    let coeffs = match (p, m) {
        (Some(p), _) => Coefficients::Prime(p),
        (None, Some(m)) => Coefficients::Cyclic(m),
        (None, None) => Coefficients::Integers,
    };
    let groups = groupoid_cohomology(&g, degree, coeffs)?;
    let mut text = format!("{what}: {} objects, {} arrows; coefficients {coeffs:?}\n", g.n_objects(), g.n_arrows());
    for (n, h) in groups.iter().enumerate() {
        writeln!(text, "H^{n} = {h}").unwrap();
    }
    Ok(Outcome {
        ok: true,
        text: text.trim_end().to_string(),
        machine: json!({ "coefficients": report_value(&coeffs), "groups": report_value(&groups) }),
    })
}

fn kac(path: &Path, p: u64, norm: Normalization) -> Res<Outcome> {
    let t = load_double(path)?;
    let r = kac_report(&t, p, norm)?;
    let dims: Vec<String> = r.nodes.iter().map(|n| n.dimension.to_string()).collect();
    Ok(Outcome {
        ok: r.is_ok(),
        text: format!("dimensions: {}\n{r}", dims.join(" ")),
        machine: report_value(&r),
    })
}

fn blocks(path: &Path) -> Res<Outcome> {
    let t = load_double(path)?;
    let w = QuantumGroupoid::build(&t, qgroupoid::field::Rationals)?;
    let bs = w.block_structure()?;
    let uo = w.unit_object()?;
    let sa = simple_algebra(&t)?;
    let mut text = String::new();
    writeln!(text, "algebra: {} blocks", bs.algebra.len()).unwrap();
    for b in &bs.algebra {
        writeln!(text, "  edge {}: |B(x)| = {}, n = {}", b.representative, b.group_order, b.size).unwrap();
    }
    writeln!(text, "  sum |B(x)| n^2 = {}", bs.algebra_dimension()).unwrap();
    writeln!(text, "coalgebra: {} blocks", bs.coalgebra.len()).unwrap();
    for b in &bs.coalgebra {
        writeln!(text, "  edge {}: |B(g)| = {}, m = {}", b.representative, b.group_order, b.size).unwrap();
    }
    writeln!(text, "  sum |B(g)| m^2 = {}", bs.coalgebra_dimension()).unwrap();
    writeln!(text, "simple algebra: {} (conditions {:?})", sa.simple, sa.conditions).unwrap();
    write!(text, "unit object simple: {} (summands {:?})", uo.simple, uo.summands).unwrap();
    let ok = bs.algebra_dimension() == w.dim() && bs.coalgebra_dimension() == w.dim() && uo.simple == unit_object_simple(&t);
    Ok(Outcome {
        ok,
        text,
        machine: json!({
            "dimension": w.dim(),
            "blocks": report_value(&bs),
            "simple_algebra": report_value(&sa),
            "unit_object": report_value(&uo),
        }),
    })
}

fn normalization(strict: bool) -> Normalization {
    if strict {
        Normalization::Strict
    } else {
        Normalization::Full
    }
}

fn run(cli: &Cli) -> Res<(&'static str, Outcome)> {
    Ok(match &cli.command {
        Command::Validate { path, double, m } => ("validate", validate(path, double.as_deref(), *m)?),
        Command::Vacant { path } => ("vacant", vacant(path)?),
        Command::Convert { path, to, output } => ("convert", convert(path, *to, output.as_deref())?),
        Command::Wha { action: WhaAction::Build { path, field } } => ("wha build", wha(path, field, false)?),
        Command::Wha { action: WhaAction::Verify { path, field } } => ("wha verify", wha(path, field, true)?),
        Command::Cocycles { action: CocycleAction::Enumerate { path, m, budget } } => {
            ("cocycles enumerate", cocycles_enumerate(path, *m, *budget)?)
        }
        Command::Cocycles {
            action: CocycleAction::Classes {
                path,
                m,
                budget,
                strict_normalization,
            },
        } => ("cocycles classes", cocycles_classes(path, *m, *budget, normalization(*strict_normalization))?),
        Command::Cohomology { path, degree, p, m } => ("cohomology", cohomology(path, *degree, *p, *m)?),
        Command::Kac {
            path,
            p,
            strict_normalization,
        } => ("kac", kac(path, *p, normalization(*strict_normalization))?),
        Command::Blocks { path } => ("blocks", blocks(path)?),
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn print_out(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("cannot set up {k} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let machine = cli.format == OutputFormat::Machine;
    match run(&cli) {
        Ok((command, out)) => {
            if machine {
                let doc = json!({
                    "kind": "report",
                    "version": "1",
                    "command": command,
                    "ok": out.ok,
                    "result": out.machine,
                });
                print_out(&serde_json::to_string_pretty(&doc).expect("JSON"));
            } else {
                print_out(&out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            if machine {
                let doc = json!({
                    "kind": "report",
                    "version": "1",
                    "ok": false,
                    "error": { "kind": f.kind, "message": f.message },
                });
                print_out(&serde_json::to_string_pretty(&doc).expect("JSON"));
            } else {
                eprintln!("error ({}): {}", f.kind, f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
