use std::fmt::Write;
use std::sync::Arc;

use dtk_core::families::{cycle_freezing_set, tree_leaves, wedge_freezing_set_of};
use dtk_core::io::{format_points, render_grid};
use dtk_core::plane::{
    analyze_disk, construct_corner_freezing, construct_freezing_bd1, construct_freezing_c1,
    construct_freezing_c1_union, construct_freezing_c2, construct_freezing_c2_union,
};
use dtk_core::shy::{tree_shy_retraction, verify_unique_shy_retraction};
use dtk_core::{Adjacency, DigitalImage, Error, PointSet, SearchConfig, VerificationReport, Verifier};
use serde_json::{json, Map, Value};

use crate::input::{InputError, Inputs};
use crate::report::{self, fmt_set};
use crate::{Cli, Command, Method, OutputFormat, PropertyArg, RunArgs};

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

enum Failure {
    Input(InputError),
    Core(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(InputError::Io(..)) => "io",
            Failure::Input(InputError::Core(_, e)) | Failure::Core(e) => match e {
                Error::Parse { .. } => "parse",
                Error::BudgetExceeded { .. } => "budget_exceeded",
                Error::Hypothesis(_) | Error::NotADisk(_) | Error::CertificationLimit { .. } | Error::BaseFails(_) => {
                    "hypothesis"
                }
                Error::Internal(_) => "internal",
                _ => "invalid_input",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// What a command produced: the machine result, its text form, and the
/// exit code.
struct Outcome {
    result: Value,
    text: String,
    exit: u8,
}

pub fn run(cli: &Cli) -> u8 {
    let mut inputs = Inputs::new();
    let (echo, output) = echo(&cli.command);
    let outcome = match &cli.command {
        Command::Analyze { image, .. } => analyze(&mut inputs, image),
        Command::Verify { property, image, set, run } => verify(&mut inputs, *property, image, set, run),
        Command::Construct {
            method,
            image,
            set,
            and_verify,
            assume_minimal,
            run,
        } => construct(&mut inputs, *method, image, set, *and_verify, *assume_minimal, run),
        Command::Render { image, set } => render(&mut inputs, image, set.as_deref()),
    };
    let exit = match &outcome {
        Ok(o) => o.exit,
        Err(_) => EXIT_ERROR,
    };
    match output {
        OutputFormat::Machine => {
            let mut doc = Map::new();
            doc.insert("command".into(), echo);
            doc.insert(
                "inputs".into(),
                inputs
                    .files
                    .iter()
                    .map(|f| json!({"role": f.role, "path": f.path.display().to_string(), "sha256": f.sha256}))
                    .collect(),
            );
            match &outcome {
                Ok(o) => {
                    doc.insert("result".into(), o.result.clone());
                }
                Err(e) => {
                    doc.insert("error".into(), json!({"kind": e.kind(), "message": e.message()}));
                }
            }
            doc.insert("exit_code".into(), json!(exit));
            println!("{}", serde_json::to_string(&Value::Object(doc)).expect("JSON values serialize"));
        }
        OutputFormat::Text => match &outcome {
            Ok(o) => print!("{}", o.text),
            Err(e) => eprintln!("error ({}): {}", e.kind(), e.message()),
        },
    }
    exit
}

fn echo(cmd: &Command) -> (Value, OutputFormat) {
    let adj = |i: &crate::ImageArgs| {
        json!({
            "image": i.image.display().to_string(),
            "adjacency": i.adjacency,
            "np": i.np,
            "explicit": i.explicit.as_ref().map(|p| p.display().to_string()),
        })
    };
    let run_echo = |r: &RunArgs| json!({"budget": r.budget, "jobs": r.jobs});
    match cmd {
        Command::Analyze { image, output } => (json!({"verb": "analyze", "image": adj(image)}), *output),
        Command::Verify { property, image, set, run } => (
            json!({
                "verb": "verify",
                "property": value_name(*property),
                "image": adj(image),
                "set": set.display().to_string(),
                "run": run_echo(run),
            }),
            run.output,
        ),
        Command::Construct {
            method,
            image,
            set,
            and_verify,
            assume_minimal,
            run,
        } => (
            json!({
                "verb": "construct",
                "method": value_name(*method),
                "image": adj(image),
                "set": set.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                "and_verify": and_verify,
                "assume_minimal": assume_minimal,
                "run": run_echo(run),
            }),
            run.output,
        ),
        Command::Render { image, set } => (
            json!({
                "verb": "render",
                "image": adj(image),
                "set": set.as_ref().map(|p| p.display().to_string()),
            }),
            OutputFormat::Text,
        ),
    }
}

fn value_name<T: clap::ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn config(run: &RunArgs) -> SearchConfig {
    let cfg = SearchConfig::from_env().with_jobs(run.jobs);
    match run.budget {
        Some(b) => cfg.with_budget(b),
        None => cfg,
    }
}

fn verify_property(
    v: &Verifier,
    property: PropertyArg,
    x: &Arc<DigitalImage>,
    a: &PointSet,
) -> Result<VerificationReport, Error> {
    match property {
        PropertyArg::Freezing => v.verify_freezing(x, a),
        PropertyArg::Cold => v.verify_cold(x, a),
        PropertyArg::Unifying => v.verify_unifying(x, a),
        PropertyArg::MinimalFreezing => v.verify_minimal_freezing(x, a),
        PropertyArg::MinimalUnifying => v.verify_minimal_unifying(x, a),
        PropertyArg::AfpPropagation => v.verify_afp_propagation(x, a),
        PropertyArg::ForcedIsomorphism => v.verify_forced_isomorphism(x, a),
        PropertyArg::UniqueShyRetraction => verify_unique_shy_retraction(x, a, &v.config),
    }
}

fn verification_outcome(r: &VerificationReport) -> Outcome {
    let mut text = String::new();
    report::verification_text(r, &mut text, 0);
    Outcome {
        result: report::verification(r),
        text,
        exit: if r.holds { EXIT_HOLDS } else { EXIT_FAILS },
    }
}

fn verify(
    inputs: &mut Inputs,
    property: PropertyArg,
    image: &crate::ImageArgs,
    set: &std::path::Path,
    run: &RunArgs,
) -> Result<Outcome, Failure> {
    let x = inputs.image(image)?;
    let a = inputs.set(set)?;
    let r = verify_property(&Verifier::new(config(run)), property, &x, &a)?;
    let mut o = verification_outcome(&r);
    o.result = json!({"image": report::image(&x), "set": report::points(&a), "verification": o.result});
    Ok(o)
}

fn analyze(inputs: &mut Inputs, image: &crate::ImageArgs) -> Result<Outcome, Failure> {
    let x = inputs.image(image)?;
    let comps = x.components();
    let mut result = Map::new();
    result.insert("image".into(), report::image(&x));
    result.insert("connected".into(), json!(x.is_connected()));
    result.insert("component_sizes".into(), json!(comps.iter().map(|c| c.len()).collect::<Vec<_>>()));
    let mut text = String::new();
    let _ = writeln!(text, "points: {}", x.len());
    let _ = writeln!(text, "dimension: {}", x.dimension());
    let _ = writeln!(text, "adjacency: {}", x.adjacency());
    let _ = writeln!(text, "edges: {}", x.edge_count());
    let _ = writeln!(text, "components: {}", comps.len());
    if x.is_lattice() {
        let bd1 = x.boundary(1)?;
        let mut bounds = Map::new();
        bounds.insert("bd1".into(), report::points(&bd1));
        let _ = writeln!(text, "Bd1 ({} points): {}", bd1.len(), fmt_set(&bd1));
        if x.dimension() >= 2 {
            let bd2 = x.boundary(2)?;
            let extra: PointSet = bd2.difference(&bd1).cloned().collect();
            bounds.insert("bd2".into(), report::points(&bd2));
            bounds.insert("bd2_minus_bd1".into(), report::points(&extra));
            let _ = writeln!(text, "Bd2 ({} points): {}", bd2.len(), fmt_set(&bd2));
            let _ = writeln!(text, "Bd2 \\ Bd1: {}", fmt_set(&extra));
        }
        result.insert("boundary".into(), Value::Object(bounds));
    }
    if x.is_lattice() && x.dimension() == 2 {
        let disk = match analyze_disk(&x.point_set()) {
            Ok(a) => {
                let _ = writeln!(text, "disk: yes");
                let _ = writeln!(text, "  bounding curve ({} points): {}", a.curve.len(), fmt_seq(a.curve.points()));
                let _ = writeln!(text, "  interior: {}", fmt_set(&a.interior));
                for v in &a.vertices {
                    let _ = writeln!(text, "  vertex {} angle {}", v.point, v.angle);
                }
                let _ = writeln!(text, "  thick: {}", yes_no(a.thick));
                for f in &a.thickness_failures {
                    let _ = writeln!(text, "    fails at {} ({:?})", f.point, f.rule);
                }
                let _ = writeln!(text, "  convex: {}", yes_no(a.convex));
                let mut v = serde_json::to_value(&a).expect("analysis serializes");
                v.as_object_mut().unwrap().insert("is_disk".into(), json!(true));
                v
            }
            Err(e @ (Error::NotADisk(_) | Error::NotAClosedCurve(_) | Error::Disconnected)) => {
                let _ = writeln!(text, "disk: no ({e})");
                json!({"is_disk": false, "reason": e.to_string()})
            }
            Err(e) => return Err(e.into()),
        };
        result.insert("disk".into(), disk);
    }
    Ok(Outcome {
        result: Value::Object(result),
        text,
        exit: EXIT_HOLDS,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_seq(s: &[dtk_core::Point]) -> String {
    s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn require_cu(x: &DigitalImage, u: usize, method: Method) -> Result<(), Error> {
    if *x.adjacency() != Adjacency::Cu(u) || x.dimension() != 2 {
        return Err(Error::Hypothesis(format!(
            "method {} needs a planar image with --adjacency c{u}",
            value_name(method)
        )));
    }
    Ok(())
}

fn construct(
    inputs: &mut Inputs,
    method: Method,
    image: &crate::ImageArgs,
    sets: &[std::path::PathBuf],
    and_verify: bool,
    assume_minimal: bool,
    run: &RunArgs,
) -> Result<Outcome, Failure> {
    let x = inputs.image(image)?;
    let mut extra = Vec::new();
    for p in sets {
        extra.push(inputs.set(p)?);
    }
    let verifier = Verifier::new(config(run));
    let mut result = Map::new();
    result.insert("method".into(), json!(value_name(method)));
    result.insert("image".into(), report::image(&x));
    let mut text = format!("# method: {}\n", value_name(method));

    if method == Method::ShyRetraction {
        let [r] = &extra[..] else {
            return Err(Error::Hypothesis("shy-retraction needs exactly one --set with the subtree".into()).into());
        };
        let f = tree_shy_retraction(&x, r)?;
        result.insert("retract".into(), report::points(r));
        result.insert("map".into(), report::map(&f));
        for (p, q) in f.pairs() {
            let _ = writeln!(text, "{p} -> {q}");
        }
        let mut exit = EXIT_HOLDS;
        if and_verify {
            let rep = verify_unique_shy_retraction(&x, r, &verifier.config)?;
            let agrees = rep.holds && rep.witnesses.first().is_none_or(|w| *w == f);
            exit = if agrees { EXIT_HOLDS } else { EXIT_FAILS };
            comment_verification(&rep, &mut text);
            result.insert("verification".into(), report::verification(&rep));
        }
        return Ok(Outcome {
            result: Value::Object(result),
            text,
            exit,
        });
    }

    let set = match method {
        Method::Bd1 => construct_freezing_bd1(&x)?,
        Method::Corners => construct_corner_freezing(&x)?,
        Method::DiskC1 => {
            require_cu(&x, 1, method)?;
            construct_freezing_c1(&x.point_set())?.set
        }
        Method::DiskC2 => {
            require_cu(&x, 2, method)?;
            let c = construct_freezing_c2(&x.point_set(), assume_minimal)?;
            result.insert("assumed_minimal".into(), json!(c.assumed_minimal));
            c.set
        }
        Method::DisksC1 | Method::DisksC2 => {
            let u = if method == Method::DisksC1 { 1 } else { 2 };
            require_cu(&x, u, method)?;
            if extra.is_empty() {
                return Err(Error::Hypothesis("pass each disk with --set".into()).into());
            }
            if u == 1 {
                construct_freezing_c1_union(&x.point_set(), &extra)?
            } else {
                construct_freezing_c2_union(&x.point_set(), &extra)?
            }
        }
        Method::CycleTriple => cycle_freezing_set(&x)?,
        Method::TreeLeaves => tree_leaves(&x)?,
        Method::Wedge => wedge_freezing_set_of(&x)?,
        Method::ShyRetraction => unreachable!("handled above"),
    };
    result.insert("set".into(), report::points(&set));
    let _ = writeln!(text, "# {} points", set.len());
    text.push_str(&format_points(&set));
    let mut exit = EXIT_HOLDS;
    if and_verify {
        let rep = verifier.verify_freezing(&x, &set)?;
        exit = if rep.holds { EXIT_HOLDS } else { EXIT_FAILS };
        comment_verification(&rep, &mut text);
        result.insert("verification".into(), report::verification(&rep));
    }
    Ok(Outcome {
        result: Value::Object(result),
        text,
        exit,
    })
}

/// The verification as `#` comment lines, so construct output stays a
/// valid points file.
fn comment_verification(rep: &VerificationReport, text: &mut String) {
    let mut t = String::new();
    report::verification_text(rep, &mut t, 0);
    for line in t.lines() {
        let _ = writeln!(text, "# {line}");
    }
}

fn render(inputs: &mut Inputs, image: &crate::ImageArgs, set: Option<&std::path::Path>) -> Result<Outcome, Failure> {
    let x = inputs.image(image)?;
    let overlay = set.map(|p| inputs.set(p)).transpose()?;
    let text = render_grid(&x.point_set(), overlay.as_ref())?;
    Ok(Outcome {
        result: json!({"grid": text}),
        text,
        exit: EXIT_HOLDS,
    })
}
