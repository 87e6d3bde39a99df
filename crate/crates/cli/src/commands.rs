use std::collections::BTreeSet;
use std::path::Path;

use reflectk::equivalence::{apply_moves, random_orbit_probe};
use reflectk::families::{
    build_const_gq, build_ks, build_kt, build_twisted, enum_sym_classes, enum_tri_classes, enum_twisted_classes,
};
use reflectk::linalg::MatJson;
use reflectk::rmatrix::RBundle;
use reflectk::scalar::parse_scalar;
use reflectk::verify::{
    check_const_identities, check_const_twisted, check_ctre, check_re, check_regular, check_tre, check_unitary,
    check_ybe,
};
use reflectk::{
    Bindings, ConstPair, EquivMove, Flavor, Involution, Mat, Mode, SymClass, TriClass, TwistedClass, TwistedKind, Var,
    VerifyReport,
};
use serde::{Deserialize, Serialize};

use crate::args::*;
use crate::io::{emit, parse, read, to_text};

pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Outcome {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

type Result<T> = std::result::Result<T, String>;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => verify(a),
        Command::Orbit(a) => orbit(a),
        Command::Report(a) => report(a),
    }
}

fn mode(c: &Check) -> Mode {
    match c.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Sampled => Mode::sampled(c.samples),
    }
}

fn flavor(f: FlavorArg) -> Flavor {
    match f {
        FlavorArg::Re => Flavor::Re,
        FlavorArg::Ctre => Flavor::Ctre,
    }
}

/// Constant pair on disk: `{"l": .., "g": <matrix>, "q": <matrix>}`.
#[derive(Serialize, Deserialize)]
struct PairJson {
    l: usize,
    g: MatJson,
    q: MatJson,
}

fn bindings(sets: &[String]) -> Result<Bindings> {
    let mut b = Bindings::new();
    for item in sets {
        let (name, value) = item.split_once('=').ok_or_else(|| format!("--set expects NAME=VALUE, got `{item}`"))?;
        let var = Var::from_name(name.trim()).ok_or_else(|| format!("--set: unknown indeterminate `{name}`"))?;
        let value = parse_scalar(value).map_err(|e| format!("--set {name}: {e}"))?;
        b = b.with(var, value);
    }
    Ok(b)
}

/// Cycle notation: `id`, `(14)(23)` for single digits, or `(1,10)(2,3)`.
fn parse_involution(n: usize, textual: &str) -> Result<Involution> {
    let t = textual.trim();
    if t == "id" || t.is_empty() {
        return Ok(Involution::identity(n));
    }
    let mut pairs = Vec::new();
    for cycle in t.split('(').map(str::trim).filter(|c| !c.is_empty()) {
        let body = cycle.strip_suffix(')').ok_or_else(|| format!("--sigma: unclosed cycle in `{t}`"))?;
        let points: Vec<usize> = if body.contains(',') {
            body.split(',').map(|x| x.trim().parse::<usize>().map_err(text)).collect::<Result<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| format!("--sigma: bad point `{c}`"))).collect::<Result<_>>()?
        };
        match points[..] {
            [a, b] => pairs.push((a, b)),
            _ => return Err(format!("--sigma: `({body})` is not a 2-cycle")),
        }
    }
    Involution::from_pairs(n, &pairs).map_err(text)
}

/// Oriented pairs: `14,32` for single digits, or `1-10,3-2`.
fn parse_eps(textual: &str) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    for item in textual.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (a, b) = match item.split_once('-') {
            Some((a, b)) => (a.trim().parse().map_err(text)?, b.trim().parse().map_err(text)?),
            None => {
                let d: Vec<usize> = item.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
                match d[..] {
                    [a, b] if item.len() == 2 => (a, b),
                    _ => return Err(format!("--eps: cannot read pair `{item}`")),
                }
            }
        };
        out.insert((a, b));
    }
    Ok(out)
}

fn need<T: Copy>(x: Option<T>, flag: &str, family: &str) -> Result<T> {
    x.ok_or_else(|| format!("--{flag} is required for --family {family}"))
}

fn gen(a: GenArgs) -> Result<Outcome> {
    let b = bindings(&a.set)?;
    let out = match a.family {
        Family::Sym => {
            let c = SymClass::new(a.n, need(a.l, "l", "sym")?, need(a.r, "r", "sym")?).map_err(text)?;
            if a.constant {
                let p = build_const_gq(&c);
                let (g, q) = (p.g.subst(&b).map_err(text)?, p.q.subst(&b).map_err(text)?);
                to_text(&PairJson { l: p.l, g: g.to_json(), q: q.to_json() })
            } else {
                to_text(&build_ks(&c).subst(&b).map_err(text)?.to_json())
            }
        }
        Family::Tri => {
            let m = need(a.m, "m", "tri")?;
            let sigma = parse_involution(a.n, a.sigma.as_deref().unwrap_or("id"))?;
            let eps = match &a.eps {
                Some(e) => parse_eps(e)?,
                None => sigma.pairs().into_iter().collect(),
            };
            let c = TriClass::new(a.n, m, sigma, eps).map_err(text)?;
            to_text(&build_kt(&c).subst(&b).map_err(text)?.to_json())
        }
        Family::Twisted => {
            let label = a.kind.as_deref().ok_or("--kind is required for --family twisted")?;
            let kind = TwistedKind::from_label(label).ok_or_else(|| {
                let all: Vec<&str> = TwistedKind::ALL.iter().map(|k| k.label()).collect();
                format!("--kind must be one of {}", all.join(", "))
            })?;
            let c = TwistedClass::new(a.n, kind).map_err(text)?;
            to_text(&build_twisted(&c).subst(&b).map_err(text)?.to_json())
        }
    };
    emit(&out, a.out.output.as_deref())?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct Counts {
    sym: usize,
    tri: usize,
    twisted: usize,
}

#[derive(Serialize)]
struct Enumeration {
    #[serde(rename = "N")]
    n: usize,
    counts: Counts,
    sym: Vec<SymClass>,
    tri: Vec<TriClass>,
    twisted: Vec<TwistedClass>,
}

fn enumerate(a: EnumerateArgs) -> Result<Outcome> {
    if a.n < 2 {
        return Err("N must be at least 2".into());
    }
    let (sym, tri, twisted) = (enum_sym_classes(a.n), enum_tri_classes(a.n), enum_twisted_classes(a.n));
    let e = Enumeration {
        n: a.n,
        counts: Counts { sym: sym.len(), tri: tri.len(), twisted: twisted.len() },
        sym,
        tri,
        twisted,
    };
    emit(&to_text(&e), a.out.output.as_deref())?;
    Ok(Outcome::Pass)
}

fn load_matrix(path: &Path) -> Result<Mat> {
    let j: MatJson = parse(&read(path)?, path)?;
    Mat::from_json(&j).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_equation(eq: EquationArg, k: &Mat, mode: Mode) -> Result<VerifyReport> {
    let b = RBundle::new(k.dim());
    match eq {
        EquationArg::Re => check_re(&b, k, mode),
        EquationArg::Tre => check_tre(&b, k, mode),
        EquationArg::Ctre => check_ctre(&b, k, mode),
        EquationArg::Unitary => check_unitary(k, mode),
        EquationArg::Regular => check_regular(k, mode),
        EquationArg::ConstTwisted => check_const_twisted(k, &b, mode),
        EquationArg::Ybe | EquationArg::ConstIdentities => unreachable!("handled by the caller"),
    }
    .map_err(text)
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let mode = mode(&a.check);
    let report = match a.equation {
        EquationArg::Ybe => {
            let n = match (a.n, &a.file) {
                (Some(n), _) => n,
                (None, Some(path)) => load_matrix(path)?.dim(),
                (None, None) => return Err("ybe needs --n or a matrix file to take the size from".into()),
            };
            check_ybe(&RBundle::new(n), mode).map_err(text)?
        }
        EquationArg::ConstIdentities => {
            let path = a.file.as_deref().ok_or("const-identities needs a pair file")?;
            let j: PairJson = parse(&read(path)?, path)?;
            let g = Mat::from_json(&j.g).map_err(text)?;
            let q = Mat::from_json(&j.q).map_err(text)?;
            let pair = ConstPair { n: g.dim(), l: j.l, g, q };
            check_const_identities(&pair, &RBundle::new(pair.n), mode).map_err(text)?
        }
        eq => {
            let path = a.file.as_deref().ok_or("a matrix file is required")?;
            check_equation(eq, &load_matrix(path)?, mode)?
        }
    };
    emit(&to_text(&report), a.out.output.as_deref())?;
    Ok(Outcome::from_pass(report.pass))
}

#[derive(Serialize, Deserialize)]
struct OrbitRun {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    moves: Vec<EquivMove>,
    matrix: MatJson,
    check: VerifyReport,
}

/// A moves file is either a bare list or an earlier orbit run.
#[derive(Deserialize)]
#[serde(untagged)]
enum MovesFile {
    List(Vec<EquivMove>),
    Run { seed: Option<u64>, moves: Vec<EquivMove> },
}

fn flavor_check(f: Flavor, k: &Mat, mode: Mode) -> Result<VerifyReport> {
    let eq = match f {
        Flavor::Re => EquationArg::Re,
        Flavor::Ctre => EquationArg::Ctre,
    };
    check_equation(eq, k, mode)
}

fn orbit(a: OrbitArgs) -> Result<Outcome> {
    let k = load_matrix(&a.file)?;
    let f = flavor(a.flavor);
    let mode = mode(&a.check);
    let input = flavor_check(f, &k, mode)?;
    if !input.pass {
        eprintln!("input does not solve {}: {input}", f.label());
        emit(&to_text(&input), a.out.output.as_deref())?;
        return Ok(Outcome::Fail);
    }
    let (seed, moves, out) = match (a.random, &a.moves) {
        (Some(_), Some(_)) => return Err("give either a moves file or --random, not both".into()),
        (Some(depth), None) => {
            let probe = random_orbit_probe(&k, f, depth, a.seed).map_err(text)?;
            let m = probe.matrix.ok_or("probe produced no matrix")?;
            (Some(probe.seed), probe.moves, m)
        }
        (None, Some(path)) => {
            let (seed, moves) = match parse::<MovesFile>(&read(path)?, path)? {
                MovesFile::List(m) => (None, m),
                MovesFile::Run { seed, moves } => (seed, moves),
            };
            let out = apply_moves(&k, &moves).map_err(text)?;
            (seed, moves, out)
        }
        (None, None) => return Err("give a moves file or --random DEPTH".into()),
    };
    let check = flavor_check(f, &out, mode)?;
    let pass = check.pass;
    let run = OrbitRun { seed, moves, matrix: out.to_json(), check };
    emit(&to_text(&run), a.out.output.as_deref())?;
    Ok(Outcome::from_pass(pass))
}

#[derive(Serialize)]
struct ReportLine {
    label: String,
    equation: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn report(a: ReportArgs) -> Result<Outcome> {
    if a.n < 2 {
        return Err("N must be at least 2".into());
    }
    let mode = mode(&a.check);
    let b = RBundle::new(a.n);
    let mut lines = Vec::new();
    let mut push = |label: String, r: VerifyReport| {
        let witness = r.witness.as_ref().map(|_| r.to_string());
        lines.push(ReportLine { label, equation: r.equation.label().into(), pass: r.pass, witness });
    };
    push(format!("R-matrix N={}", a.n), check_ybe(&b, mode).map_err(text)?);
    for c in enum_sym_classes(a.n) {
        push(c.to_string(), check_re(&b, &build_ks(&c), mode).map_err(text)?);
    }
    for c in enum_tri_classes(a.n) {
        push(c.to_string(), check_re(&b, &build_kt(&c), mode).map_err(text)?);
    }
    for c in enum_twisted_classes(a.n) {
        push(c.to_string(), check_ctre(&b, &build_twisted(&c), mode).map_err(text)?);
    }
    let pass = lines.iter().all(|l| l.pass);
    emit(&to_text(&lines), a.out.output.as_deref())?;
    Ok(Outcome::from_pass(pass))
}
