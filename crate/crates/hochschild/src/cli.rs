//! The `hh` command line: one JSON object on stdout, diagnostics on stderr,
//! exit 0 on success, 1 when a check fails, 2 on usage errors.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{HhError, Result};
use crate::extension::HochschildExt;
use crate::field::{Field, FieldDesc};
use crate::hochschild::{self as hc, Cochain, Hochschild};
use crate::hopf::{taft, HopfEmbedding, RMode};
use crate::io::{parse_algebra_file, Parsed, Structure};
use crate::loops::{loop_bracket, Product};
use crate::matrix::Matrix;
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "hh", version, about = "Hochschild cohomology and Gerstenhaber structure of finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FileArg {
    /// Algebra or bialgebra file (JSON)
    file: String,
}

#[derive(Args, Debug)]
struct Pick {
    /// Cohomological degrees
    #[arg(long, num_args = 1..=2, required = true)]
    deg: Vec<usize>,
    /// Basis class indices, one per degree
    #[arg(long, num_args = 1..=2, required = true)]
    class: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a file and run the algebra and bialgebra checks
    Check(FileArg),
    /// dim HH^0..HH^max
    Dims {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Cup product of two basis classes
    Cup {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        pick: Pick,
    },
    /// Gerstenhaber bracket of two basis classes
    Bracket {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        pick: Pick,
    },
    /// Squaring map on a basis class of even degree
    Sq {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        pick: Pick,
    },
    /// Bracket computed from loops in the extension category
    LoopBracket {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        pick: Pick,
    },
    /// Cocycles and extensions
    Ext {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Bialgebra commands
    Hopf {
        #[command(subcommand)]
        command: HopfCommand,
    },
    /// Compare dim HH^i of A and of the matrix algebra M_n(A)
    Morita {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max: usize,
    },
    /// Run an identity suite
    Verify {
        #[command(flatten)]
        file: FileArg,
        /// gerstenhaber, axioms, retakh, schwede, braided-vanish or hopf-vanish
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max: usize,
        /// Degrees for the schwede suite
        #[arg(long, num_args = 2, default_values_t = [1, 1])]
        deg: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum ExtCommand {
    /// Turn a basis class into an extension and read it back
    Convert {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        pick: Pick,
    },
    /// Whether the extensions of two basis classes are equivalent
    Compare {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        pick: Pick,
    },
}

#[derive(Subcommand, Debug)]
enum HopfCommand {
    /// Check the attached R-matrix, or r_alpha of H4
    CheckR {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Embed H^n(B, k) into HH^n(B)
    Embed {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Brackets of embedded classes
    Vanish {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
}

/// Command outcome: the JSON result and whether the checks passed.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

fn usage(msg: impl Into<String>) -> HhError {
    HhError::Usage(msg.into())
}

fn exit_code(e: &HhError) -> i32 {
    match e {
        HhError::Usage(_) | HhError::Schema(_) | HhError::Parse(_) | HhError::InvalidField(_) | HhError::OutOfRange(_) => 2,
        _ => 1,
    }
}

/// Runs `hh` with the given arguments (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.value);
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "hh: {e}");
            let code = exit_code(&e);
            if code == 1 {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            code
        }
    }
}

fn load(path: &str) -> Result<Parsed> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    parse_algebra_file(&text)
}

macro_rules! dispatch {
    ($parsed:expr, $s:ident => $body:expr) => {
        match $parsed {
            Parsed::Rational($s) => $body,
            Parsed::Prime($s) => $body,
        }
    };
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Check(FileArg { file }) => {
            let p = load(file)?;
            let field = field_name(p.field());
            dispatch!(p, s => Ok(Outcome::ok(json!({
                "bialgebra": s.bialgebra.is_some(),
                "dim": s.algebra.dim(),
                "field": field,
                "status": "ok",
            }))))
        }
        Command::Dims { file, max } => dispatch!(load(&file.file)?, s => dims(&s, *max)),
        Command::Cup { file, pick } => dispatch!(load(&file.file)?, s => product(&s, pick, Op::Cup)),
        Command::Bracket { file, pick } => dispatch!(load(&file.file)?, s => product(&s, pick, Op::Bracket)),
        Command::Sq { file, pick } => dispatch!(load(&file.file)?, s => product(&s, pick, Op::Sq)),
        Command::LoopBracket { file, pick } => dispatch!(load(&file.file)?, s => loop_bracket_cmd(&s, pick)),
        Command::Ext { command } => match command {
            ExtCommand::Convert { file, pick } => dispatch!(load(&file.file)?, s => ext_convert(&s, pick)),
            ExtCommand::Compare { file, pick } => dispatch!(load(&file.file)?, s => ext_compare(&s, pick)),
        },
        Command::Hopf { command } => match command {
            HopfCommand::CheckR { file, alpha } => dispatch!(load(&file.file)?, s => check_r(&s, alpha.as_deref())),
            HopfCommand::Embed { file, max } => dispatch!(load(&file.file)?, s => embed(&s, *max)),
            HopfCommand::Vanish { file, max } => dispatch!(load(&file.file)?, s => {
                let b = need_bialgebra(&s)?;
                report(verify::hopf_vanish_suite(&b, *max)?)
            }),
        },
        Command::Morita { file, n, max } => dispatch!(load(&file.file)?, s => morita(&s, *n, *max)),
        Command::Verify { file, suite, seed, trials, max, deg } => {
            dispatch!(load(&file.file)?, s => run_suite(&s, suite, *seed, *trials, *max, deg))
        }
    }
}

fn field_name(d: FieldDesc) -> String {
    match d {
        FieldDesc::Rationals => "Q".into(),
        FieldDesc::Prime(p) => format!("GF({p})"),
    }
}

fn fmt_vec<K: Field>(f: &K, v: &[K::Elem]) -> Vec<String> {
    v.iter().map(|c| f.format(c)).collect()
}

fn report(r: verify::SuiteReport) -> Result<Outcome> {
    let ok = r.pass;
    let value = serde_json::to_value(&r).map_err(|e| HhError::Parse(e.to_string()))?;
    Ok(Outcome { value, ok })
}

fn need_bialgebra<K: Field>(s: &Structure<K>) -> Result<Arc<crate::hopf::Bialgebra<K>>> {
    s.bialgebra.clone().ok_or_else(|| usage("this command needs a bialgebra file (comul and counit)"))
}

fn dims<K: Field>(s: &Structure<K>, max: usize) -> Result<Outcome> {
    let hh = Hochschild::new(s.algebra.clone());
    let dims = (0..=max).map(|n| hh.dim(n)).collect::<Result<Vec<_>>>()?;
    Ok(Outcome::ok(json!({ "dims": dims })))
}

fn basis_class<K: Field>(hh: &Hochschild<K>, n: usize, i: usize) -> Result<Cochain<K::Elem>> {
    let basis = hh.basis_cochains(n)?;
    let len = basis.len();
    basis.into_iter().nth(i).ok_or_else(|| usage(format!("class {i} out of range: HH^{n} has dimension {len}")))
}

fn two<T: Copy>(v: &[T], what: &str) -> Result<(T, T)> {
    match v {
        [a, b] => Ok((*a, *b)),
        _ => Err(usage(format!("--{what} takes two values here"))),
    }
}

enum Op {
    Cup,
    Bracket,
    Sq,
}

fn class_json<K: Field>(hh: &Hochschild<K>, c: &Cochain<K::Elem>) -> Result<Value> {
    let f = hh.field();
    if !hh.is_cocycle(c)? {
        return Err(HhError::NotCocycle(c.degree));
    }
    let coords = if c.degree < hh.bar_limit() { Some(fmt_vec(f, &hh.class_of(c)?.coords)) } else { None };
    Ok(json!({ "degree": c.degree, "class": coords, "zero": hh.is_coboundary(c)? }))
}

fn product<K: Field>(s: &Structure<K>, pick: &Pick, op: Op) -> Result<Outcome> {
    let a = &s.algebra;
    let hh = Hochschild::new(a.clone());
    let c = match op {
        Op::Sq => {
            let (&[n], &[i]) = (pick.deg.as_slice(), pick.class.as_slice()) else {
                return Err(usage("sq takes one degree and one class"));
            };
            if n % 2 == 1 || n == 0 {
                return Err(usage("sq needs a positive even degree"));
            }
            hc::sq(a, &basis_class(&hh, n, i)?)?
        }
        _ => {
            let (m, n) = two(&pick.deg, "deg")?;
            let (i, j) = two(&pick.class, "class")?;
            let (x, y) = (basis_class(&hh, m, i)?, basis_class(&hh, n, j)?);
            match op {
                Op::Cup => hc::cup(a, &x, &y)?,
                _ if m + n == 0 => return Err(usage("the bracket of two degree-0 classes is not defined")),
                _ => hc::bracket(a, &x, &y)?,
            }
        }
    };
    Ok(Outcome::ok(class_json(&hh, &c)?))
}

fn loop_bracket_cmd<K: Field>(s: &Structure<K>, pick: &Pick) -> Result<Outcome> {
    let a = &s.algebra;
    let f = a.field();
    let (m, n) = two(&pick.deg, "deg")?;
    let (i, j) = two(&pick.class, "class")?;
    if m == 0 || n == 0 {
        return Err(usage("loop-bracket needs positive degrees"));
    }
    let hx = HochschildExt::new(a, m + n);
    let hh = &hx.hochschild;
    let (x, y) = (basis_class(hh, m, i)?, basis_class(hh, n, j)?);
    let v = loop_bracket(&Product::Bimodule(a.clone()), &hx.extension(&x)?, &hx.extension(&y)?)?;
    let got = hx.cochain(v.as_ext().ok_or_else(|| HhError::Dimension("loop bracket gave a map".into()))?)?;
    let want = hc::bracket(a, &x, &y)?;
    let plus = hh.same_class(&got, &want)?;
    let minus = hh.same_class(&got, &hc::scale(f, &f.from_i64(-1), &want))?;
    let sign = match (plus, minus) {
        (true, true) => "any",
        (true, false) => "+1",
        (false, true) => "-1",
        (false, false) => "none",
    };
    let mut value = class_json(hh, &got)?;
    value["sign_vs_bar"] = json!(sign);
    Ok(Outcome { value, ok: plus || minus })
}

fn ext_convert<K: Field>(s: &Structure<K>, pick: &Pick) -> Result<Outcome> {
    let (&[n], &[i]) = (pick.deg.as_slice(), pick.class.as_slice()) else {
        return Err(usage("ext convert takes one degree and one class"));
    };
    if n == 0 {
        return Err(usage("extensions have positive degree"));
    }
    let hx = HochschildExt::new(&s.algebra, n);
    let c = basis_class(&hx.hochschild, n, i)?;
    let xi = hx.extension(&c)?;
    let admissible = xi.check_admissible().ok();
    let back = hx.cochain(&xi)?;
    let roundtrip = hx.hochschild.same_class(&back, &c)?;
    Ok(Outcome { value: json!({ "admissible": admissible, "degree": n, "roundtrip": roundtrip, "terms": xi.dims() }), ok: admissible && roundtrip })
}

fn ext_compare<K: Field>(s: &Structure<K>, pick: &Pick) -> Result<Outcome> {
    let (&[n], &[i, j]) = (pick.deg.as_slice(), pick.class.as_slice()) else {
        return Err(usage("ext compare takes one degree and two classes"));
    };
    if n == 0 {
        return Err(usage("extensions have positive degree"));
    }
    let hx = HochschildExt::new(&s.algebra, n);
    let x = hx.extension(&basis_class(&hx.hochschild, n, i)?)?;
    let y = hx.extension(&basis_class(&hx.hochschild, n, j)?)?;
    Ok(Outcome::ok(json!({ "degree": n, "equal": hx.classes_equal(&x, &y)? })))
}

fn check_r<K: Field>(s: &Structure<K>, alpha: Option<&str>) -> Result<Outcome> {
    let b = need_bialgebra(s)?;
    let f = b.field();
    let r = match alpha {
        None => b.r_matrix().map(|r| r.to_vec()).ok_or_else(|| usage("the file has no r_matrix; pass --alpha for H4"))?,
        Some(text) => {
            let a = f.parse(text)?;
            let minus_one = f.from_i64(-1);
            let h4 = taft(f, 2, &minus_one, Some(&a)).map_err(|e| usage(format!("--alpha needs H4: {e}")))?;
            if h4.algebra().structure_constants() != b.algebra().structure_constants() || h4.comul() != b.comul() {
                return Err(usage("--alpha applies to H4 in the basis 1, g, x, gx"));
            }
            h4.r_matrix().expect("r_alpha attached").to_vec()
        }
    };
    let rep = b.check_r_matrix(&r);
    let ok = rep.passes(RMode::Canonical);
    Ok(Outcome {
        value: json!({
            "counit_normalized": rep.counit_normalized,
            "failures": rep.failures,
            "invertible": rep.invertible,
            "product_normalized": rep.product_normalized,
            "qt1": rep.qt1,
            "qt2": rep.qt2,
            "qt3": rep.qt3,
            "result": if ok { "pass" } else { "fail" },
        }),
        ok,
    })
}

fn embed<K: Field>(s: &Structure<K>, max: usize) -> Result<Outcome> {
    let b = need_bialgebra(s)?;
    let e = HopfEmbedding::new(&b, max)?;
    let hh = &e.hochschild.hochschild;
    let mut degrees = Vec::new();
    let mut ok = true;
    for n in 0..=max {
        let h = e.cohomology(n)?;
        let images = h.basis().iter().map(|v| e.embed(n, v)).collect::<Result<Vec<_>>>()?;
        let coords = images.iter().map(|c| hh.class_of(c).map(|k| k.coords)).collect::<Result<Vec<_>>>()?;
        let rank = if coords.is_empty() { 0 } else { Matrix::from_rows(b.field(), coords[0].len(), &coords).rank() };
        ok &= rank == images.len();
        let classes: Vec<Vec<String>> = coords.iter().map(|c| fmt_vec(b.field(), c)).collect();
        degrees.push(json!({ "degree": n, "group_dim": h.dim(), "hh_dim": hh.dim(n)?, "images": classes, "rank": rank }));
    }
    Ok(Outcome { value: json!({ "degrees": degrees, "split_mono": ok }), ok })
}

fn morita<K: Field>(s: &Structure<K>, n: usize, max: usize) -> Result<Outcome> {
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    let a: &Algebra<K> = &s.algebra;
    let mn = Arc::new(a.matrix_algebra(n)?);
    let h1 = Hochschild::new(s.algebra.clone());
    let h2 = Hochschild::new(mn);
    let d1 = (0..=max).map(|i| h1.dim(i)).collect::<Result<Vec<_>>>()?;
    let d2 = (0..=max).map(|i| h2.dim(i)).collect::<Result<Vec<_>>>()?;
    let ok = d1 == d2;
    Ok(Outcome { value: json!({ "algebra": d1, "equal": ok, "matrix_algebra": d2, "n": n }), ok })
}

fn run_suite<K: Field>(s: &Structure<K>, suite: &str, seed: u64, trials: usize, max: usize, deg: &[usize]) -> Result<Outcome> {
    let r = match suite {
        "gerstenhaber" => verify::gerstenhaber_suite(&s.algebra, seed, trials)?,
        "axioms" => verify::axiom_suite(&Hochschild::new(s.algebra.clone()), max)?,
        "retakh" => verify::retakh_suite(&s.algebra, seed, trials)?,
        "schwede" => {
            let (m, n) = two(deg, "deg")?;
            if m == 0 || n == 0 {
                return Err(usage("schwede needs positive degrees"));
            }
            verify::schwede_suite(&s.algebra, m, n)?
        }
        "braided-vanish" => verify::braided_suite(&need_bialgebra(s)?)?,
        "hopf-vanish" => verify::hopf_vanish_suite(&need_bialgebra(s)?, max)?,
        other => return Err(usage(format!("unknown suite {other:?}"))),
    };
    report(r)
}
