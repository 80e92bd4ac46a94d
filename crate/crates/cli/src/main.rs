use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tate_core::fgl_tate::{make_fgl, FglSpec, Form, FormalGroupLaw, TateModule};
use tate_core::fock::{self, FockSpace};
use tate_core::givental::HodgeSpace;
use tate_core::half_spin::{embed, embed_rescaled, xsymplectic};
use tate_core::literal::{self, parse_grid, parse_partition, parse_series};
use tate_core::nil_group::NilLaurentElement;
use tate_core::{Error, HalfInt, Rat, Ring, Scalar, Series, Window};

#[derive(Parser)]
#[command(name = "tate", version, about = "Exact Laurent-series, formal-group and Fock-space computations")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Default window `LO,HI` for literals without `@[..]` and for ranges.
    #[arg(long, global = true, env = "TH_DEFAULT_WINDOW", default_value = "-8,8", allow_hyphen_values = true)]
    window: String,
    /// Nilpotent order N of the coefficient ring Q[ε]/(ε^N).
    #[arg(long, global = true, default_value_t = 3)]
    eps_order: u32,
    /// Fock-space level cap.
    #[arg(long, global = true, default_value_t = 6)]
    level_cap: u32,
    /// Total degree bound of formal group laws.
    #[arg(long, global = true, default_value_t = tate_core::fgl_tate::DEFAULT_DEGREE)]
    degree_bound: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coefficient of x^-1.
    Residue {
        #[arg(allow_hyphen_values = true)]
        series: String,
    },
    /// Boundary coefficients b_k = res(e^k f ω) for k = 0..=kmax.
    Boundary {
        #[arg(long, default_value = "additive")]
        fgl: String,
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(long, default_value_t = 0)]
        kmax: u32,
    },
    /// Gram matrix of a Tate-module form on e^j, j in the range.
    Gram {
        #[arg(long, default_value = "additive")]
        fgl: String,
        #[arg(long, value_enum, default_value_t = FormArg::Symplectic)]
        form: FormArg,
        /// `LO..HI`; defaults to the integer part of --window.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// The nil-Laurent group.
    Nilgroup {
        #[command(subcommand)]
        op: NilOp,
    },
    /// Embed e^k ↦ γ_{-k-1/2}(x).
    Embed {
        #[arg(allow_hyphen_values = true)]
        series: String,
        /// Multiply by π^{1/2}.
        #[arg(long)]
        rescaled: bool,
    },
    /// res(u dv) in x.
    Pair {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Fock-space checks.
    Fock {
        #[command(subcommand)]
        op: FockOp,
    },
    /// Twisted involution report for a grading H and nilpotent E.
    Givental {
        /// Diagonal of H, comma separated.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        /// Rows of E separated by `;`, entries by `,`.
        #[arg(long = "E", allow_hyphen_values = true)]
        e: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "-4..3")]
        range: String,
    },
    /// Runs the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum NilOp {
    Compose {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    Invert {
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// f ∘ g.
    Act {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Odd square root h(y) with h(y)^2 = g(y^2).
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Subcommand)]
enum FockOp {
    /// Central-constant extraction and closure of L_k, k >= -1.
    BracketTable {
        #[arg(long, default_value_t = 3)]
        kmax: i32,
    },
    /// t_k of a diagonal matrix and its divided-power comparison.
    Kwtrace {
        #[arg(long)]
        k: u32,
        /// Positive eigenvalues, comma separated.
        #[arg(long)]
        eigenvalues: String,
    },
    /// Q_λ in odd power sums, or evaluated at --vars.
    Schurq {
        partition: String,
        #[arg(long, allow_hyphen_values = true)]
        vars: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Pairing,
    Symplectic,
}

struct Output {
    text: String,
    json: Value,
}

fn perr(m: impl Into<String>) -> Error {
    Error::Parse(m.into())
}

impl Opts {
    fn ring(&self) -> Result<Ring, Error> {
        Ring::nil(self.eps_order)
    }

    fn default_window(&self) -> Result<Window, Error> {
        literal::parse_window(&self.window)
    }

    fn series(&self, s: &str, ring: Ring) -> Result<Series, Error> {
        if s.contains('@') {
            parse_series(s, ring)
        } else {
            parse_series(&format!("{s} @{}", self.default_window()?), ring)
        }
    }

    fn fgl(&self, spec: &str) -> Result<FormalGroupLaw, Error> {
        let spec = match spec.split_once(':') {
            None if spec == "additive" => FglSpec::Additive,
            Some(("mult", b)) => FglSpec::Multiplicative(parse_rat(b)?),
            Some(("custom", file)) => {
                let text = std::fs::read_to_string(file)
                    .map_err(|e| Error::DomainError(format!("cannot read {file}: {e}")))?;
                FglSpec::Custom(parse_grid(text.trim(), self.eps_order)?)
            }
            _ => return Err(perr(format!("unknown law `{spec}` (additive, mult:BETA, custom:FILE)"))),
        };
        make_fgl(spec, self.degree_bound)
    }
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    let sc = literal::parse_scalar(s, 1)?;
    sc.as_rational()
        .ok_or_else(|| perr(format!("`{s}` is not a rational number")))
}

fn parse_list<T>(s: &str, sep: char, f: impl Fn(&str) -> Result<T, Error>) -> Result<Vec<T>, Error> {
    s.split(sep).filter(|p| !p.trim().is_empty()).map(|p| f(p.trim())).collect()
}

fn parse_range(s: &str) -> Result<(i32, i32), Error> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| perr(format!("bad range `{s}`, expected LO..HI")))?;
    let p = |t: &str| t.trim().parse::<i32>().map_err(|_| perr(format!("bad range end `{t}`")));
    Ok((p(a)?, p(b)?))
}

/// Moves a series to `ring` when it only has coefficients from the base ring.
fn into_ring(f: Series, ring: Ring) -> Result<Series, Error> {
    if f.ring() == ring {
        return Ok(f);
    }
    if ring != Ring::PLAIN {
        return Err(Error::RingMismatch(ring.eps_order(), f.ring().eps_order()));
    }
    let terms = f
        .terms()
        .map(|(e, c)| {
            if c.layers().iter().skip(1).all(|l| l.is_zero()) {
                Ok((e, c.with_order(1)))
            } else {
                Err(Error::DomainError(format!(
                    "built-in laws are over the base ring; coefficient {c} has ε terms"
                )))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Series::new(ring, f.window(), terms)
}

fn series_json(s: &Series) -> Value {
    json!({
        "literal": s.to_string(),
        "window": [s.window().lo.to_string(), s.window().hi.to_string()],
        "terms": s.terms().map(|(e, c)| json!({"exp": e.to_string(), "coeff": c.to_string()})).collect::<Vec<_>>(),
    })
}

fn series_out(s: Series) -> Output {
    Output {
        text: s.to_string(),
        json: series_json(&s),
    }
}

fn scalar_out(s: Scalar) -> Output {
    Output {
        text: s.to_string(),
        json: json!(s.to_string()),
    }
}

fn matrix_out<T: ToString>(rows: &[Vec<T>], extra: Value) -> Output {
    let strs: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(T::to_string).collect()).collect();
    let text = strs
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect::<Vec<_>>()
        .join("\n");
    let mut json = json!({ "matrix": strs });
    if let (Some(obj), Value::Object(e)) = (json.as_object_mut(), extra) {
        obj.extend(e);
    }
    Output { text, json }
}

fn element(o: &Opts, s: &str) -> Result<NilLaurentElement, Error> {
    NilLaurentElement::validate(o.series(s, o.ring()?)?)
}

fn run(cli: Cli) -> Result<Output, Error> {
    let o = cli.opts;
    match cli.cmd {
        Cmd::Residue { series } => Ok(scalar_out(o.series(&series, o.ring()?)?.residue()?)),
        Cmd::Boundary { fgl, series, kmax } => {
            let law = o.fgl(&fgl)?;
            let f = into_ring(o.series(&series, o.ring()?)?, law.ring())?;
            let t = TateModule::new(law, 0)?;
            let bs = t.boundary_coefficients(&f, kmax)?;
            Ok(Output {
                text: bs.iter().map(Scalar::to_string).collect::<Vec<_>>().join("\n"),
                json: json!({ "b": bs.iter().map(Scalar::to_string).collect::<Vec<_>>() }),
            })
        }
        Cmd::Gram { fgl, form, range } => {
            let (lo, hi) = match range {
                Some(r) => parse_range(&r)?,
                None => {
                    let w = o.default_window()?;
                    (w.lo.ceil(), w.hi.floor())
                }
            };
            let k = hi.max(-lo - 1).max(0);
            let t = TateModule::new(o.fgl(&fgl)?, k)?;
            let form = match form {
                FormArg::Pairing => Form::Pairing,
                FormArg::Symplectic => Form::Symplectic,
            };
            let g = t.gram(form, lo, hi)?;
            Ok(matrix_out(&g, json!({ "range": [lo, hi] })))
        }
        Cmd::Nilgroup { op } => match op {
            NilOp::Compose { g, h } => Ok(series_out(element(&o, &g)?.compose(&element(&o, &h)?)?.into_series())),
            NilOp::Invert { g } => Ok(series_out(element(&o, &g)?.inverse()?.into_series())),
            NilOp::Act { g, f } => Ok(series_out(element(&o, &g)?.act(&o.series(&f, o.ring()?)?)?)),
            NilOp::Sqrt { g } => Ok(series_out(element(&o, &g)?.to_odd_half()?.series().clone())),
        },
        Cmd::Embed { series, rescaled } => {
            let f = into_ring(o.series(&series, o.ring()?)?, Ring::PLAIN)?;
            Ok(series_out(if rescaled { embed_rescaled(&f)? } else { embed(&f)? }))
        }
        Cmd::Pair { u, v } => {
            let ring = o.ring()?;
            Ok(scalar_out(xsymplectic(&o.series(&u, ring)?, &o.series(&v, ring)?)?))
        }
        Cmd::Fock { op } => fock_cmd(&o, op),
        Cmd::Givental { h, e, range } => {
            let h = parse_list(&h, ',', |p| p.parse::<i32>().map_err(|_| perr(format!("bad H entry `{p}`"))))?;
            let n = h.len();
            let e = match e {
                Some(e) => parse_list(&e, ';', |row| parse_list(row, ',', parse_rat))?,
                None => vec![vec![Rat::zero(); n]; n],
            };
            let (lo, hi) = parse_range(&range)?;
            let rep = HodgeSpace::new(h, e)?.polarization_report(lo, hi)?;
            let labels: Vec<String> = rep.labels.iter().map(|(i, j)| format!("b{i}e^{j}")).collect();
            let mut out = matrix_out(
                &rep.gram,
                json!({
                    "labels": labels,
                    "antisymmetric": rep.antisymmetric,
                    "rank": rep.rank,
                    "full_rank": rep.full_rank(),
                    "isotropic_nonnegative": rep.isotropic_nonnegative,
                    "isotropic_negative": rep.isotropic_negative,
                }),
            );
            out.text = format!(
                "basis: {}\n{}\nantisymmetric: {}\nrank: {} of {}\nisotropic (j >= 0): {}\nisotropic (j < 0): {}",
                labels.join(" "),
                out.text,
                rep.antisymmetric,
                rep.rank,
                rep.gram.len(),
                rep.isotropic_nonnegative,
                rep.isotropic_negative
            );
            Ok(out)
        }
        Cmd::Selftest => unreachable!("handled in main"),
    }
}

fn fock_cmd(o: &Opts, op: FockOp) -> Result<Output, Error> {
    match op {
        FockOp::BracketTable { kmax } => {
            let space = FockSpace::new(HalfInt::int(o.level_cap as i32));
            let mut rows = Vec::new();
            let mut text = vec![format!("L0 zero point: {}", space.zero_point())];
            for m in 1..=kmax {
                for b in space.basis() {
                    if let Ok(chk) = space.check_bracket(m, -m, &b) {
                        let c = chk.central.as_ref().map_or_else(|| "-".to_string(), Rat::to_string);
                        let modes: Vec<String> = b.iter().map(|&d| HalfInt::from_doubled(d as i32).to_string()).collect();
                        text.push(format!("[L_{m}, L_-{m}] on |{}>: c = {c}", modes.join(",")));
                        rows.push(json!({ "m": m, "n": -m, "vector": b, "central": chk.central.map(|c| c.to_string()) }));
                    }
                }
            }
            let report = space.closure_report(kmax);
            for &(m, n, ok, tested) in &report.pairs {
                text.push(format!("closure ({m},{n}): {} on {tested} vectors", if ok { "pass" } else { "FAIL" }));
            }
            let c = space.central_charge()?;
            text.push(format!("central charge: {c}"));
            Ok(Output {
                text: text.join("\n"),
                json: json!({
                    "zero_point": space.zero_point().to_string(),
                    "central_charge": c.to_string(),
                    "brackets": rows,
                    "closure": report.pairs.iter().map(|&(m, n, ok, tested)| json!({"m": m, "n": n, "pass": ok, "tested": tested})).collect::<Vec<_>>(),
                }),
            })
        }
        FockOp::Kwtrace { k, eigenvalues } => {
            let ls = parse_list(&eigenvalues, ',', parse_rat)?;
            let t = fock::kw_trace(k, &ls)?;
            let r = fock::kw_gamma_comparison(k, &ls)?;
            Ok(Output {
                text: format!("t_{k} = {t}\nratio = {r}"),
                json: json!({ "k": k, "trace": t.to_string(), "ratio": r.to_string() }),
            })
        }
        FockOp::Schurq { partition, vars } => {
            let l = parse_partition(&partition)?;
            match vars {
                Some(v) => {
                    let xs = parse_list(&v, ',', parse_rat)?;
                    let q = fock::schur_q(&l, &xs)?;
                    Ok(Output {
                        text: q.to_string(),
                        json: json!({ "partition": l, "value": q.to_string() }),
                    })
                }
                None => {
                    let v = fock::schur_q_in_power_sums(&l)?;
                    Ok(Output {
                        text: v.to_string(),
                        json: json!({
                            "partition": l,
                            "power_sums": v.terms().map(|(m, c)| json!({"modes": m, "coeff": c.to_string()})).collect::<Vec<_>>(),
                        }),
                    })
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Cmd::Selftest = cli.cmd {
        let outcomes = tate_acceptance::run_all();
        let ok = outcomes.iter().all(|o| o.passed);
        if cli.opts.json {
            let v: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({"id": o.id, "name": o.name, "pass": o.passed, "checks": o.checks, "failures": o.failures}))
                .collect();
            println!("{}", json!({ "criteria": v, "pass": ok }));
        } else {
            for o in &outcomes {
                println!("{o}");
            }
        }
        return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    let json = cli.opts.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
            if json {
                println!("{}", json!({ "error": e.to_string(), "exit": code }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
