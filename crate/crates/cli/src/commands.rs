use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use serde_json::{json, Value};

use aqarith::aq::{self, AqError, BracketedAq};
use aqarith::config::ConfigError;
use aqarith::fspec::{self, FspecError, ProofOutcome, Strategy};
use aqarith::paradox::{self, Policy, RegressOptions, Script, ScriptError};
use aqarith::semantics::{self, Backend, SemanticsError};
use aqarith::sign::{self, RenderStyle, SignError};
use aqarith::{Aq, Config, Sign};

use crate::{Command, Level};

/// Result of a verb. `ok` is false when the domain answered "no".
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn yes(text: impl Into<String>, json: Value) -> Output {
        Output {
            text: text.into(),
            json,
            ok: true,
        }
    }

    fn verdict(ok: bool, text: impl Into<String>, json: Value) -> Output {
        Output {
            text: text.into(),
            json,
            ok,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(if self.ok { 0 } else { 1 })
    }
}

#[derive(Debug)]
pub struct CliError {
    /// `Module::Variant`, e.g. `AqError::Parse`.
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn new(kind: &str, message: impl Display) -> CliError {
        CliError {
            kind: kind.to_string(),
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind, "message": self.message}})
    }
}

impl From<AqError> for CliError {
    fn from(e: AqError) -> CliError {
        let v = match &e {
            AqError::Lex(s) => return CliError::from(s.clone()),
            AqError::Parse { .. } => "Parse",
            AqError::NotAPolyInfixSum => "NotAPolyInfixSum",
            AqError::IndexOutOfRange { .. } => "IndexOutOfRange",
            AqError::OpenTerm(_) => "OpenTerm",
            AqError::Dump(_) => "Dump",
        };
        CliError::new(&format!("AqError::{v}"), e)
    }
}

impl From<SignError> for CliError {
    fn from(e: SignError) -> CliError {
        let v = match e {
            SignError::Lex { .. } => "Lex",
            SignError::UnbalancedBrackets { .. } => "UnbalancedBrackets",
        };
        CliError::new(&format!("SignError::{v}"), e)
    }
}

impl From<SemanticsError> for CliError {
    fn from(e: SemanticsError) -> CliError {
        let v = match e {
            SemanticsError::OpenTerm(_) => "OpenTerm",
            SemanticsError::Sort(_) => "Sort",
            SemanticsError::Scale { .. } => "Scale",
            SemanticsError::Bound(_) => "Bound",
        };
        CliError::new(&format!("SemanticsError::{v}"), e)
    }
}

impl From<FspecError> for CliError {
    fn from(e: FspecError) -> CliError {
        let v = match e {
            FspecError::OpenTerm(_) => "OpenTerm",
            FspecError::Sort(_) => "Sort",
            FspecError::Scale { .. } => "Scale",
            FspecError::Domain(_) => "Domain",
            FspecError::Format(_) => "Format",
        };
        CliError::new(&format!("FspecError::{v}"), e)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> CliError {
        let v = match e {
            ConfigError::Syntax { .. } => "Syntax",
            ConfigError::Io(_) => "Io",
        };
        CliError::new(&format!("ConfigError::{v}"), e)
    }
}

impl From<ScriptError> for CliError {
    fn from(e: ScriptError) -> CliError {
        CliError::new("ScriptError", e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new("IoError", e)
    }
}

fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

/// The argument itself, or standard input (one trailing newline dropped)
/// when it is `-`.
fn term_text(arg: &str) -> Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let s = read_stdin()?;
    let s = s.strip_suffix('\n').unwrap_or(&s);
    Ok(s.strip_suffix('\r').unwrap_or(s).to_string())
}

fn bracketed(arg: &str) -> Result<BracketedAq, CliError> {
    Ok(aq::parse(&Sign::new(term_text(arg)?))?)
}

fn term(arg: &str) -> Result<Aq, CliError> {
    Ok(bracketed(arg)?.into_aq())
}

fn show(a: &Aq) -> String {
    sign::render(a, RenderStyle::Minimal).text().to_string()
}

fn closed(a: &Aq) -> Result<(), CliError> {
    Ok(a.require_closed()?)
}

fn lines(ls: &[String]) -> String {
    let mut s = ls.join("\n");
    s.push('\n');
    s
}

fn has_sort(name: &str) -> bool {
    name.ends_with("-nat") || name.ends_with("-int")
}

fn iso_pair(n1: &str, n2: &str) -> Result<(Backend, Backend), CliError> {
    let (mut b1, mut b2): (Backend, Backend) = (n1.parse()?, n2.parse()?);
    if b1.sort() != b2.sort() {
        if !has_sort(n1) {
            b1 = Backend::new(b1.kind(), b2.sort())?;
        } else if !has_sort(n2) {
            b2 = Backend::new(b2.kind(), b1.sort())?;
        }
    }
    Ok((b1, b2))
}

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    let config = Config::from_env()?;
    match cmd {
        Command::Parse { term: t } => {
            let b = bracketed(t)?;
            let text = format!(
                "aq: {}\nredundant brackets: {}\ntree: {}",
                show(b.aq()),
                b.redundancy().total(),
                b.aq().to_json()
            );
            Ok(Output::yes(
                text,
                json!({"aq": show(b.aq()), "redundancy": b.redundancy().total(), "tree": b.aq().to_json()}),
            ))
        }
        Command::Eq { level, lhs, rhs } => {
            let (l, r) = (term_text(lhs)?, term_text(rhs)?);
            let equal = match level {
                Level::Sign => {
                    // both sides must at least be well-formed signs
                    Sign::new(l.as_str()).tokens()?;
                    Sign::new(r.as_str()).tokens()?;
                    l == r
                }
                Level::Aq => aq::eq_aq(&term(&l)?, &term(&r)?),
                Level::AqBp => aq::eq_aq_bp(&bracketed(&l)?, &bracketed(&r)?),
                Level::Value => {
                    let (a, b) = (term(&l)?, term(&r)?);
                    semantics::eval_decimal(&a)? == semantics::eval_decimal(&b)?
                }
            };
            let name = match level {
                Level::Sign => "sign",
                Level::Aq => "aq",
                Level::AqBp => "aq-bp",
                Level::Value => "value",
            };
            Ok(Output::verdict(
                equal,
                equal.to_string(),
                json!({"equal": equal, "level": name}),
            ))
        }
        Command::Eval { backend, term: t } => {
            let a = term(t)?;
            let v = semantics::evaluate(&a, *backend, &config)?.render(&config);
            Ok(Output::yes(
                v.clone(),
                json!({"backend": backend.to_string(), "value": v}),
            ))
        }
        Command::Normalize { trace, term: t } => {
            let a = term(t)?;
            let tr = fspec::normalize_with(&a, &config, Strategy::canonical())?;
            let nf = show(&tr.normal_form);
            if *trace {
                let ls = fspec::trace_to_lines(&tr);
                let js: Vec<Value> = ls.iter().map(|l| serde_json::from_str(l).unwrap()).collect();
                return Ok(Output::yes(lines(&ls), Value::Array(js)));
            }
            Ok(Output::yes(
                nf.clone(),
                json!({"normal_form": nf, "steps": tr.steps.len()}),
            ))
        }
        Command::Prove { trace, lhs, rhs } => {
            let (l, r) = (term(lhs)?, term(rhs)?);
            closed(&l)?;
            closed(&r)?;
            match fspec::prove_with(&l, &r, &config, Strategy::canonical())? {
                ProofOutcome::Derived(d) => {
                    let report = fspec::check(&d);
                    if *trace {
                        let ls = fspec::derivation_to_lines(&d);
                        let js: Vec<Value> =
                            ls.iter().map(|l| serde_json::from_str(l).unwrap()).collect();
                        return Ok(Output::verdict(report.is_valid(), lines(&ls), Value::Array(js)));
                    }
                    let text = format!("derivable: {} steps; check {report}", d.steps.len());
                    Ok(Output::verdict(
                        report.is_valid(),
                        text,
                        json!({"derivable": true, "steps": d.steps.len(), "valid": report.is_valid()}),
                    ))
                }
                ProofOutcome::NotDerivable {
                    lhs_normal,
                    rhs_normal,
                } => {
                    let (a, b) = (show(&lhs_normal), show(&rhs_normal));
                    Ok(Output::verdict(
                        false,
                        format!("not derivable: normal forms {a} and {b} differ"),
                        json!({"derivable": false, "lhs_normal": a, "rhs_normal": b}),
                    ))
                }
            }
        }
        Command::Check { file } => {
            let text = if file == "-" {
                read_stdin()?
            } else {
                std::fs::read_to_string(file)?
            };
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            let kind = serde_json::from_str::<Value>(first)
                .ok()
                .and_then(|v| v.get("kind").and_then(Value::as_str).map(str::to_string));
            let (what, report) = match kind.as_deref() {
                Some("derivation") => ("derivation", fspec::check(&fspec::derivation_from_lines(&text)?)),
                Some("trace") => ("trace", fspec::check_trace(&fspec::trace_from_lines(&text)?)),
                _ => {
                    return Err(CliError::from(FspecError::Format(
                        "first line is neither a derivation nor a trace header".into(),
                    )))
                }
            };
            let failure = report
                .failure
                .as_ref()
                .map(|(k, why)| json!({"step": k, "reason": why}));
            Ok(Output::verdict(
                report.is_valid(),
                format!("{what} {report}"),
                json!({"kind": what, "valid": report.is_valid(), "steps_checked": report.steps_checked, "failure": failure}),
            ))
        }
        Command::Split { term: t } => {
            let a = term(t)?;
            if !aq::is_sumterm(&a) {
                let s = show(&a);
                return Ok(Output::verdict(
                    false,
                    format!("{s} is not a sumterm"),
                    json!({"sumterm": false, "aq": s}),
                ));
            }
            let (l, r) = (show(&aq::split_left(&a)), show(&aq::split_right(&a)));
            Ok(Output::yes(
                format!("l_s: {l}\nr_s: {r}"),
                json!({"sumterm": true, "l_s": l, "r_s": r}),
            ))
        }
        Command::Summand { term: t, index } => {
            let a = term(t)?;
            let s = show(&aq::summand(&a, *index)?);
            Ok(Output::yes(s.clone(), json!({"index": index, "summand": s})))
        }
        Command::Subst {
            replacement,
            var,
            body,
        } => {
            let out = show(&aq::substitute(&term(body)?, var, &term(replacement)?));
            Ok(Output::yes(out.clone(), json!({"aq": out})))
        }
        Command::Let { var, binding, body } => {
            let out = show(&aq::let_in(var, &bracketed(binding)?, &term(body)?));
            Ok(Output::yes(out.clone(), json!({"aq": out})))
        }
        Command::Tuple { tuple } => {
            let t = aq::parse_sumtuple(&Sign::new(term_text(tuple)?))?;
            let valid = aq::sumtuple_valid(&t)?;
            let text = format!(
                "({},{};{}) {}",
                show(&t.left),
                show(&t.right),
                show(&t.sum),
                if valid { "valid" } else { "invalid" }
            );
            Ok(Output::verdict(valid, text, json!({"valid": valid})))
        }
        Command::Iso {
            backend,
            bound,
            lines: all,
        } => {
            let [b1, b2] = backend.as_slice() else {
                unreachable!("checked during argument parsing")
            };
            let (b1, b2) = iso_pair(b1, b2)?;
            let report = semantics::check_isomorphism(b1, b2, *bound, &config)?;
            let text = if *all { report.render() } else { report.verdict() };
            Ok(Output::verdict(
                report.is_isomorphic(),
                text,
                json!({
                    "backends": [report.backends.0, report.backends.1],
                    "bound": report.bound,
                    "checks": report.lines.len(),
                    "counterexamples": report.counterexamples,
                }),
            ))
        }
        Command::Paradox {
            policy,
            level,
            foundational_check,
            script,
        } => {
            let text = if script == "-" {
                read_stdin()?
            } else if let Some((_, s)) = paradox::corpus().into_iter().find(|(n, _)| n == script) {
                s
            } else {
                std::fs::read_to_string(script)?
            };
            let script = Script::parse(&text)?;
            let mut p = Policy::new(*policy).with_level(*level);
            if *foundational_check {
                p = p.with_foundational_check(true);
            }
            let trace = paradox::run_script(&script, &p);
            Ok(Output::yes(trace.render(), trace.to_json()))
        }
        Command::Regress {
            without_counting,
            without_operators,
        } => {
            let opts = if *without_operators {
                RegressOptions::without_operators()
            } else if *without_counting {
                RegressOptions::without_counting()
            } else {
                RegressOptions::default()
            };
            let r = paradox::regress_report(&opts);
            let levels: Vec<Value> = r
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "name": l.name,
                        "equality": l.equality,
                        "witness": [l.witness.0, l.witness.1],
                        "holds": l.holds,
                        "broken_by": l.breaker.as_ref().map(|b| b.operator.name()),
                    })
                })
                .collect();
            Ok(Output::yes(
                r.to_string(),
                json!({"levels": levels, "resolution": r.resolution, "consistent": r.is_consistent()}),
            ))
        }
    }
}
