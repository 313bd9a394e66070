//! TOML run files. A file is translated to the equivalent argument list and
//! parsed by the same command-line grammar, so every option has one meaning.
//!
//! ```toml
//! command = "sum"
//! target = "classical"
//! format = "json"
//!
//! [params]
//! alpha = "0.5"
//! beta = "1.2-0.3j"
//! gamma = 0.8
//! mu = "0.3+0.2j"
//! z = "2"
//! method = "both"
//!
//! [trunc]
//! n_max = 1000
//! ```

use crate::args::Cli;
use crate::run::UsageError;
use clap::CommandFactory;
use std::ffi::OsString;
use std::path::Path;
use toml::{Table, Value};

const TOP_KEYS: [&str; 8] = ["command", "target", "format", "output", "timing", "params", "quad", "trunc"];
const QUAD_KEYS: [&str; 4] = ["nodes", "panels", "order", "tol"];
const TRUNC_KEYS: [&str; 5] = ["n_max", "tail_tol", "stall_count", "extrapolate", "fit_cap"];

fn unknown(key: &str, section: &str, valid: &[String]) -> UsageError {
    UsageError(format!("unknown key `{key}` in {section}; valid keys: {}", valid.join(", ")))
}

fn scalar(key: &str, v: &Value) -> Result<String, UsageError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Integer(i) => Ok(i.to_string()),
        Value::Float(f) => Ok(f.to_string()),
        Value::Array(items) => items.iter().map(|x| scalar(key, x)).collect::<Result<Vec<_>, _>>().map(|v| v.join(",")),
        _ => Err(UsageError(format!("key `{key}` needs a string, number or list"))),
    }
}

fn boolean(key: &str, v: &Value) -> Result<bool, UsageError> {
    v.as_bool().ok_or_else(|| UsageError(format!("key `{key}` needs true or false")))
}

fn string<'a>(t: &'a Table, key: &str) -> Result<&'a str, UsageError> {
    match t.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(UsageError(format!("key `{key}` needs a string"))),
        None => Err(UsageError(format!("missing key `{key}`"))),
    }
}

fn section<'a>(t: &'a Table, name: &str) -> Result<Option<&'a Table>, UsageError> {
    match t.get(name) {
        None => Ok(None),
        Some(Value::Table(s)) => Ok(Some(s)),
        Some(_) => Err(UsageError(format!("`{name}` must be a table"))),
    }
}

fn flag(key: &str) -> String {
    format!("--{}", key.replace('_', "-"))
}

/// Translates the TOML text to an argument vector, checking every key.
pub fn to_args(text: &str) -> Result<Vec<OsString>, UsageError> {
    let t: Table = text.parse().map_err(|e: toml::de::Error| UsageError(format!("invalid config: {e}")))?;
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    for k in t.keys() {
        if !TOP_KEYS.contains(&k.as_str()) {
            return Err(unknown(k, "the top level", &owned(&TOP_KEYS)));
        }
    }
    let mut argv: Vec<String> = vec!["besselsum".into()];
    if let Some(v) = t.get("format") {
        argv.extend(["--format".into(), scalar("format", v)?]);
    }
    if let Some(v) = t.get("output") {
        argv.extend(["--output".into(), scalar("output", v)?]);
    }
    if let Some(v) = t.get("timing") {
        if boolean("timing", v)? {
            argv.push("--timing".into());
        }
    }
    if let Some(q) = section(&t, "quad")? {
        for (k, v) in q {
            if !QUAD_KEYS.contains(&k.as_str()) {
                return Err(unknown(k, "[quad]", &owned(&QUAD_KEYS)));
            }
            argv.extend([format!("--quad-{k}"), scalar(k, v)?]);
        }
    }
    if let Some(q) = section(&t, "trunc")? {
        for (k, v) in q {
            match k.as_str() {
                "extrapolate" => {
                    if !boolean(k, v)? {
                        argv.push("--no-extrapolate".into());
                    }
                }
                k if TRUNC_KEYS.contains(&k) => argv.extend([flag(k), scalar(k, v)?]),
                _ => return Err(unknown(k, "[trunc]", &owned(&TRUNC_KEYS))),
            }
        }
    }

    let command = string(&t, "command")?;
    let target = string(&t, "target")?;
    let root = Cli::command();
    let names = |c: &clap::Command| c.get_subcommands().map(|s| s.get_name().to_string()).collect::<Vec<_>>();
    let cmd = root
        .find_subcommand(command)
        .ok_or_else(|| UsageError(format!("unknown command `{command}`; valid commands: {}", names(&root).join(", "))))?;
    let sub = cmd.find_subcommand(target).ok_or_else(|| {
        UsageError(format!("unknown target `{target}` for `{command}`; valid targets: {}", names(cmd).join(", ")))
    })?;
    argv.extend([command.to_string(), target.to_string()]);

    let local: Vec<&clap::Arg> = sub.get_arguments().filter(|a| !a.is_global_set() && a.get_long().is_some()).collect();
    let valid: Vec<String> = local
        .iter()
        .filter_map(|a| a.get_long())
        .filter(|l| *l != "help")
        .map(|l| l.replace('-', "_"))
        .collect();
    if let Some(p) = section(&t, "params")? {
        for (k, v) in p {
            let long = k.replace('_', "-");
            let arg = local
                .iter()
                .find(|a| a.get_long() == Some(long.as_str()) && long != "help")
                .ok_or_else(|| unknown(k, "[params]", &valid))?;
            if arg.get_action().takes_values() {
                argv.extend([format!("--{long}"), scalar(k, v)?]);
            } else if boolean(k, v)? {
                argv.push(format!("--{long}"));
            }
        }
    }
    Ok(argv.into_iter().map(OsString::from).collect())
}

pub fn load(path: &Path) -> Result<Vec<OsString>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    to_args(&text)
}
