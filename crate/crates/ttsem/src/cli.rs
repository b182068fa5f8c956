//! Command-line front end.
//!
//! Subcommands:
//!
//! * `eval <scenario> <formula> [--csv FILE]` — evaluate a path formula;
//!   exit 0 when it is forced over the full window, 1 when not.
//! * `force <scenario> <formula> --from A --to B` — Kripke-Joyal forcing by
//!   the subwindow `[A, B]` in clock time.
//! * `nas <run-file> [--perturb key=value ...]` — run the closed-loop
//!   airspace scenario and report the per-contract verdicts.
//! * `mtl <signals> <formula> [--csv FILE]` — evaluate a signal formula;
//!   exit 0 when it holds over the whole window.
//! * `plot <scenario> <formula> --out FILE.(csv|svg)` — export the formula's
//!   path as samples or as an SVG polyline with the tent dashed behind it.
//!
//! Exit codes: 0 success/forced, 1 not forced, 2 error (one-line message on
//! stderr). `TTSEM_GRID` overrides the sample density (default 256).

use std::collections::BTreeMap;
use std::fs;

use num_traits::Signed;
use serde_json::Value;

use crate::contract::{
    check_system, nas_contracts, safety_goal, simulate_closed_loop, verdict_lines, NasRunFile,
};
use crate::error::{Error, Result};
use crate::formula::{eval_path, eval_signal, parse_scenario};
use crate::interval::tent;
use crate::mtl::BoolSignal;
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::{fmt_q, parse_q, Q};

/// Runs the CLI; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

fn dispatch(args: &[String]) -> Result<i32> {
    let cmd = args.first().map(String::as_str).unwrap_or("");
    match cmd {
        "eval" => cmd_eval(&args[1..]),
        "force" => cmd_force(&args[1..]),
        "nas" => cmd_nas(&args[1..]),
        "mtl" => cmd_mtl(&args[1..]),
        "plot" => cmd_plot(&args[1..]),
        "" | "help" | "--help" | "-h" => {
            print!("{}", USAGE);
            Ok(0)
        }
        other => Err(Error::Io(format!("unknown subcommand {:?}", other))),
    }
}

const USAGE: &str = "\
usage: ttsem <subcommand> [args]

  eval  <scenario.json> <formula.json> [--csv FILE]
  force <scenario.json> <formula.json> --from A --to B
  nas   <run.json> [--perturb key=value ...]
  mtl   <signals.json> <formula.json> [--csv FILE]
  plot  <scenario.json> <formula.json> --out FILE.csv|FILE.svg

exit codes: 0 forced/holds, 1 not forced, 2 error
environment: TTSEM_GRID sets the sample density (default 256)
";

fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path, e)))?;
    serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {}", path, e)))
}

fn grid_density() -> u32 {
    std::env::var("TTSEM_GRID")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(256)
}

/// Sample points: breakpoints plus a uniform grid, sorted and deduplicated.
fn sample_xs(path: &Plf, density: u32) -> Vec<Q> {
    let (a, b) = path.domain();
    let mut xs: Vec<Q> = path.breakpoints().iter().map(|(x, _)| x.clone()).collect();
    let n = density.max(1);
    let step = (b - a) / Q::from_integer(n.into());
    let mut x = a.clone();
    for _ in 0..=n {
        xs.push(x.clone());
        x += &step;
    }
    xs.sort();
    xs.dedup();
    xs.retain(|x| x >= a && x <= b);
    xs
}

fn path_csv(p: &DyckPath) -> String {
    let mut out = String::from("x,value\n");
    for x in sample_xs(p.path(), grid_density()) {
        let y = p.path().eval_q(&x).expect("sample in domain");
        out.push_str(&format!("{},{}\n", fmt_q(&x), fmt_q(&y)));
    }
    out
}

fn cmd_eval(args: &[String]) -> Result<i32> {
    let (positional, flags) = split_flags(args)?;
    if positional.len() != 2 {
        return Err(Error::Io("eval needs <scenario> <formula>".into()));
    }
    let env = parse_scenario(&read_json(&positional[0])?)?;
    let path = eval_path(&read_json(&positional[1])?, &env)?;
    if let Some(csv) = flags.get("csv") {
        fs::write(csv, path_csv(&path)).map_err(|e| Error::Io(e.to_string()))?;
    }
    println!("{}", if path.forced() { "forced" } else { "not forced" });
    Ok(if path.forced() { 0 } else { 1 })
}

fn cmd_force(args: &[String]) -> Result<i32> {
    let (positional, flags) = split_flags(args)?;
    if positional.len() != 2 {
        return Err(Error::Io("force needs <scenario> <formula>".into()));
    }
    let from = flags
        .get("from")
        .ok_or_else(|| Error::Io("force needs --from".into()))?;
    let to = flags
        .get("to")
        .ok_or_else(|| Error::Io("force needs --to".into()))?;
    let env = parse_scenario(&read_json(&positional[0])?)?;
    let path = eval_path(&read_json(&positional[1])?, &env)?;
    // --from/--to are clock times
    let a = env.clock.to_local(&parse_q(from)?);
    let b = env.clock.to_local(&parse_q(to)?);
    let forced = path.forces(&a, &b)?;
    println!("{}", if forced { "forced" } else { "not forced" });
    Ok(if forced { 0 } else { 1 })
}

fn cmd_nas(args: &[String]) -> Result<i32> {
    let (positional, flags) = split_flags_multi(args)?;
    if positional.len() != 1 {
        return Err(Error::Io("nas needs <run.json>".into()));
    }
    let run: NasRunFile = serde_json::from_value(read_json(&positional[0])?)
        .map_err(|e| Error::Io(e.to_string()))?;
    let params = run.params.parse()?;
    let a0 = parse_q(&run.a0)?;
    if a0.is_negative() {
        return Err(Error::BadRational(format!("a0 {}", a0)));
    }
    let scenario = simulate_closed_loop(&params, &run.clock, &a0)?;
    // perturbations change the contract-side parameters only: the simulated
    // witness stays fixed and the report localizes which contract breaks
    let mut checked = scenario.clone();
    for (k, v) in flags.iter().filter(|(k, _)| k == "perturb") {
        let _ = k;
        let (key, val) = v
            .split_once('=')
            .ok_or_else(|| Error::Io("--perturb needs key=value".into()))?;
        let q = parse_q(val)?;
        match key {
            "safe" => checked.params.safe = q,
            "margin" => checked.params.margin = q,
            "del" => checked.params.del = q,
            "rate" => checked.params.rate = q,
            other => return Err(Error::Io(format!("unknown parameter {:?}", other))),
        }
    }
    let verdict = check_system(&checked, &nas_contracts(), safety_goal)?;
    println!("M = {}", fmt_q(&checked.params.safety_horizon()));
    for line in verdict_lines(&verdict) {
        println!("{}", line);
    }
    Ok(if verdict.all_pass() { 0 } else { 1 })
}

fn cmd_mtl(args: &[String]) -> Result<i32> {
    let (positional, flags) = split_flags(args)?;
    if positional.len() != 2 {
        return Err(Error::Io("mtl needs <signals> <formula>".into()));
    }
    let sig_file = read_json(&positional[0])?;
    let window = parse_q(
        sig_file
            .get("window")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::formula("signals", "missing window"))?,
    )?;
    let mut signals = BTreeMap::new();
    if let Some(obj) = sig_file.get("signals").and_then(Value::as_object) {
        for (name, wire) in obj {
            let wire: crate::mtl::SignalWire = serde_json::from_value(wire.clone())
                .map_err(|e| Error::formula(name, e.to_string()))?;
            signals.insert(name.clone(), BoolSignal::from_wire(window.clone(), &wire)?);
        }
    }
    let result = eval_signal(&read_json(&positional[1])?, &signals, &window)?;
    let rendered = serde_json::to_string(&result.to_wire()).map_err(|e| Error::Io(e.to_string()))?;
    println!("{}", rendered);
    if let Some(csv) = flags.get("csv") {
        let mut out = String::from("lo,lo_flag,hi,hi_flag\n");
        for c in result.components() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_q(&c.lo),
                if c.lo_closed { "closed" } else { "open" },
                fmt_q(&c.hi),
                if c.hi_closed { "closed" } else { "open" },
            ));
        }
        fs::write(csv, out).map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(if result.is_top() { 0 } else { 1 })
}

fn cmd_plot(args: &[String]) -> Result<i32> {
    let (positional, flags) = split_flags(args)?;
    if positional.len() != 2 {
        return Err(Error::Io("plot needs <scenario> <formula>".into()));
    }
    let out = flags
        .get("out")
        .ok_or_else(|| Error::Io("plot needs --out".into()))?;
    let env = parse_scenario(&read_json(&positional[0])?)?;
    let path = eval_path(&read_json(&positional[1])?, &env)?;
    let rendered = if out.ends_with(".svg") {
        path_svg(&path)
    } else {
        path_csv(&path)
    };
    fs::write(out, rendered).map_err(|e| Error::Io(e.to_string()))?;
    Ok(0)
}

/// A single polyline for the path, the tent dashed behind it.
fn path_svg(p: &DyckPath) -> String {
    let t = tent(p.window());
    let l = p.window().len();
    let to_f = |q: &Q| -> f64 {
        let n: f64 = q.numer().to_string().parse().unwrap_or(0.0);
        let d: f64 = q.denom().to_string().parse().unwrap_or(1.0);
        n / d
    };
    let width = 640.0;
    let height = 360.0;
    let lx = to_f(l);
    let top = to_f(&(l / Q::from_integer(2.into())));
    let sx = width / lx;
    let sy = if top > 0.0 { height / top } else { 1.0 };
    let render = |f: &Plf| -> String {
        sample_xs(f, grid_density())
            .iter()
            .map(|x| {
                let y = f.eval_q(x).expect("sample in domain");
                format!("{:.3},{:.3}", to_f(x) * sx, height - to_f(&y) * sy)
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n",
            "<polyline fill=\"none\" stroke=\"#999\" stroke-dasharray=\"6 4\" points=\"{tent}\"/>\n",
            "<polyline fill=\"none\" stroke=\"#146b9c\" stroke-width=\"2\" points=\"{path}\"/>\n",
            "</svg>\n"
        ),
        w = width,
        h = height,
        tent = render(&t),
        path = render(p.path()),
    )
}

/// Splits `--flag value` pairs from positional arguments (single-valued
/// flags).
fn split_flags(args: &[String]) -> Result<(Vec<String>, BTreeMap<String, String>)> {
    let (pos, multi) = split_flags_multi(args)?;
    let mut flat = BTreeMap::new();
    for (k, v) in multi {
        flat.insert(k, v);
    }
    Ok((pos, flat))
}

type Flags = Vec<(String, String)>;

fn split_flags_multi(args: &[String]) -> Result<(Vec<String>, Flags)> {
    let mut positional = Vec::new();
    let mut flags = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            let value = args
                .get(i + 1)
                .ok_or_else(|| Error::Io(format!("flag --{} needs a value", name)))?;
            flags.push((name.to_string(), value.clone()));
            i += 2;
        } else {
            positional.push(a.clone());
            i += 1;
        }
    }
    Ok((positional, flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn flag_splitting() {
        let args: Vec<String> = ["a.json", "--csv", "out.csv", "b.json"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let (pos, flags) = split_flags(&args).unwrap();
        assert_eq!(pos, vec!["a.json", "b.json"]);
        assert_eq!(flags.get("csv").unwrap(), "out.csv");
        assert!(split_flags(&["--broken".to_string()]).is_err());
    }

    #[test]
    fn csv_is_deterministic() {
        let w = crate::interval::Window::new(crate::rat::qi(10)).unwrap();
        let p = DyckPath::top(w);
        let a = path_csv(&p);
        let b = path_csv(&p);
        assert_eq!(a, b);
        assert!(a.starts_with("x,value\n0,0\n"));
    }

    #[test]
    fn svg_has_two_polylines() {
        let w = crate::interval::Window::new(crate::rat::qi(10)).unwrap();
        let p = DyckPath::bottom(w);
        let svg = path_svg(&p);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(Q::zero().is_zero());
    }
}
