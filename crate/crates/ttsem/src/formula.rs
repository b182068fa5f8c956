//! Formula syntax trees over scenarios and boolean signals.
//!
//! Formulas are JSON values with an `"op"` tag; unknown tags and malformed
//! nodes are rejected with the offending node named. The path-formula
//! operators cover the proposition algebra, the modalities, numeric
//! comparison atoms, walk atoms and the delay condition; the signal-formula
//! operators cover the classical temporal connectives.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::calculus::deriv_eq_open;
use crate::error::{Error, Result};
use crate::interval::Clock;
use crate::modality;
use crate::mtl::{self, BoolSignal};
use crate::numeric::{leq_open, lt_open, IntervalSection, VariableReal};
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::{parse_q, Q};
use crate::walk::{self, Graph, Walk, WalkWire};

/// The traces a path formula can mention.
pub struct Env {
    pub clock: Clock,
    pub reals: BTreeMap<String, VariableReal>,
    pub sections: BTreeMap<String, IntervalSection>,
    pub walks: BTreeMap<String, Walk>,
    pub graph: Option<Graph>,
}

impl Env {
    pub fn new(clock: Clock) -> Self {
        Env {
            clock,
            reals: BTreeMap::new(),
            sections: BTreeMap::new(),
            walks: BTreeMap::new(),
            graph: None,
        }
    }

    fn section_of(&self, name: &str) -> Result<IntervalSection> {
        if let Some(r) = self.reals.get(name) {
            return Ok(r.as_section());
        }
        if let Some(s) = self.sections.get(name) {
            return Ok(s.clone());
        }
        Err(Error::MissingTrace(name.to_string()))
    }

    fn walk_of(&self, name: &str) -> Result<&Walk> {
        self.walks
            .get(name)
            .ok_or_else(|| Error::MissingTrace(name.to_string()))
    }
}

/// Parses a scenario file into an environment.
///
/// ```json
/// {
///   "clock": {"d_t": "-1", "u_t": "11"},
///   "reals": {"a": [["0", "0"], ["12", "240"]]},
///   "sections": {"s": {"lo": [...], "hi": [...]}},
///   "walks": {"T": {"vertices": [...], "edges": [...], "times": [...]}},
///   "graph": {"vertices": [...], "edges": [...]}
/// }
/// ```
pub fn parse_scenario(v: &Value) -> Result<Env> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::formula("scenario", "expected an object"))?;
    let clock: Clock = serde_json::from_value(
        obj.get("clock")
            .ok_or_else(|| Error::formula("scenario", "missing clock"))?
            .clone(),
    )
    .map_err(|e| Error::formula("clock", e.to_string()))?;
    let mut env = Env::new(clock.clone());
    if let Some(reals) = obj.get("reals") {
        let reals = reals
            .as_object()
            .ok_or_else(|| Error::formula("reals", "expected an object"))?;
        for (name, pts) in reals {
            let plf = parse_plf(pts)?;
            env.reals.insert(
                name.clone(),
                VariableReal::new(clock.clone(), plf)
                    .map_err(|e| Error::formula(name, e.to_string()))?,
            );
        }
    }
    if let Some(sections) = obj.get("sections") {
        let sections = sections
            .as_object()
            .ok_or_else(|| Error::formula("sections", "expected an object"))?;
        for (name, s) in sections {
            let lo = parse_plf(
                s.get("lo")
                    .ok_or_else(|| Error::formula(name, "missing lo"))?,
            )?;
            let hi = parse_plf(
                s.get("hi")
                    .ok_or_else(|| Error::formula(name, "missing hi"))?,
            )?;
            env.sections.insert(
                name.clone(),
                IntervalSection::new(clock.clone(), lo, hi)
                    .map_err(|e| Error::formula(name, e.to_string()))?,
            );
        }
    }
    if let Some(g) = obj.get("graph") {
        env.graph = Some(
            serde_json::from_value::<Graph>(g.clone())
                .map_err(|e| Error::formula("graph", e.to_string()))?,
        );
    }
    if let Some(walks) = obj.get("walks") {
        let walks = walks
            .as_object()
            .ok_or_else(|| Error::formula("walks", "expected an object"))?;
        for (name, w) in walks {
            let wire: WalkWire = serde_json::from_value(w.clone())
                .map_err(|e| Error::formula(name, e.to_string()))?;
            let walk = Walk::from_wire(clock.window(), &wire)
                .map_err(|e| Error::formula(name, e.to_string()))?;
            if let Some(g) = &env.graph {
                walk.validate(g)
                    .map_err(|e| Error::formula(name, e.to_string()))?;
            }
            env.walks.insert(name.clone(), walk);
        }
    }
    Ok(env)
}

/// Parses a PLF from `[["x", "y"], ...]` (local coordinates).
pub fn parse_plf(v: &Value) -> Result<Plf> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::formula("plf", "expected an array of [x, y] pairs"))?;
    let mut pts = Vec::with_capacity(arr.len());
    for pair in arr {
        let p = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::formula("plf", "expected [x, y] pairs"))?;
        let x = parse_q(
            p[0].as_str()
                .ok_or_else(|| Error::formula("plf", "coordinates are strings"))?,
        )?;
        let y = parse_q(
            p[1].as_str()
                .ok_or_else(|| Error::formula("plf", "coordinates are strings"))?,
        )?;
        pts.push((x, y));
    }
    Plf::new(pts)
}

/// Serializes a PLF to the wire format.
pub fn plf_to_json(f: &Plf) -> Value {
    Value::Array(
        f.breakpoints()
            .iter()
            .map(|(x, y)| {
                Value::Array(vec![
                    Value::String(crate::rat::fmt_q(x)),
                    Value::String(crate::rat::fmt_q(y)),
                ])
            })
            .collect(),
    )
}

fn rational_field(v: &Value, node: &str, key: &str) -> Result<Q> {
    let field = v
        .get(key)
        .ok_or_else(|| Error::formula(node, format!("missing field {:?}", key)))?;
    match field {
        Value::String(s) => parse_q(s),
        Value::Number(n) => parse_q(&n.to_string()),
        _ => Err(Error::formula(node, format!("field {:?} must be a rational", key))),
    }
}

fn str_field<'v>(v: &'v Value, node: &str, key: &str) -> Result<&'v str> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::formula(node, format!("missing string field {:?}", key)))
}

fn args_field<'v>(v: &'v Value, node: &str, n: usize) -> Result<&'v [Value]> {
    let args = v
        .get("args")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::formula(node, "missing args array"))?;
    if args.len() != n {
        return Err(Error::formula(node, format!("expected {} arguments", n)));
    }
    Ok(args)
}

fn arg_field<'v>(v: &'v Value, node: &str) -> Result<&'v Value> {
    v.get("arg")
        .ok_or_else(|| Error::formula(node, "missing arg"))
}

/// Evaluates a path formula against an environment.
pub fn eval_path(v: &Value, env: &Env) -> Result<DyckPath> {
    let op = str_field(v, "formula", "op")?;
    let w = env.clock.window();
    match op {
        "top" => Ok(DyckPath::top(w)),
        "bottom" => Ok(DyckPath::bottom(w)),
        "and" | "or" | "implies" => {
            let args = args_field(v, op, 2)?;
            let a = eval_path(&args[0], env)?;
            let b = eval_path(&args[1], env)?;
            match op {
                "and" => a.and(&b),
                "or" => a.or(&b),
                _ => a.implies(&b),
            }
        }
        "not" => eval_path(arg_field(v, op)?, env)?.complement(),
        "restrict" => {
            let r = rational_field(v, op, "r")?;
            let s = rational_field(v, op, "s")?;
            eval_path(arg_field(v, op)?, env)?.restrict(&r, &s)
        }
        "lt" => Ok(modality::atom_lt(&env.clock, &rational_field(v, op, "q")?)),
        "gt" => Ok(modality::atom_gt(&env.clock, &rational_field(v, op, "q")?)),
        "apart" => {
            let a = rational_field(v, op, "a")?;
            let b = rational_field(v, op, "b")?;
            Ok(modality::apart(&env.clock, &a, &b))
        }
        "see" | "at" | "in" => {
            let d = rational_field(v, op, "d")?;
            let u = rational_field(v, op, "u")?;
            let p = eval_path(arg_field(v, op)?, env)?;
            match op {
                "see" => modality::see(&env.clock, &d, &u, &p),
                "at" => modality::at(&env.clock, &d, &u, &p),
                _ => modality::within(&env.clock, &d, &u, &p),
            }
        }
        "pi" => modality::pi(&eval_path(arg_field(v, op)?, env)?),
        "cmp" => {
            let dir = str_field(v, op, "dir")?;
            let left = operand(v, env, "left")?;
            let right = operand(v, env, "right")?;
            match dir {
                "lt" => lt_open(&left, &right),
                "leq" => leq_open(&left, &right),
                other => Err(Error::formula(op, format!("unknown dir {:?}", other))),
            }
        }
        "at_vertex" => {
            let wname = str_field(v, op, "walk")?;
            let vertex = str_field(v, op, "vertex")?;
            walk::eq_vertex_open(env.walk_of(wname)?, vertex, &env.clock)
        }
        "trav" => {
            let wname = str_field(v, op, "walk")?;
            let edge = str_field(v, op, "edge")?;
            let r = rational_field(v, op, "r")?;
            let b = walk::trav(env.walk_of(wname)?, &r, edge, &env.clock)?;
            Ok(if b {
                DyckPath::top(w)
            } else {
                DyckPath::bottom(w)
            })
        }
        "deriv_eq" => {
            let name = str_field(v, op, "trace")?;
            let vr = env
                .reals
                .get(name)
                .ok_or_else(|| Error::MissingTrace(name.to_string()))?;
            deriv_eq_open(vr, &rational_field(v, op, "c")?)
        }
        "delayed" => {
            let orig = env.walk_of(str_field(v, op, "original")?)?;
            let del = env.walk_of(str_field(v, op, "delayed")?)?;
            let d = rational_field(v, op, "d")?;
            let b = walk::delay_check_walks(orig, del, &d, &env.clock)?;
            Ok(if b {
                DyckPath::top(w)
            } else {
                DyckPath::bottom(w)
            })
        }
        other => Err(Error::formula(other, "unknown operator")),
    }
}

/// A named trace or a constant, as a comparison operand.
fn operand(v: &Value, env: &Env, key: &str) -> Result<IntervalSection> {
    let node = v
        .get(key)
        .ok_or_else(|| Error::formula(key, "missing operand"))?;
    if let Some(name) = node.get("trace").and_then(Value::as_str) {
        return env.section_of(name);
    }
    if let Some(c) = node.get("const") {
        let q = match c {
            Value::String(s) => parse_q(s)?,
            Value::Number(n) => parse_q(&n.to_string())?,
            _ => return Err(Error::formula(key, "const must be a rational")),
        };
        return Ok(VariableReal::constant(env.clock.clone(), q).as_section());
    }
    Err(Error::formula(key, "operand needs trace or const"))
}

/// Evaluates a signal formula against named signals.
pub fn eval_signal(
    v: &Value,
    signals: &BTreeMap<String, BoolSignal>,
    len: &Q,
) -> Result<BoolSignal> {
    let op = str_field(v, "formula", "op")?;
    match op {
        "top" => Ok(BoolSignal::top(len.clone())),
        "bottom" => Ok(BoolSignal::bottom(len.clone())),
        "atom" => {
            let name = str_field(v, op, "name")?;
            signals
                .get(name)
                .cloned()
                .ok_or_else(|| Error::MissingTrace(name.to_string()))
        }
        "not" => Ok(eval_signal(arg_field(v, op)?, signals, len)?.not()),
        "and" | "or" | "until" | "since" | "release" => {
            let args = args_field(v, op, 2)?;
            let a = eval_signal(&args[0], signals, len)?;
            let b = eval_signal(&args[1], signals, len)?;
            match op {
                "and" => a.and(&b),
                "or" => a.or(&b),
                "until" => mtl::until(&a, &b),
                "since" => mtl::since(&a, &b),
                _ => mtl::release(&a, &b),
            }
        }
        "metric_until" => {
            let args = args_field(v, op, 2)?;
            let a = eval_signal(&args[0], signals, len)?;
            let b = eval_signal(&args[1], signals, len)?;
            let d = rational_field(v, op, "d")?;
            let u = rational_field(v, op, "u")?;
            mtl::metric_until(&a, &b, &d, &u)
        }
        "box" => Ok(mtl::always(&eval_signal(arg_field(v, op)?, signals, len)?)),
        "diamond" => Ok(mtl::eventually(&eval_signal(
            arg_field(v, op)?,
            signals,
            len,
        )?)),
        "next" => {
            let step = if v.get("step").is_some() {
                rational_field(v, op, "step")?
            } else {
                Q::from_integer(1.into())
            };
            Ok(mtl::next(
                &eval_signal(arg_field(v, op)?, signals, len)?,
                &step,
            ))
        }
        other => Err(Error::formula(other, "unknown operator")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;
    use serde_json::json;

    fn env10() -> Env {
        let clock = Clock::new(qi(0), qi(10)).unwrap();
        let mut env = Env::new(clock.clone());
        env.reals.insert(
            "a".into(),
            VariableReal::new(clock.clone(), Plf::line(qi(0), qi(10), qi(0), qi(1)).unwrap())
                .unwrap(),
        );
        env
    }

    #[test]
    fn eval_atoms() {
        let env = env10();
        let f = json!({"op": "lt", "q": "4"});
        let p = eval_path(&f, &env).unwrap();
        assert_eq!(p, modality::atom_lt(&env.clock, &qi(4)));
        let g = json!({"op": "and", "args": [{"op": "top"}, {"op": "gt", "q": "0"}]});
        assert!(eval_path(&g, &env).unwrap().is_top());
    }

    #[test]
    fn eval_cmp() {
        let env = env10();
        let f = json!({"op": "cmp", "dir": "lt",
                       "left": {"trace": "a"}, "right": {"const": "5"}});
        let p = eval_path(&f, &env).unwrap();
        assert_eq!(p, modality::atom_lt(&env.clock, &qi(5)));
    }

    #[test]
    fn unknown_operator_is_named() {
        let env = env10();
        let f = json!({"op": "frobnicate"});
        match eval_path(&f, &env) {
            Err(Error::Formula { node, .. }) => assert_eq!(node, "frobnicate"),
            other => panic!("expected formula error, got {:?}", other),
        }
    }

    #[test]
    fn scenario_parsing() {
        let v = json!({
            "clock": {"d_t": "0", "u_t": "3"},
            "reals": {"a": [["0", "1"], ["3", "4"]]},
            "sections": {"band": {"lo": [["0", "0"], ["3", "0"]],
                                   "hi": [["0", "1"], ["3", "1"]]}},
            "graph": {
                "vertices": ["level", "climb"],
                "edges": [
                    {"id": "climb!", "src": "level", "tgt": "climb"},
                    {"id": "level!", "src": "climb", "tgt": "level"}
                ]
            },
            "walks": {"T": {"vertices": ["level", "climb"],
                             "edges": ["climb!"], "times": ["3/2"]}}
        });
        let env = parse_scenario(&v).unwrap();
        assert!(env.reals.contains_key("a"));
        assert!(env.walks.contains_key("T"));
        assert!(env.sections.contains_key("band"));
        let f = json!({"op": "at_vertex", "walk": "T", "vertex": "climb"});
        let p = eval_path(&f, &env).unwrap();
        assert!(!p.is_bottom());
        // sections are usable as comparison operands
        let g = json!({"op": "cmp", "dir": "lt",
                       "left": {"trace": "band"}, "right": {"const": "2"}});
        assert!(eval_path(&g, &env).unwrap().is_top());
    }

    #[test]
    fn signal_formulas() {
        let len = qi(10);
        let mut signals = BTreeMap::new();
        signals.insert(
            "p".to_string(),
            BoolSignal::from_flagged(len.clone(), vec![(qi(0), true, qi(5), true)]).unwrap(),
        );
        signals.insert(
            "q".to_string(),
            BoolSignal::from_flagged(len.clone(), vec![(qi(4), true, qi(6), true)]).unwrap(),
        );
        let f = json!({"op": "until", "args": [{"op": "atom", "name": "p"},
                                                {"op": "atom", "name": "q"}]});
        let s = eval_signal(&f, &signals, &len).unwrap();
        assert!(s.value(&qi(3)));
        assert!(!s.value(&qi(6)));
    }
}
