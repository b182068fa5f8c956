//! Behavior contracts and the airspace safety case study.
//!
//! A scenario bundles the traces on a fixed window: the altitude trajectory
//! `a`, the controller command walk `T`, the pilot command walk `P`, and the
//! four positive parameters (safe altitude, margin, pilot delay, climb
//! rate). The four component contracts:
//!
//! * `theta1` — the margin is positive and the altitude non-negative;
//! * `theta2` — the controller commands `level` above the threshold
//!   `safe + margin` and `climb` below it;
//! * `theta3` — the plane climbs at `rate` when the pilot says climb and
//!   holds altitude when the pilot says level;
//! * `theta4` — the pilot relays the controller's command after `del`.
//!
//! The safety goal: seen from the instant the clock shows zero, at all times
//! past `M = del + safe/rate` the altitude is at least `safe`. A system
//! check reports whether the contract conjunction, the goal, and the
//! implication from the one to the other are forced over the full window.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Clock;
use crate::modality::{atom_gt, see};
use crate::numeric::{cmp_const_open, leq_open, Dir, VariableReal};
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::{parse_q, Q};
use crate::walk::{delay_check_walks, eq_vertex_open, Graph, Walk};
use crate::{calculus::deriv_eq_open, rat::fmt_q};

/// The four positive parameters of the airspace model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NasParams {
    pub safe: Q,
    pub margin: Q,
    pub del: Q,
    pub rate: Q,
}

impl NasParams {
    pub fn new(safe: Q, margin: Q, del: Q, rate: Q) -> Result<Self> {
        for v in [&safe, &margin, &del, &rate] {
            if !v.is_positive() {
                return Err(Error::BadRational(format!("parameter {}", v)));
            }
        }
        Ok(NasParams {
            safe,
            margin,
            del,
            rate,
        })
    }

    /// The reference parameters: safe 100, margin 10, delay 2, rate 20.
    pub fn reference() -> Self {
        NasParams {
            safe: parse_q("100").unwrap(),
            margin: parse_q("10").unwrap(),
            del: parse_q("2").unwrap(),
            rate: parse_q("20").unwrap(),
        }
    }

    pub fn threshold(&self) -> Q {
        &self.safe + &self.margin
    }

    /// `M = del + safe / rate`.
    pub fn safety_horizon(&self) -> Q {
        &self.del + &self.safe / &self.rate
    }
}

/// The traces of one run: altitude, controller command, pilot command.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub clock: Clock,
    pub graph: Graph,
    pub altitude: VariableReal,
    pub controller: Walk,
    pub pilot: Walk,
    pub params: NasParams,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let w = self.clock.window();
        if self.altitude.clock != self.clock
            || self.controller.window() != &w
            || self.pilot.window() != &w
        {
            return Err(Error::WindowMismatch);
        }
        self.controller.validate(&self.graph)?;
        self.pilot.validate(&self.graph)
    }
}

/// A named behavior contract: a proposition builder over scenarios.
pub struct Contract {
    pub name: &'static str,
    pub builder: fn(&Scenario) -> Result<DyckPath>,
}

/// The four component contracts in order.
pub fn nas_contracts() -> Vec<Contract> {
    vec![
        Contract {
            name: "theta1",
            builder: theta1,
        },
        Contract {
            name: "theta2",
            builder: theta2,
        },
        Contract {
            name: "theta3",
            builder: theta3,
        },
        Contract {
            name: "theta4",
            builder: theta4,
        },
    ]
}

/// Margin positive and altitude non-negative.
pub fn theta1(s: &Scenario) -> Result<DyckPath> {
    let w = s.clock.window();
    let margin_ok = if s.params.margin.is_positive() {
        DyckPath::top(w.clone())
    } else {
        DyckPath::bottom(w.clone())
    };
    let zero = VariableReal::constant(s.clock.clone(), Q::zero());
    margin_ok.and(&leq_open(&zero, &s.altitude)?)
}

/// The controller calls level above the threshold and climb below it.
pub fn theta2(s: &Scenario) -> Result<DyckPath> {
    let thr = s.params.threshold();
    let above = cmp_const_open(&s.altitude, &thr, Dir::Gt)?;
    let below = cmp_const_open(&s.altitude, &thr, Dir::Lt)?;
    let level = eq_vertex_open(&s.controller, "level", &s.clock)?;
    let climb = eq_vertex_open(&s.controller, "climb", &s.clock)?;
    above.implies(&level)?.and(&below.implies(&climb)?)
}

/// The plane holds altitude on `level` and climbs at `rate` on `climb`.
pub fn theta3(s: &Scenario) -> Result<DyckPath> {
    let level = eq_vertex_open(&s.pilot, "level", &s.clock)?;
    let climb = eq_vertex_open(&s.pilot, "climb", &s.clock)?;
    let flat = deriv_eq_open(&s.altitude, &Q::zero())?;
    let rising = deriv_eq_open(&s.altitude, &s.params.rate)?;
    level.implies(&flat)?.and(&climb.implies(&rising)?)
}

/// The pilot is the controller delayed by `del`: a window-global condition,
/// so the contract is top or bottom.
pub fn theta4(s: &Scenario) -> Result<DyckPath> {
    let w = s.clock.window();
    if delay_check_walks(&s.controller, &s.pilot, &s.params.del, &s.clock)? {
        Ok(DyckPath::top(w))
    } else {
        Ok(DyckPath::bottom(w))
    }
}

/// The safety goal: `See{0} (M < t  =>  safe <= a)`.
pub fn safety_goal(s: &Scenario) -> Result<DyckPath> {
    let m = s.params.safety_horizon();
    let past_m = atom_gt(&s.clock, &m);
    let safe_alt = leq_open(
        &VariableReal::constant(s.clock.clone(), s.params.safe.clone()),
        &s.altitude,
    )?;
    let zero = Q::zero();
    see(&s.clock, &zero, &zero, &past_m.implies(&safe_alt)?)
}

/// Verdict of a system check: each contract, their conjunction, the goal,
/// and the outer implication, all as full-window forcing.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub per_contract: Vec<(String, bool)>,
    pub contracts_forced: bool,
    pub goal_forced: bool,
    pub implication_forced: bool,
}

impl Verdict {
    pub fn all_pass(&self) -> bool {
        self.contracts_forced && self.goal_forced && self.implication_forced
    }
}

/// Checks a scenario against contracts and a goal: reports forcing of the
/// conjunction, of the goal, and of `(conjunction => goal)`, over the full
/// window.
pub fn check_system(
    s: &Scenario,
    contracts: &[Contract],
    goal: fn(&Scenario) -> Result<DyckPath>,
) -> Result<Verdict> {
    s.validate()?;
    let w = s.clock.window();
    let mut conj = DyckPath::top(w.clone());
    let mut per_contract = Vec::new();
    for c in contracts {
        let p = (c.builder)(s)?;
        per_contract.push((c.name.to_string(), p.forced()));
        conj = conj.and(&p)?;
    }
    let goal_path = goal(s)?;
    let implication = conj.implies(&goal_path)?;
    Ok(Verdict {
        contracts_forced: conj.forced(),
        goal_forced: goal_path.forced(),
        implication_forced: implication.forced(),
        per_contract,
    })
}

/// Deterministic closed-loop reference witness. The pilot starts with the
/// command the controller would issue just before the window (climb iff the
/// initial altitude is below the threshold); the altitude integrates `rate`
/// while the pilot says climb and holds while the pilot says level; the
/// controller switches exactly at the threshold crossing; the pilot repeats
/// the controller's command `del` later.
pub fn simulate_closed_loop(params: &NasParams, clock: &Clock, a0: &Q) -> Result<Scenario> {
    if a0.is_negative() {
        return Err(Error::BadRational(format!("initial altitude {}", a0)));
    }
    let l = clock.window().len().clone();
    let thr = params.threshold();
    let graph = Graph::command_graph();
    let w = clock.window();
    let initially_climbing = a0 < &thr;
    if !initially_climbing {
        // flat run: controller and pilot level throughout
        let alt = VariableReal::constant(clock.clone(), a0.clone());
        return Ok(Scenario {
            clock: clock.clone(),
            graph,
            altitude: alt,
            controller: Walk::constant(w.clone(), "level"),
            pilot: Walk::constant(w.clone(), "level"),
            params: params.clone(),
        });
    }
    // climbing from a0: the threshold crossing in local time
    let t_star = (&thr - a0) / &params.rate;
    let p_star = &t_star + &params.del;
    // altitude: rises at `rate` while the pilot climbs (until p_star), flat after
    let altitude = {
        let mut pts = vec![(Q::zero(), a0.clone())];
        if p_star < l {
            let peak = a0 + &params.rate * &p_star;
            pts.push((p_star.clone(), peak.clone()));
            pts.push((l.clone(), peak));
        } else {
            pts.push((l.clone(), a0 + &params.rate * &l));
        }
        VariableReal::new(clock.clone(), Plf::new(pts)?)?
    };
    let controller = if t_star < l {
        Walk::new(
            w.clone(),
            vec!["climb".into(), "level".into()],
            vec!["level!".into()],
            vec![t_star.clone()],
        )?
    } else {
        Walk::constant(w.clone(), "climb")
    };
    let pilot = if p_star < l {
        Walk::new(
            w.clone(),
            vec!["climb".into(), "level".into()],
            vec!["level!".into()],
            vec![p_star.clone()],
        )?
    } else {
        Walk::constant(w.clone(), "climb")
    };
    Ok(Scenario {
        clock: clock.clone(),
        graph,
        altitude,
        controller,
        pilot,
        params: params.clone(),
    })
}

/// Builds a scenario like the closed-loop one but with the pilot reacting
/// after `actual_delay` instead of the contractual `params.del`; used to
/// exercise contract violations.
pub fn simulate_with_pilot_delay(
    params: &NasParams,
    clock: &Clock,
    a0: &Q,
    actual_delay: &Q,
) -> Result<Scenario> {
    let mut adjusted = params.clone();
    adjusted.del = actual_delay.clone();
    let mut s = simulate_closed_loop(&adjusted, clock, a0)?;
    s.params = params.clone();
    Ok(s)
}

/// Pretty one-line rendering of a verdict for reports.
pub fn verdict_lines(v: &Verdict) -> Vec<String> {
    let mut out = Vec::new();
    for (name, pass) in &v.per_contract {
        out.push(format!(
            "{}: {}",
            name,
            if *pass { "forced" } else { "NOT forced" }
        ));
    }
    out.push(format!(
        "contracts: {}",
        if v.contracts_forced { "forced" } else { "NOT forced" }
    ));
    out.push(format!(
        "safety goal: {}",
        if v.goal_forced { "forced" } else { "NOT forced" }
    ));
    out.push(format!(
        "contracts => goal: {}",
        if v.implication_forced { "forced" } else { "NOT forced" }
    ));
    out
}

/// Lemma shadow: on a compliant scenario the altitude never decreases. True
/// when the lower derivative is non-negative everywhere.
pub fn altitude_nondecreasing(s: &Scenario) -> Result<bool> {
    let db = crate::calculus::derivative_bounds_real(&s.altitude);
    let l = s.clock.window().len().clone();
    let lo = db.lo_prime.inf_on(&Q::zero(), &l)?;
    Ok(lo >= crate::rat::ExtQ::zero())
}

/// Scenario description used by the command-line front end.
#[derive(serde::Serialize, serde::Deserialize)]
pub struct NasRunFile {
    pub clock: Clock,
    pub params: NasParamsWire,
    pub a0: String,
}

#[derive(serde::Serialize, serde::Deserialize)]
pub struct NasParamsWire {
    pub safe: String,
    pub margin: String,
    pub del: String,
    pub rate: String,
}

impl NasParamsWire {
    pub fn parse(&self) -> Result<NasParams> {
        NasParams::new(
            parse_q(&self.safe)?,
            parse_q(&self.margin)?,
            parse_q(&self.del)?,
            parse_q(&self.rate)?,
        )
    }

    pub fn from_params(p: &NasParams) -> Self {
        NasParamsWire {
            safe: fmt_q(&p.safe),
            margin: fmt_q(&p.margin),
            del: fmt_q(&p.del),
            rate: fmt_q(&p.rate),
        }
    }
}
