//! Classical temporal logic on boolean signals, with an embedding into the
//! open-set semantics.
//!
//! A [`BoolSignal`] is a finite union of intervals of `[0, l]` with exact
//! rational endpoints and per-endpoint open/closed flags. Until and since
//! are evaluated classically and exactly:
//! `(p U q)(t0)` holds iff there is `t >= t0` with `q(t)` and `p` on all of
//! `[t0, t]`. The metric variant existentially bounds `t` in the open
//! interval `(t0 + d, t0 + u)` and requires `p` only on the open `(t0, t)`.
//!
//! [`to_open`] turns a signal into the largest proposition whose interval
//! points sit inside the true-set: the tent cut by the distance to the
//! closure of the false-set.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{tent, Window};
use crate::omega::DyckPath;
use crate::plf::ClosedSet1D;
use crate::rat::{fmt_q, parse_q, Q};

/// One maximal component of the true-set, with endpoint flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comp {
    pub lo: Q,
    pub lo_closed: bool,
    pub hi: Q,
    pub hi_closed: bool,
}

impl Comp {
    fn is_valid(&self) -> bool {
        self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed)
    }

    fn contains(&self, x: &Q) -> bool {
        let left = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let right = if self.hi_closed {
            x <= &self.hi
        } else {
            x < &self.hi
        };
        left && right
    }

    /// Do the two components touch or overlap (union is one interval)?
    fn merges_with(&self, next: &Comp) -> bool {
        if next.lo < self.hi {
            return true;
        }
        if next.lo == self.hi {
            return self.hi_closed || next.lo_closed;
        }
        false
    }
}

/// A two-valued signal over `[0, l]` with exact flagged components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolSignal {
    len: Q,
    comps: Vec<Comp>,
}

/// Wire format: `{"true_on": [["0", "5", "closed", "open"], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct SignalWire {
    pub true_on: Vec<(String, String, String, String)>,
}

impl BoolSignal {
    pub fn bottom(len: Q) -> Self {
        BoolSignal {
            len,
            comps: Vec::new(),
        }
    }

    pub fn top(len: Q) -> Self {
        let comp = Comp {
            lo: Q::zero(),
            lo_closed: true,
            hi: len.clone(),
            hi_closed: true,
        };
        BoolSignal {
            len,
            comps: vec![comp],
        }
    }

    /// Builds from raw flagged tuples `(lo, lo_closed, hi, hi_closed)`,
    /// clipping to `[0, len]`, dropping empties and merging touching
    /// components.
    pub fn from_flagged(len: Q, raw: Vec<(Q, bool, Q, bool)>) -> Result<Self> {
        let mut comps: Vec<Comp> = Vec::new();
        for (lo, lo_closed, hi, hi_closed) in raw {
            let mut c = Comp {
                lo,
                lo_closed,
                hi,
                hi_closed,
            };
            if c.lo < Q::zero() {
                c.lo = Q::zero();
                c.lo_closed = true;
            }
            if c.hi > len {
                c.hi = len.clone();
                c.hi_closed = true;
            }
            if c.is_valid() {
                comps.push(c);
            }
        }
        comps.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut merged: Vec<Comp> = Vec::new();
        for c in comps {
            match merged.last_mut() {
                Some(last) if last.merges_with(&c) => {
                    if c.hi > last.hi || (c.hi == last.hi && c.hi_closed) {
                        if c.hi == last.hi {
                            last.hi_closed = last.hi_closed || c.hi_closed;
                        } else {
                            last.hi = c.hi;
                            last.hi_closed = c.hi_closed;
                        }
                    }
                    if c.lo == last.lo {
                        last.lo_closed = last.lo_closed || c.lo_closed;
                    }
                }
                _ => merged.push(c),
            }
        }
        Ok(BoolSignal { len, comps: merged })
    }

    pub fn len(&self) -> &Q {
        &self.len
    }

    pub fn components(&self) -> &[Comp] {
        &self.comps
    }

    pub fn value(&self, x: &Q) -> bool {
        self.comps.iter().any(|c| c.contains(x))
    }

    pub fn is_top(&self) -> bool {
        self == &BoolSignal::top(self.len.clone())
    }

    fn same_len(&self, other: &BoolSignal) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// Complement within `[0, len]`, flags flipped exactly.
    pub fn not(&self) -> BoolSignal {
        let mut out: Vec<(Q, bool, Q, bool)> = Vec::new();
        let mut cursor = Q::zero();
        let mut cursor_closed = true;
        for c in &self.comps {
            if cursor < c.lo || (cursor == c.lo && cursor_closed && !c.lo_closed) {
                out.push((cursor.clone(), cursor_closed, c.lo.clone(), !c.lo_closed));
            }
            cursor = c.hi.clone();
            cursor_closed = !c.hi_closed;
        }
        if cursor < self.len || (cursor == self.len && cursor_closed) {
            out.push((cursor, cursor_closed, self.len.clone(), true));
        }
        BoolSignal::from_flagged(self.len.clone(), out).expect("complement components")
    }

    pub fn and(&self, other: &BoolSignal) -> Result<BoolSignal> {
        self.same_len(other)?;
        let mut out = Vec::new();
        for a in &self.comps {
            for b in &other.comps {
                let (lo, lo_closed) = if a.lo > b.lo {
                    (a.lo.clone(), a.lo_closed)
                } else if b.lo > a.lo {
                    (b.lo.clone(), b.lo_closed)
                } else {
                    (a.lo.clone(), a.lo_closed && b.lo_closed)
                };
                let (hi, hi_closed) = if a.hi < b.hi {
                    (a.hi.clone(), a.hi_closed)
                } else if b.hi < a.hi {
                    (b.hi.clone(), b.hi_closed)
                } else {
                    (a.hi.clone(), a.hi_closed && b.hi_closed)
                };
                out.push((lo, lo_closed, hi, hi_closed));
            }
        }
        BoolSignal::from_flagged(self.len.clone(), out)
    }

    pub fn or(&self, other: &BoolSignal) -> Result<BoolSignal> {
        self.same_len(other)?;
        let mut out: Vec<(Q, bool, Q, bool)> = Vec::new();
        for c in self.comps.iter().chain(other.comps.iter()) {
            out.push((c.lo.clone(), c.lo_closed, c.hi.clone(), c.hi_closed));
        }
        BoolSignal::from_flagged(self.len.clone(), out)
    }

    /// Serialization to the wire format.
    pub fn to_wire(&self) -> SignalWire {
        SignalWire {
            true_on: self
                .comps
                .iter()
                .map(|c| {
                    (
                        fmt_q(&c.lo),
                        fmt_q(&c.hi),
                        if c.lo_closed { "closed" } else { "open" }.to_string(),
                        if c.hi_closed { "closed" } else { "open" }.to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_wire(len: Q, w: &SignalWire) -> Result<BoolSignal> {
        let parse_flag = |s: &str| match s {
            "closed" => Ok(true),
            "open" => Ok(false),
            other => Err(Error::BadRational(format!("flag {:?}", other))),
        };
        let raw = w
            .true_on
            .iter()
            .map(|(lo, hi, lf, hf)| {
                Ok((parse_q(lo)?, parse_flag(lf)?, parse_q(hi)?, parse_flag(hf)?))
            })
            .collect::<Result<Vec<_>>>()?;
        BoolSignal::from_flagged(len, raw)
    }
}

/// Until: `(p U q)(t0)` iff there is `t` in `[t0, l]` with `q(t)` and `p`
/// throughout the closed `[t0, t]`.
///
/// Exactly: for `t0` inside a p-component `C`, the condition holds iff the
/// q-true set meets `C` at or after `t0`; the answer on `C` is the prefix of
/// `C` up to the last q-point of `C`, closed там iff that supremum is
/// attained.
pub fn until(p: &BoolSignal, q: &BoolSignal) -> Result<BoolSignal> {
    p.same_len(q)?;
    let mut out: Vec<(Q, bool, Q, bool)> = Vec::new();
    for c in &p.comps {
        // supremum of q inside the flagged component c
        let mut best: Option<(Q, bool)> = None;
        for qc in &q.comps {
            // intersection of qc with c
            let (lo, lo_closed) = if qc.lo > c.lo {
                (qc.lo.clone(), qc.lo_closed)
            } else if c.lo > qc.lo {
                (c.lo.clone(), c.lo_closed)
            } else {
                (c.lo.clone(), c.lo_closed && qc.lo_closed)
            };
            let (hi, hi_closed) = if qc.hi < c.hi {
                (qc.hi.clone(), qc.hi_closed)
            } else if c.hi < qc.hi {
                (c.hi.clone(), c.hi_closed)
            } else {
                (c.hi.clone(), c.hi_closed && qc.hi_closed)
            };
            let nonempty = lo < hi || (lo == hi && lo_closed && hi_closed);
            if !nonempty {
                continue;
            }
            let cand = (hi, hi_closed);
            if best
                .as_ref()
                .is_none_or(|(b, bc)| cand.0 > *b || (cand.0 == *b && cand.1 && !bc))
            {
                best = Some(cand);
            }
        }
        if let Some((till, attained)) = best {
            out.push((c.lo.clone(), c.lo_closed, till, attained));
        }
    }
    BoolSignal::from_flagged(p.len.clone(), out)
}

/// Since: the time-reverse of until.
pub fn since(p: &BoolSignal, q: &BoolSignal) -> Result<BoolSignal> {
    Ok(reverse(&until(&reverse(p), &reverse(q))?))
}

fn reverse(s: &BoolSignal) -> BoolSignal {
    let mut comps: Vec<Comp> = s
        .comps
        .iter()
        .map(|c| Comp {
            lo: &s.len - &c.hi,
            lo_closed: c.hi_closed,
            hi: &s.len - &c.lo,
            hi_closed: c.lo_closed,
        })
        .collect();
    comps.reverse();
    BoolSignal {
        len: s.len.clone(),
        comps,
    }
}

/// Box: `p` holds from `t0` to the end of the window (closed at the end).
pub fn always(p: &BoolSignal) -> BoolSignal {
    let mut out = Vec::new();
    if let Some(last) = p.comps.last() {
        if last.hi == p.len && last.hi_closed {
            out.push((
                last.lo.clone(),
                last.lo_closed,
                p.len.clone(),
                true,
            ));
        }
    }
    BoolSignal::from_flagged(p.len.clone(), out).expect("suffix component")
}

/// Diamond: some future instant (including now) satisfies `p`.
pub fn eventually(p: &BoolSignal) -> BoolSignal {
    let mut out = Vec::new();
    if let Some(last) = p.comps.last() {
        out.push((Q::zero(), true, last.hi.clone(), last.hi_closed));
    }
    BoolSignal::from_flagged(p.len.clone(), out).expect("prefix component")
}

/// Release, dual to until: `(p R q)(t0)` iff for every `t >= t0` such that
/// `p` fails throughout `[t0, t]`, `q(t)` holds.
pub fn release(p: &BoolSignal, q: &BoolSignal) -> Result<BoolSignal> {
    Ok(until(&p.not(), &q.not())?.not())
}

/// Next: `p` at `t0 + step`, false when that instant leaves the window.
pub fn next(p: &BoolSignal, step: &Q) -> BoolSignal {
    let mut out = Vec::new();
    for c in &p.comps {
        out.push((&c.lo - step, c.lo_closed, &c.hi - step, c.hi_closed));
    }
    BoolSignal::from_flagged(p.len.clone(), out).expect("shifted components")
}

/// Metric until on the open parameter interval `(d, u)`:
/// `(p U_(d,u) q)(t0)` iff there is `t` with `t0 + d < t < t0 + u`, `q(t)`,
/// and `p` throughout the open `(t0, t)`.
pub fn metric_until(p: &BoolSignal, q: &BoolSignal, d: &Q, u: &Q) -> Result<BoolSignal> {
    p.same_len(q)?;
    let len = p.len.clone();
    if d >= u {
        return Ok(BoolSignal::bottom(len));
    }
    // critical t0 candidates: signal endpoints shifted by 0, -d, -u
    let mut crit: Vec<Q> = vec![Q::zero(), len.clone()];
    for c in p.comps.iter().chain(q.comps.iter()) {
        for e in [&c.lo, &c.hi] {
            for shift in [Q::zero(), d.clone(), u.clone()] {
                let t = e - &shift;
                if t >= Q::zero() && t <= len {
                    crit.push(t);
                }
            }
        }
    }
    crit.sort();
    crit.dedup();
    // flagged bound arithmetic: (value, strict)
    let max_bound = |bounds: &[(Q, bool)]| -> (Q, bool) {
        let mut best = bounds[0].clone();
        for b in &bounds[1..] {
            if b.0 > best.0 || (b.0 == best.0 && b.1) {
                best = b.clone();
            }
        }
        best
    };
    let min_bound = |bounds: &[(Q, bool)]| -> (Q, bool) {
        let mut best = bounds[0].clone();
        for b in &bounds[1..] {
            if b.0 < best.0 || (b.0 == best.0 && b.1) {
                best = b.clone();
            }
        }
        best
    };
    let exists_between = |lo: &(Q, bool), hi: &(Q, bool)| -> bool {
        lo.0 < hi.0 || (lo.0 == hi.0 && !lo.1 && !hi.1)
    };
    // atom representatives: the critical points themselves and cell midpoints
    let two = Q::from_integer(2.into());
    let mut out: Vec<(Q, bool, Q, bool)> = Vec::new();
    let eval_at = |t0: &Q| -> bool {
        // end of the p-run starting just after t0: the component with
        // lo <= t0 < hi; t = run end is allowed since (t0, t) is open
        let p_run_end: Option<Q> = p
            .comps
            .iter()
            .find(|c| &c.lo <= t0 && t0 < &c.hi)
            .map(|c| c.hi.clone());
        let lo_param = (t0 + d, true);
        let up_param = (t0 + u, true);
        for qc in &q.comps {
            let q_lo = (qc.lo.clone(), !qc.lo_closed);
            let q_hi = (qc.hi.clone(), !qc.hi_closed);
            // case 1: t <= t0, the p-condition is vacuous
            {
                let lo = max_bound(&[q_lo.clone(), lo_param.clone()]);
                let hi = min_bound(&[q_hi.clone(), (t0.clone(), false), up_param.clone()]);
                if exists_between(&lo, &hi) {
                    return true;
                }
            }
            // case 2: t > t0 with (t0, t) inside the p-run
            if let Some(run_end) = &p_run_end {
                let lo = max_bound(&[q_lo.clone(), lo_param.clone(), (t0.clone(), true)]);
                let hi = min_bound(&[q_hi.clone(), (run_end.clone(), false), up_param.clone()]);
                if exists_between(&lo, &hi) {
                    return true;
                }
            }
        }
        false
    };
    for (i, t0) in crit.iter().enumerate() {
        if eval_at(t0) {
            out.push((t0.clone(), true, t0.clone(), true));
        }
        if i + 1 < crit.len() {
            let mid = (&crit[i] + &crit[i + 1]) / &two;
            if eval_at(&mid) {
                out.push((crit[i].clone(), false, crit[i + 1].clone(), false));
            }
        }
    }
    BoolSignal::from_flagged(len, out)
}

/// The largest proposition whose interval points all sit inside the
/// true-set: the tent cut down by the distance to the closure of the
/// false-set.
pub fn to_open(s: &BoolSignal, window: &Window) -> Result<DyckPath> {
    if s.len() != window.len() {
        return Err(Error::WindowMismatch);
    }
    let false_set = s.not();
    let closure = ClosedSet1D::from_components(
        false_set
            .comps
            .iter()
            .map(|c| (c.lo.clone(), c.hi.clone()))
            .collect(),
    );
    let t = tent(window);
    let dist = closure.dist_plf(&Q::zero(), s.len())?;
    let path = if dist.is_infinite() {
        t
    } else {
        dist.pw_min(&t)?
    };
    DyckPath::new(window.clone(), path)
}
