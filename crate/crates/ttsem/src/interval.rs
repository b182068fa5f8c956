//! Points and order structure of the interval domain, and the half-plane
//! picture.
//!
//! An [`IntervalPoint`] `[d, u]` is a compact interval; the order is reverse
//! inclusion, so going up means gaining precision. The half-plane map sends
//! `[d, u]` to its midpoint and radius, turning the specialization order and
//! the way-below relation into cone conditions.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plf::Plf;
use crate::rat::{fmt_q, parse_q, Q};

/// A point `[d, u]` of the interval domain, `d <= u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPoint {
    pub d: Q,
    pub u: Q,
}

impl IntervalPoint {
    pub fn new(d: Q, u: Q) -> Result<Self> {
        if d > u {
            return Err(Error::ImproperInterval);
        }
        Ok(IntervalPoint { d, u })
    }
}

/// The half-plane representation `(m, r)` of an interval point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlanePoint {
    pub m: Q,
    pub r: Q,
}

impl HalfPlanePoint {
    pub fn new(m: Q, r: Q) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadius);
        }
        Ok(HalfPlanePoint { m, r })
    }
}

/// A window: an object of the translation-invariant site, a positive length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    len: Q,
}

impl Window {
    pub fn new(len: Q) -> Result<Self> {
        if !len.is_positive() {
            return Err(Error::EmptyWindow);
        }
        Ok(Window { len })
    }

    pub fn len(&self) -> &Q {
        &self.len
    }
}

/// A section of `Time` over a window: the pair `(d_t, u_t)` of clock values
/// at the two ends, with `u_t - d_t` the window length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClockWire", into = "ClockWire")]
pub struct Clock {
    pub d_t: Q,
    pub u_t: Q,
}

#[derive(Serialize, Deserialize)]
struct ClockWire {
    d_t: String,
    u_t: String,
}

impl TryFrom<ClockWire> for Clock {
    type Error = Error;
    fn try_from(w: ClockWire) -> Result<Clock> {
        Clock::new(parse_q(&w.d_t)?, parse_q(&w.u_t)?)
    }
}

impl From<Clock> for ClockWire {
    fn from(c: Clock) -> ClockWire {
        ClockWire {
            d_t: fmt_q(&c.d_t),
            u_t: fmt_q(&c.u_t),
        }
    }
}

impl Clock {
    pub fn new(d_t: Q, u_t: Q) -> Result<Self> {
        if d_t >= u_t {
            return Err(Error::EmptyWindow);
        }
        Ok(Clock { d_t, u_t })
    }

    pub fn window(&self) -> Window {
        Window {
            len: &self.u_t - &self.d_t,
        }
    }

    /// Local coordinate of a global clock time.
    pub fn to_local(&self, t: &Q) -> Q {
        t - &self.d_t
    }
}

/// Specialization order: `[d_p, u_p]` below `[d_q, u_q]` iff the second
/// refines the first, `d_p <= d_q <= u_q <= u_p`.
pub fn below(p: &IntervalPoint, q: &IntervalPoint) -> bool {
    p.d <= q.d && q.u <= p.u
}

/// Way-below: both inclusions strict.
pub fn way_below(p: &IntervalPoint, q: &IntervalPoint) -> bool {
    p.d < q.d && q.u < p.u
}

/// Binary meet: `[min(d_1, d_2), max(u_1, u_2)]`.
pub fn point_meet(p: &IntervalPoint, q: &IntervalPoint) -> IntervalPoint {
    IntervalPoint {
        d: p.d.clone().min(q.d.clone()),
        u: p.u.clone().max(q.u.clone()),
    }
}

/// Midpoint/radius representation: `m = (u+d)/2`, `r = (u-d)/2`.
pub fn to_halfplane(p: &IntervalPoint) -> HalfPlanePoint {
    let two = Q::from_integer(2.into());
    HalfPlanePoint {
        m: (&p.u + &p.d) / &two,
        r: (&p.u - &p.d) / &two,
    }
}

/// Inverse of [`to_halfplane`]: `d = m - r`, `u = m + r`.
pub fn from_halfplane(h: &HalfPlanePoint) -> Result<IntervalPoint> {
    if h.r.is_negative() {
        return Err(Error::NegativeRadius);
    }
    Ok(IntervalPoint {
        d: &h.m - &h.r,
        u: &h.m + &h.r,
    })
}

/// The largest 1-Lipschitz function supported on `[0, l]`: the tent
/// `x -> min(x, l - x)`.
pub fn tent(w: &Window) -> Plf {
    let l = w.len();
    let two = Q::from_integer(2.into());
    Plf::new(vec![
        (Q::zero(), Q::zero()),
        (l / &two, l / &two),
        (l.clone(), Q::zero()),
    ])
    .expect("tent breakpoints are valid")
}
