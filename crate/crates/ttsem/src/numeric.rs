//! Kaucher interval arithmetic and piecewise-linear sections of the numeric
//! sheaves.
//!
//! A [`KInterval`] is a pair of extended rationals with no order constraint;
//! improper intervals (u < d) are first-class and multiplication follows the
//! signed-parts endpoint formula. Sections of the pointwise-local numeric
//! sheaves are represented by their values on the real axis: a
//! [`VariableReal`] is one continuous piecewise-linear trajectory, an
//! [`IntervalSection`] a pair of endpoint trajectories, and lifting to a
//! fattened interval point takes the min of the lower endpoint and the max
//! of the upper endpoint over the window.
//!
//! The strict comparison `x < y` of sections is an open of the cone: an
//! interval point belongs to it when the upper lift of `x` stays strictly
//! below the lower lift of `y` over the whole window. [`lt_open`] computes
//! the exact boundary path of that open by reducing it to a 1-Lipschitz
//! envelope of violation half-widths.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{tent, Clock, IntervalPoint};
use crate::omega::DyckPath;
use crate::plf::{lipschitz_envelope, LinPiece, Plf};
use crate::rat::{ExtQ, Q};

/// A possibly improper interval of extended rationals.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "KIntervalWire", into = "KIntervalWire")]
pub struct KInterval {
    pub d: ExtQ,
    pub u: ExtQ,
}

/// Wire format: `{"d": "1/2", "u": "-inf"}`.
#[derive(serde::Serialize, serde::Deserialize)]
struct KIntervalWire {
    d: String,
    u: String,
}

impl TryFrom<KIntervalWire> for KInterval {
    type Error = Error;
    fn try_from(w: KIntervalWire) -> Result<KInterval> {
        Ok(KInterval {
            d: crate::rat::parse_extq(&w.d)?,
            u: crate::rat::parse_extq(&w.u)?,
        })
    }
}

impl From<KInterval> for KIntervalWire {
    fn from(k: KInterval) -> KIntervalWire {
        KIntervalWire {
            d: k.d.to_string(),
            u: k.u.to_string(),
        }
    }
}

impl KInterval {
    pub fn new(d: ExtQ, u: ExtQ) -> Self {
        KInterval { d, u }
    }

    pub fn from_q(d: Q, u: Q) -> Self {
        KInterval {
            d: ExtQ::Fin(d),
            u: ExtQ::Fin(u),
        }
    }

    pub fn point(q: Q) -> Self {
        KInterval::from_q(q.clone(), q)
    }

    pub fn zero() -> Self {
        KInterval::point(Q::zero())
    }

    pub fn is_proper(&self) -> bool {
        self.d <= self.u
    }

    /// Endpoint-wise addition; errors on opposite infinities.
    pub fn add(&self, other: &KInterval) -> Result<KInterval> {
        Ok(KInterval {
            d: self.d.add(&other.d)?,
            u: self.u.add(&other.u)?,
        })
    }

    /// Subtraction `[d1 - u2, u1 - d2]`.
    pub fn sub(&self, other: &KInterval) -> Result<KInterval> {
        Ok(KInterval {
            d: self.d.sub(&other.u)?,
            u: self.u.sub(&other.d)?,
        })
    }

    /// Endpoint-wise maximum.
    pub fn max(&self, other: &KInterval) -> KInterval {
        KInterval {
            d: self.d.clone().max(other.d.clone()),
            u: self.u.clone().max(other.u.clone()),
        }
    }

    /// Meet in the interval predomain: `[min(d1, d2), max(u1, u2)]`.
    pub fn meet(&self, other: &KInterval) -> KInterval {
        KInterval {
            d: self.d.clone().min(other.d.clone()),
            u: self.u.clone().max(other.u.clone()),
        }
    }

    /// Kaucher multiplication via the signed-parts formula:
    /// `d' = max(d1+ d2+, u1- u2-) - max(u1+ d2-, u2+ d1-)`,
    /// `u' = max(u1+ u2+, d1- d2-) - max(d1+ u2-, d2+ u1-)`.
    pub fn mul(&self, other: &KInterval) -> KInterval {
        let (d1p, d1n) = (self.d.pos_part(), self.d.neg_part());
        let (u1p, u1n) = (self.u.pos_part(), self.u.neg_part());
        let (d2p, d2n) = (other.d.pos_part(), other.d.neg_part());
        let (u2p, u2n) = (other.u.pos_part(), other.u.neg_part());
        let d = d1p
            .mul(&d2p)
            .max(u1n.mul(&u2n))
            .sub(&u1p.mul(&d2n).max(u2p.mul(&d1n)))
            .expect("signed parts are single-signed");
        let u = u1p
            .mul(&u2p)
            .max(d1n.mul(&d2n))
            .sub(&d1p.mul(&u2n).max(d2p.mul(&u1n)))
            .expect("signed parts are single-signed");
        KInterval { d, u }
    }

    /// Reciprocal `(1/u, 1/d)` of a positive interval.
    pub fn recip(&self) -> Result<KInterval> {
        let one = Q::one();
        match (&self.d, &self.u) {
            (ExtQ::Fin(d), ExtQ::Fin(u)) if d.is_positive() && u.is_positive() => {
                Ok(KInterval::from_q(&one / u, &one / d))
            }
            _ => Err(Error::NonPositiveInterval),
        }
    }

    pub fn neg(&self) -> KInterval {
        KInterval {
            d: self.u.neg(),
            u: self.d.neg(),
        }
    }
}

/// Access to the endpoint trajectories of a numeric section.
pub trait Endpoints {
    fn clock(&self) -> &Clock;
    fn lo(&self) -> &Plf;
    fn hi(&self) -> &Plf;
}

/// A section of the pointwise-local reals: one continuous piecewise-linear
/// trajectory over the window (local coordinates `[0, l]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableReal {
    pub clock: Clock,
    pub g: Plf,
}

impl VariableReal {
    pub fn new(clock: Clock, g: Plf) -> Result<Self> {
        if g.is_infinite() {
            return Err(Error::InfiniteValue);
        }
        let (a, b) = g.domain();
        if !a.is_zero() || b != clock.window().len() {
            return Err(Error::DomainMismatch);
        }
        Ok(VariableReal { clock, g })
    }

    pub fn constant(clock: Clock, c: Q) -> Self {
        let g = Plf::constant(Q::zero(), clock.window().len().clone(), c)
            .expect("constant plf");
        VariableReal { clock, g }
    }

    /// The trajectory whose value is the clock reading itself: `g(x) = d_t + x`.
    pub fn time(clock: Clock) -> Self {
        let g = Plf::line(
            Q::zero(),
            clock.window().len().clone(),
            clock.d_t.clone(),
            Q::one(),
        )
        .expect("line plf");
        VariableReal { clock, g }
    }

    fn same_clock(&self, other: &VariableReal) -> Result<()> {
        if self.clock != other.clock {
            return Err(Error::ClockMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &VariableReal) -> Result<VariableReal> {
        self.same_clock(other)?;
        Ok(VariableReal {
            clock: self.clock.clone(),
            g: self.g.add(&other.g)?,
        })
    }

    pub fn scale(&self, c: &Q) -> Result<VariableReal> {
        Ok(VariableReal {
            clock: self.clock.clone(),
            g: self.g.scale(c)?,
        })
    }

    pub fn max(&self, other: &VariableReal) -> Result<VariableReal> {
        self.same_clock(other)?;
        Ok(VariableReal {
            clock: self.clock.clone(),
            g: self.g.pw_max(&other.g)?,
        })
    }

    /// Product, interpolated on the union grid refined to mesh
    /// `<= 1/refinement`. Products of piecewise-linear trajectories are
    /// piecewise quadratic; the interpolant keeps exact rational arithmetic
    /// with an error bounded by the square of the mesh.
    pub fn mul(&self, other: &VariableReal, refinement: u32) -> Result<VariableReal> {
        self.same_clock(other)?;
        if refinement == 0 {
            return Err(Error::BadRational("refinement 0".into()));
        }
        let mesh = Q::one() / Q::from_integer(refinement.into());
        let merged: Vec<Q> = {
            let mut v: Vec<Q> = self
                .g
                .breakpoints()
                .iter()
                .map(|(x, _)| x.clone())
                .chain(other.g.breakpoints().iter().map(|(x, _)| x.clone()))
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let mut xs: Vec<Q> = Vec::new();
        for w in merged.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            xs.push(a.clone());
            let gap = b - a;
            if gap > mesh {
                let parts = (&gap / &mesh).ceil();
                let mut k = Q::one();
                while k < parts {
                    xs.push(a + &gap * &k / &parts);
                    k += Q::one();
                }
            }
        }
        xs.push(merged.last().unwrap().clone());
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.g.eval_q(&x)? * other.g.eval_q(&x)?;
                Ok((x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VariableReal {
            clock: self.clock.clone(),
            g: Plf::new(pts)?,
        })
    }

    /// The value of the trajectory at clock time `r` (strictly inside the
    /// open window).
    pub fn at_value(&self, r: &Q) -> Result<Q> {
        if r <= &self.clock.d_t || r >= &self.clock.u_t {
            return Err(Error::OutsideOpenWindow(r.to_string()));
        }
        self.g.eval_q(&self.clock.to_local(r))
    }

    pub fn as_section(&self) -> IntervalSection {
        IntervalSection {
            clock: self.clock.clone(),
            lo: self.g.clone(),
            hi: self.g.clone(),
        }
    }
}

impl Endpoints for VariableReal {
    fn clock(&self) -> &Clock {
        &self.clock
    }
    fn lo(&self) -> &Plf {
        &self.g
    }
    fn hi(&self) -> &Plf {
        &self.g
    }
}

/// A section of the interval object: a pair of endpoint trajectories. The
/// proper case has `lo <= hi` pointwise; improper sections are permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSection {
    pub clock: Clock,
    pub lo: Plf,
    pub hi: Plf,
}

impl IntervalSection {
    pub fn new(clock: Clock, lo: Plf, hi: Plf) -> Result<Self> {
        if lo.is_infinite() || hi.is_infinite() {
            return Err(Error::InfiniteValue);
        }
        let l = clock.window().len().clone();
        for f in [&lo, &hi] {
            let (a, b) = f.domain();
            if !a.is_zero() || b != &l {
                return Err(Error::DomainMismatch);
            }
        }
        Ok(IntervalSection { clock, lo, hi })
    }

    pub fn is_proper(&self) -> Result<bool> {
        self.lo.leq(&self.hi)
    }

    /// Lift at an interval point `[a, b]` in local coordinates: the min of
    /// the lower endpoint and the max of the upper endpoint over `[a, b]`.
    pub fn lift(&self, p: &IntervalPoint) -> Result<KInterval> {
        let l = self.clock.window();
        if p.d < Q::zero() || &p.u > l.len() {
            return Err(Error::OutsideDomain(format!("[{}, {}]", p.d, p.u)));
        }
        Ok(KInterval::from_q(
            self.lo.min_on(&p.d, &p.u)?,
            self.hi.max_on(&p.d, &p.u)?,
        ))
    }
}

impl Endpoints for IntervalSection {
    fn clock(&self) -> &Clock {
        &self.clock
    }
    fn lo(&self) -> &Plf {
        &self.lo
    }
    fn hi(&self) -> &Plf {
        &self.hi
    }
}

/// Lift of any section at an interval point.
pub fn lift(s: &impl Endpoints, p: &IntervalPoint) -> Result<KInterval> {
    IntervalSection {
        clock: s.clock().clone(),
        lo: s.lo().clone(),
        hi: s.hi().clone(),
    }
    .lift(p)
}

/// Minimal violation half-widths for `hi_x(p) >= lo_y(q)` constrained to one
/// segment pair, as constraint pieces in the center coordinate.
///
/// With `p = c - s` and `q = c + s`, a violating pair with center `c` and
/// half-width `|s|` contributes `|m - c| + |s|` to the Chebyshev distance
/// from the diagonal point `(m, m)`; minimizing `|s|` per center and taking
/// the 1-Lipschitz envelope over centers yields the exact boundary radius.
fn violation_pieces(hx: &LinPiece, ly: &LinPiece) -> Vec<LinPiece> {
    let two = Q::from_integer(2.into());
    // corners of the box {p in [hx.x0, hx.x1]} x {q in [ly.x0, ly.x1]}
    // mapped to (c, s) = ((p + q)/2, (q - p)/2), in cyclic order
    let corner = |p: &Q, q: &Q| ((p + q) / &two, (q - p) / &two);
    let quad = [
        corner(&hx.x0, &ly.x0),
        corner(&hx.x0, &ly.x1),
        corner(&hx.x1, &ly.x1),
        corner(&hx.x1, &ly.x0),
    ];
    let hx_slope = if hx.x0 == hx.x1 {
        Q::zero()
    } else {
        (&hx.y1 - &hx.y0) / (&hx.x1 - &hx.x0)
    };
    let ly_slope = if ly.x0 == ly.x1 {
        Q::zero()
    } else {
        (&ly.y1 - &ly.y0) / (&ly.x1 - &ly.x0)
    };
    // violation F(c, s) = hx(c - s) - ly(c + s) >= 0, affine in (c, s)
    let f_at = |c: &Q, s: &Q| -> Q {
        let p = c - s;
        let q = c + s;
        let hv = &hx.y0 + &hx_slope * (&p - &hx.x0);
        let lv = &ly.y0 + &ly_slope * (&q - &ly.x0);
        hv - lv
    };
    // clip the quad by F >= 0
    let mut poly: Vec<(Q, Q)> = Vec::new();
    for i in 0..quad.len() {
        let a = &quad[i];
        let b = &quad[(i + 1) % quad.len()];
        if a == b {
            continue;
        }
        let fa = f_at(&a.0, &a.1);
        let fb = f_at(&b.0, &b.1);
        let a_in = !fa.is_negative();
        let b_in = !fb.is_negative();
        if a_in {
            poly.push(a.clone());
        }
        if a_in != b_in {
            let t = &fa / (&fa - &fb);
            poly.push((&a.0 + (&b.0 - &a.0) * &t, &a.1 + (&b.1 - &a.1) * &t));
        }
    }
    poly.dedup();
    if poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    if poly.is_empty() {
        return Vec::new();
    }
    if poly.len() == 1 {
        let (c, s) = &poly[0];
        return vec![LinPiece::point(c.clone(), s.abs())];
    }
    // w(c) = min{|s| : (c, s) in poly}: piecewise linear with kinks at
    // vertex centers and at s = 0 crossings of edges
    let mut cs: Vec<Q> = poly.iter().map(|(c, _)| c.clone()).collect();
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        if (a.1.is_negative() && b.1.is_positive()) || (a.1.is_positive() && b.1.is_negative()) {
            let t = &a.1 / (&a.1 - &b.1);
            cs.push(&a.0 + (&b.0 - &a.0) * t);
        }
    }
    cs.sort();
    cs.dedup();
    let min_abs_s = |c: &Q| -> Option<Q> {
        let mut s_lo: Option<Q> = None;
        let mut s_hi: Option<Q> = None;
        let mut note = |v: Q| {
            if s_lo.as_ref().is_none_or(|x| &v < x) {
                s_lo = Some(v.clone());
            }
            if s_hi.as_ref().is_none_or(|x| &v > x) {
                s_hi = Some(v);
            }
        };
        for i in 0..poly.len() {
            let a = &poly[i];
            let b = &poly[(i + 1) % poly.len()];
            let (cl, cr) = if a.0 <= b.0 { (&a.0, &b.0) } else { (&b.0, &a.0) };
            if c < cl || c > cr {
                continue;
            }
            if a.0 == b.0 {
                note(a.1.clone());
                note(b.1.clone());
            } else {
                note(&a.1 + (&b.1 - &a.1) * (c - &a.0) / (&b.0 - &a.0));
            }
        }
        let (lo, hi) = (s_lo?, s_hi?);
        Some(if !lo.is_positive() && !hi.is_negative() {
            Q::zero()
        } else if lo.is_positive() {
            lo
        } else {
            -hi
        })
    };
    let values: Vec<(Q, Q)> = cs
        .iter()
        .filter_map(|c| min_abs_s(c).map(|w| (c.clone(), w)))
        .collect();
    let mut pieces = Vec::new();
    if values.len() == 1 {
        let (c, w) = &values[0];
        pieces.push(LinPiece::point(c.clone(), w.clone()));
    } else {
        for win in values.windows(2) {
            pieces.push(LinPiece {
                x0: win[0].0.clone(),
                x1: win[1].0.clone(),
                y0: win[0].1.clone(),
                y1: win[1].1.clone(),
            });
        }
    }
    pieces
}

/// The strict comparison `x < y` as an open of the cone: the exact boundary
/// radius `D(m) = sup { r : max of hi_x < min of lo_y over [m-r, m+r] }`,
/// clipped by the ambient tent.
pub fn lt_open(x: &impl Endpoints, y: &impl Endpoints) -> Result<DyckPath> {
    if x.clock() != y.clock() {
        return Err(Error::ClockMismatch);
    }
    let clock = x.clock();
    let w = clock.window();
    let l = w.len();
    let zero = Q::zero();
    let hx_pieces = x.hi().cut_pieces(&zero, l)?;
    let ly_pieces = y.lo().cut_pieces(&zero, l)?;
    let mut pieces: Vec<LinPiece> = Vec::new();
    for hx in &hx_pieces {
        for ly in &ly_pieces {
            pieces.extend(violation_pieces(hx, ly));
        }
    }
    let env = lipschitz_envelope(&pieces, &zero, l, &Q::one())?;
    let t = tent(&w);
    let path = if env.is_infinite() {
        t
    } else {
        let zero_plf = Plf::constant(zero.clone(), l.clone(), Q::zero())?;
        env.pw_min(&t)?.pw_max(&zero_plf)?
    };
    DyckPath::new(w, path)
}

/// Non-strict comparison `x <= y` as an open: `not (y < x)`.
pub fn leq_open(x: &impl Endpoints, y: &impl Endpoints) -> Result<DyckPath> {
    lt_open(y, x)?.complement()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Lt,
    Gt,
}

/// Comparison of a section against a constant: `x < r` (Lt) or `r < x` (Gt).
pub fn cmp_const_open(x: &impl Endpoints, r: &Q, dir: Dir) -> Result<DyckPath> {
    let c = VariableReal::constant(x.clock().clone(), r.clone());
    match dir {
        Dir::Lt => lt_open(x, &c),
        Dir::Gt => lt_open(&c, x),
    }
}

/// Report of the sampled approximable-mapping conditions for a binary
/// endpoint function on improper intervals.
#[derive(Debug, Default)]
pub struct ApproxReport {
    pub samples: usize,
    pub monotonicity_failures: usize,
    pub interpolation_failures: usize,
}

impl ApproxReport {
    pub fn passed(&self) -> bool {
        self.monotonicity_failures == 0 && self.interpolation_failures == 0
    }
}

fn leqslant(a: &KInterval, b: &KInterval) -> bool {
    a.d <= b.d && b.u <= a.u
}

fn prec(a: &KInterval, b: &KInterval) -> bool {
    a.d < b.d && b.u < a.u
}

/// Samples the two conditions under which a binary endpoint function on the
/// interval predomain induces an approximable mapping: monotonicity in each
/// variable for the strict order, and interpolation of strict bounds.
pub fn approx_map_check(
    f: impl Fn(&KInterval, &KInterval) -> KInterval,
    samples: usize,
    rng: &mut crate::sample::Rng,
) -> ApproxReport {
    let mut report = ApproxReport {
        samples,
        ..Default::default()
    };
    let rand_iv = |rng: &mut crate::sample::Rng| {
        let d = rng.q_in(-5, 5, 4);
        let u = rng.q_in(-5, 5, 4);
        KInterval::from_q(d, u)
    };
    let widen = |iv: &KInterval, e: &Q| {
        KInterval::from_q(iv.d.finite().unwrap() - e, iv.u.finite().unwrap() + e)
    };
    for _ in 0..samples {
        let b1 = rand_iv(rng);
        let b2 = rand_iv(rng);
        // condition 1: b' prec b implies f(b', b2) leqslant f(b, b2), per slot
        let eps = rng.q_in(1, 3, 4);
        let b1w = widen(&b1, &eps);
        let b2w = widen(&b2, &eps);
        debug_assert!(prec(&b1w, &b1));
        if !leqslant(&f(&b1w, &b2), &f(&b1, &b2)) || !leqslant(&f(&b1, &b2w), &f(&b1, &b2)) {
            report.monotonicity_failures += 1;
            continue;
        }
        // condition 2: c prec f(b1, b2) admits b1' prec b1 with c prec f(b1', b2)
        let v = f(&b1, &b2);
        let delta = rng.q_in(1, 2, 4);
        let c = widen(&v, &delta);
        let mut found = false;
        let mut e = Q::one();
        for _ in 0..40 {
            let b1s = widen(&b1, &e);
            if prec(&c, &f(&b1s, &b2)) {
                found = true;
                break;
            }
            e /= Q::from_integer(2.into());
        }
        if !found {
            report.interpolation_failures += 1;
        }
    }
    report
}
