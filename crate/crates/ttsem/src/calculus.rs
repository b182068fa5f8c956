//! Interval-valued derivatives of sections and the derivative-approximation
//! relation.
//!
//! For a piecewise-linear trajectory the sup-inf difference-quotient limits
//! collapse to something finite and explicit: on the interior of a segment
//! both derivative bounds equal the slope, and at a breakpoint they are the
//! min and max of the two adjacent slopes. Where a section has positive
//! width the quotients blow up and the bounds are the two infinities; that
//! happens on the closure of the positive-width set.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{tent, Clock};
use crate::numeric::{Endpoints, IntervalSection, KInterval, VariableReal};
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::{ExtQ, Q};

/// A piecewise-constant function with extended values: constant on the open
/// cells of a grid, with its own value at each grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseConst {
    xs: Vec<Q>,
    seg_vals: Vec<ExtQ>,
    pt_vals: Vec<ExtQ>,
}

impl PiecewiseConst {
    pub fn new(xs: Vec<Q>, seg_vals: Vec<ExtQ>, pt_vals: Vec<ExtQ>) -> Result<Self> {
        if xs.len() < 2 || seg_vals.len() != xs.len() - 1 || pt_vals.len() != xs.len() {
            return Err(Error::BadBreakpoints);
        }
        for w in xs.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadBreakpoints);
            }
        }
        Ok(PiecewiseConst {
            xs,
            seg_vals,
            pt_vals,
        })
    }

    pub fn grid(&self) -> &[Q] {
        &self.xs
    }

    pub fn value_at(&self, x: &Q) -> Result<ExtQ> {
        if x < &self.xs[0] || x > self.xs.last().unwrap() {
            return Err(Error::OutsideDomain(x.to_string()));
        }
        match self.xs.binary_search_by(|p| p.cmp(x)) {
            Ok(i) => Ok(self.pt_vals[i].clone()),
            Err(i) => Ok(self.seg_vals[i - 1].clone()),
        }
    }

    /// Infimum over the closed interval `[a, b]`.
    pub fn inf_on(&self, a: &Q, b: &Q) -> Result<ExtQ> {
        self.extremum_on(a, b, true)
    }

    /// Supremum over the closed interval `[a, b]`.
    pub fn sup_on(&self, a: &Q, b: &Q) -> Result<ExtQ> {
        self.extremum_on(a, b, false)
    }

    fn extremum_on(&self, a: &Q, b: &Q, inf: bool) -> Result<ExtQ> {
        if a > b {
            return Err(Error::OutsideDomain(format!("[{}, {}]", a, b)));
        }
        let mut best: Option<ExtQ> = None;
        let mut push = |v: ExtQ| {
            let better = match &best {
                None => true,
                Some(cur) => {
                    if inf {
                        v < *cur
                    } else {
                        v > *cur
                    }
                }
            };
            if better {
                best = Some(v);
            }
        };
        push(self.value_at(a)?);
        push(self.value_at(b)?);
        for (i, x) in self.xs.iter().enumerate() {
            if x > a && x < b {
                push(self.pt_vals[i].clone());
            }
        }
        for i in 0..self.seg_vals.len() {
            // the open cell (xs[i], xs[i+1]) meets (a, b)?
            if &self.xs[i + 1] > a && &self.xs[i] < b {
                push(self.seg_vals[i].clone());
            }
        }
        Ok(best.expect("interval is nonempty"))
    }
}

/// Lower and upper derivative of a section, as piecewise-constant functions
/// on the window grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeBounds {
    pub lo_prime: PiecewiseConst,
    pub hi_prime: PiecewiseConst,
}

fn slopes_of(g: &Plf) -> (Vec<Q>, Vec<Q>) {
    let xs: Vec<Q> = g.breakpoints().iter().map(|(x, _)| x.clone()).collect();
    let slopes: Vec<Q> = g
        .breakpoints()
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect();
    (xs, slopes)
}

/// Derivative bounds of a trajectory: segment slopes inside cells, min/max
/// of adjacent slopes at breakpoints.
pub fn derivative_bounds_real(x: &VariableReal) -> DerivativeBounds {
    let (xs, slopes) = slopes_of(&x.g);
    let n = xs.len();
    let mut lo_pts = Vec::with_capacity(n);
    let mut hi_pts = Vec::with_capacity(n);
    for i in 0..n {
        let left = if i == 0 { &slopes[0] } else { &slopes[i - 1] };
        let right = if i == n - 1 {
            &slopes[n - 2]
        } else {
            &slopes[i]
        };
        lo_pts.push(ExtQ::Fin(left.clone().min(right.clone())));
        hi_pts.push(ExtQ::Fin(left.clone().max(right.clone())));
    }
    let seg: Vec<ExtQ> = slopes.iter().map(|s| ExtQ::Fin(s.clone())).collect();
    DerivativeBounds {
        lo_prime: PiecewiseConst::new(xs.clone(), seg.clone(), lo_pts).expect("grid"),
        hi_prime: PiecewiseConst::new(xs, seg, hi_pts).expect("grid"),
    }
}

/// Derivative bounds of an interval section. On the closure of the set where
/// the section has nonzero width the bounds are `-inf` / `+inf`; elsewhere
/// the section is a trajectory and the slope rules apply.
pub fn derivative_bounds(s: &IntervalSection) -> Result<DerivativeBounds> {
    let width = s.hi.sub(&s.lo)?;
    let gap = width.positive_closure()?;
    let neg_gap = width.scale(&-Q::from_integer(1.into()))?.positive_closure()?;
    if s.lo == s.hi {
        return Ok(derivative_bounds_real(&VariableReal::new(
            s.clock.clone(),
            s.lo.clone(),
        )?));
    }
    // grid: union of endpoint breakpoints and gap boundaries
    let mut xs: Vec<Q> = s
        .lo
        .breakpoints()
        .iter()
        .chain(s.hi.breakpoints().iter())
        .map(|(x, _)| x.clone())
        .collect();
    for (a, b) in gap.components().iter().chain(neg_gap.components()) {
        xs.push(a.clone());
        xs.push(b.clone());
    }
    xs.sort();
    xs.dedup();
    let (lo_xs, lo_slopes) = slopes_of(&s.lo);
    let slope_at = |x: &Q, point: bool| -> (Q, Q) {
        // slope data of the common trajectory near x (only queried off the gap)
        match lo_xs.binary_search_by(|p| p.cmp(x)) {
            Ok(i) => {
                if !point {
                    let j = i.min(lo_slopes.len() - 1);
                    (lo_slopes[j].clone(), lo_slopes[j].clone())
                } else {
                    let left = if i == 0 { &lo_slopes[0] } else { &lo_slopes[i - 1] };
                    let right = if i >= lo_slopes.len() {
                        &lo_slopes[lo_slopes.len() - 1]
                    } else {
                        &lo_slopes[i]
                    };
                    (
                        left.clone().min(right.clone()),
                        left.clone().max(right.clone()),
                    )
                }
            }
            Err(i) => (lo_slopes[i - 1].clone(), lo_slopes[i - 1].clone()),
        }
    };
    let in_gap = |x: &Q| gap.contains(x) || neg_gap.contains(x);
    let n = xs.len();
    let mut seg_lo = Vec::with_capacity(n - 1);
    let mut seg_hi = Vec::with_capacity(n - 1);
    let mut pt_lo = Vec::with_capacity(n);
    let mut pt_hi = Vec::with_capacity(n);
    for i in 0..n {
        if in_gap(&xs[i]) {
            pt_lo.push(ExtQ::NegInf);
            pt_hi.push(ExtQ::PosInf);
        } else {
            let (a, b) = slope_at(&xs[i], true);
            pt_lo.push(ExtQ::Fin(a));
            pt_hi.push(ExtQ::Fin(b));
        }
        if i + 1 < n {
            let two = Q::from_integer(2.into());
            let mid = (&xs[i] + &xs[i + 1]) / two;
            if in_gap(&mid) {
                seg_lo.push(ExtQ::NegInf);
                seg_hi.push(ExtQ::PosInf);
            } else {
                let (a, b) = slope_at(&mid, false);
                seg_lo.push(ExtQ::Fin(a));
                seg_hi.push(ExtQ::Fin(b));
            }
        }
    }
    Ok(DerivativeBounds {
        lo_prime: PiecewiseConst::new(xs.clone(), seg_lo, pt_lo)?,
        hi_prime: PiecewiseConst::new(xs, seg_hi, pt_hi)?,
    })
}

/// Derivative bounds for anything with endpoints.
pub fn derivative_bounds_of(s: &impl Endpoints) -> Result<DerivativeBounds> {
    derivative_bounds(&IntervalSection::new(
        s.clock().clone(),
        s.lo().clone(),
        s.hi().clone(),
    )?)
}

/// The derivative-approximation relation: `y` approximates the derivative of
/// `x` iff at every instant of the open window the value band of `y` lies
/// inside the derivative bounds of `x`.
pub fn ad_check(y: &IntervalSection, x: &impl Endpoints) -> Result<bool> {
    if &y.clock != x.clock() {
        return Err(Error::ClockMismatch);
    }
    let db = derivative_bounds_of(x)?;
    let l = y.clock.window().len().clone();
    // candidate instants: the union grid; segments are checked through both
    // endpoints since the y-endpoints are linear on them
    let mut xs: Vec<Q> = db.lo_prime.grid().to_vec();
    for (bx, _) in y.lo.breakpoints().iter().chain(y.hi.breakpoints()) {
        xs.push(bx.clone());
    }
    xs.sort();
    xs.dedup();
    let check_at = |r: &Q| -> Result<bool> {
        let lo_b = db.lo_prime.value_at(r)?;
        let hi_b = db.hi_prime.value_at(r)?;
        let ylo = ExtQ::Fin(y.lo.eval_q(r)?);
        let yhi = ExtQ::Fin(y.hi.eval_q(r)?);
        Ok(ylo <= lo_b && yhi >= hi_b)
    };
    for (i, xi) in xs.iter().enumerate() {
        // interior grid points (the window is open at 0 and l)
        if xi > &Q::zero() && xi < &l && !check_at(xi)? {
            return Ok(false);
        }
        if i + 1 < xs.len() {
            // a representative of the open cell; y is linear there, the
            // bounds constant, so the cell condition is the limit of the
            // endpoint conditions plus the midpoint for the cell value
            let two = Q::from_integer(2.into());
            let mid = (xi + &xs[i + 1]) / &two;
            let lo_b = db.lo_prime.value_at(&mid)?;
            let hi_b = db.hi_prime.value_at(&mid)?;
            for r in [xi, &xs[i + 1]] {
                let ylo = ExtQ::Fin(y.lo.eval_q(r)?);
                let yhi = ExtQ::Fin(y.hi.eval_q(r)?);
                if !(ylo <= lo_b && yhi >= hi_b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The mean-value inequality on `[a, b]` (local coordinates):
/// `inf lo' <= (lo(b) - hi(a)) / (b - a)` and
/// `sup hi' >= (hi(b) - lo(a)) / (b - a)`.
pub fn mean_value_check(s: &IntervalSection, a: &Q, b: &Q) -> Result<bool> {
    if a >= b {
        return Err(Error::InvalidSubwindow);
    }
    let db = derivative_bounds(s)?;
    let denom = b - a;
    let lo_quot = ExtQ::Fin((s.lo.eval_q(b)? - s.hi.eval_q(a)?) / &denom);
    let hi_quot = ExtQ::Fin((s.hi.eval_q(b)? - s.lo.eval_q(a)?) / &denom);
    Ok(db.lo_prime.inf_on(a, b)? <= lo_quot && db.hi_prime.sup_on(a, b)? >= hi_quot)
}

/// Largest deviation, over interior grid points of the refined product,
/// between the product's derivative bounds and the Leibniz combination
/// `x * dy + dx * y` (interval arithmetic at the point). Exactly zero when
/// the product is itself piecewise linear; bounded by the mesh in general.
pub fn leibniz_residual(x: &VariableReal, y: &VariableReal, refinement: u32) -> Result<Q> {
    let p = x.mul(y, refinement)?;
    let dp = derivative_bounds_real(&p);
    let dx = derivative_bounds_real(x);
    let dy = derivative_bounds_real(y);
    let l = x.clock.window().len().clone();
    let mut worst = Q::zero();
    for gx in dp.lo_prime.grid() {
        if gx <= &Q::zero() || gx >= &l {
            continue;
        }
        let xv = KInterval::point(x.g.eval_q(gx)?);
        let yv = KInterval::point(y.g.eval_q(gx)?);
        let dxv = KInterval::new(dx.lo_prime.value_at(gx)?, dx.hi_prime.value_at(gx)?);
        let dyv = KInterval::new(dy.lo_prime.value_at(gx)?, dy.hi_prime.value_at(gx)?);
        let leib = xv.mul(&dyv).add(&dxv.mul(&yv))?;
        let plo = dp.lo_prime.value_at(gx)?;
        let phi = dp.hi_prime.value_at(gx)?;
        for (a, b) in [(&leib.d, &plo), (&leib.u, &phi)] {
            let dev = (a.finite()? - b.finite()?).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    Ok(worst)
}

/// The open `der(g) = c`: interval points strictly inside maximal slope-`c`
/// runs of the trajectory.
pub fn deriv_eq_open(g: &VariableReal, c: &Q) -> Result<DyckPath> {
    let w = g.clock.window();
    let t = tent(&w);
    let mut path = Plf::constant(Q::zero(), w.len().clone(), Q::zero())?;
    let bps = g.g.breakpoints();
    let mut i = 0;
    while i + 1 < bps.len() {
        let slope = (&bps[i + 1].1 - &bps[i].1) / (&bps[i + 1].0 - &bps[i].0);
        if &slope == c {
            // extend the run over consecutive slope-c segments
            let start = bps[i].0.clone();
            let mut j = i + 1;
            while j + 1 < bps.len() {
                let s2 = (&bps[j + 1].1 - &bps[j].1) / (&bps[j + 1].0 - &bps[j].0);
                if &s2 == c {
                    j += 1;
                } else {
                    break;
                }
            }
            let end = bps[j].0.clone();
            let two = Q::from_integer(2.into());
            let apex = (&start + &end) / &two;
            // the hump over the run, zero on the rest of the domain
            let mut pts = Vec::new();
            if start > Q::zero() {
                pts.push((Q::zero(), Q::zero()));
            }
            pts.push((start.clone(), Q::zero()));
            pts.push((apex.clone(), &apex - &start));
            pts.push((end.clone(), Q::zero()));
            if &end < w.len() {
                pts.push((w.len().clone(), Q::zero()));
            }
            let hump = Plf::new(pts)?;
            path = path.pw_max(&hump)?;
            i = j;
        } else {
            i += 1;
        }
    }
    let clipped = path.pw_min(&t)?;
    DyckPath::new(w, clipped)
}

/// Wraps derivative bounds as an interval section (piecewise-constant bounds
/// interpolated linearly through cell values at grid points); used by the
/// self-consistency check `AD(derivative_bounds(x), x)`.
pub fn bounds_as_section(db: &DerivativeBounds, clock: &Clock) -> Result<IntervalSection> {
    let xs = db.lo_prime.grid();
    let two = Q::from_integer(2.into());
    let mut lo_pts: Vec<(Q, Q)> = Vec::new();
    let mut hi_pts: Vec<(Q, Q)> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        // sample the surrounding cell values and the point value
        let mut lo_v = db.lo_prime.value_at(x)?;
        let mut hi_v = db.hi_prime.value_at(x)?;
        if i > 0 {
            let m = (&xs[i - 1] + x) / &two;
            lo_v = lo_v.min(db.lo_prime.value_at(&m)?);
            hi_v = hi_v.max(db.hi_prime.value_at(&m)?);
        }
        if i + 1 < xs.len() {
            let m = (x + &xs[i + 1]) / &two;
            lo_v = lo_v.min(db.lo_prime.value_at(&m)?);
            hi_v = hi_v.max(db.hi_prime.value_at(&m)?);
        }
        lo_pts.push((x.clone(), lo_v.finite()?.clone()));
        hi_pts.push((x.clone(), hi_v.finite()?.clone()));
    }
    IntervalSection::new(clock.clone(), Plf::new(lo_pts)?, Plf::new(hi_pts)?)
}
