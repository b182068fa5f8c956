//! Exact piecewise-linear functions on a closed rational interval.
//!
//! A [`Plf`] is a list of breakpoints with strictly increasing abscissae;
//! values are linearly interpolated between them. All operations are exact:
//! pointwise min/max insert breakpoints at every crossing, the largest
//! `L`-Lipschitz minorant is assembled from closed-form per-piece envelopes,
//! and equality after normalization is decidable function equality.
//!
//! Values are either all finite or a single `+inf` plateau over the whole
//! domain (the latter arises as the distance to an empty set and as the
//! Lipschitz envelope of an empty constraint system).

use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rat::{ExtQ, Q};

/// An exact piecewise-linear function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plf {
    pts: Vec<(Q, Q)>,
    /// When set, the function is the constant `+inf` on the domain and
    /// `pts` carries only the two domain endpoints with value 0.
    infinite: bool,
}

impl Plf {
    /// Builds a finite PLF from breakpoints. Collinear interior breakpoints
    /// are removed so equal functions have equal representations.
    pub fn new(pts: Vec<(Q, Q)>) -> Result<Plf> {
        if pts.len() < 2 {
            return Err(Error::BadBreakpoints);
        }
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::BadBreakpoints);
            }
        }
        let mut f = Plf {
            pts,
            infinite: false,
        };
        f.normalize();
        Ok(f)
    }

    /// The constant `+inf` function on `[x0, x1]`.
    pub fn pos_inf(x0: Q, x1: Q) -> Result<Plf> {
        if x0 >= x1 {
            return Err(Error::BadBreakpoints);
        }
        Ok(Plf {
            pts: vec![(x0, Q::zero()), (x1, Q::zero())],
            infinite: true,
        })
    }

    /// The constant function `c` on `[x0, x1]`.
    pub fn constant(x0: Q, x1: Q, c: Q) -> Result<Plf> {
        Plf::new(vec![(x0, c.clone()), (x1, c)])
    }

    /// The line `a + b*x` restricted to `[x0, x1]`.
    pub fn line(x0: Q, x1: Q, a: Q, b: Q) -> Result<Plf> {
        let y0 = &a + &b * &x0;
        let y1 = &a + &b * &x1;
        Plf::new(vec![(x0, y0), (x1, y1)])
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn domain(&self) -> (&Q, &Q) {
        (&self.pts[0].0, &self.pts[self.pts.len() - 1].0)
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.pts
    }

    fn normalize(&mut self) {
        if self.infinite {
            return;
        }
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(self.pts.len());
        for p in self.pts.drain(..) {
            while out.len() >= 2 {
                let n = out.len();
                let (x0, y0) = (&out[n - 2].0, &out[n - 2].1);
                let (x1, y1) = (&out[n - 1].0, &out[n - 1].1);
                // collinear iff (y1-y0)*(x2-x1) == (y2-y1)*(x1-x0)
                let lhs = (y1 - y0) * (&p.0 - x1);
                let rhs = (&p.1 - y1) * (x1 - x0);
                if lhs == rhs {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        self.pts = out;
    }

    /// Evaluates at `x` (must lie in the domain).
    pub fn eval(&self, x: &Q) -> Result<ExtQ> {
        let (a, b) = self.domain();
        if x < a || x > b {
            return Err(Error::OutsideDomain(x.to_string()));
        }
        if self.infinite {
            return Ok(ExtQ::PosInf);
        }
        Ok(ExtQ::Fin(self.eval_unchecked(x)))
    }

    /// Evaluates a finite PLF at `x` within the domain.
    pub fn eval_q(&self, x: &Q) -> Result<Q> {
        match self.eval(x)? {
            ExtQ::Fin(q) => Ok(q),
            _ => Err(Error::InfiniteValue),
        }
    }

    fn eval_unchecked(&self, x: &Q) -> Q {
        debug_assert!(!self.infinite);
        let i = match self.pts.binary_search_by(|p| p.0.cmp(x)) {
            Ok(i) => return self.pts[i].1.clone(),
            Err(i) => i,
        };
        let (x0, y0) = &self.pts[i - 1];
        let (x1, y1) = &self.pts[i];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    fn same_domain(&self, other: &Plf) -> Result<()> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    fn merged_xs(&self, other: &Plf) -> Vec<Q> {
        let mut xs: Vec<Q> = Vec::with_capacity(self.pts.len() + other.pts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pts.len() || j < other.pts.len() {
            let pick_left = match (self.pts.get(i), other.pts.get(j)) {
                (Some(a), Some(b)) => a.0 <= b.0,
                (Some(_), None) => true,
                _ => false,
            };
            let x = if pick_left {
                let x = self.pts[i].0.clone();
                i += 1;
                x
            } else {
                let x = other.pts[j].0.clone();
                j += 1;
                x
            };
            if xs.last() != Some(&x) {
                xs.push(x);
            }
        }
        xs
    }

    fn combine(&self, other: &Plf, min: bool) -> Result<Plf> {
        self.same_domain(other)?;
        match (self.infinite, other.infinite) {
            (true, true) => return Plf::pos_inf(self.pts[0].0.clone(), self.pts[1].0.clone()),
            (true, false) => {
                return if min {
                    Ok(other.clone())
                } else {
                    Plf::pos_inf(self.pts[0].0.clone(), self.pts.last().unwrap().0.clone())
                }
            }
            (false, true) => {
                return if min {
                    Ok(self.clone())
                } else {
                    Plf::pos_inf(self.pts[0].0.clone(), self.pts.last().unwrap().0.clone())
                }
            }
            (false, false) => {}
        }
        let xs = self.merged_xs(other);
        let mut pts: Vec<(Q, Q)> = Vec::with_capacity(xs.len() + 4);
        let pick = |fa: &Q, ga: &Q| -> Q {
            if (fa <= ga) == min {
                fa.clone()
            } else {
                ga.clone()
            }
        };
        for (k, x) in xs.iter().enumerate() {
            let fa = self.eval_unchecked(x);
            let ga = other.eval_unchecked(x);
            if k > 0 {
                // look for a crossing strictly inside the previous cell
                let xp = &xs[k - 1];
                let fp = self.eval_unchecked(xp);
                let gp = other.eval_unchecked(xp);
                let d0 = &fp - &gp;
                let d1 = &fa - &ga;
                if (d0.is_positive() && d1.is_negative())
                    || (d0.is_negative() && d1.is_positive())
                {
                    let t = &d0 / (&d0 - &d1);
                    let xc = xp + (x - xp) * t;
                    let yc = self.eval_unchecked(&xc);
                    pts.push((xc, yc));
                }
            }
            pts.push((x.clone(), pick(&fa, &ga)));
        }
        let mut f = Plf {
            pts,
            infinite: false,
        };
        f.normalize();
        Ok(f)
    }

    /// Exact pointwise minimum, with breakpoints at every crossing.
    pub fn pw_min(&self, other: &Plf) -> Result<Plf> {
        self.combine(other, true)
    }

    /// Exact pointwise maximum.
    pub fn pw_max(&self, other: &Plf) -> Result<Plf> {
        self.combine(other, false)
    }

    fn zip_linear(&self, other: &Plf, f: impl Fn(&Q, &Q) -> Q) -> Result<Plf> {
        self.same_domain(other)?;
        if self.infinite || other.infinite {
            return Err(Error::InfiniteValue);
        }
        let xs = self.merged_xs(other);
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = f(&self.eval_unchecked(&x), &other.eval_unchecked(&x));
                (x, y)
            })
            .collect();
        Plf::new(pts)
    }

    pub fn add(&self, other: &Plf) -> Result<Plf> {
        self.zip_linear(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Plf) -> Result<Plf> {
        self.zip_linear(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Q) -> Result<Plf> {
        if self.infinite {
            return Err(Error::InfiniteValue);
        }
        Plf::new(self.pts.iter().map(|(x, y)| (x.clone(), c * y)).collect())
    }

    /// Exact pointwise `f <= g` over the whole domain.
    pub fn leq(&self, other: &Plf) -> Result<bool> {
        self.same_domain(other)?;
        if other.infinite {
            return Ok(true);
        }
        if self.infinite {
            return Ok(false);
        }
        let xs = self.merged_xs(other);
        Ok(xs
            .iter()
            .all(|x| self.eval_unchecked(x) <= other.eval_unchecked(x)))
    }

    /// Exact minimum over a closed subinterval of the domain.
    pub fn min_on(&self, a: &Q, b: &Q) -> Result<Q> {
        self.extremum_on(a, b, true)
    }

    /// Exact maximum over a closed subinterval of the domain.
    pub fn max_on(&self, a: &Q, b: &Q) -> Result<Q> {
        self.extremum_on(a, b, false)
    }

    fn extremum_on(&self, a: &Q, b: &Q, min: bool) -> Result<Q> {
        let (lo, hi) = self.domain();
        if a > b || a < lo || b > hi {
            return Err(Error::OutsideDomain(format!("[{}, {}]", a, b)));
        }
        if self.infinite {
            return Err(Error::InfiniteValue);
        }
        let mut best = self.eval_unchecked(a);
        let vb = self.eval_unchecked(b);
        if (vb < best) == min {
            best = vb;
        }
        for (x, y) in &self.pts {
            if x > a && x < b && ((y < &best) == min) {
                best = y.clone();
            }
        }
        Ok(best)
    }

    /// Restriction of the function to `[a, b]`, with the domain shifted
    /// to `[0, b-a]`.
    pub fn reparam(&self, a: &Q, b: &Q) -> Result<Plf> {
        let (lo, hi) = self.domain();
        if a >= b || a < lo || b > hi {
            return Err(Error::OutsideDomain(format!("[{}, {}]", a, b)));
        }
        if self.infinite {
            return Plf::pos_inf(Q::zero(), b - a);
        }
        let mut pts = vec![(Q::zero(), self.eval_unchecked(a))];
        for (x, y) in &self.pts {
            if x > a && x < b {
                pts.push((x - a, y.clone()));
            }
        }
        pts.push((b - a, self.eval_unchecked(b)));
        Plf::new(pts)
    }

    /// True when every segment has `|slope| <= l`.
    pub fn is_lipschitz(&self, l: &Q) -> bool {
        if self.infinite {
            return true;
        }
        self.pts.windows(2).all(|w| {
            let dy = &w[1].1 - &w[0].1;
            let dx = &w[1].0 - &w[0].0;
            dy.abs() <= l * dx
        })
    }

    /// True when the function is non-negative everywhere.
    pub fn is_nonneg(&self) -> bool {
        self.infinite || self.pts.iter().all(|(_, y)| !y.is_negative())
    }

    /// The set `{x : f(x) = 0}` of a non-negative function, exactly.
    pub fn zero_set(&self) -> Result<ClosedSet1D> {
        if !self.is_nonneg() {
            return Err(Error::NegativeValue);
        }
        if self.infinite {
            return Ok(ClosedSet1D::empty());
        }
        let mut comps = Vec::new();
        for w in self.pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            match (y0.is_zero(), y1.is_zero()) {
                (true, true) => comps.push((x0.clone(), x1.clone())),
                (true, false) => comps.push((x0.clone(), x0.clone())),
                (false, true) => comps.push((x1.clone(), x1.clone())),
                (false, false) => {}
            }
        }
        Ok(ClosedSet1D::from_components(comps))
    }

    /// Closure of `{x : f(x) > 0}`, exactly. Crossing points become
    /// component endpoints; the function need not be sign-definite.
    pub fn positive_closure(&self) -> Result<ClosedSet1D> {
        if self.infinite {
            let (a, b) = self.domain();
            return Ok(ClosedSet1D::from_components(vec![(a.clone(), b.clone())]));
        }
        let mut comps = Vec::new();
        let mut run_start: Option<Q> = None;
        let mut close_run = |start: &mut Option<Q>, end: Q| {
            if let Some(s) = start.take() {
                comps.push((s, end));
            }
        };
        for w in self.pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            let pos0 = y0.is_positive();
            let pos1 = y1.is_positive();
            match (pos0, pos1) {
                (true, true) => {
                    if run_start.is_none() {
                        run_start = Some(x0.clone());
                    }
                }
                (true, false) => {
                    if run_start.is_none() {
                        run_start = Some(x0.clone());
                    }
                    // crossing at y = 0 somewhere in [x0, x1]
                    let xc = x0 + (x1 - x0) * y0 / (y0 - y1);
                    close_run(&mut run_start, xc);
                }
                (false, true) => {
                    let xc = x0 + (x1 - x0) * y0 / (y0 - y1);
                    run_start = Some(xc);
                }
                (false, false) => {
                    // a segment non-positive at both ends is never positive
                    close_run(&mut run_start, x0.clone());
                }
            }
        }
        if run_start.is_some() {
            let end = self.pts.last().unwrap().0.clone();
            close_run(&mut run_start, end);
        }
        Ok(ClosedSet1D::from_components(comps))
    }

    /// Cuts the function into closed linear pieces over `[a, b]`.
    pub fn cut_pieces(&self, a: &Q, b: &Q) -> Result<Vec<LinPiece>> {
        if self.infinite {
            return Ok(Vec::new());
        }
        let (lo, hi) = self.domain();
        if a > b || a < lo || b > hi {
            return Err(Error::OutsideDomain(format!("[{}, {}]", a, b)));
        }
        if a == b {
            let y = self.eval_unchecked(a);
            return Ok(vec![LinPiece::point(a.clone(), y)]);
        }
        let mut xs = vec![a.clone()];
        for (x, _) in &self.pts {
            if x > a && x < b {
                xs.push(x.clone());
            }
        }
        xs.push(b.clone());
        Ok(xs
            .windows(2)
            .map(|w| LinPiece {
                x0: w[0].clone(),
                x1: w[1].clone(),
                y0: self.eval_unchecked(&w[0]),
                y1: self.eval_unchecked(&w[1]),
            })
            .collect())
    }
}

/// A finite union of disjoint closed intervals (isolated points allowed),
/// kept sorted and merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSet1D {
    comps: Vec<(Q, Q)>,
}

impl ClosedSet1D {
    pub fn empty() -> Self {
        ClosedSet1D { comps: Vec::new() }
    }

    /// Sorts and merges overlapping or touching components.
    pub fn from_components(mut comps: Vec<(Q, Q)>) -> Self {
        comps.retain(|(a, b)| a <= b);
        comps.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(comps.len());
        for (a, b) in comps {
            if let Some(last) = out.last_mut() {
                if a <= last.1 {
                    if b > last.1 {
                        last.1 = b;
                    }
                    continue;
                }
            }
            out.push((a, b));
        }
        ClosedSet1D { comps: out }
    }

    pub fn components(&self) -> &[(Q, Q)] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.comps.iter().any(|(a, b)| a <= x && x <= b)
    }

    /// Exact distance to `x`, `+inf` for the empty set.
    pub fn dist(&self, x: &Q) -> ExtQ {
        let mut best: Option<Q> = None;
        for (a, b) in &self.comps {
            let d = if x < a {
                a - x
            } else if x > b {
                x - b
            } else {
                Q::zero()
            };
            if best.as_ref().is_none_or(|cur| &d < cur) {
                best = Some(d);
            }
        }
        best.map(ExtQ::Fin).unwrap_or(ExtQ::PosInf)
    }

    /// The distance function `x -> d(x, S)` on `[x0, x1]` as an exact PLF
    /// (1-Lipschitz); the `+inf` constant for the empty set.
    pub fn dist_plf(&self, x0: &Q, x1: &Q) -> Result<Plf> {
        let pieces: Vec<LinPiece> = self
            .comps
            .iter()
            .map(|(a, b)| LinPiece {
                x0: a.clone(),
                x1: b.clone(),
                y0: Q::zero(),
                y1: Q::zero(),
            })
            .collect();
        lipschitz_envelope(&pieces, x0, x1, &Q::from_integer(1.into()))
    }
}

/// One closed linear constraint piece: the segment from `(x0, y0)` to
/// `(x1, y1)` with `x0 <= x1` (a single point when `x0 == x1`). A finite
/// family of these is the "piecewise linear function with jumps allowed"
/// fed to [`lipschitz_envelope`]; gaps mean "+inf there".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinPiece {
    pub x0: Q,
    pub x1: Q,
    pub y0: Q,
    pub y1: Q,
}

impl LinPiece {
    pub fn point(x: Q, y: Q) -> Self {
        LinPiece {
            x0: x.clone(),
            x1: x,
            y0: y.clone(),
            y1: y,
        }
    }

    /// The envelope `x -> min over the piece of (value(y) + l*|x-y|)` as a
    /// PLF on `[d0, d1]`.
    fn envelope(&self, d0: &Q, d1: &Q, l: &Q) -> Result<Plf> {
        // Value of the envelope at x, in closed form.
        let at = |x: &Q| -> Q {
            if self.x0 == self.x1 {
                return &self.y0 + l * (x - &self.x0).abs();
            }
            let dx = &self.x1 - &self.x0;
            let beta = (&self.y1 - &self.y0) / &dx;
            if beta > *l {
                &self.y0 + l * (x - &self.x0).abs()
            } else if beta < -l.clone() {
                &self.y1 + l * (x - &self.x1).abs()
            } else if x < &self.x0 {
                &self.y0 + l * (&self.x0 - x)
            } else if x > &self.x1 {
                &self.y1 + l * (x - &self.x1)
            } else {
                &self.y0 + &beta * (x - &self.x0)
            }
        };
        // Candidate kinks: piece endpoints and the V apexes.
        let mut xs: Vec<Q> = vec![d0.clone(), d1.clone()];
        for cand in [&self.x0, &self.x1] {
            if cand > d0 && cand < d1 {
                xs.push(cand.clone());
            }
        }
        xs.sort();
        xs.dedup();
        Plf::new(
            xs.into_iter()
                .map(|x| {
                    let y = at(&x);
                    (x, y)
                })
                .collect(),
        )
    }
}

/// The pointwise-largest `l`-Lipschitz function lying below every piece:
/// `E(x) = inf over pieces and y of (piece(y) + l*|x-y|)`, exact. Returns the
/// `+inf` constant when `pieces` is empty.
pub fn lipschitz_envelope(pieces: &[LinPiece], d0: &Q, d1: &Q, l: &Q) -> Result<Plf> {
    if !l.is_positive() {
        return Err(Error::BadRational(format!("L = {}", l)));
    }
    let mut acc: Option<Plf> = None;
    for p in pieces {
        let e = p.envelope(d0, d1, l)?;
        acc = Some(match acc {
            None => e,
            Some(cur) => cur.pw_min(&e)?,
        });
    }
    match acc {
        Some(f) => Ok(f),
        None => Plf::pos_inf(d0.clone(), d1.clone()),
    }
}

/// Comparison helper: three-way compare of `f` and `g` at `x` (both finite).
pub fn cmp_at(f: &Plf, g: &Plf, x: &Q) -> Result<Ordering> {
    Ok(f.eval_q(x)?.cmp(&g.eval_q(x)?))
}
