//! Temporal propositions over a window: opens of the cone over `[0, l]`,
//! represented as Dyck paths.
//!
//! A Dyck path is a 1-Lipschitz function on `[0, l]` vanishing at both ends;
//! these are in order-isomorphism with the Scott opens of the basic open
//! cone, hence with propositions over the window. An interval point with
//! half-plane coordinates `(m, r)` lies in the open iff `r < D(m)` (strict),
//! while a subwindow `[a, b]` forces the proposition iff the subwindow's own
//! tent sits below the path: `min(x-a, b-x) <= D(x)` on `[a, b]`. The strict
//! membership and the closed forcing criterion fit together by local
//! character: `[a, b]` is forced exactly when every strictly interior point
//! is in the open.
//!
//! Meet and join are pointwise min and max; Heyting implication is computed
//! as a largest 1-Lipschitz minorant, which makes the adjunction
//! `R <= (P => Q)  iff  (R and P) <= Q` an exact, testable identity.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::{tent, Window};
use crate::plf::{lipschitz_envelope, LinPiece, Plf};
use crate::rat::Q;

/// A temporal proposition over a window, as a Dyck path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    window: Window,
    path: Plf,
}

impl DyckPath {
    /// Validates the Dyck-path invariants: endpoints zero, 1-Lipschitz,
    /// `0 <= path <= tent`.
    pub fn new(window: Window, path: Plf) -> Result<DyckPath> {
        if path.is_infinite() {
            return Err(Error::InvalidDyckPath("infinite path"));
        }
        let (a, b) = path.domain();
        if !a.is_zero() || b != window.len() {
            return Err(Error::InvalidDyckPath("domain must be [0, l]"));
        }
        if !path.eval_q(a)?.is_zero() || !path.eval_q(b)?.is_zero() {
            return Err(Error::InvalidDyckPath("endpoints must be zero"));
        }
        let one = Q::from_integer(1.into());
        if !path.is_lipschitz(&one) {
            return Err(Error::InvalidDyckPath("path must be 1-Lipschitz"));
        }
        if !path.is_nonneg() {
            return Err(Error::InvalidDyckPath("path must be non-negative"));
        }
        if !path.leq(&tent(&window))? {
            return Err(Error::InvalidDyckPath("path must lie under the tent"));
        }
        Ok(DyckPath { window, path })
    }

    /// The true proposition: the full tent.
    pub fn top(window: Window) -> DyckPath {
        let path = tent(&window);
        DyckPath { window, path }
    }

    /// The false proposition: the zero path.
    pub fn bottom(window: Window) -> DyckPath {
        let path = Plf::constant(Q::zero(), window.len().clone(), Q::zero())
            .expect("zero path is valid");
        DyckPath { window, path }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn path(&self) -> &Plf {
        &self.path
    }

    pub fn is_top(&self) -> bool {
        self.path == tent(&self.window)
    }

    pub fn is_bottom(&self) -> bool {
        self == &DyckPath::bottom(self.window.clone())
    }

    fn same_window(&self, other: &DyckPath) -> Result<()> {
        if self.window != other.window {
            return Err(Error::WindowMismatch);
        }
        Ok(())
    }

    /// Meet of opens: pointwise minimum of paths.
    pub fn and(&self, other: &DyckPath) -> Result<DyckPath> {
        self.same_window(other)?;
        Ok(DyckPath {
            window: self.window.clone(),
            path: self.path.pw_min(&other.path)?,
        })
    }

    /// Join of opens: pointwise maximum of paths.
    pub fn or(&self, other: &DyckPath) -> Result<DyckPath> {
        self.same_window(other)?;
        Ok(DyckPath {
            window: self.window.clone(),
            path: self.path.pw_max(&other.path)?,
        })
    }

    /// Heyting implication: the pointwise-largest Dyck path `D` with
    /// `min(D, P) <= Q`. The pointwise constraint is `Q` on the closure of
    /// `{P > Q}` and the tent elsewhere; the result is the largest
    /// 1-Lipschitz function under that constraint.
    pub fn implies(&self, other: &DyckPath) -> Result<DyckPath> {
        self.same_window(other)?;
        let l = self.window.len();
        let zero = Q::zero();
        let diff = self.path.sub(&other.path)?;
        let region = diff.positive_closure()?;
        let mut pieces: Vec<LinPiece> = Vec::new();
        // Q on the constraint region
        for (a, b) in region.components() {
            pieces.extend(other.path.cut_pieces(a, b)?);
        }
        // tent on the complementary closed intervals
        let t = tent(&self.window);
        let mut prev_end = zero.clone();
        for (a, b) in region.components() {
            if &prev_end < a {
                pieces.extend(t.cut_pieces(&prev_end, a)?);
            }
            prev_end = b.clone();
        }
        if &prev_end < l {
            pieces.extend(t.cut_pieces(&prev_end, l)?);
        }
        let one = Q::from_integer(1.into());
        let env = lipschitz_envelope(&pieces, &zero, l, &one)?;
        let path = if env.is_infinite() { t } else { env.pw_min(&t)? };
        DyckPath::new(self.window.clone(), path)
    }

    /// Negation `P => bottom`: the tent cut down by the distance to the
    /// closure of the support of `P`.
    pub fn complement(&self) -> Result<DyckPath> {
        self.implies(&DyckPath::bottom(self.window.clone()))
    }

    /// Restriction along the subinterval map `(r, s)`: new window
    /// `l - r - s`, path `x -> min(P(x + r), tent'(x))`.
    pub fn restrict(&self, r: &Q, s: &Q) -> Result<DyckPath> {
        use num_traits::Signed;
        let l = self.window.len();
        if r.is_negative() || s.is_negative() || &(r + s) >= l {
            return Err(Error::InvalidRestriction);
        }
        let b = l - s;
        let inner = self.path.reparam(r, &b)?;
        let w = Window::new(&b - r)?;
        let path = inner.pw_min(&tent(&w))?;
        DyckPath::new(w, path)
    }

    /// Kripke-Joyal forcing by the subwindow `[a, b]` (local coordinates):
    /// true iff `min(x-a, b-x) <= path(x)` for all `x` in `[a, b]`.
    pub fn forces(&self, a: &Q, b: &Q) -> Result<bool> {
        use num_traits::Signed;
        let l = self.window.len();
        if a.is_negative() || a >= b || b > l {
            return Err(Error::InvalidSubwindow);
        }
        let two = Q::from_integer(2.into());
        let apex = (a + b) / &two;
        let sub_tent = Plf::new(vec![
            (a.clone(), Q::zero()),
            (apex.clone(), &apex - a),
            (b.clone(), Q::zero()),
        ])?;
        // compare at every kink of either side within [a, b]
        let mut xs = vec![a.clone(), apex, b.clone()];
        for (x, _) in self.path.breakpoints() {
            if x > a && x < b {
                xs.push(x.clone());
            }
        }
        for x in xs {
            let tv = sub_tent.eval_q(&x)?;
            let pv = self.path.eval_q(&x)?;
            if tv > pv {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Forcing over the full window; equivalent to being `top`.
    pub fn forced(&self) -> bool {
        self.is_top()
    }

    /// Entailment: inclusion of opens, i.e. pointwise `<=` of paths.
    pub fn leq(&self, other: &DyckPath) -> Result<bool> {
        self.same_window(other)?;
        self.path.leq(&other.path)
    }

    /// Strict membership of the half-plane point `(m, r)` in the open.
    pub fn contains(&self, m: &Q, r: &Q) -> Result<bool> {
        Ok(r < &self.path.eval_q(m)?)
    }

    /// The open region under the path, as explicit trapezoid data. Used to
    /// realize the opens-to-Lipschitz round trip without short-circuiting
    /// through the stored path.
    pub fn to_region(&self) -> OpenRegion {
        let traps = self
            .path
            .breakpoints()
            .windows(2)
            .map(|w| Trapezoid {
                x0: w[0].0.clone(),
                y0: w[0].1.clone(),
                x1: w[1].0.clone(),
                y1: w[1].1.clone(),
            })
            .collect();
        OpenRegion {
            window: self.window.clone(),
            traps,
        }
    }
}

/// A trapezoid column piece of an open region: for `m` in `[x0, x1]`, the
/// open contains exactly the points with `r < top(m)` where `top`
/// interpolates `(x0, y0)-(x1, y1)`.
#[derive(Clone, Debug)]
pub struct Trapezoid {
    pub x0: Q,
    pub y0: Q,
    pub x1: Q,
    pub y1: Q,
}

impl Trapezoid {
    fn top_at(&self, m: &Q) -> Option<Q> {
        if m < &self.x0 || m > &self.x1 {
            return None;
        }
        if self.x0 == self.x1 {
            return Some(self.y0.clone().max(self.y1.clone()));
        }
        Some(&self.y0 + (&self.y1 - &self.y0) * (m - &self.x0) / (&self.x1 - &self.x0))
    }
}

/// An open subset of the cone, held as trapezoid columns.
#[derive(Clone, Debug)]
pub struct OpenRegion {
    window: Window,
    traps: Vec<Trapezoid>,
}

impl OpenRegion {
    /// Strict membership test straight off the trapezoid data.
    pub fn contains(&self, m: &Q, r: &Q) -> bool {
        self.traps
            .iter()
            .any(|t| t.top_at(m).is_some_and(|top| r < &top))
    }

    /// Reconstructs the boundary path as the column supremum
    /// `f_U(m) = sup { r : (m, r) in U }`, evaluated from the trapezoids.
    pub fn boundary_path(&self) -> Result<DyckPath> {
        let mut xs: Vec<Q> = Vec::new();
        for t in &self.traps {
            xs.push(t.x0.clone());
            xs.push(t.x1.clone());
        }
        xs.sort();
        xs.dedup();
        if xs.len() < 2 {
            return Err(Error::InvalidDyckPath("region has no extent"));
        }
        let sup_at = |m: &Q| -> Q {
            self.traps
                .iter()
                .filter_map(|t| t.top_at(m))
                .max()
                .unwrap_or_else(Q::zero)
        };
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = sup_at(&x);
                (x, y)
            })
            .collect();
        DyckPath::new(self.window.clone(), Plf::new(pts)?)
    }
}

/// A path segment given by its two breakpoints.
pub type Segment = ((Q, Q), (Q, Q));

/// Reconstructs a Dyck path from its forced subwindows: the path equals the
/// pointwise supremum of the tents of all forced subwindows, and for a
/// piecewise-linear path that supremum is attained by the one-parameter tent
/// families swept along each segment. Every window used is checked against
/// the forcing oracle.
pub fn from_forced_windows(
    window: &Window,
    segments: &[Segment],
    forces: impl Fn(&Q, &Q) -> bool,
) -> Result<DyckPath> {
    let mut acc = DyckPath::bottom(window.clone());
    for ((x0, y0), (x1, y1)) in segments {
        // the sweep of windows [x - D(x), x + D(x)] along the segment
        // contributes the 1-Lipschitz extension of the segment
        for (x, y) in [(x0, y0), (x1, y1)] {
            if y.is_zero() {
                continue;
            }
            let (a, b) = (x - y, x + y);
            if !forces(&a, &b) {
                return Err(Error::InvalidDyckPath(
                    "window reported unforced during reconstruction",
                ));
            }
        }
        let l = window.len();
        let ext = |z: &Q| -> Q {
            // max over the segment of D(x) - |z - x|
            if z < x0 {
                y0 - (x0 - z)
            } else if z > x1 {
                y1 - (z - x1)
            } else {
                // linear interpolation on the segment
                y0 + (y1 - y0) * (z - x0) / (x1 - x0)
            }
        };
        let mut xs = vec![Q::zero(), l.clone()];
        for x in [x0, x1] {
            if x > &Q::zero() && x < l {
                xs.push(x.clone());
            }
        }
        xs.sort();
        xs.dedup();
        let raw = Plf::new(
            xs.into_iter()
                .map(|x| {
                    let y = ext(&x);
                    (x, y)
                })
                .collect(),
        )?;
        let zero = Plf::constant(Q::zero(), l.clone(), Q::zero())?;
        let clipped = raw.pw_max(&zero)?.pw_min(&tent(window))?;
        let piece = DyckPath::new(window.clone(), clipped)?;
        acc = acc.or(&piece)?;
    }
    Ok(acc)
}
