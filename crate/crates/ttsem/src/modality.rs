//! Clock-indexed atoms and the four temporal modalities on propositions.
//!
//! With a clock `(d_t, u_t)` fixed, the atoms `t < q` and `q < t` become
//! Dyck paths; apartness `t # [a, b]` is their join. The modalities:
//!
//! * `see(d, u, P)` — closed: `t # [u, d] or P`;
//! * `at(d, u, P)` — quasi-closed: `(P => t#[u,d]) => t#[u,d]`;
//! * `within(d, u, P)` — open: `(d < t < u) => P`;
//! * `pi(P)` — pointwise: the largest path vanishing exactly where `P` does.
//!
//! All parameters are global clock times.

use num_traits::Zero;

use crate::error::Result;
use crate::interval::{tent, Clock};
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::Q;

fn clip_to_path(clock: &Clock, raw: Plf) -> DyckPath {
    let w = clock.window();
    let zero = Plf::constant(Q::zero(), w.len().clone(), Q::zero()).expect("zero plf");
    let path = raw
        .pw_min(&tent(&w))
        .and_then(|p| p.pw_max(&zero))
        .expect("clip keeps domain");
    DyckPath::new(w, path).expect("clipped atom is a valid Dyck path")
}

/// The open of `t < q`: path `x -> max(0, min(tent(x), q_loc - x))` with
/// `q_loc = q - d_t`. A subwindow forces it iff its right end is `<= q_loc`.
pub fn atom_lt(clock: &Clock, q: &Q) -> DyckPath {
    let w = clock.window();
    let q_loc = clock.to_local(q);
    let raw = Plf::line(Q::zero(), w.len().clone(), q_loc, -Q::from_integer(1.into()))
        .expect("line plf");
    clip_to_path(clock, raw)
}

/// The open of `q < t`: path `x -> max(0, min(tent(x), x - q_loc))`.
pub fn atom_gt(clock: &Clock, q: &Q) -> DyckPath {
    let w = clock.window();
    let q_loc = clock.to_local(q);
    let raw = Plf::line(
        Q::zero(),
        w.len().clone(),
        -q_loc,
        Q::from_integer(1.into()),
    )
    .expect("line plf");
    clip_to_path(clock, raw)
}

/// Apartness `t # [a, b] = (t < a) or (b < t)`.
pub fn apart(clock: &Clock, a: &Q, b: &Q) -> DyckPath {
    atom_lt(clock, a)
        .or(&atom_gt(clock, b))
        .expect("same window")
}

/// `see(d, u, P) = t # [u, d] or P`.
pub fn see(clock: &Clock, d: &Q, u: &Q, p: &DyckPath) -> Result<DyckPath> {
    apart(clock, u, d).or(p)
}

/// The premise `d < t < u` of the `within` modality.
pub fn interior_premise(clock: &Clock, d: &Q, u: &Q) -> DyckPath {
    atom_gt(clock, d)
        .and(&atom_lt(clock, u))
        .expect("same window")
}

/// `within(d, u, P) = (d < t < u) => P`: truth assuming containment.
pub fn within(clock: &Clock, d: &Q, u: &Q, p: &DyckPath) -> Result<DyckPath> {
    interior_premise(clock, d, u).implies(p)
}

/// `at(d, u, P) = (P => t#[u,d]) => t#[u,d]`.
pub fn at(clock: &Clock, d: &Q, u: &Q, p: &DyckPath) -> Result<DyckPath> {
    let a = apart(clock, u, d);
    p.implies(&a)?.implies(&a)
}

/// Decision form of `at` for `d <= u`: when the point `[d, u]` lies strictly
/// inside the window, the answer is `top` if the point is strictly under the
/// path of `P` and `t # [u, d]` otherwise; outside the window it is `top`.
pub fn at_decision(clock: &Clock, d: &Q, u: &Q, p: &DyckPath) -> Result<DyckPath> {
    debug_assert!(d <= u);
    let strictly_inside = &clock.d_t < d && u < &clock.u_t;
    if !strictly_inside {
        return Ok(DyckPath::top(clock.window()));
    }
    let two = Q::from_integer(2.into());
    let m_loc = clock.to_local(&((d + u) / &two));
    let r = (u - d) / &two;
    if p.contains(&m_loc, &r)? {
        Ok(DyckPath::top(clock.window()))
    } else {
        Ok(apart(clock, u, d))
    }
}

/// The pointwise modality: the largest path that vanishes exactly where `P`
/// does, i.e. `min(tent, distance to the zero set of P)`.
pub fn pi(p: &DyckPath) -> Result<DyckPath> {
    let w = p.window().clone();
    let z = p.path().zero_set()?;
    let dist = z.dist_plf(&Q::zero(), w.len())?;
    let path = if dist.is_infinite() {
        tent(&w)
    } else {
        dist.pw_min(&tent(&w))?
    };
    DyckPath::new(w, path)
}
