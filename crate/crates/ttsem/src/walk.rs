//! Walks through graphs: the concrete hybrid behavior type.
//!
//! A walk over a window holds each vertex for a positive duration and
//! traverses edges instantaneously at strictly interior, pairwise distinct
//! instants. Restriction keeps the strictly interior transitions; gluing
//! along an overlap is the sheaf condition made executable. Labeled
//! transition systems are graphs with labeled edges, and their input/output
//! port behaviors are images of walks under graph homomorphisms.
//!
//! Delays compare two behaviors through the vertex-observation predicate:
//! the delayed copy shows, `delay` seconds later, the same vertex the
//! original showed, with the start-up stretch unconstrained.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{tent, Clock, Window};
use crate::modality::interior_premise;
use crate::numeric::VariableReal;
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::{fmt_q, parse_q, Q};

/// A finite graph with optional edge labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Graph> {
        for e in &edges {
            if !vertices.contains(&e.src) || !vertices.contains(&e.tgt) {
                return Err(Error::BadWalk(format!(
                    "edge {:?} touches unknown vertices",
                    e.id
                )));
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// The command graph of the airspace case study: two vertices with the
    /// transitions `climb!` (level -> climb) and `level!` (climb -> level).
    pub fn command_graph() -> Graph {
        Graph {
            vertices: vec!["level".into(), "climb".into()],
            edges: vec![
                Edge {
                    id: "climb!".into(),
                    src: "level".into(),
                    tgt: "climb".into(),
                    label: Some("climb!".into()),
                },
                Edge {
                    id: "level!".into(),
                    src: "climb".into(),
                    tgt: "level".into(),
                    label: Some("level!".into()),
                },
            ],
        }
    }

    pub fn vertex_ids(&self) -> Vec<String> {
        self.vertices.clone()
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn edge_target(&self, id: &str) -> Option<&str> {
        self.edge(id).map(|e| e.tgt.as_str())
    }

    pub fn edges_from(&self, v: &str) -> Vec<String> {
        self.edges
            .iter()
            .filter(|e| e.src == v)
            .map(|e| e.id.clone())
            .collect()
    }
}

/// A walk: vertices with positive durations, edges traversed at strictly
/// interior instants `0 < tau_1 < ... < tau_k < l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    window: Window,
    vertices: Vec<String>,
    edges: Vec<String>,
    times: Vec<Q>,
}

/// Wire format for walks.
#[derive(Serialize, Deserialize)]
pub struct WalkWire {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub times: Vec<String>,
}

impl Walk {
    pub fn new(
        window: Window,
        vertices: Vec<String>,
        edges: Vec<String>,
        times: Vec<Q>,
    ) -> Result<Walk> {
        if vertices.is_empty() || vertices.len() != edges.len() + 1 || edges.len() != times.len() {
            return Err(Error::BadWalk("length mismatch".into()));
        }
        let l = window.len();
        for w in times.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadWalk("transition times must increase".into()));
            }
        }
        if let (Some(first), Some(last)) = (times.first(), times.last()) {
            if first <= &Q::zero() || last >= l {
                return Err(Error::BadWalk(
                    "transition times must be strictly interior".into(),
                ));
            }
        }
        Ok(Walk {
            window,
            vertices,
            edges,
            times,
        })
    }

    pub fn constant(window: Window, vertex: &str) -> Walk {
        Walk {
            window,
            vertices: vec![vertex.to_string()],
            edges: Vec::new(),
            times: Vec::new(),
        }
    }

    /// Checks vertex/edge consistency against a graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for v in &self.vertices {
            if !g.vertices.contains(v) {
                return Err(Error::BadWalk(format!("unknown vertex {:?}", v)));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let edge = g
                .edge(e)
                .ok_or_else(|| Error::BadWalk(format!("unknown edge {:?}", e)))?;
            if edge.src != self.vertices[i] || edge.tgt != self.vertices[i + 1] {
                return Err(Error::BadWalk(format!(
                    "edge {:?} does not connect {:?} -> {:?}",
                    e,
                    self.vertices[i],
                    self.vertices[i + 1]
                )));
            }
        }
        Ok(())
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn times(&self) -> &[Q] {
        &self.times
    }

    /// The vertex at local instant `x`; errors at transitions and boundary.
    pub fn vertex_at(&self, x: &Q) -> Result<&str> {
        if x <= &Q::zero() || x >= self.window.len() {
            return Err(Error::AtTransition(x.to_string()));
        }
        match self.times.binary_search_by(|t| t.cmp(x)) {
            Ok(_) => Err(Error::AtTransition(x.to_string())),
            Err(i) => Ok(&self.vertices[i]),
        }
    }

    /// Restriction along `(r, s)`: keeps strictly interior transitions,
    /// shifts by `-r`.
    pub fn restrict(&self, r: &Q, s: &Q) -> Result<Walk> {
        let l = self.window.len();
        if r.is_negative() || s.is_negative() || &(r + s) >= l {
            return Err(Error::InvalidRestriction);
        }
        let hi = l - s;
        let new_window = Window::new(&hi - r)?;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut times = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let seg_start = if i == 0 { Q::zero() } else { self.times[i - 1].clone() };
            let seg_end = if i < self.times.len() {
                self.times[i].clone()
            } else {
                l.clone()
            };
            // does the segment meet the open restriction window?
            if seg_start < hi && &seg_end > r {
                vertices.push(v.clone());
                if i < self.times.len() && &self.times[i] > r && self.times[i] < hi {
                    edges.push(self.edges[i].clone());
                    times.push(&self.times[i] - r);
                }
            }
        }
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Walk::new(new_window, vertices, edges, times)
    }

    /// Glues `self` on `[0, len1]` with `other` placed at `offset`
    /// (covering `[offset, offset + len2]`); the restrictions to the overlap
    /// must agree. Returns the unique common extension.
    pub fn glue(&self, other: &Walk, offset: &Q) -> Result<Walk> {
        let len1 = self.window.len().clone();
        let len2 = other.window.len().clone();
        if offset.is_negative() || offset >= &len1 {
            return Err(Error::InvalidRestriction);
        }
        let end2 = offset + &len2;
        let overlap_end = len1.clone().min(end2.clone());
        let my_overlap = self.restrict(offset, &(&len1 - &overlap_end))?;
        let their_overlap = other.restrict(&Q::zero(), &(&end2 - &overlap_end))?;
        if my_overlap.vertices != their_overlap.vertices
            || my_overlap.edges != their_overlap.edges
            || my_overlap.times != their_overlap.times
        {
            // report the first disagreement instant
            let at = my_overlap
                .times
                .iter()
                .zip(their_overlap.times.iter())
                .find(|(a, b)| a != b)
                .map(|(a, _)| a + offset)
                .unwrap_or_else(|| offset.clone());
            return Err(Error::GlueMismatch(fmt_q(&at)));
        }
        if end2 <= len1 {
            return Ok(self.clone());
        }
        let window = Window::new(end2.clone())?;
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let mut times = self.times.clone();
        // append other's transitions past the end of self
        for (i, t) in other.times.iter().enumerate() {
            let global = t + offset;
            if global >= len1 {
                edges.push(other.edges[i].clone());
                times.push(global);
                vertices.push(other.vertices[i + 1].clone());
            }
        }
        Walk::new(window, vertices, edges, times)
    }

    /// Collapses to the vertex-observation step function: drops transitions
    /// that do not change the vertex. This is what the vertex-equality
    /// predicate can see.
    pub fn collapse(&self) -> Walk {
        let mut vertices = vec![self.vertices[0].clone()];
        let mut edges = Vec::new();
        let mut times = Vec::new();
        for (i, t) in self.times.iter().enumerate() {
            if self.vertices[i + 1] != *vertices.last().unwrap() {
                vertices.push(self.vertices[i + 1].clone());
                edges.push(self.edges[i].clone());
                times.push(t.clone());
            }
        }
        Walk {
            window: self.window.clone(),
            vertices,
            edges,
            times,
        }
    }

    /// Serializes to the wire format.
    pub fn to_wire(&self) -> WalkWire {
        WalkWire {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            times: self.times.iter().map(fmt_q).collect(),
        }
    }

    pub fn from_wire(window: Window, w: &WalkWire) -> Result<Walk> {
        let times = w
            .times
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()?;
        Walk::new(window, w.vertices.clone(), w.edges.clone(), times)
    }
}

/// The open "the walk is at vertex `v`": the union over maximal `v`-segments
/// of the tents strictly inside them.
pub fn eq_vertex_open(w: &Walk, v: &str, clock: &Clock) -> Result<DyckPath> {
    let win = clock.window();
    if &win != w.window() {
        return Err(Error::WindowMismatch);
    }
    let l = win.len().clone();
    let t = tent(&win);
    let mut path = Plf::constant(Q::zero(), l.clone(), Q::zero())?;
    for (i, vert) in w.vertices.iter().enumerate() {
        if vert != v {
            continue;
        }
        let a = if i == 0 { Q::zero() } else { w.times[i - 1].clone() };
        let b = if i < w.times.len() {
            w.times[i].clone()
        } else {
            l.clone()
        };
        let two = Q::from_integer(2.into());
        let apex = (&a + &b) / &two;
        let mut pts = Vec::new();
        if a > Q::zero() {
            pts.push((Q::zero(), Q::zero()));
        }
        pts.push((a.clone(), Q::zero()));
        pts.push((apex.clone(), &apex - &a));
        pts.push((b.clone(), Q::zero()));
        if b < l {
            pts.push((l.clone(), Q::zero()));
        }
        path = path.pw_max(&Plf::new(pts)?)?;
    }
    DyckPath::new(win, path.pw_min(&t)?)
}

/// Is the walk traversing edge `e` exactly at clock time `r`? True when `r`
/// is outside the open window (the At-point is then invisible), or when some
/// transition happens at `r` with that edge.
pub fn trav(w: &Walk, r: &Q, e: &str, clock: &Clock) -> Result<bool> {
    let win = clock.window();
    if &win != w.window() {
        return Err(Error::WindowMismatch);
    }
    if r <= &clock.d_t || r >= &clock.u_t {
        return Ok(true);
    }
    let local = clock.to_local(r);
    Ok(w
        .times
        .iter()
        .zip(w.edges.iter())
        .any(|(t, edge)| t == &local && edge == e))
}

/// Timed-walk condition: every interior inter-transition duration lies in
/// the open interval `(a, b)`; the first and last partial durations are only
/// required to be `< b`.
pub fn timed_walk_check(w: &Walk, a: &Q, b: &Q) -> bool {
    let l = w.window().len();
    if w.times.is_empty() {
        return l < b;
    }
    let first = &w.times[0] - Q::zero();
    let last = l - w.times.last().unwrap();
    if &first >= b || &last >= b {
        return false;
    }
    w.times
        .windows(2)
        .all(|p| &(&p[1] - &p[0]) > a && &(&p[1] - &p[0]) < b)
}

/// Input/output port projections of an LTS walk: the input forgets vertices
/// (walk over the one-vertex graph on the same labeled edges), the output
/// walks the complete graph on vertices with edges renamed to `(src, tgt)`
/// pairs. Both preserve times.
pub fn lts_ports(lts: &Graph, w: &Walk) -> Result<(Walk, Walk)> {
    w.validate(lts)?;
    let input = Walk::new(
        w.window.clone(),
        vec!["*".to_string(); w.vertices.len()],
        w.edges.clone(),
        w.times.clone(),
    )?;
    let out_edges = w
        .edges
        .iter()
        .enumerate()
        .map(|(i, _)| format!("({},{})", w.vertices[i], w.vertices[i + 1]))
        .collect();
    let output = Walk::new(
        w.window.clone(),
        w.vertices.clone(),
        out_edges,
        w.times.clone(),
    )?;
    Ok((input, output))
}

/// The one-vertex graph receiving LTS input walks.
pub fn input_port_graph(lts: &Graph) -> Graph {
    Graph {
        vertices: vec!["*".to_string()],
        edges: lts
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                src: "*".into(),
                tgt: "*".into(),
                label: e.label.clone(),
            })
            .collect(),
    }
}

/// The complete graph on the LTS vertices receiving output walks.
pub fn output_port_graph(lts: &Graph) -> Graph {
    let mut edges = Vec::new();
    for a in &lts.vertices {
        for b in &lts.vertices {
            edges.push(Edge {
                id: format!("({},{})", a, b),
                src: a.clone(),
                tgt: b.clone(),
                label: None,
            });
        }
    }
    Graph {
        vertices: lts.vertices.clone(),
        edges,
    }
}

/// Pointwise-shift delay check for walks: the delayed walk shows, `d` later,
/// the same vertex the original shows, wherever both are defined. The
/// start-up stretch of the delayed walk is unconstrained. Compares
/// vertex-observation step functions, so vertex-preserving transitions are
/// invisible.
pub fn delay_check_walks(original: &Walk, delayed: &Walk, d: &Q, clock: &Clock) -> Result<bool> {
    let win = clock.window();
    if &win != original.window() || &win != delayed.window() {
        return Err(Error::WindowMismatch);
    }
    if d.is_negative() {
        return Err(Error::BadRational(format!("delay {}", d)));
    }
    let l = win.len();
    if d >= l {
        return Ok(true);
    }
    if d.is_zero() {
        let a = original.collapse();
        let b = delayed.collapse();
        return Ok(a.vertices == b.vertices && a.times == b.times);
    }
    let head = original.restrict(&Q::zero(), d)?.collapse();
    let tail = delayed.restrict(d, &Q::zero())?.collapse();
    Ok(head.vertices == tail.vertices && head.times == tail.times)
}

/// Pointwise-shift delay check for trajectories: `f(x) = f'(x + d)` on the
/// overlap.
pub fn delay_check_reals(f: &VariableReal, delayed: &VariableReal, d: &Q) -> Result<bool> {
    if f.clock != delayed.clock {
        return Err(Error::ClockMismatch);
    }
    if d.is_negative() {
        return Err(Error::BadRational(format!("delay {}", d)));
    }
    let l = f.clock.window().len().clone();
    if d >= &l {
        return Ok(true);
    }
    if d.is_zero() {
        return Ok(f.g == delayed.g);
    }
    let head = f.g.reparam(&Q::zero(), &(&l - d))?;
    let tail = delayed.g.reparam(d, &l)?;
    Ok(head == tail)
}

/// The open-level delay condition instantiated with vertex observations,
/// evaluated over a grid of `(d, u)` pairs induced by the transition times:
/// for every vertex `v` and pair `d < u`,
/// `See[d, u+D] In[d, u] (T = v)` is forced over the full window iff
/// `See[d, u+D] In[d+D, u+D] (P = v)` is.
pub fn delay_check_walks_open(
    original: &Walk,
    delayed: &Walk,
    delay: &Q,
    clock: &Clock,
) -> Result<bool> {
    let mut verts: Vec<String> = original
        .vertices
        .iter()
        .chain(delayed.vertices.iter())
        .cloned()
        .collect();
    verts.sort();
    verts.dedup();
    // grid: transition times of both (global), their delays, window ends,
    // and midpoints
    let mut grid: Vec<Q> = vec![clock.d_t.clone(), clock.u_t.clone()];
    for t in original.times.iter() {
        grid.push(&clock.d_t + t);
        grid.push(&clock.d_t + t + delay);
    }
    for t in delayed.times.iter() {
        grid.push(&clock.d_t + t);
        grid.push(&clock.d_t + t - delay);
    }
    grid.sort();
    grid.dedup();
    let mids: Vec<Q> = grid
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / Q::from_integer(2.into()))
        .collect();
    grid.extend(mids);
    grid.sort();
    grid.dedup();
    for v in &verts {
        let t_open = eq_vertex_open(original, v, clock)?;
        let p_open = eq_vertex_open(delayed, v, clock)?;
        for i in 0..grid.len() {
            for j in (i + 1)..grid.len() {
                let (d, u) = (&grid[i], &grid[j]);
                let u_plus = u + delay;
                // the pair is vacuous unless [d, u + delay] sits strictly
                // inside the window; for non-vacuous pairs the guarded
                // forcing collapses to premise <= proposition, because
                // P => Q is top exactly when P <= Q
                if !(&clock.d_t < d && u_plus < clock.u_t) {
                    continue;
                }
                let lhs = interior_premise(clock, d, u).leq(&t_open)?;
                let rhs = interior_premise(clock, &(d + delay), &u_plus).leq(&p_open)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The open-level delay condition for trajectories, sampled over a grid of
/// `(d, u)` pairs and value bands induced by the breakpoints: for each
/// non-vacuous pair and band `(q1, q2)`,
/// `See[d, u+D] In[d, u] (q1 < f < q2)` is forced over the full window iff
/// `See[d, u+D] In[d+D, u+D] (q1 < f' < q2)` is.
pub fn delay_check_reals_open(
    f: &VariableReal,
    delayed: &VariableReal,
    delay: &Q,
    clock: &Clock,
) -> Result<bool> {
    use crate::numeric::{lt_open, VariableReal as VR};
    use std::collections::BTreeMap;
    let quarter = Q::new(1.into(), 4.into());
    // the band bounds repeat across pairs (they are breakpoint values
    // offset by a constant); cache the comparison opens per bound
    let mut cache: BTreeMap<(bool, bool, Q), DyckPath> = BTreeMap::new();
    let mut band = |on_delayed: bool, q1: &Q, q2: &Q| -> Result<DyckPath> {
        let g: &VariableReal = if on_delayed { delayed } else { f };
        let mut side = |above: bool, q: &Q| -> Result<DyckPath> {
            let key = (on_delayed, above, q.clone());
            if let Some(hit) = cache.get(&key) {
                return Ok(hit.clone());
            }
            let k = VR::constant(clock.clone(), q.clone());
            let open = if above { lt_open(&k, g)? } else { lt_open(g, &k)? };
            cache.insert(key, open.clone());
            Ok(open)
        };
        side(true, q1)?.and(&side(false, q2)?)
    };
    // grid of global instants from both trajectories' breakpoints; adjacent
    // pairs land strictly inside every segment of either trace
    let mut grid: Vec<Q> = Vec::new();
    for (x, _) in f.g.breakpoints().iter().chain(delayed.g.breakpoints()) {
        let g0 = &clock.d_t + x;
        grid.push(g0.clone());
        grid.push(&g0 - delay);
    }
    grid.retain(|t| t > &clock.d_t && (t + delay) < clock.u_t);
    grid.sort();
    grid.dedup();
    for i in 0..grid.len() {
        for j in (i + 1)..grid.len().min(i + 2) {
            let (d, u) = (&grid[i], &grid[j]);
            let u_plus = u + delay;
            // bands around both restrictions
            let lo_f = f.g.min_on(&clock.to_local(d), &clock.to_local(u))?;
            let hi_f = f.g.max_on(&clock.to_local(d), &clock.to_local(u))?;
            let lo_p = delayed
                .g
                .min_on(&clock.to_local(&(d + delay)), &clock.to_local(&u_plus))?;
            let hi_p = delayed
                .g
                .max_on(&clock.to_local(&(d + delay)), &clock.to_local(&u_plus))?;
            // non-vacuous pairs only (grid filtering ensures it); the
            // guarded forcing collapses to premise <= band
            let lhs_premise = interior_premise(clock, d, u);
            let rhs_premise = interior_premise(clock, &(d + delay), &u_plus);
            for (q1, q2) in [
                (&lo_f - &quarter, &hi_f + &quarter),
                (&lo_p - &quarter, &hi_p + &quarter),
            ] {
                let lhs = lhs_premise.leq(&band(false, &q1, &q2)?)?;
                let rhs = rhs_premise.leq(&band(true, &q1, &q2)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
