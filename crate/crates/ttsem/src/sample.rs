//! Deterministic sample generators for property checks, falsification runs
//! and the runnable examples. A small splitmix generator keeps every run
//! reproducible without external dependencies.

use num_traits::Zero;

use crate::interval::{tent, Clock, Window};
use crate::mtl::BoolSignal;
use crate::numeric::{IntervalSection, VariableReal};
use crate::omega::DyckPath;
use crate::plf::Plf;
use crate::rat::{qi, Q};
use crate::walk::{Graph, Walk};

/// splitmix64
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed.wrapping_add(0x9e3779b97f4a7c15),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[lo, hi]` inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// A rational in `[lo, hi]` with denominator `2^den_pow`.
    pub fn q_in(&mut self, lo: i64, hi: i64, den_pow: u32) -> Q {
        let den = 1i64 << den_pow;
        let n = self.int_in(lo * den, hi * den);
        Q::new(n.into(), den.into())
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[(self.next_u64() % xs.len() as u64) as usize]
    }
}

/// A random Dyck path over the window: a clamped random walk on a uniform
/// grid, kept 1-Lipschitz by choosing slopes in `[-1, 1]` and clamping under
/// the tent.
pub fn dyck_path(rng: &mut Rng, window: &Window, cells: u32) -> DyckPath {
    let l = window.len().clone();
    let n = cells.max(2);
    let step = &l / Q::from_integer(n.into());
    let t = tent(window);
    let slopes = [qi(-1), qi(-1) / qi(2), qi(0), qi(1) / qi(2), qi(1)];
    let mut pts: Vec<(Q, Q)> = Vec::with_capacity(n as usize + 1);
    let mut x = Q::zero();
    let mut y = Q::zero();
    for k in 0..=n {
        let cap = t.eval_q(&x).expect("x in domain");
        if y > cap {
            y = cap.clone();
        }
        if y < Q::zero() {
            y = Q::zero();
        }
        pts.push((x.clone(), y.clone()));
        if k < n {
            let s = rng.pick(&slopes).clone();
            y += s * &step;
            x += &step;
            if x > l {
                x = l.clone();
            }
        }
    }
    let plf = Plf::new(pts).expect("grid breakpoints are increasing");
    DyckPath::new(window.clone(), plf).expect("clamped walk is a Dyck path")
}

/// A random continuous trajectory with values in `[lo, hi]`.
pub fn variable_real(rng: &mut Rng, clock: &Clock, cells: u32, lo: i64, hi: i64) -> VariableReal {
    let l = clock.window().len().clone();
    let n = cells.max(1);
    let step = &l / Q::from_integer(n.into());
    let mut pts = Vec::with_capacity(n as usize + 1);
    let mut x = Q::zero();
    for k in 0..=n {
        pts.push((x.clone(), rng.q_in(lo, hi, 3)));
        if k < n {
            x += &step;
            if x > l {
                x = l.clone();
            }
        }
    }
    VariableReal::new(clock.clone(), Plf::new(pts).expect("grid")).expect("trajectory")
}

/// A random proper interval section: a trajectory plus a non-negative width.
pub fn interval_section(rng: &mut Rng, clock: &Clock, cells: u32) -> IntervalSection {
    let lo = variable_real(rng, clock, cells, -4, 4);
    let width = variable_real(rng, clock, cells, 0, 3);
    let hi = lo.g.add(&width.g).expect("same grid");
    IntervalSection::new(clock.clone(), lo.g, hi).expect("section")
}

/// A random walk through the graph with up to `max_transitions` interior
/// transitions at distinct grid instants.
pub fn walk(rng: &mut Rng, g: &Graph, window: &Window, max_transitions: u32) -> Walk {
    let l = window.len().clone();
    let verts: Vec<String> = g.vertex_ids();
    let start = rng.pick(&verts).clone();
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    let mut times = Vec::new();
    let k = rng.int_in(0, max_transitions as i64) as usize;
    // distinct interior instants on a 64ths grid
    let mut instants: Vec<Q> = Vec::new();
    let mut guard = 0;
    while instants.len() < k && guard < 200 {
        guard += 1;
        let t = &l * Q::new(rng.int_in(1, 63).into(), 64.into());
        if !instants.contains(&t) {
            instants.push(t);
        }
    }
    instants.sort();
    for t in instants {
        let here = vertices.last().unwrap().clone();
        let out = g.edges_from(&here);
        if out.is_empty() {
            break;
        }
        let e = rng.pick(&out).clone();
        let tgt = g.edge_target(&e).expect("edge exists").to_string();
        vertices.push(tgt);
        edges.push(e);
        times.push(t);
    }
    Walk::new(window.clone(), vertices, edges, times).expect("constructed walk is valid")
}

/// A random boolean signal: up to `parts` disjoint components with random
/// endpoint flags on a 32nds grid.
pub fn bool_signal(rng: &mut Rng, len: &Q, parts: u32) -> BoolSignal {
    let mut cuts: Vec<Q> = Vec::new();
    for _ in 0..(2 * parts) {
        let t = len * Q::new(rng.int_in(0, 32).into(), 32.into());
        if !cuts.contains(&t) {
            cuts.push(t);
        }
    }
    cuts.sort();
    let mut comps = Vec::new();
    let mut i = 0;
    while i + 1 < cuts.len() {
        if rng.bool() {
            let lo = cuts[i].clone();
            let hi = cuts[i + 1].clone();
            comps.push((lo, rng.bool(), hi, rng.bool()));
        }
        i += 2;
    }
    BoolSignal::from_flagged(len.clone(), comps).expect("grid components are sane")
}

/// A random modal parameter pair: sometimes a point `[q, q]`, sometimes an
/// unordered pair (the modalities accept `u < d`).
pub fn modal_params(rng: &mut Rng, lo: i64, hi: i64) -> (Q, Q) {
    let a = rng.q_in(lo, hi, 2);
    if rng.bool() {
        (a.clone(), a)
    } else {
        (a, rng.q_in(lo, hi, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn dyck_paths_are_valid() {
        let mut rng = Rng::new(1);
        let w = Window::new(qi(10)).unwrap();
        for _ in 0..50 {
            let d = dyck_path(&mut rng, &w, 8);
            assert!(d.path().is_lipschitz(&Q::one()));
            assert!(d.path().is_nonneg());
        }
    }
}
