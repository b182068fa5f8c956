//! Acceptance suite: the ten criteria run sequentially in one harness that
//! prints one pass/fail line per criterion and asserts each stated time
//! budget plus the overall three-minute target.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::{One, Zero};

use ttsem::calculus::{
    ad_check, bounds_as_section, derivative_bounds_real, leibniz_residual, mean_value_check,
};
use ttsem::contract::{
    check_system, nas_contracts, safety_goal, simulate_closed_loop, NasParams,
};
use ttsem::interval::{tent, Clock, Window};
use ttsem::modality::{apart, at, at_decision, atom_gt, atom_lt, pi, see, within};
use ttsem::mtl::{self, BoolSignal};
use ttsem::numeric::{approx_map_check, KInterval, VariableReal};
use ttsem::omega::{from_forced_windows, DyckPath};
use ttsem::plf::Plf;
use ttsem::rat::{qi, qr, ExtQ, Q};
use ttsem::sample::{self, Rng};
use ttsem::walk::{
    delay_check_reals, delay_check_reals_open, delay_check_walks, delay_check_walks_open,
    lts_ports, timed_walk_check, Graph, Walk,
};

fn finish(criterion: &str, started: Instant, budget_secs: u64) {
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < budget_secs,
        "criterion {} exceeded its {}s budget: {:.2?}",
        criterion,
        budget_secs,
        elapsed
    );
}

#[test]
fn acceptance_suite() {
    let suite: Vec<(&str, fn())> = vec![
        ("01 lipschitz/dyck bijection", criterion_01_lipschitz_dyck_bijection),
        ("02 heyting adjunction", criterion_02_heyting_adjunction),
        ("03 modality laws", criterion_03_modality_laws),
        ("04 axiom instances", criterion_04_axiom_instances),
        ("05 kaucher arithmetic", criterion_05_kaucher_arithmetic),
        ("06 calculus", criterion_06_calculus),
        ("07 delay", criterion_07_delay),
        ("08 walks", criterion_08_walks),
        ("09 nas end-to-end", criterion_09_nas_end_to_end),
        ("10 mtl", criterion_10_mtl),
    ];
    let whole = Instant::now();
    let mut failures = Vec::new();
    for (name, run) in suite {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {}: {} ({:.2?})", name, status, started.elapsed());
        if outcome.is_err() {
            failures.push(name);
        }
    }
    let total = whole.elapsed();
    println!("acceptance total: {:.2?}", total);
    assert!(failures.is_empty(), "failed criteria: {:?}", failures);
    assert!(
        total.as_secs() < 180,
        "suite exceeded the three-minute target: {:.2?}",
        total
    );
}

fn window10() -> Window {
    Window::new(qi(10)).unwrap()
}

fn clock10() -> Clock {
    Clock::new(qi(0), qi(10)).unwrap()
}

fn criterion_01_lipschitz_dyck_bijection() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC1);
    let w = window10();
    for k in 0..500 {
        let d = sample::dyck_path(&mut rng, &w, 8);
        // open set -> column supremum -> path, exactly
        let region = d.to_region();
        let back = region.boundary_path().unwrap();
        assert_eq!(back, d, "region round trip failed on sample {}", k);
        // membership of the region agrees with the strict path criterion
        for _ in 0..4 {
            let m = rng.q_in(0, 10, 4);
            let r = rng.q_in(0, 5, 4);
            assert_eq!(region.contains(&m, &r), d.contains(&m, &r).unwrap());
        }
        // reconstruction from forced windows returns the path exactly
        let segs: Vec<ttsem::omega::Segment> = d
            .path()
            .breakpoints()
            .windows(2)
            .map(|p| (p[0].clone(), p[1].clone()))
            .collect();
        let rebuilt = from_forced_windows(&w, &segs, |a, b| d.forces(a, b).unwrap()).unwrap();
        assert_eq!(rebuilt, d, "forced-window reconstruction failed on {}", k);
    }
    finish("01 lipschitz/dyck bijection", started, 5);
}

fn criterion_02_heyting_adjunction() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC2);
    let w = window10();
    for _ in 0..500 {
        let p = sample::dyck_path(&mut rng, &w, 6);
        let q = sample::dyck_path(&mut rng, &w, 6);
        let r = sample::dyck_path(&mut rng, &w, 6);
        let imp = p.implies(&q).unwrap();
        let lhs = r.leq(&imp).unwrap();
        let rhs = r.and(&p).unwrap().leq(&q).unwrap();
        assert_eq!(lhs, rhs, "adjunction failed");
        // modus ponens inequality always
        assert!(imp.and(&p).unwrap().leq(&q).unwrap());
    }
    finish("02 heyting adjunction", started, 10);
}

fn criterion_03_modality_laws() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC3);
    let clock = clock10();
    let w = clock.window();
    for _ in 0..300 {
        let p = sample::dyck_path(&mut rng, &w, 6);
        let q = sample::dyck_path(&mut rng, &w, 6);
        let (d1, u1) = sample::modal_params(&mut rng, -2, 12);
        let (d2, u2) = sample::modal_params(&mut rng, -2, 12);

        // unit, idempotence, meet-preservation for each modality
        type Modality = Box<dyn Fn(&DyckPath) -> DyckPath>;
        let ops: Vec<(&str, Modality)> = vec![
            ("see", {
                let c = clock.clone();
                let (d, u) = (d1.clone(), u1.clone());
                Box::new(move |x: &DyckPath| see(&c, &d, &u, x).unwrap())
            }),
            ("at", {
                let c = clock.clone();
                let (d, u) = (d1.clone(), u1.clone());
                Box::new(move |x: &DyckPath| at(&c, &d, &u, x).unwrap())
            }),
            ("in", {
                let c = clock.clone();
                let (d, u) = (d1.clone(), u1.clone());
                Box::new(move |x: &DyckPath| within(&c, &d, &u, x).unwrap())
            }),
            ("pi", Box::new(move |x: &DyckPath| pi(x).unwrap())),
        ];
        for (name, j) in &ops {
            let jp = j(&p);
            assert!(p.leq(&jp).unwrap(), "{} unit failed", name);
            assert_eq!(j(&jp), jp, "{} idempotence failed", name);
            let jq = j(&q);
            assert_eq!(
                j(&p.and(&q).unwrap()),
                jp.and(&jq).unwrap(),
                "{} meet preservation failed",
                name
            );
        }

        // see and in commute with join always
        let or_pq = p.or(&q).unwrap();
        assert_eq!(
            see(&clock, &d1, &u1, &or_pq).unwrap(),
            see(&clock, &d1, &u1, &p)
                .unwrap()
                .or(&see(&clock, &d1, &u1, &q).unwrap())
                .unwrap()
        );
        assert_eq!(
            within(&clock, &d1, &u1, &or_pq).unwrap(),
            within(&clock, &d1, &u1, &p)
                .unwrap()
                .or(&within(&clock, &d1, &u1, &q).unwrap())
                .unwrap()
        );
        // at commutes with join when d <= u
        let (ad, au) = if d1 <= u1 {
            (d1.clone(), u1.clone())
        } else {
            (u1.clone(), d1.clone())
        };
        assert_eq!(
            at(&clock, &ad, &au, &or_pq).unwrap(),
            at(&clock, &ad, &au, &p)
                .unwrap()
                .or(&at(&clock, &ad, &au, &q).unwrap())
                .unwrap()
        );
        // at fast path equals the double implication
        assert_eq!(
            at(&clock, &ad, &au, &p).unwrap(),
            at_decision(&clock, &ad, &au, &p).unwrap()
        );

        // composition formulas
        let ss = see(&clock, &d1, &u1, &see(&clock, &d2, &u2, &p).unwrap()).unwrap();
        let s_min_max = see(
            &clock,
            &d1.clone().min(d2.clone()),
            &u1.clone().max(u2.clone()),
            &p,
        )
        .unwrap();
        assert_eq!(ss, s_min_max, "see composition failed");
        let ii = within(&clock, &d1, &u1, &within(&clock, &d2, &u2, &p).unwrap()).unwrap();
        let i_max_min = within(
            &clock,
            &d1.clone().max(d2.clone()),
            &u1.clone().min(u2.clone()),
            &p,
        )
        .unwrap();
        assert_eq!(ii, i_max_min, "in composition failed");

        // false under the point modalities
        let bot = DyckPath::bottom(w.clone());
        assert_eq!(
            see(&clock, &d1, &u1, &bot).unwrap(),
            apart(&clock, &u1, &d1)
        );
        assert_eq!(at(&clock, &d1, &u1, &bot).unwrap(), apart(&clock, &u1, &d1));

        // nested At/See for d1 <= d2 <= u2 <= u1
        let mut ps = [d1.clone(), d2.clone(), u1.clone(), u2.clone()];
        ps.sort();
        let [n1, n2, n3, n4] = ps;
        let lhs = at(&clock, &n1, &n4, &at(&clock, &n2, &n3, &p).unwrap()).unwrap();
        let rhs = see(&clock, &n1, &n4, &at(&clock, &n2, &n3, &p).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "nested at/see failed");

        // pi of the time atoms is the identity
        let ql = rng.q_in(-2, 12, 2);
        assert_eq!(pi(&atom_lt(&clock, &ql)).unwrap(), atom_lt(&clock, &ql));
        assert_eq!(pi(&atom_gt(&clock, &ql)).unwrap(), atom_gt(&clock, &ql));
    }
    finish("03 modality laws", started, 30);
}

fn criterion_04_axiom_instances() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC4);
    let clock = clock10();
    let w = clock.window();

    // coprime and prime as exact path identities
    for _ in 0..300 {
        let p = sample::dyck_path(&mut rng, &w, 6);
        let q = sample::dyck_path(&mut rng, &w, 6);
        let qq = rng.q_in(-2, 12, 2);
        let atom = atom_lt(&clock, &qq);
        let lhs = atom.implies(&p.or(&q).unwrap()).unwrap();
        let rhs = atom
            .implies(&p)
            .unwrap()
            .or(&atom.implies(&q).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "coprime failed at q = {}", qq);

        let (d, u) = {
            let a = rng.q_in(0, 10, 2);
            let b = rng.q_in(0, 10, 2);
            (a.clone().min(b.clone()), a.max(b))
        };
        let ap = apart(&clock, &u, &d);
        let lhs = p.and(&q).unwrap().implies(&ap).unwrap();
        let rhs = p
            .implies(&ap)
            .unwrap()
            .or(&q.implies(&ap).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "prime failed at [{}, {}]", d, u);
    }

    // enough points: the grid infimum of At[d,u]P approaches P within twice
    // the grid step
    let step = qr(10, 12);
    let grid: Vec<Q> = (0..=12).map(|k| qi(k) * &step / qi(1)).collect();
    for _ in 0..20 {
        let p = sample::dyck_path(&mut rng, &w, 6);
        let mut inf: Option<DyckPath> = None;
        for i in 0..grid.len() {
            for j in i..grid.len() {
                let a = at(&clock, &grid[i], &grid[j], &p).unwrap();
                inf = Some(match inf {
                    None => a,
                    Some(cur) => cur.and(&a).unwrap(),
                });
            }
        }
        let inf = inf.unwrap();
        assert!(p.leq(&inf).unwrap(), "grid infimum must dominate P");
        let gap = inf.path().sub(p.path()).unwrap();
        let worst = gap.max_on(&Q::zero(), &qi(10)).unwrap();
        assert!(
            worst <= qi(2) * &step,
            "enough-points gap {} exceeds 2h",
            worst
        );
    }

    // covering-pi: premise-satisfying samples validate pi P => P
    let mut premise_holders = 0;
    for _ in 0..40 {
        let r = sample::dyck_path(&mut rng, &w, 6);
        let p = pi(&r).unwrap();
        let mut premise = true;
        'outer: for i in 0..grid.len() {
            for j in (i + 1)..grid.len() {
                let ap = apart(&clock, &grid[j], &grid[i]);
                if ap.implies(&p).unwrap() != p {
                    premise = false;
                    break 'outer;
                }
            }
        }
        if premise {
            premise_holders += 1;
            assert!(pi(&p).unwrap().leq(&p).unwrap(), "covering-pi failed");
        }
    }
    assert!(premise_holders > 0, "no premise-satisfying samples seen");
    finish("04 axiom instances", started, 30);
}

fn criterion_05_kaucher_arithmetic() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC5);
    let ki = |d: i64, u: i64| KInterval::from_q(qi(d), qi(u));

    // the mixed-constant counterexample chain
    assert_eq!(ki(-1, 1).mul(&ki(1, -1)), ki(0, 0));
    assert_eq!(
        ki(-1, -1).mul(&ki(1, -1)).meet(&ki(1, 1).mul(&ki(1, -1))),
        ki(1, -1)
    );
    assert_eq!(ki(-1, -1).meet(&ki(1, 1)).mul(&ki(1, -1)), ki(0, 0));

    // the distributivity failure triple
    let x = ki(0, 1);
    let y = ki(1, 1);
    let z = ki(-1, -1);
    assert_eq!(x.mul(&y.add(&z).unwrap()), ki(0, 0));
    assert_eq!(x.mul(&y).add(&x.mul(&z)).unwrap(), ki(-1, 1));

    let rand_iv = |rng: &mut Rng| KInterval::from_q(rng.q_in(-6, 6, 3), rng.q_in(-6, 6, 3));

    // subtraction formula against the multiply-by-minus-one route
    for _ in 0..100 {
        let a = rand_iv(&mut rng);
        let b = rand_iv(&mut rng);
        let direct = a.sub(&b).unwrap();
        let via_neg = a.add(&ki(-1, -1).mul(&b)).unwrap();
        assert_eq!(direct, via_neg);
        let (dd, uu) = (&direct.d, &direct.u);
        assert_eq!(dd.finite().unwrap(), &(a.d.finite().unwrap() - b.u.finite().unwrap()));
        assert_eq!(uu.finite().unwrap(), &(a.u.finite().unwrap() - b.d.finite().unwrap()));
    }

    // commutative monoid laws for addition
    for _ in 0..200 {
        let a = rand_iv(&mut rng);
        let b = rand_iv(&mut rng);
        let c = rand_iv(&mut rng);
        assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        assert_eq!(a.add(&KInterval::zero()).unwrap(), a);
        // subtraction inverts addition on genuine reals
        let r = KInterval::point(rng.q_in(-6, 6, 3));
        assert_eq!(a.add(&r).unwrap().sub(&r).unwrap(), a);
    }

    // proper products match classical interval multiplication
    for _ in 0..1000 {
        let mk = |rng: &mut Rng| {
            let a = rng.q_in(-6, 6, 3);
            let b = rng.q_in(-6, 6, 3);
            KInterval::from_q(a.clone().min(b.clone()), a.max(b))
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let got = a.mul(&b);
        let (ad, au) = (a.d.finite().unwrap(), a.u.finite().unwrap());
        let (bd, bu) = (b.d.finite().unwrap(), b.u.finite().unwrap());
        let products = [ad * bd, ad * bu, au * bd, au * bu];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        assert_eq!(got, KInterval::from_q(lo, hi));
    }

    // reciprocal: exact on positive reals, contains one on wide intervals
    for _ in 0..100 {
        let d = rng.q_in(1, 6, 3) + qr(1, 64);
        let r = KInterval::point(d.clone());
        let prod = r.mul(&r.recip().unwrap());
        assert_eq!(prod, KInterval::point(Q::one()));
        let wide = KInterval::from_q(d.clone(), &d + qi(2));
        let p2 = wide.mul(&wide.recip().unwrap());
        assert!(p2.d <= ExtQ::one() && ExtQ::one() <= p2.u);
    }

    // sampled approximable-mapping conditions for multiplication
    let rep = approx_map_check(|a, b| a.mul(b), 300, &mut rng);
    assert!(rep.passed(), "{:?}", rep);

    finish("05 kaucher arithmetic", started, 10);
}

fn criterion_06_calculus() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC6);
    let clock = clock10();

    // derivative bounds equal central finite differences off breakpoints
    let h = qr(1, 1024);
    let mut points_checked = 0;
    while points_checked < 1000 {
        let g = sample::variable_real(&mut rng, &clock, 8, -4, 4);
        let db = derivative_bounds_real(&g);
        for _ in 0..10 {
            let x = rng.q_in(1, 9, 5);
            if db.lo_prime.grid().contains(&x) {
                continue;
            }
            let fd = (g.g.eval_q(&(&x + &h)).unwrap() - g.g.eval_q(&(&x - &h)).unwrap())
                / (qi(2) * &h);
            assert_eq!(db.lo_prime.value_at(&x).unwrap(), ExtQ::Fin(fd.clone()));
            assert_eq!(db.hi_prime.value_at(&x).unwrap(), ExtQ::Fin(fd));
            points_checked += 1;
        }
    }

    // mean value inequality on random sections and subintervals
    for _ in 0..200 {
        let s = sample::interval_section(&mut rng, &clock, 6);
        let a = rng.q_in(0, 4, 3);
        let b = &a + rng.q_in(1, 5, 3) + qr(1, 64);
        assert!(
            mean_value_check(&s, &a, &b).unwrap(),
            "mean value failed on [{}, {}]",
            a,
            b
        );
    }

    // the derivative bounds of a trajectory approximate its own derivative
    for _ in 0..50 {
        let g = sample::variable_real(&mut rng, &clock, 6, -4, 4);
        let db = derivative_bounds_real(&g);
        let wrapped = bounds_as_section(&db, &clock).unwrap();
        assert!(ad_check(&wrapped, &g).unwrap(), "AD self-consistency failed");
    }

    // Leibniz residual for x = y = t on window 10
    let t = VariableReal::time(clock.clone());
    let mut prev: Option<Q> = None;
    for refinement in [2u32, 4, 8, 16, 32, 64] {
        let r = leibniz_residual(&t, &t, refinement).unwrap();
        assert!(
            r <= qr(10, refinement as i64),
            "residual {} exceeds mesh bound at {}",
            r,
            refinement
        );
        if let Some(p) = prev {
            assert!(r <= p, "residual must not grow with refinement");
        }
        prev = Some(r);
    }

    // the derivative of time is exactly one
    let db = derivative_bounds_real(&t);
    for x in [qi(1), qi(5), qr(19, 2)] {
        assert_eq!(db.lo_prime.value_at(&x).unwrap(), ExtQ::Fin(Q::one()));
        assert_eq!(db.hi_prime.value_at(&x).unwrap(), ExtQ::Fin(Q::one()));
    }
    finish("06 calculus", started, 20);
}

fn criterion_07_delay() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC7);
    let clock = clock10();
    let graph = Graph::command_graph();

    // trajectories: 50 honest shifts and 50 perturbed ones
    for k in 0..50 {
        let d = qr(rng.int_in(1, 8), 4);
        let f = sample::variable_real(&mut rng, &clock, 6, -3, 3);
        // delayed copy: g(x) = f(x - d), front extended at f(0)
        let shifted = shift_trace(&f, &d);
        let honest = k % 2 == 0;
        let delayed = if honest {
            shifted
        } else {
            bump_tail(&shifted, &qi(20))
        };
        let oracle = delay_check_reals(&f, &delayed, &d).unwrap();
        let open_level = delay_check_reals_open(&f, &delayed, &d, &clock).unwrap();
        assert_eq!(oracle, honest, "pointwise oracle wrong on sample {}", k);
        assert_eq!(open_level, oracle, "open-level disagrees on sample {}", k);
    }

    // walks: 50 honest shifts and 50 perturbed ones
    for k in 0..50 {
        let d = qr(rng.int_in(1, 8), 4);
        let t_walk = sample::walk(&mut rng, &graph, &clock.window(), 3);
        let honest = k % 2 == 0;
        let p_walk = if honest {
            shift_walk(&t_walk, &d, &clock)
        } else {
            tamper_walk(&shift_walk(&t_walk, &d, &clock), &mut rng)
        };
        let oracle = delay_check_walks(&t_walk, &p_walk, &d, &clock).unwrap();
        let open_level = delay_check_walks_open(&t_walk, &p_walk, &d, &clock).unwrap();
        assert_eq!(open_level, oracle, "open-level disagrees on walk {}", k);
        if honest {
            assert!(oracle, "honest shift must check out on walk {}", k);
        }
    }
    finish("07 delay", started, 10);
}

/// The delayed copy of a trajectory: `g(x) = f(x - d)` with the pre-window
/// stretch frozen at `f(0)`.
fn shift_trace(f: &VariableReal, d: &Q) -> VariableReal {
    let l = f.clock.window().len().clone();
    let mut pts = vec![(Q::zero(), f.g.eval_q(&Q::zero()).unwrap())];
    if *d < l {
        for (x, y) in f.g.breakpoints() {
            let nx = x + d;
            if nx > Q::zero() && nx < l {
                pts.push((nx, y.clone()));
            }
        }
        pts.push((l.clone(), f.g.eval_q(&(&l - d)).unwrap()));
    } else {
        pts.push((l.clone(), f.g.eval_q(&Q::zero()).unwrap()));
    }
    VariableReal::new(f.clock.clone(), Plf::new(pts).unwrap()).unwrap()
}

/// Adds a large constant to the right half of the trajectory.
fn bump_tail(f: &VariableReal, amount: &Q) -> VariableReal {
    let l = f.clock.window().len().clone();
    let half = &l / qi(2);
    let mut pts: Vec<(Q, Q)> = Vec::new();
    for (x, y) in f.g.breakpoints() {
        if x < &half {
            pts.push((x.clone(), y.clone()));
        }
    }
    let at_half = f.g.eval_q(&half).unwrap();
    pts.push((half.clone(), at_half.clone()));
    // jump is modeled as a steep rise over 1/64 to stay piecewise linear
    let eps = qr(1, 64);
    pts.push((&half + &eps, &at_half + amount));
    for (x, y) in f.g.breakpoints() {
        if x > &(&half + &eps) {
            pts.push((x.clone(), y + amount));
        }
    }
    let last = f.g.breakpoints().last().unwrap();
    if pts.last().unwrap().0 < last.0 {
        pts.push((last.0.clone(), &last.1 + amount));
    }
    VariableReal::new(f.clock.clone(), Plf::new(pts).unwrap()).unwrap()
}

/// The delayed copy of a walk: transitions shifted by `d`, the head frozen
/// at the original initial vertex.
fn shift_walk(w: &Walk, d: &Q, clock: &Clock) -> Walk {
    let l = clock.window().len().clone();
    let mut vertices = vec![w.vertices()[0].clone()];
    let mut edges = Vec::new();
    let mut times = Vec::new();
    for (i, t) in w.times().iter().enumerate() {
        let nt = t + d;
        if nt < l {
            vertices.push(w.vertices()[i + 1].clone());
            edges.push(w.edges()[i].clone());
            times.push(nt);
        }
    }
    Walk::new(clock.window(), vertices, edges, times).unwrap()
}

/// Moves the last transition or flips the final vertex, producing a walk
/// that is not the honest delay.
fn tamper_walk(w: &Walk, rng: &mut Rng) -> Walk {
    let l = w.window().len().clone();
    if w.times().is_empty() {
        // introduce a spurious transition in the middle
        let graph = Graph::command_graph();
        let from = w.vertices()[0].clone();
        let out = graph.edges_from(&from);
        let e = out[0].clone();
        let tgt = graph.edge_target(&e).unwrap().to_string();
        return Walk::new(
            w.window().clone(),
            vec![from, tgt],
            vec![e],
            vec![&l / qi(2)],
        )
        .unwrap();
    }
    // nudge the last transition by a quarter of the remaining room
    let mut times = w.times().to_vec();
    let last = times.last().unwrap().clone();
    let room = &l - &last;
    let nudged = &last + &room / qi(4).max(qi(4 + (rng.int_in(0, 1))));
    *times.last_mut().unwrap() = nudged;
    Walk::new(
        w.window().clone(),
        w.vertices().to_vec(),
        w.edges().to_vec(),
        times,
    )
    .unwrap()
}

fn criterion_08_walks() {
    let started = Instant::now();
    let mut rng = Rng::new(0xC8);
    let graph = Graph::command_graph();
    let w = window10();

    for k in 0..200 {
        let whole = sample::walk(&mut rng, &graph, &w, 4);
        // split into overlapping halves and glue back
        let cut_lo = qi(3);
        let cut_hi = qi(7);
        let left = whole.restrict(&Q::zero(), &(w.len() - &cut_hi)).unwrap();
        let right = whole.restrict(&cut_lo, &Q::zero()).unwrap();
        let glued = left.glue(&right, &cut_lo).unwrap();
        assert_eq!(glued, whole, "glue round trip failed on sample {}", k);
        // restricting the glue returns the originals
        assert_eq!(
            glued.restrict(&Q::zero(), &(w.len() - &cut_hi)).unwrap(),
            left
        );
        assert_eq!(glued.restrict(&cut_lo, &Q::zero()).unwrap(), right);
        // uniqueness: any walk whose restrictions match equals the glue
        let tampered = tamper_walk(&whole, &mut rng);
        if tampered.restrict(&Q::zero(), &(w.len() - &cut_hi)).unwrap() == left
            && tampered.restrict(&cut_lo, &Q::zero()).unwrap() == right
        {
            assert_eq!(tampered, glued, "gluing not unique on sample {}", k);
        }
    }

    // timed-walk bounds
    let wk = Walk::new(
        w.clone(),
        vec!["level".into(), "climb".into(), "level".into()],
        vec!["climb!".into(), "level!".into()],
        vec![qi(3), qr(13, 2)],
    )
    .unwrap();
    assert!(timed_walk_check(&wk, &qi(3), &qi(4)));
    assert!(!timed_walk_check(&wk, &qr(7, 2), &qi(4)));
    assert!(!timed_walk_check(&wk, &qi(3), &qr(7, 2)));

    // LTS port projections are graph homomorphism images
    for _ in 0..100 {
        let wk = sample::walk(&mut rng, &graph, &w, 4);
        let (input, output) = lts_ports(&graph, &wk).unwrap();
        assert_eq!(input.times(), wk.times(), "input time preservation");
        assert_eq!(input.edges(), wk.edges(), "input label preservation");
        assert!(input.vertices().iter().all(|v| v == "*"));
        assert_eq!(output.times(), wk.times(), "output time preservation");
        assert_eq!(output.vertices(), wk.vertices());
        for (i, e) in output.edges().iter().enumerate() {
            assert_eq!(
                e,
                &format!("({},{})", wk.vertices()[i], wk.vertices()[i + 1])
            );
        }
        input
            .validate(&ttsem::walk::input_port_graph(&graph))
            .unwrap();
        output
            .validate(&ttsem::walk::output_port_graph(&graph))
            .unwrap();
    }
    finish("08 walks", started, 10);
}

fn criterion_09_nas_end_to_end() {
    let started = Instant::now();
    let clock = Clock::new(qi(-1), qi(11)).unwrap();
    let params = NasParams::reference();

    // the reference run: M = 7 exactly, everything forced
    assert_eq!(params.safety_horizon(), qi(7));
    let s = simulate_closed_loop(&params, &clock, &Q::zero()).unwrap();
    let v = check_system(&s, &nas_contracts(), safety_goal).unwrap();
    assert!(v.contracts_forced, "{:?}", v);
    assert!(v.goal_forced, "{:?}", v);
    assert!(v.implication_forced, "{:?}", v);
    for (name, ok) in &v.per_contract {
        assert!(ok, "{} not forced on the reference scenario", name);
    }

    // 100 random compliant draws never violate safety
    let mut rng = Rng::new(0xC9);
    for k in 0..100 {
        let params = NasParams::new(
            rng.q_in(10, 200, 0) + qr(1, 2),
            rng.q_in(1, 30, 0) + qr(1, 4),
            rng.q_in(1, 4, 1) + qr(1, 8),
            rng.q_in(5, 50, 0) + qr(1, 2),
        )
        .unwrap();
        let span = rng.q_in(14, 30, 0);
        let d_t = -rng.q_in(0, 3, 1) - qr(1, 2);
        let clock = Clock::new(d_t.clone(), &d_t + &span).unwrap();
        let a0 = rng.q_in(0, 40, 1);
        let s = simulate_closed_loop(&params, &clock, &a0).unwrap();
        let v = check_system(&s, &nas_contracts(), safety_goal).unwrap();
        assert!(
            v.contracts_forced,
            "draw {} produced a non-compliant witness: {:?}",
            k, v
        );
        assert!(v.goal_forced, "draw {} violated safety: {:?}", k, v);
        assert!(
            ttsem::contract::altitude_nondecreasing(&s).unwrap(),
            "draw {} altitude decreased",
            k
        );
    }

    // single-parameter perturbations flag exactly the matching contract
    let expect_fail = |field: &str, value: Q, expected: &str| {
        let mut s2 = s.clone();
        match field {
            "del" => s2.params.del = value,
            "rate" => s2.params.rate = value,
            "margin" => s2.params.margin = value,
            _ => unreachable!(),
        }
        let v = check_system(&s2, &nas_contracts(), safety_goal).unwrap();
        let fails: Vec<&str> = v
            .per_contract
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect();
        assert_eq!(fails, vec![expected], "perturbing {}", field);
    };
    expect_fail("del", qi(3), "theta4");
    expect_fail("rate", qi(25), "theta3");
    expect_fail("margin", qi(12), "theta2");

    finish("09 nas end-to-end", started, 30);
}

fn criterion_10_mtl() {
    let started = Instant::now();
    let mut rng = Rng::new(0xCA);
    let len = qi(10);

    // until and since against the atom-quantified brute force at dense
    // sample points
    for k in 0..200 {
        let p = sample::bool_signal(&mut rng, &len, 4);
        let q = sample::bool_signal(&mut rng, &len, 4);
        let u = mtl::until(&p, &q).unwrap();
        let s = mtl::since(&p, &q).unwrap();
        let mut crit: Vec<Q> = vec![Q::zero(), len.clone()];
        for c in p.components().iter().chain(q.components()) {
            crit.push(c.lo.clone());
            crit.push(c.hi.clone());
        }
        crit.sort();
        crit.dedup();
        let mut t0 = Q::zero();
        let step = qr(10, 256);
        while t0 <= len {
            assert_eq!(
                u.value(&t0),
                brute_until(&p, &q, &t0, &crit),
                "until mismatch at {} on sample {}",
                t0,
                k
            );
            assert_eq!(
                s.value(&t0),
                brute_since(&p, &q, &t0, &crit),
                "since mismatch at {} on sample {}",
                t0,
                k
            );
            t0 += &step;
        }
        // dualities
        assert_eq!(mtl::eventually(&p), mtl::always(&p.not()).not());
        assert_eq!(
            mtl::until(&p, &q).unwrap(),
            mtl::release(&p.not(), &q.not()).unwrap().not()
        );
    }

    // the metric example: p = top, q on [4, 6], I = (1, 3) gives (1, 5)
    let p = BoolSignal::top(len.clone());
    let q = BoolSignal::from_flagged(len.clone(), vec![(qi(4), true, qi(6), true)]).unwrap();
    let m = mtl::metric_until(&p, &q, &qi(1), &qi(3)).unwrap();
    assert_eq!(
        m,
        BoolSignal::from_flagged(len.clone(), vec![(qi(1), false, qi(5), false)]).unwrap()
    );
    finish("10 mtl", started, 10);
}

/// Brute-force until: quantifies the witness over atoms of the critical
/// decomposition.
fn brute_until(p: &BoolSignal, q: &BoolSignal, t0: &Q, crit: &[Q]) -> bool {
    let mut cands: Vec<Q> = vec![t0.clone()];
    for c in crit {
        if c >= t0 {
            cands.push(c.clone());
        }
    }
    let mut sorted = cands.clone();
    sorted.sort();
    sorted.dedup();
    for w in sorted.windows(2) {
        cands.push((&w[0] + &w[1]) / qi(2));
    }
    'witness: for t in &cands {
        if t < t0 || !q.value(t) {
            continue;
        }
        // p must hold on the whole closed [t0, t]: check all atoms inside
        let mut inner: Vec<Q> = vec![t0.clone(), t.clone()];
        for c in crit {
            if c > t0 && c < t {
                inner.push(c.clone());
            }
        }
        inner.sort();
        inner.dedup();
        let mids: Vec<Q> = inner.windows(2).map(|w| (&w[0] + &w[1]) / qi(2)).collect();
        for x in inner.iter().chain(mids.iter()) {
            if !p.value(x) {
                continue 'witness;
            }
        }
        return true;
    }
    false
}

fn brute_since(p: &BoolSignal, q: &BoolSignal, t0: &Q, crit: &[Q]) -> bool {
    let mut cands: Vec<Q> = vec![t0.clone()];
    for c in crit {
        if c <= t0 {
            cands.push(c.clone());
        }
    }
    let mut sorted = cands.clone();
    sorted.sort();
    sorted.dedup();
    for w in sorted.windows(2) {
        cands.push((&w[0] + &w[1]) / qi(2));
    }
    'witness: for t in &cands {
        if t > t0 || !q.value(t) {
            continue;
        }
        let mut inner: Vec<Q> = vec![t.clone(), t0.clone()];
        for c in crit {
            if c > t && c < t0 {
                inner.push(c.clone());
            }
        }
        inner.sort();
        inner.dedup();
        let mids: Vec<Q> = inner.windows(2).map(|w| (&w[0] + &w[1]) / qi(2)).collect();
        for x in inner.iter().chain(mids.iter()) {
            if !p.value(x) {
                continue 'witness;
            }
        }
        return true;
    }
    false
}

#[test]
fn criterion_suite_summary() {
    // the ten criteria run as their own tests; this summary pins the tent
    // reference values every criterion leans on
    let w = window10();
    let t = tent(&w);
    assert_eq!(t.eval_q(&qi(5)).unwrap(), qi(5));
    assert!(DyckPath::top(w.clone()).forced());
    assert!(!DyckPath::bottom(w).forced());
}
