//! Temporal propositions as Dyck paths: membership, forcing, and the
//! opens-to-Lipschitz round trip.

use ttsem::interval::Window;
use ttsem::omega::{from_forced_windows, DyckPath};
use ttsem::plf::Plf;
use ttsem::rat::{qi, qr};

fn main() {
    let w = Window::new(qi(10)).unwrap();

    // A proposition over a 10-second window: true on windows that sit
    // strictly inside (2, 8).
    let p = DyckPath::new(
        w.clone(),
        Plf::new(vec![(qi(0), qi(0)), (qi(2), qi(0)), (qi(5), qi(3)), (qi(8), qi(0)), (qi(10), qi(0))])
            .unwrap(),
    )
    .unwrap();

    println!("path breakpoints: {:?}", shape(&p));
    println!("top is the tent:  {:?}", shape(&DyckPath::top(w.clone())));

    // Membership of interval points (midpoint, radius):
    for (m, r) in [(qi(5), qi(2)), (qi(5), qi(3)), (qi(3), qr(1, 2))] {
        println!(
            "point (m = {}, r = {}) in the open: {}",
            m,
            r,
            p.contains(&m, &r).unwrap()
        );
    }

    // Forcing by subwindows: the subwindow's tent must fit under the path.
    for (a, b) in [(qi(3), qi(7)), (qi(2), qi(8)), (qi(1), qi(9))] {
        println!("[{}, {}] forces: {}", a, b, p.forces(&a, &b).unwrap());
    }

    // The path is recovered exactly from its forced windows.
    let segs: Vec<ttsem::omega::Segment> = p
        .path()
        .breakpoints()
        .windows(2)
        .map(|s| (s[0].clone(), s[1].clone()))
        .collect();
    let rebuilt = from_forced_windows(&w, &segs, |a, b| p.forces(a, b).unwrap()).unwrap();
    println!("reconstruction from forced windows is exact: {}", rebuilt == p);
}

fn shape(d: &DyckPath) -> Vec<(String, String)> {
    d.path()
        .breakpoints()
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect()
}
