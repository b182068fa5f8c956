//! Numeric sections over a window: lifting to interval points and the
//! comparison opens `x < y` and `x <= y`.

use ttsem::interval::{Clock, IntervalPoint};
use ttsem::numeric::{cmp_const_open, leq_open, lt_open, Dir, IntervalSection, VariableReal};
use ttsem::plf::Plf;
use ttsem::rat::{qi, qr};

fn main() {
    let clock = Clock::new(qi(0), qi(10)).unwrap();

    // the altitude-style trajectory: climb to 6 by t = 6, then hold
    let x = VariableReal::new(
        clock.clone(),
        Plf::new(vec![(qi(0), qi(0)), (qi(6), qi(6)), (qi(10), qi(6))]).unwrap(),
    )
    .unwrap();

    // lifting to an interval point takes the reachable value band
    let s = x.as_section();
    for (a, b) in [(qi(2), qi(4)), (qi(5), qi(9))] {
        let iv = s.lift(&IntervalPoint::new(a.clone(), b.clone()).unwrap()).unwrap();
        println!("x over [{}, {}] = [{}, {}]", a, b, iv.d, iv.u);
    }

    // value at an instant
    println!("x at t = 3: {}", x.at_value(&qi(3)).unwrap());

    // the comparison open x < 5: the largest open all of whose windows see
    // x strictly below 5
    let below5 = cmp_const_open(&x, &qi(5), Dir::Lt).unwrap();
    println!(
        "(x < 5) forces [1, 4]: {}",
        below5.forces(&qi(1), &qi(4)).unwrap()
    );
    println!(
        "(x < 5) forces [1, 6]: {}",
        below5.forces(&qi(1), &qi(6)).unwrap()
    );

    // a genuinely interval-valued section: x with measurement slack 1/2
    let band = IntervalSection::new(
        clock.clone(),
        x.g.add(&Plf::constant(qi(0), qi(10), qr(-1, 2)).unwrap()).unwrap(),
        x.g.add(&Plf::constant(qi(0), qi(10), qr(1, 2)).unwrap()).unwrap(),
    )
    .unwrap();
    let conservative = lt_open(&band, &VariableReal::constant(clock.clone(), qi(5))).unwrap();
    println!(
        "(band < 5) forces [1, 4]: {}",
        conservative.forces(&qi(1), &qi(4)).unwrap()
    );

    // non-strict comparison via double negation
    let le = leq_open(&VariableReal::constant(clock.clone(), qi(0)), &x).unwrap();
    println!("(0 <= x) is forced everywhere: {}", le.forced());
}
