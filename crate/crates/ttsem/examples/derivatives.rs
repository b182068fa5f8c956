//! Interval-valued derivatives: lower/upper bounds, the mean-value
//! inequality, and the Leibniz residual under refinement.

use ttsem::calculus::{
    derivative_bounds, derivative_bounds_real, leibniz_residual, mean_value_check,
};
use ttsem::interval::Clock;
use ttsem::numeric::{IntervalSection, VariableReal};
use ttsem::plf::Plf;
use ttsem::rat::{qi, qr};

fn main() {
    let clock = Clock::new(qi(0), qi(10)).unwrap();

    // a kinked trajectory: slope 1 then slope 0
    let g = VariableReal::new(
        clock.clone(),
        Plf::new(vec![(qi(0), qi(0)), (qi(5), qi(5)), (qi(10), qi(5))]).unwrap(),
    )
    .unwrap();
    let db = derivative_bounds_real(&g);
    for x in [qi(2), qi(5), qi(8)] {
        println!(
            "derivative of g at {}: [{}, {}]",
            x,
            db.lo_prime.value_at(&x).unwrap(),
            db.hi_prime.value_at(&x).unwrap()
        );
    }

    // a section with positive width has unbounded derivative
    let wide = IntervalSection::new(
        clock.clone(),
        Plf::line(qi(0), qi(10), qi(0), qi(1)).unwrap(),
        Plf::line(qi(0), qi(10), qi(1), qi(1)).unwrap(),
    )
    .unwrap();
    let dbw = derivative_bounds(&wide).unwrap();
    println!(
        "derivative of the width-1 band at 4: [{}, {}]",
        dbw.lo_prime.value_at(&qi(4)).unwrap(),
        dbw.hi_prime.value_at(&qi(4)).unwrap()
    );

    // mean value: some instant realizes at least the average slope
    println!(
        "mean-value inequality for |x - 5| on [2, 8]: {}",
        mean_value_check(
            &VariableReal::new(
                clock.clone(),
                Plf::new(vec![(qi(0), qi(5)), (qi(5), qi(0)), (qi(10), qi(5))]).unwrap()
            )
            .unwrap()
            .as_section(),
            &qi(2),
            &qi(8)
        )
        .unwrap()
    );

    // Leibniz: the product rule holds up to the interpolation mesh
    let t = VariableReal::time(clock.clone());
    println!("\nLeibniz residual for t * t on the 10-second window:");
    for refinement in [2u32, 4, 8, 16, 32] {
        let r = leibniz_residual(&t, &t, refinement).unwrap();
        println!("  refinement {:>2}: residual {} (bound {})", refinement, r, qr(10, refinement as i64));
    }
}
