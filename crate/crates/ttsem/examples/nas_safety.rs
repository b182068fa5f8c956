//! The airspace safety case study end to end: a closed-loop witness, the
//! four component contracts, and the safety conclusion.

use ttsem::contract::{
    check_system, nas_contracts, safety_goal, simulate_closed_loop, verdict_lines, NasParams,
};
use ttsem::interval::Clock;
use ttsem::rat::qi;

fn main() {
    // safe altitude 100, margin 10, pilot delay 2, climb rate 20,
    // observed over the clock window (-1, 11) starting at altitude 0
    let params = NasParams::reference();
    let clock = Clock::new(qi(-1), qi(11)).unwrap();
    let scenario = simulate_closed_loop(&params, &clock, &qi(0)).unwrap();

    println!("safety horizon M = del + safe/rate = {}", params.safety_horizon());
    println!(
        "controller switches to level at clock {}",
        &clock.d_t + &scenario.controller.times()[0]
    );
    println!(
        "pilot follows at clock {}",
        &clock.d_t + &scenario.pilot.times()[0]
    );
    println!(
        "altitude at the horizon: {}",
        scenario.altitude.at_value(&params.safety_horizon()).unwrap()
    );
    println!();

    let verdict = check_system(&scenario, &nas_contracts(), safety_goal).unwrap();
    for line in verdict_lines(&verdict) {
        println!("{}", line);
    }

    // a pilot that is slower than the contract claims breaks theta4 and
    // nothing else; the implication from contracts to safety stays valid
    println!("\nwith the contract delay misstated as 3:");
    let mut misdeclared = scenario.clone();
    misdeclared.params.del = qi(3);
    let v2 = check_system(&misdeclared, &nas_contracts(), safety_goal).unwrap();
    for line in verdict_lines(&v2) {
        println!("{}", line);
    }
}
