//! Hybrid behaviors as walks through a graph: restriction, gluing, port
//! projections of a labeled transition system, and delay checking.

use ttsem::interval::Clock;
use ttsem::rat::{qi, qr};
use ttsem::walk::{
    delay_check_walks, delay_check_walks_open, eq_vertex_open, lts_ports, timed_walk_check,
    Graph, Walk,
};

fn main() {
    let clock = Clock::new(qi(0), qi(10)).unwrap();
    let g = Graph::command_graph();

    // level for 4s, climb! at 4, climb for 6s
    let walk = Walk::new(
        clock.window(),
        vec!["level".into(), "climb".into()],
        vec!["climb!".into()],
        vec![qi(4)],
    )
    .unwrap();
    walk.validate(&g).unwrap();
    println!("vertex at 2: {}", walk.vertex_at(&qi(2)).unwrap());
    println!("vertex at 7: {}", walk.vertex_at(&qi(7)).unwrap());

    // restriction and gluing are the sheaf structure
    let left = walk.restrict(&qi(0), &qi(3)).unwrap();
    let right = walk.restrict(&qi(2), &qi(0)).unwrap();
    let glued = left.glue(&right, &qi(2)).unwrap();
    println!("glue(left, right) == original: {}", glued == walk);

    // the open "currently at climb" is the hump strictly inside (4, 10)
    let at_climb = eq_vertex_open(&walk, "climb", &clock).unwrap();
    println!(
        "at-climb forces [5, 9]: {}",
        at_climb.forces(&qi(5), &qi(9)).unwrap()
    );
    println!(
        "at-climb forces [3, 9]: {}",
        at_climb.forces(&qi(3), &qi(9)).unwrap()
    );

    // timed walks bound the inter-transition durations
    println!(
        "durations within (1, 7): {}",
        timed_walk_check(&walk, &qi(1), &qi(7))
    );

    // LTS port projections: inputs forget state, outputs walk the complete
    // graph
    let (input, output) = lts_ports(&g, &walk).unwrap();
    println!("input walk edges:  {:?}", input.edges());
    println!("output walk edges: {:?}", output.edges());

    // the pilot repeats the controller two seconds later
    let pilot = Walk::new(
        clock.window(),
        vec!["level".into(), "climb".into()],
        vec!["climb!".into()],
        vec![qi(6)],
    )
    .unwrap();
    println!(
        "pilot delayed by 2:   {}",
        delay_check_walks(&walk, &pilot, &qi(2), &clock).unwrap()
    );
    println!(
        "pilot delayed by 3/2: {}",
        delay_check_walks(&walk, &pilot, &qr(3, 2), &clock).unwrap()
    );
    println!(
        "open-level agreement: {}",
        delay_check_walks_open(&walk, &pilot, &qi(2), &clock).unwrap()
    );
}
