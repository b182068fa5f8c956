//! The Heyting algebra of temporal propositions: meet, join, implication,
//! negation, and the adjunction that pins implication down.

use ttsem::interval::{Clock, Window};
use ttsem::modality::{atom_gt, atom_lt};
use ttsem::omega::DyckPath;
use ttsem::rat::qi;
use ttsem::sample::{self, Rng};

fn main() {
    let clock = Clock::new(qi(0), qi(10)).unwrap();
    let w = clock.window();

    let before7 = atom_lt(&clock, &qi(7));
    let after3 = atom_gt(&clock, &qi(3));
    let both = before7.and(&after3).unwrap();
    println!("t < 7 and 3 < t has peak value {}", peak(&both));

    // implication is the largest proposition whose meet with the premise
    // entails the conclusion
    let imp = after3.implies(&before7).unwrap();
    println!("(3 < t) => (t < 7) forced: {}", imp.forced());
    println!(
        "((3 < t) => (t < 7)) and (3 < t)  <=  (t < 7): {}",
        imp.and(&after3).unwrap().leq(&before7).unwrap()
    );

    // negation carves out the interior of the complement
    let not_both = both.complement().unwrap();
    println!(
        "not (3 < t < 7) forces [0, 3]: {}",
        not_both.forces(&qi(0), &qi(3)).unwrap()
    );
    println!(
        "not (3 < t < 7) forces [2, 5]: {}",
        not_both.forces(&qi(2), &qi(5)).unwrap()
    );

    // the adjunction, spot-checked on random propositions
    let mut rng = Rng::new(42);
    let mut checked = 0;
    for _ in 0..50 {
        let p = sample::dyck_path(&mut rng, &w, 6);
        let q = sample::dyck_path(&mut rng, &w, 6);
        let r = sample::dyck_path(&mut rng, &w, 6);
        let lhs = r.leq(&p.implies(&q).unwrap()).unwrap();
        let rhs = r.and(&p).unwrap().leq(&q).unwrap();
        assert_eq!(lhs, rhs);
        checked += 1;
    }
    println!("adjunction verified on {} random triples", checked);

    let _ = Window::new(qi(1)).unwrap();
    let _ = DyckPath::bottom(w);
}

fn peak(d: &DyckPath) -> String {
    d.path()
        .breakpoints()
        .iter()
        .map(|(_, y)| y.clone())
        .max()
        .unwrap()
        .to_string()
}
