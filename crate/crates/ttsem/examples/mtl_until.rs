//! Classical temporal logic on boolean signals: until, since, the metric
//! until, dualities, and the embedding into the open-set semantics.

use ttsem::interval::Window;
use ttsem::mtl::{always, eventually, metric_until, release, since, to_open, until, BoolSignal};
use ttsem::rat::qi;

fn sig(len: i64, comps: &[(i64, i64)]) -> BoolSignal {
    BoolSignal::from_flagged(
        qi(len),
        comps
            .iter()
            .map(|&(a, b)| (qi(a), true, qi(b), true))
            .collect(),
    )
    .unwrap()
}

fn show(label: &str, s: &BoolSignal) {
    let parts: Vec<String> = s
        .components()
        .iter()
        .map(|c| {
            format!(
                "{}{}, {}{}",
                if c.lo_closed { "[" } else { "(" },
                c.lo,
                c.hi,
                if c.hi_closed { "]" } else { ")" },
            )
        })
        .collect();
    println!("{label}: {}", if parts.is_empty() { "empty".into() } else { parts.join(" u ") });
}

fn main() {
    let p = sig(10, &[(0, 5)]);
    let q = sig(10, &[(4, 6)]);
    show("p", &p);
    show("q", &q);
    show("p U q", &until(&p, &q).unwrap());
    show("p S q", &since(&p, &q).unwrap());
    show("box p", &always(&p));
    show("diamond q", &eventually(&q));

    // dualities hold exactly
    println!(
        "\ndiamond p == not box not p: {}",
        eventually(&p) == always(&p.not()).not()
    );
    println!(
        "p U q == not (not p R not q): {}",
        until(&p, &q).unwrap() == release(&p.not(), &q.not()).unwrap().not()
    );

    // the metric until: a witness within the open parameter interval
    show(
        "top U_(1,3) q",
        &metric_until(&BoolSignal::top(qi(10)), &q, &qi(1), &qi(3)).unwrap(),
    );

    // embedding a signal as a temporal proposition
    let w = Window::new(qi(10)).unwrap();
    let open = to_open(&sig(10, &[(3, 7)]), &w).unwrap();
    println!(
        "\nto_open(true on [3,7]) peak value: {}",
        open.path().eval_q(&qi(5)).unwrap()
    );
    println!(
        "it forces [4, 6]: {}",
        open.forces(&qi(4), &qi(6)).unwrap()
    );
}
