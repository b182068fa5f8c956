//! The four temporal modalities at work: See widens by escape, At decides
//! at a point, In assumes containment, and pi erases height.

use ttsem::interval::Clock;
use ttsem::modality::{apart, at, atom_lt, pi, see, within};
use ttsem::omega::DyckPath;
use ttsem::rat::{qi, qr};

fn main() {
    let clock = Clock::new(qi(0), qi(10)).unwrap();
    let w = clock.window();
    let p = atom_lt(&clock, &qi(7));

    println!("P = (t < 7) on the clock (0, 10)\n");

    // See[3,7]P: true if P holds or the window escapes [3, 7]
    let s = see(&clock, &qi(3), &qi(7), &p).unwrap();
    println!("See[3,7] P forces [1, 2]:  {}", s.forces(&qi(1), &qi(2)).unwrap());
    println!("See[3,7] P forces [2, 9]:  {}", s.forces(&qi(2), &qi(9)).unwrap());

    // At{5}P decides P at the zero-length point 5
    let a = at(&clock, &qi(5), &qi(5), &p).unwrap();
    println!("At{{5}} P is top:           {}", a.forced());
    let a9 = at(&clock, &qi(9), &qi(9), &p).unwrap();
    println!("At{{9}} P equals t # 9:     {}", a9 == apart(&clock, &qi(9), &qi(9)));

    // In[2,8]P assumes the window is strictly inside (2, 8)
    let i = within(&clock, &qi(2), &qi(8), &p).unwrap();
    println!("In[2,8] P forces [0, 10]:  {}", i.forces(&qi(0), &qi(10)).unwrap());
    println!("   ... vs P on [2, 8]:     {}", p.forces(&qi(2), &qi(8)).unwrap());

    // pi erases height but keeps the support
    let capped = p
        .and(&DyckPath::new(
            w.clone(),
            ttsem::plf::Plf::constant(qi(0), qi(10), qr(1, 2))
                .unwrap()
                .pw_min(&ttsem::interval::tent(&w))
                .unwrap(),
        )
        .unwrap())
        .unwrap();
    let restored = pi(&capped).unwrap();
    println!("pi restores the capped atom: {}", restored == p);

    // composition laws
    let ss = see(&clock, &qi(1), &qi(6), &see(&clock, &qi(4), &qi(9), &p).unwrap()).unwrap();
    println!(
        "See[1,6] See[4,9] = See[1,9]: {}",
        ss == see(&clock, &qi(1), &qi(9), &p).unwrap()
    );
    let ii = within(&clock, &qi(1), &qi(6), &within(&clock, &qi(4), &qi(9), &p).unwrap()).unwrap();
    println!(
        "In[1,6] In[4,9] = In[4,6]:    {}",
        ii == within(&clock, &qi(4), &qi(6), &p).unwrap()
    );
}
