//! Kaucher arithmetic on possibly-improper intervals: the signed-parts
//! product, the failure of distributivity, and reciprocals.

use ttsem::numeric::KInterval;
use ttsem::rat::qi;

fn ki(d: i64, u: i64) -> KInterval {
    KInterval::from_q(qi(d), qi(u))
}

fn show(label: &str, v: &KInterval) {
    println!("{label} = [{}, {}]", v.d, v.u);
}

fn main() {
    show("[1,2] * [3,4]", &ki(1, 2).mul(&ki(3, 4)));
    show("[1,2] - [0,1]", &ki(1, 2).sub(&ki(0, 1)).unwrap());
    show("1 / [2,4]", &ki(2, 4).recip().unwrap());

    println!("\nimproper intervals are first-class:");
    show("[-1,1] * [1,-1]", &ki(-1, 1).mul(&ki(1, -1)));
    show("[1,-1] * [1,-1]", &ki(1, -1).mul(&ki(1, -1)));
    show(
        "([-1,-1] meet [1,1]) * [1,-1]",
        &ki(-1, -1).meet(&ki(1, 1)).mul(&ki(1, -1)),
    );
    show(
        "([-1,-1]*[1,-1]) meet ([1,1]*[1,-1])",
        &ki(-1, -1).mul(&ki(1, -1)).meet(&ki(1, 1).mul(&ki(1, -1))),
    );
    println!("(multiplication does not commute with meets)");

    println!("\ndistributivity fails outside the reals:");
    let x = ki(0, 1);
    let y = ki(1, 1);
    let z = ki(-1, -1);
    show("x * (y + z)", &x.mul(&y.add(&z).unwrap()));
    show("x*y + x*z  ", &x.mul(&y).add(&x.mul(&z)).unwrap());

    println!("\naddition is a commutative monoid, inverse to subtraction on reals:");
    let a = ki(3, 3);
    let b = ki(5, 5);
    show("(3 + 5) - 5", &a.add(&b).unwrap().sub(&b).unwrap());
}
