//! Normalize, complement and intersect interval sets.

use rvlogic::intervals::{parse_interval_set, IntervalSet};
use rvlogic::rational::rat;

fn show(label: &str, s: &IntervalSet) {
    println!("{label:<28} {s}");
}

fn main() {
    let a = parse_interval_set("[0.2,0.6], [0.4,0.8], (0.9,1]").expect("valid set");
    let b = parse_interval_set("[0,0.5), [0.5,0.7]").expect("valid set");
    show("a (normalized)", &a);
    show("b (normalized)", &b);
    show("complement of a", &a.complement());
    show("a intersect b", &a.intersect(&b));
    show("a union b", &a.union(&b));
    show("complement twice", &a.complement().complement());
    for v in [rat(1, 5), rat(17, 20), rat(9, 10)] {
        println!("contains {v}: a={} complement={}", a.contains(&v), a.complement().contains(&v));
    }
}
