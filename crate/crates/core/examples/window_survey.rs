//! Column sizes, column homology and the tracked-class verdict of the
//! windowed pair for `m = 2`.
//!
//! Usage: `cargo run --release --example window_survey -- [truncation] [window]`
//! (defaults 4 and 3).

use std::time::Instant;

use simptot::freesimp::{build_example_bicomplexes, WindowParams};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let top = args.first().copied().unwrap_or(4);
    let window = args.get(1).copied().unwrap_or(3);
    let t = Instant::now();
    let pair = build_example_bicomplexes(WindowParams::new(2, top, window)).expect("window pair");
    println!("built in {:?}", t.elapsed());
    for n in 0..=top {
        let f = pair.map.f(n);
        let bc: Vec<usize> = (0..3).map(|k| f.source().betti(k)).collect();
        let bd: Vec<usize> = (0..3).map(|k| f.target().betti(k)).collect();
        println!(
            "column {n}: source dims {:?} betti {bc:?}, target dims {:?} betti {bd:?}",
            f.source().dims(),
            f.target().dims(),
        );
    }
    println!("strict faces: {}", pair.check_face_witnesses().expect("witnesses hold"));
    let (c, d) = pair.tracked_fates(3).expect("tracked class");
    println!("source class: {c:?}");
    println!("target class: {d:?}");
}
