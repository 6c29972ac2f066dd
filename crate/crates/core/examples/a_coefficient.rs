//! Times one a^(k)_(i,j) job: `cargo run --release --example a_coefficient -- 11 2 1`.

use std::time::Instant;

use nullsum_core::nullstellensatz::{families::f_big_factors, target_coefficient, TargetSpec};
use nullsum_core::polycore::TermLimit;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("k i j")).collect();
    let [k, i, j] = args[..] else {
        eprintln!("usage: a_coefficient K I J");
        std::process::exit(2);
    };
    let t = TargetSpec::a(k, i, j).unwrap();
    let f = f_big_factors(k).unwrap();
    let start = Instant::now();
    let r = target_coefficient(&f, &t.monomial(), TermLimit::UNLIMITED).unwrap();
    println!("{t} = {}  (peak {} terms, {} steps, {:?})", r.value, r.peak_terms, r.steps, start.elapsed());
}
