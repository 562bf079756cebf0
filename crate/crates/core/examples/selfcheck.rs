//! Runs the randomized oracle cross-checks with a chosen seed.

use sdc::checks;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for outcome in checks::all(seed) {
        println!("{outcome}");
    }
}
