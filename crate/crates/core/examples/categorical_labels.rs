//! Categorical records under the mismatch distance, with labels read from a file.

use sdc::io;
use sdc::{run_sdc, Dataset, Metric};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = [
        ["red", "round", "small"],
        ["red", "round", "large"],
        ["red", "oval", "small"],
        ["green", "long", "large"],
        ["green", "long", "small"],
        ["yellow", "long", "large"],
    ];
    let ds = Dataset::categorical(&rows.map(|r| r.to_vec()))?;

    let dir = std::env::temp_dir().join("sdc-categorical-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("labels.csv");
    std::fs::write(&path, "# index,category\n0,apple\n4,banana\n")?;
    let labels = io::load_labels(&path)?;

    let res = run_sdc(&ds, &labels, Metric::Mismatch)?;
    for (i, r) in rows.iter().enumerate() {
        println!("{:<28} {}", r.join(" "), res.category_of(i));
    }
    Ok(())
}
