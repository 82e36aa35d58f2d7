//! Find the largest concept count over every relation of a tiny shape.
//!
//! `cargo run --release --example exhaustive_search`

use std::time::Duration;

use polyadic::bounds::{exhaustive_fn, SearchOptions};
use polyadic::io::serialize_context;
use polyadic::Result;

pub fn run() -> Result<String> {
    let mut out = String::new();
    let opts = SearchOptions {
        time_budget: Some(Duration::from_secs(30)),
        ..SearchOptions::default()
    };
    for (n, s) in [(2, 2), (2, 3), (3, 2)] {
        let r = exhaustive_fn(n, s, &opts)?;
        out.push_str(&format!(
            "f_{n}({s}) = {} [{}] from {} relations\n",
            r.max_count,
            r.label(),
            r.evaluated
        ));
        for w in &r.witnesses {
            out.push_str(&serialize_context(w));
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
