//! Run every worked example and print the claims that were checked.

use lmhodge::corpus::corpus_run_all;

fn main() {
    for report in corpus_run_all() {
        println!("{} {}", report.name, if report.pass { "pass" } else { "FAIL" });
        for c in &report.claims {
            let mark = if c.pass { "ok " } else { "BAD" };
            match &c.detail {
                Some(d) if !c.pass => println!("  {mark} {}  {d}", c.claim),
                _ => println!("  {mark} {}", c.claim),
            }
        }
    }
}
