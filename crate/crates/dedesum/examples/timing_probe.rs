use dedesum::campaign::{admissible_pairs, run_suite, Config, Suite};
use std::time::Instant;

fn main() {
    let pairs = admissible_pairs(36);
    println!("admissible pairs at N <= 36: {}", pairs.len());
    let config = Config::default();
    for suite in [Suite::Oracle, Suite::Cocycle, Suite::Reciprocity, Suite::Fricke,
                  Suite::BottomRow, Suite::Automorphy, Suite::LValue, Suite::CharSum,
                  Suite::Hecke, Suite::Eichler] {
        let t = Instant::now();
        let report = run_suite(suite, &config);
        println!(
            "{:12} cases {:8} failures {:3} elapsed {:?}",
            report.suite, report.cases, report.failures.len(), t.elapsed()
        );
    }
}
