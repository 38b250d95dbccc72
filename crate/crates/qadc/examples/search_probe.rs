use qadc::search::*;
use std::time::Instant;

fn main() {
    // (3,5) 3-part exhaustive: expect optimum 33 words (11 atoms)
    let t0 = Instant::now();
    let cert = max_code_search(3, 5, 3, SearchMode::Exhaustive, SearchLimits::default(), 1).unwrap();
    println!(
        "(3,5,3 parts): outcome={:?} words={} optimum={:?} nodes={} in {:?}",
        cert.outcome, cert.words_per_part, cert.optimum_words_per_part, cert.nodes, t0.elapsed()
    );
    for r in &cert.reductions { println!("  {r}"); }

    // (3,5) partition 3 x 81
    let t0 = Instant::now();
    let cert = partition_search(3, 5, 3, 81, SearchLimits::default()).unwrap();
    println!("(3,5) partition 3x81: outcome={:?} nodes={} in {:?}", cert.outcome, cert.nodes, t0.elapsed());
    for r in &cert.reductions { println!("  {r}"); }

    // (5,3) partition 5 x 25 (negative expected)
    let t0 = Instant::now();
    let cert = partition_search(5, 3, 5, 25, SearchLimits::default()).unwrap();
    println!("(5,3) partition 5x25: outcome={:?} nodes={} in {:?}", cert.outcome, cert.nodes, t0.elapsed());

    // (3,3) partition 3 x 9 (negative expected)
    let t0 = Instant::now();
    let cert = partition_search(3, 3, 3, 9, SearchLimits::default()).unwrap();
    println!("(3,3) partition 3x9: outcome={:?} nodes={} in {:?}", cert.outcome, cert.nodes, t0.elapsed());

    // (5,5) partition 5 x 625 (negative expected via clique precheck)
    let t0 = Instant::now();
    let cert = partition_search(5, 5, 5, 625, SearchLimits::default()).unwrap();
    println!("(5,5) partition 5x625: outcome={:?} nodes={} in {:?}", cert.outcome, cert.nodes, t0.elapsed());
    for r in &cert.reductions { println!("  {r}"); }

    // (5,3) max 5 parts exhaustive: expect 20
    let t0 = Instant::now();
    let cert = max_code_search(5, 3, 5, SearchMode::Exhaustive, SearchLimits::default(), 1).unwrap();
    println!("(5,3,5 parts): outcome={:?} words={} optimum={:?} nodes={} in {:?}",
        cert.outcome, cert.words_per_part, cert.optimum_words_per_part, cert.nodes, t0.elapsed());

    // (5,5) greedy 1 part: expect >= 295
    let t0 = Instant::now();
    let cert = max_code_search(5, 5, 1, SearchMode::Greedy, SearchLimits::default(), 1).unwrap();
    println!("(5,5,1 greedy): words={} in {:?}", cert.words_per_part, t0.elapsed());
    for r in &cert.reductions { println!("  {r}"); }
}
