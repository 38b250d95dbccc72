use qadc::channels::ChannelSpec;
use qadc::constructions::*;
use qadc::verifier::{order_slope, VerifierOptions};
use std::time::Instant;

fn main() {
    let opts = VerifierOptions::default();

    let t0 = Instant::now();
    let c627 = gc_from_registry(3, 6, GcFlavor::Linear).unwrap();
    let r = order_slope(&c627, &ChannelSpec::Bosonic { q: 3 }, 1, &opts).unwrap();
    println!("((6,27))_3 vs A: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());
    let t0 = Instant::now();
    let r = order_slope(&c627, &ChannelSpec::Cascade { q: 3, coefficients: vec![] }, 1, &opts).unwrap();
    println!("((6,27))_3 vs Xi: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());

    let t0 = Instant::now();
    let c511 = gc_from_registry(3, 5, GcFlavor::Nonlinear).unwrap();
    let r = order_slope(&c511, &ChannelSpec::Bosonic { q: 3 }, 1, &opts).unwrap();
    println!("((5,11))_3 vs A: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());
    let r = order_slope(&c511, &ChannelSpec::Cascade { q: 3, coefficients: vec![] }, 1, &opts).unwrap();
    println!("((5,11))_3 vs Xi: slope={:?} pass={}", r.fitted_slope, r.pass);

    let t0 = Instant::now();
    let c74 = gc_from_registry(4, 7, GcFlavor::Linear).unwrap();
    println!("[[7,4]]_4 built: K={} [{:?}]", c74.dimension(), t0.elapsed());
    let t0 = Instant::now();
    let r = order_slope(&c74, &ChannelSpec::Bosonic { q: 4 }, 1, &opts).unwrap();
    println!("[[7,4]]_4 vs A: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());

    let five = five_one_three_five().unwrap();
    let t0 = Instant::now();
    let par = multi_error_construct(&five, 3, 2, None).unwrap();
    let r = order_slope(&par, &ChannelSpec::Bosonic { q: 3 }, 2, &opts).unwrap();
    println!("((10,5))_3 parity vs A t=2: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());
    let t0 = Instant::now();
    let r = order_slope(&par, &ChannelSpec::Cascade { q: 3, coefficients: vec![] }, 2, &opts).unwrap();
    println!("((10,5))_3 parity vs Xi t=2: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());

    let t0 = Instant::now();
    let vcode = v_lambda_construct(&five, VLambdaPattern::L1, 2, None).unwrap();
    let r = order_slope(&vcode, &ChannelSpec::V { k1: 1.0, k2: 2.0 }, 2, &opts).unwrap();
    println!("((10,5))_3 V-code vs V t=2: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());

    let t0 = Instant::now();
    let lcode = v_lambda_construct(&five, VLambdaPattern::L2, 2, None).unwrap();
    let r = order_slope(&lcode, &ChannelSpec::Lambda { k1: 1.0, k2: 2.0 }, 2, &opts).unwrap();
    println!("((10,5))_3 L-code vs Lambda t=2: slope={:?} pass={} [{:?}]", r.fitted_slope, r.pass, t0.elapsed());

    // table II timing
    let t0 = Instant::now();
    let rows = table_ii().unwrap();
    println!("table II built in {:?}", t0.elapsed());
    for r in &rows {
        println!("  n={:>2} linear={} nonlinear={}", r.n, r.gc_linear_display, r.gc_nonlinear_display);
    }
}
