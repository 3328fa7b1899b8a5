use curvesy_core::syzygy;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let samples = syzygy::sample_true_triples(6, 6, 650);
    println!("sampling 6 sextics: {:?}", t0.elapsed());
    for (i, g) in samples.iter().enumerate() {
        let t = Instant::now();
        let phi = syzygy::hb_kernel(g).unwrap();
        let t_hb = t.elapsed();
        let t = Instant::now();
        let cond = curvesy_core::conductor::conductor_gcd_with(g, &phi).unwrap();
        let t_cond = t.elapsed();
        let t = Instant::now();
        let pts = curvesy_core::singloc::analyze_singularities(g, &phi, &cond).unwrap();
        let t_fib = t.elapsed();
        println!(
            "sextic {}: hb {:?} conductor {:?} fibers {:?} ({} pts, factors {:?})",
            i,
            t_hb,
            t_cond,
            t_fib,
            pts.len(),
            cond.factors.iter().map(|(f, e)| (f.deg(), *e)).collect::<Vec<_>>()
        );
    }
}
