use fracwave::problem::problems;
use fracwave::wrmg::CycleConfig;

fn main() {
    println!("FAS V(0,1) porous media (Table 4: 11-12 its, 0.09-0.10):");
    for &delta in &[0.1, 0.4, 0.7, 1.0] {
        for &n in &[32usize, 64, 128, 256] {
            let p = problems::porous_media(delta, n - 1, n).unwrap();
            let t0 = std::time::Instant::now();
            let (_, h) = fracwave::fas::solve(&p, &CycleConfig::v_cycle(0, 1)).unwrap();
            print!(
                "  {n}^2 it={} f={:.3} {:.1}s |",
                h.iterations(),
                h.mean_factor().unwrap(),
                t0.elapsed().as_secs_f64()
            );
        }
        println!("  (delta={delta})");
    }
}
