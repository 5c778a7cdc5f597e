use mgfbm::verify::{self, holder_estimate, quadratic_variation, covariance_consistency};
use mgfbm::{fast_sample, cholesky_sample, ProcessParams, TimeGrid};
use std::time::Instant;

#[test]
#[ignore]
fn probe_mc() {
    let t0 = Instant::now();
    // Hölder at N = 2^12 steps, 100 paths
    for (a, b, c, h) in [(0.0f64,1.0f64,0.0f64,0.25f64), (0.0,1.0,0.0,0.75), (1.0,1.0,1.0,0.25), (1.0,1.0,1.0,0.75)] {
        let p = ProcessParams::new(a, b, c, h).unwrap();
        let grid = TimeGrid::uniform_to(1.0, 1 << 12).unwrap();
        let ens = fast_sample(&p, &grid, 100, 1234).unwrap();
        let est = holder_estimate(&ens).unwrap();
        let oracle = verify::analytic_variogram_exponent(&p, &grid).unwrap();
        println!("holder ({a},{b},{c},{h}): est {est:.4}, analytic {oracle:.4}, half^H {:.2}", h.min(0.5));
    }
    println!("holder block: {:?}", t0.elapsed());

    // QV
    let t0 = Instant::now();
    let p = ProcessParams::new(1.0, 1.0, 0.0, 0.75).unwrap();
    let grid = TimeGrid::uniform_to(1.0, 1 << 12).unwrap();
    let ens = fast_sample(&p, &grid, 100, 99).unwrap();
    let curve = quadratic_variation(&ens).unwrap();
    println!("qv (1,1,0,0.75): finest mean {:.5}, tol {:.5}", curve.levels[0].mean, 3.0*(2.0f64/4096.0).sqrt());
    let p = ProcessParams::new(0.0, 1.0, 0.0, 0.25).unwrap();
    let ens = fast_sample(&p, &grid, 100, 98).unwrap();
    let curve = quadratic_variation(&ens).unwrap();
    let ratio = curve.levels[0].mean / curve.levels[1].mean;
    println!("qv (0,1,0,0.25): ratio {:.4} want {:.4}", ratio, 2.0f64.sqrt());
    println!("qv block: {:?}", t0.elapsed());

    // Criterion 6 runtime estimate: one preset config at 2e5 paths both samplers
    let t0 = Instant::now();
    let p = ProcessParams::new(1.0, 1.0, 0.0, 0.75).unwrap();
    let grid = TimeGrid::uniform_to(1.0, 16).unwrap();
    let e1 = cholesky_sample(&p, &grid, 200_000, 5).unwrap();
    let e2 = fast_sample(&p, &grid, 200_000, 6).unwrap();
    let r1 = covariance_consistency(&e1, 4.0).unwrap();
    let r2 = covariance_consistency(&e2, 4.0).unwrap();
    println!("one config: chol pass {}, fast pass {}, elapsed {:?}", r1.passed, r2.passed, t0.elapsed());
}
