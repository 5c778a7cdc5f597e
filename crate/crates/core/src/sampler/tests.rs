use super::*;
use crate::kernel::SpecialCase;
use crate::real::ulps;

fn params(a: f64, b: f64, c: f64, h: f64) -> ProcessParams<f64> {
    ProcessParams::new(a, b, c, h).unwrap()
}

#[test]
fn covariance_matrix_brownian() {
    let grid = TimeGrid::new(vec![1.0, 2.0, 3.0]).unwrap();
    let m = covariance_matrix(&params(1.0, 0.0, 0.0, 0.7), &grid).unwrap();
    let want = [[1.0, 1.0, 1.0], [1.0, 2.0, 2.0], [1.0, 2.0, 3.0]];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m[(i, j)], want[i][j]);
        }
    }
    assert_eq!(m.asymmetry(), 0.0);
}

#[test]
fn covariance_matrix_single_zero_point() {
    let grid = TimeGrid::new(vec![0.0]).unwrap();
    let m = covariance_matrix(&params(1.0, 1.0, 1.0, 0.75), &grid).unwrap();
    assert_eq!(m[(0, 0)], 0.0);
}

#[test]
fn covariance_matrix_subfractional_values() {
    // Independent oracle: t^{2H} + s^{2H} − ((t+s)^{2H} + |t−s|^{2H})/2.
    let p = SpecialCase::<f64>::SubFractionalBm.params(0.75).unwrap();
    let grid = TimeGrid::new(vec![1.0, 2.0]).unwrap();
    let m = covariance_matrix(&p, &grid).unwrap();
    let refs = [
        ((0, 0), 0.5857864376269050),
        ((0, 1), 0.7303509133928742),
        ((1, 1), 1.6568542494923802),
    ];
    for ((i, j), want) in refs {
        assert!(
            (m[(i, j)] - want).abs() <= ulps(8, p.covariance_scale(grid.times()[i], grid.times()[j])),
            "m[{i}{j}] = {}, want {want}",
            m[(i, j)]
        );
    }
}

#[test]
fn cholesky_sampler_rejects_zero_paths() {
    let grid = TimeGrid::uniform_to(1.0, 4).unwrap();
    let s = CholeskySampler::new(&params(1.0, 0.0, 0.0, 0.5), &grid).unwrap();
    assert!(s.sample(0, 1).is_err());
}

#[test]
fn cholesky_sampler_is_deterministic() {
    let grid = TimeGrid::new(vec![0.5, 1.0, 2.5]).unwrap();
    let p = params(1.0, 1.0, 1.0, 0.75);
    let a = cholesky_sample(&p, &grid, 16, 42).unwrap();
    let b = cholesky_sample(&p, &grid, 16, 42).unwrap();
    assert_eq!(a.values(), b.values());
    let c = cholesky_sample(&p, &grid, 16, 43).unwrap();
    assert_ne!(a.values(), c.values());
}

#[test]
fn cholesky_sampler_zero_column_exact() {
    let grid = TimeGrid::uniform_to(1.0, 8).unwrap();
    let ens = cholesky_sample(&params(1.0, 1.0, -1.0, 0.3), &grid, 50, 7).unwrap();
    for path in ens.paths() {
        assert_eq!(path[0], 0.0);
    }
}

#[test]
fn cholesky_sample_variance_matches_kernel() {
    // Brownian on integer times: sample variance of M_{t_k} within 3 SE of t_k.
    let grid = TimeGrid::new(vec![1.0, 2.0, 3.0]).unwrap();
    let p = params(1.0, 0.0, 0.0, 0.5);
    let n = 40_000;
    let ens = cholesky_sample(&p, &grid, n, 2024).unwrap();
    for (k, &t) in grid.times().iter().enumerate() {
        let mut acc = 0.0;
        for path in ens.paths() {
            acc += path[k] * path[k];
        }
        let var = acc / n as f64;
        let se = t * (2.0 / n as f64).sqrt();
        assert!((var - t).abs() <= 3.0 * se, "var at t={t}: {var} (se {se})");
    }
}

#[test]
fn fgn_single_step() {
    let rows = fgn_circulant(0.75_f64, 1, 0.5, 2000, 5).unwrap();
    let var_want = 0.5f64.powf(1.5);
    let mean_sq = rows.iter().map(|r| r[0] * r[0]).sum::<f64>() / rows.len() as f64;
    let se = var_want * (2.0 / rows.len() as f64).sqrt();
    assert!((mean_sq - var_want).abs() <= 3.0 * se);
}

fn fgn_lag_cov(rows: &[Vec<f64>], lag: usize) -> (f64, usize) {
    let mut acc = 0.0;
    let mut count = 0;
    for r in rows {
        for j in 0..(r.len() - lag) {
            acc += r[j] * r[j + lag];
            count += 1;
        }
    }
    (acc / count as f64, count)
}

#[test]
fn fgn_lag_one_autocovariance() {
    // H = 1/2: white noise, lag-1 autocovariance 0.
    let rows = fgn_circulant(0.5_f64, 16, 1.0, 20_000, 11).unwrap();
    let (c1, count) = fgn_lag_cov(&rows, 1);
    let se = 1.5 / (count as f64).sqrt();
    assert!(c1.abs() <= 3.0 * se, "lag-1 {c1} (se {se})");

    // H = 3/4: γ(1) = (2^{1.5} − 2)/2.
    let rows = fgn_circulant(0.75_f64, 16, 1.0, 20_000, 12).unwrap();
    let (c1, count) = fgn_lag_cov(&rows, 1);
    let want = 0.4142135623730951;
    let se = 1.5 / (count as f64).sqrt();
    assert!((c1 - want).abs() <= 3.0 * se, "lag-1 {c1}, want {want} (se {se})");
}

#[test]
fn fgn_theoretical_autocovariance_helper() {
    let g1 = FgnSampler::autocovariance(0.75_f64, 1.0, 1);
    assert!((g1 - 0.4142135623730951).abs() < 1e-15);
    let g0 = FgnSampler::autocovariance(0.3_f64, 2.0, 0);
    assert!((g0 - 2.0f64.powf(0.6)).abs() < 1e-15);
}

#[test]
fn fast_sampler_requires_uniform_zero_grid() {
    let p = params(1.0, 1.0, 0.0, 0.6);
    let nonuniform = TimeGrid::new(vec![0.3, 0.9, 1.1]).unwrap();
    let err = match FastSampler::new(&p, &nonuniform) {
        Err(e) => e,
        Ok(_) => panic!("non-uniform grid must be rejected"),
    };
    assert!(err.to_string().contains("Cholesky"), "error should direct to the dense sampler: {err}");

    let offset = TimeGrid::new(vec![1.0, 2.0, 3.0]).unwrap();
    assert!(FastSampler::new(&p, &offset).is_err());
}

#[test]
fn fast_sampler_is_deterministic_and_zero_anchored() {
    let grid = TimeGrid::uniform_to(1.0, 32).unwrap();
    let p = params(1.0, 1.0, 1.0, 0.75);
    let a = fast_sample(&p, &grid, 25, 9).unwrap();
    let b = fast_sample(&p, &grid, 25, 9).unwrap();
    assert_eq!(a.values(), b.values());
    assert_eq!(a.method(), SampleMethod::Circulant);
    for path in a.paths() {
        assert_eq!(path[0], 0.0);
    }
}

#[test]
fn fast_sample_variance_matches_kernel() {
    // Sub-fractional case at t = 1: variance 2 − 2^{2H−1}.
    let p = SpecialCase::<f64>::SubFractionalBm.params(0.75).unwrap();
    let grid = TimeGrid::uniform_to(1.0, 16).unwrap();
    let n = 40_000;
    let ens = fast_sample(&p, &grid, n, 77).unwrap();
    let t_idx = 16;
    let want = p.variance(1.0).unwrap();
    assert!((want - (2.0 - 2.0f64.powf(0.5))).abs() < 1e-15);
    let mean_sq = ens.paths().map(|r| r[t_idx] * r[t_idx]).sum::<f64>() / n as f64;
    let se = want * (2.0 / n as f64).sqrt();
    assert!((mean_sq - want).abs() <= 3.0 * se, "var {mean_sq}, want {want} (se {se})");
}

#[test]
fn fast_sample_brownian_and_fractional_streams_independent() {
    let p = params(1.0, 1.0, 1.0, 0.7);
    let grid = TimeGrid::uniform_to(1.0, 16).unwrap();
    let sampler = FastSampler::new(&p, &grid).unwrap();
    let n = 40_000;
    let (bm, mix) = sampler.terminal_components(n, 123);
    let mut cross = 0.0;
    let mut var_b = 0.0;
    let mut var_m = 0.0;
    for i in 0..n {
        cross += bm[i] * mix[i];
        var_b += bm[i] * bm[i];
        var_m += mix[i] * mix[i];
    }
    let corr = cross / (var_b * var_m).sqrt();
    let se = 1.0 / (n as f64).sqrt();
    assert!(corr.abs() <= 3.0 * se, "corr {corr} (se {se})");
}

#[test]
fn binary_round_trip_is_bit_exact() {
    let grid = TimeGrid::uniform_to(1.0, 5).unwrap();
    let p = params(1.0, 2.0, -0.5, 0.6);
    let ens = fast_sample(&p, &grid, 7, 99).unwrap();
    let mut buf = Vec::new();
    ens.write_binary(&mut buf).unwrap();
    assert_eq!(buf.len(), 64 + 6 * 8 + 7 * 6 * 8);
    let back = PathEnsemble::read_binary(&mut buf.as_slice()).unwrap();
    assert_eq!(back.values(), ens.values());
    assert_eq!(back.grid().times(), ens.grid().times());
    assert_eq!(back.seed(), ens.seed());
    assert_eq!(back.method(), ens.method());
    assert_eq!(back.params(), ens.params());
}

#[test]
fn csv_round_trip_is_exact_at_17_digits() {
    let grid = TimeGrid::new(vec![0.0, 0.1, 0.7, 1.3]).unwrap();
    let p = params(0.0, 1.0, -1.0, 0.3);
    let ens = cholesky_sample(&p, &grid, 5, 4).unwrap();
    let mut buf = Vec::new();
    ens.write_csv(&mut buf).unwrap();
    let meta = EnsembleMeta::describe(&ens);
    let back = PathEnsemble::read_csv(&mut buf.as_slice(), &meta).unwrap();
    assert_eq!(back.values(), ens.values());
    assert_eq!(back.grid().times(), ens.grid().times());
}

#[test]
fn json_round_trip() {
    let grid = TimeGrid::uniform_to(0.5, 3).unwrap();
    let p = params(1.0, 0.0, 0.0, 0.5);
    let ens = fast_sample(&p, &grid, 3, 8).unwrap();
    let mut buf = Vec::new();
    ens.write_json(&mut buf).unwrap();
    let back = PathEnsemble::<f64>::read_json(&mut buf.as_slice()).unwrap();
    assert_eq!(back.values(), ens.values());
}

#[test]
fn binary_rejects_garbage() {
    let garbage = vec![0u8; 64];
    assert!(PathEnsemble::read_binary(&mut garbage.as_slice()).is_err());
}

#[test]
fn ensemble_meta_records_algorithms() {
    let grid = TimeGrid::uniform_to(1.0, 2).unwrap();
    let ens = fast_sample(&params(1.0, 0.0, 0.0, 0.5), &grid, 2, 1).unwrap();
    let meta = EnsembleMeta::describe(&ens);
    assert_eq!(meta.rng, "chacha12");
    assert_eq!(meta.gaussian, "ziggurat");
    assert_eq!(meta.n_paths, 2);
}

#[test]
fn sampler_works_in_f32() {
    let grid = TimeGrid::<f32>::uniform_to(1.0, 8).unwrap();
    let p = ProcessParams::<f32>::new(1.0, 1.0, 1.0, 0.75).unwrap();
    let ens = fast_sample(&p, &grid, 4, 3).unwrap();
    assert_eq!(ens.n_paths(), 4);
    assert!(ens.values().iter().all(|v| v.is_finite()));
    let dense = cholesky_sample(&p, &grid, 4, 3).unwrap();
    assert!(dense.values().iter().all(|v| v.is_finite()));
}
