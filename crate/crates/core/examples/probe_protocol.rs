//! Diagnostic: re-runs the certified spectral-start protocol and prints every
//! run whose certification outcome is questionable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nlipm::graph::{build_knn_graph, generate_two_moons, SparseGraph, TwoMoonsSpec};
use nlipm::ipm::IpmConfig;
use nlipm::one_laplacian::{run_with_restarts_from_spectral, spectral_indicator_init};

fn main() {
    let mut graphs: Vec<(String, SparseGraph<f64>)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..200 {
        let n = rng.gen_range(6..=60usize);
        let extra = rng.gen_range(0..=2 * n);
        graphs.push((
            format!("random[{i}]"),
            nlipm::oracle::random_connected_graph(&mut rng, n, extra).unwrap(),
        ));
    }
    let mut accepted = 0usize;
    let mut seed = 0u64;
    while accepted < 20 {
        let spec = TwoMoonsSpec {
            n: 300,
            seed: 9_000 + seed,
            ..TwoMoonsSpec::default()
        };
        seed += 1;
        let (points, _) = generate_two_moons::<f64>(&spec).unwrap();
        let g = build_knn_graph(&points, spec.k_neighbors).unwrap();
        if !g.is_connected() {
            continue;
        }
        graphs.push((format!("moons[{}]", seed - 1), g));
        accepted += 1;
    }
    let cfg = IpmConfig {
        restarts: 0,
        inner_tolerance: 1e-8,
        ..IpmConfig::default()
    };
    for (name, g) in &graphs {
        let (f0, _) = spectral_indicator_init(g).unwrap();
        let run = run_with_restarts_from_spectral(g, &f0, &cfg).unwrap();
        let s = &run.solution;
        let declared = 1e-8 * s.eigenvalue.max(1.0);
        let ratio = s.final_gap / declared;
        let ok = (s.terminated || s.converged) && ratio <= 1.0;
        if !ok {
            println!(
                "{name}: n={} m={} terminated={} converged={} lambda={:.6e} gap={:.3e} gap/declared={:.3e} inner_iters={}",
                g.n(),
                g.edges().len(),
                s.terminated,
                s.converged,
                s.eigenvalue,
                s.final_gap,
                ratio,
                s.inner_iterations
            );
        }
    }
    println!("done");
}
