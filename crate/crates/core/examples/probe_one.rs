//! Deep diagnostic for one protocol graph that resists certification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nlipm::graph::SparseGraph;
use nlipm::one_laplacian::{
    balanced_sign, median_zero_shift, rescale_l1, solve_inner, spectral_indicator_init,
    total_variation, DualState, FistaConfig,
};

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn residual(g: &SparseGraph<f64>, alpha: &[f64], lambda: f64, v: &[f64]) -> Vec<f64> {
    let mut r: Vec<f64> = v.iter().map(|&x| -lambda * x).collect();
    for (e, ed) in g.edges().iter().enumerate() {
        r[ed.u] += ed.w * alpha[e];
        r[ed.v] -= ed.w * alpha[e];
    }
    r
}

/// Textbook primal active-set method for `min ||A alpha - lambda v||^2` over
/// the unit box: exact reference for the true dual optimum.
fn active_set_qp(g: &SparseGraph<f64>, lambda: f64, v: &[f64], alpha: &mut [f64]) -> (f64, usize) {
    let m = g.edges().len();
    let n = g.n();
    let mut fixed: Vec<i8> = alpha
        .iter()
        .map(|&a| {
            if a >= 1.0 {
                1
            } else if a <= -1.0 {
                -1
            } else {
                0
            }
        })
        .collect();
    let mut rounds = 0usize;
    for _ in 0..100_000 {
        rounds += 1;
        let free: Vec<usize> = (0..m).filter(|&e| fixed[e] == 0).collect();
        let r = residual(g, alpha, lambda, v);
        let mut d = vec![0.0; free.len()];
        if !free.is_empty() {
            // CG on (A_F^T A_F) d = -A_F^T r.
            let apply = |dv: &[f64]| -> Vec<f64> {
                let mut y = vec![0.0; n];
                for (&e, &de) in free.iter().zip(dv) {
                    let ed = &g.edges()[e];
                    y[ed.u] += ed.w * de;
                    y[ed.v] -= ed.w * de;
                }
                y
            };
            let apply_t = |y: &[f64]| -> Vec<f64> {
                free.iter()
                    .map(|&e| {
                        let ed = &g.edges()[e];
                        ed.w * (y[ed.u] - y[ed.v])
                    })
                    .collect()
            };
            let b: Vec<f64> = apply_t(&r).iter().map(|&x| -x).collect();
            let bn = norm2(&b);
            if bn > 0.0 {
                let tol = 1e-15 * bn;
                let mut res = b.clone();
                let mut p = b;
                let mut rr: f64 = res.iter().map(|x| x * x).sum();
                for _ in 0..4 * free.len() + 50 {
                    if rr.sqrt() <= tol {
                        break;
                    }
                    let ap = apply_t(&apply(&p));
                    let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
                    if !(pap > 0.0) {
                        break;
                    }
                    let s = rr / pap;
                    for j in 0..d.len() {
                        d[j] += s * p[j];
                        res[j] -= s * ap[j];
                    }
                    let rr2: f64 = res.iter().map(|x| x * x).sum();
                    let beta = rr2 / rr;
                    rr = rr2;
                    for j in 0..p.len() {
                        p[j] = res[j] + beta * p[j];
                    }
                }
            }
        }
        let mut theta = 1.0f64;
        let mut blocker: Option<(usize, i8)> = None;
        for (j, &e) in free.iter().enumerate() {
            if d[j] > 0.0 {
                let t = (1.0 - alpha[e]) / d[j];
                if t < theta {
                    theta = t;
                    blocker = Some((e, 1));
                }
            } else if d[j] < 0.0 {
                let t = (-1.0 - alpha[e]) / d[j];
                if t < theta {
                    theta = t;
                    blocker = Some((e, -1));
                }
            }
        }
        for (j, &e) in free.iter().enumerate() {
            alpha[e] = (alpha[e] + theta * d[j]).clamp(-1.0, 1.0);
        }
        if let Some((e, s)) = blocker {
            fixed[e] = s;
            alpha[e] = s as f64;
            continue;
        }
        // Full step taken: face optimum reached; check bound multipliers.
        let r = residual(g, alpha, lambda, v);
        let mut worst: Option<(usize, f64)> = None;
        for e in 0..m {
            if fixed[e] == 0 {
                continue;
            }
            let ed = &g.edges()[e];
            let grad = ed.w * (r[ed.u] - r[ed.v]);
            let viol = if fixed[e] == 1 { grad } else { -grad };
            if viol > 0.0 && worst.map_or(true, |(_, w)| viol > w) {
                worst = Some((e, viol));
            }
        }
        match worst {
            None => break,
            Some((e, _)) => fixed[e] = 0,
        }
    }
    (norm2(&residual(g, alpha, lambda, v)), rounds)
}

fn main() {
    let target: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(58);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut g: Option<SparseGraph<f64>> = None;
    for i in 0..200 {
        let n = rng.gen_range(6..=60usize);
        let extra = rng.gen_range(0..=2 * n);
        let graph = nlipm::oracle::random_connected_graph(&mut rng, n, extra).unwrap();
        if i == target {
            g = Some(graph);
            break;
        }
    }
    let g = g.unwrap();
    println!("n={} m={}", g.n(), g.edges().len());
    let (f0, _) = spectral_indicator_init(&g).unwrap();

    let mut f = f0.clone();
    median_zero_shift(&mut f);
    rescale_l1(&mut f).unwrap();
    let mut lambda = total_variation(&g, &f);
    let mut state = DualState::new(g.edges().len());
    let tight = FistaConfig::tight(1e-8, 400_000);
    for step in 0..10_000usize {
        let v = balanced_sign(&f).unwrap();
        let sol = solve_inner(&g, lambda, &v, &mut state, &tight);
        println!(
            "step {step}: lambda={lambda:.12e} stop={:?} iters={} obj={:.6e} gap={:.3e} dual_norm={:.6e}",
            sol.stop, sol.iterations, sol.objective, sol.gap, sol.dual_norm
        );
        let descent = sol.objective < -1e-14 * lambda;
        if !descent {
            println!("no certified descent at step {step}; running exact reference QP...");
            let mut alpha = state.alpha().to_vec();
            let (true_norm, rounds) = active_set_qp(&g, lambda, &v, &mut alpha);
            println!(
                "true dual optimum: {true_norm:.6e} (rounds {rounds}); OptimumZero needs <= {:.6e}",
                1e-8 * lambda
            );
            break;
        }
        let mut cand = sol.u.clone();
        median_zero_shift(&mut cand);
        rescale_l1(&mut cand).unwrap();
        let lambda_next = total_variation(&g, &cand);
        let rel = (lambda - lambda_next) / lambda;
        if !(lambda_next < lambda) {
            println!("rounding branch at step {step}");
            break;
        }
        f = cand;
        lambda = lambda_next;
        if rel < 1e-6 {
            println!("converged at step {step}");
            break;
        }
    }
}
