//! Recursive multi-way partitioning by repeated 1-Laplacian bipartitions.
//!
//! Starting from one cluster, each round considers every current cluster,
//! runs the full multi-start clustering on its induced subgraph, and scores
//! each level set of the resulting vertex function by the *global* ratio cut
//! it would produce — the split cost of a cluster counts edges leaving it to
//! the rest of the graph, not just edges inside the subgraph. The single best
//! (cluster, threshold) pair is committed per round until the requested
//! number of clusters is reached.
//!
//! Disconnected clusters are first split into their connected components
//! (those splits count toward the requested total and can overshoot it): the
//! bipartition driver requires connected inputs, and components are free to
//! separate since no edges join them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{rcut, Partition, SparseGraph};
use crate::ipm::IpmConfig;
use crate::scalar::Real;

use super::driver::run_with_restarts;

/// Why a split happened.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitReason {
    /// Best thresholded bipartition of the cluster's eigenvector run.
    Cut { threshold: f64 },
    /// Connected-component separation of a disconnected cluster.
    Component,
}

/// One committed split, in commit order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitRecord {
    /// 0-based round in which the split was committed.
    pub round: usize,
    /// Label of the cluster that was split.
    pub parent: usize,
    /// Label assigned to the vertices that left `parent`.
    pub new_label: usize,
    pub reason: SplitReason,
    /// Global ratio cut of the partition right after this split.
    pub rcut_after: f64,
}

/// The full partitioning result: final labels plus the ordered split log
/// that reproduces them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterTree {
    pub n: usize,
    pub k_requested: usize,
    /// Achieved cluster count; exceeds `k_requested` only when component
    /// splits overshoot.
    pub k: usize,
    pub labels: Vec<usize>,
    /// Global ratio cut of the final partition.
    pub rcut: f64,
    pub splits: Vec<SplitRecord>,
}

struct CandidateSplit<S> {
    parent: usize,
    /// Local mask over the cluster's member list: `true` stays with the
    /// parent label, `false` moves to the new label.
    mask: Vec<bool>,
    threshold: S,
    new_rcut: S,
}

/// Sweeps the level sets of `f` on the cluster subgraph and returns the
/// split minimizing the global ratio cut, given the cluster's share of it is
/// replaced by the two new terms. `external[i]` is the weight from local
/// vertex `i` to vertices outside the cluster; `rest` is the global ratio cut
/// minus this cluster's current term.
fn best_global_split<S: Real>(
    sub: &SparseGraph<S>,
    f: &[S],
    external: &[S],
    rest: S,
) -> Option<CandidateSplit<S>> {
    let q = sub.n();
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&a, &b| {
        f[b].partial_cmp(&f[a])
            .expect("thresholding non-finite values")
            .then(a.cmp(&b))
    });

    let ext_total: S = external.iter().copied().sum();
    let mut in_set = vec![false; q];
    let mut cut = S::zero();
    let mut ext_in = S::zero();
    let mut size = 0usize;
    let mut best: Option<(S, usize, S, usize)> = None; // (rcut, balance, threshold, prefix)

    let mut pos = 0usize;
    while pos < q {
        let group_value = f[order[pos]];
        while pos < q && f[order[pos]] == group_value {
            let vtx = order[pos];
            let mut to_inside = S::zero();
            for &(nbr, eidx) in sub.neighbors(vtx) {
                if in_set[nbr] {
                    to_inside += sub.edges()[eidx].w;
                }
            }
            cut += sub.degree(vtx) - S::c(2.0) * to_inside;
            ext_in += external[vtx];
            in_set[vtx] = true;
            size += 1;
            pos += 1;
        }
        if size == q {
            break;
        }
        let threshold = f[order[pos]];
        let a = S::c(size as f64);
        let b = S::c((q - size) as f64);
        let term = (cut + ext_in) / a + (cut + (ext_total - ext_in)) / b;
        let new_rcut = rest + term;
        let balance = size.min(q - size);
        let replace = match &best {
            None => true,
            Some((r, bal, thr, _)) => {
                new_rcut < *r
                    || (new_rcut == *r
                        && (balance > *bal || (balance == *bal && threshold < *thr)))
            }
        };
        if replace {
            best = Some((new_rcut, balance, threshold, pos));
        }
    }

    best.map(|(new_rcut, _, threshold, prefix)| {
        let mut mask = vec![false; q];
        for &vtx in &order[..prefix] {
            mask[vtx] = true;
        }
        CandidateSplit {
            parent: 0, // filled by the caller
            mask,
            threshold,
            new_rcut,
        }
    })
}

/// Per-(round, cluster) sub-run seed, deterministic and well-spread.
fn derive_seed(base: u64, round: usize, label: usize) -> u64 {
    base ^ (round as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (label as u64 + 1).wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
}

/// Splits every disconnected cluster into its connected components,
/// returning the records. May push the cluster count past the target.
fn separate_components<S: Real>(
    g: &SparseGraph<S>,
    labels: &mut [usize],
    num_clusters: &mut usize,
    round: usize,
    splits: &mut Vec<SplitRecord>,
) -> Result<()> {
    let original = *num_clusters;
    for c in 0..original {
        let members: Vec<usize> = (0..g.n()).filter(|&i| labels[i] == c).collect();
        if members.len() < 2 {
            continue;
        }
        let (sub, members, _ext) = g.induced_with_external(&members)?;
        let comps = sub.components();
        if comps.len() < 2 {
            continue;
        }
        for comp in comps.iter().skip(1) {
            let new_label = *num_clusters;
            for &local in comp {
                labels[members[local]] = new_label;
            }
            *num_clusters += 1;
            let part = Partition::from_labels(labels.to_vec())?;
            splits.push(SplitRecord {
                round,
                parent: c,
                new_label,
                reason: SplitReason::Component,
                rcut_after: rcut(g, &part)?.as_f64(),
            });
        }
    }
    Ok(())
}

/// Partitions the graph into (at least) `k` clusters.
pub fn recursive_multicut<S: Real>(
    g: &SparseGraph<S>,
    k: usize,
    config: &IpmConfig,
) -> Result<ClusterTree> {
    config.validate()?;
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::BadClusterCount { k, n });
    }
    let mut labels = vec![0usize; n];
    let mut num_clusters = 1usize;
    let mut splits: Vec<SplitRecord> = Vec::new();

    let mut round = 0usize;
    while num_clusters < k {
        separate_components(g, &mut labels, &mut num_clusters, round, &mut splits)?;
        if num_clusters >= k {
            break;
        }

        let current_rcut = {
            let part = Partition::from_labels(labels.clone())?;
            rcut(g, &part)?
        };

        // Evaluate every splittable cluster in parallel; pick the best.
        let cluster_members: Vec<(usize, Vec<usize>)> = (0..num_clusters)
            .map(|c| (c, (0..n).filter(|&i| labels[i] == c).collect()))
            .collect();
        let candidates: Vec<Option<CandidateSplit<S>>> = cluster_members
            .par_iter()
            .map(|(c, members)| -> Result<Option<CandidateSplit<S>>> {
                if members.len() < 2 {
                    return Ok(None);
                }
                let (sub, _members, external) = g.induced_with_external(members)?;
                let ext_sum: S = external.iter().copied().sum();
                let own_term = ext_sum / S::c(members.len() as f64);
                let rest = current_rcut - own_term;
                let mut sub_config = config.clone();
                sub_config.seed = derive_seed(config.seed, round, *c);
                let run = run_with_restarts(&sub, &sub_config)?;
                Ok(
                    best_global_split(&sub, &run.solution.vector, &external, rest).map(
                        |mut cand| {
                            cand.parent = *c;
                            cand
                        },
                    ),
                )
            })
            .collect::<Result<Vec<_>>>()?;

        let mut best: Option<CandidateSplit<S>> = None;
        for cand in candidates.into_iter().flatten() {
            let replace = match &best {
                None => true,
                Some(b) => cand.new_rcut < b.new_rcut,
            };
            if replace {
                best = Some(cand);
            }
        }
        let best = best.ok_or(Error::BadClusterCount { k, n })?;

        // Commit: the out-of-set side keeps the parent label.
        let members: Vec<usize> = (0..n).filter(|&i| labels[i] == best.parent).collect();
        let new_label = num_clusters;
        for (local, &vertex) in members.iter().enumerate() {
            if best.mask[local] {
                labels[vertex] = new_label;
            }
        }
        num_clusters += 1;
        let part = Partition::from_labels(labels.clone())?;
        let achieved = rcut(g, &part)?;
        splits.push(SplitRecord {
            round,
            parent: best.parent,
            new_label,
            reason: SplitReason::Cut {
                threshold: best.threshold.as_f64(),
            },
            rcut_after: achieved.as_f64(),
        });
        round += 1;
    }

    let part = Partition::from_labels(labels.clone())?;
    Ok(ClusterTree {
        n,
        k_requested: k,
        k: num_clusters,
        labels,
        rcut: rcut(g, &part)?.as_f64(),
        splits,
    })
}
