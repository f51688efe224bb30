//! Locally scaled k-nearest-neighbor similarity graphs.

use super::types::{Points, SparseGraph};
use crate::error::{Error, Result};
use crate::scalar::Real;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Builds the symmetric kNN similarity graph of a point cloud.
///
/// Each point i is linked to its k nearest neighbors (Euclidean distance,
/// ties broken by smaller index) with the locally scaled weight
/// `exp(-4 d(i,j)^2 / sigma_i^2)`, where `sigma_i` is the distance from i to
/// its k-th nearest neighbor. A pair linked in both directions keeps the
/// larger of the two weights. Coincident points (`sigma_i = 0`) get weight 1.
///
/// The result may be disconnected; callers that need a connected graph should
/// check [`SparseGraph::is_connected`].
pub fn build_knn_graph<S: Real>(points: &Points<S>, k: usize) -> Result<SparseGraph<S>> {
    let n = points.n();
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if n <= k {
        return Err(Error::TooFewPoints { need: k + 1, k, got: n });
    }

    // Directed pass: per source, the k nearest targets and their weights.
    let directed: Vec<Vec<(usize, S)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut cands: Vec<(S, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (points.dist2(i, j), j))
                .collect();
            cands.sort_by(|a, b| {
                a.0.partial_cmp(&b.0)
                    .expect("point distances must be comparable (no NaN coordinates)")
                    .then(a.1.cmp(&b.1))
            });
            cands.truncate(k);
            let sigma2 = cands[k - 1].0;
            cands
                .into_iter()
                .map(|(d2, j)| {
                    let w = if sigma2 > S::zero() {
                        (S::c(-4.0) * d2 / sigma2).exp()
                    } else {
                        S::one()
                    };
                    (j, w)
                })
                .collect()
        })
        .collect();

    // Max-symmetrization into undirected edges keyed by the sorted pair.
    let mut merged: BTreeMap<(usize, usize), S> = BTreeMap::new();
    for (i, nbrs) in directed.iter().enumerate() {
        for &(j, w) in nbrs {
            let key = (i.min(j), i.max(j));
            merged
                .entry(key)
                .and_modify(|cur| {
                    if w > *cur {
                        *cur = w;
                    }
                })
                .or_insert(w);
        }
    }
    SparseGraph::from_edges(n, merged.into_iter().map(|((u, v), w)| (u, v, w)))
}
