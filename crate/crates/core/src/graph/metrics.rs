//! Cut quantities. `mask[i]` marks membership of vertex i in C.

use super::types::{Partition, SparseGraph};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Total weight crossing between C and its complement.
pub fn cut<S: Real>(g: &SparseGraph<S>, mask: &[bool]) -> Result<S> {
    if mask.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: mask.len(),
        });
    }
    Ok(g.edges()
        .iter()
        .filter(|e| mask[e.u] != mask[e.v])
        .map(|e| e.w)
        .sum())
}

/// Ratio Cheeger cut: cut(C, C̄) / min(|C|, |C̄|). C must be a proper nonempty
/// subset.
pub fn rcc<S: Real>(g: &SparseGraph<S>, mask: &[bool]) -> Result<S> {
    let size: usize = mask.iter().filter(|&&b| b).count();
    if size == 0 || size == mask.len() {
        return Err(Error::DegenerateCut);
    }
    let c = cut(g, mask)?;
    let denom = size.min(g.n() - size);
    Ok(c / S::from_usize(denom).expect("vertex count fits scalar"))
}

/// Ratio cut of a partition: Σ_i cut(C_i, C̄_i)/|C_i|. Zero for a single
/// cluster.
pub fn rcut<S: Real>(g: &SparseGraph<S>, p: &Partition) -> Result<S> {
    if p.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: p.len(),
        });
    }
    let sizes = p.sizes();
    let mut cut_weight = vec![S::zero(); p.k()];
    for e in g.edges() {
        let (lu, lv) = (p.labels()[e.u], p.labels()[e.v]);
        if lu != lv {
            cut_weight[lu] += e.w;
            cut_weight[lv] += e.w;
        }
    }
    let mut total = S::zero();
    for (c, &sz) in sizes.iter().enumerate() {
        if sz == 0 {
            return Err(Error::EmptyCluster(c));
        }
        total += cut_weight[c] / S::from_usize(sz).expect("cluster size fits scalar");
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> SparseGraph<f64> {
        SparseGraph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    #[test]
    fn cut_on_path() {
        let g = path4();
        assert_eq!(cut(&g, &[true, true, false, false]).unwrap(), 1.0);
        assert_eq!(cut(&g, &[true, false, true, false]).unwrap(), 3.0);
        assert_eq!(cut(&g, &[false, false, false, false]).unwrap(), 0.0);
    }

    #[test]
    fn rcc_on_path() {
        let g = path4();
        assert_eq!(rcc(&g, &[true, true, false, false]).unwrap(), 0.5);
        assert_eq!(rcc(&g, &[true, false, false, false]).unwrap(), 1.0);
        assert!(matches!(
            rcc(&g, &[true, true, true, true]),
            Err(Error::DegenerateCut)
        ));
    }

    #[test]
    fn rcc_symmetric_under_complement() {
        let g = SparseGraph::from_edges(
            5,
            [
                (0, 1, 0.7),
                (1, 2, 1.3),
                (2, 3, 0.2),
                (3, 4, 2.0),
                (0, 4, 0.5),
                (1, 3, 0.9),
            ],
        )
        .unwrap();
        let mask = [true, false, true, false, false];
        let flipped: Vec<bool> = mask.iter().map(|&b| !b).collect();
        assert_eq!(rcc(&g, &mask).unwrap(), rcc(&g, &flipped).unwrap());
    }

    #[test]
    fn rcut_of_bipartition_matches_hand_sum() {
        let g = path4();
        let p = Partition::from_labels(vec![0, 0, 1, 1]).unwrap();
        // cut = 1 on both sides, sizes 2 and 2.
        assert_eq!(rcut(&g, &p).unwrap(), 1.0);
        let p3 = Partition::from_labels(vec![0, 1, 1, 2]).unwrap();
        // cluster cuts: {0}: 1, {1,2}: 2, {3}: 1 → 1/1 + 2/2 + 1/1 = 3.
        assert_eq!(rcut(&g, &p3).unwrap(), 3.0);
    }

    #[test]
    fn rcut_single_cluster_is_zero() {
        let g = path4();
        let p = Partition::from_labels(vec![0, 0, 0, 0]).unwrap();
        assert_eq!(rcut(&g, &p).unwrap(), 0.0);
    }
}
