//! Eigenvalue coalescence and Jordan-structure detection.
//!
//! Note on terminology: at a defective eigenvalue the geometric multiplicity
//! (dimension of the eigenspace) is strictly *smaller* than the algebraic
//! multiplicity. That is the criterion used here.

use nalgebra::SVD;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{dense_eigensolve_tridiagonal, eigen_via_recursion, sort_spectrum, spectral_order};
use crate::boson_operator::TridiagonalMatrix;
use crate::CMatrix;

/// Singular values below this fraction of the largest count as zero.
const RANK_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenCluster {
    /// Mean of the member eigenvalues.
    pub center: Complex64,
    pub members: Vec<Complex64>,
    /// Algebraic multiplicity (number of members).
    pub multiplicity: usize,
    /// `l - rank(M - center·I)`.
    pub geometric_multiplicity: usize,
    /// `rank((M - center·I)^k)` for `k = 0..=l`.
    pub rank_profile: Vec<usize>,
    pub max_pairwise_gap: f64,
}

impl EigenCluster {
    pub fn is_semisimple(&self) -> bool {
        self.geometric_multiplicity == self.multiplicity
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    /// Deformation parameter, when the caller attached one.
    pub alpha: Option<f64>,
    pub tolerance: f64,
    /// Centre of the largest cluster.
    pub cluster_center: Complex64,
    pub max_pairwise_gap: f64,
    pub jordan_rank_profile: Vec<usize>,
    pub diagonalizable: bool,
    pub clusters: Vec<EigenCluster>,
}

impl ExceptionalReport {
    /// Degenerate and defective.
    pub fn is_exceptional(&self) -> bool {
        !self.diagonalizable
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }
}

fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `1e-6 · ‖M‖_F`.
pub fn default_cluster_tol(t: &TridiagonalMatrix) -> f64 {
    1e-6 * frobenius(&t.to_dense())
}

fn numerical_rank(m: &CMatrix) -> usize {
    if m.nrows() == 0 {
        return 0;
    }
    let sv = SVD::new(m.clone(), false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > RANK_RTOL * max.max(1.0)).count()
}

/// `rank((M - λI)^k)` for `k = 0..=l` by singular-value thresholding.
pub fn rank_profile(m: &CMatrix, lambda: Complex64) -> Vec<usize> {
    let l = m.nrows();
    let shifted = m - CMatrix::identity(l, l) * lambda;
    let mut power = CMatrix::identity(l, l);
    let mut profile = Vec::with_capacity(l + 1);
    profile.push(l);
    for _ in 0..l {
        power = &power * &shifted;
        profile.push(numerical_rank(&power));
    }
    profile
}

fn cluster(values: &[Complex64], tol: f64) -> Vec<Vec<Complex64>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(values[i]),
            None => groups.push((root, vec![values[i]])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Groups eigenvalues closer than `tol`, then decides diagonalisability
/// from `rank(M - λI) = l - (algebraic multiplicity)` for every cluster.
///
/// Eigenvalues come from the recursion when it applies (its monic
/// characteristic polynomial keeps exact multiple roots exact) and from the
/// dense solver otherwise.
pub fn detect_exceptional_point(t: &TridiagonalMatrix, tol: f64) -> ExceptionalReport {
    let dense = t.to_dense();
    let l = t.size();
    let mut values: Vec<Complex64> = if t.recursion_applicable() {
        eigen_via_recursion(t).ok().map(|p| p.into_iter().map(|e| e.value).collect())
    } else {
        None
    }
    .or_else(|| {
        dense_eigensolve_tridiagonal(t)
            .ok()
            .map(|p| p.into_iter().map(|e| e.value).collect())
    })
    .unwrap_or_default();
    sort_spectrum(&mut values);

    let mut clusters: Vec<EigenCluster> = cluster(&values, tol)
        .into_iter()
        .map(|members| {
            let center = members.iter().sum::<Complex64>() / members.len() as f64;
            let rank_profile = rank_profile(&dense, center);
            let max_pairwise_gap = members
                .iter()
                .flat_map(|a| members.iter().map(move |b| (a - b).norm()))
                .fold(0.0, f64::max);
            EigenCluster {
                center,
                multiplicity: members.len(),
                geometric_multiplicity: l - rank_profile[1],
                rank_profile,
                members,
                max_pairwise_gap,
            }
        })
        .collect();
    clusters.sort_by(|a, b| spectral_order(&a.center, &b.center));

    let diagonalizable = clusters.iter().all(EigenCluster::is_semisimple);
    let primary = clusters
        .iter()
        .max_by(|a, b| a.multiplicity.cmp(&b.multiplicity).then(spectral_order(&b.center, &a.center)))
        .cloned();
    let (cluster_center, max_pairwise_gap, jordan_rank_profile) = match primary {
        Some(c) => (c.center, c.max_pairwise_gap, c.rank_profile),
        None => (Complex64::new(0.0, 0.0), 0.0, vec![l]),
    };
    ExceptionalReport {
        alpha: None,
        tolerance: tol,
        cluster_center,
        max_pairwise_gap,
        jordan_rank_profile,
        diagonalizable,
        clusters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::doubled_j0;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degree_one_at_exceptional_point() {
        let t = doubled_j0(1.0, 1);
        let a = t.to_dense();
        assert!(frobenius(&(&a * &a)) == 0.0);
        assert!(frobenius(&a) > 0.0);
        let r = detect_exceptional_point(&t, default_cluster_tol(&t));
        assert_eq!(r.clusters.len(), 1);
        assert!(r.cluster_center.norm() < 1e-12);
        assert_eq!(r.jordan_rank_profile, vec![2, 1, 0]);
        assert!(!r.diagonalizable);
        assert!(r.is_exceptional());
    }

    #[test]
    fn separated_pair_is_diagonalizable() {
        let t = doubled_j0(0.6, 1);
        let r = detect_exceptional_point(&t, default_cluster_tol(&t));
        assert_eq!(r.clusters.len(), 2);
        assert!(r.diagonalizable);
        assert_eq!(r.max_pairwise_gap, 0.0);
    }

    #[test]
    fn identity_is_semisimple() {
        let one = c(1.0, 0.0);
        let t = TridiagonalMatrix::new(vec![one, one], vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]);
        let r = detect_exceptional_point(&t, 1e-8);
        assert_eq!(r.clusters.len(), 1);
        assert_eq!(r.clusters[0].multiplicity, 2);
        assert!(r.diagonalizable);
        assert_eq!(r.jordan_rank_profile, vec![2, 0, 0]);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let z = c(0.0, 0.0);
        let t = TridiagonalMatrix::new(vec![z, z], vec![z], vec![c(1.0, 0.0)]);
        let r = detect_exceptional_point(&t, 1e-8);
        assert_eq!(r.clusters[0].multiplicity, 2);
        assert_eq!(r.clusters[0].geometric_multiplicity, 1);
        assert!(!r.diagonalizable);
    }

    #[test]
    fn higher_degree_exceptional_points() {
        for m in 1..=4 {
            let t = doubled_j0(1.0, m);
            let r = detect_exceptional_point(&t, default_cluster_tol(&t));
            assert_eq!(r.clusters.len(), 1, "m = {m}");
            assert!(r.cluster_center.norm() < 1e-12);
            let expect: Vec<usize> = (0..=m + 1).map(|k| m + 1 - k).collect();
            assert_eq!(r.jordan_rank_profile, expect);
            assert!(!r.diagonalizable);
        }
    }
}
