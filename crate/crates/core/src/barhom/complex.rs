use serde::Serialize;

use crate::exactq::{RationalMatrix, SparseVec};

use super::BarError;

/// Chain complex concentrated in one weight, with degrees `0..=top`.
/// `boundary(p)` maps degree `p` to degree `p − 1` (rows index the target).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    weight: usize,
    labels: Vec<Vec<String>>,
    boundaries: Vec<RationalMatrix>,
}

impl ChainComplex {
    /// `labels[p]` names the basis of degree `p`; `boundaries[p-1]` is the
    /// boundary out of degree `p`, for `p = 1..=top`.
    pub fn new(weight: usize, labels: Vec<Vec<String>>, boundaries: Vec<RationalMatrix>) -> Self {
        assert_eq!(boundaries.len() + 1, labels.len(), "one boundary per positive degree");
        for (p, d) in boundaries.iter().enumerate() {
            assert_eq!(d.ncols(), labels[p + 1].len(), "boundary source size");
            assert_eq!(d.nrows(), labels[p].len(), "boundary target size");
        }
        Self {
            weight,
            labels,
            boundaries,
        }
    }

    /// Builds boundary matrices from per-source-element columns.
    pub fn from_columns(weight: usize, labels: Vec<Vec<String>>, columns: Vec<Vec<SparseVec>>) -> Self {
        let boundaries = columns
            .iter()
            .enumerate()
            .map(|(p, cols)| RationalMatrix::from_sparse_columns(labels[p].len(), cols))
            .collect();
        Self::new(weight, labels, boundaries)
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn top_degree(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn dim(&self, p: usize) -> usize {
        self.labels.get(p).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, p: usize) -> &[String] {
        &self.labels[p]
    }

    /// Boundary out of degree `p ≥ 1`.
    pub fn boundary(&self, p: usize) -> &RationalMatrix {
        &self.boundaries[p - 1]
    }

    /// Exact check of `d_{p−1} ∘ d_p = 0` for every `p`.
    pub fn check_d_squared(&self) -> Result<(), BarError> {
        let bad = crate::par::map_range(self.top_degree().saturating_sub(1), |k| {
            let p = k + 2;
            let prod = self.boundary(p - 1).mul(self.boundary(p)).expect("composable");
            (!prod.is_zero()).then_some(p)
        });
        match bad.into_iter().flatten().next() {
            Some(degree) => Err(BarError::NotAComplex { degree }),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub degree: usize,
    pub chain_dim: usize,
    pub boundary_rank: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub weight: usize,
    pub entries: Vec<HomologyEntry>,
}

impl HomologyReport {
    pub fn dim(&self, degree: usize) -> usize {
        self.entries.iter().find(|e| e.degree == degree).map_or(0, |e| e.dim)
    }

    /// Degrees carrying nonzero homology.
    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.dim > 0).map(|e| e.degree).collect()
    }

    pub fn concentrated_in(&self, degree: usize) -> bool {
        self.entries.iter().all(|e| e.dim == 0 || e.degree == degree)
    }
}

/// Homology dimensions by rank–nullity, after checking `d² = 0`.
pub fn homology_ranks(c: &ChainComplex) -> Result<HomologyReport, BarError> {
    c.check_d_squared()?;
    let top = c.top_degree();
    // rank of the boundary out of each degree; degree 0 has none
    let ranks: Vec<usize> = crate::par::map_range(top + 1, |p| if p == 0 { 0 } else { c.boundary(p).rank() });
    let entries = (0..=top)
        .map(|p| {
            let incoming = if p < top { ranks[p + 1] } else { 0 };
            HomologyEntry {
                degree: p,
                chain_dim: c.dim(p),
                boundary_rank: ranks[p],
                dim: c.dim(p) - ranks[p] - incoming,
            }
        })
        .collect();
    Ok(HomologyReport {
        weight: c.weight(),
        entries,
    })
}
