use num_traits::Zero;

use super::echelon::Echelon;
use super::rational::int;
use super::{ExactqError, Rational, SparseVec};

/// Sparse row-major matrix over ℚ. Stored rows are sorted by column and hold
/// no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

/// Adds `c·src` into the sorted sparse vector `dst`.
pub fn axpy(dst: &mut SparseVec, c: &Rational, src: &[(usize, Rational)]) {
    if c.is_zero() || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, c * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + c * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *dst = out;
}

/// Collects `(index, coeff)` pairs into a sorted sparse vector, summing
/// duplicates and dropping zeros.
pub fn collect_sparse(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut map = std::collections::BTreeMap::<usize, Rational>::new();
    for (i, c) in entries {
        *map.entry(i).or_insert_with(Rational::zero) += c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl RationalMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, int(1))]).collect();
        Self {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    pub fn from_dense(entries: &[Vec<i64>]) -> Self {
        let ncols = entries.first().map_or(0, Vec::len);
        let rows = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(j, x)| (j, int(*x)))
                    .collect()
            })
            .collect();
        Self {
            nrows: entries.len(),
            ncols,
            rows,
        }
    }

    /// Builds a matrix from sparse rows; entries are re-sorted and zeros dropped.
    pub fn from_sparse_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        let rows: Vec<SparseVec> = rows.into_iter().map(collect_sparse).collect();
        for r in &rows {
            if let Some((c, _)) = r.last() {
                assert!(*c < ncols, "column index {c} out of bounds {ncols}");
            }
        }
        Self {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]` (a sparse vector of
    /// length `nrows`). This is the natural layout for linear maps given by the
    /// images of basis vectors.
    pub fn from_sparse_columns(nrows: usize, columns: &[SparseVec]) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                assert!(*i < nrows, "row index {i} out of bounds {nrows}");
                if !x.is_zero() {
                    rows[*i].push((j, x.clone()));
                }
            }
        }
        Self {
            nrows,
            ncols: columns.len(),
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                rows[*j].push((i, x.clone()));
            }
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, ExactqError> {
        if self.ncols != other.nrows {
            return Err(ExactqError::DimensionMismatch {
                left: (self.nrows, self.ncols),
                right: (other.nrows, other.ncols),
            });
        }
        let rows = crate::par::map(&self.rows, |r| {
            let mut acc: SparseVec = Vec::new();
            for (k, x) in r {
                axpy(&mut acc, x, &other.rows[*k]);
            }
            acc
        });
        Ok(RationalMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    /// Matrix times a sparse column vector.
    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        let dense_v: std::collections::HashMap<usize, &Rational> =
            v.iter().map(|(i, x)| (*i, x)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let mut s = Rational::zero();
                for (j, x) in r {
                    if let Some(y) = dense_v.get(j) {
                        s += x * *y;
                    }
                }
                (!s.is_zero()).then_some((i, s))
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r);
            if e.rank() == self.ncols {
                break;
            }
        }
        e
    }

    /// Reduced row echelon form and its strictly increasing pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let (mut rows, pivots) = self.echelon().into_rref();
        rows.resize(self.nrows, Vec::new());
        (
            RationalMatrix {
                nrows: self.nrows,
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        // Row rank equals column rank; eliminate along the shorter side.
        if self.nrows > self.ncols {
            self.transpose().echelon().rank()
        } else {
            self.echelon().rank()
        }
    }

    /// A basis of `{v : self·v = 0}`, one vector per free column of the rref.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v: SparseVec = pivots
                    .iter()
                    .enumerate()
                    .filter_map(|(r, &p)| {
                        let x = rref.get(r, f);
                        (!x.is_zero()).then(|| (p, -x))
                    })
                    .collect();
                v.push((f, int(1)));
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }

    /// Non-zero rows of the rref, i.e. the canonical basis of the row space.
    pub fn row_space_basis(&self) -> Vec<SparseVec> {
        let (rows, _) = self.echelon().into_rref();
        rows
    }
}

/// True iff `a` and `b` have the same row space.
pub fn row_space_equal(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool, ExactqError> {
    if a.ncols != b.ncols {
        return Err(ExactqError::DimensionMismatch {
            left: (a.nrows, a.ncols),
            right: (b.nrows, b.ncols),
        });
    }
    Ok(a.row_space_basis() == b.row_space_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = m(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = RationalMatrix::zeros(2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
    }

    #[test]
    fn ranks() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::identity(5).rank(), 5);
        // hand reduction: rows are independent, pivots in columns 0 and 1
        assert_eq!(m(&[&[1, 1, 0], &[0, 1, 1]]).rank(), 2);
        assert_eq!(m(&[&[1, 1], &[0, 1], &[1, 2]]).rank(), 2);
    }

    #[test]
    fn kernels() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(k[0], vec![(0, int(-2)), (1, int(1))]);
        assert!(a.mul_vec(&k[0]).is_empty());
        assert!(RationalMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn row_spaces() {
        assert!(row_space_equal(&m(&[&[1, 0]]), &m(&[&[2, 0]])).unwrap());
        assert!(!row_space_equal(&m(&[&[1, 0]]), &m(&[&[0, 1]])).unwrap());
        let r = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let p = m(&[&[0, 1, 1], &[1, 2, 3]]);
        assert!(row_space_equal(&r, &p).unwrap());
        assert!(row_space_equal(&m(&[&[1, 0]]), &m(&[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&m(&[&[1, 2, 3]])).is_err());
    }
}
