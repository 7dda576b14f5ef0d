use num_traits::{One, Zero};

use super::graph::Multigraph;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rational::{int, Rational};

/// Field over which column independence is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rational,
    /// Entries must be 0 or 1; elimination on packed bit columns.
    Gf2,
}

/// Column matroid of an exact matrix: columns are the elements.
#[derive(Debug, Clone)]
pub struct LinearMatroid {
    rows: usize,
    cols: usize,
    /// Row-major entries.
    entries: Vec<Rational>,
    field: Field,
    /// Packed GF(2) columns, present only for `Field::Gf2`.
    bit_columns: Vec<Vec<u64>>,
}

impl LinearMatroid {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>, field: Field) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut bit_columns = Vec::new();
        if field == Field::Gf2 {
            let words = rows.div_ceil(64).max(1);
            bit_columns = vec![vec![0u64; words]; cols];
            for r in 0..rows {
                for c in 0..cols {
                    let v = &entries[r * cols + c];
                    if v.is_one() {
                        bit_columns[c][r / 64] |= 1 << (r % 64);
                    } else if !v.is_zero() {
                        return Err(Error::InvalidInput(format!(
                            "GF(2) matrix entry ({r},{c}) is not 0 or 1"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
            field,
            bit_columns,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, field: Field) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect(), field)
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { int(1) } else { int(0) })
            .collect();
        Self::new(n, n, entries, Field::Rational).expect("square")
    }

    /// Vertex-edge incidence matrix over the rationals (`+1` at the first
    /// endpoint, `-1` at the second; self-loops give zero columns).
    pub fn incidence(g: &Multigraph) -> Self {
        let (rows, cols) = (g.vertex_count(), g.edge_count());
        let mut entries = vec![int(0); rows * cols];
        for (c, &(u, v)) in g.edges().iter().enumerate() {
            if u != v {
                entries[u * cols + c] = int(1);
                entries[v * cols + c] = int(-1);
            }
        }
        Self::new(rows, cols, entries, Field::Rational).expect("consistent dimensions")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    /// Rows where column `col` is nonzero.
    pub fn column_support(&self, col: usize) -> Vec<usize> {
        (0..self.rows).filter(|&r| !self.entry(r, col).is_zero()).collect()
    }

    /// Columns where row `row` is nonzero.
    pub fn row_support(&self, row: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| !self.entry(row, c).is_zero()).collect()
    }

    fn rank_rational(&self, set: &[usize]) -> usize {
        // Rows of `vectors` are the selected columns.
        let mut vectors: Vec<Vec<Rational>> = set
            .iter()
            .map(|&c| (0..self.rows).map(|r| self.entry(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for pivot_col in 0..self.rows {
            let Some(p) = (rank..vectors.len()).find(|&i| !vectors[i][pivot_col].is_zero()) else {
                continue;
            };
            vectors.swap(rank, p);
            let pivot = vectors[rank][pivot_col].clone();
            for i in rank + 1..vectors.len() {
                if vectors[i][pivot_col].is_zero() {
                    continue;
                }
                let factor = &vectors[i][pivot_col] / &pivot;
                for j in pivot_col..self.rows {
                    let delta = &factor * &vectors[rank][j];
                    vectors[i][j] -= delta;
                }
            }
            rank += 1;
            if rank == vectors.len() {
                break;
            }
        }
        rank
    }

    fn rank_gf2(&self, set: &[usize]) -> usize {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for &c in set {
            let mut v = self.bit_columns[c].clone();
            for b in &basis {
                let lead = leading_bit(b);
                if v[lead / 64] >> (lead % 64) & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            if v.iter().any(|&w| w != 0) {
                // Keep basis reduced so leading bits stay distinct.
                let lead = leading_bit(&v);
                for b in basis.iter_mut() {
                    if b[lead / 64] >> (lead % 64) & 1 == 1 {
                        for (x, y) in b.iter_mut().zip(&v) {
                            *x ^= y;
                        }
                    }
                }
                basis.push(v);
            }
        }
        basis.len()
    }
}

fn leading_bit(v: &[u64]) -> usize {
    for (i, &w) in v.iter().enumerate().rev() {
        if w != 0 {
            return i * 64 + 63 - w.leading_zeros() as usize;
        }
    }
    unreachable!("zero vector has no leading bit")
}

impl Matroid for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.cols
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.rows && self.rank(set) == set.len()
    }

    fn rank(&self, set: &[usize]) -> usize {
        match self.field {
            Field::Rational => self.rank_rational(set),
            Field::Gf2 => self.rank_gf2(set),
        }
    }
}

/// Largest number of nonzero entries in any column (`k` of a `k`-column-sparse matrix).
pub fn column_sparsity(m: &LinearMatroid) -> usize {
    (0..m.cols())
        .map(|c| m.column_support(c).len())
        .max()
        .unwrap_or(0)
}

impl LinearMatroid {
    pub fn column_sparsity(&self) -> usize {
        column_sparsity(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_axioms, loops, mask_elements};
    use crate::rational::ratio;
    use crate::zoo::GraphicMatroid;

    /// Independent iff the Gram determinant is nonzero, via cofactor expansion.
    fn brute_independent(m: &LinearMatroid, set: &[usize]) -> bool {
        let k = set.len();
        let mut gram = vec![vec![int(0); k]; k];
        for a in 0..k {
            for b in 0..k {
                for r in 0..m.rows() {
                    gram[a][b] += m.entry(r, set[a]) * m.entry(r, set[b]);
                }
            }
        }
        !det(&gram).is_zero()
    }

    fn det(a: &[Vec<Rational>]) -> Rational {
        if a.is_empty() {
            return int(1);
        }
        let mut total = int(0);
        for j in 0..a.len() {
            let minor: Vec<Vec<Rational>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &a[0][j] * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn rational_rank_matches_gram_determinant() {
        let m = LinearMatroid::from_rows(
            vec![
                vec![int(1), int(0), int(1), ratio(1, 2), int(0)],
                vec![int(0), int(1), int(1), int(0), int(0)],
                vec![int(2), int(0), int(2), int(1), int(0)],
            ],
            Field::Rational,
        )
        .unwrap();
        for mask in 0u64..32 {
            let set = mask_elements(mask);
            assert_eq!(m.is_independent(&set), brute_independent(&m, &set), "{set:?}");
        }
        assert_eq!(loops(&m), vec![4]);
        check_axioms(&m).unwrap();
    }

    #[test]
    fn small_matrix_has_rank_two() {
        let m = LinearMatroid::from_rows(
            vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]],
            Field::Rational,
        )
        .unwrap();
        assert_eq!(m.rank(&[0, 1, 2]), 2);
    }

    #[test]
    fn gf2_differs_from_rationals() {
        // Over GF(2) the columns (1,1,0),(0,1,1),(1,0,1) are dependent.
        let rows = vec![
            vec![int(1), int(0), int(1)],
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(1)],
        ];
        let q = LinearMatroid::from_rows(rows.clone(), Field::Rational).unwrap();
        let f2 = LinearMatroid::from_rows(rows, Field::Gf2).unwrap();
        assert_eq!(q.rank(&[0, 1, 2]), 3);
        assert_eq!(f2.rank(&[0, 1, 2]), 2);
        check_axioms(&f2).unwrap();
        assert!(LinearMatroid::from_rows(vec![vec![int(2)]], Field::Gf2).is_err());
    }

    #[test]
    fn incidence_matrix_represents_graphic_matroid() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 3), (0, 1)]);
        let lin = LinearMatroid::incidence(&g);
        let gr = GraphicMatroid::new(g);
        for mask in 0u64..64 {
            let set = mask_elements(mask);
            assert_eq!(lin.is_independent(&set), gr.is_independent(&set));
        }
    }

    #[test]
    fn sparsity_examples() {
        let g = Multigraph::complete(4);
        assert_eq!(column_sparsity(&LinearMatroid::incidence(&g)), 2);
        assert_eq!(column_sparsity(&LinearMatroid::identity(3)), 1);
        let with_zero = LinearMatroid::from_rows(
            vec![vec![int(1), int(0), int(3)], vec![int(0), int(0), int(1)]],
            Field::Rational,
        )
        .unwrap();
        assert_eq!(column_sparsity(&with_zero), 2);
        assert_eq!(loops(&with_zero), vec![1]);
    }
}
