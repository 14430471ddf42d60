use super::{Pqc, PqcError};

/// Image of one basis vector: `(row, coefficient)` pairs.
pub type SparseColumn = Vec<(usize, i64)>;

/// A PQC with carriers `(ℤ/k)^{rank_n}` and structure maps given by the
/// images of the basis vectors.
///
/// Elements are coefficient vectors; element indices enumerate them in
/// little-endian base `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPqc {
    modulus: u32,
    lo: i32,
    basis: Vec<Vec<String>>,
    dplus: Vec<Vec<SparseColumn>>,
    dminus: Vec<Vec<SparseColumn>>,
}

impl LinearPqc {
    /// `basis[i]` names the basis of degree `lo + i`; `dplus[i]`, `dminus[i]`
    /// hold one column per basis vector, with rows indexing degree `lo + i - 1`
    /// (empty for `i = 0`).
    pub fn new(
        modulus: u32,
        lo: i32,
        basis: Vec<Vec<String>>,
        dplus: Vec<Vec<SparseColumn>>,
        dminus: Vec<Vec<SparseColumn>>,
    ) -> Result<Self, PqcError> {
        if modulus < 2 {
            return Err(PqcError::Invalid(format!("modulus {modulus} is below 2")));
        }
        if basis.is_empty() || dplus.len() != basis.len() || dminus.len() != basis.len() {
            return Err(PqcError::Invalid(
                "one basis and two matrices per degree".into(),
            ));
        }
        for i in 1..basis.len() {
            for m in [&dplus[i], &dminus[i]] {
                if m.len() != basis[i].len() {
                    return Err(PqcError::Invalid(format!(
                        "matrix width mismatch at level {i}"
                    )));
                }
                if m.iter().flatten().any(|&(r, _)| r >= basis[i - 1].len()) {
                    return Err(PqcError::Invalid(format!("row out of range at level {i}")));
                }
            }
        }
        Ok(LinearPqc {
            modulus,
            lo,
            basis,
            dplus,
            dminus,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rank(&self, n: i32) -> usize {
        self.slot(n).map_or(0, |i| self.basis[i].len())
    }

    /// `k^rank` without overflow, for bound checks.
    pub fn cardinality(&self, n: i32) -> u128 {
        (0..self.rank(n)).fold(1u128, |acc, _| acc.saturating_mul(self.modulus as u128))
    }

    fn slot(&self, n: i32) -> Option<usize> {
        self.contains(n).then(|| (n - self.lo) as usize)
    }

    /// Applies a column-sparse matrix to `x`, producing a vector of length `rows`.
    pub fn apply_matrix(&self, columns: &[SparseColumn], rows: usize, x: &[u32]) -> Vec<u32> {
        let k = self.modulus as i64;
        let mut out = vec![0i64; rows];
        for (col, &c) in columns.iter().zip(x) {
            if c == 0 {
                continue;
            }
            for &(r, coef) in col {
                out[r] = (out[r] + coef * c as i64).rem_euclid(k);
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    fn structure(&self, maps: &[Vec<SparseColumn>], n: i32, x: &[u32]) -> Vec<u32> {
        match self.slot(n) {
            Some(i) if i > 0 => self.apply_matrix(&maps[i], self.basis[i - 1].len(), x),
            _ => self.zero(n - 1),
        }
    }
}

impl Pqc for LinearPqc {
    type Elem = Vec<u32>;

    fn lo(&self) -> i32 {
        self.lo
    }

    fn hi(&self) -> i32 {
        self.lo + self.basis.len() as i32 - 1
    }

    fn zero(&self, n: i32) -> Vec<u32> {
        vec![0; self.rank(n)]
    }

    fn add(&self, _n: i32, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + y) % self.modulus)
            .collect()
    }

    fn neg(&self, _n: i32, a: &Vec<u32>) -> Vec<u32> {
        a.iter()
            .map(|x| (self.modulus - x) % self.modulus)
            .collect()
    }

    fn dplus(&self, n: i32, x: &Vec<u32>) -> Vec<u32> {
        self.structure(&self.dplus, n, x)
    }

    fn dminus(&self, n: i32, x: &Vec<u32>) -> Vec<u32> {
        self.structure(&self.dminus, n, x)
    }

    /// The basis vectors.
    fn generators(&self, n: i32) -> Vec<Vec<u32>> {
        let r = self.rank(n);
        (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect()
    }

    fn size(&self, n: i32) -> Option<usize> {
        usize::try_from(self.cardinality(n)).ok()
    }

    fn element(&self, n: i32, mut index: usize) -> Vec<u32> {
        let k = self.modulus as usize;
        (0..self.rank(n))
            .map(|_| {
                let d = index % k;
                index /= k;
                d as u32
            })
            .collect()
    }

    fn index_of(&self, _n: i32, x: &Vec<u32>) -> usize {
        x.iter()
            .rev()
            .fold(0, |acc, &d| acc * self.modulus as usize + d as usize)
    }

    fn render(&self, n: i32, x: &Vec<u32>) -> String {
        let Some(i) = self.slot(n) else {
            return "0".into();
        };
        let terms: Vec<String> = x
            .iter()
            .zip(&self.basis[i])
            .filter(|(c, _)| **c != 0)
            .map(|(c, b)| {
                if *c == 1 {
                    b.clone()
                } else {
                    format!("{c}·{b}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> LinearPqc {
        LinearPqc::new(
            3,
            0,
            vec![vec!["a".into()], vec!["b".into(), "c".into()]],
            vec![vec![], vec![vec![(0, 1)], vec![(0, -1)]]],
            vec![vec![], vec![vec![], vec![(0, 2)]]],
        )
        .unwrap()
    }

    #[test]
    fn enumeration_round_trips() {
        let x = toy();
        assert_eq!(x.size(1), Some(9));
        for i in 0..9 {
            assert_eq!(x.index_of(1, &x.element(1, i)), i);
        }
    }

    #[test]
    fn structure_maps_reduce_mod_k() {
        let x = toy();
        assert_eq!(x.dplus(1, &vec![1, 2]), vec![2]);
        assert_eq!(x.dminus(1, &vec![1, 2]), vec![1]);
        assert_eq!(x.dplus(0, &vec![2]), Vec::<u32>::new());
        assert_eq!(x.render(1, &vec![2, 1]), "2·b + c");
    }
}
