//! The generalized Kronecker delta: the inner product of two wedge products
//! of `p` frame covectors, expanded as the `p x p` determinant
//! `det(delta_{i_a j_b}) = sum_{sigma} sgn(sigma) prod_a delta_{i_a j_sigma(a)}`.

use crate::jet_geometry::permutations_with_sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedDelta {
    size: usize,
}

impl GeneralizedDelta {
    pub fn new(size: usize) -> Self {
        GeneralizedDelta { size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The signed permutation terms of the determinant expansion.
    pub fn terms(&self) -> Vec<(Vec<usize>, i8)> {
        permutations_with_sign(self.size)
    }

    /// Value on explicit index tuples: 0 unless `i` is injective and `j` is a
    /// permutation of it, in which case the sign of that permutation.
    pub fn value(&self, i: &[usize], j: &[usize]) -> i64 {
        assert_eq!(i.len(), self.size);
        assert_eq!(j.len(), self.size);
        let mut perm = Vec::with_capacity(self.size);
        for jb in j {
            let mut found = usize::MAX;
            for (a, ia) in i.iter().enumerate() {
                if ia == jb {
                    if found != usize::MAX {
                        return 0; // repeated entry in i
                    }
                    found = a;
                }
            }
            if found == usize::MAX {
                return 0;
            }
            perm.push(found);
        }
        // j_b = i_{perm[b]}; injectivity of the match implies injectivity of i
        // on the matched positions, but repeats inside j must also die.
        let mut seen = vec![false; self.size];
        for &p in &perm {
            if seen[p] {
                return 0;
            }
            seen[p] = true;
        }
        let mut inversions = 0;
        for a in 0..self.size {
            for b in a + 1..self.size {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}
