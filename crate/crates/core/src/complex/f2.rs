//! Dense bit vectors and incremental row reduction over the two-element field.

use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn get(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, k: usize, v: bool) {
        if v {
            self.words[k / 64] |= 1 << (k % 64);
        } else {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn flip(&mut self, k: usize) {
        self.words[k / 64] ^= 1 << (k % 64);
    }

    pub fn xor_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Index of the lowest set bit strictly below `limit`.
    pub fn first_one(&self, limit: usize) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != 0 {
                let k = w * 64 + word.trailing_zeros() as usize;
                return (k < limit).then_some(k);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, word)| {
            let mut word = *word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            })
        })
    }

    /// Parity of the bitwise product with `other`.
    pub fn dot(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

/// Rank of a list of rows.
pub fn rank(mut rows: Vec<BitRow>, ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| rows[k].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row.get(c) {
                row.xor_with(&pivot);
            }
        }
        r += 1;
    }
    r
}

/// Affine system `A x = b` kept in reduced row echelon form. Column `nvars`
/// holds the right-hand side.
#[derive(Debug, Clone)]
pub struct AffineSystem {
    nvars: usize,
    rows: Vec<BitRow>,
    pivots: Vec<usize>,
    pivot_of: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent;

impl AffineSystem {
    pub fn new(nvars: usize) -> Self {
        AffineSystem {
            nvars,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of: vec![None; nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blank(&self) -> BitRow {
        BitRow::zeros(self.nvars + 1)
    }

    /// Adds the equation `row[..nvars] . x = row[nvars]`.
    pub fn add(&mut self, mut row: BitRow) -> Result<(), Inconsistent> {
        for (k, &c) in self.pivots.iter().enumerate() {
            if row.get(c) {
                row.xor_with(&self.rows[k]);
            }
        }
        let Some(c) = row.first_one(self.nvars) else {
            return if row.get(self.nvars) {
                Err(Inconsistent)
            } else {
                Ok(())
            };
        };
        for existing in self.rows.iter_mut() {
            if existing.get(c) {
                existing.xor_with(&row);
            }
        }
        self.pivot_of[c] = Some(self.rows.len());
        self.rows.push(row);
        self.pivots.push(c);
        Ok(())
    }

    /// A uniformly random solution.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> BitRow {
        let mut x = BitRow::zeros(self.nvars + 1);
        for v in 0..self.nvars {
            if self.pivot_of[v].is_none() && rng.gen::<bool>() {
                x.set(v, true);
            }
        }
        x.set(self.nvars, true);
        for (k, &c) in self.pivots.iter().enumerate() {
            // row . (x with pivot cleared, rhs bit set) gives the pivot value
            let v = self.rows[k].dot(&x);
            x.set(c, v);
        }
        x.set(self.nvars, false);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rank_of_identity_and_dependent() {
        let mut rows = Vec::new();
        for k in 0..3 {
            let mut r = BitRow::zeros(3);
            r.set(k, true);
            rows.push(r);
        }
        let mut dep = rows[0].clone();
        dep.xor_with(&rows[1]);
        rows.push(dep);
        assert_eq!(rank(rows, 3), 3);
    }

    #[test]
    fn affine_solutions_satisfy_equations() {
        let mut sys = AffineSystem::new(4);
        let mut e1 = sys.blank();
        e1.set(0, true);
        e1.set(1, true);
        e1.set(4, true);
        let mut e2 = sys.blank();
        e2.set(1, true);
        e2.set(2, true);
        sys.add(e1.clone()).unwrap();
        sys.add(e2.clone()).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for _ in 0..20 {
            let x = sys.sample(&mut rng);
            assert!(x.get(0) ^ x.get(1));
            assert!(!(x.get(1) ^ x.get(2)));
        }
        let mut bad = sys.blank();
        bad.set(0, true);
        bad.set(2, true);
        assert_eq!(sys.add(bad), Err(Inconsistent));
    }
}
