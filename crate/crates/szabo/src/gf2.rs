//! Dense bit-matrix elimination over the two-element field, used by the
//! homology oracles and tests. The production page computation in
//! [`crate::spectral`] uses sparse cancellation instead; keeping this path
//! separate gives an independent rank check.

#[derive(Clone)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by row reduction; consumes the matrix contents.
    pub fn rank(mut self) -> usize {
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let mut pivot = None;
            for r in rank..self.rows {
                if self.data[r * w + word] & bit != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != rank {
                for k in 0..w {
                    self.data.swap(p * w + k, rank * w + k);
                }
            }
            for r in 0..self.rows {
                if r != rank && self.data[r * w + word] & bit != 0 {
                    for k in 0..w {
                        let v = self.data[rank * w + k];
                        self.data[r * w + k] ^= v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Homology ranks of a sparse differential `d` over F2, graded by the given
/// degree function: returns rank of ker(d)/im(d) per degree. `d[i]` lists
/// the targets of generator `i`; the degree of a target must exceed the
/// degree of its source by one.
pub fn graded_homology_ranks<D: Fn(usize) -> i64>(d: &[Vec<u32>], deg: D) -> std::collections::BTreeMap<i64, usize> {
    use std::collections::BTreeMap;
    let n = d.len();
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_deg.entry(deg(i)).or_default().push(i);
    }
    let mut pos: Vec<u32> = vec![0; n];
    for gens in by_deg.values() {
        for (k, &g) in gens.iter().enumerate() {
            pos[g] = k as u32;
        }
    }
    let mut rank_out: BTreeMap<i64, usize> = BTreeMap::new();
    for (&h, gens) in &by_deg {
        let next = by_deg.get(&(h + 1)).map_or(0, Vec::len);
        let mut m = BitMatrix::new(gens.len(), next.max(1));
        let mut nonzero = false;
        for (r, &g) in gens.iter().enumerate() {
            for &t in &d[g] {
                debug_assert_eq!(deg(t as usize), h + 1);
                m.set(r, pos[t as usize] as usize);
                nonzero = true;
            }
        }
        rank_out.insert(h, if nonzero { m.rank() } else { 0 });
    }
    let mut ranks = BTreeMap::new();
    for (&h, gens) in &by_deg {
        let out = rank_out[&h];
        let inc = rank_out.get(&(h - 1)).copied().unwrap_or(0);
        ranks.insert(h, gens.len() - out - inc);
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let mut m = BitMatrix::new(3, 3);
        m.set(0, 0);
        m.set(1, 1);
        m.set(2, 0);
        m.set(2, 1);
        assert_eq!(m.rank(), 2);
        let id = {
            let mut m = BitMatrix::new(70, 70);
            for i in 0..70 {
                m.set(i, i);
            }
            m
        };
        assert_eq!(id.rank(), 70);
    }

    #[test]
    fn circle_homology() {
        // two generators in degree 0, two in degree 1, boundary of a circle
        let d = vec![vec![2, 3], vec![2, 3], vec![], vec![]];
        let deg = |i: usize| if i < 2 { 0 } else { 1 };
        let h = graded_homology_ranks(&d, deg);
        assert_eq!(h[&0], 1);
        assert_eq!(h[&1], 1);
    }
}
