//! An independently coded Khovanov homology oracle over F2.
//!
//! This module deliberately re-derives the cube differential from the
//! merge/split rules alone, without touching [`crate::maps`], so it can
//! serve as a check on the E^2 page.

use crate::cube::{resolve, CircleSet, Resolution};
use crate::diagram::{BasePoint, LinkDiagram};
use crate::gf2::BitMatrix;
use std::collections::BTreeMap;

pub struct KhovanovComplex {
    pub n: usize,
    pub n_plus: i64,
    pub n_minus: i64,
    circle_counts: Vec<u32>,
    /// generator -> sorted targets
    pub d: Vec<Vec<u32>>,
    gens: Vec<(u32, u32)>,
}

fn marked_circle(cs: &CircleSet, d: &LinkDiagram, p: BasePoint) -> u32 {
    match p {
        BasePoint::Edge(e) => cs.edge_circle[e],
        BasePoint::FreeLoop(l) => {
            let key = (d.n_edges() + l) as u32;
            cs.circles.iter().position(|c| c.key == key).unwrap() as u32
        }
    }
}

impl KhovanovComplex {
    pub fn build(diag: &LinkDiagram, reduced: Option<BasePoint>) -> KhovanovComplex {
        let n = diag.n();
        let size = 1usize << n;
        let resolutions: Vec<CircleSet> = (0..size).map(|i| resolve(diag, Resolution(i as u32))).collect();
        let mut offsets = vec![0u64; size + 1];
        for i in 0..size {
            offsets[i + 1] = offsets[i] + (1u64 << resolutions[i].len());
        }
        let total = offsets[size];
        // dense index -> compact index (identity when unreduced)
        let mut index_map = vec![u32::MAX; total as usize];
        let mut gens = Vec::new();
        for i in 0..size {
            let t = resolutions[i].len();
            let keep_bit = reduced.map(|p| marked_circle(&resolutions[i], diag, p));
            for m in 0..1u64 << t {
                if let Some(b) = keep_bit {
                    if m >> b & 1 == 0 {
                        continue;
                    }
                }
                index_map[(offsets[i] + m) as usize] = gens.len() as u32;
                gens.push((i as u32, m as u32));
            }
        }
        let mut d: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        for (gi, &(i, m)) in gens.iter().enumerate() {
            let cs_i = &resolutions[i as usize];
            for b in 0..n {
                if i >> b & 1 == 1 {
                    continue;
                }
                let j = i | 1 << b;
                let cs_j = &resolutions[j as usize];
                // circles of I map to circles of J away from the surgery
                let [s0, s1] = cs_i.site_circle[b];
                let [e0, e1] = cs_j.site_circle[b];
                let mut out: Vec<u32> = Vec::new();
                if s0 != s1 {
                    // merge; e0 == e1
                    let y = e0;
                    let (x0, x1) = (m >> s0 & 1, m >> s1 & 1);
                    if x0 & x1 == 1 {
                        continue; // x.x = 0
                    }
                    let mut t = transfer(cs_i, cs_j, m, s0, s1);
                    if x0 | x1 == 1 {
                        t |= 1 << y;
                    }
                    out.push(t);
                } else {
                    // split; e0 != e1
                    let base = transfer(cs_i, cs_j, m, s0, s0);
                    if m >> s0 & 1 == 1 {
                        out.push(base | 1 << e0 | 1 << e1);
                    } else {
                        out.push(base | 1 << e0);
                        out.push(base | 1 << e1);
                    }
                }
                for t in out {
                    let dense = offsets[j as usize] + t as u64;
                    let ci = index_map[dense as usize];
                    if ci != u32::MAX {
                        d[gi].push(ci);
                    }
                }
            }
            d[gi].sort_unstable();
        }
        KhovanovComplex {
            n,
            n_plus: diag.n_plus() as i64,
            n_minus: diag.n_minus() as i64,
            circle_counts: resolutions.iter().map(|c| c.len() as u32).collect(),
            d,
            gens,
        }
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn h(&self, g: usize) -> i64 {
        let (i, _) = self.gens[g];
        i.count_ones() as i64 - self.n_minus
    }

    /// Quantum grading. The reduced variant keeps the subcomplex grading
    /// (no shift): this is the normalization the page tables are reported in.
    pub fn q(&self, g: usize) -> i64 {
        let (i, m) = self.gens[g];
        let t = self.circle_counts[i as usize] as i64;
        let gr = t - 2 * m.count_ones() as i64;
        gr + i.count_ones() as i64 + self.n_plus - 2 * self.n_minus
    }

    /// Bigraded homology ranks, (h, q) -> rank.
    pub fn homology(&self) -> BTreeMap<(i64, i64), usize> {
        let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for g in 0..self.gen_count() {
            blocks.entry((self.h(g), self.q(g))).or_default().push(g);
        }
        let mut pos = vec![0u32; self.gen_count()];
        for gens in blocks.values() {
            for (k, &g) in gens.iter().enumerate() {
                pos[g] = k as u32;
            }
        }
        let mut rank_out: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (&(h, q), gens) in &blocks {
            let next = blocks.get(&(h + 1, q)).map_or(0, Vec::len);
            if next == 0 {
                rank_out.insert((h, q), 0);
                continue;
            }
            let mut m = BitMatrix::new(gens.len(), next);
            for (r, &g) in gens.iter().enumerate() {
                for &t in &self.d[g] {
                    m.set(r, pos[t as usize] as usize);
                }
            }
            rank_out.insert((h, q), m.rank());
        }
        let mut ranks = BTreeMap::new();
        for (&(h, q), gens) in &blocks {
            let out = rank_out[&(h, q)];
            let inc = rank_out.get(&(h - 1, q)).copied().unwrap_or(0);
            let r = gens.len() - out - inc;
            if r > 0 {
                ranks.insert((h, q), r);
            }
        }
        ranks
    }
}

/// Move a monomial across a surgery, dropping the labels of the circles
/// `s0`, `s1` being surgered (the caller re-adds labels on the new circles).
fn transfer(cs_i: &CircleSet, cs_j: &CircleSet, m: u32, s0: u32, s1: u32) -> u32 {
    let mut out = 0u32;
    let mut mm = m & !(1 << s0) & !(1 << s1);
    while mm != 0 {
        let c = mm.trailing_zeros();
        mm &= mm - 1;
        let circle = &cs_i.circles[c as usize];
        let j = if circle.edges.is_empty() {
            cs_j.circles.iter().position(|x| x.key == circle.key).unwrap() as u32
        } else {
            cs_j.edge_circle[circle.edges[0] as usize]
        };
        out |= 1 << j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_squares_to_zero() {
        for d in [
            LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap(),
            LinkDiagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap(),
            LinkDiagram::torus_link(3, 3).unwrap(),
        ] {
            for reduced in [None, Some(d.default_basepoint())] {
                let c = KhovanovComplex::build(&d, reduced);
                for g in 0..c.gen_count() {
                    let mut acc = std::collections::HashMap::new();
                    for &t in &c.d[g] {
                        for &u in &c.d[t as usize] {
                            *acc.entry(u).or_insert(0u32) ^= 1;
                        }
                    }
                    assert!(acc.values().all(|&v| v == 0), "d^2 != 0");
                }
            }
        }
    }

    #[test]
    fn unknot_homology() {
        let d = LinkDiagram::unknot(1);
        let c = KhovanovComplex::build(&d, None);
        let h = c.homology();
        assert_eq!(h.len(), 2);
        assert_eq!(h[&(0, 1)], 1);
        assert_eq!(h[&(0, -1)], 1);
    }

    #[test]
    fn left_trefoil_homology() {
        let d = LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        // unreduced Kh over F2 of the left-handed trefoil
        let c = KhovanovComplex::build(&d, None);
        let h = c.homology();
        let expected: BTreeMap<(i64, i64), usize> = [
            ((0, -1), 1),
            ((0, -3), 1),
            ((-2, -5), 1),
            ((-2, -7), 1),
            ((-3, -7), 1),
            ((-3, -9), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(h, expected);
    }

    #[test]
    fn reduced_trefoil_rank() {
        let d = LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let c = KhovanovComplex::build(&d, Some(d.default_basepoint()));
        let h = c.homology();
        let total: usize = h.values().sum();
        assert_eq!(total, 3);
        let expected: BTreeMap<(i64, i64), usize> =
            [((0, -3), 1), ((-2, -7), 1), ((-3, -9), 1)].into_iter().collect();
        assert_eq!(h, expected);
    }

    #[test]
    fn figure_eight_reduced() {
        let d = LinkDiagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        let c = KhovanovComplex::build(&d, Some(d.default_basepoint()));
        let h = c.homology();
        let total: usize = h.values().sum();
        assert_eq!(total, 5);
        // thin: q - 2h = -1 throughout
        assert!(h.keys().all(|&(hh, q)| q - 2 * hh == -1));
    }
}
