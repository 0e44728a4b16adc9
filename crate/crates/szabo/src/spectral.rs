//! Page computation by iterated cancellation of the filtered differential.
//!
//! The page `E^i` is the generator set left after every term of filtration
//! degree below `i` has been canceled; canceling a term toggles the
//! composite paths through it (Gaussian elimination over F2, one pivot at
//! a time). Pivots are chosen greedily to minimize fill-in among the
//! minimum-degree terms.

use crate::complex::FilteredComplex;
use crate::gf2::BitMatrix;
use crate::khovanov::KhovanovComplex;
use crate::poly::PoincarePolynomial;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub k: u32,
    pub ranks: BTreeMap<(i32, i32), u32>,
}

impl Page {
    pub fn total_rank(&self) -> u64 {
        self.ranks.values().map(|&r| r as u64).sum()
    }
    pub fn polynomial(&self) -> PoincarePolynomial {
        PoincarePolynomial::from_ranks(&self.ranks)
    }
    /// Reindex (t, q) -> (1/t, 1/q).
    pub fn mirrored(&self) -> Page {
        Page {
            k: self.k,
            ranks: self.ranks.iter().map(|(&(h, q), &r)| ((-h, -q), r)).collect(),
        }
    }
    pub fn shifted_q(&self, dq: i32) -> Page {
        Page {
            k: self.k,
            ranks: self.ranks.iter().map(|(&(h, q), &r)| ((h, q + dq), r)).collect(),
        }
    }
}

#[derive(Debug, Default)]
pub struct CancellationLog {
    /// canceled pivot pairs with their filtration degree
    pub pivots: Vec<(u32, u32, i32)>,
}

enum Row {
    Small(Vec<u32>),
    Big { words: Vec<u64>, len: usize },
}

impl Row {
    fn new() -> Row {
        Row::Small(Vec::new())
    }
    fn len(&self) -> usize {
        match self {
            Row::Small(v) => v.len(),
            Row::Big { len, .. } => *len,
        }
    }
    fn contains(&self, x: u32) -> bool {
        match self {
            Row::Small(v) => v.binary_search(&x).is_ok(),
            Row::Big { words, .. } => words[x as usize / 64] >> (x % 64) & 1 == 1,
        }
    }
    /// flip membership of x; returns true when x is now present
    fn toggle(&mut self, x: u32, universe: usize, threshold: usize) -> bool {
        match self {
            Row::Small(v) => {
                let now = match v.binary_search(&x) {
                    Ok(i) => {
                        v.remove(i);
                        false
                    }
                    Err(i) => {
                        v.insert(i, x);
                        true
                    }
                };
                if v.len() > threshold {
                    let mut words = vec![0u64; universe.div_ceil(64)];
                    for &y in v.iter() {
                        words[y as usize / 64] |= 1 << (y % 64);
                    }
                    *self = Row::Big { words, len: self.len() };
                }
                now
            }
            Row::Big { words, len } => {
                let w = &mut words[x as usize / 64];
                let bit = 1u64 << (x % 64);
                *w ^= bit;
                if *w & bit != 0 {
                    *len += 1;
                    true
                } else {
                    *len -= 1;
                    false
                }
            }
        }
    }
    fn remove(&mut self, x: u32) {
        match self {
            Row::Small(v) => {
                if let Ok(i) = v.binary_search(&x) {
                    v.remove(i);
                }
            }
            Row::Big { words, len } => {
                let w = &mut words[x as usize / 64];
                let bit = 1u64 << (x % 64);
                if *w & bit != 0 {
                    *w &= !bit;
                    *len -= 1;
                }
            }
        }
    }
    fn to_vec(&self) -> Vec<u32> {
        match self {
            Row::Small(v) => v.clone(),
            Row::Big { words, .. } => {
                let mut out = Vec::new();
                for (wi, &w) in words.iter().enumerate() {
                    let mut ww = w;
                    while ww != 0 {
                        out.push((wi * 64) as u32 + ww.trailing_zeros());
                        ww &= ww - 1;
                    }
                }
                out
            }
        }
    }
    fn clear(&mut self) {
        *self = Row::Small(Vec::new());
    }
}

/// Mutable cancellation state.
pub struct Canceler {
    h: Vec<i32>,
    q: Vec<i32>,
    out: Vec<Row>,
    inc: Vec<Row>,
    alive: Vec<bool>,
    universe: usize,
    threshold: usize,
}

impl Canceler {
    pub fn new(fc: FilteredComplex) -> Canceler {
        let n = fc.h.len();
        let threshold = (n / 64).max(64);
        let mut out: Vec<Row> = Vec::with_capacity(n);
        let mut inc: Vec<Row> = (0..n).map(|_| Row::new()).collect();
        for (i, row) in fc.d.iter().enumerate() {
            for &t in row {
                debug_assert!(fc.h[t as usize] > fc.h[i], "differential must raise h");
                match &mut inc[t as usize] {
                    Row::Small(v) => v.push(i as u32),
                    _ => unreachable!(),
                }
            }
            out.push(Row::Small(row.clone()));
        }
        for r in &mut inc {
            if let Row::Small(v) = r {
                v.sort_unstable();
            }
        }
        Canceler {
            h: fc.h,
            q: fc.q,
            out,
            inc,
            alive: vec![true; n],
            universe: n,
            threshold,
        }
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn snapshot(&self, k: u32) -> Page {
        let mut ranks: BTreeMap<(i32, i32), u32> = BTreeMap::new();
        for g in 0..self.universe {
            if self.alive[g] {
                *ranks.entry((self.h[g], self.q[g])).or_insert(0) += 1;
            }
        }
        Page { k, ranks }
    }

    fn degree(&self, k: u32, l: u32) -> i32 {
        self.h[l as usize] - self.h[k as usize]
    }

    fn cost(&self, k: u32, l: u32) -> u64 {
        (self.inc[l as usize].len() as u64 - 1) * (self.out[k as usize].len() as u64 - 1)
    }

    /// Cancel the unit term (k, l), correcting all composite paths.
    pub fn cancel(&mut self, k: u32, l: u32, heap: Option<(&mut BinaryHeap<Reverse<(u64, u32, u32)>>, i32)>) {
        debug_assert!(self.alive[k as usize] && self.alive[l as usize]);
        debug_assert!(self.out[k as usize].contains(l));
        self.alive[k as usize] = false;
        self.alive[l as usize] = false;
        let preds: Vec<u32> = self.inc[l as usize].to_vec().into_iter().filter(|&i| i != k).collect();
        let succs: Vec<u32> = self.out[k as usize].to_vec().into_iter().filter(|&j| j != l).collect();
        // detach k and l from everything
        for &j in &self.out[k as usize].to_vec() {
            self.inc[j as usize].remove(k);
        }
        for &i in &self.inc[k as usize].to_vec() {
            self.out[i as usize].remove(k);
        }
        for &i in &self.inc[l as usize].to_vec() {
            self.out[i as usize].remove(l);
        }
        for &j in &self.out[l as usize].to_vec() {
            self.inc[j as usize].remove(l);
        }
        self.out[k as usize].clear();
        self.inc[k as usize].clear();
        self.out[l as usize].clear();
        self.inc[l as usize].clear();
        // toggle the composites
        let mut heap = heap;
        for &i in &preds {
            for &j in &succs {
                let now = self.out[i as usize].toggle(j, self.universe, self.threshold);
                self.inc[j as usize].toggle(i, self.universe, self.threshold);
                if now {
                    if let Some((h, want)) = heap.as_mut() {
                        if self.degree(i, j) == *want {
                            let c = self.cost(i, j);
                            h.push(Reverse((c, i, j)));
                        }
                    }
                }
            }
        }
    }

    fn min_degree(&self) -> Option<i32> {
        let mut best: Option<i32> = None;
        for g in 0..self.universe {
            if !self.alive[g] {
                continue;
            }
            for t in self.out[g].to_vec() {
                let d = self.degree(g as u32, t);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// Cancel every term of degree exactly `deg`, min-fill first.
    pub fn cancel_degree(&mut self, deg: i32, log: &mut CancellationLog) {
        let mut heap: BinaryHeap<Reverse<(u64, u32, u32)>> = BinaryHeap::new();
        for g in 0..self.universe {
            if !self.alive[g] {
                continue;
            }
            for t in self.out[g].to_vec() {
                if self.degree(g as u32, t) == deg {
                    heap.push(Reverse((self.cost(g as u32, t), g as u32, t)));
                }
            }
        }
        while let Some(Reverse((c, k, l))) = heap.pop() {
            if !self.alive[k as usize] || !self.alive[l as usize] || !self.out[k as usize].contains(l) {
                continue;
            }
            let fresh = self.cost(k, l);
            if fresh > c {
                heap.push(Reverse((fresh, k, l)));
                continue;
            }
            log.pivots.push((k, l, deg));
            self.cancel(k, l, Some((&mut heap, deg)));
        }
    }
}

/// Compute all pages until the differential is exhausted. The last page
/// repeats forever.
pub fn compute_pages(fc: FilteredComplex) -> (Vec<Page>, CancellationLog) {
    let mut c = Canceler::new(fc);
    let mut log = CancellationLog::default();
    let mut pages = Vec::new();
    let mut i = 0u32;
    loop {
        pages.push(c.snapshot(i));
        match c.min_degree() {
            None => break,
            Some(d) => {
                if d <= i as i32 {
                    c.cancel_degree(i as i32, &mut log);
                }
            }
        }
        i += 1;
        if i > 512 {
            panic!("page computation failed to terminate");
        }
    }
    (pages, log)
}

/// The page that survives forever: `pages` as returned by `compute_pages`.
pub fn page_at(pages: &[Page], k: u32) -> Page {
    let last = pages.len() - 1;
    let idx = (k as usize).min(last);
    Page {
        k,
        ranks: pages[idx].ranks.clone(),
    }
}

/// Bigraded homology of the h-degree-1 part of the differential alone,
/// computed by dense elimination: an independent check on the E^2 page.
pub fn khovanov_oracle(kh: &KhovanovComplex) -> Page {
    Page {
        k: 2,
        ranks: kh
            .homology()
            .into_iter()
            .map(|((h, q), r)| ((h as i32, q as i32), r as u32))
            .collect(),
    }
}

/// Homology rank of a sparse F2 complex by straight elimination, for the
/// cancellation-validity tests.
pub fn homology_rank_by_elimination(d: &[Vec<u32>], h: &[i32]) -> usize {
    use std::collections::BTreeMap as Map;
    let mut by_h: Map<i32, Vec<usize>> = Map::new();
    for g in 0..d.len() {
        by_h.entry(h[g]).or_default().push(g);
    }
    let mut pos = vec![0u32; d.len()];
    for gens in by_h.values() {
        for (k, &g) in gens.iter().enumerate() {
            pos[g] = k as u32;
        }
    }
    let mut total = 0usize;
    let mut rank_prev: Map<i32, usize> = Map::new();
    for (&hh, gens) in &by_h {
        let mut m = BitMatrix::new(gens.len(), by_h.get(&(hh + 1)).map_or(1, Vec::len).max(1));
        let mut nonzero = false;
        for (r, &g) in gens.iter().enumerate() {
            for &t in &d[g] {
                m.set(r, pos[t as usize] as usize);
                nonzero = true;
            }
        }
        let rk = if nonzero { m.rank() } else { 0 };
        rank_prev.insert(hh, rk);
        total += gens.len() - rk - rank_prev.get(&(hh - 1)).copied().unwrap_or(0);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn two_generator_cancel() {
        let fc = FilteredComplex {
            h: vec![0, 1],
            q: vec![0, 0],
            d: vec![vec![1], vec![]],
        };
        let mut c = Canceler::new(fc);
        c.cancel(0, 1, None);
        assert_eq!(c.alive_count(), 0);
    }

    #[test]
    fn three_generator_chain() {
        // x1 -> x2, x1 -> x3; cancel (x1, x2): x3 survives with zero d
        let fc = FilteredComplex {
            h: vec![0, 1, 1],
            q: vec![0, 0, 0],
            d: vec![vec![1, 2], vec![], vec![]],
        };
        let mut c = Canceler::new(fc);
        c.cancel(0, 1, None);
        assert_eq!(c.alive_count(), 1);
        assert!(c.alive[2]);
        assert_eq!(c.out[2].len(), 0);
        assert_eq!(c.inc[2].len(), 0);
    }

    #[test]
    fn random_cancellation_preserves_homology() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            // random 2-layer complex (d^2 = 0 automatic)
            let n0 = 25usize;
            let n1 = 25usize;
            let mut d: Vec<Vec<u32>> = vec![Vec::new(); n0 + n1];
            let h: Vec<i32> = (0..n0 + n1).map(|g| (g >= n0) as i32).collect();
            for row in d.iter_mut().take(n0) {
                for t in 0..n1 {
                    if rng.gen_bool(0.15) {
                        row.push((n0 + t) as u32);
                    }
                }
            }
            let before = homology_rank_by_elimination(&d, &h);
            // one random cancellation
            let fc = FilteredComplex {
                h: h.clone(),
                q: vec![0; n0 + n1],
                d: d.clone(),
            };
            let mut c = Canceler::new(fc);
            let Some(k) = (0..n0).find(|&g| !d[g].is_empty()) else {
                continue;
            };
            let l = d[k][0];
            c.cancel(k as u32, l, None);
            // rebuild the reduced complex and compare ranks
            let alive: Vec<usize> = (0..n0 + n1).filter(|&g| c.alive[g]).collect();
            let remap: std::collections::HashMap<usize, u32> =
                alive.iter().enumerate().map(|(i, &g)| (g, i as u32)).collect();
            let d2: Vec<Vec<u32>> = alive
                .iter()
                .map(|&g| c.out[g].to_vec().iter().map(|&t| remap[&(t as usize)]).collect())
                .collect();
            let h2: Vec<i32> = alive.iter().map(|&g| h[g]).collect();
            let after = homology_rank_by_elimination(&d2, &h2);
            assert_eq!(before, after);
        }
    }

    #[test]
    fn unknot_pages() {
        let fc = FilteredComplex {
            h: vec![0, 0],
            q: vec![1, -1],
            d: vec![vec![], vec![]],
        };
        let (pages, log) = compute_pages(fc);
        assert_eq!(pages.len(), 1);
        assert!(log.pivots.is_empty());
        let e2 = page_at(&pages, 2);
        assert_eq!(e2.total_rank(), 2);
    }
}
