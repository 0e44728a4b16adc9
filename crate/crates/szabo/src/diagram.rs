//! Decorated oriented link diagrams.
//!
//! A diagram is stored in PD form: each crossing lists its four incident
//! edge-ends counterclockwise starting from the incoming under-strand.
//! Edge orientations, crossing signs and the component structure are
//! recovered on construction and kept consistent from then on.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// One crossing: edge ids counterclockwise from the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub ends: [usize; 4],
}

/// Port roles at a crossing, as a 4-bit mask: bit p set means the edge at
/// position p points *into* the crossing.
type InMask = u8;

#[derive(Debug, Clone)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    incoming: Vec<InMask>,
    signs: Vec<i8>,
    n_edges: usize,
    /// Crossing-free unknot components.
    free_loops: usize,
    /// successor edge along the orientation, per edge
    succ: Vec<usize>,
    edge_component: Vec<usize>,
    components: usize,
    n_plus: usize,
    n_minus: usize,
}

/// Orientation bit per crossing for the 0-resolution surgery arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoration(pub Vec<bool>);

/// A marked point on the diagram, away from the crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasePoint {
    Edge(usize),
    FreeLoop(usize),
}

impl LinkDiagram {
    /// Build from crossing tuples plus per-position incoming flags.
    /// `incoming` must mark positions 0 as in and 2 as out, and exactly one
    /// of positions 1, 3 as in.
    fn from_parts(crossings: Vec<Crossing>, incoming: Vec<InMask>, n_edges: usize, free_loops: usize) -> Result<Self> {
        let n = crossings.len();
        // every edge appears exactly once incoming and once outgoing
        let mut heads = vec![usize::MAX; n_edges];
        let mut tails = vec![usize::MAX; n_edges];
        for (x, c) in crossings.iter().enumerate() {
            for p in 0..4 {
                let e = c.ends[p];
                if e >= n_edges {
                    return Err(Error::Parse(format!("edge id {e} out of range")));
                }
                let slot = 4 * x + p;
                if incoming[x] >> p & 1 == 1 {
                    if heads[e] != usize::MAX {
                        return Err(Error::Parse(format!("edge {e} has two heads")));
                    }
                    heads[e] = slot;
                } else {
                    if tails[e] != usize::MAX {
                        return Err(Error::Parse(format!("edge {e} has two tails")));
                    }
                    tails[e] = slot;
                }
            }
        }
        for e in 0..n_edges {
            if heads[e] == usize::MAX || tails[e] == usize::MAX {
                return Err(Error::Parse(format!("edge {e} does not appear exactly twice")));
            }
        }
        // succ: at the head of e, the strand continues on the outgoing edge
        // of the same strand (under: 0 -> 2, over: 1 <-> 3).
        let mut succ = vec![usize::MAX; n_edges];
        for e in 0..n_edges {
            let (x, p) = (heads[e] / 4, heads[e] % 4);
            let out_pos = match p {
                0 => 2,
                1 => 3,
                3 => 1,
                _ => return Err(Error::Parse(format!("edge {e} enters at the outgoing under position"))),
            };
            if incoming[x] >> out_pos & 1 == 1 {
                return Err(Error::Parse("inconsistent strand orientation".into()));
            }
            succ[e] = crossings[x].ends[out_pos];
        }
        // components = cycles of succ
        let mut edge_component = vec![usize::MAX; n_edges];
        let mut components = 0;
        for e0 in 0..n_edges {
            if edge_component[e0] != usize::MAX {
                continue;
            }
            let mut e = e0;
            loop {
                edge_component[e] = components;
                e = succ[e];
                if e == e0 {
                    break;
                }
            }
            components += 1;
        }
        components += free_loops;
        // signs: positive iff the over-strand enters at position 3
        let mut signs = Vec::with_capacity(n);
        let (mut n_plus, mut n_minus) = (0, 0);
        for x in 0..n {
            let s = if incoming[x] >> 3 & 1 == 1 { 1 } else { -1 };
            if s > 0 {
                n_plus += 1;
            } else {
                n_minus += 1;
            }
            signs.push(s);
        }
        let d = LinkDiagram {
            crossings,
            incoming,
            signs,
            n_edges,
            free_loops,
            succ,
            edge_component,
            components,
            n_plus,
            n_minus,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Genus check for the underlying 4-valent map: V - E + F must equal 2.
    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        // half-edge (x, p); walk a face boundary: cross the edge, then turn
        // to the next port clockwise.
        let mut slot_of = vec![[usize::MAX; 2]; self.n_edges];
        for (x, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                let e = c.ends[p];
                if slot_of[e][0] == usize::MAX {
                    slot_of[e][0] = 4 * x + p;
                } else {
                    slot_of[e][1] = 4 * x + p;
                }
            }
        }
        let other = |slot: usize| -> usize {
            let e = self.crossings[slot / 4].ends[slot % 4];
            if slot_of[e][0] == slot {
                slot_of[e][1]
            } else {
                slot_of[e][0]
            }
        };
        let mut seen = vec![false; 4 * n];
        let mut faces = 0usize;
        for s0 in 0..4 * n {
            if seen[s0] {
                continue;
            }
            faces += 1;
            let mut s = s0;
            loop {
                seen[s] = true;
                let t = other(s);
                s = (t & !3) | ((t + 3) & 3);
                if s == s0 {
                    break;
                }
            }
        }
        // connected components of the crossing graph; a split diagram
        // traces both sides of each separating sphere
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for x0 in 0..n {
            if comp[x0] != usize::MAX {
                continue;
            }
            let mut stack = vec![x0];
            comp[x0] = ncomp;
            while let Some(x) = stack.pop() {
                for p in 0..4 {
                    let o = other(4 * x + p) / 4;
                    if comp[o] == usize::MAX {
                        comp[o] = ncomp;
                        stack.push(o);
                    }
                }
            }
            ncomp += 1;
        }
        if (n as i64) - (2 * n as i64) + (faces as i64) != 2 * ncomp as i64 {
            return Err(Error::Parse(format!(
                "tuples do not close up into a planar diagram (V-E+F = {}, components = {})",
                n as i64 - 2 * n as i64 + faces as i64,
                ncomp
            )));
        }
        Ok(())
    }

    /// Parse a PD code: whitespace/comma separated `X[a,b,c,d]` tuples,
    /// positive integer edge labels, each appearing exactly twice.
    pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
        let mut tuples: Vec<[u64; 4]> = Vec::new();
        let cleaned = text.trim();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let bytes = cleaned.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'X' | b'x' => {
                    let open = cleaned[i..].find('[').ok_or_else(|| Error::Parse("expected '[' after X".into()))? + i;
                    let close = cleaned[open..].find(']').ok_or_else(|| Error::Parse("unterminated tuple".into()))? + open;
                    let inner = &cleaned[open + 1..close];
                    let parts: Vec<_> = inner.split(',').map(str::trim).collect();
                    if parts.len() != 4 {
                        return Err(Error::Parse(format!("tuple X[{inner}] does not have 4 entries")));
                    }
                    let mut t = [0u64; 4];
                    for (k, p) in parts.iter().enumerate() {
                        t[k] = p
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad edge label '{p}'")))?;
                        if t[k] == 0 {
                            return Err(Error::Parse("edge labels must be positive".into()));
                        }
                    }
                    tuples.push(t);
                    i = close + 1;
                }
                b'P' if cleaned[i..].starts_with("PD") => i += 2,
                b'[' | b']' | b',' | b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                c => return Err(Error::Parse(format!("unexpected character '{}'", c as char))),
            }
        }
        if tuples.is_empty() {
            return Err(Error::Parse("no crossings found".into()));
        }
        // relabel to dense 0-based ids, ordered by label
        let mut labels: Vec<u64> = tuples.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let id_of = |l: u64| labels.binary_search(&l).unwrap();
        let mut count = vec![0usize; labels.len()];
        for t in &tuples {
            for &l in t {
                count[id_of(l)] += 1;
            }
        }
        if let Some(e) = count.iter().position(|&c| c != 2) {
            return Err(Error::Parse(format!(
                "edge label {} appears {} times (want 2)",
                labels[e], count[e]
            )));
        }
        let n_edges = labels.len();
        let crossings: Vec<Crossing> = tuples
            .iter()
            .map(|t| Crossing {
                ends: [id_of(t[0]), id_of(t[1]), id_of(t[2]), id_of(t[3])],
            })
            .collect();

        // Recover in/out roles. Positions 0/2 are under in/out; over slots
        // are settled by propagation, with the increasing-label walk as the
        // tie-break for over-over edges.
        let n = crossings.len();
        // role per (edge, occurrence-slot): Some(is_incoming)
        let mut role: Vec<Option<bool>> = vec![None; 4 * n];
        for x in 0..n {
            role[4 * x] = Some(true);
            role[4 * x + 2] = Some(false);
        }
        let mut slots_of: Vec<Vec<usize>> = vec![Vec::new(); n_edges];
        for (x, c) in crossings.iter().enumerate() {
            for p in 0..4 {
                slots_of[c.ends[p]].push(4 * x + p);
            }
        }
        loop {
            let mut changed = false;
            // an edge with one slot resolved resolves the other (opposite)
            for e in 0..n_edges {
                let (s0, s1) = (slots_of[e][0], slots_of[e][1]);
                match (role[s0], role[s1]) {
                    (Some(r), None) => {
                        role[s1] = Some(!r);
                        changed = true;
                    }
                    (None, Some(r)) => {
                        role[s0] = Some(!r);
                        changed = true;
                    }
                    (Some(a), Some(b)) if a == b => {
                        return Err(Error::Parse(format!("edge {} oriented inconsistently", labels[e])))
                    }
                    _ => {}
                }
            }
            // over-strand at a crossing: one of b/d in, the other out
            for x in 0..n {
                let (sb, sd) = (4 * x + 1, 4 * x + 3);
                match (role[sb], role[sd]) {
                    (Some(r), None) => {
                        role[sd] = Some(!r);
                        changed = true;
                    }
                    (None, Some(r)) => {
                        role[sb] = Some(!r);
                        changed = true;
                    }
                    (Some(a), Some(b)) if a == b => {
                        return Err(Error::Parse(format!("crossing {x} has an inconsistent over-strand")))
                    }
                    _ => {}
                }
            }
            if changed {
                continue;
            }
            // label rule for a fully unresolved over pair: consecutive labels
            // run min -> max, a wraparound runs max -> min.
            let mut applied = false;
            for x in 0..n {
                let (sb, sd) = (4 * x + 1, 4 * x + 3);
                if role[sb].is_none() && role[sd].is_none() {
                    let (lb, ld) = (labels[crossings[x].ends[1]], labels[crossings[x].ends[3]]);
                    let b_in = if lb.abs_diff(ld) == 1 { lb < ld } else { lb > ld };
                    role[sb] = Some(b_in);
                    role[sd] = Some(!b_in);
                    applied = true;
                    break;
                }
            }
            if !applied {
                break;
            }
        }
        let mut incoming = vec![0u8; n];
        for x in 0..n {
            for p in 0..4 {
                if role[4 * x + p] == Some(true) {
                    incoming[x] |= 1 << p;
                }
            }
        }
        Self::from_parts(crossings, incoming, n_edges, 0)
    }

    /// Closure of a braid word on `strands` strands. Letter `g > 0` is the
    /// positive generator at positions (g, g+1); `-g` its inverse. Positive
    /// letters produce positive crossings.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
        if strands < 1 {
            return Err(Error::InvalidInput("braid needs at least one strand".into()));
        }
        for &g in word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidInput(format!("bad braid letter {g} for {strands} strands")));
            }
        }
        let n = word.len();
        // provisional edge ids; ids 0..strands are the top edges
        let mut cur: Vec<usize> = (0..strands).collect();
        let top: Vec<usize> = cur.clone();
        let mut next_edge = strands;
        let mut crossings = Vec::with_capacity(n);
        let mut incoming = Vec::with_capacity(n);
        for &g in word {
            let pos = g.unsigned_abs() as usize - 1;
            let (u, v) = (cur[pos], cur[pos + 1]);
            let a = next_edge;
            let b = next_edge + 1;
            next_edge += 2;
            if g > 0 {
                // under-strand: position pos -> pos+1; over enters at d
                crossings.push(Crossing { ends: [u, b, a, v] });
                incoming.push(0b1001u8);
                cur[pos] = b;
                cur[pos + 1] = a;
            } else {
                // mirror: under-strand position pos+1 -> pos; over enters at b
                crossings.push(Crossing { ends: [v, u, a, b] });
                incoming.push(0b0011u8);
                cur[pos] = a;
                cur[pos + 1] = b;
            }
        }
        // close up: bottom edge at position p is the top edge at position p
        let mut alias: Vec<usize> = (0..next_edge).collect();
        fn find(alias: &mut Vec<usize>, mut e: usize) -> usize {
            while alias[e] != e {
                alias[e] = alias[alias[e]];
                e = alias[e];
            }
            e
        }
        let mut free_loops = 0;
        for p in 0..strands {
            let (a, b) = (find(&mut alias, cur[p]), find(&mut alias, top[p]));
            if a == b {
                free_loops += 1; // untouched strand closes into a bare circle
            } else {
                alias[a] = b;
            }
        }
        // dense relabel; drop edges that became free loops
        let used: Vec<bool> = {
            let mut u = vec![false; next_edge];
            for c in &crossings {
                for &e in &c.ends {
                    u[find(&mut alias, e)] = true;
                }
            }
            u
        };
        let mut dense = vec![usize::MAX; next_edge];
        let mut n_edges = 0;
        for e in 0..next_edge {
            if used[e] && alias[e] == e {
                dense[e] = n_edges;
                n_edges += 1;
            }
        }
        let crossings: Vec<Crossing> = crossings
            .iter()
            .map(|c| Crossing {
                ends: [
                    dense[find(&mut alias, c.ends[0])],
                    dense[find(&mut alias, c.ends[1])],
                    dense[find(&mut alias, c.ends[2])],
                    dense[find(&mut alias, c.ends[3])],
                ],
            })
            .collect();
        if crossings.is_empty() {
            // a word-free braid: just circles
            return Ok(LinkDiagram {
                crossings: vec![],
                incoming: vec![],
                signs: vec![],
                n_edges: 0,
                free_loops: strands,
                succ: vec![],
                edge_component: vec![],
                components: strands,
                n_plus: 0,
                n_minus: 0,
            });
        }
        Self::from_parts(crossings, incoming, n_edges, free_loops)
    }

    /// The (p, q) torus link as the closure of `(s1 s2 ... s_{p-1})^q`.
    pub fn torus_link(p: usize, q: usize) -> Result<LinkDiagram> {
        if p < 2 || q < 1 {
            return Err(Error::InvalidInput(format!("torus link needs p >= 2, q >= 1 (got {p}, {q})")));
        }
        let mut word = Vec::with_capacity((p - 1) * q);
        for _ in 0..q {
            for g in 1..p {
                word.push(g as i32);
            }
        }
        Self::braid_closure(p, &word)
    }

    /// A diagram with no crossings: `k` disjoint circles.
    pub fn unknot(k: usize) -> LinkDiagram {
        LinkDiagram {
            crossings: vec![],
            incoming: vec![],
            signs: vec![],
            n_edges: 0,
            free_loops: k,
            succ: vec![],
            edge_component: vec![],
            components: k,
            n_plus: 0,
            n_minus: 0,
        }
    }

    /// Mirror image: over and under strands switch, signs flip.
    pub fn mirror(&self) -> LinkDiagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                ends: [c.ends[0], c.ends[3], c.ends[2], c.ends[1]],
            })
            .collect();
        let incoming: Vec<u8> = self
            .incoming
            .iter()
            .map(|m| {
                let mut r = m & 0b0101;
                if m >> 3 & 1 == 1 {
                    r |= 0b0010;
                }
                if m >> 1 & 1 == 1 {
                    r |= 0b1000;
                }
                r
            })
            .collect();
        Self::from_parts(crossings, incoming, self.n_edges, self.free_loops).expect("mirror of a valid diagram is valid")
    }

    /// Reverse the orientation of every component.
    pub fn reverse(&self) -> LinkDiagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        // the incoming under-strand is now at the old position 2
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                ends: [c.ends[2], c.ends[3], c.ends[0], c.ends[1]],
            })
            .collect();
        let incoming: Vec<u8> = self
            .incoming
            .iter()
            .map(|m| {
                let mut r = 0b0001u8;
                if m >> 3 & 1 == 0 {
                    r |= 0b0010;
                }
                if m >> 1 & 1 == 0 {
                    r |= 0b1000;
                }
                r
            })
            .collect();
        Self::from_parts(crossings, incoming, self.n_edges, self.free_loops).expect("reverse of a valid diagram is valid")
    }

    /// Connected sum along base points `p1` (on `self`) and `p2` (on `other`).
    pub fn connect_sum(&self, p1: BasePoint, other: &LinkDiagram, p2: BasePoint) -> Result<LinkDiagram> {
        self.check_basepoint(p1)?;
        other.check_basepoint(p2)?;
        match (p1, p2) {
            (BasePoint::FreeLoop(_), _) => {
                // unknot summand is a unit
                let mut d = other.clone();
                d.free_loops += self.free_loops - 1;
                d.components += self.components - 1;
                Ok(d)
            }
            (_, BasePoint::FreeLoop(_)) => {
                let mut d = self.clone();
                d.free_loops += other.free_loops - 1;
                d.components += other.components - 1;
                Ok(d)
            }
            (BasePoint::Edge(e1), BasePoint::Edge(e2)) => {
                let off = self.n_edges;
                let mut crossings = self.crossings.clone();
                crossings.extend(other.crossings.iter().map(|c| Crossing {
                    ends: [c.ends[0] + off, c.ends[1] + off, c.ends[2] + off, c.ends[3] + off],
                }));
                let mut incoming = self.incoming.clone();
                incoming.extend_from_slice(&other.incoming);
                // cut both edges at a point and cross-join: swap the
                // occupants of their head slots.
                let e2g = e2 + off;
                let h1 = Self::head_slot(&crossings[..self.crossings.len()], &incoming, e1)
                    .ok_or_else(|| Error::InvalidInput("base point edge not found".into()))?;
                let h2 = Self::head_slot(&crossings, &incoming, e2g)
                    .ok_or_else(|| Error::InvalidInput("base point edge not found".into()))?;
                crossings[h1 / 4].ends[h1 % 4] = e2g;
                crossings[h2 / 4].ends[h2 % 4] = e1;
                Self::from_parts(crossings, incoming, self.n_edges + other.n_edges, self.free_loops + other.free_loops)
            }
        }
    }

    fn head_slot(crossings: &[Crossing], incoming: &[u8], e: usize) -> Option<usize> {
        for (x, c) in crossings.iter().enumerate() {
            for p in 0..4 {
                if c.ends[p] == e && incoming[x] >> p & 1 == 1 {
                    return Some(4 * x + p);
                }
            }
        }
        None
    }

    pub fn check_basepoint(&self, p: BasePoint) -> Result<()> {
        match p {
            BasePoint::Edge(e) if e < self.n_edges => Ok(()),
            BasePoint::FreeLoop(i) if i < self.free_loops => Ok(()),
            _ => Err(Error::InvalidInput("base point not on the diagram".into())),
        }
    }

    /// Lowest edge of the first component (or the first bare circle).
    pub fn default_basepoint(&self) -> BasePoint {
        if self.n_edges > 0 {
            BasePoint::Edge(0)
        } else {
            BasePoint::FreeLoop(0)
        }
    }

    pub fn default_decoration(&self) -> Decoration {
        Decoration(vec![false; self.crossings.len()])
    }

    pub fn random_decoration(&self, seed: u64) -> Decoration {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Decoration((0..self.crossings.len()).map(|_| rng.gen_bool(0.5)).collect())
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }
    pub fn n_plus(&self) -> usize {
        self.n_plus
    }
    pub fn n_minus(&self) -> usize {
        self.n_minus
    }
    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
    pub fn components(&self) -> usize {
        self.components
    }
    pub fn n_edges(&self) -> usize {
        self.n_edges
    }
    pub fn free_loops(&self) -> usize {
        self.free_loops
    }
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
    pub fn succ(&self, e: usize) -> usize {
        self.succ[e]
    }
    pub fn edge_component(&self, e: usize) -> usize {
        self.edge_component[e]
    }
    pub fn sign(&self, x: usize) -> i8 {
        self.signs[x]
    }
    /// True if the edge at position p of crossing x points into the crossing.
    pub fn is_incoming(&self, x: usize, p: usize) -> bool {
        self.incoming[x] >> p & 1 == 1
    }

    pub fn to_json(&self, t: Option<&Decoration>) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump<'a> {
            crossings: Vec<[usize; 4]>,
            signs: &'a [i8],
            #[serde(skip_serializing_if = "Option::is_none")]
            decoration: Option<Vec<u8>>,
        }
        let dump = Dump {
            crossings: self
                .crossings
                .iter()
                .map(|c| [c.ends[0] + 1, c.ends[1] + 1, c.ends[2] + 1, c.ends[3] + 1])
                .collect(),
            signs: &self.signs,
            decoration: t.map(|d| d.0.iter().map(|&b| b as u8).collect()),
        };
        serde_json::to_value(dump).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    // KnotTheory's 4_1
    pub const FIG8_PD: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn parse_trefoil() {
        let d = LinkDiagram::parse_pd(TREFOIL_PD).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe().abs(), 3);
        // all crossings carry the same sign
        assert!(d.signs().iter().all(|&s| s == d.signs()[0]));
        // this PD is KnotTheory's left-handed trefoil
        assert_eq!(d.writhe(), -3);
    }

    #[test]
    fn parse_kink() {
        let d = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe().abs(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(LinkDiagram::parse_pd("").is_err());
        assert!(LinkDiagram::parse_pd("X[1,2,3]").is_err());
        assert!(LinkDiagram::parse_pd("X[1,4,2,5]").is_err()); // labels appear once
        assert!(LinkDiagram::parse_pd("X[1,1,1,1]").is_err());
    }

    #[test]
    fn parse_fig8() {
        let d = LinkDiagram::parse_pd(FIG8_PD).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe(), 0);
        assert_eq!((d.n_plus(), d.n_minus()), (2, 2));
    }

    #[test]
    fn torus_links() {
        let t23 = LinkDiagram::torus_link(2, 3).unwrap();
        assert_eq!(t23.n(), 3);
        assert_eq!(t23.components(), 1);
        assert_eq!(t23.writhe(), 3); // positive braid -> positive crossings
        let t33 = LinkDiagram::torus_link(3, 3).unwrap();
        assert_eq!(t33.n(), 6);
        assert_eq!(t33.components(), 3);
        let t34 = LinkDiagram::torus_link(3, 4).unwrap();
        assert_eq!(t34.n(), 8);
        assert_eq!(t34.components(), 1);
        assert!(LinkDiagram::torus_link(1, 3).is_err());
        assert!(LinkDiagram::torus_link(2, 0).is_err());
    }

    #[test]
    fn torus_component_count() {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for p in 2..=5 {
            for q in 1..=5 {
                let d = LinkDiagram::torus_link(p, q).unwrap();
                assert_eq!(d.n(), (p - 1) * q);
                assert_eq!(d.components(), gcd(p, q), "T({p},{q})");
            }
        }
    }

    #[test]
    fn mirror_involution() {
        for d in [
            LinkDiagram::parse_pd(TREFOIL_PD).unwrap(),
            LinkDiagram::torus_link(3, 4).unwrap(),
            LinkDiagram::unknot(1),
        ] {
            let m = d.mirror();
            assert_eq!(m.n_plus(), d.n_minus());
            assert_eq!(m.n_minus(), d.n_plus());
            let mm = m.mirror();
            assert_eq!(mm.crossings(), d.crossings());
            assert_eq!(mm.writhe(), d.writhe());
        }
    }

    #[test]
    fn reverse_all_components_keeps_signs() {
        for d in [
            LinkDiagram::parse_pd(TREFOIL_PD).unwrap(),
            LinkDiagram::parse_pd(FIG8_PD).unwrap(),
            LinkDiagram::torus_link(3, 3).unwrap(),
        ] {
            let r = d.reverse();
            assert_eq!(r.n_plus(), d.n_plus());
            assert_eq!(r.n_minus(), d.n_minus());
            assert_eq!(r.components(), d.components());
            let rr = r.reverse();
            assert_eq!(rr.crossings(), d.crossings());
        }
    }

    #[test]
    fn connect_sums() {
        let u = LinkDiagram::unknot(1);
        let t = LinkDiagram::parse_pd(TREFOIL_PD).unwrap();
        let s = u.connect_sum(BasePoint::FreeLoop(0), &t, t.default_basepoint()).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.components(), 1);
        let uu = u.connect_sum(BasePoint::FreeLoop(0), &u, BasePoint::FreeLoop(0)).unwrap();
        assert_eq!(uu.n(), 0);
        assert_eq!(uu.components(), 1);
        let tt = t.connect_sum(t.default_basepoint(), &t, t.default_basepoint()).unwrap();
        assert_eq!(tt.n(), 6);
        assert_eq!(tt.components(), 1);
        assert_eq!(tt.writhe(), -6);
    }

    #[test]
    fn decorations() {
        let t = LinkDiagram::parse_pd(TREFOIL_PD).unwrap();
        assert_eq!(t.default_decoration().0, vec![false; 3]);
        let a = t.random_decoration(7);
        let b = t.random_decoration(7);
        assert_eq!(a, b);
    }

    #[test]
    fn braid_free_strand_becomes_loop() {
        let d = LinkDiagram::braid_closure(3, &[1, 1]).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.components(), 3); // hopf link + circle
    }
}
