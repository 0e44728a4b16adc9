//! The cube of resolutions: circle tracing, faces, configurations.
//!
//! Port conventions at a crossing, reading the PD tuple counterclockwise
//! with the incoming under-strand at port 0 (drawn at the south):
//!
//! ```text
//!           c (N, under out)
//!            |
//!   d (W) ---+--- b (E)
//!            |
//!           a (S, under in)
//! ```
//!
//! The 0-resolution joins a-b and c-d; the 1-resolution joins a-d and b-c.
//! (With this pairing the all-0 resolution of a positive diagram is its
//! oriented resolution, and quantum gradings land on the correct parity.)
//! The 0-resolution surgery arc runs between the two strands through the
//! old crossing point; with the default decoration bit it is oriented from
//! the a-b strand to the c-d strand, and its 90-degree counterclockwise
//! rotation (the dual arc) then runs from the b-c strand to the a-d strand.

use crate::diagram::LinkDiagram;

/// A vertex of the cube {0,1}^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Resolution(pub u32);

impl Resolution {
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
    pub fn bit(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

/// A k-face of the cube: `from <= to` coordinatewise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub from: Resolution,
    pub to: Resolution,
}

impl Face {
    pub fn new(from: Resolution, to: Resolution) -> Face {
        debug_assert_eq!(from.0 & !to.0, 0, "face requires from <= to");
        Face { from, to }
    }
    pub fn changed(self) -> u32 {
        self.from.0 ^ self.to.0
    }
    pub fn dim(self) -> u32 {
        self.changed().count_ones()
    }
}

/// One transit of a circle through a smoothed crossing site.
#[derive(Debug, Clone, Copy)]
pub struct Passage {
    pub site: u32,
    /// strand 0 contains port 0
    pub strand: u8,
    /// port the traversal entered through
    pub enter_port: u8,
}

impl Passage {
    /// Side of the traversal on which the surgery arc leaves (toward the
    /// old crossing point): left iff entering through an even port in the
    /// 0-resolution, through an odd port in the 1-resolution.
    pub fn arc_side_left(&self, bit: bool) -> bool {
        (self.enter_port % 2 == 0) == !bit
    }
}

#[derive(Debug, Clone)]
pub struct Circle {
    /// edges in traversal order; passages\[i\] is crossed after edges\[i\]
    pub edges: Vec<u32>,
    pub passages: Vec<Passage>,
    /// minimal edge id, or n_edges + i for the i-th crossing-free loop
    pub key: u32,
}

/// The circles of one resolution, with their combinatorial embedding
/// (cyclic passage order per circle; the local tables above carry the
/// rotation system).
#[derive(Debug, Clone)]
pub struct CircleSet {
    pub circles: Vec<Circle>,
    pub edge_circle: Vec<u32>,
    /// per site: the circle containing strand 0 / strand 1
    pub site_circle: Vec<[u32; 2]>,
    /// per site: position of that strand's passage within its circle
    pub site_passage: Vec<[u32; 2]>,
}

impl CircleSet {
    pub fn len(&self) -> usize {
        self.circles.len()
    }
    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }
}

fn strand_of(bit: bool, port: usize) -> u8 {
    if bit {
        // strands {a,d}, {b,c}
        (port == 1 || port == 2) as u8
    } else {
        // strands {a,b}, {c,d}
        (port >= 2) as u8
    }
}

fn partner_port(bit: bool, port: usize) -> usize {
    if bit {
        [3, 2, 1, 0][port]
    } else {
        [1, 0, 3, 2][port]
    }
}

/// Smooth every crossing of `d` according to `r` and trace the circles.
pub fn resolve(d: &LinkDiagram, r: Resolution) -> CircleSet {
    let n = d.n();
    let ne = d.n_edges();
    let mut head_slot = vec![usize::MAX; ne];
    let mut tail_slot = vec![usize::MAX; ne];
    for x in 0..n {
        for p in 0..4 {
            let e = d.crossings()[x].ends[p];
            if d.is_incoming(x, p) {
                head_slot[e] = 4 * x + p;
            } else {
                tail_slot[e] = 4 * x + p;
            }
        }
    }
    let mut circles: Vec<Circle> = Vec::new();
    let mut edge_circle = vec![u32::MAX; ne];
    let mut site_circle = vec![[u32::MAX; 2]; n];
    let mut site_passage = vec![[u32::MAX; 2]; n];
    let mut seen = vec![false; ne];
    for e0 in 0..ne {
        if seen[e0] {
            continue;
        }
        let ci = circles.len() as u32;
        let mut edges = Vec::new();
        let mut passages = Vec::new();
        let mut e = e0;
        let mut fwd = true;
        loop {
            seen[e] = true;
            edge_circle[e] = ci;
            edges.push(e as u32);
            let slot = if fwd { head_slot[e] } else { tail_slot[e] };
            let (x, p) = (slot / 4, slot % 4);
            let bit = r.bit(x);
            let strand = strand_of(bit, p);
            site_circle[x][strand as usize] = ci;
            site_passage[x][strand as usize] = passages.len() as u32;
            passages.push(Passage {
                site: x as u32,
                strand,
                enter_port: p as u8,
            });
            let p2 = partner_port(bit, p);
            let e2 = d.crossings()[x].ends[p2];
            let slot2 = 4 * x + p2;
            fwd = tail_slot[e2] == slot2;
            e = e2;
            if e == e0 && fwd {
                break;
            }
        }
        circles.push(Circle {
            edges,
            passages,
            key: e0 as u32,
        });
    }
    for l in 0..d.free_loops() {
        circles.push(Circle {
            edges: vec![],
            passages: vec![],
            key: (ne + l) as u32,
        });
    }
    CircleSet {
        circles,
        edge_circle,
        site_circle,
        site_passage,
    }
}

/// Direction of the surgeries a configuration's arcs describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeryDir {
    /// 0-resolution to 1-resolution (a standard cube face)
    ZeroToOne,
    /// 1-resolution to 0-resolution (arises when dualizing)
    OneToZero,
}

/// An oriented surgery arc at a site. With `flip == false` the arc runs
/// from strand 0 to strand 1 of its starting resolution.
#[derive(Debug, Clone, Copy)]
pub struct Arc {
    pub site: u32,
    pub flip: bool,
}

impl Arc {
    pub fn tail_strand(&self) -> usize {
        self.flip as usize
    }
    pub fn head_strand(&self) -> usize {
        !self.flip as usize
    }
}

/// Circles of a resolution together with the oriented surgery arcs of a
/// face. `start` are the circles the arcs sit on; `end` the result of
/// performing all the surgeries.
#[derive(Debug, Clone)]
pub struct Configuration<'a> {
    pub dir: SurgeryDir,
    pub start: &'a CircleSet,
    pub end: &'a CircleSet,
    pub arcs: Vec<Arc>,
}

/// Which side of an oriented arc an ending circle lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl<'a> Configuration<'a> {
    /// The configuration of a cube face: the circles of `f.from` with the
    /// 0-resolution surgery arcs of the changed coordinates, oriented by
    /// the decoration bits.
    pub fn of_face(start: &'a CircleSet, end: &'a CircleSet, f: Face, t: &[bool]) -> Configuration<'a> {
        let mut arcs = Vec::with_capacity(f.dim() as usize);
        let mut ch = f.changed();
        while ch != 0 {
            let x = ch.trailing_zeros();
            ch &= ch - 1;
            arcs.push(Arc {
                site: x,
                flip: t[x as usize],
            });
        }
        Configuration {
            dir: SurgeryDir::ZeroToOne,
            start,
            end,
            arcs,
        }
    }

    /// Starting circle indices of an arc's endpoints: (tail, head).
    pub fn arc_circles(&self, a: &Arc) -> (u32, u32) {
        let sc = &self.start.site_circle[a.site as usize];
        (sc[a.tail_strand()], sc[a.head_strand()])
    }

    /// Passage positions of an arc's endpoints on their circles: (tail, head).
    pub fn arc_passages(&self, a: &Arc) -> ((u32, u32), (u32, u32)) {
        let sc = &self.start.site_circle[a.site as usize];
        let sp = &self.start.site_passage[a.site as usize];
        (
            (sc[a.tail_strand()], sp[a.tail_strand()]),
            (sc[a.head_strand()], sp[a.head_strand()]),
        )
    }

    /// Ending circles touched by the surgery at `a`: in the 0-to-1 direction
    /// these are the circles of the a-b and c-d strands; the pair is
    /// returned as (right of the arc, left of the arc) for `flip == false`.
    pub fn arc_ending_pair(&self, a: &Arc) -> (u32, u32) {
        let ec = &self.end.site_circle[a.site as usize];
        // The unflipped 0->1 arc points from the {a,b} strand to the {c,d}
        // strand (northwest); the ending {b,c} strand sits to its right.
        // The unflipped 1->0 arc points northeast; ending {a,b} is right.
        let (right, left) = match self.dir {
            SurgeryDir::ZeroToOne => (ec[1], ec[0]),
            SurgeryDir::OneToZero => (ec[0], ec[1]),
        };
        if a.flip {
            (left, right)
        } else {
            (right, left)
        }
    }

    /// Side of the oriented arc `a` on which the ending circle `c` lies.
    /// `c` must be one of the two circles of `arc_ending_pair`.
    pub fn side_of_ending(&self, a: &Arc, c: u32) -> Side {
        let (right, left) = self.arc_ending_pair(a);
        if c == right && c == left {
            // both ends on the same circle: no well-defined side
            panic!("ending circle touches both sides of the arc");
        } else if c == right {
            Side::Right
        } else {
            debug_assert_eq!(c, left);
            Side::Left
        }
    }

    /// Dual arc of `a`: rotate 90 degrees counterclockwise.
    pub fn dual_arc(&self, a: &Arc) -> Arc {
        match self.dir {
            SurgeryDir::ZeroToOne => Arc {
                site: a.site,
                flip: !a.flip,
            },
            SurgeryDir::OneToZero => Arc { site: a.site, flip: a.flip },
        }
    }

    /// The dual configuration: surgery along the arcs, with the arcs
    /// rotated 90 degrees counterclockwise.
    pub fn dual(&self) -> Configuration<'a> {
        Configuration {
            dir: match self.dir {
                SurgeryDir::ZeroToOne => SurgeryDir::OneToZero,
                SurgeryDir::OneToZero => SurgeryDir::ZeroToOne,
            },
            start: self.end,
            end: self.start,
            arcs: self.arcs.iter().map(|a| self.dual_arc(a)).collect(),
        }
    }

    /// Reverse configuration: all arcs reversed.
    pub fn reverse(&self) -> Configuration<'a> {
        Configuration {
            dir: self.dir,
            start: self.start,
            end: self.end,
            arcs: self
                .arcs
                .iter()
                .map(|a| Arc {
                    site: a.site,
                    flip: !a.flip,
                })
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.arcs.len()
    }

    /// Bitmask of starting circles met by at least one arc.
    pub fn active_start_mask(&self) -> u64 {
        let mut m = 0u64;
        for a in &self.arcs {
            let (t, h) = self.arc_circles(a);
            m |= 1 << t;
            m |= 1 << h;
        }
        m
    }

    /// Bitmask of ending circles met by at least one dual arc.
    pub fn active_end_mask(&self) -> u64 {
        let mut m = 0u64;
        for a in &self.arcs {
            let ec = &self.end.site_circle[a.site as usize];
            m |= 1 << ec[0];
            m |= 1 << ec[1];
        }
        m
    }

    /// Is the active part connected (circles as vertices, arcs as edges)?
    pub fn is_disconnected(&self) -> bool {
        let mask = self.active_start_mask();
        let count = mask.count_ones();
        if count <= 1 {
            return false;
        }
        // union-find over active circle ids
        let mut parent: Vec<u32> = (0..self.start.len() as u32).collect();
        fn find(p: &mut Vec<u32>, mut i: u32) -> u32 {
            while p[i as usize] != i {
                p[i as usize] = p[p[i as usize] as usize];
                i = p[i as usize];
            }
            i
        }
        let mut parts = count;
        for a in &self.arcs {
            let (t, h) = self.arc_circles(a);
            let (rt, rh) = (find(&mut parent, t), find(&mut parent, h));
            if rt != rh {
                parent[rt as usize] = rh;
                parts -= 1;
            }
        }
        parts > 1
    }

    /// Map each starting circle to the ending circle containing it after
    /// surgery; well-defined for passive circles (argument by shared edges
    /// or loop keys).
    pub fn passive_image(&self, circle: u32) -> u32 {
        let c = &self.start.circles[circle as usize];
        if c.edges.is_empty() {
            // a crossing-free loop; find the ending loop with the same key
            for (j, e) in self.end.circles.iter().enumerate() {
                if e.key == c.key {
                    return j as u32;
                }
            }
            unreachable!("free loop must persist through surgery");
        }
        self.end.edge_circle[c.edges[0] as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LinkDiagram;

    const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn trefoil_circle_counts() {
        let d = LinkDiagram::parse_pd(TREFOIL_PD).unwrap();
        // left-handed trefoil: all-1 is its oriented resolution (2 Seifert
        // circles), all-0 the disoriented one
        assert_eq!(resolve(&d, Resolution(0b000)).len(), 3);
        assert_eq!(resolve(&d, Resolution(0b111)).len(), 2);
        // single surgeries change the count by exactly one
        for i in 0..8u32 {
            for b in 0..3 {
                if i >> b & 1 == 0 {
                    let a = resolve(&d, Resolution(i)).len() as i64;
                    let c = resolve(&d, Resolution(i | 1 << b)).len() as i64;
                    assert_eq!((a - c).abs(), 1, "I={i:03b} bit {b}");
                }
            }
        }
    }

    #[test]
    fn unknot_resolution() {
        let d = LinkDiagram::unknot(1);
        let cs = resolve(&d, Resolution(0));
        assert_eq!(cs.len(), 1);
        assert!(cs.circles[0].edges.is_empty());
    }

    #[test]
    fn every_edge_on_one_circle() {
        for d in [
            LinkDiagram::parse_pd(TREFOIL_PD).unwrap(),
            LinkDiagram::torus_link(3, 3).unwrap(),
            LinkDiagram::parse_pd("X[1,1,2,2]").unwrap(),
        ] {
            for i in 0..1u32 << d.n() {
                let cs = resolve(&d, Resolution(i));
                let mut count = vec![0usize; d.n_edges()];
                for c in &cs.circles {
                    for &e in &c.edges {
                        count[e as usize] += 1;
                    }
                }
                // every edge appears exactly once across all circles
                assert!(count.iter().all(|&c| c == 1));
                // passage tables are consistent
                for (ci, c) in cs.circles.iter().enumerate() {
                    for (pi, p) in c.passages.iter().enumerate() {
                        assert_eq!(cs.site_circle[p.site as usize][p.strand as usize], ci as u32);
                        assert_eq!(cs.site_passage[p.site as usize][p.strand as usize], pi as u32);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_ending_circles_match_resolution() {
        let d = LinkDiagram::parse_pd(TREFOIL_PD).unwrap();
        let all: Vec<CircleSet> = (0..8).map(|i| resolve(&d, Resolution(i))).collect();
        let t = vec![false; 3];
        for i in 0..8u32 {
            for j in 0..8u32 {
                if i & !j != 0 || i == j {
                    continue;
                }
                let f = Face::new(Resolution(i), Resolution(j));
                let c = Configuration::of_face(&all[i as usize], &all[j as usize], f, &t);
                let dual = c.dual();
                // dual of dual has the original circles and reversed arcs
                let dd = dual.dual();
                assert_eq!(dd.start.len(), c.start.len());
                for (a, b) in dd.arcs.iter().zip(c.arcs.iter()) {
                    assert_eq!(a.site, b.site);
                    assert_eq!(a.flip, !b.flip);
                }
            }
        }
    }

    #[test]
    fn single_face_configurations() {
        let d = LinkDiagram::parse_pd(TREFOIL_PD).unwrap();
        let t = vec![false; 3];
        let all: Vec<CircleSet> = (0..8).map(|i| resolve(&d, Resolution(i))).collect();
        // 1-dim configuration joining the two circles of 000
        let f = Face::new(Resolution(0), Resolution(1));
        let c = Configuration::of_face(&all[0], &all[1], f, &t);
        assert_eq!(c.k(), 1);
        let (tc, hc) = c.arc_circles(&c.arcs[0]);
        assert_ne!(tc, hc); // a join
        assert!(!c.is_disconnected());
    }
}
