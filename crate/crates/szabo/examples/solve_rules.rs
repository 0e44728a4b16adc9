//! Level-by-level linear solve for the higher map table.
//!
//! The k = 1 maps are the Khovanov merge/split. For each level L >= 2 the
//! d^2 = 0 constraints on (L+1)-dimensional faces are linear in the
//! dimension-L terms once all lower levels are fixed: the only composites
//! touching them are (1 then L) and (L then 1). Variables are indexed by
//! the canonical form of the purely active configuration together with an
//! (input, output) pair allowed by the grading and filtration rules.

use std::collections::{BTreeMap, HashMap, HashSet};
use szabo::canon::{canonical, CanonShape};
use szabo::cube::{resolve, CircleSet, Configuration, Face, Resolution};
use szabo::diagram::{Decoration, LinkDiagram};

type VarId = u32;

#[derive(Default)]
struct Registry {
    vars: HashMap<(CanonShape, u64, u64), VarId>,
    list: Vec<(CanonShape, u64, u64)>,
    shape_desc: HashMap<CanonShape, String>,
}

impl Registry {
    fn var(&mut self, shape: &CanonShape, a: u64, b: u64) -> VarId {
        if let Some(&v) = self.vars.get(&(shape.clone(), a, b)) {
            return v;
        }
        let id = self.list.len() as VarId;
        self.vars.insert((shape.clone(), a, b), id);
        self.list.push((shape.clone(), a, b));
        id
    }

    fn note_desc(&mut self, shape: &CanonShape, _cfg: &Configuration, can: &szabo::canon::Canonical) {
        if !self.shape_desc.contains_key(shape) {
            self.shape_desc.insert(shape.clone(), can.pretty.clone());
        }
    }

    fn describe(&self, shape: &CanonShape) -> String {
        self.shape_desc
            .get(shape)
            .cloned()
            .unwrap_or_else(|| format!("k={} circles={} ends={}", shape.k, shape.n_circles, shape.n_ends))
    }
}

/// Human-readable exemplar: circles with their cyclic endpoints
/// (arc letter, head '>' or tail '<', side 'l'/'r', interval ending).
fn describe_cfg(cfg: &Configuration, can: &szabo::canon::Canonical) -> String {
    use std::fmt::Write;
    let bit = matches!(cfg.dir, szabo::cube::SurgeryDir::OneToZero);
    // gather endpoints per circle
    let mut per_circle: Vec<(u8, u32, Vec<(u32, usize, bool)>)> = Vec::new();
    for (ai, a) in cfg.arcs.iter().enumerate() {
        let ((tc, tp), (hc, hp)) = cfg.arc_passages(a);
        for (c, p, h) in [(tc, tp, false), (hc, hp, true)] {
            let lab = can.circle_map.iter().find(|&&(x, _)| x == c).unwrap().1;
            match per_circle.iter_mut().find(|(l, _, _)| *l == lab) {
                Some((_, _, v)) => v.push((p, ai, h)),
                None => per_circle.push((lab, c, vec![(p, ai, h)])),
            }
        }
    }
    per_circle.sort();
    let mut out = String::new();
    write!(out, "k={} ", cfg.arcs.len()).ok();
    for (lab, cid, ends) in per_circle.iter_mut() {
        ends.sort();
        write!(out, "c{lab}[").ok();
        let circ = &cfg.start.circles[*cid as usize];
        let m = circ.edges.len();
        for &(p, ai, h) in ends.iter() {
            let side = circ.passages[p as usize].arc_side_left(bit);
            let e = circ.edges[(p as usize + 1) % m];
            let img = cfg.end.edge_circle[e as usize];
            let elab = can.end_map.iter().find(|&&(x, _)| x == img).unwrap().1;
            write!(
                out,
                "{}{}{}e{} ",
                (b'A' + ai as u8) as char,
                if h { '>' } else { '<' },
                if side { 'l' } else { 'r' },
                elab
            )
            .ok();
        }
        out.pop();
        write!(out, "] ").ok();
    }
    out
}

/// Khovanov merge/split on a 1-dimensional face.
fn one_dim_terms(cfg: &Configuration) -> Vec<(u64, Vec<u64>)> {
    let a = &cfg.arcs[0];
    let (tc, hc) = cfg.arc_circles(a);
    if tc == hc {
        let (r, l) = cfg.arc_ending_pair(a);
        vec![(0, vec![1 << r, 1 << l]), (1 << tc, vec![1u64 << r | 1 << l])]
    } else {
        let y = cfg.arc_ending_pair(a).0;
        vec![(0, vec![0]), (1 << tc, vec![1 << y]), (1 << hc, vec![1 << y])]
    }
}

type Table = HashMap<(CanonShape, u64, u64), bool>;

/// Translate the canonical-form table entries to configuration labels.
fn table_terms(cfg: &Configuration, table: &Table) -> Vec<(u64, Vec<u64>)> {
    if cfg.k() == 1 {
        return one_dim_terms(cfg);
    }
    if cfg.is_disconnected() {
        return vec![];
    }
    let can = canonical(cfg);
    let mut by_in: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (a, b) in can.shape.allowed_pairs() {
        if table.get(&(can.shape.clone(), a, b)) == Some(&true) {
            let ia = from_canon(a, &can.circle_map);
            let ob = from_canon_ends(b, &can.end_map);
            by_in.entry(ia).or_default().push(ob);
        }
    }
    by_in.into_iter().collect()
}

fn from_canon(mask: u64, map: &[(u32, u8)]) -> u64 {
    let mut out = 0u64;
    for &(cid, label) in map {
        if mask >> label & 1 == 1 {
            out |= 1 << cid;
        }
    }
    out
}

fn from_canon_ends(mask: u64, map: &[(u32, u8)]) -> u64 {
    from_canon(mask, map)
}

fn to_canon(mask: u64, map: &[(u32, u8)]) -> u64 {
    let mut out = 0u64;
    for &(cid, label) in map {
        if mask >> cid & 1 == 1 {
            out |= 1 << label;
        }
    }
    out
}

/// Apply per-face terms to a full monomial: match the active pattern,
/// transfer the passive labels.
fn apply_terms(cfg: &Configuration, terms: &[(u64, Vec<u64>)], m: u64, t_circles: u32) -> Vec<u64> {
    let active = cfg.active_start_mask();
    let act_in = m & active;
    let mut outs = Vec::new();
    for (pat, os) in terms {
        if *pat != act_in {
            continue;
        }
        let mut img = 0u64;
        let mut pm = m & !active & ((1u64 << t_circles) - 1);
        while pm != 0 {
            let c = pm.trailing_zeros();
            pm &= pm - 1;
            img |= 1 << cfg.passive_image(c);
        }
        for o in os {
            outs.push(o | img);
        }
    }
    outs
}

struct Pool {
    diagrams: Vec<(String, LinkDiagram)>,
    resolutions: Vec<Vec<CircleSet>>,
}

fn make_pool() -> Pool {
    let mut diagrams: Vec<(String, LinkDiagram)> = vec![
        ("trefoil".into(), LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()),
        ("fig8".into(), LinkDiagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap()),
    ];
    for (s, w) in [
        (2usize, vec![1, 1]),
        (2, vec![1, -1]),
        (2, vec![1, 1, 1]),
        (2, vec![1, 1, 1, 1]),
        (2, vec![1, 1, -1, 1]),
        (2, vec![1, 1, 1, 1, 1]),
        (3, vec![1, 2, 1, 2]),
        (3, vec![1, 2, -1, 2]),
        (3, vec![1, 1, 2, 2]),
        (3, vec![1, -2, 1, -2]),
        (3, vec![-1, 2, -1, 2]),
        (3, vec![1, 1, 1, 2]),
        (3, vec![1, 2, 1, 2, 1]),
        (4, vec![1, 2, 3, 1, 2, 3]),
        (3, vec![1, 1, 2, -1, 2]),
        (3, vec![1, 2, 1, 2, 1, 2]),
    ] {
        diagrams.push((format!("b{s}{w:?}"), LinkDiagram::braid_closure(s, &w).unwrap()));
    }
    let resolutions = diagrams
        .iter()
        .map(|(_, d)| (0..1u32 << d.n()).map(|i| resolve(d, Resolution(i))).collect())
        .collect();
    Pool { diagrams, resolutions }
}

fn decorations(d: &LinkDiagram) -> Vec<Decoration> {
    let n = d.n();
    if n <= 4 {
        (0..1u32 << n)
            .map(|bits| Decoration((0..n).map(|i| bits >> i & 1 == 1).collect()))
            .collect()
    } else {
        let mut v = vec![d.default_decoration()];
        for s in 0..24 {
            v.push(d.random_decoration(s));
        }
        v
    }
}

fn main() {
    // P-condition variants from env: PJ=tail|head PC=head|tail
    let pool = make_pool();
    let mut table: Table = HashMap::new();
    let mut descs: HashMap<CanonShape, String> = HashMap::new();
    let args: Vec<String> = std::env::args().collect();
    let max_level = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(5usize);
    // kernel member choice per level: bitmask over that level's free vars
    let choices: Vec<u64> = (2..=max_level)
        .map(|l| args.get(l).and_then(|a| a.parse().ok()).unwrap_or(0))
        .collect();
    for level in 2..=max_level {
        solve_level(&pool, &mut table, level, choices[level - 2], &mut descs);
    }
    if std::env::var("ANALYZE").is_ok() {
        analyze(&pool, &table, max_level);
        return;
    }
    // print the solved table grouped by shape
    let mut by_shape: BTreeMap<CanonShape, Vec<(u64, u64)>> = BTreeMap::new();
    for ((shape, a, b), &v) in &table {
        if v {
            by_shape.entry(shape.clone()).or_default().push((*a, *b));
        }
    }
    println!("\n==== nonzero table entries: {} shapes ====", by_shape.len());
    for (shape, mut pairs) in by_shape {
        pairs.sort();
        println!("shape[{}]", descs.get(&shape).cloned().unwrap_or_default());
        for (a, b) in pairs {
            println!("    in={a:0w$b} out={b:0e$b}", w = shape.n_circles as usize, e = shape.n_ends as usize);
        }
    }
}



fn solve_level(pool: &Pool, table: &mut Table, level: usize, choice: u64, descs: &mut HashMap<CanonShape, String>) {
    println!("==== solving level {level} ====");
    let mut reg = Registry::default();
    // rows: variable bitset + rhs
    let mut rows: HashSet<(Vec<u64>, bool)> = HashSet::new();
    let mut n_eq = 0usize;
    for (di, (_name, diag)) in pool.diagrams.iter().enumerate() {
        let n = diag.n();
        if n < level {
            continue;
        }
        let rs = &pool.resolutions[di];
        for t in decorations(diag) {
            let full = (1u32 << n) - 1;
            for i in 0..1u32 << n {
                let zeros = !i & full;
                // d^2 equations on (level+1)-faces
                if n >= level + 1 && (zeros.count_ones() as usize) >= level + 1 {
                    let mut s = zeros;
                    loop {
                        if s == 0 {
                            break;
                        }
                        if s.count_ones() as usize == level + 1 {
                            face_equations(rs, &t, i, i | s, level, table, &mut reg, &mut rows, &mut n_eq);
                        }
                        s = (s - 1) & zeros;
                    }
                }
                // point-map chain equations on level-faces:
                // (d P + P d)_{I,J} = 0 with P = X + the star terms
                if (zeros.count_ones() as usize) >= level {
                    let mut s = zeros;
                    loop {
                        if s == 0 {
                            break;
                        }
                        if s.count_ones() as usize == level {
                            chain_map_equations(rs, diag, &t, i, i | s, level, table, &mut reg, &mut rows, &mut n_eq);
                        }
                        s = (s - 1) & zeros;
                    }
                }
            }
        }
    }
    println!("  {} variables, {} distinct equations ({} raw)", reg.list.len(), rows.len(), n_eq);
    // gaussian elimination over F2
    let nv = reg.list.len();
    let words = nv.div_ceil(64) + 1; // last bit = rhs
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|(bits, rhs)| {
            let mut r = bits.clone();
            r.resize(words, 0);
            if *rhs {
                r[nv / 64] |= 1 << (nv % 64);
            }
            // rhs in its own last position: place at bit nv
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0;
    for col in 0..nv {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..mat.len()).find(|&r| mat[r][w] & b != 0) else {
            continue;
        };
        mat.swap(rank, p);
        let piv = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (k, v) in row.iter_mut().enumerate() {
                    *v ^= piv[k];
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    // consistency
    let rhs_w = nv / 64;
    let rhs_b = 1u64 << (nv % 64);
    let inconsistent = mat[rank..]
        .iter()
        .any(|r| r[rhs_w] & rhs_b != 0 && r[..nv.div_ceil(64)].iter().enumerate().all(|(i, &w)| w & mask_word(i, nv) == 0));
    println!("  rank {rank} of {nv}; kernel dim {}; inconsistent: {inconsistent}", nv - rank);
    // particular solution: free vars 0, pivot var = rhs of its row
    let mut solution = vec![false; nv];
    for &(r, c) in &pivots {
        solution[c] = mat[r][rhs_w] & rhs_b != 0;
    }
    let nonzero = solution.iter().filter(|&&v| v).count();
    println!("  particular solution with free vars = 0 has {nonzero} nonzero entries");
    // kernel basis: one vector per exercised free variable
    let free: Vec<usize> = {
        let pc: HashSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
        (0..nv).filter(|c| !pc.contains(c)).collect()
    };
    let mut exercised: Vec<usize> = Vec::new();
    for &f in &free {
        let (w, b) = (f / 64, 1u64 << (f % 64));
        if mat.iter().any(|r| r[w] & b != 0) {
            exercised.push(f);
        }
    }
    println!("  free vars: {} ({} exercised)", free.len(), exercised.len());
    for (ki, &f) in exercised.iter().enumerate() {
        // kernel vector: set free var f = 1, others 0; pivot var c of row r
        // equals the row's coefficient on f
        let mut vec_sup: Vec<usize> = vec![f];
        let (w, b) = (f / 64, 1u64 << (f % 64));
        for &(r, c) in &pivots {
            if mat[r][w] & b != 0 {
                vec_sup.push(c);
            }
        }
        vec_sup.sort_unstable();
        println!("  kernel[{ki}] ({} entries):", vec_sup.len());
        for v in vec_sup {
            let (shape, a, bb) = &reg.list[v];
            println!(
                "     in={a:0cw$b} out={bb:0ew$b}   {}",
                reg.describe(shape),
                cw = shape.n_circles as usize,
                ew = shape.n_ends as usize
            );
        }
    }
    // apply the chosen kernel member on top of the particular solution
    for (ki, &f) in exercised.iter().enumerate() {
        if choice >> ki & 1 == 1 {
            solution[f] = !solution[f];
            let (w, b) = (f / 64, 1u64 << (f % 64));
            for &(r, c) in &pivots {
                if mat[r][w] & b != 0 {
                    solution[c] = !solution[c];
                }
            }
        }
    }
    println!(
        "  applying kernel choice {choice:#b}: {} nonzero entries",
        solution.iter().filter(|&&v| v).count()
    );
    if std::env::var("DUMP_ALL").is_ok() {
        let mut by_shape: BTreeMap<&CanonShape, Vec<(u64, u64, bool)>> = BTreeMap::new();
        for (v, &val) in solution.iter().enumerate() {
            let (shape, a, b) = &reg.list[v];
            by_shape.entry(shape).or_default().push((*a, *b, val));
        }
        for (shape, mut pairs) in by_shape {
            pairs.sort();
            println!("SHAPE {}", reg.describe(shape));
            for (a, b, v) in pairs {
                println!("   {} in={a:0w$b} out={b:0e$b}", if v { "ONE " } else { "zero" }, w = shape.n_circles as usize, e = shape.n_ends as usize);
            }
        }
    }
    for (v, &val) in solution.iter().enumerate() {
        let (shape, a, b) = &reg.list[v];
        table.insert((shape.clone(), *a, *b), val);
    }
    for (s, d) in reg.shape_desc.drain() {
        descs.entry(s).or_insert(d);
    }
}

/// Add the variable-linear expansion of the level-dim face (i, j) at
/// decoration t applied to src, into per-target accumulators.
#[allow(clippy::too_many_arguments)]
fn add_face_vars(
    rs: &[CircleSet],
    t: &[bool],
    i: u32,
    j: u32,
    src: u64,
    reg: &mut Registry,
    acc: &mut HashMap<(u64, u64), (Vec<u64>, bool)>,
) {
    let cfg = Configuration::of_face(&rs[i as usize], &rs[j as usize], Face::new(Resolution(i), Resolution(j)), t);
    if cfg.is_disconnected() {
        return;
    }
    let ti = rs[i as usize].len() as u32;
    let can = canonical(&cfg);
    reg.note_desc(&can.shape, &cfg, &can);
    let active = cfg.active_start_mask();
    let act = to_canon(src & active, &can.circle_map);
    for (a, b) in can.shape.allowed_pairs() {
        if a != act {
            continue;
        }
        let v = reg.var(&can.shape, a, b);
        let mut img = 0u64;
        let mut pm = src & !active & ((1u64 << ti) - 1);
        while pm != 0 {
            let c = pm.trailing_zeros();
            pm &= pm - 1;
            img |= 1 << cfg.passive_image(c);
        }
        let tgt = from_canon_ends(b, &can.end_map) | img;
        let e = acc.entry((src, tgt)).or_insert_with(|| (vec![], false));
        let w = v as usize / 64;
        if e.0.len() <= w {
            e.0.resize(w + 1, 0);
        }
        e.0[w] ^= 1 << (v % 64);
    }
}

/// Equations forcing d P + P d = 0 on the dimension-level face (i, j),
/// for every base point. P = X + the star terms of `point_terms`; the
/// unknown face enters composed with X on either side, all other
/// composites are known.
#[allow(clippy::too_many_arguments)]
fn chain_map_equations(
    rs: &[CircleSet],
    diag: &LinkDiagram,
    t: &Decoration,
    i: u32,
    j: u32,
    level: usize,
    table: &Table,
    reg: &mut Registry,
    rows: &mut HashSet<(Vec<u64>, bool)>,
    n_eq: &mut usize,
) {
    let ti = rs[i as usize].len() as u32;
    let tj = rs[j as usize].len() as u32;
    let cfg = Configuration::of_face(&rs[i as usize], &rs[j as usize], Face::new(Resolution(i), Resolution(j)), &t.0);
    if cfg.is_disconnected() {
        return;
    }
    let can = canonical(&cfg);
    reg.note_desc(&can.shape, &cfg, &can);
    let active = cfg.active_start_mask();
    let changed = i ^ j;
    for e in 0..diag.n_edges() {
        let mark_i = rs[i as usize].edge_circle[e];
        let mark_j = rs[j as usize].edge_circle[e];
        let mut acc: HashMap<(u64, u64), (Vec<u64>, bool)> = HashMap::new();
        for src in 0..1u64 << ti {
            // unknown-face composites with X on either side
            let act = to_canon(src & active, &can.circle_map);
            for (a, b) in can.shape.allowed_pairs() {
                if a != act {
                    continue;
                }
                let v = reg.var(&can.shape, a, b);
                let mut img = 0u64;
                let mut pm = src & !active & ((1u64 << ti) - 1);
                while pm != 0 {
                    let c = pm.trailing_zeros();
                    pm &= pm - 1;
                    img |= 1 << cfg.passive_image(c);
                }
                let mid = from_canon_ends(b, &can.end_map) | img;
                // X after d
                if mid >> mark_j & 1 == 0 {
                    toggle_var(&mut acc, (src, mid | 1 << mark_j), v);
                }
                // d after X: only when src is unmarked; the marked source
                // is src | mark_i, and this equation row belongs to it
                if src >> mark_i & 1 == 0 {
                    // handled when enumerating the marked source below
                }
            }
            // d after X as seen from this src: X(src) defined when src
            // unmarked; d applied to (src | mark)
            if src >> mark_i & 1 == 0 {
                let s2 = src | 1 << mark_i;
                let act2 = to_canon(s2 & active, &can.circle_map);
                for (a, b) in can.shape.allowed_pairs() {
                    if a != act2 {
                        continue;
                    }
                    let v = reg.var(&can.shape, a, b);
                    let mut img = 0u64;
                    let mut pm = s2 & !active & ((1u64 << ti) - 1);
                    while pm != 0 {
                        let c = pm.trailing_zeros();
                        pm &= pm - 1;
                        img |= 1 << cfg.passive_image(c);
                    }
                    let tgt = from_canon_ends(b, &can.end_map) | img;
                    toggle_var(&mut acc, (src, tgt), v);
                }
            }
            // known composites through strict intermediate resolutions:
            // P_{K,J} d_{I,K} + d_{K,J} P_{I,K}, both parts of dim < level
            let mut sub = (changed - 1) & changed;
            loop {
                if sub == 0 {
                    break;
                }
                let k = i | sub;
                let tk = rs[k as usize].len() as u32;
                let cfg1 = Configuration::of_face(&rs[i as usize], &rs[k as usize], Face::new(Resolution(i), Resolution(k)), &t.0);
                let cfg2 = Configuration::of_face(&rs[k as usize], &rs[j as usize], Face::new(Resolution(k), Resolution(j)), &t.0);
                let mark_k = rs[k as usize].edge_circle[e];
                // d then P
                let d1 = table_terms(&cfg1, table);
                if !d1.is_empty() {
                    let p2 = szabo::maps::point_terms_with(&cfg2, mark_k, mark_j, std::env::var("PJ").as_deref() != Ok("head"), std::env::var("PC").as_deref() != Ok("tail"));
                    if !p2.is_empty() {
                        for mid in apply_terms(&cfg1, &d1, src, ti) {
                            for tgt in apply_terms(&cfg2, &p2, mid, tk) {
                                toggle_rhs(&mut acc, (src, tgt));
                            }
                        }
                    }
                }
                // P then d
                let p1 = szabo::maps::point_terms_with(&cfg1, mark_i, mark_k, std::env::var("PJ").as_deref() != Ok("head"), std::env::var("PC").as_deref() != Ok("tail"));
                if !p1.is_empty() {
                    let d2 = table_terms(&cfg2, table);
                    if !d2.is_empty() {
                        for mid in apply_terms(&cfg1, &p1, src, ti) {
                            for tgt in apply_terms(&cfg2, &d2, mid, tk) {
                                toggle_rhs(&mut acc, (src, tgt));
                            }
                        }
                    }
                }
                sub = (sub - 1) & changed;
            }
            // the full-face P-term composed with nothing is absent: P has
            // no dimension-`level` composite partner of dimension 0 other
            // than X, already covered
            let _ = tj;
        }
        let w = (reg.list.len() as usize).div_ceil(64).max(1);
        for ((_s, _t), (mut bits, rhs)) in acc {
            if bits.iter().all(|&x| x == 0) && !rhs {
                continue;
            }
            bits.resize(w, 0);
            rows.insert((bits, rhs));
            *n_eq += 1;
        }
    }
}

fn toggle_var(acc: &mut HashMap<(u64, u64), (Vec<u64>, bool)>, key: (u64, u64), v: VarId) {
    let e = acc.entry(key).or_insert_with(|| (vec![], false));
    let w = v as usize / 64;
    if e.0.len() <= w {
        e.0.resize(w + 1, 0);
    }
    e.0[w] ^= 1 << (v % 64);
}

fn toggle_rhs(acc: &mut HashMap<(u64, u64), (Vec<u64>, bool)>, key: (u64, u64)) {
    let e = acc.entry(key).or_insert_with(|| (vec![], false));
    e.1 = !e.1;
}

#[allow(dead_code)]
#[allow(clippy::too_many_arguments)]
fn deformation_equations(
    rs: &[CircleSet],
    t: &Decoration,
    i: u32,
    j: u32,
    level: usize,
    table: &Table,
    reg: &mut Registry,
    rows: &mut HashSet<(Vec<u64>, bool)>,
    n_eq: &mut usize,
) {
    let changed = i ^ j;
    let ti = rs[i as usize].len() as u32;
    let mut mbit = changed;
    while mbit != 0 {
        let m = mbit.trailing_zeros();
        mbit &= mbit - 1;
        if t.0[m as usize] {
            continue; // handle each unordered {t, t'} pair once
        }
        let mut t2 = t.clone();
        t2.0[m as usize] = true;
        let i2 = i | 1 << m; // I'
        let j2 = j & !(1 << m); // J'
        let mut acc: HashMap<(u64, u64), (Vec<u64>, bool)> = HashMap::new();
        for src in 0..1u64 << ti {
            add_face_vars(rs, &t.0, i, j, src, reg, &mut acc);
            add_face_vars(rs, &t2.0, i, j, src, reg, &mut acc);
            // rhs: d(I',J) H(I,I') + H(J',J) d(I,J')  (dimension level-1 < level)
            let cfg_h1 = Configuration::of_face(&rs[i as usize], &rs[i2 as usize], Face::new(Resolution(i), Resolution(i2)), &t.0);
            let h1 = szabo::maps::homotopy_terms(&cfg_h1);
            let cfg_d1 = Configuration::of_face(&rs[i2 as usize], &rs[j as usize], Face::new(Resolution(i2), Resolution(j)), &t.0);
            let d1 = table_terms(&cfg_d1, table);
            let tk1 = rs[i2 as usize].len() as u32;
            for mid in apply_terms(&cfg_h1, &h1, src, ti) {
                for tgt in apply_terms(&cfg_d1, &d1, mid, tk1) {
                    let e = acc.entry((src, tgt)).or_insert_with(|| (vec![], false));
                    e.1 = !e.1;
                }
            }
            let cfg_d2 = Configuration::of_face(&rs[i as usize], &rs[j2 as usize], Face::new(Resolution(i), Resolution(j2)), &t.0);
            let d2 = table_terms(&cfg_d2, table);
            let cfg_h2 = Configuration::of_face(&rs[j2 as usize], &rs[j as usize], Face::new(Resolution(j2), Resolution(j)), &t.0);
            let h2 = szabo::maps::homotopy_terms(&cfg_h2);
            let tk2 = rs[j2 as usize].len() as u32;
            for mid in apply_terms(&cfg_d2, &d2, src, ti) {
                for tgt in apply_terms(&cfg_h2, &h2, mid, tk2) {
                    let e = acc.entry((src, tgt)).or_insert_with(|| (vec![], false));
                    e.1 = !e.1;
                }
            }
        }
        let w = (reg.list.len() as usize).div_ceil(64).max(1);
        for ((_s, _t), (mut bits, rhs)) in acc {
            if bits.iter().all(|&x| x == 0) && !rhs {
                continue;
            }
            bits.resize(w, 0);
            rows.insert((bits, rhs));
            *n_eq += 1;
        }
    }
}

fn mask_word(i: usize, nv: usize) -> u64 {
    // bits of word i that are genuine variables (not the rhs bit)
    let lo = i * 64;
    if lo + 64 <= nv {
        u64::MAX
    } else if lo >= nv {
        0
    } else {
        (1u64 << (nv - lo)) - 1
    }
}

#[allow(clippy::too_many_arguments)]
fn face_equations(
    rs: &[CircleSet],
    t: &Decoration,
    i: u32,
    j: u32,
    level: usize,
    table: &Table,
    reg: &mut Registry,
    rows: &mut HashSet<(Vec<u64>, bool)>,
    n_eq: &mut usize,
) {
    let ti = rs[i as usize].len() as u32;
    // quick prune: the big face need not be connected, but every composite
    // path passes through sub-faces; enumerate intermediate resolutions
    let changed = i ^ j;
    // gather sub-face data lazily
    // rows are keyed by (src, tgt)
    let mut acc: HashMap<(u64, u64), (Vec<u64>, bool)> = HashMap::new();
    let nv_words = |reg: &Registry| (reg.list.len() as usize).div_ceil(64);
    // enumerate K strictly between
    let mut sub = (changed - 1) & changed;
    loop {
        if sub == 0 {
            break;
        }
        let k = i | sub;
        let d1 = sub.count_ones() as usize;
        let d2 = (level + 1) - d1;
        let cfg1 = Configuration::of_face(&rs[i as usize], &rs[k as usize], Face::new(Resolution(i), Resolution(k)), &t.0);
        let cfg2 = Configuration::of_face(&rs[k as usize], &rs[j as usize], Face::new(Resolution(k), Resolution(j)), &t.0);
        let tk = rs[k as usize].len() as u32;
        if d1 == 1 && d2 == level {
            // known then unknown
            if cfg2.is_disconnected() {
                sub = (sub - 1) & changed;
                continue;
            }
            let can = canonical(&cfg2);
            reg.note_desc(&can.shape, &cfg2, &can);
            let terms1 = one_dim_terms(&cfg1);
            let active2 = cfg2.active_start_mask();
            for src in 0..1u64 << ti {
                for mid in apply_terms(&cfg1, &terms1, src, ti) {
                    let act = to_canon(mid & active2, &can.circle_map);
                    for (a, b) in can.shape.allowed_pairs() {
                        if a != act {
                            continue;
                        }
                        let v = reg.var(&can.shape, a, b);
                        // passive transfer on cfg2
                        let mut img = 0u64;
                        let mut pm = mid & !active2 & ((1u64 << tk) - 1);
                        while pm != 0 {
                            let c = pm.trailing_zeros();
                            pm &= pm - 1;
                            img |= 1 << cfg2.passive_image(c);
                        }
                        let tgt = from_canon_ends(b, &can.end_map) | img;
                        let e = acc.entry((src, tgt)).or_insert_with(|| (vec![], false));
                        let w = v as usize / 64;
                        if e.0.len() <= w {
                            e.0.resize(w + 1, 0);
                        }
                        e.0[w] ^= 1 << (v % 64);
                    }
                }
            }
        } else if d1 == level && d2 == 1 {
            // unknown then known
            if cfg1.is_disconnected() {
                sub = (sub - 1) & changed;
                continue;
            }
            let can = canonical(&cfg1);
            reg.note_desc(&can.shape, &cfg1, &can);
            let terms2 = one_dim_terms(&cfg2);
            let active1 = cfg1.active_start_mask();
            for src in 0..1u64 << ti {
                let act = to_canon(src & active1, &can.circle_map);
                for (a, b) in can.shape.allowed_pairs() {
                    if a != act {
                        continue;
                    }
                    let v = reg.var(&can.shape, a, b);
                    let mut img = 0u64;
                    let mut pm = src & !active1 & ((1u64 << ti) - 1);
                    while pm != 0 {
                        let c = pm.trailing_zeros();
                        pm &= pm - 1;
                        img |= 1 << cfg1.passive_image(c);
                    }
                    let mid = from_canon_ends(b, &can.end_map) | img;
                    for tgt in apply_terms(&cfg2, &terms2, mid, tk) {
                        let e = acc.entry((src, tgt)).or_insert_with(|| (vec![], false));
                        let w = v as usize / 64;
                        if e.0.len() <= w {
                            e.0.resize(w + 1, 0);
                        }
                        e.0[w] ^= 1 << (v % 64);
                    }
                }
            }
        } else if d1 >= 2 && d2 >= 2 {
            // known x known
            let t1 = table_terms(&cfg1, table);
            if !t1.is_empty() {
                let t2 = table_terms(&cfg2, table);
                if !t2.is_empty() {
                    for src in 0..1u64 << ti {
                        for mid in apply_terms(&cfg1, &t1, src, ti) {
                            for tgt in apply_terms(&cfg2, &t2, mid, tk) {
                                let e = acc.entry((src, tgt)).or_insert_with(|| (vec![], false));
                                e.1 = !e.1;
                            }
                        }
                    }
                }
            }
        }
        sub = (sub - 1) & changed;
    }
    let w = nv_words(reg).max(1);
    for ((_src, _tgt), (mut bits, rhs)) in acc {
        if bits.iter().all(|&x| x == 0) && !rhs {
            continue;
        }
        bits.resize(w, 0);
        rows.insert((bits, rhs));
        *n_eq += 1;
    }
}


/// Feature analysis: for each distinct shape of a pool face, print
/// structural features next to the solved terms.
fn analyze(pool: &Pool, table: &Table, max_level: usize) {
    let mut seen: HashSet<CanonShape> = HashSet::new();
    let mut lines: Vec<String> = Vec::new();
    for (di, (_name, diag)) in pool.diagrams.iter().enumerate() {
        let n = diag.n();
        let rs = &pool.resolutions[di];
        for t in decorations(diag) {
            let full = (1u32 << n) - 1;
            for i in 0..1u32 << n {
                let zeros = !i & full;
                let mut s = zeros;
                loop {
                    if s == 0 {
                        break;
                    }
                    let dim = s.count_ones() as usize;
                    if dim >= 2 && dim <= max_level {
                        let j = i | s;
                        let cfg = Configuration::of_face(&rs[i as usize], &rs[j as usize], Face::new(Resolution(i), Resolution(j)), &t.0);
                        if !cfg.is_disconnected() {
                            let can = canonical(&cfg);
                            if seen.insert(can.shape.clone()) {
                                lines.push(features(&cfg, &can, table));
                            }
                        }
                    }
                    s = (s - 1) & zeros;
                }
            }
        }
    }
    lines.sort();
    for l in lines {
        println!("{l}");
    }
}

fn features(cfg: &Configuration, can: &szabo::canon::Canonical, table: &Table) -> String {
    use std::fmt::Write;
    let k = cfg.k();
    let clab = |c: u32| can.circle_map.iter().find(|&&(x, _)| x == c).unwrap().1;
    let elab = |e: u32| can.end_map.iter().find(|&&(x, _)| x == e).unwrap().1;
    let mut chords = 0;
    let mut joins = 0;
    let mut arc_info = String::new();
    for (ai, a) in cfg.arcs.iter().enumerate() {
        let (tc, hc) = cfg.arc_circles(a);
        if tc == hc {
            chords += 1;
            // dual arc heads into ending strand `flip`
            let dh = cfg.end.site_circle[a.site as usize][a.flip as usize];
            let dt = cfg.end.site_circle[a.site as usize][!a.flip as usize];
            write!(arc_info, "{}:chord@c{} dual e{}->e{} ", (b'A' + ai as u8) as char, clab(tc), elab(dt), elab(dh)).ok();
        } else {
            joins += 1;
            write!(arc_info, "{}:c{}->c{} ", (b'A' + ai as u8) as char, clab(tc), clab(hc)).ok();
        }
    }
    // chord interleaving pairs
    let mut inter = String::new();
    for (ai, a) in cfg.arcs.iter().enumerate() {
        for (bi, b) in cfg.arcs.iter().enumerate().skip(ai + 1) {
            let (at, ah) = cfg.arc_circles(a);
            let (bt, bh) = cfg.arc_circles(b);
            if at != ah || bt != bh || at != bt {
                continue;
            }
            let ((_, ap1), (_, ap2)) = cfg.arc_passages(a);
            let ((_, bp1), (_, bp2)) = cfg.arc_passages(b);
            let (lo, hi) = (ap1.min(ap2), ap1.max(ap2));
            let inside1 = bp1 > lo && bp1 < hi;
            let inside2 = bp2 > lo && bp2 < hi;
            if inside1 != inside2 {
                write!(inter, "{}x{} ", (b'A' + ai as u8) as char, (b'A' + bi as u8) as char).ok();
            }
        }
    }
    let mut terms = String::new();
    for (a, b) in can.shape.allowed_pairs() {
        if table.get(&(can.shape.clone(), a, b)) == Some(&true) {
            write!(terms, "{a:0cw$b}->{b:0ew$b} ", cw = can.shape.n_circles as usize, ew = can.shape.n_ends as usize).ok();
        }
    }
    if terms.is_empty() {
        terms = "ZERO".into();
    }
    format!(
        "k={k} circ={} ends={} ch={chords} j={joins} inter[{}] | {} | {}| TERMS {terms}",
        can.shape.n_circles, can.shape.n_ends, inter.trim(), can.pretty, arc_info
    )
}
