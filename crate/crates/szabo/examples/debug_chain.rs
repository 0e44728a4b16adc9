use szabo::cube::{resolve, Configuration, Face, Resolution, Side};
use szabo::diagram::{Decoration, LinkDiagram};
use szabo::maps::{classify, CRule, OrientCond, RuleSet};

fn main() {
    let d = LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let rs: Vec<_> = (0..8).map(|i| resolve(&d, Resolution(i))).collect();
    let rules = RuleSet {
        c_on: true, d_on: true, e_on: true,
        a_one: true, a_two_extra: false, b_allx: true,
        c_rule: CRule::Break, c_multi: false, c_standard_right: true, d_dual_standard: true,
        e_join: OrientCond::Free, e_chord: OrientCond::Free,
        e_extra: false, e_two_extra: false,
    };
    // the three chain faces from 000 and the three final faces to 111
    for tb in 0..8u32 {
        let t = Decoration((0..3).map(|i| tb >> i & 1 == 1).collect());
        print!("t={tb:03b}: ");
        for (i, j) in [(0u32, 0b011u32), (0, 0b101), (0, 0b110), (0b001, 0b111), (0b010, 0b111), (0b100, 0b111)] {
            let f = Face::new(Resolution(i), Resolution(j));
            let cfg = Configuration::of_face(&rs[i as usize], &rs[j as usize], f, &t.0);
            let c = classify(&cfg, &rules, false);
            // for chains also print the dual break sides
            let extra = if (i, j.count_ones()) == (0, 2) {
                let dual = cfg.dual();
                let a0 = &dual.arcs[0];
                let a1 = &dual.arcs[1];
                let (r0, l0) = dual.arc_ending_pair(a0);
                let (r1, l1) = dual.arc_ending_pair(a1);
                // shared ending circle
                let shared = if r0 == r1 || r0 == l1 { r0 } else { l0 };
                let s0 = if shared == r0 { Side::Right } else { Side::Left };
                let s1 = if shared == r1 { Side::Right } else { Side::Left };
                format!("[dual sides {s0:?}/{s1:?}]")
            } else {
                String::new()
            };
            print!("{}->{} {:?}{}  ", i, j, c.ty, extra);
        }
        println!();
    }
}
