use std::collections::BTreeMap;
use szabo::complex::{build_complex, Flavor, Variant, DEFAULT_GENERATOR_CAP};
use szabo::cube::{resolve, Configuration, Face, Resolution};
use szabo::diagram::{Decoration, LinkDiagram};
use szabo::maps::{classify, CRule, OrientCond, RuleSet};

fn base_rules() -> RuleSet {
    RuleSet {
        c_on: true, d_on: true, e_on: true,
        a_one: true, a_two_extra: false, b_allx: true,
        c_rule: CRule::Break, c_multi: false, c_standard_right: true, d_dual_standard: true,
        e_join: OrientCond::TailsCenter, e_chord: OrientCond::HeadsCenter,
        e_extra: false, e_two_extra: false,
    }
}

fn main() {
    let d = LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let targ: u32 = std::env::args().nth(1).map(|a| a.parse().unwrap()).unwrap_or(1);
    let t = Decoration((0..3).map(|i| targ >> i & 1 == 1).collect());
    let rules = base_rules();
    let c = build_complex(&d, &t, Variant::Standard, Flavor::Full, &rules, DEFAULT_GENERATOR_CAP).unwrap();
    let rs: Vec<_> = (0..8).map(|i| resolve(&d, Resolution(i))).collect();
    for g in 0..c.generator_count() as usize {
        let mut acc: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &m in &c.d[g] {
            for &u in &c.d[m as usize] {
                acc.entry(u).or_default().push(m);
            }
        }
        for (u, mids) in acc {
            if mids.len() % 2 == 1 {
                let (i, mi) = c.gen_info(g as u64);
                let (j, mj) = c.gen_info(u as u64);
                println!("FAIL d2: I={i:03b}:{mi:02b} -> J={j:03b}:{mj:04b} via {} paths", mids.len());
                for m in mids {
                    let (k, mk) = c.gen_info(m as u64);
                    let f1 = Face::new(Resolution(i), Resolution(k));
                    let cfg1 = Configuration::of_face(&rs[i as usize], &rs[k as usize], f1, &t.0);
                    let c1 = classify(&cfg1, &rules, false);
                    let f2 = Face::new(Resolution(k), Resolution(j));
                    let cfg2 = Configuration::of_face(&rs[k as usize], &rs[j as usize], f2, &t.0);
                    let c2 = classify(&cfg2, &rules, false);
                    println!("   via K={k:03b}:{mk:02b}  [{:?} then {:?}]", c1.ty, c2.ty);
                }
            }
        }
    }
}
