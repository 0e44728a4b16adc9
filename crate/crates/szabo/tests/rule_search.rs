//! Exhaustive check of the map-table rule space against the oracles.
//!
//! `search_rule_space` walks every candidate rule set and reports the ones
//! for which d(t) squares to zero over the diagram pool (all decorations,
//! both variants) and the E^2 page matches the independent Khovanov
//! oracle. Run with:
//!
//! cargo test --release --test rule_search -- --ignored --nocapture

use szabo::complex::{build_complex, d_squared_violations, Flavor, Variant, DEFAULT_GENERATOR_CAP};
use szabo::diagram::{Decoration, LinkDiagram};
use szabo::khovanov::KhovanovComplex;
use szabo::maps::{CRule, OrientCond, RuleSet};
use szabo::spectral::{compute_pages, khovanov_oracle, page_at};

fn pool() -> Vec<LinkDiagram> {
    let mut v = vec![
        LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap(),
        LinkDiagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap(),
        LinkDiagram::parse_pd("X[1,1,2,2]").unwrap(),
    ];
    for (s, w) in [
        (2usize, vec![1, 1]),
        (2, vec![1, -1]),
        (2, vec![1, 1, 1, 1]),
        (2, vec![1, 1, -1, 1]),
        (2, vec![-1, -1, -1, -1, -1]),
        (3, vec![1, 2, 1, 2]),
        (3, vec![1, 2, -1, 2]),
        (3, vec![1, 1, 2, 2]),
        (3, vec![1, -2, 1, -2]),
        (3, vec![1, 2, 1, 2, 1, 2]),
        (3, vec![1, 1, 1, 2, 2, 2]),
        (4, vec![1, 2, 3, 1, 2, 3]),
        (3, vec![1, 1, -2, -2]),
    ] {
        v.push(LinkDiagram::braid_closure(s, &w).unwrap());
    }
    v
}

fn decorations(d: &LinkDiagram) -> Vec<Decoration> {
    let n = d.n();
    if n <= 5 {
        (0..1u32 << n)
            .map(|bits| Decoration((0..n).map(|i| bits >> i & 1 == 1).collect()))
            .collect()
    } else {
        let mut v = vec![d.default_decoration()];
        for s in 0..14 {
            v.push(d.random_decoration(s));
        }
        v
    }
}

fn d2_ok(rules: &RuleSet, diagrams: &[LinkDiagram]) -> bool {
    for d in diagrams {
        for t in decorations(d) {
            for variant in [Variant::Standard, Variant::Mirror] {
                let c = match build_complex(d, &t, variant, Flavor::Full, rules, DEFAULT_GENERATOR_CAP) {
                    Ok(c) => c,
                    Err(_) => return false,
                };
                if d_squared_violations(&c.d) != 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn e2_ok(rules: &RuleSet, diagrams: &[LinkDiagram]) -> bool {
    for d in diagrams {
        let t = d.default_decoration();
        let c = build_complex(d, &t, Variant::Standard, Flavor::Full, rules, DEFAULT_GENERATOR_CAP).unwrap();
        let (pages, _) = compute_pages(c.into_filtered());
        let e2 = page_at(&pages, 2);
        let oracle = khovanov_oracle(&KhovanovComplex::build(d, None));
        if e2.ranks != oracle.ranks {
            return false;
        }
    }
    true
}

#[test]
#[ignore]
fn search_rule_space() {
    let diagrams = pool();
    let conds = [
        OrientCond::Free,
        OrientCond::HeadsCenter,
        OrientCond::TailsCenter,
        OrientCond::Coherent,
    ];
    let mut survivors = Vec::new();
    let mut tried = 0;
    for a_one in [true, false] {
        for a_two_extra in [false, true] {
            for b_allx in [true, false] {
                for c_rule in [CRule::Break, CRule::Extremes] {
                    for c_multi in [false, true] {
                        for c_standard_right in [true, false] {
                            for d_dual_standard in [true, false] {
                                for e_join in conds {
                                    for e_chord in conds {
                                        for e_extra in [false, true] {
                                            for e_two_extra in [false, true] {
                                                let rules = RuleSet {
                                                    c_on: true,
                                                    d_on: true,
                                                    e_on: true,
                                                    a_one,
                                                    a_two_extra,
                                                    b_allx,
                                                    c_rule,
                                                    c_multi,
                                                    c_standard_right,
                                                    d_dual_standard,
                                                    e_join,
                                                    e_chord,
                                                    e_extra,
                                                    e_two_extra,
                                                };
                                                tried += 1;
                                                if d2_ok(&rules, &diagrams) {
                                                    let kh = e2_ok(&rules, &diagrams);
                                                    println!("d2=0: {rules:?} e2_matches_khovanov={kh}");
                                                    survivors.push((rules, kh));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    println!("tried {tried} rule sets, {} passed d2", survivors.len());
    let good: Vec<_> = survivors.iter().filter(|(_, kh)| *kh).collect();
    println!("{} also match the Khovanov oracle:", good.len());
    for (r, _) in &good {
        println!("  {r:?}");
    }
}
