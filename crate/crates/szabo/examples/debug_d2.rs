use szabo::complex::{build_complex, Flavor, Variant, DEFAULT_GENERATOR_CAP};
use szabo::diagram::LinkDiagram;
use szabo::khovanov::KhovanovComplex;
use szabo::maps::{CRule, OrientCond, RuleSet};

fn main() {
    let d = LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let t = d.default_decoration();
    let rules = RuleSet {
        a_one: false,
        a_two_extra: false,
        b_allx: false,
        c_rule: CRule::Break,
        c_multi: false,
        c_standard_right: true,
        d_dual_standard: true,
        e_join: OrientCond::HeadsCenter,
        e_chord: OrientCond::HeadsCenter,
        e_extra: false,
        e_two_extra: false,
    };
    let c = build_complex(&d, &t, Variant::Standard, Flavor::Full, &rules, DEFAULT_GENERATOR_CAP).unwrap();
    let kh = KhovanovComplex::build(&d, None);
    println!("gens: szabo={} kh={}", c.generator_count(), kh.gen_count());
    let mut mismatch = 0;
    for g in 0..c.generator_count() {
        let h = c.h_of(g);
        let ours: Vec<u32> = c.d[g as usize]
            .iter()
            .copied()
            .filter(|&tg| c.h_of(tg as u64) == h + 1)
            .collect();
        let theirs = &kh.d[g as usize];
        if &ours != theirs {
            if mismatch < 10 {
                let (i, m) = c.gen_info(g);
                println!("gen {g} (I={i:03b} m={m:b}): ours={ours:?} kh={theirs:?}");
            }
            mismatch += 1;
        }
    }
    println!("mismatched 1-dim rows: {mismatch}");
}
