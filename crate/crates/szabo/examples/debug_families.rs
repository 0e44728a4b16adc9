use szabo::complex::{build_complex, d_squared_violations, Flavor, Variant, DEFAULT_GENERATOR_CAP};
use szabo::cube::{resolve, Configuration, Face, Resolution};
use szabo::diagram::{Decoration, LinkDiagram};
use szabo::maps::{classify, CRule, OrientCond, RuleSet};

fn base_rules() -> RuleSet {
    RuleSet {
        c_on: false,
        d_on: false,
        e_on: false,
        a_one: true,
        a_two_extra: false,
        b_allx: true,
        c_rule: CRule::Break,
        c_multi: false,
        c_standard_right: true,
        d_dual_standard: true,
        e_join: OrientCond::TailsCenter,
        e_chord: OrientCond::HeadsCenter,
        e_extra: false,
        e_two_extra: false,
    }
}

fn pool() -> Vec<(String, LinkDiagram)> {
    let mut v = vec![
        ("trefoil".into(), LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()),
        ("fig8".into(), LinkDiagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap()),
        ("kink".into(), LinkDiagram::parse_pd("X[1,1,2,2]").unwrap()),
    ];
    for (s, w) in [
        (2usize, vec![1, 1]),
        (2, vec![1, -1]),
        (2, vec![1, 1, 1, 1]),
        (2, vec![1, 1, -1, 1]),
        (3, vec![1, 2, 1, 2]),
        (3, vec![1, 2, -1, 2]),
        (3, vec![1, 1, 2, 2]),
        (3, vec![1, -2, 1, -2]),
    ] {
        v.push((format!("braid{s}:{w:?}"), LinkDiagram::braid_closure(s, &w).unwrap()));
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
        (0..16).map(|s| d.random_decoration(s)).collect()
    }
}

fn report(label: &str, rules: &RuleSet) {
    let mut bad = 0;
    let mut first: Option<String> = None;
    for (name, d) in pool() {
        for (ti, t) in decorations(&d).into_iter().enumerate() {
            for variant in [Variant::Standard, Variant::Mirror] {
                let c = build_complex(&d, &t, variant, Flavor::Full, rules, DEFAULT_GENERATOR_CAP).unwrap();
                let v = d_squared_violations(&c.d);
                if v > 0 {
                    bad += 1;
                    if first.is_none() {
                        first = Some(format!("{name} t#{ti} {variant:?} violations={v}"));
                    }
                }
            }
        }
    }
    println!("{label}: {bad} failing (diagram,decoration,variant) cases; first = {first:?}");
}

fn main() {
    let r0 = base_rules();
    report("khovanov only (A,B all-k)", &r0);
    let mut rc = r0; rc.c_on = true;
    report("+C", &rc);
    let mut rd = r0; rd.d_on = true;
    report("+D", &rd);
    let mut re = r0; re.e_on = true;
    report("+E", &re);
    let mut rcd = r0; rcd.c_on = true; rcd.d_on = true;
    report("+C+D", &rcd);
    let mut rall = r0; rall.c_on = true; rall.d_on = true; rall.e_on = true;
    report("+C+D+E", &rall);

    // where do 2-dim classifications land on the trefoil, for orientation sanity
    let d = LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let rs: Vec<_> = (0..8).map(|i| resolve(&d, Resolution(i))).collect();
    let rules = RuleSet { c_on: true, d_on: true, e_on: true, ..base_rules() };
    for t_bits in 0..8u32 {
        let t = Decoration((0..3).map(|i| t_bits >> i & 1 == 1).collect());
        let mut counts = std::collections::BTreeMap::new();
        for i in 0..8u32 {
            for j in 0..8u32 {
                if i & !j != 0 || (i ^ j).count_ones() < 2 {
                    continue;
                }
                let f = Face::new(Resolution(i), Resolution(j));
                let cfg = Configuration::of_face(&rs[i as usize], &rs[j as usize], f, &t.0);
                let c = classify(&cfg, &rules, false);
                *counts.entry(format!("{:?}", c.ty)).or_insert(0) += 1;
            }
        }
        println!("t={t_bits:03b}: {counts:?}");
    }
}
