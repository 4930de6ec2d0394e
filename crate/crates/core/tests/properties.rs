//! Invariants over generated families of small crossed modules.

use proptest::prelude::*;

use xmodcat::group::{GroupAction, GroupHom};
use xmodcat::io::XModDocument;
use xmodcat::rep::simple::simple_objects;
use xmodcat::report::Analysis;
use xmodcat::{CrossedModule, FiniteGroup, Settings};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Z/n -> Z/m`, `x -> k x`, trivial action; needs `m | k n`.
fn abelian_family() -> impl Strategy<Value = CrossedModule> {
    (1usize..=6, 1usize..=6, 0usize..6).prop_filter_map("k n divisible by m", |(n, m, k)| {
        if (k * n) % m != 0 {
            return None;
        }
        let map = (0..n).map(|x| (k * x) % m).collect();
        let boundary = GroupHom::new(FiniteGroup::cyclic(n), FiniteGroup::cyclic(m), map).ok()?;
        CrossedModule::new(GroupAction::trivial(FiniteGroup::cyclic(m), n), boundary).ok()
    })
}

/// `Z/k` acting on `Z/n` through multiplication by a unit `u` with `u^k = 1`,
/// trivial boundary.
fn module_family() -> impl Strategy<Value = CrossedModule> {
    (2usize..=7, 1usize..=4, 1usize..7).prop_filter_map(
        "u is a unit of order dividing k",
        |(n, k, u)| {
            let u = u % n;
            if gcd(u, n) != 1 || (0..k).fold(1, |acc, _| acc * u % n) != 1 % n {
                return None;
            }
            let perm = (0..k)
                .map(|g| {
                    let scale = (0..g).fold(1, |acc, _| acc * u % n);
                    (0..n).map(|m| m * scale % n).collect()
                })
                .collect();
            let action = GroupAction::new(FiniteGroup::cyclic(k), n, perm).ok()?;
            let boundary =
                GroupHom::new(FiniteGroup::cyclic(n), FiniteGroup::cyclic(k), vec![0; n]).ok()?;
            CrossedModule::new(action, boundary).ok()
        },
    )
}

fn small_groups() -> Vec<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        FiniteGroup::trivial(),
        z2.clone(),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::direct_product(&z2, &z2),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric(3),
    ]
}

/// A normal subgroup `N` of `G` with conjugation action and the inclusion
/// as boundary.
fn normal_subgroup_family() -> impl Strategy<Value = CrossedModule> {
    (0..small_groups().len(), 0usize..6).prop_filter_map("normal subgroup", |(gi, gen)| {
        let g = small_groups().swap_remove(gi);
        let elements = g.generated_subgroup(&[gen % g.order()]);
        if !g.is_normal(&elements) {
            return None;
        }
        let sub = g.subgroup(&elements).ok()?;
        let perm = g
            .elements()
            .map(|h| {
                sub.elements
                    .iter()
                    .map(|&n| sub.index_of(g.conjugate(n, h)).expect("normal"))
                    .collect()
            })
            .collect();
        let action = GroupAction::new(g.clone(), sub.order(), perm).ok()?;
        let boundary = GroupHom::new(sub.group.clone(), g, sub.elements.clone()).ok()?;
        CrossedModule::new(action, boundary).ok()
    })
}

fn any_crossed_module() -> impl Strategy<Value = CrossedModule> {
    prop_oneof![
        abelian_family(),
        module_family(),
        normal_subgroup_family(),
        (0..small_groups().len()).prop_map(|i| CrossedModule::drinfeld_double(&small_groups()[i])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn invariant_suite_holds(x in any_crossed_module()) {
        let analysis = Analysis::new(&x, &Settings::default()).unwrap();
        for check in analysis.checks().unwrap() {
            prop_assert!(check.passed, "{:?}", check);
        }
    }

    #[test]
    fn characters_do_not_depend_on_seed(x in any_crossed_module(), seed in any::<u64>()) {
        let a = simple_objects(&x, &Settings::default()).unwrap();
        let b = simple_objects(&x, &Settings::with_seed(seed)).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (p, q) in a.simples.iter().zip(&b.simples) {
            prop_assert_eq!(p.label, q.label);
            prop_assert!(p.character.max_diff(&q.character) < 1e-8);
        }
    }

    #[test]
    fn xbar_document_round_trips(x in any_crossed_module()) {
        let bar = x.quotient_xbar().unwrap();
        prop_assert!(bar.xmod.is_modular_boundary());
        prop_assert_eq!(bar.xmod.x1.order(), x.sub.image.order());
        let doc = XModDocument::from_crossed_module(&bar.xmod, Some("bar"));
        let again = XModDocument::parse(&doc.to_json()).unwrap().to_crossed_module().unwrap();
        prop_assert_eq!(again, bar.xmod);
    }

    #[test]
    fn tannakian_group_order(x in any_crossed_module()) {
        let gx = x.tannakian_group(&Settings::default()).unwrap();
        prop_assert_eq!(gx.group.order(), x.sub.kernel.order() * x.sub.coker.group.order());
    }
}
