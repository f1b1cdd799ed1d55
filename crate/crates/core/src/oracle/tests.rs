use proptest::prelude::*;

use super::*;
use crate::catalog::{all_entries, CatalogEntry};

fn entry(name: &str) -> CatalogEntry {
    name.parse().unwrap()
}

fn at(n: i64) -> Option<ExtPos> {
    Some(ExtPos::int(n))
}

fn pos_of(o: &StructureOracle, id: PointId) -> ExtPos {
    o.point(id).unwrap().pos.clone()
}

#[test]
fn empty_relation_has_no_edges() {
    let mut o = entry("iv.empty").instantiate(3);
    let a = o.exists_between(None, None, Color::Red).unwrap().unwrap();
    let b = o.exists_between(None, None, Color::Blue).unwrap().unwrap();
    assert!(!o.adjacent(a, b).unwrap());
    assert_eq!(o.adjacent(a, a), Err(OracleError::SameColor(a, a)));
    assert_eq!(o.adjacent(a, PointId(99)), Err(OracleError::UnknownId(PointId(99))));
}

#[test]
fn bounded_generic_compares_base_coordinates() {
    let mut o = entry("iv.bounded_generic.rb").instantiate(0);
    let map = *o.block_map().unwrap();
    // blue bases have even denominators, so the blue base sits at 1/2
    let (rb, bb) = (Rat::zero(), Rat::new(1, 2));
    let a = o.insert(ExtPos::Finite(map.expose(Color::Red, &rb)), Color::Red, Some(rb), &[]);
    let b = o.insert(ExtPos::Finite(map.expose(Color::Blue, &bb)), Color::Blue, Some(bb), &[]);
    assert!(o.adjacent(a, b).unwrap());
    let late = Rat::integer(1);
    let c = o.insert(ExtPos::Finite(map.expose(Color::Red, &late)), Color::Red, Some(late), &[]);
    assert!(!o.adjacent(c, b).unwrap());
    // the formula itself at red base 0 and blue base 1
    let rule = entry("iv.bounded_generic.rb").closed_form().unwrap();
    let red = ExtPos::Finite(map.expose(Color::Red, &Rat::zero()));
    let blue = ExtPos::Finite(map.expose(Color::Blue, &Rat::integer(1)));
    assert!(rule.adjacent((&red, Color::Red), (&blue, Color::Blue)));
}

#[test]
fn perfect_matching_pairs() {
    let mut o = entry("v.rb.M").instantiate(1);
    let a = o.exists_between(None, None, Color::Red).unwrap().unwrap();
    let p = o.partner_of(a).unwrap();
    assert!(o.adjacent(a, p).unwrap());
    let other = o.exists_between(Some(pos_of(&o, p)), None, Color::Blue).unwrap().unwrap();
    assert_ne!(other, p);
    assert!(!o.adjacent(a, other).unwrap());
}

#[test]
fn density_examples() {
    let mut o = entry("vi.empty+empty").instantiate(1);
    for c in Color::BOTH {
        let before = o.len();
        let x = o.exists_between(at(0), at(1), c).unwrap().unwrap();
        assert_eq!(o.len(), before + 1);
        let p = pos_of(&o, x);
        assert!(ExtPos::int(0) < p && p < ExtPos::int(1));
    }

    let mut o = entry("v.rb.M").instantiate(1);
    let a = o.exists_between(None, None, Color::Red).unwrap().unwrap();
    let p = o.partner_of(a).unwrap();
    for c in Color::BOTH {
        assert_eq!(o.exists_between(Some(pos_of(&o, a)), Some(pos_of(&o, p)), c).unwrap(), None);
    }

    let mut o = entry("iv.empty").instantiate(1);
    assert_eq!(o.exists_between(at(-5), at(-1), Color::Blue).unwrap(), None);
    assert!(o.exists_between(at(-5), at(-1), Color::Red).unwrap().is_some());
    assert_eq!(o.exists_between(at(1), at(1), Color::Red), Err(OracleError::EmptyInterval));
}

#[test]
fn witness_examples() {
    let mut o = entry("iv.unbounded_generic").instantiate(5);
    let a1 = o.exists_between(None, None, Color::Red).unwrap().unwrap();
    let a2 = o.exists_between(None, None, Color::Red).unwrap().unwrap();
    let w = WitnessSpec::new(Color::Blue, Interval::full(), vec![(a1, Sign::Plus), (a2, Sign::Minus)]);
    for _ in 0..20 {
        let b = o.realize_witness(&w).unwrap().unwrap();
        assert!(o.adjacent(a1, b).unwrap() && !o.adjacent(a2, b).unwrap());
    }

    let mut o = entry("vi.rightComplete+empty").instantiate(5);
    let a = o.exists_between(None, at(0), Color::Red).unwrap().unwrap();
    let b1 = o.exists_between(at(1), at(2), Color::Blue).unwrap().unwrap();
    let b2 = o.exists_between(at(3), at(4), Color::Blue).unwrap().unwrap();
    let w = WitnessSpec::new(
        Color::Blue,
        Interval::new(Some(pos_of(&o, b1)), Some(pos_of(&o, b2))).unwrap(),
        vec![(a, Sign::Minus)],
    );
    assert_eq!(o.realize_witness(&w).unwrap(), None);

    let mut o = entry("vi.rightGeneric+empty").instantiate(5);
    let a1 = o.exists_between(None, at(0), Color::Red).unwrap().unwrap();
    let a2 = o.exists_between(at(0), at(1), Color::Red).unwrap().unwrap();
    let top = pos_of(&o, a2);
    let w = WitnessSpec::new(Color::Blue, Interval::above(top.clone()), vec![(a1, Sign::Plus), (a2, Sign::Minus)]);
    let b = o.realize_witness(&w).unwrap().unwrap();
    assert!(pos_of(&o, b) > top);
    assert!(o.adjacent(a1, b).unwrap() && !o.adjacent(a2, b).unwrap());
}

#[test]
fn malformed_specs() {
    let mut o = entry("vi.rightGeneric+empty").instantiate(5);
    let a = o.exists_between(None, None, Color::Red).unwrap().unwrap();
    let same = WitnessSpec::new(Color::Red, Interval::full(), vec![(a, Sign::Plus)]);
    assert!(matches!(o.realize_witness(&same), Err(OracleError::MalformedSpec(_))));
    let absent = WitnessSpec::new(Color::Blue, Interval::full(), vec![(PointId(42), Sign::Plus)]);
    assert!(matches!(o.realize_witness(&absent), Err(OracleError::MalformedSpec(_))));
}

#[test]
fn snapshots_and_growth() {
    let mut o = entry("vi.rightGeneric+leftGeneric").instantiate(2);
    assert!(o.sample_snapshot().is_empty());
    o.exists_between(None, None, Color::Red).unwrap();
    assert_eq!(o.sample_snapshot().len(), 1);
    let s = o.grow_to(4).unwrap();
    assert_eq!(s.len(), 4);
    assert!(s.count_color(Color::Red) > 0 && s.count_color(Color::Blue) > 0);
    assert_eq!(o.grow_to(4).unwrap(), s);

    let mut o = entry("ii.red").instantiate(2);
    let s = o.grow_to(3).unwrap();
    assert_eq!((s.len(), s.count_color(Color::Red), s.edge_count()), (3, 3, 0));

    let mut o = entry("v.br.Above+Below").instantiate(2);
    for n in [1, 5, 10] {
        assert_eq!(o.grow_to(n).unwrap().len() % 2, 0);
    }

    let mut o = entry("i.red+blue.complete").instantiate(2);
    let s = o.grow_to(10).unwrap();
    assert_eq!((s.len(), s.edge_count()), (2, 1));
}

#[test]
fn endpoint_structures() {
    let mut o = entry("iii.posInf.blue.complete").instantiate(4);
    let z = o.exists_between(at(0), None, Color::Blue).unwrap().unwrap();
    assert_eq!(pos_of(&o, z), ExtPos::PosInf);
    assert_eq!(o.exists_between(at(0), None, Color::Blue).unwrap(), Some(z));
    assert_eq!(o.exists_between(at(0), Some(ExtPos::PosInf), Color::Blue).unwrap(), None);
    let s = o.grow_to(8).unwrap();
    assert_eq!(s.count_color(Color::Blue), 1);
    assert_eq!(s.edge_count(), 7);
}

fn check_closed_form(o: &StructureOracle) -> Result<(), String> {
    let Origin::Entry(e) = o.origin() else { return Ok(()) };
    let Some(rule) = e.closed_form() else { return Ok(()) };
    let s = o.sample();
    for a in s.points() {
        for b in s.points() {
            if a.color != b.color && rule.adjacent((&a.pos, a.color), (&b.pos, b.color)) != s.has_edge(a.id, b.id) {
                return Err(format!("{e}: {} {}", a.id, b.id));
            }
        }
    }
    Ok(())
}

fn arb_entry() -> impl Strategy<Value = CatalogEntry> {
    let all = all_entries();
    (0..all.len()).prop_map(move |i| all[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_only_grow(e in arb_entry(), seed in any::<u64>(), steps in 1usize..14) {
        let mut o = e.instantiate(seed);
        let mut prev = o.sample_snapshot();
        for n in 1..=steps {
            let next = o.grow_to(n).unwrap();
            let ids: Vec<PointId> = prev.ids().collect();
            prop_assert_eq!(next.induced(&ids).unwrap(), prev);
            prev = next;
        }
    }

    #[test]
    fn same_seed_same_sample(e in arb_entry(), seed in any::<u64>()) {
        let a = e.instantiate(seed).grow_to(10).unwrap();
        let b = e.instantiate(seed).grow_to(10).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn deterministic_entries_follow_their_formula(e in arb_entry(), seed in any::<u64>()) {
        let mut o = e.instantiate(seed);
        o.grow_to(12).unwrap();
        prop_assert_eq!(o.is_deterministic(), e.is_deterministic());
        prop_assert!(check_closed_form(&o).is_ok(), "{:?}", check_closed_form(&o));
    }

    #[test]
    fn witnesses_are_sound(e in arb_entry(), seed in any::<u64>(), picks in proptest::collection::vec((any::<u8>(), any::<bool>()), 0..4), cell in any::<u8>(), red in any::<bool>()) {
        let mut o = e.instantiate(seed);
        o.grow_to(8).unwrap();
        let c = if red { Color::Red } else { Color::Blue };
        let others: Vec<PointId> = o.sample().points().iter().filter(|p| p.color != c).map(|p| p.id).collect();
        let mut constraints: Vec<(PointId, Sign)> = Vec::new();
        if !others.is_empty() {
            for (k, s) in picks {
                let id = others[k as usize % others.len()];
                if constraints.iter().all(|(x, _)| *x != id) {
                    constraints.push((id, Sign::of(s)));
                }
            }
        }
        let pts = o.sample().points();
        let i = cell as usize % (pts.len() + 1);
        let interval = Interval {
            lo: i.checked_sub(1).map(|j| pts[j].pos.clone()),
            hi: pts.get(i).map(|p| p.pos.clone()),
        };
        let w = WitnessSpec::new(c, interval.clone(), constraints.clone());
        let before = o.sample_snapshot();
        if let Some(z) = o.realize_witness(&w).unwrap() {
            prop_assert!(interval.contains(&o.point(z).unwrap().pos));
            prop_assert_eq!(o.point(z).unwrap().color, c);
            for (x, s) in constraints {
                prop_assert!(s.holds(o.adjacent(z, x).unwrap()));
            }
            // growth never changes what was already there
            let ids: Vec<PointId> = before.ids().collect();
            o.grow_to(o.len() + 4).unwrap_or_default();
            prop_assert_eq!(o.sample().induced(&ids).unwrap(), before);
        }
        prop_assert!(check_closed_form(&o).is_ok());
    }
}
