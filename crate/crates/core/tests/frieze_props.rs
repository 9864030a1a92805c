use std::f64::consts::PI;

use frieze_core::frieze::{cut, glue, ExtentKind, FriezeTable, QuiddityCycle};
use frieze_core::realize::{classify, Verdict};
use frieze_core::ring;
use frieze_core::surface::{build_dissection, format_dissection, parse_dissection, Arc, Dissection, Surface};
use proptest::prelude::*;

fn cycle() -> impl Strategy<Value = QuiddityCycle> {
    prop::collection::vec(prop::collection::vec(prop::sample::select(vec![3u32, 4, 5, 6]), 1..=3), 1..=5)
        .prop_map(|sets| QuiddityCycle::new(sets).unwrap())
}

/// Entries by the three-term recurrence in floating point.
fn float_entry(q: &QuiddityCycle, i: i64, j: i64) -> f64 {
    let a = |k: i64| q.multiset(k).iter().map(|&p| 2.0 * (PI / p as f64).cos()).sum::<f64>();
    let (mut prev, mut cur) = (0.0, 1.0);
    if j == i {
        return 0.0;
    }
    for k in i + 1..j {
        let next = a(k) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn crosses(a: (u32, u32), b: (u32, u32)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn polygon() -> impl Strategy<Value = Dissection> {
    (4u32..=9, prop::collection::vec((1u32..=9, 1u32..=9), 0..6)).prop_map(|(n, raw)| {
        let mut chosen: Vec<(u32, u32)> = Vec::new();
        for (a, b) in raw {
            let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
            let (a, b) = (a.min(b), a.max(b));
            if b < a + 2 || (a == 1 && b == n) || chosen.contains(&(a, b)) {
                continue;
            }
            if chosen.iter().all(|&c| !crosses(c, (a, b))) {
                chosen.push((a, b));
            }
        }
        build_dissection(Surface::Polygon { n }, chosen.into_iter().map(|(a, b)| Arc::diag(a, b)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entries_follow_recurrence(q in cycle()) {
        let n = q.len() as i64;
        let mut t = FriezeTable::new(q.clone());
        for i in -1..n {
            for j in i..i + 2 * n + 4 {
                let e = t.entry(i, j).unwrap();
                let f = float_entry(&q, i, j);
                prop_assert!((e.to_f64() - f).abs() <= 1e-7 * (1.0 + f.abs()), "m_{{{},{}}}: {} vs {}", i, j, e.to_f64(), f);
            }
        }
    }

    #[test]
    fn unimodular_diamonds(q in cycle()) {
        let n = q.len() as i64;
        let mut t = FriezeTable::new(q);
        for i in 0..n {
            for j in i + 1..i + 3 * n {
                let d = t.entry(i, j).unwrap() * t.entry(i + 1, j + 1).unwrap()
                    - t.entry(i, j + 1).unwrap() * t.entry(i + 1, j).unwrap();
                prop_assert!(d.is_one(), "diamond at ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn rotation_shifts_entries(q in cycle(), r in 0usize..5) {
        let n = q.len();
        let r = r % n;
        let mut a = FriezeTable::new(q.clone());
        let mut b = FriezeTable::new(q.rotated(r));
        for i in 0..n as i64 {
            for g in 0..2 * n as i64 + 2 {
                prop_assert_eq!(a.entry(i + r as i64, i + r as i64 + g).unwrap(), b.entry(i, i + g).unwrap());
            }
        }
    }

    #[test]
    fn cut_undoes_glue(q in cycle(), p in 3u32..=6, i in 1usize..=5) {
        let i = (i - 1) % q.len() + 1;
        let g = glue(&q, p, i).unwrap();
        prop_assert_eq!(g.len(), q.len() + p as usize - 2);
        prop_assert_eq!(cut(&g, i + 1, p).unwrap(), q);
    }

    #[test]
    fn polygons_classify_as_polygons(d in polygon()) {
        let n = d.n();
        let q = d.quiddity_outer().unwrap();
        prop_assert_eq!(q.len(), n as usize);
        let mut t = FriezeTable::new(q.clone());
        prop_assert_eq!(t.extent(2 * n as usize).kind, ExtentKind::Finite { width: n as usize - 3 });
        let c = classify(&q).unwrap();
        prop_assert_eq!(&c.verdict, &Verdict::Polygon(n));
        prop_assert_eq!(c.witness.unwrap().quiddity().unwrap(), q);
    }

    #[test]
    fn dissection_text_round_trips(d in polygon()) {
        prop_assert_eq!(parse_dissection(&format_dissection(&d)).unwrap(), d);
    }

    #[test]
    fn realizable_witnesses_round_trip(q in cycle()) {
        let c = classify(&q).unwrap();
        match c.witness {
            Some(w) => prop_assert_eq!(w.quiddity().unwrap(), q),
            None => prop_assert!(!c.verdict.is_realizable()),
        }
    }
}

#[test]
fn growth_recurrence_on_a_fixed_annulus() {
    let d = parse_dissection("annulus 3 2\nperi 3 2\nbridge 2 2 0\nbridge 2 1 1\nbridge 3 1 1\nbridge 3 2 1\n").unwrap();
    let mut t = FriezeTable::new(d.quiddity_outer().unwrap());
    let s: Vec<_> = (1..=4).map(|k| t.growth_coefficient(k).unwrap()).collect();
    let ctx = s[0].ctx().clone();
    assert_eq!(s[0], ring::int(&ctx, 7));
    assert_eq!(s[1], &s[0] * &s[0] - ring::int(&ctx, 2));
    for k in 1..3 {
        assert_eq!(s[k + 1], &s[0] * &s[k] - &s[k - 1]);
    }
}
