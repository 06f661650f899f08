use std::collections::{HashMap, VecDeque};

use pantsgraph::farey::box_slopes;
use pantsgraph::*;
use proptest::prelude::*;

fn s(t: &str) -> Slope64 {
    Slope64::parse(t).unwrap()
}

/// Distances from `src` by breadth-first search, adjacency tested directly
/// by |ps - qr| = 1 over every pair in the box.
fn bfs(slopes: &[Slope64], src: usize) -> Vec<u64> {
    let n = slopes.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    let (a, b) = (&slopes[i], &slopes[j]);
                    (a.p() * b.q() - a.q() * b.p()).abs() == 1
                })
                .collect()
        })
        .collect();
    let mut dist = vec![u64::MAX; n];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == u64::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[test]
fn examples() {
    assert_eq!(farey_distance(&s("2/3"), &s("2/3")), 0);
    assert_eq!(farey_distance(&s("0/1"), &s("1/0")), 1);
    assert_eq!(farey_distance(&s("0/1"), &s("3/5")), 2);
    assert_eq!(slope_intersection(&s("1/2"), &s("3/5")), 1);
    assert_eq!(slope_intersection(&s("-4/7"), &s("-4/7")), 0);
}

#[test]
fn slopes_are_normalised() {
    assert_eq!(Slope64::reduced(2, -4).unwrap(), s("-1/2"));
    assert_eq!(Slope64::new(-1, 0).unwrap(), s("1/0"));
    for bad in ["0/0", "2/-4", "-1/0", "2/4", "1", "a/b"] {
        assert!(Slope64::parse(bad).is_err(), "{bad}");
    }
    assert_eq!(s("-3/5").to_string(), "-3/5");
}

#[test]
fn ladder_agrees_with_breadth_first_search() {
    let slopes: Vec<Slope64> = box_slopes(12);
    let index: HashMap<&Slope64, usize> = slopes.iter().enumerate().map(|(i, x)| (x, i)).collect();
    for (i, a) in slopes.iter().enumerate() {
        let d = bfs(&slopes, i);
        for b in &slopes {
            assert_eq!(farey_distance(a, b), d[index[b]], "{a} -> {b}");
        }
    }
}

fn slope() -> impl Strategy<Value = Slope64> {
    (-400i64..=400, 0i64..=400).prop_filter_map("not a slope", |(p, q)| Slope64::reduced(p, q).ok())
}

fn torus_word() -> impl Strategy<Value = MappingClassWord> {
    prop::collection::vec((prop_oneof![Just(Generator::L), Just(Generator::R)], -3i64..=3), 0..8).prop_map(|l| {
        let l = l.into_iter().filter(|&(_, e)| e != 0).collect();
        MappingClassWord::new(SurfaceSpec::punctured_torus(), l).unwrap()
    })
}

proptest! {
    #[test]
    fn distance_is_a_metric(a in slope(), b in slope(), c in slope()) {
        prop_assert_eq!(farey_distance(&a, &b), farey_distance(&b, &a));
        prop_assert!(farey_distance(&a, &c) <= farey_distance(&a, &b) + farey_distance(&b, &c));
        prop_assert_eq!(farey_distance(&a, &b) == 0, a == b);
    }

    #[test]
    fn distance_is_equivariant(a in slope(), b in slope(), w in torus_word()) {
        let (wa, wb) = (farey::act(&w, &a).unwrap(), farey::act(&w, &b).unwrap());
        prop_assert_eq!(farey_distance(&wa, &wb), farey_distance(&a, &b));
        prop_assert_eq!(slope_intersection(&wa, &wb), slope_intersection(&a, &b));
    }
}
