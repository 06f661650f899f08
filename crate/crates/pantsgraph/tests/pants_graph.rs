use std::collections::HashSet;

use pantsgraph::pants::frames::Genus2Graph;
use pantsgraph::pants::search::MoveGraph;
use pantsgraph::pants::{is_elementary_move, neighbors, pants_distance, validate_pants, verify_path, Cutoff, Status};
use pantsgraph::*;
use proptest::prelude::*;

fn g2() -> SurfaceSpec {
    SurfaceSpec::genus2()
}

fn word(text: &str) -> MappingClassWord {
    MappingClassWord::parse(g2(), text).unwrap()
}

fn base() -> Pants64 {
    Pants64::base(g2()).unwrap()
}

fn cut(t: u32, r: u32) -> Cutoff {
    Cutoff::new(t, r).unwrap()
}

fn dist(p: &Pants64, q: &Pants64, c: &Cutoff) -> u32 {
    let cert = pants_distance(p, q, c).unwrap();
    assert_eq!(cert.status, Status::ExactWithinCutoff);
    assert!(verify_path(&cert).unwrap());
    assert_eq!(cert.path.first(), Some(p));
    assert_eq!(cert.path.last(), Some(q));
    cert.distance
}

#[test]
fn validation() {
    let c = |j| Curve64::chain(j);
    assert_eq!(validate_pants(vec![Curve64::separating(), c(5), c(1)]).unwrap(), base());
    assert!(matches!(
        validate_pants(vec![c(1), c(2), c(5)]),
        Err(Error::IntersectingCurves { first: 0, second: 1, count: 1 })
    ));
    assert!(matches!(validate_pants(vec![c(1), c(1), c(5)]), Err(Error::DuplicateCurve { .. })));
    assert!(matches!(validate_pants(vec![c(1), c(3)]), Err(Error::WrongCount { expected: 3, found: 2 })));
    let two = Curve64::new(g2(), vec![(0, 2), (0, 0), (0, 0)]).unwrap();
    assert!(matches!(validate_pants(vec![two, c(3), c(5)]), Err(Error::NotACurve(0))));
    assert_eq!(Pants64::parse(g2(), &base().to_string()).unwrap(), base());
}

#[test]
fn torus_neighbours() {
    let t = SurfaceSpec::punctured_torus();
    let p = Pants64::parse(t, "{0/1}").unwrap();
    let got: Vec<String> = neighbors(&p, &cut(3, 1)).unwrap().iter().map(|x| x.to_string()).collect();
    let mut want = ["{1/0}", "{1/1}", "{1/2}", "{1/3}", "{-1/1}", "{-1/2}", "{-1/3}"].map(String::from).to_vec();
    want.sort_by_key(|s| Pants64::parse(t, s).unwrap());
    assert_eq!(got, want);
}

#[test]
fn genus2_neighbours_are_elementary_moves() {
    let p = base();
    let ns = neighbors(&p, &cut(2, 1)).unwrap();
    assert!(!ns.is_empty());
    assert!(!ns.contains(&p));
    for q in &ns {
        assert!(is_elementary_move(&p, q).unwrap(), "{q}");
    }
    let ones: HashSet<_> = ns.iter().filter(|q| !q.curves().contains(&Curve64::chain(1))).collect();
    for q in ones {
        let added = q.curves().iter().find(|c| !p.curves().contains(c)).unwrap();
        assert_eq!(intersection_number(added, &Curve64::chain(1)).unwrap(), 1);
    }
}

#[test]
fn distance_examples() {
    let p = base();
    let c = cut(1, 8);
    assert_eq!(dist(&p, &p, &c), 0);
    assert_eq!(dist(&p, &p.act(&word("t1 t5^-3")).unwrap(), &c), 0);
    assert_eq!(dist(&p, &p.act(&word("t2")).unwrap(), &c), 1);
    assert_eq!(dist(&p, &p.act(&word("t3")).unwrap(), &c), 2);
    assert_eq!(dist(&p, &p.act(&word("t2 t4")).unwrap(), &c), 2);
}

#[test]
fn torus_distance_is_farey_distance() {
    let t = SurfaceSpec::punctured_torus();
    for (a, b) in [("0/1", "1/0"), ("0/1", "3/5"), ("-2/7", "5/3"), ("1/4", "1/4")] {
        let (p, q) = (Pants64::parse(t, &format!("{{{a}}}")).unwrap(), Pants64::parse(t, &format!("{{{b}}}")).unwrap());
        let want = farey_distance(p.slope().unwrap(), q.slope().unwrap()) as u32;
        assert_eq!(dist(&p, &q, &cut(8, 10)), want, "{a} {b}");
    }
}

#[test]
fn cutoff_errors() {
    assert_eq!(Cutoff::new(0, 3), Err(Error::InvalidCutoff));
    let p = base();
    let q = p.act(&word("t3")).unwrap();
    assert!(matches!(pants_distance(&p, &q, &cut(1, 1)), Err(Error::NotFound { .. })));
    let t = Pants64::base(SurfaceSpec::punctured_torus()).unwrap();
    assert!(matches!(pants_distance(&p, &t, &cut(1, 1)), Err(Error::SurfaceMismatch(..))));
}

#[test]
fn truncated_adjacency_is_symmetric() {
    let p = base();
    let q = p.act(&word("t1 t2^-1 t3 t4^-1")).unwrap();
    let g = Genus2Graph::for_pair(&dts(&p), &dts(&q));
    let c = cut(1, 4);
    let mut frontier = vec![g.locate(&dts(&p)).unwrap()];
    let mut checked = 0;
    for _ in 0..2 {
        let mut next = Vec::new();
        for u in &frontier {
            for v in g.adjacent(u, &c).unwrap() {
                let back: Vec<_> = g.adjacent(&v, &c).unwrap().iter().map(|x| g.key(x)).collect();
                assert!(back.contains(&g.key(u)));
                checked += 1;
                next.push(v);
            }
        }
        next.truncate(40);
        frontier = next;
    }
    assert!(checked > 40);
}

fn dts(p: &Pants64) -> [[i64; 6]; 3] {
    let mut out = [[0; 6]; 3];
    for (o, c) in out.iter_mut().zip(p.curves()) {
        *o = c.dt().unwrap();
    }
    out.sort();
    out
}

#[test]
fn larger_cutoffs_never_lengthen_paths() {
    let p = base();
    for w in ["t1 t2^-1 t3", "t3 t4 t2^-1", "t2^2 t3"] {
        let q = p.act(&word(w)).unwrap();
        assert!(dist(&p, &q, &cut(2, 8)) <= dist(&p, &q, &cut(1, 8)), "{w}");
    }
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = MappingClassWord> {
    prop::collection::vec((1u32..=5, prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len).prop_map(|l| {
        MappingClassWord::new(g2(), l.into_iter().map(|(j, e)| (Generator::Twist(j), e)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn distance_is_symmetric_and_equivariant(u in word_strategy(3), g in word_strategy(4)) {
        let c = cut(1, 8);
        let p = base();
        let q = p.act(&u).unwrap();
        let d = dist(&p, &q, &c);
        prop_assert_eq!(dist(&q, &p, &c), d);
        prop_assert_eq!(dist(&p.act(&g).unwrap(), &q.act(&g).unwrap(), &c), d);
    }
}
