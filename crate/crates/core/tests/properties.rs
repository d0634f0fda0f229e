use proptest::prelude::*;

use seshadri::arrangement::{gen_generic, singular_locus, IncidenceStructure};
use seshadri::inequalities::{
    chain_lower_bound, check_elx2, check_elx2_improved, check_osz, check_osz_milnor,
    special_lower_bound, CurveSingData,
};
use seshadri::projective::{incident, line_through, meet, rat, ProjLine, ProjPoint, Rat};
use seshadri::seshadri::{
    cover_candidates, covering_lower_bound, greedy_cover, min_line_cover, resolve, CurveClass,
    LineDivisor,
};

fn small_point() -> impl Strategy<Value = ProjPoint> {
    (-6i64..=6, -6i64..=6, -6i64..=6)
        .prop_filter("nonzero", |&(x, y, z)| (x, y, z) != (0, 0, 0))
        .prop_map(|(x, y, z)| ProjPoint::from_ints(x, y, z).unwrap())
}

/// Few small coefficients, so concurrences are common.
fn small_lines() -> impl Strategy<Value = Vec<ProjLine>> {
    prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 3..=7).prop_filter_map(
        "distinct lines",
        |raw| {
            let mut lines: Vec<ProjLine> = raw
                .into_iter()
                .filter_map(|(a, b, c)| ProjLine::from_ints(a, b, c).ok())
                .collect();
            lines.sort();
            lines.dedup();
            (lines.len() >= 3).then_some(lines)
        },
    )
}

fn curve_data() -> impl Strategy<Value = CurveSingData> {
    (4u32..=40).prop_flat_map(|d| {
        prop::collection::vec(2u32..d, 1..=15).prop_map(move |mut m| {
            m.sort_unstable_by(|a, b| b.cmp(a));
            let milnor = m.iter().map(|&x| (x as u64 - 1).pow(2)).collect();
            CurveSingData::new(d, m)
                .unwrap()
                .with_milnor(milnor)
                .unwrap()
        })
    })
}

/// Fewest sets covering all `n` points, by breadth-first search over masks.
fn bitmask_optimum(sets: &[Vec<usize>], n: usize) -> usize {
    let full = (1usize << n) - 1;
    let masks: Vec<usize> = sets
        .iter()
        .map(|s| s.iter().map(|&p| 1 << p).sum())
        .collect();
    let mut dist = vec![usize::MAX; 1 << n];
    dist[0] = 0;
    let mut frontier = vec![0usize];
    let mut level = 0;
    while dist[full] == usize::MAX {
        level += 1;
        let mut next = Vec::new();
        for &m in &frontier {
            for &s in &masks {
                let t = m | s;
                if dist[t] == usize::MAX {
                    dist[t] = level;
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    dist[full]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn join_and_meet_are_incident(p in small_point(), q in small_point()) {
        prop_assume!(p != q);
        let l = line_through(&p, &q).unwrap();
        prop_assert!(incident(&p, &l) && incident(&q, &l));
        // dual statement: the same cross product meets two lines
        let l1 = ProjLine::new(p.coords().clone()).unwrap();
        let l2 = ProjLine::new(q.coords().clone()).unwrap();
        let x = meet(&l1, &l2).unwrap();
        prop_assert_eq!(x.coords(), l.coeffs());
    }

    #[test]
    fn canonical_form_is_scale_invariant(p in small_point(), k in prop_oneof![-9i64..=-1, 1i64..=9]) {
        let scaled: [Rat; 3] = p.coords().clone().map(|c| c * rat(k, 1));
        prop_assert_eq!(ProjPoint::new(scaled).unwrap(), p.clone());
        prop_assert_eq!(ProjPoint::new(p.coords().clone()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn milnor_form_implies_osz(c in curve_data()) {
        if check_osz_milnor(&c).unwrap() {
            prop_assert!(check_osz(&c).unwrap());
        }
    }

    #[test]
    fn chain_bound_dominates_special_bound(c in curve_data()) {
        let chain = chain_lower_bound(c.mults()).unwrap();
        let special = special_lower_bound(c.num_points() as u64).unwrap();
        prop_assert!(chain.square() >= special.square());
    }

    #[test]
    fn improved_elx_implies_elx(c in curve_data()) {
        if check_elx2_improved(&c).unwrap() {
            prop_assert!(check_elx2(&c).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resolve_interval_is_sound(lines in small_lines()) {
        let s = singular_locus(&lines).unwrap();
        let e = resolve(&s);
        prop_assert!(e.lower <= e.upper);
        prop_assert!(e.lower >= Rat::new(1.into(), (s.num_points() as u64).into()));
        prop_assert!(e.trivial_upper.cmp_rat(&e.lower).is_ge());
    }

    #[test]
    fn min_cover_is_optimal(lines in small_lines()) {
        let s = singular_locus(&lines).unwrap();
        prop_assume!(s.num_points() <= 16);
        let pool = cover_candidates(&s);
        let cover = min_line_cover(&s, s.num_points()).unwrap().unwrap();
        let size = cover.components().len();
        prop_assert!(size <= greedy_cover(&s).len());
        let sets: Vec<Vec<usize>> = pool.iter().map(|c| c.points.clone()).collect();
        prop_assert_eq!(size, bitmask_optimum(&sets, s.num_points()));
        prop_assert!(covering_lower_bound(&cover, &s).is_ok());
    }

    #[test]
    fn pairing_holds_for_unions_of_other_lines(lines in small_lines(), split in 1usize..6) {
        let s = singular_locus(&lines).unwrap();
        let d = s.num_lines();
        let split = split.min(d - 1);
        let div = LineDivisor::arrangement_lines(&s, &(0..split).collect::<Vec<_>>()).unwrap();
        let mults = s.points().iter().enumerate().map(|(p, pt)| {
            (p, pt.lines().iter().filter(|&&l| l >= split).count() as u64)
        });
        let union = CurveClass::new((d - split) as u64, mults).unwrap();
        prop_assert!(div.pairing_holds(&union));
    }

    #[test]
    fn general_position_gives_one_over_d_minus_one(d in 3usize..=7, seed in any::<u64>()) {
        let s: IncidenceStructure = gen_generic(d, seed).unwrap();
        prop_assert_eq!(s.num_points(), d * (d - 1) / 2);
        let e = resolve(&s);
        prop_assert_eq!(e.value(), Some(&rat(1, d as i64 - 1)));
    }
}
