use pals::pareto::*;
use proptest::prelude::*;

fn brute_force(points: &[Vec<f64>]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        let mut dominated = false;
        for j in 0..points.len() {
            let (a, b) = (&points[j], &points[i]);
            let le = a.iter().zip(b).all(|(x, y)| x <= y);
            let lt = a.iter().zip(b).any(|(x, y)| x < y);
            if le && lt {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(i);
        }
    }
    out
}

// Coarse values so that ties and duplicates are frequent.
fn coarse_points(q: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec((0u8..12).prop_map(|v| v as f64 / 4.0), q), 1..max)
}

fn regions(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<UncertaintyRegion>> {
    prop::collection::vec(
        ((0.0f64..1.0, 0.0f64..1.0), (0.0f64..0.3, 0.0f64..0.3)).prop_map(|((a, b), (w, h))| {
            UncertaintyRegion::new(vec![a, b], vec![a + w, b + h]).unwrap()
        }),
        n,
    )
}

proptest! {
    #[test]
    fn domination_is_a_strict_order(
        a in prop::collection::vec(-3i8..3, 3),
        b in prop::collection::vec(-3i8..3, 3),
        c in prop::collection::vec(-3i8..3, 3),
    ) {
        let f = |v: &Vec<i8>| v.iter().map(|x| *x as f64).collect::<Vec<_>>();
        let (a, b, c) = (f(&a), f(&b), f(&c));
        prop_assert!(!dominates(&a, &a));
        prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        if dominates(&a, &b) && dominates(&b, &c) {
            prop_assert!(dominates(&a, &c));
        }
    }

    #[test]
    fn pareto_indices_match_brute_force_2d(points in coarse_points(2, 500)) {
        prop_assert_eq!(pareto_indices(&points).unwrap(), brute_force(&points));
    }

    #[test]
    fn pareto_indices_match_brute_force_3d(points in coarse_points(3, 120)) {
        prop_assert_eq!(pareto_indices(&points).unwrap(), brute_force(&points));
    }

    #[test]
    fn pareto_indices_match_brute_force_continuous(
        points in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 1..500)
    ) {
        prop_assert_eq!(pareto_indices(&points).unwrap(), brute_force(&points));
    }

    #[test]
    fn rectangles_grow_with_beta(
        mu in prop::collection::vec(-1.0f64..1.0, 2),
        sigma in prop::collection::vec(0.0f64..1.0, 2),
        b1 in 0.0f64..10.0,
        extra in 0.0f64..10.0,
    ) {
        let small = rectangle_from_posterior(&mu, &sigma, b1).unwrap();
        let big = rectangle_from_posterior(&mu, &sigma, b1 + extra).unwrap();
        prop_assert!(big.contains(&small));
        prop_assert!(small.lower.iter().zip(&small.upper).all(|(l, u)| l <= u));
        prop_assert!(small.contains_point(&mu));
    }

    #[test]
    fn classification_is_a_partition(regs in regions(1..60), e in 0.0f64..0.2) {
        let c = classify(&regs, &MarginVector::new(vec![e, e]).unwrap()).unwrap();
        let mut all: Vec<usize> = c.pareto.iter().chain(&c.dominated).chain(&c.unclassified).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..regs.len()).collect::<Vec<_>>());
        let again = classify(&regs, &MarginVector::new(vec![e, e]).unwrap()).unwrap();
        prop_assert_eq!(c, again);
    }

    #[test]
    fn degenerate_limit_matches_pareto_indices(points in coarse_points(2, 80)) {
        let regs: Vec<_> = points.iter().map(|p| rectangle_from_posterior(p, &[0.3, 0.1], 0.0).unwrap()).collect();
        let c = classify(&regs, &MarginVector::zeros(2)).unwrap();
        prop_assert!(c.unclassified.is_empty());
        prop_assert_eq!(c.pareto, pareto_indices(&points).unwrap());
    }

    #[test]
    fn wider_margins_never_unclassify(regs in regions(1..40), e1 in 0.0f64..0.1, de in 0.0f64..0.1) {
        let narrow = classify(&regs, &MarginVector::new(vec![e1, e1]).unwrap()).unwrap();
        let wide = classify(&regs, &MarginVector::new(vec![e1 + de, e1 + de]).unwrap()).unwrap();
        for i in &narrow.pareto {
            prop_assert!(wide.pareto.contains(i));
        }
        for i in &wide.unclassified {
            prop_assert!(narrow.unclassified.contains(i));
        }
    }

    #[test]
    fn selection_without_exclusion_never_fails(regs in regions(1..40)) {
        let c = classify(&regs, &MarginVector::zeros(2)).unwrap();
        let visited = vec![true; regs.len()];
        let pick = select_next(&c, &regs, false, &visited).unwrap();
        prop_assert!(c.pareto.contains(&pick) || c.unclassified.contains(&pick));
        let best = c.pareto.iter().chain(&c.unclassified).map(|&i| regs[i].diameter()).fold(0.0, f64::max);
        prop_assert_eq!(regs[pick].diameter(), best);
    }

    #[test]
    fn intersection_is_contained_in_both(a in regions(1..2), b in regions(1..2)) {
        if let Some(r) = intersect_regions(&a[0], &b[0]) {
            prop_assert!(a[0].contains(&r) && b[0].contains(&r));
        }
        prop_assert_eq!(intersect_regions(&a[0], &a[0]), Some(a[0].clone()));
    }
}

#[test]
fn select_next_fails_when_everything_is_excluded() {
    let regs = vec![UncertaintyRegion::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap(); 3];
    let c = classify(&regs, &MarginVector::zeros(2)).unwrap();
    assert!(matches!(select_next(&c, &regs, true, &[true; 3]), Err(pals::Error::NoSelectablePoint)));
}
