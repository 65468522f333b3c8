use super::*;
use crate::hyp2::{dist, HPoint};
use crate::seeding::{rng_from_seed, trial_seed};
use rand::Rng;

fn pl(l1: f64, l2: f64, l3: f64) -> PantsLengths {
    PantsLengths::new(l1, l2, l3).unwrap()
}

#[test]
fn pants_trace_matches_high_precision_cosh() {
    // 2 cosh(1) = e + 1/e
    let g = pants_group(pl(2.0, 2.0, 2.0)).unwrap();
    let expected = std::f64::consts::E + 1.0 / std::f64::consts::E;
    assert!((g.generators().0.trace().abs() - expected).abs() < 1e-12);
}

#[test]
fn pants_boundary_lengths_match_targets() {
    let mut rng = rng_from_seed(21);
    for _ in 0..30 {
        let l = pl(
            rng.gen_range(0.5..8.0),
            rng.gen_range(0.5..8.0),
            rng.gen_range(0.5..8.0),
        );
        let g = pants_group(l).unwrap();
        for (curve, target) in g.boundary_curves().iter().zip(l.as_array()) {
            assert!((translation_length(curve).unwrap() - target).abs() < 1e-9);
        }
    }
}

#[test]
fn degenerate_lengths_are_rejected() {
    assert!(PantsLengths::new(0.0, 1.0, 1.0).is_err());
    assert!(PantsLengths::new(1.0, -2.0, 1.0).is_err());
}

#[test]
fn pants_axes_bound_a_right_angled_hexagon() {
    let l = pl(2.0, 3.0, 2.5);
    let g = pants_group(l).unwrap();
    let chart = PantsChart::build(&g).unwrap();
    // axis-side lengths are half the boundary lengths
    let sides = chart.axis_side_lengths();
    for (got, want) in sides.iter().zip(l.as_array()) {
        assert!((got - want / 2.0).abs() < 1e-9, "side {got} vs half of {want}");
    }
    // the deterministic center is interior
    assert!(chart.contains(chart.center()));
}

#[test]
fn pants_area_is_two_pi_by_rejection() {
    // Gauss-Bonnet: every hyperbolic pair of pants has area 2 pi
    let g = pants_group(pl(2.0, 2.0, 2.0)).unwrap();
    let chart = PantsChart::build(&g).unwrap();
    let est = estimate_pants_area(&chart, 100_000, 5);
    let rel = (est - std::f64::consts::TAU).abs() / std::f64::consts::TAU;
    assert!(rel < 0.02, "area estimate {est} off by {rel}");
}

#[test]
fn base_frame_sampling_is_deterministic_and_in_domain() {
    let g = pants_group(pl(2.0, 2.5, 3.0)).unwrap();
    let f1 = sample_base_frame(&g, 99).unwrap();
    let f2 = sample_base_frame(&g, 99).unwrap();
    assert_eq!(f1, f2);
    let f3 = sample_base_frame(&g, 100).unwrap();
    assert!(dist(f1.base, f3.base) > 0.0 || f1.direction != f3.direction);
}

#[test]
fn base_frame_directions_are_uniform() {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let g = pants_group(pl(2.0, 2.0, 2.0)).unwrap();
    let chart = PantsChart::build(&g).unwrap();
    let bins = 64usize;
    let n = 100_000usize;
    let mut counts = vec![0usize; bins];
    for t in 0..n {
        let (f, _) = sample_frame(&chart, trial_seed(7, t as u64));
        let b = ((f.direction / std::f64::consts::TAU) * bins as f64) as usize;
        counts[b.min(bins - 1)] += 1;
    }
    let expected = n as f64 / bins as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let crit = ChiSquared::new((bins - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(chi2 < crit, "chi2 {chi2} above the p=0.01 critical value {crit}");
}

#[test]
fn tree_shapes() {
    let t0 = TreeSpec::ball(0);
    assert_eq!(t0.vertex_count(), 1);
    assert_eq!(t0.internal_edge_count(), 0);
    assert_eq!(t0.edges().len(), 3); // three stubs

    let t2 = TreeSpec::ball(2);
    assert_eq!(t2.vertex_count(), 10); // 1 + 3 + 6
    assert_eq!(t2.internal_edge_count(), 9);
    assert_eq!(t2.edges().len(), 2 * 10 + 1); // internal + stubs = n-1 + n+2

    let p = TreeSpec::path(4);
    assert_eq!(p.vertex_count(), 4);
    assert_eq!(p.internal_edge_count(), 3);
    // every vertex carries exactly three slots
    for v in 0..p.vertex_count() {
        assert!(p.slots_of(v).iter().all(|&e| e != usize::MAX));
    }
}

#[test]
fn sample_fn_point_mass_and_determinism() {
    let tree = TreeSpec::ball(2);
    let law = LengthLaw::PointMass(5.0);
    let fn1 = sample_fn(&tree, &law, 7).unwrap();
    assert!(fn1.values().iter().all(|p| p.length == 5.0));
    assert!(fn1.values().iter().all(|p| (0.0..1.0).contains(&p.twist)));
    let fn2 = sample_fn(&tree, &law, 7).unwrap();
    assert_eq!(fn1, fn2);
    let fn3 = sample_fn(&tree, &law, 8).unwrap();
    assert_ne!(fn1, fn3);
}

#[test]
fn sample_fn_uniform_law_monte_carlo() {
    // ball(12) has > 10^4 edges
    let tree = TreeSpec::ball(12);
    assert!(tree.edges().len() >= 10_000);
    let fn1 = sample_fn(&tree, &LengthLaw::Uniform(4.0, 5.0), 3).unwrap();
    let mean: f64 =
        fn1.values().iter().map(|p| p.length).sum::<f64>() / fn1.values().len() as f64;
    assert!((4.48..=4.52).contains(&mean), "mean {mean}");
}

#[test]
fn sample_fn_is_stable_across_radii() {
    let law = LengthLaw::Uniform(1.0, 3.0);
    let t2 = TreeSpec::ball(2);
    let t3 = TreeSpec::ball(3);
    let f2 = sample_fn(&t2, &law, 42).unwrap();
    let f3 = sample_fn(&t3, &law, 42).unwrap();
    for (e2, p2) in t2.edges().iter().zip(f2.values()) {
        let (idx3, _) = t3
            .edges()
            .iter()
            .enumerate()
            .find(|(_, e3)| e3.key == e2.key)
            .expect("shared key");
        assert_eq!(*p2, f3.get(idx3), "edge {} differs across radii", e2.key);
    }
}

#[test]
fn truncated_exp_respects_cap() {
    let law = LengthLaw::TruncatedExp { rate: 0.7, cap: 3.0 };
    let mut rng = rng_from_seed(9);
    for _ in 0..5000 {
        let x = law.sample(&mut rng);
        assert!(x > 0.0 && x <= 3.0);
    }
}

#[test]
fn build_group_radius_zero_is_the_pants_group() {
    let tree = TreeSpec::ball(0);
    let fnv = sample_fn(&tree, &LengthLaw::PointMass(2.0), 1).unwrap();
    let g = build_group(&tree, &fnv).unwrap();
    assert_eq!(g.generators.len(), 2);
}

#[test]
fn build_group_rank_matches_euler_characteristic() {
    for r in [1usize, 2] {
        let tree = TreeSpec::ball(r);
        let fnv = sample_fn(&tree, &LengthLaw::Uniform(1.5, 3.0), 5).unwrap();
        let g = build_group(&tree, &fnv).unwrap();
        assert_eq!(g.generators.len(), tree.vertex_count() + 1);
        assert_eq!(g.generators.len(), tree.internal_edge_count() + 2);
    }
}

#[test]
fn glued_edges_present_matching_boundary_lengths() {
    let tree = TreeSpec::ball(2);
    let fnv = sample_fn(&tree, &LengthLaw::Uniform(1.0, 4.0), 11).unwrap();
    let g = build_group(&tree, &fnv).unwrap();
    for (ei, edge) in tree.edges().iter().enumerate() {
        let pair = fnv.get(ei);
        match edge.v {
            Some(v) => {
                let curve = g.edge_curves[ei].expect("internal edge has a curve");
                assert!((translation_length(&curve).unwrap() - pair.length).abs() < 1e-9);
                // the child's glued boundary presents the same length
                let child_curve = g.placed[v].boundary_curve(edge.v_slot);
                assert!((translation_length(&child_curve).unwrap() - pair.length).abs() < 1e-9);
                // and the same axis
                assert!(
                    child_curve.psl_distance(&curve).min(
                        child_curve.psl_distance(&curve.inverse())
                    ) < 1e-9
                );
            }
            None => assert!(g.edge_curves[ei].is_none()),
        }
    }
}

/// Trace set of the word ball (length <= w, operator norm <= cap), sorted
/// with near-duplicates merged. A group-as-set fingerprint.
fn ball_traces(gens: &[Isometry], w: usize, norm_cap: f64) -> Vec<f64> {
    let mut alpha: Vec<Isometry> = Vec::new();
    for g in gens {
        alpha.push(*g);
        alpha.push(g.inverse());
    }
    let mut out: Vec<f64> = Vec::new();
    fn rec(
        alpha: &[Isometry],
        last: Option<usize>,
        mat: Option<Isometry>,
        depth: usize,
        cap: f64,
        out: &mut Vec<f64>,
    ) {
        if depth == 0 {
            return;
        }
        for (i, g) in alpha.iter().enumerate() {
            if last.is_some_and(|l| l ^ 1 == i) {
                continue;
            }
            let m = match mat {
                Some(m) => m * *g,
                None => *g,
            };
            if m.op_norm() <= cap {
                out.push(m.trace().abs());
            }
            rec(alpha, Some(i), Some(m), depth - 1, cap, out);
        }
    }
    rec(&alpha, None, None, w, norm_cap, &mut out);
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-7);
    out
}

/// Two trace sets agree within tol (two-sided nearest-neighbor match).
fn trace_sets_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    let covered = |x: f64, ys: &[f64]| {
        let i = ys.partition_point(|&y| y < x);
        let lo = i.checked_sub(1).map(|j| (x - ys[j]).abs());
        let hi = ys.get(i).map(|&y| (y - x).abs());
        lo.into_iter().chain(hi).any(|d| d <= tol)
    };
    a.iter().all(|&x| covered(x, b)) && b.iter().all(|&x| covered(x, a))
}

#[test]
fn twists_change_the_group() {
    // asymmetric lengths so no hidden symmetry exchanges the trace sets
    let tree = TreeSpec::ball(1);
    let lengths = sample_fn(&tree, &LengthLaw::Uniform(1.2, 3.0), 1).unwrap();
    let with_twist = |t: f64| {
        FNAssignment::new(
            lengths.values().iter().map(|p| FnPair { length: p.length, twist: t }).collect(),
        )
        .unwrap()
    };
    let g0 = build_group(&tree, &with_twist(0.0)).unwrap();
    let g5 = build_group(&tree, &with_twist(0.5)).unwrap();
    let t0 = ball_traces(&g0.generators, 3, 1e4);
    let t5 = ball_traces(&g5.generators, 3, 1e4);
    assert!(
        !trace_sets_match(&t0, &t5, 1e-3),
        "half twists must change some word trace by > 1e-3"
    );
}

/// All group elements with operator norm <= cap, found within word length w,
/// as canonically sorted matrices. Generating-set independent once w
/// exhausts the norm ball.
fn element_ball(gens: &[Isometry], w: usize, cap: f64) -> Vec<(f64, f64, f64, f64)> {
    let mut alpha: Vec<Isometry> = Vec::new();
    for g in gens {
        alpha.push(*g);
        alpha.push(g.inverse());
    }
    let mut out: Vec<(f64, f64, f64, f64)> = Vec::new();
    fn rec(
        alpha: &[Isometry],
        last: Option<usize>,
        mat: Option<Isometry>,
        depth: usize,
        cap: f64,
        out: &mut Vec<(f64, f64, f64, f64)>,
    ) {
        if depth == 0 {
            return;
        }
        for (i, g) in alpha.iter().enumerate() {
            if last.is_some_and(|l| l ^ 1 == i) {
                continue;
            }
            let m = match mat {
                Some(m) => m * *g,
                None => *g,
            };
            if m.op_norm() <= cap {
                out.push(m.entries());
            }
            rec(alpha, Some(i), Some(m), depth - 1, cap, out);
        }
    }
    rec(&alpha, None, None, w, cap, &mut out);
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| {
        (a.0 - b.0).abs().max((a.1 - b.1).abs()).max((a.2 - b.2).abs()).max((a.3 - b.3).abs())
            <= 1e-7
    });
    out
}

#[test]
fn full_turn_slide_preserves_the_glued_group() {
    // sliding the glued pants by a full boundary length conjugates it by the
    // boundary curve, so the amalgamated group is unchanged as a set
    let host = pants_group(pl(1.4, 1.8, 2.2)).unwrap();
    let guest = pants_group(pl(1.4, 2.6, 3.0)).unwrap();
    let hc = host.boundary_curves();
    let gc = guest.boundary_curves();
    let tau = 0.37 * 1.4;
    let g1 = edge_conjugator(&hc, 0, &gc, 0, tau).unwrap();
    let g2 = edge_conjugator(&hc, 0, &gc, 0, tau + 1.4).unwrap();
    // the slide is exactly conjugation by the host boundary curve
    assert!((g2 * g1.inverse()).psl_distance(&hc[0]) < 1e-12);

    let gens1 = vec![host.generators().0, host.generators().1, g1 * guest.generators().1 * g1.inverse()];
    let gens2 = vec![host.generators().0, host.generators().1, g2 * guest.generators().1 * g2.inverse()];
    // small norm cap so both word balls exhaust the element ball: require
    // two consecutive depths to stabilize for each generating set
    let cap = 10.0;
    let b1 = element_ball(&gens1, 9, cap);
    assert_eq!(b1.len(), element_ball(&gens1, 7, cap).len(), "gens1 ball not exhausted");
    let b2 = element_ball(&gens2, 9, cap);
    assert_eq!(b2.len(), element_ball(&gens2, 7, cap).len(), "gens2 ball not exhausted");
    assert!(!b1.is_empty());
    assert_eq!(b1.len(), b2.len(), "ball sizes differ");
    for (x, y) in b1.iter().zip(&b2) {
        let d = (x.0 - y.0)
            .abs()
            .max((x.1 - y.1).abs())
            .max((x.2 - y.2).abs())
            .max((x.3 - y.3).abs());
        assert!(d <= 1e-6, "group element mismatch {d}");
    }
}

#[test]
fn twist_is_periodic_with_period_one() {
    // t and t + 1 slide by a full boundary length: the glued groups coincide
    // as subgroups, so their norm-ball trace sets agree.
    let tree = TreeSpec::ball(1);
    let base = sample_fn(&tree, &LengthLaw::Uniform(1.5, 2.5), 3).unwrap();
    let plus_one = FNAssignment::new(
        base.values()
            .iter()
            .map(|p| FnPair { length: p.length, twist: p.twist + 1.0 })
            .collect(),
    )
    .unwrap();
    let g0 = build_group(&tree, &base).unwrap();
    let g1 = build_group(&tree, &plus_one).unwrap();
    let t0 = ball_traces(&g0.generators, 5, 1e4);
    let t1 = ball_traces(&g1.generators, 5, 1e4);
    assert!(trace_sets_match(&t0, &t1, 1e-6), "twist period broken");
}

#[test]
fn star_bound_examples() {
    // l = 5, R = 3: 3 sinh(1/sinh 5) evaluated directly
    let v = star_bound(5.0, 3);
    let direct = 3.0 * (1.0 / 5.0f64.sinh()).sinh();
    assert!((v - direct).abs() < 1e-15);
    assert!((v - 0.040430741).abs() < 1e-8, "got {v}");
    assert_eq!(star_bound(1.0, 7), 0.0);
    assert_eq!(star_bound(4.0, 0), 0.0);
}

#[test]
fn segment_bounds_examples() {
    let b = pants_segment_bounds(4.0);
    assert!((b.sinh_bound - 0.0366517).abs() < 1e-6);
    assert!((b.half_bound - 1.5).abs() < 1e-15);
    assert!(b.collar_arcsinh < b.sinh_bound);
    assert_eq!(pants_segment_bounds(1.0).half_bound, 0.0);
    // both variants vanish together and their ratio tends to 1
    let big = pants_segment_bounds(20.0);
    assert!(big.sinh_bound < 1e-8);
    assert!((big.sinh_bound / big.collar_arcsinh - 1.0).abs() < 1e-6);
}

#[test]
fn systole_oracle_radius_zero() {
    let tree = TreeSpec::ball(0);
    let fnv = sample_fn(&tree, &LengthLaw::PointMass(2.0), 1).unwrap();
    let g = build_group(&tree, &fnv).unwrap();
    let s1 = systole_oracle(&g, 1, WordBudget::default()).unwrap();
    assert!((s1 - 2.0).abs() < 1e-9);
    // monotone in search depth
    let s4 = systole_oracle(&g, 4, WordBudget::default()).unwrap();
    assert!(s4 <= s1 + 1e-12);
}

#[test]
fn systole_oracle_budget_error() {
    let tree = TreeSpec::ball(1);
    let fnv = sample_fn(&tree, &LengthLaw::PointMass(3.0), 1).unwrap();
    let g = build_group(&tree, &fnv).unwrap();
    match systole_oracle(&g, 8, WordBudget { max_words: 100 }) {
        Err(PantsError::Budget { complete_to, .. }) => assert!(complete_to < 8),
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn systole_respects_star_bound_small_case() {
    // PointMass(5), R = 2, W = 6: the oracle value dominates the
    // conservative arcsinh-variant bound
    let tree = TreeSpec::ball(2);
    let fnv = sample_fn(&tree, &LengthLaw::PointMass(5.0), 77).unwrap();
    let g = build_group(&tree, &fnv).unwrap();
    let out = systole_search(&g, 6, WordBudget { max_words: 300_000 });
    assert_eq!(out.anomalies, 0);
    assert!(out.value >= star_bound_arcsinh(5.0, 2));
    // with point mass 5 the shortest curves are the pants boundaries
    assert!((out.value - 5.0).abs() < 1e-9, "systole {}", out.value);
}

#[test]
fn inj_radius_on_cyclic_group() {
    // single generator diag(e^{t/2}, e^{-t/2}), base i on its axis: radius t/2
    let g = SurfaceGroupApprox {
        tree: TreeSpec::ball(0),
        fn_assignment: FNAssignment::new(vec![
            FnPair { length: 1.0, twist: 0.0 };
            3
        ])
        .unwrap(),
        generators: vec![Isometry::axis_translation(1.6)],
        base_frame: Frame2::new(HPoint::i(), 0.0),
        placed: Vec::new(),
        edge_curves: vec![None; 3],
    };
    let r = inj_radius_at(&g, &g.base_frame.clone(), 3, WordBudget::default()).unwrap();
    assert!((r - 0.8).abs() < 1e-12);
}

#[test]
fn inj_radius_vs_systole_cross_check() {
    // 2 * inj_radius >= systole never fails: a loop at the base point is at
    // least as long as the shortest closed geodesic
    let tree = TreeSpec::ball(1);
    for seed in 0..5u64 {
        let fnv = sample_fn(&tree, &LengthLaw::Uniform(1.0, 4.0), seed).unwrap();
        let g = build_group(&tree, &fnv).unwrap();
        let frame = sample_base_frame(&g.placed[0].pants, seed).unwrap();
        let inj = inj_radius_at(&g, &frame, 5, WordBudget::default()).unwrap();
        let sys = systole_search(&g, 5, WordBudget::default()).value;
        assert!(2.0 * inj >= sys - 1e-9, "inj {inj} sys {sys}");
    }
}

#[test]
fn deep_twist_coherence_across_builds() {
    // the seam-anchored normalizer keeps subtree placements equivariant:
    // shifting a depth-1 twist by a full period leaves even the depth-2
    // subtree's elements unchanged
    let tree = TreeSpec::ball(2);
    let base = sample_fn(&tree, &LengthLaw::Uniform(1.5, 2.5), 9).unwrap();
    let mut shifted_vals = base.values().to_vec();
    // find a depth-1 internal edge and shift its twist by 1
    let (ei, _) = tree
        .edges()
        .iter()
        .enumerate()
        .find(|(_, e)| e.v.is_some_and(|v| tree.depth_of(v) == 1))
        .unwrap();
    shifted_vals[ei].twist += 1.0;
    let shifted = FNAssignment::new(shifted_vals).unwrap();
    let g0 = build_group(&tree, &base).unwrap();
    let g1 = build_group(&tree, &shifted).unwrap();
    let t0 = ball_traces(&g0.generators, 4, 1e4);
    let t1 = ball_traces(&g1.generators, 4, 1e4);
    assert!(trace_sets_match(&t0, &t1, 1e-6), "deep coherence broken");
}
