//! Randomised invariants across the library.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use kway::grover::{
    averaged_marked_state, grover_state_closed, grover_state_iterative, optimal_query_count,
    quantum_win_prob, GroverRun,
};
use kway::linalg::{eigh, trace_norm, CMatrix, HermitianOp};
use kway::polytope::{enumerate_vertices, is_k_way, is_k_way_with, vertex_to_behavior, LpMode};
use kway::quantum::{
    delta_closed_form, delta_numeric, optimal_scheme, violation_threshold, PhasePattern,
};
use kway::signaling::{classical_win_bound, eval_b, win_prob_game1, win_prob_game2, Behavior};

fn hermitian(max_dim: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
            let a = CMatrix::from_fn(d, d, |i, j| Complex64::new(v[i * d + j].0, v[i * d + j].1));
            (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
        })
    })
}

fn pair_of_hermitian(max_dim: usize) -> impl Strategy<Value = (CMatrix, CMatrix, CMatrix)> {
    (1..=max_dim).prop_flat_map(|d| {
        let entries = move || prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d);
        (entries(), entries(), entries()).prop_map(move |(a, b, g)| {
            let build = |v: &[(f64, f64)]| {
                CMatrix::from_fn(d, d, |i, j| Complex64::new(v[i * d + j].0, v[i * d + j].1))
            };
            let (a, b) = (build(&a), build(&b));
            // Unitary from the eigenvectors of a random Hermitian matrix.
            let g = build(&g);
            let u = eigh(&HermitianOp::new((&g + g.adjoint()) * Complex64::new(0.5, 0.0)).unwrap())
                .eigenvectors;
            (
                (&a + a.adjoint()) * Complex64::new(0.5, 0.0),
                (&b + b.adjoint()) * Complex64::new(0.5, 0.0),
                u,
            )
        })
    })
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn behavior(max_n: usize) -> impl Strategy<Value = Behavior> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0.0f64..=1.0, 1 << n).prop_map(move |t| Behavior::new(n, t).unwrap())
    })
}

fn phases(min_n: usize, max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    (min_n..=max_n).prop_flat_map(|n| prop::collection::vec(-PI..PI, n))
}

/// Convex combination of vertices at one level with dyadic weights `mᵢ/64`
/// (the remainder goes to `last`), so tables are exact in binary floating point.
fn vertex_mixture(n: usize, k: usize, picks: &[(usize, u32)], last: usize) -> Behavior {
    let verts = enumerate_vertices(n, k).unwrap();
    let rest = 64 - picks.iter().map(|p| p.1).sum::<u32>();
    let mut table = vec![0.0; 1 << n];
    for &(i, m) in picks.iter().chain([(last, rest)].iter()) {
        let b = vertex_to_behavior(&verts[i % verts.len()], n).unwrap();
        for (t, p) in table.iter_mut().zip(b.table()) {
            *t += m as f64 / 64.0 * p;
        }
    }
    Behavior::new(n, table).unwrap()
}

fn dyadic_picks() -> impl Strategy<Value = (Vec<(usize, u32)>, usize)> {
    (
        prop::collection::vec((0usize..4096, 1u32..=16), 0..=3),
        0usize..4096,
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eigh_reconstructs_with_orthonormal_vectors(m in hermitian(64)) {
        let d = m.nrows();
        let eig = eigh(&HermitianOp::new(m.clone()).unwrap());
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let v = &eig.eigenvectors;
        let lambda = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            d,
            eig.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        prop_assert!(max_abs(&(v * lambda * v.adjoint() - &m)) < 1e-10);
        prop_assert!(max_abs(&(v.adjoint() * v - CMatrix::identity(d, d))) < 1e-10);
    }

    #[test]
    fn trace_norm_is_absolutely_homogeneous(m in hermitian(24), c in -5.0f64..5.0) {
        let h = HermitianOp::new(m).unwrap();
        let lhs = trace_norm(&h.scale(c));
        let rhs = c.abs() * trace_norm(&h);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs));
    }

    #[test]
    fn trace_distance_is_unitarily_invariant((a, b, u) in pair_of_hermitian(16)) {
        let a = HermitianOp::new(a).unwrap();
        let b = HermitianOp::new(b).unwrap();
        let before = trace_norm(&a.sub(&b).unwrap());
        let after = trace_norm(&a.conjugate_by(&u).unwrap().sub(&b.conjugate_by(&u).unwrap()).unwrap());
        prop_assert!((before - after).abs() <= 1e-10 * (1.0 + before));
    }

    #[test]
    fn witness_is_affine_in_game_one(b in behavior(8)) {
        let n = b.n_locations() as f64;
        let lhs = eval_b(&b);
        prop_assert!((lhs - (-1.0 + (n + 1.0) * win_prob_game1(&b))).abs() < 1e-12);
        prop_assert!(lhs <= n + 1e-12);
    }

    #[test]
    fn delta_is_nonnegative(p in phases(2, 10)) {
        let n = p.len();
        prop_assert!(delta_numeric(n, &PhasePattern::new(p).unwrap()).unwrap() >= -1e-12);
    }

    #[test]
    fn delta_is_invariant_under_conjugation_and_relabelling(p in phases(2, 10), seed in any::<u64>()) {
        let n = p.len();
        let base = delta_numeric(n, &PhasePattern::new(p.clone()).unwrap()).unwrap();
        let negated: Vec<f64> = p.iter().map(|x| -x).collect();
        let conj = delta_numeric(n, &PhasePattern::new(negated).unwrap()).unwrap();
        let mut rotated = p.clone();
        rotated.rotate_left((seed % n as u64) as usize);
        rotated.swap(0, n - 1);
        let relabelled = delta_numeric(n, &PhasePattern::new(rotated).unwrap()).unwrap();
        prop_assert!((base - conj).abs() <= 1e-10, "{base} vs {conj}");
        prop_assert!((base - relabelled).abs() <= 1e-10, "{base} vs {relabelled}");
    }

    #[test]
    fn closed_form_matches_eigensolver(n in 3usize..=40, phi in 0.0f64..=PI) {
        let (closed, _) = delta_closed_form(n, phi).unwrap();
        let numeric = delta_numeric(n, &PhasePattern::half_half(n, phi).unwrap()).unwrap();
        prop_assert!((closed - numeric).abs() <= 1e-8, "N={n} phi={phi}: {closed} vs {numeric}");
    }

    #[test]
    fn grover_routes_agree(n in 2usize..=256, k_frac in 0.0f64..=1.0, m_frac in 0.0f64..1.0) {
        let k = (k_frac * 2.0 * (n as f64).sqrt()).floor() as usize;
        let marked = 1 + (m_frac * n as f64) as usize;
        let run = GroverRun::new(n, k, Some(marked)).unwrap();
        let d = grover_state_iterative(&run).max_distance(&grover_state_closed(&run).unwrap());
        prop_assert!(d <= 1e-12);
    }

    #[test]
    fn averaged_state_is_permutation_invariant(n in 2usize..=40, k in 0usize..6, seed in any::<u64>()) {
        let rho = averaged_marked_state(n, k).unwrap();
        // Fisher-Yates driven by a simple LCG on the seed.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = DMatrix::from_fn(n, n, |i, j| rho[(perm[i], perm[j])]);
        let err = (&permuted - &rho).amax();
        prop_assert!(err <= 1e-12, "{err}");
    }

    #[test]
    fn quantum_win_never_below_half(n in 2usize..=64, k in 0usize..12) {
        prop_assert!(quantum_win_prob(n, k).unwrap() >= 0.5 - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mixtures_of_level_k_vertices_stay_inside(
        k in 1usize..=3,
        (a, a_last) in dyadic_picks(),
        (b, b_last) in dyadic_picks(),
        t in 0u32..=16,
    ) {
        let mix = vertex_mixture(3, k, &a, a_last)
            .mix(&vertex_mixture(3, k, &b, b_last), t as f64 / 16.0)
            .unwrap();
        let m = is_k_way(&mix, k).unwrap();
        prop_assert!(m.is_member);
        let recon = m.reconstruct().unwrap();
        for (x, y) in recon.table().iter().zip(mix.table()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_and_floating_lp_agree(b in behavior(3), k in 1usize..=3) {
        prop_assume!(k <= b.n_locations());
        let exact = is_k_way_with(&b, k, LpMode::Exact).unwrap().is_member;
        let float = is_k_way_with(&b, k, LpMode::Floating).unwrap().is_member;
        prop_assert_eq!(exact, float);
    }

    #[test]
    fn membership_is_monotone_in_level(b in behavior(3)) {
        let n = b.n_locations();
        let member: Vec<bool> = (1..=n).map(|k| is_k_way(&b, k).unwrap().is_member).collect();
        prop_assert!(member.windows(2).all(|w| !w[0] || w[1]), "{member:?}");
    }

    #[test]
    fn violating_quantum_behaviors_are_never_members(p in phases(2, 3)) {
        let n = p.len();
        let scheme = optimal_scheme(n, &PhasePattern::new(p).unwrap()).unwrap();
        if eval_b(&scheme.behavior) > (n - 1) as f64 + 1e-9 {
            for k in 1..n {
                prop_assert!(!is_k_way(&scheme.behavior, k).unwrap().is_member);
            }
        }
    }

    #[test]
    fn k_way_behaviors_respect_the_game_two_bound(
        n in 2usize..=4,
        k_frac in 0.0f64..1.0,
        (picks, last) in dyadic_picks(),
    ) {
        let k = 1 + (k_frac * (n - 1) as f64) as usize;
        let b = vertex_mixture(n, k, &picks, last);
        prop_assert!(eval_b(&b) <= (n - 1) as f64 + 1e-12 || k == n);
        prop_assert!(win_prob_game2(&b) <= classical_win_bound(n, k).unwrap() + 1e-12);
    }
}

#[test]
fn every_n3_vertex_is_in_every_higher_level() {
    for k in 1..=3 {
        for v in enumerate_vertices(3, k).unwrap() {
            let b = vertex_to_behavior(&v, 3).unwrap();
            for level in k..=3 {
                assert!(
                    is_k_way(&b, level).unwrap().is_member,
                    "{v:?} at level {level}"
                );
            }
        }
    }
}

#[test]
fn classical_bound_is_the_read_k_or_strategy() {
    for n in 1..=6usize {
        let mut prev = 0.0;
        for k in 0..=n {
            let bound = classical_win_bound(n, k).unwrap();
            assert!(bound >= prev);
            prev = bound;
            let read_first_k =
                Behavior::from_fn(n, |x| if x & ((1 << k) - 1) != 0 { 1.0 } else { 0.0 }).unwrap();
            assert!(
                (win_prob_game2(&read_first_k) - bound).abs() < 1e-15,
                "N={n} k={k}"
            );
        }
    }
}

#[test]
fn optimal_three_location_behavior_needs_all_three_inputs() {
    let scheme = optimal_scheme(3, &PhasePattern::standard(3, PI / 2.0).unwrap()).unwrap();
    assert!(eval_b(&scheme.behavior) > 2.0);
    assert!(!is_k_way(&scheme.behavior, 2).unwrap().is_member);
}

#[test]
fn threshold_separates_violation_from_none() {
    for n in 3..=20 {
        let t = violation_threshold(n).unwrap();
        if t.is_finite() && t + 0.01 <= 1.0 {
            let inside = (t + 0.01).acos();
            assert!(
                delta_numeric(n, &PhasePattern::half_half(n, inside).unwrap()).unwrap() > 1e-10
            );
        }
        if t.is_finite() && t - 0.01 >= -1.0 {
            let outside = (t - 0.01).acos();
            assert!(
                delta_numeric(n, &PhasePattern::half_half(n, outside).unwrap()).unwrap() <= 1e-10
            );
        }
    }
}

#[test]
fn quantum_beats_classical_at_the_optimal_count() {
    for n in [16usize, 64, 256, 1024] {
        let k = optimal_query_count(n).unwrap();
        let q = quantum_win_prob(n, k).unwrap();
        assert!(q >= classical_win_bound(n, k).unwrap(), "N={n}");
    }
}

/// A common offset on every phase is *not* a symmetry: the all-zero input
/// carries no phase, so the offset moves the one-hot states relative to it.
#[test]
fn common_phase_offset_changes_delta() {
    let at_pi = PhasePattern::uniform(2, PI).unwrap();
    let at_zero = at_pi.shifted(-PI).unwrap();
    assert!((delta_numeric(2, &at_pi).unwrap() - 1.0).abs() < 1e-12);
    assert!(delta_numeric(2, &at_zero).unwrap().abs() < 1e-12);
}
