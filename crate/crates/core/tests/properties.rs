use proptest::prelude::*;

use compfid::measurement::{ComplementarySummary, ErrorTableSet};
use compfid::noise::{statistical_coefficient, DiagonalChi, ModelTag};
use compfid::{
    average_fidelity_from_process, error_index_of, pauli_of_index, process_fidelity_bounds, renormalize_rows,
    statistical_chi, summarize, target_fidelity, worst_case_chi, ErrorIndex, PauliLabel, Rational, StabilizerTarget,
};

fn normalized(w: Vec<f64>) -> Vec<f64> {
    let t: f64 = w.iter().sum();
    w.into_iter().map(|v| v / t).collect()
}

fn weights(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, len)
}

fn table(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    let d = 1usize << n;
    prop::collection::vec(weights(d).prop_map(normalized), d)
}

fn tables(n: usize) -> impl Strategy<Value = ErrorTableSet<f64>> {
    (table(n), table(n)).prop_map(move |(z, x)| ErrorTableSet::new(n, z, x, "", 1e-9).unwrap())
}

fn diag_chi() -> impl Strategy<Value = DiagonalChi<f64>> {
    (1usize..=3).prop_flat_map(|n| {
        let d = 1usize << n;
        (weights(d * d), 0.0f64..20.0).prop_map(move |(w, boost)| {
            let mut w = w;
            w[0] += boost;
            let w = normalized(w);
            let values = w.chunks(d).map(<[f64]>::to_vec).collect();
            DiagonalChi::new(n, values, ModelTag::Custom).unwrap()
        })
    })
}

/// Summaries whose infidelities are close enough for the uncorrelated model
/// to stay nonnegative.
fn balanced_summary() -> impl Strategy<Value = ComplementarySummary<f64>> {
    (1usize..=3).prop_flat_map(|n| {
        let d = 1usize << n;
        (0.55f64..0.999, 0.8f64..1.25, weights(d - 1), weights(d - 1)).prop_map(move |(f_z, r, wz, wx)| {
            let f_x = 1.0 - (1.0 - f_z) * r;
            let spread = |f: f64, w: Vec<f64>| {
                std::iter::once(f).chain(normalized(w).into_iter().map(|v| v * (1.0 - f))).collect::<Vec<_>>()
            };
            ComplementarySummary::from_marginals(n, spread(f_z, wz), spread(f_x, wx), 1e-12).unwrap()
        })
    })
}

/// Every valid two-qubit target, found by brute force.
fn two_qubit_targets() -> Vec<StabilizerTarget> {
    let rest: Vec<ErrorIndex> = ErrorIndex::all(2).skip(1).collect();
    let mut out = Vec::new();
    for a in 0..rest.len() {
        for b in a + 1..rest.len() {
            for c in b + 1..rest.len() {
                let members = vec![ErrorIndex::IDENTITY, rest[a], rest[b], rest[c]];
                if let Ok(t) = StabilizerTarget::new(format!("t{}", out.len()), 2, members) {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[test]
fn brute_force_target_count() {
    // Lagrangian subspaces of F_2^4: (2+1)(2^2+1)
    assert_eq!(two_qubit_targets().len(), 15);
}

proptest! {
    #[test]
    fn index_roundtrip_large(n in 1usize..=16, x in any::<u32>(), z in any::<u32>()) {
        let mask = (1u32 << n) - 1;
        let p = PauliLabel::new(n, x & mask, z & mask).unwrap();
        let idx = error_index_of(&p);
        prop_assert_eq!(pauli_of_index(idx, n).unwrap(), p);
        let text = p.to_string();
        prop_assert_eq!(text.parse::<PauliLabel>().unwrap(), p);
    }

    #[test]
    fn commutation_matches_masks(a in 0u32..256, b in 0u32..256) {
        let (ia, ib) = (ErrorIndex::new(a >> 4, a & 15), ErrorIndex::new(b >> 4, b & 15));
        let pa = pauli_of_index(ia, 4).unwrap();
        let pb = pauli_of_index(ib, 4).unwrap();
        prop_assert_eq!(pa.commutes(&pb).unwrap(), ia.commutes_with(ib));
        prop_assert_eq!(ia.commutes_with(ib), ib.commutes_with(ia));
        prop_assert_eq!(error_index_of(&pa.product(&pb).unwrap()), ia.product(ib));
    }

    #[test]
    fn summarize_is_linear(a in tables(2), b in tables(2), w in 0.0f64..1.0) {
        let mix = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
            x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(u, v)| w * u + (1.0 - w) * v).collect()).collect()
        };
        let m = ErrorTableSet::new(2, mix(&a.z_table, &b.z_table), mix(&a.x_table, &b.x_table), "", 1e-9).unwrap();
        let (sa, sb, sm) = (summarize(&a), summarize(&b), summarize(&m));
        for f in 0..4 {
            prop_assert!((sm.p_z[f] - (w * sa.p_z[f] + (1.0 - w) * sb.p_z[f])).abs() < 1e-12);
            prop_assert!((sm.p_x[f] - (w * sa.p_x[f] + (1.0 - w) * sb.p_x[f])).abs() < 1e-12);
        }
    }

    #[test]
    fn summarize_ignores_row_order(t in tables(2), perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let mut p = t.clone();
        p.z_table = perm.iter().map(|&i| t.z_table[i].clone()).collect();
        p.x_table = perm.iter().rev().map(|&i| t.x_table[i].clone()).collect();
        let (s, sp) = (summarize(&t), summarize(&p));
        for f in 0..4 {
            prop_assert!((s.p_z[f] - sp.p_z[f]).abs() < 1e-15);
            prop_assert!((s.p_x[f] - sp.p_x[f]).abs() < 1e-15);
        }
    }

    #[test]
    fn renormalization_moves_summary_within_row_deviation(t in tables(2), noise in prop::collection::vec(-1e-3f64..1e-3, 32)) {
        let mut raw = t.clone();
        for (k, v) in raw.z_table.iter_mut().chain(raw.x_table.iter_mut()).flatten().enumerate() {
            *v = (*v + noise[k] / 4.0).clamp(0.0, 1.0);
        }
        let raw = ErrorTableSet::new(2, raw.z_table, raw.x_table, "", 2e-3).unwrap();
        let fixed = renormalize_rows(&raw).unwrap();
        let (s, sf) = (summarize(&raw), summarize(&fixed));
        let dev = raw.max_row_deviation();
        let mean_row_sum = raw.z_table.iter().map(|r| r.iter().sum::<f64>()).sum::<f64>() / 4.0;
        prop_assert!((s.p_z.iter().sum::<f64>() - mean_row_sum).abs() < 1e-12);
        prop_assert!((sf.p_z.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for f in 0..4 {
            prop_assert!((s.p_z[f] - sf.p_z[f]).abs() <= dev + 1e-15);
            prop_assert!((s.p_x[f] - sf.p_x[f]).abs() <= dev + 1e-15);
        }
    }

    #[test]
    fn bounds_sandwich(chi in diag_chi()) {
        let s = chi.implied_summary();
        let b = process_fidelity_bounds(&s);
        let f = chi.process_fidelity();
        prop_assert!(b.lower - 1e-12 <= f && f <= b.upper + 1e-12);
        prop_assert!(0.0 <= b.lower && b.lower <= b.upper && b.upper <= 1.0 + 1e-12);
    }

    #[test]
    fn worst_case_matches_summary(chi in diag_chi()) {
        let s = chi.implied_summary();
        if let Ok(w) = worst_case_chi(&s) {
            prop_assert!(w.marginal_violations(&s, 1e-12).is_empty());
            prop_assert!((w.process_fidelity() - process_fidelity_bounds(&s).lower).abs() < 1e-12);
        } else {
            prop_assert!(s.fidelity_z() + s.fidelity_x() < 1.0);
        }
    }

    #[test]
    fn statistical_marginals_and_closed_form(s in balanced_summary()) {
        let chi = statistical_chi(&s);
        prop_assert_eq!(chi.model, ModelTag::Statistical);
        prop_assert!(chi.marginal_violations(&s, 1e-9).is_empty());
        let d = s.dim() as f64;
        let (f_z, f_x) = (s.fidelity_z(), s.fidelity_x());
        let c = statistical_coefficient(&s);
        let internal = f_z + f_x - 1.0 + c * (1.0 - f_z) * (1.0 - f_x);
        let closed = (1.0 + 1.0 / d) * (f_z + f_x) / 2.0 - 1.0 / d;
        prop_assert!((internal - closed).abs() < 1e-12);
        prop_assert!((chi.process_fidelity() - closed).abs() < 1e-12);
    }

    #[test]
    fn average_fidelity_is_monotone(s in balanced_summary()) {
        let d = s.dim();
        let floor = average_fidelity_from_process(process_fidelity_bounds(&s).lower, d);
        let mut models = vec![statistical_chi(&s)];
        models.extend(worst_case_chi(&s));
        for m in models {
            prop_assert!(floor <= average_fidelity_from_process(m.process_fidelity(), d) + 1e-12);
        }
    }

    #[test]
    fn worst_case_target_formula(s in balanced_summary().prop_filter("two qubits", |s| s.n_qubits == 2), k in 0usize..15) {
        let t = &two_qubit_targets()[k];
        let chi = worst_case_chi(&s).unwrap();
        let mut direct = s.fidelity_z() + s.fidelity_x() - 1.0;
        for m in &t.members {
            if m.f_x == 0 && m.f_z != 0 {
                direct += s.eta_z(m.f_z as usize);
            } else if m.f_z == 0 && m.f_x != 0 {
                direct += s.eta_x(m.f_x as usize);
            }
        }
        prop_assert!((target_fidelity(&chi, t).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn target_fidelity_monotone_in_member_mass(chi in diag_chi().prop_filter("two qubits", |c| c.n_qubits == 2), k in 0usize..15, share in 0.0f64..1.0) {
        let t = &two_qubit_targets()[k];
        let before = target_fidelity(&chi, t).unwrap();
        let outside = ErrorIndex::all(2).find(|i| !t.members.contains(i)).unwrap();
        let member = t.members[k % 4];
        let mut values = chi.values.clone();
        let moved = values[outside.f_z as usize][outside.f_x as usize] * share;
        values[outside.f_z as usize][outside.f_x as usize] -= moved;
        values[member.f_z as usize][member.f_x as usize] += moved;
        let after = target_fidelity(&DiagonalChi::new(2, values, ModelTag::Custom).unwrap(), t).unwrap();
        prop_assert!(after >= before - 1e-15);
    }
}

#[test]
fn exact_worst_case_on_rationals() {
    let r = |n: i128| Rational::new(n, 1000);
    let z = vec![vec![r(875), r(125)], vec![r(925), r(75)]];
    let x = vec![vec![r(800), r(200)], vec![r(750), r(250)]];
    let t = ErrorTableSet::new(1, z, x, "", 0.0).unwrap();
    let s = summarize(&t);
    assert_eq!(s.fidelity_z(), r(900));
    assert_eq!(s.fidelity_x(), Rational::new(775, 1000));
    let chi = worst_case_chi(&s).unwrap();
    assert!(chi.marginal_violations(&s, 0.0).is_empty());
    assert_eq!(chi.process_fidelity(), Rational::new(675, 1000));
    assert_eq!(process_fidelity_bounds(&s).lower, chi.process_fidelity());
}
