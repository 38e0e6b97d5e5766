use nalgebra::DVector;
use spinspeed::evolution::{self, Propagator};
use spinspeed::models::{self, ModelSpec, ModelVariant};
use spinspeed::oracle::{self, FullPropagator, FullRegisterState};

fn spec(v: ModelVariant, n: usize) -> ModelSpec {
    ModelSpec::new(v, n, 1.0).unwrap()
}

#[test]
fn flip_states_are_closed_under_full_hamiltonian() {
    for v in [ModelVariant::A, ModelVariant::B] {
        for n in 1..=5 {
            let s = spec(v, n);
            let full = oracle::build_full_hamiltonian(&s).unwrap();
            let small = models::build_hamiltonian(&s).unwrap();
            let basis: Vec<DVector<f64>> = (0..=n).map(|k| oracle::embed_flip_state(n, k)).collect();
            for k in 0..=n {
                let image = &full * &basis[k];
                let mut residual = image.clone();
                for (q, b) in basis.iter().enumerate() {
                    let c = b.dot(&image);
                    residual -= b * c;
                    // Matrix elements agree up to the constant offset on the diagonal.
                    let want = if q == k {
                        small.diag[k] - oracle::energy_offset(&s)
                    } else if q == k + 1 {
                        small.offdiag[k]
                    } else if q + 1 == k {
                        small.offdiag[q]
                    } else {
                        0.0
                    };
                    assert!((c - want).abs() < 1e-12, "{v} n={n} <{q}|H|{k}> = {c}, want {want}");
                }
                assert!(residual.norm() < 1e-12, "{v} n={n} k={k}");
            }
        }
    }
}

#[test]
fn model_a_and_b_coincide_at_one_spin_per_tier() {
    let a = oracle::build_full_hamiltonian(&spec(ModelVariant::A, 1)).unwrap();
    let b = oracle::build_full_hamiltonian(&spec(ModelVariant::B, 1)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.shape(), (4, 4));
}

#[test]
fn full_spectrum_contains_flip_spectrum() {
    for v in [ModelVariant::A, ModelVariant::B] {
        let s = spec(v, 3);
        let full = FullPropagator::new(&s).unwrap();
        let small = evolution::diagonalize(&models::build_hamiltonian(&s).unwrap()).unwrap();
        for &e in &small.eigenvalues {
            let shifted = e - oracle::energy_offset(&s);
            assert!(full.eigenvalues().iter().any(|&x| (x - shifted).abs() < 1e-10), "{v}: {e}");
        }
    }
}

#[test]
fn entropy_shortcut_matches_partial_trace() {
    for v in [ModelVariant::A, ModelVariant::B] {
        for n in 1..=5 {
            let s = spec(v, n);
            let full = FullPropagator::new(&s).unwrap();
            let small = Propagator::for_model(&s).unwrap();
            for i in 0..20 {
                let t = 0.137 * i as f64;
                let psi = full.state_at(t);
                assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
                let a = psi.entanglement_entropy();
                let b = evolution::entanglement_entropy(&small.state_at(t));
                assert!((a - b).abs() < 1e-8, "{v} n={n} t={t}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn initial_state_is_a_product() {
    let psi = FullRegisterState::initial(3);
    assert_eq!(psi.upper_fraction(), 1.0);
    assert_eq!(psi.entanglement_entropy(), 0.0);
    assert_eq!(psi.overlap_sqr(&psi), 1.0);
}

#[test]
fn brute_force_trace_starts_at_rest() {
    let tr = oracle::brute_force_trace(&spec(ModelVariant::B, 3), 1.0, 5).unwrap();
    let r0 = tr.rows[0];
    assert_eq!((r0.t, r0.gnt), (0.0, 0.0));
    assert!((r0.p - 1.0).abs() < 1e-14 && (r0.r - 1.0).abs() < 1e-14 && r0.entropy.abs() < 1e-12);
    assert!(oracle::brute_force_trace(&spec(ModelVariant::B, 6), 1.0, 5).is_err());
}

#[test]
fn spreads_from_full_register() {
    for n in 1..=5 {
        let b = oracle::energy_spread(&spec(ModelVariant::B, n)).unwrap();
        assert!((b - n as f64).abs() < 1e-12);
        // The pair Hamiltonian differs from the flip-basis one only by a
        // constant, so the spreads agree.
        let a = oracle::energy_spread(&spec(ModelVariant::A, n)).unwrap();
        let stats = models::energy_stats(&spec(ModelVariant::A, n)).unwrap();
        assert!((a - stats.spread).abs() < 1e-12);
    }
}
