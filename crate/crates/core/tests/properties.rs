use proptest::prelude::*;

use num_traits::ToPrimitive;
use spinspeed::analysis::{self, Observable};
use spinspeed::angmom::{self, CgArgs, CgColumn};
use spinspeed::bounds;
use spinspeed::evolution::{self, Propagator};
use spinspeed::models::{self, ModelSpec, ModelVariant};
use spinspeed::oracle;

fn variant() -> impl Strategy<Value = ModelVariant> {
    prop_oneof![Just(ModelVariant::A), Just(ModelVariant::B)]
}

/// Valid doubled (j1, m1, j2, m2) with j1, j2 <= `max`.
fn column_args(max: i32) -> impl Strategy<Value = (i32, i32, i32, i32)> {
    (0..=max, 0..=max).prop_flat_map(|(j1, j2)| {
        (Just(j1), 0..=j1, Just(j2), 0..=j2).prop_map(|(j1, a, j2, b)| (j1, 2 * a - j1, j2, 2 * b - j2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn column_is_normalized((j1, m1, j2, m2) in column_args(400)) {
        let col = CgColumn::new(j1, m1, j2, m2).unwrap();
        let s: f64 = col.values().iter().map(|c| c * c).sum();
        prop_assert!((s - 1.0).abs() < 1e-10, "{s}");
    }

    #[test]
    fn distinct_columns_are_orthogonal(n in 1u32..160, k1 in 0u32..160, k2 in 0u32..160) {
        let (k1, k2) = (k1 % (n + 1), k2 % (n + 1));
        let table = angmom::tier_table(n).unwrap();
        let dot: f64 = table[k1 as usize].iter().zip(&table[k2 as usize]).map(|(a, b)| a * b).sum();
        let want = if k1 == k2 { 1.0 } else { 0.0 };
        prop_assert!((dot - want).abs() < 1e-10, "{dot}");
    }

    #[test]
    fn sum_over_flips_is_unity(n in 1u32..160, j in 0u32..160) {
        let j = j % (n + 1);
        let table = angmom::tier_table(n).unwrap();
        let s: f64 = table.iter().map(|row| row[j as usize].powi(2)).sum();
        prop_assert!((s - 1.0).abs() < 1e-10, "{s}");
    }

    #[test]
    fn float_matches_exact((j1, m1, j2, m2) in column_args(40), pick in 0usize..100) {
        let lo = (j1 - j2).abs().max((m1 + m2).abs());
        let count = ((j1 + j2 - lo) / 2 + 1) as usize;
        let j = lo + 2 * (pick % count) as i32;
        let args = CgArgs::doubled(j1, m1, j2, m2, j, m1 + m2);
        let exact = oracle::cg_exact_rational(&args).unwrap();
        let want = exact.square.to_f64().unwrap();
        let got = angmom::clebsch_gordan(&args).unwrap();
        if want == 0.0 {
            prop_assert!(got.abs() < 1e-12);
        } else {
            prop_assert!(((got * got - want) / want).abs() < 1e-11, "{got} vs {want}");
            prop_assert_eq!(got.signum() as i8, exact.sign);
        }
    }

    #[test]
    fn recursion_is_consistent((j1, m1, j2, m2) in column_args(300)) {
        // Every interior entry satisfies the three-term relation in j, which
        // holds for f(j) = C(j) / sqrt(2j + 1).
        let col = CgColumn::new(j1, m1, j2, m2).unwrap();
        let h = |x: i32| f64::from(x) / 2.0;
        let (fj1, fj2, fm1, fm2) = (h(j1), h(j2), h(m1), h(m2));
        let fm = fm1 + fm2;
        let a = |j: f64| ((j * j - (fj1 - fj2).powi(2)) * ((fj1 + fj2 + 1.0).powi(2) - j * j) * (j * j - fm * fm)).sqrt();
        let b = |j: f64| (2.0 * j + 1.0) * (fm * (fj1 * (fj1 + 1.0) - fj2 * (fj2 + 1.0)) + j * (j + 1.0) * (fm2 - fm1));
        let f = |jd: i32| col.get(jd) / (f64::from(jd) + 1.0).sqrt();
        let mut jd = col.j_min() + 2;
        while jd + 2 <= col.j_max() {
            let j = h(jd);
            let terms = [j * a(j + 1.0) * f(jd + 2), b(j) * f(jd), (j + 1.0) * a(j) * f(jd - 2)];
            let scale: f64 = terms.iter().map(|x| x.abs()).sum();
            let total: f64 = terms.iter().sum();
            prop_assert!(total.abs() <= 1e-10 * scale, "j = {j}: {terms:?}");
            jd += 2;
        }
    }

    #[test]
    fn racah_agrees_with_ladder((j1, m1, j2, m2) in column_args(40), pick in 0usize..100) {
        let lo = (j1 - j2).abs().max((m1 + m2).abs());
        let count = ((j1 + j2 - lo) / 2 + 1) as usize;
        let j = lo + 2 * (pick % count) as i32;
        let args = CgArgs::doubled(j1, m1, j2, m2, j, m1 + m2);
        let ladder = oracle::cg_exact_lowering(&args).unwrap();
        prop_assert_eq!(&ladder, &oracle::cg_exact_rational(&args).unwrap());
        let ladder = ladder.to_f64();
        let column = angmom::clebsch_gordan(&args).unwrap();
        prop_assert!((column - ladder).abs() < 1e-12, "{args:?}: {column} vs {ladder}");
        if j1.max(j2).max(j) <= 20 {
            let racah = angmom::clebsch_gordan_racah(&args).unwrap();
            prop_assert!((racah - ladder).abs() < 1e-12, "{args:?}: {racah} vs {ladder}");
        }
    }

    #[test]
    fn lowering_agrees_with_column((j1, m1, j2, m2) in column_args(16)) {
        let col = CgColumn::new(j1, m1, j2, m2).unwrap();
        for j in (col.j_min()..=col.j_max()).step_by(2) {
            let args = CgArgs::doubled(j1, m1, j2, m2, j, m1 + m2);
            let ladder = oracle::cg_by_lowering(&args).unwrap();
            prop_assert!((ladder - col.get(j)).abs() < 1e-11, "{args:?}");
        }
    }

    #[test]
    fn evolution_conserves_norm_and_energy(v in variant(), n in 1usize..200, t in 0.0f64..20.0) {
        let spec = ModelSpec::new(v, n, 1.0).unwrap();
        let prop = Propagator::for_model(&spec).unwrap();
        let h = models::build_hamiltonian(&spec).unwrap();
        let psi = prop.state_at(t / n as f64);
        prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
        let hpsi = h.apply(&psi.amplitudes);
        let e: f64 = psi.amplitudes.iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum();
        let e0 = models::energy_stats(&spec).unwrap().mean_energy;
        prop_assert!((e - e0).abs() <= 1e-9 * h.norm_bound(), "{e} vs {e0}");
    }

    #[test]
    fn observables_stay_in_range(v in variant(), n in 1usize..128, gnt in 0.0f64..30.0) {
        let spec = ModelSpec::new(v, n, 1.0).unwrap();
        let prop = Propagator::for_model(&spec).unwrap();
        let o = evolution::Observables::of(&prop.state_at(spec.time_from_scaled(gnt)), n);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&o.p));
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&o.r));
        prop_assert!(o.entropy >= -1e-12 && o.entropy <= ((n + 1) as f64).ln() + 1e-12);
    }

    #[test]
    fn speed_limit_holds(v in prop_oneof![Just(ModelVariant::A), Just(ModelVariant::B), Just(ModelVariant::C)],
                         n in 2usize..96, eps in 0.02f64..0.6) {
        let spec = ModelSpec::new(v, n, 1.0).unwrap();
        let stats = models::energy_stats(&spec).unwrap();
        let tau = bounds::speed_limit(&stats, eps).unwrap().tau_limit;
        if let Ok(hit) = analysis::find_crossing(&spec, Observable::P, eps, None) {
            prop_assert!(hit.t_star >= tau * (1.0 - 1e-9), "{v} n={n}: {} < {tau}", hit.t_star);
        }
    }

    #[test]
    fn bound_times_decrease_with_epsilon(e1 in 0.0f64..0.98, gap in 1e-6f64..0.5) {
        let e2 = (e1 + gap).min(0.99);
        let stats = models::energy_stats(&ModelSpec::new(ModelVariant::B, 16, 1.0).unwrap()).unwrap();
        let a = bounds::speed_limit(&stats, e1).unwrap();
        let b = bounds::speed_limit(&stats, e2).unwrap();
        prop_assert!(a.tau_limit > b.tau_limit);
    }

    #[test]
    fn coupling_rescales_time(v in variant(), n in 1usize..64, g in 0.1f64..10.0, gnt in 0.0f64..10.0) {
        let unit = ModelSpec::new(v, n, 1.0).unwrap();
        let scaled = ModelSpec::new(v, n, g).unwrap();
        let p1 = Propagator::for_model(&unit).unwrap().state_at(unit.time_from_scaled(gnt));
        let p2 = Propagator::for_model(&scaled).unwrap().state_at(scaled.time_from_scaled(gnt));
        let (a, b) = (evolution::Observables::of(&p1, n), evolution::Observables::of(&p2, n));
        prop_assert!((a.p - b.p).abs() < 1e-9 && (a.r - b.r).abs() < 1e-9 && (a.entropy - b.entropy).abs() < 1e-8);
    }
}
