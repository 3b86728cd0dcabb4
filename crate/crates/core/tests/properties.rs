use njc::model::{
    critical_detuning_single, eta_single, eta_two, n_bar_single, rabi_single, rabi_two, SingleModeParams, TwoModeParams,
};
use njc::oracle::{build_hamiltonian_single, compare, integrate};
use njc::scenario::{preset, preset_names, ScenarioConfig};
use njc::single::{evolve_single, SingleEvolver, SingleJointAmplitudes};
use njc::spectral::{eigen_hermitian, linear_entropy_of, von_neumann_entropy, HermitianMatrix};
use njc::states::{coherent, pair_coherent, squeezed_vacuum, two_mode_squeezed_vacuum};
use njc::two::evolve_two;
use njc::Complex64 as C64;
use proptest::prelude::*;

fn hermitian(dim: usize) -> impl Strategy<Value = HermitianMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
        HermitianMatrix::from_upper(dim, |i, j| {
            let (re, im) = v[i * dim + j];
            if i == j {
                C64::new(re, 0.0)
            } else {
                C64::new(re, im)
            }
        })
    })
}

/// Determinant by Gaussian elimination with partial pivoting.
fn lu_determinant(m: &HermitianMatrix) -> C64 {
    let n = m.dim();
    let mut a: Vec<C64> = m.as_slice().to_vec();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm())).unwrap();
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        if p.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        for i in col + 1..n {
            let f = a[i * n + col] / p;
            for j in col..n {
                let v = a[col * n + j];
                a[i * n + j] -= f * v;
            }
        }
    }
    det
}

fn density_from(amps: &[C64]) -> HermitianMatrix {
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v: Vec<C64> = amps.iter().map(|z| z / norm).collect();
    HermitianMatrix::from_upper(v.len(), |i, j| v[i] * v[j].conj())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eta_is_increasing(n in 0usize..500, k in 0.0f64..=1.0) {
        prop_assert!(eta_single(n + 1, k) > eta_single(n, k));
        prop_assert!(eta_two(n + 1, k) > eta_two(n, k));
    }

    #[test]
    fn rabi_dominates_its_components(n in 0usize..300, k in 0.0f64..=1.0, lambda in 1e-4f64..1e-1, delta in -1.0f64..1.0) {
        let p = SingleModeParams::scaled(lambda, k, delta).unwrap();
        let sp = p.spectral_point(n);
        prop_assert_eq!(rabi_single(n, &p), sp.omega_n);
        prop_assert!(sp.omega_n >= sp.delta_n.abs());
        prop_assert!(sp.omega_n >= 2.0 * lambda * sp.eta * (1.0 - 1e-15));
        let q = TwoModeParams::scaled(lambda, k, delta).unwrap();
        let sq = q.spectral_point(n);
        prop_assert_eq!(rabi_two(n, &q), sq.omega_n);
        prop_assert!(sq.omega_n >= sq.delta_n.abs() && sq.omega_n >= 2.0 * lambda * sq.eta * (1.0 - 1e-15));
    }

    #[test]
    fn critical_detuning_round_trip(n_bar in 0.0f64..200.0, k in 1e-5f64..=1.0, lambda in 1e-4f64..1e-2) {
        let p = SingleModeParams::scaled(lambda, k, 0.0).unwrap();
        let delta = critical_detuning_single(n_bar, &p).unwrap();
        let back = n_bar_single(delta, &p).unwrap();
        prop_assert!((back - n_bar).abs() < 1e-12 * (1.0 + n_bar) / k.clamp(1e-3, 1.0), "{} vs {}", back, n_bar);
    }

    #[test]
    fn coherent_recurrence_and_norm(re in -4.0f64..4.0, im in -4.0f64..4.0) {
        let alpha = C64::new(re, im);
        let f = coherent(alpha, 120).unwrap();
        let a = f.amplitudes();
        for n in 0..60 {
            let expected = a[n] * alpha / ((n + 1) as f64).sqrt();
            prop_assert!((a[n + 1] - expected).norm() < 1e-13);
        }
        prop_assert!((f.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((f.mean_photon_number() - alpha.norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn squeezed_vacuum_is_even(r in 0.0f64..1.5, theta in -3.0f64..3.0) {
        let f = squeezed_vacuum(r, theta, 800).unwrap();
        for (n, z) in f.amplitudes().iter().enumerate() {
            if n % 2 == 1 {
                prop_assert_eq!(*z, C64::new(0.0, 0.0));
            }
        }
        prop_assert!((f.mean_photon_number() - r.sinh().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn paired_states_are_positive(zeta in 0.01f64..3.0, r in 0.0f64..1.5) {
        let pc = pair_coherent(C64::new(zeta, 0.0), 60).unwrap();
        prop_assert!(pc.amplitudes().iter().all(|z| z.re > 0.0 && z.im == 0.0));
        let tsv = two_mode_squeezed_vacuum(r, 400).unwrap();
        prop_assert!((tsv.mean_photon_number() - 2.0 * r.sinh().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn single_mode_invariants(alpha in 0.0f64..5.0, k in 0.0f64..2e-3, delta in -0.05f64..0.05, lt in 0.0f64..100.0) {
        let f = coherent(C64::new(alpha, 0.0), 80).unwrap();
        let p = SingleModeParams::scaled(1e-3, k, delta).unwrap();
        let s = evolve_single(&f, &p, lt / p.lambda);
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        for n in 0..=80 {
            let block = s.c_e[n].norm_sqr() + s.c_g[n + 1].norm_sqr();
            prop_assert!((block - f.amplitudes()[n].norm_sqr()).abs() < 1e-14);
        }
        let (w, c) = (s.inversion(), s.coherence());
        prop_assert!((s.linear_entropy() - (1.0 - w * w - 4.0 * c * c)).abs() < 1e-12);
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&w));
        let l = s.linear_entropy();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&l));
    }

    #[test]
    fn evolution_composes(alpha in 0.0f64..3.0, t1 in 0.0f64..50.0, t2 in 0.0f64..50.0) {
        let f = coherent(C64::new(alpha, 0.0), 40).unwrap();
        let p = SingleModeParams::scaled(1e-3, 1e-3, 0.01).unwrap();
        let ev = SingleEvolver::new(&p, 40);
        let start = SingleJointAmplitudes::excited(&f);
        let direct = ev.evolve(&start, (t1 + t2) / p.lambda).unwrap();
        let stepped = ev.evolve(&ev.evolve(&start, t1 / p.lambda).unwrap(), t2 / p.lambda).unwrap();
        for (a, b) in direct.c_e.iter().chain(&direct.c_g).zip(stepped.c_e.iter().chain(&stepped.c_g)) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn two_mode_invariants(zeta in 0.1f64..2.5, r in 0.0f64..1.2, k in 0.0f64..4e-3, delta in -0.02f64..0.02, lt in 0.0f64..20.0) {
        let p = TwoModeParams::scaled(2e-3, k, delta).unwrap();
        let fields = [pair_coherent(C64::new(zeta, 0.0), 40).unwrap(), two_mode_squeezed_vacuum(r, 120).unwrap()];
        for f in &fields {
            let s = evolve_two(f, &p, lt / p.lambda);
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            let rec = s.record().unwrap();
            prop_assert_eq!(rec.tangle_af1_f2, rec.tangle_af2_f1);
            prop_assert!((rec.w_t * rec.w_t - (1.0 - rec.tangle_a_ff - 4.0 * rec.coherence.powi(2))).abs() < 1e-12);
            prop_assert!((s.field_mode_entropy().unwrap() - rec.tangle_af1_f2).abs() < 1e-10);
            prop_assert!(rec.relative_entropy >= 0.0);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&rec.tangle_a_ff));
        }
    }

    #[test]
    fn jacobi_preserves_invariants(m in hermitian(6)) {
        let s = eigen_hermitian(&m, None, true).unwrap();
        let sum: f64 = s.eigenvalues.iter().sum();
        prop_assert!((sum - m.trace()).abs() < 1e-9);
        let prod: f64 = s.eigenvalues.iter().product();
        prop_assert!((C64::new(prod, 0.0) - lu_determinant(&m)).norm() < 1e-9);
        let frob: f64 = s.eigenvalues.iter().map(|l| l * l).sum::<f64>().sqrt();
        prop_assert!((frob - m.frobenius_norm()).abs() < 1e-12 * (1.0 + frob));
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let vectors = s.vectors.unwrap();
        for (l, v) in s.eigenvalues.iter().zip(&vectors) {
            let mv = m.mul_vec(v);
            let resid = mv.iter().zip(v).map(|(a, b)| (a - b * l).norm()).fold(0.0, f64::max);
            prop_assert!(resid < 1e-9 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn entropy_is_permutation_and_padding_invariant(raw in prop::collection::vec(0.0f64..1.0, 1..12), zeros in 0usize..5) {
        let total: f64 = raw.iter().sum();
        prop_assume!(total > 1e-3);
        let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let h = von_neumann_entropy(&p).unwrap();
        let mut q = p.clone();
        q.reverse();
        q.extend(std::iter::repeat_n(0.0, zeros));
        prop_assert!((von_neumann_entropy(&q).unwrap() - h).abs() < 1e-12);
        prop_assert!(h >= 0.0 && h <= (p.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn pure_states_have_no_entropy(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..10)) {
        let amps: Vec<C64> = v.iter().map(|&(a, b)| C64::new(a, b)).collect();
        prop_assume!(amps.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
        let rho = density_from(&amps);
        let s = eigen_hermitian(&rho, None, false).unwrap();
        prop_assert!(von_neumann_entropy(&s.eigenvalues).unwrap() < 1e-9);
        prop_assert!(linear_entropy_of(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn linear_entropy_two_paths(v in prop::collection::vec((0.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 4)) {
        // mixture of two pure states in dimension 2
        let a = density_from(&[C64::new(v[0].1, v[0].2), C64::new(v[1].1, v[1].2)]);
        let b = density_from(&[C64::new(v[2].1, v[2].2), C64::new(v[3].1, v[3].2)]);
        let w = v[0].0;
        let rho = HermitianMatrix::from_upper(2, |i, j| a.get(i, j) * w + b.get(i, j) * (1.0 - w));
        let eig = eigen_hermitian(&rho, None, false).unwrap().eigenvalues;
        let via_eig = 2.0 * (1.0 - eig.iter().map(|l| l * l).sum::<f64>());
        prop_assert!((linear_entropy_of(&rho).unwrap() - via_eig).abs() < 1e-12);
    }

    #[test]
    fn constant_shift_is_a_global_phase(c in -5.0f64..5.0, t in 0.0f64..5e4) {
        let p = SingleModeParams::scaled(1e-3, 1e-3, 0.01).unwrap();
        let h = build_hamiltonian_single(&p, 12).unwrap();
        let shifted = HermitianMatrix::from_upper(h.dim(), |i, j| h.get(i, j) + if i == j { C64::new(c, 0.0) } else { C64::new(0.0, 0.0) });
        let f = coherent(C64::new(0.4, 0.0), 11).unwrap();
        let psi0 = SingleJointAmplitudes::excited(&f).to_basis_vector(12).unwrap();
        let d = compare(&integrate(&h, &psi0, t).unwrap(), &integrate(&shifted, &psi0, t).unwrap()).unwrap();
        prop_assert!(d.max_phase_insensitive < 1e-9);
    }

    #[test]
    fn config_text_round_trips(idx in 0usize..62, k in 0.0f64..1.0, nmax in 16usize..400) {
        let mut c = preset(&preset_names()[idx]).unwrap();
        c.k = k;
        c.set("nmax", &nmax.to_string()).unwrap();
        prop_assert_eq!(ScenarioConfig::from_text(&c.to_text()).unwrap(), c);
    }
}
