mod common;

use common::{random_amplitudes, random_unitary, rng};
use proptest::prelude::*;
use purimetrics_core::entanglement::{
    entanglement, entanglement_of_side, reduced_density, schmidt,
};
use purimetrics_core::{BipartitePureState, MeasureId, Subsystem, C64};

fn random_state(seed: u64, d_a: usize, d_b: usize) -> BipartitePureState {
    BipartitePureState::new(d_a, d_b, random_amplitudes(&mut rng(seed), d_a * d_b)).unwrap()
}

fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn schmidt_form_is_orthonormal_and_reconstructs(seed: u64, d_a in 1usize..=4, d_b in 1usize..=4) {
        let psi = random_state(seed, d_a, d_b);
        let form = schmidt(&psi).unwrap();
        prop_assert_eq!(form.coefficients.len(), d_a.min(d_b));
        prop_assert!(form.coefficients.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!((form.coefficients.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() <= 1e-10);
        for side in [&form.left, &form.right] {
            for (i, u) in side.iter().enumerate() {
                for (j, v) in side.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((inner(u, v) - C64::new(expected, 0.0)).norm() <= 1e-10);
                }
            }
        }
        for (a, b) in form.reconstruct().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn reduced_spectra_agree_with_schmidt(seed: u64, d_a in 1usize..=4, d_b in 1usize..=4) {
        let psi = random_state(seed, d_a, d_b);
        let squares: Vec<f64> = schmidt(&psi).unwrap().coefficients.iter().map(|c| c * c).collect();
        for keep in [Subsystem::A, Subsystem::B] {
            let s = reduced_density(&psi, keep).unwrap().spectrum();
            for (k, l) in s.values().iter().enumerate() {
                let expected = squares.get(k).copied().unwrap_or(0.0);
                prop_assert!((l - expected).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn local_unitaries_leave_entanglement_unchanged(seed: u64, d_a in 1usize..=4, d_b in 1usize..=4) {
        let psi = random_state(seed, d_a, d_b);
        let mut rng = rng(seed.wrapping_add(1));
        let moved = psi
            .apply_local(&random_unitary(&mut rng, d_a), &random_unitary(&mut rng, d_b))
            .unwrap();
        for m in MeasureId::ALL {
            prop_assert!((entanglement(&psi, m).unwrap() - entanglement(&moved, m).unwrap()).abs() <= 1e-10);
        }
    }

    #[test]
    fn sides_agree_when_dimensions_match(seed: u64, d in 1usize..=4) {
        let psi = random_state(seed, d, d);
        for m in MeasureId::ALL {
            let a = entanglement_of_side(&psi, m, Subsystem::A).unwrap();
            let b = entanglement_of_side(&psi, m, Subsystem::B).unwrap();
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn product_states_are_unentangled(seed: u64, d_a in 1usize..=4, d_b in 1usize..=4) {
        let mut rng = rng(seed);
        let a = random_amplitudes(&mut rng, d_a);
        let b = random_amplitudes(&mut rng, d_b);
        let psi = BipartitePureState::product(&a, &b).unwrap();
        prop_assert_eq!(schmidt(&psi).unwrap().rank(), 1);
        for m in MeasureId::ALL {
            prop_assert!(entanglement(&psi, m).unwrap() <= 1e-10);
        }
    }

    // Schmidt rank >= 2 forces a mixed reduced state. Barakat's last measure
    // is excluded: it reads any state with a zero eigenvalue as pure.
    #[test]
    fn entangled_states_register(seed: u64, d_a in 2usize..=4, d_b in 2usize..=4) {
        let psi = random_state(seed, d_a, d_b);
        prop_assume!(schmidt(&psi).unwrap().coefficients[1] > 1e-3);
        for m in [MeasureId::Standard, MeasureId::VonNeumann, MeasureId::Edpw, MeasureId::Sskf] {
            prop_assert!(entanglement(&psi, m).unwrap() > 1e-10, "{}", m);
        }
    }
}

#[test]
fn barakat_entanglement_vanishes_on_an_entangled_qutrit_pair() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![C64::new(0.0, 0.0); 9];
    amps[0] = C64::new(h, 0.0);
    amps[4] = C64::new(h, 0.0);
    let psi_c = BipartitePureState::new(3, 3, amps).unwrap();
    assert_eq!(schmidt(&psi_c).unwrap().rank(), 2);
    assert_eq!(entanglement(&psi_c, MeasureId::BarakatLast).unwrap(), 0.0);
    assert!(entanglement(&psi_c, MeasureId::Sskf).unwrap() > 0.4);
}
