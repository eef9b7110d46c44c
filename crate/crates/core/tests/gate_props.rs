use std::f64::consts::PI;

use aqce::gate::{controlled_phase_gate, phase_gate, Sign, WClass, GATE_TOLERANCE};
use aqce::{classify_w, gates_equal, parse_gate, Gate};
use num_complex::Complex64;
use proptest::prelude::*;

fn unitarity_deviation(g: &Gate) -> f64 {
    let d = g.dim();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let dot: Complex64 = (0..d).map(|r| g.entry(r, i).conj() * g.entry(r, j)).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - want).norm());
        }
    }
    worst
}

proptest! {
    #[test]
    fn phase_gates_are_unitary(theta in -1e6f64..1e6) {
        prop_assert!(unitarity_deviation(&phase_gate(theta).unwrap()) <= GATE_TOLERANCE);
        prop_assert!(unitarity_deviation(&controlled_phase_gate(theta).unwrap()) <= GATE_TOLERANCE);
    }

    #[test]
    fn classified_gates_rebuild(k in 1u32..12, controlled in any::<bool>(), minus in any::<bool>()) {
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let theta = if minus { -PI } else { PI } / 2f64.powi(k as i32);
        let g = if controlled {
            controlled_phase_gate(theta).unwrap()
        } else {
            phase_gate(theta).unwrap()
        };
        let class = classify_w(&g, 13).unwrap();
        prop_assert_eq!(class, WClass::new(controlled, sign, k).unwrap());
        prop_assert!(gates_equal(&class.gate(), &g));
    }

    #[test]
    fn any_classified_phase_rebuilds(theta in 0.0f64..6.0) {
        let g = phase_gate(theta).unwrap();
        if let Some(class) = classify_w(&g, 13) {
            prop_assert!(gates_equal(&class.gate(), &g));
        }
    }

    #[test]
    fn gate_text_round_trips(theta in -7.0f64..7.0, controlled in any::<bool>()) {
        let g = if controlled {
            controlled_phase_gate(theta).unwrap()
        } else {
            phase_gate(theta).unwrap()
        };
        let back = parse_gate(&g.to_string()).unwrap();
        prop_assert!(gates_equal(&back, &g));
    }
}

#[test]
fn w_range_depends_on_register_size() {
    for k in 1..=12 {
        for n in 2..=13usize {
            let g = phase_gate(PI / 2f64.powi(k)).unwrap();
            assert_eq!(
                classify_w(&g, n).is_some(),
                (1..n as i32).contains(&k),
                "k={k} n={n}"
            );
        }
    }
}

#[test]
fn equality_is_an_equivalence() {
    let base = [0.3, 0.3 + 4e-14, 0.3 + 8e-14, 1.0, -1.0, 2.5];
    let mut set: Vec<Gate> = base.iter().map(|&t| phase_gate(t).unwrap()).collect();
    set.extend([Gate::h(), Gate::x()]);
    for a in &set {
        assert!(gates_equal(a, a));
        for b in &set {
            assert_eq!(gates_equal(a, b), gates_equal(b, a));
            for c in &set {
                let close = a.distance(b) <= 1e-13 && b.distance(c) <= 1e-13 && a.distance(c) <= 1e-13;
                if close {
                    assert!(gates_equal(a, b) && gates_equal(b, c) && gates_equal(a, c));
                }
            }
        }
    }
}

#[test]
fn global_phase_is_not_quotiented() {
    let p = phase_gate(0.7).unwrap();
    let shifted: Vec<Complex64> = p.matrix().iter().map(|z| z * Complex64::cis(0.4)).collect();
    let q = Gate::from_matrix(1, shifted).unwrap();
    assert!(!gates_equal(&p, &q));
}
