//! Aliased quantum circuit instances.
//!
//! Circuits over arbitrary one- and two-qubit gates are written as a
//! classical instance string plus an ordered gate dictionary. The crate
//! provides the canonical layered encoding, the aliasing codec in both
//! directions, an exact statevector simulator that decides the
//! first-qubit promise, and phase-estimation constructions in which a
//! single instance string decides differently under two dictionaries.
//!
//! ```
//! use aqce::{dealias, decide, parse_instance, Gate, GateDictionary, Outcome};
//!
//! let s = parse_instance("2(1)[0](2)[0,1]").unwrap();
//! let bell = GateDictionary::new(vec![Gate::h(), Gate::cx()]).unwrap();
//! assert_eq!(dealias(&s, &bell).unwrap().len(), 2);
//! assert_eq!(decide(&s, &bell).unwrap().outcome, Outcome::PromiseViolation);
//! ```

pub mod alias;
pub mod circuit;
pub mod demo;
pub mod error;
pub mod gate;
pub mod instance;
pub mod kernel;
pub mod qpe;
pub mod sim;

pub use alias::{alias, dealias, dealias_encoding, GateDictionary};
pub use circuit::{
    canonical_encode, decode, layer, read_circuit, render, write_circuit, CanonicalEncoding,
    Circuit, GateApplication,
};
pub use demo::{pick_safe_phases, run_demo, SeparationReport};
pub use error::{Error, Result};
pub use gate::{
    classify_w, controlled_phase_gate, gates_equal, parse_gate, phase_gate, Gate, GateLabel, Sign,
    WClass,
};
pub use instance::{parse_instance, AqceInstance, Substring};
pub use kernel::Backend;
pub use qpe::{
    build_qpe, build_separation_circuit, first_differing_bit, required_register_size, QpeSpec,
};
pub use sim::{
    decide, first_qubit_one_probability, measurement_distribution, run, run_with, Decision,
    Distribution, Outcome, Statevector,
};
