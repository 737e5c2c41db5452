//! Numerical check of every state decomposition the protocols rely on.
//!
//! Each identity builds its left side by applying gates to the GHZ state and
//! its right side by assembling amplitudes directly from Bell and `x`-basis
//! kets (or from computational basis kets). The residual is `1 - fidelity`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::qsim::{fidelity, make_ghz, BellOutcome, Gate, Outcome, StateVector, XOutcome, TOLERANCE};
use crate::{QUBIT_A, QUBIT_B, QUBIT_T};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResidual {
    /// Equation number; expanded forms carry an `a` suffix.
    pub id: String,
    pub description: &'static str,
    pub residual: f64,
}

impl IdentityResidual {
    pub fn holds(&self) -> bool {
        self.residual < TOLERANCE
    }
}

/// A term `coeff · |bell>_{pair} |x>_{single}` in a 3-qubit decomposition.
struct Term {
    coeff: f64,
    bell: BellOutcome,
    x: XOutcome,
}

fn term(coeff: f64, bell: BellOutcome, x: XOutcome) -> Term {
    Term { coeff, bell, x }
}

/// Sums terms whose Bell ket sits on the ordered `pair` and whose `x` ket
/// sits on `single`.
fn assemble(pair: (usize, usize), single: usize, terms: &[Term]) -> Result<StateVector> {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    for (index, amp) in amplitudes.iter_mut().enumerate() {
        let bit = |q: usize| (index >> (2 - q)) & 1;
        let pair_index = 2 * bit(pair.0) + bit(pair.1);
        for t in terms {
            *amp += t.coeff * t.bell.ket()[pair_index] * t.x.ket()[bit(single)];
        }
    }
    StateVector::from_amplitudes(amplitudes)
}

/// `Σ coeff |ket>` over three-qubit computational basis states.
fn kets(terms: &[(f64, usize)]) -> Result<StateVector> {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    for &(coeff, index) in terms {
        amplitudes[index] += coeff;
    }
    StateVector::from_amplitudes(amplitudes)
}

fn ghz_with(gates: &[Gate]) -> Result<StateVector> {
    make_ghz().apply_sequence(gates, QUBIT_A)
}

/// Residuals for every decomposition identity, in id order.
pub fn verify_identities() -> Result<Vec<IdentityResidual>> {
    use BellOutcome::*;
    use Gate::{Hadamard as H, PauliX as X, PauliZ as Z};
    use XOutcome::{Minus, Plus};

    let half = 0.5;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let ab = (QUBIT_A, QUBIT_B);
    let at = (QUBIT_A, QUBIT_T);

    // Left sides, with Alice's operation listed in application order.
    let h = ghz_with(&[H])?;
    let hx = ghz_with(&[X, H])?;
    let hz = ghz_with(&[Z, H])?;
    let hh = ghz_with(&[H, H])?;
    let hhx = ghz_with(&[X, H, H])?;
    let hhz = ghz_with(&[Z, H, H])?;

    // Right sides.
    let h_expanded = kets(&[(half, 0b000), (half, 0b100), (half, 0b011), (-half, 0b111)])?;
    let hx_expanded = kets(&[(half, 0b000), (-half, 0b100), (half, 0b011), (half, 0b111)])?;
    let hz_expanded = kets(&[(half, 0b000), (half, 0b100), (-half, 0b011), (half, 0b111)])?;
    let h_bell = |pair, single| {
        assemble(
            pair,
            single,
            &[
                term(half, PhiPlus, Minus),
                term(-half, PsiMinus, Minus),
                term(half, PhiMinus, Plus),
                term(half, PsiPlus, Plus),
            ],
        )
    };
    let hx_bell = |pair, single| {
        assemble(
            pair,
            single,
            &[
                term(half, PhiMinus, Minus),
                term(-half, PsiPlus, Minus),
                term(half, PhiPlus, Plus),
                term(half, PsiMinus, Plus),
            ],
        )
    };
    let hz_bell = |pair, single| {
        assemble(
            pair,
            single,
            &[
                term(half, PhiMinus, Minus),
                term(half, PsiPlus, Minus),
                term(half, PhiPlus, Plus),
                term(-half, PsiMinus, Plus),
            ],
        )
    };
    let ghz = kets(&[(r, 0b000), (r, 0b111)])?;
    let flipped = kets(&[(r, 0b100), (r, 0b011)])?;
    let phased = kets(&[(r, 0b000), (-r, 0b111)])?;

    let cases: Vec<(&str, &'static str, &StateVector, StateVector)> = vec![
        ("1", "H_A|GHZ> in Bell(A,B) x T basis", &h, h_bell(ab, QUBIT_T)?),
        ("1a", "H_A|GHZ> expanded", &h, h_expanded.clone()),
        ("2", "H_A X_A|GHZ> in Bell(A,B) x T basis", &hx, hx_bell(ab, QUBIT_T)?),
        ("2a", "H_A X_A|GHZ> expanded", &hx, hx_expanded.clone()),
        ("3", "H_A H_A|GHZ> = |GHZ>", &hh, ghz.clone()),
        ("4", "H_A H_A X_A|GHZ> = (|100>+|011>)/sqrt2", &hhx, flipped.clone()),
        ("5", "H_A|GHZ> in Bell(A,B) x T basis", &h, h_bell(ab, QUBIT_T)?),
        ("5a", "H_A|GHZ> expanded", &h, h_expanded.clone()),
        ("6", "H_A Z_A|GHZ> in Bell(A,B) x T basis", &hz, hz_bell(ab, QUBIT_T)?),
        ("6a", "H_A Z_A|GHZ> expanded", &hz, hz_expanded.clone()),
        ("7", "H_A H_A|GHZ> = |GHZ>", &hh, ghz.clone()),
        ("8", "H_A H_A Z_A|GHZ> = (|000>-|111>)/sqrt2", &hhz, phased.clone()),
        ("9", "H_A|GHZ> in Bell(A,T) x B basis", &h, h_bell(at, QUBIT_B)?),
        ("10", "H_A X_A|GHZ> in Bell(A,T) x B basis", &hx, hx_bell(at, QUBIT_B)?),
        ("11", "H_A H_A|GHZ> = |GHZ>", &hh, ghz.clone()),
        ("12", "H_A H_A X_A|GHZ> = (|100>+|011>)/sqrt2", &hhx, flipped),
        ("13", "H_A|GHZ> in Bell(A,T) x B basis", &h, h_bell(at, QUBIT_B)?),
        ("14", "H_A Z_A|GHZ> in Bell(A,T) x B basis", &hz, hz_bell(at, QUBIT_B)?),
        ("14a", "H_A Z_A|GHZ> expanded", &hz, hz_expanded),
        ("15", "H_A H_A|GHZ> = |GHZ>", &hh, ghz),
        ("16", "H_A H_A Z_A|GHZ> = (|000>-|111>)/sqrt2", &hhz, phased),
    ];

    cases
        .into_iter()
        .map(|(id, description, lhs, rhs)| {
            Ok(IdentityResidual {
                id: id.to_string(),
                description,
                residual: (1.0 - fidelity(lhs, &rhs)?).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        for r in verify_identities().unwrap() {
            assert!(r.holds(), "identity {} residual {}", r.id, r.residual);
        }
    }

    #[test]
    fn a_wrong_decomposition_is_caught() {
        use BellOutcome::*;
        use XOutcome::*;
        // Swapping the Bell classes of the T = |+> and T = |-> terms.
        let wrong = assemble(
            (QUBIT_A, QUBIT_B),
            QUBIT_T,
            &[
                term(0.5, PhiPlus, Plus),
                term(-0.5, PsiMinus, Plus),
                term(0.5, PhiMinus, Minus),
                term(0.5, PsiPlus, Minus),
            ],
        )
        .unwrap();
        let lhs = ghz_with(&[Gate::Hadamard]).unwrap();
        assert!(1.0 - fidelity(&lhs, &wrong).unwrap() > 0.5);
    }
}
