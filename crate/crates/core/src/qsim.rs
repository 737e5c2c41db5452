//! Exact state-vector simulation for registers of one to three qubits.
//!
//! Qubit 0 is the leftmost label of a ket, so a three-qubit protocol register
//! `|a t b>` lives at basis index `a*4 + t*2 + b`. Every operation returns a
//! fresh [`StateVector`]; nothing is mutated in place.
//!
//! Measurements are projective. [`StateVector::branches`] lists every outcome
//! of a measurement with its Born probability and renormalized post-state,
//! and the `measure_*` functions pick one of those branches through a
//! [`Branching`] source, which is any [`rand::Rng`] for sampling.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance for every algebraic identity checked by this crate.
pub const TOLERANCE: f64 = 1e-12;

/// Born weights at or below this value are treated as impossible outcomes.
pub const PROBABILITY_FLOOR: f64 = 1e-14;

pub const MAX_QUBITS: usize = 3;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const R: C64 = C64::new(FRAC_1_SQRT_2, 0.0);
const NEG_R: C64 = C64::new(-FRAC_1_SQRT_2, 0.0);

#[derive(Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Builds a state from explicit amplitudes, which must already be normalized.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(Error::InvalidState(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// Builds a state from amplitudes of any nonzero norm, rescaling to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes);
        if norm <= PROBABILITY_FLOOR {
            return Err(Error::InvalidState(
                "cannot normalize a state with zero norm".into(),
            ));
        }
        let scale = 1.0 / norm.sqrt();
        Ok(StateVector {
            num_qubits,
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
        })
    }

    /// The computational basis state `|index>` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(Error::InvalidArgument(format!(
                "register size {num_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let dim = 1 << num_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// Single-qubit eigenstate of a measurement outcome, e.g. `|+>` or `|1>`.
    pub fn from_outcome<O: Outcome>(outcome: O) -> Self {
        StateVector::from_amplitudes(outcome.ket().to_vec())
            .expect("outcome kets are normalized")
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `self ⊗ other`, with `self` supplying the leftmost qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let num_qubits = self.num_qubits + other.num_qubits;
        if num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "tensor product would hold {num_qubits} qubits"
            )));
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::InvalidArgument(format!(
                "inner product of {}-qubit and {}-qubit states",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a single-qubit gate on the given tensor factor.
    pub fn apply_gate(&self, gate: Gate, qubit: usize) -> Result<StateVector> {
        self.check_qubit(qubit)?;
        let m = gate.matrix();
        let mask = self.mask(qubit);
        let mut out = self.amplitudes.clone();
        for i in (0..self.amplitudes.len()).filter(|i| i & mask == 0) {
            let j = i | mask;
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[j]);
            out[i] = m[0][0] * a0 + m[0][1] * a1;
            out[j] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    /// Applies gates in order; the first element acts first.
    pub fn apply_sequence(&self, gates: &[Gate], qubit: usize) -> Result<StateVector> {
        gates
            .iter()
            .try_fold(self.clone(), |s, &g| s.apply_gate(g, qubit))
    }

    /// Every outcome of measuring `O` on `qubits`, with Born probability and
    /// renormalized post-state. Outcomes at or below [`PROBABILITY_FLOOR`]
    /// are omitted.
    pub fn branches<O: Outcome>(&self, qubits: &[usize]) -> Result<Vec<Branch<O>>> {
        self.check_targets::<O>(qubits)?;
        let mut branches = Vec::with_capacity(O::ALL.len());
        let mut total = 0.0;
        for &outcome in O::ALL {
            let projected = self.project(qubits, outcome.ket());
            let probability = norm_sqr(&projected);
            total += probability;
            if probability > PROBABILITY_FLOOR {
                let scale = 1.0 / probability.sqrt();
                branches.push(Branch {
                    outcome,
                    probability,
                    state: StateVector {
                        num_qubits: self.num_qubits,
                        amplitudes: projected.into_iter().map(|a| a * scale).collect(),
                    },
                });
            }
        }
        if total <= PROBABILITY_FLOOR {
            return Err(Error::InvalidState("measured state has zero norm".into()));
        }
        Ok(branches)
    }

    /// Born probabilities over the full outcome alphabet, in `O::ALL` order.
    pub fn probabilities<O: Outcome>(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        self.check_targets::<O>(qubits)?;
        Ok(O::ALL
            .iter()
            .map(|o| norm_sqr(&self.project(qubits, o.ket())))
            .collect())
    }

    /// Samples one branch of an `O` measurement on `qubits`.
    pub fn measure<O: Outcome, B: Branching + ?Sized>(
        &self,
        qubits: &[usize],
        source: &mut B,
    ) -> Result<(O, StateVector)> {
        let mut branches = self.branches::<O>(qubits)?;
        let weights: Vec<f64> = branches.iter().map(|b| b.probability).collect();
        let picked = source.pick(&weights);
        let branch = branches.swap_remove(picked);
        Ok((branch.outcome, branch.state))
    }

    /// Unnormalized projection of the register onto `ket` on the listed qubits.
    fn project(&self, qubits: &[usize], ket: &[C64]) -> Vec<C64> {
        let masks: Vec<usize> = qubits.iter().map(|&q| self.mask(q)).collect();
        let all_masks = masks.iter().fold(0, |acc, m| acc | m);
        // Subsystem index k has qubits[0] as its most significant bit.
        let spread = |k: usize| {
            masks.iter().rev().enumerate().fold(0, |acc, (bit, &m)| {
                if k >> bit & 1 == 1 {
                    acc | m
                } else {
                    acc
                }
            })
        };
        let mut out = vec![ZERO; self.amplitudes.len()];
        for rest in (0..self.amplitudes.len()).filter(|i| i & all_masks == 0) {
            let overlap: C64 = ket
                .iter()
                .enumerate()
                .map(|(k, v)| v.conj() * self.amplitudes[rest | spread(k)])
                .sum();
            for (k, v) in ket.iter().enumerate() {
                out[rest | spread(k)] = v * overlap;
            }
        }
        out
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::InvalidArgument(format!(
                "qubit {qubit} out of range for a {}-qubit register",
                self.num_qubits
            )));
        }
        Ok(())
    }

    fn check_targets<O: Outcome>(&self, qubits: &[usize]) -> Result<()> {
        if qubits.len() != O::ARITY {
            return Err(Error::InvalidArgument(format!(
                "measurement acts on {} qubits, got {}",
                O::ARITY,
                qubits.len()
            )));
        }
        for (i, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..i].contains(&q) {
                return Err(Error::InvalidArgument(format!(
                    "qubit {q} listed twice in one measurement"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.num_qubits;
        let mut list = f.debug_map();
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() > PROBABILITY_FLOOR {
                list.entry(&format_args!("|{i:0width$b}>"), &format_args!("{a:.6}"));
            }
        }
        list.finish()
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    match len {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        _ => Err(Error::InvalidArgument(format!(
            "{len} amplitudes do not describe a 1-3 qubit register"
        ))),
    }
}

fn norm_sqr(amplitudes: &[C64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

/// `(|000> + |111>)/√2` on the register (A, T, B).
pub fn make_ghz() -> StateVector {
    let mut amplitudes = vec![ZERO; 8];
    amplitudes[0] = R;
    amplitudes[7] = R;
    StateVector {
        num_qubits: 3,
        amplitudes,
    }
}

pub fn apply_gate(state: &StateVector, gate: Gate, qubit: usize) -> Result<StateVector> {
    state.apply_gate(gate, qubit)
}

pub fn measure_z<B: Branching + ?Sized>(
    state: &StateVector,
    qubit: usize,
    source: &mut B,
) -> Result<(ZOutcome, StateVector)> {
    state.measure(&[qubit], source)
}

pub fn measure_x<B: Branching + ?Sized>(
    state: &StateVector,
    qubit: usize,
    source: &mut B,
) -> Result<(XOutcome, StateVector)> {
    state.measure(&[qubit], source)
}

/// Bell measurement on the ordered pair `(qubit_a, qubit_b)`; `qubit_a`
/// is the left factor of each Bell ket.
pub fn measure_bell<B: Branching + ?Sized>(
    state: &StateVector,
    qubit_a: usize,
    qubit_b: usize,
    source: &mut B,
) -> Result<(BellOutcome, StateVector)> {
    state.measure(&[qubit_a, qubit_b], source)
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    Identity,
    PauliX,
    PauliZ,
    Hadamard,
}

impl Gate {
    pub const ALL: [Gate; 4] = [Gate::Identity, Gate::PauliX, Gate::PauliZ, Gate::Hadamard];

    pub fn matrix(self) -> [[C64; 2]; 2] {
        match self {
            Gate::Identity => [[ONE, ZERO], [ZERO, ONE]],
            Gate::PauliX => [[ZERO, ONE], [ONE, ZERO]],
            Gate::PauliZ => [[ONE, ZERO], [ZERO, -ONE]],
            Gate::Hadamard => [[R, R], [R, NEG_R]],
        }
    }
}

/// A measurement alphabet: one orthonormal ket per outcome over `ARITY` qubits.
pub trait Outcome: Copy + Eq + fmt::Debug + 'static {
    const ARITY: usize;
    const ALL: &'static [Self];
    fn ket(self) -> &'static [C64];
}

/// Result of a computational-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZOutcome {
    Zero,
    One,
}

impl Outcome for ZOutcome {
    const ARITY: usize = 1;
    const ALL: &'static [Self] = &[ZOutcome::Zero, ZOutcome::One];
    fn ket(self) -> &'static [C64] {
        match self {
            ZOutcome::Zero => &[ONE, ZERO],
            ZOutcome::One => &[ZERO, ONE],
        }
    }
}

/// Result of an `x`-basis measurement, `|±> = (|0> ± |1>)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XOutcome {
    Plus,
    Minus,
}

impl Outcome for XOutcome {
    const ARITY: usize = 1;
    const ALL: &'static [Self] = &[XOutcome::Plus, XOutcome::Minus];
    fn ket(self) -> &'static [C64] {
        match self {
            XOutcome::Plus => &[R, R],
            XOutcome::Minus => &[R, NEG_R],
        }
    }
}

/// Result of a Bell measurement.
///
/// `φ± = (|00> ± |11>)/√2` and `ψ± = (|01> ± |10>)/√2`, where the left
/// factor is the first qubit of the measured pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Outcome for BellOutcome {
    const ARITY: usize = 2;
    const ALL: &'static [Self] = &[
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];
    fn ket(self) -> &'static [C64] {
        match self {
            BellOutcome::PhiPlus => &[R, ZERO, ZERO, R],
            BellOutcome::PhiMinus => &[R, ZERO, ZERO, NEG_R],
            BellOutcome::PsiPlus => &[ZERO, R, R, ZERO],
            BellOutcome::PsiMinus => &[ZERO, R, NEG_R, ZERO],
        }
    }
}

impl fmt::Display for ZOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ZOutcome::Zero => "0",
            ZOutcome::One => "1",
        })
    }
}

impl fmt::Display for XOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            XOutcome::Plus => "+",
            XOutcome::Minus => "-",
        })
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            BellOutcome::PhiPlus => "phi+",
            BellOutcome::PhiMinus => "phi-",
            BellOutcome::PsiPlus => "psi+",
            BellOutcome::PsiMinus => "psi-",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Branch<O> {
    pub outcome: O,
    pub probability: f64,
    pub state: StateVector,
}

/// Chooses among weighted alternatives: measurement branches, or the
/// uniform choices of a randomizing party.
///
/// Every [`Rng`] samples proportionally to the weights. Deterministic
/// implementations can walk the branches instead (see
/// [`crate::protocol::enumerate_round`]).
pub trait Branching {
    /// Returns an index whose weight is above [`PROBABILITY_FLOOR`].
    fn pick(&mut self, weights: &[f64]) -> usize;
}

impl<T: Rng + ?Sized> Branching for T {
    fn pick(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().filter(|&&w| w > PROBABILITY_FLOOR).sum();
        let mut target = self.random::<f64>() * total;
        let mut last = None;
        for (i, &w) in weights.iter().enumerate() {
            if w <= PROBABILITY_FLOOR {
                continue;
            }
            if target < w {
                return i;
            }
            target -= w;
            last = Some(i);
        }
        last.expect("at least one weight above the probability floor")
    }
}
