//! Brute-force reference for round statistics.
//!
//! Shares no code with the library: amplitudes are plain real arrays, gates
//! are full 8x8 Kronecker products, and every measurement probability is an
//! explicit overlap with a product basis vector. All amplitudes in these
//! protocols are real, so real arithmetic is exact enough.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Vec8 = [f64; 8];
type M2 = [[f64; 2]; 2];

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;
const I2: M2 = [[1.0, 0.0], [0.0, 1.0]];
const H2: M2 = [[S, S], [S, -S]];
const X2: M2 = [[0.0, 1.0], [1.0, 0.0]];
const Z2: M2 = [[1.0, 0.0], [0.0, -1.0]];

/// Qubit order (A, T, B), A most significant.
fn bit(index: usize, qubit: usize) -> usize {
    (index >> (2 - qubit)) & 1
}

fn kron3(a: M2, t: M2, b: M2) -> [[f64; 8]; 8] {
    let mut m = [[0.0; 8]; 8];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = a[bit(r, 0)][bit(c, 0)] * t[bit(r, 1)][bit(c, 1)] * b[bit(r, 2)][bit(c, 2)];
        }
    }
    m
}

fn on_a(gate: M2, v: Vec8) -> Vec8 {
    let m = kron3(gate, I2, I2);
    let mut out = [0.0; 8];
    for r in 0..8 {
        out[r] = (0..8).map(|c| m[r][c] * v[c]).sum();
    }
    out
}

pub fn ghz() -> Vec8 {
    let mut v = [0.0; 8];
    v[0] = S;
    v[7] = S;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub const BELLS: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

/// Amplitude of the Bell state on bits (first, second) of its pair.
fn bell_amp(b: Bell, first: usize, second: usize) -> f64 {
    match (b, first, second) {
        (Bell::PhiPlus, 0, 0) | (Bell::PhiPlus, 1, 1) => S,
        (Bell::PhiMinus, 0, 0) => S,
        (Bell::PhiMinus, 1, 1) => -S,
        (Bell::PsiPlus, 0, 1) | (Bell::PsiPlus, 1, 0) => S,
        (Bell::PsiMinus, 0, 1) => S,
        (Bell::PsiMinus, 1, 0) => -S,
        _ => 0.0,
    }
}

/// `true` is |+>, `false` is |->.
fn x_amp(plus: bool, b: usize) -> f64 {
    if b == 0 || plus {
        S
    } else {
        -S
    }
}

fn dot(a: &Vec8, b: &Vec8) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `|bell>_{pair} ⊗ |x>_{single}` as a full register vector.
fn product(bell: Bell, pair: (usize, usize), plus: bool, single: usize) -> Vec8 {
    let mut v = [0.0; 8];
    for (i, e) in v.iter_mut().enumerate() {
        *e = bell_amp(bell, bit(i, pair.0), bit(i, pair.1)) * x_amp(plus, bit(i, single));
    }
    v
}

/// Joint probability of a Bell outcome on `pair` and an x outcome on `single`.
pub fn joint(v: &Vec8, bell: Bell, pair: (usize, usize), plus: bool, single: usize) -> f64 {
    dot(&product(bell, pair, plus, single), v).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Original,
    Revised,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Announce {
    Genuine,
    Random,
}

pub fn encode(variant: Variant, one: bool) -> Vec8 {
    let v = ghz();
    let v = match (one, variant) {
        (false, _) => v,
        (true, Variant::Original) => on_a(X2, v),
        (true, Variant::Revised) => on_a(Z2, v),
    };
    on_a(H2, v)
}

/// Decoding as published for the revised encoding, keyed by the x outcome
/// and whether the Bell outcome is phi+ or psi-. The original encoding's
/// table, read off its decompositions, is the same.
pub fn decode(plus: bool, bell: Bell) -> bool {
    let class = matches!(bell, Bell::PhiPlus | Bell::PsiMinus);
    if plus {
        class
    } else {
        !class
    }
}

const A: usize = 0;
const T: usize = 1;
const B: usize = 2;

/// Honest round: distribution over (x outcome, Bell outcome) pairs.
pub fn honest(protocol: Protocol, variant: Variant, one: bool) -> BTreeMap<(bool, Bell), f64> {
    let v = encode(variant, one);
    let mut out = BTreeMap::new();
    for bell in BELLS {
        for plus in [true, false] {
            let p = match protocol {
                Protocol::One => joint(&v, bell, (A, B), plus, T),
                Protocol::Two => joint(&v, bell, (A, T), plus, B),
            };
            if p > 1e-14 {
                out.insert((plus, bell), p);
            }
        }
    }
    out
}

/// Exact statistics of an attacked round.
#[derive(Debug, Clone, Default)]
pub struct AttackStats {
    pub error: f64,
    pub guess_correct: f64,
    pub z_equal: f64,
    /// Probability of each (z_a, z_t) pair.
    pub z_pairs: BTreeMap<(usize, usize), f64>,
}

pub fn attacked(protocol: Protocol, variant: Variant, one: bool, announce: Announce) -> AttackStats {
    let rotated = on_a(H2, encode(variant, one));
    let mut stats = AttackStats::default();
    for za in 0..2 {
        for zt in 0..2 {
            let mut collapsed = [0.0; 8];
            for i in 0..8 {
                if bit(i, A) == za && bit(i, T) == zt {
                    collapsed[i] = rotated[i];
                }
            }
            let pz = dot(&collapsed, &collapsed);
            if pz <= 1e-14 {
                continue;
            }
            for e in collapsed.iter_mut() {
                *e /= pz.sqrt();
            }
            let guess = za != zt;
            *stats.z_pairs.entry((za, zt)).or_default() += pz;
            if guess == one {
                stats.guess_correct += pz;
            }
            if za == zt {
                stats.z_equal += pz;
            }
            // Probability that Bob decodes the wrong bit from this branch.
            let mut wrong = 0.0;
            for bell in BELLS {
                for plus in [true, false] {
                    let p = match (protocol, announce) {
                        (Protocol::One, Announce::Genuine) => joint(&collapsed, bell, (A, B), plus, T),
                        (Protocol::One, Announce::Random) => {
                            0.5 * [true, false]
                                .iter()
                                .map(|&any| joint(&collapsed, bell, (A, B), any, T))
                                .sum::<f64>()
                        }
                        (Protocol::Two, Announce::Genuine) => joint(&collapsed, bell, (A, T), plus, B),
                        (Protocol::Two, Announce::Random) => {
                            0.25 * BELLS
                                .iter()
                                .map(|&any| joint(&collapsed, any, (A, T), plus, B))
                                .sum::<f64>()
                        }
                    };
                    if decode(plus, bell) != one {
                        wrong += p;
                    }
                }
            }
            stats.error += pz * wrong;
        }
    }
    stats
}
