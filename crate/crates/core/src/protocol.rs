//! The two three-party direct communication protocols, as per-bit rounds and
//! whole sessions.
//!
//! Every round starts from a fresh GHZ triple on (A, T, B). Alice encodes one
//! bit on qubit A. In protocol 1 she sends A to Bob, who Bell-measures (A, B)
//! while Trent publishes an `x` measurement of T. In protocol 2 she sends A
//! to Trent, who Bell-measures (A, T) and publishes it while Bob measures B
//! in the `x` basis. Bob decodes the bit from the published outcome and his
//! own one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{self, AttackRecord, TrentStrategy};
use crate::error::{Error, Result};
use crate::qsim::{
    make_ghz, BellOutcome, Branching, Gate, StateVector, XOutcome, PROBABILITY_FLOOR,
};
use crate::{QUBIT_A, QUBIT_B};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProtocolId {
    /// Alice's qubit goes to Bob.
    Protocol1,
    /// Alice's qubit goes to Trent.
    Protocol2,
}

impl ProtocolId {
    pub const ALL: [ProtocolId; 2] = [ProtocolId::Protocol1, ProtocolId::Protocol2];
}

impl fmt::Display for ProtocolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ProtocolId::Protocol1 => "1",
            ProtocolId::Protocol2 => "2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EncodingVariant {
    /// Bit 1 is encoded as `H·X`.
    Original,
    /// Bit 1 is encoded as `H·σz`.
    Revised,
}

impl EncodingVariant {
    pub const ALL: [EncodingVariant; 2] = [EncodingVariant::Original, EncodingVariant::Revised];

    pub fn rule(self) -> EncodingRule {
        EncodingRule { variant: self }
    }
}

impl fmt::Display for EncodingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            EncodingVariant::Original => "original",
            EncodingVariant::Revised => "revised",
        })
    }
}

/// Alice's bit-to-operation map on qubit A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingRule {
    pub variant: EncodingVariant,
}

impl EncodingRule {
    /// Gates in application order: the Pauli, when present, acts first.
    pub fn gates(&self, bit: bool) -> &'static [Gate] {
        match (bit, self.variant) {
            (false, _) => &[Gate::Hadamard],
            (true, EncodingVariant::Original) => &[Gate::PauliX, Gate::Hadamard],
            (true, EncodingVariant::Revised) => &[Gate::PauliZ, Gate::Hadamard],
        }
    }
}

pub fn encode_bit(variant: EncodingVariant, bit: bool, state: &StateVector) -> Result<StateVector> {
    state.apply_sequence(variant.rule().gates(bit), QUBIT_A)
}

/// Bob's decoder for protocol 1, from Trent's `x` announcement and his Bell
/// outcome on (A, B).
///
/// Both variants share this table: after `H` on A, the bit-0 state pairs
/// `|->_T` with `φ+`/`ψ-` and `|+>_T` with `φ-`/`ψ+`, and either encoding of
/// bit 1 swaps those pairings.
pub fn decode_p1(_variant: EncodingVariant, trent_x: XOutcome, bob_bell: BellOutcome) -> bool {
    let phi_plus_class = matches!(bob_bell, BellOutcome::PhiPlus | BellOutcome::PsiMinus);
    match trent_x {
        XOutcome::Plus => phi_plus_class,
        XOutcome::Minus => !phi_plus_class,
    }
}

/// Bob's decoder for protocol 2, from Trent's Bell announcement on (A, T) and
/// his own `x` outcome on B. The same table serves both variants.
pub fn decode_p2(_variant: EncodingVariant, trent_bell: BellOutcome, bob_x: XOutcome) -> bool {
    let phi_plus_class = matches!(trent_bell, BellOutcome::PhiPlus | BellOutcome::PsiMinus);
    match bob_x {
        XOutcome::Plus => phi_plus_class,
        XOutcome::Minus => !phi_plus_class,
    }
}

/// One published or privately recorded measurement result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Observation {
    X(XOutcome),
    Bell(BellOutcome),
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observation::X(x) => x.fmt(f),
            Observation::Bell(b) => b.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTranscript {
    pub protocol: ProtocolId,
    pub variant: EncodingVariant,
    pub sent_bit: bool,
    pub is_check_bit: bool,
    /// `X` for protocol 1, `Bell` for protocol 2.
    pub trent_announcement: Observation,
    /// `Bell` for protocol 1, `X` for protocol 2.
    pub bob_measurement: Observation,
    pub decoded_bit: bool,
    /// Present only when Trent attacked the round.
    pub adversary: Option<AttackRecord>,
}

impl RoundTranscript {
    pub fn adversary_guess(&self) -> Option<bool> {
        self.adversary.map(|a| a.guessed_bit)
    }

    pub fn is_error(&self) -> bool {
        self.decoded_bit != self.sent_bit
    }
}

/// Runs one message-bit round from GHZ preparation to Bob's decoded bit.
pub fn run_round<B: Branching + ?Sized>(
    protocol: ProtocolId,
    variant: EncodingVariant,
    bit: bool,
    trent: TrentStrategy,
    source: &mut B,
) -> Result<RoundTranscript> {
    let state = encode_bit(variant, bit, &make_ghz())?;
    let (announcement, measurement, adversary, decoded_bit) = match protocol {
        ProtocolId::Protocol1 => {
            let (adversary, state) = match trent {
                TrentStrategy::Honest => (None, state),
                TrentStrategy::Attack(_) => {
                    let (record, forwarded) = adversary::attack_p1(&state, source)?;
                    (Some(record), forwarded)
                }
            };
            let (bell, state) = state.measure::<BellOutcome, _>(&[QUBIT_A, QUBIT_B], source)?;
            let (x, _) = adversary::p1_announcement(trent, &state, source)?;
            (
                Observation::X(x),
                Observation::Bell(bell),
                adversary,
                decode_p1(variant, x, bell),
            )
        }
        ProtocolId::Protocol2 => {
            let (bell, adversary, state) = match trent {
                TrentStrategy::Honest => {
                    let (bell, state) = adversary::honest_p2_announcement(&state, source)?;
                    (bell, None, state)
                }
                TrentStrategy::Attack(policy) => {
                    let attack = adversary::attack_p2(&state, policy, source)?;
                    (attack.announcement, Some(attack.record), attack.state)
                }
            };
            let (x, _) = state.measure::<XOutcome, _>(&[QUBIT_B], source)?;
            (
                Observation::Bell(bell),
                Observation::X(x),
                adversary,
                decode_p2(variant, bell, x),
            )
        }
    };
    Ok(RoundTranscript {
        protocol,
        variant,
        sent_bit: bit,
        is_check_bit: false,
        trent_announcement: announcement,
        bob_measurement: measurement,
        decoded_bit,
        adversary,
    })
}

/// Walks every branch of a round depth-first by replaying it with a fixed
/// script of choices. Each `pick` past the end of the script opens a new
/// level at its first alternative.
#[derive(Debug, Default)]
struct ScriptedBranching {
    script: Vec<usize>,
    widths: Vec<usize>,
    cursor: usize,
    weight: f64,
}

impl ScriptedBranching {
    fn rewind(&mut self) {
        self.cursor = 0;
        self.weight = 1.0;
    }

    /// Moves to the next leaf; false once the tree is exhausted.
    fn advance(&mut self) -> bool {
        self.script.truncate(self.cursor);
        self.widths.truncate(self.cursor);
        while let Some(last) = self.script.pop() {
            let width = self.widths.pop().expect("one width per level");
            if last + 1 < width {
                self.script.push(last + 1);
                self.widths.push(width);
                return true;
            }
        }
        false
    }
}

impl Branching for ScriptedBranching {
    fn pick(&mut self, weights: &[f64]) -> usize {
        let live: Vec<usize> = (0..weights.len())
            .filter(|&i| weights[i] > PROBABILITY_FLOOR)
            .collect();
        let total: f64 = live.iter().map(|&i| weights[i]).sum();
        if self.cursor == self.script.len() {
            self.script.push(0);
            self.widths.push(live.len());
        }
        let chosen = live[self.script[self.cursor]];
        self.cursor += 1;
        self.weight *= weights[chosen] / total;
        chosen
    }
}

/// Exact distribution of a round's transcript, summed over every
/// measurement branch and every random choice Trent makes.
pub fn enumerate_round(
    protocol: ProtocolId,
    variant: EncodingVariant,
    bit: bool,
    trent: TrentStrategy,
) -> Result<Vec<(RoundTranscript, f64)>> {
    let mut walker = ScriptedBranching::default();
    let mut leaves: Vec<(RoundTranscript, f64)> = Vec::new();
    loop {
        walker.rewind();
        let transcript = run_round(protocol, variant, bit, trent, &mut walker)?;
        match leaves.iter_mut().find(|(t, _)| *t == transcript) {
            Some((_, p)) => *p += walker.weight,
            None => leaves.push((transcript, walker.weight)),
        }
        if !walker.advance() {
            break;
        }
    }
    Ok(leaves)
}

/// Exact probability that Bob decodes the wrong bit in one round.
pub fn exact_error_probability(
    protocol: ProtocolId,
    variant: EncodingVariant,
    bit: bool,
    trent: TrentStrategy,
) -> Result<f64> {
    Ok(enumerate_round(protocol, variant, bit, trent)?
        .iter()
        .filter(|(t, _)| t.is_error())
        .map(|(_, p)| p)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceRow {
    pub announcement: Observation,
    pub measurement: Observation,
    pub bit: bool,
    /// Joint probability of the pair and the bit, with the bit uniform.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceTable {
    pub protocol: ProtocolId,
    pub variant: EncodingVariant,
    pub rows: Vec<CorrespondenceRow>,
}

impl CorrespondenceTable {
    /// Rows grouped as printed tables show them: `(x outcome, bit)` with the
    /// Bell outcomes that share it, in `BellOutcome` order.
    pub fn grouped(&self) -> Vec<GroupedRow> {
        let mut groups: BTreeMap<(XOutcome, bool), BTreeSet<BellOutcome>> = BTreeMap::new();
        for row in &self.rows {
            let (x, bell) = match (row.announcement, row.measurement) {
                (Observation::X(x), Observation::Bell(b)) | (Observation::Bell(b), Observation::X(x)) => {
                    (x, b)
                }
                _ => unreachable!("every round pairs one x outcome with one Bell outcome"),
            };
            groups.entry((x, row.bit)).or_default().insert(bell);
        }
        groups
            .into_iter()
            .map(|((x, bit), bells)| GroupedRow {
                x,
                bells: bells.into_iter().collect(),
                bit,
            })
            .collect()
    }

    /// The bit Bob infers for an `(announcement, measurement)` pair.
    pub fn lookup(&self, announcement: Observation, measurement: Observation) -> Option<bool> {
        self.rows
            .iter()
            .find(|r| r.announcement == announcement && r.measurement == measurement)
            .map(|r| r.bit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroupedRow {
    pub x: XOutcome,
    pub bells: Vec<BellOutcome>,
    pub bit: bool,
}

/// Derives Bob's decoding table by exact enumeration of honest rounds.
///
/// Fails with `InvalidState` if some observable pair occurs for both bits,
/// which would make decoding ambiguous.
pub fn honest_correspondence_table(
    protocol: ProtocolId,
    variant: EncodingVariant,
) -> Result<CorrespondenceTable> {
    let mut joint: BTreeMap<(Observation, Observation), BTreeMap<bool, f64>> = BTreeMap::new();
    for bit in [false, true] {
        for (t, p) in enumerate_round(protocol, variant, bit, TrentStrategy::Honest)? {
            *joint
                .entry((t.trent_announcement, t.bob_measurement))
                .or_default()
                .entry(bit)
                .or_default() += 0.5 * p;
        }
    }
    let mut rows = Vec::with_capacity(joint.len());
    for ((announcement, measurement), by_bit) in joint {
        if by_bit.len() != 1 {
            return Err(Error::InvalidState(format!(
                "pair ({announcement}, {measurement}) occurs for both bits"
            )));
        }
        let (&bit, &probability) = by_bit.iter().next().expect("one entry");
        rows.push(CorrespondenceRow {
            announcement,
            measurement,
            bit,
            probability,
        });
    }
    Ok(CorrespondenceTable {
        protocol,
        variant,
        rows,
    })
}

/// Classical code wrapped around the message before it is sent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum ErrorCorrection {
    #[default]
    Identity,
    /// Each bit sent three times, decoded by majority.
    Repetition3,
}

impl ErrorCorrection {
    pub fn encode(self, message: &[bool]) -> Vec<bool> {
        match self {
            ErrorCorrection::Identity => message.to_vec(),
            ErrorCorrection::Repetition3 => message.iter().flat_map(|&b| [b, b, b]).collect(),
        }
    }

    pub fn decode(self, payload: &[bool]) -> Vec<bool> {
        match self {
            ErrorCorrection::Identity => payload.to_vec(),
            ErrorCorrection::Repetition3 => payload
                .chunks(3)
                .map(|c| c.iter().filter(|&&b| b).count() * 2 > c.len())
                .collect(),
        }
    }
}

impl fmt::Display for ErrorCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ErrorCorrection::Identity => "identity",
            ErrorCorrection::Repetition3 => "repetition3",
        })
    }
}

/// Which bit goes out in which round.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionPlan {
    pub message_bits: Vec<bool>,
    pub ecc: ErrorCorrection,
    pub check_fraction: f64,
    /// Encoded message, in the order it occupies the non-check rounds.
    payload: Vec<bool>,
    /// Check bits, in the order they occupy `check_positions`.
    check_bits: Vec<bool>,
    check_positions: BTreeSet<usize>,
}

impl SessionPlan {
    /// Lays out a session: encodes the message, draws as many check rounds
    /// as make up `check_fraction` of the total, places them uniformly
    /// without replacement, and fills them with independent uniform bits.
    ///
    /// Check bits come from `check_rng` only, so they carry no information
    /// about the message.
    pub fn generate<P: Rng + ?Sized, C: Rng + ?Sized>(
        message_bits: Vec<bool>,
        check_fraction: f64,
        ecc: ErrorCorrection,
        position_rng: &mut P,
        check_rng: &mut C,
    ) -> Result<Self> {
        if !(check_fraction > 0.0 && check_fraction < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "check fraction {check_fraction} outside (0, 1)"
            )));
        }
        if message_bits.is_empty() {
            return Err(Error::InvalidArgument("empty message".into()));
        }
        let payload = ecc.encode(&message_bits);
        let checks = ((payload.len() as f64 * check_fraction / (1.0 - check_fraction)).round()
            as usize)
            .max(1);
        let total = payload.len() + checks;
        let check_positions: BTreeSet<usize> =
            index::sample(position_rng, total, checks).into_iter().collect();
        let check_bits = (0..checks).map(|_| check_rng.random::<bool>()).collect();
        Ok(SessionPlan {
            message_bits,
            ecc,
            check_fraction,
            payload,
            check_bits,
            check_positions,
        })
    }

    /// A plan from explicit parts. `check_positions` must index rounds of a
    /// session with `payload.len() + check_bits.len()` rounds.
    pub fn from_parts(
        message_bits: Vec<bool>,
        ecc: ErrorCorrection,
        check_bits: Vec<bool>,
        check_positions: BTreeSet<usize>,
    ) -> Result<Self> {
        let payload = ecc.encode(&message_bits);
        let total = payload.len() + check_bits.len();
        if total == 0 {
            return Err(Error::InvalidArgument("empty session plan".into()));
        }
        if check_positions.len() != check_bits.len()
            || check_positions.iter().any(|&p| p >= total)
        {
            return Err(Error::InvalidArgument(
                "check positions do not match the check bits".into(),
            ));
        }
        Ok(SessionPlan {
            check_fraction: check_bits.len() as f64 / total as f64,
            message_bits,
            ecc,
            payload,
            check_bits,
            check_positions,
        })
    }

    pub fn total_rounds(&self) -> usize {
        self.payload.len() + self.check_bits.len()
    }

    pub fn check_positions(&self) -> &BTreeSet<usize> {
        &self.check_positions
    }

    pub fn check_bits(&self) -> &[bool] {
        &self.check_bits
    }

    pub fn payload(&self) -> &[bool] {
        &self.payload
    }

    /// `(bit, is_check)` for each round in order.
    pub fn schedule(&self) -> Vec<(bool, bool)> {
        let mut payload = self.payload.iter();
        let mut checks = self.check_bits.iter();
        (0..self.total_rounds())
            .map(|i| {
                if self.check_positions.contains(&i) {
                    (*checks.next().expect("check bit per position"), true)
                } else {
                    (*payload.next().expect("payload bit per round"), false)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SessionSettings {
    pub protocol: ProtocolId,
    pub variant: EncodingVariant,
    pub trent: TrentStrategy,
    /// Bob aborts when the check error rate exceeds this.
    pub abort_threshold: f64,
    /// Probability of flipping each decoded bit on the classical side.
    pub channel_noise: f64,
}

impl SessionSettings {
    pub const DEFAULT_ABORT_THRESHOLD: f64 = 0.02;

    pub fn new(protocol: ProtocolId, variant: EncodingVariant, trent: TrentStrategy) -> Self {
        SessionSettings {
            protocol,
            variant,
            trent,
            abort_threshold: Self::DEFAULT_ABORT_THRESHOLD,
            channel_noise: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionOutcome {
    pub transcripts: Vec<RoundTranscript>,
    pub check_rounds: usize,
    pub check_errors: usize,
    pub error_rate: f64,
    pub abort: bool,
    /// The message Bob extracts; `None` when he aborted.
    pub message: Option<Vec<bool>>,
}

/// Runs a whole session. Round `i` draws its randomness from `round_rng(i)`,
/// so rounds may execute in parallel without changing the result.
pub fn run_session<R, F>(
    settings: &SessionSettings,
    plan: &SessionPlan,
    round_rng: F,
) -> Result<SessionOutcome>
where
    R: Rng,
    F: Fn(usize) -> R + Sync,
{
    if plan.total_rounds() == 0 {
        return Err(Error::InvalidArgument("empty session plan".into()));
    }
    let transcripts = plan
        .schedule()
        .into_par_iter()
        .enumerate()
        .map(|(i, (bit, is_check))| {
            let mut rng = round_rng(i);
            let mut t = run_round(settings.protocol, settings.variant, bit, settings.trent, &mut rng)?;
            t.is_check_bit = is_check;
            if settings.channel_noise > 0.0 && rng.random_bool(settings.channel_noise) {
                t.decoded_bit = !t.decoded_bit;
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;

    let check_rounds = transcripts.iter().filter(|t| t.is_check_bit).count();
    let check_errors = transcripts
        .iter()
        .filter(|t| t.is_check_bit && t.is_error())
        .count();
    let error_rate = if check_rounds == 0 {
        0.0
    } else {
        check_errors as f64 / check_rounds as f64
    };
    let abort = error_rate > settings.abort_threshold;
    let message = (!abort).then(|| {
        let received: Vec<bool> = transcripts
            .iter()
            .filter(|t| !t.is_check_bit)
            .map(|t| t.decoded_bit)
            .collect();
        plan.ecc.decode(&received)
    });
    Ok(SessionOutcome {
        transcripts,
        check_rounds,
        check_errors,
        error_rate,
        abort,
        message,
    })
}
