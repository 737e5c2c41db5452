//! Monte Carlo experiments and their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{OutputFormat, RunConfig, TrentMode};
use super::streams::{substream, Lane};
use crate::adversary::AnnouncementPolicy;
use crate::error::Result;
use crate::protocol::{run_session, SessionPlan};

pub const SCHEMA_VERSION: u32 = 1;

/// Two-sided 95% normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// A binomial proportion with its normal-approximation 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub successes: u64,
    pub trials: u64,
}

impl RateEstimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        if trials == 0 {
            return RateEstimate {
                value: 0.0,
                lower: 0.0,
                upper: 0.0,
                successes,
                trials,
            };
        }
        let p = successes as f64 / trials as f64;
        let half = Z_95 * (p * (1.0 - p) / trials as f64).sqrt();
        RateEstimate {
            value: p,
            lower: (p - half).max(0.0),
            upper: (p + half).min(1.0),
            successes,
            trials,
        }
    }

    /// Standard error of the estimate.
    pub fn sigma(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        (self.value * (1.0 - self.value) / self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub protocol: u8,
    pub variant: String,
    pub trent: TrentMode,
    /// Effective announcement policy; `null` for an honest Trent.
    pub announce: Option<String>,
    pub bits: usize,
    pub check_fraction: f64,
    pub threshold: f64,
    pub seed: u64,
    pub repeat: usize,
    pub ecc: String,
    pub noise: f64,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        let announce = match c.trent_strategy() {
            crate::adversary::TrentStrategy::Honest => None,
            crate::adversary::TrentStrategy::Attack(AnnouncementPolicy::GenuineMeasurement) => {
                Some("genuine".to_string())
            }
            crate::adversary::TrentStrategy::Attack(AnnouncementPolicy::UniformRandom) => {
                Some("random".to_string())
            }
        };
        ConfigEcho {
            protocol: match c.protocol {
                crate::protocol::ProtocolId::Protocol1 => 1,
                crate::protocol::ProtocolId::Protocol2 => 2,
            },
            variant: c.variant.to_string(),
            trent: c.trent,
            announce,
            bits: c.message_length,
            check_fraction: c.check_fraction,
            threshold: c.abort_threshold,
            seed: c.seed,
            repeat: c.rounds_repeat,
            ecc: c.ecc.to_string(),
            noise: c.channel_noise,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionSummary {
    pub session: u64,
    pub rounds: u64,
    pub check_rounds: u64,
    pub check_errors: u64,
    pub error_rate: f64,
    pub abort: bool,
    pub attacked_rounds: u64,
    pub guess_correct: u64,
    pub z_equal: u64,
    /// Whether Bob's extracted message equals Alice's; `None` after an abort.
    pub message_recovered: Option<bool>,
    #[serde(skip)]
    histogram: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub total_rounds: u64,
    pub bob_error_rate: RateEstimate,
    /// `None` when Trent is honest.
    pub trent_guess_accuracy: Option<RateEstimate>,
    pub z_equal_fraction: Option<f64>,
    pub abort_fraction: f64,
    /// Fraction of non-aborted sessions whose message arrived intact.
    pub message_recovery_fraction: Option<f64>,
    /// Counts of `announcement|measurement` pairs over all rounds.
    pub histogram: BTreeMap<String, u64>,
    pub sessions: Vec<SessionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

/// Runs `config.rounds_repeat` independent sessions and aggregates them.
///
/// The report depends only on the config: every session and round draws
/// from its own substream and aggregation uses integer counters.
pub fn run_experiment(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let started = Instant::now();
    let settings = config.session_settings();
    let sessions = (0..config.rounds_repeat as u64)
        .into_par_iter()
        .map(|session| {
            let mut message_rng = substream(config.seed, session, Lane::Message, 0);
            let message: Vec<bool> = (0..config.message_length)
                .map(|_| message_rng.random())
                .collect();
            let plan = SessionPlan::generate(
                message.clone(),
                config.check_fraction,
                config.ecc,
                &mut substream(config.seed, session, Lane::CheckPositions, 0),
                &mut substream(config.seed, session, Lane::CheckBits, 0),
            )?;
            let outcome = run_session(&settings, &plan, |round| {
                substream(config.seed, session, Lane::Round, round as u64)
            })?;

            let mut histogram = BTreeMap::new();
            let (mut attacked, mut correct, mut equal) = (0, 0, 0);
            for t in &outcome.transcripts {
                *histogram
                    .entry(format!("{}|{}", t.trent_announcement, t.bob_measurement))
                    .or_insert(0) += 1;
                if let Some(record) = t.adversary {
                    attacked += 1;
                    correct += u64::from(record.guessed_bit == t.sent_bit);
                    equal += u64::from(record.outcomes_equal());
                }
            }
            Ok(SessionSummary {
                session,
                rounds: outcome.transcripts.len() as u64,
                check_rounds: outcome.check_rounds as u64,
                check_errors: outcome.check_errors as u64,
                error_rate: outcome.error_rate,
                abort: outcome.abort,
                attacked_rounds: attacked,
                guess_correct: correct,
                z_equal: equal,
                message_recovered: outcome.message.map(|m| m == message),
                histogram,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let sum = |f: fn(&SessionSummary) -> u64| sessions.iter().map(f).sum::<u64>();
    let total_rounds = sum(|s| s.rounds);
    let attacked = sum(|s| s.attacked_rounds);
    let mut histogram = BTreeMap::new();
    for s in &sessions {
        for (k, v) in &s.histogram {
            *histogram.entry(k.clone()).or_insert(0) += v;
        }
    }
    let aborts = sessions.iter().filter(|s| s.abort).count();
    let delivered: Vec<bool> = sessions.iter().filter_map(|s| s.message_recovered).collect();

    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        config: ConfigEcho::from(config),
        total_rounds,
        bob_error_rate: RateEstimate::from_counts(sum(|s| s.check_errors), sum(|s| s.check_rounds)),
        trent_guess_accuracy: (attacked > 0)
            .then(|| RateEstimate::from_counts(sum(|s| s.guess_correct), attacked)),
        z_equal_fraction: (attacked > 0).then(|| sum(|s| s.z_equal) as f64 / attacked as f64),
        abort_fraction: aborts as f64 / sessions.len() as f64,
        message_recovery_fraction: (!delivered.is_empty())
            .then(|| delivered.iter().filter(|&&ok| ok).count() as f64 / delivered.len() as f64),
        histogram,
        sessions,
        wall_time_s: config
            .include_timing
            .then(|| started.elapsed().as_secs_f64()),
    })
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per session followed by a `summary` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "session,rounds,check_rounds,check_errors,error_rate,abort,attacked_rounds,guess_correct,z_equal,message_recovered\n",
        );
        let opt = |v: Option<bool>| v.map_or(String::new(), |b| b.to_string());
        for s in &self.sessions {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                s.session,
                s.rounds,
                s.check_rounds,
                s.check_errors,
                s.error_rate,
                s.abort,
                s.attacked_rounds,
                s.guess_correct,
                s.z_equal,
                opt(s.message_recovered)
            );
        }
        let sum = |f: fn(&SessionSummary) -> u64| self.sessions.iter().map(f).sum::<u64>();
        let _ = writeln!(
            out,
            "summary,{},{},{},{},{},{},{},{},{}",
            self.total_rounds,
            self.bob_error_rate.trials,
            self.bob_error_rate.successes,
            self.bob_error_rate.value,
            self.abort_fraction,
            sum(|s| s.attacked_rounds),
            sum(|s| s.guess_correct),
            sum(|s| s.z_equal),
            self.message_recovery_fraction
                .map_or(String::new(), |f| f.to_string())
        );
        out
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => Ok(self.to_csv()),
        }
    }

    /// Internal consistency checks; returns a description of each violation.
    pub fn violations(&self) -> Vec<String> {
        let mut found = Vec::new();
        let mut rate = |name: &str, v: f64| {
            if !(0.0..=1.0).contains(&v) {
                found.push(format!("{name} = {v} outside [0, 1]"));
            }
        };
        rate("bob_error_rate", self.bob_error_rate.value);
        rate("abort_fraction", self.abort_fraction);
        if let Some(g) = self.trent_guess_accuracy {
            rate("trent_guess_accuracy", g.value);
        }
        if let Some(z) = self.z_equal_fraction {
            rate("z_equal_fraction", z);
        }
        if let Some(m) = self.message_recovery_fraction {
            rate("message_recovery_fraction", m);
        }
        let counted: u64 = self.histogram.values().sum();
        if counted != self.total_rounds {
            found.push(format!(
                "histogram counts {counted} rounds, report has {}",
                self.total_rounds
            ));
        }
        if self.config.trent == TrentMode::Honest
            && self.config.noise == 0.0
            && self.bob_error_rate.successes > 0
        {
            found.push(format!(
                "honest noiseless run has {} check errors",
                self.bob_error_rate.successes
            ));
        }
        found
    }
}
