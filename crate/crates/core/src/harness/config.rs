//! Experiment configuration and its plain `key = value` file format.
//!
//! ```text
//! # comment
//! protocol = 1
//! variant = revised
//! trent = attack
//! bits = 10000
//! seed = 42
//! ```
//!
//! Keys match the `run` flags; dashes and underscores are interchangeable.

use std::path::Path;

use serde::Serialize;

use crate::adversary::{AnnouncementPolicy, TrentStrategy};
use crate::error::{Error, Result};
use crate::protocol::{EncodingVariant, ErrorCorrection, ProtocolId, SessionSettings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrentMode {
    Honest,
    Attack,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub protocol: ProtocolId,
    pub variant: EncodingVariant,
    pub trent: TrentMode,
    /// Announcement policy override for the attack; `None` picks the
    /// protocol's default.
    pub announce: Option<AnnouncementPolicy>,
    /// Message bits per session, before error correction.
    pub message_length: usize,
    pub check_fraction: f64,
    pub abort_threshold: f64,
    pub seed: u64,
    /// Number of independent sessions.
    pub rounds_repeat: usize,
    pub output_format: OutputFormat,
    pub ecc: ErrorCorrection,
    pub channel_noise: f64,
    /// Include wall-clock time in the report, which makes it nondeterministic.
    pub include_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            protocol: ProtocolId::Protocol1,
            variant: EncodingVariant::Revised,
            trent: TrentMode::Honest,
            announce: None,
            message_length: 1000,
            check_fraction: 0.5,
            abort_threshold: SessionSettings::DEFAULT_ABORT_THRESHOLD,
            seed: 0,
            rounds_repeat: 1,
            output_format: OutputFormat::Json,
            ecc: ErrorCorrection::Identity,
            channel_noise: 0.0,
            include_timing: false,
        }
    }
}

impl RunConfig {
    pub fn trent_strategy(&self) -> TrentStrategy {
        match (self.trent, self.announce) {
            (TrentMode::Honest, _) => TrentStrategy::Honest,
            (TrentMode::Attack, Some(policy)) => TrentStrategy::Attack(policy),
            (TrentMode::Attack, None) => TrentStrategy::attack_for(self.protocol),
        }
    }

    pub fn session_settings(&self) -> SessionSettings {
        SessionSettings {
            protocol: self.protocol,
            variant: self.variant,
            trent: self.trent_strategy(),
            abort_threshold: self.abort_threshold,
            channel_noise: self.channel_noise,
        }
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "protocol" => {
                self.protocol = match value {
                    "1" => ProtocolId::Protocol1,
                    "2" => ProtocolId::Protocol2,
                    _ => return Err(Error::config("protocol", format!("expected 1 or 2, got `{value}`"))),
                }
            }
            "variant" => {
                self.variant = match value.to_ascii_lowercase().as_str() {
                    "original" => EncodingVariant::Original,
                    "revised" => EncodingVariant::Revised,
                    _ => {
                        return Err(Error::config(
                            "variant",
                            format!("expected original or revised, got `{value}`"),
                        ))
                    }
                }
            }
            "trent" => {
                self.trent = match value.to_ascii_lowercase().as_str() {
                    "honest" => TrentMode::Honest,
                    "attack" => TrentMode::Attack,
                    _ => {
                        return Err(Error::config(
                            "trent",
                            format!("expected honest or attack, got `{value}`"),
                        ))
                    }
                }
            }
            "announce" => {
                self.announce = match value.to_ascii_lowercase().as_str() {
                    "default" => None,
                    "genuine" => Some(AnnouncementPolicy::GenuineMeasurement),
                    "random" => Some(AnnouncementPolicy::UniformRandom),
                    _ => {
                        return Err(Error::config(
                            "announce",
                            format!("expected default, genuine or random, got `{value}`"),
                        ))
                    }
                }
            }
            "bits" | "message_length" => self.message_length = parse("bits", value)?,
            "check_fraction" => self.check_fraction = parse("check_fraction", value)?,
            "threshold" | "abort_threshold" => self.abort_threshold = parse("threshold", value)?,
            "seed" => self.seed = parse("seed", value)?,
            "repeat" | "rounds_repeat" => self.rounds_repeat = parse("repeat", value)?,
            "format" | "output_format" => {
                self.output_format = match value.to_ascii_lowercase().as_str() {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(Error::config("format", format!("expected json or csv, got `{value}`"))),
                }
            }
            "ecc" => {
                self.ecc = match value.to_ascii_lowercase().as_str() {
                    "identity" | "none" => ErrorCorrection::Identity,
                    "repetition3" | "rep3" => ErrorCorrection::Repetition3,
                    _ => {
                        return Err(Error::config(
                            "ecc",
                            format!("expected identity or repetition3, got `{value}`"),
                        ))
                    }
                }
            }
            "noise" | "channel_noise" => self.channel_noise = parse("noise", value)?,
            "timing" | "include_timing" => self.include_timing = parse("timing", value)?,
            other => return Err(Error::config(other, "unknown field")),
        }
        Ok(())
    }

    /// Applies every `key = value` line of `text` on top of `self`.
    pub fn merge_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config("file", format!("line {}: expected `key = value`", n + 1))
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        config.merge_text(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        RunConfig::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.message_length == 0 {
            return Err(Error::config("bits", "must be positive"));
        }
        if !(self.check_fraction > 0.0 && self.check_fraction < 1.0) {
            return Err(Error::config("check_fraction", "must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.abort_threshold) {
            return Err(Error::config("threshold", "must lie in [0, 1]"));
        }
        if self.rounds_repeat == 0 {
            return Err(Error::config("repeat", "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.channel_noise) {
            return Err(Error::config("noise", "must lie in [0, 1]"));
        }
        if self.trent == TrentMode::Honest && self.announce.is_some() {
            return Err(Error::config("announce", "only applies when trent = attack"));
        }
        Ok(())
    }
}

fn parse<T: std::str::FromStr>(field: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::config(field, format!("`{value}`: {e}")))
}
