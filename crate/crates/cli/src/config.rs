//! Run configuration: a flat TOML file whose only tables hold suite options.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use sandwich_core::chevgroup::{GroupModel, ModelKind, ParabolicBlocks, Sp4Parabolic, DEFAULT_CAP};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("unknown suite {0:?}; valid suites are roots, relroots, group, sandwich, all")]
    UnknownSuite(String),
    #[error("modulus {0} is invalid; need m ≥ 2")]
    Modulus(u32),
    #[error("unknown model {0:?}; expected SL2, SL3, SL4 or Sp4")]
    UnknownModel(String),
    #[error("malformed block composition {0:?}")]
    Blocks(String),
    #[error("a model needs both a name and a modulus")]
    IncompleteModel,
    #[error("invalid model: {0}")]
    Model(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Roots,
    Relroots,
    Group,
    Sandwich,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["roots", "relroots", "group", "sandwich", "all"];

    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }

    fn needs_models(self) -> bool {
        matches!(self, Suite::Group | Suite::Sandwich | Suite::All)
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().as_str() {
            "roots" => Ok(Suite::Roots),
            "relroots" => Ok(Suite::Relroots),
            "group" => Ok(Suite::Group),
            "sandwich" => Ok(Suite::Sandwich),
            "all" => Ok(Suite::All),
            _ => Err(ConfigError::UnknownSuite(s.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

/// One group to tabulate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub degree: usize,
    pub modulus: u32,
    pub parabolic: ParabolicBlocks,
    /// A negative control: theorem-level failures are expected.
    pub expect_violation: bool,
}

impl ModelSpec {
    pub fn new(model: &str, modulus: u32, blocks: Option<&str>) -> Result<Self, ConfigError> {
        let (kind, degree) = parse_model(model)?;
        let parabolic = match blocks {
            None => ParabolicBlocks::borel(kind, degree),
            Some(b) => parse_blocks(kind, b)?,
        };
        let spec = ModelSpec { kind, degree, modulus, parabolic, expect_violation: false };
        spec.build()?;
        Ok(spec)
    }

    pub fn negative_control(mut self) -> Self {
        self.expect_violation = true;
        self
    }

    pub fn build(&self) -> Result<GroupModel, ConfigError> {
        if self.modulus < 2 {
            return Err(ConfigError::Modulus(self.modulus));
        }
        GroupModel::new(self.kind, self.degree, self.modulus, self.parabolic.clone())
            .map_err(|e| ConfigError::Model(e.to_string()))
    }

    pub fn model_name(&self) -> String {
        match self.kind {
            ModelKind::Sl => format!("SL{}", self.degree),
            ModelKind::Sp4 => "Sp4".into(),
        }
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Echo {
            model: String,
            modulus: u32,
            blocks: String,
            expect_violation: bool,
        }
        Echo {
            model: self.model_name(),
            modulus: self.modulus,
            blocks: self.parabolic.to_string(),
            expect_violation: self.expect_violation,
        }
        .serialize(s)
    }
}

/// "SL3", "sl_4", "Sp4".
pub fn parse_model(s: &str) -> Result<(ModelKind, usize), ConfigError> {
    let lower = s.trim().to_ascii_lowercase().replace('_', "");
    let bad = || ConfigError::UnknownModel(s.to_string());
    if let Some(n) = lower.strip_prefix("sl") {
        let n: usize = n.parse().map_err(|_| bad())?;
        if !(2..=4).contains(&n) {
            return Err(bad());
        }
        Ok((ModelKind::Sl, n))
    } else if lower == "sp4" {
        Ok((ModelKind::Sp4, 4))
    } else {
        Err(bad())
    }
}

/// "1,1,2" for SL_n; "borel", "line" or "siegel" for Sp4.
pub fn parse_blocks(kind: ModelKind, s: &str) -> Result<ParabolicBlocks, ConfigError> {
    let bad = || ConfigError::Blocks(s.to_string());
    match kind {
        ModelKind::Sp4 => s.parse::<Sp4Parabolic>().map(ParabolicBlocks::Sp4).map_err(|_| bad()),
        ModelKind::Sl => s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()
            .map(ParabolicBlocks::Sl),
    }
}

/// The models run when none is named.
pub fn default_models() -> Vec<ModelSpec> {
    let spec = |model: &str, m: u32| ModelSpec::new(model, m, None).expect("default model");
    vec![
        spec("SL3", 2),
        spec("SL3", 3),
        spec("SL3", 4),
        spec("SL4", 2),
        spec("Sp4", 2).negative_control(),
        spec("Sp4", 3),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RootsOptions {
    pub max_rank: usize,
}

impl Default for RootsOptions {
    fn default() -> Self {
        Self { max_rank: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelrootsOptions {
    pub max_rank: usize,
}

impl Default for RelrootsOptions {
    fn default() -> Self {
        Self { max_rank: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GroupOptions {
    pub triples: usize,
    pub pairs: usize,
    /// Further moduli for the model-level centralizer lemmas.
    pub extra_moduli: Vec<u32>,
}

impl Default for GroupOptions {
    fn default() -> Self {
        Self { triples: 1000, pairs: 100, extra_moduli: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SandwichOptions {
    pub join_pairs: usize,
    /// Groups up to this order get one normal closure per element in the
    /// simplicity check; larger ones one per orbit.
    pub per_element_limit: usize,
}

impl Default for SandwichOptions {
    fn default() -> Self {
        Self { join_pairs: 64, per_element_limit: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub models: Vec<ModelSpec>,
    pub cap: usize,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    pub jobs: usize,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub roots: RootsOptions,
    pub relroots: RelrootsOptions,
    pub group: GroupOptions,
    pub sandwich: SandwichOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            models: Vec::new(),
            cap: DEFAULT_CAP,
            jobs: 0,
            seed: 0x5eed,
            out: None,
            roots: RootsOptions::default(),
            relroots: RelrootsOptions::default(),
            group: GroupOptions::default(),
            sandwich: SandwichOptions::default(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawBlocks {
    List(Vec<usize>),
    Name(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    suite: Option<String>,
    model: Option<String>,
    #[serde(alias = "mod")]
    modulus: Option<u32>,
    blocks: Option<RawBlocks>,
    cap: Option<usize>,
    jobs: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    expect_violation: Option<bool>,
    #[serde(default)]
    roots: RootsOptions,
    #[serde(default)]
    relroots: RelrootsOptions,
    #[serde(default)]
    group: GroupOptions,
    #[serde(default)]
    sandwich: SandwichOptions,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub suite: Option<Suite>,
    pub model: Option<String>,
    pub modulus: Option<u32>,
    pub blocks: Option<String>,
    pub cap: Option<usize>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub expect_violation: bool,
}

pub fn parse_config(bytes: &[u8]) -> Result<RunConfig, ConfigError> {
    resolve(parse_raw(bytes)?, Overrides::default())
}

/// Parses the file (if any) and applies command-line overrides.
pub fn load_config(bytes: Option<&[u8]>, overrides: Overrides) -> Result<RunConfig, ConfigError> {
    let raw = match bytes {
        Some(b) => parse_raw(b)?,
        None => RawConfig::default(),
    };
    resolve(raw, overrides)
}

fn parse_raw(bytes: &[u8]) -> Result<RawConfig, ConfigError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ConfigError::Parse(e.to_string()))?;
    toml::from_str(text).map_err(|e| ConfigError::Parse(e.message().to_string()))
}

fn resolve(raw: RawConfig, o: Overrides) -> Result<RunConfig, ConfigError> {
    let suite = match (o.suite, raw.suite) {
        (Some(s), _) => s,
        (None, Some(s)) => s.parse()?,
        (None, None) => Suite::All,
    };
    let modulus = o.modulus.or(raw.modulus);
    if let Some(m) = modulus.filter(|&m| m < 2) {
        return Err(ConfigError::Modulus(m));
    }
    let blocks = o.blocks.or(match raw.blocks {
        Some(RawBlocks::List(b)) => Some(b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
        Some(RawBlocks::Name(s)) => Some(s),
        None => None,
    });
    let model = o.model.or(raw.model);
    let models = match (model, modulus) {
        (Some(model), Some(m)) => {
            let spec = ModelSpec::new(&model, m, blocks.as_deref())?;
            vec![if o.expect_violation || raw.expect_violation.unwrap_or(false) { spec.negative_control() } else { spec }]
        }
        (Some(_), None) | (None, Some(_)) if suite.needs_models() => {
            return Err(ConfigError::IncompleteModel);
        }
        _ if suite.needs_models() => default_models(),
        _ => Vec::new(),
    };
    let defaults = RunConfig::default();
    Ok(RunConfig {
        suite,
        models,
        cap: o.cap.or(raw.cap).unwrap_or(defaults.cap),
        jobs: o.jobs.or(raw.jobs).unwrap_or(defaults.jobs),
        seed: raw.seed.unwrap_or(defaults.seed),
        out: o.out.or(raw.out),
        roots: raw.roots,
        relroots: raw.relroots,
        group: raw.group,
        sandwich: raw.sandwich,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_names() {
        assert_eq!(parse_model("SL3").unwrap(), (ModelKind::Sl, 3));
        assert_eq!(parse_model("sl_4").unwrap(), (ModelKind::Sl, 4));
        assert_eq!(parse_model("Sp4").unwrap(), (ModelKind::Sp4, 4));
        assert!(parse_model("SL9").is_err());
        assert!(parse_model("G2").is_err());
    }

    #[test]
    fn block_strings() {
        assert_eq!(parse_blocks(ModelKind::Sl, "1,2").unwrap(), ParabolicBlocks::Sl(vec![1, 2]));
        assert_eq!(parse_blocks(ModelKind::Sl, "(2,1)").unwrap(), ParabolicBlocks::Sl(vec![2, 1]));
        assert_eq!(
            parse_blocks(ModelKind::Sp4, "siegel").unwrap(),
            ParabolicBlocks::Sp4(Sp4Parabolic::Siegel)
        );
        assert!(parse_blocks(ModelKind::Sl, "1;2").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
    }
}
