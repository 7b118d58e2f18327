//! Experiment configuration: the JSON file format and its typed,
//! per-command parameter tables.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Terracini,
    Rank,
    Decompose,
    Kron,
    Matchgate,
    Minrank,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

/// The config file as written by the user.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_trials() -> usize {
    3
}

fn default_tol() -> f64 {
    1e-8
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerraciniMode {
    #[default]
    Secant,
    GenericRank,
    Scan,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerraciniParams {
    #[serde(default)]
    pub mode: TerraciniMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varieties: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_state: Option<usize>,
    /// Ring for `w_state`: `rational` or `fp <p>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce_rmax: Option<usize>,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposeMethod {
    Sylvester,
    Gross,
    Kruskal,
    Strassen,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeParams {
    pub method: DecomposeMethod,
    /// Binary form coefficients `c_0 … c_d` of `Σ c_m x^{d-m} y^m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_tensor_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KronMode {
    #[default]
    Coefficient,
    Rectangle,
    Cone,
    Plethysm,
    Weyl,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KronParams {
    #[serde(default)]
    pub mode: KronMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub stretch: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchgateMode {
    Pfaffian,
    Signature,
    Matchings,
    Mgi,
    Transform,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideParam {
    #[default]
    Generator,
    Recognizer,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchgateParams {
    pub mode: MatchgateMode,
    /// Full skew matrix, rows of rational strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<String>>,
    /// `2 × c` basis change, rows of rational strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub side: SideParam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinrankMode {
    Gurvits,
    Friedland,
    Exact,
    Sample,
    Entropy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinrankParams {
    pub mode: MinrankMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    #[serde(default = "default_trials")]
    pub trials: usize,
}

/// Parameters after validation against the command's table.
#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    Terracini(TerraciniParams),
    Rank(RankParams),
    Decompose(DecomposeParams),
    Kron(KronParams),
    Matchgate(MatchgateParams),
    Minrank(MinrankParams),
}

/// A validated config; `echo` has every default filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidConfig {
    pub echo: ExperimentConfig,
    pub params: Params,
}

fn typed<T: DeserializeOwned + Serialize>(map: &Map<String, Value>) -> Result<(T, Map<String, Value>), CliError> {
    let v = Value::Object(map.clone());
    let t: T = serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Validation(format!("parameters: {inner}"))
        } else {
            CliError::Validation(format!("parameters.{path}: {inner}"))
        }
    })?;
    let Value::Object(filled) = serde_json::to_value(&t).map_err(|e| CliError::Validation(e.to_string()))? else {
        unreachable!("parameter tables serialize to objects")
    };
    Ok((t, filled))
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                CliError::Validation(format!("config: {inner}"))
            } else {
                CliError::Validation(format!("{path}: {inner}"))
            }
        })
    }

    pub fn validate(&self) -> Result<ValidConfig, CliError> {
        let p = &self.parameters;
        let (params, filled) = match self.command {
            CommandKind::Terracini => typed(p).map(|(t, f)| (Params::Terracini(t), f))?,
            CommandKind::Rank => typed(p).map(|(t, f)| (Params::Rank(t), f))?,
            CommandKind::Decompose => typed(p).map(|(t, f)| (Params::Decompose(t), f))?,
            CommandKind::Kron => typed(p).map(|(t, f)| (Params::Kron(t), f))?,
            CommandKind::Matchgate => typed(p).map(|(t, f)| (Params::Matchgate(t), f))?,
            CommandKind::Minrank => typed(p).map(|(t, f)| (Params::Minrank(t), f))?,
        };
        let mut echo = self.clone();
        echo.parameters = filled;
        Ok(ValidConfig { echo, params })
    }
}

/// Missing-parameter error naming the field and the mode that needs it.
pub fn require<T: Clone>(v: &Option<T>, field: &str, mode: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Validation(format!("parameters.{field}: required for {mode}")))
}
