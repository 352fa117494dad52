use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Numeric,
    Categorical,
    Ordinal,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Numeric => "numeric",
            Kind::Categorical => "categorical",
            Kind::Ordinal => "ordinal",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "numeric" => Some(Kind::Numeric),
            "categorical" => Some(Kind::Categorical),
            "ordinal" => Some(Kind::Ordinal),
            _ => None,
        }
    }

    /// Mode used when a schema entry leaves `mode` out.
    pub fn default_mode(self) -> Mode {
        match self {
            Kind::Numeric => Mode::ProbGaussian,
            Kind::Categorical => Mode::ExactMatch,
            Kind::Ordinal => Mode::ProbOrdinal,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-attribute distance mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Gower,
    ProbGaussian,
    ProbEmpirical,
    ProbOrdinal,
    ExactMatch,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Gower => "gower",
            Mode::ProbGaussian => "prob_gaussian",
            Mode::ProbEmpirical => "prob_empirical",
            Mode::ProbOrdinal => "prob_ordinal",
            Mode::ExactMatch => "exact_match",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "gower" => Some(Mode::Gower),
            "prob_gaussian" => Some(Mode::ProbGaussian),
            "prob_empirical" => Some(Mode::ProbEmpirical),
            "prob_ordinal" => Some(Mode::ProbOrdinal),
            "exact_match" => Some(Mode::ExactMatch),
            _ => None,
        }
    }

    pub fn accepts(self, kind: Kind) -> bool {
        match self {
            Mode::Gower | Mode::ProbGaussian | Mode::ProbEmpirical => kind == Kind::Numeric,
            Mode::ProbOrdinal => kind == Kind::Ordinal,
            Mode::ExactMatch => matches!(kind, Kind::Categorical | Kind::Ordinal),
        }
    }

    /// True for the modes whose distance is a CDF interval mass.
    pub fn is_probabilistic(self) -> bool {
        matches!(
            self,
            Mode::ProbGaussian | Mode::ProbEmpirical | Mode::ProbOrdinal
        )
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Declaration of one column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<String>,
    pub weight: f64,
    pub mode: Mode,
    /// Power applied to the per-attribute distance before aggregation.
    pub exponent: f64,
}

impl AttributeSpec {
    pub fn new(name: impl Into<String>, kind: Kind, mode: Mode) -> Self {
        AttributeSpec {
            name: name.into(),
            kind,
            levels: Vec::new(),
            weight: 1.0,
            mode,
            exponent: 1.0,
        }
    }

    pub fn with_levels<I, S>(mut self, levels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.levels = levels.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_exponent(mut self, exponent: f64) -> Self {
        self.exponent = exponent;
        self
    }

    pub fn level_index(&self, token: &str) -> Option<usize> {
        self.levels.iter().position(|l| l == token)
    }

    pub fn validate(&self) -> Result<()> {
        let name = &self.name;
        if name.is_empty() {
            return Err(Error::attr(name, "empty attribute name"));
        }
        match self.kind {
            Kind::Ordinal => {
                if self.levels.is_empty() {
                    return Err(Error::attr(name, "ordinal attribute requires levels"));
                }
                let mut seen = HashSet::new();
                for level in &self.levels {
                    if !seen.insert(level.as_str()) {
                        return Err(Error::attr(name, format!("duplicate level `{level}`")));
                    }
                    if is_missing_marker(level) {
                        return Err(Error::attr(
                            name,
                            format!("level `{level}` collides with a missing marker"),
                        ));
                    }
                }
            }
            _ => {
                if !self.levels.is_empty() {
                    return Err(Error::attr(
                        name,
                        format!(
                            "levels are only allowed on ordinal attributes, not {}",
                            self.kind
                        ),
                    ));
                }
            }
        }
        if !self.mode.accepts(self.kind) {
            return Err(Error::attr(
                name,
                format!(
                    "mode/kind mismatch: mode {} cannot be used with kind {}",
                    self.mode, self.kind
                ),
            ));
        }
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return Err(Error::attr(
                name,
                format!("weight must be finite and >= 0, got {}", self.weight),
            ));
        }
        if !(self.exponent.is_finite() && self.exponent > 0.0) {
            return Err(Error::attr(
                name,
                format!("exponent must be finite and > 0, got {}", self.exponent),
            ));
        }
        Ok(())
    }
}

pub(crate) fn is_missing_marker(cell: &str) -> bool {
    cell.is_empty() || cell == "NA"
}

/// Ordered attribute declarations plus an optional categorical target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    attributes: Vec<AttributeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
}

impl Schema {
    pub fn new(attributes: Vec<AttributeSpec>, target: Option<String>) -> Result<Self> {
        let schema = Schema { attributes, target };
        schema.validate()?;
        Ok(schema)
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for attr in &self.attributes {
            attr.validate()?;
            if !names.insert(attr.name.as_str()) {
                return Err(Error::attr(&attr.name, "duplicate attribute name"));
            }
        }
        if let Some(target) = &self.target {
            let attr = self
                .attributes
                .iter()
                .find(|a| &a.name == target)
                .ok_or_else(|| {
                    Error::InvalidSchema(format!("target `{target}` is not a declared attribute"))
                })?;
            if attr.kind != Kind::Categorical {
                return Err(Error::attr(target, "target must be categorical"));
            }
        }
        if self.feature_indices().next().is_none() {
            return Err(Error::InvalidSchema(
                "at least one non-target attribute is required".into(),
            ));
        }
        Ok(())
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn target(&self) -> Option<&str> {
        self.target.as_deref()
    }

    pub fn target_index(&self) -> Option<usize> {
        let target = self.target.as_deref()?;
        self.attributes.iter().position(|a| a.name == target)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    /// Indices of the attributes that take part in distances (all but the target).
    pub fn feature_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let target = self.target_index();
        (0..self.attributes.len()).filter(move |&i| Some(i) != target)
    }

    /// Copy of this schema with every weight multiplied by `factor`.
    pub fn scaled_weights(&self, factor: f64) -> Result<Schema> {
        let mut out = self.clone();
        for attr in &mut out.attributes {
            attr.weight *= factor;
        }
        out.validate()?;
        Ok(out)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchema {
    attributes: Vec<RawAttribute>,
    #[serde(default)]
    target: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAttribute {
    name: String,
    kind: String,
    #[serde(default)]
    levels: Vec<String>,
    #[serde(default)]
    weight: Option<f64>,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    exponent: Option<f64>,
}

/// Parses a JSON schema document (see `docs/format.md`).
pub fn parse_schema(text: &str) -> Result<Schema> {
    let raw: RawSchema =
        serde_json::from_str(text).map_err(|e| Error::MalformedSchema(e.to_string()))?;
    let mut attributes = Vec::with_capacity(raw.attributes.len());
    for a in raw.attributes {
        let kind = Kind::parse(&a.kind)
            .ok_or_else(|| Error::attr(&a.name, format!("unknown kind `{}`", a.kind)))?;
        let mode = match &a.mode {
            Some(token) => Mode::parse(token)
                .ok_or_else(|| Error::attr(&a.name, format!("unknown mode `{token}`")))?,
            None => kind.default_mode(),
        };
        attributes.push(AttributeSpec {
            name: a.name,
            kind,
            levels: a.levels,
            weight: a.weight.unwrap_or(1.0),
            mode,
            exponent: a.exponent.unwrap_or(1.0),
        });
    }
    Schema::new(attributes, raw.target)
}
