use std::collections::BTreeMap;

use serde::Serialize;

/// A number together with the formula it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaggedValue {
    pub name: String,
    pub value: f64,
    pub formula: String,
}

impl TaggedValue {
    pub fn new(name: impl Into<String>, value: f64, formula: impl Into<String>) -> Self {
        TaggedValue { name: name.into(), value, formula: formula.into() }
    }
}

/// Output of one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    /// Non-numeric options such as the counting method.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub settings: BTreeMap<String, String>,
    pub parameters: Vec<TaggedValue>,
    pub values: Vec<TaggedValue>,
    pub residuals: Vec<TaggedValue>,
    pub reference_bounds: Vec<TaggedValue>,
    /// Tabular output, one list of values per row.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Vec<TaggedValue>>,
    /// Warnings such as parameters outside a stated range.
    pub flags: Vec<String>,
    /// Wall-clock seconds; excluded when comparing runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_seconds: Option<f64>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            settings: BTreeMap::new(),
            parameters: Vec::new(),
            values: Vec::new(),
            residuals: Vec::new(),
            reference_bounds: Vec::new(),
            rows: Vec::new(),
            flags: Vec::new(),
            timing_seconds: None,
        }
    }

    pub fn setting(mut self, name: &str, value: impl Into<String>) -> Self {
        self.settings.insert(name.to_string(), value.into());
        self
    }

    pub fn param(mut self, name: &str, value: f64, formula: &str) -> Self {
        self.parameters.push(TaggedValue::new(name, value, formula));
        self
    }

    pub fn value(mut self, name: &str, value: f64, formula: &str) -> Self {
        self.values.push(TaggedValue::new(name, value, formula));
        self
    }

    pub fn residual(mut self, name: &str, value: f64, formula: &str) -> Self {
        self.residuals.push(TaggedValue::new(name, value, formula));
        self
    }

    pub fn bound(mut self, name: &str, value: f64, formula: &str) -> Self {
        self.reference_bounds.push(TaggedValue::new(name, value, formula));
        self
    }

    pub fn row(mut self, row: Vec<TaggedValue>) -> Self {
        self.rows.push(row);
        self
    }

    pub fn flag_if(mut self, cond: bool, msg: &str) -> Self {
        if cond {
            self.flags.push(msg.to_string());
        }
        self
    }

    /// Looks a value up by name across values and residuals.
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().chain(&self.residuals).find(|t| t.name == name).map(|t| t.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_and_lookup() {
        let r = ExperimentReport::new("demo")
            .param("x", 10.0, "input")
            .value("psi", 1.5, "sum of jumps")
            .residual("gap", 0.1, "|a - b|")
            .flag_if(false, "never")
            .flag_if(true, "always");
        assert_eq!(r.get("psi"), Some(1.5));
        assert_eq!(r.get("gap"), Some(0.1));
        assert_eq!(r.flags, ["always"]);
        let j = serde_json::to_value(&r).unwrap();
        assert!(j.get("timing_seconds").is_none());
        assert!(j.get("rows").is_none());
    }
}
