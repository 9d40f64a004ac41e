//! Typed access to a scenario's parameter object.

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    map: Map<String, Value>,
}

impl Params {
    pub fn new(map: Map<String, Value>) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &Map<String, Value> {
        &self.map
    }

    pub fn contains(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn set(&mut self, key: impl Into<String>, value: Value) {
        self.map.insert(key.into(), value);
    }

    /// Entries of `other` replace entries of `self`.
    pub fn overlay(&mut self, other: &Params) {
        for (k, v) in &other.map {
            self.map.insert(k.clone(), v.clone());
        }
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str, default: T) -> CliResult<T> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => decode(key, v),
        }
    }

    pub fn get_opt<T: DeserializeOwned>(&self, key: &str) -> CliResult<Option<T>> {
        self.map.get(key).map(|v| decode(key, v)).transpose()
    }

    pub fn f64(&self, key: &str, default: f64) -> CliResult<f64> {
        let v: f64 = self.get(key, default)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(CliError::config(key, "must be finite"))
        }
    }

    pub fn positive(&self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.f64(key, default)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(CliError::config(key, format!("must be positive, got {v}")))
        }
    }

    pub fn usize(&self, key: &str, default: usize) -> CliResult<usize> {
        self.get(key, default)
    }

    pub fn string(&self, key: &str, default: &str) -> CliResult<String> {
        self.get(key, default.to_string())
    }
}

fn decode<T: DeserializeOwned>(key: &str, v: &Value) -> CliResult<T> {
    // flag values arrive as strings; give numbers and lists a second chance
    if let Ok(t) = serde_json::from_value(v.clone()) {
        return Ok(t);
    }
    if let Value::String(s) = v {
        if let Ok(parsed) = serde_json::from_str::<Value>(s) {
            if let Ok(t) = serde_json::from_value(parsed) {
                return Ok(t);
            }
        }
    }
    Err(CliError::config(key, format!("cannot use value {v}")))
}

/// A flag value: JSON if it parses, otherwise a plain string.
pub fn flag_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}
