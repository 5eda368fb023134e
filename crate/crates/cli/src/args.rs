//! `--key value` argument maps and value parsing.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Parses `"re"` or `"re,im"`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::usage(format!("expected a number or \"re,im\", got {s:?}"));
    let mut parts = s.split(',');
    let re = parts.next().ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
    let im = match parts.next() {
        Some(t) => t.trim().parse::<f64>().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Parses a `;`-separated list of complex values; the empty string is the empty list.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_complex).collect()
}

/// Named arguments of `eval` and `check`. Every key must be consumed;
/// leftovers are reported as usage errors by [`NamedArgs::finish`].
#[derive(Debug, Default)]
pub struct NamedArgs {
    values: BTreeMap<String, String>,
}

impl NamedArgs {
    pub fn parse(raw: &[String]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        let mut it = raw.iter();
        while let Some(flag) = it.next() {
            let key = flag
                .strip_prefix("--")
                .filter(|k| !k.is_empty())
                .ok_or_else(|| CliError::usage(format!("expected --name, got {flag:?}")))?;
            let (key, value) = match key.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it.next().ok_or_else(|| CliError::usage(format!("--{key} needs a value")))?;
                    (key.to_string(), v.clone())
                }
            };
            if values.insert(key.clone(), value).is_some() {
                return Err(CliError::usage(format!("--{key} given twice")));
            }
        }
        Ok(NamedArgs { values })
    }

    pub fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    fn required(&mut self, key: &str) -> Result<String, CliError> {
        self.take(key).ok_or_else(|| CliError::usage(format!("missing --{key}")))
    }

    pub fn complex(&mut self, key: &str) -> Result<Complex64, CliError> {
        parse_complex(&self.required(key)?).map_err(|e| e.context(key))
    }

    pub fn complex_list(&mut self, key: &str) -> Result<Vec<Complex64>, CliError> {
        parse_complex_list(&self.required(key)?).map_err(|e| e.context(key))
    }

    pub fn parsed<T: FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        let v = self.required(key)?;
        v.parse().map_err(|_| CliError::usage(format!("--{key}: cannot parse {v:?}")))
    }

    pub fn parsed_opt<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| CliError::usage(format!("--{key}: cannot parse {v:?}"))),
        }
    }

    /// Errors on any key that was never taken.
    pub fn finish(self) -> Result<(), CliError> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::usage(format!("unexpected argument --{k}"))),
        }
    }

    /// The remaining arguments as a JSON object: integers stay integers,
    /// complex values become numbers or `[re, im]` pairs.
    pub fn into_json(self) -> Result<Map<String, Value>, CliError> {
        let mut map = Map::new();
        for (k, v) in self.values {
            let value = if let Ok(i) = v.parse::<u64>() {
                json!(i)
            } else {
                let z = parse_complex(&v).map_err(|e| e.context(&k))?;
                if z.im == 0.0 {
                    json!(z.re)
                } else {
                    json!([z.re, z.im])
                }
            };
            map.insert(k, value);
        }
        Ok(map)
    }
}
