use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::report::CliError;

const KEYS: &[&str] = &[
    "compare",
    "d",
    "depth_k",
    "dimZ",
    "json",
    "k",
    "max_n",
    "minimal",
    "mode",
    "nvars",
    "power",
    "torsion_k",
    "w",
    "weights",
];

/// `key = value` lines; `#` starts a comment.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {k:?}",
                    i + 1
                )));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config: bad value {v:?} for {key}")))
            })
            .transpose()
    }

    pub fn flag(&self, key: &str) -> Result<Option<bool>, CliError> {
        self.get(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_values_and_comments() {
        let c = Config::parse("# defaults\ndimZ = 1\njson=true  # trailing\n\nmode = global\n").unwrap();
        assert_eq!(c.get::<usize>("dimZ").unwrap(), Some(1));
        assert_eq!(c.flag("json").unwrap(), Some(true));
        assert_eq!(c.get::<String>("mode").unwrap().as_deref(), Some("global"));
        assert_eq!(c.get::<u32>("d").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("dimZ").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("dimZ = many")
            .unwrap()
            .get::<usize>("dimZ")
            .is_err());
    }
}
