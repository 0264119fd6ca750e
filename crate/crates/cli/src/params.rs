use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// `key=value` parameters from an optional config file and the command line,
/// the latter taking precedence. Every value read, including defaults, is
/// recorded for the output header.
#[derive(Debug, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

fn split_token(token: &str) -> CliResult<(String, String)> {
    match token.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(CliError::Usage(format!("expected key=value, got `{token}`"))),
    }
}

impl Params {
    pub fn from_tokens(tokens: &[String]) -> CliResult<Self> {
        let mut cli = BTreeMap::new();
        for t in tokens {
            let (k, v) = split_token(t)?;
            cli.insert(k, v);
        }
        let mut values = BTreeMap::new();
        if let Some(path) = cli.remove("config") {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Input(format!("cannot read config file {path}: {e}")))?;
            for (n, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = split_token(line).map_err(|e| CliError::Usage(format!("{path}, line {}: {e}", n + 1)))?;
                values.insert(k, v);
            }
        }
        values.extend(cli);
        Ok(Self { values, resolved: BTreeMap::new() })
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> CliResult<()> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Usage(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }

    fn parse<T: FromStr>(key: &str, raw: &str) -> CliResult<T>
    where
        T::Err: Display,
    {
        raw.parse().map_err(|e| CliError::Usage(format!("bad value for `{key}`: `{raw}` ({e})")))
    }

    pub fn get<T: FromStr>(&mut self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: Display,
    {
        match self.values.get(key).cloned() {
            Some(raw) => {
                let v = Self::parse(key, &raw)?;
                self.resolved.insert(key.to_string(), raw);
                Ok(Some(v))
            }
            None => Ok(None),
        }
    }

    pub fn require<T: FromStr>(&mut self, key: &str) -> CliResult<T>
    where
        T::Err: Display,
    {
        self.get(key)?.ok_or_else(|| CliError::Usage(format!("missing required key `{key}`")))
    }

    pub fn get_or<T: FromStr + Display>(&mut self, key: &str, default: T) -> CliResult<T>
    where
        T::Err: Display,
    {
        match self.get(key)? {
            Some(v) => Ok(v),
            None => {
                self.resolved.insert(key.to_string(), default.to_string());
                Ok(default)
            }
        }
    }

    /// Comma-separated list.
    pub fn list<T: FromStr>(&mut self, key: &str, default: &str) -> CliResult<Vec<T>>
    where
        T::Err: Display,
    {
        let raw = self.get_or(key, default.to_string())?;
        raw.split(',').map(|s| Self::parse(key, s.trim())).collect()
    }

    /// Raw string without recording it, for keys that do not affect data.
    pub fn peek(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// `# key=value` lines for every value read so far.
    pub fn header(&self) -> String {
        self.resolved.iter().map(|(k, v)| format!("# {k}={v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(t: &[&str]) -> Vec<String> {
        t.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn defaults_are_recorded() {
        let mut p = Params::from_tokens(&tokens(&["a=1"])).unwrap();
        assert_eq!(p.get_or("a", 5u32).unwrap(), 1);
        assert_eq!(p.get_or("b", 2.5f64).unwrap(), 2.5);
        assert_eq!(p.header(), "# a=1\n# b=2.5\n");
    }

    #[test]
    fn bad_tokens_and_keys() {
        assert!(Params::from_tokens(&tokens(&["novalue"])).is_err());
        let p = Params::from_tokens(&tokens(&["x=1", "zz=2"])).unwrap();
        let err = p.check_keys(&["x"]).unwrap_err().to_string();
        assert!(err.contains("zz"));
    }

    #[test]
    fn missing_key_is_named() {
        let mut p = Params::from_tokens(&[]).unwrap();
        assert!(p.require::<f64>("X").unwrap_err().to_string().contains("`X`"));
    }

    #[test]
    fn lists() {
        let mut p = Params::from_tokens(&tokens(&["L=1, 2,3"])).unwrap();
        assert_eq!(p.list::<f64>("L", "").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(p.list::<u32>("m", "4,5").unwrap(), vec![4, 5]);
    }
}
