//! Parsing of command-line values and config files into library types.

use std::fmt;
use std::path::Path;

use perdom::slopes::{parse_slope, ClosedFamily, SlopeFunction};
use perdom::weyl::ParabolicType;
use perdom::{Error, Slope};
use serde::Deserialize;

/// A configuration problem that should exit with code 2.
#[derive(Debug)]
pub struct InvalidConfig(pub String);

impl fmt::Display for InvalidConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for InvalidConfig {}

/// A computed value disagreed with its prediction; exits with code 3.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mismatch: {}", self.0)
    }
}

impl std::error::Error for Mismatch {}

/// `"2,1,-3"` or `"1/2,1/2,-1"`; repeated values become multiplicities.
pub fn parse_g(s: &str) -> Result<SlopeFunction, Error> {
    let values = s
        .split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(parse_slope)
        .collect::<Result<Vec<Slope>, _>>()?;
    SlopeFunction::from_values(&values)
}

/// `"3"` means `1..=3`; `"2..4"` and `"2..=4"` are both inclusive.
pub fn parse_n_range(s: &str) -> Result<Vec<u32>, InvalidConfig> {
    let bad = || InvalidConfig(format!("bad n range {s:?}; use N or A..B"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (1, num(s)?),
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

/// Comma-separated 1-based indices of simple reflections. Empty, `B` or `{}`
/// is the Borel type.
pub fn parse_parabolic(d: usize, s: &str) -> Result<ParabolicType, Error> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    if t.is_empty() || t == "B" {
        return Ok(ParabolicType::borel(d));
    }
    let indices = t
        .split(',')
        .map(|x| {
            let x = x.trim().trim_start_matches('s');
            x.parse::<usize>().map_err(|_| Error::Parse(format!("bad reflection index {x:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ParabolicType::from_indices(d, &indices)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FamilySpec {
    Name(String),
    Threshold { threshold: (i64, i64), strict: bool },
}

/// JSON config file. Every field is optional; command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// `[[num, den, mult], ...]` in decreasing order.
    pub g: Option<Vec<(i64, i64, usize)>>,
    pub drinfeld: Option<usize>,
    pub q: Option<u32>,
    family: Option<FamilySpec>,
    /// `[lo, hi]`, inclusive.
    pub n: Option<(u32, u32)>,
    pub budget: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| InvalidConfig(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| InvalidConfig(format!("{}: {e}", path.display())).into())
    }

    pub fn family(&self) -> Result<Option<ClosedFamily>, Error> {
        match &self.family {
            None => Ok(None),
            Some(FamilySpec::Name(s)) => s.parse().map(Some),
            Some(FamilySpec::Threshold { threshold: (num, den), strict }) => {
                if *den == 0 {
                    return Err(Error::Parse("zero denominator in family threshold".into()));
                }
                let t = Slope::new(*num, *den);
                Ok(Some(if *strict { ClosedFamily::greater_than(t) } else { ClosedFamily::at_least(t) }))
            }
        }
    }
}

/// Maps an error chain onto the exit-code contract: 2 for bad input, 3 for a
/// failed cross-check, 4 for an exhausted budget, 1 for anything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InvalidConfig>().is_some() {
        return 2;
    }
    if err.downcast_ref::<Mismatch>().is_some() {
        return 3;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::NotPrime(_)
            | Error::ZeroDegree
            | Error::FieldTooLarge { .. }
            | Error::NonMonotone
            | Error::InvalidSlopeFunction(_)
            | Error::IndexOutOfRange { .. }
            | Error::FamilyNotSemistable(_)
            | Error::Parse(_),
        ) => 2,
        Some(Error::BudgetExceeded { .. }) => 4,
        Some(Error::MethodDisagreement(_) | Error::KappaFailure(_)) => 3,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_multiplicities_are_inferred() {
        let g = parse_g("1,1,-1,-1").unwrap();
        assert_eq!(g.to_triples(), vec![(1, 1, 2), (-1, 1, 2)]);
        assert!(parse_g("1,1").is_err());
        assert_eq!(parse_g("1/2, 1/2, -1").unwrap().to_triples(), vec![(1, 2, 2), (-1, 1, 1)]);
    }

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_n_range("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_n_range("2..=2").unwrap(), vec![2]);
        assert!(parse_n_range("0").is_err());
        assert!(parse_n_range("3..1").is_err());
    }

    #[test]
    fn parabolic_specs() {
        assert!(parse_parabolic(3, "").unwrap().is_empty());
        assert_eq!(parse_parabolic(4, "{s1,s3}").unwrap().indices(), vec![1, 3]);
        assert!(parse_parabolic(3, "3").is_err());
    }

    #[test]
    fn file_config_families() {
        let c: FileConfig = serde_json::from_str(r#"{"g": [[1,2,2],[-1,1,1]], "family": {"threshold": [1,2], "strict": false}}"#).unwrap();
        assert_eq!(c.family().unwrap().unwrap().to_string(), "ge:1/2");
        let c: FileConfig = serde_json::from_str(r#"{"family": "gt:1"}"#).unwrap();
        assert_eq!(c.family().unwrap().unwrap().to_string(), "gt:1/1");
    }
}
