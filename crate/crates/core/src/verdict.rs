//! Verdicts: a holds/fails answer with a checkable witness on failure, and
//! the exact rational arithmetic the checkers use for thresholds.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational.
pub type Q = Ratio<i64>;

pub fn q(num: i64, den: i64) -> Q {
    Ratio::new(num, den)
}

pub fn qi(v: usize) -> Q {
    Ratio::from_integer(v as i64)
}

/// Parses `"3/8"`, `"0.25"` or `"2"` exactly.
pub fn parse_fraction(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::BadParams(format!("not a fraction: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(q(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let mag = int.abs() * den + f;
        return Ok(q(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad())
}

/// `ceil(x)` for a non-negative rational.
pub fn ceil_q(x: Q) -> i64 {
    x.ceil().to_integer()
}

pub mod ratio_str {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_fraction(&s).map_err(serde::de::Error::custom)
    }
}

/// One term `value >= bound` of a degree-sequence clause that evaluated
/// false. `index` is 1-based; `value` is `None` when the index falls outside
/// `1..=n` (such a term is false).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub sequence: String,
    pub index: i64,
    pub value: Option<usize>,
    #[serde(with = "ratio_str")]
    pub bound: Q,
}

/// A failed clause: every listed term is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseFailure {
    pub clause: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NotStronglyConnected {
        from: usize,
        to: usize,
    },
    TooFewVertices {
        n: usize,
        needed: usize,
    },
    /// `d+(out_vertex) + d-(in_vertex)` below the threshold.
    SemidegreeSum {
        out_vertex: usize,
        in_vertex: usize,
        value: usize,
        #[serde(with = "ratio_str")]
        threshold: Q,
    },
    /// Minimum semidegree (attained at `vertex`) violates the threshold.
    Semidegree {
        vertex: usize,
        value: usize,
        #[serde(with = "ratio_str")]
        threshold: Q,
        strict: bool,
    },
    /// Degree-sum condition on an ordered or unordered pair.
    Pair {
        x: usize,
        y: usize,
        value: usize,
        #[serde(with = "ratio_str")]
        threshold: Q,
    },
    SequenceIndex {
        index: usize,
        failures: Vec<ClauseFailure>,
    },
    Connectivity {
        kappa: usize,
        alpha2: usize,
        threshold: u128,
        separator: Vec<usize>,
        independent_set: Vec<usize>,
    },
    /// `delta(G) + delta+(G) + delta-(G)` is not above the threshold.
    DeltaStar {
        min_degree_vertex: usize,
        min_out_vertex: usize,
        min_in_vertex: usize,
        value: usize,
        #[serde(with = "ratio_str")]
        threshold: Q,
    },
    MissingLength {
        length: usize,
    },
    Subset {
        set: Vec<usize>,
        robust_size: usize,
        #[serde(with = "ratio_str")]
        required: Q,
    },
    SubPair {
        x: Vec<usize>,
        y: Vec<usize>,
        #[serde(with = "ratio_str")]
        density: Q,
        #[serde(with = "ratio_str")]
        pair_density: Q,
    },
    LowDegree {
        vertex: usize,
        side: String,
        degree: usize,
        #[serde(with = "ratio_str")]
        required: Q,
    },
    Arc {
        u: usize,
        v: usize,
        problem: String,
    },
    Element {
        index: usize,
        problem: String,
    },
    Count {
        found: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub rule: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(rule: impl Into<String>) -> Self {
        Verdict { rule: rule.into(), holds: true, witness: None }
    }

    pub fn fails(rule: impl Into<String>, witness: Witness) -> Self {
        Verdict { rule: rule.into(), holds: false, witness: Some(witness) }
    }

    pub fn from_check(rule: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Verdict::fails(rule, w),
            None => Verdict::holds(rule),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule={} holds={}", self.rule, self.holds)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={}", serde_json::to_string(w).map_err(|_| fmt::Error)?)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_parse_exactly() {
        assert_eq!(parse_fraction("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_fraction("3/8").unwrap(), q(3, 8));
        assert_eq!(parse_fraction("2").unwrap(), q(2, 1));
        assert_eq!(parse_fraction("-0.5").unwrap(), q(-1, 2));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict::fails("meyniel", Witness::Pair { x: 1, y: 6, value: 12, threshold: q(13, 1) });
        let json = v.to_json();
        assert!(json.contains("\"rule\":\"meyniel\""));
        assert!(json.contains("\"holds\":false"));
        assert!(json.contains("\"threshold\":\"13\""));
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
