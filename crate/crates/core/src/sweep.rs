//! Batch construction, validation and certification over parameter ranges.

use std::ops::RangeInclusive;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::bundle::{BundleSpec, ReflectionKind};
use crate::constructions::{embed, Embedded};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::layout::validate;
use crate::oracle::{certify, Certification};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Shifts `1 ≤ d ≤ t/2` with `gcd(t, d) > 1`.
    Shift,
    Reflection,
    All,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shift" => Ok(Family::Shift),
            "reflection" => Ok(Family::Reflection),
            "all" => Ok(Family::All),
            other => Err(Error::Parse(format!("unknown family {other:?} (shift, reflection, all)"))),
        }
    }
}

pub fn shift_specs(s_range: RangeInclusive<usize>, t_range: RangeInclusive<usize>) -> Vec<BundleSpec> {
    let mut out = Vec::new();
    for s in s_range {
        for t in t_range.clone() {
            for d in (1..=t / 2).filter(|d| t.gcd(d) > 1) {
                if let Ok(spec) = BundleSpec::shift(s, t, d) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

pub fn reflection_specs(s_range: RangeInclusive<usize>, t_range: RangeInclusive<usize>) -> Vec<BundleSpec> {
    let mut out = Vec::new();
    for s in s_range {
        for t in t_range.clone() {
            for &kind in ReflectionKind::for_length(t) {
                if let Ok(spec) = BundleSpec::reflection(s, t, kind) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub spec: String,
    /// 4 for bipartite bundles, 5 otherwise.
    pub predicted: usize,
    pub pages: Option<usize>,
    pub valid: bool,
    pub certification: Option<Certification>,
    /// The construction fell back to recoloring on its own spine.
    pub relaxed: bool,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.valid
            && self.pages == Some(self.predicted)
            && self.certification == Some(Certification::Certified(self.predicted))
    }
}

pub fn sweep_row(spec: &BundleSpec) -> SweepRow {
    let predicted = if spec.predict_bipartite() { 4 } else { 5 };
    let mut row =
        SweepRow { spec: spec.to_string(), predicted, pages: None, valid: false, certification: None, relaxed: false, error: None };
    let built = match embed(spec) {
        Ok(Embedded::Built(r)) => {
            row.relaxed = r.provenance.relaxed;
            r
        }
        Ok(Embedded::Unsupported(u)) => {
            row.error = Some(format!("unsupported: {u}"));
            return row;
        }
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    match validate(&spec.graph(), &built.embedding) {
        Ok(report) => {
            row.valid = report.is_valid();
            row.pages = Some(report.pages_used);
        }
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    }
    match certify(spec, &built.embedding) {
        Ok(c) => row.certification = Some(c),
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// One row per spec of `family` in the ranges, in spec order.
pub fn sweep(
    s_range: RangeInclusive<usize>,
    t_range: RangeInclusive<usize>,
    family: Family,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    if s_range.is_empty() || t_range.is_empty() {
        return Err(Error::InvalidSize(format!("empty range s={s_range:?}, t={t_range:?}")));
    }
    let mut specs = Vec::new();
    if matches!(family, Family::Shift | Family::All) {
        specs.extend(shift_specs(s_range.clone(), t_range.clone()));
    }
    if matches!(family, Family::Reflection | Family::All) {
        specs.extend(reflection_specs(s_range.clone(), t_range.clone()));
    }
    if specs.is_empty() {
        return Err(Error::InvalidSize(format!("no {family:?} bundles with s in {s_range:?}, t in {t_range:?}")));
    }
    Ok(exec.map(&specs, sweep_row))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_certified() {
        let rows = sweep(3..=4, 4..=8, Family::All, Execution::Sequential).unwrap();
        assert!(!rows.is_empty());
        for row in &rows {
            assert!(row.passed(), "{row:?}");
        }
    }

    #[test]
    fn spec_lists() {
        // t=6: d ∈ {2, 3}; t=4: d = 2
        assert_eq!(shift_specs(3..=3, 4..=6).len(), 3);
        // t=3: one; t=4: none, two
        assert_eq!(reflection_specs(3..=3, 3..=4).len(), 3);
    }

    #[test]
    fn empty_ranges_rejected() {
        #[allow(clippy::reversed_empty_ranges)]
        let err = sweep(5..=4, 4..=8, Family::Shift, Execution::Sequential);
        assert!(matches!(err, Err(Error::InvalidSize(_))));
        assert!(sweep(3..=3, 3..=3, Family::Shift, Execution::Sequential).is_err());
    }

    #[test]
    fn modes_agree() {
        let a = sweep(3..=5, 6..=9, Family::All, Execution::Sequential).unwrap();
        let b = sweep(3..=5, 6..=9, Family::All, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
