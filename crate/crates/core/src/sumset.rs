//! Exact arithmetic on finite sets of non-negative integers.
//!
//! Everything here is `u64`-valued and overflow-checked: an operation whose
//! result would not fit returns [`SetError::Overflow`] instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("{0}: operand set is empty")]
    Empty(&'static str),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("elements are not strictly increasing at position {0}")]
    NotSorted(usize),
    #[error("invalid AP-set: {0}")]
    InvalidAp(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Finite set of non-negative integers, stored sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerSet(Vec<u64>);

impl IntegerSet {
    /// Builds a set from arbitrary elements, sorting and deduplicating them.
    pub fn new<I: IntoIterator<Item = u64>>(elements: I) -> Self {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    /// Accepts an already canonical vector; rejects anything not strictly increasing.
    pub fn from_sorted(elements: Vec<u64>) -> Result<Self, SetError> {
        if let Some(pos) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(SetError::NotSorted(pos + 1));
        }
        Ok(Self(elements))
    }

    pub fn singleton(x: u64) -> Self {
        Self(vec![x])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_element(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<u64> for IntegerSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        Self::new(iter)
    }
}

/// Common difference of an AP-set.
///
/// Singletons carry no difference at all. The type deliberately has no
/// ordering: callers must go through [`Difference::step`] and handle the
/// undefined case explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Difference {
    Undefined,
    Step(u64),
}

impl Difference {
    pub fn step(self) -> Option<u64> {
        match self {
            Difference::Undefined => None,
            Difference::Step(d) => Some(d),
        }
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Difference::Undefined => f.write_str("undefined"),
            Difference::Step(d) => write!(f, "{d}"),
        }
    }
}

/// Arithmetic-progression descriptor `{first + i*difference : 0 <= i < length}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApSet {
    first: u64,
    difference: Difference,
    length: u64,
}

impl ApSet {
    /// A progression of `length >= 2` terms with `difference >= 1`, or a
    /// singleton when `length == 1` (the difference is then discarded).
    pub fn new(first: u64, difference: u64, length: u64) -> Result<Self, SetError> {
        match length {
            0 => Err(SetError::InvalidAp("length must be positive".into())),
            1 => Ok(Self::singleton(first)),
            _ => {
                if difference == 0 {
                    return Err(SetError::InvalidAp("difference must be positive".into()));
                }
                let ap = Self {
                    first,
                    difference: Difference::Step(difference),
                    length,
                };
                ap.last()?;
                Ok(ap)
            }
        }
    }

    pub fn singleton(first: u64) -> Self {
        Self {
            first,
            difference: Difference::Undefined,
            length: 1,
        }
    }

    pub fn first(&self) -> u64 {
        self.first
    }

    pub fn difference(&self) -> Difference {
        self.difference
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn last(&self) -> Result<u64, SetError> {
        match self.difference {
            Difference::Undefined => Ok(self.first),
            Difference::Step(d) => (self.length - 1)
                .checked_mul(d)
                .and_then(|span| span.checked_add(self.first))
                .ok_or(SetError::Overflow("AP-set last term")),
        }
    }

    pub fn expand(&self) -> IntegerSet {
        let step = self.difference.step().unwrap_or(0);
        // `new` already proved the last term fits.
        IntegerSet((0..self.length).map(|i| self.first + i * step).collect())
    }
}

/// `{a + b : a in A, b in B}`.
pub fn sumset(a: &IntegerSet, b: &IntegerSet) -> Result<IntegerSet, SetError> {
    if a.is_empty() || b.is_empty() {
        return Err(SetError::Empty("sumset"));
    }
    check_sum_fits(a, b)?;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            out.push(x + y);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(IntegerSet(out))
}

fn check_sum_fits(a: &IntegerSet, b: &IntegerSet) -> Result<(), SetError> {
    match (a.max_element(), b.max_element()) {
        (Some(x), Some(y)) if x.checked_add(y).is_none() => Err(SetError::Overflow("sumset")),
        _ => Ok(()),
    }
}

/// Partition of `A x B` into classes of pairs sharing the same sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityTable {
    classes: BTreeMap<u64, Vec<(u64, u64)>>,
    saturated_bound: usize,
}

impl CompatibilityTable {
    /// Classes keyed by sum, iterated in increasing sum order.
    pub fn classes(&self) -> &BTreeMap<u64, Vec<(u64, u64)>> {
        &self.classes
    }

    pub fn class(&self, sum: u64) -> Option<&[(u64, u64)]> {
        self.classes.get(&sum).map(Vec::as_slice)
    }

    /// Number of distinct classes (the compatibility index).
    pub fn index(&self) -> usize {
        self.classes.len()
    }

    /// `min(|A|, |B|)`, the largest size any class can reach.
    pub fn saturated_bound(&self) -> usize {
        self.saturated_bound
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn trivial_classes(&self) -> impl Iterator<Item = u64> + '_ {
        self.classes
            .iter()
            .filter(|(_, pairs)| pairs.len() == 1)
            .map(|(k, _)| *k)
    }

    pub fn saturated_classes(&self) -> impl Iterator<Item = u64> + '_ {
        self.classes
            .iter()
            .filter(move |(_, pairs)| pairs.len() == self.saturated_bound)
            .map(|(k, _)| *k)
    }
}

pub fn compatibility_table(a: &IntegerSet, b: &IntegerSet) -> Result<CompatibilityTable, SetError> {
    if a.is_empty() || b.is_empty() {
        return Err(SetError::Empty("compatibility_table"));
    }
    check_sum_fits(a, b)?;
    let mut classes: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            classes.entry(x + y).or_default().push((x, y));
        }
    }
    Ok(CompatibilityTable {
        classes,
        saturated_bound: a.len().min(b.len()),
    })
}

/// Returns the progression that expands to `s`, if `s` is one.
///
/// A singleton yields a length-1 `ApSet` with an undefined difference; any
/// two-element set is a progression with difference `max - min`.
pub fn detect_ap(s: &IntegerSet) -> Result<Option<ApSet>, SetError> {
    let xs = s.as_slice();
    match xs {
        [] => Err(SetError::Empty("detect_ap")),
        [x] => Ok(Some(ApSet::singleton(*x))),
        [x, y, rest @ ..] => {
            let d = y - x;
            let mut prev = *y;
            for &z in rest {
                if z - prev != d {
                    return Ok(None);
                }
                prev = z;
            }
            Ok(Some(ApSet {
                first: *x,
                difference: Difference::Step(d),
                length: xs.len() as u64,
            }))
        }
    }
}

/// Cardinality `m + k(n - 1)` of the sumset of an `m`-term progression with
/// difference `d` and an `n`-term progression with difference `k*d`.
///
/// Only meaningful for `1 <= k <= m`; outside that range the sumset is not a
/// progression and the formula does not apply.
pub fn predicted_edge_cardinality(m: u64, n: u64, k: u64) -> Result<u64, SetError> {
    if m == 0 || n == 0 {
        return Err(SetError::Precondition(format!(
            "label sizes must be positive (m={m}, n={n})"
        )));
    }
    if k == 0 || k > m {
        return Err(SetError::Precondition(format!(
            "multiplier k={k} outside 1..={m}"
        )));
    }
    k.checked_mul(n - 1)
        .and_then(|x| x.checked_add(m))
        .ok_or(SetError::Overflow("predicted edge cardinality"))
}
