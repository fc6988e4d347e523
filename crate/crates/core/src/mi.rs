//! Plug-in entropy and mutual information between raw and augmented
//! coordinate streams, plus the 2-means non-noise/noise taxonomy.
//!
//! All logs are base 2. Histogram counts are summed in sorted order, so a
//! result depends only on the multiset of counts and never on hash-map
//! iteration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::SkeletonSequence;

pub const DEFAULT_BINS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantizationConfig {
    pub bins: usize,
}

impl Default for QuantizationConfig {
    fn default() -> Self {
        Self { bins: DEFAULT_BINS }
    }
}

impl QuantizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bins < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 bins, got {}", self.bins)));
        }
        Ok(())
    }
}

/// Uniform binning: `floor((v - lo) / (hi - lo) · bins)`, clamped to
/// `[0, bins - 1]`.
pub fn quantize(values: &[f64], cfg: &QuantizationConfig, lo: f64, hi: f64) -> Result<Vec<u32>> {
    cfg.validate()?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::NonFiniteParameter("quantization range"));
    }
    if lo >= hi {
        return Err(Error::Degenerate(format!("quantization range [{lo}, {hi}] is empty")));
    }
    let width = hi - lo;
    let top = (cfg.bins - 1) as f64;
    values
        .iter()
        .map(|&v| {
            if !v.is_finite() {
                return Err(Error::NonFiniteParameter("quantized value"));
            }
            let bin = ((v - lo) / width * cfg.bins as f64).floor();
            Ok(bin.clamp(0.0, top) as u32)
        })
        .collect()
}

fn entropy_of_counts(mut counts: Vec<usize>, total: usize) -> f64 {
    counts.sort_unstable();
    let n = total as f64;
    let mut h = 0.0;
    for c in counts {
        if c > 0 {
            let p = c as f64 / n;
            h -= p * p.log2();
        }
    }
    h
}

fn histogram<T: Eq + Hash>(items: impl Iterator<Item = T>) -> (Vec<usize>, usize) {
    let mut counts: HashMap<T, usize> = HashMap::new();
    let mut total = 0;
    for item in items {
        *counts.entry(item).or_insert(0) += 1;
        total += 1;
    }
    (counts.into_values().collect(), total)
}

/// `H = -Σ p log₂ p` over empirical symbol frequencies.
pub fn entropy<T: Eq + Hash>(symbols: &[T]) -> Result<f64> {
    if symbols.is_empty() {
        return Err(Error::Empty("entropy of an empty stream"));
    }
    let (counts, total) = histogram(symbols.iter());
    Ok(entropy_of_counts(counts, total))
}

/// Entropy of the empirical pair distribution.
pub fn joint_entropy<A: Eq + Hash, B: Eq + Hash>(a: &[A], b: &[B]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::Empty("joint entropy of empty streams"));
    }
    let (counts, total) = histogram(a.iter().zip(b));
    Ok(entropy_of_counts(counts, total))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MIResult {
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub joint_entropy: f64,
    pub mi: f64,
    pub sample_count: usize,
    pub config: Option<QuantizationConfig>,
}

/// `I(A, B) = H(A) + H(B) - H(A, B)`.
pub fn mutual_information<A: Eq + Hash, B: Eq + Hash>(a: &[A], b: &[B]) -> Result<MIResult> {
    let joint = joint_entropy(a, b)?;
    let ha = entropy(a)?;
    let hb = entropy(b)?;
    Ok(MIResult {
        entropy_a: ha,
        entropy_b: hb,
        joint_entropy: joint,
        mi: ha + hb - joint,
        sample_count: a.len(),
        config: None,
    })
}

/// MI between two aligned sequences, each flattened frame-, joint- then
/// axis-major and binned over the joint min/max of both.
pub fn sequence_mi(raw: &SkeletonSequence, aug: &SkeletonSequence, cfg: &QuantizationConfig) -> Result<MIResult> {
    if raw.schema != aug.schema || raw.len() != aug.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} x {} frames vs {} x {} frames",
            raw.schema,
            raw.len(),
            aug.schema,
            aug.len()
        )));
    }
    let a = raw.flatten();
    let b = aug.flatten();
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch("frames hold different joint counts".into()));
    }
    if a.is_empty() {
        return Err(Error::Empty("sequence MI of empty sequences"));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in a.iter().chain(&b) {
        if !v.is_finite() {
            return Err(Error::NonFiniteParameter("coordinate"));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    // every value identical: widen so the lone value lands in bin 0
    if lo == hi {
        hi = lo + 1.0;
    }
    let sa = quantize(&a, cfg, lo, hi)?;
    let sb = quantize(&b, cfg, lo, hi)?;
    let mut r = mutual_information(&sa, &sb)?;
    r.config = Some(*cfg);
    Ok(r)
}

/// Order-stable pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

pub fn mean(values: &[f64]) -> f64 {
    pairwise_sum(values) / values.len() as f64
}

/// Mean of [`sequence_mi`] over `(raw, augmented)` pairs.
pub fn dataset_average_mi<'a, I>(pairs: I, cfg: &QuantizationConfig) -> Result<f64>
where
    I: IntoIterator<Item = (&'a SkeletonSequence, &'a SkeletonSequence)>,
{
    let values = pairs
        .into_iter()
        .map(|(raw, aug)| sequence_mi(raw, aug, cfg).map(|r| r.mi))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Empty("dataset average MI over zero pairs"));
    }
    Ok(mean(&values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MethodClass {
    NonNoise,
    Noise,
}

impl fmt::Display for MethodClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodClass::NonNoise => "non-noise",
            MethodClass::Noise => "noise",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MIReport {
    pub per_method: BTreeMap<String, f64>,
    pub taxonomy: BTreeMap<String, MethodClass>,
    /// Highest average MI first; ties broken by name.
    pub ranking: Vec<String>,
}

/// Ranks methods by average MI and splits them with an exact 1-D 2-means:
/// the upper cluster is non-noise. Equal values form a single non-noise
/// cluster.
pub fn classify_methods(per_method: &BTreeMap<String, f64>) -> Result<MIReport> {
    if per_method.is_empty() {
        return Err(Error::Empty("no methods to classify"));
    }
    let mut ranking: Vec<(&String, f64)> = per_method.iter().map(|(k, &v)| (k, v)).collect();
    ranking.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let values: Vec<f64> = ranking.iter().map(|r| r.1).collect();
    let split = best_two_means_split(&values);

    let taxonomy = ranking
        .iter()
        .enumerate()
        .map(|(i, (name, _))| {
            let class = if i < split {
                MethodClass::NonNoise
            } else {
                MethodClass::Noise
            };
            ((*name).clone(), class)
        })
        .collect();
    Ok(MIReport {
        per_method: per_method.clone(),
        taxonomy,
        ranking: ranking.into_iter().map(|(k, _)| k.clone()).collect(),
    })
}

fn sse(values: &[f64]) -> f64 {
    let m = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - m).powi(2)).sum()
}

/// Size of the upper cluster for values sorted in descending order.
fn best_two_means_split(sorted_desc: &[f64]) -> usize {
    let n = sorted_desc.len();
    if n < 2 || sorted_desc[0] == sorted_desc[n - 1] {
        return n;
    }
    let mut best = (f64::INFINITY, n);
    for k in 1..n {
        // identical values never straddle the split
        if sorted_desc[k - 1] == sorted_desc[k] {
            continue;
        }
        let cost = sse(&sorted_desc[..k]) + sse(&sorted_desc[k..]);
        if cost < best.0 {
            best = (cost, k);
        }
    }
    best.1
}

impl MIReport {
    /// Aligned text table: one column per method in ranking order, then the
    /// taxonomy row.
    pub fn to_text(&self) -> String {
        let width = self
            .ranking
            .iter()
            .map(|m| m.len())
            .max()
            .unwrap_or(0)
            .max(10);
        let mut out = String::new();
        let _ = writeln!(out, "Average mutual information (bits)");
        let mut header = format!("{:<8}", "");
        let mut mi_row = format!("{:<8}", "MI");
        let mut class_row = format!("{:<8}", "class");
        for m in &self.ranking {
            let _ = write!(header, " {m:>width$}");
            let _ = write!(mi_row, " {:>width$.4}", self.per_method[m]);
            let _ = write!(class_row, " {:>width$}", self.taxonomy[m].to_string());
        }
        let _ = writeln!(out, "{}", header.trim_end());
        let _ = writeln!(out, "{mi_row}");
        let _ = writeln!(out, "{class_row}");
        out
    }
}
