//! Synthetic channel-feature scenarios and exact log densities.
//!
//! Three scenarios produce labeled channel-feature (CF) vectors: a clipped
//! Gaussian (wireless AWGN), a clipped Gaussian mixture (underwater
//! acoustic), and a finite alphabet obtained by quantizing and permuting a
//! Gaussian. Each scenario also evaluates the exact log density (or log pmf)
//! of either class, which is what the statistical baselines threshold on.
//!
//! Clipping saturates entries at the box edge, so the edge carries a
//! probability atom; `log_density` returns the log of that atom's mass when
//! an entry sits exactly on the boundary.

use crate::math::{logsumexp, normal_cdf, normal_logpdf, normal_sf};
use crate::rng::SeedTree;
use crate::{Error, Hypothesis, Result};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use std::io::{BufRead, Write};

/// Axis-aligned box `[lo_j, hi_j]^M`, the domain of CF vectors and of the
/// uniform artificial class.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::Config(
                "box domain needs matching nonempty lo/hi vectors".into(),
            ));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if !(l.is_finite() && h.is_finite() && l < h) {
                return Err(Error::Config(format!(
                    "box domain requires lo < hi per entry, got [{l}, {h}]"
                )));
            }
        }
        Ok(BoxDomain { lo, hi })
    }

    /// The symmetric clip box `[-zeta, zeta]^dim`.
    pub fn symmetric(dim: usize, zeta: f64) -> Result<Self> {
        BoxDomain::new(vec![-zeta; dim], vec![zeta; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    pub fn log_volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l).ln()).sum()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| *v >= *l && *v <= *h)
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (l, h)) in x.iter_mut().zip(self.lo.iter().zip(&self.hi)) {
            *v = v.clamp(*l, *h);
        }
    }
}

/// Whether a dataset came from a channel model or was generated artificially
/// as the uniform negative class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Provenance {
    Measured,
    Artificial,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Measured => "measured",
            Provenance::Artificial => "artificial",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "measured" => Ok(Provenance::Measured),
            "artificial" => Ok(Provenance::Artificial),
            other => Err(Error::Parse(format!("unknown provenance {other:?}"))),
        }
    }
}

/// One labeled CF vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub x: Vec<f64>,
    pub label: Hypothesis,
    pub provenance: Provenance,
}

/// A nonempty bag of CF vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    dim: usize,
    samples: Vec<Sample>,
}

impl LabeledDataset {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let dim = samples
            .first()
            .map(|s| s.x.len())
            .ok_or_else(|| Error::Config("dataset must be nonempty".into()))?;
        if samples.iter().any(|s| s.x.len() != dim) {
            return Err(Error::Config("dataset vectors must share one dimension".into()));
        }
        Ok(LabeledDataset { dim, samples })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    /// Feature vectors carrying the given label.
    pub fn features_of(&self, label: Hypothesis) -> Vec<&[f64]> {
        self.samples
            .iter()
            .filter(|s| s.label == label)
            .map(|s| s.x.as_slice())
            .collect()
    }

    pub fn concat(mut self, other: LabeledDataset) -> Result<LabeledDataset> {
        if self.dim != other.dim {
            return Err(Error::Config("cannot concatenate datasets of different dimension".into()));
        }
        self.samples.extend(other.samples);
        Ok(self)
    }

    /// CSV with header `x1,...,xM,label,provenance`. Floats are written in
    /// shortest round-trip form.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        let header: Vec<String> = (1..=self.dim).map(|j| format!("x{j}")).collect();
        writeln!(w, "{},label,provenance", header.join(","))?;
        for s in &self.samples {
            let row: Vec<String> = s.x.iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{},{},{}", row.join(","), s.label.label(), s.provenance.as_str())?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty CSV".into()))??;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 3 || cols[cols.len() - 2] != "label" || cols[cols.len() - 1] != "provenance"
        {
            return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
        }
        let dim = cols.len() - 2;
        let mut samples = Vec::new();
        for line in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != dim + 2 {
                return Err(Error::Parse(format!("row has {} fields, expected {}", fields.len(), dim + 2)));
            }
            let x = fields[..dim]
                .iter()
                .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("bad float {f:?}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            let label = Hypothesis::from_label(
                fields[dim]
                    .parse::<u8>()
                    .map_err(|e| Error::Parse(format!("bad label: {e}")))?,
            )?;
            let provenance = Provenance::parse(fields[dim + 1])?;
            samples.push(Sample { x, label, provenance });
        }
        LabeledDataset::new(samples)
    }
}

/// Clipped multivariate Gaussian scenario: independent unit-variance entries
/// with per-class mean, saturated at `[-clip, clip]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianScenarioConfig {
    pub dim: usize,
    pub mean0: Vec<f64>,
    pub mean1: Vec<f64>,
    pub clip: f64,
}

impl GaussianScenarioConfig {
    /// Wireless AWGN scenario: M = 4, class means 0 and 3 per entry.
    pub fn paper_default() -> Self {
        GaussianScenarioConfig {
            dim: 4,
            mean0: vec![0.0; 4],
            mean1: vec![3.0; 4],
            clip: DEFAULT_CLIP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("gaussian scenario needs dim >= 1".into()));
        }
        if self.mean0.len() != self.dim || self.mean1.len() != self.dim {
            return Err(Error::Config("gaussian means must have length dim".into()));
        }
        if !(self.clip.is_finite() && self.clip > 0.0) {
            return Err(Error::Config("clip must be a positive real".into()));
        }
        Ok(())
    }

    fn mean(&self, class: Hypothesis) -> &[f64] {
        match class {
            Hypothesis::H0 => &self.mean0,
            Hypothesis::H1 => &self.mean1,
        }
    }
}

/// The clip range is not stated numerically in the source material; the
/// artificial-dataset histograms span [-15, 15], which this default matches.
pub const DEFAULT_CLIP: f64 = 15.0;

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mean: Vec<f64>,
}

/// Clipped Gaussian-mixture scenario: the joint density is a mixture of
/// isotropic unit-variance Gaussians, saturated at `[-clip, clip]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureScenarioConfig {
    pub dim: usize,
    pub comps0: Vec<MixtureComponent>,
    pub comps1: Vec<MixtureComponent>,
    pub clip: f64,
}

impl MixtureScenarioConfig {
    /// Underwater acoustic scenario: 3 components for the positive class at
    /// means (-1.5, -0.5, 3) with weights (0.2, 0.4, 0.4), 2 components for
    /// the negative class at means (6, 9) with weights (0.5, 0.5).
    pub fn paper_default() -> Self {
        let c = |w: f64, m: f64| MixtureComponent { weight: w, mean: vec![m; 4] };
        MixtureScenarioConfig {
            dim: 4,
            comps0: vec![c(0.2, -1.5), c(0.4, -0.5), c(0.4, 3.0)],
            comps1: vec![c(0.5, 6.0), c(0.5, 9.0)],
            clip: DEFAULT_CLIP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("mixture scenario needs dim >= 1".into()));
        }
        if !(self.clip.is_finite() && self.clip > 0.0) {
            return Err(Error::Config("clip must be a positive real".into()));
        }
        for (name, comps) in [("class 0", &self.comps0), ("class 1", &self.comps1)] {
            if comps.is_empty() {
                return Err(Error::Config(format!("mixture {name} needs >= 1 component")));
            }
            let total: f64 = comps.iter().map(|c| c.weight).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::Config(format!(
                    "mixture {name} weights must sum to 1, got {total}"
                )));
            }
            for c in comps {
                if !(c.weight > 0.0 && c.weight <= 1.0) {
                    return Err(Error::Config(format!(
                        "mixture {name} weights must lie in (0, 1], got {}",
                        c.weight
                    )));
                }
                if c.mean.len() != self.dim {
                    return Err(Error::Config(format!("mixture {name} mean length != dim")));
                }
            }
        }
        Ok(())
    }

    fn comps(&self, class: Hypothesis) -> &[MixtureComponent] {
        match class {
            Hypothesis::H0 => &self.comps0,
            Hypothesis::H1 => &self.comps1,
        }
    }
}

/// Finite-alphabet scenario: Gaussian draw, b-bit uniform quantization with
/// saturation, then a fixed per-entry permutation of the level values.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteScenarioConfig {
    pub dim: usize,
    pub mean0: Vec<f64>,
    pub mean1: Vec<f64>,
    pub bits: u32,
    pub range_lo: f64,
    pub range_hi: f64,
    /// Seed the per-entry level permutations are drawn from. The same map is
    /// applied at generation and at density lookup.
    pub perm_seed: u64,
}

impl FiniteScenarioConfig {
    /// Quantized AWGN scenario: M = 2, class means -1 and 3, 4-bit uniform
    /// quantizer saturating on [-4, 8] per axis.
    pub fn paper_default(perm_seed: u64) -> Self {
        FiniteScenarioConfig {
            dim: 2,
            mean0: vec![-1.0; 2],
            mean1: vec![3.0; 2],
            bits: 4,
            range_lo: -4.0,
            range_hi: 8.0,
            perm_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("finite scenario needs dim >= 1".into()));
        }
        if self.mean0.len() != self.dim || self.mean1.len() != self.dim {
            return Err(Error::Config("finite scenario means must have length dim".into()));
        }
        if self.bits == 0 || self.bits > 16 {
            return Err(Error::Config("finite scenario needs 1 <= bits <= 16".into()));
        }
        if !(self.range_lo.is_finite() && self.range_hi.is_finite() && self.range_lo < self.range_hi) {
            return Err(Error::Config("finite scenario quantizer range must satisfy lo < hi".into()));
        }
        Ok(())
    }

    pub fn levels(&self) -> usize {
        1usize << self.bits
    }
}

/// A finite scenario with its level permutations materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteScenario {
    cfg: FiniteScenarioConfig,
    /// Per entry: original level index -> displayed level index.
    perms: Vec<Vec<usize>>,
    /// Per entry: displayed level index -> original level index.
    inv_perms: Vec<Vec<usize>>,
}

impl FiniteScenario {
    /// Draw the per-entry permutations from `cfg.perm_seed`.
    pub fn new(cfg: FiniteScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let levels = cfg.levels();
        let tree = SeedTree::new(cfg.perm_seed);
        let perms: Vec<Vec<usize>> = (0..cfg.dim)
            .map(|j| {
                let mut rng = tree.child_idx("finite-perm", j as u64).rng();
                let mut p: Vec<usize> = (0..levels).collect();
                // Fisher-Yates
                for i in (1..levels).rev() {
                    let k = rng.random_range(0..=i);
                    p.swap(i, k);
                }
                p
            })
            .collect();
        Self::with_permutations(cfg, perms)
    }

    /// Use explicit permutations, e.g. read back from a serialized scenario.
    pub fn with_permutations(cfg: FiniteScenarioConfig, perms: Vec<Vec<usize>>) -> Result<Self> {
        cfg.validate()?;
        let levels = cfg.levels();
        if perms.len() != cfg.dim {
            return Err(Error::Config("need one level permutation per entry".into()));
        }
        let mut inv_perms = Vec::with_capacity(perms.len());
        for p in &perms {
            if p.len() != levels {
                return Err(Error::Config("permutation length must equal level count".into()));
            }
            let mut inv = vec![usize::MAX; levels];
            for (orig, &disp) in p.iter().enumerate() {
                if disp >= levels || inv[disp] != usize::MAX {
                    return Err(Error::Config("level permutation must be a bijection".into()));
                }
                inv[disp] = orig;
            }
            inv_perms.push(inv);
        }
        Ok(FiniteScenario { cfg, perms, inv_perms })
    }

    pub fn config(&self) -> &FiniteScenarioConfig {
        &self.cfg
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    fn step(&self) -> f64 {
        (self.cfg.range_hi - self.cfg.range_lo) / self.cfg.levels() as f64
    }

    /// Reconstruction value of a level index (cell midpoint).
    pub fn level_value(&self, level: usize) -> f64 {
        self.cfg.range_lo + self.step() * (level as f64 + 0.5)
    }

    /// All level values, in level-index order.
    pub fn level_values(&self) -> Vec<f64> {
        (0..self.cfg.levels()).map(|k| self.level_value(k)).collect()
    }

    /// Every joint CF vector the scenario can emit (`levels^dim` of them).
    pub fn alphabet(&self) -> Vec<Vec<f64>> {
        let levels = self.cfg.levels();
        let mut out: Vec<Vec<f64>> = vec![vec![]];
        for _ in 0..self.cfg.dim {
            let mut next = Vec::with_capacity(out.len() * levels);
            for prefix in &out {
                for k in 0..levels {
                    let mut v = prefix.clone();
                    v.push(self.level_value(k));
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    fn quantize(&self, v: f64) -> usize {
        let levels = self.cfg.levels();
        let k = ((v - self.cfg.range_lo) / self.step()).floor();
        if k < 0.0 {
            0
        } else if k as usize >= levels {
            levels - 1
        } else {
            k as usize
        }
    }

    /// Exact level index of a value that must be one of the level values.
    fn level_index(&self, v: f64) -> Result<usize> {
        let k = ((v - self.cfg.range_lo) / self.step() - 0.5).round();
        if k >= 0.0 && (k as usize) < self.cfg.levels() && self.level_value(k as usize) == v {
            Ok(k as usize)
        } else {
            Err(Error::Domain(format!("{v} is not a quantizer level value")))
        }
    }

    /// Pmf over original (pre-permutation) levels for one entry: Gaussian CDF
    /// differences over the cells, with the edge cells absorbing the
    /// saturated tails.
    fn entry_pmf(&self, mean: f64) -> Vec<f64> {
        let levels = self.cfg.levels();
        let step = self.step();
        (0..levels)
            .map(|k| {
                let lower = self.cfg.range_lo + step * k as f64;
                let upper = lower + step;
                let hi = if k + 1 == levels { 1.0 } else { normal_cdf(upper - mean) };
                let lo = if k == 0 { 0.0 } else { normal_cdf(lower - mean) };
                hi - lo
            })
            .collect()
    }

    fn mean(&self, class: Hypothesis) -> &[f64] {
        match class {
            Hypothesis::H0 => &self.cfg.mean0,
            Hypothesis::H1 => &self.cfg.mean1,
        }
    }

    /// Pmf over the displayed alphabet of one entry, indexed by displayed
    /// level.
    pub fn displayed_entry_pmf(&self, class: Hypothesis, entry: usize) -> Vec<f64> {
        let orig = self.entry_pmf(self.mean(class)[entry]);
        self.inv_perms[entry].iter().map(|&o| orig[o]).collect()
    }

    fn log_pmf(&self, class: Hypothesis, x: &[f64]) -> Result<f64> {
        if x.len() != self.cfg.dim {
            return Err(Error::Domain("wrong input dimension".into()));
        }
        let mut acc = 0.0;
        for (j, &v) in x.iter().enumerate() {
            let displayed = self.level_index(v)?;
            let orig = self.inv_perms[j][displayed];
            let pmf = self.entry_pmf(self.mean(class)[j]);
            acc += pmf[orig].ln();
        }
        Ok(acc)
    }

    fn sample_into(&self, class: Hypothesis, n: usize, seed: u64, out: &mut Vec<Sample>) {
        let mean = self.mean(class);
        let mut rng = SeedTree::new(seed).rng();
        for _ in 0..n {
            let x: Vec<f64> = mean
                .iter()
                .enumerate()
                .map(|(j, &m)| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    let k = self.quantize(m + z);
                    self.level_value(self.perms[j][k])
                })
                .collect();
            out.push(Sample { x, label: class, provenance: Provenance::Measured });
        }
    }
}

/// One of the three synthetic scenarios.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Gaussian(GaussianScenarioConfig),
    Mixture(MixtureScenarioConfig),
    Finite(FiniteScenario),
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        match self {
            Scenario::Gaussian(c) => c.validate(),
            Scenario::Mixture(c) => c.validate(),
            Scenario::Finite(s) => s.cfg.validate(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Scenario::Gaussian(c) => c.dim,
            Scenario::Mixture(c) => c.dim,
            Scenario::Finite(s) => s.cfg.dim,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Gaussian(_) => "gaussian",
            Scenario::Mixture(_) => "mixture",
            Scenario::Finite(_) => "finite",
        }
    }

    /// The CF-vector domain: the clip box for the continuous scenarios, the
    /// quantizer saturation box for the finite one.
    pub fn domain(&self) -> BoxDomain {
        match self {
            Scenario::Gaussian(c) => BoxDomain::symmetric(c.dim, c.clip).expect("validated"),
            Scenario::Mixture(c) => BoxDomain::symmetric(c.dim, c.clip).expect("validated"),
            Scenario::Finite(s) => BoxDomain::new(
                vec![s.cfg.range_lo; s.cfg.dim],
                vec![s.cfg.range_hi; s.cfg.dim],
            )
            .expect("validated"),
        }
    }

    /// Draw `n` i.i.d. CF vectors of the given class.
    pub fn sample(&self, class: Hypothesis, n: usize, seed: u64) -> Result<LabeledDataset> {
        self.validate()?;
        if n == 0 {
            return Err(Error::Config("sample count must be >= 1".into()));
        }
        let mut samples = Vec::with_capacity(n);
        match self {
            Scenario::Gaussian(c) => {
                let mean = c.mean(class);
                let mut rng = SeedTree::new(seed).rng();
                for _ in 0..n {
                    let x: Vec<f64> = mean
                        .iter()
                        .map(|&m| {
                            let z: f64 = StandardNormal.sample(&mut rng);
                            (m + z).clamp(-c.clip, c.clip)
                        })
                        .collect();
                    samples.push(Sample { x, label: class, provenance: Provenance::Measured });
                }
            }
            Scenario::Mixture(c) => {
                let comps = c.comps(class);
                let mut rng = SeedTree::new(seed).rng();
                for _ in 0..n {
                    let u: f64 = rng.random();
                    let mut acc = 0.0;
                    let mut chosen = comps.len() - 1;
                    for (i, comp) in comps.iter().enumerate() {
                        acc += comp.weight;
                        if u < acc {
                            chosen = i;
                            break;
                        }
                    }
                    let x: Vec<f64> = comps[chosen]
                        .mean
                        .iter()
                        .map(|&m| {
                            let z: f64 = StandardNormal.sample(&mut rng);
                            (m + z).clamp(-c.clip, c.clip)
                        })
                        .collect();
                    samples.push(Sample { x, label: class, provenance: Provenance::Measured });
                }
            }
            Scenario::Finite(s) => s.sample_into(class, n, seed, &mut samples),
        }
        let domain = self.domain();
        for s in &samples {
            assert!(domain.contains(&s.x), "emitted vector escaped the domain box");
        }
        LabeledDataset::new(samples)
    }

    /// Exact log density (continuous part plus boundary atoms) or log pmf of
    /// the given class at `x`. Rejects points outside the scenario domain.
    pub fn log_density(&self, class: Hypothesis, x: &[f64]) -> Result<f64> {
        match self {
            Scenario::Gaussian(c) => {
                if x.len() != c.dim {
                    return Err(Error::Domain("wrong input dimension".into()));
                }
                let mean = c.mean(class);
                let mut acc = 0.0;
                for (&v, &m) in x.iter().zip(mean) {
                    acc += clipped_normal_log_factor(v, m, c.clip)?;
                }
                Ok(acc)
            }
            Scenario::Mixture(c) => {
                if x.len() != c.dim {
                    return Err(Error::Domain("wrong input dimension".into()));
                }
                let comps = c.comps(class);
                let mut terms = Vec::with_capacity(comps.len());
                for comp in comps {
                    let mut acc = comp.weight.ln();
                    for (&v, &m) in x.iter().zip(&comp.mean) {
                        acc += clipped_normal_log_factor(v, m, c.clip)?;
                    }
                    terms.push(acc);
                }
                Ok(logsumexp(&terms))
            }
            Scenario::Finite(s) => s.log_pmf(class, x),
        }
    }
}

/// Per-entry log factor of the clipped unit-variance Gaussian: the pdf
/// strictly inside the clip range, the tail mass exactly on the edge.
fn clipped_normal_log_factor(v: f64, mean: f64, clip: f64) -> Result<f64> {
    if v == clip {
        Ok(normal_sf(clip - mean).ln())
    } else if v == -clip {
        Ok(normal_cdf(-clip - mean).ln())
    } else if v > -clip && v < clip {
        Ok(normal_logpdf(v - mean))
    } else {
        Err(Error::Domain(format!("{v} lies outside the clip range [-{clip}, {clip}]")))
    }
}

/// Uniform artificial negative class over the domain box: label 1,
/// provenance artificial.
pub fn sample_artificial_uniform(domain: &BoxDomain, n: usize, seed: u64) -> Result<LabeledDataset> {
    if n == 0 {
        return Err(Error::Config("sample count must be >= 1".into()));
    }
    let mut rng = SeedTree::new(seed).rng();
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<f64> = domain
            .lo()
            .iter()
            .zip(domain.hi())
            .map(|(&l, &h)| {
                let u: f64 = rng.random();
                l + u * (h - l)
            })
            .collect();
        assert!(domain.contains(&x), "emitted vector escaped the domain box");
        samples.push(Sample { x, label: Hypothesis::H1, provenance: Provenance::Artificial });
    }
    LabeledDataset::new(samples)
}

/// Spec-level convenience wrappers over [`Scenario::sample`].
pub fn sample_gaussian(
    cfg: &GaussianScenarioConfig,
    class: Hypothesis,
    n: usize,
    seed: u64,
) -> Result<LabeledDataset> {
    Scenario::Gaussian(cfg.clone()).sample(class, n, seed)
}

pub fn sample_mixture(
    cfg: &MixtureScenarioConfig,
    class: Hypothesis,
    n: usize,
    seed: u64,
) -> Result<LabeledDataset> {
    Scenario::Mixture(cfg.clone()).sample(class, n, seed)
}

pub fn sample_finite(
    scenario: &FiniteScenario,
    class: Hypothesis,
    n: usize,
    seed: u64,
) -> Result<LabeledDataset> {
    Scenario::Finite(scenario.clone()).sample(class, n, seed)
}

pub fn log_density(scenario: &Scenario, class: Hypothesis, x: &[f64]) -> Result<f64> {
    scenario.log_density(class, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::normal_sf;

    fn gaussian_paper() -> Scenario {
        Scenario::Gaussian(GaussianScenarioConfig::paper_default())
    }

    fn mixture_paper() -> Scenario {
        Scenario::Mixture(MixtureScenarioConfig::paper_default())
    }

    fn finite_paper(seed: u64) -> FiniteScenario {
        FiniteScenario::new(FiniteScenarioConfig::paper_default(seed)).unwrap()
    }

    fn entry_stats(ds: &LabeledDataset, j: usize) -> (f64, f64) {
        let n = ds.len() as f64;
        let mean = ds.samples().iter().map(|s| s.x[j]).sum::<f64>() / n;
        let var = ds.samples().iter().map(|s| (s.x[j] - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var.sqrt())
    }

    #[test]
    fn gaussian_sampling_moments() {
        let n = 200_000;
        let d0 = gaussian_paper().sample(Hypothesis::H0, n, 11).unwrap();
        let (m, s) = entry_stats(&d0, 0);
        // 3 sigma band on the sample mean of a unit-variance entry
        let band = 3.0 / (n as f64).sqrt();
        assert!(m.abs() < band, "mean {m} outside +-{band}");
        assert!((s - 1.0).abs() < 0.01, "std {s}");

        let d1 = gaussian_paper().sample(Hypothesis::H1, n, 12).unwrap();
        let (m1, _) = entry_stats(&d1, 1);
        assert!((m1 - 3.0).abs() < band);
    }

    #[test]
    fn clipping_forces_the_box() {
        let cfg = GaussianScenarioConfig {
            dim: 2,
            mean0: vec![0.0; 2],
            mean1: vec![3.0; 2],
            clip: 0.5,
        };
        for class in [Hypothesis::H0, Hypothesis::H1] {
            let ds = sample_gaussian(&cfg, class, 2000, 5).unwrap();
            assert!(ds.samples().iter().all(|s| s.x.iter().all(|v| (-0.5..=0.5).contains(v))));
            // Saturation produces exact edge values.
            assert!(ds.samples().iter().any(|s| s.x.iter().any(|v| *v == 0.5 || *v == -0.5)));
        }
    }

    #[test]
    fn gaussian_tail_fraction_matches_erfc_oracle() {
        let cfg = GaussianScenarioConfig {
            dim: 1,
            mean0: vec![0.0],
            mean1: vec![0.0],
            clip: 15.0,
        };
        let n = 1_000_000;
        let ds = sample_gaussian(&cfg, Hypothesis::H0, n, 99).unwrap();
        let frac = ds.samples().iter().filter(|s| s.x[0].abs() > 3.0).count() as f64 / n as f64;
        let p = 2.0 * normal_sf(3.0); // error-function oracle
        let band = 3.0 * (p * (1.0 - p) / n as f64).sqrt();
        assert!((frac - p).abs() < band, "frac {frac} vs oracle {p} (band {band})");
    }

    #[test]
    fn mixture_sampling_means() {
        let n = 200_000;
        let d0 = mixture_paper().sample(Hypothesis::H0, n, 1).unwrap();
        let (m, _) = entry_stats(&d0, 0);
        // E[x] = 0.2*(-1.5) + 0.4*(-0.5) + 0.4*3 = 0.9; mixture variance ~ 4.34
        let band = 3.0 * (4.34f64 / n as f64).sqrt();
        assert!((m - 0.9).abs() < band, "mean {m}");

        let d1 = mixture_paper().sample(Hypothesis::H1, n, 2).unwrap();
        let (m1, _) = entry_stats(&d1, 0);
        // E[x] = 0.5*6 + 0.5*9 = 7.5; variance 1 + 2.25
        let band1 = 3.0 * (3.25f64 / n as f64).sqrt();
        assert!((m1 - 7.5).abs() < band1, "mean {m1}");
    }

    #[test]
    fn degenerate_mixture_has_gaussian_density() {
        let mix = MixtureScenarioConfig {
            dim: 3,
            comps0: vec![MixtureComponent { weight: 1.0, mean: vec![0.7; 3] }],
            comps1: vec![MixtureComponent { weight: 1.0, mean: vec![2.0; 3] }],
            clip: 6.0,
        };
        let gauss = GaussianScenarioConfig {
            dim: 3,
            mean0: vec![0.7; 3],
            mean1: vec![2.0; 3],
            clip: 6.0,
        };
        let sm = Scenario::Mixture(mix);
        let sg = Scenario::Gaussian(gauss);
        for v in [-6.0, -1.3, 0.0, 0.7, 3.9, 6.0] {
            let x = vec![v; 3];
            for class in [Hypothesis::H0, Hypothesis::H1] {
                let a = sm.log_density(class, &x).unwrap();
                let b = sg.log_density(class, &x).unwrap();
                assert!((a - b).abs() < 1e-12, "{a} vs {b} at {v}");
            }
        }
        // Sampling moments agree too.
        let dm = sm.sample(Hypothesis::H0, 100_000, 3).unwrap();
        let (mm, sm_) = entry_stats(&dm, 0);
        assert!((mm - 0.7).abs() < 0.02 && (sm_ - 1.0).abs() < 0.02);
    }

    #[test]
    fn finite_outputs_are_level_values() {
        let scn = finite_paper(7);
        let values = scn.level_values();
        assert_eq!(values.len(), 16);
        let ds = sample_finite(&scn, Hypothesis::H0, 5000, 1).unwrap();
        for s in ds.samples() {
            for v in &s.x {
                assert!(values.iter().any(|lv| lv == v), "{v} not a level value");
            }
        }
    }

    /// Independent pmf oracle: quantized-Gaussian cell masses from CDF
    /// differences, with saturating edge cells.
    fn pmf_oracle(mean: f64, lo: f64, hi: f64, levels: usize) -> Vec<f64> {
        let step = (hi - lo) / levels as f64;
        (0..levels)
            .map(|k| {
                let a = lo + step * k as f64;
                let b = a + step;
                let upper = if k + 1 == levels { 1.0 } else { crate::math::normal_cdf(b - mean) };
                let lower = if k == 0 { 0.0 } else { crate::math::normal_cdf(a - mean) };
                upper - lower
            })
            .collect()
    }

    #[test]
    fn finite_histogram_matches_pmf_oracle() {
        // Identity permutation so displayed levels equal original levels.
        let cfg = FiniteScenarioConfig::paper_default(0);
        let perms = vec![(0..16).collect::<Vec<usize>>(), (0..16).collect()];
        let scn = FiniteScenario::with_permutations(cfg, perms).unwrap();

        let n = 100_000;
        let ds = sample_finite(&scn, Hypothesis::H0, n, 21).unwrap();
        let mut hist = vec![0usize; 16];
        for s in ds.samples() {
            let k = scn.level_index(s.x[0]).unwrap();
            hist[k] += 1;
        }
        let emp: Vec<f64> = hist.iter().map(|&c| c as f64 / n as f64).collect();
        let oracle = pmf_oracle(-1.0, -4.0, 8.0, 16);
        let tv = 0.5 * emp.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).sum::<f64>();
        assert!(tv < 0.01, "total variation {tv}");

        // gamma0 = -1 sits on a cell edge, so the two adjacent cells tie for
        // the mode; the empirical mode must be one of the oracle argmaxes.
        let max = oracle.iter().cloned().fold(f64::MIN, f64::max);
        let modes: Vec<usize> =
            (0..16).filter(|&k| (oracle[k] - max).abs() < 1e-12 * max).collect();
        let emp_mode = (0..16).max_by(|&a, &b| emp[a].total_cmp(&emp[b])).unwrap();
        assert!(modes.contains(&emp_mode), "mode {emp_mode} not in {modes:?}");
    }

    #[test]
    fn finite_class_pmfs_differ() {
        let scn = finite_paper(3);
        // Same permutation for both classes, so TV over displayed levels
        // equals TV over original levels.
        let p0 = scn.displayed_entry_pmf(Hypothesis::H0, 0);
        let p1 = scn.displayed_entry_pmf(Hypothesis::H1, 0);
        let tv = 0.5 * p0.iter().zip(&p1).map(|(a, b)| (a - b).abs()).sum::<f64>();
        assert!(tv > 0.5, "total variation {tv}");
    }

    #[test]
    fn uniform_histogram_is_flat() {
        let domain = BoxDomain::symmetric(4, 15.0).unwrap();
        let n = 100_000;
        let ds = sample_artificial_uniform(&domain, n, 8).unwrap();
        assert!(ds.samples().iter().all(|s| s.label == Hypothesis::H1));
        assert!(ds.samples().iter().all(|s| s.provenance == Provenance::Artificial));

        let bins = 30;
        let mut hist = vec![0usize; bins];
        for s in ds.samples() {
            let k = (((s.x[0] + 15.0) / 30.0) * bins as f64) as usize;
            hist[k.min(bins - 1)] += 1;
        }
        let expected = n as f64 / bins as f64;
        let chi2: f64 = hist.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 0.99 quantile of chi-square with 29 degrees of freedom
        assert!(chi2 < 49.588, "chi2 {chi2}");
    }

    #[test]
    fn uniform_single_draw_and_entry_means() {
        let domain = BoxDomain::new(vec![-2.0, 0.0], vec![4.0, 1.0]).unwrap();
        let one = sample_artificial_uniform(&domain, 1, 0).unwrap();
        assert!(domain.contains(&one.samples()[0].x));

        let n = 1_000_000;
        let ds = sample_artificial_uniform(&domain, n, 1).unwrap();
        for j in 0..2 {
            let width = domain.hi()[j] - domain.lo()[j];
            let mid = 0.5 * (domain.hi()[j] + domain.lo()[j]);
            let mean = ds.samples().iter().map(|s| s.x[j]).sum::<f64>() / n as f64;
            let band = 3.0 * width / (12.0f64 * n as f64).sqrt();
            assert!((mean - mid).abs() < band, "entry {j}: {mean} vs {mid}");
        }
    }

    #[test]
    fn gaussian_log_density_reference() {
        let cfg = GaussianScenarioConfig {
            dim: 1,
            mean0: vec![0.0],
            mean1: vec![3.0],
            clip: 15.0,
        };
        let scn = Scenario::Gaussian(cfg);
        let v = scn.log_density(Hypothesis::H0, &[0.0]).unwrap();
        assert!((v - (-0.9189385332046727)).abs() < 1e-12);

        // M = 4 product of standard normals at the origin
        let scn4 = gaussian_paper();
        let v4 = scn4.log_density(Hypothesis::H0, &[0.0; 4]).unwrap();
        assert!((v4 - 4.0 * (-0.9189385332046727)).abs() < 1e-12);
    }

    #[test]
    fn mixture_log_density_is_logsumexp_of_components() {
        let scn = mixture_paper();
        let x = [0.3, -1.2, 2.0, 0.0];
        let got = scn.log_density(Hypothesis::H0, &x).unwrap();
        // direct recomputation
        let comps = [(0.2, -1.5), (0.4, -0.5), (0.4, 3.0)];
        let direct: f64 = comps
            .iter()
            .map(|&(q, m)| {
                q * x
                    .iter()
                    .map(|&v| (-0.5 * (v - m) * (v - m)).exp() / (2.0 * std::f64::consts::PI).sqrt())
                    .product::<f64>()
            })
            .sum::<f64>()
            .ln();
        assert!((got - direct).abs() < 1e-12);
    }

    /// Simpson weights for a closed grid of n+1 points (n even).
    fn simpson_weights(n: usize) -> Vec<f64> {
        (0..=n)
            .map(|i| {
                if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                }
            })
            .collect()
    }

    /// Full joint quadrature over a 2-D mixed density: Simpson over the open
    /// interior, line integrals along the four clipped edges (edge atom times
    /// interior density), and the four corner atoms.
    fn joint_total_mass_2d(scn: &Scenario, class: Hypothesis, clip: f64) -> f64 {
        let n = 1200;
        let h = 2.0 * clip / n as f64;
        let w = simpson_weights(n);
        let grid: Vec<f64> = (0..=n)
            .map(|i| {
                // keep quadrature nodes strictly interior at the ends
                let v = -clip + h * i as f64;
                v.clamp(-clip + 1e-9, clip - 1e-9)
            })
            .collect();

        let mut interior = 0.0;
        for (i, &xi) in grid.iter().enumerate() {
            let mut row = 0.0;
            for (j, &xj) in grid.iter().enumerate() {
                row += w[j] * scn.log_density(class, &[xi, xj]).unwrap().exp();
            }
            interior += w[i] * row * h / 3.0;
        }
        interior *= h / 3.0;

        let mut edges = 0.0;
        for edge in [-clip, clip] {
            for flip in [false, true] {
                let mut line = 0.0;
                for (j, &v) in grid.iter().enumerate() {
                    let x = if flip { [v, edge] } else { [edge, v] };
                    line += w[j] * scn.log_density(class, &x).unwrap().exp();
                }
                edges += line * h / 3.0;
            }
        }

        let mut corners = 0.0;
        for a in [-clip, clip] {
            for b in [-clip, clip] {
                corners += scn.log_density(class, &[a, b]).unwrap().exp();
            }
        }
        interior + edges + corners
    }

    #[test]
    fn continuous_densities_normalize() {
        // Small clip so the boundary atoms carry visible mass.
        let gauss = Scenario::Gaussian(GaussianScenarioConfig {
            dim: 2,
            mean0: vec![0.5; 2],
            mean1: vec![1.5; 2],
            clip: 2.0,
        });
        let mix = Scenario::Mixture(MixtureScenarioConfig {
            dim: 2,
            comps0: vec![
                MixtureComponent { weight: 0.3, mean: vec![-1.0; 2] },
                MixtureComponent { weight: 0.7, mean: vec![1.2; 2] },
            ],
            comps1: vec![MixtureComponent { weight: 1.0, mean: vec![2.5; 2] }],
            clip: 3.0,
        });
        for (scn, clip) in [(&gauss, 2.0), (&mix, 3.0)] {
            for class in [Hypothesis::H0, Hypothesis::H1] {
                let total = joint_total_mass_2d(scn, class, clip);
                assert!((total - 1.0).abs() < 1e-6, "{} {class}: {total}", scn.kind());
            }
        }
    }

    #[test]
    fn finite_pmf_normalizes_exactly() {
        let scn = finite_paper(13);
        let full = Scenario::Finite(scn.clone());
        for class in [Hypothesis::H0, Hypothesis::H1] {
            let total: f64 = scn
                .alphabet()
                .iter()
                .map(|x| full.log_density(class, x).unwrap().exp())
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "{class}: {total}");
        }
    }

    #[test]
    fn permuting_levels_preserves_pmf_multiset() {
        let a = finite_paper(1);
        let b = finite_paper(2);
        assert_ne!(a.permutations(), b.permutations());
        for entry in 0..2 {
            let mut pa = a.displayed_entry_pmf(Hypothesis::H0, entry);
            let mut pb = b.displayed_entry_pmf(Hypothesis::H0, entry);
            pa.sort_by(f64::total_cmp);
            pb.sort_by(f64::total_cmp);
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        for scn in [gaussian_paper(), mixture_paper(), Scenario::Finite(finite_paper(4))] {
            let a = scn.sample(Hypothesis::H0, 500, 77).unwrap();
            let b = scn.sample(Hypothesis::H0, 500, 77).unwrap();
            assert_eq!(a, b);
            let c = scn.sample(Hypothesis::H0, 500, 78).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let ds = gaussian_paper().sample(Hypothesis::H0, 200, 5).unwrap();
        let art = sample_artificial_uniform(&gaussian_paper().domain(), 100, 6).unwrap();
        let ds = ds.concat(art).unwrap();
        let mut buf = Vec::new();
        ds.write_csv(&mut buf).unwrap();
        let back = LabeledDataset::read_csv(std::io::BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(ds, back);
    }

    #[test]
    fn log_density_rejects_out_of_domain() {
        let scn = gaussian_paper();
        assert!(scn.log_density(Hypothesis::H0, &[16.0, 0.0, 0.0, 0.0]).is_err());
        assert!(scn.log_density(Hypothesis::H0, &[0.0; 3]).is_err());

        let fin = Scenario::Finite(finite_paper(0));
        // 0.0 is not a level value of the [-4, 8] 16-level grid
        assert!(fin.log_density(Hypothesis::H0, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn config_validation_rejects_bad_inputs() {
        assert!(BoxDomain::new(vec![1.0], vec![1.0]).is_err());
        assert!(BoxDomain::new(vec![2.0], vec![1.0]).is_err());

        let mut mix = MixtureScenarioConfig::paper_default();
        mix.comps0[0].weight = 0.5; // weights no longer sum to 1
        assert!(mix.validate().is_err());

        let mut fin = FiniteScenarioConfig::paper_default(0);
        fin.range_hi = fin.range_lo;
        assert!(fin.validate().is_err());

        // non-bijective permutation
        let cfg = FiniteScenarioConfig::paper_default(0);
        let bad = vec![vec![0; 16], (0..16).collect()];
        assert!(FiniteScenario::with_permutations(cfg, bad).is_err());
    }
}
