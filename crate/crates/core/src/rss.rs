//! Ranked set sampling designs: the standard square scheme and the maxima
//! scheme, plus the product reconstruction that ties the maxima scheme to
//! order statistics of power bases.
//!
//! Protocol, per cycle and per row: draw the row's full set fresh, rank it,
//! record the selected rank, discard the rest. Every cell draws from its own
//! derived stream, so the matrix is reproducible cell-by-cell from
//! `(seed, stream, cycle, row)` and independent of evaluation order.

use crate::dist::ContinuousDist;
use crate::error::{Error, Result};
use crate::order_stats::beta_quantile;
use crate::rng::{derive_stream, next_open01, stream_rng, McConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RssKind {
    /// n rows of set size n; row i records rank i.
    Standard,
    /// Row i has set size i and records its maximum.
    Maxima,
    /// Rows of set size n with caller-chosen ranks.
    Custom,
}

/// A ranked-set sampling design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RssScheme {
    kind: RssKind,
    n: usize,
    selected_ranks: Vec<usize>,
    cycles: usize,
}

impl RssScheme {
    pub fn standard(n: usize, cycles: usize) -> Result<Self> {
        Self::validate_counts(n, cycles)?;
        Ok(RssScheme {
            kind: RssKind::Standard,
            n,
            selected_ranks: (1..=n).collect(),
            cycles,
        })
    }

    pub fn maxima(n: usize, cycles: usize) -> Result<Self> {
        Self::validate_counts(n, cycles)?;
        Ok(RssScheme {
            kind: RssKind::Maxima,
            n,
            selected_ranks: (1..=n).collect(),
            cycles,
        })
    }

    pub fn custom(n: usize, selected_ranks: Vec<usize>, cycles: usize) -> Result<Self> {
        Self::validate_counts(n, cycles)?;
        if selected_ranks.is_empty() {
            return Err(Error::domain("custom scheme needs at least one rank"));
        }
        for &r in &selected_ranks {
            if r < 1 || r > n {
                return Err(Error::domain(format!(
                    "custom rank {r} outside 1..={n}"
                )));
            }
        }
        Ok(RssScheme {
            kind: RssKind::Custom,
            n,
            selected_ranks,
            cycles,
        })
    }

    fn validate_counts(n: usize, cycles: usize) -> Result<()> {
        if n < 1 {
            return Err(Error::domain("set size must be at least 1"));
        }
        if cycles < 1 {
            return Err(Error::domain("cycle count must be at least 1"));
        }
        Ok(())
    }

    pub fn kind(&self) -> RssKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn rows(&self) -> usize {
        self.selected_ranks.len()
    }

    /// Selected rank r_i of row i (0-based row index).
    pub fn row_rank(&self, row: usize) -> usize {
        self.selected_ranks[row]
    }

    /// Set size of row i: i+1 under the maxima scheme, n otherwise.
    pub fn row_set_size(&self, row: usize) -> usize {
        match self.kind {
            RssKind::Maxima => row + 1,
            _ => self.n,
        }
    }

    /// CSV column labels `X[r,s]` (rank r out of set size s).
    pub fn column_labels(&self) -> Vec<String> {
        (0..self.rows())
            .map(|i| format!("X[{},{}]", self.row_rank(i), self.row_set_size(i)))
            .collect()
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RssKind::Standard => "standard",
            RssKind::Maxima => "maxima",
            RssKind::Custom => "custom",
        }
    }
}

/// How each cell's order statistic is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplePath {
    /// One uniform through the Beta(r, s-r+1) quantile; O(1) per cell.
    #[default]
    BetaTransform,
    /// Literal protocol: draw the full set, rank, select. Costs s draws per
    /// cell; same distribution as the transform path.
    DrawAndSort,
}

/// A generated scheme matrix, row-major over cycles.
#[derive(Debug, Clone)]
pub struct RssMatrix {
    scheme: RssScheme,
    values: Vec<f64>,
}

impl RssMatrix {
    pub fn scheme(&self) -> &RssScheme {
        &self.scheme
    }

    pub fn cycles(&self) -> usize {
        self.scheme.cycles()
    }

    pub fn rows(&self) -> usize {
        self.scheme.rows()
    }

    /// Entry for (cycle, row).
    pub fn get(&self, cycle: usize, row: usize) -> f64 {
        self.values[cycle * self.rows() + row]
    }

    /// All cycles of one row position.
    pub fn column(&self, row: usize) -> Vec<f64> {
        (0..self.cycles()).map(|c| self.get(c, row)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn draw_cell(
    base: &dyn ContinuousDist,
    rank: usize,
    set_size: usize,
    seed: u64,
    stream: u64,
    path: SamplePath,
) -> Result<f64> {
    let mut rng = stream_rng(seed, stream);
    match path {
        SamplePath::BetaTransform => {
            let u = next_open01(&mut rng);
            let b = beta_quantile(rank as f64, (set_size - rank + 1) as f64, u)?;
            base.quantile(b)
        }
        SamplePath::DrawAndSort => {
            let mut set = Vec::with_capacity(set_size);
            for _ in 0..set_size {
                set.push(base.quantile(next_open01(&mut rng))?);
            }
            set.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            Ok(set[rank - 1])
        }
    }
}

/// Generates the scheme matrix: entry (c, i) is one independent draw of the
/// r_i-th order statistic of a fresh size-s_i sample. All cells are mutually
/// independent and reproducible from `(seed, stream, c, i)`; `cfg.n` is not
/// used (the cycle count lives in the scheme).
pub fn generate_rss(
    scheme: &RssScheme,
    base: &dyn ContinuousDist,
    cfg: &McConfig,
    path: SamplePath,
) -> Result<RssMatrix> {
    let rows = scheme.rows();
    let mut values = Vec::with_capacity(scheme.cycles() * rows);
    for c in 0..scheme.cycles() {
        for i in 0..rows {
            let stream = derive_stream(cfg.stream, &[c as u64, i as u64]);
            values.push(draw_cell(
                base,
                scheme.row_rank(i),
                scheme.row_set_size(i),
                cfg.seed,
                stream,
                path,
            )?);
        }
    }
    Ok(RssMatrix {
        scheme: scheme.clone(),
        values,
    })
}

/// Per cycle, multiplies the maxima-scheme rows k..=n (drawn by the literal
/// protocol, so each cycle consumes exactly k + (k+1) + ... + n base draws).
/// When the base is a power function distribution the products are
/// distributed as X_{k:n}.
pub fn maxima_chain_reconstruct(
    base: &dyn ContinuousDist,
    k: usize,
    n: usize,
    cfg: &McConfig,
) -> Result<Vec<f64>> {
    if k < 1 || k > n {
        return Err(Error::domain(format!(
            "chain rows need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let s = base.support();
    if !s.is_unit() {
        return Err(Error::domain(format!(
            "{}: chain products need support extremities 0 and 1, got ({}, {})",
            base.label(),
            s.left,
            s.right
        )));
    }
    cfg.require_replicates(1)?;

    let mut out = Vec::with_capacity(cfg.n);
    for c in 0..cfg.n {
        let mut prod = 1.0;
        for set_size in k..=n {
            // Same stream tags as the maxima-scheme matrix rows, so the
            // products can be audited against a generated matrix.
            let stream = derive_stream(cfg.stream, &[c as u64, (set_size - 1) as u64]);
            prod *= draw_cell(
                base,
                set_size,
                set_size,
                cfg.seed,
                stream,
                SamplePath::DrawAndSort,
            )?;
        }
        out.push(prod);
    }
    Ok(out)
}
