//! Run configuration and serialization of operators.
//!
//! The exact format is JSON with rationals written as `"num/den"` strings,
//! entries sorted by `(col, row)`, and a top-level `"schema"` tag. The
//! Matrix Market export converts entries to `f64` and is lossy.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{format_rational, parse_rational, to_f64, HighestWeight, SparseOperator};
use crate::patterns::DEFAULT_GUARD;

pub const SCHEMA: &str = "sympgt/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    ExactJson,
    MatrixMarket,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "exact-json" => Ok(Self::ExactJson),
            "matrix-market" | "matrix-market-float" => Ok(Self::MatrixMarket),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub dimension_guard: usize,
    /// `None` uses all available cores.
    pub jobs: Option<usize>,
    pub output_format: OutputFormat,
    pub output_path: Option<std::path::PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dimension_guard: DEFAULT_GUARD,
            jobs: None,
            output_format: OutputFormat::ExactJson,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dimension_guard == 0 {
            return Err(Error::Domain("dimension guard must be at least 1".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Domain("job count must be at least 1".into()));
        }
        Ok(())
    }

    /// Runs `f` on a rayon pool with the configured number of workers.
    pub fn run<T, F>(&self, f: F) -> Result<T>
    where
        T: Send,
        F: FnOnce() -> Result<T> + Send,
    {
        self.validate()?;
        match self.jobs {
            None => f(),
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
                .install(f),
        }
    }
}

/// The exact-json document for one operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub schema: String,
    pub lambda: Vec<i64>,
    pub generator: String,
    pub dimension: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixDocument {
    pub fn new(lam: &HighestWeight, generator: &str, op: &SparseOperator) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            lambda: lam.entries().to_vec(),
            generator: generator.to_string(),
            dimension: op.dim(),
            entries: op
                .entries()
                .map(|(row, col, v)| (row, col, format_rational(v)))
                .collect(),
        }
    }

    pub fn to_operator(&self) -> Result<SparseOperator> {
        if self.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {:?}", self.schema)));
        }
        let triples = self
            .entries
            .iter()
            .map(|(row, col, text)| Ok((*row, *col, parse_rational(text)?)))
            .collect::<Result<Vec<_>>>()?;
        SparseOperator::from_triples(self.dimension, triples)
    }
}

/// Serializes an operator as exact JSON, terminated by a newline.
pub fn to_exact_json(lam: &HighestWeight, generator: &str, op: &SparseOperator) -> String {
    let mut out = serde_json::to_string(&MatrixDocument::new(lam, generator, op))
        .expect("document serializes");
    out.push('\n');
    out
}

pub fn from_exact_json(text: &str) -> Result<(MatrixDocument, SparseOperator)> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let op = doc.to_operator()?;
    Ok((doc, op))
}

/// Matrix Market coordinate format with 1-based indices and decimal
/// values. Lossy.
pub fn to_matrix_market(lam: &HighestWeight, generator: &str, op: &SparseOperator) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(out, "% {generator} on V{lam}; decimal values are lossy");
    let _ = writeln!(out, "{} {} {}", op.dim(), op.dim(), op.nnz());
    for (row, col, v) in op.entries() {
        let _ = writeln!(out, "{} {} {:e}", row + 1, col + 1, to_f64(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn exact_json_layout() {
        let lam = HighestWeight::new(vec![-1]).unwrap();
        let op = SparseOperator::from_triples(2, [(0, 1, int(4))]).unwrap();
        assert_eq!(
            to_exact_json(&lam, "F[-1,1]", &op),
            "{\"schema\":\"sympgt/1\",\"lambda\":[-1],\"generator\":\"F[-1,1]\",\
             \"dimension\":2,\"entries\":[[0,1,\"4/1\"]]}\n"
        );
    }

    #[test]
    fn wrong_schema_rejected() {
        let text = "{\"schema\":\"other/2\",\"lambda\":[0],\"generator\":\"F[1,1]\",\
                    \"dimension\":1,\"entries\":[]}";
        assert!(from_exact_json(text).is_err());
    }

    #[test]
    fn matrix_market_export() {
        let lam = HighestWeight::new(vec![-1]).unwrap();
        let op = SparseOperator::from_triples(2, [(1, 0, ratio(1, 2))]).unwrap();
        let text = to_matrix_market(&lam, "F[1,-1]", &op);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "%%MatrixMarket matrix coordinate real general");
        assert_eq!(lines[2], "2 2 1");
        assert_eq!(lines[3], "2 1 5e-1");
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig { dimension_guard: 0, ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { jobs: Some(0), ..RunConfig::default() };
        assert!(bad.run(|| Ok(())).is_err());
        let two = RunConfig { jobs: Some(2), ..RunConfig::default() };
        assert_eq!(two.run(|| Ok(rayon::current_num_threads())).unwrap(), 2);
    }

    proptest! {
        #[test]
        fn exact_json_round_trip(
            dim in 1usize..6,
            raw in proptest::collection::vec((0usize..6, 0usize..6, -50i64..50, 1i64..40), 0..20),
        ) {
            let lam = HighestWeight::new(vec![0, -1]).unwrap();
            let triples = raw
                .into_iter()
                .map(|(r, c, n, d)| (r % dim, c % dim, ratio(n, d)));
            let op = SparseOperator::from_triples(dim, triples).unwrap();
            let text = to_exact_json(&lam, "F[1,2]", &op);
            let (doc, back) = from_exact_json(&text).unwrap();
            prop_assert_eq!(back, op);
            prop_assert_eq!(doc.lambda, vec![0, -1]);
        }
    }
}
