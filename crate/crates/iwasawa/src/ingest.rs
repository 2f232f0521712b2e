//! Curve files and CSV reports.
//!
//! A curve file holds one curve per line:
//!
//! ```text
//! # a1 a2 a3 a4 a6 [label] [key=value ...]
//! 0 -1 1 0 0 11a3 cm=false rank=0
//! 0 0 0 -1 0 cm=true
//! ```
//!
//! Recognised keys are `cm` (bool), `rank`, `mu` and `lambda` (integers).
//! Everything after `#` is ignored.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use iwasawa_core::classify::ScanReport;
use iwasawa_core::densities::{format_sig6, DensityResult};
use iwasawa_core::{EllipticCurve, Error as CoreError};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: curve is singular")]
    SingularCurve { line: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRecord {
    pub ainvs: [i64; 5],
    pub label: Option<String>,
    pub cm: Option<bool>,
    pub rank: Option<u32>,
    pub mu: Option<u32>,
    pub lambda: Option<u32>,
}

impl CurveRecord {
    /// The validated curve, labelled when the record has a label.
    pub fn curve(&self) -> EllipticCurve {
        let [a1, a2, a3, a4, a6] = self.ainvs;
        let e = EllipticCurve::new(a1, a2, a3, a4, a6).expect("records are validated on parse");
        match &self.label {
            Some(l) => e.with_label(l.clone()),
            None => e,
        }
    }

    /// Label if present, else the coefficient list.
    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => format!("{}", self.curve()),
        }
    }

    /// Parses one line; `Ok(None)` for blank and comment lines.
    pub fn parse_line(text: &str, line: usize) -> Result<Option<Self>, IngestError> {
        let body = text.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            return Ok(None);
        }
        let err = |reason: String| IngestError::Parse { line, reason };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() < 5 {
            return Err(err(format!("expected 5 coefficients, found {}", tokens.len())));
        }
        let mut ainvs = [0i64; 5];
        for (slot, tok) in ainvs.iter_mut().zip(&tokens) {
            *slot = tok
                .parse()
                .map_err(|_| err(format!("coefficient {tok:?} is not an integer")))?;
        }
        let mut rec = CurveRecord {
            ainvs,
            label: None,
            cm: None,
            rank: None,
            mu: None,
            lambda: None,
        };
        for tok in &tokens[5..] {
            let Some((key, value)) = tok.split_once('=') else {
                if rec.label.is_some() {
                    return Err(err(format!("second label {tok:?}")));
                }
                rec.label = Some(tok.to_string());
                continue;
            };
            let int = || -> Result<Option<u32>, IngestError> {
                value
                    .parse()
                    .map(Some)
                    .map_err(|_| err(format!("{key}={value:?} is not a nonnegative integer")))
            };
            match key {
                "cm" => {
                    rec.cm = Some(
                        value
                            .parse()
                            .map_err(|_| err(format!("cm={value:?} is not true or false")))?,
                    )
                }
                "rank" => rec.rank = int()?,
                "mu" => rec.mu = int()?,
                "lambda" => rec.lambda = int()?,
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        match EllipticCurve::new(ainvs[0], ainvs[1], ainvs[2], ainvs[3], ainvs[4]) {
            Ok(_) => Ok(Some(rec)),
            Err(CoreError::SingularCurve) => Err(IngestError::SingularCurve { line }),
            Err(e) => Err(err(e.to_string())),
        }
    }
}

impl fmt::Display for CurveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.ainvs;
        write!(f, "{a1} {a2} {a3} {a4} {a6}")?;
        if let Some(l) = &self.label {
            write!(f, " {l}")?;
        }
        if let Some(cm) = self.cm {
            write!(f, " cm={cm}")?;
        }
        for (key, v) in [("rank", self.rank), ("mu", self.mu), ("lambda", self.lambda)] {
            if let Some(v) = v {
                write!(f, " {key}={v}")?;
            }
        }
        Ok(())
    }
}

pub fn parse_curves<R: BufRead>(reader: R) -> Result<Vec<CurveRecord>, IngestError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        if let Some(rec) = CurveRecord::parse_line(&line?, i + 1)? {
            out.push(rec);
        }
    }
    Ok(out)
}

pub fn parse_curve_str(text: &str) -> Result<Vec<CurveRecord>, IngestError> {
    parse_curves(text.as_bytes())
}

pub fn parse_curve_file(path: &Path) -> Result<Vec<CurveRecord>, IngestError> {
    parse_curves(BufReader::new(File::open(path)?))
}

/// One row of a criterion report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRow {
    pub curve: String,
    pub p: u64,
    /// Conductor of the extension.
    pub conductor: String,
    pub verdict: String,
    pub reasons: String,
}

/// `p,value,X`.
pub fn write_density_csv<W: Write>(out: W, rows: &[DensityResult]) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "value", "X"])?;
    for r in rows {
        w.write_record([r.p.to_string(), format_sig6(r.value), r.x.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `p,X,enemy_split,enemy_ord,friendly_ord,friendly_ss,neutral,pi_X`.
pub fn write_scan_csv<W: Write>(out: W, rows: &[ScanReport]) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "p",
        "X",
        "enemy_split",
        "enemy_ord",
        "friendly_ord",
        "friendly_ss",
        "neutral",
        "pi_X",
    ])?;
    for r in rows {
        w.write_record(
            [r.p, r.x, r.enemy_split, r.enemy_ord, r.friendly_ord, r.friendly_ss, r.neutral, r.pi_x]
                .map(|v| v.to_string()),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// `curve,p,conductor,verdict,reasons`.
pub fn write_verdict_csv<W: Write>(out: W, rows: &[VerdictRow]) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["curve", "p", "conductor", "verdict", "reasons"])?;
    for r in rows {
        w.write_record([&r.curve, &r.p.to_string(), &r.conductor, &r.verdict, &r.reasons])?;
    }
    w.flush()?;
    Ok(())
}
