use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::grouprep::Side;

use super::KGroupReport;

/// Always `p/q`, also for integers.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub config: String,
    pub trace: String,
}

/// Serialized K-group report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub side: Side,
    pub group: String,
    pub n: u32,
    pub radius: usize,
    pub basis: Vec<String>,
    pub k1_rank: usize,
    pub torsion: Vec<String>,
    pub trace: Vec<TraceEntry>,
}

impl KGroupReport {
    pub fn to_document(&self) -> ReportDocument {
        let basis: Vec<String> = self.k0.basis.iter().map(|c| c.render(&self.labels)).collect();
        ReportDocument {
            side: self.k0.side,
            group: self.group.clone(),
            n: self.k0.n,
            radius: self.k0.radius,
            trace: basis
                .iter()
                .zip(&self.traces)
                .map(|(c, t)| TraceEntry { config: c.clone(), trace: fmt_rational(t) })
                .collect(),
            basis,
            k1_rank: self.k1.rank,
            torsion: self.k0.torsion.iter().map(|t| t.to_string()).collect(),
        }
    }
}

pub fn reports_to_json(docs: &[ReportDocument]) -> String {
    serde_json::to_string_pretty(docs).expect("reports serialize")
}

/// One row per basis element; torsion entries joined by `;`.
pub fn reports_to_csv(docs: &[ReportDocument]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["side", "group", "n", "radius", "basis", "k1_rank", "torsion", "trace"])
        .expect("in-memory write");
    for d in docs {
        for t in &d.trace {
            w.write_record([
                d.side.name(),
                &d.group,
                &d.n.to_string(),
                &d.radius.to_string(),
                &t.config,
                &d.k1_rank.to_string(),
                &d.torsion.join(";"),
                &t.trace,
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
