//! Capacity bounds and per-network reports.
//!
//! The upper bound is always the minimum of the source-terminal min-cuts.
//! Lower bounds dispatch on the number of sources and terminals; exactness
//! is declared only where a result in scope forces upper and lower together,
//! plus a structural-isomorphism override pinning the two catalog networks
//! whose capacity is known to be exactly 2/3.

use serde::Serialize;
use thiserror::Error;

use crate::catalog;
use crate::codec::Rate;
use crate::netgraph::{isomorphic, NetError, SumNetwork};

#[derive(Debug, Error)]
pub enum CapacityError {
    #[error("network is not well formed: {0}")]
    InvalidNetwork(String),
    #[error("inputs must be positive: {0}")]
    NonPositive(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

fn ensure_valid(net: &SumNetwork) -> Result<(), CapacityError> {
    let violations = net.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CapacityError::InvalidNetwork(
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ))
    }
}

/// The case a network falls into for the lower-bound dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    #[serde(rename = "one-source-or-terminal")]
    OneSourceOrTerminal,
    #[serde(rename = "min2")]
    MinTwo,
    #[serde(rename = "m=n=3")]
    ThreeByThree,
    #[serde(rename = "min3")]
    MinThree,
    #[serde(rename = "general")]
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    BoundsOnly,
}

/// Bounds for one network with provenance notes. `exact` is populated only
/// when a result in scope pins the capacity.
#[derive(Debug, Clone, Serialize)]
pub struct CapacityReport {
    pub network: String,
    pub m: usize,
    pub n: usize,
    pub min_cut_bound: u64,
    pub upper: Rate,
    pub lower: Rate,
    pub case: CaseTag,
    pub exactness: Exactness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Rate>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<String>,
}

/// Capacity is bounded by the minimum of all source-terminal min-cuts: fix
/// all sources but one to zero and the problem contains a multicast.
pub fn upper_bound(net: &SumNetwork) -> Result<Rate, CapacityError> {
    ensure_valid(net)?;
    Ok(Rate::new(net.min_cut_bound()? as u64, 1))
}

fn case_tag(m: usize, n: usize) -> CaseTag {
    match (m.min(n), m == 3 && n == 3) {
        (1, _) => CaseTag::OneSourceOrTerminal,
        (2, _) => CaseTag::MinTwo,
        (3, true) => CaseTag::ThreeByThree,
        (3, false) => CaseTag::MinThree,
        _ => CaseTag::General,
    }
}

/// Best lower bound implemented for the network's case, as an exact
/// rational, together with the case tag.
pub fn lower_bound(net: &SumNetwork) -> Result<(Rate, CaseTag), CapacityError> {
    ensure_valid(net)?;
    let m = net.source_count();
    let n = net.terminal_count();
    let eta = net.min_cut_bound()? as u64;
    let tag = case_tag(m, n);
    if eta == 0 {
        return Ok((Rate::new(0, 1), tag));
    }
    let rate = match tag {
        CaseTag::OneSourceOrTerminal => Rate::new(eta, 1),
        CaseTag::MinTwo => {
            // max(min(1, eta), eta / 2)
            let connect = Rate::new(1, 1).min(Rate::new(eta, 1));
            connect.max(Rate::new(eta, 2))
        }
        CaseTag::ThreeByThree => {
            if eta >= 2 {
                Rate::new(1, 1).max(Rate::new(2, 3))
            } else {
                Rate::new(2, 3)
            }
        }
        CaseTag::MinThree => Rate::new(2, 3),
        CaseTag::General => Rate::new(2, m.min(n) as u64),
    };
    Ok((rate, tag))
}

/// A terminal that reconstructs all `m` source blocks through a `c`-edge cut
/// forces |G|^(c*l) >= |G|^(m*k), i.e. rate at most c/m.
pub fn cut_counting_bound(cut_size: u64, sources: u64) -> Result<Rate, CapacityError> {
    if cut_size == 0 || sources == 0 {
        return Err(CapacityError::NonPositive(format!(
            "cut size {cut_size}, sources {sources}"
        )));
    }
    Ok(Rate::new(cut_size, sources))
}

/// Assembles the full report: bounds, case tag, exactness (including the
/// structural-isomorphism override for the two 2/3-capacity catalog
/// networks), provenance notes, and the three-by-three conjecture
/// annotation.
pub fn report(net: &SumNetwork) -> Result<CapacityReport, CapacityError> {
    ensure_valid(net)?;
    let m = net.source_count();
    let n = net.terminal_count();
    let eta = net.min_cut_bound()? as u64;
    let upper = Rate::new(eta, 1);
    let (lower, case) = lower_bound(net)?;
    let mut notes = vec![
        "upper bound: minimum of the source-terminal min-cuts".to_string(),
    ];
    match case {
        CaseTag::OneSourceOrTerminal => notes.push(
            "lower bound: single-source multicast, or the dual of the reverse network's \
             multicast when there is one terminal"
                .into(),
        ),
        CaseTag::MinTwo => notes.push(
            "lower bound: max of the rate-1 two-terminal connectivity construction and \
             half-min-cut time sharing"
                .into(),
        ),
        CaseTag::ThreeByThree if eta >= 2 => notes.push(
            "lower bound 1: three-by-three networks with two edge-disjoint paths per pair \
             are solvable; reported without constructing the code"
                .into(),
        ),
        CaseTag::ThreeByThree | CaseTag::MinThree => notes.push(
            "lower bound 2/3: three-slot two-terminal time sharing".into(),
        ),
        CaseTag::General => notes.push(format!(
            "lower bound 2/{}: pairing time sharing",
            m.min(n)
        )),
    }

    let mut exact: Option<Rate> = None;
    if eta == 0 {
        exact = Some(Rate::new(0, 1));
        notes.push("a source-terminal pair is disconnected; capacity is 0".into());
    } else if m.min(n) == 1 {
        exact = Some(Rate::new(eta, 1));
        notes.push("capacity equals the min-cut bound exactly in the one-source/one-terminal case".into());
    } else if m.min(n) == 2 && eta == 1 {
        exact = Some(Rate::new(1, 1));
        notes.push("min-cut 1 with two sources or two terminals: rate 1 is achievable, so the bound is tight".into());
    } else {
        for name in ["s3", "s3-prime"] {
            let reference = catalog::lookup(name).expect("catalog entry exists");
            if isomorphic(net, &reference) {
                exact = Some(Rate::new(2, 3));
                notes.push(format!(
                    "structurally isomorphic to catalog network `{name}`: capacity pinned to \
                     2/3 by the two-edge cut-counting converse and the three-slot schedule"
                ));
                break;
            }
        }
    }
    if exact.is_none() {
        notes.push(
            "bounds only: whether the min-cut bound can be approached in the limit for \
             gap instances remains open"
                .into(),
        );
    }
    let conjecture = (m == 3 && n == 3).then(|| {
        "conjectured, unproven: every sum-network with three sources and three terminals \
         has capacity 0, 2/3, or at least 1"
            .to_string()
    });
    Ok(CapacityReport {
        network: net.name.clone(),
        m,
        n,
        min_cut_bound: eta,
        upper,
        lower,
        case,
        exactness: if exact.is_some() { Exactness::Exact } else { Exactness::BoundsOnly },
        exact,
        notes,
        conjecture,
    })
}

impl CapacityReport {
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Aligned plain-text rendering of the report.
    pub fn render_text(&self) -> String {
        let case = match self.case {
            CaseTag::OneSourceOrTerminal => "one-source-or-terminal",
            CaseTag::MinTwo => "min2",
            CaseTag::ThreeByThree => "m=n=3",
            CaseTag::MinThree => "min3",
            CaseTag::General => "general",
        };
        let exactness = match self.exactness {
            Exactness::Exact => "exact",
            Exactness::BoundsOnly => "bounds-only",
        };
        let mut rows: Vec<(String, String)> = vec![
            ("network".into(), self.network.clone()),
            ("sources x terminals".into(), format!("{} x {}", self.m, self.n)),
            ("min-cut bound".into(), self.min_cut_bound.to_string()),
            ("upper bound".into(), self.upper.to_string()),
            ("lower bound".into(), self.lower.to_string()),
            ("case".into(), case.into()),
            ("exactness".into(), exactness.into()),
        ];
        if let Some(exact) = self.exact {
            rows.push(("capacity".into(), exact.to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        if let Some(c) = &self.conjecture {
            out.push_str(&format!("conjecture: {c}\n"));
        }
        out
    }
}
