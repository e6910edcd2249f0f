use crate::complex::Complex;
use crate::error::Result;

use super::predicates::{is_g_local, is_h_flasque};
use super::DescentData;

/// One checked item of a descent structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DescentReport {
    pub items: Vec<ItemReport>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ItemReport> {
        self.items.iter().filter(|i| !i.passed)
    }

    fn push(&mut self, name: String, passed: bool, detail: impl Into<String>) {
        self.items.push(ItemReport {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// Replays every certificate of `ℋ`, checks acyclicity, and spot-checks
/// "ℋ-flasque implies 𝒢-local" on the supplied probes.
pub fn verify_descent(dd: &DescentData, probes: &[Complex]) -> Result<DescentReport> {
    let mut report = DescentReport::default();
    let nonempty = !dd.generators().is_empty();
    report.push(
        "generators".into(),
        nonempty,
        if nonempty {
            format!("{} generator(s)", dd.generators().len())
        } else {
            "empty".to_string()
        },
    );
    if !nonempty {
        return Ok(report);
    }
    for (k, h) in dd.acyclics().iter().enumerate() {
        let bad = h.complex.degrees().find(|n| !h.complex.homology(*n).is_zero());
        match bad {
            None => report.push(format!("H[{k}] acyclic"), true, "zero homology"),
            Some(n) => report.push(
                format!("H[{k}] acyclic"),
                false,
                format!("H^{n} = {}", h.complex.homology(n)),
            ),
        }
        let cert = &h.certificate;
        let outcome = if !cert.base.is_zero() {
            Err("certificate base is not the zero complex".to_string())
        } else {
            cert.verify(&h.complex, dd.generators()).map_err(|e| e.to_string())
        };
        match outcome {
            Ok(()) => report.push(
                format!("H[{k}] certificate"),
                true,
                format!("{} cell(s) replayed", cert.number_of_cells()),
            ),
            Err(msg) => report.push(format!("H[{k}] certificate"), false, msg),
        }
    }
    for (k, c) in probes.iter().enumerate() {
        let flasque = is_h_flasque(c, dd, None)?;
        if !flasque {
            report.push(format!("probe[{k}]"), true, "not flasque; nothing to check");
            continue;
        }
        let local = is_g_local(c, dd, None)?;
        report.push(
            format!("probe[{k}]"),
            local,
            if local { "flasque and local" } else { "flasque but not local" },
        );
    }
    Ok(report)
}
