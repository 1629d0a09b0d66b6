use serde::{Deserialize, Serialize};

use crate::circuits::AnsatzKind;
use crate::error::{Error, Result};

use super::spectrum::{dof, num_coefficients};

/// One layer count of a degrees-of-freedom audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub layers: u64,
    pub degree: u64,
    pub params: u64,
    pub coefficients: u64,
    pub dof: u64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub kind: AnsatzKind,
    pub d: u64,
    pub features: u64,
    pub block: u64,
    pub rows: Vec<AuditRow>,
}

/// Outcome of a crossover query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "degree")]
pub enum Crossover {
    /// No layer count satisfies N_p ≥ ν.
    None,
    /// Largest satisfied degree; every deeper circuit fails.
    Degree(u64),
    /// Satisfied at every depth (the one-feature case).
    Unbounded,
}

/// Parameter count in closed form, saturating instead of overflowing. Agrees
/// with the built circuits wherever those can be constructed.
pub fn family_param_count(kind: AnsatzKind, d: u64, m: u64, p: u64, layers: u64) -> u64 {
    let single = d * d - 1;
    let register = |qudits: u64| {
        d.saturating_pow((2 * qudits).min(u32::MAX as u64) as u32)
            .saturating_sub(1)
    };
    match kind {
        AnsatzKind::Line => m.saturating_mul(layers).saturating_add(1).saturating_mul(single),
        AnsatzKind::Parallel => register(m).saturating_mul(layers + 1),
        AnsatzKind::Mixed => register(p)
            .saturating_mul(m.div_ceil(p).saturating_mul(layers).saturating_add(1)),
        AnsatzKind::CollapsedLine | AnsatzKind::Noncommuting => (layers + 1).saturating_mul(single),
        AnsatzKind::ProductParallel => (layers + 1).saturating_mul(m).saturating_mul(single),
    }
}

fn check_family(kind: AnsatzKind, d: u64, m: u64, p: u64) -> Result<()> {
    if d < 2 || m == 0 {
        return Err(Error::validation("audit needs d >= 2 and M >= 1"));
    }
    if kind == AnsatzKind::Mixed && (p == 0 || p > m) {
        return Err(Error::validation(format!("mixed ansatz needs 1 <= p <= M, got p = {p}")));
    }
    if kind == AnsatzKind::Noncommuting {
        return Err(Error::UnsupportedEncoding(
            "the degrees-of-freedom audit applies to commuting encodings".into(),
        ));
    }
    Ok(())
}

fn row(kind: AnsatzKind, d: u64, m: u64, p: u64, layers: u64) -> AuditRow {
    let degree = (d - 1) * layers;
    let m32 = m.min(u32::MAX as u64) as u32;
    let params = family_param_count(kind, d, m, p, layers);
    let nu = dof(degree, m32);
    AuditRow {
        layers,
        degree,
        params,
        coefficients: num_coefficients(degree, m32),
        dof: nu,
        satisfied: params >= nu,
    }
}

/// Rows for L = 1..=max_layers.
pub fn audit(kind: AnsatzKind, d: u64, m: u64, p: u64, max_layers: u64) -> Result<AuditReport> {
    check_family(kind, d, m, p)?;
    let p = if kind == AnsatzKind::Mixed { p } else { 1 };
    Ok(AuditReport {
        kind,
        d,
        features: m,
        block: p,
        rows: (1..=max_layers).map(|l| row(kind, d, m, p, l)).collect(),
    })
}

const MAX_SCAN_LAYERS: u64 = 4096;

/// Largest D = (d−1)L with N_p ≥ ν.
///
/// For M ≥ 2 the ratio ν/N_p grows with L for every family (ν is exponential in
/// L, N_p linear), so the scan stops at the first failing depth. With M = 1 the
/// condition (L+1)(d²−1) ≥ 2(d−1)L + 1 never fails.
pub fn crossover_degree(kind: AnsatzKind, d: u64, m: u64, p: u64) -> Result<Crossover> {
    check_family(kind, d, m, p)?;
    let p = if kind == AnsatzKind::Mixed { p } else { 1 };
    if m == 1 {
        return Ok(Crossover::Unbounded);
    }
    let mut best = None;
    for l in 1..=MAX_SCAN_LAYERS {
        let r = row(kind, d, m, p, l);
        if !r.satisfied {
            return Ok(best.map_or(Crossover::None, Crossover::Degree));
        }
        best = Some(r.degree);
    }
    Ok(Crossover::Unbounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{param_count, AnsatzSpec};

    #[test]
    fn closed_form_matches_built_circuits() {
        for kind in AnsatzKind::ALL {
            for d in 2..=3usize {
                for m in 1..=3usize {
                    for l in 1..=2usize {
                        let p = if kind == AnsatzKind::Mixed { m.min(2) } else { 1 };
                        let Ok(spec) = AnsatzSpec::new(kind, d, m, l, p) else { continue };
                        assert_eq!(
                            family_param_count(kind, d as u64, m as u64, p as u64, l as u64),
                            param_count(&spec) as u64,
                            "{kind} d={d} m={m} l={l}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn known_crossovers() {
        use AnsatzKind::*;
        assert_eq!(crossover_degree(Parallel, 2, 2, 1).unwrap(), Crossover::Degree(3));
        assert_eq!(crossover_degree(Parallel, 3, 2, 1).unwrap(), Crossover::Degree(10));
        assert_eq!(crossover_degree(Line, 2, 2, 1).unwrap(), Crossover::Degree(1));
        assert_eq!(crossover_degree(Parallel, 2, 4, 1).unwrap(), Crossover::Degree(2));
        assert_eq!(crossover_degree(Parallel, 3, 4, 1).unwrap(), Crossover::Degree(4));
        assert_eq!(crossover_degree(Line, 2, 4, 1).unwrap(), Crossover::None);
        assert_eq!(crossover_degree(Mixed, 2, 4, 2).unwrap(), Crossover::None);
        assert_eq!(crossover_degree(Line, 3, 1, 1).unwrap(), Crossover::Unbounded);
    }

    #[test]
    fn qutrit_line_falls_one_short() {
        let r = audit(AnsatzKind::Line, 3, 2, 1, 1).unwrap();
        assert_eq!((r.rows[0].params, r.rows[0].dof), (24, 25));
        assert!(!r.rows[0].satisfied);
        assert_eq!(crossover_degree(AnsatzKind::Line, 3, 2, 1).unwrap(), Crossover::None);
    }

    #[test]
    fn rows_are_consistent() {
        let r = audit(AnsatzKind::Parallel, 2, 2, 1, 6).unwrap();
        assert_eq!(r.rows.len(), 6);
        for row in &r.rows {
            assert_eq!(row.degree, row.layers);
            assert_eq!(row.satisfied, row.params >= row.dof);
            assert_eq!(row.dof, 2 * row.coefficients - 1);
        }
        let last = r.rows.iter().filter(|r| r.satisfied).map(|r| r.layers).max();
        assert_eq!(last, Some(3));
    }

    #[test]
    fn scan_stops_only_after_monotone_failure() {
        use AnsatzKind::*;
        for kind in [Line, Parallel, Mixed, CollapsedLine, ProductParallel] {
            for d in 2..=4 {
                for m in 2..=4 {
                    let p = if kind == Mixed { 2 } else { 1 };
                    let r = audit(kind, d, m, p, 30).unwrap();
                    let first_fail = r.rows.iter().position(|r| !r.satisfied);
                    if let Some(i) = first_fail {
                        assert!(r.rows[i..].iter().all(|r| !r.satisfied), "{kind} d={d} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_feature_always_satisfied() {
        for d in 2..=5 {
            let r = audit(AnsatzKind::Line, d, 1, 1, 20).unwrap();
            assert!(r.rows.iter().all(|r| r.satisfied));
        }
    }

    #[test]
    fn invalid_families() {
        assert!(audit(AnsatzKind::Mixed, 2, 2, 3, 1).is_err());
        assert!(audit(AnsatzKind::Line, 1, 2, 1, 1).is_err());
        assert!(matches!(
            crossover_degree(AnsatzKind::Noncommuting, 2, 2, 1),
            Err(Error::UnsupportedEncoding(_))
        ));
    }
}
