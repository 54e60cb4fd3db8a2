//! Audit the structural hypotheses on a few nonlinearities.

use periodic_waves::nonlinearity::{audit_hypotheses, default_audit_grid, AuditConfig};
use periodic_waves::NonlinearitySpec;

fn main() -> periodic_waves::Result<()> {
    let grid = default_audit_grid();
    for text in ["power:3", "power:7", "powers:3@1,5@0.5", "triple:2"] {
        let spec: NonlinearitySpec = text.parse()?;
        let report = audit_hypotheses(&spec, 1.0, &grid, &AuditConfig::default())?;
        println!("{spec}");
        for (h, verdict) in &report.verdicts {
            let mark = if verdict.holds() { "ok  " } else { "FAIL" };
            println!("  {mark} {h:?}  {}", h.statement());
        }
        if let Some(g) = report.growth_bound {
            println!("  growth bound: |f(s)| <= {:.3} s^{} for s >= {:.3e}", g.m, g.p, g.s0);
        }
    }
    Ok(())
}
