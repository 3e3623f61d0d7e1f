//! Plain-text rendering of a [`CorrelationReport`].

use std::fmt::Write;

use sipt_core::report::CorrelationReport;
use sipt_core::{CriterionVerdict, OracleResult};

fn fmt_values(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn verdict_line(out: &mut String, name: &str, v: &CriterionVerdict) {
    let _ = writeln!(
        out,
        "  {name:<12} {:<12} witness {:.6e}  threshold {:.1e}  {}",
        format!("{:?}", v.verdict),
        v.witness_value,
        v.threshold,
        v.detail
    );
}

fn oracle_line(out: &mut String, name: &str, r: &Option<OracleResult>) {
    if let Some(r) = r {
        let _ = writeln!(
            out,
            "  {name:<12} {:.10}  (restarts {}, converged {}, spread {:.2e})",
            r.value, r.restarts_used, r.converged, r.spread
        );
    }
}

pub fn text(r: &CorrelationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "state        {}", r.state_id);
    let _ = writeln!(out, "dims         {}", r.dims);
    let _ = writeln!(out, "spectrum     {}", fmt_values(&r.spectrum));
    let _ = writeln!(out, "pt spectrum  {}", fmt_values(&r.transposed_spectrum));
    let _ = writeln!(
        out,
        "negativity   {:.10}  (n_plus {}, n_minus {})",
        r.negativity.negativity, r.negativity.n_plus, r.negativity.n_minus
    );

    out.push_str("\ncriteria\n");
    verdict_line(&mut out, "ppt", &r.criteria.ppt);
    verdict_line(&mut out, "sipt", &r.criteria.sipt);
    verdict_line(&mut out, "sipt-moment", &r.criteria.sipt_moments);

    let d = &r.discord_bounds;
    out.push_str("\ndiscord bounds\n");
    for (name, v) in [
        ("l_ppt", d.l_ppt),
        ("l_ppt_prime", d.l_ppt_prime),
        ("l_sipt", d.l_sipt),
        ("combined", d.combined),
        ("deficit bits", d.deficit_bound_bits),
    ] {
        let _ = writeln!(out, "  {name:<12} {v:.10}");
    }

    let e = &r.entanglement_bounds;
    out.push_str("\nentanglement bounds\n");
    for (name, v) in [
        ("e_hs_lemma", e.e_hs_lemma),
        ("e_hs_ratio", e.e_hs_ratio),
        ("e_hs_floor", e.e_hs_floor),
        ("literature", e.e_hs_literature),
        ("e_re bits", e.e_re_bound_bits),
    ] {
        let _ = writeln!(out, "  {name:<12} {v:.10}");
    }
    let _ = writeln!(
        out,
        "  floor beats literature: {} (dimension condition {})",
        e.floor_is_tighter, e.tightness_condition
    );

    let o = &r.oracles;
    if o.gqd.is_some() || o.deficit.is_some() {
        out.push_str("\noracles\n");
        oracle_line(&mut out, "gqd", &o.gqd);
        oracle_line(&mut out, "deficit (B)", &o.deficit);
        oracle_line(&mut out, "deficit (A)", &o.deficit_a);
    }
    let _ = writeln!(out, "\nversion {}", r.version);
    out
}
