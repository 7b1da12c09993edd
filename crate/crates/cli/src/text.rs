//! Plain-text renderings for terminal output.

use std::fmt::Write;

use semispace::algebra::Semimodule;
use semispace::classes::DisKind;
use semispace::lattice::SubLattice;
use semispace::topology::SpaceReport;
use semispace::verifier::{SuiteReport, CLAIMS};

pub fn describe(m: &Semimodule, lat: &SubLattice) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "semiring: {{{}}}", m.ring().labels().join(", "));
    let _ = writeln!(s, "module:   {{{}}}", m.labels().join(", "));
    let _ = writeln!(s, "axioms:   ok");
    let _ = writeln!(s, "{} subsemimodules", lat.len());
    for n in lat.ids() {
        let _ = writeln!(s, "  N{n:<3} {}", lat.show(n));
    }
    let _ = writeln!(s, "covers:");
    for &(a, b) in lat.hasse() {
        let _ = writeln!(s, "  N{a} < N{b}");
    }
    s
}

pub fn classify(lat: &SubLattice, kinds: &[DisKind], matrix: &[Vec<bool>]) -> String {
    let width = kinds.iter().map(|k| k.as_str().len()).max().unwrap_or(0);
    let mut s = String::new();
    let _ = write!(s, "{:width$} ", "");
    for n in lat.ids() {
        let _ = write!(s, " N{n:<3}");
    }
    s.push('\n');
    for (k, row) in kinds.iter().zip(matrix) {
        let _ = write!(s, "{:width$} ", k.as_str());
        for &b in row {
            let _ = write!(s, " {:<4}", if b { "x" } else { "." });
        }
        s.push('\n');
    }
    s.push('\n');
    for n in lat.ids() {
        let _ = writeln!(s, "N{n:<3} {}", lat.show(n));
    }
    s
}

pub fn topology(r: &SpaceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kind:      {}", r.kind.as_deref().unwrap_or("custom"));
    let _ = writeln!(s, "points:    {}", r.points.len());
    for p in &r.points {
        let _ = writeln!(s, "  {p}");
    }
    let _ = writeln!(s, "t0:        {}", r.separation.t0);
    let _ = writeln!(s, "t1:        {}", r.separation.t1);
    let _ = writeln!(s, "sober:     {}", r.sober);
    let _ = writeln!(s, "connected: {}", r.connectivity.connected);
    let _ = writeln!(s, "scc:       {}", r.scc_holds);
    if let Some(n) = r.closed_count {
        let _ = writeln!(s, "closed sets: {n}");
    }
    s
}

pub fn suite_summary(r: &SuiteReport) -> String {
    let mut s = String::new();
    let width = CLAIMS.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in CLAIMS {
        if let Some(n) = r.by_claim.get(c.id) {
            let _ = writeln!(
                s,
                "{:width$}  {:<22} pass {:>5}  fail {:>4}  skipped {:>3}",
                c.id, c.anchor, n.pass, n.fail, n.skipped
            );
        }
    }
    let t = r.totals;
    let _ = writeln!(s, "total: pass {} fail {} skipped {}", t.pass, t.fail, t.skipped);
    s
}

pub fn suite_timings(r: &SuiteReport) -> String {
    let mut s = String::new();
    for c in CLAIMS {
        let d: std::time::Duration = r.rows_for(c.id).map(|row| row.elapsed).sum();
        if r.by_claim.contains_key(c.id) {
            let _ = writeln!(s, "{:<40} {:>10.3} ms", c.id, d.as_secs_f64() * 1e3);
        }
    }
    let _ = writeln!(s, "{:<40} {:>10.3} ms", "total", r.total_elapsed().as_secs_f64() * 1e3);
    s
}
