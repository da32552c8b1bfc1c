//! CSV tables and the SVG gap heat map.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use anyhow::Result;

use diamond_relay::report::{BoundReport, CounterexampleRow};
use diamond_relay::ADDITIVE_GAP;

pub const REPORT_COLUMNS: [&str; 17] = [
    "n",
    "g",
    "h",
    "regime",
    "r_af",
    "r_bursty_best",
    "delta_star",
    "thm1_lower",
    "df_rate",
    "bc_mac",
    "independent_cuts",
    "simplified_cutset",
    "rho_cutset",
    "rho_star",
    "thm2_upper",
    "additive_gap",
    "mult_ratio",
];

pub fn write_reports_csv<W: Write>(out: W, reports: &[BoundReport<f64>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(REPORT_COLUMNS)?;
    for r in reports {
        let nums = [
            r.g,
            r.h,
            r.r_af,
            r.r_bursty_best,
            r.delta_star,
            r.thm1_lower,
            r.df_rate,
            r.bc_mac,
            r.independent_cuts,
            r.simplified_cutset,
            r.rho_cutset,
            r.rho_star,
            r.thm2_upper,
            r.additive_gap,
            r.multiplicative_ratio,
        ]
        .map(|x| format!("{x:?}"));
        let mut row = vec![
            r.n_relays.to_string(),
            nums[0].clone(),
            nums[1].clone(),
            r.regime.as_str().to_string(),
        ];
        row.extend_from_slice(&nums[2..]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_counterexample_csv<W: Write>(out: W, rows: &[CounterexampleRow<f64>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record([
        "n",
        "g",
        "h",
        "regime",
        "bc_mac",
        "rho_cutset",
        "thm2_upper",
        "difference",
        "ratio",
    ])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            format!("{:?}", r.g),
            format!("{:?}", r.h),
            r.regime.as_str().to_string(),
            format!("{:?}", r.bc_mac),
            r.rho_cutset.map(|x| format!("{x:?}")).unwrap_or_default(),
            format!("{:?}", r.thm2_upper),
            format!("{:?}", r.difference),
            format!("{:?}", r.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Additive gap (maximised over `N`) on the `(log10 g, log10 h)` grid, shaded
/// from white at zero to red at the certified constant.
pub fn gap_heatmap(reports: &[BoundReport<f64>]) -> String {
    // keys are bit patterns so equal gains share a cell
    let mut cells: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    for r in reports {
        let key = (r.g.to_bits(), r.h.to_bits());
        let slot = cells.entry(key).or_insert(f64::NEG_INFINITY);
        *slot = slot.max(r.additive_gap);
    }
    let mut gs: Vec<f64> = cells.keys().map(|k| f64::from_bits(k.0)).collect();
    let mut hs: Vec<f64> = cells.keys().map(|k| f64::from_bits(k.1)).collect();
    for axis in [&mut gs, &mut hs] {
        axis.sort_by(f64::total_cmp);
        axis.dedup();
    }

    let cell = 14.0;
    let (left, top) = (70.0, 40.0);
    let width = left + cell * gs.len() as f64 + 20.0;
    let height = top + cell * hs.len() as f64 + 60.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{left}" y="20">additive gap, max over N (white 0, red {ADDITIVE_GAP:.4} bits)</text>"#
    );
    for (i, &g) in gs.iter().enumerate() {
        for (j, &h) in hs.iter().enumerate() {
            let Some(&gap) = cells.get(&(g.to_bits(), h.to_bits())) else {
                continue;
            };
            let t = (gap / ADDITIVE_GAP).clamp(0.0, 1.0);
            let shade = (255.0 * (1.0 - t)).round() as u8;
            let x = left + cell * i as f64;
            // larger h towards the top
            let y = top + cell * (hs.len() - 1 - j) as f64;
            let _ = writeln!(
                svg,
                r#"<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="rgb(255,{shade},{shade})"><title>g={g} h={h} gap={gap}</title></rect>"#
            );
        }
    }
    let axis_y = top + cell * hs.len() as f64;
    let _ = writeln!(
        svg,
        r#"<text x="{left}" y="{}">log10 g: {:.1} .. {:.1}</text>"#,
        axis_y + 20.0,
        log_or_nan(&gs, 0),
        log_or_nan(&gs, gs.len().wrapping_sub(1))
    );
    let _ = writeln!(svg, r#"<text x="4" y="{}">log10 h</text>"#, top + 10.0);
    let _ = writeln!(
        svg,
        r#"<text x="4" y="{}">{:.1} .. {:.1}</text>"#,
        top + 24.0,
        log_or_nan(&hs, hs.len().wrapping_sub(1)),
        log_or_nan(&hs, 0)
    );
    svg.push_str("</svg>\n");
    svg
}

fn log_or_nan(axis: &[f64], i: usize) -> f64 {
    axis.get(i).map_or(f64::NAN, |x| x.log10())
}
