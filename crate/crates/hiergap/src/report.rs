//! Output emission: CSV tables, SVG band diagrams, text summaries.
//!
//! All numbers are printed through [`fmt_g12`] (12 significant digits,
//! shortest form), so identical inputs always produce byte-identical files.

use crate::error::Result;
use crate::interval::{LambdaRange, SpectralInterval};
use crate::spectrum::{Classification, HierarchicalReport, SamplePoint};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Formats with 12 significant digits, trimming trailing zeros. Values with
/// decimal exponent in [-4, 12) print positionally, everything else in
/// scientific notation: `4`, `0.5`, `3.66666666667`, `1e-9`.
pub fn fmt_g12(x: f64) -> String {
    fmt_sig(x, 12)
}

/// [`fmt_g12`] with a caller-chosen significant-digit count (used for axis
/// tick labels).
pub fn fmt_sig(x: f64, sig: usize) -> String {
    debug_assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    let sign = if x < 0.0 { "-" } else { "" };
    let formatted = format!("{:.*e}", sig - 1, x.abs());
    let (mantissa, exp_str) = formatted.split_once('e').expect("exponent notation");
    let exp: i32 = exp_str.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    if exp >= -4 && exp < sig as i32 {
        if exp >= 0 {
            let split = (exp + 1) as usize;
            let int_part = &digits[..split];
            let frac = digits[split..].trim_end_matches('0');
            if frac.is_empty() {
                format!("{sign}{int_part}")
            } else {
                format!("{sign}{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            let frac = digits.trim_end_matches('0');
            format!("{sign}0.{zeros}{frac}")
        }
    } else {
        let trimmed = digits.trim_end_matches('0');
        if trimmed.len() == 1 {
            format!("{sign}{trimmed}e{exp}")
        } else {
            format!("{sign}{}.{}e{exp}", &trimmed[..1], &trimmed[1..])
        }
    }
}

/// Per-point dispersion table. One row per sample; `k` is filled only in
/// pass bands, `attenuation` only in gaps, edge rows leave both empty.
pub fn bands_csv(samples: &[SamplePoint], sites: usize) -> String {
    let n = sites as f64;
    let mut out = String::from("lambda,omega,rhs,classification,k,attenuation\n");
    for s in samples {
        let k = match s.classification {
            Classification::PassBand => fmt_g12((s.rhs / 2.0).clamp(-1.0, 1.0).acos() / n),
            _ => String::new(),
        };
        let attenuation = match s.classification {
            Classification::BandGap => fmt_g12((s.rhs.abs() / 2.0).acosh() / n),
            _ => String::new(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_g12(s.lambda),
            fmt_g12(s.lambda.sqrt()),
            fmt_g12(s.rhs),
            s.classification.as_str(),
            k,
            attenuation
        );
    }
    out
}

/// Interval table with 12-significant-digit endpoints.
pub fn intervals_csv(intervals: &[SpectralInterval]) -> String {
    let mut out = String::from("kind,lo,hi,lo_refined,hi_refined\n");
    for iv in intervals {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            iv.kind.as_str(),
            fmt_g12(iv.lo),
            fmt_g12(iv.hi),
            iv.lo_refined,
            iv.hi_refined
        );
    }
    out
}

/// Human-readable summary of a containment verification run.
pub fn report_text(cell: &str, range: LambdaRange, report: &HierarchicalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hierarchical gap report: {cell}");
    let _ = writeln!(out, "range: lambda in ({}, {})", fmt_g12(range.lo), fmt_g12(range.hi));
    let _ = writeln!(out);
    let _ = writeln!(out, "predicted hierarchical gaps (intersection of element gap sets):");
    if report.predicted.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for (i, iv) in report.predicted.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {}. ({}, {})  width {}",
            i + 1,
            fmt_g12(iv.lo),
            fmt_g12(iv.hi),
            fmt_g12(iv.width())
        );
    }
    if !report.degenerate.is_empty() {
        let _ = writeln!(
            out,
            "warning: degenerate elements with empty gap sets: {}",
            report.degenerate.join(", ")
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "combined cell band gaps (independent scan):");
    if report.combined_gaps.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for (i, iv) in report.combined_gaps.iter().enumerate() {
        let _ = writeln!(out, "  {}. ({}, {})", i + 1, fmt_g12(iv.lo), fmt_g12(iv.hi));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "samples checked: {}", report.samples_checked);
    let _ = writeln!(out, "containment_verified: {}", report.containment_verified);
    out
}

/// One horizontal bar of a band diagram: the λ intervals where this track's
/// material propagates.
#[derive(Clone, Debug)]
pub struct SvgTrack {
    pub label: String,
    pub pass_bands: Vec<(f64, f64)>,
}

const PLOT_LEFT: f64 = 170.0;
const PLOT_WIDTH: f64 = 680.0;
const TRACK_HEIGHT: f64 = 30.0;
const TRACK_PITCH: f64 = 42.0;
const TOP: f64 = 52.0;

const BAND_FILL: &str = "#41729f";
const GAP_FILL: &str = "#e9e9ef";
const HATCH_STROKE: &str = "#b2462e";
const TEXT_COLOR: &str = "#1f2430";

pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn coord(x: f64) -> String {
    format!("{x:.2}")
}

/// Renders a stacked band diagram: one bar per track (colored segments are
/// pass bands, light background is gap), with `hatched` intervals overlaid
/// across all tracks and a λ axis with a secondary ω = √λ scale.
pub fn render_band_svg(
    title: &str,
    range: LambdaRange,
    tracks: &[SvgTrack],
    hatched: &[(f64, f64)],
) -> String {
    let width = PLOT_LEFT + PLOT_WIDTH + 30.0;
    let tracks_bottom = TOP + tracks.len() as f64 * TRACK_PITCH;
    let axis_y = tracks_bottom + 14.0;
    let height = axis_y + 64.0;
    let x_of = |lambda: f64| PLOT_LEFT + (lambda - range.lo) / range.width() * PLOT_WIDTH;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = coord(width),
        h = coord(height)
    );
    let _ = writeln!(
        svg,
        r#"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="7" height="7"><path d="M0,7 L7,0" stroke="{HATCH_STROKE}" stroke-width="1.2"/></pattern></defs>"#
    );
    let _ = writeln!(svg, r##"<rect width="{}" height="{}" fill="#ffffff"/>"##, coord(width), coord(height));
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="30" font-family="Helvetica, Arial, sans-serif" font-size="17" fill="{TEXT_COLOR}">{}</text>"#,
        coord(PLOT_LEFT),
        escape_xml(title)
    );

    // legend, top right
    let legend_x = PLOT_LEFT + PLOT_WIDTH - 250.0;
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="18" width="16" height="12" fill="{BAND_FILL}"/><text x="{}" y="28" font-family="Helvetica, Arial, sans-serif" font-size="11" fill="{TEXT_COLOR}">pass band</text>"#,
        coord(legend_x),
        coord(legend_x + 21.0)
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="18" width="16" height="12" fill="{GAP_FILL}" stroke="#c8c8d2" stroke-width="0.5"/><text x="{}" y="28" font-family="Helvetica, Arial, sans-serif" font-size="11" fill="{TEXT_COLOR}">gap</text>"##,
        coord(legend_x + 92.0),
        coord(legend_x + 113.0)
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="18" width="16" height="12" fill="url(#hatch)" stroke="{HATCH_STROKE}" stroke-width="0.6"/><text x="{}" y="28" font-family="Helvetica, Arial, sans-serif" font-size="11" fill="{TEXT_COLOR}">hierarchical gap</text>"#,
        coord(legend_x + 148.0),
        coord(legend_x + 169.0)
    );

    for (i, track) in tracks.iter().enumerate() {
        let y = TOP + i as f64 * TRACK_PITCH;
        let _ = writeln!(svg, r#"<g class="track" id="track-{i}">"#);
        let _ = writeln!(
            svg,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="{GAP_FILL}" stroke="#c8c8d2" stroke-width="0.5"/>"##,
            coord(PLOT_LEFT),
            coord(y),
            coord(PLOT_WIDTH),
            coord(TRACK_HEIGHT)
        );
        for &(lo, hi) in &track.pass_bands {
            let x0 = x_of(lo.max(range.lo));
            let x1 = x_of(hi.min(range.hi));
            if x1 > x0 {
                let _ = writeln!(
                    svg,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{BAND_FILL}"/>"#,
                    coord(x0),
                    coord(y),
                    coord(x1 - x0),
                    coord(TRACK_HEIGHT)
                );
            }
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="Helvetica, Arial, sans-serif" font-size="12" fill="{TEXT_COLOR}" text-anchor="end">{}</text>"#,
            coord(PLOT_LEFT - 10.0),
            coord(y + TRACK_HEIGHT / 2.0 + 4.0),
            escape_xml(&track.label)
        );
        let _ = writeln!(svg, "</g>");
    }

    for &(lo, hi) in hatched {
        let x0 = x_of(lo.max(range.lo));
        let x1 = x_of(hi.min(range.hi));
        if x1 > x0 {
            let _ = writeln!(
                svg,
                r#"<rect class="hatched" x="{}" y="{}" width="{}" height="{}" fill="url(#hatch)" stroke="{HATCH_STROKE}" stroke-width="1"/>"#,
                coord(x0),
                coord(TOP - 4.0),
                coord(x1 - x0),
                coord(tracks_bottom - TOP - TRACK_PITCH + TRACK_HEIGHT + 8.0)
            );
        }
    }

    // primary λ axis with secondary ω = √λ scale
    let _ = writeln!(
        svg,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{TEXT_COLOR}" stroke-width="1"/>"#,
        coord(PLOT_LEFT),
        coord(axis_y),
        coord(PLOT_LEFT + PLOT_WIDTH),
        coord(axis_y)
    );
    let ticks = 6usize;
    for j in 0..=ticks {
        let lambda = range.lo + range.width() * j as f64 / ticks as f64;
        let x = x_of(lambda);
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="{TEXT_COLOR}" stroke-width="1"/>"#,
            x = coord(x),
            y0 = coord(axis_y),
            y1 = coord(axis_y + 6.0)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="Helvetica, Arial, sans-serif" font-size="11" fill="{TEXT_COLOR}" text-anchor="middle">{}</text>"#,
            coord(x),
            coord(axis_y + 20.0),
            fmt_sig(lambda, 4)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="Helvetica, Arial, sans-serif" font-size="10" fill="#6b7280" text-anchor="middle">{}</text>"##,
            coord(x),
            coord(axis_y + 38.0),
            fmt_sig(lambda.sqrt(), 4)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="Helvetica, Arial, sans-serif" font-size="12" fill="{TEXT_COLOR}">λ = ω²</text>"#,
        coord(PLOT_LEFT + PLOT_WIDTH + 8.0),
        coord(axis_y + 20.0)
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-family="Helvetica, Arial, sans-serif" font-size="11" fill="#6b7280">ω</text>"##,
        coord(PLOT_LEFT + PLOT_WIDTH + 8.0),
        coord(axis_y + 38.0)
    );
    svg.push_str("</svg>\n");
    svg
}

/// Writes `content` to `path` atomically: temp file in the same directory,
/// then rename. Parent directories are created as needed.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
