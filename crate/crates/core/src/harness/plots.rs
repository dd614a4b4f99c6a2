use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use super::compare::ComparisonReport;
use super::csv::{format_sig, write_rows};
use super::run::MeanRecord;
use crate::error::{Error, Result};

const FIGURES: [(&str, &str); 3] = [
    ("evals", "mean cumulative exact evaluations"),
    ("hv", "mean hypervolume"),
    ("igd", "mean IGD"),
];

fn value(figure: &str, r: &MeanRecord) -> f64 {
    match figure {
        "evals" => r.cum_exact_evals,
        "hv" => r.hv,
        _ => r.igd,
    }
}

/// Writes `plot_evals.csv`, `plot_hv.csv` and `plot_igd.csv`, each with a
/// generation column and one column per method. With `svg` set, a matching
/// line chart is written next to each file.
pub fn emit_plots(report: &ComparisonReport, dir: &Path, svg: bool) -> Result<()> {
    let (name_a, name_b) = report.series_names();
    let (a, b) = (&report.a.mean, &report.b.mean);
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.generation != y.generation) {
        return Err(Error::Invariant("the two mean series cover different generations".into()));
    }
    fs::create_dir_all(dir)?;
    for (figure, title) in FIGURES {
        let header = format!("generation,{name_a},{name_b}");
        let rows: Vec<Vec<String>> = a
            .iter()
            .zip(b)
            .map(|(x, y)| {
                vec![
                    x.generation.to_string(),
                    format_sig(value(figure, x)),
                    format_sig(value(figure, y)),
                ]
            })
            .collect();
        let file = BufWriter::new(File::create(dir.join(format!("plot_{figure}.csv")))?);
        write_rows(file, &header, &rows)?;
        if svg {
            let series = [
                (name_a.as_str(), a.iter().map(|r| (r.generation as f64, value(figure, r))).collect()),
                (name_b.as_str(), b.iter().map(|r| (r.generation as f64, value(figure, r))).collect()),
            ];
            fs::write(dir.join(format!("plot_{figure}.svg")), line_chart(title, &series))?;
        }
    }
    Ok(())
}

fn line_chart(title: &str, series: &[(&str, Vec<(f64, f64)>)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    const COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

    let points = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 || x1.is_nan() {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 || y1.is_nan() {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="20" text-anchor="middle">{title}</text>"#, W / 2.0);
    let _ = writeln!(
        svg,
        r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    let _ = writeln!(svg, r#"<text x="{PAD}" y="{}">{}</text>"#, H - PAD + 16.0, format_sig(x0));
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, W - PAD, H - PAD + 16.0, format_sig(x1));
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, PAD - 4.0, H - PAD, format_sig(y0));
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, PAD - 4.0, PAD + 4.0, format_sig(y1));
    for (k, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.join(" ")
        );
        let ly = PAD + 16.0 * k as f64;
        let _ = writeln!(svg, r#"<text x="{}" y="{ly}" fill="{color}">{name}</text>"#, W - PAD - 120.0);
    }
    svg.push_str("</svg>\n");
    svg
}
