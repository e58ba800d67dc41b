//! Self-contained SVG rendering for sigma traces and density scatters.
//! No plotting dependency: the files are assembled directly.

use anyhow::{anyhow, bail, Result};

pub struct PlotData {
    /// (x, y) points drawn as a polyline (trace) or dots (density)
    pub points: Vec<(f64, f64)>,
    /// x positions of exact hits, drawn as distinct markers at the top
    pub hits: Vec<f64>,
    pub x_label: String,
    pub y_label: String,
}

/// Parse a sigma-trace CSV (`n,nearest,distance,sigma_lo,sigma_hi,route,exact_hit`).
pub fn parse_trace_csv(text: &str) -> Result<PlotData> {
    let mut points = Vec::new();
    let mut hits = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line.starts_with('n') {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 7 {
            bail!("trace CSV row {} has {} columns, expected 7", i + 1, cols.len());
        }
        let n: f64 = cols[0].parse().map_err(|e| anyhow!("bad n at row {}: {}", i + 1, e))?;
        if cols[6].trim() == "true" {
            hits.push(n);
            continue;
        }
        let lo: f64 = match cols[3].trim().parse() {
            Ok(v) => v,
            Err(_) => continue, // skipped samples
        };
        let hi: f64 = match cols[4].trim().parse() {
            Ok(v) => v,
            Err(_) => continue,
        };
        points.push((n, (lo + hi) / 2.0));
    }
    Ok(PlotData { points, hits, x_label: "n".into(), y_label: "sigma_n".into() })
}

/// Parse a density CSV (`k,M,eps,N,zeta,f,unit,target_lo,target_hi,...`).
pub fn parse_density_csv(text: &str) -> Result<PlotData> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line.starts_with('k') {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 9 {
            bail!("density CSV row {} has {} columns, expected >= 9", i + 1, cols.len());
        }
        let m: f64 = cols[1].parse().map_err(|e| anyhow!("bad M at row {}: {}", i + 1, e))?;
        let lo: f64 = cols[7].parse().map_err(|e| anyhow!("bad target at row {}: {}", i + 1, e))?;
        let hi: f64 = cols[8].parse().map_err(|e| anyhow!("bad target at row {}: {}", i + 1, e))?;
        points.push((m, (lo + hi) / 2.0));
    }
    Ok(PlotData { points, hits: Vec::new(), x_label: "M".into(), y_label: "-log f / log zeta".into() })
}

/// Render an SVG: polyline or scatter, exact hits marked, optional
/// horizontal bound lines.
pub fn render_svg(data: &PlotData, scatter: bool, bounds: &[f64]) -> String {
    let w = 840.0;
    let h = 520.0;
    let ml = 70.0;
    let mr = 20.0;
    let mt = 20.0;
    let mb = 50.0;
    let xs: Vec<f64> = data.points.iter().map(|p| p.0).chain(data.hits.iter().cloned()).collect();
    let ys: Vec<f64> = data
        .points
        .iter()
        .map(|p| p.1)
        .chain(bounds.iter().cloned())
        .collect();
    let (xmin, xmax) = min_max(&xs, 0.0, 1.0);
    let (ymin, ymax) = min_max(&ys, 0.0, 1.0);
    let xspan = (xmax - xmin).max(1e-9);
    let yspan = (ymax - ymin).max(1e-9);
    let px = |x: f64| ml + (x - xmin) / xspan * (w - ml - mr);
    let py = |y: f64| h - mb - (y - ymin) / yspan * (h - mt - mb);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // axes
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        ml,
        h - mb,
        w - mr,
        h - mb
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        ml,
        mt,
        ml,
        h - mb
    ));
    // axis labels and extents
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\">{}</text>\n",
        (w - ml) / 2.0,
        h - 12.0,
        data.x_label
    ));
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{}\" font-size=\"13\" transform=\"rotate(-90 14 {})\">{}</text>\n",
        h / 2.0,
        h / 2.0,
        data.y_label
    ));
    for (v, x, y, anchor) in [
        (xmin, ml, h - mb + 18.0, "middle"),
        (xmax, w - mr, h - mb + 18.0, "end"),
    ] {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"{}\">{:.4}</text>\n",
            x, y, anchor, v
        ));
    }
    for (v, y) in [(ymin, h - mb), (ymax, mt + 4.0)] {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>\n",
            ml - 6.0,
            y,
            v
        ));
    }
    // bound lines
    for b in bounds {
        let y = py(*b);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#cc6600\" stroke-dasharray=\"6,4\"/>\n",
            ml,
            w - mr
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#cc6600\">bound {:.6}</text>\n",
            w - mr - 120.0,
            y - 4.0,
            b
        ));
    }
    // data
    if scatter {
        for (x, y) in &data.points {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"#1f4e99\"/>\n",
                px(*x),
                py(*y)
            ));
        }
    } else if !data.points.is_empty() {
        let pts: Vec<String> = data
            .points
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.2\"/>\n",
            pts.join(" ")
        ));
    }
    // exact hits: distinct markers pinned near the top
    for x in &data.hits {
        let cx = px(*x);
        svg.push_str(&format!(
            "<path d=\"M {:.2} {:.2} l 5 9 l -10 0 z\" fill=\"#b3001b\"/>\n",
            cx,
            mt + 2.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn min_max(v: &[f64], d0: f64, d1: f64) -> (f64, f64) {
    if v.is_empty() {
        return (d0, d1);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in v {
        if x.is_finite() {
            lo = lo.min(*x);
            hi = hi.max(*x);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (d0, d1);
    }
    (lo, hi)
}
