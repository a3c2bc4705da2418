//! Minimal SVG phase-portrait writer.

use std::fmt::Write;

use pbconic::conicfit::{parametrize, Conic};
use pbconic::exactalg::{rational_to_f64, sign_of, Rational};

/// Plot window `(xmin, xmax, ymin, ymax)`.
pub type Window = (f64, f64, f64, f64);

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;

enum Item {
    Path { points: Vec<(f64, f64)>, color: String, width: f64 },
    Marker { at: (f64, f64), color: String },
}

pub struct Plot {
    window: Window,
    title: String,
    items: Vec<Item>,
}

impl Plot {
    pub fn new(window: Window, title: &str) -> Self {
        Plot {
            window,
            title: title.to_string(),
            items: Vec::new(),
        }
    }

    pub fn path(&mut self, points: Vec<(f64, f64)>, color: &str, width: f64) {
        if points.len() > 1 {
            self.items.push(Item::Path {
                points,
                color: color.to_string(),
                width,
            });
        }
    }

    pub fn marker(&mut self, at: (f64, f64), color: &str) {
        self.items.push(Item::Marker {
            at,
            color: color.to_string(),
        });
    }

    fn to_screen(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let (x0, x1, y0, y1) = self.window;
        let w = SIZE - 2.0 * MARGIN;
        (
            MARGIN + (x - x0) / (x1 - x0) * w,
            SIZE - MARGIN - (y - y0) / (y1 - y0) * w,
        )
    }

    fn inside(&self, (x, y): (f64, f64)) -> bool {
        let (x0, x1, y0, y1) = self.window;
        x >= x0 && x <= x1 && y >= y0 && y <= y1
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
        let _ = writeln!(
            s,
            "<!-- non-normative rendering: coordinates are floating-point images of exact samples; the JSON certificates are authoritative -->"
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#, SIZE / 2.0, escape(&self.title));
        let (x0, x1, y0, y1) = self.window;
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="black" stroke-width="1"/>"#,
            w = SIZE - 2.0 * MARGIN
        );
        if x0 < 0.0 && x1 > 0.0 {
            let (a, b) = (self.to_screen((0.0, y0)), self.to_screen((0.0, y1)));
            let _ = writeln!(s, r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="0.5"/>"##, a.0, a.1, b.0, b.1);
        }
        if y0 < 0.0 && y1 > 0.0 {
            let (a, b) = (self.to_screen((x0, 0.0)), self.to_screen((x1, 0.0)));
            let _ = writeln!(s, r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="0.5"/>"##, a.0, a.1, b.0, b.1);
        }
        for (v, at) in [(x0, (x0, y0)), (x1, (x1, y0))] {
            let p = self.to_screen(at);
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{v:.3}</text>"#, p.0, p.1 + 14.0);
        }
        for (v, at) in [(y0, (x0, y0)), (y1, (x0, y1))] {
            let p = self.to_screen(at);
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{v:.3}</text>"#, p.0 - 4.0, p.1 + 3.0);
        }
        for item in &self.items {
            match item {
                Item::Path { points, color, width } => {
                    for run in split_runs(points, |p| self.inside(p)) {
                        let d: Vec<String> = run
                            .iter()
                            .map(|&p| {
                                let q = self.to_screen(p);
                                format!("{:.2},{:.2}", q.0, q.1)
                            })
                            .collect();
                        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#, d.join(" "));
                    }
                }
                Item::Marker { at, color } if self.inside(*at) => {
                    let q = self.to_screen(*at);
                    let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, q.0, q.1);
                }
                _ => {}
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Maximal runs of consecutive points accepted by `keep`.
fn split_runs(points: &[(f64, f64)], keep: impl Fn((f64, f64)) -> bool) -> Vec<Vec<(f64, f64)>> {
    let mut runs = vec![Vec::new()];
    for &p in points {
        if p.0.is_finite() && p.1.is_finite() && keep(p) {
            runs.last_mut().expect("nonempty").push(p);
        } else if !runs.last().expect("nonempty").is_empty() {
            runs.push(Vec::new());
        }
    }
    runs.retain(|r| r.len() > 1);
    runs
}

/// Points of the conic at rational parameters spread over the whole line,
/// computed exactly and then rounded. Branches are separated by a NaN point.
pub fn conic_samples(conic: &Conic, count: usize) -> Vec<(f64, f64)> {
    let Ok(par) = parametrize(conic) else { return Vec::new() };
    let mut out = Vec::with_capacity(count + 1);
    let mut prev_sign = 0;
    for k in 0..count {
        let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / count as f64;
        let Some(m) = Rational::from_float(theta.tan()) else { continue };
        let dsign = sign_of(&par.d.eval(&m));
        if prev_sign != 0 && dsign != prev_sign {
            out.push((f64::NAN, f64::NAN));
        }
        prev_sign = dsign;
        match par.point(&m) {
            Some((x, y)) => out.push((rational_to_f64(&x), rational_to_f64(&y))),
            None => out.push((f64::NAN, f64::NAN)),
        }
    }
    if let Some((x, y)) = &par.vertical_point {
        // the point reached at infinite parameter closes bounded conics
        if conic.discriminant() < Rational::from_integer(0.into()) {
            out.push((rational_to_f64(x), rational_to_f64(y)));
            if let Some(&first) = out.first() {
                out.push(first);
            }
        }
    }
    out
}
