//! Deterministic SVG rendering of a scene.
//!
//! Circles are drawn as scaled copies of the plane's unit ball: polygon
//! vertices when the ball is a polygon, a 256-point sampling otherwise. The
//! y axis is flipped and the viewport padded by 10%.

use std::fmt::Write;

use minkplane::{NormSpec, Point2};

use crate::scene_input::ResolvedScene;

const SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Triangle,
    Antitriangle,
    Medial,
    Euler,
    Feuerbach,
    Circumcircle,
    Unitball,
    System,
}

impl Layer {
    const ALL: [Layer; 8] = [
        Layer::Triangle,
        Layer::Antitriangle,
        Layer::Medial,
        Layer::Euler,
        Layer::Feuerbach,
        Layer::Circumcircle,
        Layer::Unitball,
        Layer::System,
    ];
}

pub fn parse_layers(arg: &str) -> Result<Vec<Layer>, String> {
    if arg == "all" {
        return Ok(Layer::ALL.to_vec());
    }
    let mut layers = Vec::new();
    for part in arg.split(',') {
        let layer = match part.trim() {
            "triangle" => Layer::Triangle,
            "antitriangle" => Layer::Antitriangle,
            "medial" => Layer::Medial,
            "euler" => Layer::Euler,
            "feuerbach" => Layer::Feuerbach,
            "circumcircle" => Layer::Circumcircle,
            "unitball" => Layer::Unitball,
            "system" => Layer::System,
            other => return Err(format!("unknown layer {other:?}")),
        };
        if !layers.contains(&layer) {
            layers.push(layer);
        }
    }
    layers.sort();
    Ok(layers)
}

/// Boundary polyline of the circle `center + radius * C`.
fn ball_outline(norm: &NormSpec, center: Point2, radius: f64) -> Vec<Point2> {
    if let NormSpec::Polygon(ball) = norm {
        return ball.vertices().iter().map(|&v| center + v.scale(radius)).collect();
    }
    match norm {
        NormSpec::Lp(p) if *p == 1.0 => {
            return [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
                .iter()
                .map(|&(x, y)| center + Point2::new(x, y).scale(radius))
                .collect()
        }
        NormSpec::Lp(p) if p.is_infinite() => {
            return [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
                .iter()
                .map(|&(x, y)| center + Point2::new(x, y).scale(radius))
                .collect()
        }
        _ => {}
    }
    (0..SAMPLES)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / SAMPLES as f64;
            center + norm.unit_point(theta).scale(radius)
        })
        .collect()
}

enum Element {
    /// Closed outline through the points.
    Outline { points: Vec<Point2>, color: &'static str, width: f64, dashed: bool },
    /// A labeled dot.
    Dot { at: Point2, color: &'static str, label: &'static str },
}

pub fn render(scene: &ResolvedScene, layers: &[Layer]) -> String {
    let sys = scene.system();
    let bundle = scene.bundle(&sys);
    let norm = &scene.norm;

    let mut elements: Vec<Element> = Vec::new();
    for layer in layers {
        match layer {
            Layer::Unitball => elements.push(Element::Outline {
                points: ball_outline(norm, Point2::ZERO, 1.0),
                color: "#999999",
                width: 0.6,
                dashed: true,
            }),
            Layer::Circumcircle => elements.push(Element::Outline {
                points: ball_outline(norm, sys.p4, sys.lambda),
                color: "#1f77b4",
                width: 0.8,
                dashed: false,
            }),
            Layer::Feuerbach => elements.push(Element::Outline {
                points: ball_outline(norm, sys.q, sys.lambda / 2.0),
                color: "#d62728",
                width: 0.8,
                dashed: false,
            }),
            Layer::Triangle => elements.push(Element::Outline {
                points: sys.vertices().to_vec(),
                color: "#000000",
                width: 1.2,
                dashed: false,
            }),
            Layer::Antitriangle => elements.push(Element::Outline {
                points: bundle.anti.vertices().to_vec(),
                color: "#2ca02c",
                width: 0.8,
                dashed: false,
            }),
            Layer::Medial => {
                elements.push(Element::Outline {
                    points: bundle.medial.vertices().to_vec(),
                    color: "#ff7f0e",
                    width: 0.8,
                    dashed: false,
                });
                for (v, label) in bundle.medial.vertices().into_iter().zip(["m1", "m2", "m3"]) {
                    elements.push(Element::Dot { at: v, color: "#ff7f0e", label });
                }
            }
            Layer::Euler => {
                elements.push(Element::Outline {
                    points: bundle.euler_triangle.vertices().to_vec(),
                    color: "#9467bd",
                    width: 0.8,
                    dashed: false,
                });
                for (v, label) in bundle.euler_points.into_iter().zip(["d1", "d2", "d3"]) {
                    elements.push(Element::Dot { at: v, color: "#9467bd", label });
                }
            }
            Layer::System => {
                let pts = [
                    (sys.x1, "x1"),
                    (sys.x2, "x2"),
                    (sys.x3, "x3"),
                    (sys.x4, "x4"),
                    (sys.p4, "p4"),
                    (sys.q, "q"),
                ];
                for (at, label) in pts {
                    elements.push(Element::Dot { at, color: "#000000", label });
                }
            }
        }
    }

    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: &Point2| {
        min = Point2::new(min.x.min(p.x), min.y.min(p.y));
        max = Point2::new(max.x.max(p.x), max.y.max(p.y));
    };
    for el in &elements {
        match el {
            Element::Outline { points, .. } => points.iter().for_each(&mut grow),
            Element::Dot { at, .. } => grow(at),
        }
    }
    if !min.is_finite() || !max.is_finite() {
        min = Point2::new(-1.0, -1.0);
        max = Point2::new(1.0, 1.0);
    }
    let span = (max - min).hypot().max(1e-9);
    let pad = 0.1 * span;
    let view = (
        min.x - pad,
        -(max.y + pad),
        (max.x - min.x) + 2.0 * pad,
        (max.y - min.y) + 2.0 * pad,
    );
    let dot_r = 0.008 * span;
    let font = 0.025 * span;
    let stroke_unit = 0.002 * span;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        view.0, view.1, view.2, view.3
    );
    let _ = writeln!(svg, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        view.0, view.1, view.2, view.3);
    for el in &elements {
        match el {
            Element::Outline { points, color, width, dashed } => {
                let mut d = String::new();
                for (i, p) in points.iter().enumerate() {
                    let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { "L" }, p.x, -p.y);
                }
                d.push('Z');
                let dash = if *dashed {
                    format!(r#" stroke-dasharray="{} {}""#, 4.0 * stroke_unit, 4.0 * stroke_unit)
                } else {
                    String::new()
                };
                let _ = writeln!(
                    svg,
                    r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="{}"{dash}/>"#,
                    width * stroke_unit
                );
            }
            Element::Dot { at, color, label } => {
                let _ = writeln!(
                    svg,
                    r#"<circle class="pt" cx="{}" cy="{}" r="{dot_r}" fill="{color}"/>"#,
                    at.x, -at.y
                );
                let _ = writeln!(
                    svg,
                    r#"<text x="{}" y="{}" font-size="{font}" fill="{color}">{label}</text>"#,
                    at.x + 1.5 * dot_r,
                    -at.y - 1.5 * dot_r
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}
