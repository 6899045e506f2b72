//! Plain-text SVG drawings. Floating point is used for coordinates only.

use std::f64::consts::TAU;
use std::fmt::Write;

use super::{Failure, EXIT_INTERNAL};
use crate::instance::Instance;
use crate::preprocess::{
    dedupe_normals, feasibility_check, rotate_if_needed, singleton_check, Feasibility,
};
use crate::reduction::{build_circle, build_envelope_trees, build_reduced_arcs};

pub enum Diagram {
    Svg(String),
    Infeasible,
    /// The point hitting every half-plane.
    Trivial(usize),
}

const SIZE: f64 = 640.0;

/// The circle with one dot per half-plane at the angle of its normal
/// (lower group blue, upper group orange) and the reduced arcs drawn as
/// bands outside it, labelled by owner.
pub fn diagram(inst: &Instance) -> Result<Diagram, Failure> {
    let deduped = dedupe_normals(inst.halfplanes());
    if let Feasibility::Infeasible(_) = feasibility_check(inst.points(), &deduped.halfplanes) {
        return Ok(Diagram::Infeasible);
    }
    if let Some(i) = singleton_check(inst.points(), &deduped.halfplanes) {
        return Ok(Diagram::Trivial(i));
    }
    let internal = |e: crate::reduction::ReductionError| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    };
    let (points, halfplanes, _) = rotate_if_needed(inst.points(), &deduped.halfplanes);
    let circle = build_circle(&halfplanes).map_err(internal)?;
    let arcs = build_reduced_arcs(&points, &build_envelope_trees(&halfplanes, &circle))
        .map_err(internal)?;

    let n = circle.n();
    let angle: Vec<f64> = circle
        .order()
        .iter()
        .map(|&id| halfplanes[id].ny.to_f64().atan2(halfplanes[id].nx.to_f64()))
        .collect();
    let c = SIZE / 2.0;
    let r = SIZE * 0.22;
    let at = |radius: f64, theta: f64| (c + radius * theta.cos(), c - radius * theta.sin());

    let mut s = header();
    let _ = writeln!(
        s,
        r##"<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="#888"/>"##
    );
    for (pos, &theta) in angle.iter().enumerate() {
        let (x, y) = at(r, theta);
        let color = if pos < circle.t() {
            "#1f77b4"
        } else {
            "#ff7f0e"
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"><title>position {}</title></circle>"#,
            pos + 1
        );
    }
    let ring = (SIZE * 0.25 / arcs.len().max(1) as f64).min(14.0);
    for (k, arc) in arcs.iter().enumerate() {
        let radius = r + 14.0 + ring * k as f64;
        let positions: Vec<usize> = arc.positions(n).collect();
        let pad = 0.04;
        let mut thetas = vec![angle[positions[0]] - pad];
        for w in positions.windows(2) {
            let gap = (angle[w[1]] - angle[w[0]]).rem_euclid(TAU);
            thetas.extend((0..=8).map(|i| angle[w[0]] + gap * i as f64 / 8.0));
        }
        thetas.push(angle[*positions.last().unwrap()] + pad);
        let path: Vec<String> = thetas
            .iter()
            .map(|&t| {
                let (x, y) = at(radius, t);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let hue = (k * 47) % 360;
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="hsl({hue},60%,45%)" stroke-width="{:.1}"/>"#,
            path.join(" "),
            (ring * 0.7).max(1.5)
        );
        let mid = thetas[thetas.len() / 2];
        let (x, y) = at(radius, mid);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="10" text-anchor="middle">p{}</text>"#,
            arc.owner
        );
    }
    s.push_str("</svg>\n");
    Ok(Diagram::Svg(s))
}

fn header() -> String {
    format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    ) + "\n"
}

/// Points (chosen ones highlighted) and half-plane boundary lines, each with
/// a short tick on the side it contains.
pub fn instance_svg(inst: &Instance, chosen: &[usize]) -> String {
    let xs: Vec<f64> = inst.points().iter().map(|p| p.x.to_f64()).collect();
    let ys: Vec<f64> = inst.points().iter().map(|p| p.y.to_f64()).collect();
    let (lo_x, hi_x) = xs
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let (lo_y, hi_y) = ys
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &y| (a.min(y), b.max(y)));
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1.0) * 1.3;
    let (mx, my) = ((lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0);
    let scale = SIZE / span;
    let to_svg = |x: f64, y: f64| ((x - mx) * scale + SIZE / 2.0, SIZE / 2.0 - (y - my) * scale);

    let mut s = header();
    for h in inst.halfplanes() {
        let (a, b, c) = (h.nx.to_f64(), h.ny.to_f64(), h.c.to_f64());
        let half = span;
        let (p, q) = if b.abs() > a.abs() {
            let (x0, x1) = (mx - half, mx + half);
            ((x0, (c - a * x0) / b), (x1, (c - a * x1) / b))
        } else {
            let (y0, y1) = (my - half, my + half);
            (((c - b * y0) / a, y0), ((c - b * y1) / a, y1))
        };
        let (p, q) = (to_svg(p.0, p.1), to_svg(q.0, q.1));
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999"/>"##,
            p.0, p.1, q.0, q.1
        );
        // foot of the perpendicular from the view centre, then a tick inward
        let norm = (a * a + b * b).sqrt();
        let t = (c - a * mx - b * my) / (norm * norm);
        let foot = (mx + a * t, my + b * t);
        let tip = (
            foot.0 + a / norm * span * 0.03,
            foot.1 + b / norm * span * 0.03,
        );
        let (f, g) = (to_svg(foot.0, foot.1), to_svg(tip.0, tip.1));
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#555" stroke-width="2"/>"##,
            f.0, f.1, g.0, g.1
        );
    }
    for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
        let (px, py) = to_svg(x, y);
        let picked = chosen.contains(&i);
        let (r, fill) = if picked { (6, "#d62728") } else { (3, "#333") };
        let _ = writeln!(
            s,
            r#"<circle cx="{px:.2}" cy="{py:.2}" r="{r}" fill="{fill}"><title>p{i}</title></circle>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::e1;

    #[test]
    fn e1_diagram_has_four_positions_and_arcs() {
        let Diagram::Svg(text) = diagram(&e1()).unwrap() else {
            panic!("expected a drawing")
        };
        assert_eq!(text.matches("<title>position").count(), 4);
        assert_eq!(text.matches("#1f77b4").count(), 2);
        assert_eq!(text.matches("<polyline").count(), 4);
        assert!(text.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn instance_drawing_marks_choice() {
        let text = instance_svg(&e1(), &[0, 2]);
        assert_eq!(text.matches("#d62728").count(), 2);
        assert_eq!(text.matches("<line").count(), 8);
    }
}
