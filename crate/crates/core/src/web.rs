//! Separable webs as streamlines of the two eigen-direction fields of a
//! characteristic Killing tensor, plus singular-set geometry and SVG output.
//!
//! Everything here is floating point. Classification stays exact upstream;
//! this module only consumes the label and the exact singular-set data.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::classify::{classify, real_roots, NullFamily, OrbitClass, SingularSet};
use crate::error::{Error, Result};
use crate::tensor::{
    components_from_f64, discriminant_at_f64, eigenvector_2x2, eval_quadratic_f64, metric_product,
    mixed, KTParams, MetricSignature,
};

pub type Pt = (f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct WebRenderConfig {
    /// `(umin, umax, vmin, vmax)`.
    pub bbox: [f64; 4],
    /// Distance between neighbouring seeds of the seed grid.
    pub seed_spacing: f64,
    /// Fixed RK4 step, in arc length.
    pub step: f64,
    /// Maximal arc length traced in each direction from a seed.
    pub max_arc: f64,
    /// Curves stop where the discriminant drops below this value.
    pub singular_tol: f64,
    /// Cap on the number of steps per direction.
    pub samples_per_curve: usize,
}

impl Default for WebRenderConfig {
    fn default() -> Self {
        WebRenderConfig {
            bbox: [-3.0, 3.0, -3.0, 3.0],
            seed_spacing: 0.5,
            step: 0.01,
            max_arc: 20.0,
            singular_tol: 1e-6,
            samples_per_curve: 4000,
        }
    }
}

impl WebRenderConfig {
    pub fn with_box(mut self, bbox: [f64; 4]) -> Self {
        self.bbox = bbox;
        self
    }

    /// Seed spacing giving `n` seeds along the wider side of the box.
    pub fn with_seed_count(mut self, n: usize) -> Self {
        let [u0, u1, v0, v1] = self.bbox;
        self.seed_spacing = (u1 - u0).max(v1 - v0) / n.max(1) as f64;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let [u0, u1, v0, v1] = self.bbox;
        let finite = [u0, u1, v0, v1, self.seed_spacing, self.step, self.max_arc, self.singular_tol]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::Config("non-finite value".into()));
        }
        if !(u0 < u1 && v0 < v1) {
            return Err(Error::Config(format!("empty box {u0},{u1},{v0},{v1}")));
        }
        if self.step <= 0.0 || self.seed_spacing <= 0.0 || self.max_arc <= 0.0 {
            return Err(Error::Config("step, seed spacing and max_arc must be positive".into()));
        }
        if self.singular_tol <= 0.0 {
            return Err(Error::Config("singular_tol must be positive".into()));
        }
        if self.samples_per_curve == 0 {
            return Err(Error::Config("samples_per_curve must be positive".into()));
        }
        Ok(())
    }

    fn contains(&self, p: Pt) -> bool {
        let [u0, u1, v0, v1] = self.bbox;
        p.0 >= u0 && p.0 <= u1 && p.1 >= v0 && p.1 <= v1
    }
}

/// Float view of a tensor for hot loops.
#[derive(Clone, Copy, Debug)]
struct Field {
    sig: MetricSignature,
    c: [f64; 6],
}

impl Field {
    fn of(k: &KTParams) -> Self {
        Field {
            sig: k.signature,
            c: k.coeffs_f64(),
        }
    }

    fn directions(&self, p: Pt, tol: f64) -> Option<[[f64; 2]; 2]> {
        let km = components_from_f64(self.sig, self.c, p);
        let disc = discriminant_at_f64(self.sig, &km);
        if !(disc > tol) {
            return None;
        }
        let m = mixed(self.sig, &km);
        let tr = m[0][0] + m[1][1];
        let root = disc.sqrt();
        Some([
            eigenvector_2x2(m, (tr + root) / 2.0),
            eigenvector_2x2(m, (tr - root) / 2.0),
        ])
    }
}

/// Unit eigen-directions of `K^i_j` at `p`: first for the larger
/// eigenvalue, second for the smaller. `None` where the discriminant is not
/// above `tol` (double or complex eigenvalues).
pub fn eigen_directions(k: &KTParams, p: Pt, tol: f64) -> Option<[[f64; 2]; 2]> {
    Field::of(k).directions(p, tol)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct WebDocument {
    pub class: Option<OrbitClass>,
    pub signature: Option<MetricSignature>,
    /// Leaves of the first foliation (larger eigenvalue), drawn solid.
    pub foliation_solid: Vec<Vec<Pt>>,
    /// Leaves of the second foliation, drawn dashed.
    pub foliation_dashed: Vec<Vec<Pt>>,
    pub singular_boundaries: Vec<Vec<Pt>>,
    pub singular_regions: Vec<Vec<Pt>>,
}

impl WebDocument {
    pub fn is_empty(&self) -> bool {
        self.foliation_solid.is_empty() && self.foliation_dashed.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.foliation_solid
            .iter()
            .chain(&self.foliation_dashed)
            .map(Vec::len)
            .sum()
    }
}

/// Largest turn between consecutive steps before a curve is cut; guards
/// against jumping to the other foliation next to a singular point.
const MAX_TURN_COS: f64 = 0.95;

pub fn trace_web(k: &KTParams, cfg: &WebRenderConfig) -> Result<WebDocument> {
    cfg.validate()?;
    let report = classify(k);
    if !report.class.characteristic() {
        return Err(Error::NotCharacteristic(report.class.label().to_string()));
    }
    let field = Field::of(k);
    let mut doc = WebDocument {
        class: Some(report.class),
        signature: Some(k.signature),
        ..WebDocument::default()
    };

    let [u0, u1, v0, v1] = cfg.bbox;
    let h = cfg.seed_spacing;
    let nu = ((u1 - u0) / h).floor().max(1.0) as usize;
    let nv = ((v1 - v0) / h).floor().max(1.0) as usize;
    let cell = h / 2.0;
    let cell_of = |p: Pt| (((p.0 - u0) / cell).floor() as i64, ((p.1 - v0) / cell).floor() as i64);

    for fol in 0..2 {
        let mut visited: HashSet<(i64, i64)> = HashSet::new();
        let mut leaves = Vec::new();
        for j in 0..nv {
            for i in 0..nu {
                let seed = (u0 + (i as f64 + 0.5) * (u1 - u0) / nu as f64, v0 + (j as f64 + 0.5) * (v1 - v0) / nv as f64);
                if visited.contains(&cell_of(seed)) {
                    continue;
                }
                let Some(dirs) = field.directions(seed, cfg.singular_tol) else {
                    continue;
                };
                let d = dirs[fol];
                let (fwd, closed) = trace_half(&field, cfg, seed, fol, d);
                let mut leaf = if closed {
                    vec![seed]
                } else {
                    let (mut back, _) = trace_half(&field, cfg, seed, fol, [-d[0], -d[1]]);
                    back.reverse();
                    back.push(seed);
                    back
                };
                leaf.extend(fwd);
                if leaf.len() < 2 {
                    continue;
                }
                visited.extend(leaf.iter().map(|&p| cell_of(p)));
                leaves.push(leaf);
            }
        }
        if fol == 0 {
            doc.foliation_solid = leaves;
        } else {
            doc.foliation_dashed = leaves;
        }
    }

    let set = report.singular_set;
    add_singular_geometry(&mut doc, &set, cfg);
    Ok(doc)
}

fn align(d: [f64; 2], prev: [f64; 2]) -> [f64; 2] {
    if d[0] * prev[0] + d[1] * prev[1] < 0.0 {
        [-d[0], -d[1]]
    } else {
        d
    }
}

/// Points after `seed` along foliation `fol`, starting in direction `dir`,
/// and whether the leaf closed up on itself (the last point is then the
/// seed).
fn trace_half(field: &Field, cfg: &WebRenderConfig, seed: Pt, fol: usize, dir: [f64; 2]) -> (Vec<Pt>, bool) {
    let tol = cfg.singular_tol;
    let h = cfg.step;
    let dir_at = |p: Pt, prev: [f64; 2]| field.directions(p, tol).map(|d| align(d[fol], prev));
    let mut out = Vec::new();
    let mut p = seed;
    let mut prev = dir;
    let mut arc = 0.0;
    for _ in 0..cfg.samples_per_curve {
        let Some(k1) = dir_at(p, prev) else { break };
        let Some(k2) = dir_at((p.0 + 0.5 * h * k1[0], p.1 + 0.5 * h * k1[1]), k1) else { break };
        let Some(k3) = dir_at((p.0 + 0.5 * h * k2[0], p.1 + 0.5 * h * k2[1]), k1) else { break };
        let Some(k4) = dir_at((p.0 + h * k3[0], p.1 + h * k3[1]), k1) else { break };
        let next = (
            p.0 + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            p.1 + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        );
        if !cfg.contains(next) {
            break;
        }
        let Some(kn) = dir_at(next, k1) else { break };
        if kn[0] * k1[0] + kn[1] * k1[1] < MAX_TURN_COS {
            break;
        }
        arc += h;
        // Back at the seed after at least a small loop: close the leaf.
        if arc > 4.0 * h && (next.0 - seed.0).hypot(next.1 - seed.1) < 0.75 * h {
            out.push(seed);
            return (out, true);
        }
        out.push(next);
        p = next;
        prev = kn;
        if arc >= cfg.max_arc {
            break;
        }
    }
    (out, false)
}

fn add_singular_geometry(doc: &mut WebDocument, set: &SingularSet, cfg: &WebRenderConfig) {
    let [u0, u1, v0, v1] = cfg.bbox;
    let arm = 0.015 * (u1 - u0).max(v1 - v0);
    for (x, y) in set.points_f64() {
        doc.singular_boundaries.push(vec![(x - arm, y - arm), (x + arm, y + arm)]);
        doc.singular_boundaries.push(vec![(x - arm, y + arm), (x + arm, y - arm)]);
    }
    let Some(f) = set.null_factors() else { return };

    // In null coordinates s = t + x, r = x - t the plane is (t, x) =
    // ((s - r)/2, (s + r)/2) and the singular set is a union of products
    // of intervals on which the two factors have opposite signs.
    let to_plane = |s: f64, r: f64| ((s - r) / 2.0, (s + r) / 2.0);
    let extent = [u0, u1, v0, v1].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for line in set.boundary_lines() {
        let far = 4.0 * (extent + line.offset.abs() + 1.0);
        let (a, b) = match line.family {
            NullFamily::Plus => (to_plane(line.offset, -far), to_plane(line.offset, far)),
            NullFamily::Minus => (to_plane(-far, line.offset), to_plane(far, line.offset)),
        };
        if let Some(seg) = clip_segment(a, b, cfg.bbox) {
            doc.singular_boundaries.push(seg);
        }
    }

    let splus = real_roots(&f.plus);
    let sminus = real_roots(&f.minus);
    let bound = 4.0 * (extent + splus.iter().chain(&sminus).fold(0.0f64, |m, x| m.max(x.abs())) + 1.0);
    let intervals = |roots: &[f64]| {
        let mut cuts = vec![-bound];
        cuts.extend_from_slice(roots);
        cuts.push(bound);
        cuts.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()
    };
    for (s0, s1) in intervals(&splus) {
        let sp = eval_quadratic_f64(&f.plus, (s0 + s1) / 2.0);
        for &(r0, r1) in &intervals(&sminus) {
            let sm = eval_quadratic_f64(&f.minus, (r0 + r1) / 2.0);
            if sp * sm >= 0.0 {
                continue;
            }
            let quad = vec![to_plane(s0, r0), to_plane(s1, r0), to_plane(s1, r1), to_plane(s0, r1)];
            let clipped = clip_polygon(&quad, cfg.bbox);
            if clipped.len() >= 3 {
                doc.singular_regions.push(clipped);
            }
        }
    }
}

/// Liang-Barsky clipping of the segment `a b` to the box.
fn clip_segment(a: Pt, b: Pt, bbox: [f64; 4]) -> Option<Vec<Pt>> {
    let [u0, u1, v0, v1] = bbox;
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for (p, q) in [(-dx, a.0 - u0), (dx, u1 - a.0), (-dy, a.1 - v0), (dy, v1 - a.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let t = q / p;
        if p < 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
    }
    (lo < hi).then(|| vec![(a.0 + lo * dx, a.1 + lo * dy), (a.0 + hi * dx, a.1 + hi * dy)])
}

/// Sutherland-Hodgman clipping of a convex polygon to the box.
fn clip_polygon(poly: &[Pt], bbox: [f64; 4]) -> Vec<Pt> {
    let [u0, u1, v0, v1] = bbox;
    let edges: [(usize, f64, bool); 4] = [(0, u0, true), (0, u1, false), (1, v0, true), (1, v1, false)];
    let mut out = poly.to_vec();
    for (axis, bound, keep_above) in edges {
        let coord = |p: &Pt| if axis == 0 { p.0 } else { p.1 };
        let inside = |p: &Pt| if keep_above { coord(p) >= bound } else { coord(p) <= bound };
        let input = std::mem::take(&mut out);
        for i in 0..input.len() {
            let cur = input[i];
            let prev = input[(i + input.len() - 1) % input.len()];
            let cross = |p: Pt, q: Pt| {
                let t = (bound - coord(&p)) / (coord(&q) - coord(&p));
                (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
            };
            match (inside(&prev), inside(&cur)) {
                (true, true) => out.push(cur),
                (true, false) => out.push(cross(prev, cur)),
                (false, true) => {
                    out.push(cross(prev, cur));
                    out.push(cur);
                }
                (false, false) => {}
            }
        }
        if out.is_empty() {
            break;
        }
    }
    out
}

/// Largest angle (radians) between a chord of a leaf and the eigen-direction
/// of its foliation at the chord midpoint, over all chords of `doc`.
pub fn max_tangency_defect(k: &KTParams, doc: &WebDocument, tol: f64) -> f64 {
    let field = Field::of(k);
    let mut worst = 0.0f64;
    for (fol, leaves) in [(0, &doc.foliation_solid), (1, &doc.foliation_dashed)] {
        for leaf in leaves {
            for w in leaf.windows(2) {
                let (a, b) = (w[0], w[1]);
                let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
                let Some(d) = field.directions(mid, tol) else { continue };
                let chord = [b.0 - a.0, b.1 - a.1];
                let len = chord[0].hypot(chord[1]);
                if len == 0.0 {
                    continue;
                }
                let e = d[fol];
                let sin = (chord[0] * e[1] - chord[1] * e[0]).abs() / len;
                worst = worst.max(sin.min(1.0).asin());
            }
        }
    }
    worst
}

/// Largest `|g(u, w)|` of the two unit eigen-directions over all interior
/// vertices of `doc` where both are defined.
pub fn max_orthogonality_defect(k: &KTParams, doc: &WebDocument, tol: f64) -> f64 {
    let field = Field::of(k);
    doc.foliation_solid
        .iter()
        .chain(&doc.foliation_dashed)
        .flat_map(|leaf| leaf.iter().skip(1).take(leaf.len().saturating_sub(2)))
        .filter_map(|&p| field.directions(p, tol))
        .map(|[u, w]| metric_product(field.sig, u, w).abs())
        .fold(0.0, f64::max)
}

fn num(x: f64) -> String {
    let s = format!("{x:.5}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn path_data(points: &[Pt], close: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(p.0), num(p.1));
    }
    if close {
        d.push_str(" Z");
    }
    d
}

/// Deterministic SVG 1.1 rendering with the y axis pointing up.
pub fn render_svg(doc: &WebDocument, cfg: &WebRenderConfig) -> String {
    let [u0, u1, v0, v1] = cfg.bbox;
    let (w, h) = (u1 - u0, v1 - v0);
    let px_w = 600.0;
    let px_h = px_w * h / w;
    let lw = 0.003 * w.max(h);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(px_w),
        num(px_h),
        num(u0),
        num(-v1),
        num(w),
        num(h)
    );
    let title = match (doc.class, doc.signature) {
        (Some(c), Some(sig)) => format!("{} web ({}, {})", c.web_name(), c.label(), sig.name()),
        _ => "empty web".to_string(),
    };
    let _ = writeln!(s, "<title>{title}</title>");
    let _ = writeln!(
        s,
        "<style type=\"text/css\">\
.fol1{{fill:none;stroke:#000;stroke-width:{lw}}}\
.fol2{{fill:none;stroke:#000;stroke-width:{lw};stroke-dasharray:{d1},{d2}}}\
.sing-boundary{{fill:none;stroke:#808080;stroke-width:{lw2}}}\
.sing-region{{fill:#e0e0e0;stroke:none}}\
.canvas{{fill:#fff;stroke:#000;stroke-width:{lw}}}</style>",
        lw = num(lw),
        lw2 = num(1.5 * lw),
        d1 = num(4.0 * lw),
        d2 = num(3.0 * lw),
    );
    s.push_str("<g transform=\"scale(1,-1)\">\n");
    let _ = writeln!(
        s,
        "<rect class=\"canvas\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
        num(u0),
        num(v0),
        num(w),
        num(h)
    );
    for region in &doc.singular_regions {
        let _ = writeln!(s, "<path class=\"sing-region\" d=\"{}\"/>", path_data(region, true));
    }
    for (class, lines) in [("fol1", &doc.foliation_solid), ("fol2", &doc.foliation_dashed), ("sing-boundary", &doc.singular_boundaries)] {
        for line in lines {
            let _ = writeln!(s, "<path class=\"{class}\" d=\"{}\"/>", path_data(line, false));
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Float discriminant `(tr)^2 - 4 det` of `K^i_j` at `p`.
pub fn discriminant_f64(k: &KTParams, p: Pt) -> f64 {
    let f = Field::of(k);
    discriminant_at_f64(f.sig, &components_from_f64(f.sig, f.c, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::representatives;

    fn close(a: [f64; 2], b: [f64; 2]) -> bool {
        // Directions up to sign.
        ((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12)
            || ((a[0] + b[0]).abs() < 1e-12 && (a[1] + b[1]).abs() < 1e-12)
    }

    #[test]
    fn polar_directions_at_unit_x() {
        let k = KTParams::euclidean([0, 0, 0, 0, 0, 1]);
        let [d1, d2] = eigen_directions(&k, (1.0, 0.0), 1e-9).unwrap();
        assert!(close(d1, [0.0, 1.0]) && close(d2, [1.0, 0.0]));
    }

    #[test]
    fn degenerate_points() {
        let e1 = KTParams::euclidean([0, 0, 1, 0, 0, 1]);
        assert!(eigen_directions(&e1, (1.0, 1.0), 1e-9).is_none());
        for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
            let g = crate::tensor::metric_tensor(sig);
            assert!(eigen_directions(&g, (0.3, -1.7), 1e-9).is_none());
        }
    }

    #[test]
    fn non_characteristic_is_rejected() {
        let k = KTParams::minkowski([1, 1, 1, 0, 0, 0]);
        let err = trace_web(&k, &WebRenderConfig::default()).unwrap_err();
        assert_eq!(err, Error::NotCharacteristic("M13".into()));
        assert!(err.to_string().contains("M13"));
    }

    #[test]
    fn bad_config_is_rejected() {
        let k = KTParams::euclidean([1, 0, 0, 0, 0, 0]);
        let cfg = WebRenderConfig::default().with_box([1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(trace_web(&k, &cfg), Err(Error::Config(_))));
        let cfg = WebRenderConfig {
            step: 0.0,
            ..WebRenderConfig::default()
        };
        assert!(matches!(trace_web(&k, &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn cartesian_web_is_axis_parallel() {
        let k = KTParams::euclidean([1, 0, 0, 0, 0, 0]);
        let doc = trace_web(&k, &WebRenderConfig::default()).unwrap();
        assert!(!doc.is_empty());
        for leaf in &doc.foliation_solid {
            assert!(leaf.iter().all(|p| (p.1 - leaf[0].1).abs() < 1e-12));
        }
        for leaf in &doc.foliation_dashed {
            assert!(leaf.iter().all(|p| (p.0 - leaf[0].0).abs() < 1e-12));
        }
        assert!(doc.singular_boundaries.is_empty() && doc.singular_regions.is_empty());
    }

    #[test]
    fn polar_web_has_circles_and_rays() {
        let k = KTParams::euclidean([0, 0, 0, 0, 0, 1]);
        let doc = trace_web(&k, &WebRenderConfig::default()).unwrap();
        // Larger eigenvalue x^2 + y^2 belongs to the angular direction.
        for leaf in &doc.foliation_solid {
            let r0 = leaf[0].0.hypot(leaf[0].1);
            assert!(leaf.iter().all(|p| (p.0.hypot(p.1) - r0).abs() < 1e-6));
        }
        for leaf in &doc.foliation_dashed {
            let a = leaf[0];
            assert!(leaf.iter().all(|p| (p.0 * a.1 - p.1 * a.0).abs() < 1e-6));
        }
        assert_eq!(doc.singular_boundaries.len(), 2);
    }

    #[test]
    fn closed_leaves_are_traced_once() {
        let k = KTParams::euclidean([0, 0, 0, 0, 0, 1]);
        let doc = trace_web(&k, &WebRenderConfig::default()).unwrap();
        let cfg = WebRenderConfig::default();
        for leaf in &doc.foliation_solid {
            let r = leaf[0].0.hypot(leaf[0].1);
            let len: f64 = leaf.windows(2).map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1)).sum();
            if 2.0 * std::f64::consts::PI * r < cfg.max_arc && r < 2.9 {
                assert_eq!(leaf.first(), leaf.last());
                assert!(len < 2.0 * std::f64::consts::PI * r + 2.0 * cfg.step, "r = {r}, length {len}");
            }
        }
    }

    #[test]
    fn strip_region_for_m2() {
        let k = representatives(OrbitClass::M2)[0].clone();
        let doc = trace_web(&k, &WebRenderConfig::default()).unwrap();
        assert_eq!(doc.singular_regions.len(), 1);
        assert_eq!(doc.singular_boundaries.len(), 2);
        let svg = render_svg(&doc, &WebRenderConfig::default());
        assert!(svg.contains("class=\"sing-region\""));
    }

    #[test]
    fn leaves_stay_out_of_the_singular_set() {
        let cfg = WebRenderConfig::default();
        for (c, k) in crate::classify::atlas() {
            if !c.characteristic() {
                continue;
            }
            let doc = trace_web(&k, &cfg).unwrap();
            for p in doc.foliation_solid.iter().chain(&doc.foliation_dashed).flatten() {
                assert!(cfg.contains(*p));
                assert!(discriminant_f64(&k, *p) >= -cfg.singular_tol, "{c} {p:?}");
            }
        }
    }

    #[test]
    fn empty_document_renders() {
        let svg = render_svg(&WebDocument::default(), &WebRenderConfig::default());
        assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn clipping() {
        let sq = vec![(-10.0, 0.0), (0.0, -10.0), (10.0, 0.0), (0.0, 10.0)];
        let c = clip_polygon(&sq, [-1.0, 1.0, -1.0, 1.0]);
        assert_eq!(c.len(), 4);
        assert!(clip_segment((-5.0, 2.0), (5.0, 2.0), [-1.0, 1.0, -1.0, 1.0]).is_none());
        let s = clip_segment((-5.0, -5.0), (5.0, 5.0), [-1.0, 1.0, -1.0, 1.0]).unwrap();
        assert_eq!(s, vec![(-1.0, -1.0), (1.0, 1.0)]);
    }

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(2.0), "2");
    }
}
