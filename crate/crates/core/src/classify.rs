//! Orbit decision procedure, singular-set taxonomy and the atlas of
//! representative tensors.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::generator_rank;
use crate::invariants::{surface_flags, Invariants, SurfaceFlags};
use crate::rational::{int, to_f64, Rational};
use crate::tensor::{null_factors, KTParams, MetricSignature, NullFactors};

/// Orbit of the web-preserving group: E1..E5 in the Euclidean plane,
/// M1..M14 in the Minkowski plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitClass {
    E1,
    E2,
    E3,
    E4,
    E5,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
    M10,
    M11,
    M12,
    M13,
    M14,
}

use OrbitClass::*;

impl OrbitClass {
    pub const ALL: [OrbitClass; 19] = [
        E1, E2, E3, E4, E5, M1, M2, M3, M4, M5, M6, M7, M8, M9, M10, M11, M12, M13, M14,
    ];

    pub fn label(self) -> &'static str {
        match self {
            E1 => "E1",
            E2 => "E2",
            E3 => "E3",
            E4 => "E4",
            E5 => "E5",
            M1 => "M1",
            M2 => "M2",
            M3 => "M3",
            M4 => "M4",
            M5 => "M5",
            M6 => "M6",
            M7 => "M7",
            M8 => "M8",
            M9 => "M9",
            M10 => "M10",
            M11 => "M11",
            M12 => "M12",
            M13 => "M13",
            M14 => "M14",
        }
    }

    pub fn from_label(s: &str) -> Option<OrbitClass> {
        OrbitClass::ALL.into_iter().find(|c| c.label().eq_ignore_ascii_case(s.trim()))
    }

    pub fn signature(self) -> MetricSignature {
        match self {
            E1 | E2 | E3 | E4 | E5 => MetricSignature::Euclidean,
            _ => MetricSignature::Minkowski,
        }
    }

    pub fn web_name(self) -> &'static str {
        match self {
            E1 => "elliptic-hyperbolic coordinates",
            E2 => "parabolic coordinates",
            E3 => "polar coordinates",
            E4 => "Cartesian coordinates",
            E5 => "multiples of the metric",
            M1 => "elliptic coordinates of type I",
            M2 => "hyperbolic coordinates of type I",
            M3 => "elliptic coordinates of type II",
            M4 => "hyperbolic coordinates of type II",
            M5 => "hyperbolic coordinates of type III",
            M6 => "polar coordinates",
            M7 => "parabolic coordinates of type I, first web",
            M8 => "parabolic coordinates of type I, second web",
            M9 => "parabolic coordinates of type II",
            M10 | M12 | M13 => "no characteristic tensors",
            M11 => "Cartesian coordinates",
            M14 => "multiples of the metric",
        }
    }

    /// Labels in the Minkowski separable-coordinate taxonomy.
    pub fn sc_labels(self) -> &'static [&'static str] {
        match self {
            M1 => &["SC9"],
            M2 => &["SC8"],
            M3 => &["SC5", "SC10"],
            M4 => &["SC6"],
            M5 => &["SC7"],
            M6 => &["SC2"],
            M7 | M8 => &["SC4"],
            M9 => &["SC3"],
            M11 => &["SC1"],
            _ => &[],
        }
    }

    /// Rank of the generator matrix, i.e. the orbit dimension.
    pub fn expected_rank(self) -> usize {
        match self {
            E1 => 6,
            E2 => 5,
            E3 => 4,
            E4 => 3,
            E5 => 1,
            M1 | M2 | M3 => 6,
            M4 | M5 => 5,
            M6 => 4,
            M7 | M8 => 5,
            M9 => 4,
            M10 | M11 | M12 => 3,
            M13 => 2,
            M14 => 1,
        }
    }

    /// Whether the orbit consists of characteristic tensors, i.e. defines a
    /// separable web.
    pub fn characteristic(self) -> bool {
        !matches!(self, E5 | M10 | M12 | M13 | M14)
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where the eigenvalues of the tensor fail to be real and simple.
///
/// Euclidean sets are points. Minkowski sets are unions of bands bounded by
/// lines parallel to the null directions; their exact data is the pair of
/// quadratic factors of the discriminant in the null coordinates
/// `s = t + x` and `r = x - t`, whose real roots are the boundary lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularSet {
    Empty,
    OnePoint {
        point: [Rational; 2],
    },
    /// The points `center +- z` where `z` (as `x + i y`) is a complex
    /// square root of `offset_square`.
    TwoPoints {
        center: [Rational; 2],
        offset_square: [Rational; 2],
    },
    Line(NullFactors),
    TwoOrthogonalLines(NullFactors),
    Strip(NullFactors),
    StripPlusOrthogonalLine(NullFactors),
    TwoStripsMinusIntersection(NullFactors),
    HalfPlane(NullFactors),
    TwoOppositeQuadrants(NullFactors),
    WholePlane,
}

/// A line `s = offset` (family `Plus`, `s = t + x`) or `r = offset`
/// (family `Minus`, `r = x - t`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullLine {
    pub family: NullFamily,
    pub offset: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NullFamily {
    Plus,
    Minus,
}

impl SingularSet {
    pub fn kind(&self) -> &'static str {
        match self {
            SingularSet::Empty => "Empty",
            SingularSet::OnePoint { .. } => "OnePoint",
            SingularSet::TwoPoints { .. } => "TwoPoints",
            SingularSet::Line(_) => "Line",
            SingularSet::TwoOrthogonalLines(_) => "TwoOrthogonalLines",
            SingularSet::Strip(_) => "Strip",
            SingularSet::StripPlusOrthogonalLine(_) => "StripPlusOrthogonalLine",
            SingularSet::TwoStripsMinusIntersection(_) => "TwoStripsMinusIntersection",
            SingularSet::HalfPlane(_) => "HalfPlane",
            SingularSet::TwoOppositeQuadrants(_) => "TwoOppositeQuadrants",
            SingularSet::WholePlane => "WholePlane",
        }
    }

    pub fn null_factors(&self) -> Option<&NullFactors> {
        match self {
            SingularSet::Line(f)
            | SingularSet::TwoOrthogonalLines(f)
            | SingularSet::Strip(f)
            | SingularSet::StripPlusOrthogonalLine(f)
            | SingularSet::TwoStripsMinusIntersection(f)
            | SingularSet::HalfPlane(f)
            | SingularSet::TwoOppositeQuadrants(f) => Some(f),
            _ => None,
        }
    }

    /// Isolated singular points (Euclidean), as floats.
    pub fn points_f64(&self) -> Vec<(f64, f64)> {
        match self {
            SingularSet::OnePoint { point } => vec![(to_f64(&point[0]), to_f64(&point[1]))],
            SingularSet::TwoPoints {
                center,
                offset_square,
            } => {
                let (re, im) = complex_sqrt(to_f64(&offset_square[0]), to_f64(&offset_square[1]));
                let (cx, cy) = (to_f64(&center[0]), to_f64(&center[1]));
                vec![(cx + re, cy + im), (cx - re, cy - im)]
            }
            _ => Vec::new(),
        }
    }

    /// Boundary lines of a Minkowski singular set, as floats.
    pub fn boundary_lines(&self) -> Vec<NullLine> {
        let Some(f) = self.null_factors() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (family, q) in [(NullFamily::Plus, &f.plus), (NullFamily::Minus, &f.minus)] {
            for offset in real_roots(q) {
                out.push(NullLine { family, offset });
            }
        }
        out
    }
}

fn complex_sqrt(re: f64, im: f64) -> (f64, f64) {
    let r = re.hypot(im);
    let a = ((r + re) / 2.0).max(0.0).sqrt();
    let b = ((r - re) / 2.0).max(0.0).sqrt();
    (a, if im < 0.0 { -b } else { b })
}

/// Distinct real roots of `c0 + c1 s + c2 s^2`, ascending. A polynomial that
/// vanishes identically has no isolated roots.
pub fn real_roots(c: &[Rational; 3]) -> Vec<f64> {
    let [c0, c1, c2] = c;
    if c2.is_zero() {
        if c1.is_zero() {
            return Vec::new();
        }
        return vec![to_f64(&(-c0 / c1))];
    }
    let disc = c1 * c1 - int(4) * c0 * c2;
    if disc.is_negative() {
        return Vec::new();
    }
    let (a, b) = (to_f64(c2), to_f64(c1));
    if disc.is_zero() {
        return vec![to_f64(&(-c1 / (int(2) * c2)))];
    }
    let sq = to_f64(&disc).sqrt();
    let mut r = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)];
    r.sort_by(|x, y| x.partial_cmp(y).unwrap());
    r.to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub class: OrbitClass,
    pub invariants: Invariants,
    pub surface_flags: SurfaceFlags,
    pub rank: usize,
    pub is_zero: bool,
    pub singular_set: SingularSet,
}

/// Label only, without rank or singular-set computation.
pub fn classify_label(k: &KTParams) -> OrbitClass {
    match Invariants::of(k) {
        Invariants::Euclidean(inv) => {
            if !inv.gamma.is_zero() {
                if inv.delta.is_zero() {
                    E3
                } else {
                    E1
                }
            } else if !k.alpha.is_zero() || !k.beta.is_zero() {
                E2
            } else if k.a != k.b || !k.c.is_zero() {
                E4
            } else {
                E5
            }
        }
        Invariants::Minkowski(inv) => {
            let sp = inv.z_plus.signum();
            let sm = inv.z_minus.signum();
            if !inv.gamma.is_zero() {
                let (p, m) = (sign_of(&sp), sign_of(&sm));
                match (p, m) {
                    (1, 1) => M1,
                    (-1, -1) => M3,
                    (1, -1) | (-1, 1) => M2,
                    (0, 0) => M6,
                    (0, o) | (o, 0) if o > 0 => M4,
                    _ => M5,
                }
            } else {
                let a2 = &k.alpha * &k.alpha;
                let b2 = &k.beta * &k.beta;
                if a2 != b2 {
                    if a2 > b2 {
                        M7
                    } else {
                        M8
                    }
                } else if !k.alpha.is_zero() {
                    let sum = &k.a + &k.b;
                    let two_c = int(2) * &k.c;
                    let on_branch = if k.alpha == k.beta {
                        sum == two_c
                    } else {
                        sum == -two_c
                    };
                    if on_branch {
                        M10
                    } else {
                        M9
                    }
                } else if inv.p_cart.is_positive() {
                    M11
                } else if inv.p_cart.is_negative() {
                    M12
                } else if !(&k.a + &k.b).is_zero() || !k.c.is_zero() {
                    M13
                } else {
                    M14
                }
            }
        }
    }
}

fn sign_of(r: &Rational) -> i8 {
    crate::rational::sign(r)
}

pub fn classify(k: &KTParams) -> ClassificationReport {
    let class = classify_label(k);
    ClassificationReport {
        class,
        invariants: Invariants::of(k),
        surface_flags: surface_flags(k),
        rank: generator_rank(k),
        is_zero: k.is_zero(),
        singular_set: singular_set_for(k, class),
    }
}

pub fn same_orbit(k1: &KTParams, k2: &KTParams) -> Result<bool> {
    if k1.signature != k2.signature {
        return Err(Error::SignatureMismatch(k1.signature, k2.signature));
    }
    Ok(classify_label(k1) == classify_label(k2))
}

pub fn singular_set(k: &KTParams) -> SingularSet {
    singular_set_for(k, classify_label(k))
}

fn singular_set_for(k: &KTParams, class: OrbitClass) -> SingularSet {
    let factors = || null_factors(k).expect("Minkowski class");
    match class {
        E1 => {
            let g2 = &k.gamma * &k.gamma;
            let p = (&k.gamma * &k.c + &k.alpha * &k.beta) / &g2;
            let q = (&k.alpha * &k.alpha - &k.beta * &k.beta - &k.gamma * (&k.a - &k.b)) / &g2;
            SingularSet::TwoPoints {
                center: euclid_center(k),
                offset_square: [-q, int(2) * p],
            }
        }
        E2 => {
            // alpha x + beta y = C, -2 beta x + 2 alpha y = B - A
            let d = int(2) * (&k.alpha * &k.alpha + &k.beta * &k.beta);
            let bma = &k.b - &k.a;
            let x = (int(2) * &k.alpha * &k.c - &k.beta * &bma) / &d;
            let y = (&k.alpha * &bma + int(2) * &k.beta * &k.c) / &d;
            SingularSet::OnePoint { point: [x, y] }
        }
        E3 => SingularSet::OnePoint {
            point: euclid_center(k),
        },
        E4 | M1 | M11 => SingularSet::Empty,
        E5 | M10 | M12 | M13 | M14 => SingularSet::WholePlane,
        M2 => SingularSet::Strip(factors()),
        M3 => SingularSet::TwoStripsMinusIntersection(factors()),
        M4 => SingularSet::Line(factors()),
        M5 => SingularSet::StripPlusOrthogonalLine(factors()),
        M6 => SingularSet::TwoOrthogonalLines(factors()),
        M7 | M8 => SingularSet::TwoOppositeQuadrants(factors()),
        M9 => SingularSet::HalfPlane(factors()),
    }
}

fn euclid_center(k: &KTParams) -> [Rational; 2] {
    [-&k.beta / &k.gamma, -&k.alpha / &k.gamma]
}

/// Representative tensors of each orbit, as `(A, B, C, alpha, beta, gamma)`.
pub fn representatives(class: OrbitClass) -> Vec<KTParams> {
    let e = KTParams::euclidean;
    let m = KTParams::minkowski;
    match class {
        E1 => vec![e([0, 0, 1, 0, 0, 1])],
        E2 => vec![e([0, 0, 0, 1, 0, 0]), e([0, 0, 0, 0, 1, 0])],
        E3 => vec![e([0, 0, 0, 0, 0, 1])],
        E4 => vec![e([1, 0, 0, 0, 0, 0]), e([0, 1, 0, 0, 0, 0]), e([0, 0, 1, 0, 0, 0])],
        E5 => vec![e([1, 1, 0, 0, 0, 0])],
        M1 => vec![m([0, 1, 0, 0, 0, 1])],
        M2 => vec![m([0, 0, 1, 0, 0, 1])],
        M3 => vec![m([0, -1, 0, 0, 0, 1])],
        M4 => vec![m([1, 1, 1, 0, 0, 1]), m([1, 1, -1, 0, 0, 1])],
        M5 => vec![m([-1, -1, -1, 0, 0, 1]), m([-1, -1, 1, 0, 0, 1])],
        M6 => vec![m([0, 0, 0, 0, 0, 1])],
        M7 => vec![m([0, 0, 0, 1, 0, 0])],
        M8 => vec![m([0, 0, 0, 0, 1, 0])],
        M9 => vec![m([1, 1, 0, 1, 1, 0]), m([1, 1, -1, 1, 1, 0])],
        M10 => vec![m([0, 0, 0, 1, 1, 0])],
        M11 => vec![m([1, 0, 0, 0, 0, 0])],
        M12 => vec![m([0, 0, 1, 0, 0, 0])],
        M13 => vec![m([1, 1, 1, 0, 0, 0])],
        M14 => vec![m([1, -1, 0, 0, 0, 0])],
    }
}

/// Every representative paired with its expected class.
pub fn atlas() -> Vec<(OrbitClass, KTParams)> {
    OrbitClass::ALL
        .iter()
        .flat_map(|&c| representatives(c).into_iter().map(move |k| (c, k)))
        .collect()
}
