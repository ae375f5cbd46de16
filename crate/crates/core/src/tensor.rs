//! The six-parameter families of Killing 2-tensors of the flat planes.
//!
//! Coordinates are `(u, v)`: `(x, y)` in the Euclidean plane, `(t, x)` in
//! the Minkowski plane with contravariant metric `diag(1, -1)`. Components
//! are contravariant, `K^{ij}`.
//!
//! Euclidean:
//! ```text
//! K11 = A + 2 alpha y + gamma y^2
//! K12 = C - alpha x - beta y - gamma x y
//! K22 = B + 2 beta x + gamma x^2
//! ```
//! Minkowski:
//! ```text
//! K11 = A + 2 alpha x + gamma x^2
//! K12 = C + alpha t + beta x + gamma t x
//! K22 = B + 2 beta t + gamma t^2
//! ```

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, int, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricSignature {
    Euclidean,
    Minkowski,
}

impl MetricSignature {
    /// Diagonal of `g^{ij}` (equal to `g_{ij}` for these metrics).
    pub fn metric_diag(self) -> [i64; 2] {
        match self {
            MetricSignature::Euclidean => [1, 1],
            MetricSignature::Minkowski => [1, -1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricSignature::Euclidean => "euclidean",
            MetricSignature::Minkowski => "minkowski",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "euclidean" | "e2" | "e" => Ok(MetricSignature::Euclidean),
            "minkowski" | "m2" | "m" => Ok(MetricSignature::Minkowski),
            other => Err(Error::Parse(format!("unknown metric {other:?}"))),
        }
    }
}

/// Point of the six-dimensional parameter space `(A, B, C, alpha, beta, gamma)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KTParams {
    pub signature: MetricSignature,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl KTParams {
    pub fn from_coeffs(signature: MetricSignature, c: [Rational; 6]) -> Self {
        let [a, b, cc, alpha, beta, gamma] = c;
        KTParams {
            signature,
            a,
            b,
            c: cc,
            alpha,
            beta,
            gamma,
        }
    }

    pub fn from_i64(signature: MetricSignature, c: [i64; 6]) -> Self {
        KTParams::from_coeffs(signature, c.map(int))
    }

    pub fn euclidean(c: [i64; 6]) -> Self {
        KTParams::from_i64(MetricSignature::Euclidean, c)
    }

    pub fn minkowski(c: [i64; 6]) -> Self {
        KTParams::from_i64(MetricSignature::Minkowski, c)
    }

    pub fn zero(signature: MetricSignature) -> Self {
        KTParams::from_i64(signature, [0; 6])
    }

    /// `(A, B, C, alpha, beta, gamma)`.
    pub fn coeffs(&self) -> [Rational; 6] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
        ]
    }

    pub fn coeffs_f64(&self) -> [f64; 6] {
        self.coeffs().map(|x| to_f64(&x))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, lambda: &Rational) -> KTParams {
        KTParams::from_coeffs(self.signature, self.coeffs().map(|x| x * lambda))
    }

    pub fn require(&self, expected: MetricSignature) -> Result<()> {
        if self.signature == expected {
            Ok(())
        } else {
            Err(Error::WrongSignature {
                expected,
                found: self.signature,
            })
        }
    }
}

impl fmt::Display for KTParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs().iter().map(format_rational).collect();
        write!(f, "{}({})", self.signature.name(), c.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point2<T> {
    pub u: T,
    pub v: T,
}

impl<T> Point2<T> {
    pub fn new(u: T, v: T) -> Self {
        Point2 { u, v }
    }
}

impl Point2<Rational> {
    pub fn from_i64(u: i64, v: i64) -> Self {
        Point2::new(int(u), int(v))
    }
}

/// Symmetric 2x2 matrix; `k21 = k12` is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix2<T> {
    pub k11: T,
    pub k12: T,
    pub k22: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector2<T> {
    pub p1: T,
    pub p2: T,
}

/// Variable layout of [`generic_components`]: two coordinates followed by
/// the six parameters.
pub const GENERIC_VARS: usize = 8;
pub const VAR_U: usize = 0;
pub const VAR_V: usize = 1;
/// Index of parameter `i` (0 = A .. 5 = gamma) in the generic layout.
pub const fn param_var(i: usize) -> usize {
    2 + i
}

/// Components of the general Killing tensor as polynomials in
/// `(u, v, A, B, C, alpha, beta, gamma)`.
pub fn generic_components(sig: MetricSignature) -> [Poly; 3] {
    let n = GENERIC_VARS;
    let x = |i| Poly::var(n, i);
    let c = |k: i64| Poly::constant(n, int(k));
    let (u, v) = (x(VAR_U), x(VAR_V));
    let (a, b, cc, al, be, ga) = (
        x(param_var(0)),
        x(param_var(1)),
        x(param_var(2)),
        x(param_var(3)),
        x(param_var(4)),
        x(param_var(5)),
    );
    match sig {
        MetricSignature::Euclidean => {
            // (u, v) = (x, y)
            let k11 = &a + &(&c(2) * &(&al * &v)) + &(&ga * &(&v * &v));
            let k12 = &cc - &(&al * &u) - &(&be * &v) - &(&ga * &(&u * &v));
            let k22 = &b + &(&c(2) * &(&be * &u)) + &(&ga * &(&u * &u));
            [k11, k12, k22]
        }
        MetricSignature::Minkowski => {
            // (u, v) = (t, x)
            let k11 = &a + &(&c(2) * &(&al * &v)) + &(&ga * &(&v * &v));
            let k12 = &cc + &(&al * &u) + &(&be * &v) + &(&ga * &(&u * &v));
            let k22 = &b + &(&c(2) * &(&be * &u)) + &(&ga * &(&u * &u));
            [k11, k12, k22]
        }
    }
}

/// Symmetric 2-tensor field with polynomial components in `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticTensorField {
    pub k11: Poly,
    pub k12: Poly,
    pub k22: Poly,
}

impl QuadraticTensorField {
    pub fn new(k11: Poly, k12: Poly, k22: Poly) -> Self {
        assert!(k11.nvars() == 2 && k12.nvars() == 2 && k22.nvars() == 2);
        QuadraticTensorField { k11, k12, k22 }
    }

    pub fn at(&self, p: &Point2<Rational>) -> SymMatrix2<Rational> {
        let pt = [p.u.clone(), p.v.clone()];
        SymMatrix2 {
            k11: self.k11.eval(&pt),
            k12: self.k12.eval(&pt),
            k22: self.k22.eval(&pt),
        }
    }
}

/// The component field of `k` as polynomials in `(u, v)`.
pub fn component_field(k: &KTParams) -> QuadraticTensorField {
    let coeffs = k.coeffs();
    let mut images = vec![Poly::var(2, 0), Poly::var(2, 1)];
    images.extend(coeffs.iter().map(|c| Poly::constant(2, c.clone())));
    let [k11, k12, k22] = generic_components(k.signature).map(|p| p.substitute(&images));
    QuadraticTensorField { k11, k12, k22 }
}

pub fn components_at(k: &KTParams, p: &Point2<Rational>) -> SymMatrix2<Rational> {
    let (u, v) = (&p.u, &p.v);
    let two = int(2);
    match k.signature {
        MetricSignature::Euclidean => SymMatrix2 {
            k11: &k.a + &two * &k.alpha * v + &k.gamma * v * v,
            k12: &k.c - &k.alpha * u - &k.beta * v - &k.gamma * u * v,
            k22: &k.b + &two * &k.beta * u + &k.gamma * u * u,
        },
        MetricSignature::Minkowski => SymMatrix2 {
            k11: &k.a + &two * &k.alpha * v + &k.gamma * v * v,
            k12: &k.c + &k.alpha * u + &k.beta * v + &k.gamma * u * v,
            k22: &k.b + &two * &k.beta * u + &k.gamma * u * u,
        },
    }
}

pub fn components_at_f64(k: &KTParams, p: (f64, f64)) -> SymMatrix2<f64> {
    let [a, b, c, al, be, ga] = k.coeffs_f64();
    components_from_f64(k.signature, [a, b, c, al, be, ga], p)
}

/// Float evaluation from raw coefficients; lets hot loops skip the rational
/// to float conversion.
pub fn components_from_f64(sig: MetricSignature, c: [f64; 6], p: (f64, f64)) -> SymMatrix2<f64> {
    let [a, b, cc, al, be, ga] = c;
    let (u, v) = p;
    match sig {
        MetricSignature::Euclidean => SymMatrix2 {
            k11: a + 2.0 * al * v + ga * v * v,
            k12: cc - al * u - be * v - ga * u * v,
            k22: b + 2.0 * be * u + ga * u * u,
        },
        MetricSignature::Minkowski => SymMatrix2 {
            k11: a + 2.0 * al * v + ga * v * v,
            k12: cc + al * u + be * v + ga * u * v,
            k22: b + 2.0 * be * u + ga * u * u,
        },
    }
}

/// The metric itself as a member of the family.
pub fn metric_tensor(sig: MetricSignature) -> KTParams {
    let [g11, g22] = sig.metric_diag();
    KTParams::from_i64(sig, [g11, g22, 0, 0, 0, 0])
}

/// Extracts `(A, B, C, alpha, beta, gamma)` from a component field and
/// checks the field is exactly the family member with those parameters.
pub fn params_from_field(sig: MetricSignature, field: &QuadraticTensorField) -> Result<KTParams> {
    let half = Rational::new(1.into(), 2.into());
    let a = field.k11.coeff(&[0, 0]);
    let alpha = field.k11.coeff(&[0, 1]) * &half;
    let gamma = field.k11.coeff(&[0, 2]);
    let b = field.k22.coeff(&[0, 0]);
    let beta = field.k22.coeff(&[1, 0]) * &half;
    let c = field.k12.coeff(&[0, 0]);
    let k = KTParams {
        signature: sig,
        a,
        b,
        c,
        alpha,
        beta,
        gamma,
    };
    let rebuilt = component_field(&k);
    if &rebuilt != field {
        return Err(Error::NotInFamily(format!(
            "K11 = {}, K12 = {}, K22 = {}",
            field.k11, field.k12, field.k22
        )));
    }
    Ok(k)
}

/// Variables of the phase-space polynomials returned by
/// [`poisson_bracket_with_h`]: `(u, v, p1, p2)`.
pub const PHASE_VARS: usize = 4;

/// `{I*, H}` with `I* = K^{ij} p_i p_j` and `H = g^{ij} p_i p_j / 2`.
/// Identically zero exactly when the field is a Killing tensor of the flat
/// metric.
pub fn poisson_bracket_with_h(field: &QuadraticTensorField, sig: MetricSignature) -> Poly {
    let n = PHASE_VARS;
    let lift = |p: &Poly| p.reindex(n, &[0, 1]);
    let p1 = Poly::var(n, 2);
    let p2 = Poly::var(n, 3);
    let two = Poly::constant(n, int(2));
    let i_star = &(&lift(&field.k11) * &(&p1 * &p1))
        + &(&(&two * &lift(&field.k12)) * &(&p1 * &p2))
        + &(&lift(&field.k22) * &(&p2 * &p2));
    let [g11, g22] = sig.metric_diag();
    let h = (&(&p1 * &p1).scale(&int(g11)) + &(&p2 * &p2).scale(&int(g22)))
        .scale(&Rational::new(1.into(), 2.into()));
    let mut bracket = Poly::zero(n);
    for i in 0..2 {
        let q = i;
        let p = 2 + i;
        bracket = &bracket + &(&i_star.deriv(q) * &h.deriv(p));
        bracket = &bracket - &(&i_star.deriv(p) * &h.deriv(q));
    }
    bracket
}

/// `s -> K^{ij}(q0 + s v) p_i p_j` along the straight geodesic with constant
/// covariant momentum `p = g v`. Degree 0 for every Killing tensor.
pub fn first_integral_along_geodesic(
    k: &KTParams,
    q0: &Point2<Rational>,
    dir: &Point2<Rational>,
) -> Poly {
    let s = Poly::var(1, 0);
    let cst = |r: &Rational| Poly::constant(1, r.clone());
    let u = &cst(&q0.u) + &s.scale(&dir.u);
    let v = &cst(&q0.v) + &s.scale(&dir.v);
    let field = component_field(k);
    let [g11, g22] = k.signature.metric_diag();
    let p1 = &dir.u * int(g11);
    let p2 = &dir.v * int(g22);
    let sub = |p: &Poly| p.substitute(&[u.clone(), v.clone()]);
    &(&sub(&field.k11).scale(&(&p1 * &p1)) + &sub(&field.k12).scale(&(int(2) * &p1 * &p2)))
        + &sub(&field.k22).scale(&(&p2 * &p2))
}

/// Mixed components `K^i_j = K^{im} g_{mj}`, row-major `[[a, b], [c, d]]`.
pub fn mixed<T>(sig: MetricSignature, k: &SymMatrix2<T>) -> [[T; 2]; 2]
where
    T: Clone + std::ops::Neg<Output = T>,
{
    match sig {
        MetricSignature::Euclidean => [[k.k11.clone(), k.k12.clone()], [k.k12.clone(), k.k22.clone()]],
        MetricSignature::Minkowski => [
            [k.k11.clone(), -k.k12.clone()],
            [k.k12.clone(), -k.k22.clone()],
        ],
    }
}

/// `(trace)^2 - 4 det` of `K^i_j` as a polynomial in `(u, v)`, by direct
/// expansion of the characteristic polynomial.
///
/// For the Euclidean family this equals
/// `[gamma(y^2-x^2) + 2(alpha y - beta x) + A - B]^2 + 4[gamma x y + alpha x + beta y - C]^2`,
/// i.e. the sum of squares of the two equations whose common zeros are the
/// singular points, with weight 4 on the second. For Minkowski it factors
/// into the two null-coordinate quadratics of [`null_factors`].
pub fn discriminant_poly(k: &KTParams) -> Poly {
    let f = component_field(k);
    let sym = SymMatrix2 {
        k11: f.k11,
        k12: f.k12,
        k22: f.k22,
    };
    let [[a, b], [c, d]] = mixed(k.signature, &sym);
    let tr = &a + &d;
    let det = &(&a * &d) - &(&b * &c);
    &(&tr * &tr) - &det.scale(&int(4))
}

/// Minkowski discriminant factors as univariate quadratics, lowest degree
/// first: `Delta = F+(t + x) * F-(x - t)` with
/// `F+(s) = (A+B+2C) + 2(alpha+beta) s + gamma s^2` and
/// `F-(r) = (A+B-2C) + 2(alpha-beta) r + gamma r^2`.
pub fn null_factors(k: &KTParams) -> Result<NullFactors> {
    k.require(MetricSignature::Minkowski)?;
    let two = int(2);
    let sum = &k.a + &k.b;
    Ok(NullFactors {
        plus: [
            &sum + &two * &k.c,
            &two * (&k.alpha + &k.beta),
            k.gamma.clone(),
        ],
        minus: [
            &sum - &two * &k.c,
            &two * (&k.alpha - &k.beta),
            k.gamma.clone(),
        ],
    })
}

/// The two factors of the Minkowski discriminant in null coordinates
/// `s = t + x` (`plus`) and `r = x - t` (`minus`); coefficients lowest
/// degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullFactors {
    pub plus: [Rational; 3],
    pub minus: [Rational; 3],
}

impl NullFactors {
    pub fn eval_f64(&self, p: (f64, f64)) -> f64 {
        let (t, x) = p;
        eval_quadratic_f64(&self.plus, t + x) * eval_quadratic_f64(&self.minus, x - t)
    }
}

pub fn eval_quadratic_f64(c: &[Rational; 3], s: f64) -> f64 {
    to_f64(&c[0]) + to_f64(&c[1]) * s + to_f64(&c[2]) * s * s
}

/// Float discriminant `(tr)^2 - 4 det` of the mixed tensor at a point.
pub fn discriminant_at_f64(sig: MetricSignature, k: &SymMatrix2<f64>) -> f64 {
    match sig {
        // (k11 - k22)^2 + 4 k12^2, written to avoid cancellation.
        MetricSignature::Euclidean => (k.k11 - k.k22).powi(2) + 4.0 * k.k12 * k.k12,
        // (k11 + k22)^2 - 4 k12^2
        MetricSignature::Minkowski => (k.k11 + k.k22 - 2.0 * k.k12) * (k.k11 + k.k22 + 2.0 * k.k12),
    }
}

/// Relative tolerance under which the float discriminant counts as zero.
pub const DOUBLE_ROOT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum EigenReport {
    /// Eigenvalues in decreasing order with unit (Euclidean-norm)
    /// eigenvectors.
    RealSimple {
        values: [f64; 2],
        vectors: [[f64; 2]; 2],
    },
    RealDouble {
        value: f64,
    },
    ComplexPair {
        re: f64,
        im: f64,
    },
}

impl EigenReport {
    pub fn tag(&self) -> &'static str {
        match self {
            EigenReport::RealSimple { .. } => "RealSimple",
            EigenReport::RealDouble { .. } => "RealDouble",
            EigenReport::ComplexPair { .. } => "ComplexPair",
        }
    }
}

/// Eigen-decomposition of `K^i_j` at a float point.
pub fn eigenstructure_at(k: &KTParams, p: (f64, f64)) -> EigenReport {
    eigen_of(k.signature, &components_at_f64(k, p))
}

pub fn eigen_of(sig: MetricSignature, km: &SymMatrix2<f64>) -> EigenReport {
    let [[a, b], [c, d]] = mixed(sig, km);
    let tr = a + d;
    let disc = discriminant_at_f64(sig, km);
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
    let tol = DOUBLE_ROOT_TOL * scale * scale;
    if disc.abs() <= tol {
        return EigenReport::RealDouble { value: tr / 2.0 };
    }
    if disc < 0.0 {
        return EigenReport::ComplexPair {
            re: tr / 2.0,
            im: (-disc).sqrt() / 2.0,
        };
    }
    let root = disc.sqrt();
    let values = [(tr + root) / 2.0, (tr - root) / 2.0];
    let vectors = values.map(|lambda| eigenvector_2x2([[a, b], [c, d]], lambda));
    EigenReport::RealSimple { values, vectors }
}

/// Unit eigenvector of a real 2x2 matrix for a real simple eigenvalue.
pub fn eigenvector_2x2(m: [[f64; 2]; 2], lambda: f64) -> [f64; 2] {
    let [[a, b], [c, d]] = m;
    let v1 = [b, lambda - a];
    let v2 = [lambda - d, c];
    let n1 = v1[0].hypot(v1[1]);
    let n2 = v2[0].hypot(v2[1]);
    let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
    if n == 0.0 {
        // Scalar matrix: every direction is an eigenvector.
        return [1.0, 0.0];
    }
    [v[0] / n, v[1] / n]
}

/// `g(u, w)` for the flat metric of the given signature.
pub fn metric_product(sig: MetricSignature, u: [f64; 2], w: [f64; 2]) -> f64 {
    let [g11, g22] = sig.metric_diag();
    g11 as f64 * u[0] * w[0] + g22 as f64 * u[1] * w[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(u: i64, v: i64) -> Point2<Rational> {
        Point2::from_i64(u, v)
    }

    #[test]
    fn e1_representative_at_origin() {
        let k = KTParams::euclidean([0, 0, 1, 0, 0, 1]);
        let m = components_at(&k, &p(0, 0));
        assert_eq!((m.k11, m.k12, m.k22), (int(0), int(1), int(0)));
    }

    #[test]
    fn m1_representative_at_origin() {
        let k = KTParams::minkowski([0, 1, 0, 0, 0, 1]);
        let m = components_at(&k, &p(0, 0));
        assert_eq!((m.k11, m.k12, m.k22), (int(0), int(0), int(1)));
    }

    #[test]
    fn zero_params_give_zero_components() {
        for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
            let m = components_at(&KTParams::zero(sig), &Point2::new(frac(3, 7), frac(-2, 5)));
            assert!(m.k11.is_zero() && m.k12.is_zero() && m.k22.is_zero());
        }
    }

    #[test]
    fn metric_components_are_constant() {
        let e = metric_tensor(MetricSignature::Euclidean);
        let m = components_at(&e, &p(5, -3));
        assert_eq!((m.k11, m.k12, m.k22), (int(1), int(0), int(1)));
        let mk = metric_tensor(MetricSignature::Minkowski);
        let m = components_at(&mk, &p(-2, 7));
        assert_eq!((m.k11, m.k12, m.k22), (int(1), int(0), int(-1)));
    }

    #[test]
    fn field_and_pointwise_evaluation_agree() {
        let k = KTParams::from_coeffs(
            MetricSignature::Minkowski,
            [frac(1, 2), int(-3), frac(2, 3), int(1), frac(-1, 4), int(2)],
        );
        let f = component_field(&k);
        let q = Point2::new(frac(-5, 3), frac(7, 2));
        assert_eq!(f.at(&q), components_at(&k, &q));
    }

    #[test]
    fn extraction_inverts_component_field() {
        let k = KTParams::from_coeffs(
            MetricSignature::Euclidean,
            [int(2), frac(1, 3), int(-1), frac(5, 2), int(0), int(-4)],
        );
        assert_eq!(params_from_field(k.signature, &component_field(&k)).unwrap(), k);
    }

    #[test]
    fn extraction_rejects_non_family_field() {
        let mut f = component_field(&KTParams::euclidean([1, 0, 0, 0, 0, 0]));
        f.k12 = &f.k12 + &Poly::var(2, 0).pow(2);
        assert!(matches!(
            params_from_field(MetricSignature::Euclidean, &f),
            Err(Error::NotInFamily(_))
        ));
    }

    #[test]
    fn family_members_commute_with_hamiltonian() {
        for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
            let k = KTParams::from_i64(sig, [3, -1, 2, 5, -7, 11]);
            assert!(poisson_bracket_with_h(&component_field(&k), sig).is_zero());
            assert!(poisson_bracket_with_h(&component_field(&metric_tensor(sig)), sig).is_zero());
        }
    }

    #[test]
    fn perturbed_field_is_not_killing() {
        let sig = MetricSignature::Euclidean;
        let mut f = component_field(&KTParams::euclidean([0, 0, 1, 0, 0, 1]));
        f.k11 = &f.k11 + &Poly::var(2, 0).pow(2);
        let br = poisson_bracket_with_h(&f, sig);
        // I* gains x^2 p1^2; {x^2 p1^2, (p1^2+p2^2)/2} = 2 x p1^3.
        let expected = Poly::monomial(vec![1, 0, 3, 0], int(2));
        assert_eq!(br, expected);
    }

    #[test]
    fn first_integral_on_e1_diagonal_is_two() {
        let k = KTParams::euclidean([0, 0, 1, 0, 0, 1]);
        let fi = first_integral_along_geodesic(&k, &p(0, 0), &p(1, 1));
        assert_eq!(fi, Poly::constant(1, int(2)));
    }

    #[test]
    fn first_integral_along_u_axis_is_a() {
        let k = KTParams::euclidean([7, -2, 3, 1, 4, 5]);
        let fi = first_integral_along_geodesic(&k, &p(0, 0), &p(1, 0));
        assert_eq!(fi, Poly::constant(1, int(7)));
    }

    #[test]
    fn first_integral_of_zero_tensor_vanishes() {
        let k = KTParams::zero(MetricSignature::Minkowski);
        assert!(first_integral_along_geodesic(&k, &p(2, 3), &p(1, -5)).is_zero());
    }

    #[test]
    fn e3_eigenstructure_at_unit_x() {
        let k = KTParams::euclidean([0, 0, 0, 0, 0, 1]);
        match eigenstructure_at(&k, (1.0, 0.0)) {
            EigenReport::RealSimple { values, vectors } => {
                assert!((values[0] - 1.0).abs() < 1e-12 && values[1].abs() < 1e-12);
                assert!((vectors[0][0].abs()) < 1e-12 && (vectors[0][1].abs() - 1.0).abs() < 1e-12);
                assert!((vectors[1][0].abs() - 1.0).abs() < 1e-12 && vectors[1][1].abs() < 1e-12);
            }
            other => panic!("expected RealSimple, got {other:?}"),
        }
    }

    #[test]
    fn m12_has_complex_eigenvalues() {
        let k = KTParams::minkowski([0, 0, 1, 0, 0, 0]);
        for q in [(0.0, 0.0), (1.5, -2.0), (-3.0, 0.25)] {
            assert_eq!(eigenstructure_at(&k, q).tag(), "ComplexPair");
        }
    }

    #[test]
    fn metric_has_double_eigenvalue() {
        for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
            assert_eq!(eigenstructure_at(&metric_tensor(sig), (0.3, 0.9)).tag(), "RealDouble");
        }
    }

    fn uv() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn m2_discriminant_factors() {
        let k = KTParams::minkowski([0, 0, 1, 0, 0, 1]);
        let (t, x) = uv();
        let two = Poly::constant(2, int(2));
        let expected = &(&(&x + &t).pow(2) + &two) * &(&(&x - &t).pow(2) - &two);
        assert_eq!(discriminant_poly(&k), expected);
    }

    #[test]
    fn metric_discriminant_vanishes() {
        assert!(discriminant_poly(&metric_tensor(MetricSignature::Euclidean)).is_zero());
        assert!(discriminant_poly(&metric_tensor(MetricSignature::Minkowski)).is_zero());
    }

    #[test]
    fn m11_discriminant_is_one() {
        let k = KTParams::minkowski([1, 0, 0, 0, 0, 0]);
        assert_eq!(discriminant_poly(&k), Poly::constant(2, int(1)));
    }

    #[test]
    fn euclidean_discriminant_is_weighted_sum_of_squares() {
        let k = KTParams::from_coeffs(
            MetricSignature::Euclidean,
            [int(2), frac(-1, 2), int(3), int(-1), frac(4, 3), int(2)],
        );
        let (x, y) = uv();
        let c = |r: &Rational| Poly::constant(2, r.clone());
        let two = int(2);
        let first = &(&(&c(&k.gamma) * &(&(&y * &y) - &(&x * &x)))
            + &(&y.scale(&(&two * &k.alpha)) - &x.scale(&(&two * &k.beta))))
            + &c(&(&k.a - &k.b));
        let second = &(&(&(&x * &y).scale(&k.gamma) + &x.scale(&k.alpha)) + &y.scale(&k.beta))
            - &c(&k.c);
        let expected = &first.pow(2) + &second.pow(2).scale(&int(4));
        assert_eq!(discriminant_poly(&k), expected);
    }
}
