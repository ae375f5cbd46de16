//! The web-preserving group acting on the six-parameter space.
//!
//! Six one-parameter subgroups (two translations, the rotation or boost,
//! the dilatation of the plane, addition of a multiple of the metric and
//! scalar multiplication) plus discrete maps. Finite isometries and
//! dilatations act by pushing the component field forward,
//! `K'(q) = J K(Phi^{-1}(q)) J^T`, and re-reading the six coefficients, so
//! the result is exact and closure of the family is checked on every call.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat_rank, solve, RatMatrix};
use crate::poly::Poly;
use crate::rational::{from_f64, int, Rational};
use crate::tensor::{component_field, params_from_field, KTParams, MetricSignature, QuadraticTensorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorId {
    /// Translation along the first coordinate.
    V1,
    /// Translation along the second coordinate.
    V2,
    /// Rotation (Euclidean) or boost (Minkowski).
    V3,
    /// Dilatation of the plane.
    V4,
    /// Addition of a multiple of the metric.
    V5,
    /// Scalar multiplication.
    V6,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 6] = [
        GeneratorId::V1,
        GeneratorId::V2,
        GeneratorId::V3,
        GeneratorId::V4,
        GeneratorId::V5,
        GeneratorId::V6,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.index() + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiscreteId {
    /// `K -> -K`.
    R0,
    /// `C -> -C, alpha -> -alpha`; the reflection of the second coordinate.
    R1,
    /// `C -> -C, beta -> -beta`; the reflection of the first coordinate.
    R2,
    /// `A <-> B, alpha <-> beta`. Euclidean: the isometry swapping `x` and
    /// `y`. Minkowski: the signature-changing swap of `t` and `x`, which is
    /// not part of the web-preserving group.
    RSwap,
}

impl fmt::Display for DiscreteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Symbolic generator fields on parameter space: six polynomials in
/// `(A, B, C, alpha, beta, gamma)`, ordered as the basis
/// `(d_A, d_B, d_C, d_alpha, d_beta, d_gamma)`.
pub fn generator_field(sig: MetricSignature, id: GeneratorId) -> [Poly; 6] {
    let n = 6;
    let x = |i| Poly::var(n, i);
    let k = |c: i64| Poly::constant(n, int(c));
    let z = || Poly::zero(n);
    let (a, b, c, al, be, ga) = (x(0), x(1), x(2), x(3), x(4), x(5));
    use GeneratorId::*;
    use MetricSignature::*;
    match (sig, id) {
        (Euclidean, V1) => [z(), be.scale(&int(-2)), al, z(), -ga, z()],
        (Euclidean, V2) => [al.scale(&int(-2)), z(), be, -ga, z(), z()],
        (Euclidean, V3) => [c.scale(&int(-2)), c.scale(&int(2)), &a - &b, be, -al, z()],
        (Minkowski, V1) => [z(), be.scale(&int(-2)), -al, z(), -ga, z()],
        (Minkowski, V2) => [al.scale(&int(-2)), z(), -be, -ga, z(), z()],
        (Minkowski, V3) => [c.scale(&int(2)), c.scale(&int(2)), &a + &b, be, al, z()],
        (_, V4) => [a.scale(&int(2)), b.scale(&int(2)), c.scale(&int(2)), al, be, z()],
        (Euclidean, V5) => [k(1), k(1), z(), z(), z(), z()],
        (Minkowski, V5) => [k(1), k(-1), z(), z(), z(), z()],
        (_, V6) => [a, b, c, al, be, ga],
    }
}

/// The generator `id` evaluated at `k`.
pub fn generator_vector(id: GeneratorId, k: &KTParams) -> [Rational; 6] {
    let point = k.coeffs();
    generator_field(k.signature, id).map(|p| p.eval(&point))
}

/// Rows `V1(k) .. V6(k)`.
pub fn generator_matrix(k: &KTParams) -> RatMatrix {
    let rows = GeneratorId::ALL
        .iter()
        .map(|&id| generator_vector(id, k).to_vec())
        .collect();
    RatMatrix::from_rows(rows).expect("6x6 by construction")
}

/// Dimension of the orbit through `k`.
pub fn generator_rank(k: &KTParams) -> usize {
    rat_rank(&generator_matrix(k))
}

type Mat2 = [[Rational; 2]; 2];

fn mat2(a: Rational, b: Rational, c: Rational, d: Rational) -> Mat2 {
    [[a, b], [c, d]]
}

fn inverse2(m: &Mat2) -> Result<Mat2> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(Error::InvalidParameter("singular linear map".into()));
    }
    let inv = det.recip();
    Ok(mat2(
        &m[1][1] * &inv,
        -&m[0][1] * &inv,
        -&m[1][0] * &inv,
        &m[0][0] * &inv,
    ))
}

/// Push-forward of `k` by the affine map `q -> L q + shift`.
pub fn push_forward(k: &KTParams, lin: &Mat2, shift: &[Rational; 2]) -> Result<KTParams> {
    let inv = inverse2(lin)?;
    let q = [Poly::var(2, 0), Poly::var(2, 1)];
    let cst = |r: &Rational| Poly::constant(2, r.clone());
    // Source point Phi^{-1}(q) = L^{-1}(q - shift).
    let d0 = &q[0] - &cst(&shift[0]);
    let d1 = &q[1] - &cst(&shift[1]);
    let src = [
        &d0.scale(&inv[0][0]) + &d1.scale(&inv[0][1]),
        &d0.scale(&inv[1][0]) + &d1.scale(&inv[1][1]),
    ];
    let f = component_field(k);
    let kk = [
        [f.k11.substitute(&src), f.k12.substitute(&src)],
        [f.k12.substitute(&src), f.k22.substitute(&src)],
    ];
    // (L K L^T)_{ij} = sum_{a,b} L_ia K_ab L_jb
    let entry = |i: usize, j: usize| {
        let mut acc = Poly::zero(2);
        for (a, row) in kk.iter().enumerate() {
            for (b, kab) in row.iter().enumerate() {
                let w = &lin[i][a] * &lin[j][b];
                if !w.is_zero() {
                    acc = &acc + &kab.scale(&w);
                }
            }
        }
        acc
    };
    let field = QuadraticTensorField::new(entry(0, 0), entry(0, 1), entry(1, 1));
    params_from_field(k.signature, &field)
}

/// Rotation matrix through the angle with `tan(theta / 2) = t`.
pub fn rotation_matrix(t: &Rational) -> Mat2 {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    let c = (&one - &t2) / &den;
    let s = (int(2) * t) / &den;
    mat2(c.clone(), -s.clone(), s, c)
}

/// Boost matrix with rapidity `mu`, `tanh(mu / 2) = t`, `|t| < 1`.
pub fn boost_matrix(t: &Rational) -> Result<Mat2> {
    let one = Rational::one();
    if t.abs() >= one {
        return Err(Error::InvalidParameter(format!(
            "boost parameter must satisfy |t| < 1, got {t}"
        )));
    }
    let t2 = t * t;
    let den = &one - &t2;
    let ch = (&one + &t2) / &den;
    let sh = (int(2) * t) / &den;
    Ok(mat2(ch.clone(), sh.clone(), sh, ch))
}

/// Finite action of the one-parameter subgroup generated by `id`.
///
/// Parameters: V1/V2 shift along the coordinate; V3 `t = tan(theta/2)`
/// (Euclidean) or `t = tanh(mu/2)` with `|t| < 1` (Minkowski); V4 the
/// dilatation factor `r = e^s > 0`; V5 the multiple `tau` of the metric
/// added; V6 the factor `lambda != 0`.
pub fn apply_finite(k: &KTParams, id: GeneratorId, t: &Rational) -> Result<KTParams> {
    let one = Rational::one;
    let zero = Rational::zero;
    let identity = || mat2(one(), zero(), zero(), one());
    match id {
        GeneratorId::V1 => push_forward(k, &identity(), &[t.clone(), zero()]),
        GeneratorId::V2 => push_forward(k, &identity(), &[zero(), t.clone()]),
        GeneratorId::V3 => {
            let lin = match k.signature {
                MetricSignature::Euclidean => rotation_matrix(t),
                MetricSignature::Minkowski => boost_matrix(t)?,
            };
            push_forward(k, &lin, &[zero(), zero()])
        }
        GeneratorId::V4 => {
            if !t.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "dilatation factor must be positive, got {t}"
                )));
            }
            push_forward(k, &mat2(t.clone(), zero(), zero(), t.clone()), &[zero(), zero()])
        }
        GeneratorId::V5 => {
            let [g11, g22] = k.signature.metric_diag();
            let mut out = k.clone();
            out.a += t * int(g11);
            out.b += t * int(g22);
            Ok(out)
        }
        GeneratorId::V6 => {
            if t.is_zero() {
                return Err(Error::InvalidParameter("scaling factor must be non-zero".into()));
            }
            Ok(k.scaled(t))
        }
    }
}

/// The half-turn `q -> -q`, the rotation by pi that the rational
/// parametrization of [`apply_finite`] cannot reach.
pub fn apply_half_turn(k: &KTParams) -> KTParams {
    let m = -Rational::one();
    push_forward(k, &mat2(m.clone(), Rational::zero(), Rational::zero(), m), &[Rational::zero(), Rational::zero()])
        .expect("half-turn is an isometry of both planes")
}

pub fn apply_discrete(k: &KTParams, id: DiscreteId) -> KTParams {
    let mut out = k.clone();
    match id {
        DiscreteId::R0 => return k.scaled(&-Rational::one()),
        DiscreteId::R1 => {
            out.c = -out.c;
            out.alpha = -out.alpha;
        }
        DiscreteId::R2 => {
            out.c = -out.c;
            out.beta = -out.beta;
        }
        DiscreteId::RSwap => {
            std::mem::swap(&mut out.a, &mut out.b);
            std::mem::swap(&mut out.alpha, &mut out.beta);
        }
    }
    out
}

/// Parameter `t3` with `apply(apply(k, t1), t2) = apply(k, t3)`, or `None`
/// when the composite leaves the rational chart (rotation by pi).
pub fn compose_parameters(
    sig: MetricSignature,
    id: GeneratorId,
    t1: &Rational,
    t2: &Rational,
) -> Option<Rational> {
    let one = Rational::one();
    match id {
        GeneratorId::V1 | GeneratorId::V2 | GeneratorId::V5 => Some(t1 + t2),
        GeneratorId::V4 | GeneratorId::V6 => Some(t1 * t2),
        GeneratorId::V3 => {
            // tan and tanh addition formulas for half-angles
            let den = match sig {
                MetricSignature::Euclidean => &one - t1 * t2,
                MetricSignature::Minkowski => &one + t1 * t2,
            };
            if den.is_zero() {
                None
            } else {
                Some((t1 + t2) / den)
            }
        }
    }
}

/// Converts a flow time `s` of the generator into the parameter of
/// [`apply_finite`], so that `apply_finite(k, id, flow_parameter(..., s))`
/// is the time-`s` flow of `V_id`. The float is converted exactly.
pub fn flow_parameter(sig: MetricSignature, id: GeneratorId, s: f64) -> Rational {
    let p = match (id, sig) {
        (GeneratorId::V1 | GeneratorId::V2 | GeneratorId::V5, _) => s,
        (GeneratorId::V3, MetricSignature::Euclidean) => (s / 2.0).tan(),
        (GeneratorId::V3, MetricSignature::Minkowski) => (s / 2.0).tanh(),
        (GeneratorId::V4 | GeneratorId::V6, _) => s.exp(),
    };
    from_f64(p).expect("finite flow parameter")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Generator(GeneratorId, Rational),
    Discrete(DiscreteId),
    HalfTurn,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Generator(id, t) => write!(f, "{id}({})", crate::rational::format_rational(t)),
            Step::Discrete(d) => write!(f, "{d}"),
            Step::HalfTurn => write!(f, "HalfTurn"),
        }
    }
}

/// A finite sequence of group elements, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupWord(pub Vec<Step>);

impl GroupWord {
    pub fn apply(&self, k: &KTParams) -> Result<KTParams> {
        let mut cur = k.clone();
        for step in &self.0 {
            cur = match step {
                Step::Generator(id, t) => apply_finite(&cur, *id, t)?,
                Step::Discrete(d) => apply_discrete(&cur, *d),
                Step::HalfTurn => apply_half_turn(&cur),
            };
        }
        Ok(cur)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Lie bracket of two vector fields on parameter space.
pub fn bracket(x: &[Poly; 6], y: &[Poly; 6]) -> [Poly; 6] {
    std::array::from_fn(|k| {
        let mut acc = Poly::zero(6);
        for j in 0..6 {
            acc = &acc + &(&x[j] * &y[k].deriv(j));
            acc = &acc - &(&y[j] * &x[k].deriv(j));
        }
        acc
    })
}

/// Constants `c` with `[V_i, V_j] = sum_k c_k V_k`, or `None` when no
/// constant-coefficient decomposition exists.
pub fn lie_bracket_decompose(
    sig: MetricSignature,
    i: GeneratorId,
    j: GeneratorId,
) -> Option<[Rational; 6]> {
    let fields: Vec<[Poly; 6]> = GeneratorId::ALL.iter().map(|&g| generator_field(sig, g)).collect();
    let target = bracket(&fields[i.index()], &fields[j.index()]);
    decompose(&fields, &target)
}

/// Solves `target = sum_l c_l fields[l]` coefficient-wise.
pub fn decompose(fields: &[[Poly; 6]], target: &[Poly; 6]) -> Option<[Rational; 6]> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for comp in 0..6 {
        let mut monomials: Vec<Vec<u32>> = target[comp].terms().map(|(m, _)| m.clone()).collect();
        for f in fields {
            monomials.extend(f[comp].terms().map(|(m, _)| m.clone()));
        }
        monomials.sort();
        monomials.dedup();
        for m in monomials {
            rows.push(fields.iter().map(|f| f[comp].coeff(&m)).collect::<Vec<_>>());
            rhs.push(target[comp].coeff(&m));
        }
    }
    if rows.is_empty() {
        return Some(std::array::from_fn(|_| Rational::zero()));
    }
    let m = RatMatrix::from_rows(rows).ok()?;
    let sol = solve(&m, &rhs).ok()??;
    let mut out: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
    for (o, s) in out.iter_mut().zip(sol) {
        *o = s;
    }
    Some(out)
}

/// All structure constants; entry `[i][j]` decomposes `[V_i, V_j]`.
pub fn structure_constants(sig: MetricSignature) -> Vec<Vec<Option<[Rational; 6]>>> {
    GeneratorId::ALL
        .iter()
        .map(|&i| {
            GeneratorId::ALL
                .iter()
                .map(|&j| lie_bracket_decompose(sig, i, j))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_det;
    use crate::rational::frac;

    const E: MetricSignature = MetricSignature::Euclidean;
    const M: MetricSignature = MetricSignature::Minkowski;

    fn ints(v: [i64; 6]) -> [Rational; 6] {
        v.map(int)
    }

    #[test]
    fn constant_generators() {
        let k = KTParams::euclidean([3, 1, 4, 1, 5, 9]);
        assert_eq!(generator_vector(GeneratorId::V5, &k), ints([1, 1, 0, 0, 0, 0]));
        let km = KTParams::minkowski([3, 1, 4, 1, 5, 9]);
        assert_eq!(generator_vector(GeneratorId::V5, &km), ints([1, -1, 0, 0, 0, 0]));
        assert_eq!(generator_vector(GeneratorId::V6, &km), ints([3, 1, 4, 1, 5, 9]));
    }

    #[test]
    fn printed_rows() {
        let k = KTParams::euclidean([1, 2, 3, 4, 5, 6]);
        assert_eq!(generator_vector(GeneratorId::V1, &k), ints([0, -10, 4, 0, -6, 0]));
        assert_eq!(generator_vector(GeneratorId::V3, &k), ints([-6, 6, -1, 5, -4, 0]));
        let k = KTParams::minkowski([1, 2, 3, 4, 5, 6]);
        assert_eq!(generator_vector(GeneratorId::V1, &k), ints([0, -10, -4, 0, -6, 0]));
        assert_eq!(generator_vector(GeneratorId::V3, &k), ints([6, 6, 3, 5, 4, 0]));
    }

    #[test]
    fn zero_tensor_matrix_has_only_metric_row() {
        let m = generator_matrix(&KTParams::zero(E));
        for r in 0..6 {
            let nonzero = m.row(r).iter().any(|x| !x.is_zero());
            assert_eq!(nonzero, r == 4, "row {r}");
        }
    }

    #[test]
    fn determinants_at_representatives() {
        assert_eq!(rat_det(&generator_matrix(&KTParams::euclidean([0, 0, 1, 0, 0, 1]))).unwrap(), int(-8));
        assert_eq!(rat_det(&generator_matrix(&KTParams::minkowski([0, 1, 0, 0, 0, 1]))).unwrap(), int(2));
        assert_eq!(rat_det(&generator_matrix(&KTParams::minkowski([0, 0, 1, 0, 0, 1]))).unwrap(), int(-8));
    }

    #[test]
    fn ranks_from_examples() {
        assert_eq!(generator_rank(&KTParams::euclidean([0, 0, 1, 0, 0, 1])), 6);
        assert_eq!(generator_rank(&KTParams::euclidean([0, 0, 0, 1, 0, 0])), 5);
        assert_eq!(generator_rank(&KTParams::minkowski([1, 1, 1, 0, 0, 0])), 2);
        assert_eq!(generator_rank(&KTParams::minkowski([3, -3, 0, 0, 0, 0])), 1);
    }

    #[test]
    fn translation_of_parabolic_representative() {
        // K(x, y - 1) for K = (2y, -x; -x, 0): A' = -2, alpha' = 1.
        let k = KTParams::euclidean([0, 0, 0, 1, 0, 0]);
        let out = apply_finite(&k, GeneratorId::V2, &int(1)).unwrap();
        assert_eq!(out, KTParams::euclidean([-2, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn metric_addition_and_scaling() {
        let out = apply_finite(&KTParams::zero(E), GeneratorId::V5, &int(3)).unwrap();
        assert_eq!(out, KTParams::euclidean([3, 3, 0, 0, 0, 0]));
        let k = KTParams::minkowski([1, -2, 3, -4, 5, -6]);
        let neg = apply_finite(&k, GeneratorId::V6, &int(-1)).unwrap();
        assert_eq!(neg, apply_discrete(&k, DiscreteId::R0));
        assert_eq!(neg, KTParams::minkowski([-1, 2, -3, 4, -5, 6]));
    }

    #[test]
    fn invalid_parameters() {
        let k = KTParams::minkowski([1, 0, 0, 0, 0, 1]);
        assert!(apply_finite(&k, GeneratorId::V6, &int(0)).is_err());
        assert!(apply_finite(&k, GeneratorId::V3, &int(1)).is_err());
        assert!(apply_finite(&k, GeneratorId::V3, &frac(-3, 2)).is_err());
        assert!(apply_finite(&k, GeneratorId::V4, &int(0)).is_err());
        assert!(apply_finite(&k, GeneratorId::V4, &int(-2)).is_err());
        // Euclidean rotation accepts any t.
        assert!(apply_finite(&KTParams::euclidean([1, 0, 0, 0, 0, 1]), GeneratorId::V3, &int(5)).is_ok());
    }

    #[test]
    fn discrete_maps() {
        let k = KTParams::minkowski([0, 0, 1, 0, 0, 1]);
        assert_eq!(apply_discrete(&k, DiscreteId::R1), KTParams::minkowski([0, 0, -1, 0, 0, 1]));
        let k = KTParams::euclidean([1, 2, 3, 4, 5, 6]);
        assert_eq!(apply_discrete(&apply_discrete(&k, DiscreteId::R0), DiscreteId::R0), k);
        let m7 = KTParams::minkowski([0, 0, 0, 1, 0, 0]);
        assert_eq!(apply_discrete(&m7, DiscreteId::RSwap), KTParams::minkowski([0, 0, 0, 0, 1, 0]));
    }

    #[test]
    fn reflections_are_push_forwards() {
        let one = Rational::one;
        let zero = Rational::zero;
        let flip_v = mat2(one(), zero(), zero(), -one());
        let flip_u = mat2(-one(), zero(), zero(), one());
        let swap = mat2(zero(), one(), one(), zero());
        let origin = [zero(), zero()];
        for sig in [E, M] {
            let k = KTParams::from_coeffs(sig, [int(2), frac(1, 3), int(-5), int(7), frac(-2, 9), int(4)]);
            assert_eq!(push_forward(&k, &flip_v, &origin).unwrap(), apply_discrete(&k, DiscreteId::R1));
            assert_eq!(push_forward(&k, &flip_u, &origin).unwrap(), apply_discrete(&k, DiscreteId::R2));
            // The coordinate swap is an isometry only in the Euclidean plane,
            // but maps the family onto itself in both.
            assert_eq!(push_forward(&k, &swap, &origin).unwrap(), apply_discrete(&k, DiscreteId::RSwap));
        }
    }

    #[test]
    fn half_turn_negates_linear_terms() {
        let k = KTParams::euclidean([1, 2, 3, 4, 5, 6]);
        assert_eq!(apply_half_turn(&k), KTParams::euclidean([1, 2, 3, -4, -5, 6]));
    }

    #[test]
    fn brackets_close() {
        for sig in [E, M] {
            for i in GeneratorId::ALL {
                for j in GeneratorId::ALL {
                    assert!(lie_bracket_decompose(sig, i, j).is_some(), "{sig:?} [{i},{j}]");
                }
            }
        }
    }

    #[test]
    fn metric_bracket_with_itself_vanishes() {
        let c = lie_bracket_decompose(E, GeneratorId::V5, GeneratorId::V5).unwrap();
        assert!(c.iter().all(Zero::is_zero));
    }

    #[test]
    fn decompose_reports_failure() {
        let fields: Vec<[Poly; 6]> = GeneratorId::ALL.iter().map(|&g| generator_field(E, g)).collect();
        let mut target: [Poly; 6] = std::array::from_fn(|_| Poly::zero(6));
        target[0] = Poly::var(6, 0).pow(2);
        assert!(decompose(&fields, &target).is_none());
    }

    #[test]
    fn rotation_parameters_compose() {
        let k = KTParams::euclidean([1, -2, 3, 1, 0, 2]);
        let (t1, t2) = (frac(1, 3), frac(2, 5));
        let t3 = compose_parameters(E, GeneratorId::V3, &t1, &t2).unwrap();
        let two_step = apply_finite(&apply_finite(&k, GeneratorId::V3, &t1).unwrap(), GeneratorId::V3, &t2).unwrap();
        assert_eq!(two_step, apply_finite(&k, GeneratorId::V3, &t3).unwrap());
    }
}
