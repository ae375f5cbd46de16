//! Independent oracles and property harnesses: brute-force rank, exact
//! discriminant censuses, finite-difference checks of the generators,
//! orbit-invariance fuzzing and the verification suite behind `ktweb verify`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::classify::{atlas, classify_label, singular_set, OrbitClass, SingularSet};
use crate::error::{Error, Result};
use crate::group::{
    apply_finite, flow_parameter, generator_field, generator_rank, generator_matrix,
    generator_vector, structure_constants, DiscreteId, GeneratorId, GroupWord, Step,
};
use crate::linalg::{poly_det, RatMatrix};
use crate::poly::Poly;
use crate::rational::{frac, from_f64, int, sign, to_f64, Rational};
use crate::tensor::{
    component_field, discriminant_poly, null_factors, poisson_bracket_with_h, KTParams,
    MetricSignature, QuadraticTensorField,
};

/// Determinant by cofactor expansion, deliberately sharing nothing with the
/// elimination code.
fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        n => {
            let mut acc = Rational::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][c] * laplace_det(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank as the size of the largest non-vanishing minor.
pub fn rank_oracle(m: &RatMatrix) -> Result<usize> {
    if m.rows() > 6 || m.cols() > 6 {
        return Err(Error::Dimension(format!(
            "rank oracle limited to 6x6, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let minor: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                    .collect();
                if !laplace_det(&minor).is_zero() {
                    return Ok(k);
                }
            }
        }
    }
    Ok(0)
}

/// Central difference `(k(h) - k(-h)) / 2h` of the one-parameter subgroup
/// of `id` in flow time, computed exactly and compared with the generator
/// at `k`. Returns the largest component error.
pub fn generator_fd_check(k: &KTParams, id: GeneratorId, h: f64) -> Result<f64> {
    fd_error(k, id, h, &generator_vector(id, k))
}

fn fd_error(k: &KTParams, id: GeneratorId, h: f64, expected: &[Rational; 6]) -> Result<f64> {
    if !(h > 0.0 && h <= 0.1) {
        return Err(Error::InvalidParameter(format!("step h must lie in (0, 0.1], got {h}")));
    }
    let plus = apply_finite(k, id, &flow_parameter(k.signature, id, h))?;
    let minus = apply_finite(k, id, &flow_parameter(k.signature, id, -h))?;
    let two_h = int(2) * from_f64(h).expect("finite h");
    let (p, m) = (plus.coeffs(), minus.coeffs());
    Ok((0..6)
        .map(|i| to_f64(&((&p[i] - &m[i]) / &two_h - &expected[i])).abs())
        .fold(0.0, f64::max))
}

/// Error ratio between `h = 1e-2` and `h = 1e-3`, or `None` when the
/// coarse error is negligible (actions that are polynomial of degree at
/// most two in the flow time are differentiated exactly).
pub fn fd_error_ratio(k: &KTParams, id: GeneratorId) -> Result<Option<f64>> {
    let coarse = generator_fd_check(k, id, 1e-2)?;
    let fine = generator_fd_check(k, id, 1e-3)?;
    if coarse < 1e-9 {
        return Ok(None);
    }
    Ok(Some(coarse / fine))
}

/// Rational with numerator in `-6..=6` and denominator in `1..=8`.
pub fn random_rational(rng: &mut StdRng) -> Rational {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=8))
}

/// Random tensor; each coefficient vanishes with probability `p_zero` so
/// the lower-dimensional strata are hit as well.
pub fn random_tensor(rng: &mut StdRng, sig: MetricSignature, p_zero: f64) -> KTParams {
    let c = std::array::from_fn(|_| {
        if rng.gen_bool(p_zero) {
            Rational::zero()
        } else {
            random_rational(rng)
        }
    });
    KTParams::from_coeffs(sig, c)
}

/// Random tensor with float coefficients in `[-1, 1]`, converted exactly.
pub fn random_float_tensor(rng: &mut StdRng, sig: MetricSignature) -> KTParams {
    KTParams::from_coeffs(sig, std::array::from_fn(|_| from_f64(rng.gen_range(-1.0..=1.0)).unwrap()))
}

/// A random element of the web-preserving group, as one exact step.
pub fn random_step(rng: &mut StdRng, sig: MetricSignature) -> Step {
    let discrete: &[DiscreteId] = match sig {
        MetricSignature::Euclidean => &[DiscreteId::R0, DiscreteId::R1, DiscreteId::R2, DiscreteId::RSwap],
        // The Minkowski swap exchanges time and space and is not in the group.
        MetricSignature::Minkowski => &[DiscreteId::R0, DiscreteId::R1, DiscreteId::R2],
    };
    match rng.gen_range(0..10) {
        0..=5 => {
            let id = GeneratorId::ALL[rng.gen_range(0..6)];
            let t = match id {
                GeneratorId::V3 if sig == MetricSignature::Minkowski => {
                    let q = rng.gen_range(2..=8);
                    frac(rng.gen_range(-(q - 1)..=q - 1), q)
                }
                GeneratorId::V4 => frac(rng.gen_range(1..=8), rng.gen_range(1..=8)),
                GeneratorId::V6 => {
                    let p = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    frac(p, rng.gen_range(1..=8))
                }
                _ => random_rational(rng),
            };
            Step::Generator(id, t)
        }
        6 => Step::HalfTurn,
        _ => Step::Discrete(discrete[rng.gen_range(0..discrete.len())]),
    }
}

pub fn random_word(rng: &mut StdRng, sig: MetricSignature, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord((0..len).map(|_| random_step(rng, sig)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzFailure {
    pub tensor: KTParams,
    pub word: GroupWord,
    pub before: OrbitClass,
    /// `None` when applying the word failed.
    pub after: Option<OrbitClass>,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub trials: usize,
    pub failures: Vec<FuzzFailure>,
    pub elapsed: Duration,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies `n` random group words to random tensors of both signatures and
/// checks the class label is unchanged. A third of the seeds are atlas
/// representatives moved by a random word, so every orbit is visited.
pub fn fuzz_orbit_invariance(n: usize, max_word: usize, rng_seed: u64) -> FuzzReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let reps = atlas();
    let mut failures = Vec::new();
    for trial in 0..n {
        let sig = if trial % 2 == 0 {
            MetricSignature::Euclidean
        } else {
            MetricSignature::Minkowski
        };
        let tensor = if rng.gen_range(0..3) == 0 {
            let pool: Vec<&KTParams> = reps.iter().filter(|(c, _)| c.signature() == sig).map(|(_, k)| k).collect();
            let k = pool[rng.gen_range(0..pool.len())];
            random_word(&mut rng, sig, 3).apply(k).expect("generated words are valid")
        } else {
            random_tensor(&mut rng, sig, 0.4)
        };
        let word = random_word(&mut rng, sig, max_word);
        let before = classify_label(&tensor);
        let after = word.apply(&tensor).ok().map(|k| classify_label(&k));
        if after != Some(before) {
            failures.push(FuzzFailure {
                tensor,
                word,
                before,
                after,
            });
        }
    }
    FuzzReport {
        trials: n,
        failures,
        elapsed: start.elapsed(),
    }
}

/// Exact sign census of the discriminant on an `n x n` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// Grid coordinates `(u_i, v_j)` with their discriminant sign.
    pub samples: Vec<([Rational; 2], i8)>,
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

pub fn grid_discriminant_census(k: &KTParams, bbox: &[Rational; 4], n: usize) -> Result<Census> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("census needs n >= 2, got {n}")));
    }
    let [u0, u1, v0, v1] = bbox;
    let disc = discriminant_poly(k);
    let steps = int(n as i64 - 1);
    let mut census = Census {
        samples: Vec::with_capacity(n * n),
        negative: 0,
        zero: 0,
        positive: 0,
    };
    for j in 0..n {
        let v = v0 + (v1 - v0) * int(j as i64) / &steps;
        for i in 0..n {
            let u = u0 + (u1 - u0) * int(i as i64) / &steps;
            let pt = [u, v.clone()];
            let s = sign(&disc.eval(&pt));
            match s {
                -1 => census.negative += 1,
                0 => census.zero += 1,
                _ => census.positive += 1,
            }
            census.samples.push((pt, s));
        }
    }
    Ok(census)
}

pub fn int_box(b: [i64; 4]) -> [Rational; 4] {
    b.map(int)
}

/// Signs grouped by one null coordinate (`s = t + x` or `r = x - t`).
fn bands(census: &Census, plus: bool) -> BTreeMap<Rational, Vec<i8>> {
    let mut out: BTreeMap<Rational, Vec<i8>> = BTreeMap::new();
    for ([t, x], s) in &census.samples {
        let c = if plus { t + x } else { x - t };
        out.entry(c).or_default().push(*s);
    }
    out
}

/// Shape of the negative set along one null coordinate: `Some((runs,
/// touches_end))` when the non-zero signs depend on that coordinate only.
fn band_shape(census: &Census, plus: bool) -> Option<(usize, bool)> {
    let groups = bands(census, plus);
    let mut flags = Vec::new();
    for signs in groups.values() {
        let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
        if nonzero.is_empty() {
            continue;
        }
        if nonzero.iter().any(|&s| s != nonzero[0]) {
            return None;
        }
        flags.push(nonzero[0] < 0);
    }
    let runs = flags.windows(2).filter(|w| !w[0] && w[1]).count() + usize::from(flags.first() == Some(&true));
    let touches = flags.first() == Some(&true) || flags.last() == Some(&true);
    Some((runs, touches))
}

fn zeros(census: &Census) -> Vec<&[Rational; 2]> {
    census.samples.iter().filter(|(_, s)| *s == 0).map(|(p, _)| p).collect()
}

/// Checks the census against the symbolic singular set of `k` and the
/// characteristic flag of its class.
pub fn census_consistent(k: &KTParams, census: &Census) -> std::result::Result<(), String> {
    let class = classify_label(k);
    let set = singular_set(k);
    let total = census.samples.len();
    let fail = |msg: &str| Err(format!("{class} / {}: {msg} ({census_counts})", set.kind(), census_counts = counts(census)));

    // Flag consistency.
    if class.characteristic() && census.positive == 0 {
        return fail("characteristic class without real simple eigenvalues");
    }
    if class == OrbitClass::M12 && census.negative != total {
        return fail("expected complex eigenvalues everywhere");
    }
    if matches!(class, OrbitClass::E5 | OrbitClass::M10 | OrbitClass::M13 | OrbitClass::M14) && census.zero != total {
        return fail("expected an identically vanishing discriminant");
    }

    // Minkowski: the discriminant is the product of the two null factors.
    if k.signature == MetricSignature::Minkowski {
        let f = null_factors(k).map_err(|e| e.to_string())?;
        let q = |c: &[Rational; 3], s: &Rational| &c[0] + &c[1] * s + &c[2] * s * s;
        for ([t, x], s) in &census.samples {
            let predicted = sign(&q(&f.plus, &(t + x))) * sign(&q(&f.minus, &(x - t)));
            if predicted != *s {
                return fail("sample sign disagrees with the null factorisation");
            }
        }
    }

    let single = |census: &Census| {
        [true, false]
            .into_iter()
            .filter_map(|plus| band_shape(census, plus))
            .collect::<Vec<_>>()
    };
    match &set {
        SingularSet::Empty => {
            if census.positive != total {
                return fail("expected no singular samples");
            }
        }
        SingularSet::WholePlane => {
            if census.positive != 0 {
                return fail("expected every sample singular");
            }
        }
        SingularSet::OnePoint { point } => {
            if census.negative != 0 || zeros(census).iter().any(|p| *p != point) {
                return fail("zero samples away from the singular point");
            }
        }
        SingularSet::TwoPoints { .. } => {
            let pts = set.points_f64();
            let near = |p: &[Rational; 2]| {
                pts.iter().any(|q| (to_f64(&p[0]) - q.0).abs() < 1e-9 && (to_f64(&p[1]) - q.1).abs() < 1e-9)
            };
            if census.negative != 0 || !zeros(census).into_iter().all(near) {
                return fail("zero samples away from the singular points");
            }
        }
        SingularSet::Line(_) | SingularSet::TwoOrthogonalLines(_) => {
            if census.negative != 0 {
                return fail("negative samples for a set of lines");
            }
            let z = zeros(census);
            let on_one = |plus: bool| {
                let vals: Vec<Rational> = z.iter().map(|[t, x]| if plus { t + x } else { x - t }).collect();
                vals.windows(2).all(|w| w[0] == w[1])
            };
            let one_line = on_one(true) || on_one(false);
            let two_lines = {
                // Every zero lies on s = s0 or r = r0 for some s0, r0 taken
                // from zeros off the other line.
                let svals: BTreeMap<Rational, usize> = z.iter().fold(BTreeMap::new(), |mut m, [t, x]| {
                    *m.entry(t + x).or_insert(0) += 1;
                    m
                });
                let s0 = svals.iter().max_by_key(|(_, c)| **c).map(|(s, _)| s.clone());
                match s0 {
                    Some(s0) => {
                        let rest: Vec<Rational> = z.iter().filter(|[t, x]| t + x != s0).map(|[t, x]| x - t).collect();
                        rest.windows(2).all(|w| w[0] == w[1])
                    }
                    None => true,
                }
            };
            let ok = match set {
                SingularSet::Line(_) => one_line,
                _ => two_lines && !one_line,
            };
            if z.is_empty() || !ok {
                return fail("zero samples do not form the expected null lines");
            }
        }
        SingularSet::Strip(_) | SingularSet::StripPlusOrthogonalLine(_) => {
            let ok = single(census).iter().any(|&(runs, touches)| runs == 1 && !touches);
            if !ok || census.negative == 0 {
                return fail("expected exactly one bounded negative band");
            }
            if matches!(set, SingularSet::StripPlusOrthogonalLine(_)) && census.zero == 0 {
                return fail("expected a line of double eigenvalues");
            }
        }
        SingularSet::HalfPlane(_) => {
            let ok = single(census).iter().any(|&(runs, touches)| runs == 1 && touches);
            if !ok {
                return fail("expected a single unbounded negative band");
            }
        }
        SingularSet::TwoStripsMinusIntersection(_) | SingularSet::TwoOppositeQuadrants(_) => {
            if census.negative == 0 || !single(census).is_empty() {
                return fail("negative set should depend on both null coordinates");
            }
        }
    }
    Ok(())
}

fn counts(c: &Census) -> String {
    format!("-{} 0{} +{}", c.negative, c.zero, c.positive)
}

/// `det` of the symbolic generator matrix, in the six parameters.
pub fn symbolic_generator_determinant(sig: MetricSignature) -> Poly {
    let rows: Vec<Vec<Poly>> = GeneratorId::ALL.iter().map(|&id| generator_field(sig, id).to_vec()).collect();
    poly_det(&rows)
}

/// `-2 gamma delta` (Euclidean) or `2 gamma Z+ Z-` (Minkowski), built
/// directly from the parameter polynomials.
pub fn expected_generator_determinant(sig: MetricSignature) -> Poly {
    let x = |i| Poly::var(6, i);
    let k = |c: i64| Poly::constant(6, int(c));
    let (a, b, c, al, be, ga) = (x(0), x(1), x(2), x(3), x(4), x(5));
    match sig {
        MetricSignature::Euclidean => {
            let e1 = &(&(&al * &al) - &(&be * &be)) - &(&ga * &(&a - &b));
            let e2 = &(&al * &be) + &(&ga * &c);
            let delta = &(&e1 * &e1) + &(&k(4) * &(&e2 * &e2));
            &(&k(-2) * &ga) * &delta
        }
        MetricSignature::Minkowski => {
            let sum = &a + &b;
            let two_c = &k(2) * &c;
            let dm = &al - &be;
            let dp = &al + &be;
            let zp = &(&ga * &(&sum - &two_c)) - &(&dm * &dm);
            let zm = &(&ga * &(&sum + &two_c)) - &(&dp * &dp);
            &(&(&k(2) * &ga) * &zp) * &zm
        }
    }
}

/// The component field of `k` plus one stray monomial in one component.
pub fn perturbed_field(rng: &mut StdRng, k: &KTParams) -> QuadraticTensorField {
    let mut f = component_field(k);
    let bumps: [&[u32]; 6] = [&[3, 0], &[0, 3], &[2, 0], &[1, 1], &[0, 2], &[1, 0]];
    let c = loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            break r;
        }
    };
    let slot = rng.gen_range(0..3);
    let mono = bumps[rng.gen_range(0..bumps.len())].to_vec();
    // A non-constant monomial added to a single component always violates
    // one of the Killing equations.
    let bump = Poly::monomial(mono, c);
    match slot {
        0 => f.k11 = &f.k11 + &bump,
        1 => f.k12 = &f.k12 + &bump,
        _ => f.k22 = &f.k22 + &bump,
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub fd_samples: usize,
    /// Negative control: perturbs one generator before the derivative check.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 200,
            seed: 42,
            fd_samples: 20,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub items: Vec<VerifyItem>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

fn item(name: &str, result: std::result::Result<String, String>) -> VerifyItem {
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    VerifyItem {
        name: name.to_string(),
        passed,
        detail,
    }
}

pub fn check_atlas() -> std::result::Result<String, String> {
    let reps = atlas();
    for (class, k) in &reps {
        let got = classify_label(k);
        if got != *class {
            return Err(format!("{k} classified as {got}, expected {class}"));
        }
    }
    Ok(format!("{} representatives", reps.len()))
}

pub fn check_rank_table() -> std::result::Result<String, String> {
    for (class, k) in atlas() {
        let rank = generator_rank(&k);
        let oracle = rank_oracle(&generator_matrix(&k)).map_err(|e| e.to_string())?;
        if rank != class.expected_rank() || oracle != rank {
            return Err(format!(
                "{class} {k}: rank {rank}, oracle {oracle}, expected {}",
                class.expected_rank()
            ));
        }
    }
    Ok("ranks match the class table".into())
}

pub fn check_lie_closure() -> std::result::Result<String, String> {
    for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
        let table = structure_constants(sig);
        for i in 0..6 {
            for j in i + 1..6 {
                if table[i][j].is_none() {
                    return Err(format!("{}: [V{}, V{}] not in the span", sig.name(), i + 1, j + 1));
                }
            }
        }
    }
    Ok("15 brackets per signature close".into())
}

pub fn check_determinants() -> std::result::Result<String, String> {
    for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
        if symbolic_generator_determinant(sig) != expected_generator_determinant(sig) {
            return Err(format!("{}: determinant identity fails", sig.name()));
        }
    }
    Ok("det M = -2 gamma delta and 2 gamma Z+ Z-".into())
}

fn check_fd(samples: usize, seed: u64, inject_fault: bool) -> std::result::Result<String, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for sig in [MetricSignature::Euclidean, MetricSignature::Minkowski] {
        for _ in 0..samples {
            let k = random_float_tensor(&mut rng, sig);
            for id in GeneratorId::ALL {
                let mut expected = generator_vector(id, &k);
                if inject_fault && id == GeneratorId::V1 {
                    expected[0] += Rational::one();
                }
                let err = fd_error(&k, id, 1e-3, &expected).map_err(|e| e.to_string())?;
                worst = worst.max(err);
                if err >= 1e-5 {
                    return Err(format!("{} {id:?} at {k}: error {err:e}", sig.name()));
                }
                if let Some(ratio) = fd_error_ratio(&k, id).map_err(|e| e.to_string())? {
                    if !(50.0..=200.0).contains(&ratio) {
                        return Err(format!("{} {id:?} at {k}: error ratio {ratio}", sig.name()));
                    }
                }
            }
        }
    }
    Ok(format!("max error {worst:.3e} at h = 1e-3"))
}

fn check_killing(samples: usize, seed: u64) -> std::result::Result<String, String> {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e37);
    for i in 0..samples {
        let sig = if i % 2 == 0 {
            MetricSignature::Euclidean
        } else {
            MetricSignature::Minkowski
        };
        let k = random_tensor(&mut rng, sig, 0.2);
        if !poisson_bracket_with_h(&component_field(&k), sig).is_zero() {
            return Err(format!("{{I, H}} != 0 for {k}"));
        }
        if poisson_bracket_with_h(&perturbed_field(&mut rng, &k), sig).is_zero() {
            return Err(format!("perturbation of {k} still Killing"));
        }
    }
    Ok(format!("{samples} tensors"))
}

/// The full suite: atlas, rank table, closure, determinant identities,
/// derivative checks, Killing equation and orbit-invariance fuzz.
pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let mut items = vec![
        item("atlas", check_atlas()),
        item("rank-table", check_rank_table()),
        item("lie-closure", check_lie_closure()),
        item("determinant", check_determinants()),
        item("flow-derivative", check_fd(opts.fd_samples, opts.seed, opts.inject_fault)),
        item("killing", check_killing(opts.fd_samples, opts.seed)),
    ];
    let fuzz = if opts.trials == 0 {
        Ok("skipped".to_string())
    } else {
        let r = fuzz_orbit_invariance(opts.trials, 8, opts.seed);
        match r.failures.first() {
            None => Ok(format!("{} trials in {:.2?}", r.trials, r.elapsed)),
            Some(f) => Err(format!(
                "{} failures; first: {} under {} went {} -> {:?}",
                r.failures.len(),
                f.tensor,
                f.word,
                f.before,
                f.after
            )),
        }
    };
    items.push(item("orbit-fuzz", fuzz));
    VerifyReport { items }
}

/// Convenience: the census used by the singular-set oracle.
pub fn standard_census(k: &KTParams) -> Census {
    grid_discriminant_census(k, &int_box([-3, 3, -3, 3]), 21).expect("n >= 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_rank;

    #[test]
    fn oracle_examples() {
        let e2 = KTParams::euclidean([0, 0, 0, 1, 0, 0]);
        assert_eq!(rank_oracle(&generator_matrix(&e2)).unwrap(), 5);
        assert_eq!(rank_oracle(&RatMatrix::zeros(6, 6)).unwrap(), 0);
        let m6 = KTParams::minkowski([0, 0, 0, 0, 0, 1]);
        assert_eq!(rank_oracle(&generator_matrix(&m6)).unwrap(), 4);
        assert!(matches!(rank_oracle(&RatMatrix::zeros(7, 2)), Err(Error::Dimension(_))));
    }

    #[test]
    fn fd_examples() {
        let k = KTParams::euclidean([3, -1, 2, 1, 5, 2]);
        assert_eq!(generator_fd_check(&k, GeneratorId::V5, 1e-3).unwrap(), 0.0);
        let e1 = KTParams::euclidean([0, 0, 1, 0, 0, 1]);
        assert!(generator_fd_check(&e1, GeneratorId::V1, 1e-3).unwrap() < 1e-5);
        let m1 = KTParams::minkowski([0, 1, 0, 0, 0, 1]);
        assert!(generator_fd_check(&m1, GeneratorId::V3, 1e-3).unwrap() < 1e-5);
        assert!(generator_fd_check(&m1, GeneratorId::V3, 0.5).is_err());
    }

    #[test]
    fn fuzz_examples() {
        let r = fuzz_orbit_invariance(0, 8, 1);
        assert!(r.passed() && r.trials == 0);
        let r = fuzz_orbit_invariance(40, 8, 7);
        assert!(r.passed(), "{:?}", r.failures.first());
        let m1 = KTParams::minkowski([0, 1, 0, 0, 0, 1]);
        let w = GroupWord(vec![Step::Discrete(DiscreteId::R0)]);
        assert_eq!(classify_label(&w.apply(&m1).unwrap()), OrbitClass::M1);
    }

    #[test]
    fn census_examples() {
        let b = int_box([-2, 2, -2, 2]);
        let c = grid_discriminant_census(&KTParams::minkowski([1, 0, 0, 0, 0, 0]), &b, 9).unwrap();
        assert_eq!(c.positive, 81);
        let c = grid_discriminant_census(&KTParams::minkowski([0, 0, 1, 0, 0, 0]), &b, 9).unwrap();
        assert_eq!(c.negative, 81);
        let c = grid_discriminant_census(&KTParams::minkowski([1, 1, 1, 0, 0, 0]), &b, 9).unwrap();
        assert_eq!(c.zero, 81);
        assert!(grid_discriminant_census(&KTParams::minkowski([1, 1, 1, 0, 0, 0]), &b, 1).is_err());
    }

    #[test]
    fn census_matches_every_representative() {
        for (_, k) in atlas() {
            census_consistent(&k, &standard_census(&k)).unwrap();
        }
    }

    #[test]
    fn census_catches_a_wrong_description() {
        // The M2 strip tested against an M11 census must fail.
        let m2 = KTParams::minkowski([0, 0, 1, 0, 0, 1]);
        let m11 = KTParams::minkowski([1, 0, 0, 0, 0, 0]);
        assert!(census_consistent(&m11, &standard_census(&m2)).is_err());
    }

    #[test]
    fn determinant_identities() {
        assert_eq!(check_determinants(), Ok("det M = -2 gamma delta and 2 gamma Z+ Z-".into()));
    }

    #[test]
    fn verify_suite_and_negative_control() {
        let opts = VerifyOptions {
            trials: 20,
            fd_samples: 3,
            ..VerifyOptions::default()
        };
        let r = run_verify(&opts);
        assert!(r.passed(), "{:?}", r.items);
        let bad = run_verify(&VerifyOptions {
            inject_fault: true,
            ..opts
        });
        let failed: Vec<_> = bad.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
        assert_eq!(failed, vec!["flow-derivative"]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn oracle_agrees_with_elimination(vals in proptest::collection::vec(-3i64..=3, 36), dup_rows in 0usize..4) {
            let mut m = RatMatrix::new(6, 6, vals.into_iter().map(int).collect()).unwrap();
            // Duplicate some rows so low ranks occur.
            for r in 0..dup_rows {
                for c in 0..6 {
                    let v = m.get(r, c) * int(2);
                    m.set(5 - r, c, v);
                }
            }
            proptest::prop_assert_eq!(rank_oracle(&m).unwrap(), rat_rank(&m));
        }
    }
}
