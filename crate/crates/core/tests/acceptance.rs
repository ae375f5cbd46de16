//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ktweb::classify::{atlas, classify, classify_label, OrbitClass};
use ktweb::group::{
    apply_discrete, apply_finite, generator_matrix, generator_rank, structure_constants,
    DiscreteId, GeneratorId,
};
use ktweb::invariants::Invariants;
use ktweb::rational::frac;
use ktweb::tensor::{
    component_field, first_integral_along_geodesic, poisson_bracket_with_h,
    MetricSignature, Point2,
};
use ktweb::testkit::{
    census_consistent, check_determinants, fd_error_ratio, fuzz_orbit_invariance,
    generator_fd_check, perturbed_field, random_float_tensor, random_rational, random_tensor,
    rank_oracle, standard_census,
};
use ktweb::web::{max_orthogonality_defect, render_svg, trace_web, WebRenderConfig};

type Outcome = Result<String, String>;

const SIGS: [MetricSignature; 2] = [MetricSignature::Euclidean, MetricSignature::Minkowski];

fn representative_atlas() -> Outcome {
    let start = Instant::now();
    let reps = atlas();
    for (class, k) in &reps {
        let got = classify(k).class;
        if got != *class {
            return Err(format!("{k} -> {got}, expected {class}"));
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(1) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} representatives in {t:.2?}", reps.len()))
}

fn rank_table() -> Outcome {
    let euclid = [6, 5, 4, 3, 1];
    let mink = [6, 6, 6, 5, 5, 4, 5, 5, 4, 3, 3, 3, 2, 1];
    let table: Vec<usize> = euclid.iter().chain(&mink).copied().collect();
    for (class, expected) in OrbitClass::ALL.iter().zip(table) {
        if class.expected_rank() != expected {
            return Err(format!("{class}: table says {}", class.expected_rank()));
        }
    }
    for (class, k) in atlas() {
        let r = generator_rank(&k);
        let o = rank_oracle(&generator_matrix(&k)).map_err(|e| e.to_string())?;
        if r != class.expected_rank() || o != r {
            return Err(format!("{class} {k}: rank {r}, oracle {o}"));
        }
    }
    Ok("19 classes, all representatives".into())
}

fn determinant_formulas() -> Outcome {
    check_determinants()
}

fn lie_closure() -> Outcome {
    for sig in SIGS {
        let first = structure_constants(sig);
        let mut n = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                if first[i][j].is_none() {
                    return Err(format!("{}: [V{}, V{}] does not close", sig.name(), i + 1, j + 1));
                }
                n += 1;
            }
        }
        if n != 15 || structure_constants(sig) != first {
            return Err(format!("{}: structure constants not reproducible", sig.name()));
        }
    }
    Ok("15 brackets per signature".into())
}

fn flow_consistency() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst = 0.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    let mut ratios = 0;
    for sig in SIGS {
        for _ in 0..100 {
            let k = random_float_tensor(&mut rng, sig);
            for id in GeneratorId::ALL {
                let e = generator_fd_check(&k, id, 1e-3).map_err(|e| e.to_string())?;
                worst = worst.max(e);
                if e >= 1e-5 {
                    return Err(format!("{id:?} at {k}: error {e:e}"));
                }
                if let Some(r) = fd_error_ratio(&k, id).map_err(|e| e.to_string())? {
                    lo = lo.min(r);
                    hi = hi.max(r);
                    ratios += 1;
                    if !(50.0..=200.0).contains(&r) {
                        return Err(format!("{id:?} at {k}: ratio {r}"));
                    }
                }
            }
        }
    }
    Ok(format!("max error {worst:.2e}; {ratios} ratios in [{lo:.1}, {hi:.1}]"))
}

fn orbit_invariance() -> Outcome {
    let r = fuzz_orbit_invariance(1000, 8, 42);
    if let Some(f) = r.failures.first() {
        return Err(format!("{} failures; first {} under {}", r.failures.len(), f.tensor, f.word));
    }
    if r.elapsed >= Duration::from_secs(30) {
        return Err(format!("took {:?}", r.elapsed));
    }
    Ok(format!("{} trials, 0 failures, {:.2?}", r.trials, r.elapsed))
}

fn invariant_covariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..200 {
        let sig = SIGS[i % 2];
        let k = random_tensor(&mut rng, sig, 0.2);
        let r = frac(rng.gen_range(1..=9), rng.gen_range(1..=9));
        let lam = loop {
            let l = random_rational(&mut rng);
            if !l.is_zero() {
                break l;
            }
        };
        let dil = apply_finite(&k, GeneratorId::V4, &r).map_err(|e| e.to_string())?;
        let sc = apply_finite(&k, GeneratorId::V6, &lam).map_err(|e| e.to_string())?;
        let ok = match (Invariants::of(&k), Invariants::of(&dil), Invariants::of(&sc)) {
            (Invariants::Euclidean(a), Invariants::Euclidean(d), Invariants::Euclidean(s)) => {
                let r4 = &r * &r * &r * &r;
                let l4 = &lam * &lam * &lam * &lam;
                d.gamma == a.gamma
                    && d.delta == &r4 * &a.delta
                    && s.gamma == &lam * &a.gamma
                    && s.delta == &l4 * &a.delta
            }
            (Invariants::Minkowski(a), Invariants::Minkowski(d), Invariants::Minkowski(s)) => {
                let r2 = &r * &r;
                let l2 = &lam * &lam;
                d.gamma == a.gamma
                    && d.z_plus == &r2 * &a.z_plus
                    && d.z_minus == &r2 * &a.z_minus
                    && s.gamma == &lam * &a.gamma
                    && s.z_plus == &l2 * &a.z_plus
                    && s.z_minus == &l2 * &a.z_minus
            }
            _ => false,
        };
        if !ok {
            return Err(format!("{k} with r = {r}, lambda = {lam}"));
        }
    }
    Ok("200 cases exact".into())
}

fn killing_verification() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..200 {
        let sig = SIGS[i % 2];
        let k = random_tensor(&mut rng, sig, 0.1);
        if !poisson_bracket_with_h(&component_field(&k), sig).is_zero() {
            return Err(format!("bracket nonzero for {k}"));
        }
    }
    for i in 0..50 {
        let sig = SIGS[i % 2];
        let k = random_tensor(&mut rng, sig, 0.1);
        if poisson_bracket_with_h(&perturbed_field(&mut rng, &k), sig).is_zero() {
            return Err(format!("perturbed field of {k} passes"));
        }
    }
    for i in 0..100 {
        let sig = SIGS[i % 2];
        let k = random_tensor(&mut rng, sig, 0.1);
        let q0 = Point2::new(random_rational(&mut rng), random_rational(&mut rng));
        let dir = Point2::new(random_rational(&mut rng), random_rational(&mut rng));
        let f = first_integral_along_geodesic(&k, &q0, &dir);
        if !f.deriv(0).is_zero() {
            return Err(format!("{k}: integral {f} not constant"));
        }
    }
    Ok("200 Killing, 50 perturbed, 100 geodesics".into())
}

fn singular_taxonomy() -> Outcome {
    for (_, k) in atlas() {
        census_consistent(&k, &standard_census(&k))?;
    }
    Ok(format!("{} representatives consistent", atlas().len()))
}

fn minkowski_swap() -> Outcome {
    let mut labels = std::collections::BTreeSet::new();
    for (class, k) in atlas() {
        if class.signature() != MetricSignature::Minkowski {
            continue;
        }
        let swapped = classify_label(&apply_discrete(&k, DiscreteId::RSwap));
        let expected = match class {
            OrbitClass::M7 => OrbitClass::M8,
            OrbitClass::M8 => OrbitClass::M7,
            c => c,
        };
        if swapped != expected {
            return Err(format!("{class} {k} -> {swapped}"));
        }
        if class.characteristic() {
            labels.insert(class.min(swapped));
        }
    }
    if labels.len() != 9 {
        return Err(format!("{} web types after identification", labels.len()));
    }
    Ok("M7 <-> M8, 9 web types".into())
}

fn web_rendering() -> Outcome {
    let cfg = WebRenderConfig::default();
    let mut classes = 0;
    let mut worst = 0.0f64;
    for class in OrbitClass::ALL.into_iter().filter(|c| c.characteristic()) {
        let k = ktweb::classify::representatives(class)[0].clone();
        let doc = trace_web(&k, &cfg).map_err(|e| e.to_string())?;
        if doc.foliation_solid.is_empty() || doc.foliation_dashed.is_empty() {
            return Err(format!("{class}: empty foliation"));
        }
        let d = max_orthogonality_defect(&k, &doc, cfg.singular_tol);
        worst = worst.max(d);
        if d >= 1e-6 {
            return Err(format!("{class}: |g(u, w)| = {d:e}"));
        }
        if render_svg(&doc, &cfg) != render_svg(&trace_web(&k, &cfg).unwrap(), &cfg) {
            return Err(format!("{class}: SVG not deterministic"));
        }
        classes += 1;
    }
    if classes != 14 {
        return Err(format!("{classes} characteristic classes"));
    }
    Ok(format!("14 webs, max |g(u, w)| {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("representative atlas", representative_atlas),
        ("rank table", rank_table),
        ("determinant formulas", determinant_formulas),
        ("Lie closure", lie_closure),
        ("flow consistency", flow_consistency),
        ("orbit invariance", orbit_invariance),
        ("invariant covariance", invariant_covariance),
        ("Killing verification", killing_verification),
        ("singular-set taxonomy", singular_taxonomy),
        ("Minkowski swap", minkowski_swap),
        ("web rendering", web_rendering),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{t:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
