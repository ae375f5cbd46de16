//! Fundamental invariants and exact membership in the distinguished
//! surfaces of parameter space.
//!
//! Euclidean: `gamma` and
//! `delta = (alpha^2 - beta^2 - gamma(A-B))^2 + 4(alpha beta + gamma C)^2`.
//!
//! Minkowski: `gamma`, `Z+ = gamma(A+B-2C) - (alpha-beta)^2`,
//! `Z- = gamma(A+B+2C) - (alpha+beta)^2`, and the auxiliary
//! `p_cart = (A+B)^2 - 4C^2` that separates the two pairs of dihedra on
//! `alpha = beta = gamma = 0`.

use num_traits::Zero;

use crate::error::Result;
use crate::rational::{int, Rational};
use crate::tensor::{KTParams, MetricSignature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclideanInvariants {
    pub gamma: Rational,
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiInvariants {
    pub gamma: Rational,
    pub z_plus: Rational,
    pub z_minus: Rational,
    pub p_cart: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariants {
    Euclidean(EuclideanInvariants),
    Minkowski(MinkowskiInvariants),
}

impl Invariants {
    pub fn of(k: &KTParams) -> Invariants {
        match k.signature {
            MetricSignature::Euclidean => Invariants::Euclidean(euclid_unchecked(k)),
            MetricSignature::Minkowski => Invariants::Minkowski(mink_unchecked(k)),
        }
    }

    pub fn gamma(&self) -> &Rational {
        match self {
            Invariants::Euclidean(e) => &e.gamma,
            Invariants::Minkowski(m) => &m.gamma,
        }
    }
}

pub fn euclid_invariants(k: &KTParams) -> Result<EuclideanInvariants> {
    k.require(MetricSignature::Euclidean)?;
    Ok(euclid_unchecked(k))
}

/// The two quantities whose simultaneous vanishing defines the Euclidean
/// surface S2: `alpha^2 - beta^2 - gamma(A-B)` and `alpha beta + gamma C`.
pub fn euclid_s2_equations(k: &KTParams) -> (Rational, Rational) {
    let first = &k.alpha * &k.alpha - &k.beta * &k.beta - &k.gamma * (&k.a - &k.b);
    let second = &k.alpha * &k.beta + &k.gamma * &k.c;
    (first, second)
}

fn euclid_unchecked(k: &KTParams) -> EuclideanInvariants {
    let (e1, e2) = euclid_s2_equations(k);
    EuclideanInvariants {
        gamma: k.gamma.clone(),
        delta: &e1 * &e1 + int(4) * &e2 * &e2,
    }
}

pub fn mink_invariants(k: &KTParams) -> Result<MinkowskiInvariants> {
    k.require(MetricSignature::Minkowski)?;
    Ok(mink_unchecked(k))
}

fn mink_unchecked(k: &KTParams) -> MinkowskiInvariants {
    let two_c = int(2) * &k.c;
    let sum = &k.a + &k.b;
    let d_minus = &k.alpha - &k.beta;
    let d_plus = &k.alpha + &k.beta;
    MinkowskiInvariants {
        gamma: k.gamma.clone(),
        z_plus: &k.gamma * (&sum - &two_c) - &d_minus * &d_minus,
        z_minus: &k.gamma * (&sum + &two_c) - &d_plus * &d_plus,
        p_cart: &sum * &sum - &two_c * &two_c,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EuclideanSurfaces {
    pub in_s1: bool,
    pub in_s2: bool,
    pub in_s3: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinkowskiSurfaces {
    pub in_s1: bool,
    pub in_s2: bool,
    pub in_b1: bool,
    pub in_b2: bool,
    pub in_s3: bool,
    pub in_s4_c1: bool,
    pub in_s4_c2: bool,
    pub in_s5: bool,
}

impl MinkowskiSurfaces {
    pub fn in_s4(&self) -> bool {
        self.in_s4_c1 || self.in_s4_c2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceFlags {
    Euclidean(EuclideanSurfaces),
    Minkowski(MinkowskiSurfaces),
}

pub fn surface_flags(k: &KTParams) -> SurfaceFlags {
    let g0 = k.gamma.is_zero();
    match k.signature {
        MetricSignature::Euclidean => {
            let (e1, e2) = euclid_s2_equations(k);
            SurfaceFlags::Euclidean(EuclideanSurfaces {
                in_s1: g0,
                in_s2: e1.is_zero() && e2.is_zero(),
                in_s3: g0
                    && k.alpha.is_zero()
                    && k.beta.is_zero()
                    && k.c.is_zero()
                    && k.a == k.b,
            })
        }
        MetricSignature::Minkowski => {
            let inv = mink_unchecked(k);
            let sum = &k.a + &k.b;
            let two_c = int(2) * &k.c;
            let in_b1 = inv.z_plus.is_zero();
            let in_b2 = inv.z_minus.is_zero();
            let in_s3 = &k.gamma * &sum == &k.alpha * &k.alpha + &k.beta * &k.beta
                && &k.gamma * &k.c == &k.alpha * &k.beta;
            let in_s4_c1 = g0 && k.alpha == k.beta && sum == two_c;
            let in_s4_c2 = g0 && k.alpha == -k.beta.clone() && sum == -two_c.clone();
            let in_s5 = g0
                && k.alpha.is_zero()
                && k.beta.is_zero()
                && sum.is_zero()
                && k.c.is_zero();
            SurfaceFlags::Minkowski(MinkowskiSurfaces {
                in_s1: g0,
                in_s2: in_b1 || in_b2,
                in_b1,
                in_b2,
                in_s3,
                in_s4_c1,
                in_s4_c2,
                in_s5,
            })
        }
    }
}
