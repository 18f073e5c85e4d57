//! Deterministic identity certificates for polynomial maps.
//!
//! Each coordinate of `p(x1, …, xm)` is a commutative polynomial in the
//! coordinates of the `xi`, and the part of `p` with degree vector
//! `(d1, …, dm)` is homogeneous of degree `di` in the coordinates of `xi`.
//!
//! A homogeneous polynomial of degree `d` in `k` variables is zero iff it
//! vanishes on the integer slice `{a ∈ ℕᵏ : |a| = d}` (dehomogenize along
//! `Σ a = d` and use unisolvence of the simplex grid for degree `≤ d`). For a
//! multihomogeneous component the product of slices, one per variable, is
//! therefore an exact test. Components with distinct degree vectors cannot
//! cancel, so `p` vanishes iff every component vanishes on its own grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Octonion};
use crate::polynomial::{Polynomial, ProductKind};
use crate::sampling::{random_rational_octonion, random_rational_pure, rng_for, STREAM_WITNESS};
use crate::scalar::{Rational, Scalar};

/// Which coordinates each variable ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// All of O (8 coordinates).
    Octonions,
    /// Pure octonions V (coordinates 1..7).
    Pure,
}

impl Domain {
    fn coords(self) -> &'static [usize] {
        match self {
            Domain::Octonions => &[0, 1, 2, 3, 4, 5, 6, 7],
            Domain::Pure => &[1, 2, 3, 4, 5, 6, 7],
        }
    }
}

/// Which output coordinates must vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    All,
    ScalarPart,
    PurePart,
}

impl Target {
    fn vanishes(self, v: &Octonion<Rational>) -> bool {
        match self {
            Target::All => v.is_exact_zero(),
            Target::ScalarPart => v.coords[0].is_exact_zero(),
            Target::PurePart => v.coords[1..].iter().all(Rational::is_exact_zero),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridCertificate {
    pub components: usize,
    pub points: usize,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum Vanishing {
    Certified(GridCertificate),
    /// A point where the targeted coordinates of `p` are nonzero.
    Witness { assignment: Vec<Octonion<Rational>>, value: Octonion<Rational> },
}

/// All `a ∈ ℕᵏ` with `|a| = d`, in lexicographic order.
fn compositions(d: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn slice_points(d: usize, domain: Domain) -> Vec<Octonion<Rational>> {
    let coords = domain.coords();
    compositions(d, coords.len())
        .into_iter()
        .map(|a| {
            let mut o = Octonion::zero();
            for (&c, &v) in coords.iter().zip(&a) {
                o.coords[c] = Rational::integer(v as i64);
            }
            o
        })
        .collect()
}

/// Number of grid points `certify` would visit.
pub fn grid_size(p: &Polynomial, domain: Domain) -> usize {
    p.multidegree_components()
        .iter()
        .map(|(d, _)| d.iter().map(|&di| compositions(di, domain.coords().len()).len()).product::<usize>())
        .sum()
}

/// A component is nonzero at `start`; find a point where all of `p` is.
/// Components only cancel on a proper subvariety, so seeded random points
/// succeed almost immediately.
fn witness_for_whole(
    alg: &Algebra<Rational>,
    p: &Polynomial,
    product: ProductKind,
    domain: Domain,
    target: Target,
    start: Vec<Octonion<Rational>>,
) -> Vanishing {
    let value = p.evaluate_unchecked(alg, &start, product);
    if !target.vanishes(&value) {
        return Vanishing::Witness { assignment: start, value };
    }
    for attempt in 0.. {
        let mut rng = rng_for(0, STREAM_WITNESS, attempt);
        let assignment: Vec<Octonion<Rational>> = (0..p.num_vars())
            .map(|_| match domain {
                Domain::Octonions => random_rational_octonion(&mut rng),
                Domain::Pure => random_rational_pure(&mut rng),
            })
            .collect();
        let value = p.evaluate_unchecked(alg, &assignment, product);
        if !target.vanishes(&value) {
            return Vanishing::Witness { assignment, value };
        }
    }
    unreachable!("a nonzero polynomial map vanishes on a proper subvariety only")
}

/// Decides exactly whether the `target` coordinates of `p` vanish on `domain`.
///
/// The first witness in enumeration order is returned, independent of thread count.
pub fn certify(
    alg: &Algebra<Rational>,
    p: &Polynomial,
    product: ProductKind,
    domain: Domain,
    target: Target,
) -> Vanishing {
    let mut total = 0;
    let components = p.multidegree_components();
    for (degrees, component) in &components {
        let grids: Vec<Vec<Octonion<Rational>>> = degrees.iter().map(|&d| slice_points(d, domain)).collect();
        let count: usize = grids.iter().map(Vec::len).product();
        total += count;
        let witness = (0..count).into_par_iter().find_map_first(|mut idx| {
            let assignment: Vec<Octonion<Rational>> = grids
                .iter()
                .map(|g| {
                    let pt = g[idx % g.len()].clone();
                    idx /= g.len();
                    pt
                })
                .collect();
            let value = component.evaluate_unchecked(alg, &assignment, product);
            (!target.vanishes(&value)).then_some((assignment, value))
        });
        if let Some((assignment, _)) = witness {
            return witness_for_whole(alg, p, product, domain, target, assignment);
        }
    }
    Vanishing::Certified(GridCertificate { components: components.len(), points: total })
}
