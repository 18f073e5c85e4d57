//! Automorphisms of the real division octonions.
//!
//! An orthonormal triple `(u, v, w)` of pure octonions with `w ⟂ uv` generates
//! the multiplicative basis `1, u, v, uv, w, uw, vw, (uv)w`, which has the same
//! multiplication table as `1, e1, …, e7`. Sending one such basis to another is
//! therefore an automorphism. Any unit pure octonion starts such a triple, which
//! makes the automorphism group transitive on pure octonions of a given norm.

use serde::Serialize;

use crate::algebra::{Algebra, Octonion};
use crate::error::{Error, Result};
use crate::sampling::{derive_seed, random_real_pure, rng_for, STREAM_ORBIT};

/// Draw attempts before giving up on a random completion.
pub const MAX_DRAWS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasicTriple {
    pub u: Octonion<f64>,
    pub v: Octonion<f64>,
    pub w: Octonion<f64>,
}

impl BasicTriple {
    /// `(e1, e2, e4)`, which generates the standard basis.
    pub fn canonical() -> Self {
        BasicTriple { u: Octonion::basis(1), v: Octonion::basis(2), w: Octonion::basis(4) }
    }

    /// Largest violation of the unit-norm and orthogonality conditions.
    pub fn defect(&self, alg: &Algebra<f64>) -> f64 {
        let uv = alg.multiply(&self.u, &self.v);
        let mut worst: f64 = 0.0;
        for x in [&self.u, &self.v, &self.w] {
            worst = worst.max((alg.norm(x) - 1.0).abs()).max(x.coords[0].abs());
        }
        for (a, b) in [(&self.u, &self.v), (&self.u, &self.w), (&self.v, &self.w), (&uv, &self.w)] {
            worst = worst.max(alg.bilinear(a, b).abs());
        }
        worst
    }

    /// `1, u, v, uv, w, uw, vw, (uv)w`
    pub fn generated_basis(&self, alg: &Algebra<f64>) -> [Octonion<f64>; 8] {
        let uv = alg.multiply(&self.u, &self.v);
        [
            Octonion::one(),
            self.u.clone(),
            self.v.clone(),
            uv.clone(),
            self.w.clone(),
            alg.multiply(&self.u, &self.w),
            alg.multiply(&self.v, &self.w),
            alg.multiply(&uv, &self.w),
        ]
    }
}

/// A linear map of O given by its matrix on coordinates; column `k` is the image of `e_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Automorphism {
    pub matrix: [[f64; 8]; 8],
}

impl Automorphism {
    pub fn identity() -> Self {
        let mut matrix = [[0.0; 8]; 8];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Automorphism { matrix }
    }

    pub fn apply(&self, x: &Octonion<f64>) -> Octonion<f64> {
        Octonion::from_coords(std::array::from_fn(|r| (0..8).map(|c| self.matrix[r][c] * x.coords[c]).sum()))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let mut matrix = [[0.0; 8]; 8];
        for (r, row) in matrix.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..8).map(|k| self.matrix[r][k] * other.matrix[k][c]).sum();
            }
        }
        Automorphism { matrix }
    }

    /// Automorphisms of the division octonions are orthogonal, so the inverse is the transpose.
    pub fn inverse(&self) -> Automorphism {
        let mut matrix = [[0.0; 8]; 8];
        for (r, row) in matrix.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.matrix[c][r];
            }
        }
        Automorphism { matrix }
    }

    /// `max ‖φ(ab) − φ(a)φ(b)‖` over the given pairs (Euclidean length).
    pub fn multiplicativity_residual<'a>(
        &self,
        alg: &Algebra<f64>,
        pairs: impl IntoIterator<Item = (&'a Octonion<f64>, &'a Octonion<f64>)>,
    ) -> f64 {
        pairs
            .into_iter()
            .map(|(a, b)| {
                let lhs = self.apply(&alg.multiply(a, b));
                let rhs = alg.multiply(&self.apply(a), &self.apply(b));
                lhs.sub(&rhs).euclidean_len()
            })
            .fold(0.0, f64::max)
    }

    /// Residual over all 64 pairs of basis elements.
    pub fn basis_residual(&self, alg: &Algebra<f64>) -> f64 {
        let basis: Vec<Octonion<f64>> = (0..8).map(Octonion::basis).collect();
        let pairs: Vec<_> = basis.iter().flat_map(|a| basis.iter().map(move |b| (a, b))).collect();
        self.multiplicativity_residual(alg, pairs)
    }
}

fn require_division(alg: &Algebra<f64>) -> Result<()> {
    if alg.is_standard() {
        Ok(())
    } else {
        Err(Error::RequiresStandardParams)
    }
}

fn check_pure_nonzero(alg: &Algebra<f64>, x: &Octonion<f64>) -> Result<()> {
    if !alg.is_pure(x) {
        return Err(Error::NotPure);
    }
    if alg.is_zero_octonion(x) {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

fn length(x: &Octonion<f64>) -> f64 {
    x.dot(x).sqrt()
}

/// Removes from `r` its components along the orthonormal vectors `against`.
fn orthogonalize(r: &Octonion<f64>, against: &[&Octonion<f64>]) -> Octonion<f64> {
    against.iter().fold(r.clone(), |acc, b| acc.sub(&b.scale(&acc.dot(b))))
}

/// Deterministic completion for a multiple of a basis element: the lowest-index
/// basis elements satisfying the constraints.
fn canonical_completion(alg: &Algebra<f64>, u: &Octonion<f64>) -> Option<BasicTriple> {
    let support: Vec<usize> = (1..8).filter(|&i| u.coords[i] != 0.0).collect();
    let &[k] = support.as_slice() else { return None };
    let u = Octonion::basis(k).scale(&u.coords[k].signum());
    let j = (1..8).find(|&j| j != k)?;
    let l = (1..8).find(|&l| ![k, j, k ^ j].contains(&l))?;
    let triple = BasicTriple { u, v: Octonion::basis(j), w: Octonion::basis(l) };
    (triple.defect(alg) == 0.0).then_some(triple)
}

/// Extends `u` (pure, nonzero) to a basic triple whose first element is `u/|u|`.
pub fn complete_basic_triple(alg: &Algebra<f64>, u: &Octonion<f64>, seed: u64) -> Result<BasicTriple> {
    require_division(alg)?;
    check_pure_nonzero(alg, u)?;
    if let Some(t) = canonical_completion(alg, u) {
        return Ok(t);
    }
    let mut unit = u.scale(&(1.0 / length(u)));
    unit.coords[0] = 0.0;
    for attempt in 0..MAX_DRAWS {
        let mut rng = rng_for(seed, STREAM_ORBIT, attempt as u64);
        let v = orthogonalize(&random_real_pure(&mut rng), &[&unit]);
        let lv = length(&v);
        if lv < 1e-3 {
            continue;
        }
        let v = v.scale(&(1.0 / lv));
        let uv = alg.multiply(&unit, &v);
        let w = orthogonalize(&random_real_pure(&mut rng), &[&unit, &v, &uv]);
        let lw = length(&w);
        if lw < 1e-3 {
            continue;
        }
        let triple = BasicTriple { u: unit.clone(), v, w: w.scale(&(1.0 / lw)) };
        if triple.defect(alg) <= alg.tolerance() {
            return Ok(triple);
        }
    }
    Err(Error::DegenerateDraw(MAX_DRAWS))
}

/// The automorphism taking the basis generated by `src` to the one generated by `dst`.
pub fn automorphism_from_triples(alg: &Algebra<f64>, src: &BasicTriple, dst: &BasicTriple) -> Result<Automorphism> {
    require_division(alg)?;
    let tol = alg.tolerance();
    let defect = src.defect(alg).max(dst.defect(alg));
    if defect > tol {
        return Err(Error::VerificationFailed(defect));
    }
    let bs = src.generated_basis(alg);
    let bd = dst.generated_basis(alg);
    // bs is orthonormal, so M = Bd · Bsᵀ
    let mut matrix = [[0.0; 8]; 8];
    for (r, row) in matrix.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..8).map(|k| bd[k].coords[r] * bs[k].coords[c]).sum();
        }
    }
    let phi = Automorphism { matrix };
    let residual = phi.basis_residual(alg).max(phi.apply(&Octonion::one()).sub(&Octonion::one()).euclidean_len());
    if residual > tol {
        return Err(Error::VerificationFailed(residual));
    }
    Ok(phi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureMap {
    pub c: f64,
    pub phi: Automorphism,
    /// `‖y − cφ(x)‖` (Euclidean length)
    pub residual: f64,
}

/// Finds `c` and an automorphism `φ` with `y = c·φ(x)` for nonzero pure `x`, `y`.
///
/// `c = √(‖y‖/‖x‖)`, and exactly 1 when the norms agree within tolerance.
pub fn map_pure(alg: &Algebra<f64>, x: &Octonion<f64>, y: &Octonion<f64>, seed: u64) -> Result<PureMap> {
    require_division(alg)?;
    check_pure_nonzero(alg, x)?;
    check_pure_nonzero(alg, y)?;
    let nx = alg.norm(x);
    let ny = alg.norm(y);
    let c = if (nx - ny).abs() <= alg.tolerance() * nx.max(1.0) { 1.0 } else { (ny / nx).sqrt() };
    let tx = complete_basic_triple(alg, x, derive_seed(seed, STREAM_ORBIT, 1 << 32))?;
    let ty = complete_basic_triple(alg, y, derive_seed(seed, STREAM_ORBIT, (1 << 32) + 1))?;
    let phi = automorphism_from_triples(alg, &tx, &ty)?;
    let residual = y.sub(&phi.apply(x).scale(&c)).euclidean_len();
    Ok(PureMap { c, phi, residual })
}

pub fn apply(phi: &Automorphism, x: &Octonion<f64>) -> Octonion<f64> {
    phi.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_real_octonion;

    fn alg() -> Algebra<f64> {
        Algebra::standard_real(1e-9)
    }

    fn e(i: usize) -> Octonion<f64> {
        Octonion::basis(i)
    }

    #[test]
    fn canonical_triple_is_valid() {
        let a = alg();
        let t = complete_basic_triple(&a, &e(1), 0).unwrap();
        assert_eq!(t, BasicTriple::canonical());
        assert_eq!(t.defect(&a), 0.0);
        let b = t.generated_basis(&a);
        for (k, x) in b.iter().enumerate() {
            assert_eq!(*x, e(k));
        }
    }

    #[test]
    fn scaled_basis_normalizes() {
        let a = alg();
        let t = complete_basic_triple(&a, &e(3).scale(&2.0), 0).unwrap();
        assert_eq!(t.u, e(3));
        let t = complete_basic_triple(&a, &e(5).scale(&-0.5), 0).unwrap();
        assert_eq!(t.u, e(5).scale(&-1.0));
    }

    #[test]
    fn completion_errors() {
        let a = alg();
        assert_eq!(complete_basic_triple(&a, &Octonion::zero(), 0), Err(Error::ZeroInput));
        assert_eq!(complete_basic_triple(&a, &Octonion::one(), 0), Err(Error::NotPure));
        let split = Algebra::new(crate::AlgebraParams::new(1.0, -1.0, -1.0).unwrap(), 1e-9);
        assert_eq!(complete_basic_triple(&split, &e(1), 0), Err(Error::RequiresStandardParams));
    }

    #[test]
    fn random_completion_is_valid() {
        let a = alg();
        let u = Octonion::from_coords([0.0, 0.3, -1.2, 0.5, 0.0, 2.0, 0.1, -0.7]);
        let t = complete_basic_triple(&a, &u, 42).unwrap();
        assert!(t.defect(&a) < 1e-12);
        let expected = u.scale(&(1.0 / a.norm(&u).sqrt()));
        assert!(t.u.sub(&expected).euclidean_len() < 1e-15);
    }

    #[test]
    fn identity_from_equal_triples() {
        let a = alg();
        let t = BasicTriple::canonical();
        let phi = automorphism_from_triples(&a, &t, &t).unwrap();
        assert_eq!(phi, Automorphism::identity());
        let u = Octonion::from_coords([0.0, 1.0, 2.0, 0.0, -1.0, 0.0, 0.5, 0.0]);
        let r = complete_basic_triple(&a, &u, 9).unwrap();
        let phi = automorphism_from_triples(&a, &r, &r).unwrap();
        for (row, id_row) in phi.matrix.iter().zip(Automorphism::identity().matrix.iter()) {
            for (x, y) in row.iter().zip(id_row) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn swapping_e1_e2() {
        let a = alg();
        let src = BasicTriple::canonical();
        // (e2, e1, e4) is a valid triple: e2e1 = -e3 is orthogonal to e4
        let dst = BasicTriple { u: e(2), v: e(1), w: e(4) };
        let phi = automorphism_from_triples(&a, &src, &dst).unwrap();
        assert_eq!(phi.apply(&e(1)), e(2));
        assert_eq!(phi.apply(&e(2)), e(1));
        assert_eq!(phi.apply(&e(3)), e(3).scale(&-1.0));
        assert!(phi.basis_residual(&a) <= 1e-9);
    }

    #[test]
    fn invalid_triple_is_rejected() {
        let a = alg();
        let bad = BasicTriple { u: e(1), v: e(2), w: e(3) };
        assert!(matches!(
            automorphism_from_triples(&a, &BasicTriple::canonical(), &bad),
            Err(Error::VerificationFailed(_))
        ));
    }

    #[test]
    fn map_pure_examples() {
        let a = alg();
        let m = map_pure(&a, &e(1), &e(2), 0).unwrap();
        assert_eq!(m.c, 1.0);
        assert!(m.residual <= 1e-12);

        let m = map_pure(&a, &e(1), &e(1).scale(&3.0), 0).unwrap();
        assert_eq!(m.c, 3.0);
        assert_eq!(m.phi, Automorphism::identity());

        let x = e(1).add(&e(2));
        let y = e(4).sub(&e(7));
        let m = map_pure(&a, &x, &y, 0).unwrap();
        assert_eq!(m.c, 1.0);
        assert!(m.residual <= 1e-9);

        assert_eq!(map_pure(&a, &Octonion::zero(), &e(1), 0).unwrap_err(), Error::ZeroInput);
        assert_eq!(map_pure(&a, &e(1), &e(0), 0).unwrap_err(), Error::NotPure);
    }

    #[test]
    fn constructed_maps_preserve_structure() {
        let a = alg();
        let mut rng = rng_for(5, 0, 0);
        for k in 0..10 {
            let x = random_real_pure(&mut rng);
            let y = random_real_pure(&mut rng);
            let m = map_pure(&a, &x, &y, k).unwrap();
            assert!(m.residual <= 1e-9);
            let pts: Vec<Octonion<f64>> = (0..20).map(|_| random_real_octonion(&mut rng)).collect();
            let pairs: Vec<_> = pts.iter().zip(pts.iter().skip(1)).collect();
            assert!(m.phi.multiplicativity_residual(&a, pairs) <= 1e-8);
            assert!(m.phi.apply(&Octonion::one()).sub(&Octonion::one()).euclidean_len() <= 1e-12);
            for p in &pts {
                assert!((a.norm(&m.phi.apply(p)) - a.norm(p)).abs() <= 1e-8);
                assert!(m.phi.apply(&p.pure_part()).coords[0].abs() <= 1e-9);
            }
            let back = m.phi.inverse().compose(&m.phi);
            assert!(back.apply(&x).sub(&x).euclidean_len() <= 1e-9);
        }
    }
}
