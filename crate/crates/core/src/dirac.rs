//! The linearized total-energy operator: an explicit 4x4 matrix built
//! from the standard 2x2 block representation, its spectrum, and the
//! frequency identities it implies.

use crate::error::{Error, Result};
use crate::scales::{derive_scales, ParticleParams};
use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

type C = Complex64;

fn cx(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// The 4x4 linearized Hamiltonian H = c (alpha . p) + beta M0 c^2 in the
/// standard block representation (beta = diag(I, -I), alpha off-diagonal
/// Pauli blocks).
#[derive(Debug, Clone)]
pub struct DiracMatrix {
    pub entries: Matrix4<C>,
    pub momentum: [f64; 3],
    pub rest_mass: f64,
    pub light_speed: f64,
}

/// Pauli matrices.
pub fn pauli() -> [Matrix2<C>; 3] {
    [
        Matrix2::new(cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)),
        Matrix2::new(cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)),
        Matrix2::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0)),
    ]
}

/// The three velocity matrices (off-diagonal Pauli blocks).
pub fn alpha_matrices() -> [Matrix4<C>; 3] {
    let sigma = pauli();
    let mut out = [Matrix4::zeros(); 3];
    for (k, s) in sigma.iter().enumerate() {
        let mut m = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j + 2)] = s[(i, j)];
                m[(i + 2, j)] = s[(i, j)];
            }
        }
        out[k] = m;
    }
    out
}

/// The mass matrix beta = diag(1, 1, -1, -1).
pub fn beta_matrix() -> Matrix4<C> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(
        cx(1.0, 0.0),
        cx(1.0, 0.0),
        cx(-1.0, 0.0),
        cx(-1.0, 0.0),
    ))
}

/// Assemble H = c (alpha . p) + beta M0 c^2 for momentum `p`.
pub fn dirac_hamiltonian(p: [f64; 3], rest_mass: f64, c: f64) -> Result<DiracMatrix> {
    if rest_mass < 0.0 {
        return Err(Error::domain("rest mass must be nonnegative"));
    }
    let alphas = alpha_matrices();
    let mut h = beta_matrix() * cx(rest_mass * c * c, 0.0);
    for (pk, ak) in p.iter().zip(alphas.iter()) {
        h += ak * cx(c * pk, 0.0);
    }
    Ok(DiracMatrix {
        entries: h,
        momentum: p,
        rest_mass,
        light_speed: c,
    })
}

impl DiracMatrix {
    /// Positive branch of the closed-form spectrum,
    /// sqrt(c^2 |p|^2 + M0^2 c^4).
    pub fn closed_form_energy(&self) -> f64 {
        let p2: f64 = self.momentum.iter().map(|x| x * x).sum();
        let c = self.light_speed;
        (c * c * p2 + (self.rest_mass * c * c).powi(2)).sqrt()
    }

    /// Largest deviation of the matrix from its own adjoint.
    pub fn hermiticity_defect(&self) -> f64 {
        let adj = self.entries.adjoint();
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| (self.entries[(i, j)] - adj[(i, j)]).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry norm of H^2 - (c^2 |p|^2 + M0^2 c^4) I.
    pub fn square_identity_defect(&self) -> f64 {
        let e2 = self.closed_form_energy().powi(2);
        let sq = self.entries * self.entries;
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| {
                let expect = if i == j { cx(e2, 0.0) } else { cx(0.0, 0.0) };
                (sq[(i, j)] - expect).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of the 4x4 matrix, ascending.
///
/// The Hermitian matrix H = A + iB is diagonalized through its real
/// symmetric embedding [[A, -B], [B, A]], whose spectrum repeats each
/// eigenvalue of H twice; the doubled multiplicities are folded back
/// out.
pub fn dirac_spectrum(h: &DiracMatrix) -> Result<[f64; 4]> {
    let mut embed = DMatrix::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            let v = h.entries[(i, j)];
            embed[(i, j)] = v.re;
            embed[(i + 4, j + 4)] = v.re;
            embed[(i, j + 4)] = -v.im;
            embed[(i + 4, j)] = v.im;
        }
    }
    let eigen = embed.symmetric_eigen();
    let mut vals: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical("eigen-solve returned non-finite values"));
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok([vals[0], vals[2], vals[4], vals[6]])
}

/// The scalar total-energy form with the pulsation momentum excluded:
/// p^2/M + (M0 c)^2/M, which equals M c^2 at p = M v0.
pub fn scalar_total_energy(p: f64, rest_mass: f64, mass: f64, c: f64) -> f64 {
    p * p / mass + (rest_mass * c).powi(2) / mass
}

/// The two routes to the matter-wave frequency and their residual.
#[derive(Debug, Clone, Copy)]
pub struct FrequencyReport {
    /// sqrt(p^2 c^2 + M0^2 c^4)/h at p = M v0.
    pub nu_rel: f64,
    /// M c^2 / h, i.e. the deformed-region oscillator frequency over 2 pi.
    pub omega_over_2pi: f64,
    /// |nu_rel - M c^2/h| / nu_rel.
    pub residual: f64,
}

/// Check that the momentum-space frequency equals the total-energy
/// frequency: sqrt(p^2 c^2 + M0^2 c^4)/h = M c^2/h when p = M v0.
pub fn frequency_equivalence(params: &ParticleParams) -> FrequencyReport {
    let scales = derive_scales(params);
    let omega_over_2pi = scales.mass * params.c * params.c / params.h;
    let residual = ((scales.nu_rel - omega_over_2pi) / scales.nu_rel).abs();
    FrequencyReport {
        nu_rel: scales.nu_rel,
        omega_over_2pi,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    #[test]
    fn rest_frame_is_diagonal() {
        let h = dirac_hamiltonian([0.0, 0.0, 0.0], 1.0, 1.0).unwrap();
        let expect = [1.0, 1.0, -1.0, -1.0];
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { expect[i] } else { 0.0 };
                assert_relative_eq!(h.entries[(i, j)].re, want, epsilon = 1e-15);
                assert_eq!(h.entries[(i, j)].im, 0.0);
            }
        }
        let spec = dirac_spectrum(&h).unwrap();
        assert_relative_eq!(spec[0], -1.0, max_relative = 1e-12);
        assert_relative_eq!(spec[1], -1.0, max_relative = 1e-12);
        assert_relative_eq!(spec[2], 1.0, max_relative = 1e-12);
        assert_relative_eq!(spec[3], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn three_four_five_spectrum() {
        let h = dirac_hamiltonian([3.0, 0.0, 0.0], 4.0, 1.0).unwrap();
        let spec = dirac_spectrum(&h).unwrap();
        assert_relative_eq!(spec[0], -5.0, max_relative = 1e-12);
        assert_relative_eq!(spec[1], -5.0, max_relative = 1e-12);
        assert_relative_eq!(spec[2], 5.0, max_relative = 1e-12);
        assert_relative_eq!(spec[3], 5.0, max_relative = 1e-12);
    }

    #[test]
    fn traceless_and_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = [
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ];
            let h = dirac_hamiltonian(p, rng.gen_range(0.0..2.0), 1.0).unwrap();
            let trace: C = (0..4).map(|i| h.entries[(i, i)]).sum();
            assert!(trace.norm() < 1e-14);
            assert!(h.hermiticity_defect() < 1e-15);
        }
    }

    #[test]
    fn square_identity_for_random_momenta() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let h = dirac_hamiltonian(p, 1.3, 1.0).unwrap();
            assert!(h.square_identity_defect() < 1e-13 * h.closed_form_energy().powi(2));
        }
    }

    #[test]
    fn anticommutation_relations() {
        let alphas = alpha_matrices();
        let beta = beta_matrix();
        let id = Matrix4::identity();
        let zero = Matrix4::<C>::zeros();
        let close = |a: &Matrix4<C>, b: &Matrix4<C>| {
            (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .all(|(i, j)| (a[(i, j)] - b[(i, j)]).norm() < 1e-15)
        };
        for i in 0..3 {
            for j in 0..3 {
                let anti = alphas[i] * alphas[j] + alphas[j] * alphas[i];
                let expect = if i == j { id * cx(2.0, 0.0) } else { zero };
                assert!(close(&anti, &expect), "alpha anticommutator {i}{j}");
            }
            let anti = alphas[i] * beta + beta * alphas[i];
            assert!(close(&anti, &zero), "alpha-beta anticommutator {i}");
        }
        assert!(close(&(beta * beta), &id));
    }

    #[test]
    fn spectrum_is_symmetric_and_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let p = [
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            ];
            let m0 = rng.gen_range(0.1..4.0);
            let h = dirac_hamiltonian(p, m0, 1.0).unwrap();
            let e = h.closed_form_energy();
            let spec = dirac_spectrum(&h).unwrap();
            assert_relative_eq!(spec[0], -e, max_relative = 1e-12);
            assert_relative_eq!(spec[1], -e, max_relative = 1e-12);
            assert_relative_eq!(spec[2], e, max_relative = 1e-12);
            assert_relative_eq!(spec[3], e, max_relative = 1e-12);
            let sum: f64 = spec.iter().sum();
            assert!(sum.abs() < 1e-11 * e);
        }
    }

    #[test]
    fn scalar_energy_consistency_at_model_momentum() {
        // with the pulsation momentum dropped and p = M v0, the scalar
        // form collapses to M c^2
        let params = ParticleParams::new(1.0, 0.6, 1.0, TAU, 10).unwrap();
        let scales = derive_scales(&params);
        let e = scalar_total_energy(
            scales.mass * params.v0,
            params.rest_mass,
            scales.mass,
            params.c,
        );
        assert_relative_eq!(e, scales.mass, max_relative = 1e-14); // c = 1
        // and equals the positive matrix eigenvalue at the same momentum
        let h = dirac_hamiltonian([scales.mass * params.v0, 0.0, 0.0], 1.0, 1.0).unwrap();
        let spec = dirac_spectrum(&h).unwrap();
        assert_relative_eq!(spec[3], e, max_relative = 1e-12);
    }

    #[test]
    fn frequency_routes_agree() {
        let params = ParticleParams::new(1.0, 0.6, 1.0, 1.0, 10).unwrap();
        let rep = frequency_equivalence(&params);
        assert_relative_eq!(rep.nu_rel, 1.25, max_relative = 1e-14);
        assert!(rep.residual < 1e-14);

        // near-rest limit tends to M0 c^2 / h
        let params = ParticleParams::new(1.0, 1e-9, 1.0, 1.0, 10).unwrap();
        let rep = frequency_equivalence(&params);
        assert_relative_eq!(rep.nu_rel, 1.0, max_relative = 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let params = ParticleParams::new(
                rng.gen_range(0.2..3.0),
                rng.gen_range(0.05..0.95),
                1.0,
                rng.gen_range(0.5..7.0),
                10,
            )
            .unwrap();
            assert!(frequency_equivalence(&params).residual < 1e-14);
        }
    }
}
