//! Tangle, isotropic states, and the complementarity relations.
//!
//! For a bipartite pure state the tangle is tau = 2(1 - Tr rho_1^2), and
//! local information and entanglement share a fixed budget:
//!
//! ```text
//! I_1 + I_2 + (d/(d-1) log2 d) tau = 2 log2 d.
//! ```
//!
//! Mixed states turn the identity into an inequality, and purifying a
//! mixed state turns the pure identity on the d^2 x d^2 cut into lower
//! and upper bounds on the information gap I_12 - I_1 - I_2. The tangle
//! of a general mixed state has no closed form here, so mixed-state
//! checks use a labeled surrogate (see [`mixed_tangle_estimate`]).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::invinfo::{invariant_info_closed, normalization};
use crate::qlinalg::{DensityMatrix, PureState};
use crate::{Error, Result};

/// Parameters of the isotropic family: local dimension d and fidelity F
/// with the maximally entangled state. Separable iff F <= 1/d.
#[derive(Clone, Copy, Debug)]
pub struct IsotropicParams {
    pub d: usize,
    pub fidelity: f64,
}

/// How the tangle entering a mixed-state report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangleMethod {
    /// Exact pure-state value 2(1 - Tr rho_1^2).
    Pure,
    /// Closed form for the isotropic d = 3 family.
    IsotropicD3,
    /// Reduced-purity surrogate 2(1 - max_i Tr rho_i^2); an upper bound
    /// on the convex-roof tangle, not a paper-printed value.
    ReducedSurrogate,
}

/// Tangle of a bipartite pure state across the given cut, computed from
/// both sides with a 1e-10 cross-check.
pub fn pure_tangle(psi: &PureState, cut: &[usize]) -> Result<f64> {
    let n = psi.dims().len();
    if cut.is_empty() || cut.len() >= n {
        return Err(Error::InvalidSubsystems(format!(
            "cut {:?} must keep a proper nonempty subset of {} subsystems",
            cut, n
        )));
    }
    let rho = psi.to_density();
    let complement: Vec<usize> = (0..n).filter(|s| !cut.contains(s)).collect();
    let tau_a = 2.0 * (1.0 - rho.partial_trace(cut)?.purity());
    let tau_b = 2.0 * (1.0 - rho.partial_trace(&complement)?.purity());
    if (tau_a - tau_b).abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "tangle cross-check failed: {tau_a} vs {tau_b}"
        )));
    }
    Ok(tau_a)
}

/// rho_iso(F) = (1-F)/(d^2-1) (I - P+) + F P+ on dims [d, d], with
/// P+ the projector onto (1/sqrt d) sum_i |ii>.
pub fn isotropic_state(params: &IsotropicParams) -> Result<DensityMatrix> {
    let IsotropicParams { d, fidelity: f } = *params;
    if d < 2 {
        return Err(Error::InvalidParameter(
            "isotropic family needs d >= 2".into(),
        ));
    }
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidParameter(format!(
            "fidelity {f} outside [0, 1]"
        )));
    }
    let dd = d * d;
    let plus = PureState::max_entangled(d);
    let p_plus = plus.to_density();
    let off = (1.0 - f) / (dd as f64 - 1.0);
    let mut mat = DMatrix::from_diagonal_element(dd, dd, Complex64::new(off, 0.0));
    let weight = Complex64::new(f - off, 0.0);
    for i in 0..dd {
        for j in 0..dd {
            mat[(i, j)] += weight * p_plus.matrix()[(i, j)];
        }
    }
    DensityMatrix::new(mat, &[d, d])
}

/// Tangle of the d = 3 isotropic state: 0 up to F = 1/3, then
/// 3(F - 1/3)^2, continuous at the joint.
pub fn isotropic_tangle_d3(fidelity: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::InvalidParameter(format!(
            "fidelity {fidelity} outside [0, 1]"
        )));
    }
    if fidelity <= 1.0 / 3.0 {
        Ok(0.0)
    } else {
        let x = fidelity - 1.0 / 3.0;
        Ok(3.0 * x * x)
    }
}

fn bipartite_local_dim(dims: &[usize]) -> Result<usize> {
    match dims {
        [a, b] if a == b => Ok(*a),
        _ => Err(Error::InvalidSubsystems(format!(
            "expected a d x d bipartition, got dims {:?}",
            dims
        ))),
    }
}

/// Residual of the pure-state complementarity identity
/// I_1 + I_2 + N(D) tau - 2 log2 D for a D x D pure state; zero up to
/// rounding for any valid input.
pub fn pure_complementarity_residual(psi: &PureState) -> Result<f64> {
    let d = bipartite_local_dim(psi.dims())?;
    let rho = psi.to_density();
    let i1 = invariant_info_closed(&rho.partial_trace(&[0])?)?.bits;
    let i2 = invariant_info_closed(&rho.partial_trace(&[1])?)?.bits;
    let tau = pure_tangle(psi, &[0])?;
    Ok(i1 + i2 + normalization(d) * tau - 2.0 * (d as f64).log2())
}

/// Fidelity <Phi+|rho|Phi+> if `rho` matches the isotropic form at that
/// fidelity to 1e-9 entrywise.
fn detect_isotropic(rho: &DensityMatrix) -> Option<f64> {
    let d = *rho.dims().first()?;
    if rho.dims() != [d, d] {
        return None;
    }
    let plus = PureState::max_entangled(d);
    let f = rho.expectation(plus.amplitudes()).re;
    if !(-1e-9..=1.0 + 1e-9).contains(&f) {
        return None;
    }
    let f = f.clamp(0.0, 1.0);
    let candidate = isotropic_state(&IsotropicParams { d, fidelity: f }).ok()?;
    let dd = d * d;
    for i in 0..dd {
        for j in 0..dd {
            if (rho.matrix()[(i, j)] - candidate.matrix()[(i, j)]).norm() > 1e-9 {
                return None;
            }
        }
    }
    Some(f)
}

/// Tangle estimate for a mixed bipartite state, with the method used.
///
/// Pure inputs get the exact value; isotropic d = 3 inputs get the
/// closed form; anything else gets the reduced-purity surrogate
/// 2(1 - max_i Tr rho_i^2), the smaller of the two single-sided upper
/// bounds on the convex-roof tangle.
pub fn mixed_tangle_estimate(rho12: &DensityMatrix) -> Result<(f64, TangleMethod)> {
    let d = bipartite_local_dim(rho12.dims())?;
    let purity = rho12.purity();
    let p1 = rho12.partial_trace(&[0])?.purity();
    let p2 = rho12.partial_trace(&[1])?.purity();
    if purity >= 1.0 - 1e-10 {
        return Ok((2.0 * (1.0 - p1.max(p2)), TangleMethod::Pure));
    }
    if d == 3 {
        if let Some(f) = detect_isotropic(rho12) {
            return Ok((isotropic_tangle_d3(f)?, TangleMethod::IsotropicD3));
        }
    }
    Ok((2.0 * (1.0 - p1.max(p2)), TangleMethod::ReducedSurrogate))
}

/// Nonnegative defect of the mixed-state complementarity inequality,
/// 2 log2 d - I_1 - I_2 - N(d) tau. The tangle term comes from
/// [`mixed_tangle_estimate`].
pub fn mixed_complementarity_defect(rho12: &DensityMatrix) -> Result<f64> {
    let d = bipartite_local_dim(rho12.dims())?;
    let i1 = invariant_info_closed(&rho12.partial_trace(&[0])?)?.bits;
    let i2 = invariant_info_closed(&rho12.partial_trace(&[1])?)?.bits;
    let (tau, _) = mixed_tangle_estimate(rho12)?;
    Ok(2.0 * (d as f64).log2() - i1 - i2 - normalization(d) * tau)
}

/// Both sides of the isotropic-state conjecture at local dimension 3,
/// labeled as a probe: the result reports, it does not assert.
#[derive(Clone, Copy, Debug)]
pub struct ConjectureProbe {
    /// I_1 + I_2 + N(3) tau(F).
    pub lhs: f64,
    /// 2 d^2/(d^2-1) log2 d (Tr rho^2 - 1/d^2).
    pub rhs: f64,
    pub satisfied: bool,
}

pub fn conjecture9_gap(fidelity: f64, d: usize) -> Result<ConjectureProbe> {
    if d != 3 {
        return Err(Error::InvalidParameter(format!(
            "conjecture probe supports d = 3 only (the printed tangle), got {d}"
        )));
    }
    let rho = isotropic_state(&IsotropicParams { d, fidelity })?;
    let i1 = invariant_info_closed(&rho.partial_trace(&[0])?)?.bits;
    let i2 = invariant_info_closed(&rho.partial_trace(&[1])?)?.bits;
    let tau = isotropic_tangle_d3(fidelity)?;
    let lhs = i1 + i2 + normalization(d) * tau;
    let df = d as f64;
    let rhs = 2.0 * df * df / (df * df - 1.0) * df.log2() * (rho.purity() - 1.0 / (df * df));
    Ok(ConjectureProbe {
        lhs,
        rhs,
        satisfied: lhs <= rhs + 1e-9,
    })
}

/// Information gap of a bipartite state with the purification-derived
/// bounds. All quantities in bits.
#[derive(Clone, Copy, Debug)]
pub struct GapReport {
    pub info_12: f64,
    pub info_1: f64,
    pub info_2: f64,
    /// info_12 - info_1 - info_2.
    pub gap: f64,
    /// 2 log2 d - I(rho_R) - 2d^2/(d^2-1) log2 d tau_12R + N(d) tau_12.
    pub lower_bound: f64,
    /// 2 log2 d.
    pub upper_bound: f64,
    /// Tangle estimate of rho_12 (see `tangle_method`).
    pub tangle_12: f64,
    pub tangle_method: TangleMethod,
    /// Exact tangle across the 12:R purification cut, 2(1 - Tr rho_12^2).
    pub tangle_12r: f64,
}

/// Gap I_12 - I_1 - I_2 with the purification bounds, checked before
/// returning: lower - 1e-9 <= gap <= upper + 1e-9.
pub fn info_gap_report(rho12: &DensityMatrix) -> Result<GapReport> {
    let d = bipartite_local_dim(rho12.dims())?;
    let log_d = (d as f64).log2();
    let info_12 = invariant_info_closed(rho12)?.bits;
    let info_1 = invariant_info_closed(&rho12.partial_trace(&[0])?)?.bits;
    let info_2 = invariant_info_closed(&rho12.partial_trace(&[1])?)?.bits;
    let gap = info_12 - info_1 - info_2;

    let purification = rho12.purify()?;
    let rho_r = purification.to_density().partial_trace(&[1])?;
    let info_r = invariant_info_closed(&rho_r)?.bits;
    let tangle_12r = 2.0 * (1.0 - rho12.purity());
    let (tangle_12, tangle_method) = mixed_tangle_estimate(rho12)?;

    let dd = (d * d) as f64;
    let cut_norm = 2.0 * dd / (dd - 1.0) * log_d;
    let lower_bound = 2.0 * log_d - info_r - cut_norm * tangle_12r + normalization(d) * tangle_12;
    let upper_bound = 2.0 * log_d;
    if gap < lower_bound - 1e-9 || gap > upper_bound + 1e-9 {
        return Err(Error::Numerical(format!(
            "information gap {gap} escapes [{lower_bound}, {upper_bound}]"
        )));
    }
    Ok(GapReport {
        info_12,
        info_1,
        info_2,
        gap,
        lower_bound,
        upper_bound,
        tangle_12,
        tangle_method,
        tangle_12r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{random_density_matrix, random_pure_state};
    use nalgebra::DVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn superposition(a: f64) -> PureState {
        let b = (1.0 - a * a).sqrt();
        let mut amp = DVector::zeros(4);
        amp[0] = Complex64::new(a, 0.0);
        amp[3] = Complex64::new(b, 0.0);
        PureState::new(amp, &[2, 2]).unwrap()
    }

    #[test]
    fn tangle_examples() {
        // Product state: zero.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_pure_state(&[3], &mut rng);
        let b = random_pure_state(&[3], &mut rng);
        let mut amp = DVector::zeros(9);
        for i in 0..3 {
            for j in 0..3 {
                amp[i * 3 + j] = a.amplitudes()[i] * b.amplitudes()[j];
            }
        }
        let prod = PureState::new(amp, &[3, 3]).unwrap();
        assert!(pure_tangle(&prod, &[0]).unwrap().abs() < 1e-12);

        // Maximally entangled d x d: 2(1 - 1/d).
        for d in [2usize, 3, 4] {
            let psi = PureState::max_entangled(d);
            let tau = pure_tangle(&psi, &[0]).unwrap();
            assert!((tau - 2.0 * (1.0 - 1.0 / d as f64)).abs() < 1e-12);
        }
        let tau3 = pure_tangle(&PureState::max_entangled(3), &[0]).unwrap();
        assert!((tau3 - 4.0 / 3.0).abs() < 1e-12);

        // a|00> + sqrt(1-a^2)|11>: 4a^2(1-a^2).
        for a in [0.0, 0.3, 0.6, 1.0 / 2f64.sqrt(), 0.9, 1.0] {
            let tau = pure_tangle(&superposition(a), &[0]).unwrap();
            assert!((tau - 4.0 * a * a * (1.0 - a * a)).abs() < 1e-12);
        }
    }

    #[test]
    fn tangle_invalid_cut() {
        let psi = PureState::max_entangled(2);
        assert!(matches!(
            pure_tangle(&psi, &[]),
            Err(Error::InvalidSubsystems(_))
        ));
        assert!(matches!(
            pure_tangle(&psi, &[0, 1]),
            Err(Error::InvalidSubsystems(_))
        ));
    }

    #[test]
    fn isotropic_state_examples() {
        // F = 1/d^2 is maximally mixed.
        for d in [2usize, 3] {
            let dd = (d * d) as f64;
            let rho = isotropic_state(&IsotropicParams {
                d,
                fidelity: 1.0 / dd,
            })
            .unwrap();
            for i in 0..d * d {
                for j in 0..d * d {
                    let target = if i == j { 1.0 / dd } else { 0.0 };
                    assert!((rho.matrix()[(i, j)] - Complex64::new(target, 0.0)).norm() < 1e-12);
                }
            }
        }

        // F = 1 is the maximally entangled projector.
        let rho = isotropic_state(&IsotropicParams {
            d: 3,
            fidelity: 1.0,
        })
        .unwrap();
        let p_plus = PureState::max_entangled(3).to_density();
        for i in 0..9 {
            for j in 0..9 {
                assert!((rho.matrix()[(i, j)] - p_plus.matrix()[(i, j)]).norm() < 1e-12);
            }
        }

        // Eigenvalues are {F, (1-F)/(d^2-1) x (d^2-1)} and the reduced
        // states are maximally mixed at every F.
        let rho = isotropic_state(&IsotropicParams {
            d: 3,
            fidelity: 0.7,
        })
        .unwrap();
        let spec = rho.spectrum().unwrap();
        assert!((spec.eigenvalues[0] - 0.7).abs() < 1e-12);
        for &l in &spec.eigenvalues[1..] {
            assert!((l - 0.3 / 8.0).abs() < 1e-12);
        }
        for f in [0.0, 1.0 / 3.0, 0.5, 1.0] {
            let rho = isotropic_state(&IsotropicParams { d: 3, fidelity: f }).unwrap();
            for keep in [[0usize], [1usize]] {
                let red = rho.partial_trace(&keep).unwrap();
                let info = invariant_info_closed(&red).unwrap().bits;
                assert!(info.abs() < 1e-10, "local info {info} at F = {f}");
            }
        }

        assert!(isotropic_state(&IsotropicParams {
            d: 3,
            fidelity: 1.2
        })
        .is_err());
    }

    #[test]
    fn isotropic_tangle_examples() {
        assert_eq!(isotropic_tangle_d3(0.0).unwrap(), 0.0);
        assert_eq!(isotropic_tangle_d3(1.0 / 3.0).unwrap(), 0.0);
        assert!((isotropic_tangle_d3(1.0).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        // Continuity at the joint.
        let eps = 1e-9;
        assert!(isotropic_tangle_d3(1.0 / 3.0 + eps).unwrap() < 1e-15);
        assert!(isotropic_tangle_d3(1.1).is_err());
    }

    #[test]
    fn pure_complementarity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let psi = random_pure_state(&[3, 3], &mut rng);
            let r = pure_complementarity_residual(&psi).unwrap();
            assert!(r.abs() < 1e-9, "residual {r:.3e}");
        }
        // Product pure state: I_1 = I_2 = log2 D, tau = 0.
        let prod = superposition(1.0);
        assert!(pure_complementarity_residual(&prod).unwrap().abs() < 1e-10);
        // Maximally entangled: I_1 = I_2 = 0, tau = 2(1 - 1/D).
        for d in [2usize, 3] {
            let psi = PureState::max_entangled(d);
            assert!(pure_complementarity_residual(&psi).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn mixed_defect_is_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // Two-qubit, two-qutrit, and two-ququint mixtures of at most
        // d^2 pure states.
        for d in [2usize, 3, 5] {
            for _ in 0..200 {
                let rho = random_density_matrix(&[d, d], d * d, &mut rng);
                let defect = mixed_complementarity_defect(&rho).unwrap();
                assert!(defect >= -1e-9, "defect {defect:.3e} for d = {d}");
            }
        }
        // Pure states saturate.
        let psi = random_pure_state(&[3, 3], &mut rng);
        let defect = mixed_complementarity_defect(&psi.to_density()).unwrap();
        assert!(defect.abs() < 1e-9);
        // I/9: defect is the whole budget 2 log2 3.
        let mm = DensityMatrix::maximally_mixed(&[3, 3]);
        let defect = mixed_complementarity_defect(&mm).unwrap();
        assert!((defect - 2.0 * 3f64.log2()).abs() < 1e-10);
    }

    #[test]
    fn isotropic_inputs_use_the_closed_form_tangle() {
        for f in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
            let rho = isotropic_state(&IsotropicParams { d: 3, fidelity: f }).unwrap();
            let (tau, method) = mixed_tangle_estimate(&rho).unwrap();
            let expected = isotropic_tangle_d3(f).unwrap();
            assert!((tau - expected).abs() < 1e-9, "F = {f}");
            if f < 1.0 - 1e-9 {
                assert_eq!(method, TangleMethod::IsotropicD3, "F = {f}");
            }
            let defect = mixed_complementarity_defect(&rho).unwrap();
            assert!(defect >= -1e-9);
        }
    }

    #[test]
    fn conjecture_probe_examples() {
        // F = 1: equality at 2 log2 3 on both sides.
        let probe = conjecture9_gap(1.0, 3).unwrap();
        let two_log3 = 2.0 * 3f64.log2();
        assert!((probe.lhs - two_log3).abs() < 1e-9);
        assert!((probe.rhs - two_log3).abs() < 1e-9);
        assert!(probe.satisfied);

        // F = 1/9: both sides vanish.
        let probe = conjecture9_gap(1.0 / 9.0, 3).unwrap();
        assert!(probe.lhs.abs() < 1e-9);
        assert!(probe.rhs.abs() < 1e-9);
        assert!(probe.satisfied);

        // F = 0.5: strict ordering.
        let probe = conjecture9_gap(0.5, 3).unwrap();
        assert!(probe.lhs < probe.rhs);
        assert!(probe.satisfied);

        assert!(conjecture9_gap(0.5, 2).is_err());
    }

    #[test]
    fn gap_report_counterexample() {
        // diag(5,4,2,1)/12: gap is exactly -5/54.
        let rho = DensityMatrix::from_diagonal(
            &[5.0 / 12.0, 4.0 / 12.0, 2.0 / 12.0, 1.0 / 12.0],
            &[2, 2],
        )
        .unwrap();
        let report = info_gap_report(&rho).unwrap();
        assert!(
            (report.gap + 5.0 / 54.0).abs() < 1e-12,
            "gap {}",
            report.gap
        );
        assert!(report.lower_bound <= report.gap + 1e-9);
        assert!(report.gap <= report.upper_bound + 1e-9);
        assert_eq!(report.tangle_method, TangleMethod::ReducedSurrogate);
    }

    #[test]
    fn gap_report_maximally_entangled_attains_upper_bound() {
        for d in [2usize, 3] {
            let rho = PureState::max_entangled(d).to_density();
            let report = info_gap_report(&rho).unwrap();
            assert!((report.gap - 2.0 * (d as f64).log2()).abs() < 1e-10);
            assert!((report.gap - report.upper_bound).abs() < 1e-10);
        }
    }

    #[test]
    fn gap_report_product_of_maximally_mixed() {
        let mm = DensityMatrix::maximally_mixed(&[2, 2]);
        let report = info_gap_report(&mm).unwrap();
        assert!(report.gap.abs() < 1e-12);
        assert!(report.lower_bound <= report.gap + 1e-9);
    }

    #[test]
    fn gap_sandwich_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for d in [2usize, 3] {
            for _ in 0..100 {
                let rho = random_density_matrix(&[d, d], d * d, &mut rng);
                let report = info_gap_report(&rho).unwrap();
                assert!(report.lower_bound - 1e-9 <= report.gap);
                assert!(report.gap <= report.upper_bound + 1e-9);
            }
        }
    }

    #[test]
    fn purified_cut_identity() {
        // I(rho_12) + I(rho_R) + 2d^2/(d^2-1) log2 d tau_12R = 4 log2 d.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let d = 3usize;
        let dd = (d * d) as f64;
        let cut_norm = 2.0 * dd / (dd - 1.0) * (d as f64).log2();
        for _ in 0..50 {
            let rho = random_density_matrix(&[d, d], d * d, &mut rng);
            let purification = rho.purify().unwrap();
            let rho_r = purification.to_density().partial_trace(&[1]).unwrap();
            let lhs = invariant_info_closed(&rho).unwrap().bits
                + invariant_info_closed(&rho_r).unwrap().bits
                + cut_norm * 2.0 * (1.0 - rho.purity());
            let residual = lhs - 4.0 * (d as f64).log2();
            assert!(residual.abs() < 1e-9, "residual {residual:.3e}");
        }
    }
}
