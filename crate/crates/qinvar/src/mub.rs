//! Complete sets of d+1 mutually unbiased bases for prime-power d.
//!
//! Two constructions, both deterministic:
//!
//! - odd prime power d = p^k: the computational basis plus the d bases
//!   with components (1/sqrt d) w^tr(a m^2 + j m), w = exp(2 pi i / p),
//!   where a indexes the basis, j the vector, m the row, all ranging
//!   over GF(d), and tr is the field trace to GF(p). For k = 1 the trace
//!   is the identity and this reduces to the quadratic Gauss-sum bases.
//!
//! - d = 2^k: the 4^k - 1 nonidentity Pauli strings are partitioned into
//!   d+1 maximal commuting classes of d-1 strings (a symplectic spread,
//!   found by lexicographic depth-first search), and each class's joint
//!   eigenbasis is extracted by diagonalizing a fixed-seed random real
//!   combination of the class operators.
//!
//! `verify_mubs` checks the defining overlap property, orthonormality,
//! and the projector trace identity, and reports worst-case deviations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::Field;
use crate::qlinalg::canonicalize_phase;
use crate::{Error, Result};

/// Largest supported dimension for `build_mubs`.
pub const MAX_DIM: usize = 32;

/// Which construction produced a [`MubSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionTag {
    /// Odd prime power: quadratic exponential over GF(d).
    QuadraticGauss,
    /// d = 2^k: joint eigenbases of Pauli commuting classes.
    PauliPartition,
}

/// d+1 orthonormal bases in dimension d whose cross-basis overlaps all
/// have squared magnitude 1/d. Columns of each unitary are the basis
/// vectors.
#[derive(Clone, Debug)]
pub struct MubSet {
    dim: usize,
    bases: Vec<DMatrix<Complex64>>,
    tag: ConstructionTag,
}

impl MubSet {
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn from_parts(
        dim: usize,
        bases: Vec<DMatrix<Complex64>>,
        tag: ConstructionTag,
    ) -> Self {
        MubSet { dim, bases, tag }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[DMatrix<Complex64>] {
        &self.bases
    }

    pub fn basis(&self, alpha: usize) -> &DMatrix<Complex64> {
        &self.bases[alpha]
    }

    pub fn construction_tag(&self) -> ConstructionTag {
        self.tag
    }

    /// Basis vector |alpha, j> as an owned column.
    pub fn vector(&self, alpha: usize, j: usize) -> DVector<Complex64> {
        DVector::from_iterator(self.dim, self.bases[alpha].column(j).iter().copied())
    }

    /// Rank-1 projector onto |alpha, j>.
    pub fn projector(&self, alpha: usize, j: usize) -> DMatrix<Complex64> {
        let v = self.vector(alpha, j);
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] = v[r] * v[c].conj();
            }
        }
        out
    }

    /// The full indexed family of projectors, outer index alpha.
    pub fn projectors(&self) -> Vec<Vec<DMatrix<Complex64>>> {
        (0..self.bases.len())
            .map(|alpha| (0..self.dim).map(|j| self.projector(alpha, j)).collect())
            .collect()
    }
}

/// Factor d as p^k with p prime, if possible.
pub fn is_prime_power(d: usize) -> Option<(u64, usize)> {
    if d < 2 {
        return None;
    }
    let mut p = 2usize;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut rest = d;
            let mut k = 0usize;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p as u64, k)) } else { None };
        }
        p += 1;
    }
    Some((d as u64, 1))
}

/// Build the complete MUB set for a prime-power dimension d <= 32.
/// Deterministic: repeated calls return bit-identical matrices.
pub fn build_mubs(d: usize) -> Result<MubSet> {
    if d > MAX_DIM {
        return Err(Error::DimensionCap(d, MAX_DIM));
    }
    let (p, k) = is_prime_power(d).ok_or(Error::NotPrimePower(d))?;
    let (bases, tag) = if p == 2 {
        (build_pauli_partition(k, d), ConstructionTag::PauliPartition)
    } else {
        (
            build_odd_prime_power(p, k, d)?,
            ConstructionTag::QuadraticGauss,
        )
    };
    Ok(MubSet { dim: d, bases, tag })
}

fn build_odd_prime_power(p: u64, k: usize, d: usize) -> Result<Vec<DMatrix<Complex64>>> {
    let field = Field::new(p, k)?;
    let elems: Vec<_> = field.elements().collect();
    // p-th roots of unity indexed by the trace value.
    let omega: Vec<Complex64> = (0..p)
        .map(|t| {
            let angle = 2.0 * std::f64::consts::PI * t as f64 / p as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    let scale = 1.0 / (d as f64).sqrt();

    let mut bases = Vec::with_capacity(d + 1);
    bases.push(DMatrix::identity(d, d));
    for a in &elems {
        let mut basis = DMatrix::zeros(d, d);
        for (col, j) in elems.iter().enumerate() {
            for (row, m) in elems.iter().enumerate() {
                let mm = m.mul(m).expect("same field");
                let quad = a.mul(&mm).expect("same field");
                let lin = j.mul(m).expect("same field");
                let t = quad.add(&lin).expect("same field").trace();
                basis[(row, col)] = omega[t as usize] * scale;
            }
        }
        bases.push(basis);
    }
    Ok(bases)
}

// ---------------------------------------------------------------------
// d = 2^k: Pauli commuting-class construction.
//
// A Pauli string is labeled by (x, z) bit vectors packed as (x << k) | z;
// bit i of x / z selects an X / Z factor on qubit i (both set = Y). Two
// strings commute iff the symplectic form parity(x & z') + parity(x' & z)
// vanishes. A maximal pairwise-commuting set of 2^k - 1 labels is exactly
// a maximal isotropic subspace minus the origin, so the classes of a full
// partition form a symplectic spread and their joint eigenbases are
// mutually unbiased.
// ---------------------------------------------------------------------

fn commutes(l1: u32, l2: u32, k: usize) -> bool {
    let mask = (1u32 << k) - 1;
    let (x1, z1) = (l1 >> k, l1 & mask);
    let (x2, z2) = (l2 >> k, l2 & mask);
    ((x1 & z2).count_ones() + (x2 & z1).count_ones()) % 2 == 0
}

/// Partition the labels 1..4^k-1 into 2^k + 1 commuting classes.
///
/// For k <= 4 this is a depth-first search that always extends with the
/// lowest admissible label. Plain greedy dead-ends already at k = 2 (it
/// pairs (1,0) with (1,2), whose span needs the already-consumed (0,2)),
/// so the search backtracks; the first completed partition is still the
/// lexicographic one. At k = 5 the search space blows up, so the spread
/// comes from GF(2^k) line classes instead (see `field_spread`).
fn symplectic_partition(k: usize) -> Vec<Vec<u32>> {
    if k >= 5 {
        return field_spread(k);
    }
    let d = 1usize << k;
    let total = d * d; // labels 0..4^k-1 with 0 = identity, unused
    let mut used = vec![false; total];
    used[0] = true;
    let mut classes: Vec<Vec<u32>> = Vec::with_capacity(d + 1);
    let ok = partition_dfs(k, &mut used, &mut classes);
    assert!(ok, "no symplectic spread found for k = {k}");
    classes
}

/// Closed-form spread from the field GF(2^k): one class holds the pure-Z
/// labels (0, b), and each s in GF(2^k) yields a class {(a, s*a), a != 0}.
/// Coordinates are taken in a trace-self-dual basis so that the bitwise
/// symplectic form realizes tr(x z') + tr(x' z), which vanishes on every
/// class by char-2 symmetry of multiplication.
fn field_spread(k: usize) -> Vec<Vec<u32>> {
    let field = Field::new(2, k).expect("GF(2^k) within cap");
    let d = 1usize << k;
    let basis = self_dual_basis(&field);
    // coords[e] = bit vector of the element with index e in the self-dual
    // basis: e = sum_i bit_i * basis_i  <=>  bit_i = tr(e * basis_i).
    let coords: Vec<u32> = (0..d as u64)
        .map(|idx| {
            let e = field.element(idx);
            let mut bits = 0u32;
            for (i, b) in basis.iter().enumerate() {
                let t = e.mul(b).expect("same field").trace();
                bits |= (t as u32) << (k - 1 - i);
            }
            bits
        })
        .collect();

    let mut classes = Vec::with_capacity(d + 1);
    let mut z_class: Vec<u32> = (1..d as u32).map(|b| coords[b as usize]).collect();
    z_class.sort_unstable();
    classes.push(z_class);
    for s in 0..d as u64 {
        let s_elem = field.element(s);
        let mut class: Vec<u32> = (1..d as u64)
            .map(|a| {
                let a_elem = field.element(a);
                let b_elem = s_elem.mul(&a_elem).expect("same field");
                (coords[a as usize] << k) | coords[b_elem.index() as usize]
            })
            .collect();
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Lexicographically first basis of GF(2^k) with tr(e_i e_j) = delta_ij.
/// Orthonormality under the trace form implies linear independence, so a
/// plain ordered search over trace-1 elements suffices.
fn self_dual_basis(field: &Field) -> Vec<crate::gf::FieldElement> {
    let k = field.k();
    let candidates: Vec<_> = field
        .elements()
        .skip(1)
        .filter(|e| e.trace() == 1)
        .collect();
    let mut chosen: Vec<crate::gf::FieldElement> = Vec::with_capacity(k);
    fn extend(
        candidates: &[crate::gf::FieldElement],
        start: usize,
        chosen: &mut Vec<crate::gf::FieldElement>,
        k: usize,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        for idx in start..candidates.len() {
            let cand = &candidates[idx];
            if chosen
                .iter()
                .all(|c| c.mul(cand).expect("same field").trace() == 0)
            {
                chosen.push(cand.clone());
                if extend(candidates, idx + 1, chosen, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let ok = extend(&candidates, 0, &mut chosen, k);
    assert!(ok, "self-dual basis exists for every GF(2^k)");
    chosen
}

fn partition_dfs(k: usize, used: &mut Vec<bool>, classes: &mut Vec<Vec<u32>>) -> bool {
    let d = 1usize << k;
    if classes.len() == d + 1 {
        return true;
    }
    let seed = match used.iter().position(|&u| !u) {
        Some(s) => s as u32,
        None => return false,
    };
    used[seed as usize] = true;
    let mut span = vec![seed];
    if class_dfs(k, seed, &mut span, used, classes) {
        return true;
    }
    used[seed as usize] = false;
    false
}

/// Grow the isotropic span containing the class seed one generator at a
/// time. Adding generator g contributes the coset {s ^ g} of the current
/// span plus g itself; all new labels must be unused, and g must commute
/// with the existing generators (commutation extends linearly to the
/// span).
fn class_dfs(
    k: usize,
    min_candidate: u32,
    span: &mut Vec<u32>,
    used: &mut Vec<bool>,
    classes: &mut Vec<Vec<u32>>,
) -> bool {
    let d = 1usize << k;
    if span.len() == d - 1 {
        let mut class = span.clone();
        class.sort_unstable();
        classes.push(class);
        if partition_dfs(k, used, classes) {
            return true;
        }
        classes.pop();
        return false;
    }
    let total = (d * d) as u32;
    for g in (min_candidate + 1)..total {
        if used[g as usize] || !span.iter().all(|&s| commutes(s, g, k)) {
            continue;
        }
        let mut added = vec![g];
        for &s in span.iter() {
            let l = s ^ g;
            if used[l as usize] {
                added.clear();
                break;
            }
            added.push(l);
        }
        if added.is_empty() {
            continue;
        }
        for &l in &added {
            used[l as usize] = true;
        }
        let base_len = span.len();
        span.extend_from_slice(&added);
        if class_dfs(k, g, span, used, classes) {
            return true;
        }
        for &l in &added {
            used[l as usize] = false;
        }
        span.truncate(base_len);
    }
    false
}

fn pauli_matrix(label: u32, k: usize) -> DMatrix<Complex64> {
    let mask = (1u32 << k) - 1;
    let (x, z) = (label >> k, label & mask);
    let mut out = DMatrix::identity(1, 1);
    for qubit in 0..k {
        let bit = k - 1 - qubit; // qubit 0 is the leftmost tensor factor
        let single = single_pauli((x >> bit) & 1 == 1, (z >> bit) & 1 == 1);
        out = out.kronecker(&single);
    }
    out
}

fn single_pauli(x: bool, z: bool) -> DMatrix<Complex64> {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (x, z) {
        (false, false) => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
        (true, false) => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        (false, true) => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        (true, true) => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
    }
}

/// Joint eigenbasis of one commuting class: diagonalize a random real
/// combination of the class operators (fixed per-class seed), redrawing
/// until the spectrum separates, then canonicalize phases.
fn class_eigenbasis(class: &[u32], k: usize, class_index: usize) -> DMatrix<Complex64> {
    let d = 1usize << k;
    let paulis: Vec<DMatrix<Complex64>> = class.iter().map(|&l| pauli_matrix(l, k)).collect();
    let seed = 0x4d55_4200u64 ^ ((d as u64) << 16) ^ class_index as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..64 {
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for p in &paulis {
            let c = Complex64::new(rng.gen_range(0.25..1.0), 0.0);
            m += p * c;
        }
        let eig = nalgebra::SymmetricEigen::new(m);
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
        let separated = order
            .windows(2)
            .all(|w| eig.eigenvalues[w[0]] - eig.eigenvalues[w[1]] > 1e-6);
        if !separated {
            continue;
        }
        let mut basis = DMatrix::zeros(d, d);
        for (dst, &src) in order.iter().enumerate() {
            let mut col: Vec<Complex64> = (0..d).map(|r| eig.eigenvectors[(r, src)]).collect();
            canonicalize_phase(&mut col);
            for r in 0..d {
                basis[(r, dst)] = col[r];
            }
        }
        return basis;
    }
    unreachable!("random combinations failed to separate a {d}-point spectrum");
}

fn build_pauli_partition(k: usize, _d: usize) -> Vec<DMatrix<Complex64>> {
    symplectic_partition(k)
        .iter()
        .enumerate()
        .map(|(idx, class)| class_eigenbasis(class, k, idx))
        .collect()
}

/// Worst-case deviations of a basis set from the MUB conditions,
/// together with the tolerance they were verified against.
#[derive(Clone, Copy, Debug)]
pub struct MubReport {
    /// max over cross-basis pairs of | |<a,j|b,k>|^2 - 1/d |.
    pub max_overlap_error: f64,
    /// max deviation of Tr(P_aj P_bk) from delta_ab delta_jk + (1-delta_ab)/d.
    pub max_trace_identity_error: f64,
    /// max entrywise deviation of each U^dag U from the identity.
    pub orthonormality_error: f64,
    /// Tolerance the verification ran at.
    pub tolerance: f64,
    /// Whether every error is within `tolerance`.
    pub pass: bool,
}

impl MubReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_overlap_error <= tolerance
            && self.max_trace_identity_error <= tolerance
            && self.orthonormality_error <= tolerance
    }
}

/// Scan every pair of basis vectors. Tr(P_aj P_bk) equals the squared
/// overlap for rank-1 projectors, so one Gram computation feeds all
/// three reported errors; the matrix-level projector identity is
/// exercised separately in the projector tests.
pub fn verify_mubs(set: &MubSet, tolerance: f64) -> MubReport {
    let d = set.dim;
    let nb = set.bases.len();
    let uniform = 1.0 / d as f64;
    let mut overlap = 0.0f64;
    let mut trace_id = 0.0f64;
    let mut ortho = 0.0f64;
    for a in 0..nb {
        // Same-basis Gram against the identity.
        let gram = set.bases[a].adjoint() * &set.bases[a];
        for j in 0..d {
            for m in 0..d {
                let target = if j == m { 1.0 } else { 0.0 };
                let dev = (gram[(j, m)] - Complex64::new(target, 0.0)).norm();
                ortho = ortho.max(dev);
                trace_id = trace_id.max((gram[(j, m)].norm_sqr() - target).abs());
            }
        }
        for b in (a + 1)..nb {
            let cross = set.bases[a].adjoint() * &set.bases[b];
            for j in 0..d {
                for m in 0..d {
                    let dev = (cross[(j, m)].norm_sqr() - uniform).abs();
                    overlap = overlap.max(dev);
                    trace_id = trace_id.max(dev);
                }
            }
        }
    }
    let pass = overlap <= tolerance && trace_id <= tolerance && ortho <= tolerance;
    MubReport {
        max_overlap_error: overlap,
        max_trace_identity_error: trace_id,
        orthonormality_error: ortho,
        tolerance,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;

    const SUPPORTED: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

    #[test]
    fn prime_power_detection() {
        assert_eq!(is_prime_power(2), Some((2, 1)));
        assert_eq!(is_prime_power(9), Some((3, 2)));
        assert_eq!(is_prime_power(32), Some((2, 5)));
        assert_eq!(is_prime_power(6), None);
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(1), None);
    }

    #[test]
    fn qubit_mubs_are_pauli_eigenbases() {
        let set = build_mubs(2).unwrap();
        assert_eq!(set.bases().len(), 3);
        assert_eq!(set.construction_tag(), ConstructionTag::PauliPartition);
        // First class is {Z}: the computational basis.
        let z = set.basis(0);
        assert!((z[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert!((z[(1, 1)].norm() - 1.0).abs() < 1e-12);
        // The other two are X and Y eigenbases: all components 1/sqrt 2.
        for alpha in 1..3 {
            for entry in set.basis(alpha).iter() {
                assert!((entry.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
            }
        }
        let report = verify_mubs(&set, tol::MUB_DEFAULT);
        assert!(report.passes(1e-12), "{report:?}");
    }

    #[test]
    fn all_supported_dimensions_verify() {
        for d in SUPPORTED {
            let set = build_mubs(d).unwrap();
            assert_eq!(set.bases().len(), d + 1, "d = {d}");
            let report = verify_mubs(&set, tol::MUB_DEFAULT);
            assert!(
                report.passes(tol::MUB_DEFAULT),
                "d = {d} failed: {report:?}"
            );
        }
    }

    #[test]
    fn d16_builds_and_verifies() {
        let set = build_mubs(16).unwrap();
        assert_eq!(set.bases().len(), 17);
        let report = verify_mubs(&set, tol::MUB_DEFAULT);
        assert!(report.passes(tol::MUB_DEFAULT), "{report:?}");
    }

    #[test]
    fn construction_is_deterministic() {
        for d in [4usize, 9] {
            let a = build_mubs(d).unwrap();
            let b = build_mubs(d).unwrap();
            for (ba, bb) in a.bases().iter().zip(b.bases()) {
                assert_eq!(ba.as_slice(), bb.as_slice(), "d = {d} not bit-identical");
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers_and_large_dims() {
        assert!(matches!(build_mubs(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(build_mubs(10), Err(Error::NotPrimePower(10))));
        assert!(matches!(build_mubs(33), Err(Error::DimensionCap(33, _))));
    }

    #[test]
    fn duplicated_basis_fails_verification() {
        // Two copies of the computational basis relabeled as distinct:
        // worst overlap deviation is 1 - 1/d.
        let d = 3;
        let set = MubSet {
            dim: d,
            bases: vec![DMatrix::identity(d, d), DMatrix::identity(d, d)],
            tag: ConstructionTag::QuadraticGauss,
        };
        let report = verify_mubs(&set, tol::MUB_DEFAULT);
        assert!((report.max_overlap_error - (1.0 - 1.0 / d as f64)).abs() < 1e-12);
        assert!(!report.passes(tol::MUB_DEFAULT));
    }

    #[test]
    fn projectors_complete_and_satisfy_trace_identity() {
        let d = 5;
        let set = build_mubs(d).unwrap();
        let projectors = set.projectors();
        // Completeness: each basis's projectors sum to the identity.
        for family in &projectors {
            let mut sum = DMatrix::<Complex64>::zeros(d, d);
            for p in family {
                sum += p;
            }
            for i in 0..d {
                for j in 0..d {
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((sum[(i, j)] - Complex64::new(target, 0.0)).norm() < 1e-10);
                }
            }
        }
        // Direct matrix-product trace identity on a cross-basis pair.
        for j in 0..d {
            for m in 0..d {
                let prod = &projectors[0][j] * &projectors[3][m];
                let tr = prod.trace();
                assert!((tr.re - 1.0 / d as f64).abs() < 1e-10);
                assert!(tr.im.abs() < 1e-10);
            }
        }
        // And within one basis.
        let prod = &projectors[2][1] * &projectors[2][1];
        assert!((prod.trace().re - 1.0).abs() < 1e-10);
        let prod = &projectors[2][1] * &projectors[2][3];
        assert!(prod.trace().norm() < 1e-10);
    }

    #[test]
    fn symplectic_partition_covers_all_labels() {
        for k in 1..=5usize {
            let d = 1usize << k;
            let classes = symplectic_partition(k);
            assert_eq!(classes.len(), d + 1);
            let mut seen = vec![false; d * d];
            for class in &classes {
                assert_eq!(class.len(), d - 1);
                for &l in class {
                    assert!(!seen[l as usize], "label {l} duplicated");
                    seen[l as usize] = true;
                    for &m in class {
                        assert!(commutes(l, m, k));
                    }
                }
            }
            assert!(seen[1..].iter().all(|&s| s));
        }
    }
}
