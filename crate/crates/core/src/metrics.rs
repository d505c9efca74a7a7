//! Entanglement and conservation diagnostics, and comparison of computed
//! ensembles against the embedded reference data.

use std::collections::BTreeSet;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::encodings::Base;
use crate::error::{Error, Result};
use crate::gates::{pauli_yy, BellLabel};
use crate::linalg::{psd_sqrt, singular_values};
use crate::protocol::{canonical_table, normalize_phase, CanonicalRow, Ensemble};
use crate::reference::{at_exact_probability, reference};
use crate::scalar::Real;
use crate::statevec::{reduced_density, DensityMatrix, StateVector};

/// Von Neumann entropy (bits) of the reduced state on `cut`.
pub fn entanglement_entropy<T: Real>(s: &StateVector<T>, cut: &[usize]) -> Result<T> {
    if cut.is_empty() || cut.len() >= s.num_qubits() {
        return Err(Error::TrivialCut);
    }
    let rho = reduced_density(s, cut)?;
    Ok(von_neumann_entropy(&rho))
}

/// `-Σ λ log₂ λ` over eigenvalues above the cutoff.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    let cutoff = T::lit(T::EIG_CUTOFF);
    rho.eigenvalues()
        .into_iter()
        .filter(|&x| x > cutoff)
        .fold(T::zero(), |acc, x| acc - x * x.log2())
}

/// Wootters concurrence of a two-qubit state:
/// `max(0, λ1 - λ2 - λ3 - λ4)` with `λ` the singular values of `√ρ·√ρ̃`,
/// `ρ̃ = (Y⊗Y) ρ* (Y⊗Y)`.
pub fn concurrence<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    if rho.num_qubits() != 2 {
        return Err(Error::InvalidDensity(format!(
            "concurrence needs 2 qubits, got {}",
            rho.num_qubits()
        )));
    }
    let cutoff = T::lit(T::EIG_CUTOFF);
    let sqrt_rho = psd_sqrt(rho.matrix(), cutoff);
    let yy = pauli_yy::<T>();
    let sqrt_tilde = &(&yy * &sqrt_rho.conj()) * &yy;
    let sv = singular_values(&(&sqrt_rho * &sqrt_tilde));
    let c = sv[0] - sv[1] - sv[2] - sv[3];
    Ok(c.max(T::zero()))
}

/// Concurrence between qubits `i` and `j` of a pure register.
pub fn pair_concurrence<T: Real>(s: &StateVector<T>, i: usize, j: usize) -> Result<T> {
    concurrence(&reduced_density(s, &[i, j])?)
}

/// Hamming weights (proton numbers) of the basis kets carrying amplitude.
pub fn hamming_support<T: Real>(s: &StateVector<T>) -> BTreeSet<u32> {
    let cutoff = T::lit(T::AMP_CUTOFF);
    s.amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > cutoff)
        .map(|(i, _)| i.count_ones())
        .collect()
}

/// One named comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        let pass = (expected - actual).abs() <= tolerance;
        Self {
            name: name.into(),
            expected,
            actual,
            tolerance,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pair: String,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    fn new(pair: &str, checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.pass);
        Self {
            pair: pair.to_owned(),
            checks,
            overall,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Compares the canonical table of a swap ensemble with the published data.
pub fn verify_against_reference<T: Real>(e: &Ensemble<T>) -> Result<VerificationReport> {
    let label = e.pair_label().unwrap_or_else(|| "unlabeled".to_owned());
    let rows = canonical_table(e);
    let (t, i) = e
        .pair
        .ok_or_else(|| Error::UnknownReference(label.clone()))?;
    if !(t.is_canonical() && i.is_canonical()) {
        return Err(Error::UnknownReference(label));
    }
    let checks = match (t.base, i.base) {
        (Base::A, Base::T) => verify_at(e, &rows),
        (Base::G, Base::C) => verify_gc(e, &rows),
        _ => return Err(Error::UnknownReference(label)),
    };
    Ok(VerificationReport::new(&label, checks))
}

fn total_check<T: Real>(pair: &str, e: &Ensemble<T>, tol: f64) -> Check {
    Check::new(
        format!("{pair} total probability"),
        1.0,
        (e.total_probability() + e.dropped_mass).as_f64(),
        tol,
    )
}

fn verify_at<T: Real>(e: &Ensemble<T>, rows: &[CanonicalRow<T>]) -> Vec<Check> {
    let r = reference();
    let tol = r.tolerances;
    let mut checks = vec![Check::new(
        "AT class count",
        r.at.classes.len() as f64,
        rows.len() as f64,
        0.0,
    )];
    for class in &r.at.classes {
        let b12 = BellLabel::parse(&class.bell_12);
        let b34 = BellLabel::parse(&class.bell_34);
        let row = rows
            .iter()
            .find(|row| Some(row.bell_12) == b12 && Some(row.bell_34) == b34);
        let name = format!("AT ({},{})", class.bell_12, class.bell_34);
        let (p, a, b) = match row {
            Some(row) => (
                row.probability.as_f64(),
                row.a.norm().as_f64(),
                row.b.re.as_f64(),
            ),
            None => (f64::NAN, f64::NAN, f64::NAN),
        };
        checks.push(Check::new(
            format!("{name} P published"),
            class.probability,
            p,
            tol.probability,
        ));
        checks.push(Check::new(
            format!("{name} P exact"),
            at_exact_probability(&class.bell_12, &class.bell_34),
            p,
            tol.exact,
        ));
        checks.push(Check::new(
            format!("{name} |a|"),
            r.at.third_pair.a,
            a,
            tol.exact,
        ));
        checks.push(Check::new(
            format!("{name} b"),
            r.at.third_pair.b,
            b,
            tol.exact,
        ));
    }
    checks.push(total_check("AT", e, tol.exact));
    checks
}

fn verify_gc<T: Real>(e: &Ensemble<T>, rows: &[CanonicalRow<T>]) -> Vec<Check> {
    let r = reference();
    let tol = r.tolerances;
    let expected_rows: usize = r.gc.groups.iter().map(|g| g.rows.len()).sum();
    let mut checks = vec![Check::new(
        "GC row count",
        expected_rows as f64,
        rows.len() as f64,
        0.0,
    )];
    for group in &r.gc.groups {
        let computed: Vec<&CanonicalRow<T>> = rows
            .iter()
            .filter(|row| row.group == (group.j, group.m))
            .collect();
        for printed in &group.rows {
            let name = format!("GC ({}{}) l={}", group.j, group.m, printed.l);
            let (_, ea, eb) =
                normalize_phase(Complex::new(printed.a, 0.0), Complex::new(printed.b, 0.0));
            let (p, a, b) = match computed.iter().find(|row| row.rank == printed.l) {
                Some(row) => (
                    row.probability.as_f64(),
                    row.a.re.as_f64(),
                    row.b.re.as_f64(),
                ),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            checks.push(Check::new(
                format!("{name} P"),
                printed.probability,
                p,
                tol.probability,
            ));
            checks.push(Check::new(format!("{name} a"), ea.re, a, tol.amplitude));
            checks.push(Check::new(format!("{name} b"), eb.re, b, tol.amplitude));
        }
        let sum = computed
            .iter()
            .fold(T::zero(), |acc, row| acc + row.probability);
        checks.push(Check::new(
            format!("GC ({}{}) group P", group.j, group.m),
            r.gc.group_probability,
            sum.as_f64(),
            tol.exact,
        ));
    }
    checks.push(total_check("GC", e, tol.exact));
    checks
}
