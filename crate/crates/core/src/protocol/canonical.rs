use num_complex::Complex;
use num_traits::One;

use super::swap::Ensemble;
use crate::gates::BellLabel;
use crate::scalar::Real;

/// One row of the canonical outcome table.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalRow<T: Real> {
    /// `(j, m)`: sign bits of the final (1,2) and (3,4) Bell labels.
    pub group: (u8, u8),
    /// 1-based rank inside the group by descending probability.
    pub rank: usize,
    pub bell_12: BellLabel,
    pub bell_34: BellLabel,
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub probability: T,
    /// Indices into `Ensemble::branches` merged into this row.
    pub members: Vec<usize>,
}

/// Unit phase `e^{iα}` and the rotated pair `(e^{iα}a, e^{iα}b)` such that `a`
/// is real and non-negative, or, when `a` vanishes, `b` is.
pub fn normalize_phase<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
) -> (Complex<T>, Complex<T>, Complex<T>) {
    let cutoff = T::lit(T::AMP_CUTOFF);
    let a_is_pivot = a.norm() > cutoff;
    let pivot = if a_is_pivot { a } else { b };
    if pivot.norm() <= cutoff {
        return (Complex::one(), a, b);
    }
    let phase = pivot.conj() / pivot.norm();
    let (mut ra, mut rb) = (a * phase, b * phase);
    // the pivot is real by construction; drop rounding residue
    if a_is_pivot {
        ra.im = T::zero();
    } else {
        rb.im = T::zero();
    }
    (phase, ra, rb)
}

/// Groups the ensemble by `(j, m)`, merges branches with identical final
/// states and ranks rows by descending probability (ties: descending `|a|`).
/// Groups are emitted in `(j, m)` lexicographic order.
pub fn canonical_table<T: Real>(e: &Ensemble<T>) -> Vec<CanonicalRow<T>> {
    let merge_tol = T::lit(T::MERGE_TOL);
    let mut rows: Vec<CanonicalRow<T>> = Vec::new();
    for (idx, br) in e.branches.iter().enumerate() {
        let group = br.group();
        let existing = rows.iter_mut().find(|r| {
            r.group == group
                && e.branches[r.members[0]]
                    .final_state
                    .max_abs_diff(&br.final_state)
                    <= merge_tol
        });
        match existing {
            Some(row) => {
                row.probability += br.probability;
                row.members.push(idx);
            }
            None => {
                let (_, a, b) = normalize_phase(br.third_pair.0, br.third_pair.1);
                rows.push(CanonicalRow {
                    group,
                    rank: 0,
                    bell_12: br.final_bell_12(),
                    bell_34: br.final_bell_34(),
                    a,
                    b,
                    probability: br.probability,
                    members: vec![idx],
                });
            }
        }
    }
    rows.sort_by(|x, y| {
        x.group
            .cmp(&y.group)
            .then(
                y.probability
                    .partial_cmp(&x.probability)
                    .expect("finite probability"),
            )
            .then(
                y.a.norm()
                    .partial_cmp(&x.a.norm())
                    .expect("finite amplitude"),
            )
    });
    let mut last_group = None;
    let mut rank = 0;
    for row in rows.iter_mut() {
        if last_group != Some(row.group) {
            last_group = Some(row.group);
            rank = 0;
        }
        rank += 1;
        row.rank = rank;
    }
    rows
}

impl<T: Real> CanonicalRow<T> {
    pub fn a_real(&self) -> T {
        self.a.re
    }

    pub fn b_real(&self) -> T {
        self.b.re
    }

    pub fn is_real(&self) -> bool {
        let cutoff = T::lit(T::AMP_CUTOFF);
        self.a.im.abs() <= cutoff && self.b.im.abs() <= cutoff
    }
}
