use num_complex::Complex;
use num_traits::Zero;

use super::canonical::normalize_phase;
use super::{assemble_pair, Entangler, ProtocolConfig, StepOrder};
use crate::encodings::BaseCode;
use crate::error::{Error, Result};
use crate::gates::{self, BellLabel, Gate};
use crate::scalar::Real;
use crate::statevec::{apply_unitary, measure_two_qubit, StateVector};

/// Points in the protocol at which a branch's state is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Entangled,
    Measured34,
    Corrected34,
    Measured12,
    Corrected12,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint<T: Real> {
    pub stage: Stage,
    pub state: StateVector<T>,
}

/// Conditional corrections applied on a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Corrections {
    /// X on qubits 4 and 5 after an even-parity (3,4) outcome.
    pub x45: bool,
    /// X on qubits 2 and 5 after an even-parity (1,2) outcome.
    pub x25: bool,
}

impl Corrections {
    pub fn labels(self) -> Vec<String> {
        let mut out = Vec::new();
        if self.x45 {
            out.push("X(4,5)".to_owned());
        }
        if self.x25 {
            out.push("X(2,5)".to_owned());
        }
        out
    }
}

/// One measurement trajectory of the swap.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeBranch<T: Real> {
    /// Raw outcome of the Bell measurement on qubits (3,4).
    pub bell_34: BellLabel,
    /// Raw outcome of the Bell measurement on qubits (1,2).
    pub bell_12: BellLabel,
    pub corrections: Corrections,
    /// Joint probability of both outcomes.
    pub probability: T,
    /// Register after both corrections, global phase fixed so that the
    /// third-pair amplitudes follow [`normalize_phase`].
    pub final_state: StateVector<T>,
    /// Amplitudes `(a, b)` of `|01>` and `|10>` on qubits (5,6) in
    /// `final = β(1,2) ⊗ β(3,4) ⊗ (a|01> + b|10>)`.
    pub third_pair: (Complex<T>, Complex<T>),
    pub trace: Vec<Checkpoint<T>>,
}

impl<T: Real> OutcomeBranch<T> {
    /// Bell label of pair (1,2) after correction.
    pub fn final_bell_12(&self) -> BellLabel {
        if self.corrections.x25 {
            self.bell_12.after_x()
        } else {
            self.bell_12
        }
    }

    /// Bell label of pair (3,4) after correction.
    pub fn final_bell_34(&self) -> BellLabel {
        if self.corrections.x45 {
            self.bell_34.after_x()
        } else {
            self.bell_34
        }
    }

    /// `(j, m)`: sign bits of the final (1,2) and (3,4) Bell labels.
    pub fn group(&self) -> (u8, u8) {
        (self.final_bell_12().j, self.final_bell_34().j)
    }

    pub fn state_at(&self, stage: Stage) -> Option<&StateVector<T>> {
        self.trace
            .iter()
            .find(|c| c.stage == stage)
            .map(|c| &c.state)
    }
}

/// Exact outcome distribution of the swap.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<T: Real> {
    /// `(template, incoming)` when the input came from [`run_pair`].
    pub pair: Option<(BaseCode, BaseCode)>,
    pub order: StepOrder,
    pub branches: Vec<OutcomeBranch<T>>,
    pub dropped_mass: T,
}

impl<T: Real> Ensemble<T> {
    pub fn total_probability(&self) -> T {
        self.branches
            .iter()
            .fold(T::zero(), |acc, b| acc + b.probability)
    }

    /// Short label such as `AT` or `GC`.
    pub fn pair_label(&self) -> Option<String> {
        self.pair.map(|(t, i)| format!("{t}{i}"))
    }
}

struct Round {
    pair: (usize, usize),
    /// Qubits receiving X when the outcome has even parity.
    fix: [usize; 2],
}

const ROUND_34: Round = Round {
    pair: (3, 4),
    fix: [4, 5],
};
const ROUND_12: Round = Round {
    pair: (1, 2),
    fix: [2, 5],
};

/// `(label, probability, state, trace)` of one branch after a round.
type RoundBranch<T> = (BellLabel, T, StateVector<T>, Vec<Checkpoint<T>>);

/// One Bell measurement followed by its conditional correction, on every
/// surviving branch.
fn measure_and_correct<T: Real>(
    state: &StateVector<T>,
    round: &Round,
    basis: &[StateVector<T>; 4],
    prune: T,
    measured: Stage,
    corrected: Stage,
) -> Result<(Vec<RoundBranch<T>>, T)> {
    let x = gates::pauli_x::<T>();
    let m = measure_two_qubit(state, basis, round.pair, prune)?;
    let mut out = Vec::with_capacity(m.branches.len());
    for br in m.branches {
        let label = BellLabel::ALL[br.outcome];
        let mut trace = vec![Checkpoint {
            stage: measured,
            state: br.post_state.clone(),
        }];
        let mut s = br.post_state;
        if label.is_even_parity() {
            for q in round.fix {
                s = apply_unitary(&s, &x, &[q])?;
            }
        }
        trace.push(Checkpoint {
            stage: corrected,
            state: s.clone(),
        });
        out.push((label, br.probability, s, trace));
    }
    Ok((out, m.dropped_mass))
}

/// Coefficients of qubits (5,6) once pairs (1,2) and (3,4) are projected on
/// their final Bell states.
fn third_pair_amplitudes<T: Real>(
    s: &StateVector<T>,
    b12: BellLabel,
    b34: BellLabel,
) -> (Complex<T>, Complex<T>) {
    let p12 = gates::bell_state::<T>(b12);
    let p34 = gates::bell_state::<T>(b34);
    let amp = |tail: usize| {
        let mut acc = Complex::zero();
        for (x, &u) in p12.amplitudes().iter().enumerate() {
            for (y, &v) in p34.amplitudes().iter().enumerate() {
                acc += u.conj() * v.conj() * s.amplitude((x << 4) | (y << 2) | tail);
            }
        }
        acc
    };
    (amp(0b01), amp(0b10))
}

/// Runs the five-step swap on a 6-qubit pair state, enumerating every
/// combination of Bell outcomes.
///
/// 1. entangler on qubits (3,5);
/// 2. Bell measurement of (3,4);
/// 3. if the outcome is β00 or β10, X on 4 and 5;
/// 4. Bell measurement of (1,2);
/// 5. if the outcome is β00 or β10, X on 2 and 5.
pub fn swap<T: Real>(pair_state: &StateVector<T>, cfg: &ProtocolConfig<T>) -> Result<Ensemble<T>> {
    if pair_state.num_qubits() != 6 {
        return Err(Error::WrongRegisterSize(pair_state.num_qubits()));
    }
    cfg.validate()?;
    let entangler: Gate<T> = match cfg.entangler {
        Entangler::Equality => gates::equality_entangler(),
        Entangler::Identity => gates::identity(2),
    };
    let entangled = apply_unitary(pair_state, &entangler, &[3, 5])?;
    let basis = gates::bell_basis::<T>();
    let prune = cfg.prune_threshold;

    let (first, second, stages) = match cfg.order {
        StepOrder::MiddleBondFirst => (
            &ROUND_34,
            &ROUND_12,
            [
                Stage::Measured34,
                Stage::Corrected34,
                Stage::Measured12,
                Stage::Corrected12,
            ],
        ),
        StepOrder::OuterBondFirst => (
            &ROUND_12,
            &ROUND_34,
            [
                Stage::Measured12,
                Stage::Corrected12,
                Stage::Measured34,
                Stage::Corrected34,
            ],
        ),
    };

    let (level1, mut dropped_mass) =
        measure_and_correct(&entangled, first, &basis, prune, stages[0], stages[1])?;
    let mut branches = Vec::new();
    for (label1, p1, s1, trace1) in level1 {
        let (level2, dropped2) =
            measure_and_correct(&s1, second, &basis, prune, stages[2], stages[3])?;
        dropped_mass += p1 * dropped2;
        for (label2, p2, s2, trace2) in level2 {
            let (bell_34, bell_12) = match cfg.order {
                StepOrder::MiddleBondFirst => (label1, label2),
                StepOrder::OuterBondFirst => (label2, label1),
            };
            let corrections = Corrections {
                x45: bell_34.is_even_parity(),
                x25: bell_12.is_even_parity(),
            };
            let final12 = if corrections.x25 {
                bell_12.after_x()
            } else {
                bell_12
            };
            let final34 = if corrections.x45 {
                bell_34.after_x()
            } else {
                bell_34
            };
            let (a, b) = third_pair_amplitudes(&s2, final12, final34);
            let (phase, a, b) = normalize_phase(a, b);
            let final_state = s2.with_global_phase(phase);
            let mut trace = Vec::with_capacity(5);
            trace.push(Checkpoint {
                stage: Stage::Entangled,
                state: entangled.clone(),
            });
            trace.extend(trace1.iter().cloned());
            trace.extend(trace2);
            branches.push(OutcomeBranch {
                bell_34,
                bell_12,
                corrections,
                probability: p1 * p2,
                final_state,
                third_pair: (a, b),
                trace,
            });
        }
    }
    branches.sort_by_key(|b| (b.bell_34.index(), b.bell_12.index()));
    Ok(Ensemble {
        pair: None,
        order: cfg.order,
        branches,
        dropped_mass,
    })
}

/// Assembles `template·incoming` and swaps it.
pub fn run_pair<T: Real>(
    template: BaseCode,
    incoming: BaseCode,
    cfg: &ProtocolConfig<T>,
) -> Result<Ensemble<T>> {
    let state = assemble_pair(template, incoming, cfg)?;
    let mut ensemble = swap(&state, cfg)?;
    ensemble.pair = Some((template, incoming));
    Ok(ensemble)
}
