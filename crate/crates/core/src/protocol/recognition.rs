use num_complex::Complex;
use num_traits::Zero;

use super::{CompletionOrder, ProtocolConfig};
use crate::encodings::{wc_initial_pattern, Base, BaseCode};
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::linalg::{complete_orthonormal, Matrix};
use crate::scalar::{cr, Real};
use crate::statevec::{apply_unitary, permute_qubits, tensor, StateVector};

/// Template qubits (1,2,3) go to positions (1,3,5), incoming (4,5,6) to (2,4,6).
pub const PAIR_INTERLEAVE: [usize; 6] = [1, 3, 5, 2, 4, 6];

/// The images `U|N>_WC,I` for N = A, T, G, C, as (input pattern, output amplitudes).
///
/// ```text
/// A: |101> -> cosφ|011> - sinφ|101>
/// T: |010> -> cosφ|010> + sinφ|100>
/// G: |011> -> cosθ sinφ|011> + cosθ cosφ|101> + sinθ|110>
/// C: |100> -> cosθ cosφ|100> - cosθ sinφ|010> + sinθ|001>
/// ```
///
/// At the default angles every amplitude is ±1/√2 or ±1/√3.
pub fn recognition_targets<T: Real>(
    cfg: &ProtocolConfig<T>,
) -> Result<Vec<(usize, Vec<Complex<T>>)>> {
    cfg.validate()?;
    let (st, ct) = cfg.theta.sin_cos();
    let (sp, cp) = cfg.phi.sin_cos();
    let vec_of = |terms: &[(usize, T)]| {
        let mut v = vec![Complex::zero(); 8];
        for &(i, x) in terms {
            v[i] = cr(x);
        }
        v
    };
    Ok(vec![
        (0b101, vec_of(&[(0b011, cp), (0b101, -sp)])),
        (0b010, vec_of(&[(0b010, cp), (0b100, sp)])),
        (
            0b011,
            vec_of(&[(0b011, ct * sp), (0b101, ct * cp), (0b110, st)]),
        ),
        (
            0b100,
            vec_of(&[(0b100, ct * cp), (0b010, -ct * sp), (0b001, st)]),
        ),
    ])
}

/// Builds the 3-qubit recognition unitary from its action on the four
/// pre-recognition patterns; the other four columns come from Gram-Schmidt
/// over computational basis kets in the configured order.
pub fn build_recognition_unitary<T: Real>(cfg: &ProtocolConfig<T>) -> Result<Gate<T>> {
    let targets = recognition_targets(cfg)?;
    let given: Vec<Vec<Complex<T>>> = targets.iter().map(|(_, v)| v.clone()).collect();
    let order: Vec<usize> = match cfg.completion {
        CompletionOrder::Ascending => (0..8).collect(),
        CompletionOrder::Descending => (0..8).rev().collect(),
    };
    let extra = complete_orthonormal(&given, 8, order).ok_or(Error::CompletionFailed)?;
    let assigned: Vec<usize> = targets.iter().map(|(i, _)| *i).collect();
    let free = (0..8).filter(|i| !assigned.contains(i));
    let mut columns: Vec<Vec<Complex<T>>> = vec![Vec::new(); 8];
    for (i, v) in targets {
        columns[i] = v;
    }
    for (i, v) in free.zip(extra) {
        columns[i] = v;
    }
    Gate::new("U", Matrix::from_columns(&columns))
}

/// `U|b>_WC,I`: the post-recognition WC-edge state of a canonical base.
pub fn recognize<T: Real>(b: BaseCode, cfg: &ProtocolConfig<T>) -> Result<StateVector<T>> {
    let initial = wc_initial_pattern(b)?.state::<T>();
    let u = build_recognition_unitary(cfg)?;
    apply_unitary(&initial, &u, &[1, 2, 3])
}

/// Six-qubit pair state with bonded atoms adjacent: template on odd
/// positions, incoming base on even positions.
pub fn assemble_pair<T: Real>(
    template: BaseCode,
    incoming: BaseCode,
    cfg: &ProtocolConfig<T>,
) -> Result<StateVector<T>> {
    for b in [template, incoming] {
        if !b.is_canonical() {
            return Err(Error::UnsupportedEncoding {
                base: b.to_string(),
                edge: "WC",
            });
        }
    }
    let supported = matches!(
        (template.base, incoming.base),
        (Base::A, Base::T) | (Base::T, Base::A) | (Base::G, Base::C) | (Base::C, Base::G)
    );
    if !supported {
        return Err(Error::UnsupportedPair(format!("{template}·{incoming}")));
    }
    let product = tensor(&recognize(template, cfg)?, &recognize(incoming, cfg)?)?;
    permute_qubits(&product, &PAIR_INTERLEAVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::BaseCode;

    fn cfg() -> ProtocolConfig<f64> {
        ProtocolConfig::default()
    }

    fn s(terms: &[(&str, f64)]) -> StateVector<f64> {
        let t: Vec<(&str, Complex<f64>)> = terms
            .iter()
            .map(|&(k, x)| (k, Complex::new(x, 0.0)))
            .collect();
        StateVector::from_terms(&t).unwrap()
    }

    #[test]
    fn recognition_examples() {
        let a = recognize(BaseCode::canonical(Base::A), &cfg()).unwrap();
        assert!(a.max_abs_diff(&s(&[("011", 1.0), ("101", -1.0)])) < 1e-12);
        let c = recognize(BaseCode::canonical(Base::C), &cfg()).unwrap();
        assert!(c.max_abs_diff(&s(&[("100", 1.0), ("010", -1.0), ("001", 1.0)])) < 1e-12);
        assert!((c.norm() - 1.0).abs() < 1e-12);
        assert!(recognize(BaseCode::rare(Base::A), &cfg()).is_err());
    }

    #[test]
    fn unitary_for_both_completions_and_odd_angles() {
        for completion in [CompletionOrder::Ascending, CompletionOrder::Descending] {
            for (theta, phi) in [(0.3, 1.1), (-2.0, 0.4)] {
                let mut c = ProtocolConfig {
                    completion,
                    ..cfg()
                };
                let u = build_recognition_unitary(&c).unwrap();
                assert!(u.unitarity_residual() < 1e-12);
                c.theta = theta;
                c.phi = phi;
                let u = build_recognition_unitary(&c).unwrap();
                assert!(u.unitarity_residual() < 1e-12);
            }
        }
    }

    #[test]
    fn completions_differ_but_agree_on_targets() {
        let asc = build_recognition_unitary(&cfg()).unwrap();
        let desc = build_recognition_unitary(&ProtocolConfig {
            completion: CompletionOrder::Descending,
            ..cfg()
        })
        .unwrap();
        assert!(asc.matrix().max_abs_diff(desc.matrix()) > 0.1);
        for i in [0b101, 0b010, 0b011, 0b100] {
            assert_eq!(asc.column(i), desc.column(i));
        }
    }

    #[test]
    fn non_finite_angles_rejected() {
        let c = ProtocolConfig {
            theta: f64::NAN,
            ..cfg()
        };
        assert!(matches!(
            build_recognition_unitary(&c),
            Err(Error::NonFiniteAngle(_))
        ));
    }

    #[test]
    fn assemble_rejects_unsupported() {
        let a = BaseCode::canonical(Base::A);
        let c = BaseCode::canonical(Base::C);
        assert!(matches!(
            assemble_pair(a, c, &cfg()),
            Err(Error::UnsupportedPair(_))
        ));
        assert!(matches!(
            assemble_pair(a, BaseCode::rare(Base::T), &cfg()),
            Err(Error::UnsupportedEncoding { .. })
        ));
    }
}
