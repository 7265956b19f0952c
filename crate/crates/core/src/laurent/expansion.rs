//! The expansion `w(1 + y_1 t, …, 1 + y_m t) = Σ f_i(y) t^i` and the
//! centrality tests built on its coefficients.

use serde::Serialize;

use crate::algebra::{Element, Scalar};
use crate::words::Monomial;

use super::{invert_geometric, LaurentError, TruncatedLaurentSeries};

/// `w(1 + c_1 t, …, 1 + c_m t)` to order `order`; coefficient `i` is `f_i(c)`.
pub fn expand_monomial(w: &Monomial, args: &[Element], order: i64) -> Result<TruncatedLaurentSeries, LaurentError> {
    if args.len() < w.arity() {
        return Err(LaurentError::Precondition(format!(
            "word needs {} arguments, got {}",
            w.arity(),
            args.len()
        )));
    }
    if order < 0 {
        return Err(LaurentError::Precondition("order must be non-negative".into()));
    }
    let alg = w.algebra();
    let mut forward: Vec<Option<TruncatedLaurentSeries>> = vec![None; args.len()];
    let mut backward: Vec<Option<TruncatedLaurentSeries>> = vec![None; args.len()];
    let mut acc = TruncatedLaurentSeries::monomial(w.coeffs()[0].clone(), 0, order);
    for (letter, coeff) in w.letters().iter().zip(&w.coeffs()[1..]) {
        let idx = letter.var - 1;
        if !args[idx].same_algebra(&Element::one(alg)) {
            return Err(LaurentError::Precondition(format!("argument {} is not in {alg}", args[idx])));
        }
        let factor = if letter.exp > 0 {
            forward[idx].get_or_insert_with(|| {
                TruncatedLaurentSeries::polynomial(alg, &[Element::one(alg), args[idx].clone()], order)
            })
        } else {
            if backward[idx].is_none() {
                backward[idx] = Some(invert_geometric(&args[idx], order)?);
            }
            backward[idx].as_mut().expect("just filled")
        };
        for _ in 0..letter.exp.unsigned_abs() {
            acc = acc.mul(factor)?;
        }
        acc = acc.mul(&TruncatedLaurentSeries::monomial(coeff.clone(), 0, order))?;
    }
    Ok(acc)
}

/// Least `i ∈ [1, order]` with `f_i` nonzero on one of `samples`, and the
/// index of that sample. `None` only says every sample vanished up to `order`.
pub fn first_nonzero_index(
    w: &Monomial,
    samples: &[Vec<Element>],
    order: i64,
) -> Result<Option<(i64, usize)>, LaurentError> {
    if order < 1 {
        return Err(LaurentError::Precondition("order must be at least 1".into()));
    }
    let expansions: Vec<TruncatedLaurentSeries> =
        samples.iter().map(|s| expand_monomial(w, s, order)).collect::<Result<_, _>>()?;
    first_nonzero_in(&expansions, order)
}

fn first_nonzero_in(expansions: &[TruncatedLaurentSeries], order: i64) -> Result<Option<(i64, usize)>, LaurentError> {
    for i in 1..=order {
        for (k, e) in expansions.iter().enumerate() {
            if !e.coeff(i)?.is_zero() {
                return Ok(Some((i, k)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleVerdict {
    pub sample: usize,
    /// `f_{i₀}` of the sample, as a literal.
    pub coefficient: String,
    pub central: bool,
}

/// Per-sample centrality of `f_{i₀}^α`, where `f_i` are the coefficients of
/// `w(1 + y t)^M` and `i₀` is the first index nonzero on some sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub m: u64,
    pub alpha: u64,
    pub order: i64,
    pub i0: Option<i64>,
    pub verdicts: Vec<SampleVerdict>,
    /// First sample whose power is not central.
    pub witness: Option<usize>,
}

impl PipelineReport {
    pub fn all_central(&self) -> bool {
        self.i0.is_some() && self.witness.is_none()
    }
}

pub fn check_central_pipeline(
    w: &Monomial,
    samples: &[Vec<Element>],
    m: u64,
    alpha: u64,
    order: i64,
) -> Result<PipelineReport, LaurentError> {
    if m == 0 || alpha == 0 {
        return Err(LaurentError::Precondition("M and alpha must be positive".into()));
    }
    let expansions: Vec<TruncatedLaurentSeries> = samples
        .iter()
        .map(|s| expand_monomial(w, s, order)?.pow(m))
        .collect::<Result<_, _>>()?;
    let Some((i0, _)) = first_nonzero_in(&expansions, order)? else {
        return Ok(PipelineReport { m, alpha, order, i0: None, verdicts: Vec::new(), witness: None });
    };
    let mut verdicts = Vec::with_capacity(samples.len());
    for (k, e) in expansions.iter().enumerate() {
        let f = e.coeff(i0)?;
        let central = f.pow_u(&alpha.into()).is_central();
        verdicts.push(SampleVerdict { sample: k, coefficient: f.to_string(), central });
    }
    let witness = verdicts.iter().find(|v| !v.central).map(|v| v.sample);
    Ok(PipelineReport { m, alpha, order, i0: Some(i0), verdicts, witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CentralPolyVerdict {
    CentralCoefficients,
    /// `f(points[point])` is not central.
    NotCentral { point: usize },
}

/// Decide whether `f(t) = Σ c_i t^i` (low-first) has central coefficients
/// from its values at distinct central points.
///
/// For each generator `g`, `h(t) = f(t) g − g f(t)` has degree ≤ deg f; if
/// it vanishes at more than deg f points it is zero. All `h` vanishing
/// identically means every coefficient commutes with the generators.
pub fn central_poly_test(f: &[Element], points: &[Scalar]) -> Result<CentralPolyVerdict, LaurentError> {
    let Some(first) = f.first() else {
        return Ok(CentralPolyVerdict::CentralCoefficients);
    };
    let alg = first.algebra();
    let degree = f.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if points.len() < degree + 1 {
        return Err(LaurentError::InsufficientPoints { needed: degree + 1, got: points.len() });
    }
    for (k, p) in points.iter().enumerate() {
        if points[..k].contains(p) {
            return Err(LaurentError::Precondition(format!("point {p} is repeated")));
        }
    }
    let values: Vec<Element> = points
        .iter()
        .map(|p| {
            let x = Element::from_scalar(alg, p);
            f.iter().rev().fold(Element::zero(alg), |acc, c| &(&acc * &x) + c)
        })
        .collect();
    for g in Element::generators(alg) {
        let roots = values.iter().filter(|v| (*v * &g) == (&g * *v)).count();
        if roots <= degree {
            let point = values
                .iter()
                .position(|v| !v.is_central())
                .expect("a non-commuting value exists");
            return Ok(CentralPolyVerdict::NotCentral { point });
        }
    }
    Ok(CentralPolyVerdict::CentralCoefficients)
}
