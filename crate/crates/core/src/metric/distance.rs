use super::fitted::{AttributeModel, FittedMetric};
use crate::dist_models::{Cdf, GaussianModel, OrdinalCdfModel, RangeModel};
use crate::error::{Error, Result};
use crate::schema_io::{AttributeSpec, Kind, Record, Value};

/// `|F(x1) − F(x2)|` under any CDF: the probability of the interval between the two values.
pub fn prob_distance_cdf<F: Cdf + ?Sized>(cdf: &F, x1: f64, x2: f64) -> f64 {
    cdf.interval_mass(x1, x2)
}

/// Gaussian probabilistic distance, via half the difference of erf at the scaled z-scores.
pub fn prob_distance_gaussian(model: &GaussianModel, x1: f64, x2: f64) -> f64 {
    model.distance(x1, x2)
}

pub fn prob_distance_ordinal(model: &OrdinalCdfModel, l1: &str, l2: &str) -> Result<f64> {
    model.distance(l1, l2)
}

pub fn gower_numeric(model: &RangeModel, x1: f64, x2: f64) -> f64 {
    model.distance(x1, x2)
}

/// Binary match score: 0 on equal tokens, 1 otherwise.
#[inline]
pub fn match_distance(c1: &str, c2: &str) -> f64 {
    if c1 == c2 {
        0.0
    } else {
        1.0
    }
}

/// `d^γ`. γ = 2 squares, γ = 0.5 takes the square root.
#[inline]
pub fn power_transform(d: f64, gamma: f64) -> f64 {
    if gamma == 1.0 {
        d
    } else if gamma == 2.0 {
        d * d
    } else if gamma == 0.5 {
        d.sqrt()
    } else {
        d.powf(gamma)
    }
}

/// Distance for one attribute after the power transform; `None` when either value is missing.
pub fn attribute_distance(
    spec: &AttributeSpec,
    model: &AttributeModel,
    v1: &Value,
    v2: &Value,
) -> Result<Option<f64>> {
    if !model.matches(spec.mode) {
        return Err(Error::ModelMismatch {
            name: spec.name.clone(),
            mode: spec.mode.as_str(),
        });
    }
    if v1.is_missing() || v2.is_missing() {
        // still reject a value of the wrong kind on the present side
        for v in [v1, v2] {
            check_kind(spec, v)?;
        }
        return Ok(None);
    }
    let mismatch = || Error::TypeMismatch {
        name: spec.name.clone(),
        kind: spec.kind.as_str(),
    };
    let d = match model {
        AttributeModel::Gaussian(m) => {
            let (a, b) = numbers(v1, v2).ok_or_else(mismatch)?;
            prob_distance_gaussian(m, a, b)
        }
        AttributeModel::Empirical(m) => {
            let (a, b) = numbers(v1, v2).ok_or_else(mismatch)?;
            prob_distance_cdf(m, a, b)
        }
        AttributeModel::Range(m) => {
            let (a, b) = numbers(v1, v2).ok_or_else(mismatch)?;
            gower_numeric(m, a, b)
        }
        AttributeModel::Ordinal(m) => {
            let (a, b) = categories(v1, v2).ok_or_else(mismatch)?;
            prob_distance_ordinal(m, a, b)?
        }
        AttributeModel::Categorical => {
            let (a, b) = categories(v1, v2).ok_or_else(mismatch)?;
            if spec.kind == Kind::Ordinal {
                for token in [a, b] {
                    if spec.level_index(token).is_none() {
                        return Err(Error::UnknownToken(token.to_string()));
                    }
                }
            }
            match_distance(a, b)
        }
    };
    Ok(Some(power_transform(d, spec.exponent)))
}

fn check_kind(spec: &AttributeSpec, v: &Value) -> Result<()> {
    let ok = match v {
        Value::Missing => true,
        Value::Number(_) => spec.kind == Kind::Numeric,
        Value::Category(_) => spec.kind != Kind::Numeric,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::TypeMismatch {
            name: spec.name.clone(),
            kind: spec.kind.as_str(),
        })
    }
}

fn numbers(v1: &Value, v2: &Value) -> Option<(f64, f64)> {
    Some((v1.as_number()?, v2.as_number()?))
}

fn categories<'a>(v1: &'a Value, v2: &'a Value) -> Option<(&'a str, &'a str)> {
    Some((v1.as_category()?, v2.as_category()?))
}

/// Weighted mean of the present per-attribute distances, summed in schema order.
///
/// Attributes with a missing side or zero weight are skipped and the weights
/// renormalized over the rest.
pub(crate) fn aggregate<I>(terms: I) -> Result<f64>
where
    I: IntoIterator<Item = (f64, Option<f64>)>,
{
    let mut any = false;
    let mut num = 0.0;
    let mut den = 0.0;
    for (w, d) in terms {
        if let Some(d) = d {
            any = true;
            if w > 0.0 {
                num += w * d;
                den += w;
            }
        }
    }
    if !any {
        return Err(Error::NoComparableAttributes);
    }
    if den == 0.0 {
        return Err(Error::ZeroWeight);
    }
    Ok(num / den)
}

fn check_width<R: Record + ?Sized>(fm: &FittedMetric, r: &R) -> Result<()> {
    let expected = fm.schema().len();
    if r.width() != expected {
        return Err(Error::RecordWidth {
            found: r.width(),
            expected,
        });
    }
    Ok(())
}

/// Weighted Gower-style mean of per-attribute distances; the target column is ignored.
pub fn record_distance<A, B>(fm: &FittedMetric, r1: &A, r2: &B) -> Result<f64>
where
    A: Record + ?Sized,
    B: Record + ?Sized,
{
    check_width(fm, r1)?;
    check_width(fm, r2)?;
    let mut terms = Vec::with_capacity(fm.models().len());
    for (i, spec, model) in fm.features() {
        let d = attribute_distance(spec, model, r1.value(i), r2.value(i))?;
        terms.push((spec.weight, d));
    }
    aggregate(terms)
}

/// `1 − record_distance`.
pub fn record_similarity<A, B>(fm: &FittedMetric, r1: &A, r2: &B) -> Result<f64>
where
    A: Record + ?Sized,
    B: Record + ?Sized,
{
    Ok(1.0 - record_distance(fm, r1, r2)?)
}
