use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::fit::{fit_power_law, PowerLawFit};
use crate::error::{Error, Result};

/// JSON has no infinities or NaN: non-finite values are written as `null`
/// and read back as NaN.
mod float_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

mod map_float_or_null {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&String, Option<f64>> =
            m.iter().map(|(k, v)| (k, v.is_finite().then_some(*v))).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let m = BTreeMap::<String, Option<f64>>::deserialize(d)?;
        Ok(m.into_iter().map(|(k, v)| (k, v.unwrap_or(f64::NAN))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub params: BTreeMap<String, f64>,
    #[serde(with = "float_or_null")]
    pub lhs: f64,
    #[serde(with = "float_or_null")]
    pub rhs: f64,
    #[serde(with = "float_or_null")]
    pub ratio: f64,
}

impl SweepPoint {
    pub fn new(params: &[(&str, f64)], lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs == 0.0 && lhs == 0.0 { 0.0 } else { lhs / rhs };
        SweepPoint {
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            ratio,
        }
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }
}

/// Closed interval an exponent must fall into; a missing edge is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Band {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Band { lo: Some(lo), hi: Some(hi) }
    }

    pub const fn at_most(hi: f64) -> Self {
        Band { lo: None, hi: Some(hi) }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo.is_none_or(|lo| x >= lo) && self.hi.is_none_or(|hi| x <= hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub name: String,
    pub points: Vec<SweepPoint>,
    pub fit: Option<PowerLawFit>,
    pub band: Option<Band>,
    pub pass: bool,
    /// Named scalar side results (maxima, stability spreads, controls).
    #[serde(default, with = "map_float_or_null")]
    pub metrics: BTreeMap<String, f64>,
}

impl EstimateReport {
    pub fn new(name: &str, points: Vec<SweepPoint>) -> Self {
        EstimateReport {
            name: name.to_string(),
            points,
            fit: None,
            band: None,
            pass: true,
            metrics: BTreeMap::new(),
        }
    }

    /// Fits `y` against the parameter `x_key` over all points and checks the
    /// exponent against `band`.
    pub fn fit_exponent(&mut self, x_key: &str, y: impl Fn(&SweepPoint) -> f64, band: Band) -> Result<()> {
        let pts = self
            .points
            .iter()
            .map(|p| {
                p.param(x_key)
                    .map(|x| (x, y(p)))
                    .ok_or_else(|| Error::Fit(format!("point without parameter `{x_key}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let fit = fit_power_law(&pts)?;
        self.pass &= band.contains(fit.exponent);
        self.fit = Some(fit);
        self.band = Some(band);
        Ok(())
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ratio).collect()
    }

    pub fn max_ratio(&self) -> f64 {
        self.ratios().into_iter().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn param_keys(&self) -> Vec<String> {
        let keys: BTreeSet<&String> = self.points.iter().flat_map(|p| p.params.keys()).collect();
        keys.into_iter().cloned().collect()
    }

    /// Flat CSV: `name,<sorted parameter keys>,lhs,rhs,ratio`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let keys = self.param_keys();
        let mut header = vec!["name".to_string()];
        header.extend(keys.iter().cloned());
        header.extend(["lhs", "rhs", "ratio"].map(String::from));
        writeln!(w, "{}", header.join(","))?;
        for p in &self.points {
            let mut row = vec![self.name.clone()];
            for k in &keys {
                row.push(p.params.get(k).map(|v| v.to_string()).unwrap_or_default());
            }
            row.extend([p.lhs, p.rhs, p.ratio].map(|v| v.to_string()));
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Stability spread of a set of positive values: `max/min − 1`.
pub fn spread(values: &[f64]) -> f64 {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    hi / lo - 1.0
}

/// Largest relative deviation from the median, `max |x − med| / med`.
pub fn median_deviation(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let mid = v.len() / 2;
    let median = if v.len() % 2 == 1 { v[mid] } else { 0.5 * (v[mid - 1] + v[mid]) };
    values.iter().map(|x| (x - median).abs() / median).fold(0.0, f64::max)
}

/// Checks that a JSON document has the report shape.
pub fn validate_report_json(text: &str) -> Result<()> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("report is not an object".into()))?;
    let need = |k: &str| obj.get(k).ok_or_else(|| Error::Schema(format!("report lacks `{k}`")));
    need("name")?
        .as_str()
        .ok_or_else(|| Error::Schema("`name` is not a string".into()))?;
    need("pass")?
        .as_bool()
        .ok_or_else(|| Error::Schema("`pass` is not a boolean".into()))?;
    let points = need("points")?
        .as_array()
        .ok_or_else(|| Error::Schema("`points` is not an array".into()))?;
    for (i, p) in points.iter().enumerate() {
        if !p.get("params").is_some_and(Value::is_object) {
            return Err(Error::Schema(format!("point {i}: `params` missing")));
        }
        for k in ["lhs", "rhs", "ratio"] {
            if !p.get(k).is_some_and(|x| x.is_number() || x.is_null()) {
                return Err(Error::Schema(format!("point {i}: `{k}` is not a number")));
            }
        }
    }
    for (k, fields) in [("fit", &["exponent", "stderr", "constant"][..]), ("band", &["lo", "hi"][..])] {
        match need(k)? {
            Value::Null => {}
            Value::Object(o) => {
                if let Some(f) = fields.iter().find(|f| !o.contains_key(**f)) {
                    return Err(Error::Schema(format!("`{k}` lacks `{f}`")));
                }
            }
            _ => return Err(Error::Schema(format!("`{k}` is neither null nor an object"))),
        }
    }
    Ok(())
}
