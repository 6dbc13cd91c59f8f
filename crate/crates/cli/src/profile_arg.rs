//! Parsing of `family:key=val,...` profile arguments.

use std::collections::BTreeMap;

use sirev::bessel::SeriesConfig;
use sirev::profile::*;
use sirev::{Error, ProfileCurve, Result};

pub const FAMILIES: &str = "constk, consth, bessel, log, power, lin, expr";

struct Params<'a> {
    family: &'a str,
    values: BTreeMap<&'a str, f64>,
}

impl<'a> Params<'a> {
    fn parse(family: &'a str, body: &'a str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for pair in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{pair}`")))?;
            let val: f64 = val
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid number `{val}` for `{key}`")))?;
            if values.insert(key.trim(), val).is_some() {
                return Err(Error::Parse(format!("duplicate key `{key}`")));
            }
        }
        Ok(Params { family, values })
    }

    /// Takes the first present name from `names`.
    fn take(&mut self, names: &[&str]) -> Option<f64> {
        names.iter().find_map(|n| self.values.remove(*n))
    }

    fn required(&mut self, names: &[&str]) -> Result<f64> {
        self.take(names)
            .ok_or_else(|| Error::Parse(format!("{} profile needs `{}`", self.family, names[0])))
    }

    fn optional(&mut self, names: &[&str]) -> f64 {
        self.take(names).unwrap_or(0.0)
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(k) => Err(Error::Parse(format!(
                "unknown key `{k}` for {} profile",
                self.family
            ))),
            None => Ok(()),
        }
    }
}

pub fn parse_profile(arg: &str, cfg: SeriesConfig) -> Result<ProfileCurve> {
    let (family, body) = arg.split_once(':').unwrap_or((arg, ""));
    let family = family.trim();
    if family == "expr" {
        let src = body.trim();
        let src = src.strip_prefix("f=").unwrap_or(src);
        return expr_profile(src, cfg);
    }
    let mut p = Params::parse(family, body)?;
    let profile = match family {
        "constk" => {
            let k0 = p.required(&["k0", "K0", "k"])?;
            constant_k_profile(k0, p.optional(&["c1"]), p.optional(&["c2"]))
        }
        "consth" => {
            let h0 = p.required(&["h0", "H0", "h"])?;
            constant_h_profile(h0, p.optional(&["c1"]), p.optional(&["c2"]))
        }
        "bessel" => {
            let lambda = p.required(&["lambda", "lambda3"])?;
            bessel_profile(lambda, p.optional(&["c1"]), p.optional(&["c2"]), cfg)
        }
        "log" => {
            let lambda = p.required(&["lambda"])?;
            log_profile(lambda, p.optional(&["c"]))
        }
        "power" => {
            let lambda = p.required(&["lambda"])?;
            let mu = p.required(&["mu"])?;
            power_profile(lambda, mu, p.required(&["c"])?)
        }
        "lin" => {
            let a = p.required(&["a"])?;
            linear_profile(a, p.optional(&["b"]))
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown profile family `{other}` (expected one of {FAMILIES})"
            )))
        }
    }?;
    p.finish()?;
    Ok(profile)
}
