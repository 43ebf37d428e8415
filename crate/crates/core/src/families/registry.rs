//! String-keyed family registry consumed by the CLI.

use super::{
    CauchyLocation, CurveFamily, Family, GammaShape, MultinomialCurve, NormalLocation,
    NormalLocationScale, NormalMixture, SimplexMultinomial,
};
use crate::{Error, Result};

/// Names of the registered parametric families.
///
/// `neyman-scott` is also a registered model name (see [`model_names`])
/// but is not constructible here: its parameter count grows with the
/// sample, so it lives behind its own sampler and estimator.
pub const FAMILY_NAMES: [&str; 7] = [
    "normal-loc",
    "normal",
    "cauchy",
    "gamma-shape",
    "binomial",
    "hardy-weinberg",
    "normal-mixture",
];

/// Instantiate a parametric family by registry name.
pub fn lookup(name: &str) -> Result<Box<dyn Family>> {
    match name {
        "normal-loc" => Ok(Box::new(NormalLocation::unit_sigma())),
        "normal" => Ok(Box::new(NormalLocationScale)),
        "cauchy" => Ok(Box::new(CauchyLocation)),
        "gamma-shape" => Ok(Box::new(GammaShape)),
        "binomial" => Ok(Box::new(CurveFamily::new(MultinomialCurve::binomial()))),
        "hardy-weinberg" => Ok(Box::new(CurveFamily::new(MultinomialCurve::hardy_weinberg()))),
        "multinomial-simplex-3" => Ok(Box::new(SimplexMultinomial::new(3))),
        "normal-mixture" => Ok(Box::new(NormalMixture)),
        _ => Err(Error::UnknownName { kind: "family", name: name.to_string() }),
    }
}

/// All model names, including the paired-array model.
pub fn model_names() -> Vec<&'static str> {
    let mut names = FAMILY_NAMES.to_vec();
    names.push("neyman-scott");
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_family_resolves() {
        for name in FAMILY_NAMES {
            let family = lookup(name).unwrap();
            assert_eq!(family.name(), name);
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(lookup("no-such-family").is_err());
    }
}
