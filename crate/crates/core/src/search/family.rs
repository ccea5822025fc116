use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::Expression;

/// A parametric family of candidate integrands on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `t^p`, `p` in `[1.01, 20]`.
    Power,
    /// `t^p / (p (p - 1)) - s t^4 / 12`, `p` in `[1.01, 20]`, `s` in `[0, 1.25]`.
    /// `f'' = t^(p-2) - s t^2`; the witness `g` is `p = 3.5`, `s = 1`.
    PowerCombo,
    /// `sqrt((t - 1/2)^2 + eps^2)`, `eps` in `[1e-4, 1]`, searched in `log10 eps`.
    SmoothedTent,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Power, Family::PowerCombo, Family::SmoothedTent];

    pub fn id(self) -> &'static str {
        match self {
            Family::Power => "power",
            Family::PowerCombo => "power-combo",
            Family::SmoothedTent => "smoothed-tent",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Power => &["p"],
            Family::PowerCombo => &["p", "s"],
            Family::SmoothedTent => &["eps"],
        }
    }

    pub fn dims(self) -> usize {
        self.param_names().len()
    }

    /// Box the search runs in, one `(lo, hi)` per coordinate.
    pub(crate) fn search_box(self) -> &'static [(f64, f64)] {
        match self {
            Family::Power => &[(1.01, 20.0)],
            Family::PowerCombo => &[(1.01, 20.0), (0.0, 1.25)],
            Family::SmoothedTent => &[(-4.0, 0.0)],
        }
    }

    /// Search coordinates to family parameters.
    pub(crate) fn params_of(self, coords: &[f64]) -> Vec<f64> {
        match self {
            Family::SmoothedTent => vec![10f64.powf(coords[0])],
            _ => coords.to_vec(),
        }
    }

    /// The integrand for the given family parameters.
    pub fn expression(self, params: &[f64]) -> Result<Expression> {
        if params.len() != self.dims() {
            return Err(Error::InvalidArgument(format!(
                "{} takes {} parameter(s), got {}",
                self.id(),
                self.dims(),
                params.len()
            )));
        }
        let x = Expression::var;
        let c = Expression::constant;
        Ok(match self {
            Family::Power => x().powf(params[0]),
            Family::PowerCombo => {
                let (p, s) = (params[0], params[1]);
                x().powf(p) / c(p * (p - 1.0)) - c(s / 12.0) * x().powf(4.0)
            }
            Family::SmoothedTent => Expression::hyp(x() - c(0.5), c(params[0])),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{s}'")))
    }
}
