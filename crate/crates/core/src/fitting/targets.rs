use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fourier::{trig_to_exp, FourierSeries, TrigTerm};

/// A named target in trigonometric form with its default sampling box.
#[derive(Clone, Debug, PartialEq)]
pub struct BuiltinTarget {
    pub name: &'static str,
    pub dim: usize,
    pub terms: Vec<TrigTerm>,
    pub ranges: Vec<(f64, f64)>,
}

impl BuiltinTarget {
    pub fn series(&self) -> Result<FourierSeries> {
        trig_to_exp(self.dim, &self.terms)
    }
}

pub const BUILTIN_NAMES: [&str; 3] = ["fig4", "fig5", "fig_a7"];

pub fn builtin_target(name: &str) -> Result<BuiltinTarget> {
    let t = match name {
        "fig4" => BuiltinTarget {
            name: "fig4",
            dim: 2,
            terms: vec![
                TrigTerm::constant(-0.02),
                TrigTerm::cos(0.04, vec![2.0, 1.0]),
                TrigTerm::sin(0.25, vec![1.0, 0.0]),
                TrigTerm::cos(-0.3, vec![0.0, 2.0]),
                TrigTerm::sin(-0.1, vec![1.0, -1.0]),
            ],
            ranges: vec![(-PI, PI); 2],
        },
        // the half frequencies need the full 4π period to be identifiable
        "fig5" => BuiltinTarget {
            name: "fig5",
            dim: 1,
            terms: vec![
                TrigTerm::constant(0.2),
                TrigTerm::cos(0.2, vec![0.5]),
                TrigTerm::sin(0.2, vec![0.5]),
                TrigTerm::cos(0.2, vec![1.0]),
                TrigTerm::sin(0.2, vec![1.0]),
            ],
            ranges: vec![(-2.0 * PI, 2.0 * PI)],
        },
        "fig_a7" => BuiltinTarget {
            name: "fig_a7",
            dim: 2,
            terms: vec![
                TrigTerm::constant(1.0 / 12.0),
                TrigTerm::cos(1.0 / 12.0, vec![1.0, 0.0]),
                TrigTerm::cos(1.0 / 12.0, vec![0.0, 1.0]),
            ],
            ranges: vec![(-PI, PI); 2],
        },
        other => {
            return Err(Error::validation(format!(
                "unknown builtin target {other:?}; expected one of {BUILTIN_NAMES:?}"
            )))
        }
    };
    Ok(t)
}
