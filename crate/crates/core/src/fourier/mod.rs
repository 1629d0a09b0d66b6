//! Frequency spectra, degeneracy counting, the sparse series type, coefficient
//! extraction and the degrees-of-freedom audit.

mod audit;
mod extract;
mod series;
mod spectrum;

pub use audit::{audit, crossover_degree, family_param_count, AuditReport, AuditRow, Crossover};
pub use extract::{
    extract_analytic, extract_sampling, noncommuting_spectrum, noncommuting_spectrum_check,
    NoncommutingReport, NoncommutingSample, ANALYTIC_TERM_LIMIT, OUT_OF_MODEL_THRESHOLD,
};
pub use series::{
    trig_to_exp, FourierSeries, FrequencyUnit, SeriesDocument, TermDocument, TrigKind, TrigTerm,
    COEFFICIENT_FLOOR,
};
pub use spectrum::{degeneracy, degeneracy_multi, dof, model_degree, num_coefficients, spectrum};

/// Real value of the series at `x`.
pub fn evaluate_series(series: &FourierSeries, x: &[f64]) -> crate::Result<f64> {
    series.evaluate(x)
}
