//! One-call access to the stages shared by the command line and the bindings.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::bandsearch::{find_bands_with, resultant_profile, Band, BandError, ResultantProfile, SweepStats};
use crate::conicfit::{glue_conic, ConicError, ConicFamily, ConicKind};
use crate::equilibria::EquilibriumError;
use crate::infinity::equator_equilibria;
use crate::exactalg::Rational;
use crate::localseries::{solve_series_offset, Axis, SeriesError, DEFAULT_ORDER};
use crate::numoracle::OracleError;
use crate::regions::{assemble_annulus, assemble_unbounded, order_nested, PBRegionReport, RegionError};
use crate::sysparse::{parse_system, ConicForm, ParseError, SystemSpec};
use crate::transversal::{certify_at, Certificate, TransversalError, Verdict};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Transversal(#[from] TransversalError),
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("the conic at a0 = {0} is not transversal")]
    NotTransversal(String),
    #[error("{0}")]
    Usage(String),
}

impl PipelineError {
    /// 1 for sound negative answers, 2 for degenerate input, 3 for usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Io { .. } | PipelineError::Parse(_) | PipelineError::Usage(_) => 3,
            PipelineError::Series(SeriesError::OrderTooSmall(_)) => 3,
            PipelineError::Band(BandError::NoBands | BandError::EmptyInterval) => 1,
            PipelineError::Oracle(_) | PipelineError::NotTransversal(_) => 1,
            _ => 2,
        }
    }
}

/// Reads and parses a system file with parameter bindings.
pub fn load_system(path: &Path, bindings: &BTreeMap<String, Rational>) -> Result<SystemSpec, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_system(&text, bindings)?)
}

/// A system together with the choices that fix its conic family.
#[derive(Clone, Debug)]
pub struct Setup {
    pub sys: SystemSpec,
    pub axis: Axis,
    pub offset: Rational,
    pub form: ConicForm,
    pub order: usize,
}

impl Setup {
    pub fn new(sys: SystemSpec, axis: Axis) -> Self {
        let form = sys.default_conic_form();
        Setup {
            sys,
            axis,
            offset: Rational::from_integer(0.into()),
            form,
            order: DEFAULT_ORDER,
        }
    }

    pub fn family(&self) -> Result<ConicFamily, PipelineError> {
        let series = solve_series_offset(&self.sys, self.axis, &self.offset, self.order)?;
        Ok(glue_conic(&series, self.form)?)
    }

    pub fn certify(&self, family: &ConicFamily, a0: &Rational) -> Result<Verdict, PipelineError> {
        Ok(certify_at(&self.sys, family, a0)?)
    }

    pub fn sweep(
        &self,
        family: &ConicFamily,
        interval: (&Rational, &Rational),
        resolution: &Rational,
    ) -> Result<(Vec<Band>, SweepStats, ResultantProfile), PipelineError> {
        if interval.0 >= interval.1 {
            return Err(BandError::EmptyInterval.into());
        }
        let profile = resultant_profile(&self.sys, family)?;
        let (bands, stats) = find_bands_with(&self.sys, family, &profile, interval, resolution)?;
        Ok((bands, stats, profile))
    }

    /// Certifies every value and fails on the first non-transversal one.
    pub fn certify_all(&self, family: &ConicFamily, a0: &[Rational]) -> Result<Vec<Certificate>, PipelineError> {
        a0.iter()
            .map(|a| match self.certify(family, a)? {
                Verdict::Certified(c) => Ok(*c),
                Verdict::Failure(_) => Err(PipelineError::NotTransversal(crate::exactalg::rational_string(a))),
            })
            .collect()
    }

    /// Builds the region bounded by one certified conic (origin inside) or two.
    /// Two ellipses give an annulus; an ellipse with an unbounded conic gives
    /// an unbounded region with the ellipse as inner boundary.
    pub fn region(&self, certs: &[Certificate]) -> Result<PBRegionReport, PipelineError> {
        let bounded = |c: &Certificate| c.conic_class == ConicKind::Ellipse;
        let rep = match certs {
            [o] => {
                let inf = equator_equilibria(&self.sys, Some(&o.conic));
                assemble_unbounded(&self.sys, None, o, &inf)?
            }
            [a, b] if bounded(a) && bounded(b) => {
                let (i, o) = order_nested(a, b);
                assemble_annulus(&self.sys, i, o)?
            }
            [a, b] => {
                let (i, o) = if bounded(a) { (a, b) } else { (b, a) };
                let inf = equator_equilibria(&self.sys, Some(&o.conic));
                assemble_unbounded(&self.sys, Some(i), o, &inf)?
            }
            _ => return Err(PipelineError::Usage("a region needs one boundary conic (origin inside) or two".into())),
        };
        Ok(rep)
    }
}
