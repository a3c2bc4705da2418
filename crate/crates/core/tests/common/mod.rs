#![allow(dead_code)]

pub mod families;

use std::collections::BTreeMap;
use std::path::PathBuf;

use pbconic::conicfit::ConicFamily;
use pbconic::exactalg::Rational;
use pbconic::localseries::Axis;
use pbconic::pipeline::{load_system, Setup};
use pbconic::sysparse::{parse_binding, parse_rational, SystemSpec};
use pbconic::transversal::{Certificate, Verdict};

pub fn systems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

pub fn q(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

/// Loads `systems/<name>.sys` with `name=value` bindings.
pub fn load(name: &str, bindings: &[&str]) -> SystemSpec {
    let b: BTreeMap<String, Rational> = bindings.iter().map(|s| parse_binding(s).unwrap()).collect();
    load_system(&systems_dir().join(format!("{name}.sys")), &b).unwrap()
}

pub fn setup(name: &str, bindings: &[&str], axis: Axis) -> (Setup, ConicFamily) {
    let s = Setup::new(load(name, bindings), axis);
    let fam = s.family().unwrap();
    (s, fam)
}

pub fn verdict(s: &Setup, fam: &ConicFamily, a0: &str) -> Verdict {
    s.certify(fam, &q(a0)).unwrap()
}

pub fn certificate(s: &Setup, fam: &ConicFamily, a0: &str) -> Certificate {
    match verdict(s, fam, a0) {
        Verdict::Certified(c) => *c,
        Verdict::Failure(w) => panic!("{a0} not certified: witness at m = {}", w.root.to_f64()),
    }
}

/// One group of the certification corpus: system, binding, axis and values.
pub struct CorpusGroup {
    pub label: &'static str,
    pub system: &'static str,
    pub binding: Option<&'static str>,
    pub axis: Axis,
    pub values: &'static [&'static str],
}

pub const CORPUS: &[CorpusGroup] = &[
    CorpusGroup { label: "quadratic d=1/10", system: "quad", binding: Some("d=1/10"), axis: Axis::YAxis, values: &["-1/11", "-613/2000"] },
    CorpusGroup { label: "quadratic d=9/10", system: "quad", binding: Some("d=9/10"), axis: Axis::YAxis, values: &["-9/19", "-1646850590977/3435973836800"] },
    CorpusGroup { label: "van der Pol e=1/10", system: "vdp", binding: Some("e=1/10"), axis: Axis::XAxis, values: &["39/10"] },
    CorpusGroup { label: "van der Pol e=1", system: "vdp", binding: Some("e=1"), axis: Axis::XAxis, values: &["2007/1000", "9/2"] },
    CorpusGroup { label: "van der Pol e=3/500", system: "vdp", binding: Some("e=3/500"), axis: Axis::XAxis, values: &["10"] },
    CorpusGroup { label: "Rychkov d=-1", system: "rychkov", binding: Some("d=-1"), axis: Axis::XAxis, values: &["159/125", "646747/500000"] },
    CorpusGroup { label: "Rychkov d=1/10", system: "rychkov", binding: Some("d=1/10"), axis: Axis::XAxis, values: &["67/200", "937/1000", "1081/1000"] },
    CorpusGroup { label: "Rychkov d=15/100", system: "rychkov", binding: Some("d=15/100"), axis: Axis::XAxis, values: &["2143/5000", "22097/25000", "10687/10000"] },
    CorpusGroup { label: "Rychkov d=18/100", system: "rychkov", binding: Some("d=18/100"), axis: Axis::XAxis, values: &["1213/2500", "80337/100000", "26529/25000"] },
    CorpusGroup { label: "cubic d=-2", system: "cubic", binding: Some("d=-2"), axis: Axis::YAxis, values: &["1"] },
    CorpusGroup { label: "quintic b=1/2", system: "quintic", binding: Some("b=1/2"), axis: Axis::YAxis, values: &["2239/5000", "51/25"] },
    CorpusGroup { label: "quintic b=65349/100000", system: "quintic", binding: Some("b=65349/100000"), axis: Axis::YAxis, values: &["107/200", "859/500"] },
    CorpusGroup { label: "two-cycle quintic", system: "quintic2", binding: None, axis: Axis::XAxis, values: &["1015/1000", "10189/10000", "196531/100000", "196665/100000"] },
];

/// The one corpus value whose conic is refuted exactly (see the README).
pub const REFUTED: (&str, &str) = ("quintic2", "10189/10000");

impl CorpusGroup {
    pub fn setup(&self) -> (Setup, ConicFamily) {
        let b: Vec<&str> = self.binding.into_iter().collect();
        setup(self.system, &b, self.axis)
    }
}
