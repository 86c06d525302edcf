//! The JSON analysis report: input, cycles, invariants, genericity, the
//! admissible cohomology profiles and diagnostics.

use serde::{Serialize, Serializer};

use crate::classify::{classify, degree_labels, ClassifyInput, CohomologyProfile};
use crate::components::{Branches, CurveComponent, SplitConfig, SplitDiagnostics, SplitError};
use crate::ideal::IdealBasis;
use crate::le::{analyze, GenericityReport, Interval, LeAnalysis, LeError};
use crate::poly::{parse_polynomial, PolyError};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// What a report says about its input. Each status maps to one exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Valid,
    NotGeneric,
    DimNotOne,
    Smooth,
    Constant,
    ImproperIntersection,
    SplitIncomplete,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Valid => 0,
            Status::NotGeneric => 2,
            Status::DimNotOne | Status::Smooth | Status::Constant | Status::ImproperIntersection => 3,
            Status::SplitIncomplete => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Valid => "VALID",
            Status::NotGeneric => "NOT_GENERIC",
            Status::DimNotOne => "DIM_NOT_ONE",
            Status::Smooth => "SMOOTH",
            Status::Constant => "CONSTANT",
            Status::ImproperIntersection => "IMPROPER_INTERSECTION",
            Status::SplitIncomplete => "SPLIT_INCOMPLETE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputSection {
    pub text: String,
    /// The parsed polynomial, printed back.
    pub polynomial: String,
    pub variables: Vec<String>,
    /// Always the first variable.
    pub distinguished: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub generators: Vec<String>,
    /// Multiplicity in the cycle.
    pub length: u64,
    pub mult_origin: u64,
    pub branches: Branches,
    /// Intersection number with the polar hypersurface (polar components)
    /// or with the hyperplane (Lê components).
    pub meet: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclesSection {
    pub polar: Vec<ComponentReport>,
    pub le: Vec<ComponentReport>,
}

fn unavailable<S: Serializer>(m: &Option<u64>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(v) => s.serialize_u64(*v),
        None => s.serialize_str("UNAVAILABLE"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsSection {
    pub lambda0: u64,
    pub lambda1: u64,
    #[serde(serialize_with = "unavailable")]
    pub m: Option<u64>,
    pub r: Interval,
    /// Transversal Milnor number of each Lê component.
    pub mu: Vec<u64>,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeLabels {
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub seed: u64,
    pub trials: u32,
    pub max_factor_degree: u32,
    /// Components of the partial Jacobian scheme away from the origin.
    pub discarded: Vec<Vec<String>>,
    /// Pieces the splitter could not decompose.
    pub residual: Vec<Vec<String>>,
    pub message: Option<String>,
    pub annotations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub input: InputSection,
    pub status: Status,
    pub cycles: Option<CyclesSection>,
    pub invariants: Option<InvariantsSection>,
    pub genericity: Option<GenericityReport>,
    pub degree_labels: DegreeLabels,
    pub profiles: Vec<CohomologyProfile>,
    pub diagnostics: Diagnostics,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "input: {} in ({}), distinguished {}\nstatus: {}\n",
            self.input.polynomial,
            self.input.variables.join(","),
            self.input.distinguished,
            self.status.as_str()
        );
        if let Some(c) = &self.cycles {
            for (name, list) in [("polar curve", &c.polar), ("Lê cycle", &c.le)] {
                out += &format!("{name}:\n");
                if list.is_empty() {
                    out += "  (empty)\n";
                }
                for k in list {
                    out += &format!(
                        "  {} * V({})  mult_0 = {}, meet = {}\n",
                        k.length,
                        k.generators.join(", "),
                        k.mult_origin,
                        k.meet
                    );
                }
            }
        }
        if let Some(i) = &self.invariants {
            let m = i.m.map_or("UNAVAILABLE".to_string(), |m| m.to_string());
            let r = match i.r.as_exact() {
                Some(r) => r.to_string(),
                None => format!("{}..{}", i.r.lo, i.r.hi),
            };
            out += &format!(
                "lambda0 = {}, lambda1 = {}, m = {m}, r = {r}, mu = {:?}, n = {}\n",
                i.lambda0, i.lambda1, i.mu, i.n
            );
        }
        if !self.profiles.is_empty() {
            out += &profiles_text(&self.profiles, &self.degree_labels);
        }
        if let Some(msg) = &self.diagnostics.message {
            out += &format!("note: {msg}\n");
        }
        for a in &self.diagnostics.annotations {
            out += &format!("note: {a}\n");
        }
        out
    }
}

/// One line per profile.
pub fn profiles_text(profiles: &[CohomologyProfile], labels: &DegreeLabels) -> String {
    let mut out = String::from("profiles:\n");
    for p in profiles {
        out += &format!(
            "  {} rank {}, {} free rank {}, torsion {}{}  [{}]\n",
            labels.lower,
            p.b_nm1,
            labels.upper,
            p.b_n,
            p.torsion,
            if p.open_example { ", no known example" } else { "" },
            p.source.join(", ")
        );
        for n in &p.notes {
            out += &format!("    {n}\n");
        }
    }
    out
}

pub fn labels_for(n: Option<usize>) -> DegreeLabels {
    let (lower, upper) = match n {
        Some(n) => degree_labels(n),
        None => ("H^{n-1}".to_string(), "H^n".to_string()),
    };
    DegreeLabels { lower, upper }
}

fn strings(basis: &IdealBasis) -> Vec<String> {
    basis.generators().iter().map(ToString::to_string).collect()
}

fn component(c: &CurveComponent, meet: u64) -> ComponentReport {
    ComponentReport {
        generators: strings(&c.prime),
        length: c.length,
        mult_origin: c.mult_origin,
        branches: c.branches,
        meet,
    }
}

fn diagnostics(config: &SplitConfig, split: Option<&SplitDiagnostics>) -> Diagnostics {
    Diagnostics {
        seed: config.seed,
        trials: config.trials,
        max_factor_degree: config.max_factor_degree,
        discarded: split.map_or_else(Vec::new, |d| d.discarded.iter().map(strings).collect()),
        residual: split.map_or_else(Vec::new, |d| d.residual.iter().map(strings).collect()),
        message: None,
        annotations: Vec::new(),
    }
}

fn from_analysis(input: InputSection, a: &LeAnalysis, config: &SplitConfig) -> AnalysisReport {
    let cycles = CyclesSection {
        polar: a.gamma1.iter().map(|p| component(&p.component, p.polar_meet)).collect(),
        le: a
            .lambda1_cycle
            .iter()
            .map(|l| component(&l.component, l.hyperplane_meet))
            .collect(),
    };
    let invariants = InvariantsSection {
        lambda0: a.lambda0,
        lambda1: a.lambda1,
        m: a.m,
        r: a.r,
        mu: a.mu(),
        n: a.n,
    };
    let mut diag = diagnostics(config, Some(&a.diagnostics));
    let (status, profiles) = if a.is_valid() {
        match classify(&ClassifyInput::from_analysis(a)) {
            Ok(ps) => (Status::Valid, ps),
            Err(e) => {
                diag.message = Some(e.to_string());
                (Status::Valid, Vec::new())
            }
        }
    } else {
        diag.message = Some("a Lê component does not meet the hyperplane in its multiplicity".into());
        (Status::NotGeneric, Vec::new())
    };
    if a.lambda0 > 0 && a.trace_bound_holds() == Some(false) {
        diag.annotations.push("m - 1 exceeds lambda0".into());
    }
    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input,
        status,
        cycles: Some(cycles),
        invariants: Some(invariants),
        genericity: Some(a.genericity.clone()),
        degree_labels: labels_for(Some(a.n)),
        profiles,
        diagnostics: diag,
    }
}

fn from_error(input: InputSection, e: &LeError, config: &SplitConfig, n: usize) -> AnalysisReport {
    let mut genericity = None;
    let mut split = None;
    let status = match e {
        LeError::NotGeneric { genericity: g, .. } => {
            genericity = Some(g.clone());
            Status::NotGeneric
        }
        LeError::DimNotOne(_) => Status::DimNotOne,
        LeError::Smooth => Status::Smooth,
        LeError::Constant => Status::Constant,
        LeError::ImproperIntersection => Status::ImproperIntersection,
        LeError::Split(SplitError::SplitIncomplete(d)) => {
            split = Some(d.diagnostics.clone());
            Status::SplitIncomplete
        }
        LeError::Split(_) | LeError::Ideal(_) | LeError::TooFewVariables(_) => Status::SplitIncomplete,
    };
    let mut diag = diagnostics(config, split.as_ref());
    diag.message = Some(e.to_string());
    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input,
        status,
        cycles: None,
        invariants: None,
        genericity,
        degree_labels: labels_for(Some(n)),
        profiles: Vec::new(),
        diagnostics: diag,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Parse(#[from] PolyError),
    #[error("need at least 3 variables, got {0}")]
    TooFewVariables(usize),
}

/// Parse, analyze and classify. Errors are only for unusable input; every
/// analysis outcome is a report.
pub fn build_report<S: AsRef<str>>(
    text: &str,
    variables: &[S],
    config: &SplitConfig,
) -> Result<AnalysisReport, ReportError> {
    if variables.len() < 3 {
        return Err(ReportError::TooFewVariables(variables.len()));
    }
    let f = parse_polynomial(text, variables)?;
    let vars: Vec<String> = variables.iter().map(|v| v.as_ref().trim().to_string()).collect();
    let input = InputSection {
        text: text.to_string(),
        polynomial: f.to_string(),
        distinguished: vars[0].clone(),
        variables: vars,
    };
    Ok(match analyze(&f, config) {
        Ok(a) => from_analysis(input, &a, config),
        Err(e) => from_error(input, &e, config, f.nvars() - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unavailable_multiplicity_is_a_string() {
        let inv = InvariantsSection {
            lambda0: 1,
            lambda1: 2,
            m: None,
            r: Interval { lo: 1, hi: 2 },
            mu: vec![1],
            n: 2,
        };
        let v = serde_json::to_value(&inv).unwrap();
        assert_eq!(v["m"], "UNAVAILABLE");
        assert_eq!(v["r"]["hi"], 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Valid.exit_code(), 0);
        assert_eq!(Status::NotGeneric.exit_code(), 2);
        assert_eq!(Status::DimNotOne.exit_code(), 3);
        assert_eq!(Status::SplitIncomplete.exit_code(), 1);
    }

    #[test]
    fn isolated_singularity_is_out_of_scope() {
        let r = build_report("z0^2+z1^2+z2^2", &["z0", "z1", "z2"], &SplitConfig::default()).unwrap();
        assert_eq!(r.status, Status::DimNotOne);
        assert!(r.invariants.is_none());
    }

    #[test]
    fn short_variable_lists_are_rejected() {
        assert!(matches!(
            build_report("x^2", &["x", "y"], &SplitConfig::default()),
            Err(ReportError::TooFewVariables(2))
        ));
        assert!(matches!(
            build_report("x^2 + w", &["x", "y", "z"], &SplitConfig::default()),
            Err(ReportError::Parse(_))
        ));
    }
}
