//! Run records for the certification pipeline: an in-memory report with the
//! exact polynomials and ideals, a stable JSON encoding (schema version
//! "1"), and a human-readable rendering.
//!
//! JSON conventions: polynomials are grammar strings accepted by the parser,
//! ideals are generator arrays plus the reduced Groebner basis under a named
//! order, and all unbounded integers are decimal strings so that nothing is
//! squeezed through floating point.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::family::PointSet;
use crate::groebner::Ideal;
use crate::hilbert::HilbertPolynomial;
use crate::poly::{Polynomial, TermOrder, WeightVector};
use crate::scalar::{Field, Scalar};

/// Outcome of a certification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The saturated initial ideal is exactly the extremal multiple line.
    ExtremalLimit,
    /// The limit is the extremal part plus embedded points of this length.
    EmbeddedPoints { length: u64 },
    /// The instance is outside the certified family, with the reason.
    Rejected { reason: String },
}

impl Verdict {
    /// Process exit code contract: 0 extremal, 2 embedded, 3 rejected.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::ExtremalLimit => 0,
            Verdict::EmbeddedPoints { .. } => 2,
            Verdict::Rejected { .. } => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ExtremalLimit => write!(f, "extremal limit"),
            Verdict::EmbeddedPoints { length } => {
                write!(f, "embedded points (length {length})")
            }
            Verdict::Rejected { reason } => write!(f, "rejected: {reason}"),
        }
    }
}

/// The certified instance: the points, their field, and the weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceInfo {
    pub d: usize,
    pub field: Field,
    pub points: Vec<Scalar>,
    pub omega: WeightVector,
    pub seed: Option<u64>,
}

impl InstanceInfo {
    pub fn new(pts: &PointSet, seed: Option<u64>) -> InstanceInfo {
        InstanceInfo {
            d: pts.d(),
            field: pts.field(),
            points: pts.values().to_vec(),
            omega: pts.omega(),
            seed,
        }
    }
}

/// An ideal frozen as strings: the given generators and the reduced
/// Groebner basis under the named order (grevlex throughout).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSnapshot {
    pub label: String,
    pub order: String,
    pub generators: Vec<String>,
    pub reduced_groebner: Vec<String>,
}

impl IdealSnapshot {
    pub fn new(ideal: &Ideal, label: &str) -> IdealSnapshot {
        let gb = ideal.groebner_basis(&TermOrder::Grevlex);
        IdealSnapshot {
            label: label.to_string(),
            order: "grevlex".to_string(),
            generators: ideal.generators().iter().map(|f| f.to_string()).collect(),
            reduced_groebner: gb.elements().iter().map(|f| f.to_string()).collect(),
        }
    }
}

/// Hilbert data of the four ideals in play: numerators of the series over
/// (1-t)^4 as integer vectors, Hilbert polynomials, and the degree/genus
/// read off the saturated limit and the extremal candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertSummary {
    pub curve: HilbertPolynomial,
    pub initial: HilbertPolynomial,
    pub saturated: HilbertPolynomial,
    pub candidate: HilbertPolynomial,
    pub curve_numerator: Vec<BigInt>,
    pub initial_numerator: Vec<BigInt>,
    pub saturated_numerator: Vec<BigInt>,
    pub candidate_numerator: Vec<BigInt>,
    pub degree: Option<BigInt>,
    pub genus_limit: Option<BigInt>,
    pub genus_extremal: Option<BigInt>,
}

/// Torsion-module data: complete-intersection dimensions of K[z,w]/(F,G),
/// the total dimension deg F * deg G, and the recorded shift b = deg F - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaoSummary {
    pub checked: bool,
    pub dims: Vec<u64>,
    pub total: u64,
    pub shift_b: i64,
}

/// Everything the pipeline computed for a non-rejected instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificationDetail {
    pub distinct_sums: bool,
    pub a: Polynomial,
    pub g: Polynomial,
    pub b: Polynomial,
    pub p: Polynomial,
    pub f: Polynomial,
    pub gcd_fg: Polynomial,
    pub initial_ideal: IdealSnapshot,
    pub saturated_ideal: IdealSnapshot,
    pub extremal_candidate: IdealSnapshot,
    pub hilbert: HilbertSummary,
    pub embedded_length: u64,
    pub embedded_locus: Option<Polynomial>,
    pub rao: RaoSummary,
    pub flatness: bool,
    pub flatness_checked_through: u32,
    pub notes: Vec<String>,
}

/// The full record of one certification run.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificationReport {
    pub instance: InstanceInfo,
    pub verdict: Verdict,
    /// Absent only when the instance was rejected before any computation.
    pub detail: Option<CertificationDetail>,
}

impl CertificationReport {
    /// A report for input that never reached the pipeline (bad point sets,
    /// excluded characteristic).
    pub fn rejected_input(
        points: Vec<Scalar>,
        field: Field,
        reason: String,
    ) -> CertificationReport {
        let d = points.len();
        CertificationReport {
            instance: InstanceInfo {
                d,
                field,
                points,
                omega: WeightVector::new([d as u64, 2, 1, 1]).expect("weights are not all zero"),
                seed: None,
            },
            verdict: Verdict::Rejected { reason },
            detail: None,
        }
    }

    /// Cross-field consistency: the verdict must agree with the detail.
    pub fn verdict_invariant_holds(&self) -> bool {
        match (&self.verdict, &self.detail) {
            (Verdict::Rejected { .. }, _) => true,
            (_, None) => false,
            (Verdict::ExtremalLimit, Some(d)) => d.embedded_length == 0,
            (Verdict::EmbeddedPoints { length }, Some(d)) => d.embedded_length == *length,
        }
    }

    pub fn to_dto(&self) -> ReportDto {
        ReportDto::from_report(self)
    }

    /// Stable, pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_dto()).expect("report serialization is total");
        s.push('\n');
        s
    }
}

fn field_string(field: Field) -> String {
    field.to_string()
}

/// Accepts both the display form ("Q", "F_101") and the CLI flag form
/// ("q", "p=101").
pub fn parse_field(s: &str) -> Option<Field> {
    match s {
        "Q" | "q" => Some(Field::Q),
        _ => {
            let rest = s.strip_prefix("F_").or_else(|| s.strip_prefix("p="))?;
            rest.parse::<u64>().ok().and_then(|p| Field::fp(p).ok())
        }
    }
}

// The JSON layer. Field order here is the field order in the output, so it
// is part of the determinism contract; append, do not reorder.

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDto {
    pub d: u32,
    pub field: String,
    pub points: Vec<String>,
    pub omega: [u64; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictDto {
    ExtremalLimit,
    EmbeddedPoints { length: u64 },
    Rejected { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealDto {
    pub label: String,
    pub order: String,
    pub generators: Vec<String>,
    pub reduced_groebner: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialsDto {
    pub a: String,
    pub g: String,
    pub b: String,
    pub p: String,
    pub f: String,
    pub gcd_fg: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealsDto {
    pub initial: IdealDto,
    pub saturated: IdealDto,
    pub extremal_candidate: IdealDto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertDto {
    pub curve_numerator: Vec<String>,
    pub initial_numerator: Vec<String>,
    pub saturated_numerator: Vec<String>,
    pub candidate_numerator: Vec<String>,
    pub curve_polynomial: String,
    pub initial_polynomial: String,
    pub saturated_polynomial: String,
    pub candidate_polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_limit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_extremal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedDto {
    pub length: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locus: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaoDto {
    pub checked: bool,
    pub dims: Vec<u64>,
    pub total: u64,
    pub shift_b: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatnessDto {
    pub checked_through: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetailDto {
    pub distinct_sums: bool,
    pub polynomials: PolynomialsDto,
    pub ideals: IdealsDto,
    pub hilbert: HilbertDto,
    pub embedded: EmbeddedDto,
    pub rao: RaoDto,
    pub flatness: FlatnessDto,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDto {
    pub schema_version: String,
    pub instance: InstanceDto,
    pub verdict: VerdictDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<DetailDto>,
}

fn ideal_dto(s: &IdealSnapshot) -> IdealDto {
    IdealDto {
        label: s.label.clone(),
        order: s.order.clone(),
        generators: s.generators.clone(),
        reduced_groebner: s.reduced_groebner.clone(),
    }
}

fn bigints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

impl ReportDto {
    pub fn from_report(report: &CertificationReport) -> ReportDto {
        let instance = InstanceDto {
            d: report.instance.d as u32,
            field: field_string(report.instance.field),
            points: report.instance.points.iter().map(Scalar::to_string).collect(),
            omega: report.instance.omega.weights(),
            seed: report.instance.seed,
        };
        let verdict = match &report.verdict {
            Verdict::ExtremalLimit => VerdictDto::ExtremalLimit,
            Verdict::EmbeddedPoints { length } => VerdictDto::EmbeddedPoints { length: *length },
            Verdict::Rejected { reason } => VerdictDto::Rejected { reason: reason.clone() },
        };
        let detail = report.detail.as_ref().map(|d| DetailDto {
            distinct_sums: d.distinct_sums,
            polynomials: PolynomialsDto {
                a: d.a.to_string(),
                g: d.g.to_string(),
                b: d.b.to_string(),
                p: d.p.to_string(),
                f: d.f.to_string(),
                gcd_fg: d.gcd_fg.to_string(),
            },
            ideals: IdealsDto {
                initial: ideal_dto(&d.initial_ideal),
                saturated: ideal_dto(&d.saturated_ideal),
                extremal_candidate: ideal_dto(&d.extremal_candidate),
            },
            hilbert: HilbertDto {
                curve_numerator: bigints(&d.hilbert.curve_numerator),
                initial_numerator: bigints(&d.hilbert.initial_numerator),
                saturated_numerator: bigints(&d.hilbert.saturated_numerator),
                candidate_numerator: bigints(&d.hilbert.candidate_numerator),
                curve_polynomial: d.hilbert.curve.to_string(),
                initial_polynomial: d.hilbert.initial.to_string(),
                saturated_polynomial: d.hilbert.saturated.to_string(),
                candidate_polynomial: d.hilbert.candidate.to_string(),
                degree: d.hilbert.degree.as_ref().map(BigInt::to_string),
                genus_limit: d.hilbert.genus_limit.as_ref().map(BigInt::to_string),
                genus_extremal: d.hilbert.genus_extremal.as_ref().map(BigInt::to_string),
            },
            embedded: EmbeddedDto {
                length: d.embedded_length,
                locus: d.embedded_locus.as_ref().map(Polynomial::to_string),
            },
            rao: RaoDto {
                checked: d.rao.checked,
                dims: d.rao.dims.clone(),
                total: d.rao.total,
                shift_b: d.rao.shift_b,
            },
            flatness: FlatnessDto {
                checked_through: d.flatness_checked_through,
                holds: d.flatness,
            },
            notes: d.notes.clone(),
        });
        ReportDto {
            schema_version: "1".to_string(),
            instance,
            verdict,
            detail,
        }
    }

    pub fn from_json(s: &str) -> Result<ReportDto, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dto serialization is total");
        s.push('\n');
        s
    }
}

impl fmt::Display for CertificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance: d = {} over {}", self.instance.d, self.instance.field)?;
        write!(f, "points:   (")?;
        for (i, p) in self.instance.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        writeln!(f, ")")?;
        writeln!(f, "omega:    {}", self.instance.omega)?;
        if let Some(seed) = self.instance.seed {
            writeln!(f, "seed:     {seed}")?;
        }
        writeln!(f, "verdict:  {}", self.verdict)?;
        let Some(d) = &self.detail else {
            return Ok(());
        };
        writeln!(f)?;
        writeln!(
            f,
            "pairwise sums distinct: {}",
            if d.distinct_sums { "yes" } else { "no" }
        )?;
        writeln!(f, "A = {}", d.a)?;
        writeln!(f, "G = {}", d.g)?;
        writeln!(f, "B = {}", d.b)?;
        writeln!(f, "P = {}", d.p)?;
        writeln!(f, "F = {}", d.f)?;
        writeln!(f, "gcd(F, G) = {}", d.gcd_fg)?;
        for snap in [&d.initial_ideal, &d.saturated_ideal, &d.extremal_candidate] {
            writeln!(f, "{} ideal (reduced basis, {}):", snap.label, snap.order)?;
            for g in &snap.reduced_groebner {
                writeln!(f, "  {g}")?;
            }
        }
        writeln!(f, "hilbert polynomials:")?;
        writeln!(f, "  curve:     {}", d.hilbert.curve)?;
        writeln!(f, "  initial:   {}", d.hilbert.initial)?;
        writeln!(f, "  saturated: {}", d.hilbert.saturated)?;
        writeln!(f, "  candidate: {}", d.hilbert.candidate)?;
        if let (Some(deg), Some(genus)) = (&d.hilbert.degree, &d.hilbert.genus_limit) {
            writeln!(f, "limit curve: degree {deg}, arithmetic genus {genus}")?;
        }
        if let Some(genus) = &d.hilbert.genus_extremal {
            writeln!(f, "extremal part genus: {genus}")?;
        }
        match &d.embedded_locus {
            Some(locus) => writeln!(
                f,
                "embedded points: length {} on {locus} = 0",
                d.embedded_length
            )?,
            None => writeln!(f, "embedded points: length {}", d.embedded_length)?,
        }
        writeln!(
            f,
            "torsion module: dims {:?}, total {}, shift b = {}, quotient check {}",
            d.rao.dims,
            d.rao.total,
            d.rao.shift_b,
            if d.rao.checked { "ok" } else { "FAILED" }
        )?;
        writeln!(
            f,
            "flatness: graded dimensions {} through degree {}",
            if d.flatness { "agree" } else { "DISAGREE" },
            d.flatness_checked_through
        )?;
        if !d.notes.is_empty() {
            writeln!(f, "notes:")?;
            for note in &d.notes {
                writeln!(f, "  - {note}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{certify, certify_with, CertifyOptions, PointSet};

    fn instance(vals: &[i64]) -> CertificationReport {
        let pts = PointSet::from_integers(vals, Field::Q).unwrap();
        certify(&pts).unwrap()
    }

    #[test]
    fn json_round_trips() {
        for vals in [vec![0, 1, 3], vec![0, 1, 2, 3]] {
            let report = instance(&vals);
            let dto = report.to_dto();
            let parsed = ReportDto::from_json(&dto.to_json()).unwrap();
            assert_eq!(parsed, dto);
            assert_eq!(parsed.to_json(), report.to_json());
        }
    }

    #[test]
    fn json_shape_is_stable() {
        let report = instance(&[0, 1, 3]);
        let json = report.to_json();
        assert!(json.starts_with("{\n  \"schema_version\": \"1\""));
        assert!(json.contains("\"kind\": \"extremal-limit\""));
        assert!(json.contains("\"reduced_groebner\""));
        assert!(json.ends_with("}\n"));
    }

    #[test]
    fn seed_is_recorded() {
        let pts = PointSet::from_integers(&[0, 1, 3], Field::Q).unwrap();
        let opts = CertifyOptions { seed: Some(7), ..CertifyOptions::default() };
        let report = certify_with(&pts, &opts).unwrap();
        assert_eq!(report.instance.seed, Some(7));
        assert!(report.to_json().contains("\"seed\": 7"));
        assert!(report.to_string().contains("seed:     7"));
    }

    #[test]
    fn rejection_serializes_without_detail() {
        let pts = PointSet::from_integers(&[0, 1], Field::Fp(2)).unwrap();
        let report = certify(&pts).unwrap();
        assert!(report.detail.is_none());
        let json = report.to_json();
        assert!(json.contains("\"kind\": \"rejected\""));
        assert!(!json.contains("\"detail\""));
        let parsed = ReportDto::from_json(&json).unwrap();
        assert_eq!(parsed, report.to_dto());
    }

    #[test]
    fn field_strings_round_trip() {
        for field in [Field::Q, Field::Fp(101)] {
            assert_eq!(parse_field(&field_string(field)), Some(field));
        }
        assert_eq!(parse_field("p=7"), Some(Field::Fp(7)));
        assert_eq!(parse_field("q"), Some(Field::Q));
        assert_eq!(parse_field("banana"), None);
    }

    #[test]
    fn human_rendering_mentions_the_essentials() {
        let report = instance(&[0, 1, 2, 3]);
        let text = report.to_string();
        assert!(text.contains("verdict:  embedded points (length 1)"));
        assert!(text.contains("gcd(F, G) = 3*z + w"));
        assert!(text.contains("saturated ideal (reduced basis, grevlex):"));
        assert!(text.contains("extremal part genus: -2"));
    }

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(Verdict::ExtremalLimit.exit_code(), 0);
        assert_eq!(Verdict::EmbeddedPoints { length: 1 }.exit_code(), 2);
        assert_eq!(Verdict::Rejected { reason: "x".into() }.exit_code(), 3);
    }
}
