//! File formats: polynomial JSON, Chow point JSON, decomposition witness
//! JSON, bound report JSON, scan report JSON, and the scan CSV.
//!
//! Integer coefficients travel as arbitrary-precision decimal strings;
//! field elements as little-endian digit vectors of their residue
//! polynomial; real-valued report entries as decimal strings with 15
//! significant digits. Term order inside files is not significant: the
//! parser re-sorts (duplicate exponent matrices are summed).

use crate::harness::{Decomposes, PrimeRow, ScanReport, Verdict};
use crate::{HarnessError, HResult};
use chowbez_core::chowforms::{ChowPoint, Provenance};
use chowbez_core::combinat::{BoundReport, HeightInput};
use chowbez_core::exactnum::{BigInt, BigRat, FieldElem, FiniteField};
use chowbez_core::modfactor::DecompositionWitness;
use chowbez_core::multipoly::{MHPoly, Shape};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

// ---------------------------------------------------------------------------
// polynomial files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermFile {
    /// Arbitrary-precision decimal string.
    pub coeff: String,
    /// One row of exponents per block.
    pub exps: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyFile {
    pub r: usize,
    pub s: usize,
    pub multidegree: Vec<u32>,
    pub terms: Vec<TermFile>,
}

impl PolyFile {
    pub fn from_poly(poly: &MHPoly<BigInt>) -> HResult<PolyFile> {
        let md = poly.multidegree().ok_or_else(|| {
            HarnessError::Input(String::from(
                "only nonzero multihomogeneous polynomials serialize to files",
            ))
        })?;
        let shape = poly.shape();
        let terms = poly
            .terms()
            .map(|(m, c)| TermFile {
                coeff: c.to_string(),
                exps: m
                    .flat()
                    .chunks(shape.block_vars())
                    .map(|row| row.to_vec())
                    .collect(),
            })
            .collect();
        Ok(PolyFile {
            r: shape.r(),
            s: shape.s(),
            multidegree: md,
            terms,
        })
    }

    pub fn to_poly(&self) -> HResult<MHPoly<BigInt>> {
        let shape = Shape::new(self.r, self.s);
        let mut poly = MHPoly::zero(shape);
        for term in &self.terms {
            let coeff = parse_bigint(&term.coeff)?;
            let rows: Vec<&[u32]> = term.exps.iter().map(|r| r.as_slice()).collect();
            poly = poly
                .with_term(coeff, &rows)
                .map_err(HarnessError::Core)?;
        }
        poly.check_multidegree(&self.multidegree)
            .map_err(HarnessError::Core)?;
        Ok(poly)
    }
}

pub fn parse_bigint(s: &str) -> HResult<BigInt> {
    BigInt::from_str(s.trim())
        .map_err(|e| HarnessError::Input(format!("bad integer {s:?}: {e}")))
}

/// Decimal string (optionally with fraction and exponent) to an exact
/// rational, e.g. `-2.71`, `1.2e3`.
pub fn parse_decimal(s: &str) -> HResult<BigRat> {
    let s = s.trim();
    let bad = || HarnessError::Input(format!("bad decimal {s:?}"));
    let (mantissa, exp10) = match s.to_ascii_lowercase().split_once('e') {
        Some((m, e)) => (
            m.to_string(),
            i64::from_str(e).map_err(|_| bad())?,
        ),
        None => (s.to_string(), 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i.to_string(), f.to_string()),
        None => (mantissa, String::new()),
    };
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let value = BigInt::from_str(&digits).map_err(|_| bad())?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRat::from(value * ten.pow(shift as u32))
    } else {
        BigRat::new(value, ten.pow((-shift) as u32))
    })
}

/// Exact decimal rendering of a rational whose reduced denominator is
/// supported by base ten (all report rationals have denominator 1 or 2).
pub fn rational_to_decimal(r: &BigRat) -> String {
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    // scale the denominator to a power of ten
    let mut den = r.denom().clone();
    let mut pow10 = 0u32;
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut num = r.numer().clone();
    loop {
        if den.is_one() {
            break;
        }
        if (&den % &two).is_zero() {
            den /= &two;
            num *= &five;
        } else if (&den % &five).is_zero() {
            den /= &five;
            num *= &two;
        } else {
            // fall back to the exact fraction
            return format!("{}/{}", r.numer(), r.denom());
        }
        pow10 += 1;
    }
    let sign = if num.is_negative() { "-" } else { "" };
    let digits = num.abs().to_string();
    if digits.len() as u32 <= pow10 {
        let pad = "0".repeat((pow10 as usize) - digits.len());
        format!("{sign}0.{pad}{digits}")
    } else {
        let split = digits.len() - pow10 as usize;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

// ---------------------------------------------------------------------------
// Chow point files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChowFile {
    pub r: usize,
    pub s: usize,
    pub multidegree: Vec<u32>,
    pub terms: Vec<TermFile>,
    pub d: u32,
    pub provenance: String,
}

impl ChowFile {
    pub fn from_chow(chow: &ChowPoint) -> HResult<ChowFile> {
        let poly = PolyFile::from_poly(&chow.to_poly())?;
        Ok(ChowFile {
            r: poly.r,
            s: poly.s,
            multidegree: poly.multidegree,
            terms: poly.terms,
            d: chow.degree(),
            provenance: match chow.provenance() {
                Provenance::PlaneCurve => "plane-curve",
                Provenance::ZeroCycle => "zero-cycle",
                Provenance::External => "external",
            }
            .to_string(),
        })
    }

    pub fn to_chow(&self) -> HResult<ChowPoint> {
        let poly = PolyFile {
            r: self.r,
            s: self.s,
            multidegree: self.multidegree.clone(),
            terms: self.terms.clone(),
        }
        .to_poly()?;
        let vector = poly.to_coeff_vector().map_err(HarnessError::Core)?;
        let provenance = match self.provenance.as_str() {
            "plane-curve" => Provenance::PlaneCurve,
            "zero-cycle" => Provenance::ZeroCycle,
            _ => Provenance::External,
        };
        ChowPoint::from_vector(vector, provenance).map_err(HarnessError::Core)
    }
}

/// Input file for a zero-cycle: ascending coefficients of the squarefree
/// `f` and the optional deflection `h`, as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroCycleFile {
    pub f: Vec<String>,
    #[serde(default)]
    pub h: Vec<String>,
}

impl ZeroCycleFile {
    pub fn coefficients(&self) -> HResult<(Vec<BigInt>, Vec<BigInt>)> {
        let f = self.f.iter().map(|s| parse_bigint(s)).collect::<HResult<_>>()?;
        let h = self.h.iter().map(|s| parse_bigint(s)).collect::<HResult<_>>()?;
        Ok((f, h))
    }
}

// ---------------------------------------------------------------------------
// witnesses
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldTermFile {
    /// Little-endian digits of the coefficient's residue polynomial.
    pub coeff: Vec<u64>,
    pub exps: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    pub p: u64,
    pub k: usize,
    /// Ascending coefficients of the monic field modulus, length `k + 1`.
    pub modulus: Vec<u64>,
    #[serde(rename = "G")]
    pub g: Vec<FieldTermFile>,
    #[serde(rename = "H")]
    pub h: Vec<FieldTermFile>,
    pub scalar: Vec<u64>,
}

fn field_poly_terms(poly: &MHPoly<FieldElem>) -> Vec<FieldTermFile> {
    let shape = poly.shape();
    poly.terms()
        .map(|(m, c)| FieldTermFile {
            coeff: c.digits().to_vec(),
            exps: m
                .flat()
                .chunks(shape.block_vars())
                .map(|row| row.to_vec())
                .collect(),
        })
        .collect()
}

impl WitnessFile {
    pub fn from_witness(w: &DecompositionWitness) -> WitnessFile {
        WitnessFile {
            p: w.prime,
            k: w.extension_degree,
            modulus: w.field.modulus().to_vec(),
            g: field_poly_terms(&w.g),
            h: field_poly_terms(&w.h),
            scalar: w.scalar.digits().to_vec(),
        }
    }

    /// Rebuild the witness polynomials over the recorded field; the field
    /// is reconstructed and its modulus must match (the construction is
    /// deterministic).
    pub fn to_witness(&self) -> HResult<DecompositionWitness> {
        let field = FiniteField::construct(self.p, self.k)?;
        if field.modulus() != self.modulus.as_slice() {
            return Err(HarnessError::Input(format!(
                "modulus mismatch for F_{{{}^{}}}: file has {:?}",
                self.p, self.k, self.modulus
            )));
        }
        let restore = |terms: &[FieldTermFile]| -> HResult<MHPoly<FieldElem>> {
            let mut poly = MHPoly::zero(Shape::new(0, 2));
            for t in terms {
                let coeff = field.elem(&t.coeff).map_err(HarnessError::Core)?;
                let rows: Vec<&[u32]> = t.exps.iter().map(|r| r.as_slice()).collect();
                poly = poly.with_term(coeff, &rows).map_err(HarnessError::Core)?;
            }
            Ok(poly)
        };
        Ok(DecompositionWitness {
            prime: self.p,
            extension_degree: self.k,
            g: restore(&self.g)?,
            h: restore(&self.h)?,
            scalar: field.elem(&self.scalar).map_err(HarnessError::Core)?,
            field,
        })
    }
}

// ---------------------------------------------------------------------------
// bound reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReportFile {
    pub s: u32,
    pub d: u32,
    pub r: u32,
    pub n: u32,
    pub n_n: String,
    pub n_dn: String,
    pub n_d: String,
    /// Exact degree of the decomposable locus.
    pub deg_w: String,
    /// `"chow-point"` or `"cycle"`.
    pub height_input: String,
    pub h_input: String,
    pub offset: String,
    pub h_used: String,
    pub height_term: String,
    pub hw_bound: String,
    pub log2_term: String,
    pub total: String,
}

const REPORT_DIGITS: usize = 15;

impl BoundReportFile {
    pub fn from_report(report: &BoundReport) -> BoundReportFile {
        BoundReportFile {
            s: report.params.s,
            d: report.params.d,
            r: report.params.r,
            n: report.params.n,
            n_n: report.n_n.to_string(),
            n_dn: report.n_dn.to_string(),
            n_d: report.n_d.to_string(),
            deg_w: rational_to_decimal(&report.deg_w),
            height_input: match report.height_input {
                HeightInput::ChowPoint => "chow-point",
                HeightInput::Cycle => "cycle",
            }
            .to_string(),
            h_input: report.h_input.to_decimal(REPORT_DIGITS),
            offset: report.offset.to_decimal(REPORT_DIGITS),
            h_used: report.h_used.to_decimal(REPORT_DIGITS),
            height_term: report.height_term.to_decimal(REPORT_DIGITS),
            hw_bound: report.h_w_bound.to_decimal(REPORT_DIGITS),
            log2_term: report.log2_term.to_decimal(REPORT_DIGITS),
            total: report.total.to_decimal(REPORT_DIGITS),
        }
    }
}

// ---------------------------------------------------------------------------
// scan reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisFile {
    pub certified: Option<u64>,
    pub searched_limit: u64,
    pub skipped_small: Vec<u64>,
    pub undetermined: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowFile {
    pub p: u64,
    pub decomposes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanFile {
    pub label: String,
    pub degree: u32,
    pub n: u32,
    pub p_max: u64,
    pub cost_cap: u64,
    pub seed: u64,
    pub hypothesis: HypothesisFile,
    pub forced: bool,
    pub rows: Vec<RowFile>,
    pub bad_reduction: Vec<u64>,
    pub reducible: Vec<u64>,
    pub undetermined: Vec<u64>,
    pub log_prod_reducible: String,
    pub h_k_point: String,
    pub h_b_point: String,
    pub chow: ChowFile,
    pub bound: BoundReportFile,
    pub margin: String,
    pub verdict: String,
}

fn row_file(row: &PrimeRow) -> RowFile {
    RowFile {
        p: row.p,
        decomposes: match row.status {
            Decomposes::Yes => "yes",
            Decomposes::No => "no",
            Decomposes::Undetermined => "undetermined",
        }
        .to_string(),
        k: row.extension_degree,
        witness: row.witness.as_ref().map(WitnessFile::from_witness),
        note: row.note.clone(),
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::Incomplete => "incomplete",
    }
}

impl ScanFile {
    pub fn from_report(report: &ScanReport) -> HResult<ScanFile> {
        Ok(ScanFile {
            label: report.label.clone(),
            degree: report.degree,
            n: report.n,
            p_max: report.p_max,
            cost_cap: report.cost_cap,
            seed: report.seed,
            hypothesis: HypothesisFile {
                certified: report.hypothesis.certified,
                searched_limit: report.hypothesis.searched_limit,
                skipped_small: report.hypothesis.skipped_small.clone(),
                undetermined: report.hypothesis.undetermined.clone(),
            },
            forced: report.forced,
            rows: report.rows.iter().map(row_file).collect(),
            bad_reduction: report.bad_reduction.clone(),
            reducible: report.reducible.clone(),
            undetermined: report.undetermined.clone(),
            log_prod_reducible: report.log_prod.to_decimal(REPORT_DIGITS),
            h_k_point: report.h_k.to_decimal(REPORT_DIGITS),
            h_b_point: report.h_b.to_decimal(REPORT_DIGITS),
            chow: ChowFile::from_chow(&report.chow)?,
            bound: BoundReportFile::from_report(&report.bound),
            margin: report.margin.to_decimal(REPORT_DIGITS),
            verdict: verdict_str(report.verdict).to_string(),
        })
    }
}

/// CSV rows `prime,decomposes,k,witness_file`. Witness files are named
/// `witness_p<prime>.json` when a witness directory is in use; the caller
/// writes them via [`witness_files`].
pub fn scan_csv(report: &ScanReport, with_witness_files: bool) -> String {
    let mut out = String::from("prime,decomposes,k,witness_file\n");
    for row in &report.rows {
        let status = match row.status {
            Decomposes::Yes => "yes",
            Decomposes::No => "no",
            Decomposes::Undetermined => "undetermined",
        };
        let k = row
            .extension_degree
            .map(|k| k.to_string())
            .unwrap_or_default();
        let file = if with_witness_files && row.witness.is_some() {
            format!("witness_p{}.json", row.p)
        } else {
            String::new()
        };
        out.push_str(&format!("{},{},{},{}\n", row.p, status, k, file));
    }
    out
}

/// The witness files referenced by the CSV: `(file name, JSON body)`.
pub fn witness_files(report: &ScanReport) -> HResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for row in &report.rows {
        if let Some(w) = &row.witness {
            let body = serde_json::to_string_pretty(&WitnessFile::from_witness(w))
                .map_err(|e| HarnessError::Input(format!("serialize witness: {e}")))?;
            out.push((format!("witness_p{}.json", row.p), body));
        }
    }
    Ok(out)
}

pub fn to_json<T: Serialize>(value: &T) -> HResult<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| HarnessError::Input(format!("serialize: {e}")))
}

pub fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> HResult<T> {
    serde_json::from_str(s).map_err(|e| HarnessError::Input(format!("parse JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chowbez_core::chowforms::chow_plane_curve;
    use chowbez_core::exactnum::int;

    #[test]
    fn poly_file_round_trip() {
        let f = MHPoly::plane_form(&[(1, [2, 0, 0]), (-6, [0, 0, 2]), (1, [0, 2, 0])]);
        let file = PolyFile::from_poly(&f).unwrap();
        let json = to_json(&file).unwrap();
        let parsed: PolyFile = from_json(&json).unwrap();
        assert_eq!(parsed.to_poly().unwrap(), f);
    }

    #[test]
    fn duplicate_terms_are_summed() {
        let json = r#"{"r":0,"s":2,"multidegree":[1],
            "terms":[{"coeff":"2","exps":[[1,0,0]]},{"coeff":"3","exps":[[1,0,0]]}]}"#;
        let file: PolyFile = from_json(json).unwrap();
        let poly = file.to_poly().unwrap();
        assert_eq!(poly, MHPoly::plane_form(&[(5, [1, 0, 0])]));
    }

    #[test]
    fn multidegree_mismatch_is_rejected() {
        let json = r#"{"r":0,"s":2,"multidegree":[2],
            "terms":[{"coeff":"1","exps":[[1,0,0]]}]}"#;
        let file: PolyFile = from_json(json).unwrap();
        assert!(file.to_poly().is_err());
    }

    #[test]
    fn chow_file_round_trip() {
        let f = MHPoly::plane_form(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-6, [0, 0, 2])]);
        let chow = chow_plane_curve(&f).unwrap();
        let file = ChowFile::from_chow(&chow).unwrap();
        let parsed = file.to_chow().unwrap();
        assert_eq!(parsed.vector(), chow.vector());
        assert_eq!(file.d, 2);
        assert_eq!(file.provenance, "plane-curve");
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("3").unwrap(), BigRat::from(int(3)));
        assert_eq!(
            parse_decimal("-2.5").unwrap(),
            BigRat::new(int(-5), int(2))
        );
        assert_eq!(parse_decimal("1.2e3").unwrap(), BigRat::from(int(1200)));
        assert_eq!(
            parse_decimal("25e-2").unwrap(),
            BigRat::new(int(1), int(4))
        );
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_to_decimal(&BigRat::from(int(6435))), "6435");
        assert_eq!(
            rational_to_decimal(&BigRat::new(int(6435), int(2))),
            "3217.5"
        );
        assert_eq!(rational_to_decimal(&BigRat::new(int(-1), int(8))), "-0.125");
        assert_eq!(rational_to_decimal(&BigRat::new(int(1), int(3))), "1/3");
    }
}
