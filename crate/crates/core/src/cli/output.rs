use std::io::{self, Write};

use serde::Serialize;

use crate::dualities::VerificationReport;
use crate::spingroup::SpinGroupElement;
use crate::symfunc::TruncatedPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn reports(out: &mut impl Write, reports: &[VerificationReport], format: Format, single: bool) -> io::Result<()> {
    match format {
        Format::Text => {
            for r in reports {
                write!(out, "{r}")?;
            }
            if !single {
                let ok = reports.iter().filter(|r| r.is_verified()).count();
                writeln!(out, "{ok} of {} checks verified", reports.len())?;
            }
            Ok(())
        }
        Format::Json => {
            let text = if single {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            };
            writeln!(out, "{}", text.map_err(io::Error::other)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "check", "params", "status", "lambda", "dim_u", "dim_other", "weight", "contribution", "detail",
            ])?;
            for r in reports {
                let head = [r.check_name().to_string(), r.params().to_string(), r.status().to_string()];
                let detail = r.detail().unwrap_or("").to_string();
                if r.dims().is_empty() {
                    let empty = ["", "", "", "", ""].map(String::from);
                    w.write_record(head.iter().chain(&empty).chain([&detail]))?;
                }
                for row in r.dims() {
                    let cells = [
                        row.lambda.to_string(),
                        row.dim_u.to_string(),
                        row.dim_other.to_string(),
                        row.weight.clone(),
                        row.contribution.to_string(),
                    ];
                    w.write_record(head.iter().chain(&cells).chain([&detail]))?;
                }
            }
            w.flush()
        }
    }
}

#[derive(Serialize)]
struct Term {
    exponents: Vec<u32>,
    coefficient: String,
}

#[derive(Serialize)]
struct PolyOut<'a> {
    lambda: &'a [usize],
    vars: usize,
    degree: usize,
    character: bool,
    polynomial: String,
    terms: Vec<Term>,
}

pub fn polynomial(
    out: &mut impl Write,
    p: &TruncatedPolynomial,
    lambda: &[usize],
    character: bool,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{p}"),
        Format::Json => {
            let body = PolyOut {
                lambda,
                vars: p.vars(),
                degree: p.degree_bound(),
                character,
                polynomial: p.to_string(),
                terms: p
                    .sorted_terms()
                    .into_iter()
                    .map(|(e, c)| Term {
                        exponents: e.clone(),
                        coefficient: c.to_string(),
                    })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&body).map_err(io::Error::other)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = TruncatedPolynomial::default_names(p.vars());
            header.push("coefficient".into());
            w.write_record(&header)?;
            for (e, c) in p.sorted_terms() {
                let mut row: Vec<String> = e.iter().map(u32::to_string).collect();
                row.push(c.to_string());
                w.write_record(&row)?;
            }
            w.flush()
        }
    }
}

pub fn group_element(out: &mut impl Write, g: &SpinGroupElement, format: Format) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{}", g.normal_form()),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(g).map_err(io::Error::other)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["k", "normal_form"])?;
            w.write_record([g.k().to_string(), g.normal_form()])?;
            w.flush()
        }
    }
}
