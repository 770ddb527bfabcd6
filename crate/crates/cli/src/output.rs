use std::io::{self, Write};

use fockpt::report::{
    AlgebraReport, ComplexValue, EigenfunctionReport, ScanRecord, ScanSummary, SpectrumReport,
    SymmetryReport,
};
use serde::Serialize;

pub fn json<W: Write, T: Serialize>(out: &mut W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn label<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn complex_header(prefix: &str, n: usize) -> Vec<String> {
    (0..n)
        .flat_map(|k| [format!("{prefix}_re_{k}"), format!("{prefix}_im_{k}")])
        .collect()
}

fn complex_cells(values: &[ComplexValue], width: usize) -> Vec<String> {
    (0..width)
        .flat_map(|k| match values.get(k) {
            Some(z) => [num(z.re), num(z.im)],
            None => [String::new(), String::new()],
        })
        .collect()
}

fn io_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn spectrum_csv<W: Write>(out: W, r: &SpectrumReport) -> io::Result<()> {
    let n = r.m + 1;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["source", "c1", "c2", "alpha", "m"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    header.extend(complex_header("eig", n));
    w.write_record(&header).map_err(io_err)?;
    let mut rows = vec![(label(&r.route), &r.eigenvalues), ("oracle".to_string(), &r.oracle)];
    if let Some(cf) = &r.closed_form {
        rows.push(("closed_form".to_string(), cf));
    }
    for (source, values) in rows {
        let mut rec = vec![source, num(r.c1), num(r.c2), num(r.alpha), r.m.to_string()];
        rec.extend(complex_cells(values, n));
        w.write_record(&rec).map_err(io_err)?;
    }
    w.flush()
}

pub fn symmetry_csv<W: Write>(out: W, r: &SymmetryReport) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let ops: Vec<String> = r
        .rows
        .first()
        .map(|row| row.verdicts.iter().map(|v| v.operator.clone()).collect())
        .unwrap_or_default();
    let mut header = vec!["k".to_string(), "eig_re".into(), "eig_im".into()];
    for op in &ops {
        header.push(op.clone());
        header.push(format!("{op} residual"));
    }
    w.write_record(&header).map_err(io_err)?;
    for (k, row) in r.rows.iter().enumerate() {
        let mut rec = vec![k.to_string(), num(row.eigenvalue.re), num(row.eigenvalue.im)];
        for v in &row.verdicts {
            rec.push(label(&v.verdict));
            rec.push(num(v.residual));
        }
        w.write_record(&rec).map_err(io_err)?;
    }
    w.flush()
}

pub fn eigenfunctions_csv<W: Write>(out: W, r: &EigenfunctionReport) -> io::Result<()> {
    let n = r.m + 1;
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["k", "eig_re", "eig_im", "gauge", "residual"]
        .into_iter()
        .map(String::from)
        .collect();
    header.extend(complex_header("coeff", n));
    w.write_record(&header).map_err(io_err)?;
    for (k, f) in r.functions.iter().enumerate() {
        let mut rec = vec![
            k.to_string(),
            num(f.eigenvalue.re),
            num(f.eigenvalue.im),
            label(&f.gauge),
            num(f.residual),
        ];
        rec.extend(complex_cells(&f.coeffs, n));
        w.write_record(&rec).map_err(io_err)?;
    }
    w.flush()
}

pub fn algebra_csv<W: Write>(out: W, r: &AlgebraReport) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["quantity", "value"]).map_err(io_err)?;
    let mut rows = vec![
        ("alpha", num(r.alpha)),
        ("p", num(r.p)),
        ("m", r.m.to_string()),
        ("omega", num(r.omega)),
        ("commutator_plus", num(r.commutators.r_plus)),
        ("commutator_minus", num(r.commutators.r_minus)),
        ("commutator_pm", num(r.commutators.r_pm)),
        ("killing_deviation", num(r.killing_deviation)),
        ("killing_fit_deviation", num(r.killing_fit_deviation)),
        ("casimir_branch_gap", num(r.casimir.branch_gap)),
        ("casimir_commutation", num(r.casimir.commutation_residual)),
        ("spectrum_gap", num(r.spectrum_gap)),
        ("tolerance", num(r.tolerance)),
        ("passed", r.passed.to_string()),
    ];
    if let Some(v) = r.casimir.value {
        rows.push(("casimir_value", num(v)));
    }
    for (q, v) in rows {
        w.write_record([q, v.as_str()]).map_err(io_err)?;
    }
    w.flush()
}

/// Streams scan records, one line each, flushing after every record.
pub enum ScanWriter<W: Write> {
    Json(W),
    Csv { w: csv::Writer<W>, width: usize },
}

impl<W: Write> ScanWriter<W> {
    pub fn json(out: W) -> Self {
        ScanWriter::Json(out)
    }

    /// `max_m` fixes how many eigenvalue columns the header carries.
    pub fn csv(out: W, max_m: usize) -> io::Result<Self> {
        let width = max_m + 1;
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = [
            "alpha",
            "m",
            "route",
            "max_imag",
            "max_residual",
            "ep_flag",
            "max_pairwise_gap",
            "cluster_tolerance",
            "commutator",
            "killing",
            "casimir",
            "partial1",
            "partial2",
            "global",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        header.extend(complex_header("eig", width));
        w.write_record(&header).map_err(io_err)?;
        w.flush()?;
        Ok(ScanWriter::Csv { w, width })
    }

    pub fn record(&mut self, r: &ScanRecord) -> io::Result<()> {
        match self {
            ScanWriter::Json(out) => {
                serde_json::to_writer(&mut *out, &fockpt::report::ScanLine::Record(r.clone()))?;
                writeln!(out)?;
                out.flush()
            }
            ScanWriter::Csv { w, width } => {
                let opt = |f: fn(&fockpt::report::AlgebraResiduals) -> f64| {
                    r.residuals.as_ref().map(|x| num(f(x))).unwrap_or_default()
                };
                let join = |f: fn(&fockpt::report::VerdictTriple) -> String| {
                    r.symmetry_summary.iter().map(f).collect::<Vec<_>>().join(";")
                };
                let mut rec = vec![
                    num(r.alpha),
                    r.m.to_string(),
                    label(&r.route),
                    num(r.max_imag),
                    num(r.max_residual),
                    r.ep_flag.to_string(),
                    num(r.max_pairwise_gap),
                    num(r.cluster_tolerance),
                    opt(|x| x.commutator),
                    opt(|x| x.killing),
                    opt(|x| x.casimir),
                    join(|v| label(&v.partial1)),
                    join(|v| label(&v.partial2)),
                    join(|v| label(&v.global)),
                ];
                rec.extend(complex_cells(&r.eigenvalues, *width));
                w.write_record(&rec).map_err(io_err)?;
                w.flush()
            }
        }
    }

    /// JSON output ends with a summary line; CSV keeps it off the table and
    /// returns it as text for stderr.
    pub fn finish(self, summary: &ScanSummary) -> io::Result<Option<String>> {
        match self {
            ScanWriter::Json(mut out) => {
                serde_json::to_writer(&mut out, &fockpt::report::ScanLine::Summary(summary.clone()))?;
                writeln!(out)?;
                out.flush()?;
                Ok(None)
            }
            ScanWriter::Csv { mut w, .. } => {
                w.flush()?;
                Ok(Some(summary_text(summary)))
            }
        }
    }
}

pub fn summary_text(s: &ScanSummary) -> String {
    let fmt = |x: &[f64]| {
        if x.is_empty() {
            "none".to_string()
        } else {
            x.iter().map(|a| num(*a)).collect::<Vec<_>>().join(", ")
        }
    };
    let mut text = format!("{} records, tolerance {}\n", s.records, s.tolerance);
    for e in &s.entries {
        text.push_str(&format!(
            "m = {}: first complex alpha {}, exceptional at {}\n",
            e.m,
            e.first_complex_alpha.map(num).unwrap_or_else(|| "none".into()),
            fmt(&e.ep_alphas),
        ));
    }
    text
}
