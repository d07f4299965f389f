//! Interchange formats.
//!
//! * Matrix Market `coordinate complex general`: 1-based `row col re im`
//!   lines for nonzero entries; `%` comment lines carry metadata. Values are
//!   written with Rust's shortest round-trip float formatting, so parsing
//!   recovers every bit.
//! * JSON: `{"rows": R, "cols": C, "entries": [[re, im], ...]}` row-major for
//!   dense matrices and `{"n": .., "p": .., "targets": [...]}` for permutations.
//! * Text: aligned, human-oriented, not meant to be parsed back.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gellmann::{GellMannSystem, ORDERING_NAME};
use crate::matrix::{Complex, ComplexMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    MatrixMarket,
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix-market" | "mm" => Ok(OutputFormat::MatrixMarket),
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::domain(format!("unknown format {other:?}"))),
        }
    }
}

const MM_HEADER: &str = "%%MatrixMarket matrix coordinate complex general";

/// Writes one Matrix Market document. Each `comments` line is prefixed with `% `.
pub fn write_matrix_market(m: &ComplexMatrix, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(MM_HEADER);
    out.push('\n');
    for c in comments {
        let _ = writeln!(out, "% {c}");
    }
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = m.at(r, c);
            if z != Complex::default() {
                let _ = writeln!(out, "{} {} {:?} {:?}", r + 1, c + 1, z.re, z.im);
            }
        }
    }
    out
}

/// Parses a single Matrix Market document.
pub fn parse_matrix_market(text: &str) -> Result<ComplexMatrix> {
    let mut all = parse_matrix_market_many(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one document")),
        k => Err(Error::parse(0, format!("expected one matrix, found {k}"))),
    }
}

/// Parses a stream of concatenated Matrix Market documents.
pub fn parse_matrix_market_many(text: &str) -> Result<Vec<ComplexMatrix>> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((lineno, line)) = lines.next() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        parse_header(lineno + 1, line)?;

        let (size_line, size) = loop {
            match lines.next() {
                Some((_, l)) if l.trim().starts_with('%') || l.trim().is_empty() => continue,
                Some((k, l)) => break (k + 1, l),
                None => return Err(Error::parse(lineno + 1, "missing size line")),
            }
        };
        let dims = parse_fields::<usize>(size_line, size, 3)?;
        let (rows, cols, nnz) = (dims[0], dims[1], dims[2]);
        let mut m = ComplexMatrix::zeros(rows, cols)
            .map_err(|e| Error::parse(size_line, e.to_string()))?;

        let mut seen = 0;
        while seen < nnz {
            let Some((k, l)) = lines.next() else {
                return Err(Error::parse(size_line, format!("expected {nnz} entries, found {seen}")));
            };
            let l = l.trim();
            if l.is_empty() || l.starts_with('%') {
                continue;
            }
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::parse(k + 1, "expected `row col re im`"));
            }
            let idx = parse_fields::<usize>(k + 1, &fields[..2].join(" "), 2)?;
            let val = parse_fields::<f64>(k + 1, &fields[2..].join(" "), 2)?;
            let (i, j) = (idx[0], idx[1]);
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(Error::parse(k + 1, format!("entry ({i}, {j}) outside {rows}x{cols}")));
            }
            *m.at_mut(i - 1, j - 1) = Complex::new(val[0], val[1]);
            seen += 1;
        }
        out.push(m);

        // Anything before the next header must be blank.
        while let Some(&(k, l)) = lines.peek() {
            let t = l.trim();
            if t.starts_with("%%MatrixMarket") {
                break;
            }
            if !t.is_empty() && !t.starts_with('%') {
                return Err(Error::parse(k + 1, "trailing data after declared entries"));
            }
            lines.next();
        }
    }
    if out.is_empty() {
        return Err(Error::parse(1, "no Matrix Market header found"));
    }
    Ok(out)
}

fn parse_header(lineno: usize, line: &str) -> Result<()> {
    let words: Vec<String> = line.split_whitespace().map(str::to_lowercase).collect();
    let expected = ["%%matrixmarket", "matrix", "coordinate", "complex", "general"];
    if words.len() != expected.len() || words.iter().zip(expected).any(|(w, e)| w != e) {
        return Err(Error::parse(
            lineno,
            format!("unsupported header {line:?}, expected {MM_HEADER:?}"),
        ));
    }
    Ok(())
}

fn parse_fields<T: FromStr>(lineno: usize, line: &str, count: usize) -> Result<Vec<T>> {
    let vals: Vec<T> = line
        .split_whitespace()
        .map(|w| w.parse::<T>().map_err(|_| Error::parse(lineno, format!("bad number {w:?}"))))
        .collect::<Result<_>>()?;
    if vals.len() != count {
        return Err(Error::parse(lineno, format!("expected {count} fields, found {}", vals.len())));
    }
    Ok(vals)
}

#[derive(Serialize, Deserialize)]
struct DenseJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

fn to_dense_json(m: &ComplexMatrix) -> DenseJson {
    DenseJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
    }
}

fn from_dense_json(d: DenseJson) -> Result<ComplexMatrix> {
    ComplexMatrix::from_vec(
        d.rows,
        d.cols,
        d.entries.into_iter().map(|[re, im]| Complex::new(re, im)).collect(),
    )
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Result<String> {
    Ok(serde_json::to_string(&to_dense_json(m))?)
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    from_dense_json(serde_json::from_str(text)?)
}

pub fn permutation_to_json(spec: &crate::tcm::PermutationSpec) -> Result<String> {
    Ok(serde_json::to_string(spec)?)
}

pub fn permutation_from_json(text: &str) -> Result<crate::tcm::PermutationSpec> {
    #[derive(Deserialize)]
    struct Raw {
        n: usize,
        p: usize,
        targets: Vec<usize>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    crate::tcm::PermutationSpec::new(raw.n, raw.p, raw.targets)
}

#[derive(Serialize, Deserialize)]
struct LabelledJson {
    index: usize,
    matrix: DenseJson,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    n: usize,
    p: usize,
    ordering: String,
    padded_identity: DenseJson,
    lambdas: Vec<LabelledJson>,
}

pub fn system_to_json(sys: &GellMannSystem) -> Result<String> {
    let doc = SystemJson {
        n: sys.n(),
        p: sys.p(),
        ordering: ORDERING_NAME.to_owned(),
        padded_identity: to_dense_json(sys.padded_identity()),
        lambdas: sys
            .lambdas()
            .iter()
            .enumerate()
            .map(|(k, m)| LabelledJson {
                index: k + 1,
                matrix: to_dense_json(m),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Returns `(n, p, padded_identity, lambdas)`.
pub fn system_from_json(
    text: &str,
) -> Result<(usize, usize, ComplexMatrix, Vec<ComplexMatrix>)> {
    let doc: SystemJson = serde_json::from_str(text)?;
    let id = from_dense_json(doc.padded_identity)?;
    let lambdas = doc
        .lambdas
        .into_iter()
        .map(|l| from_dense_json(l.matrix))
        .collect::<Result<_>>()?;
    Ok((doc.n, doc.p, id, lambdas))
}

/// Matrix Market stream: padded identity first (label 0), then Λ_1..Λ_{np-1}.
pub fn system_to_matrix_market(sys: &GellMannSystem) -> String {
    let header = format!("n={} p={} ordering={}", sys.n(), sys.p(), ORDERING_NAME);
    let mut out = write_matrix_market(
        sys.padded_identity(),
        &[header.clone(), "label=padded-identity index=0".to_owned()],
    );
    for (k, m) in sys.lambdas().iter().enumerate() {
        out.push_str(&write_matrix_market(
            m,
            &[header.clone(), format!("label=lambda index={}", k + 1)],
        ));
    }
    out
}

fn text_entry(z: Complex) -> String {
    fn clean(x: f64) -> f64 {
        if x.abs() < 1e-12 {
            0.0
        } else if (x - x.round()).abs() < 1e-12 {
            x.round()
        } else {
            x
        }
    }
    fn real(x: f64) -> String {
        if x == x.trunc() {
            format!("{}", x as i64)
        } else {
            format!("{x:.6}")
        }
    }
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => real(re),
        (true, false) => format!("{}i", real(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{}{}i", real(re), sign, real(im.abs()))
        }
    }
}

/// Right-aligned grid. Values within 1e-12 of an integer are shown as that integer.
pub fn matrix_to_text(m: &ComplexMatrix) -> String {
    let cells: Vec<String> = m.as_slice().iter().map(|&z| text_entry(z)).collect();
    let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells.chunks(m.cols()) {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

pub fn system_to_text(sys: &GellMannSystem) -> String {
    let mut out = format!(
        "# {}x{} Gell-Mann system, {} matrices, ordering: {}\n",
        sys.n(),
        sys.p(),
        sys.len(),
        ORDERING_NAME
    );
    out.push_str("\nI (padded identity)\n");
    out.push_str(&matrix_to_text(sys.padded_identity()));
    for (k, m) in sys.lambdas().iter().enumerate() {
        let _ = write!(out, "\nLambda_{}\n", k + 1);
        out.push_str(&matrix_to_text(m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gellmann::rect_gellmann;
    use crate::tcm::{tcm_by_gellmann, tcm_by_rule};

    #[test]
    fn mm_round_trip_is_exact() {
        let g = tcm_by_gellmann(3, 2).unwrap();
        let text = write_matrix_market(&g, &["n=3 p=2 method=gellmann".into()]);
        assert_eq!(parse_matrix_market(&text).unwrap(), g);
    }

    #[test]
    fn mm_permutation_has_np_entries() {
        let u = tcm_by_rule(2, 3).unwrap().materialize().unwrap();
        let text = write_matrix_market(&u, &[]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), MM_HEADER);
        assert_eq!(lines.next().unwrap(), "6 6 6");
        let entries: Vec<&str> = lines.collect();
        assert_eq!(entries.len(), 6);
        assert!(entries.iter().all(|l| l.ends_with(" 1.0 0.0")));
        assert!(entries.contains(&"2 4 1.0 0.0"));
    }

    #[test]
    fn mm_rejects_malformed() {
        assert!(parse_matrix_market("").is_err());
        assert!(parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\n1\n").is_err());
        let short = format!("{MM_HEADER}\n2 2 2\n1 1 1.0 0.0\n");
        assert!(parse_matrix_market(&short).is_err());
        let outside = format!("{MM_HEADER}\n2 2 1\n3 1 1.0 0.0\n");
        assert!(parse_matrix_market(&outside).is_err());
        let junk = format!("{MM_HEADER}\n2 2 1\n1 1 x 0.0\n");
        assert!(parse_matrix_market(&junk).is_err());
        let trailing = format!("{MM_HEADER}\n2 2 1\n1 1 1.0 0.0\n2 2 1.0 0.0\n");
        assert!(parse_matrix_market(&trailing).is_err());
    }

    #[test]
    fn mm_stream_of_system() {
        let sys = rect_gellmann(2, 3).unwrap();
        let text = system_to_matrix_market(&sys);
        let all = parse_matrix_market_many(&text).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(&all[0], sys.padded_identity());
        assert_eq!(&all[1..], sys.lambdas());
    }

    #[test]
    fn json_round_trips() {
        let g = tcm_by_gellmann(2, 4).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&g).unwrap()).unwrap(), g);

        let spec = tcm_by_rule(3, 2).unwrap();
        let text = permutation_to_json(&spec).unwrap();
        assert!(text.contains("\"targets\""));
        assert_eq!(permutation_from_json(&text).unwrap(), spec);

        let sys = rect_gellmann(3, 2).unwrap();
        let (n, p, id, lambdas) = system_from_json(&system_to_json(&sys).unwrap()).unwrap();
        assert_eq!((n, p), (3, 2));
        assert_eq!(&id, sys.padded_identity());
        assert_eq!(lambdas, sys.lambdas());
    }

    #[test]
    fn json_schema_shape() {
        let m = ComplexMatrix::from_rows(&[[Complex::new(1.0, -2.0), Complex::new(0.5, 0.0)]]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&matrix_to_json(&m).unwrap()).unwrap();
        assert_eq!(v["rows"], 1);
        assert_eq!(v["cols"], 2);
        assert_eq!(v["entries"], serde_json::json!([[1.0, -2.0], [0.5, 0.0]]));
        assert!(matrix_from_json(r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#).is_err());
        assert!(permutation_from_json(r#"{"n":2,"p":2,"targets":[0,0,1,2]}"#).is_err());
    }

    #[test]
    fn text_of_printed_u22() {
        let g = tcm_by_gellmann(2, 2).unwrap();
        assert_eq!(matrix_to_text(&g), "1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 1\n");
    }

    #[test]
    fn text_entries() {
        assert_eq!(text_entry(Complex::new(0.0, -1.0)), "-1i");
        assert_eq!(text_entry(Complex::new(std::f64::consts::SQRT_2, 0.0)), "1.414214");
        assert_eq!(text_entry(Complex::new(1.0, 0.5)), "1+0.500000i");
    }
}
