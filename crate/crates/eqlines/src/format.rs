//! On-disk formats: line sets (JSON and plain text), certificates,
//! fiducials, Gram and Seidel grids, graph adjacency lists and Leech
//! vector dumps.

use std::fmt::Write as _;
use std::io::{self, Read, Write};

use eqlines_core::leech::LeechVector;
use eqlines_core::seidel::{Graph, SeidelMatrix};
use eqlines_core::wh::{Fiducial, SicCertificate};
use eqlines_core::{Certificate, Field, GramMatrix, LineSet, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] eqlines_core::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A scalar in the JSON line-set format: a bare number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Serialize, Deserialize)]
struct LineSetJson {
    dimension: usize,
    field: String,
    vectors: Vec<Vec<JsonScalar>>,
}

fn field_from_str(s: &str) -> Result<Field, FormatError> {
    match s {
        "real" => Ok(Field::Real),
        "complex" => Ok(Field::Complex),
        other => Err(parse_err(0, format!("unknown field {other:?}"))),
    }
}

pub fn lineset_to_json(ls: &LineSet) -> String {
    let vectors = ls
        .vectors()
        .iter()
        .map(|v| {
            v.iter()
                .map(|z| match ls.field() {
                    Field::Real => JsonScalar::Real(z.re),
                    Field::Complex => JsonScalar::Complex([z.re, z.im]),
                })
                .collect()
        })
        .collect();
    let doc = LineSetJson {
        dimension: ls.dimension(),
        field: ls.field().as_str().to_string(),
        vectors,
    };
    serde_json::to_string_pretty(&doc).expect("line sets serialize") + "\n"
}

/// Parses the JSON format. Norms are not checked here; certification does that.
pub fn lineset_from_json(s: &str) -> Result<LineSet, FormatError> {
    let doc: LineSetJson = serde_json::from_str(s)?;
    let field = field_from_str(&doc.field)?;
    let vectors = doc
        .vectors
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|x| match x {
                    JsonScalar::Real(re) => C64::new(re, 0.0),
                    JsonScalar::Complex([re, im]) => C64::new(re, im),
                })
                .collect()
        })
        .collect();
    Ok(LineSet::from_raw(doc.dimension, field, vectors)?)
}

pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

/// Parses `re+imj`, `re-imj` or a bare real number.
pub fn parse_complex(token: &str) -> Option<C64> {
    let Some(body) = token.strip_suffix('j') else {
        return token.parse().ok().map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
    let re = body[..split].parse().ok()?;
    let im = body[split..].trim_start_matches('+').parse().ok()?;
    Some(C64::new(re, im))
}

/// One vector per row, whitespace separated; complex entries as `re+imj`.
pub fn lineset_to_text(ls: &LineSet) -> String {
    let mut out = String::new();
    for v in ls.vectors() {
        let row: Vec<String> = v
            .iter()
            .map(|&z| match ls.field() {
                Field::Real => format!("{}", z.re),
                Field::Complex => format_complex(z),
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// The field is complex when any entry carries a `j` suffix.
pub fn lineset_from_text(s: &str) -> Result<LineSet, FormatError> {
    let mut vectors = Vec::new();
    let mut complex = false;
    for (i, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                complex |= t.ends_with('j');
                parse_complex(t).ok_or_else(|| parse_err(i + 1, format!("bad scalar {t:?}")))
            })
            .collect::<Result<Vec<C64>, _>>()?;
        vectors.push(row);
    }
    let dimension = vectors.first().map_or(0, Vec::len);
    let field = if complex { Field::Complex } else { Field::Real };
    Ok(LineSet::from_raw(dimension, field, vectors)?)
}

/// Accepts either format, chosen by the first non-blank character.
pub fn lineset_from_str(s: &str) -> Result<LineSet, FormatError> {
    if s.trim_start().starts_with('{') {
        lineset_from_json(s)
    } else {
        lineset_from_text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub pass: bool,
    pub dimension: usize,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_overlap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_overlap_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub identity_residual: Option<f64>,
    pub max_norm_deviation: f64,
    pub tolerance: f64,
}

impl CertificateJson {
    pub fn equiangular(ls: &LineSet, c: &Certificate) -> Self {
        Self {
            kind: "equiangular".into(),
            pass: c.is_equiangular,
            dimension: ls.dimension(),
            count: ls.len(),
            alpha: Some(c.alpha),
            max_deviation: Some(c.max_deviation),
            target_overlap: None,
            max_overlap_deviation: None,
            identity_residual: None,
            max_norm_deviation: c.max_norm_deviation,
            tolerance: c.tolerance_used,
        }
    }

    pub fn sic(ls: &LineSet, c: &SicCertificate) -> Self {
        Self {
            kind: "sic".into(),
            pass: c.pass,
            dimension: ls.dimension(),
            count: ls.len(),
            alpha: None,
            max_deviation: None,
            target_overlap: Some(c.target_overlap),
            max_overlap_deviation: Some(c.max_overlap_deviation),
            identity_residual: Some(c.identity_residual),
            max_norm_deviation: c.max_norm_deviation,
            tolerance: c.tolerance_used,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiducialJson {
    pub d: usize,
    pub amplitudes: Vec<[f64; 2]>,
    pub potential: f64,
}

impl FiducialJson {
    pub fn new(f: &Fiducial, potential: f64) -> Self {
        Self {
            d: f.dimension(),
            amplitudes: f.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            potential,
        }
    }

    pub fn fiducial(&self) -> Result<Fiducial, FormatError> {
        if self.amplitudes.len() != self.d {
            return Err(parse_err(
                0,
                format!("{} amplitudes for d = {}", self.amplitudes.len(), self.d),
            ));
        }
        let amps = self.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Ok(Fiducial::new(amps)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fiducials serialize") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Whitespace-separated grid; complex entries as `re+imj` unless all imaginary parts are zero.
pub fn gram_to_text(g: &GramMatrix) -> String {
    let real = g.is_real(0.0);
    let mut out = String::new();
    for j in 0..g.size() {
        let row: Vec<String> = (0..g.size())
            .map(|k| {
                let z = g.get(j, k);
                if real {
                    format!("{}", z.re)
                } else {
                    format_complex(z)
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn seidel_to_text(s: &SeidelMatrix) -> String {
    let mut out = String::new();
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(i8::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn seidel_from_text(s: &str) -> Result<SeidelMatrix, FormatError> {
    let mut rows = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i8>().map_err(|e| parse_err(i + 1, format!("{t:?}: {e}"))))
            .collect::<Result<Vec<i8>, _>>()?;
        rows.push(row);
    }
    Ok(SeidelMatrix::from_rows(rows)?)
}

/// `N` on the first line, then one `u v` pair per edge.
pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn graph_from_text(s: &str) -> Result<Graph, FormatError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|e| parse_err(first, format!("vertex count {header:?}: {e}")))?;
    let mut edges = Vec::new();
    for (i, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(parse_err(i, "expected two vertex indices"));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|e| parse_err(i, format!("{t:?}: {e}")));
        edges.push((parse(u)?, parse(v)?));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// 24 little-endian `i16` per record.
pub fn write_leech_binary<W: Write>(mut w: W, vectors: &[LeechVector]) -> io::Result<()> {
    for v in vectors {
        for x in v.coords() {
            w.write_all(&(x as i16).to_le_bytes())?;
        }
    }
    w.flush()
}

pub fn read_leech_binary<R: Read>(mut r: R) -> Result<Vec<[i32; 24]>, FormatError> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() % 48 != 0 {
        return Err(parse_err(0, format!("{} bytes is not a whole number of records", bytes.len())));
    }
    Ok(bytes
        .chunks_exact(48)
        .map(|rec| std::array::from_fn(|i| i16::from_le_bytes([rec[2 * i], rec[2 * i + 1]]) as i32))
        .collect())
}

/// One comma-separated record of 24 integers per line.
pub fn write_leech_csv<W: Write>(mut w: W, vectors: &[LeechVector]) -> io::Result<()> {
    for v in vectors {
        writeln!(w, "{v}")?;
    }
    w.flush()
}

pub fn parse_leech_coords(s: &str) -> Result<[i32; 24], FormatError> {
    let values = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|e| parse_err(1, format!("{t:?}: {e}"))))
        .collect::<Result<Vec<i32>, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<i32>| parse_err(1, format!("expected 24 coordinates, found {}", v.len())))
}

pub fn read_leech_csv(s: &str) -> Result<Vec<[i32; 24]>, FormatError> {
    s.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_leech_coords)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqlines_core::real::{fano_28_lines, hexagon_lines};

    #[test]
    fn complex_token_forms() {
        assert_eq!(parse_complex("0.5+0.25j"), Some(C64::new(0.5, 0.25)));
        assert_eq!(parse_complex("-1e-5-2E-3j"), Some(C64::new(-1e-5, -2e-3)));
        assert_eq!(parse_complex("3"), Some(C64::new(3.0, 0.0)));
        assert_eq!(parse_complex("1e+2+1e+2j"), Some(C64::new(100.0, 100.0)));
        assert_eq!(parse_complex("abc"), None);
        assert_eq!(format_complex(C64::new(1.0, -0.0)), "1-0j");
    }

    #[test]
    fn hexagon_text_is_three_rows_of_two() {
        let text = lineset_to_text(&hexagon_lines());
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.split_whitespace().count() == 2));
    }

    #[test]
    fn json_and_text_reparse_exactly() {
        let ls = fano_28_lines();
        assert_eq!(lineset_from_str(&lineset_to_json(&ls)).unwrap(), ls);
        assert_eq!(lineset_from_str(&lineset_to_text(&ls)).unwrap(), ls);
    }

    #[test]
    fn json_schema() {
        let v: serde_json::Value = serde_json::from_str(&lineset_to_json(&hexagon_lines())).unwrap();
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["field"], "real");
        assert_eq!(v["vectors"].as_array().unwrap().len(), 3);
        let c = r#"{"dimension": 1, "field": "complex", "vectors": [[[0.0, 1.0]]]}"#;
        let ls = lineset_from_json(c).unwrap();
        assert_eq!(ls.vectors()[0][0], C64::new(0.0, 1.0));
        assert!(lineset_from_json(r#"{"dimension": 1, "field": "quaternion", "vectors": [[1.0]]}"#).is_err());
    }

    #[test]
    fn graph_text() {
        let g = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let text = graph_to_text(&g);
        assert_eq!(text, "4\n0 2\n1 3\n");
        assert_eq!(graph_from_text(&text).unwrap(), g);
        assert!(graph_from_text("3\n0 5\n").is_err());
        assert!(graph_from_text("3\n0\n").is_err());
    }

    #[test]
    fn seidel_text() {
        let s = SeidelMatrix::from_rows(vec![vec![0, 1, -1], vec![1, 0, 1], vec![-1, 1, 0]]).unwrap();
        assert_eq!(seidel_to_text(&s), "0 1 -1\n1 0 1\n-1 1 0\n");
        assert_eq!(seidel_from_text(&seidel_to_text(&s)).unwrap(), s);
    }

    #[test]
    fn leech_records() {
        let v = eqlines_core::leech::default_type3();
        let mut bin = Vec::new();
        write_leech_binary(&mut bin, &[v, v.neg()]).unwrap();
        assert_eq!(bin.len(), 96);
        assert_eq!(read_leech_binary(bin.as_slice()).unwrap(), vec![v.coords(), v.neg().coords()]);
        let mut csv = Vec::new();
        write_leech_csv(&mut csv, &[v]).unwrap();
        assert_eq!(read_leech_csv(std::str::from_utf8(&csv).unwrap()).unwrap(), vec![v.coords()]);
        assert!(parse_leech_coords("1,2,3").is_err());
    }
}
