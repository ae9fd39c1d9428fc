//! File formats: whitespace-delimited complex vectors/matrices
//! ("re im" pairs, row-major), the sparse polynomial format
//! ("coeff_re coeff_im : i1 i2 ... ik"), CSV point clouds and ASCII PLY.

use crate::{CliError, CliResult};
use lie_eigenlab_core::levelset::ManifoldPoint;
use lie_eigenlab_core::linalg::{CMat, C64};
use lie_eigenlab_core::morphism::HomogeneousPoly;
use std::fmt::Write as _;
use std::path::Path;

fn read_pairs(path: &Path) -> CliResult<Vec<C64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let numbers: Vec<f64> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| CliError::config(format!("bad number '{tok}' in {}", path.display())))
        })
        .collect::<CliResult<_>>()?;
    if !numbers.len().is_multiple_of(2) {
        return Err(CliError::config(format!(
            "{} holds {} numbers; complex data needs re/im pairs",
            path.display(),
            numbers.len()
        )));
    }
    Ok(numbers.chunks(2).map(|c| C64::new(c[0], c[1])).collect())
}

/// A complex vector file: any number of `re im` pairs.
pub fn read_complex_vector(path: &Path) -> CliResult<Vec<C64>> {
    let v = read_pairs(path)?;
    if v.is_empty() {
        return Err(CliError::config(format!(
            "{} holds no entries",
            path.display()
        )));
    }
    Ok(v)
}

/// A square complex matrix file: n² `re im` pairs, row-major.
pub fn read_complex_matrix(path: &Path) -> CliResult<CMat> {
    let entries = read_pairs(path)?;
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n * n != entries.len() || n == 0 {
        return Err(CliError::config(format!(
            "{} holds {} entries, which is not a square matrix",
            path.display(),
            entries.len()
        )));
    }
    Ok(CMat::from_rows(n, n, &entries))
}

/// Sparse homogeneous polynomial, one term per line:
/// `coeff_re coeff_im : i1 i2 ... ik`. Blank lines and `#` comments are
/// skipped.
pub fn parse_poly(text: &str, vars: usize) -> CliResult<HomogeneousPoly> {
    let mut terms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((coeff_part, index_part)) = line.split_once(':') else {
            return Err(CliError::config(format!(
                "polynomial line {}: missing ':'",
                lineno + 1
            )));
        };
        let coeff_nums: Vec<f64> = coeff_part
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| {
                    CliError::config(format!("polynomial line {}: bad coefficient", lineno + 1))
                })
            })
            .collect::<CliResult<_>>()?;
        if coeff_nums.len() != 2 {
            return Err(CliError::config(format!(
                "polynomial line {}: coefficient needs exactly 're im'",
                lineno + 1
            )));
        }
        let idx: Vec<u32> = index_part
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| {
                    CliError::config(format!("polynomial line {}: bad exponent", lineno + 1))
                })
            })
            .collect::<CliResult<_>>()?;
        if idx.len() != vars {
            return Err(CliError::config(format!(
                "polynomial line {}: {} exponents given, {} variables expected",
                lineno + 1,
                idx.len(),
                vars
            )));
        }
        terms.push((idx, C64::new(coeff_nums[0], coeff_nums[1])));
    }
    HomogeneousPoly::new(vars, terms).map_err(CliError::setup)
}

pub fn read_poly(path: &Path, vars: usize) -> CliResult<HomogeneousPoly> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    parse_poly(&text, vars)
}

/// One linear chart coordinate for PLY export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartCoord {
    pub row: usize,
    pub col: usize,
    pub imaginary: bool,
}

impl ChartCoord {
    pub fn parse(tok: &str) -> CliResult<Self> {
        let (kind, pos) = tok.split_once(':').ok_or_else(|| {
            CliError::config(format!(
                "chart coordinate '{tok}' is not 're:i,j' or 'im:i,j'"
            ))
        })?;
        let imaginary = match kind {
            "re" => false,
            "im" => true,
            _ => {
                return Err(CliError::config(format!(
                    "chart coordinate '{tok}' must start with re: or im:"
                )))
            }
        };
        let (r, c) = pos
            .split_once(',')
            .ok_or_else(|| CliError::config(format!("chart coordinate '{tok}' needs 'i,j'")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::config(format!("bad index in chart coordinate '{tok}'")))
        };
        Ok(ChartCoord {
            row: parse(r)?,
            col: parse(c)?,
            imaginary,
        })
    }

    fn eval(&self, m: &CMat) -> f64 {
        let z = m[(self.row, self.col)];
        if self.imaginary {
            z.im
        } else {
            z.re
        }
    }
}

pub fn default_chart() -> [ChartCoord; 3] {
    [
        ChartCoord {
            row: 0,
            col: 0,
            imaginary: false,
        },
        ChartCoord {
            row: 0,
            col: 0,
            imaginary: true,
        },
        ChartCoord {
            row: 0,
            col: 1,
            imaginary: false,
        },
    ]
}

/// CSV rows: 2m² real matrix entries, |Psi|, the regularity singular
/// value, then the curvature norm where a spot check ran (else empty).
pub fn cloud_csv(points: &[ManifoldPoint], curvature: &[Option<f64>]) -> String {
    let mut out = String::new();
    for (pt, curv) in points.iter().zip(curvature) {
        let mut first = true;
        for z in pt.element.mat().data() {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{:.17e},{:.17e}", z.re, z.im);
            first = false;
        }
        let _ = write!(out, ",{:.17e},{:.17e},", pt.constraint_norm, pt.sigma_min);
        if let Some(c) = curv {
            let _ = write!(out, "{c:.17e}");
        }
        out.push('\n');
    }
    out
}

/// ASCII PLY with the three chart coordinates as vertex positions.
pub fn cloud_ply(points: &[ManifoldPoint], chart: &[ChartCoord; 3]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ply");
    let _ = writeln!(out, "format ascii 1.0");
    let _ = writeln!(out, "element vertex {}", points.len());
    let _ = writeln!(out, "property float x");
    let _ = writeln!(out, "property float y");
    let _ = writeln!(out, "property float z");
    let _ = writeln!(out, "end_header");
    for pt in points {
        let m = pt.element.mat();
        let _ = writeln!(
            out,
            "{:.9} {:.9} {:.9}",
            chart[0].eval(m),
            chart[1].eval(m),
            chart[2].eval(m)
        );
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| {
                CliError::config(format!("cannot create {}: {e}", parent.display()))
            })?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))
}
