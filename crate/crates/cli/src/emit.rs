use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;

use crate::Format;
use qmagnus::algebra::{LamSeries, MatPoly};
use qmagnus::finitediff::GridFn;

pub struct Emitter {
    path: Option<PathBuf>,
    format: Format,
}

impl Emitter {
    pub fn new(path: Option<PathBuf>, format: Format) -> Self {
        Emitter { path, format }
    }

    pub fn emit<T: Serialize>(
        &self,
        value: &T,
        csv: impl FnOnce() -> String,
        text: impl FnOnce() -> String,
    ) -> anyhow::Result<()> {
        let body = match self.format {
            Format::Json => serde_json::to_string_pretty(value)? + "\n",
            Format::Csv => csv(),
            Format::Text => text(),
        };
        match &self.path {
            Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

/// `grade,t_degree,row,col,value`; the adjoined unit is a row with empty
/// `t_degree`, `row` and `col`.
pub fn series_csv(s: &LamSeries<MatPoly>) -> String {
    let mut out = String::from("grade,t_degree,row,col,value\n");
    if !s.unit_coeff().is_zero() {
        out.push_str(&format!("0,,,,{}\n", s.unit_coeff()));
    }
    for (n, g) in s.grades().iter().enumerate() {
        for (k, m) in g.terms() {
            for (i, row) in m.rows().iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.push_str(&format!("{n},{k},{i},{j},{v}\n"));
                    }
                }
            }
        }
    }
    out
}

pub fn series_text(s: &LamSeries<MatPoly>) -> String {
    let mut out = String::new();
    if !s.unit_coeff().is_zero() {
        out.push_str(&format!("  unit: {}\n", s.unit_coeff()));
    }
    for (n, g) in s.grades().iter().enumerate() {
        if !g.is_zero() {
            out.push_str(&format!("  lambda^{n}: {g}\n"));
        }
    }
    out
}

/// One row per grid point: `j,t,m_00,m_01,..` in row-major order.
pub fn grid_csv(f: &GridFn) -> String {
    let d = f.dim();
    let mut out = String::from("j,t");
    for i in 0..d {
        for j in 0..d {
            out.push_str(&format!(",m_{i}{j}"));
        }
    }
    out.push('\n');
    for (j, m) in f.values().iter().enumerate() {
        out.push_str(&format!("{j},{}", f.h() * &qmagnus::algebra::Rat::from_int(j as i64)));
        for v in m.entries() {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}
