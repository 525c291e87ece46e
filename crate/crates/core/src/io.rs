//! CSV formats.
//!
//! Polynomials and symbols: header `n,re,im`, one row per nonzero coefficient,
//! `n` strictly increasing. Matrices: header `i,j,re,im`, nonzero entries in
//! row-major order. For a [`HankelMatrix`] the labels `i, j` are the integers of
//! its index set; for a plain matrix they are 1-based row and column positions.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::DirichletPolynomial;
use crate::hankel::{HankelMatrix, Symbol};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct CoefficientRow {
    n: u64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryRow {
    i: u64,
    j: u64,
    re: f64,
    im: f64,
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn check_header(reader: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = reader.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Format(format!(
            "expected header `{}`, found `{}`",
            expected.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

pub fn write_polynomial<W: Write>(w: W, f: &DirichletPolynomial) -> Result<()> {
    let mut out = writer(w);
    // explicit header: serialize() would omit it for the zero polynomial
    out.write_record(["n", "re", "im"])?;
    for (n, c) in f.iter() {
        out.write_record([n.to_string(), c.re.to_string(), c.im.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_polynomial<R: Read>(r: R) -> Result<DirichletPolynomial> {
    let mut reader = csv::Reader::from_reader(r);
    check_header(&mut reader, &["n", "re", "im"])?;
    let mut pairs = Vec::new();
    let mut last = 0;
    for row in reader.deserialize() {
        let row: CoefficientRow = row?;
        if row.n <= last {
            return Err(Error::Format(format!(
                "n must be positive and strictly increasing ({} after {last})",
                row.n
            )));
        }
        if row.re == 0.0 && row.im == 0.0 {
            return Err(Error::Format(format!("zero coefficient at n = {}", row.n)));
        }
        last = row.n;
        pairs.push((row.n, Complex64::new(row.re, row.im)));
    }
    DirichletPolynomial::from_pairs(pairs)
}

/// Symbols share the polynomial format; the rows hold `ρ_n`.
pub fn write_symbol<W: Write>(w: W, symbol: &Symbol) -> Result<()> {
    write_polynomial(w, symbol.rho())
}

pub fn read_symbol<R: Read>(r: R) -> Result<Symbol> {
    Ok(Symbol::from_rho(read_polynomial(r)?))
}

fn write_entries<W, I>(w: W, entries: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = (u64, u64, Complex64)>,
{
    let mut out = writer(w);
    out.write_record(["i", "j", "re", "im"])?;
    for (i, j, c) in entries {
        if c != Complex64::new(0.0, 0.0) {
            out.write_record([i.to_string(), j.to_string(), c.re.to_string(), c.im.to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_matrix<W: Write>(w: W, m: &DMatrix<Complex64>) -> Result<()> {
    write_entries(
        w,
        (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| (i as u64 + 1, j as u64 + 1, m[(i, j)]))),
    )
}

pub fn write_hankel<W: Write>(w: W, h: &HankelMatrix) -> Result<()> {
    let index = h.index_set();
    let entries = h.entries();
    write_entries(
        w,
        (0..index.len()).flat_map(|i| (0..index.len()).map(move |j| (index[i], index[j], entries[(i, j)]))),
    )
}

/// Reads a plain matrix; its shape is the largest row and column label seen.
pub fn read_matrix<R: Read>(r: R) -> Result<DMatrix<Complex64>> {
    let mut reader = csv::Reader::from_reader(r);
    check_header(&mut reader, &["i", "j", "re", "im"])?;
    let mut rows = Vec::new();
    let mut last = (0, 0);
    for row in reader.deserialize() {
        let row: EntryRow = row?;
        if row.i == 0 || row.j == 0 {
            return Err(Error::Format("matrix labels are 1-based".into()));
        }
        if (row.i, row.j) <= last {
            return Err(Error::Format(format!(
                "entries must be row-major without repeats ({},{} after {},{})",
                row.i, row.j, last.0, last.1
            )));
        }
        last = (row.i, row.j);
        rows.push(row);
    }
    let nrows = rows.iter().map(|r| r.i).max().unwrap_or(0) as usize;
    let ncols = rows.iter().map(|r| r.j).max().unwrap_or(0) as usize;
    let mut m = DMatrix::zeros(nrows, ncols);
    for row in rows {
        m[(row.i as usize - 1, row.j as usize - 1)] = Complex64::new(row.re, row.im);
    }
    Ok(m)
}
