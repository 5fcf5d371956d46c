//! Point-cloud and encoding files.
//!
//! # Point clouds
//!
//! * `xyz`: one point per line, whitespace separated, at least three numbers.
//!   Columns 4–6, when present on every line and of (near) unit length, are
//!   read as normals. Blank lines and lines starting with `#` are skipped.
//! * `ply`: ASCII PLY with `x y z` (optionally `nx ny nz`) vertex properties.
//!   Binary PLY is rejected.
//!
//! # Encodings (`VKM1`)
//!
//! Little-endian, a 40-byte header followed by the payload:
//!
//! | offset | type    | field                                   |
//! |--------|---------|-----------------------------------------|
//! | 0      | `[u8;4]`| magic `b"VKM1"`                         |
//! | 4      | `u32`   | flags (see below)                       |
//! | 8      | `u64`   | `n` (rows)                              |
//! | 16     | `u64`   | `d` (complex entries per row)           |
//! | 24     | `f64`   | α                                       |
//! | 32     | `f64`   | β or radius (first β for multi-scale)   |
//!
//! Flags: bit 0 normalized, bit 1 `f32` payload (else `f64`), bit 2 the
//! neighborhood is a β (else a radius), bit 3 rows are neighbor-averaged,
//! bit 4 multi-scale β. With bit 4 set the header is followed by a `u32`
//! count and that many `f64` β values. The payload is `n · d` pairs
//! `(re, im)`, row-major.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;

use crate::encoder::{EncodingMatrix, Neighborhood};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::shapes::PointCloud;

pub const MAGIC: [u8; 4] = *b"VKM1";
pub const HEADER_LEN: usize = 40;
/// Largest payload a header may declare.
pub const MAX_PAYLOAD_BYTES: u64 = 16 << 30;

const FLAG_NORMALIZED: u32 = 1;
const FLAG_F32: u32 = 1 << 1;
const FLAG_BETA: u32 = 1 << 2;
const FLAG_AVERAGED: u32 = 1 << 3;
const FLAG_MULTI: u32 = 1 << 4;
const KNOWN_FLAGS: u32 = FLAG_NORMALIZED | FLAG_F32 | FLAG_BETA | FLAG_AVERAGED | FLAG_MULTI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudFormat {
    Xyz,
    PlyAscii,
}

impl CloudFormat {
    /// `.ply` → PLY, anything else → xyz.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("ply") => Self::PlyAscii,
            _ => Self::Xyz,
        }
    }
}

impl FromStr for CloudFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xyz" => Ok(Self::Xyz),
            "ply" | "ply_ascii" => Ok(Self::PlyAscii),
            other => Err(Error::Parameter {
                name: "format",
                reason: format!("unknown point-cloud format `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    F32,
    F64,
}

pub fn read_cloud(path: &Path, format: CloudFormat) -> Result<PointCloud> {
    let reader = BufReader::new(File::open(path)?);
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match format {
        CloudFormat::Xyz => parse_xyz(reader, path, name),
        CloudFormat::PlyAscii => parse_ply(reader, path, name),
    }
}

fn parse_err(path: &Path, line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        reason: reason.into(),
    }
}

fn parse_floats(line: &str, path: &Path, lineno: usize) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| parse_err(path, lineno, format!("`{tok}` is not a number")))
        })
        .collect()
}

fn unit_normal(v: &[f64]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    ((n - 1.0).abs() <= 1e-3).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

fn finish_cloud(
    coords: Vec<[f64; 3]>,
    normals: Option<Vec<[f64; 3]>>,
    path: &Path,
    name: String,
) -> Result<PointCloud> {
    if coords.is_empty() {
        return Err(Error::EmptyInput(path.to_path_buf()));
    }
    let pc = PointCloud::new(coords, name)?;
    match normals {
        Some(ns) => pc.with_normals(ns),
        None => Ok(pc),
    }
}

fn parse_xyz(reader: impl BufRead, path: &Path, name: String) -> Result<PointCloud> {
    let mut coords = Vec::new();
    let mut normals = Some(Vec::new());
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let vals = parse_floats(trimmed, path, lineno)?;
        if vals.len() < 3 {
            return Err(parse_err(
                path,
                lineno,
                format!("expected at least 3 columns, found {}", vals.len()),
            ));
        }
        if vals[..3].iter().any(|v| !v.is_finite()) {
            return Err(parse_err(path, lineno, "non-finite coordinate"));
        }
        coords.push([vals[0], vals[1], vals[2]]);
        let nrm = (vals.len() >= 6)
            .then(|| unit_normal(&vals[3..6]))
            .flatten();
        match (nrm, normals.as_mut()) {
            (Some(n), Some(ns)) => ns.push(n),
            _ => normals = None,
        }
    }
    finish_cloud(coords, normals, path, name)
}

struct PlyElement {
    name: String,
    count: usize,
    properties: Vec<String>,
}

fn parse_ply(reader: impl BufRead, path: &Path, name: String) -> Result<PointCloud> {
    let mut lines = reader.lines().enumerate();
    let mut next = |what: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((i, l)) => Ok((i + 1, l?)),
            None => Err(parse_err(
                path,
                0,
                format!("unexpected end of file, expected {what}"),
            )),
        }
    };

    let (ln, first) = next("`ply`")?;
    if first.trim() != "ply" {
        return Err(parse_err(path, ln, "missing `ply` magic line"));
    }
    let mut elements: Vec<PlyElement> = Vec::new();
    loop {
        let (ln, line) = next("`end_header`")?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["end_header"] => break,
            ["format", "ascii", ..] => {}
            ["format", fmt, ..] => {
                return Err(parse_err(
                    path,
                    ln,
                    format!("PLY format `{fmt}` is not supported; only ASCII PLY can be read"),
                ))
            }
            ["comment", ..] | ["obj_info", ..] | [] => {}
            ["element", ename, count] => {
                let count = count
                    .parse()
                    .map_err(|_| parse_err(path, ln, format!("bad element count `{count}`")))?;
                elements.push(PlyElement {
                    name: ename.to_string(),
                    count,
                    properties: Vec::new(),
                });
            }
            ["property", "list", ..] => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| parse_err(path, ln, "property before any element"))?;
                if el.name == "vertex" {
                    return Err(parse_err(
                        path,
                        ln,
                        "list properties on vertices are not supported",
                    ));
                }
                el.properties.push(String::from("<list>"));
            }
            ["property", _ty, pname] => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| parse_err(path, ln, "property before any element"))?;
                el.properties.push(pname.to_string());
            }
            _ => {
                return Err(parse_err(
                    path,
                    ln,
                    format!("unrecognized header line `{line}`"),
                ))
            }
        }
    }

    let vertex = elements
        .iter()
        .position(|e| e.name == "vertex")
        .ok_or_else(|| parse_err(path, 0, "no `vertex` element in header"))?;
    let props = &elements[vertex].properties;
    let index_of = |p: &str| props.iter().position(|q| q == p);
    let mut xyz = [0usize; 3];
    for (slot, pname) in xyz.iter_mut().zip(["x", "y", "z"]) {
        *slot = index_of(pname).ok_or_else(|| {
            parse_err(
                path,
                0,
                format!("vertex element is missing property `{pname}`"),
            )
        })?;
    }
    let nxyz = match (index_of("nx"), index_of("ny"), index_of("nz")) {
        (Some(a), Some(b), Some(c)) => Some([a, b, c]),
        _ => None,
    };

    // Skip data lines of elements declared before `vertex`.
    for el in &elements[..vertex] {
        for _ in 0..el.count {
            next("element data")?;
        }
    }

    let mut coords = Vec::with_capacity(elements[vertex].count);
    let mut normals = nxyz.map(|_| Vec::with_capacity(elements[vertex].count));
    for _ in 0..elements[vertex].count {
        let (ln, line) = next("vertex data")?;
        let vals = parse_floats(&line, path, ln)?;
        if vals.len() < props.len() {
            return Err(parse_err(
                path,
                ln,
                format!(
                    "expected {} vertex values, found {}",
                    props.len(),
                    vals.len()
                ),
            ));
        }
        let p = [vals[xyz[0]], vals[xyz[1]], vals[xyz[2]]];
        if p.iter().any(|v| !v.is_finite()) {
            return Err(parse_err(path, ln, "non-finite coordinate"));
        }
        coords.push(p);
        if let (Some(idx), Some(ns)) = (nxyz, normals.as_mut()) {
            match unit_normal(&[vals[idx[0]], vals[idx[1]], vals[idx[2]]]) {
                Some(n) => ns.push(n),
                None => normals = None,
            }
        }
    }
    finish_cloud(coords, normals, path, name)
}

/// Write a cloud; normals are written when present.
pub fn write_cloud(pc: &PointCloud, path: &Path, format: CloudFormat) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    if format == CloudFormat::PlyAscii {
        writeln!(w, "ply\nformat ascii 1.0\nelement vertex {}", pc.len())?;
        writeln!(w, "property double x\nproperty double y\nproperty double z")?;
        if pc.normals().is_some() {
            writeln!(
                w,
                "property double nx\nproperty double ny\nproperty double nz"
            )?;
        }
        writeln!(w, "end_header")?;
    }
    for (i, p) in pc.coords().iter().enumerate() {
        write!(w, "{} {} {}", p[0], p[1], p[2])?;
        if let Some(ns) = pc.normals() {
            let n = ns[i];
            write!(w, " {} {} {}", n[0], n[1], n[2])?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

fn flags_for(g: &EncodingMatrix, precision: Precision) -> (u32, f64, Option<&[f64]>) {
    let mut flags = 0;
    if g.normalized {
        flags |= FLAG_NORMALIZED;
    }
    if precision == Precision::F32 {
        flags |= FLAG_F32;
    }
    if g.averaged {
        flags |= FLAG_AVERAGED;
    }
    let (value, multi) = match &g.neighborhood {
        Neighborhood::Radius(r) => (*r, None),
        Neighborhood::Beta(b) => {
            flags |= FLAG_BETA;
            (*b, None)
        }
        Neighborhood::MultiBeta(bs) => {
            flags |= FLAG_BETA | FLAG_MULTI;
            (bs.first().copied().unwrap_or(f64::NAN), Some(bs.as_slice()))
        }
    };
    (flags, value, multi)
}

/// Serialize into any writer.
pub fn write_encoding_to(
    g: &EncodingMatrix,
    mut w: impl Write,
    precision: Precision,
) -> Result<()> {
    let (flags, value, multi) = flags_for(g, precision);
    w.write_all(&MAGIC)?;
    w.write_all(&flags.to_le_bytes())?;
    w.write_all(&(g.n() as u64).to_le_bytes())?;
    w.write_all(&(g.d() as u64).to_le_bytes())?;
    w.write_all(&g.alpha.to_le_bytes())?;
    w.write_all(&value.to_le_bytes())?;
    if let Some(bs) = multi {
        w.write_all(&(bs.len() as u32).to_le_bytes())?;
        for b in bs {
            w.write_all(&b.to_le_bytes())?;
        }
    }
    for z in g.rows.as_slice() {
        match precision {
            Precision::F64 => {
                w.write_all(&z.re.to_le_bytes())?;
                w.write_all(&z.im.to_le_bytes())?;
            }
            Precision::F32 => {
                w.write_all(&(z.re as f32).to_le_bytes())?;
                w.write_all(&(z.im as f32).to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_encoding(g: &EncodingMatrix, path: &Path, precision: Precision) -> Result<()> {
    write_encoding_to(g, BufWriter::new(File::create(path)?), precision)
}

fn le_u32(b: &[u8]) -> u32 {
    u32::from_le_bytes(b.try_into().expect("4 bytes"))
}

fn le_u64(b: &[u8]) -> u64 {
    u64::from_le_bytes(b.try_into().expect("8 bytes"))
}

fn le_f64(b: &[u8]) -> f64 {
    f64::from_le_bytes(b.try_into().expect("8 bytes"))
}

fn read_exact_or(r: &mut impl Read, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format(format!("truncated {what}")),
        _ => Error::Io(e),
    })
}

/// Deserialize from any reader. The header is validated before the payload
/// is allocated; trailing bytes are an error.
pub fn read_encoding_from(mut r: impl Read) -> Result<EncodingMatrix> {
    let mut head = [0u8; HEADER_LEN];
    read_exact_or(&mut r, &mut head, "header")?;
    if head[..4] != MAGIC {
        return Err(Error::Format(format!(
            "bad magic {:?}, expected {:?}",
            &head[..4],
            MAGIC
        )));
    }
    let flags = le_u32(&head[4..8]);
    if flags & !KNOWN_FLAGS != 0 {
        return Err(Error::Format(format!("unknown flag bits {flags:#x}")));
    }
    let n = le_u64(&head[8..16]);
    let d = le_u64(&head[16..24]);
    let alpha = le_f64(&head[24..32]);
    let value = le_f64(&head[32..40]);
    let scalar = if flags & FLAG_F32 != 0 { 4u64 } else { 8 };
    let bytes = n
        .checked_mul(d)
        .and_then(|e| e.checked_mul(2 * scalar))
        .filter(|&b| b <= MAX_PAYLOAD_BYTES)
        .ok_or_else(|| {
            Error::Format(format!(
                "header declares {n} x {d} entries, over the 16 GiB limit"
            ))
        })?;

    let neighborhood = if flags & FLAG_MULTI != 0 {
        let mut cnt = [0u8; 4];
        read_exact_or(&mut r, &mut cnt, "beta list")?;
        let count = le_u32(&cnt) as usize;
        if count > 1 << 16 {
            return Err(Error::Format(format!("implausible beta count {count}")));
        }
        let mut raw = vec![0u8; 8 * count];
        read_exact_or(&mut r, &mut raw, "beta list")?;
        Neighborhood::MultiBeta(raw.chunks_exact(8).map(le_f64).collect())
    } else if flags & FLAG_BETA != 0 {
        Neighborhood::Beta(value)
    } else {
        Neighborhood::Radius(value)
    };

    let mut payload = vec![0u8; bytes as usize];
    read_exact_or(&mut r, &mut payload, "payload")?;
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Format("trailing bytes after payload".into()));
    }
    let data: Vec<Complex64> = if scalar == 8 {
        payload
            .chunks_exact(16)
            .map(|c| Complex64::new(le_f64(&c[..8]), le_f64(&c[8..])))
            .collect()
    } else {
        payload
            .chunks_exact(8)
            .map(|c| {
                let re = f32::from_le_bytes(c[..4].try_into().expect("4 bytes"));
                let im = f32::from_le_bytes(c[4..].try_into().expect("4 bytes"));
                Complex64::new(re as f64, im as f64)
            })
            .collect()
    };
    Ok(EncodingMatrix {
        rows: ComplexMatrix::from_vec(n as usize, d as usize, data),
        normalized: flags & FLAG_NORMALIZED != 0,
        averaged: flags & FLAG_AVERAGED != 0,
        alpha,
        neighborhood,
    })
}

pub fn read_encoding(path: &Path) -> Result<EncodingMatrix> {
    read_encoding_from(BufReader::new(File::open(path)?))
}

/// CSV export: a header row `re_0,im_0,...,re_{d-1},im_{d-1}` then one line per row.
pub fn write_encoding_csv(g: &EncodingMatrix, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let header: Vec<String> = (0..g.d()).map(|k| format!("re_{k},im_{k}")).collect();
    writeln!(w, "{}", header.join(","))?;
    for row in g.rows.row_iter() {
        let fields: Vec<String> = row.iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        writeln!(w, "{}", fields.join(","))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn write_tmp(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn sample_encoding() -> EncodingMatrix {
        let data = (0..12)
            .map(|i| Complex64::new(i as f64 * 0.1 - 0.3, 1.0 / (i as f64 + 1.0)))
            .collect();
        EncodingMatrix {
            rows: ComplexMatrix::from_vec(3, 4, data),
            normalized: true,
            averaged: false,
            alpha: 30.0,
            neighborhood: Neighborhood::Beta(6.0),
        }
    }

    #[test]
    fn xyz_basic_and_normals() {
        let dir = tempfile::tempdir().unwrap();
        let pc = read_cloud(
            &write_tmp(&dir, "a.xyz", "0 0 0\n1 2 3\n"),
            CloudFormat::Xyz,
        )
        .unwrap();
        assert_eq!(pc.len(), 2);
        assert!(pc.normals().is_none());

        let pc = read_cloud(&write_tmp(&dir, "b.xyz", "0 0 0 0 0 1\n"), CloudFormat::Xyz).unwrap();
        assert_eq!(pc.normals().unwrap(), &[[0.0, 0.0, 1.0]]);

        // Columns 4-6 that are not unit vectors are not normals.
        let pc = read_cloud(&write_tmp(&dir, "c.xyz", "0 0 0 5 5 5\n"), CloudFormat::Xyz).unwrap();
        assert!(pc.normals().is_none());
    }

    #[test]
    fn xyz_errors() {
        let dir = tempfile::tempdir().unwrap();
        let err = read_cloud(&write_tmp(&dir, "a.xyz", "0 0 0\n1 2\n"), CloudFormat::Xyz);
        assert!(matches!(err, Err(Error::Parse { line: 2, .. })), "{err:?}");
        let err = read_cloud(&write_tmp(&dir, "b.xyz", "0 zero 0\n"), CloudFormat::Xyz);
        assert!(matches!(err, Err(Error::Parse { line: 1, .. })));
        let err = read_cloud(&write_tmp(&dir, "c.xyz", "# nothing\n\n"), CloudFormat::Xyz);
        assert!(matches!(err, Err(Error::EmptyInput(_))));
    }

    #[test]
    fn ply_ascii() {
        let dir = tempfile::tempdir().unwrap();
        let body = "ply\nformat ascii 1.0\ncomment test\nelement vertex 2\nproperty float x\n\
                    property float y\nproperty float z\nproperty float nx\nproperty float ny\n\
                    property float nz\nelement face 0\nproperty list uchar int vertex_indices\n\
                    end_header\n0 0 0 0 0 1\n1 2 3 1 0 0\n";
        let pc = read_cloud(&write_tmp(&dir, "a.ply", body), CloudFormat::PlyAscii).unwrap();
        assert_eq!(pc.coords(), &[[0.0; 3], [1.0, 2.0, 3.0]]);
        assert_eq!(pc.normals().unwrap()[1], [1.0, 0.0, 0.0]);
    }

    #[test]
    fn ply_missing_z_and_binary() {
        let dir = tempfile::tempdir().unwrap();
        let body = "ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\nproperty float y\nend_header\n0 0\n";
        let err = read_cloud(&write_tmp(&dir, "a.ply", body), CloudFormat::PlyAscii).unwrap_err();
        assert!(err.to_string().contains("`z`"), "{err}");

        let body = "ply\nformat binary_little_endian 1.0\nelement vertex 1\nend_header\n";
        let err = read_cloud(&write_tmp(&dir, "b.ply", body), CloudFormat::PlyAscii).unwrap_err();
        assert!(err.to_string().contains("only ASCII"), "{err}");
    }

    #[test]
    fn cloud_write_read() {
        let dir = tempfile::tempdir().unwrap();
        let pc = crate::shapes::gen_shape(crate::shapes::ShapeKind::Torus, 50, 1).unwrap();
        for (name, fmt) in [
            ("t.xyz", CloudFormat::Xyz),
            ("t.ply", CloudFormat::PlyAscii),
        ] {
            let p = dir.path().join(name);
            write_cloud(&pc, &p, fmt).unwrap();
            let back = read_cloud(&p, CloudFormat::from_path(&p)).unwrap();
            assert_eq!(back.coords(), pc.coords());
            assert!(back.normals().is_some());
        }
    }

    #[test]
    fn encoding_round_trip_bit_identical() {
        let g = sample_encoding();
        let mut buf = Vec::new();
        write_encoding_to(&g, &mut buf, Precision::F64).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 12 * 16);
        let back = read_encoding_from(Cursor::new(&buf)).unwrap();
        assert_eq!(back, g);

        let mut multi = g.clone();
        multi.neighborhood = Neighborhood::MultiBeta(vec![10.0, 20.0]);
        buf.clear();
        write_encoding_to(&multi, &mut buf, Precision::F64).unwrap();
        assert_eq!(read_encoding_from(Cursor::new(&buf)).unwrap(), multi);
    }

    #[test]
    fn f32_export_precision() {
        let g = sample_encoding();
        let mut buf = Vec::new();
        write_encoding_to(&g, &mut buf, Precision::F32).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 12 * 8);
        let back = read_encoding_from(Cursor::new(&buf)).unwrap();
        for (a, b) in back.rows.as_slice().iter().zip(g.rows.as_slice()) {
            assert!((a.re - b.re).abs() <= 1e-6 * b.re.abs());
            assert!((a.im - b.im).abs() <= 1e-6 * b.im.abs());
        }
    }

    #[test]
    fn encoding_format_errors() {
        let g = sample_encoding();
        let mut buf = Vec::new();
        write_encoding_to(&g, &mut buf, Precision::F64).unwrap();

        let truncated = &buf[..buf.len() - 5];
        assert!(matches!(
            read_encoding_from(Cursor::new(truncated)),
            Err(Error::Format(m)) if m.contains("truncated")
        ));
        assert!(read_encoding_from(Cursor::new(&buf[..10])).is_err());

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(
            matches!(read_encoding_from(Cursor::new(&bad)), Err(Error::Format(m)) if m.contains("magic"))
        );

        let mut huge = buf.clone();
        huge[8..16].copy_from_slice(&(1u64 << 40).to_le_bytes());
        assert!(
            matches!(read_encoding_from(Cursor::new(&huge)), Err(Error::Format(m)) if m.contains("16 GiB"))
        );

        let mut trailing = buf;
        trailing.push(0);
        assert!(read_encoding_from(Cursor::new(&trailing)).is_err());
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.csv");
        write_encoding_csv(&sample_encoding(), &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("re_0,im_0,re_1"));
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
    }
}
