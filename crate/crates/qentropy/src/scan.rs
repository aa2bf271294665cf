//! Werner-scan CSV files: `alpha,omega,Z` over the grid and `alpha,omega_star`
//! per α (empty `omega_star` when Z has no sign change).

use std::io::{Read, Write};

use qentropy_core::composite::WernerScan;
use serde::Deserialize;

use crate::format::fmt_num;

pub const SCAN_FILE: &str = "werner_scan.csv";
pub const BOUNDARY_FILE: &str = "werner_boundary.csv";

/// α grid used when no α range is given.
pub const DEFAULT_ALPHAS: [f64; 7] = [0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0];

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub omega: f64,
    #[serde(rename = "Z")]
    pub z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
pub struct BoundaryRow {
    pub alpha: f64,
    pub omega_star: Option<f64>,
}

/// `steps` points from `lo` to `hi`, geometrically spaced when both are positive.
pub fn alpha_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 || hi == lo {
        return vec![lo];
    }
    let t = |k: usize| k as f64 / (steps - 1) as f64;
    if lo > 0.0 && hi > 0.0 {
        let (a, b) = (lo.ln(), hi.ln());
        (0..steps).map(|k| (a + (b - a) * t(k)).exp()).collect()
    } else {
        (0..steps).map(|k| lo + (hi - lo) * t(k)).collect()
    }
}

pub fn write_scan<W: Write>(scan: &WernerScan, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "omega", "Z"])?;
    for (i, &a) in scan.alphas.iter().enumerate() {
        for (j, &omega) in scan.omegas.iter().enumerate() {
            w.write_record([fmt_num(a), fmt_num(omega), fmt_num(scan.z[i][j])])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_boundary<W: Write>(scan: &WernerScan, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "omega_star"])?;
    for (&a, b) in scan.alphas.iter().zip(&scan.boundary) {
        w.write_record([fmt_num(a), b.map(fmt_num).unwrap_or_default()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_scan<R: Read>(input: R) -> csv::Result<Vec<ScanRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn read_boundary<R: Read>(input: R) -> csv::Result<Vec<BoundaryRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::round_sig;
    use qentropy_core::composite::werner_scan;
    use qentropy_core::functionals::OuterFunction;

    #[test]
    fn round_trip() {
        let scan = werner_scan(&OuterFunction::Log, &[0.5, 2.0], 11).unwrap();
        let mut buf = Vec::new();
        write_scan(&scan, &mut buf).unwrap();
        assert!(buf.starts_with(b"alpha,omega,Z\n"));
        let rows = read_scan(&buf[..]).unwrap();
        assert_eq!(rows.len(), 22);
        assert_eq!(rows[13].alpha, 2.0);
        assert_eq!(rows[13].omega, 0.2);
        assert_eq!(rows[13].z, round_sig(scan.z[1][2]));

        let mut buf = Vec::new();
        write_boundary(&scan, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("alpha,omega_star\n"), "{text}");
        assert!(text.contains("\n2,0.57735026919\n"), "{text}");
        let rows = read_boundary(&buf[..]).unwrap();
        assert_eq!(rows[1].omega_star, Some(0.57735026919));
    }

    #[test]
    fn missing_boundary_is_empty() {
        let scan = WernerScan {
            alphas: vec![1.0],
            omegas: vec![0.0, 1.0],
            z: vec![vec![0.0, 0.0]],
            boundary: vec![None],
        };
        let mut buf = Vec::new();
        write_boundary(&scan, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "alpha,omega_star\n1,\n"
        );
        assert_eq!(read_boundary(&buf[..]).unwrap()[0].omega_star, None);
    }

    #[test]
    fn grids() {
        assert_eq!(alpha_grid(2.0, 2.0, 5), vec![2.0]);
        let g = alpha_grid(1.0, 100.0, 3);
        assert!((g[1] - 10.0).abs() < 1e-12 && (g[2] - 100.0).abs() < 1e-9);
        assert_eq!(alpha_grid(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }
}
