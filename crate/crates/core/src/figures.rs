//! Data tables behind the correlation-versus-acceleration plots.

use rayon::prelude::*;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::{pair_correlations, PairCorrelations};
use crate::tripartite::TripartiteReport;
use crate::unruh::FrameScenario;

/// Points per figure sweep.
pub const FIGURE_POINTS: usize = 121;
pub const FIGURE_R_MAX: f64 = 3.0;

/// `arccosh(e)/2`: inertial classical and quantum correlations are both 1.
pub fn s_star() -> f64 {
    std::f64::consts::E.acosh() / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Alice inertial, Rob accelerated.
    Fig2a,
    /// Both accelerated, `w = 2r`.
    Fig2b,
    /// Tripartite balance in setting (a).
    Fig3,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2a" => Ok(Figure::Fig2a),
            "fig2b" => Ok(Figure::Fig2b),
            "fig3" => Ok(Figure::Fig3),
            other => Err(Error::Unsupported(format!("unknown figure {other:?}"))),
        }
    }
}

pub const FIG3_COLUMNS: [&str; 7] = [
    "Q2_trip",
    "E2_R_vs_ARbar",
    "E2_R_A",
    "E2_R_Rbar",
    "D2_R_given_ARbar",
    "D2_R_given_A",
    "D2_R_given_Rbar",
];

/// Header plus rows of numbers, one row per sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|row| row[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_g12(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_csv().as_bytes())?;
        w.flush()?;
        Ok(())
    }
}

/// Twelve significant digits, C `%.12g` style.
pub fn format_g12(v: f64) -> String {
    const P: i32 = 12;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `n` equally spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    let step = (stop - start) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { stop } else { start + step * i as f64 })
        .collect()
}

fn fig_row(figure: Figure, r: f64, budget: usize) -> Result<Vec<f64>> {
    let s = s_star();
    let scenario = match figure {
        Figure::Fig2a | Figure::Fig3 => FrameScenario::setting_a(s, r)?,
        Figure::Fig2b => FrameScenario::setting_b(s, 2.0 * r, r)?,
    };
    let pair: PairCorrelations = pair_correlations(&scenario, budget)?;
    let mut row = vec![r];
    row.extend(pair.values());
    if figure == Figure::Fig3 {
        let t = TripartiteReport::setting_a(s, r, budget)?;
        row.extend([
            t.residual_discord,
            t.e2_r_vs_arbar,
            t.e2_r_a,
            t.e2_r_rbar,
            t.d2_r_given_arbar,
            t.d2_r_given_a,
            t.d2_r_given_rbar,
        ]);
    }
    Ok(row)
}

/// Evaluates `f` on every point concurrently; rows keep input order.
pub fn par_rows<T, F>(points: &[T], f: F) -> Result<Vec<Vec<f64>>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<f64>> + Sync + Send,
{
    points.par_iter().map(f).collect()
}

pub fn figure_table(figure: Figure, budget: usize) -> Result<Table> {
    let mut header: Vec<String> = std::iter::once("r")
        .chain(PairCorrelations::COLUMNS)
        .map(String::from)
        .collect();
    if figure == Figure::Fig3 {
        header.extend(FIG3_COLUMNS.iter().map(|c| c.to_string()));
    }
    let rs = linspace(0.0, FIGURE_R_MAX, FIGURE_POINTS);
    let rows = par_rows(&rs, |&r| fig_row(figure, r, budget))?;
    Ok(Table { header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (1.0, "1"),
            (2.0, "2"),
            (-0.0, "0"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (0.379885381412, "0.379885381412"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1.5e-7, "1.5e-07"),
            (0.0001, "0.0001"),
            (0.000012345, "1.2345e-05"),
            (-2.5, "-2.5"),
            (0.999999999999999, "1"),
            (9.9999999999995e-5, "0.0001"),
        ];
        for (v, want) in cases {
            assert_eq!(format_g12(v), want, "{v:e}");
        }
    }

    #[test]
    fn linspace_hits_ends() {
        let v = linspace(0.0, 3.0, FIGURE_POINTS);
        assert_eq!(v.len(), 121);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[120], 3.0);
        assert_eq!(v[40], 1.0);
    }

    #[test]
    fn figure_names_parse() {
        assert_eq!("fig2b".parse::<Figure>().unwrap(), Figure::Fig2b);
        assert!("fig4".parse::<Figure>().is_err());
    }

    #[test]
    fn csv_layout() {
        let t = Table {
            header: vec!["r".into(), "I2".into()],
            rows: vec![vec![0.0, 2.0], vec![0.025, 1.99]],
        };
        assert_eq!(t.to_csv(), "r,I2\n0,2\n0.025,1.99\n");
        assert_eq!(t.column("I2").unwrap(), vec![2.0, 1.99]);
    }
}
