//! Tabulated parameter sweeps and their CSV serialization. The ten stock
//! figures cover every curve the library knows how to draw: energies,
//! overlap, densities, spectral weights, purity, entropy, deviations, and
//! the entanglement-versus-energy bridges.

use crate::bridge;
use crate::error::{Error, Result};
use crate::ising;
use crate::model::{self, Coupling, QuantumNumbers};

/// Significant digits used for all CSV output.
pub const CSV_SIG_DIGITS: usize = 12;

/// Format a real with `sig` significant digits, plain decimal where the
/// exponent allows it and scientific notation otherwise, trailing zeros
/// trimmed. The output round-trips through `str::parse::<f64>()`.
pub fn format_sig(v: f64, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    // Let the formatter do the correct rounding, then re-shape the result.
    let sci = format!("{:.*e}", sig - 1, v);
    let (mant, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if exp >= -4 && exp < sig as i32 {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if int_len >= digits.len() {
                format!("{}{}", digits, "0".repeat(int_len - digits.len()))
            } else {
                trim_fraction(&format!("{}.{}", &digits[..int_len], &digits[int_len..]))
            }
        } else {
            trim_fraction(&format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits))
        }
    } else {
        let mantissa = trim_fraction(&format!("{}.{}", &digits[..1], &digits[1..]));
        format!("{mantissa}e{exp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// A named-column table of sweep results. The first column is the sweep
/// parameter and must increase strictly; every row carries one value per
/// header entry and all values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn new(header: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if header.is_empty() {
            return Err(Error::MalformedTable("empty header".to_string()));
        }
        for name in &header {
            if name.is_empty() || name.contains(',') || name.contains('\n') {
                return Err(Error::MalformedTable(format!(
                    "column name {name:?} is not CSV-safe"
                )));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != header.len() {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} values, header has {}",
                    row.len(),
                    header.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::MalformedTable(format!("row {i} has non-finite value")));
            }
        }
        for pair in rows.windows(2) {
            if pair[1][0] <= pair[0][0] {
                return Err(Error::MalformedTable(format!(
                    "sweep parameter not strictly increasing: {} then {}",
                    pair[0][0], pair[1][0]
                )));
            }
        }
        Ok(SweepTable { header, rows })
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// CSV rendering: header line, then one line per row, all reals at
    /// [`CSV_SIG_DIGITS`] significant digits, trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&v| format_sig(v, CSV_SIG_DIGITS)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }

    /// Parse a table previously rendered by [`SweepTable::to_csv`]. The
    /// round-trip is exact: re-rendering the parsed table reproduces the
    /// input byte for byte.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header_line = lines
            .next()
            .ok_or_else(|| Error::MalformedTable("empty input".to_string()))?;
        let header: Vec<String> = header_line
            .trim_end_matches('\r')
            .split(',')
            .map(|s| s.to_string())
            .collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::with_capacity(header.len());
            for field in line.split(',') {
                let v: f64 = field.parse().map_err(|_| {
                    Error::MalformedTable(format!("row {}: bad number {field:?}", i + 1))
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        SweepTable::new(header, rows)
    }
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::TooFewPoints {
            given: steps,
            min: 2,
        });
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::EmptyInterval { a: lo, b: hi });
    }
    let h = (hi - lo) / (steps - 1) as f64;
    let mut out: Vec<f64> = (0..steps).map(|i| lo + h * i as f64).collect();
    // Close the interval exactly despite rounding in the increments.
    out[steps - 1] = hi;
    Ok(out)
}

/// The ten stock sweeps. Each reproduces one figure's curve data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// fig1: exact and mean-field ground energies, and their difference.
    GroundLevels,
    /// fig2: squared overlap between exact and mean-field ground states.
    Overlap,
    /// fig3: exact and mean-field one-particle densities over r at K = 1.
    Densities,
    /// fig4: the two leading reduced-state weights mu_0, mu_1.
    LeadingWeights,
    /// fig5: purity of the reduced state.
    Purity,
    /// fig6: entanglement entropy.
    Entropy,
    /// fig7: minimized deviation alpha_min S - E over K.
    MinimizedDeviation,
    /// fig8: relative minimized deviations |dev|/S and |dev|/E.
    RelativeDeviations,
    /// fig9: entropy against correlation energy for both models.
    EntropyVsEnergy,
    /// fig10: overlap against entropy, parameterized by K.
    OverlapVsEntropy,
}

impl Figure {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "fig1" => Figure::GroundLevels,
            "fig2" => Figure::Overlap,
            "fig3" => Figure::Densities,
            "fig4" => Figure::LeadingWeights,
            "fig5" => Figure::Purity,
            "fig6" => Figure::Entropy,
            "fig7" => Figure::MinimizedDeviation,
            "fig8" => Figure::RelativeDeviations,
            "fig9" => Figure::EntropyVsEnergy,
            "fig10" => Figure::OverlapVsEntropy,
            _ => return None,
        })
    }

    /// Default (lo, hi, steps) of the sweep parameter. Most figures sweep
    /// the coupling over [0, 1]; the density figure sweeps the radius, the
    /// bridge figure sweeps the correlation energy, and the relative
    /// deviations start above zero because both ratios are 0/0 there.
    pub fn default_range(self) -> (f64, f64, usize) {
        match self {
            Figure::Densities => (0.0, 3.0, 121),
            Figure::RelativeDeviations => (0.01, 1.0, 100),
            _ => (0.0, 1.0, 101),
        }
    }
}

/// Quadrature size used by sweeps that need the deviation minimizer.
pub const DEFAULT_QUAD_POINTS: usize = 64;

/// Build the data table for a stock figure over `steps` points of its
/// sweep parameter on [lo, hi]. `quad_points` only affects the deviation
/// figures (which need the minimizing weight).
pub fn figure_table(
    fig: Figure,
    lo: f64,
    hi: f64,
    steps: usize,
    quad_points: usize,
) -> Result<SweepTable> {
    let grid = linspace(lo, hi, steps)?;
    match fig {
        Figure::GroundLevels => k_table(
            &grid,
            &["k", "exact_energy", "hf_energy", "ecorr"],
            |k| {
                vec![
                    model::exact_energy(QuantumNumbers::GROUND, k),
                    model::hf_energy(k),
                    model::correlation_energy(k),
                ]
            },
        ),
        Figure::Overlap => k_table(&grid, &["k", "overlap_sq"], |k| {
            vec![model::overlap_squared(k)]
        }),
        Figure::Densities => {
            let k = Coupling::new(1.0)?;
            let rows = grid
                .iter()
                .map(|&r| vec![r, model::density_exact(r, k), model::density_hf(r, k)])
                .collect();
            SweepTable::new(
                vec![
                    "r".to_string(),
                    "density_exact".to_string(),
                    "density_hf".to_string(),
                ],
                rows,
            )
        }
        Figure::LeadingWeights => k_table(&grid, &["k", "mu0", "mu1"], |k| {
            let sc = model::spectral_coefficients(k);
            let mu0 = sc.big_c.powi(3);
            vec![mu0, mu0 * sc.small_c]
        }),
        Figure::Purity => k_table(&grid, &["k", "purity"], |k| vec![model::purity(k)]),
        Figure::Entropy => k_table(&grid, &["k", "entropy"], |k| vec![model::entropy(k)]),
        Figure::MinimizedDeviation => {
            let alpha = bridge::alpha_min(quad_points.max(32))?;
            k_table(&grid, &["k", "deviation"], |k| {
                vec![bridge::deviation(alpha, k)]
            })
        }
        Figure::RelativeDeviations => bridge::relative_deviation_tables(&grid),
        Figure::EntropyVsEnergy => {
            let mut rows = Vec::with_capacity(grid.len());
            for &e in &grid {
                rows.push(vec![
                    e,
                    bridge::entropy_from_ecorr(e)?,
                    ising::ising_entropy_from_ecorr(e)?,
                ]);
            }
            SweepTable::new(
                vec![
                    "ecorr".to_string(),
                    "moshinsky_entropy".to_string(),
                    "ising_entropy".to_string(),
                ],
                rows,
            )
        }
        Figure::OverlapVsEntropy => bridge::overlap_vs_entropy_curve(&grid),
    }
}

fn k_table<F: Fn(Coupling) -> Vec<f64>>(
    grid: &[f64],
    header: &[&str],
    f: F,
) -> Result<SweepTable> {
    let mut rows = Vec::with_capacity(grid.len());
    for &k in grid {
        let kc = Coupling::new(k)?;
        let mut row = vec![k];
        row.extend(f(kc));
        rows.push(row);
    }
    SweepTable::new(header.iter().map(|s| s.to_string()).collect(), rows)
}

/// Sweep one scalar function of one parameter into a two-column table.
pub fn function_table(
    param_name: &str,
    value_name: &str,
    lo: f64,
    hi: f64,
    steps: usize,
    mut f: impl FnMut(f64) -> Result<f64>,
) -> Result<SweepTable> {
    let grid = linspace(lo, hi, steps)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &x in &grid {
        rows.push(vec![x, f(x)?]);
    }
    SweepTable::new(vec![param_name.to_string(), value_name.to_string()], rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn format_sig_shapes() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(-1.5, 12), "-1.5");
        assert_eq!(format_sig(0.001, 12), "0.001");
        assert_eq!(format_sig(1e-5, 12), "1e-5");
        assert_eq!(format_sig(1e12, 12), "1e12");
        assert_eq!(format_sig(123456789012.0, 12), "123456789012");
        assert_eq!(format_sig(0.40853862754587267, 12), "0.408538627546");
        assert_eq!(format_sig(3.0, 3), "3");
        assert_eq!(format_sig(2.0f64.sqrt(), 6), "1.41421");
        // Rounding can push the exponent past the fixed-notation window.
        assert_eq!(format_sig(-9.999999999999e2, 3), "-1e3");
        assert_eq!(format_sig(999.0, 3), "999");
    }

    #[test]
    fn format_sig_round_trips() {
        for &v in &[
            0.0,
            1.0,
            -0.25,
            std::f64::consts::PI,
            1e-17,
            -2.5e300,
            0.40853862754587267,
            7.2e-5,
        ] {
            let s = format_sig(v, CSV_SIG_DIGITS);
            let back: f64 = s.parse().unwrap();
            assert_eq!(format_sig(back, CSV_SIG_DIGITS), s, "value {v}");
        }
    }

    #[test]
    fn table_validation() {
        let ok = SweepTable::new(
            vec!["x".into(), "y".into()],
            vec![vec![0.0, 1.0], vec![1.0, 2.0]],
        );
        assert!(ok.is_ok());
        assert!(SweepTable::new(vec![], vec![]).is_err());
        assert!(SweepTable::new(vec!["a,b".into()], vec![]).is_err());
        assert!(SweepTable::new(vec!["x".into()], vec![vec![0.0, 1.0]]).is_err());
        assert!(SweepTable::new(
            vec!["x".into()],
            vec![vec![1.0], vec![1.0]]
        )
        .is_err());
        assert!(SweepTable::new(vec!["x".into()], vec![vec![f64::NAN]]).is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = figure_table(Figure::Entropy, 0.0, 1.0, 11, 64).unwrap();
        let text = t.to_csv();
        let back = SweepTable::parse_csv(&text).unwrap();
        assert_eq!(back.to_csv(), text);
        assert_eq!(back.header(), t.header());
    }

    #[test]
    fn linspace_endpoints_are_exact() {
        let g = linspace(0.0, 1.0, 101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 1.0);
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(1.0, 0.0, 5).is_err());
    }

    #[test]
    fn figure_defaults() {
        assert_eq!(Figure::parse("fig3"), Some(Figure::Densities));
        assert_eq!(Figure::parse("fig11"), None);
        assert_eq!(Figure::Densities.default_range(), (0.0, 3.0, 121));
        assert_eq!(Figure::Entropy.default_range(), (0.0, 1.0, 101));
    }

    #[test]
    fn ground_levels_row_at_zero_coupling() {
        let t = figure_table(Figure::GroundLevels, 0.0, 1.0, 101, 64).unwrap();
        assert_eq!(t.rows()[0], vec![0.0, 3.0, 3.0, 0.0]);
        assert_eq!(t.rows().len(), 101);
    }

    #[test]
    fn leading_weights_row_at_unit_coupling() {
        let t = figure_table(Figure::LeadingWeights, 0.0, 1.0, 101, 64).unwrap();
        let last = t.rows().last().unwrap();
        assert_relative_eq!(last[1], 0.9451621312536305, max_relative = 1e-12);
        assert_relative_eq!(last[2], 0.017602689416801747, max_relative = 1e-12);
    }

    #[test]
    fn bridge_figure_row_at_unit_coupling() {
        let t = figure_table(Figure::OverlapVsEntropy, 0.0, 1.0, 101, 64).unwrap();
        let last = t.rows().last().unwrap();
        assert_relative_eq!(last[0], 0.40853862754587267, max_relative = 1e-12);
        assert_relative_eq!(last[1], 0.9415713083186478, max_relative = 1e-12);
    }

    #[test]
    fn entropy_vs_energy_has_both_models() {
        let t = figure_table(Figure::EntropyVsEnergy, 0.0, 1.0, 11, 64).unwrap();
        assert_eq!(
            t.header(),
            &["ecorr", "moshinsky_entropy", "ising_entropy"]
        );
        assert_eq!(t.rows()[0], vec![0.0, 0.0, 0.0]);
        // The oscillator model carries more entropy per unit correlation
        // energy than the spin pair once e is appreciable.
        let last = t.rows().last().unwrap();
        assert!(last[1] > last[2]);
    }

    #[test]
    fn relative_deviation_figure_rejects_zero_start() {
        assert!(figure_table(Figure::RelativeDeviations, 0.0, 1.0, 10, 64).is_err());
        let (lo, hi, steps) = Figure::RelativeDeviations.default_range();
        assert!(figure_table(Figure::RelativeDeviations, lo, hi, steps, 64).is_ok());
    }

    #[test]
    fn function_table_sweeps() {
        let t = function_table("k", "hf", 0.0, 1.0, 5, |k| {
            Ok(model::hf_energy(Coupling::new(k)?))
        })
        .unwrap();
        assert_eq!(t.rows().len(), 5);
        assert_eq!(t.rows()[0][1], 3.0);
    }
}
