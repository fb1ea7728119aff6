//! CSV tables with a units comment line and a fixed header.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Column name and unit.
pub type Column = (&'static str, &'static str);

pub const PHASE_DIAGRAM: [Column; 8] = [
    ("Omega", "Gamma_p"),
    ("J", "Gamma_p"),
    ("n0", "1"),
    ("abs_psi0", "1"),
    ("omega0", "Gamma_p"),
    ("purity", "1"),
    ("entropy", "nat"),
    ("phase", "IP|SFP|failed"),
];

pub const NESS_EXTRA: [Column; 3] = [
    ("converged", "bool"),
    ("residual", "Gamma_p"),
    ("steps", "1"),
];

pub const STATE: [Column; 7] = [
    ("point", "1"),
    ("n", "1"),
    ("m", "1"),
    ("sigma", "1"),
    ("sigma_p", "1"),
    ("re", "1"),
    ("im", "1"),
];

/// Spectrum columns after the k components.
pub const SPECTRUM_TAIL: [Column; 10] = [
    ("branch_label", "QP|QH|D|G|A|trace|other"),
    ("Re_omega", "Gamma_p"),
    ("Im_omega", "Gamma_p"),
    ("N_re", "1"),
    ("N_im", "1"),
    ("U_re", "1"),
    ("U_im", "1"),
    ("V_re", "1"),
    ("V_im", "1"),
    ("C", "1"),
];

pub const RESPONSE: [Column; 9] = [
    ("k_index", "1"),
    ("omega", "Gamma_p"),
    ("ReG", "1/Gamma_p"),
    ("ImG", "1/Gamma_p"),
    ("A", "1/Gamma_p"),
    ("absT2", "1"),
    ("absR2", "1"),
    ("absF2", "1"),
    ("sumrule_violation", "1"),
];

pub const EQUILIBRIUM: [Column; 4] = [
    ("k", "1/a"),
    ("omega_G_closed_form", "J"),
    ("omega_G_numeric", "J"),
    ("c_s", "J a"),
];

/// Shortest representation that parses back to the same f64.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

pub fn k_columns(d: usize) -> Vec<(String, String)> {
    let names = ["kx", "ky", "kz"];
    (0..d)
        .map(|a| {
            (
                if d <= 3 {
                    names[a].to_string()
                } else {
                    format!("k{}", a + 1)
                },
                "1/a".to_string(),
            )
        })
        .collect()
}

pub struct Table {
    w: csv::Writer<BufWriter<File>>,
}

impl Table {
    /// Creates the file and writes `# units:` plus the header row.
    pub fn create(path: &Path, cols: &[(String, String)]) -> std::io::Result<Table> {
        let mut f = BufWriter::new(File::create(path)?);
        let units: Vec<String> = cols.iter().map(|(n, u)| format!("{n}[{u}]")).collect();
        writeln!(f, "# units: {}", units.join(" "))?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(f);
        w.write_record(cols.iter().map(|(n, _)| n.as_str()))
            .map_err(to_io)?;
        Ok(Table { w })
    }

    pub fn row<I, S>(&mut self, fields: I) -> std::io::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.w.write_record(fields).map_err(to_io)
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.w.flush()
    }
}

pub fn owned(cols: &[Column]) -> Vec<(String, String)> {
    cols.iter()
        .map(|(n, u)| (n.to_string(), u.to_string()))
        .collect()
}

fn to_io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-17, 1e300, 0.0, 123456789.125] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }
}
