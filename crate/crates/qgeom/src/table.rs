use std::fmt::Write as _;

use qgeom_core::Spectrum;

/// Output format of a result table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Pretty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub value: f64,
    pub multiplicity: usize,
    pub labels: Vec<String>,
}

/// Rows of `value, multiplicity, labels` with a unit description.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub title: String,
    pub unit: String,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(title: impl Into<String>, unit: impl Into<String>) -> Self {
        Table { title: title.into(), unit: unit.into(), rows: Vec::new() }
    }

    pub fn push(&mut self, value: f64, multiplicity: usize, label: impl Into<String>) {
        self.rows.push(Row { value, multiplicity, labels: vec![label.into()] });
    }

    /// A spectrum with every value multiplied by `scale`.
    pub fn from_spectrum(title: impl Into<String>, unit: impl Into<String>, spectrum: &Spectrum, scale: f64) -> Self {
        let mut t = Table::new(title, unit);
        for e in spectrum.entries() {
            t.rows.push(Row { value: e.value * scale, multiplicity: e.multiplicity, labels: e.labels.clone() });
        }
        t
    }

    /// Values use the shortest representation that round-trips, with an
    /// exponent for very large or small magnitudes.
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str("value,multiplicity,labels\n");
                for r in &self.rows {
                    writeln!(out, "{:?},{},{}", r.value, r.multiplicity, csv_field(&r.labels.join(";"))).unwrap();
                }
            }
            Format::Pretty => {
                writeln!(out, "# {}", self.title).unwrap();
                writeln!(out, "# unit: {}", self.unit).unwrap();
                let values: Vec<String> = self.rows.iter().map(|r| format!("{:?}", r.value)).collect();
                let w = values.iter().map(String::len).max().unwrap_or(0).max(5);
                let mults: Vec<String> = self.rows.iter().map(|r| r.multiplicity.to_string()).collect();
                let wm = mults.iter().map(String::len).max().unwrap_or(0).max(12);
                writeln!(out, "{:>w$}  {:>wm$}  labels", "value", "multiplicity").unwrap();
                for ((r, v), m) in self.rows.iter().zip(&values).zip(&mults) {
                    writeln!(out, "{v:>w$}  {m:>wm$}  {}", r.labels.join(" ")).unwrap();
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new("t", "u");
        t.push(0.1 + 0.2, 3, "j=(1/2 1)");
        t.push(2.0, 1, "a,b");
        t.push(3e-14, 1, "tiny");
        assert_eq!(
            t.render(Format::Csv),
            "value,multiplicity,labels\n0.30000000000000004,3,j=(1/2 1)\n2.0,1,\"a,b\"\n3e-14,1,tiny\n"
        );
    }

    #[test]
    fn pretty_has_units() {
        let mut t = Table::new("area", "4πγℓ_P²");
        t.push(1.5, 2, "x");
        let s = t.render(Format::Pretty);
        assert!(s.starts_with("# area\n# unit: 4πγℓ_P²\n"));
        assert!(s.ends_with("  1.5             2  x\n"));
    }
}
