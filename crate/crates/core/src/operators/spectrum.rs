use alloc::string::String;
use alloc::vec::Vec;

/// One eigenvalue with its multiplicity and the spin assignments that
/// realize it.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
    pub labels: Vec<String>,
}

/// A discrete spectrum, sorted ascending, equal values merged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

/// Values closer than this (relative to `max(1, |value|)`) are merged.
const MERGE_TOL: f64 = 1e-9;

impl Spectrum {
    /// Builds a spectrum from `(value, multiplicity, label)` records.
    pub fn from_records(records: impl IntoIterator<Item = (f64, usize, String)>) -> Self {
        let mut raw: Vec<(f64, usize, String)> = records.into_iter().filter(|r| r.1 > 0).collect();
        raw.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.2.cmp(&b.2)));
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for (value, multiplicity, label) in raw {
            if let Some(last) = entries.last_mut() {
                if (value - last.value).abs() <= MERGE_TOL * last.value.abs().max(1.0) {
                    last.multiplicity += multiplicity;
                    if !last.labels.contains(&label) {
                        last.labels.push(label);
                    }
                    continue;
                }
            }
            entries.push(SpectrumEntry { value, multiplicity, labels: alloc::vec![label] });
        }
        for e in &mut entries {
            e.labels.sort();
        }
        Spectrum { entries }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplies every value by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Spectrum {
        Spectrum {
            entries: self.entries.iter().map(|e| SpectrumEntry { value: e.value * factor, ..e.clone() }).collect(),
        }
    }

    /// Whether `value` occurs, within `tol` relative to `max(1, |value|)`.
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        self.entries.iter().any(|e| (e.value - value).abs() <= tol * value.abs().max(1.0))
    }
}

/// Sums of one value from each list, with multiplied multiplicities.
pub(crate) fn minkowski_sum(lists: &[Vec<(f64, usize)>]) -> Vec<(f64, usize)> {
    let mut acc = alloc::vec![(0.0, 1usize)];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for &(a, ma) in &acc {
            for &(b, mb) in list {
                next.push((a + b, ma * mb));
            }
        }
        acc = merge_values(next);
    }
    acc
}

pub(crate) fn merge_values(mut values: Vec<(f64, usize)>) -> Vec<(f64, usize)> {
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (v, m) in values {
        match out.last_mut() {
            Some(last) if (v - last.0).abs() <= MERGE_TOL * last.0.abs().max(1.0) => last.1 += m,
            _ => out.push((v, m)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn records_are_sorted_and_merged() {
        let s = Spectrum::from_records(vec![
            (2.0, 1, "b".to_string()),
            (0.0, 3, "a".to_string()),
            (2.0 + 1e-12, 2, "a".to_string()),
            (1.0, 0, "c".to_string()),
        ]);
        assert_eq!(s.values(), vec![0.0, 2.0]);
        assert_eq!(s.entries()[1].multiplicity, 3);
        assert_eq!(s.entries()[1].labels, vec!["a".to_string(), "b".to_string()]);
        assert_eq!(s.total_multiplicity(), 6);
        assert!(s.contains(2.0, 1e-12));
    }

    #[test]
    fn minkowski_sums_multiply_multiplicities() {
        let out = minkowski_sum(&[vec![(0.0, 1), (1.0, 2)], vec![(1.0, 3), (2.0, 1)]]);
        assert_eq!(out, vec![(1.0, 3), (2.0, 7), (3.0, 2)]);
    }
}
