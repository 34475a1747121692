// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{Read, Write};

use super::LearningError;
use crate::scalar::Scalar;

/// Items (rows) described by named feature columns. Matrices produced from a
/// similarity measure are square with columns named like the rows.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix<T> {
    ids: Vec<String>,
    columns: Vec<String>,
    values: Vec<Vec<T>>,
    pub measure: String,
    pub provenance: String,
}

impl<T: Scalar> FeatureMatrix<T> {
    pub fn new(
        ids: Vec<String>,
        columns: Vec<String>,
        values: Vec<Vec<T>>,
    ) -> Result<Self, LearningError> {
        if values.len() != ids.len() {
            return Err(LearningError::Shape(format!(
                "{} ids but {} rows",
                ids.len(),
                values.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id) {
                return Err(LearningError::DuplicateItem(id.clone()));
            }
        }
        for (id, row) in ids.iter().zip(&values) {
            if row.len() != columns.len() {
                return Err(LearningError::Shape(format!(
                    "row `{id}` has {} entries, expected {}",
                    row.len(),
                    columns.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| !x.is_finite()) {
                return Err(LearningError::NonFinite(id.clone(), x.as_f64()));
            }
        }
        Ok(FeatureMatrix {
            ids,
            columns,
            values,
            measure: String::new(),
            provenance: String::new(),
        })
    }

    /// Square matrix whose columns carry the row ids.
    pub fn square(ids: Vec<String>, values: Vec<Vec<T>>) -> Result<Self, LearningError> {
        let columns = ids.clone();
        Self::new(ids, columns, values)
    }

    pub fn with_measure(mut self, measure: impl Into<String>) -> Self {
        self.measure = measure.into();
        self
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i][j]
    }

    pub fn n_items(&self) -> usize {
        self.ids.len()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    /// Column index carrying the same id as row `i`, if any.
    pub fn own_column(&self, i: usize) -> Option<usize> {
        self.columns.iter().position(|c| *c == self.ids[i])
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        self.ids == self.columns
            && (0..self.n_items())
                .all(|i| (0..i).all(|j| (self.values[i][j] - self.values[j][i]).abs() <= tol))
    }

    /// Rows reordered to follow `ids`.
    pub fn select_rows(&self, ids: &[String]) -> Result<Self, LearningError> {
        let index: HashMap<&str, usize> = self
            .ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let values = ids
            .iter()
            .map(|id| {
                index
                    .get(id.as_str())
                    .map(|&i| self.values[i].clone())
                    .ok_or_else(|| LearningError::UnknownItem(id.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut m = Self::new(ids.to_vec(), self.columns.clone(), values)?;
        m.measure = self.measure.clone();
        m.provenance = self.provenance.clone();
        Ok(m)
    }

    /// Columns side by side; all inputs must have the same row ids.
    pub fn hconcat(parts: &[FeatureMatrix<T>]) -> Result<Self, LearningError> {
        let first = parts
            .first()
            .ok_or_else(|| LearningError::Shape("no matrices".into()))?;
        let mut columns = Vec::new();
        let mut values = vec![Vec::new(); first.n_items()];
        for p in parts {
            if p.ids != first.ids {
                return Err(LearningError::Shape("row ids differ".into()));
            }
            let tag = if p.measure.is_empty() {
                String::new()
            } else {
                format!("{}:", p.measure)
            };
            columns.extend(p.columns.iter().map(|c| format!("{tag}{c}")));
            for (dst, src) in values.iter_mut().zip(&p.values) {
                dst.extend_from_slice(src);
            }
        }
        let measure = parts
            .iter()
            .map(|p| p.measure.as_str())
            .collect::<Vec<_>>()
            .join("+");
        Ok(Self::new(first.ids.clone(), columns, values)?.with_measure(measure))
    }

    /// CSV with a header row `id,<columns>` and one row per item.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), LearningError> {
        let mut wr = csv::Writer::from_writer(w);
        let mut header = vec!["id".to_string()];
        header.extend(self.columns.iter().cloned());
        wr.write_record(&header)?;
        for (id, row) in self.ids.iter().zip(&self.values) {
            let mut rec = vec![id.clone()];
            rec.extend(row.iter().map(|x| format!("{}", x.as_f64())));
            wr.write_record(&rec)?;
        }
        wr.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self, LearningError> {
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
        let columns: Vec<String> = rd.headers()?.iter().skip(1).map(String::from).collect();
        let mut ids = Vec::new();
        let mut values = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let mut it = rec.iter();
            let id = it.next().unwrap_or_default().to_string();
            let row = it
                .map(|s| {
                    s.trim().parse::<f64>().map(T::lit).map_err(|_| {
                        LearningError::Parse(format!("bad number `{s}` in row `{id}`"))
                    })
                })
                .collect::<Result<Vec<T>, _>>()?;
            ids.push(id);
            values.push(row);
        }
        Self::new(ids, columns, values)
    }
}

/// Gold standard: one class label per item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldStandard {
    items: Vec<String>,
    classes: BTreeMap<String, String>,
}

impl GoldStandard {
    pub fn new<I, A, B>(pairs: I) -> Result<Self, LearningError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut items = Vec::new();
        let mut classes = BTreeMap::new();
        for (id, class) in pairs {
            let id = id.into();
            if classes.insert(id.clone(), class.into()).is_some() {
                return Err(LearningError::DuplicateItem(id));
            }
            items.push(id);
        }
        let g = GoldStandard { items, classes };
        if g.class_labels().len() < 2 {
            return Err(LearningError::TooFewClasses);
        }
        Ok(g)
    }

    /// Lines `id<TAB>class`; blank lines and `#` comments are skipped.
    pub fn from_tsv(s: &str) -> Result<Self, LearningError> {
        let mut pairs = Vec::new();
        for (n, line) in s.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, class) = line.split_once('\t').ok_or_else(|| {
                LearningError::Parse(format!("line {}: expected id<TAB>class", n + 1))
            })?;
            pairs.push((id.trim().to_string(), class.trim().to_string()));
        }
        Self::new(pairs)
    }

    pub fn to_tsv(&self) -> String {
        self.items
            .iter()
            .map(|i| format!("{}\t{}\n", i, self.classes[i]))
            .collect()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn class_of(&self, item: &str) -> Option<&str> {
        self.classes.get(item).map(String::as_str)
    }

    /// Sorted distinct class labels.
    pub fn class_labels(&self) -> Vec<String> {
        self.classes
            .values()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Class indices (into [`class_labels`](Self::class_labels)) aligned with `ids`.
    pub fn labels_for(&self, ids: &[String]) -> Result<Vec<usize>, LearningError> {
        let labels = self.class_labels();
        ids.iter()
            .map(|id| {
                let c = self
                    .class_of(id)
                    .ok_or_else(|| LearningError::UnknownItem(id.clone()))?;
                Ok(labels
                    .binary_search_by(|l| l.as_str().cmp(c))
                    .expect("class present"))
            })
            .collect()
    }
}
