//! Labeled collections of state sequences, the unit both miners consume.

use std::collections::HashMap;

use crate::model::{Mss, Pos, State, VariableTable};

/// Index of a record within its dataset.
pub type RecordId = u32;

/// Dense class index; resolve the label through [`Dataset::class_label`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(u16);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One labeled sequence plus its per-state position index (1-based,
/// ascending), built once up front so miners never rescan intervals.
#[derive(Debug, Clone)]
pub struct Record {
    pub mss: Mss,
    pub class: ClassId,
    positions: HashMap<State, Vec<Pos>>,
}

impl Record {
    pub fn positions_of(&self, state: State) -> &[Pos] {
        self.positions.get(&state).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        self.positions.keys().copied()
    }
}

/// Labeled dataset: records, class labels in first-appearance order, and the
/// variable table everything was interned against.
#[derive(Debug, Clone)]
pub struct Dataset {
    vars: VariableTable,
    classes: Vec<String>,
    class_counts: Vec<usize>,
    records: Vec<Record>,
}

impl Dataset {
    pub fn new(vars: VariableTable, labeled: Vec<(Mss, String)>) -> Self {
        let mut classes: Vec<String> = Vec::new();
        let mut class_counts: Vec<usize> = Vec::new();
        let mut records = Vec::with_capacity(labeled.len());
        for (mss, label) in labeled {
            let idx = match classes.iter().position(|c| *c == label) {
                Some(i) => i,
                None => {
                    classes.push(label);
                    class_counts.push(0);
                    classes.len() - 1
                }
            };
            class_counts[idx] += 1;
            let positions = mss.state_positions();
            records.push(Record { mss, class: ClassId(idx as u16), positions });
        }
        Dataset { vars, classes, class_counts, records }
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn record(&self, id: RecordId) -> &Record {
        &self.records[id as usize]
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_label(&self, idx: usize) -> &str {
        &self.classes[idx]
    }

    pub fn class_labels(&self) -> &[String] {
        &self.classes
    }

    pub fn class_counts(&self) -> &[usize] {
        &self.class_counts
    }

    /// Per-class record counts over a sorted id list.
    pub fn support_counts(&self, ids: &[RecordId]) -> Vec<u32> {
        let mut counts = vec![0u32; self.num_classes()];
        for &id in ids {
            counts[self.record(id).class.index()] += 1;
        }
        counts
    }
}
