//! Run reports for `stats` and `bench`.

use serde::Serialize;
use twkit::UpdateStats;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Outcome {
    Decomposition { width: usize },
    TwExceeds,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counters {
    pub updates: u64,
    pub pin_updates: u64,
    pub recomputed_nodes: u64,
    pub max_recomputed_nodes: usize,
    pub locality_violations: u64,
    pub table_entries_computed: u64,
    pub memo_flushes: u64,
}

impl From<&UpdateStats> for Counters {
    fn from(s: &UpdateStats) -> Self {
        Counters {
            updates: s.updates,
            pin_updates: s.pin_updates,
            recomputed_nodes: s.recomputed,
            max_recomputed_nodes: s.max_recomputed,
            locality_violations: s.locality_violations,
            table_entries_computed: s.entries,
            memo_flushes: s.flushes,
        }
    }
}

/// One decomposition run. `bags` is present iff the outcome is a
/// decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mode: String,
    pub outcome: Outcome,
    pub bags: Option<usize>,
    pub wall_time_ms: f64,
    /// Largest number of memoised table entries held at once.
    pub peak_table_entries: usize,
    pub counters: Counters,
}

impl RunReport {
    pub fn table_header() -> String {
        format!("{:<28} {:>8} {:>9} {:>3} {:>8} {:>11} {:>8} {:>11}", "input", "n", "m", "k", "mode", "outcome", "bags", "time_ms")
    }

    pub fn table_row(&self) -> String {
        let outcome = match self.outcome {
            Outcome::Decomposition { width } => format!("width {width}"),
            Outcome::TwExceeds => "tw > k".to_string(),
        };
        let bags = self.bags.map_or("-".to_string(), |b| b.to_string());
        format!(
            "{:<28} {:>8} {:>9} {:>3} {:>8} {:>11} {:>8} {:>11.1}",
            self.input, self.n, self.m, self.k, self.mode, outcome, bags, self.wall_time_ms
        )
    }
}
