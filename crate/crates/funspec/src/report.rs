//! Report format. Serialized through `serde_json::Value`, whose maps keep
//! keys sorted, so equal reports are equal bytes.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// A passing check whose search was cut short by a budget.
    pub fn bounded(ok: bool, complete: bool) -> Self {
        match (ok, complete) {
            (false, _) => Status::Fail,
            (true, true) => Status::Pass,
            (true, false) => Status::Inconclusive,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    /// The statement this check stands in for.
    pub shadows: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub kind: String,
    pub seed: u64,
    pub tasks: Vec<TaskReport>,
    pub status: Status,
}

impl Report {
    pub fn new(instance: String, kind: &str, seed: u64, tasks: Vec<TaskReport>) -> Self {
        let status = tasks.iter().map(|t| t.status).max().unwrap_or(Status::Pass);
        Report { instance, kind: kind.into(), seed, tasks, status }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = format!("{} [{}]\n", self.instance, self.status.label());
        for t in &self.tasks {
            out.push_str(&format!("  {:<13} {:<13} {}\n", t.task, t.status.label(), t.shadows));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn worst_status_wins_and_keys_are_sorted() {
        let t = |s| TaskReport { task: "x".into(), shadows: "y".into(), status: s, details: json!({"b": 1, "a": 2}) };
        let r = Report::new("I".into(), "quiver", 1, vec![t(Status::Pass), t(Status::Inconclusive)]);
        assert_eq!(r.status, Status::Inconclusive);
        let r = Report::new("I".into(), "quiver", 1, vec![t(Status::Fail), t(Status::Inconclusive)]);
        assert_eq!(r.status.exit_code(), 1);
        let text = r.to_json();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.find("\"instance\"").unwrap() < text.find("\"kind\"").unwrap());
    }
}
