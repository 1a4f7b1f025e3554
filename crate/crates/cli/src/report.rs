use brachy_core::Error;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Duration;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit code for an error raised by the core library.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Usage(_) | Error::UnknownName(_) | Error::UnboundVariable(_) => EXIT_USAGE,
        Error::MalformedTable(_) => EXIT_USAGE,
        Error::CapExceeded { .. } | Error::BudgetExhausted { .. } => EXIT_RESOURCE,
        Error::NotARing | Error::NotAMonoid(_) | Error::NotBrachymorphism => EXIT_FAIL,
        Error::FixtureMismatch(_) | Error::Internal(_) => EXIT_FAIL,
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Item {
    pub key: String,
    pub value: String,
}

/// Outcome of one command. `stats` holds timing and search counters, the
/// only fields that may differ between identical runs.
#[derive(Debug, Clone, Serialize, Default)]
pub struct RunReport {
    pub command: String,
    pub items: Vec<Item>,
    pub counters: BTreeMap<String, u64>,
    pub exit_code: i32,
    pub stats: BTreeMap<String, String>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport { command, ..RunReport::default() }
    }

    pub fn item(&mut self, key: impl Into<String>, value: impl ToString) {
        self.items.push(Item { key: key.into(), value: value.to_string() });
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.counters.entry(key.to_string()).or_default() += n;
    }

    pub fn stat(&mut self, key: &str, value: impl ToString) {
        self.stats.insert(key.to_string(), value.to_string());
    }

    /// Raise the exit code to `code` unless a more severe one is set.
    pub fn fail(&mut self, code: i32) {
        let rank = |c: i32| match c {
            EXIT_PASS => 0,
            EXIT_FAIL => 1,
            EXIT_RESOURCE => 2,
            _ => 3,
        };
        if rank(code) > rank(self.exit_code) {
            self.exit_code = code;
        }
    }

    pub fn error(&mut self, e: &Error) {
        self.item("error", e);
        self.fail(exit_code_for(e));
    }

    pub fn set_wall_time(&mut self, d: Duration) {
        self.stat("wall_time_ms", format!("{:.3}", d.as_secs_f64() * 1000.0));
    }

    /// Line-oriented text: deterministic body, then the `[stats]` section.
    pub fn render(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for it in &self.items {
            out.push_str(&format!("{}: {}\n", it.key, it.value));
        }
        for (k, v) in &self.counters {
            out.push_str(&format!("count {k}: {v}\n"));
        }
        out.push_str(&format!("exit_code: {}\n", self.exit_code));
        out.push_str("[stats]\n");
        for (k, v) in &self.stats {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn severity_only_rises() {
        let mut r = RunReport::new("x".into());
        r.fail(EXIT_RESOURCE);
        r.fail(EXIT_FAIL);
        assert_eq!(r.exit_code, EXIT_RESOURCE);
        r.fail(EXIT_USAGE);
        assert_eq!(r.exit_code, EXIT_USAGE);
    }

    #[test]
    fn stats_come_last() {
        let mut r = RunReport::new("fixture table1".into());
        r.item("fixture", "table1");
        r.stat("wall_time_ms", 1);
        let text = r.render();
        assert!(text.ends_with("[stats]\nwall_time_ms: 1\n"));
        assert!(text.starts_with("command: fixture table1\nfixture: table1\n"));
    }
}
