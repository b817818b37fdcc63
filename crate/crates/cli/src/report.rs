use fiblab::fib::FibrationReport;
use fiblab::oracle::Tier;
use serde::Serialize;
use serde_json::Value;

/// What every command prints: human lines or one JSON document.
#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tier: Tier,
    pub pass: bool,
    pub warnings: Vec<String>,
    pub report: Value,
    #[serde(skip)]
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, tier: Tier) -> Self {
        Report { command, seed: None, tier, pass: true, warnings: Vec::new(), report: Value::Null, lines: Vec::new() }
    }

    pub fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    pub fn warn(&mut self, s: String) {
        self.warnings.push(s);
    }

    pub fn body(&mut self, v: Value) {
        self.report = v;
    }

    pub fn fibration(&mut self, rep: &FibrationReport, bound: usize) {
        for row in &rep.per_level {
            self.line(format!("level {}: {} vs {} [{}]", row.level, row.lhs, row.rhs, if row.pass { "ok" } else { "FAIL" }));
        }
        if let Some(w) = &rep.counterexample {
            self.line(format!("counterexample: {w}"));
        }
        if self.tier == Tier::Bounded {
            self.warn(format!("Kan conditions are checked only through dimension {bound}"));
        }
        self.pass = rep.verdict;
        self.body(serde_json::to_value(rep).expect("plain data"));
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("plain data") + "\n";
        }
        let mut out = format!("{}\n", self.command);
        if let Some(s) = self.seed {
            out += &format!("seed: {s}\n");
        }
        for l in &self.lines {
            out += &format!("  {l}\n");
        }
        for w in &self.warnings {
            out += &format!("warning: {w}\n");
        }
        let tier = match self.tier {
            Tier::Exact => "exact",
            Tier::Bounded => "bounded",
        };
        out += &format!("verdict: {} ({tier})\n", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}
