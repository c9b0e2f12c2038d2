//! Ring-level property reports: a fixed-order list of named verdicts with
//! optional witnesses, serializable to JSON with a stable field layout.

use serde::Serialize;

/// Report rows, in emission order. The first seven are decided element by
/// element; the rest are structural.
pub const PROPERTY_ORDER: [&str; 17] = [
    "weakly_j_quasipolar",
    "j_quasipolar",
    "quasipolar",
    "clean",
    "strongly_clean",
    "strongly_j_clean",
    "uniquely_clean",
    "feckly_reduced",
    "rj_commutative",
    "rj_cubed_identity",
    "j_equals_j_sharp",
    "directly_finite",
    "commutative",
    "abelian",
    "reduced",
    "boolean",
    "local",
];

/// Verdict-level implications that must hold for every ring; used as a
/// coherence check on finished reports.
pub const IMPLICATIONS: [(&str, &str); 7] = [
    ("j_quasipolar", "weakly_j_quasipolar"),
    ("weakly_j_quasipolar", "quasipolar"),
    ("quasipolar", "strongly_clean"),
    ("strongly_clean", "clean"),
    ("strongly_j_clean", "strongly_clean"),
    ("uniquely_clean", "clean"),
    ("boolean", "abelian"),
];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PropertyEntry {
    pub name: String,
    pub verdict: bool,
    /// Least violating element (or pair, joined by " & ") when the verdict
    /// is false; absent when it holds.
    pub witness: Option<String>,
    /// Auxiliary count for properties that carry one (clean decompositions
    /// of the uniquely_clean witness).
    pub count: Option<u64>,
}

impl PropertyEntry {
    pub fn holds(name: &str) -> PropertyEntry {
        PropertyEntry { name: name.to_string(), verdict: true, witness: None, count: None }
    }

    pub fn fails(name: &str, witness: String) -> PropertyEntry {
        PropertyEntry { name: name.to_string(), verdict: false, witness: Some(witness), count: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub ring: String,
    pub order: u64,
    pub properties: Vec<PropertyEntry>,
    pub elapsed_ms: u64,
}

impl PropertyReport {
    pub fn entry(&self, name: &str) -> Option<&PropertyEntry> {
        self.properties.iter().find(|e| e.name == name)
    }

    /// Verdict lookup; panics on unknown names so misspelled property names
    /// fail loudly in checks.
    pub fn verdict(&self, name: &str) -> bool {
        self.entry(name).unwrap_or_else(|| panic!("no property named {name}")).verdict
    }

    /// The (name, verdict) profile. Two isomorphic rings produce equal
    /// profiles even when their witness literals differ.
    pub fn profile(&self) -> Vec<(String, bool)> {
        self.properties.iter().map(|e| (e.name.clone(), e.verdict)).collect()
    }

    /// Implication pairs violated by this report, empty when coherent.
    pub fn implication_violations(&self) -> Vec<String> {
        IMPLICATIONS
            .iter()
            .filter(|(from, to)| self.verdict(from) && !self.verdict(to))
            .map(|(from, to)| format!("{from} -> {to}"))
            .collect()
    }

    pub fn render_text(&self, witnesses: bool) -> String {
        let mut out = format!("ring {} (order {})\n", self.ring, self.order);
        for e in &self.properties {
            let verdict = if e.verdict { "true" } else { "false" };
            out.push_str(&format!("  {:<22} {}", e.name, verdict));
            if witnesses {
                if let Some(w) = &e.witness {
                    out.push_str(&format!("  witness {w}"));
                }
                if let Some(c) = e.count {
                    out.push_str(&format!("  count {c}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(flags: &[(&str, bool)]) -> PropertyReport {
        PropertyReport {
            ring: "Z1".into(),
            order: 1,
            properties: PROPERTY_ORDER
                .iter()
                .map(|n| {
                    let v = flags.iter().find(|(f, _)| f == n).map(|&(_, v)| v).unwrap_or(true);
                    PropertyEntry { name: n.to_string(), verdict: v, witness: None, count: None }
                })
                .collect(),
            elapsed_ms: 0,
        }
    }

    #[test]
    fn coherent_report_has_no_violations() {
        assert!(report(&[]).implication_violations().is_empty());
        let all_false: Vec<(&str, bool)> = PROPERTY_ORDER.iter().map(|&n| (n, false)).collect();
        assert!(report(&all_false).implication_violations().is_empty());
    }

    #[test]
    fn broken_lattice_is_reported() {
        // Unlisted flags default to true, so the break sits between
        // quasipolar and its two upstream neighbours; edges whose source is
        // false are vacuous and must not be listed.
        let r = report(&[("quasipolar", false), ("strongly_clean", false)]);
        let v = r.implication_violations();
        assert!(v.contains(&"weakly_j_quasipolar -> quasipolar".to_string()));
        assert!(v.contains(&"strongly_j_clean -> strongly_clean".to_string()));
        assert!(!v.contains(&"quasipolar -> strongly_clean".to_string()));
        assert!(!v.contains(&"strongly_clean -> clean".to_string()));
    }

    #[test]
    fn json_shape_is_stable() {
        let r = report(&[("boolean", false)]);
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.starts_with("{\"ring\":\"Z1\",\"order\":1,\"properties\":[{\"name\":"));
        assert!(js.contains("\"witness\":null"));
        assert!(js.ends_with("\"elapsed_ms\":0}"));
    }
}
