//! HOA v1 and Graphviz renderings of an automaton.

use std::fmt::{Display, Write};

use crate::automaton::BuchiAutomaton;
use crate::literal::LiteralSet;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn hoa_label<S>(a: &BuchiAutomaton<S>, label: &LiteralSet) -> String {
    if label.is_empty() {
        return "t".to_string();
    }
    label
        .erased()
        .iter()
        .map(|l| {
            let i = a
                .ap()
                .iter()
                .position(|p| *p == l.name)
                .expect("label proposition missing from AP");
            if l.positive {
                i.to_string()
            } else {
                format!("!{i}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

/// HOA v1 with state-based Büchi acceptance.
pub fn export_hoa<S: Display>(a: &BuchiAutomaton<S>, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "HOA: v1").unwrap();
    writeln!(out, "name: {}", quote(name)).unwrap();
    writeln!(out, "States: {}", a.state_count()).unwrap();
    writeln!(out, "Start: {}", a.initial()).unwrap();
    write!(out, "AP: {}", a.ap().len()).unwrap();
    for p in a.ap() {
        write!(out, " {}", quote(p)).unwrap();
    }
    out.push('\n');
    writeln!(out, "acc-name: Buchi").unwrap();
    writeln!(out, "Acceptance: 1 Inf(0)").unwrap();
    writeln!(out, "properties: trans-labels explicit-labels state-acc").unwrap();
    writeln!(out, "--BODY--").unwrap();
    for (s, state) in a.states().iter().enumerate() {
        write!(out, "State: {s} {}", quote(&state.to_string())).unwrap();
        if a.is_accepting(s) {
            out.push_str(" {0}");
        }
        out.push('\n');
        for t in a.transitions(s) {
            writeln!(out, "[{}] {}", hoa_label(a, &t.label), t.target).unwrap();
        }
    }
    writeln!(out, "--END--").unwrap();
    out
}

/// Graphviz digraph; accepting states are double circles.
pub fn export_dot<S: Display>(a: &BuchiAutomaton<S>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph buchi {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  init [shape=point];").unwrap();
    for (s, state) in a.states().iter().enumerate() {
        let shape = if a.is_accepting(s) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(
            out,
            "  {s} [shape={shape}, label={}];",
            quote(&format!("s{s}: {state}"))
        )
        .unwrap();
    }
    writeln!(out, "  init -> {};", a.initial()).unwrap();
    for s in 0..a.state_count() {
        for t in a.transitions(s) {
            writeln!(
                out,
                "  {s} -> {} [label={}];",
                t.target,
                quote(&t.label.to_string())
            )
            .unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Structural check of an HOA document: header fields present, state
/// count matches the body, edge targets and AP indices in range.
pub fn validate_hoa(doc: &str) -> Result<(), String> {
    let mut lines = doc.lines();
    if lines.next() != Some("HOA: v1") {
        return Err("missing `HOA: v1`".into());
    }
    let (mut states, mut ap, mut start) = (None, None, None);
    let mut acc_ok = false;
    for line in lines.by_ref() {
        if line == "--BODY--" {
            break;
        }
        if let Some(v) = line.strip_prefix("States: ") {
            states = v.parse::<usize>().ok();
        } else if let Some(v) = line.strip_prefix("AP: ") {
            ap = v
                .split_whitespace()
                .next()
                .and_then(|n| n.parse::<usize>().ok());
        } else if let Some(v) = line.strip_prefix("Start: ") {
            start = v.parse::<usize>().ok();
        } else if line == "Acceptance: 1 Inf(0)" {
            acc_ok = true;
        }
    }
    let states = states.ok_or("missing States")?;
    let ap = ap.ok_or("missing AP")?;
    let start = start.ok_or("missing Start")?;
    if !acc_ok {
        return Err("missing Buchi acceptance".into());
    }
    if start >= states {
        return Err("start state out of range".into());
    }
    let mut seen = 0;
    let mut ended = false;
    for line in lines {
        if line == "--END--" {
            ended = true;
            break;
        }
        if let Some(rest) = line.strip_prefix("State: ") {
            let id: usize = rest
                .split_whitespace()
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or("bad state line")?;
            if id != seen {
                return Err(format!("state {id} out of order"));
            }
            seen += 1;
        } else if let Some(rest) = line.strip_prefix('[') {
            let (label, target) = rest.split_once("] ").ok_or("bad edge line")?;
            let target: usize = target.trim().parse().map_err(|_| "bad edge target")?;
            if target >= states {
                return Err(format!("edge target {target} out of range"));
            }
            if label != "t" {
                for part in label.split('&') {
                    let idx: usize = part
                        .trim_start_matches('!')
                        .parse()
                        .map_err(|_| format!("bad label `{label}`"))?;
                    if idx >= ap {
                        return Err(format!("AP index {idx} out of range"));
                    }
                }
            }
        } else {
            return Err(format!("unexpected body line `{line}`"));
        }
    }
    if !ended {
        return Err("missing --END--".into());
    }
    if seen != states {
        return Err(format!("States: {states} but body has {seen}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{build_general, translate, Mode, Options};
    use crate::formula::Formula;
    use crate::parser::parse;

    #[test]
    fn until_hoa() {
        let a = translate(&parse("a U b").unwrap(), Mode::Auto, &Options::default())
            .unwrap()
            .automaton;
        let doc = export_hoa(&a, "a U b");
        assert!(doc.starts_with("HOA: v1\n"));
        assert!(doc.contains("States: 2\n"));
        assert!(doc.contains("AP: 2 \"a\" \"b\"\n"));
        assert!(doc.contains("Acceptance: 1 Inf(0)\n"));
        assert!(doc.contains("[1] 1\n") && doc.contains("[0] 0\n") && doc.contains("[t] 1\n"));
        validate_hoa(&doc).unwrap();
        assert_eq!(doc, export_hoa(&a, "a U b"));
    }

    #[test]
    fn dead_automaton_hoa() {
        let a = translate(&Formula::ff(), Mode::Auto, &Options::default())
            .unwrap()
            .automaton;
        let doc = export_hoa(&a, "False");
        assert!(doc.contains("States: 1\n"));
        assert!(doc.contains("AP: 0\n"));
        validate_hoa(&doc).unwrap();
    }

    #[test]
    fn negative_labels() {
        let a = translate(&parse("!a U b").unwrap(), Mode::Auto, &Options::default())
            .unwrap()
            .automaton;
        let doc = export_hoa(&a, "x");
        assert!(doc.contains("[!0] 0\n"), "{doc}");
    }

    #[test]
    fn always_two_untils_dot() {
        let a = build_general(
            &parse("G (b U c & d U e)").unwrap().without_occurrences(),
            &Options::default(),
        );
        let dot = export_dot(&a);
        assert_eq!(dot.matches("doublecircle").count(), 1);
        assert!(dot.contains("label=\"b & e\""));
    }

    #[test]
    fn validator_rejects_broken_documents() {
        let a = translate(&parse("a U b").unwrap(), Mode::Auto, &Options::default())
            .unwrap()
            .automaton;
        let doc = export_hoa(&a, "a U b");
        assert!(validate_hoa(&doc.replace("States: 2", "States: 3")).is_err());
        assert!(validate_hoa(&doc.replace("[1] 1", "[7] 1")).is_err());
        assert!(validate_hoa(&doc.replace("--END--\n", "")).is_err());
    }
}
