use std::fmt::Write;

use super::{ManifoldFile, MetricBody};
use crate::scalars::{ParamKind, ParamSpace};

fn param_lines(params: &ParamSpace) -> Vec<String> {
    let mut runs: Vec<(ParamKind, Vec<&str>)> = Vec::new();
    for (idx, sym) in params.symbols().iter().enumerate() {
        if sym.is_conjugate_half(idx) {
            continue;
        }
        match runs.last_mut() {
            Some((kind, names)) if *kind == sym.kind => names.push(&sym.name),
            _ => runs.push((sym.kind, vec![&sym.name])),
        }
    }
    runs.into_iter()
        .map(|(kind, names)| {
            let kind = match kind {
                ParamKind::Real => "real",
                ParamKind::Complex => "complex",
            };
            format!("param {} : {kind}", names.join(" "))
        })
        .collect()
}

/// Canonical text; `parse(&print(m)) == m`.
pub fn print(m: &ManifoldFile) -> String {
    let mut out = String::new();
    if let Some(name) = &m.name {
        writeln!(out, "name {name}").unwrap();
    }
    writeln!(out, "dim {}", m.dim).unwrap();
    for line in param_lines(&m.params) {
        writeln!(out, "{line}").unwrap();
    }
    for d in &m.differentials {
        writeln!(out, "d w{} = {}", d.index, d.form.display(&m.params)).unwrap();
    }
    for metric in &m.metrics {
        let body = match &metric.body {
            MetricBody::Diag(entries) => {
                let items: Vec<String> = entries
                    .iter()
                    .map(|e| e.display(&m.params).to_string())
                    .collect();
                format!("diag({})", items.join(", "))
            }
            MetricBody::Herm(entries) => {
                let items: Vec<String> = entries
                    .iter()
                    .map(|e| format!("{} {} {}", e.j, e.k, e.value.display(&m.params)))
                    .collect();
                format!("herm({})", items.join(", "))
            }
        };
        writeln!(out, "metric {} = {body}", metric.name).unwrap();
    }
    out
}
