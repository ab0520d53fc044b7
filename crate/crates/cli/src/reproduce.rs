//! Regenerates the reference tables (affine `H_2`, Poincaré polynomials,
//! torsion orders of central quotients) and diffs them against the
//! recorded values.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use artin_core::homology::AbelianGroup;
use artin_core::modeltheory::torsion_profile;
use artin_core::{build_complex, homology_at, poincare_of_subset, preset_graph, CoxeterType, IntPolynomial};
use clap::ValueEnum;

use crate::json::{CheckJson, ReportJson};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Table {
    Affine,
    Poincare,
    Torsion,
}

impl Table {
    fn name(self) -> &'static str {
        match self {
            Table::Affine => "affine-h2",
            Table::Poincare => "poincare",
            Table::Torsion => "torsion",
        }
    }
}

#[derive(Debug, Clone)]
enum Value {
    Group(AbelianGroup),
    Poly(IntPolynomial),
    Orders(BTreeSet<u64>),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Group(g) => g.to_string(),
            Value::Poly(p) => p.to_string(),
            Value::Orders(o) => {
                let items: Vec<String> = o.iter().map(u64::to_string).collect();
                format!("{{{}}}", items.join(", "))
            }
        }
    }

    /// A deliberately wrong variant of the value, for the harness self-test.
    fn corrupted(&self) -> Value {
        match self {
            Value::Group(g) => Value::Group(AbelianGroup::from_cyclic_factors(
                g.free_rank() + 1,
                g.torsion().iter().cloned(),
            )),
            Value::Poly(p) => Value::Poly(p + &IntPolynomial::one()),
            Value::Orders(o) => {
                let mut o = o.clone();
                o.insert(97);
                Value::Orders(o)
            }
        }
    }
}

struct Expected {
    table: Table,
    item: String,
    /// Presets that must all produce `value`.
    members: Vec<String>,
    value: Value,
}

fn group(s: &str) -> Value {
    Value::Group(s.parse().expect("recorded group"))
}

fn poly(c: &[i64]) -> Value {
    Value::Poly(IntPolynomial::from_i64(c))
}

fn orders(o: &[u64]) -> Value {
    Value::Orders(o.iter().copied().collect())
}

fn range(prefix: &str, lo: usize, hi: usize) -> Vec<String> {
    (lo..=hi).map(|n| format!("{prefix}{n}")).collect()
}

fn recorded() -> Vec<Expected> {
    let e = |table, item: &str, members: Vec<String>, value| Expected {
        table,
        item: item.to_string(),
        members,
        value,
    };
    let one = |s: &str| vec![s.to_string()];
    vec![
        e(Table::Affine, "~A1", one("~A1"), group("0")),
        e(Table::Affine, "~A2", one("~A2"), group("Z")),
        e(Table::Affine, "~A3", one("~A3"), group("Z + (Z/2)^2")),
        e(Table::Affine, "~An, 4 <= n <= 8", range("~A", 4, 8), group("Z + Z/2")),
        e(Table::Affine, "~D4", one("~D4"), group("(Z/2)^6")),
        e(Table::Affine, "~Dn, 5 <= n <= 8", range("~D", 5, 8), group("(Z/2)^3")),
        e(Table::Affine, "~En, n = 6, 7, 8", range("~E", 6, 8), group("Z/2")),
        e(Table::Poincare, "A1", one("A1"), poly(&[1, 1])),
        e(Table::Poincare, "A1+A1", one("A1+A1"), poly(&[1, 2, 1])),
        e(Table::Poincare, "A2", one("A2"), poly(&[1, 2, 2, 1])),
        e(Table::Poincare, "A1+A1+A1", one("A1+A1+A1"), poly(&[1, 3, 3, 1])),
        e(Table::Poincare, "A2+A1", one("A2+A1"), poly(&[1, 3, 4, 3, 1])),
        e(Table::Poincare, "A3", one("A3"), poly(&[1, 3, 5, 6, 5, 3, 1])),
        e(Table::Torsion, "A5", one("A5"), orders(&[2, 3, 5, 6])),
        e(Table::Torsion, "B6", one("B6"), orders(&[2, 3, 6])),
        e(Table::Torsion, "D6", one("D6"), orders(&[3, 5])),
        e(Table::Torsion, "D7", one("D7"), orders(&[2, 3, 4, 6, 7, 12])),
        e(Table::Torsion, "E6", one("E6"), orders(&[2, 3, 4, 6, 8, 9, 12])),
        e(Table::Torsion, "E7", one("E7"), orders(&[3, 7, 9])),
        e(Table::Torsion, "E8", one("E8"), orders(&[2, 3, 4, 5, 6, 10, 12, 15])),
        e(Table::Torsion, "F4", one("F4"), orders(&[2, 3, 4, 6])),
        e(Table::Torsion, "H3", one("H3"), orders(&[3, 5])),
        e(Table::Torsion, "H4", one("H4"), orders(&[2, 3, 5, 6, 10, 15])),
        e(Table::Torsion, "I2(12)", one("I2(12)"), orders(&[2, 3, 6])),
        e(Table::Torsion, "I2(9)", one("I2(9)"), orders(&[2, 3, 9])),
    ]
}

fn compute(table: Table, preset: &str) -> Result<Value, CliError> {
    let internal = |e: &dyn std::fmt::Display| CliError::Domain(format!("{preset}: {e}"));
    match table {
        Table::Affine => {
            let g = preset_graph(preset).map_err(|e| internal(&e))?;
            let c = build_complex(&g, 3).map_err(|e| internal(&e))?;
            Ok(Value::Group(homology_at(&c, 2).map_err(|e| internal(&e))?))
        }
        Table::Poincare => {
            let g = preset_graph(preset).map_err(|e| internal(&e))?;
            let all: Vec<usize> = (0..g.len()).collect();
            Ok(Value::Poly(poincare_of_subset(&g, &all).map_err(|e| internal(&e))?))
        }
        Table::Torsion => {
            let t: CoxeterType = preset.parse().map_err(|e| internal(&e))?;
            let p = torsion_profile(&t).map_err(|e| internal(&e))?;
            Ok(Value::Orders(p.orders))
        }
    }
}

/// Runs the checks of the selected tables (all when `tables` is empty).
/// With `inject`, the first recorded value is replaced by a wrong one.
pub fn reproduce(tables: &[Table], inject: bool) -> Result<ReportJson, CliError> {
    let mut selected: Vec<Expected> = recorded()
        .into_iter()
        .filter(|e| tables.is_empty() || tables.contains(&e.table))
        .collect();
    if inject {
        if let Some(first) = selected.first_mut() {
            first.value = first.value.corrupted();
        }
    }
    let mut checks = Vec::with_capacity(selected.len());
    for e in &selected {
        let expected = e.value.render();
        let mut ok = true;
        let mut computed = Vec::new();
        for m in &e.members {
            let got = compute(e.table, m)?.render();
            if got != expected {
                ok = false;
            }
            if e.members.len() == 1 {
                computed.push(got);
            } else {
                computed.push(format!("{m}: {got}"));
            }
        }
        let computed = if ok && e.members.len() > 1 {
            expected.clone()
        } else {
            computed.join("; ")
        };
        checks.push(CheckJson {
            table: e.table.name().to_string(),
            item: e.item.clone(),
            expected,
            computed,
            ok,
        });
    }
    let mismatches = checks.iter().filter(|c| !c.ok).count();
    Ok(ReportJson {
        total: checks.len(),
        mismatches,
        checks,
    })
}

pub fn render_text(r: &ReportJson) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let mark = if c.ok { "ok" } else { "MISMATCH" };
        let _ = writeln!(
            out,
            "[{mark}] {} {}: expected {}, computed {}",
            c.table, c.item, c.expected, c.computed
        );
    }
    let _ = write!(out, "{} checks, {} mismatches", r.total, r.mismatches);
    out
}
