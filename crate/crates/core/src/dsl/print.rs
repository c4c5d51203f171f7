use std::borrow::Cow;
use std::fmt::{self, Write};

use super::Workspace;
use crate::algebra::Operations;
use crate::qfo::ThresholdStructure;
use crate::{Algebra, Rational};

/// The name as written in source: bare when it is an identifier or a
/// number, quoted otherwise.
pub fn format_name(name: &str) -> Cow<'_, str> {
    let ident = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let number = !name.is_empty() && name.bytes().all(|b| b.is_ascii_digit());
    if ident || number {
        Cow::Borrowed(name)
    } else {
        Cow::Owned(format!(
            "\"{}\"",
            name.replace('\\', "\\\\").replace('"', "\\\"")
        ))
    }
}

fn write_ops(out: &mut String, ops: &Operations) {
    let names: Vec<Cow<'_, str>> = ops.carrier().map(|e| format_name(e)).collect();
    let _ = writeln!(out, "  carrier {{ {} }}", names.join(" "));
    for (k, (symbol, table)) in ops.tables().iter().enumerate() {
        for (args, v) in ops.entries(k) {
            if table.arity() == 0 {
                let _ = writeln!(out, "  op {symbol} = {}", names[v]);
            } else {
                let args: Vec<&str> = args.iter().map(|&a| &*names[a]).collect();
                let _ = writeln!(out, "  op {symbol}({}) = {}", args.join(", "), names[v]);
            }
        }
    }
}

pub fn print_algebra(name: &str, a: &Algebra) -> String {
    let mut out = format!("algebra {} {{\n", format_name(name));
    write_ops(&mut out, a.ops());
    for i in 0..a.size() {
        for j in i + 1..a.size() {
            let _ = writeln!(
                out,
                "  dist {} {} = {}",
                format_name(a.element(i)),
                format_name(a.element(j)),
                a.distance(i, j)
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn print_structure(name: &str, m: &ThresholdStructure<Rational>) -> String {
    let mut out = format!("structure {} {{\n", format_name(name));
    write_ops(&mut out, m.ops());
    let zero = crate::qfo::Threshold::closed(Rational::from_integer(0));
    let mut pair = |i: usize, j: usize| {
        let _ = writeln!(
            out,
            "  pair {} {} : {}",
            format_name(m.element(i)),
            format_name(m.element(j)),
            m.get(i, j)
        );
    };
    for i in 0..m.size() {
        if *m.get(i, i) != zero {
            pair(i, i);
        }
        for j in i + 1..m.size() {
            pair(i, j);
            if m.get(j, i) != m.get(i, j) {
                pair(j, i);
            }
        }
    }
    out.push_str("}\n");
    out
}

impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols: Vec<String> = self
            .signature
            .symbols()
            .map(|(s, k)| format!("{s}/{k}"))
            .collect();
        writeln!(f, "signature {{ {} }}", symbols.join("; "))?;
        let vars: Vec<&str> = self.signature.variables().iter().map(|v| &**v).collect();
        writeln!(f, "vars {{ {} }}", vars.join(" "))?;
        for (name, a) in &self.algebras {
            write!(f, "\n{}", print_algebra(name, a))?;
        }
        for (name, axioms) in &self.theories {
            writeln!(f, "\ntheory {} {{", format_name(name))?;
            for ax in axioms {
                writeln!(f, "  {ax}")?;
            }
            writeln!(f, "}}")?;
        }
        for (name, m) in &self.structures {
            write!(f, "\n{}", print_structure(name, m))?;
        }
        for (name, phi) in &self.formulas {
            writeln!(f, "\nformula {} {{ {phi} }}", format_name(name))?;
        }
        for (name, proof) in &self.proofs {
            writeln!(f, "\nproof {} {{", format_name(name))?;
            for line in proof.to_string().lines() {
                writeln!(f, "  {line}")?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}
