use std::fmt::Write;

use super::Script;
use crate::engine::SymbolKind;

/// Canonical rendering: declarations, equations, facts, degrees and
/// specializations, one statement per line.
pub fn print(s: &Script) -> String {
    let mut out = String::new();
    for sym in &s.symbols {
        let name = sym.name();
        let _ = match sym.kind() {
            SymbolKind::MultiAdditive(2) => writeln!(out, "biadditive {name};"),
            SymbolKind::MultiAdditive(n) => writeln!(out, "multiadditive {name} arity {n};"),
            SymbolKind::Additive => writeln!(out, "additive {name};"),
            SymbolKind::Homomorphism => writeln!(out, "hom {name};"),
            SymbolKind::Power(n) => writeln!(out, "power {name} {n};"),
            SymbolKind::Scalar => writeln!(out, "scalar {name};"),
        };
    }
    for eq in &s.equations {
        let _ = writeln!(out, "eq {}: {} = {};", eq.name, eq.lhs, eq.rhs);
    }
    for f in &s.facts {
        let label = f.name().map(|n| format!(" {n}")).unwrap_or_default();
        let _ = writeln!(out, "fact{label}: {} = {};", f.lhs(), f.rhs());
    }
    for (name, n) in &s.degrees {
        let _ = writeln!(out, "degree {name} {n};");
    }
    for sp in &s.specializations {
        let at: Vec<String> = sp.at.iter().map(ToString::to_string).collect();
        let _ = write!(out, "specialize {} at ({})", sp.equation, at.join(", "));
        if !sp.with.is_empty() {
            let _ = write!(out, " with {}", sp.with.join(", "));
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn round_trip(src: &str) {
        let s = parse(src).unwrap();
        let text = print(&s);
        assert_eq!(parse(&text).unwrap(), s, "{text}");
        assert_eq!(print(&parse(&text).unwrap()), text);
    }

    #[test]
    fn mult_example() {
        round_trip("biadditive B; eq mult: B(x*y, x*y) = B(x,x)*B(y,y);");
    }

    #[test]
    fn rational_coefficients() {
        round_trip("biadditive B; eq e: 1/3*B(x1*x2, x3*x4) - 2/3*x1*x2*B(x3,x4) = -1/3*x1;");
    }

    #[test]
    fn rank_two_moment_declaration() {
        round_trip(
            "additive a_1_0; additive a_0_1; additive a_1_1;
             eq m11: a_1_0(x + y)*a_0_1(x + y) + a_1_1(x + y)
                   = a_1_0(x)*a_0_1(x) + a_1_1(x) + a_1_0(x)*a_0_1(y)
                   + a_0_1(x)*a_1_0(y) + a_1_0(y)*a_0_1(y) + a_1_1(y);
             degree m11 2;",
        );
    }

    #[test]
    fn all_statement_kinds() {
        round_trip(
            "multiadditive A arity 3; hom phi; power pi2 2; scalar c; additive a;
             eq e: A(x,x,x) + c*pi2(x)*phi(x) = 0;
             degree e 3;
             fact u: phi(1) = 1;
             fact: a(1) = 0;
             specialize e at (x, 1, y) with u;",
        );
    }
}
