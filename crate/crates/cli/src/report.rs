//! The `analyze` report and its text, JSON and LaTeX renderings.

use greenring::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::Format;

/// One analyzed point: `(p, f(x), edim, dim T(C/Z), dim T(C/Z[ξ]))` plus the
/// classes whose components pass through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub p: u64,
    pub f: String,
    pub edim: usize,
    pub dim_tangent_z: usize,
    pub dim_tangent_zxi: usize,
    pub singular: bool,
    pub ramified: bool,
    pub p_in_p_squared: bool,
    pub base_class: String,
    pub fiber: Vec<String>,
}

/// Per-prime summary: shape of `Φ_n mod p` and the fibers of fused classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u64,
    pub factorization: String,
    pub ramified: bool,
    pub crossings: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub order: u64,
    pub classes: Vec<String>,
    pub conductor: u64,
    pub primes: Vec<PrimeRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    pub points: Vec<PointRow>,
}

impl AnalysisReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => self.to_json(),
            Format::Latex => Ok(self.to_latex()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map(|s| s + "\n")
            .map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    /// The five table columns of every row.
    pub fn rows(&self) -> Vec<(u64, String, usize, usize, usize)> {
        self.points
            .iter()
            .map(|r| (r.p, r.f.clone(), r.edim, r.dim_tangent_z, r.dim_tangent_zxi))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "|G| = {}, {} class{} ({}), conductor {}\n",
            self.order,
            self.classes.len(),
            if self.classes.len() == 1 { "" } else { "es" },
            self.classes.join(" "),
            self.conductor
        );
        for pr in &self.primes {
            let crossings: Vec<String> = pr
                .crossings
                .iter()
                .map(|c| format!("{{{}}}", c.join(", ")))
                .collect();
            out.push_str(&format!(
                "p = {}: Φ_{} ≡ {}, {}; crossing classes: {}\n",
                pr.p,
                self.conductor,
                pr.factorization,
                if pr.ramified {
                    "ramified"
                } else {
                    "unramified"
                },
                if crossings.is_empty() {
                    "none".to_string()
                } else {
                    crossings.join(" ")
                }
            ));
        }
        if let Some(rels) = &self.relations {
            out.push_str("relations:\n");
            for r in rels {
                out.push_str(&format!("  {r}\n"));
            }
        }
        if self.points.is_empty() {
            out.push_str("no points to report\n");
            return out;
        }
        let header = ["p", "f(x)", "edim", "dim T(C/Z)", "dim T(C/Z[ξ])", "fiber"];
        let cells: Vec<[String; 6]> = self
            .points
            .iter()
            .map(|r| {
                [
                    r.p.to_string(),
                    r.f.clone(),
                    r.edim.to_string(),
                    r.dim_tangent_z.to_string(),
                    r.dim_tangent_zxi.to_string(),
                    r.fiber.join(" "),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..6)
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].chars().count())
                    .chain([header[c].chars().count()])
                    .max()
                    .unwrap()
            })
            .collect();
        let line = |row: [&str; 6]| {
            let parts: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, cell)| match c {
                    1 | 5 => format!("{cell:<w$}", w = widths[c]),
                    _ => format!("{cell:>w$}", w = widths[c]),
                })
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(header));
        for r in &cells {
            out.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4], &r[5]]));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        if let Some(rels) = &self.relations {
            for r in rels {
                out.push_str(&format!("% {r}\n"));
            }
        }
        out.push_str(
            "\\begin{tabular}{|c|c|c|c|c|}\\hline $p$ & $f(x)$ & $\\edim_P\\, C$ & $\\dim_{k_P}T_P(C/\\Z)$ & $\\dim_{k_P}T_P(C/\\Z[\\xi])$ \\\\\n\\hline\\hline\n",
        );
        for r in &self.points {
            out.push_str(&format!(
                "{} & ${}$ & {} & {} & {} \\\\\\hline\n",
                r.p,
                latex_exponents(&r.f),
                r.edim,
                r.dim_tangent_z,
                r.dim_tangent_zxi
            ));
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

/// Braces multi-digit exponents: `x^12` becomes `x^{12}`.
fn latex_exponents(poly: &str) -> String {
    let mut out = String::new();
    let mut chars = poly.chars().peekable();
    while let Some(ch) = chars.next() {
        out.push(ch);
        if ch == '^' {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
            }
            if digits.len() > 1 {
                out.push_str(&format!("{{{digits}}}"));
            } else {
                out.push_str(&digits);
            }
        }
    }
    out
}
