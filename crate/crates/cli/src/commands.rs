use std::path::PathBuf;

use greenring::chartable::{dixon_character_table, load_table, CharacterTable};
use greenring::cyclotomic::{
    cyclotomic_polynomial, factorization_string, is_ramified, primes_above_seeded,
};
use greenring::exactmath::arith::{is_prime, prime_divisors};
use greenring::greenring::structure_constants;
use greenring::groups::{fusion_map, make_group, GroupSpec, PermGroup};
use greenring::singular::{
    analyze_point, crossing_report, enumerate_points, fusion_from_table, PointReport,
};
use greenring::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{AnalysisReport, PointRow, PrimeRow};
use crate::Format;

/// Where the character table comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Group(String),
    Table(PathBuf),
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub all_points: bool,
    /// Restrict to one prime; otherwise every prime dividing `|G|`.
    pub prime: Option<u64>,
    pub show_relations: bool,
    pub seed: u64,
}

fn build_group(desc: &str) -> Result<PermGroup> {
    make_group(&desc.parse::<GroupSpec>()?)
}

/// Runs the full pipeline: table, structure constants, points, invariants.
pub fn analyze(source: &Source, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let (group, table) = match source {
        Source::Group(desc) => {
            let g = build_group(desc)?;
            let t = dixon_character_table(&g)?;
            (Some(g), t)
        }
        Source::Table(path) => (None, load_table(path)?),
    };
    let ring = structure_constants(&table)?;
    let n = table.order();
    let labels = table.class_labels();
    let primes = match opts.prime {
        Some(p) if !is_prime(p) => return Err(Error::NotPrime(p)),
        Some(p) => vec![p],
        None => prime_divisors(n),
    };

    let mut prime_rows = Vec::new();
    let mut points = Vec::new();
    for &p in &primes {
        let fusion = match &group {
            Some(g) => fusion_map(g, p),
            None => fusion_from_table(&table, p, opts.seed)?,
        };
        let factors = primes_above_seeded(table.conductor(), p, opts.seed)?;
        let crossings = crossing_report(&fusion)
            .crossings
            .into_iter()
            .map(|c| c.fiber.iter().map(|&d| labels[d].clone()).collect())
            .collect();
        prime_rows.push(PrimeRow {
            p,
            factorization: factorization_string(&factors),
            ramified: is_ramified(table.conductor(), p),
            crossings,
        });
        points.extend(enumerate_points(
            &ring,
            &fusion,
            p,
            opts.all_points,
            opts.seed,
        )?);
    }
    let reports: Vec<PointReport> = points
        .par_iter()
        .map(|pt| analyze_point(&ring, pt))
        .collect::<Result<_>>()?;

    let relations = if opts.show_relations {
        Some(ring.relations()?.rendered())
    } else {
        None
    };
    Ok(AnalysisReport {
        order: n,
        classes: labels.clone(),
        conductor: table.conductor(),
        primes: prime_rows,
        relations,
        points: reports
            .iter()
            .map(|r| PointRow {
                p: r.point.prime.p(),
                f: r.point.prime.f().to_string(),
                edim: r.edim,
                dim_tangent_z: r.dim_tangent_z,
                dim_tangent_zxi: r.dim_tangent_zxi,
                singular: r.singular,
                ramified: r.ramified,
                p_in_p_squared: r.p_in_p_squared,
                base_class: labels[r.point.base_class].clone(),
                fiber: r.point.fiber.iter().map(|&d| labels[d].clone()).collect(),
            })
            .collect(),
    })
}

pub fn chartab(desc: &str, format: Format) -> Result<String> {
    let table = dixon_character_table(&build_group(desc)?)?;
    match format {
        Format::Json => Ok(table.to_json()? + "\n"),
        Format::Text => Ok(table_grid(&table)),
        Format::Latex => Ok(table_latex(&table)),
    }
}

fn table_grid(t: &CharacterTable) -> String {
    let s = t.class_count();
    let mut rows: Vec<Vec<String>> = vec![
        std::iter::once("class".to_string())
            .chain(t.class_labels())
            .collect(),
        std::iter::once("order".to_string())
            .chain(t.classes().iter().map(|c| c.element_order.to_string()))
            .collect(),
        std::iter::once("size".to_string())
            .chain(t.classes().iter().map(|c| c.size.to_string()))
            .collect(),
    ];
    for i in 0..s {
        rows.push(
            std::iter::once(format!("χ{}", i + 1))
                .chain((0..s).map(|c| t.value(i, c).to_string()))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..=s)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("w = exp(2πi/{})\n", t.conductor());
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn table_latex(t: &CharacterTable) -> String {
    let s = t.class_count();
    let mut out = format!("\\begin{{array}}{{{}}}\n", "c".repeat(s + 1));
    let labels: Vec<String> = (1..=s).map(|c| format!("c_{{{c}}}")).collect();
    out.push_str(&format!("  \\mbox{{class}} & {}\\\\\n", labels.join(" & ")));
    let orders: Vec<String> = t
        .classes()
        .iter()
        .map(|c| c.element_order.to_string())
        .collect();
    out.push_str(&format!("  \\mbox{{order}} & {}\\\\\n", orders.join(" & ")));
    for i in 0..s {
        let vals: Vec<String> = (0..s)
            .map(|c| t.value(i, c).to_string().replace('w', "\\xi"))
            .collect();
        out.push_str(&format!(
            "  \\chi_{{{}}} & {}\\\\\n",
            i + 1,
            vals.join(" & ")
        ));
    }
    out.push_str("\\end{array}\n");
    out
}

#[derive(Serialize)]
struct CyclotomicReport {
    n: u64,
    p: u64,
    phi: String,
    factorization: String,
    ramified: bool,
}

pub fn cyclotomic(n: u64, p: u64, format: Format, seed: u64) -> Result<String> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let phi = cyclotomic_polynomial(n)?;
    let factors = primes_above_seeded(n, p, seed)?;
    let report = CyclotomicReport {
        n,
        p,
        phi: phi.to_string(),
        factorization: factorization_string(&factors),
        ramified: is_ramified(n, p),
    };
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&report).map_err(|e| Error::Internal(e.to_string()))?
                + "\n"
        }
        Format::Text => format!(
            "Φ_{n}(x) = {}\nΦ_{n}(x) ≡ {} (mod {p})\n{p} is {} in Z[ξ_{n}]\n",
            report.phi,
            report.factorization,
            if report.ramified {
                "ramified"
            } else {
                "unramified"
            }
        ),
        Format::Latex => {
            let factors: Vec<String> = factors
                .iter()
                .map(|q| format!("({})^{{{}}}", q.f().to_latex(), q.ram_exponent()))
                .collect();
            format!(
                "\\Phi_{{{n}}}(x) = {} \\equiv {} \\pmod{{{p}}}\n",
                phi.to_latex(),
                factors.join(""),
            )
        }
    })
}
