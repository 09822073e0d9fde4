//! The representation ring `R(G) ⊗ Z[ξ]`: structure constants of the
//! character product and the multiplication-table presentation.

use std::fmt;

use crate::chartable::CharacterTable;
use crate::cyclotomic::{conjugate, reduce_mod, CyclotomicInt, CyclotomicPrime};
use crate::exactmath::FieldElement;
use crate::{Error, Result};

/// Structure constants `χ_i χ_j = Σ_k α[i][j][k] χ_k` of a character table.
#[derive(Clone, Debug)]
pub struct GreenRing {
    table: CharacterTable,
    alpha: Vec<Vec<Vec<i64>>>,
}

/// Computes the structure constants exactly and checks that they are
/// nonnegative integers reproducing every product pointwise.
pub fn structure_constants(table: &CharacterTable) -> Result<GreenRing> {
    let s = table.class_count();
    let n = table.order();
    let conductor = table.conductor();
    let sizes: Vec<i64> = table.classes().iter().map(|c| c.size as i64).collect();
    // |c| · conj(χ_k(c)), shared by every pair (i, j)
    let weighted: Vec<Vec<CyclotomicInt>> = table
        .values()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&sizes)
                .map(|(v, &sz)| conjugate(v).scale(sz))
                .collect()
        })
        .collect();
    let mut alpha = vec![vec![vec![0i64; s]; s]; s];
    for i in 0..s {
        for j in i..s {
            let product: Vec<CyclotomicInt> = (0..s)
                .map(|c| table.value(i, c) * table.value(j, c))
                .collect();
            for k in 0..s {
                let mut acc = CyclotomicInt::zero(conductor)?;
                for c in 0..s {
                    acc = &acc + &(&product[c] * &weighted[k][c]);
                }
                let a = acc
                    .div_exact(n as i64)
                    .and_then(|q| q.as_integer())
                    .filter(|&a| a >= 0)
                    .ok_or_else(|| {
                        Error::Internal(format!(
                            "multiplicity of χ_{} in χ_{}χ_{} is {acc}/{n}",
                            k + 1,
                            i + 1,
                            j + 1
                        ))
                    })?;
                alpha[i][j][k] = a;
                alpha[j][i][k] = a;
            }
            for (c, prod) in product.iter().enumerate() {
                let mut sum = CyclotomicInt::zero(conductor)?;
                for (k, &a) in alpha[i][j].iter().enumerate() {
                    if a != 0 {
                        sum = &sum + &table.value(k, c).scale(a);
                    }
                }
                if sum != *prod {
                    return Err(Error::Internal(format!(
                        "χ_{}χ_{} decomposition fails at class {}",
                        i + 1,
                        j + 1,
                        c + 1
                    )));
                }
            }
        }
    }
    Ok(GreenRing {
        table: table.clone(),
        alpha,
    })
}

impl GreenRing {
    pub fn new(table: &CharacterTable) -> Result<Self> {
        structure_constants(table)
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// Number of irreducible characters.
    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    /// Multiplicity of `χ_k` in `χ_i χ_j` (0-based indices).
    pub fn alpha(&self, i: usize, j: usize, k: usize) -> i64 {
        self.alpha[i][j][k]
    }

    /// The quadrics `x_i x_j - α_ij^1 - Σ_{k≥2} α_ij^k x_k` for `2 ≤ i ≤ j ≤ s`,
    /// in lexicographic order of `(i, j)`.
    pub fn relations(&self) -> Result<RelationSet> {
        let s = self.rank();
        let vars = s.saturating_sub(1);
        let n = self.table.conductor();
        let mut relations = Vec::with_capacity(vars * (vars + 1) / 2);
        let mut pairs = Vec::with_capacity(relations.capacity());
        for i in 1..s {
            for j in i..s {
                let mut f = Relation::zero(vars, n);
                let mut quad = vec![0u32; vars];
                quad[i - 1] += 1;
                quad[j - 1] += 1;
                f.add_term(quad, CyclotomicInt::one(n)?);
                f.add_term(
                    vec![0; vars],
                    CyclotomicInt::from_int(n, -self.alpha[i][j][0])?,
                );
                for k in 1..s {
                    let mut lin = vec![0u32; vars];
                    lin[k - 1] = 1;
                    f.add_term(lin, CyclotomicInt::from_int(n, -self.alpha[i][j][k])?);
                }
                relations.push(f);
                pairs.push((i, j));
            }
        }
        let names = (2..=s).map(|k| format!("x{k}")).collect();
        Ok(RelationSet {
            names,
            relations,
            pairs,
        })
    }
}

/// The residues `(χ_2(c), …, χ_s(c)) mod Q`: the coordinates of the point of
/// the class `c` above `Q`.
pub fn evaluate_point(
    ring: &GreenRing,
    class: usize,
    prime: &CyclotomicPrime,
) -> Result<Vec<FieldElement>> {
    (1..ring.rank())
        .map(|k| reduce_mod(ring.table.value(k, class), prime))
        .collect()
}

/// A polynomial with coefficients in `Z[ξ_n]`, kept in insertion order with
/// like terms merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    variables: usize,
    conductor: u64,
    terms: Vec<(Vec<u32>, CyclotomicInt)>,
}

impl Relation {
    pub fn zero(variables: usize, conductor: u64) -> Self {
        Self {
            variables,
            conductor,
            terms: Vec::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `(exponents, coefficient)` pairs, all coefficients nonzero.
    pub fn terms(&self) -> &[(Vec<u32>, CyclotomicInt)] {
        &self.terms
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: CyclotomicInt) {
        assert_eq!(exponents.len(), self.variables, "monomial arity");
        assert_eq!(coeff.conductor(), self.conductor, "coefficient conductor");
        if let Some(pos) = self.terms.iter().position(|(m, _)| *m == exponents) {
            let sum = &self.terms[pos].1 + &coeff;
            if sum.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].1 = sum;
            }
        } else if !coeff.is_zero() {
            self.terms.push((exponents, coeff));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicInt) -> Self {
        let mut out = Self::zero(self.variables, self.conductor);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.variables, self.conductor);
        for (m, c) in &self.terms {
            if m[var] > 0 {
                let mut d = m.clone();
                d[var] -= 1;
                out.add_term(d, c.scale(i64::from(m[var])));
            }
        }
        out
    }

    /// Exact value at a point of `Z[ξ_n]^vars`.
    pub fn evaluate(&self, point: &[CyclotomicInt]) -> Result<CyclotomicInt> {
        let mut acc = CyclotomicInt::zero(self.conductor)?;
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    term = &term * &x.pow(u64::from(e));
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Value modulo `Q` at a point of `k_Q^vars`.
    pub fn evaluate_mod(
        &self,
        point: &[FieldElement],
        prime: &CyclotomicPrime,
    ) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(prime.residue_field());
        for (m, c) in &self.terms {
            let mut term = reduce_mod(c, prime)?;
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    term = &term * &x.pow(u64::from(e));
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// ASCII rendering such as `x4^2 - 1 - x2 - x3 - 2*x4`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let monomial: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{e}", names[v])
                    }
                })
                .collect();
            let monomial = monomial.join("*");
            let (negative, body) = match c.as_integer() {
                Some(k) if monomial.is_empty() => (k < 0, k.unsigned_abs().to_string()),
                Some(k) if k.abs() == 1 => (k < 0, monomial),
                Some(k) => (k < 0, format!("{}*{monomial}", k.unsigned_abs())),
                None if monomial.is_empty() => (false, format!("({c})")),
                None => (false, format!("({c})*{monomial}")),
            };
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Generators and relations of a presentation of `R(G) ⊗ Z[ξ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    names: Vec<String>,
    relations: Vec<Relation>,
    pairs: Vec<(usize, usize)>,
}

impl RelationSet {
    pub fn new(names: Vec<String>, relations: Vec<Relation>) -> Self {
        Self {
            names,
            relations,
            pairs: Vec::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// For the multiplication-table presentation, the 0-based character pair
    /// `(i, j)` behind each relation.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn push(&mut self, relation: Relation) {
        self.relations.push(relation);
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn rendered(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.render(&self.names))
            .collect()
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.rendered() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::dixon_character_table;
    use crate::cyclotomic::primes_above;
    use crate::groups::{make_group, GroupSpec};

    fn ring(name: &str) -> GreenRing {
        let g = make_group(&name.parse::<GroupSpec>().unwrap()).unwrap();
        structure_constants(&dixon_character_table(&g).unwrap()).unwrap()
    }

    #[test]
    fn a4_products() {
        let r = ring("A4");
        assert_eq!(
            (0..4).map(|k| r.alpha(3, 3, k)).collect::<Vec<_>>(),
            [1, 1, 1, 2]
        );
        assert_eq!(
            (0..4).map(|k| r.alpha(1, 2, k)).collect::<Vec<_>>(),
            [1, 0, 0, 0]
        );
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(r.alpha(0, j, k), i64::from(j == k));
            }
        }
    }

    #[test]
    fn a4_relations() {
        let rels = ring("A4").relations().unwrap();
        assert_eq!(
            rels.rendered(),
            [
                "x2^2 - x3",
                "x2*x3 - 1",
                "x2*x4 - x4",
                "x3^2 - x2",
                "x3*x4 - x4",
                "x4^2 - 1 - x2 - x3 - 2*x4"
            ]
        );
        assert_eq!(
            rels.pairs(),
            [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
        );
    }

    #[test]
    fn small_relation_sets() {
        let trivial = ring("C1").relations().unwrap();
        assert!(trivial.is_empty());
        assert_eq!(trivial.generator_count(), 0);
        assert_eq!(ring("C2").relations().unwrap().rendered(), ["x2^2 - 1"]);
    }

    #[test]
    fn a4_point_coordinates() {
        let r = ring("A4");
        let q2 = &primes_above(12, 2).unwrap()[0];
        let ones: Vec<String> = evaluate_point(&r, 0, q2)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(ones, ["1", "1", "1"]);
        let q3 = &primes_above(12, 3).unwrap()[0];
        let p3: Vec<String> = evaluate_point(&r, 0, q3)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(p3, ["1", "1", "0"]);
        let wrong = &primes_above(6, 2).unwrap()[0];
        assert!(matches!(
            evaluate_point(&r, 0, wrong),
            Err(Error::ConductorMismatch(..))
        ));
    }

    #[test]
    fn ring_invariants() {
        for name in [
            "C1", "C5", "S3", "D8", "A4", "C2xC4", "S4", "C3xS3", "A5", "C2xC2xC2",
        ] {
            let r = ring(name);
            let t = r.table();
            let s = r.rank();
            let deg = t.degrees();
            let abelian = deg.iter().all(|&d| d == 1);
            for i in 0..s {
                for j in 0..s {
                    let mut degree_sum = 0;
                    for k in 0..s {
                        assert_eq!(r.alpha(i, j, k), r.alpha(j, i, k));
                        degree_sum += r.alpha(i, j, k) as u64 * deg[k];
                    }
                    assert_eq!(degree_sum, deg[i] * deg[j], "{name}");
                    // trivial multiplicity is 1 exactly for the dual pair
                    let dual = (0..s).all(|c| *t.value(j, c) == conjugate(t.value(i, c)));
                    assert_eq!(r.alpha(i, j, 0), i64::from(dual), "{name}");
                    if abelian {
                        let row: Vec<i64> = (0..s).map(|k| r.alpha(i, j, k)).collect();
                        assert_eq!(row.iter().sum::<i64>(), 1);
                        assert!(row.iter().all(|&a| a == 0 || a == 1));
                    }
                }
                if abelian {
                    // multiplication by χ_i permutes the characters
                    let mut targets: Vec<usize> = (0..s)
                        .map(|j| (0..s).find(|&k| r.alpha(i, j, k) == 1).unwrap())
                        .collect();
                    targets.sort_unstable();
                    assert_eq!(targets, (0..s).collect::<Vec<_>>());
                }
            }
            let rels = r.relations().unwrap();
            assert_eq!(rels.len(), (s - 1) * s / 2);
            for c in 0..s {
                let point: Vec<CyclotomicInt> = (1..s).map(|k| t.value(k, c).clone()).collect();
                for f in rels.relations() {
                    assert!(
                        f.evaluate(&point).unwrap().is_zero(),
                        "{name}: {}",
                        f.render(rels.names())
                    );
                }
            }
        }
    }

    #[test]
    fn relation_algebra() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let one = CyclotomicInt::one(4).unwrap();
        let i = CyclotomicInt::xi(4).unwrap();
        let mut f = Relation::zero(2, 4);
        f.add_term(vec![2, 1], one.scale(3));
        f.add_term(vec![0, 0], one.scale(-5));
        f.add_term(vec![0, 1], i.clone());
        assert_eq!(f.render(&names), "3*a^2*b - 5 + (w)*b");
        assert_eq!(f.derivative(0).render(&names), "6*a*b");
        assert_eq!(f.derivative(1).render(&names), "3*a^2 + (w)");
        assert!(f.add(&f.scale(&one.scale(-1))).is_zero());
        let x = [one.scale(2), i.clone()];
        // 3·4·i − 5 + i·i = 12i − 6
        assert_eq!(f.evaluate(&x).unwrap(), &i.scale(12) - &one.scale(6));
    }
}
