//! Ordinary character tables: Burnside–Dixon computation, exact verification
//! in `Z[ξ_n]` and a JSON exchange format.

use std::path::Path;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{conjugate, CyclotomicInt};
use crate::exactmath::arith::{is_prime, mod_inv, mod_pow, prime_divisors};
use crate::groups::PermGroup;
use crate::{Error, Result};

/// Largest group order accepted by [`dixon_character_table`].
pub const DIXON_CAP: usize = 10_000;

/// Size and element order of one conjugacy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassInfo {
    pub size: u64,
    pub element_order: u64,
}

/// A verified character table. Row `i` is the character `χ_{i+1}`, column `c`
/// the class `c`; row 0 is the trivial character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    order: u64,
    exponent: u64,
    classes: Vec<ClassInfo>,
    conductor: u64,
    values: Vec<Vec<CyclotomicInt>>,
    inverse_class: Vec<usize>,
}

impl CharacterTable {
    /// Validates and canonically orders a table whose values all share one
    /// conductor dividing `order`.
    pub fn from_parts(
        order: u64,
        exponent: u64,
        classes: Vec<ClassInfo>,
        mut values: Vec<Vec<CyclotomicInt>>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::Validation(msg));
        let s = classes.len();
        if order == 0 || s == 0 {
            return invalid("empty table".into());
        }
        if values.len() != s || values.iter().any(|row| row.len() != s) {
            return invalid(format!("expected a {s}×{s} value matrix"));
        }
        let conductor = values[0][0].conductor();
        if let Some(v) = values.iter().flatten().find(|v| v.conductor() != conductor) {
            return Err(Error::ConductorMismatch(conductor, v.conductor()));
        }
        if !order.is_multiple_of(conductor) {
            return Err(Error::BadConductor { conductor, order });
        }
        if classes[0]
            != (ClassInfo {
                size: 1,
                element_order: 1,
            })
        {
            return invalid("first class must be the identity class".into());
        }
        if classes.iter().map(|c| c.size).sum::<u64>() != order {
            return invalid("class sizes do not sum to the group order".into());
        }
        if let Some(c) = classes
            .iter()
            .find(|c| c.size == 0 || !order.is_multiple_of(c.size) || c.element_order == 0)
        {
            return invalid(format!(
                "class of size {} is impossible in a group of order {order}",
                c.size
            ));
        }
        let lcm = classes
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&c.element_order));
        if lcm != exponent || !order.is_multiple_of(exponent) {
            return invalid(format!(
                "exponent {exponent} disagrees with element orders (lcm {lcm})"
            ));
        }
        let mut degrees = Vec::with_capacity(s);
        for row in &values {
            match row[0].as_integer() {
                Some(d) if d > 0 => degrees.push(d),
                _ => {
                    return invalid(format!(
                        "character degree {} is not a positive integer",
                        row[0]
                    ))
                }
            }
        }
        if degrees.iter().map(|d| (d * d) as u64).sum::<u64>() != order {
            return invalid("sum of squared degrees differs from the group order".into());
        }
        let one = CyclotomicInt::one(conductor)?;
        let Some(trivial) = values.iter().position(|row| row.iter().all(|v| *v == one)) else {
            return invalid("no trivial character".into());
        };
        values.swap(0, trivial);
        values[1..].sort_by(|a, b| (&a[0], &a[1..]).cmp(&(&b[0], &b[1..])));

        let conj: Vec<Vec<CyclotomicInt>> = values
            .iter()
            .map(|row| row.iter().map(conjugate).collect())
            .collect();
        // row orthogonality
        for i in 0..s {
            for j in i..s {
                let mut acc = CyclotomicInt::zero(conductor)?;
                for c in 0..s {
                    acc = &acc + &(&values[i][c] * &conj[j][c]).scale(classes[c].size as i64);
                }
                let expected = if i == j { order as i64 } else { 0 };
                if acc != CyclotomicInt::from_int(conductor, expected)? {
                    return invalid(format!("rows {} and {} are not orthonormal", i + 1, j + 1));
                }
            }
        }
        // column orthogonality
        for c in 0..s {
            for d in c..s {
                let mut acc = CyclotomicInt::zero(conductor)?;
                for i in 0..s {
                    acc = &acc + &(&values[i][c] * &conj[i][d]);
                }
                let expected = if c == d {
                    (order / classes[c].size) as i64
                } else {
                    0
                };
                if acc != CyclotomicInt::from_int(conductor, expected)? {
                    return invalid(format!(
                        "columns {} and {} are not orthogonal",
                        c + 1,
                        d + 1
                    ));
                }
            }
        }
        let mut inverse_class = Vec::with_capacity(s);
        for c in 0..s {
            let Some(d) = (0..s).find(|&d| (0..s).all(|i| conj[i][c] == values[i][d])) else {
                return invalid(format!("conjugate of column {} is not a column", c + 1));
            };
            if classes[d] != classes[c] {
                return invalid(format!(
                    "classes {} and {} are inverse but differ in shape",
                    c + 1,
                    d + 1
                ));
            }
            inverse_class.push(d);
        }
        Ok(Self {
            order,
            exponent,
            classes,
            conductor,
            values,
            inverse_class,
        })
    }

    /// Same table with every value re-expressed at conductor `|G|`.
    pub fn embed_conductor(&self) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.embed(self.order))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(self.order, self.exponent, self.classes.clone(), values)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    /// Number of classes, equal to the number of irreducible characters.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[Vec<CyclotomicInt>] {
        &self.values
    }

    pub fn value(&self, character: usize, class: usize) -> &CyclotomicInt {
        &self.values[character][class]
    }

    pub fn degree(&self, character: usize) -> u64 {
        self.values[character][0]
            .as_integer()
            .expect("validated degree") as u64
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.class_count()).map(|i| self.degree(i)).collect()
    }

    /// Class of `g⁻¹` for `g` in class `c`, read off from conjugate columns.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// Labels such as `1a`, `2a`, `3a`, `3b`: element order followed by a
    /// letter counting classes of that order.
    pub fn class_labels(&self) -> Vec<String> {
        let mut seen: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
        self.classes
            .iter()
            .map(|c| {
                let k = seen.entry(c.element_order).or_insert(0);
                *k += 1;
                format!("{}{}", c.element_order, letter_suffix(*k - 1))
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = TableFile {
            order: self.order,
            exponent: self.exponent,
            classes: self.classes.clone(),
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| {
                            v.coeffs()
                                .iter()
                                .enumerate()
                                .filter(|(_, &c)| c != 0)
                                .map(|(k, &c)| (k as u64, c))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).map_err(|e| Error::Internal(e.to_string()))
    }

    /// Parses, validates and embeds into conductor `|G|`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let n = file.conductor;
        if n == 0 || file.order == 0 || !file.order.is_multiple_of(n) {
            return Err(Error::BadConductor {
                conductor: n,
                order: file.order,
            });
        }
        let values = file
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| CyclotomicInt::from_terms(n, terms))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(file.order, file.exponent, file.classes, values)?.embed_conductor()
    }
}

/// `a`, …, `z`, `aa`, `ab`, …
fn letter_suffix(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    order: u64,
    exponent: u64,
    classes: Vec<ClassInfo>,
    conductor: u64,
    values: Vec<Vec<Vec<(u64, i64)>>>,
}

pub fn load_table(path: impl AsRef<Path>) -> Result<CharacterTable> {
    CharacterTable::from_json(&std::fs::read_to_string(path)?)
}

pub fn save_table(table: &CharacterTable, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, table.to_json()? + "\n")?;
    Ok(())
}

/// Smallest prime `q ≡ 1 (mod exponent)` with `q ≥ 2⌈√order⌉ + 1`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let start = 2 * order.sqrt() + if order.sqrt().pow(2) == order { 1 } else { 3 };
    let mut q = start + (exponent + 1 - start % exponent) % exponent;
    if exponent == 1 {
        q = start;
    }
    while !is_prime(q) {
        q += exponent;
    }
    q
}

/// Character table of `group` at conductor `|G|` by the Burnside–Dixon method.
pub fn dixon_character_table(group: &PermGroup) -> Result<CharacterTable> {
    let q = dixon_prime(group.order() as u64, group.exponent());
    dixon_character_table_with_prime(group, q)
}

/// As [`dixon_character_table`] with an explicit working prime, which must
/// satisfy `q ≡ 1 (mod exponent)` and `q > 2√|G|`.
pub fn dixon_character_table_with_prime(group: &PermGroup, q: u64) -> Result<CharacterTable> {
    if group.order() > DIXON_CAP {
        return Err(Error::GroupTooLarge { cap: DIXON_CAP });
    }
    let n = group.order() as u64;
    let e = group.exponent();
    if !is_prime(q) || q % e != 1 % e || q * q <= 4 * n || q >= 1 << 31 {
        return Err(Error::InvalidArgument(format!(
            "{q} is not a usable Dixon prime for order {n}, exponent {e}"
        )));
    }
    let classes = group.conjugacy_classes();
    let s = classes.len();
    let coeffs = class_coefficients(group);
    let eigenvectors = common_eigenvectors(&coeffs, q)?;

    let inv = |a: u64| mod_inv(a % q, q).expect("q does not divide the group order");
    let zeta_e = mod_pow(primitive_root(q), (q - 1) / e, q);
    let powers: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            (0..c.element_order)
                .map(|l| group.power_class(c.index, l as i64))
                .collect()
        })
        .collect();
    let inverse: Vec<usize> = (0..s).map(|c| group.inverse_class(c)).collect();

    let mut rows = Vec::with_capacity(s);
    for mut w in eigenvectors {
        if w[0] == 0 {
            return Err(Error::Internal(
                "central character vanishes on the identity".into(),
            ));
        }
        let scale = inv(w[0]);
        w.iter_mut().for_each(|x| *x = *x * scale % q);
        let norm = (0..s).fold(0u64, |acc, i| {
            (acc + w[i] * w[inverse[i]] % q * inv(classes[i].size as u64)) % q
        });
        if norm == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let d2 = n % q * inv(norm) % q;
        let degree = (1..=(q - 1) / 2).find(|d| d * d % q == d2).ok_or_else(|| {
            Error::Internal("no character degree satisfies the norm equation".into())
        })?;
        let modular: Vec<u64> = (0..s)
            .map(|i| w[i] * degree % q * inv(classes[i].size as u64) % q)
            .collect();

        let mut row = Vec::with_capacity(s);
        for (i, class) in classes.iter().enumerate() {
            let o = class.element_order;
            let zeta = mod_pow(zeta_e, e / o, q);
            let o_inv = inv(o);
            let mut terms = Vec::new();
            for k in 0..o {
                let step = mod_pow(zeta, (o - k) % o, q);
                let mut m = 0u64;
                let mut root = 1u64;
                for l in 0..o as usize {
                    m = (m + modular[powers[i][l]] * root) % q;
                    root = root * step % q;
                }
                let m = m * o_inv % q;
                if m > degree {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                if m != 0 {
                    terms.push((k * (n / o), m as i64));
                }
            }
            row.push(CyclotomicInt::from_terms(n, &terms)?);
        }
        rows.push(row);
    }
    let infos = classes
        .iter()
        .map(|c| ClassInfo {
            size: c.size as u64,
            element_order: c.element_order,
        })
        .collect();
    CharacterTable::from_parts(n, e, infos, rows)
        .map_err(|err| Error::Internal(format!("Dixon lift failed: {err}")))
}

/// `a[i][j][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}` for fixed representatives `z_k`.
fn class_coefficients(group: &PermGroup) -> Vec<Vec<Vec<u64>>> {
    let classes = group.conjugacy_classes();
    let s = classes.len();
    let inverses: Vec<_> = group.elements().iter().map(|x| x.inverse()).collect();
    let mut a = vec![vec![vec![0u64; s]; s]; s];
    for (k, class) in classes.iter().enumerate() {
        let z = &class.representative;
        for (x, x_inv) in inverses.iter().enumerate() {
            let i = group.class_of_index(x);
            let j = group
                .class_of(&x_inv.compose(z))
                .expect("closed under products");
            a[i][j][k] += 1;
        }
    }
    a
}

/// Splits `F_q^s` into the common eigenlines of the matrices
/// `(M_i)_{jk} = a[i][j][k]`.
fn common_eigenvectors(a: &[Vec<Vec<u64>>], q: u64) -> Result<Vec<Vec<u64>>> {
    let s = a.len();
    let identity: Vec<Vec<u64>> = (0..s)
        .map(|i| (0..s).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    for m in a.iter().skip(1) {
        if spaces.iter().all(|v| v.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..s)
                        .map(|j| (0..s).fold(0, |acc, k| (acc + m[j][k] % q * b[k]) % q))
                        .collect()
                })
                .collect();
            let mut found = 0;
            for lambda in 0..q {
                // columns (M - λ) b_t
                let cols: Vec<Vec<u64>> = images
                    .iter()
                    .zip(&basis)
                    .map(|(mb, b)| {
                        mb.iter()
                            .zip(b)
                            .map(|(&x, &y)| (x + q - lambda * y % q) % q)
                            .collect()
                    })
                    .collect();
                let kernel = nullspace_of_columns(&cols, s, q);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let eigenspace = kernel
                    .iter()
                    .map(|c| {
                        (0..s)
                            .map(|r| {
                                c.iter()
                                    .zip(&basis)
                                    .fold(0, |acc, (&ct, b)| (acc + ct * b[r]) % q)
                            })
                            .collect()
                    })
                    .collect();
                next.push(eigenspace);
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(Error::Internal(
                    "class-sum matrix is not diagonalizable over F_q".into(),
                ));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|v| v.len() != 1) {
        return Err(Error::Internal(
            "class sums fail to separate the central characters".into(),
        ));
    }
    Ok(spaces
        .into_iter()
        .map(|mut v| v.pop().expect("one vector"))
        .collect())
}

/// Basis of `{c : Σ_t c_t · cols[t] = 0}` over `F_q`.
fn nullspace_of_columns(cols: &[Vec<u64>], rows: usize, q: u64) -> Vec<Vec<u64>> {
    let d = cols.len();
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(p) = (row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let inv = mod_inv(m[row][col], q).expect("nonzero in a prime field");
        m[row].iter_mut().for_each(|x| *x = *x * inv % q);
        for r in 0..rows {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..d {
                    m[r][c] = (m[r][c] + q - f * m[row][c] % q) % q;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..d)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; d];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - m[r][free]) % q;
            }
            v
        })
        .collect()
}

fn primitive_root(q: u64) -> u64 {
    let factors = prime_divisors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&r| mod_pow(g, (q - 1) / r, q) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};
    use std::collections::BTreeSet;

    fn group(s: &str) -> PermGroup {
        make_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn ints(n: u64, rows: &[&[i64]]) -> Vec<Vec<CyclotomicInt>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&c| CyclotomicInt::from_int(n, c).unwrap())
                    .collect()
            })
            .collect()
    }

    fn info(pairs: &[(u64, u64)]) -> Vec<ClassInfo> {
        pairs
            .iter()
            .map(|&(size, element_order)| ClassInfo {
                size,
                element_order,
            })
            .collect()
    }

    #[test]
    fn dixon_prime_search() {
        // A4: 2⌈√12⌉+1 = 9, first prime ≡ 1 mod 6 from there is 13
        assert_eq!(dixon_prime(12, 6), 13);
        assert_eq!(dixon_prime(2, 2), 5);
        assert_eq!(dixon_prime(1, 1), 3);
        assert_eq!(dixon_prime(60, 30), 31);
        assert_eq!(dixon_prime(16, 4), 13);
    }

    #[test]
    fn c2_table() {
        let t = dixon_character_table(&group("C2")).unwrap();
        assert_eq!(t.values(), ints(2, &[&[1, 1], &[1, -1]]).as_slice());
        assert_eq!(t.conductor(), 2);
        assert_eq!(t.embed_conductor().unwrap(), t);
    }

    #[test]
    fn s3_table() {
        let g = group("S3");
        let t = dixon_character_table(&g).unwrap();
        let expected = CharacterTable::from_parts(
            6,
            6,
            info(&[(1, 1), (3, 2), (2, 3)]),
            ints(6, &[&[1, 1, 1], &[2, 0, -1], &[1, -1, 1]]),
        )
        .unwrap();
        assert_eq!(t, expected);
        assert_eq!(t.degrees(), [1, 1, 2]);
        assert_eq!(t.values()[1], ints(6, &[&[1, -1, 1]])[0]);
    }

    #[test]
    fn a4_table() {
        let g = group("A4");
        let t = dixon_character_table(&g).unwrap();
        let z = CyclotomicInt::xi_pow(12, 4).unwrap();
        let one = CyclotomicInt::one(12).unwrap();
        let w = &(-&one) - &z;
        let c = |k: i64| CyclotomicInt::from_int(12, k).unwrap();
        let expected = vec![
            vec![c(1), c(1), c(1), c(1)],
            vec![c(1), c(1), z.clone(), w.clone()],
            vec![c(1), c(1), w, z],
            vec![c(3), c(-1), c(0), c(0)],
        ];
        assert_eq!(t.values(), expected.as_slice());
        assert_eq!(t.degrees(), [1, 1, 1, 3]);
        assert_eq!(t.class_labels(), ["1a", "2a", "3a", "3b"]);
    }

    #[test]
    fn label_suffixes() {
        assert_eq!(letter_suffix(0), "a");
        assert_eq!(letter_suffix(25), "z");
        assert_eq!(letter_suffix(26), "aa");
        assert_eq!(letter_suffix(27), "ab");
    }

    #[test]
    fn trivial_group_table() {
        let t = dixon_character_table(&group("C1")).unwrap();
        assert_eq!(t.class_count(), 1);
        assert_eq!(t.values(), ints(1, &[&[1]]).as_slice());
    }

    #[test]
    fn tables_are_independent_of_the_prime() {
        for name in ["A4", "S4", "D8", "C2xC4", "C5", "A5", "C3xS3"] {
            let g = group(name);
            let t = dixon_character_table(&g).unwrap();
            let n = g.order() as u64;
            let e = g.exponent();
            let mut q = dixon_prime(n, e) + e;
            while !is_prime(q) {
                q += e;
            }
            let other = dixon_character_table_with_prime(&g, q).unwrap();
            let a: BTreeSet<_> = t.values().iter().cloned().collect();
            let b: BTreeSet<_> = other.values().iter().cloned().collect();
            assert_eq!(a, b, "{name}");
            assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), n);
        }
    }

    #[test]
    fn inverse_classes_carry_conjugate_values() {
        for name in [
            "A4",
            "C7",
            "C3xS3",
            "A5",
            "perm:[(0,1,2,3,4,5,6),(1,2,4)(3,6,5)]",
        ] {
            let g = group(name);
            let t = dixon_character_table(&g).unwrap();
            for c in 0..t.class_count() {
                assert_eq!(t.inverse_class(c), g.inverse_class(c));
                for i in 0..t.class_count() {
                    assert_eq!(t.value(i, g.inverse_class(c)), &conjugate(t.value(i, c)));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_primes_and_large_groups() {
        let g = group("A4");
        // 7 ≡ 1 mod 6 and 7 > 2√12, so it is usable
        assert_eq!(
            dixon_character_table_with_prime(&g, 7).unwrap(),
            dixon_character_table(&g).unwrap()
        );
        assert!(matches!(
            dixon_character_table_with_prime(&g, 5),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            dixon_character_table_with_prime(&group("S3"), 5),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            dixon_character_table_with_prime(&g, 15),
            Err(Error::InvalidArgument(_))
        ));
        let big = group("S8");
        assert!(matches!(
            dixon_character_table(&big),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn embedding_from_a_smaller_conductor() {
        let z = CyclotomicInt::xi(3).unwrap();
        let one = CyclotomicInt::one(3).unwrap();
        let w = &(-&one) - &z;
        let c = |k: i64| CyclotomicInt::from_int(3, k).unwrap();
        let small = CharacterTable::from_parts(
            12,
            6,
            info(&[(1, 1), (3, 2), (4, 3), (4, 3)]),
            vec![
                vec![c(1), c(1), c(1), c(1)],
                vec![c(1), c(1), z.clone(), w.clone()],
                vec![c(1), c(1), w, z],
                vec![c(3), c(-1), c(0), c(0)],
            ],
        )
        .unwrap();
        assert_eq!(small.conductor(), 3);
        let big = small.embed_conductor().unwrap();
        assert_eq!(big.conductor(), 12);
        assert_eq!(big, dixon_character_table(&group("A4")).unwrap());
        // rational tables keep their constant terms
        let s3 = CharacterTable::from_parts(
            6,
            6,
            info(&[(1, 1), (3, 2), (2, 3)]),
            ints(1, &[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]]),
        )
        .unwrap();
        let embedded = s3.embed_conductor().unwrap();
        for (a, b) in s3
            .values()
            .iter()
            .flatten()
            .zip(embedded.values().iter().flatten())
        {
            assert_eq!(a.as_integer(), b.as_integer());
        }
        let bad = CharacterTable::from_parts(
            6,
            6,
            info(&[(1, 1), (3, 2), (2, 3)]),
            ints(4, &[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]]),
        );
        assert_eq!(
            bad,
            Err(Error::BadConductor {
                conductor: 4,
                order: 6
            })
        );
    }

    #[test]
    fn json_round_trip() {
        let dir = std::env::temp_dir().join(format!("chartable-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        for name in ["A4", "S4", "C2xC4"] {
            let t = dixon_character_table(&group(name)).unwrap();
            let path = dir.join(format!("{name}.json"));
            save_table(&t, &path).unwrap();
            assert_eq!(load_table(&path).unwrap(), t);
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }

    const S3_JSON: &str = r#"{
        "order": 6, "exponent": 6,
        "classes": [{"size": 1, "element_order": 1}, {"size": 3, "element_order": 2}, {"size": 2, "element_order": 3}],
        "conductor": 1,
        "values": [[[[0, 1]], [[0, 1]], [[0, 1]]],
                   [[[0, 2]], [], [[0, -1]]],
                   [[[0, 1]], [[0, -1]], [[0, 1]]]]
    }"#;

    #[test]
    fn hand_written_s3_matches_dixon() {
        let t = CharacterTable::from_json(S3_JSON).unwrap();
        assert_eq!(t, dixon_character_table(&group("S3")).unwrap());
    }

    #[test]
    fn json_errors_are_distinct() {
        let degrees = S3_JSON.replace("[[[0, 2]], [], [[0, -1]]]", "[[[0, 3]], [], [[0, -1]]]");
        assert!(matches!(
            CharacterTable::from_json(&degrees),
            Err(Error::Validation(_))
        ));
        let orth = S3_JSON.replace(
            "[[[0, 1]], [[0, -1]], [[0, 1]]]",
            "[[[0, 1]], [[0, 1]], [[0, -1]]]",
        );
        assert!(matches!(
            CharacterTable::from_json(&orth),
            Err(Error::Validation(_))
        ));
        let conductor = S3_JSON.replace("\"conductor\": 1", "\"conductor\": 4");
        assert!(matches!(
            CharacterTable::from_json(&conductor),
            Err(Error::BadConductor { .. })
        ));
        let float = S3_JSON.replace("\"order\": 6", "\"order\": 6.0");
        assert!(matches!(
            CharacterTable::from_json(&float),
            Err(Error::Schema(_))
        ));
        let extra = S3_JSON.replace("\"order\": 6", "\"order\": 6, \"name\": \"S3\"");
        assert!(matches!(
            CharacterTable::from_json(&extra),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            CharacterTable::from_json("[]"),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn tables_of_small_groups_verify() {
        for name in [
            "C6",
            "D8",
            "D10",
            "perm:[(0,1,2,3),(4,5),(0,2)]",
            "D12",
            "C2xA4",
            "S4",
            "C4xC4",
            "C2xC2xC2xC2xC2",
            "A5",
            "A6",
        ] {
            let g = group(name);
            let t = dixon_character_table(&g).unwrap();
            assert_eq!(t.class_count(), g.conjugacy_classes().len());
            assert_eq!(
                t.degrees().iter().map(|d| d * d).sum::<u64>(),
                g.order() as u64
            );
            assert!(t.values()[0].iter().all(|v| v.as_integer() == Some(1)));
            if g.is_abelian() {
                assert!(t.degrees().iter().all(|&d| d == 1));
            }
        }
    }
}
