use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, FiniteField};
use super::fppoly::PrimeFieldPolynomial;
use crate::{Error, Result};

/// Dense matrix over a single [`FiniteField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: &Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        Self {
            field: Arc::clone(field),
            rows,
            cols,
            entries: vec![FieldElement::zero(field); rows * cols],
        }
    }

    /// Builds a matrix from rows; every entry must lie in `field` and every
    /// row must have `cols` entries.
    pub fn from_rows(
        field: &Arc<FiniteField>,
        cols: usize,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::InvalidArgument(format!(
                    "row has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for e in row {
                if !(Arc::ptr_eq(e.field(), field) || **e.field() == **field) {
                    return Err(Error::MixedFields);
                }
                entries.push(e);
            }
        }
        Ok(Self {
            field: Arc::clone(field),
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Integer matrix reduced into `field`.
    pub fn from_ints(field: &Arc<FiniteField>, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&c| FieldElement::from_int(field, c))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) -> Result<()> {
        if **value.field() != *self.field {
            return Err(Error::MixedFields);
        }
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends a row, checking length and field.
    pub fn push_row(&mut self, row: Vec<FieldElement>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::InvalidArgument("row length mismatch".into()));
        }
        if row
            .iter()
            .any(|e| !Arc::ptr_eq(e.field(), &self.field) && **e.field() != *self.field)
        {
            return Err(Error::MixedFields);
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    /// Rank by row-by-row reduction against an echelon basis, stopping once
    /// the rank reaches the column count.
    pub fn rank(&self) -> usize {
        let arith = FlatField::new(&self.field);
        let k = arith.k;
        let width = self.cols * k;
        // (pivot column, row with a unit at the pivot and zeros at earlier pivots)
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut scratch = vec![0u64; k];
        for r in 0..self.rows {
            if basis.len() == self.cols {
                break;
            }
            let mut v = vec![0u64; width];
            for (c, e) in self.row(r).iter().enumerate() {
                let coeffs = e.value().coeffs();
                v[c * k..c * k + coeffs.len()].copy_from_slice(coeffs);
            }
            for (pc, b) in &basis {
                let factor: Vec<u64> = v[pc * k..(pc + 1) * k].to_vec();
                if factor.iter().all(|&x| x == 0) {
                    continue;
                }
                for c in *pc..self.cols {
                    let bc = &b[c * k..(c + 1) * k];
                    if bc.iter().all(|&x| x == 0) {
                        continue;
                    }
                    arith.mul(&factor, bc, &mut scratch);
                    arith.sub_assign(&mut v[c * k..(c + 1) * k], &scratch);
                }
            }
            let Some(pc) = (0..self.cols).find(|&c| v[c * k..(c + 1) * k].iter().any(|&x| x != 0))
            else {
                continue;
            };
            let inv = arith.inverse(&v[pc * k..(pc + 1) * k]);
            for c in pc..self.cols {
                let entry: Vec<u64> = v[c * k..(c + 1) * k].to_vec();
                arith.mul(&entry, &inv, &mut scratch);
                v[c * k..(c + 1) * k].copy_from_slice(&scratch);
            }
            basis.push((pc, v));
        }
        basis.len()
    }
}

/// Allocation-free arithmetic on dense coefficient slices of length `k`.
struct FlatField {
    field: Arc<FiniteField>,
    p: u64,
    k: usize,
    /// Lower coefficients of the monic modulus.
    lower: Vec<u64>,
}

impl FlatField {
    fn new(field: &Arc<FiniteField>) -> Self {
        let k = field.degree();
        let lower = field.modulus().coeffs()[..k].to_vec();
        Self {
            field: Arc::clone(field),
            p: field.characteristic(),
            k,
            lower,
        }
    }

    fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let (p, k) = (self.p, self.k);
        if k == 1 {
            out[0] = mulmod(a[0], b[0], p);
            return;
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        // t^k = -Σ lower_j t^j
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (j, &l) in self.lower.iter().enumerate() {
                let idx = d - k + j;
                prod[idx] = (prod[idx] + p - mulmod(c, l, p)) % p;
            }
        }
        out.copy_from_slice(&prod[..k]);
    }

    fn sub_assign(&self, a: &mut [u64], b: &[u64]) {
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + self.p - y) % self.p;
        }
    }

    fn inverse(&self, a: &[u64]) -> Vec<u64> {
        let poly = PrimeFieldPolynomial::new(self.p, a.to_vec());
        let inv = FieldElement::from_poly(&self.field, &poly)
            .inverse()
            .expect("pivot is nonzero");
        let mut out = inv.value().coeffs().to_vec();
        out.resize(self.k, 0);
        out
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `cols - rank`: the dimension of the right kernel of `m`.
pub fn kernel_dimension(m: &FieldMatrix) -> usize {
    m.cols - m.rank()
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::PrimeFieldPolynomial;
    use proptest::prelude::*;

    #[test]
    fn zero_and_identity() {
        let k = FiniteField::prime_field(5).unwrap();
        assert_eq!(kernel_dimension(&FieldMatrix::zeros(&k, 6, 3)), 3);
        let id =
            FieldMatrix::from_ints(&k, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(kernel_dimension(&id), 0);
    }

    #[test]
    fn mixed_fields_rejected() {
        let f2 = FiniteField::prime_field(2).unwrap();
        let f4 = FiniteField::new(PrimeFieldPolynomial::new(2, vec![1, 1, 1])).unwrap();
        let rows = vec![vec![FieldElement::one(&f2), FieldElement::one(&f4)]];
        assert_eq!(
            FieldMatrix::from_rows(&f4, 2, rows).unwrap_err(),
            Error::MixedFields
        );
    }

    #[test]
    fn worked_a4_matrix_over_f4() {
        let f4 = FiniteField::new(PrimeFieldPolynomial::new(2, vec![1, 1, 1])).unwrap();
        let j = FieldMatrix::from_ints(
            &f4,
            &[
                vec![2, 1, 0],
                vec![1, 1, 0],
                vec![1, 0, 0],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![1, 1, 0],
            ],
        )
        .unwrap();
        assert_eq!(kernel_dimension(&j), 1);
    }

    /// Column-space dimension by enumerating all `p^cols` coefficient vectors
    /// and counting distinct images; `log_p` of the count is the rank.
    fn brute_force_rank(p: u64, rows: &[Vec<u64>], cols: usize) -> usize {
        let mut images = std::collections::HashSet::new();
        let total = p.pow(cols as u32);
        for code in 0..total {
            let mut v = Vec::with_capacity(cols);
            let mut c = code;
            for _ in 0..cols {
                v.push(c % p);
                c /= p;
            }
            let image: Vec<u64> = rows
                .iter()
                .map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % p)
                .collect();
            images.insert(image);
        }
        let mut rank = 0;
        let mut size = 1usize;
        while size < images.len() {
            size *= p as usize;
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn kernel_dimension_matches_enumeration(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(0u64..1000, 36),
        ) {
            let data: Vec<Vec<u64>> = (0..rows)
                .map(|r| (0..cols).map(|c| seed[r * 6 + c] % p).collect())
                .collect();
            let k = FiniteField::prime_field(p).unwrap();
            let ints: Vec<Vec<i64>> = data.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let m = FieldMatrix::from_ints(&k, &ints).unwrap();
            prop_assert_eq!(kernel_dimension(&m), cols - brute_force_rank(p, &data, cols));
        }

        #[test]
        fn kernel_dimension_over_extension_fields(
            which in 0usize..2,
            rows in 1usize..7,
            cols in 1usize..4,
            seed in proptest::collection::vec(0u128..1000, 18),
        ) {
            let modulus = if which == 0 {
                PrimeFieldPolynomial::new(2, vec![1, 1, 1])
            } else {
                PrimeFieldPolynomial::new(3, vec![1, 0, 1])
            };
            let k = FiniteField::new(modulus).unwrap();
            let q = k.size();
            let entries: Vec<Vec<FieldElement>> = (0..rows)
                .map(|r| (0..cols).map(|c| FieldElement::from_index(&k, seed[r * 3 + c] % q)).collect())
                .collect();
            let m = FieldMatrix::from_rows(&k, cols, entries.clone()).unwrap();
            // |kernel| = q^dim, counted over every vector of k^cols
            let mut zeros = 0u128;
            for code in 0..q.pow(cols as u32) {
                let v: Vec<FieldElement> =
                    (0..cols).map(|c| FieldElement::from_index(&k, code / q.pow(c as u32) % q)).collect();
                let kills = entries.iter().all(|row| {
                    row.iter().zip(&v).fold(FieldElement::zero(&k), |acc, (a, b)| &acc + &(a * b)).is_zero()
                });
                zeros += u128::from(kills);
            }
            prop_assert_eq!(q.pow(kernel_dimension(&m) as u32), zeros);
        }
    }
}
