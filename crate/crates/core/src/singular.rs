//! Closed points of `Spec(R(G) ⊗ Z[ξ])` above a rational prime, their
//! Jacobians and tangent-space dimensions.

use std::collections::BTreeSet;

use crate::chartable::CharacterTable;
use crate::cyclotomic::{
    is_ramified, phi_derivative_at, primes_above_seeded, reduce_mod, CyclotomicInt, CyclotomicPrime,
};
use crate::exactmath::arith::split_prime_power;
use crate::exactmath::{kernel_dimension, FieldElement, FieldMatrix};
use crate::greenring::{evaluate_point, GreenRing, Relation, RelationSet};
use crate::groups::{abelian_invariants, PermGroup};
use crate::{Error, Result};

/// A closed point above `Q`: the `p`-regular class `base_class` together with
/// every class fusing onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointDescriptor {
    pub prime: CyclotomicPrime,
    pub base_class: usize,
    /// Ascending class indices; always contains `base_class`.
    pub fiber: Vec<usize>,
}

/// Local invariants of one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    pub point: PointDescriptor,
    pub singular: bool,
    pub edim: usize,
    /// Tangent dimension over `Z`.
    pub dim_tangent_z: usize,
    /// Tangent dimension over `Z[ξ]`.
    pub dim_tangent_zxi: usize,
    pub ramified: bool,
    pub p_in_p_squared: bool,
    pub kernel_dim: usize,
}

/// Fusion map `c ↦ class of the p-regular part`, recovered from the table
/// alone: each class joins the `p`-regular class with the same residues
/// modulo the first prime above `p`.
pub fn fusion_from_table(table: &CharacterTable, p: u64, seed: u64) -> Result<Vec<usize>> {
    let s = table.class_count();
    let primes = primes_above_seeded(table.conductor(), p, seed)?;
    let prime = &primes[0];
    let residues: Vec<Vec<FieldElement>> = (0..s)
        .map(|c| {
            (0..s)
                .map(|i| reduce_mod(table.value(i, c), prime))
                .collect()
        })
        .collect::<Result<_>>()?;
    let regular: Vec<usize> = (0..s)
        .filter(|&c| !table.classes()[c].element_order.is_multiple_of(p))
        .collect();
    (0..s)
        .map(|c| {
            let hits: Vec<usize> = regular
                .iter()
                .copied()
                .filter(|&e| residues[e] == residues[c])
                .collect();
            match hits.as_slice() {
                [e] => Ok(*e),
                _ => Err(Error::Internal(format!(
                    "class {} matches {} p-regular classes modulo {prime:?}",
                    c + 1,
                    hits.len()
                ))),
            }
        })
        .collect()
}

/// Points above every prime `Q | p`, in prime order then base class order.
/// Without `all_points` only the fibers with at least two classes are kept.
pub fn enumerate_points(
    ring: &GreenRing,
    fusion: &[usize],
    p: u64,
    all_points: bool,
    seed: u64,
) -> Result<Vec<PointDescriptor>> {
    let mut out = Vec::new();
    for prime in primes_above_seeded(ring.table().conductor(), p, seed)? {
        for base in (0..fusion.len()).filter(|&c| fusion[c] == c) {
            let fiber: Vec<usize> = (0..fusion.len()).filter(|&d| fusion[d] == base).collect();
            if all_points || fiber.len() >= 2 {
                out.push(PointDescriptor {
                    prime: prime.clone(),
                    base_class: base,
                    fiber,
                });
            }
        }
    }
    Ok(out)
}

/// Jacobian of the multiplication-table relations at the point of `class`:
/// entry `(f_ij, x_l) = δ_li α_j + δ_lj α_i − α_ij^l`.
pub fn jacobian_at_class(
    ring: &GreenRing,
    class: usize,
    prime: &CyclotomicPrime,
) -> Result<FieldMatrix> {
    let field = prime.residue_field();
    let coords = evaluate_point(ring, class, prime)?;
    let s = ring.rank();
    let mut m = FieldMatrix::zeros(field, 0, s - 1);
    for i in 1..s {
        for j in i..s {
            let row = (1..s)
                .map(|l| {
                    let mut entry = FieldElement::from_int(field, -ring.alpha(i, j, l));
                    if l == i {
                        entry = &entry + &coords[j - 1];
                    }
                    if l == j {
                        entry = &entry + &coords[i - 1];
                    }
                    entry
                })
                .collect();
            m.push_row(row)?;
        }
    }
    Ok(m)
}

pub fn jacobian(ring: &GreenRing, point: &PointDescriptor) -> Result<FieldMatrix> {
    jacobian_at_class(ring, point.base_class, &point.prime)
}

/// Jacobian of an arbitrary relation set at a point of `k_Q^vars`, by formal
/// differentiation.
pub fn jacobian_of_relations(
    relations: &RelationSet,
    coords: &[FieldElement],
    prime: &CyclotomicPrime,
) -> Result<FieldMatrix> {
    let vars = relations.generator_count();
    let mut m = FieldMatrix::zeros(prime.residue_field(), 0, vars);
    for f in relations.relations() {
        let row = (0..vars)
            .map(|l| f.derivative(l).evaluate_mod(coords, prime))
            .collect::<Result<Vec<_>>>()?;
        m.push_row(row)?;
    }
    Ok(m)
}

/// The Jacobian bordered by a leading row and a trailing column, zero except
/// for the corner `Φ_n′(ζ)`.
pub fn extended_jacobian(ring: &GreenRing, point: &PointDescriptor) -> Result<FieldMatrix> {
    bordered(&jacobian(ring, point)?, &point.prime)
}

fn bordered(j: &FieldMatrix, prime: &CyclotomicPrime) -> Result<FieldMatrix> {
    let field = prime.residue_field();
    let mut m = FieldMatrix::zeros(field, 0, j.cols() + 1);
    let mut first = vec![FieldElement::zero(field); j.cols()];
    first.push(phi_derivative_at(prime)?);
    m.push_row(first)?;
    for r in 0..j.rows() {
        let mut row = j.row(r).to_vec();
        row.push(FieldElement::zero(field));
        m.push_row(row)?;
    }
    Ok(m)
}

/// Embedding and tangent dimensions at `point`, with the extended-Jacobian
/// kernel checked against the ramification formula.
pub fn analyze_point(ring: &GreenRing, point: &PointDescriptor) -> Result<PointReport> {
    let j = jacobian(ring, point)?;
    let kernel_dim = kernel_dimension(&j);
    let ramified = is_ramified(ring.table().conductor(), point.prime.p());
    let dim_tangent_z = kernel_dim + usize::from(ramified);
    let extended = kernel_dimension(&bordered(&j, &point.prime)?);
    if extended != dim_tangent_z {
        return Err(Error::Internal(format!(
            "extended Jacobian kernel {extended} differs from {dim_tangent_z} at {:?}, class {}",
            point.prime,
            point.base_class + 1
        )));
    }
    Ok(PointReport {
        singular: point.fiber.len() >= 2,
        edim: kernel_dim + 1,
        dim_tangent_z,
        dim_tangent_zxi: kernel_dim,
        ramified,
        p_in_p_squared: ramified,
        kernel_dim,
        point: point.clone(),
    })
}

/// Classes whose components meet above `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub base_class: usize,
    pub fiber: Vec<usize>,
    pub components: usize,
}

/// Component count (one per class) and the fibers where components cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub components: usize,
    pub crossings: Vec<Crossing>,
}

pub fn crossing_report(fusion: &[usize]) -> CrossingReport {
    let bases: BTreeSet<usize> = fusion.iter().copied().collect();
    let crossings = bases
        .into_iter()
        .map(|base| {
            let fiber: Vec<usize> = (0..fusion.len()).filter(|&d| fusion[d] == base).collect();
            Crossing {
                base_class: base,
                components: fiber.len(),
                fiber,
            }
        })
        .filter(|c| c.components >= 2)
        .collect();
    CrossingReport {
        components: fusion.len(),
        crossings,
    }
}

/// Number of cyclic `p`-power factors of an abelian group, `log_p |G/G^p|`.
pub fn abelian_tangent_dim(group: &PermGroup, p: u64) -> Result<usize> {
    Ok(abelian_invariants(group)?
        .into_iter()
        .filter(|&q| split_prime_power(q, p).1 == 1)
        .count())
}

/// `R(G) ⊗ Z[ξ] = Z[ξ][y_1, …, y_t]/(y_i^{m_i} − 1)` for an abelian group,
/// with `y_i` a basis `ψ_i` of the dual group.
#[derive(Clone, Debug)]
pub struct CyclicPresentation {
    /// Character indices of the basis `ψ_i`.
    pub generators: Vec<usize>,
    pub orders: Vec<u64>,
    pub relations: RelationSet,
}

/// Finds a basis of linear characters with prescribed orders `invariants`.
pub fn cyclic_presentation(ring: &GreenRing, invariants: &[u64]) -> Result<CyclicPresentation> {
    let s = ring.rank();
    let table = ring.table();
    if table.degrees().iter().any(|&d| d != 1) {
        return Err(Error::NotAbelian);
    }
    let product = |i: usize, j: usize| {
        (0..s)
            .find(|&k| ring.alpha(i, j, k) == 1)
            .expect("linear product")
    };
    let order_of = |i: usize| {
        let (mut x, mut m) = (i, 1u64);
        while x != 0 {
            x = product(x, i);
            m += 1;
        }
        m
    };
    let orders: Vec<u64> = (0..s).map(order_of).collect();
    let mut chosen = Vec::new();
    let span = vec![0usize];
    if !extend_basis(invariants, &orders, &product, span, &mut chosen) {
        return Err(Error::Internal(
            "no dual basis with the given invariants".into(),
        ));
    }
    let n = table.conductor();
    let t = invariants.len();
    let mut relations = RelationSet::new((1..=t).map(|i| format!("y{i}")).collect(), Vec::new());
    for (i, &m) in invariants.iter().enumerate() {
        let mut f = Relation::zero(t, n);
        let mut e = vec![0u32; t];
        e[i] = m as u32;
        f.add_term(e, CyclotomicInt::one(n)?);
        f.add_term(vec![0; t], CyclotomicInt::from_int(n, -1)?);
        relations.push(f);
    }
    Ok(CyclicPresentation {
        generators: chosen,
        orders: invariants.to_vec(),
        relations,
    })
}

fn extend_basis(
    invariants: &[u64],
    orders: &[u64],
    product: &impl Fn(usize, usize) -> usize,
    span: Vec<usize>,
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(&m) = invariants.get(chosen.len()) else {
        return true;
    };
    for cand in (0..orders.len()).filter(|&c| orders[c] == m) {
        // span · ⟨cand⟩ must have |span|·m elements
        let mut next: BTreeSet<usize> = BTreeSet::new();
        let mut power = 0usize;
        for _ in 0..m {
            next.extend(span.iter().map(|&h| product(h, power)));
            power = product(power, cand);
        }
        if next.len() == span.len() * m as usize {
            chosen.push(cand);
            if extend_basis(
                invariants,
                orders,
                product,
                next.into_iter().collect(),
                chosen,
            ) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Jacobian of the cyclic presentation at the point of `point.base_class`.
pub fn cyclic_jacobian(
    ring: &GreenRing,
    pres: &CyclicPresentation,
    point: &PointDescriptor,
) -> Result<FieldMatrix> {
    let coords = pres
        .generators
        .iter()
        .map(|&g| reduce_mod(ring.table().value(g, point.base_class), &point.prime))
        .collect::<Result<Vec<_>>>()?;
    jacobian_of_relations(&pres.relations, &coords, &point.prime)
}
