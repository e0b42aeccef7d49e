//! Representation equations: distinguished exponent tuples, dimensionless
//! groups, lcm normalization, and the catalogued symmetry reduction.
//!
//! For an adequate partition with basis `A = (x_1..x_r)` every other entry
//! `y_k` has a unique integer relation `[y_k]^(W_k) = prod_j [x_j]^(W_kj)`
//! with `W_k > 0` and gcd 1 — its distinguished exponent row. The dependent
//! row gives the equation's left-hand side, the `B` rows give dimensionless
//! groups `pi_k = y_k^(W_k) * (prod_j x_j^(W_kj))^-1`, and each partition
//! contributes one equation `y_0^(W_0) = prod_j x_j^(W_0j) * Psi_l(pi_1..)`
//! with its own opaque function symbol `Psi_l`. The engine derives structure
//! around `Psi_l`; it never evaluates it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{primitive_normalize, IntMatrix};
use crate::partition::{adequate_partitions, is_independent, AdequatePartition, DimTuple};
use crate::quantity::DimVector;
use crate::scalar::BigRat;

/// Diagnostic attached to an empty equation system.
pub const NO_PARTITION_DIAGNOSTIC: &str = "no adequate partition: dependent variable's dimension \
     is not spanned by any independent subtuple of the remaining variables; no covariant \
     representation is derivable";

/// The distinguished integer tuple `(W_k, W_k1..W_kr)` relating a subject
/// dimension to a basis: `W_k > 0`, overall gcd 1, and
/// `W_k * dim(y_k) = sum_j W_kj * dim(x_j)` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentRow {
    subject: usize,
    w0: BigInt,
    wj: Vec<BigInt>,
}

impl ExponentRow {
    /// Builds a row, enforcing the positivity and gcd invariants.
    pub fn new(subject: usize, w0: BigInt, wj: Vec<BigInt>) -> Result<Self> {
        if !w0.is_positive() {
            return Err(Error::InvalidExponentRow);
        }
        let mut g = w0.clone();
        for v in &wj {
            g = g.gcd(v);
        }
        if !g.is_one() {
            return Err(Error::InvalidExponentRow);
        }
        Ok(Self { subject, w0, wj })
    }

    /// Tuple index of the subject entry `y_k`.
    pub fn subject_index(&self) -> usize {
        self.subject
    }

    pub fn w0(&self) -> &BigInt {
        &self.w0
    }

    /// Exponents over the partition basis, in `a_indices` order.
    pub fn exponents(&self) -> &[BigInt] {
        &self.wj
    }
}

/// Solves for the distinguished exponent row of `y` over an independent
/// basis of dimension columns.
///
/// The solution ray of `xi_0 * y = sum_j xi_j * x_j` is one-dimensional, so
/// solving with `xi_0 = 1` and normalizing to the primitive integer tuple
/// with positive leading entry yields the unique distinguished row. `y`
/// outside the rational span means the partition was not adequate.
pub fn distinguished_exponents(
    subject: usize,
    y: &DimVector,
    basis: &[DimVector],
) -> Result<ExponentRow> {
    if !is_independent(basis) {
        return Err(Error::BasisNotIndependent);
    }
    let cols: Vec<&[BigInt]> = basis.iter().map(|d| d.exponents()).collect();
    // An empty basis spans exactly the identity dimension; the column view
    // cannot infer the ambient row count on its own.
    let matrix = if cols.is_empty() {
        IntMatrix::zero(y.len(), 0)
    } else {
        IntMatrix::from_columns(&cols)?
    };
    let solution = matrix
        .solve_exact(y.exponents())?
        .ok_or(Error::PartitionNotAdequate)?;
    let (w0, wj) = primitive_normalize(&BigRat::one(), &solution)?;
    ExponentRow::new(subject, w0, wj)
}

/// True iff `(w0, wj)` is a positive integer multiple of `row` — every
/// integer solution of the dimension identity with positive leading entry
/// arises this way.
pub fn kappa_multiple_check(row: &ExponentRow, w0: &BigInt, wj: &[BigInt]) -> bool {
    if wj.len() != row.wj.len() || !w0.is_positive() {
        return false;
    }
    let (kappa, rem) = w0.div_rem(&row.w0);
    if !rem.is_zero() || !kappa.is_positive() {
        return false;
    }
    row.wj.iter().zip(wj).all(|(ours, theirs)| &(ours * &kappa) == theirs)
}

/// A dimensionless group `pi_k = y_k^(W_k) * (prod_j x_j^(W_kj))^-1`,
/// numbered 1-based within its equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiGroup {
    pub index: usize,
    pub row: ExponentRow,
}

/// One representation equation
/// `y_0^(W_0) = prod_j x_j^(W_0j) * Psi_l(pi_1, .., pi_(n-r))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationEquation {
    pub partition: AdequatePartition,
    pub lhs: ExponentRow,
    pub pis: Vec<PiGroup>,
    /// 1-based label of the opaque function symbol `Psi_l`, assigned in
    /// partition-enumeration order.
    pub psi: usize,
}

impl RepresentationEquation {
    /// All distinguished rows of this equation's exponent matrix, dependent
    /// row first, then one row per `B` entry.
    pub fn rows(&self) -> impl Iterator<Item = &ExponentRow> {
        std::iter::once(&self.lhs).chain(self.pis.iter().map(|p| &p.row))
    }
}

/// lcm data turning a set of equations into a simultaneous system: every
/// left-hand side is raised to `common_w0 = lambda_l * W_(l)0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub common_w0: BigInt,
    pub lambdas: Vec<BigInt>,
}

/// The full set of representation equations for one dependent variable, one
/// equation per adequate partition.
#[derive(Debug, Clone)]
pub struct EquationSystem {
    pub tuple: DimTuple,
    pub equations: Vec<RepresentationEquation>,
    pub normalization: Option<Normalization>,
    pub diagnostic: Option<String>,
}

impl EquationSystem {
    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

/// Builds the representation equation for one adequate partition.
///
/// Every produced group is dimensionless by construction; this is re-checked
/// exactly before returning.
pub fn build_representation(
    t: &DimTuple,
    p: &AdequatePartition,
    psi: usize,
) -> Result<RepresentationEquation> {
    let basis: Vec<DimVector> = p
        .a_indices
        .iter()
        .map(|&i| t.entry(i).dim().clone())
        .collect();
    let lhs = distinguished_exponents(p.c_index, t.entry(p.c_index).dim(), &basis)?;
    let mut pis = Vec::with_capacity(p.b_indices.len());
    for (k, &bi) in p.b_indices.iter().enumerate() {
        let row = distinguished_exponents(bi, t.entry(bi).dim(), &basis)?;
        pis.push(PiGroup { index: k + 1, row });
    }
    let eq = RepresentationEquation {
        partition: p.clone(),
        lhs,
        pis,
        psi,
    };
    for row in eq.rows() {
        if !row_dimension_defect(t, p, row).is_identity() {
            return Err(Error::PartitionNotAdequate);
        }
    }
    Ok(eq)
}

/// `W_k * dim(y_k) - sum_j W_kj * dim(x_j)`; the zero vector for every
/// well-formed row.
pub fn row_dimension_defect(t: &DimTuple, p: &AdequatePartition, row: &ExponentRow) -> DimVector {
    let mut acc = t.entry(row.subject_index()).dim().scaled(row.w0());
    for (&ai, w) in p.a_indices.iter().zip(row.exponents()) {
        acc = acc
            .add(&t.entry(ai).dim().scaled(w).neg())
            .expect("rows share the tuple ambient");
    }
    acc
}

/// Builds the complete equation system for the tuple's dependent entry.
///
/// Zero adequate partitions is a diagnosed result, not a failure: the system
/// comes back empty with [`NO_PARTITION_DIAGNOSTIC`] attached.
pub fn build_system(t: &DimTuple) -> Result<EquationSystem> {
    let partitions = adequate_partitions(t)?;
    if partitions.is_empty() {
        return Ok(EquationSystem {
            tuple: t.clone(),
            equations: Vec::new(),
            normalization: None,
            diagnostic: Some(NO_PARTITION_DIAGNOSTIC.to_string()),
        });
    }
    let mut equations = Vec::with_capacity(partitions.len());
    for (idx, p) in partitions.iter().enumerate() {
        equations.push(build_representation(t, p, idx + 1)?);
    }
    Ok(EquationSystem {
        tuple: t.clone(),
        equations,
        normalization: None,
        diagnostic: None,
    })
}

/// Attaches lcm normalization data: `common_w0 = lcm(W_(1)0..W_(S)0)` and
/// `lambda_l = common_w0 / W_(l)0`. The stored rows stay in distinguished
/// (gcd-1) form; renderers apply the lambda powering.
pub fn normalize_system(s: &EquationSystem) -> Result<EquationSystem> {
    if s.equations.is_empty() {
        return Err(Error::EmptySystem);
    }
    let mut common = BigInt::one();
    for eq in &s.equations {
        common = common.lcm(eq.lhs.w0());
    }
    let lambdas: Vec<BigInt> = s.equations.iter().map(|eq| &common / eq.lhs.w0()).collect();
    debug_assert!(s
        .equations
        .iter()
        .zip(&lambdas)
        .all(|(eq, l)| eq.lhs.w0() * l == common));
    Ok(EquationSystem {
        tuple: s.tuple.clone(),
        equations: s.equations.clone(),
        normalization: Some(Normalization {
            common_w0: common,
            lambdas,
        }),
        diagnostic: s.diagnostic.clone(),
    })
}

/// A power product over tuple variables: `(name, exponent)` factors in tuple
/// order, all exponents nonzero. Empty means the constant 1.
pub type PowerProduct = Vec<(String, BigInt)>;

/// A reduced equation `y_0^(W_0) = k * prefactor * (term_1 + term_2)^(p)`
/// with one free dimensionless constant, obtained from a swap-symmetric
/// two-equation system through the functional-equation catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub lhs_name: String,
    pub lhs_exponent: BigInt,
    pub constant: String,
    pub prefactor: PowerProduct,
    pub terms: Vec<PowerProduct>,
    /// Exponent `p` of the derived functional equation
    /// `Psi(x) = x^p * Psi(1/x)`; also the exponent on the term sum.
    pub functional_exponent: i32,
    pub swap: (String, String),
}

/// Outcome of a symmetry reduction attempt. `NotApplicable` covers every
/// structural mismatch: the declared swap does not map the system onto
/// itself, or the derived functional equation falls outside the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceOutcome {
    Reduced(ClosedForm),
    NotApplicable { reason: String },
}

type IndexMap = BTreeMap<usize, BigInt>;

fn insert_nonzero(map: &mut IndexMap, key: usize, value: BigInt) {
    if !value.is_zero() {
        let entry = map.entry(key).or_insert_with(BigInt::zero);
        *entry += value;
        if entry.is_zero() {
            map.remove(&key);
        }
    }
}

fn prefactor_map(eq: &RepresentationEquation) -> IndexMap {
    let mut map = IndexMap::new();
    for (&ai, w) in eq.partition.a_indices.iter().zip(eq.lhs.exponents()) {
        insert_nonzero(&mut map, ai, w.clone());
    }
    map
}

fn pi_map(eq: &RepresentationEquation, pi: &PiGroup) -> IndexMap {
    let mut map = IndexMap::new();
    insert_nonzero(&mut map, pi.row.subject_index(), pi.row.w0().clone());
    for (&ai, w) in eq.partition.a_indices.iter().zip(pi.row.exponents()) {
        insert_nonzero(&mut map, ai, -w.clone());
    }
    map
}

fn swap_keys(map: &IndexMap, ia: usize, ib: usize) -> IndexMap {
    map.iter()
        .map(|(&k, v)| {
            let k = if k == ia {
                ib
            } else if k == ib {
                ia
            } else {
                k
            };
            (k, v.clone())
        })
        .collect()
}

fn map_diff(left: &IndexMap, right: &IndexMap) -> IndexMap {
    let mut out = left.clone();
    for (&k, v) in right {
        insert_nonzero(&mut out, k, -v.clone());
    }
    out
}

fn map_merge(left: &IndexMap, right: &IndexMap) -> IndexMap {
    let mut out = left.clone();
    for (&k, v) in right {
        insert_nonzero(&mut out, k, v.clone());
    }
    out
}

fn map_neg(map: &IndexMap) -> IndexMap {
    map.iter().map(|(&k, v)| (k, -v.clone())).collect()
}

/// Solves `ratio == p * base` for an integer `p`, if one exists.
fn integer_ratio(ratio: &IndexMap, base: &IndexMap) -> Option<BigInt> {
    if ratio.is_empty() {
        return Some(BigInt::zero());
    }
    let (k0, v0) = ratio.iter().next()?;
    let b0 = base.get(k0)?;
    let (p, rem) = v0.div_rem(b0);
    if !rem.is_zero() {
        return None;
    }
    let scaled: IndexMap = base.iter().map(|(&k, v)| (k, v * &p)).collect();
    let scaled: IndexMap = scaled.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    (&scaled == ratio).then_some(p)
}

fn to_power_product(t: &DimTuple, map: &IndexMap) -> PowerProduct {
    map.iter()
        .map(|(&k, v)| (t.entry(k).name().to_string(), v.clone()))
        .collect()
}

/// Reduces a swap-symmetric two-equation system to a closed form.
///
/// Exchanging the two named variables must map equation 1 onto equation 2
/// exactly (same left-hand row, prefactors and groups transposed), which
/// forces `Psi_1 = Psi_2 = Psi` and the functional equation
/// `Psi(x) = x^p * Psi(1/x)` with `x` the first equation's group. The
/// catalog resolves `p = +1` to `Psi(x) = k*(1 + x)` and `p = -1` to
/// `Psi(x) = k*(1 + x)^-1`; substituting back yields the closed form. Any
/// other `p`, and any structural mismatch, is reported as not applicable.
///
/// Whether the two variables are exchangeable is a physical assumption and
/// is always declared by the caller, never inferred.
pub fn symmetry_reduce(s: &EquationSystem, swap: (&str, &str)) -> Result<ReduceOutcome> {
    if s.equations.len() != 2 {
        return Err(Error::SystemSizeNotTwo(s.equations.len()));
    }
    let ia = s
        .tuple
        .index_of(swap.0)
        .ok_or_else(|| Error::SwapNameNotFound(swap.0.to_string()))?;
    let ib = s
        .tuple
        .index_of(swap.1)
        .ok_or_else(|| Error::SwapNameNotFound(swap.1.to_string()))?;
    let fail = |reason: &str| {
        Ok(ReduceOutcome::NotApplicable {
            reason: reason.to_string(),
        })
    };
    if ia == ib {
        return fail("swap must name two distinct variables");
    }
    if ia == s.tuple.dependent_index() || ib == s.tuple.dependent_index() {
        return fail("the dependent variable cannot participate in the exchange symmetry");
    }
    let (eq1, eq2) = (&s.equations[0], &s.equations[1]);
    if eq1.pis.len() != 1 || eq2.pis.len() != 1 {
        return fail(
            "catalog covers one dimensionless group per equation; \
             multi-argument functional equations are out of scope",
        );
    }
    if eq1.lhs.w0() != eq2.lhs.w0() {
        return fail("equations disagree on the left-hand exponent; system is not swap-symmetric");
    }

    let p1 = prefactor_map(eq1);
    let p2 = prefactor_map(eq2);
    let g1 = pi_map(eq1, &eq1.pis[0]);
    let g2 = pi_map(eq2, &eq2.pis[0]);

    if swap_keys(&p1, ia, ib) != p2 || swap_keys(&g1, ia, ib) != g2 {
        return fail("system is not symmetric under the declared exchange");
    }
    if map_neg(&g1) != g2 {
        return fail("the two dimensionless groups are not mutually inverse");
    }

    let ratio = map_diff(&p2, &p1);
    let Some(p) = integer_ratio(&ratio, &g1) else {
        return fail("prefactor ratio is not an integer power of the dimensionless group");
    };
    let p: i32 = match i32::try_from(&p) {
        Ok(v @ (1 | -1)) => v,
        _ => {
            return fail(
                "derived functional equation Psi(x) = x^p Psi(1/x) has p outside the \
                 catalog of known solution families (p = +1 or p = -1)",
            )
        }
    };

    let (prefactor, terms) = if p == 1 {
        // y0^W0 = k * (P1 + P1*pi1)
        (
            IndexMap::new(),
            vec![p1.clone(), map_merge(&p1, &g1)],
        )
    } else {
        // y0^W0 = k * P1*Delta1 * (Delta1 + y1^W1)^-1, where Delta1 is the
        // group's denominator product.
        let pi1 = &eq1.pis[0];
        let mut delta = IndexMap::new();
        for (&ai, w) in eq1.partition.a_indices.iter().zip(pi1.row.exponents()) {
            insert_nonzero(&mut delta, ai, w.clone());
        }
        let mut numer = IndexMap::new();
        insert_nonzero(&mut numer, pi1.row.subject_index(), pi1.row.w0().clone());
        (map_merge(&p1, &delta), vec![delta, numer])
    };

    Ok(ReduceOutcome::Reduced(ClosedForm {
        lhs_name: s.tuple.dependent().name().to_string(),
        lhs_exponent: eq1.lhs.w0().clone(),
        constant: "k".to_string(),
        prefactor: to_power_product(&s.tuple, &prefactor),
        terms: terms
            .iter()
            .map(|m| to_power_product(&s.tuple, m))
            .collect(),
        functional_exponent: p,
        swap: (swap.0.to_string(), swap.1.to_string()),
    }))
}
