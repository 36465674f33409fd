//! `val_H`, signed class sums and invariant evaluation.

mod classes;
mod dense;
mod search;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::count::SignedCount;
use crate::design::{DesignSpec, Diagonal, ObstructionDesign};
use crate::error::{Error, Result};
use crate::linalg;
use crate::perm;
use crate::tensor::{self, FactorVector, TensorDecomposition};

pub use crate::checkpoint::Checkpoint;
pub use crate::run::{CheckpointConfig, CheckpointTag, SearchOptions};
pub use classes::{enumerate_classes, marginal_multisets, EquivalenceClass};
pub use dense::evaluate_dense;
pub use search::MASK_BITS;

use search::Problem;

/// One k-tuple of vectors per box of a design, in the design's box order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    columns: Vec<Vec<FactorVector>>,
}

impl Labeling {
    /// Vectors on axis `a` must be at least as long as every axis-`a` slice
    /// containing their box; longer vectors are truncated by [`val`].
    pub fn new(design: &ObstructionDesign, columns: Vec<Vec<FactorVector>>) -> Result<Self> {
        let lab = Labeling { columns };
        lab.check(design)?;
        Ok(lab)
    }

    /// A labeling by standard basis vectors, `indices[p][a]` 0-based.
    pub fn from_basis(design: &ObstructionDesign, indices: &[Vec<usize>]) -> Result<Self> {
        let dims: Vec<usize> = (0..design.k())
            .map(|a| design.marginals(a).into_iter().max().unwrap_or(0))
            .collect();
        let columns = indices
            .iter()
            .map(|col| {
                col.iter()
                    .zip(&dims)
                    .map(|(&e, &dim)| FactorVector::basis(e, dim.max(e + 1)))
                    .collect()
            })
            .collect();
        Self::new(design, columns)
    }

    /// `ω_I`: box `p` gets the vectors of term `assignment[p]`.
    pub fn from_terms(design: &ObstructionDesign, t: &TensorDecomposition, assignment: &[usize]) -> Result<Self> {
        if let Some(&bad) = assignment.iter().find(|&&i| i >= t.rank_one_count()) {
            return Err(Error::InvalidInput(format!("no term {bad}")));
        }
        Self::new(
            design,
            assignment.iter().map(|&i| t.terms()[i].vectors.clone()).collect(),
        )
    }

    fn check(&self, design: &ObstructionDesign) -> Result<()> {
        if self.columns.len() != design.len() {
            return Err(Error::DimensionMismatch(format!(
                "labeling has {} columns, design has {} boxes",
                self.columns.len(),
                design.len()
            )));
        }
        for (p, col) in self.columns.iter().enumerate() {
            if col.len() != design.k() {
                return Err(Error::DimensionMismatch(format!(
                    "column {} has {} vectors, design has {} axes",
                    p + 1,
                    col.len(),
                    design.k()
                )));
            }
            for (a, &sid) in design.slices_of(p).iter().enumerate() {
                let need = design.slices()[sid].len();
                if col[a].dim() < need {
                    return Err(Error::DimensionMismatch(format!(
                        "column {}, axis {}: vector of dimension {} in a slice of {need} boxes",
                        p + 1,
                        a + 1,
                        col[a].dim()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn columns(&self) -> &[Vec<FactorVector>] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Per-box basis indices when every vector is a standard basis vector.
    pub fn basis_indices(&self) -> Option<Vec<Vec<usize>>> {
        self.columns
            .iter()
            .map(|col| col.iter().map(FactorVector::basis_index).collect())
            .collect()
    }
}

/// `val` of a list of vectors: the determinant of the square matrix whose
/// columns are the vectors cut down to their first `len` entries.
pub fn val_vectors(vectors: &[&FactorVector]) -> BigRational {
    let n = vectors.len();
    if let Some(idx) = vectors.iter().map(|v| v.basis_index()).collect::<Option<Vec<_>>>() {
        return BigRational::from_integer(basis_sign(&idx, n).into());
    }
    let rows = (0..n).map(|i| vectors.iter().map(|v| v.entry(i)).collect()).collect();
    linalg::determinant(rows)
}

/// Determinant of the basis vectors `e_{idx[0]}, …` truncated to `n` rows.
fn basis_sign(idx: &[usize], n: usize) -> i32 {
    if idx.iter().any(|&e| e >= n) || !perm::is_permutation(idx) {
        0
    } else {
        perm::sign(idx)
    }
}

/// `val_H(w)`: the product over all slices of `val` of the slice's vectors
/// in global box order.
pub fn val(design: &ObstructionDesign, labeling: &Labeling) -> Result<BigRational> {
    labeling.check(design)?;
    let mut out = BigRational::one();
    for s in design.slices() {
        let vs: Vec<&FactorVector> = s.positions.iter().map(|&p| &labeling.columns[p][s.axis]).collect();
        out *= val_vectors(&vs);
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// `val_H` of a basis labeling given directly by indices; in `{-1, 0, 1}`.
pub fn val_basis(design: &ObstructionDesign, indices: &[Vec<usize>]) -> i32 {
    let mut sign = 1;
    for s in design.slices() {
        let seq: Vec<usize> = s.positions.iter().map(|&p| indices[p][s.axis]).collect();
        sign *= basis_sign(&seq, s.len());
        if sign == 0 {
            break;
        }
    }
    sign
}

/// The signed count of a class together with the factor relating it to the
/// sum over the full symmetric group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSum {
    /// Over distinct arrangements of the class: its contribution to `F_H`.
    pub distinct: SignedCount,
    /// `∏ mult!`, the number of permutations fixing an arrangement.
    #[serde(with = "crate::serde_big::biguint")]
    pub multiplicity_factor: BigUint,
}

impl ClassSum {
    /// `Σ_{π∈S_d} val(π·v)`.
    pub fn symmetric(&self) -> SignedCount {
        self.distinct.scaled(&self.multiplicity_factor)
    }
}

fn multiplicity_factor(class: &EquivalenceClass) -> BigUint {
    class
        .entries()
        .iter()
        .map(|&(_, m)| perm::factorial(m))
        .product()
}

fn design_tag(design: &ObstructionDesign) -> serde_json::Value {
    serde_json::to_value(design.to_spec()).expect("design serializes")
}

/// Signed sum of `val_H` over the arrangements of `class`, where
/// `table[id]` holds the per-axis basis indices (0-based) of summand `id`.
pub fn signed_class_sum(
    design: &ObstructionDesign,
    class: &EquivalenceClass,
    table: &[Vec<usize>],
    opts: &SearchOptions,
) -> Result<ClassSum> {
    if let Some(t) = table.iter().find(|t| t.len() != design.k()) {
        return Err(Error::DimensionMismatch(format!(
            "summand {t:?} does not have {} indices",
            design.k()
        )));
    }
    let factor = multiplicity_factor(class);
    if !class.satisfies_marginals(design, table) {
        return Ok(ClassSum {
            distinct: SignedCount::zero(),
            multiplicity_factor: factor,
        });
    }
    let ids: Vec<usize> = class.entries().iter().map(|e| e.0).collect();
    let sub: Vec<Vec<usize>> = ids.iter().map(|&id| table[id].clone()).collect();
    let mult: Vec<usize> = class.entries().iter().map(|e| e.1).collect();
    let tag = CheckpointTag {
        design: design_tag(design),
        class: serde_json::to_value(class).expect("class serializes"),
    };
    let distinct = Problem::new(design, &sub, Some(&mult))?.count(opts, &tag)?;
    Ok(ClassSum {
        distinct,
        multiplicity_factor: factor,
    })
}

/// `Σ_I val_H(ω_I)` for a tensor of basis terms with unit coefficients,
/// with the positive and negative contributions kept apart.
pub fn basis_invariant_count(
    design: &ObstructionDesign,
    tensor: &TensorDecomposition,
    opts: &SearchOptions,
) -> Result<SignedCount> {
    tensor.check_against(design)?;
    let table = basis_table(tensor)?;
    let tag = CheckpointTag {
        design: design_tag(design),
        class: serde_json::to_value(tensor.to_spec()).expect("tensor serializes"),
    };
    Problem::new(design, &table, None)?.count(opts, &tag)
}

fn basis_table(tensor: &TensorDecomposition) -> Result<Vec<Vec<usize>>> {
    tensor
        .terms()
        .iter()
        .map(|t| {
            t.basis_indices()
                .ok_or_else(|| Error::InvalidInput("tensor has a non-basis factor".into()))
        })
        .collect()
}

/// `F_H(ω)`, exactly. Basis tensors go through the bitmask search (split
/// into classes when coefficients differ); anything else is summed over all
/// index maps.
pub fn evaluate_invariant(
    design: &ObstructionDesign,
    tensor: &TensorDecomposition,
    opts: &SearchOptions,
) -> Result<BigRational> {
    tensor.check_against(design)?;
    let terms = tensor.terms();
    if terms.is_empty() {
        return Ok(BigRational::zero());
    }
    let small = terms.len() <= MASK_BITS && design.slices().iter().all(|s| s.len() <= MASK_BITS);
    if !tensor.is_basis() || !small {
        return evaluate_dense(design, tensor, opts.budget_nodes);
    }
    let coef = &terms[0].coef;
    if terms.iter().all(|t| &t.coef == coef) {
        let count = basis_invariant_count(design, tensor, opts)?;
        let scale = num_traits::pow(coef.clone(), design.len());
        return Ok(BigRational::from_integer(count.value()) * scale);
    }
    let table = basis_table(tensor)?;
    let mut total = BigRational::zero();
    for class in enumerate_classes(design, &table)? {
        let sum = signed_class_sum(design, &class, &table, opts)?;
        let weight: BigRational = class
            .entries()
            .iter()
            .map(|&(id, m)| num_traits::pow(terms[id].coef.clone(), m))
            .product();
        total += BigRational::from_integer(sum.distinct.value()) * weight;
    }
    Ok(total)
}

/// The value of an invariant on one tensor, with the rank check that can
/// settle it without a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorEvaluation {
    pub design: DesignSpec,
    pub vanishing: VanishingReport,
    #[serde(with = "crate::serde_big::rational")]
    pub value: BigRational,
}

/// Runs [`check_vanishing`] first and only searches when it is inconclusive.
pub fn evaluate_tensor(
    design: &ObstructionDesign,
    tensor: &TensorDecomposition,
    opts: &SearchOptions,
) -> Result<TensorEvaluation> {
    let vanishing = check_vanishing(tensor, design)?;
    let value = match vanishing.verdict {
        Verdict::VanishesByDimension => BigRational::zero(),
        Verdict::Inconclusive => evaluate_invariant(design, tensor, opts)?,
    };
    Ok(TensorEvaluation {
        design: design.to_spec(),
        vanishing,
        value,
    })
}

/// Per-axis basis indices of `⟨ℓ,m,n⟩`, ids in `(i,j,k)` order.
pub fn matmul_table(l: usize, m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(l * m * n);
    for i in 1..=l {
        for j in 1..=m {
            for k in 1..=n {
                out.push(tensor::matmul_summand(l, m, n, i, j, k).to_vec());
            }
        }
    }
    out
}

/// `(i,j,k)`, 1-based, of matmul summand `id`.
pub fn matmul_coords(m: usize, n: usize, id: usize) -> [usize; 3] {
    [id / (m * n) + 1, (id / n) % m + 1, id % n + 1]
}

/// The design `B(n,ℓ,m)` on which `⟨ℓ,m,n⟩` is evaluated.
pub fn matmul_design(l: usize, m: usize, n: usize) -> Result<ObstructionDesign> {
    ObstructionDesign::build_box(&[n, l, m])
}

/// Valid classes of `⟨ℓ,m,n⟩` on `B(n,ℓ,m)`.
pub fn enumerate_valid_classes(l: usize, m: usize, n: usize) -> Result<Vec<EquivalenceClass>> {
    enumerate_classes(&matmul_design(l, m, n)?, &matmul_table(l, m, n))
}

/// The class of the labeling `I₀`: every summand once.
pub fn i0_class(l: usize, m: usize, n: usize) -> EquivalenceClass {
    EquivalenceClass::new((0..l * m * n).map(|id| (id, 1)))
}

/// `val_H(I₀)` on `B(n,ℓ,m)`, always `±1`.
pub fn matmul_orientation(l: usize, m: usize, n: usize) -> Result<i32> {
    let design = matmul_design(l, m, n)?;
    let lab = tensor::canonical_labeling_i0(l, m, n)?;
    let idx = lab.basis_indices().expect("I0 is a basis labeling");
    Ok(val_basis(&design, &idx))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: EquivalenceClass,
    /// Summands `(i,j,k)` with multiplicity.
    pub summands: Vec<([usize; 3], usize)>,
    pub canonical: bool,
    pub sum: ClassSum,
}

/// `F_{(ℓ,m,n)}(⟨ℓ,m,n⟩)` split by class.
///
/// `total` is `Σ_I val_H(ω_I)` with the lexicographic box order. Relabeling
/// the design's boxes can flip its sign; `oriented_value` fixes the sign so
/// that `val_H(I₀) = +1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatmulEvaluation {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub classes: Vec<ClassReport>,
    pub total: SignedCount,
    pub orientation: i32,
    #[serde(with = "crate::serde_big::bigint")]
    pub oriented_value: BigInt,
}

fn class_report(l: usize, m: usize, n: usize, class: EquivalenceClass, sum: ClassSum) -> ClassReport {
    ClassReport {
        summands: class
            .entries()
            .iter()
            .map(|&(id, mult)| (matmul_coords(m, n, id), mult))
            .collect(),
        canonical: class == i0_class(l, m, n),
        class,
        sum,
    }
}

fn per_class(opts: &SearchOptions, index: usize) -> SearchOptions {
    let mut o = opts.clone();
    if let Some(cfg) = &mut o.checkpoint {
        cfg.path = cfg.path.with_extension(format!("class{index}.json"));
    }
    o
}

pub fn evaluate_matmul(l: usize, m: usize, n: usize, opts: &SearchOptions) -> Result<MatmulEvaluation> {
    let design = matmul_design(l, m, n)?;
    let table = matmul_table(l, m, n);
    let mut classes = Vec::new();
    let mut total = SignedCount::zero();
    for (i, class) in enumerate_classes(&design, &table)?.into_iter().enumerate() {
        let sum = signed_class_sum(&design, &class, &table, &per_class(opts, i))?;
        total += &sum.distinct;
        classes.push(class_report(l, m, n, class, sum));
    }
    let orientation = matmul_orientation(l, m, n)?;
    Ok(MatmulEvaluation {
        l,
        m,
        n,
        oriented_value: total.value() * orientation,
        classes,
        total,
        orientation,
    })
}

/// `F_{(ℓ,m,n)}[⟨ℓ,m,n⟩_{I₀}]`, oriented like [`MatmulEvaluation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClassEvaluation {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub report: ClassReport,
    pub orientation: i32,
    #[serde(with = "crate::serde_big::bigint")]
    pub oriented_value: BigInt,
}

pub fn class_sum_i0(l: usize, m: usize, n: usize, opts: &SearchOptions) -> Result<CanonicalClassEvaluation> {
    let design = matmul_design(l, m, n)?;
    let class = i0_class(l, m, n);
    let sum = signed_class_sum(&design, &class, &matmul_table(l, m, n), opts)?;
    let orientation = matmul_orientation(l, m, n)?;
    Ok(CanonicalClassEvaluation {
        l,
        m,
        n,
        oriented_value: sum.distinct.value() * orientation,
        report: class_report(l, m, n, class, sum),
        orientation,
    })
}

/// A unit tensor evaluated on a cube, with or without a deleted diagonal.
///
/// With a diagonal deleted, `oriented_value` is `total` times
/// [`ObstructionDesign::diagonal_orientation`], which makes it the signed
/// count of the matching unipotent Latin cubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEvaluation {
    pub n: usize,
    /// Rank of the unit tensor.
    pub m: usize,
    pub design: DesignSpec,
    pub total: SignedCount,
    pub orientation: i32,
    #[serde(with = "crate::serde_big::bigint")]
    pub oriented_value: BigInt,
}

fn unit_on(design: ObstructionDesign, n: usize, m: usize, opts: &SearchOptions) -> Result<UnitEvaluation> {
    let total = basis_invariant_count(&design, &tensor::unit_tensor(m)?, opts)?;
    let orientation = design.diagonal_orientation().unwrap_or(1);
    Ok(UnitEvaluation {
        n,
        m,
        design: design.to_spec(),
        oriented_value: total.value() * orientation,
        total,
        orientation,
    })
}

/// `F_n(⟨n²⟩)` on `B(n,n,n)`.
pub fn evaluate_unit(n: usize, opts: &SearchOptions) -> Result<UnitEvaluation> {
    unit_on(ObstructionDesign::build_box(&[n, n, n])?, n, n * n, opts)
}

/// `F_{n²−1,D}(⟨n²−1⟩)` on `B(n,n,n) ∖ D`.
pub fn evaluate_unit_deleted(diagonal: &Diagonal, opts: &SearchOptions) -> Result<UnitEvaluation> {
    let n = diagonal.order();
    let design = ObstructionDesign::build_box(&[n, n, n])?.delete_diagonal(diagonal)?;
    unit_on(design, n, n * n - 1, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    VanishesByDimension,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub verdict: Verdict,
    /// Rank of each factor matrix: `dim W_a`.
    pub ranks: Vec<usize>,
    /// Length of each partition of the design type.
    pub required: Vec<usize>,
}

/// `F_H(t) = 0` whenever some factor span is smaller than the length of the
/// matching partition of the design type.
pub fn check_vanishing(tensor: &TensorDecomposition, design: &ObstructionDesign) -> Result<VanishingReport> {
    if tensor.dims().len() != design.k() {
        return Err(Error::DimensionMismatch(format!(
            "tensor has {} factors, design has {} axes",
            tensor.dims().len(),
            design.k()
        )));
    }
    let required: Vec<usize> = design.design_type().iter().map(|p| p.length()).collect();
    let ranks: Vec<usize> = (0..design.k()).map(|a| tensor.factor_rank(a)).collect();
    let verdict = if ranks.iter().zip(&required).any(|(r, q)| r < q) {
        Verdict::VanishesByDimension
    } else {
        Verdict::Inconclusive
    };
    Ok(VanishingReport {
        verdict,
        ranks,
        required,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceCheck {
    pub transformed: BigRational,
    pub original: BigRational,
    /// `∏ det(g_a)^{#slices on axis a}`.
    pub character: BigRational,
}

impl EquivarianceCheck {
    pub fn holds(&self) -> bool {
        self.transformed == &self.character * &self.original
    }
}

/// Both sides of `F((g₁⊗…⊗g_k)w) = ∏ det(g_a)^{d/dim_a} · F(w)`.
pub fn equivariance_sides(
    design: &ObstructionDesign,
    tensor: &TensorDecomposition,
    g: &[Vec<Vec<BigRational>>],
    opts: &SearchOptions,
) -> Result<EquivarianceCheck> {
    tensor.check_against(design)?;
    let moved = tensor.transformed(g)?;
    let mut character = BigRational::one();
    for (a, ga) in g.iter().enumerate() {
        let det = linalg::determinant(ga.clone());
        if det.is_zero() {
            return Err(Error::InvalidInput(format!("matrix {} is singular", a + 1)));
        }
        character *= num_traits::pow(det, design.axis_slices(a).len());
    }
    Ok(EquivarianceCheck {
        transformed: evaluate_invariant(design, &moved, opts)?,
        original: evaluate_invariant(design, tensor, opts)?,
        character,
    })
}

pub fn verify_equivariance(
    design: &ObstructionDesign,
    tensor: &TensorDecomposition,
    g: &[Vec<Vec<BigRational>>],
    opts: &SearchOptions,
) -> Result<bool> {
    Ok(equivariance_sides(design, tensor, g, opts)?.holds())
}

#[cfg(test)]
mod tests;
