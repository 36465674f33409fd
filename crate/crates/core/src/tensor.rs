//! Tensors as sums of rank-one terms, and the structured families evaluated
//! by the invariants.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::design::ObstructionDesign;
use crate::error::{Error, Result};
use crate::linalg;

/// One factor of a rank-one term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorVector {
    /// The standard basis vector `e_{index+1}` of the given dimension.
    Basis { index: usize, dim: usize },
    Dense(Vec<BigRational>),
}

impl FactorVector {
    pub fn basis(index: usize, dim: usize) -> Self {
        debug_assert!(index < dim);
        FactorVector::Basis { index, dim }
    }

    /// Builds a dense vector, collapsing it to `Basis` when it is one.
    pub fn dense(entries: Vec<BigRational>) -> Self {
        let nonzero: Vec<usize> = (0..entries.len()).filter(|&i| !entries[i].is_zero()).collect();
        if nonzero.len() == 1 && entries[nonzero[0]].is_one() {
            return FactorVector::Basis {
                index: nonzero[0],
                dim: entries.len(),
            };
        }
        FactorVector::Dense(entries)
    }

    pub fn dim(&self) -> usize {
        match self {
            FactorVector::Basis { dim, .. } => *dim,
            FactorVector::Dense(v) => v.len(),
        }
    }

    pub fn basis_index(&self) -> Option<usize> {
        match self {
            FactorVector::Basis { index, .. } => Some(*index),
            FactorVector::Dense(_) => None,
        }
    }

    pub fn entry(&self, i: usize) -> BigRational {
        match self {
            FactorVector::Basis { index, .. } => {
                if i == *index {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            FactorVector::Dense(v) => v[i].clone(),
        }
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        (0..self.dim()).map(|i| self.entry(i)).collect()
    }

    /// Zero-pads to `dim`, sending entry `i` to position `map(i)`.
    fn padded(&self, dim: usize, map: impl Fn(usize) -> usize) -> FactorVector {
        match self {
            FactorVector::Basis { index, .. } => FactorVector::basis(map(*index), dim),
            FactorVector::Dense(v) => {
                let mut out = vec![BigRational::zero(); dim];
                for (i, x) in v.iter().enumerate() {
                    out[map(i)] = x.clone();
                }
                FactorVector::Dense(out)
            }
        }
    }
}

/// `coef · v₁ ⊗ … ⊗ v_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneTerm {
    pub coef: BigRational,
    pub vectors: Vec<FactorVector>,
}

impl RankOneTerm {
    pub fn new(vectors: Vec<FactorVector>) -> Self {
        RankOneTerm {
            coef: BigRational::one(),
            vectors,
        }
    }

    pub fn is_basis(&self) -> bool {
        self.vectors.iter().all(|v| v.basis_index().is_some())
    }

    /// Per-axis basis indices, when every factor is a basis vector.
    pub fn basis_indices(&self) -> Option<Vec<usize>> {
        self.vectors.iter().map(FactorVector::basis_index).collect()
    }
}

/// What a tensor was built as. Only used to pick embeddings and labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorKind {
    Matmul { l: usize, m: usize, n: usize },
    Unit { m: usize },
    Vandermonde,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDecomposition {
    dims: Vec<usize>,
    terms: Vec<RankOneTerm>,
    kind: TensorKind,
}

impl TensorDecomposition {
    pub fn new(dims: Vec<usize>, terms: Vec<RankOneTerm>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidInput(format!("bad factor dimensions {dims:?}")));
        }
        for (t, term) in terms.iter().enumerate() {
            if term.vectors.len() != dims.len() {
                return Err(Error::DimensionMismatch(format!(
                    "term {t} has {} factors, expected {}",
                    term.vectors.len(),
                    dims.len()
                )));
            }
            for (a, v) in term.vectors.iter().enumerate() {
                if v.dim() != dims[a] {
                    return Err(Error::DimensionMismatch(format!(
                        "term {t}, factor {}: dimension {} but expected {}",
                        a + 1,
                        v.dim(),
                        dims[a]
                    )));
                }
            }
        }
        Ok(TensorDecomposition {
            dims,
            terms,
            kind: TensorKind::General,
        })
    }

    fn with_kind(mut self, kind: TensorKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn terms(&self) -> &[RankOneTerm] {
        &self.terms
    }

    pub fn kind(&self) -> &TensorKind {
        &self.kind
    }

    /// Number of rank-one terms `r`.
    pub fn rank_one_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_basis(&self) -> bool {
        self.terms.iter().all(RankOneTerm::is_basis)
    }

    /// Columns of the factor matrix on `axis`.
    pub fn factor_matrix(&self, axis: usize) -> Vec<Vec<BigRational>> {
        self.terms.iter().map(|t| t.vectors[axis].to_dense()).collect()
    }

    pub fn factor_rank(&self, axis: usize) -> usize {
        linalg::rank_of_columns(&self.factor_matrix(axis))
    }

    /// `(g₁ ⊗ … ⊗ g_k) · self`.
    pub fn transformed(&self, g: &[Vec<Vec<BigRational>>]) -> Result<Self> {
        if g.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} factors",
                g.len(),
                self.dims.len()
            )));
        }
        for (a, ga) in g.iter().enumerate() {
            if ga.len() != self.dims[a] || !linalg::is_square(ga) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} must be {}×{}",
                    a + 1,
                    self.dims[a],
                    self.dims[a]
                )));
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let vectors = t
                .vectors
                .iter()
                .zip(g)
                .map(|(v, ga)| linalg::mat_vec(ga, &v.to_dense()).map(FactorVector::dense))
                .collect::<Result<_>>()?;
            terms.push(RankOneTerm {
                coef: t.coef.clone(),
                vectors,
            });
        }
        TensorDecomposition::new(self.dims.clone(), terms)
    }

    /// Checks that the factor dimensions equal the slice sizes of `design`.
    pub fn check_against(&self, design: &ObstructionDesign) -> Result<()> {
        if self.dims.len() != design.k() {
            return Err(Error::DimensionMismatch(format!(
                "tensor has {} factors, design has {} axes",
                self.dims.len(),
                design.k()
            )));
        }
        for a in 0..design.k() {
            for s in design.axis_slices(a) {
                if s.len() != self.dims[a] {
                    return Err(Error::DimensionMismatch(format!(
                        "axis {} slice {} has {} boxes, factor dimension is {}",
                        a + 1,
                        s.value,
                        s.len(),
                        self.dims[a]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> TensorSpec {
        TensorSpec {
            dims: self.dims.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TermSpec {
                    coef: t.coef.to_string(),
                    vectors: t
                        .vectors
                        .iter()
                        .map(|v| v.to_dense().iter().map(|x| x.to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

/// JSON form: `{"dims":[…], "terms":[{"coef":"1","vectors":[[…],…]},…]}`.
/// Entries may be strings (`"3/4"`) or plain JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSpec {
    pub dims: Vec<usize>,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    #[serde(default = "one_string", deserialize_with = "number_or_string")]
    pub coef: String,
    #[serde(deserialize_with = "nested_numbers")]
    pub vectors: Vec<Vec<String>>,
}

fn one_string() -> String {
    "1".into()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Int(i64),
    Str(String),
}

impl From<NumOrStr> for String {
    fn from(v: NumOrStr) -> String {
        match v {
            NumOrStr::Int(i) => i.to_string(),
            NumOrStr::Str(s) => s,
        }
    }
}

fn number_or_string<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    Ok(NumOrStr::deserialize(d)?.into())
}

fn nested_numbers<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<Vec<String>>, D::Error> {
    let raw = Vec::<Vec<NumOrStr>>::deserialize(d)?;
    Ok(raw
        .into_iter()
        .map(|v| v.into_iter().map(String::from).collect())
        .collect())
}

impl TensorSpec {
    pub fn build(&self) -> Result<TensorDecomposition> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let coef = linalg::parse_rational(&t.coef)?;
            let vectors = t
                .vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|x| linalg::parse_rational(x))
                        .collect::<Result<Vec<_>>>()
                        .map(FactorVector::dense)
                })
                .collect::<Result<_>>()?;
            terms.push(RankOneTerm { coef, vectors });
        }
        TensorDecomposition::new(self.dims.clone(), terms)
    }
}

impl Serialize for TensorDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TensorSpec::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

/// Per-axis basis indices (0-based) of the summand `⟨ℓ,m,n⟩_{i,j,k}`, with
/// `i, j, k` 1-based.
pub fn matmul_summand(l: usize, m: usize, n: usize, i: usize, j: usize, k: usize) -> [usize; 3] {
    [(i - 1) * m + j - 1, (j - 1) * n + k - 1, (k - 1) * l + i - 1]
}

/// `⟨ℓ,m,n⟩ = Σ e_{(i-1)m+j} ⊗ e_{(j-1)n+k} ⊗ e_{(k-1)ℓ+i}`, terms in
/// lexicographic `(i,j,k)` order.
pub fn matmul_tensor(l: usize, m: usize, n: usize) -> Result<TensorDecomposition> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::InvalidInput("matrix sizes must be positive".into()));
    }
    let dims = vec![l * m, m * n, n * l];
    let mut terms = Vec::with_capacity(l * m * n);
    for i in 1..=l {
        for j in 1..=m {
            for k in 1..=n {
                let idx = matmul_summand(l, m, n, i, j, k);
                terms.push(RankOneTerm::new(
                    (0..3).map(|a| FactorVector::basis(idx[a], dims[a])).collect(),
                ));
            }
        }
    }
    Ok(TensorDecomposition::new(dims, terms)?.with_kind(TensorKind::Matmul { l, m, n }))
}

/// `⟨m⟩ = Σ eᵢ ⊗ eᵢ ⊗ eᵢ`.
pub fn unit_tensor(m: usize) -> Result<TensorDecomposition> {
    unit_tensor_k(m, 3)
}

/// The order-`k` unit tensor `Σ eᵢ ⊗ … ⊗ eᵢ`.
pub fn unit_tensor_k(m: usize, k: usize) -> Result<TensorDecomposition> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidInput("unit tensor needs m, k ≥ 1".into()));
    }
    let terms = (0..m)
        .map(|i| RankOneTerm::new(vec![FactorVector::basis(i, m); k]))
        .collect();
    Ok(TensorDecomposition::new(vec![m; k], terms)?.with_kind(TensorKind::Unit { m }))
}

/// The labeling `I₀` of `B(n,ℓ,m)`: summand `⟨ℓ,m,n⟩_{i,j,k}` sits at box
/// `(k,i,j)`.
pub fn canonical_labeling_i0(l: usize, m: usize, n: usize) -> Result<crate::valuation::Labeling> {
    let design = ObstructionDesign::build_box(&[n, l, m])?;
    let dims = [l * m, m * n, n * l];
    let mut columns = vec![Vec::new(); design.len()];
    for i in 1..=l {
        for j in 1..=m {
            for k in 1..=n {
                let p = design.position_of(&[k, i, j]).expect("box inside B(n,l,m)");
                let idx = matmul_summand(l, m, n, i, j, k);
                columns[p] = (0..3).map(|a| FactorVector::basis(idx[a], dims[a])).collect();
            }
        }
    }
    crate::valuation::Labeling::new(&design, columns)
}

/// `V_r = Σ aᵢ ⊗ bᵢ ⊗ cᵢ` with `aᵢ = (1, xᵢ, …, xᵢ^{ℓm-1})`,
/// `bᵢ = (1, yᵢ, …, yᵢ^{mn-1})`, `cᵢ = (1, zᵢ, …, zᵢ^{nℓ-1})`.
pub fn vandermonde_tensor(
    l: usize,
    m: usize,
    n: usize,
    points: &[[BigRational; 3]],
) -> Result<TensorDecomposition> {
    if l == 0 || m == 0 || n == 0 || points.is_empty() {
        return Err(Error::InvalidInput(
            "Vandermonde tensor needs positive sizes and at least one point".into(),
        ));
    }
    let dims = vec![l * m, m * n, n * l];
    let powers = |x: &BigRational, len: usize| {
        let mut v = Vec::with_capacity(len);
        let mut p = BigRational::one();
        for _ in 0..len {
            v.push(p.clone());
            p *= x;
        }
        FactorVector::dense(v)
    };
    let terms = points
        .iter()
        .map(|pt| RankOneTerm::new((0..3).map(|a| powers(&pt[a], dims[a])).collect()))
        .collect();
    Ok(TensorDecomposition::new(dims, terms)?.with_kind(TensorKind::Vandermonde))
}

/// Solves `ℓm = a, mn = b, nℓ = c` in positive integers.
fn matmul_shape(dims: &[usize]) -> Option<(usize, usize, usize)> {
    let &[a, b, c] = dims else { return None };
    let l2 = a.checked_mul(c)? / b;
    if l2 * b != a * c {
        return None;
    }
    let l = (l2 as f64).sqrt().round() as usize;
    if l == 0 || l * l != l2 || a % l != 0 || c % l != 0 {
        return None;
    }
    let (m, n) = (a / l, c / l);
    (m * n == b).then_some((l, m, n))
}

/// Zero-pads every factor to `new_dims`. A matrix-multiplication tensor
/// going to a matrix-multiplication shape keeps its matrix coordinates
/// (`E^{ℓ'×m'}_{i,j}` read as `E^{ℓ×m}_{i,j}`); anything else is padded at
/// the end.
pub fn embed_tensor(t: &TensorDecomposition, new_dims: &[usize]) -> Result<TensorDecomposition> {
    if new_dims.len() != t.dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "cannot embed {} factors into {}",
            t.dims.len(),
            new_dims.len()
        )));
    }
    if new_dims.iter().zip(&t.dims).any(|(n, o)| n < o) {
        return Err(Error::InvalidInput(format!(
            "cannot shrink {:?} to {new_dims:?}",
            t.dims
        )));
    }
    let target = match (&t.kind, matmul_shape(new_dims)) {
        (TensorKind::Matmul { l, m, n }, Some((l2, m2, n2))) if l2 >= *l && m2 >= *m && n2 >= *n => {
            Some(([*l, *m, *n], [l2, m2, n2]))
        }
        _ => None,
    };
    let terms = t
        .terms
        .iter()
        .map(|term| RankOneTerm {
            coef: term.coef.clone(),
            vectors: term
                .vectors
                .iter()
                .enumerate()
                .map(|(a, v)| match target {
                    // factor a is (row size × col size) = (s[a] × s[a+1])
                    Some((old, new)) => {
                        let cols_old = old[(a + 1) % 3];
                        let cols_new = new[(a + 1) % 3];
                        v.padded(new_dims[a], |i| (i / cols_old) * cols_new + i % cols_old)
                    }
                    None => v.padded(new_dims[a], |i| i),
                })
                .collect(),
        })
        .collect();
    let out = TensorDecomposition::new(new_dims.to_vec(), terms)?;
    Ok(if new_dims == t.dims.as_slice() {
        out.with_kind(t.kind.clone())
    } else {
        out
    })
}
