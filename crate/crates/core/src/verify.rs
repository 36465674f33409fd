//! Seeded property suites, run by `obstruction verify <suite>`.
//!
//! Each suite checks one family of identities on random or exhaustive
//! inputs and reports every case, so a failure names its input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::design::{Diagonal, ObstructionDesign};
use crate::error::{Error, Result};
use crate::kron;
use crate::latin::{self, CubeFamily, LatinCube};
use crate::partition::Partition;
use crate::perm;
use crate::run::SearchOptions;
use crate::sample;
use crate::tensor;
use crate::valuation::{self, EquivalenceClass};

pub const SUITES: &[&str] = &[
    "equivariance",
    "diagonal-independence",
    "slice-invariance",
    "class-oracle",
    "latin-sign",
    "inclusion-exclusion",
    "kronecker-symmetry",
    "dual-path",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub cases: Vec<CaseResult>,
}

struct Cases(Vec<CaseResult>);

impl Cases {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CaseResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn run_suite(name: &str, seed: u64, opts: &SearchOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Cases(Vec::new());
    match name {
        "equivariance" => equivariance(&mut rng, opts, &mut c)?,
        "diagonal-independence" => diagonal_independence(&mut rng, opts, &mut c)?,
        "slice-invariance" => slice_invariance(&mut rng, &mut c)?,
        "class-oracle" => class_oracle(&mut rng, opts, &mut c)?,
        "latin-sign" => latin_sign(&mut rng, &mut c)?,
        "inclusion-exclusion" => inclusion_exclusion(opts, &mut c)?,
        "kronecker-symmetry" => kronecker_symmetry(&mut c)?,
        "dual-path" => dual_path(opts, &mut c)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        passed: c.0.iter().all(|r| r.passed),
        cases: c.0,
    })
}

fn equivariance(rng: &mut ChaCha8Rng, opts: &SearchOptions, c: &mut Cases) -> Result<()> {
    // ⟨1,2,2⟩ lives on B(2,1,2) with factor dimensions (2,4,2)
    let design = valuation::matmul_design(1, 2, 2)?;
    let dims = [2, 4, 2];
    for case in 0..20 {
        let t = sample::integer_tensor(rng, &dims, 5, 3)?;
        let g: Vec<_> = dims.iter().map(|&d| sample::unimodular(rng, d)).collect();
        let sides = valuation::equivariance_sides(&design, &t, &g, opts)?;
        c.check(
            format!("unimodular {case}"),
            sides.holds(),
            format!("F(gw) = {}, χ(g) F(w) = {}·{}", sides.transformed, sides.character, sides.original),
        );
    }
    let two = BigRational::from_integer(2.into());
    let t = sample::integer_tensor(rng, &dims, 4, 2)?;
    let g: Vec<_> = dims.iter().map(|&d| sample::scaling(d, two.clone())).collect();
    let sides = valuation::equivariance_sides(&design, &t, &g, opts)?;
    c.check(
        "determinant 2 on every factor",
        sides.holds() && sides.character == BigRational::from_integer(32.into()),
        format!("character {}", sides.character),
    );
    // F_{3,D} on B(2,2,2) ∖ D: character (det g₁ det g₂ det g₃)²
    let h = ObstructionDesign::build_box(&[2, 2, 2])?.delete_diagonal(&Diagonal::main(2))?;
    for case in 0..5 {
        let t = sample::integer_tensor(rng, &[3, 3, 3], 4, 2)?;
        let g: Vec<_> = (0..3).map(|_| sample::unimodular(rng, 3)).collect();
        let sides = valuation::equivariance_sides(&h, &t, &g, opts)?;
        c.check(format!("deleted diagonal {case}"), sides.holds(), format!("F(w) = {}", sides.original));
    }
    Ok(())
}

fn diagonal_independence(rng: &mut ChaCha8Rng, opts: &SearchOptions, c: &mut Cases) -> Result<()> {
    let cube = ObstructionDesign::build_box(&[2, 2, 2])?;
    let designs = Diagonal::all(2)
        .iter()
        .map(|d| cube.delete_diagonal(d))
        .collect::<Result<Vec<_>>>()?;
    for case in 0..20 {
        let t = sample::rational_tensor(rng, &[3, 3, 3], 3, 3)?;
        let values = designs
            .iter()
            .map(|h| valuation::evaluate_invariant(h, &t, opts))
            .collect::<Result<Vec<_>>>()?;
        c.check(
            format!("tensor {case}"),
            values.iter().all(|v| v == &values[0]),
            values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        );
    }
    Ok(())
}

/// Moves a labeling along with the boxes: box `p` goes to `map[p]`.
fn transport(labels: &[Vec<usize>], map: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); labels.len()];
    for (p, l) in labels.iter().enumerate() {
        out[map[p]] = l.clone();
    }
    out
}

fn slice_invariance(rng: &mut ChaCha8Rng, c: &mut Cases) -> Result<()> {
    let cube = ObstructionDesign::build_box(&[2, 2, 2])?;
    for d1 in Diagonal::all(2) {
        for d2 in Diagonal::all(2) {
            let h1 = cube.delete_diagonal(&d1)?;
            let mut ok = true;
            for trial in 0..10 {
                let w = if trial % 2 == 0 {
                    sample::nonzero_basis_labeling(rng, &h1)
                } else {
                    sample::basis_labeling(rng, &h1)
                };
                let (mut h, mut moved) = (h1.clone(), w.clone());
                for (axis, p) in d1.transport_to(&d2)? {
                    let (next, map) = h.apply_slice_permutation(axis, &p)?;
                    moved = transport(&moved, &map);
                    h = next;
                }
                ok &= valuation::val_basis(&h1, &w) == valuation::val_basis(&h, &moved);
            }
            c.check(
                format!("diagonal {:?}/{:?} to {:?}/{:?}", d1.sigma(), d1.tau(), d2.sigma(), d2.tau()),
                ok,
                "val unchanged by transport",
            );
        }
    }
    for dims in [[1, 2, 2], [2, 2, 2], [2, 2, 3], [3, 2, 2], [1, 3, 4], [2, 3, 2], [3, 1, 4]] {
        let h = ObstructionDesign::build_box(&dims)?;
        let mut ok = true;
        for trial in 0..20 {
            let w = if trial % 2 == 0 {
                sample::nonzero_basis_labeling(rng, &h)
            } else {
                sample::basis_labeling(rng, &h)
            };
            let axis = rng.gen_range(0..3);
            let mut p: Vec<usize> = (0..dims[axis]).collect();
            p.shuffle(rng);
            let (same, map) = h.apply_slice_permutation(axis, &p)?;
            ok &= same == h && valuation::val_basis(&h, &w) == valuation::val_basis(&h, &transport(&w, &map));
        }
        c.check(format!("full box {dims:?}"), ok, "val unchanged by slice permutations");
    }
    Ok(())
}

/// `Σ_{π∈S_d} val(π·v)` by listing every permutation of the positions.
pub fn naive_symmetric_sum(design: &ObstructionDesign, class: &EquivalenceClass, table: &[Vec<usize>]) -> BigInt {
    let v = class.arrangement();
    let mut pi = perm::identity(v.len());
    let mut total = 0i64;
    loop {
        let labels: Vec<Vec<usize>> = pi.iter().map(|&q| table[v[q]].clone()).collect();
        total += i64::from(valuation::val_basis(design, &labels));
        if !perm::next_permutation(&mut pi) {
            break;
        }
    }
    total.into()
}

fn class_oracle(rng: &mut ChaCha8Rng, opts: &SearchOptions, c: &mut Cases) -> Result<()> {
    let shapes = [(1, 1, 2), (1, 2, 2), (1, 2, 3), (2, 2, 2), (1, 1, 3), (2, 1, 3), (3, 1, 3), (1, 3, 3)];
    for case in 0..50 {
        let (l, m, n) = shapes[case % shapes.len()];
        let design = valuation::matmul_design(l, m, n)?;
        let table = valuation::matmul_table(l, m, n);
        let class = if case % 2 == 0 {
            let valid = valuation::enumerate_classes(&design, &table)?;
            valid[rng.gen_range(0..valid.len())].clone()
        } else {
            sample::class(rng, table.len(), design.len())
        };
        let fast = valuation::signed_class_sum(&design, &class, &table, opts)?.symmetric();
        let slow = naive_symmetric_sum(&design, &class, &table);
        c.check(
            format!("⟨{l},{m},{n}⟩ class {:?}", class.entries()),
            fast.value() == slow,
            format!("optimized {} naive {slow}", fast.value()),
        );
    }
    Ok(())
}

fn latin_sign(rng: &mut ChaCha8Rng, c: &mut Cases) -> Result<()> {
    let mut cubes = Vec::new();
    latin::enumerate_latin_cubes(2, CubeFamily::All, None, |cube| cubes.push(cube.clone()))?;
    for _ in 0..100 {
        cubes.push(sample::latin_cube(rng, 3)?);
    }
    let mut sign_ok = true;
    let mut layers_ok = true;
    for cube in &cubes {
        let n = cube.order();
        for axis in 0..3 {
            for (p, _) in perm::all_with_sign(n) {
                sign_ok &= cube.permute_slices(axis, &p)?.sign() == cube.sign();
            }
        }
        layers_ok &= layer_sum_ok(cube);
    }
    c.check("slice permutations keep the sign", sign_ok, format!("{} cubes", cubes.len()));
    c.check("symbol layers rebuild the cube", layers_ok, format!("{} cubes", cubes.len()));
    Ok(())
}

fn layer_sum_ok(cube: &LatinCube) -> bool {
    let n = cube.order();
    let mut ones = vec![0usize; n * n * n];
    let mut rebuilt = vec![0usize; n * n * n];
    for (s, layer) in cube.layers().iter().enumerate() {
        for (cell, &b) in layer.to_array().iter().enumerate() {
            ones[cell] += usize::from(b);
            rebuilt[cell] += (s + 1) * usize::from(b);
        }
    }
    ones.iter().all(|&x| x == 1) && rebuilt == cube.entries()
}

fn inclusion_exclusion(opts: &SearchOptions, c: &mut Cases) -> Result<()> {
    for n in 1..=2 {
        let census = latin::latin_census(n, CubeFamily::All, opts)?;
        let sym = latin::symbol_delta_by_inclusion_exclusion(n)?;
        let count = latin::count_by_inclusion_exclusion(n)?;
        c.check(
            format!("symbol delta n={n}"),
            sym == census.symbol_delta(),
            format!("sum {sym}, census {}", census.symbol_delta()),
        );
        c.check(
            format!("count n={n}"),
            count == BigInt::from(census.total.clone()),
            format!("sum {count}, census {}", census.total),
        );
    }
    Ok(())
}

fn kronecker_symmetry(c: &mut Cases) -> Result<()> {
    for d in 1..=6 {
        let parts = Partition::all(d);
        let mut ok = true;
        for a in &parts {
            for b in &parts {
                for e in &parts {
                    let k = kron::kronecker_coefficient(a, b, e)?;
                    for [x, y, z] in [[a, b, e], [a, e, b], [b, a, e], [b, e, a], [e, a, b], [e, b, a]] {
                        ok &= kron::kronecker_coefficient(x, y, z)? == k;
                    }
                    ok &= kron::kronecker_coefficient(&a.conjugate(), &b.conjugate(), e)? == k;
                    ok &= kron::kronecker_coefficient(a, &b.conjugate(), &e.conjugate())? == k;
                }
            }
        }
        c.check(format!("degree {d}"), ok, format!("{} triples", parts.len().pow(3)));
    }
    for j in 0..=4 {
        let s = kron::rectangle_symmetry(2, j)?;
        c.check(
            format!("k_(4-{j})(2) = k_{j}(2)"),
            s.holds(),
            format!("{} vs {}", s.complement, s.direct),
        );
    }
    Ok(())
}

fn dual_path(opts: &SearchOptions, c: &mut Cases) -> Result<()> {
    let census = latin::latin_census(2, CubeFamily::All, opts)?;
    let unit = valuation::evaluate_unit(2, opts)?;
    c.check(
        "cube delta n=2 vs F_2(⟨4⟩)",
        census.delta() == unit.oriented_value,
        format!("{} vs {}", census.delta(), unit.oriented_value),
    );
    let uni = latin::unipotent_delta(2, opts)?;
    for d in Diagonal::all(2) {
        let f = valuation::evaluate_unit_deleted(&d, opts)?;
        c.check(
            format!("unipotent n=2 vs F_3,D for D = {:?}", d.cells()),
            uni.value() == f.oriented_value,
            format!("{} vs {} (raw {})", uni.value(), f.oriented_value, f.total.value()),
        );
    }
    for n in 2..=3 {
        let sq = latin::latin_square_delta(n, opts.budget_nodes)?;
        let design = ObstructionDesign::build_box(&[n, n])?;
        let f = valuation::evaluate_invariant(&design, &tensor::unit_tensor_k(n, 2)?, opts)?;
        c.check(
            format!("square delta n={n} vs F_(n,n)(⟨n⟩)"),
            BigRational::from_integer(sq.value()) == f,
            format!("{} vs {f}", sq.value()),
        );
    }
    let one = BigRational::one();
    let f1 = valuation::evaluate_invariant(&ObstructionDesign::build_box(&[1, 1, 1])?, &tensor::unit_tensor(1)?, opts)?;
    c.check("order one", f1 == one && !census.total.is_zero(), f1.to_string());
    Ok(())
}
