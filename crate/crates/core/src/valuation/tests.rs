use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linalg::rat;
use crate::sample;
use crate::tensor::{embed_tensor, matmul_tensor, RankOneTerm};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

/// Sign of a sequence by counting inversions directly; 0 on repeats or
/// indices past the slice.
fn slow_sign(seq: &[usize]) -> i64 {
    let n = seq.len();
    if seq.iter().any(|&e| e >= n) {
        return 0;
    }
    let mut inv = 0;
    for a in 0..n {
        for b in a + 1..n {
            if seq[a] == seq[b] {
                return 0;
            }
            inv += usize::from(seq[a] > seq[b]);
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn slow_val(design: &ObstructionDesign, labels: &[Vec<usize>]) -> i64 {
    design
        .slices()
        .iter()
        .map(|s| slow_sign(&s.positions.iter().map(|&p| labels[p][s.axis]).collect::<Vec<_>>()))
        .product()
}

/// Heap's algorithm over all `d!` orders of `v`.
fn literal_sum(design: &ObstructionDesign, v: &[usize], table: &[Vec<usize>]) -> i64 {
    let mut a = v.to_vec();
    let n = a.len();
    let mut c = vec![0; n];
    let eval = |a: &[usize]| slow_val(design, &a.iter().map(|&id| table[id].clone()).collect::<Vec<_>>());
    let mut total = eval(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            total += eval(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

#[test]
fn truncated_val() {
    let a = FactorVector::dense(vec![rat(1), rat(2), rat(3)]);
    let b = FactorVector::dense(vec![rat(0), rat(1), rat(2)]);
    assert_eq!(val_vectors(&[&a, &b]), rat(1));
    assert_eq!(val_vectors(&[&b, &a]), rat(-1));
}

#[test]
fn repeated_index_in_a_slice_is_zero() {
    let design = ObstructionDesign::build_box(&[2, 2, 2]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut w = sample::nonzero_basis_labeling(&mut rng, &design);
    assert_ne!(val_basis(&design, &w), 0);
    let s = &design.slices()[0];
    let (p, q) = (s.positions[0], s.positions[1]);
    w[q][0] = w[p][0];
    assert_eq!(val_basis(&design, &w), 0);
}

#[test]
fn i0_is_positive_on_223() {
    let design = matmul_design(2, 2, 3).unwrap();
    let lab = tensor::canonical_labeling_i0(2, 2, 3).unwrap();
    assert_eq!(val(&design, &lab).unwrap(), rat(1));
    assert_eq!(matmul_orientation(2, 2, 3).unwrap(), 1);
}

#[test]
fn i0_nonzero_up_to_16_summands() {
    for l in 1..=4 {
        for m in 1..=4 {
            for n in 1..=4 {
                if l * m * n <= 16 {
                    assert_ne!(matmul_orientation(l, m, n).unwrap(), 0, "({l},{m},{n})");
                }
            }
        }
    }
}

#[test]
fn dense_and_basis_paths_agree() {
    let design = matmul_design(1, 2, 2).unwrap();
    let t = matmul_tensor(1, 2, 2).unwrap();
    let dense_terms = t
        .terms()
        .iter()
        .map(|term| RankOneTerm::new(term.vectors.iter().map(|v| FactorVector::Dense(v.to_dense())).collect()))
        .collect();
    let dense = TensorDecomposition::new(t.dims().to_vec(), dense_terms).unwrap();
    let a = evaluate_invariant(&design, &t, &opts()).unwrap();
    let b = evaluate_dense(&design, &dense, None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, rat(-12));
}

#[test]
fn classes_sum_to_the_invariant() {
    for (l, m, n) in [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 2), (1, 2, 3)] {
        let e = evaluate_matmul(l, m, n, &opts()).unwrap();
        let direct = evaluate_invariant(&matmul_design(l, m, n).unwrap(), &matmul_tensor(l, m, n).unwrap(), &opts()).unwrap();
        assert_eq!(BigRational::from_integer(e.total.value()), direct, "({l},{m},{n})");
        assert_eq!(e.oriented_value, e.total.value() * e.orientation);
    }
}

#[test]
fn weighted_classes_match_dense_sum() {
    // unequal coefficients take the class route
    let design = matmul_design(1, 2, 2).unwrap();
    let t = matmul_tensor(1, 2, 2).unwrap();
    let terms: Vec<RankOneTerm> = t
        .terms()
        .iter()
        .enumerate()
        .map(|(i, term)| RankOneTerm {
            coef: rat(i as i64 + 1),
            vectors: term.vectors.clone(),
        })
        .collect();
    let weighted = TensorDecomposition::new(t.dims().to_vec(), terms.clone()).unwrap();
    let dense = TensorDecomposition::new(
        t.dims().to_vec(),
        terms
            .into_iter()
            .map(|term| RankOneTerm {
                coef: term.coef,
                vectors: term.vectors.iter().map(|v| FactorVector::Dense(v.to_dense())).collect(),
            })
            .collect(),
    )
    .unwrap();
    assert_eq!(
        evaluate_invariant(&design, &weighted, &opts()).unwrap(),
        evaluate_dense(&design, &dense, None).unwrap()
    );
}

#[test]
fn perturbed_classes_vanish() {
    let design = matmul_design(2, 2, 2).unwrap();
    let table = matmul_table(2, 2, 2);
    for class in enumerate_classes(&design, &table).unwrap() {
        let mut ids = class.arrangement();
        for (slot, other) in [(0, 7), (3, 0), (5, 2)] {
            let old = ids[slot];
            ids[slot] = other;
            let bent = EquivalenceClass::from_arrangement(&ids);
            if !bent.satisfies_marginals(&design, &table) {
                let s = signed_class_sum(&design, &bent, &table, &opts()).unwrap();
                assert!(s.distinct.is_zero());
                assert_eq!(literal_sum(&design, &bent.arrangement(), &table), 0);
            }
            ids[slot] = old;
        }
    }
}

#[test]
fn vanishing_verdicts() {
    let design = ObstructionDesign::build_box(&[3, 3, 3]).unwrap();
    let t = embed_tensor(&matmul_tensor(2, 3, 3).unwrap(), &[9, 9, 9]).unwrap();
    let r = check_vanishing(&t, &design).unwrap();
    assert_eq!(r.verdict, Verdict::VanishesByDimension);
    assert_eq!(r.ranks, vec![6, 9, 6]);
    assert_eq!(r.required, vec![9, 9, 9]);

    let r = check_vanishing(&matmul_tensor(2, 2, 3).unwrap(), &matmul_design(2, 2, 3).unwrap()).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert_eq!(r.ranks, vec![4, 6, 6]);

    let one = TensorDecomposition::new(vec![2, 4, 2], vec![matmul_tensor(1, 2, 2).unwrap().terms()[0].clone()]).unwrap();
    let r = check_vanishing(&one, &matmul_design(1, 2, 2).unwrap()).unwrap();
    assert_eq!(r.verdict, Verdict::VanishesByDimension);
}

#[test]
fn evaluate_tensor_skips_search_when_rank_is_short() {
    let design = ObstructionDesign::build_box(&[3, 3, 3]).unwrap();
    let t = embed_tensor(&matmul_tensor(2, 3, 3).unwrap(), &[9, 9, 9]).unwrap();
    let strict = SearchOptions {
        budget_nodes: Some(1),
        ..opts()
    };
    let r = evaluate_tensor(&design, &t, &strict).unwrap();
    assert!(r.value.is_zero());
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<TensorEvaluation>(&json).unwrap(), r);
}

#[test]
fn unit_tensor_values() {
    let f = evaluate_unit(2, &opts()).unwrap();
    assert_eq!(f.oriented_value, BigInt::from(24));
    let h = evaluate_unit_deleted(&Diagonal::main(2), &opts()).unwrap();
    assert_eq!(h.total.value(), BigInt::from(-6));
    assert_eq!(h.orientation, -1);
    assert_eq!(h.oriented_value, BigInt::from(6));
}

#[test]
fn reports_round_trip() {
    let e = evaluate_matmul(2, 2, 2, &opts()).unwrap();
    let back: MatmulEvaluation = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
    assert_eq!(back, e);
    let c = class_sum_i0(1, 2, 2, &opts()).unwrap();
    let back: CanonicalClassEvaluation = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn worker_count_does_not_change_reports() {
    let one = evaluate_matmul(2, 2, 2, &SearchOptions::with_workers(1)).unwrap();
    let four = evaluate_matmul(2, 2, 2, &SearchOptions::with_workers(4)).unwrap();
    assert_eq!(one, four);
}

#[test]
fn checkpoint_resume_matches_uninterrupted() {
    let dir = std::env::temp_dir().join(format!("obstruction-resume-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("i0.json");
    let _ = std::fs::remove_file(&path);
    let cp = Some(CheckpointConfig {
        path: path.clone(),
        interval: std::time::Duration::ZERO,
    });
    let full = class_sum_i0(1, 3, 3, &opts()).unwrap();
    let cut = SearchOptions {
        budget_nodes: Some(20_000),
        checkpoint: cp.clone(),
        ..opts()
    };
    assert!(matches!(class_sum_i0(1, 3, 3, &cut), Err(Error::BudgetExceeded { .. })));
    let saved = Checkpoint::load(&path).unwrap().unwrap();
    assert!(!saved.is_complete());
    let resumed = class_sum_i0(1, 3, 3, &SearchOptions { checkpoint: cp, ..opts() }).unwrap();
    assert_eq!(resumed, full);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn checkpoint_for_another_class_is_refused() {
    let dir = std::env::temp_dir().join(format!("obstruction-mismatch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cp.json");
    let cp = Some(CheckpointConfig {
        path: path.clone(),
        interval: std::time::Duration::ZERO,
    });
    class_sum_i0(1, 2, 2, &SearchOptions { checkpoint: cp.clone(), ..opts() }).unwrap();
    let other = class_sum_i0(2, 1, 2, &SearchOptions { checkpoint: cp, ..opts() });
    assert!(matches!(other, Err(Error::Checkpoint(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn shape() -> impl Strategy<Value = (usize, usize, usize)> {
    prop_oneof![
        Just((1, 1, 2)),
        Just((1, 2, 2)),
        Just((2, 1, 2)),
        Just((1, 2, 3)),
        Just((1, 1, 3)),
        Just((2, 2, 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn class_sum_matches_literal_sum((l, m, n) in shape(), seed in any::<u64>(), pick_valid in any::<bool>()) {
        let design = matmul_design(l, m, n).unwrap();
        let table = matmul_table(l, m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let class = if pick_valid {
            let valid = enumerate_classes(&design, &table).unwrap();
            valid[seed as usize % valid.len()].clone()
        } else {
            sample::class(&mut rng, table.len(), design.len())
        };
        let sum = signed_class_sum(&design, &class, &table, &opts()).unwrap();
        prop_assert_eq!(sum.symmetric().value(), BigInt::from(literal_sum(&design, &class.arrangement(), &table)));
    }

    #[test]
    fn val_basis_is_a_sign(seed in any::<u64>(), dims in prop::sample::select(vec![[2usize, 2, 2], [1, 2, 3], [3, 2, 2], [2, 3, 1]])) {
        let design = ObstructionDesign::build_box(&dims).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for w in [sample::basis_labeling(&mut rng, &design), sample::nonzero_basis_labeling(&mut rng, &design)] {
            let v = val_basis(&design, &w);
            prop_assert!((-1..=1).contains(&v));
            prop_assert_eq!(i64::from(v), slow_val(&design, &w));
            let lab = Labeling::from_basis(&design, &w).unwrap();
            prop_assert_eq!(val(&design, &lab).unwrap(), rat(v.into()));
        }
    }

    #[test]
    fn full_box_slice_permutations_keep_val(seed in any::<u64>(), dims in prop::sample::select(vec![[2usize, 2, 3], [3, 2, 2], [1, 3, 4], [2, 3, 2]])) {
        let design = ObstructionDesign::build_box(&dims).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample::nonzero_basis_labeling(&mut rng, &design);
        for axis in 0..3 {
            for (p, _) in crate::perm::all_with_sign(dims[axis]) {
                let (_, map) = design.apply_slice_permutation(axis, &p).unwrap();
                let mut moved = vec![Vec::new(); w.len()];
                for (q, l) in w.iter().enumerate() {
                    moved[map[q]] = l.clone();
                }
                prop_assert_eq!(val_basis(&design, &w), val_basis(&design, &moved));
            }
        }
    }

    #[test]
    fn deleted_diagonal_value_does_not_depend_on_the_diagonal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = sample::rational_tensor(&mut rng, &[3, 3, 3], 3, 2).unwrap();
        let cube = ObstructionDesign::build_box(&[2, 2, 2]).unwrap();
        let values: Vec<BigRational> = Diagonal::all(2)
            .iter()
            .map(|d| evaluate_invariant(&cube.delete_diagonal(d).unwrap(), &t, &opts()).unwrap())
            .collect();
        prop_assert!(values.iter().all(|v| v == &values[0]));
    }
}
