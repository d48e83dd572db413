//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails or exceeds its time limit.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bsorder_core::equivariant::supernatural_equivariant_report;
use bsorder_core::es::{free_module, nu_apply, nu_operator, reduced_hom_witness, twist_table, witness_element};
use bsorder_core::*;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MATERIALIZE_CAP: usize = 50_000;

fn ds(s: &str) -> DegreeSequence {
    DegreeSequence::parse(s).unwrap()
}

fn rs(s: &str) -> RootSequence {
    RootSequence::parse(s).unwrap()
}

fn w(p: &[i64]) -> GLWeight {
    GLWeight::new(p.to_vec()).unwrap()
}

fn table_one() {
    let e = es_setup(&ds("0,2,4,5,6"), &ds("1,2,4,7,inf")).unwrap();
    assert_eq!(e.r, 4);
    assert_eq!(e.delta, vec![1, 3, 7, 8]);
    assert_eq!(e.a, vec![0, 2, 6, 7]);
    assert_eq!(e.delta_p, vec![0, 3, 5, 6]);
    assert_eq!(e.a_p, vec![-1, 2, 4, 5]);
    assert_eq!(e.c, Some(vec![1, 0, 2, 2]));
    let unprimed: Vec<Vec<i64>> = vec![
        vec![0, 0, 2, 6, 7],
        vec![-1, -1, 1, 5, 6],
        vec![-2, -2, 0, 4, 5],
        vec![-3, -3, -1, 3, 4],
        vec![-4, -4, -2, 2, 3],
        vec![-5, -5, -3, 1, 2],
        vec![-6, -6, -4, 0, 1],
        vec![-7, -7, -5, -1, 0],
        vec![-8, -8, -6, -2, -1],
    ];
    let primed: Vec<Vec<i64>> = vec![
        vec![0, -1, 2, 4, 5],
        vec![-1, -2, 1, 3, 4],
        vec![-2, -3, 0, 2, 3],
        vec![-3, -4, -1, 1, 2],
        vec![-4, -5, -2, 0, 1],
        vec![-5, -6, -3, -1, 0],
        vec![-6, -7, -4, -2, -1],
        vec![-7, -8, -5, -3, -2],
    ];
    let got: Vec<_> = twist_table(&e, Side::Unprimed).rows.into_iter().map(|r| r.twist).collect();
    assert_eq!(got, unprimed);
    let got: Vec<_> = twist_table(&e, Side::Primed).rows.into_iter().map(|r| r.twist).collect();
    assert_eq!(got, primed);
}

fn witness_golden() {
    let e = es_setup(&ds("0,2,4,5,6"), &ds("1,2,4,7,inf")).unwrap();
    let b = witness_element(&e, 2).unwrap();
    assert_eq!(b.subset, vec![1, 2, 3, 4]);
    assert_eq!(b.exps.cols, vec![[-4, -1], [-1, -1], [0, 0], [1, 0]]);
    let img = nu_apply(&e, 2, &b).unwrap().expect("nonzero image");
    assert_eq!(img.subset, vec![1, 2, 3, 4]);
    assert_eq!(img.exps.cols, vec![[-3, -1], [-1, -1], [2, 0], [3, 0]]);
}

fn hom_order_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut successes = 0;
    for k in 0..300 {
        let n = rng.gen_range(1..=4);
        let d = common::degree_seq(&mut rng, n, -5, 12, true);
        let dp = if k % 2 == 0 {
            common::comparable_degree_seq(&mut rng, &d, 12)
        } else {
            common::degree_seq(&mut rng, n, -5, 12, true)
        };
        let leq = deg_leq(&d, &dp);
        match reduced_hom_witness(&d, &dp) {
            Ok((_, cert)) => {
                assert!(leq, "witness for incomparable {d} vs {dp}");
                successes += 1;
                let op = nu_operator(&cert.data, cert.j).unwrap();
                let col: BigUint = cert.witness_index.parse().unwrap();
                let row: BigUint = cert.image_index.parse().unwrap();
                assert_eq!(op.column(&col), Some(row));
                let small = |r: &BigUint| r.to_usize().is_some_and(|r| r <= MATERIALIZE_CAP);
                if small(&op.source.total_rank) && small(&op.target.total_rank) {
                    let m = op.to_sparse(MATERIALIZE_CAP).unwrap();
                    assert!(!m.is_zero());
                    assert_eq!(BigUint::from(m.nnz()), op.nnz());
                } else {
                    assert!(op.nnz() > BigUint::zero());
                }
            }
            Err(e) => {
                assert!(!leq, "{d} <= {dp} but no witness: {e}");
                assert_eq!(e, Error::NotComparable);
            }
        }
    }
    assert!(successes >= 150);
}

fn rank_cross_validation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let lo = rng.gen_range(-5..5);
        let d = common::degree_seq(&mut rng, n, lo, lo + 10, true);
        let dp = common::comparable_degree_seq(&mut rng, &d, lo + 12);
        let e = es_setup(&d, &dp).unwrap();
        let ranks: Vec<BigInt> = (0..=d.length())
            .map(|j| BigInt::from(free_module(&e, Side::Unprimed, j).unwrap().total_rank))
            .collect();
        let hk = common::herzog_kuhl_kernel(d.finite());
        assert_eq!(pure_diagram(&d).betti, hk);
        assert!(common::integer_multiple(&ranks, &hk), "{d}: {ranks:?} vs {hk:?}");
    }
}

fn decomposition_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let chain = common::degree_chain(&mut rng, n, -5, 10, 4);
        let coeffs: Vec<Rational> = chain.iter().map(|_| common::coefficient(&mut rng)).collect();
        let mut b = BettiDiagram::new(n);
        for (d, c) in chain.iter().zip(&coeffs) {
            for (i, j, v) in pure_diagram(d).to_diagram(c).iter() {
                b.add(i, j, v).unwrap();
            }
        }
        let dec = decompose(&b).unwrap();
        let got: Vec<_> = dec.terms.iter().map(|t| (t.pure.d.clone(), t.coefficient.clone())).collect();
        let want: Vec<_> = chain.into_iter().zip(coeffs).collect();
        assert_eq!(got, want);
    }
}

fn equivariant_golden() {
    let sh = efw_shapes(&ds("0,2,5,7,8")).unwrap();
    assert_eq!(sh.shapes[0], w(&[3, 1, 0, 0]));
    assert_eq!(sh.shapes[1], w(&[5, 1, 0, 0]));
    assert_eq!(efw_shapes(&ds("0,2,4")).unwrap().shapes, vec![w(&[1, 0]), w(&[3, 0]), w(&[3, 2])]);
    assert_eq!(efw_shapes(&ds("0,3,4")).unwrap().shapes, vec![w(&[0, 0]), w(&[3, 0]), w(&[3, 1])]);
    let cert = eq_hom_witness(&ds("0,2,3,6,7"), &ds("1,2,5,6,10")).unwrap();
    assert!(cert.chain.contains(&ds("0,2,3,6,10")));
    assert!(cert.chain.contains(&ds("0,2,5,6,10")));
    let tos: Vec<_> = cert.groups.iter().map(|g| g.to.clone()).collect();
    assert_eq!(tos, vec![ds("0,2,3,6,10"), ds("0,2,5,6,10"), ds("1,2,5,6,10")]);
    assert_eq!(cert.touching_index, 3);
    assert!(cert.groups.iter().all(|g| g.surjective_at(3)));
    assert!(cert.steps.iter().all(|s| s.surjective_at(3)));
}

fn hom_lower_bounds() {
    let f = rs("-2,-3,-4,-5");
    let fp = rs("-1,-2,-3,-4");
    assert_eq!(hom_lower_bound(&f, &fp), BigUint::from(16u32));
    assert_eq!(hom_lower_bound(&rs("-2,-3,-4,-inf"), &fp), BigUint::from(8u32));
    assert_eq!(split_hom_dim(&f, &fp).unwrap(), BigUint::from(2880u32));
}

fn bwb_supernatural() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.gen_range(2..=5);
        let f = common::root_seq(&mut rng, n, -10, 4, true);
        let start = rng.gen_range(-16..0);
        let window = (start, start + 11);
        assert!(verify_supernatural_equivariant(&f, window).unwrap(), "{f}");
        let report = supernatural_equivariant_report(&f, window).unwrap();
        assert_eq!(report.len(), 12);
        for c in report {
            assert_eq!(c.bwb.degree, c.table_row, "{f} at {}", c.t);
        }
    }
}

fn root_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let f = common::root_seq(&mut rng, n, -12, 4, true);
        let fp = common::comparable_root_seq(&mut rng, &f, 6);
        let cert = eq_root_hom_exists(&f, &fp).unwrap();
        let big_n: Vec<i64> = f.finite().iter().zip(fp.finite()).map(|(a, b)| b - a).collect();
        for i in 1..n {
            assert_eq!(cert.slack[i - 1], big_n[n - i - 1], "{f} vs {fp}");
        }
        assert!(cert.exists);
    }
}

type Criterion = (&'static str, Duration, fn());

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("ES setup and twist tables", Duration::from_secs(1), table_one),
        ("witness element and its image", Duration::from_secs(1), witness_golden),
        ("Hom witness iff degree order (300 pairs)", Duration::from_secs(60), hom_order_equivalence),
        ("free module ranks vs pure diagrams (100)", Duration::from_secs(30), rank_cross_validation),
        ("decomposition round trip (200)", Duration::from_secs(30), decomposition_round_trip),
        ("equivariant shapes and Pieri chain", Duration::from_secs(1), equivariant_golden),
        ("supernatural Hom lower bounds", Duration::from_secs(1), hom_lower_bounds),
        ("Bott vs supernatural tables (50)", Duration::from_secs(60), bwb_supernatural),
        ("equivariant root slack (100)", Duration::from_secs(10), root_inequality),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= *limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over {limit:?})"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        if verdict != "PASS" {
            failed += 1;
        }
        println!("criterion {}: {verdict} {name} [{elapsed:.2?}]", k + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
