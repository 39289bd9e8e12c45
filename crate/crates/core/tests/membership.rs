mod common;

use num_traits::One;
use pminor_core::membership::{prefilter_failure, Checker, Method, ReconstructMode, Verdict};
use pminor_core::minor_map::minor_vector;
use pminor_core::random::integer_symmetric;
use pminor_core::{BinaryIndex, GroupElement, MinorVector, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn perturb<R: Rng>(rng: &mut R, z: &MinorVector) -> MinorVector {
    let mut out = z.clone();
    let i = BinaryIndex::new(z.n(), rng.gen_range(0..z.len())).unwrap();
    let delta = Rational::from_integer(rng.gen_range(1..=3).into());
    out.set(&i, z.get(&i) + delta);
    out
}

#[test]
fn basis_and_reconstruction_agree_on_mixed_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let checker = Checker::new(11);
    let mut tallies = [0usize; 3];
    for k in 0..200 {
        let n = if k % 2 == 0 { 4 } else { 5 };
        let a = integer_symmetric(&mut rng, n, 9, false);
        let member = minor_vector(&a, &Rational::one());
        let z = if k % 4 < 2 {
            member
        } else {
            perturb(&mut rng, &member)
        };
        if z.is_zero() {
            continue;
        }
        let basis = checker.check(&z, Method::Basis).unwrap();
        let mut rec = checker
            .check(&z, Method::Reconstruct(ReconstructMode::Exact))
            .unwrap();
        if rec.verdict == Verdict::Indeterminate {
            tallies[2] += 1;
            rec = checker
                .check(
                    &z,
                    Method::Reconstruct(ReconstructMode::Numeric {
                        tol: ReconstructMode::DEFAULT_TOL,
                    }),
                )
                .unwrap();
        }
        assert_eq!(basis.verdict, rec.verdict, "input #{k}: {z:?}");
        tallies[usize::from(basis.verdict == Verdict::NonMember)] += 1;
    }
    assert!(tallies[0] >= 100 && tallies[1] > 0, "{tallies:?}");
}

#[test]
fn prefilter_never_rejects_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 3..=6 {
        for _ in 0..10 {
            let a = integer_symmetric(&mut rng, n, 9, false);
            assert_eq!(
                prefilter_failure(&minor_vector(&a, &Rational::one())).unwrap(),
                None
            );
        }
    }
}

#[test]
fn prefilter_rejections_are_basis_rejections() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let checker = Checker::default();
    for _ in 0..40 {
        let z = common::random_vector(&mut rng, 4, 3);
        if prefilter_failure(&z).unwrap().is_some() {
            assert_eq!(
                checker.check(&z, Method::Basis).unwrap().verdict,
                Verdict::NonMember
            );
        }
    }
}

#[test]
fn verdicts_are_group_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let checker = Checker::default();
    for n in [3, 4] {
        for _ in 0..15 {
            let a = integer_symmetric(&mut rng, n, 5, false);
            let z = minor_vector(&a, &Rational::one());
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let g = GroupElement::new(
                (0..n)
                    .map(|_| pminor_core::random::sl2_integer(&mut rng, 2))
                    .collect(),
                perm,
            )
            .unwrap();
            for point in [
                z.clone(),
                common::bump_top(&z),
                common::random_vector(&mut rng, n, 4),
            ] {
                let before = checker.check(&point, Method::Basis).unwrap().verdict;
                let after = checker
                    .check(&g.act_point(&point).unwrap(), Method::Basis)
                    .unwrap()
                    .verdict;
                assert_eq!(before, after);
            }
        }
    }
}

#[test]
fn member_certificates_reproduce_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let checker = Checker::new(1);
    for n in 3..=5 {
        for t in [0, 2] {
            let a = integer_symmetric(&mut rng, n, 6, false);
            let z = minor_vector(&a, &Rational::from_integer(t.into()));
            let report = checker
                .check(&z, Method::Reconstruct(ReconstructMode::Exact))
                .unwrap();
            let pminor_core::membership::Certificate::Matrix {
                matrix: pminor_core::membership::ReconstructedMatrix::Exact(m),
                scale,
                chart,
            } = report.certificate
            else {
                panic!("n={n} t={t}: {:?}", report.verdict);
            };
            let rebuilt = chart
                .act_point_inverse(&minor_vector(&m, &Rational::one()).scaled(&scale))
                .unwrap();
            assert_eq!(rebuilt, z);
            assert_eq!(report.chart_moves, usize::from(t == 0));
        }
    }
}
