//! Acceptance suite. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pminor_core::hyperdet::{
    self, hd_basis, hd_dimension, lowest_hyperdet, top_variable_commutator,
};
use pminor_core::index::rational;
use pminor_core::membership::{reconstruct_exact, sign_flip_experiment, Checker, Method};
use pminor_core::minor_map::{minor_vector, reversed_minors, tensor_product};
use pminor_core::random::{integer_symmetric, rational_symmetric, sl2_integer, small_rational};
use pminor_core::rep::{
    binomial, decompose_symmetric_power, identify_isotypic, invariant_dim,
    invariant_dim_by_permutations, lower_to_lowest, sl2_dim, Partition,
};
use pminor_core::{GroupElement, MinorVector, Rational, SymmetricMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.1?}, limit {limit:?}")
    })
}

fn phi(a: &SymmetricMatrix) -> MinorVector {
    minor_vector(a, &Rational::one())
}

fn test_matrices(n: usize) -> Vec<SymmetricMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + n as u64);
    (0..100)
        .map(|_| integer_symmetric(&mut rng, n, 9, false))
        .collect()
}

fn module_dimensions() -> Outcome {
    let mut sizes = Vec::new();
    for n in 3..=5 {
        let start = Instant::now();
        let basis = hd_basis(n).map_err(|e| e.to_string())?;
        if n == 5 {
            within(start, Duration::from_secs(30), "n=5 generation")?;
        }
        let expected = binomial(n as u64, 3) * BigInt::from(5).pow(n as u32 - 3);
        ensure(BigInt::from(basis.len()) == expected, || {
            format!("n={n}: {} entries, expected {expected}", basis.len())
        })?;
        ensure(hd_dimension(n).unwrap() == expected, || {
            format!("hd_dimension({n}) disagrees")
        })?;
        sizes.push(basis.len());
    }
    ensure(sizes == [1, 20, 250], || format!("sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

fn multiplicity_one() -> Outcome {
    let shape: Partition = "2,2".parse().unwrap();
    let tuple = vec![shape.clone(), shape.clone(), shape];
    let by_classes = invariant_dim(&tuple).map_err(|e| e.to_string())?;
    let by_perms = invariant_dim_by_permutations(&tuple).map_err(|e| e.to_string())?;
    ensure(by_classes == 1 && by_perms == 1, || {
        format!("class sum {by_classes}, permutation sum {by_perms}")
    })?;
    Ok("class sum 1, sum over 24 permutations 1".into())
}

fn ideal_membership() -> Outcome {
    let start = Instant::now();
    let mut evaluations = 0usize;
    for n in [4, 5] {
        let basis = hd_basis(n).unwrap();
        for (k, a) in test_matrices(n).iter().enumerate() {
            let values = basis.evaluate_all(&phi(a)).unwrap();
            if let Some(i) = values.iter().position(|v| !v.is_zero()) {
                return Err(format!(
                    "n={n} matrix #{k}: entry {i} evaluates to {}",
                    values[i]
                ));
            }
            evaluations += values.len();
        }
    }
    within(start, Duration::from_secs(60), "ideal membership")?;
    Ok(format!(
        "{evaluations} evaluations, all zero, {:.1?}",
        start.elapsed()
    ))
}

fn top_rigidity() -> Outcome {
    let mut rejected = 0;
    for n in [4, 5] {
        let basis = hd_basis(n).unwrap();
        for (k, a) in test_matrices(n).iter().enumerate() {
            let bumped = common::bump_top(&phi(a));
            ensure(basis.first_nonzero(&bumped).unwrap().is_some(), || {
                format!("n={n} matrix #{k} not rejected")
            })?;
            rejected += 1;
        }
    }
    Ok(format!("{rejected}/200 perturbed vectors rejected"))
}

fn sign_flip_profiles() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for n in [4, 5] {
        let trials = sign_flip_experiment(n, 7, 5).map_err(|e| e.to_string())?;
        let hit = trials
            .iter()
            .find(|t| t.matches_reference && !t.forbidden_present);
        let Some(hit) = hit else {
            let seen: Vec<Vec<usize>> =
                trials.iter().map(|t| t.profile.distinct_counts()).collect();
            return Err(format!("n={n}: no trial matched; profiles {seen:?}"));
        };
        summary.push(format!(
            "n={n} {:?} after {} trial(s)",
            hit.profile.distinct_counts(),
            trials.len()
        ));
    }
    within(start, Duration::from_secs(60), "sign-flip profiles")?;
    Ok(summary.join("; "))
}

fn reconstruction_round_trip() -> Outcome {
    let mut done = 0;
    for n in [4, 5, 6] {
        for (k, a) in test_matrices(n).iter().enumerate() {
            let z = phi(a);
            let r = reconstruct_exact(&z).map_err(|e| format!("n={n} matrix #{k}: {e}"))?;
            ensure(phi(&r) == z, || {
                format!("n={n} matrix #{k}: minor vectors differ")
            })?;
            ensure(r.is_sign_conjugate_of(a), || {
                format!("n={n} matrix #{k}: not of the form DAD")
            })?;
            done += 1;
        }
    }
    Ok(format!("{done}/300 matrices recovered up to DAD"))
}

fn lowest_weight_commutators() -> Outcome {
    let mut pairs = 0;
    for n in [4, 5] {
        let triples = hyperdet::triples(n);
        let polys: Vec<_> = triples
            .iter()
            .map(|&t| lowest_hyperdet(n, t).unwrap())
            .collect();
        let mut expected_weight = vec![5i64; n];
        expected_weight[..3].fill(3);
        let mut expected_shapes: Vec<Partition> = vec!["4,1".parse().unwrap(); 3];
        expected_shapes.extend(vec![Partition::new(vec![5]).unwrap(); n - 3]);
        expected_shapes.sort_by_key(|p| p.parts().to_vec());
        for (i, f) in polys.iter().enumerate() {
            for (j, g) in polys.iter().enumerate() {
                if i == j {
                    continue;
                }
                let h = top_variable_commutator(f, g).unwrap();
                let tag = || format!("n={n} triples {:?},{:?}", triples[i], triples[j]);
                ensure(!h.is_zero(), || format!("{}: commutator vanishes", tag()))?;
                let (_, w) = lower_to_lowest(&h).unwrap();
                ensure(w.sorted() == expected_weight, || {
                    format!("{}: weight {w}", tag())
                })?;
                let id =
                    identify_isotypic(5, &w.negated()).map_err(|e| format!("{}: {e}", tag()))?;
                let mut shapes = id.partitions.clone();
                shapes.sort_by_key(|p| p.parts().to_vec());
                ensure(shapes == expected_shapes, || {
                    format!("{}: shapes {:?}", tag(), id.partitions)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} ordered pairs give weight (3,3,3,5,...) and shapes ((4,1)^3,(5),...)"
    ))
}

fn structural_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    for p in 1..=3 {
        for q in 1..=3 {
            for _ in 0..5 {
                let a = rational_symmetric(&mut rng, p, 6, 3);
                let b = rational_symmetric(&mut rng, q, 6, 3);
                ensure(
                    phi(&a.block_diagonal(&b)) == tensor_product(&phi(&a), &phi(&b)),
                    || format!("block law p={p} q={q}"),
                )?;
            }
        }
    }
    let mut reversals = 0;
    while reversals < 40 {
        let n = rng.gen_range(1..=5);
        let a = rational_symmetric(&mut rng, n, 6, 3);
        let det = a.determinant();
        if det.is_zero() {
            continue;
        }
        let inv = phi(&a.inverse().unwrap());
        let rev = reversed_minors(&a).unwrap();
        let z = phi(&a);
        ensure(rev == inv, || {
            format!("reversed minors differ from the inverse's minors, n={n}")
        })?;
        for i in pminor_core::BinaryIndex::all(n) {
            ensure(&det * inv.get(&i) == *z.get(&i.complement()), || {
                format!("reversal law n={n} at {i}")
            })?;
        }
        reversals += 1;
    }
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let a = rational_symmetric(&mut rng, n, 6, 3);
        let flip: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let t = small_rational(&mut rng, 5, 3);
        ensure(
            minor_vector(&a.sign_conjugate(&flip), &t) == minor_vector(&a, &t),
            || "gauge invariance".into(),
        )?;
    }
    let checker = Checker::new(5);
    let mut verdicts = 0;
    for n in [3, 4, 5] {
        for trial in 0..20 {
            let a = integer_symmetric(&mut rng, n, 5, false);
            let member = phi(&a);
            let candidates = [member.clone(), common::bump_top(&member)];
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let g = GroupElement::new((0..n).map(|_| sl2_integer(&mut rng, 3)).collect(), perm)
                .unwrap();
            for z in candidates {
                let before = checker.check(&z, Method::Basis).unwrap().verdict;
                let after = checker
                    .check(&g.act_point(&z).unwrap(), Method::Basis)
                    .unwrap()
                    .verdict;
                ensure(before == after, || {
                    format!("n={n} trial {trial}: {before:?} became {after:?}")
                })?;
                verdicts += 1;
            }
        }
    }
    Ok(format!(
        "block, reversal and gauge laws exact; {verdicts} verdicts invariant under the group"
    ))
}

fn polarization_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let factorial = rational(24);
    for k in 0..50 {
        let p = common::random_homogeneous(&mut rng, 2, 4, 6);
        let v = common::random_vector(&mut rng, 2, 6);
        let fv = p.evaluate(&v).unwrap();
        let vs = [&v, &v, &v, &v];
        ensure(p.polarize_eval_normalized(&vs).unwrap() == fv, || {
            format!("polynomial #{k}: normalized diagonal")
        })?;
        ensure(p.polarize_eval(&vs).unwrap() == &factorial * &fv, || {
            format!("polynomial #{k}: raw diagonal")
        })?;

        let gamma = [
            rational(rng.gen_range(-4..=4)),
            rational(rng.gen_range(1..=4)),
        ];
        let augmented = p.augment([&gamma[0], &gamma[1]]);
        let xs: Vec<MinorVector> = (0..4)
            .map(|_| common::random_vector(&mut rng, 2, 5))
            .collect();
        let avs: Vec<MinorVector> = (0..4)
            .map(|_| common::random_vector(&mut rng, 1, 5))
            .collect();
        let rank_one: Vec<MinorVector> = xs
            .iter()
            .zip(&avs)
            .map(|(x, a)| tensor_product(x, a))
            .collect();
        let lhs = augmented
            .polarize_eval(&rank_one.iter().collect::<Vec<_>>())
            .unwrap();
        let gamma_values: Rational = avs
            .iter()
            .map(|a| &gamma[0] * &a.coords()[0] + &gamma[1] * &a.coords()[1])
            .product();
        let rhs = p.polarize_eval(&xs.iter().collect::<Vec<_>>()).unwrap() * gamma_values;
        ensure(lhs == rhs, || {
            format!("polynomial #{k}: augmentation factorization")
        })?;
    }
    Ok("50 polynomials: diagonal identity and augmentation factorization exact".into())
}

fn dimension_conservation() -> Outcome {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        let total: BigInt = decompose_symmetric_power(4, n)
            .iter()
            .map(|s| {
                let dims: usize = s.partitions.iter().map(|p| sl2_dim(p).unwrap()).product();
                BigInt::from(s.multiplicity) * BigInt::from(dims)
            })
            .sum();
        let expected = binomial((1u64 << n) + 3, 4);
        ensure(total == expected, || {
            format!("n={n}: {total} vs {expected}")
        })?;
        out.push(format!("n={n}: {total}"));
    }
    Ok(out.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 module dimensions", module_dimensions),
        ("2 multiplicity one", multiplicity_one),
        ("3 ideal membership", ideal_membership),
        ("4 top-coordinate rigidity", top_rigidity),
        ("5 sign-flip profiles", sign_flip_profiles),
        ("6 reconstruction round trip", reconstruction_round_trip),
        ("7 lowest weight of commutators", lowest_weight_commutators),
        ("8 structural laws", structural_laws),
        ("9 polarization identities", polarization_identities),
        ("10 dimension conservation", dimension_conservation),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {name} ({:.1?}): {detail}", start.elapsed()),
            Err(detail) => {
                println!("FAIL criterion {name} ({:.1?}): {detail}", start.elapsed());
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
