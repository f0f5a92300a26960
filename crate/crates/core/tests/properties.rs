use std::sync::Arc;

use ergocorr::circle::CircleNumber;
use ergocorr::cocycle::StepCocycle;
use ergocorr::empirical::{check_trim_lemma, dm_distance, empirical_measure, LemmaVerdict};
use ergocorr::joinings::{
    coupling_upper_bound, diagonal_joining, joining_corr, mixture_joining, product_joining, symbol_variance,
    BlockMeasure, OrderOneLaw,
};
use ergocorr::lifting::LiftingSchedule;
use ergocorr::symbolic::{block_corr, Alphabet, Block};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn alphabet(kind: u8) -> Arc<Alphabet> {
    match kind % 3 {
        0 => Alphabet::signs(),
        1 => Alphabet::ternary(),
        _ => Alphabet::quarter_signs(),
    }
}

/// Positive integer weights normalised to a probability vector.
fn probs(weights: &[u32]) -> Vec<BigRational> {
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    weights.iter().map(|&w| q(w as i64, total)).collect()
}

fn bernoulli(kind: u8, weights: &[u32]) -> BlockMeasure {
    let a = alphabet(kind);
    BlockMeasure::bernoulli(a.clone(), &probs(&weights[..a.len()]), 2).unwrap()
}

fn weights() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..20, 4)
}

fn block(kind: u8, data: &[u16]) -> Block {
    let a = alphabet(kind);
    let n = a.len() as u16;
    Block::new(a, data.iter().map(|&c| c % n).collect()).unwrap()
}

fn modulus(z: &ergocorr::symbolic::ExactComplex) -> f64 {
    z.norm_sqr().to_f64().unwrap().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_joining_has_its_marginals_and_no_correlation(
        ka in 0u8..3, kb in 0u8..3, wa in weights(), wb in weights()
    ) {
        let (mu, nu) = (bernoulli(ka, &wa), bernoulli(kb, &wb));
        let xi = product_joining(&mu, &nu).unwrap();
        prop_assert!(xi.marginals_match().unwrap());
        prop_assert!(joining_corr(&xi).unwrap().is_zero());
    }

    #[test]
    fn mixture_correlation_is_p_times_variance(
        kind in 0u8..3, wa in weights(), wb in weights(), p_num in 1i64..=10
    ) {
        let (nu, mu_prime) = (bernoulli(kind, &wa), bernoulli(kind, &wb));
        let p = q(p_num, 10);
        let xi = mixture_joining(&p, &nu, &mu_prime).unwrap();
        prop_assert!(xi.marginals_match().unwrap());
        let corr = joining_corr(&xi).unwrap();
        prop_assert!(corr.im.is_zero());
        prop_assert_eq!(corr.re, &p * symbol_variance(&nu).unwrap());
    }

    #[test]
    fn joinings_respect_the_coupling_bound(kind in 0u8..3, wa in weights(), wb in weights(), p_num in 1i64..=10) {
        let (nu, mu_prime) = (bernoulli(kind, &wa), bernoulli(kind, &wb));
        let xi = mixture_joining(&q(p_num, 10), &nu, &mu_prime).unwrap();
        let bound = coupling_upper_bound(
            &OrderOneLaw::of_measure(xi.mu()).unwrap(),
            &OrderOneLaw::of_measure(xi.nu()).unwrap(),
            64,
        )
        .unwrap();
        prop_assert!(modulus(&joining_corr(&xi).unwrap()) <= bound.upper + 1e-12);
        let diag = diagonal_joining(&nu).unwrap();
        let self_bound = coupling_upper_bound(
            &OrderOneLaw::of_measure(&nu).unwrap(),
            &OrderOneLaw::of_measure(&nu).unwrap(),
            64,
        )
        .unwrap();
        prop_assert!(modulus(&joining_corr(&diag).unwrap()) <= self_bound.upper + 1e-12);
    }

    #[test]
    fn block_correlation_is_conjugate_symmetric(
        kind in 0u8..3, data in prop::collection::vec((any::<u16>(), any::<u16>()), 1..80)
    ) {
        let (xs, ys): (Vec<u16>, Vec<u16>) = data.into_iter().unzip();
        let (a, b) = (block(kind, &xs), block(kind, &ys));
        prop_assert_eq!(block_corr(&a, &b).unwrap(), block_corr(&b, &a).unwrap().conj());
        let own = block_corr(&a, &a).unwrap();
        prop_assert!(own.im.is_zero() && own.re >= BigRational::zero());
    }

    #[test]
    fn block_distance_is_a_metric(
        kind in 0u8..3, m in 1usize..4,
        x in prop::collection::vec(any::<u16>(), 8..60),
        y in prop::collection::vec(any::<u16>(), 8..60),
        z in prop::collection::vec(any::<u16>(), 8..60),
    ) {
        let mx = empirical_measure(&block(kind, &x), m).unwrap();
        let my = empirical_measure(&block(kind, &y), m).unwrap();
        let mz = empirical_measure(&block(kind, &z), m).unwrap();
        let (dxy, dyz, dxz) =
            (dm_distance(&mx, &my).unwrap(), dm_distance(&my, &mz).unwrap(), dm_distance(&mx, &mz).unwrap());
        prop_assert!(dm_distance(&mx, &mx).unwrap().is_zero());
        prop_assert_eq!(&dxy, &dm_distance(&my, &mx).unwrap());
        prop_assert!(dxz <= &dxy + &dyz);
        prop_assert!(dxy <= q(2, 1));
    }

    #[test]
    fn trimming_moves_the_measure_by_at_most_twice_the_cut(
        kind in 0u8..3, m in 1usize..4, l in 0usize..10, k in 0usize..10,
        data in prop::collection::vec(any::<u16>(), 30..120),
    ) {
        let report = check_trim_lemma(&block(kind, &data), l, k, m).unwrap();
        prop_assert_eq!(report.verdict, LemmaVerdict::Holds);
    }

    #[test]
    fn schedule_lengths_outgrow_their_tolerances(
        e_num in 1i64..10, r_num in 1i64..10, l1 in 1u64..1000, stages in 1usize..6
    ) {
        let (eps0, ratio) = (q(e_num, 10), q(r_num, 10));
        let s = LiftingSchedule::build(&eps0, &ratio, l1, stages).unwrap();
        prop_assert_eq!(s.stages(), stages);
        prop_assert_eq!(s.length(1), l1);
        for m in 1..=stages {
            let (lm, next) = (s.length(m), s.length(m + 1));
            prop_assert!(BigRational::from_integer(next.into()) * s.eps(m) > BigRational::from_integer(lm.into()));
            if m > 1 {
                prop_assert_eq!(s.eps(m), &(s.eps(m - 1) * &ratio));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The n-step cocycle is the pointwise product along the orbit, and its
    /// distance to 1 is twice the measure where it equals −1.
    #[test]
    fn n_step_is_the_product_along_the_orbit(
        (tp, tq) in (2i64..50).prop_flat_map(|d| (1..d, Just(d))),
        (ap, aq) in (2i64..60).prop_flat_map(|d| (1..d, Just(d))),
        (sp, sq) in (1i64..97).prop_flat_map(|d| (0..d, Just(d))),
        n in 1usize..40,
        four in any::<bool>(),
    ) {
        let t = CircleNumber::rational(tp, tq);
        let phi = if four {
            StepCocycle::four_jump(&t, &CircleNumber::rational(1, 7), &CircleNumber::rational(2, 11))
        } else {
            StepCocycle::two_jump(&t)
        };
        let alpha = CircleNumber::rational(ap, aq);
        let s = CircleNumber::rational(sp, sq);
        let composed = phi.n_step(&alpha, n).unwrap();
        let direct: i8 = (0..n as i64).map(|j| phi.eval(&s.add(&alpha.mul_int(j)))).product();
        prop_assert_eq!(composed.eval(&s), direct);
        let l1 = composed.l1_distance_to_one().to_f64();
        let minus = composed.minus_one_measure().to_f64();
        prop_assert!((l1 - 2.0 * minus).abs() < 1e-12);
    }
}
