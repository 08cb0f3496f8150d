mod common;

use hilbert_embed::distraction::{distraction_space, DistractionMatrix};
use hilbert_embed::extension::ExtensionRing;
use hilbert_embed::field::{Field, PrimeField, Rationals};
use hilbert_embed::ideal::{HilbertSeries, MonomialIdeal};
use hilbert_embed::linalg::{initial_space, TermOrder};
use hilbert_embed::monomial::{monomials_of_degree, Monomial};
use hilbert_embed::oracle::min_growth_oracle;
use hilbert_embed::order::{is_embedding_order, EmbeddingCertificate, GradedOrder};
use hilbert_embed::polarize::polarize;
use hilbert_embed::ring::QuotientRing;
use hilbert_embed::stabilize::{stabilize, stabilize_truncated, stabilize_truncated_over, z_stability_failure};
use num::BigInt;
use proptest::prelude::*;

use common::{brute_min_growth, ring};

fn exps(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, nvars).prop_filter("nonzero degree", move |e| {
        let d: u32 = e.iter().sum();
        (1..=max_deg).contains(&d)
    })
}

fn ideal_gens(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<Monomial>> {
    prop::collection::vec(exps(nvars, max_deg).prop_map(Monomial::new), 1..=3)
}

fn two_var_extension(t: Option<u32>) -> QuotientRing {
    match t {
        Some(t) => ring(&["x1", "x2", "z"], &[&format!("x1^{t}"), &format!("x2^{t}"), &format!("z^{t}")], 4),
        None => ring(&["x1", "x2", "z"], &[], 4),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distraction_keeps_dimension(
        coeffs in prop::collection::vec((-3i64..=3, 1i64..=3), 3),
        gens in ideal_gens(3, 3),
        d in 1u32..=4,
    ) {
        let q = Rationals;
        let mut l = DistractionMatrix::new(3, 3).unwrap();
        for (col, (a, b)) in coeffs.iter().enumerate() {
            let c = q.from_ratio(&BigInt::from(*a), &BigInt::from(*b)).unwrap();
            l.set(2, col as u32 + 1, vec![q.one(), q.zero(), c]).unwrap();
        }
        prop_assume!(l.check_spanning(&q, d).is_ok());
        let members: Vec<Monomial> = monomials_of_degree(3, d)
            .into_iter()
            .filter(|m| gens.iter().any(|g| g.divides(m)))
            .collect();
        let order = TermOrder::new(vec![1, 1, 0], vec![0, 1]).unwrap();
        let space = distraction_space(&q, &l, &order, d, &members).unwrap();
        prop_assert_eq!(space.dim(), members.len());
        prop_assert_eq!(initial_space(&space).len(), members.len());
    }

    #[test]
    fn stabilization_is_idempotent(gens in ideal_gens(3, 4), which in 0usize..3) {
        let t = [Some(2), Some(3), None][which];
        let s = two_var_extension(t);
        let i = MonomialIdeal::generated_by(&s, &gens).unwrap();
        let run = |i: &MonomialIdeal| match t {
            Some(_) => stabilize_truncated(&s, i).unwrap(),
            None => stabilize(&s, i).unwrap(),
        };
        let once = run(&i);
        prop_assert!(z_stability_failure(&s, &once.ideal).is_none());
        prop_assert_eq!(once.ideal.hilbert_series(), i.hilbert_series());
        let twice = run(&once.ideal);
        prop_assert_eq!(&twice.ideal, &once.ideal);
        prop_assert_eq!(twice.steps, 2);
    }

    #[test]
    fn prime_field_agrees_with_rationals(gens in ideal_gens(3, 4)) {
        let s = two_var_extension(Some(2));
        let i = MonomialIdeal::generated_by(&s, &gens).unwrap();
        let gf = stabilize_truncated_over(&PrimeField::new(3).unwrap(), 2, &s, &i).unwrap();
        let q = stabilize_truncated_over(&Rationals, Rationals.from_i64(-1), &s, &i).unwrap();
        prop_assert_eq!(gf.ideal, q.ideal);
    }

    #[test]
    fn polarization_series_identity(gens in ideal_gens(2, 4)) {
        let gens: Vec<Monomial> = gens.into_iter().filter(|g| g.degree() >= 2).collect();
        prop_assume!(!gens.is_empty());
        let r = QuotientRing::new(vec!["x".into(), "y".into()], gens, None, 5).unwrap();
        let pol = polarize(&r, 1, 2).unwrap();
        for e in 0..=5u32 {
            let below = if e == 0 { 0 } else { pol.ring.dim(e - 1) };
            prop_assert_eq!(r.dim(e) + below, pol.ring.dim(e));
        }
    }

    #[test]
    fn min_growth_matches_brute_force(gens in ideal_gens(3, 3), d in 0u32..=2) {
        let gens: Vec<Monomial> = gens.into_iter().filter(|g| g.degree() >= 2).collect();
        let r = QuotientRing::new(vec!["a".into(), "b".into(), "c".into()], gens, None, 3).unwrap();
        let table = brute_min_growth(&r, d);
        for (k, want) in table.into_iter().enumerate() {
            prop_assert_eq!(min_growth_oracle(&r, d, k).unwrap(), want);
        }
    }

    #[test]
    fn series_text_round_trip(v in prop::collection::vec(0usize..50, 1..8)) {
        let h = HilbertSeries::new(v);
        let back: HilbertSeries = h.to_string().parse().unwrap();
        prop_assert_eq!(back, h);
    }
}

#[test]
fn extended_orders_embed_over_truncated_planes() {
    for t in [2, 3] {
        let r = ring(&["x", "y"], &[&format!("x^{t}"), &format!("y^{t}")], 4);
        let cert = EmbeddingCertificate::new(&r, GradedOrder::grlex(&r)).unwrap();
        let ext = ExtensionRing::new(&r, &cert, Some(t), 4).unwrap();
        let tau = ext.extended_order().unwrap();
        assert_eq!(is_embedding_order(ext.ring(), &tau), Ok(()), "t={t}");
    }
}
