use proptest::prelude::*;

use qtop_core::cycring::phase_ratio;
use qtop_core::mcgrep::{heegaard_homology, symplectic_action, MCGWord, Token};
use qtop_core::surgery::{invariant_value, PlumbingTree};
use qtop_core::recoupling::Theory;
use qtop_core::{CycNum, LaurentCyc, PrimeContext, Valuation};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![5u32, 7, 11, 13])
}

fn element(p: u32) -> impl Strategy<Value = CycNum> {
    let n = p as usize - 1;
    let re = prop::collection::vec(-6i64..=6, n);
    let im = prop::collection::vec(-6i64..=6, n);
    let with_i = PrimeContext::new(p).unwrap().needs_i();
    (re, im, any::<bool>()).prop_map(move |(re, im, use_im)| {
        if with_i && use_im {
            CycNum::from_parts(p, re, im)
        } else {
            CycNum::from_coeffs(p, re)
        }
    })
}

fn real(p: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-6i64..=6, p as usize - 1).prop_map(move |c| CycNum::from_coeffs(p, c))
}

fn pair() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prime().prop_flat_map(|p| (element(p), element(p), element(p)))
}

/// Real elements times a random phase, the domain of the valuation.
fn phased_pair() -> impl Strategy<Value = (CycNum, CycNum)> {
    prime().prop_flat_map(|p| (real(p), real(p), 0i64..60, 0i64..60)).prop_map(|(x, y, a, b)| {
        let ctx = PrimeContext::new(x.prime()).unwrap();
        (&ctx.kappa_pow(a) * &x, &ctx.kappa_pow(b) * &y)
    })
}

/// `± q^a h^b` times a product of quantum integers `[m]`, `p ∤ m`.
fn unit_times_h() -> impl Strategy<Value = CycNum> {
    prime().prop_flat_map(|p| {
        let ms = prop::collection::vec(2i64..40, 0..3);
        (Just(p), ms, 0i64..20, 0u64..4, any::<bool>())
    })
    .prop_map(|(p, ms, a, b, neg)| {
        let mut x = CycNum::q_pow(p, a);
        for m in ms.into_iter().filter(|m| m % p as i64 != 0) {
            let qm = (0..m).fold(CycNum::zero(p), |acc, k| &acc + &CycNum::q_pow(p, 2 * k - (m - 1)));
            x = &x * &qm;
        }
        x = &x * &CycNum::h(p).pow(b);
        if neg { x.scale(-1) } else { x }
    })
}

fn word(g: u32, max_len: usize) -> impl Strategy<Value = MCGWord> {
    let tok = (0u8..3, 1..=g, any::<bool>()).prop_filter_map("index", move |(c, i, inv)| {
        let t = match c {
            0 => Token::a(i),
            1 => Token::b(i),
            _ if i < g => Token::c(i),
            _ => return None,
        };
        Some(if inv { t.inv() } else { t })
    });
    prop::collection::vec(tok, 0..=max_len).prop_map(MCGWord)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ring_axioms((x, y, z) in pair()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &CycNum::one(x.prime()), x);
    }

    #[test]
    fn valuation_is_additive((x, y) in phased_pair()) {
        let vx = x.h_valuation().unwrap();
        let vy = y.h_valuation().unwrap();
        prop_assert_eq!((&x * &y).h_valuation().unwrap(), vx + vy);
    }

    #[test]
    fn valuation_is_ultrametric(x in prime().prop_flat_map(real), k in 1i64..30) {
        let y = x.mul_q_pow(k);
        let s = (&x + &y).h_valuation().unwrap();
        prop_assert!(s >= x.h_valuation().unwrap().min(y.h_valuation().unwrap()));
    }

    #[test]
    fn division_by_h_round_trips((x, _, _) in pair()) {
        let hx = x.mul_h();
        prop_assert!(hx.divisible_by_h());
        prop_assert_eq!(hx.div_h_exact().unwrap(), x);
    }

    #[test]
    fn galois_conjugates_share_valuation(x in prime().prop_flat_map(real), k in 1i64..4) {
        prop_assume!(k % x.prime() as i64 != 0);
        prop_assert_eq!(x.galois(k).h_valuation().unwrap(), x.h_valuation().unwrap());
    }

    #[test]
    fn inverse_multiplies_to_one(x in unit_times_h()) {
        let inv = x.inverse().unwrap();
        prop_assert!(inv.mul_cyc(&x).is_one());
    }

    #[test]
    fn phase_ratio_recovers_power((x, _, _) in pair(), k in 0i64..60) {
        prop_assume!(!x.is_zero());
        let ctx = PrimeContext::new(x.prime()).unwrap();
        let k = k.rem_euclid(ctx.kappa_order() as i64);
        let y = &ctx.kappa_pow(k) * &x;
        let r = phase_ratio(&ctx, &LaurentCyc::from(y), &LaurentCyc::from(x.clone()));
        prop_assert_eq!(r, Some(k as u32));
    }

    #[test]
    fn symplectic_action_preserves_form(w in word(2, 10)) {
        let m = symplectic_action(&w, 2).unwrap();
        let j = |x: &[i64], y: &[i64]| x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
        for a in 0..4 {
            for b in 0..4 {
                let ca: Vec<i64> = (0..4).map(|r| m[r][a]).collect();
                let cb: Vec<i64> = (0..4).map(|r| m[r][b]).collect();
                let ea: Vec<i64> = (0..4).map(|r| i64::from(r == a)).collect();
                let eb: Vec<i64> = (0..4).map(|r| i64::from(r == b)).collect();
                prop_assert_eq!(j(&ca, &cb), j(&ea, &eb));
            }
        }
    }

    #[test]
    fn inverse_word_presents_same_homology(w in word(2, 8)) {
        let h = heegaard_homology(&w, 2).unwrap();
        let hi = heegaard_homology(&w.inverse(), 2).unwrap();
        prop_assert_eq!(h.order(), hi.order());
    }
}

fn tree() -> impl Strategy<Value = PlumbingTree> {
    (1usize..=4).prop_flat_map(|n| {
        let framings = prop::collection::vec(-3i64..=3, n);
        let parents = prop::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1));
        (framings, parents).prop_map(move |(f, par)| {
            let vertices = f.iter().enumerate().map(|(k, &x)| (k as i64 + 1, x)).collect();
            let edges = par
                .iter()
                .enumerate()
                .map(|(k, ix)| (ix.index(k + 1) as i64 + 1, k as i64 + 2))
                .collect();
            PlumbingTree::new(vertices, edges, Vec::new()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn stabilization_is_invisible(t in tree(), sign in prop::sample::select(vec![1i64, -1])) {
        let th = Theory::new(5).unwrap();
        let stab = t.disjoint_union(&PlumbingTree::chain(&[sign]));
        prop_assert_eq!(invariant_value(&th, &t).unwrap(), invariant_value(&th, &stab).unwrap());
    }

    #[test]
    fn invariants_are_integral(t in tree()) {
        let th = Theory::new(7).unwrap();
        let v = invariant_value(&th, &t).unwrap().h_valuation().unwrap();
        prop_assert!(v >= Valuation::Finite(0));
    }
}
