use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinblock::abacus::{
    core_from_tuple, core_tuple, from_abacus, pbar_core, pbar_removals, rank_from_tuple, to_abacus,
    CoreTuple,
};
use spinblock::donovan::{donovan_bound, is_irreducible, reduce_core, rock_core};
use spinblock::lie::{coords_from_tuple, level, tuple_from_coords, weyl_reflect, CoordVector};
use spinblock::partitions::{
    enumerate_p_strict, enumerate_strict, sample_p_strict, Modulus, PStrictPartition,
};
use spinblock::scopes::{apply_k, apply_k_tuple, is_w_allowed};

fn modulus() -> impl Strategy<Value = Modulus> {
    prop::sample::select(vec![3u32, 5, 7, 11]).prop_map(|p| Modulus::new(p).unwrap())
}

/// A p-strict partition of rank at most `max_rank`, drawn from a seed.
fn p_strict(max_rank: u32) -> impl Strategy<Value = PStrictPartition> {
    (modulus(), any::<u64>()).prop_map(move |(p, seed)| {
        sample_p_strict(&mut ChaCha8Rng::seed_from_u64(seed), p, max_rank)
    })
}

fn tuple(max_ell: u32) -> impl Strategy<Value = CoreTuple> {
    modulus().prop_flat_map(move |p| {
        prop::collection::vec((0..=max_ell, 0..2u8), p.t()).prop_map(|v| {
            CoreTuple::new(
                v.into_iter()
                    .map(|(l, e)| (l, if l == 0 { 1 } else { e }))
                    .collect(),
            )
            .unwrap()
        })
    })
}

fn parity_of(parts: &[u32]) -> u32 {
    (parts.iter().sum::<u32>() + parts.len() as u32) % 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn scopes_is_an_involution(lam in p_strict(60)) {
        for i in 0..=lam.modulus().t() {
            let once = apply_k(i, &lam).unwrap();
            prop_assert_eq!(apply_k(i, &once).unwrap(), lam.clone());
        }
    }

    #[test]
    fn scopes_commutes_with_cores(lam in p_strict(60)) {
        let p = lam.modulus();
        let (core, w) = pbar_core(&lam);
        for i in 0..=p.t() {
            let (icore, iw) = pbar_core(&apply_k(i, &lam).unwrap());
            prop_assert_eq!(iw, w);
            prop_assert_eq!(icore.with_modulus(p), apply_k(i, &core.with_modulus(p)).unwrap());
            let c = core_tuple(&core, p).unwrap();
            prop_assert_eq!(core_tuple(&icore, p).unwrap(), apply_k_tuple(i, &c).unwrap());
        }
    }

    #[test]
    fn parity_law(lam in p_strict(60)) {
        let p = lam.modulus().get();
        let (core, w) = pbar_core(&lam);
        let divisible = lam.parts().iter().filter(|&&x| x % p == 0).count() as u32;
        prop_assert_eq!(parity_of(lam.parts()), (parity_of(core.parts()) + w + divisible) % 2);
    }

    #[test]
    fn core_is_independent_of_removal_order(lam in p_strict(60), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (core, w) = pbar_core(&lam);
        let mut cur = lam.clone();
        let mut steps = 0;
        loop {
            let moves = pbar_removals(&cur);
            if moves.is_empty() {
                break;
            }
            let k = rng.gen_range(0..moves.len());
            cur = moves[k].0.clone();
            steps += 1;
        }
        prop_assert_eq!(steps, w);
        prop_assert_eq!(cur.to_strict().unwrap(), core);
    }

    #[test]
    fn abacus_round_trip(lam in p_strict(80)) {
        prop_assert_eq!(from_abacus(&to_abacus(&lam)), lam);
    }

    #[test]
    fn tuple_round_trips(c in tuple(8)) {
        let p = c.modulus();
        let core = core_from_tuple(&c);
        prop_assert_eq!(core.rank() as u64, rank_from_tuple(&c));
        prop_assert_eq!(core_tuple(&core, p).unwrap(), c.clone());
        prop_assert_eq!(c.to_string().parse::<CoreTuple>().unwrap(), c.clone());
        let json = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<CoreTuple>(&json).unwrap(), c.clone());
        prop_assert_eq!(tuple_from_coords(&coords_from_tuple(&c)).unwrap(), c);
    }

    #[test]
    fn level_symmetries(c in tuple(10)) {
        let v = coords_from_tuple(&c);
        let t = v.t();
        for i in 0..t {
            prop_assert_eq!(level(&weyl_reflect(i, &v).unwrap()), level(&v));
        }
        let mut rev = v.0.clone();
        rev.reverse();
        prop_assert_eq!(level(&CoordVector(rev)), level(&v));
    }

    #[test]
    fn reductions_are_sound(c in tuple(9), w in 0u32..6) {
        let tr = reduce_core(&c, w);
        let mut cur = c.clone();
        for s in &tr.steps {
            prop_assert!(is_w_allowed(s.i, &cur, w).unwrap());
            let next = apply_k_tuple(s.i, &cur).unwrap();
            prop_assert!(rank_from_tuple(&next) < rank_from_tuple(&cur));
            prop_assert_eq!(&next, &s.tuple);
            cur = next;
        }
        prop_assert_eq!(&cur, &tr.end);
        prop_assert!(is_irreducible(&tr.end, w));
        let mut ls: Vec<u32> = tr.end.pairs().iter().map(|p| p.0).filter(|&l| l > 0).collect();
        ls.sort_unstable();
        if let Some(&min) = ls.first() {
            prop_assert!(min <= w);
        }
        for g in ls.windows(2) {
            prop_assert!(g[1] - g[0] < w.max(1));
        }
        if w > 0 {
            let p = c.modulus();
            prop_assert!(tr.end_rank + (p.get() * w) as u64 <= donovan_bound(p, w).unwrap());
        }
    }
}

#[test]
fn bound_is_rock_rank_plus_pw() {
    for p in [3u32, 5, 7, 11, 13] {
        let m = Modulus::new(p).unwrap();
        for w in 1..=20 {
            let rock = rock_core(m, w);
            assert_eq!(
                donovan_bound(m, w).unwrap(),
                rank_from_tuple(&rock) + (p * w) as u64
            );
            assert!(is_irreducible(&rock, w));
        }
    }
}

/// Coefficients of `Π (1 + x^k)` or, for parts divisible by `p`,
/// `Π 1/(1 - x^k)`, up to `x^n`.
fn partition_counts(n: usize, p: Option<u32>) -> Vec<u64> {
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    for k in 1..=n {
        if p.is_some_and(|p| (k as u32).is_multiple_of(p)) {
            for j in k..=n {
                a[j] += a[j - k];
            }
        } else {
            for j in (k..=n).rev() {
                a[j] += a[j - k];
            }
        }
    }
    a
}

#[test]
fn enumeration_counts_match_generating_functions() {
    let strict = partition_counts(40, None);
    for (n, &want) in strict.iter().enumerate() {
        assert_eq!(enumerate_strict(n as u32).len() as u64, want, "n={n}");
    }
    for p in [3u32, 5, 7] {
        let m = Modulus::new(p).unwrap();
        let counts = partition_counts(30, Some(p));
        for (n, &want) in counts.iter().enumerate() {
            assert_eq!(
                enumerate_p_strict(n as u32, m).len() as u64,
                want,
                "p={p} n={n}"
            );
        }
    }
}
