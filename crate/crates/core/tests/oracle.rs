mod common;

use common::{all_supports, naive_distribution};
use gf4circ::wdist::{full_weight_distribution, partial_distribution_census, CensusOptions};
use gf4circ::{Exec, GraphCode};

#[test]
fn dense_oracle_matches_kernels_for_every_small_support() {
    let mut checked = 0;
    for n in 1..=10 {
        for s in all_supports(n) {
            let want = naive_distribution(&s);
            let code = GraphCode::from_support(&s).unwrap();
            let full = full_weight_distribution(&code, Exec::Sequential).unwrap();
            assert_eq!(full.distribution.unwrap().counts, want, "{n}: {:?}", s.positions());
            let census = partial_distribution_census(&code, n as u32, &CensusOptions::default()).unwrap();
            assert_eq!(census.distribution.unwrap().counts, want, "census {n}: {:?}", s.positions());
            checked += 1;
        }
    }
    assert_eq!(checked, (1..=10).map(|n| 1 << (n / 2)).sum::<usize>());
}

#[test]
fn census_prefix_matches_full_walk_on_random_codes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
    for n in 11..=22 {
        let free = gf4circ::CirculantSupport::num_free(n);
        let mask = rng.random::<u64>() & ((1u64 << free) - 1);
        let s = gf4circ::CirculantSupport::from_free_mask(n, mask).unwrap();
        let code = GraphCode::from_support(&s).unwrap();
        let full = full_weight_distribution(&code, Exec::Parallel).unwrap().distribution.unwrap().counts;
        let w = (n / 3) as u32;
        let part = partial_distribution_census(&code, w, &CensusOptions::default()).unwrap();
        assert_eq!(part.distribution.unwrap().counts[..], full[..=w as usize], "{n}: {:?}", s.positions());
    }
}
