use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use setramsey::binom;
use setramsey::chains::{
    check_tightness, extract_chain_traced, validate_chain, ChainWitness, Direction,
};
use setramsey::SetFamily;

fn random_family(rng: &mut ChaCha8Rng, u: usize, m: usize) -> SetFamily {
    let mut rows: Vec<u64> = Vec::with_capacity(m);
    while rows.len() < m {
        let r = rng.gen_range(0..1u64 << u);
        if !rows.contains(&r) {
            rows.push(r);
        }
    }
    SetFamily::new(u, rows).unwrap()
}

#[test]
fn extraction_always_succeeds_above_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let k = rng.gen_range(0..=3);
        let l = rng.gen_range(0..=3);
        let m = binom(k + l, l) as usize + 1;
        let min_u = (usize::BITS - (m - 1).leading_zeros()) as usize;
        let u = rng.gen_range(min_u.max(1)..=8);
        let f = random_family(&mut rng, u, m);
        let traced = extract_chain_traced(&f, k, l).unwrap();
        let w = &traced.witness;
        assert!(validate_chain(&f, w).unwrap(), "{:?} {w:?}", f.lines());
        match w.direction {
            Direction::Increasing => assert_eq!(w.order(), k + 1),
            Direction::Decreasing => assert_eq!(w.order(), l + 1),
        }
        assert!(traced.depth <= k + l);

        // complements swap the two directions
        let dual = ChainWitness {
            direction: match w.direction {
                Direction::Increasing => Direction::Decreasing,
                Direction::Decreasing => Direction::Increasing,
            },
            indices: w.indices.clone(),
        };
        assert!(validate_chain(&f.complement(), &dual).unwrap());
    }
}

#[test]
fn the_bound_is_tight() {
    for n in 0..=5 {
        for l in 0..=n {
            assert!(check_tightness(n - l, l).unwrap(), "k = {}, l = {l}", n - l);
        }
    }
}

#[test]
fn at_the_bound_extraction_refuses() {
    let f = SetFamily::parse("00\n10\n").unwrap();
    assert!(extract_chain_traced(&f, 1, 1).is_err());
}
