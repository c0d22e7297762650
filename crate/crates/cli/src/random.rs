//! Randomized round-trip and equivariance checks on split graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use split_species::graph::MAX_VERTICES;
use split_species::verify::{
    equivariance_failures, roundtrip_failures, split_graph_from_bits, VerifyReport,
};
use split_species::{Error, Permutation};

/// Maximum K-S pairs addressable by one 64-bit edge mask.
const MAX_RANDOM_N: usize = MAX_VERTICES;

pub fn random_report(n: usize, cases: usize, seed: u64) -> Result<VerifyReport, Error> {
    if n > MAX_RANDOM_N {
        return Err(Error::TooLarge {
            what: "random suite",
            max: MAX_RANDOM_N,
            got: n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roundtrip = Vec::new();
    let mut equivariance = Vec::new();
    for _ in 0..cases {
        let k_bits: u16 = rng.gen();
        let edge_bits: u64 = rng.gen();
        let g = split_graph_from_bits(n, k_bits, edge_bits);
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(&mut rng);
        let p = Permutation::new(image)?;
        roundtrip.extend(roundtrip_failures(&g));
        equivariance.extend(equivariance_failures(&g, &p));
    }
    let mut report = VerifyReport::new("random", n);
    let summary = |f: Vec<String>| Some(f.into_iter().take(5).collect::<Vec<_>>().join("; "));
    let label = format!("{cases} random split graphs, seed {seed}");
    report.record(
        n,
        &format!("{label}: round trips"),
        roundtrip.is_empty(),
        summary(roundtrip),
    );
    report.record(
        n,
        &format!("{label}: equivariance"),
        equivariance.is_empty(),
        summary(equivariance),
    );
    Ok(report)
}
