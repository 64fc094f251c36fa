use htea_core::numerics::binomial_pmf;
use htea_core::rng::stream;
use htea_core::{BitString, MutationSpec, Mutator};

/// Hamming distances of heavy-tailed offspring, split by sampled rate index:
/// `hits[alpha][k]`.
pub fn heavy_tailed_hits(n: usize, beta: f64, count: usize, seed: u64) -> Vec<Vec<u64>> {
    let mutator = Mutator::new(&MutationSpec::HeavyTailed(beta), n).unwrap();
    let mut rng = stream(seed);
    let parent = BitString::random(n, &mut rng);
    let mut child = parent.clone();
    let mut hits = vec![vec![0u64; n + 1]; n / 2 + 1];
    for _ in 0..count {
        let alpha = mutator.mutate_into(&parent, &mut child, &mut rng).alpha.unwrap();
        hits[alpha][parent.hamming(&child).unwrap()] += 1;
    }
    hits
}

/// Pearson statistic and degrees of freedom of `observed` against
/// Binomial(len - 1, rate), pooling cells with expected count below 5.
pub fn binomial_gof(observed: &[u64], rate: f64) -> (f64, usize) {
    let total: u64 = observed.iter().sum();
    let n = observed.len() - 1;
    let mut cells = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (k, &o) in observed.iter().enumerate() {
        obs += o as f64;
        exp += total as f64 * binomial_pmf(n as u64, k as u64, rate);
        if exp >= 5.0 {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if let Some(last) = cells.last_mut() {
        last.0 += obs;
        last.1 += exp;
    }
    let stat = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    (stat, cells.len().saturating_sub(1))
}

/// Summed Pearson statistic over all rate indices with their total degrees
/// of freedom.
pub fn conditional_binomial_gof(hits: &[Vec<u64>], n: usize) -> (f64, usize) {
    hits.iter().enumerate().skip(1).fold((0.0, 0), |(stat, df), (alpha, row)| {
        let (s, d) = binomial_gof(row, alpha as f64 / n as f64);
        (stat + s, df + d)
    })
}
