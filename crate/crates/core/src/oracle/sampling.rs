use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::measurement::{Basis, ErrorTableSet, STRICT_ROW_TOLERANCE};
use crate::scalar::Real;

/// Multinomial counts for one row, drawn as a chain of conditional binomials.
fn multinomial(rng: &mut ChaCha8Rng, probs: &[f64], shots: u64) -> Vec<u64> {
    let mut counts = vec![0; probs.len()];
    let mut left = shots;
    let mut mass: f64 = probs.iter().sum();
    for (i, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() {
            counts[i] = left;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = Binomial::new(left, q).map(|b| b.sample(rng)).unwrap_or(0);
        counts[i] = k;
        left -= k;
        mass -= p;
    }
    counts
}

/// Replaces every row by observed frequencies from `shots_per_input` draws.
///
/// Each row gets its own ChaCha stream keyed by `(seed, basis, row)`, so the
/// output depends only on the seed and not on evaluation order.
pub fn sample_tables<T: Real>(t: &ErrorTableSet<T>, shots_per_input: u64, seed: u64) -> Result<ErrorTableSet<T>> {
    if shots_per_input == 0 {
        return Err(Error::Schema("shots per input must be at least 1".into()));
    }
    let d = t.dim();
    let sample = |basis: Basis, offset: u64| -> Vec<Vec<T>> {
        t.table(basis)
            .iter()
            .enumerate()
            .map(|(row, probs)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(offset + row as u64);
                let probs: Vec<f64> = probs.iter().map(|p| p.to_f64().max(0.0)).collect();
                multinomial(&mut rng, &probs, shots_per_input)
                    .into_iter()
                    .map(|k| T::from_f64(k as f64 / shots_per_input as f64))
                    .collect()
            })
            .collect()
    };
    let metadata = format!("{} [sampled: {shots_per_input} shots per input, seed {seed}]", t.metadata);
    ErrorTableSet::new(
        t.n_qubits,
        sample(Basis::Z, 0),
        sample(Basis::X, d as u64),
        metadata.trim_start(),
        STRICT_ROW_TOLERANCE,
    )
}
