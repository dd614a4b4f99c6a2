use rand::Rng;

use crate::error::{Error, Result};

/// Binary tournament on (rank, crowding): lower rank wins, then larger
/// crowding distance, then a fair coin.
///
/// Both candidates are drawn uniformly with replacement. Returns the index of
/// the winner.
pub fn binary_tournament<R: Rng + ?Sized>(
    ranks: &[usize],
    crowding: &[f64],
    rng: &mut R,
) -> Result<usize> {
    if ranks.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    debug_assert_eq!(ranks.len(), crowding.len());
    let a = rng.gen_range(0..ranks.len());
    let b = rng.gen_range(0..ranks.len());
    Ok(tournament_winner(a, b, ranks, crowding, rng))
}

pub(crate) fn tournament_winner<R: Rng + ?Sized>(
    a: usize,
    b: usize,
    ranks: &[usize],
    crowding: &[f64],
    rng: &mut R,
) -> usize {
    if ranks[a] != ranks[b] {
        return if ranks[a] < ranks[b] { a } else { b };
    }
    if crowding[a] != crowding[b] {
        return if crowding[a] > crowding[b] { a } else { b };
    }
    if rng.gen_bool(0.5) {
        a
    } else {
        b
    }
}
