//! Seeded instance generators.
//!
//! All generators draw from a `ChaCha8Rng`, so a seed reproduces the same
//! instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::classify_worst_case;
use crate::error::{Error, Result};
use crate::prefs::PreferenceInstance;

pub const DEFAULT_ATTEMPT_CAP: u64 = 1_000_000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shuffled(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    v
}

/// Every list an independent uniform permutation.
pub fn random_instance(n: usize, rng: &mut impl Rng) -> PreferenceInstance {
    let men = (0..n).map(|_| shuffled(n, rng)).collect();
    let women = (0..n).map(|_| shuffled(n, rng)).collect();
    PreferenceInstance::new(men, women).expect("shuffled lists are permutations")
}

pub fn random_instance_seeded(n: usize, seed: u64) -> PreferenceInstance {
    random_instance(n, &mut rng_from_seed(seed))
}

/// Draws uniform instances until one has a unique stable matching in which
/// no man gets his first choice. Returns the instance and the number of
/// draws used.
pub fn worst_case_by_rejection(n: usize, seed: u64, cap: u64) -> Result<(PreferenceInstance, u64)> {
    if n < 2 {
        return Err(Error::InstanceTooSmall { n, min: 2 });
    }
    let mut rng = rng_from_seed(seed);
    for attempt in 1..=cap {
        let inst = random_instance(n, &mut rng);
        if classify_worst_case(&inst).is_worst_case() {
            return Ok((inst, attempt));
        }
    }
    Err(Error::GeneratorExhausted { n, attempts: cap })
}

/// Builds a worst-case instance directly, for any `n >= 3`.
///
/// Before relabelling, couple `i` is (man `i`, woman `i`) and every woman
/// ranks her partner first. Man `i < n-1` ranks woman `i+1` first and his
/// partner second; the last man also ranks woman 1 first, and woman 1
/// prefers man 0 to him. The opening collision at woman 1 then sets off a
/// rejection chain that walks every man down to his second choice, so the
/// men-proposing result is also the women-optimal one. The remaining list
/// positions and the final labels are random.
pub fn planted_worst_case(n: usize, rng: &mut impl Rng) -> Result<PreferenceInstance> {
    if n < 3 {
        return Err(Error::InstanceTooSmall { n, min: 3 });
    }
    let tail = |fixed: &[usize], rng: &mut dyn rand::RngCore| -> Vec<usize> {
        let mut rest: Vec<usize> = (0..n).filter(|x| !fixed.contains(x)).collect();
        rest.shuffle(rng);
        fixed.iter().copied().chain(rest).collect()
    };

    let men: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let head = if i + 1 < n { [i + 1, i] } else { [1, i] };
            tail(&head, rng)
        })
        .collect();
    let women: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let mut list = tail(&[j], rng);
            if j == 1 {
                let a = list.iter().position(|&m| m == 0).unwrap();
                let b = list.iter().position(|&m| m == n - 1).unwrap();
                if a > b {
                    list.swap(a, b);
                }
            }
            list
        })
        .collect();

    let man_label = shuffled(n, rng);
    let woman_label = shuffled(n, rng);
    let mut men_rows = vec![Vec::new(); n];
    for (i, list) in men.iter().enumerate() {
        men_rows[man_label[i] as usize - 1] = list.iter().map(|&w| woman_label[w]).collect();
    }
    let mut women_rows = vec![Vec::new(); n];
    for (j, list) in women.iter().enumerate() {
        women_rows[woman_label[j] as usize - 1] = list.iter().map(|&m| man_label[m]).collect();
    }
    let inst = PreferenceInstance::new(men_rows, women_rows)?;
    debug_assert!(classify_worst_case(&inst).is_worst_case());
    Ok(inst)
}
