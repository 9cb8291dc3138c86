//! Character sums `sum_x chi(f(x))` over a whole field, the inner loop of
//! all point counting.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{FieldElement, FiniteField, Poly};

const CHUNK: u32 = 1 << 14;

/// Bitmap of the nonzero squares of a field without log tables.
struct SquareSet {
    bits: Vec<u64>,
}

impl SquareSet {
    fn new(k: &FiniteField) -> SquareSet {
        let q = k.cardinality() as u32;
        let words: Vec<AtomicU64> = (0..(q as usize).div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
        (1..q).into_par_iter().with_min_len(CHUNK as usize).for_each(|a| {
            let s = k.square(FieldElement(a)).packed() as usize;
            words[s / 64].fetch_or(1 << (s % 64), Ordering::Relaxed);
        });
        SquareSet { bits: words.into_iter().map(AtomicU64::into_inner).collect() }
    }

    fn character(&self, a: FieldElement) -> i64 {
        let i = a.packed() as usize;
        if i == 0 {
            0
        } else if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }
}

/// `sum_{x in k} chi(f(x))` for the quadratic character `chi` of `k`.
pub fn character_sum(k: &FiniteField, f: &Poly) -> i64 {
    let q = k.cardinality() as u32;
    let squares = (!k.has_tables() && q > CHUNK).then(|| SquareSet::new(k));
    let chi = |a: FieldElement| match &squares {
        Some(s) => s.character(a),
        None => k.quadratic_character(a) as i64,
    };
    let chunks = q.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(q);
            (lo..hi).map(|x| chi(f.eval(k, FieldElement(x)))).sum::<i64>()
        })
        .sum()
}
