use rayon::prelude::*;

use crate::dualities::{
    center_check, verify_hom_dim, verify_howe, verify_regular, verify_sergeev, verify_symmetric_power,
    verify_zero_weight, VerificationReport,
};
use crate::partitions::StrictPartition;
use crate::qalg::realization_check;
use crate::spingroup::verify_invariants;
use crate::symfunc::{cauchy_check, integrality_check};

type Task = Box<dyn Fn(bool) -> VerificationReport + Send + Sync>;

fn partition(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).expect("grid partitions are strict")
}

/// The acceptance grid in canonical order.
fn tasks() -> Vec<Task> {
    let mut t: Vec<Task> = Vec::new();
    for (m, n, d) in [(1, 1, 6), (2, 2, 8), (3, 2, 7), (3, 3, 6)] {
        t.push(Box::new(move |x| cauchy_check(m, n, d, x)));
    }
    t.push(Box::new(|x| integrality_check(8, 4, x)));
    for m in 1..=2 {
        for n in 1..=2 {
            for k in 1..=3 {
                t.push(Box::new(move |x| realization_check(m, n, k, x)));
            }
        }
    }
    t.push(Box::new(|x| realization_check(3, 2, 2, x)));
    for (m, n, k) in [(1, 1, 2), (1, 2, 3), (2, 2, 2), (2, 2, 3)] {
        t.push(Box::new(move |x| verify_howe(m, n, k, x)));
    }
    for (m, k) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        t.push(Box::new(move |x| verify_sergeev(m, k, x)));
    }
    for m in 1..=3 {
        for k in 1..=4 {
            t.push(Box::new(move |x| verify_symmetric_power(m, k, x)));
        }
    }
    for m in 1..=2 {
        for n in 1..=2 {
            for k in 1..=3 {
                t.push(Box::new(move |x| verify_invariants(k, m, n, x)));
            }
        }
    }
    for p in [&[1][..], &[2], &[2, 1], &[3]] {
        let lambda = partition(p);
        t.push(Box::new(move |x| verify_zero_weight(&lambda, x)));
    }
    for n in 1..=3 {
        t.push(Box::new(move |x| verify_regular(n, x)));
    }
    for p in [&[1][..], &[2], &[3], &[2, 1]] {
        let lambda = partition(p);
        t.push(Box::new(move |x| verify_hom_dim(&lambda, 2, x)));
    }
    for m in 1..=2 {
        for k in 0..=4 {
            t.push(Box::new(move |x| center_check(m, k, x)));
        }
    }
    t
}

/// Runs every grid check, concurrently, and returns the reports in canonical
/// order with timings zeroed.
pub fn grid(tamper: bool) -> Vec<VerificationReport> {
    tasks()
        .par_iter()
        .map(|task| task(tamper).without_timing())
        .collect()
}
