#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use adele_lab_core::brauer::{BrauerClass, QmodZInvariant};
use adele_lab_core::equivalence::PlaceBijectionData;
use adele_lab_core::fieldlab::{builtin_fields, NumberField};
use adele_lab_core::orders::{tree_neighbors, Deviation, OrderData, TreeVertex};
use adele_lab_core::place::Place;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(label: &str) -> NumberField {
    builtin_fields().into_iter().find(|f| f.label() == label).expect("builtin")
}

/// Finite places in the domain of a matching, plus its real places.
pub fn matched_places(phi: &PlaceBijectionData) -> (Vec<Place>, Vec<Place>) {
    let finite = phi
        .finite_matching
        .iter()
        .flat_map(|(&p, perm)| (0..perm.len()).map(move |s| Place::finite(p, s)))
        .collect();
    let real = (0..phi.archimedean_matching.real.len()).map(Place::real).collect();
    (finite, real)
}

/// A random class satisfying reciprocity, supported on the given places.
pub fn random_class(field: &str, finite: &[Place], real: &[Place], rng: &mut ChaCha8Rng) -> BrauerClass {
    let k = rng.gen_range(0..5usize);
    let mut chosen: Vec<Place> = finite.choose_multiple(rng, k + 1).copied().collect();
    let balance = chosen.pop().expect("pool is nonempty");
    let mut invs = Vec::new();
    for place in chosen {
        let m = rng.gen_range(2..=6u64);
        invs.push((place, QmodZInvariant::new(rng.gen_range(1..m) as i128, m)));
    }
    for &place in real {
        if rng.gen_bool(0.3) {
            invs.push((place, QmodZInvariant::half()));
        }
    }
    let sum = invs.iter().fold(QmodZInvariant::ZERO, |acc, (_, q)| acc.add(q));
    invs.push((balance, sum.neg()));
    BrauerClass::from_invariants(field, invs)
}

/// A random class over Q on slot-0 places of the given primes.
pub fn random_class_over_q(primes: &[u64], rng: &mut ChaCha8Rng) -> BrauerClass {
    let finite: Vec<Place> = primes.iter().map(|&p| Place::finite(p, 0)).collect();
    random_class("Q", &finite, &[Place::real(0)], rng)
}

pub fn random_order(class: BrauerClass, finite: &[Place], rng: &mut ChaCha8Rng) -> OrderData {
    let k = rng.gen_range(0..4usize);
    let devs = finite.choose_multiple(rng, k).map(|&p| {
        (p, Deviation { e: rng.gen_range(0..4), label: format!("t{}", rng.gen_range(0..3)) })
    });
    OrderData::new(class, devs.collect::<Vec<_>>()).expect("finite places")
}

pub fn random_vertex(p: u64, rng: &mut ChaCha8Rng) -> TreeVertex {
    loop {
        let mut e = || BigInt::from(rng.gen_range(-40i64..=40));
        let m = [[e(), e()], [e(), e()]];
        if let Ok(v) = TreeVertex::from_matrix(p, &m) {
            return v;
        }
    }
}

pub fn ball_size(center: &TreeVertex, radius: u32) -> usize {
    let mut seen = BTreeSet::from([center.clone()]);
    let mut queue = VecDeque::from([(center.clone(), 0u32)]);
    while let Some((v, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for w in tree_neighbors(&v) {
            if seen.insert(w.clone()) {
                queue.push_back((w, d + 1));
            }
        }
    }
    seen.len()
}
