use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

use super::partition::{class_size, partitions, Partition};

type Memo = HashMap<(Partition, Partition), i64>;

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.n(), mu.n(), "partitions of different sizes");
    mn(lambda, mu.parts(), &mut Memo::new())
}

fn mn(lambda: &Partition, mu: &[u32], memo: &mut Memo) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), Partition::new(mu.to_vec()));
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let v = rim_hooks(lambda, r)
        .into_iter()
        .map(|(sign, smaller)| sign * mn(&smaller, rest, memo))
        .sum();
    memo.insert(key, v);
    v
}

/// All ways to strip a rim hook of length `r` from `λ`, as
/// `((−1)^{leg length}, remaining shape)`. Works on the beta-set
/// `β_i = λ_i + k − 1 − i`: a hook is a move `β ↦ β − r` onto a free slot.
fn rim_hooks(lambda: &Partition, r: u32) -> Vec<(i64, Partition)> {
    let k = lambda.len() as u32;
    let beta: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + k - 1 - i as u32)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts = nb
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (k - 1 - j as u32))
            .collect();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        out.push((sign, Partition::new(parts)));
    }
    out
}

/// Full character table of `S_n`; rows are irreducibles `χ^λ`, columns are
/// classes, both in the order of [`partitions`].
#[derive(Debug)]
pub struct CharacterTable {
    n: u32,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    sizes: Vec<BigUint>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: u32) -> Self {
        let parts = partitions(n);
        let mut memo = Memo::new();
        let values = parts
            .iter()
            .map(|l| parts.iter().map(|m| mn(l, m.parts(), &mut memo)).collect())
            .collect();
        CharacterTable {
            n,
            index: parts
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect(),
            sizes: parts.iter().map(class_size).collect(),
            parts,
            values,
        }
    }

    /// Shared, lazily built table for `S_n`.
    pub fn cached(n: u32) -> Arc<CharacterTable> {
        static TABLES: OnceLock<Mutex<HashMap<u32, Arc<CharacterTable>>>> = OnceLock::new();
        let lock = TABLES.get_or_init(Default::default);
        if let Some(t) = lock.lock().expect("table cache poisoned").get(&n) {
            return t.clone();
        }
        // built outside the lock; a racing duplicate is identical
        let t = Arc::new(CharacterTable::new(n));
        lock.lock()
            .expect("table cache poisoned")
            .entry(n)
            .or_insert(t)
            .clone()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn row(&self, lambda: &Partition) -> &[i64] {
        &self.values[self.index[lambda]]
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.values[self.index[lambda]][self.index[mu]]
    }
}
