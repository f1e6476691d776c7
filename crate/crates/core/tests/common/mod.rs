//! Brute-force oracles shared by the integration tests. Deliberately
//! independent of the packed GF(2) and symplectic code paths: everything
//! here works on plain `Vec<bool>` and single-letter commutation.
#![allow(dead_code)]

use std::collections::HashMap;

use bposd_core::codes::StabilizerCode;
use bposd_core::pauli_algebra::{CheckMatrix, Pauli, PauliVector};

pub const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

pub fn five_qubit_code() -> StabilizerCode {
    let rows = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
        .iter()
        .map(|s| s.parse::<PauliVector>().unwrap())
        .collect();
    StabilizerCode::new("five_qubit", 1, Some(3), CheckMatrix::new(5, rows).unwrap()).unwrap()
}

/// Rank by textbook elimination on dense booleans.
pub fn rank_oracle(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] {
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Per-(qubit, letter) syndrome masks from letter-level commutation.
pub struct LetterSyndromes {
    pub n: usize,
    masks: Vec<[u128; 4]>,
}

impl LetterSyndromes {
    pub fn new(check: &CheckMatrix) -> Self {
        assert!(check.m() <= 128, "oracle limited to 128 checks");
        let n = check.n();
        let letters: Vec<Vec<Pauli>> = check.rows().iter().map(|r| r.letters()).collect();
        let masks = (0..n)
            .map(|q| {
                let mut per = [0u128; 4];
                for (li, &l) in LETTERS.iter().enumerate() {
                    for (r, row) in letters.iter().enumerate() {
                        if l.anticommutes(row[q]) {
                            per[li] |= 1 << r;
                        }
                    }
                }
                per
            })
            .collect();
        Self { n, masks }
    }

    pub fn mask(&self, letters: &[u8]) -> u128 {
        letters
            .iter()
            .enumerate()
            .fold(0, |acc, (q, &l)| acc ^ self.masks[q][l as usize])
    }

    pub fn mask_of(&self, p: &PauliVector) -> u128 {
        let letters: Vec<u8> = p.letters().iter().map(|l| l.index() as u8).collect();
        self.mask(&letters)
    }
}

pub fn syndrome_mask(bits: impl Iterator<Item = bool>) -> u128 {
    bits.enumerate().fold(0, |acc, (i, b)| acc | ((b as u128) << i))
}

/// Minimum Pauli weight of an error producing each reachable syndrome,
/// found by enumerating errors level by level in weight until every one of
/// the `2^rank` syndromes has been seen.
pub fn min_weight_table(check: &CheckMatrix) -> HashMap<u128, usize> {
    let ls = LetterSyndromes::new(check);
    let rows: Vec<Vec<bool>> = check
        .rows()
        .iter()
        .map(|r| r.x_bits().iter().chain(r.z_bits().iter()).collect())
        .collect();
    let target = 1usize << rank_oracle(&rows);
    let n = check.n();
    let mut table = HashMap::new();
    table.insert(0u128, 0usize);
    let mut w = 1;
    while table.len() < target && w <= n {
        for_each_support(n, w, &mut |support| {
            let mut digits = vec![0usize; w];
            loop {
                let s = support
                    .iter()
                    .zip(&digits)
                    .fold(0u128, |acc, (&q, &d)| acc ^ ls.masks[q][d + 1]);
                table.entry(s).or_insert(w);
                // odometer over {X, Y, Z}^w
                let mut i = 0;
                while i < w {
                    digits[i] += 1;
                    if digits[i] < 3 {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == w {
                    break;
                }
            }
        });
        w += 1;
    }
    assert_eq!(table.len(), target, "enumeration did not cover every syndrome");
    table
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_support(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), f);
    }
}

/// Reliability of each qubit after the decision history `W₀ … W_T`: the
/// length of the trailing run of identical letters, counted from scratch.
pub fn history_ell(history: &[PauliVector]) -> Vec<usize> {
    let last = history.last().expect("non-empty history");
    (0..last.n())
        .map(|i| {
            history
                .iter()
                .rev()
                .take_while(|w| w.get(i) == last.get(i))
                .count()
        })
        .collect()
}

/// Exact per-qubit marginals `P(Eᵢ = ·| syndrome)` under i.i.d.
/// depolarizing noise, by enumerating all `4ⁿ` errors.
pub fn exact_marginals(check: &CheckMatrix, syndrome: u128, eps: f64) -> Vec<[f64; 4]> {
    let n = check.n();
    assert!(n <= 10, "4^n enumeration");
    let ls = LetterSyndromes::new(check);
    let prior = [1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0];
    let mut marg = vec![[0.0f64; 4]; n];
    let mut letters = vec![0u8; n];
    for code in 0..(1usize << (2 * n)) {
        for (q, l) in letters.iter_mut().enumerate() {
            *l = ((code >> (2 * q)) & 3) as u8;
        }
        if ls.mask(&letters) != syndrome {
            continue;
        }
        let p: f64 = letters.iter().map(|&l| prior[l as usize]).product();
        for (q, &l) in letters.iter().enumerate() {
            marg[q][l as usize] += p;
        }
    }
    for m in &mut marg {
        let s: f64 = m.iter().sum();
        for v in m.iter_mut() {
            *v /= s;
        }
    }
    marg
}

fn dense_row(p: &PauliVector) -> Vec<bool> {
    p.x_bits().iter().chain(p.z_bits().iter()).collect()
}

/// Minimum weight of an operator that commutes with every check but is not
/// itself a product of checks, searching weights `1..=max_weight`.
pub fn distance_oracle(check: &CheckMatrix, max_weight: usize) -> Option<usize> {
    let ls = LetterSyndromes::new(check);
    let mut rows: Vec<Vec<bool>> = check.rows().iter().map(dense_row).collect();
    let base_rank = rank_oracle(&rows);
    let n = check.n();
    for w in 1..=max_weight.min(n) {
        let mut found = false;
        for_each_support(n, w, &mut |support| {
            if found {
                return;
            }
            let mut digits = vec![0usize; w];
            loop {
                let mut letters = vec![0u8; n];
                for (&q, &d) in support.iter().zip(&digits) {
                    letters[q] = d as u8 + 1;
                }
                if ls.mask(&letters) == 0 {
                    let p = PauliVector::from_letters(&letters.iter().map(|&l| LETTERS[l as usize]).collect::<Vec<_>>());
                    rows.push(dense_row(&p));
                    let outside = rank_oracle(&rows) > base_rank;
                    rows.pop();
                    if outside {
                        found = true;
                        return;
                    }
                }
                let mut i = 0;
                while i < w {
                    digits[i] += 1;
                    if digits[i] < 3 {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == w {
                    break;
                }
            }
        });
        if found {
            return Some(w);
        }
    }
    None
}

pub fn random_pauli<R: rand::Rng>(n: usize, rng: &mut R) -> PauliVector {
    PauliVector::from_letters(&(0..n).map(|_| LETTERS[rng.gen_range(0..4)]).collect::<Vec<_>>())
}
