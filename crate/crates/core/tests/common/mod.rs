//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's Weyl-group machinery: Cartan
//! matrices are typed in by hand and every group action is replayed from
//! reduced words.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use eigencone::{RootSystem, Weight};

/// `(cartan, simple root norms)` with `cartan[i][j] = <alpha_j, alpha_i^vee>`.
pub fn cartan_for(t: &str) -> (Vec<Vec<i64>>, Vec<i64>) {
    match t {
        "A1" => (vec![vec![2]], vec![2]),
        "A2" => (vec![vec![2, -1], vec![-1, 2]], vec![2, 2]),
        "A3" => (vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], vec![2, 2, 2]),
        "B2" => (vec![vec![2, -1], vec![-2, 2]], vec![4, 2]),
        "G2" => (vec![vec![2, -3], vec![-1, 2]], vec![2, 6]),
        "B3" => (vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]], vec![4, 4, 2]),
        "C3" => (vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]], vec![2, 2, 4]),
        _ => panic!("no hand-written Cartan matrix for {t}"),
    }
}

pub struct Reference {
    pub cartan: Vec<Vec<i64>>,
    pub norms: Vec<i64>,
    /// Positive roots in simple-root coordinates, in the library's order.
    pub roots: Vec<Vec<i64>>,
}

impl Reference {
    /// Generates the positive roots as the positive part of the orbit of
    /// the simple roots and checks the library agrees on the set.
    pub fn new(t: &str, rs: &RootSystem) -> Self {
        let (cartan, norms) = cartan_for(t);
        let r = cartan.len();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        let me = Reference { cartan, norms, roots: Vec::new() };
        while let Some(b) = queue.pop_front() {
            for i in 0..r {
                let c = me.reflect_root(i, &b);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let positive: HashSet<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect();
        let lib: HashSet<Vec<i64>> = rs.positive_roots().iter().cloned().collect();
        assert_eq!(positive, lib, "{t}: positive roots disagree");
        assert_eq!(rs.cartan(), &me.cartan[..], "{t}: Cartan matrix disagrees");
        Reference { roots: rs.positive_roots().to_vec(), ..me }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn n_pos(&self) -> usize {
        self.roots.len()
    }

    /// `s_i beta` in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let p: i64 = (0..beta.len()).map(|j| beta[j] * self.cartan[i][j]).sum();
        let mut out = beta.to_vec();
        out[i] -= p;
        out
    }

    /// `s_{a_1} ... s_{a_m} beta`.
    pub fn act_root(&self, word: &[u8], beta: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(beta.to_vec(), |b, &i| self.reflect_root(i as usize, &b))
    }

    /// `s_i lam` in fundamental-weight coordinates.
    pub fn reflect_weight(&self, i: usize, lam: &[i64]) -> Vec<i64> {
        let li = lam[i];
        (0..lam.len()).map(|k| lam[k] - li * self.cartan[k][i]).collect()
    }

    pub fn act_weight(&self, word: &[u8], lam: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(lam.to_vec(), |l, &i| self.reflect_weight(i as usize, &l))
    }

    /// Bitmask of positive roots sent negative by the word.
    pub fn inversions(&self, word: &[u8]) -> u64 {
        let mut bits = 0u64;
        for (k, b) in self.roots.iter().enumerate() {
            if self.act_root(word, b).iter().any(|&x| x < 0) {
                bits |= 1 << k;
            }
        }
        bits
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n_pos()) - 1
    }

    /// Whether the masks are pairwise disjoint and cover every positive root.
    pub fn partitions(&self, masks: &[u64]) -> bool {
        let mut seen = 0u64;
        for &m in masks {
            if seen & m != 0 {
                return false;
            }
            seen |= m;
        }
        seen == self.full()
    }

    pub fn orbit(&self, lam: &[i64]) -> HashSet<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::from([lam.to_vec()]);
        seen.insert(lam.to_vec());
        while let Some(l) = queue.pop_front() {
            for i in 0..self.rank() {
                let m = self.reflect_weight(i, &l);
                if seen.insert(m.clone()) {
                    queue.push_back(m);
                }
            }
        }
        seen
    }

    /// `-w0 lam`, found as the dominant element of the orbit of `-lam`.
    pub fn dual(&self, lam: &[i64]) -> Vec<i64> {
        let neg: Vec<i64> = lam.iter().map(|x| -x).collect();
        self.orbit(&neg).into_iter().find(|m| m.iter().all(|&x| x >= 0)).expect("dominant element")
    }

    /// Weyl's dimension formula. The ratio `<lam + rho, a^vee> / <rho, a^vee>`
    /// is `sum_j c_j |alpha_j|^2 (lam_j + 1) / sum_j c_j |alpha_j|^2`.
    pub fn weyl_dim(&self, lam: &[i64]) -> u128 {
        let r = self.rank();
        let (mut num, mut den) = (1u128, 1u128);
        for c in &self.roots {
            num *= (0..r).map(|j| c[j] * self.norms[j] * (lam[j] + 1)).sum::<i64>() as u128;
            den *= (0..r).map(|j| c[j] * self.norms[j]).sum::<i64>() as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        assert_eq!(den, 1);
        num
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn weight(c: &[i64]) -> Weight {
    Weight::new(c.to_vec())
}

/// All dominant weights of rank `r` with coordinates in `0..=bound`.
pub fn dominant_box(r: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}
