//! Root-system data for the crystallographic types A–G.
//!
//! Simple roots follow Bourbaki numbering. Weights are stored in the
//! fundamental-weight basis; every positive root is kept in both the
//! simple-root basis and the fundamental-weight basis.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// Cartan type of a simple group, e.g. `A2` or `F4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    series: Series,
    rank: usize,
}

impl GroupType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => rank == 6,
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::UnsupportedType(format!("{}{}", series.letter(), rank)));
        }
        Ok(GroupType { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::Parse(format!("unknown group type '{s}'"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad rank in group type '{s}'")))?;
        GroupType::new(series, rank)
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl Index<usize> for Weight {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated coordinates, e.g. `"1,0,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight coordinate '{t}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coords))
    }
}

/// Parses semicolon-separated weights, e.g. `"1,0;0,1;1,1"`.
pub fn parse_weights(s: &str) -> Result<Vec<Weight>> {
    s.split(';').map(str::parse).collect()
}

pub fn format_weights(ws: &[Weight]) -> String {
    ws.iter().map(Weight::to_string).collect::<Vec<_>>().join(";")
}

/// Immutable table of positive roots, coroots, and Cartan data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    group_type: GroupType,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i)` with the short roots normalized to 2.
    root_norms: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_fw: Vec<Weight>,
    /// Coroot of each positive root in simple-coroot coordinates.
    coroots: Vec<Vec<i64>>,
    rho: Weight,
    by_fw: HashMap<Weight, usize>,
    sums: Vec<Vec<Option<usize>>>,
    inverse_cartan: Vec<Vec<Ratio<i64>>>,
}

fn symmetrized_cartan(t: GroupType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut b = vec![vec![0i64; r]; r];
    let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match t.series {
        Series::A => {
            for i in 0..r {
                b[i][i] = 2;
            }
            for i in 0..r.saturating_sub(1) {
                link(&mut b, i, i + 1, -1);
            }
        }
        Series::B => {
            for i in 0..r {
                b[i][i] = if i + 1 < r { 4 } else { 2 };
            }
            for i in 0..r - 1 {
                link(&mut b, i, i + 1, -2);
            }
        }
        Series::C => {
            for i in 0..r {
                b[i][i] = if i + 1 < r { 2 } else { 4 };
            }
            for i in 0..r - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, r - 2, r - 1, -2);
        }
        Series::D => {
            for i in 0..r {
                b[i][i] = 2;
            }
            for i in 0..r - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, r - 3, r - 1, -1);
        }
        Series::E => {
            for i in 0..r {
                b[i][i] = 2;
            }
            // Bourbaki: 1-3, 3-4, 4-5, 5-6, 2-4
            for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
                link(&mut b, i, j, -1);
            }
        }
        Series::F => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            link(&mut b, 0, 1, -2);
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -1);
        }
        Series::G => {
            b[0][0] = 2;
            b[1][1] = 6;
            link(&mut b, 0, 1, -3);
        }
    }
    b
}

fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrices are nonsingular");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl RootSystem {
    /// Builds the positive roots by closing the simple roots under root
    /// strings. Roots are ordered by height, then by descending
    /// lexicographic order of simple-root coordinates, so the simple roots
    /// occupy indices `0..rank` in Bourbaki order.
    pub fn new(t: GroupType) -> Result<Self> {
        let t = GroupType::new(t.series, t.rank)?;
        let r = t.rank;
        let b = symmetrized_cartan(t);
        let cartan: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| 2 * b[i][j] / b[i][i]).collect()).collect();
        let root_norms: Vec<i64> = (0..r).map(|i| b[i][i]).collect();

        let unit = |i: usize| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        };
        let mut known: HashSet<Vec<i64>> = (0..r).map(unit).collect();
        let mut layer: Vec<Vec<i64>> = (0..r).map(unit).collect();
        let mut roots = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..r {
                    let mut q = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= q + 1;
                        if known.contains(&down) {
                            q += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                    if q - pair > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            layer = next;
        }
        roots.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });

        let positive_roots_fw: Vec<Weight> =
            roots.iter().map(|c| Weight((0..r).map(|i| (0..r).map(|j| cartan[i][j] * c[j]).sum()).collect())).collect();
        let coroots: Vec<Vec<i64>> = roots
            .iter()
            .map(|c| {
                let norm: i64 =
                    (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| c[i] * c[j] * b[i][j]).sum();
                (0..r).map(|j| c[j] * b[j][j] / norm).collect()
            })
            .collect();
        let by_fw: HashMap<Weight, usize> = positive_roots_fw.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let by_simple: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(k, c)| (c, k)).collect();
        let sums = roots
            .iter()
            .map(|x| {
                roots
                    .iter()
                    .map(|y| {
                        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                        by_simple.get(&s).copied()
                    })
                    .collect()
            })
            .collect();
        let inverse_cartan = invert_rational(&cartan);

        Ok(RootSystem {
            group_type: t,
            cartan,
            root_norms,
            positive_roots: roots,
            positive_roots_fw,
            coroots,
            rho: Weight(vec![1; r]),
            by_fw,
            sums,
            inverse_cartan,
        })
    }

    pub fn group_type(&self) -> GroupType {
        self.group_type
    }

    pub fn rank(&self) -> usize {
        self.group_type.rank
    }

    pub fn n_pos(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared lengths of the simple roots (short roots have length 2).
    pub fn root_norms(&self) -> &[i64] {
        &self.root_norms
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_roots_fw(&self) -> &[Weight] {
        &self.positive_roots_fw
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn height(&self, k: usize) -> i64 {
        self.positive_roots[k].iter().sum()
    }

    /// `<lam, alpha_k^vee>`.
    pub fn pairing(&self, lam: &Weight, k: usize) -> Result<i64> {
        self.check_rank(lam)?;
        if k >= self.n_pos() {
            return Err(Error::IndexOutOfRange { index: k, n_pos: self.n_pos() });
        }
        Ok(self.pairing_unchecked(lam, k))
    }

    pub(crate) fn pairing_unchecked(&self, lam: &Weight, k: usize) -> i64 {
        self.coroots[k].iter().zip(&lam.0).map(|(a, b)| a * b).sum()
    }

    pub fn check_rank(&self, lam: &Weight) -> Result<()> {
        if lam.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: lam.rank() });
        }
        Ok(())
    }

    /// Index of a positive root given in fundamental-weight coordinates,
    /// together with its sign when `root` is a negative root.
    pub fn root_index_fw(&self, root: &Weight) -> Option<(usize, bool)> {
        if let Some(&k) = self.by_fw.get(root) {
            return Some((k, true));
        }
        self.by_fw.get(&-root).map(|&k| (k, false))
    }

    /// Index of `alpha_i + alpha_j` if it is a positive root.
    pub fn root_sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i][j]
    }

    pub fn to_fundamental(&self, simple: &[i64]) -> Result<Weight> {
        if simple.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: simple.len() });
        }
        let r = self.rank();
        Ok(Weight((0..r).map(|i| (0..r).map(|j| self.cartan[i][j] * simple[j]).sum()).collect()))
    }

    /// Simple-root coordinates of a weight, when they are integral.
    pub fn to_simple(&self, lam: &Weight) -> Result<Option<Vec<i64>>> {
        self.check_rank(lam)?;
        let r = self.rank();
        let mut out = Vec::with_capacity(r);
        for i in 0..r {
            let c: Ratio<i64> = (0..r)
                .map(|j| self.inverse_cartan[i][j] * Ratio::from_integer(lam[j]))
                .fold(Ratio::zero(), |a, b| a + b);
            if !c.is_integer() {
                return Ok(None);
            }
            out.push(c.to_integer());
        }
        Ok(Some(out))
    }

    /// `(omega_i, omega_j)` as exact rationals, short roots of length 2.
    pub fn fundamental_gram(&self) -> Vec<Vec<Ratio<i64>>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|k| self.inverse_cartan[k][i] * Ratio::new(self.root_norms[k], 2)).collect())
            .collect()
    }

    /// Simple reflection `s_i` acting on a weight.
    pub fn reflect(&self, i: usize, lam: &Weight) -> Weight {
        let c = lam[i];
        Weight(lam.0.iter().enumerate().map(|(j, &x)| x - c * self.cartan[j][i]).collect())
    }

    /// Dominant representative of the W-orbit of `lam`, with the simple
    /// reflections applied (in order) to reach it.
    pub fn dominant_representative(&self, lam: &Weight) -> (Weight, Vec<usize>) {
        let mut cur = lam.clone();
        let mut applied = Vec::new();
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect(i, &cur);
            applied.push(i);
        }
        (cur, applied)
    }
}
