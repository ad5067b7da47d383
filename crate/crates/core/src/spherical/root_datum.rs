//! Root datum of type `C_m`, its Weyl group of signed permutations, and
//! cocharacters of the diagonal torus of `Sp_{2m}`.

use serde::Serialize;

use crate::error::{domain, Result};

/// `w = (π, s)` acting by `(w·v)_i = s_i v_{π(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(m: usize) -> Self {
        Self { perm: (0..m).collect(), signs: vec![1; m] }
    }

    pub fn act(&self, v: &[i64]) -> Vec<i64> {
        self.perm.iter().zip(&self.signs).map(|(&j, &s)| s as i64 * v[j]).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatumC {
    rank: usize,
    weyl: Vec<SignedPermutation>,
    lengths: Vec<usize>,
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

impl RootDatumC {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 8 {
            return domain(format!("type C rank {rank} outside 1..=8"));
        }
        let mut weyl = Vec::with_capacity((1 << rank) * (1..=rank).product::<usize>());
        for perm in permutations(rank) {
            for mask in 0..(1u32 << rank) {
                let signs = (0..rank).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                weyl.push(SignedPermutation { perm: perm.clone(), signs });
            }
        }
        let roots = positive_roots(rank);
        let lengths = weyl
            .iter()
            .map(|w| roots.iter().filter(|a| !is_positive(&w.act(a))).count())
            .collect();
        Ok(Self { rank, weyl, lengths })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weyl_group(&self) -> &[SignedPermutation] {
        &self.weyl
    }

    /// `ℓ(w)` for the element at the same index in [`weyl_group`](Self::weyl_group).
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        positive_roots(self.rank)
    }

    /// `ρ_i = m - i + 1`.
    pub fn rho(&self) -> Vec<i64> {
        (0..self.rank).map(|i| (self.rank - i) as i64).collect()
    }

    pub fn rho_pairing(&self, lambda: &Cocharacter) -> i64 {
        self.rho().iter().zip(&lambda.lambda).map(|(r, l)| r * l).sum()
    }
}

/// `e_i - e_j`, `e_i + e_j` (`i < j`) and `2e_i`.
fn positive_roots(m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let mut a = vec![0; m];
            a[i] = 1;
            a[j] = -1;
            out.push(a.clone());
            a[j] = 1;
            out.push(a);
        }
        let mut a = vec![0; m];
        a[i] = 2;
        out.push(a);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cocharacter {
    pub lambda: Vec<i64>,
}

impl Cocharacter {
    pub fn new(lambda: Vec<i64>) -> Self {
        Self { lambda }
    }

    pub fn zero(m: usize) -> Self {
        Self { lambda: vec![0; m] }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `λ_1 ≥ … ≥ λ_m ≥ 0`.
    pub fn is_dominant(&self) -> bool {
        self.lambda.windows(2).all(|w| w[0] >= w[1]) && self.lambda.last().is_none_or(|&x| x >= 0)
    }

    /// The dominant representative of the Weyl orbit.
    pub fn dominant(&self) -> Self {
        let mut v: Vec<i64> = self.lambda.iter().map(|x| x.abs()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self { lambda: v }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().all(|&x| x == 0)
    }
}
