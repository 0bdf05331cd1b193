use std::cmp::Ordering;

use smallvec::SmallVec;

/// Dense exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u16; 24]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Monomial {
        Monomial { exps: SmallVec::from_slice(exps), deg: exps.iter().map(|&e| e as u32).sum() }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Total degree in the variables selected by `mask`.
    pub fn masked_degree(&self, mask: u64) -> u32 {
        self.exps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 24]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 24]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support bitmask (variables with nonzero exponent).
    pub fn support(&self) -> u64 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Re-embeds into a ring with `nvars` variables, variable `i` going to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut exps: SmallVec<[u16; 24]> = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial { exps, deg: self.deg }
    }
}

/// Monomial orders. Variable 0 is the largest variable in every order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TermOrder {
    Lex,
    GrevLex,
    /// Block order: the variables in `mask` form the first (larger) block,
    /// each block compared by graded reverse lexicographic order.
    Elim { mask: u64 },
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::GrevLex => grevlex(a, b, u64::MAX),
            TermOrder::Elim { mask } => grevlex(a, b, mask).then_with(|| grevlex(a, b, !mask)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::GrevLex => "grevlex",
            TermOrder::Elim { .. } => "elim",
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial, mask: u64) -> Ordering {
    let (da, db) = if mask == u64::MAX { (a.deg, b.deg) } else { (a.masked_degree(mask), b.masked_degree(mask)) };
    da.cmp(&db).then_with(|| {
        for i in (0..a.exps.len()).rev() {
            if mask >> i & 1 == 0 {
                continue;
            }
            if a.exps[i] != b.exps[i] {
                return b.exps[i].cmp(&a.exps[i]);
            }
        }
        Ordering::Equal
    })
}
