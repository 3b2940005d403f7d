//! Packed exponent vectors.
//!
//! A monomial in at most eight variables is a `u64` with one byte per
//! exponent, variable 0 in the most significant byte. Integer order on the
//! packed word is then lexicographic order with `x_0 > x_1 > …`, and
//! multiplying monomials is adding words. The same packing doubles as a
//! derivative multi-index.

use std::fmt;

pub const MAX_VARS: usize = 8;
const BYTE: u32 = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    fn shift(i: usize) -> u32 {
        debug_assert!(i < MAX_VARS);
        (MAX_VARS - 1 - i) as u32 * BYTE
    }

    pub fn var(i: usize) -> Mono {
        Mono(1u64 << Self::shift(i))
    }

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut w = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent overflow");
            w |= (e as u64) << Self::shift(i);
        }
        Mono(w)
    }

    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    /// Product of monomials. Exponent bytes must not overflow.
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!((0..MAX_VARS).all(|i| self.exp(i) + other.exp(i) < 256));
        Mono(self.0 + other.0)
    }

    pub fn divides(self, other: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(self, other: Mono) -> Option<Mono> {
        self.divides(other).then(|| Mono(other.0 - self.0))
    }

    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        let s = Self::shift(i);
        Mono((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }

    /// Lower exponent `i` by one, if positive.
    pub fn dec(self, i: usize) -> Option<Mono> {
        (self.exp(i) > 0).then(|| Mono(self.0 - (1u64 << Self::shift(i))))
    }

    pub fn inc(self, i: usize) -> Mono {
        Mono(self.0 + (1u64 << Self::shift(i)))
    }

    /// All multi-indices `e <= self` componentwise.
    pub fn submonos(self, nvars: usize) -> Vec<Mono> {
        let mut out = vec![Mono::ONE];
        for i in 0..nvars {
            let top = self.exp(i);
            let mut next = Vec::with_capacity(out.len() * (top as usize + 1));
            for m in &out {
                for e in 0..=top {
                    next.push(m.with_exp(i, e));
                }
            }
            out = next;
        }
        out
    }

    /// Product of binomials `C(self_i, sub_i)`.
    pub fn binomial(self, sub: Mono) -> u64 {
        let mut acc = 1u64;
        for i in 0..MAX_VARS {
            acc *= binom(self.exp(i), sub.exp(i));
        }
        acc
    }

    /// `Π self_i!`.
    pub fn factorial(self) -> u64 {
        (0..MAX_VARS)
            .map(|i| (1..=self.exp(i) as u64).product::<u64>())
            .product()
    }

    /// All multi-indices in `nvars` variables of total degree at most `deg`,
    /// ordered by degree and then descending lex.
    pub fn all_up_to(nvars: usize, deg: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        for d in 0..=deg {
            let mut level = Vec::new();
            collect_degree(nvars, 0, d, Mono::ONE, &mut level);
            level.sort_unstable_by(|a, b| b.cmp(a));
            out.extend(level);
        }
        out
    }
}

fn collect_degree(nvars: usize, i: usize, left: u32, acc: Mono, out: &mut Vec<Mono>) {
    if i + 1 == nvars || nvars == 0 {
        if nvars > 0 {
            out.push(acc.with_exp(i, left));
        } else if left == 0 {
            out.push(acc);
        }
        return;
    }
    for e in 0..=left {
        collect_degree(nvars, i + 1, left - e, acc.with_exp(i, e), out);
    }
}

pub fn binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = 1u64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<u32> = (0..MAX_VARS).map(|i| self.exp(i)).collect();
        let last = e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &e[..last])
    }
}
