use std::fmt;

/// Integer partition stored by multiplicities: `mult[i - 1]` is the number of
/// parts equal to `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    mult: Vec<usize>,
}

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_twice(t: i64) -> HalfInt {
        HalfInt(t)
    }

    pub fn twice(self) -> i64 {
        self.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Partition {
    pub fn from_multiplicities(mut mult: Vec<usize>) -> Partition {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Partition { mult }
    }

    /// Builds a partition from its parts, in any order. Parts must be positive.
    pub fn from_parts(parts: &[usize]) -> Partition {
        let mut mult = vec![0; parts.iter().copied().max().unwrap_or(0)];
        for &p in parts {
            assert!(p > 0, "partition parts must be positive");
            mult[p - 1] += 1;
        }
        Partition::from_multiplicities(mult)
    }

    /// Multiplicity `a_i` of the part `i`.
    pub fn a(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.mult.get(i - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// `(i, a_i)` for every part size with `a_i > 0`.
    pub fn parts_with_mult(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i + 1, a))
    }

    pub fn size(&self) -> usize {
        self.parts_with_mult().map(|(i, a)| i * a).sum()
    }

    pub fn length(&self) -> usize {
        self.mult.iter().sum()
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, a) in self.parts_with_mult().collect::<Vec<_>>().into_iter().rev() {
            out.extend(std::iter::repeat(i).take(a));
        }
        out
    }

    /// `v(lambda) = (d/2) * sum a_i (i - 1)`.
    pub fn v_weight(&self, d: u32) -> HalfInt {
        let s: usize = self.parts_with_mult().map(|(i, a)| a * (i - 1)).sum();
        HalfInt(d as i64 * s as i64)
    }

    /// `w = (d/2) * sum a_i (i + 1)`.
    pub fn w_weight(&self, d: u32) -> HalfInt {
        let s: usize = self.parts_with_mult().map(|(i, a)| a * (i + 1)).sum();
        HalfInt(d as i64 * s as i64)
    }

    /// All partitions of `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen(n, n, &mut cur, &mut out);
        out
    }
}

fn gen(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition::from_parts(cur));
        return;
    }
    for p in (1..=max.min(rem)).rev() {
        cur.push(p);
        gen(rem - p, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
