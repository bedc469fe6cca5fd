/// Fixed-width bitset over vertex ids `0..n`. The width is fixed when the
/// set is created (rounded up to a whole number of 64-bit words) and all
/// set operations assume both operands share it.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Box<[u64]>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64).max(1)].into_boxed_slice(),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v as u32);
        }
        s
    }

    pub fn insert(&mut self, v: u32) {
        self.words[v as usize / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        self.words[v as usize / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: u32) -> bool {
        self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Removes every member of `other` from `self`.
    pub fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i as u32 * 64;
            std::iter::successors(
                if w == 0 { None } else { Some(w) },
                |&rest| {
                    let rest = rest & (rest - 1);
                    if rest == 0 {
                        None
                    } else {
                        Some(rest)
                    }
                },
            )
            .map(move |rest| base + rest.trailing_zeros())
        })
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
