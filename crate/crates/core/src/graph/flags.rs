/// Per-edge active bits, indexed by in-edge CSR position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFlags {
    words: Vec<u64>,
    len: usize,
}

impl EdgeFlags {
    pub fn all_active(len: usize) -> Self {
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (len % 64)) - 1;
            }
        }
        Self { words, len }
    }

    pub fn all_inactive(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut flags = Self::all_inactive(len);
        for e in 0..len {
            if f(e) {
                flags.set(e, true);
            }
        }
        flags
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, e: usize) -> bool {
        debug_assert!(e < self.len);
        self.words[e >> 6] >> (e & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, e: usize, active: bool) {
        debug_assert!(e < self.len);
        let mask = 1u64 << (e & 63);
        if active {
            self.words[e >> 6] |= mask;
        } else {
            self.words[e >> 6] &= !mask;
        }
    }

    pub fn count_active(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of active edges with ids in `range`.
    pub fn count_active_in(&self, range: std::ops::Range<usize>) -> usize {
        range.filter(|&e| self.get(e)).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |e| self.get(e))
    }
}
