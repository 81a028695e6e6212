//! Fixed-length bitset over transaction ids.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bitset { words: vec![u64::MAX; len.div_ceil(64)], len };
        b.clear_tail();
        b
    }

    fn clear_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Population count of the intersection of `self` with every set in
    /// `others`.
    pub fn and_count(&self, others: &[&Bitset]) -> usize {
        self.words
            .iter()
            .enumerate()
            .map(|(wi, &w)| others.iter().fold(w, |acc, o| acc & o.words[wi]).count_ones() as usize)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut b = Bitset::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.count_ones(), 4);
        assert_eq!(b.ones().collect::<Vec<_>>(), [0, 63, 64, 129]);
        b.remove(64);
        assert!(!b.contains(64) && b.contains(129));
        assert!(!b.contains(500));
        assert_eq!(Bitset::full(130).count_ones(), 130);
        assert_eq!(Bitset::full(128).count_ones(), 128);
    }

    #[test]
    fn intersection_count() {
        let mut a = Bitset::new(100);
        let mut b = Bitset::new(100);
        let mut c = Bitset::new(100);
        for i in 0..100 {
            if i % 2 == 0 {
                a.insert(i);
            }
            if i % 3 == 0 {
                b.insert(i);
            }
            if i % 5 == 0 {
                c.insert(i);
            }
        }
        assert_eq!(a.and_count(&[&b]), 17);
        assert_eq!(a.and_count(&[&b, &c]), 4);
        assert_eq!(a.and_count(&[]), 50);
    }
}
