//! Dense fixed-length bit map over `[0, len)`.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// `self |= other << shift`, discarding bits at or beyond `self.len`.
    pub fn or_shifted(&mut self, other: &BitSet, shift: usize) {
        if shift >= self.len {
            return;
        }
        let word_shift = shift >> 6;
        let bit_shift = (shift & 63) as u32;
        let n = self.words.len();
        for i in word_shift..n {
            let src = i - word_shift;
            let lo = other.words.get(src).copied().unwrap_or(0);
            let mut w = lo << bit_shift;
            if bit_shift != 0 && src > 0 {
                w |= other.words.get(src - 1).copied().unwrap_or(0) >> (64 - bit_shift);
            }
            self.words[i] |= w;
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_or_matches_naive() {
        for len in [1usize, 63, 64, 65, 200] {
            let mut src = BitSet::new(len);
            for i in (0..len).filter(|i| i % 7 == 3 || i % 11 == 0) {
                src.set(i);
            }
            for shift in [0usize, 1, 5, 63, 64, 65, 130, 199, 250] {
                let mut dst = BitSet::new(len);
                dst.set(len - 1);
                dst.or_shifted(&src, shift);
                for i in 0..len {
                    let want = i == len - 1 || (i >= shift && src.get(i - shift));
                    assert_eq!(dst.get(i), want, "len={len} shift={shift} i={i}");
                }
                assert_eq!(dst.iter_ones().count(), dst.count_ones());
            }
        }
    }
}
