//! Composite index arithmetic.
//!
//! All pair indices in this crate are 0-based and outer-major: the pair
//! `(outer, inner)` with `inner < inner_len` maps to `outer * inner_len + inner`.
//! This covers the block layout `(i, α) ↦ i·m + α`, the amplified layout
//! `(α, i) ↦ α·n + i`, and the column order `(p, q) ↦ p·n + q` of the
//! compression matrix.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexMap {
    inner_len: usize,
}

impl IndexMap {
    pub const fn new(inner_len: usize) -> Self {
        Self { inner_len }
    }

    pub const fn inner_len(&self) -> usize {
        self.inner_len
    }

    #[inline]
    pub const fn join(&self, outer: usize, inner: usize) -> usize {
        outer * self.inner_len + inner
    }

    #[inline]
    pub const fn split(&self, index: usize) -> (usize, usize) {
        (index / self.inner_len, index % self.inner_len)
    }
}
