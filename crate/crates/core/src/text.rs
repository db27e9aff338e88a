//! The indexed text and 1-based inclusive spans over it.
//!
//! Every public position in this crate is 1-based and inclusive: `Span { l, r }`
//! denotes `T[l..=r]`. The only place that converts to 0-based slice indices
//! is [`Text::slice`] and [`Text::at`].

use crate::error::{Error, Result};
use std::fmt;

/// A fragment `T[l, r]` of the text, 1-based and inclusive.
///
/// Also used as a grid point `(l, r)`: columns share a start, rows share an end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub l: usize,
    pub r: usize,
}

pub type GridPoint = Span;

impl Span {
    pub fn new(l: usize, r: usize) -> Self {
        Span { l, r }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.r + 1 - self.l
    }

    pub fn is_empty(&self) -> bool {
        self.r < self.l
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.l, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        // positions are stored as u32 throughout the index
        if bytes.len() >= u32::MAX as usize / 2 {
            return Err(Error::OutOfRange { l: 1, r: bytes.len(), n: u32::MAX as usize / 2 });
        }
        Ok(Text { bytes })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Symbol at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> u8 {
        self.bytes[i - 1]
    }

    /// `T[l, r]` as a byte slice.
    #[inline]
    pub fn slice(&self, l: usize, r: usize) -> &[u8] {
        &self.bytes[l - 1..r]
    }

    pub fn check(&self, l: usize, r: usize) -> Result<Span> {
        if l == 0 || l > r || r > self.len() {
            return Err(Error::OutOfRange { l, r, n: self.len() });
        }
        Ok(Span { l, r })
    }
}
