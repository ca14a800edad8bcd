//! Indexing of cochain coordinates by tuples of group elements.

use thiserror::Error;

/// Mixed-radix encoding of tuples of group elements, first entry most significant.
///
/// Normalized codecs only admit non-identity entries (element k ↦ digit k−1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleCodec {
    order: usize,
    normalized: bool,
}

impl TupleCodec {
    pub fn new(order: usize, normalized: bool) -> Self {
        TupleCodec { order, normalized }
    }

    pub fn normalized(order: usize) -> Self {
        Self::new(order, true)
    }

    pub fn base(&self) -> usize {
        if self.normalized {
            self.order.saturating_sub(1)
        } else {
            self.order
        }
    }

    pub fn count(&self, len: usize) -> usize {
        self.base().pow(len as u32)
    }

    /// `None` when a normalized codec meets the identity.
    #[inline]
    pub fn encode(&self, tuple: &[usize]) -> Option<usize> {
        let b = self.base();
        let mut idx = 0;
        for &x in tuple {
            let digit = if self.normalized {
                if x == 0 {
                    return None;
                }
                x - 1
            } else {
                x
            };
            idx = idx * b + digit;
        }
        Some(idx)
    }

    pub fn decode(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let b = self.base();
        let off = usize::from(self.normalized);
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = idx % b + off;
            idx /= b;
        }
        out
    }

    /// All tuples of the given length in index order.
    pub fn tuples(&self, len: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count(len)).map(move |i| self.decode(i, len))
    }
}

/// Pulls an n-cochain (rank-1 coefficients) back along `phi`, reading
/// `f` in the `src` codec and writing in the `dst` codec.
pub fn pull_back_cochain(f: &[u64], src: TupleCodec, phi: &[usize], dst: TupleCodec, n: usize) -> Vec<u64> {
    dst.tuples(n)
        .map(|t| {
            let mapped: Vec<usize> = t.iter().map(|&x| phi[x]).collect();
            src.encode(&mapped).map_or(0, |i| f[i])
        })
        .collect()
}

/// Upper bound on dense matrix sizes, overridable by callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_entries: u64,
}

impl Default for SizeGuard {
    /// Large enough for degree-4 bar complexes of groups of order 12.
    fn default() -> Self {
        SizeGuard { max_entries: 20_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("a {rows}x{cols} matrix exceeds the size guard of {limit} entries (use force to override)")]
pub struct SizeGuardExceeded {
    pub rows: u64,
    pub cols: u64,
    pub limit: u64,
}

impl SizeGuard {
    pub fn unlimited() -> Self {
        SizeGuard { max_entries: u64::MAX }
    }

    pub fn check(&self, rows: usize, cols: usize) -> Result<(), SizeGuardExceeded> {
        let (r, c) = (rows as u64, cols as u64);
        if r.saturating_mul(c) > self.max_entries {
            Err(SizeGuardExceeded { rows: r, cols: c, limit: self.max_entries })
        } else {
            Ok(())
        }
    }
}
