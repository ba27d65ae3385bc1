//! Size limits shared by the expensive operations.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest total dimension accepted when building an algebra.
    pub max_dim: usize,
    /// Largest slot size for consequence spans.
    pub max_degree: usize,
    /// Largest number of basis products an exhaustive enumeration may perform.
    pub max_enum: u64,
    /// Largest order of the trace Cayley-Hamilton polynomial.
    pub max_ch: usize,
    /// Largest number of Grassmann generators.
    pub max_grassmann: usize,
    /// Largest word space accepted by the truncated relatively free construction.
    pub max_words: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_dim: 64,
            max_degree: 6,
            max_enum: 100_000_000,
            max_ch: 4,
            max_grassmann: 24,
            max_words: 256,
        }
    }
}
