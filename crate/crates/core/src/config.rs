/// Enumeration budgets. Exceeding one is an explicit error, never silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest ring whose elements may be exhaustively enumerated.
    pub max_ring: usize,
    /// Largest module whose elements may be exhaustively enumerated.
    pub max_module: usize,
    /// Largest endomorphism ring that may be materialized.
    pub max_end: usize,
    /// Largest affine solution set a linear solve may enumerate.
    pub max_solutions: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_ring: 4096,
            max_module: 256,
            max_end: 4096,
            max_solutions: 4096,
        }
    }
}

impl Guards {
    pub fn scaled(factor: usize) -> Self {
        Guards::default().scale(factor)
    }

    /// Multiplies every budget, saturating on overflow.
    pub fn scale(self, factor: usize) -> Self {
        Guards {
            max_ring: self.max_ring.saturating_mul(factor),
            max_module: self.max_module.saturating_mul(factor),
            max_end: self.max_end.saturating_mul(factor),
            max_solutions: self.max_solutions.saturating_mul(factor),
        }
    }
}
