/// Relative thresholds applied by the float backend. The rational backend
/// ignores all of them and decides zero-ness exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Element equality: max-norm of the difference relative to the operands.
    pub equality: f64,
    /// `|det| <= singular * max_norm(U)^N` declares `U` singular.
    pub singular: f64,
    /// Allowed non-scalar residue in a product of conjugates, relative to the
    /// product of the factors' l1 norms (sum of coefficient magnitudes).
    pub grade_leak: f64,
    /// Witness acceptance: `|U V| <= witness * |U| * |V|`.
    pub witness: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            equality: 1e-9,
            singular: 1e-9,
            grade_leak: 1e-9,
            witness: 1e-8,
        }
    }
}
