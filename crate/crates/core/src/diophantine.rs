//! Linear Diophantine equations `a·x + b·y = c` with coprime `a`, `b`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The solution with `0 ≤ x0 ≤ b−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiophantineSolution {
    pub x0: u64,
    pub y0: i64,
}

impl DiophantineSolution {
    /// 1-based position of `1 + c` in the sequence `1, 1+a, 1+2a, …` taken
    /// mod `b` (meaningful for `0 ≤ c ≤ b−1`).
    pub fn position(&self) -> u64 {
        1 + self.x0
    }
}

pub fn solve_position(a: u64, b: u64, c: u64) -> Result<DiophantineSolution> {
    if b == 0 {
        return Err(Error::NoUniqueSolution { a, b, gcd: a });
    }
    let (a_i, b_i, c_i) = (a as i128, b as i128, c as i128);
    let egcd = a_i.extended_gcd(&b_i);
    if egcd.gcd != 1 {
        return Err(Error::NoUniqueSolution { a, b, gcd: egcd.gcd as u64 });
    }
    let x0 = (egcd.x * c_i).rem_euclid(b_i);
    let y0 = (c_i - a_i * x0) / b_i;
    debug_assert_eq!(a_i * x0 + b_i * y0, c_i);
    Ok(DiophantineSolution { x0: x0 as u64, y0: y0 as i64 })
}
