//! Solutions of the negative Pell equation `y^2 s^2 - (y^2+1) t^2 = -1`.
//!
//! With `u = y*s` and `D = y^2 + 1` this is `u^2 - D t^2 = -1`, whose
//! fundamental solution is `(u, t) = (y, 1)`; composing with the fundamental
//! `+1` solution `(2y^2+1, 2y)` walks through all solutions in increasing
//! order, and `u` stays divisible by `y` throughout, so `s = u/y` is always
//! integral.

use super::{ConstructionError, ConstructionResult};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// One solution `(s, t)` of `y^2 s^2 - (y^2+1) t^2 = -1`, with its 1-based
/// index in the increasing enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub y: BigInt,
    pub s: BigInt,
    pub t: BigInt,
    pub index: u32,
}

impl PellSolution {
    /// Exact equation check.
    pub fn verify(&self) -> bool {
        let y2 = &self.y * &self.y;
        &y2 * &self.s * &self.s - (&y2 + 1u32) * &self.t * &self.t == BigInt::from(-1)
    }
}

/// Unbounded iterator over the solutions for a fixed `y >= 1`, in increasing
/// order starting with `(s, t) = (1, 1)`.
pub struct PellSolutions {
    y: BigInt,
    u: BigInt,
    t: BigInt,
    index: u32,
}

/// Iterate the solutions of `y^2 s^2 - (y^2+1) t^2 = -1`; requires `y >= 1`.
pub fn pell_solutions(y: &BigInt) -> ConstructionResult<PellSolutions> {
    if y < &BigInt::one() {
        return Err(ConstructionError::Domain(format!("pell_solutions requires y >= 1, got {y}")));
    }
    Ok(PellSolutions { y: y.clone(), u: y.clone(), t: BigInt::one(), index: 0 })
}

impl Iterator for PellSolutions {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        self.index += 1;
        let (u, t) = (self.u.clone(), self.t.clone());
        let d = &self.y * &self.y + 1u32;
        // (u, t) <- (u(2y^2+1) + 2ty(y^2+1), 2uy + t(2y^2+1))
        let base = BigInt::from(2) * &self.y * &self.y + 1u32;
        let next_u = &u * &base + BigInt::from(2) * &t * &self.y * &d;
        let next_t = BigInt::from(2) * &u * &self.y + &t * &base;
        self.u = next_u;
        self.t = next_t;
        let (s, rem) = u.div_rem(&self.y);
        debug_assert!(rem.is_zero(), "u must remain divisible by y");
        let sol = PellSolution { y: self.y.clone(), s, t, index: self.index };
        debug_assert!(sol.verify());
        Some(sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_solutions_for_small_y() {
        let sols: Vec<PellSolution> = pell_solutions(&bi(1)).unwrap().take(3).collect();
        let st: Vec<(i64, i64)> = sols
            .iter()
            .map(|p| (p.s.to_string().parse().unwrap(), p.t.to_string().parse().unwrap()))
            .collect();
        assert_eq!(st, vec![(1, 1), (7, 5), (41, 29)]);
        assert!(sols.iter().all(PellSolution::verify));

        let sols: Vec<PellSolution> = pell_solutions(&bi(2)).unwrap().take(2).collect();
        let st: Vec<(i64, i64)> = sols
            .iter()
            .map(|p| (p.s.to_string().parse().unwrap(), p.t.to_string().parse().unwrap()))
            .collect();
        assert_eq!(st, vec![(1, 1), (19, 17)]);
    }

    #[test]
    fn index_one_is_always_the_unit_solution() {
        for y in [1i64, 2, 3, 66, 6798, 1_000_003] {
            let first = pell_solutions(&bi(y)).unwrap().next().unwrap();
            assert_eq!(first.s, BigInt::one());
            assert_eq!(first.t, BigInt::one());
            assert_eq!(first.index, 1);
        }
    }

    #[test]
    fn ten_exact_solutions_for_the_required_ys() {
        for y in [1i64, 2, 3, 66, 6798] {
            for sol in pell_solutions(&bi(y)).unwrap().take(10) {
                assert!(sol.verify(), "y = {y}, index = {}", sol.index);
            }
        }
        assert!(pell_solutions(&bi(0)).is_err());
    }

    #[test]
    fn solutions_strictly_increase() {
        let sols: Vec<PellSolution> = pell_solutions(&bi(3)).unwrap().take(6).collect();
        for w in sols.windows(2) {
            assert!(w[1].s > w[0].s && w[1].t > w[0].t);
        }
    }
}
