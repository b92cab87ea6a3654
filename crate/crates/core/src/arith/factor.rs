//! Budgeted integer factorization (trial division, perfect-power reduction,
//! Pollard rho with Brent cycling) plus exact radicals and certified radical
//! upper bounds.

use super::primality::is_probable_prime_uint;
use super::{ArithError, ArithResult};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

/// Resource limits for [`FactoredInteger::factorize`]; exhausting a budget is
/// not an error, it just leaves an unfactored cofactor behind.
#[derive(Debug, Clone)]
pub struct FactorBudget {
    /// Trial division by primes up to this bound.
    pub trial_division_limit: u64,
    /// Total Pollard-rho iterations across all cofactors.
    pub rho_iteration_limit: u64,
    /// Overall wall-clock allowance.
    pub wall_clock_limit: Duration,
}

impl FactorBudget {
    pub fn new(trial: u64, rho: u64, wall: Duration) -> ArithResult<Self> {
        if trial == 0 || rho == 0 || wall.is_zero() {
            return Err(ArithError::Domain("factor budget limits must be positive".into()));
        }
        Ok(FactorBudget {
            trial_division_limit: trial,
            rho_iteration_limit: rho,
            wall_clock_limit: wall,
        })
    }

    /// Small budget for inputs expected to be easy (constants of the tuple
    /// families); trial division only, in effect.
    pub fn cheap() -> Self {
        FactorBudget {
            trial_division_limit: 100_000,
            rho_iteration_limit: 1,
            wall_clock_limit: Duration::from_secs(5),
        }
    }
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_division_limit: 1_000_000,
            rho_iteration_limit: 500_000,
            wall_clock_limit: Duration::from_secs(30),
        }
    }
}

/// Completion status of the unfactored cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CofactorState {
    /// Cofactor is 1; the factorization is complete.
    Unit,
    /// Cofactor is a proven prime (below the deterministic threshold).
    Prime,
    /// Cofactor is a probable prime (above the deterministic threshold).
    ProbablePrime,
    /// Cofactor is known composite but could not be split within budget.
    CompositeUnfactored,
    /// Cofactor has not been classified at all.
    Unknown,
}

impl CofactorState {
    /// True when the factorization is complete enough for an exact radical.
    pub fn is_complete(self) -> bool {
        matches!(self, CofactorState::Unit | CofactorState::Prime | CofactorState::ProbablePrime)
    }
}

/// A nonzero integer with a partial prime factorization and an unfactored
/// cofactor: `|value| = cofactor * prod(p^e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: BigInt,
    factors: BTreeMap<BigUint, u32>,
    cofactor: BigUint,
    state: CofactorState,
}

impl FactoredInteger {
    /// Wrap a value with no factorization work at all.
    pub fn unfactored(value: BigInt) -> ArithResult<Self> {
        if value.is_zero() {
            return Err(ArithError::Domain("cannot factor zero".into()));
        }
        let mag = value.magnitude().clone();
        if mag.is_one() {
            return Ok(FactoredInteger {
                value,
                factors: BTreeMap::new(),
                cofactor: BigUint::one(),
                state: CofactorState::Unit,
            });
        }
        Ok(FactoredInteger {
            value,
            factors: BTreeMap::new(),
            cofactor: mag,
            state: CofactorState::Unknown,
        })
    }

    /// Wrap a value already known to be a (probable) prime; `|value|` becomes
    /// the cofactor with a prime state.
    pub fn from_probable_prime(value: BigInt) -> ArithResult<Self> {
        let mag = value.magnitude().clone();
        if !is_probable_prime_uint(&mag) {
            return Err(ArithError::Domain(format!("{value} is not prime")));
        }
        let state = if &mag < super::primality::deterministic_limit() {
            CofactorState::Prime
        } else {
            CofactorState::ProbablePrime
        };
        Ok(FactoredInteger { value, factors: BTreeMap::new(), cofactor: mag, state })
    }

    /// Factor `n` within the given budget. Perfect powers in the cofactor are
    /// reduced; running out of budget yields a composite-unfactored or
    /// unknown cofactor rather than an error.
    pub fn factorize(n: &BigInt, budget: &FactorBudget) -> ArithResult<Self> {
        if n.is_zero() {
            return Err(ArithError::Domain("cannot factor zero".into()));
        }
        let deadline = Instant::now() + budget.wall_clock_limit;
        let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
        let mut work = n.magnitude().clone();

        if !work.is_one() {
            trial_divide(&mut work, &mut factors, budget.trial_division_limit, deadline);
        }

        // Worklist of (value, multiplicity) pieces still to decompose.
        let mut pending: Vec<(BigUint, u32)> = Vec::new();
        let mut stuck: Vec<(BigUint, u32)> = Vec::new();
        let mut unknown = false;
        let mut rho_budget = budget.rho_iteration_limit;
        if !work.is_one() {
            pending.push((work, 1));
        }

        while let Some((m, mult)) = pending.pop() {
            if m.is_one() {
                continue;
            }
            if Instant::now() >= deadline {
                unknown = true;
                stuck.push((m, mult));
                continue;
            }
            if is_probable_prime_uint(&m) {
                absorb_prime(&mut factors, &mut pending, &mut stuck, m, mult);
                continue;
            }
            if let Some((root, exp)) = perfect_power(&m) {
                pending.push((root, mult * exp));
                continue;
            }
            match rho_split(&m, &mut rho_budget, deadline) {
                Some(d) => {
                    let q = &m / &d;
                    pending.push((d, mult));
                    pending.push((q, mult));
                }
                None => stuck.push((m, mult)),
            }
        }

        let mut cofactor = BigUint::one();
        for (m, mult) in &stuck {
            cofactor *= m.pow(*mult);
        }
        let state = if cofactor.is_one() {
            CofactorState::Unit
        } else if unknown {
            CofactorState::Unknown
        } else {
            CofactorState::CompositeUnfactored
        };
        Ok(FactoredInteger { value: n.clone(), factors, cofactor, state })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn sign(&self) -> i8 {
        if self.value.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn known_factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    pub fn cofactor(&self) -> &BigUint {
        &self.cofactor
    }

    pub fn state(&self) -> CofactorState {
        self.state
    }

    pub fn is_complete(&self) -> bool {
        self.state.is_complete()
    }

    /// Product of the distinct primes of `|value|`; `radical(±1) = 1`.
    /// Requires a complete factorization.
    pub fn radical(&self) -> ArithResult<BigUint> {
        if !self.state.is_complete() {
            return Err(ArithError::Inexact(self.state));
        }
        let mut rad = BigUint::one();
        for p in self.factors.keys() {
            rad *= p;
        }
        if !self.cofactor.is_one() {
            rad *= &self.cofactor;
        }
        Ok(rad)
    }

    /// The distinct primes of a complete factorization.
    pub fn distinct_primes(&self) -> ArithResult<Vec<BigUint>> {
        if !self.state.is_complete() {
            return Err(ArithError::Inexact(self.state));
        }
        let mut ps: Vec<BigUint> = self.factors.keys().cloned().collect();
        if !self.cofactor.is_one() && !ps.contains(&self.cofactor) {
            ps.push(self.cofactor.clone());
        }
        Ok(ps)
    }

    /// Check `|value| = cofactor * prod(p^e)`, primality of the keys and
    /// coprimality of the cofactor with the known primes.
    pub fn check_invariants(&self) -> bool {
        let mut prod = self.cofactor.clone();
        for (p, e) in &self.factors {
            if !is_probable_prime_uint(p) {
                return false;
            }
            if (&self.cofactor % p).is_zero() {
                return false;
            }
            prod *= p.pow(*e);
        }
        &prod == self.value.magnitude()
    }
}

fn absorb_prime(
    factors: &mut BTreeMap<BigUint, u32>,
    pending: &mut Vec<(BigUint, u32)>,
    stuck: &mut Vec<(BigUint, u32)>,
    p: BigUint,
    mult: u32,
) {
    let mut count = mult;
    // Strip p from everything still in flight so the cofactor stays coprime
    // to the known primes.
    for (m, m_mult) in pending.iter_mut().chain(stuck.iter_mut()) {
        while (&*m % &p).is_zero() {
            *m /= &p;
            count += *m_mult;
        }
    }
    pending.retain(|(m, _)| !m.is_one());
    stuck.retain(|(m, _)| !m.is_one());
    *factors.entry(p).or_insert(0) += count;
}

fn trial_divide(
    work: &mut BigUint,
    factors: &mut BTreeMap<BigUint, u32>,
    limit: u64,
    deadline: Instant,
) {
    let mut try_p = |p: u64, work: &mut BigUint| {
        let pb = BigUint::from(p);
        let mut e = 0u32;
        while (&*work % &pb).is_zero() {
            *work /= &pb;
            e += 1;
        }
        if e > 0 {
            *factors.entry(pb).or_insert(0) += e;
        }
    };
    try_p(2, work);
    try_p(3, work);
    try_p(5, work);
    let mut p = 7u64;
    let mut step = [4u64, 2].into_iter().cycle(); // 7, 11, 13, 17, 19, 23, ...
    let mut tick = 0u32;
    while p <= limit {
        if BigUint::from(p) * BigUint::from(p) > *work {
            break;
        }
        try_p(p, work);
        p += step.next().unwrap();
        tick += 1;
        if tick % 4096 == 0 && Instant::now() >= deadline {
            return;
        }
    }
    // Trial division ran past sqrt(work): the remainder is prime or 1, and
    // the caller's primality check will classify it.
}

const RESIDUE_FILTER_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Is `r` a p-th power residue modulo the small prime `q`?
fn is_pth_power_residue(r: u64, p: u64, q: u64) -> bool {
    if r == 0 {
        return true;
    }
    // x^p = x^(p mod (q-1)) mod q for x in 1..q, by Fermat.
    (1..q).any(|x| pow_mod_u64(x, p % (q - 1), q) == r)
}

/// Detect `n = base^exp` with `exp > 1` maximal; None for non-powers.
pub(crate) fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n <= &BigUint::from(3u32) {
        return None;
    }
    let mut base = n.clone();
    let mut exp = 1u32;
    'reduce: loop {
        let bits = base.bits();
        if bits < 2 {
            break;
        }
        let residues: Vec<u64> = RESIDUE_FILTER_PRIMES
            .iter()
            .map(|&q| (&base % BigUint::from(q)).to_u64().unwrap())
            .collect();
        let v2 = base.trailing_zeros().unwrap_or(0);
        for p in super::primes_up_to(bits) {
            if v2 % p != 0 {
                continue;
            }
            let passes = RESIDUE_FILTER_PRIMES
                .iter()
                .zip(&residues)
                .all(|(&q, &r)| is_pth_power_residue(r, p, q));
            if !passes {
                continue;
            }
            if let Some(root) = exact_prime_root(&base, p as u32) {
                base = root;
                exp *= p as u32;
                continue 'reduce;
            }
        }
        break;
    }
    (exp > 1).then_some((base, exp))
}

/// The exact p-th root of `n` if `n` is a perfect p-th power.
fn exact_prime_root(n: &BigUint, p: u32) -> Option<BigUint> {
    let bits = n.bits();
    let root_bits = bits / p as u64;
    if root_bits <= 40 {
        // Root fits well inside u64: guess via the float logarithm (error
        // stays below 1 at this size), verify exactly.
        let guess = (super::log::ln_biguint_approx(n) / p as f64).exp().round() as u64;
        for cand in [guess.saturating_sub(1), guess, guess.saturating_add(1)] {
            if cand >= 2 {
                let c = BigUint::from(cand);
                if c.pow(p) == *n {
                    return Some(c);
                }
            }
        }
        None
    } else {
        let r = n.nth_root(p);
        (r.pow(p) == *n).then_some(r)
    }
}

/// Pollard rho with Brent cycle detection and batched gcds. Returns a
/// nontrivial divisor of composite odd `n`, or None if the iteration budget
/// or the deadline runs out.
fn rho_split(n: &BigUint, budget: &mut u64, deadline: Instant) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u64..=20 {
        if *budget == 0 || Instant::now() >= deadline {
            return None;
        }
        let cb = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cb) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        'brent: while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
                if *budget < m {
                    *budget = 0;
                    break 'brent;
                }
                *budget -= m;
                if Instant::now() >= deadline {
                    break 'brent;
                }
            }
            r *= 2;
        }
        if g == *n {
            // Batched gcd overshot; backtrack one step at a time.
            g = BigUint::one();
            while g.is_one() {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if *budget == 0 {
                    break;
                }
                *budget -= 1;
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

/// Certified upper bound on `rad(prod parts)`: the product of the distinct
/// known primes, the distinct prime cofactors and the distinct
/// perfect-power-reduced unfactored cofactors. Exact when every part is
/// fully factored.
pub fn radical_upper_bound(parts: &[FactoredInteger]) -> ArithResult<BigUint> {
    if parts.is_empty() {
        return Err(ArithError::Domain("radical_upper_bound requires at least one part".into()));
    }
    let mut contributions: BTreeSet<BigUint> = BTreeSet::new();
    for part in parts {
        for p in part.factors.keys() {
            contributions.insert(p.clone());
        }
        match part.state {
            CofactorState::Unit => {}
            CofactorState::Prime | CofactorState::ProbablePrime => {
                contributions.insert(part.cofactor.clone());
            }
            CofactorState::CompositeUnfactored | CofactorState::Unknown => {
                let reduced = match perfect_power(&part.cofactor) {
                    Some((base, _)) => base,
                    None => part.cofactor.clone(),
                };
                contributions.insert(reduced);
            }
        }
    }
    let mut bound = BigUint::one();
    for v in contributions {
        bound *= v;
    }
    Ok(bound)
}
