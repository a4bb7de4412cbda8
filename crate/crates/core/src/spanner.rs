//! Greedy {-1,0,1}-spanning sets for a large spectrum.
//!
//! [`greedy_span`] walks Γ in decreasing-magnitude order, keeping the set S
//! of residues reachable as `Σ εᵢ λᵢ mod N` (εᵢ ∈ {−1, 0, 1}) over the
//! generators chosen so far. An element already in S is skipped; otherwise
//! it becomes a generator and S grows to `S ∪ (S + γ) ∪ (S − γ)`.
//!
//! Every reachable residue records the residue it was reached from together
//! with the generator and sign used, so a coefficient vector can be read back
//! for any element of Γ. [`verify_span`] rechecks a result from its
//! generators alone with a separate bitset closure, and [`minimal_lambda`]
//! finds a minimum-cardinality spanning subset by exhaustive search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Default cap on the number of subsets [`minimal_lambda`] may examine.
/// Covers every subset of a 20-element Γ.
pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    from: usize,
    generator: usize,
    sign: i8,
}

/// Residues of Z_N reachable as {-1,0,1}-combinations of the current
/// generators, each with one witness path back to 0.
#[derive(Debug, Clone)]
pub struct ReachSet {
    n: usize,
    present: Vec<bool>,
    order: Vec<usize>,
    steps: Vec<Option<Step>>,
    generators: usize,
}

impl ReachSet {
    /// The reach set of the empty generator list: `{0}`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut present = vec![false; n];
        present[0] = true;
        Ok(Self {
            n,
            present,
            order: vec![0],
            steps: vec![None; n],
            generators: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// Always false: 0 is reachable.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_full(&self) -> bool {
        self.order.len() == self.n
    }

    pub fn contains(&self, residue: usize) -> bool {
        self.present[residue % self.n]
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&r| self.present[r]).collect()
    }

    /// Adds a generator: `S ← S ∪ (S + g) ∪ (S − g)` over the members present
    /// before the call.
    pub fn add_generator(&mut self, g: usize) {
        let n = self.n;
        let g = g % n;
        let generator = self.generators;
        let before = self.order.len();
        for i in 0..before {
            let s = self.order[i];
            for (sign, r) in [(1i8, (s + g) % n), (-1i8, (s + n - g) % n)] {
                if !self.present[r] {
                    self.present[r] = true;
                    self.steps[r] = Some(Step {
                        from: s,
                        generator,
                        sign,
                    });
                    self.order.push(r);
                }
            }
        }
        self.generators += 1;
    }

    /// Coefficient vector ε (one entry per generator) reaching `residue`,
    /// or `None` if it is not reachable.
    pub fn witness(&self, residue: usize) -> Option<Vec<i8>> {
        let mut r = residue % self.n;
        if !self.present[r] {
            return None;
        }
        let mut coefficients = vec![0i8; self.generators];
        while let Some(step) = self.steps[r] {
            coefficients[step.generator] = step.sign;
            r = step.from;
        }
        Some(coefficients)
    }
}

/// Coefficients expressing one element of Γ over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub gamma: usize,
    pub coefficients: Vec<i8>,
}

impl Certificate {
    /// `Σ εᵢ λᵢ mod n`.
    pub fn evaluate(&self, lambda: &[usize], n: usize) -> Option<usize> {
        if self.coefficients.len() != lambda.len() || n == 0 {
            return None;
        }
        let n = n as i128;
        let mut acc: i128 = 0;
        for (&e, &l) in self.coefficients.iter().zip(lambda) {
            if !(-1..=1).contains(&e) {
                return None;
            }
            acc += e as i128 * l as i128;
        }
        Some(acc.rem_euclid(n) as usize)
    }
}

#[derive(Debug, Clone)]
pub struct SpanResult {
    pub n: usize,
    /// Generators in the order they were accepted.
    pub lambda: Vec<usize>,
    pub reach: ReachSet,
    pub all_spanned: bool,
    /// One certificate per element of Γ, in Γ's order. Elements that are not
    /// spanned have no certificate.
    pub certificates: Vec<Certificate>,
}

/// Greedy construction of a spanning set Λ ⊆ Γ.
///
/// Stops adding generators once S covers all of Z_N.
pub fn greedy_span(spectrum: &Spectrum, n: usize) -> Result<SpanResult> {
    let mut reach = ReachSet::new(n)?;
    let mut lambda = Vec::new();
    for entry in spectrum.entries() {
        if reach.is_full() {
            break;
        }
        let gamma = entry.index % n;
        if !reach.contains(gamma) {
            reach.add_generator(gamma);
            lambda.push(gamma);
        }
    }

    let mut all_spanned = true;
    let mut certificates = Vec::with_capacity(spectrum.len());
    for entry in spectrum.entries() {
        match reach.witness(entry.index) {
            Some(coefficients) => certificates.push(Certificate {
                gamma: entry.index % n,
                coefficients,
            }),
            None => all_spanned = false,
        }
    }

    Ok(SpanResult {
        n,
        lambda,
        reach,
        all_spanned,
        certificates,
    })
}

/// Fixed-size bitset over Z_N used for closures that do not share code with
/// [`ReachSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ResidueBits {
    n: usize,
    words: Vec<u64>,
}

impl ResidueBits {
    pub(crate) fn zero_only(n: usize) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        words[0] = 1;
        Self { n, words }
    }

    pub(crate) fn contains(&self, r: usize) -> bool {
        let r = r % self.n;
        self.words[r / 64] >> (r % 64) & 1 == 1
    }

    fn set(&mut self, r: usize) {
        self.words[r / 64] |= 1 << (r % 64);
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    /// `self ∪ (self + g) ∪ (self − g)`.
    pub(crate) fn sumset_step(&self, g: usize) -> Self {
        let n = self.n;
        let g = g % n;
        let mut next = self.clone();
        for r in self.ones() {
            next.set((r + g) % n);
            next.set((r + n - g) % n);
        }
        next
    }
}

fn closure_of(lambda: &[usize], n: usize) -> ResidueBits {
    lambda
        .iter()
        .fold(ResidueBits::zero_only(n), |acc, &g| acc.sumset_step(g))
}

/// Independently checks that every element of Γ is a {-1,0,1}-combination of
/// `result.lambda` mod N.
///
/// Reachability is recomputed from the generators alone, and each stored
/// certificate is evaluated by direct modular arithmetic. Returns `false` if
/// either check fails for any element.
pub fn verify_span(result: &SpanResult, spectrum: &Spectrum) -> Result<bool> {
    let n = result.n;
    if n != spectrum.n() {
        return Err(Error::ModulusMismatch {
            span: n,
            spectrum: spectrum.n(),
        });
    }
    let reach = closure_of(&result.lambda, n);
    if !spectrum.entries().iter().all(|e| reach.contains(e.index)) {
        return Ok(false);
    }
    if result.certificates.len() != spectrum.len() {
        return Ok(false);
    }
    let certified = spectrum
        .entries()
        .iter()
        .zip(&result.certificates)
        .all(|(entry, cert)| {
            cert.gamma == entry.index % n && cert.evaluate(&result.lambda, n) == Some(cert.gamma)
        });
    Ok(certified)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// [`minimal_lambda_with_budget`] with [`DEFAULT_ORACLE_BUDGET`].
pub fn minimal_lambda(
    spectrum: &Spectrum,
    n: usize,
    max_size: usize,
) -> Result<Option<Vec<usize>>> {
    minimal_lambda_with_budget(spectrum, n, max_size, DEFAULT_ORACLE_BUDGET)
}

/// Exhaustive search for a minimum-cardinality subset of Γ spanning Γ.
///
/// Subsets are tried by increasing size and lexicographically (over
/// ascending residues) within a size, so the first hit is the result.
/// Returns `None` when no subset of at most `max_size` elements spans Γ.
/// Fails up front if the worst-case number of subsets exceeds `budget`.
pub fn minimal_lambda_with_budget(
    spectrum: &Spectrum,
    n: usize,
    max_size: usize,
    budget: u128,
) -> Result<Option<Vec<usize>>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut elements: Vec<usize> = spectrum.entries().iter().map(|e| e.index % n).collect();
    elements.sort_unstable();
    elements.dedup();

    let m = elements.len();
    let top = max_size.min(m);
    let required: u128 = (0..=top).map(|k| binomial(m, k)).sum();
    if required > budget {
        return Err(Error::OracleBudgetExceeded { required, budget });
    }

    let spans = |bits: &ResidueBits| elements.iter().all(|&g| bits.contains(g));
    let start = ResidueBits::zero_only(n);
    for size in 0..=top {
        let mut chosen = Vec::with_capacity(size);
        if search(&elements, 0, size, &start, &mut chosen, &spans) {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

fn search(
    elements: &[usize],
    from: usize,
    remaining: usize,
    bits: &ResidueBits,
    chosen: &mut Vec<usize>,
    spans: &impl Fn(&ResidueBits) -> bool,
) -> bool {
    if remaining == 0 {
        return spans(bits);
    }
    for i in from..=elements.len() - remaining {
        chosen.push(elements[i]);
        let next = bits.sumset_step(elements[i]);
        if search(elements, i + 1, remaining - 1, &next, chosen, spans) {
            return true;
        }
        chosen.pop();
    }
    false
}
