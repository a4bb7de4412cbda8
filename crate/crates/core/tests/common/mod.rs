#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tailspan_core::{Complex64, Signal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(n: usize, r: &mut ChaCha8Rng) -> Signal {
    Signal::new(
        (0..n)
            .map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

pub fn random_real(n: usize, r: &mut ChaCha8Rng) -> Signal {
    let v: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
    Signal::from_real(&v).unwrap()
}

/// Direct evaluation of `N^{-1/2} Σ_x exp(-2πi·x·m/N) f(x)`, one `sin_cos`
/// per term. `x·m` is reduced mod N first, which leaves each character value
/// unchanged and keeps the angle small.
pub fn naive_dft(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    (0..n)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, v) in values.iter().enumerate() {
                let t = ((x as u128 * m as u128) % n as u128) as f64;
                let (s, c) = (-2.0 * PI * t / n as f64).sin_cos();
                acc += v * Complex64::new(c, s);
            }
            acc / (n as f64).sqrt()
        })
        .collect()
}

pub fn l2(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn rel_l2_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let scale = l2(b);
    if scale == 0.0 {
        l2(&diff)
    } else {
        l2(&diff) / scale
    }
}

/// Every {-1,0,1}-combination of `lambda` mod n, by enumeration of all 3^k
/// coefficient vectors.
pub fn combinations(lambda: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n];
    let total = 3u64.pow(lambda.len() as u32);
    for mut code in 0..total {
        let mut acc: i64 = 0;
        for &l in lambda {
            acc += ((code % 3) as i64 - 1) * l as i64;
            code /= 3;
        }
        reach[acc.rem_euclid(n as i64) as usize] = true;
    }
    reach
}

pub fn acceptance_line(criterion: u32, title: &str, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {criterion}: {title} -- {detail}");
}
