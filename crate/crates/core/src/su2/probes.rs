//! Necessary-condition test for weak positivity of `(k,k)`-forms: pairing against
//! random decomposable strongly positive forms `Π_j √−1·β_j∧β̄_j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Form, Frame};
use crate::scalars::rational::rational_string;
use crate::scalars::{Gq, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub probes: usize,
    pub all_real: bool,
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
    /// Smallest value seen, as an exact string.
    pub min_value: Option<String>,
}

impl ProbeReport {
    pub fn weakly_positive(&self) -> bool {
        self.all_real && self.negative == 0
    }
}

fn random_gq(rng: &mut ChaCha8Rng) -> Gq {
    Gq::from_int(rng.gen_range(-4..=4)) + Gq::from_int(rng.gen_range(-4..=4)) * Gq::i()
}

/// A random `(1,0)`-form with small Gaussian-integer coefficients, never zero.
pub fn random_one_zero(n: usize, rng: &mut ChaCha8Rng) -> Form {
    loop {
        let mut f = Form::zero(n, Frame::Complex);
        for a in 0..2 * n {
            let c = random_gq(rng);
            f = f.add(&Form::from_generators(n, Frame::Complex, &[a], c).unwrap());
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// `Π_{j<count} √−1 β_j ∧ β̄_j`.
pub fn decomposable_probe(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Form {
    let mut acc = Form::constant(n, Gq::one()).to_complex();
    for _ in 0..count {
        let b = random_one_zero(n, rng);
        acc = acc.wedge(&b.wedge(&b.conj()).scale(&Gq::i()));
    }
    acc
}

/// Evaluates `η ∧ probe / Vol` on `count` seeded probes of complementary degree.
pub fn probe_weak_positivity(eta: &Form, count: usize, seed: u64) -> Result<ProbeReport> {
    let n = eta.n();
    let eta = eta.to_complex();
    let k = if eta.is_zero() {
        0
    } else {
        eta.homogeneous_degree()?
    };
    if k % 2 == 1 || k > 4 * n {
        return Err(Error::DegreeMismatch(format!(
            "weak positivity needs a (k,k)-form, degree {k}"
        )));
    }
    if !eta.is_zero() && eta.bidegrees() != vec![(k / 2, k / 2)] {
        return Err(Error::DegreeMismatch(
            "weak positivity needs pure type (k,k)".into(),
        ));
    }
    if !eta.is_constant() {
        return Err(Error::Precondition(
            "probing needs constant coefficients".into(),
        ));
    }
    let comp = 2 * n - k / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport {
        probes: count,
        all_real: true,
        negative: 0,
        zero: 0,
        positive: 0,
        min_value: None,
    };
    let mut min: Option<Rational> = None;
    for _ in 0..count {
        let probe = decomposable_probe(n, comp, &mut rng);
        let v = eta.wedge(&probe).top_value().constant_term();
        if !v.is_real() {
            report.all_real = false;
            continue;
        }
        let r = v.re.clone();
        match v.real_sign() {
            Some(s) if s > 0 => report.positive += 1,
            Some(s) if s < 0 => report.negative += 1,
            _ => report.zero += 1,
        }
        if min.as_ref().is_none_or(|m| r < *m) {
            min = Some(r);
        }
    }
    report.min_value = min.as_ref().map(rational_string);
    Ok(report)
}
