//! The algebra `A*` generated by `ω_I, ω_J, ω_K`, and the forms `Ξ_k = Π₊(ω_I^k)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::hypercomplex::standard_forms;
use crate::scalars::Gq;

use super::probes::{probe_weak_positivity, ProbeReport};
use super::weights::{project_plus, span_basis, Subspace};

#[derive(Clone, Debug, Serialize)]
pub struct OmegaAlgebraReport {
    pub n: usize,
    pub i: usize,
    pub dim: usize,
    /// `"p,q" -> dim A^{p,q}` for `p + q = 2i`.
    pub bidegrees: BTreeMap<String, usize>,
    /// `dim A^{i,i}₊ = dim ker Q*` on `A^{i,i}`.
    pub plus_dim: usize,
    #[serde(skip)]
    pub basis: Subspace,
}

/// `ω_I^a ∧ Ω^b ∧ Ω̄^c`.
fn generator_monomial(n: usize, a: usize, b: usize, c: usize) -> Form {
    let s = standard_forms(n);
    s.omega_i
        .to_complex()
        .wedge_pow(a)
        .wedge(&s.omega.wedge_pow(b))
        .wedge(&s.omega.conj().wedge_pow(c))
}

/// Spanning family of `A^{p,q}`.
fn bigraded_span(n: usize, p: usize, q: usize) -> Vec<Form> {
    let mut out = Vec::new();
    for a in 0..=p.min(q) {
        if (p - a) % 2 == 1 || (q - a) % 2 == 1 {
            continue;
        }
        out.push(generator_monomial(n, a, (p - a) / 2, (q - a) / 2));
    }
    out.retain(|f| !f.is_zero());
    out
}

fn independent(forms: Vec<Form>) -> Result<Vec<Form>> {
    let keep = span_basis(&forms)?;
    Ok(keep.into_iter().map(|i| forms[i].clone()).collect())
}

/// `Q(η) = η ∧ (ω_I² + ω_J² + ω_K²)`.
pub fn q_form(n: usize) -> Form {
    let s = standard_forms(n);
    s.omega_i
        .wedge_pow(2)
        .add(&s.omega_j.wedge_pow(2))
        .add(&s.omega_k.wedge_pow(2))
}

pub fn omega_algebra(n: usize, i: usize) -> Result<OmegaAlgebraReport> {
    if 2 * i > 4 * n {
        return Err(Error::Precondition(format!(
            "degree {} exceeds {}",
            2 * i,
            4 * n
        )));
    }
    let s = standard_forms(n);
    // monomials in ω_I, ω_J, ω_K of degree i
    let mut span = Vec::new();
    for a in 0..=i {
        for b in 0..=(i - a) {
            let c = i - a - b;
            span.push(
                s.omega_i
                    .wedge_pow(a)
                    .wedge(&s.omega_j.wedge_pow(b))
                    .wedge(&s.omega_k.wedge_pow(c)),
            );
        }
    }
    let basis = independent(span)?;
    let mut bidegrees = BTreeMap::new();
    let mut total = 0;
    for p in 0..=2 * i {
        let d = independent(bigraded_span(n, p, 2 * i - p))?.len();
        if d > 0 {
            bidegrees.insert(format!("{p},{}", 2 * i - p), d);
        }
        total += d;
    }
    if total != basis.len() {
        return Err(Error::Inconsistent(format!(
            "bigraded dimensions sum to {total}, algebra has dimension {}",
            basis.len()
        )));
    }
    let mid = independent(bigraded_span(n, i, i))?;
    let q = q_form(n);
    let image: Vec<Form> = if i >= 2 {
        bigraded_span(n, i - 2, i - 2)
            .iter()
            .map(|f| f.wedge(&q))
            .collect()
    } else {
        Vec::new()
    };
    let image_dim = independent(image.into_iter().filter(|f| !f.is_zero()).collect())?.len();
    Ok(OmegaAlgebraReport {
        n,
        i,
        dim: basis.len(),
        bidegrees,
        plus_dim: mid.len() - image_dim,
        basis: Subspace {
            basis,
            bidegree: None,
            weight: None,
            label: Some(format!("A^{}", 2 * i)),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct XiReport {
    pub n: usize,
    pub k: usize,
    pub probes: ProbeReport,
    /// `Ξ / Vol` when `k = 2n`.
    pub top_coefficient: Option<String>,
    #[serde(skip)]
    pub xi: Form,
}

/// `Ξ_k = Π₊(ω_I^k)` for `n ≤ k ≤ 2n`, with a probe report.
pub fn xi_form(n: usize, k: usize, probes: usize, seed: u64) -> Result<XiReport> {
    if k < n || k > 2 * n {
        return Err(Error::Precondition(format!("need n ≤ k ≤ 2n, got k = {k}")));
    }
    let s = standard_forms(n);
    let xi = project_plus(&s.omega_i.wedge_pow(k))?;
    let report = probe_weak_positivity(&xi, probes, seed)?;
    let top_coefficient = if k == 2 * n {
        let c: Gq = xi.top_value().constant_term();
        Some(c.to_string())
    } else {
        None
    };
    Ok(XiReport {
        n,
        k,
        probes: report,
        top_coefficient,
        xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_up_to_middle_degree() {
        for n in 1..=2 {
            for i in 0..=n {
                let r = omega_algebra(n, i).unwrap();
                assert_eq!(r.dim, (i + 1) * (i + 2) / 2, "n={n} i={i}");
                assert_eq!(r.plus_dim, 1);
            }
        }
        assert_eq!(omega_algebra(2, 1).unwrap().dim, 3);
    }

    #[test]
    fn xi_top_is_positive_volume() {
        let r = xi_form(1, 2, 10, 1).unwrap();
        assert!(r.probes.weakly_positive());
        let top: Gq = r.xi.top_value().constant_term();
        assert!(top.is_real() && top.real_sign() == Some(1));
    }
}
