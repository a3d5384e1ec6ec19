//! Polynomial calculus in A*(P^N) = Z[H]/(H^{N+1}).
//!
//! Two coefficient conventions are in play and must not be mixed:
//! the gamma convention g(t) = sum g_i t^i with g_i the coefficient on [P^i],
//! and the H-power convention p(H) = sum g_{N-i} H^i. `reversed` converts
//! between them; each operation states which one it expects.

use crate::combinatorics::binomial;

/// Integer polynomial truncated to the ring Z[H]/(H^{cap+1}).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPoly {
    coeffs: Vec<i64>,
    cap: usize,
}

impl HPoly {
    pub fn new(coeffs: Vec<i64>, cap: usize) -> HPoly {
        let mut p = HPoly { coeffs, cap };
        p.trim();
        assert!(
            p.coeffs.len() <= cap + 1,
            "degree {} over cap {}",
            p.coeffs.len() - 1,
            cap
        );
        p
    }

    pub fn zero(cap: usize) -> HPoly {
        HPoly {
            coeffs: Vec::new(),
            cap,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.cap, rhs.cap, "cap mismatch");
        let mut coeffs = vec![0; self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i) + rhs.coeff(i);
        }
        HPoly::new(coeffs, self.cap)
    }

    pub fn sub(&self, rhs: &HPoly) -> HPoly {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, s: i64) -> HPoly {
        HPoly::new(self.coeffs.iter().map(|&c| c * s).collect(), self.cap)
    }

    /// Product reduced modulo H^{cap+1}.
    pub fn mul(&self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.cap, rhs.cap, "cap mismatch");
        let mut coeffs = vec![0; self.cap + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if i + j <= self.cap {
                    coeffs[i + j] += a * b;
                }
            }
        }
        HPoly::new(coeffs, self.cap)
    }

    /// Convention flip: coefficient of t^i becomes coefficient of t^{cap-i}.
    /// Turns a gamma-convention polynomial into the H-power one and back.
    pub fn reversed(&self) -> HPoly {
        let mut coeffs = vec![0; self.cap + 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(self.cap - i);
        }
        HPoly::new(coeffs, self.cap)
    }

    /// Composition p(-1 - t), same cap.
    fn compose_neg_shift(&self) -> HPoly {
        let mut coeffs = vec![0; self.coeffs.len().max(1)];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let s = if j % 2 == 0 { c } else { -c };
            for (i, cc) in coeffs.iter_mut().enumerate().take(j + 1) {
                *cc += s * binomial(j as i64, i as i64);
            }
        }
        HPoly::new(coeffs, self.cap)
    }
}

/// The involution exchanging gamma- and chi-polynomials (t-convention):
/// (t p(-t-1) + p(0)) / (t + 1), with the exactness of the division asserted.
pub fn ism(p: &HPoly) -> HPoly {
    let comp = p.compose_neg_shift();
    // numerator t * comp + p(0)
    let mut num = vec![0; comp.coeffs.len() + 1];
    num[0] = p.coeff(0);
    for (i, &c) in comp.coeffs.iter().enumerate() {
        num[i + 1] += c;
    }
    // synthetic division by (t + 1)
    let m = num.len() - 1;
    let mut out = vec![0; m.max(1)];
    if m > 0 {
        out[m - 1] = num[m];
        for i in (1..m).rev() {
            out[i - 1] = num[i] - out[i];
        }
    }
    let rem = num[0] - out.first().copied().unwrap_or(0);
    assert_eq!(rem, 0, "ism: division by t+1 not exact, convention mixup");
    HPoly::new(out, p.cap())
}

/// Projective-duality involution on signed Mather polynomials (H-power
/// convention): p(-1-H) - p(-1) ((1+H)^{n+1} - H^{n+1}); degree stays <= n,
/// so no further reduction is needed.
pub fn jn(p: &HPoly, n: usize) -> HPoly {
    assert_eq!(p.cap(), n, "jn: cap must equal n");
    let comp = p.compose_neg_shift();
    let pev = p.eval(-1);
    let mut out = vec![0; n + 1];
    for (i, c) in out.iter_mut().enumerate() {
        *c = comp.coeff(i) - pev * binomial(n as i64 + 1, i as i64);
    }
    HPoly::new(out, n)
}

/// Sm invariant from a c_sm polynomial in the H-power convention on P^{dimV-1}:
/// (-1)^{dimV-1} csm(-1); equals chi(X) - chi(X cap H) for a generic section.
pub fn sm_invariant(csm: &HPoly, dim_v: usize) -> i64 {
    assert!(dim_v >= 1);
    assert_eq!(csm.cap(), dim_v - 1, "sm_invariant: cap must be dimV - 1");
    let s = if (dim_v - 1).is_multiple_of(2) { 1 } else { -1 };
    s * csm.eval(-1)
}

/// Local Euler obstruction of the affine cone at the origin, from the
/// Chern-Mather polynomial in the H-power convention.
pub fn euler_obstruction_at_origin(cm: &HPoly, dim_v: usize) -> i64 {
    assert!(dim_v >= 1);
    assert_eq!(
        cm.cap(),
        dim_v - 1,
        "euler_obstruction_at_origin: cap must be dimV - 1"
    );
    let s = if (dim_v - 1).is_multiple_of(2) { 1 } else { -1 };
    s * cm.eval(-1)
}
