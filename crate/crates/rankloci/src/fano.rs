//! Euler characteristics of Fano schemes of linear spaces on smooth quadrics,
//! by three routes: a parity recursion in the ambient dimension, a closed
//! binomial form, and a Schubert integral over G(d+1,n+1). The integral
//! factors through a Lascoux-style expression of c_top(Sym^2 S*) as a
//! staircase determinant, checked here as a class identity, together with its
//! vanishing on the two small Grassmannians where the Fano scheme is empty
//! or defective.
//!
//! The same integral shape with wedge^2 Q in place of Sym^2 S* gives the
//! alternating binomial identities used by the skew-symmetric Sm formula;
//! both sides live here as well.

use crate::combinatorics::{binomial, Partition};
use crate::schubert::{
    chern_hom, chern_q, chern_s, chern_sym2, chern_wedge2, context_within_budget, delta_schur,
    dual, top_chern, ChowClass, FormalBundle, GrassmannContext,
};
use crate::Result;
use std::sync::Arc;

fn fano_rec(d: i64, n: i64) -> i64 {
    if 2 * d >= n {
        // no d-planes fit; the recursion below steps outside its own range
        return 0;
    }
    if d == 0 {
        return n + 1 + ((-1_i64).pow((n + 1) as u32) - 1) / 2;
    }
    if n % 2 == 0 {
        fano_rec(d, n - 1)
    } else {
        fano_rec(d, n - 1) + 2 * fano_rec(d - 1, n - 1)
    }
}

/// chi of the Fano scheme of d-planes on a smooth quadric in P^n, by the
/// recursion that peels off one ambient dimension per step.
pub fn fano_euler_recursive(d: i64, n: i64) -> i64 {
    assert!(d >= 0 && n >= 1 && 2 * d < n, "empty Fano scheme");
    fano_rec(d, n)
}

/// Closed form 2^(d+1) binom(m, m-d-1) with m = (n+1)/2 rounded down.
pub fn fano_euler_closed(d: i64, n: i64) -> i64 {
    assert!(d >= 0 && n >= 1);
    let m = (n + 1) / 2;
    (1_i64 << (d + 1)) * binomial(m, m - d - 1)
}

fn ratio_integral(ctx: &Arc<GrassmannContext>, f: &FormalBundle) -> i64 {
    let t = chern_hom(&chern_s(ctx), &chern_q(ctx));
    t.total
        .mul(&top_chern(f))
        .mul(&f.total.inverse())
        .integrate_i64()
}

/// chi of the Fano scheme as int_{G(d+1,n+1)} c(Hom(S,Q)) c_top(Sym^2 S*)
/// / c(Sym^2 S*). Unlike the recursion this is defined for every d < n and
/// vanishes on its own when the scheme is empty.
pub fn fano_euler_schubert(d: i64, n: i64, budget: usize) -> Result<i64> {
    let ctx = context_within_budget(d + 1, n + 1, budget)?;
    let f = chern_sym2(&dual(&chern_s(&ctx)));
    Ok(ratio_integral(&ctx, &f))
}

fn staircase(d: i64) -> Partition {
    Partition::new((1..=(d + 1) as u32).rev().collect())
}

/// c_top(Sym^2 S*) = 2^(d+1) * (staircase Schur determinant in c(S*)) on
/// G(d+1,n+1), as an identity of classes, not just of integrals.
pub fn lascoux_identity_holds(d: i64, n: i64, budget: usize) -> Result<bool> {
    let ctx = context_within_budget(d + 1, n + 1, budget)?;
    let sd = dual(&chern_s(&ctx));
    let lhs = top_chern(&chern_sym2(&sd));
    let rhs = delta_schur(&staircase(d), &sd).scale_int(1_i64 << (d + 1));
    Ok(lhs == rhs)
}

/// The staircase determinant itself, for the vanishing checks at (d,n) =
/// (2,4) and (3,5) where it collapses to zero.
pub fn staircase_determinant(d: i64, n: i64, budget: usize) -> Result<ChowClass> {
    let ctx = context_within_budget(d + 1, n + 1, budget)?;
    let sd = dual(&chern_s(&ctx));
    Ok(delta_schur(&staircase(d), &sd))
}

/// Both sides of the skew-symmetric binomial identity at internal corank k,
/// level n. The left side integrates c(Hom(S,Q)) c_top(W)/c(W) with
/// W = wedge^2 Q over G(2k,2n) (even) or G(2k+1,2n+1) (odd); the right side
/// is sum_{r=k}^{n} (-1)^(n-r) binom(2r,2k) binom(n,r), with both binomial
/// labels shifted up by one in the odd case.
pub fn skew_identity_sides(k: i64, n: i64, odd: bool, budget: usize) -> Result<(i64, i64)> {
    assert!(0 <= k && k <= n);
    let s = if odd { 1 } else { 0 };
    let ctx = context_within_budget(2 * k + s, 2 * n + s, budget)?;
    let f = chern_wedge2(&chern_q(&ctx));
    let lhs = ratio_integral(&ctx, &f);
    let rhs: i64 = (k..=n)
        .map(|r| {
            let sign = if (n - r) % 2 == 0 { 1 } else { -1 };
            sign * binomial(2 * r + s, 2 * k + s) * binomial(n, r)
        })
        .sum();
    Ok((lhs, rhs))
}

pub fn skew_identity_check(k: i64, n: i64, odd: bool, budget: usize) -> Result<bool> {
    let (lhs, rhs) = skew_identity_sides(k, n, odd, budget)?;
    Ok(lhs == rhs)
}
