//! The four concrete rank-locus families (ordinary, skew even, skew odd,
//! symmetric) behind one trait, registered by name. Internally every family
//! uses consecutive levels n and corank strata k = 1..n-1 (n = origin); the
//! skew families expose their native labels 2k / 2k+1 separately.
//!
//! Besides the orbit data this module carries the closed-form tables, the
//! independent Schubert route to Sm through the Tjurina transform, and the
//! IC characteristic cycles and stalk characteristics.

use crate::combinatorics::binomial;
use crate::engine::{self, OrbitFamilySpec};
use crate::schubert::{
    bundle_sum_pow, chern_hom, chern_q, chern_s, chern_sym2, chern_wedge2, dual,
    pushforward_projbundle_ratio, FormalBundle, GrassmannContext,
};
use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TjurinaBundle {
    QPowN,
    Wedge2Q,
    Sym2Q,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LocalSystem {
    Constant,
    Twisted,
}

/// Multiplicities r_i of conormal cycles in a characteristic cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacteristicCycle {
    pub multiplicities: BTreeMap<i64, i64>,
}

pub trait RankLocusFamily: OrbitFamilySpec {
    /// The stratum label the papers use (2k or 2k+1 for skew, k otherwise).
    fn native_label(&self, k: i64) -> i64;
    /// Matrix size at internal level n (2n or 2n+1 for skew, n otherwise).
    fn native_size(&self, n: i64) -> i64;
    /// Closed-form local Euler obstruction e_{k,m} (internal indices).
    fn euler_closed(&self, k: i64, m: i64) -> i64;
    /// Closed-form sectional chi_{k,r} at level n, r >= 0 (internal indices).
    fn sectional_closed(&self, n: i64, k: i64, r: i64) -> i64;
    /// Grassmannian (k, m) and bundle of the Tjurina transform of stratum j.
    fn tjurina(&self, n: i64, j: i64) -> (i64, i64, TjurinaBundle);
    /// chi of the Tjurina-resolution fiber of stratum j over stratum r.
    fn fiber_chi(&self, r: i64, j: i64) -> i64;
    fn twisted_allowed(&self) -> bool {
        false
    }
}

fn sign_pow(e: i64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Unified sectional closed form for the ordinary and both skew families.
fn sectional_unified(spec: &dyn OrbitFamilySpec, n: i64, k: i64, r: i64) -> i64 {
    let s: i64 = (k..=n)
        .map(|i| sign_pow(i - k) * binomial(i, k) * binomial(r, n - i))
        .sum();
    s + spec.open_chi(n, k)
}

pub struct Ordinary;

impl OrbitFamilySpec for Ordinary {
    fn name(&self) -> &'static str {
        "ordinary"
    }
    fn ambient_dim(&self, n: i64) -> i64 {
        n * n
    }
    fn orbit_dim(&self, n: i64, k: i64) -> i64 {
        n * n - k * k
    }
    fn open_chi(&self, n: i64, k: i64) -> i64 {
        if k == n - 1 {
            n * n
        } else {
            0
        }
    }
    fn sm(&self, n: i64, k: i64) -> i64 {
        sign_pow(n + 1 - k) * binomial(n, k)
    }
}

impl RankLocusFamily for Ordinary {
    fn native_label(&self, k: i64) -> i64 {
        k
    }
    fn native_size(&self, n: i64) -> i64 {
        n
    }
    fn euler_closed(&self, k: i64, m: i64) -> i64 {
        binomial(m, k)
    }
    fn sectional_closed(&self, n: i64, k: i64, r: i64) -> i64 {
        sectional_unified(self, n, k, r)
    }
    fn tjurina(&self, n: i64, j: i64) -> (i64, i64, TjurinaBundle) {
        (j, n, TjurinaBundle::QPowN)
    }
    fn fiber_chi(&self, r: i64, j: i64) -> i64 {
        binomial(r, j)
    }
}

pub struct SkewEven;

impl OrbitFamilySpec for SkewEven {
    fn name(&self) -> &'static str {
        "skew-even"
    }
    fn ambient_dim(&self, n: i64) -> i64 {
        binomial(2 * n, 2)
    }
    fn orbit_dim(&self, n: i64, k: i64) -> i64 {
        (n - k) * (2 * n + 2 * k - 1)
    }
    fn open_chi(&self, n: i64, k: i64) -> i64 {
        if k == n - 1 {
            binomial(2 * n, 2)
        } else {
            0
        }
    }
    fn sm(&self, n: i64, k: i64) -> i64 {
        sign_pow(n - k + 1) * binomial(n, k)
    }
}

impl RankLocusFamily for SkewEven {
    fn native_label(&self, k: i64) -> i64 {
        2 * k
    }
    fn native_size(&self, n: i64) -> i64 {
        2 * n
    }
    fn euler_closed(&self, k: i64, m: i64) -> i64 {
        binomial(m, k)
    }
    fn sectional_closed(&self, n: i64, k: i64, r: i64) -> i64 {
        sectional_unified(self, n, k, r)
    }
    fn tjurina(&self, n: i64, j: i64) -> (i64, i64, TjurinaBundle) {
        (2 * j, 2 * n, TjurinaBundle::Wedge2Q)
    }
    fn fiber_chi(&self, r: i64, j: i64) -> i64 {
        binomial(2 * r, 2 * j)
    }
}

pub struct SkewOdd;

impl OrbitFamilySpec for SkewOdd {
    fn name(&self) -> &'static str {
        "skew-odd"
    }
    fn ambient_dim(&self, n: i64) -> i64 {
        binomial(2 * n + 1, 2)
    }
    fn orbit_dim(&self, n: i64, k: i64) -> i64 {
        (n - k) * (2 * n + 2 * k + 1)
    }
    fn open_chi(&self, n: i64, k: i64) -> i64 {
        if k == n - 1 {
            binomial(2 * n + 1, 2)
        } else {
            0
        }
    }
    fn sm(&self, n: i64, k: i64) -> i64 {
        sign_pow(n - k + 1) * binomial(n, k)
    }
}

impl RankLocusFamily for SkewOdd {
    fn native_label(&self, k: i64) -> i64 {
        2 * k + 1
    }
    fn native_size(&self, n: i64) -> i64 {
        2 * n + 1
    }
    fn euler_closed(&self, k: i64, m: i64) -> i64 {
        binomial(m, k)
    }
    fn sectional_closed(&self, n: i64, k: i64, r: i64) -> i64 {
        sectional_unified(self, n, k, r)
    }
    fn tjurina(&self, n: i64, j: i64) -> (i64, i64, TjurinaBundle) {
        (2 * j + 1, 2 * n + 1, TjurinaBundle::Wedge2Q)
    }
    fn fiber_chi(&self, r: i64, j: i64) -> i64 {
        binomial(2 * r + 1, 2 * j + 1)
    }
}

pub struct Symmetric;

impl OrbitFamilySpec for Symmetric {
    fn name(&self) -> &'static str {
        "symmetric"
    }
    fn ambient_dim(&self, m: i64) -> i64 {
        binomial(m + 1, 2)
    }
    fn orbit_dim(&self, m: i64, k: i64) -> i64 {
        (m - k) * (m + k + 1) / 2
    }
    fn open_chi(&self, m: i64, k: i64) -> i64 {
        if k == m - 1 {
            m
        } else if k == m - 2 {
            binomial(m, 2)
        } else {
            0
        }
    }
    fn sm(&self, m: i64, k: i64) -> i64 {
        if m % 2 == 0 {
            let n = m / 2;
            if k % 2 == 1 {
                return 0;
            }
            return sign_pow(n - k / 2 + 1) * binomial(n, k / 2);
        }
        let n = (m - 1) / 2;
        let i = k / 2;
        if k % 2 == 0 {
            sign_pow(n - i) * binomial(n, i)
        } else {
            sign_pow(n - i + 1) * binomial(n, i)
        }
    }
}

impl RankLocusFamily for Symmetric {
    fn native_label(&self, k: i64) -> i64 {
        k
    }
    fn native_size(&self, n: i64) -> i64 {
        n
    }
    fn euler_closed(&self, k: i64, m: i64) -> i64 {
        if m % 2 == 0 {
            if k % 2 == 1 {
                return 0;
            }
            return binomial(m / 2, k / 2);
        }
        binomial((m - 1) / 2, k / 2)
    }
    fn sectional_closed(&self, m: i64, a: i64, b: i64) -> i64 {
        let (big_m, s, c) = (m / 2, a / 2, b / 2);
        let sum_s = |d: i64| -> i64 {
            (s..=big_m)
                .map(|l| sign_pow(l - s) * binomial(l, s) * binomial(c + d, big_m - l))
                .sum()
        };
        let sum_t: i64 = (s..big_m)
            .map(|l| sign_pow(l - s) * binomial(l, s) * binomial(c, big_m - 1 - l))
            .sum();
        let oc = self.open_chi(m, a);
        if m % 2 == 0 {
            if a % 2 == 0 {
                return if b % 2 == 0 { sum_s(0) } else { sum_s(1) } + oc;
            }
            return if b % 2 == 0 { oc } else { -sum_t + oc };
        }
        if a % 2 == 0 {
            return if b % 2 == 0 { -sum_s(0) + oc } else { oc };
        }
        sum_s(0) + oc
    }
    fn tjurina(&self, m: i64, j: i64) -> (i64, i64, TjurinaBundle) {
        (j, m, TjurinaBundle::Sym2Q)
    }
    fn fiber_chi(&self, r: i64, j: i64) -> i64 {
        binomial(r, j)
    }
    fn twisted_allowed(&self) -> bool {
        true
    }
}

static REGISTRY: [&dyn RankLocusFamily; 4] = [&Ordinary, &SkewEven, &SkewOdd, &Symmetric];

pub fn registry() -> [&'static dyn RankLocusFamily; 4] {
    REGISTRY
}

pub fn family_by_name(name: &str) -> Option<&'static dyn RankLocusFamily> {
    registry().into_iter().find(|f| f.name() == name)
}

pub use crate::schubert::context_within_budget;

fn tjurina_bundle(
    ctx: &std::sync::Arc<GrassmannContext>,
    kind: TjurinaBundle,
    m: i64,
) -> FormalBundle {
    let q = chern_q(ctx);
    match kind {
        TjurinaBundle::QPowN => bundle_sum_pow(&q, m as usize),
        TjurinaBundle::Wedge2Q => chern_wedge2(&q),
        TjurinaBundle::Sym2Q => chern_sym2(&q),
    }
}

/// The Schubert route to a full Sm row: for each stratum j integrate the
/// Tjurina pushforward g_j = int c(S* ts Q)(1 - c_top(F)/c(F)) over the
/// Grassmannian of the transform, then peel the fiber contributions off the
/// triangular system g_j = sum_{r >= j} fiber_chi(r,j) Sm_r.
/// Returns (sm, g) keyed by stratum.
pub fn sm_schubert_row(
    fam: &dyn RankLocusFamily,
    n: i64,
    budget: usize,
) -> Result<(BTreeMap<i64, i64>, BTreeMap<i64, i64>)> {
    let mut g = BTreeMap::new();
    for j in 1..n {
        let (kk, mm, kind) = fam.tjurina(n, j);
        let ctx = context_within_budget(kk, mm, budget)?;
        let f = tjurina_bundle(&ctx, kind, mm);
        let t = chern_hom(&chern_s(&ctx), &chern_q(&ctx));
        let val = pushforward_projbundle_ratio(&dual(&f), &t.total).integrate_i64();
        g.insert(j, val);
    }
    let mut sm = BTreeMap::new();
    for j in (1..n).rev() {
        let mut v = g[&j];
        for r in j + 1..n {
            v -= fam.fiber_chi(r, j) * sm[&r];
        }
        sm.insert(j, v);
    }
    Ok((sm, g))
}

/// The intermediate integral in the symmetric Schubert route,
/// int_{G(k,m)} c(S* ts Q) c_top(Sym^2 Q)/c(Sym^2 Q), so that the symmetric
/// g_k above equals chi(G(k,m)) minus this.
pub fn symmetric_lemma_integral(k: i64, m: i64, budget: usize) -> Result<i64> {
    let ctx = context_within_budget(k, m, budget)?;
    let f = chern_sym2(&chern_q(&ctx));
    let t = chern_hom(&chern_s(&ctx), &chern_q(&ctx));
    let integrand = t
        .total
        .mul(&crate::schubert::top_chern(&f))
        .mul(&f.total.inverse());
    Ok(integrand.integrate_i64())
}

/// Closed form for the same integral: 2^(2n-k) binom(n, k-n) on G(k,2n) and
/// 2^(2n-k+1) binom(n, k-n-1) on G(k,2n+1).
pub fn symmetric_lemma_closed(k: i64, m: i64) -> i64 {
    assert!(0 <= k && k <= m);
    let n = m / 2;
    if m % 2 == 0 {
        (1_i64 << (2 * n - k)) * binomial(n, k - n)
    } else {
        (1_i64 << (2 * n - k + 1)) * binomial(n, k - n - 1)
    }
}

/// Characteristic cycle of the IC complex of the closure of stratum i
/// (0 = open dense, n = origin).
pub fn ic_cc(
    fam: &dyn RankLocusFamily,
    n: i64,
    i: i64,
    ls: LocalSystem,
) -> Result<CharacteristicCycle> {
    assert!(0 <= i && i <= n);
    let single = |s| CharacteristicCycle {
        multiplicities: BTreeMap::from([(s, 1)]),
    };
    let pair = |s| CharacteristicCycle {
        multiplicities: BTreeMap::from([(s, 1), (s + 1, 1)]),
    };
    if i == n {
        return match ls {
            LocalSystem::Constant => Ok(single(n)),
            LocalSystem::Twisted => Err(Error::InvalidArgument(
                "no twisted local system on the origin stratum".into(),
            )),
        };
    }
    if fam.twisted_allowed() {
        return match ls {
            LocalSystem::Constant => Ok(if i % 2 == 0 { single(i) } else { pair(i) }),
            LocalSystem::Twisted if i == 0 => Err(Error::InvalidArgument(
                "no twisted local system on the open stratum".into(),
            )),
            LocalSystem::Twisted => Ok(if i % 2 == 1 { single(i) } else { pair(i) }),
        };
    }
    match ls {
        LocalSystem::Constant => Ok(single(i)),
        LocalSystem::Twisted => Err(Error::InvalidArgument(format!(
            "the {} strata are simply connected, only the constant sheaf exists",
            fam.name()
        ))),
    }
}

/// Signed stalk Euler characteristic of IC on stratum i evaluated on stratum
/// j via the microlocal index formula:
/// chi_j = sum_l (-1)^{d_{n,l}} e_{l,j} r_l, reported as (-1)^{d_{n,i}} chi_j.
pub fn ic_stalk_signed(
    fam: &dyn RankLocusFamily,
    n: i64,
    i: i64,
    j: i64,
    ls: LocalSystem,
) -> Result<i64> {
    assert!(0 <= j && j <= n);
    let e = engine::euler_from_sm(fam, n);
    let eget = |l: i64, j: i64| -> i64 {
        if l == 0 || l == j {
            1
        } else if l > j {
            0
        } else {
            e.get(l as usize, j as usize)
        }
    };
    let cc = ic_cc(fam, n, i, ls)?;
    let chi: i64 = cc
        .multiplicities
        .iter()
        .map(|(&l, &r)| sign_pow(fam.orbit_dim(n, l)) * eget(l, j) * r)
        .sum();
    Ok(sign_pow(fam.orbit_dim(n, i)) * chi)
}

/// The published signed stalk table. For the symmetric constant sheaf with
/// odd i the printed table is internally inconsistent; this returns the
/// value consistent with the index formula, and `ic_table_ambiguous` flags
/// those cells so callers can report rather than assert.
pub fn ic_table_signed(fam: &dyn RankLocusFamily, i: i64, j: i64, ls: LocalSystem) -> i64 {
    if !fam.twisted_allowed() {
        return binomial(j, i);
    }
    let (s, k) = (i / 2, j / 2);
    match ls {
        LocalSystem::Twisted => {
            if i % 2 == j % 2 {
                binomial(k, s)
            } else {
                0
            }
        }
        LocalSystem::Constant => {
            if i % 2 == 0 {
                binomial(k, s)
            } else if j % 2 == 0 {
                binomial(k, s + 1)
            } else {
                binomial(k + 1, s + 1)
            }
        }
    }
}

/// True on cells where the published symmetric constant-sheaf table is
/// garbled (two rows printed with the same label); the returned table value
/// there is reconstructed, not quoted.
pub fn ic_table_ambiguous(fam: &dyn RankLocusFamily, i: i64, _j: i64, ls: LocalSystem) -> bool {
    fam.twisted_allowed() && ls == LocalSystem::Constant && i % 2 == 1
}
