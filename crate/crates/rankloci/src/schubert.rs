//! Exact Chow-ring calculus on Grassmannians G(k,n): Schur-basis classes,
//! Littlewood-Richardson multiplication, Chern/Segre classes of the universal
//! bundles and of bundles derived from them (dual, tensor by a line bundle,
//! Hom, Sym^2, Wedge^2), Jacobi-Trudi determinants, and integration.

use crate::combinatorics::{binomial, partitions_in_box, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rat_pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// Littlewood-Richardson coefficient c^nu_{lam,mu}, counted by backtracking
/// over skew semistandard fillings of nu/lam with content mu, filled in
/// reverse reading order under the lattice-word prefix condition.
fn lr_count(lam: &[u32], mu: &[u32], nu: &[u32]) -> i64 {
    let wl: u32 = lam.iter().sum();
    let wm: u32 = mu.iter().sum();
    let wn: u32 = nu.iter().sum();
    if wn != wl + wm || lam.len() > nu.len() {
        return 0;
    }
    let rows = nu.len();
    let lamx: Vec<u32> = (0..rows)
        .map(|i| lam.get(i).copied().unwrap_or(0))
        .collect();
    if (0..rows).any(|i| nu[i] < lamx[i]) {
        return 0;
    }
    let mut cells = Vec::with_capacity((wm as usize).max(1));
    for r in 0..rows {
        let mut c = nu[r];
        while c > lamx[r] {
            c -= 1;
            cells.push((r, c as usize));
        }
    }

    struct State<'a> {
        cells: &'a [(usize, usize)],
        mu: &'a [u32],
        lamx: &'a [u32],
        nu: &'a [u32],
        board: Vec<Vec<u32>>,
        cnt: Vec<u32>,
        total: i64,
    }
    impl State<'_> {
        fn rec(&mut self, idx: usize) {
            if idx == self.cells.len() {
                self.total += 1;
                return;
            }
            let (r, c) = self.cells[idx];
            for v in 1..=self.mu.len() as u32 {
                if self.cnt[v as usize] >= self.mu[v as usize - 1] {
                    continue;
                }
                if v >= 2 && self.cnt[v as usize] >= self.cnt[v as usize - 1] {
                    continue;
                }
                if c + 1 < self.nu[r] as usize && v > self.board[r][c + 1] {
                    continue;
                }
                if r > 0 && c >= self.lamx[r - 1] as usize && v <= self.board[r - 1][c] {
                    continue;
                }
                self.board[r][c] = v;
                self.cnt[v as usize] += 1;
                self.rec(idx + 1);
                self.cnt[v as usize] -= 1;
                self.board[r][c] = 0;
            }
        }
    }

    let ncols = nu.first().copied().unwrap_or(0) as usize;
    let mut st = State {
        cells: &cells,
        mu,
        lamx: &lamx,
        nu,
        board: vec![vec![0; ncols]; rows],
        cnt: vec![0; mu.len() + 1],
        total: 0,
    };
    st.rec(0);
    st.total
}

// basis product expanded as (basis index, coefficient) pairs
type ProductTerms = Arc<Vec<(usize, i64)>>;
type ContextCache = Mutex<HashMap<(usize, usize), Arc<GrassmannContext>>>;

/// Schur-basis model of A*(G(k,n)): partitions inside the k x (n-k) box in
/// graded-lex order, with a per-context cache of basis products.
pub struct GrassmannContext {
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    basis: Vec<Partition>,
    weights: Vec<u32>,
    index: HashMap<Partition, usize>,
    by_degree: Vec<Vec<usize>>,
    top: usize,
    pair_cache: Mutex<HashMap<(usize, usize), ProductTerms>>,
}

fn context_cache() -> &'static ContextCache {
    static CACHE: OnceLock<ContextCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl GrassmannContext {
    pub fn get(k: usize, n: usize) -> Arc<GrassmannContext> {
        assert!(k <= n, "GrassmannContext: need k <= n, got ({k},{n})");
        let mut cache = context_cache().lock().unwrap();
        cache
            .entry((k, n))
            .or_insert_with(|| Arc::new(Self::build(k, n)))
            .clone()
    }

    fn build(k: usize, n: usize) -> GrassmannContext {
        let dim = k * (n - k);
        let basis = partitions_in_box(k, (n - k) as u32);
        let weights: Vec<u32> = basis.iter().map(|p| p.weight()).collect();
        let index: HashMap<Partition, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut by_degree = vec![Vec::new(); dim + 1];
        for (i, &w) in weights.iter().enumerate() {
            by_degree[w as usize].push(i);
        }
        let top = index[&Partition::new(vec![(n - k) as u32; k])];
        GrassmannContext {
            k,
            n,
            dim,
            basis,
            weights,
            index,
            by_degree,
            top,
            pair_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn basis_product(&self, i: usize, j: usize) -> ProductTerms {
        let key = if i <= j { (i, j) } else { (j, i) };
        if let Some(v) = self.pair_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let (la, mu) = (&self.basis[key.0], &self.basis[key.1]);
        let w = (la.weight() + mu.weight()) as usize;
        let mut out = Vec::new();
        if w <= self.dim {
            for &nix in &self.by_degree[w] {
                let c = lr_count(la.parts(), mu.parts(), self.basis[nix].parts());
                if c != 0 {
                    out.push((nix, c));
                }
            }
        }
        let arc = Arc::new(out);
        self.pair_cache.lock().unwrap().insert(key, arc.clone());
        arc
    }
}

/// Class in A*(G(k,n)) in the Schur basis; only nonzero coefficients stored.
#[derive(Clone)]
pub struct ChowClass {
    ctx: Arc<GrassmannContext>,
    coeffs: BTreeMap<usize, BigRational>,
}

impl ChowClass {
    pub fn zero(ctx: &Arc<GrassmannContext>) -> Self {
        ChowClass {
            ctx: ctx.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<GrassmannContext>) -> Self {
        ChowClass::basis_element(ctx, &Partition::empty())
    }

    pub fn basis_element(ctx: &Arc<GrassmannContext>, p: &Partition) -> Self {
        let ix = ctx
            .index_of(p)
            .unwrap_or_else(|| panic!("partition {p} not in the box of G({},{})", ctx.k, ctx.n));
        let mut coeffs = BTreeMap::new();
        coeffs.insert(ix, BigRational::one());
        ChowClass {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn context(&self) -> &Arc<GrassmannContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> BigRational {
        self.ctx
            .index_of(p)
            .and_then(|ix| self.coeffs.get(&ix).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    /// Deterministic (partition, coefficient) view in graded-lex order.
    pub fn terms(&self) -> Vec<(Partition, BigRational)> {
        self.coeffs
            .iter()
            .map(|(&ix, c)| (self.ctx.basis[ix].clone(), c.clone()))
            .collect()
    }

    fn insert(coeffs: &mut BTreeMap<usize, BigRational>, ix: usize, v: BigRational) {
        if v.is_zero() {
            return;
        }
        match coeffs.entry(ix) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + v;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_context(&self, rhs: &ChowClass) {
        assert!(
            self.ctx.k == rhs.ctx.k && self.ctx.n == rhs.ctx.n,
            "context mismatch: G({},{}) vs G({},{})",
            self.ctx.k,
            self.ctx.n,
            rhs.ctx.k,
            rhs.ctx.n
        );
    }

    pub fn add(&self, rhs: &ChowClass) -> ChowClass {
        self.same_context(rhs);
        let mut coeffs = self.coeffs.clone();
        for (&ix, c) in &rhs.coeffs {
            Self::insert(&mut coeffs, ix, c.clone());
        }
        ChowClass {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &ChowClass) -> ChowClass {
        self.add(&rhs.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &BigRational) -> ChowClass {
        if s.is_zero() {
            return ChowClass::zero(&self.ctx);
        }
        let coeffs = self.coeffs.iter().map(|(&ix, c)| (ix, c * s)).collect();
        ChowClass {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn scale_int(&self, s: i64) -> ChowClass {
        self.scale(&rat(s))
    }

    pub fn mul(&self, rhs: &ChowClass) -> ChowClass {
        self.same_context(rhs);
        let mut coeffs = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                let ab = a * b;
                for &(nix, m) in self.ctx.basis_product(i, j).iter() {
                    Self::insert(&mut coeffs, nix, &ab * rat(m));
                }
            }
        }
        ChowClass {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// The weight-d graded piece.
    pub fn graded(&self, d: usize) -> ChowClass {
        let mut coeffs = BTreeMap::new();
        if d <= self.ctx.dim {
            for (&ix, c) in &self.coeffs {
                if self.ctx.weights[ix] as usize == d {
                    coeffs.insert(ix, c.clone());
                }
            }
        }
        ChowClass {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse in the truncated ring; needs constant term 1.
    pub fn inverse(&self) -> ChowClass {
        assert!(
            self.coeff(&Partition::empty()).is_one(),
            "inverse requires constant term 1"
        );
        let ctx = &self.ctx;
        let parts: Vec<ChowClass> = (0..=ctx.dim).map(|d| self.graded(d)).collect();
        let mut inv: Vec<ChowClass> = Vec::with_capacity(ctx.dim + 1);
        inv.push(ChowClass::one(ctx));
        for d in 1..=ctx.dim {
            let mut acc = ChowClass::zero(ctx);
            for i in 1..=d {
                if !parts[i].is_zero() {
                    acc = acc.sub(&parts[i].mul(&inv[d - i]));
                }
            }
            inv.push(acc);
        }
        let mut out = ChowClass::zero(ctx);
        for piece in inv {
            out = out.add(&piece);
        }
        out
    }

    /// Coefficient of the full-box class, i.e. the degree against [G(k,n)].
    pub fn integrate(&self) -> BigRational {
        self.coeffs
            .get(&self.ctx.top)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn integrate_i64(&self) -> i64 {
        let v = self.integrate();
        assert!(v.is_integer(), "non-integer integral {v}");
        let b = v.to_integer();
        i64::try_from(&b).unwrap_or_else(|_| panic!("integral {b} overflows i64"))
    }
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.k == other.ctx.k && self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&ix, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} * sigma{}", c, self.ctx.basis[ix])?;
        }
        Ok(())
    }
}

/// Bundle presented by rank and total Chern class; the rank bound c_i = 0 for
/// i > rank holds for the concrete bundles but is not imposed on virtual ones.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalBundle {
    pub rank: i64,
    pub total: ChowClass,
}

pub fn chern_s_dual(ctx: &Arc<GrassmannContext>) -> FormalBundle {
    let mut total = ChowClass::zero(ctx);
    for i in 0..=ctx.k {
        let p = Partition::new(vec![1; i]);
        if ctx.index_of(&p).is_some() {
            total = total.add(&ChowClass::basis_element(ctx, &p));
        }
    }
    FormalBundle {
        rank: ctx.k as i64,
        total,
    }
}

/// c_i(E dual) = (-1)^i c_i(E): negate the odd graded pieces.
pub fn dual(b: &FormalBundle) -> FormalBundle {
    let ctx = b.total.context();
    let mut total = ChowClass::zero(ctx);
    for d in 0..=ctx.dim {
        let piece = b.total.graded(d);
        total = total.add(&if d % 2 == 1 {
            piece.scale_int(-1)
        } else {
            piece
        });
    }
    FormalBundle {
        rank: b.rank,
        total,
    }
}

pub fn chern_s(ctx: &Arc<GrassmannContext>) -> FormalBundle {
    dual(&chern_s_dual(ctx))
}

pub fn chern_q(ctx: &Arc<GrassmannContext>) -> FormalBundle {
    FormalBundle {
        rank: (ctx.n - ctx.k) as i64,
        total: chern_s(ctx).total.inverse(),
    }
}

/// Segre class: the inverse of the total Chern class.
pub fn segre(b: &FormalBundle) -> ChowClass {
    b.total.inverse()
}

pub fn top_chern(b: &FormalBundle) -> ChowClass {
    assert!(b.rank >= 0, "top_chern of negative-rank bundle");
    b.total.graded(b.rank as usize)
}

/// Newton identities: power sums from Chern classes, one homogeneous piece
/// per degree up to dim G.
fn p_from_c(b: &FormalBundle) -> Vec<ChowClass> {
    let ctx = b.total.context();
    let cap = ctx.dim;
    let c: Vec<ChowClass> = (0..=cap).map(|d| b.total.graded(d)).collect();
    let mut p: Vec<ChowClass> = vec![ChowClass::zero(ctx)];
    for m in 1..=cap {
        let sign = if (m - 1) % 2 == 0 { 1 } else { -1 };
        let mut acc = c[m].scale_int(sign * m as i64);
        for i in 1..m {
            let s = if (i - 1) % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&c[i].mul(&p[m - i]).scale_int(s));
        }
        p.push(acc);
    }
    p
}

fn c_from_p(ctx: &Arc<GrassmannContext>, p: &[ChowClass], rank: i64) -> FormalBundle {
    let cap = ctx.dim;
    let mut c: Vec<ChowClass> = vec![ChowClass::one(ctx)];
    for m in 1..=cap {
        let mut acc = ChowClass::zero(ctx);
        for i in 1..=m {
            let s = if (i - 1) % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&p[i].mul(&c[m - i]).scale_int(s));
        }
        c.push(acc.scale(&(rat(1) / rat(m as i64))));
    }
    let mut total = ChowClass::zero(ctx);
    for piece in c {
        total = total.add(&piece);
    }
    FormalBundle { rank, total }
}

/// c(Sym^2 E) through power sums: p_m(Sym^2 E) = (2^{m-1} + r) p_m(E)
/// + (1/2) sum_t binom(m,t) p_t(E) p_{m-t}(E).
pub fn chern_sym2(b: &FormalBundle) -> FormalBundle {
    let ctx = b.total.context().clone();
    let r = b.rank;
    let p = p_from_c(b);
    let cap = ctx.dim;
    let mut q: Vec<ChowClass> = vec![ChowClass::zero(&ctx)];
    for m in 1..=cap {
        let mut acc = p[m].scale(&(rat_pow2(m - 1) + rat(r)));
        for t in 1..m {
            let w = rat(binomial(m as i64, t as i64)) / rat(2);
            acc = acc.add(&p[t].mul(&p[m - t]).scale(&w));
        }
        q.push(acc);
    }
    c_from_p(&ctx, &q, r * (r + 1) / 2)
}

/// c(Wedge^2 E): p_m(Wedge^2 E) = (r - 2^{m-1}) p_m(E)
/// + (1/2) sum_t binom(m,t) p_t(E) p_{m-t}(E).
pub fn chern_wedge2(b: &FormalBundle) -> FormalBundle {
    let ctx = b.total.context().clone();
    let r = b.rank;
    let p = p_from_c(b);
    let cap = ctx.dim;
    let mut q: Vec<ChowClass> = vec![ChowClass::zero(&ctx)];
    for m in 1..=cap {
        let mut acc = p[m].scale(&(rat(r) - rat_pow2(m - 1)));
        for t in 1..m {
            let w = rat(binomial(m as i64, t as i64)) / rat(2);
            acc = acc.add(&p[t].mul(&p[m - t]).scale(&w));
        }
        q.push(acc);
    }
    c_from_p(&ctx, &q, r * (r - 1) / 2)
}

/// c(A dual tensor B): p_m = (-1)^m r_B p_m(A) + r_A p_m(B)
/// + sum_t binom(m,t) (-1)^{m-t} p_{m-t}(A) p_t(B).
pub fn chern_hom(a: &FormalBundle, b: &FormalBundle) -> FormalBundle {
    a.total.same_context(&b.total);
    let ctx = a.total.context().clone();
    let (ra, rb) = (a.rank, b.rank);
    let pa = p_from_c(a);
    let pb = p_from_c(b);
    let cap = ctx.dim;
    let mut q: Vec<ChowClass> = vec![ChowClass::zero(&ctx)];
    for m in 1..=cap {
        let sm = if m % 2 == 0 { 1 } else { -1 };
        let mut acc = pa[m].scale_int(sm * rb);
        acc = acc.add(&pb[m].scale_int(ra));
        for t in 1..m {
            let s = if (m - t) % 2 == 0 { 1 } else { -1 };
            let w = s * binomial(m as i64, t as i64);
            acc = acc.add(&pa[m - t].mul(&pb[t]).scale_int(w));
        }
        q.push(acc);
    }
    c_from_p(&ctx, &q, ra * rb)
}

/// Direct sum of e copies: total Chern class to the e-th power.
pub fn bundle_sum_pow(b: &FormalBundle, e: usize) -> FormalBundle {
    let ctx = b.total.context();
    let mut total = ChowClass::one(ctx);
    for _ in 0..e {
        total = total.mul(&b.total);
    }
    FormalBundle {
        rank: b.rank * e as i64,
        total,
    }
}

/// c_k(E tensor L) = sum_i binom(e-i, k-i) c_i(E) c_1(L)^{k-i} for a line L.
pub fn chern_tensor_line(e: &FormalBundle, l: &FormalBundle) -> FormalBundle {
    assert_eq!(l.rank, 1, "chern_tensor_line needs a rank-1 twist");
    let ctx = e.total.context().clone();
    let c1 = l.total.graded(1);
    let mut c1pow: Vec<ChowClass> = vec![ChowClass::one(&ctx)];
    let kmax = (e.rank.max(0) as usize).min(ctx.dim);
    for _ in 1..=kmax {
        c1pow.push(c1pow.last().unwrap().mul(&c1));
    }
    let mut total = ChowClass::zero(&ctx);
    for k in 0..=kmax {
        for i in 0..=k {
            let w = binomial(e.rank - i as i64, (k - i) as i64);
            if w != 0 {
                total = total.add(&e.total.graded(i).mul(&c1pow[k - i]).scale_int(w));
            }
        }
    }
    FormalBundle {
        rank: e.rank,
        total,
    }
}

/// Jacobi-Trudi determinant Delta_lambda(c(E)) = det[ c_{lambda_i + j - i}(E) ].
pub fn delta_schur(la: &Partition, b: &FormalBundle) -> ChowClass {
    let ctx = b.total.context().clone();
    let l = la.len();
    let ent: Vec<Vec<ChowClass>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let d = la.part(i) as i64 + j as i64 - i as i64;
                    if d < 0 {
                        ChowClass::zero(&ctx)
                    } else {
                        b.total.graded(d as usize)
                    }
                })
                .collect()
        })
        .collect();

    fn det(
        ctx: &Arc<GrassmannContext>,
        ent: &[Vec<ChowClass>],
        rows: &[usize],
        cols: &[usize],
    ) -> ChowClass {
        if rows.is_empty() {
            return ChowClass::one(ctx);
        }
        let mut out = ChowClass::zero(ctx);
        let i = rows[0];
        for (idx, &j) in cols.iter().enumerate() {
            if ent[i][j].is_zero() {
                continue;
            }
            let mut sub_cols = cols.to_vec();
            sub_cols.remove(idx);
            let minor = det(ctx, ent, &rows[1..], &sub_cols);
            let term = ent[i][j].mul(&minor);
            out = out.add(&if idx % 2 == 1 {
                term.scale_int(-1)
            } else {
                term
            });
        }
        out
    }

    let rows: Vec<usize> = (0..l).collect();
    det(&ctx, &ent, &rows, &rows)
}

/// extra * ( [X] - c_top(E dual)/c(E dual) ): the pushforward of
/// c(E tensor O(1))/c(O(1)) from P(E) down to X, times a carried factor.
pub fn pushforward_projbundle_ratio(e: &FormalBundle, extra: &ChowClass) -> ChowClass {
    let ctx = e.total.context();
    let ed = dual(e);
    let corr = top_chern(&ed).mul(&segre(&ed));
    extra.mul(&ChowClass::one(ctx).sub(&corr))
}

/// Context lookup guarded by the configured dimension budget.
pub fn context_within_budget(
    k: i64,
    n: i64,
    budget: usize,
) -> crate::Result<Arc<GrassmannContext>> {
    assert!(0 <= k && k <= n);
    let dim = (k * (n - k)) as usize;
    if dim > budget {
        return Err(crate::Error::BudgetExceeded {
            k: k as usize,
            n: n as usize,
            dim,
            budget,
        });
    }
    Ok(GrassmannContext::get(k as usize, n as usize))
}

/// chi(G(k,n)) as the integral of c_top of the tangent bundle Hom(S,Q).
pub fn chi_grassmannian(k: usize, n: usize) -> i64 {
    let ctx = GrassmannContext::get(k, n);
    let t = chern_hom(&chern_s(&ctx), &chern_q(&ctx));
    t.total.graded(ctx.dim).integrate_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(ctx: &Arc<GrassmannContext>, parts: &[u32]) -> ChowClass {
        ChowClass::basis_element(ctx, &Partition::new(parts.to_vec()))
    }

    /// Pieri rule as an independent oracle: sigma_la * sigma_(m) expands over
    /// horizontal-strip extensions of la.
    fn pieri(ctx: &Arc<GrassmannContext>, la: &Partition, m: u32) -> ChowClass {
        let mut out = ChowClass::zero(ctx);
        for nu in ctx.basis() {
            if nu.weight() != la.weight() + m {
                continue;
            }
            let rows = nu.len().max(la.len());
            let strip = (0..rows).all(|i| {
                nu.part(i) >= la.part(i) && (i + 1 >= rows || la.part(i) >= nu.part(i + 1))
            });
            if strip {
                out = out.add(&ChowClass::basis_element(ctx, nu));
            }
        }
        out
    }

    #[test]
    fn lr_matches_pieri() {
        for (k, n) in [(2, 5), (3, 6)] {
            let ctx = GrassmannContext::get(k, n);
            for la in ctx.basis() {
                for m in 1..=3u32 {
                    if m as usize > n - k {
                        continue;
                    }
                    let prod = ChowClass::basis_element(&ctx, la).mul(&sig(&ctx, &[m]));
                    assert_eq!(prod, pieri(&ctx, la, m), "pieri mismatch at {la} * ({m})");
                }
            }
        }
    }

    #[test]
    fn multiply_spot_values() {
        let ctx = GrassmannContext::get(2, 4);
        let s1 = sig(&ctx, &[1]);
        assert_eq!(s1.mul(&s1), sig(&ctx, &[2]).add(&sig(&ctx, &[1, 1])));
        let x = sig(&ctx, &[2, 1]).add(&sig(&ctx, &[1]).scale_int(3));
        assert_eq!(ChowClass::one(&ctx).mul(&x), x);
        assert!(sig(&ctx, &[2, 2]).mul(&s1).is_zero());
        assert_eq!(s1.mul(&s1).mul(&s1).mul(&s1).integrate_i64(), 2);
        assert_eq!(sig(&ctx, &[2, 2]).integrate_i64(), 1);
    }

    #[test]
    fn whitney_and_universal_bundles() {
        for n in 0..=6usize {
            for k in 0..=n {
                let ctx = GrassmannContext::get(k, n);
                let s = chern_s(&ctx);
                let q = chern_q(&ctx);
                assert_eq!(s.total.mul(&q.total), ChowClass::one(&ctx));
            }
        }
        let ctx = GrassmannContext::get(2, 4);
        assert_eq!(chern_s_dual(&ctx).total.graded(1), sig(&ctx, &[1]));
        assert_eq!(chern_q(&ctx).total.graded(2), sig(&ctx, &[2]));
        assert_eq!(
            segre(&chern_s_dual(&ctx)).graded(1),
            sig(&ctx, &[1]).scale_int(-1)
        );
    }

    #[test]
    fn dual_is_an_involution() {
        let ctx = GrassmannContext::get(2, 5);
        let q = chern_q(&ctx);
        assert_eq!(dual(&dual(&q)), q);
        let sd = chern_s_dual(&ctx);
        assert_eq!(dual(&chern_s(&ctx)), sd);
    }

    #[test]
    fn tangent_bundle_of_g24() {
        let ctx = GrassmannContext::get(2, 4);
        let t = chern_hom(&chern_s(&ctx), &chern_q(&ctx));
        let want: Vec<(Vec<u32>, i64)> = vec![
            (vec![], 1),
            (vec![1], 4),
            (vec![1, 1], 7),
            (vec![2], 7),
            (vec![2, 1], 12),
            (vec![2, 2], 6),
        ];
        for (parts, c) in want {
            assert_eq!(
                t.total.coeff(&Partition::new(parts.clone())),
                rat(c),
                "at {parts:?}"
            );
        }
        assert_eq!(t.rank, 4);
    }

    #[test]
    fn euler_characteristics() {
        for n in 0..=7usize {
            for k in 0..=n {
                assert_eq!(
                    chi_grassmannian(k, n),
                    binomial(n as i64, k as i64),
                    "G({k},{n})"
                );
            }
        }
    }

    #[test]
    fn hom_first_chern() {
        let ctx = GrassmannContext::get(2, 4);
        let t = chern_hom(&chern_s(&ctx), &chern_q(&ctx));
        assert_eq!(t.total.graded(1), sig(&ctx, &[1]).scale_int(4));
    }

    #[test]
    fn hom_by_line_matches_tensor_formula() {
        let ctx = GrassmannContext::get(1, 4);
        let s = chern_s(&ctx);
        let q = chern_q(&ctx);
        let lhs = chern_hom(&s, &q);
        let rhs = chern_tensor_line(&q, &dual(&s));
        assert_eq!(lhs.total, rhs.total);
        assert_eq!(lhs.rank, rhs.rank);
    }

    #[test]
    fn tensor_line_small_cases() {
        let ctx = GrassmannContext::get(2, 5);
        let sd = chern_s_dual(&ctx);
        let det = FormalBundle {
            rank: 1,
            total: ChowClass::one(&ctx).add(&sig(&ctx, &[1])),
        };
        let trivial = FormalBundle {
            rank: 1,
            total: ChowClass::one(&ctx),
        };
        assert_eq!(chern_tensor_line(&sd, &trivial).total, sd.total);
        let line = FormalBundle {
            rank: 1,
            total: ChowClass::one(&ctx).add(&sig(&ctx, &[1]).scale_int(2)),
        };
        let twisted = chern_tensor_line(&line, &det);
        assert_eq!(twisted.total.graded(1), sig(&ctx, &[1]).scale_int(3));
        // rank 2: c2(E ts L) = c2 + c1(E)c1(L) + c1(L)^2
        let e2 = chern_tensor_line(&sd, &det);
        let want = sd
            .total
            .graded(2)
            .add(&sd.total.graded(1).mul(&det.total.graded(1)))
            .add(&det.total.graded(1).mul(&det.total.graded(1)));
        assert_eq!(e2.total.graded(2), want);
    }

    #[test]
    fn sym2_wedge2_small_ranks() {
        let ctx = GrassmannContext::get(2, 5);
        // rank 1: Sym^2 of a line is its square
        let line = FormalBundle {
            rank: 1,
            total: ChowClass::one(&ctx).add(&sig(&ctx, &[1])),
        };
        let s2 = chern_sym2(&line);
        assert_eq!(s2.rank, 1);
        assert_eq!(
            s2.total,
            ChowClass::one(&ctx).add(&sig(&ctx, &[1]).scale_int(2))
        );
        // rank 2: Wedge^2 is the determinant line
        let sd = chern_s_dual(&ctx);
        let w2 = chern_wedge2(&sd);
        assert_eq!(w2.rank, 1);
        assert_eq!(w2.total, ChowClass::one(&ctx).add(&sig(&ctx, &[1])));
        // rank 2: c(Sym^2 E) = 1 + 3c1 + (2c1^2 + 4c2) + 4c1c2
        let s2 = chern_sym2(&sd);
        let c1 = sd.total.graded(1);
        let c2 = sd.total.graded(2);
        assert_eq!(s2.rank, 3);
        assert_eq!(s2.total.graded(1), c1.scale_int(3));
        assert_eq!(
            s2.total.graded(2),
            c1.mul(&c1).scale_int(2).add(&c2.scale_int(4))
        );
        assert_eq!(s2.total.graded(3), c1.mul(&c2).scale_int(4));
    }

    #[test]
    fn rank_bounds_on_derived_bundles() {
        for n in 2..=6usize {
            for k in 0..n {
                let ctx = GrassmannContext::get(k, n);
                let q = chern_q(&ctx);
                for (b, label) in [(chern_sym2(&q), "sym2"), (chern_wedge2(&q), "wedge2")] {
                    for d in (b.rank.max(0) as usize + 1)..=ctx.dim {
                        assert!(
                            b.total.graded(d).is_zero(),
                            "c_{d}({label} Q) != 0 on G({k},{n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn poincare_duality_g24() {
        let ctx = GrassmannContext::get(2, 4);
        for la in ctx.basis() {
            for mu in ctx.basis() {
                if la.weight() + mu.weight() != ctx.dim as u32 {
                    continue;
                }
                let v = ChowClass::basis_element(&ctx, la)
                    .mul(&ChowClass::basis_element(&ctx, mu))
                    .integrate_i64();
                let dual_pair = *mu == la.complement_in_box(ctx.k, (ctx.n - ctx.k) as u32);
                assert_eq!(v, i64::from(dual_pair), "pairing {la} . {mu}");
            }
        }
    }

    #[test]
    fn giambelli_both_forms() {
        for (k, n) in [(2, 5), (3, 6)] {
            let ctx = GrassmannContext::get(k, n);
            let q = chern_q(&ctx);
            let sd = chern_s_dual(&ctx);
            for la in ctx.basis() {
                assert_eq!(
                    delta_schur(la, &q),
                    ChowClass::basis_element(&ctx, la),
                    "h-form Giambelli at {la}"
                );
                let conj = la.conjugate();
                assert_eq!(
                    delta_schur(&conj, &sd),
                    ChowClass::basis_element(&ctx, la),
                    "e-form Giambelli at {la}"
                );
            }
        }
    }

    #[test]
    fn delta_schur_single_row_is_chern() {
        let ctx = GrassmannContext::get(2, 5);
        let q = chern_q(&ctx);
        for m in 0..=3u32 {
            let la = Partition::new(if m == 0 { vec![] } else { vec![m] });
            assert_eq!(delta_schur(&la, &q), q.total.graded(m as usize));
        }
    }

    // Splitting-principle oracle: expand the universal product over formal
    // Chern roots, rewrite in elementary symmetric polynomials, substitute
    // e_i -> c_i(E), and compare against the power-sum route.
    mod universal {
        use super::*;

        type MP = BTreeMap<Vec<u32>, i64>;

        fn mp_mul(a: &MP, b: &MP, cap: u32) -> MP {
            let mut out = MP::new();
            for (ea, ca) in a {
                let da: u32 = ea.iter().sum();
                for (eb, cb) in b {
                    let db: u32 = eb.iter().sum();
                    if da + db > cap {
                        continue;
                    }
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    let c = out.entry(e).or_insert(0);
                    *c += ca * cb;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        }

        fn mp_one(r: usize) -> MP {
            let mut m = MP::new();
            m.insert(vec![0; r], 1);
            m
        }

        fn elem_sym(r: usize, i: usize) -> MP {
            let mut out = MP::new();
            fn rec(out: &mut MP, r: usize, i: usize, start: usize, chosen: &mut Vec<usize>) {
                if chosen.len() == i {
                    let mut e = vec![0u32; r];
                    for &v in chosen.iter() {
                        e[v] = 1;
                    }
                    out.insert(e, 1);
                    return;
                }
                for v in start..r {
                    chosen.push(v);
                    rec(out, r, i, v + 1, chosen);
                    chosen.pop();
                }
            }
            rec(&mut out, r, i, 0, &mut Vec::new());
            out
        }

        /// Rewrite a symmetric polynomial as a polynomial in e_1..e_r by
        /// repeatedly clearing the lex-leading monomial.
        fn reduce_to_elementary(mut p: MP, r: usize, cap: u32) -> BTreeMap<Vec<u32>, i64> {
            let mut out = BTreeMap::new();
            while let Some((lead, &c)) = p.iter().next_back().map(|(k, v)| (k.clone(), v)) {
                assert!(
                    lead.windows(2).all(|w| w[0] >= w[1]),
                    "input not symmetric: leading {lead:?}"
                );
                let mut emono = vec![0u32; r];
                for i in 0..r {
                    let next = if i + 1 < r { lead[i + 1] } else { 0 };
                    emono[i] = lead[i] - next;
                }
                let mut expansion = mp_one(r);
                for (i, &e) in emono.iter().enumerate() {
                    for _ in 0..e {
                        expansion = mp_mul(&expansion, &elem_sym(r, i + 1), cap);
                    }
                }
                for (k, v) in &expansion {
                    let entry = p.entry(k.clone()).or_insert(0);
                    *entry -= c * v;
                }
                p.retain(|_, v| *v != 0);
                out.insert(emono, c);
            }
            out
        }

        fn substitute(
            reduced: &BTreeMap<Vec<u32>, i64>,
            e: &FormalBundle,
            cap: usize,
        ) -> ChowClass {
            let ctx = e.total.context();
            let mut out = ChowClass::zero(ctx);
            for (emono, &c) in reduced {
                let deg: u32 = emono
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| (i as u32 + 1) * x)
                    .sum();
                if deg as usize > cap {
                    continue;
                }
                let mut term = ChowClass::one(ctx);
                for (i, &x) in emono.iter().enumerate() {
                    for _ in 0..x {
                        term = term.mul(&e.total.graded(i + 1));
                    }
                }
                out = out.add(&term.scale_int(c));
            }
            out
        }

        fn roots_product(r: usize, pairs: &[(usize, usize)], cap: u32) -> MP {
            let mut acc = mp_one(r);
            for &(i, j) in pairs {
                let mut f = mp_one(r);
                let mut xi = vec![0u32; r];
                xi[i] += 1;
                f.insert(xi.clone(), *f.get(&xi).unwrap_or(&0) + 1);
                if i == j {
                    *f.get_mut(&xi).unwrap() += 1;
                } else {
                    let mut xj = vec![0u32; r];
                    xj[j] = 1;
                    f.insert(xj, 1);
                }
                acc = mp_mul(&acc, &f, cap);
            }
            acc
        }

        #[test]
        fn sym2_matches_chern_roots() {
            let ctx = GrassmannContext::get(2, 5);
            let q = chern_q(&ctx);
            let r = 3usize;
            let cap = ctx.dim as u32;
            let pairs: Vec<(usize, usize)> =
                (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
            let reduced = reduce_to_elementary(roots_product(r, &pairs, cap), r, cap);
            let want = substitute(&reduced, &q, ctx.dim);
            assert_eq!(chern_sym2(&q).total, want);
        }

        #[test]
        fn wedge2_matches_chern_roots() {
            let ctx = GrassmannContext::get(2, 5);
            let q = chern_q(&ctx);
            let r = 3usize;
            let cap = ctx.dim as u32;
            let pairs: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                .collect();
            let reduced = reduce_to_elementary(roots_product(r, &pairs, cap), r, cap);
            let want = substitute(&reduced, &q, ctx.dim);
            assert_eq!(chern_wedge2(&q).total, want);
        }
    }

    // The projective-bundle pushforward identity, checked against an explicit
    // xi-polynomial model of P(E) with p_*(xi^{e-1+i}) = s_i(E).
    #[test]
    fn segre_pushforward_lemma_on_g13() {
        let ctx = GrassmannContext::get(1, 3);
        let e = dual(&chern_q(&ctx));
        let erank = e.rank as usize;
        let maxpow = erank + ctx.dim;
        // classes on P(E) as vectors of ChowClass coefficients of xi^j
        let mut ratio: Vec<ChowClass> = vec![ChowClass::zero(&ctx); maxpow + 1];
        // c(E ts O(1))/c(O(1)) = c_e(E)/(1+xi) + sum_{k>=1} c_{e-k}(E)(1+xi)^{k-1}
        for (j, r) in ratio.iter_mut().enumerate() {
            // expansion of c_e(E)/(1+xi): (-1)^j c_e(E) xi^j
            let s = if j % 2 == 0 { 1 } else { -1 };
            *r = r.add(&e.total.graded(erank).scale_int(s));
        }
        for k in 1..=erank {
            let ck = e.total.graded(erank - k);
            for (j, r) in ratio.iter_mut().enumerate().take(k) {
                let w = binomial(k as i64 - 1, j as i64);
                *r = r.add(&ck.scale_int(w));
            }
        }
        // pushforward: xi^{e-1+i} -> s_i(E), lower powers die
        let se = segre(&e);
        let mut lhs = ChowClass::zero(&ctx);
        for (j, coeff) in ratio.iter().enumerate() {
            if j + 1 >= erank {
                let i = j + 1 - erank;
                if i <= ctx.dim {
                    lhs = lhs.add(&coeff.mul(&se.graded(i)));
                }
            }
        }
        let ed = dual(&e);
        let rhs = ChowClass::one(&ctx).sub(&top_chern(&ed).mul(&segre(&ed)));
        assert_eq!(lhs, rhs);
        assert_eq!(pushforward_projbundle_ratio(&e, &ChowClass::one(&ctx)), rhs);
    }

    #[test]
    fn pushforward_ratio_trivial_bundle() {
        let ctx = GrassmannContext::get(2, 5);
        let trivial = FormalBundle {
            rank: 2,
            total: ChowClass::one(&ctx),
        };
        let extra = sig(&ctx, &[2, 1]).add(&ChowClass::one(&ctx));
        assert_eq!(pushforward_projbundle_ratio(&trivial, &extra), extra);
    }

    fn class_strategy(ctx: Arc<GrassmannContext>) -> impl Strategy<Value = ChowClass> {
        let len = ctx.basis().len();
        prop::collection::vec((0..len, -9i64..=9), 0..6).prop_map(move |terms| {
            let mut out = ChowClass::zero(&ctx);
            for (ix, c) in terms {
                let p = ctx.basis()[ix].clone();
                out = out.add(&ChowClass::basis_element(&ctx, &p).scale_int(c));
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws_g25(
            a in class_strategy(GrassmannContext::get(2, 5)),
            b in class_strategy(GrassmannContext::get(2, 5)),
            c in class_strategy(GrassmannContext::get(2, 5)),
        ) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }
    }
}
