//! Recursive-orbit machinery shared by all families: the Sm-table to
//! Euler-obstruction-table recursion and its inverse, the duality lemma on
//! obstruction tables, sectional Euler characteristics, and the recovery of
//! obstructions from sectional data.
//!
//! Index conventions: levels and strata are 1-based everywhere; e_{k,m} is
//! the local Euler obstruction of the closure of orbit k evaluated on orbit
//! m, with e_{k,k} = 1, stored for 1 <= k <= m <= size.

use crate::combinatorics::decreasing_flags;
use std::collections::BTreeMap;

/// A recursive orbit family: enough data to run the table machinery.
/// `n` is the internal level (consecutive: every level n has strata 1..n-1
/// projectively, with n playing the role of the origin).
pub trait OrbitFamilySpec: Sync {
    fn name(&self) -> &'static str;
    fn ambient_dim(&self, n: i64) -> i64;
    fn orbit_dim(&self, n: i64, k: i64) -> i64;
    fn dual_index(&self, n: i64, k: i64) -> i64 {
        n - k
    }
    /// chi of the projectivized open stratum P(O_{n,k}).
    fn open_chi(&self, n: i64, k: i64) -> i64;
    fn sm(&self, n: i64, k: i64) -> i64;
}

/// Upper-unitriangular integer matrix, 1-based accessors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangularTable {
    size: usize,
    entries: Vec<Vec<i64>>,
}

impl TriangularTable {
    pub fn identity(size: usize) -> TriangularTable {
        let entries = (0..size)
            .map(|i| (0..size).map(|j| i64::from(i == j)).collect())
            .collect();
        TriangularTable { size, entries }
    }

    pub fn from_rows(entries: Vec<Vec<i64>>) -> TriangularTable {
        let size = entries.len();
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), size, "ragged table");
            assert_eq!(row[i], 1, "diagonal entry ({},{}) must be 1", i + 1, i + 1);
            for (j, &v) in row.iter().enumerate().take(i) {
                assert_eq!(v, 0, "below-diagonal entry ({},{}) must be 0", i + 1, j + 1);
            }
        }
        TriangularTable { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(1 <= i && i <= self.size && 1 <= j && j <= self.size);
        self.entries[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(
            i < j && j <= self.size,
            "only strictly-upper entries are writable"
        );
        self.entries[i - 1][j - 1] = v;
    }

    /// Leading principal block of the given size.
    pub fn leading(&self, size: usize) -> TriangularTable {
        assert!(size <= self.size);
        let entries = (0..size)
            .map(|i| self.entries[i][..size].to_vec())
            .collect();
        TriangularTable { size, entries }
    }

    /// Exact integer inverse by back-substitution; verifies E*A = I.
    pub fn inverse(&self) -> TriangularTable {
        let sz = self.size;
        let mut a = TriangularTable::identity(sz);
        for i in 0..sz {
            for j in i + 1..sz {
                let s: i64 = (i..j).map(|t| a.entries[i][t] * self.entries[t][j]).sum();
                a.entries[i][j] = -s;
            }
        }
        for i in 0..sz {
            for j in 0..sz {
                let s: i64 = (0..sz).map(|t| self.entries[i][t] * a.entries[t][j]).sum();
                assert_eq!(s, i64::from(i == j), "inverse check failed at ({i},{j})");
            }
        }
        a
    }
}

/// Widest flag the cross-check enumerates; 2^22 chains per entry at most.
const FLAG_CROSSCHECK_MAX_WIDTH: i64 = 22;

/// Euler obstruction table from the Sm data: e_{k,m} = sum_{i=k}^{m-1}
/// Sm_{m,i} e_{k,i}, base e_{k,k} = 1. Every entry narrow enough is
/// cross-computed as the sum over decreasing flags m > mu_1 > ... > k of
/// products Sm_{m,mu_1} Sm_{mu_1,mu_2} ... and asserted equal; a mismatch
/// means the family's Sm data is inconsistent.
pub fn euler_from_sm(spec: &dyn OrbitFamilySpec, n: i64) -> TriangularTable {
    assert!(n >= 1);
    let sz = n as usize;
    let mut t = TriangularTable::identity(sz);
    for m in 1..=n {
        for k in (1..m).rev() {
            let v: i64 = (k..m)
                .map(|i| spec.sm(m, i) * t.get(k as usize, i as usize))
                .sum();
            t.set(k as usize, m as usize, v);
        }
    }
    for m in 1..=n {
        for k in 1..m {
            if m - k - 1 > FLAG_CROSSCHECK_MAX_WIDTH {
                continue;
            }
            let mut tot = 0;
            for flag in decreasing_flags(m, k + 1) {
                let mut chain = vec![m];
                chain.extend_from_slice(flag.entries());
                chain.push(k);
                let prod: i64 = chain.windows(2).map(|w| spec.sm(w[0], w[1])).product();
                tot += prod;
            }
            assert_eq!(
                tot,
                t.get(k as usize, m as usize),
                "{}: flag sum disagrees with recursion at ({k},{m})",
                spec.name()
            );
        }
    }
    t
}

/// Recover Sm_{m,k} for 2 <= m <= size, 1 <= k < m from an obstruction
/// table: Sm_{m,k} = sum_r a^m_r e_{k,r} with the a^m_r read off the rows of
/// the inverse table (its leading blocks are the level-m inverses).
pub fn sm_from_euler(t: &TriangularTable) -> BTreeMap<(i64, i64), i64> {
    let a = t.inverse();
    let mut out = BTreeMap::new();
    for m in 2..=t.size() {
        for k in 1..m {
            let v: i64 = (k..m).map(|r| a.get(k, r) * t.get(r, m)).sum();
            out.insert((m as i64, k as i64), v);
        }
    }
    out
}

/// (-1)^{d_{n,k} + d_{n,n-k} + l_n}, the sign attached to row k of the
/// sectional right-hand side.
pub fn sigma_sign(spec: &dyn OrbitFamilySpec, n: i64, k: i64) -> i64 {
    let e = spec.orbit_dim(n, k) + spec.orbit_dim(n, spec.dual_index(n, k)) + spec.ambient_dim(n);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn dual_entry_sign(spec: &dyn OrbitFamilySpec, i: i64, j: i64) -> i64 {
    // parity of l_j + d'_{j,i} - d_{j,i} with projective dimensions
    let e = spec.ambient_dim(j) + (spec.orbit_dim(j, j - i) - 1) + (spec.orbit_dim(j, i) - 1);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Dual-family obstruction table via the duality lemma:
/// e'_{i,j} = (-1)^{l_j + d'_{j,i} - d_{j,i}} e_{j-i,j}.
pub fn dual_euler(t: &TriangularTable, spec: &dyn OrbitFamilySpec) -> TriangularTable {
    let sz = t.size();
    let mut out = TriangularTable::identity(sz);
    for j in 2..=sz {
        for i in 1..j {
            let s = dual_entry_sign(spec, i as i64, j as i64);
            out.set(i, j, s * t.get(j - i, j));
        }
    }
    out
}

/// Sectional Euler characteristics chi_{k,r} = chi(P(closure of orbit k)
/// cut by a hyperplane dual to a point of orbit r), plus the generic column
/// chi_{k,0} = chi(S_k) - Sm(S_k).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionalTable {
    n: i64,
    chi0: Vec<i64>,
    beta: Vec<Vec<i64>>,
}

impl SectionalTable {
    pub fn level(&self) -> i64 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.chi0.len()
    }

    /// chi_{k,r}; r = 0 is the generic column.
    pub fn chi(&self, k: i64, r: i64) -> i64 {
        let k = k as usize;
        assert!(1 <= k && k <= self.size() && 0 <= r && r < self.n);
        if r == 0 {
            self.chi0[k - 1]
        } else {
            self.beta[k - 1][r as usize - 1] + self.chi0[k - 1]
        }
    }

    pub fn beta(&self) -> &[Vec<i64>] {
        &self.beta
    }
}

/// The sectional theorem as a matrix equation: E beta = H with
/// H_{k,r} = sigma(n,k) e'_{n-k,r} and beta_{k,r} = chi_{k,r} - chi_{k,0}.
/// `dual_e` is the dual family's obstruction table (size >= n-1); for the
/// reflective families it comes from `dual_euler`.
pub fn sectional_chi(
    spec: &dyn OrbitFamilySpec,
    dual_e: &TriangularTable,
    n: i64,
) -> SectionalTable {
    assert!(n >= 2);
    let sz = (n - 1) as usize;
    assert!(dual_e.size() >= sz, "dual table too small for level {n}");
    let e = euler_from_sm(spec, n - 1);
    let a = e.inverse();
    let h: Vec<Vec<i64>> = (1..n)
        .map(|k| {
            (1..n)
                .map(|r| sigma_sign(spec, n, k) * dual_e.get((n - k) as usize, r as usize))
                .collect()
        })
        .collect();
    let beta: Vec<Vec<i64>> = (0..sz)
        .map(|i| {
            (0..sz)
                .map(|j| (0..sz).map(|t| a.get(i + 1, t + 1) * h[t][j]).sum())
                .collect()
        })
        .collect();
    let chi0: Vec<i64> = (1..n)
        .map(|k| spec.open_chi(n, k) - spec.sm(n, k))
        .collect();
    SectionalTable { n, chi0, beta }
}

/// Exact check that the beta matrices of a dual pair multiply to the
/// identity.
pub fn verify_beta_inverse(s: &SectionalTable, s_dual: &SectionalTable) -> bool {
    let sz = s.size();
    if s_dual.size() != sz {
        return false;
    }
    for i in 0..sz {
        for j in 0..sz {
            let v: i64 = (0..sz).map(|t| s.beta[i][t] * s_dual.beta[t][j]).sum();
            if v != i64::from(i == j) {
                return false;
            }
        }
    }
    true
}

/// Recover the obstruction table from sectional data, level by level: for
/// each k the vector x = beta^T w (w assembled from already-recovered rows)
/// must read 0,...,0,1,e_{k,k+1},...  A pattern violation means the
/// sectional table is inconsistent.
pub fn euler_from_sectional(
    spec: &dyn OrbitFamilySpec,
    s: &SectionalTable,
    n: i64,
) -> TriangularTable {
    assert_eq!(s.level(), n);
    let sz = (n - 1) as usize;
    let mut e = TriangularTable::identity(n as usize);
    for k in 1..n {
        let mut w = vec![0i64; sz];
        for r in (n - k)..n {
            let i = r - (n - k);
            let base = if i == 0 {
                1
            } else {
                dual_entry_sign(spec, i, r) * e.get(i as usize, r as usize)
            };
            w[(r - 1) as usize] = sigma_sign(spec, n, k) * base;
        }
        for i in 1..n {
            let x: i64 = (0..sz).map(|r| s.beta[r][(i - 1) as usize] * w[r]).sum();
            match i.cmp(&k) {
                std::cmp::Ordering::Less => {
                    assert_eq!(x, 0, "{}: expected 0 at (k={k}, i={i})", spec.name())
                }
                std::cmp::Ordering::Equal => {
                    assert_eq!(x, 1, "{}: expected 1 at (k={k}, i={i})", spec.name())
                }
                std::cmp::Ordering::Greater => e.set(k as usize, i as usize, x),
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::families::{family_by_name, registry};
    use proptest::prelude::*;

    #[test]
    fn ordinary_obstructions_are_binomials() {
        let fam = family_by_name("ordinary").unwrap();
        let t = euler_from_sm(fam, 8);
        for m in 1..=8usize {
            for k in 1..=m {
                assert_eq!(t.get(k, m), binomial(m as i64, k as i64), "e_({k},{m})");
            }
        }
    }

    #[test]
    fn symmetric_odd_even_vanishing() {
        let fam = family_by_name("symmetric").unwrap();
        let t = euler_from_sm(fam, 10);
        for n in 1..=5i64 {
            for i in 0..n {
                if 2 * n <= 10 {
                    assert_eq!(t.get((2 * i + 1) as usize, (2 * n) as usize), 0);
                }
            }
        }
    }

    #[test]
    fn sm_round_trips_through_obstructions() {
        for fam in registry() {
            let spec: &dyn OrbitFamilySpec = fam;
            let n = if fam.name() == "ordinary" { 8 } else { 6 };
            let t = euler_from_sm(spec, n);
            let back = sm_from_euler(&t);
            for m in 2..=n {
                for k in 1..m {
                    assert_eq!(back[&(m, k)], spec.sm(m, k), "{} Sm_({m},{k})", fam.name());
                }
            }
        }
    }

    #[test]
    fn smallest_table_recovers_sm_directly() {
        let fam = family_by_name("ordinary").unwrap();
        let t = euler_from_sm(fam, 2);
        let back = sm_from_euler(&t);
        assert_eq!(back[&(2, 1)], t.get(1, 2));
        assert_eq!(back[&(2, 1)], 2);
    }

    #[test]
    fn inverse_is_exact_at_size_12() {
        let fam = family_by_name("ordinary").unwrap();
        let t = euler_from_sm(fam, 12);
        let a = t.inverse();
        // alternating binomials
        for m in 1..=12usize {
            for k in 1..=m {
                let s = if (m - k) % 2 == 0 { 1 } else { -1 };
                assert_eq!(a.get(k, m), s * binomial(m as i64, k as i64));
            }
        }
    }

    #[test]
    fn ordinary_duality_sign_is_positive() {
        let fam = family_by_name("ordinary").unwrap();
        let t = euler_from_sm(fam, 6);
        let d = dual_euler(&t, fam);
        for j in 1..=6usize {
            for i in 1..j {
                assert_eq!(d.get(i, j), t.get(j - i, j), "sign not +1 at ({i},{j})");
            }
        }
    }

    #[test]
    fn duality_is_an_involution() {
        for fam in registry() {
            let spec: &dyn OrbitFamilySpec = fam;
            let t = euler_from_sm(spec, 6);
            assert_eq!(dual_euler(&dual_euler(&t, spec), spec), t, "{}", fam.name());
        }
    }

    #[test]
    fn ordinary_sectional_spot_values() {
        let fam = family_by_name("ordinary").unwrap();
        let spec: &dyn OrbitFamilySpec = fam;
        for n in [3i64, 4, 5] {
            let t = euler_from_sm(spec, n);
            let s = sectional_chi(spec, &dual_euler(&t, spec), n);
            // top stratum: chi_{n-1,r} = r - n + n^2 for r >= 1
            for r in 1..n {
                assert_eq!(s.chi(n - 1, r), r - n + n * n, "n={n} r={r}");
            }
        }
        let t = euler_from_sm(spec, 3);
        let s = sectional_chi(spec, &dual_euler(&t, spec), 3);
        assert_eq!(
            (0..3).map(|r| s.chi(2, r)).collect::<Vec<_>>(),
            vec![6, 7, 8]
        );
        assert_eq!(s.chi(1, 0), 3);
        let t4 = euler_from_sm(spec, 4);
        let s4 = sectional_chi(spec, &dual_euler(&t4, spec), 4);
        assert_eq!(
            (0..4).map(|r| s4.chi(1, r)).collect::<Vec<_>>(),
            vec![-4, -1, 0, 0]
        );
        assert_eq!(
            (0..4).map(|r| s4.chi(2, r)).collect::<Vec<_>>(),
            vec![6, 3, 1, 0]
        );
        assert_eq!(
            (0..4).map(|r| s4.chi(3, r)).collect::<Vec<_>>(),
            vec![12, 13, 14, 15]
        );
    }

    #[test]
    fn symmetric_sectional_frozen_rows() {
        let fam = family_by_name("symmetric").unwrap();
        let spec: &dyn OrbitFamilySpec = fam;
        let rows: &[(i64, i64, &[i64])] = &[
            (3, 1, &[2, 2, 3]),
            (3, 2, &[2, 3, 2]),
            (4, 2, &[4, 5, 5, 6]),
            (5, 3, &[8, 8, 9, 9, 10]),
            (6, 4, &[12, 13, 13, 14, 14, 15]),
            (7, 2, &[-3, 0, -1, 0, 0, 0, 0]),
        ];
        for &(n, k, want) in rows {
            let t = euler_from_sm(spec, n);
            let s = sectional_chi(spec, &dual_euler(&t, spec), n);
            let got: Vec<i64> = (0..n).map(|r| s.chi(k, r)).collect();
            assert_eq!(got, want, "symmetric n={n} k={k}");
        }
    }

    #[test]
    fn beta_matrices_invert_each_other() {
        for fam in registry() {
            let spec: &dyn OrbitFamilySpec = fam;
            for n in 2..=6i64 {
                let t = euler_from_sm(spec, n);
                let s = sectional_chi(spec, &dual_euler(&t, spec), n);
                assert!(verify_beta_inverse(&s, &s), "{} n={n}", fam.name());
            }
        }
    }

    #[test]
    fn sectional_data_recovers_obstructions() {
        for fam in registry() {
            let spec: &dyn OrbitFamilySpec = fam;
            for n in 2..=5i64 {
                let t = euler_from_sm(spec, n);
                let s = sectional_chi(spec, &dual_euler(&t, spec), n);
                let back = euler_from_sectional(spec, &s, n);
                assert_eq!(back.leading((n - 1) as usize), t.leading((n - 1) as usize));
            }
        }
    }

    fn unitriangular_strategy(size: usize) -> impl Strategy<Value = TriangularTable> {
        prop::collection::vec(-9i64..=9, size * size).prop_map(move |vals| {
            let mut t = TriangularTable::identity(size);
            for i in 1..=size {
                for j in i + 1..=size {
                    t.set(i, j, vals[(i - 1) * size + (j - 1)]);
                }
            }
            t
        })
    }

    proptest! {
        #[test]
        fn inverse_of_inverse_is_identity_map(t in unitriangular_strategy(7)) {
            prop_assert_eq!(t.inverse().inverse(), t);
        }
    }
}
