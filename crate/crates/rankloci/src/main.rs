//! Command line front end. Families come out of the runtime registry by
//! name, every table can be re-derived through an independent route with
//! --verify or the verify subcommand, and results print as aligned text,
//! JSON, or CSV. Exit code 0 means all checks passed, 1 means some check
//! failed, 2 means the request itself was bad.

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankloci::combinatorics::binomial;
use rankloci::engine::{
    dual_euler, euler_from_sectional, euler_from_sm, sectional_chi, sm_from_euler,
    verify_beta_inverse, OrbitFamilySpec,
};
use rankloci::families::{
    family_by_name, ic_stalk_signed, ic_table_ambiguous, ic_table_signed, registry,
    sm_schubert_row, symmetric_lemma_closed, symmetric_lemma_integral, LocalSystem,
    RankLocusFamily,
};
use rankloci::fano::{
    fano_euler_closed, fano_euler_recursive, fano_euler_schubert, lascoux_identity_holds,
    skew_identity_sides, staircase_determinant,
};
use rankloci::output::{Format, OutputDocument};
use rankloci::projcalc::{ism, jn, sm_invariant, HPoly};
use rankloci::schubert::{
    chern_q, chern_s, chern_s_dual, chi_grassmannian, delta_schur, ChowClass, GrassmannContext,
};
use rankloci::{Error, Result};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "rankloci",
    version,
    about = "Singularity invariants of matrix rank loci and quadric Fano schemes, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Table)]
    format: Fmt,
    /// Largest Grassmannian dimension any Schubert computation may touch.
    #[arg(long, global = true, default_value_t = 36)]
    budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fmt {
    Table,
    Json,
    Csv,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Table => Format::Table,
            Fmt::Json => Format::Json,
            Fmt::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sm degrees of the rank strata at one level
    Sm {
        /// Family name from the registry (see `verify --help` for the list).
        #[arg(long)]
        family: String,
        /// Internal level; the skew families have native size 2n or 2n+1.
        #[arg(long)]
        n: i64,
        /// Re-derive the row through the Tjurina transform integrals.
        #[arg(long)]
        verify: bool,
    },
    /// Local Euler obstruction table e(k, j) for strata up to level n
    Euler {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: i64,
        /// Also run the duality involution and the Sm round trip.
        #[arg(long)]
        verify: bool,
    },
    /// Sectional Euler characteristics chi(k, r) at one level
    Sectional {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: i64,
        /// Also invert beta and recover the obstruction table from sections.
        #[arg(long)]
        verify: bool,
    },
    /// Signed IC stalk Euler characteristics at one level
    Ic {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: i64,
        /// Use the nontrivial rank-one local system (symmetric family only).
        #[arg(long)]
        twisted: bool,
    },
    /// Euler characteristics of Fano schemes of d-planes on smooth quadrics
    Fano {
        #[arg(long, default_value_t = 2)]
        dmax: i64,
        #[arg(long, default_value_t = 7)]
        nmax: i64,
        /// Also check the staircase factorization and its vanishing.
        #[arg(long)]
        verify: bool,
    },
    /// Internal consistency suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Seed for the randomized ring and involution trials.
        #[arg(long, default_value_t = 17)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    SchubertRing,
    Involutions,
    RankLociOracle,
    SectionalRoundtrip,
    Fano,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            print!("{}", doc.render(cli.format.into()));
            if doc.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<OutputDocument> {
    match &cli.command {
        Cmd::Sm { family, n, verify } => cmd_sm(lookup(family)?, *n, *verify, cli.budget),
        Cmd::Euler { family, n, verify } => cmd_euler(lookup(family)?, *n, *verify),
        Cmd::Sectional { family, n, verify } => cmd_sectional(lookup(family)?, *n, *verify),
        Cmd::Ic { family, n, twisted } => cmd_ic(lookup(family)?, *n, *twisted),
        Cmd::Fano { dmax, nmax, verify } => cmd_fano(*dmax, *nmax, *verify, cli.budget),
        Cmd::Verify { suite, seed } => cmd_verify(*suite, *seed, cli.budget),
    }
}

fn lookup(name: &str) -> Result<&'static dyn RankLocusFamily> {
    family_by_name(name).ok_or_else(|| {
        let names: Vec<&str> = registry().iter().map(|f| f.name()).collect();
        Error::InvalidArgument(format!(
            "unknown family '{name}' (available: {})",
            names.join(", ")
        ))
    })
}

fn native_labels(fam: &dyn RankLocusFamily, ks: impl Iterator<Item = i64>) -> Vec<String> {
    ks.map(|k| fam.native_label(k).to_string()).collect()
}

fn base_doc(command: &str, fam: &dyn RankLocusFamily, n: i64) -> OutputDocument {
    let mut doc = OutputDocument::new(command);
    doc.param("family", fam.name());
    doc.param("n", n);
    doc.param("size", fam.native_size(n));
    doc
}

fn cmd_sm(
    fam: &'static dyn RankLocusFamily,
    n: i64,
    verify: bool,
    budget: usize,
) -> Result<OutputDocument> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need n >= 2 for a nonempty stratum list".into(),
        ));
    }
    let mut doc = base_doc("sm", fam, n);
    let cols = native_labels(fam, 1..n);
    let row: Vec<i64> = (1..n).map(|k| fam.sm(n, k)).collect();
    doc.push_table(
        "sm degrees by stratum",
        vec!["Sm".into()],
        cols.clone(),
        vec![row],
    );
    if verify {
        let (sm, g) = sm_schubert_row(fam, n, budget)?;
        doc.push_table(
            "tjurina transform integrals",
            vec!["g".into()],
            cols,
            vec![(1..n).map(|j| g[&j]).collect()],
        );
        for k in 1..n {
            doc.push_check(
                &format!("schubert route, stratum {}", fam.native_label(k)),
                sm[&k],
                fam.sm(n, k),
            );
        }
    }
    Ok(doc)
}

fn cmd_euler(fam: &'static dyn RankLocusFamily, n: i64, verify: bool) -> Result<OutputDocument> {
    if n < 1 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let mut doc = base_doc("euler", fam, n);
    let spec: &dyn OrbitFamilySpec = fam;
    let t = euler_from_sm(spec, n);
    let labels = native_labels(fam, 1..=n);
    let rows: Vec<Vec<i64>> = (1..=n)
        .map(|k| {
            (1..=n)
                .map(|j| {
                    if k <= j {
                        t.get(k as usize, j as usize)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    doc.push_table(
        "local euler obstructions e(k, j)",
        labels.clone(),
        labels,
        rows,
    );
    let mut ok = true;
    for j in 1..=n {
        for k in 1..=j {
            ok &= t.get(k as usize, j as usize) == fam.euler_closed(k, j);
        }
    }
    doc.push_flag("closed form agreement", ok);
    if verify {
        let d = dual_euler(&t, spec);
        doc.push_flag("duality is an involution", dual_euler(&d, spec) == t);
        let sm = sm_from_euler(&t);
        let ok = sm.iter().all(|(&(m, k), &v)| v == spec.sm(m, k));
        doc.push_flag("sm degrees recovered from obstructions", ok);
    }
    Ok(doc)
}

fn cmd_sectional(
    fam: &'static dyn RankLocusFamily,
    n: i64,
    verify: bool,
) -> Result<OutputDocument> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "sectional data starts at level 2".into(),
        ));
    }
    let mut doc = base_doc("sectional", fam, n);
    let spec: &dyn OrbitFamilySpec = fam;
    let t = euler_from_sm(spec, n);
    let s = sectional_chi(spec, &dual_euler(&t, spec), n);
    let rows: Vec<Vec<i64>> = (1..n)
        .map(|k| (0..n).map(|r| s.chi(k, r)).collect())
        .collect();
    doc.push_table(
        "sectional chi(k, r)",
        native_labels(fam, 1..n),
        (0..n).map(|r| r.to_string()).collect(),
        rows,
    );
    let mut ok = true;
    for k in 1..n {
        for r in 0..n {
            ok &= s.chi(k, r) == fam.sectional_closed(n, k, r);
        }
    }
    doc.push_flag("closed form agreement", ok);
    if verify {
        doc.push_flag("beta is an involution", verify_beta_inverse(&s, &s));
        let e2 = euler_from_sectional(spec, &s, n);
        let mut ok = true;
        for j in 1..n {
            for k in 1..=j {
                ok &= e2.get(k as usize, j as usize) == t.get(k as usize, j as usize);
            }
        }
        doc.push_flag("obstructions recovered from sections", ok);
    }
    Ok(doc)
}

fn cmd_ic(fam: &'static dyn RankLocusFamily, n: i64, twisted: bool) -> Result<OutputDocument> {
    if n < 1 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    if twisted && !fam.twisted_allowed() {
        return Err(Error::InvalidArgument(format!(
            "the {} strata are simply connected, only the constant sheaf exists",
            fam.name()
        )));
    }
    let ls = if twisted {
        LocalSystem::Twisted
    } else {
        LocalSystem::Constant
    };
    let mut doc = base_doc("ic", fam, n);
    doc.param("local-system", if twisted { "twisted" } else { "constant" });
    let is: Vec<i64> = if twisted {
        (1..n).collect()
    } else {
        (0..=n).collect()
    };
    let mut rows = Vec::new();
    for &i in &is {
        let mut row = Vec::new();
        for j in 0..=n {
            row.push(ic_stalk_signed(fam, n, i, j, ls)?);
        }
        rows.push(row);
    }
    doc.push_table(
        "signed ic stalk chi, strata i (rows) against j (columns)",
        native_labels(fam, is.iter().copied()),
        native_labels(fam, 0..=n),
        rows,
    );
    let mut certified = true;
    let mut advisory = true;
    let mut has_advisory = false;
    for &i in &is {
        for j in 0..=n {
            let got = ic_stalk_signed(fam, n, i, j, ls)?;
            let want = ic_table_signed(fam, i, j, ls);
            if ic_table_ambiguous(fam, i, j, ls) {
                has_advisory = true;
                advisory &= got == want;
            } else {
                certified &= got == want;
            }
        }
    }
    doc.push_flag("closed table agreement", certified);
    if has_advisory {
        doc.push_note(
            "odd constant-sheaf strata",
            &format!(
                "normalization is convention dependent; the corrected closed table agrees with the computed values here: {advisory}"
            ),
        );
    }
    Ok(doc)
}

fn cmd_fano(dmax: i64, nmax: i64, verify: bool, budget: usize) -> Result<OutputDocument> {
    if dmax < 0 || nmax < 1 {
        return Err(Error::InvalidArgument(
            "need dmax >= 0 and nmax >= 1".into(),
        ));
    }
    let mut doc = OutputDocument::new("fano");
    doc.param("dmax", dmax);
    doc.param("nmax", nmax);
    let rows: Vec<Vec<i64>> = (0..=dmax)
        .map(|d| (1..=nmax).map(|n| fano_euler_closed(d, n)).collect())
        .collect();
    doc.push_table(
        "chi of the fano scheme of d-planes on a quadric in P^n",
        (0..=dmax).map(|d| format!("d={d}")).collect(),
        (1..=nmax).map(|n| format!("n={n}")).collect(),
        rows,
    );
    for n in 1..=nmax {
        for d in 0..=dmax.min((n - 1) / 2) {
            doc.push_check(
                &format!("recursion vs closed, d={d} n={n}"),
                fano_euler_recursive(d, n),
                fano_euler_closed(d, n),
            );
            match fano_euler_schubert(d, n, budget) {
                Ok(v) => doc.push_check(
                    &format!("schubert vs closed, d={d} n={n}"),
                    v,
                    fano_euler_closed(d, n),
                ),
                Err(Error::BudgetExceeded { dim, .. }) => doc.push_note(
                    &format!("schubert skipped, d={d} n={n}"),
                    &format!(
                        "G({},{}) has dimension {dim}, over budget {budget}",
                        d + 1,
                        n + 1
                    ),
                ),
                Err(e) => return Err(e),
            }
        }
    }
    if verify {
        let mut ok = true;
        for n in 1..=nmax.min(6) {
            for d in 0..=dmax.min(2).min(n) {
                ok &= lascoux_identity_holds(d, n, budget)?;
            }
        }
        doc.push_flag("staircase factorization of c_top(Sym^2 S*)", ok);
        let vanish = staircase_determinant(2, 4, budget)?.is_zero()
            && staircase_determinant(3, 5, budget)?.is_zero();
        doc.push_flag("staircase determinant vanishes at (2,4) and (3,5)", vanish);
    }
    Ok(doc)
}

fn cmd_verify(suite: Suite, seed: u64, budget: usize) -> Result<OutputDocument> {
    let mut doc = OutputDocument::new("verify");
    doc.param(
        "suite",
        match suite {
            Suite::SchubertRing => "schubert-ring",
            Suite::Involutions => "involutions",
            Suite::RankLociOracle => "rank-loci-oracle",
            Suite::SectionalRoundtrip => "sectional-roundtrip",
            Suite::Fano => "fano",
            Suite::All => "all",
        },
    );
    doc.param("seed", seed);
    if matches!(suite, Suite::SchubertRing | Suite::All) {
        suite_schubert_ring(&mut doc, seed);
    }
    if matches!(suite, Suite::Involutions | Suite::All) {
        suite_involutions(&mut doc, seed);
    }
    if matches!(suite, Suite::RankLociOracle | Suite::All) {
        suite_rank_loci(&mut doc, budget)?;
    }
    if matches!(suite, Suite::SectionalRoundtrip | Suite::All) {
        suite_sectional(&mut doc);
    }
    if matches!(suite, Suite::Fano | Suite::All) {
        suite_fano(&mut doc, budget)?;
    }
    Ok(doc)
}

fn random_class(ctx: &Arc<GrassmannContext>, rng: &mut ChaCha8Rng) -> ChowClass {
    let mut c = ChowClass::zero(ctx);
    for _ in 0..6 {
        let i = rng.gen_range(0..ctx.basis().len());
        let v = rng.gen_range(-9..=9);
        c = c.add(&ChowClass::basis_element(ctx, &ctx.basis()[i].clone()).scale_int(v));
    }
    c
}

fn suite_schubert_ring(doc: &mut OutputDocument, seed: u64) {
    let mut ok = true;
    for n in 0..=7usize {
        for k in 0..=n {
            ok &= chi_grassmannian(k, n) == binomial(n as i64, k as i64);
        }
    }
    doc.push_flag("chi of every G(k,n) is binom(n,k), n <= 7", ok);

    let mut ok = true;
    for n in 0..=6usize {
        for k in 0..=n {
            let ctx = GrassmannContext::get(k, n);
            ok &= chern_s(&ctx).total.mul(&chern_q(&ctx).total) == ChowClass::one(&ctx);
        }
    }
    doc.push_flag("whitney sum c(S)c(Q) = 1, n <= 6", ok);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assoc = true;
    let mut comm = true;
    for (k, n) in [(2usize, 5usize), (3, 6)] {
        let ctx = GrassmannContext::get(k, n);
        for _ in 0..50 {
            let a = random_class(&ctx, &mut rng);
            let b = random_class(&ctx, &mut rng);
            let c = random_class(&ctx, &mut rng);
            assoc &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
            comm &= a.mul(&b) == b.mul(&a);
        }
    }
    doc.push_flag("associativity on 100 random triples", assoc);
    doc.push_flag("commutativity on 100 random pairs", comm);

    let mut ok = true;
    for (k, n) in [(2usize, 4usize), (2, 5), (3, 6)] {
        let ctx = GrassmannContext::get(k, n);
        for la in ctx.basis() {
            let comp = la.complement_in_box(k, (n - k) as u32);
            for mu in ctx.basis() {
                let v = ChowClass::basis_element(&ctx, la)
                    .mul(&ChowClass::basis_element(&ctx, mu))
                    .integrate_i64();
                ok &= v == i64::from(*mu == comp);
            }
        }
    }
    doc.push_flag("poincare pairing against box complements", ok);

    let mut ok = true;
    for (k, n) in [(2usize, 5usize), (3, 6)] {
        let ctx = GrassmannContext::get(k, n);
        let q = chern_q(&ctx);
        let sd = chern_s_dual(&ctx);
        for la in ctx.basis() {
            let sig = ChowClass::basis_element(&ctx, la);
            ok &= delta_schur(la, &q) == sig;
            ok &= delta_schur(&la.conjugate(), &sd) == sig;
        }
    }
    doc.push_flag("giambelli in both chern families", ok);
}

fn suite_involutions(doc: &mut OutputDocument, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut ok = true;
    for _ in 0..100 {
        let deg = rng.gen_range(0..=20usize);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-30..=30)).collect();
        let p = HPoly::new(coeffs, deg);
        ok &= ism(&ism(&p)) == p;
    }
    doc.push_flag("generic-section transform is an involution, 100 trials", ok);

    let mut ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(1..=12usize);
        let mut coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-30..=30)).collect();
        coeffs[0] = 0;
        let p = HPoly::new(coeffs, n);
        ok &= jn(&jn(&p, n), n) == p;
    }
    doc.push_flag("cone duality transform is an involution, 100 trials", ok);

    let mut ok = true;
    for _ in 0..100 {
        let deg = rng.gen_range(0..=12usize);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-30..=30)).collect();
        let gamma = HPoly::new(coeffs, deg);
        let chi = ism(&gamma);
        ok &= gamma.eval(-1) == chi.coeff(0) + chi.coeff(1);
    }
    doc.push_flag("gamma(-1) = chi_0 - chi_1, 100 trials", ok);

    let conic = HPoly::new(vec![0, 2, 2], 2);
    doc.push_check(
        "cone over a conic, origin obstruction",
        sm_invariant(&conic, 3),
        0,
    );
}

fn suite_rank_loci(doc: &mut OutputDocument, budget: usize) -> Result<()> {
    for fam in registry() {
        let spec: &dyn OrbitFamilySpec = fam;
        let t = euler_from_sm(spec, 7);
        let mut ok = true;
        for j in 1..=7i64 {
            for k in 1..=j {
                ok &= t.get(k as usize, j as usize) == fam.euler_closed(k, j);
            }
        }
        doc.push_flag(
            &format!("{}: obstruction closed form, n <= 7", fam.name()),
            ok,
        );
    }

    let sizes: &[(&str, i64)] = &[
        ("ordinary", 4),
        ("skew-even", 2),
        ("skew-odd", 2),
        ("symmetric", 5),
    ];
    for &(name, nmax) in sizes {
        let fam = family_by_name(name).unwrap();
        let mut ok = true;
        for n in 2..=nmax {
            let (sm, _) = sm_schubert_row(fam, n, budget)?;
            for k in 1..n {
                ok &= sm[&k] == fam.sm(n, k);
            }
        }
        doc.push_flag(&format!("{name}: schubert sm route, n <= {nmax}"), ok);
    }

    for name in ["ordinary", "skew-even", "skew-odd"] {
        let fam = family_by_name(name).unwrap();
        let n = 5;
        let mut ok = true;
        for i in 0..=n {
            for j in 0..=n {
                ok &= ic_stalk_signed(fam, n, i, j, LocalSystem::Constant)? == binomial(j, i);
            }
        }
        doc.push_flag(&format!("{name}: ic stalks are binomials, n = 5"), ok);
    }
    {
        let fam = family_by_name("symmetric").unwrap();
        let n = 5;
        let mut ok = true;
        for i in 1..n {
            for j in 0..=n {
                ok &= ic_stalk_signed(fam, n, i, j, LocalSystem::Twisted)?
                    == ic_table_signed(fam, i, j, LocalSystem::Twisted);
            }
        }
        doc.push_flag("symmetric: twisted ic stalks, n = 5", ok);
        let mut ok = true;
        let mut advisory = true;
        for i in 0..=n {
            for j in 0..=n {
                let got = ic_stalk_signed(fam, n, i, j, LocalSystem::Constant)?;
                let want = ic_table_signed(fam, i, j, LocalSystem::Constant);
                if ic_table_ambiguous(fam, i, j, LocalSystem::Constant) {
                    advisory &= got == want;
                } else {
                    ok &= got == want;
                }
            }
        }
        doc.push_flag("symmetric: constant ic stalks, even strata, n = 5", ok);
        doc.push_note(
            "symmetric: constant ic stalks, odd strata",
            &format!("convention dependent; corrected table agrees here: {advisory}"),
        );
    }

    let mut ok = true;
    for m in 0..=5i64 {
        for k in 0..=m {
            ok &= symmetric_lemma_integral(k, m, budget)? == symmetric_lemma_closed(k, m);
        }
    }
    doc.push_flag("symmetric route lemma integrals, m <= 5", ok);
    Ok(())
}

fn suite_sectional(doc: &mut OutputDocument) {
    for fam in registry() {
        let spec: &dyn OrbitFamilySpec = fam;
        let nmax = if fam.name() == "symmetric" { 6 } else { 5 };
        let mut closed_ok = true;
        let mut inv_ok = true;
        let mut rt_ok = true;
        for n in 2..=nmax {
            let t = euler_from_sm(spec, n);
            let s = sectional_chi(spec, &dual_euler(&t, spec), n);
            for k in 1..n {
                for r in 0..n {
                    closed_ok &= s.chi(k, r) == fam.sectional_closed(n, k, r);
                }
            }
            inv_ok &= verify_beta_inverse(&s, &s);
            let e2 = euler_from_sectional(spec, &s, n);
            for j in 1..n {
                for k in 1..=j {
                    rt_ok &= e2.get(k as usize, j as usize) == t.get(k as usize, j as usize);
                }
            }
        }
        doc.push_flag(
            &format!("{}: sectional closed form, n <= {nmax}", fam.name()),
            closed_ok,
        );
        doc.push_flag(&format!("{}: beta involution", fam.name()), inv_ok);
        doc.push_flag(
            &format!("{}: obstructions recovered from sections", fam.name()),
            rt_ok,
        );
    }
}

fn suite_fano(doc: &mut OutputDocument, budget: usize) -> Result<()> {
    let mut ok = true;
    for n in 1..=9i64 {
        for d in 0..=(n - 1) / 2 {
            ok &= fano_euler_recursive(d, n) == fano_euler_closed(d, n);
        }
    }
    doc.push_flag("fano recursion vs closed, n <= 9", ok);

    let mut ok = true;
    for n in 1..=6i64 {
        for d in 0..=((n - 1) / 2).min(2) {
            ok &= fano_euler_schubert(d, n, budget)? == fano_euler_closed(d, n);
        }
    }
    doc.push_flag("fano schubert integral vs closed, d <= 2, n <= 6", ok);

    let mut ok = true;
    for n in 1..=5i64 {
        for d in 0..=n.min(2) {
            ok &= lascoux_identity_holds(d, n, budget)?;
        }
    }
    doc.push_flag("staircase factorization, d <= 2, n <= 5", ok);

    let vanish = staircase_determinant(2, 4, budget)?.is_zero()
        && staircase_determinant(3, 5, budget)?.is_zero();
    doc.push_flag("staircase determinant vanishes at (2,4) and (3,5)", vanish);

    let mut ok = true;
    for n in 0..=3i64 {
        for k in 0..=n {
            for odd in [false, true] {
                let (lhs, rhs) = skew_identity_sides(k, n, odd, budget)?;
                ok &= lhs == rhs;
            }
        }
    }
    doc.push_flag("skew binomial identities, n <= 3, both parities", ok);
    Ok(())
}
