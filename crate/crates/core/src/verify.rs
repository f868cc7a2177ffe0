//! The property suites behind `verify-all`.
//!
//! Each suite owns a ChaCha8 stream seeded from the run seed and the suite
//! name, so suites can run in any order or in parallel and still draw the
//! same inputs. Reports list suites sorted by name and leave out timings
//! unless asked, so two runs with one config serialize to the same bytes.

use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{resultant, BinaryForm, Field, TForm};
use crate::curves::{degree_profile, explicit_curve, frobenius_curve, mdegree, verify_complete_curve};
use crate::ideal::{classify_boundary, model_hf, psi, psi_inverse, GradedIdeal};
use crate::invariants::{generic_resultant, invariant_dimension, invariant_table};
use crate::limits::TFamily;
use crate::pic::{delta_class, eff_generators, is_nef, l_basis_determinant, l_class, nef_coords, restriction_identity_failures, PicClass};
use crate::sample;
use crate::strata::{census, common_factor_witness, dmu_matrix, fiber_degree_check, koszul_span_check};
use crate::{Error, Result};

/// Deliberate bugs for checking that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of `d` in the middle branch of the model Hilbert
    /// function.
    ModelHfSign,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        match s {
            "model-hf-sign" => Ok(Fault::ModelHfSign),
            other => Err(Error::InvalidInput(format!("unknown fault {other:?} (known: model-hf-sign)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field: Field,
    pub seed: u64,
    /// Types `(d, e)` for the sampled ideal and strata suites.
    pub grid: Vec<(usize, usize)>,
    /// Cells `(d, e, u)` for the degeneration suite.
    pub degeneration_grid: Vec<(usize, usize, usize)>,
    /// Overrides every suite's default sample count.
    pub samples: Option<usize>,
    /// Compare Hilbert functions up to this degree instead of `d + e`.
    pub window: Option<usize>,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub timings: bool,
    pub fault: Option<Fault>,
    /// Run only suites whose name starts with one of these.
    pub only: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            field: Field::Prime(101),
            seed: 0,
            grid: vec![(2, 3), (2, 5), (3, 4), (3, 5), (4, 7)],
            degeneration_grid: vec![(2, 3, 1), (3, 4, 1), (3, 4, 2), (3, 5, 2)],
            samples: None,
            window: None,
            threads: 0,
            timings: false,
            fault: None,
            only: Vec::new(),
        }
    }
}

/// At most this many failing inputs are kept per suite.
const MAX_RECORDED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failed: u64,
    pub samples: u64,
    pub rejections: u64,
    /// Failing inputs, enough to replay each check.
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub field: String,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

struct Tally {
    checks: u64,
    failed: u64,
    samples: u64,
    rejections: u64,
    failures: Vec<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, record: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(record());
            }
        }
    }

    fn sampled<T>(&mut self, draw: sample::Draw<T>) -> T {
        self.samples += 1;
        self.rejections += draw.rejections;
        draw.value
    }
}

type Suite = fn(&RunConfig, &mut ChaCha8Rng, &mut Tally) -> Result<()>;

/// Every suite, sorted by name.
pub const SUITES: [&str; 12] = [
    "curves.complete",
    "curves.mdegree",
    "ideals.hilbert",
    "ideals.psi",
    "invariants.slices",
    "limits.degeneration",
    "pic.cones",
    "pic.restriction",
    "strata.census",
    "strata.dmu",
    "strata.fiber",
    "strata.koszul",
];

fn suite_fn(name: &str) -> Option<Suite> {
    Some(match name {
        "curves.complete" => curves_complete,
        "curves.mdegree" => curves_mdegree,
        "ideals.hilbert" => ideals_hilbert,
        "ideals.psi" => ideals_psi,
        "invariants.slices" => invariants_slices,
        "limits.degeneration" => limits_degeneration,
        "pic.cones" => pic_cones,
        "pic.restriction" => pic_restriction,
        "strata.census" => strata_census,
        "strata.dmu" => strata_dmu,
        "strata.fiber" => strata_fiber,
        "strata.koszul" => strata_koszul,
        _ => return None,
    })
}

/// FNV-1a, used to split the seed by suite name.
fn fnv1a(text: &str) -> u64 {
    text.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn suite_rng(seed: u64, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(name))
}

/// Runs one suite. Library errors inside a suite count as failed checks.
pub fn run_suite(name: &str, config: &RunConfig) -> Result<SuiteReport> {
    let suite = suite_fn(name).ok_or_else(|| Error::InvalidInput(format!("unknown suite {name:?}")))?;
    let mut rng = suite_rng(config.seed, name);
    let mut tally = Tally {
        checks: 0,
        failed: 0,
        samples: 0,
        rejections: 0,
        failures: Vec::new(),
    };
    let start = Instant::now();
    if let Err(err) = suite(config, &mut rng, &mut tally) {
        tally.check(false, || json!({ "error": err.to_string() }));
    }
    Ok(SuiteReport {
        name: name.to_string(),
        passed: tally.failed == 0 && tally.checks > 0,
        checks: tally.checks,
        failed: tally.failed,
        samples: tally.samples,
        rejections: tally.rejections,
        failures: tally.failures,
        elapsed_ms: config.timings.then(|| start.elapsed().as_millis() as u64),
    })
}

pub fn run_all(config: &RunConfig) -> Result<Report> {
    let names: Vec<&str> = SUITES
        .iter()
        .copied()
        .filter(|n| config.only.is_empty() || config.only.iter().any(|p| n.starts_with(p.as_str())))
        .collect();
    if names.is_empty() {
        return Err(Error::InvalidInput(format!("no suite matches {:?}", config.only)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|err| Error::InvalidInput(format!("thread pool: {err}")))?;
    let mut suites = pool.install(|| names.par_iter().map(|n| run_suite(n, config)).collect::<Result<Vec<_>>>())?;
    suites.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report {
        seed: config.seed,
        field: config.field.to_string(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

fn samples(config: &RunConfig, default: usize) -> usize {
    config.samples.unwrap_or(default)
}

fn strs(forms: &[&BinaryForm]) -> Vec<String> {
    forms.iter().map(|f| f.to_string()).collect()
}

fn expected_hf(config: &RunConfig, d: usize, e: usize, l: usize) -> Result<usize> {
    match config.fault {
        Some(Fault::ModelHfSign) if l >= e && l < d + e => Ok(2 * l + 2 + d - e),
        _ => model_hf(d, e, l),
    }
}

fn ideals_hilbert(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for &(d, e) in &config.grid {
        let window = config.window.unwrap_or(d + e).max(d + e);
        for _ in 0..samples(config, 200) {
            let (f, g) = t.sampled(sample::coprime_pair(config.field, d, e, rng)?);
            let ideal = GradedIdeal::from_forms(d, e, &[f.clone(), g.clone()], window)?;
            let got = ideal.hilbert_function();
            let want = (0..=window).map(|l| expected_hf(config, d, e, l)).collect::<Result<Vec<_>>>()?;
            t.check(got == want && ideal.is_closed(), || {
                json!({ "d": d, "e": e, "F": f.to_string(), "G": g.to_string(), "hf": got, "model": want })
            });
        }
    }
    Ok(())
}

fn ideals_psi(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for &(d, e) in &config.grid {
        for u in 1..d {
            for _ in 0..samples(config, 100) {
                let (z, zp) = t.sampled(sample::psi_inputs(config.field, d, e, u, rng)?);
                let y = psi(u, &z, &zp)?;
                let ok = y.is_hilb_point()
                    && classify_boundary(&y)? == u
                    && psi_inverse(&y).map(|back| back == (u, z.clone(), zp.clone())).unwrap_or(false);
                t.check(ok, || {
                    json!({
                        "d": d, "e": e, "u": u,
                        "Z": crate::json::IdealJson::from_ideal(&z),
                        "Zp": crate::json::IdealJson::from_ideal(&zp),
                    })
                });
            }
        }
    }
    Ok(())
}

fn limits_degeneration(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for &(d, e, u) in &config.degeneration_grid {
        for _ in 0..samples(config, 100) {
            let (forms, deg) = t.sampled(sample::admissible_degeneration(config.field, d, e, u, rng)?);
            t.check(deg.agrees(), || {
                let [a, b, c, f, g] = [&forms[0], &forms[1], &forms[2], &forms[3], &forms[4]];
                json!({
                    "d": d, "e": e, "u": u,
                    "A": a.to_string(), "B": b.to_string(), "C": c.to_string(),
                    "F": f.to_string(), "G": g.to_string(),
                    "differing_layers": deg.differing_layers(),
                })
            });
        }
    }
    Ok(())
}

fn strata_dmu(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for &(d, e) in &config.grid {
        for u in 1..d {
            for _ in 0..samples(config, 100) {
                let (a, b, c) = t.sampled(sample::coprime_triple(config.field, d, e, u, rng)?);
                let m = dmu_matrix(u, &a, &b, &c)?;
                t.check(m.kernel_dim == 0 && m.corank == d - u, || {
                    json!({ "d": d, "e": e, "u": u, "ABC": strs(&[&a, &b, &c]),
                            "kernel_dim": m.kernel_dim, "corank": m.corank })
                });
                let (a, b, c) = t.sampled(sample::planted_triple(config.field, d, e, u, 1, rng)?);
                let m = dmu_matrix(u, &a, &b, &c)?;
                let ok = match common_factor_witness(&a, &b, &c)? {
                    Some((h, i, j)) => {
                        m.image(&h, &i, &j).iter().all(|x| x.is_zero())
                            && m.domain_coords(&h, &i, &j).iter().any(|x| !x.is_zero())
                            && m.kernel_dim >= 1
                    }
                    None => false,
                };
                t.check(ok, || json!({ "d": d, "e": e, "u": u, "planted": strs(&[&a, &b, &c]) }));
            }
        }
    }
    Ok(())
}

fn strata_koszul(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for &(d, e) in &config.grid {
        for u in 1..d {
            for _ in 0..samples(config, 200) {
                let (a, b, c) = t.sampled(sample::coprime_triple(config.field, d, e, u, rng)?);
                t.check(koszul_span_check(&a, &b, &c, e + u), || {
                    json!({ "d": d, "e": e, "u": u, "ABC": strs(&[&a, &b, &c]) })
                });
            }
        }
    }
    Ok(())
}

fn lattice_grid() -> impl Iterator<Item = (usize, usize)> {
    (2..=8).flat_map(|d| (d + 1..=12).map(move |e| (d, e)))
}

fn pic_restriction(_: &RunConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for (d, e) in lattice_grid() {
        let bad = restriction_identity_failures(d, e)?;
        t.check(bad.is_empty(), || json!({ "d": d, "e": e, "failing_u_i": bad }));
    }
    Ok(())
}

fn pic_cones(_: &RunConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for (d, e) in lattice_grid() {
        let basis = !l_basis_determinant(d, e)?.is_zero();
        let mut ok = basis;
        if basis {
            for i in 0..d {
                let l = l_class(d, e, i)?;
                let coords = nef_coords(&l)?;
                let unit = coords.iter().enumerate().all(|(k, x)| {
                    if k == i {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                });
                ok &= unit && is_nef(&l)?;
            }
            let delta = delta_class(d, e)?;
            ok &= !is_nef(&delta)?;
            ok &= eff_generators(d, e)? == (PicClass::o(d, e, 1, 0)?, delta);
        }
        t.check(ok, || json!({ "d": d, "e": e, "basis": basis }));
    }
    Ok(())
}

fn curves_complete(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut fields = vec![Field::Rational];
    if config.field != Field::Rational {
        fields.push(config.field);
    }
    for field in fields {
        for d in 1..=4 {
            let cert = verify_complete_curve(&explicit_curve(d, field)?)?;
            let ends = ["0", "inf"].iter().all(|p| cert.special_points.iter().any(|s| s.t == *p));
            t.samples += 1;
            t.check(cert.verdict && ends, || json!(cert));
        }
    }
    for p in [2u32, 3] {
        let fp = Field::prime(p)?;
        let mut bases = vec![TFamily::new(
            crate::parse::parse_tform("X0 + t*X1", fp, Some(1))?,
            crate::parse::parse_tform("X1^2", fp, Some(2))?,
        )?];
        while bases.len() < 4 {
            let line = |rng: &mut ChaCha8Rng, l| {
                TForm::from_parts(&[sample::random_form(fp, l, rng), sample::random_form(fp, l, rng)])
            };
            let (f, g) = (line(rng, 1), line(rng, 2));
            match TFamily::new(f, g) {
                Ok(fam) => bases.push(fam),
                Err(_) => t.rejections += 1,
            }
        }
        for base in bases {
            let cert = frobenius_curve(p, &base)?;
            t.samples += 1;
            t.check(cert.verdict, || {
                json!({ "p": p, "family": crate::json::FamilyJson::from_family(&base), "certificate": cert })
            });
        }
    }
    Ok(())
}

fn curves_mdegree(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for d in [2, 3] {
        let profile = degree_profile(&explicit_curve(d, Field::Rational)?)?;
        t.samples += 1;
        t.check(profile.affine && profile.top_trivial, || json!({ "d": d, "profile": profile }));
    }
    // the top degree vanishes along any family
    for &(d, e) in config.grid.iter().filter(|(d, _)| *d <= 3) {
        for _ in 0..samples(config, 100).min(10) {
            let part = |rng: &mut ChaCha8Rng, l| sample::random_form(config.field, l, rng);
            let fam = TFamily::new(
                TForm::from_parts(&[part(rng, d), part(rng, d)]),
                TForm::from_parts(&[part(rng, e), part(rng, e)]),
            );
            let Ok(fam) = fam else {
                t.rejections += 1;
                continue;
            };
            if !fam.is_generically_coprime() {
                t.rejections += 1;
                continue;
            }
            t.samples += 1;
            let top = mdegree(&fam, d)?;
            t.check(top == 0, || json!({ "family": crate::json::FamilyJson::from_family(&fam), "mdegree": top }));
        }
    }
    Ok(())
}

fn strata_fiber(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let field = Field::Prime(7);
    for d in 2..=5 {
        for u in 1..d {
            for v in u..d {
                for _ in 0..samples(config, 100).min(5) {
                    let count = fiber_degree_check(field, d, u, v, rng)?;
                    t.samples += 1;
                    t.check(count.holds(), || json!(count));
                }
            }
        }
    }
    Ok(())
}

fn eval_mpoly(r: &crate::invariants::MPoly, values: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in r.terms() {
        let mut term = c.clone();
        for (x, &k) in values.iter().zip(m) {
            for _ in 0..k {
                term *= x;
            }
        }
        total += term;
    }
    total
}

fn invariants_slices(config: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let q = Field::Rational;
    for e in [2, 3] {
        for row in invariant_table(q, 1, e, 4, 3)? {
            t.check(Some(row.invariant) == row.free_ring, || json!({ "e": e, "row": row }));
        }
    }
    let res = generic_resultant(2, 3);
    for j in 0..=1 {
        t.check(res.apply_derivation(j).is_zero(), || json!({ "resultant": "2,3", "j": j }));
    }
    // the symbolic resultant agrees with the numeric one
    for _ in 0..samples(config, 100).min(20) {
        let f = sample::random_form(q, 2, rng);
        let g = sample::random_form(q, 3, rng);
        if f.degree() == 0 || g.degree() == 0 {
            continue;
        }
        t.samples += 1;
        let values: Vec<BigRational> = f.coeffs().iter().chain(g.coeffs()).map(|s| s.as_rational().clone()).collect();
        let numeric = resultant(&f, &g)?;
        t.check(eval_mpoly(&res, &values) == *numeric.as_rational(), || json!({ "F": f.to_string(), "G": g.to_string() }));
    }
    for &(d, e) in &config.grid {
        let dim = invariant_dimension(q, d, e, 1, 0)?;
        t.check(dim == d + 1, || json!({ "d": d, "e": e, "slice": [1, 0], "dim": dim }));
    }
    Ok(())
}

fn strata_census(config: &RunConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for p in [3, 5] {
        let c = census(Field::prime(p)?, 2, 3, config.threads.max(1))?;
        let dens_ok = (1..=c.d).all(|u| {
            let (num, den) = c.density(u);
            8 * num >= den && num <= 8 * den
        });
        let ok = c.delta_by_gcd == c.delta_by_resultant
            && c.disagreements == 0
            && c.total == c.expected_total()
            && dens_ok;
        t.samples += c.total;
        t.check(ok, || json!(c));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> RunConfig {
        RunConfig {
            samples: Some(3),
            ..RunConfig::default()
        }
    }

    #[test]
    fn suites_are_sorted_and_known() {
        let mut sorted = SUITES.to_vec();
        sorted.sort();
        assert_eq!(sorted, SUITES.to_vec());
        assert!(SUITES.iter().all(|n| suite_fn(n).is_some()));
        assert!(run_suite("nope", &quick()).is_err());
    }

    #[test]
    fn quick_run_passes_and_repeats() {
        let config = RunConfig {
            only: vec!["ideals".into(), "strata.koszul".into(), "pic".into()],
            ..quick()
        };
        let a = run_all(&config).unwrap();
        assert!(a.passed, "{a:?}");
        assert_eq!(a.suites.len(), 5);
        let b = run_all(&config).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn injected_fault_is_caught() {
        let config = RunConfig {
            fault: Some(Fault::ModelHfSign),
            only: vec!["ideals.hilbert".into()],
            ..quick()
        };
        let report = run_all(&config).unwrap();
        assert!(!report.passed);
        let suite = &report.suites[0];
        assert_eq!(suite.failed, suite.checks);
        assert!(suite.failures[0].get("F").is_some());
    }

    #[test]
    fn seeds_are_split_by_name() {
        use rand::RngCore;
        assert_ne!(suite_rng(1, "a").next_u64(), suite_rng(1, "b").next_u64());
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
    }
}
