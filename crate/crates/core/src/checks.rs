//! Seeded verification suites over a corpus of arrangements.
//!
//! Every check reports the worst measured value against its tolerance; exact
//! checks count violations against a tolerance of zero. Reports are
//! deterministic for a fixed corpus and seed.

use std::collections::BTreeSet;
use std::str::FromStr;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, Sign, SignVector};
use crate::bundle::{act, rho_eval, xy_from_z, Bundle, CxVector, MPoint};
use crate::cech::{betti_compare, build_cech_complex, build_full_complex, CechOptions};
use crate::chambers::{enumerate_cells, separating_set};
use crate::error::Error;
use crate::poset::{characteristic_and_poincare, intersection_poset};
use crate::rational::{ratio, to_f64, Rat};
use crate::zmodel::{DCoord, DPoint, ZModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Combinatorics,
    Zmodel,
    Bundle,
    Cech,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "combinatorics" => Ok(Suite::Combinatorics),
            "zmodel" => Ok(Suite::Zmodel),
            "bundle" => Ok(Suite::Bundle),
            "cech" => Ok(Suite::Cech),
            "all" => Ok(Suite::All),
            other => Err(Error::MalformedInput(format!("unknown suite {other:?}"))),
        }
    }
}

impl Suite {
    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub chamber_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            suite: Suite::All,
            trials: 100,
            seed: 0,
            chamber_cap: crate::cech::DEFAULT_CHAMBER_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

/// Running worst case for one named check.
struct Check {
    name: String,
    tol: f64,
    worst: f64,
    repro: Option<String>,
    failed: bool,
}

impl Check {
    fn new(name: impl Into<String>, tol: f64) -> Self {
        Check {
            name: name.into(),
            tol,
            worst: 0.0,
            repro: None,
            failed: false,
        }
    }

    fn measure(&mut self, value: f64, repro: impl FnOnce() -> String) {
        let bad = value.is_nan() || value > self.tol;
        if value > self.worst || value.is_nan() {
            self.worst = value;
        }
        if bad && !self.failed {
            self.failed = true;
            self.repro = Some(repro());
        }
    }

    fn violation(&mut self, ok: bool, repro: impl FnOnce() -> String) {
        if !ok {
            self.worst += 1.0;
            if !self.failed {
                self.failed = true;
                self.repro = Some(repro());
            }
        }
    }

    fn finish(self, prefix: &str) -> CheckOutcome {
        CheckOutcome {
            name: format!("{prefix}/{}", self.name),
            passed: !self.failed,
            measured: self.worst,
            tolerance: self.tol,
            repro: self.repro,
        }
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

fn rng_for(seed: u64, name: &str, suite: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv(name) ^ fnv(suite).rotate_left(17))
}

/// Runs the selected suites over every arrangement of the corpus.
pub fn run_checks(corpus: &[(String, Arrangement)], cfg: &CheckConfig) -> Vec<CheckOutcome> {
    let per: Vec<Vec<CheckOutcome>> = corpus
        .par_iter()
        .map(|(name, a)| {
            let mut out = Vec::new();
            let model = match ZModel::with_cap(a.clone(), 1 << 16) {
                Ok(m) => m,
                Err(e) => {
                    return vec![CheckOutcome {
                        name: format!("{name}/load"),
                        passed: false,
                        measured: 1.0,
                        tolerance: 0.0,
                        repro: Some(e.to_string()),
                    }]
                }
            };
            if cfg.suite.includes(Suite::Combinatorics) {
                out.extend(combinatorics_suite(name, &model, cfg));
            }
            if cfg.suite.includes(Suite::Zmodel) {
                out.extend(zmodel_suite(name, &model, cfg));
            }
            if cfg.suite.includes(Suite::Bundle) {
                out.extend(bundle_suite(name, &model, cfg));
            }
            if cfg.suite.includes(Suite::Cech) {
                out.extend(cech_suite(name, &model, cfg));
            }
            out
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Deterministic rational sample of base points: a grid around the origin
/// plus a particular point of every flat, so hyperplanes and their
/// intersections are always hit.
pub fn sample_grid(a: &Arrangement) -> Vec<Vec<Rat>> {
    let steps: Vec<Rat> = match a.dim() {
        1 => (-16..=48).map(|k| ratio(k, 8)).collect(),
        2 => (-4..=4).map(|k| ratio(k, 2)).collect(),
        _ => (-2..=2).map(|k| ratio(k, 2)).collect(),
    };
    let mut pts: Vec<Vec<Rat>> = vec![vec![]];
    for _ in 0..a.dim() {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                steps.iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s.clone());
                    q
                })
            })
            .collect();
    }
    let mut seen: BTreeSet<Vec<Rat>> = pts.iter().cloned().collect();
    for f in intersection_poset(a) {
        if seen.insert(f.point.clone()) {
            pts.push(f.point);
        }
    }
    pts
}

fn fmt_point(q: &[Rat]) -> String {
    let parts: Vec<String> = q.iter().map(crate::rational::format_rat).collect();
    format!("({})", parts.join(", "))
}

fn combinatorics_suite(name: &str, model: &ZModel, cfg: &CheckConfig) -> Vec<CheckOutcome> {
    let a = model.arrangement();
    let chambers = model.chambers();
    let prefix = format!("{name}/combinatorics");
    let mut rng = rng_for(cfg.seed, name, "combinatorics");

    let mut zas = Check::new("zaslavsky", 0.0);
    let mut chi_sign = Check::new("chi_alternates", 0.0);
    match characteristic_and_poincare(a) {
        Ok(p) => {
            zas.measure(
                (p.chamber_check - chambers.len() as i64).unsigned_abs() as f64,
                || {
                    format!(
                        "chambers={} (-1)^d chi(-1)={}",
                        chambers.len(),
                        p.chamber_check
                    )
                },
            );
            let d = a.dim();
            let ok = p.chi.coeffs().iter().enumerate().all(|(k, &c)| {
                let expected = if (d - k).is_multiple_of(2) { 1 } else { -1 };
                c == 0 || c.signum() == expected
            });
            chi_sign.violation(ok, || format!("chi = {}", p.chi));
        }
        Err(e) => zas.violation(false, || e.to_string()),
    }

    let mut fidelity = Check::new("witness_fidelity", 0.0);
    for c in chambers {
        let ok = a
            .sign_vector(&c.witness)
            .map(|s| s == c.signs)
            .unwrap_or(false);
        fidelity.violation(ok, || {
            format!("chamber {} witness {}", c.signs, fmt_point(&c.witness))
        });
    }

    let mut distinct = Check::new("distinct_full_support", 0.0);
    let sorted = chambers.windows(2).all(|w| w[0].signs < w[1].signs);
    distinct.violation(
        sorted && chambers.iter().all(|c| c.signs.is_full_support()),
        || "chamber table not strictly sorted or has zero entries".into(),
    );

    let mut sep = Check::new("separating_symmetric", 0.0);
    for (i, c1) in chambers.iter().enumerate() {
        for (j, c2) in chambers.iter().enumerate() {
            let s12 = separating_set(c1, c2);
            let ok = s12 == separating_set(c2, c1) && (s12.is_empty() == (i == j));
            sep.violation(ok, || format!("chambers {} and {}", c1.signs, c2.signs));
        }
    }

    let mut restriction = Check::new("restriction_closure", 0.0);
    let n = a.len();
    for t in 0..cfg.trials.min(32) {
        let subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let cells: BTreeSet<SignVector> = enumerate_cells(&a.sub_forms(&subset), a.dim(), None)
            .map(|v| v.into_iter().map(|c| c.signs).collect())
            .unwrap_or_default();
        let restricted: BTreeSet<SignVector> =
            chambers.iter().map(|c| c.signs.restrict(&subset)).collect();
        restriction.violation(cells == restricted, || {
            format!("seed={} trial={t} subset={subset:?}", cfg.seed)
        });
    }

    let mut grid = Check::new("grid_sample_in_table", 0.0);
    for q in sample_grid(a) {
        let s = a.sign_vector(&q).expect("grid point has dimension d");
        if s.is_full_support() {
            grid.violation(model.chamber_index(&s).is_some(), || {
                format!("sign {s} at {} not in chamber table", fmt_point(&q))
            });
        }
    }

    [zas, chi_sign, fidelity, distinct, sep, restriction, grid]
        .into_iter()
        .map(|c| c.finish(&prefix))
        .collect()
}

fn zmodel_suite(name: &str, model: &ZModel, cfg: &CheckConfig) -> Vec<CheckOutcome> {
    let a = model.arrangement();
    let prefix = format!("{name}/zmodel");
    let mut rng = rng_for(cfg.seed, name, "zmodel");
    let mut idem = Check::new("canonicalize_idempotent", 0.0);
    let mut equiv = Check::new("z_equal_equivalence", 0.0);
    let mut card = Check::new("fiber_cardinality", 0.0);
    let mut inj = Check::new("embed_d_injective", 0.0);
    let mut round = Check::new("image_round_trip", 0.0);
    let mut nonhaus = Check::new("non_hausdorff_witness", 0.0);
    let mut oracle = Check::new("membership_vs_chamber_table", 0.0);

    let mut images: BTreeSet<String> = BTreeSet::new();
    let mut total = 0usize;
    for q in sample_grid(a) {
        let sv = a.sign_vector(&q).expect("grid point has dimension d");
        let fiber = model.fiber(&q).expect("grid point has dimension d");
        let conformal = model
            .chambers()
            .iter()
            .filter(|c| sv.conforms_to(&c.signs))
            .count();
        let expected = if sv.is_full_support() { 1 } else { conformal };
        card.violation(fiber.len() == expected && fiber.len() == conformal, || {
            format!(
                "q={} fiber={} conformal={conformal}",
                fmt_point(&q),
                fiber.len()
            )
        });
        for z in &fiber {
            let again = model.canonicalize(&z.chart, &z.base);
            idem.violation(again.as_ref() == Ok(z), || {
                format!("q={} chart={}", fmt_point(&q), z.chart)
            });
            let d = model.embed_d(z).expect("canonical point");
            total += 1;
            images.insert(serde_json::to_string(&d).expect("DPoint serializes"));
            let m = model.d_image_membership(&d);
            round.violation(m.member, || {
                format!("q={} chart={}", fmt_point(&q), z.chart)
            });
        }
        // Equivalence on every pair of charts over q, identified or not.
        let charts: Vec<_> = model
            .chambers()
            .iter()
            .map(|c| crate::zmodel::ZPoint {
                base: q.clone(),
                chart: c.signs.clone(),
            })
            .collect();
        let rel: Vec<Vec<bool>> = charts
            .iter()
            .map(|x| charts.iter().map(|y| model.z_equal(x, y)).collect())
            .collect();
        let c = charts.len();
        for i in 0..c {
            equiv.violation(rel[i][i], || format!("reflexive at {}", fmt_point(&q)));
            for j in 0..c {
                equiv.violation(rel[i][j] == rel[j][i], || {
                    format!("symmetric at {}", fmt_point(&q))
                });
                if rel[i][j] {
                    for (jl, il) in rel[j].iter().zip(&rel[i]) {
                        equiv.violation(!jl || *il, || format!("transitive at {}", fmt_point(&q)));
                    }
                }
            }
        }
        if !sv.is_full_support() {
            let distinct = fiber.len() >= 2 && !model.z_equal(&fiber[0], &fiber[1]);
            nonhaus.violation(distinct, || format!("q={} on a hyperplane", fmt_point(&q)));
        }
    }
    inj.violation(images.len() == total, || {
        format!("{} distinct images of {total} points", images.len())
    });

    // Random points of D^n: a member iff some chamber matches the symbols.
    let flats = intersection_poset(a);
    for t in 0..cfg.trials {
        let f = &flats[rng.gen_range(0..flats.len())];
        let vals = a.eval(&f.point).expect("flat point");
        let coords: Vec<DCoord> = vals
            .iter()
            .map(|v| {
                if num_traits::Zero::is_zero(v) {
                    if rng.gen_bool(0.5) {
                        DCoord::P
                    } else {
                        DCoord::M
                    }
                } else {
                    DCoord::Value(v.clone())
                }
            })
            .collect();
        let dp = DPoint(coords);
        let want = model.chambers().iter().any(|c| {
            dp.0.iter().zip(&c.signs.0).all(|(x, s)| match x {
                DCoord::P => *s == Sign::Plus,
                DCoord::M => *s == Sign::Minus,
                DCoord::Value(_) => true,
            })
        });
        oracle.violation(model.d_image_membership(&dp).member == want, || {
            format!(
                "seed={} trial={t} point={}",
                cfg.seed,
                serde_json::to_string(&dp).unwrap()
            )
        });
    }

    [idem, equiv, card, inj, round, nonhaus, oracle]
        .into_iter()
        .map(|c| c.finish(&prefix))
        .collect()
}

/// A random point of `M(A)`, generic with probability one.
pub fn random_mpoint(rng: &mut impl Rng, a: &Arrangement) -> MPoint {
    loop {
        let d = a.dim();
        let m = MPoint::from_f64(
            (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        );
        if crate::bundle::embed_m(a, &m).is_ok() {
            return m;
        }
    }
}

/// A random element of `W` with Euclidean norm at most `radius`.
pub fn random_w_element(rng: &mut impl Rng, b: &Bundle, radius: f64) -> Vec<f64> {
    let k = b.w().dim();
    let n = b.arrangement().len();
    if k == 0 {
        return vec![0.0; n];
    }
    let u: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut l = b.w().to_ambient(&u);
    let norm = l.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = rng.gen_range(0.0..radius);
    if norm > 0.0 {
        for x in l.iter_mut() {
            *x *= target / norm;
        }
    }
    l
}

fn random_z(rng: &mut impl Rng, n: usize) -> CxVector {
    let z = (0..n)
        .map(|_| {
            let im: f64 = rng.gen_range(-2.0..2.0);
            let im = if im.abs() < 1e-3 { 1.0 } else { im };
            let re = if rng.gen_bool(0.2) {
                0.0
            } else {
                rng.gen_range(-2.0..2.0)
            };
            Complex64::new(re, im)
        })
        .collect();
    CxVector::new(z).expect("nonzero imaginary parts")
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Points of `M(A)` lying over hyperplanes: exact local sections at flat
/// points, converted to floating coordinates.
fn special_mpoints(b: &Bundle) -> Vec<MPoint> {
    let a = b.arrangement();
    let mut out = Vec::new();
    for f in intersection_poset(a)
        .iter()
        .filter(|f| !f.hyperplanes.is_empty())
        .take(6)
    {
        let sv = a.sign_vector(&f.point).expect("flat point");
        for c in b
            .model()
            .chambers()
            .iter()
            .filter(|c| sv.conforms_to(&c.signs))
            .take(3)
        {
            let m = b.local_section(&c.signs, &f.point).expect("chamber chart");
            out.push(MPoint::from_f64(m.re, m.im));
        }
    }
    out
}

fn bundle_suite(name: &str, model: &ZModel, cfg: &CheckConfig) -> Vec<CheckOutcome> {
    let b = Bundle::new(model.clone());
    let a = b.arrangement();
    let (n, d, k) = (a.len(), a.dim(), b.w().dim());
    let prefix = format!("{name}/bundle");
    let mut rng = rng_for(cfg.seed, name, "bundle");
    let seed = cfg.seed;

    let mut conj = Check::new("conjugation_identity", 1e-12);
    let mut real = Check::new("real_part_preserved", 1e-15);
    let mut convex = Check::new("hessian_min_eigenvalue", 1e-9);
    let mut grad = Check::new("gradient_vs_finite_difference", 1e-6);
    for t in 0..cfg.trials {
        let z = random_z(&mut rng, n);
        let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let moved = act(&lambda, &z).expect("moderate exponents");
        let xy = xy_from_z(&z).expect("nonzero");
        for j in 0..n {
            let w = Complex64::new(lambda[j].exp() * xy.x[j], (-lambda[j]).exp() * xy.y[j]);
            let expected = Complex64::i() * w * w;
            conj.measure((moved.z[j] - expected).norm() / expected.norm(), || {
                format!(
                    "seed={seed} trial={t} z={} lambda={lambda:?}",
                    serde_json::to_string(&z).unwrap()
                )
            });
            let re = moved.z[j].re;
            real.measure(
                (re - z.z[j].re).abs() / z.z[j].re.abs().max(f64::MIN_POSITIVE),
                || format!("seed={seed} trial={t}"),
            );
        }
        let u: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ev = rho_eval(&z, b.w(), &u).expect("moderate exponents");
        if k > 0 {
            let min_eig = SymmetricEigen::new(ev.hess.clone()).eigenvalues.min();
            convex.measure((-min_eig).max(0.0), || {
                format!("seed={seed} trial={t} min eigenvalue {min_eig:e}")
            });
            let h = 1e-5;
            let mut err: f64 = 0.0;
            for i in 0..k {
                let (mut up, mut dn) = (u.clone(), u.clone());
                up[i] += h;
                dn[i] -= h;
                let fd = (rho_eval(&z, b.w(), &up).unwrap().value
                    - rho_eval(&z, b.w(), &dn).unwrap().value)
                    / (2.0 * h);
                err = err.max((fd - ev.grad[i]).abs());
            }
            grad.measure(err / ev.grad.amax().max(1.0), || {
                format!("seed={seed} trial={t}")
            });
        }
    }

    let mut fixed = Check::new("retraction_fixed_point", 1e-9);
    let mut recover_m = Check::new("orbit_recovers_m", 1e-6);
    let mut recover_l = Check::new("orbit_recovers_lambda", 1e-7);
    let mut gnorm = Check::new("final_gradient_norm", 1e-10);
    let mut unique = Check::new("newton_start_independence", 1e-8);
    let mut equivariance = Check::new("smoosh_equivariance", 0.0);
    let mut identity = Check::new("act_dual_identity", 1e-12);
    let mut group = Check::new("act_dual_group_law", 1e-8);
    let mut transport = Check::new("fiber_transport_round_trip", 1e-8);
    let mut inverse = Check::new("fiber_transport_inverse", 1e-8);
    let mut lift = Check::new("lift_independence", 1e-8);
    let mut not_in_n = Check::new("not_in_n_detected", 0.0);

    let specials = special_mpoints(&b);
    for t in 0..cfg.trials {
        let m = if !specials.is_empty() && t % 4 == 3 {
            specials[(t / 4) % specials.len()].clone()
        } else {
            random_mpoint(&mut rng, a)
        };
        let repro = || {
            format!(
                "seed={seed} trial={t} m={}",
                serde_json::to_string(&m).unwrap()
            )
        };
        let z0 = b.embed_m(&m).expect("m in M(A)");

        match b.kempf_ness_retract(&z0) {
            Ok(r) => {
                let l = r.lambda_star.iter().map(|x| x.abs()).fold(0.0, f64::max);
                fixed.measure(l.max(r.m.max_abs_diff(&m)), repro);
            }
            Err(e) => fixed.violation(false, || format!("{} {e}", repro())),
        }

        let lambda0 = random_w_element(&mut rng, &b, 5.0);
        let z = act(&lambda0, &z0).expect("bounded exponents");
        match b.kempf_ness_retract(&z) {
            Ok(r) => {
                recover_m.measure(r.m.max_abs_diff(&m) / (1.0 + m.max_abs()), repro);
                let back: Vec<f64> = lambda0.iter().map(|x| -x).collect();
                recover_l.measure(max_diff(&r.lambda_star, &back), repro);
                gnorm.measure(r.diagnostics.grad_norm, repro);
                if k > 0 {
                    for _ in 0..4 {
                        let start: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
                        match b.retract_from(&z, &start) {
                            Ok(r2) => {
                                unique.measure(max_diff(&r2.lambda_star, &r.lambda_star), repro)
                            }
                            Err(e) => unique.violation(false, || format!("{} {e}", repro())),
                        }
                    }
                }
            }
            Err(e) => {
                recover_m.violation(false, || format!("{} {e}", repro()));
            }
        }

        let phi1: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let phi2: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let result = (|| -> crate::Result<()> {
            let base = b.smoosh(&m)?;
            let m1 = b.act_dual(&phi1, &m)?;
            equivariance.violation(b.same_point(&b.smoosh(&m1)?, &base), repro);

            identity.measure(b.act_dual(&vec![0.0; d], &m)?.max_abs_diff(&m), repro);

            let sum: Vec<f64> = phi1.iter().zip(&phi2).map(|(x, y)| x + y).collect();
            let lhs = b.act_dual(&sum, &m)?;
            let rhs = b.act_dual(&phi1, &b.act_dual(&phi2, &m)?)?;
            group.measure(lhs.max_abs_diff(&rhs), repro);

            let phi = b.fiber_transport(&m, &m1)?;
            transport.measure(max_diff(&phi, &phi1), repro);
            let back = b.fiber_transport(&m1, &m)?;
            let neg: Vec<f64> = phi1.iter().map(|x| -x).collect();
            inverse.measure(max_diff(&back, &neg), repro);

            let shift: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let shifted = b.act_dual_shifted(&phi1, &m, &shift)?;
            lift.measure(shifted.max_abs_diff(&m1), repro);

            if k > 0 {
                // Push the real part off the affine image of f along W.
                let xi = b.w().to_ambient(&{
                    let mut e = vec![0.0; k];
                    e[0] = 1.0;
                    e
                });
                let off: Vec<Complex64> =
                    z0.z.iter()
                        .zip(&xi)
                        .map(|(c, x)| Complex64::new(c.re + 0.37 * x, c.im))
                        .collect();
                if let Ok(off) = CxVector::new(off) {
                    let caught = matches!(b.kempf_ness_retract(&off), Err(Error::NotInN(_)));
                    not_in_n.violation(caught, repro);
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            equivariance.violation(false, || format!("{} {e}", repro()));
        }
    }

    // Sign patterns over a flat point that no chamber realizes.
    for f in intersection_poset(a)
        .iter()
        .filter(|f| f.hyperplanes.len() >= 2)
    {
        let zs = &f.hyperplanes;
        let vals = a.eval(&f.point).expect("flat point");
        for mask in 0u32..(1 << zs.len()) {
            let pattern: Vec<Sign> = (0..zs.len())
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect();
            let realized = model
                .chambers()
                .iter()
                .any(|c| zs.iter().zip(&pattern).all(|(&j, s)| c.signs.0[j] == *s));
            if realized {
                continue;
            }
            let z: Vec<Complex64> = (0..n)
                .map(|j| match zs.iter().position(|&x| x == j) {
                    Some(i) => Complex64::new(0.0, pattern[i].as_i64() as f64),
                    None => Complex64::new(to_f64(&vals[j]), 0.0),
                })
                .collect();
            let z = CxVector::new(z).expect("nonzero coordinates");
            let caught = matches!(b.kempf_ness_retract(&z), Err(Error::NotInN(_)));
            not_in_n.violation(caught, || {
                format!("flat {:?} pattern {mask:b}", f.hyperplanes)
            });
        }
    }

    let mut sections = Check::new("local_section_projects_to_chart", 0.0);
    for q in sample_grid(a) {
        for c in model.chambers() {
            let m = b
                .local_section(&c.signs, &q)
                .expect("chart and point are valid");
            let ok = match (b.smoosh(&m), model.canonicalize(&c.signs, &q)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            };
            sections.violation(ok, || format!("chart {} q={}", c.signs, fmt_point(&q)));
        }
    }

    [
        conj,
        real,
        convex,
        grad,
        fixed,
        recover_m,
        recover_l,
        gnorm,
        unique,
        equivariance,
        identity,
        group,
        transport,
        inverse,
        lift,
        not_in_n,
        sections,
    ]
    .into_iter()
    .map(|c| c.finish(&prefix))
    .collect()
}

fn cech_suite(name: &str, model: &ZModel, cfg: &CheckConfig) -> Vec<CheckOutcome> {
    let a = model.arrangement();
    let d = a.dim();
    let prefix = format!("{name}/cech");
    let opts = CechOptions {
        chamber_cap: cfg.chamber_cap,
    };
    let mut dd = Check::new("d_squared_zero", 0.0);
    let mut c0 = Check::new("c0_is_chambers", 0.0);
    let mut b0 = Check::new("b0_connected", 0.0);
    let mut os = Check::new("cech_equals_os", 0.0);
    let mut euler = Check::new("euler_characteristic", 0.0);

    match build_cech_complex(model, d + 1, opts) {
        Ok(cx) => {
            dd.violation(cx.is_complex(), || "d∘d ≠ 0".into());
            let singles = cx.degrees[0]
                .iter()
                .all(|e| e.subset.len() == 1 && e.component.is_empty());
            c0.violation(
                cx.degrees[0].len() == model.chambers().len() && singles,
                || format!("dim C^0 = {}", cx.degrees[0].len()),
            );
        }
        Err(e) => dd.violation(false, || e.to_string()),
    }
    match betti_compare(model, d + 1, opts) {
        Ok(t) => {
            b0.violation(t.cech.first() == Some(&1), || {
                format!("cech = {:?}", t.cech)
            });
            os.violation(t.matched, || {
                format!("cech = {:?}, os = {:?}", t.cech, t.os)
            });
        }
        Err(e) => os.violation(false, || e.to_string()),
    }
    if model.chambers().len() <= 8 {
        match build_full_complex(model) {
            Ok(cx) => {
                let alt = |v: &[usize]| {
                    v.iter()
                        .enumerate()
                        .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
                        .sum::<i64>()
                };
                let lhs = alt(&cx.dims());
                let rhs = alt(&cx.betti());
                euler.measure((lhs - rhs).unsigned_abs() as f64, || {
                    format!("{lhs} vs {rhs}")
                });
            }
            Err(e) => euler.violation(false, || e.to_string()),
        }
    }
    [dd, c0, b0, os, euler]
        .into_iter()
        .map(|c| c.finish(&prefix))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_flats_and_is_large_enough() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, -2], &[1, 1, -1]])
            .unwrap();
        let g = sample_grid(&a);
        assert!(g.len() >= 50);
        assert!(g.contains(&vec![ratio(3, 2), ratio(-1, 2)]));
        let line = Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap();
        assert!(sample_grid(&line).len() >= 50);
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("cech".parse::<Suite>().unwrap(), Suite::Cech);
        assert!("nope".parse::<Suite>().is_err());
    }
}
