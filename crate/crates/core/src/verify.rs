//! The acceptance suite: ten numerical checks, each with a pinned tolerance
//! and time budget. Shared by `qdeform verify` and the integration tests.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{structure_catalog, structure_recurrence, structure_unified, DeformationKind, StructureSeq, TwoParamParams, UnifiedParams};
use crate::coherent::{coherent_state, completeness_check, moment_target, normalization_sq, weight_measure};
use crate::error::Result;
use crate::fockrep::{build_finite, build_lowest_weight, coordinate_realization_residual, full_report, relation_residual};
use crate::kerr::{deviation_scaling, KerrParams, Matcher, QUADRATIC_BAND};
use crate::qcalc::{jackson_derivative, jackson_measure, phi00, QBase, SeriesPolicy};
use crate::qhermite::{gram_target, hermite_explicit, hermite_recurrence, orthogonality_check};
use crate::repclass::{classify, RepCase, RepParams};

pub const DEFAULT_SEED: u64 = 0x9d_e4_0f_2a;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Largest observed error, in the units of `tolerance`.
    pub worst: f64,
    pub tolerance: f64,
    pub seconds: f64,
    pub budget_seconds: Option<f64>,
    pub detail: String,
}

/// What a check measured, before timing is applied.
struct Measured {
    worst: f64,
    tolerance: f64,
    ok: bool,
    detail: String,
}

impl Measured {
    fn below(worst: f64, tolerance: f64, detail: String) -> Self {
        Measured {
            worst,
            tolerance,
            ok: worst < tolerance,
            detail,
        }
    }
}

fn timed(id: u8, name: &'static str, budget: Option<f64>, f: impl FnOnce() -> Result<Measured>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let seconds = start.elapsed().as_secs_f64();
    let in_time = budget.map_or(true, |b| seconds < b);
    match result {
        Ok(m) => {
            let mut detail = m.detail;
            if !in_time {
                detail = format!("{detail}; over time budget");
            }
            Outcome {
                id,
                name,
                passed: m.ok && in_time,
                worst: m.worst,
                tolerance: m.tolerance,
                seconds,
                budget_seconds: budget,
                detail,
            }
        }
        Err(e) => Outcome {
            id,
            name,
            passed: false,
            worst: f64::NAN,
            tolerance: f64::NAN,
            seconds,
            budget_seconds: budget,
            detail: format!("error: {e}"),
        },
    }
}

fn rng(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn qb(q: f64) -> QBase {
    QBase::new(q).expect("valid base")
}

fn draw_q(r: &mut ChaCha8Rng) -> f64 {
    if r.gen_bool(0.5) {
        r.gen_range(0.1..0.95)
    } else {
        r.gen_range(1.05..3.0)
    }
}

/// Closed form against the recurrence, `|diff| <= 1e-11 (1 + |f|)`.
pub fn structure_oracle(seed: u64) -> Outcome {
    timed(1, "structure function: closed form vs recurrence", Some(1.0), || {
        let mut r = rng(seed, 1);
        let mut worst: f64 = 0.0;
        let mut at = String::new();
        for _ in 0..200 {
            let p = UnifiedParams::new(
                draw_q(&mut r),
                r.gen_range(-2.0..=2.0),
                r.gen_range(-2.0..=2.0),
                r.gen_range(-2.0..=2.0),
                r.gen_range(-0.9..=0.9),
            )?;
            let rec = structure_recurrence(&p, 50);
            for (n, fr) in rec.iter().enumerate() {
                let fc = structure_unified(&p, n as u32);
                let e = (fc - fr).abs() / (1.0 + fr.abs());
                if e > worst {
                    worst = e;
                    at = format!("{p:?} n={n}");
                }
            }
        }
        Ok(Measured::below(worst, 1e-11, format!("200 draws, n <= 50; worst {worst:.2e} at {at}")))
    })
}

pub fn catalog_members() -> Vec<DeformationKind> {
    vec![
        DeformationKind::ArikCoon { q: qb(0.5) },
        DeformationKind::ArikCoon { q: qb(1.7) },
        DeformationKind::BiedenharnMacfarlane { q: qb(0.7) },
        DeformationKind::BiedenharnMacfarlane { q: qb(1.3) },
        DeformationKind::ChungEtAl { q: qb(0.6), alpha: 0.5, beta: 0.3 },
        DeformationKind::ChungEtAl { q: qb(1.2), alpha: 1.0, beta: -0.4 },
        DeformationKind::Bdy { q: qb(1.2), alpha: 0.8, beta: -0.2, gamma: 1.4 },
        DeformationKind::Bdy { q: qb(0.8), alpha: 0.6, beta: 0.5, gamma: 0.6 },
        DeformationKind::NuModified { nu: 0.3 },
        DeformationKind::QNu { q: qb(0.8), nu: 0.25 },
        DeformationKind::QNu { q: qb(1.4), nu: -0.2 },
    ]
}

/// Each named deformation against its unified embedding, `n <= 30`, relative `1e-12`.
pub fn catalog_embedding() -> Outcome {
    timed(2, "catalog embedding into the unified family", Some(1.0), || {
        let mut worst: f64 = 0.0;
        let mut at = String::new();
        for kind in catalog_members() {
            let u = kind.to_unified().expect("catalog member embeds");
            for n in 0..=30 {
                let a = structure_catalog(&kind, n);
                let b = structure_unified(&u, n);
                let e = (a - b).abs() / a.abs().max(1.0);
                if e > worst {
                    worst = e;
                    at = format!("{kind:?} n={n}");
                }
            }
        }
        Ok(Measured::below(worst, 1e-12, format!("{} members, n <= 30; worst {worst:.2e} at {at}", catalog_members().len())))
    })
}

/// Lowest-weight matrices of dimension 40 for the catalog and a few generic
/// members: relation residual `< 1e-10`, Casimir residuals `< 1e-9`.
pub fn matrix_relations() -> Outcome {
    timed(3, "truncated Fock matrices: relation and Casimir", Some(5.0), || {
        let mut kinds = catalog_members();
        kinds.push(DeformationKind::Abc { q: qb(0.5), a: -0.5, b: 1.0, c: 2.0 });
        kinds.push(DeformationKind::Unified(UnifiedParams::new(0.9, 0.3, 0.1, 0.7, 0.2)?));
        kinds.push(DeformationKind::Unified(UnifiedParams::new(1.1, -0.4, 0.2, 0.5, 0.35)?));
        let (mut rel, mut cas) = (0.0f64, 0.0f64);
        for kind in &kinds {
            let u = kind.to_unified().expect("catalog member embeds");
            let quad = build_lowest_weight(&StructureSeq::closed(*kind), 0.0, 1.0, 40)?;
            let rep = full_report(&quad, &u)?;
            rel = rel.max(rep.relation_residual);
            cas = cas.max(rep.casimir_residuals.values().fold(0.0f64, |m, &v| m.max(v)));
        }
        let ok = rel < 1e-10 && cas < 1e-9;
        Ok(Measured {
            worst: rel.max(cas),
            tolerance: 1e-10,
            ok,
            detail: format!("{} algebras at dim 40; relation {rel:.2e} (< 1e-10), Casimir {cas:.2e} (< 1e-9)", kinds.len()),
        })
    })
}

/// `B = -1` is one-dimensional, a case iv(b) module is bilateral with positive
/// weights on `[-200, 200]`, and the two-dimensional constructions satisfy the
/// relation exactly up to `1e-12`.
pub fn classification(seed: u64) -> Outcome {
    timed(4, "representation classification", None, || {
        let mut r = rng(seed, 4);
        let mut failures = Vec::new();
        let mut worst: f64 = 0.0;

        for _ in 0..10 {
            let u = UnifiedParams::new(
                draw_q(&mut r),
                r.gen_range(-1.0..=1.0),
                r.gen_range(-1.0..=1.0),
                r.gen_range(-1.0..=1.0),
                r.gen_range(0.1..=0.9),
            )?;
            let p = RepParams::new(u, 0.0, r.gen_range(-2.0..=2.0), -1.0)?;
            let c = classify(&p, 200)?;
            if c.case != RepCase::OneDim {
                failures.push(format!("B = -1 gave {:?} for {u:?}", c.case));
                continue;
            }
            let quad = build_finite(&c)?;
            if quad.a.amax() != 0.0 || quad.a_dag.amax() != 0.0 {
                failures.push("one-dimensional module with a != 0".into());
            }
            worst = worst.max(relation_residual(&quad, &u)?.relation_residual);
        }

        for (u, lambda0, b) in [
            (UnifiedParams::new(0.5, 0.0, 0.0, 1.0, 0.3)?, 2.5, 0.5),
            (UnifiedParams::new(0.5, 0.0, 0.2, 1.0, 0.3)?, 5.0, -0.5),
        ] {
            let c = classify(&RepParams::new(u, lambda0, 0.0, b)?, 200)?;
            let positive = (-200..=200).all(|n| c.lambda.get(n).is_some_and(|v| v > 0.0));
            if c.case != RepCase::BilateralIv || !positive {
                failures.push(format!("bilateral input gave {:?} (positive on [-200,200]: {positive})", c.case));
            }
        }

        for u in [UnifiedParams::new(0.5, 0.0, 0.3, 1.0, 0.4)?, UnifiedParams::new(2.0, 1.0, 0.1, 0.5, 0.3)?] {
            let (x, y) = u.bases();
            let kappa0 = 0.25;
            let c = u.q.value().powf(u.alpha * kappa0 + u.beta);
            let iii = RepParams::new(u, 2.0 * c / (y - x), kappa0, (x + y) / (x - y))?;
            let iv = RepParams::new(u, 0.0, kappa0, -(x + y) / (x - y))?;
            for (p, want) in [(iii, RepCase::TwoDimIii), (iv, RepCase::TwoDimIv)] {
                let cl = classify(&p, 50)?;
                if cl.case != want {
                    failures.push(format!("expected {want:?}, got {:?}", cl.case));
                    continue;
                }
                let quad = build_finite(&cl)?;
                worst = worst.max(relation_residual(&quad, &u)?.relation_residual);
            }
        }

        let ok = failures.is_empty() && worst < 1e-12;
        let detail = if failures.is_empty() {
            format!("10 one-dimensional, 2 bilateral, 4 two-dimensional inputs; finite-module relation residual {worst:.2e} (< 1e-12)")
        } else {
            failures.join("; ")
        };
        Ok(Measured {
            worst,
            tolerance: 1e-12,
            ok,
            detail,
        })
    })
}

/// Explicit form against the recurrence and the Gram matrix against its
/// closed-form diagonal.
pub fn hermite() -> Outcome {
    timed(5, "q^-1-Hermite: explicit form and orthogonality", Some(2.0), || {
        let mut worst: f64 = 0.0;
        let mut gram_worst: f64 = 0.0;
        for &qv in &[0.3, 0.5, 0.8] {
            let q = qb(qv);
            for n in 0..=15 {
                let h = hermite_recurrence(n, q);
                for i in 0..=40 {
                    let x = -2.0 + 0.1 * i as f64;
                    let rv = h.eval(x);
                    let ev = hermite_explicit(n, q, x);
                    // sum of the absolute monomial contributions
                    let scale: f64 = h.coeffs.iter().enumerate().map(|(k, c)| (c * x.powi(k as i32)).abs()).sum();
                    worst = worst.max((rv - ev).abs() / scale.max(rv.abs()).max(1.0));
                }
            }
            let g = orthogonality_check(q, 10)?;
            for m in 0..=10 {
                let t = gram_target(q, m as u32);
                gram_worst = gram_worst.max((g[(m, m)] - t).abs() / t);
                for n in 0..m {
                    gram_worst = gram_worst.max(g[(m, n)].abs() / (g[(m, m)] * g[(n, n)]).sqrt());
                }
            }
        }
        Ok(Measured {
            worst: worst.max(gram_worst),
            tolerance: 1e-10,
            ok: worst < 1e-10 && gram_worst < 1e-10,
            detail: format!("explicit vs recurrence {worst:.2e}, Gram {gram_worst:.2e}; q in {{0.3, 0.5, 0.8}}"),
        })
    })
}

/// Eigen-residual of `|z>` for `|z| <= 3` and the normalization product.
pub fn coherent_states() -> Outcome {
    timed(6, "coherent states: eigenvector and normalization", None, || {
        let q = qb(0.5);
        let policy = SeriesPolicy::default();
        let (mut eig, mut norm) = (0.0f64, 0.0f64);
        for &r in &[0.0, 0.5, 1.0, 2.0, 3.0] {
            for &phi in &[0.0, 1.0, 2.5, 4.0] {
                let z = Complex64::from_polar(r, phi);
                let s = coherent_state(z, q, 1e-24)?;
                eig = eig.max(s.eigen_residual()?);
                let n2 = normalization_sq(r * r, q, &policy)?;
                norm = norm.max((n2.series - n2.product).abs() / n2.product);
                norm = norm.max((s.norm_sq - n2.product).abs() / n2.product);
            }
        }
        Ok(Measured {
            worst: eig,
            tolerance: 1e-8,
            ok: eig < 1e-8 && norm < 1e-12,
            detail: format!("q = 0.5, |z| <= 3: eigen-residual {eig:.2e} (< 1e-8), normalization {norm:.2e} (< 1e-12)"),
        })
    })
}

/// Lattice measure moments and the resolution-of-unity diagonal.
pub fn moment_problem() -> Outcome {
    timed(7, "moment problem and resolution of unity", Some(2.0), || {
        let (mut mom, mut diag) = (0.0f64, 0.0f64);
        for &qv in &[0.3, 0.5, 0.8] {
            let q = qb(qv);
            let sol = weight_measure(q, 60)?;
            for n in 0..=20 {
                let t = moment_target(n, q)?;
                mom = mom.max((sol.moment(n) - t).abs() / t);
            }
            let g = completeness_check(q, 10, 60)?;
            for n in 0..=10 {
                diag = diag.max((g[(n, n)] - 1.0).abs());
            }
        }
        Ok(Measured {
            worst: mom,
            tolerance: 1e-8,
            ok: mom < 1e-8 && diag < 1e-6,
            detail: format!("k_range 60: moments {mom:.2e} (< 1e-8, n <= 20), Gram diagonal {diag:.2e} (< 1e-6, n <= 10)"),
        })
    })
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `D e_q = e_q` on the lattice, and the Leibniz and summation-by-parts rules
/// for random polynomials.
pub fn jackson_calculus(seed: u64) -> Outcome {
    timed(8, "Jackson derivative and integral identities", None, || {
        let policy = SeriesPolicy::default();
        let mut r = rng(seed, 8);
        let (mut fix, mut leib, mut parts) = (0.0f64, 0.0f64, 0.0f64);
        for &qv in &[0.3, 0.5, 0.8] {
            let q = qb(qv);
            let eq = |t: f64| phi00(t, q, &policy).expect("e_q converges for t > 0");
            for k in -8..=8 {
                let x = qv.powi(k);
                let d = jackson_derivative(eq, x, q)?;
                fix = fix.max((d - eq(x)).abs() / eq(x));
            }

            for _ in 0..20 {
                let du = r.gen_range(0..=6);
                let dv = r.gen_range(0..=6);
                let u: Vec<f64> = (0..=du).map(|_| r.gen_range(-1.0..=1.0)).collect();
                let v: Vec<f64> = (0..=dv).map(|_| r.gen_range(-1.0..=1.0)).collect();
                let uf = |t: f64| horner(&u, t);
                let vf = |t: f64| horner(&v, t);
                let uv = |t: f64| uf(t) * vf(t);

                for k in -4..=10 {
                    let x = qv.powi(k);
                    let xs = x / qv;
                    let lhs = jackson_derivative(uv, x, q)?;
                    let rhs = jackson_derivative(uf, x, q)? * vf(xs) + uf(x) * jackson_derivative(vf, x, q)?;
                    // magnitudes entering the difference quotients
                    let scale = (uv(xs).abs() + uv(x).abs() + uf(x).abs() * vf(xs).abs()) / xs;
                    leib = leib.max((lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE));
                }

                // sum over q^k, k in [k_lo, k_hi], of w_k [Du(x) v(x/q) + u(x) Dv(x)]
                // telescopes to (uv)(q^{k_lo - 1}) - (uv)(q^{k_hi})
                let (k_lo, k_hi) = (-3, 150);
                let m = jackson_measure(q, k_lo, k_hi)?;
                let mut sum = 0.0;
                let mut scale = 0.0;
                for (&x, &w) in m.points().iter().zip(m.weights()) {
                    let t = jackson_derivative(uf, x, q)? * vf(x / qv) + uf(x) * jackson_derivative(vf, x, q)?;
                    sum += w * t;
                    scale += w * t.abs();
                }
                let boundary = uv(qv.powi(k_lo - 1)) - uv(qv.powi(k_hi));
                parts = parts.max((sum - boundary).abs() / scale.max(boundary.abs()).max(f64::MIN_POSITIVE));
            }
        }
        let worst = fix.max(leib).max(parts);
        Ok(Measured::below(
            worst,
            1e-12,
            format!("D e_q = e_q {fix:.2e}, Leibniz {leib:.2e}, by parts {parts:.2e}; q in {{0.3, 0.5, 0.8}}"),
        ))
    })
}

/// Operator identities of the coordinate realization for random parameters.
pub fn two_param_realization(seed: u64) -> Outcome {
    timed(9, "two-parameter coordinate realization", None, || {
        let mut r = rng(seed, 9);
        let mut worst: f64 = 0.0;
        let mut draws = 0;
        while draws < 20 {
            let l = r.gen_range(1..=2);
            let step = r.gen_range(1..=2);
            let p = r.gen_range(0.5..=2.0);
            let q = r.gen_range(0.5..=2.0);
            let beta = r.gen_range(-1.0..=1.0);
            let tp = match TwoParamParams::new(p, q, l as f64 / step as f64, beta, l) {
                Ok(tp) if tp.denominator().abs() > 0.05 => tp,
                _ => continue,
            };
            worst = worst.max(coordinate_realization_residual(&tp, 30)?);
            draws += 1;
        }
        Ok(Measured::below(worst, 1e-12, format!("20 draws, degree <= 30, l/alpha in {{1, 2}}; worst {worst:.2e}")))
    })
}

/// Scaling of the deviation from the Kerr spectrum when `kappa` is halved.
pub fn kerr_scaling() -> Outcome {
    timed(10, "Kerr matching: second-order remainder", Some(1.0), || {
        let p = KerrParams::new(1.0, 1e-3)?;
        let eq = deviation_scaling(&p, Matcher::Equal, 6)?;
        let nu0 = deviation_scaling(&p, Matcher::Nu0, 6)?;
        let flag = if nu0.in_band { "in band" } else { "outside band, flagged" };
        Ok(Measured {
            worst: eq.ratio,
            tolerance: QUADRATIC_BAND.1,
            ok: eq.in_band,
            detail: format!(
                "equal matcher ratio {:.4} (band [{}, {}]); nu0 matcher ratio {:.4} ({flag})",
                eq.ratio, QUADRATIC_BAND.0, QUADRATIC_BAND.1, nu0.ratio
            ),
        })
    })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        structure_oracle(seed),
        catalog_embedding(),
        matrix_relations(),
        classification(seed),
        hermite(),
        coherent_states(),
        moment_problem(),
        jackson_calculus(seed),
        two_param_realization(seed),
        kerr_scaling(),
    ]
}

pub fn format_line(o: &Outcome) -> String {
    format!(
        "[{}] {:>2} {} ({:.3}s): {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.name,
        o.seconds,
        o.detail
    )
}
