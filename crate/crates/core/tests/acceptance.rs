//! The acceptance gate: eight criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use common::*;
use kodaira_stab::chamber::{
    in_fundamental_chamber, jh_of_skyscraper, normalize, reduce_to_fundamental,
    wall_crossings_on_segment, ChamberVerdict, NormalizedCharge,
};
use kodaira_stab::charge::{membership, min_root_witness, support_form, vanishing_root, Component};
use kodaira_stab::rational::{ci, common_denominator, cq, q, q_frac, CQ, Q};
use kodaira_stab::twist::{dual_reflect_charge, reflect_class};
use kodaira_stab::{apply_word, CentralCharge, Error, KClass, KodairaCurve};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn expected_root_count(c: &KodairaCurve) -> usize {
    use kodaira_stab::CurveTypeId::*;
    match c.id() {
        I(n) | MultipleI { n, .. } => (n * (n - 1)) as usize,
        III => 2,
        IV => 6,
        IStar(n) => (2 * (n + 4) * (n + 3)) as usize,
        IVStar => 72,
        IIIStar => 126,
        IIStar => 240,
    }
}

fn cartan_consistency() -> Outcome {
    let ids = sweep_ids();
    for id in &ids {
        let c = curve(id);
        let g = c.gram();
        let n = c.n();
        for i in 0..n {
            ensure!(g[i][i] == -2, "{id}: diagonal entry {i} is {}", g[i][i]);
            for j in 0..n {
                ensure!(g[i][j] == g[j][i], "{id}: not symmetric at ({i},{j})");
            }
            let row: i64 = (0..n).map(|j| g[i][j] * c.marks()[j]).sum();
            ensure!(row == 0, "{id}: (gram·marks)[{i}] = {row}");
        }
        let cert = c.semidefinite_certificate().ok_or(format!("{id}: LDLᵀ failed"))?;
        ensure!(cert.pivots.iter().all(|p| !p.is_negative()), "{id}: negative pivot");
        let zeros = cert.pivots.iter().filter(|p| p.is_zero()).count();
        ensure!(zeros == 1, "{id}: {zeros} kernel directions");
    }
    Ok(format!("{} curve types", ids.len()))
}

fn root_counts() -> Outcome {
    let bound = 6i64;
    let mut total_box = 0;
    for id in sweep_ids() {
        let c = curve(&id);
        let r0 = c.fundamental_roots();
        let want = expected_root_count(&c);
        ensure!(r0.len() == want, "{id}: {} fundamental roots, expected {want}", r0.len());
        let aff = c.affine_node() - 1;
        for w in r0 {
            ensure!(c.norm(w).unwrap() == -2 && w.ranks[aff] == 0 && w.chi == 0, "{id}: bad representative {w}");
        }
        // the scan must find exactly the translates w0 + m·ρ inside the box
        let rho = c.rho();
        let mut predicted = BTreeSet::new();
        for w in r0 {
            for m in -bound..=bound {
                let v = w + &rho.scale(m);
                if v.ranks.iter().all(|x| x.abs() <= bound) {
                    predicted.insert(v);
                }
            }
        }
        let scanned: BTreeSet<KClass> = c.enumerate_roots_in_box(bound as u32).into_iter().collect();
        ensure!(
            scanned == predicted,
            "{id}: box scan found {} roots, closure predicts {}",
            scanned.len(),
            predicted.len()
        );
        let finite: BTreeSet<KClass> = finite_roots_by_scan(&c).into_iter().collect();
        let closure: BTreeSet<KClass> = r0.iter().cloned().collect();
        ensure!(finite == closure, "{id}: finite roots differ between scan and closure");
        total_box += scanned.len();
    }
    Ok(format!("bound {bound}, {total_box} roots scanned"))
}

fn p0_vs_oracle() -> Outcome {
    let per_curve = 1000;
    let bound = 50;
    let mut stats = (0usize, 0usize, 0usize, 0usize);
    for (seed, id) in ["I_2", "I_3", "IV"].iter().enumerate() {
        let c = curve(id);
        let finite = finite_roots_by_scan(&c);
        let mut r = rng(300 + seed as u64);
        let mut done = 0;
        while done < per_curve {
            let force = r.gen_bool(0.25);
            let z = random_charge(&mut r, &c, 12, 9, force);
            let solver = match vanishing_root(&c, &z) {
                Err(Error::DegenerateRadical) => continue,
                other => other.map_err(|e| format!("{id}: {e}"))?,
            };
            done += 1;
            let scan = box_scan(&c, &z, &finite, bound);
            match &solver {
                Some(d) => {
                    ensure!(c.norm(d).unwrap() == -2, "{id}: witness {d} is not a root");
                    ensure!(eval(&z, d).is_zero(), "{id}: witness {d} does not vanish");
                    stats.0 += 1;
                }
                None => ensure!(
                    scan.vanishing.is_empty(),
                    "{id}: box finds vanishing root {} for {z:?}, solver does not",
                    scan.vanishing[0]
                ),
            }
            if solver.is_some() {
                ensure!(!membership(&c, &z).unwrap().in_p0, "{id}: vanishing charge reported in P0");
                continue;
            }
            let (m2, witness) = min_root_witness(&c, &z).map_err(|e| format!("{id}: {e}"))?;
            ensure!(eval(&z, &witness).norm_sqr() == m2, "{id}: witness modulus mismatch");
            ensure!(scan.min_sq >= m2, "{id}: box beats the closest-vector minimum");
            let dec = c.decompose_root(&witness).unwrap();
            if dec.c.abs() <= bound && dec.m.abs() <= bound {
                ensure!(scan.min_sq == m2, "{id}: box min {} vs M² {m2}", scan.min_sq);
                stats.1 += 1;
            } else {
                stats.2 += 1;
            }
            stats.3 += 1;
        }
    }
    Ok(format!(
        "3000 charges: {} vanishing, {} minima in box (equal), {} outside box",
        stats.0, stats.1, stats.2
    ))
}

/// A random charge in the plus component of P0 (conjugating if needed):
/// `z0 = −1`, each coordinate `p/d` with `d ≤ max_den` and `|p/d| ≤ span`.
fn random_plus_charge(r: &mut impl Rng, c: &KodairaCurve, span: i64, max_den: i64) -> CentralCharge {
    let coord = |r: &mut dyn rand::RngCore| {
        let d = r.gen_range(1..=max_den);
        Q::new(BigInt::from(r.gen_range(-span * d..=span * d)), BigInt::from(d))
    };
    loop {
        let z = CentralCharge::new(
            ci(-1, 0),
            (0..c.n()).map(|_| cq(coord(r), coord(r))).collect(),
        );
        match membership(c, &z).map(|m| m.component) {
            Ok(Component::Plus) => return z,
            Ok(Component::Minus) => return z.conj(),
            _ => continue,
        }
    }
}

fn support_form_check() -> Outcome {
    let ids = ["I_2", "I_3", "IV", "IStar_0", "IVStar"];
    let bound = 20i64;
    let mut r = rng(400);
    let mut checked = 0usize;
    for k in 0..100 {
        let id = ids[k % ids.len()];
        let c = curve(id);
        let z = random_plus_charge(&mut r, &c, 6, 7);
        let form = support_form(&c, &z).map_err(|e| format!("{id}: {e}"))?;
        ensure!(form.is_negative_definite_on_kernel(), "{id}: kernel certificate not definite");
        ensure!(form.roots_nonnegative(), "{id}: certificate root check negative");
        // exhaustive over the box in exact integer arithmetic
        let den = common_denominator(form.matrix.iter().flatten());
        let m: Vec<Vec<i128>> = form
            .matrix
            .iter()
            .map(|row| row.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer().to_i128().unwrap()).collect())
            .collect();
        let rho = c.rho();
        for w0 in c.fundamental_roots() {
            for mm in -bound..=bound {
                let base = w0 + &rho.scale(mm);
                for cc in -bound..=bound {
                    let mut v: Vec<i128> = vec![cc as i128];
                    v.extend(base.ranks.iter().map(|&x| x as i128));
                    // basis (ox, O_Θᵢ(−1)): the ox-coordinate is chi
                    let val: i128 = (0..v.len())
                        .map(|i| v[i] * (0..v.len()).map(|j| m[i][j] * v[j]).sum::<i128>())
                        .sum();
                    ensure!(val >= 0, "{id}: Q < 0 at c={cc}, w0={w0}, m={mm}");
                    checked += 1;
                }
            }
        }
        // spot-check the integer evaluation against the exact one
        let mut probe = w0_probe(&c);
        probe.chi += 3;
        let exact = form.value(&probe);
        let direct = q(-2) + q(2) * eval(&z, &probe).norm_sqr() / &form.min_modulus_sq;
        ensure!(exact == direct, "{id}: Q(δ) disagrees with ⟨δ,δ⟩ + 2|Z(δ)|²/M²");
    }
    Ok(format!("100 charges, {checked} root evaluations"))
}

fn w0_probe(c: &KodairaCurve) -> KClass {
    c.fundamental_roots()[0].clone()
}

fn reflection_algebra() -> Outcome {
    let mut r = rng(500);
    let ids = sweep_ids();
    for id in &ids {
        let c = curve(id);
        let n = c.n();
        let rb = c.radical_basis();
        for _ in 0..1000 {
            let i = r.gen_range(1..=n);
            let k = r.gen_range(-10..=10);
            let v = rand_class(&mut r, n, 20);
            let w = rand_class(&mut r, n, 20);
            let sv = reflect_class(&c, i, k, &v).unwrap();
            ensure!(reflect_class(&c, i, k, &sv).unwrap() == v, "{id}: s² ≠ id");
            let sw = reflect_class(&c, i, k, &w).unwrap();
            ensure!(c.pair(&sv, &sw).unwrap() == c.pair(&v, &w).unwrap(), "{id}: pairing not preserved");
            ensure!(reflect_class(&c, i, k, &rb.ox).unwrap() == rb.ox, "{id}: ox moved");
            ensure!(reflect_class(&c, i, k, &rb.rho).unwrap() == rb.rho, "{id}: rho moved");
            let z = CentralCharge::new(rand_cq(&mut r, 30, 8), (0..n).map(|_| rand_cq(&mut r, 30, 8)).collect());
            let zs = dual_reflect_charge(&c, i, k, &z).unwrap();
            ensure!(eval(&zs, &v) == eval(&z, &sv), "{id}: (Z∘s)(v) ≠ Z(s v)");
        }
    }
    Ok(format!("{} curves × 1000 classes", ids.len()))
}

/// Coordinate bound for the chamber-walk samples.
const SPAN: i64 = 4;
/// Lower bound on the level `Im Z(ρ)` of the chamber-walk samples. The walk
/// length is the length of an affine Weyl group element and grows like
/// `1/level`, so no fixed step cap can hold as the level tends to zero.
fn min_level() -> Q {
    q_frac(1, 4)
}

fn random_plus_normalized(r: &mut impl Rng, c: &KodairaCurve) -> CentralCharge {
    loop {
        let z = random_plus_charge(r, c, SPAN, 100);
        if eval(&z, &c.rho()).im >= min_level() {
            return z;
        }
    }
}

fn chamber_reduction() -> Outcome {
    let mut r = rng(600);
    let ids = sweep_ids();
    let mut max_steps_seen = 0;
    let mut on_wall = 0;
    for id in &ids {
        let c = curve(id);
        for _ in 0..500 {
            let z = random_plus_normalized(&mut r, &c);
            let trace = reduce_to_fundamental(&c, &z, 10_000).map_err(|e| format!("{id}: {e}"))?;
            ensure!(trace.terminated, "{id}: not terminated");
            max_steps_seen = max_steps_seen.max(trace.steps.len());
            let replay = apply_word(&c, &trace.word, &trace.start.to_charge()).unwrap();
            ensure!(replay.z == trace.final_charge.z, "{id}: replay differs");
            let verdict = in_fundamental_chamber(&c, &trace.final_charge, true).unwrap();
            match verdict {
                ChamberVerdict::Inside => {}
                ChamberVerdict::OnWall(_) => on_wall += 1,
                ChamberVerdict::Outside => return Err(format!("{id}: final charge outside")),
            }
            let rho = c.rho();
            ensure!(
                eval(&trace.start.to_charge(), &rho).im == eval(&trace.final_charge.to_charge(), &rho).im,
                "{id}: Im Z(rho) changed"
            );
        }
    }
    Ok(format!("{} curves × 500 charges, max {max_steps_seen} steps, {on_wall} end on a wall", ids.len()))
}

fn worked_example() -> Outcome {
    let c = curve("I_2");
    let z = CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 3), q(-1)), ci(0, 2)]);

    // reduction, re-derived by evaluating Z on reflected basis classes
    let trace = reduce_to_fundamental(&c, &z, 100).map_err(|e| e.to_string())?;
    ensure!(trace.word.to_string() == "T(1,-1)", "word {}", trace.word);
    let basis: Vec<KClass> = (0..2).map(|j| KClass::unit(2, j)).collect();
    let rederived: Vec<CQ> = basis
        .iter()
        .map(|e| eval(&z, &reflect_class(&c, 1, -1, e).unwrap()))
        .collect();
    let expected = vec![cq(q_frac(-1, 3), q(1)), cq(q_frac(2, 3), q(0))];
    ensure!(rederived == expected, "oracle gives {rederived:?}");
    ensure!(trace.final_charge.z == expected, "final {:?}", trace.final_charge.z);
    ensure!(
        in_fundamental_chamber(&c, &trace.final_charge, true).unwrap() == ChamberVerdict::OnWall(vec![(2, -1)]),
        "final verdict"
    );

    // vanishing witness, re-derived by the box scan
    let zv = CentralCharge::new(ci(-1, 0), vec![ci(1, -1), ci(0, 2)]);
    let solver = vanishing_root(&c, &zv).unwrap();
    let scan = box_scan(&c, &zv, &finite_roots_by_scan(&c), 10);
    let witness = KClass::new(2, vec![2, 1]);
    ensure!(solver.as_ref() == Some(&witness), "solver witness {solver:?}");
    ensure!(scan.vanishing.contains(&witness), "box scan misses the witness");

    // wall event, re-derived by bisection on a rational grid
    let za = NormalizedCharge::new(vec![ci(0, 1), ci(0, 2)]);
    let zb = NormalizedCharge::new(vec![ci(1, -1), ci(0, 2)]);
    let events = wall_crossings_on_segment(&c, &za, &zb).map_err(|e| e.to_string())?;
    ensure!(events.len() == 1, "{} events", events.len());
    let e = &events[0];
    ensure!((e.t.clone(), e.i, e.k) == (q_frac(1, 2), 1, -1), "event {e:?}");
    let im1 = |t: &Q| &za.z[0].im * (q(1) - t) + &zb.z[0].im * t;
    let (mut lo, mut hi) = (q(0), q(1));
    for _ in 0..60 {
        let mid = (&lo + &hi) / q(2);
        if im1(&mid).is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if im1(&mid).is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ensure!(lo == q_frac(1, 2) && hi == q_frac(1, 2), "bisection lands at [{lo}, {hi}]");
    let re = &za.z[0].re * (q(1) - &lo) + &zb.z[0].re * &lo;
    ensure!(q(e.k + 1) < re && re < q(e.k + 2), "Re at wall {re}");
    Ok("reduction, vanishing witness and wall event reproduced".into())
}

fn jh_additivity() -> Outcome {
    let mut count = 0;
    for id in sweep_ids() {
        let c = curve(&id);
        let n = c.n();
        let ox = KClass::point(n);
        for i in 1..=n {
            for k in -10..=10 {
                let (a, b) = jh_of_skyscraper(&c, i, k).unwrap();
                ensure!(&a + &b == ox, "{id}: ({i},{k}) factors do not sum to ox");
                let mut zs = vec![ci(0, 1); n];
                zs[i - 1] = cq(q(k) + q_frac(3, 2), q(0));
                let z = CentralCharge::new(ci(-1, 0), zs);
                let zn = normalize(&c, &z).unwrap();
                ensure!(
                    in_fundamental_chamber(&c, &zn, true).unwrap() == ChamberVerdict::OnWall(vec![(i, k)]),
                    "{id}: test charge not on wall ({i},{k})"
                );
                for f in [&a, &b] {
                    let v = eval(&z, f);
                    ensure!(v.im.is_zero() && v.re.is_negative(), "{id}: Z({f}) = {v:?} not negative real");
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} walls"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 Cartan consistency", cartan_consistency),
        ("2 root counts vs box scan", root_counts),
        ("3 P0 decision vs box oracle", p0_vs_oracle),
        ("4 support form", support_form_check),
        ("5 reflection algebra", reflection_algebra),
        ("6 chamber reduction", chamber_reduction),
        ("7 worked example", worked_example),
        ("8 JH additivity", jh_additivity),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        // straight to stderr so the verdicts show even when output is captured
        let line = match outcome {
            Ok(detail) => format!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed.push(name);
                format!("FAIL criterion {name}: {why} ({secs:.1}s)")
            }
        };
        let _ = writeln!(std::io::stderr(), "{line}");
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
