//! End-to-end acceptance run. Prints one line per criterion and exits nonzero
//! when any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_certifier::classify::Check;
use spectral_certifier::energy::{singular_values, singular_values_gram};
use spectral_certifier::families::{ag32_graph, catalog_graph, lattice_l2_4, shrikhande};
use spectral_certifier::graph::Graph;
use spectral_certifier::io::{parse_graph6, write_graph6};
use spectral_certifier::spectra::{char_poly, exact_spectrum, float_spectrum, CharPoly, DEFAULT_CLUSTER_TOLERANCE};
use spectral_certifier::survey::{enumerate_labeled, run_survey, SurveyConfig, SurveySummary};

type Outcome = Result<String, String>;

fn exact_string(g: &Graph) -> Result<String, String> {
    let s = exact_spectrum(g).map_err(|e| e.to_string())?;
    if !s.is_certified() {
        return Err(format!("uncertified: {s}"));
    }
    Ok(s.to_string())
}

/// Float and certified spectra agree within 1e-8; returns the worst gap.
fn float_gap(g: &Graph) -> Result<f64, String> {
    let s = exact_spectrum(g).map_err(|e| e.to_string())?;
    let exact = s.exact().ok_or("uncertified")?.values();
    let float = float_spectrum(g, DEFAULT_CLUSTER_TOLERANCE).map_err(|e| e.to_string())?;
    Ok(exact.iter().zip(float.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

struct Fixtures {
    worst_gap: f64,
}

fn fixture_spectra(fx: &mut Fixtures) -> Outcome {
    let mut cases: Vec<(String, Graph, String)> = vec![
        ("shrikhande".into(), shrikhande(), "6^1 2^6 -2^9".into()),
        ("L2(4)".into(), lattice_l2_4(), "6^1 2^6 -2^9".into()),
        ("cone(shrikhande)".into(), shrikhande().cone().unwrap(), "8^1 2^6 -2^10".into()),
        ("cone(L2(4))".into(), lattice_l2_4().cone().unwrap(), "8^1 2^6 -2^10".into()),
        ("ag32".into(), ag32_graph(), "14^1 2^7 -2^14".into()),
    ];
    for l in 3..=6usize {
        let expect = format!("{}^1 1^{} -1^{} -{}^1", l - 1, l - 1, l - 1, l - 1);
        cases.push((format!("kminus({l})"), Graph::k_minus(l).unwrap(), expect));
    }
    for (name, g, expect) in &cases {
        let got = exact_string(g)?;
        if &got != expect {
            return Err(format!("{name}: got {got}, expected {expect}"));
        }
        fx.worst_gap = fx.worst_gap.max(float_gap(g)?);
    }
    let ag = ag32_graph();
    let mut degrees: Vec<usize> = (0..ag.order()).map(|v| ag.degree(v)).collect();
    degrees.sort_unstable();
    if degrees != [vec![7; 8], vec![16; 14]].concat() {
        return Err(format!("ag32 degrees {degrees:?}"));
    }
    Ok(format!("{} graphs certified", cases.len()))
}

fn table_two(fx: &mut Fixtures) -> Outcome {
    let rows = [
        ("table2/LQ3", "4^1 2^3 0^3 -2^5"),
        ("table2/BCS9", "4^1 2^3 0^3 -2^5"),
        ("table2/LCP3", "6^1 2^3 0^2 -2^6"),
        ("table2/K33xK3c", "12^1 3^2 0^9 -3^6"),
        ("table2/LQ3xJ2", "8^1 4^3 0^15 -4^5"),
        ("table2/BCS9xJ2", "8^1 4^3 0^15 -4^5"),
        ("table2/LCP3xJ2", "12^1 4^3 0^14 -4^6"),
        ("table2/H33", "6^1 3^6 0^12 -3^8"),
        ("table2/LK6xJ2", "16^1 4^5 0^15 -4^9"),
    ];
    for (key, expect) in rows {
        let g = catalog_graph(key).map_err(|e| e.to_string())?;
        let got = exact_string(&g)?;
        if got != expect {
            return Err(format!("{key}: got {got}, expected {expect}"));
        }
        fx.worst_gap = fx.worst_gap.max(float_gap(&g)?);
    }
    Ok(format!("{} rows match", rows.len()))
}

/// `c · φ(x/c)` scaled to stay integral: `Σ a_k x^k c^{n−k}`.
fn eval_scaled(p: &CharPoly, x: &BigInt, c: i64) -> BigInt {
    let n = p.degree();
    p.coefficients()
        .iter()
        .enumerate()
        .map(|(k, a)| a * x.pow(k as u32) * BigInt::from(c).pow((n - k) as u32))
        .sum()
}

fn eval(p: &CharPoly, x: &BigInt) -> BigInt {
    eval_scaled(p, x, 1)
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=8);
    let density = rng.gen_range(0.2..0.9);
    Graph::from_fn(n, |_, _| rng.gen_bool(density)).unwrap()
}

/// Blow-up products and complements against their characteristic-polynomial
/// identities, evaluated exactly at `deg + 1` integer points.
fn product_formulas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut complements = 0;
    for trial in 0..50 {
        let g = random_graph(&mut rng);
        let n = g.order();
        let phi = char_poly(&g);
        for m in 1..=3i64 {
            let mu = m as usize;
            let tensor = char_poly(&g.tensor_j(mu).unwrap());
            let star = char_poly(&g.star_j(mu).unwrap());
            let big = n * mu;
            for x in 0..=(big as i64 + 1) {
                let xb = BigInt::from(x);
                // φ(G⊗J_m, x) = x^{n(m−1)} · m^n φ(G, x/m)
                let want = xb.pow((n * (mu - 1)) as u32) * eval_scaled(&phi, &xb, m);
                if eval(&tensor, &xb) != want {
                    return Err(format!("trial {trial}: tensor_j(.., {m}) differs at x = {x}"));
                }
                // φ(G⊛J_m, x) = (x+1)^{n(m−1)} · m^n φ(G, (x+1)/m − 1)
                let want = (&xb + BigInt::one()).pow((n * (mu - 1)) as u32) * eval_scaled_shift(&phi, &xb, m);
                if eval(&star, &xb) != want {
                    return Err(format!("trial {trial}: star_j(.., {m}) differs at x = {x}"));
                }
            }
        }
        if let Some(r) = g.regular_degree() {
            complements += 1;
            let co = char_poly(&g.complement());
            // (x + r + 1) φ(Ḡ, x) = (−1)^n (x − n + r + 1) φ(G, −x − 1)
            for x in 0..=(n as i64 + 1) {
                let xb = BigInt::from(x);
                let lhs = (&xb + r as i64 + 1) * eval(&co, &xb);
                let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
                let rhs = sign * (&xb - n as i64 + r as i64 + 1) * eval(&phi, &(-&xb - 1));
                if lhs != rhs {
                    return Err(format!("trial {trial}: complement of {r}-regular graph differs at x = {x}"));
                }
            }
        }
    }
    // Random graphs are rarely regular; add a few fixed regular ones.
    for g in [Graph::cycle(5).unwrap(), Graph::k_minus(4).unwrap(), shrikhande(), Graph::cycle(8).unwrap()] {
        complements += 1;
        let n = g.order() as i64;
        let r = g.regular_degree().unwrap() as i64;
        let (phi, co) = (char_poly(&g), char_poly(&g.complement()));
        for x in 0..=n + 1 {
            let xb = BigInt::from(x);
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            if (&xb + r + 1) * eval(&co, &xb) != sign * (&xb - n + r + 1) * eval(&phi, &(-&xb - 1)) {
                return Err(format!("complement identity fails for {}-vertex {r}-regular graph", n));
            }
        }
    }
    Ok(format!("50 random graphs x 3 multipliers, {complements} regular complements"))
}

/// `m^n φ((x + 1)/m − 1) = Σ a_k (x + 1 − m)^k m^{n−k}`.
fn eval_scaled_shift(p: &CharPoly, x: &BigInt, m: i64) -> BigInt {
    eval_scaled(p, &(x + 1 - m), m)
}

fn survey(n_min: usize, n_max: usize, connected_only: bool, checks: &[Check]) -> Result<SurveySummary, String> {
    let config = SurveyConfig {
        checks: checks.iter().copied().collect::<BTreeSet<_>>(),
        ..SurveyConfig::builtin(n_min, n_max, connected_only)
    };
    run_survey(&config).map_err(|e| e.to_string())
}

fn clean(s: &SurveySummary) -> Result<(), String> {
    if let Some(f) = s.failures.first() {
        return Err(format!("{} failures, first {} on {}: {}", s.failures.len(), f.check, f.graph6, f.detail));
    }
    if let Some(k) = s.skips.first() {
        return Err(format!("{} skips, first {}: {}", s.skips.len(), k.record, k.reason));
    }
    Ok(())
}

fn agreement_tally(s: &SurveySummary) -> (usize, usize) {
    s.check_tallies.get(&Check::FloatExactAgreement).map_or((0, 0), |t| (t.pass, t.fail))
}

fn complete_bipartite_nonsquare(g: &Graph) -> bool {
    g.complete_bipartite_parts().is_some_and(|(p, q)| {
        let pq = (p * q) as u64;
        let r = (pq as f64).sqrt().round() as u64;
        r * r != pq
    })
}

/// Every non-integral member is a complete bipartite graph with non-square
/// `pq`, or a union with such a component.
fn integrality(s: &SurveySummary) -> Result<usize, String> {
    let mut exceptions = 0;
    for rec in s.g_members.iter().filter(|r| !r.integral) {
        let g = parse_graph6(rec.graph6.as_bytes()).map_err(|e| e.to_string())?;
        let explained = if g.is_connected() {
            complete_bipartite_nonsquare(&g)
        } else {
            g.connected_components().iter().any(|c| complete_bipartite_nonsquare(&c.graph))
        };
        if !explained {
            return Err(format!("{} ({}) is a non-integral member", rec.graph6, rec.spectrum));
        }
        exceptions += 1;
    }
    Ok(exceptions)
}

fn graph6_round_trip() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        for g in enumerate_labeled(n, true).map_err(|e| e.to_string())? {
            let s = write_graph6(&g).map_err(|e| e.to_string())?;
            let back = parse_graph6(s.as_bytes()).map_err(|e| e.to_string())?;
            if write_graph6(&back).map_err(|e| e.to_string())? != s || back.edges() != g.edges() {
                return Err(format!("round trip changed {s}"));
            }
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let seeds: Vec<Vec<u8>> = ["A_", "C~", "Dhc", "G?zTb_", ">>graph6<<E~~w", "~?@cOOO"]
        .iter()
        .map(|s| s.as_bytes().to_vec())
        .collect();
    let (mut errors, mut accepted) = (0usize, 0usize);
    for i in 0..100_000 {
        let mut input = seeds[i % seeds.len()].clone();
        match rng.gen_range(0..4) {
            0 => input.truncate(rng.gen_range(0..input.len())),
            1 => {
                let k = rng.gen_range(0..input.len());
                input[k] = rng.gen();
            }
            2 => input.push(rng.gen()),
            _ => input = (0..rng.gen_range(0..12)).map(|_| rng.gen()).collect(),
        }
        match catch_unwind(AssertUnwindSafe(|| parse_graph6(&input))) {
            Ok(Ok(_)) => accepted += 1,
            Ok(Err(_)) => errors += 1,
            Err(_) => return Err(format!("parser panicked on {input:?}")),
        }
    }
    Ok(format!("{count} graphs round-trip; fuzz: {errors} structured errors, {accepted} valid, 0 panics"))
}

fn singular_value_paths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=20);
        let p = rng.gen_range(0.1..0.9);
        let g = Graph::from_fn(n, |_, _| rng.gen_bool(p)).unwrap();
        let a = singular_values(&g).map_err(|e| e.to_string())?;
        let b = singular_values_gram(&g).map_err(|e| e.to_string())?;
        worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(worst, f64::max);
    }
    if worst <= 1e-8 {
        Ok(format!("max singular-value gap {worst:.1e}"))
    } else {
        Err(format!("max singular-value gap {worst:.1e}"))
    }
}

fn report(id: usize, name: &str, outcome: &Outcome, started: Instant) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail}; {secs:.1}s)"),
        Err(detail) => println!("criterion {id} [{name}]: FAIL ({detail}; {secs:.1}s)"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let mut fx = Fixtures { worst_gap: 0.0 };
    let mut ok = true;

    let t = Instant::now();
    let c1 = fixture_spectra(&mut fx);
    ok &= report(1, "fixture spectra", &c1, t);

    let t = Instant::now();
    let c2 = table_two(&mut fx);
    ok &= report(2, "four-eigenvalue table", &c2, t);

    let t = Instant::now();
    let c3 = product_formulas();
    ok &= report(3, "product formulas", &c3, t);

    let t = Instant::now();
    let connected_checks = [
        Check::ZeroEigenvalueCase,
        Check::NonzeroThreeCase,
        Check::FourEigenvalueCase,
        Check::MultipartiteSecondEigenvalue,
        Check::SrgThreeEigenvalues,
        Check::ForbiddenRegularShape,
        Check::LowerBoundEquality,
        Check::UpperBoundEquality,
        Check::FloatExactAgreement,
    ];
    let connected = survey(2, 7, true, &connected_checks);
    let c4 = connected.as_ref().map_err(Clone::clone).and_then(|s| {
        clean(s)?;
        if !s.h_members.is_empty() {
            return Err(format!("{} members of H at n <= 7", s.h_members.len()));
        }
        Ok(format!("{} connected graphs, {} members of G, 0 failures", s.graphs_scanned, s.g_members.len()))
    });
    ok &= report(4, "exhaustive connected verification", &c4, t);

    let t = Instant::now();
    let disconnected = survey(2, 6, false, &[Check::DisconnectedCase, Check::FloatExactAgreement]);
    let c5 = disconnected.as_ref().map_err(Clone::clone).and_then(|s| {
        clean(s)?;
        let t = s.check_tallies[&Check::DisconnectedCase];
        Ok(format!("{} graphs, {} disconnected verdicts passed", s.graphs_scanned, t.pass))
    });
    ok &= report(5, "disconnected decomposition", &c5, t);

    let t = Instant::now();
    let bounds = survey(2, 7, false, &[Check::BoundOrdering, Check::FloatExactAgreement]);
    let c6 = bounds.as_ref().map_err(Clone::clone).and_then(|s| {
        clean(s)?;
        Ok(format!("{} graphs within all three bounds", s.graphs_scanned))
    });
    ok &= report(6, "energy bounds", &c6, t);

    let t = Instant::now();
    let c7 = (|| {
        if fx.worst_gap > 1e-8 {
            return Err(format!("fixture float gap {:.1e}", fx.worst_gap));
        }
        let mut certified = 0;
        for s in [&connected, &disconnected, &bounds].into_iter().flatten() {
            let (pass, fail) = agreement_tally(s);
            if fail > 0 {
                return Err(format!("{fail} certified survey graphs disagree with the float spectrum"));
            }
            certified += pass;
        }
        let sv = singular_value_paths()?;
        Ok(format!("{certified} certified survey graphs agree; fixture gap {:.1e}; {sv}", fx.worst_gap))
    })();
    ok &= report(7, "numerical backend", &c7, t);

    let t = Instant::now();
    let c8 = (|| {
        let a = integrality(connected.as_ref().map_err(Clone::clone)?)?;
        let b = integrality(disconnected.as_ref().map_err(Clone::clone)?)?;
        Ok(format!("{a} connected and {b} disconnected non-integral members, all complete bipartite exceptions"))
    })();
    ok &= report(8, "integrality claim", &c8, t);

    let t = Instant::now();
    let c9 = graph6_round_trip();
    ok &= report(9, "graph6 round trip and fuzz", &c9, t);

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
