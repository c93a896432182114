//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bfun::bfun::{
    b_partition, b_xi, kashiwara_cover, local_b, min_jumping_coefficient, upper_bound_b,
};
use bfun::coxeter::{degrees, opdam_bg, CoxeterDatum, CoxeterType};
use bfun::partitions::{integer_partitions, IntegerPartition};
use bfun::sympoly::{
    alpha_congruence, parse_poly, verify_alpha_congruence, verify_beta_congruence,
    verify_logarithmic, verify_theta,
};
use bfun::weyl::{find_bernstein, OracleBounds};
use bfun::{int, rat, FactoredBPoly, QPoly, Rational};

type Outcome = Result<String, String>;

fn roots(list: &[(i64, i64, u32)]) -> FactoredBPoly {
    FactoredBPoly::from_roots(list.iter().map(|&(p, q, m)| (rat(p, q), m)))
}

fn binom2(n: usize) -> i64 {
    (n * (n - 1) / 2) as i64
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let cases: [(&str, OracleBounds, FactoredBPoly); 3] = [
        ("x1", OracleBounds::new(1, 1, 1), roots(&[(-1, 1, 1)])),
        ("x1^2", OracleBounds::new(2, 0, 0), roots(&[(-1, 1, 1), (-1, 2, 1)])),
        (
            "x1*x2*(x1+x2)",
            OracleBounds::default(),
            roots(&[(-1, 1, 2), (-2, 3, 1), (-4, 3, 1)]),
        ),
    ];
    for (expr, bounds, expected) in cases {
        let f = parse_poly(expr).map_err(|e| e.to_string())?;
        let found = find_bernstein(&f, bounds)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{expr}: nothing found"))?;
        ensure(found.splits() && found.b == expected, || {
            format!("{expr}: got {}, expected {expected}", found.b)
        })?;
    }
    ensure(b_xi(3) == roots(&[(-1, 1, 2), (-2, 3, 1), (-4, 3, 1)]), || {
        format!("b_xi(3) = {}", b_xi(3))
    })?;
    let d = OracleBounds::default();
    Ok(format!(
        "x, x^2, xy(x+y) exact (bounds order {}, s-degree {}, coeff degree {})",
        d.order, d.s_degree, d.coeff_degree
    ))
}

fn symmetry() -> Outcome {
    for n in 2..=10 {
        ensure(b_xi(n).is_symmetric_about(&int(-1)), || format!("n = {n}"))?;
    }
    Ok("b_xi(n) symmetric about -1 for 2 <= n <= 10".into())
}

fn nd_root() -> Outcome {
    for n in 2..=10 {
        let expected = -rat(n as i64 - 1, binom2(n));
        ensure(expected == -rat(2, n as i64), || format!("n = {n}: -(n-1)/binom != -2/n"))?;
        let max = b_xi(n).max_root().cloned();
        ensure(max.as_ref() == Some(&expected), || format!("n = {n}: max root {max:?}"))?;
    }
    let types = CoxeterType::catalog(8);
    for t in &types {
        let datum = CoxeterDatum::new(*t).map_err(|e| e.to_string())?;
        let d_max = *datum.degrees.iter().max().unwrap();
        let witness = -(rat(1, 2) + rat(1, d_max as i64));
        ensure(opdam_bg(&datum).has_root(&witness), || format!("{t}: missing {witness}"))?;
    }
    Ok(format!("max root -2/n for n <= 10; Opdam witness in {} Coxeter types", types.len()))
}

fn divisibility_lattice() -> Outcome {
    let mut count = 0;
    for n in 2..=10 {
        let b = b_xi(n);
        for lambda in integer_partitions(n) {
            ensure(b_partition(&lambda).divides(&b), || format!("{lambda} does not divide b_xi({n})"))?;
            count += 1;
        }
    }
    ensure(integer_partitions(10).len() == 42, || "p(10) != 42".into())?;
    Ok(format!("{count} partitions checked"))
}

fn budur() -> Outcome {
    for n in 2..=10 {
        let datum = degrees(&format!("A{}", n - 1)).map_err(|e| e.to_string())?;
        let lhs = opdam_bg(&datum);
        let rhs = b_xi(n).affine_substitute(&int(2), &int(1)).map_err(|e| e.to_string())?;
        ensure(lhs.divides(&rhs), || format!("n = {n}"))?;
    }
    Ok("bg(A_{n-1}) | b_xi(n)(2s+1) for n <= 10".into())
}

fn bound_sandwich() -> Outcome {
    for n in 2..=8 {
        let upper = upper_bound_b(n).map_err(|e| e.to_string())?;
        ensure(b_xi(n).divides(&upper), || format!("n = {n}: not below upper bound"))?;
        let cover = kashiwara_cover(n, 5, 200).map_err(|e| e.to_string())?;
        ensure(cover.is_some(), || format!("n = {n}: no Kashiwara cover"))?;
    }
    let three = kashiwara_cover(3, 5, 200).map_err(|e| e.to_string())?;
    ensure(three == Some((0, 4)), || format!("cover(3) = {three:?}"))?;
    Ok("upper bound and Kashiwara cover for n <= 8, cover(3) = (0, 4)".into())
}

fn root_interval() -> Outcome {
    for n in 2..=10 {
        let c = binom2(n);
        let n_i = n as i64;
        let lo = -rat((n_i - 1) * (n_i - 1), c);
        let hi = -rat(n_i - 1, c);
        ensure(lo > int(-2) && hi < int(0), || format!("n = {n}: interval escapes (-2, 0)"))?;
        let b = b_xi(n);
        for (r, _) in b.roots() {
            ensure(&lo <= r && r <= &hi, || format!("n = {n}: root {r} outside [{lo}, {hi}]"))?;
        }
    }
    Ok("all roots in [-(n-1)^2/binom, -(n-1)/binom] for n <= 10".into())
}

fn jumping_coefficient() -> Outcome {
    for n in 2..=10 {
        let c = min_jumping_coefficient(n).map_err(|e| e.to_string())?;
        let expected = rat(n as i64 - 1, binom2(n));
        ensure(c == expected, || format!("n = {n}: {c} != {expected}"))?;
        let max = b_xi(n).max_root().cloned().unwrap();
        ensure(c == -max, || format!("n = {n}: {c} != -max root"))?;
    }
    Ok("brute-force minimum equals (n-1)/binom(n,2) for n <= 10".into())
}

fn identity_suite() -> Outcome {
    for n in 2..=6 {
        ensure(verify_logarithmic(n), || format!("logarithmic, n = {n}"))?;
        ensure(verify_theta(n), || format!("theta, n = {n}"))?;
        ensure(verify_beta_congruence(n), || format!("beta, n = {n}"))?;
        for k in 3..=n as u32 {
            ensure(verify_alpha_congruence(k, n), || format!("alpha k = {k}, n = {n}"))?;
        }
    }
    let mut notes = Vec::new();
    for n in 4..=6 {
        let report = alpha_congruence(2, n).map_err(|e| e.to_string())?;
        let ctx = report.residue.context().clone();
        let binom = QPoly::constant(&ctx, int(binom2(n)));
        let formula = QPoly::constant(&ctx, int(2 * n as i64 - 3));
        ensure(!report.holds && report.residue == binom && report.predicted == formula, || {
            format!("k = 2 diagnostic, n = {n}: residue {}", report.residue)
        })?;
        notes.push(format!("{}/{}", binom2(n), 2 * n - 3));
    }
    Ok(format!("n <= 6 identities hold; k = 2 residue vs formula: {}", notes.join(" ")))
}

fn local_fixture() -> Outcome {
    // coordinates and the shape of their coincidence pattern
    let fixture: Vec<(Vec<Rational>, &[usize])> = vec![
        (vec![int(1), int(2), int(3)], &[1, 1, 1]),
        (vec![int(5), int(5), int(7)], &[2, 1]),
        (vec![int(0), int(0), int(0)], &[3]),
        (vec![rat(1, 2), rat(2, 4)], &[2]),
        (vec![rat(1, 2), rat(1, 3)], &[1, 1]),
        (vec![int(4), int(1), int(4), int(1)], &[2, 2]),
        (vec![int(4), int(4), int(4), int(1)], &[3, 1]),
        (vec![int(-1), int(-1), int(-1), int(-1)], &[4]),
        (vec![int(0), int(1), int(2), int(0)], &[2, 1, 1]),
        (vec![int(7)], &[1]),
        (vec![int(1), int(1), int(2), int(2), int(3)], &[2, 2, 1]),
        (vec![int(9), int(9), int(9), int(8), int(8)], &[3, 2]),
        (vec![rat(-3, 7); 5], &[5]),
        (vec![int(1), int(2), int(3), int(4), int(5), int(6)], &[1, 1, 1, 1, 1, 1]),
        (vec![int(2), int(2), int(2), int(2), int(3), int(3)], &[4, 2]),
        (vec![int(1), int(2), int(1), int(2), int(1), int(2)], &[3, 3]),
        (vec![int(0), int(1), int(0), int(2), int(0), int(1), int(3)], &[3, 2, 1, 1]),
        (vec![rat(1, 3), rat(1, 3), rat(2, 3), rat(2, 3), rat(1, 1), rat(3, 3), rat(5, 5)], &[3, 2, 2]),
        (vec![int(6); 6], &[6]),
        (vec![int(1), int(1), int(1), int(1), int(1), int(2), int(2), int(3)], &[5, 2, 1]),
    ];
    let mut units = 0;
    for (q, shape) in &fixture {
        let lambda = IntegerPartition::new(shape.to_vec()).map_err(|e| e.to_string())?;
        let expected = b_partition(&lambda);
        let got = local_b(q);
        ensure(got == expected, || format!("{q:?}: {got} != {expected}"))?;
        if got.is_one() {
            units += 1;
        }
    }
    ensure(units >= 1, || "no off-divisor point".into())?;
    Ok(format!("{} points, {units} off the divisor", fixture.len()))
}

struct Criterion {
    label: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { label: "oracle equivalence", budget: Some(Duration::from_secs(120)), run: oracle_equivalence },
        Criterion { label: "symmetry", budget: Some(Duration::from_secs(1)), run: symmetry },
        Criterion { label: "n/d root", budget: None, run: nd_root },
        Criterion { label: "divisibility lattice", budget: Some(Duration::from_secs(5)), run: divisibility_lattice },
        Criterion { label: "Budur divisibility", budget: None, run: budur },
        Criterion { label: "bound sandwich", budget: None, run: bound_sandwich },
        Criterion { label: "root interval", budget: None, run: root_interval },
        Criterion { label: "jumping coefficient", budget: Some(Duration::from_secs(30)), run: jumping_coefficient },
        Criterion { label: "identity suite", budget: Some(Duration::from_secs(60)), run: identity_suite },
        Criterion { label: "local b-function", budget: None, run: local_fixture },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if result.is_err() {
            failures += 1;
        }
        println!("criterion {:2} {status} {:22} [{elapsed:.2?}] {detail}", i + 1, c.label);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
