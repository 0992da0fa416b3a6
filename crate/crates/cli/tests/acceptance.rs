//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use setramsey::binom;
use setramsey::chains::{check_tightness, extract_chain, validate_chain, Direction};
use setramsey::constructions::{
    construct_choose, construct_prop2, prop2_classes, verify_construction,
};
use setramsey::extremal::{
    furedi_tuza_exhaustive, lemma94_exhaustive, search_s, skew_pairs_max, theorem4_conditions,
    theorem4_exhaustive, ExtremalQuery, SearchOptions,
};
use setramsey::SetFamily;

type Check = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_setramsey"))
}

fn run(args: &[&str], threads: Option<&str>) -> Result<Output, String> {
    let mut cmd = bin();
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("SETRAMSEY_THREADS", t),
        None => cmd.env_remove("SETRAMSEY_THREADS"),
    };
    cmd.output().map_err(|e| format!("spawn failed: {e}"))
}

fn json_of(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "bad JSON ({e}): {} / {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn matrix_f() -> Check {
    let out = run(&["construct", "F", "--verify", "--json"], None)?;
    let v = json_of(&out)?;
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    ensure(v["size"] == 8, "size is not 8")?;
    let claims: Vec<&str> = v["checks"]
        .as_array()
        .ok_or("no checks")?
        .iter()
        .filter(|c| c["passed"] == true)
        .filter_map(|c| c["claim"].as_str())
        .collect();
    for want in [
        "size = 8",
        "avoids singleton:3",
        "avoids cosingleton:3",
        "avoids monotone:3",
    ] {
        ensure(
            claims.contains(&want),
            format!("claim {want:?} not confirmed"),
        )?;
    }
    Ok("8 members, no order-3 singleton, co-singleton or monotone".into())
}

fn lemma94() -> Check {
    let r = lemma94_exhaustive(1).map_err(|e| e.to_string())?;
    ensure(r.families == 11440, format!("{} families", r.families))?;
    ensure(
        r.all_embed,
        format!("counterexample {:?}", r.counterexample),
    )?;
    Ok("11440 families, each contains an order-3 pattern".into())
}

fn headline() -> Check {
    let out = run(&["search", "--k", "2", "--l", "2", "--json"], None)?;
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    let v = json_of(&out)?;
    ensure(v["value"] == 8, format!("value {}", v["value"]))?;
    ensure(v["exhausted"] == true, "not exhausted")?;
    ensure(v["nodes"].as_u64().is_some_and(|n| n > 0), "no node count")?;
    let lines: Vec<&str> = v["witness"]
        .as_array()
        .ok_or("no witness")?
        .iter()
        .filter_map(Value::as_str)
        .collect();
    let w = SetFamily::parse(&lines.join("\n")).map_err(|e| e.to_string())?;
    ensure(w.len() == 8, "witness size")?;
    ensure(
        ExtremalQuery::new(2, 2).avoided_by(&w),
        "witness contains a pattern",
    )?;
    Ok(format!("S(2,2) = 8, {} nodes", v["nodes"]))
}

fn small_values() -> Check {
    let opts = SearchOptions::default();
    for k in 0..=3 {
        for (l, want) in [(0, 1), (1, k + 1)] {
            let r = search_s(ExtremalQuery::new(k, l), &opts).map_err(|e| e.to_string())?;
            ensure(
                r.exhausted && r.value == Some(want),
                format!("S({k},{l}) gave {:?}", r.value),
            )?;
        }
    }
    Ok("S(k,0) = 1 and S(k,1) = k+1 for k <= 3".into())
}

fn lemma1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let trials = 10_000;
    for _ in 0..trials {
        let k = rng.gen_range(0..=3);
        let l = rng.gen_range(0..=3);
        let m = binom(k + l, l) as usize + 1;
        let min_u = (usize::BITS - (m - 1).leading_zeros()) as usize;
        let u = rng.gen_range(min_u.max(1)..=8);
        let mut rows = BTreeSet::new();
        while rows.len() < m {
            rows.insert(rng.gen_range(0..1u64 << u));
        }
        let f = SetFamily::new(u, rows.into_iter().collect()).map_err(|e| e.to_string())?;
        let w = extract_chain(&f, k, l).map_err(|e| format!("{:?}: {e}", f.lines()))?;
        ensure(
            validate_chain(&f, &w) == Ok(true),
            format!("invalid chain {w:?}"),
        )?;
        let want = match w.direction {
            Direction::Increasing => k + 1,
            Direction::Decreasing => l + 1,
        };
        ensure(w.order() == want, format!("order {} for {w:?}", w.order()))?;
    }
    for n in 0..=5 {
        for l in 0..=n {
            ensure(
                check_tightness(n - l, l) == Ok(true),
                format!("tightness k={} l={l}", n - l),
            )?;
        }
    }
    Ok(format!(
        "{trials} random families, tightness for k + l <= 5"
    ))
}

fn ramsey() -> Check {
    let out = run(&["ramsey-verify", "--r", "3", "--json"], None)?;
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    let v = json_of(&out)?;
    ensure(
        v["colorings"] == 32768 && v["colorings_with_clique"] == 32768,
        "a K_6 colouring lacks a triangle",
    )?;
    ensure(
        v["lower_holds"] == true,
        "pentagon has a monochromatic triangle",
    )?;
    Ok("all 32768 colourings of K_6 have a triangle, the pentagon has none".into())
}

fn prop2() -> Check {
    let c = construct_prop2(3).map_err(|e| e.to_string())?;
    ensure(c.family.len() == 23, format!("{} members", c.family.len()))?;
    let classes = prop2_classes(3).map_err(|e| e.to_string())?;
    let sizes = (
        classes.a.iter().map(Vec::len).collect::<Vec<_>>(),
        classes.b.len(),
        classes.c.len(),
        classes.d.len(),
    );
    ensure(
        sizes == (vec![1, 3], 3, 10, 6),
        format!("class sizes {sizes:?}"),
    )?;
    let report = verify_construction(&c);
    ensure(report.passed, format!("{:?}", report.checks))?;
    Ok("23 members in classes 1+3, 3, 10, 6; no order-4 pattern".into())
}

fn theorem4() -> Check {
    for (k, l) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let r = theorem4_exhaustive(k, l, 1).map_err(|e| e.to_string())?;
        ensure(r.holds, format!("({k},{l}) fails: {r:?}"))?;
        let tight = construct_choose(k + l, l)
            .map_err(|e| e.to_string())?
            .family;
        let none = theorem4_conditions(&tight, k, l).map_err(|e| e.to_string())?;
        ensure(
            none.is_none(),
            format!("C([{}],{l}) meets a condition", k + l),
        )?;
    }
    Ok("(1,1), (2,1), (1,2), (2,2) exhausted; all l-subsets meet no condition".into())
}

fn oracles() -> Check {
    let a = skew_pairs_max(1, 1, 4).map_err(|e| e.to_string())?;
    let b = skew_pairs_max(2, 2, 6).map_err(|e| e.to_string())?;
    ensure(a == 2 && b == 6, format!("skew maxima {a}, {b}"))?;
    let ft = furedi_tuza_exhaustive(2, 1, None, 1).map_err(|e| e.to_string())?;
    ensure(ft.holds, format!("{ft:?}"))?;
    Ok(format!(
        "skew maxima 2 and 6, singleton check over [{}]",
        ft.cap
    ))
}

fn determinism() -> Check {
    let cases: [&[&str]; 2] = [
        &["search", "--k", "2", "--l", "2", "--json"],
        &["ramsey-verify", "--r", "3", "--json"],
    ];
    for args in cases {
        let one = run(args, Some("1"))?;
        let eight = run(args, Some("8"))?;
        ensure(!one.stdout.is_empty(), format!("{args:?} printed nothing"))?;
        ensure(
            one.stdout == eight.stdout,
            format!("{args:?} differs between 1 and 8 threads"),
        )?;
    }
    Ok("search and ramsey-verify JSON identical at 1 and 8 threads".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "matrix F", Duration::from_secs(1), matrix_f),
        (2, "nine subsets of [4]", Duration::from_secs(60), lemma94),
        (3, "S(2,2) = 8", Duration::from_secs(3600), headline),
        (
            4,
            "small exact values",
            Duration::from_secs(300),
            small_values,
        ),
        (5, "chain dichotomy", Duration::from_secs(120), lemma1),
        (6, "R(3) = 6", Duration::from_secs(10), ramsey),
        (7, "prop2 construction", Duration::from_secs(300), prop2),
        (
            8,
            "size-split conditions",
            Duration::from_secs(600),
            theorem4,
        ),
        (
            9,
            "skew pairs and small sets",
            Duration::from_secs(600),
            oracles,
        ),
        (10, "determinism", Duration::from_secs(3600), determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match result {
            Ok(detail) if took <= limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}, but took {took:.2?} (limit {limit:?})")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("PASS {id:>2} {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:>2} {name} ({took:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
