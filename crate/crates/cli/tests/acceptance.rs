//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::Value;

use redsyl::analysis::{checks, cover, redundancy};
use redsyl::arith::{big_pow, is_prime_big, smallest_prime_power_1modp};
use redsyl::instance::{default_grid, Construction, InstanceSpec};
use redsyl::{oracle, SemidirectGroup};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_redsyl")).args(args).output().map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("terminated by signal")?;
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
    Ok((code, v))
}

fn group(spec: &InstanceSpec) -> Result<SemidirectGroup, String> {
    spec.build().map(SemidirectGroup::new).map_err(|e| format!("{}: {e}", spec.label()))
}

fn at_most(v: &BigUint, limit: u64) -> bool {
    *v <= BigUint::from(limit)
}

fn order_108_instance() -> Outcome {
    let start = Instant::now();
    let (code, v) = cli(&["construct", "--thm1", "--group", "C2^2", "--q", "3"])?;
    let t = within(start, Duration::from_secs(1))?;
    ensure(code == 0, || format!("exit {code}"))?;
    let got = (&v["instance"]["order"], &v["sylow_count"], &v["redundant"]);
    ensure(got.0 == "108" && got.1 == "27" && got.2 == true, || format!("got {got:?}"))?;
    Ok(format!("|G| = 108, nu_2 = 27, redundant ({t:.2?})"))
}

fn upper_bound_table() -> Outcome {
    const EXPECTED: [&str; 10] = ["3^3", "2^8", "11^6", "2^24", "23^12", "3^42", "103^18", "191^20", "47^24", "59^30"];
    let start = Instant::now();
    let (code, v) = cli(&["table", "--pmax", "29"])?;
    let t = within(start, Duration::from_secs(1))?;
    ensure(code == 0, || format!("exit {code}"))?;
    let rows = v["rows"].as_array().ok_or("no rows")?;
    let powers: Vec<&str> = rows.iter().filter_map(|r| r["power"].as_str()).collect();
    ensure(powers == EXPECTED, || format!("got {powers:?}"))?;
    for r in rows {
        let base = r["base"].as_u64().ok_or("base")?;
        let exponent = r["exponent"].as_u64().ok_or("exponent")?;
        let q = r["q"].as_u64().ok_or("q")?;
        let p = r["p"].as_u64().ok_or("p")?;
        ensure(r["value"] == big_pow(base, exponent).to_string().as_str(), || format!("value mismatch at p = {p}"))?;
        ensure(big_pow(q, p + 1) == big_pow(base, exponent), || format!("q^(p+1) mismatch at p = {p}"))?;
    }
    Ok(format!("{} ({t:.2?})", powers.join(", ")))
}

fn fewer_p_elements_than_sylows() -> Outcome {
    let start = Instant::now();
    let g = group(&InstanceSpec::thm1("C2^2", 5))?;
    let formula = g.count_p_elements().map_err(|e| e.to_string())?.total;
    let brute = oracle::p_elements(&g, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?.len();
    let nu = oracle::distinct_conjugates(&g, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?;
    ensure(formula == BigUint::from(brute), || format!("class formula {formula} vs enumeration {brute}"))?;
    ensure((brute as u64) < nu, || format!("|G_2| = {brute} not below nu_2 = {nu}"))?;
    ensure(g.sylow_count() == BigUint::from(nu), || format!("nu_2 {} vs {nu} by conjugation", g.sylow_count()))?;

    let h = group(&InstanceSpec::thm1("C3^2", 2))?;
    let all = oracle::all_elements(&h, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?.len();
    let formula3 = h.count_p_elements().map_err(|e| e.to_string())?.total;
    let brute3 = oracle::p_elements(&h, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?.len();
    ensure(all == 2304, || format!("C3^2, q = 2 has {all} elements"))?;
    ensure(formula3 == BigUint::from(brute3), || format!("class formula {formula3} vs enumeration {brute3}"))?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("|G_2| = {brute} < nu_2 = {nu}; C3^2 q=2: |G_3| = {brute3} over {all} elements ({t:.2?})"))
}

fn cover_bounds() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut exhaustive = 0;
    for spec in default_grid() {
        let Construction::Thm1 { q } = spec.construction else { continue };
        let g = group(&spec)?;
        let label = spec.label();
        let nu = g.sylow_count();
        let p = g.p();
        let t = cover::transversal_cover(&g).map_err(|e| format!("{label}: {e}"))?;
        let i = cover::improved_cover(&g).map_err(|e| format!("{label}: {e}"))?;
        ensure(t.verified && i.verified, || format!("{label}: coset criterion fails"))?;
        let lhs = BigUint::from(t.size()) * big_pow(q, p - 1);
        ensure(lhs <= BigUint::from(p + 1) * &nu, || format!("{label}: transversal {} too large", t.size()))?;
        ensure(BigUint::from(3 * i.size()) <= BigUint::from(2u32) * &nu, || format!("{label}: improved {} too large", i.size()))?;
        if at_most(&g.order(), oracle::GROUP_LIMIT) {
            for c in [&t, &i] {
                let ok = oracle::covers(&g, &c.representatives, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{label}: {:?} cover misses p-elements", c.method))?;
            }
            exhaustive += 1;
        }
        checked += 1;
    }
    let g = group(&InstanceSpec::thm1("C2^2", 3))?;
    let i = cover::improved_cover(&g).map_err(|e| e.to_string())?;
    let ok = oracle::covers(&g, &i.representatives, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?;
    ensure(ok && i.size() <= 18, || format!("order 108: improved cover of size {} verified = {ok}", i.size()))?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} instances, {exhaustive} checked element by element; order 108 cover of size {} ({t:.2?})", i.size()))
}

fn casolo_identity() -> Outcome {
    let mut instances = 0;
    let mut subgroups = 0;
    for spec in default_grid() {
        let g = group(&spec)?;
        if !at_most(&g.sylow_count(), oracle::SYLOW_LIMIT) {
            continue;
        }
        let label = spec.label();
        let c = checks::check_casolo(&g, oracle::SYLOW_LIMIT);
        for e in &c.entries {
            ensure(e.lambda_method == checks::LambdaMethod::Enumeration, || format!("{label}: lambda not enumerated"))?;
            let brute = oracle::lambda_of_subgroup(&g, &e.members, oracle::SYLOW_LIMIT).map_err(|e| e.to_string())?;
            ensure(e.lambda == BigUint::from(brute), || format!("{label}: lambda{:?} = {} vs {brute}", e.members, e.lambda))?;
            ensure(e.holds, || format!("{label}: identity fails for {:?}", e.members))?;
            subgroups += 1;
        }
        ensure(c.verified, || format!("{label}: not verified"))?;
        instances += 1;
    }
    Ok(format!("{subgroups} cyclic subgroups over {instances} instances, 0 discrepancies"))
}

fn gheri_inequality() -> Outcome {
    let mut instances = 0;
    for spec in default_grid() {
        let g = group(&spec)?;
        let lambda = checks::lambda_table(&g, oracle::SYLOW_LIMIT);
        let c = checks::check_gheri(&g, &lambda);
        ensure(c.lhs >= c.rhs, || format!("{}: {} < {}", spec.label(), c.lhs, c.rhs))?;
        instances += 1;
    }
    let g = group(&InstanceSpec::thm1("C2^2", 3))?;
    let nu = oracle::distinct_conjugates(&g, oracle::GROUP_LIMIT).map_err(|e| e.to_string())?;
    let lhs = BigUint::from(nu).pow((g.group().order() as u64 / g.p()) as u32);
    let mut rhs = BigUint::from(1u32);
    for x in g.group().elements() {
        rhs *= oracle::lambda(&g, x, oracle::SYLOW_LIMIT).map_err(|e| e.to_string())?;
    }
    let c = checks::check_gheri(&g, &checks::lambda_table(&g, oracle::SYLOW_LIMIT));
    let expected = BigUint::from(729u32);
    ensure(lhs == expected && rhs == expected, || format!("oracle gives {lhs} and {rhs}"))?;
    ensure(c.lhs == expected && c.rhs == expected, || format!("computed {} and {}", c.lhs, c.rhs))?;
    Ok(format!("{instances} instances; C2^2 q=3: lhs = rhs = 729"))
}

fn redundancy_criterion() -> Outcome {
    let mut instances = 0;
    for spec in default_grid() {
        let g = group(&spec)?;
        if !at_most(&g.sylow_count(), oracle::SYLOW_LIMIT) {
            continue;
        }
        let criterion = redundancy::is_redundant(&g).redundant;
        let brute = oracle::is_redundant(&g, oracle::SYLOW_LIMIT, u64::MAX).map_err(|e| format!("{}: {e}", spec.label()))?;
        ensure(criterion == brute, || format!("{}: criterion {criterion}, brute force {brute}", spec.label()))?;
        instances += 1;
    }
    Ok(format!("{instances} instances, 0 discrepancies"))
}

fn bound_suite() -> Outcome {
    let mut redundant = 0;
    let mut tight = 0;
    for spec in default_grid() {
        let g = group(&spec)?;
        if !redundancy::is_redundant(&g).redundant {
            continue;
        }
        let label = spec.label();
        let p = g.p();
        let nu = g.sylow_count();
        let qmin = smallest_prime_power_1modp(p);
        ensure(nu >= BigUint::from(p * p + p + 1), || format!("{label}: nu below p^2+p+1"))?;
        ensure(nu >= big_pow(qmin, p + 1), || format!("{label}: nu below qmin^(p+1)"))?;
        ensure(nu > big_pow(p + 1, p), || format!("{label}: nu not above (p+1)^p"))?;
        ensure(!is_prime_big(&nu), || format!("{label}: nu = {nu} is prime"))?;
        for x in g.group().elements() {
            let lambda = g.subspace_order(g.centralizer_in_n(x)) / g.subspace_order(g.fixed_by_group());
            ensure(lambda >= BigUint::from(p + 1), || format!("{label}: lambda({x}) = {lambda}"))?;
            if at_most(&nu, oracle::SYLOW_LIMIT) {
                let brute = oracle::lambda(&g, x, oracle::SYLOW_LIMIT).map_err(|e| e.to_string())?;
                ensure(lambda.to_u64() == Some(brute), || format!("{label}: lambda({x}) = {lambda} vs {brute}"))?;
            }
        }
        if spec.construction == Construction::Thm2 {
            ensure(nu == big_pow(qmin, p + 1), || format!("{label}: nu = {nu} is not qmin^(p+1)"))?;
            tight += 1;
        }
        redundant += 1;
    }
    Ok(format!("{redundant} redundant instances; {tight} line-sum instances attain qmin^(p+1)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("order_108_instance", order_108_instance),
        ("upper_bound_table", upper_bound_table),
        ("fewer_p_elements_than_sylows", fewer_p_elements_than_sylows),
        ("cover_bounds", cover_bounds),
        ("casolo_identity", casolo_identity),
        ("gheri_inequality", gheri_inequality),
        ("redundancy_criterion", redundancy_criterion),
        ("bound_suite", bound_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "ACKNOWLEDGED minimality_searches: lower bounds on the least redundant nu_p need a transitive-group \
         database and are not reproduced; only the constructive upper side is checked"
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
