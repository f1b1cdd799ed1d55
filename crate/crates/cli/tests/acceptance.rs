//! One pass/fail line per acceptance criterion. Set `OBG_SLOW=1` to include
//! the maximum-size-4 class checks.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use obg_cli::commands::{classify_source, Source};
use obg_cli::{parse, serialize, Verdict};
use obg_core::analysis::{
    back_and_forth, one_point_extension_test, verify_counterexample, verify_distinguished, witness_density, BnfOutcome,
    HomogeneityReport, DEFAULT_BNF_BUDGET, DEFAULT_CLASSIFY_BUDGET,
};
use obg_core::catalog::all_entries;
use obg_core::fixtures::Fixture;
use obg_core::fraisse::{check_property, ClassDescriptor, Property};
use obg_core::order::{enumerate_structures, DEFAULT_ENUMERATION_CAP};
use obg_core::CatalogEntry;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn entry(s: &str) -> CatalogEntry {
    s.parse().unwrap()
}

fn homogeneity() -> Outcome {
    let start = Instant::now();
    let mut failing = Vec::new();
    for e in all_entries() {
        for seed in 0..3 {
            let r = one_point_extension_test(&mut e.instantiate(seed), 6, 200, seed).map_err(|x| x.to_string())?;
            if let HomogeneityReport::Counterexample { found, .. } = r {
                failing.push(format!("{e} (seed {seed}, size {})", found.size()));
                break;
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return Err(format!("took {t:?}"));
    }
    if failing.is_empty() {
        Ok(format!("{} entries x 3 seeds, 200 trials each, {t:.1?}", all_entries().len()))
    } else {
        Err(format!("{} entries with counterexamples: {}", failing.len(), failing.join(", ")))
    }
}

fn fixtures() -> Outcome {
    let mut sizes = Vec::new();
    for f in Fixture::ALL {
        for seed in 0..3 {
            let start = Instant::now();
            let mut o = f.instantiate(seed);
            let r = one_point_extension_test(&mut o, 4, 500, seed).map_err(|x| x.to_string())?;
            let c = r.counterexample().ok_or(format!("{f} seed {seed}: none found"))?;
            if c.size() > 4 || !verify_counterexample(&o, c) || start.elapsed() > Duration::from_secs(10) {
                return Err(format!("{f} seed {seed}: size {}, {:?}", c.size(), start.elapsed()));
            }
            sizes.push(c.size());
        }
    }
    Ok(format!("verified counterexamples, sizes {sizes:?}"))
}

fn density() -> Outcome {
    let mut total = 0;
    for name in ["iv.unbounded_generic", "vi.rightGeneric+empty", "vi.empty+leftGeneric", "vi.rightGeneric+leftGeneric"]
    {
        let r = witness_density(&mut entry(name).instantiate(7), 500, 3, 7).map_err(|x| x.to_string())?;
        if let Some((w, why)) = r.failures.first() {
            return Err(format!("{name}: {w}: {why}"));
        }
        total += r.specs;
    }
    Ok(format!("{total} witness requests met"))
}

fn closed_form() -> Outcome {
    let mut pairs = 0;
    for e in all_entries().into_iter().filter(|e| e.is_deterministic()) {
        let rule = e.closed_form().ok_or(format!("{e} has no closed form"))?;
        for seed in 0..3 {
            let s = e.instantiate(seed).grow_to(12).map_err(|x| x.to_string())?;
            for x in s.points() {
                for y in s.points() {
                    pairs += 1;
                    if s.has_edge(x.id, y.id) != rule.adjacent((&x.pos, x.color), (&y.pos, y.color)) {
                        return Err(format!("{e} seed {seed}: {} and {}", x.id, y.id));
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, zero mismatches"))
}

fn separation() -> Outcome {
    let entries = all_entries();
    let mut pairs = 0;
    let mut deepest = 0;
    for (i, &a) in entries.iter().enumerate() {
        for &b in &entries[i + 1..] {
            if a.reduct() != b.reduct() {
                continue;
            }
            let (mut x, mut y) = (a.instantiate(0), b.instantiate(0));
            let r = back_and_forth(&mut x, &mut y, 6, 0, DEFAULT_BNF_BUDGET).map_err(|e| format!("{a} vs {b}: {e}"))?;
            match &r.outcome {
                BnfOutcome::Distinguished { depth, challenge } if verify_distinguished(&x, &y, challenge) => {
                    deepest = deepest.max(*depth);
                    pairs += 1;
                }
                other => return Err(format!("{a} vs {b}: {other:?}")),
            }
        }
    }
    for e in &entries {
        let (mut x, mut y) = (e.instantiate(0), e.instantiate(0));
        let r = back_and_forth(&mut x, &mut y, 6, 0, DEFAULT_BNF_BUDGET).map_err(|x| format!("{e}: {x}"))?;
        if r.distinguished_at().is_some() {
            return Err(format!("{e} told apart from itself"));
        }
    }
    Ok(format!("{pairs} pairs separated, deepest at {deepest}; {} self-comparisons hold", entries.len()))
}

fn classification() -> Outcome {
    let mut n = 0;
    for e in all_entries() {
        for seed in 0..3 {
            let r = classify_source(Source::Entry(e), DEFAULT_CLASSIFY_BUDGET, seed);
            if r.verdict != Verdict::Pass {
                return Err(format!("{e} seed {seed}: {:?}", r.get("entry").or(r.get("error"))));
            }
            n += 1;
        }
    }
    Ok(format!("{n} round trips"))
}

fn fraisse(max_size: usize) -> Outcome {
    let mut checked = 0;
    for c in ClassDescriptor::ALL {
        for p in Property::ALL {
            let r = check_property(c, p, max_size).map_err(|e| e.to_string())?;
            if !r.pass {
                return Err(format!("{} {} fails: {:?}", c.name(), p.name(), r.counterexample));
            }
            checked += r.checked;
        }
    }
    if max_size > 3 {
        return Ok(format!("{checked} instances at max size {max_size}"));
    }
    for (c, name) in [
        (ClassDescriptor::RedBlockBeforeBlue, "iv.unbounded_generic"),
        (ClassDescriptor::RightClass, "vi.rightGeneric+empty"),
    ] {
        for seed in 0..5 {
            let (mut x, mut y) = (c.limit_oracle(seed), entry(name).instantiate(seed));
            let r = back_and_forth(&mut x, &mut y, 5, seed, DEFAULT_BNF_BUDGET).map_err(|e| e.to_string())?;
            if r.distinguished_at().is_some() {
                return Err(format!("limit of {} vs {name} seed {seed}: {:?}", c.name(), r.outcome));
            }
        }
    }
    Ok(format!("{checked} instances at max size {max_size}; limits match at depth 5 for 5 seeds"))
}

fn enumeration() -> Outcome {
    // labelled count: colourings times subsets of red/blue pairs; a finite order is rigid
    let labelled = |n: u32| -> usize {
        (0u32..1 << n)
            .map(|m| {
                let k = m.count_ones();
                1usize << (k * (n - k))
            })
            .sum()
    };
    let mut counts = Vec::new();
    for n in 1..=3 {
        let got = enumerate_structures(n, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?.len();
        if got != labelled(n as u32) {
            return Err(format!("n = {n}: {got} vs {}", labelled(n as u32)));
        }
        counts.push(got);
    }
    if counts != [2, 6, 26] {
        return Err(format!("{counts:?}"));
    }
    Ok(format!("{counts:?}"))
}

fn serialization() -> Outcome {
    let entries = all_entries();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..1000 {
        let e = entries[rng.gen_range(0..entries.len())];
        let s = e.instantiate(rng.gen()).grow_to(rng.gen_range(0..16)).map_err(|x| x.to_string())?;
        let text = serialize(&s);
        let back = parse(&text).map_err(|x| format!("round trip {i} ({e}): {x}"))?;
        if back != s || serialize(&back) != text {
            return Err(format!("round trip {i} ({e}) not stable"));
        }
    }
    let bad = [
        ("bad gcd", "OBG v1\np 1 2/4 r\n"),
        ("duplicate position", "OBG v1\np 1 1/2 r\np 2 1/2 b\n"),
        ("monochromatic edge", "OBG v1\np 1 1/2 r\np 2 3/2 r\ne 1 2\n"),
    ];
    let mut codes = Vec::new();
    for (what, text) in bad {
        match parse(text) {
            Ok(_) => return Err(format!("{what} accepted")),
            Err(e) => codes.push(e.code()),
        }
    }
    let mut distinct = codes.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != codes.len() {
        return Err(format!("codes not distinct: {codes:?}"));
    }
    Ok(format!("1000 byte-stable round trips; rejections {codes:?}"))
}

fn main() {
    let slow = std::env::var_os("OBG_SLOW").is_some();
    let mut criteria: Vec<Criterion> = vec![
        ("1 catalog homogeneity", Box::new(homogeneity)),
        ("2 negative fixtures", Box::new(fixtures)),
        ("3 witness density", Box::new(density)),
        ("4 closed-form agreement", Box::new(closed_form)),
        ("5 pairwise separation", Box::new(separation)),
        ("6 classification round trip", Box::new(classification)),
        ("7 class checks", Box::new(|| fraisse(3))),
        ("8 enumeration counts", Box::new(enumeration)),
        ("9 serialization", Box::new(serialization)),
    ];
    if slow {
        criteria.push(("7 class checks, max size 4", Box::new(|| fraisse(4))));
    }
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("acceptance {name}: {tag} ({:.1?}) {detail}", start.elapsed());
    }
    if !slow {
        println!("acceptance 7 class checks, max size 4: skipped (set OBG_SLOW=1)");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
