//! One line per acceptance criterion. Runs without the test harness so the
//! lines are printed by a plain `cargo test`. Exits non-zero when a
//! criterion fails unexpectedly.

use std::process::ExitCode;
use std::time::Instant;

use hoffman_core::bits::bit;
use hoffman_core::canon::canonical_graph;
use hoffman_core::enumeration::{all_slim_graphs, connected_slim_graphs, parse_graph6, write_graph6};
use hoffman_core::figures::{h1, h2, h3, h5, FigureSource};
use hoffman_core::recognition::{delete_vertex_from_cover, PartKind};
use hoffman_core::spectral::{certify, Threshold};
use hoffman_core::sums::ClassSet;
use hoffman_core::verify::{
    table_rows, verify_catalog_counts, verify_cover_uniqueness, verify_eigen_claims, verify_fat_classification,
    verify_five_vertex, verify_screen_oracle, verify_table_row, Claim, MfsCatalog, VerificationReport,
};
use hoffman_core::{canonical_form, decompose, enumerate_strict_covers, HoffmanGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Table rows whose listed size profile is known not to be attainable; the
/// row is expected to be refuted, with this many six-vertex members needed.
const KNOWN_TABLE_GAPS: &[(&str, u64)] = &[("table1(d)", 8)];

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    expected: bool,
    detail: String,
}

fn report(outcome: &[VerificationReport]) -> String {
    outcome.iter().map(|r| r.summary()).collect::<Vec<_>>().join("; ")
}

fn one(r: VerificationReport) -> Outcome {
    Outcome { pass: r.confirmed(), expected: r.confirmed(), detail: r.summary() }
}

fn five_vertex() -> Outcome {
    one(verify_five_vertex())
}

fn counts(cat: &MfsCatalog) -> Outcome {
    one(verify_catalog_counts(cat))
}

fn eigen(cat: &MfsCatalog) -> Outcome {
    one(verify_eigen_claims(cat, 7))
}

fn oracle(cat: &MfsCatalog) -> Outcome {
    one(verify_screen_oracle(cat, 7))
}

fn uniqueness() -> Outcome {
    one(verify_cover_uniqueness(8, None, 0))
}

fn table(cat: &MfsCatalog) -> Outcome {
    let source = FigureSource::Builtin;
    let reports: Vec<VerificationReport> =
        table_rows().iter().map(|row| verify_table_row(row, cat, &source).expect("builtin figures")).collect();
    let pass = reports.iter().all(|r| r.confirmed());
    // the known gaps must show up exactly as recorded, everything else must hold
    let expected = reports.iter().all(|r| match KNOWN_TABLE_GAPS.iter().find(|(id, _)| *id == r.claim) {
        Some((_, needed)) => !r.confirmed() && r.counts.get("order_six_needed") == Some(needed),
        None => r.confirmed(),
    });
    Outcome { pass, expected, detail: report(&reports) }
}

fn fat_classifications() -> Outcome {
    let source = FigureSource::Builtin;
    let reports: Vec<VerificationReport> = [Claim::TwoSlimFat, Claim::ApexFat, Claim::SingleFat]
        .into_iter()
        .map(|c| verify_fat_classification(c, &source).expect("builtin figures"))
        .collect();
    let pass = reports.iter().all(|r| r.confirmed())
        && reports[0].counts["classes"] == 3
        && reports[1].counts["classes"] == 3;
    Outcome { pass, expected: pass, detail: report(&reports) }
}

fn properties() -> Outcome {
    let allowed = ClassSet::new(hoffman_core::figures::family().iter());
    let mut covers = 0;
    let mut deletions = 0;
    let mut failures = Vec::new();
    for n in 1..=6 {
        for g in connected_slim_graphs(n).iter() {
            for c in enumerate_strict_covers(g) {
                covers += 1;
                let h = &c.cover;
                let fat_ok = (0..n).all(|u| {
                    h.fat_neighbours(u).count_ones() <= 2
                        && (0..u).all(|v| (h.fat_neighbours(u) & h.fat_neighbours(v)).count_ones() <= 1)
                });
                if !fat_ok {
                    failures.push(format!("fat bounds fail on {h}"));
                }
                if decompose(h, &allowed).len() != 1 {
                    failures.push(format!("decomposition not unique on {h}"));
                }
                for x in 0..n {
                    deletions += 1;
                    match delete_vertex_from_cover(&c.decomposition, x) {
                        Ok((d, _)) if d.is_valid() && d.base == h.delete_slim(bit(x)).unwrap() => {}
                        _ => failures.push(format!("deletion of {x} fails on {h}")),
                    }
                }
                if c.part_kinds().iter().any(|k| !matches!(k, PartKind::H2 | PartKind::H3 | PartKind::H5)) {
                    failures.push(format!("foreign part in {h}"));
                }
            }
        }
    }
    let mut round_trips = 0;
    for n in 0..=7 {
        for g in all_slim_graphs(n).iter() {
            round_trips += 1;
            let ok = write_graph6(g).ok().and_then(|s| parse_graph6(&s).ok()).is_some_and(|p| &p == g);
            if !ok {
                failures.push(format!("graph6 round trip fails on {g}"));
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let pool: Vec<HoffmanGraph> = (1..=7).flat_map(|n| connected_slim_graphs(n).into_iter()).collect();
    for _ in 0..1000 {
        let g = pool.choose(&mut rng).unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        let p = g.permuted(&perm);
        if canonical_form(&p) != canonical_form(g) || canonical_graph(&p) != canonical_graph(g) {
            failures.push(format!("canonical form unstable on {g}"));
        }
    }
    let pass = failures.is_empty();
    let mut detail = format!("covers={covers} deletions={deletions} graph6={round_trips} permutations=1000");
    if let Some(f) = failures.first() {
        detail.push_str(&format!(" first failure: {f}"));
    }
    Outcome { pass, expected: pass, detail }
}

fn alpha_values() -> Outcome {
    let cases: [(&str, HoffmanGraph, Option<i64>); 4] =
        [("H1", h1(), Some(-1)), ("H2", h2(), Some(-2)), ("H3", h3(), Some(-2)), ("H5", h5(), None)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, g, want) in cases {
        let (e, t) = certify(&g).expect("nonempty");
        let ok = match want {
            Some(k) => e.exact && e.lower == num_rational::BigRational::from_integer(k.into()),
            // exactly −1 − √2
            None => t == Threshold::AtOrAbove { equal: true } && !e.exact,
        };
        pass &= ok;
        let value = if e.exact { e.lower.to_string() } else { format!("~{:.9} ({})", e.lower_f64(), t.label()) };
        parts.push(format!("{name}={value}"));
    }
    Outcome { pass, expected: pass, detail: parts.join(" ") }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cat = MfsCatalog::build(9).expect("catalog builds");
    let criteria: Vec<Criterion> = vec![
        ("1 five-vertex non-line graphs", Box::new(five_vertex)),
        ("2 catalog counts", Box::new(|| counts(&cat))),
        ("3 spectral dichotomy", Box::new(|| eigen(&cat))),
        ("4 screening equals cover search", Box::new(|| oracle(&cat))),
        ("5 cover uniqueness at n=8", Box::new(uniqueness)),
        ("6 sum table rows", Box::new(|| table(&cat))),
        ("7 fat-graph classifications", Box::new(fat_classifications)),
        ("8 property suites", Box::new(properties)),
        ("9 alpha values of the family", Box::new(alpha_values)),
    ];
    let mut unexpected = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let status = match (o.pass, o.expected) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known, recorded)",
            (false, false) => "FAIL",
        };
        if !o.expected {
            unexpected += 1;
        }
        println!("criterion {name}: {status} [{:.1}s] {}", t.elapsed().as_secs_f64(), o.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
