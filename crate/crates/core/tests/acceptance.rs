//! One line per acceptance criterion. Exits nonzero if any criterion fails.
//!
//! `HD1_ACCEPT_TIMEOUT_SECS` bounds each solver call of the stretch checks
//! (extremality at n=5, skew at n=6); a call that runs out reports UNKNOWN.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hd1::constructions::{
    canonical_dn, degree_d_lower_bound, degree_d_set, fixture, fixture_names,
};
use hd1::grid::{collapse, lift, validate_degree1, CellLabel, LabelGrid};
use hd1::lattice::{
    a_params, a_prime_params, a_set, count_two_point_lines, enumerate_max_independent_sets,
    has_degree_at_most, max_induced_degree, pow3, VertexSet,
};
use hd1::sat::{encode_grid_deg1, enumerate_models, Engine, VarMeaning};
use hd1::symmetry::canonical_form;
use hd1::verify::{
    verify_appendix_b, verify_canonical_uniqueness, verify_constructions, verify_degree_d,
    verify_dn_structure, verify_extremal, verify_forbidden, verify_skew, CheckReport, CheckStatus,
    VerifyContext,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Unknown,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: detail.into(),
        }
    }
}

fn from_reports(reports: &[CheckReport], allow_unknown: bool) -> Outcome {
    let fail = reports.iter().find(|r| r.status == CheckStatus::Fail);
    let unknown = reports.iter().find(|r| r.status == CheckStatus::Unknown);
    match (fail, unknown) {
        (Some(r), _) => Outcome {
            verdict: Verdict::Fail,
            detail: format!(
                "{} {}: {} {}",
                r.check,
                r.params,
                r.detail.as_deref().unwrap_or(""),
                r.measured
            ),
        },
        (None, Some(r)) => Outcome {
            verdict: if allow_unknown {
                Verdict::Unknown
            } else {
                Verdict::Fail
            },
            detail: format!(
                "{} {}: {}",
                r.check,
                r.params,
                r.detail.as_deref().unwrap_or("undecided")
            ),
        },
        (None, None) => Outcome {
            verdict: Verdict::Pass,
            detail: format!("{} reports", reports.len()),
        },
    }
}

type Run = Result<Outcome, hd1::Error>;

fn c1_construction_sizes() -> Run {
    let dn: Vec<usize> = (1..=7)
        .map(|n| canonical_dn(n).map(|d| d.len()))
        .collect::<Result<_, _>>()?;
    let want: Vec<usize> = (1..=7).map(|n| pow3(n - 1) + 1).collect();
    let x4 = fixture("x4")?.to_set().len();
    let e6 = fixture("extra6_n5")?.to_set().len();
    let e18 = fixture("extra18_n6")?.to_set();
    let g = collapse(&e18, 1)?;
    let up = lift(&g)?;
    let ok = dn == want
        && x4 == 29
        && e6 == 87
        && e18.len() == 261
        && up.n() == 7
        && up.extra_cells().len() == 18
        && validate_degree1(&up).is_ok();
    let r = from_reports(&[verify_constructions()?], false);
    Ok(Outcome::check(
        ok && r.verdict == Verdict::Pass,
        format!(
            "|D_n|={dn:?} |X_4|={x4} extra6={e6} extra18={} lift: n={} extra={}",
            e18.len(),
            up.n(),
            up.extra_cells().len()
        ),
    ))
}

fn c2_degree_and_disjointness() -> Run {
    let mut bad = Vec::new();
    for name in fixture_names() {
        if max_induced_degree(&fixture(name)?.to_set()) > 1 {
            bad.push(name.to_string());
        }
    }
    for n in 1..=7 {
        let d = canonical_dn(n)?;
        if !has_degree_at_most(&d, 1) || !d.is_disjoint(&a_set(n)) {
            bad.push(format!("D_{n}"));
        }
    }
    for n in 1..=5 {
        let d = canonical_dn(n)?;
        let all = enumerate_max_independent_sets(n)?;
        if all.len() != 3 * (1 << (n - 1)) {
            bad.push(format!("{} max independent sets at n={n}", all.len()));
        }
        let got: BTreeSet<String> = all
            .iter()
            .filter(|(_, s)| s.is_disjoint(&d))
            .map(|(p, _)| p.to_string())
            .collect();
        let want: BTreeSet<String> =
            [a_params(n).to_string(), a_prime_params(n).to_string()].into();
        if got != want {
            bad.push(format!("disjoint sets at n={n}: {got:?}"));
        }
    }
    Ok(Outcome::check(
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} fixtures, D_1..D_7, max independent sets n<=5",
                fixture_names().len()
            )
        } else {
            bad.join("; ")
        },
    ))
}

fn c3_line_counts() -> Run {
    let mut bad = Vec::new();
    for n in 1..=7 {
        let d = canonical_dn(n)?;
        for k in 1..=n {
            let want = if k == 1 { 1 } else { pow3(k - 2) };
            let got = count_two_point_lines(&d, k)?;
            if got != want {
                bad.push(format!("n={n} k={k}: {got} != {want}"));
            }
        }
    }
    Ok(Outcome::check(
        bad.is_empty(),
        if bad.is_empty() {
            "n<=7, all directions".into()
        } else {
            bad.join("; ")
        },
    ))
}

fn c4_canonical_paths() -> Run {
    let ctx = VerifyContext::default();
    let reports = (1..=6)
        .map(|n| verify_dn_structure(n, &ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let walks: u64 = reports
        .iter()
        .filter_map(|r| r.measured["walks"].as_u64())
        .sum();
    let mut o = from_reports(&reports, false);
    if o.verdict == Verdict::Pass {
        o.detail = format!("{walks} walks over n<=6, default + 20 random policies");
    }
    Ok(o)
}

/// Degree <= 1 on `Z_3^3` from a 27-bit membership mask, by counting neighbours with bit operations.
struct MaskOracle {
    digit: [[u32; 3]; 3],
}

impl MaskOracle {
    fn new() -> Self {
        let mut digit = [[0u32; 3]; 3];
        for p in 0..27 {
            for (k, row) in digit.iter_mut().enumerate() {
                row[p / 3usize.pow(k as u32) % 3] |= 1 << p;
            }
        }
        MaskOracle { digit }
    }

    /// `{p + a e_k : p in m}`.
    fn shift(&self, m: u32, k: usize, a: u32) -> u32 {
        let s = 3u32.pow(k as u32);
        let d = &self.digit[k];
        match a {
            1 => ((m & (d[0] | d[1])) << s) | ((m & d[2]) >> (2 * s)),
            _ => ((m & d[0]) << (2 * s)) | ((m & (d[1] | d[2])) >> s),
        }
    }

    fn degree_at_most_1(&self, m: u32) -> bool {
        let (mut ones, mut twos) = (0u32, 0u32);
        for k in 0..3 {
            for a in 1..=2 {
                let s = self.shift(m, k, a);
                twos |= ones & s;
                ones |= s;
            }
        }
        twos & m == 0
    }
}

/// Exhaustive count of degree-1 grids on `Z_3^m` over the six single/double labels.
fn exhaustive_grid_count(m: usize, oracle: &MaskOracle) -> (usize, usize) {
    let cells = pow3(m);
    let mut code = vec![0usize; cells];
    let (mut valid, mut discrepancies) = (0, 0);
    loop {
        let labels: Vec<CellLabel> = code.iter().map(|&c| CellLabel::SIX[c]).collect();
        let mut mask = 0u32;
        for (g, l) in labels.iter().enumerate() {
            mask |= (l.mask() as u32) << (3 * g);
        }
        let want = oracle.degree_at_most_1(mask);
        let g = LabelGrid::new(m, 1, labels).expect("shape");
        if validate_degree1(&g).is_ok() != want {
            discrepancies += 1;
        }
        valid += want as usize;
        let Some(i) = code.iter().position(|&c| c < 5) else {
            break;
        };
        code[i] += 1;
        code[..i].iter_mut().for_each(|c| *c = 0);
    }
    (valid, discrepancies)
}

fn c5_grid_equivalence() -> Run {
    let oracle = MaskOracle::new();
    let (v1, d1) = exhaustive_grid_count(1, &oracle);
    let (v2, d2) = exhaustive_grid_count(2, &oracle);
    Ok(Outcome::check(
        d1 == 0 && d2 == 0,
        format!("m=1: 216 grids, {v1} valid, {d1} discrepancies; m=2: 10077696 grids, {v2} valid, {d2} discrepancies"),
    ))
}

fn stretch_timeout() -> Duration {
    let secs = std::env::var("HD1_ACCEPT_TIMEOUT_SECS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1800);
    Duration::from_secs(secs)
}

fn c6_extremality() -> Run {
    let ctx = VerifyContext::default();
    let mut reports = Vec::new();
    for n in 1..=4 {
        reports.push(verify_extremal(n, &ctx)?);
        reports.push(verify_canonical_uniqueness(n, &ctx)?);
    }
    let core = from_reports(&reports, false);
    if core.verdict == Verdict::Fail {
        return Ok(core);
    }
    let stretch_ctx = VerifyContext {
        engine: Engine::embedded().with_timeout(stretch_timeout()),
        ..VerifyContext::default()
    };
    let five = verify_extremal(5, &stretch_ctx)?;
    let five_text = five.status.to_string();
    let mut o = from_reports(&[five], true);
    o.detail = format!("n=1..4 maxima 2,4,10,29 with classes 1,1,2,1; n=5 at 87/88: {five_text}");
    Ok(o)
}

fn c7_skew_catalog() -> Run {
    let ctx = VerifyContext::default();
    let two = verify_skew(2, &ctx)?;
    let three = verify_skew(3, &ctx)?;
    let detail = format!(
        "n=2 models={}; n=3 families={} (raw models {}) split={} abc-row families={}",
        two.measured["models"],
        three.measured["families"],
        three.measured["models"],
        three.measured["family_split"],
        three.measured["abc_row_families"],
    );
    let mut o = from_reports(&[two, three], false);
    if o.verdict == Verdict::Pass {
        o.detail = detail;
    }
    Ok(o)
}

fn c8_skew_six() -> Run {
    let ctx = VerifyContext {
        engine: Engine::embedded().with_timeout(stretch_timeout()),
        ..VerifyContext::default()
    };
    let r = verify_skew(6, &ctx)?;
    let statuses = r.measured["statuses"].to_string();
    let mut o = from_reports(&[r], true);
    o.detail = format!("directions 1..6: {statuses}");
    Ok(o)
}

fn c9_forbidden() -> Run {
    let r = verify_forbidden(&VerifyContext::default())?;
    let detail = format!(
        "{} cases, {} SAT; control {}",
        r.measured["cases"], r.measured["sat_cases"], r.measured["control_sat_second_planes"]
    );
    let mut o = from_reports(&[r], false);
    if o.verdict == Verdict::Pass {
        o.detail = detail;
    }
    Ok(o)
}

fn c10_degree_d() -> Run {
    let mut bad = Vec::new();
    for n in 1..=7 {
        for d in 1..=3 {
            let s = degree_d_set(n, d)?;
            let floor = pow3(n - 1) + pow3((d - 1) * n / d);
            if max_induced_degree(&s) as usize > d
                || s.len() < floor
                || degree_d_lower_bound(n, d) != floor
                || !s.is_disjoint(&a_set(n))
            {
                bad.push(format!("n={n} d={d} size={}", s.len()));
            }
        }
    }
    let r = from_reports(&[verify_degree_d()?], false);
    Ok(Outcome::check(
        bad.is_empty() && r.verdict == Verdict::Pass,
        if bad.is_empty() {
            "n<=7, d<=3".into()
        } else {
            bad.join("; ")
        },
    ))
}

fn c11_appendix_b() -> Run {
    let r = verify_appendix_b()?;
    let detail = format!("restrictions and intersection: {}", r.measured);
    let mut o = from_reports(&[r], false);
    if o.verdict == Verdict::Pass {
        o.detail = detail;
    }
    Ok(o)
}

fn c12_oracle_agreement() -> Run {
    // every subset of Z_3^2 by brute force
    let mut best: Vec<VertexSet> = Vec::new();
    let mut avoiding = Vec::new();
    let mut size = 0;
    let a2 = a_set(2);
    for mask in 0..512usize {
        let s = VertexSet::from_fn(2, |i| mask >> i & 1 == 1);
        let naive = s.iter().all(|p| {
            s.iter()
                .filter(|&q| {
                    (0..2)
                        .filter(|&k| p / 3usize.pow(k) % 3 != q / 3usize.pow(k) % 3)
                        .count()
                        == 1
                })
                .count()
                <= 1
        });
        if !naive {
            continue;
        }
        if s.len() > size {
            size = s.len();
            best.clear();
        }
        if s.len() == size {
            best.push(s.clone());
        }
        if s.len() >= 4 && s.is_disjoint(&a2) {
            avoiding.push(s);
        }
    }
    let classes: BTreeSet<VertexSet> = best.iter().map(canonical_form).collect::<Result<_, _>>()?;
    let d2 = canonical_form(&canonical_dn(2)?)?;
    let uniq = avoiding
        .iter()
        .all(|s| canonical_form(s).map(|c| c == d2).unwrap_or(false));

    let ctx = VerifyContext::default();
    let ext = verify_extremal(2, &ctx)?;
    let uni = verify_canonical_uniqueness(2, &ctx)?;
    let sat_side = ext.status == CheckStatus::Pass
        && uni.status == CheckStatus::Pass
        && ext.measured["models_at_max"].as_u64() == Some(best.len() as u64)
        && ext.measured["classes_at_max"].as_u64() == Some(classes.len() as u64)
        && uni.measured["models"].as_u64() == Some(avoiding.len() as u64);

    let oracle = MaskOracle::new();
    let mut counts = Vec::new();
    for m in 1..=2 {
        let f = encode_grid_deg1(m)?;
        let proj = f.vars_where(|v| matches!(v, VarMeaning::Cell { .. }));
        let e = enumerate_models(&f, &Engine::embedded(), None, &proj)?;
        let (want, _) = exhaustive_grid_count(m, &oracle);
        counts.push((m, e.models.len(), want));
    }
    let counts_ok = counts.iter().all(|&(_, a, b)| a == b);
    Ok(Outcome::check(
        sat_side && counts_ok && size == 4 && classes.len() == 1 && uniq,
        format!(
            "n=2 scan: max {size}, {} maximum sets, {} class, {} sets avoiding A_2; grid models (m, SAT, exhaustive) {counts:?}",
            best.len(),
            classes.len(),
            avoiding.len()
        ),
    ))
}

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    run: fn() -> Run,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            title: "construction sizes",
            budget: secs(10),
            run: c1_construction_sizes,
        },
        Criterion {
            id: 2,
            title: "degree and disjointness",
            budget: secs(10),
            run: c2_degree_and_disjointness,
        },
        Criterion {
            id: 3,
            title: "two-point line counts",
            budget: secs(30),
            run: c3_line_counts,
        },
        Criterion {
            id: 4,
            title: "canonical paths",
            budget: secs(60),
            run: c4_canonical_paths,
        },
        Criterion {
            id: 5,
            title: "grid/point degree equivalence",
            budget: secs(600),
            run: c5_grid_equivalence,
        },
        Criterion {
            id: 6,
            title: "extremality and uniqueness",
            budget: secs(1800),
            run: c6_extremality,
        },
        Criterion {
            id: 7,
            title: "skew catalog",
            budget: secs(300),
            run: c7_skew_catalog,
        },
        Criterion {
            id: 8,
            title: "no 1-skew function at n=6",
            budget: secs(6 * 3600),
            run: c8_skew_six,
        },
        Criterion {
            id: 9,
            title: "forbidden plane pairs",
            budget: secs(3600),
            run: c9_forbidden,
        },
        Criterion {
            id: 10,
            title: "degree-d construction",
            budget: secs(10),
            run: c10_degree_d,
        },
        Criterion {
            id: 11,
            title: "two copies of D_4 in X_6",
            budget: secs(10),
            run: c11_appendix_b,
        },
        Criterion {
            id: 12,
            title: "oracle agreement",
            budget: secs(60),
            run: c12_oracle_agreement,
        },
    ];
    let filter: Option<BTreeSet<u8>> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .map(|a| a.parse().ok())
        .collect::<Option<BTreeSet<u8>>>()
        .filter(|s| !s.is_empty());
    let mut failed = 0;
    for c in &criteria {
        if filter.as_ref().is_some_and(|f| !f.contains(&c.id)) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)().unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
        let wall = start.elapsed();
        let (mut verdict, mut detail) = (outcome.verdict, outcome.detail);
        if verdict == Verdict::Pass && wall > c.budget {
            verdict = Verdict::Fail;
            detail = format!("over budget; {detail}");
        }
        let tag = match verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        };
        println!(
            "{tag:<7} [{:>2}] {} ({:.1} s of {} s): {detail}",
            c.id,
            c.title,
            wall.as_secs_f64(),
            c.budget.as_secs()
        );
        if verdict == Verdict::Fail {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
