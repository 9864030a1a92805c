//! Randomized property suites shared by `verify` and the acceptance run.

use std::collections::BTreeMap;
use std::fmt;

use frieze_core::frieze::{cut, glue, FriezeTable, Positivity, QuiddityCycle};
use frieze_core::matchings::{
    count_matchings, growth_via_annulus_weight, inner_outer_consistency, matching_sum, weigh_matching, Consistency,
    MatchingError, Source, WeighMode,
};
use frieze_core::realize::{classify, Verdict};
use frieze_core::ring::{self, RingElem};
use frieze_core::surface::{format_dissection, format_quotient, glue_ear, parse_surface_file, Dissection, SurfaceFile};
use frieze_core::tpaths::{enumerate_tpaths, phi_bijection, tpath_weight, TPathKind};
use rand::Rng;

use crate::random::{self, Rng8};

pub const NAMES: &[&str] = &[
    "unimodular",
    "weights-equal",
    "entry-local",
    "growth-matching",
    "growth-recurrence",
    "inner-outer",
    "phi",
    "glide",
    "cut-glue",
    "quotient-roundtrip",
    "coverage",
    "positivity-sweep",
];

/// Windows with more matchings than this are skipped.
pub const WINDOW_CAP: u128 = 100_000;
const BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
    pub log: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} passed, {} failed", self.name, self.passed, self.failed)?;
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        writeln!(f)?;
        for x in &self.failures {
            writeln!(f, "  FAIL {}", x)?;
        }
        for x in &self.log {
            writeln!(f, "  {}", x)?;
        }
        Ok(())
    }
}

enum Outcome {
    Pass,
    Skip,
}

type Check = Result<Outcome, String>;

fn tally(name: &str, r: &mut Rng8, count: usize, mut f: impl FnMut(&mut Rng8) -> Check) -> Report {
    let mut rep = Report { name: name.to_string(), ..Default::default() };
    for k in 0..count {
        match f(r) {
            Ok(Outcome::Pass) => rep.passed += 1,
            Ok(Outcome::Skip) => rep.skipped += 1,
            Err(e) => {
                rep.failed += 1;
                rep.failures.push(format!("#{}: {}", k, e));
            }
        }
    }
    rep
}

fn same(what: &str, a: &RingElem, b: &RingElem, ctx: impl fmt::Display) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{}: {} vs {} on {}", what, a, b, ctx))
    }
}

fn quiddity(d: &Dissection) -> Result<QuiddityCycle, String> {
    d.quiddity_outer().map_err(|e| e.to_string())
}

/// Matching windows `(i, j)` of a dissection: every chord of a polygon, and
/// every window of length at most `n+1` from each base vertex otherwise.
fn windows(d: &Dissection) -> Vec<(i64, i64)> {
    let n = d.n() as i64;
    if d.surface().is_polygon() {
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
    } else {
        (1..=n).flat_map(|i| (i + 1..=i + n + 1).map(move |j| (i, j))).collect()
    }
}

pub fn unimodular(r: &mut Rng8, count: usize) -> Report {
    tally("unimodular", r, count, |r| {
        let q = if r.gen_bool(0.5) { quiddity(&random::any(r))? } else { random::skeletal_cycle(r, &[3, 4, 5, 6]) };
        let n = q.len() as i64;
        let mut t = FriezeTable::new(q.clone());
        let one = ring::one(q.ctx());
        for i in 0..n {
            for g in 1..=3 * n {
                let e = |t: &mut FriezeTable, a: i64, b: i64| t.entry(a, b).map_err(|e| e.to_string());
                let det = &(&e(&mut t, i, i + g)? * &e(&mut t, i + 1, i + g + 1)?)
                    - &(&e(&mut t, i, i + g + 1)? * &e(&mut t, i + 1, i + g)?);
                if det != one {
                    return Err(format!("diamond at ({},{}) is {} on {}", i, i + g, det, q));
                }
            }
        }
        Ok(Outcome::Pass)
    })
}

pub fn weights_equal(r: &mut Rng8, count: usize) -> Report {
    tally("weights-equal", r, count, |r| {
        let d = random::any(r);
        let src = Source::Plain(&d);
        let mut any = false;
        for (i, j) in windows(&d) {
            if count_matchings(src, i, j).map_err(|e| e.to_string())? > WINDOW_CAP {
                continue;
            }
            any = true;
            let l = matching_sum(src, i, j, WeighMode::Local, BUDGET).map_err(|e| e.to_string())?;
            let t = matching_sum(src, i, j, WeighMode::Traditional, BUDGET).map_err(|e| e.to_string())?;
            same(&format!("window {}..{}", i, j), &l, &t, format_dissection(&d).replace('\n', "; "))?;
        }
        Ok(if any { Outcome::Pass } else { Outcome::Skip })
    })
}

fn entries_match(src: Source, q: &QuiddityCycle, label: &str) -> Result<bool, String> {
    let d = src.dissection();
    let mut t = FriezeTable::new(q.clone());
    let mut any = false;
    for (i, j) in windows(d) {
        if count_matchings(src, i, j).map_err(|e| e.to_string())? > WINDOW_CAP {
            continue;
        }
        any = true;
        let l = matching_sum(src, i, j, WeighMode::Local, BUDGET).map_err(|e| e.to_string())?;
        let m = t.entry(i, j).map_err(|e| e.to_string())?;
        same(&format!("m_{{{},{}}}", i, j), &m, &l, label)?;
    }
    Ok(any)
}

pub fn entry_local(r: &mut Rng8, count: usize) -> Report {
    tally("entry-local", r, count, |r| {
        let any = if r.gen_bool(0.5) {
            let d = random::any(r);
            let q = quiddity(&d)?;
            entries_match(Source::Plain(&d), &q, &format_dissection(&d).replace('\n', "; "))?
        } else {
            let (q, w) = random::quotient_cycle(r);
            entries_match(Source::Quotient(&w), &q, &format_quotient(&w).replace('\n', "; "))?
        };
        Ok(if any { Outcome::Pass } else { Outcome::Skip })
    })
}

pub fn growth_matching(r: &mut Rng8, count: usize) -> Report {
    tally("growth-matching", r, count, |r| {
        let d = random::infinite(r);
        let mut t = FriezeTable::new(quiddity(&d)?);
        let label = format_dissection(&d).replace('\n', "; ");
        for k in 1..=2u32 {
            let s = t.growth_coefficient(k as usize).map_err(|e| e.to_string())?;
            match growth_via_annulus_weight(&d, k, BUDGET) {
                Ok(w) => same(&format!("s_{}", k), &s, &w, &label)?,
                Err(MatchingError::Budget { .. }) => return Ok(Outcome::Skip),
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(Outcome::Pass)
    })
}

pub fn growth_recurrence(r: &mut Rng8, count: usize) -> Report {
    tally("growth-recurrence", r, count, |r| {
        let d = random::infinite(r);
        let q = quiddity(&d)?;
        let mut t = FriezeTable::new(q.clone());
        let mut s = vec![ring::int(q.ctx(), 2)];
        for k in 1..=5 {
            s.push(t.growth_coefficient(k).map_err(|e| e.to_string())?);
        }
        for k in 1..=4 {
            let rhs = &(&s[1] * &s[k]) - &s[k - 1];
            same(&format!("s_{}", k + 1), &s[k + 1], &rhs, &q)?;
        }
        Ok(Outcome::Pass)
    })
}

pub fn inner_outer(r: &mut Rng8, count: usize) -> Report {
    tally("inner-outer", r, count, |r| {
        let d = random::annulus(r);
        match inner_outer_consistency(&d).map_err(|e| e.to_string())? {
            Consistency::Equal(_) => Ok(Outcome::Pass),
            Consistency::Mismatch { outer, inner } => {
                Err(format!("outer {} inner {} on {}", outer, inner, format_dissection(&d).replace('\n', "; ")))
            }
        }
    })
}

pub fn phi(r: &mut Rng8, count: usize) -> Report {
    tally("phi", r, count, |r| {
        let d = random::polygon(r, 9, 8);
        let n = d.n();
        let label = format_dissection(&d).replace('\n', "; ");
        let src = Source::Plain(&d);
        for i in 1..=n {
            for j in i + 1..=n {
                let pairs = phi_bijection(&d, i, j).map_err(|e| format!("{} ({}..{}) on {}", e, i, j, label))?;
                let weak = enumerate_tpaths(&d, i, j, TPathKind::Weak).map_err(|e| e.to_string())?;
                let mut images: Vec<_> = pairs.iter().map(|(_, p)| p.clone()).collect();
                images.sort();
                if images != weak {
                    return Err(format!("image of phi is not the weak T-path set for {}..{} on {}", i, j, label));
                }
                let mut lhs = Vec::new();
                for (m, _) in &pairs {
                    lhs.push(weigh_matching(src, m, WeighMode::Traditional).map_err(|e| e.to_string())?.to_string());
                }
                let mut rhs = Vec::new();
                for p in &weak {
                    rhs.push(tpath_weight(&d, p).map_err(|e| e.to_string())?.to_string());
                }
                lhs.sort();
                rhs.sort();
                if lhs != rhs {
                    return Err(format!("weight multisets differ for {}..{} on {}", i, j, label));
                }
            }
        }
        Ok(Outcome::Pass)
    })
}

pub fn glide(r: &mut Rng8, count: usize) -> Report {
    tally("glide", r, count, |r| {
        let d = random::polygon(r, 10, 7);
        let q = quiddity(&d)?;
        let n = q.len() as i64;
        let mut t = FriezeTable::new(q.clone());
        for i in 0..n {
            for j in i..=i + n {
                let a = t.entry(i, j).map_err(|e| e.to_string())?;
                let b = t.entry(j, i + n).map_err(|e| e.to_string())?;
                same(&format!("m_{{{},{}}} vs m_{{{},{}}}", i, j, j, i + n), &a, &b, &q)?;
            }
        }
        Ok(Outcome::Pass)
    })
}

/// Family and size after shifting `n` by `add`.
fn shifted(v: &Verdict, add: u32) -> Verdict {
    match v.clone() {
        Verdict::Polygon(n) => Verdict::Polygon(n + add),
        Verdict::PuncturedDisc(n) => Verdict::PuncturedDisc(n + add),
        Verdict::Annulus(n, m) => Verdict::Annulus(n + add, m),
        Verdict::QuotientAnnulus(n, m) => Verdict::QuotientAnnulus(n + add, m),
        u => u,
    }
}

pub fn cut_glue(r: &mut Rng8, count: usize) -> Report {
    tally("cut-glue", r, count, |r| {
        let d = random::any(r);
        let q = quiddity(&d)?;
        let p = r.gen_range(3..=5u32);
        let i = r.gen_range(1..=q.len());
        let g = glue(&q, p, i).map_err(|e| e.to_string())?;
        let back = cut(&g, i + 1, p).map_err(|e| e.to_string())?;
        if back != q {
            return Err(format!("cut(glue({}, {}, {})) = {}", q, p, i, back));
        }
        let eared = quiddity(&glue_ear(&d, p, i as u32).map_err(|e| e.to_string())?)?;
        if eared != g {
            return Err(format!("ear quiddity {} vs glued cycle {}", eared, g));
        }
        let before = classify(&q).map_err(|e| e.to_string())?.verdict;
        let after = classify(&g).map_err(|e| e.to_string())?.verdict;
        if after != shifted(&before, p - 2) {
            return Err(format!("verdict {} became {} after a {}-glue on {}", before, after, p, q));
        }
        Ok(Outcome::Pass)
    })
}

pub fn quotient_roundtrip(r: &mut Rng8, count: usize) -> Report {
    tally("quotient-roundtrip", r, count, |r| {
        let (q, w) = random::quotient_cycle(r);
        let c = classify(&q).map_err(|e| format!("{} on {}", e, q))?;
        if !matches!(c.verdict, Verdict::QuotientAnnulus(..)) {
            return Err(format!("{} classified {}", q, c.verdict));
        }
        let got = c.witness.as_ref().ok_or("no witness")?.quiddity().map_err(|e| e.to_string())?;
        if got != q {
            return Err(format!("witness quiddity {} for {}", got, q));
        }
        let text = format_quotient(&w);
        let parsed = match parse_surface_file(&text).map_err(|e| e.to_string())? {
            SurfaceFile::Quotient(x) => x,
            SurfaceFile::Plain(_) => return Err("glue lines lost in the file round trip".into()),
        };
        if parsed.quiddity_outer().map_err(|e| e.to_string())? != q {
            return Err(format!("file round trip changed the quiddity of {}", q));
        }
        Ok(Outcome::Pass)
    })
}

pub fn coverage(r: &mut Rng8, count: usize) -> Report {
    tally("coverage", r, count, |r| {
        let (q, expect_polygon) = if r.gen_bool(0.5) {
            (random::skeletal_cycle(r, &[3, 4, 5, 6]), false)
        } else {
            let d = random::any(r);
            (quiddity(&d)?, d.surface().is_polygon())
        };
        let c = classify(&q).map_err(|e| format!("{} on {}", e, q))?;
        if !c.verdict.is_realizable() {
            return Err(format!("{} classified {}", q, c.verdict));
        }
        if expect_polygon != matches!(c.verdict, Verdict::Polygon(_)) {
            return Err(format!("{} classified {}", q, c.verdict));
        }
        Ok(Outcome::Pass)
    })
}

fn positivity_label(p: &Positivity) -> String {
    match p {
        Positivity::ProvablyPositive(by) => format!("provably_positive({:?})", by),
        Positivity::NonpositiveFound { .. } => "nonpositive_found".into(),
        Positivity::Inconclusive { .. } => "inconclusive".into(),
    }
}

/// Quotient-realizable cycles are logged only; cycles of ordinary
/// dissections must never show a nonpositive entry.
pub fn positivity_sweep(r: &mut Rng8, count: usize) -> Report {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut notes = Vec::new();
    let mut rep = tally("positivity-sweep", r, count, |r| {
        let (q, _) = random::quotient_cycle(r);
        let depth = 3 * q.len() + 6;
        let verdict = FriezeTable::new(q.clone()).check_positivity(depth);
        *seen.entry(positivity_label(&verdict)).or_default() += 1;
        if let Positivity::NonpositiveFound { i, j } = verdict {
            notes.push(format!("quotient-only nonpositive m_{{{},{}}} on {}", i, j, q));
        }

        let d = random::any(r);
        let o = quiddity(&d)?;
        let depth = 3 * o.len() + 6;
        match FriezeTable::new(o.clone()).check_positivity(depth) {
            Positivity::NonpositiveFound { i, j } => Err(format!("nonpositive m_{{{},{}}} on realizable {}", i, j, o)),
            _ => Ok(Outcome::Pass),
        }
    });
    rep.log.push(format!("quotient cycles swept: {}", count));
    for (k, v) in seen {
        rep.log.push(format!("{}: {}", k, v));
    }
    rep.log.extend(notes);
    rep
}

pub fn run(name: &str, seed: u64, count: usize) -> Option<Report> {
    let mut r = random::rng(seed);
    let f: fn(&mut Rng8, usize) -> Report = match name {
        "unimodular" => unimodular,
        "weights-equal" => weights_equal,
        "entry-local" => entry_local,
        "growth-matching" => growth_matching,
        "growth-recurrence" => growth_recurrence,
        "inner-outer" => inner_outer,
        "phi" => phi,
        "glide" => glide,
        "cut-glue" => cut_glue,
        "quotient-roundtrip" => quotient_roundtrip,
        "coverage" => coverage,
        "positivity-sweep" => positivity_sweep,
        _ => return None,
    };
    Some(f(&mut r, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_runs_small() {
        for name in NAMES {
            let rep = run(name, 3, 4).unwrap();
            assert!(rep.ok(), "{}", rep);
        }
        assert!(run("nope", 0, 1).is_none());
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(run("unimodular", 7, 5).unwrap().to_string(), run("unimodular", 7, 5).unwrap().to_string());
    }
}
