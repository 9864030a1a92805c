//! From a quiddity cycle to a dissection (or quotient dissection) realizing it.

use std::fmt;

use thiserror::Error;

use crate::frieze::{self, FriezeError, FriezeTable, QuiddityCycle, TestFailure};
use crate::ring::{self, Sign};
use crate::surface::{build_dissection, Arc, Dissection, QuotientDissection, Surface, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("choice {0:?} cannot be realized: {1}")]
    BadChoice(Vec<u32>, String),
    #[error("derived quiddity {got} differs from {expected}")]
    DerivedMismatch { expected: String, got: String },
    #[error("disc test says {combinatorial}, growth coefficient says {growth}")]
    CrossCheck { combinatorial: bool, growth: bool },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

/// `choice[k]` is the size of the outer face between `v_{k+1}` and `v_{k+2}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PChoice(pub Vec<u32>);

fn count(set: &[u32], p: u32) -> usize {
    set.iter().filter(|&&x| x == p).count()
}

/// Vertex `k` (0-based) with faces `left` and `right` on either side.
fn violates(set: &[u32], left: u32, right: u32) -> bool {
    set.len() > 1 && left == right && count(set, left) < 2
}

impl PChoice {
    pub fn violations(&self, q: &QuiddityCycle) -> Vec<usize> {
        let n = q.len();
        (0..n).filter(|&k| violates(&q.sets()[k], self.0[(k + n - 1) % n], self.0[k])).collect()
    }

    pub fn is_valid(&self, q: &QuiddityCycle) -> bool {
        let n = q.len();
        self.0.len() == n
            && (0..n).all(|k| {
                let a = &q.sets()[k];
                a.contains(&self.0[k]) && q.sets()[(k + 1) % n].contains(&self.0[k])
            })
            && self.violations(q).is_empty()
    }
}

fn candidates(q: &QuiddityCycle, k: usize) -> Vec<u32> {
    let mut c = frieze::intersect(&q.sets()[k], &q.sets()[(k + 1) % q.len()]);
    c.dedup();
    c
}

/// Lexicographically first choice minimizing the number of violations
/// (restricted to zero violations when `strict`).
fn best_choice(q: &QuiddityCycle, strict: bool) -> Option<(usize, PChoice)> {
    let n = q.len();
    let cand: Vec<Vec<u32>> = (0..n).map(|k| candidates(q, k)).collect();
    if cand.iter().any(|c| c.is_empty()) {
        return None;
    }
    let cost = |k: usize, l: u32, r: u32| usize::from(violates(&q.sets()[k], l, r));
    let inf = usize::MAX / 4;
    let mut best: Option<(usize, PChoice)> = None;
    for &last in &cand[n - 1] {
        // rest[k][v]: least cost of vertices k..n-1 given choice[k-1] = cand[k-1][v]
        let mut rest: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        if n == 1 {
            let c = cost(0, last, last);
            let seq = PChoice(vec![last]);
            if !(strict && c > 0) && best.as_ref().is_none_or(|b| (c, &seq) < (b.0, &b.1)) {
                best = Some((c, seq));
            }
            continue;
        }
        // vertex n-1 sees choice[n-2] and `last`
        rest[n - 1] = cand[n - 2].iter().map(|&l| cost(n - 1, l, last)).collect();
        for k in (1..n - 1).rev() {
            rest[k] = cand[k - 1]
                .iter()
                .map(|&l| cand[k].iter().enumerate().map(|(vi, &r)| cost(k, l, r) + rest[k + 1][vi]).min().unwrap_or(inf))
                .collect();
        }
        // vertex 0 sees `last` and choice[0]
        let mut seq = Vec::with_capacity(n);
        let mut total = inf;
        for (vi, &r) in cand[0].iter().enumerate() {
            let c = cost(0, last, r) + if n > 1 { rest[1][vi] } else { 0 };
            if c < total {
                total = c;
            }
        }
        if total >= inf || (strict && total > 0) {
            continue;
        }
        let mut prev = last;
        let mut acc = 0;
        for k in 0..n - 1 {
            let pick = cand[k]
                .iter()
                .enumerate()
                .find(|&(vi, &r)| acc + cost(k, prev, r) + rest[k + 1][vi] == total)
                .map(|(_, &r)| r)
                .unwrap();
            acc += cost(k, prev, pick);
            seq.push(pick);
            prev = pick;
        }
        seq.push(last);
        let seq = PChoice(seq);
        if best.as_ref().is_none_or(|b| (total, &seq) < (b.0, &b.1)) {
            best = Some((total, seq));
        }
    }
    best
}

/// Every choice satisfying both conditions, in lexicographic order, up to `cap`.
pub fn valid_choices(q: &QuiddityCycle, cap: usize) -> Vec<PChoice> {
    let n = q.len();
    let cand: Vec<Vec<u32>> = (0..n).map(|k| candidates(q, k)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(q: &QuiddityCycle, cand: &[Vec<u32>], cur: &mut Vec<u32>, out: &mut Vec<PChoice>, cap: usize) {
        let n = q.len();
        if out.len() >= cap {
            return;
        }
        let k = cur.len();
        if k == n {
            if !violates(&q.sets()[0], cur[n - 1], cur[0]) {
                out.push(PChoice(cur.clone()));
            }
            return;
        }
        for &r in &cand[k] {
            if k > 0 && violates(&q.sets()[k], cur[k - 1], r) {
                continue;
            }
            cur.push(r);
            go(q, cand, cur, out, cap);
            cur.pop();
        }
    }
    go(q, &cand, &mut cur, &mut out, cap);
    out
}

fn remove_pair(set: &[u32], a: u32, b: u32) -> Option<Vec<u32>> {
    let mut s = set.to_vec();
    for p in [a, b] {
        let at = s.iter().position(|&x| x == p)?;
        s.remove(at);
    }
    Some(s)
}

/// Build the dissection dictated by a choice: bridging arcs only.
pub fn construct(q: &QuiddityCycle, choice: &PChoice) -> Result<Dissection, RealizeError> {
    let n = q.len();
    let bad = |why: &str| RealizeError::BadChoice(choice.0.clone(), why.to_string());
    if choice.0.len() != n {
        return Err(bad("wrong length"));
    }
    let large: Vec<usize> = (0..n).filter(|&k| q.sets()[k].len() > 1).collect();
    if large.is_empty() {
        return Err(bad("no vertex meets more than one face"));
    }
    struct Vertex {
        k: usize,
        inner: Vec<u32>,
        advance: i64,
    }
    let mut verts = Vec::new();
    let mut m: i64 = 0;
    for (t, &k) in large.iter().enumerate() {
        let next = if t + 1 < large.len() { large[t + 1] } else { large[0] + n };
        let gap = (next - k) as i64;
        let p = choice.0[k];
        if (k..next).any(|s| choice.0[s % n] != p) {
            return Err(bad("choices change between multi-face vertices"));
        }
        let inner = remove_pair(&q.sets()[k], choice.0[(k + n - 1) % n], p).ok_or_else(|| bad("outer faces missing"))?;
        let advance = p as i64 - 2 - gap;
        if advance < 0 {
            return Err(bad("outer face too small for its run"));
        }
        m += inner.iter().map(|&r| r as i64 - 2).sum::<i64>() + advance;
        verts.push(Vertex { k, inner, advance });
    }
    let arcs: Vec<Arc>;
    let surface;
    if m == 0 {
        surface = Surface::Disc { n: n as u32 };
        arcs = verts.iter().map(|v| Arc::BridgeDisc(v.k as u32 + 1)).collect();
    } else {
        surface = Surface::Annulus { n: n as u32, m: m as u32 };
        let mut out = Vec::new();
        let mut h: i64 = 1;
        let mut push = |a: usize, h: i64| {
            out.push(Arc::Bridge {
                outer: a as u32 + 1,
                inner: ((h - 1).rem_euclid(m) + 1) as u32,
                shift: ((h - 1).div_euclid(m)) as u8,
            })
        };
        for v in &verts {
            push(v.k, h);
            for &r in &v.inner {
                h += r as i64 - 2;
                push(v.k, h);
            }
            h += v.advance;
        }
        debug_assert_eq!(h, m + 1);
        arcs = out;
    }
    let d = build_dissection(surface, arcs)?;
    let got = d.quiddity_outer()?;
    if got != *q {
        return Err(RealizeError::DerivedMismatch { expected: q.to_string(), got: got.to_string() });
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Skeletal {
    Disc(Dissection, PChoice),
    Annulus(Dissection, PChoice),
    NoValidChoice,
}

/// The unique choice that could give a punctured disc, if any.
fn disc_choice(q: &QuiddityCycle) -> Option<PChoice> {
    let n = q.len();
    if q.sets().iter().any(|s| s.len() > 2) {
        return None;
    }
    let large: Vec<usize> = (0..n).filter(|&k| q.sets()[k].len() == 2).collect();
    if large.is_empty() {
        return None;
    }
    let mut c = vec![0u32; n];
    for (t, &k) in large.iter().enumerate() {
        let next = if t + 1 < large.len() { large[t + 1] } else { large[0] + n };
        let p = (next - k) as u32 + 2;
        for s in k..next {
            c[s % n] = p;
        }
    }
    let choice = PChoice(c);
    if choice.is_valid(q) {
        Some(choice)
    } else {
        None
    }
}

fn require_skeletal(q: &QuiddityCycle) -> Result<(), RealizeError> {
    if let Err(f) = frieze::realizability_test(q) {
        return Err(RealizeError::Precondition(format!("fails the realizability test: {}", f)));
    }
    if !frieze::is_skeletal(q) {
        return Err(RealizeError::Precondition("cycle is not skeletal".into()));
    }
    Ok(())
}

pub fn skeletal_realize(q: &QuiddityCycle) -> Result<Skeletal, RealizeError> {
    require_skeletal(q)?;
    if let Some(c) = disc_choice(q) {
        let d = construct(q, &c)?;
        return Ok(Skeletal::Disc(d, c));
    }
    match best_choice(q, true) {
        Some((_, c)) => {
            let d = construct(q, &c)?;
            if matches!(d.surface(), Surface::Disc { .. }) {
                return Ok(Skeletal::Disc(d, c));
            }
            Ok(Skeletal::Annulus(d, c))
        }
        None => Ok(Skeletal::NoValidChoice),
    }
}

/// Realize a skeletal cycle with no valid choice by identifying faces of a
/// dissection of a slightly larger cycle.
pub fn quotient_realize(q: &QuiddityCycle) -> Result<QuotientDissection, RealizeError> {
    require_skeletal(q)?;
    let n = q.len();
    let (_, choice) = best_choice(q, false)
        .ok_or_else(|| RealizeError::Precondition("adjacent multisets share no size".into()))?;
    let viol = choice.violations(q);
    if viol.is_empty() {
        return Err(RealizeError::Precondition("cycle has a valid choice".into()));
    }
    let others: Vec<usize> = (0..n).filter(|&k| q.sets()[k].len() > 1 && !viol.contains(&k)).collect();
    let mut sets = q.sets().to_vec();
    for &k in &viol {
        sets[k].push(choice.0[k]);
    }
    // a lone non-violating vertex lies on both faces merged at each violation
    if others.len() == 1 {
        let p = choice.0[viol[0]];
        if viol.iter().any(|&k| choice.0[k] != p) {
            return Err(RealizeError::BadChoice(choice.0.clone(), "violations differ in size".into()));
        }
        sets[others[0]].push(p);
    }
    let hat = QuiddityCycle::with_context(sets, q.ctx())?;
    if !choice.is_valid(&hat) {
        return Err(RealizeError::BadChoice(choice.0.clone(), "modified cycle still violates".into()));
    }
    let d = construct(&hat, &choice)?;
    if !matches!(d.surface(), Surface::Annulus { .. }) {
        return Err(RealizeError::BadChoice(choice.0.clone(), "modified cycle gives a disc".into()));
    }
    let mut pairs = Vec::new();
    // with a lone other vertex every outer face ends in one class; pair its
    // two faces too so the lifted classes close up around the annulus
    let glued: Vec<usize> = if others.len() == 1 { viol.iter().copied().chain(others).collect() } else { viol.clone() };
    for &k in &glued {
        let cs = d.outer_corners(k as i64 + 1);
        let right = cs.first().unwrap().face;
        let left = cs.last().unwrap().face;
        pairs.push((left, right, Some(k as u32 + 1)));
    }
    let qd = QuotientDissection::new(d, &pairs)?;
    let got = qd.quiddity_outer()?;
    if got != *q {
        return Err(RealizeError::DerivedMismatch { expected: q.to_string(), got: got.to_string() });
    }
    Ok(qd)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    Test(TestFailure),
    Nonpositive { index: usize },
    /// constant `{p}` cycle whose period is not `p`
    PolygonPeriod { p: u32, n: usize },
    /// a cut would empty a flanking multiset
    BadCut { start: usize, p: u32 },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Test(t) => write!(f, "{}", t),
            Reason::Nonpositive { index } => write!(f, "nonpositive({})", index),
            Reason::PolygonPeriod { p, n } => write!(f, "constant_period({},{})", p, n),
            Reason::BadCut { start, p } => write!(f, "bad_cut({},{})", start, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Unrealizable(Reason),
    Polygon(u32),
    PuncturedDisc(u32),
    Annulus(u32, u32),
    QuotientAnnulus(u32, u32),
}

impl Verdict {
    pub fn is_realizable(&self) -> bool {
        !matches!(self, Verdict::Unrealizable(_))
    }

    /// Surface family, ignoring sizes.
    pub fn family(&self) -> &'static str {
        match self {
            Verdict::Unrealizable(_) => "unrealizable",
            Verdict::Polygon(_) => "polygon",
            Verdict::PuncturedDisc(_) => "punctured_disc",
            Verdict::Annulus(..) => "annulus",
            Verdict::QuotientAnnulus(..) => "quotient_annulus",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unrealizable(r) => write!(f, "unrealizable ({})", r),
            Verdict::Polygon(n) => write!(f, "polygon {}", n),
            Verdict::PuncturedDisc(n) => write!(f, "punctured_disc {}", n),
            Verdict::Annulus(n, m) => write!(f, "annulus {} {}", n, m),
            Verdict::QuotientAnnulus(n, m) => write!(f, "quotient_annulus {} {}", n, m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Dissection(Dissection),
    Quotient(QuotientDissection),
}

impl Witness {
    pub fn quiddity(&self) -> Result<QuiddityCycle, SurfaceError> {
        match self {
            Witness::Dissection(d) => d.quiddity_outer(),
            Witness::Quotient(q) => q.quiddity_outer(),
        }
    }

    pub fn dissection(&self) -> &Dissection {
        match self {
            Witness::Dissection(d) => d,
            Witness::Quotient(q) => q.base(),
        }
    }

    fn glue_ear(&self, p: u32, i: u32) -> Result<Witness, SurfaceError> {
        Ok(match self {
            Witness::Dissection(d) => Witness::Dissection(crate::surface::glue_ear(d, p, i)?),
            Witness::Quotient(q) => Witness::Quotient(q.glue_ear(p, i)?),
        })
    }

    fn rotate(&self, r: i64) -> Result<Witness, SurfaceError> {
        Ok(match self {
            Witness::Dissection(d) => Witness::Dissection(crate::surface::rotate(d, r)?),
            Witness::Quotient(q) => Witness::Quotient(q.rotate(r)?),
        })
    }
}

/// One cut: positions `start..start+p-3` (1-based, cyclic) of a cycle of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutStep {
    pub start: usize,
    pub p: u32,
    pub n: usize,
}

impl fmt::Display for CutStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = (self.start + self.p as usize - 3 - 1) % self.n + 1;
        write!(f, "cut [{},{}] p={} (n={})", self.start, end, self.p, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub trace: Vec<CutStep>,
    /// the cycle reached after all cuts
    pub core: QuiddityCycle,
}

/// Leftmost maximal run that is long enough to cut.
fn cut_site(q: &QuiddityCycle) -> Option<(usize, u32)> {
    q.singleton_runs().into_iter().filter(|&(_, len, p)| len >= p as usize - 2).min().map(|(s, _, p)| (s + 1, p))
}

fn reglue(core: Witness, trace: &[CutStep]) -> Result<Witness, RealizeError> {
    let mut w = core;
    for step in trace.iter().rev() {
        let n = step.n;
        let survivors = frieze::cut_survivors(n, step.start, step.p);
        let left = (step.start + n - 2) % n;
        let j = survivors.iter().position(|&s| s == left).expect("left flank survives") + 1;
        w = w.glue_ear(step.p, j as u32)?;
        if survivors[0] != 0 {
            w = w.rotate(survivors[0] as i64)?;
        }
    }
    Ok(w)
}

pub fn classify(q: &QuiddityCycle) -> Result<Classification, RealizeError> {
    let mut cur = q.clone();
    let mut trace = Vec::new();
    let unrealizable = |r: Reason, trace: Vec<CutStep>, core: QuiddityCycle| Classification {
        verdict: Verdict::Unrealizable(r),
        witness: None,
        trace,
        core,
    };
    loop {
        if let Err(t) = frieze::realizability_test(&cur) {
            return Ok(unrealizable(Reason::Test(t), trace, cur));
        }
        if let Some(k) = cur.entries().iter().position(|x| x.sign() != Sign::Positive) {
            return Ok(unrealizable(Reason::Nonpositive { index: k + 1 }, trace, cur));
        }
        if let Some(p) = cur.constant_singleton() {
            if cur.len() != p as usize {
                let n = cur.len();
                return Ok(unrealizable(Reason::PolygonPeriod { p, n }, trace, cur));
            }
            let core = Witness::Dissection(build_dissection(Surface::Polygon { n: p }, vec![])?);
            return finish(q, Verdict::Polygon(q.len() as u32), core, trace, cur);
        }
        if frieze::is_skeletal(&cur) {
            break;
        }
        let (start, p) = cut_site(&cur).expect("non-skeletal cycle has a long run");
        let n = cur.len();
        match frieze::cut(&cur, start, p) {
            Ok(next) => {
                assert!(next.len() < n, "cuts must shrink the period");
                trace.push(CutStep { start, p, n });
                cur = next;
            }
            Err(FriezeError::FlankLacks { .. }) | Err(FriezeError::CutTooShort { .. }) => {
                return Ok(unrealizable(Reason::BadCut { start, p }, trace, cur));
            }
            Err(e) => return Err(e.into()),
        }
    }

    match skeletal_realize(&cur)? {
        Skeletal::NoValidChoice => {
            let qd = quotient_realize(&cur)?;
            let core = Witness::Quotient(qd);
            finish(q, Verdict::QuotientAnnulus(0, 0), core, trace, cur)
        }
        Skeletal::Disc(d, _) | Skeletal::Annulus(d, _) => {
            let disc = matches!(d.surface(), Surface::Disc { .. });
            let mut table = FriezeTable::new(cur.clone());
            let s1 = table.growth_coefficient(1)?;
            let growth = s1 == ring::int(cur.ctx(), 2);
            if growth != disc {
                return Err(RealizeError::CrossCheck { combinatorial: disc, growth });
            }
            finish(q, Verdict::PuncturedDisc(0), Witness::Dissection(d), trace, cur)
        }
    }
}

fn finish(
    q: &QuiddityCycle,
    verdict: Verdict,
    core_witness: Witness,
    trace: Vec<CutStep>,
    core: QuiddityCycle,
) -> Result<Classification, RealizeError> {
    let w = reglue(core_witness, &trace)?;
    let got = w.quiddity()?;
    if got != *q {
        return Err(RealizeError::DerivedMismatch { expected: q.to_string(), got: got.to_string() });
    }
    let s = w.dissection().surface();
    let verdict = match (verdict, s) {
        (Verdict::Polygon(n), _) => Verdict::Polygon(n),
        (Verdict::QuotientAnnulus(..), Surface::Annulus { n, m }) => Verdict::QuotientAnnulus(n, m),
        (_, Surface::Disc { n }) => Verdict::PuncturedDisc(n),
        (_, Surface::Annulus { n, m }) => Verdict::Annulus(n, m),
        (v, _) => v,
    };
    Ok(Classification { verdict, witness: Some(w), trace, core })
}

/// One witness per valid choice on the skeletal core, re-glued to full size.
pub fn witness_nonuniqueness_probe(q: &QuiddityCycle, cap: usize) -> Result<Vec<Dissection>, RealizeError> {
    let c = classify(q)?;
    if !matches!(c.verdict, Verdict::Annulus(..) | Verdict::PuncturedDisc(_)) {
        return Ok(Vec::new());
    }
    let mut out: Vec<Dissection> = Vec::new();
    for choice in valid_choices(&c.core, cap) {
        let d = construct(&c.core, &choice)?;
        let w = reglue(Witness::Dissection(d), &c.trace)?;
        if let Witness::Dissection(d) = w {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::parse_quiddity;

    fn qc(s: &str) -> QuiddityCycle {
        parse_quiddity(s).unwrap()
    }

    #[test]
    fn worked_annulus() {
        let q = qc("[3,3,4] [4,6] [6] [3,6]");
        match skeletal_realize(&q).unwrap() {
            Skeletal::Annulus(d, c) => {
                assert_eq!(d.surface(), Surface::Annulus { n: 4, m: 4 });
                assert_eq!(c, PChoice(vec![4, 6, 6, 3]));
                assert_eq!(d.arcs().len(), 4);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn disc_when_choice_sums_to_zero() {
        let q = qc("[3,4] [4] [3,4]");
        match skeletal_realize(&q).unwrap() {
            Skeletal::Disc(d, _) => assert_eq!(d.surface(), Surface::Disc { n: 3 }),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn no_valid_choice() {
        // (1+phi, 1+sqrt2, 1+phi, sqrt2+phi)
        let q = qc("[3,5] [3,4] [3,5] [4,5]");
        assert_eq!(skeletal_realize(&q).unwrap(), Skeletal::NoValidChoice);
        let qd = quotient_realize(&q).unwrap();
        assert_eq!(qd.quiddity_outer().unwrap(), q);
    }

    #[test]
    fn quotient_examples() {
        for s in ["[3,3,3] [3,4,4]", "[3,3,4] [4,4,4]", "[3,4,4] [3,3,3]", "[4,4,4] [3,3,4]"] {
            let q = qc(s);
            assert_eq!(skeletal_realize(&q).unwrap(), Skeletal::NoValidChoice, "{}", s);
            let qd = quotient_realize(&q).unwrap();
            assert_eq!(qd.quiddity_outer().unwrap(), q);
        }
    }

    #[test]
    fn lone_vertex_closes_the_class() {
        // violations at two of three multi-face vertices
        for s in ["[5,5] [3,4,5] [5,6]", "[3,6] [3,3,3,3] [3,4,5]", "[4,4] [4,5] [4,6,6]"] {
            let q = qc(s);
            let qd = quotient_realize(&q).unwrap();
            assert_eq!(qd.quiddity_outer().unwrap(), q, "{}", s);
            assert_eq!(qd.face_classes().iter().filter(|c| c.len() == 3).count(), 1);
        }
    }

    #[test]
    fn quotient_witness_with_growth_below_two() {
        let q = qc("[4] [3,4] [4] [4,5]");
        let c = classify(&q).unwrap();
        assert_eq!(c.verdict, Verdict::QuotientAnnulus(4, 4));
        let mut t = FriezeTable::new(q.clone());
        let s1 = t.growth_coefficient(1).unwrap();
        assert_eq!((&s1 - &ring::int(q.ctx(), 2)).sign(), ring::Sign::Negative);
        assert!(matches!(t.check_positivity(40), frieze::Positivity::NonpositiveFound { .. }));
    }

    #[test]
    fn choice_search_is_lexicographic() {
        let q = qc("[3,4,4] [3,3,4,4]");
        let all = valid_choices(&q, 100);
        assert!(all.len() >= 2);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(best_choice(&q, true).unwrap().1, all[0]);
    }

    #[test]
    fn classify_cuts_down_to_disc() {
        // (1+sqrt2+sqrt3, sqrt3, sqrt3, sqrt3, 1+sqrt3, 1, 1+sqrt2+sqrt3, 1+sqrt2)
        let q = qc("[3,4,6] [6] [6] [6] [3,6] [3] [3,4,6] [3,4]");
        let c = classify(&q).unwrap();
        assert_eq!(c.verdict, Verdict::PuncturedDisc(8));
        assert_eq!(c.trace.len(), 2);
        assert_eq!(c.core, qc("[3,4] [4] [3,4]"));
        assert_eq!(c.witness.unwrap().quiddity().unwrap(), q);
    }

    #[test]
    fn classify_unrealizable_after_cut() {
        // (1+sqrt2, 1, 2, 1+sqrt2)
        let c = classify(&qc("[3,4] [3] [3,3] [3,4]")).unwrap();
        assert_eq!(c.trace.len(), 1);
        assert!(matches!(c.verdict, Verdict::Unrealizable(Reason::Test(TestFailure::EmptyIntersection { .. }))));
    }

    #[test]
    fn polygons() {
        let c = classify(&qc("[3] [3,3,3] [3] [3,3,3] [3] [3,3,3]")).unwrap();
        assert!(matches!(c.verdict, Verdict::Polygon(6)), "{:?}", c.verdict);
        let c = classify(&qc("[5] [5] [5]")).unwrap();
        assert_eq!(c.verdict, Verdict::Unrealizable(Reason::PolygonPeriod { p: 5, n: 3 }));
        assert_eq!(classify(&qc("[5] [5] [5] [5] [5]")).unwrap().verdict, Verdict::Polygon(5));
    }

    #[test]
    fn probe_finds_several() {
        let w = witness_nonuniqueness_probe(&qc("[3,4,4] [3,3,4,4]"), 100).unwrap();
        assert!(w.len() >= 2);
        let w = witness_nonuniqueness_probe(&qc("[3] [3,3,3,3] [3,3,3,3]"), 100).unwrap();
        assert!(!w.is_empty());
        assert!(witness_nonuniqueness_probe(&qc("[5] [5] [5]"), 100).unwrap().is_empty());
    }
}
