//! Matchings between lifted outer vertices and their three weightings.
//!
//! A matching from `i` to `j` picks one face corner at every lifted outer
//! vertex strictly between them. Corners come from the cover, so two choices
//! are "the same subgon" when they are the same lifted face, or the same
//! identification class on a quotient.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::frieze::{FriezeError, FriezeTable};
use crate::ring::{self, Ctx, RingElem};
use crate::surface::{dissection_power, Corner, Dissection, QuotientDissection, Surface, SurfaceError};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("matching window {i}..{j} is reversed")]
    Reversed { i: i64, j: i64 },
    #[error("{count} matchings exceed the budget of {budget}")]
    Budget { count: u128, budget: u64 },
    #[error("{0} weighting is not defined on quotient dissections")]
    QuotientMode(WeighMode),
    #[error("annulus weighting needs {n} intermediate vertices, got {len}")]
    AnnulusLength { n: usize, len: usize },
    #[error("annulus weighting needs an annulus or punctured disc")]
    AnnulusSurface,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeighMode {
    Local,
    Traditional,
    Annulus,
}

impl fmt::Display for WeighMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeighMode::Local => "local",
            WeighMode::Traditional => "traditional",
            WeighMode::Annulus => "annulus",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Plain(&'a Dissection),
    Quotient(&'a QuotientDissection),
}

impl<'a> From<&'a Dissection> for Source<'a> {
    fn from(d: &'a Dissection) -> Self {
        Source::Plain(d)
    }
}

impl<'a> From<&'a QuotientDissection> for Source<'a> {
    fn from(q: &'a QuotientDissection) -> Self {
        Source::Quotient(q)
    }
}

impl<'a> Source<'a> {
    pub fn dissection(&self) -> &'a Dissection {
        match self {
            Source::Plain(d) => d,
            Source::Quotient(q) => q.base(),
        }
    }

    pub fn corners(&self, g: i64) -> Vec<Corner> {
        match self {
            Source::Plain(d) => d.outer_corners(g),
            Source::Quotient(q) => q.outer_corners(g),
        }
    }

    /// Identity of the subgon behind a corner.
    pub fn key(&self, c: &Corner) -> (usize, i64) {
        match self {
            Source::Plain(_) => (c.face, c.copy),
            Source::Quotient(q) => {
                let id = q.class_of(c.face, c.copy);
                (id.root, id.residue)
            }
        }
    }

    fn ctx(&self) -> Result<Ctx, MatchingError> {
        let mut sizes: Vec<u32> = self.dissection().faces().iter().map(|f| f.size()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        Ok(ring::RingContext::new(&sizes).map_err(FriezeError::from)?)
    }
}

/// One corner chosen at each of `from+1 .. to-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub from: i64,
    pub to: i64,
    pub choice: Vec<Corner>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }
}

/// `U_k(lambda_p)` cache over one ring.
struct Cheb {
    ctx: Ctx,
    table: HashMap<(u32, usize), RingElem>,
}

impl Cheb {
    fn new(ctx: Ctx) -> Self {
        Cheb { ctx, table: HashMap::new() }
    }

    fn u(&mut self, p: u32, k: usize) -> RingElem {
        let ctx = self.ctx.clone();
        self.table
            .entry((p, k))
            .or_insert_with(|| ring::chebyshev_u(&ring::lambda(&ctx, p).expect("face size in ring"), k as i64))
            .clone()
    }
}

fn window(src: &Source, i: i64, j: i64) -> Result<Vec<Vec<Corner>>, MatchingError> {
    if j < i {
        return Err(MatchingError::Reversed { i, j });
    }
    Ok((i + 1..j).map(|g| src.corners(g)).collect())
}

/// Number of matchings from `i` to `j` (`0` when `i == j`).
pub fn count_matchings(src: Source, i: i64, j: i64) -> Result<u128, MatchingError> {
    if i == j {
        return Ok(0);
    }
    let w = window(&src, i, j)?;
    Ok(w.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128)))
}

/// All matchings from `i` to `j`, in lexicographic order of corner positions.
pub fn enumerate_matchings(src: Source, i: i64, j: i64, budget: u64) -> Result<Vec<Matching>, MatchingError> {
    let count = count_matchings(src, i, j)?;
    if count > budget as u128 {
        return Err(MatchingError::Budget { count, budget });
    }
    if i == j {
        return Ok(Vec::new());
    }
    let w = window(&src, i, j)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; w.len()];
    loop {
        out.push(Matching { from: i, to: j, choice: idx.iter().zip(&w).map(|(&k, c)| c[k]).collect() });
        // odometer, last position fastest
        let mut t = w.len();
        loop {
            if t == 0 {
                return Ok(out);
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < w[t].len() {
                break;
            }
            idx[t] = 0;
        }
    }
}

fn check_mode(src: &Source, mode: WeighMode, len: usize) -> Result<(), MatchingError> {
    if matches!(src, Source::Quotient(_)) && mode != WeighMode::Local {
        return Err(MatchingError::QuotientMode(mode));
    }
    if mode == WeighMode::Annulus {
        let d = src.dissection();
        if d.surface().is_polygon() {
            return Err(MatchingError::AnnulusSurface);
        }
        let n = d.n() as usize;
        if len != n {
            return Err(MatchingError::AnnulusLength { n, len });
        }
    }
    Ok(())
}

fn local_weight(src: &Source, cheb: &mut Cheb, choice: &[Corner]) -> RingElem {
    let mut acc = ring::one(&cheb.ctx);
    let mut s = 0;
    while s < choice.len() {
        let key = src.key(&choice[s]);
        let mut e = s + 1;
        while e < choice.len() && src.key(&choice[e]) == key {
            e += 1;
        }
        acc = &acc * &cheb.u(choice[s].size, e - s);
        s = e;
    }
    acc
}

fn multiplicity_weight(cheb: &mut Cheb, counts: &HashMap<(usize, i64), (u32, usize)>) -> RingElem {
    let mut acc = ring::one(&cheb.ctx);
    let mut keys: Vec<_> = counts.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        let (p, c) = counts[&k];
        if c > p as usize - 2 {
            return ring::zero(&cheb.ctx);
        }
        acc = &acc * &cheb.u(p, c);
    }
    acc
}

fn mode_key(src: &Source, mode: WeighMode, c: &Corner) -> (usize, i64) {
    match mode {
        WeighMode::Annulus => (c.face, 0),
        _ => src.key(c),
    }
}

pub fn weigh_matching(src: Source, w: &Matching, mode: WeighMode) -> Result<RingElem, MatchingError> {
    check_mode(&src, mode, w.len())?;
    let mut cheb = Cheb::new(src.ctx()?);
    Ok(weigh_with(&src, &mut cheb, &w.choice, mode))
}

fn weigh_with(src: &Source, cheb: &mut Cheb, choice: &[Corner], mode: WeighMode) -> RingElem {
    match mode {
        WeighMode::Local => local_weight(src, cheb, choice),
        _ => {
            let mut counts: HashMap<(usize, i64), (u32, usize)> = HashMap::new();
            for c in choice {
                counts.entry(mode_key(src, mode, c)).or_insert((c.size, 0)).1 += 1;
            }
            multiplicity_weight(cheb, &counts)
        }
    }
}

/// Exact sum of weights over all matchings from `i` to `j`.
///
/// Traditional and annulus modes drop a branch as soon as some subgon is
/// used more than `|P| - 2` times; local mode enumerates everything and is
/// refused beyond `budget` matchings.
pub fn matching_sum(src: Source, i: i64, j: i64, mode: WeighMode, budget: u64) -> Result<RingElem, MatchingError> {
    let mut cheb = Cheb::new(src.ctx()?);
    if i == j {
        return Ok(ring::zero(&cheb.ctx));
    }
    let w = window(&src, i, j)?;
    check_mode(&src, mode, w.len())?;
    if mode == WeighMode::Local {
        let count = count_matchings(src, i, j)?;
        if count > budget as u128 {
            return Err(MatchingError::Budget { count, budget });
        }
        let mut total = ring::zero(&cheb.ctx);
        for m in enumerate_matchings(src, i, j, budget)? {
            total += &local_weight(&src, &mut cheb, &m.choice);
        }
        return Ok(total);
    }

    struct Walk<'s, 'a> {
        src: &'s Source<'a>,
        mode: WeighMode,
        w: Vec<Vec<Corner>>,
        counts: HashMap<(usize, i64), (u32, usize)>,
        visited: u64,
        budget: u64,
    }
    impl Walk<'_, '_> {
        fn go(&mut self, t: usize, cheb: &mut Cheb, total: &mut RingElem) -> Result<(), MatchingError> {
            if t == self.w.len() {
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(MatchingError::Budget { count: self.visited as u128, budget: self.budget });
                }
                *total += &multiplicity_weight(cheb, &self.counts);
                return Ok(());
            }
            for k in 0..self.w[t].len() {
                let c = self.w[t][k];
                let key = mode_key(self.src, self.mode, &c);
                let e = self.counts.entry(key).or_insert((c.size, 0));
                e.1 += 1;
                if e.1 <= c.size as usize - 2 {
                    self.go(t + 1, cheb, total)?;
                }
                let e = self.counts.get_mut(&key).unwrap();
                e.1 -= 1;
                if e.1 == 0 {
                    self.counts.remove(&key);
                }
            }
            Ok(())
        }
    }
    let mut walk = Walk { src: &src, mode, w, counts: HashMap::new(), visited: 0, budget };
    let mut total = ring::zero(&cheb.ctx);
    walk.go(0, &mut cheb, &mut total)?;
    Ok(total)
}

/// Every matching with its traditional, local and annulus weights (the
/// annulus column only when defined).
pub type WeightRow = (Matching, Option<RingElem>, RingElem, Option<RingElem>);

pub fn weight_table(src: Source, i: i64, j: i64, budget: u64) -> Result<Vec<WeightRow>, MatchingError> {
    let mut cheb = Cheb::new(src.ctx()?);
    let ms = enumerate_matchings(src, i, j, budget)?;
    let len = (j - i - 1).max(0) as usize;
    let trad = check_mode(&src, WeighMode::Traditional, len).is_ok();
    let ann = check_mode(&src, WeighMode::Annulus, len).is_ok();
    Ok(ms
        .into_iter()
        .map(|m| {
            let t = trad.then(|| weigh_with(&src, &mut cheb, &m.choice, WeighMode::Traditional));
            let l = weigh_with(&src, &mut cheb, &m.choice, WeighMode::Local);
            let a = ann.then(|| weigh_with(&src, &mut cheb, &m.choice, WeighMode::Annulus));
            (m, t, l, a)
        })
        .collect())
}

/// `s_k` as the annulus-weight sum over one period of the `k`-th power.
pub fn growth_via_annulus_weight(d: &Dissection, k: u32, budget: u64) -> Result<RingElem, MatchingError> {
    if d.surface().is_polygon() {
        return Err(MatchingError::AnnulusSurface);
    }
    let dk = dissection_power(d, k)?;
    let n = dk.n() as i64;
    matching_sum(Source::Plain(&dk), 0, n + 1, WeighMode::Annulus, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Equal(RingElem),
    Mismatch { outer: RingElem, inner: RingElem },
}

/// First growth coefficients of the outer and inner friezes of an annulus.
pub fn inner_outer_consistency(d: &Dissection) -> Result<Consistency, MatchingError> {
    if !matches!(d.surface(), Surface::Annulus { .. }) {
        return Err(SurfaceError::NoInnerBoundary.into());
    }
    let outer = FriezeTable::new(d.quiddity_outer()?).growth_coefficient(1)?;
    let inner = FriezeTable::new(d.quiddity_inner()?).growth_coefficient(1)?;
    Ok(if outer == inner { Consistency::Equal(outer) } else { Consistency::Mismatch { outer, inner } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{parse_dissection, Arc};

    fn annulus_333() -> Dissection {
        parse_dissection("annulus 3 3\nbridge 1 2 0\nbridge 3 3 0\nbridge 3 2 1\nperi 1 3\n").unwrap()
    }

    fn ring_of(d: &Dissection) -> Ctx {
        Source::Plain(d).ctx().unwrap()
    }

    #[test]
    fn conventions() {
        let d = annulus_333();
        let s = Source::Plain(&d);
        assert_eq!(count_matchings(s, 2, 2).unwrap(), 0);
        let e = enumerate_matchings(s, 2, 3, 10).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].is_empty());
        let ctx = ring_of(&d);
        for mode in [WeighMode::Local, WeighMode::Traditional] {
            assert_eq!(matching_sum(s, 4, 4, mode, 10).unwrap(), ring::zero(&ctx));
            assert_eq!(matching_sum(s, 4, 5, mode, 10).unwrap(), ring::one(&ctx));
        }
    }

    #[test]
    fn window_0_4_of_annulus_333() {
        let d = annulus_333();
        let s = Source::Plain(&d);
        assert_eq!(count_matchings(s, 0, 4).unwrap(), 12);
        let rows = weight_table(s, 0, 4, 100).unwrap();
        let ctx = ring_of(&d);
        let r2 = ring::lambda(&ctx, 4).unwrap();
        let sum = |col: usize| {
            rows.iter().fold(ring::zero(&ctx), |acc, r| {
                acc + match col {
                    0 => r.1.clone().unwrap(),
                    1 => r.2.clone(),
                    _ => r.3.clone().unwrap(),
                }
            })
        };
        assert_eq!(sum(0), ring::int(&ctx, 4) + r2.scale(3));
        assert_eq!(sum(1), ring::int(&ctx, 4) + r2.scale(3));
        assert_eq!(sum(2), ring::int(&ctx, 3) + r2.scale(3));
        let nonzero = rows.iter().filter(|r| !(r.1.as_ref().unwrap().is_zero() && r.2.is_zero())).count();
        assert_eq!(nonzero, 7);
    }

    #[test]
    fn pruned_sums_agree_with_enumeration() {
        let d = annulus_333();
        let s = Source::Plain(&d);
        let mut cheb = Cheb::new(ring_of(&d));
        for (i, j) in [(0, 3), (0, 4), (1, 6), (-2, 5)] {
            let brute = enumerate_matchings(s, i, j, 100_000)
                .unwrap()
                .iter()
                .fold(ring::zero(&cheb.ctx.clone()), |acc, m| acc + weigh_with(&s, &mut cheb, &m.choice, WeighMode::Traditional));
            assert_eq!(matching_sum(s, i, j, WeighMode::Traditional, 100_000).unwrap(), brute);
        }
    }

    #[test]
    fn entries_and_growth() {
        let d = annulus_333();
        let s = Source::Plain(&d);
        let mut t = FriezeTable::new(d.quiddity_outer().unwrap());
        for i in 0..3 {
            for j in i..i + 8 {
                let e = t.entry(i, j).unwrap();
                assert_eq!(matching_sum(s, i, j, WeighMode::Local, 1 << 20).unwrap(), e, "({},{})", i, j);
                assert_eq!(matching_sum(s, i, j, WeighMode::Traditional, 1 << 20).unwrap(), e);
            }
        }
        let s1 = t.growth_coefficient(1).unwrap();
        assert_eq!(growth_via_annulus_weight(&d, 1, 1 << 20).unwrap(), s1);
        assert_eq!(growth_via_annulus_weight(&d, 2, 1 << 20).unwrap(), t.growth_coefficient(2).unwrap());
    }

    #[test]
    fn mode_errors() {
        let d = annulus_333();
        let s = Source::Plain(&d);
        assert_eq!(
            matching_sum(s, 0, 3, WeighMode::Annulus, 10),
            Err(MatchingError::AnnulusLength { n: 3, len: 2 })
        );
        let p = Dissection::new(Surface::Polygon { n: 5 }, vec![Arc::diag(2, 4)]).unwrap();
        assert_eq!(
            matching_sum(Source::Plain(&p), 0, 4, WeighMode::Annulus, 10),
            Err(MatchingError::AnnulusSurface)
        );
        assert!(matches!(matching_sum(s, 0, 30, WeighMode::Local, 1000), Err(MatchingError::Budget { .. })));
        assert!(matches!(matching_sum(s, 3, 1, WeighMode::Local, 1000), Err(MatchingError::Reversed { .. })));
    }

    #[test]
    fn annulus_144_inner_outer() {
        let d = parse_dissection("annulus 3 2\nperi 3 2\nbridge 2 2 0\nbridge 2 1 1\nbridge 3 1 1\nbridge 3 2 1\n").unwrap();
        let seven = ring::int(&ring_of(&d), 7);
        assert_eq!(inner_outer_consistency(&d).unwrap(), Consistency::Equal(seven.clone()));
        assert_eq!(growth_via_annulus_weight(&d, 1, 1 << 20).unwrap(), seven);
        assert_eq!(growth_via_annulus_weight(&d, 2, 1 << 20).unwrap(), ring::int(&ring_of(&d), 47));
        assert!(matches!(inner_outer_consistency(&annulus_333()).unwrap(), Consistency::Equal(_)));
    }

    #[test]
    fn quotient_entries_use_classes() {
        use crate::frieze::parse_quiddity;
        use crate::realize::quotient_realize;
        for text in ["[3,3,3] [3,4,4]", "[3,3,4] [4,4,4]", "[3,5] [3,4] [3,5] [4,5]", "[3,3,4] [4,4]"] {
            let q = parse_quiddity(text).unwrap();
            let qd = quotient_realize(&q).unwrap();
            let s = Source::Quotient(&qd);
            let mut t = FriezeTable::new(q.clone());
            let n = q.len() as i64;
            for i in 0..n {
                for j in i..=i + 2 * n + 2 {
                    if count_matchings(s, i, j).unwrap() > 200_000 {
                        continue;
                    }
                    assert_eq!(matching_sum(s, i, j, WeighMode::Local, 200_000).unwrap(), t.entry(i, j).unwrap(), "{} ({},{})", text, i, j);
                }
            }
            assert_eq!(matching_sum(s, 0, 3, WeighMode::Traditional, 10), Err(MatchingError::QuotientMode(WeighMode::Traditional)));
        }
    }
}
