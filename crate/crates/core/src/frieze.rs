//! Quiddity cycles and the frieze tables they generate.

use std::fmt;

use thiserror::Error;

use crate::ring::{self, Ctx, RingContext, RingElem, RingError, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FriezeError {
    #[error("quiddity cycle is empty")]
    EmptyCycle,
    #[error("multiset A_{0} is empty")]
    EmptyMultiset(usize),
    #[error("size {size} in A_{index} is below 3")]
    SizeTooSmall { index: usize, size: u32 },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("entry m_{{{i},{j}}} is below the diagonal")]
    BelowDiagonal { i: i64, j: i64 },
    #[error("frieze is finite (zero row at gap {gap})")]
    Finite { gap: usize },
    #[error("growth coefficient differs between i = 0 and i = {0}")]
    GrowthNotConstant(usize),
    #[error("k must be at least 1")]
    BadK,
    #[error("positions {start}..{end} are not all {{{p}}}")]
    NotConstantRun { start: usize, end: usize, p: u32 },
    #[error("flanking multiset A_{index} lacks enough copies of {p}")]
    FlankLacks { index: usize, p: u32 },
    #[error("cut of {p} undefined for period {n}")]
    CutTooShort { n: usize, p: u32 },
    #[error("position {0} out of range")]
    BadPosition(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A period of multisets `A_1..A_n`; entry `A_i` gives `m_{i-1,i+1}`.
#[derive(Clone)]
pub struct QuiddityCycle {
    sets: Vec<Vec<u32>>,
    ctx: Ctx,
    entries: Vec<RingElem>,
}

impl QuiddityCycle {
    pub fn new(sets: Vec<Vec<u32>>) -> Result<Self, FriezeError> {
        let sizes = Self::validate(&sets)?;
        let ctx = RingContext::new(&sizes)?;
        Self::with_context(sets, &ctx)
    }

    /// Build over a given ring; every size must divide its `L`.
    pub fn with_context(mut sets: Vec<Vec<u32>>, ctx: &Ctx) -> Result<Self, FriezeError> {
        Self::validate(&sets)?;
        for s in sets.iter_mut() {
            s.sort_unstable();
        }
        let entries = sets
            .iter()
            .map(|s| ring::lambda_sum(ctx, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QuiddityCycle { sets, ctx: ctx.clone(), entries })
    }

    fn validate(sets: &[Vec<u32>]) -> Result<Vec<u32>, FriezeError> {
        if sets.is_empty() {
            return Err(FriezeError::EmptyCycle);
        }
        let mut all = Vec::new();
        for (k, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(FriezeError::EmptyMultiset(k + 1));
            }
            for &p in s {
                if p < 3 {
                    return Err(FriezeError::SizeTooSmall { index: k + 1, size: p });
                }
                all.push(p);
            }
        }
        Ok(all)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// `A_1..A_n` in order, each sorted.
    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    /// `A_i` for any integer `i` (indices are cyclic, `A_0 = A_n`).
    pub fn multiset(&self, i: i64) -> &[u32] {
        &self.sets[(i - 1).rem_euclid(self.len() as i64) as usize]
    }

    /// `m_{i-1,i+1}`.
    pub fn value(&self, i: i64) -> &RingElem {
        &self.entries[(i - 1).rem_euclid(self.len() as i64) as usize]
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    /// Cycle read from position `1 + r`.
    pub fn rotated(&self, r: usize) -> QuiddityCycle {
        let n = self.len();
        let sets = (0..n).map(|k| self.sets[(k + r) % n].clone()).collect();
        QuiddityCycle::with_context(sets, &self.ctx).expect("rotation keeps validity")
    }

    pub fn reversed(&self) -> QuiddityCycle {
        let mut sets = self.sets.clone();
        sets.reverse();
        QuiddityCycle::with_context(sets, &self.ctx).expect("reversal keeps validity")
    }

    /// Same multisets, equal up to rotation.
    pub fn same_up_to_rotation(&self, o: &QuiddityCycle) -> bool {
        self.len() == o.len() && (0..self.len()).any(|r| self.rotated(r).sets == o.sets)
    }

    /// If every entry is the singleton `{p}`, return `p`.
    pub fn constant_singleton(&self) -> Option<u32> {
        let first = &self.sets[0];
        if first.len() == 1 && self.sets.iter().all(|s| s == first) {
            Some(first[0])
        } else {
            None
        }
    }

    fn singleton(&self, k: usize) -> Option<u32> {
        let s = &self.sets[k % self.len()];
        if s.len() == 1 {
            Some(s[0])
        } else {
            None
        }
    }

    /// Maximal cyclic runs of equal singletons: `(start, length, p)`, 0-based start.
    /// Not meaningful when every entry is the same singleton.
    pub fn singleton_runs(&self) -> Vec<(usize, usize, u32)> {
        let n = self.len();
        let mut out = Vec::new();
        if self.constant_singleton().is_some() {
            return out;
        }
        for start in 0..n {
            let Some(p) = self.singleton(start) else { continue };
            if self.singleton(start + n - 1) == Some(p) {
                continue;
            }
            let mut len = 1;
            while self.singleton(start + len) == Some(p) {
                len += 1;
            }
            out.push((start, len, p));
        }
        out
    }
}

impl PartialEq for QuiddityCycle {
    fn eq(&self, o: &QuiddityCycle) -> bool {
        self.sets == o.sets
    }
}

impl Eq for QuiddityCycle {}

impl fmt::Debug for QuiddityCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuiddityCycle({})", self)
    }
}

impl fmt::Display for QuiddityCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.sets.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "[")?;
            for (t, p) in s.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Parse `[3,3,4] [3] [3,3,4,4]`; `#` starts a comment running to end of line.
pub fn parse_quiddity(text: &str) -> Result<QuiddityCycle, FriezeError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut sets: Vec<Vec<u32>> = Vec::new();
    let err = |offset: usize, message: &str| FriezeError::Parse { offset, message: message.to_string() };

    let skip = |pos: &mut usize| {
        while *pos < bytes.len() {
            let c = bytes[*pos];
            if c == b'#' {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                *pos += 1;
            } else {
                break;
            }
        }
    };

    loop {
        skip(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'[' {
            return Err(err(pos, "expected '['"));
        }
        pos += 1;
        let mut set = Vec::new();
        loop {
            skip(&mut pos);
            if pos >= bytes.len() {
                return Err(err(pos, "unterminated multiset"));
            }
            if !bytes[pos].is_ascii_digit() {
                return Err(err(pos, "expected a size"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let v: u32 = text[start..pos].parse().map_err(|_| err(start, "size out of range"))?;
            if v < 3 {
                return Err(err(start, "size below 3"));
            }
            set.push(v);
            skip(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b']') => {
                    pos += 1;
                    break;
                }
                _ => return Err(err(pos, "expected ',' or ']'")),
            }
        }
        sets.push(set);
    }
    if sets.is_empty() {
        return Err(err(0, "no multisets"));
    }
    QuiddityCycle::new(sets)
}

impl std::str::FromStr for QuiddityCycle {
    type Err = FriezeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_quiddity(s)
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtentKind {
    Finite { width: usize },
    Infinite { period: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtentReport {
    pub kind: ExtentKind,
    pub first_nonpositive: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositiveBy {
    /// every quiddity entry is at least 2
    QuiddityAtLeastTwo,
    /// first n rows positive and s_1 >= 2
    RowsAndGrowth,
    /// finite frieze, every interior entry checked
    FiniteScan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    ProvablyPositive(PositiveBy),
    NonpositiveFound { i: i64, j: i64 },
    Inconclusive { depth: usize },
}

/// Lazily extended frieze: `rows[g][r] = m_{r, r+g}` for `0 <= r < n`.
pub struct FriezeTable {
    cycle: QuiddityCycle,
    rows: Vec<Vec<RingElem>>,
}

impl FriezeTable {
    pub fn new(cycle: QuiddityCycle) -> Self {
        let n = cycle.len();
        let ctx = cycle.ctx().clone();
        let zeros = vec![ring::zero(&ctx); n];
        let ones = vec![ring::one(&ctx); n];
        let q = (0..n).map(|r| cycle.value(r as i64 + 1).clone()).collect();
        FriezeTable { cycle, rows: vec![zeros, ones, q] }
    }

    pub fn cycle(&self) -> &QuiddityCycle {
        &self.cycle
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    fn grow_to(&mut self, gap: usize) {
        let n = self.period();
        while self.rows.len() <= gap {
            let g = self.rows.len();
            let row = (0..n)
                .map(|r| &(&self.rows[2][r] * &self.rows[g - 1][(r + 1) % n]) - &self.rows[g - 2][(r + 2) % n])
                .collect();
            self.rows.push(row);
        }
    }

    /// All entries `m_{r, r+gap}` for `r = 0..n`.
    pub fn row(&mut self, gap: usize) -> &[RingElem] {
        self.grow_to(gap);
        &self.rows[gap]
    }

    pub fn entry(&mut self, i: i64, j: i64) -> Result<RingElem, FriezeError> {
        if j < i {
            return Err(FriezeError::BelowDiagonal { i, j });
        }
        let gap = (j - i) as usize;
        self.grow_to(gap);
        Ok(self.rows[gap][i.rem_euclid(self.period() as i64) as usize].clone())
    }

    fn row_is(&mut self, gap: usize, k: i64) -> bool {
        let target = ring::int(self.cycle.ctx(), k);
        self.row(gap).iter().all(|x| *x == target)
    }

    /// Gap of the closing row of ones, if one occurs with gap at most `max_gap`.
    fn closing_gap(&mut self, max_gap: usize) -> Option<usize> {
        (2..=max_gap).find(|&g| self.row_is(g, 1) && self.row_is(g + 1, 0))
    }

    pub fn extent(&mut self, probe_depth: usize) -> ExtentReport {
        let n = self.period();
        let max_gap = probe_depth.max(n + 2);
        let closing = self.closing_gap(max_gap);
        let last = closing.unwrap_or(max_gap);
        let mut first_nonpositive = None;
        'scan: for g in 2..=last {
            for r in 0..n {
                if self.rows[g][r].sign() != Sign::Positive {
                    first_nonpositive = Some((r as i64, (r + g) as i64));
                    break 'scan;
                }
            }
        }
        let kind = match closing {
            Some(g) => ExtentKind::Finite { width: g - 2 },
            None => ExtentKind::Infinite { period: n },
        };
        ExtentReport { kind, first_nonpositive }
    }

    /// `s_k = m_{0,kn+1} - m_{1,kn}`, checked to be independent of the starting index.
    pub fn growth_coefficient(&mut self, k: usize) -> Result<RingElem, FriezeError> {
        if k == 0 {
            return Err(FriezeError::BadK);
        }
        let n = self.period();
        let top = k * n + 1;
        for g in 3..=top {
            if self.row_is(g, 0) {
                return Err(FriezeError::Finite { gap: g });
            }
        }
        let s = |t: &mut Self, i: i64| -> RingElem {
            let a = t.entry(i, i + top as i64).unwrap();
            let b = t.entry(i + 1, i + (k * n) as i64).unwrap();
            &a - &b
        };
        let s0 = s(self, 0);
        for i in 1..n {
            if s(self, i as i64) != s0 {
                return Err(FriezeError::GrowthNotConstant(i));
            }
        }
        Ok(s0)
    }

    pub fn check_positivity(&mut self, depth: usize) -> Positivity {
        let ctx = self.cycle.ctx().clone();
        let two = ring::int(&ctx, 2);
        if self.cycle.entries().iter().all(|x| (x - &two).sign() != Sign::Negative) {
            return Positivity::ProvablyPositive(PositiveBy::QuiddityAtLeastTwo);
        }
        let n = self.period();
        let last = depth.max(n + 1);
        for g in 2..=last {
            if self.row_is(g, 1) && self.row_is(g + 1, 0) {
                return Positivity::ProvablyPositive(PositiveBy::FiniteScan);
            }
            for r in 0..n {
                if self.rows[g][r].sign() != Sign::Positive {
                    return Positivity::NonpositiveFound { i: r as i64, j: (r + g) as i64 };
                }
            }
            if g == n + 1 {
                if let Ok(s1) = self.growth_coefficient(1) {
                    if (&s1 - &two).sign() != Sign::Negative {
                        return Positivity::ProvablyPositive(PositiveBy::RowsAndGrowth);
                    }
                }
            }
        }
        Positivity::Inconclusive { depth: last }
    }
}

// ---------------------------------------------------------------------------
// cutting and gluing ears

fn remove_one(set: &mut Vec<u32>, p: u32) -> bool {
    match set.iter().position(|&x| x == p) {
        Some(k) => {
            set.remove(k);
            true
        }
        None => false,
    }
}

/// Remove the ear of size `p` occupying positions `i..=i+p-3` (1-based, cyclic).
///
/// Survivors keep their original relative order starting from the lowest
/// surviving index.
pub fn cut(q: &QuiddityCycle, i: usize, p: u32) -> Result<QuiddityCycle, FriezeError> {
    let n = q.len();
    if i == 0 || i > n || p < 3 {
        return Err(FriezeError::BadPosition(i));
    }
    let run = (p - 2) as usize;
    if n < run + 1 {
        return Err(FriezeError::CutTooShort { n, p });
    }
    let pos = |t: usize| (i - 1 + t) % n; // 0-based index of position i+t
    for t in 0..run {
        if q.sets[pos(t)] != [p] {
            return Err(FriezeError::NotConstantRun { start: i, end: i + run - 1, p });
        }
    }
    let left = (i + n - 2) % n;
    let right = pos(run);
    let mut sets = q.sets.clone();
    if !remove_one(&mut sets[left], p) || sets[left].is_empty() {
        return Err(FriezeError::FlankLacks { index: left + 1, p });
    }
    if !remove_one(&mut sets[right], p) || sets[right].is_empty() {
        return Err(FriezeError::FlankLacks { index: right + 1, p });
    }
    let removed: Vec<usize> = (0..run).map(pos).collect();
    let kept: Vec<Vec<u32>> = (0..n).filter(|k| !removed.contains(k)).map(|k| sets[k].clone()).collect();
    QuiddityCycle::with_context(kept, q.ctx())
}

/// 0-based original indices of the survivors of `cut(q, i, p)`, in output order.
pub fn cut_survivors(n: usize, i: usize, p: u32) -> Vec<usize> {
    let run = (p - 2) as usize;
    let removed: Vec<usize> = (0..run).map(|t| (i - 1 + t) % n).collect();
    (0..n).filter(|k| !removed.contains(k)).collect()
}

/// Attach an ear of size `p` between positions `i` and `i+1` (1-based, `i = n` wraps).
pub fn glue(q: &QuiddityCycle, p: u32, i: usize) -> Result<QuiddityCycle, FriezeError> {
    let n = q.len();
    if i == 0 || i > n {
        return Err(FriezeError::BadPosition(i));
    }
    if p < 3 {
        return Err(FriezeError::SizeTooSmall { index: i, size: p });
    }
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(n + p as usize - 2);
    sets.extend(q.sets[..i].iter().cloned());
    for _ in 0..p - 2 {
        sets.push(vec![p]);
    }
    sets.extend(q.sets[i..].iter().cloned());
    let m = sets.len();
    sets[i - 1].push(p);
    sets[(i - 1 + p as usize - 1) % m].push(p);
    let ctx = if q.ctx().contains_level(p) {
        q.ctx().clone()
    } else {
        let mut lv = q.ctx().levels().to_vec();
        lv.push(p);
        RingContext::new(&lv)?
    };
    QuiddityCycle::with_context(sets, &ctx)
}

// ---------------------------------------------------------------------------
// quiddity-level realizability screens

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestFailure {
    /// `A_i` and `A_{i+1}` share no size
    EmptyIntersection { i: usize },
    /// more than `p-2` consecutive `{p}` entries starting at `i`
    LongRun { p: u32, i: usize },
}

impl fmt::Display for TestFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFailure::EmptyIntersection { i } => write!(f, "empty_intersection({})", i),
            TestFailure::LongRun { p, i } => write!(f, "long_run({},{})", p, i),
        }
    }
}

/// Multiset intersection of two sorted multisets.
pub fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut x, mut y) = (0, 0);
    let mut out = Vec::new();
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

pub fn realizability_test(q: &QuiddityCycle) -> Result<(), TestFailure> {
    let n = q.len();
    for k in 0..n {
        if intersect(&q.sets[k], &q.sets[(k + 1) % n]).is_empty() {
            return Err(TestFailure::EmptyIntersection { i: k + 1 });
        }
    }
    for (start, len, p) in q.singleton_runs() {
        if len > (p - 2) as usize {
            return Err(TestFailure::LongRun { p, i: start + 1 });
        }
    }
    Ok(())
}

/// Every maximal run of `{p}` singletons is shorter than `p-2`.
///
/// Read literally, so any `{3}` entry makes the cycle non-skeletal, and a
/// cycle made entirely of `{p}` is never skeletal.
pub fn is_skeletal(q: &QuiddityCycle) -> bool {
    if q.constant_singleton().is_some() {
        return false;
    }
    q.singleton_runs().iter().all(|&(_, len, p)| len < (p - 2) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qc(s: &str) -> QuiddityCycle {
        parse_quiddity(s).unwrap()
    }

    fn sqrt2(ctx: &Ctx) -> RingElem {
        ring::lambda(ctx, 4).unwrap()
    }

    #[test]
    fn example_entries() {
        let q = qc("[3,3,4] [3] [3,3,4,4]");
        let c = q.ctx().clone();
        let r2 = sqrt2(&c);
        assert_eq!(q.entries()[0], &ring::int(&c, 2) + &r2);
        assert!(q.entries()[1].is_one());
        assert_eq!(q.entries()[2], &ring::int(&c, 2) + &r2.scale(2));
        assert_eq!(qc("[3]").entries()[0], ring::int(qc("[3]").ctx(), 1));
    }

    #[test]
    fn parse_errors() {
        match parse_quiddity("[3,2]") {
            Err(FriezeError::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{:?}", other),
        }
        assert!(parse_quiddity("[3,4").is_err());
        assert!(parse_quiddity("").is_err());
        let q = qc("  [4 ,6]\n# note\n[6] # tail");
        assert_eq!(q.sets(), &[vec![4, 6], vec![6]]);
        assert_eq!(q.to_string(), "[4,6] [6]");
    }

    #[test]
    fn annulus_144_rows() {
        let mut t = FriezeTable::new(qc("[3] [3,3,3,3] [3,3,3,3]"));
        let ints = |t: &mut FriezeTable, g: usize| -> Vec<i64> {
            t.row(g).iter().map(|x| x.as_integer().unwrap().try_into().unwrap()).collect()
        };
        assert_eq!(ints(&mut t, 2), vec![1, 4, 4]);
        assert_eq!(ints(&mut t, 3), vec![3, 15, 3]);
        assert_eq!(ints(&mut t, 4), vec![11, 11, 8]);
        assert_eq!(ints(&mut t, 5), vec![8, 29, 29]);
        assert_eq!(ints(&mut t, 6), vec![21, 105, 21]);
        assert_eq!(t.growth_coefficient(1).unwrap(), ring::int(t.cycle().ctx(), 7));
        assert_eq!(t.growth_coefficient(2).unwrap(), ring::int(t.cycle().ctx(), 47));
        let e = t.extent(12);
        assert_eq!(e.kind, ExtentKind::Infinite { period: 3 });
        assert_eq!(e.first_nonpositive, None);
    }

    #[test]
    fn below_diagonal() {
        let mut t = FriezeTable::new(qc("[3]"));
        assert!(matches!(t.entry(3, 2), Err(FriezeError::BelowDiagonal { .. })));
    }

    #[test]
    fn constant_cycle_is_chebyshev() {
        let mut t = FriezeTable::new(qc("[7]"));
        let l = ring::lambda(t.cycle().ctx(), 7).unwrap();
        for k in 0..10 {
            assert_eq!(t.entry(0, k + 1).unwrap(), ring::chebyshev_u(&l, k));
        }
        let mut t5 = FriezeTable::new(qc("[5]"));
        assert_eq!(t5.extent(8).kind, ExtentKind::Finite { width: 2 });
        assert!(matches!(t5.growth_coefficient(4), Err(FriezeError::Finite { .. })));
    }

    #[test]
    fn sqrt2_cycle_goes_negative() {
        let mut t = FriezeTable::new(qc("[3] [4]"));
        let c = t.cycle().ctx().clone();
        let r2 = sqrt2(&c);
        assert_eq!(t.entry(0, 3).unwrap(), &r2 - &ring::one(&c));
        assert_eq!(t.entry(1, 5).unwrap(), &ring::int(&c, 2) - &r2.scale(2));
        assert_eq!(t.entry(0, 4).unwrap(), &r2 - &ring::int(&c, 2));
        assert!(t.extent(6).first_nonpositive.is_some());
        assert!(matches!(t.check_positivity(10), Positivity::NonpositiveFound { .. }));
        assert_eq!(t.growth_coefficient(1).unwrap(), &r2 - &ring::int(&c, 2));
    }

    #[test]
    fn positivity_branches() {
        let mut a = FriezeTable::new(qc("[3,3] [4,4]"));
        assert_eq!(a.check_positivity(10), Positivity::ProvablyPositive(PositiveBy::QuiddityAtLeastTwo));
        let mut b = FriezeTable::new(qc("[3,3,4] [3] [3,3,4,4]"));
        assert_eq!(b.check_positivity(10), Positivity::ProvablyPositive(PositiveBy::RowsAndGrowth));
        let mut c = FriezeTable::new(qc("[3] [3,3] [3] [3,3]"));
        assert_eq!(c.check_positivity(10), Positivity::ProvablyPositive(PositiveBy::FiniteScan));
    }

    #[test]
    fn cut_examples() {
        let q = qc("[3,4] [3] [3,3] [3,4]");
        assert_eq!(cut(&q, 2, 3).unwrap(), qc("[4] [3] [3,4]"));
        let q = qc("[3,4,6] [6] [6] [6] [6] [4,6] [3,4]");
        assert_eq!(cut(&q, 2, 6).unwrap(), qc("[3,4] [4] [3,4]"));
        assert!(matches!(cut(&q, 3, 6), Err(FriezeError::NotConstantRun { .. })));
        let lacks = qc("[3,5] [5] [5] [5]");
        assert!(matches!(cut(&lacks, 2, 5), Err(FriezeError::FlankLacks { .. })));
        assert!(matches!(cut(&qc("[5] [5] [5]"), 1, 5), Err(FriezeError::CutTooShort { .. })));
    }

    #[test]
    fn cut_wraps() {
        let q = qc("[4] [3,4] [3,3] [3,4]");
        // ear {4} at position 1 with flanks A_4 and A_2
        assert_eq!(cut(&q, 1, 4), Err(FriezeError::NotConstantRun { start: 1, end: 2, p: 4 }));
        let q = qc("[4] [3,4] [3,3] [3,3,4] [4]");
        assert_eq!(cut(&q, 5, 4).unwrap(), qc("[3] [3,3] [3,3]"));
    }

    #[test]
    fn glue_examples() {
        assert_eq!(glue(&qc("[4,4] [4]"), 6, 1).unwrap(), qc("[4,4,6] [6] [6] [6] [6] [4,6]"));
        // the single vertex receives both flanks
        assert_eq!(glue(&qc("[3]"), 4, 1).unwrap(), qc("[3,4,4] [4] [4]"));
        let g = glue(&qc("[3,3,4] [3] [3,3,4,4]"), 3, 3).unwrap();
        assert_eq!(g, qc("[3,3,3,4] [3] [3,3,3,4,4] [3]"));
        assert_eq!(cut(&g, 4, 3).unwrap(), qc("[3,3,4] [3] [3,3,4,4]"));
    }

    #[test]
    fn screens() {
        assert_eq!(realizability_test(&qc("[3,3,3] [4,4,4]")), Err(TestFailure::EmptyIntersection { i: 1 }));
        assert_eq!(realizability_test(&qc("[3,3,3] [3,4,4]")), Ok(()));
        assert_eq!(realizability_test(&qc("[5] [5] [5] [5] [3,5]")), Err(TestFailure::LongRun { p: 5, i: 1 }));
        assert_eq!(realizability_test(&qc("[5] [5] [5]")), Ok(()));
        assert!(!is_skeletal(&qc("[3,3,4] [3] [3,3,4,4]")));
        assert!(is_skeletal(&qc("[4,4] [4]")));
        assert!(!is_skeletal(&qc("[3,4,6] [6] [6] [6] [3,6] [3] [3,4,6] [3,4]")));
        assert!(!is_skeletal(&qc("[5]")));
    }
}
