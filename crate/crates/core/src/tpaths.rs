//! T-paths in dissected polygons.
//!
//! Even steps run along arcs of the dissection that cross the target
//! diagonal, in the order the diagonal meets them; odd steps join two
//! vertices of a common face.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::matchings::{self, MatchingError, Source, WeighMode};
use crate::ring::{self, Ctx, RingElem};
use crate::surface::{Arc, Dissection, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TPathError {
    #[error("T-paths are only defined on dissected polygons")]
    NotPolygon,
    #[error("endpoints must be distinct")]
    SameVertex,
    #[error("vertex {0} is not on the polygon")]
    BadVertex(u32),
    #[error("step {0} does not lie in a single face")]
    NotInFace(Step),
    #[error("bijection check failed: {0}")]
    Phi(String),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub from: u32,
    pub to: u32,
}

impl Step {
    fn unoriented(&self) -> (u32, u32) {
        (self.from.min(self.to), self.from.max(self.to))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPath {
    pub from: u32,
    pub to: u32,
    pub steps: Vec<Step>,
}

impl fmt::Display for TPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.steps {
            if first {
                write!(f, "{}", s.from)?;
                first = false;
            }
            write!(f, " {}", s.to)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TPathKind {
    Weak,
    Complete,
}

/// Polygon data in vertex labels.
struct Poly {
    n: u32,
    faces: Vec<Vec<u32>>,
    arcs: Vec<(u32, u32)>,
    ctx: Ctx,
}

impl Poly {
    fn new(d: &Dissection) -> Result<Self, TPathError> {
        if !d.surface().is_polygon() {
            return Err(TPathError::NotPolygon);
        }
        let n = d.n();
        let label = |p: &Point| match *p {
            Point::Outer(g) => ((g - 1).rem_euclid(n as i64) + 1) as u32,
            _ => unreachable!("polygon faces only have outer vertices"),
        };
        let faces: Vec<Vec<u32>> = d.faces().iter().map(|f| f.vertices.iter().map(label).collect()).collect();
        let arcs = d
            .arcs()
            .iter()
            .map(|a| match *a {
                Arc::Diag(x, y) => (x.min(y), x.max(y)),
                _ => unreachable!("polygon arcs are diagonals"),
            })
            .collect();
        let mut sizes: Vec<u32> = faces.iter().map(|f| f.len() as u32).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let ctx = ring::RingContext::new(&sizes).expect("face sizes are at least 3");
        Ok(Poly { n, faces, arcs, ctx })
    }

    fn check(&self, v: u32) -> Result<(), TPathError> {
        if v == 0 || v > self.n {
            return Err(TPathError::BadVertex(v));
        }
        Ok(())
    }

    /// `x` strictly inside the ccw interval from `a` to `b`.
    fn between(&self, a: u32, x: u32, b: u32) -> bool {
        let n = self.n as i64;
        let dx = (x as i64 - a as i64).rem_euclid(n);
        let db = (b as i64 - a as i64).rem_euclid(n);
        dx > 0 && dx < db
    }

    fn crosses(&self, (a, b): (u32, u32), i: u32, j: u32) -> bool {
        if a == i || a == j || b == i || b == j {
            return false;
        }
        self.between(i, a, j) != self.between(i, b, j)
    }

    /// Vertices on the closed side of chord `(a, b)` containing `x`.
    fn side(&self, (a, b): (u32, u32), x: u32) -> Vec<u32> {
        let (s, e) = if self.between(a, x, b) { (a, b) } else { (b, a) };
        let mut out = vec![s];
        let mut v = s;
        while v != e {
            v = v % self.n + 1;
            out.push(v);
        }
        out
    }

    /// Arcs crossed by the diagonal `(i, j)`, ordered from `i`.
    fn crossed(&self, i: u32, j: u32) -> Vec<(u32, u32)> {
        let mut c: Vec<(usize, (u32, u32))> =
            self.arcs.iter().filter(|&&a| self.crosses(a, i, j)).map(|&a| (self.side(a, i).len(), a)).collect();
        c.sort_unstable();
        c.into_iter().map(|(_, a)| a).collect()
    }

    fn common_face(&self, u: u32, w: u32) -> Option<usize> {
        self.faces.iter().position(|f| f.contains(&u) && f.contains(&w))
    }

    fn step_weight(&self, s: Step) -> Result<RingElem, TPathError> {
        let f = self.common_face(s.from, s.to).ok_or(TPathError::NotInFace(s))?;
        let face = &self.faces[f];
        let p = face.len() as u32;
        let k = self.left_count(f, s);
        Ok(ring::chebyshev_u(&ring::lambda(&self.ctx, p).expect("size in ring"), k as i64))
    }

    /// Vertices of face `f` strictly ccw between the ends of `s`.
    fn left_count(&self, f: usize, s: Step) -> usize {
        self.faces[f].iter().filter(|&&x| self.between(s.from, x, s.to)).count()
    }

    /// Faces met by the diagonal `(i, j)` in order, given its crossed arcs.
    fn crossed_faces(&self, i: u32, j: u32, tau: &[(u32, u32)]) -> Vec<usize> {
        let has_edge = |f: &Vec<u32>, (a, b): (u32, u32)| {
            let k = f.len();
            (0..k).any(|t| {
                let (x, y) = (f[t], f[(t + 1) % k]);
                (x, y) == (a, b) || (y, x) == (a, b)
            })
        };
        if tau.is_empty() {
            let f = (0..self.faces.len())
                .find(|&f| {
                    let face = &self.faces[f];
                    face.contains(&i) && face.contains(&j) && (j == i % self.n + 1 || face.iter().any(|&x| self.between(i, x, j)))
                })
                .expect("endpoints share a face");
            return vec![f];
        }
        let mut out = Vec::new();
        let within = |f: usize, a: (u32, u32), x: u32| {
            let side = self.side(a, x);
            self.faces[f].iter().all(|v| side.contains(v))
        };
        let q0 = (0..self.faces.len()).find(|&f| has_edge(&self.faces[f], tau[0]) && within(f, tau[0], i)).unwrap();
        out.push(q0);
        for &t in tau {
            out.push((0..self.faces.len()).find(|&f| has_edge(&self.faces[f], t) && within(f, t, j)).unwrap());
        }
        out
    }
}

pub fn enumerate_tpaths(d: &Dissection, i: u32, j: u32, kind: TPathKind) -> Result<Vec<TPath>, TPathError> {
    let poly = Poly::new(d)?;
    poly.check(i)?;
    poly.check(j)?;
    if i == j {
        return Err(TPathError::SameVertex);
    }
    let tau = poly.crossed(i, j);
    let mut out = Vec::new();
    let mut steps = Vec::new();
    match kind {
        TPathKind::Weak => weak(&poly, i, j, &tau, 0, &mut steps, &mut out),
        TPathKind::Complete => complete(&poly, i, j, &tau, &mut steps, &mut out),
    }
    out.sort();
    Ok(out)
}

fn neighbours(poly: &Poly, u: u32) -> BTreeSet<u32> {
    poly.faces.iter().filter(|f| f.contains(&u)).flat_map(|f| f.iter().copied()).filter(|&w| w != u).collect()
}

fn weak(poly: &Poly, i: u32, j: u32, tau: &[(u32, u32)], next_tau: usize, steps: &mut Vec<Step>, out: &mut Vec<TPath>) {
    let cur = steps.last().map_or(i, |s| s.to);
    let used = |steps: &[Step], s: Step| steps.iter().any(|t| t.unoriented() == s.unoriented());
    for w in neighbours(poly, cur) {
        let odd = Step { from: cur, to: w };
        if used(steps, odd) {
            continue;
        }
        steps.push(odd);
        if w == j {
            out.push(TPath { from: i, to: j, steps: steps.clone() });
        } else {
            for (k, &(a, b)) in tau.iter().enumerate().skip(next_tau) {
                let even = if a == w {
                    Step { from: a, to: b }
                } else if b == w {
                    Step { from: b, to: a }
                } else {
                    continue;
                };
                if used(steps, even) {
                    continue;
                }
                steps.push(even);
                weak(poly, i, j, tau, k + 1, steps, out);
                steps.pop();
            }
        }
        steps.pop();
    }
}

fn complete(poly: &Poly, i: u32, j: u32, tau: &[(u32, u32)], steps: &mut Vec<Step>, out: &mut Vec<TPath>) {
    let l = steps.len() / 2;
    let cur = steps.last().map_or(i, |s| s.to);
    let targets: Vec<u32> = match tau.get(l) {
        Some(&(a, b)) => vec![a, b],
        None => vec![j],
    };
    for t in targets {
        if t == cur || poly.common_face(cur, t).is_none() {
            continue;
        }
        steps.push(Step { from: cur, to: t });
        if l == tau.len() {
            out.push(TPath { from: i, to: j, steps: steps.clone() });
        } else {
            let (a, b) = tau[l];
            let other = if t == a { b } else { a };
            steps.push(Step { from: t, to: other });
            complete(poly, i, j, tau, steps, out);
            steps.pop();
        }
        steps.pop();
    }
}

/// Odd steps multiply; even steps divide, and are arcs of weight one.
pub fn tpath_weight(d: &Dissection, path: &TPath) -> Result<RingElem, TPathError> {
    let poly = Poly::new(d)?;
    let mut acc = ring::one(&poly.ctx);
    for (k, s) in path.steps.iter().enumerate() {
        let w = poly.step_weight(*s)?;
        if k % 2 == 0 {
            acc = &acc * &w;
        } else if !w.is_one() {
            return Err(TPathError::Phi(format!("even step {} has weight {}", s, w)));
        }
    }
    Ok(acc)
}

/// Cancel immediate backtracks along the same edge.
pub fn reduce(path: &TPath) -> TPath {
    let mut out: Vec<Step> = Vec::new();
    for &s in &path.steps {
        match out.last() {
            Some(t) if t.from == s.to && t.to == s.from => {
                out.pop();
            }
            _ => out.push(s),
        }
    }
    TPath { from: path.from, to: path.to, steps: out }
}

/// One pair per matching of nonzero traditional weight: the matching and
/// its T-path. Errors if the correspondence fails to be a weight-preserving
/// bijection.
pub fn phi_bijection(d: &Dissection, i: u32, j: u32) -> Result<Vec<(matchings::Matching, TPath)>, TPathError> {
    let poly = Poly::new(d)?;
    poly.check(i)?;
    poly.check(j)?;
    if i == j {
        return Err(TPathError::SameVertex);
    }
    let src = Source::Plain(d);
    let jj = if j > i { j } else { j + poly.n };
    let tau = poly.crossed(i, j);
    let qs = poly.crossed_faces(i, j, &tau);

    let mut by_counts: BTreeMap<Vec<usize>, TPath> = BTreeMap::new();
    for c in enumerate_tpaths(d, i, j, TPathKind::Complete)? {
        let counts: Vec<usize> = qs.iter().enumerate().map(|(l, &f)| poly.left_count(f, c.steps[2 * l])).collect();
        if by_counts.insert(counts.clone(), c).is_some() {
            return Err(TPathError::Phi(format!("two complete T-paths with left counts {:?}", counts)));
        }
    }
    let n_complete = by_counts.len();

    let mut out = Vec::new();
    for m in matchings::enumerate_matchings(src, i as i64, jj as i64, matchings::DEFAULT_BUDGET)? {
        let wt = matchings::weigh_matching(src, &m, WeighMode::Traditional)?;
        if wt.is_zero() {
            continue;
        }
        let counts: Vec<usize> = qs.iter().map(|&f| m.choice.iter().filter(|c| c.face == f).count()).collect();
        let c = by_counts
            .get(&counts)
            .ok_or_else(|| TPathError::Phi(format!("no complete T-path with left counts {:?}", counts)))?;
        let weak = reduce(c);
        let tw = tpath_weight(d, &weak)?;
        if tw != wt {
            return Err(TPathError::Phi(format!("weight {} of {} differs from matching weight {}", tw, weak, wt)));
        }
        out.push((m, weak));
    }
    if out.len() != n_complete {
        return Err(TPathError::Phi(format!("{} matchings but {} complete T-paths", out.len(), n_complete)));
    }
    let image: BTreeSet<&TPath> = out.iter().map(|(_, t)| t).collect();
    if image.len() != out.len() {
        return Err(TPathError::Phi("two matchings share a T-path".into()));
    }
    let weak: BTreeSet<TPath> = enumerate_tpaths(d, i, j, TPathKind::Weak)?.into_iter().collect();
    if image.len() != weak.len() || image.iter().any(|t| !weak.contains(*t)) {
        return Err(TPathError::Phi(format!("image has {} paths, {} weak T-paths exist", image.len(), weak.len())));
    }
    Ok(out)
}
