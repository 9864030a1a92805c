//! Dissected polygons, once-punctured discs and annuli.
//!
//! Everything geometric happens in the universal cover. Outer lifted vertices
//! are integers `g` (base label `((g-1) mod n) + 1`), inner lifted vertices
//! are integers `h`, and the puncture lifts to a single point at infinity.
//! Cutting the cover along one bridging arc gives a fundamental polygon `F`
//! whose faces are the base faces; lifted faces are `(face id, copy)`.

mod ops;
mod quotient;
mod svg;
mod text;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::frieze::{FriezeError, QuiddityCycle};

pub use ops::{dissection_power, glue_ear, rotate};
pub use quotient::{ClassId, QuotientDissection};
pub use svg::render_svg;
pub use text::{format_dissection, format_quotient, parse_dissection, parse_surface_file, SurfaceFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid surface: {0}")]
    BadSurface(String),
    #[error("arc {0} is invalid on this surface: {1}")]
    BadArc(String, String),
    #[error("arc {0} appears twice")]
    Duplicate(String),
    #[error("arcs {0} and {1} cross")]
    Crossing(String, String),
    #[error("dissection needs at least one bridging arc")]
    NoBridging,
    #[error("arcs do not form a fundamental domain")]
    NotFundamental,
    #[error("inner boundary requested on a surface without one")]
    NoInnerBoundary,
    #[error("quotient needs an annulus dissection")]
    QuotientNeedsAnnulus,
    #[error("no face with id {0}")]
    BadFace(usize),
    #[error("faces {0} and {1} have different sizes")]
    SizeMismatch(usize, usize),
    #[error("faces {0} and {1} share no outer vertex")]
    NoSharedVertex(usize, usize),
    #[error("outer vertex {2} is not shared by faces {0} and {1}")]
    NotShared(usize, usize, u32),
    #[error("faces {0} and {1} share an edge")]
    SharedEdge(usize, usize),
    #[error("face {0} has every vertex on the outer boundary")]
    NoInnerVertex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("powers are only defined for annuli and punctured discs")]
    PowerOfPolygon,
    #[error("position {0} out of range")]
    BadPosition(usize),
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surface {
    Polygon { n: u32 },
    Disc { n: u32 },
    Annulus { n: u32, m: u32 },
}

impl Surface {
    pub fn new_polygon(n: u32) -> Result<Self, SurfaceError> {
        if n < 3 {
            return Err(SurfaceError::BadSurface(format!("polygon needs n >= 3, got {}", n)));
        }
        Ok(Surface::Polygon { n })
    }

    pub fn new_disc(n: u32) -> Result<Self, SurfaceError> {
        if n < 1 {
            return Err(SurfaceError::BadSurface("disc needs n >= 1".into()));
        }
        Ok(Surface::Disc { n })
    }

    pub fn new_annulus(n: u32, m: u32) -> Result<Self, SurfaceError> {
        if n < 1 || m < 1 {
            return Err(SurfaceError::BadSurface(format!("annulus needs n, m >= 1, got {} {}", n, m)));
        }
        Ok(Surface::Annulus { n, m })
    }

    /// Number of outer marked points.
    pub fn n(&self) -> u32 {
        match *self {
            Surface::Polygon { n } | Surface::Disc { n } | Surface::Annulus { n, .. } => n,
        }
    }

    /// Number of inner marked points (0 unless annulus).
    pub fn m(&self) -> u32 {
        match *self {
            Surface::Annulus { m, .. } => m,
            _ => 0,
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self, Surface::Polygon { .. })
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Polygon { n } => write!(f, "polygon {}", n),
            Surface::Disc { n } => write!(f, "disc {}", n),
            Surface::Annulus { n, m } => write!(f, "annulus {} {}", n, m),
        }
    }
}

/// An arc in normalized form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arc {
    /// Bridging arc of an annulus, lifting to `(outer, shift*m + inner)`.
    Bridge { outer: u32, inner: u32, shift: u8 },
    /// Arc from an outer vertex to the puncture.
    BridgeDisc(u32),
    /// Counterclockwise peripheral arc on the outer boundary.
    Peri(u32, u32),
    /// Polygon diagonal, stored with `a < b`.
    Diag(u32, u32),
}

impl Arc {
    pub fn diag(a: u32, b: u32) -> Arc {
        Arc::Diag(a.min(b), a.max(b))
    }

    pub fn is_bridging(&self) -> bool {
        matches!(self, Arc::Bridge { .. } | Arc::BridgeDisc(_))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Bridge { outer, inner, shift } => write!(f, "bridge {} {} {}", outer, inner, shift),
            Arc::BridgeDisc(a) => write!(f, "bridge-disc {}", a),
            Arc::Peri(a, b) => write!(f, "peri {} {}", a, b),
            Arc::Diag(a, b) => write!(f, "diag {} {}", a, b),
        }
    }
}

/// A vertex of the universal cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Outer(i64),
    Inf,
    Inner(i64),
}

impl Point {
    /// Position along the boundary of the strip, read counterclockwise.
    fn key(&self) -> (u8, i64) {
        match *self {
            Point::Outer(g) => (0, g),
            Point::Inf => (1, 0),
            Point::Inner(h) => (2, -h),
        }
    }

    fn translate(&self, k: i64, n: i64, m: i64) -> Point {
        match *self {
            Point::Outer(g) => Point::Outer(g + k * n),
            Point::Inner(h) => Point::Inner(h + k * m),
            Point::Inf => Point::Inf,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Outer(g) => write!(f, "v{}", g),
            Point::Inner(h) => write!(f, "w{}", h),
            Point::Inf => write!(f, "inf"),
        }
    }
}

fn crosses(a: (Point, Point), b: (Point, Point)) -> bool {
    let s = |p: (Point, Point)| {
        let (x, y) = (p.0.key(), p.1.key());
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let (a0, a1) = s(a);
    let (b0, b1) = s(b);
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Boundary,
    Arc(usize),
}

/// A face of the base surface, listed counterclockwise in copy 0 of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub vertices: Vec<Point>,
    /// `sides[t]` joins `vertices[t]` and `vertices[t+1]`.
    pub sides: Vec<Side>,
}

impl Face {
    pub fn size(&self) -> u32 {
        self.vertices.len() as u32
    }

    pub fn has_inner_vertex(&self) -> bool {
        self.vertices.iter().any(|p| matches!(p, Point::Inner(_)))
    }

    pub fn arc_sides(&self) -> BTreeSet<usize> {
        self.sides
            .iter()
            .filter_map(|s| match s {
                Side::Arc(a) => Some(*a),
                Side::Boundary => None,
            })
            .collect()
    }

    /// Base labels of the outer vertices.
    pub fn outer_labels(&self, n: u32) -> BTreeSet<u32> {
        self.vertices
            .iter()
            .filter_map(|p| match p {
                Point::Outer(g) => Some(((g - 1).rem_euclid(n as i64) + 1) as u32),
                _ => None,
            })
            .collect()
    }
}

/// One face corner at a lifted vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub face: usize,
    pub copy: i64,
    pub size: u32,
}

/// A lifted face as seen in a cover window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedFace {
    pub face: usize,
    pub copy: i64,
    pub vertices: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWindow {
    pub k_lo: i64,
    pub k_hi: i64,
    pub faces: Vec<LiftedFace>,
}

impl CoverWindow {
    pub fn find(&self, face: usize, copy: i64) -> Option<&LiftedFace> {
        self.faces.iter().find(|f| f.face == face && f.copy == copy)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Dissection {
    surface: Surface,
    arcs: Vec<Arc>,
    /// outer lift of the cutting arc (annulus, disc)
    g0: i64,
    /// inner lift of the cutting arc (annulus)
    h0: i64,
    faces: Vec<Face>,
    /// per base outer vertex `r = g - g0 mod n`: corners as `(face, copy offset)`
    outer: Vec<Vec<(usize, i64)>>,
    inner: Vec<Vec<(usize, i64)>>,
}

impl fmt::Debug for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dissection({}; ", self.surface)?;
        for (k, a) in self.arcs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, ")")
    }
}

impl Dissection {
    pub fn new(surface: Surface, arcs: Vec<Arc>) -> Result<Self, SurfaceError> {
        build_dissection(surface, arcs)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> Option<&Face> {
        self.faces.get(id)
    }

    pub fn n(&self) -> u32 {
        self.surface.n()
    }

    pub fn m(&self) -> u32 {
        self.surface.m()
    }

    /// Face corners at the lifted outer vertex `g`, ordered counterclockwise
    /// around the vertex (starting next to the boundary edge towards `g+1`).
    ///
    /// On polygons indices wrap and every lift is copy 0.
    pub fn outer_corners(&self, g: i64) -> Vec<Corner> {
        let n = self.n() as i64;
        let o = g - self.g0;
        let (k, r) = if self.surface.is_polygon() { (0, o.rem_euclid(n)) } else { (o.div_euclid(n), o.rem_euclid(n)) };
        self.outer[r as usize]
            .iter()
            .map(|&(face, dk)| Corner { face, copy: k + dk, size: self.faces[face].size() })
            .collect()
    }

    pub fn inner_corners(&self, h: i64) -> Result<Vec<Corner>, SurfaceError> {
        let m = self.m() as i64;
        if m == 0 {
            return Err(SurfaceError::NoInnerBoundary);
        }
        let o = h - self.h0;
        let (k, r) = (o.div_euclid(m), o.rem_euclid(m));
        Ok(self.inner[r as usize]
            .iter()
            .map(|&(face, dk)| Corner { face, copy: k + dk, size: self.faces[face].size() })
            .collect())
    }

    /// Derived quiddity of one boundary: `A_i` lists the face sizes over all
    /// corners at the lift of vertex `i` in copy 0.
    pub fn quiddity_outer(&self) -> Result<QuiddityCycle, SurfaceError> {
        let sets = (1..=self.n() as i64)
            .map(|g| self.outer_corners(g).iter().map(|c| c.size).collect())
            .collect();
        Ok(QuiddityCycle::new(sets)?)
    }

    pub fn quiddity_inner(&self) -> Result<QuiddityCycle, SurfaceError> {
        let mut sets = Vec::new();
        for h in 1..=self.m() as i64 {
            sets.push(self.inner_corners(h)?.iter().map(|c| c.size).collect());
        }
        if sets.is_empty() {
            return Err(SurfaceError::NoInnerBoundary);
        }
        Ok(QuiddityCycle::new(sets)?)
    }

    pub fn quiddity_of(&self, inner: bool) -> Result<QuiddityCycle, SurfaceError> {
        if inner {
            self.quiddity_inner()
        } else {
            self.quiddity_outer()
        }
    }

    /// Vertices of the lifted face `(face, copy)`.
    pub fn lift_face(&self, face: usize, copy: i64) -> Vec<Point> {
        let (n, m) = (self.n() as i64, self.m() as i64);
        let k = if self.surface.is_polygon() { 0 } else { copy };
        self.faces[face].vertices.iter().map(|p| p.translate(k, n, m)).collect()
    }

    pub fn cover_window(&self, k_lo: i64, k_hi: i64) -> CoverWindow {
        let (lo, hi) = if self.surface.is_polygon() { (0, 0) } else { (k_lo, k_hi.max(k_lo)) };
        let mut faces = Vec::new();
        for copy in lo..=hi {
            for f in &self.faces {
                faces.push(LiftedFace { face: f.id, copy, vertices: self.lift_face(f.id, copy) });
            }
        }
        CoverWindow { k_lo: lo, k_hi: hi, faces }
    }

    /// Lift of an arc into copy `k`.
    pub fn arc_lift(&self, arc: &Arc, k: i64) -> (Point, Point) {
        lift(self.surface, arc, k)
    }
}

fn lift(surface: Surface, arc: &Arc, k: i64) -> (Point, Point) {
    let n = surface.n() as i64;
    let m = surface.m() as i64;
    match *arc {
        Arc::Bridge { outer, inner, shift } => (
            Point::Outer(outer as i64 + k * n),
            Point::Inner(inner as i64 + shift as i64 * m + k * m),
        ),
        Arc::BridgeDisc(a) => (Point::Outer(a as i64 + k * n), Point::Inf),
        Arc::Peri(a, b) => {
            let s = peri_span(a, b, n);
            let g = a as i64 + k * n;
            (Point::Outer(g), Point::Outer(g + s))
        }
        Arc::Diag(a, b) => (Point::Outer(a as i64), Point::Outer(b as i64)),
    }
}

fn peri_span(a: u32, b: u32, n: i64) -> i64 {
    (b as i64 - a as i64 - 1).rem_euclid(n) + 1
}

fn check_arc(surface: Surface, arc: &Arc) -> Result<(), SurfaceError> {
    let n = surface.n();
    let bad = |why: &str| Err(SurfaceError::BadArc(arc.to_string(), why.to_string()));
    let inr = |a: u32| (1..=n).contains(&a);
    match (*arc, surface) {
        (Arc::Diag(a, b), Surface::Polygon { .. }) => {
            if !inr(a) || !inr(b) {
                return bad("vertex out of range");
            }
            if a == b || b - a == 1 || (a == 1 && b == n) {
                return bad("diagonal joins adjacent vertices");
            }
        }
        (Arc::Peri(a, b), Surface::Disc { .. } | Surface::Annulus { .. }) => {
            if !inr(a) || !inr(b) {
                return bad("vertex out of range");
            }
            if peri_span(a, b, n as i64) < 2 {
                return bad("peripheral arc is a boundary segment");
            }
        }
        (Arc::BridgeDisc(a), Surface::Disc { .. }) => {
            if !inr(a) {
                return bad("vertex out of range");
            }
        }
        (Arc::Bridge { outer, inner, shift }, Surface::Annulus { m, .. }) => {
            if !inr(outer) || !(1..=m).contains(&inner) || shift > 1 {
                return bad("endpoint out of range");
            }
        }
        _ => return bad("arc kind does not fit the surface"),
    }
    Ok(())
}

/// Validate arcs and extract faces.
pub fn build_dissection(surface: Surface, arcs: Vec<Arc>) -> Result<Dissection, SurfaceError> {
    match surface {
        Surface::Polygon { n } if n < 3 => return Err(SurfaceError::BadSurface("polygon needs n >= 3".into())),
        Surface::Annulus { n, m } if n < 1 || m < 1 => {
            return Err(SurfaceError::BadSurface("annulus needs n, m >= 1".into()))
        }
        Surface::Disc { n } if n < 1 => return Err(SurfaceError::BadSurface("disc needs n >= 1".into())),
        _ => {}
    }
    let mut arcs: Vec<Arc> = arcs
        .into_iter()
        .map(|a| match a {
            Arc::Diag(x, y) => Arc::diag(x, y),
            other => other,
        })
        .collect();
    for a in &arcs {
        check_arc(surface, a)?;
    }
    arcs.sort();
    for w in arcs.windows(2) {
        if w[0] == w[1] {
            return Err(SurfaceError::Duplicate(w[0].to_string()));
        }
    }
    let periodic = !surface.is_polygon();
    for x in 0..arcs.len() {
        for y in x..arcs.len() {
            let lx = lift(surface, &arcs[x], 0);
            let ks: Vec<i64> = if periodic { (-2..=2).collect() } else { vec![0] };
            for k in ks {
                if x == y && k == 0 {
                    continue;
                }
                if crosses(lx, lift(surface, &arcs[y], k)) {
                    return Err(SurfaceError::Crossing(arcs[x].to_string(), arcs[y].to_string()));
                }
            }
        }
    }

    let n = surface.n() as i64;
    let m = surface.m() as i64;
    // labels of the fundamental polygon, counterclockwise
    let (labels, cut, g0, h0): (Vec<Point>, Option<usize>, i64, i64) = match surface {
        Surface::Polygon { .. } => ((1..=n).map(Point::Outer).collect(), None, 1, 0),
        _ => {
            let e = arcs.iter().position(|a| a.is_bridging()).ok_or(SurfaceError::NoBridging)?;
            match lift(surface, &arcs[e], 0) {
                (Point::Outer(g0), Point::Inf) => {
                    let mut l: Vec<Point> = (0..=n).map(|t| Point::Outer(g0 + t)).collect();
                    l.push(Point::Inf);
                    (l, Some(e), g0, 0)
                }
                (Point::Outer(g0), Point::Inner(h0)) => {
                    let mut l: Vec<Point> = (0..=n).map(|t| Point::Outer(g0 + t)).collect();
                    l.extend((0..=m).map(|t| Point::Inner(h0 + m - t)));
                    (l, Some(e), g0, h0)
                }
                _ => unreachable!("bridging arcs start on the outer boundary"),
            }
        }
    };
    let big_n = labels.len();
    let pos = |p: Point| labels.iter().position(|&q| q == p);

    // chords of F with their arc index
    let mut chords: Vec<(usize, usize, usize)> = Vec::new();
    let ks: Vec<i64> = if periodic { (-3..=3).collect() } else { vec![0] };
    for (idx, a) in arcs.iter().enumerate() {
        for &k in &ks {
            let (p, q) = lift(surface, a, k);
            if let (Some(x), Some(y)) = (pos(p), pos(q)) {
                let (x, y) = (x.min(y), x.max(y));
                let is_cut_edge = Some(idx) == cut && (y - x == 1 || (x == 0 && y == big_n - 1));
                if !is_cut_edge {
                    chords.push((x, y, idx));
                }
            }
        }
    }
    let expected = arcs.len() - usize::from(cut.is_some());
    if chords.len() != expected {
        return Err(SurfaceError::NotFundamental);
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); big_n];
    let mut side_of = std::collections::HashMap::new();
    for p in 0..big_n {
        let q = (p + 1) % big_n;
        adj[p].push(q);
        adj[q].push(p);
        let side = match surface {
            Surface::Polygon { .. } => Side::Boundary,
            _ if p < n as usize => Side::Boundary,
            Surface::Annulus { .. } if p > n as usize && p + 1 < big_n => Side::Boundary,
            _ => Side::Arc(cut.unwrap()),
        };
        side_of.insert((p.min(q), p.max(q)), side);
    }
    for &(x, y, idx) in &chords {
        adj[x].push(y);
        adj[y].push(x);
        side_of.insert((x, y), Side::Arc(idx));
    }

    let off = |a: usize, v: usize| (a + big_n - v) % big_n;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut starts: Vec<(usize, usize)> = (0..big_n).map(|p| (p, (p + 1) % big_n)).collect();
    for &(x, y, _) in &chords {
        starts.push((x, y));
        starts.push((y, x));
    }
    let mut raw_faces: Vec<Vec<usize>> = Vec::new();
    for (u0, v0) in starts {
        if seen.contains(&(u0, v0)) {
            continue;
        }
        let mut cyc = vec![u0];
        let (mut u, mut v) = (u0, v0);
        loop {
            seen.insert((u, v));
            if v == u0 {
                break;
            }
            cyc.push(v);
            let limit = off(u, v);
            let w = *adj[v]
                .iter()
                .filter(|&&w| off(w, v) < limit && w != v)
                .max_by_key(|&&w| off(w, v))
                .expect("face walk always has a successor");
            u = v;
            v = w;
            if cyc.len() > big_n {
                return Err(SurfaceError::NotFundamental);
            }
        }
        if cyc.len() < 3 {
            return Err(SurfaceError::NotFundamental);
        }
        let start = (0..cyc.len()).min_by_key(|&t| cyc[t]).unwrap();
        cyc.rotate_left(start);
        raw_faces.push(cyc);
    }
    let min_edge = |c: &Vec<usize>| -> (usize, usize) {
        (0..c.len())
            .map(|t| {
                let (a, b) = (c[t], c[(t + 1) % c.len()]);
                (a.min(b), a.max(b))
            })
            .min()
            .unwrap()
    };
    raw_faces.sort_by_key(min_edge);

    let faces: Vec<Face> = raw_faces
        .iter()
        .enumerate()
        .map(|(id, c)| Face {
            id,
            vertices: c.iter().map(|&p| labels[p]).collect(),
            sides: (0..c.len())
                .map(|t| {
                    let (a, b) = (c[t], c[(t + 1) % c.len()]);
                    side_of[&(a.min(b), a.max(b))]
                })
                .collect(),
        })
        .collect();

    // corners at each F position, counterclockwise around the vertex
    let mut at_pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); big_n];
    for (id, c) in raw_faces.iter().enumerate() {
        for t in 0..c.len() {
            let succ = c[(t + 1) % c.len()];
            at_pos[c[t]].push((off(succ, c[t]), id));
        }
    }
    for v in at_pos.iter_mut() {
        v.sort();
    }
    let ids = |p: usize, dk: i64| at_pos[p].iter().map(move |&(_, id)| (id, dk));

    let nu = n as usize;
    let mut outer = Vec::with_capacity(nu);
    let mut inner = Vec::new();
    match surface {
        Surface::Polygon { .. } => {
            for r in 0..nu {
                outer.push(ids(r, 0).collect());
            }
        }
        _ => {
            for r in 0..nu {
                let mut v: Vec<(usize, i64)> = ids(r, 0).collect();
                if r == 0 {
                    v.extend(ids(nu, -1));
                }
                outer.push(v);
            }
            if let Surface::Annulus { .. } = surface {
                let mu = m as usize;
                for r in 0..mu {
                    // inner h0 + r sits at position n + 1 + m - r
                    let mut v: Vec<(usize, i64)> = ids(nu + 1 + mu - r, 0).collect();
                    if r == 0 {
                        v.extend(ids(nu + 1, -1));
                    }
                    inner.push(v);
                }
            }
        }
    }

    Ok(Dissection { surface, arcs, g0, h0, faces, outer, inner })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ann(n: u32, m: u32, arcs: &[Arc]) -> Dissection {
        build_dissection(Surface::new_annulus(n, m).unwrap(), arcs.to_vec()).unwrap()
    }

    fn br(a: u32, b: u32, s: u8) -> Arc {
        Arc::Bridge { outer: a, inner: b, shift: s }
    }

    fn sets(q: &QuiddityCycle) -> Vec<Vec<u32>> {
        q.sets().to_vec()
    }

    #[test]
    fn example_annulus_quiddity() {
        let d = ann(3, 3, &[br(1, 2, 0), br(3, 3, 0), br(3, 2, 1), Arc::Peri(1, 3)]);
        let mut sizes: Vec<u32> = d.faces().iter().map(|f| f.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 3, 4, 4]);
        assert_eq!(sets(&d.quiddity_outer().unwrap()), vec![vec![3, 3, 4], vec![3], vec![3, 3, 4, 4]]);
    }

    #[test]
    fn triangulated_annulus_quiddity() {
        let d = ann(3, 2, &[Arc::Peri(3, 2), br(2, 2, 0), br(2, 1, 1), br(3, 1, 1), br(3, 2, 1)]);
        let q = d.quiddity_outer().unwrap();
        let vals: Vec<i64> = q.entries().iter().map(|x| x.as_integer().unwrap().try_into().unwrap()).collect();
        assert_eq!(vals, vec![1, 4, 4]);
        assert!(d.faces().iter().all(|f| f.size() == 3));
        assert_eq!(d.faces().len(), 5);
    }

    #[test]
    fn disc_faces() {
        let d = build_dissection(Surface::Disc { n: 3 }, vec![Arc::BridgeDisc(1), Arc::BridgeDisc(3)]).unwrap();
        let mut sizes: Vec<u32> = d.faces().iter().map(|f| f.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 4]);
    }

    #[test]
    fn self_folded_disc_corner_counts_twice() {
        let d = build_dissection(Surface::Disc { n: 2 }, vec![Arc::BridgeDisc(1), Arc::Peri(1, 1)]).unwrap();
        // the loop triangle and the self-folded triangle each meet v1 twice
        assert_eq!(sets(&d.quiddity_outer().unwrap()), vec![vec![3, 3, 3, 3], vec![3]]);
    }

    #[test]
    fn rejects_bad_input() {
        let a = Surface::new_annulus(2, 2).unwrap();
        assert_eq!(build_dissection(a, vec![Arc::Peri(1, 1)]), Err(SurfaceError::NoBridging));
        assert!(matches!(build_dissection(a, vec![br(1, 2, 0), br(2, 1, 0)]), Err(SurfaceError::Crossing(..))));
        assert!(matches!(build_dissection(a, vec![br(1, 2, 0), br(1, 2, 0)]), Err(SurfaceError::Duplicate(_))));
        assert!(matches!(build_dissection(a, vec![br(1, 1, 0), Arc::Peri(1, 2)]), Err(SurfaceError::BadArc(..))));
        let p = Surface::new_polygon(6).unwrap();
        assert!(matches!(build_dissection(p, vec![Arc::diag(1, 4), Arc::diag(2, 5)]), Err(SurfaceError::Crossing(..))));
        assert!(matches!(build_dissection(p, vec![Arc::diag(6, 1)]), Err(SurfaceError::BadArc(..))));
    }

    #[test]
    fn polygon_faces_and_quiddity() {
        let p = Surface::new_polygon(6).unwrap();
        let d = build_dissection(p, vec![Arc::diag(1, 3), Arc::diag(1, 5)]).unwrap();
        assert_eq!(sets(&d.quiddity_outer().unwrap()), vec![vec![3, 3, 4], vec![3], vec![3, 4], vec![4], vec![3, 4], vec![3]]);
        let empty = build_dissection(p, vec![]).unwrap();
        assert_eq!(empty.faces().len(), 1);
        assert_eq!(empty.cover_window(-1, 1).faces.len(), 1);
    }

    #[test]
    fn corners_are_translation_invariant() {
        let d = ann(3, 3, &[br(1, 2, 0), br(3, 3, 0), br(3, 2, 1), Arc::Peri(1, 3)]);
        for g in 1..=3 {
            let a = d.outer_corners(g);
            let b = d.outer_corners(g + 6);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!((x.face, x.copy + 2), (y.face, y.copy));
            }
        }
    }

    #[test]
    fn window_lists_copies() {
        let d = ann(3, 3, &[br(1, 2, 0), br(3, 3, 0), br(3, 2, 1), Arc::Peri(1, 3)]);
        let w = d.cover_window(0, 1);
        assert_eq!(w.faces.len(), 8);
        let f = &w.find(0, 1).unwrap().vertices;
        let base = &d.faces()[0].vertices;
        for (p, q) in base.iter().zip(f) {
            assert_eq!(p.translate(1, 3, 3), *q);
        }
    }
}
