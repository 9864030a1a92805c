//! Quotient dissections: annulus dissections with identified subgons.
//!
//! Identifying base faces `P` and `Q` glues, at every lifted outer vertex
//! they share, the lift of `P` to the lift of `Q` found there. Each glue is an
//! edge of a voltage graph on base faces (the voltage is the copy offset), so
//! a class is a connected component together with a residue modulo the gcd
//! of its cycle voltages.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;

use super::{glue_ear, rotate, Corner, Dissection, Surface, SurfaceError};
use crate::frieze::QuiddityCycle;

/// Identification class of a lifted face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub root: usize,
    pub residue: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDissection {
    base: Dissection,
    pairs: Vec<(usize, usize, u32)>,
    root: Vec<usize>,
    phi: Vec<i64>,
    /// gcd of cycle voltages, indexed by root
    modulus: Vec<i64>,
}

impl QuotientDissection {
    /// Identify faces pairwise; the optional third entry names a shared outer
    /// vertex and defaults to the smallest one.
    pub fn new(base: Dissection, pairs: &[(usize, usize, Option<u32>)]) -> Result<Self, SurfaceError> {
        if !matches!(base.surface(), Surface::Annulus { .. }) {
            return Err(SurfaceError::QuotientNeedsAnnulus);
        }
        let n = base.n();
        let nf = base.faces().len();
        let mut checked = Vec::new();
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        for &(a, b, v) in pairs {
            let fa = base.face(a).ok_or(SurfaceError::BadFace(a))?;
            let fb = base.face(b).ok_or(SurfaceError::BadFace(b))?;
            if fa.size() != fb.size() {
                return Err(SurfaceError::SizeMismatch(a, b));
            }
            for f in [fa, fb] {
                if !f.has_inner_vertex() {
                    return Err(SurfaceError::NoInnerVertex(f.id));
                }
            }
            if a != b && !fa.arc_sides().is_disjoint(&fb.arc_sides()) {
                return Err(SurfaceError::SharedEdge(a, b));
            }
            let shared: BTreeSet<u32> = fa.outer_labels(n).intersection(&fb.outer_labels(n)).copied().collect();
            let v = match v {
                Some(v) if shared.contains(&v) => v,
                Some(v) => return Err(SurfaceError::NotShared(a, b, v)),
                None => *shared.iter().next().ok_or(SurfaceError::NoSharedVertex(a, b))?,
            };
            for &s in &shared {
                let cs = base.outer_corners(s as i64);
                for (x, c1) in cs.iter().enumerate() {
                    for (y, c2) in cs.iter().enumerate() {
                        if x != y && c1.face == a && c2.face == b {
                            edges.push((a, b, c2.copy - c1.copy));
                        }
                    }
                }
            }
            checked.push((a, b, v));
        }

        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nf];
        for &(a, b, v) in &edges {
            adj[a].push((b, v));
            adj[b].push((a, -v));
        }
        let mut root = vec![usize::MAX; nf];
        let mut phi = vec![0i64; nf];
        let mut modulus = vec![0i64; nf];
        for s in 0..nf {
            if root[s] != usize::MAX {
                continue;
            }
            root[s] = s;
            let mut d = 0i64;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, v) in &adj[u] {
                    // lift (u, k) ~ (w, k + v)
                    let want = phi[u] - v;
                    if root[w] == usize::MAX {
                        root[w] = s;
                        phi[w] = want;
                        queue.push_back(w);
                    } else {
                        d = d.gcd(&(phi[w] - want));
                    }
                }
            }
            modulus[s] = d;
        }
        Ok(QuotientDissection { base, pairs: checked, root, phi, modulus })
    }

    pub fn base(&self) -> &Dissection {
        &self.base
    }

    /// Merged pairs in the order applied, each with its shared vertex.
    pub fn pairs(&self) -> &[(usize, usize, u32)] {
        &self.pairs
    }

    pub fn class_of(&self, face: usize, copy: i64) -> ClassId {
        let root = self.root[face];
        let v = copy + self.phi[face];
        let d = self.modulus[root];
        ClassId { root, residue: if d == 0 { v } else { v.rem_euclid(d) } }
    }

    /// Base faces grouped by class (ignoring copies).
    pub fn face_classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for r in 0..self.root.len() {
            if self.root[r] == r {
                out.push((0..self.root.len()).filter(|&f| self.root[f] == r).collect());
            }
        }
        out
    }

    fn dedup(&self, cs: Vec<Corner>) -> Vec<Corner> {
        let mut seen = BTreeSet::new();
        cs.into_iter().filter(|c| seen.insert(self.class_of(c.face, c.copy))).collect()
    }

    /// Corners at a lifted outer vertex, one per identification class.
    pub fn outer_corners(&self, g: i64) -> Vec<Corner> {
        self.dedup(self.base.outer_corners(g))
    }

    pub fn inner_corners(&self, h: i64) -> Result<Vec<Corner>, SurfaceError> {
        Ok(self.dedup(self.base.inner_corners(h)?))
    }

    pub fn quiddity_outer(&self) -> Result<QuiddityCycle, SurfaceError> {
        let sets = (1..=self.base.n() as i64)
            .map(|g| self.outer_corners(g).iter().map(|c| c.size).collect())
            .collect();
        Ok(QuiddityCycle::new(sets)?)
    }

    pub fn quiddity_inner(&self) -> Result<QuiddityCycle, SurfaceError> {
        let mut sets = Vec::new();
        for h in 1..=self.base.m() as i64 {
            sets.push(self.inner_corners(h)?.iter().map(|c| c.size).collect());
        }
        Ok(QuiddityCycle::new(sets)?)
    }

    /// Carry the identifications over to a relabeled or enlarged base.
    ///
    /// Faces are tracked by corner: `(vertex, ordinal)` among the corners at
    /// that vertex, skipping any corner of the face `skip` in the new base.
    fn transport(
        &self,
        new: Dissection,
        vmap: impl Fn(u32) -> u32,
        skip: Option<usize>,
    ) -> Result<QuotientDissection, SurfaceError> {
        let locate = |face: usize, v: u32| -> Result<usize, SurfaceError> {
            let ord = self
                .base
                .outer_corners(v as i64)
                .iter()
                .position(|c| c.face == face)
                .ok_or(SurfaceError::BadFace(face))?;
            let kept: Vec<Corner> =
                new.outer_corners(vmap(v) as i64).into_iter().filter(|c| Some(c.face) != skip).collect();
            kept.get(ord).map(|c| c.face).ok_or(SurfaceError::BadFace(face))
        };
        let mut pairs = Vec::new();
        for &(a, b, v) in &self.pairs {
            pairs.push((locate(a, v)?, locate(b, v)?, Some(vmap(v))));
        }
        QuotientDissection::new(new, &pairs)
    }

    pub fn glue_ear(&self, p: u32, i: u32) -> Result<QuotientDissection, SurfaceError> {
        let new = glue_ear(&self.base, p, i)?;
        let ear = new.outer_corners(i as i64 + 1)[0].face;
        let add = p - 2;
        self.transport(new, |v| if v > i { v + add } else { v }, Some(ear))
    }

    pub fn rotate(&self, r: i64) -> Result<QuotientDissection, SurfaceError> {
        let new = rotate(&self.base, r)?;
        let n = self.base.n() as i64;
        self.transport(new, |v| ((v as i64 - 1 + r).rem_euclid(n) + 1) as u32, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_dissection, Arc};

    fn br(a: u32, b: u32, s: u8) -> Arc {
        Arc::Bridge { outer: a, inner: b, shift: s }
    }

    /// Two outer 4-gons sharing both outer vertices of `A_{2,6}`.
    fn two_squares() -> Dissection {
        build_dissection(
            Surface::Annulus { n: 2, m: 6 },
            vec![br(1, 6, 0), br(1, 1, 1), br(1, 2, 1), br(2, 3, 1), br(2, 5, 1)],
        )
        .unwrap()
    }

    fn squares_with_inner(d: &Dissection) -> Vec<usize> {
        d.faces()
            .iter()
            .filter(|f| f.size() == 4 && f.outer_labels(2).len() == 2)
            .map(|f| f.id)
            .collect()
    }

    #[test]
    fn identify_two_squares() {
        let d = two_squares();
        assert_eq!(d.quiddity_outer().unwrap().sets(), &[vec![3, 3, 4, 4], vec![4, 4, 4]]);
        let sq = squares_with_inner(&d);
        assert_eq!(sq.len(), 2);
        let q = QuotientDissection::new(d, &[(sq[0], sq[1], None)]).unwrap();
        assert_eq!(q.quiddity_outer().unwrap().sets(), &[vec![3, 3, 4], vec![4, 4]]);
        assert_eq!(q.class_of(sq[0], 0), q.class_of(sq[1], 5));
        assert_eq!(q.pairs()[0].2, 1);
    }

    #[test]
    fn forbidden_pairs() {
        let d = two_squares();
        let sq = squares_with_inner(&d);
        let tri: Vec<usize> = d.faces().iter().filter(|f| f.size() == 3).map(|f| f.id).collect();
        assert_eq!(
            QuotientDissection::new(d.clone(), &[(sq[0], tri[0], None)]),
            Err(SurfaceError::SizeMismatch(sq[0], tri[0]))
        );
        // the two triangles at v1 share the arc between them
        assert_eq!(
            QuotientDissection::new(d.clone(), &[(tri[0], tri[1], None)]),
            Err(SurfaceError::SharedEdge(tri[0], tri[1]))
        );
        let ears = build_dissection(
            Surface::Annulus { n: 4, m: 1 },
            vec![br(1, 1, 0), br(3, 1, 0), Arc::Peri(1, 3), Arc::Peri(3, 1)],
        )
        .unwrap();
        let e: Vec<usize> = ears.faces().iter().filter(|f| !f.has_inner_vertex()).map(|f| f.id).collect();
        assert_eq!(e.len(), 2);
        assert!(matches!(QuotientDissection::new(ears, &[(e[0], e[1], None)]), Err(SurfaceError::NoInnerVertex(_))));
    }

    #[test]
    fn transport_through_ear_and_rotation() {
        let d = two_squares();
        let sq = squares_with_inner(&d);
        let q = QuotientDissection::new(d, &[(sq[0], sq[1], None)]).unwrap();
        let g = q.glue_ear(3, 2).unwrap();
        assert_eq!(g.quiddity_outer().unwrap().sets(), &[vec![3, 3, 3, 4], vec![3, 4, 4], vec![3]]);
        let r = g.rotate(1).unwrap();
        assert_eq!(r.quiddity_outer().unwrap().sets(), &[vec![3], vec![3, 3, 3, 4], vec![3, 4, 4]]);
    }
}
