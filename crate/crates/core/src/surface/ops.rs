//! Structural operations on dissections: powers, ear gluing, relabeling.

use super::{build_dissection, lift, Arc, Dissection, Point, Surface, SurfaceError};

/// Turn a lift back into a normalized arc on `surface`.
fn arc_from_lift(surface: Surface, p: Point, q: Point) -> Arc {
    let n = surface.n() as i64;
    let m = surface.m() as i64;
    let base = |g: i64| ((g - 1).rem_euclid(n) + 1) as u32;
    match (surface, p, q) {
        (Surface::Polygon { .. }, Point::Outer(a), Point::Outer(b)) => Arc::diag(base(a), base(b)),
        (_, Point::Outer(a), Point::Outer(b)) => Arc::Peri(base(a.min(b)), base(a.max(b))),
        (_, Point::Outer(_), Point::Inf) => match p {
            Point::Outer(g) => Arc::BridgeDisc(base(g)),
            _ => unreachable!(),
        },
        (_, Point::Outer(g), Point::Inner(h)) => {
            let k = (g - 1).div_euclid(n);
            let h = h - k * m;
            debug_assert!((1..=2 * m).contains(&h));
            Arc::Bridge { outer: base(g), inner: ((h - 1).rem_euclid(m) + 1) as u32, shift: ((h - 1).div_euclid(m)) as u8 }
        }
        _ => unreachable!("arcs start on the outer boundary"),
    }
}

/// Apply a Dehn twist so the bridging arc with the smallest outer endpoint
/// has its inner endpoint in `1..=m`.
fn untwist(surface: Surface, lifts: &mut [(Point, Point)]) {
    let m = surface.m() as i64;
    let n = surface.n() as i64;
    if m == 0 {
        return;
    }
    // bring every bridge to an outer endpoint in 1..=n
    for l in lifts.iter_mut() {
        if let (Point::Outer(g), Point::Inner(h)) = *l {
            let k = (g - 1).div_euclid(n);
            *l = (Point::Outer(g - k * n), Point::Inner(h - k * m));
        }
    }
    let first = lifts
        .iter()
        .filter_map(|l| match *l {
            (Point::Outer(g), Point::Inner(h)) => Some((g, h)),
            _ => None,
        })
        .min();
    if let Some((_, h)) = first {
        let t = (h - 1).div_euclid(m);
        for l in lifts.iter_mut() {
            if let (g, Point::Inner(h)) = *l {
                *l = (g, Point::Inner(h - t * m));
            }
        }
    }
}

fn rebuild(surface: Surface, mut lifts: Vec<(Point, Point)>) -> Result<Dissection, SurfaceError> {
    untwist(surface, &mut lifts);
    let arcs = lifts.into_iter().map(|(p, q)| arc_from_lift(surface, p, q)).collect();
    build_dissection(surface, arcs)
}

/// Relabel outer vertices `a -> a + r` (cyclically).
pub fn rotate(d: &Dissection, r: i64) -> Result<Dissection, SurfaceError> {
    let s = d.surface();
    let lifts = d
        .arcs()
        .iter()
        .map(|a| {
            let (p, q) = lift(s, a, 0);
            let sh = |x: Point| match x {
                Point::Outer(g) => Point::Outer(g + r),
                other => other,
            };
            (sh(p), sh(q))
        })
        .collect();
    rebuild(s, lifts)
}

/// Attach an ear of size `p` along the boundary segment from `v_i` to `v_{i+1}`.
///
/// The new vertices are `v_{i+1} .. v_{i+p-2}`; later labels move up by `p-2`.
pub fn glue_ear(d: &Dissection, p: u32, i: u32) -> Result<Dissection, SurfaceError> {
    let s = d.surface();
    let n = s.n() as i64;
    if i == 0 || i as i64 > n {
        return Err(SurfaceError::BadPosition(i as usize));
    }
    if p < 3 {
        return Err(SurfaceError::BadSurface(format!("ear size {} below 3", p)));
    }
    let add = p as i64 - 2;
    let n2 = n + add;
    let map = |g: i64| {
        let k = (g - 1).div_euclid(n);
        let a = (g - 1).rem_euclid(n) + 1;
        k * n2 + a + if a > i as i64 { add } else { 0 }
    };
    let s2 = match s {
        Surface::Polygon { .. } => Surface::Polygon { n: n2 as u32 },
        Surface::Disc { .. } => Surface::Disc { n: n2 as u32 },
        Surface::Annulus { m, .. } => Surface::Annulus { n: n2 as u32, m },
    };
    let mv = |x: Point| match x {
        Point::Outer(g) => Point::Outer(map(g)),
        other => other,
    };
    let mut lifts: Vec<(Point, Point)> = d
        .arcs()
        .iter()
        .map(|a| {
            let (x, y) = lift(s, a, 0);
            (mv(x), mv(y))
        })
        .collect();
    let gi = i as i64;
    lifts.push((Point::Outer(gi), Point::Outer(gi + p as i64 - 1)));
    rebuild(s2, lifts)
}

/// The k-th power: the same arcs repeated over `k` consecutive copies of the
/// fundamental domain, on `A_{kn,km}` or `S_{kn}`.
pub fn dissection_power(d: &Dissection, k: u32) -> Result<Dissection, SurfaceError> {
    let s = d.surface();
    if k == 0 {
        return Err(SurfaceError::BadPosition(0));
    }
    let s2 = match s {
        Surface::Polygon { .. } => return Err(SurfaceError::PowerOfPolygon),
        Surface::Disc { n } => Surface::Disc { n: n * k },
        Surface::Annulus { n, m } => Surface::Annulus { n: n * k, m: m * k },
    };
    let mut lifts = Vec::new();
    for c in 0..k as i64 {
        for a in d.arcs() {
            lifts.push(lift(s, a, c));
        }
    }
    rebuild(s2, lifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::{glue, parse_quiddity};

    fn annulus_333() -> Dissection {
        let br = |a, b, s| Arc::Bridge { outer: a, inner: b, shift: s };
        build_dissection(Surface::Annulus { n: 3, m: 3 }, vec![br(1, 2, 0), br(3, 3, 0), br(3, 2, 1), Arc::Peri(1, 3)])
            .unwrap()
    }

    #[test]
    fn power_repeats_quiddity() {
        let d = annulus_333();
        let q = d.quiddity_outer().unwrap();
        for k in 1..=3 {
            let dk = dissection_power(&d, k).unwrap();
            let qk = dk.quiddity_outer().unwrap();
            assert_eq!(qk.len(), 3 * k as usize);
            for t in 0..qk.len() {
                assert_eq!(qk.sets()[t], q.sets()[t % 3]);
            }
            assert_eq!(dk.faces().len(), 4 * k as usize);
        }
        let p = build_dissection(Surface::Polygon { n: 4 }, vec![]).unwrap();
        assert_eq!(dissection_power(&p, 2), Err(SurfaceError::PowerOfPolygon));
    }

    #[test]
    fn rotation_rotates_quiddity() {
        let d = annulus_333();
        let q = d.quiddity_outer().unwrap();
        for r in 0..3 {
            let qr = rotate(&d, r).unwrap().quiddity_outer().unwrap();
            for a in 0..3usize {
                assert_eq!(qr.sets()[(a + r as usize) % 3], q.sets()[a]);
            }
        }
    }

    #[test]
    fn ear_matches_quiddity_glue() {
        let d = annulus_333();
        let q = d.quiddity_outer().unwrap();
        for p in 3..=6 {
            for i in 1..=3 {
                let g = glue_ear(&d, p, i).unwrap();
                assert_eq!(g.quiddity_outer().unwrap(), glue(&q, p, i as usize).unwrap(), "p={} i={}", p, i);
            }
        }
        let poly = build_dissection(Surface::Polygon { n: 4 }, vec![Arc::diag(1, 3)]).unwrap();
        let g = glue_ear(&poly, 5, 4).unwrap();
        let expect = glue(&poly.quiddity_outer().unwrap(), 5, 4).unwrap();
        assert_eq!(g.quiddity_outer().unwrap(), expect);
        let one = build_dissection(Surface::Disc { n: 1 }, vec![Arc::BridgeDisc(1)]).unwrap();
        assert_eq!(
            glue_ear(&one, 4, 1).unwrap().quiddity_outer().unwrap(),
            parse_quiddity("[3,3,4,4] [4] [4]").unwrap()
        );
    }
}
