//! Seeded generators for random dissections and quiddity cycles.

use frieze_core::frieze::{is_skeletal, realizability_test, QuiddityCycle};
use frieze_core::realize::{classify, Verdict, Witness};
use frieze_core::surface::{build_dissection, glue_ear, Arc, Dissection, QuotientDissection, Surface};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

const MAX_FACE: u32 = 6;
const TRIES: usize = 10_000;

fn small_faces(d: &Dissection) -> bool {
    d.faces().iter().all(|f| f.size() <= MAX_FACE)
}

fn crosses(a: (u32, u32), b: (u32, u32)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// A polygon with `3..=max_n` vertices and at most `max_arcs` random diagonals.
pub fn polygon(r: &mut Rng8, max_n: u32, max_arcs: usize) -> Dissection {
    let n = r.gen_range(3..=max_n.max(3));
    let mut cand: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a + 2..=n).map(move |b| (a, b))).filter(|&(a, b)| !(a == 1 && b == n)).collect();
    cand.shuffle(r);
    let want = r.gen_range(0..=max_arcs.min(cand.len()));
    let mut chosen: Vec<(u32, u32)> = Vec::new();
    for c in cand {
        if chosen.len() == want {
            break;
        }
        if chosen.iter().all(|&d| !crosses(c, d)) {
            chosen.push(c);
        }
    }
    let arcs = chosen.into_iter().map(|(a, b)| Arc::diag(a, b)).collect();
    build_dissection(Surface::Polygon { n }, arcs).expect("non-crossing diagonals")
}

/// Skeletal annulus: monotone bridges in the cover, faces of size at most 6.
pub fn skeletal_annulus(r: &mut Rng8) -> Dissection {
    for _ in 0..TRIES {
        let n = r.gen_range(1..=4u32);
        let m = r.gen_range(1..=3u32);
        let b = r.gen_range(1..=(n + m).min(4)) as usize;
        let mut gs: Vec<u32> = (0..b).map(|_| r.gen_range(1..=n)).collect();
        gs.sort_unstable();
        let mut offs: Vec<u32> = (0..b).map(|t| if t == 0 { 0 } else { r.gen_range(0..=m) }).collect();
        offs.sort_unstable();
        let h1 = r.gen_range(1..=m);
        let lifts: Vec<(u32, u32)> = gs.iter().zip(&offs).map(|(&g, &o)| (g, h1 + o)).collect();
        if lifts.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let arcs: Vec<Arc> = lifts
            .iter()
            .map(|&(g, h)| Arc::Bridge { outer: g, inner: (h - 1) % m + 1, shift: ((h - 1) / m) as u8 })
            .collect();
        if let Ok(d) = build_dissection(Surface::Annulus { n, m }, arcs) {
            if small_faces(&d) {
                return d;
            }
        }
    }
    unreachable!("annulus generator exhausted its retries")
}

/// Skeletal punctured disc: a nonempty set of arcs to the puncture.
pub fn skeletal_disc(r: &mut Rng8) -> Dissection {
    for _ in 0..TRIES {
        let n = r.gen_range(1..=5u32);
        let mut vs: Vec<u32> = (1..=n).filter(|_| r.gen_bool(0.6)).collect();
        if vs.is_empty() {
            vs.push(r.gen_range(1..=n));
        }
        let arcs = vs.into_iter().map(Arc::BridgeDisc).collect();
        if let Ok(d) = build_dissection(Surface::Disc { n }, arcs) {
            if small_faces(&d) {
                return d;
            }
        }
    }
    unreachable!("disc generator exhausted its retries")
}

/// Glue up to `max` random ears of sizes 3..=5.
pub fn with_ears(r: &mut Rng8, mut d: Dissection, max: usize) -> Dissection {
    for _ in 0..r.gen_range(0..=max) {
        let p = r.gen_range(3..=5u32);
        let i = r.gen_range(1..=d.n());
        d = glue_ear(&d, p, i).expect("ear on a valid boundary edge");
    }
    d
}

pub fn annulus(r: &mut Rng8) -> Dissection {
    let d = skeletal_annulus(r);
    with_ears(r, d, 2)
}

pub fn disc(r: &mut Rng8) -> Dissection {
    let d = skeletal_disc(r);
    with_ears(r, d, 2)
}

/// Annulus or punctured disc, about two to one.
pub fn infinite(r: &mut Rng8) -> Dissection {
    if r.gen_bool(0.65) {
        annulus(r)
    } else {
        disc(r)
    }
}

/// Any of the three surface kinds.
pub fn any(r: &mut Rng8) -> Dissection {
    match r.gen_range(0..3) {
        0 => polygon(r, 8, 4),
        1 => annulus(r),
        _ => disc(r),
    }
}

/// A skeletal cycle that passes the realizability test, by rejection from
/// random multisets of one to three sizes.
pub fn skeletal_cycle(r: &mut Rng8, sizes: &[u32]) -> QuiddityCycle {
    loop {
        let n = r.gen_range(1..=4usize);
        let sets: Vec<Vec<u32>> = (0..n)
            .map(|_| {
                let mut s: Vec<u32> = (0..r.gen_range(1..=3)).map(|_| *sizes.choose(r).unwrap()).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let q = QuiddityCycle::new(sets).expect("sizes are at least 3");
        if realizability_test(&q).is_ok() && is_skeletal(&q) {
            return q;
        }
    }
}

/// A cycle whose classification needs a quotient witness, with random ears.
pub fn quotient_cycle(r: &mut Rng8) -> (QuiddityCycle, QuotientDissection) {
    loop {
        let q = skeletal_cycle(r, &[3, 4, 5]);
        let Ok(c) = classify(&q) else { continue };
        if !matches!(c.verdict, Verdict::QuotientAnnulus(..)) {
            continue;
        }
        let Some(Witness::Quotient(mut w)) = c.witness else { continue };
        for _ in 0..r.gen_range(0..=1) {
            let p = r.gen_range(3..=4u32);
            let i = r.gen_range(1..=w.base().n());
            w = w.glue_ear(p, i).expect("ear on a quotient");
        }
        let q = w.quiddity_outer().expect("quotient quiddity");
        return (q, w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        let a: Vec<String> = (0..5).map(|s| frieze_core::surface::format_dissection(&any(&mut rng(s)))).collect();
        let b: Vec<String> = (0..5).map(|s| frieze_core::surface::format_dissection(&any(&mut rng(s)))).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_shapes() {
        let mut r = rng(1);
        for _ in 0..30 {
            let d = skeletal_annulus(&mut r);
            assert!(d.arcs().iter().all(Arc::is_bridging));
            let p = polygon(&mut r, 8, 4);
            assert!(p.surface().is_polygon());
            let q = skeletal_cycle(&mut r, &[3, 4]);
            assert!(is_skeletal(&q));
        }
        let (q, w) = quotient_cycle(&mut r);
        assert_eq!(w.quiddity_outer().unwrap(), q);
    }
}
