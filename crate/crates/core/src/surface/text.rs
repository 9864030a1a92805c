//! Plain-text dissection files.
//!
//! ```text
//! annulus 3 3        # or: disc 3 | polygon 6
//! bridge 1 2 0       # outer inner shift
//! peri 1 3
//! glue 0 2 1         # quotient files only: face ids, optional shared vertex
//! ```

use std::fmt::Write as _;

use super::{build_dissection, Arc, Dissection, QuotientDissection, Surface, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceFile {
    Plain(Dissection),
    Quotient(QuotientDissection),
}

impl SurfaceFile {
    pub fn dissection(&self) -> &Dissection {
        match self {
            SurfaceFile::Plain(d) => d,
            SurfaceFile::Quotient(q) => q.base(),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> SurfaceError {
    SurfaceError::Parse { line, message: message.into() }
}

fn nums(line: usize, words: &[&str], want: &[usize]) -> Result<Vec<u32>, SurfaceError> {
    if !want.contains(&words.len()) {
        return Err(err(line, format!("expected {:?} numbers after '{}'", want, words.first().unwrap_or(&""))));
    }
    words[1..]
        .iter()
        .map(|w| w.parse::<u32>().map_err(|_| err(line, format!("'{}' is not a number", w))))
        .collect()
}

/// Parse a dissection, with optional `glue` lines making it a quotient.
pub fn parse_surface_file(text: &str) -> Result<SurfaceFile, SurfaceError> {
    let mut surface: Option<Surface> = None;
    let mut arcs = Vec::new();
    let mut glues: Vec<(usize, usize, Option<u32>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = words.first() else { continue };
        if surface.is_none() {
            surface = Some(match head {
                "polygon" => Surface::new_polygon(nums(line, &words, &[2])?[0]),
                "disc" => Surface::new_disc(nums(line, &words, &[2])?[0]),
                "annulus" => {
                    let v = nums(line, &words, &[3])?;
                    Surface::new_annulus(v[0], v[1])
                }
                other => return Err(err(line, format!("expected a surface header, found '{}'", other))),
            }?);
            continue;
        }
        match head {
            "bridge" => {
                let v = nums(line, &words, &[4])?;
                if v[2] > 1 {
                    return Err(err(line, "shift must be 0 or 1"));
                }
                arcs.push(Arc::Bridge { outer: v[0], inner: v[1], shift: v[2] as u8 });
            }
            "bridge-disc" => arcs.push(Arc::BridgeDisc(nums(line, &words, &[2])?[0])),
            "peri" => {
                let v = nums(line, &words, &[3])?;
                arcs.push(Arc::Peri(v[0], v[1]));
            }
            "diag" => {
                let v = nums(line, &words, &[3])?;
                arcs.push(Arc::diag(v[0], v[1]));
            }
            "glue" => {
                let v = nums(line, &words, &[3, 4])?;
                glues.push((v[0] as usize, v[1] as usize, v.get(2).copied()));
            }
            other => return Err(err(line, format!("unknown keyword '{}'", other))),
        }
    }
    let surface = surface.ok_or_else(|| err(0, "missing surface header"))?;
    let d = build_dissection(surface, arcs)?;
    if glues.is_empty() {
        Ok(SurfaceFile::Plain(d))
    } else {
        Ok(SurfaceFile::Quotient(QuotientDissection::new(d, &glues)?))
    }
}

/// Parse a file that must not contain `glue` lines.
pub fn parse_dissection(text: &str) -> Result<Dissection, SurfaceError> {
    match parse_surface_file(text)? {
        SurfaceFile::Plain(d) => Ok(d),
        SurfaceFile::Quotient(_) => Err(err(0, "unexpected glue lines")),
    }
}

pub fn format_dissection(d: &Dissection) -> String {
    let mut s = format!("{}\n", d.surface());
    for a in d.arcs() {
        let _ = writeln!(s, "{}", a);
    }
    s
}

pub fn format_quotient(q: &QuotientDissection) -> String {
    let mut s = format_dissection(q.base());
    for &(a, b, v) in q.pairs() {
        let _ = writeln!(s, "glue {} {} {}", a, b, v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# three outer points\nannulus 3 3\nbridge 1 2 0\nbridge 3 3 0 # comment\nbridge 3 2 1\nperi 1 3\n";
        let d = parse_dissection(text).unwrap();
        let out = format_dissection(&d);
        assert_eq!(parse_dissection(&out).unwrap(), d);
        assert!(out.starts_with("annulus 3 3\n"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_dissection("annulus 2 2\nbridge 1 1\n"),
            Err(SurfaceError::Parse { line: 2, message: "expected [4] numbers after 'bridge'".into() })
        );
        assert!(matches!(parse_dissection("torus 1\n"), Err(SurfaceError::Parse { line: 1, .. })));
        assert!(matches!(parse_dissection("polygon 5\nwobble 1 2\n"), Err(SurfaceError::Parse { line: 2, .. })));
        assert!(matches!(parse_dissection(""), Err(SurfaceError::Parse { .. })));
    }

    #[test]
    fn quotient_file() {
        let text = "annulus 2 6\nbridge 1 6 0\nbridge 1 1 1\nbridge 1 2 1\nbridge 2 3 1\nbridge 2 5 1\n";
        let d = parse_dissection(text).unwrap();
        let sq: Vec<usize> =
            d.faces().iter().filter(|f| f.size() == 4 && f.outer_labels(2).len() == 2).map(|f| f.id).collect();
        let qtext = format!("{}glue {} {}\n", text, sq[0], sq[1]);
        match parse_surface_file(&qtext).unwrap() {
            SurfaceFile::Quotient(q) => {
                assert_eq!(parse_surface_file(&format_quotient(&q)).unwrap(), SurfaceFile::Quotient(q));
            }
            SurfaceFile::Plain(_) => panic!("expected a quotient"),
        }
    }
}
