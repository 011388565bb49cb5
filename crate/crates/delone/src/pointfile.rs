//! Point-set files.
//!
//! ```text
//! dim 1
//! # comments and blank lines are ignored
//! -1
//! 0.5
//! ```
//!
//! The header line is `dim n` with `n ∈ {1, 2}`; each further line holds `n`
//! whitespace-separated decimal coordinates. Points are written in
//! lexicographic order using the shortest decimal that reads back to the
//! same `f64`.

use std::fmt::Write as _;
use std::path::Path;

use delone_core::{FinitePointSet, Point};

use crate::error::{AppError, AppResult};

/// Parse the text of a point-set file.
pub fn parse_points(text: &str) -> AppResult<FinitePointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| AppError::input("point file is empty: expected a `dim n` header"))?;
    let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", n] => n
            .parse::<usize>()
            .map_err(|_| AppError::input(format!("line {line_no}: bad dimension {n:?}")))?,
        _ => return Err(AppError::input(format!("line {line_no}: expected `dim n`, got {header:?}"))),
    };
    if !(1..=2).contains(&dim) {
        return Err(AppError::input(format!("line {line_no}: unsupported dimension {dim}")));
    }
    let mut points = Vec::new();
    for (line_no, line) in lines {
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| AppError::input(format!("line {line_no}: bad coordinate {tok:?}")))
            })
            .collect::<AppResult<Vec<f64>>>()?;
        if coords.len() != dim {
            return Err(AppError::input(format!(
                "line {line_no}: expected {dim} coordinates, got {}",
                coords.len()
            )));
        }
        let p = Point::new(&coords).map_err(|e| AppError::input(format!("line {line_no}: {e}")))?;
        points.push(p);
    }
    Ok(FinitePointSet::new(dim, points)?)
}

pub fn read_points(path: &Path) -> AppResult<FinitePointSet> {
    let text = std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_points(&text).map_err(|e| match e {
        AppError::Input(msg) => AppError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Render a point set, with optional leading comment lines.
pub fn format_points(set: &FinitePointSet, comments: &[String]) -> String {
    let mut out = format!("dim {}\n", set.dim());
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for p in set.iter() {
        let coords: Vec<String> = p.coords().iter().map(|x| format!("{x}")).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let set = parse_points("# header comment\ndim 1\n\n 2.5 # trailing\n-1\n0\n").unwrap();
        assert_eq!(set.line_coords(), vec![-1.0, 0.0, 2.5]);
        let planar = parse_points("dim 2\n1 2\n0 3\n").unwrap();
        assert_eq!(planar.points()[0].coords(), &[0.0, 3.0]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "dim 3\n0 0 0\n", "dim x\n", "1\n2\n", "dim 1\n1 2\n", "dim 1\nabc\n", "dim 1\nnan\n"] {
            assert!(matches!(parse_points(bad), Err(AppError::Input(_))), "{bad:?}");
        }
        let msg = parse_points("dim 3\n").unwrap_err().to_string();
        assert!(msg.contains("unsupported dimension 3"), "{msg}");
    }

    #[test]
    fn writes_sorted() {
        let set = FinitePointSet::from_line([0.5, -1.0, 0.1]).unwrap();
        assert_eq!(format_points(&set, &["note".into()]), "dim 1\n# note\n-1\n0.1\n0.5\n");
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(xs in proptest::collection::vec(-1e6f64..1e6, 0..50), planar in any::<bool>()) {
            let set = if planar {
                let pts: Vec<Point> = xs.chunks(2).filter(|c| c.len() == 2).map(|c| Point::planar(c[0], c[1])).collect();
                FinitePointSet::new(2, pts).unwrap()
            } else {
                FinitePointSet::from_line(xs.iter().copied()).unwrap()
            };
            let back = parse_points(&format_points(&set, &[])).unwrap();
            prop_assert_eq!(back, set);
        }
    }
}
