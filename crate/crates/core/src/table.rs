//! Plain-text CSV formats shared by the library and the command line.
//!
//! Element table: header `index,position_lambda,excitation`, one element per
//! line, positions in wavelengths, values written with 6 significant digits.
//!
//! Pattern table: header `u,theta_deg,F_linear,F_db`, one grid sample per line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::array_model::{ElementPlacement, Pattern, SymmetricArray};
use crate::error::{Error, Result};

pub const ELEMENT_HEADER: &str = "index,position_lambda,excitation";
pub const PATTERN_HEADER: &str = "u,theta_deg,F_linear,F_db";

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    s.parse().unwrap_or(x)
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// form of the rounded value.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

pub fn format_element_table(elements: &[ElementPlacement]) -> String {
    let mut out = String::with_capacity(32 * (elements.len() + 1));
    out.push_str(ELEMENT_HEADER);
    out.push('\n');
    for (i, el) in elements.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{}",
            i + 1,
            fmt_sig(el.position, 6),
            fmt_sig(el.excitation, 6)
        );
    }
    out
}

pub fn write_element_table(path: &Path, array: &SymmetricArray) -> Result<()> {
    fs::write(path, format_element_table(array.half_elements())).map_err(|e| Error::io(path, e))
}

/// Parses element-table text. `origin` only labels error messages.
pub fn parse_element_table(text: &str, origin: &Path) -> Result<Vec<ElementPlacement>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == ELEMENT_HEADER => {}
        Some((_, header)) => {
            return Err(parse_err(
                1,
                format!("expected header `{ELEMENT_HEADER}`, found `{}`", header.trim()),
            ))
        }
        None => return Err(parse_err(1, "empty file".into())),
    }
    let mut elements = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(parse_err(
                line_no,
                format!("expected 3 comma-separated fields, found {}", fields.len()),
            ));
        }
        fields[0]
            .parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("bad index `{}`", fields[0])))?;
        let position: f64 = fields[1]
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad position `{}`", fields[1])))?;
        let excitation: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad excitation `{}`", fields[2])))?;
        elements.push(ElementPlacement::new(position, excitation));
    }
    if elements.is_empty() {
        return Err(parse_err(2, "no element rows".into()));
    }
    Ok(elements)
}

pub fn read_element_table(path: &Path) -> Result<SymmetricArray> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    SymmetricArray::new(parse_element_table(&text, path)?)
}

pub fn format_pattern_table(pattern: &Pattern) -> Result<String> {
    let db = pattern.to_db()?;
    let grid = pattern.grid();
    let mut out = String::with_capacity(48 * (grid.len() + 1));
    out.push_str(PATTERN_HEADER);
    out.push('\n');
    for (((u, theta), f), d) in grid
        .u_values()
        .iter()
        .zip(grid.theta_deg())
        .zip(pattern.values())
        .zip(db)
    {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(*u, 9),
            fmt_sig(theta, 9),
            fmt_sig(*f, 9),
            fmt_sig(d, 9)
        );
    }
    Ok(out)
}

pub fn write_pattern_table(path: &Path, pattern: &Pattern) -> Result<()> {
    fs::write(path, format_pattern_table(pattern)?).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array_model::{array_factor_symmetric, AngleGrid};

    #[test]
    fn sig_rounding() {
        assert_eq!(fmt_sig(0.820_612_345, 6), "0.820612");
        assert_eq!(fmt_sig(0.25, 6), "0.25");
        assert_eq!(fmt_sig(4.0, 6), "4");
        assert_eq!(fmt_sig(-120.0, 9), "-120");
        assert_eq!(round_sig(123_456_789.0, 3), 123_000_000.0);
    }

    #[test]
    fn parses_single_row() {
        let els = parse_element_table(
            "index,position_lambda,excitation\n1,0.25,1.0\n",
            Path::new("inline"),
        )
        .unwrap();
        assert_eq!(els, vec![ElementPlacement::new(0.25, 1.0)]);
    }

    #[test]
    fn reports_offending_line() {
        let err = parse_element_table(
            "index,position_lambda,excitation\n1,0.25,1.0\n2,0.75\n",
            Path::new("t.csv"),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let err = parse_element_table("1,0.25,1.0\n", Path::new("t.csv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = parse_element_table(
            "index,position_lambda,excitation\n1,abc,1.0\n",
            Path::new("t.csv"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("bad position"));
    }

    #[test]
    fn pattern_table_shape() {
        let array = SymmetricArray::from_parts(&[0.25, 0.75], &[1.0, 0.5]).unwrap();
        let grid = AngleGrid::half_space(5).unwrap();
        let p = array_factor_symmetric(&array, &grid).unwrap();
        let text = format_pattern_table(&p).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], PATTERN_HEADER);
        assert_eq!(lines.len(), 6);
        assert!(lines[1].starts_with("0,90,3,0"));
    }
}
