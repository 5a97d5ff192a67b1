//! Embedded fixture files, overridable by a directory named in the
//! `CMLVAL_FIXTURE_DIR` environment variable.

use crate::error::{Error, Result};
use std::borrow::Cow;
use std::path::PathBuf;

pub const FIXTURE_DIR_ENV: &str = "CMLVAL_FIXTURE_DIR";

pub const FORMS: &str = "forms.txt";
pub const EISENSTEIN: &str = "eisenstein.txt";
pub const TABLES: &str = "tables.txt";
pub const TABLE4: &str = "table4.txt";
pub const CHAINS: &str = "chains.txt";
pub const U6_VALUES: &str = "u6.txt";

const EMBEDDED: &[(&str, &str)] = &[
    (FORMS, include_str!("../fixtures/forms.txt")),
    (EISENSTEIN, include_str!("../fixtures/eisenstein.txt")),
    (TABLES, include_str!("../fixtures/tables.txt")),
    (TABLE4, include_str!("../fixtures/table4.txt")),
    (CHAINS, include_str!("../fixtures/chains.txt")),
    (U6_VALUES, include_str!("../fixtures/u6.txt")),
];

pub fn embedded(name: &str) -> Option<&'static str> {
    EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// The override directory, if the environment variable is set and non-empty.
pub fn override_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Contents of a fixture: read from the override directory when that
/// directory contains the file, the embedded copy otherwise.
pub fn load(name: &str) -> Result<Cow<'static, str>> {
    let builtin = embedded(name).ok_or_else(|| Error::Unknown(format!("fixture {}", name)))?;
    if let Some(dir) = override_dir() {
        let path = dir.join(name);
        if path.exists() {
            return std::fs::read_to_string(&path)
                .map(Cow::Owned)
                .map_err(|e| Error::Fixture(format!("{}: {}", path.display(), e)));
        }
    }
    Ok(Cow::Borrowed(builtin))
}

/// Lines with comments (`#` to end of line) removed, paired with their
/// 1-based line numbers; blank lines are skipped.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

pub(crate) fn err(name: &str, line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Fixture(format!("{}:{}: {}", name, line, msg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_is_embedded() {
        for name in [FORMS, EISENSTEIN, TABLES, TABLE4, CHAINS, U6_VALUES] {
            assert!(!embedded(name).unwrap().is_empty());
        }
        assert!(load("missing.txt").is_err());
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let v: Vec<_> = content_lines("# a\n\nx 1 # c\n  y\n").collect();
        assert_eq!(v, vec![(3, "x 1"), (4, "y")]);
    }
}
