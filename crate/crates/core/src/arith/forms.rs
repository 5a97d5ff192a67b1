//! Parser for the plain-text CM form fixture.

use super::lattice::{CMFormId, FieldElement, LatticeAtom};
use crate::error::{Error, Result};
use crate::fixtures::{self, content_lines, err};
use rug::Rational;

const MAX_FORMS: usize = 4096;
const MAX_ATOMS: usize = 64;
const MAX_TOKEN: usize = 40;
const MAX_INT: u64 = 1_000_000_000;

/// A bounded rational such as `-3/2`.
pub fn parse_bounded_rational(s: &str) -> Result<Rational> {
    if s.is_empty() || s.len() > MAX_TOKEN {
        return Err(Error::Parse(format!("rational token {:?}", s)));
    }
    let ok = s.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/' || c == '+');
    if !ok {
        return Err(Error::Parse(format!("rational token {:?}", s)));
    }
    let r = Rational::parse(s).map_err(|e| Error::Parse(format!("{:?}: {}", s, e)))?;
    Ok(Rational::from(r))
}

fn parse_element(s: &str) -> Result<FieldElement> {
    let (x, y) = s.split_once(':').ok_or_else(|| Error::Parse(format!("field element {:?}", s)))?;
    Ok(FieldElement::new(parse_bounded_rational(x)?, parse_bounded_rational(y)?))
}

fn parse_u64(s: &str) -> Result<u64> {
    let v: u64 = s.parse().map_err(|_| Error::Parse(format!("integer {:?}", s)))?;
    if v == 0 || v > MAX_INT {
        return Err(Error::Parse(format!("integer {} out of range", v)));
    }
    Ok(v)
}

fn parse_i64(s: &str) -> Result<i64> {
    let v: i64 = s.parse().map_err(|_| Error::Parse(format!("integer {:?}", s)))?;
    if v == 0 || v.unsigned_abs() > MAX_INT {
        return Err(Error::Parse(format!("integer {} out of range", v)));
    }
    Ok(v)
}

#[derive(Default)]
struct Partial {
    label: String,
    level: Option<u64>,
    weight: Option<u32>,
    field: Option<i64>,
    nebentypus: Option<i64>,
    twist: Option<i64>,
    atoms: Vec<LatticeAtom>,
}

impl Partial {
    fn finish(self, line: usize) -> Result<CMFormId> {
        let missing = |what: &str| err(fixtures::FORMS, line, format!("{}: missing {}", self.label, what));
        let form = CMFormId {
            level: self.level.ok_or_else(|| missing("level"))?,
            weight: self.weight.ok_or_else(|| missing("weight"))?,
            field_discriminant: self.field.ok_or_else(|| missing("field"))?,
            nebentypus: self.nebentypus.ok_or_else(|| missing("nebentypus"))?,
            twist: self.twist,
            atoms: self.atoms,
            label: self.label,
        };
        form.validate()?;
        Ok(form)
    }
}

/// Parses the whole fixture; labels must be unique.
pub fn parse_forms(text: &str) -> Result<Vec<CMFormId>> {
    let name = fixtures::FORMS;
    let mut out: Vec<CMFormId> = vec![];
    let mut cur: Option<Partial> = None;
    for (ln, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let at = |e: Error| err(name, ln, e);
        match (toks[0], cur.as_mut()) {
            ("form", None) => {
                if toks.len() != 2 || toks[1].len() > MAX_TOKEN {
                    return Err(err(name, ln, "expected `form <label>`"));
                }
                if out.iter().any(|f| f.label == toks[1]) {
                    return Err(err(name, ln, format!("duplicate label {}", toks[1])));
                }
                if out.len() >= MAX_FORMS {
                    return Err(err(name, ln, "too many forms"));
                }
                cur = Some(Partial { label: toks[1].to_string(), ..Default::default() });
            }
            ("form", Some(_)) => return Err(err(name, ln, "nested `form`")),
            ("end", Some(_)) => {
                if toks.len() != 1 {
                    return Err(err(name, ln, "trailing tokens after `end`"));
                }
                out.push(cur.take().expect("matched Some").finish(ln)?);
            }
            (kw, Some(p)) => {
                let arg = |i: usize| toks.get(i).copied().ok_or_else(|| err(name, ln, format!("`{}` needs an argument", kw)));
                let expect = |n: usize| {
                    if toks.len() == n {
                        Ok(())
                    } else {
                        Err(err(name, ln, format!("`{}` takes {} fields", kw, n - 1)))
                    }
                };
                match kw {
                    "level" => {
                        expect(2)?;
                        p.level = Some(parse_u64(arg(1)?).map_err(at)?);
                    }
                    "weight" => {
                        expect(2)?;
                        p.weight = Some(parse_u64(arg(1)?).map_err(at)? as u32);
                    }
                    "field" => {
                        expect(2)?;
                        p.field = Some(parse_i64(arg(1)?).map_err(at)?);
                    }
                    "nebentypus" => {
                        expect(2)?;
                        p.nebentypus = Some(parse_i64(arg(1)?).map_err(at)?);
                    }
                    "twist" => {
                        expect(2)?;
                        p.twist = Some(parse_i64(arg(1)?).map_err(at)?);
                    }
                    "atom" => {
                        expect(7)?;
                        if p.atoms.len() >= MAX_ATOMS {
                            return Err(err(name, ln, "too many atoms"));
                        }
                        let d = parse_u64(arg(1)?).map_err(at)?;
                        if d > 1_000_000 {
                            return Err(err(name, ln, "D out of range"));
                        }
                        let c = parse_bounded_rational(arg(2)?).map_err(at)?;
                        if c <= 0 {
                            return Err(err(name, ln, "scale must be positive"));
                        }
                        p.atoms.push(LatticeAtom {
                            d,
                            c,
                            w0: parse_element(arg(3)?).map_err(at)?,
                            b1: parse_element(arg(4)?).map_err(at)?,
                            b2: parse_element(arg(5)?).map_err(at)?,
                            mult: parse_bounded_rational(arg(6)?).map_err(at)?,
                        });
                    }
                    _ => return Err(err(name, ln, format!("unknown keyword {:?}", kw))),
                }
            }
            (kw, None) => return Err(err(name, ln, format!("`{}` outside a form record", kw))),
        }
    }
    if cur.is_some() {
        return Err(Error::Fixture(format!("{}: unterminated form record", name)));
    }
    Ok(out)
}

/// All fixture forms.
pub fn load_forms() -> Result<Vec<CMFormId>> {
    parse_forms(&fixtures::load(fixtures::FORMS)?)
}

/// The fixture form with the given label.
pub fn form_by_label(label: &str) -> Result<CMFormId> {
    load_forms()?
        .into_iter()
        .find(|f| f.label == label)
        .ok_or_else(|| Error::Unknown(format!("form {}", label)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixture_parses() {
        let forms = load_forms().unwrap();
        assert_eq!(forms.len(), 34);
        let f = forms.iter().find(|f| f.label == "f800.3.g.a").unwrap();
        assert_eq!(f.twist, Some(5));
        assert_eq!(f.atoms.len(), 3);
    }

    #[test]
    fn malformed_records_are_rejected() {
        let bad = [
            "form a\nlevel 1\nend",
            "level 3",
            "form a\nform b",
            "form a\nlevel 4\nweight 3\nfield -4\nnebentypus -4\natom 1 1 0:0 1:0 0:2\nend",
            "form a\nlevel 4\nweight 3\nfield -4\nnebentypus -4\natom 1 0 0:0 1:0 0:2 1\nend",
            "form a\nlevel 4\nweight 3\nfield -4\nnebentypus -4\natom 1 1 0:0 1:0 2:0 1\nend",
            "form a\nlevel 4\nweight 4\nfield -4\nnebentypus -4\natom 1 1 0:0 1:0 0:2 1\nend",
            "form a\nlevel 4\nweight 3\nfield -4\nnebentypus -4\natom 1 1 0:0 1:0 0:2 1/0\nend",
            "form a\nlevel 4\nweight 3\nfield -4\nnebentypus -4\natom 1 1 0:0 1:0 0:2 1",
        ];
        for b in bad {
            assert!(parse_forms(b).is_err(), "{}", b);
        }
    }
}
