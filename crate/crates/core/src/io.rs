//! Line-based text formats for complexes, presentations, morphisms and barcodes.
//!
//! Complexes: one simplex per line, `v0 v1 ... ; birth [; removal]`.
//! Presentations: `field Q`, `gen <name> <degree>`, `rel [<label>:] <terms>` where
//! terms are `[coeff]t^e*name` joined by `+`, or `0 @ <degree>` for a zero relation.
//! Morphisms: `[source]`, `[target]` and `[map]` sections, the last holding
//! `map <name> -> <terms>` lines. `#` starts a comment everywhere.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{GradedBasis, GradedMatrix, HomogeneousElement};
use crate::homology::{FilteredComplex, Simplex};
use crate::presentation::{Barcode, Presentation, PresentationMorphism};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Simplices in file order, with filtration values replaced by their rank
/// among all distinct values when any value is not an integer.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexList {
    pub simplices: Vec<Simplex>,
    /// Original value text for each grade, present when values were discretized.
    pub value_map: Option<Vec<String>>,
}

impl SimplexList {
    pub fn complex(&self) -> Result<FilteredComplex> {
        FilteredComplex::new(self.simplices.clone())
    }

    /// `# grade <i> = <value>` lines describing the discretization.
    pub fn value_comments(&self) -> String {
        let mut out = String::new();
        if let Some(map) = &self.value_map {
            for (i, v) in map.iter().enumerate() {
                let _ = writeln!(out, "# grade {i} = {v}");
            }
        }
        out
    }
}

pub fn parse_simplices(text: &str) -> Result<SimplexList> {
    let mut raw = Vec::new();
    for (n, line) in content_lines(text) {
        let parts: Vec<&str> = line.split(';').map(str::trim).collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(parse_err(n, "expected `v0 v1 ... ; birth [; removal]`"));
        }
        let vertices = parts[0]
            .split_whitespace()
            .map(|v| {
                v.parse::<u32>()
                    .map_err(|_| parse_err(n, format!("invalid vertex `{v}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if vertices.is_empty() {
            return Err(parse_err(n, "simplex with no vertices"));
        }
        let value = |s: &str| -> Result<(String, f64)> {
            let x: f64 = s
                .parse()
                .map_err(|_| parse_err(n, format!("invalid filtration value `{s}`")))?;
            if !x.is_finite() {
                return Err(parse_err(n, format!("invalid filtration value `{s}`")));
            }
            Ok((s.to_string(), x))
        };
        let birth = value(parts[1])?;
        let removal = parts.get(2).map(|s| value(s)).transpose()?;
        raw.push((n, vertices, birth, removal));
    }
    let integral = raw.iter().all(|(_, _, b, r)| {
        b.0.parse::<i64>().is_ok() && r.as_ref().is_none_or(|r| r.0.parse::<i64>().is_ok())
    });
    if integral {
        let simplices = raw
            .into_iter()
            .map(|(_, v, b, r)| {
                Simplex::new(v, b.0.parse().unwrap(), r.map(|r| r.0.parse().unwrap()))
            })
            .collect();
        return Ok(SimplexList {
            simplices,
            value_map: None,
        });
    }
    let mut values: Vec<(f64, String)> = raw
        .iter()
        .flat_map(|(_, _, b, r)| std::iter::once(b).chain(r.iter()))
        .map(|(s, x)| (*x, s.clone()))
        .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    values.dedup_by(|a, b| a.0 == b.0);
    let grade = |x: f64| values.partition_point(|v| v.0 < x) as i64;
    let simplices = raw
        .iter()
        .map(|(_, v, b, r)| Simplex::new(v.clone(), grade(b.1), r.as_ref().map(|r| grade(r.1))))
        .collect();
    Ok(SimplexList {
        simplices,
        value_map: Some(values.into_iter().map(|(_, s)| s).collect()),
    })
}

pub fn parse_complex(text: &str) -> Result<FilteredComplex> {
    parse_simplices(text)?.complex()
}

pub fn write_complex(c: &FilteredComplex) -> String {
    c.simplices().iter().map(|s| format!("{s}\n")).collect()
}

/// The `field` directive of a presentation or morphism file, if any.
pub fn declared_field(text: &str) -> Result<Option<Field>> {
    for (n, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("field") {
            if rest.starts_with(char::is_whitespace) {
                return rest
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|e: Error| parse_err(n, e.to_string()));
            }
        }
    }
    Ok(None)
}

fn check_name(n: usize, name: &str) -> Result<()> {
    if name.is_empty() || name.contains(['+', ':', '#', ';']) || name.contains(char::is_whitespace)
    {
        return Err(parse_err(n, format!("invalid name `{name}`")));
    }
    Ok(())
}

fn parse_term(
    n: usize,
    field: Field,
    text: &str,
    gens: &GradedBasis,
) -> Result<(Scalar, u32, usize)> {
    let text = text.trim();
    let bad = || {
        parse_err(
            n,
            format!("invalid term `{text}`, expected `[coeff]t^e*name`"),
        )
    };
    let pos = text.find("t^").ok_or_else(bad)?;
    let coeff = match text[..pos].trim() {
        "" | "+" => field.one(),
        "-" => field.from_int(-1),
        c => field.parse_scalar(c).map_err(|e| e.at_line(n))?,
    };
    let (e, name) = text[pos + 2..].split_once('*').ok_or_else(bad)?;
    let e: u32 = e.trim().parse().map_err(|_| bad())?;
    let name = name.trim();
    let i = gens
        .index_of(name)
        .ok_or_else(|| parse_err(n, format!("unknown generator `{name}`")))?;
    Ok((coeff, e, i))
}

/// Parses `terms` or `0 @ degree` into an element of `gens`.
fn parse_element(
    n: usize,
    field: Field,
    text: &str,
    gens: &GradedBasis,
) -> Result<HomogeneousElement> {
    let text = text.trim();
    if let Some((z, d)) = text.split_once('@') {
        if z.trim() != "0" {
            return Err(parse_err(n, "only `0` may carry an explicit degree"));
        }
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| parse_err(n, format!("invalid degree `{}`", d.trim())))?;
        return Ok(HomogeneousElement::zero(d));
    }
    let terms = text
        .split('+')
        .map(|t| parse_term(n, field, t, gens))
        .collect::<Result<Vec<_>>>()?;
    HomogeneousElement::from_terms(gens, &terms).map_err(|e| parse_err(n, e.to_string()))
}

fn write_element(out: &mut String, x: &HomogeneousElement, basis: &GradedBasis) {
    if x.is_zero() {
        let _ = write!(out, "0 @ {}", x.degree());
        return;
    }
    let terms: Vec<String> = x
        .terms(basis)
        .map(|(i, m)| format!("{}t^{}*{}", m.coeff(), m.exponent(), basis.label(i)))
        .collect();
    out.push_str(&terms.join(" + "));
}

fn parse_presentation_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    field: Field,
) -> Result<Presentation> {
    let mut gens = Vec::new();
    let mut rel_lines = Vec::new();
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "field" => {}
            "gen" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, deg] = parts[..] else {
                    return Err(parse_err(n, "expected `gen <name> <degree>`"));
                };
                check_name(n, name)?;
                let deg: i64 = deg
                    .parse()
                    .map_err(|_| parse_err(n, format!("invalid degree `{deg}`")))?;
                gens.push((n, name.to_string(), deg));
            }
            "rel" => rel_lines.push((n, rest.trim())),
            other => return Err(parse_err(n, format!("unknown directive `{other}`"))),
        }
    }
    let mut seen = HashMap::new();
    for (n, name, _) in &gens {
        if let Some(prev) = seen.insert(name.clone(), *n) {
            return Err(parse_err(
                *n,
                format!("generator `{name}` already declared on line {prev}"),
            ));
        }
    }
    let gens = GradedBasis::new(gens.into_iter().map(|(_, l, d)| (l, d)))?;
    let mut rels = Vec::new();
    let mut cols = Vec::new();
    for (k, (n, text)) in rel_lines.into_iter().enumerate() {
        let (label, body) = match text.split_once(':') {
            Some((l, b)) => {
                check_name(n, l.trim())?;
                (l.trim().to_string(), b)
            }
            None => (format!("r{k}"), text),
        };
        let x = parse_element(n, field, body, &gens)?;
        if rels.iter().any(|(l, _, _)| *l == label) {
            return Err(parse_err(n, format!("relation `{label}` already declared")));
        }
        rels.push((label, x.degree(), n));
        cols.push(x.coords().to_vec());
    }
    let rels = GradedBasis::new(rels.into_iter().map(|(l, d, _)| (l, d)))?;
    Presentation::from_parts(field, gens, rels, cols)
}

fn check_declared(text: &str, field: Field) -> Result<()> {
    match declared_field(text)? {
        Some(f) if f != field => Err(Error::FieldMismatch(f.to_string(), field.to_string())),
        _ => Ok(()),
    }
}

pub fn parse_presentation(text: &str, field: Field) -> Result<Presentation> {
    check_declared(text, field)?;
    parse_presentation_lines(content_lines(text), field)
}

fn write_presentation_body(out: &mut String, p: &Presentation) {
    for (l, d) in p.gens().iter() {
        let _ = writeln!(out, "gen {l} {d}");
    }
    for j in 0..p.rels().len() {
        let _ = write!(out, "rel {}: ", p.rels().label(j));
        write_element(out, &p.incl().column_element(j), p.gens());
        out.push('\n');
    }
}

pub fn write_presentation(p: &Presentation) -> String {
    let mut out = format!("field {}\n", p.field());
    write_presentation_body(&mut out, p);
    out
}

pub fn parse_morphism(text: &str, field: Field) -> Result<PresentationMorphism> {
    check_declared(text, field)?;
    let mut sections: HashMap<&str, Vec<(usize, &str)>> = HashMap::new();
    let mut current = None;
    for (n, line) in content_lines(text) {
        if line.starts_with('[') {
            let name = match line {
                "[source]" => "source",
                "[target]" => "target",
                "[map]" => "map",
                _ => return Err(parse_err(n, format!("unknown section `{line}`"))),
            };
            if sections.contains_key(name) {
                return Err(parse_err(n, format!("section `{line}` repeated")));
            }
            sections.insert(name, Vec::new());
            current = Some(name);
            continue;
        }
        if line.starts_with("field") {
            continue;
        }
        match current {
            Some(s) => sections.get_mut(s).unwrap().push((n, line)),
            None => return Err(parse_err(n, "content before the first section")),
        }
    }
    let take = |s: &str| sections.get(s).cloned().unwrap_or_default();
    let src = parse_presentation_lines(take("source").into_iter(), field)?;
    let dst = parse_presentation_lines(take("target").into_iter(), field)?;
    let mut images: Vec<Option<HomogeneousElement>> = vec![None; src.gens().len()];
    for (n, line) in take("map") {
        let rest = line
            .strip_prefix("map")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_err(n, "expected `map <name> -> <terms>`"))?;
        let (name, body) = rest
            .split_once("->")
            .ok_or_else(|| parse_err(n, "expected `map <name> -> <terms>`"))?;
        let name = name.trim();
        let i = src
            .gens()
            .index_of(name)
            .ok_or_else(|| parse_err(n, format!("unknown source generator `{name}`")))?;
        if images[i].is_some() {
            return Err(parse_err(n, format!("image of `{name}` given twice")));
        }
        let body = body.trim();
        let x = if body == "0" {
            HomogeneousElement::zero(src.gens().degree(i))
        } else {
            parse_element(n, field, body, dst.gens())?
        };
        if x.degree() != src.gens().degree(i) {
            return Err(Error::NonHomogeneous(format!(
                "line {n}: image of `{name}` has degree {}, expected {}",
                x.degree(),
                src.gens().degree(i)
            )));
        }
        images[i] = Some(x);
    }
    let cols = images
        .into_iter()
        .map(|x| x.map(|x| x.coords().to_vec()).unwrap_or_default())
        .collect();
    let phi = GradedMatrix::from_columns(field, src.gens().clone(), dst.gens().clone(), cols)?;
    PresentationMorphism::new(src, dst, phi)
}

pub fn write_morphism(f: &PresentationMorphism) -> String {
    let mut out = format!("field {}\n[source]\n", f.field());
    write_presentation_body(&mut out, f.src());
    out.push_str("[target]\n");
    write_presentation_body(&mut out, f.dst());
    out.push_str("[map]\n");
    for j in 0..f.src().gens().len() {
        let _ = write!(out, "map {} -> ", f.src().gens().label(j));
        let x = f.phi().column_element(j);
        if x.is_zero() {
            out.push('0');
        } else {
            write_element(&mut out, &x, f.dst().gens());
        }
        out.push('\n');
    }
    out
}

/// One `<dim|-> <birth> <death|inf>` line per interval.
pub fn write_barcode(b: &Barcode) -> String {
    b.intervals().iter().map(|i| format!("{i}\n")).collect()
}
