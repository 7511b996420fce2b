//! Line-oriented text formats. All formats are UTF-8 with LF-terminated
//! lines, 1-based indices, and a leading keyword per line; `#` starts a
//! comment everywhere except DIMACS, which uses `c`.
//!
//! Instance (`.pic`):
//! ```text
//! pic <N> <M>
//! <c> <lo1> <hi1> ... <loc> <hic>     (M pack lines; c = 0 is an empty pack)
//! ```
//!
//! Witness (`.sel`): a single line `sel <i1> ... <iM>` of 1-based pack-local
//! interval indices.
//!
//! CNF (`.cnf`): standard DIMACS, `p cnf <n> <m>` followed by 0-terminated
//! clauses.
//!
//! Reduction map (`.map`):
//! ```text
//! map <n> <m>
//! var <i> <vpack> <cp1> <cp2> <cp3> <cp4> <j> <k> <l> <h>
//! ```
//! per variable: its variable-pack index, its four clause-pack indices, then
//! the clauses of its two positive and two negative occurrences.
//!
//! Assignment (`.val`): a single line `val <s1> ... <sn>` of signed
//! variables, `i` for true and `-i` for false, in ascending variable order.
//!
//! Every parser returns the offending 1-based line number on failure, and
//! printing then reparsing any value is the identity.

use std::fmt::Write as _;

use thiserror::Error;

use crate::pic::{Interval, Pack, PicInstance, Selection};
use crate::reduce::ReductionMap;
use crate::sat::{Clause, CnfFormula, Literal, Valuation, VariableOccurrences};

/// Largest accepted coordinate value; keeps every quantity inside `i64` as
/// well, whatever the consumer.
pub const MAX_BOUND: u64 = i64::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `{expected}`")]
    MissingHeader { expected: &'static str },
    #[error("expected {expected} fields, found {got}")]
    FieldCount { expected: usize, got: usize },
    #[error("`{token}` is not a valid {what}")]
    BadToken { token: String, what: &'static str },
    #[error("value `{token}` is out of range")]
    OutOfRange { token: String },
    #[error("expected {expected} lines of {what}, found {got}")]
    LineCount {
        expected: usize,
        got: usize,
        what: &'static str,
    },
    #[error("unexpected extra line")]
    TrailingLine,
    #[error("pack line declares {declared} intervals but carries {got}")]
    PackArity { declared: usize, got: usize },
    #[error("interval [{lo},{hi}] has lo > hi")]
    InvertedInterval { lo: u64, hi: u64 },
    #[error("interval [{lo},{hi}] escapes [1,{n_bound}]")]
    IntervalOutOfBounds { lo: u64, hi: u64, n_bound: u64 },
    #[error("duplicate interval [{lo},{hi}] in pack")]
    DuplicateInterval { lo: u64, hi: u64 },
    #[error("witness has {got} choices but the instance has {expected} packs")]
    WitnessArity { expected: usize, got: usize },
    #[error("choice {index} out of range for pack {pack} of size {size}")]
    WitnessIndex {
        pack: usize,
        index: usize,
        size: usize,
    },
    #[error("literal {literal} outside the declared {num_variables} variables")]
    LiteralOutOfRange { literal: i64, num_variables: usize },
    #[error("empty clause")]
    EmptyClause,
    #[error("clause not terminated by 0")]
    UnterminatedClause,
    #[error("declared {declared} clauses, found {got}")]
    ClauseCount { declared: usize, got: usize },
    #[error("map entry for variable {expected} found variable {got}")]
    MapVariableOrder { expected: usize, got: usize },
    #[error("pack index {index} conflicts with the canonical layout")]
    MapPackIndex { index: usize },
    #[error("clause occurrence pair must be ascending and within 1..={num_clauses}")]
    MapOccurrences { num_clauses: usize },
    #[error("clause {clause} token appears in {got} packs, expected 3")]
    MapTokenMultiplicity { clause: usize, got: usize },
    #[error("assignment mentions variable {variable} out of order or more than once")]
    ValuationOrder { variable: i64 },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Significant lines of a document: 1-based line number plus whitespace-split
/// fields, comments and blank lines skipped.
fn significant_lines<'a>(
    text: &'a str,
    comment: &'static str,
) -> impl Iterator<Item = (usize, Vec<&'a str>)> {
    text.lines().enumerate().filter_map(move |(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(comment) {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn parse_u64(line: usize, token: &str, what: &'static str) -> Result<u64, ParseError> {
    let value: u64 = token.parse().map_err(|_| {
        err(
            line,
            ParseErrorKind::BadToken {
                token: token.into(),
                what,
            },
        )
    })?;
    if value > MAX_BOUND {
        return Err(err(
            line,
            ParseErrorKind::OutOfRange {
                token: token.into(),
            },
        ));
    }
    Ok(value)
}

fn parse_usize(line: usize, token: &str, what: &'static str) -> Result<usize, ParseError> {
    Ok(parse_u64(line, token, what)? as usize)
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

pub fn parse_pic(text: &str) -> Result<PicInstance, ParseError> {
    let mut lines = significant_lines(text, "#");
    let (header_line, header) = lines.next().ok_or_else(|| {
        err(
            1,
            ParseErrorKind::MissingHeader {
                expected: "pic <N> <M>",
            },
        )
    })?;
    if header.len() != 3 || header[0] != "pic" {
        return Err(err(
            header_line,
            ParseErrorKind::MissingHeader {
                expected: "pic <N> <M>",
            },
        ));
    }
    let n_bound = parse_u64(header_line, header[1], "bound")?;
    if n_bound == 0 {
        return Err(err(
            header_line,
            ParseErrorKind::OutOfRange {
                token: header[1].into(),
            },
        ));
    }
    let num_packs = parse_usize(header_line, header[2], "pack count")?;

    let mut packs = Vec::with_capacity(num_packs);
    let mut last_line = header_line;
    for (line, fields) in lines.by_ref() {
        if packs.len() == num_packs {
            return Err(err(line, ParseErrorKind::TrailingLine));
        }
        last_line = line;
        let declared = parse_usize(line, fields[0], "interval count")?;
        if fields.len() != 1 + 2 * declared {
            return Err(err(
                line,
                ParseErrorKind::PackArity {
                    declared,
                    got: (fields.len() - 1) / 2,
                },
            ));
        }
        let mut intervals: Vec<Interval> = Vec::with_capacity(declared);
        for pair in fields[1..].chunks_exact(2) {
            let lo = parse_u64(line, pair[0], "interval endpoint")?;
            let hi = parse_u64(line, pair[1], "interval endpoint")?;
            if lo > hi {
                return Err(err(line, ParseErrorKind::InvertedInterval { lo, hi }));
            }
            if lo == 0 || hi > n_bound {
                return Err(err(
                    line,
                    ParseErrorKind::IntervalOutOfBounds { lo, hi, n_bound },
                ));
            }
            let iv = Interval::new(lo, hi);
            if intervals.contains(&iv) {
                return Err(err(line, ParseErrorKind::DuplicateInterval { lo, hi }));
            }
            intervals.push(iv);
        }
        packs.push(Pack::new(intervals));
    }
    if packs.len() != num_packs {
        return Err(err(
            last_line,
            ParseErrorKind::LineCount {
                expected: num_packs,
                got: packs.len(),
                what: "packs",
            },
        ));
    }
    Ok(PicInstance::new(n_bound, packs))
}

pub fn print_pic(instance: &PicInstance) -> String {
    let mut out = String::new();
    writeln!(out, "pic {} {}", instance.n_bound(), instance.num_packs()).unwrap();
    for pack in instance.packs() {
        write!(out, "{}", pack.len()).unwrap();
        for iv in pack.intervals() {
            write!(out, " {} {}", iv.lo(), iv.hi()).unwrap();
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

pub fn parse_witness(text: &str, instance: &PicInstance) -> Result<Selection, ParseError> {
    let mut lines = significant_lines(text, "#");
    let (line, fields) = lines.next().ok_or_else(|| {
        err(
            1,
            ParseErrorKind::MissingHeader {
                expected: "sel <i1> ... <iM>",
            },
        )
    })?;
    if fields[0] != "sel" {
        return Err(err(
            line,
            ParseErrorKind::MissingHeader {
                expected: "sel <i1> ... <iM>",
            },
        ));
    }
    if fields.len() - 1 != instance.num_packs() {
        return Err(err(
            line,
            ParseErrorKind::WitnessArity {
                expected: instance.num_packs(),
                got: fields.len() - 1,
            },
        ));
    }
    let mut choices = Vec::with_capacity(instance.num_packs());
    for (pack, token) in fields[1..].iter().enumerate() {
        let index = parse_usize(line, token, "witness index")?;
        let size = instance.packs()[pack].len();
        if index == 0 || index > size {
            return Err(err(
                line,
                ParseErrorKind::WitnessIndex {
                    pack: pack + 1,
                    index,
                    size,
                },
            ));
        }
        choices.push(index - 1);
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, ParseErrorKind::TrailingLine));
    }
    Ok(Selection::new(choices))
}

pub fn print_witness(selection: &Selection) -> String {
    let mut out = String::from("sel");
    for &choice in selection.choices() {
        write!(out, " {}", choice + 1).unwrap();
    }
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut lines = significant_lines(text, "c");
    let (header_line, header) = lines.next().ok_or_else(|| {
        err(
            1,
            ParseErrorKind::MissingHeader {
                expected: "p cnf <n> <m>",
            },
        )
    })?;
    if header.len() != 4 || header[0] != "p" || header[1] != "cnf" {
        return Err(err(
            header_line,
            ParseErrorKind::MissingHeader {
                expected: "p cnf <n> <m>",
            },
        ));
    }
    let num_variables = parse_usize(header_line, header[2], "variable count")?;
    let num_clauses = parse_usize(header_line, header[3], "clause count")?;

    let mut clauses = Vec::with_capacity(num_clauses);
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = header_line;
    for (line, fields) in lines {
        last_line = line;
        for token in fields {
            let value: i64 = token.parse().map_err(|_| {
                err(
                    line,
                    ParseErrorKind::BadToken {
                        token: token.into(),
                        what: "literal",
                    },
                )
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(err(line, ParseErrorKind::EmptyClause));
                }
                clauses.push(Clause::new(std::mem::take(&mut current)));
            } else {
                if value.unsigned_abs() as usize > num_variables {
                    return Err(err(
                        line,
                        ParseErrorKind::LiteralOutOfRange {
                            literal: value,
                            num_variables,
                        },
                    ));
                }
                current.push(Literal::from_signed(value).expect("nonzero"));
            }
        }
    }
    if !current.is_empty() {
        return Err(err(last_line, ParseErrorKind::UnterminatedClause));
    }
    if clauses.len() != num_clauses {
        return Err(err(
            last_line,
            ParseErrorKind::ClauseCount {
                declared: num_clauses,
                got: clauses.len(),
            },
        ));
    }
    Ok(CnfFormula::new(num_variables, clauses).expect("literal ranges checked during parse"))
}

pub fn print_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p cnf {} {}",
        formula.num_variables(),
        formula.num_clauses()
    )
    .unwrap();
    for clause in formula.clauses() {
        for lit in clause.literals() {
            write!(out, "{} ", lit.to_signed()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Reduction maps
// ---------------------------------------------------------------------------

pub fn parse_map(text: &str) -> Result<ReductionMap, ParseError> {
    let mut lines = significant_lines(text, "#");
    let (header_line, header) = lines.next().ok_or_else(|| {
        err(
            1,
            ParseErrorKind::MissingHeader {
                expected: "map <n> <m>",
            },
        )
    })?;
    if header.len() != 3 || header[0] != "map" {
        return Err(err(
            header_line,
            ParseErrorKind::MissingHeader {
                expected: "map <n> <m>",
            },
        ));
    }
    let num_variables = parse_usize(header_line, header[1], "variable count")?;
    let num_clauses = parse_usize(header_line, header[2], "clause count")?;
    if num_variables == 0 || 3 * num_clauses != 4 * num_variables {
        return Err(err(
            header_line,
            ParseErrorKind::OutOfRange {
                token: header[1].into(),
            },
        ));
    }

    let mut occurrences = Vec::with_capacity(num_variables);
    let mut token_uses = vec![0usize; num_clauses];
    let mut last_line = header_line;
    for (line, fields) in lines {
        if occurrences.len() == num_variables {
            return Err(err(line, ParseErrorKind::TrailingLine));
        }
        last_line = line;
        if fields.len() != 11 || fields[0] != "var" {
            return Err(err(
                line,
                ParseErrorKind::FieldCount {
                    expected: 11,
                    got: fields.len(),
                },
            ));
        }
        let variable = occurrences.len() + 1;
        let declared = parse_usize(line, fields[1], "variable number")?;
        if declared != variable {
            return Err(err(
                line,
                ParseErrorKind::MapVariableOrder {
                    expected: variable,
                    got: declared,
                },
            ));
        }
        // Canonical layout: variable packs first, then the variable's four
        // clause packs as one group.
        let vpack = parse_usize(line, fields[2], "pack index")?;
        if vpack != variable {
            return Err(err(line, ParseErrorKind::MapPackIndex { index: vpack }));
        }
        let base = num_variables + 4 * (variable - 1);
        for (offset, field) in fields[3..7].iter().enumerate() {
            let index = parse_usize(line, field, "pack index")?;
            if index != base + offset + 1 {
                return Err(err(line, ParseErrorKind::MapPackIndex { index }));
            }
        }
        let mut occ = [0usize; 4];
        for (slot, field) in fields[7..11].iter().enumerate() {
            let clause = parse_usize(line, field, "clause index")?;
            if clause == 0 || clause > num_clauses {
                return Err(err(line, ParseErrorKind::MapOccurrences { num_clauses }));
            }
            token_uses[clause - 1] += 1;
            occ[slot] = clause - 1;
        }
        if occ[0] >= occ[1] || occ[2] >= occ[3] {
            return Err(err(line, ParseErrorKind::MapOccurrences { num_clauses }));
        }
        occurrences.push(VariableOccurrences {
            pos: (occ[0], occ[1]),
            neg: (occ[2], occ[3]),
        });
    }
    if occurrences.len() != num_variables {
        return Err(err(
            last_line,
            ParseErrorKind::LineCount {
                expected: num_variables,
                got: occurrences.len(),
                what: "variable entries",
            },
        ));
    }
    for (clause, &uses) in token_uses.iter().enumerate() {
        if uses != 3 {
            return Err(err(
                last_line,
                ParseErrorKind::MapTokenMultiplicity {
                    clause: clause + 1,
                    got: uses,
                },
            ));
        }
    }
    Ok(ReductionMap::new(num_variables, num_clauses, occurrences))
}

pub fn print_map(map: &ReductionMap) -> String {
    let mut out = String::new();
    writeln!(out, "map {} {}", map.num_variables(), map.num_clauses()).unwrap();
    for variable in 1..=map.num_variables() {
        let occ = map.occurrences(variable);
        let packs = map.clause_packs(variable);
        writeln!(
            out,
            "var {} {} {} {} {} {} {} {} {} {}",
            variable,
            map.variable_pack(variable) + 1,
            packs[0] + 1,
            packs[1] + 1,
            packs[2] + 1,
            packs[3] + 1,
            occ.pos.0 + 1,
            occ.pos.1 + 1,
            occ.neg.0 + 1,
            occ.neg.1 + 1,
        )
        .unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// Assignments
// ---------------------------------------------------------------------------

pub fn parse_valuation(text: &str) -> Result<Valuation, ParseError> {
    let mut lines = significant_lines(text, "#");
    let (line, fields) = lines.next().ok_or_else(|| {
        err(
            1,
            ParseErrorKind::MissingHeader {
                expected: "val <s1> ... <sn>",
            },
        )
    })?;
    if fields[0] != "val" {
        return Err(err(
            line,
            ParseErrorKind::MissingHeader {
                expected: "val <s1> ... <sn>",
            },
        ));
    }
    let mut values = Vec::with_capacity(fields.len() - 1);
    for token in &fields[1..] {
        let value: i64 = token.parse().map_err(|_| {
            err(
                line,
                ParseErrorKind::BadToken {
                    token: (*token).into(),
                    what: "signed variable",
                },
            )
        })?;
        let variable = value.unsigned_abs() as usize;
        if variable != values.len() + 1 {
            return Err(err(
                line,
                ParseErrorKind::ValuationOrder { variable: value },
            ));
        }
        values.push(value > 0);
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, ParseErrorKind::TrailingLine));
    }
    Ok(Valuation::new(values))
}

pub fn print_valuation(valuation: &Valuation) -> String {
    let mut out = String::from("val");
    for (i, &value) in valuation.values().iter().enumerate() {
        let signed = (i + 1) as i64;
        write!(out, " {}", if value { signed } else { -signed }).unwrap();
    }
    out.push('\n');
    out
}
