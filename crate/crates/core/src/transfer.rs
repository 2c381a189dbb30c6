//! Conductor arithmetic from resolvent discriminants, transfer exponents,
//! and extraction of complete initial segments of Artin L-functions from
//! Galois number-field lists.
//!
//! A rational character expands over permutation characters,
//! `chi = sum k_Phi Phi`; conductors then multiply out of the resolvent
//! discriminants, `D_chi = prod D_Phi^{k_Phi}`, prime by prime.  The
//! transfer exponent `beta` (the bracket endpoint for the regular
//! auxiliary) converts a complete field list up to Galois root discriminant
//! `B` into a complete L-function list up to root conductor `B^beta`.

use crate::bound_search::ExponentMode;
use crate::char_table::{CharacterTable, ClassFunction, TableError};
use crate::factored::{cmp_roots, FactoredError, FactoredInteger};
use crate::linalg::{solve_exact, SolveOutcome};
use crate::tame::{exponent_bracket, TameError};
use crate::Rat;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error)]
pub enum TransferError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Tame(#[from] TameError),
    #[error(transparent)]
    Factored(#[from] FactoredError),
    #[error("gfl line {line}: {msg}")]
    Gfl { line: usize, msg: String },
    #[error("character {0} is not in the rational span of the given permutation characters")]
    NotInSpan(String),
    #[error("field {rank}: missing resolvent discriminant for {label}")]
    MissingResolvent { rank: u32, label: String },
    #[error("field {rank}: conductor exponent of {prime} is {value}, not a nonnegative integer")]
    BadExponent {
        rank: u32,
        prime: u64,
        value: String,
    },
    #[error("bound must be positive")]
    NonPositiveBound,
}

/// Exact expansion of a character over permutation characters.
#[derive(Debug, Clone, PartialEq)]
pub struct PermBasisSolution {
    pub char_label: String,
    /// Basis label -> rational coefficient; the label `1` denotes the
    /// unital character (it contributes conductor 1).
    pub coefficients: Vec<(String, Rat)>,
    /// Least common denominator of the coefficients.
    pub scale: BigInt,
}

/// One Galois field with its resolvent discriminants, factored.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldRecord {
    /// Position in the Galois-ordered list.
    pub rank: u32,
    /// Root discriminant of the Galois closure, display only.
    pub galois_rd: f64,
    pub resolvent_discs: BTreeMap<String, FactoredInteger>,
}

/// One computed L-function entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentEntry {
    pub rank: u32,
    pub conductor: FactoredInteger,
    pub root_conductor: f64,
}

/// Transfer exponent for `(G, chi)` with the regular auxiliary.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferExponent {
    pub beta: Rat,
    pub walp: Rat,
    pub alp: Rat,
    pub mode: ExponentMode,
    pub equal: bool,
}

/// A certified (or degraded) initial segment.
#[derive(Debug, Clone)]
pub struct Segment {
    pub char_label: String,
    pub beta: Rat,
    pub mode: ExponentMode,
    /// `B^beta`, display value.
    pub cutoff: f64,
    /// Entries with root conductor <= cutoff, ascending (rank breaks ties).
    pub entries: Vec<SegmentEntry>,
    /// Smallest root conductor when it falls under the certified cutoff.
    pub delta1: Option<SegmentEntry>,
    /// Smallest computed root conductor when it exceeds the cutoff
    /// (known but not certified minimal).
    pub uncertified_min: Option<SegmentEntry>,
    /// No record failed; the subset relation certifies completeness.
    pub certified: bool,
    /// Records dropped with the reason.
    pub skipped: Vec<(u32, String)>,
}

/// A parsed GFL file: the resolvent column binding plus field rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GflFile {
    pub uses: Vec<String>,
    pub fields: Vec<FieldRecord>,
}

/// Parse the GFL format: a `USES` line binding resolvent columns to
/// permutation-character labels, then one `FIELD` line per field with
/// rank, Galois root discriminant, and one factored discriminant per
/// column (`1` or `p^e,p^e,...`).
pub fn parse_gfl(text: &str) -> Result<GflFile, TransferError> {
    let mut uses: Option<Vec<String>> = None;
    let mut fields = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut tok = body.split_whitespace();
        let Some(key) = tok.next() else { continue };
        let err = |msg: &str| TransferError::Gfl {
            line,
            msg: msg.to_string(),
        };
        match key {
            "USES" => {
                let labels: Vec<String> = tok.map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(err("USES needs at least one label"));
                }
                if uses.replace(labels).is_some() {
                    return Err(err("duplicate USES line"));
                }
            }
            "FIELD" => {
                let Some(cols) = &uses else {
                    return Err(err("FIELD before USES"));
                };
                let rank: u32 = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|r| *r >= 1)
                    .ok_or_else(|| err("FIELD needs a rank >= 1"))?;
                let galois_rd: f64 = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("FIELD needs a Galois root discriminant"))?;
                let discs: Vec<&str> = tok.collect();
                if discs.len() != cols.len() {
                    return Err(err(&format!(
                        "FIELD has {} discriminants, USES has {} columns",
                        discs.len(),
                        cols.len()
                    )));
                }
                let mut map = BTreeMap::new();
                for (label, text) in cols.iter().zip(discs) {
                    let d = FactoredInteger::parse(text)?;
                    if !d.is_integral() {
                        return Err(err(&format!("discriminant {text} has a negative exponent")));
                    }
                    map.insert(label.clone(), d);
                }
                fields.push(FieldRecord {
                    rank,
                    galois_rd,
                    resolvent_discs: map,
                });
            }
            other => return Err(err(&format!("unknown record {other}"))),
        }
    }
    Ok(GflFile {
        uses: uses.ok_or(TransferError::Gfl {
            line: 0,
            msg: "missing USES line".into(),
        })?,
        fields,
    })
}

fn basis_function(table: &CharacterTable, label: &str) -> Result<ClassFunction, TableError> {
    if label == "1" {
        Ok(table.chars[0].class_function())
    } else {
        Ok(table.perm_row(label)?.class_function())
    }
}

/// Express `chi` as an exact rational combination of the named permutation
/// characters (`1` allowed for the unital character).
pub fn solve_in_perm_basis(
    table: &CharacterTable,
    char_label: &str,
    basis: &[String],
) -> Result<PermBasisSolution, TransferError> {
    let chi = table.char_row(char_label)?.class_function();
    let cols: Vec<ClassFunction> = basis
        .iter()
        .map(|l| basis_function(table, l))
        .collect::<Result<_, _>>()?;
    let k = table.class_count();
    let a: Vec<Vec<Rat>> = (0..k)
        .map(|j| cols.iter().map(|c| c.values[j].clone()).collect())
        .collect();
    let x = match solve_exact(&a, &chi.values) {
        SolveOutcome::Unique(x) | SolveOutcome::Underdetermined(x) => x,
        SolveOutcome::Inconsistent => return Err(TransferError::NotInSpan(char_label.to_string())),
    };
    let scale = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    Ok(PermBasisSolution {
        char_label: char_label.to_string(),
        coefficients: basis.iter().cloned().zip(x).collect(),
        scale,
    })
}

/// Conductor of the solved character from one field's resolvent
/// discriminants: per-prime exponent `sum k_Phi e_p(Phi)`, which must come
/// out a nonnegative integer.
pub fn conductor_from_resolvents(
    sol: &PermBasisSolution,
    rec: &FieldRecord,
) -> Result<FactoredInteger, TransferError> {
    let mut exps: BTreeMap<u64, Rat> = BTreeMap::new();
    for (label, k) in &sol.coefficients {
        if k.is_zero() || label == "1" {
            continue;
        }
        let disc =
            rec.resolvent_discs
                .get(label)
                .ok_or_else(|| TransferError::MissingResolvent {
                    rank: rec.rank,
                    label: label.clone(),
                })?;
        for (&p, &e) in disc.factors() {
            *exps.entry(p).or_insert_with(Rat::zero) += k * Rat::from_integer(BigInt::from(e));
        }
    }
    let mut factors = Vec::new();
    for (p, e) in exps {
        if !e.is_integer() || e.is_negative() {
            return Err(TransferError::BadExponent {
                rank: rec.rank,
                prime: p,
                value: e.to_string(),
            });
        }
        let ei: i64 = e.to_integer().to_i64().ok_or(TransferError::BadExponent {
            rank: rec.rank,
            prime: p,
            value: e.to_string(),
        })?;
        factors.push((p, ei));
    }
    Ok(FactoredInteger::from_factors(factors)?)
}

/// Transfer exponent for `(G, chi)`: `walp(G, chi, phi_G)`, upgraded to
/// `alp` when the group has the tame-wild property.
pub fn transfer_exponent(
    table: &CharacterTable,
    char_label: &str,
) -> Result<TransferExponent, TransferError> {
    let chi = table.char_row(char_label)?.class_function();
    let reg = table.regular_character();
    let bracket = exponent_bracket(table, &chi, &reg)?;
    let mode = if table.tame_wild {
        ExponentMode::AlphaTw
    } else {
        ExponentMode::AlphaHat
    };
    let beta = match mode {
        ExponentMode::AlphaHat => bracket.walp.clone(),
        ExponentMode::AlphaTw => bracket.alp.clone(),
    };
    Ok(TransferExponent {
        beta,
        walp: bracket.walp,
        alp: bracket.alp,
        mode,
        equal: bracket.equal,
    })
}

/// Exact test `D^{1/n} <= B^{p/q}`, i.e. `D^q <= B^{n p}` with `B`
/// rational: `Dnum^q * Bden^{n p} <= Bnum^{n p}` (all positive).
fn root_le_cutoff(d: &FactoredInteger, n: u64, bound: &Rat, beta: &Rat) -> bool {
    let p = beta.numer().to_biguint().expect("beta > 0");
    let q = beta.denom().to_biguint().expect("beta > 0");
    let np = (BigUint::from(n) * p).to_u32().expect("small exponent");
    let q = q.to_u32().expect("small exponent");
    let bnum = bound.numer().to_biguint().expect("bound > 0");
    let bden = bound.denom().to_biguint().expect("bound > 0");
    d.to_biguint().pow(q) * bden.pow(np) <= bnum.pow(np)
}

/// Extract the certified initial segment for `(G, chi)` from a field list
/// complete up to Galois root discriminant `bound` (caller-asserted).
///
/// Per-record failures are skipped with a note and withdraw the
/// completeness certificate; the run continues.
pub fn extract_segment(
    table: &CharacterTable,
    sol: &PermBasisSolution,
    fields: &[FieldRecord],
    bound: &Rat,
) -> Result<Segment, TransferError> {
    if !bound.is_positive() {
        return Err(TransferError::NonPositiveBound);
    }
    let exponent = transfer_exponent(table, &sol.char_label)?;
    let degree: u64 = table
        .char_row(&sol.char_label)?
        .degree()
        .to_u64()
        .expect("positive degree");
    let cutoff = bound
        .to_f64()
        .unwrap()
        .powf(exponent.beta.to_f64().unwrap());

    #[cfg(feature = "parallel")]
    let computed: Vec<(u32, Result<FactoredInteger, TransferError>)> = fields
        .par_iter()
        .map(|rec| (rec.rank, conductor_from_resolvents(sol, rec)))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let computed: Vec<(u32, Result<FactoredInteger, TransferError>)> = fields
        .iter()
        .map(|rec| (rec.rank, conductor_from_resolvents(sol, rec)))
        .collect();

    let mut skipped = Vec::new();
    let mut all_entries: Vec<SegmentEntry> = Vec::new();
    for (rank, res) in computed {
        match res {
            Ok(conductor) => {
                let root_conductor = conductor.root_value(degree);
                all_entries.push(SegmentEntry {
                    rank,
                    conductor,
                    root_conductor,
                });
            }
            Err(e) => skipped.push((rank, e.to_string())),
        }
    }
    // Exact ordering: cross-powered conductor comparison, rank tie-break.
    all_entries.sort_by(|a, b| {
        cmp_roots(&a.conductor, degree, &b.conductor, degree).then(a.rank.cmp(&b.rank))
    });
    let entries: Vec<SegmentEntry> = all_entries
        .iter()
        .filter(|e| root_le_cutoff(&e.conductor, degree, bound, &exponent.beta))
        .cloned()
        .collect();
    let certified = skipped.is_empty();
    let (delta1, uncertified_min) = if let Some(first) = entries.first() {
        if certified {
            (Some(first.clone()), None)
        } else {
            (None, Some(first.clone()))
        }
    } else {
        (None, all_entries.first().cloned())
    };
    Ok(Segment {
        char_label: sol.char_label.clone(),
        beta: exponent.beta,
        mode: exponent.mode,
        cutoff,
        entries,
        delta1,
        uncertified_min,
        certified,
        skipped,
    })
}

/// Parse a decimal string (`85`, `40.54`) into an exact rational.
pub fn parse_decimal_rat(text: &str) -> Option<Rat> {
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, text),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    if digits.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rat::new(numer * BigInt::from(sign), denom))
}
