//! Rational character tables: data model, GCT file ingestion, and the
//! derived arithmetic everything else consumes.
//!
//! A table is indexed by power-conjugacy classes (conjugacy classes merged
//! over generators of a cyclic subgroup).  Character rows take integer
//! values, one per class, and are exact; every operation here is pure and a
//! parsed table is immutable, so concurrent reads are safe.

use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GctError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing {0} header")]
    MissingHeader(&'static str),
    #[error("class sizes sum to {sum}, group order is {order}")]
    SizeSum { sum: u64, order: u64 },
    #[error("first class must be the identity (order 1, size 1, no power map)")]
    BadIdentityClass,
    #[error("element order {ord} of class {label} does not divide the group order")]
    OrderDivides { label: String, ord: u64 },
    #[error("class {label}: missing power map for prime {p}")]
    MissingPower { label: String, p: u64 },
    #[error("class {label}: power map for {p} sends order {ord} to order {got}, expected {want}")]
    PowerOrder {
        label: String,
        p: u64,
        ord: u64,
        got: u64,
        want: u64,
    },
    #[error("first character must be the constant 1")]
    MissingUnital,
    #[error("orthogonality failure between {a} and {b}: inner product {value}")]
    Orthogonality { a: String, b: String, value: String },
    #[error("permutation character {0} has a negative value")]
    NegativePerm(String),
    #[error("table declared complete but degree sum is {got}, group order {want}")]
    DegreeSum { got: String, want: u64 },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("class function has {got} values, table has {want} classes")]
    LengthMismatch { got: usize, want: usize },
    #[error("unknown class label {0}")]
    UnknownClass(String),
    #[error("unknown character label {0}")]
    UnknownChar(String),
    #[error("operation requires a nonconstant class function")]
    ConstantFunction,
    #[error("character {0} is not faithful")]
    NotFaithful(String),
    #[error("conjugation class {0} has element order > 2")]
    NotAnInvolution(String),
}

/// A power-conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub label: String,
    /// Element order of any representative.
    pub element_order: u64,
    pub size: u64,
    /// For each prime `p` dividing `element_order`, the index of the class
    /// of `tau^p`.  Composite powers are derived by iteration.
    pub power_map: BTreeMap<u64, usize>,
}

/// A labeled integer-valued row (character or permutation character).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRow {
    pub label: String,
    pub values: Vec<BigInt>,
}

impl CharRow {
    pub fn class_function(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().cloned().map(Rat::from_integer).collect(),
        }
    }

    /// Degree, the value at the identity class.
    pub fn degree(&self) -> &BigInt {
        &self.values[0]
    }
}

/// A rational-valued function on the table's classes; the common currency
/// for characters, auxiliary characters, and polytope points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassFunction {
    pub values: Vec<Rat>,
}

impl ClassFunction {
    pub fn from_integers(values: &[i64]) -> Self {
        ClassFunction {
            values: values
                .iter()
                .map(|&v| Rat::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Pointwise sum.
    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        if self.len() != other.len() {
            return Err(TableError::LengthMismatch {
                got: other.len(),
                want: self.len(),
            });
        }
        Ok(ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Pointwise product.
    pub fn multiply(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        if self.len() != other.len() {
            return Err(TableError::LengthMismatch {
                got: other.len(),
                want: self.len(),
            });
        }
        Ok(ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rat) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Pointwise shift by a scalar.
    pub fn shift(&self, k: &Rat) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v + k).collect(),
        }
    }

    /// `(check, hat, tilde)`: `check` is minus the least value, `hat` the
    /// largest value strictly below the identity value, `tilde` minus the
    /// greatest negative value (absent when no value is negative).
    pub fn extremes(&self) -> Result<Extremes, TableError> {
        if self.is_constant() {
            return Err(TableError::ConstantFunction);
        }
        let at_e = &self.values[0];
        let min = self.values.iter().min().unwrap();
        let hat = self.values.iter().filter(|v| *v < at_e).max().unwrap();
        let tilde = self
            .values
            .iter()
            .filter(|v| v.is_negative())
            .max()
            .map(|v| -v);
        Ok(Extremes {
            check: -min,
            hat: hat.clone(),
            tilde,
        })
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// Extreme values of a class function.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremes {
    pub check: Rat,
    pub hat: Rat,
    pub tilde: Option<Rat>,
}

/// Flags computed by [`CharacterTable::classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// All coordinates in the rationally-irreducible basis are nonnegative
    /// integers (and the rows reconstruct the function exactly).
    pub is_character: bool,
    pub is_nonnegative: bool,
    /// The identity value is attained only at the identity class.
    pub is_faithful: bool,
    /// `(f, f)` when it is a nonnegative integer.
    pub abs_constituents: Option<BigInt>,
}

/// A Galois type query: which character, and optionally which conjugation
/// class (element order 1 or 2) the bound is asked for.
#[derive(Debug, Clone)]
pub struct GaloisTypeQuery {
    pub char_label: String,
    pub conj_label: Option<String>,
}

/// A parsed rational character table.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_name: String,
    pub group_order: u64,
    /// The group is known to satisfy the tame-wild property.
    pub tame_wild: bool,
    /// All rational irreducibles are present (verified by the degree sum).
    pub complete: bool,
    pub classes: Vec<ConjClass>,
    pub chars: Vec<CharRow>,
    pub perm_chars: Vec<CharRow>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, label: &str) -> Result<usize, TableError> {
        self.classes
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| TableError::UnknownClass(label.to_string()))
    }

    pub fn char_row(&self, label: &str) -> Result<&CharRow, TableError> {
        self.chars
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| TableError::UnknownChar(label.to_string()))
    }

    pub fn perm_row(&self, label: &str) -> Result<&CharRow, TableError> {
        self.perm_chars
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| TableError::UnknownChar(label.to_string()))
    }

    fn check_len(&self, f: &ClassFunction) -> Result<(), TableError> {
        if f.len() != self.class_count() {
            return Err(TableError::LengthMismatch {
                got: f.len(),
                want: self.class_count(),
            });
        }
        Ok(())
    }

    /// `(f, g) = (1/|G|) sum_j |C_j| f(C_j) g(C_j)`.
    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Rat, TableError> {
        self.check_len(f)?;
        self.check_len(g)?;
        let mut acc = Rat::zero();
        for (j, class) in self.classes.iter().enumerate() {
            acc += Rat::from_integer(BigInt::from(class.size)) * &f.values[j] * &g.values[j];
        }
        Ok(acc / Rat::from_integer(BigInt::from(self.group_order)))
    }

    /// Value extremes of `f` (see [`ClassFunction::extremes`]).
    pub fn value_extremes(&self, f: &ClassFunction) -> Result<Extremes, TableError> {
        self.check_len(f)?;
        f.extremes()
    }

    /// The regular class function: `|G|` at the identity, 0 elsewhere.
    pub fn regular_character(&self) -> ClassFunction {
        let mut values = vec![Rat::zero(); self.class_count()];
        values[0] = Rat::from_integer(BigInt::from(self.group_order));
        ClassFunction { values }
    }

    /// Indices of classes with element order 1 or 2 (candidate placements
    /// of complex conjugation, identity included).
    pub fn conjugation_classes(&self) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.element_order <= 2)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the class of `tau^k` for `tau` in class `idx`, via iterated
    /// prime power maps.  Depends only on `gcd(k, element_order)`.
    pub fn class_power(&self, idx: usize, k: u64) -> usize {
        let ord = self.classes[idx].element_order;
        let mut g = k.gcd(&ord);
        let mut at = idx;
        while g > 1 {
            // Smallest prime factor of g; g divides the current order.
            let p = (2..).find(|p| g % p == 0).unwrap();
            at = self.classes[at].power_map[&p];
            g /= p;
        }
        at
    }

    /// Faithfulness of `f`: the identity value is attained nowhere else.
    pub fn is_faithful(&self, f: &ClassFunction) -> Result<bool, TableError> {
        self.check_len(f)?;
        let at_e = &f.values[0];
        Ok(f.values.iter().skip(1).all(|v| v != at_e))
    }

    /// Coordinates of `f` in the character-row basis,
    /// `x_i = (f, chi_i) / (chi_i, chi_i)`.
    pub fn coordinates(&self, f: &ClassFunction) -> Result<Vec<Rat>, TableError> {
        self.chars
            .iter()
            .map(|row| {
                let chi = row.class_function();
                let num = self.inner_product(f, &chi)?;
                let den = self.inner_product(&chi, &chi)?;
                Ok(num / den)
            })
            .collect()
    }

    /// Classification flags for `f`.
    pub fn classify(&self, f: &ClassFunction) -> Result<Classification, TableError> {
        self.check_len(f)?;
        let coords = self.coordinates(f)?;
        // Residual check so partial tables cannot misreport membership.
        let mut rebuilt = vec![Rat::zero(); self.class_count()];
        for (x, row) in coords.iter().zip(&self.chars) {
            for (acc, v) in rebuilt.iter_mut().zip(&row.values) {
                *acc += x * Rat::from_integer(v.clone());
            }
        }
        let spans = rebuilt.iter().zip(&f.values).all(|(a, b)| a == b);
        let is_character =
            spans && coords.iter().all(|x| x.is_integer() && !x.is_negative()) && !f.is_zero();
        let norm = self.inner_product(f, f)?;
        let abs_constituents = if norm.is_integer() && !norm.is_negative() {
            Some(norm.to_integer())
        } else {
            None
        };
        Ok(Classification {
            is_character,
            is_nonnegative: f.is_nonnegative(),
            is_faithful: self.is_faithful(f)?,
            abs_constituents,
        })
    }

    /// Character rows that are faithful and not the unital character.
    pub fn faithful_chars(&self) -> Vec<&CharRow> {
        self.chars
            .iter()
            .skip(1)
            .filter(|row| {
                self.is_faithful(&row.class_function())
                    .expect("row length matches table")
            })
            .collect()
    }

    /// Resolve a Galois type query, enforcing faithfulness of the character
    /// and element order <= 2 for the conjugation class.
    pub fn resolve_query(&self, q: &GaloisTypeQuery) -> Result<(usize, Option<usize>), TableError> {
        let chi_idx = self
            .chars
            .iter()
            .position(|c| c.label == q.char_label)
            .ok_or_else(|| TableError::UnknownChar(q.char_label.clone()))?;
        let chi = self.chars[chi_idx].class_function();
        if !self.is_faithful(&chi)? {
            return Err(TableError::NotFaithful(q.char_label.clone()));
        }
        let conj = match &q.conj_label {
            None => None,
            Some(label) => {
                let idx = self.class_index(label)?;
                if self.classes[idx].element_order > 2 {
                    return Err(TableError::NotAnInvolution(label.clone()));
                }
                Some(idx)
            }
        };
        Ok((chi_idx, conj))
    }
}

/// Parse the GCT file format.
///
/// Line-oriented UTF-8; `#` starts a comment; tokens are whitespace
/// separated.  Headers `GROUP`, `ORDER`, `TW`, `COMPLETE` come first, then
/// `CLASS`, `POWER`, `CHAR`, `PERM` records.  Declaration order of classes
/// and characters is authoritative; every vector is index-aligned to it.
pub fn parse_gct(text: &str) -> Result<CharacterTable, GctError> {
    let mut group_name: Option<String> = None;
    let mut group_order: Option<u64> = None;
    let mut tame_wild: Option<bool> = None;
    let mut complete: Option<bool> = None;
    let mut classes: Vec<ConjClass> = Vec::new();
    let mut powers: Vec<(usize, String, u64, String)> = Vec::new();
    let mut chars: Vec<CharRow> = Vec::new();
    let mut perms: Vec<CharRow> = Vec::new();

    let syntax = |line: usize, msg: &str| GctError::Syntax {
        line,
        msg: msg.to_string(),
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut tok = body.split_whitespace();
        let Some(key) = tok.next() else { continue };
        match key {
            "GROUP" => {
                let name = tok
                    .next()
                    .ok_or_else(|| syntax(line, "GROUP needs a name"))?;
                if group_name.replace(name.to_string()).is_some() {
                    return Err(syntax(line, "duplicate GROUP header"));
                }
            }
            "ORDER" => {
                let v = tok
                    .next()
                    .and_then(|t| t.parse::<u64>().ok())
                    .filter(|v| *v > 0)
                    .ok_or_else(|| syntax(line, "ORDER needs a positive integer"))?;
                if group_order.replace(v).is_some() {
                    return Err(syntax(line, "duplicate ORDER header"));
                }
            }
            "TW" | "COMPLETE" => {
                let v = match tok.next() {
                    Some("0") => false,
                    Some("1") => true,
                    _ => return Err(syntax(line, "flag must be 0 or 1")),
                };
                let slot = if key == "TW" {
                    &mut tame_wild
                } else {
                    &mut complete
                };
                if slot.replace(v).is_some() {
                    return Err(syntax(line, "duplicate flag header"));
                }
            }
            "CLASS" => {
                let label = tok
                    .next()
                    .ok_or_else(|| syntax(line, "CLASS needs a label"))?;
                let ord = tok
                    .next()
                    .and_then(|t| t.parse::<u64>().ok())
                    .filter(|v| *v > 0)
                    .ok_or_else(|| syntax(line, "CLASS needs a positive element order"))?;
                let size = tok
                    .next()
                    .and_then(|t| t.parse::<u64>().ok())
                    .filter(|v| *v > 0)
                    .ok_or_else(|| syntax(line, "CLASS needs a positive size"))?;
                if classes.iter().any(|c| c.label == label) {
                    return Err(GctError::DuplicateLabel(label.to_string()));
                }
                classes.push(ConjClass {
                    label: label.to_string(),
                    element_order: ord,
                    size,
                    power_map: BTreeMap::new(),
                });
            }
            "POWER" => {
                let from = tok
                    .next()
                    .ok_or_else(|| syntax(line, "POWER needs a class label"))?;
                let p = tok
                    .next()
                    .and_then(|t| t.parse::<u64>().ok())
                    .filter(|v| *v >= 2)
                    .ok_or_else(|| syntax(line, "POWER needs a prime"))?;
                let to = tok
                    .next()
                    .ok_or_else(|| syntax(line, "POWER needs a target label"))?;
                powers.push((line, from.to_string(), p, to.to_string()));
            }
            "CHAR" | "PERM" => {
                let label = tok
                    .next()
                    .ok_or_else(|| syntax(line, "row needs a label"))?;
                let values: Vec<BigInt> = tok
                    .map(|t| t.parse::<BigInt>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| syntax(line, "row values must be integers"))?;
                if values.len() != classes.len() {
                    return Err(syntax(
                        line,
                        &format!(
                            "row has {} values, expected {}",
                            values.len(),
                            classes.len()
                        ),
                    ));
                }
                let dest = if key == "CHAR" {
                    &mut chars
                } else {
                    &mut perms
                };
                if dest.iter().any(|c| c.label == label) {
                    return Err(GctError::DuplicateLabel(label.to_string()));
                }
                dest.push(CharRow {
                    label: label.to_string(),
                    values,
                });
            }
            other => return Err(syntax(line, &format!("unknown record {other}"))),
        }
    }

    let group_name = group_name.ok_or(GctError::MissingHeader("GROUP"))?;
    let group_order = group_order.ok_or(GctError::MissingHeader("ORDER"))?;
    let tame_wild = tame_wild.ok_or(GctError::MissingHeader("TW"))?;
    let complete = complete.ok_or(GctError::MissingHeader("COMPLETE"))?;
    if classes.is_empty() {
        return Err(GctError::MissingHeader("CLASS"));
    }
    if chars.is_empty() {
        return Err(GctError::MissingUnital);
    }

    // Resolve power maps to indices.
    for (line, from, p, to) in powers {
        let fi = classes
            .iter()
            .position(|c| c.label == from)
            .ok_or_else(|| GctError::Syntax {
                line,
                msg: format!("unknown class {from}"),
            })?;
        let ti = classes
            .iter()
            .position(|c| c.label == to)
            .ok_or_else(|| GctError::Syntax {
                line,
                msg: format!("unknown class {to}"),
            })?;
        classes[fi].power_map.insert(p, ti);
    }

    let table = CharacterTable {
        group_name,
        group_order,
        tame_wild,
        complete,
        classes,
        chars,
        perm_chars: perms,
    };
    verify(&table)?;
    Ok(table)
}

fn verify(t: &CharacterTable) -> Result<(), GctError> {
    let id = &t.classes[0];
    if id.element_order != 1 || id.size != 1 || !id.power_map.is_empty() {
        return Err(GctError::BadIdentityClass);
    }
    let sum: u64 = t.classes.iter().map(|c| c.size).sum();
    if sum != t.group_order {
        return Err(GctError::SizeSum {
            sum,
            order: t.group_order,
        });
    }
    for class in &t.classes {
        if t.group_order % class.element_order != 0 {
            return Err(GctError::OrderDivides {
                label: class.label.clone(),
                ord: class.element_order,
            });
        }
        let mut ord = class.element_order;
        let mut p = 2;
        while ord > 1 {
            if ord % p == 0 {
                let target = *class
                    .power_map
                    .get(&p)
                    .ok_or_else(|| GctError::MissingPower {
                        label: class.label.clone(),
                        p,
                    })?;
                let want = class.element_order / p;
                let got = t.classes[target].element_order;
                if got != want {
                    return Err(GctError::PowerOrder {
                        label: class.label.clone(),
                        p,
                        ord: class.element_order,
                        got,
                        want,
                    });
                }
                while ord % p == 0 {
                    ord /= p;
                }
            }
            p += 1;
        }
    }

    if !t.chars[0].values.iter().all(One::is_one) {
        return Err(GctError::MissingUnital);
    }

    // Row orthogonality over all pairs of character rows.
    for (i, a) in t.chars.iter().enumerate() {
        for (j, b) in t.chars.iter().enumerate().skip(i) {
            let ip = t
                .inner_product(&a.class_function(), &b.class_function())
                .expect("row lengths verified");
            let bad = if i == j {
                !ip.is_integer() || ip <= Rat::zero()
            } else {
                !ip.is_zero()
            };
            if bad || (i == 0 && j == 0 && !ip.is_one()) {
                return Err(GctError::Orthogonality {
                    a: a.label.clone(),
                    b: b.label.clone(),
                    value: ip.to_string(),
                });
            }
        }
    }

    for p in &t.perm_chars {
        if p.values.iter().any(|v| v.is_negative()) {
            return Err(GctError::NegativePerm(p.label.clone()));
        }
    }

    // Completeness: sum of chi(e)^2 / (chi, chi) over the rows equals |G|
    // exactly when every rational irreducible is present.
    if t.complete {
        let mut acc = Rat::zero();
        for row in &t.chars {
            let chi = row.class_function();
            let norm = t.inner_product(&chi, &chi).expect("verified");
            let deg = Rat::from_integer(row.degree().clone());
            acc += &deg * &deg / norm;
        }
        if acc != Rat::from_integer(BigInt::from(t.group_order)) {
            return Err(GctError::DegreeSum {
                got: acc.to_string(),
                want: t.group_order,
            });
        }
    }
    Ok(())
}

impl std::str::FromStr for CharacterTable {
    type Err = GctError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gct(s)
    }
}
