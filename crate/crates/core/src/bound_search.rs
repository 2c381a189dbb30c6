//! Auxiliary characters and the conductor bound search.
//!
//! For a type `(G, c, chi)` and a nonnegative auxiliary `phi`, the bound is
//! `m(G, c, chi, phi, u) = M(phi(e), phi(c), (phi, 1))^{u(chi, phi)}` with
//! `u` one of the bracket exponents `walp <= alp`; `alp` is only valid when
//! the group has the tame-wild property.  The search evaluates the linear,
//! square, quadratic and Galois constructions, the table's permutation
//! characters, and the polytope vertices, takes the max over candidates
//! for each conjugation class and the min over classes.

use crate::char_table::{CharacterTable, ClassFunction, TableError};
use crate::kernel::{big_m, KernelError, MResult};
use crate::polytope::{enumerate_vertices, PolytopeError, Vertex, DEFAULT_VERTEX_CAP};
use crate::tame::{exponent_bracket, ExponentBracket, TameError};
use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use std::collections::HashMap;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Tame(#[from] TameError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("auxiliary construction {0:?} produced a negative value")]
    NegativeAux(AuxMethod),
    #[error("quadratic construction needs a negative character value")]
    NoNegativeValue,
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("no conjugation class of element order <= 2")]
    NoConjugationClass,
    #[error("signature bound needs n >= 2")]
    DegreeTooSmall,
}

/// How an auxiliary character was obtained.  The ordering is the
/// tie-breaking order for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AuxMethod {
    Linear,
    Square,
    Quadratic,
    Galois,
    Permutation,
    Vertex,
}

impl AuxMethod {
    pub fn tag(self) -> char {
        match self {
            AuxMethod::Linear => 'l',
            AuxMethod::Square => 's',
            AuxMethod::Quadratic => 'q',
            AuxMethod::Galois => 'g',
            AuxMethod::Permutation => 'p',
            AuxMethod::Vertex => 'v',
        }
    }

    pub fn from_tag(tag: char) -> Option<Self> {
        Some(match tag {
            'l' => AuxMethod::Linear,
            's' => AuxMethod::Square,
            'q' => AuxMethod::Quadratic,
            'g' => AuxMethod::Galois,
            'p' => AuxMethod::Permutation,
            'v' => AuxMethod::Vertex,
            _ => return None,
        })
    }
}

/// Which bracket endpoint supplies the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentMode {
    /// `walp`, valid unconditionally.
    AlphaHat,
    /// `alp`, valid for groups with the tame-wild property.
    AlphaTw,
}

/// A nonnegative auxiliary character candidate.
#[derive(Debug, Clone)]
pub struct AuxCandidate {
    pub phi: ClassFunction,
    pub method: AuxMethod,
    pub source: String,
}

/// Build one of the four derived auxiliary characters for `chi`.
pub fn build_aux(
    table: &CharacterTable,
    chi: &ClassFunction,
    method: AuxMethod,
) -> Result<AuxCandidate, SearchError> {
    let ex = table.value_extremes(chi)?;
    let (phi, source) = match method {
        AuxMethod::Linear => (chi.shift(&ex.check), "chi + check".to_string()),
        AuxMethod::Square => (chi.multiply(chi)?, "chi^2".to_string()),
        AuxMethod::Quadratic => {
            let tilde = ex.tilde.ok_or(SearchError::NoNegativeValue)?;
            (
                chi.multiply(&chi.shift(&tilde))?,
                "chi * (chi + tilde)".to_string(),
            )
        }
        AuxMethod::Galois => (table.regular_character(), "regular".to_string()),
        AuxMethod::Permutation | AuxMethod::Vertex => {
            panic!("build_aux only constructs the four derived candidates")
        }
    };
    if !phi.is_nonnegative() {
        return Err(SearchError::NegativeAux(method));
    }
    Ok(AuxCandidate {
        phi,
        method,
        source,
    })
}

/// Turn a polytope vertex into an integer candidate by clearing
/// denominators (the bound is scale invariant, so nothing is lost).
pub fn vertex_candidate(v: &Vertex, index: usize) -> AuxCandidate {
    let lcm = v.y.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scale = Rat::from_integer(lcm);
    let phi = ClassFunction {
        values: v.y.iter().map(|r| r * &scale).collect(),
    };
    AuxCandidate {
        phi,
        method: AuxMethod::Vertex,
        source: format!("vertex#{index}"),
    }
}

/// A fully evaluated candidate at one conjugation class.
#[derive(Debug, Clone)]
pub struct EvalDetail {
    pub value: f64,
    pub exponent: Rat,
    pub mode: ExponentMode,
    /// `alp > walp` and the `alp` endpoint was used.
    pub tw_improved: bool,
    pub bracket: ExponentBracket,
    pub m: MResult,
}

fn m_args(
    table: &CharacterTable,
    phi: &ClassFunction,
    conj_idx: usize,
) -> Result<(f64, f64, f64), SearchError> {
    let n = phi.values[0].to_f64().unwrap();
    let r = phi.values[conj_idx].to_f64().unwrap();
    let u = table.inner_product(phi, &table.chars[0].class_function())?;
    Ok((n, r, u.to_f64().unwrap()))
}

/// Evaluate one candidate at one conjugation class.
pub fn eval_bound(
    table: &CharacterTable,
    chi: &ClassFunction,
    conj_idx: usize,
    cand: &AuxCandidate,
    mode: ExponentMode,
    tol: f64,
) -> Result<EvalDetail, SearchError> {
    if cand.phi.is_zero() || !cand.phi.is_nonnegative() {
        return Err(SearchError::NegativeAux(cand.method));
    }
    let bracket = exponent_bracket(table, chi, &cand.phi)?;
    let exponent = match mode {
        ExponentMode::AlphaHat => bracket.walp.clone(),
        ExponentMode::AlphaTw => bracket.alp.clone(),
    };
    let (n, r, u) = m_args(table, &cand.phi, conj_idx)?;
    let m = big_m(n, r, u, tol)?;
    let value = m.value.powf(exponent.to_f64().unwrap());
    let tw_improved = mode == ExponentMode::AlphaTw && bracket.alp > bracket.walp;
    Ok(EvalDetail {
        value,
        exponent,
        mode,
        tw_improved,
        bracket,
        m,
    })
}

/// Options for [`search_bound`].
#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub vertex_cap: Option<u64>,
    pub tol: Option<f64>,
    /// Restrict to these methods (candidate construction filter).
    pub methods: Option<Vec<AuxMethod>>,
    /// Replace the whole candidate set.
    pub candidates_override: Option<Vec<AuxCandidate>>,
    /// Force an exponent mode instead of the tame-wild rule.
    pub mode_override: Option<ExponentMode>,
}

/// One audit entry: a candidate at a conjugation class, or a skip note.
#[derive(Debug, Clone)]
pub struct AuditRow {
    pub method: AuxMethod,
    pub source: String,
    pub conj_label: String,
    pub value: Option<f64>,
    pub exponent: Option<Rat>,
    pub note: Option<String>,
}

/// Best bound for one conjugation class.
#[derive(Debug, Clone)]
pub struct ConjBest {
    pub conj_label: String,
    pub value: f64,
    pub method: AuxMethod,
    pub source: String,
    /// All candidates within the tie window of the max.
    pub achievers: Vec<String>,
}

/// The result of the full search: `min` over conjugation classes of the
/// `max` over candidates.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub group_name: String,
    pub char_label: String,
    /// The bound (a valid conditional lower bound on root conductors).
    pub value: f64,
    pub method: AuxMethod,
    pub source: String,
    pub best_phi: ClassFunction,
    pub exponent_used: Rat,
    pub exponent_mode: ExponentMode,
    pub tw_improved: bool,
    pub min_conj_label: String,
    pub per_conjugation: Vec<ConjBest>,
    pub all_evaluated: Vec<AuditRow>,
    /// Vertices were skipped because the subset count exceeded the cap.
    pub vertices_skipped: bool,
}

impl BoundReport {
    /// Method tag, uppercased when the tame-wild exponent strictly
    /// improved the winning bound.
    pub fn tag(&self) -> char {
        if self.tw_improved {
            self.method.tag().to_ascii_uppercase()
        } else {
            self.method.tag()
        }
    }
}

const TIE_REL: f64 = 1e-9;

fn build_candidates(
    table: &CharacterTable,
    chi: &ClassFunction,
    opts: &SearchOptions,
    audit: &mut Vec<AuditRow>,
) -> Result<(Vec<AuxCandidate>, bool), SearchError> {
    if let Some(cands) = &opts.candidates_override {
        return Ok((cands.clone(), false));
    }
    let allowed = |m: AuxMethod| opts.methods.as_ref().is_none_or(|ms| ms.contains(&m));
    let mut out = Vec::new();
    for method in [
        AuxMethod::Linear,
        AuxMethod::Square,
        AuxMethod::Quadratic,
        AuxMethod::Galois,
    ] {
        if allowed(method) {
            out.push(build_aux(table, chi, method)?);
        }
    }
    if allowed(AuxMethod::Permutation) {
        for row in &table.perm_chars {
            out.push(AuxCandidate {
                phi: row.class_function(),
                method: AuxMethod::Permutation,
                source: row.label.clone(),
            });
        }
    }
    let mut vertices_skipped = false;
    if allowed(AuxMethod::Vertex) {
        let cap = opts.vertex_cap.unwrap_or(DEFAULT_VERTEX_CAP);
        match enumerate_vertices(table, cap) {
            Ok(vs) => {
                for (i, v) in vs.iter().enumerate() {
                    out.push(vertex_candidate(v, i));
                }
            }
            Err(e @ PolytopeError::CapExceeded { .. }) => {
                vertices_skipped = true;
                audit.push(AuditRow {
                    method: AuxMethod::Vertex,
                    source: "all".into(),
                    conj_label: "-".into(),
                    value: None,
                    exponent: None,
                    note: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((out, vertices_skipped))
}

/// Search the candidate set for the best bound on `(G, chi)`.
///
/// The exponent mode follows the table's tame-wild flag (`alp` when set,
/// `walp` otherwise) unless overridden.  Candidate evaluation is
/// order-independent: ties within `1e-9` are resolved by method tag in the
/// order `l < s < q < g < p < v`, then by source label.
pub fn search_bound(
    table: &CharacterTable,
    char_label: &str,
    opts: &SearchOptions,
) -> Result<BoundReport, SearchError> {
    let chi_row = table.char_row(char_label)?;
    let chi = chi_row.class_function();
    if !table.is_faithful(&chi)? {
        return Err(TableError::NotFaithful(char_label.to_string()).into());
    }
    if chi.is_constant() {
        return Err(TableError::ConstantFunction.into());
    }
    let mode = opts.mode_override.unwrap_or(if table.tame_wild {
        ExponentMode::AlphaTw
    } else {
        ExponentMode::AlphaHat
    });
    let tol = opts.tol.unwrap_or(crate::kernel::DEFAULT_TOL);

    let mut audit = Vec::new();
    let (mut candidates, vertices_skipped) = build_candidates(table, &chi, opts, &mut audit)?;
    candidates.sort_by(|a, b| (a.method, &a.source).cmp(&(b.method, &b.source)));
    if candidates.is_empty() {
        return Err(SearchError::EmptyCandidates);
    }

    // Exponent brackets are class-independent; resolve them once and drop
    // candidates with undefined brackets (constant phi gives no bound).
    let mut prepared: Vec<(AuxCandidate, ExponentBracket, Rat)> = Vec::new();
    for cand in candidates {
        match exponent_bracket(table, &chi, &cand.phi) {
            Ok(bracket) => {
                let exponent = match mode {
                    ExponentMode::AlphaHat => bracket.walp.clone(),
                    ExponentMode::AlphaTw => bracket.alp.clone(),
                };
                prepared.push((cand, bracket, exponent));
            }
            Err(TameError::AllRatiosUndefined) => audit.push(AuditRow {
                method: cand.method,
                source: cand.source.clone(),
                conj_label: "-".into(),
                value: None,
                exponent: None,
                note: Some("constant auxiliary, no usable ratio".into()),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    if prepared.is_empty() {
        return Err(SearchError::EmptyCandidates);
    }

    let conj = table.conjugation_classes();
    if conj.is_empty() {
        return Err(SearchError::NoConjugationClass);
    }

    // Collapse conjugation classes on which every candidate takes the same
    // value; keep a representative index for each signature.
    let mut signature_of: Vec<(usize, usize)> = Vec::new(); // (class idx, repr slot)
    let mut signatures: Vec<(Vec<Rat>, usize)> = Vec::new();
    for &cidx in &conj {
        let sig: Vec<Rat> = prepared
            .iter()
            .map(|(cand, _, _)| cand.phi.values[cidx].clone())
            .collect();
        let slot = match signatures.iter().position(|(s, _)| *s == sig) {
            Some(s) => s,
            None => {
                signatures.push((sig, cidx));
                signatures.len() - 1
            }
        };
        signature_of.push((cidx, slot));
    }

    // Unique M arguments across (candidate, representative class).
    let mut arg_list: Vec<(f64, f64, f64)> = Vec::new();
    let mut arg_index: HashMap<(u64, u64, u64), usize> = HashMap::new();
    let mut pair_args: Vec<Vec<usize>> = Vec::new(); // [slot][cand] -> arg id
    for (_, repr) in &signatures {
        let mut per_cand = Vec::with_capacity(prepared.len());
        for (cand, _, _) in &prepared {
            let (n, r, u) = m_args(table, &cand.phi, *repr)?;
            let key = (n.to_bits(), r.to_bits(), u.to_bits());
            let id = *arg_index.entry(key).or_insert_with(|| {
                arg_list.push((n, r, u));
                arg_list.len() - 1
            });
            per_cand.push(id);
        }
        pair_args.push(per_cand);
    }
    let m_values = batch_m(&arg_list, tol)?;

    // Per-signature max with deterministic tie handling.
    let mut slot_best: Vec<ConjBest> = Vec::new();
    for (slot, per_cand) in pair_args.iter().enumerate() {
        let repr = signatures[slot].1;
        let repr_label = table.classes[repr].label.clone();
        let mut best: Option<(f64, usize)> = None;
        let mut values = Vec::with_capacity(prepared.len());
        for (ci, (cand, _, exponent)) in prepared.iter().enumerate() {
            let m = &m_values[per_cand[ci]];
            let value = m.value.powf(exponent.to_f64().unwrap());
            values.push(value);
            audit.push(AuditRow {
                method: cand.method,
                source: cand.source.clone(),
                conj_label: repr_label.clone(),
                value: Some(value),
                exponent: Some(exponent.clone()),
                note: None,
            });
            match best {
                Some((bv, _)) if value <= bv * (1.0 + TIE_REL) => {}
                _ => best = Some((value, ci)),
            }
        }
        let (best_value, best_ci) = best.expect("nonempty candidates");
        let achievers = prepared
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v >= best_value * (1.0 - TIE_REL))
            .map(|((cand, _, _), _)| format!("{}:{}", cand.method.tag(), cand.source))
            .collect();
        slot_best.push(ConjBest {
            conj_label: repr_label,
            value: best_value,
            method: prepared[best_ci].0.method,
            source: prepared[best_ci].0.source.clone(),
            achievers,
        });
    }

    // Min over conjugation classes (all classes, through their slots).
    let mut min_slot = 0usize;
    let mut per_conjugation = Vec::new();
    for (cidx, slot) in &signature_of {
        let mut cb = slot_best[*slot].clone();
        cb.conj_label = table.classes[*cidx].label.clone();
        if slot_best[*slot].value < slot_best[min_slot].value {
            min_slot = *slot;
        }
        per_conjugation.push(cb);
    }
    let winner = &slot_best[min_slot];
    let min_conj_label = per_conjugation
        .iter()
        .find(|cb| cb.value == winner.value)
        .map(|cb| cb.conj_label.clone())
        .unwrap_or_else(|| winner.conj_label.clone());
    let (wcand, wbracket, wexp) = prepared
        .iter()
        .find(|(c, _, _)| c.method == winner.method && c.source == winner.source)
        .expect("winner is a prepared candidate");
    let tw_improved = mode == ExponentMode::AlphaTw && wbracket.alp > wbracket.walp;

    #[cfg(debug_assertions)]
    crosscheck_formulas(
        table,
        &chi,
        &signatures,
        &m_values,
        &pair_args,
        &prepared,
        tol,
    );

    Ok(BoundReport {
        group_name: table.group_name.clone(),
        char_label: char_label.to_string(),
        value: winner.value,
        method: winner.method,
        source: winner.source.clone(),
        best_phi: wcand.phi.clone(),
        exponent_used: wexp.clone(),
        exponent_mode: mode,
        tw_improved,
        min_conj_label,
        per_conjugation,
        all_evaluated: audit,
        vertices_skipped,
    })
}

/// `M(n^2, r^2, w)^{n/(2n-2)}`, the degree-based comparison bound.
pub fn signature_bound(n: f64, r: f64, w: f64, tol: f64) -> Result<f64, SearchError> {
    if n < 2.0 {
        return Err(SearchError::DegreeTooSmall);
    }
    let m = big_m(n * n, r * r, w, tol)?;
    Ok(m.value.powf(n / (2.0 * n - 2.0)))
}

/// Evaluate `M` for a batch of `(n, r, u)` arguments, sequentially.
pub fn batch_m_seq(args: &[(f64, f64, f64)], tol: f64) -> Result<Vec<MResult>, KernelError> {
    args.iter().map(|&(n, r, u)| big_m(n, r, u, tol)).collect()
}

/// Parallel batch evaluation of `M`; the hot loop of the search.
#[cfg(feature = "parallel")]
pub fn batch_m(args: &[(f64, f64, f64)], tol: f64) -> Result<Vec<MResult>, KernelError> {
    args.par_iter()
        .map(|&(n, r, u)| big_m(n, r, u, tol))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn batch_m(args: &[(f64, f64, f64)], tol: f64) -> Result<Vec<MResult>, KernelError> {
    batch_m_seq(args, tol)
}

/// Debug-mode cross-check of the closed bound formulas for the four
/// derived auxiliary characters against the generic evaluation path.
#[cfg(debug_assertions)]
#[allow(clippy::too_many_arguments)]
fn crosscheck_formulas(
    table: &CharacterTable,
    chi: &ClassFunction,
    signatures: &[(Vec<Rat>, usize)],
    m_values: &[MResult],
    pair_args: &[Vec<usize>],
    prepared: &[(AuxCandidate, ExponentBracket, Rat)],
    tol: f64,
) {
    let ex = match chi.extremes() {
        Ok(e) => e,
        Err(_) => return,
    };
    let n = chi.values[0].to_f64().unwrap();
    let check = ex.check.to_f64().unwrap();
    let hat = ex.hat.to_f64().unwrap();
    let norm = table
        .inner_product(chi, chi)
        .expect("length verified")
        .to_f64()
        .unwrap();
    for (slot, (_, repr)) in signatures.iter().enumerate() {
        let r = chi.values[*repr].to_f64().unwrap();
        for (ci, (cand, bracket, _)) in prepared.iter().enumerate() {
            // The closed formulas are stated for the walp exponent (the
            // linear one is exponent-insensitive).
            let walp_val = m_values[pair_args[slot][ci]]
                .value
                .powf(bracket.walp.to_f64().unwrap());
            let formula = match cand.method {
                AuxMethod::Linear => {
                    big_m(n + check, r + check, check, tol).map(|m| m.value.powf((n + check) / n))
                }
                AuxMethod::Square => {
                    big_m(n * n, r * r, norm, tol).map(|m| m.value.powf(n / (n + hat)))
                }
                AuxMethod::Quadratic => {
                    let tilde = match &ex.tilde {
                        Some(t) => t.to_f64().unwrap(),
                        None => continue,
                    };
                    let (ns, rs) = (n + tilde, r + tilde);
                    big_m(n * ns, r * rs, norm, tol).map(|m| m.value.powf(ns / (ns + hat)))
                }
                AuxMethod::Galois => {
                    let g = table.group_order as f64;
                    let delta = if *repr == 0 { g } else { 0.0 };
                    big_m(g, delta, 1.0, tol).map(|m| m.value.powf((n - hat) / n))
                }
                _ => continue,
            };
            if let Ok(f) = formula {
                debug_assert!(
                    (f - walp_val).abs() <= 1e-7 * f.max(1.0),
                    "closed formula mismatch for {:?}: {f} vs {walp_val}",
                    cand.method
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::display::round2;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn build_aux_examples() {
        let s5 = bundled::s5();
        let chi6a = s5.char_row("6a").unwrap().class_function();
        let lin = build_aux(&s5, &chi6a, AuxMethod::Linear).unwrap();
        assert_eq!(
            lin.phi,
            ClassFunction::from_integers(&[8, 0, 2, 3, 2, 2, 2])
        );
        let gal = build_aux(&s5, &chi6a, AuxMethod::Galois).unwrap();
        assert_eq!(gal.phi, s5.regular_character());

        let a5 = bundled::a5();
        let chi4 = a5.char_row("4").unwrap().class_function();
        let quad = build_aux(&a5, &chi4, AuxMethod::Quadratic).unwrap();
        assert_eq!(quad.phi, ClassFunction::from_integers(&[20, 0, 2, 0]));
    }

    #[test]
    fn c2_bound_is_2_97() {
        let c2 = bundled::c2();
        let report = search_bound(&c2, "1b", &opts()).unwrap();
        assert_eq!(round2(report.value), "2.97");
        assert_eq!(report.tag(), 'l');
        assert_eq!(report.min_conj_label, "2A");
    }

    #[test]
    fn c3_bound_is_6_93() {
        let report = search_bound(&bundled::c3(), "2", &opts()).unwrap();
        assert_eq!(round2(report.value), "6.93");
        assert_eq!(report.tag(), 'l');
    }

    #[test]
    fn s3_bound_is_4_74() {
        let report = search_bound(&bundled::s3(), "2", &opts()).unwrap();
        assert_eq!(round2(report.value), "4.74");
        assert_eq!(report.tag(), 'l');
    }

    #[test]
    fn c5_bound_is_10_67() {
        let report = search_bound(&bundled::c5(), "4", &opts()).unwrap();
        assert_eq!(round2(report.value), "10.67");
        assert_eq!(report.tag(), 'l');
    }

    #[test]
    fn c4_bound_uses_tame_wild_square() {
        let report = search_bound(&bundled::c4(), "2", &opts()).unwrap();
        assert_eq!(round2(report.value), "4.96");
        assert_eq!(report.tag(), 'S');
        assert!(report.tw_improved);
    }

    #[test]
    fn a5_chi4_galois_bound() {
        let report = search_bound(&bundled::a5(), "4", &opts()).unwrap();
        assert_eq!(round2(report.value), "8.18");
        assert_eq!(report.tag(), 'g');
    }

    #[test]
    fn s5_vertex_rows_with_tame_wild_exponent() {
        let s5 = bundled::s5();
        let r4b = search_bound(&s5, "4b", &opts()).unwrap();
        assert_eq!(round2(r4b.value), "10.28");
        assert_eq!(r4b.tag(), 'V');
        assert!(r4b.tw_improved);
        let r5a = search_bound(&s5, "5a", &opts()).unwrap();
        assert_eq!(round2(r5a.value), "12.13");
        assert_eq!(r5a.tag(), 'V');
    }

    #[test]
    fn eval_bound_examples() {
        let s5 = bundled::s5();
        let chi6a = s5.char_row("6a").unwrap().class_function();
        let gal = build_aux(&s5, &chi6a, AuxMethod::Galois).unwrap();
        let i2a = s5.class_index("2A").unwrap();
        let d = eval_bound(&s5, &chi6a, i2a, &gal, ExponentMode::AlphaHat, 1e-11).unwrap();
        assert_eq!(round2(d.value), "12.26");
        assert_eq!(d.exponent, Rat::new(BigInt::from(5), BigInt::from(6)));

        let c3 = bundled::c3();
        let chi2 = c3.char_row("2").unwrap().class_function();
        let lin = build_aux(&c3, &chi2, AuxMethod::Linear).unwrap();
        let d = eval_bound(&c3, &chi2, 0, &lin, ExponentMode::AlphaHat, 1e-11).unwrap();
        assert_eq!(round2(d.value), "6.93");
    }

    #[test]
    fn eval_bound_scale_invariance() {
        let s5 = bundled::s5();
        let chi6a = s5.char_row("6a").unwrap().class_function();
        let gal = build_aux(&s5, &chi6a, AuxMethod::Galois).unwrap();
        let scaled = AuxCandidate {
            phi: gal.phi.scale(&Rat::from_integer(BigInt::from(3))),
            method: AuxMethod::Galois,
            source: "3 * regular".into(),
        };
        let i2a = s5.class_index("2A").unwrap();
        let a = eval_bound(&s5, &chi6a, i2a, &gal, ExponentMode::AlphaHat, 1e-11).unwrap();
        let b = eval_bound(&s5, &chi6a, i2a, &scaled, ExponentMode::AlphaHat, 1e-11).unwrap();
        assert!((a.value - b.value).abs() <= 1e-7 * a.value);
    }

    #[test]
    fn removing_candidates_never_increases_the_bound() {
        let s3 = bundled::s3();
        let full = search_bound(&s3, "2", &opts()).unwrap();
        let restricted = search_bound(
            &s3,
            "2",
            &SearchOptions {
                methods: Some(vec![AuxMethod::Square, AuxMethod::Galois]),
                ..opts()
            },
        )
        .unwrap();
        assert!(restricted.value <= full.value * (1.0 + 1e-9));
        for cb in &full.per_conjugation {
            assert!(full.value <= cb.value * (1.0 + 1e-9));
        }
    }

    #[test]
    fn signature_bound_properties() {
        assert!(signature_bound(1.0, 0.0, 1.0, 1e-11).is_err());
        // Exponent n/(2n-2) = 1 at n = 2.
        let s = signature_bound(2.0, 0.0, 1.0, 1e-11).unwrap();
        let m = big_m(4.0, 0.0, 1.0, 1e-11).unwrap().value;
        assert!((s - m).abs() < 1e-9);
        // Approaches sqrt(Omega) from below.
        let mid = signature_bound(100.0, 0.0, 1.0, 1e-11).unwrap();
        let big = signature_bound(1000.0, 0.0, 1.0, 1e-11).unwrap();
        assert!(mid < big);
        assert!(big < crate::kernel::omega().sqrt());
    }

    #[test]
    fn empty_method_filter_is_an_error() {
        let s5 = bundled::s5();
        let r = search_bound(
            &s5,
            "6a",
            &SearchOptions {
                methods: Some(vec![]),
                ..opts()
            },
        );
        assert!(matches!(r, Err(SearchError::EmptyCandidates)));
    }

    #[test]
    fn unfaithful_character_is_rejected() {
        let s5 = bundled::s5();
        assert!(matches!(
            search_bound(&s5, "1b", &opts()),
            Err(SearchError::Table(TableError::NotFaithful(_)))
        ));
    }
}
