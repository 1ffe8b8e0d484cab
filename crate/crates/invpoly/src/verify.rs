//! The cross-validation sweep: for a grid of matrices and degrees, compute
//! the invariant count by closed formula, factor extraction and brute-force
//! enumeration, and demand exact agreement cell by cell. Drives both the
//! CLI's verify subcommand and the acceptance suite.

use crate::action::is_invariant;
use crate::counting::{count_closed_form, d62_formula, list_invariants_via_f};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::pgl2::{
    all_projective_classes, classify_type, element_order, reduced_form_representatives, Mat2,
    ProjMat,
};
use crate::poly::{self, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Largest candidate pool q^n the sweep will enumerate per degree.
pub const SWEEP_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Highest degree to check; defaults to the largest n with q^n within
    /// the sweep budget.
    pub max_degree: Option<u64>,
    /// Exhaust every non-identity class instead of reduced-form
    /// representatives plus random conjugates.
    pub all_classes: bool,
    /// Random conjugates per reduced form in representative mode.
    pub conjugates: usize,
    pub seed: u64,
    pub enum_cap: u64,
    pub degree_cap: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_degree: None,
            all_classes: false,
            conjugates: 20,
            seed: 0,
            enum_cap: poly::DEFAULT_ENUM_CAP,
            degree_cap: poly::DEFAULT_ENUM_CAP,
        }
    }
}

/// One (matrix, degree) cell of the sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub matrix: String,
    #[serde(rename = "type")]
    pub type_index: u8,
    pub order: u64,
    pub degree: u64,
    pub closed: u64,
    pub brute: u64,
    #[serde(rename = "via_F")]
    pub via_f: Option<u64>,
    pub d62: Option<String>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub field: String,
    pub max_degree: u64,
    pub matrices: usize,
    pub cells: Vec<SweepCell>,
    pub pass: bool,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &SweepCell> {
        self.cells.iter().filter(|c| !c.agree)
    }
}

/// Largest n >= 3 with q^n within the sweep budget.
pub fn default_max_degree(field: &FieldSpec) -> u64 {
    let mut n = 0u64;
    let mut size = 1u128;
    loop {
        size *= field.q() as u128;
        if size > SWEEP_BUDGET as u128 {
            break;
        }
        n += 1;
    }
    n.max(3)
}

/// The matrix grid: every non-identity class for q <= 3 or in all-classes
/// mode; otherwise each reduced-form representative together with seeded
/// random conjugates of it.
pub fn sweep_matrices(field: &FieldSpec, opts: &SweepOptions) -> Result<Vec<ProjMat>> {
    if field.q() <= 3 || opts.all_classes {
        return all_projective_classes(field, opts.enum_cap);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = BTreeSet::new();
    for form in reduced_form_representatives(field) {
        let rep = form.matrix(field);
        out.insert(ProjMat::normalize(&rep)?);
        for _ in 0..opts.conjugates {
            let p = Mat2::random_invertible(field, &mut rng);
            out.insert(ProjMat::normalize(&rep.conjugate_by(&p)?)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Runs the sweep. Per degree, the monic irreducibles are enumerated once
/// and shared across matrices; cells are computed in parallel and the
/// report is sorted, so output does not depend on the worker count.
pub fn sweep_field(field: &FieldSpec, opts: &SweepOptions) -> Result<SweepReport> {
    let max_degree = opts.max_degree.unwrap_or_else(|| default_max_degree(field));
    let matrices = sweep_matrices(field, opts)?;
    let mut cells: Vec<SweepCell> = Vec::new();
    for n in 3..=max_degree {
        let irreducibles: Vec<Poly> =
            poly::irreducibles_of_degree(field, n, opts.enum_cap)?.collect();
        let row: Result<Vec<SweepCell>> = matrices
            .par_iter()
            .map(|m| sweep_cell(m, n, &irreducibles, opts))
            .collect();
        cells.extend(row?);
    }
    cells.sort_by(|a, b| (&a.matrix, a.degree).cmp(&(&b.matrix, b.degree)));
    let pass = cells.iter().all(|c| c.agree);
    Ok(SweepReport {
        field: crate::text::format_field_spec(field),
        max_degree,
        matrices: matrices.len(),
        cells,
        pass,
    })
}

fn sweep_cell(
    class: &ProjMat,
    n: u64,
    irreducibles: &[Poly],
    opts: &SweepOptions,
) -> Result<SweepCell> {
    let m = class.rep();
    let tag = classify_type(m)?;
    let order = element_order(m)?;
    let closed = count_closed_form(m, n)?;
    let brute_list: Vec<&Poly> = irreducibles
        .iter()
        .filter(|f| is_invariant(m, f).expect("sweep matrices are invertible"))
        .collect();
    let brute = brute_list.len() as u64;
    let divisible = n % order == 0;
    let (via_f, lists_match) = if divisible {
        let listed = list_invariants_via_f(m, n, opts.degree_cap, opts.seed)?;
        let same = listed.len() == brute_list.len()
            && listed.iter().zip(brute_list.iter()).all(|(a, b)| &a == b);
        (Some(listed.len() as u64), same)
    } else {
        (None, true)
    };
    let d62 = divisible.then(|| d62_formula(m, n)).transpose()?;
    // Agreement: closed = brute always; the factor route must reproduce the
    // brute list exactly when defined; off the order's multiples the count
    // must vanish.
    let agree = closed == brute
        && lists_match
        && via_f.map_or(true, |v| v == brute)
        && (divisible || brute == 0);
    Ok(SweepCell {
        matrix: crate::text::format_matrix(m),
        type_index: tag.index(),
        order,
        degree: n,
        closed,
        brute,
        via_f,
        d62: d62.map(|r| r.to_string()),
        agree,
    })
}

/// Convenience entry point used by tests: sweep and assert the pass bit.
pub fn sweep_passes(field: &FieldSpec, opts: &SweepOptions) -> Result<bool> {
    Ok(sweep_field(field, opts)?.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_degree_budget() {
        let f2 = FieldSpec::build(2, 1, None).unwrap();
        assert_eq!(default_max_degree(&f2), 16);
        let f3 = FieldSpec::build(3, 1, None).unwrap();
        assert_eq!(default_max_degree(&f3), 10);
        let f5 = FieldSpec::build(5, 1, None).unwrap();
        assert_eq!(default_max_degree(&f5), 6);
        let f7 = FieldSpec::build(7, 1, None).unwrap();
        assert_eq!(default_max_degree(&f7), 5);
    }

    #[test]
    fn matrix_grid_small_fields() {
        let f2 = FieldSpec::build(2, 1, None).unwrap();
        let opts = SweepOptions::default();
        // |PGL2(F_2)| = 6, minus the identity
        assert_eq!(sweep_matrices(&f2, &opts).unwrap().len(), 5);
        let f3 = FieldSpec::build(3, 1, None).unwrap();
        assert_eq!(sweep_matrices(&f3, &opts).unwrap().len(), 23);
    }

    #[test]
    fn sweep_small_field_passes() {
        let f2 = FieldSpec::build(2, 1, None).unwrap();
        let opts = SweepOptions {
            max_degree: Some(6),
            ..SweepOptions::default()
        };
        let report = sweep_field(&f2, &opts).unwrap();
        assert!(report.pass, "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.matrices, 5);
        // 5 matrices x degrees 3..=6
        assert_eq!(report.cells.len(), 20);
    }
}
