//! Invariant polynomials of finitely generated subgroups: the intersection
//! of per-generator invariant sets, a direct quadratic scan, and a report
//! that flags any noncyclic subgroup with an invariant of degree above two.

use crate::action::{compose_raw, is_invariant};
use crate::error::{Error, Result};
use crate::pgl2::{generate_subgroup, is_cyclic_subgroup, Mat2};
use crate::poly::{self, Poly};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Monic irreducibles of degree n fixed by every generator. Invariance under
/// the generators extends to the generated subgroup through the action
/// axioms, so no closure is taken here.
pub fn common_invariants(gens: &[Mat2], n: u64, enum_cap: u64) -> Result<Vec<Poly>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => return Err(Error::PreconditionViolated("no generators".into())),
    };
    for g in gens {
        if !g.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        if g.field() != &field {
            return Err(Error::FieldMismatch);
        }
    }
    let size = poly::pow_q(&field, n);
    if size > enum_cap as u128 {
        return Err(Error::EnumerationCapExceeded {
            size,
            cap: enum_cap,
        });
    }
    Ok((0..size as u64)
        .into_par_iter()
        .filter_map(|v| {
            let cand = poly::monic_from_index(&field, n as usize, v);
            (poly::is_irreducible(&cand)
                && gens
                    .iter()
                    .all(|g| is_invariant(g, &cand).expect("validated generators")))
            .then_some(cand)
        })
        .collect())
}

/// All monic irreducible quadratics x^2 + ax + b that every generator sends
/// to a scalar multiple of themselves, found by scanning the q^2 candidate
/// coefficient pairs. An independent route to `common_invariants(gens, 2)`.
pub fn quadratic_invariants(gens: &[Mat2]) -> Result<Vec<Poly>> {
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => return Err(Error::PreconditionViolated("no generators".into())),
    };
    for g in gens {
        if !g.is_invertible() {
            return Err(Error::SingularMatrix);
        }
    }
    let mut out = Vec::new();
    for ai in 0..field.q() {
        for bi in 0..field.q() {
            let cand = Poly::new(
                &field,
                vec![
                    field.element_from_index(bi),
                    field.element_from_index(ai),
                    field.one(),
                ],
            );
            if !poly::is_irreducible(&cand) {
                continue;
            }
            let proportional = gens.iter().all(|g| {
                let raw = compose_raw(g, &cand).expect("validated generators");
                raw.degree() == Some(2)
                    && raw == cand.mul_scalar(raw.leading().expect("nonzero"))
            });
            if proportional {
                out.push(cand);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Group analysis report: order, cyclicity with witness, per-degree
/// invariant lists, and a verdict bit that is false only if a noncyclic
/// group exhibits an invariant of degree three or more.
#[derive(Debug, Clone, Serialize)]
pub struct GroupInvariantReport {
    pub field: String,
    pub generators: Vec<String>,
    pub group_order: u64,
    pub cyclic: bool,
    pub cyclic_witness: Option<String>,
    /// degree -> invariant polynomials, for every degree in [2, n_max].
    pub invariants: BTreeMap<u64, Vec<String>>,
    pub verdict: bool,
}

/// Assembles the report over degrees 2..=n_max. Rendering of matrices and
/// polynomials is delegated to the caller-provided formatters so the module
/// stays independent of the textual layer.
pub fn noncyclic_triviality_report(
    gens: &[Mat2],
    n_max: u64,
    enum_cap: u64,
    fmt_field: impl Fn(&crate::field::FieldSpec) -> String,
    fmt_matrix: impl Fn(&Mat2) -> String,
    fmt_poly: impl Fn(&Poly) -> String,
) -> Result<GroupInvariantReport> {
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => return Err(Error::PreconditionViolated("no generators".into())),
    };
    let group = generate_subgroup(gens)?;
    let (cyclic, witness) = is_cyclic_subgroup(&group);
    let mut invariants = BTreeMap::new();
    let mut verdict = true;
    for n in 2..=n_max.max(2) {
        let list = common_invariants(gens, n, enum_cap)?;
        if n >= 3 && !cyclic && !list.is_empty() {
            verdict = false;
        }
        invariants.insert(n, list.iter().map(&fmt_poly).collect());
    }
    Ok(GroupInvariantReport {
        field: fmt_field(&field),
        generators: gens.iter().map(&fmt_matrix).collect(),
        group_order: group.order(),
        cyclic,
        cyclic_witness: witness.map(|w| fmt_matrix(w.rep())),
        invariants,
        verdict,
    })
}

/// Rejection-samples a two-generator noncyclic subgroup; used by the
/// verification harness.
pub fn sample_noncyclic_pair(
    field: &crate::field::FieldSpec,
    rng: &mut impl rand::Rng,
) -> (Mat2, Mat2) {
    loop {
        let g1 = Mat2::random_invertible(field, rng);
        let g2 = Mat2::random_invertible(field, rng);
        if g1.is_scalar() || g2.is_scalar() {
            continue;
        }
        let group = match generate_subgroup(&[g1.clone(), g2.clone()]) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if !is_cyclic_subgroup(&group).0 {
            return (g1, g2);
        }
    }
}

/// The two-generator witnesses for quadratic invariants: for odd q and a
/// non-square b, (diag(-1, 1), anti-diag(1, b)) fixes x^2 - b; for even q
/// and x^2 + x + c irreducible, (unipotent, companion of x^2 - x - c) fixes
/// x^2 + x + c.
pub fn quadratic_witness_pair(field: &crate::field::FieldSpec, param: &crate::field::FqElem) -> (Mat2, Mat2) {
    if field.p() == 2 {
        (
            Mat2::from_ints(field, [[1, 0], [1, 1]]),
            Mat2::new(
                field,
                [
                    field.zero(),
                    field.one(),
                    param.clone(),
                    field.one(),
                ],
            ),
        )
    } else {
        (
            Mat2::from_ints(field, [[-1, 0], [0, 1]]),
            Mat2::new(
                field,
                [field.zero(), field.one(), param.clone(), field.zero()],
            ),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_closed_form;
    use crate::field::FieldSpec;
    use crate::poly::DEFAULT_ENUM_CAP;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::build(p, 1, None).unwrap()
    }

    fn klein_pair(field: &FieldSpec) -> Vec<Mat2> {
        vec![
            Mat2::from_ints(field, [[-1, 0], [0, 1]]),
            Mat2::from_ints(field, [[0, 1], [2, 0]]),
        ]
    }

    #[test]
    fn common_invariants_examples() {
        let f3 = gf(3);
        let gens = klein_pair(&f3);
        let quads = common_invariants(&gens, 2, DEFAULT_ENUM_CAP).unwrap();
        // x^2 + 1 = x^2 - 2 is fixed by the noncyclic pair
        assert!(quads.contains(&Poly::from_ints(&f3, &[1, 0, 1])));

        let f2 = gf(2);
        let gens2 = vec![
            Mat2::from_ints(&f2, [[1, 0], [1, 1]]),
            Mat2::from_ints(&f2, [[0, 1], [1, 1]]),
        ];
        let quads2 = common_invariants(&gens2, 2, DEFAULT_ENUM_CAP).unwrap();
        assert!(quads2.contains(&Poly::from_ints(&f2, &[1, 1, 1])));

        assert_eq!(
            common_invariants(&gens, 4, DEFAULT_ENUM_CAP).unwrap(),
            Vec::<Poly>::new()
        );
    }

    #[test]
    fn quadratic_invariants_examples() {
        let f3 = gf(3);
        assert_eq!(
            quadratic_invariants(&klein_pair(&f3)).unwrap(),
            vec![Poly::from_ints(&f3, &[1, 0, 1])]
        );

        let f2 = gf(2);
        let (h1, h2) = quadratic_witness_pair(&f2, &f2.int(1));
        assert_eq!(
            quadratic_invariants(&[h1, h2]).unwrap(),
            vec![Poly::from_ints(&f2, &[1, 1, 1])]
        );

        // the identity group fixes every irreducible quadratic
        let f5 = gf(5);
        let all = quadratic_invariants(&[Mat2::identity(&f5)]).unwrap();
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn quadratic_scan_agrees_with_enumeration_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [2u64, 3, 5] {
            let field = gf(p);
            for _ in 0..10 {
                let gens = vec![
                    Mat2::random_invertible(&field, &mut rng),
                    Mat2::random_invertible(&field, &mut rng),
                ];
                assert_eq!(
                    quadratic_invariants(&gens).unwrap(),
                    common_invariants(&gens, 2, DEFAULT_ENUM_CAP).unwrap()
                );
            }
        }
    }

    #[test]
    fn generator_sufficiency_on_small_groups() {
        // invariance under the generators is invariance under every element
        let f3 = gf(3);
        let gens = klein_pair(&f3);
        let group = generate_subgroup(&gens).unwrap();
        for n in [2u64, 4] {
            for f in common_invariants(&gens, n, DEFAULT_ENUM_CAP).unwrap() {
                for e in &group.elements {
                    assert!(is_invariant(e.rep(), &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn report_examples() {
        let f3 = gf(3);
        let report = noncyclic_triviality_report(
            &klein_pair(&f3),
            6,
            DEFAULT_ENUM_CAP,
            |f| f.q().to_string(),
            |m| format!("{:?}", m.entries()),
            |p| format!("{:?}", p.coeffs()),
        )
        .unwrap();
        assert_eq!(report.group_order, 4);
        assert!(!report.cyclic);
        assert!(report.verdict);
        assert_eq!(report.invariants[&2].len(), 1);
        for n in 3..=6 {
            assert!(report.invariants[&n].is_empty());
        }

        // single-generator cyclic case agrees with the closed-form counts
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        let report = noncyclic_triviality_report(
            &[a.clone()],
            9,
            DEFAULT_ENUM_CAP,
            |f| f.q().to_string(),
            |m| format!("{:?}", m.entries()),
            |p| format!("{:?}", p.coeffs()),
        )
        .unwrap();
        assert!(report.cyclic);
        assert_eq!(report.group_order, 3);
        assert!(report.verdict);
        for n in 3..=9u64 {
            assert_eq!(
                report.invariants[&n].len() as u64,
                count_closed_form(&a, n).unwrap()
            );
        }
        assert_eq!(report.invariants[&2].len(), 1);
    }

    #[test]
    fn sampled_noncyclic_groups_have_no_higher_invariants() {
        let f3 = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            let (g1, g2) = sample_noncyclic_pair(&f3, &mut rng);
            for n in 3..=5u64 {
                assert_eq!(
                    common_invariants(&[g1.clone(), g2.clone()], n, DEFAULT_ENUM_CAP)
                        .unwrap(),
                    Vec::<Poly>::new()
                );
            }
        }
    }
}
