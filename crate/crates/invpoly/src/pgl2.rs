//! 2x2 matrix algebra over GF(q), canonical projective representatives, the
//! four-way eigenvalue classification, element orders, reduced forms with
//! explicit conjugators, and finite subgroup generation.

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, FieldSpec, FqElem};
use crate::poly::{self, Poly};
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;

/// Practical guard on subgroup closure size, independent of |PGL2(F_q)|.
pub const DEFAULT_CLOSURE_CAP: u64 = 1 << 20;

/// An invertible 2x2 matrix [[a, b], [c, d]] over GF(q). Invertibility is not
/// enforced at construction; operations that need it return `SingularMatrix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    field: FieldSpec,
    entries: [FqElem; 4],
}

impl Mat2 {
    pub fn new(field: &FieldSpec, entries: [FqElem; 4]) -> Self {
        Mat2 {
            field: field.clone(),
            entries,
        }
    }

    /// Row-major integer literals reduced into the prime subfield.
    pub fn from_ints(field: &FieldSpec, m: [[i64; 2]; 2]) -> Self {
        Mat2::new(
            field,
            [
                field.int(m[0][0]),
                field.int(m[0][1]),
                field.int(m[1][0]),
                field.int(m[1][1]),
            ],
        )
    }

    pub fn identity(field: &FieldSpec) -> Self {
        Mat2::from_ints(field, [[1, 0], [0, 1]])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn a(&self) -> &FqElem {
        &self.entries[0]
    }

    pub fn b(&self) -> &FqElem {
        &self.entries[1]
    }

    pub fn c(&self) -> &FqElem {
        &self.entries[2]
    }

    pub fn d(&self) -> &FqElem {
        &self.entries[3]
    }

    pub fn entries(&self) -> &[FqElem; 4] {
        &self.entries
    }

    pub fn det(&self) -> FqElem {
        let f = &self.field;
        f.sub(
            &f.mul(self.a(), self.d()),
            &f.mul(self.b(), self.c()),
        )
    }

    pub fn trace(&self) -> FqElem {
        self.field.add(self.a(), self.d())
    }

    pub fn is_invertible(&self) -> bool {
        !self.field.is_zero(&self.det())
    }

    /// True when the matrix is a nonzero scalar multiple of the identity,
    /// i.e. projectively trivial.
    pub fn is_scalar(&self) -> bool {
        self.field.is_zero(self.b())
            && self.field.is_zero(self.c())
            && self.a() == self.d()
            && !self.field.is_zero(self.a())
    }

    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let e = |x: &FqElem, y: &FqElem, z: &FqElem, w: &FqElem| f.add(&f.mul(x, y), &f.mul(z, w));
        Ok(Mat2::new(
            f,
            [
                e(self.a(), rhs.a(), self.b(), rhs.c()),
                e(self.a(), rhs.b(), self.b(), rhs.d()),
                e(self.c(), rhs.a(), self.d(), rhs.c()),
                e(self.c(), rhs.b(), self.d(), rhs.d()),
            ],
        ))
    }

    pub fn scalar_mul(&self, s: &FqElem) -> Mat2 {
        let f = &self.field;
        Mat2::new(
            f,
            [
                f.mul(self.a(), s),
                f.mul(self.b(), s),
                f.mul(self.c(), s),
                f.mul(self.d(), s),
            ],
        )
    }

    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if self.field.is_zero(&det) {
            return Err(Error::SingularMatrix);
        }
        let f = &self.field;
        let di = f.inv(&det)?;
        Ok(Mat2::new(
            f,
            [
                f.mul(self.d(), &di),
                f.mul(&f.neg(self.b()), &di),
                f.mul(&f.neg(self.c()), &di),
                f.mul(self.a(), &di),
            ],
        ))
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat2> {
        let mut base = self.clone();
        let mut acc = Mat2::identity(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// x^2 - tr(A) x + det(A).
    pub fn char_poly(&self) -> Poly {
        Poly::new(
            &self.field,
            vec![
                self.det(),
                self.field.neg(&self.trace()),
                self.field.one(),
            ],
        )
    }

    /// Conjugate of self by p: p * self * p^{-1}.
    pub fn conjugate_by(&self, p: &Mat2) -> Result<Mat2> {
        p.mul(self)?.mul(&p.inv()?)
    }

    /// Uniform random invertible matrix.
    pub fn random_invertible(field: &FieldSpec, rng: &mut impl Rng) -> Mat2 {
        loop {
            let m = Mat2::new(
                field,
                [
                    field.element_from_index(rng.gen_range(0..field.q())),
                    field.element_from_index(rng.gen_range(0..field.q())),
                    field.element_from_index(rng.gen_range(0..field.q())),
                    field.element_from_index(rng.gen_range(0..field.q())),
                ],
            );
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Canonical representative of a class in PGL2(F_q): the matrix scaled so its
/// first nonzero entry in (a, b, c, d) order equals 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjMat(Mat2);

impl ProjMat {
    /// Scales by the inverse of the first nonzero entry; idempotent.
    pub fn normalize(m: &Mat2) -> Result<ProjMat> {
        if !m.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let field = m.field();
        let pivot = m
            .entries()
            .iter()
            .find(|e| !field.is_zero(e))
            .expect("invertible matrix is nonzero");
        let scale = field.inv(pivot)?;
        Ok(ProjMat(m.scalar_mul(&scale)))
    }

    pub fn rep(&self) -> &Mat2 {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_scalar()
    }

    /// Least e >= 1 with rep^e scalar, by iterated multiplication.
    pub fn projective_order(&self) -> u64 {
        let mut acc = self.0.clone();
        let mut e = 1;
        while !acc.is_scalar() {
            acc = acc.mul(&self.0).expect("same field");
            e += 1;
        }
        e
    }
}

impl Ord for ProjMat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.entries.cmp(&other.0.entries)
    }
}

impl PartialOrd for ProjMat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Eigenvalue classification of a non-identity class, with the eigenvalue
/// data in GF(q) (indices 1, 2) or in the quadratic extension (indices 3, 4;
/// index 3 is the trace-zero case where the eigenvalues are negatives of each
/// other).
#[derive(Debug, Clone)]
pub enum TypeTag {
    /// Distinct eigenvalues in GF(q), sorted ascending by value.
    Type1 { eigenvalues: (FqElem, FqElem) },
    /// A repeated eigenvalue in GF(q).
    Type2 { eigenvalue: FqElem },
    /// Conjugate eigenvalues in GF(q^2) \ GF(q) with alpha^q = -alpha.
    Type3 { ext: ExtField, eigenvalue: ExtElem },
    /// Conjugate eigenvalues in GF(q^2) \ GF(q), not negatives of each other.
    Type4 { ext: ExtField, eigenvalue: ExtElem },
}

impl TypeTag {
    pub fn index(&self) -> u8 {
        match self {
            TypeTag::Type1 { .. } => 1,
            TypeTag::Type2 { .. } => 2,
            TypeTag::Type3 { .. } => 3,
            TypeTag::Type4 { .. } => 4,
        }
    }
}

/// Classifies a non-identity invertible matrix by the location and shape of
/// its eigenvalues. The quadratic-extension branch is detected by trace: for
/// an irreducible characteristic polynomial, alpha^q = -alpha iff tr = 0
/// (impossible in characteristic 2).
pub fn classify_type(m: &Mat2) -> Result<TypeTag> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if m.is_scalar() {
        return Err(Error::IdentityClass);
    }
    let field = m.field();
    let cp = m.char_poly();
    let mut roots: Vec<FqElem> = Vec::with_capacity(2);
    for e in field.elements() {
        if field.is_zero(&cp.eval(&e)) {
            roots.push(e);
            if roots.len() == 2 {
                break;
            }
        }
    }
    match roots.len() {
        2 => Ok(TypeTag::Type1 {
            eigenvalues: (roots[0].clone(), roots[1].clone()),
        }),
        1 => Ok(TypeTag::Type2 {
            eigenvalue: roots.pop().unwrap(),
        }),
        _ => {
            let ext = ExtField::build(field, &cp)?;
            let eigenvalue = ext.generator();
            if field.is_zero(&m.trace()) {
                Ok(TypeTag::Type3 { ext, eigenvalue })
            } else {
                Ok(TypeTag::Type4 { ext, eigenvalue })
            }
        }
    }
}

/// Least D >= 1 with A^D scalar. Dispatches on the classification: the ratio
/// of distinct rational eigenvalues, the characteristic p for a repeated
/// eigenvalue, 2 for the trace-zero extension case, and the order of
/// alpha^{q-1} in GF(q^2) otherwise.
pub fn element_order(m: &Mat2) -> Result<u64> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if m.is_scalar() {
        return Ok(1);
    }
    let field = m.field();
    match classify_type(m)? {
        TypeTag::Type1 { eigenvalues: (l1, l2) } => {
            let ratio = field.div(&l1, &l2)?;
            field.multiplicative_order(&ratio)
        }
        TypeTag::Type2 { .. } => Ok(field.p()),
        TypeTag::Type3 { .. } => Ok(2),
        TypeTag::Type4 { ext, eigenvalue } => {
            let frob = ext.frobenius(&eigenvalue);
            let ratio = ext.div(&frob, &eigenvalue)?;
            ext.multiplicative_order(&ratio)
        }
    }
}

/// The canonical conjugacy targets: A(a) diagonal, E unipotent, C(b)
/// anti-diagonal with b a non-square, D(c) the companion of x^2 - x - c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedForm {
    Diagonal(FqElem),
    Unipotent,
    AntiDiagonal(FqElem),
    Companion(FqElem),
}

impl ReducedForm {
    pub fn matrix(&self, field: &FieldSpec) -> Mat2 {
        match self {
            ReducedForm::Diagonal(a) => Mat2::new(
                field,
                [a.clone(), field.zero(), field.zero(), field.one()],
            ),
            ReducedForm::Unipotent => Mat2::from_ints(field, [[1, 0], [1, 1]]),
            ReducedForm::AntiDiagonal(b) => Mat2::new(
                field,
                [field.zero(), field.one(), b.clone(), field.zero()],
            ),
            ReducedForm::Companion(c) => Mat2::new(
                field,
                [field.zero(), field.one(), c.clone(), field.one()],
            ),
        }
    }

    /// Renders the form with its parameter in the element index notation,
    /// e.g. "A(2)", "E", "C(2)", "D(1)".
    pub fn label(&self, field: &FieldSpec) -> String {
        let show = |e: &FqElem| {
            if field.k() == 1 {
                format!("{}", field.element_index(e))
            } else {
                format!(
                    "[{}]",
                    e.coeffs()
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        };
        match self {
            ReducedForm::Diagonal(a) => format!("A({})", show(a)),
            ReducedForm::Unipotent => "E".to_string(),
            ReducedForm::AntiDiagonal(b) => format!("C({})", show(b)),
            ReducedForm::Companion(c) => format!("D({})", show(c)),
        }
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducedForm::Diagonal(_) => write!(f, "A(a)"),
            ReducedForm::Unipotent => write!(f, "E"),
            ReducedForm::AntiDiagonal(_) => write!(f, "C(b)"),
            ReducedForm::Companion(_) => write!(f, "D(c)"),
        }
    }
}

/// A reduced form together with the conjugator that exhibits it:
/// [reduced] = [conjugator] [input] [conjugator]^{-1}, verified by
/// multiplication before being returned.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub form: ReducedForm,
    pub reduced: Mat2,
    pub conjugator: Mat2,
}

/// Returns a matrix already in reduced shape unchanged (conjugator I);
/// otherwise builds the canonical target for its classification and an
/// explicit conjugator from eigenvectors or a cyclic-vector basis.
pub fn reduced_form_with_conjugator(m: &Mat2) -> Result<Reduction> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if m.is_scalar() {
        return Err(Error::IdentityClass);
    }
    let field = m.field().clone();
    if let Some(form) = as_reduced_form(m) {
        return Ok(Reduction {
            reduced: form.matrix(&field),
            form,
            conjugator: Mat2::identity(&field),
        });
    }

    let reduction = match classify_type(m)? {
        TypeTag::Type1 { eigenvalues: (l1, l2) } => {
            // Choose the ratio that is least in value order; A(a) ~ A(1/a).
            let r12 = field.div(&l1, &l2)?;
            let r21 = field.div(&l2, &l1)?;
            let (a, first, second) = if r12 < r21 {
                (r12, l1, l2)
            } else if r21 < r12 {
                (r21, l2, l1)
            } else if l1 > l2 {
                (r12, l1, l2)
            } else {
                (r21, l2, l1)
            };
            let q = basis_matrix(
                &field,
                &eigenvector(m, &first),
                &eigenvector(m, &second),
            );
            Reduction {
                form: ReducedForm::Diagonal(a.clone()),
                reduced: ReducedForm::Diagonal(a).matrix(&field),
                conjugator: q.inv()?,
            }
        }
        TypeTag::Type2 { eigenvalue } => {
            // Scale to a unipotent u = A/lambda, then read E off the basis
            // (w, (u - I)w) for any w outside the eigenline.
            let u = m.scalar_mul(&field.inv(&eigenvalue)?);
            let n = Mat2::new(
                &field,
                [
                    field.sub(u.a(), &field.one()),
                    u.b().clone(),
                    u.c().clone(),
                    field.sub(u.d(), &field.one()),
                ],
            );
            let w = [field.one(), field.zero()];
            let nw = apply(&n, &w);
            let (w, nw) = if field.is_zero(&nw[0]) && field.is_zero(&nw[1]) {
                let w2 = [field.zero(), field.one()];
                let nw2 = apply(&n, &w2);
                (w2, nw2)
            } else {
                (w, nw)
            };
            let q = basis_matrix(&field, &w, &nw);
            Reduction {
                form: ReducedForm::Unipotent,
                reduced: ReducedForm::Unipotent.matrix(&field),
                conjugator: q.inv()?,
            }
        }
        TypeTag::Type3 { .. } => {
            // Rescale so the characteristic polynomial becomes x^2 - b with b
            // the canonical (least) non-square, then use the cyclic basis
            // (A'v, v).
            let b = field
                .least_nonsquare()
                .expect("trace-zero extension case requires odd characteristic");
            let det = m.det();
            let ratio = field.div(&b, &field.neg(&det))?;
            let mu = field
                .sqrt(&ratio)
                .expect("ratio of two non-squares is a square");
            let a_scaled = m.scalar_mul(&mu);
            let v = cyclic_vector(&a_scaled);
            let av = apply(&a_scaled, &v);
            let q = basis_matrix(&field, &av, &v);
            Reduction {
                form: ReducedForm::AntiDiagonal(b.clone()),
                reduced: ReducedForm::AntiDiagonal(b).matrix(&field),
                conjugator: q.inv()?,
            }
        }
        TypeTag::Type4 { .. } => {
            // Normalize the characteristic polynomial to x^2 - x - c by the
            // substitution x -> tr(A) x; tr(A) is nonzero here.
            let tr = m.trace();
            let a_scaled = m.scalar_mul(&field.inv(&tr)?);
            let c = field.neg(&a_scaled.det());
            let v = cyclic_vector(&a_scaled);
            let av = apply(&a_scaled, &v);
            let w1 = [field.sub(&av[0], &v[0]), field.sub(&av[1], &v[1])];
            let q = basis_matrix(&field, &w1, &v);
            Reduction {
                form: ReducedForm::Companion(c.clone()),
                reduced: ReducedForm::Companion(c).matrix(&field),
                conjugator: q.inv()?,
            }
        }
    };

    let check = m.conjugate_by(&reduction.conjugator)?;
    assert_eq!(
        ProjMat::normalize(&check)?,
        ProjMat::normalize(&reduction.reduced)?,
        "conjugator failed the multiply-back check"
    );
    Ok(reduction)
}

/// Recognizes the exact reduced shapes.
fn as_reduced_form(m: &Mat2) -> Option<ReducedForm> {
    let f = m.field();
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let zero = f.zero();
    let one = f.one();
    if *b == zero && *c == zero && *d == one && *a != zero && *a != one {
        return Some(ReducedForm::Diagonal(a.clone()));
    }
    if *a == one && *b == zero && *c == one && *d == one {
        return Some(ReducedForm::Unipotent);
    }
    if *a == zero && *d == zero && *b == one && !f.is_square(c) {
        return Some(ReducedForm::AntiDiagonal(c.clone()));
    }
    if *a == zero && *b == one && *d == one {
        // companion of x^2 - x - c; only a reduced form when irreducible
        let cp = Poly::new(f, vec![f.neg(c), f.int(-1), one]);
        if poly::is_irreducible(&cp) {
            return Some(ReducedForm::Companion(c.clone()));
        }
    }
    None
}

fn apply(m: &Mat2, v: &[FqElem; 2]) -> [FqElem; 2] {
    let f = m.field();
    [
        f.add(&f.mul(m.a(), &v[0]), &f.mul(m.b(), &v[1])),
        f.add(&f.mul(m.c(), &v[0]), &f.mul(m.d(), &v[1])),
    ]
}

/// Columns (v1 | v2) as a matrix.
fn basis_matrix(field: &FieldSpec, v1: &[FqElem; 2], v2: &[FqElem; 2]) -> Mat2 {
    Mat2::new(
        field,
        [v1[0].clone(), v2[0].clone(), v1[1].clone(), v2[1].clone()],
    )
}

/// Kernel vector of (m - lambda I), scaled so its first nonzero coordinate
/// is 1.
fn eigenvector(m: &Mat2, lambda: &FqElem) -> [FqElem; 2] {
    let f = m.field();
    let mut v = [f.neg(m.b()), f.sub(m.a(), lambda)];
    if f.is_zero(&v[0]) && f.is_zero(&v[1]) {
        v = [f.sub(m.d(), lambda), f.neg(m.c())];
    }
    let pivot = if f.is_zero(&v[0]) { &v[1] } else { &v[0] };
    let scale = f.inv(pivot).expect("eigenvector is nonzero");
    [f.mul(&v[0], &scale), f.mul(&v[1], &scale)]
}

/// A vector v with {v, mv} independent; exists for every non-scalar matrix.
fn cyclic_vector(m: &Mat2) -> [FqElem; 2] {
    let f = m.field();
    if !f.is_zero(m.c()) {
        return [f.one(), f.zero()];
    }
    if !f.is_zero(m.b()) {
        return [f.zero(), f.one()];
    }
    // diagonal with distinct entries
    [f.one(), f.one()]
}

/// Evaluates the closed-form expression for powers of the companion matrix
/// D(c) through its eigenvalue in GF(q^2): with alpha a root of x^2 - x - c
/// and delta = (alpha - alpha^q)^{-1}, entry-wise differences of powers of
/// alpha reproduce D(c)^j with all entries landing in the base field.
///
/// The eigenvector matrix ((alpha^q, alpha), (-1, -1)) diagonalizes the
/// transpose of D(c); the off-diagonal slots below are arranged so the
/// result is D(c)^j itself.
pub fn type4_power_closed_form(field: &FieldSpec, c: &FqElem, j: i64) -> Result<Mat2> {
    let cp = Poly::new(
        field,
        vec![field.neg(c), field.int(-1), field.one()],
    );
    if !poly::is_irreducible(&cp) {
        return Err(Error::ReducibleCharPoly);
    }
    let ext = ExtField::build(field, &cp)?;
    let alpha = ext.generator();
    let q = field.q() as i128;
    let group = (ext.order() - 1) as i128;
    // alpha^e with e possibly negative, reduced modulo the group order.
    let apow = |e: i128| -> ExtElem {
        let e = e.rem_euclid(group) as u128;
        ext.pow(&alpha, e)
    };
    let aq = apow(q);
    let delta = ext.inv(&ext.sub(&alpha, &aq))?;
    let j = j as i128;
    let entry = |e1: i128, e2: i128| -> Result<FqElem> {
        let diff = ext.sub(&apow(e1), &apow(e2));
        let val = ext.mul(&delta, &diff);
        if !ext.in_base(&val) {
            return Err(Error::NonIntegerResult);
        }
        Ok(val.u)
    };
    Ok(Mat2::new(
        field,
        [
            entry(q * j + 1, q + j)?,
            entry(j, q * j)?,
            entry(q * (j + 1) + 1, q + j + 1)?,
            entry(j + 1, q * (j + 1))?,
        ],
    ))
}

/// A finite subgroup of PGL2(F_q), closed under multiplication.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub generators: Vec<ProjMat>,
    pub elements: BTreeSet<ProjMat>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// Breadth-first closure of the generators under multiplication. The closure
/// size is capped at min(q(q-1)(q+1), DEFAULT_CLOSURE_CAP) as a guard.
pub fn generate_subgroup(gens: &[Mat2]) -> Result<Subgroup> {
    generate_subgroup_with_cap(gens, DEFAULT_CLOSURE_CAP)
}

pub fn generate_subgroup_with_cap(gens: &[Mat2], cap: u64) -> Result<Subgroup> {
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => {
            // no generators, no field: represent the trivial group over GF(2)
            let f = FieldSpec::build(2, 1, None)?;
            let id = ProjMat::normalize(&Mat2::identity(&f))?;
            return Ok(Subgroup {
                generators: Vec::new(),
                elements: [id].into_iter().collect(),
            });
        }
    };
    let q = field.q();
    let cap = cap.min(q * (q - 1) * (q + 1));
    let gens: Vec<ProjMat> = gens
        .iter()
        .map(ProjMat::normalize)
        .collect::<Result<_>>()?;
    let mut elements = BTreeSet::new();
    let mut queue = vec![ProjMat::normalize(&Mat2::identity(&field))?];
    elements.insert(queue[0].clone());
    while let Some(elem) = queue.pop() {
        for g in &gens {
            let next = ProjMat::normalize(&elem.rep().mul(g.rep())?)?;
            if elements.insert(next.clone()) {
                if elements.len() as u64 > cap {
                    return Err(Error::ClosureCapExceeded(cap));
                }
                queue.push(next);
            }
        }
    }
    Ok(Subgroup {
        generators: gens,
        elements,
    })
}

/// True iff some element has projective order equal to the group order;
/// returns such a witness.
pub fn is_cyclic_subgroup(group: &Subgroup) -> (bool, Option<ProjMat>) {
    let n = group.order();
    for g in &group.elements {
        if g.projective_order() == n {
            return (true, Some(g.clone()));
        }
    }
    (false, None)
}

/// All non-identity classes of PGL2(F_q), enumerated exhaustively. The q^4
/// scan is guarded by `cap`.
pub fn all_projective_classes(field: &FieldSpec, cap: u64) -> Result<Vec<ProjMat>> {
    let q = field.q();
    let size = (q as u128).pow(4);
    if size > cap as u128 {
        return Err(Error::EnumerationCapExceeded { size, cap });
    }
    let mut seen = BTreeSet::new();
    for v in 0..(size as u64) {
        let e = |i: u32| field.element_from_index(v / q.pow(i) % q);
        let m = Mat2::new(field, [e(0), e(1), e(2), e(3)]);
        if m.is_invertible() && !m.is_scalar() {
            seen.insert(ProjMat::normalize(&m)?);
        }
    }
    Ok(seen.into_iter().collect())
}

/// The canonical conjugacy representatives of the field: every valid
/// diagonal, unipotent, anti-diagonal and companion parameter.
pub fn reduced_form_representatives(field: &FieldSpec) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    for a in field.elements() {
        if !field.is_zero(&a) && a != field.one() {
            out.push(ReducedForm::Diagonal(a));
        }
    }
    out.push(ReducedForm::Unipotent);
    for b in field.elements() {
        if !field.is_zero(&b) && !field.is_square(&b) {
            out.push(ReducedForm::AntiDiagonal(b));
        }
    }
    for c in field.elements() {
        let cp = Poly::new(field, vec![field.neg(&c), field.int(-1), field.one()]);
        if poly::is_irreducible(&cp) {
            out.push(ReducedForm::Companion(c));
        }
    }
    out
}
