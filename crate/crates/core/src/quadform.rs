//! Quadratic spaces over `F_q`, `q` odd.
//!
//! A space is a dimension plus a symmetric Gram matrix `G`, with
//! `Q(v) = vᵀ G v` and polar form `B(u, v) = uᵀ G v`, so that `B(v, v) = Q(v)`
//! and `B(u, v) = (Q(u + v) - Q(u) - Q(v)) / 2`.
//!
//! Over a finite field of odd order, a nondegenerate form is determined up to
//! isometry by its dimension and the square class of its discriminant. Two
//! representatives per dimension cover everything:
//!
//! * `dot_n    = x_1² + ... + x_n²` (Euclidean),
//! * `λdot_n   = x_1² + ... + x_{n-1}² + λ x_n²` (Lorentzian),
//!
//! with `λ` the field's first nonsquare. [`QuadraticSpace::classify`] decides
//! which one a form is equivalent to and [`construct_isometry`] produces an
//! explicit change of basis between equivalent forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Which of the two standard forms to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardForm {
    Dot,
    LambdaDot,
}

/// Type of a line through the origin, by the value of the form on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineType {
    /// Nonzero square.
    Spacelike,
    /// Nonsquare.
    Timelike,
    /// Zero.
    Lightlike,
}

/// Isometry class of a quadratic space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormClass {
    /// Equivalent to `dot_n`.
    Euclidean(usize),
    /// Equivalent to `λdot_n`.
    Lorentzian(usize),
    /// Nonzero radical; `quotient` classifies the nondegenerate part.
    Degenerate {
        radical_dim: usize,
        quotient: Box<FormClass>,
    },
}

impl FormClass {
    pub fn dim(&self) -> usize {
        match self {
            FormClass::Euclidean(n) | FormClass::Lorentzian(n) => *n,
            FormClass::Degenerate {
                radical_dim,
                quotient,
            } => radical_dim + quotient.dim(),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        !matches!(self, FormClass::Degenerate { .. })
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormClass::Euclidean(n) => write!(f, "dot_{n}"),
            FormClass::Lorentzian(n) => write!(f, "ldot_{n}"),
            FormClass::Degenerate {
                radical_dim,
                quotient,
            } => write!(f, "{quotient} + radical^{radical_dim}"),
        }
    }
}

/// `basis_changeᵀ · G · basis_change = diag(diagonal)`, with every zero entry
/// (the radical) at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub basis_change: Matrix,
    pub diagonal: Vec<Fq>,
}

/// Splitting `V = H^r ⊕ A ⊕ rad(V)` with `A` anisotropic (`dim A <= 2`).
///
/// The columns of `basis_change` are the hyperbolic pairs `(u_i, w_i)` with
/// `Q(u_i) = Q(w_i) = 0`, `B(u_i, w_i) = 1`, then a diagonal basis of `A`,
/// then a basis of the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub hyperbolic_rank: usize,
    pub anisotropic_part: QuadraticSpace,
    pub radical_dim: usize,
    pub basis_change: Matrix,
}

#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    field: FieldSpec,
    gram: Matrix,
}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuadraticSpace({:?}, {})",
            self.field,
            self.gram.display(&self.field)
        )
    }
}

fn unit(n: usize, i: usize) -> Vec<Fq> {
    let mut v = vec![Fq::ZERO; n];
    v[i] = Fq::ONE;
    v
}

fn columns_to_matrix(n: usize, cols: &[Vec<Fq>]) -> Matrix {
    let mut m = Matrix::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

impl QuadraticSpace {
    pub fn new(field: &FieldSpec, gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(QuadraticSpace {
            field: field.clone(),
            gram,
        })
    }

    pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Self::new(field, Matrix::from_ints(field, rows)?)
    }

    pub fn diagonal(field: &FieldSpec, entries: &[Fq]) -> Self {
        QuadraticSpace {
            field: field.clone(),
            gram: Matrix::diagonal(entries),
        }
    }

    /// `dot_n` or `λdot_n`.
    pub fn standard(kind: StandardForm, n: usize, field: &FieldSpec) -> Self {
        let mut d = vec![Fq::ONE; n];
        if kind == StandardForm::LambdaDot && n > 0 {
            d[n - 1] = field.nonsquare();
        }
        Self::diagonal(field, &d)
    }

    /// The hyperbolic plane, Gram `[[0, 1], [1, 0]]`.
    pub fn hyperbolic_plane(field: &FieldSpec) -> Self {
        let mut g = Matrix::zeros(2, 2);
        g[(0, 1)] = Fq::ONE;
        g[(1, 0)] = Fq::ONE;
        QuadraticSpace {
            field: field.clone(),
            gram: g,
        }
    }

    /// Parses `dot_n` or `ldot_n`.
    pub fn parse_shorthand(s: &str, field: &FieldSpec) -> Result<Self> {
        let bad = || Error::Parse(format!("expected dot_<n> or ldot_<n>, got {s:?}"));
        let (kind, n) = if let Some(n) = s.strip_prefix("ldot_") {
            (StandardForm::LambdaDot, n)
        } else if let Some(n) = s.strip_prefix("dot_") {
            (StandardForm::Dot, n)
        } else {
            return Err(bad());
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        Ok(Self::standard(kind, n, field))
    }

    /// `copies · H ⊕ ⟨tail⟩`, of dimension `2 · copies + 1`.
    pub fn hyperbolic_sum(field: &FieldSpec, copies: usize, tail: Fq) -> Self {
        let mut s = QuadraticSpace::diagonal(field, &[tail]);
        for _ in 0..copies {
            s = QuadraticSpace::hyperbolic_plane(field)
                .direct_sum(&s)
                .expect("same field");
        }
        s
    }

    /// Orthogonal direct sum (block-diagonal Gram).
    pub fn direct_sum(&self, other: &QuadraticSpace) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (a, b) = (self.dim(), other.dim());
        let mut g = Matrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)];
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)];
            }
        }
        Ok(QuadraticSpace {
            field: self.field.clone(),
            gram: g,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    fn check_len(&self, v: &[Fq]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }

    fn b_unchecked(&self, u: &[Fq], v: &[Fq]) -> Fq {
        let gv: Vec<Fq> = self.gram.row_iter().map(|r| self.field.dot(r, v)).collect();
        self.field.dot(u, &gv)
    }

    /// `Q(v) = vᵀ G v`.
    pub fn evaluate(&self, v: &[Fq]) -> Result<Fq> {
        self.check_len(v)?;
        Ok(self.b_unchecked(v, v))
    }

    /// `B(u, v) = uᵀ G v`.
    pub fn bilinear(&self, u: &[Fq], v: &[Fq]) -> Result<Fq> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.b_unchecked(u, v))
    }

    pub fn line_type(&self, v: &[Fq]) -> Result<LineType> {
        let value = self.evaluate(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(if value.is_zero() {
            LineType::Lightlike
        } else if self.field.is_square(value) {
            LineType::Spacelike
        } else {
            LineType::Timelike
        })
    }

    /// Repeatedly splits off a vector with `Q(v) != 0` (trying `e_i + e_j`
    /// when every remaining basis vector is isotropic) and projects the rest
    /// onto its orthogonal complement. What remains at the end is the radical.
    pub fn diagonalize(&self) -> Diagonalization {
        let n = self.dim();
        let f = &self.field;
        let mut rest: Vec<Vec<Fq>> = (0..n).map(|i| unit(n, i)).collect();
        let mut cols = Vec::with_capacity(n);
        let mut diagonal = Vec::with_capacity(n);
        while !rest.is_empty() {
            let pivot = match rest.iter().position(|v| !self.b_unchecked(v, v).is_zero()) {
                Some(i) => rest.remove(i),
                None => {
                    let pair = (0..rest.len())
                        .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
                        .find(|&(i, j)| !self.b_unchecked(&rest[i], &rest[j]).is_zero());
                    let Some((i, j)) = pair else { break };
                    let v: Vec<Fq> = rest[i]
                        .iter()
                        .zip(&rest[j])
                        .map(|(&a, &b)| f.add(a, b))
                        .collect();
                    rest.remove(i);
                    v
                }
            };
            let qv = self.b_unchecked(&pivot, &pivot);
            let inv = f.inv(qv).expect("pivot is anisotropic");
            for w in rest.iter_mut() {
                let c = f.mul(self.b_unchecked(w, &pivot), inv);
                for (x, &pv) in w.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(c, pv));
                }
            }
            cols.push(pivot);
            diagonal.push(qv);
        }
        for w in rest {
            cols.push(w);
            diagonal.push(Fq::ZERO);
        }
        Diagonalization {
            basis_change: columns_to_matrix(n, &cols),
            diagonal,
        }
    }

    /// Dimension and discriminant square class of the nondegenerate part,
    /// plus the radical dimension.
    pub fn classify(&self) -> FormClass {
        let d = self.diagonalize();
        let radical = d.diagonal.iter().filter(|x| x.is_zero()).count();
        let rank = d.diagonal.len() - radical;
        let disc = d
            .diagonal
            .iter()
            .filter(|x| !x.is_zero())
            .fold(Fq::ONE, |acc, &x| self.field.mul(acc, x));
        let class = if self.field.is_square(disc) {
            FormClass::Euclidean(rank)
        } else {
            FormClass::Lorentzian(rank)
        };
        if radical == 0 {
            class
        } else {
            FormClass::Degenerate {
                radical_dim: radical,
                quotient: Box::new(class),
            }
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.diagonalize().diagonal.iter().all(|x| !x.is_zero())
    }

    /// First isotropic vector of `span(vectors)`, searching projective points
    /// of the coordinate space in enumeration order.
    fn find_isotropic(&self, vectors: &[Vec<Fq>]) -> Option<Vec<Fq>> {
        let m = vectors.len();
        let f = &self.field;
        let q = f.order() as usize;
        let n = self.dim();
        let gram: Vec<Vec<Fq>> = vectors
            .iter()
            .map(|u| vectors.iter().map(|v| self.b_unchecked(u, v)).collect())
            .collect();
        let eval = |c: &[Fq]| {
            let mut acc = Fq::ZERO;
            for i in 0..m {
                for j in 0..m {
                    acc = f.add(acc, f.mul(c[i], f.mul(gram[i][j], c[j])));
                }
            }
            acc
        };
        for lead in 0..m {
            let tail = m - lead - 1;
            let mut digits = vec![0usize; tail];
            loop {
                let mut c = vec![Fq::ZERO; m];
                c[lead] = Fq::ONE;
                for (t, &d) in digits.iter().enumerate() {
                    c[lead + 1 + t] = f.element(d).expect("digit below q");
                }
                if eval(&c).is_zero() {
                    let mut v = vec![Fq::ZERO; n];
                    for (ci, u) in c.iter().zip(vectors) {
                        for (x, &ui) in v.iter_mut().zip(u) {
                            *x = f.add(*x, f.mul(*ci, ui));
                        }
                    }
                    return Some(v);
                }
                let mut pos = tail;
                let advanced = loop {
                    if pos == 0 {
                        break false;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < q {
                        break true;
                    }
                    digits[pos] = 0;
                };
                if !advanced {
                    break;
                }
            }
        }
        None
    }

    /// Splits off hyperbolic planes until the remainder is anisotropic.
    pub fn witt_decompose(&self) -> WittDecomposition {
        let n = self.dim();
        let f = &self.field;
        let diag = self.diagonalize();
        let mut work = Vec::new();
        let mut radical = Vec::new();
        for (j, d) in diag.diagonal.iter().enumerate() {
            let c = diag.basis_change.column(j);
            if d.is_zero() {
                radical.push(c);
            } else {
                work.push(c);
            }
        }
        let mut cols = Vec::with_capacity(n);
        let mut hyperbolic_rank = 0;
        while let Some(u) = self.find_isotropic(&work) {
            // nondegeneracy of span(work) guarantees a partner
            let w = work
                .iter()
                .find(|x| !self.b_unchecked(&u, x).is_zero())
                .expect("nondegenerate part has no isotropic radical vector");
            let s = f.inv(self.b_unchecked(&u, w)).unwrap();
            let w: Vec<Fq> = w.iter().map(|&x| f.mul(s, x)).collect();
            let half_qw = f.div(self.b_unchecked(&w, &w), f.from_int(2)).unwrap();
            let w: Vec<Fq> = w
                .iter()
                .zip(&u)
                .map(|(&x, &ux)| f.sub(x, f.mul(half_qw, ux)))
                .collect();
            let projected: Vec<Vec<Fq>> = work
                .iter()
                .map(|x| {
                    let a = self.b_unchecked(x, &w);
                    let b = self.b_unchecked(x, &u);
                    x.iter()
                        .zip(&u)
                        .zip(&w)
                        .map(|((&xi, &ui), &wi)| f.sub(f.sub(xi, f.mul(a, ui)), f.mul(b, wi)))
                        .collect()
                })
                .collect();
            work = independent_subset(f, projected);
            cols.push(u);
            cols.push(w);
            hyperbolic_rank += 1;
        }
        // diagonalize the anisotropic remainder in its own coordinates
        let aniso_gram: Vec<Vec<Fq>> = work
            .iter()
            .map(|u| work.iter().map(|v| self.b_unchecked(u, v)).collect())
            .collect();
        let aniso = QuadraticSpace::new(
            f,
            Matrix::from_rows(work.len(), &aniso_gram).expect("square"),
        )
        .expect("Gram of a symmetric form is symmetric");
        let ad = aniso.diagonalize();
        for j in 0..work.len() {
            let coeffs = ad.basis_change.column(j);
            let mut v = vec![Fq::ZERO; n];
            for (c, u) in coeffs.iter().zip(&work) {
                for (x, &ui) in v.iter_mut().zip(u) {
                    *x = f.add(*x, f.mul(*c, ui));
                }
            }
            cols.push(v);
        }
        let radical_dim = radical.len();
        cols.extend(radical);
        WittDecomposition {
            hyperbolic_rank,
            anisotropic_part: QuadraticSpace::diagonal(f, &ad.diagonal),
            radical_dim,
            basis_change: columns_to_matrix(n, &cols),
        }
    }

    /// `W⊥ = {v : B(v, w) = 0 for all w in W}`.
    pub fn orthogonal_complement(&self, w: &Subspace) -> Result<Subspace> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: w.ambient_dim(),
            });
        }
        if w.dim() == 0 {
            return Ok(Subspace::full(self.dim()));
        }
        let mg = w.basis().mul(&self.field, &self.gram)?;
        Ok(Subspace::span(&self.field, &mg.null_space(&self.field)))
    }

    /// The form restricted to `W`, in the coordinates of W's RREF basis.
    pub fn restrict(&self, w: &Subspace) -> Result<QuadraticSpace> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: w.ambient_dim(),
            });
        }
        let m = w.basis();
        let g = m
            .mul(&self.field, &self.gram)?
            .mul(&self.field, &m.transpose())?;
        QuadraticSpace::new(&self.field, g)
    }

    /// Whether `Q|_W` is equivalent to `dot_{dim W}`.
    pub fn is_dotk_subspace(&self, w: &Subspace) -> bool {
        self.restrict(w)
            .map(|r| r.classify() == FormClass::Euclidean(w.dim()))
            .unwrap_or(false)
    }

    /// `x ↦ x - 2 B(x, v) Q(v)⁻¹ v` as a matrix acting on column vectors.
    pub fn reflection(&self, v: &[Fq]) -> Result<Matrix> {
        let qv = self.evaluate(v)?;
        if qv.is_zero() {
            return Err(Error::IsotropicVector);
        }
        let f = &self.field;
        let n = self.dim();
        let c = f.div(f.from_int(2), qv)?;
        let gv: Vec<Fq> = self.gram.row_iter().map(|r| f.dot(r, v)).collect();
        let mut r = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                r[(i, j)] = f.sub(r[(i, j)], f.mul(c, f.mul(v[i], gv[j])));
            }
        }
        Ok(r)
    }

    /// Whether `mᵀ G m = G`.
    pub fn preserves(&self, m: &Matrix) -> bool {
        m.rows() == self.dim()
            && m.cols() == self.dim()
            && self.gram.congruence(&self.field, m).ok().as_ref() == Some(&self.gram)
    }

    /// Basis change `N` with `Nᵀ G N = diag(1, ..., 1)` or `diag(1, ..., 1, λ)`;
    /// the flag is true in the second case.
    fn normalize(&self) -> Result<(Matrix, bool)> {
        let f = &self.field;
        let lambda = f.nonsquare();
        let n = self.dim();
        let d = self.diagonalize();
        if d.diagonal.iter().any(|x| x.is_zero()) {
            return Err(Error::DegenerateForm);
        }
        let mut cols: Vec<Vec<Fq>> = (0..n).map(|j| d.basis_change.column(j)).collect();
        let mut lambdas = Vec::new();
        for (j, &dj) in d.diagonal.iter().enumerate() {
            let (root, is_lambda) = match f.sqrt(dj) {
                Some(r) => (r, false),
                None => (f.sqrt(f.div(dj, lambda)?).expect("d/λ is a square"), true),
            };
            let s = f.inv(root)?;
            for x in cols[j].iter_mut() {
                *x = f.mul(*x, s);
            }
            if is_lambda {
                lambdas.push(j);
            }
        }
        // diag(λ, λ) ≅ diag(1, 1): take (a, b) with λ(a² + b²) = 1.
        if lambdas.len() >= 2 {
            let target = f.inv(lambda)?;
            let (a, b) = f
                .elements()
                .flat_map(|a| f.elements().map(move |b| (a, b)))
                .find(|&(a, b)| f.add(f.mul(a, a), f.mul(b, b)) == target)
                .expect("every element is a sum of two squares");
            while lambdas.len() >= 2 {
                let j = lambdas.pop().unwrap();
                let i = lambdas.pop().unwrap();
                let (ci, cj) = (cols[i].clone(), cols[j].clone());
                for t in 0..n {
                    cols[i][t] = f.add(f.mul(a, ci[t]), f.mul(b, cj[t]));
                    cols[j][t] = f.sub(f.mul(a, cj[t]), f.mul(b, ci[t]));
                }
            }
        }
        let odd = if let Some(&j) = lambdas.first() {
            cols.swap(j, n - 1);
            true
        } else {
            false
        };
        Ok((columns_to_matrix(n, &cols), odd))
    }

    /// Serializes as `{"p", "e", "modulus", "gram"}` with prime-field entries as
    /// integers and extension-field entries as coefficient arrays.
    pub fn to_json(&self) -> serde_json::Value {
        let f = &self.field;
        let gram: Vec<Vec<serde_json::Value>> = self
            .gram
            .row_iter()
            .map(|r| {
                r.iter()
                    .map(|&a| {
                        if f.is_prime_field() {
                            serde_json::json!(a.index())
                        } else {
                            serde_json::json!(f.coeffs(a))
                        }
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "p": f.characteristic(),
            "e": f.degree(),
            "modulus": f.modulus(),
            "gram": gram,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Int(i64),
            Coeffs(Vec<u32>),
        }
        #[derive(Deserialize)]
        struct Repr {
            p: u32,
            e: u32,
            modulus: Option<Vec<u32>>,
            gram: Vec<Vec<Entry>>,
        }
        let repr: Repr =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let field = FieldSpec::new(
            repr.p,
            repr.e,
            repr.modulus.as_deref().filter(|_| repr.e > 1),
        )?;
        let n = repr.gram.len();
        let rows = repr
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x {
                        Entry::Int(v) => Ok(field.from_int(*v)),
                        Entry::Coeffs(c) => field.from_coeffs(c),
                    })
                    .collect::<Result<Vec<Fq>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        QuadraticSpace::new(&field, Matrix::from_rows(n, &rows)?)
    }
}

/// A change of basis `M` with `Mᵀ · G₂ · M = G₁`, or `None` when the two
/// nondegenerate forms are not equivalent.
///
/// Both forms are brought to `diag(1, ..., 1 [, λ])`; the results agree iff
/// the discriminants share a square class.
pub fn construct_isometry(q1: &QuadraticSpace, q2: &QuadraticSpace) -> Result<Option<Matrix>> {
    if q1.field != q2.field {
        return Err(Error::FieldMismatch);
    }
    if q1.dim() != q2.dim() {
        return Err(Error::DimensionMismatch {
            expected: q1.dim(),
            found: q2.dim(),
        });
    }
    let (n1, odd1) = q1.normalize()?;
    let (n2, odd2) = q2.normalize()?;
    if odd1 != odd2 {
        return Ok(None);
    }
    let f = &q1.field;
    Ok(Some(n2.mul(f, &n1.inverse(f)?)?))
}

/// Greedy maximal linearly independent subset, preserving order.
fn independent_subset(f: &FieldSpec, vectors: Vec<Vec<Fq>>) -> Vec<Vec<Fq>> {
    let mut kept: Vec<Vec<Fq>> = Vec::new();
    for v in vectors {
        let n = v.len();
        let mut rows = kept.clone();
        rows.push(v.clone());
        if Matrix::from_rows(n, &rows).expect("equal lengths").rank(f) == rows.len() {
            kept.push(v);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::canonicalize;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn v(field: &FieldSpec, xs: &[i64]) -> Vec<Fq> {
        xs.iter().map(|&x| field.from_int(x)).collect()
    }

    fn span(field: &FieldSpec, rows: &[&[i64]]) -> Subspace {
        canonicalize(field, &Matrix::from_ints(field, rows).unwrap()).unwrap()
    }

    fn ldot(n: usize, field: &FieldSpec) -> QuadraticSpace {
        QuadraticSpace::standard(StandardForm::LambdaDot, n, field)
    }

    fn dot(n: usize, field: &FieldSpec) -> QuadraticSpace {
        QuadraticSpace::standard(StandardForm::Dot, n, field)
    }

    fn hyperbolic_sum(field: &FieldSpec, copies: usize, tail: Fq) -> QuadraticSpace {
        QuadraticSpace::hyperbolic_sum(field, copies, tail)
    }

    #[test]
    fn standard_spaces() {
        let f3 = f(3);
        assert_eq!(
            dot(2, &f3).gram(),
            &Matrix::from_ints(&f3, &[&[1, 0], &[0, 1]]).unwrap()
        );
        assert_eq!(
            ldot(3, &f3).gram(),
            &Matrix::from_ints(&f3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]).unwrap()
        );
        let f5 = f(5);
        assert_eq!(
            ldot(1, &f5).gram(),
            &Matrix::from_ints(&f5, &[&[2]]).unwrap()
        );
        assert_eq!(
            QuadraticSpace::parse_shorthand("ldot_3", &f3).unwrap(),
            ldot(3, &f3)
        );
        assert_eq!(
            QuadraticSpace::parse_shorthand("dot_2", &f3).unwrap(),
            dot(2, &f3)
        );
        assert!(QuadraticSpace::parse_shorthand("dot2", &f3).is_err());
    }

    #[test]
    fn evaluation_and_line_types() {
        let f3 = f(3);
        let q = ldot(3, &f3);
        assert_eq!(q.evaluate(&v(&f3, &[1, 0, 0])).unwrap(), Fq::ONE);
        assert_eq!(q.evaluate(&v(&f3, &[0, 1, 1])).unwrap(), Fq::ZERO);
        assert_eq!(q.evaluate(&v(&f3, &[0, 0, 1])).unwrap(), f3.from_int(2));
        assert!(q.evaluate(&v(&f3, &[1, 0])).is_err());

        let q2 = ldot(2, &f3);
        assert_eq!(q2.line_type(&v(&f3, &[1, 0])).unwrap(), LineType::Spacelike);
        assert_eq!(q2.line_type(&v(&f3, &[0, 1])).unwrap(), LineType::Timelike);
        assert_eq!(q2.line_type(&v(&f3, &[1, 1])).unwrap(), LineType::Lightlike);
        assert_eq!(q2.line_type(&v(&f3, &[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn polarization_identity() {
        let f5 = f(5);
        let q = QuadraticSpace::from_ints(&f5, &[&[1, 2, 0], &[2, 3, 4], &[0, 4, 0]]).unwrap();
        let half = f5.inv(f5.from_int(2)).unwrap();
        let (a, b) = (v(&f5, &[1, 2, 3]), v(&f5, &[4, 0, 1]));
        let sum: Vec<Fq> = a.iter().zip(&b).map(|(&x, &y)| f5.add(x, y)).collect();
        let polar = f5.mul(
            half,
            f5.sub(
                f5.sub(q.evaluate(&sum).unwrap(), q.evaluate(&a).unwrap()),
                q.evaluate(&b).unwrap(),
            ),
        );
        assert_eq!(polar, q.bilinear(&a, &b).unwrap());
    }

    #[test]
    fn diagonalize_examples() {
        let f3 = f(3);
        let h = QuadraticSpace::from_ints(&f3, &[&[0, 1], &[1, 0]]).unwrap();
        let d = h.diagonalize();
        assert_eq!(
            h.gram().congruence(&f3, &d.basis_change).unwrap(),
            Matrix::diagonal(&d.diagonal)
        );
        let mut entries = d.diagonal.clone();
        entries.sort();
        assert_eq!(entries, v(&f3, &[1, 2]));

        let already =
            QuadraticSpace::from_ints(&f3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 0]]).unwrap();
        let d = already.diagonalize();
        assert_eq!(d.basis_change, Matrix::identity(3));
        assert_eq!(d.diagonal, v(&f3, &[1, 2, 0]));

        let zero = QuadraticSpace::from_ints(&f3, &[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(zero.diagonalize().diagonal, v(&f3, &[0, 0]));
        assert_eq!(
            zero.classify(),
            FormClass::Degenerate {
                radical_dim: 2,
                quotient: Box::new(FormClass::Euclidean(0))
            }
        );
    }

    #[test]
    fn classify_examples() {
        let f3 = f(3);
        assert_eq!(ldot(5, &f3).classify(), FormClass::Lorentzian(5));
        assert_eq!(dot(4, &f3).classify(), FormClass::Euclidean(4));
        assert_eq!(
            hyperbolic_sum(&f3, 2, Fq::ONE).classify(),
            FormClass::Euclidean(5)
        );
        assert_eq!(
            hyperbolic_sum(&f3, 1, Fq::ONE).classify(),
            FormClass::Lorentzian(3)
        );
    }

    /// Both classification schemes line up exactly as the mod-4 rules say
    /// when -1 is a nonsquare (q ≡ 3 mod 4).
    #[test]
    fn hyperbolic_table_mod_four() {
        for q in [3, 7, 11] {
            let field = f(q);
            let lambda = field.nonsquare();
            for n in [3usize, 5, 7] {
                let k = (n - 1) / 2;
                let with_one = hyperbolic_sum(&field, k, Fq::ONE).classify();
                let with_lambda = hyperbolic_sum(&field, k, lambda).classify();
                if n % 4 == 1 {
                    assert_eq!(with_one, FormClass::Euclidean(n));
                    assert_eq!(with_lambda, FormClass::Lorentzian(n));
                } else {
                    assert_eq!(with_one, FormClass::Lorentzian(n));
                    assert_eq!(with_lambda, FormClass::Euclidean(n));
                }
            }
        }
    }

    fn check_witt(q: &QuadraticSpace) -> WittDecomposition {
        let w = q.witt_decompose();
        let f = q.field();
        let n = q.dim();
        let mut expected = Matrix::zeros(n, n);
        for i in 0..w.hyperbolic_rank {
            expected[(2 * i, 2 * i + 1)] = Fq::ONE;
            expected[(2 * i + 1, 2 * i)] = Fq::ONE;
        }
        let a = w.anisotropic_part.dim();
        let off = 2 * w.hyperbolic_rank;
        for i in 0..a {
            expected[(off + i, off + i)] = w.anisotropic_part.gram()[(i, i)];
        }
        assert_eq!(q.gram().congruence(f, &w.basis_change).unwrap(), expected);
        assert_eq!(w.basis_change.rank(f), n);
        assert!(a <= 2);
        assert_eq!(off + a + w.radical_dim, n);
        w
    }

    #[test]
    fn witt_examples() {
        let w = check_witt(&dot(2, &f(5)));
        assert_eq!((w.hyperbolic_rank, w.anisotropic_part.dim()), (1, 0));
        let w = check_witt(&dot(1, &f(3)));
        assert_eq!((w.hyperbolic_rank, w.anisotropic_part.dim()), (0, 1));
        let w = check_witt(&ldot(3, &f(3)));
        assert_eq!((w.hyperbolic_rank, w.anisotropic_part.dim()), (1, 1));
        let w = check_witt(&dot(2, &f(3)));
        assert_eq!((w.hyperbolic_rank, w.anisotropic_part.dim()), (0, 2));
        let degenerate =
            QuadraticSpace::from_ints(&f(3), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(check_witt(&degenerate).radical_dim, 1);
        check_witt(&ldot(6, &f(9)));
    }

    #[test]
    fn complements_and_restrictions() {
        let f3 = f(3);
        let q = ldot(3, &f3);
        assert_eq!(
            q.orthogonal_complement(&span(&f3, &[&[1, 0, 0]])).unwrap(),
            span(&f3, &[&[0, 1, 0], &[0, 0, 1]])
        );
        assert_eq!(
            q.orthogonal_complement(&Subspace::full(3)).unwrap(),
            Subspace::zero(3)
        );
        let q2 = ldot(2, &f3);
        let light = span(&f3, &[&[1, 1]]);
        assert_eq!(q2.orthogonal_complement(&light).unwrap(), light);
        assert!(q2.orthogonal_complement(&Subspace::full(3)).is_err());

        assert_eq!(
            q.restrict(&span(&f3, &[&[1, 0, 0], &[0, 1, 0]]))
                .unwrap()
                .gram(),
            &Matrix::identity(2)
        );
        let r = q.restrict(&span(&f3, &[&[0, 1, 1]])).unwrap();
        assert_eq!(r.gram(), &Matrix::zeros(1, 1));
        assert!(!r.classify().is_nondegenerate());
        assert_eq!(
            q.restrict(&span(&f3, &[&[0, 0, 1]])).unwrap().gram(),
            &Matrix::from_ints(&f3, &[&[2]]).unwrap()
        );
    }

    #[test]
    fn dotk_examples() {
        let f3 = f(3);
        let q4 = ldot(4, &f3);
        assert!(q4.is_dotk_subspace(&span(&f3, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])));
        assert!(!q4.is_dotk_subspace(&span(&f3, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])));
        assert!(!ldot(3, &f3).is_dotk_subspace(&span(&f3, &[&[0, 1, 1]])));
    }

    #[test]
    fn isometry_examples() {
        let f5 = f(5);
        let q1 = QuadraticSpace::from_ints(&f5, &[&[4]]).unwrap();
        let q2 = dot(1, &f5);
        let m = construct_isometry(&q1, &q2).unwrap().unwrap();
        assert_eq!(q2.gram().congruence(&f5, &m).unwrap(), *q1.gram());
        assert!(
            m == Matrix::from_ints(&f5, &[&[2]]).unwrap()
                || m == Matrix::from_ints(&f5, &[&[3]]).unwrap()
        );

        let f3 = f(3);
        let q = ldot(4, &f3);
        let m = construct_isometry(&q, &q).unwrap().unwrap();
        assert_eq!(q.gram().congruence(&f3, &m).unwrap(), *q.gram());

        assert_eq!(
            construct_isometry(&dot(2, &f3), &ldot(2, &f3)).unwrap(),
            None
        );
        let degenerate = QuadraticSpace::from_ints(&f3, &[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(
            construct_isometry(&degenerate, &dot(2, &f3)),
            Err(Error::DegenerateForm)
        );
        assert!(construct_isometry(&dot(2, &f3), &dot(3, &f3)).is_err());
    }

    #[test]
    fn reflection_examples() {
        let f3 = f(3);
        let q = dot(2, &f3);
        let r = q.reflection(&v(&f3, &[1, 0])).unwrap();
        assert_eq!(r, Matrix::from_ints(&f3, &[&[2, 0], &[0, 1]]).unwrap());
        let q2 = ldot(2, &f3);
        assert_eq!(q2.reflection(&v(&f3, &[1, 1])), Err(Error::IsotropicVector));
        let q3 = ldot(3, &f(7));
        let w = v(q3.field(), &[1, 2, 3]);
        let r = q3.reflection(&w).unwrap();
        let neg: Vec<Fq> = w.iter().map(|&x| q3.field().neg(x)).collect();
        assert_eq!(r.mul_vec(q3.field(), &w).unwrap(), neg);
        assert!(q3.preserves(&r));
        assert_eq!(r.mul(q3.field(), &r).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn json_round_trip() {
        let q = ldot(3, &f(9));
        let back = QuadraticSpace::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        let text = r#"{"p": 3, "e": 1, "gram": [[1, 0], [0, 2]]}"#;
        let parsed = QuadraticSpace::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(parsed, ldot(2, &f(3)));
        let asym = r#"{"p": 3, "e": 1, "gram": [[1, 1], [0, 2]]}"#;
        assert_eq!(
            QuadraticSpace::from_json(&serde_json::from_str(asym).unwrap()),
            Err(Error::NotSymmetric)
        );
    }

    fn random_form(rng: &mut ChaCha8Rng, field: &FieldSpec, n: usize) -> QuadraticSpace {
        let q = field.order() as usize;
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = field.element(rng.gen_range(0..q)).unwrap();
                g[(i, j)] = x;
                g[(j, i)] = x;
            }
        }
        QuadraticSpace::new(field, g).unwrap()
    }

    fn random_nondegenerate(rng: &mut ChaCha8Rng, field: &FieldSpec, n: usize) -> QuadraticSpace {
        loop {
            let q = random_form(rng, field, n);
            if q.is_nondegenerate() {
                return q;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn diagonalization_is_a_congruence(seed in any::<u64>(), q in prop::sample::select(vec![3u32, 5, 9])) {
            let field = f(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=4);
            let form = random_form(&mut rng, &field, n);
            let d = form.diagonalize();
            prop_assert_eq!(form.gram().congruence(&field, &d.basis_change).unwrap(), Matrix::diagonal(&d.diagonal));
            prop_assert_eq!(d.basis_change.rank(&field), n);
            let zeros = d.diagonal.iter().skip_while(|x| !x.is_zero()).count();
            prop_assert!(d.diagonal.iter().rev().take(zeros).all(|x| x.is_zero()));
            check_witt(&form);
        }

        #[test]
        fn classification_is_complete(seed in any::<u64>(), q in prop::sample::select(vec![3u32, 5])) {
            let field = f(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=4);
            let a = random_nondegenerate(&mut rng, &field, n);
            let b = random_nondegenerate(&mut rng, &field, n);
            let iso = construct_isometry(&a, &b).unwrap();
            prop_assert_eq!(iso.is_some(), a.classify() == b.classify());
            if let Some(m) = iso {
                prop_assert_eq!(b.gram().congruence(&field, &m).unwrap(), a.gram().clone());
            }
        }

        #[test]
        fn cancellation(seed in any::<u64>(), q in prop::sample::select(vec![3u32, 5, 7])) {
            let field = f(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let du = rng.gen_range(1..=3);
            let dv = rng.gen_range(1..=3);
            let u1 = random_nondegenerate(&mut rng, &field, du);
            let u2 = random_nondegenerate(&mut rng, &field, du);
            let w = random_nondegenerate(&mut rng, &field, dv);
            let s1 = u1.direct_sum(&w).unwrap().classify();
            let s2 = u2.direct_sum(&w).unwrap().classify();
            if s1 == s2 {
                prop_assert_eq!(u1.classify(), u2.classify());
            }
        }

        #[test]
        fn line_type_ignores_scaling(seed in any::<u64>()) {
            let field = f(7);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = ldot(4, &field);
            let x: Vec<Fq> = (0..4).map(|_| field.element(rng.gen_range(0..7)).unwrap()).collect();
            prop_assume!(x.iter().any(|a| !a.is_zero()));
            let c = field.element(rng.gen_range(1..7)).unwrap();
            let cx: Vec<Fq> = x.iter().map(|&a| field.mul(c, a)).collect();
            prop_assert_eq!(q.line_type(&x).unwrap(), q.line_type(&cx).unwrap());
        }

        #[test]
        fn double_complement(seed in any::<u64>(), q in prop::sample::select(vec![3u32, 5, 9])) {
            let field = f(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=5);
            let form = random_nondegenerate(&mut rng, &field, n);
            let rows = rng.gen_range(0..=n);
            let data = (0..rows * n).map(|_| field.element(rng.gen_range(0..q as usize)).unwrap()).collect();
            let w = Subspace::span(&field, &Matrix::from_flat(rows, n, data).unwrap());
            let perp = form.orthogonal_complement(&w).unwrap();
            prop_assert_eq!(perp.dim(), n - w.dim());
            prop_assert_eq!(form.orthogonal_complement(&perp).unwrap(), w);
        }

        #[test]
        fn reflections_are_isometric_involutions(seed in any::<u64>()) {
            let field = f(5);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=4);
            let form = random_nondegenerate(&mut rng, &field, n);
            let x: Vec<Fq> = (0..n).map(|_| field.element(rng.gen_range(0..5)).unwrap()).collect();
            match form.reflection(&x) {
                Ok(r) => {
                    prop_assert!(form.preserves(&r));
                    prop_assert_eq!(r.mul(&field, &r).unwrap(), Matrix::identity(n));
                }
                Err(e) => prop_assert_eq!(e, Error::IsotropicVector),
            }
        }
    }
}
