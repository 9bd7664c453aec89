//! Subspaces of `F_q^n` in canonical reduced row-echelon form.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::matrix::Matrix;

pub mod cache;

/// A subspace of `F_q^n`, identified by the RREF matrix of any spanning set.
///
/// Two `Subspace`s are equal exactly when they have the same span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// The zero subspace of `F_q^n`.
    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            basis: Matrix::identity(n),
        }
    }

    /// Span of the rows of `rows`, which may be zero.
    pub fn span(field: &FieldSpec, rows: &Matrix) -> Self {
        Subspace {
            basis: rows.rref(field).0,
        }
    }

    /// Wraps a matrix already known to be in RREF with full row rank.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Self {
        Subspace { basis }
    }

    /// Accepts `basis` only if it is already a full-rank RREF matrix.
    pub fn from_rref(field: &FieldSpec, basis: Matrix) -> Result<Self> {
        let (r, _) = basis.rref(field);
        if r != basis {
            return Err(Error::InvalidParameters(
                "basis is not in reduced row-echelon form".into(),
            ));
        }
        Ok(Subspace { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| {
                r.iter()
                    .position(|x| !x.is_zero())
                    .expect("rows are nonzero")
            })
            .collect()
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient_dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: n,
            })
        }
    }

    pub fn contains_vector(&self, field: &FieldSpec, v: &[Fq]) -> Result<bool> {
        self.check_ambient(v.len())?;
        let mut rest = v.to_vec();
        for (row, piv) in self.basis.row_iter().zip(self.pivots()) {
            let c = rest[piv];
            if !c.is_zero() {
                for (x, &b) in rest.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, b));
                }
            }
        }
        Ok(rest.iter().all(|x| x.is_zero()))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, field: &FieldSpec, other: &Subspace) -> Result<bool> {
        other.check_ambient(self.ambient_dim())?;
        for r in self.basis.row_iter() {
            if !other.contains_vector(field, r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, field: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace::span(field, &self.basis.stack(&other.basis)?))
    }

    /// Intersection as the annihilator of the sum of annihilators under the
    /// standard dot product.
    pub fn intersection(&self, field: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim())?;
        let ann = self
            .annihilator(field)
            .basis
            .stack(&other.annihilator(field).basis)?;
        Ok(Subspace::span(field, &ann).annihilator(field))
    }

    /// `{x : b · x = 0 for every b in self}` with the standard dot product.
    pub fn annihilator(&self, field: &FieldSpec) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim());
        }
        Subspace::span(field, &self.basis.null_space(field))
    }

    /// Image under the linear map `v ↦ g·v` (vectors as columns).
    pub fn image(&self, field: &FieldSpec, g: &Matrix) -> Result<Subspace> {
        Ok(Subspace::span(
            field,
            &self.basis.mul(field, &g.transpose())?,
        ))
    }

    pub fn display(&self, field: &FieldSpec) -> String {
        self.basis.display(field)
    }
}

/// RREF of a nonzero matrix with zero rows dropped.
pub fn canonicalize(field: &FieldSpec, rows: &Matrix) -> Result<Subspace> {
    if rows.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    Ok(Subspace::span(field, rows))
}

/// Number of `k`-dimensional subspaces of `F_q^n`; zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - &one;
        den *= q.pow((i + 1) as u32) - &one;
    }
    num / den
}

/// [`gaussian_binomial`] as a `u64`; panics if it does not fit.
pub fn gaussian_binomial_u64(n: usize, k: usize, q: u64) -> u64 {
    u64::try_from(gaussian_binomial(n, k, q)).expect("gaussian binomial overflows u64")
}

/// Calls `visit` on every `k`-subspace of `F_q^n` in enumeration order.
///
/// Order: pivot-column sets in lexicographic order; within a pattern, the free
/// entries (row-major) run through the field like an odometer whose last
/// position turns fastest.
pub fn for_each_subspace(n: usize, k: usize, field: &FieldSpec, mut visit: impl FnMut(&Subspace)) {
    if k > n {
        return;
    }
    let q = field.order() as usize;
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let piv = &pivots;
                ((piv[i] + 1)..n)
                    .filter(move |j| !piv.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let mut m = Matrix::zeros(k, n);
        for (i, &c) in pivots.iter().enumerate() {
            m[(i, c)] = Fq::ONE;
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            for (&(i, j), &d) in free.iter().zip(&digits) {
                m[(i, j)] = field.element(d).expect("digit below q");
            }
            let s = Subspace::from_rref_unchecked(m.clone());
            visit(&s);
            let mut pos = free.len();
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
        // next pivot pattern
        let mut i = k;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break true;
            }
        };
        if !advanced {
            return;
        }
    }
}

/// Every `k`-subspace of `F_q^n`, materialized in enumeration order.
pub fn enumerate_subspaces(n: usize, k: usize, field: &FieldSpec) -> SubspaceSet {
    let mut items = Vec::new();
    for_each_subspace(n, k, field, |s| items.push(s.clone()));
    SubspaceSet::from_distinct(items)
}

/// Ordered, duplicate-free list of subspaces with lookup by value.
#[derive(Clone, Default)]
pub struct SubspaceSet {
    items: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

impl fmt::Debug for SubspaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubspaceSet")
            .field("len", &self.items.len())
            .finish()
    }
}

impl SubspaceSet {
    /// Builds from a list, rejecting duplicates.
    pub fn new(items: Vec<Subspace>) -> Result<Self> {
        let mut index = HashMap::with_capacity(items.len());
        for (i, s) in items.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidParameters(format!(
                    "duplicate subspace at position {i}"
                )));
            }
        }
        Ok(SubspaceSet { items, index })
    }

    fn from_distinct(items: Vec<Subspace>) -> Self {
        let index = items
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SubspaceSet { items, index }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.items[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[Subspace] {
        &self.items
    }

    /// Keeps the members satisfying `keep`, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&Subspace) -> bool) -> SubspaceSet {
        SubspaceSet::from_distinct(self.items.iter().filter(|s| keep(s)).cloned().collect())
    }
}

impl<'a> IntoIterator for &'a SubspaceSet {
    type Item = &'a Subspace;
    type IntoIter = std::slice::Iter<'a, Subspace>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}
