//! Exact arithmetic for finite fields GF(p^r) and finite abelian groups, plus
//! dense matrix algebra over fields.
//!
//! Alphabet elements are canonical integer indices in `[0, order)`. Field
//! elements index polynomial coefficient vectors in little-endian base `p`;
//! group elements index mixed-radix tuples over the cyclic factors. All
//! operation tables are precomputed at construction, so arithmetic is pure
//! table lookup and alphabets can be shared read-only across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element index type. Orders are capped well below `u16::MAX`.
pub type Elem = u16;

/// Largest admissible field order.
pub const MAX_FIELD_ORDER: usize = 256;
/// Largest admissible group order (groups are used as enumeration domains).
pub const MAX_GROUP_ORDER: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("alphabet order {0} exceeds the cap of {1}")]
    OrderTooLarge(u128, usize),
    #[error("group must have at least one cyclic factor")]
    EmptyFactors,
    #[error("cyclic factor {0} must be at least 2")]
    FactorTooSmall(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different alphabets")]
    AlphabetMismatch,
    #[error("operation requires a field alphabet")]
    NotAField,
}

/// Serializable description of an alphabet, used in file formats and to
/// compare alphabets for compatibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlphabetSpec {
    Field { p: u32, r: u32 },
    Group { factors: Vec<u32> },
}

impl fmt::Display for AlphabetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetSpec::Field { p, r } => {
                let order = (*p as u128).pow(*r);
                write!(f, "gf{order}")
            }
            AlphabetSpec::Group { factors } => {
                let parts: Vec<String> = factors.iter().map(|n| n.to_string()).collect();
                write!(f, "z{}", parts.join("x"))
            }
        }
    }
}

/// A finite field or finite abelian group with precomputed operation tables.
///
/// Element `0` is always the additive identity; for fields element `1` is the
/// multiplicative identity.
pub struct Alphabet {
    spec: AlphabetSpec,
    order: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    mul: Option<Vec<Elem>>,
    inv: Option<Vec<Elem>>,
    /// Non-leading coefficients of the reduction polynomial, little-endian,
    /// for extension fields (`r > 1`).
    modulus: Option<Vec<u32>>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("spec", &self.spec)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Alphabet {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over GF(p) on little-endian coefficient vectors,
/// used only while building extension-field tables.
mod poly {
    /// Degree of `a`, or 0 for the zero polynomial.
    fn deg(a: &[u32]) -> usize {
        a.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u32; a.len() + b.len()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        out
    }

    /// Remainder of `a` modulo a monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let dm = deg(m);
        loop {
            let da = deg(&a);
            if da < dm || a.iter().all(|&c| c == 0) {
                a.truncate(dm.max(1));
                a.resize(dm.max(1), 0);
                return a;
            }
            let coef = a[da];
            let shift = da - dm;
            for (k, &mk) in m.iter().enumerate().take(dm + 1) {
                let idx = k + shift;
                let sub = (coef * mk) % p;
                a[idx] = (a[idx] + p * p - sub) % p;
            }
        }
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

/// Lexicographically-least monic irreducible polynomial of degree `r` over
/// GF(p): the non-leading coefficients, read as a little-endian base-`p`
/// integer, are minimal. Returned as those `r` non-leading coefficients.
fn least_irreducible(p: u32, r: u32) -> Vec<u32> {
    let r = r as usize;
    let total = (p as u64).pow(r as u32);
    'cand: for v in 0..total {
        // Candidate x^r + sum(c_i x^i), c digits of v.
        let mut cand = vec![0u32; r + 1];
        let mut rest = v;
        for c in cand.iter_mut().take(r) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        cand[r] = 1;
        // Trial division by every monic polynomial of degree 1..=r/2.
        for d in 1..=r / 2 {
            let dcount = (p as u64).pow(d as u32);
            for w in 0..dcount {
                let mut div = vec![0u32; d + 1];
                let mut rest = w;
                for c in div.iter_mut().take(d) {
                    *c = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                div[d] = 1;
                if poly::is_zero(&poly::rem(&cand, &div, p)) {
                    continue 'cand;
                }
            }
        }
        return cand[..r].to_vec();
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl Alphabet {
    /// Constructs GF(p^r). The reduction polynomial for `r > 1` is the
    /// lexicographically-least monic irreducible of degree `r`, so tables are
    /// identical across runs.
    pub fn field(p: u32, r: u32) -> Result<Arc<Alphabet>, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if r == 0 {
            return Err(AlgebraError::ZeroDegree);
        }
        let order = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(AlgebraError::OrderTooLarge(order, MAX_FIELD_ORDER));
        }
        let q = order as usize;
        let modulus = if r > 1 { Some(least_irreducible(p, r)) } else { None };

        let to_digits = |mut x: usize| -> Vec<u32> {
            let mut d = vec![0u32; r as usize];
            for di in d.iter_mut() {
                *di = (x % p as usize) as u32;
                x /= p as usize;
            }
            d
        };
        let from_digits = |d: &[u32]| -> usize {
            let mut x = 0usize;
            for &di in d.iter().rev() {
                x = x * p as usize + di as usize;
            }
            x
        };

        let mut add = vec![0 as Elem; q * q];
        let mut neg = vec![0 as Elem; q];
        let mut mul = vec![0 as Elem; q * q];
        for a in 0..q {
            let da = to_digits(a);
            let negd: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a] = from_digits(&negd) as Elem;
            for b in 0..q {
                let db = to_digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * q + b] = from_digits(&sum) as Elem;
                let prod = poly::mul(&da, &db, p);
                let red = match &modulus {
                    Some(m) => {
                        let mut full = m.clone();
                        full.push(1);
                        poly::rem(&prod, &full, p)
                    }
                    None => vec![prod[0] % p],
                };
                let mut red = red;
                red.resize(r as usize, 0);
                mul[a * q + b] = from_digits(&red) as Elem;
            }
        }
        let mut inv = vec![0 as Elem; q];
        for a in 1..q {
            for b in 1..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as Elem;
                    break;
                }
            }
        }
        Ok(Arc::new(Alphabet {
            spec: AlphabetSpec::Field { p, r },
            order: q,
            add,
            neg,
            mul: Some(mul),
            inv: Some(inv),
            modulus,
        }))
    }

    /// Constructs the direct product of cyclic groups Z_{n_1} x ... x Z_{n_d}.
    pub fn group(factors: &[u32]) -> Result<Arc<Alphabet>, AlgebraError> {
        if factors.is_empty() {
            return Err(AlgebraError::EmptyFactors);
        }
        let mut order: u128 = 1;
        for &n in factors {
            if n < 2 {
                return Err(AlgebraError::FactorTooSmall(n));
            }
            order *= n as u128;
            if order > MAX_GROUP_ORDER as u128 {
                return Err(AlgebraError::OrderTooLarge(order, MAX_GROUP_ORDER));
            }
        }
        let q = order as usize;
        let to_digits = |mut x: usize| -> Vec<u32> {
            let mut d = vec![0u32; factors.len()];
            for (di, &n) in d.iter_mut().zip(factors) {
                *di = (x % n as usize) as u32;
                x /= n as usize;
            }
            d
        };
        let from_digits = |d: &[u32]| -> usize {
            let mut x = 0usize;
            for (i, &n) in factors.iter().enumerate().rev() {
                x = x * n as usize + d[i] as usize;
            }
            x
        };
        let mut add = vec![0 as Elem; q * q];
        let mut neg = vec![0 as Elem; q];
        for a in 0..q {
            let da = to_digits(a);
            let negd: Vec<u32> = da.iter().zip(factors).map(|(&c, &n)| (n - c) % n).collect();
            neg[a] = from_digits(&negd) as Elem;
            for b in 0..q {
                let db = to_digits(b);
                let sum: Vec<u32> = da
                    .iter()
                    .zip(&db)
                    .zip(factors)
                    .map(|((&x, &y), &n)| (x + y) % n)
                    .collect();
                add[a * q + b] = from_digits(&sum) as Elem;
            }
        }
        Ok(Arc::new(Alphabet {
            spec: AlphabetSpec::Group { factors: factors.to_vec() },
            order: q,
            add,
            neg,
            mul: None,
            inv: None,
            modulus: None,
        }))
    }

    /// Builds an alphabet from its serializable description.
    pub fn from_spec(spec: &AlphabetSpec) -> Result<Arc<Alphabet>, AlgebraError> {
        match spec {
            AlphabetSpec::Field { p, r } => Alphabet::field(*p, *r),
            AlphabetSpec::Group { factors } => Alphabet::group(factors),
        }
    }

    pub fn spec(&self) -> &AlphabetSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_field(&self) -> bool {
        self.mul.is_some()
    }

    /// Non-leading coefficients of the reduction polynomial (extension
    /// fields only), little-endian over GF(p).
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Field multiplication. Panics if the alphabet is a plain group.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let t = self.mul.as_ref().expect("multiplication requires a field");
        t[a as usize * self.order + b as usize]
    }

    /// Multiplicative inverse of a nonzero field element.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0, "zero has no multiplicative inverse");
        self.inv.as_ref().expect("inversion requires a field")[a as usize]
    }
}

/// A dense matrix over a field alphabet, stored row-major.
#[derive(Clone)]
pub struct FMatrix {
    field: Arc<Alphabet>,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FMatrix {}x{} over {} [", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> =
                (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl PartialEq for FMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && self.field.spec() == other.field.spec()
    }
}
impl Eq for FMatrix {}

impl FMatrix {
    pub fn zeros(field: Arc<Alphabet>, rows: usize, cols: usize) -> FMatrix {
        assert!(field.is_field(), "matrices require a field alphabet");
        FMatrix { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: Arc<Alphabet>, n: usize) -> FMatrix {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of element indices.
    pub fn from_rows(field: Arc<Alphabet>, rows: &[Vec<u64>]) -> Result<FMatrix, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = FMatrix::zeros(field.clone(), r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= field.order() as u64 {
                    return Err(AlgebraError::DimensionMismatch(format!(
                        "entry {v} is not an element index below {}",
                        field.order()
                    )));
                }
                m.set(i, j, v as Elem);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Alphabet> {
        &self.field
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self.get(r, c) == u16::from(r == c)))
    }

    fn check_same_field(&self, other: &FMatrix) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.spec() == other.field.spec() {
            Ok(())
        } else {
            Err(AlgebraError::AlphabetMismatch)
        }
    }

    pub fn transpose(&self) -> FMatrix {
        let mut out = FMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn add(&self, other: &FMatrix) -> Result<FMatrix, AlgebraError> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (o, &b) in out.entries.iter_mut().zip(&other.entries) {
            *o = self.field.add(*o, b);
        }
        Ok(out)
    }

    /// Standard matrix product over the common field.
    pub fn matmul(&self, other: &FMatrix) -> Result<FMatrix, AlgebraError> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FMatrix::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(a, b)));
                }
            }
        }
        Ok(out)
    }

    /// Scales every entry by a field element.
    pub fn scale(&self, s: Elem) -> FMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.field.mul(*e, s);
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FMatrix) -> Result<FMatrix, AlgebraError> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(AlgebraError::DimensionMismatch("hstack row mismatch".into()));
        }
        let mut out = FMatrix::zeros(self.field.clone(), self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &FMatrix) -> Result<FMatrix, AlgebraError> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut out = FMatrix::zeros(self.field.clone(), self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                out.set(self.rows + r, c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// Solves `self * X = rhs` for any one `X` by Gaussian elimination with
    /// lowest-index pivoting; returns `None` when the system is inconsistent.
    /// Free variables are set to zero, so the result is deterministic.
    pub fn solve_right(&self, rhs: &FMatrix) -> Result<Option<FMatrix>, AlgebraError> {
        self.check_same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "solve: {} equation rows vs {} rhs rows",
                self.rows, rhs.rows
            )));
        }
        let f = &self.field;
        let m = self.rows;
        let n = self.cols;
        let w = rhs.cols;
        // Augmented working copy [A | B].
        let mut a = vec![0 as Elem; m * (n + w)];
        for r in 0..m {
            for c in 0..n {
                a[r * (n + w) + c] = self.get(r, c);
            }
            for c in 0..w {
                a[r * (n + w) + n + c] = rhs.get(r, c);
            }
        }
        let stride = n + w;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(pr) = (rank..m).find(|&r| a[r * stride + col] != 0) else {
                continue;
            };
            for c in 0..stride {
                a.swap(rank * stride + c, pr * stride + c);
            }
            let pinv = f.inv(a[rank * stride + col]);
            for c in 0..stride {
                a[rank * stride + c] = f.mul(a[rank * stride + c], pinv);
            }
            for r in 0..m {
                if r == rank {
                    continue;
                }
                let factor = a[r * stride + col];
                if factor == 0 {
                    continue;
                }
                for c in 0..stride {
                    let sub = f.mul(factor, a[rank * stride + c]);
                    a[r * stride + c] = f.sub(a[r * stride + c], sub);
                }
            }
            pivots.push((rank, col));
            rank += 1;
            if rank == m {
                break;
            }
        }
        // Inconsistent if a zero row of A has a nonzero rhs.
        for r in rank..m {
            if (0..w).any(|c| a[r * stride + n + c] != 0) {
                return Ok(None);
            }
        }
        let mut x = FMatrix::zeros(self.field.clone(), n, w);
        for &(pr, pc) in &pivots {
            for c in 0..w {
                x.set(pc, c, a[pr * stride + n + c]);
            }
        }
        debug_assert!(
            self.matmul(&x).map(|prod| prod == *rhs).unwrap_or(false),
            "solve_right produced a non-solution"
        );
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Exhaustively checks the abelian-group axioms of the additive structure.
    fn assert_group_axioms(a: &Alphabet) {
        let q = a.order() as Elem;
        for x in 0..q {
            assert_eq!(a.add(x, 0), x, "identity");
            assert_eq!(a.add(x, a.neg(x)), 0, "inverse");
            for y in 0..q {
                assert_eq!(a.add(x, y), a.add(y, x), "commutativity");
                for z in 0..q {
                    assert_eq!(
                        a.add(a.add(x, y), z),
                        a.add(x, a.add(y, z)),
                        "associativity"
                    );
                }
            }
        }
    }

    /// Exhaustively checks the field axioms on top of the group axioms.
    fn assert_field_axioms(f: &Alphabet) {
        assert_group_axioms(f);
        let q = f.order() as Elem;
        for x in 1..q {
            assert_eq!(f.mul(x, 1), x);
            assert_eq!(f.mul(x, f.inv(x)), 1, "multiplicative inverse of {x}");
        }
        for x in 0..q {
            for y in 0..q {
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for z in 0..q {
                    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    if f.order() <= 16 {
                        assert_eq!(
                            f.mul(x, f.add(y, z)),
                            f.add(f.mul(x, y), f.mul(x, z)),
                            "distributivity"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gf2_characteristic_two() {
        let f = Alphabet::field(2, 1).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.order(), 2);
        assert_field_axioms(&f);
    }

    #[test]
    fn gf4_generator_square() {
        let f = Alphabet::field(2, 2).unwrap();
        assert_eq!(f.order(), 4);
        // Reduction polynomial is x^2 + x + 1, so x * x = x + 1.
        assert_eq!(f.modulus(), Some(&[1, 1][..]));
        assert_eq!(f.mul(2, 2), 3);
        assert_field_axioms(&f);
    }

    #[test]
    fn field_axioms_small_orders() {
        for (p, r) in [(2, 3), (3, 1), (3, 2), (5, 1), (2, 4), (7, 1)] {
            let f = Alphabet::field(p, r).unwrap();
            assert_field_axioms(&f);
        }
    }

    #[test]
    fn sampled_axioms_for_large_alphabets() {
        // Orders above 64 are spot-checked instead of fully enumerated.
        let f = Alphabet::field(2, 8).unwrap();
        assert_eq!(f.order(), 256);
        let g = Alphabet::group(&[8, 16, 4]).unwrap();
        assert_eq!(g.order(), 512);
        let mut rng = StdRng::seed_from_u64(256);
        for _ in 0..2000 {
            let (x, y, z) = (
                rng.gen_range(0..f.order() as Elem),
                rng.gen_range(0..f.order() as Elem),
                rng.gen_range(0..f.order() as Elem),
            );
            assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
            assert_eq!(f.add(x, y), f.add(y, x));
            assert_eq!(f.add(x, f.neg(x)), 0);
            assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
            assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            if x != 0 {
                assert_eq!(f.mul(x, f.inv(x)), 1);
            }
            let (a, b, c) = (
                rng.gen_range(0..g.order() as Elem),
                rng.gen_range(0..g.order() as Elem),
                rng.gen_range(0..g.order() as Elem),
            );
            assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
            assert_eq!(g.add(a, b), g.add(b, a));
            assert_eq!(g.add(a, g.neg(a)), 0);
        }
    }

    #[test]
    fn klein_four_group_self_inverse() {
        let g = Alphabet::group(&[2, 2]).unwrap();
        assert_eq!(g.order(), 4);
        for x in 0..4 {
            assert_eq!(g.add(x, x), 0);
        }
        assert_group_axioms(&g);
    }

    #[test]
    fn group_axioms_small_orders() {
        for factors in [vec![2], vec![3], vec![4], vec![5], vec![6], vec![2, 3], vec![4, 4]] {
            let g = Alphabet::group(&factors).unwrap();
            assert_group_axioms(&g);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Alphabet::field(4, 1).unwrap_err(), AlgebraError::NotPrime(4));
        assert_eq!(Alphabet::field(2, 0).unwrap_err(), AlgebraError::ZeroDegree);
        assert!(matches!(
            Alphabet::field(2, 9).unwrap_err(),
            AlgebraError::OrderTooLarge(512, _)
        ));
        assert_eq!(Alphabet::group(&[]).unwrap_err(), AlgebraError::EmptyFactors);
        assert_eq!(Alphabet::group(&[2, 1]).unwrap_err(), AlgebraError::FactorTooSmall(1));
        assert!(matches!(
            Alphabet::group(&[64, 64, 2]).unwrap_err(),
            AlgebraError::OrderTooLarge(8192, _)
        ));
    }

    #[test]
    fn matmul_identity_gf3() {
        let f = Alphabet::field(3, 1).unwrap();
        let id = FMatrix::identity(f.clone(), 2);
        let m = FMatrix::from_rows(f, &[vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(id.matmul(&m).unwrap(), m);
    }

    #[test]
    fn matmul_gf2_example() {
        let f = Alphabet::field(2, 1).unwrap();
        let a = FMatrix::from_rows(f.clone(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FMatrix::from_rows(f.clone(), &[vec![1, 0], vec![1, 1]]).unwrap();
        let expect = FMatrix::from_rows(f, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.matmul(&b).unwrap(), expect);
    }

    #[test]
    fn matmul_scalar_gf5() {
        let f = Alphabet::field(5, 1).unwrap();
        for a in 0..5u64 {
            for b in 0..5u64 {
                let ma = FMatrix::from_rows(f.clone(), &[vec![a]]).unwrap();
                let mb = FMatrix::from_rows(f.clone(), &[vec![b]]).unwrap();
                assert_eq!(ma.matmul(&mb).unwrap().get(0, 0) as u64, (a * b) % 5);
            }
        }
    }

    #[test]
    fn matmul_dimension_and_field_mismatch() {
        let f2 = Alphabet::field(2, 1).unwrap();
        let f3 = Alphabet::field(3, 1).unwrap();
        let a = FMatrix::zeros(f2.clone(), 2, 3);
        let b = FMatrix::zeros(f2, 2, 3);
        assert!(matches!(a.matmul(&b), Err(AlgebraError::DimensionMismatch(_))));
        let c = FMatrix::zeros(f3, 3, 2);
        assert!(matches!(a.matmul(&c), Err(AlgebraError::AlphabetMismatch)));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = Alphabet::field(3, 1).unwrap();
        let a = FMatrix::identity(f.clone(), 3);
        let b = FMatrix::from_rows(f, &[vec![1, 2], vec![0, 1], vec![2, 2]]).unwrap();
        assert_eq!(a.solve_right(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent_returns_none() {
        let f = Alphabet::field(2, 1).unwrap();
        let a = FMatrix::zeros(f.clone(), 2, 2);
        let b = FMatrix::identity(f, 2);
        assert_eq!(a.solve_right(&b).unwrap(), None);
    }

    #[test]
    fn solve_inverts_random_invertible_gf3() {
        let f = Alphabet::field(3, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        let mut found = 0;
        while found < 20 {
            let mut a = FMatrix::zeros(f.clone(), 3, 3);
            for r in 0..3 {
                for c in 0..3 {
                    a.set(r, c, rng.gen_range(0..3));
                }
            }
            let id = FMatrix::identity(f.clone(), 3);
            if let Some(x) = a.solve_right(&id).unwrap() {
                assert_eq!(a.matmul(&x).unwrap(), id);
                found += 1;
            }
        }
    }

    #[test]
    fn matmul_associative_random_triples() {
        for (p, r) in [(2, 1), (2, 2), (5, 1)] {
            let f = Alphabet::field(p, r).unwrap();
            let q = f.order() as Elem;
            let mut rng = StdRng::seed_from_u64(99 + p as u64);
            for _ in 0..1000 {
                let (m, n, k, l) = (
                    rng.gen_range(1..4),
                    rng.gen_range(1..4),
                    rng.gen_range(1..4),
                    rng.gen_range(1..4),
                );
                let rand_mat = |rng: &mut StdRng, r: usize, c: usize| {
                    let mut m = FMatrix::zeros(f.clone(), r, c);
                    for i in 0..r {
                        for j in 0..c {
                            m.set(i, j, rng.gen_range(0..q));
                        }
                    }
                    m
                };
                let a = rand_mat(&mut rng, m, n);
                let b = rand_mat(&mut rng, n, k);
                let c = rand_mat(&mut rng, k, l);
                let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
                let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn solve_solution_always_checks() {
        let f = Alphabet::field(2, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let (m, n, w) = (rng.gen_range(1..5), rng.gen_range(1..5), rng.gen_range(1..4));
            let mut a = FMatrix::zeros(f.clone(), m, n);
            let mut b = FMatrix::zeros(f.clone(), m, w);
            for e in 0..m * n {
                a.entries[e] = rng.gen_range(0..4);
            }
            for e in 0..m * w {
                b.entries[e] = rng.gen_range(0..4);
            }
            if let Some(x) = a.solve_right(&b).unwrap() {
                assert_eq!(a.matmul(&x).unwrap(), b);
            }
        }
    }
}
