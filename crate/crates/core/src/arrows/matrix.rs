//! Matrices over a rig. With entries in ℕ these are isomorphism classes of
//! spans of finite sets; with boolean entries, relations.
//!
//! Shape convention: `cod` rows by `dom` columns, so that composition is the
//! ordinary product read right to left: `f.then(g)` is `G · F`.

use std::fmt::{self, Debug};
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{check_composable, ArrowError, Prop};

/// Commutative rig (semiring) usable as matrix entries.
pub trait Rig: Copy + PartialEq + Debug + Zero + One {}

impl<T: Copy + PartialEq + Debug + Zero + One> Rig for T {}

/// The boolean rig: `+` is disjunction, `·` is conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Boolean(pub bool);

impl Add for Boolean {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Boolean(self.0 || rhs.0)
    }
}

impl Mul for Boolean {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Boolean(self.0 && rhs.0)
    }
}

impl Zero for Boolean {
    fn zero() -> Self {
        Boolean(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Boolean {
    fn one() -> Self {
        Boolean(true)
    }
}

impl From<bool> for Boolean {
    fn from(b: bool) -> Self {
        Boolean(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix<R> {
    dom: usize,
    cod: usize,
    /// Row-major, `cod * dom` entries.
    entries: Vec<R>,
}

impl<R: Rig> Matrix<R> {
    pub fn zeros(dom: usize, cod: usize) -> Self {
        Self {
            dom,
            cod,
            entries: vec![R::zero(); dom * cod],
        }
    }

    pub fn filled(dom: usize, cod: usize, value: R) -> Self {
        Self {
            dom,
            cod,
            entries: vec![value; dom * cod],
        }
    }

    /// Builds from row-major entries (`cod` rows of `dom` entries).
    pub fn from_entries(dom: usize, cod: usize, entries: Vec<R>) -> Result<Self, ArrowError> {
        if entries.len() != dom * cod {
            return Err(ArrowError::Shape {
                dom,
                cod,
                expected: dom * cod,
                found: entries.len(),
            });
        }
        Ok(Self { dom, cod, entries })
    }

    /// Entry at codomain row `j`, domain column `i`.
    pub fn get(&self, j: usize, i: usize) -> R {
        assert!(
            j < self.cod && i < self.dom,
            "index ({j},{i}) outside {}x{}",
            self.cod,
            self.dom
        );
        self.entries[j * self.dom + i]
    }

    pub fn set(&mut self, j: usize, i: usize, value: R) {
        assert!(
            j < self.cod && i < self.dom,
            "index ({j},{i}) outside {}x{}",
            self.cod,
            self.dom
        );
        self.entries[j * self.dom + i] = value;
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    /// Nonzero entries as `(row, column, value)`, row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, R)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, &v)| (k / self.dom, k % self.dom, v))
    }

    pub fn map<S: Rig>(&self, f: impl Fn(R) -> S) -> Matrix<S> {
        Matrix {
            dom: self.dom,
            cod: self.cod,
            entries: self.entries.iter().map(|&v| f(v)).collect(),
        }
    }

    /// The boolean matrix recording which entries are nonzero.
    pub fn support(&self) -> Matrix<Boolean> {
        self.map(|v| Boolean(!v.is_zero()))
    }

    /// Matrix of the function `dom -> cod` sending `i` to `images[i]`.
    pub fn of_function(cod: usize, images: &[usize]) -> Result<Self, ArrowError> {
        let mut m = Self::zeros(images.len(), cod);
        for (i, &j) in images.iter().enumerate() {
            if j >= cod {
                return Err(ArrowError::Range {
                    value: j,
                    bound: cod,
                });
            }
            m.set(j, i, R::one());
        }
        Ok(m)
    }
}

impl<R: Rig> Prop for Matrix<R> {
    fn dom(&self) -> usize {
        self.dom
    }

    fn cod(&self) -> usize {
        self.cod
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    fn braid(n: usize, m: usize) -> Self {
        let images: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
        Self::of_function(n + m, &images).expect("block swap stays in range")
    }

    fn then(&self, next: &Self) -> Result<Self, ArrowError> {
        check_composable(self.cod, next.dom)?;
        let mut out = Self::zeros(self.dom, next.cod);
        for j in 0..next.cod {
            for k in 0..self.cod {
                let a = next.get(j, k);
                if a.is_zero() {
                    continue;
                }
                for i in 0..self.dom {
                    let idx = j * self.dom + i;
                    out.entries[idx] = out.entries[idx] + a * self.get(k, i);
                }
            }
        }
        Ok(out)
    }

    fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.dom + other.dom, self.cod + other.cod);
        for (j, i, v) in self.nonzero() {
            out.set(j, i, v);
        }
        for (j, i, v) in other.nonzero() {
            out.set(self.cod + j, self.dom + i, v);
        }
        out
    }
}

impl fmt::Display for Matrix<u64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span {} -> {} :", self.dom, self.cod)?;
        for (j, i, v) in self.nonzero() {
            write!(f, " {j} {i} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix<Boolean> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rel {} -> {} :", self.dom, self.cod)?;
        for (j, i, _) in self.nonzero() {
            write!(f, " ({j},{i})")?;
        }
        Ok(())
    }
}
