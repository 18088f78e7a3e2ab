//! Signatures, terms over a signature, and the preset theories.
//!
//! A [`Term`] is a morphism of the free prop on a signature: a binary tree of
//! sequential and parallel composites over generators, identities and
//! symmetries. Nothing is normalized here; equality of terms modulo a
//! theory is decided semantically in [`crate::normalform`].

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const MU: &str = "mu";
pub const ETA: &str = "eta";
pub const DELTA: &str = "delta";
pub const EPSILON: &str = "epsilon";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
    pub coarity: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, arity: usize, coarity: usize) -> Self {
        Self {
            name: name.into(),
            arity,
            coarity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    generators: Vec<Generator>,
}

impl Signature {
    pub fn new(generators: Vec<Generator>) -> Result<Self, TheoryError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(TheoryError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Self { generators })
    }

    /// `{mu: 2→1, eta: 0→1, delta: 1→2, epsilon: 1→0}`.
    pub fn frobenius() -> Self {
        Self {
            generators: vec![
                Generator::new(MU, 2, 1),
                Generator::new(ETA, 0, 1),
                Generator::new(DELTA, 1, 2),
                Generator::new(EPSILON, 1, 0),
            ],
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn contains(&self, other: &Signature) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.get(&g.name) == Some(g))
    }
}

/// A term of the free prop on a signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Empty,
    Id(usize),
    Sym(usize, usize),
    Gen(String),
    Seq(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Self {
        Term::Gen(name.into())
    }

    /// `first ; second` in diagrammatic order.
    pub fn seq(first: Term, second: Term) -> Self {
        Term::Seq(Box::new(first), Box::new(second))
    }

    pub fn tensor(top: Term, bottom: Term) -> Self {
        Term::Tensor(Box::new(top), Box::new(bottom))
    }

    pub fn swap() -> Self {
        Term::Sym(1, 1)
    }

    /// Left-nested sequential composite; `None` for an empty list.
    pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::seq)
    }

    /// Left-nested tensor of the non-`Empty` terms; `Empty` if none remain.
    pub fn tensor_all(terms: impl IntoIterator<Item = Term>) -> Term {
        terms
            .into_iter()
            .filter(|t| *t != Term::Empty)
            .reduce(Term::tensor)
            .unwrap_or(Term::Empty)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Seq(a, b) | Term::Tensor(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    pub fn children(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Seq(a, b) | Term::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// The subterm reached by following child indices (0 = left/top).
    pub fn subterm(&self, path: &[u8]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&step, rest)) => {
                let (a, b) = self.children()?;
                match step {
                    0 => a.subterm(rest),
                    1 => b.subterm(rest),
                    _ => None,
                }
            }
        }
    }

    /// Replaces the subterm at `path`, returning `None` if the path does not exist.
    pub fn replace_at(&self, path: &[u8], replacement: Term) -> Option<Term> {
        let Some((&step, rest)) = path.split_first() else {
            return Some(replacement);
        };
        let rebuild = |a: &Term, b: &Term| -> Option<(Term, Term)> {
            match step {
                0 => Some((a.replace_at(rest, replacement.clone())?, b.clone())),
                1 => Some((a.clone(), b.replace_at(rest, replacement.clone())?)),
                _ => None,
            }
        };
        match self {
            Term::Seq(a, b) => rebuild(a, b).map(|(a, b)| Term::seq(a, b)),
            Term::Tensor(a, b) => rebuild(a, b).map(|(a, b)| Term::tensor(a, b)),
            _ => None,
        }
    }

    /// Paths of every node, in pre-order.
    pub fn positions(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Vec::new())];
        while let Some((t, path)) = stack.pop() {
            if let Some((a, b)) = t.children() {
                let mut right = path.clone();
                right.push(1);
                stack.push((b, right));
                let mut left = path.clone();
                left.push(0);
                stack.push((a, left));
            }
            out.push(path);
        }
        out
    }

    /// The type `(dom, cod)` of the term.
    pub fn typecheck(&self, sig: &Signature) -> Result<(usize, usize), TypeError> {
        let mut path = Vec::new();
        self.typecheck_at(sig, &mut path)
    }

    fn typecheck_at(
        &self,
        sig: &Signature,
        path: &mut Vec<u8>,
    ) -> Result<(usize, usize), TypeError> {
        match self {
            Term::Empty => Ok((0, 0)),
            Term::Id(k) => Ok((*k, *k)),
            Term::Sym(n, m) => Ok((n + m, n + m)),
            Term::Gen(name) => sig.get(name).map(|g| (g.arity, g.coarity)).ok_or_else(|| {
                TypeError::UnknownGenerator {
                    name: name.clone(),
                    path: TermPath(path.clone()),
                }
            }),
            Term::Seq(a, b) | Term::Tensor(a, b) => {
                path.push(0);
                let (n, m) = a.typecheck_at(sig, path)?;
                path.pop();
                path.push(1);
                let (p, q) = b.typecheck_at(sig, path)?;
                path.pop();
                if matches!(self, Term::Tensor(..)) {
                    Ok((n + p, m + q))
                } else if m == p {
                    Ok((n, q))
                } else {
                    Err(TypeError::Mismatch {
                        cod: m,
                        dom: p,
                        path: TermPath(path.clone()),
                    })
                }
            }
        }
    }
}

/// Child indices from the root to a subterm (0 = left/top, 1 = right/bottom).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermPath(pub Vec<u8>);

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for step in &self.0 {
            write!(f, ".{step}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unknown generator `{name}` at {path}")]
    UnknownGenerator { name: String, path: TermPath },
    #[error("type mismatch at {path}: codomain {cod} composed with domain {dom}")]
    Mismatch {
        cod: usize,
        dom: usize,
        path: TermPath,
    },
    #[error("terms have different types {} -> {} and {} -> {}", left.0, left.1, right.0, right.1)]
    Incomparable {
        left: (usize, usize),
        right: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("unknown theory `{0}` (expected one of cm, ccm, scfm, escfm, bb, sbb)")]
    UnknownTheory(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("equation `{name}`: {source}")]
    IllTyped { name: String, source: TypeError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub equations: Vec<Equation>,
}

impl Theory {
    /// Checks every equation is well typed with equal sides.
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        equations: Vec<Equation>,
    ) -> Result<Self, TheoryError> {
        for eq in &equations {
            let ill = |source| TheoryError::IllTyped {
                name: eq.name.clone(),
                source,
            };
            let left = eq.lhs.typecheck(&signature).map_err(ill)?;
            let right = eq.rhs.typecheck(&signature).map_err(ill)?;
            if left != right {
                return Err(ill(TypeError::Incomparable { left, right }));
            }
        }
        Ok(Self {
            name: name.into(),
            signature,
            equations,
        })
    }

    pub fn preset(which: PresetTheory) -> Self {
        let cm = || monoid_laws();
        let ccm = || comonoid_laws();
        let (sig, equations) = match which {
            PresetTheory::Cm => (
                vec![Generator::new(MU, 2, 1), Generator::new(ETA, 0, 1)],
                cm(),
            ),
            PresetTheory::Ccm => (
                vec![Generator::new(DELTA, 1, 2), Generator::new(EPSILON, 1, 0)],
                ccm(),
            ),
            PresetTheory::Scfm => (
                frobenius_gens(),
                [cm(), ccm(), frobenius_laws(), vec![special_law()]].concat(),
            ),
            PresetTheory::Escfm => (
                frobenius_gens(),
                [
                    cm(),
                    ccm(),
                    frobenius_laws(),
                    vec![special_law(), extra_law()],
                ]
                .concat(),
            ),
            PresetTheory::Bb => (
                frobenius_gens(),
                [cm(), ccm(), bimonoid_laws(), vec![extra_law()]].concat(),
            ),
            PresetTheory::Sbb => (
                frobenius_gens(),
                [
                    cm(),
                    ccm(),
                    bimonoid_laws(),
                    vec![extra_law(), special_law()],
                ]
                .concat(),
            ),
        };
        let signature = Signature::new(sig).expect("preset names are distinct");
        Theory::new(which.to_string(), signature, equations)
            .expect("preset equations are well typed")
    }

    pub fn equation(&self, name: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.name == name)
    }
}

/// Looks a preset up by (case-insensitive) name.
pub fn preset(name: &str) -> Result<Theory, TheoryError> {
    Ok(Theory::preset(name.parse()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetTheory {
    /// Commutative monoids.
    Cm,
    /// Cocommutative comonoids.
    Ccm,
    /// Special commutative Frobenius monoids.
    Scfm,
    /// Extraspecial commutative Frobenius monoids.
    Escfm,
    /// Bicommutative bimonoids.
    Bb,
    /// Special bicommutative bimonoids.
    Sbb,
}

impl PresetTheory {
    pub const ALL: [PresetTheory; 6] = [
        Self::Cm,
        Self::Ccm,
        Self::Scfm,
        Self::Escfm,
        Self::Bb,
        Self::Sbb,
    ];
}

impl fmt::Display for PresetTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cm => "CM",
            Self::Ccm => "CCM",
            Self::Scfm => "SCFM",
            Self::Escfm => "ESCFM",
            Self::Bb => "BB",
            Self::Sbb => "SBB",
        })
    }
}

impl FromStr for PresetTheory {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| TheoryError::UnknownTheory(s.to_string()))
    }
}

fn frobenius_gens() -> Vec<Generator> {
    Signature::frobenius().generators
}

fn g(name: &str) -> Term {
    Term::gen(name)
}

fn id() -> Term {
    Term::Id(1)
}

fn eq(name: &str, lhs: Term, rhs: Term) -> Equation {
    Equation {
        name: name.to_string(),
        lhs,
        rhs,
    }
}

fn monoid_laws() -> Vec<Equation> {
    vec![
        eq(
            "associativity",
            Term::seq(Term::tensor(g(MU), id()), g(MU)),
            Term::seq(Term::tensor(id(), g(MU)), g(MU)),
        ),
        eq(
            "unitality",
            Term::seq(Term::tensor(g(ETA), id()), g(MU)),
            id(),
        ),
        eq("commutativity", Term::seq(Term::swap(), g(MU)), g(MU)),
    ]
}

fn comonoid_laws() -> Vec<Equation> {
    vec![
        eq(
            "coassociativity",
            Term::seq(g(DELTA), Term::tensor(g(DELTA), id())),
            Term::seq(g(DELTA), Term::tensor(id(), g(DELTA))),
        ),
        eq(
            "counitality",
            Term::seq(g(DELTA), Term::tensor(g(EPSILON), id())),
            id(),
        ),
        eq(
            "cocommutativity",
            Term::seq(g(DELTA), Term::swap()),
            g(DELTA),
        ),
    ]
}

/// The three shapes equated by the Frobenius law, top to bottom in the
/// usual picture: `(δ ⊗ 1);(1 ⊗ μ)`, `μ;δ`, `(1 ⊗ δ);(μ ⊗ 1)`.
pub fn frobenius_shapes() -> [Term; 3] {
    [
        Term::seq(Term::tensor(g(DELTA), id()), Term::tensor(id(), g(MU))),
        Term::seq(g(MU), g(DELTA)),
        Term::seq(Term::tensor(id(), g(DELTA)), Term::tensor(g(MU), id())),
    ]
}

fn frobenius_laws() -> Vec<Equation> {
    let [left, middle, right] = frobenius_shapes();
    vec![
        eq("frobenius-left", left, middle.clone()),
        eq("frobenius-right", middle, right),
    ]
}

fn special_law() -> Equation {
    eq("special", Term::seq(g(DELTA), g(MU)), id())
}

fn extra_law() -> Equation {
    eq("extra", Term::seq(g(ETA), g(EPSILON)), Term::Empty)
}

fn bimonoid_laws() -> Vec<Equation> {
    let middle = Term::tensor(Term::tensor(id(), Term::swap()), id());
    vec![
        eq(
            "bimonoid",
            Term::seq(g(MU), g(DELTA)),
            Term::seq(
                Term::seq(Term::tensor(g(DELTA), g(DELTA)), middle),
                Term::tensor(g(MU), g(MU)),
            ),
        ),
        eq(
            "bimonoid-unit",
            Term::seq(g(ETA), g(DELTA)),
            Term::tensor(g(ETA), g(ETA)),
        ),
        eq(
            "bimonoid-counit",
            Term::seq(g(MU), g(EPSILON)),
            Term::tensor(g(EPSILON), g(EPSILON)),
        ),
    ]
}

/// A well-typed random term of at most `max_size` nodes. Deterministic in
/// `seed`.
pub fn random_term(sig: &Signature, max_size: usize, seed: u64) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_size = max_size.max(1);
    if max_size == 1 {
        let mut leaves = vec![Term::Empty, Term::Id(1), Term::swap()];
        leaves.extend(sig.generators().iter().map(|g| Term::gen(g.name.clone())));
        return leaves
            .choose(&mut rng)
            .cloned()
            .expect("leaf set is nonempty");
    }
    let dom = rng.gen_range(0..=3);
    random_term_from(sig, dom, max_size, &mut rng)
}

/// A well-typed random term with domain `dom` and at most `max_size` nodes.
///
/// Built top-down: each node is a leaf, a tensor splitting the incoming
/// wires, or a sequential composite whose second half starts wherever the
/// first half ended. `Id(dom)` is always available as a leaf, so the
/// construction never gets stuck.
pub fn random_term_from<R: Rng + ?Sized>(
    sig: &Signature,
    dom: usize,
    max_size: usize,
    rng: &mut R,
) -> Term {
    if max_size < 3 || rng.gen_bool(0.3) {
        return random_leaf(sig, dom, max_size > 1, rng);
    }
    let budget = max_size - 1;
    let first = rng.gen_range(1..budget);
    if rng.gen_bool(0.5) {
        let split = rng.gen_range(0..=dom);
        let top = random_term_from(sig, split, first, rng);
        let bottom = random_term_from(sig, dom - split, budget - first, rng);
        Term::tensor(top, bottom)
    } else {
        let a = random_term_from(sig, dom, first, rng);
        let (_, mid) = a.typecheck(sig).expect("sampled terms are well typed");
        let b = random_term_from(sig, mid, budget - first, rng);
        Term::seq(a, b)
    }
}

fn random_leaf<R: Rng + ?Sized>(sig: &Signature, dom: usize, wide: bool, rng: &mut R) -> Term {
    let mut leaves: Vec<Term> = sig
        .generators()
        .iter()
        .filter(|g| g.arity == dom)
        .map(|g| Term::gen(g.name.clone()))
        .collect();
    match dom {
        0 => leaves.push(Term::Empty),
        1 => leaves.push(Term::Id(1)),
        2 => leaves.push(Term::swap()),
        _ => {}
    }
    if wide && dom >= 2 {
        leaves.push(Term::Id(dom));
        leaves.extend((1..dom).map(|a| Term::Sym(a, dom - a)));
    }
    leaves.choose(rng).cloned().unwrap_or(Term::Id(dom))
}
