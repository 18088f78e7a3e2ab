//! Evaluation of terms into the four props.
//!
//! [`eval`] is the strict symmetric monoidal functor out of the free prop
//! determined by a [`Model`]: identities, symmetries, composites and tensors
//! go to their counterparts in the target, generators go wherever the model
//! sends them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arrows::{ArrowError, Corelation, Cospan, Matrix, Prop, Rig};
use crate::theory::{Generator, Signature, Term, Theory, TypeError, DELTA, EPSILON, ETA, MU};
use crate::{Relation, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Arrow(#[from] ArrowError),
    #[error("model does not interpret generator `{0}` with the theory's type")]
    MissingGenerator(String),
    #[error("generator `{0}` assigned twice")]
    DuplicateGenerator(String),
    #[error("unknown model `{0}` (expected one of corel, cospan, rel, span)")]
    UnknownTarget(String),
}

/// An interpretation of each generator as an arrow of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Model<A> {
    signature: Signature,
    assign: Vec<A>,
}

impl<A: Prop> Model<A> {
    /// The generator types are read off the assigned arrows.
    pub fn new<S: Into<String>>(
        assignments: impl IntoIterator<Item = (S, A)>,
    ) -> Result<Self, EvalError> {
        let (gens, assign): (Vec<_>, Vec<_>) = assignments
            .into_iter()
            .map(|(name, a)| (Generator::new(name, a.dom(), a.cod()), a))
            .unzip();
        let signature = Signature::new(gens).map_err(|e| match e {
            crate::theory::TheoryError::DuplicateGenerator(n) => EvalError::DuplicateGenerator(n),
            other => unreachable!("{other}"),
        })?;
        Ok(Self { signature, assign })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn get(&self, name: &str) -> Option<&A> {
        self.signature
            .generators()
            .iter()
            .position(|g| g.name == name)
            .map(|i| &self.assign[i])
    }
}

/// Evaluates a term, typechecking it against the model's signature first.
pub fn eval<A: Prop>(t: &Term, model: &Model<A>) -> Result<A, EvalError> {
    t.typecheck(model.signature())?;
    eval_checked(t, model)
}

fn eval_checked<A: Prop>(t: &Term, model: &Model<A>) -> Result<A, EvalError> {
    Ok(match t {
        Term::Empty => A::identity(0),
        Term::Id(k) => A::identity(*k),
        Term::Sym(n, m) => A::braid(*n, *m),
        Term::Gen(name) => model
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::MissingGenerator(name.clone()))?,
        Term::Seq(a, b) => eval_checked(a, model)?.then(&eval_checked(b, model)?)?,
        Term::Tensor(a, b) => eval_checked(a, model)?.tensor(&eval_checked(b, model)?),
    })
}

/// The Frobenius monoid on one wire: each generator is a single connected
/// component. In cospans the apex is a single point.
pub fn frobenius_model<A: Prop + From<Corelation>>() -> Model<A> {
    Model::new([
        (MU, Corelation::connected(2, 1).into()),
        (ETA, Corelation::connected(0, 1).into()),
        (DELTA, Corelation::connected(1, 2).into()),
        (EPSILON, Corelation::connected(1, 0).into()),
    ])
    .expect("generator names are distinct")
}

/// The bimonoid on one wire in matrices over `R`: merge and copy are
/// all-ones rows and columns, unit and counit are empty.
pub fn bimonoid_model<R: Rig>() -> Model<Matrix<R>> {
    Model::new([
        (MU, Matrix::filled(2, 1, R::one())),
        (ETA, Matrix::zeros(0, 1)),
        (DELTA, Matrix::filled(1, 2, R::one())),
        (EPSILON, Matrix::zeros(1, 0)),
    ])
    .expect("generator names are distinct")
}

/// Finite sets and functions (as jointly epic cospans) with their unique
/// maps `2 -> 1` and `0 -> 1`: a commutative monoid.
pub fn finset_model() -> Model<Cospan> {
    let merge = Cospan::from_functions(2, 1, 1, &[0, 0], &[0]).expect("valid function");
    let unit = Cospan::from_functions(0, 1, 1, &[], &[0]).expect("valid function");
    Model::new([(MU, merge), (ETA, unit)]).expect("generator names are distinct")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck<A> {
    pub name: String,
    pub holds: bool,
    pub lhs: A,
    pub rhs: A,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport<A> {
    pub theory: String,
    pub checks: Vec<AxiomCheck<A>>,
}

impl<A> AxiomReport<A> {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }

    fn map<B>(self, f: impl Fn(A) -> B) -> AxiomReport<B> {
        AxiomReport {
            theory: self.theory,
            checks: self
                .checks
                .into_iter()
                .map(|c| AxiomCheck {
                    name: c.name,
                    holds: c.holds,
                    lhs: f(c.lhs),
                    rhs: f(c.rhs),
                })
                .collect(),
        }
    }
}

/// Evaluates both sides of every equation of `theory` in `model`.
pub fn check_axioms<A: Prop>(
    theory: &Theory,
    model: &Model<A>,
) -> Result<AxiomReport<A>, EvalError> {
    if let Some(g) = theory
        .signature
        .generators()
        .iter()
        .find(|g| model.signature().get(&g.name) != Some(g))
    {
        return Err(EvalError::MissingGenerator(g.name.clone()));
    }
    let checks = theory
        .equations
        .iter()
        .map(|eq| {
            let lhs = eval(&eq.lhs, model)?;
            let rhs = eval(&eq.rhs, model)?;
            Ok(AxiomCheck {
                name: eq.name.clone(),
                holds: lhs == rhs,
                lhs,
                rhs,
            })
        })
        .collect::<Result<_, EvalError>>()?;
    Ok(AxiomReport {
        theory: theory.name.clone(),
        checks,
    })
}

/// The four built-in targets, each with its standard model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Corel,
    Cospan,
    Rel,
    Span,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::Corel, Target::Cospan, Target::Rel, Target::Span];
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Corel => "corel",
            Target::Cospan => "cospan",
            Target::Rel => "rel",
            Target::Span => "span",
        })
    }
}

impl FromStr for Target {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| EvalError::UnknownTarget(s.to_string()))
    }
}

/// An arrow of any of the four props.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnyArrow {
    Corel(Corelation),
    Cospan(Cospan),
    Rel(Relation),
    Span(Span),
}

impl AnyArrow {
    pub fn arity(&self) -> (usize, usize) {
        match self {
            AnyArrow::Corel(a) => a.arity(),
            AnyArrow::Cospan(a) => a.arity(),
            AnyArrow::Rel(a) => a.arity(),
            AnyArrow::Span(a) => a.arity(),
        }
    }
}

impl fmt::Display for AnyArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyArrow::Corel(a) => a.fmt(f),
            AnyArrow::Cospan(a) => a.fmt(f),
            AnyArrow::Rel(a) => a.fmt(f),
            AnyArrow::Span(a) => a.fmt(f),
        }
    }
}

/// Evaluates in the standard model of `target`: the Frobenius model for
/// corelations and cospans, the bimonoid model for relations and spans.
pub fn eval_in(t: &Term, target: Target) -> Result<AnyArrow, EvalError> {
    Ok(match target {
        Target::Corel => AnyArrow::Corel(eval(t, &frobenius_model())?),
        Target::Cospan => AnyArrow::Cospan(eval(t, &frobenius_model())?),
        Target::Rel => AnyArrow::Rel(eval(t, &bimonoid_model())?),
        Target::Span => AnyArrow::Span(eval(t, &bimonoid_model())?),
    })
}

/// [`check_axioms`] against the standard model of `target`.
pub fn check_axioms_in(
    theory: &Theory,
    target: Target,
) -> Result<AxiomReport<AnyArrow>, EvalError> {
    Ok(match target {
        Target::Corel => check_axioms(theory, &frobenius_model())?.map(AnyArrow::Corel),
        Target::Cospan => check_axioms(theory, &frobenius_model())?.map(AnyArrow::Cospan),
        Target::Rel => check_axioms(theory, &bimonoid_model())?.map(AnyArrow::Rel),
        Target::Span => check_axioms(theory, &bimonoid_model())?.map(AnyArrow::Span),
    })
}
