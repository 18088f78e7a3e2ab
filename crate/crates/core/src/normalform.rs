//! Normal forms and the equality decision procedure.
//!
//! Two terms over the Frobenius signature are equal modulo the
//! extraspecial commutative Frobenius axioms exactly when they evaluate to
//! the same corelation; modulo the special bicommutative bimonoid axioms,
//! exactly when they evaluate to the same relation. [`synth`] and
//! [`synth_rel`] go the other way, producing a term in spider normal form
//! for any corelation or relation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arrows::{Boolean, Corelation, Prop};
use crate::partition::{Partition, PartitionError};
use crate::semantics::{eval_in, AnyArrow, EvalError, Target};
use crate::theory::{Signature, Term, TypeError, DELTA, EPSILON, ETA, MU};
use crate::Relation;

/// Largest `dom * cod` accepted by [`enumerate_relations`].
pub const RELATION_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("a spider needs at least one leg")]
    DegenerateSpider,
    #[error("enumerating {dom}x{cod} relations exceeds the cap of {cap} entries")]
    CapExceeded { dom: usize, cod: usize, cap: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Folds `k` wires into one with a left-combed tree of `mu`; `eta` when `k = 0`.
pub fn merge_tree(k: usize) -> Term {
    match k {
        0 => Term::gen(ETA),
        1 => Term::Id(1),
        _ => (2..k).fold(Term::gen(MU), |acc, _| {
            Term::seq(Term::tensor(acc, Term::Id(1)), Term::gen(MU))
        }),
    }
}

/// Unfolds one wire into `k` with a left-combed tree of `delta`; `epsilon` when `k = 0`.
pub fn copy_tree(k: usize) -> Term {
    match k {
        0 => Term::gen(EPSILON),
        1 => Term::Id(1),
        _ => (2..k).fold(Term::gen(DELTA), |acc, _| {
            Term::seq(Term::gen(DELTA), Term::tensor(acc, Term::Id(1)))
        }),
    }
}

/// The connected `p -> q` diagram: merge everything, then copy it out.
pub fn spider(p: usize, q: usize) -> Result<Term, NormalFormError> {
    match (p, q) {
        (0, 0) => Err(NormalFormError::DegenerateSpider),
        (1, _) => Ok(copy_tree(q)),
        (_, 1) => Ok(merge_tree(p)),
        _ => Ok(Term::seq(merge_tree(p), copy_tree(q))),
    }
}

/// A term moving the wire at position `i` to position `targets[i]`, built
/// from adjacent swaps in insertion-sort order. `None` for the identity.
pub fn permutation_term(targets: &[usize]) -> Option<Term> {
    let n = targets.len();
    let mut labels = targets.to_vec();
    let mut layers = Vec::new();
    for i in 1..n {
        let mut j = i;
        while j > 0 && labels[j - 1] > labels[j] {
            labels.swap(j - 1, j);
            layers.push(swap_at(j - 1, n));
            j -= 1;
        }
    }
    Term::seq_all(layers)
}

fn swap_at(k: usize, width: usize) -> Term {
    let pad = |w: usize| (w > 0).then_some(Term::Id(w));
    Term::tensor_all(
        pad(k)
            .into_iter()
            .chain(Some(Term::swap()))
            .chain(pad(width - k - 2)),
    )
}

/// `Sym(n, m)` spelled out with adjacent swaps only.
pub fn expand_braid(n: usize, m: usize) -> Term {
    let targets: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
    permutation_term(&targets).unwrap_or(Term::Id(n + m))
}

/// Spider normal form of a corelation: route the inputs of each block
/// together, apply one spider per block, route the outputs back.
pub fn synth(c: &Corelation) -> Term {
    let (n, m) = (c.dom(), c.cod());
    let mut in_targets = vec![0; n];
    // spider output wire k carries codomain element out_sources[k]
    let mut out_sources = Vec::with_capacity(m);
    let mut spiders = Vec::with_capacity(c.blocks().len());
    let mut next_input = 0;
    for block in c.blocks() {
        let inputs = block.iter().take_while(|&&x| x < n).count();
        for &x in &block[..inputs] {
            in_targets[x] = next_input;
            next_input += 1;
        }
        out_sources.extend(block[inputs..].iter().map(|&x| x - n));
        spiders.push(spider(inputs, block.len() - inputs).expect("blocks are nonempty"));
    }
    let layers = [
        permutation_term(&in_targets),
        Some(Term::tensor_all(spiders)),
        permutation_term(&out_sources),
    ];
    Term::seq_all(layers.into_iter().flatten()).expect("middle layer is always present")
}

/// Normal form of a relation: copy each input to the outputs it relates to,
/// shuffle, and merge at each output.
pub fn synth_rel(r: &Relation) -> Term {
    let (n, m) = (r.dom(), r.cod());
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..m).filter(move |&j| r.get(j, i).0).map(move |j| (i, j)))
        .collect();
    let fan_out =
        Term::tensor_all((0..n).map(|i| copy_tree(pairs.iter().filter(|p| p.0 == i).count())));
    let collect =
        Term::tensor_all((0..m).map(|j| merge_tree(pairs.iter().filter(|p| p.1 == j).count())));
    if pairs.is_empty() {
        return Term::tensor_all([fan_out, collect]);
    }
    let mut by_output: Vec<(usize, usize)> = pairs.clone();
    by_output.sort_by_key(|&(i, j)| (j, i));
    let targets: Vec<usize> = pairs
        .iter()
        .map(|p| {
            by_output
                .iter()
                .position(|q| q == p)
                .expect("same multiset")
        })
        .collect();
    let layers = [Some(fan_out), permutation_term(&targets), Some(collect)];
    Term::seq_all(layers.into_iter().flatten()).expect("nonempty")
}

/// All corelations `n -> m`, each once.
pub fn enumerate_corelations(
    n: usize,
    m: usize,
) -> Result<impl Iterator<Item = Corelation>, NormalFormError> {
    Ok(Partition::enumerate(n + m)?
        .map(move |p| Corelation::new(n, m, p).expect("ground size is n + m")))
}

/// All relations `n -> m`, each once.
pub fn enumerate_relations(
    n: usize,
    m: usize,
) -> Result<impl Iterator<Item = Relation>, NormalFormError> {
    let cells = n * m;
    if cells > RELATION_CAP {
        return Err(NormalFormError::CapExceeded {
            dom: n,
            cod: m,
            cap: RELATION_CAP,
        });
    }
    Ok((0u64..1 << cells).map(move |mask| {
        let entries = (0..cells).map(|k| Boolean(mask >> k & 1 == 1)).collect();
        Relation::from_entries(n, m, entries).expect("entry count is n * m")
    }))
}

/// Theories whose equality [`decide_equal`] can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decidable {
    /// Extraspecial commutative Frobenius monoids, decided in corelations.
    Escfm,
    /// Special bicommutative bimonoids, decided in relations.
    Sbb,
}

impl Decidable {
    pub fn target(self) -> Target {
        match self {
            Decidable::Escfm => Target::Corel,
            Decidable::Sbb => Target::Rel,
        }
    }
}

impl fmt::Display for Decidable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decidable::Escfm => "escfm",
            Decidable::Sbb => "sbb",
        })
    }
}

impl FromStr for Decidable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "escfm" => Ok(Decidable::Escfm),
            "sbb" => Ok(Decidable::Sbb),
            _ => Err(format!(
                "no decision procedure for `{s}` (expected escfm or sbb)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub equal: bool,
    pub left: AnyArrow,
    pub right: AnyArrow,
}

/// Decides whether two terms over `mu, eta, delta, epsilon` are equal in
/// the given theory. The witness is the pair of evaluated arrows.
pub fn decide_equal(t1: &Term, t2: &Term, theory: Decidable) -> Result<Verdict, NormalFormError> {
    let sig = Signature::frobenius();
    let left_ty = t1.typecheck(&sig)?;
    let right_ty = t2.typecheck(&sig)?;
    if left_ty != right_ty {
        return Err(TypeError::Incomparable {
            left: left_ty,
            right: right_ty,
        }
        .into());
    }
    let left = eval_in(t1, theory.target())?;
    let right = eval_in(t2, theory.target())?;
    Ok(Verdict {
        equal: left == right,
        left,
        right,
    })
}
