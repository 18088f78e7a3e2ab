//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls into the composition code it is used to check: joins
//! are computed by fixpoint closure, pushouts and pullbacks on explicitly
//! labelled finite sets.

#![allow(dead_code)]

use corel::{Boolean, Corelation, Cospan, Partition, Prop, Relation, Span};
use rand::Rng;

/// Bell numbers by the Bell triangle.
pub fn bell(k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..k {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// Equivalence closure of a set of pairs on `0..k`, as a label per element
/// (the least element of its class).
pub fn closure_labels(k: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut rel = vec![vec![false; k]; k];
    for (x, row) in rel.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(a, b) in pairs {
        rel[a][b] = true;
        rel[b][a] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..k {
            for y in 0..k {
                if !rel[x][y] && (0..k).any(|z| rel[x][z] && rel[z][y]) {
                    rel[x][y] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..k)
        .map(|x| (0..k).find(|&y| rel[x][y]).unwrap())
        .collect()
}

fn block_pairs(blocks: &[Vec<usize>], offset: impl Fn(usize) -> usize) -> Vec<(usize, usize)> {
    blocks
        .iter()
        .flat_map(|b| {
            b.windows(2)
                .map(|w| (offset(w[0]), offset(w[1])))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Groups `elements` by label into sorted blocks ordered by minimum.
pub fn group(elements: &[(usize, usize)]) -> Vec<Vec<usize>> {
    // (element, label)
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    for &(x, l) in elements {
        match blocks.iter_mut().find(|(label, _)| *label == l) {
            Some((_, b)) => b.push(x),
            None => blocks.push((l, vec![x])),
        }
    }
    let mut out: Vec<Vec<usize>> = blocks
        .into_iter()
        .map(|(_, mut b)| {
            b.sort();
            b
        })
        .collect();
    out.sort();
    out
}

/// Composite of a chain of corelations by one closure over the disjoint
/// union of all their boundaries, restricted to the two ends.
pub fn corel_chain_oracle(chain: &[&Corelation]) -> Vec<Vec<usize>> {
    let mut offsets = vec![0];
    for c in chain {
        offsets.push(offsets.last().unwrap() + c.dom());
    }
    let total = offsets.last().unwrap() + chain.last().unwrap().cod();
    let mut pairs = Vec::new();
    for (c, &off) in chain.iter().zip(&offsets) {
        pairs.extend(block_pairs(c.blocks(), |x| x + off));
    }
    let labels = closure_labels(total, &pairs);
    let n = chain[0].dom();
    let last = offsets[chain.len()];
    let kept: Vec<(usize, usize)> = (0..n)
        .map(|x| (x, labels[x]))
        .chain((last..total).map(|x| (x - last + n, labels[x])))
        .collect();
    group(&kept)
}

/// A cospan as explicit functions into a labelled apex.
#[derive(Debug, Clone)]
pub struct LabelledCospan {
    pub apex: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl LabelledCospan {
    /// Some representative of the iso class, with apex labels shuffled.
    pub fn of(c: &Cospan, rng: &mut impl Rng) -> Self {
        let apex = c.apex();
        let mut perm: Vec<usize> = (0..apex).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
        let n = c.dom();
        let mut left = vec![0; n];
        let mut right = vec![0; c.cod()];
        for (b, block) in c.core().blocks().iter().enumerate() {
            for &x in block {
                if x < n {
                    left[x] = perm[b];
                } else {
                    right[x - n] = perm[b];
                }
            }
        }
        Self { apex, left, right }
    }

    /// Pushout over the shared boundary.
    pub fn then(&self, next: &LabelledCospan) -> LabelledCospan {
        let total = self.apex + next.apex;
        let pairs: Vec<(usize, usize)> = self
            .right
            .iter()
            .zip(&next.left)
            .map(|(&a, &b)| (a, self.apex + b))
            .collect();
        let labels = closure_labels(total, &pairs);
        let mut classes: Vec<usize> = labels.clone();
        classes.sort();
        classes.dedup();
        let index = |l: usize| classes.iter().position(|&c| c == l).unwrap();
        LabelledCospan {
            apex: classes.len(),
            left: self.left.iter().map(|&a| index(labels[a])).collect(),
            right: next
                .right
                .iter()
                .map(|&b| index(labels[self.apex + b]))
                .collect(),
        }
    }

    /// (blocks of the induced partition of dom+cod, unreached apex points).
    pub fn iso_class(&self) -> (Vec<Vec<usize>>, usize) {
        let n = self.left.len();
        let elements: Vec<(usize, usize)> = self
            .left
            .iter()
            .enumerate()
            .map(|(x, &a)| (x, a))
            .chain(self.right.iter().enumerate().map(|(y, &a)| (n + y, a)))
            .collect();
        let blocks = group(&elements);
        let extra = self.apex - blocks.len();
        (blocks, extra)
    }
}

pub fn cospan_class(c: &Cospan) -> (Vec<Vec<usize>>, usize) {
    (c.core().blocks().to_vec(), c.extra())
}

/// A span as an explicit apex with legs `(domain index, codomain index)`.
#[derive(Debug, Clone)]
pub struct LabelledSpan {
    pub dom: usize,
    pub cod: usize,
    pub apex: Vec<(usize, usize)>,
}

impl LabelledSpan {
    pub fn of(s: &Span) -> Self {
        let mut apex = Vec::new();
        for j in 0..s.cod() {
            for i in 0..s.dom() {
                for _ in 0..s.get(j, i) {
                    apex.push((i, j));
                }
            }
        }
        Self {
            dom: s.dom(),
            cod: s.cod(),
            apex,
        }
    }

    /// Pullback: pairs of apex elements agreeing on the middle.
    pub fn then(&self, next: &LabelledSpan) -> LabelledSpan {
        let mut apex = Vec::new();
        for &(i, k) in &self.apex {
            for &(k2, j) in &next.apex {
                if k == k2 {
                    apex.push((i, j));
                }
            }
        }
        LabelledSpan {
            dom: self.dom,
            cod: next.cod,
            apex,
        }
    }

    pub fn counts(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.dom]; self.cod];
        for &(i, j) in &self.apex {
            out[j][i] += 1;
        }
        out
    }
}

pub fn span_counts(s: &Span) -> Vec<Vec<u64>> {
    (0..s.cod())
        .map(|j| (0..s.dom()).map(|i| s.get(j, i)).collect())
        .collect()
}

/// Relational composite by direct existential search.
pub fn rel_compose_oracle(r1: &Relation, r2: &Relation) -> Vec<Vec<bool>> {
    (0..r2.cod())
        .map(|j| {
            (0..r1.dom())
                .map(|i| (0..r1.cod()).any(|k| r1.get(k, i).0 && r2.get(j, k).0))
                .collect()
        })
        .collect()
}

pub fn rel_rows(r: &Relation) -> Vec<Vec<bool>> {
    (0..r.cod())
        .map(|j| (0..r.dom()).map(|i| r.get(j, i).0).collect())
        .collect()
}

pub fn random_corelation(rng: &mut impl Rng, dom: usize, cod: usize) -> Corelation {
    let k = dom + cod;
    let blocks = rng.gen_range(1..=k.max(1));
    let labels: Vec<usize> = (0..k).map(|_| rng.gen_range(0..blocks)).collect();
    Corelation::new(dom, cod, Partition::from_labels(&labels)).unwrap()
}

pub fn random_cospan(rng: &mut impl Rng, dom: usize, cod: usize) -> Cospan {
    Cospan::new(random_corelation(rng, dom, cod), rng.gen_range(0..=2))
}

pub fn random_span(rng: &mut impl Rng, dom: usize, cod: usize) -> Span {
    let entries = (0..dom * cod).map(|_| rng.gen_range(0..=2)).collect();
    Span::from_entries(dom, cod, entries).unwrap()
}

pub fn random_relation(rng: &mut impl Rng, dom: usize, cod: usize) -> Relation {
    let entries = (0..dom * cod).map(|_| Boolean(rng.gen_bool(0.4))).collect();
    Relation::from_entries(dom, cod, entries).unwrap()
}

/// Every cospan `n -> m` with at most `max_extra` unreached points.
pub fn all_cospans(n: usize, m: usize, max_extra: usize) -> Vec<Cospan> {
    let mut out = Vec::new();
    for p in Partition::enumerate(n + m).unwrap() {
        for extra in 0..=max_extra {
            out.push(Cospan::new(
                Corelation::new(n, m, p.clone()).unwrap(),
                extra,
            ));
        }
    }
    out
}

/// Every span `n -> m` with entries at most `max_entry`.
pub fn all_spans(n: usize, m: usize, max_entry: u64) -> Vec<Span> {
    let cells = n * m;
    let base = max_entry + 1;
    (0..base.pow(cells as u32))
        .map(|mut code| {
            let entries = (0..cells)
                .map(|_| {
                    let v = code % base;
                    code /= base;
                    v
                })
                .collect();
            Span::from_entries(n, m, entries).unwrap()
        })
        .collect()
}

/// Generic prop laws on one instance; returns the name of the first law
/// that fails.
pub fn prop_law_violation<A: Prop>(f: &A, g: &A, h: &A, f2: &A, g2: &A) -> Option<&'static str> {
    // f: a->b, g: b->c, h: c->d, f2: e->x, g2: x->y
    let assoc_l = f.then(g).ok()?.then(h).ok()?;
    let assoc_r = f.then(&g.then(h).ok()?).ok()?;
    if assoc_l != assoc_r {
        return Some("associativity");
    }
    if A::identity(f.dom()).then(f).ok()? != *f || f.then(&A::identity(f.cod())).ok()? != *f {
        return Some("identity");
    }
    let lhs = f.then(g).ok()?.tensor(&f2.then(g2).ok()?);
    let rhs = f.tensor(f2).then(&g.tensor(g2)).ok()?;
    if lhs != rhs {
        return Some("interchange");
    }
    let (n, m) = (f.dom(), f2.dom());
    if A::braid(n, m).then(&A::braid(m, n)).ok()? != A::identity(n + m) {
        return Some("symmetry");
    }
    let nat_l = f.tensor(f2).then(&A::braid(f.cod(), f2.cod())).ok()?;
    let nat_r = A::braid(n, m).then(&f2.tensor(f)).ok()?;
    if nat_l != nat_r {
        return Some("naturality");
    }
    if f.tensor(&A::identity(0)) != *f || A::identity(0).tensor(f) != *f {
        return Some("unit");
    }
    None
}

/// Reverses a term over the Frobenius signature (mu <-> delta, eta <-> epsilon).
pub fn mirror(t: &corel::theory::Term) -> corel::theory::Term {
    use corel::theory::{Term, DELTA, EPSILON, ETA, MU};
    match t {
        Term::Empty | Term::Id(_) => t.clone(),
        Term::Sym(n, m) => Term::Sym(*m, *n),
        Term::Gen(name) => Term::gen(match name.as_str() {
            MU => DELTA,
            DELTA => MU,
            ETA => EPSILON,
            EPSILON => ETA,
            other => other,
        }),
        Term::Seq(a, b) => Term::seq(mirror(b), mirror(a)),
        Term::Tensor(a, b) => Term::tensor(mirror(a), mirror(b)),
    }
}

pub fn units(a: usize) -> corel::theory::Term {
    corel::theory::Term::tensor_all((0..a).map(|_| corel::theory::Term::gen(corel::theory::ETA)))
}

/// Semantics-preserving syntactic noise: re-association, identity and
/// empty padding, and double swaps.
pub fn structural_variant(t: &corel::theory::Term, rng: &mut impl Rng) -> corel::theory::Term {
    use corel::theory::Term;
    let t = match t {
        Term::Seq(a, b) => match (&**a, rng.gen_range(0..3)) {
            (Term::Seq(x, y), 0) => {
                Term::seq((**x).clone(), Term::seq((**y).clone(), (**b).clone()))
            }
            _ => Term::seq(structural_variant(a, rng), structural_variant(b, rng)),
        },
        Term::Tensor(a, b) => match (&**a, rng.gen_range(0..3)) {
            (Term::Tensor(x, y), 0) => {
                Term::tensor((**x).clone(), Term::tensor((**y).clone(), (**b).clone()))
            }
            _ => Term::tensor(structural_variant(a, rng), structural_variant(b, rng)),
        },
        other => other.clone(),
    };
    match rng.gen_range(0..8) {
        0 => Term::tensor(t, Term::Empty),
        1 => Term::tensor(Term::Id(0), t),
        2 if matches!(t, Term::Id(2)) => Term::seq(Term::swap(), Term::swap()),
        _ => t,
    }
}

/// Post-composes `sub: _ -> k` with a k -> k context that routes some of
/// its wires through `side: a -> b`. Extra inputs of `side` come from
/// units, extra outputs are merged back into the k wires or discarded.
pub fn wrap_with_side(
    sub: corel::theory::Term,
    k: usize,
    side: corel::theory::Term,
    (a, b): (usize, usize),
    rng: &mut impl Rng,
) -> corel::theory::Term {
    use corel::normalform::permutation_term;
    use corel::theory::{Term, EPSILON, MU};
    let mut perm: Vec<usize> = (0..k + a).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    let mut layers = vec![sub, Term::tensor(Term::Id(k), units(a))];
    if let Some(p) = permutation_term(&perm) {
        layers.push(p);
    }
    layers.push(Term::tensor(Term::Id(k), side));
    for remaining in (1..=b).rev() {
        let rest = Term::Id(remaining - 1);
        if k > 0 && rng.gen_bool(0.6) {
            layers.push(Term::tensor(
                Term::tensor(Term::Id(k - 1), Term::gen(MU)),
                rest,
            ));
        } else {
            layers.push(Term::tensor(
                Term::tensor(Term::Id(k), Term::gen(EPSILON)),
                rest,
            ));
        }
    }
    Term::seq_all(layers).expect("at least one layer")
}
