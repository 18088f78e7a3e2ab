use std::fmt;

use serde::Serialize;

use super::{check_composable, ArrowError, Prop};
use crate::partition::Partition;

/// A partition of `dom + cod`. Indices `0..dom` are the domain,
/// `dom..dom+cod` the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Corelation {
    dom: usize,
    cod: usize,
    part: Partition,
}

impl Corelation {
    pub fn new(dom: usize, cod: usize, part: Partition) -> Result<Self, ArrowError> {
        if part.ground_size() != dom + cod {
            return Err(ArrowError::Partition(
                crate::partition::PartitionError::SizeMismatch {
                    expected: dom + cod,
                    found: part.ground_size(),
                },
            ));
        }
        Ok(Self { dom, cod, part })
    }

    pub fn from_blocks<B, I>(dom: usize, cod: usize, blocks: B) -> Result<Self, ArrowError>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        Self::new(dom, cod, Partition::from_blocks(dom + cod, blocks)?)
    }

    /// The corelation with a single block: everything connected.
    pub fn connected(dom: usize, cod: usize) -> Self {
        Self {
            dom,
            cod,
            part: Partition::indiscrete(dom + cod),
        }
    }

    /// Nothing connected to anything.
    pub fn discrete(dom: usize, cod: usize) -> Self {
        Self {
            dom,
            cod,
            part: Partition::discrete(dom + cod),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.part
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.part.blocks()
    }

    /// Joins `self` on X+Y with `next` on Y+Z, returning the partition of
    /// X+Y+Z. Callers restrict it as they need.
    pub(crate) fn glue(&self, next: &Corelation) -> Result<Partition, ArrowError> {
        check_composable(self.cod, next.dom)?;
        let (n, m, p) = (self.dom, self.cod, next.cod);
        let total = n + m + p;
        let left: Vec<usize> = (0..n + m).collect();
        let right: Vec<usize> = (n..total).collect();
        let a = self.part.embed(&left, total)?;
        let b = next.part.embed(&right, total)?;
        Ok(a.join(&b)?)
    }
}

impl Prop for Corelation {
    fn dom(&self) -> usize {
        self.dom
    }

    fn cod(&self) -> usize {
        self.cod
    }

    fn identity(n: usize) -> Self {
        let part = Partition::from_blocks(2 * n, (0..n).map(|i| [i, n + i]))
            .expect("identity blocks cover 0..2n");
        Self {
            dom: n,
            cod: n,
            part,
        }
    }

    fn braid(n: usize, m: usize) -> Self {
        let k = n + m;
        let blocks = (0..n)
            .map(|i| [i, k + m + i])
            .chain((0..m).map(|j| [n + j, k + j]));
        let part = Partition::from_blocks(2 * k, blocks).expect("braid blocks cover 0..2k");
        Self {
            dom: k,
            cod: k,
            part,
        }
    }

    fn then(&self, next: &Self) -> Result<Self, ArrowError> {
        let joined = self.glue(next)?;
        let (n, m, p) = (self.dom, self.cod, next.cod);
        let keep: Vec<usize> = (0..n).chain(n + m..n + m + p).collect();
        Ok(Self {
            dom: n,
            cod: p,
            part: joined.restrict(&keep)?,
        })
    }

    fn tensor(&self, other: &Self) -> Self {
        let (n1, m1, n2) = (self.dom, self.cod, other.dom);
        let dom = n1 + n2;
        let cod = m1 + other.cod;
        let top = |x: usize| if x < n1 { x } else { dom + (x - n1) };
        let bottom = |y: usize| if y < n2 { n1 + y } else { dom + m1 + (y - n2) };
        let blocks = self
            .part
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| top(x)).collect::<Vec<_>>())
            .chain(
                other
                    .part
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&y| bottom(y)).collect::<Vec<_>>()),
            );
        let part =
            Partition::from_blocks(dom + cod, blocks).expect("tensor of partitions is a partition");
        Self { dom, cod, part }
    }
}

impl fmt::Display for Corelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corel {} -> {} :", self.dom, self.cod)?;
        if self.part.num_blocks() > 0 {
            write!(f, " {}", self.part)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corel(dom: usize, cod: usize, blocks: &[&[usize]]) -> Corelation {
        Corelation::from_blocks(dom, cod, blocks.iter().map(|b| b.to_vec())).unwrap()
    }

    #[test]
    fn identities() {
        assert_eq!(Corelation::identity(0).blocks().len(), 0);
        assert_eq!(Corelation::identity(2).blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(Corelation::identity(1), Corelation::connected(1, 1));
    }

    #[test]
    fn worked_composite() {
        let alpha = corel(5, 6, &[&[0, 1, 5, 6], &[2, 3], &[4, 9, 10], &[7], &[8]]);
        let beta = corel(6, 5, &[&[0, 1, 6], &[2], &[3, 4, 8, 9], &[5, 10], &[7]]);
        let expected = corel(5, 5, &[&[0, 1, 5], &[2, 3], &[4, 7, 8, 9], &[6]]);
        assert_eq!(alpha.then(&beta).unwrap(), expected);
    }

    #[test]
    fn counit_then_unit_disconnects() {
        let counit = Corelation::connected(1, 0);
        let unit = Corelation::connected(0, 1);
        assert_eq!(counit.then(&unit).unwrap(), Corelation::discrete(1, 1));
    }

    #[test]
    fn composition_requires_matching_boundary() {
        let err = Corelation::identity(2)
            .then(&Corelation::identity(3))
            .unwrap_err();
        assert_eq!(err, ArrowError::SizeMismatch { cod: 2, dom: 3 });
    }

    #[test]
    fn tensor_examples() {
        let a = corel(2, 1, &[&[0, 2], &[1]]);
        assert_eq!(a.tensor(&Corelation::identity(0)), a);
        assert_eq!(Corelation::identity(0).tensor(&a), a);
        assert_eq!(
            Corelation::identity(1).tensor(&Corelation::identity(1)),
            Corelation::identity(2)
        );
        // a on wires {0,1}->{0}; identity on wire 2->1
        let t = a.tensor(&Corelation::identity(1));
        assert_eq!(t, corel(3, 2, &[&[0, 3], &[1], &[2, 4]]));
    }

    #[test]
    fn braids() {
        let s = Corelation::braid(1, 1);
        assert_eq!(s.then(&s).unwrap(), Corelation::identity(2));
        assert_eq!(Corelation::braid(0, 3), Corelation::identity(3));
        assert_eq!(Corelation::braid(2, 0), Corelation::identity(2));
        // domain 0 -> codomain 1, domain 1 -> codomain 0
        assert_eq!(s, corel(2, 2, &[&[0, 3], &[1, 2]]));
        let b = Corelation::braid(2, 1);
        assert_eq!(
            b.then(&Corelation::braid(1, 2)).unwrap(),
            Corelation::identity(3)
        );
    }

    #[test]
    fn display() {
        assert_eq!(Corelation::identity(1).to_string(), "corel 1 -> 1 : {0,1}");
        assert_eq!(Corelation::identity(0).to_string(), "corel 0 -> 0 :");
    }
}
