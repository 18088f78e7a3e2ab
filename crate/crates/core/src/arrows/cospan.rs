use std::fmt;

use serde::Serialize;

use super::{ArrowError, Corelation, Prop};
use crate::partition::Partition;

/// Isomorphism class of a cospan `n -> a <- m` of finite sets.
///
/// The nonempty fibers of `n + m -> a` form `core`; `extra` counts the apex
/// points hit by neither leg, so `a = core.blocks().len() + extra`. The
/// cospan is jointly epic exactly when `extra == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cospan {
    core: Corelation,
    extra: usize,
}

impl Cospan {
    pub fn new(core: Corelation, extra: usize) -> Self {
        Self { core, extra }
    }

    /// The cospan `n -f-> apex <-g- m`, up to isomorphism of the apex.
    pub fn from_functions(
        n: usize,
        m: usize,
        apex: usize,
        f: &[usize],
        g: &[usize],
    ) -> Result<Self, ArrowError> {
        if f.len() != n {
            return Err(ArrowError::Range {
                value: f.len(),
                bound: n,
            });
        }
        if g.len() != m {
            return Err(ArrowError::Range {
                value: g.len(),
                bound: m,
            });
        }
        if let Some(&bad) = f.iter().chain(g).find(|&&v| v >= apex) {
            return Err(ArrowError::Range {
                value: bad,
                bound: apex,
            });
        }
        let labels: Vec<usize> = f.iter().chain(g).copied().collect();
        let part = Partition::from_labels(&labels);
        let hit = part.num_blocks();
        Ok(Self {
            core: Corelation::new(n, m, part)?,
            extra: apex - hit,
        })
    }

    pub fn core(&self) -> &Corelation {
        &self.core
    }

    pub fn extra(&self) -> usize {
        self.extra
    }

    /// Size of the apex.
    pub fn apex(&self) -> usize {
        self.core.blocks().len() + self.extra
    }

    /// Drops the apex points outside the image of the legs.
    pub fn corestrict(&self) -> Corelation {
        self.core.clone()
    }
}

impl From<Corelation> for Cospan {
    fn from(core: Corelation) -> Self {
        Self { core, extra: 0 }
    }
}

impl Prop for Cospan {
    fn dom(&self) -> usize {
        self.core.dom()
    }

    fn cod(&self) -> usize {
        self.core.cod()
    }

    fn identity(n: usize) -> Self {
        Corelation::identity(n).into()
    }

    fn braid(n: usize, m: usize) -> Self {
        Corelation::braid(n, m).into()
    }

    /// Pushout. Components of the glued diagram that touch only the shared
    /// boundary survive as unreached apex points.
    fn then(&self, next: &Self) -> Result<Self, ArrowError> {
        let joined = self.core.glue(&next.core)?;
        let (n, m) = (self.dom(), self.cod());
        let middle_only = joined
            .blocks()
            .iter()
            .filter(|b| b.iter().all(|&x| x >= n && x < n + m))
            .count();
        Ok(Self {
            core: self.core.then(&next.core)?,
            extra: self.extra + next.extra + middle_only,
        })
    }

    fn tensor(&self, other: &Self) -> Self {
        Self {
            core: self.core.tensor(&other.core),
            extra: self.extra + other.extra,
        }
    }
}

impl fmt::Display for Cospan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cospan {} -> {} extra={} :",
            self.dom(),
            self.cod(),
            self.extra
        )?;
        if self.core.blocks().is_empty() {
            Ok(())
        } else {
            write!(f, " {}", self.core.partition())
        }
    }
}
