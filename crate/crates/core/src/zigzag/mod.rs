//! Discrete zigzags, their straightening into one-directional diagrams, and incarnations.

mod straighten;

pub use straighten::{
    incarnate, straighten, straighten_map, straighten_pair, unstraighten_map, zigzag_betti,
    StraightenedMap, StraightenedZigzag, Unstraightened,
};

use std::fmt;
use std::str::FromStr;

use crate::chaincx::{ChainComplex, ChainMap};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `a-1 -> a`
    R,
    /// `a -> a-1`
    L,
}

/// The directions `c_1 … c_k` of a zigzag, `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    dirs: Vec<Direction>,
}

impl Profile {
    pub fn new(dirs: Vec<Direction>) -> Result<Self> {
        if dirs.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Profile { dirs })
    }

    /// The standard profile `r…r` of length `k`.
    pub fn standard(k: usize) -> Result<Self> {
        Self::new(vec![Direction::R; k])
    }

    pub fn k(&self) -> usize {
        self.dirs.len()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    /// `c_a` for `1 <= a <= k`.
    pub fn dir(&self, a: usize) -> Direction {
        self.dirs[a - 1]
    }

    /// `w_a = #{b <= a : c_b = l}` for `a = 0..=k`.
    pub fn weights(&self) -> Vec<usize> {
        let mut w = vec![0];
        for d in &self.dirs {
            w.push(w.last().unwrap() + usize::from(*d == Direction::L));
        }
        w
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.dirs {
            f.write_str(if *d == Direction::R { "r" } else { "l" })?;
        }
        Ok(())
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let dirs = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                'r' | 'R' => Ok(Direction::R),
                'l' | 'L' => Ok(Direction::L),
                other => Err(Error::Invalid(format!("unknown direction {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Profile::new(dirs)
    }
}

/// A functor `[k]_c -> Ch`.
///
/// `maps[a-1]` joins `spaces[a-1]` and `spaces[a]`, pointing right when `c_a = r`
/// and left when `c_a = l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteZigzag {
    profile: Profile,
    spaces: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl DiscreteZigzag {
    pub fn new(profile: Profile, spaces: Vec<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self> {
        let k = profile.k();
        if spaces.len() != k + 1 {
            return Err(Error::GridLength {
                expected: k + 1,
                got: spaces.len(),
            });
        }
        if maps.len() != k {
            return Err(Error::GridLength {
                expected: k,
                got: maps.len(),
            });
        }
        for a in 1..=k {
            let (from, to) = match profile.dir(a) {
                Direction::R => (&spaces[a - 1], &spaces[a]),
                Direction::L => (&spaces[a], &spaces[a - 1]),
            };
            let m = &maps[a - 1];
            if m.source() != from || m.target() != to {
                return Err(Error::Invalid(format!(
                    "map {a} does not match the profile direction"
                )));
            }
        }
        Ok(DiscreteZigzag {
            profile,
            spaces,
            maps,
        })
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn k(&self) -> usize {
        self.profile.k()
    }

    pub fn spaces(&self) -> &[ChainComplex] {
        &self.spaces
    }

    pub fn space(&self, a: usize) -> &ChainComplex {
        &self.spaces[a]
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    /// The map between `a-1` and `a`, in its own direction.
    pub fn map(&self, a: usize) -> &ChainMap {
        &self.maps[a - 1]
    }

    pub fn direct_sum(&self, other: &DiscreteZigzag) -> Result<DiscreteZigzag> {
        if self.profile != other.profile {
            return Err(Error::Invalid(
                "direct sum of zigzags with different profiles".into(),
            ));
        }
        DiscreteZigzag::new(
            self.profile.clone(),
            self.spaces
                .iter()
                .zip(&other.spaces)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
            self.maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        )
    }
}

/// A natural transformation between zigzags of one profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagMap {
    source: DiscreteZigzag,
    target: DiscreteZigzag,
    components: Vec<ChainMap>,
}

impl ZigzagMap {
    pub fn new(
        source: DiscreteZigzag,
        target: DiscreteZigzag,
        components: Vec<ChainMap>,
    ) -> Result<Self> {
        if source.profile != target.profile {
            return Err(Error::Invalid("zigzags have different profiles".into()));
        }
        if components.len() != source.k() + 1 {
            return Err(Error::GridLength {
                expected: source.k() + 1,
                got: components.len(),
            });
        }
        for (a, c) in components.iter().enumerate() {
            if c.source() != source.space(a) || c.target() != target.space(a) {
                return Err(Error::Invalid(format!(
                    "component {a} has the wrong endpoints"
                )));
            }
        }
        for a in 1..=source.k() {
            let (lhs, rhs) = match source.profile.dir(a) {
                Direction::R => (
                    components[a].compose(source.map(a))?,
                    target.map(a).compose(&components[a - 1])?,
                ),
                Direction::L => (
                    components[a - 1].compose(source.map(a))?,
                    target.map(a).compose(&components[a])?,
                ),
            };
            if lhs != rhs {
                return Err(Error::NotNatural { index: a });
            }
        }
        Ok(ZigzagMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: &DiscreteZigzag) -> Self {
        ZigzagMap {
            source: x.clone(),
            target: x.clone(),
            components: x.spaces.iter().map(ChainMap::identity).collect(),
        }
    }

    pub fn source(&self) -> &DiscreteZigzag {
        &self.source
    }

    pub fn target(&self) -> &DiscreteZigzag {
        &self.target
    }

    pub fn components(&self) -> &[ChainMap] {
        &self.components
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ZigzagMap) -> Result<ZigzagMap> {
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<_>>()?;
        ZigzagMap::new(other.source.clone(), self.target.clone(), comps)
    }

    pub fn direct_sum(&self, other: &ZigzagMap) -> Result<ZigzagMap> {
        ZigzagMap::new(
            self.source.direct_sum(&other.source)?,
            self.target.direct_sum(&other.target)?,
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        )
    }
}
