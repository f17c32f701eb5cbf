use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident, $inner:ty) => {
        $(#[$meta])*
        #[derive(
            Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub $inner);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }

            #[inline]
            pub fn from_index(i: usize) -> Self {
                $name(i as $inner)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// Index of a vertex of the arena.
    VertexId,
    u32
);
id_type!(
    /// Index of a player. Player indices follow the order of the `players` array.
    PlayerId,
    u16
);
id_type!(
    /// Index of an action. The index order is the fixed total order on actions.
    ActionId,
    u16
);

/// Maximum number of players supported by [`PlayerSet`].
pub const MAX_PLAYERS: usize = 64;

/// A set of players stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerSet(pub u64);

impl PlayerSet {
    pub const EMPTY: PlayerSet = PlayerSet(0);

    pub fn singleton(p: PlayerId) -> Self {
        PlayerSet(1u64 << p.0)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PlayerSet(u64::MAX)
        } else {
            PlayerSet((1u64 << n) - 1)
        }
    }

    pub fn from_players<I: IntoIterator<Item = PlayerId>>(it: I) -> Self {
        it.into_iter().fold(PlayerSet::EMPTY, |s, p| s.with(p))
    }

    #[inline]
    pub fn contains(self, p: PlayerId) -> bool {
        self.0 >> p.0 & 1 == 1
    }

    #[inline]
    pub fn with(self, p: PlayerId) -> Self {
        PlayerSet(self.0 | 1u64 << p.0)
    }

    #[inline]
    pub fn without(self, p: PlayerId) -> Self {
        PlayerSet(self.0 & !(1u64 << p.0))
    }

    pub fn insert(&mut self, p: PlayerId) {
        self.0 |= 1u64 << p.0;
    }

    #[inline]
    pub fn union(self, o: PlayerSet) -> Self {
        PlayerSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: PlayerSet) -> Self {
        PlayerSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: PlayerSet) -> Self {
        PlayerSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: PlayerSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Least player of the set.
    pub fn first(self) -> Option<PlayerId> {
        if self.0 == 0 {
            None
        } else {
            Some(PlayerId(self.0.trailing_zeros() as u16))
        }
    }

    pub fn iter(self) -> impl Iterator<Item = PlayerId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let p = bits.trailing_zeros();
            bits &= bits - 1;
            Some(PlayerId(p as u16))
        })
    }
}

impl fmt::Debug for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.0)).finish()
    }
}

impl fmt::Display for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<PlayerId> for PlayerSet {
    fn from_iter<I: IntoIterator<Item = PlayerId>>(iter: I) -> Self {
        PlayerSet::from_players(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let s = PlayerSet::from_players([PlayerId(0), PlayerId(3), PlayerId(4)]);
        assert!(s.contains(PlayerId(3)));
        assert!(!s.contains(PlayerId(1)));
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 3, 4]);
        assert_eq!(s.without(PlayerId(0)).first(), Some(PlayerId(3)));
        assert_eq!(format!("{s}"), "{0,3,4}");
        assert_eq!(PlayerSet::full(5).len(), 5);
        assert_eq!(PlayerSet::full(64).len(), 64);
    }
}
