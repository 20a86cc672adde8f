use crate::{Error, Result};

/// One of the two field modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::One, Mode::Two];

    /// Zero-based position (0 for mode 1, 1 for mode 2).
    pub fn index(self) -> usize {
        match self {
            Mode::One => 0,
            Mode::Two => 1,
        }
    }

    pub fn from_index(i: usize) -> Mode {
        if i == 0 {
            Mode::One
        } else {
            Mode::Two
        }
    }

    pub fn other(self) -> Mode {
        match self {
            Mode::One => Mode::Two,
            Mode::Two => Mode::One,
        }
    }
}

impl TryFrom<u8> for Mode {
    type Error = Error;

    fn try_from(v: u8) -> Result<Mode> {
        match v {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            other => Err(Error::InvalidMode(other)),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// Two-mode number basis `|n1, n2⟩` with `n1 ≤ cutoff1`, `n2 ≤ cutoff2`,
/// ordered lexicographically: `index(n1, n2) = n1·(cutoff2+1) + n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockSpace {
    cutoff1: usize,
    cutoff2: usize,
}

impl FockSpace {
    pub fn new(cutoff1: usize, cutoff2: usize) -> Self {
        FockSpace { cutoff1, cutoff2 }
    }

    pub fn cutoff(&self, mode: Mode) -> usize {
        match mode {
            Mode::One => self.cutoff1,
            Mode::Two => self.cutoff2,
        }
    }

    pub fn cutoffs(&self) -> (usize, usize) {
        (self.cutoff1, self.cutoff2)
    }

    /// Number of levels of one mode (`cutoff + 1`).
    pub fn levels(&self, mode: Mode) -> usize {
        self.cutoff(mode) + 1
    }

    pub fn dim(&self) -> usize {
        (self.cutoff1 + 1) * (self.cutoff2 + 1)
    }

    pub fn index(&self, n1: usize, n2: usize) -> Result<usize> {
        if n1 > self.cutoff1 || n2 > self.cutoff2 {
            return Err(Error::OutOfRange {
                n1,
                n2,
                cutoff1: self.cutoff1,
                cutoff2: self.cutoff2,
            });
        }
        Ok(n1 * (self.cutoff2 + 1) + n2)
    }

    /// Inverse of [`FockSpace::index`].
    pub fn levels_of(&self, index: usize) -> (usize, usize) {
        (index / (self.cutoff2 + 1), index % (self.cutoff2 + 1))
    }

    /// Space with `extra` more levels in each mode.
    pub fn padded(&self, extra: usize) -> FockSpace {
        FockSpace::new(self.cutoff1 + extra, self.cutoff2 + extra)
    }

    pub fn contains(&self, other: &FockSpace) -> bool {
        self.cutoff1 >= other.cutoff1 && self.cutoff2 >= other.cutoff2
    }

    /// True when `(n1, n2)` lies on the two outermost layers of either mode.
    pub fn is_edge(&self, n1: usize, n2: usize) -> bool {
        n1 + 1 >= self.cutoff1 || n2 + 1 >= self.cutoff2
    }
}

pub fn make_space(cutoff1: usize, cutoff2: usize) -> FockSpace {
    FockSpace::new(cutoff1, cutoff2)
}
