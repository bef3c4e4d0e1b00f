use crate::error::Error;
use crate::space::Axis;
use std::fmt;
use std::str::FromStr;

/// One of the six admissible orderings of the compounded dimensions
/// `x, y, l, e, s`.
///
/// Reading the name left to right gives the fastest to slowest varying
/// compound dimension; distribution across ranks consumes dimensions from
/// the right (so `xyles` decomposes `s` first and `x` last).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Xyles,
    Yxles,
    Lyxes,
    Yxels,
    Lxyes,
    Lexys,
}

impl Layout {
    pub const ALL: [Layout; 6] = [
        Layout::Xyles,
        Layout::Yxles,
        Layout::Lyxes,
        Layout::Yxels,
        Layout::Lxyes,
        Layout::Lexys,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Layout::Xyles => "xyles",
            Layout::Yxles => "yxles",
            Layout::Lyxes => "lyxes",
            Layout::Yxels => "yxels",
            Layout::Lxyes => "lxyes",
            Layout::Lexys => "lexys",
        }
    }

    /// The five compound axes, fastest varying first.
    pub fn axes(self) -> [Axis; 5] {
        let mut out = [Axis::X; 5];
        for (slot, c) in out.iter_mut().zip(self.as_str().chars()) {
            *slot = match c {
                'x' => Axis::X,
                'y' => Axis::Y,
                'l' => Axis::L,
                'e' => Axis::E,
                's' => Axis::S,
                _ => unreachable!(),
            };
        }
        out
    }

    /// The velocity-space axes `l, e, s` in the relative order they hold in
    /// the layout, fastest varying first.
    pub fn les_axes(self) -> [Axis; 3] {
        let mut out = [Axis::L; 3];
        let mut n = 0;
        for axis in self.axes() {
            if matches!(axis, Axis::L | Axis::E | Axis::S) {
                out[n] = axis;
                n += 1;
            }
        }
        out
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Layout::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLayout(s.to_string()))
    }
}
