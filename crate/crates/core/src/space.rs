use crate::error::Error;
use crate::layout::Layout;
use crate::shape::GridShape;
use std::fmt;
use std::str::FromStr;

/// One of the seven domain axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Ig,
    Isgn,
    L,
    E,
    S,
}

impl Axis {
    pub const ALL: [Axis; 7] = [
        Axis::X,
        Axis::Y,
        Axis::Ig,
        Axis::Isgn,
        Axis::L,
        Axis::E,
        Axis::S,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Ig => "ig",
            Axis::Isgn => "isgn",
            Axis::L => "l",
            Axis::E => "e",
            Axis::S => "s",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The three inter-convertible index spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// k-space layout; `ig` and `isgn` local, `x,y,l,e,s` compounded.
    GLo,
    /// Intermediate FFT layout; `x` local over `inx`, `y,ig,isgn,l,e,s` compounded.
    XxfLo,
    /// Position-space layout; `y` local over `iny`, `x,ig,isgn,l,e,s` compounded.
    YxfLo,
}

impl Space {
    pub const ALL: [Space; 3] = [Space::GLo, Space::XxfLo, Space::YxfLo];

    pub fn as_str(self) -> &'static str {
        match self {
            Space::GLo => "g_lo",
            Space::XxfLo => "xxf_lo",
            Space::YxfLo => "yxf_lo",
        }
    }

    /// Compound axes with extents, fastest varying first.
    pub fn compound_dims(self, shape: &GridShape, layout: Layout) -> Vec<(Axis, usize)> {
        let extent = |axis: Axis| match axis {
            Axis::X => {
                if self == Space::YxfLo {
                    shape.inx
                } else {
                    shape.nakx
                }
            }
            Axis::Y => shape.naky,
            Axis::Ig => shape.nig,
            Axis::Isgn => shape.nsign,
            Axis::L => shape.nlambda,
            Axis::E => shape.negrid,
            Axis::S => shape.nspec,
        };
        match self {
            Space::GLo => layout.axes().iter().map(|&a| (a, extent(a))).collect(),
            Space::XxfLo | Space::YxfLo => {
                let first = if self == Space::XxfLo { Axis::Y } else { Axis::X };
                let mut dims = vec![
                    (first, extent(first)),
                    (Axis::Ig, shape.nig),
                    (Axis::Isgn, shape.nsign),
                ];
                dims.extend(layout.les_axes().iter().map(|&a| (a, extent(a))));
                dims
            }
        }
    }

    /// Axes kept local to each rank in this space.
    pub fn local_axes(self) -> &'static [Axis] {
        match self {
            Space::GLo => &[Axis::Ig, Axis::Isgn],
            Space::XxfLo => &[Axis::X],
            Space::YxfLo => &[Axis::Y],
        }
    }

    /// Number of elements stored per compound cell.
    pub fn local_extent(self, shape: &GridShape) -> usize {
        match self {
            Space::GLo => shape.nig * shape.nsign,
            Space::XxfLo => shape.inx,
            Space::YxfLo => shape.iny,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Space::ALL
            .into_iter()
            .find(|sp| sp.as_str() == s)
            .ok_or_else(|| Error::UnknownSpace(s.to_string()))
    }
}

/// Zero-based position along every domain axis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Coordinate {
    pub x: usize,
    pub y: usize,
    pub ig: usize,
    pub isgn: usize,
    pub l: usize,
    pub e: usize,
    pub s: usize,
}

impl Coordinate {
    pub fn get(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Ig => self.ig,
            Axis::Isgn => self.isgn,
            Axis::L => self.l,
            Axis::E => self.e,
            Axis::S => self.s,
        }
    }

    pub fn set(&mut self, axis: Axis, value: usize) {
        match axis {
            Axis::X => self.x = value,
            Axis::Y => self.y = value,
            Axis::Ig => self.ig = value,
            Axis::Isgn => self.isgn = value,
            Axis::L => self.l = value,
            Axis::E => self.e = value,
            Axis::S => self.s = value,
        }
    }
}

/// Bijective mapping between coordinates and the flattened compound index
/// of one space under one layout.
///
/// The fastest compound dimension has stride 1; local axes are ignored by
/// the flattening.
#[derive(Debug, Clone)]
pub struct Indexer {
    space: Space,
    layout: Layout,
    shape: GridShape,
    dims: Vec<(Axis, usize)>,
    total: usize,
}

impl Indexer {
    pub fn new(space: Space, shape: &GridShape, layout: Layout) -> Self {
        let dims = space.compound_dims(shape, layout);
        let total = dims.iter().map(|&(_, e)| e).product();
        Indexer {
            space,
            layout,
            shape: *shape,
            dims,
            total,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    /// Compound dimensions with extents, fastest varying first.
    pub fn dims(&self) -> &[(Axis, usize)] {
        &self.dims
    }

    /// Product of the compound extents; the local dimension is excluded.
    pub fn total_size(&self) -> usize {
        self.total
    }

    /// Stride of a compound axis in the flat index, if the axis is compounded.
    pub fn stride_of(&self, axis: Axis) -> Option<usize> {
        let mut stride = 1;
        for &(a, extent) in &self.dims {
            if a == axis {
                return Some(stride);
            }
            stride *= extent;
        }
        None
    }

    /// Flattens a coordinate; local axes of the space are ignored.
    pub fn compound_index(&self, coord: &Coordinate) -> Result<usize, Error> {
        let mut flat = 0;
        let mut stride = 1;
        for &(axis, extent) in &self.dims {
            let value = coord.get(axis);
            if value >= extent {
                return Err(Error::CoordinateOutOfRange {
                    axis,
                    value,
                    extent,
                });
            }
            flat += value * stride;
            stride *= extent;
        }
        Ok(flat)
    }

    /// Exact inverse of [`compound_index`](Self::compound_index); local axes
    /// of the returned coordinate are zero.
    pub fn coordinate_of(&self, flat: usize) -> Result<Coordinate, Error> {
        if flat >= self.total {
            return Err(Error::FlatIndexOutOfRange {
                flat,
                total: self.total,
            });
        }
        let mut coord = Coordinate::default();
        let mut rest = flat;
        for &(axis, extent) in &self.dims {
            coord.set(axis, rest % extent);
            rest /= extent;
        }
        Ok(coord)
    }
}

/// Product of the compound extents of `space` under `layout`.
pub fn total_size(space: Space, shape: &GridShape, layout: Layout) -> usize {
    space
        .compound_dims(shape, layout)
        .iter()
        .map(|&(_, e)| e)
        .product()
}
