use crate::error::Error;

/// Index extents of the seven-dimensional simulation domain.
///
/// `nakx`/`naky` are the dealiased Fourier mode counts kept in the k-space
/// layout; `inx`/`iny` are the full spatial extents before the dealiasing
/// filter drops the high wavenumbers. `nig` must be odd and `nsign` is
/// always 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    /// Dealiased Fourier modes in X.
    pub nakx: usize,
    /// Dealiased Fourier modes in Y.
    pub naky: usize,
    /// Full X extent without the dealiasing drop.
    pub inx: usize,
    /// Full Y extent without the dealiasing drop.
    pub iny: usize,
    /// Extent of the field-parallel coordinate index; always odd.
    pub nig: usize,
    /// Extent of the parallel/antiparallel motion index; always 2.
    pub nsign: usize,
    /// Pitch-angle extent.
    pub nlambda: usize,
    /// Energy extent.
    pub negrid: usize,
    /// Species extent.
    pub nspec: usize,
    /// Size of one stored element, used only for byte reporting.
    pub element_bytes: usize,
}

impl GridShape {
    /// Checks the shape invariants, returning the shape on success.
    pub fn validated(self) -> Result<Self, Error> {
        let positive = [
            ("nakx", self.nakx),
            ("naky", self.naky),
            ("inx", self.inx),
            ("iny", self.iny),
            ("nig", self.nig),
            ("nlambda", self.nlambda),
            ("negrid", self.negrid),
            ("nspec", self.nspec),
            ("element_bytes", self.element_bytes),
        ];
        for (name, value) in positive {
            if value == 0 {
                return Err(Error::InvalidShape(format!("{name} must be >= 1")));
            }
        }
        if self.nsign != 2 {
            return Err(Error::InvalidShape(format!(
                "nsign must be 2, got {}",
                self.nsign
            )));
        }
        if self.nig.is_multiple_of(2) {
            return Err(Error::InvalidShape(format!(
                "nig must be odd, got {}",
                self.nig
            )));
        }
        if self.inx < self.nakx {
            return Err(Error::InvalidShape(format!(
                "inx ({}) must be >= nakx ({})",
                self.inx, self.nakx
            )));
        }
        if self.iny < self.naky {
            return Err(Error::InvalidShape(format!(
                "iny ({}) must be >= naky ({})",
                self.iny, self.naky
            )));
        }
        Ok(self)
    }

    /// Full spatial extent corresponding to a dealiased mode count,
    /// using the conventional 3/2 padding rule.
    pub fn full_extent(dealiased: usize) -> usize {
        (3 * dealiased).div_ceil(2)
    }

    /// Product of the velocity-space extents `l * e * s`.
    pub fn velocity_space(&self) -> usize {
        self.nlambda * self.negrid * self.nspec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valid() -> GridShape {
        GridShape {
            nakx: 4,
            naky: 4,
            inx: 6,
            iny: 6,
            nig: 5,
            nsign: 2,
            nlambda: 2,
            negrid: 2,
            nspec: 2,
            element_bytes: 16,
        }
    }

    #[test]
    fn accepts_valid_shape() {
        assert!(valid().validated().is_ok());
    }

    #[test]
    fn rejects_even_nig() {
        let mut s = valid();
        s.nig = 4;
        assert!(matches!(s.validated(), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn rejects_wrong_nsign() {
        let mut s = valid();
        s.nsign = 1;
        assert!(s.validated().is_err());
    }

    #[test]
    fn rejects_inx_below_nakx() {
        let mut s = valid();
        s.inx = 3;
        assert!(s.validated().is_err());
    }

    #[test]
    fn rejects_zero_extent() {
        let mut s = valid();
        s.nlambda = 0;
        assert!(s.validated().is_err());
    }

    #[test]
    fn full_extent_rounds_up() {
        assert_eq!(GridShape::full_extent(32), 48);
        assert_eq!(GridShape::full_extent(3), 5);
        assert_eq!(GridShape::full_extent(8), 12);
    }
}
