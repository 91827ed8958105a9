//! Cohomology identities for lollipops and disjoint unions.

use crate::homology::complex::cohomology_of;
use crate::homology::HomologyError;
use crate::planar::{DiagramError, EdgeId, PlanarDiagram};

/// Checks `H^{i,j}(G') = H^{i,j}(G) ⊕ H^{i-1,j-1}(G)` where `G'` adds a
/// lollipop on non-matching edge `e`.
pub fn verify_lollipop(d: &PlanarDiagram, e: EdgeId) -> Result<bool, HomologyError> {
    if e >= d.num_edges() {
        return Err(DiagramError::UnknownEdge(e).into());
    }
    let grown = d.add_lollipop(e)?;
    let base = cohomology_of(d)?;
    let expect = base.sum(&base.shifted(1, 1));
    Ok(cohomology_of(&grown)? == expect)
}

/// Checks the Künneth identity for `d1 ⊔ d2`.
pub fn verify_disjoint_union(d1: &PlanarDiagram, d2: &PlanarDiagram) -> Result<bool, HomologyError> {
    let joined = d1.disjoint_union(d2)?;
    let expect = cohomology_of(d1)?.convolve(&cohomology_of(d2)?);
    Ok(cohomology_of(&joined)? == expect)
}
