//! The group on a presentation's carrier.
//!
//! In nilpotency class 2 the Campbell-Hausdorff series stops after the first
//! bracket term, so `x * y = x + y + [x,y]/2` is an exact group law on the
//! same coordinates as the algebra - log-coordinates, with nothing truncated
//! numerically. The group is torsion free and admits unique k-th roots,
//! which is what makes it the completed side of the correspondence.

use crate::algebra::{apply_hom, AlgError, AlgebraPresentation, Element, HomPair};
use crate::rat::rat;

/// Group multiplication `x + y + [x,y]/2`.
pub fn gmul(p: &AlgebraPresentation, x: &Element, y: &Element) -> Result<Element, AlgError> {
    let b = p.bracket(x, y)?;
    Ok(x.add(y).add(&b.scale(&rat(1, 2))))
}

/// Group inverse: `-x`, since `[x, x] = 0`.
pub fn ginv(_p: &AlgebraPresentation, x: &Element) -> Element {
    x.neg()
}

/// `x^-1 y^-1 x y`, expanded through `gmul`. Equals the bracket exactly in
/// class 2.
pub fn gcommutator(p: &AlgebraPresentation, x: &Element, y: &Element) -> Result<Element, AlgError> {
    let xy = gmul(p, x, y)?;
    let inner = gmul(p, &ginv(p, y), &xy)?;
    gmul(p, &ginv(p, x), &inner)
}

/// k-fold product of `x` with itself; `k = 0` gives the identity.
pub fn gpow(p: &AlgebraPresentation, x: &Element, k: u64) -> Result<Element, AlgError> {
    let mut acc = Element::zero(p.n(), p.m());
    for _ in 0..k {
        acc = gmul(p, &acc, x)?;
    }
    Ok(acc)
}

/// The unique k-th root: coordinates scale by `1/k`.
pub fn groot(p: &AlgebraPresentation, x: &Element, k: u64) -> Result<Element, AlgError> {
    assert!(k >= 1, "roots need a positive exponent");
    p.conform(x)?;
    Ok(x.scale(&rat(1, k as i64)))
}

/// Cross-checks a hom pair against the group law: applies the linear map to
/// each sample pair and compares `map(x * y)` with `map(x) * map(y)`.
/// Agreement with the bracket identity on all pairs is the functor property.
pub fn group_hom_check(
    source: &AlgebraPresentation,
    target: &AlgebraPresentation,
    h: &HomPair,
    samples: &[(Element, Element)],
) -> Result<bool, AlgError> {
    for (x, y) in samples {
        let mapped_product = apply_hom(h, &gmul(source, x, y)?)?;
        let product_of_mapped = gmul(target, &apply_hom(h, x)?, &apply_hom(h, y)?)?;
        if mapped_product != product_of_mapped {
            return Ok(false);
        }
    }
    Ok(true)
}
