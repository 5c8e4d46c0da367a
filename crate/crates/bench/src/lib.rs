//! Fixtures shared by the kernel benchmarks.

use cubic_census::classify::CurveGeometry;

/// Geometry for `q`; panics on an unsupported field size.
pub fn geometry(q: u64) -> CurveGeometry {
    CurveGeometry::for_q(q).expect("supported field size")
}
