//! Fixed workloads shared by the benchmarks.

use nilzeta::ZetaKind;

/// `(n, p, k)` census points sized to run in well under a second each.
pub const CENSUS_POINTS: &[(usize, u64, u32)] = &[(2, 2, 4), (2, 3, 3), (3, 2, 3)];

/// Functional-equation checks, cheapest first.
pub const FUNEQ_POINTS: &[(ZetaKind, usize)] =
    &[(ZetaKind::Hat, 5), (ZetaKind::Normal, 4), (ZetaKind::Subgroup, 3), (ZetaKind::Subgroup, 4)];
