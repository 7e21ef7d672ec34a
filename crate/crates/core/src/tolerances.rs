//! Numerical tolerances shared by the library, the validation suite and tests.

/// Entrywise Hermiticity defect allowed for a density matrix.
pub const STATE_HERMITIAN: f64 = 1e-10;
/// Allowed deviation of a density matrix trace from one.
pub const STATE_TRACE: f64 = 1e-10;
/// Most negative eigenvalue still accepted as PSD roundoff.
pub const STATE_MIN_EIGENVALUE: f64 = -1e-10;

/// Hermiticity defect accepted by the eigensolver.
pub const EIG_HERMITIAN_INPUT: f64 = 1e-8;
/// Eigenpair residual `|M v - λ v|`.
pub const EIG_RESIDUAL: f64 = 1e-9;
/// Orthonormality of eigenvectors.
pub const EIG_ORTHONORMAL: f64 = 1e-10;

/// Eigenvalues above this (in magnitude, below zero) are clamped to zero in `psd_sqrt`.
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues below this make `psd_sqrt` fail.
pub const PSD_REJECT: f64 = -1e-8;
/// `psd_sqrt(M)^2` vs `M`.
pub const PSD_SQRT_SQUARE: f64 = 1e-9;

/// Symmetry defect accepted by the 3x3 symmetric eigensolver.
pub const SYM3_SYMMETRY: f64 = 1e-10;

/// Bloch vector norm below which it is treated as zero.
pub const BLOCH_ZERO: f64 = 1e-9;
/// Off-diagonal magnitude of R above which a state is not treated as an X-state.
pub const X_STATE_OFFDIAG: f64 = 1e-10;

/// Eigenvalues of the concurrence matrix below this are clamped before the square root.
pub const CONCURRENCE_CLAMP: f64 = 1e-14;

/// Closed form vs forced-axis oracle (x != 0).
pub const MIN_ORACLE_FORCED: f64 = 1e-12;
/// Closed form vs grid-search oracle (x = 0).
pub const MIN_ORACLE_SEARCH: f64 = 1e-5;
/// Minimum number of Fibonacci-sphere directions in the oracle grid.
pub const ORACLE_GRID_POINTS: usize = 10_000;
/// Angular resolution of oracle refinement.
pub const ORACLE_ANGLE_RESOLUTION: f64 = 1e-6;

/// Dual-route agreement of the thermal state.
pub const THERMAL_DUAL_ROUTE: f64 = 1e-10;
/// Element-level identities of the thermal closed form.
pub const THERMAL_IDENTITY: f64 = 1e-12;

/// Concurrence eigen route vs X-state formula.
pub const CONCURRENCE_DUAL_ROUTE: f64 = 1e-10;
/// Local-unitary invariance of the correlation measures.
pub const LOCAL_UNITARY_INVARIANCE: f64 = 1e-9;

/// General fidelity vs pure-input overlap; larger deviations are an internal error.
pub const FIDELITY_ROUTE_MISMATCH: f64 = 1e-8;
/// Relative eigenvalue cutoff inside the fidelity square roots.
pub const FIDELITY_RANK_CUTOFF: f64 = 1e-13;
/// Fidelity dual-route agreement expected in the validation suite.
pub const FIDELITY_DUAL_ROUTE: f64 = 1e-10;

/// Trace of an evolved state below which normalization fails.
pub const PT_MIN_NORMALIZATION: f64 = 1e-14;
/// Numerical evolution vs closed-form evolved entries.
pub const PT_DUAL_ROUTE: f64 = 1e-10;
/// Periodicity of the evolved state in t.
pub const PT_PERIODICITY: f64 = 1e-10;

/// Slack when checking monotone sequences.
pub const MONOTONE_SLACK: f64 = 1e-9;

/// Bloch decomposition followed by reconstruction.
pub const BLOCH_ROUND_TRIP: f64 = 1e-12;
/// Fidelity of the singlet and maximally mixed channels.
pub const TELEPORT_LIMITS: f64 = 1e-12;
/// Correlation measures under the unitary (`φ = 0`) evolution.
pub const PT_UNITARY_LIMIT: f64 = 1e-10;
