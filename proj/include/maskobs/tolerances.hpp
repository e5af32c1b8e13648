#pragma once

namespace maskobs::tol {

// Max-norm deviation allowed for M - M^dagger.
inline constexpr double kHermitian = 1e-10;
// Unit trace, normalization, orthonormality and unitarity checks on inputs.
inline constexpr double kInput = 1e-10;
// Trace preservation of a Kraus family at construction.
inline constexpr double kChannel = 1e-9;
// Condition values e_k >= -kPositivity count as positive.
inline constexpr double kPositivity = 1e-9;
// Maskability decisions (boundary band) and the masking-declared threshold.
inline constexpr double kMaskable = 1e-9;
inline constexpr double kMasking = 1e-9;
// Rank decisions: singular values below kRank * sigma_max are zero.
inline constexpr double kRank = 1e-9;
// X M0 = M1 check for the cheating unitary.
inline constexpr double kCheat = 1e-8;

}  // namespace maskobs::tol
