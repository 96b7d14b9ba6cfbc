#pragma once

namespace statdist {

inline constexpr const char* kVersion = "0.1.0";

// Identifier of the pseudo-random scheme; echoed in every report so a run
// can be reproduced bit-for-bit.
inline constexpr const char* kGeneratorId = "splitmix64-polar-v1";

// Equi-diagonalization residual, relative to max(1, largest |entry|).
inline constexpr double kTolEquidiagRel = 1e-10;

// Protocol-level tolerances (leaf amplitudes, cascade identities).
inline constexpr double kTolProtocol = 1e-9;

// Full-tree enumeration cap, enforced by the CLI.
inline constexpr long kLeafCap = 4096;

// Measurement-optimizer defaults.
inline constexpr int kDefaultRestarts = 8;
inline constexpr int kDefaultSteps = 400;
inline constexpr double kDefaultStepSize = 0.5;
inline constexpr int kDefaultDimCap = 8;

}  // namespace statdist
