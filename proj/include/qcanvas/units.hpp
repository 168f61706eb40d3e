#pragma once

// Unit conventions: all engine math runs in atomic units (Hartree, bohr,
// elementary charge). Conversion to output units (eV, Angstrom, Debye)
// happens exactly once, at record assembly.
namespace qcanvas::units {

inline constexpr double kHartreeToEv = 27.2114;
inline constexpr double kBohrToAngstrom = 0.529177;
inline constexpr double kEBohrToDebye = 2.541746;

inline constexpr double hartree_to_ev(double ha) { return ha * kHartreeToEv; }
inline constexpr double bohr_to_angstrom(double b) { return b * kBohrToAngstrom; }
inline constexpr double ebohr_to_debye(double m) { return m * kEBohrToDebye; }

}  // namespace qcanvas::units
