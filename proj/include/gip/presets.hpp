#pragma once

#include <string>
#include <vector>

#include "gip/grid.hpp"
#include "gip/operators.hpp"

namespace gip {

/// Basis selectors for finite-rank operators: 0 is the constant function,
/// k > 0 is sqrt(2) cos(k pi t), k < 0 is sqrt(2) sin(|k| pi t). The families
/// {1, cos...} and {sin...} are orthonormal on every uniform midpoint grid;
/// mixing them is allowed syntactically and rejected by the orthonormality
/// check where it genuinely fails.
double basis_value(int frequency, double t);
std::string basis_label(int frequency);
GridFunction materialize_basis(int frequency, const Grid& grid);

struct OperatorPreset {
    std::string name;  // identity | partial_bridge | fourier_rank | kernel
    std::vector<double> betas;
    std::vector<int> frequencies;
    double amplitude = 0.0;  // kernel preset: q(t,s) = amplitude * cos(pi (t-s))
};

/// True when the preset is defined through a finite-rank R (identity counts
/// as R = 0).
bool has_rank_spec(const OperatorPreset& preset);

FiniteRank build_R(const OperatorPreset& preset, const Grid& grid);

OperatorRep build_operator(const OperatorPreset& preset, const Grid& grid);

/// Default-configured instances of every preset family. The kernel preset
/// ships with amplitude -0.5: the resulting operator is a contraction, so the
/// whole catalog passes the defect-decomposition checks.
std::vector<OperatorPreset> preset_catalog();

}  // namespace gip
