#include "gip/presets.hpp"

#include <cmath>
#include <numbers>

#include "gip/errors.hpp"

namespace gip {

double basis_value(int frequency, double t) {
    if (frequency == 0) return 1.0;
    const double k = std::abs(frequency) * std::numbers::pi * t;
    return frequency > 0 ? std::numbers::sqrt2 * std::cos(k) : std::numbers::sqrt2 * std::sin(k);
}

std::string basis_label(int frequency) {
    if (frequency == 0) return "const";
    return (frequency > 0 ? "cos" : "sin") + std::to_string(std::abs(frequency));
}

GridFunction materialize_basis(int frequency, const Grid& grid) {
    return project_continuous([frequency](double t) { return basis_value(frequency, t); }, grid);
}

bool has_rank_spec(const OperatorPreset& preset) {
    return preset.name == "identity" || preset.name == "partial_bridge" ||
           preset.name == "fourier_rank";
}

FiniteRank build_R(const OperatorPreset& preset, const Grid& grid) {
    FiniteRank r;
    if (preset.name == "identity") return r;
    if (preset.name == "partial_bridge") {
        if (preset.betas.size() != 1)
            throw ConfigError("partial_bridge preset needs exactly one beta");
        r.terms.push_back({preset.betas[0], materialize_basis(0, grid)});
        return r;
    }
    if (preset.name == "fourier_rank") {
        if (preset.betas.size() != preset.frequencies.size() || preset.betas.empty())
            throw ConfigError("fourier_rank preset needs matching betas and frequencies");
        for (size_t k = 0; k < preset.betas.size(); ++k)
            r.terms.push_back({preset.betas[k], materialize_basis(preset.frequencies[k], grid)});
        return r;
    }
    throw ConfigError("preset '" + preset.name + "' has no finite-rank R");
}

OperatorRep build_operator(const OperatorPreset& preset, const Grid& grid) {
    if (preset.name == "identity") return IdentityOp{};
    if (preset.name == "partial_bridge" || preset.name == "fourier_rank")
        return complement_rep_from_R(build_R(preset, grid), grid);
    if (preset.name == "kernel") {
        if (std::abs(preset.amplitude) >= 1.0)
            throw ConfigError("kernel preset needs |amplitude| < 1");
        const double a = preset.amplitude;
        return IntegralKernel{
            [a](double t, double s) { return a * std::cos(std::numbers::pi * (t - s)); }};
    }
    throw ConfigError("unknown operator preset '" + preset.name + "'");
}

std::vector<OperatorPreset> preset_catalog() {
    std::vector<OperatorPreset> catalog;
    catalog.push_back({"identity", {}, {}, 0.0});
    catalog.push_back({"partial_bridge", {0.5}, {0}, 0.0});
    catalog.push_back({"fourier_rank", {0.4, 0.3}, {0, 1}, 0.0});
    catalog.push_back({"kernel", {}, {}, -0.5});
    return catalog;
}

}  // namespace gip
