#pragma once

// The headline computations: the averaged measure over all bipartite
// groupings, and the semiseparable / fully-inseparable classification built
// from the same per-cut values.

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ebar/measures.hpp"

namespace ebar {

// Per-cut values in enumeration order plus their average e_bar. In literal
// mode the denominator is sum_{i=1}^{floor(N/2)} C(N,i); in distinct mode it
// is the collapsed cut count, recorded here either way.
struct MeasureReport {
    MeasureKind kind;
    CutMode mode;
    std::vector<CutValue> per_cut;
    std::size_t cut_count;
    double e_bar;
};

// Verdicts are "-consistent" because a zero measure value does not certify
// separability across a cut; it only fails to detect entanglement.
enum class SeparabilityClass {
    semiseparable_consistent,    // no cut value above tol
    incompletely_separable,      // some but not all cut values above tol
    fully_inseparable_consistent,  // every cut value above tol
};

inline const char* to_string(SeparabilityClass c) {
    switch (c) {
        case SeparabilityClass::semiseparable_consistent: return "semiseparable-consistent";
        case SeparabilityClass::incompletely_separable: return "incompletely-separable";
        case SeparabilityClass::fully_inseparable_consistent:
            return "fully-inseparable-consistent";
    }
    return "?";
}

struct Verdict {
    SeparabilityClass result;
    double tol;
    std::vector<bool> per_cut_entangled;  // value > tol, in enumeration order
};

inline MeasureReport free_entanglement(const PureState& psi, MeasureKind kind,
                                       CutMode mode = CutMode::literal) {
    MeasureReport report{kind, mode, {}, 0, 0.0};
    const std::vector<Bipartition> cuts = enumerate_bipartitions(psi.shape(), mode);
    report.per_cut.reserve(cuts.size());
    if (kind == MeasureKind::negativity) {
        const DensityMatrix rho = to_density(psi);
        for (const Bipartition& cut : cuts) {
            report.per_cut.push_back(negativity(rho, cut));
        }
    } else {
        for (const Bipartition& cut : cuts) {
            report.per_cut.push_back(kind == MeasureKind::concurrence
                                         ? pure_concurrence(psi, cut)
                                         : entanglement_entropy(psi, cut));
        }
    }
    report.cut_count = report.per_cut.size();
    double sum = 0.0;
    for (const CutValue& v : report.per_cut) {
        sum += v.value;
    }
    report.e_bar = sum / static_cast<double>(report.cut_count);
    return report;
}

inline MeasureReport free_entanglement(const DensityMatrix& rho, MeasureKind kind,
                                       CutMode mode = CutMode::literal) {
    if (kind != MeasureKind::negativity) {
        throw std::invalid_argument(std::string(to_string(kind)) +
                                    " requires a pure state; mixed states support: negativity");
    }
    MeasureReport report{kind, mode, {}, 0, 0.0};
    const std::vector<Bipartition> cuts = enumerate_bipartitions(rho.shape(), mode);
    report.per_cut.reserve(cuts.size());
    double sum = 0.0;
    for (const Bipartition& cut : cuts) {
        report.per_cut.push_back(negativity(rho, cut));
        sum += report.per_cut.back().value;
    }
    report.cut_count = report.per_cut.size();
    report.e_bar = sum / static_cast<double>(report.cut_count);
    return report;
}

inline MeasureReport free_entanglement(const State& state, MeasureKind kind,
                                       CutMode mode = CutMode::literal) {
    return std::visit([&](const auto& s) { return free_entanglement(s, kind, mode); }, state);
}

inline Verdict classify(const MeasureReport& report, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classify: tol must be positive");
    }
    Verdict verdict{SeparabilityClass::semiseparable_consistent, tol, {}};
    verdict.per_cut_entangled.reserve(report.per_cut.size());
    std::size_t entangled = 0;
    for (const CutValue& v : report.per_cut) {
        verdict.per_cut_entangled.push_back(v.value > tol);
        entangled += v.value > tol ? 1 : 0;
    }
    if (entangled == report.per_cut.size()) {
        verdict.result = SeparabilityClass::fully_inseparable_consistent;
    } else if (entangled > 0) {
        verdict.result = SeparabilityClass::incompletely_separable;
    }
    return verdict;
}

inline Verdict classify(const PureState& psi, MeasureKind kind, double tol,
                        CutMode mode = CutMode::literal) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classify: tol must be positive");
    }
    return classify(free_entanglement(psi, kind, mode), tol);
}

inline Verdict classify(const DensityMatrix& rho, MeasureKind kind, double tol,
                        CutMode mode = CutMode::literal) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classify: tol must be positive");
    }
    return classify(free_entanglement(rho, kind, mode), tol);
}

inline Verdict classify(const State& state, MeasureKind kind, double tol,
                        CutMode mode = CutMode::literal) {
    return std::visit([&](const auto& s) { return classify(s, kind, tol, mode); }, state);
}

}  // namespace ebar
