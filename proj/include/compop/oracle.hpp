#pragma once

#include "compop/analysis.hpp"
#include "compop/funcspace.hpp"
#include "compop/selfmap.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace compop {

/// Budgets shared by the numerical probes.
struct OracleCaps {
    std::uint64_t radius = 64;
    std::size_t family = 16;
    std::uint64_t sign_patterns = 531441; // 3^12
};

/// sup of ||(C_phi - C_psi) f|| over points of length <= M and ||f|| <= 1,
/// computed by two independent routes.
struct RestrictedNorm {
    int combinatorial = 0; // 2 iff some point of length <= M deviates
    int exhaustive = 0;    // search over f with values in {-1, 0, 1}
    std::size_t needed_points = 0;
    bool joint_search = false; // all 3^k patterns at once, else per evaluation point
    std::uint64_t patterns = 0;

    bool agree() const { return combinatorial == exhaustive; }
    int value() const { return exhaustive; }
};

/// Throws ResourceLimitError when the truncation exceeds the point budget.
RestrictedNorm restricted_difference_norm(const SelfMap& phi, const SelfMap& psi, std::uint64_t max_length,
                                          const OracleCaps& caps = {});

enum class ProbeFamily { None, InfiniteDeviation, Mixed, SingleImage };

std::string to_string(ProbeFamily f);

struct EssentialProbe {
    int certified = 0;
    bool conclusive = false;
    ProbeFamily family = ProbeFamily::None;
    WitnessFamily members;
    std::vector<SupNorm> member_norms; // ||f_k||
    std::vector<SupNorm> image_norms;  // ||(C_phi - C_psi) f_k|| on the evaluation domain
    bool pointwise_null = false;
    std::string note;
};

/// Largest essential-norm lower bound certified by an explicit family of
/// sup-norm-1, pointwise-null functions.
EssentialProbe essential_lower_bound_probe(const SelfMap& phi, const SelfMap& psi, std::size_t n);

/// Same for the single operator C_phi (family chi_{phi(v_k)}).
EssentialProbe single_essential_probe(const SelfMap& phi, std::size_t n);

enum class CompactnessVerdict { ConsistentWithCompact, WitnessAgainstCompact, Inconclusive };

std::string to_string(CompactnessVerdict v);

struct CompactnessProbe {
    ProbeFamily family = ProbeFamily::None; // None here means the chi_{ray(k)} family
    std::vector<SupNorm> trace;
    // First index after which chi_{ray(k)} avoids every deviation image.
    std::optional<std::size_t> escape_index;
    CompactnessVerdict verdict = CompactnessVerdict::Inconclusive;
    std::string note;
};

CompactnessProbe compactness_probe(const SelfMap& phi, const SelfMap& psi, std::size_t n,
                                   std::uint64_t max_length);

struct RangeEscape {
    bool escaped = false;
    std::optional<Point> witness; // first v with |phi(v)| > bound
};

/// Scans points of length <= M for an image longer than `bound`.
RangeEscape range_escape_probe(const SelfMap& phi, std::uint64_t max_length, std::uint64_t bound);

/// Brute-force comparison of phi and psi over points of length <= M against
/// the symbolic deviation answer.
bool deviation_sampling_agrees(const SelfMap& phi, const SelfMap& psi, std::uint64_t max_length);

} // namespace compop
