#ifndef ICVISTREAM_CONFIG_HPP
#define ICVISTREAM_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "icvistream/art.hpp"
#include "icvistream/icvi.hpp"
#include "icvistream/mapfield.hpp"

namespace icvistream {

enum class SplitType { activity, full_decomposition, partial_decomposition };

/// All model parameters with their default values.
struct Config {
    // module A
    double rho_a = 0.0;
    double beta_1 = 1.0;
    double beta_2 = 0.0;
    double alpha = 1e-3;
    MatchKind m_type = MatchKind::fuzzy;
    bool en_t_u = true;

    // map field
    double epsilon = 0.01;
    double rho_ab = 1.0;
    double beta_ab = 1.0;
    MtSign mt_sign = MtSign::plus;
    ClusterMode l_type = ClusterMode::variable;

    // iCVI framework
    IcviKind icvi = IcviKind::ch;
    bool en_mt_icvi = true;
    std::optional<double> epsilon_icvi; // default: |rho_mt_icvi - rho_a|
    double rho_mt_icvi = 0.9;

    // post-processing strategies
    bool en_swap = true;
    bool en_merge = true;
    bool en_split = true;
    SplitType s_type = SplitType::activity;
    bool en_compress = true;
    double rho_c = 0.0;
    bool en_prune_reassign = true;
    long long tau = 5; // iCVI checks threshold
    long long phi = 5; // cluster sample-count threshold (prune)
    long long xi = 100; // category inactivity threshold

    double effective_epsilon_icvi() const {
        if (epsilon_icvi) return *epsilon_icvi;
        const double e = rho_mt_icvi - rho_a;
        return e < 0.0 ? -e : e;
    }

    ArtParams art_params() const {
        return ArtParams{rho_a, beta_1, beta_2, alpha, m_type, en_t_u};
    }
    MapFieldParams mapfield_params() const {
        return MapFieldParams{rho_ab, beta_ab, epsilon, mt_sign, l_type};
    }

    /// Throws std::invalid_argument when a value is out of range.
    void validate() const;
};

/// Bounded, deduplicated run warnings (degenerate geometry, skipped
/// compression, and the like).
struct Warnings {
    std::vector<std::string> messages;
    void add(const std::string& msg);
};

} // namespace icvistream

#endif
