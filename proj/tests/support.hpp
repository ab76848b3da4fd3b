// Shared helpers for the unit and acceptance suites: deterministic random
// matrices, planted two-block matrices, and the brute-force split oracle the
// averaging engine is checked against.
#ifndef HSMOR_TESTS_SUPPORT_HPP
#define HSMOR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "types.hpp"

namespace hsmor::testing {

inline std::vector<std::string> make_labels(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("O" + std::to_string(i));
    return names;
}

inline SquareMatrix random_similarity(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(0.05, 0.95);
    SquareMatrix m(make_labels(n), Semantics::Similarity);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, dist(rng));
    return m;
}

// Two-block matrix with min(within) - max(between) >= 0.2. Every block has
// at least one member; `low` receives the indices of the block holding 0.
inline SquareMatrix planted_matrix(std::mt19937& rng, std::size_t n, std::vector<std::size_t>& low) {
    std::uniform_real_distribution<double> within(0.6, 0.9);
    std::uniform_real_distribution<double> between(0.1, 0.4);
    std::uniform_int_distribution<std::size_t> cut(1, n - 1);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t k = cut(rng);
    std::vector<char> in_low(n, 0);
    for (std::size_t i = 0; i < k; ++i) in_low[perm[i]] = 1;
    if (!in_low[0]) {
        for (std::size_t i = 0; i < n; ++i) in_low[i] = !in_low[i];
    }

    SquareMatrix m(make_labels(n), Semantics::Similarity);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m.set(i, j, in_low[i] == in_low[j] ? within(rng) : between(rng));

    low.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (in_low[i]) low.push_back(i);
    return m;
}

// Exhaustive argmax of mean(within) - mean(between) over all bipartitions;
// returns the group containing index 0, sorted.
inline std::vector<std::size_t> brute_force_best_split(const SquareMatrix& m) {
    const std::size_t n = m.size();
    double best = -1e300;
    unsigned best_mask = 0;
    // Index 0 stays in group A; the mask enumerates membership of 1..n-1.
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        double sw = 0.0, sb = 0.0;
        std::size_t cw = 0, cb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool bi = i > 0 && (mask >> (i - 1)) & 1u;
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool bj = j > 0 && (mask >> (j - 1)) & 1u;
                if (bi == bj) {
                    sw += m(i, j);
                    ++cw;
                } else {
                    sb += m(i, j);
                    ++cb;
                }
            }
        }
        const double score = (cw ? sw / cw : 0.0) - (cb ? sb / cb : 0.0);
        if (score > best) {
            best = score;
            best_mask = mask;
        }
    }
    std::vector<std::size_t> group{0};
    for (std::size_t i = 1; i < n; ++i)
        if (!((best_mask >> (i - 1)) & 1u)) group.push_back(i);
    return group;
}

inline ObjectConfig two_fo_config(Vec drifter = {0.0, 0.0, 0.0}) {
    ObjectConfig cfg;
    cfg.objects = {{"A", {1.0, 1.0, 0.0}}, {"B", {0.0, 0.0, 1.0}}, {"Dr", std::move(drifter)}};
    return cfg;
}

} // namespace hsmor::testing

#endif
