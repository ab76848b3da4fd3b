#include "ia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hsmor {

namespace {

void off_diagonal_range(const SquareMatrix& m, double& lo, double& hi) {
    const std::size_t n = m.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            lo = std::min(lo, m(i, j));
            hi = std::max(hi, m(i, j));
        }
    }
}

// Readability: connected components of the relation S(i,j) > theta with
// theta at the off-diagonal midpoint. Readable when there are exactly two
// components and each is internally complete above theta (cross pairs carry
// no edge by construction).
bool readable_partition(const SquareMatrix& m, std::vector<std::size_t>& low_idx,
                        std::vector<std::size_t>& high_idx) {
    const std::size_t n = m.size();
    double lo, hi;
    off_diagonal_range(m, lo, hi);
    const double theta = 0.5 * (lo + hi);

    std::vector<int> comp(n, -1);
    int ncomp = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        if (ncomp == 2) return false; // more than two components
        comp[s] = ncomp;
        stack.assign(1, s);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || comp[j] >= 0) continue;
                if (m(i, j) > theta) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp != 2) return false;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (comp[i] == comp[j] && !(m(i, j) > theta)) return false; // not a clique

    low_idx.clear();
    high_idx.clear();
    for (std::size_t i = 0; i < n; ++i)
        (comp[i] == 0 ? low_idx : high_idx).push_back(i);
    return true;
}

// Omega: intergroup similarity of the split measured on the original
// matrix — the strongest cross-group tie over the weakest within-group tie.
// The ratio exceeds 1 only when the split contradicts the raw contrast
// (near ties); those are clamped and flagged.
void fill_omega(const SquareMatrix& original, const std::vector<std::size_t>& low_idx,
                Bipartition& out) {
    const std::size_t n = original.size();
    std::vector<char> in_low(n, 0);
    for (std::size_t i : low_idx) in_low[i] = 1;
    double max_cross = -std::numeric_limits<double>::infinity();
    double min_within = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = original(i, j);
            if (in_low[i] != in_low[j])
                max_cross = std::max(max_cross, v);
            else
                min_within = std::min(min_within, v);
        }
    }
    double ratio = max_cross / min_within;
    out.inverted_contrast = ratio > 1.0;
    // Lower clamp keeps -ln(omega) finite even when similarities underflow.
    out.omega = std::min(std::max(ratio, 1e-300), 1.0);
}

Bipartition finish(const SquareMatrix& original, std::vector<std::size_t> low_idx,
                   std::vector<std::size_t> high_idx, int cycles, bool degenerate) {
    const auto& names = original.names();
    // Orient so that group_low holds the lexicographically smallest label.
    const auto min_label = [&](const std::vector<std::size_t>& idx) {
        std::string m = names[idx.front()];
        for (std::size_t i : idx) m = std::min(m, names[i]);
        return m;
    };
    if (min_label(high_idx) < min_label(low_idx)) std::swap(low_idx, high_idx);

    Bipartition out;
    out.cycles = cycles;
    out.degenerate = degenerate;
    fill_omega(original, low_idx, out);
    for (std::size_t i : low_idx) out.group_low.push_back(names[i]);
    for (std::size_t i : high_idx) out.group_high.push_back(names[i]);
    std::sort(out.group_low.begin(), out.group_low.end());
    std::sort(out.group_high.begin(), out.group_high.end());
    return out;
}

Bipartition degenerate_fallback(const SquareMatrix& original, int cycles) {
    const auto& names = original.names();
    std::size_t lowest = 0;
    for (std::size_t i = 1; i < names.size(); ++i)
        if (names[i] < names[lowest]) lowest = i;
    std::vector<std::size_t> low{lowest}, high;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (i != lowest) high.push_back(i);
    return finish(original, std::move(low), std::move(high), cycles, /*degenerate=*/true);
}

} // namespace

CycleResult ia_cycle(const SquareMatrix& similarity, double tie_epsilon) {
    const std::size_t n = similarity.size();
    if (n < 3) throw ConfigError("averaging needs at least 3 objects");
    if (similarity.semantics() != Semantics::Similarity)
        throw ConfigError("averaging operates on similarity matrices");

    SquareMatrix t(similarity.names(), Semantics::Similarity);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += std::fabs(similarity(i, k) - similarity(j, k));
            t.set(i, j, 1.0 - acc * inv_n);
        }
    }

    double lo, hi;
    off_diagonal_range(t, lo, hi);
    if (hi - lo < tie_epsilon) return {std::move(t), /*tie=*/true};

    const double inv_range = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            t.set(i, j, (t(i, j) - lo) * inv_range);
    return {std::move(t), /*tie=*/false};
}

namespace {

double max_abs_difference(const SquareMatrix& a, const SquareMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::fabs(a.values()[i] - b.values()[i]));
    return m;
}

} // namespace

Bipartition run_bipartition(const SquareMatrix& similarity, const IASettings& cfg) {
    cfg.validate();
    if (similarity.size() < 3) throw ConfigError("bipartition needs at least 3 objects");
    if (similarity.semantics() != Semantics::Similarity)
        throw ConfigError("bipartition operates on similarity matrices");

    static const UpdateRule default_rule = [](const SquareMatrix& s, double eps) {
        return ia_cycle(s, eps);
    };
    const UpdateRule& update = cfg.update ? cfg.update : default_rule;

    SquareMatrix cur = similarity;
    SquareMatrix prev; // matrix from two cycles back, for period-2 orbits
    std::vector<std::size_t> low_idx, high_idx;
    for (int c = 1; c <= cfg.max_cycles; ++c) {
        CycleResult res = update(cur, cfg.tie_epsilon);
        if (res.tie) return degenerate_fallback(similarity, c);
        if (readable_partition(res.matrix, low_idx, high_idx))
            return finish(similarity, std::move(low_idx), std::move(high_idx), c, false);
        // A near-stationary orbit is a structural tie: the matrix is pinned
        // at an unreadable configuration and only coordinate rounding noise
        // would pick a side. Declaring it here keeps tie classification
        // stable under exact translations of the input.
        if (max_abs_difference(res.matrix, cur) < cfg.tie_epsilon ||
            (prev.size() > 0 && max_abs_difference(res.matrix, prev) < cfg.tie_epsilon))
            return degenerate_fallback(similarity, c);
        prev = std::move(cur);
        cur = std::move(res.matrix);
    }
    return degenerate_fallback(similarity, cfg.max_cycles);
}

namespace {

std::unique_ptr<GroupingNode> build_node(const SquareMatrix& original,
                                         const std::vector<std::size_t>& idx,
                                         const IASettings& cfg, bool& any_degenerate) {
    auto node = std::make_unique<GroupingNode>();
    for (std::size_t i : idx) node->labels.push_back(original.names()[i]);
    std::sort(node->labels.begin(), node->labels.end());
    if (idx.size() <= 2) return node;

    const SquareMatrix sub = original.restricted(idx);
    const Bipartition bp = run_bipartition(sub, cfg);
    node->is_leaf = false;
    node->cycles = bp.cycles;
    node->omega = bp.omega;
    node->degenerate = bp.degenerate;
    node->inverted_contrast = bp.inverted_contrast;
    if (bp.degenerate) any_degenerate = true;

    const auto to_parent_idx = [&](const std::vector<std::string>& labels) {
        std::vector<std::size_t> out;
        for (std::size_t i : idx)
            if (std::find(labels.begin(), labels.end(), original.names()[i]) != labels.end())
                out.push_back(i);
        return out;
    };
    node->left = build_node(original, to_parent_idx(bp.group_low), cfg, any_degenerate);
    node->right = build_node(original, to_parent_idx(bp.group_high), cfg, any_degenerate);
    return node;
}

} // namespace

GroupingTree build_grouping_tree(const SquareMatrix& similarity, const IASettings& cfg,
                                 const std::string& drifter_label) {
    if (similarity.size() < 3) throw ConfigError("grouping needs at least 3 objects");
    GroupingTree tree;
    tree.drifter_label = drifter_label;
    std::vector<std::size_t> all(similarity.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    tree.root = build_node(similarity, all, cfg, tree.any_degenerate);
    tree.root_omega = tree.root->omega;
    tree.root_cycles = tree.root->cycles;
    tree.root_degenerate = tree.root->degenerate;
    return tree;
}

namespace {

std::string render(const GroupingNode& node) {
    if (node.is_leaf) {
        std::string out;
        for (const auto& label : node.labels) out += label; // labels pre-sorted
        return out;
    }
    std::string l = render(*node.left);
    std::string r = render(*node.right);
    if (r < l) std::swap(l, r);
    return "(" + l + ")(" + r + ")";
}

bool contains_label(const GroupingNode& node, const std::string& label) {
    return std::binary_search(node.labels.begin(), node.labels.end(), label);
}

} // namespace

Signature canonical_signature(const GroupingTree& tree) {
    const GroupingNode& root = *tree.root;
    if (root.is_leaf) return render(root);
    std::string l = render(*root.left);
    std::string r = render(*root.right);
    bool swap;
    if (!tree.drifter_label.empty() &&
        (contains_label(*root.left, tree.drifter_label) ||
         contains_label(*root.right, tree.drifter_label))) {
        // The drifter-bearing group renders second.
        swap = contains_label(*root.left, tree.drifter_label);
    } else {
        swap = r < l;
    }
    if (swap) std::swap(l, r);
    return l + " - " + r;
}

double neg_ln_omega(const Bipartition& b) { return -std::log(b.omega) + 0.0; }

} // namespace hsmor
