#ifndef HSMOR_IA_HPP
#define HSMOR_IA_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "types.hpp"

namespace hsmor {

struct CycleResult {
    SquareMatrix matrix;
    bool tie = false; // off-diagonal range collapsed below tie_epsilon
};

// The averaging update is swappable so alternative reconstructions can be
// tested without touching any consumer. Rules must be pure and reentrant.
using UpdateRule = std::function<CycleResult(const SquareMatrix&, double tie_epsilon)>;

struct IASettings {
    int max_cycles = 10000;
    double tie_epsilon = 1e-13;
    UpdateRule update; // empty = default profile-agreement rule (ia_cycle)

    void validate() const {
        if (max_cycles < 1) throw ConfigError("max_cycles must be >= 1");
        if (!(tie_epsilon > 0.0)) throw ConfigError("tie_epsilon must be > 0");
    }
};

struct Bipartition {
    std::vector<std::string> group_low;  // contains the lexicographically smallest label
    std::vector<std::string> group_high; // the complement, never empty
    int cycles = 0;
    double omega = 1.0;
    bool degenerate = false;
    bool inverted_contrast = false;
};

struct GroupingNode {
    std::vector<std::string> labels; // sorted ascending
    bool is_leaf = true;
    // Split info, meaningful for internal nodes only.
    int cycles = 0;
    double omega = 1.0;
    bool degenerate = false;
    bool inverted_contrast = false;
    std::unique_ptr<GroupingNode> left, right;
};

struct GroupingTree {
    std::unique_ptr<GroupingNode> root;
    std::string drifter_label; // empty when built without one
    double root_omega = 1.0;
    int root_cycles = 0;
    bool root_degenerate = false;
    bool any_degenerate = false;
};

using Signature = std::string;

// One averaging cycle: profile-agreement averaging
//   T(i,j) = 1 - (1/n) * sum_k |S(i,k) - S(j,k)|
// followed by an affine rescale of the off-diagonal to [0,1] (diagonal
// reset to 1). If the pre-rescale off-diagonal range is below tie_epsilon
// the result is flagged as a tie and the matrix is left unrescaled.
CycleResult ia_cycle(const SquareMatrix& similarity, double tie_epsilon = 1e-13);

// Repeats the averaging cycle until the matrix becomes readable: with the
// threshold at the off-diagonal midpoint, the relation S(i,j) > theta must
// partition the labels into exactly two internally complete groups. Stops at
// the first readable cycle. Ties — including orbits that stop moving by
// more than tie_epsilon per cycle, which cannot become readable on their
// own — and cycle exhaustion produce the deterministic fallback split
// {lowest-sorted label} vs rest, flagged degenerate. Omega is the ratio max cross-pair / min within-pair taken
// from the ORIGINAL matrix, clamped into (0,1].
Bipartition run_bipartition(const SquareMatrix& similarity, const IASettings& cfg);

// Recursive maximal grouping: bipartition at the root, then recurse on each
// side using the original matrix restricted to that side's labels. Groups of
// size <= 2 are terminal leaves. drifter_label (may be empty) is carried for
// signature rendering.
GroupingTree build_grouping_tree(const SquareMatrix& similarity, const IASettings& cfg,
                                 const std::string& drifter_label = "");

// Canonical string form. Leaves render as their labels sorted ascending and
// concatenated; a non-root internal node renders as "(left)(right)" with
// children ordered by rendered string; the root joins its children with
// " - ", the group containing the drifter label second (lexicographic order
// when no drifter label is known).
Signature canonical_signature(const GroupingTree& tree);

double neg_ln_omega(const Bipartition& b);

} // namespace hsmor

#endif
