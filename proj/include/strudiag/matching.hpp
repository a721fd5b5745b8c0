#pragma once

#include <string>
#include <utility>
#include <vector>

#include "strudiag/model.hpp"

namespace strudiag {

enum class Completeness { WrtEquations, WrtUnknowns, Both, Neither };

const char* to_string(Completeness c);

/// A matching between equations and unknown variables. No equation or
/// variable appears in more than one pair.
struct Matching {
    std::vector<std::pair<std::string, std::string>> pairs;  // (equation id, variable)
    Completeness completeness = Completeness::Neither;

    std::size_t cardinality() const { return pairs.size(); }
};

/// Dulmage-Mendelsohn partition of a model into the under-determined (M-),
/// just-determined (M0) and over-determined (M+) parts, plus the
/// equivalence classes of M+.
struct DMDecomposition {
    std::vector<std::string> under_equations;
    std::vector<std::string> under_unknowns;
    std::vector<std::string> just_equations;
    std::vector<std::string> just_unknowns;
    std::vector<std::string> over_equations;
    std::vector<std::string> over_unknowns;
    std::vector<std::vector<std::string>> classes;  // partition of over_equations
    int surplus = 0;  // |M+ equations| - |M+ unknowns|
};

/// Block-triangular structure of a square, structurally nonsingular slice.
/// Blocks appear in dependency order; a block of size > 1 is an algebraic
/// loop.
struct FineBlocks {
    struct Block {
        std::vector<std::string> equations;
        std::vector<std::string> variables;

        std::size_t size() const { return equations.size(); }
    };
    std::vector<Block> blocks;

    bool loop_free() const;
};

/// Maximum-cardinality matching with canonical tie-breaking: among all
/// maximum matchings, the one whose (equation, variable) assignment is
/// lexicographically smallest in (equation order, variable order).
Matching maximum_matching(const StructuralModel& model);

/// Canonical DM partition; independent of any particular matching.
DMDecomposition dm_decompose(const StructuralModel& model);

/// Equivalence classes of the over-determined part. Two equations share a
/// class iff removing either expels the other from the over-determined
/// part; computed by the remove-one definition.
std::vector<std::vector<std::string>> equivalence_classes(const StructuralModel& model);

/// Block decomposition of the given square slice. Variables outside the
/// slice are treated as solved inputs. Throws std::invalid_argument if the
/// slice is not square or admits no complete matching.
FineBlocks fine_blocks(const StructuralModel& model, const std::vector<std::string>& equation_ids,
                       const std::vector<std::string>& variable_names);

}  // namespace strudiag
