#pragma once

// Prebuilt example objects and the aggregated verification suite: the
// degree-8 Poincare duality algebra on u2, u3, the truncated polynomial
// algebra on w2, w3, the Thom module of the duality algebra, the tensor
// decomposition check, and the degree-3 squaring identity check.

#include <optional>
#include <string>
#include <vector>

#include "sq2/gradmod.hpp"
#include "sq2/spda.hpp"

namespace sq2::models {

// F2[u2,u3]/(u2^3+u3^2, u2^2 u3), formal dimension 8, Sq1 u2 = u3,
// Sq2 u3 = u2 u3.
spda::PresentedAlgebra model_j8();

// F2[w2,w3] truncated at degree 10, Sq1 w2 = w3, Sq2 w3 = w2 w3.
spda::PresentedAlgebra model_bso3();

// Thom module of model_j8 over the full Steenrod algebra: one generator u in
// degree 0, Sq^r(x u) twisted by the dual Stiefel-Whitney classes.
gradmod::GradedModule model_thom();

// The same module drawn by hand as an A(1)-module diagram: nodes in degrees
// 0, 2, 3, 4, 5, 6, 8 with edges Sq1: 2->3, 5->6 and Sq2: 2->4, 3->5, 4->6.
// (The Sq4 edge 0->4 is invisible to A(1).)
gradmod::GradedModule thom_diagram_a1();

struct PaperSuiteEntry {
    std::string name;          // stable identifier, e.g. "decomposition"
    std::string subject;       // what is being verified, in plain words
    bool pass = false;
    std::string witness;       // values observed, or the failure found
};

struct PaperSuiteReport {
    std::vector<PaperSuiteEntry> entries;
    bool ok() const;
    std::string to_string() const;
    std::string to_json() const;
};

// Tensor decomposition: Joker (x) Joker[-4] (+) Joker[-6] splits into free
// shifts {-4,-2,-3} and a remainder isomorphic to F2[0] (+) Joker[-6].
PaperSuiteEntry model_decomposition_check();

// Squaring identity for a degree-3 class: Sq1 Sq2 reduces to Sq3; Sq3 z = z^2
// for a degree-3 polynomial generator; and u3^2 = u2^3 is nonzero in
// model_j8, where the full identity Sq1 Sq2 u3 = Sq3 u3 = u3^2 holds.
PaperSuiteEntry model_k_invariant_check();

// Runs every check; with a subject list, only the named entries (an empty
// list yields an empty passing report). Failures are collected, never
// thrown.
PaperSuiteReport paper_suite(
    const std::optional<std::vector<std::string>>& names = std::nullopt);

}  // namespace sq2::models
