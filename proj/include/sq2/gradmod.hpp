#pragma once

// Finite graded left modules over A or A(1), given by action tables for the
// algebra generators (Sq^1, Sq^2, and the higher Sq^{2^s} over A). Arbitrary
// elements act through admissible words rewritten into generator products.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sq2/f2.hpp"
#include "sq2/steenrod.hpp"

namespace sq2::gradmod {

enum class Algebra { A1, A };

std::string algebra_name(Algebra tag);           // "A(1)" / "A"
Algebra algebra_from_name(const std::string&);

// Generator degrees used for action tables: {1,2} over A(1), powers of two
// up to `span` over A.
std::vector<int> generator_degrees(Algebra tag, int span);

class GradedModule {
public:
    explicit GradedModule(Algebra tag) : tag_(tag) {}

    Algebra algebra() const { return tag_; }
    bool empty() const { return basis_.empty(); }
    int lo() const;                              // lowest degree with a basis element
    int hi() const;
    int span() const { return empty() ? 0 : hi() - lo(); }
    std::size_t total_dim() const;
    std::size_t dim(int d) const;
    const std::vector<std::string>& names(int d) const;
    int degree_of(const std::string& name) const;  // throws if unknown

    // Basis elements must be added before actions are set. Names must be
    // nonempty, free of whitespace and '+', and unique.
    void add_basis_element(const std::string& name, int degree);

    // Matrix of Sq^g from degree d: dim(d+g) rows, dim(d) columns.
    F2Matrix action(int g, int d) const;
    void set_action(int g, int d, F2Matrix m);
    void set_action_entry(int g, int d, std::size_t src, std::size_t tgt, bool value);

    // Matrix of a generator word (rightmost factor acts first) from degree d.
    F2Matrix act_word(const steenrod::Word& gen_word, int d) const;
    // Matrix of an arbitrary homogeneous element from degree d. Throws
    // std::domain_error when the element does not act through the stored
    // generators (e.g. an element outside A(1) on an A(1)-module).
    F2Matrix act(const steenrod::Element& e, int d) const;

    bool operator==(const GradedModule& other) const;

    std::vector<int> generators() const { return generator_degrees(tag_, span()); }

private:
    Algebra tag_;
    std::map<int, std::vector<std::string>> basis_;       // degree -> names
    std::map<std::string, int> degree_of_;
    std::map<std::pair<int, int>, F2Matrix> actions_;     // (g, d) -> matrix
};

struct CheckReport {
    std::vector<std::string> malformed;    // table shape problems
    std::vector<std::string> violations;   // relation instances acting nonzero
    bool ok() const { return malformed.empty() && violations.empty(); }
    std::string to_string() const;
};

// Verifies table shapes and that every relation among generator words acts
// as the zero map, degreewise across the module.
CheckReport check_axioms(const GradedModule& m);

// Degree-preserving equivariant map, one matrix per source degree.
struct ModuleMap {
    GradedModule source, target;
    std::map<int, F2Matrix> mats;          // d -> dim_target(d) x dim_source(d)

    F2Matrix at(int d) const;
    bool is_equivariant() const;
    bool is_invertible() const;
};

GradedModule zero_module(Algebra tag);
GradedModule f2_module(Algebra tag, int degree);      // one generator, trivial action
GradedModule shift(const GradedModule& m, int n);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

// Left action on dual functionals through the antipode; degree n dualizes
// to degree -n.
GradedModule dualize(const GradedModule& m);

// Diagonal action through the coproduct.
GradedModule tensor(const GradedModule& a, const GradedModule& b);

// Direct sum of shifted copies of A(1) as a module over itself.
// Only tag Algebra::A1 is accepted.
GradedModule free_module(Algebra tag, const std::vector<int>& shifts);

// A(1)/A(1){Sq^3}: dimensions 1,1,1,1,1 in degrees 0..4.
GradedModule joker();

// Forget the action of the higher generators of an A-module, keeping the
// Sq^1 and Sq^2 tables.
GradedModule restrict_to_a1(const GradedModule& m);

struct SplitResult {
    std::vector<int> shifts;       // one entry per split-off free summand
    GradedModule remainder;        // no free summand left
};

// Splits off free summands from the lowest degree upward. A basis vector x
// spans a free summand iff the top (degree-6) element of A(1) is nonzero
// on it; the summand is split along an equivariant projection onto the free
// module it generates.
SplitResult split_free_summands(const GradedModule& m);

// Explicit invertible equivariant map, if one can be found. Exhaustive over
// the Hom space when it is small, deterministic random search otherwise.
std::optional<ModuleMap> iso_check(const GradedModule& a, const GradedModule& b);

// JSON file format: {"algebra": "A(1)"|"A", "basis": [{"name","degree"}...],
// "actions": {"Sq1": [[source, target-expression]...], ...}}. Omitted
// actions are zero. to_json output is canonical and round-trips.
std::string to_json(const GradedModule& m);
GradedModule from_json(const std::string& text);      // throws ParseError

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sq2::gradmod
