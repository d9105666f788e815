#pragma once

// Presented graded-commutative F2-algebras with an unstable Steenrod action.
// Per-degree bases come from monomial enumeration plus a linear quotient by
// relation multiples; on top of that sit Poincare duality verification, the
// cross product algebra, Wu / Stiefel-Whitney / dual Stiefel-Whitney classes,
// and Thom modules.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sq2/f2.hpp"
#include "sq2/gradmod.hpp"
#include "sq2/steenrod.hpp"

namespace sq2::spda {

// Monomial in the generators: one exponent per generator.
using Mon = std::vector<int>;

// F2 sum of monomials (possibly inhomogeneous; most operations demand
// homogeneity and say so).
struct Poly {
    std::set<Mon> terms;

    static Poly zero() { return {}; }
    static Poly one(std::size_t ngens) { return {{Mon(ngens, 0)}}; }

    bool is_zero() const { return terms.empty(); }
    void toggle(const Mon& m);
    Poly& operator+=(const Poly& other);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    bool operator==(const Poly&) const = default;
};

struct VerifyReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    std::string to_string() const;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PresentedAlgebra {
public:
    // Use build_algebra; this type is immutable afterwards.
    std::size_t ngens() const { return names_.size(); }
    const std::vector<std::string>& generator_names() const { return names_; }
    int generator_degree(std::size_t i) const { return degrees_[i]; }
    int dimension() const { return dimension_; }
    const std::vector<Poly>& relations() const { return relations_; }
    // Sq^k of generator i as stored (0 <= k <= deg, free polynomial form).
    Poly sq_on_generator(std::size_t i, int k) const;

    // Validation performed at build time (unstable conditions, relation
    // closure under the action, Adem relations acting as zero up to the
    // formal dimension).
    const VerifyReport& report() const { return report_; }

    int degree_of_mon(const Mon& m) const;
    // Common degree of the terms (-1 for zero); throws std::invalid_argument
    // when inhomogeneous.
    int degree_of(const Poly& p) const;

    // All free-algebra monomials of the degree, in enumeration order.
    const std::vector<Mon>& monomials(int degree) const;
    // Representative monomials spanning the quotient in that degree.
    const std::vector<Mon>& basis(int degree) const;
    std::size_t dim(int degree) const { return basis(degree).size(); }

    // Normal form in the quotient; splits inhomogeneous input by degree.
    Poly reduce(const Poly& p) const;
    F2Vector coordinates(const Poly& p, int degree) const;  // p homogeneous, reduced or not
    Poly from_coordinates(const F2Vector& v, int degree) const;

    Poly multiply(const Poly& a, const Poly& b) const;      // reduced product
    // Sq^k by Cartan / total-square multiplicativity, reduced. Homogeneous
    // input only.
    Poly sq(int k, const Poly& a) const;
    Poly sq_word(const steenrod::Word& w, const Poly& a) const;   // rightmost first
    Poly sq_element(const steenrod::Element& e, const Poly& a) const;

    // Expression grammar: sums of products, '*' for product, '^' for power,
    // alphanumeric generator names, "0" and "1" literals.
    Poly parse(const std::string& text) const;              // throws ParseError
    std::string to_string(const Poly& p) const;
    std::string to_string(const Mon& m) const;

private:
    friend PresentedAlgebra build_algebra(const std::vector<std::pair<std::string, int>>& gens,
                                          const std::vector<std::string>& relations,
                                          const std::map<std::string, std::map<int, std::string>>& sq,
                                          int dimension);

    struct DegreeData {
        std::vector<Mon> monomials;
        std::map<Mon, std::size_t> index;
        F2Span combined{0};                 // relation multiples, then basis probes
        std::size_t relation_rank = 0;
        std::vector<Mon> basis;
        std::vector<std::size_t> basis_index;   // positions of basis in monomials
    };
    const DegreeData& degree_data(int degree) const;
    Poly sq_mon(int k, const Mon& m) const;     // free Cartan expansion, unreduced

    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<Poly> relations_;
    std::map<std::pair<std::size_t, int>, Poly> sq_gen_;   // (generator, k) -> value
    int dimension_ = 0;
    VerifyReport report_;
    mutable std::map<int, DegreeData> cache_;
};

// Constructs the algebra and runs the invariant checks into report().
// Malformed input (inhomogeneous relation, bad degrees, unknown names,
// k outside 1..deg g) throws ParseError.
PresentedAlgebra build_algebra(const std::vector<std::pair<std::string, int>>& gens,
                               const std::vector<std::string>& relations,
                               const std::map<std::string, std::map<int, std::string>>& sq,
                               int dimension);

// JSON file format: {"generators": [{"name","degree"}...], "relations":
// [expr...], "sq": {gen: {k: expr}}, "dimension": d}.
PresentedAlgebra algebra_from_json(const std::string& text);

// Functional on basis(degree); degree counts in the algebra grading.
struct DualElement {
    int degree = 0;
    F2Vector coords;
    bool operator==(const DualElement&) const = default;
};

// The dual basis element of the one-dimensional top degree.
DualElement fundamental_class(const PresentedAlgebra& p, int d);

// (f cap a)(b) = f(a b); lowers the functional degree by deg a.
DualElement cap(const PresentedAlgebra& p, const DualElement& f, const Poly& a);

// [P](a b) for homogeneous a, b with complementary degrees.
bool pd_pairing(const PresentedAlgebra& p, int d, const Poly& a, const Poly& b);

// dim P^d = 1 and every pairing matrix P^k x P^{d-k} -> F2 invertible.
VerifyReport verify_pd(const PresentedAlgebra& p, int d);

// Element of the cross product algebra P # A: formal F2 sum of pairs
// (basis monomial, admissible word).
class SharpElement {
public:
    static SharpElement zero() { return {}; }
    static SharpElement from(const PresentedAlgebra& p, const Poly& a,
                             const steenrod::Element& alpha);

    const std::set<std::pair<Mon, steenrod::Word>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void toggle(const Mon& m, const steenrod::Word& w);
    SharpElement& operator+=(const SharpElement& other);
    bool operator==(const SharpElement&) const = default;

private:
    std::set<std::pair<Mon, steenrod::Word>> terms_;
};

// (a x alpha)(b x beta) = sum_i a (alpha'_i b) x alpha''_i beta over the
// coproduct of alpha.
SharpElement sharp_multiply(const PresentedAlgebra& p, const SharpElement& s,
                            const SharpElement& t);

// Right side of the reversed product formula: sum_i (1 x alpha'_i) *
// ((chi alpha''_i) a x 1); equals (a x alpha) in P # A.
SharpElement sharp_reverse(const PresentedAlgebra& p, const Poly& a,
                           const steenrod::Element& alpha);

// Solvability of every Wu-class system (the sharp-module half of the PD
// axioms).
VerifyReport verify_sharp_pd(const PresentedAlgebra& p, int d);

struct CharacteristicClassTable {
    std::vector<Poly> wu;        // v_0 .. v_d
    std::vector<Poly> sw;        // w_0 .. w_d
    std::vector<Poly> dual_sw;   // wbar_0 .. wbar_d
};

// v_k solves [P](v_k y) = [P](Sq^k y) for all y; the antipode-squared route
// is evaluated as well and must agree (throws std::logic_error otherwise).
// Throws std::domain_error when a system is unsolvable.
CharacteristicClassTable wu_classes(const PresentedAlgebra& p, int d);

// w_k = sum_i Sq^i v_{k-i}.
void sw_classes(const PresentedAlgebra& p, CharacteristicClassTable& table);

// wbar_k solves [P](wbar_k y) = [P]((chi Sq^k) y); cross-checked against the
// recurrence wbar_k = sum_{i>=1} w_i wbar_{k-i} (throws std::logic_error on
// mismatch). Fills the dual_sw column; wu and sw must be filled already.
void dual_sw_classes(const PresentedAlgebra& p, int d, CharacteristicClassTable& table);

// All three columns with the cross-checks above.
CharacteristicClassTable characteristic_classes(const PresentedAlgebra& p, int d);

// v_0 = w_0 = wbar_0 = 1; v_k = 0 for k > d/2; w_d = v_{d/2}^2 for even d;
// sum_i w_i wbar_{k-i} = 0 for 1 <= k <= d.
VerifyReport verify_char_identities(const PresentedAlgebra& p,
                                    const CharacteristicClassTable& table, int d);

// Algebra homomorphism given by generator images; preconditions (degrees,
// relations mapping to zero, isomorphism on degree d) are reported with a
// "precondition:" prefix, kernel findings without.
VerifyReport injectivity_check(const PresentedAlgebra& source, const PresentedAlgebra& target,
                               const std::vector<Poly>& images, int d);

// Free rank-one module on a degree-0 class u with Sq^r(x u) =
// sum_i Sq^i(x) wbar_{r-i} u, as a module over the full Steenrod algebra.
gradmod::GradedModule thom_module(const PresentedAlgebra& p,
                                  const CharacteristicClassTable& table, int d);

// Product of (possibly inhomogeneous) total classes, reduced degreewise.
Poly total_class_product(const PresentedAlgebra& p, const Poly& a, const Poly& b);

}  // namespace sq2::spda
