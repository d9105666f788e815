#pragma once

// The mod-2 Steenrod algebra in the admissible (Serre-Cartan) basis.
// Products are computed by Adem rewriting of inadmissible adjacent pairs;
// the coproduct, antipode and the subalgebra A(1) are built on top of that.

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sq2/f2.hpp"

namespace sq2::steenrod {

// A word Sq^{r1} ... Sq^{rk}; all entries >= 1, the empty word is the unit.
using Word = std::vector<int>;

int degree(const Word& w);
bool is_admissible(const Word& w);        // r_i >= 2 r_{i+1}
int excess(const Word& w);                // r1 - (r2 + ... + rk), 0 for the unit

// A homogeneous F2-linear combination of admissible monomials, stored as the
// set of monomials with coefficient 1.
class Element {
public:
    static Element zero() { return Element{}; }
    static Element unit();
    static Element sq(int k);                 // Sq^k, k >= 0; sq(0) = unit
    static Element monomial(Word w);          // w must be admissible

    const std::set<Word>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Common degree of the terms; -1 for the zero element.
    int degree() const;

    void toggle(const Word& w);               // add w (mod 2), checking homogeneity
    Element& operator+=(const Element& other);
    friend Element operator+(Element a, const Element& b) { a += b; return a; }
    bool operator==(const Element&) const = default;
    bool operator<(const Element& o) const { return terms_ < o.terms_; }

private:
    std::set<Word> terms_;
};

// Element of A (x) A, all terms of the same total degree.
class Tensor {
public:
    static Tensor zero() { return Tensor{}; }
    static Tensor unit();                     // 1 (x) 1

    const std::set<std::pair<Word, Word>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void toggle(const Word& left, const Word& right);
    Tensor& operator+=(const Tensor& other);
    friend Tensor operator+(Tensor a, const Tensor& b) { a += b; return a; }
    bool operator==(const Tensor&) const = default;

private:
    std::set<std::pair<Word, Word>> terms_;
};

// Admissible form of the product Sq^{r1} ... Sq^{rk}. Idempotent on
// admissible words.
Element adem_reduce(const Word& word);

Element multiply(const Element& a, const Element& b);

// psi(Sq^k) = sum_i Sq^i (x) Sq^{k-i}, extended multiplicatively.
Tensor coproduct(const Element& a);
Tensor tensor_multiply(const Tensor& a, const Tensor& b);

// Antipode chi: chi(Sq^k) from the recursion sum_r Sq^{k-r} chi(Sq^r) = 0,
// extended as an anti-homomorphism.
Element antipode_sq(int k);
Element antipode(const Element& a);

// All admissible words of the given degree (deterministic order).
const std::vector<Word>& admissible_basis(int degree);

// Coordinates relative to admissible_basis(degree).
F2Vector coordinates(const Element& a, int degree);
Element from_coordinates(const F2Vector& v, int degree);

// The 8-dimensional subalgebra generated by Sq^1 and Sq^2, degrees
// 0,1,2,3,3,4,5,6.
const std::vector<Element>& a1_basis();
std::vector<Element> a1_basis_in_degree(int d);
const Element& a1_top();                      // the nonzero degree-6 element
bool a1_contains(const Element& a);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), pos(position) {}
    std::size_t pos;
};

// Text syntax: words like "Sq3 Sq1", monomials joined by "+", "1" for the
// unit, "0" for zero. Round-trips with to_string.
std::string to_string(const Element& a);
std::string to_string(const Word& w);
Element parse(const std::string& text);

// Generator-word machinery: rewrite an admissible monomial as a sum of words
// in the listed generator degrees (e.g. {1,2} for A(1), {1,2,4,8} for A
// below degree 16). Throws std::domain_error when the monomial is not in the
// span of such words.
std::vector<Word> generator_words(const std::vector<int>& gens, int degree);
std::vector<Word> decompose_into_generators(const Word& m, const std::vector<int>& gens);

}  // namespace sq2::steenrod
