#include "doctest.h"

#include <random>
#include <tuple>

#include "sq2/steenrod.hpp"
#include "support/polyact.hpp"

using namespace sq2::steenrod;

namespace {

// Reduction with the opposite strategy (rightmost inadmissible pair), with
// the Adem relation restated locally; used to exercise confluence against
// the library's leftmost strategy.
Element reduce_rightmost(const Word& word) {
    auto binom_odd = [](int m, int n) { return n >= 0 && n <= m && (m & n) == n; };
    Element result;
    std::set<Word> pending{word};
    while (!pending.empty()) {
        Word w = *pending.rbegin();
        pending.erase(std::prev(pending.end()));
        std::size_t bad = w.size();
        for (std::size_t i = w.size(); i-- > 1;)
            if (w[i - 1] < 2 * w[i]) { bad = i - 1; break; }
        if (bad == w.size()) {
            result.toggle(w);
            continue;
        }
        int a = w[bad], b = w[bad + 1];
        for (int c = 0; 2 * c <= a; ++c) {
            if (!binom_odd(b - c - 1, a - 2 * c)) continue;
            Word next(w.begin(), w.begin() + bad);
            next.push_back(a + b - c);
            if (c > 0) next.push_back(c);
            next.insert(next.end(), w.begin() + bad + 2, w.end());
            auto [it, inserted] = pending.insert(next);
            if (!inserted) pending.erase(it);
        }
    }
    return result;
}

std::vector<Word> all_words(int max_len, int max_degree) {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (!cur.empty()) out.push_back(cur);
        if ((int)cur.size() == max_len) return;
        for (int r = 1; r <= remaining; ++r) {
            cur.push_back(r);
            self(self, remaining - r);
            cur.pop_back();
        }
    };
    rec(rec, max_degree);
    return out;
}

Word random_admissible(std::mt19937& rng, int max_degree) {
    const auto& basis = admissible_basis(1 + rng() % max_degree);
    return basis[rng() % basis.size()];
}

}  // namespace

TEST_CASE("adem examples") {
    CHECK(adem_reduce({1, 2}) == Element::sq(3));
    CHECK(adem_reduce({3}) == Element::sq(3));
    CHECK(adem_reduce({1, 1}).is_zero());
    CHECK(adem_reduce({2, 2}) == Element::monomial({3, 1}));
    CHECK(adem_reduce({}) == Element::unit());
}

TEST_CASE("adem is idempotent on admissible words") {
    for (int d = 0; d <= 14; ++d)
        for (const auto& w : admissible_basis(d))
            CHECK(adem_reduce(w) == Element::monomial(w));
}

TEST_CASE("confluence: leftmost and rightmost strategies agree") {
    for (const auto& w : all_words(5, 16)) CHECK(adem_reduce(w) == reduce_rightmost(w));
}

TEST_CASE("multiply examples") {
    Element a = Element::monomial({3, 1});
    CHECK(multiply(a, Element::unit()) == a);
    CHECK(multiply(Element::sq(2), Element::sq(2)) == Element::monomial({3, 1}));
    CHECK(multiply(Element::sq(2), Element::sq(1)) == Element::monomial({2, 1}));
}

TEST_CASE("multiplication is associative") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = Element::monomial(random_admissible(rng, 6));
        auto b = Element::monomial(random_admissible(rng, 6));
        auto c = Element::monomial(random_admissible(rng, 6));
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
}

TEST_CASE("oracle equivalence on the polynomial algebra") {
    // Test polynomials: all monomials in four variables of degree <= 3.
    std::vector<polyact::Poly> inputs;
    for (int e0 = 0; e0 <= 3; ++e0)
        for (int e1 = 0; e0 + e1 <= 3; ++e1)
            for (int e2 = 0; e0 + e1 + e2 <= 3; ++e2)
                for (int e3 = 0; e0 + e1 + e2 + e3 <= 3; ++e3)
                    inputs.push_back({polyact::Mon{e0, e1, e2, e3}});

    for (const auto& w : all_words(4, 12)) {
        Element reduced = adem_reduce(w);
        for (const auto& p : inputs)
            CHECK(polyact::act_element(reduced, p) == polyact::act_word(w, p));
    }
}

TEST_CASE("coproduct examples") {
    CHECK(coproduct(Element::unit()) == Tensor::unit());

    Tensor psi1;
    psi1.toggle({1}, {});
    psi1.toggle({}, {1});
    CHECK(coproduct(Element::sq(1)) == psi1);

    CHECK(coproduct(Element::monomial({2, 1})) ==
          tensor_multiply(coproduct(Element::sq(2)), coproduct(Element::sq(1))));
}

TEST_CASE("coproduct is multiplicative") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = Element::monomial(random_admissible(rng, 7));
        auto b = Element::monomial(random_admissible(rng, 7));
        CHECK(coproduct(multiply(a, b)) == tensor_multiply(coproduct(a), coproduct(b)));
    }
}

TEST_CASE("coproduct is coassociative through degree 16") {
    using Triple = std::tuple<Word, Word, Word>;
    auto toggle3 = [](std::set<Triple>& s, const Triple& t) {
        auto [it, inserted] = s.insert(t);
        if (!inserted) s.erase(it);
    };
    for (int d = 1; d <= 16; ++d)
        for (const auto& m : admissible_basis(d)) {
            Tensor psi = coproduct(Element::monomial(m));
            std::set<Triple> left, right;
            for (const auto& [u, v] : psi.terms()) {
                Tensor pu = coproduct(Element::monomial(u));
                for (const auto& [p, q] : pu.terms()) toggle3(left, {p, q, v});
                Tensor pv = coproduct(Element::monomial(v));
                for (const auto& [p, q] : pv.terms()) toggle3(right, {u, p, q});
            }
            CHECK(left == right);
        }
}

TEST_CASE("counit projects to the degree-zero component") {
    // Terms of psi(a) with trivial right factor recover a.
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = Element::monomial(random_admissible(rng, 10));
        Element recovered;
        Tensor psi = coproduct(a);
        for (const auto& [u, v] : psi.terms())
            if (v.empty()) recovered.toggle(u);
        CHECK(recovered == a);
    }
}

TEST_CASE("antipode examples") {
    CHECK(antipode(Element::unit()) == Element::unit());
    CHECK(antipode_sq(1) == Element::sq(1));
    CHECK(antipode_sq(2) == Element::sq(2));
    CHECK(antipode_sq(3) == Element::monomial({2, 1}));
}

TEST_CASE("antipode recursion sums to zero") {
    for (int k = 1; k <= 20; ++k) {
        Element sum;
        for (int r = 0; r <= k; ++r) sum += multiply(Element::sq(k - r), antipode_sq(r));
        CHECK(sum.is_zero());
    }
}

TEST_CASE("antipode is an anti-homomorphism") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = Element::monomial(random_admissible(rng, 8));
        auto b = Element::monomial(random_admissible(rng, 8));
        CHECK(antipode(multiply(a, b)) == multiply(antipode(b), antipode(a)));
    }
}

TEST_CASE("antipode is an involution") {
    for (int d = 0; d <= 12; ++d)
        for (const auto& m : admissible_basis(d)) {
            Element e = Element::monomial(m);
            CHECK(antipode(antipode(e)) == e);
        }
}

TEST_CASE("excess") {
    CHECK(excess({}) == 0);
    CHECK(excess({4}) == 4);
    CHECK(excess({3, 1}) == 2);
}

TEST_CASE("A(1) basis") {
    const auto& basis = a1_basis();
    REQUIRE(basis.size() == 8);
    std::vector<int> degrees;
    for (const auto& e : basis) degrees.push_back(e.degree());
    CHECK(degrees == std::vector<int>{0, 1, 2, 3, 3, 4, 5, 6});
    CHECK(basis[0] == Element::unit());

    auto deg5 = a1_basis_in_degree(5);
    REQUIRE(deg5.size() == 1);
    Element expected = Element::monomial({5}) + Element::monomial({4, 1});
    CHECK(deg5[0] == expected);
    CHECK(deg5[0] == multiply(Element::sq(2), Element::sq(3)));

    CHECK(a1_basis_in_degree(6).size() == 1);
    CHECK(a1_top().degree() == 6);
}

TEST_CASE("A(1) membership") {
    CHECK(a1_contains(Element::sq(3)));
    CHECK(!a1_contains(Element::sq(4)));
    CHECK(a1_contains(Element::zero()));
    CHECK(a1_contains(multiply(a1_top(), Element::sq(1))));  // zero or in span
}

TEST_CASE("A(1) is closed under multiplication") {
    for (const auto& a : a1_basis())
        for (const auto& b : a1_basis()) CHECK(a1_contains(multiply(a, b)));
}

TEST_CASE("parse and print") {
    CHECK(parse("Sq1 Sq2") == Element::sq(3));
    CHECK(parse("1") == Element::unit());
    CHECK(parse("0") == Element::zero());
    CHECK(parse(" Sq4 +  Sq3 Sq1 ") == Element::sq(4) + Element::monomial({3, 1}));
    CHECK_THROWS_AS((void)parse("Sq3 Sq1 + Sq2"), ParseError);  // inhomogeneous
    CHECK(to_string(Element::zero()) == "0");
    CHECK(to_string(Element::unit()) == "1");
    CHECK(to_string(Element::monomial({3, 1})) == "Sq3 Sq1");

    CHECK_THROWS_AS((void)parse("Sq0"), ParseError);
    CHECK_THROWS_AS((void)parse("Sq2 +"), ParseError);
    CHECK_THROWS_AS((void)parse("frog"), ParseError);
    CHECK_THROWS_AS((void)parse(""), ParseError);
}

TEST_CASE("print round-trips through parse") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + rng() % 12;
        Element e;
        const auto& basis = admissible_basis(d);
        for (const auto& m : basis)
            if (rng() % 2) e.toggle(m);
        CHECK(parse(to_string(e)) == e);
    }
}

TEST_CASE("generator word decomposition") {
    // Sq3 = Sq1 Sq2 as A(1) generator words.
    auto words = decompose_into_generators({3}, {1, 2});
    Element sum;
    for (const auto& w : words) sum += adem_reduce(w);
    CHECK(sum == Element::sq(3));

    // Every admissible monomial of low degree decomposes over {1,2,4,8}.
    for (int d = 1; d <= 10; ++d)
        for (const auto& m : admissible_basis(d)) {
            auto ws = decompose_into_generators(m, {1, 2, 4, 8});
            Element s;
            for (const auto& w : ws) s += adem_reduce(w);
            CHECK(s == Element::monomial(m));
        }

    CHECK_THROWS_AS((void)decompose_into_generators({4}, {1, 2}), std::domain_error);
}
