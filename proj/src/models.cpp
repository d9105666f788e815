#include "sq2/models.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "sq2/extchart.hpp"
#include "sq2/steenrod.hpp"

namespace sq2::models {

using gradmod::Algebra;
using gradmod::GradedModule;
using spda::Poly;
using spda::PresentedAlgebra;
using steenrod::Element;

PresentedAlgebra model_j8() {
    return spda::build_algebra({{"u2", 2}, {"u3", 3}}, {"u2^3 + u3^2", "u2^2 * u3"},
                               {{"u2", {{1, "u3"}}}, {"u3", {{2, "u2*u3"}}}}, 8);
}

PresentedAlgebra model_bso3() {
    return spda::build_algebra({{"w2", 2}, {"w3", 3}}, {},
                               {{"w2", {{1, "w3"}}}, {"w3", {{2, "w2*w3"}}}}, 10);
}

GradedModule model_thom() {
    auto p = model_j8();
    auto table = spda::characteristic_classes(p, 8);
    return spda::thom_module(p, table, 8);
}

GradedModule thom_diagram_a1() {
    GradedModule m(Algebra::A1);
    for (int d : {0, 2, 3, 4, 5, 6, 8}) m.add_basis_element("t" + std::to_string(d), d);
    m.set_action_entry(1, 2, 0, 0, true);   // Sq1: 2 -> 3
    m.set_action_entry(1, 5, 0, 0, true);   // Sq1: 5 -> 6
    m.set_action_entry(2, 2, 0, 0, true);   // Sq2: 2 -> 4
    m.set_action_entry(2, 3, 0, 0, true);   // Sq2: 3 -> 5
    m.set_action_entry(2, 4, 0, 0, true);   // Sq2: 4 -> 6
    return m;
}

bool PaperSuiteReport::ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const PaperSuiteEntry& e) { return e.pass; });
}

std::string PaperSuiteReport::to_string() const {
    std::ostringstream out;
    for (const auto& e : entries)
        out << (e.pass ? "PASS" : "FAIL") << ' ' << e.name << " (" << e.subject
            << "): " << e.witness << '\n';
    out << (ok() ? "suite: all checks passed" : "suite: FAILURES above") << '\n';
    return out.str();
}

std::string PaperSuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries)
        j["entries"].push_back({{"name", e.name},
                                {"subject", e.subject},
                                {"pass", e.pass},
                                {"witness", e.witness}});
    j["ok"] = ok();
    return j.dump(2) + "\n";
}

namespace {

// Collects sub-checks for one entry; the first failure wins the witness line.
struct Check {
    bool pass = true;
    std::string witness;

    void require(bool cond, const std::string& label) {
        if (cond) {
            if (witness.empty()) witness = label;
        } else {
            if (pass) witness = "failed: " + label;
            pass = false;
        }
    }
};

PaperSuiteEntry entry(const std::string& name, const std::string& subject,
                      const std::function<void(Check&)>& body) {
    PaperSuiteEntry e;
    e.name = name;
    e.subject = subject;
    Check c;
    try {
        body(c);
        e.pass = c.pass;
        e.witness = c.witness;
    } catch (const std::exception& ex) {
        e.pass = false;
        e.witness = std::string("exception: ") + ex.what();
    }
    return e;
}

PaperSuiteEntry adem_entry() {
    return entry("adem", "admissible reduction", [](Check& c) {
        c.require(steenrod::adem_reduce({1, 2}) == Element::sq(3), "Sq1 Sq2 = Sq3");
        // reduction is confluent: reducing factor by factor in any split
        // agrees with reducing the whole word, sampled over short words
        for (int a = 1; a <= 6 && c.pass; ++a)
            for (int b = 1; b <= 6; ++b)
                for (int d = 1; d <= 6; ++d) {
                    auto whole = steenrod::adem_reduce({a, b, d});
                    auto left = steenrod::multiply(steenrod::adem_reduce({a, b}),
                                                   Element::sq(d));
                    auto right = steenrod::multiply(Element::sq(a),
                                                    steenrod::adem_reduce({b, d}));
                    c.require(whole == left && whole == right,
                              "confluence on words of length 3");
                    if (!c.pass) return;
                }
    });
}

PaperSuiteEntry antipode_entry() {
    return entry("antipode", "antipode recursion and involution", [](Check& c) {
        for (int k = 1; k <= 12; ++k) {
            Element sum;
            for (int r = 0; r <= k; ++r) {
                sum = sum + steenrod::multiply(Element::sq(k - r),
                                               steenrod::antipode_sq(r));
            }
            c.require(sum.is_zero(), "sum Sq^{k-r} chi(Sq^r) = 0 for k <= 12");
            if (!c.pass) return;
        }
        for (int d = 1; d <= 10; ++d)
            for (const auto& w : steenrod::admissible_basis(d)) {
                Element m = Element::monomial(w);
                c.require(steenrod::antipode(steenrod::antipode(m)) == m,
                          "chi is an involution through degree 10");
                if (!c.pass) return;
            }
    });
}

PaperSuiteEntry a1_entry() {
    return entry("a1-modules", "the subalgebra on Sq1, Sq2 and its quotient", [](Check& c) {
        c.require(steenrod::a1_basis().size() == 8, "dim A(1) = 8");
        c.require(steenrod::a1_basis_in_degree(6).size() == 1 &&
                      steenrod::a1_basis_in_degree(7).empty(),
                  "top degree 6 is one-dimensional");
        auto j = gradmod::joker();
        bool dims = j.total_dim() == 5;
        for (int d = 0; d <= 4; ++d) dims = dims && j.dim(d) == 1;
        c.require(dims, "quotient dims 1,1,1,1,1 in degrees 0..4");
        // edge-by-edge match with the degree 2..6 cluster of the Thom diagram
        auto diagram = thom_diagram_a1();
        auto shifted = gradmod::shift(j, 2);
        bool edges = true;
        for (int g : {1, 2})
            for (int d = 2; d + g <= 6; ++d)
                edges = edges && shifted.action(g, d) == diagram.action(g, d);
        c.require(edges, "matches the diagram shifted by -2");
        c.require(gradmod::check_axioms(j).ok(), "quotient satisfies the relations");
    });
}

PaperSuiteEntry duality_entry() {
    return entry("duality-algebra", "the degree-8 duality algebra and its classes", [](Check& c) {
        auto p = model_j8();
        c.require(p.report().ok(), "action axioms hold");
        std::vector<std::size_t> dims;
        for (int n = 0; n <= 8; ++n) dims.push_back(p.dim(n));
        c.require(dims == std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 1, 0, 1},
                  "dims 1,0,1,1,1,1,1,0,1");
        c.require(spda::verify_pd(p, 8).ok(), "duality pairings invertible");
        c.require(spda::verify_sharp_pd(p, 8).ok(), "cross-module duality checks");
        auto table = spda::characteristic_classes(p, 8);
        bool wu = table.wu[4] == p.parse("u2^2");
        for (int k = 1; k <= 8; ++k)
            if (k != 4) wu = wu && table.wu[k].is_zero();
        c.require(wu, "v4 = u2^2, all other v_k = 0");
        c.require(table.sw[4] == p.parse("u2^2") &&
                      table.sw[6] == p.reduce(p.parse("u2^3")) &&
                      table.sw[8] == p.reduce(p.parse("u2^4")),
                  "w4 = u2^2, w6 = u2^3, w8 = u2^4");
        c.require(table.dual_sw[4] == p.parse("u2^2") &&
                      table.dual_sw[6] == p.reduce(p.parse("u2^3")) &&
                      table.dual_sw[8].is_zero(),
                  "wbar4 = u2^2, wbar6 = u2^3, wbar8 = 0");
        c.require(spda::verify_char_identities(p, table, 8).ok(),
                  "class identities hold");
    });
}

PaperSuiteEntry ideal_entry() {
    return entry("ideal", "the invariant ideal in the polynomial algebra", [](Check& c) {
        auto p = model_bso3();
        Poly r1 = p.parse("w2^3 + w3^2");
        Poly r2 = p.parse("w2^2*w3");
        c.require(p.sq(1, r1) == p.parse("w2^2*w3"), "Sq1 r1 = w2^2 w3");
        c.require(p.sq(2, r1) == p.multiply(p.parse("w2"), r1), "Sq2 r1 = w2 r1");
        c.require(p.sq(4, r1) == p.parse("w2^5"), "Sq4 r1 = w2^5");
        c.require(p.multiply(p.parse("w2^2"), r1) + p.multiply(p.parse("w3"), r2) ==
                      p.parse("w2^5"),
                  "w2^5 = w2^2 r1 + w3 r2");
        // quotienting by the ideal keeps the action well defined, which is
        // the Sq-invariance of the ideal through degree 10
        auto q = spda::build_algebra({{"w2", 2}, {"w3", 3}},
                                     {"w2^3 + w3^2", "w2^2*w3"},
                                     {{"w2", {{1, "w3"}}}, {"w3", {{2, "w2*w3"}}}}, 10);
        c.require(q.report().ok(), "ideal is closed under the action");
    });
}

PaperSuiteEntry thom_entry() {
    return entry("thom", "the Thom module of the duality algebra", [](Check& c) {
        auto thom = model_thom();
        c.require(thom.total_dim() == 7, "7 basis elements");
        c.require(thom.action(4, 0) == F2Matrix(1, 1, {1}), "Sq4 u = u2^2 u");
        c.require(thom.action(8, 0).is_zero(), "Sq8 u = 0");
        c.require(thom.action(1, 0).is_zero(), "Sq1 u = 0");
        c.require(gradmod::check_axioms(thom).ok(), "module axioms hold");
        auto iso = gradmod::iso_check(gradmod::restrict_to_a1(thom), thom_diagram_a1());
        c.require(iso.has_value(), "matches the hand-drawn diagram over A(1)");
    });
}

PaperSuiteEntry ext_entry() {
    return entry("ext-charts", "resolution charts", [](Check& c) {
        auto f2 = gradmod::f2_module(Algebra::A1, 0);
        auto chart = ext::ext_chart(f2, 10, 16);
        bool diag = true;
        for (int s = 0; s <= 10; ++s) diag = diag && chart.dim(s, s) == 1;
        c.require(diag, "unit tower dims(s,s) = 1 for s <= 10");

        auto free = ext::ext_chart(gradmod::free_module(Algebra::A1, {-4, -2, -3}), 6, 14);
        bool vanish = true;
        for (const auto& [st, dim] : free.dims)
            if (st.first >= 1) vanish = vanish && dim == 0;
        c.require(vanish, "free modules contribute nothing above filtration 0");

        auto joker = ext::ext_chart(gradmod::joker(), 12, 24);
        int first = -1;
        bool tower = true;
        for (int s = 0; s <= 12; ++s) {
            std::size_t dim = joker.dim(s, s + 6);
            if (dim && first < 0) first = s;
            tower = tower && dim == (first >= 0 && s >= first ? 1u : 0u);
        }
        c.require(tower && first >= 0,
                  "a single dimension-1 tower in the t-s = 6 column from filtration " +
                      std::to_string(first));

        auto both = ext::e2_diagonal(
            gradmod::direct_sum(f2, gradmod::shift(gradmod::joker(), -6)), 10);
        bool two = true;
        for (int s = 0; s <= 10; ++s)
            two = two && both[s] == (s >= first ? 2u : 1u);
        c.require(two, "combined diagonal shows exactly two towers");
    });
}

PaperSuiteEntry total_classes_entry() {
    return entry("total-classes", "total class of the doubled bundle", [](Check& c) {
        auto p = model_j8();
        Poly w = p.parse("1 + u2 + u3");
        c.require(spda::total_class_product(p, w, w) ==
                      p.reduce(p.parse("1 + u2^2 + u3^2")),
                  "(1 + u2 + u3)^2 = 1 + u2^2 + u3^2");
    });
}

}  // namespace

PaperSuiteEntry model_decomposition_check() {
    return entry("decomposition", "tensor square splitting", [](Check& c) {
        auto joker = gradmod::joker();
        auto m = gradmod::direct_sum(gradmod::tensor(joker, gradmod::shift(joker, -4)),
                                     gradmod::shift(joker, -6));
        c.require(m.total_dim() == 30, "total dimension 25 + 5");
        auto split = gradmod::split_free_summands(m);
        auto shifts = split.shifts;
        std::sort(shifts.begin(), shifts.end());
        c.require(shifts == std::vector<int>{-4, -3, -2}, "free shifts {-4,-2,-3}");
        c.require(split.remainder.total_dim() == 6, "remainder dimension 6");
        auto expect = gradmod::direct_sum(gradmod::f2_module(Algebra::A1, 0),
                                          gradmod::shift(joker, -6));
        c.require(gradmod::iso_check(split.remainder, expect).has_value(),
                  "remainder is F2 (+) the shifted quotient module");
    });
}

PaperSuiteEntry model_k_invariant_check() {
    return entry("k-invariant", "the squaring identity on a degree-3 class", [](Check& c) {
        c.require(steenrod::adem_reduce({1, 2}) == Element::sq(3), "Sq1 Sq2 = Sq3");
        auto toy = spda::build_algebra({{"z3", 3}}, {}, {}, 6);
        Poly z = toy.parse("z3");
        c.require(toy.sq(3, z) == toy.parse("z3^2"), "Sq3 z3 = z3^2");
        auto p = model_j8();
        Poly u3 = p.parse("u3");
        Poly sq3 = p.sq(3, u3);
        c.require(!sq3.is_zero() && sq3 == p.reduce(p.parse("u3^2")) &&
                      sq3 == p.reduce(p.parse("u2^3")),
                  "u3^2 = u2^3 is nonzero");
        c.require(p.sq(1, p.sq(2, u3)) == sq3, "Sq1 Sq2 u3 = Sq3 u3");
    });
}

PaperSuiteReport paper_suite(const std::optional<std::vector<std::string>>& names) {
    std::vector<std::pair<std::string, std::function<PaperSuiteEntry()>>> checks = {
        {"adem", adem_entry},
        {"antipode", antipode_entry},
        {"a1-modules", a1_entry},
        {"duality-algebra", duality_entry},
        {"ideal", ideal_entry},
        {"thom", thom_entry},
        {"decomposition", model_decomposition_check},
        {"ext-charts", ext_entry},
        {"total-classes", total_classes_entry},
        {"k-invariant", model_k_invariant_check},
    };
    PaperSuiteReport report;
    for (const auto& [name, make] : checks) {
        if (names && std::find(names->begin(), names->end(), name) == names->end())
            continue;
        report.entries.push_back(make());
    }
    return report;
}

}  // namespace sq2::models
