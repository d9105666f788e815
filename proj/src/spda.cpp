#include "sq2/spda.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sq2::spda {

using steenrod::Element;
using steenrod::Word;

void Poly::toggle(const Mon& m) {
    auto [it, inserted] = terms.insert(m);
    if (!inserted) terms.erase(it);
}

Poly& Poly::operator+=(const Poly& other) {
    for (const auto& m : other.terms) toggle(m);
    return *this;
}

std::string VerifyReport::to_string() const {
    if (ok()) return "ok\n";
    std::string s;
    for (const auto& f : failures) s += f + "\n";
    return s;
}

namespace {

Mon mon_mul(const Mon& a, const Mon& b) {
    Mon c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Poly free_mul(const Poly& a, const Poly& b) {
    Poly c;
    for (const auto& ma : a.terms)
        for (const auto& mb : b.terms) c.toggle(mon_mul(ma, mb));
    return c;
}

// Inhomogeneous "total square" bookkeeping: degree offset -> free polynomial.
using Total = std::map<int, Poly>;

Total total_mul(const Total& a, const Total& b) {
    Total c;
    for (const auto& [i, pa] : a)
        for (const auto& [j, pb] : b) {
            Poly prod = free_mul(pa, pb);
            auto it = c.find(i + j);
            if (it == c.end())
                c[i + j] = std::move(prod);
            else
                it->second += prod;
        }
    for (auto it = c.begin(); it != c.end();)
        it = it->second.is_zero() ? c.erase(it) : std::next(it);
    return c;
}

}  // namespace

Poly PresentedAlgebra::sq_on_generator(std::size_t i, int k) const {
    int dg = degrees_[i];
    if (k == 0) {
        Mon m(ngens(), 0);
        m[i] = 1;
        return Poly{{m}};
    }
    auto it = sq_gen_.find({i, k});
    if (it != sq_gen_.end()) return it->second;
    if (k == dg) {
        Mon m(ngens(), 0);
        m[i] = 2;
        return Poly{{m}};
    }
    return Poly::zero();
}

int PresentedAlgebra::degree_of_mon(const Mon& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * degrees_[i];
    return d;
}

int PresentedAlgebra::degree_of(const Poly& p) const {
    if (p.is_zero()) return -1;
    int d = degree_of_mon(*p.terms.begin());
    for (const auto& m : p.terms)
        if (degree_of_mon(m) != d) throw std::invalid_argument("inhomogeneous polynomial");
    return d;
}

const PresentedAlgebra::DegreeData& PresentedAlgebra::degree_data(int degree) const {
    auto it = cache_.find(degree);
    if (it != cache_.end()) return it->second;

    DegreeData data;
    if (degree >= 0) {
        // monomials of the degree, first generator's exponent descending
        Mon cur(ngens(), 0);
        auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
            if (i + 1 == ngens()) {
                if (remaining % degrees_[i] == 0) {
                    cur[i] = remaining / degrees_[i];
                    data.monomials.push_back(cur);
                    cur[i] = 0;
                }
                return;
            }
            for (int e = remaining / degrees_[i]; e >= 0; --e) {
                cur[i] = e;
                self(self, i + 1, remaining - e * degrees_[i]);
            }
            cur[i] = 0;
        };
        if (ngens() > 0)
            rec(rec, 0, degree);
        else if (degree == 0)
            data.monomials.push_back({});
    }
    for (std::size_t i = 0; i < data.monomials.size(); ++i) data.index[data.monomials[i]] = i;

    data.combined = F2Span(data.monomials.size());
    for (const auto& r : relations_) {
        int dr = degree_of_mon(*r.terms.begin());
        if (dr > degree) continue;
        for (const auto& m : degree_data(degree - dr).monomials) {
            F2Vector v(data.monomials.size());
            for (const auto& t : r.terms) v.flip(data.index.at(mon_mul(m, t)));
            data.combined.insert(v);
        }
    }
    data.relation_rank = data.combined.rank();
    for (std::size_t i = 0; i < data.monomials.size(); ++i) {
        F2Vector probe(data.monomials.size());
        probe.set(i, true);
        if (data.combined.insert(probe)) {
            data.basis.push_back(data.monomials[i]);
            data.basis_index.push_back(i);
        }
    }
    return cache_.emplace(degree, std::move(data)).first->second;
}

const std::vector<Mon>& PresentedAlgebra::monomials(int degree) const {
    return degree_data(degree).monomials;
}

const std::vector<Mon>& PresentedAlgebra::basis(int degree) const {
    return degree_data(degree).basis;
}

Poly PresentedAlgebra::reduce(const Poly& p) const {
    std::map<int, Poly> by_degree;
    for (const auto& m : p.terms) by_degree[degree_of_mon(m)].toggle(m);
    Poly out;
    for (const auto& [d, part] : by_degree) {
        const DegreeData& data = degree_data(d);
        F2Vector v(data.monomials.size());
        for (const auto& m : part.terms) v.flip(data.index.at(m));
        auto coords = data.combined.coordinates(v);
        if (!coords) throw std::logic_error("monomial space coordinates missing");
        for (std::size_t i = 0; i < data.basis.size(); ++i)
            if (coords->get(data.relation_rank + i)) out.toggle(data.basis[i]);
    }
    return out;
}

F2Vector PresentedAlgebra::coordinates(const Poly& p, int degree) const {
    Poly r = reduce(p);
    const DegreeData& data = degree_data(degree);
    F2Vector v(data.basis.size());
    if (r.is_zero()) return v;
    if (degree_of(r) != degree) throw std::invalid_argument("degree mismatch");
    for (const auto& m : r.terms) {
        auto it = std::find(data.basis.begin(), data.basis.end(), m);
        if (it == data.basis.end()) throw std::logic_error("reduced term not in basis");
        v.flip(static_cast<std::size_t>(it - data.basis.begin()));
    }
    return v;
}

Poly PresentedAlgebra::from_coordinates(const F2Vector& v, int degree) const {
    const DegreeData& data = degree_data(degree);
    if (v.size() != data.basis.size()) throw std::invalid_argument("coordinate length mismatch");
    Poly p;
    for (std::size_t i = 0; i < data.basis.size(); ++i)
        if (v.get(i)) p.toggle(data.basis[i]);
    return p;
}

Poly PresentedAlgebra::multiply(const Poly& a, const Poly& b) const {
    return reduce(free_mul(a, b));
}

Poly PresentedAlgebra::sq_mon(int k, const Mon& m) const {
    Total acc{{0, Poly::one(ngens())}};
    for (std::size_t i = 0; i < ngens(); ++i) {
        if (m[i] == 0) continue;
        Total gen_total;
        for (int j = 0; j <= degrees_[i]; ++j) {
            Poly v = sq_on_generator(i, j);
            if (!v.is_zero()) gen_total[j] = std::move(v);
        }
        for (int e = 0; e < m[i]; ++e) acc = total_mul(acc, gen_total);
    }
    auto it = acc.find(k);
    return it == acc.end() ? Poly::zero() : it->second;
}

Poly PresentedAlgebra::sq(int k, const Poly& a) const {
    if (k < 0) throw std::invalid_argument("negative Steenrod degree");
    if (a.is_zero()) return Poly::zero();
    (void)degree_of(a);  // homogeneity check
    Poly out;
    for (const auto& m : a.terms) out += sq_mon(k, m);
    return reduce(out);
}

Poly PresentedAlgebra::sq_word(const Word& w, const Poly& a) const {
    Poly out = reduce(a);
    for (auto it = w.rbegin(); it != w.rend(); ++it) out = sq(*it, out);
    return out;
}

Poly PresentedAlgebra::sq_element(const Element& e, const Poly& a) const {
    Poly out;
    for (const auto& w : e.terms()) out += sq_word(w, a);
    return reduce(out);
}

namespace {

struct Token {
    enum Kind { Name, Number, Plus, Star, Caret, End } kind;
    std::string text;
    int value = 0;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '+') {
            out.push_back({Token::Plus, "+"});
            ++i;
        } else if (c == '*') {
            out.push_back({Token::Star, "*"});
            ++i;
        } else if (c == '^') {
            out.push_back({Token::Caret, "^"});
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            Token t{Token::Number, text.substr(i, j - i)};
            t.value = std::stoi(t.text);
            out.push_back(t);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Name, text.substr(i, j - i)});
            i = j;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::End, ""});
    return out;
}

}  // namespace

Poly PresentedAlgebra::parse(const std::string& text) const {
    auto tokens = lex(text);
    std::size_t pos = 0;
    auto peek = [&]() -> const Token& { return tokens[pos]; };
    auto next = [&]() -> const Token& { return tokens[pos++]; };

    auto parse_factor = [&](Mon& mon, bool& zero) {
        const Token& t = next();
        if (t.kind == Token::Number) {
            if (t.value == 0) {
                zero = true;
            } else if (t.value != 1) {
                throw ParseError("unexpected number '" + t.text + "'");
            }
            return;
        }
        if (t.kind != Token::Name) throw ParseError("expected a factor, got '" + t.text + "'");
        auto it = std::find(names_.begin(), names_.end(), t.text);
        if (it == names_.end()) throw ParseError("unknown generator '" + t.text + "'");
        std::size_t gi = static_cast<std::size_t>(it - names_.begin());
        int exponent = 1;
        if (peek().kind == Token::Caret) {
            next();
            const Token& e = next();
            if (e.kind != Token::Number) throw ParseError("expected an exponent after '^'");
            exponent = e.value;
        }
        mon[gi] += exponent;
    };

    Poly out;
    for (;;) {
        Mon mon(ngens(), 0);
        bool zero = false;
        parse_factor(mon, zero);
        while (peek().kind == Token::Star) {
            next();
            parse_factor(mon, zero);
        }
        if (!zero) out.toggle(mon);
        if (peek().kind == Token::End) break;
        if (next().kind != Token::Plus) throw ParseError("expected '+'");
        if (peek().kind == Token::End) throw ParseError("trailing '+'");
    }
    return out;
}

std::string PresentedAlgebra::to_string(const Mon& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names_[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string PresentedAlgebra::to_string(const Poly& p) const {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& m : p.terms) {
        if (!s.empty()) s += " + ";
        s += to_string(m);
    }
    return s;
}

PresentedAlgebra build_algebra(const std::vector<std::pair<std::string, int>>& gens,
                               const std::vector<std::string>& relations,
                               const std::map<std::string, std::map<int, std::string>>& sq,
                               int dimension) {
    PresentedAlgebra p;
    for (const auto& [name, degree] : gens) {
        if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
            throw ParseError("generator name '" + name + "' must start with a letter");
        for (char c : name)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw ParseError("invalid character in generator name '" + name + "'");
        if (std::find(p.names_.begin(), p.names_.end(), name) != p.names_.end())
            throw ParseError("duplicate generator '" + name + "'");
        if (degree <= 0) throw ParseError("generator '" + name + "' must have positive degree");
        p.names_.push_back(name);
        p.degrees_.push_back(degree);
    }
    if (dimension < 0) throw ParseError("negative dimension");
    p.dimension_ = dimension;

    for (const auto& text : relations) {
        Poly r = p.parse(text);
        if (r.is_zero()) continue;
        int dr = p.degree_of(r);  // throws on inhomogeneous input
        if (dr == 0) throw ParseError("relation '" + text + "' has degree 0");
        p.relations_.push_back(std::move(r));
    }

    for (const auto& [gname, table] : sq) {
        auto it = std::find(p.names_.begin(), p.names_.end(), gname);
        if (it == p.names_.end()) throw ParseError("unknown generator '" + gname + "' in sq");
        std::size_t gi = static_cast<std::size_t>(it - p.names_.begin());
        for (const auto& [k, expr] : table) {
            if (k < 1 || k > p.degrees_[gi])
                throw ParseError("Sq" + std::to_string(k) + " out of range for '" + gname + "'");
            Poly v = p.parse(expr);
            if (!v.is_zero() && p.degree_of(v) != p.degrees_[gi] + k)
                throw ParseError("Sq" + std::to_string(k) + "(" + gname +
                                 ") has the wrong degree");
            p.sq_gen_[{gi, k}] = std::move(v);
        }
    }

    // unstable condition on generators: the top operation is squaring
    for (std::size_t i = 0; i < p.ngens(); ++i) {
        Mon sqr(p.ngens(), 0);
        sqr[i] = 2;
        if (p.reduce(p.sq_on_generator(i, p.degrees_[i])) != p.reduce(Poly{{sqr}}))
            p.report_.failures.push_back("Sq" + std::to_string(p.degrees_[i]) + "(" +
                                         p.names_[i] + ") != " + p.names_[i] + "^2");
    }

    // the relation ideal must be closed under the action
    for (const auto& r : p.relations_) {
        int dr = p.degree_of_mon(*r.terms.begin());
        for (int k = 1; k <= dr; ++k) {
            Poly img;
            for (const auto& m : r.terms) img += p.sq_mon(k, m);
            if (!p.reduce(img).is_zero())
                p.report_.failures.push_back("Sq" + std::to_string(k) + " of relation '" +
                                             p.to_string(r) + "' is nonzero in the quotient");
        }
    }

    // Adem relations act as zero, degreewise up to the formal dimension
    for (int n = 1; n <= dimension; ++n)
        for (const auto& x : p.basis(n)) {
            Poly xp{{x}};
            for (int b = 1; b <= n; ++b)
                for (int a = 1; a < 2 * b; ++a) {
                    Poly lhs = p.sq(a, p.sq(b, xp));
                    Poly rhs = p.sq_element(steenrod::adem_reduce({a, b}), xp);
                    if (lhs != rhs)
                        p.report_.failures.push_back(
                            "Sq" + std::to_string(a) + " Sq" + std::to_string(b) +
                            " violates the Adem relation on " + p.to_string(x) +
                            " in degree " + std::to_string(n));
                }
        }

    return p;
}

PresentedAlgebra algebra_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    try {
        std::vector<std::pair<std::string, int>> gens;
        for (const auto& g : j.at("generators"))
            gens.emplace_back(g.at("name").get<std::string>(), g.at("degree").get<int>());
        std::vector<std::string> relations;
        if (j.contains("relations"))
            for (const auto& r : j.at("relations")) relations.push_back(r.get<std::string>());
        std::map<std::string, std::map<int, std::string>> sq;
        if (j.contains("sq"))
            for (const auto& [gname, table] : j.at("sq").items())
                for (const auto& [k, expr] : table.items())
                    sq[gname][std::stoi(k)] = expr.get<std::string>();
        return build_algebra(gens, relations, sq, j.at("dimension").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

DualElement fundamental_class(const PresentedAlgebra& p, int d) {
    if (p.dim(d) != 1)
        throw std::invalid_argument("top degree is not one-dimensional");
    F2Vector v(1);
    v.set(0, true);
    return {d, v};
}

DualElement cap(const PresentedAlgebra& p, const DualElement& f, const Poly& a) {
    Poly ar = p.reduce(a);
    if (ar.is_zero()) return {f.degree, F2Vector(p.dim(f.degree))};
    int da = p.degree_of(ar);
    int out_degree = f.degree - da;
    DualElement out{out_degree, F2Vector(p.dim(out_degree))};
    const auto& basis = p.basis(out_degree);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Poly prod = p.multiply(ar, Poly{{basis[j]}});
        if (prod.is_zero()) continue;
        if (p.coordinates(prod, f.degree).dot(f.coords)) out.coords.set(j, true);
    }
    return out;
}

bool pd_pairing(const PresentedAlgebra& p, int d, const Poly& a, const Poly& b) {
    Poly prod = p.multiply(a, b);
    if (prod.is_zero()) return false;
    if (p.degree_of(prod) != d) throw std::invalid_argument("degrees do not pair to the top");
    return p.coordinates(prod, d).get(0);
}

VerifyReport verify_pd(const PresentedAlgebra& p, int d) {
    VerifyReport report;
    if (p.dim(d) != 1) {
        report.failures.push_back("top degree " + std::to_string(d) + " has dimension " +
                                  std::to_string(p.dim(d)) + ", expected 1");
        return report;
    }
    for (int k = 0; k <= d; ++k) {
        std::size_t nk = p.dim(k), nc = p.dim(d - k);
        if (nk != nc) {
            report.failures.push_back("dim mismatch: " + std::to_string(nk) + " in degree " +
                                      std::to_string(k) + " vs " + std::to_string(nc) +
                                      " in degree " + std::to_string(d - k));
            continue;
        }
        F2Matrix pairing(nc, nk);
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nk; ++j)
                if (pd_pairing(p, d, Poly{{p.basis(k)[j]}}, Poly{{p.basis(d - k)[i]}}))
                    pairing.set(i, j, true);
        if (!pairing.is_invertible())
            report.failures.push_back("pairing between degrees " + std::to_string(k) + " and " +
                                      std::to_string(d - k) + " is degenerate");
    }
    return report;
}

void SharpElement::toggle(const Mon& m, const Word& w) {
    auto [it, inserted] = terms_.insert({m, w});
    if (!inserted) terms_.erase(it);
}

SharpElement& SharpElement::operator+=(const SharpElement& other) {
    for (const auto& [m, w] : other.terms_) toggle(m, w);
    return *this;
}

SharpElement SharpElement::from(const PresentedAlgebra& p, const Poly& a,
                                const Element& alpha) {
    SharpElement out;
    Poly ar = p.reduce(a);
    for (const auto& m : ar.terms)
        for (const auto& w : alpha.terms()) out.toggle(m, w);
    return out;
}

SharpElement sharp_multiply(const PresentedAlgebra& p, const SharpElement& s,
                            const SharpElement& t) {
    SharpElement out;
    for (const auto& [a, alpha] : s.terms())
        for (const auto& [b, beta] : t.terms()) {
            steenrod::Tensor psi = steenrod::coproduct(Element::monomial(alpha));
            for (const auto& [left, right] : psi.terms()) {
                Poly part = p.multiply(Poly{{a}}, p.sq_word(left, Poly{{b}}));
                if (part.is_zero()) continue;
                Element ops = steenrod::multiply(Element::monomial(right),
                                                 Element::monomial(beta));
                for (const auto& m : part.terms)
                    for (const auto& w : ops.terms()) out.toggle(m, w);
            }
        }
    return out;
}

SharpElement sharp_reverse(const PresentedAlgebra& p, const Poly& a, const Element& alpha) {
    SharpElement out;
    for (const auto& word : alpha.terms()) {
        steenrod::Tensor psi = steenrod::coproduct(Element::monomial(word));
        for (const auto& [left, right] : psi.terms()) {
            Poly moved = p.sq_element(steenrod::antipode(Element::monomial(right)), a);
            if (moved.is_zero()) continue;
            out += sharp_multiply(p,
                                  SharpElement::from(p, Poly::one(p.ngens()),
                                                     Element::monomial(left)),
                                  SharpElement::from(p, moved, Element::unit()));
        }
    }
    return out;
}

namespace {

// Solve [P](c y) = rhs(y) over all y of complementary degree; c of degree k.
std::optional<Poly> solve_class(const PresentedAlgebra& p, int d, int k,
                                const F2Vector& rhs) {
    const auto& ys = p.basis(d - k);
    const auto& xs = p.basis(k);
    F2Matrix pairing(ys.size(), xs.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (pd_pairing(p, d, Poly{{xs[j]}}, Poly{{ys[i]}})) pairing.set(i, j, true);
    auto sol = pairing.solve(rhs);
    if (!sol) return std::nullopt;
    return p.from_coordinates(*sol, k);
}

F2Vector wu_rhs(const PresentedAlgebra& p, int d, int k) {
    const auto& ys = p.basis(d - k);
    F2Vector rhs(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        Poly img = p.sq(k, Poly{{ys[i]}});
        if (!img.is_zero() && p.coordinates(img, d).get(0)) rhs.set(i, true);
    }
    return rhs;
}

F2Vector dual_sw_rhs(const PresentedAlgebra& p, int d, int k) {
    const auto& ys = p.basis(d - k);
    F2Vector rhs(ys.size());
    Element chi = steenrod::antipode(Element::sq(k));
    for (std::size_t i = 0; i < ys.size(); ++i) {
        Poly img = p.sq_element(chi, Poly{{ys[i]}});
        if (!img.is_zero() && p.coordinates(img, d).get(0)) rhs.set(i, true);
    }
    return rhs;
}

}  // namespace

VerifyReport verify_sharp_pd(const PresentedAlgebra& p, int d) {
    VerifyReport report = verify_pd(p, d);
    if (!report.ok()) return report;
    // the Steenrod action itself must be valid for the cap map to be a map
    // of cross-product modules
    for (const auto& f : p.report().failures) report.failures.push_back("action: " + f);
    for (int k = 1; k <= d; ++k)
        if (!solve_class(p, d, k, wu_rhs(p, d, k)))
            report.failures.push_back("no Wu class v" + std::to_string(k) +
                                      ": the defining system is unsolvable");
    if (!report.ok()) return report;
    try {
        CharacteristicClassTable table = characteristic_classes(p, d);
        auto identities = verify_char_identities(p, table, d);
        for (const auto& f : identities.failures) report.failures.push_back(f);
    } catch (const std::exception& e) {
        report.failures.push_back(e.what());
    }
    return report;
}

CharacteristicClassTable wu_classes(const PresentedAlgebra& p, int d) {
    CharacteristicClassTable table;
    table.wu.assign(d + 1, Poly::zero());
    table.wu[0] = Poly::one(p.ngens());
    for (int k = 1; k <= d; ++k) {
        F2Vector rhs = wu_rhs(p, d, k);
        // second route through the antipode applied twice; catches antipode
        // bugs since [P] Sq^k = (chi Sq^k) [P] evaluates through chi(chi(Sq^k))
        Element chi2 = steenrod::antipode(steenrod::antipode(Element::sq(k)));
        const auto& ys = p.basis(d - k);
        F2Vector rhs2(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) {
            Poly img = p.sq_element(chi2, Poly{{ys[i]}});
            if (!img.is_zero() && p.coordinates(img, d).get(0)) rhs2.set(i, true);
        }
        if (rhs != rhs2) throw std::logic_error("antipode routes disagree for v" +
                                                std::to_string(k));
        auto v = solve_class(p, d, k, rhs);
        if (!v) throw std::domain_error("Wu class v" + std::to_string(k) +
                                        " does not exist: not a Steenrod PD algebra");
        table.wu[k] = *v;
    }
    return table;
}

void sw_classes(const PresentedAlgebra& p, CharacteristicClassTable& table) {
    int d = static_cast<int>(table.wu.size()) - 1;
    table.sw.assign(d + 1, Poly::zero());
    for (int k = 0; k <= d; ++k) {
        Poly w;
        for (int i = 0; i <= k; ++i) w += p.sq(i, table.wu[k - i]);
        table.sw[k] = p.reduce(w);
    }
}

void dual_sw_classes(const PresentedAlgebra& p, int d, CharacteristicClassTable& table) {
    if (table.sw.empty()) throw std::invalid_argument("Stiefel-Whitney column not filled");
    table.dual_sw.assign(d + 1, Poly::zero());
    table.dual_sw[0] = Poly::one(p.ngens());
    for (int k = 1; k <= d; ++k) {
        auto wbar = solve_class(p, d, k, dual_sw_rhs(p, d, k));
        if (!wbar) throw std::domain_error("dual class wbar" + std::to_string(k) +
                                           " does not exist: not a Steenrod PD algebra");
        table.dual_sw[k] = *wbar;
        Poly rec;
        for (int i = 1; i <= k; ++i) rec += p.multiply(table.sw[i], table.dual_sw[k - i]);
        if (p.reduce(rec) != table.dual_sw[k])
            throw std::logic_error("dual class wbar" + std::to_string(k) +
                                   " disagrees with the Whitney recurrence");
    }
}

CharacteristicClassTable characteristic_classes(const PresentedAlgebra& p, int d) {
    CharacteristicClassTable table = wu_classes(p, d);
    sw_classes(p, table);
    dual_sw_classes(p, d, table);
    return table;
}

VerifyReport verify_char_identities(const PresentedAlgebra& p,
                                    const CharacteristicClassTable& table, int d) {
    VerifyReport report;
    Poly one = Poly::one(p.ngens());
    if (table.wu[0] != one || table.sw[0] != one || table.dual_sw[0] != one)
        report.failures.push_back("degree-0 classes are not 1");
    for (int k = d / 2 + 1; k <= d; ++k)
        if (!table.wu[k].is_zero())
            report.failures.push_back("v" + std::to_string(k) +
                                      " nonzero above half the dimension");
    if (d % 2 == 0 && table.sw[d] != p.multiply(table.wu[d / 2], table.wu[d / 2]))
        report.failures.push_back("w" + std::to_string(d) + " != v" +
                                  std::to_string(d / 2) + "^2");
    for (int k = 1; k <= d; ++k) {
        Poly sum;
        for (int i = 0; i <= k; ++i) sum += p.multiply(table.sw[i], table.dual_sw[k - i]);
        if (!p.reduce(sum).is_zero())
            report.failures.push_back("Whitney sum identity fails at k = " +
                                      std::to_string(k));
    }
    return report;
}

namespace {

Poly evaluate_map(const PresentedAlgebra& target, const std::vector<Poly>& images,
                  const Mon& m) {
    Poly out = Poly::one(target.ngens());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) out = target.multiply(out, images[i]);
    return out;
}

}  // namespace

VerifyReport injectivity_check(const PresentedAlgebra& source, const PresentedAlgebra& target,
                               const std::vector<Poly>& images, int d) {
    VerifyReport report;
    if (images.size() != source.ngens()) {
        report.failures.push_back("precondition: expected " +
                                  std::to_string(source.ngens()) + " generator images");
        return report;
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        Poly img = target.reduce(images[i]);
        if (!img.is_zero() && target.degree_of(img) != source.generator_degree(i))
            report.failures.push_back("precondition: image of " +
                                      source.generator_names()[i] + " has the wrong degree");
    }
    if (!report.ok()) return report;
    for (const auto& r : source.relations()) {
        Poly img;
        for (const auto& m : r.terms) img += evaluate_map(target, images, m);
        if (!target.reduce(img).is_zero())
            report.failures.push_back("precondition: relation '" + source.to_string(r) +
                                      "' does not map to zero");
    }
    auto matrix_at = [&](int n) {
        const auto& xs = source.basis(n);
        F2Matrix mat(target.dim(n), xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            Poly img = evaluate_map(target, images, xs[j]);
            if (img.is_zero()) continue;
            F2Vector col = target.coordinates(img, n);
            for (std::size_t i = 0; i < col.size(); ++i)
                if (col.get(i)) mat.set(i, j, true);
        }
        return mat;
    };
    if (!matrix_at(d).is_invertible())
        report.failures.push_back("precondition: not an isomorphism in degree " +
                                  std::to_string(d));
    if (!report.ok()) return report;

    for (int n = 0; n <= d; ++n) {
        auto kernel = matrix_at(n).kernel_basis();
        for (const auto& v : kernel)
            report.failures.push_back("kernel element in degree " + std::to_string(n) +
                                      ": " + source.to_string(source.from_coordinates(v, n)));
    }
    return report;
}

gradmod::GradedModule thom_module(const PresentedAlgebra& p,
                                  const CharacteristicClassTable& table, int d) {
    if (static_cast<int>(table.dual_sw.size()) != d + 1)
        throw std::invalid_argument("dual Stiefel-Whitney column not filled");
    gradmod::GradedModule out(gradmod::Algebra::A);
    for (int n = 0; n <= d; ++n)
        for (const auto& x : p.basis(n))
            out.add_basis_element(n == 0 ? "u" : p.to_string(x) + "*u", n);
    for (int g : gradmod::generator_degrees(gradmod::Algebra::A, d))
        for (int n = 0; n + g <= d; ++n) {
            std::size_t rows = out.dim(n + g), cols = out.dim(n);
            if (rows == 0 || cols == 0) continue;
            F2Matrix mat(rows, cols);
            const auto& xs = p.basis(n);
            for (std::size_t c = 0; c < cols; ++c) {
                Poly img;
                for (int i = 0; i <= g; ++i)
                    img += p.multiply(p.sq(i, Poly{{xs[c]}}), table.dual_sw[g - i]);
                img = p.reduce(img);
                if (img.is_zero()) continue;
                F2Vector col = p.coordinates(img, n + g);
                for (std::size_t r = 0; r < rows; ++r)
                    if (col.get(r)) mat.set(r, c, true);
            }
            out.set_action(g, n, std::move(mat));
        }
    return out;
}

Poly total_class_product(const PresentedAlgebra& p, const Poly& a, const Poly& b) {
    return p.reduce(free_mul(a, b));
}

}  // namespace sq2::spda
