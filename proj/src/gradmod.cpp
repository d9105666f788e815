#include "sq2/gradmod.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sq2::gradmod {

using steenrod::Element;
using steenrod::Word;

std::string algebra_name(Algebra tag) { return tag == Algebra::A1 ? "A(1)" : "A"; }

Algebra algebra_from_name(const std::string& s) {
    if (s == "A(1)") return Algebra::A1;
    if (s == "A") return Algebra::A;
    throw ParseError("unknown algebra tag '" + s + "'");
}

std::vector<int> generator_degrees(Algebra tag, int span) {
    if (tag == Algebra::A1) return {1, 2};
    std::vector<int> gens;
    for (int g = 1; g <= std::max(span, 1); g *= 2) gens.push_back(g);
    return gens;
}

int GradedModule::lo() const {
    if (basis_.empty()) throw std::logic_error("empty module has no degree range");
    return basis_.begin()->first;
}

int GradedModule::hi() const {
    if (basis_.empty()) throw std::logic_error("empty module has no degree range");
    return basis_.rbegin()->first;
}

std::size_t GradedModule::total_dim() const {
    std::size_t n = 0;
    for (const auto& [d, names] : basis_) n += names.size();
    return n;
}

std::size_t GradedModule::dim(int d) const {
    auto it = basis_.find(d);
    return it == basis_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& GradedModule::names(int d) const {
    static const std::vector<std::string> empty;
    auto it = basis_.find(d);
    return it == basis_.end() ? empty : it->second;
}

int GradedModule::degree_of(const std::string& name) const {
    auto it = degree_of_.find(name);
    if (it == degree_of_.end()) throw std::invalid_argument("unknown basis element '" + name + "'");
    return it->second;
}

void GradedModule::add_basis_element(const std::string& name, int degree) {
    if (name.empty()) throw std::invalid_argument("empty basis element name");
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '+')
            throw std::invalid_argument("invalid character in basis element name '" + name + "'");
    if (degree_of_.contains(name))
        throw std::invalid_argument("duplicate basis element name '" + name + "'");
    if (!actions_.empty()) throw std::logic_error("basis must be fixed before actions are set");
    basis_[degree].push_back(name);
    degree_of_[name] = degree;
}

F2Matrix GradedModule::action(int g, int d) const {
    auto it = actions_.find({g, d});
    if (it != actions_.end()) return it->second;
    return F2Matrix(dim(d + g), dim(d));
}

void GradedModule::set_action(int g, int d, F2Matrix m) {
    if (m.rows() != dim(d + g) || m.cols() != dim(d))
        throw std::invalid_argument("action matrix shape mismatch");
    if (m.is_zero())
        actions_.erase({g, d});
    else
        actions_[{g, d}] = std::move(m);
}

void GradedModule::set_action_entry(int g, int d, std::size_t src, std::size_t tgt, bool value) {
    F2Matrix m = action(g, d);
    if (tgt >= m.rows() || src >= m.cols()) throw std::invalid_argument("action entry out of range");
    m.set(tgt, src, value);
    set_action(g, d, std::move(m));
}

F2Matrix GradedModule::act_word(const Word& gen_word, int d) const {
    F2Matrix result = F2Matrix::identity(dim(d));
    int at = d;
    for (auto it = gen_word.rbegin(); it != gen_word.rend(); ++it) {
        result = action(*it, at).mul(result);
        at += *it;
    }
    return result;
}

F2Matrix GradedModule::act(const Element& e, int d) const {
    if (e.is_zero()) throw std::invalid_argument("cannot act by the zero element without a degree");
    int deg = e.degree();
    F2Matrix result(dim(d + deg), dim(d));
    if (result.rows() == 0 || result.cols() == 0) return result;
    if (deg == 0) {
        // the only degree-0 element is a multiple of the unit
        if (!e.terms().empty()) result = result ^ F2Matrix::identity(dim(d));
        return result;
    }
    // decompose the whole element over the span of generator words; single
    // admissible monomials of e need not lie in that span on their own
    auto gens = generator_degrees(tag_, std::max(span(), deg));
    std::size_t adm = steenrod::admissible_basis(deg).size();
    F2Span span(adm);
    std::vector<Word> contributing;
    for (const auto& w : steenrod::generator_words(gens, deg)) {
        Element we = Element::unit();
        for (int g : w) we = steenrod::multiply(we, Element::sq(g));
        if (span.insert(steenrod::coordinates(we, deg))) contributing.push_back(w);
    }
    auto coords = span.coordinates(steenrod::coordinates(e, deg));
    if (!coords)
        throw std::domain_error("element does not act through the stored generators");
    for (std::size_t i = 0; i < contributing.size(); ++i)
        if (coords->get(i)) result = result ^ act_word(contributing[i], d);
    return result;
}

bool GradedModule::operator==(const GradedModule& other) const {
    if (tag_ != other.tag_ || basis_ != other.basis_) return false;
    // Compare effective actions (absent entries are zero matrices).
    auto keys = [](const GradedModule& m) {
        std::vector<std::pair<int, int>> ks;
        for (const auto& [k, v] : m.actions_) ks.push_back(k);
        return ks;
    };
    for (const auto& k : keys(*this))
        if (action(k.first, k.second) != other.action(k.first, k.second)) return false;
    for (const auto& k : keys(other))
        if (action(k.first, k.second) != other.action(k.first, k.second)) return false;
    return true;
}

std::string CheckReport::to_string() const {
    std::ostringstream os;
    if (ok()) {
        os << "ok\n";
        return os.str();
    }
    for (const auto& s : malformed) os << "malformed: " << s << "\n";
    for (const auto& s : violations) os << "violation: " << s << "\n";
    return os.str();
}

namespace {

std::string word_list_to_string(const std::vector<Word>& words, const F2Vector& which) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (!which.get(i)) continue;
        if (!s.empty()) s += " + ";
        s += steenrod::to_string(words[i]);
    }
    return s;
}

}  // namespace

CheckReport check_axioms(const GradedModule& m) {
    CheckReport report;
    if (m.empty()) return report;
    auto gens = m.generators();

    // Relation check: every combination of generator words that reduces to
    // zero in the algebra must act as the zero map.
    for (int n = 2; n <= m.span(); ++n) {
        auto words = steenrod::generator_words(gens, n);
        const auto& basis = steenrod::admissible_basis(n);
        F2Matrix word_mat(basis.size(), words.size());
        for (std::size_t j = 0; j < words.size(); ++j) {
            auto coords = steenrod::coordinates(steenrod::adem_reduce(words[j]), n);
            for (std::size_t r = 0; r < basis.size(); ++r)
                if (coords.get(r)) word_mat.set(r, j, true);
        }
        for (const auto& rel : word_mat.kernel_basis()) {
            for (int d = m.lo(); d + n <= m.hi(); ++d) {
                if (m.dim(d) == 0 || m.dim(d + n) == 0) continue;
                F2Matrix sum(m.dim(d + n), m.dim(d));
                for (std::size_t j = 0; j < words.size(); ++j)
                    if (rel.get(j)) sum = sum ^ m.act_word(words[j], d);
                if (sum.is_zero()) continue;
                // witness: first basis element with a nonzero image
                std::size_t col = 0;
                for (; col < sum.cols(); ++col) {
                    bool nonzero = false;
                    for (std::size_t r = 0; r < sum.rows(); ++r)
                        if (sum.get(r, col)) { nonzero = true; break; }
                    if (nonzero) break;
                }
                report.violations.push_back(word_list_to_string(words, rel) +
                                            " acts nonzero in degree " + std::to_string(d) +
                                            " on " + m.names(d)[col]);
            }
        }
    }
    return report;
}

F2Matrix ModuleMap::at(int d) const {
    auto it = mats.find(d);
    if (it != mats.end()) return it->second;
    return F2Matrix(target.dim(d), source.dim(d));
}

bool ModuleMap::is_equivariant() const {
    if (source.algebra() != target.algebra()) return false;
    if (source.empty()) return true;
    for (int g : source.generators())
        for (int d = source.lo(); d + g <= source.hi(); ++d) {
            if (source.dim(d) == 0) continue;
            auto lhs = target.action(g, d).mul(at(d));
            auto rhs = at(d + g).mul(source.action(g, d));
            if (lhs != rhs) return false;
        }
    return true;
}

bool ModuleMap::is_invertible() const {
    if (source.empty() && target.empty()) return true;
    if (source.empty() != target.empty()) return false;
    int lo = std::min(source.lo(), target.lo());
    int hi = std::max(source.hi(), target.hi());
    for (int d = lo; d <= hi; ++d) {
        if (source.dim(d) != target.dim(d)) return false;
        if (source.dim(d) > 0 && !at(d).is_invertible()) return false;
    }
    return true;
}

GradedModule zero_module(Algebra tag) { return GradedModule(tag); }

GradedModule f2_module(Algebra tag, int degree) {
    GradedModule m(tag);
    m.add_basis_element("e", degree);
    return m;
}

GradedModule shift(const GradedModule& m, int n) {
    GradedModule out(m.algebra());
    if (m.empty()) return out;
    for (int d = m.lo(); d <= m.hi(); ++d)
        for (const auto& name : m.names(d)) out.add_basis_element(name, d + n);
    for (int g : m.generators())
        for (int d = m.lo(); d + g <= m.hi(); ++d)
            if (m.dim(d) > 0 && m.dim(d + g) > 0) out.set_action(g, d + n, m.action(g, d));
    return out;
}

namespace {

std::string fresh_name(const GradedModule& m, std::string name) {
    auto taken = [&](const std::string& s) {
        try {
            m.degree_of(s);
            return true;
        } catch (const std::invalid_argument&) {
            return false;
        }
    };
    while (taken(name)) name += '\'';
    return name;
}

}  // namespace

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("algebra tag mismatch");
    GradedModule out(a.algebra());
    if (a.empty() && b.empty()) return out;
    int lo = std::min(a.empty() ? b.lo() : a.lo(), b.empty() ? a.lo() : b.lo());
    int hi = std::max(a.empty() ? b.hi() : a.hi(), b.empty() ? a.hi() : b.hi());
    // a-block first in every degree
    for (int d = lo; d <= hi; ++d) {
        for (const auto& name : a.names(d)) out.add_basis_element(fresh_name(out, name), d);
        for (const auto& name : b.names(d)) out.add_basis_element(fresh_name(out, name), d);
    }
    for (int g : out.generators())
        for (int d = lo; d + g <= hi; ++d) {
            std::size_t rows = out.dim(d + g), cols = out.dim(d);
            if (rows == 0 || cols == 0) continue;
            F2Matrix mat(rows, cols);
            auto fill = [&](const GradedModule& part, std::size_t row0, std::size_t col0) {
                if (part.dim(d) == 0 || part.dim(d + g) == 0) return;
                auto pm = part.action(g, d);
                for (std::size_t i = 0; i < pm.rows(); ++i)
                    for (std::size_t j = 0; j < pm.cols(); ++j)
                        if (pm.get(i, j)) mat.set(row0 + i, col0 + j, true);
            };
            fill(a, 0, 0);
            fill(b, a.dim(d + g), a.dim(d));
            out.set_action(g, d, std::move(mat));
        }
    return out;
}

GradedModule dualize(const GradedModule& m) {
    GradedModule out(m.algebra());
    if (m.empty()) return out;
    for (int d = m.hi(); d >= m.lo(); --d)
        for (const auto& name : m.names(d)) out.add_basis_element(name + "*", -d);
    for (int g : m.generators()) {
        Element chi_g = steenrod::antipode(Element::sq(g));
        for (int n = m.lo() + g; n <= m.hi(); ++n) {
            // Sq^g maps the dual of degree n to the dual of degree n-g:
            // (Sq^g f)(x) = f(chi(Sq^g) x).
            if (m.dim(n) == 0 || m.dim(n - g) == 0) continue;
            out.set_action(g, -n, m.act(chi_g, n - g).transpose());
        }
    }
    return out;
}

namespace {

// Column offset of the block (p, t-p) inside degree t of a tensor product.
std::size_t tensor_offset(const GradedModule& a, const GradedModule& b, int t, int p) {
    std::size_t off = 0;
    for (int q = a.lo(); q < p; ++q) off += a.dim(q) * b.dim(t - q);
    return off;
}

}  // namespace

GradedModule tensor(const GradedModule& a, const GradedModule& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("algebra tag mismatch");
    GradedModule out(a.algebra());
    if (a.empty() || b.empty()) return out;
    for (int t = a.lo() + b.lo(); t <= a.hi() + b.hi(); ++t)
        for (int p = a.lo(); p <= a.hi(); ++p)
            for (const auto& an : a.names(p))
                for (const auto& bn : b.names(t - p))
                    out.add_basis_element(fresh_name(out, an + "." + bn), t);
    if (out.empty()) return out;

    for (int g : out.generators()) {
        for (int t = out.lo(); t + g <= out.hi(); ++t) {
            std::size_t rows = out.dim(t + g), cols = out.dim(t);
            if (rows == 0 || cols == 0) continue;
            F2Matrix mat(rows, cols);
            for (int p = a.lo(); p <= a.hi(); ++p) {
                std::size_t da = a.dim(p), db = b.dim(t - p);
                if (da == 0 || db == 0) continue;
                std::size_t col0 = tensor_offset(a, b, t, p);
                // Sq^g(x (x) y) = sum_i Sq^i x (x) Sq^{g-i} y
                for (int i = 0; i <= g; ++i) {
                    if (a.dim(p + i) == 0 || b.dim(t - p + g - i) == 0) continue;
                    F2Matrix am = a.act(Element::sq(i), p);
                    F2Matrix bm = b.act(Element::sq(g - i), t - p);
                    std::size_t row0 = tensor_offset(a, b, t + g, p + i);
                    for (std::size_t ia = 0; ia < da; ++ia)
                        for (std::size_t ib = 0; ib < db; ++ib)
                            for (std::size_t ra = 0; ra < am.rows(); ++ra) {
                                if (!am.get(ra, ia)) continue;
                                for (std::size_t rb = 0; rb < bm.rows(); ++rb)
                                    if (bm.get(rb, ib))
                                        mat.flip(row0 + ra * bm.rows() + rb, col0 + ia * db + ib);
                            }
                }
            }
            out.set_action(g, t, std::move(mat));
        }
    }
    return out;
}

namespace {

// Coordinates of the A(1) basis elements in a given degree, as a span that
// can express products.
struct A1Degree {
    std::vector<Element> elems;
    F2Span span;
};

A1Degree a1_degree(int d) {
    A1Degree out{steenrod::a1_basis_in_degree(d), F2Span(steenrod::admissible_basis(d).size())};
    for (const auto& e : out.elems) out.span.insert(steenrod::coordinates(e, d));
    return out;
}

}  // namespace

GradedModule free_module(Algebra tag, const std::vector<int>& shifts) {
    if (tag != Algebra::A1) throw std::invalid_argument("free modules are supported over A(1) only");
    GradedModule out(tag);
    if (shifts.empty()) return out;
    const auto& basis = steenrod::a1_basis();
    // basis element j of copy i is named f{i}.b{j}
    int lo = *std::min_element(shifts.begin(), shifts.end());
    int hi = *std::max_element(shifts.begin(), shifts.end()) + 6;
    for (int d = lo; d <= hi; ++d)
        for (std::size_t i = 0; i < shifts.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (basis[j].degree() + shifts[i] == d)
                    out.add_basis_element("f" + std::to_string(i) + ".b" + std::to_string(j), d);
    for (int g : {1, 2})
        for (int d = lo; d + g <= hi; ++d) {
            std::size_t rows = out.dim(d + g), cols = out.dim(d);
            if (rows == 0 || cols == 0) continue;
            F2Matrix mat(rows, cols);
            // enumerate columns in the same order the basis was added
            std::size_t col = 0;
            for (std::size_t i = 0; i < shifts.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    if (basis[j].degree() + shifts[i] != d) continue;
                    Element prod = steenrod::multiply(Element::sq(g), basis[j]);
                    if (!prod.is_zero()) {
                        int pd = basis[j].degree() + g;
                        auto deg = a1_degree(pd);
                        auto coords = deg.span.coordinates(steenrod::coordinates(prod, pd));
                        if (!coords) throw std::logic_error("product left A(1)");
                        // locate rows of copy i in degree d+g
                        std::size_t row = 0;
                        for (std::size_t i2 = 0; i2 < shifts.size(); ++i2)
                            for (std::size_t j2 = 0; j2 < basis.size(); ++j2) {
                                if (basis[j2].degree() + shifts[i2] != d + g) continue;
                                if (i2 == i) {
                                    // which element of a1_basis_in_degree(pd) is j2?
                                    std::size_t k = 0;
                                    for (std::size_t j3 = 0; j3 < j2; ++j3)
                                        if (basis[j3].degree() == pd) ++k;
                                    if (coords->get(k)) mat.set(row, col, true);
                                }
                                ++row;
                            }
                    }
                    ++col;
                }
            out.set_action(g, d, std::move(mat));
        }
    return out;
}

GradedModule joker() {
    // A(1)/A(1){Sq^3}: quotient of the regular module by the left ideal on
    // Sq^3, computed degreewise by linear algebra.
    const auto& basis = steenrod::a1_basis();
    Element sq3 = Element::sq(3);

    std::map<int, A1Degree> degs;
    for (int d = 0; d <= 6; ++d) degs.emplace(d, a1_degree(d));

    // Per degree: a span holding the ideal generators first and then unit
    // probes for the surviving representatives. Coordinates of any vector in
    // that span split into an ideal part and a representative part.
    std::map<int, F2Span> spans;
    std::map<int, std::size_t> ideal_rank;
    std::map<int, std::vector<std::size_t>> reps;   // indices into a1_basis_in_degree
    GradedModule out(Algebra::A1);
    for (int d = 0; d <= 6; ++d) {
        std::size_t n = degs.at(d).elems.size();
        spans.emplace(d, F2Span(n));
        F2Span& sp = spans.at(d);
        for (const auto& a : basis) {
            Element prod = steenrod::multiply(a, sq3);
            if (prod.is_zero() || prod.degree() != d) continue;
            sp.insert(*degs.at(d).span.coordinates(steenrod::coordinates(prod, d)));
        }
        ideal_rank[d] = sp.rank();
        for (std::size_t i = 0; i < n; ++i) {
            F2Vector probe(n);
            probe.set(i, true);
            if (sp.insert(probe)) {
                reps[d].push_back(i);
                out.add_basis_element("j" + std::to_string(d), d);
            }
        }
    }

    for (int g : {1, 2})
        for (int d = 0; d + g <= 6; ++d) {
            std::size_t rows = out.dim(d + g), cols = out.dim(d);
            if (rows == 0 || cols == 0) continue;
            F2Matrix mat(rows, cols);
            for (std::size_t c = 0; c < cols; ++c) {
                Element rep = degs.at(d).elems[reps.at(d)[c]];
                Element prod = steenrod::multiply(Element::sq(g), rep);
                if (prod.is_zero()) continue;
                int pd = d + g;
                F2Vector coords = *degs.at(pd).span.coordinates(steenrod::coordinates(prod, pd));
                auto combined = spans.at(pd).coordinates(coords);
                if (!combined) throw std::logic_error("product escaped A(1)");
                for (std::size_t r = 0; r < rows; ++r)
                    if (combined->get(ideal_rank.at(pd) + r)) mat.set(r, c, true);
            }
            out.set_action(g, d, std::move(mat));
        }
    return out;
}

GradedModule restrict_to_a1(const GradedModule& m) {
    GradedModule out(Algebra::A1);
    if (m.empty()) return out;
    for (int d = m.lo(); d <= m.hi(); ++d)
        for (const auto& name : m.names(d)) out.add_basis_element(name, d);
    for (int g : {1, 2})
        for (int d = m.lo(); d + g <= m.hi(); ++d)
            if (m.dim(d) > 0 && m.dim(d + g) > 0) out.set_action(g, d, m.action(g, d));
    return out;
}

namespace {

// Linear-system view of the space of equivariant maps f: src -> tgt. One
// variable per matrix entry f_d[r][c]; equivariance gives the constraints.
class HomSolver {
public:
    HomSolver(const GradedModule& src, const GradedModule& tgt) : src_(src), tgt_(tgt) {
        if (!src.empty() && !tgt.empty()) {
            int lo = std::min(src.lo(), tgt.lo()), hi = std::max(src.hi(), tgt.hi());
            for (int d = lo; d <= hi; ++d) {
                std::size_t n = tgt.dim(d) * src.dim(d);
                if (n == 0) continue;
                offset_[d] = nvars_;
                nvars_ += n;
            }
        }
    }

    std::size_t nvars() const { return nvars_; }

    bool has_vars(int d) const { return offset_.contains(d); }
    std::size_t var(int d, std::size_t row, std::size_t col) const {
        return offset_.at(d) + row * src_.dim(d) + col;
    }

    // rows expressing target.action * f_d + f_{d+g} * source.action = 0
    F2Matrix equivariance_rows() const {
        std::vector<F2Vector> rows;
        if (src_.empty() || tgt_.empty()) return F2Matrix(0, nvars_);
        for (int g : src_.generators()) {
            int lo = std::min(src_.lo(), tgt_.lo()), hi = std::max(src_.hi(), tgt_.hi());
            for (int d = lo; d + g <= hi; ++d) {
                std::size_t sc = src_.dim(d), tr = tgt_.dim(d + g);
                if (sc == 0 || tr == 0) continue;
                auto tact = tgt_.action(g, d);    // tgt.dim(d+g) x tgt.dim(d)
                auto sact = src_.action(g, d);    // src.dim(d+g) x src.dim(d)
                for (std::size_t r = 0; r < tr; ++r)
                    for (std::size_t c = 0; c < sc; ++c) {
                        F2Vector row(nvars_);
                        for (std::size_t k = 0; k < tgt_.dim(d); ++k)
                            if (tact.get(r, k) && has_vars(d)) row.flip(var(d, k, c));
                        for (std::size_t k = 0; k < src_.dim(d + g); ++k)
                            if (sact.get(k, c) && has_vars(d + g)) row.flip(var(d + g, r, k));
                        if (row.any()) rows.push_back(std::move(row));
                    }
            }
        }
        F2Matrix m(0, nvars_);
        for (auto& r : rows) m.append_row(r);
        return m;
    }

    std::map<int, F2Matrix> unpack(const F2Vector& solution) const {
        std::map<int, F2Matrix> mats;
        for (const auto& [d, off] : offset_) {
            F2Matrix m(tgt_.dim(d), src_.dim(d));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (solution.get(off + r * m.cols() + c)) m.set(r, c, true);
            if (!m.is_zero()) mats[d] = std::move(m);
        }
        return mats;
    }

private:
    const GradedModule& src_;
    const GradedModule& tgt_;
    std::map<int, std::size_t> offset_;
    std::size_t nvars_ = 0;
};

}  // namespace

SplitResult split_free_summands(const GradedModule& input) {
    if (input.algebra() != Algebra::A1)
        throw std::invalid_argument("free-summand splitting works over A(1) only");
    SplitResult result{{}, input};
    const Element& top = steenrod::a1_top();

    for (;;) {
        GradedModule& m = result.remainder;
        if (m.empty()) break;
        // First basis vector (lowest degree, then basis order) not killed by
        // the top element of A(1).
        int found_d = 0;
        std::size_t found_col = 0;
        bool found = false;
        for (int d = m.lo(); d <= m.hi() && !found; ++d) {
            if (m.dim(d) == 0 || m.dim(d + 6) == 0) continue;
            auto t = m.act(top, d);
            for (std::size_t c = 0; c < t.cols() && !found; ++c)
                for (std::size_t r = 0; r < t.rows(); ++r)
                    if (t.get(r, c)) {
                        found = true;
                        found_d = d;
                        found_col = c;
                        break;
                    }
        }
        if (!found) break;

        GradedModule free = free_module(Algebra::A1, {found_d});
        // Solve for an equivariant projection p: M -> free with p(x) = generator.
        HomSolver solver(m, free);
        F2Matrix constraints = solver.equivariance_rows();
        std::size_t extra0 = constraints.rows();
        // p_{found_d}(x) = the degree-found_d basis element of `free`
        for (std::size_t r = 0; r < free.dim(found_d); ++r) {
            F2Vector row(solver.nvars());
            row.set(solver.var(found_d, r, found_col), true);
            constraints.append_row(row);
        }
        F2Vector rhs(constraints.rows());
        rhs.set(extra0, true);  // generator is index 0 in its degree
        auto solution = constraints.solve(rhs);
        if (!solution) throw std::logic_error("free summand projection does not exist");
        auto pmats = solver.unpack(*solution);
        ModuleMap p{m, free, pmats};

        // remainder = ker p, with the restricted action
        GradedModule rem(Algebra::A1);
        std::map<int, std::vector<F2Vector>> kernels;
        for (int d = m.lo(); d <= m.hi(); ++d) {
            if (m.dim(d) == 0) continue;
            kernels[d] = p.at(d).kernel_basis();
            for (std::size_t i = 0; i < kernels[d].size(); ++i)
                rem.add_basis_element("k" + std::to_string(d) + "_" + std::to_string(i), d);
        }
        for (int g : {1, 2})
            for (int d = m.lo(); d + g <= m.hi(); ++d) {
                std::size_t rows = rem.dim(d + g), cols = rem.dim(d);
                if (rows == 0 || cols == 0) continue;
                F2Span span(m.dim(d + g));
                for (const auto& v : kernels[d + g]) span.insert(v);
                F2Matrix mat(rows, cols);
                auto act = m.action(g, d);
                for (std::size_t c = 0; c < cols; ++c) {
                    auto img = act.mul(kernels[d][c]);
                    auto coords = span.coordinates(img);
                    if (!coords) throw std::logic_error("kernel is not action-stable");
                    for (std::size_t r = 0; r < rows; ++r)
                        if (coords->get(r)) mat.set(r, c, true);
                }
                rem.set_action(g, d, std::move(mat));
            }
        result.shifts.push_back(found_d);
        result.remainder = std::move(rem);
    }
    return result;
}

std::optional<ModuleMap> iso_check(const GradedModule& a, const GradedModule& b) {
    if (a.algebra() != b.algebra()) return std::nullopt;
    if (a.empty() && b.empty()) return ModuleMap{a, b, {}};
    if (a.empty() != b.empty()) return std::nullopt;
    if (a.total_dim() != b.total_dim()) return std::nullopt;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    for (int d = lo; d <= hi; ++d)
        if (a.dim(d) != b.dim(d)) return std::nullopt;
    // action-rank invariants prune most non-isomorphic pairs
    for (int g : a.generators())
        for (int d = lo; d + g <= hi; ++d)
            if (a.action(g, d).rank() != b.action(g, d).rank()) return std::nullopt;

    HomSolver solver(a, b);
    auto hom_basis = solver.equivariance_rows().kernel_basis();

    auto candidate = [&](const F2Vector& combo) -> std::optional<ModuleMap> {
        F2Vector sol(solver.nvars());
        for (std::size_t i = 0; i < hom_basis.size(); ++i)
            if (combo.get(i)) sol ^= hom_basis[i];
        ModuleMap f{a, b, solver.unpack(sol)};
        if (f.is_invertible()) return f;
        return std::nullopt;
    };

    if (hom_basis.size() <= 16) {
        std::size_t count = std::size_t(1) << hom_basis.size();
        for (std::size_t bits = 1; bits < count; ++bits) {
            F2Vector combo(hom_basis.size());
            for (std::size_t i = 0; i < hom_basis.size(); ++i)
                if ((bits >> i) & 1) combo.set(i, true);
            if (auto f = candidate(combo)) return f;
        }
        return std::nullopt;
    }
    std::mt19937 rng(0);
    for (int trial = 0; trial < 50000; ++trial) {
        F2Vector combo(hom_basis.size());
        for (std::size_t i = 0; i < hom_basis.size(); ++i)
            if (rng() & 1) combo.set(i, true);
        if (auto f = candidate(combo)) return f;
    }
    return std::nullopt;
}

std::string to_json(const GradedModule& m) {
    nlohmann::ordered_json j;
    j["algebra"] = algebra_name(m.algebra());
    j["basis"] = nlohmann::ordered_json::array();
    if (!m.empty()) {
        for (int d = m.lo(); d <= m.hi(); ++d)
            for (const auto& name : m.names(d))
                j["basis"].push_back({{"name", name}, {"degree", d}});
    }
    nlohmann::ordered_json actions = nlohmann::ordered_json::object();
    if (!m.empty())
        for (int g : m.generators()) {
            nlohmann::ordered_json entries = nlohmann::ordered_json::array();
            for (int d = m.lo(); d + g <= m.hi(); ++d) {
                auto mat = m.action(g, d);
                for (std::size_t c = 0; c < mat.cols(); ++c) {
                    std::string expr;
                    for (std::size_t r = 0; r < mat.rows(); ++r) {
                        if (!mat.get(r, c)) continue;
                        if (!expr.empty()) expr += " + ";
                        expr += m.names(d + g)[r];
                    }
                    if (!expr.empty())
                        entries.push_back({m.names(d)[c], expr});
                }
            }
            if (!entries.empty()) actions["Sq" + std::to_string(g)] = entries;
        }
    j["actions"] = actions;
    return j.dump(2) + "\n";
}

GradedModule from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    try {
        GradedModule m(algebra_from_name(j.at("algebra").get<std::string>()));
        for (const auto& b : j.at("basis"))
            m.add_basis_element(b.at("name").get<std::string>(), b.at("degree").get<int>());
        if (j.contains("actions"))
            for (const auto& [key, entries] : j.at("actions").items()) {
                if (key.size() < 3 || key.compare(0, 2, "Sq") != 0)
                    throw ParseError("bad action key '" + key + "'");
                int g = std::stoi(key.substr(2));
                bool valid = m.algebra() == Algebra::A1 ? (g == 1 || g == 2)
                                                        : (g >= 1 && (g & (g - 1)) == 0);
                if (!valid) throw ParseError("'" + key + "' is not a generator for " +
                                             algebra_name(m.algebra()));
                for (const auto& entry : entries) {
                    if (!entry.is_array() || entry.size() != 2)
                        throw ParseError("action entries must be [source, targets] pairs");
                    std::string src = entry[0].get<std::string>();
                    std::string expr = entry[1].get<std::string>();
                    int d = m.degree_of(src);
                    const auto& src_names = m.names(d);
                    std::size_t col =
                        std::find(src_names.begin(), src_names.end(), src) - src_names.begin();
                    // parse "a + b + c"
                    std::istringstream is(expr);
                    std::string tok;
                    while (is >> tok) {
                        if (tok == "+") continue;
                        if (tok == "0") continue;
                        int td = m.degree_of(tok);
                        if (td != d + g)
                            throw ParseError("target '" + tok + "' has degree " +
                                             std::to_string(td) + ", expected " +
                                             std::to_string(d + g));
                        const auto& tgt_names = m.names(td);
                        std::size_t row =
                            std::find(tgt_names.begin(), tgt_names.end(), tok) - tgt_names.begin();
                        m.set_action_entry(g, d, col, row,
                                           !m.action(g, d).get(row, col));
                    }
                }
            }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

}  // namespace sq2::gradmod
