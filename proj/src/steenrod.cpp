#include "sq2/steenrod.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace sq2::steenrod {

namespace {

// C(m, n) mod 2 by Lucas: odd iff n is a bit-submask of m.
bool binom_odd(int m, int n) {
    if (n < 0 || m < 0 || n > m) return false;
    return (m & n) == n;
}

std::mutex memo_mutex;

// Adem relation for Sq^a Sq^b with a < 2b:
//   Sq^a Sq^b = sum_{c} C(b-c-1, a-2c) Sq^{a+b-c} Sq^c.
// All output words are admissible.
const std::vector<Word>& adem_pair(int a, int b) {
    static std::map<std::pair<int, int>, std::vector<Word>> memo;
    std::lock_guard lock(memo_mutex);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    std::vector<Word> out;
    for (int c = 0; 2 * c <= a; ++c) {
        if (!binom_odd(b - c - 1, a - 2 * c)) continue;
        if (c == 0)
            out.push_back({a + b});
        else
            out.push_back({a + b - c, c});
    }
    return memo.emplace(std::pair{a, b}, std::move(out)).first->second;
}

void set_toggle(std::set<Word>& s, const Word& w) {
    auto [it, inserted] = s.insert(w);
    if (!inserted) s.erase(it);
}

}  // namespace

int degree(const Word& w) { return std::accumulate(w.begin(), w.end(), 0); }

bool is_admissible(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < 2 * w[i + 1]) return false;
    return true;
}

int excess(const Word& w) {
    if (w.empty()) return 0;
    return w[0] - (degree(w) - w[0]);
}

Element Element::unit() {
    Element e;
    e.terms_.insert(Word{});
    return e;
}

Element Element::sq(int k) {
    if (k < 0) throw std::invalid_argument("negative Sq exponent");
    if (k == 0) return unit();
    Element e;
    e.terms_.insert(Word{k});
    return e;
}

Element Element::monomial(Word w) {
    if (!is_admissible(w)) throw std::invalid_argument("monomial is not admissible");
    for (int r : w)
        if (r < 1) throw std::invalid_argument("nonpositive Sq exponent");
    Element e;
    e.terms_.insert(std::move(w));
    return e;
}

int Element::degree() const {
    if (terms_.empty()) return -1;
    return steenrod::degree(*terms_.begin());
}

void Element::toggle(const Word& w) {
    if (!terms_.empty() && steenrod::degree(w) != degree())
        throw std::invalid_argument("inhomogeneous sum of monomials");
    set_toggle(terms_, w);
}

Element& Element::operator+=(const Element& other) {
    if (!terms_.empty() && !other.terms_.empty() && degree() != other.degree())
        throw std::invalid_argument("inhomogeneous sum");
    for (const auto& w : other.terms_) set_toggle(terms_, w);
    return *this;
}

Tensor Tensor::unit() {
    Tensor t;
    t.terms_.insert({Word{}, Word{}});
    return t;
}

void Tensor::toggle(const Word& left, const Word& right) {
    auto [it, inserted] = terms_.insert({left, right});
    if (!inserted) terms_.erase(it);
}

Tensor& Tensor::operator+=(const Tensor& other) {
    for (const auto& t : other.terms_) toggle(t.first, t.second);
    return *this;
}

Element adem_reduce(const Word& word) {
    for (int r : word)
        if (r < 1) throw std::invalid_argument("nonpositive Sq exponent");
    Element result;
    std::set<Word> pending;
    pending.insert(word);
    while (!pending.empty()) {
        Word w = *pending.begin();
        pending.erase(pending.begin());
        std::size_t bad = w.size();
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] < 2 * w[i + 1]) { bad = i; break; }
        if (bad == w.size()) {
            result.toggle(w);
            continue;
        }
        for (const auto& pair : adem_pair(w[bad], w[bad + 1])) {
            Word next(w.begin(), w.begin() + bad);
            next.insert(next.end(), pair.begin(), pair.end());
            next.insert(next.end(), w.begin() + bad + 2, w.end());
            set_toggle(pending, next);
        }
    }
    return result;
}

Element multiply(const Element& a, const Element& b) {
    Element result;
    for (const auto& u : a.terms())
        for (const auto& v : b.terms()) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            result += adem_reduce(w);
        }
    return result;
}

Tensor tensor_multiply(const Tensor& a, const Tensor& b) {
    Tensor result;
    for (const auto& [u1, u2] : a.terms())
        for (const auto& [v1, v2] : b.terms()) {
            Word l = u1;
            l.insert(l.end(), v1.begin(), v1.end());
            Word r = u2;
            r.insert(r.end(), v2.begin(), v2.end());
            Element le = adem_reduce(l), re = adem_reduce(r);
            for (const auto& lw : le.terms())
                for (const auto& rw : re.terms()) result.toggle(lw, rw);
        }
    return result;
}

Tensor coproduct(const Element& a) {
    Tensor result;
    for (const auto& word : a.terms()) {
        Tensor t = Tensor::unit();
        for (int r : word) {
            Tensor factor;
            for (int i = 0; i <= r; ++i) {
                Word l = i > 0 ? Word{i} : Word{};
                Word rr = r - i > 0 ? Word{r - i} : Word{};
                factor.toggle(l, rr);
            }
            t = tensor_multiply(t, factor);
        }
        result += t;
    }
    return result;
}

Element antipode_sq(int k) {
    static std::map<int, Element> memo;
    static std::mutex chi_mutex;
    if (k < 0) throw std::invalid_argument("negative Sq exponent");
    if (k == 0) return Element::unit();
    {
        std::lock_guard lock(chi_mutex);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
    }
    Element result;
    for (int r = 0; r < k; ++r) result += multiply(Element::sq(k - r), antipode_sq(r));
    std::lock_guard lock(chi_mutex);
    return memo.emplace(k, std::move(result)).first->second;
}

Element antipode(const Element& a) {
    Element result;
    for (const auto& word : a.terms()) {
        Element prod = Element::unit();
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            prod = multiply(prod, antipode_sq(*it));
        result += prod;
    }
    return result;
}

const std::vector<Word>& admissible_basis(int deg) {
    if (deg < 0) throw std::invalid_argument("negative degree");
    static std::map<int, std::vector<Word>> memo;
    static std::mutex basis_mutex;
    std::lock_guard lock(basis_mutex);
    auto it = memo.find(deg);
    if (it != memo.end()) return it->second;

    // Choose the first entry a, then an admissible tail of degree n-a with
    // first entry <= a/2.
    struct Rec {
        std::vector<Word> operator()(int n, int max_first) const {
            std::vector<Word> out;
            if (n == 0) {
                out.push_back({});
                return out;
            }
            for (int a = n; a >= 1; --a) {
                if (a > max_first) continue;
                for (auto tail : (*this)(n - a, a / 2)) {
                    Word w{a};
                    w.insert(w.end(), tail.begin(), tail.end());
                    out.push_back(std::move(w));
                }
            }
            return out;
        }
    };
    auto words = Rec{}(deg, deg);
    return memo.emplace(deg, std::move(words)).first->second;
}

F2Vector coordinates(const Element& a, int deg) {
    const auto& basis = admissible_basis(deg);
    F2Vector v(basis.size());
    if (a.is_zero()) return v;
    if (a.degree() != deg) throw std::invalid_argument("element degree mismatch");
    for (const auto& w : a.terms()) {
        auto it = std::find(basis.begin(), basis.end(), w);
        if (it == basis.end()) throw std::logic_error("monomial missing from basis");
        v.flip(static_cast<std::size_t>(it - basis.begin()));
    }
    return v;
}

Element from_coordinates(const F2Vector& v, int deg) {
    const auto& basis = admissible_basis(deg);
    if (v.size() != basis.size()) throw std::invalid_argument("coordinate length mismatch");
    Element e;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (v.get(i)) e.toggle(basis[i]);
    return e;
}

const std::vector<Element>& a1_basis() {
    static const std::vector<Element> basis = [] {
        std::vector<Element> found;
        std::map<int, F2Span> spans;
        auto try_add = [&](const Element& e) {
            if (e.is_zero()) return false;
            int d = e.degree();
            auto [it, _] = spans.try_emplace(d, admissible_basis(d).size());
            if (!it->second.insert(coordinates(e, d))) return false;
            found.push_back(e);
            return true;
        };
        try_add(Element::unit());
        for (std::size_t i = 0; i < found.size(); ++i) {
            Element cur = found[i];
            for (int g : {1, 2}) try_add(multiply(Element::sq(g), cur));
        }
        std::stable_sort(found.begin(), found.end(), [](const Element& a, const Element& b) {
            return a.degree() < b.degree();
        });
        return found;
    }();
    return basis;
}

std::vector<Element> a1_basis_in_degree(int d) {
    std::vector<Element> out;
    for (const auto& e : a1_basis())
        if (e.degree() == d) out.push_back(e);
    return out;
}

const Element& a1_top() {
    static const Element top = [] {
        for (const auto& e : a1_basis())
            if (e.degree() == 6) return e;
        throw std::logic_error("A(1) has no degree-6 element");
    }();
    return top;
}

bool a1_contains(const Element& a) {
    if (a.is_zero()) return true;
    int d = a.degree();
    if (d > 6) return false;
    F2Span span(admissible_basis(d).size());
    for (const auto& e : a1_basis_in_degree(d)) span.insert(coordinates(e, d));
    return span.contains(coordinates(a, d));
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += "Sq" + std::to_string(w[i]);
    }
    return s;
}

std::string to_string(const Element& a) {
    if (a.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& w : a.terms()) {
        if (!first) s += " + ";
        s += to_string(w);
        first = false;
    }
    return s;
}

Element parse(const std::string& text) {
    Element result;
    Word current;
    bool saw_factor = false;
    bool saw_any = false;
    bool saw_zero = false;
    std::size_t i = 0;
    auto flush = [&](std::size_t pos) {
        if (!saw_factor) throw ParseError("empty monomial", pos);
        try {
            result += adem_reduce(current);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), pos);  // inhomogeneous sum
        }
        current.clear();
        saw_factor = false;
        saw_any = true;
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '+') {
            flush(i);
            ++i;
            continue;
        }
        if (c == '1' && (i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            if (saw_factor) throw ParseError("unexpected '1' inside monomial", i);
            saw_factor = true;  // unit factor: empty word
            ++i;
            continue;
        }
        if (c == '0' && (i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            if (saw_factor || saw_any) throw ParseError("unexpected '0'", i);
            saw_zero = true;
            saw_any = true;
            ++i;
            continue;
        }
        if (text.compare(i, 2, "Sq") == 0) {
            std::size_t j = i + 2;
            if (j >= text.size() || !std::isdigit(static_cast<unsigned char>(text[j])))
                throw ParseError("expected exponent after 'Sq'", j);
            int k = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                k = k * 10 + (text[j++] - '0');
            if (k < 1) throw ParseError("Sq exponent must be positive", i + 2);
            current.push_back(k);
            saw_factor = true;
            i = j;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    if (saw_zero) {
        if (saw_factor) throw ParseError("'0' cannot be combined with monomials", text.size());
        return Element::zero();
    }
    flush(text.size());
    return result;
}

std::vector<Word> generator_words(const std::vector<int>& gens, int deg) {
    std::vector<Word> out;
    if (deg == 0) {
        out.push_back({});
        return out;
    }
    for (int g : gens) {
        if (g > deg) continue;
        for (auto tail : generator_words(gens, deg - g)) {
            Word w{g};
            w.insert(w.end(), tail.begin(), tail.end());
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::vector<Word> decompose_into_generators(const Word& m, const std::vector<int>& gens) {
    struct Cache {
        F2Span span;
        std::vector<Word> inserted;  // generator words that enlarged the span
    };
    static std::map<std::pair<std::vector<int>, int>, Cache> memo;
    static std::mutex decomp_mutex;
    int deg = degree(m);
    std::lock_guard lock(decomp_mutex);
    auto key = std::pair{gens, deg};
    auto it = memo.find(key);
    if (it == memo.end()) {
        Cache cache{F2Span(admissible_basis(deg).size()), {}};
        for (const auto& w : generator_words(gens, deg)) {
            Element e = adem_reduce(w);
            if (e.is_zero()) continue;
            if (cache.span.insert(coordinates(e, deg))) cache.inserted.push_back(w);
        }
        it = memo.emplace(key, std::move(cache)).first;
    }
    auto coords = it->second.span.coordinates(coordinates(Element::monomial(m), deg));
    if (!coords) throw std::domain_error("monomial is not a combination of generator words");
    std::vector<Word> out;
    for (std::size_t i = 0; i < coords->size(); ++i)
        if (coords->get(i)) out.push_back(it->second.inserted[i]);
    return out;
}

}  // namespace sq2::steenrod
