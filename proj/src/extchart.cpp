#include "sq2/extchart.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sq2/steenrod.hpp"

namespace sq2::ext {

namespace {

using gradmod::Algebra;
using gradmod::GradedModule;

struct MinimalGenerators {
    std::vector<int> degrees;                 // ascending
    std::vector<F2Vector> vectors;            // coordinates in the source degree
};

// Generators of n modulo the image of the positive-degree part of A(1),
// lowest degree first, earliest basis vector first. Only degrees <= t_max
// are inspected.
MinimalGenerators minimal_generators(const GradedModule& n, int t_max) {
    MinimalGenerators out;
    if (n.empty()) return out;
    for (int t = n.lo(); t <= std::min(n.hi(), t_max); ++t) {
        std::size_t nt = n.dim(t);
        if (nt == 0) continue;
        F2Span span(nt);
        for (std::size_t i = 0; i < out.degrees.size(); ++i) {
            int k = out.degrees[i];
            if (k >= t || t - k > 6) continue;
            for (const auto& e : steenrod::a1_basis_in_degree(t - k))
                span.insert(n.act(e, k).mul(out.vectors[i]));
        }
        for (std::size_t j = 0; j < nt; ++j) {
            F2Vector unit(nt);
            unit.set(j, true);
            if (span.insert(unit)) {
                out.degrees.push_back(t);
                out.vectors.push_back(unit);
            }
        }
    }
    return out;
}

// Per-degree matrices of the map free_module(gens.degrees) -> n sending the
// bottom of copy i to gens.vectors[i].
std::map<int, F2Matrix> covering_map(const GradedModule& n, const GradedModule& free,
                                     const MinimalGenerators& gens, int t_max) {
    std::map<int, F2Matrix> out;
    if (free.empty()) return out;
    const auto& basis = steenrod::a1_basis();
    for (int d = free.lo(); d <= std::min(free.hi(), t_max); ++d) {
        std::size_t cols = free.dim(d);
        F2Matrix mat(n.dim(d), cols);
        std::size_t col = 0;
        for (std::size_t i = 0; i < gens.degrees.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (basis[j].degree() + gens.degrees[i] != d) continue;
                F2Vector image = n.act(basis[j], gens.degrees[i]).mul(gens.vectors[i]);
                for (std::size_t r = 0; r < image.size(); ++r)
                    if (image.get(r)) mat.set(r, col, true);
                ++col;
            }
        if (col != cols) throw std::logic_error("free module basis order mismatch");
        out[d] = std::move(mat);
    }
    return out;
}

// The kernel of the covering map as an A(1)-module, with basis names carrying
// the stage for uniqueness. Basis and actions exist for degrees <= t_max.
// kb_out receives the kernel basis vectors in the free module's coordinates.
GradedModule kernel_module(const GradedModule& free,
                           const std::map<int, F2Matrix>& diff, int s, int t_max,
                           std::map<int, std::vector<F2Vector>>& kb_out) {
    GradedModule out(Algebra::A1);
    std::map<int, std::vector<F2Vector>> kb;
    for (const auto& [d, mat] : diff) {
        auto vecs = mat.kernel_basis();
        for (std::size_t i = 0; i < vecs.size(); ++i)
            out.add_basis_element("s" + std::to_string(s) + "k" + std::to_string(d) +
                                      "_" + std::to_string(i),
                                  d);
        kb[d] = std::move(vecs);
    }
    for (int g : {1, 2})
        for (const auto& [d, vecs] : kb) {
            if (d + g > t_max || vecs.empty()) continue;
            const auto& target = kb.count(d + g) ? kb.at(d + g) : std::vector<F2Vector>{};
            F2Span span(free.dim(d + g));
            for (const auto& v : target) span.insert(v);
            F2Matrix action = free.action(g, d);
            F2Matrix mat(target.size(), vecs.size());
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                F2Vector w = action.mul(vecs[i]);
                auto coords = span.coordinates(w);
                if (!coords) throw std::logic_error("kernel not closed under the action");
                for (std::size_t r = 0; r < coords->size(); ++r)
                    if (coords->get(r)) mat.set(r, i, true);
            }
            out.set_action(g, d, std::move(mat));
        }
    kb_out = std::move(kb);
    return out;
}

}  // namespace

std::vector<ResolutionStage> minimal_resolution(const GradedModule& m, int s_max,
                                                int t_max) {
    if (m.algebra() != Algebra::A1)
        throw std::invalid_argument("resolutions are computed over A(1) only");
    std::vector<ResolutionStage> stages;
    GradedModule current = m;
    // inclusion of the current kernel into the previous free module; empty at
    // stage 0, where the covering map already lands in m's own coordinates
    std::map<int, std::vector<F2Vector>> inclusion;
    for (int s = 0; s <= s_max; ++s) {
        ResolutionStage stage;
        stage.s = s;
        MinimalGenerators gens = minimal_generators(current, t_max);
        stage.generator_degrees = gens.degrees;
        stage.free = gradmod::free_module(Algebra::A1, gens.degrees);
        auto raw = covering_map(current, stage.free, gens, t_max);
        if (s == 0) {
            stage.differential = raw;
        } else {
            // rewrite kernel-basis coordinates as previous-stage coordinates
            for (const auto& [d, mat] : raw) {
                static const std::vector<F2Vector> none;
                auto it = inclusion.find(d);
                const auto& vecs = it == inclusion.end() ? none : it->second;
                std::size_t rows = stages.back().free.dim(d);
                F2Matrix incl(rows, vecs.size());
                for (std::size_t c = 0; c < vecs.size(); ++c)
                    for (std::size_t r = 0; r < rows; ++r)
                        if (vecs[c].get(r)) incl.set(r, c, true);
                stage.differential[d] = incl.mul(mat);
            }
        }
        current = kernel_module(stage.free, raw, s, t_max, inclusion);
        stages.push_back(std::move(stage));
    }
    return stages;
}

std::size_t ExtChart::dim(int s, int t) const {
    auto it = dims.find({s, t});
    return it == dims.end() ? 0 : it->second;
}

ExtChart ext_chart(const GradedModule& m, int s_max, int t_max) {
    ExtChart chart;
    chart.s_max = s_max;
    chart.t_min = m.empty() ? 0 : m.lo();
    chart.t_max = t_max - 6;
    auto stages = minimal_resolution(m, s_max, t_max);
    for (const auto& stage : stages)
        for (int t : stage.generator_degrees)
            if (t <= chart.t_max) ++chart.dims[{stage.s, t}];
    return chart;
}

std::vector<std::size_t> e2_diagonal(const GradedModule& m, int s_max) {
    ExtChart chart = ext_chart(m, s_max, s_max + 6);
    std::vector<std::size_t> out;
    for (int s = 0; s <= s_max; ++s) out.push_back(chart.dim(s, s));
    return out;
}

std::string render_chart(const ExtChart& chart, const std::string& format) {
    if (format == "tsv") {
        std::ostringstream out;
        for (const auto& [st, dim] : chart.dims)
            if (dim > 0) out << st.first << '\t' << st.second << '\t' << dim << '\n';
        return out.str();
    }
    if (format == "ascii") {
        int x_lo = 0, x_hi = -1, s_hi = -1;
        std::size_t widest = 1;
        for (const auto& [st, dim] : chart.dims) {
            if (dim == 0) continue;
            int x = st.second - st.first;
            if (s_hi < 0) { x_lo = x_hi = x; }
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            s_hi = std::max(s_hi, st.first);
            widest = std::max(widest, dim);
        }
        std::size_t cell = widest + 1;
        std::ostringstream out;
        out << "s\\t-s";
        for (int x = x_lo; x <= x_hi; ++x) {
            std::string label = std::to_string(x);
            out << ' ' << label << std::string(cell > label.size() ? cell - label.size() : 1, ' ');
        }
        out << '\n';
        for (int s = s_hi; s >= 0; --s) {
            std::string label = std::to_string(s);
            out << label << std::string(label.size() < 5 ? 5 - label.size() : 1, ' ');
            for (int x = x_lo; x <= x_hi; ++x) {
                std::size_t dim = chart.dim(s, s + x);
                out << ' ' << std::string(dim, '*') << std::string(cell - dim, ' ');
            }
            out << '\n';
        }
        return out.str();
    }
    if (format == "svg") {
        const int unit = 20, radius = 4, margin = 30;
        int x_lo = chart.t_min - chart.s_max, x_hi = chart.t_max;
        int width = 2 * margin + (x_hi - x_lo) * unit;
        int height = 2 * margin + chart.s_max * unit;
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
            << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
            << "\">\n";
        for (const auto& [st, dim] : chart.dims) {
            int x = st.second - st.first;
            int cx = margin + (x - x_lo) * unit;
            int cy = margin + (chart.s_max - st.first) * unit;
            // several classes in one spot spread horizontally
            for (std::size_t i = 0; i < dim; ++i)
                out << "  <circle cx=\"" << cx + int(i) * (2 * radius + 2) << "\" cy=\""
                    << cy << "\" r=\"" << radius << "\"/>\n";
        }
        out << "</svg>\n";
        return out.str();
    }
    throw std::invalid_argument("unknown chart format: " + format);
}

}  // namespace sq2::ext
