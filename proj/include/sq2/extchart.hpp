#pragma once

// Minimal free resolutions of finite A(1)-modules and the Ext^{s,t} charts
// read off their generator degrees.

#include <map>
#include <string>
#include <vector>

#include "sq2/f2.hpp"
#include "sq2/gradmod.hpp"

namespace sq2::ext {

// Stage s of a free resolution: a free A(1)-module on the listed generator
// degrees together with the differential into the previous stage (the module
// being resolved when s = 0). Differential matrices are recorded per internal
// degree d up to the resolution bound, with dim_prev(d) rows and
// free.dim(d) columns; the free module basis order is the one produced by
// gradmod::free_module.
struct ResolutionStage {
    int s = 0;
    std::vector<int> generator_degrees;
    gradmod::GradedModule free{gradmod::Algebra::A1};
    std::map<int, F2Matrix> differential;
};

// Resolves m by free modules, choosing generators lowest degree first and
// earliest kernel basis vector first. Exact through internal degree t_max;
// stages 0..s_max inclusive. Throws std::invalid_argument unless m is an
// A(1)-module.
std::vector<ResolutionStage> minimal_resolution(const gradmod::GradedModule& m,
                                                int s_max, int t_max);

struct ExtChart {
    int s_max = 0;
    int t_min = 0, t_max = 0;                       // reported degree window
    std::map<std::pair<int, int>, std::size_t> dims;

    std::size_t dim(int s, int t) const;
    bool operator==(const ExtChart&) const = default;
};

// dims(s,t) = number of stage-s generators of the minimal resolution in
// degree t. Internally resolves through t_max but reports only t <=
// t_max - 6, one top-degree of A(1) below the bound, so the chart carries no
// truncation artifacts.
ExtChart ext_chart(const gradmod::GradedModule& m, int s_max, int t_max);

// The s = t diagonal dims(0,0), dims(1,1), ..., dims(s_max, s_max).
std::vector<std::size_t> e2_diagonal(const gradmod::GradedModule& m, int s_max);

// format "ascii": grid with s vertical and t-s horizontal, one '*' per basis
// element; "tsv": one "s\tt\tdim" line per nonzero entry; "svg": one circle
// per basis element at (t-s, s). Throws std::invalid_argument on an unknown
// format.
std::string render_chart(const ExtChart& chart, const std::string& format);

}  // namespace sq2::ext
