#include "sq2/capi.h"

#include <cstring>
#include <sstream>
#include <string>

#include "sq2/extchart.hpp"
#include "sq2/gradmod.hpp"
#include "sq2/models.hpp"
#include "sq2/spda.hpp"
#include "sq2/steenrod.hpp"

using namespace sq2;

struct sq2_module {
    gradmod::GradedModule m;
};

struct sq2_algebra {
    spda::PresentedAlgebra p;
};

namespace {

thread_local std::string g_error;

char* dup(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_error.clear();
        return fn();
    } catch (const steenrod::ParseError& e) {
        g_error = std::string(e.what()) + " (at position " + std::to_string(e.pos) + ")";
        return SQ2_PARSE_ERROR;
    } catch (const gradmod::ParseError& e) {
        g_error = e.what();
        return SQ2_PARSE_ERROR;
    } catch (const spda::ParseError& e) {
        g_error = e.what();
        return SQ2_PARSE_ERROR;
    } catch (const std::exception& e) {
        g_error = e.what();
        return SQ2_BAD_ARGUMENT;
    }
}

int require(bool cond, const char* message) {
    if (!cond) {
        g_error = message;
        return SQ2_BAD_ARGUMENT;
    }
    return SQ2_OK;
}

}  // namespace

extern "C" {

const char* sq2_last_error(void) { return g_error.c_str(); }

void sq2_string_free(char* s) { delete[] s; }

int sq2_adem(const char* expr, char** out) {
    if (int rc = require(expr && out, "null argument")) return rc;
    return guarded([&] {
        *out = dup(steenrod::to_string(steenrod::parse(expr)));
        return SQ2_OK;
    });
}

int sq2_antipode(int k, char** out) {
    if (int rc = require(out, "null argument")) return rc;
    if (int rc = require(k >= 0, "k must be nonnegative")) return rc;
    return guarded([&] {
        *out = dup(steenrod::to_string(steenrod::antipode_sq(k)));
        return SQ2_OK;
    });
}

int sq2_module_parse(const char* json, sq2_module** out) {
    if (int rc = require(json && out, "null argument")) return rc;
    return guarded([&] {
        *out = new sq2_module{gradmod::from_json(json)};
        return SQ2_OK;
    });
}

void sq2_module_free(sq2_module* m) { delete m; }

int sq2_module_to_json(const sq2_module* m, char** out) {
    if (int rc = require(m && out, "null argument")) return rc;
    return guarded([&] {
        *out = dup(gradmod::to_json(m->m));
        return SQ2_OK;
    });
}

int sq2_module_check(const sq2_module* m, char** report) {
    if (int rc = require(m && report, "null argument")) return rc;
    return guarded([&] {
        auto r = gradmod::check_axioms(m->m);
        *report = dup(r.to_string());
        return r.ok() ? SQ2_OK : SQ2_VERIFY_FAILED;
    });
}

int sq2_module_tensor(const sq2_module* a, const sq2_module* b, sq2_module** out) {
    if (int rc = require(a && b && out, "null argument")) return rc;
    return guarded([&] {
        *out = new sq2_module{gradmod::tensor(a->m, b->m)};
        return SQ2_OK;
    });
}

int sq2_module_dual(const sq2_module* m, sq2_module** out) {
    if (int rc = require(m && out, "null argument")) return rc;
    return guarded([&] {
        *out = new sq2_module{gradmod::dualize(m->m)};
        return SQ2_OK;
    });
}

int sq2_module_split(const sq2_module* m, char** shifts, sq2_module** remainder) {
    if (int rc = require(m && shifts && remainder, "null argument")) return rc;
    return guarded([&] {
        auto split = gradmod::split_free_summands(m->m);
        std::ostringstream list;
        for (std::size_t i = 0; i < split.shifts.size(); ++i)
            list << (i ? "," : "") << split.shifts[i];
        *shifts = dup(list.str());
        *remainder = new sq2_module{std::move(split.remainder)};
        return SQ2_OK;
    });
}

int sq2_ext_chart(const sq2_module* m, int s_max, int t_max, const char* format,
                  char** out) {
    if (int rc = require(m && format && out, "null argument")) return rc;
    if (int rc = require(s_max >= 0, "s_max must be nonnegative")) return rc;
    return guarded([&] {
        auto chart = ext::ext_chart(m->m, s_max, t_max);
        *out = dup(ext::render_chart(chart, format));
        return SQ2_OK;
    });
}

int sq2_algebra_parse(const char* json, sq2_algebra** out) {
    if (int rc = require(json && out, "null argument")) return rc;
    return guarded([&] {
        *out = new sq2_algebra{spda::algebra_from_json(json)};
        return SQ2_OK;
    });
}

void sq2_algebra_free(sq2_algebra* p) { delete p; }

int sq2_algebra_verify(const sq2_algebra* p, char** report) {
    if (int rc = require(p && report, "null argument")) return rc;
    return guarded([&] {
        int d = p->p.dimension();
        spda::VerifyReport all = p->p.report();
        auto pd = spda::verify_pd(p->p, d);
        all.failures.insert(all.failures.end(), pd.failures.begin(), pd.failures.end());
        auto sharp = spda::verify_sharp_pd(p->p, d);
        all.failures.insert(all.failures.end(), sharp.failures.begin(),
                            sharp.failures.end());
        *report = dup(all.ok() ? "ok\n" : all.to_string());
        return all.ok() ? SQ2_OK : SQ2_VERIFY_FAILED;
    });
}

int sq2_algebra_classes(const sq2_algebra* p, char** table) {
    if (int rc = require(p && table, "null argument")) return rc;
    return guarded([&] {
        int d = p->p.dimension();
        auto classes = spda::characteristic_classes(p->p, d);
        std::ostringstream out;
        for (int k = 0; k <= d; ++k)
            out << "v" << k << " = " << p->p.to_string(classes.wu[k]) << "\n";
        for (int k = 0; k <= d; ++k)
            out << "w" << k << " = " << p->p.to_string(classes.sw[k]) << "\n";
        for (int k = 0; k <= d; ++k)
            out << "wbar" << k << " = " << p->p.to_string(classes.dual_sw[k]) << "\n";
        *table = dup(out.str());
        return SQ2_OK;
    });
}

int sq2_paper_suite(const char* names, int as_json, char** out) {
    if (int rc = require(out, "null argument")) return rc;
    return guarded([&] {
        std::optional<std::vector<std::string>> filter;
        if (names) {
            filter.emplace();
            std::istringstream in(names);
            std::string item;
            while (std::getline(in, item, ','))
                if (!item.empty()) filter->push_back(item);
        }
        auto report = models::paper_suite(filter);
        *out = dup(as_json ? report.to_json() : report.to_string());
        return report.ok() ? SQ2_OK : SQ2_VERIFY_FAILED;
    });
}

}  // extern "C"
