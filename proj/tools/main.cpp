#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sq2/capi.h"

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

int to_exit(int status) {
    switch (status) {
        case SQ2_OK: return 0;
        case SQ2_VERIFY_FAILED: return kExitVerify;
        case SQ2_PARSE_ERROR: return kExitParse;
        default: return kExitUsage;
    }
}

// Runs a C API call that fills `text`, prints the result (ownership taken)
// and maps the status to an exit code.
template <typename Fn>
int finish(Fn&& call) {
    char* text = nullptr;
    int status = call(&text);
    if (text) {
        std::cout << text;
        if (*text && text[std::strlen(text) - 1] != '\n') std::cout << '\n';
        sq2_string_free(text);
    }
    if (status != SQ2_OK && !text) std::cerr << "error: " << sq2_last_error() << '\n';
    return to_exit(status);
}

int fail(int status) {
    std::cerr << "error: " << sq2_last_error() << '\n';
    return to_exit(status);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << '\n';
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

struct ModuleHandle {
    sq2_module* m = nullptr;
    ~ModuleHandle() { sq2_module_free(m); }
};

struct AlgebraHandle {
    sq2_algebra* p = nullptr;
    ~AlgebraHandle() { sq2_algebra_free(p); }
};

int load_module(const std::string& path, ModuleHandle& h) {
    std::string text;
    if (!read_file(path, text)) return kExitParse;
    if (int rc = sq2_module_parse(text.c_str(), &h.m)) {
        std::cerr << "error: " << path << ": " << sq2_last_error() << '\n';
        return to_exit(rc);
    }
    return 0;
}

int load_algebra(const std::string& path, AlgebraHandle& h) {
    std::string text;
    if (!read_file(path, text)) return kExitParse;
    if (int rc = sq2_algebra_parse(text.c_str(), &h.p)) {
        std::cerr << "error: " << path << ": " << sq2_last_error() << '\n';
        return to_exit(rc);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in the mod-2 Steenrod algebra"};
    app.require_subcommand(1);

    std::string expr;
    auto* adem = app.add_subcommand("adem", "Rewrite an expression in admissible form");
    adem->add_option("expr", expr, "Element expression, e.g. \"Sq1 Sq2\"")->required();

    int k = 0;
    auto* antipode = app.add_subcommand("antipode", "Print the antipode of Sq^k");
    antipode->add_option("k", k, "Degree of the square")->required();

    auto* module = app.add_subcommand("module", "Graded module operations");
    module->require_subcommand(1);
    std::string module_file;
    auto* mod_check = module->add_subcommand("check", "Verify the action tables");
    mod_check->add_option("file", module_file, "Module JSON file")->required();
    std::string tensor_a, tensor_b;
    bool split = false;
    auto* mod_tensor = module->add_subcommand("tensor", "Tensor product of two modules");
    mod_tensor->add_option("a", tensor_a, "Left module JSON file")->required();
    mod_tensor->add_option("b", tensor_b, "Right module JSON file")->required();
    mod_tensor->add_flag("--split", split, "Split off free summands of the product");
    auto* mod_dual = module->add_subcommand("dual", "Dual module");
    mod_dual->add_option("file", module_file, "Module JSON file")->required();

    auto* spda = app.add_subcommand("spda", "Presented duality algebra operations");
    spda->require_subcommand(1);
    std::string algebra_file;
    auto* spda_verify = spda->add_subcommand("verify", "Run the duality checks");
    spda_verify->add_option("file", algebra_file, "Algebra JSON file")->required();
    auto* spda_classes = spda->add_subcommand("classes", "Print the characteristic classes");
    spda_classes->add_option("file", algebra_file, "Algebra JSON file")->required();

    std::string ext_file, format = "ascii";
    int smax = 10, tmax = -1;
    auto* ext = app.add_subcommand("ext", "Resolution chart of an A(1)-module");
    ext->add_option("file", ext_file, "Module JSON file")->required();
    ext->add_option("--smax", smax, "Highest filtration (default 10)");
    ext->add_option("--tmax", tmax, "Internal degree bound (default smax + 10)");
    ext->add_option("--format", format, "ascii, tsv or svg")
        ->check(CLI::IsMember({"ascii", "tsv", "svg"}));

    bool as_json = false;
    std::string only;
    auto* suite = app.add_subcommand("paper-suite", "Run the aggregated verification suite");
    suite->add_flag("--json", as_json, "Machine-readable output");
    suite->add_option("--only", only, "Comma-separated subset of check names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*adem) return finish([&](char** out) { return sq2_adem(expr.c_str(), out); });
    if (*antipode) return finish([&](char** out) { return sq2_antipode(k, out); });
    if (*mod_check) {
        ModuleHandle h;
        if (int rc = load_module(module_file, h)) return rc;
        return finish([&](char** out) { return sq2_module_check(h.m, out); });
    }
    if (*mod_tensor) {
        ModuleHandle a, b, prod;
        if (int rc = load_module(tensor_a, a)) return rc;
        if (int rc = load_module(tensor_b, b)) return rc;
        if (int rc = sq2_module_tensor(a.m, b.m, &prod.m)) return fail(rc);
        if (!split)
            return finish([&](char** out) { return sq2_module_to_json(prod.m, out); });
        char* shifts = nullptr;
        ModuleHandle rem;
        if (int rc = sq2_module_split(prod.m, &shifts, &rem.m)) return fail(rc);
        std::cout << "free shifts: " << (std::strlen(shifts) ? shifts : "none") << '\n';
        sq2_string_free(shifts);
        std::cout << "remainder:\n";
        return finish([&](char** out) { return sq2_module_to_json(rem.m, out); });
    }
    if (*mod_dual) {
        ModuleHandle h, dual;
        if (int rc = load_module(module_file, h)) return rc;
        if (int rc = sq2_module_dual(h.m, &dual.m)) return fail(rc);
        return finish([&](char** out) { return sq2_module_to_json(dual.m, out); });
    }
    if (*spda_verify) {
        AlgebraHandle h;
        if (int rc = load_algebra(algebra_file, h)) return rc;
        return finish([&](char** out) { return sq2_algebra_verify(h.p, out); });
    }
    if (*spda_classes) {
        AlgebraHandle h;
        if (int rc = load_algebra(algebra_file, h)) return rc;
        return finish([&](char** out) { return sq2_algebra_classes(h.p, out); });
    }
    if (*ext) {
        ModuleHandle h;
        if (int rc = load_module(ext_file, h)) return rc;
        if (tmax < 0) tmax = smax + 10;
        return finish([&](char** out) {
            return sq2_ext_chart(h.m, smax, tmax, format.c_str(), out);
        });
    }
    if (*suite)
        return finish([&](char** out) {
            return sq2_paper_suite(only.empty() ? nullptr : only.c_str(), as_json, out);
        });
    return kExitUsage;
}
