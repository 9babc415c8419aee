#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <padic/driver.hpp>

namespace {

long default_precision() {
    if (const char* env = std::getenv("PADIC_DEFAULT_PRECISION")) {
        try {
            long n = std::stol(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return 64;
}

struct RawArgs {
    std::uint64_t prime = 0;
    std::string a, b;
    std::string c3, c2, c1, c0;
    std::string domain = "qp";
    long precision = default_precision();
    long digits = -1;
    bool json = false;
    long k = 8, t = 4;
    std::string grid = "-2:2:-2:2";
};

int emit(const padic::Response& resp, bool json) {
    if (json)
        std::cout << resp.payload.dump(2) << std::endl;
    else
        std::cout << resp.text;
    return resp.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver for depressed cubic equations x^3 + ax = b over the p-adic numbers"};
    app.require_subcommand(1);

    RawArgs raw;
    auto add_common = [&](CLI::App* sub, bool with_domain, bool with_coeffs) {
        sub->add_option("--prime", raw.prime, "prime p")->required();
        if (with_coeffs) {
            sub->add_option("-a", raw.a, "coefficient a (INT, INT/INT, or p^INT*INT[/INT])")
                ->required();
            sub->add_option("-b", raw.b, "coefficient b")->required();
        }
        if (with_domain)
            sub->add_option("--domain", raw.domain, "units | zp | qp")->default_str("qp");
        sub->add_option("--precision", raw.precision, "digits of p-adic precision");
        sub->add_option("--digits", raw.digits, "printed digit cap (text mode)");
        sub->add_flag("--json", raw.json, "machine-readable output");
    };

    add_common(app.add_subcommand("solvable", "decide solvability in a domain"), true, true);
    add_common(app.add_subcommand("count", "count solutions in a domain"), true, true);
    add_common(app.add_subcommand("roots", "compute all roots in a domain"), true, true);
    add_common(app.add_subcommand("cardano", "Cardano applicability and formula"), false, true);
    add_common(app.add_subcommand("fp-count", "root count of x^3+a x = b over F_p"), false, true);
    add_common(app.add_subcommand("quadratic", "solve x^2 + a x + b = 0 over Q_p (p >= 2)"),
               false, true);
    auto* gen = app.add_subcommand("general-cubic",
                                   "depress c3 x^3 + c2 x^2 + c1 x + c0 = 0 and solve");
    add_common(gen, true, false);
    gen->add_option("--c3", raw.c3)->required();
    gen->add_option("--c2", raw.c2)->required();
    gen->add_option("--c1", raw.c1)->required();
    gen->add_option("--c0", raw.c0)->required();
    auto* oc = app.add_subcommand("oracle-check", "differential sweep against brute-force oracles");
    add_common(oc, false, false);
    oc->add_option("--k", raw.k, "oracle modulus exponent");
    oc->add_option("--t", raw.t, "oracle valuation window");
    oc->add_option("--grid", raw.grid, "AMIN:AMAX:BMIN:BMAX valuation grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    padic::Request req;
    req.command = app.get_subcommands().front()->get_name();
    req.prime = raw.prime;
    req.precision = raw.precision;
    req.print_digits = raw.digits;
    req.json = raw.json;
    req.oracle_k = raw.k;
    req.oracle_t = raw.t;
    req.grid = raw.grid;

    try {
        padic::Prime p(raw.prime);
        if (auto dom = padic::parse_domain(raw.domain)) {
            req.domain = *dom;
        } else {
            std::cerr << "usage error: unknown domain '" << raw.domain << "'\n";
            return 2;
        }
        if (req.command == "general-cubic") {
            for (const auto& s : {raw.c3, raw.c2, raw.c1, raw.c0})
                req.coefficients.push_back(padic::parse_coefficient(s, p));
        } else if (!raw.a.empty() || !raw.b.empty()) {
            req.coefficients.push_back(padic::parse_coefficient(raw.a, p));
            req.coefficients.push_back(padic::parse_coefficient(raw.b, p));
        }
        if (req.precision < 1) {
            std::cerr << "usage error: precision must be >= 1\n";
            return 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    return emit(padic::run(req), raw.json);
}
