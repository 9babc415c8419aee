#pragma once

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cardano.hpp"
#include "oracle.hpp"

namespace padic {

/// Front-door request/response pair shared by the CLI and the tests.
/// Exit codes: 0 = answered (verdicts live in the payload), 2 = usage error,
/// 3 = unsupported (p <= 3, p | q, infeasible oracle).
struct Request {
    std::string command; // solvable|count|roots|cardano|fp-count|quadratic|general-cubic|oracle-check
    std::uint64_t prime = 0;
    std::vector<Rational> coefficients;
    Domain domain = Domain::Field;
    long precision = 64;
    long print_digits = -1; ///< digit cap for text output, -1 = precision
    bool json = false;
    // oracle-check knobs
    long oracle_k = 8;
    long oracle_t = 4;
    std::string grid = "-2:2:-2:2";
};

struct Response {
    int exit_code = 0;
    std::string text;
    nlohmann::json payload;
};

/// Coefficient grammar: INT | INT/INT | p^INT*INT | p^INT*INT/INT, with `p`
/// bound to the request prime.
inline Rational parse_coefficient(const std::string& text, Prime p) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad coefficient '" + text + "': " + why);
    };
    std::string body = text;
    long pexp = 0;
    if (!body.empty() && body[0] == 'p') {
        if (body.size() < 4 || body[1] != '^') fail("expected p^INT*INT[/INT]");
        std::size_t star = body.find('*');
        if (star == std::string::npos) fail("expected '*' after p^INT");
        std::string exp_str = body.substr(2, star - 2);
        try {
            std::size_t used = 0;
            pexp = std::stol(exp_str, &used);
            if (used != exp_str.size()) fail("malformed exponent");
        } catch (const std::exception&) {
            fail("malformed exponent");
        }
        body = body.substr(star + 1);
    }
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) fail("empty integer");
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) fail("sign without digits");
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail("not an integer");
        return BigInt(s);
    };
    std::size_t slash = body.find('/');
    BigInt num, den = 1;
    if (slash == std::string::npos) {
        num = parse_int(body);
    } else {
        num = parse_int(body.substr(0, slash));
        den = parse_int(body.substr(slash + 1));
        if (den == 0) fail("denominator is zero");
    }
    return Rational(num, den) * p_power_rational(p, pexp);
}

inline std::optional<Domain> parse_domain(const std::string& s) {
    if (s == "units") return Domain::Units;
    if (s == "zp") return Domain::Integers;
    if (s == "qp") return Domain::Field;
    return std::nullopt;
}

namespace detail {

inline std::string rational_str(const Rational& x) {
    std::ostringstream os;
    os << numerator(x);
    if (denominator(x) != 1) os << "/" << denominator(x);
    return os.str();
}

inline nlohmann::json root_json(const PadicRoot& r) {
    nlohmann::json j;
    if (r.value.is_exact_zero()) {
        j["valuation"] = nullptr;
        j["digits"] = nlohmann::json::array();
        j["zero"] = true;
    } else {
        j["valuation"] = r.value.valuation();
        j["digits"] = r.value.digits();
    }
    j["multiplicity"] = r.multiplicity;
    return j;
}

inline std::string root_text(const PadicRoot& r, long digits) {
    std::ostringstream os;
    os << r.value.to_string(digits) << "  multiplicity " << r.multiplicity;
    return os.str();
}

inline nlohmann::json base_payload(const Request& req, const CubicEquation& eq) {
    nlohmann::json j;
    j["command"] = req.command;
    j["p"] = eq.prime.value();
    j["a"] = rational_str(eq.a);
    j["b"] = rational_str(eq.b);
    j["precision"] = req.precision;
    return j;
}

inline std::string render_text(const nlohmann::json& j, const RootSet* rs,
                               const Request& req) {
    std::ostringstream os;
    for (auto& [key, val] : j.items()) {
        if (key == "roots") continue;
        os << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
    }
    if (rs) {
        long digits = req.print_digits >= 0 ? req.print_digits : req.precision;
        int i = 0;
        for (const auto& r : rs->roots)
            os << "root[" << i++ << "]: " << root_text(r, digits) << "\n";
    }
    return os.str();
}

inline Response run_cubic_query(const Request& req) {
    Prime p(req.prime);
    CubicEquation eq(p, req.coefficients.at(0), req.coefficients.at(1));
    nlohmann::json j = base_payload(req, eq);
    j["domain"] = domain_name(req.domain);
    Response resp;
    if (req.command == "solvable") {
        auto rep = solvable(eq, req.domain);
        j["branch"] = rep.branch;
        j["solvable"] = rep.solvable;
        j["scaling_exponents"] = rep.scaling_exponents;
        if (rep.seed) j["seed"] = *rep.seed;
        auto rs = count(eq, req.domain);
        j["count_multiplicity"] = rs.count_with_multiplicity;
        j["count_distinct"] = rs.count_distinct;
        resp.text = render_text(j, nullptr, req);
    } else if (req.command == "count") {
        auto rs = count(eq, req.domain);
        j["branch"] = rs.branch;
        j["solvable"] = rs.count_with_multiplicity > 0;
        j["count_multiplicity"] = rs.count_with_multiplicity;
        j["count_distinct"] = rs.count_distinct;
        resp.text = render_text(j, nullptr, req);
    } else { // roots
        auto rs = roots(eq, req.domain, req.precision);
        j["branch"] = rs.branch;
        j["solvable"] = !rs.roots.empty();
        j["count_multiplicity"] = rs.count_with_multiplicity;
        j["count_distinct"] = rs.count_distinct;
        j["roots"] = nlohmann::json::array();
        for (const auto& r : rs.roots) j["roots"].push_back(root_json(r));
        resp.text = render_text(j, &rs, req);
    }
    resp.payload = std::move(j);
    return resp;
}

inline Response run_cardano(const Request& req) {
    Prime p(req.prime);
    CubicEquation eq(p, req.coefficients.at(0), req.coefficients.at(1));
    nlohmann::json j = base_payload(req, eq);
    auto rep = cardano_applicable(eq);
    j["applicable"] = rep.applicable;
    j["branch"] = rep.branch;
    Response resp;
    if (rep.applicable) {
        auto solved = cardano_solve(eq, req.precision);
        long digits = req.print_digits >= 0 ? req.print_digits : req.precision;
        j["root"] = root_json({*solved.root, 1});
        j["inner_sqrt"] = solved.inner_sqrt->to_string(digits);
        j["u"] = solved.pair->first.to_string(digits);
        j["v"] = solved.pair->second.to_string(digits);
        if (solved.delta0_used) j["delta0"] = *solved.delta0_used;
        resp.text = render_text(j, nullptr, req);
        resp.text += "root: " + solved.root->to_string(digits) + "\n";
    } else {
        resp.text = render_text(j, nullptr, req);
    }
    resp.payload = std::move(j);
    return resp;
}

inline Response run_fp_count(const Request& req) {
    Prime p(req.prime);
    const Rational& ar = req.coefficients.at(0);
    const Rational& br = req.coefficients.at(1);
    if (denominator(ar) != 1 || denominator(br) != 1)
        throw std::invalid_argument("fp-count expects integer residues");
    FpElement a0 = FpElement::from_signed(static_cast<std::int64_t>(numerator(ar) % p.value()),
                                          p);
    FpElement b0 = FpElement::from_signed(static_cast<std::int64_t>(numerator(br) % p.value()),
                                          p);
    if (a0.value == 0 || b0.value == 0)
        throw std::invalid_argument("fp-count: residues must be nonzero mod p");
    auto rep = fp_cubic_count(a0, b0);
    nlohmann::json j;
    j["command"] = req.command;
    j["p"] = p.value();
    j["a0"] = a0.value;
    j["b0"] = b0.value;
    j["count"] = rep.count;
    j["Dbar"] = rep.Dbar.value;
    j["u_pm2"] = rep.u_pm2.value;
    if (rep.count > 0) {
        auto cls = fp_cubic_classify(a0, b0);
        j["roots"] = nlohmann::json::array();
        for (const auto& r : cls.roots)
            j["roots"].push_back({{"value", r.value.value}, {"multiplicity", r.multiplicity}});
        j["simple_root_exists"] = cls.simple_root_exists;
    }
    Response resp;
    resp.text = render_text(j, nullptr, req);
    if (j.contains("roots"))
        for (const auto& r : j["roots"])
            resp.text += "root: " + r["value"].dump() + " multiplicity " +
                         r["multiplicity"].dump() + "\n";
    resp.payload = std::move(j);
    return resp;
}

inline Response run_quadratic(const Request& req) {
    Prime p(req.prime);
    auto roots = quadratic_solve_qp(req.coefficients.at(0), req.coefficients.at(1), p,
                                    req.precision);
    nlohmann::json j;
    j["command"] = req.command;
    j["p"] = p.value();
    j["q"] = rational_str(req.coefficients.at(0));
    j["r"] = rational_str(req.coefficients.at(1));
    j["precision"] = req.precision;
    j["solvable"] = !roots.empty();
    j["roots"] = nlohmann::json::array();
    RootSet rs;
    for (auto& [value, mult] : roots) rs.roots.push_back({value, mult});
    for (const auto& r : rs.roots) j["roots"].push_back(root_json(r));
    Response resp;
    resp.text = render_text(j, &rs, req);
    resp.payload = std::move(j);
    return resp;
}

inline Response run_general_cubic(const Request& req) {
    Prime p(req.prime);
    const Rational c3 = req.coefficients.at(0), c2 = req.coefficients.at(1);
    const Rational c1 = req.coefficients.at(2), c0 = req.coefficients.at(3);
    if (c3 == 0) throw std::invalid_argument("general-cubic: leading coefficient is zero");
    // divide by c3 and substitute x -> x - s with s = c2/(3 c3)
    Rational q2 = c2 / c3, q1 = c1 / c3, q0 = c0 / c3;
    Rational shift = q2 / 3;
    Rational A = q1 - q2 * q2 / 3;
    Rational B = -q0 + q1 * q2 / 3 - 2 * q2 * q2 * q2 / 27;
    CubicEquation eq(p, A, B);
    long N = req.precision;
    RootSet depressed;
    std::vector<PadicRoot> shifted;
    for (int attempt = 0; attempt < 4; ++attempt) {
        depressed = roots(eq, Domain::Field, N);
        shifted.clear();
        bool degraded = false;
        for (const auto& r : depressed.roots) {
            PadicNumber moved = shift == 0
                ? r.value
                : r.value - expand(shift, p, std::max(N + 8, r.value.precision() + 8));
            if (!moved.is_value() && !moved.is_exact_zero() && shift != 0) {
                // The depressed root coincides with the shift to full
                // precision. When 0 really solves the original (c0 = 0) the
                // cancellation is exact; otherwise widen and retry.
                if (c0 == 0) {
                    moved = PadicNumber::zero(p);
                } else {
                    degraded = true;
                    break;
                }
            }
            shifted.push_back({moved, r.multiplicity});
        }
        if (!degraded) break;
        N *= 2;
        shifted.clear();
    }
    if (shifted.empty() && !depressed.roots.empty())
        throw precision_error("general-cubic: could not separate roots from the shift");
    std::vector<PadicRoot> kept;
    for (const auto& r : shifted) {
        bool in = req.domain == Domain::Field;
        if (!in) {
            if (r.value.is_exact_zero()) in = req.domain == Domain::Integers;
            else if (r.value.is_value())
                in = req.domain == Domain::Integers ? r.value.valuation() >= 0
                                                    : r.value.valuation() == 0;
        }
        if (in) kept.push_back(r);
    }
    RootSet rs = detail::finalize_roots(std::move(kept), depressed.branch);
    nlohmann::json j;
    j["command"] = req.command;
    j["p"] = p.value();
    j["coefficients"] = {rational_str(c3), rational_str(c2), rational_str(c1),
                         rational_str(c0)};
    j["depressed_a"] = rational_str(A);
    j["depressed_b"] = rational_str(B);
    j["shift"] = rational_str(shift);
    j["domain"] = domain_name(req.domain);
    j["branch"] = rs.branch;
    j["precision"] = req.precision;
    j["solvable"] = !rs.roots.empty();
    j["count_multiplicity"] = rs.count_with_multiplicity;
    j["count_distinct"] = rs.count_distinct;
    j["roots"] = nlohmann::json::array();
    for (const auto& r : rs.roots) j["roots"].push_back(root_json(r));
    Response resp;
    resp.text = render_text(j, &rs, req);
    resp.payload = std::move(j);
    return resp;
}

inline Response run_oracle_check(const Request& req) {
    Prime p(req.prime);
    if (p.value() <= 3) throw unsupported_error("oracle-check requires p > 3");
    if (p.value() > 997) throw unsupported_error("oracle-check: p too large for grid sweeps");
    long amin, amax, bmin, bmax;
    {
        long vals[4] = {-2, 2, -2, 2};
        std::istringstream is(req.grid);
        std::string tok;
        for (int i = 0; i < 4 && std::getline(is, tok, ':'); ++i) vals[i] = std::stol(tok);
        amin = vals[0]; amax = vals[1]; bmin = vals[2]; bmax = vals[3];
    }
    long instances = 0;
    nlohmann::json mismatches = nlohmann::json::array();
    for (long alpha = amin; alpha <= amax; ++alpha)
        for (long beta = bmin; beta <= bmax; ++beta)
            for (std::uint32_t a0 = 1; a0 < p.value(); ++a0)
                for (std::uint32_t b0 = 1; b0 < p.value(); ++b0) {
                    CubicEquation eq(p, Rational(a0) * p_power_rational(p, alpha),
                                     Rational(b0) * p_power_rational(p, beta));
                    ++instances;
                    auto check = [&](Domain dom, const OracleVerdict& ov) {
                        auto cnt = count(eq, dom);
                        auto sv = solvable(eq, dom);
                        if (cnt.count_distinct != ov.count ||
                            cnt.count_with_multiplicity != ov.count_with_multiplicity ||
                            sv.solvable != (ov.count > 0)) {
                            mismatches.push_back({{"a", rational_str(eq.a)},
                                                  {"b", rational_str(eq.b)},
                                                  {"domain", domain_name(dom)},
                                                  {"count", cnt.count_with_multiplicity},
                                                  {"oracle", ov.count_with_multiplicity}});
                        }
                    };
                    check(Domain::Units, zp_oracle_auto(eq, req.oracle_k, true));
                    check(Domain::Integers, zp_oracle_auto(eq, req.oracle_k, false));
                    check(Domain::Field, qp_oracle_auto(eq, req.oracle_k, req.oracle_t));
                }
    nlohmann::json j;
    j["command"] = req.command;
    j["p"] = p.value();
    j["k"] = req.oracle_k;
    j["t"] = req.oracle_t;
    j["grid"] = req.grid;
    j["instances"] = instances;
    j["mismatches"] = mismatches;
    Response resp;
    resp.text = "instances: " + std::to_string(instances) +
                "\nmismatches: " + std::to_string(mismatches.size()) + "\n";
    resp.payload = std::move(j);
    return resp;
}

} // namespace detail

inline Response run(const Request& req) {
    Response resp;
    try {
        if (req.command == "solvable" || req.command == "count" || req.command == "roots")
            resp = detail::run_cubic_query(req);
        else if (req.command == "cardano")
            resp = detail::run_cardano(req);
        else if (req.command == "fp-count")
            resp = detail::run_fp_count(req);
        else if (req.command == "quadratic")
            resp = detail::run_quadratic(req);
        else if (req.command == "general-cubic")
            resp = detail::run_general_cubic(req);
        else if (req.command == "oracle-check")
            resp = detail::run_oracle_check(req);
        else
            throw std::invalid_argument("unknown command '" + req.command + "'");
    } catch (const unsupported_error& e) {
        resp.exit_code = 3;
        resp.text = std::string("unsupported: ") + e.what() + "\n";
        resp.payload = {{"error", e.what()}, {"kind", "unsupported"}};
    } catch (const precision_error& e) {
        resp.exit_code = 3;
        resp.text = std::string("unsupported: ") + e.what() + "\n";
        resp.payload = {{"error", e.what()}, {"kind", "unsupported"}};
    } catch (const std::invalid_argument& e) {
        resp.exit_code = 2;
        resp.text = std::string("usage error: ") + e.what() + "\n";
        resp.payload = {{"error", e.what()}, {"kind", "usage"}};
    }
    return resp;
}

} // namespace padic
