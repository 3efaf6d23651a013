/**
 * Command-line front end: subcommand dispatch, JSON in/out, run records.
 *
 * Exit codes: 0 success, 2 validation or usage error (JSON {"error", "detail"}
 * on stdout), 1 internal error.
 */

#ifndef FANOCONE_TOOLS_CLI_HPP
#define FANOCONE_TOOLS_CLI_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>
#include <openssl/evp.h>
#include <CLI11.hpp>
#include "fanocone/fanocone.hpp"

namespace fanocone::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

inline std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

/** Comma-separated coordinates; exact when every entry is an integer or p/q. */
inline ReebVector parse_vector(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(item);
    if (parts.empty())
        throw Error(ErrorCode::InvalidInput, "empty vector");
    bool exact = true;
    RationalVector q;
    for (const auto& p : parts)
    {
        try
        {
            q.push_back(parse_rational(p));
        }
        catch (const Error&)
        {
            exact = false;
            break;
        }
    }
    if (exact)
        return ReebVector(q);
    std::vector<double> d;
    for (const auto& p : parts)
    {
        std::size_t used = 0;
        double v = 0;
        try
        {
            v = std::stod(p, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used != p.size() || !std::isfinite(v))
            throw Error(ErrorCode::InvalidInput, "not a number: '" + p + "'");
        d.push_back(v);
    }
    return ReebVector(d);
}

inline json doubles(const std::vector<double>& v)
{
    return json(v);
}

struct Options
{
    std::string input;
    std::optional<double> tol;
    int max_iters = 200;
    bool exact = false;
    std::string csv;
    std::string record;
    std::string xi, xi0, eta;
    std::vector<std::string> segments;
    int samples = 21;
    std::optional<double> t;
    std::optional<double> truncation;
    int j_min = 3, j_max = 6;
    std::optional<std::int64_t> k;
};

namespace detail {

inline std::string read_input(const Options& o, std::istream& in)
{
    if (o.input.empty() || o.input == "-")
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::ifstream f(o.input);
    if (!f)
        throw Error(ErrorCode::InvalidInput, "cannot read input file '" + o.input + "'");
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Error(ErrorCode::InvalidInput, what);
}

inline void no_exact(const Options& o, const std::string& cmd)
{
    if (o.exact)
        throw Error(ErrorCode::InvalidInput, "--exact is not available for '" + cmd + "' (floating result)");
}

inline std::ofstream open_csv(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw Error(ErrorCode::InvalidInput, "cannot write CSV file '" + path + "'");
    f << std::setprecision(17);
    return f;
}

inline LogFanoCone load_singularity(const json& doc)
{
    return LogFanoCone::make(io::singularity_from_json(doc));
}

inline ReebVector require_vector(const std::string& text, const char* flag, std::size_t rank)
{
    require(!text.empty(), std::string(flag) + " is required");
    auto v = parse_vector(text);
    require(v.size() == rank, std::string(flag) + " must have " + std::to_string(rank) + " coordinates");
    return v;
}

inline json cmd_vol(const Options& o, const json& doc, bool normalized)
{
    auto x = load_singularity(doc);
    auto form = build_volume_form(x);
    auto xi = require_vector(o.xi, "--xi", x.rank());
    json out{{"label", x.data().label}};
    if (xi.exact())
    {
        const auto& q = xi.exact_coords();
        Rational v = vol(form, q);
        require_reeb(x.sigma(), q);
        Rational a = log_discrepancy_unchecked(x, q);
        if (o.exact)
        {
            out["xi"] = io::rational_json(q);
            out["vol"] = io::rational_json(v);
            if (normalized)
            {
                out["A"] = io::rational_json(a);
                out["hvol"] = io::rational_json(normalized_volume(x, form, q));
            }
            return out;
        }
    }
    no_exact(o, normalized ? "hvol" : "vol");
    auto d = xi.as_double();
    out["xi"] = doubles(d);
    out["vol"] = vol(form, d);
    if (normalized)
    {
        out["A"] = log_discrepancy(x, d);
        out["hvol"] = normalized_volume(x, form, d);
    }
    return out;
}

inline json minimization_json(const MinimizationResult& r)
{
    return json{{"minimizer", doubles(r.minimizer)},
                {"min_hvol", r.min_hvol},
                {"grad_norm", r.grad_norm},
                {"newton_iters", r.newton_iters},
                {"slice_value", to_string(r.slice_value)},
                {"certificate", to_string(r.certificate)},
                {"hessian_min_eigenvalue", r.hessian_min_eigenvalue},
                {"regularity", to_string(r.regularity)}};
}

inline MinimizeOptions minimize_options(const Options& o)
{
    MinimizeOptions mo;
    if (o.tol)
        mo.grad_tol = *o.tol;
    mo.max_iters = o.max_iters;
    return mo;
}

inline json cmd_minimize(const Options& o, const json& doc)
{
    no_exact(o, "minimize");
    auto x = load_singularity(doc);
    auto form = build_volume_form(x);
    auto res = minimize(x, form, minimize_options(o));
    json out = minimization_json(res);
    out["label"] = x.data().label;
    if (!o.segments.empty())
    {
        require(!o.csv.empty(), "--segment needs --csv");
        auto f = open_csv(o.csv);
        f << "segment,s,hvol\n";
        for (std::size_t i = 0; i < o.segments.size(); ++i)
        {
            const auto& seg = o.segments[i];
            auto colon = seg.find(':');
            require(colon != std::string::npos, "--segment expects A:B with comma-separated endpoints");
            auto a = parse_vector(seg.substr(0, colon)).as_double();
            auto b = parse_vector(seg.substr(colon + 1)).as_double();
            require(a.size() == x.rank() && b.size() == x.rank(), "segment endpoints must have the torus rank");
            for (const auto& [s, h] : scan_segment(x, form, a, b, o.samples))
                f << i << ',' << s << ',' << h << '\n';
        }
    }
    return out;
}

inline json cmd_ksemistable(const Options& o, const json& doc)
{
    no_exact(o, "ksemistable");
    auto x = load_singularity(doc);
    auto form = build_volume_form(x);
    auto xi0 = require_vector(o.xi0, "--xi0", x.rank()).as_double();
    auto v = is_ksemistable(x, form, xi0, o.tol.value_or(1e-6), minimize_options(o));
    json out{{"verdict", v.semistable ? "Yes" : "No"},
             {"distance", v.distance},
             {"hvol_xi0", normalized_volume(x, form, xi0)},
             {"minimization", minimization_json(v.minimization)}};
    if (!v.semistable)
    {
        out["witness"] = doubles(v.witness);
        std::vector<double> slice_xi0;
        const double a0 = log_discrepancy(x, xi0);
        for (double c : xi0)
            slice_xi0.push_back(c * static_cast<double>(x.rank()) / a0);
        out["witness_futaki"] = futaki(x, form, slice_xi0, v.witness).fut;
    }
    return out;
}

inline json cmd_futaki(const Options& o, const json& doc)
{
    auto x = load_singularity(doc);
    auto form = build_volume_form(x);
    auto xi0 = require_vector(o.xi0, "--xi0", x.rank());
    auto eta = require_vector(o.eta, "--eta", x.rank());
    if (o.exact)
    {
        require(xi0.exact() && eta.exact(), "--exact needs rational --xi0 and --eta");
        const auto& q0 = xi0.exact_coords();
        const auto& qe = eta.exact_coords();
        Rational fut = futaki_exact(x, form, q0, qe);
        auto norm = normalize_config(x, ProductTestConfig<Rational>{qe, q0});
        return json{{"fut", io::rational_json(fut)},
                    {"ding", io::rational_json(fut)},
                    {"t_xi_eta", io::rational_json(t_normalize(x, q0, qe))},
                    {"method", "AnalyticGradient"},
                    {"normalized", {{"xi0", io::rational_json(norm.xi0)}, {"eta", io::rational_json(norm.eta)}}}};
    }
    auto d0 = xi0.as_double();
    auto de = eta.as_double();
    auto rep = futaki(x, form, d0, de);
    auto norm = normalize_config(x, ProductTestConfig<double>{de, d0});
    return json{{"fut", rep.fut},
                {"fut_hvol", rep.fut_hvol},
                {"fut_fd", rep.fut_fd},
                {"ding", rep.ding},
                {"t_xi_eta", doubles(rep.t_xi_eta)},
                {"method", "AnalyticGradient"},
                {"normalized", {{"xi0", doubles(norm.xi0)}, {"eta", doubles(norm.eta)}}}};
}

inline json cmd_index_char(const Options& o, const json& doc)
{
    no_exact(o, "index-char");
    auto x = load_singularity(doc);
    auto form = build_volume_form(x);
    auto xi = require_vector(o.xi, "--xi", x.rank()).as_double();
    json out;
    if (o.t)
    {
        auto cv = o.truncation ? index_character(x, form, xi, *o.t, *o.truncation)
                               : index_character(x, form, xi, *o.t);
        out["F"] = {{"t", *o.t}, {"value", cv.value}, {"tail_bound", cv.tail_bound}, {"truncation", cv.truncation}};
    }
    LeadingCoefficientOptions lo;
    lo.j_min = o.j_min;
    lo.j_max = o.j_max;
    auto s = leading_coefficient(x, form, xi, lo);
    out["sample"] = {{"xi", doubles(s.xi)},
                     {"t_values", doubles(s.t_values)},
                     {"F_values", doubles(s.F_values)},
                     {"truncation_bound", s.truncation_bound},
                     {"a0_estimate", s.a0_estimate},
                     {"a0_error", s.a0_error},
                     {"vol", s.vol},
                     {"agrees", s.agrees}};
    if (!o.csv.empty())
    {
        auto f = open_csv(o.csv);
        f << "t,tn_F\n";
        for (std::size_t i = 0; i < s.t_values.size(); ++i)
            f << s.t_values[i] << ',' << std::pow(s.t_values[i], static_cast<double>(x.rank())) * s.F_values[i] << '\n';
    }
    return out;
}

inline json cmd_lct(const json& doc)
{
    auto a = io::ideal_from_json(doc);
    Rational m = multiplicity(a), l = lct(a), nm = normalized_multiplicity(a);
    Rational bound = smooth_bound(a.n());
    return json{{"mult", to_string(m)},
                {"lct", to_string(l)},
                {"normalized", to_string(nm)},
                {"bound_nn", to_string(bound)},
                {"satisfied", nm >= bound}};
}

inline json cmd_degenerate_toy(const Options& o, const json& doc)
{
    auto p = io::toy_point_from_json(doc);
    std::vector<git::Direction> dirs{git::kLambda, git::kLambdaPrime};
    if (doc.contains("directions"))
        dirs = io::directions_from_json(doc["directions"]);
    std::int64_t k = o.k.value_or(doc.contains("k") ? doc["k"].get<std::int64_t>() : 1);
    json chain = json::array();
    for (const auto& q : git::limit_chain(p, dirs))
        chain.push_back(io::toy_point_to_json(q));
    auto check = git::composed_equals_two_step(p, k);
    auto add = git::mu_additivity(p, k);
    return json{{"chain", chain},
                {"k", k},
                {"min_k", check.min_k},
                {"equal_at_k", check.equal},
                {"two_step", io::toy_point_to_json(check.two_step)},
                {"composed", io::toy_point_to_json(check.composed)},
                {"additivity", {{"mu_composed", add.mu_composed},
                                {"mu_lambda", add.mu_lambda},
                                {"mu_lambda_prime", add.mu_lambda_prime},
                                {"residual", add.residual},
                                {"residual_on_limit", add.residual_on_limit}}}};
}

inline int emit_error(std::ostream& out, const std::string& code, const std::string& detail, int exit_code)
{
    out << json{{"error", code}, {"detail", detail}}.dump() << '\n';
    return exit_code;
}

}   // namespace detail

/**
 * Run one command. `args` excludes the program name. The result JSON is
 * written to `out`; with --record PATH the full run record (including
 * wall-clock timing) goes to PATH instead, so stdout stays byte-identical
 * across runs.
 */
inline int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out)
{
    CLI::App app{"Normalized volumes, Futaki invariants and K-semistability of toric log Fano cones", "fanocone"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "input JSON file (default: stdin)");
        sub->add_option("--tol", o.tol, "tolerance");
        sub->add_option("--max-iters", o.max_iters, "Newton iteration cap");
        sub->add_flag("--exact", o.exact, "exact rational output only");
        sub->add_option("--csv", o.csv, "write scan/plot data to this CSV file");
        sub->add_option("--record", o.record, "write the full run record JSON to this file");
    };
    auto* c_vol = app.add_subcommand("vol", "volume of a Reeb vector");
    auto* c_hvol = app.add_subcommand("hvol", "normalized volume of a Reeb vector");
    auto* c_min = app.add_subcommand("minimize", "minimize the normalized volume over the Reeb cone");
    auto* c_ks = app.add_subcommand("ksemistable", "K-semistability verdict for a Reeb vector");
    auto* c_fut = app.add_subcommand("futaki", "Futaki/Ding invariants of a product test configuration");
    auto* c_ic = app.add_subcommand("index-char", "index character and its leading coefficient");
    auto* c_lct = app.add_subcommand("lct", "multiplicity and lct of a monomial ideal");
    auto* c_toy = app.add_subcommand("degenerate-toy", "1-PS limits of a weighted point");
    for (auto* s : {c_vol, c_hvol, c_min, c_ks, c_fut, c_ic, c_lct, c_toy})
        add_common(s);
    for (auto* s : {c_vol, c_hvol, c_ic})
        s->add_option("--xi", o.xi, "Reeb vector, comma separated (p/q or decimals)");
    c_ks->add_option("--xi0", o.xi0, "Reeb vector");
    c_fut->add_option("--xi0", o.xi0, "Reeb vector");
    c_fut->add_option("--eta", o.eta, "test configuration direction");
    c_min->add_option("--segment", o.segments, "A:B segment for a CSV scan of hvol (repeatable)");
    c_min->add_option("--samples", o.samples, "samples per segment");
    c_ic->add_option("--t", o.t, "evaluate F at this t");
    c_ic->add_option("--truncation", o.truncation, "truncation bound T for --t");
    c_ic->add_option("--j-min", o.j_min, "finest grid exponent start: t = 2^-j");
    c_ic->add_option("--j-max", o.j_max, "grid exponent end");
    c_toy->add_option("--k", o.k, "exponent of tau = (t^k, t)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try
    {
        app.parse(rev);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        return detail::emit_error(out, "UsageError", e.what(), 2);
    }

    const auto start = std::chrono::steady_clock::now();
    const std::string cmd = app.get_subcommands().front()->get_name();
    try
    {
        const std::string text = detail::read_input(o, in);
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error& e)
        {
            throw Error(ErrorCode::InvalidInput, std::string("input is not JSON: ") + e.what());
        }
        json result;
        if (cmd == "vol")
            result = detail::cmd_vol(o, doc, false);
        else if (cmd == "hvol")
            result = detail::cmd_vol(o, doc, true);
        else if (cmd == "minimize")
            result = detail::cmd_minimize(o, doc);
        else if (cmd == "ksemistable")
            result = detail::cmd_ksemistable(o, doc);
        else if (cmd == "futaki")
            result = detail::cmd_futaki(o, doc);
        else if (cmd == "index-char")
            result = detail::cmd_index_char(o, doc);
        else if (cmd == "lct")
            result = detail::cmd_lct(doc);
        else
            result = detail::cmd_degenerate_toy(o, doc);

        const std::string payload = result.dump(2);
        out << payload << '\n';
        if (!o.record.empty())
        {
            std::string key = cmd;
            for (const auto& a : args)
                if (a != "--record" && a != o.record)
                    key += '\0' + a;
            key += '\0' + text;
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start).count();
            json rec{{"command", cmd},
                     {"input_hash", sha256_hex(key)},
                     {"output", result},
                     {"timing_ms", ms},
                     {"version", kVersion}};
            std::ofstream f(o.record);
            if (!f)
                throw Error(ErrorCode::InvalidInput, "cannot write run record '" + o.record + "'");
            f << rec.dump(2) << '\n';
        }
        return 0;
    }
    catch (const Error& e)
    {
        return detail::emit_error(out, to_string(e.code()), e.what(), e.code() == ErrorCode::Internal ? 1 : 2);
    }
    catch (const json::exception& e)
    {
        return detail::emit_error(out, "InvalidInput", e.what(), 2);
    }
    catch (const std::exception& e)
    {
        return detail::emit_error(out, "Internal", e.what(), 1);
    }
}

}   // namespace fanocone::cli

#endif
