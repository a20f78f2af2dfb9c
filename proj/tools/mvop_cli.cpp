// mvop: command-line front end for the exact verification suites.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvop/mvop.hpp"

namespace {

using mvop::json;

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> alpha, beta, v;
    std::size_t n_max = 12;
    std::optional<int> d_max;
    std::string weight_file, moments_file, out, format = "json";
};

// Errors that mean the run was misconfigured rather than a check failing.
bool is_config_error(mvop::ErrorKind k)
{
    using mvop::ErrorKind;
    switch (k) {
    case ErrorKind::ParameterConstraintViolated:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedWeight:
    case ErrorKind::MixedFamilies:
    case ErrorKind::SingularHankel:
    case ErrorKind::DimensionMismatch:
        return true;
    default:
        return false;
    }
}

std::vector<mvop::Sample> samples(const RunConfig& cfg)
{
    if (cfg.alpha.empty() && cfg.beta.empty() && cfg.v.empty())
        return mvop::default_samples();
    if (cfg.alpha.size() != cfg.beta.size() || cfg.alpha.size() != cfg.v.size())
        mvop::fail(mvop::ErrorKind::InvalidArgument, "--alpha, --beta and --v must be given the same number of times");
    std::vector<mvop::Sample> out;
    for (std::size_t i = 0; i < cfg.alpha.size(); ++i)
        out.push_back({mvop::Rational::parse(cfg.alpha[i]), mvop::Rational::parse(cfg.beta[i]),
                       mvop::Rational::parse(cfg.v[i])});
    return out;
}

mvop::WeightSpec weight_for(const RunConfig& cfg)
{
    if (!cfg.weight_file.empty())
        return mvop::weight_from_json(mvop::read_json_file(cfg.weight_file));
    if (!cfg.moments_file.empty())
        return mvop::MomentWeight{mvop::moments_from_json(mvop::read_json_file(cfg.moments_file))};
    return {};
}

json config_echo(const RunConfig& cfg)
{
    json c = {{"subcommand", cfg.subcommand}, {"nmax", cfg.n_max}, {"format", cfg.format}};
    if (cfg.d_max)
        c["dmax"] = *cfg.d_max;
    if (!cfg.alpha.empty())
        c["alpha"] = cfg.alpha, c["beta"] = cfg.beta, c["v"] = cfg.v;
    if (!cfg.weight_file.empty())
        c["weight_file"] = cfg.weight_file;
    if (!cfg.moments_file.empty())
        c["moments_file"] = cfg.moments_file;
    return c;
}

void emit(const RunConfig& cfg, const std::string& body)
{
    if (cfg.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        mvop::fail(mvop::ErrorKind::InvalidArgument, "cannot write " + cfg.out);
    f << body;
}

std::string render(const RunConfig& cfg, const mvop::Report& rep, const json& extra = {})
{
    if (cfg.format == "text")
        return mvop::render_text(rep);
    json j = mvop::to_json(rep);
    j["tool"] = "mvop";
    j["version"] = mvop::version;
    j["config"] = config_echo(cfg);
    for (auto it = extra.begin(); extra.is_object() && it != extra.end(); ++it)
        j[it.key()] = it.value();
    return j.dump(2) + "\n";
}

mvop::Report per_sample(const RunConfig& cfg, const std::function<mvop::Report(const mvop::Sample&)>& run)
{
    mvop::Report rep;
    for (const auto& s : samples(cfg))
        rep.merge(run(s), s.label() + " ");
    return rep;
}

int run(const RunConfig& cfg)
{
    mvop::Report rep;
    json extra;
    if (cfg.subcommand == "verify-jacobi") {
        rep = per_sample(cfg, [&](const mvop::Sample& s) { return mvop::jacobi_suite(s, cfg.n_max); });
    } else if (cfg.subcommand == "darboux") {
        rep = per_sample(cfg, [&](const mvop::Sample& s) { return mvop::darboux_suite(s, std::max<std::size_t>(cfg.n_max, 8)); });
        if (cfg.n_max < 8)
            rep.notes.push_back("darboux certificate raised to n = 8");
    } else if (cfg.subcommand == "center") {
        if (!cfg.weight_file.empty()) {
            rep = mvop::directsum_suite(weight_for(cfg), cfg.n_max, cfg.d_max);
        } else {
            rep = per_sample(cfg, [&](const mvop::Sample& s) { return mvop::center_suite(s); });
        }
    } else if (cfg.subcommand == "directsum") {
        mvop::WeightSpec w;
        if (!cfg.weight_file.empty()) {
            w = weight_for(cfg);
        } else {
            const mvop::Rational a = cfg.alpha.empty() ? mvop::Rational(1, 2) : mvop::Rational::parse(cfg.alpha[0]);
            w = mvop::WeightSpec::direct_sum({mvop::ClassicalWeight::laguerre(a), mvop::ClassicalWeight::laguerre(a + 1)});
        }
        rep = mvop::directsum_suite(w, cfg.n_max, cfg.d_max);
        extra["weight"] = mvop::to_json(w);
    } else if (cfg.subcommand == "mops") {
        mvop::WeightSpec w;
        if (!cfg.weight_file.empty() || !cfg.moments_file.empty()) {
            w = weight_for(cfg);
        } else {
            const auto s = samples(cfg);
            w = mvop::MatrixJacobi{s[0].alpha, s[0].beta, s[0].v};
            mvop::detail::check_matrix_jacobi(*w.get<mvop::MatrixJacobi>());
        }
        auto res = mvop::mops_suite(w, cfg.n_max);
        rep = res.report;
        extra["mops"] = mvop::to_json(res.mops, &res.rec);
    }
    emit(cfg, render(cfg, rep, extra));
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of matrix-valued orthogonal polynomial operator algebras"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "alpha of a sample, exact fraction (repeatable)");
        sub->add_option("--beta", cfg.beta, "beta of a sample, exact fraction (repeatable)");
        sub->add_option("--v", cfg.v, "v of a sample, exact fraction (repeatable)");
        sub->add_option("--nmax", cfg.n_max, "highest degree checked")->check(CLI::Range(2, 64));
        sub->add_option("--dmax", cfg.d_max, "degree bound for symmetry checks")->check(CLI::NonNegativeNumber);
        sub->add_option("--weight-file", cfg.weight_file, "JSON weight description")->check(CLI::ExistingFile);
        sub->add_option("--moments-file", cfg.moments_file, "JSON list of moment matrices")->check(CLI::ExistingFile);
        sub->add_option("--out", cfg.out, "write output here instead of stdout");
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"verify-jacobi", "full suite for the 2x2 Jacobi example"},
             {"directsum", "generators, ladders and center of a direct sum of classical weights"},
             {"mops", "monic orthogonal polynomials and recursion coefficients"},
             {"darboux", "factorization and Darboux certificate for the 2x2 Jacobi example"},
             {"center", "center of the 2x2 Jacobi example, or of a direct sum given by --weight-file"}}) {
        auto* sub = app.add_subcommand(name, help);
        common(sub);
        sub->callback([&cfg, name = name] { cfg.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return run(cfg);
    } catch (const mvop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_config_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
