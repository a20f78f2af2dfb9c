#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "diffop.hpp"
#include "mops.hpp"
#include "report.hpp"
#include "weights.hpp"

namespace mvop {

using json = nlohmann::json;

// Exact values cross the JSON boundary as strings ("3/2", "-7").

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j)
{
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    fail(ErrorKind::InvalidArgument, "expected an exact fraction string, got " + j.dump());
}

inline json to_json(const PolyX& p)
{
    json a = json::array();
    for (const auto& c : p.coeffs())
        a.push_back(to_json(c));
    return a;
}

inline json to_json(const PolyN& p)
{
    json a = json::array();
    for (const auto& c : p.coeffs())
        a.push_back(to_json(c));
    return a;
}

template <class R>
json mat_to_json(const Mat<R>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const UnitSum& s)
{
    if (s.is_zero())
        return "0";
    if (s.terms().size() == 1 && s.terms().begin()->first.family == UnitFamily::None)
        return to_json(s.terms().begin()->second);
    json terms = json::array();
    for (const auto& [tag, c] : s.terms())
        terms.push_back({{"unit", tag.str()}, {"coeff", to_json(c)}});
    return terms;
}

inline QMat qmat_from_json(const json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        fail(ErrorKind::InvalidArgument, "expected a matrix as an array of rows");
    QMat m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != m.cols())
            fail(ErrorKind::DimensionMismatch, "ragged matrix in input");
        for (std::size_t k = 0; k < m.cols(); ++k)
            m(i, k) = rational_from_json(j[i][k]);
    }
    return m;
}

/// {size: [rows, cols], coeffs: [F_0, F_1, ...]}, each F_j a matrix of
/// ascending coefficient arrays.
inline json to_json(const MatDiffOp& d)
{
    json c = json::array();
    for (const auto& f : d.coeffs())
        c.push_back(mat_to_json(f));
    return {{"size", {d.rows(), d.cols()}}, {"coeffs", std::move(c)}};
}

// ---------------------------------------------------------------- weights

inline json to_json(const WeightSpec& w)
{
    if (const auto* c = w.get<ClassicalWeight>()) {
        switch (c->family) {
        case ScalarFamily::Hermite: return {{"type", "hermite"}, {"b", to_json(c->a)}};
        case ScalarFamily::Laguerre: return {{"type", "laguerre"}, {"alpha", to_json(c->a)}};
        case ScalarFamily::Jacobi: return {{"type", "jacobi"}, {"alpha", to_json(c->a)}, {"beta", to_json(c->b)}};
        }
    }
    if (const auto* d = w.get<DirectSum>()) {
        json parts = json::array();
        for (const auto& p : d->parts)
            parts.push_back(to_json(p));
        return {{"type", "direct_sum"}, {"parts", std::move(parts)}};
    }
    if (const auto* c = w.get<Conjugated>())
        return {{"type", "conjugated"}, {"m", mat_to_json(c->m)}, {"inner", to_json(*c->inner)}};
    if (const auto* m = w.get<MatrixJacobi>())
        return {{"type", "matrix_jacobi"}, {"alpha", to_json(m->alpha)}, {"beta", to_json(m->beta)}, {"v", to_json(m->v)}};
    return {{"type", "moments"}, {"size", w.size()}};
}

inline MomentSeq moments_from_json(const json& j);

inline WeightSpec weight_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type"))
        fail(ErrorKind::InvalidArgument, "weight needs a \"type\" field");
    const std::string t = j.at("type").get<std::string>();
    auto field = [&](const char* k) {
        if (!j.contains(k))
            fail(ErrorKind::InvalidArgument, "weight of type " + t + " needs \"" + k + "\"");
        return rational_from_json(j.at(k));
    };
    if (t == "hermite")
        return ClassicalWeight::hermite(j.contains("b") ? field("b") : Rational());
    if (t == "laguerre")
        return ClassicalWeight::laguerre(field("alpha"));
    if (t == "jacobi")
        return ClassicalWeight::jacobi(field("alpha"), field("beta"));
    if (t == "direct_sum") {
        std::vector<WeightSpec> parts;
        for (const auto& p : j.value("parts", json::array()))
            parts.push_back(weight_from_json(p));
        return WeightSpec::direct_sum(std::move(parts));
    }
    if (t == "conjugated")
        return WeightSpec::conjugated(qmat_from_json(j.at("m")), weight_from_json(j.at("inner")));
    if (t == "matrix_jacobi") {
        MatrixJacobi m{field("alpha"), field("beta"), field("v")};
        detail::check_matrix_jacobi(m);
        return m;
    }
    if (t == "moments")
        return MomentWeight{moments_from_json(j)};
    fail(ErrorKind::UnsupportedWeight, "unknown weight type " + t);
}

/// Either a bare array of moment matrices or {"moments": [...]}. Entries are
/// fraction strings; the moments carry no transcendental unit.
inline MomentSeq moments_from_json(const json& j)
{
    const json& arr = j.is_object() ? j.at("moments") : j;
    if (!arr.is_array())
        fail(ErrorKind::InvalidArgument, "moments must be an array of matrices");
    MomentSeq mu;
    for (const auto& m : arr)
        mu.push_back(qmat_from_json(m).map([](const Rational& r) { return UnitSum(r); }));
    validate_moments(mu);
    return mu;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidArgument, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::InvalidArgument, path + ": " + e.what());
    }
}

// ---------------------------------------------------------------- mops and reports

inline json to_json(const MopSequence& m, const RecursionCoeffs* rec = nullptr)
{
    json polys = json::array(), norms = json::array();
    for (const auto& p : m.polys)
        polys.push_back(mat_to_json(p));
    for (const auto& h : m.norms)
        norms.push_back(mat_to_json(h));
    json out = {{"weight", to_json(m.weight)}, {"n_max", m.n_max()}, {"polys", std::move(polys)}, {"norms", std::move(norms)}};
    if (rec) {
        json b = json::array(), c = json::array();
        for (const auto& x : rec->b)
            b.push_back(mat_to_json(x));
        for (const auto& x : rec->c)
            c.push_back(mat_to_json(x));
        out["recursion"] = {{"b", std::move(b)}, {"c", std::move(c)}, {"residual_zero", rec->residual_zero}};
    }
    return out;
}

inline json to_json(const Check& c)
{
    json j = {{"check", c.name}, {"status", to_string(c.status)}};
    if (!c.witness.empty())
        j["witness"] = c.witness;
    if (c.first_failure_n)
        j["first_failure_n"] = *c.first_failure_n;
    return j;
}

inline json to_json(const Report& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(to_json(c));
    json out = {{"checks", std::move(checks)},
                {"summary",
                 {{"pass", r.count(Status::Pass)}, {"fail", r.count(Status::Fail)}, {"skip", r.count(Status::Skip)}}}};
    if (!r.notes.empty())
        out["notes"] = r.notes;
    return out;
}

/// One line per check, then the notes.
inline std::string render_text(const Report& r)
{
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << to_string(c.status) << "  " << c.name;
        if (c.status != Status::Pass) {
            if (c.first_failure_n)
                os << "  [n=" << *c.first_failure_n << "]";
            if (!c.witness.empty())
                os << "  " << c.witness;
        }
        os << '\n';
    }
    for (const auto& n : r.notes)
        os << "note: " << n << '\n';
    os << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, " << r.count(Status::Skip)
       << " skipped\n";
    return os.str();
}

} // namespace mvop
