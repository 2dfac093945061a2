#include "ozf/json_io.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "ozf/errors.hpp"

namespace ozf {

namespace {

using nlohmann::json;

json signal_to_value(const Signal& s) {
    return json{{"start", s.start()}, {"values", s.values()}};
}

Signal signal_from_value(const json& j) {
    return Signal(j.at("start").get<std::int64_t>(), j.at("values").get<std::vector<double>>());
}

json matrix_to_value(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return json{{"n", m.rows()}, {"entries", rows}};
}

Matrix matrix_from_value(const json& j) {
    const auto rows = j.at("entries").get<std::vector<std::vector<double>>>();
    const auto n = j.at("n").get<std::size_t>();
    if (rows.size() != n) throw DimensionMismatch("matrix json: entries do not match n");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw DimensionMismatch("matrix json: ragged entries");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    return m;
}

json permutation_to_value(const BandedPeriodicPermutation& p) {
    return json{{"T", p.period()}, {"B", p.bandwidth()}, {"displacement", p.displacement()}};
}

BandedPeriodicPermutation permutation_from_value(const json& j) {
    return BandedPeriodicPermutation(j.at("T").get<std::size_t>(), j.at("B").get<std::size_t>(),
                                     j.at("displacement").get<std::vector<int>>());
}

json monotone_to_value(const PiecewiseLinearMonotone& n) {
    std::vector<std::vector<double>> pts;
    pts.reserve(n.breakpoints().size());
    for (const auto& b : n.breakpoints()) pts.push_back({b.x, b.y});
    return json{
        {"breakpoints", pts}, {"left_slope", n.left_slope()}, {"right_slope", n.right_slope()}};
}

std::vector<Breakpoint> breakpoints_from_value(const json& j) {
    std::vector<Breakpoint> pts;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("nonlinearity json: breakpoints must be [x, y] pairs");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return pts;
}

PiecewiseLinearMonotone monotone_from_value(const json& j) {
    return PiecewiseLinearMonotone(breakpoints_from_value(j.at("breakpoints")),
                                   j.value("left_slope", 0.0), j.value("right_slope", 0.0));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json(const Signal& s) { return dump(signal_to_value(s)); }

Signal signal_from_json(const std::string& text) {
    return signal_from_value(json::parse(text));
}

std::string to_json(const RationalPlant& p) {
    return dump(json{{"num", p.num()}, {"den", p.den()}});
}

RationalPlant plant_from_json(const std::string& text) {
    const json j = json::parse(text);
    return RationalPlant(j.at("num").get<std::vector<double>>(),
                         j.at("den").get<std::vector<double>>());
}

std::string to_json(const Matrix& m) { return dump(matrix_to_value(m)); }

Matrix matrix_from_json(const std::string& text) { return matrix_from_value(json::parse(text)); }

std::string to_json(const PermutationCombo& combo) {
    json arr = json::array();
    for (const auto& t : combo) arr.push_back(json{{"weight", t.weight}, {"perm", t.perm}});
    return dump(arr);
}

PermutationCombo permutation_combo_from_json(const std::string& text) {
    PermutationCombo combo;
    for (const auto& j : json::parse(text))
        combo.push_back(
            {j.at("weight").get<double>(), j.at("perm").get<std::vector<std::size_t>>()});
    return combo;
}

std::string to_json(const PeriodicBandedOperator& op) {
    std::vector<std::vector<double>> rows;
    rows.reserve(op.period());
    for (std::size_t r = 0; r < op.period(); ++r) rows.push_back(op.band(r));
    return dump(json{{"T", op.period()}, {"B", op.bandwidth()}, {"rows", rows}});
}

PeriodicBandedOperator periodic_operator_from_json(const std::string& text) {
    const json j = json::parse(text);
    return PeriodicBandedOperator(j.at("T").get<std::size_t>(), j.at("B").get<std::size_t>(),
                                  j.at("rows").get<std::vector<std::vector<double>>>());
}

std::string to_json(const BandedPeriodicPermutation& p) { return dump(permutation_to_value(p)); }

BandedPeriodicPermutation banded_permutation_from_json(const std::string& text) {
    return permutation_from_value(json::parse(text));
}

std::string to_json(const std::vector<PeriodicConicTerm>& terms) {
    json arr = json::array();
    for (const auto& t : terms)
        arr.push_back(json{{"weight", t.weight}, {"perm", permutation_to_value(t.perm)}});
    return dump(arr);
}

std::vector<PeriodicConicTerm> periodic_conic_terms_from_json(const std::string& text) {
    std::vector<PeriodicConicTerm> terms;
    for (const auto& j : json::parse(text))
        terms.push_back({j.at("weight").get<double>(), permutation_from_value(j.at("perm"))});
    return terms;
}

std::string to_json(const FirMultiplier& m) {
    return dump(json{{"B", m.bandwidth()},
                     {"coeffs", m.coeffs()},
                     {"mode", m.mode() == MultiplierMode::hyperdominant ? "hyperdominant"
                                                                        : "zero_excess"}});
}

FirMultiplier multiplier_from_json(const std::string& text) {
    const json j = json::parse(text);
    const auto mode_name = j.at("mode").get<std::string>();
    MultiplierMode mode;
    if (mode_name == "hyperdominant")
        mode = MultiplierMode::hyperdominant;
    else if (mode_name == "zero_excess")
        mode = MultiplierMode::zero_excess;
    else
        throw std::invalid_argument("multiplier json: unknown mode '" + mode_name + "'");
    return FirMultiplier(j.at("B").get<std::size_t>(), j.at("coeffs").get<std::vector<double>>(),
                         mode);
}

std::string to_json(const PiecewiseLinearMonotone& n) { return dump(monotone_to_value(n)); }

PiecewiseLinearMonotone monotone_from_json(const std::string& text) {
    return monotone_from_value(json::parse(text));
}

std::string to_json(const SectorNonlinearity& s) {
    json phases = json::array();
    for (const auto& ph : s.phases()) {
        std::vector<std::vector<double>> pts;
        for (const auto& b : ph.breakpoints) pts.push_back({b.x, b.y});
        phases.push_back(json{
            {"breakpoints", pts}, {"left_slope", ph.left_slope}, {"right_slope", ph.right_slope}});
    }
    return dump(json{{"period", s.period()}, {"phases", phases}});
}

SectorNonlinearity sector_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<SectorPhase> phases;
    for (const auto& ph : j.at("phases"))
        phases.push_back({breakpoints_from_value(ph.at("breakpoints")),
                          ph.value("left_slope", 0.0), ph.value("right_slope", 0.0)});
    if (j.contains("period") && j.at("period").get<std::size_t>() != phases.size())
        throw std::invalid_argument("sector json: period does not match the phase count");
    return SectorNonlinearity(std::move(phases));
}

std::string to_json(const QuadraticForm& q) {
    json j = matrix_to_value(q.matrix());
    return dump(json{{"H", q.horizon()}, {"matrix", j.at("entries")}});
}

QuadraticForm quadratic_form_from_json(const std::string& text) {
    const json j = json::parse(text);
    const auto h = j.at("H").get<std::size_t>();
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
    return QuadraticForm(h, std::move(m));
}

std::string to_json(const Certificate& c) {
    return dump(
        json{{"alpha", c.alpha}, {"max_eig", c.max_eig}, {"iterations", c.iterations}});
}

Certificate certificate_from_json(const std::string& text) {
    const json j = json::parse(text);
    return Certificate{j.at("alpha").get<std::vector<double>>(), j.at("max_eig").get<double>(),
                       j.at("iterations").get<std::size_t>()};
}

std::string to_json(const SearchReport& r) {
    json j{{"feasible", r.feasible},
           {"worst_frequency", r.worst_frequency},
           {"worst_value", r.worst_value},
           {"lp_iterations", r.lp_iterations},
           {"certificate_margin", r.certificate_margin},
           {"infeasibility", r.infeasibility},
           {"farkas_valid", r.farkas_valid}};
    if (r.multiplier) j["multiplier"] = json::parse(to_json(*r.multiplier));
    return dump(j);
}

std::string to_json(const SimResult& r) {
    json gains = json::array();
    for (double g : r.gain_trace) {
        if (std::isnan(g))
            gains.push_back(nullptr);
        else
            gains.push_back(g);
    }
    return dump(json{{"v", signal_to_value(r.v)},
                     {"w", signal_to_value(r.w)},
                     {"gain_trace", gains},
                     {"peak_gain", r.peak_gain},
                     {"diverged", r.diverged}});
}

std::string sim_result_csv(const Signal& input, const SimResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "k,e_k,v_k,w_k,gain_tau\n";
    for (std::size_t k = 0; k < r.gain_trace.size(); ++k) {
        const auto idx = static_cast<std::int64_t>(k);
        os << k << ',' << input[idx] << ',' << r.v[idx] << ',' << r.w[idx] << ',';
        if (!std::isnan(r.gain_trace[k])) os << r.gain_trace[k];
        os << '\n';
    }
    return os.str();
}

}  // namespace ozf
