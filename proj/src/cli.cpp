#include "qcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/closed_forms.hpp"
#include "qcorr/errors.hpp"

namespace qcorr::cli {

namespace {

const std::map<std::string, Family> kFamilies = {
    {"werner", Family::werner}, {"pp", Family::pp}, {"isotropic", Family::isotropic}};

const std::map<std::string, Measure> kMeasures = {
    {"discord", Measure::discord}, {"cc", Measure::cc},   {"mi", Measure::mi},
    {"gd", Measure::gd},           {"negativity", Measure::negativity},
    {"eof", Measure::eof},         {"asymptote", Measure::asymptote}};

// Raised for flag combinations CLI11 cannot express; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FamilyPoint {
    Family family;
    std::optional<WernerParams> werner;
    std::optional<PseudoPureParams> pp;

    DensityMatrix state() const {
        return werner ? states::build_werner(*werner) : states::build_pseudo_pure(*pp);
    }
};

FamilyPoint make_point(Family family, std::size_t d, double param, const std::optional<std::vector<double>>& schmidt,
                       bool normalize) {
    switch (family) {
        case Family::werner:
            return {family, WernerParams(d, param), std::nullopt};
        case Family::isotropic:
            return {family, std::nullopt, PseudoPureParams::isotropic(d, param)};
        case Family::pp: {
            if (!schmidt) {
                throw ParameterError("family pp requires a Schmidt vector");
            }
            PureSchmidtState psi = normalize ? PureSchmidtState::normalized(*schmidt) : PureSchmidtState(*schmidt);
            if (psi.d() != d) {
                throw ParameterError("Schmidt vector has length " + std::to_string(psi.d()) + " but d = " +
                                     std::to_string(d));
            }
            return {family, std::nullopt, PseudoPureParams(param, std::move(psi))};
        }
    }
    throw ParameterError("unknown family");
}

std::optional<double> closed_value(const FamilyPoint& pt, Measure m) {
    if (pt.werner) {
        const auto& p = *pt.werner;
        switch (m) {
            case Measure::discord: return closed::werner_discord(p);
            case Measure::cc: return closed::werner_classical_correlations(p);
            case Measure::mi: return closed::werner_mutual_information(p);
            case Measure::eof: return closed::werner_eof(p.lambda());
            case Measure::asymptote: return closed::werner_discord_asymptote(p.lambda());
            case Measure::gd:
            case Measure::negativity: return std::nullopt;
        }
        return std::nullopt;
    }
    const auto& p = *pt.pp;
    switch (m) {
        case Measure::discord: return closed::pp_discord(p);
        case Measure::cc: return closed::pp_classical_correlations(p);
        case Measure::mi: return 2.0 * closed::pp_marginal_entropy(p) - closed::pp_joint_entropy(p);
        case Measure::gd: return closed::pp_gd(p);
        case Measure::negativity: return closed::pp_negativity(p);
        case Measure::asymptote: return closed::pp_discord_asymptote(p.alpha(), p.psi());
        case Measure::eof: return std::nullopt;
    }
    return std::nullopt;
}

bool has_numeric(Measure m) { return m != Measure::eof && m != Measure::asymptote; }

// Lazily evaluates the oracle for one state, sharing the discord minimization between
// the discord and cc rows.
class NumericPoint {
  public:
    NumericPoint(const FamilyPoint& pt, const oracle::OptimizerConfig& cfg) : pt_(pt), cfg_(cfg) {}

    double value(Measure m) {
        if (!rho_) {
            if (pt_.werner ? pt_.werner->d() > oracle::kMaxOptimizedDim : pt_.pp->d() > oracle::kMaxOptimizedDim) {
                throw CapabilityError("numeric oracle supports d <= " + std::to_string(oracle::kMaxOptimizedDim));
            }
            rho_ = std::make_unique<DensityMatrix>(pt_.state());
        }
        switch (m) {
            case Measure::discord: return discord();
            case Measure::cc: return oracle::mutual_information_numeric(*rho_) - discord();
            case Measure::mi: return oracle::mutual_information_numeric(*rho_);
            case Measure::gd: return oracle::gd_numeric(*rho_, cfg_);
            case Measure::negativity: return oracle::negativity_numeric(*rho_);
            case Measure::eof:
            case Measure::asymptote: break;
        }
        throw DomainError("measure " + to_string(m) + " has no numeric oracle");
    }

  private:
    double discord() {
        if (!discord_) {
            discord_ = oracle::discord_numeric(*rho_, cfg_);
        }
        return *discord_;
    }

    const FamilyPoint& pt_;
    oracle::OptimizerConfig cfg_;
    std::unique_ptr<DensityMatrix> rho_;
    std::optional<double> discord_;
};

std::vector<OutputRecord> evaluate_family_point(const FamilyPoint& pt, std::size_t d, double param,
                                                const std::vector<Measure>& measures, bool numeric,
                                                const oracle::OptimizerConfig& cfg) {
    std::vector<OutputRecord> out;
    NumericPoint num(pt, cfg);
    for (Measure m : measures) {
        const std::size_t before = out.size();
        if (auto v = closed_value(pt, m)) {
            out.push_back({pt.family, d, param, m, *v, Method::closed});
        }
        if (numeric && has_numeric(m)) {
            out.push_back({pt.family, d, param, m, num.value(m), Method::numeric});
        }
        if (out.size() == before) {
            throw DomainError("measure " + to_string(m) + " is not available for family " + to_string(pt.family) +
                              (numeric ? "" : " without --numeric"));
        }
    }
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        return fallback;
    }
    file.open(path, std::ios::out | std::ios::trunc);
    if (!file) {
        throw std::ios_base::failure("cannot open output file " + path);
    }
    return file;
}

std::vector<Measure> parse_measures(const std::vector<std::string>& names) {
    std::vector<Measure> out;
    for (const auto& n : names) {
        out.push_back(parse_measure(n));
    }
    return out;
}

void require_family_flags(Family family, const std::optional<double>& lambda, const std::optional<double>& alpha,
                          const std::optional<std::vector<double>>& schmidt) {
    if (family == Family::werner && (!lambda || alpha)) {
        throw UsageError("family werner takes --lambda (and not --alpha)");
    }
    if (family != Family::werner && (!alpha || lambda)) {
        throw UsageError("family " + to_string(family) + " takes --alpha (and not --lambda)");
    }
    if ((family == Family::pp) != schmidt.has_value()) {
        throw UsageError("--schmidt is required for family pp and only accepted there");
    }
}

void require_sweep_flags(Family family, const std::optional<std::vector<double>>& schmidt) {
    if ((family == Family::pp) != schmidt.has_value()) {
        throw UsageError("--schmidt is required for family pp and only accepted there");
    }
}

void add_optimizer_flags(CLI::App* cmd, oracle::OptimizerConfig& cfg) {
    cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iterations", cfg.max_iterations, "Simplex iterations per restart")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "Master seed");
}

const std::vector<std::string> kFamilyNames = {"werner", "pp", "isotropic"};
const std::vector<std::string> kMeasureNames = {"discord", "cc", "mi", "gd", "negativity", "eof", "asymptote"};
const std::vector<std::string> kFigureNames = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};

} // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::werner: return "werner";
        case Family::pp: return "pp";
        case Family::isotropic: return "isotropic";
    }
    return "?";
}

std::string to_string(Measure m) {
    for (const auto& [name, value] : kMeasures) {
        if (value == m) {
            return name;
        }
    }
    return "?";
}

std::string to_string(Method m) { return m == Method::closed ? "closed" : "numeric"; }

Family parse_family(const std::string& s) {
    const auto it = kFamilies.find(s);
    if (it == kFamilies.end()) {
        throw ParameterError("unknown family '" + s + "'");
    }
    return it->second;
}

Measure parse_measure(const std::string& s) {
    const auto it = kMeasures.find(s);
    if (it == kMeasures.end()) {
        throw ParameterError("unknown measure '" + s + "'");
    }
    return it->second;
}

std::string param_name(Family f) { return f == Family::werner ? "lambda" : "alpha"; }

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_records_csv(std::ostream& os, const std::vector<OutputRecord>& records) {
    os << kRecordHeader << '\n';
    for (const auto& r : records) {
        os << to_string(r.family) << ',' << r.d << ',' << param_name(r.family) << ',' << format_number(r.param_value)
           << ',' << to_string(r.measure) << ',' << format_number(r.value) << ',' << to_string(r.method) << '\n';
    }
}

void write_records_json(std::ostream& os, const std::vector<OutputRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        arr.push_back({{"family", to_string(r.family)},
                       {"d", r.d},
                       {"param_name", param_name(r.family)},
                       {"param_value", r.param_value},
                       {"measure", to_string(r.measure)},
                       {"value", r.value},
                       {"method", to_string(r.method)}});
    }
    os << arr.dump(2) << '\n';
}

std::vector<OutputRecord> evaluate_point(const PointRequest& req) {
    const FamilyPoint pt = make_point(req.family, req.d, req.param, req.schmidt, req.normalize);
    return evaluate_family_point(pt, req.d, req.param, req.measures, req.numeric, req.cfg);
}

void SweepSpec::validate() const {
    if (!(step > 0.0)) {
        throw ParameterError("sweep step must be positive");
    }
    if (!(start <= stop)) {
        throw ParameterError("sweep start must not exceed stop");
    }
    if (d_list.empty()) {
        throw ParameterError("sweep needs at least one dimension");
    }
    if ((family == Family::pp) != schmidt.has_value()) {
        throw ParameterError("a Schmidt vector is required for family pp and only accepted there");
    }
    if (measures.empty()) {
        throw ParameterError("sweep needs at least one measure");
    }
    cfg.validate();
}

std::vector<double> parameter_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(start <= stop)) {
        throw ParameterError("invalid grid: need step > 0 and start <= stop");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = std::min(start + static_cast<double>(i) * step, stop);
    }
    return grid;
}

std::vector<OutputRecord> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = parameter_grid(spec.start, spec.stop, spec.step);
    std::vector<OutputRecord> out;
    for (std::size_t j = 0; j < spec.d_list.size(); ++j) {
        const std::size_t d = spec.d_list[j];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            oracle::OptimizerConfig cfg = spec.cfg;
            cfg.seed = states::derive_seed(spec.cfg.seed, j * grid.size() + i);
            const FamilyPoint pt = make_point(spec.family, d, grid[i], spec.schmidt, spec.normalize);
            auto rows = evaluate_family_point(pt, d, grid[i], spec.measures, spec.numeric, cfg);
            out.insert(out.end(), rows.begin(), rows.end());
        }
    }
    return out;
}

std::vector<std::size_t> default_figure_dims(const std::string& name) {
    if (name == "fig3") {
        return {2, 50};
    }
    return {2, 3, 10, 50};
}

FigureTable make_figure(const std::string& name, const std::vector<std::size_t>& dims) {
    const bool werner = name == "fig1" || name == "fig2" || name == "fig3";
    FigureTable t;
    if (name == "fig1") {
        t.columns = {"d", "lambda", "discord"};
    } else if (name == "fig2") {
        t.columns = {"d", "lambda", "cc"};
    } else if (name == "fig3") {
        t.columns = {"d", "lambda", "discord", "eof"};
    } else if (name == "fig4") {
        t.columns = {"d", "alpha", "discord"};
    } else if (name == "fig5") {
        t.columns = {"d", "alpha", "cc"};
    } else if (name == "fig6") {
        t.columns = {"d", "alpha", "difference", "binary_entropy"};
    } else {
        throw ParameterError("unknown figure '" + name + "'");
    }

    const std::vector<double> grid = parameter_grid(0.0, 1.0, kFigureStep);
    for (std::size_t d : dims) {
        for (double x : grid) {
            std::vector<double> row = {static_cast<double>(d), x};
            if (werner) {
                const WernerParams p(d, x);
                if (name == "fig1") {
                    row.push_back(closed::werner_discord(p));
                } else if (name == "fig2") {
                    row.push_back(closed::werner_classical_correlations(p));
                } else {
                    row.push_back(closed::werner_discord(p));
                    row.push_back(closed::werner_eof(x));
                }
            } else {
                const auto p = PseudoPureParams::isotropic(d, x);
                if (name == "fig4") {
                    row.push_back(closed::pp_discord(p));
                } else if (name == "fig5") {
                    row.push_back(closed::pp_classical_correlations(p));
                } else {
                    row.push_back(closed::pp_discord(p) - closed::pp_classical_correlations(p));
                    row.push_back(closed::binary_entropy(x));
                }
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

void write_table_csv(std::ostream& os, const FigureTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_number(row[i]);
        }
        os << '\n';
    }
}

double compare_threshold(Measure m) { return m == Measure::negativity ? 1e-9 : 1e-6; }

CompareSummary oracle_compare(const SweepSpec& spec) {
    spec.validate();
    for (std::size_t d : spec.d_list) {
        if (d > oracle::kMaxOptimizedDim) {
            throw CapabilityError("oracle-compare supports d <= " + std::to_string(oracle::kMaxOptimizedDim) +
                                  ", got " + std::to_string(d));
        }
    }
    const std::vector<double> grid = parameter_grid(spec.start, spec.stop, spec.step);
    CompareSummary summary;
    for (std::size_t j = 0; j < spec.d_list.size(); ++j) {
        const std::size_t d = spec.d_list[j];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            oracle::OptimizerConfig cfg = spec.cfg;
            cfg.seed = states::derive_seed(spec.cfg.seed, j * grid.size() + i);
            const FamilyPoint pt = make_point(spec.family, d, grid[i], spec.schmidt, spec.normalize);
            NumericPoint num(pt, cfg);
            for (Measure m : spec.measures) {
                const auto closed = closed_value(pt, m);
                if (!closed || !has_numeric(m)) {
                    throw DomainError("measure " + to_string(m) + " lacks a closed form or oracle for family " +
                                      to_string(spec.family));
                }
                const double numeric = num.value(m);
                const double gap = std::abs(numeric - *closed);
                summary.rows.push_back({spec.family, d, grid[i], m, *closed, numeric, gap});

                auto it = std::find_if(summary.max_gaps.begin(), summary.max_gaps.end(),
                                       [m](const auto& e) { return e.first == m; });
                if (it == summary.max_gaps.end()) {
                    summary.max_gaps.emplace_back(m, gap);
                } else {
                    it->second = std::max(it->second, gap);
                }
                if (!(gap <= compare_threshold(m))) {
                    summary.pass = false;
                }
            }
        }
    }
    return summary;
}

void write_compare_csv(std::ostream& os, const CompareSummary& summary) {
    os << "family,d,param_name,param_value,measure,closed,numeric,gap\n";
    for (const auto& r : summary.rows) {
        os << to_string(r.family) << ',' << r.d << ',' << param_name(r.family) << ',' << format_number(r.param_value)
           << ',' << to_string(r.measure) << ',' << format_number(r.closed_value) << ','
           << format_number(r.numeric_value) << ',' << format_number(r.gap) << '\n';
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum correlations of Werner, pseudo-pure and isotropic states", "qcorr"};
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand("compute", "Evaluate measures at one parameter point");
    std::string c_family;
    std::size_t c_d = 0;
    std::optional<double> c_lambda, c_alpha;
    std::optional<std::vector<double>> c_schmidt;
    bool c_normalize = false;
    std::vector<std::string> c_measures = {"discord"};
    bool c_numeric = false;
    oracle::OptimizerConfig c_cfg;
    std::string c_format = "csv";
    std::string c_out;
    compute->add_option("--family", c_family)->required()->check(CLI::IsMember(kFamilyNames));
    compute->add_option("--d", c_d, "Local dimension")->required();
    compute->add_option("--lambda", c_lambda, "Werner parameter tr(rho Pi^-)");
    compute->add_option("--alpha", c_alpha, "Pseudo-pure mixing parameter");
    compute->add_option("--schmidt", c_schmidt, "Comma-separated Schmidt amplitudes")->delimiter(',');
    compute->add_flag("--normalize", c_normalize, "Rescale and sort --schmidt instead of rejecting it");
    compute->add_option("--measures", c_measures)->delimiter(',')->check(CLI::IsMember(kMeasureNames));
    compute->add_flag("--numeric", c_numeric, "Add matrix-oracle rows");
    add_optimizer_flags(compute, c_cfg);
    compute->add_option("--format", c_format)->check(CLI::IsMember({"csv", "json"}));
    compute->add_option("--out", c_out, "Output path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Evaluate measures over a parameter grid");
    std::string s_family;
    std::vector<std::size_t> s_dims;
    double s_start = 0.0, s_stop = 1.0, s_step = 0.1;
    std::optional<std::vector<double>> s_schmidt;
    bool s_normalize = false;
    std::vector<std::string> s_measures = {"discord"};
    bool s_numeric = false;
    oracle::OptimizerConfig s_cfg;
    std::string s_format = "csv";
    std::string s_out;
    sweep->add_option("--family", s_family)->required()->check(CLI::IsMember(kFamilyNames));
    sweep->add_option("--d", s_dims, "Comma-separated dimensions")->required()->delimiter(',');
    sweep->add_option("--start", s_start);
    sweep->add_option("--stop", s_stop);
    sweep->add_option("--step", s_step);
    sweep->add_option("--schmidt", s_schmidt)->delimiter(',');
    sweep->add_flag("--normalize", s_normalize);
    sweep->add_option("--measures", s_measures)->delimiter(',')->check(CLI::IsMember(kMeasureNames));
    sweep->add_flag("--numeric", s_numeric);
    add_optimizer_flags(sweep, s_cfg);
    sweep->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", s_out);

    // figure
    auto* figure = app.add_subcommand("figure", "Regenerate figure data as CSV");
    std::string f_name;
    std::vector<std::size_t> f_dims;
    std::string f_out;
    figure->add_option("name", f_name)->required()->check(CLI::IsMember(kFigureNames));
    figure->add_option("--dims", f_dims)->delimiter(',');
    figure->add_option("--out", f_out);

    // conjecture
    auto* conjecture = app.add_subcommand("conjecture", "Check GD >= negativity^2 on random pseudo-pure states");
    oracle::ConjectureSpec j_spec;
    j_spec.numeric_config.restarts = 8;
    j_spec.numeric_config.max_iterations = 20000;
    std::optional<std::vector<double>> j_schmidt;
    bool j_normalize = false;
    std::string j_out;
    conjecture->add_option("--samples", j_spec.samples)->check(CLI::PositiveNumber);
    conjecture->add_option("--dmin", j_spec.dmin);
    conjecture->add_option("--dmax", j_spec.dmax);
    conjecture->add_option("--seed", j_spec.seed);
    conjecture->add_option("--schmidt", j_schmidt, "Force this Schmidt vector for every sample")->delimiter(',');
    conjecture->add_flag("--normalize", j_normalize);
    conjecture->add_option("--restarts", j_spec.numeric_config.restarts)->check(CLI::PositiveNumber);
    conjecture->add_option("--max-iterations", j_spec.numeric_config.max_iterations)->check(CLI::PositiveNumber);
    conjecture->add_option("--out", j_out);

    // oracle-compare
    auto* compare = app.add_subcommand("oracle-compare", "Compare closed forms against the matrix oracle");
    std::string o_family;
    std::vector<std::size_t> o_dims;
    double o_start = 0.0, o_stop = 1.0, o_step = 0.1;
    std::optional<std::vector<double>> o_schmidt;
    bool o_normalize = false;
    std::vector<std::string> o_measures = {"discord"};
    oracle::OptimizerConfig o_cfg;
    std::string o_out;
    compare->add_option("--family", o_family)->required()->check(CLI::IsMember(kFamilyNames));
    compare->add_option("--d", o_dims)->required()->delimiter(',');
    compare->add_option("--start", o_start);
    compare->add_option("--stop", o_stop);
    compare->add_option("--step", o_step);
    compare->add_option("--schmidt", o_schmidt)->delimiter(',');
    compare->add_flag("--normalize", o_normalize);
    compare->add_option("--measures", o_measures)->delimiter(',')->check(CLI::IsMember(kMeasureNames));
    add_optimizer_flags(compare, o_cfg);
    compare->add_option("--out", o_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::ofstream file;
        if (*compute) {
            const Family family = parse_family(c_family);
            require_family_flags(family, c_lambda, c_alpha, c_schmidt);
            PointRequest req;
            req.family = family;
            req.d = c_d;
            req.param = family == Family::werner ? *c_lambda : *c_alpha;
            req.schmidt = c_schmidt;
            req.normalize = c_normalize;
            req.measures = parse_measures(c_measures);
            req.numeric = c_numeric;
            req.cfg = c_cfg;
            const auto records = evaluate_point(req);
            std::ostream& os = open_output(c_out, file, out);
            if (c_format == "json") {
                write_records_json(os, records);
            } else {
                write_records_csv(os, records);
            }
        } else if (*sweep) {
            const Family family = parse_family(s_family);
            require_sweep_flags(family, s_schmidt);
            SweepSpec spec;
            spec.family = family;
            spec.d_list = s_dims;
            spec.start = s_start;
            spec.stop = s_stop;
            spec.step = s_step;
            spec.schmidt = s_schmidt;
            spec.normalize = s_normalize;
            spec.measures = parse_measures(s_measures);
            spec.numeric = s_numeric;
            spec.cfg = s_cfg;
            const auto records = run_sweep(spec);
            std::ostream& os = open_output(s_out, file, out);
            if (s_format == "json") {
                write_records_json(os, records);
            } else {
                write_records_csv(os, records);
            }
        } else if (*figure) {
            const auto dims = f_dims.empty() ? default_figure_dims(f_name) : f_dims;
            const FigureTable table = make_figure(f_name, dims);
            write_table_csv(open_output(f_out, file, out), table);
        } else if (*conjecture) {
            if (j_schmidt) {
                j_spec.schmidt = j_normalize ? PureSchmidtState::normalized(*j_schmidt).amplitudes() : *j_schmidt;
            }
            const auto report = oracle::conjecture_sweep(j_spec);
            nlohmann::ordered_json j;
            j["samples"] = report.samples;
            j["min_gap"] = report.min_gap;
            j["violations"] = report.violations;
            const auto& worst = *report.worst_case_params;
            j["worst_case"] = {{"d", worst.d()}, {"alpha", worst.alpha()}, {"schmidt", worst.schmidt()}};
            j["numeric_subset"] = {{"checked", report.numeric_checked},
                                   {"max_gd_deviation", report.max_gd_deviation},
                                   {"max_negativity_deviation", report.max_negativity_deviation}};
            open_output(j_out, file, out) << j.dump(2) << '\n';
            return report.violations == 0 ? kExitOk : kExitViolation;
        } else if (*compare) {
            const Family family = parse_family(o_family);
            require_sweep_flags(family, o_schmidt);
            SweepSpec spec;
            spec.family = family;
            spec.d_list = o_dims;
            spec.start = o_start;
            spec.stop = o_stop;
            spec.step = o_step;
            spec.schmidt = o_schmidt;
            spec.normalize = o_normalize;
            spec.measures = parse_measures(o_measures);
            spec.numeric = true;
            spec.cfg = o_cfg;
            const CompareSummary summary = oracle_compare(spec);
            write_compare_csv(open_output(o_out, file, out), summary);
            for (const auto& [m, gap] : summary.max_gaps) {
                err << "max_gap " << to_string(m) << ' ' << format_number(gap) << " threshold "
                    << format_number(compare_threshold(m)) << (gap <= compare_threshold(m) ? " ok" : " FAIL") << '\n';
            }
            return summary.pass ? kExitOk : kExitViolation;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const qcorr::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

} // namespace qcorr::cli
