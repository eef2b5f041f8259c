#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/oracle.hpp"

namespace qcorr::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitUsage = 2,
    kExitDomain = 3,
    kExitViolation = 4,
};

enum class Family { werner, pp, isotropic };
enum class Measure { discord, cc, mi, gd, negativity, eof, asymptote };
enum class Method { closed, numeric };

std::string to_string(Family f);
std::string to_string(Measure m);
std::string to_string(Method m);
Family parse_family(const std::string& s);
Measure parse_measure(const std::string& s);

// "lambda" for Werner, "alpha" for the pseudo-pure families.
std::string param_name(Family f);

struct OutputRecord {
    Family family;
    std::size_t d;
    double param_value;
    Measure measure;
    double value;
    Method method;
};

// 12 significant digits, %g style.
std::string format_number(double x);

inline constexpr const char* kRecordHeader = "family,d,param_name,param_value,measure,value,method";

void write_records_csv(std::ostream& os, const std::vector<OutputRecord>& records);
void write_records_json(std::ostream& os, const std::vector<OutputRecord>& records);

struct PointRequest {
    Family family = Family::werner;
    std::size_t d = 2;
    double param = 0.0;
    std::optional<std::vector<double>> schmidt;
    bool normalize = false;
    std::vector<Measure> measures;
    bool numeric = false;
    oracle::OptimizerConfig cfg{};
};

// One closed row per measure with a closed form and, when requested, one numeric row per
// measure with a matrix oracle. Throws DomainError for a measure that yields no row.
std::vector<OutputRecord> evaluate_point(const PointRequest& req);

struct SweepSpec {
    Family family = Family::werner;
    std::vector<std::size_t> d_list;
    double start = 0.0;
    double stop = 1.0;
    double step = 0.1;
    std::optional<std::vector<double>> schmidt;
    bool normalize = false;
    std::vector<Measure> measures;
    bool numeric = false;
    oracle::OptimizerConfig cfg{};

    void validate() const;
};

// start + i*step for i = 0 .. floor((stop - start)/step), endpoints inclusive up to 1e-9 slack.
std::vector<double> parameter_grid(double start, double stop, double step);

// Rows ordered d outer, parameter inner, measure innermost. Grid point i of dimension
// index j uses optimizer seed derive_seed(cfg.seed, j * grid_size + i).
std::vector<OutputRecord> run_sweep(const SweepSpec& spec);

struct FigureTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline constexpr double kFigureStep = 0.01;

// Default dimensions: {2, 50} for fig3, {2, 3, 10, 50} otherwise.
std::vector<std::size_t> default_figure_dims(const std::string& name);
FigureTable make_figure(const std::string& name, const std::vector<std::size_t>& dims);
void write_table_csv(std::ostream& os, const FigureTable& table);

struct CompareRow {
    Family family;
    std::size_t d;
    double param_value;
    Measure measure;
    double closed_value;
    double numeric_value;
    double gap;
};

struct CompareSummary {
    std::vector<CompareRow> rows;
    std::vector<std::pair<Measure, double>> max_gaps;  // in first-seen order
    bool pass = true;
};

// Gap thresholds: 1e-9 for negativity, 1e-6 for everything else.
double compare_threshold(Measure m);

CompareSummary oracle_compare(const SweepSpec& spec);
void write_compare_csv(std::ostream& os, const CompareSummary& summary);

// Entry point shared by the executable and the end-to-end tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qcorr::cli
