#ifndef TAILCLUST_IO_HPP
#define TAILCLUST_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailclust/evaluate.hpp"
#include "tailclust/types.hpp"

namespace tailclust {

/// Input that cannot be interpreted at all: malformed CSV cells, wrong field
/// counts, invalid model JSON. Carries a human-readable location.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DataTable {
    std::vector<std::string> columns;  // numeric column names, in file order
    ObservationMatrix observations;    // labels filled when a label column was named
    std::string label_column;          // empty when none
};

/// Reads a comma-separated file with a mandatory header row. Every column is
/// parsed as numbers except the optional `label_column`, which becomes the
/// per-row labels. Throws ParseError with the 1-based row/column location on
/// the first malformed or non-finite cell, and when `label_column` names a
/// column the header does not contain.
DataTable read_data_csv(std::istream& input, const std::string& label_column = "");
DataTable read_data_csv_file(const std::string& path, const std::string& label_column = "");

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

void write_matrix_csv(std::ostream& out, const Matrix& data,
                      const std::vector<std::string>& columns);
void write_elbow_csv(std::ostream& out, const std::vector<std::pair<int, double>>& curve);

struct TimelineRow {
    std::string label;
    int cluster = 0;
    double norm = 0.0;
};
void write_timeline_csv(std::ostream& out, const std::vector<TimelineRow>& rows);

nlohmann::json model_to_json(const MaxLinearModel& model);
MaxLinearModel model_from_json(const nlohmann::json& j);
MaxLinearModel read_model_file(const std::string& path);

nlohmann::json measure_to_json(const DiscreteSpectralMeasure& measure);

struct FitReport {
    ClusterModel model;
    std::vector<int> source_rows;
    double threshold = 0.0;
    int n = 0;
    int m = 0;
    std::vector<std::string> columns;
};
nlohmann::json fit_report_to_json(const FitReport& report);

nlohmann::json evaluation_report_to_json(const EvaluationConfig& cfg,
                                         const EvaluationReport& report);

}  // namespace tailclust

#endif
