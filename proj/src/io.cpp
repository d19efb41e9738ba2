#include "tailclust/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tailclust {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
    return s.substr(start);
}

bool parse_cell(const std::string& cell, double& value) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc{} && ptr == end && std::isfinite(value);
}

}  // namespace

DataTable read_data_csv(std::istream& input, const std::string& label_column) {
    std::string line;
    if (!std::getline(input, line)) throw ParseError("empty input: missing header row");
    // Drop a UTF-8 byte-order mark if present.
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) line = line.substr(3);

    std::vector<std::string> header = split_line(line);
    for (std::string& name : header) name = strip(name);

    int label_index = -1;
    if (!label_column.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == label_column) label_index = static_cast<int>(c);
        if (label_index < 0)
            throw InvalidInput("MissingLabelColumn: no column named '" + label_column + "'");
    }

    std::vector<std::string> columns;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (static_cast<int>(c) != label_index) columns.push_back(header[c]);

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    int line_number = 1;
    while (std::getline(input, line)) {
        ++line_number;
        if (strip(line).empty()) continue;
        std::vector<std::string> fields = split_line(line);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "row " << line_number << ": expected " << header.size() << " fields, found "
                << fields.size();
            throw ParseError(msg.str());
        }
        std::vector<double> row;
        row.reserve(columns.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string cell = strip(fields[c]);
            if (static_cast<int>(c) == label_index) {
                labels.push_back(cell);
                continue;
            }
            double value = 0.0;
            if (!parse_cell(cell, value)) {
                std::ostringstream msg;
                msg << "row " << line_number << ", column '" << header[c]
                    << "': cannot parse '" << cell << "' as a finite number";
                throw ParseError(msg.str());
            }
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows after the header");

    DataTable table;
    table.columns = std::move(columns);
    table.label_column = label_index >= 0 ? header[label_index] : "";
    table.observations =
        ObservationMatrix::make(Matrix::from_rows(rows),
                                label_index >= 0 ? std::move(labels) : std::vector<std::string>{});
    return table;
}

DataTable read_data_csv_file(const std::string& path, const std::string& label_column) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    return read_data_csv(file, label_column);
}

std::string format_double(double value) {
    char buffer[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
        double back = 0.0;
        std::from_chars(buffer, buffer + std::char_traits<char>::length(buffer), back);
        if (back == value) break;
    }
    return buffer;
}

void write_matrix_csv(std::ostream& out, const Matrix& data,
                      const std::vector<std::string>& columns) {
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
    out << "\n";
    for (int i = 0; i < data.rows(); ++i) {
        for (int j = 0; j < data.cols(); ++j)
            out << (j ? "," : "") << format_double(data(i, j));
        out << "\n";
    }
}

void write_elbow_csv(std::ostream& out, const std::vector<std::pair<int, double>>& curve) {
    out << "k,objective\n";
    for (const auto& [k, objective] : curve) out << k << "," << format_double(objective) << "\n";
}

void write_timeline_csv(std::ostream& out, const std::vector<TimelineRow>& rows) {
    out << "label,cluster,norm\n";
    for (const TimelineRow& row : rows)
        out << row.label << "," << row.cluster << "," << format_double(row.norm) << "\n";
}

nlohmann::json model_to_json(const MaxLinearModel& model) {
    nlohmann::json factors = nlohmann::json::array();
    for (int j = 0; j < model.d(); ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < model.k(); ++i) row.push_back(model.factors(j, i));
        factors.push_back(std::move(row));
    }
    return nlohmann::json{{"factors", std::move(factors)}};
}

MaxLinearModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array() ||
        j["factors"].empty())
        throw ParseError("model JSON must be an object with a nonempty 'factors' array");
    const nlohmann::json& factors = j["factors"];
    std::vector<std::vector<double>> rows;
    rows.reserve(factors.size());
    for (const nlohmann::json& row : factors) {
        if (!row.is_array() || row.empty())
            throw ParseError("model JSON rows must be nonempty arrays of numbers");
        std::vector<double> values;
        values.reserve(row.size());
        for (const nlohmann::json& cell : row) {
            if (!cell.is_number()) throw ParseError("model JSON entries must be numbers");
            values.push_back(cell.get<double>());
        }
        if (values.size() != factors.front().size())
            throw ParseError("model JSON rows must all have the same length");
        rows.push_back(std::move(values));
    }
    return make_max_linear_model(Matrix::from_rows(rows));
}

MaxLinearModel read_model_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return model_from_json(j);
}

namespace {

nlohmann::json vector_to_json(std::span<const double> values) {
    nlohmann::json array = nlohmann::json::array();
    for (double v : values) array.push_back(v);
    return array;
}

}  // namespace

nlohmann::json measure_to_json(const DiscreteSpectralMeasure& measure) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const UnitVector& atom : measure.atoms) atoms.push_back(vector_to_json(atom.coords()));
    return nlohmann::json{{"atoms", std::move(atoms)}, {"probs", vector_to_json(measure.probs)}};
}

nlohmann::json fit_report_to_json(const FitReport& report) {
    nlohmann::json centers = nlohmann::json::array();
    nlohmann::json renormalized = nlohmann::json::array();
    for (const UnitVector& center : report.model.centers) {
        centers.push_back(vector_to_json(center.coords()));
        renormalized.push_back(vector_to_json(renormalize_center(center)));
    }
    return nlohmann::json{{"k", report.model.k()},
                          {"centers", std::move(centers)},
                          {"renormalized_centers", std::move(renormalized)},
                          {"weights", vector_to_json(report.model.weights)},
                          {"objective", report.model.objective},
                          {"threshold", report.threshold},
                          {"n", report.n},
                          {"m", report.m},
                          {"columns", report.columns},
                          {"labels", report.model.labels},
                          {"source_rows", report.source_rows}};
}

nlohmann::json evaluation_report_to_json(const EvaluationConfig& cfg,
                                         const EvaluationReport& report) {
    nlohmann::json reps = nlohmann::json::array();
    for (std::size_t r = 0; r < report.replications.size(); ++r) {
        const ReplicationResult& rep = report.replications[r];
        nlohmann::json entry{{"replication", r},
                             {"w1", rep.w1},
                             {"objective", rep.objective}};
        if (report.has_ds) entry["ds"] = rep.ds;
        reps.push_back(std::move(entry));
    }
    nlohmann::json j{{"constellation", constellation_name(cfg.constellation)},
                     {"models", cfg.replications},
                     {"n", cfg.sample_size},
                     {"extremes", cfg.extremes},
                     {"k", cfg.k},
                     {"restarts", cfg.restarts},
                     {"seed", cfg.seed},
                     {"w1", {{"mean", report.w1_mean}, {"sd", report.w1_sd}}},
                     {"replications", std::move(reps)}};
    if (report.has_ds) j["ds"] = {{"mean", report.ds_mean}, {"sd", report.ds_sd}};
    return j;
}

}  // namespace tailclust
