#include "wcca/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace wcca {

using nlohmann::json;

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw Error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double(const std::string& text, long line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + text + "'", line_no);
    }
}

long parse_int(const std::string& text, long line_no) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + text + "'", line_no);
    }
}

} // namespace

void write_quantile_table(const std::string& path, const Dataset& dataset) {
    std::ostringstream out;
    const GridConfig& g = dataset.grid;
    out << "# wcca-quantile-table v1 support_lo=" << format_double(g.support_lo)
        << " support_hi=" << format_double(g.support_hi)
        << " time_lo=" << format_double(g.time_lo) << " time_hi=" << format_double(g.time_hi)
        << "\n";
    out << "subject,t_index";
    for (int j = 1; j <= g.m_levels; ++j) out << ",q_" << j;
    out << "\n";
    for (std::size_t s = 0; s < dataset.curves.size(); ++s) {
        const Eigen::MatrixXd& q = dataset.curves[s].quantiles();
        for (int i = 0; i < g.t_points; ++i) {
            out << dataset.subject_ids[s] << ',' << i;
            for (int j = 0; j < g.m_levels; ++j) out << ',' << format_double(q(i, j));
            out << "\n";
        }
    }
    write_text_file(path, out.str());
}

Dataset read_quantile_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);

    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty file: " + path, 1);
    ++line_no;
    double lo = 0.0, hi = 1.0, t_lo = 0.0, t_hi = 1.0;
    if (line.rfind("# wcca-quantile-table", 0) == 0) {
        if (std::sscanf(line.c_str(),
                        "# wcca-quantile-table v1 support_lo=%lf support_hi=%lf time_lo=%lf "
                        "time_hi=%lf",
                        &lo, &hi, &t_lo, &t_hi) != 4)
            throw ParseError("malformed quantile-table header", line_no);
        if (!std::getline(in, line)) throw ParseError("missing column header", line_no + 1);
        ++line_no;
    }

    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "subject" || header[1] != "t_index")
        throw ParseError("expected header 'subject,t_index,q_1..'", line_no);
    const int m = static_cast<int>(header.size()) - 2;

    std::map<int, std::map<int, Eigen::RowVectorXd>> frames;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != m + 2)
            throw ParseError("wrong field count", line_no);
        const int subject = static_cast<int>(parse_int(fields[0], line_no));
        const int t_index = static_cast<int>(parse_int(fields[1], line_no));
        if (t_index < 0) throw ParseError("negative t_index", line_no);
        Eigen::RowVectorXd q(m);
        for (int j = 0; j < m; ++j) q(j) = parse_double(fields[j + 2], line_no);
        for (int j = 0; j + 1 < m; ++j)
            if (!(q(j) <= q(j + 1))) throw ParseError("quantile row not nondecreasing", line_no);
        if (!frames[subject].emplace(t_index, std::move(q)).second)
            throw ParseError("duplicate (subject, t_index) row", line_no);
    }
    if (frames.empty()) throw ParseError("no data rows", line_no);

    const int t_points = static_cast<int>(frames.begin()->second.size());
    Dataset dataset;
    dataset.grid = GridConfig(m, t_points, lo, hi, t_lo, t_hi);
    for (auto& [subject, rows] : frames) {
        if (static_cast<int>(rows.size()) != t_points ||
            rows.begin()->first != 0 || rows.rbegin()->first != t_points - 1)
            throw Error("subject " + std::to_string(subject) +
                        " does not supply every time frame");
        Eigen::MatrixXd q(t_points, m);
        for (auto& [t_index, row] : rows) q.row(t_index) = row;
        dataset.subject_ids.push_back(subject);
        dataset.curves.emplace_back(std::move(q), dataset.grid);
    }
    return dataset;
}

std::vector<SampleListEntry> read_sample_lists(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::vector<SampleListEntry> entries;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what(), line_no);
        }
        try {
            SampleListEntry entry;
            entry.subject = obj.at("subject").get<int>();
            entry.t_index = obj.at("t_index").get<int>();
            entry.values = obj.at("values").get<std::vector<double>>();
            entries.push_back(std::move(entry));
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad record: ") + e.what(), line_no);
        }
    }
    return entries;
}

void write_sample_lists(const std::string& path, const std::vector<SampleListEntry>& entries) {
    std::ostringstream out;
    for (const auto& entry : entries) {
        json obj;
        obj["subject"] = entry.subject;
        obj["t_index"] = entry.t_index;
        obj["values"] = entry.values;
        out << obj.dump() << "\n";
    }
    write_text_file(path, out.str());
}

std::pair<Dataset, IngestReport> ingest_sample_lists(const std::vector<SampleListEntry>& entries,
                                                     int m_levels, bool support_given,
                                                     double support_lo, double support_hi) {
    if (entries.empty()) throw EmptyInput("ingest: no records");

    std::map<int, std::map<int, const SampleListEntry*>> by_subject;
    double lo = support_lo, hi = support_hi;
    bool any_value = false;
    for (const auto& entry : entries) {
        if (entry.values.empty())
            throw EmptyInput("ingest: empty frame for subject " + std::to_string(entry.subject) +
                             ", t_index " + std::to_string(entry.t_index));
        if (!by_subject[entry.subject].emplace(entry.t_index, &entry).second)
            throw Error("ingest: duplicate frame for subject " + std::to_string(entry.subject));
        if (!support_given) {
            for (double v : entry.values) {
                if (!any_value) {
                    lo = hi = v;
                    any_value = true;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        }
    }
    if (!support_given && !(lo < hi)) hi = lo + 1.0;  // degenerate constant data

    const int t_points = static_cast<int>(by_subject.begin()->second.size());
    GridConfig grid(m_levels, t_points, lo, hi);

    IngestReport report;
    report.inferred_lo = lo;
    report.inferred_hi = hi;
    report.min_samples = static_cast<long>(entries.front().values.size());

    Dataset dataset;
    dataset.grid = grid;
    for (const auto& [subject, frames] : by_subject) {
        if (static_cast<int>(frames.size()) != t_points ||
            frames.begin()->first != 0 || frames.rbegin()->first != t_points - 1)
            throw Error("ingest: subject " + std::to_string(subject) +
                        " does not supply every time frame");
        Eigen::MatrixXd q(t_points, m_levels);
        for (const auto& [t_index, entry] : frames) {
            const auto count = static_cast<long>(entry->values.size());
            report.min_samples = std::min(report.min_samples, count);
            report.max_samples = std::max(report.max_samples, count);
            ++report.frames;
            for (double v : entry->values)
                if (v < lo || v > hi) ++report.clipped_values;
            q.row(t_index) = from_samples(entry->values, grid, /*clip=*/true)
                                 .quantiles()
                                 .transpose();
        }
        dataset.subject_ids.push_back(subject);
        dataset.curves.emplace_back(std::move(q), grid);
    }
    return {std::move(dataset), report};
}

std::string distribution_to_json(const Distribution& dist) {
    json obj;
    obj["support"] = {dist.grid().support_lo, dist.grid().support_hi};
    obj["m"] = dist.m_levels();
    obj["q"] = std::vector<double>(dist.quantiles().data(),
                                   dist.quantiles().data() + dist.quantiles().size());
    return obj.dump();
}

void write_field_csv(const std::string& path, const TangentField& field) {
    const GridConfig& g = field.grid();
    std::ostringstream out;
    out << "t";
    for (int j = 0; j < g.m_levels; ++j) out << ",u_" << format_double(g.u_level(j));
    out << "\n";
    for (int i = 0; i < g.t_points; ++i) {
        out << format_double(g.t_value(i));
        for (int j = 0; j < g.m_levels; ++j) out << ',' << format_double(field.values()(i, j));
        out << "\n";
    }
    write_text_file(path, out.str());
}

void write_eigenvalues_csv(const std::string& path, const EigenSystem& esys) {
    std::ostringstream out;
    out << "component,eigenvalue\n";
    for (int k = 0; k < esys.count(); ++k)
        out << (k + 1) << ',' << format_double(esys.eigenvalues(k)) << "\n";
    write_text_file(path, out.str());
}

void write_scores_csv(const std::string& path, const ScoreMatrix& scores) {
    std::ostringstream out;
    out << "subject";
    for (int k = 1; k <= scores.components(); ++k) out << ",s_" << k;
    out << "\n";
    for (int i = 0; i < scores.subjects(); ++i) {
        out << i;
        for (int k = 0; k < scores.components(); ++k)
            out << ',' << format_double(scores.s(i, k));
        out << "\n";
    }
    write_text_file(path, out.str());
}

namespace {

const char* method_name(CcaMethod method) {
    return method == CcaMethod::Fpca ? "fpca" : "tikhonov";
}

json tuning_json(const CcaTuning& tuning, CcaMethod method) {
    json obj;
    if (method == CcaMethod::Fpca) {
        obj["k_x"] = tuning.k_x;
        obj["k_y"] = tuning.k_y;
    } else {
        obj["eps_x"] = tuning.eps_x;
        obj["eps_y"] = tuning.eps_y;
    }
    return obj;
}

json sim_config_json(const SimConfig& config) {
    json obj;
    obj["n"] = config.n;
    obj["sigma"] = config.sigma;
    obj["case"] = config.score_case;
    obj["basis_size"] = config.basis_size;
    obj["m_levels"] = config.grid.m_levels;
    obj["t_points"] = config.grid.t_points;
    obj["seed"] = config.seed;
    obj["replicates"] = config.replicates;
    return obj;
}

} // namespace

void write_report_csv(const std::string& path, const ReplicateReport& report) {
    std::ostringstream out;
    out << "replicate,method,n,sigma,case,k_or_eps,abs_rho_err,imse_u,imse_v\n";
    for (const auto& row : report.rows) {
        out << row.replicate << ',' << method_name(report.method.method) << ','
            << report.config.n << ',' << format_double(report.config.sigma) << ','
            << report.config.score_case << ','
            << tuning_label(row.tuning, report.method.method) << ','
            << format_double(row.abs_rho_err) << ',' << format_double(row.u_err) << ','
            << format_double(row.v_err) << "\n";
    }
    write_text_file(path, out.str());
}

std::string report_summary_json(const ReplicateReport& report) {
    json obj;
    obj["method"] = method_name(report.method.method);
    obj["config"] = sim_config_json(report.config);
    obj["mean_abs_rho_err"] = report.mean_abs_rho_err;
    obj["imse_u"] = report.imse_u;
    obj["imse_v"] = report.imse_v;
    obj["selected_tuning_histogram"] = report.tuning_histogram;
    obj["subject_redraws"] = report.total_redraws;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["replicate"] = row.replicate;
        r["tuning"] = tuning_label(row.tuning, report.method.method);
        r["rho_hat"] = row.rho_hat;
        r["abs_rho_err"] = row.abs_rho_err;
        r["u_err"] = row.u_err;
        r["v_err"] = row.v_err;
        rows.push_back(std::move(r));
    }
    obj["replicates"] = std::move(rows);
    return obj.dump(2) + "\n";
}

std::string estimate_to_json(const CcaEstimate& est, const std::string& u_csv_ref,
                             const std::string& v_csv_ref) {
    json obj;
    obj["rho"] = est.rho;
    obj["method"] = method_name(est.method);
    obj["tuning"] = tuning_json(est.tuning, est.method);
    obj["rho_clipped"] = est.rho_clipped;
    obj["u_field_csv"] = u_csv_ref;
    obj["v_field_csv"] = v_csv_ref;
    json higher = json::array();
    for (const auto& pair : est.higher) higher.push_back(pair.rho);
    obj["higher_rho"] = std::move(higher);
    return obj.dump(2) + "\n";
}

std::string file_digest_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for digest: " + path);
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001B3ULL;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

std::string manifest_json(const std::string& command_line, const std::string& config_json,
                          std::uint64_t seed,
                          const std::vector<std::pair<std::string, std::string>>& inputs) {
    json obj;
    obj["tool"] = "wcca";
    obj["version"] = kLibraryVersion;
    obj["command"] = command_line;
    obj["seed"] = seed;
    obj["config"] = json::parse(config_json);
    json in = json::object();
    for (const auto& [name, path] : inputs) {
        json rec;
        rec["path"] = path;
        rec["fnv1a64"] = file_digest_hex(path);
        in[name] = std::move(rec);
    }
    obj["inputs"] = std::move(in);
    return obj.dump(2) + "\n";
}

} // namespace wcca
