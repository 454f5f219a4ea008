#ifndef WCCA_IO_HPP
#define WCCA_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wcca/simulation.hpp"

namespace wcca {

inline constexpr char kLibraryVersion[] = "0.1.0";

/// Subjects with stable integer ids, each carrying one distribution curve.
struct Dataset {
    std::vector<int> subject_ids;           // ascending
    std::vector<DistributionCurve> curves;  // aligned with subject_ids
    GridConfig grid;

    Sample to_sample() const { return Sample(curves); }
};

/// 17-significant-digit formatting; round-trips doubles exactly.
std::string format_double(double value);

// Quantile-table files: CSV with a self-describing comment header, then
// `subject,t_index,q_1..q_m`, one row per (subject, time frame).
void write_quantile_table(const std::string& path, const Dataset& dataset);
Dataset read_quantile_table(const std::string& path);

/// Raw per-frame observation lists, one JSON object per line:
/// {"subject": id, "t_index": i, "values": [..]}.
struct SampleListEntry {
    int subject;
    int t_index;
    std::vector<double> values;
};
std::vector<SampleListEntry> read_sample_lists(const std::string& path);
void write_sample_lists(const std::string& path, const std::vector<SampleListEntry>& entries);

struct IngestReport {
    long frames = 0;
    long min_samples = 0;
    long max_samples = 0;
    long clipped_values = 0;
    double inferred_lo = 0.0;
    double inferred_hi = 0.0;
};

/**
 * Convert raw sample lists to a quantile dataset on the target grid.
 * Every subject must supply every time frame exactly once; the number of
 * frames fixes t_points. When the support is not supplied it is inferred
 * from the pooled sample range. Values outside the support are clamped
 * and counted.
 */
std::pair<Dataset, IngestReport> ingest_sample_lists(const std::vector<SampleListEntry>& entries,
                                                     int m_levels, bool support_given = false,
                                                     double support_lo = 0.0,
                                                     double support_hi = 1.0);

// JSON/CSV emitters.
std::string distribution_to_json(const Distribution& dist);
void write_field_csv(const std::string& path, const TangentField& field);
void write_eigenvalues_csv(const std::string& path, const EigenSystem& esys);
void write_scores_csv(const std::string& path, const ScoreMatrix& scores);
void write_report_csv(const std::string& path, const ReplicateReport& report);
std::string report_summary_json(const ReplicateReport& report);

/// Estimate serialization: scalars inline, weight fields as file
/// references to the CSV tables written next to the JSON.
std::string estimate_to_json(const CcaEstimate& est, const std::string& u_csv_ref,
                             const std::string& v_csv_ref);

/// FNV-1a 64-bit digest of a file, as fixed-width hex.
std::string file_digest_hex(const std::string& path);

/// Reproducibility manifest: command, configuration, master seed,
/// library version and input digests. No timestamps, so reruns are
/// byte-identical.
std::string manifest_json(const std::string& command_line, const std::string& config_json,
                          std::uint64_t seed,
                          const std::vector<std::pair<std::string, std::string>>& inputs);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace wcca

#endif // WCCA_IO_HPP
