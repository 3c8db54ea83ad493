#ifndef ICVISTREAM_CSVIO_HPP
#define ICVISTREAM_CSVIO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "icvistream/bench.hpp"

namespace icvistream {

/// Read a d-feature CSV, optionally with a trailing integer label
/// column. A non-numeric first line is treated as a header. Errors
/// carry the offending line number.
Dataset ingest_csv(const std::filesystem::path& path, bool has_labels);

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data,
                       bool with_labels);

/// t, assigned_cluster, k, P, rho_a, v, icvi_value (+ optional ari column).
void write_trace_csv(const std::filesystem::path& path, const std::vector<StepReport>& trace,
                     const std::vector<double>* ari_so_far = nullptr);

/// Atomic write (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_double(double v); // 17 significant digits

} // namespace icvistream

#endif
