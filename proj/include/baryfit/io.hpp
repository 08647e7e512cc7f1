#ifndef BARYFIT_IO_HPP
#define BARYFIT_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "baryfit/aaa.hpp"
#include "baryfit/core.hpp"

namespace baryfit {

/// Header of the trace CSV.
inline constexpr const char* kTraceHeader = "k,degree,support_re,support_im,raw_active_sq_err,l2_norm,linf_norm,branch";
/// Header of the sample CSV.
inline constexpr const char* kSampleHeader = "z_re,z_im,H_re,H_im";

/// Reads `z_re,z_im,H_re,H_im` rows after a header line. Throws DataError
/// with the line number on malformed rows and with both row numbers on
/// duplicate points.
SampleSet load_csv(const std::filesystem::path& path);
SampleSet parse_samples(std::istream& in);

/// Reads the first two columns (z_re, z_im) of a CSV with a header row.
std::vector<Complex> load_points_csv(const std::filesystem::path& path);

/// 17 significant digits per value.
void save_samples(const std::filesystem::path& path, const SampleSet& data);
void write_samples(std::ostream& out, const SampleSet& data);

/// One row per record, followed by a `# stop_reason=<reason>` comment line.
void save_trace(const std::filesystem::path& path, const FitTrace& trace);
void write_trace(std::ostream& out, const FitTrace& trace);

void save_model(const std::filesystem::path& path, const RationalModel& model);
std::string model_to_json(const RationalModel& model);
RationalModel load_model(const std::filesystem::path& path);
RationalModel model_from_json(const std::string& text);

/// Writes E.csv, A.csv, b.csv and c.csv into `dir` (created if missing);
/// each row holds interleaved re,im pairs.
void save_realization(const std::filesystem::path& dir, const Realization& re);

/// "%.17g"; parses back to the identical double.
std::string format_double(double v);

}  // namespace baryfit

#endif
