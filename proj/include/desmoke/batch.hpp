#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "desmoke/spectral.hpp"

namespace desmoke {

/// Spectral kernels keyed by image size for one fixed parameter set.
/// Lookups are shared; insertion happens once per size under a lock.
class KernelCache {
public:
    explicit KernelCache(SolverParams params);

    std::shared_ptr<const SpectralKernel> get(std::size_t height, std::size_t width);
    std::size_t size() const;

private:
    SolverParams params_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const SpectralKernel>> kernels_;
};

struct BatchEntry {
    std::string file;
    bool ok = false;
    std::string error;
    double re = 0.0;
    int iterations = 0;
    bool converged = false;
    double wall_ms = 0.0;
};

struct BatchSummary {
    std::vector<BatchEntry> entries;  // sorted by file name
    std::size_t succeeded = 0;
    std::size_t failed = 0;
    std::size_t kernels_built = 0;
};

/// Image files (.png, .ppm, .pnm) directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/// Desmokes every image in `input_dir` into `output_dir` under the same file
/// name, using `jobs` worker threads. Per-file failures are recorded and
/// logged to `log` (if given) and do not stop the run. Output bytes do not
/// depend on `jobs`.
BatchSummary run_batch(const std::filesystem::path& input_dir, const std::filesystem::path& output_dir,
                       const SolverParams& params, int jobs, std::ostream* log = nullptr);

/// CSV with one row per file (`file,status,re,iterations,converged,wall_ms`)
/// followed by `mean` and `std` rows over the successful files.
std::string summary_table(const BatchSummary& summary);

/// Mean and sample standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& values);

}  // namespace desmoke
