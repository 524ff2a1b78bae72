#include "desmoke/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "desmoke/imageio.hpp"
#include "desmoke/metrics.hpp"
#include "desmoke/pipeline.hpp"

namespace desmoke {

namespace fs = std::filesystem;

KernelCache::KernelCache(SolverParams params) : params_(params) { params_.validate(); }

std::shared_ptr<const SpectralKernel> KernelCache::get(std::size_t height, std::size_t width) {
    const std::lock_guard lock(mutex_);
    auto& slot = kernels_[{height, width}];
    if (!slot) slot = std::make_shared<const SpectralKernel>(height, width, params_);
    return slot;
}

std::size_t KernelCache::size() const {
    const std::lock_guard lock(mutex_);
    return kernels_.size();
}

std::vector<fs::path> list_images(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        try {
            ImageFileRef::from_path(entry.path());
        } catch (const IoError&) {
            continue;
        }
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

BatchSummary run_batch(const fs::path& input_dir, const fs::path& output_dir, const SolverParams& params, int jobs,
                       std::ostream* log) {
    params.validate();
    if (jobs < 1) throw ParameterError("jobs must be at least 1");
    if (!fs::is_directory(input_dir)) {
        throw IoError(IoError::Kind::NotFound, "input directory not found: " + input_dir.string());
    }
    fs::create_directories(output_dir);

    const std::vector<fs::path> files = list_images(input_dir);
    BatchSummary summary;
    summary.entries.resize(files.size());
    KernelCache cache(params);
    std::mutex log_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            BatchEntry& entry = summary.entries[i];
            entry.file = files[i].filename().string();
            const auto start = std::chrono::steady_clock::now();
            try {
                const ImageTensor I = load_image(files[i]);
                const auto kernel = cache.get(I.height(), I.width());
                const DecompositionResult result = decompose(I, params, *kernel);
                save_image(result.J, output_dir / files[i].filename());
                entry.re = re_metric(I, result.J);
                entry.iterations = result.diag.iterations;
                entry.converged = result.diag.converged;
                entry.ok = true;
            } catch (const std::exception& e) {
                entry.error = e.what();
                if (log) {
                    const std::lock_guard lock(log_mutex);
                    *log << "error: " << files[i].string() << ": " << e.what() << '\n';
                }
            }
            entry.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(files.size(), 1));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (const auto& e : summary.entries) (e.ok ? summary.succeeded : summary.failed)++;
    summary.kernels_built = cache.size();
    return summary;
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return {mean, std::sqrt(acc / static_cast<double>(values.size() - 1))};
}

std::string summary_table(const BatchSummary& summary) {
    std::string out = "file,status,re,iterations,converged,wall_ms\n";
    char buf[512];
    std::vector<double> re, iters, wall;
    for (const auto& e : summary.entries) {
        if (e.ok) {
            std::snprintf(buf, sizeof buf, "%s,ok,%.6f,%d,%s,%.3f\n", e.file.c_str(), e.re, e.iterations,
                          e.converged ? "true" : "false", e.wall_ms);
            re.push_back(e.re);
            iters.push_back(e.iterations);
            wall.push_back(e.wall_ms);
        } else {
            std::snprintf(buf, sizeof buf, "%s,failed,,,,%.3f\n", e.file.c_str(), e.wall_ms);
        }
        out += buf;
    }
    const auto [re_m, re_s] = mean_std(re);
    const auto [it_m, it_s] = mean_std(iters);
    const auto [wall_m, wall_s] = mean_std(wall);
    std::snprintf(buf, sizeof buf, "mean,,%.6f,%.2f,,%.3f\nstd,,%.6f,%.2f,,%.3f\n", re_m, it_m, wall_m, re_s, it_s,
                  wall_s);
    out += buf;
    return out;
}

}  // namespace desmoke
