#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "desmoke/batch.hpp"
#include "desmoke/imageio.hpp"
#include "desmoke/metrics.hpp"
#include "desmoke/pipeline.hpp"
#include "desmoke/synth.hpp"

namespace desmoke::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string input;
    std::string output;
    std::string enhanced;
    std::string truth;
    std::string emit_smoke;
    std::string emit_smoke_raw;
    std::string trace;
    SolverParams params;
    SmokeSpec smoke;
    int jobs = 1;
};

void add_solver_flags(CLI::App& cmd, SolverParams& p) {
    cmd.add_option("--lambda", p.lambda, "Fidelity weight")->capture_default_str();
    cmd.add_option("--beta-x", p.betas.x, "Horizontal difference weight")->capture_default_str();
    cmd.add_option("--beta-y", p.betas.y, "Vertical difference weight")->capture_default_str();
    cmd.add_option("--beta-c", p.betas.c, "Inter-channel difference weight")->capture_default_str();
    cmd.add_option("--rho", p.rho, "Augmented Lagrangian penalty")->capture_default_str();
    cmd.add_option("--epsilon", p.epsilon, "Shrinkage magnitude floor")->capture_default_str();
    cmd.add_option("--max-iter", p.max_iter, "Iteration cap")->capture_default_str();
    cmd.add_option("--tol", p.tol, "Relative residual tolerance")->capture_default_str();
}

void write_trace(const fs::path& path, const SolveDiagnostics& diag) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError(IoError::Kind::WriteFailure, "cannot write trace " + path.string());
    out << "iter,energy,primal_res,dual_res\n";
    char buf[128];
    for (int k = 0; k < diag.iterations; ++k) {
        std::snprintf(buf, sizeof buf, "%d,%.17e,%.17e,%.17e\n", k + 1, diag.energy_trace[k],
                      diag.primal_residual_trace[k], diag.dual_residual_trace[k]);
        out << buf;
    }
    out << "# converged=" << (diag.converged ? "true" : "false") << " iterations=" << diag.iterations << '\n';
    if (!out) throw IoError(IoError::Kind::WriteFailure, "write failed for " + path.string());
}

// Writes F / max(F) and a JSON sidecar recording the scale.
void write_smoke_visualization(const fs::path& path, const ImageTensor& F) {
    double peak = 0.0;
    double low = F[0];
    for (double v : F.values()) {
        peak = std::max(peak, v);
        low = std::min(low, v);
    }
    const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
    ImageTensor vis = F;
    vis *= scale;
    save_image(clamp01(std::move(vis)), path);

    nlohmann::ordered_json meta;
    meta["image"] = path.filename().string();
    meta["scale"] = scale;
    meta["max"] = peak;
    meta["min"] = low;
    meta["note"] = "pixel = clamp(F * scale, 0, 1)";
    fs::path sidecar = path;
    sidecar += ".json";
    std::ofstream out(sidecar, std::ios::trunc);
    if (!out) throw IoError(IoError::Kind::WriteFailure, "cannot write " + sidecar.string());
    out << meta.dump(2) << '\n';
}

int cmd_desmoke(const RunConfig& cfg, std::ostream& out) {
    const ImageTensor I = load_image(cfg.input);
    const DecompositionResult result = decompose(I, cfg.params);
    save_image(result.J, cfg.output);
    if (!cfg.emit_smoke.empty()) write_smoke_visualization(cfg.emit_smoke, result.F);
    if (!cfg.emit_smoke_raw.empty()) save_image(clamp01(result.F), cfg.emit_smoke_raw);
    if (!cfg.trace.empty()) write_trace(cfg.trace, result.diag);
    char buf[256];
    std::snprintf(buf, sizeof buf, "iterations=%d converged=%s alpha=(%.6f, %.6f, %.6f)\n", result.diag.iterations,
                  result.diag.converged ? "true" : "false", result.alpha[0], result.alpha[1], result.alpha[2]);
    out << buf;
    return kOk;
}

int cmd_metrics(const RunConfig& cfg, std::ostream& out) {
    const ImageTensor original = load_image(cfg.input);
    const ImageTensor enhanced = load_image(cfg.enhanced);
    std::optional<ImageTensor> truth;
    if (!cfg.truth.empty()) truth = load_image(cfg.truth);
    const MetricReport report = evaluate(original, enhanced, truth ? &*truth : nullptr);
    out << to_json(report) << "\n\n" << to_table(report);
    return kOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    const ImageTensor clean = load_image(cfg.input);
    const ImageTensor field = generate_smoke_field(clean.height(), clean.width(), cfg.smoke);
    save_image(apply_smoke(clean, field), cfg.output);

    fs::path field_path = cfg.emit_smoke;
    if (field_path.empty()) {
        const fs::path o(cfg.output);
        field_path = o.parent_path() / (o.stem().string() + "_smoke" + o.extension().string());
    }
    save_image(field, field_path);
    out << "seed=" << cfg.smoke.seed << " smoke=" << field_path.string() << '\n';
    return kOk;
}

int cmd_batch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const BatchSummary summary = run_batch(cfg.input, cfg.output, cfg.params, cfg.jobs, &err);
    const std::string table = summary_table(summary);
    const fs::path summary_path = fs::path(cfg.output) / "summary.csv";
    std::ofstream file(summary_path, std::ios::trunc);
    if (!file) throw IoError(IoError::Kind::WriteFailure, "cannot write " + summary_path.string());
    file << table;
    out << table;
    if (summary.entries.empty()) {
        err << "error: no images found in " << cfg.input << '\n';
        return kIo;
    }
    return summary.succeeded == 0 ? kProcessing : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Surgical smoke removal by variational layer decomposition", "desmoke"};
    app.require_subcommand(1);

    auto* desmoke_cmd = app.add_subcommand("desmoke", "Remove smoke from one image");
    desmoke_cmd->add_option("--input", cfg.input, "Smoked image (.png/.ppm)")->required();
    desmoke_cmd->add_option("--output", cfg.output, "Enhanced image to write")->required();
    desmoke_cmd->add_option("--emit-smoke", cfg.emit_smoke, "Write the smoke layer rescaled by 1/max");
    desmoke_cmd->add_option("--emit-smoke-raw", cfg.emit_smoke_raw, "Write the smoke layer clamped to [0,1]");
    desmoke_cmd->add_option("--trace", cfg.trace, "Write per-iteration diagnostics as CSV");
    add_solver_flags(*desmoke_cmd, cfg.params);

    auto* metrics_cmd = app.add_subcommand("metrics", "Compare an original and an enhanced image");
    metrics_cmd->add_option("--input", cfg.input, "Original image")->required();
    metrics_cmd->add_option("--enhanced,--output", cfg.enhanced, "Enhanced image")->required();
    metrics_cmd->add_option("--truth", cfg.truth, "Ground-truth clean image for PSNR");

    auto* synth_cmd = app.add_subcommand("synth", "Overlay synthetic smoke on a clean image");
    synth_cmd->add_option("--input", cfg.input, "Clean image")->required();
    synth_cmd->add_option("--output", cfg.output, "Smoked image to write")->required();
    synth_cmd->add_option("--emit-smoke", cfg.emit_smoke, "Where to write the smoke field");
    synth_cmd->add_option("--seed", cfg.smoke.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--strength", cfg.smoke.strength, "Peak smoke intensity")->capture_default_str();
    synth_cmd->add_option("--smoothness", cfg.smoke.smoothness, "Correlation length (px)")->capture_default_str();
    synth_cmd->add_option("--chroma-jitter", cfg.smoke.chroma_jitter, "Per-channel deviation")->capture_default_str();

    auto* batch_cmd = app.add_subcommand("batch", "Remove smoke from every image in a directory");
    batch_cmd->add_option("--input", cfg.input, "Input directory")->required();
    batch_cmd->add_option("--output", cfg.output, "Output directory")->required();
    batch_cmd->add_option("--jobs", cfg.jobs, "Parallel workers")->capture_default_str()->check(CLI::PositiveNumber);
    add_solver_flags(*batch_cmd, cfg.params);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        cfg.params.validate();
        cfg.smoke.validate();
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (desmoke_cmd->parsed()) return cmd_desmoke(cfg, out);
        if (metrics_cmd->parsed()) return cmd_metrics(cfg, out);
        if (synth_cmd->parsed()) return cmd_synth(cfg, out);
        return cmd_batch(cfg, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kProcessing;
    }
}

}  // namespace desmoke::cli
