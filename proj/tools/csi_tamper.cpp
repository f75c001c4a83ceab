// csi_tamper: simulate CSI captures, train the tamper detector, run online
// detection, and compare the three methods with ROC/AUC output.
//
// Exit codes for `detect`: 0 = TamperFree, 2 = Tampering, 1 = error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csit/channel_sim.hpp"
#include "csit/dataset_io.hpp"
#include "csit/detectors.hpp"
#include "csit/eval.hpp"

namespace {

using namespace csit;

// Dataset files ending in .csv use the CSV interop format; everything else
// is the binary CSID format.
bool is_csv(const std::filesystem::path& p) { return p.extension() == ".csv"; }

CsiDataset load_any(const std::filesystem::path& p) {
    return is_csv(p) ? load_dataset_csv(p) : load_dataset(p);
}

void save_any(const CsiDataset& ds, const std::filesystem::path& p) {
    if (is_csv(p))
        save_dataset_csv(ds, p);
    else
        save_dataset(ds, p);
}

int parse_orientation(const std::string& s) {
    if (s == "default" || s == "0") return 0;
    if (s.size() == 2 && s[0] == 'r' && s[1] >= '1' && s[1] <= '7') return s[1] - '0';
    throw DomainError("orientation must be 'default' or r1..r7, got '" + s + "'");
}

std::optional<double> parse_bandwidth(const std::string& s) {
    if (s == "auto") return kAutoBandwidth;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !(v > 0.0))
        throw DomainError("bandwidth must be 'auto' or a positive number, got '" + s + "'");
    return v;
}

DcaeConfig preset_by_name(const std::string& name, int sc) {
    if (name == "dcae1") return DcaeConfig::dcae1(sc);
    if (name == "dcae2") return DcaeConfig::dcae2(sc);
    throw DomainError("unknown preset '" + name + "' (expected dcae1 or dcae2)");
}

const char* decision_name(Decision d) {
    return d == Decision::TamperFree ? "tamper-free" : "TAMPERING";
}

std::string label_name(DatasetLabel label) {
    if (label.is_tamper_free()) return "tamper-free";
    if (label.is_tampered()) return "tampered(r" + std::to_string(int(label.raw)) + ")";
    return "unknown";
}

struct SimulateArgs {
    std::string scenario = "A";
    std::string orientation = "default";
    int frames = 1000;
    std::uint64_t seed = 0;
    int sc = 200;
    double snr_db = 30.0;
    double movement = -1.0; // <0 = use the scenario preset
    std::string output;
};

int cmd_simulate(const SimulateArgs& a) {
    SimConfig base;
    base.sc = a.sc;
    base.snr_db = a.snr_db;
    ScenarioPreset preset = scenario_preset(parse_scenario(a.scenario));
    if (a.movement >= 0.0) preset.movement_level = a.movement;

    CsiDataset ds = scenario_dataset(preset, parse_orientation(a.orientation), a.frames, a.seed, base);
    save_any(ds, a.output);
    std::cout << "wrote " << ds.frame_count() << " frames (sc=" << ds.sc << ", label "
              << label_name(ds.label) << ", scenario " << ds.scenario_tag << ") to " << a.output
              << "\n";
    return 0;
}

struct TrainArgs {
    std::string input;
    std::string output;
    std::string preset = "dcae1";
    TrainConfig cfg;
    std::string bandwidth = "1.0";
    std::uint32_t window = 1000;
    double eta_threshold = 0.5;
    int best_of = 1;
};

int cmd_train(const TrainArgs& a) {
    const CsiDataset ds = load_any(a.input);
    if (!ds.label.is_tamper_free()) {
        std::cerr << "refusing to train on " << label_name(ds.label) << " data: the detector is "
                  << "semi-supervised and must only see tamper-free captures\n";
        return 1;
    }

    const DcaeConfig config = preset_by_name(a.preset, ds.sc);
    std::vector<double> history;
    DcaeModel model = a.best_of > 1 ? train_best(config, ds, a.cfg, a.best_of, &history)
                                    : build_dcae(config, a.cfg.seed);
    if (a.best_of <= 1) history = train(model, ds, a.cfg);

    DetectorProfile profile = make_profile(std::move(model), ds, parse_bandwidth(a.bandwidth),
                                           a.window, a.eta_threshold);
    save_profile(profile, a.output);

    Eigen::VectorXf scores = profile.offline_pdf.samples;
    std::sort(scores.begin(), scores.end());
    std::printf("trained %s on %d frames: final MSE %.6g\n", config.name.c_str(), ds.frame_count(),
                history.back());
    std::printf("offline anomaly scores: min %.6g  median %.6g  max %.6g  (bandwidth %.6g)\n",
                double(scores[0]), double(scores[scores.size() / 2]),
                double(scores[scores.size() - 1]), profile.offline_pdf.bandwidth);
    std::cout << "profile written to " << a.output << "\n";
    return 0;
}

struct DetectArgs {
    int method = 3;
    std::string profile;
    std::string offline;
    std::string input;
    double threshold = -1.0;
};

int cmd_detect(const DetectArgs& a) {
    const CsiDataset window = load_any(a.input);
    Verdict verdict;
    const char* stat_name = "mean distance";

    if (a.method == 1) {
        if (a.offline.empty() || a.threshold < 0.0)
            throw DomainError("method 1 needs --offline and a non-negative --threshold");
        verdict = method1_decide(load_any(a.offline), window, a.threshold);
    } else if (a.method == 2) {
        if (a.profile.empty() || a.offline.empty() || a.threshold < 0.0)
            throw DomainError("method 2 needs --profile, --offline and a non-negative --threshold");
        const DetectorProfile p = load_profile(a.profile);
        verdict = method2_decide(p.model, load_any(a.offline), window, a.threshold);
    } else if (a.method == 3) {
        if (a.profile.empty()) throw DomainError("method 3 needs --profile");
        verdict = method3_online(load_profile(a.profile), window);
        stat_name = "eta";
    } else {
        throw DomainError("--method must be 1, 2 or 3");
    }

    std::printf("method %d: %s %.6g, threshold %.6g -> %s\n", a.method, stat_name,
                verdict.statistic, verdict.threshold_used, decision_name(verdict.decision));
    return verdict.decision == Decision::TamperFree ? 0 : 2;
}

struct RocArgs {
    std::string train_path;
    std::string test_free;
    std::string test_tampered;
    std::vector<std::string> presets{"dcae1"};
    TrainConfig cfg;
    std::string bandwidth = "1.0";
    int window = 1000;
    std::string output = "roc.csv";
    std::string svg;
};

int cmd_roc(const RocArgs& a) {
    const CsiDataset train_set = load_any(a.train_path);

    CompareConfig cc;
    for (const auto& name : a.presets) cc.presets.push_back(preset_by_name(name, train_set.sc));
    cc.train_cfg = a.cfg;
    cc.kde_bandwidth = parse_bandwidth(a.bandwidth);
    cc.window = a.window;

    const auto results =
        compare_methods(train_set, load_any(a.test_free), load_any(a.test_tampered), cc);
    write_results_csv(results, a.output);
    if (!a.svg.empty()) write_roc_svg(results, a.svg);

    std::printf("%-16s %8s %12s\n", "method", "auc", "tpr@fpr=0");
    for (const auto& r : results)
        std::printf("%-16s %8.4f %12.4f\n", r.method.c_str(), r.auc, r.tpr_at_fpr0);
    std::cout << "results written to " << a.output;
    if (!a.svg.empty()) std::cout << " and " << a.svg;
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSI physical-tamper-attack detection toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "generate a synthetic CSI dataset");
    s->add_option("--scenario", sim.scenario, "environment scenario A..G")->capture_default_str();
    s->add_option("--orientation", sim.orientation, "'default' or r1..r7")->capture_default_str();
    s->add_option("--frames", sim.frames, "number of frames")->capture_default_str();
    s->add_option("--seed", sim.seed, "simulation seed")->capture_default_str();
    s->add_option("--sc", sim.sc, "subcarriers per frame")->capture_default_str();
    s->add_option("--snr", sim.snr_db, "SNR in dB (inf disables noise)")->capture_default_str();
    s->add_option("--movement", sim.movement, "override the preset movement level (dB jitter)");
    s->add_option("-o,--output", sim.output, "output dataset (.csid binary or .csv)")->required();
    s->set_config("--config", "", "key=value config file with these options");

    TrainArgs tr;
    auto* t = app.add_subcommand("train", "offline phase: train the DCAE and fit the score pdf");
    t->add_option("-i,--input", tr.input, "tamper-free training dataset")->required();
    t->add_option("-o,--output", tr.output, "output profile file")->required();
    t->add_option("--preset", tr.preset, "dcae1 or dcae2")->capture_default_str();
    t->add_option("--epochs", tr.cfg.epochs)->capture_default_str();
    t->add_option("--batch-size", tr.cfg.batch_size)->capture_default_str();
    t->add_option("--lr", tr.cfg.learning_rate)->capture_default_str();
    t->add_option("--seed", tr.cfg.seed)->capture_default_str();
    t->add_option("--bandwidth", tr.bandwidth, "KDE bandwidth ('auto' = Scott)")->capture_default_str();
    t->add_option("--window", tr.window, "online window size N_On")->capture_default_str();
    t->add_option("--eta-threshold", tr.eta_threshold)->capture_default_str();
    t->add_option("--best", tr.best_of, "train k seeds, keep the lowest final loss")
        ->capture_default_str();

    DetectArgs de;
    auto* d = app.add_subcommand("detect", "online phase: decide tamper-free vs tampering");
    d->add_option("--method", de.method, "1, 2 or 3")->capture_default_str();
    d->add_option("--profile", de.profile, "detector profile (methods 2-3)");
    d->add_option("--offline", de.offline, "offline dataset (methods 1-2)");
    d->add_option("-i,--input", de.input, "online window dataset")->required();
    d->add_option("--threshold", de.threshold, "distance threshold (methods 1-2)");

    RocArgs roc;
    auto* r = app.add_subcommand("roc", "compare the three methods with ROC/AUC");
    r->add_option("--train", roc.train_path, "tamper-free training dataset")->required();
    r->add_option("--test-free", roc.test_free, "held-out tamper-free test dataset")->required();
    r->add_option("--test-tampered", roc.test_tampered, "tampered test dataset")->required();
    r->add_option("--preset", roc.presets, "presets to evaluate (repeatable)")->capture_default_str();
    r->add_option("--epochs", roc.cfg.epochs)->capture_default_str();
    r->add_option("--batch-size", roc.cfg.batch_size)->capture_default_str();
    r->add_option("--lr", roc.cfg.learning_rate)->capture_default_str();
    r->add_option("--seed", roc.cfg.seed)->capture_default_str();
    r->add_option("--bandwidth", roc.bandwidth, "KDE bandwidth ('auto' = Scott)")->capture_default_str();
    r->add_option("--window", roc.window, "frames per evaluation window")->capture_default_str();
    r->add_option("-o,--output", roc.output, "results CSV path")->capture_default_str();
    r->add_option("--svg", roc.svg, "optional ROC plot path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*s) return cmd_simulate(sim);
        if (*t) return cmd_train(tr);
        if (*d) return cmd_detect(de);
        if (*r) return cmd_roc(roc);
    } catch (const csit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
