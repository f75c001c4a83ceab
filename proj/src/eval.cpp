#include "csit/eval.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace csit {

RocCurve roc_curve(const std::vector<double>& statistics, const std::vector<int>& labels,
                   Direction direction) {
    if (statistics.size() != labels.size())
        throw ShapeError("roc_curve: statistics and labels differ in length");
    const int n_pos = static_cast<int>(std::count(labels.begin(), labels.end(), 1));
    const int n_neg = static_cast<int>(labels.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw DegenerateLabelsError("roc_curve: need at least one positive and one negative");

    // Group by value; walking groups from the "nothing alarmed" end gives the
    // cumulative counts of strictly-passed samples at each threshold.
    std::map<double, std::pair<int, int>> groups; // value -> (pos, neg)
    for (std::size_t i = 0; i < statistics.size(); ++i) {
        auto& g = groups[statistics[i]];
        (labels[i] == 1 ? g.first : g.second) += 1;
    }

    const double inf = std::numeric_limits<double>::infinity();
    RocCurve curve;
    curve.fpr.reserve(groups.size() + 2);

    auto push = [&](double thr, int cum_pos, int cum_neg) {
        curve.thresholds.push_back(thr);
        curve.fpr.push_back(double(cum_neg) / n_neg);
        curve.tpr.push_back(double(cum_pos) / n_pos);
    };

    int cum_pos = 0, cum_neg = 0;
    if (direction == Direction::HigherIsPositive) {
        // Positive iff stat > T; sweep T from +inf down.
        push(inf, 0, 0);
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            push(it->first, cum_pos, cum_neg); // samples equal to T stay negative
            cum_pos += it->second.first;
            cum_neg += it->second.second;
        }
        push(-inf, cum_pos, cum_neg);
    } else {
        // Positive iff stat < T; sweep T from -inf up.
        push(-inf, 0, 0);
        for (const auto& [value, counts] : groups) {
            push(value, cum_pos, cum_neg);
            cum_pos += counts.first;
            cum_neg += counts.second;
        }
        push(inf, cum_pos, cum_neg);
    }
    return curve;
}

double auc(const RocCurve& curve) {
    if (curve.size() < 2) throw DomainError("auc: curve needs at least two points");
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve.fpr[i] - curve.fpr[i - 1]) * 0.5 * (curve.tpr[i] + curve.tpr[i - 1]);
    return area;
}

double tpr_at_fpr0(const RocCurve& curve) {
    double best = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve.fpr[i] == 0.0) best = std::max(best, curve.tpr[i]);
    return best;
}

namespace {

// Non-overlapping windows, stride = window length, trailing remainder dropped.
std::vector<CsiDataset> split_windows(const CsiDataset& ds, int window) {
    std::vector<CsiDataset> out;
    for (int first = 0; first + window <= ds.frame_count(); first += window) {
        CsiDataset w{ds.sc, ds.frames.middleRows(first, window), ds.label, ds.scenario_tag};
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace

std::vector<MethodResult> compare_methods(const CsiDataset& train_set,
                                          const CsiDataset& test_tamper_free,
                                          const CsiDataset& test_tampered,
                                          const CompareConfig& config) {
    if (config.presets.empty()) throw ConfigError("compare_methods: at least one preset required");
    if (config.window < 2) throw ConfigError("compare_methods: window must be >= 2");

    const auto free_windows = split_windows(test_tamper_free, config.window);
    const auto tampered_windows = split_windows(test_tampered, config.window);
    if (free_windows.empty() || tampered_windows.empty())
        throw InsufficientDataError("compare_methods: each test set needs >= 1 full window");

    std::vector<const CsiDataset*> windows;
    std::vector<int> labels;
    for (const auto& w : free_windows) {
        windows.push_back(&w);
        labels.push_back(0);
    }
    for (const auto& w : tampered_windows) {
        windows.push_back(&w);
        labels.push_back(1);
    }

    std::vector<MethodResult> results;
    auto add_result = [&](const std::string& name, const std::vector<double>& stats, Direction dir) {
        RocCurve curve = roc_curve(stats, labels, dir);
        results.push_back({name, auc(curve), tpr_at_fpr0(curve), std::move(curve)});
    };

    // Method 1: raw CSI distances.
    {
        std::vector<double> stats;
        stats.reserve(windows.size());
        for (const auto* w : windows)
            stats.push_back(mean_pairwise_distance(train_set.frames, w->frames));
        add_result("method1", stats, Direction::HigherIsPositive);
    }

    // DCAE-based methods, one trained model per preset.
    const bool multi = config.presets.size() > 1;
    for (std::size_t p = 0; p < config.presets.size(); ++p) {
        DcaeModel model = build_dcae(config.presets[p], config.train_cfg.seed);
        train(model, train_set, config.train_cfg);

        if (p == 0) {
            const ErrorMatrix e_off = reconstruction_errors(model, train_set);
            std::vector<double> stats;
            stats.reserve(windows.size());
            for (const auto* w : windows)
                stats.push_back(mean_pairwise_distance(e_off, reconstruction_errors(model, *w)));
            add_result("method2", stats, Direction::HigherIsPositive);
        }

        DetectorProfile profile = make_profile(std::move(model), train_set, config.kde_bandwidth,
                                               static_cast<std::uint32_t>(config.window));
        std::vector<double> stats;
        stats.reserve(windows.size());
        for (const auto* w : windows) stats.push_back(method3_eta(profile, *w));
        add_result(multi ? "method3_" + config.presets[p].name : "method3", stats,
                   Direction::LowerIsPositive);
    }
    return results;
}

void write_results_csv(const std::vector<MethodResult>& results,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << "method,auc,tpr_at_fpr0\n";
    std::ostringstream line;
    line.precision(6);
    line << std::fixed;
    for (const auto& r : results) {
        line.str({});
        line << r.method << ',' << r.auc << ',' << r.tpr_at_fpr0;
        out << line.str() << '\n';
    }
    if (!out) throw CorruptError("write failed for " + path.string());
}

void write_roc_svg(const std::vector<MethodResult>& results, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");

    constexpr int kSize = 480;
    constexpr int kMargin = 50;
    constexpr int kPlot = kSize - 2 * kMargin;
    const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

    auto px = [&](double fpr) { return kMargin + fpr * kPlot; };
    auto py = [&](double tpr) { return kSize - kMargin - tpr * kPlot; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Frame, gridlines and the chance diagonal.
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlot
        << "\" height=\"" << kPlot << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 1; i < 5; ++i) {
        const double t = i / 5.0;
        out << "<line x1=\"" << px(t) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t) << "\" y2=\""
            << py(1) << "\" stroke=\"#dddddd\"/>\n";
        out << "<line x1=\"" << px(0) << "\" y1=\"" << py(t) << "\" x2=\"" << px(1) << "\" y2=\""
            << py(t) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << px(t) << "\" y=\"" << kSize - kMargin + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << t << "</text>\n";
        out << "<text x=\"" << kMargin - 8 << "\" y=\"" << py(t) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << t << "</text>\n";
    }
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(1) << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">false positive rate</text>\n";
    out << "<text x=\"14\" y=\"" << kSize / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << kSize / 2
        << ")\">true positive rate</text>\n";

    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out << "<polyline fill=\"none\" stroke=\"" << colors[i % 6] << "\" stroke-width=\"1.8\" points=\"";
        for (std::size_t k = 0; k < r.curve.size(); ++k)
            out << px(r.curve.fpr[k]) << ',' << py(r.curve.tpr[k]) << ' ';
        out << "\"/>\n";
        std::ostringstream label;
        label.precision(3);
        label << std::fixed << r.method << " (AUC " << r.auc << ")";
        const double ly = kMargin + 16 + 16 * static_cast<double>(i);
        out << "<line x1=\"" << px(0.45) << "\" y1=\"" << ly - 4 << "\" x2=\"" << px(0.52)
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colors[i % 6] << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << px(0.54) << "\" y=\"" << ly
            << "\" font-size=\"12\" dominant-baseline=\"text-after-edge\">" << label.str() << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw CorruptError("write failed for " + path.string());
}

} // namespace csit
