#include "nfs/cli.hpp"

#include "nfs/dataset.hpp"
#include "nfs/linguistics.hpp"
#include "nfs/serialization.hpp"
#include "nfs/training.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace nfs::cli {

namespace {

namespace fs = std::filesystem;

// Problems with the contents of input files or with the requested work.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void require_input(const std::string& path) {
    if (!fs::is_regular_file(path)) throw DataError("input file '" + path + "' does not exist");
}

void require_output(const std::string& path) {
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent))
        throw DataError("output directory '" + parent.string() + "' does not exist");
}

// Writes to `path` when given, otherwise to `out`.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw DataError("write to '" + path + "' failed");
}

struct GenerateArgs {
    double m = 10.0;
    double sigma = 2.0;
    int grid_n = 21;
    std::string out;
};

struct TrainArgs {
    std::string data;
    std::string kind = "tsk";
    std::size_t rules = 4;
    std::size_t epochs = 100;
    double lr = 0.01;
    std::uint64_t seed = 1;
    std::string model_out;
    std::string report_out;
    std::string config;
};

struct DescribeArgs {
    std::string model;
    std::string data;
    std::string format = "text";
    std::string out;
    bool literal = false;
};

struct EvalArgs {
    std::string model;
    std::string data;
};

struct CurvesArgs {
    std::string model;
    std::string attr;
    std::size_t n_points = 201;
    std::string data;
    std::string out;
};

void run_generate(const GenerateArgs& a, std::ostream& out) {
    require_output(a.out);
    const auto d = four_gausses(a.m, a.sigma, a.grid_n);
    save_csv(d, a.out);
    out << "wrote " << d.size() << " rows to " << a.out << '\n';
}

// Settings from the JSON config file, overridden by flags given on the command line.
TrainConfig train_config(const TrainArgs& a, const CLI::App& cmd) {
    nlohmann::json file = nlohmann::json::object();
    if (!a.config.empty()) {
        require_input(a.config);
        std::ifstream in(a.config);
        try {
            in >> file;
        } catch (const nlohmann::json::exception& e) {
            throw DataError("config '" + a.config + "': " + e.what());
        }
        if (!file.is_object()) throw DataError("config '" + a.config + "': expected a JSON object");
    }

    auto pick = [&](const char* flag, const char* key, auto cli_value) {
        using T = decltype(cli_value);
        if (cmd.get_option(flag)->count() > 0 || !file.contains(key)) return cli_value;
        try {
            return file.at(key).template get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError("config '" + a.config + "': field '" + key + "': " + e.what());
        }
    };

    TrainConfig cfg;
    const auto kind_name = pick("--kind", "kind", a.kind);
    const auto kind = parse_system_kind(kind_name);
    if (!kind) throw DataError("unknown system kind '" + kind_name + "'");
    cfg.kind = *kind;
    cfg.n_rules = pick("--rules", "rules", a.rules);
    cfg.epochs = pick("--epochs", "epochs", a.epochs);
    cfg.learning_rate = pick("--lr", "learning_rate", a.lr);
    cfg.seed = pick("--seed", "seed", a.seed);
    return cfg;
}

void run_train(const TrainArgs& a, const CLI::App& cmd, std::ostream& out) {
    require_input(a.data);
    require_output(a.model_out);
    if (!a.report_out.empty()) require_output(a.report_out);
    const auto cfg = train_config(a, cmd);
    const auto d = load_csv(a.data);

    const auto report = train(d, cfg);
    std::string csv = "epoch,rmse\n";
    for (std::size_t e = 0; e < report.rmse_per_epoch.size(); ++e) {
        out << "epoch " << e << " rmse " << number(report.rmse_per_epoch[e]) << '\n';
        csv += std::to_string(e) + "," + number(report.rmse_per_epoch[e]) + "\n";
    }
    save_rulebase(report.final_rulebase, a.model_out);
    if (!a.report_out.empty()) emit(a.report_out, out, csv);
}

void run_describe(const DescribeArgs& a, std::ostream& out) {
    require_input(a.model);
    require_input(a.data);
    if (!a.out.empty()) require_output(a.out);
    const auto rb = load_rulebase(a.model);
    const auto stats = compute_stats(load_csv(a.data));
    const auto description = describe_rulebase(rb, stats, LabelOptions{a.literal});
    if (a.format == "json") {
        auto j = to_json(description);
        j["text"] = render_text(description);
        emit(a.out, out, j.dump(2) + "\n");
    } else {
        emit(a.out, out, render_text(description));
    }
}

void run_eval(const EvalArgs& a, std::ostream& out) {
    require_input(a.model);
    require_input(a.data);
    const auto rb = load_rulebase(a.model);
    const auto d = load_csv(a.data);
    out << "rmse " << number(rmse(rb, d)) << '\n';
}

std::pair<double, double> support_hint(const MembershipFunction& f) {
    return std::visit(
        [](const auto& s) -> std::pair<double, double> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Triangular>) {
                return {s.a, s.c};
            } else if constexpr (std::is_same_v<T, Trapezoidal>) {
                return {s.a, s.d};
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                return {s.m - 3.0 * s.sigma, s.m + 3.0 * s.sigma};
            } else if constexpr (std::is_same_v<T, Singleton>) {
                return {s.a - 1.0, s.a + 1.0};
            } else if constexpr (std::is_same_v<T, Semitriangular>) {
                const double w = std::abs(s.b - s.a);
                return {std::min(s.a, s.b) - w, std::max(s.a, s.b) + w};
            } else {
                return {s.c - 6.0 / std::abs(s.s), s.c + 6.0 / std::abs(s.s)};
            }
        },
        f.shape());
}

void run_curves(const CurvesArgs& a, std::ostream& out) {
    require_input(a.model);
    if (!a.data.empty()) require_input(a.data);
    if (!a.out.empty()) require_output(a.out);
    if (a.n_points < 2) throw DataError("--n-points must be at least 2");
    const auto rb = load_rulebase(a.model);

    // Per rule: the fuzzy set drawn for the attribute (nullopt = unconstrained).
    std::vector<std::optional<MembershipFunction>> sets;
    std::optional<std::size_t> attr_index;
    const auto& names = rb.input_names();
    if (auto it = std::find(names.begin(), names.end(), a.attr); it != names.end()) {
        attr_index = static_cast<std::size_t>(it - names.begin());
    } else if (a.attr != rb.output_name()) {
        std::size_t idx = 0;
        auto [ptr, ec] = std::from_chars(a.attr.data(), a.attr.data() + a.attr.size(), idx);
        if (ec != std::errc{} || ptr != a.attr.data() + a.attr.size() || idx >= names.size())
            throw DataError("model has no attribute '" + a.attr + "'");
        attr_index = idx;
    }

    for (const auto& rule : rb.rules()) {
        if (!attr_index) {
            const auto* ma = std::get_if<MamdaniConsequence>(&rule.consequence);
            if (!ma) throw DataError("only MA consequences are fuzzy sets over the output");
            sets.emplace_back(MembershipFunction(ma->triangle));
            continue;
        }
        std::optional<MembershipFunction> found;
        for (const auto& clause : rule.premise.clauses)
            if (clause.attribute == *attr_index) found = clause.descriptor;
        sets.push_back(found);
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    if (!a.data.empty()) {
        const auto d = load_csv(a.data);
        const auto col = attr_index ? d.column(*attr_index) : std::vector<double>(d.outputs().begin(), d.outputs().end());
        lo = *std::min_element(col.begin(), col.end());
        hi = *std::max_element(col.begin(), col.end());
    } else {
        for (const auto& s : sets) {
            if (!s) continue;
            const auto [l, h] = support_hint(*s);
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) lo = -1.0, hi = 1.0;
    if (lo == hi) lo -= 1.0, hi += 1.0;

    std::string csv = "x";
    for (std::size_t r = 0; r < sets.size(); ++r) csv += ",rule " + std::to_string(r + 1);
    csv += "\n";
    for (std::size_t i = 0; i < a.n_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.n_points - 1);
        csv += number(x);
        for (const auto& s : sets) csv += "," + number(s ? evaluate(*s, x) : 1.0);
        csv += "\n";
    }
    emit(a.out, out, csv);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Neuro-fuzzy rule bases with linguistic rule descriptions", "nfs"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write the four-gausses surface as CSV");
    generate->add_option("--m", gen.m, "Side of the square domain [0, m]")->capture_default_str();
    generate->add_option("--sigma", gen.sigma, "Spread of the four Gaussians")->capture_default_str();
    generate->add_option("--grid-n", gen.grid_n, "Samples per axis")->capture_default_str()->check(CLI::Range(2, 100000));
    generate->add_option("--out", gen.out, "Output CSV path")->required();

    TrainArgs tr;
    auto* training = app.add_subcommand("train", "Train a rule base from CSV data");
    training->add_option("--data", tr.data, "Training CSV (last column is the output)")->required();
    training->add_option("--kind", tr.kind, "ma | tsk | annbfis")
        ->capture_default_str()
        ->check(CLI::IsMember({"ma", "tsk", "annbfis"}, CLI::ignore_case));
    training->add_option("--rules", tr.rules, "Number of rules")->capture_default_str()->check(CLI::PositiveNumber);
    training->add_option("--epochs", tr.epochs, "Training epochs")->capture_default_str();
    training->add_option("--lr", tr.lr, "Gradient learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    training->add_option("--seed", tr.seed, "Clustering seed")->capture_default_str();
    training->add_option("--model-out", tr.model_out, "Rule base JSON output")->required();
    training->add_option("--report-out", tr.report_out, "Per-epoch RMSE CSV output");
    training->add_option("--config", tr.config, "JSON config (kind, rules, epochs, learning_rate, seed)");

    DescribeArgs de;
    auto* describe = app.add_subcommand("describe", "Render a rule base as English rules");
    describe->add_option("--model", de.model, "Rule base JSON")->required();
    describe->add_option("--data", de.data, "CSV providing attribute statistics")->required();
    describe->add_option("--format", de.format, "text | json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    describe->add_option("--out", de.out, "Output path (default: stdout)");
    describe->add_flag("--literal-orientation", de.literal, "Order location labels from giant down to micro");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Print the RMSE of a rule base on a dataset");
    eval->add_option("--model", ev.model, "Rule base JSON")->required();
    eval->add_option("--data", ev.data, "Evaluation CSV")->required();

    CurvesArgs cu;
    auto* curves = app.add_subcommand("curves", "Sample the membership curves of one attribute as CSV");
    curves->add_option("--model", cu.model, "Rule base JSON")->required();
    curves->add_option("--attr", cu.attr, "Attribute name or 0-based index (output name for MA consequences)")->required();
    curves->add_option("--n-points", cu.n_points, "Samples along the attribute")->capture_default_str();
    curves->add_option("--data", cu.data, "CSV whose column range sets the sampled interval");
    curves->add_option("--out", cu.out, "Output path (default: stdout)");
    curves->footer("Plot with: gnuplot -e \"set datafile separator ','; plot for [i=2:5] 'curves.csv' using 1:i with lines\"");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (*generate) run_generate(gen, out);
        else if (*training) run_train(tr, *training, out);
        else if (*describe) run_describe(de, out);
        else if (*eval) run_eval(ev, out);
        else if (*curves) run_curves(cu, out);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: data: " << msg << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace nfs::cli
