#include "mdgemm/bench.hpp"
#include "mdgemm/conformance.hpp"
#include "mdgemm/dispatch.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace mdgemm;

std::vector<CaseLabel> expand_labels(const std::vector<std::string>& names) {
    if (names.empty())
        return {};
    std::vector<CaseLabel> out;
    for (const std::string& s : names) {
        if (s == "all")
            return CaseLabel::all();
        out.push_back(CaseLabel::parse(s));
    }
    return out;
}

struct CommonOpts {
    std::optional<std::string> config_file;
    int threads = 0;     // 0 = keep the config's value
    std::string ctemp;   // empty = keep
    std::uint64_t seed = 42;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config_file,
                        "key=value config file (default: $MDGEMM_CONFIG)");
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--ctemp", ctemp,
                        "intermediate output buffer: auto|on|off")
            ->check(CLI::IsMember({"auto", "on", "off"}));
        sub->add_option("--seed", seed, "seed for operand generation");
    }

    Config resolve() const {
        Config cfg = Config::load(config_file);
        if (threads > 0)
            cfg.set("gemm.threads", std::to_string(threads));
        if (!ctemp.empty())
            cfg.set("ctemp.enable", ctemp);
        cfg.validate();
        return cfg;
    }
};

int run_test(const std::vector<std::string>& labels,
             const std::vector<std::int64_t>& sizes, bool no_storage,
             bool no_scalars, const CommonOpts& common) {
    ConformanceOptions opt;
    opt.labels = expand_labels(labels);
    if (!sizes.empty())
        opt.sizes = sizes;
    opt.seed = common.seed;
    opt.config = common.resolve();
    opt.storage_sweep = !no_storage;
    opt.scalar_sweep = !no_scalars;

    ConformanceReport rep = run_conformance(opt);
    std::cout << rep.checks << " checks, " << rep.failures.size()
              << " failures\n";
    std::size_t shown = 0;
    for (const ConformanceFailure& f : rep.failures) {
        if (++shown > 25) {
            std::cout << "... (" << rep.failures.size() - 25 << " more)\n";
            break;
        }
        std::cout << "FAIL " << f.label << " " << f.detail;
        if (f.violation > 0.0)
            std::cout << " violation=" << f.violation;
        std::cout << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int run_bench_cmd(const std::vector<std::string>& labels, std::int64_t min_size,
                  std::int64_t max_size, std::int64_t step, int trials,
                  const std::string& out_path, const CommonOpts& common) {
    std::vector<CaseLabel> ls = expand_labels(labels);
    if (ls.empty())
        ls.push_back(CaseLabel::parse("dddd"));
    Config cfg = common.resolve();

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw Error("cannot open output file: " + out_path);
        os = &file;
    }

    *os << csv_header() << "\n";
    for (const CaseLabel& l : ls)
        for (std::int64_t s = min_size; s <= max_size; s += step) {
            BenchResult r = run_bench(l, s, s, s, trials, cfg, common.seed);
            *os << csv_line(r) << "\n";
            os->flush();
        }
    return 0;
}

int run_info(const CommonOpts& common) {
    Config cfg = common.resolve();
    std::cout << cfg.describe();
    std::cout << "\nlabels: 128 (C, A, B over s/d/c/z; computation precision s/d)\n";
    std::cout << "domain cases: ";
    bool first = true;
    for (CaseId id : {CaseId::C0, CaseId::C1a, CaseId::C1b, CaseId::C1c,
                      CaseId::C2ab, CaseId::C2ac, CaseId::C2bc, CaseId::C3}) {
        std::cout << (first ? "" : ", ") << to_string(id);
        first = false;
    }
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed-datatype gemm: conformance tests and benchmarks"};
    app.require_subcommand(1);

    CommonOpts common;

    std::vector<std::string> labels;
    std::vector<std::int64_t> sizes;
    bool no_storage = false, no_scalars = false;

    CLI::App* test = app.add_subcommand(
        "test", "check labels against the reference implementation");
    test->add_option("--case", labels,
                     "four-letter label (repeatable), or 'all' (default)");
    test->add_option("--size", sizes, "square sizes to test (repeatable)");
    test->add_flag("--no-storage-sweep", no_storage,
                   "skip row/general storage and transposed/conjugated variants");
    test->add_flag("--no-scalar-sweep", no_scalars, "skip the alpha/beta grid");
    common.attach(test);

    std::int64_t min_size = 256, max_size = 1024, step = 256;
    int trials = 3;
    std::string out_path;

    CLI::App* bench = app.add_subcommand("bench", "time labels, emit CSV");
    bench->add_option("--case", labels,
                      "four-letter label (repeatable), or 'all' (default dddd)");
    bench->add_option("--min", min_size, "smallest square size");
    bench->add_option("--max", max_size, "largest square size");
    bench->add_option("--step", step, "size increment");
    bench->add_option("--trials", trials, "timed runs per point (best wins)");
    bench->add_option("--out", out_path, "write CSV here instead of stdout");
    common.attach(bench);

    CLI::App* info = app.add_subcommand("info", "print the resolved configuration");
    common.attach(info);

    try {
        app.parse(argc, argv);
        if (test->parsed())
            return run_test(labels, sizes, no_storage, no_scalars, common);
        if (bench->parsed())
            return run_bench_cmd(labels, min_size, max_size, step, trials,
                                 out_path, common);
        return run_info(common);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
