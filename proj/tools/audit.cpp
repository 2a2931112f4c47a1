// audit: command-line driver for the accuracy suites.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lreaudit/backend.hpp"
#include "lreaudit/error.hpp"
#include "lreaudit/parallel.hpp"
#include "lreaudit/protocol.hpp"
#include "lreaudit/report.hpp"
#include "lreaudit/suites.hpp"

using namespace lreaudit;

namespace {

struct Args {
    std::string backend = "host";
    std::vector<std::string> datasets;
    std::optional<std::uint64_t> seed;
    std::size_t resamples = 100;
    std::string equality = "single";
    std::string ls_method = "orthogonal";
    std::string format = "md";
    bool deterministic = false;
    unsigned jobs = 0;
    std::vector<std::string> graphs;
    std::string output_dir;
    double timeout = 60.0;
};

void add_suite_options(CLI::App* sub, Args& a) {
    sub->add_option("--backend", a.backend, "host or exec:\"<adapter command>\"");
    sub->add_option("--dataset", a.datasets, "builtin:<key>, builtin:all or a dataset file (repeatable)");
    sub->add_option("--seed", a.seed, "bootstrap seed (default: $AUDIT_SEED, else 42)");
    sub->add_option("--resamples", a.resamples, "bootstrap resamples")->check(CLI::Range(2, 1000000));
    sub->add_option("--equality", a.equality, "eigenvalue equality policy")
        ->check(CLI::IsMember({"single", "exact"}));
    sub->add_option("--ls-method", a.ls_method, "host least-squares method")
        ->check(CLI::IsMember({"orthogonal", "normal"}));
    sub->add_option("--format", a.format, "report format")->check(CLI::IsMember({"md", "csv", "jsonl"}));
    sub->add_flag("--deterministic", a.deterministic, "no timestamps in output file names");
    sub->add_option("--jobs", a.jobs, "worker threads (default: number of processors)");
    sub->add_option("--graph", a.graphs, "K:m,n (repeatable; default: the six standard graphs)");
    sub->add_option("--output-dir", a.output_dir, "also write each report to <suite>-<backend>[-<timestamp>].<ext>");
    sub->add_option("--timeout", a.timeout, "per-request timeout for exec backends, seconds")
        ->check(CLI::PositiveNumber);
}

GraphSpec parse_graph(const std::string& s) {
    int m = 0, n = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "K:%d,%d%c", &m, &n, &tail) != 2 || m < 1 || n < 1)
        throw std::invalid_argument("--graph expects K:m,n with positive m and n, got '" + s + "'");
    return make_graph(m, n);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("AUDIT_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 0);
        if (!*env || *end) throw std::invalid_argument(std::string("AUDIT_SEED is not an integer: ") + env);
        return v;
    }
    return 42;
}

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

int run_suites(const std::vector<std::string>& suites, const Args& a) {
    SuiteOptions opt;
    opt.datasets = a.datasets;
    opt.seed = resolve_seed(a.seed);
    opt.resamples = a.resamples;
    opt.equality = a.equality == "exact" ? EqualityPolicy::exact_double : EqualityPolicy::single_precision;
    opt.jobs = a.jobs ? a.jobs : default_jobs();
    for (const auto& g : a.graphs) opt.graphs.push_back(parse_graph(g));
    const Format fmt = parse_format(a.format);
    const LsMethod method = a.ls_method == "normal" ? LsMethod::normal_equations : LsMethod::orthogonal;

    std::unique_ptr<Backend> backend = make_backend(a.backend, method, a.timeout);
    const std::string stamp = a.deterministic ? "" : "-" + timestamp();
    if (!a.output_dir.empty()) std::filesystem::create_directories(a.output_dir);

    for (const auto& name : suites) {
        const SuiteReport rep = run_suite(name, *backend, opt);
        const std::string text = render(rep, fmt);
        std::cout << text << std::flush;
        if (!a.output_dir.empty()) {
            const auto path = std::filesystem::path(a.output_dir) /
                              (rep.suite + "-" + rep.backend + stamp + "." + format_extension(fmt));
            std::ofstream out(path, std::ios::binary);
            out << text;
            if (!out) throw AuditError("cannot write " + path.string());
        }
        for (const auto& row : rep.cases)
            for (std::size_t i = 0; i < row.cells.size() && i < rep.columns.size(); ++i) {
                const Cell& c = row.cells[i];
                const std::string& note = c.kind == Cell::Kind::lre ? c.lre.note : (c.decision_na ? c.text : "");
                if (!note.empty()) std::cerr << name << ": " << row.id << " " << rep.columns[i] << ": " << note << '\n';
            }
    }
    if (backend->protocol_errors() > 0) {
        std::cerr << "audit: " << backend->protocol_errors() << " protocol failure(s) from the adapter\n";
        return 1;
    }
    return 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AuditError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_diff(const std::string& a_path, const std::string& b_path) {
    const auto a = parse_jsonl(slurp(a_path));
    const auto b = parse_jsonl(slurp(b_path));
    if (a.size() != b.size()) throw AuditError("the two files hold different numbers of reports");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string d = diff(a[i], b[i]);
        if (!d.empty()) std::cout << "## " << a[i].suite << ": " << a[i].backend << " vs " << b[i].backend << "\n" << d;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical accuracy audit: LRE scores of a backend against certified values"};
    app.require_subcommand(1);
    Args args;
    std::vector<std::string> suites = suite_names();
    for (const auto& s : suites) add_suite_options(app.add_subcommand(s, "run the " + s + " suite"), args);
    add_suite_options(app.add_subcommand("all", "run every suite"), args);

    auto* serve_cmd = app.add_subcommand("serve", "serve the host backend over the wire protocol on stdin/stdout");
    serve_cmd->add_option("--ls-method", args.ls_method, "least-squares method")
        ->check(CLI::IsMember({"orthogonal", "normal"}));

    std::string diff_a, diff_b;
    auto* diff_cmd = app.add_subcommand("diff", "compare two json-lines reports");
    diff_cmd->add_option("a", diff_a, "first report")->required();
    diff_cmd->add_option("b", diff_b, "second report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (serve_cmd->parsed()) {
            HostBackend host(args.ls_method == "normal" ? LsMethod::normal_equations : LsMethod::orthogonal);
            serve(host, std::cin, std::cout);
            return 0;
        }
        if (diff_cmd->parsed()) return run_diff(diff_a, diff_b);
        for (const auto& s : suites)
            if (app.got_subcommand(s)) return run_suites({s}, args);
        return run_suites(suites, args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "audit: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "audit: " << e.what() << '\n';
        return 1;
    }
}
