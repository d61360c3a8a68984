#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "lyap/dyson.hpp"
#include "lyap/error.hpp"
#include "lyap/stats.hpp"

namespace lyap::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& what)
{
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DomainError(what + ": cannot parse '" + s + "'");
    }
    if (pos != s.size()) throw DomainError(what + ": cannot parse '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& what)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw DomainError(what + ": cannot parse '" + s + "'");
    }
    if (pos != s.size()) throw DomainError(what + ": cannot parse '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    return os;
}

void write_meta(std::ostream& os, const Metadata& meta)
{
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
}

// Reads `# key: value` lines and the remaining data lines (header included).
Metadata read_meta(std::istream& is, std::vector<std::string>& lines)
{
    Metadata meta;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(": ");
            if (colon != std::string::npos && line.size() > 2) meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
            continue;
        }
        lines.push_back(line);
    }
    return meta;
}

std::string meta_get(const Metadata& meta, const std::string& key)
{
    const auto it = meta.find(key);
    if (it == meta.end()) throw DomainError("metadata field '" + key + "' missing");
    return it->second;
}

int default_threads()
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> grid_points(const GridSpec& g)
{
    return linear_grid(g.lo, g.hi, g.count);
}

DensityCurve parallel_tabulate(const std::string& label, const std::vector<double>& xs,
                               const std::function<double(double)>& f, int threads)
{
    DensityCurve c;
    c.label = label;
    c.xs = xs;
    c.values.assign(xs.size(), 0.0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        try {
            for (std::size_t i; (i = next++) < xs.size() && !failed;) c.values[i] = f(xs[i]);
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, threads); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return c;
}

json curve_json(const DensityCurve& c)
{
    return json{{"label", c.label}, {"xs", c.xs}, {"values", c.values}};
}

json report_json(const ComparisonReport& r)
{
    return json{{"sup_norm", r.sup_norm},         {"chi_square", r.chi_square},
                {"dof", r.dof},                   {"pass", r.pass},
                {"tolerance_used", r.tolerance_used}, {"within_3sigma", r.within_3sigma}};
}

json empirical_json(const EmpiricalDensity& e)
{
    return json{{"bin_edges", e.bin_edges},
                {"centers", e.centers()},
                {"counts", e.counts},
                {"n_samples", e.n_samples},
                {"values", e.normalized_values},
                {"stderr", e.stderr_values}};
}

// ---- subcommands -------------------------------------------------------------

struct SimulateArgs {
    std::string ensemble = "ginibre";
    int n = 0;
    int m = 0;
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
    std::uint64_t first = 0;
    std::string method = "graded-svd";
    int reorth = 1;
    double gamma = 0;
    double dt = 0;
    bool raw_variance = false;
    std::string out;
    int threads = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out)
{
    ProductSpec spec;
    spec.kind = parse_ensemble(a.ensemble);
    spec.n = a.n;
    spec.m = a.m;
    spec.normalize_variance = !a.raw_variance;
    if (spec.kind == EnsembleKind::DmpkStep) {
        spec.gamma = a.gamma;
        spec.dt = a.dt;
    }
    spec.validate();
    const LyapunovMethod method = parse_method(a.method);
    if (a.samples < 1) throw DomainError("--samples must be >= 1");
    const int threads = a.threads > 0 ? a.threads : default_threads();
    const auto spectra = simulate_spectra(spec, a.seed, a.first, a.samples, threads, QrOptions{a.reorth}, method);

    Metadata meta{{"tool", tool_version},
                  {"command", "simulate"},
                  {"ensemble", to_string(spec.kind)},
                  {"n", std::to_string(spec.n)},
                  {"m", std::to_string(spec.m)},
                  {"samples", std::to_string(a.samples)},
                  {"first_sample", std::to_string(a.first)},
                  {"seed", std::to_string(a.seed)},
                  {"method", to_string(method)},
                  {"reorth_interval", std::to_string(a.reorth)},
                  {"normalize_variance", spec.normalize_variance ? "true" : "false"}};
    if (spec.kind == EnsembleKind::DmpkStep) {
        meta["gamma"] = fmt(*spec.gamma);
        meta["dt"] = fmt(*spec.dt);
    }
    if (a.out.empty() || a.out == "-") {
        write_samples(out, meta, spectra);
    } else {
        auto os = open_out(a.out);
        write_samples(os, meta, spectra);
    }
    return Success;
}

struct KernelArgs {
    std::string kind;
    double a = 0;
    double p = 0.5;
    double ap = 0;
    int n = 0;
    int m = 0;
    std::string grid;
    std::string out;
    std::uint64_t seed = 0;
    int threads = 0;
    double tol = 1e-10;
};

int cmd_kernel(const KernelArgs& k, std::ostream& out)
{
    const GridSpec g = parse_grid(k.grid);
    const int threads = k.threads > 0 ? k.threads : default_threads();
    Metadata meta{{"tool", tool_version}, {"command", "kernel"}, {"kind", k.kind}, {"grid", k.grid}};
    std::function<double(double)> f;
    if (k.kind == "bulk") {
        double ap = k.ap;
        if (ap > 0) {
            if (k.a > 0) throw DomainError("kernel bulk: give either --ap or --a/--p");
        } else {
            const BulkKernelParams params{k.a, k.p, 0};
            params.validate();
            ap = params.ap();
            meta["a"] = fmt(k.a);
            meta["p"] = fmt(k.p);
        }
        meta["ap"] = fmt(ap);
        f = [ap](double x) { return bulk_density_ap(x, ap); };
    } else if (k.kind == "soft") {
        if (!(k.a > 0)) throw DomainError("kernel soft: --a must be positive");
        QuadratureConfig q;
        q.tol = k.tol;
        q.validate();
        meta["a"] = fmt(k.a);
        meta["tol"] = fmt(k.tol);
        const SoftKernelParams params{k.a};
        f = [params, q](double x) { return soft_density(x, params, q); };
    } else if (k.kind == "sine") {
        f = [](double x) { return sine_kernel(x, x); };
    } else if (k.kind == "airy") {
        f = [](double x) { return airy_density(x); };
    } else if (k.kind == "finite") {
        if (k.n < 1 || k.m < 1) throw DomainError("kernel finite: --n and --m must be >= 1");
        QuadratureConfig q;
        q.tol = k.tol;
        q.validate();
        meta["n"] = std::to_string(k.n);
        meta["m"] = std::to_string(k.m);
        meta["coordinate"] = "lambda";
        meta["tol"] = fmt(k.tol);
        const int n = k.n, m = k.m;
        f = [n, m, q](double l) { return finite_density(l, n, m, q); };
    } else if (k.kind == "gaussian") {
        if (k.n < 1 || k.m < 1) throw DomainError("kernel gaussian: --n and --m must be >= 1");
        meta["n"] = std::to_string(k.n);
        meta["m"] = std::to_string(k.m);
        meta["coordinate"] = "lambda";
        const int n = k.n, m = k.m;
        f = [n, m](double l) { return gaussian_density(l, n, m); };
    } else {
        throw DomainError("unknown kernel kind '" + k.kind + "' (bulk, soft, sine, airy, finite, gaussian)");
    }
    const DensityCurve c = parallel_tabulate(k.kind, grid_points(g), f, threads);
    if (k.out.empty() || k.out == "-") {
        write_curve(out, meta, c);
    } else {
        auto os = open_out(k.out);
        write_curve(os, meta, c);
    }
    return Success;
}

struct CompareArgs {
    std::string samples_file;
    int j_center = 0;
    int window = 2;
    std::string analytic = "bulk";
    double ap = 0;
    bool local_ap = false;
    std::string center = "auto";
    double bin_width = 0.1;
    std::string range = "-2:2";
    int bootstrap = 400;
    double tolerance = 0.10;
    std::uint64_t seed = 0;
    std::string out;
    int threads = 0;
};

int cmd_compare(const CompareArgs& c, std::ostream& out)
{
    const SampleFile file = read_samples(c.samples_file);
    if (file.spectra.empty()) throw DomainError("compare: no samples in '" + c.samples_file + "'");
    const int n = file.spectra.front().n;
    const int m = file.spectra.front().m;
    if (c.j_center < 1) throw DomainError("compare: --j-center is required");

    const auto range = split(c.range, ':');
    if (range.size() != 2) throw DomainError("compare: --range must be min:max");
    HistogramSpec hs{parse_double(range[0], "--range"), parse_double(range[1], "--range"), c.bin_width, c.bootstrap,
                     c.seed};
    hs.validate();

    std::string center = c.center;
    if (center == "auto") center = meta_get(file.meta, "ensemble") == "ginibre" ? "analytic" : "fitted";
    LocalCoordinateOptions lc;
    if (center == "analytic") {
        lc.mode = CenterMode::Analytic;
    } else if (center == "fitted") {
        lc.mode = CenterMode::Fitted;
        lc.shift = fit_center_shift(file.spectra, c.j_center, c.window);
    } else if (center == "raw") {
        lc.mode = CenterMode::Raw;
    } else {
        throw DomainError("compare: --center must be auto, analytic, fitted or raw");
    }
    std::vector<std::vector<double>> values;
    values.reserve(file.spectra.size());
    for (const auto& s : file.spectra) values.push_back(local_coordinate(s, c.j_center, c.window, lc));
    const EmpiricalDensity emp = make_histogram(values, hs);

    const double ap = c.ap > 0 ? c.ap : static_cast<double>(c.j_center) / m;
    std::function<double(double)> f;
    if (c.analytic == "bulk") {
        if (c.local_ap)
            f = [ap, jc = c.j_center, m](double x) { return bulk_density_ap(x, ap * (jc + x) / jc); };
        else
            f = [ap](double x) { return bulk_density_ap(x, ap); };
    } else if (c.analytic == "sine") {
        f = [](double) { return 1.0; };
    } else {
        throw DomainError("compare: --analytic must be bulk or sine");
    }
    const DensityCurve ana = bin_average(f, emp.bin_edges, c.analytic);
    const ComparisonReport r = compare(emp, ana, c.tolerance);

    json report = report_json(r);
    report["config"] = json{{"tool", tool_version},
                            {"command", "compare"},
                            {"samples_file", c.samples_file},
                            {"ensemble", meta_get(file.meta, "ensemble")},
                            {"method", file.meta.count("method") ? file.meta.at("method") : "unknown"},
                            {"n", n},
                            {"m", m},
                            {"n_samples", file.spectra.size()},
                            {"j_center", c.j_center},
                            {"window", c.window},
                            {"analytic", c.analytic},
                            {"ap", ap},
                            {"local_ap", c.local_ap},
                            {"center", center},
                            {"center_shift", lc.mode == CenterMode::Fitted ? lc.shift : 0.0},
                            {"range", c.range},
                            {"bin_width", c.bin_width},
                            {"bootstrap_rounds", c.bootstrap},
                            {"seed", c.seed}};
    report["empirical"] = empirical_json(emp);
    report["analytic"] = curve_json(ana);
    if (c.out.empty() || c.out == "-") {
        out << report.dump(2) << '\n';
    } else {
        auto os = open_out(c.out);
        os << report.dump(2) << '\n';
    }
    return r.pass ? Success : ComparisonFailed;
}

struct DysonArgs {
    int n = 64;
    double tau = 0.25;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string out;
    std::string report;
    double min_fraction = 0.95;
    int threads = 0;
};

int cmd_dyson(const DysonArgs& d, std::ostream& out)
{
    const DysonSpec spec{d.n, d.tau, d.samples, d.seed};
    spec.validate();
    const int threads = d.threads > 0 ? d.threads : default_threads();
    const EmpiricalDensity emp = dyson_local_density(spec, threads);
    const double tau = d.tau;
    const DensityCurve ana = bin_average([tau](double x) { return bulk_density_ap(x, tau); }, emp.bin_edges, "bulk");
    ComparisonReport r = compare(emp, ana, 1.0);
    // binwise 3-sigma agreement is the pass rule here
    r.pass = r.within_3sigma >= d.min_fraction;

    Metadata meta{{"tool", tool_version},
                  {"command", "dyson"},
                  {"n", std::to_string(d.n)},
                  {"tau", fmt(d.tau)},
                  {"samples", std::to_string(d.samples)},
                  {"seed", std::to_string(d.seed)},
                  {"bins", std::to_string(emp.counts.size())}};
    json report = report_json(r);
    report["rule"] = "within_3sigma >= " + fmt(d.min_fraction);
    report["config"] = json{{"tool", tool_version}, {"command", "dyson"}, {"n", d.n},         {"tau", d.tau},
                            {"samples", d.samples}, {"seed", d.seed},        {"ap", d.tau}};
    report["empirical"] = empirical_json(emp);
    report["analytic"] = curve_json(ana);

    DensityCurve curve = emp.to_curve("dyson");
    if (d.out.empty() || d.out == "-") {
        write_curve(out, meta, curve);
    } else {
        auto os = open_out(d.out);
        write_curve(os, meta, curve);
    }
    std::string report_path = d.report;
    if (report_path.empty() && !d.out.empty() && d.out != "-") report_path = d.out + ".json";
    if (report_path.empty()) {
        out << report.dump(2) << '\n';
    } else {
        auto os = open_out(report_path);
        os << report.dump(2) << '\n';
    }
    return r.pass ? Success : ComparisonFailed;
}

}  // namespace

GridSpec parse_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw DomainError("grid must be min:max:count, got '" + text + "'");
    GridSpec g{parse_double(parts[0], "grid"), parse_double(parts[1], "grid"),
               static_cast<int>(parse_int(parts[2], "grid"))};
    if (!(g.hi > g.lo)) throw DomainError("grid: need max > min");
    if (g.count < 2) throw DomainError("grid: need count >= 2");
    return g;
}

void write_samples(std::ostream& os, const Metadata& meta, const std::vector<LyapunovSpectrum>& spectra)
{
    write_meta(os, meta);
    os << "sample_index,j,lambda\n";
    for (const auto& s : spectra)
        for (std::size_t j = 0; j < s.lambdas.size(); ++j)
            os << s.sample_index << ',' << j + 1 << ',' << fmt(s.lambdas[j]) << '\n';
    if (!os) throw DomainError("write failed");
}

SampleFile read_samples(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw DomainError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    SampleFile f;
    f.meta = read_meta(is, lines);
    if (lines.empty() || lines.front() != "sample_index,j,lambda")
        throw DomainError("'" + path + "': expected header sample_index,j,lambda");
    const int n = static_cast<int>(parse_int(meta_get(f.meta, "n"), "n"));
    const int m = static_cast<int>(parse_int(meta_get(f.meta, "m"), "m"));
    const std::uint64_t seed = static_cast<std::uint64_t>(parse_int(meta_get(f.meta, "seed"), "seed"));
    const LyapunovMethod method = f.meta.count("method") ? parse_method(f.meta.at("method")) : LyapunovMethod::QrAccumulation;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cols = split(lines[i], ',');
        if (cols.size() != 3) throw DomainError("'" + path + "': malformed row " + std::to_string(i + 1));
        const auto sample = static_cast<std::uint64_t>(parse_int(cols[0], "sample_index"));
        const int j = static_cast<int>(parse_int(cols[1], "j"));
        const double lambda = parse_double(cols[2], "lambda");
        if (f.spectra.empty() || f.spectra.back().sample_index != sample) {
            if (!f.spectra.empty() && static_cast<int>(f.spectra.back().lambdas.size()) != n)
                throw DomainError("'" + path + "': sample " + std::to_string(f.spectra.back().sample_index) +
                                  " does not have n rows");
            LyapunovSpectrum s;
            s.n = n;
            s.m = m;
            s.method = method;
            s.sample_index = sample;
            s.master_seed = seed;
            f.spectra.push_back(std::move(s));
        }
        auto& s = f.spectra.back();
        if (j != static_cast<int>(s.lambdas.size()) + 1) throw DomainError("'" + path + "': rows out of order");
        s.lambdas.push_back(lambda);
    }
    if (!f.spectra.empty() && static_cast<int>(f.spectra.back().lambdas.size()) != n)
        throw DomainError("'" + path + "': last sample does not have n rows");
    return f;
}

void write_curve(std::ostream& os, const Metadata& meta, const DensityCurve& curve)
{
    write_meta(os, meta);
    os << "xi,density\n";
    for (std::size_t i = 0; i < curve.xs.size(); ++i) os << fmt(curve.xs[i]) << ',' << fmt(curve.values[i]) << '\n';
    if (!os) throw DomainError("write failed");
}

CurveFile read_curve(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw DomainError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    CurveFile f;
    f.meta = read_meta(is, lines);
    if (lines.empty() || lines.front() != "xi,density") throw DomainError("'" + path + "': expected header xi,density");
    f.curve.label = f.meta.count("kind") ? f.meta.at("kind") : "";
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cols = split(lines[i], ',');
        if (cols.size() != 2) throw DomainError("'" + path + "': malformed row " + std::to_string(i + 1));
        f.curve.xs.push_back(parse_double(cols[0], "xi"));
        f.curve.values.push_back(parse_double(cols[1], "density"));
    }
    return f;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lyapunov spectra of random matrix products and their correlation kernels", "lyap"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Sample Lyapunov spectra; CSV sample_index,j,lambda");
    sim->add_option("--ensemble", sa.ensemble, "ginibre, bernoulli, correlated-sum or dmpk-step")->capture_default_str();
    sim->add_option("--n", sa.n, "Matrix dimension N")->required();
    sim->add_option("--m", sa.m, "Number of factors M")->required();
    sim->add_option("--samples", sa.samples, "Number of products")->capture_default_str();
    sim->add_option("--first", sa.first, "Index of the first sample")->capture_default_str();
    sim->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
    sim->add_option("--method", sa.method, "graded-svd (eigenvalues of L) or qr (QR diagonal)")->capture_default_str();
    sim->add_option("--reorth", sa.reorth, "Factors multiplied between QR steps")->capture_default_str();
    sim->add_option("--gamma", sa.gamma, "Drift (dmpk-step)");
    sim->add_option("--dt", sa.dt, "Time step (dmpk-step)");
    sim->add_flag("--raw-variance", sa.raw_variance, "Do not normalize the entry variance");
    sim->add_option("--out", sa.out, "Output file ('-' for stdout)");
    sim->add_option("--threads", sa.threads, "Worker threads (0: all cores)");

    KernelArgs ka;
    auto* ker = app.add_subcommand("kernel", "Tabulate an analytic density; CSV xi,density");
    ker->add_option("kind", ka.kind, "bulk, soft, sine, airy, finite or gaussian")->required();
    ker->add_option("--a", ka.a, "a = N/M");
    ker->add_option("--p", ka.p, "Bulk position p")->capture_default_str();
    ker->add_option("--ap", ka.ap, "Bulk: the product a p directly");
    ker->add_option("--n", ka.n, "N (finite, gaussian)");
    ker->add_option("--m", ka.m, "M (finite, gaussian)");
    ker->add_option("--grid", ka.grid, "min:max:count, endpoints included")->required()->allow_extra_args(false);
    ker->add_option("--tol", ka.tol, "Quadrature tolerance")->capture_default_str();
    ker->add_option("--out", ka.out, "Output file ('-' for stdout)");
    ker->add_option("--seed", ka.seed, "Unused; accepted for uniformity");
    ker->add_option("--threads", ka.threads, "Worker threads (0: all cores)");

    CompareArgs ca;
    auto* cmp = app.add_subcommand("compare", "Compare a sample file with an analytic bulk density; JSON report");
    cmp->add_option("samples_file", ca.samples_file, "CSV written by simulate")->required();
    cmp->add_option("--j-center", ca.j_center, "Central eigenvalue index")->required();
    cmp->add_option("--window", ca.window, "Indices j_center +- window")->capture_default_str();
    cmp->add_option("--analytic", ca.analytic, "bulk or sine")->capture_default_str();
    cmp->add_option("--ap", ca.ap, "a p of the analytic curve (default j_center / M)");
    cmp->add_flag("--local-ap", ca.local_ap, "Use ap (j_center + xi) / j_center at each xi");
    cmp->add_option("--center", ca.center, "auto, analytic, fitted or raw")->capture_default_str();
    cmp->add_option("--bin-width", ca.bin_width, "Histogram bin width")->capture_default_str();
    cmp->add_option("--range", ca.range, "Histogram window min:max")->capture_default_str();
    cmp->add_option("--bootstrap", ca.bootstrap, "Bootstrap rounds")->capture_default_str();
    cmp->add_option("--tolerance", ca.tolerance, "Sup-norm tolerance")->capture_default_str();
    cmp->add_option("--seed", ca.seed, "Bootstrap seed")->capture_default_str();
    cmp->add_option("--out", ca.out, "Report file ('-' for stdout)");
    cmp->add_option("--threads", ca.threads, "Unused; accepted for uniformity");

    DysonArgs da;
    auto* dys = app.add_subcommand("dyson", "Dyson Brownian motion from a picket fence vs the bulk density");
    dys->add_option("--n", da.n, "Matrix dimension")->capture_default_str();
    dys->add_option("--tau", da.tau, "Time, equal to a p")->capture_default_str();
    dys->add_option("--samples", da.samples, "Number of matrices")->capture_default_str();
    dys->add_option("--seed", da.seed, "Master seed")->capture_default_str();
    dys->add_option("--out", da.out, "Density CSV ('-' for stdout)");
    dys->add_option("--report", da.report, "JSON report (default: <out>.json)");
    dys->add_option("--min-fraction", da.min_fraction, "Required fraction of bins within 3 sigma")
        ->capture_default_str();
    dys->add_option("--threads", da.threads, "Worker threads (0: all cores)");

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help(e.get_name().empty() ? "" : e.get_name());
        // CLI11 reports help for the subcommand that asked for it
        return Success;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << '\n';
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }

    try {
        if (*sim) return cmd_simulate(sa, out);
        if (*ker) return cmd_kernel(ka, out);
        if (*cmp) return cmd_compare(ca, out);
        if (*dys) return cmd_dyson(da, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return NumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    return UsageError;
}

}  // namespace lyap::cli
