#include "opkit/cdkernel.hpp"
#include "opkit/errors.hpp"
#include "opkit/measure.hpp"
#include "opkit/orthopoly.hpp"
#include "opkit/potential.hpp"
#include "opkit/universality.hpp"
#include "opkit/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace opkit;

struct Options {
    std::string measure_path;
    double alpha = 0.0;
    int n = 0;
    int nmax = 0;
    double x = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::string grid; // lo:hi:step
    std::string out;
    std::string format = "csv";
    std::string suite = "all";
    std::string poly; // comma-separated ascending coefficients
    int window = 8;
    bool ratio = false;
    bool serial = false;
};

measure::GJMeasure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw schema_error("cannot open measure document: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return measure::parse_measure(buf.str());
}

std::vector<double> parse_grid(const std::string& spec) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0.0)
        throw schema_error("grid must be lo:hi:step with a positive step");
    std::vector<double> g;
    for (double v = lo; v <= hi + 1e-12 * step; v += step) g.push_back(v);
    return g;
}

std::vector<double> parse_poly(const std::string& spec) {
    std::vector<double> c;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) c.push_back(std::stod(tok));
    return c;
}

void emit(const Options& opt, const std::string& header,
          const std::string& body) {
    std::string text = "# opkit " + header + "\n" + body;
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw schema_error("cannot write output file: " + opt.out);
        f << text;
    }
}

orthopoly::RecurrenceTable build_table(const measure::GJMeasure& mu, int n) {
    auto rule = orthopoly::composite_quadrature(mu, n + 60);
    return orthopoly::lanczos_recurrence(mu, n, rule);
}

potential::EquilibriumDensity equilibrium_of(const measure::GJMeasure& mu) {
    return potential::equilibrium_density(potential::make_system(mu.intervals));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<int> n_ladder(int nmax) {
    std::vector<int> ns;
    for (int n = nmax; n >= 16 && ns.size() < 4; n /= 2) ns.insert(ns.begin(), n);
    if (ns.empty()) ns.push_back(nmax);
    return ns;
}

int run_scan(const Options& opt, bool edge) {
    auto mu = load_measure(opt.measure_path);
    int nmax = opt.nmax > 0 ? opt.nmax : (opt.n > 0 ? opt.n : 256);
    auto table = build_table(mu, nmax);
    auto eq = equilibrium_of(mu);

    universality::ScanConfig cfg;
    cfg.measure = mu;
    cfg.alpha = opt.alpha;
    cfg.x0 = opt.x;
    cfg.n_list = n_ladder(nmax);
    cfg.a_grid = opt.grid.empty() ? std::vector<double>{0.0}
                                  : parse_grid(opt.grid);
    cfg.b_grid = cfg.a_grid;
    if (edge)
        cfg.mode = opt.ratio ? universality::ScanMode::edge_ratio
                             : universality::ScanMode::edge_lambda;
    else
        cfg.mode = opt.ratio ? universality::ScanMode::bulk_ratio
                             : universality::ScanMode::bulk_lambda;

    auto rep = edge ? universality::scan_edge(cfg, table, eq, opt.serial)
                    : universality::scan_bulk(cfg, table, eq, opt.serial);
    std::string verb = edge ? "scan-edge" : "scan-bulk";
    if (opt.format == "json")
        emit(opt, verb, rep.to_json(true));
    else
        emit(opt, verb, rep.to_csv());
    return 0;
}

int dispatch(const std::string& verb, const Options& opt) {
    if (verb == "recur") {
        auto mu = load_measure(opt.measure_path);
        auto table = build_table(mu, opt.n);
        emit(opt, "recur n=" + std::to_string(opt.n),
             orthopoly::export_csv(table));
        return 0;
    }
    if (verb == "kernel") {
        auto mu = load_measure(opt.measure_path);
        auto table = build_table(mu, opt.n);
        emit(opt, "kernel",
             fmt(cdkernel::kernel_cd(table, opt.n, opt.a, opt.b)) + "\n");
        return 0;
    }
    if (verb == "christoffel") {
        auto mu = load_measure(opt.measure_path);
        auto table = build_table(mu, opt.n);
        emit(opt, "christoffel",
             fmt(cdkernel::christoffel(table, opt.n, opt.x)) + "\n");
        return 0;
    }
    if (verb == "equilibrium") {
        auto mu = load_measure(opt.measure_path);
        auto eq = equilibrium_of(mu);
        emit(opt, "equilibrium",
             fmt(potential::density_at_eq(eq, opt.x)) + "\n");
        return 0;
    }
    if (verb == "inverse-image") {
        auto T = potential::make_admissible(parse_poly(opt.poly));
        auto sys = potential::inverse_image(T);
        std::ostringstream os;
        os.precision(17);
        os << "{\"intervals\": [";
        for (size_t i = 0; i < sys.intervals.size(); ++i) {
            if (i) os << ", ";
            os << "[" << sys.intervals[i].lo << ", " << sys.intervals[i].hi
               << "]";
        }
        os << "]}\n";
        emit(opt, "inverse-image", os.str());
        return 0;
    }
    if (verb == "zeros") {
        auto mu = load_measure(opt.measure_path);
        auto table = build_table(mu, opt.n);
        auto zs = cdkernel::kernel_zeros(table, opt.n, opt.x, opt.window);
        std::ostringstream os;
        os << "k,t_k\n";
        for (int k = zs.k_min(); k <= zs.k_max(); ++k)
            os << k << ',' << fmt(zs.at(k)) << '\n';
        emit(opt, "zeros", os.str());
        return 0;
    }
    if (verb == "verify") {
        std::vector<verify::CriterionResult> results;
        if (opt.suite == "all")
            results = verify::run_all();
        else
            results.push_back(verify::run_suite(opt.suite));
        bool pass = true;
        std::ostringstream os;
        os.precision(17);
        os << "{\"suites\": [";
        for (size_t i = 0; i < results.size(); ++i) {
            if (i) os << ", ";
            os << "{\"name\": \"" << results[i].name << "\", \"pass\": "
               << (results[i].pass ? "true" : "false") << ", \"detail\": \""
               << results[i].detail << "\"}";
            pass = pass && results[i].pass;
        }
        os << "], \"pass\": " << (pass ? "true" : "false") << "}\n";
        emit(opt, "verify", os.str());
        return pass ? 0 : 4;
    }
    throw schema_error("unknown verb: " + verb);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Christoffel-Darboux kernel toolkit"};
    app.require_subcommand(1);
    Options opt;

    std::vector<CLI::App*> subs;
    for (const char* verb :
         {"recur", "kernel", "christoffel", "equilibrium", "inverse-image",
          "scan-bulk", "scan-edge", "verify", "zeros"}) {
        auto* sub = app.add_subcommand(verb);
        sub->add_option("--measure", opt.measure_path);
        sub->add_option("--alpha", opt.alpha);
        sub->add_option("--n", opt.n);
        sub->add_option("--nmax", opt.nmax);
        sub->add_option("--x,--at", opt.x);
        sub->add_option("--a", opt.a);
        sub->add_option("--b", opt.b);
        sub->add_option("--grid", opt.grid);
        sub->add_option("--out", opt.out);
        sub->add_option("--format", opt.format)
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--suite", opt.suite);
        sub->add_option("--poly", opt.poly);
        sub->add_option("--window", opt.window);
        sub->add_flag("--ratio", opt.ratio);
        sub->add_flag("--serial", opt.serial);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::string verb = app.get_subcommands().front()->get_name();
    try {
        if (verb == "scan-bulk") return run_scan(opt, false);
        if (verb == "scan-edge") return run_scan(opt, true);
        return dispatch(verb, opt);
    } catch (const opkit::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
