#include "syncnet/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "syncnet/syncnet.hpp"

namespace syncnet::cli {
namespace {

using json = nlohmann::ordered_json;

// Problems with the command line itself; answered with the synopsis.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_double(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::Parse, what + ": expected a number, got '" + raw + "'");
    }
    return v;
}

std::uint64_t parse_uint(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::Parse, what + ": expected a non-negative integer, got '" + raw + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& raw, const std::string& what) {
    std::vector<double> out;
    for (const std::string& tok : split(raw, ',')) out.push_back(parse_double(tok, what));
    return out;
}

// "a,b,c" or the inclusive range "lo:hi:step".
std::vector<double> parse_values(const std::string& raw, const std::string& what) {
    const auto parts = split(raw, ':');
    if (parts.size() == 1) return parse_list(raw, what);
    if (parts.size() != 3) throw Error(ErrorCode::Parse, what + ": expected a,b,... or lo:hi:step");
    const double lo = parse_double(parts[0], what), hi = parse_double(parts[1], what),
                 step = parse_double(parts[2], what);
    if (step <= 0.0 || hi < lo) throw Error(ErrorCode::InvalidParams, what + ": need step > 0 and hi >= lo");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 100000) throw Error(ErrorCode::InvalidParams, what + ": too many values");
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = lo + static_cast<double>(k) * step;
    return out;
}

// Rows separated by ';', entries by ','.
json parse_rows(const std::string& raw, const std::string& what) {
    json rows = json::array();
    for (const std::string& row : split(raw, ';')) rows.push_back(parse_list(row, what));
    return rows;
}

Matrix matrix_from_json(const json& rows, const std::string& what) {
    if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::Parse, what + ": expected a non-empty matrix");
    const std::size_t n = rows.size(), m = rows[0].size();
    std::vector<double> entries;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != m) throw Error(ErrorCode::Parse, what + ": ragged matrix rows");
        for (const auto& v : row) entries.push_back(v.get<double>());
    }
    return Matrix(n, m, std::move(entries));
}

json lorenz_json(const LorenzParams& p) { return {{"sigma", p.sigma}, {"r", p.r}, {"b", p.b}}; }

json parse_lorenz(const std::string& raw) {
    if (raw == "classic") return lorenz_json(LorenzParams::classic());
    const auto v = parse_list(raw, "--lorenz");
    if (v.size() != 3) throw Error(ErrorCode::Parse, "--lorenz: expected 'classic' or sigma,r,b");
    return lorenz_json(LorenzParams{v[0], v[1], v[2]});
}

LorenzParams lorenz_from_json(const json& j) {
    LorenzParams p{j.at("sigma").get<double>(), j.at("r").get<double>(), j.at("b").get<double>()};
    p.validate();
    return p;
}

std::size_t parse_size(const std::string& raw, const std::string& what) {
    return static_cast<std::size_t>(parse_uint(raw, what));
}

bool is_random_kind(const std::string& kind) { return kind == "er" || kind == "ws" || kind == "ba"; }

std::string graph_kind(const std::string& spec) {
    const auto parts = split(spec, ':');
    return parts.empty() ? std::string() : parts[0];
}

const std::map<std::string, RegularKind> kRegularKinds = {
    {"complete", RegularKind::Complete}, {"star", RegularKind::Star},
    {"path", RegularKind::Path},         {"ring", RegularKind::Ring}};

std::optional<RegularKind> regular_kind(const json& cfg) {
    if (!cfg.contains("graph")) return std::nullopt;
    const auto it = kRegularKinds.find(graph_kind(cfg["graph"].get<std::string>()));
    return it == kRegularKinds.end() ? std::nullopt : std::optional(it->second);
}

Graph graph_from_config(const json& cfg) {
    if (cfg.contains("edges")) return load_edge_list(cfg["edges"].get<std::string>());
    const std::string spec = cfg.at("graph").get<std::string>();
    const auto parts = split(spec, ':');
    const std::string kind = graph_kind(spec);
    auto arity = [&](std::size_t k) {
        if (parts.size() != k) throw Error(ErrorCode::Parse, "--graph: malformed '" + spec + "'");
    };
    if (parts.size() < 2) throw Error(ErrorCode::Parse, "--graph: malformed '" + spec + "'");
    if (const auto it = kRegularKinds.find(kind); it != kRegularKinds.end()) {
        arity(2);
        return build_regular(it->second, parse_size(parts[1], "--graph"));
    }
    if (!is_random_kind(kind)) throw Error(ErrorCode::Parse, "--graph: unknown kind '" + kind + "'");
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
    const std::size_t n = parse_size(parts[1], "--graph");
    if (kind == "er") {
        arity(3);
        return build_random(ErdosRenyi{parse_double(parts[2], "--graph")}, n, seed);
    }
    if (kind == "ws") {
        arity(4);
        return build_random(WattsStrogatz{parse_size(parts[2], "--graph"), parse_double(parts[3], "--graph")}, n,
                            seed);
    }
    arity(3);
    return build_random(BarabasiAlbert{parse_size(parts[2], "--graph")}, n, seed);
}

CouplingMatrix coupling_from_config(const json& cfg, std::size_t m) {
    const json& h = cfg.at("H");
    if (h.is_string()) {
        if (h.get<std::string>() != "identity") throw Error(ErrorCode::Parse, "--H: expected 'identity' or rows");
        return CouplingMatrix::identity(m);
    }
    return CouplingMatrix(matrix_from_json(h, "--H"));
}

double positive(const json& cfg, const char* key) {
    const double v = cfg.at(key).get<double>();
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidParams, std::string(key) + " must be positive");
    return v;
}

// ---------------------------------------------------------------------------
// Option registry. Every option except the output paths and --config lands in
// the resolved config under its key.

struct OptionSpec {
    const char* flag;
    const char* key;
    const char* help;
    json (*parse)(const std::string&);
};

const OptionSpec kOptions[] = {
    {"--graph", "graph", "complete:n | star:n | path:n | ring:n | er:n:p | ws:n:k:p | ba:n:m",
     [](const std::string& s) { return json(s); }},
    {"--edges", "edges", "edge-list file (first line n, then 'u v' per line)",
     [](const std::string& s) { return json(s); }},
    {"--seed", "seed", "seed for random graph models", [](const std::string& s) { return json(parse_uint(s, "--seed")); }},
    {"--lorenz", "lorenz", "classic | sigma,r,b", parse_lorenz},
    {"--H", "H", "identity | rows 'a,b,c;d,e,f;g,h,i'",
     [](const std::string& s) { return s == "identity" ? json(s) : parse_rows(s, "--H"); }},
    {"--alpha", "alpha", "global coupling", [](const std::string& s) { return json(parse_double(s, "--alpha")); }},
    {"--dt", "dt", "RK4 step", [](const std::string& s) { return json(parse_double(s, "--dt")); }},
    {"--tmax", "tmax", "integration horizon", [](const std::string& s) { return json(parse_double(s, "--tmax")); }},
    {"--window", "window", "averaging window lo,hi",
     [](const std::string& s) {
         const auto v = parse_list(s, "--window");
         if (v.size() != 2) throw Error(ErrorCode::Parse, "--window: expected lo,hi");
         return json(v);
     }},
    {"--ic-spread", "ic_spread", "distance between neighbouring initial states",
     [](const std::string& s) { return json(parse_double(s, "--ic-spread")); }},
    {"--ic-base", "ic_base", "base initial state x,y,z",
     [](const std::string& s) { return json(parse_list(s, "--ic-base")); }},
    {"--save-stride", "save_stride", "keep every n-th state in the trajectory CSV",
     [](const std::string& s) { return json(parse_uint(s, "--save-stride")); }},
    {"--alphas", "alphas", "a,b,... or lo:hi:step", [](const std::string& s) { return json(parse_values(s, "--alphas")); }},
    {"--xis", "xis", "a,b,... or lo:hi:step", [](const std::string& s) { return json(parse_values(s, "--xis")); }},
    {"--xi", "xi", "perturbation scale", [](const std::string& s) { return json(parse_double(s, "--xi")); }},
    {"--shape", "shape", "perturbation shape rows 'a,b,c;d,e,f;g,h,i'",
     [](const std::string& s) { return parse_rows(s, "--shape"); }},
    {"--omega", "omega", "cosine modulation frequency", [](const std::string& s) { return json(parse_double(s, "--omega")); }},
    {"--edge", "edge", "perturbed edge i,j (acts on vertex i)",
     [](const std::string& s) {
         const auto parts = split(s, ',');
         if (parts.size() != 2) throw Error(ErrorCode::Parse, "--edge: expected i,j");
         return json::array({parse_uint(parts[0], "--edge"), parse_uint(parts[1], "--edge")});
     }},
    {"--eta-convention", "eta_convention", "per-mode | general",
     [](const std::string& s) {
         if (s != "per-mode" && s != "general") throw Error(ErrorCode::Parse, "--eta-convention: per-mode | general");
         return json(s);
     }},
    {"--kappa", "kappa", "dichotomy constant (>= 1)", [](const std::string& s) { return json(parse_double(s, "--kappa")); }},
    {"--beta-grid", "beta_grid", "points per axis for the sampled beta",
     [](const std::string& s) { return json(parse_uint(s, "--beta-grid")); }},
};

const std::map<std::string, std::vector<std::string>> kCommandKeys = {
    {"spectrum", {"graph", "edges", "seed"}},
    {"critical", {"graph", "edges", "seed", "lorenz", "H", "alpha", "beta_grid"}},
    {"simulate",
     {"graph", "edges", "seed", "lorenz", "H", "alpha", "dt", "tmax", "window", "ic_spread", "ic_base", "save_stride"}},
    {"sweep", {"graph", "edges", "seed", "lorenz", "H", "alphas", "dt", "tmax", "window", "ic_spread", "ic_base"}},
    {"colormap",
     {"graph", "edges", "seed", "lorenz", "H", "alphas", "xis", "shape", "omega", "edge", "dt", "tmax", "window",
      "ic_spread", "ic_base"}},
    {"persistence",
     {"graph", "edges", "seed", "lorenz", "H", "alpha", "xi", "shape", "omega", "edge", "eta_convention", "kappa",
      "beta_grid"}},
};

const char* const kCommandHelp[][2] = {
    {"spectrum", "Laplacian eigenvalues, with the closed-form lambda2 for regular families"},
    {"critical", "beta, lambda2, mu1 and the critical coupling as JSON"},
    {"simulate", "integrate the network; final sync error as JSON, trajectory CSV to --out"},
    {"sweep", "time-averaged sync error over --alphas; CSV to --out"},
    {"colormap", "time-averaged sync error over --alphas x --xis; CSV to --out, image to --pgm"},
    {"persistence", "persistence bound for xi * shape on one edge as JSON"},
};

bool allowed(const std::string& command, const std::string& key) {
    const auto& keys = kCommandKeys.at(command);
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void fill_defaults(const std::string& command, json& cfg) {
    auto set = [&](const char* key, json value) {
        if (allowed(command, key) && !cfg.contains(key)) cfg[key] = std::move(value);
    };
    if (!cfg.contains("graph") && !cfg.contains("edges")) throw UsageError("one of --graph or --edges is required");
    if (cfg.contains("graph") && cfg.contains("edges")) throw UsageError("--graph and --edges are exclusive");
    const bool random = cfg.contains("graph") && is_random_kind(graph_kind(cfg["graph"].get<std::string>()));
    if (random && !cfg.contains("seed")) throw UsageError("random graph models need --seed");
    set("seed", 0);
    set("lorenz", lorenz_json(LorenzParams::classic()));
    set("H", "identity");
    set("beta_grid", 41);
    set("dt", 1e-3);
    set("ic_spread", 0.014);
    set("ic_base", json::array({-7.0, 10.0, 5.0}));
    set("save_stride", 100);
    if (command == "simulate") {
        set("tmax", 100.0);
        set("window", nullptr);
    } else {
        set("tmax", 2000.0);
        set("window", json::array({1000.0, 2000.0}));
    }
    set("shape", json::array({json::array({1.0, 0.0, -1.0}), json::array({0.0, -1.0, 0.0}),
                              json::array({-1.0, 0.0, 1.0})}));
    set("omega", nullptr);
    set("edge", json::array({0, 1}));
    set("eta_convention", "per-mode");
    set("kappa", 1.0);
    set("alpha", nullptr);
    for (const char* required : {"alphas", "xis", "xi"}) {
        if (allowed(command, required) && !cfg.contains(required)) {
            throw UsageError(command + " needs --" + std::string(required));
        }
    }
    if ((command == "simulate" || command == "persistence") && cfg["alpha"].is_null()) {
        throw UsageError(command + " needs --alpha");
    }
}

// ---------------------------------------------------------------------------

struct Model {
    Graph graph;
    LorenzParams lorenz;
    CouplingMatrix h;
};

Model build_model(const json& cfg) {
    Graph g = graph_from_config(cfg);
    const LorenzParams p = lorenz_from_json(cfg.at("lorenz"));
    return {std::move(g), p, coupling_from_config(cfg, 3)};
}

State initial_condition(const json& cfg, std::size_t vertices) {
    const auto base = cfg.at("ic_base").get<std::vector<double>>();
    if (base.size() != 3) throw Error(ErrorCode::DimensionMismatch, "--ic-base needs 3 entries");
    return spread_initial_condition(base, vertices, cfg.at("ic_spread").get<double>());
}

std::size_t step_count(const json& cfg) {
    const double steps = std::round(positive(cfg, "tmax") / positive(cfg, "dt"));
    if (steps < 1.0 || steps > 1e12) throw Error(ErrorCode::InvalidParams, "tmax / dt must be in [1, 1e12]");
    return static_cast<std::size_t>(steps);
}

SimConfig sim_config(const json& cfg) {
    SimConfig sc;
    sc.dt = positive(cfg, "dt");
    sc.t_end = positive(cfg, "tmax");
    const auto window = cfg.at("window").get<std::vector<double>>();
    if (window.size() != 2) throw Error(ErrorCode::Parse, "window needs two entries");
    sc.window_lo = window[0];
    sc.window_hi = window[1];
    sc.seed = cfg.at("seed").get<std::uint64_t>();
    return sc;
}

PerturbationShape perturbation_shape(const json& cfg) {
    PerturbationShape shape{matrix_from_json(cfg.at("shape"), "--shape"), std::nullopt, 0, 1};
    if (!cfg.at("omega").is_null()) shape.omega = cfg["omega"].get<double>();
    const auto edge = cfg.at("edge").get<std::vector<std::size_t>>();
    shape.i = edge.at(0);
    shape.j = edge.at(1);
    return shape;
}

json parse_json(const std::string& s) { return json::parse(s); }

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::InvalidParams, "cannot open '" + path + "' for writing");
    f << std::setprecision(17);
    return f;
}

std::string format_eigenvalue(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << (std::abs(v) < kZeroEigenvalueTol ? 0.0 : v);
    return s.str();
}

void run_spectrum(const json& cfg, std::ostream& out) {
    const Graph g = graph_from_config(cfg);
    const SpectralDecomp s = spectrum(g);
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        out << (k ? " " : "") << format_eigenvalue(s.eigenvalues[k]);
    }
    out << '\n';
    const double lambda2 = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
    out << "lambda2 " << std::setprecision(17) << lambda2 << '\n';
    if (const auto kind = regular_kind(cfg)) {
        const double analytic = lambda2_analytic(*kind, g.vertex_count());
        out << "analytic_lambda2 " << analytic << ' '
            << (std::abs(analytic - lambda2) <= 1e-9 * std::max(1.0, analytic) ? "match" : "mismatch") << '\n';
    }
    out << "config " << cfg.dump() << '\n';
}

void run_critical(const json& cfg, std::ostream& out) {
    const Model m = build_model(cfg);
    const CouplingReport report = alpha_c_general(m.graph, m.lorenz, m.h, BetaOptions{cfg["beta_grid"].get<std::size_t>(), false});
    json doc = cfg["alpha"].is_null() ? parse_json(to_json(report))
                                      : parse_json(to_json(report, cfg["alpha"].get<double>()));
    doc["config"] = cfg;
    out << doc.dump(2) << '\n';
}

void run_simulate(const json& cfg, const std::optional<std::string>& out_path, std::ostream& out) {
    const Model m = build_model(cfg);
    const NetworkSystem sys(m.graph, lorenz_field(m.lorenz), m.h, cfg["alpha"].get<double>());
    const std::size_t steps = step_count(cfg);
    const std::size_t stride = cfg["save_stride"].get<std::size_t>();
    if (stride == 0) throw Error(ErrorCode::InvalidParams, "save_stride must be positive");
    const double dt = cfg["dt"].get<double>();

    std::optional<std::pair<double, double>> window;
    if (!cfg["window"].is_null()) {
        const auto w = cfg["window"].get<std::vector<double>>();
        if (w.size() != 2 || !(w[0] <= w[1]) || w[0] < 0.0 || w[1] > static_cast<double>(steps) * dt + 1e-9) {
            throw Error(ErrorCode::WindowOutOfRange, "window must lie inside [0, tmax]");
        }
        window.emplace(w[0], w[1]);
    }

    std::optional<std::ofstream> csv;
    if (out_path) {
        csv.emplace(open_output(*out_path));
        *csv << 't';
        for (std::size_t v = 0; v < sys.vertex_count(); ++v) {
            for (std::size_t c = 0; c < sys.dim(); ++c) *csv << ",x" << v << '_' << c;
        }
        *csv << '\n';
    }
    double sum = 0.0;
    std::size_t count = 0;
    const std::size_t n = sys.vertex_count(), dim = sys.dim();
    const State final_state = rk4_run(sys, initial_condition(cfg, n), IntegrationOptions{dt, steps, 1, 0.0},
                                      [&](std::size_t step, double t, std::span<const double> x) {
                                          if (window && t >= window->first && t <= window->second) {
                                              sum += sync_error(x, n, dim);
                                              ++count;
                                          }
                                          if (csv && (step % stride == 0 || step == steps)) {
                                              *csv << t;
                                              for (double v : x) *csv << ',' << v;
                                              *csv << '\n';
                                          }
                                      });

    json doc;
    doc["final_time"] = static_cast<double>(steps) * dt;
    doc["final_sync_error"] = sync_error(final_state, n, dim);
    if (window) doc["window_avg_sync_error"] = count ? sum / static_cast<double>(count) : 0.0;
    doc["config"] = cfg;
    out << doc.dump(2) << '\n';
}

void emit_sweep(const SweepResult& result, const json& cfg, const std::string& out_path,
                const std::optional<std::string>& pgm_path, std::ostream& out) {
    {
        std::ofstream csv = open_output(out_path);
        write_sweep_csv(csv, result);
    }
    if (pgm_path) {
        std::ofstream pgm = open_output(*pgm_path);
        write_sweep_pgm(pgm, result);
    }
    json meta = parse_json(sweep_metadata_json(result));
    meta["config"] = cfg;
    std::ofstream sidecar = open_output(out_path + ".json");
    sidecar << meta.dump(2) << '\n';
    out << meta.dump(2) << '\n';
}

void run_sweep(const std::string& command, const json& cfg, const std::optional<std::string>& out_path,
               const std::optional<std::string>& pgm_path, std::ostream& out) {
    if (!out_path) throw UsageError(command + " needs --out");
    const Model m = build_model(cfg);
    const NetworkSystem base(m.graph, lorenz_field(m.lorenz), m.h, 0.0);
    const auto alphas = cfg["alphas"].get<std::vector<double>>();
    const State ic = initial_condition(cfg, base.vertex_count());
    const SimConfig sc = sim_config(cfg);
    if (command == "sweep") {
        emit_sweep(alpha_sweep(base, alphas, ic, sc), cfg, *out_path, pgm_path, out);
        return;
    }
    const auto xis = cfg["xis"].get<std::vector<double>>();
    emit_sweep(colormap_sweep(base, alphas, xis, perturbation_shape(cfg), ic, sc), cfg, *out_path, pgm_path, out);
}

void run_persistence(const json& cfg, std::ostream& out) {
    const Model m = build_model(cfg);
    const CouplingReport report = alpha_c_general(m.graph, m.lorenz, m.h, BetaOptions{cfg["beta_grid"].get<std::size_t>(), false});
    const PerturbationShape shape = perturbation_shape(cfg);
    const double xi = cfg["xi"].get<double>();
    const std::vector<Perturbation> perturbations{{shape.i, shape.j, shape.shape.scaled(xi), shape.omega}};
    const EtaConvention convention =
        cfg["eta_convention"].get<std::string>() == "general" ? EtaConvention::General : EtaConvention::PerMode;
    const PersistenceReport pr = persistence_bound(report, cfg["alpha"].get<double>(), m.graph, perturbations,
                                                   convention, cfg["kappa"].get<double>());
    json doc = parse_json(to_json(pr));
    doc["alpha_critical"] = report.alpha_critical;
    doc["max_xi"] = max_perturbation_scale(pr, shape.shape);
    doc["config"] = cfg;
    out << doc.dump(2) << '\n';
}

json load_config_file(const std::string& path, const std::string& command) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Parse, "cannot read config '" + path + "'");
    json doc = json::parse(f);
    if (doc.contains("config")) doc = doc["config"];
    if (!doc.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
    if (doc.contains("command") && doc["command"] != command) {
        throw UsageError("config was written by '" + doc["command"].get<std::string>() + "', not '" + command + "'");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "command" && !allowed(command, key)) {
            throw Error(ErrorCode::Parse, "config key '" + key + "' does not apply to " + command);
        }
    }
    return doc;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Synchronization analysis for diffusively coupled oscillator networks", "syncnet"};
    app.require_subcommand(1);

    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::App*> subs;
    std::map<std::pair<std::string, std::string>, CLI::Option*> given;
    std::optional<std::string> config_path, out_path, pgm_path;

    for (const auto& [name, help] : kCommandHelp) {
        CLI::App* sub = app.add_subcommand(name, help);
        subs[name] = sub;
        for (const OptionSpec& o : kOptions) {
            if (!allowed(name, o.key)) continue;
            given[{name, o.key}] = sub->add_option(o.flag, raw[std::string(name) + "/" + o.key], o.help);
        }
        sub->add_option("--config", config_path, "resolved config JSON (or a previous output) to start from");
        if (std::string(name) != "spectrum" && std::string(name) != "critical" &&
            std::string(name) != "persistence") {
            sub->add_option("--out", out_path,
                            std::string(name) == "simulate" ? "trajectory CSV" : "grid CSV (metadata to <out>.json)");
        }
        if (std::string(name) == "sweep" || std::string(name) == "colormap") {
            sub->add_option("--pgm", pgm_path, "grey-scale image of the grid");
        }
    }

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();

    std::string command;
    try {
        app.parse(args);
        for (const auto& [name, sub] : subs) {
            if (sub->parsed()) command = name;
        }

        json cfg = config_path ? load_config_file(*config_path, command) : json::object();
        cfg.erase("command");
        if (given.at({command, "graph"})->count() && given.at({command, "edges"})->count()) {
            throw UsageError("--graph and --edges are exclusive");
        }
        for (const OptionSpec& o : kOptions) {
            if (!allowed(command, o.key)) continue;
            if (given.at({command, o.key})->count() == 0) continue;
            cfg[o.key] = o.parse(raw[command + "/" + o.key]);
            if (std::string(o.key) == "graph") cfg.erase("edges");
            if (std::string(o.key) == "edges") cfg.erase("graph");
        }
        fill_defaults(command, cfg);

        json resolved;
        resolved["command"] = command;
        for (const std::string& key : kCommandKeys.at(command)) {
            if (cfg.contains(key)) resolved[key] = cfg[key];
        }

        if (command == "spectrum") run_spectrum(resolved, out);
        if (command == "critical") run_critical(resolved, out);
        if (command == "simulate") run_simulate(resolved, out_path, out);
        if (command == "sweep" || command == "colormap") run_sweep(command, resolved, out_path, pgm_path, out);
        if (command == "persistence") run_persistence(resolved, out);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << (command.empty() ? app.help() : subs.at(command)->help());
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << (command.empty() ? app.help() : subs.at(command)->help());
        return 1;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return is_numerical_failure(e.code()) ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error [Parse]: " << e.what() << '\n';
        return 1;
    }
}

int run(int argc, const char* const* argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace syncnet::cli
