#include "nlcs/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlcs/specfun.hpp"

namespace nlcs::cli {

namespace {

using cd = std::complex<double>;
using Cell = MetaValue;

struct Report {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> diagnostics;
};

double to_double(std::string_view s)
{
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size())
        throw UsageError("not a number: '" + std::string(s) + "'");
    return v;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string cell_text(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_number(v);
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else
                return v;
        },
        c);
}

std::string csv_field(const Cell& c)
{
    std::string s = cell_text(c);
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"')
            quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

nlohmann::ordered_json cell_json(const Cell& c)
{
    return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

void emit(const RunConfig& config, const Report& report, std::ostream& out)
{
    if (config.format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < report.header.size(); ++i)
            out << (i ? "," : "") << report.header[i];
        out << '\n';
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << csv_field(row[i]);
            out << '\n';
        }
        for (const auto& [key, value] : report.diagnostics)
            out << "# " << key << ',' << csv_field(value) << '\n';
        return;
    }
    nlohmann::ordered_json doc;
    auto& meta = doc["meta"];
    meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config.echo)
        meta[key] = cell_json(value);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            r[report.header[i]] = cell_json(row[i]);
        doc["rows"].push_back(std::move(r));
    }
    auto& diag = doc["diagnostics"];
    diag = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.diagnostics)
        diag[key] = cell_json(value);
    out << doc.dump(2) << '\n';
}

// ---- config file ----

bool flag_present(const std::vector<std::string>& args, const std::string& key)
{
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw UsageError("--config needs a path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (!path)
        return args;

    std::ifstream in(*path);
    if (!in)
        throw UsageError("cannot read config file '" + *path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string text = trim(std::string_view(line).substr(0, hash));
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw UsageError(*path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        if (key.rfind("--", 0) == 0)
            key.erase(0, 2);
        if (key.empty() || value.empty())
            throw UsageError(*path + ":" + std::to_string(lineno) + ": empty key or value");
        if (key == "command") {
            if (args.empty() || args.front().rfind("-", 0) == 0)
                args.insert(args.begin(), value);
            continue;
        }
        if (!flag_present(args, key))
            args.push_back("--" + key + "=" + value);
    }
    return args;
}

// ---- parsing helpers ----

const std::map<std::string, StateFamily> family_names{{"phase", StateFamily::Phase},
                                                      {"barut-girardello", StateFamily::BarutGirardello},
                                                      {"bg", StateFamily::BarutGirardello},
                                                      {"london", StateFamily::London},
                                                      {"su11-perelomov", StateFamily::Su11Perelomov},
                                                      {"perelomov", StateFamily::Su11Perelomov}};

const std::map<std::string, LatticeKind> lattice_names{{"su11", LatticeKind::Su11},
                                                       {"glauber-fock", LatticeKind::Su11},
                                                       {"uniform", LatticeKind::Uniform}};

const std::map<std::string, Suite> suite_names{{"specfun", Suite::Specfun}, {"algebra", Suite::Algebra},
                                               {"states", Suite::States},   {"lattice", Suite::Lattice},
                                               {"all", Suite::All}};

template <typename Map>
std::vector<std::string> keys_of(const Map& m)
{
    std::vector<std::string> out;
    for (const auto& [k, v] : m)
        out.push_back(k);
    return out;
}

std::string family_name(StateFamily f)
{
    switch (f) {
    case StateFamily::Phase: return "phase";
    case StateFamily::BarutGirardello: return "barut-girardello";
    case StateFamily::London: return "london";
    case StateFamily::Su11Perelomov: return "su11-perelomov";
    }
    return {};
}

std::string lattice_name(LatticeKind k) { return k == LatticeKind::Su11 ? "su11" : "uniform"; }

void echo_complex(RunConfig& c, const std::string& key, cd z)
{
    c.echo.emplace_back(key + "_re", z.real());
    c.echo.emplace_back(key + "_im", z.imag());
}

struct Common {
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* sub, Common& common)
{
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", common.output, "write to this file instead of stdout");
}

// ---- commands ----

Report state_report(const RunConfig& c)
{
    FockVector<double> v = make_state(c.state);
    if (c.normalize) {
        const double n = v.norm();
        if (n == 0.0 || !std::isfinite(n))
            throw NumericError("state: cannot normalize a zero or non-finite vector");
        v /= n;
    }
    Report r;
    r.header = {"index", "re", "im", "abs2"};
    for (Index j = 0; j < v.size(); ++j)
        r.rows.push_back({static_cast<long long>(j), v(j).real(), v(j).imag(), std::norm(v(j))});
    r.diagnostics.emplace_back("norm2", v.squaredNorm());
    return r;
}

Index emitted_guides(const RunConfig& c)
{
    const Index available = c.lattice.dim - lattice_edge_band;
    return c.guides > 0 ? std::min(c.guides, c.lattice.dim) : available;
}

void add_propagation_diagnostics(Report& r, const PropagationResult& result, std::optional<double> oracle_error,
                                 double tolerance)
{
    r.diagnostics.emplace_back("norm_drift", result.norm_drift);
    r.diagnostics.emplace_back("edge_leakage", result.edge_leakage);
    if (oracle_error) {
        r.diagnostics.emplace_back("oracle_max_error", *oracle_error);
        r.diagnostics.emplace_back("oracle_tolerance", tolerance);
        r.diagnostics.emplace_back("pass", *oracle_error <= tolerance);
    }
}

Report impulse_report(const RunConfig& c, bool& passed)
{
    const auto result = propagate(c.lattice, basis_state(c.lattice.dim, 0), c.zmax, c.samples, c.steps_per_sample);
    const double error = compare_to_oracle(result, c.lattice);
    const Index guides = emitted_guides(c);
    Report r;
    r.header = {"z", "guide", "re", "im", "abs2"};
    for (double z : result.z_grid) {
        const FockVector<double> exact = impulse_profile(c.lattice, guides, z);
        for (Index m = 0; m < guides; ++m)
            r.rows.push_back({z, static_cast<long long>(m), exact(m).real(), exact(m).imag(), std::norm(exact(m))});
    }
    add_propagation_diagnostics(r, result, error, c.oracle_tolerance);
    passed = error <= c.oracle_tolerance;
    return r;
}

Report propagate_report(const RunConfig& c, bool& passed)
{
    const auto result = propagate(c.lattice, basis_state(c.lattice.dim, c.input_waveguide), c.zmax, c.samples,
                                  c.steps_per_sample);
    std::optional<double> error;
    if (c.input_waveguide == 0 && c.zmax >= 0)
        error = compare_to_oracle(result, c.lattice);
    const Index guides = emitted_guides(c);
    Report r;
    r.header = {"z", "guide", "re", "im", "abs2"};
    for (std::size_t s = 0; s < result.z_grid.size(); ++s) {
        const auto& e = result.fields[s];
        for (Index m = 0; m < guides; ++m)
            r.rows.push_back({result.z_grid[s], static_cast<long long>(m), e(m).real(), e(m).imag(), std::norm(e(m))});
    }
    add_propagation_diagnostics(r, result, error, c.oracle_tolerance);
    passed = !error || *error <= c.oracle_tolerance;
    return r;
}

Report checks_report(const std::vector<CheckResult>& checks, bool& passed)
{
    Report r;
    r.header = {"check", "residual", "tolerance", "pass"};
    passed = true;
    for (const auto& check : checks) {
        r.rows.push_back({check.name, check.residual, check.tolerance, check.passed()});
        passed = passed && check.passed();
    }
    r.diagnostics.emplace_back("checks", static_cast<long long>(checks.size()));
    r.diagnostics.emplace_back("failed", static_cast<long long>(std::count_if(
                                             checks.begin(), checks.end(), [](const auto& x) { return !x.passed(); })));
    return r;
}

Report bch_report(const RunConfig& c, bool& passed)
{
    const auto report = bch_check(c.bch, c.bch_dim, c.edge_exclusion, c.precision, c.tolerance);
    Report r = checks_report({report.identity, report.round_trip}, passed);
    const auto& p = report.converted;
    r.diagnostics.emplace_back("converted_ordering",
                               std::string(p.ordering == BchOrdering::NormalFirst ? "normal" : "antinormal"));
    r.diagnostics.emplace_back("converted_plus_re", p.plus.real());
    r.diagnostics.emplace_back("converted_plus_im", p.plus.imag());
    r.diagnostics.emplace_back("converted_zero_re", p.zero.real());
    r.diagnostics.emplace_back("converted_zero_im", p.zero.imag());
    r.diagnostics.emplace_back("converted_minus_re", p.minus.real());
    r.diagnostics.emplace_back("converted_minus_im", p.minus.imag());
    return r;
}

} // namespace

std::complex<double> parse_complex(std::string_view text)
{
    static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex real_only("^([+-]?" + num + ")$");
    static const std::regex imag_only("^([+-]?)(" + num + ")?i$");
    static const std::regex both("^([+-]?" + num + ")([+-])(" + num + ")?i$");
    const std::string s = trim(text);
    std::smatch m;
    if (std::regex_match(s, m, real_only))
        return {to_double(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str()), 0.0};
    if (std::regex_match(s, m, imag_only)) {
        const double mag = m[2].matched ? to_double(m[2].str()) : 1.0;
        return {0.0, m[1].str() == "-" ? -mag : mag};
    }
    if (std::regex_match(s, m, both)) {
        const std::string re = m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str();
        const double mag = m[3].matched ? to_double(m[3].str()) : 1.0;
        return {to_double(re), m[2].str() == "-" ? -mag : mag};
    }
    throw UsageError("not a complex number: '" + std::string(text) + "' (expected a, bi, a+bi or a-bi)");
}

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

RunConfig parse_args(const std::vector<std::string>& raw)
{
    const std::vector<std::string> args = merge_config(raw);

    CLI::App app{"Truncated Fock space coherent states, BCH reordering and waveguide lattices", "nlcs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    Common common;
    std::string family, phi_text, alpha_text, lattice = "uniform", sign = "positive", suite = "all";
    std::string plus_text = "0", zero_text = "1", minus_text = "0", ordering = "antinormal", precision = "quad";
    double k = 0.5, zmax = 0.0, oracle_tol = 1e-8, tolerance = 1e-9;
    Index dim = 0, input_wg = 0, guides = 0, edge = -1;
    int samples = 20, steps = 0;
    bool normalize = false;

    auto* state = app.add_subcommand("state", "amplitudes of a coherent state");
    state->add_option("--family", family, "phase, barut-girardello, london, su11-perelomov")
        ->required()
        ->check(CLI::IsMember(keys_of(family_names)));
    state->add_option("--phi", phi_text, "phase-state angle");
    state->add_option("--alpha", alpha_text, "coherent-state amplitude (a+bi)");
    state->add_option("--k", k, "Bargmann index of the su11-perelomov family");
    state->add_option("--dim", dim, "Fock-space dimension (default 64)");
    state->add_flag("--normalize", normalize, "rescale the printed vector to unit norm");
    add_common(state, common);

    const auto add_lattice_options = [&](CLI::App* sub) {
        sub->add_option("--lattice", lattice, "su11 or uniform")->required()->check(CLI::IsMember(keys_of(lattice_names)));
        sub->add_option("--zmax", zmax, "propagation length")->required();
        sub->add_option("--dim", dim, "number of guides (default sized to keep the edge dark)");
        sub->add_option("--samples", samples, "output points after z = 0");
        sub->add_option("--steps", steps, "RK4 substeps per output point (default keeps h <= 1e-3 and h ||H|| <= 0.02)");
        sub->add_option("--sign", sign, "positive: E(z) = exp(+izH)E(0); negative: exp(-izH)")
            ->check(CLI::IsMember({"positive", "negative"}));
        sub->add_option("--guides", guides, "guides written per z (default all below the edge band)");
        sub->add_option("--oracle-tolerance", oracle_tol, "max allowed deviation from the closed form");
        add_common(sub, common);
    };
    auto* impulse = app.add_subcommand("impulse", "closed-form impulse response, checked against propagation");
    add_lattice_options(impulse);
    auto* prop = app.add_subcommand("propagate", "RK4 propagation of a single-guide input");
    add_lattice_options(prop);
    prop->add_option("--input-waveguide", input_wg, "guide that carries the unit input");

    auto* bch = app.add_subcommand("bch-check", "reorder exp(X+ K+) X0^K0 exp(X- K-) products");
    bch->add_option("--plus", plus_text, "X+ (a+bi)");
    bch->add_option("--zero", zero_text, "X0 (a+bi, nonzero)");
    bch->add_option("--minus", minus_text, "X- (a+bi)");
    bch->add_option("--ordering", ordering, "ordering of the given parameters: normal or antinormal")
        ->check(CLI::IsMember({"normal", "antinormal"}));
    bch->add_option("--dim", dim, "Fock-space dimension (default 64)");
    bch->add_option("--edge", edge, "top levels excluded from the comparison (default N/4)");
    bch->add_option("--precision", precision, "double or quad")->check(CLI::IsMember({"double", "quad"}));
    bch->add_option("--tolerance", tolerance, "max entrywise deviation");
    add_common(bch, common);

    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("--suite", suite, "specfun, algebra, states, lattice, all")
        ->check(CLI::IsMember(keys_of(suite_names)));
    verify->add_option("--dim", dim, "Fock-space dimension (default 64)");
    add_common(verify, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        for (const auto* sub : app.get_subcommands())
            target = sub;
        throw HelpRequested{target->help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig c;
    c.format = common.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (!common.output.empty())
        c.output_path = common.output;
    const auto dim_or = [&](Index fallback) { return dim > 0 ? dim : fallback; };
    if (dim < 0)
        throw RangeError("--dim must be positive");

    if (state->parsed()) {
        c.command = Command::State;
        c.echo.emplace_back("command", std::string("state"));
        c.state.family = family_names.at(family);
        c.state.dim = dim_or(64);
        c.state.bargmann_k = k;
        c.normalize = normalize;
        c.echo.emplace_back("family", family_name(c.state.family));
        if (c.state.family == StateFamily::Phase) {
            if (phi_text.empty())
                throw UsageError("state --family phase needs --phi");
            if (!alpha_text.empty())
                throw UsageError("--alpha does not apply to the phase family");
            c.state.param = to_double(trim(phi_text));
            c.echo.emplace_back("phi", c.state.param.real());
        } else {
            if (alpha_text.empty())
                throw UsageError("state --family " + family + " needs --alpha");
            if (!phi_text.empty())
                throw UsageError("--phi applies only to the phase family");
            c.state.param = parse_complex(alpha_text);
            if (c.state.family == StateFamily::London && c.state.param.imag() != 0.0)
                throw UsageError("London states need a real alpha (got " + alpha_text + ")");
            echo_complex(c, "alpha", c.state.param);
        }
        if (c.state.family == StateFamily::Su11Perelomov)
            c.echo.emplace_back("k", k);
        c.echo.emplace_back("dim", static_cast<long long>(c.state.dim));
        c.echo.emplace_back("normalize", normalize);
        validate(c.state);
    } else if (impulse->parsed() || prop->parsed()) {
        c.command = impulse->parsed() ? Command::Impulse : Command::Propagate;
        c.echo.emplace_back("command", std::string(impulse->parsed() ? "impulse" : "propagate"));
        if (!std::isfinite(zmax))
            throw RangeError("--zmax must be finite");
        if (c.command == Command::Impulse && zmax < 0)
            throw RangeError("impulse: --zmax must be non-negative");
        if (samples < 1 || steps < 0 || guides < 0)
            throw RangeError("--samples must be positive; --steps and --guides non-negative");
        c.lattice.kind = lattice_names.at(lattice);
        c.lattice.sign = sign == "negative" ? PropagationSign::Negative : PropagationSign::Positive;
        c.lattice.dim = dim_or(default_lattice_dim(c.lattice.kind, zmax));
        c.zmax = zmax;
        c.samples = samples;
        c.steps_per_sample = steps > 0 ? steps : default_steps_per_sample(c.lattice, zmax, samples);
        c.guides = guides;
        c.input_waveguide = input_wg;
        c.oracle_tolerance = oracle_tol;
        if (input_wg < 0 || input_wg >= c.lattice.dim)
            throw RangeError("--input-waveguide must lie in [0, dim)");
        c.echo.emplace_back("lattice", lattice_name(c.lattice.kind));
        c.echo.emplace_back("sign", sign);
        c.echo.emplace_back("dim", static_cast<long long>(c.lattice.dim));
        c.echo.emplace_back("zmax", zmax);
        c.echo.emplace_back("samples", static_cast<long long>(samples));
        c.echo.emplace_back("steps", static_cast<long long>(c.steps_per_sample));
        if (c.command == Command::Propagate)
            c.echo.emplace_back("input_waveguide", static_cast<long long>(input_wg));
        c.echo.emplace_back("guides", static_cast<long long>(emitted_guides(c)));
    } else if (bch->parsed()) {
        c.command = Command::BchCheck;
        c.echo.emplace_back("command", std::string("bch-check"));
        c.bch = {parse_complex(plus_text), parse_complex(zero_text), parse_complex(minus_text),
                 ordering == "normal" ? BchOrdering::NormalFirst : BchOrdering::AntinormalFirst};
        if (c.bch.zero == 0.0)
            throw RangeError("bch-check: --zero must be nonzero");
        c.bch_dim = dim_or(64);
        if (edge >= 0)
            c.edge_exclusion = edge;
        if (edge >= c.bch_dim)
            throw RangeError("bch-check: --edge must be smaller than --dim");
        c.precision = precision == "double" ? Precision::Double : Precision::Quad;
        c.tolerance = tolerance;
        c.echo.emplace_back("ordering", ordering);
        echo_complex(c, "plus", c.bch.plus);
        echo_complex(c, "zero", c.bch.zero);
        echo_complex(c, "minus", c.bch.minus);
        c.echo.emplace_back("dim", static_cast<long long>(c.bch_dim));
        c.echo.emplace_back("edge", static_cast<long long>(c.edge_exclusion.value_or(default_edge_exclusion(c.bch_dim))));
        c.echo.emplace_back("precision", precision);
        c.echo.emplace_back("tolerance", tolerance);
    } else {
        c.command = Command::Verify;
        c.echo.emplace_back("command", std::string("verify"));
        c.suite = suite_names.at(suite);
        c.verify_dim = dim_or(64);
        c.echo.emplace_back("suite", suite);
        c.echo.emplace_back("dim", static_cast<long long>(c.verify_dim));
    }
    c.echo.emplace_back("format", common.format);
    return c;
}

int run(const RunConfig& config, std::ostream& out)
{
    bool passed = true;
    Report report;
    switch (config.command) {
    case Command::State: report = state_report(config); break;
    case Command::Impulse: report = impulse_report(config, passed); break;
    case Command::Propagate: report = propagate_report(config, passed); break;
    case Command::BchCheck: report = bch_report(config, passed); break;
    case Command::Verify: report = checks_report(run_suite(config.suite, config.verify_dim), passed); break;
    }

    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file)
            throw UsageError("cannot write '" + *config.output_path + "'");
        emit(config, report, file);
    } else {
        emit(config, report, out);
    }
    return passed ? exit_code::ok : exit_code::check_failed;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        return run(parse_args(args), out);
    } catch (const HelpRequested& h) {
        out << h.text;
        return exit_code::ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n(run with --help for the list of options)\n";
        return exit_code::usage;
    } catch (const SingularityError& e) {
        err << "singularity: " << e.what() << '\n';
        return exit_code::singularity;
    } catch (const TruncationError& e) {
        err << "truncation: " << e.what() << '\n';
        return exit_code::truncation;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_code::numeric;
    } catch (const Error& e) {
        // dimension, range and unsupported-oracle errors are precondition failures
        err << "invalid parameter: " << e.what() << '\n';
        return exit_code::range;
    }
}

} // namespace nlcs::cli
