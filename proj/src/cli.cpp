#include "diskdet/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskdet/determinant.hpp"
#include "diskdet/errors.hpp"
#include "diskdet/oracle.hpp"
#include "diskdet/specfun.hpp"
#include "diskdet/symbols.hpp"
#include "diskdet/zeta_eta.hpp"

namespace diskdet::cli {

using json = nlohmann::ordered_json;

namespace {

std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double number_field(const json& j, const char* key, const std::string& path)
{
    if (!j.contains(key)) throw ConfigError("missing field '" + path + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError("field '" + path + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("field '" + path + "' must be finite");
    return x;
}

std::vector<double> array_field(const json& j, const char* key, const std::string& path)
{
    if (!j.contains(key)) throw ConfigError("missing field '" + path + "'");
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError("field '" + path + "' must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ConfigError("field '" + path + "[" + std::to_string(i) + "]' must be a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::optional<double> positive_tolerance(const json& t, const char* key)
{
    if (!t.contains(key)) return std::nullopt;
    const std::string path = std::string("tolerances.") + key;
    const double x = number_field(t, key, path);
    if (!(x > 0.0)) throw ConfigError("field '" + path + "' must be positive");
    return x;
}

std::optional<double> env_tolerance()
{
    const char* raw = std::getenv("DISKDET_TOL");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (*end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw ConfigError("environment variable 'DISKDET_TOL' must be a positive number");
    return v;
}

LogDetOptions options_for(const Tolerances& t)
{
    LogDetOptions o;
    const auto env = env_tolerance();
    if (env) o.quadrature_tol = o.zeta_tail_tol = *env;
    if (t.quadrature) o.quadrature_tol = *t.quadrature;
    if (t.zeta_tail) o.zeta_tail_tol = *t.zeta_tail;
    return o;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

json complex_matrix(const symbols::Matrix<double>& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

json vector_json(const symbols::Vector<double>& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json index_json(const IndexReport& r)
{
    return json::array({r.zero_mode_count, r.chirality_trace, r.aps_formula});
}

json spectrum_json(const oracle::SpectrumReport& r)
{
    return {{"n", r.n},
            {"k", r.k},
            {"bc_type", oracle::to_string(r.bc_type)},
            {"grid_size", r.grid_size},
            {"zero_modes", r.zero_modes},
            {"eigenvalues", r.eigenvalues},
            {"reference", r.reference},
            {"max_rel_error", r.max_rel_error},
            {"symmetry_error", r.symmetry_error}};
}

struct Emitter {
    std::ostream& out;
    std::optional<std::string> path;

    void operator()(const std::string& text) const
    {
        if (path) {
            std::ofstream f(*path);
            if (!f) throw ConfigError("cannot write output file '" + *path + "'");
            f << text;
        } else {
            out << text;
        }
    }
    void operator()(const json& j) const { (*this)(j.dump(2) + "\n"); }
};

} // namespace

RunConfig parse_config(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig c;
    c.radius = number_field(j, "radius", "radius");
    if (!(c.radius > 0.0)) throw ConfigError("field 'radius' must be positive");

    if (!j.contains("profile") || !j["profile"].is_object())
        throw ConfigError("missing object field 'profile'");
    const auto& p = j["profile"];
    if (!p.contains("type") || !p["type"].is_string()) throw ConfigError("missing string field 'profile.type'");
    const auto type = p["type"].get<std::string>();
    if (type == "polynomial") {
        c.type = RunConfig::ProfileType::polynomial;
        c.coefficients = array_field(p, "coefficients", "profile.coefficients");
        if (c.coefficients.empty()) throw ConfigError("field 'profile.coefficients' must not be empty");
    } else if (type == "tabulated") {
        c.type = RunConfig::ProfileType::tabulated;
        c.r = array_field(p, "r", "profile.r");
        c.phi = array_field(p, "phi", "profile.phi");
        if (c.r.size() != c.phi.size()) throw ConfigError("fields 'profile.r' and 'profile.phi' differ in length");
        if (c.r.size() < 3) throw ConfigError("field 'profile.r' needs at least 3 nodes");
        if (c.r.front() != 0.0) throw ConfigError("field 'profile.r' must start at 0");
        for (std::size_t i = 1; i < c.r.size(); ++i)
            if (!(c.r[i] > c.r[i - 1])) throw ConfigError("field 'profile.r' must increase strictly");
        if (c.r.back() != c.radius) throw ConfigError("field 'profile.r' must end at 'radius'");
    } else {
        throw ConfigError("field 'profile.type' must be \"polynomial\" or \"tabulated\"");
    }

    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw ConfigError("field 'tolerances' must be an object");
        c.tolerances.quadrature = positive_tolerance(t, "quadrature");
        c.tolerances.zeta_tail = positive_tolerance(t, "zeta_tail");
    }
    if (j.contains("output_path")) {
        if (!j["output_path"].is_string()) throw ConfigError("field 'output_path' must be a string");
        c.output_path = j["output_path"].get<std::string>();
    }
    return c;
}

std::string serialize_config(const RunConfig& c)
{
    json j;
    j["radius"] = c.radius;
    if (c.type == RunConfig::ProfileType::polynomial)
        j["profile"] = {{"type", "polynomial"}, {"coefficients", c.coefficients}};
    else
        j["profile"] = {{"type", "tabulated"}, {"r", c.r}, {"phi", c.phi}};
    if (c.tolerances.quadrature || c.tolerances.zeta_tail) {
        json t = json::object();
        if (c.tolerances.quadrature) t["quadrature"] = *c.tolerances.quadrature;
        if (c.tolerances.zeta_tail) t["zeta_tail"] = *c.tolerances.zeta_tail;
        j["tolerances"] = t;
    }
    if (c.output_path) j["output_path"] = *c.output_path;
    return j.dump(2) + "\n";
}

FluxProfile make_profile(const RunConfig& c)
{
    if (c.type == RunConfig::ProfileType::polynomial) return FluxProfile::polynomial(c.radius, c.coefficients);
    return FluxProfile::tabulated(c.r, c.phi);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zeta-regularized Dirac determinants on a disk with APS boundary conditions", "diskdet"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("-o,--output", output, "Write the result to this file");

    std::string config_path, format = "json", zeros_format = "csv";
    double kappa = 0.0, nu = 0.0, radius = 1.0;
    int count = 5, n_mode = 0, k_level = -1, grid = 2000, cutoff = 1000, dim = 2;
    bool numeric = false, chiral = false;
    std::vector<int> modes{0, 1, 2};
    std::vector<double> xi, normal, beta;
    std::string fault;

    auto* det = app.add_subcommand("det", "Log-determinant quotient of a configured profile");
    det->add_option("-c,--config", config_path, "Run configuration (JSON)")->required();

    auto* index = app.add_subcommand("index", "Index three ways");
    auto* index_cfg = index->add_option("-c,--config", config_path, "Run configuration (JSON)");
    auto* index_kappa = index->add_option("--kappa", kappa, "Flux; uses phi = -kappa r^2/2 on R = 1");
    index_cfg->excludes(index_kappa);
    index->require_option(1);

    auto* eta = app.add_subcommand("eta", "Eta invariant of the boundary operator at s = 0");
    eta->add_option("--kappa", kappa, "Flux")->required();
    eta->add_flag("--numeric", numeric, "Also run the numeric continuation");
    eta->add_option("--cutoff", cutoff, "Paired terms summed explicitly")->check(CLI::PositiveNumber);

    auto* zeta = app.add_subcommand("zeta", "f_nu(0) and f'_nu(0)");
    zeta->add_option("--nu", nu, "Bessel order")->required();

    auto* zeros = app.add_subcommand("zeros", "Positive zeros of J_nu");
    zeros->add_option("--nu", nu, "Bessel order")->required();
    zeros->add_option("--count", count, "Number of zeros")->check(CLI::PositiveNumber);
    zeros->add_option("--format", zeros_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* spectrum = app.add_subcommand("spectrum", "Exact free spectrum of one angular mode");
    spectrum->add_option("--n", n_mode, "Angular mode")->required();
    spectrum->add_option("--k", k_level, "Level k")->required();
    spectrum->add_option("--radius", radius, "Disk radius");
    spectrum->add_option("--count", count, "Eigenvalues per sign")->check(CLI::PositiveNumber);

    auto* orc = app.add_subcommand("oracle", "Finite-difference spectra against Bessel zeros");
    orc->add_option("--n", modes, "Angular modes")->expected(1, -1);
    orc->add_option("--k", k_level, "Level k");
    orc->add_option("--radius", radius, "Disk radius");
    orc->add_option("--grid", grid, "Radial grid size (>= 200)");
    orc->add_option("--count", count, "Eigenvalues per sign")->check(CLI::PositiveNumber);
    orc->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* symbol = app.add_subcommand("symbol", "Calderon projector symbol and rank tests");
    symbol->add_option("--dim", dim, "Space-time dimension")->check(CLI::IsMember({2, 4}));
    symbol->add_option("--xi", xi, "Cotangent vector")->required()->expected(1, 4);
    symbol->add_option("--normal", normal, "Unit normal (full-vector form only)")->expected(2, 4);
    symbol->add_flag("--chiral", chiral, "Chiral block only");
    symbol->add_option("--beta", beta, "Local boundary condition (beta1, beta2)")->expected(2);

    auto* self = app.add_subcommand("selftest", "Run the invariant suite");
    self->add_option("--inject-fault", fault, "Test hook")->check(CLI::IsMember({"bessel-table"}));

    std::vector<const char*> argv{"diskdet"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : bad_config;
    }

    try {
        Emitter emit{out, output.empty() ? std::nullopt : std::optional<std::string>(output)};

        if (det->parsed()) {
            const auto config = load_config(config_path);
            if (!emit.path) emit.path = config.output_path;
            const auto profile = make_profile(config);
            const auto d = log_det(profile, options_for(config.tolerances));
            const auto idx = index_report(profile);
            emit(json{{"kappa", d.kappa},
                      {"k", d.k},
                      {"bulk", d.bulk},
                      {"zero_mode_part", d.zero_mode_part},
                      {"free_re", d.free_quotient_part.real()},
                      {"free_im", d.free_quotient_part.imag()},
                      {"total_re", d.total.real()},
                      {"total_im", d.total.imag()},
                      {"index", index_json(idx)}});
        } else if (index->parsed()) {
            FluxProfile profile = FluxProfile::polynomial(1.0, {0.0, -kappa / 2.0});
            if (!config_path.empty()) {
                const auto config = load_config(config_path);
                if (!emit.path) emit.path = config.output_path;
                profile = make_profile(config);
            }
            const auto fd = flux_data(profile);
            emit(json{{"kappa", fd.kappa}, {"k", fd.k}, {"index", index_json(index_report(profile))}});
        } else if (eta->parsed()) {
            const auto e = eta_zero(kappa);
            json j{{"kappa", e.kappa}, {"k", e.k}, {"h", e.h}, {"eta0", e.eta0}, {"index", e.index}};
            if (numeric) j["eta0_numeric"] = eta_zero_numeric(kappa, cutoff);
            emit(j);
        } else if (zeta->parsed()) {
            const auto tol = options_for({}).zeta_tail_tol;
            const auto z = zeta_values(nu, tol);
            emit(json{{"nu", z.order},
                      {"f0", z.f0},
                      {"fprime0", z.fprime0},
                      {"terms_used", z.terms_used},
                      {"tail_estimate", z.tail_estimate}});
        } else if (zeros->parsed()) {
            const specfun::BesselZeroTable table(nu, count);
            if (zeros_format == "json") {
                emit(json{{"nu", nu}, {"zeros", table.zeros()}});
            } else {
                std::string text = "nu,l,zero\n";
                for (int l = 1; l <= count; ++l)
                    text += format_double(nu) + "," + std::to_string(l) + "," + format_double(table.zero(l)) + "\n";
                emit(text);
            }
        } else if (spectrum->parsed()) {
            const auto bc = oracle::aps_component(n_mode, k_level);
            emit(json{{"n", n_mode},
                      {"k", k_level},
                      {"bc_type", oracle::to_string(bc)},
                      {"order", oracle::spectral_order(n_mode, bc)},
                      {"eigenvalues", oracle::free_spectrum_exact(n_mode, k_level, radius, count)}});
        } else if (orc->parsed()) {
            std::vector<oracle::SpectrumReport> reports;
            for (int n : modes) reports.push_back(oracle::free_spectrum_fd(n, k_level, radius, grid, count));
            if (format == "csv") {
                std::string text = "n,l,exact,fd,rel_err\n";
                for (const auto& r : reports)
                    for (int l = 1; l <= count; ++l) {
                        const double exact = r.reference[l - 1];
                        const double fd = r.eigenvalues[count + l - 1];
                        text += std::to_string(r.n) + "," + std::to_string(l) + "," + format_double(exact) + "," +
                                format_double(fd) + "," + format_double(std::abs(fd - exact) / exact) + "\n";
                    }
                emit(text);
            } else {
                json a = json::array();
                for (const auto& r : reports) a.push_back(spectrum_json(r));
                emit(a);
            }
        } else if (symbol->parsed()) {
            using symbols::Vector;
            const int len = static_cast<int>(xi.size());
            Vector<double> full, nvec;
            if (dim == 2 && len == 1) {
                if (xi[0] == 0.0) throw DomainError("symbol: xi must be nonzero");
                full = Vector<double>(2);
                full << 0.0, xi[0] > 0 ? 1.0 : -1.0;
                nvec = Vector<double>(2);
                nvec << 1.0, 0.0;
            } else if (dim == 4 && len == 3) {
                full = Vector<double>(4);
                full << xi[0], xi[1], xi[2], 0.0;
                const double norm = full.norm();
                if (norm == 0.0) throw DomainError("symbol: xi must be nonzero");
                full /= norm;
                nvec = Vector<double>::Unit(4, 3);
            } else if (len == dim) {
                full = Eigen::Map<Vector<double>>(xi.data(), len);
                if (normal.empty()) {
                    nvec = Vector<double>::Unit(dim, dim == 2 ? 0 : 3);
                } else {
                    if (static_cast<int>(normal.size()) != dim)
                        throw ConfigError("option '--normal' needs " + std::to_string(dim) + " components");
                    nvec = Eigen::Map<Vector<double>>(normal.data(), dim);
                }
            } else {
                throw ConfigError("option '--xi' needs 1 or 2 components for dim 2, 3 or 4 for dim 4");
            }
            const auto q = symbols::calderon_symbol<double>(dim, full, nvec);
            const auto block = chiral ? symbols::Matrix<double>(q.entries.topLeftCorner(dim / 2, dim / 2))
                                      : q.entries;
            json j{{"dim", dim},
                   {"chiral", chiral},
                   {"xi", vector_json(full)},
                   {"normal", vector_json(nvec)},
                   {"matrix", complex_matrix(block)},
                   {"rank", symbols::numeric_rank<double>(block)},
                   {"trace", block.trace().real()},
                   {"idempotence_error", (block * block - block).norm()}};
            if (!beta.empty()) {
                symbols::Matrix<double> b(1, 2);
                b << beta[0], beta[1];
                const auto local = symbols::BoundaryOperatorSymbol<double>::constant(b);
                json e;
                if (dim == 2) {
                    const symbols::BoundaryOperatorSymbol<double> aps{
                        1, [](const Vector<double>& x) { return symbols::aps_symbol_2d(x(0)); }, false};
                    auto full_q = [](const Vector<double>& x) { return symbols::calderon_symbol_2d(x(0)); };
                    auto chiral_q = [](const Vector<double>& x) { return symbols::chiral_symbol_2d(x(0)); };
                    symbols::Matrix<double> b1(1, 1);
                    b1 << beta[0];
                    e["local_full"] = to_string(symbols::ellipticity_test<double>(local, full_q, 1).outcome);
                    e["aps_full"] = to_string(symbols::ellipticity_test<double>(aps, full_q, 1).outcome);
                    e["local_chiral"] = to_string(
                        symbols::ellipticity_test<double>(symbols::BoundaryOperatorSymbol<double>::constant(b1),
                                                          chiral_q, 1)
                            .outcome);
                } else {
                    auto chiral_q = [](const Vector<double>& x) { return symbols::chiral_symbol_4d(x); };
                    const auto result = symbols::ellipticity_test<double>(local, chiral_q, 3);
                    const auto w = symbols::chiral_obstruction_witness(beta[0], beta[1]);
                    const symbols::Matrix<double> bq = b * symbols::chiral_symbol_4d(w);
                    e["local_chiral"] = to_string(result.outcome);
                    e["witness"] = vector_json(w);
                    e["rank_b_qch"] = symbols::numeric_rank<double>(bq, 1e-8, b.norm());
                }
                j["ellipticity"] = e;
            }
            emit(j);
        } else if (self->parsed()) {
            const auto results = selftest({fault == "bessel-table"});
            std::string text;
            bool all = true;
            for (const auto& r : results) {
                all = all && r.pass;
                text += std::string(r.pass ? "PASS " : "FAIL ") + r.name + "  " + r.detail + "\n";
            }
            text += all ? "selftest: all passed\n" : "selftest: FAILED\n";
            emit(text);
            return all ? ok : inconsistent;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return bad_config;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return domain_error;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << "\n";
        return no_convergence;
    } catch (const ConsistencyError& e) {
        err << "consistency error: " << e.what() << "\n";
        return inconsistent;
    }
    return ok;
}

} // namespace diskdet::cli
